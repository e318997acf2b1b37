"""Enumeration of the solutions with integral Stokes data.

The generator is an integer quadratic sweep: if both 2cos(a) - 2cos(b)
and 4cos(a)cos(b) are integers, then 2cos(a) and -2cos(b) are roots of a
monic integer quadratic with both roots in [-2, 2], hence (Kronecker)
twice cosines of rational multiples of pi of degree at most 2.  Sweeping
the finitely many quadratics and matching roots against the finite
dictionary of such cosines recovers the full candidate set without
reference to any published list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cases import AsymptoticData, KVector, descriptor, in_region, k_to_asymptotic
from .exact import AlgReal, cos2
from .stokes import StokesData, stokes_from_k
from .theta import ThetaPoly, tk_from_k

BLOCKS = ("top-edge", "left-edge", "diagonal-edge", "center-line", "other-interior")


@dataclass(frozen=True)
class CosPair:
    x: AlgReal
    y: AlgReal
    a_label: Fraction
    b_label: Fraction


@dataclass(frozen=True)
class SolutionRecord:
    case: str
    a_label: Fraction
    b_label: Fraction
    asymptotic: AsymptoticData
    stokes: StokesData
    stokes_int: tuple[int, int]
    k: KVector
    tk: ThetaPoly
    block: str


@lru_cache(maxsize=1)
def _cos_dictionary() -> tuple[tuple[Fraction, AlgReal], ...]:
    """2cos(pi*j/q) for all labels j/q in [0,1] with q <= 6."""
    labels = sorted({Fraction(j, q) for q in range(1, 7) for j in range(q + 1)})
    return tuple((lab, cos2(lab)) for lab in labels)


@lru_cache(maxsize=1)
def enumerate_cos_pairs() -> tuple[CosPair, ...]:
    """All (a, b) in [0, pi]^2 with 2cos a - 2cos b and 4cos a cos b integral."""
    dictionary = _cos_dictionary()
    found: dict[tuple[Fraction, Fraction], CosPair] = {}
    for m in range(-4, 5):
        for p in range(-4, 5):
            if m * m + 4 * p < 0:
                continue  # no real roots
            for la, x in dictionary:
                for lb, y in dictionary:
                    if (x - y) == m and (x * y) == p:
                        found.setdefault((la, lb), CosPair(x, y, la, lb))
    return tuple(found[key] for key in sorted(found))


def admissible_points() -> list[tuple[Fraction, Fraction]]:
    """The cosine pairs compatible with nonnegative gaps summing to 1."""
    return [(c.a_label, c.b_label) for c in enumerate_cos_pairs()
            if c.a_label + c.b_label <= 1]


# Canonical row order of the published tables: the five blocks, each with
# a fixed label sequence (top and diagonal sweep a downward/upward along
# the respective edge; the paper fixes the rest by printing order).
_BLOCK_ORDER: tuple[tuple[str, tuple[tuple[Fraction, Fraction], ...]], ...] = (
    ("top-edge", ((Fraction(1), Fraction(0)), (Fraction(2, 3), Fraction(0)),
                  (Fraction(1, 2), Fraction(0)), (Fraction(1, 3), Fraction(0)),
                  (Fraction(0), Fraction(0)))),
    ("left-edge", ((Fraction(0), Fraction(1, 3)), (Fraction(0), Fraction(1, 2)),
                   (Fraction(0), Fraction(2, 3)), (Fraction(0), Fraction(1)))),
    ("diagonal-edge", ((Fraction(1, 3), Fraction(2, 3)),
                       (Fraction(1, 2), Fraction(1, 2)),
                       (Fraction(2, 3), Fraction(1, 3)))),
    ("center-line", ((Fraction(1, 3), Fraction(1, 3)),
                     (Fraction(1, 4), Fraction(1, 4)),
                     (Fraction(1, 6), Fraction(1, 6)))),
    ("other-interior", ((Fraction(1, 2), Fraction(1, 3)),
                        (Fraction(2, 5), Fraction(1, 5)),
                        (Fraction(1, 5), Fraction(2, 5)),
                        (Fraction(1, 3), Fraction(1, 2)))),
)


def classify_block(case_id: str, a: AsymptoticData) -> str:
    """Block of the five-block table partition, from (gamma, delta) alone."""
    desc = descriptor(case_id)
    ea, eb = desc.ab
    if a.delta == Fraction(2, eb):
        return "top-edge"
    if a.gamma == Fraction(-2, ea):
        return "left-edge"
    if a.gamma - a.delta == 2:
        return "diagonal-edge"
    if a.gamma + a.delta == desc.center_sum:
        return "center-line"
    return "other-interior"


def k_from_labels(case_id: str, a_label: Fraction, b_label: Fraction) -> KVector:
    """Holomorphic data with N = 1 for one admissible cosine-pair point."""
    desc = descriptor(case_id)
    mk, ml = desc.angle_mult
    ki, li = desc.kl_index
    n1 = desc.n_plus_1
    gaps: list[Fraction | None] = [None] * n1
    gaps[ki] = a_label / mk
    gaps[li] = b_label / ml
    # propagate the case symmetry, then the single free class is fixed by sum 1
    changed = True
    while changed:
        changed = False
        for i, j in desc.symmetry:
            gi, gj = gaps[i], gaps[j]
            if gi is None and gj is not None:
                gaps[i] = gj
                changed = True
            elif gj is None and gi is not None:
                gaps[j] = gi
                changed = True
    free = [i for i, g in enumerate(gaps) if g is None]
    if free:
        remainder = 1 - sum(g for g in gaps if g is not None)
        fill = remainder / len(free)
        for i in free:
            gaps[i] = fill
    assert sum(gaps) == 1
    return KVector(case_id, tuple(g - 1 for g in gaps))


@lru_cache(maxsize=None)
def integral_solutions(case_id: str) -> tuple[SolutionRecord, ...]:
    """The 19 complete solution records of one case, in table order."""
    admissible = set(admissible_points())
    records = []
    for block, labels in _BLOCK_ORDER:
        for a_label, b_label in labels:
            assert (a_label, b_label) in admissible
            k = k_from_labels(case_id, a_label, b_label)
            asym = k_to_asymptotic(k)
            stokes = stokes_from_k(k)
            ints = stokes.integral()
            if ints is None:
                raise AssertionError(
                    f"non-integral Stokes data at {case_id} {(a_label, b_label)}")
            assert in_region(case_id, asym) and k.admissible
            derived_block = classify_block(case_id, asym)
            assert derived_block == block, (case_id, a_label, b_label, derived_block)
            records.append(SolutionRecord(
                case_id, a_label, b_label, asym, stokes, ints, k,
                tk_from_k(k), block))
    assert len(records) == 19
    return tuple(records)


# --- brute-force completeness sweep -----------------------------------

_NIVEN = {
    Fraction(0): 2, Fraction(1, 3): 1, Fraction(1, 2): 0,
    Fraction(2, 3): -1, Fraction(1): -2,
}

# quadratic irrational cosines: label -> (field discriminant tag, a, b)
# with value a + b*sqrt(D)
_QUAD = {
    Fraction(1, 4): (2, Fraction(0), Fraction(1)),
    Fraction(3, 4): (2, Fraction(0), Fraction(-1)),
    Fraction(1, 6): (3, Fraction(0), Fraction(1)),
    Fraction(5, 6): (3, Fraction(0), Fraction(-1)),
    Fraction(1, 5): (5, Fraction(1, 2), Fraction(1, 2)),
    Fraction(2, 5): (5, Fraction(-1, 2), Fraction(1, 2)),
    Fraction(3, 5): (5, Fraction(1, 2), Fraction(-1, 2)),
    Fraction(4, 5): (5, Fraction(-1, 2), Fraction(-1, 2)),
}


def _cos_class(r: Fraction):
    """Classify 2cos(pi*r): integer value, quadratic surd, or degree >= 3.

    Degree >= 3 values (returned as None) can never contribute integral
    Stokes data: x + y and x*y integral force x to satisfy a monic
    integer quadratic.
    """
    r = r % 2
    if r > 1:
        r = 2 - r
    if r in _NIVEN:
        return ("int", _NIVEN[r])
    if r in _QUAD:
        return ("quad", _QUAD[r])
    return None


def _pair_integral(cx, cy) -> bool:
    """Exact test of x + y (equivalently x - y) and x*y both integral."""
    if cx[0] == "int" and cy[0] == "int":
        return True
    if cx[0] != cy[0]:
        return False
    dx, ax, bx = cx[1]
    dy, ay, by = cy[1]
    if dx != dy:
        return False
    s = ax + ay
    t = bx + by
    prod_rat = ax * ay + bx * by * dx
    prod_irr = ax * by + ay * bx
    return (t == 0 and s.denominator == 1
            and prod_irr == 0 and prod_rat.denominator == 1)


def _grid(lo: Fraction, hi: Fraction, max_den: int):
    for q in range(1, max_den + 1):
        start = -((-lo.numerator * q) // lo.denominator)  # ceil(lo*q)
        stop = (hi.numerator * q) // hi.denominator       # floor(hi*q)
        for p in range(start, stop + 1):
            if gcd(abs(p), q) == 1:
                yield Fraction(p, q)


def brute_force_integral_points(case_id: str, max_denominator: int = 60
                                ) -> set[tuple[Fraction, Fraction]]:
    """Exhaustive integral-Stokes sweep over the region on a rational grid.

    Independent of the enumeration route: classifies the Theorem-B cosine
    arguments by algebraic degree and decides integrality by exact
    quadratic-field arithmetic.
    """
    desc = descriptor(case_id)
    ea, eb = desc.ab
    g = desc.group
    if g == "4":
        xa = lambda gamma: (gamma + 1) / 4
        yb = lambda delta: (delta + 3) / 4
    elif g == "5ab":
        xa = lambda gamma: (gamma + 6) / 5
        yb = lambda delta: (delta + 8) / 5
    elif g == "5cde":
        xa = lambda gamma: (gamma + 2) / 5
        yb = lambda delta: (delta + 4) / 5
    else:
        xa = lambda gamma: (gamma + 2) / 6
        yb = lambda delta: (delta + 4) / 6
    glo, ghi = Fraction(-2, ea), Fraction(2, eb) + 2
    dlo, dhi = Fraction(-2, ea) - 2, Fraction(2, eb)
    gammas = [(gm, _cos_class(xa(gm))) for gm in _grid(glo, ghi, max_denominator)]
    deltas = [(dl, _cos_class(yb(dl))) for dl in _grid(dlo, dhi, max_denominator)]
    gammas = [(gm, c) for gm, c in gammas if c is not None]
    deltas = [(dl, c) for dl, c in deltas if c is not None]
    out = set()
    for gm, cx in gammas:
        for dl, cy in deltas:
            if gm - dl <= 2 and _pair_integral(cx, cy):
                out.add((gm, dl))
    return out
