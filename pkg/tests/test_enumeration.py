from fractions import Fraction

from ttstar.cases import CASE_IDS, GROUPS, in_region
from ttstar.enumeration import (BLOCKS, admissible_points, brute_force_integral_points,
                                classify_block, enumerate_cos_pairs,
                                integral_solutions, k_from_labels)


def F(x):
    return Fraction(x)


def test_pair_count_and_split():
    pairs = enumerate_cos_pairs()
    assert len(pairs) == 33
    halves = [p for p in pairs
              if p.x.as_rational() is not None and p.y.as_rational() is not None]
    assert len(halves) == 25
    extras = {(p.a_label, p.b_label) for p in pairs} - {(p.a_label, p.b_label)
                                                        for p in halves}
    assert extras == {
        (F("1/6"), F("1/6")), (F("1/4"), F("1/4")), (F("3/4"), F("3/4")),
        (F("5/6"), F("5/6")), (F("1/5"), F("2/5")), (F("2/5"), F("1/5")),
        (F("3/5"), F("4/5")), (F("4/5"), F("3/5")),
    }


def test_admissible_points():
    pts = admissible_points()
    assert len(pts) == 19
    assert (F("1/5"), F("2/5")) in pts
    assert (F("3/4"), F("3/4")) not in pts
    simple = {F(0), F("1/3"), F("1/2"), F("2/3"), F(1)}
    assert sum(1 for a, b in pts if {a, b} <= simple) == 15


def test_integral_solution_invariants():
    for cid in CASE_IDS:
        recs = integral_solutions(cid)
        assert len(recs) == 19
        for rec in recs:
            assert in_region(cid, rec.asymptotic)
            assert rec.k.admissible and rec.k.N == 1
            assert rec.stokes_int is not None
            assert rec.block in BLOCKS
            assert classify_block(cid, rec.asymptotic) == rec.block


def test_group_sharing():
    """Within a group every case yields the same printed record data."""
    for cases in GROUPS.values():
        base = integral_solutions(cases[0])
        for other in cases[1:]:
            recs = integral_solutions(other)
            for r1, r2 in zip(base, recs):
                assert (r1.a_label, r1.b_label) == (r2.a_label, r2.b_label)
                assert r1.asymptotic == r2.asymptotic
                assert r1.stokes_int == r2.stokes_int
                assert r1.tk == r2.tk
                assert r1.block == r2.block


def test_even_size_label_swap():
    """For groups 4 and 6, swapping (a,b) negates and swaps (gamma,delta)."""
    for group in ("4", "6"):
        recs = {(r.a_label, r.b_label): r
                for r in integral_solutions(GROUPS[group][0])}
        for (a, b), rec in recs.items():
            if (b, a) in recs:
                other = recs[(b, a)]
                assert other.asymptotic.gamma == -rec.asymptotic.delta
                assert other.asymptotic.delta == -rec.asymptotic.gamma
                assert other.tk == rec.tk


def test_k_from_labels_consistency():
    k = k_from_labels("4a", F("1/2"), F("1/3"))
    assert tuple(e + 1 for e in k.entries) == (
        F("1/2"), F("1/12"), F("1/3"), F("1/12"))


def test_block_order_counts():
    recs = integral_solutions("4a")
    per_block = [rec.block for rec in recs]
    assert per_block == (["top-edge"] * 5 + ["left-edge"] * 4
                         + ["diagonal-edge"] * 3 + ["center-line"] * 3
                         + ["other-interior"] * 4)


def test_brute_force_small_bound():
    """Denominator-12 sweep already finds exactly the 19 points (case 4a)."""
    found = brute_force_integral_points("4a", max_denominator=12)
    expected = {tuple(r.asymptotic) for r in integral_solutions("4a")}
    assert found == expected
