from collections import Counter
from fractions import Fraction

import pytest

from conftest import random_symmetric_gaps, random_symmetric_k
from ttstar.cases import CASE_IDS, GROUPS, KVector, make_k
from ttstar.theta import (CISpec, NotReducibleError, QDO, ThetaPoly, catalog,
                          check_G, check_Q, k_from_tk, match_ci, qdo_from_ci,
                          theta_poly, tk_from_k, verify_corollary,
                          _tk_from_gaps)


def F(*a):
    return Fraction(*a)


def test_theta_poly_printing():
    t = theta_poly([0, 0, F("1/6"), F("5/6")])
    assert str(t) == "θ^2(θ-1/6)(θ-5/6)"
    assert str(theta_poly([0, 0, 0, 0])) == "θ^4"


def test_tk_worked_example():
    k = make_k("4a", [F("-1/2"), F("-11/12"), F("-2/3"), F("-11/12")])
    t = tk_from_k(k)
    assert t.roots == (F(0), F("1/12"), F("5/12"), F("1/2"))


def test_tk_corner():
    assert tk_from_k(make_k("4a", [0, -1, -1, -1])).roots == (0, 0, 0, 0)
    k5 = make_k("5a", [F("-2/3")] + [F("-5/6")] * 4)
    assert tk_from_k(k5).roots == tuple(F(j, 6) for j in (0, 1, 2, 3, 4))


def test_tk_requires_normalization():
    with pytest.raises(ValueError):
        tk_from_k(make_k("4a", [0, 0, 0, 0]))
    with pytest.raises(ValueError):
        tk_from_k(make_k("4a", [F("3/2"), F("-3/2"), F("1/2"), F("-3/2")]))


def test_tk_rotation_invariance(rng):
    for _ in range(300):
        cid = rng.choice(CASE_IDS)
        gaps = random_symmetric_gaps(rng, cid)
        k = KVector(cid, tuple(g - 1 for g in gaps))
        t = tk_from_k(k)
        n1 = len(gaps)
        for j in range(n1):
            rot = tuple(gaps[(j + i) % n1] for i in range(n1))
            assert _tk_from_gaps(rot) == t


def test_k_from_tk_round_trip(rng):
    for _ in range(300):
        cid = rng.choice(CASE_IDS)
        k = random_symmetric_k(rng, cid)
        t = tk_from_k(k)
        gaps = k_from_tk(t, len(k.entries))
        assert gaps == Counter(e + 1 for e in k.entries)


def test_k_from_tk_validation():
    with pytest.raises(ValueError):
        k_from_tk(theta_poly([0, 0, 0]), 4)
    with pytest.raises(ValueError):
        k_from_tk(theta_poly([0, 1, F("1/2"), F("1/4")]), 4)


def test_qdo_projective_space():
    op = qdo_from_ci(CISpec((1, 1, 1, 1)))
    assert op == QDO(4, theta_poly([0, 0, 0, 0]))
    assert str(op) == "λ^4 θ^4 - z"


def test_qdo_worked_examples():
    # P^{1,2,3} and the quadric hypersurface X^{1,2,3}_2 inside it
    op = qdo_from_ci(CISpec((1, 2, 3)))
    assert op.lambda_power == 6
    assert Counter(op.theta.roots) == Counter(
        [F(0), F(0), F(0), F("1/2"), F("1/3"), F("2/3")])
    op2 = qdo_from_ci(CISpec((1, 2, 3), (2,)))
    assert op2 == QDO(4, theta_poly([0, 0, F("1/3"), F("2/3")]))
    op3 = qdo_from_ci(CISpec((1, 1, 1, 6), (2, 3)))
    assert op3 == QDO(4, theta_poly([0, 0, F("1/6"), F("5/6")]))


def test_qdo_not_reducible():
    with pytest.raises(NotReducibleError):
        qdo_from_ci(CISpec((1, 1, 1), (2,)))  # no 1/2 root upstairs
    with pytest.raises(ValueError):
        CISpec((1, 1), (3,))  # weight sum must exceed degree sum


def test_division_soundness():
    spec = CISpec((1, 1, 4), (2,))
    op = qdo_from_ci(spec)
    upstairs = Counter(F(j, v) for v in spec.weights for j in range(v))
    downstairs = Counter(F(j, d) for d in spec.degrees for j in range(d))
    assert downstairs + Counter(op.theta.roots) == upstairs


def test_check_q():
    assert check_Q([F(0), F("1/2"), F("1/2")])
    assert not check_Q([F("1/4")] * 4)
    with pytest.raises(ValueError):
        check_Q([F("1/2")])


def test_check_g():
    assert check_G(theta_poly([0, 0, F("1/3"), F("2/3")]))
    assert check_G(theta_poly([0, 0, F("1/10"), F("9/10")]))
    assert not check_G(theta_poly([0, F("1/5"), F("1/2"), F("4/5"), F("4/5")]))


def test_match_ci_positive():
    # the minimal-weight representative is returned (the quadric in
    # P^{1,2,3} shares its operator with P^{1,3})
    assert match_ci([F(0), F(0), F("1/3"), F("2/3")], 4, 48) == CISpec((1, 3))
    assert match_ci([F(0)] * 4, 4, 48) == CISpec((1, 1, 1, 1))
    assert match_ci([F(0), F(0), F("1/6"), F("5/6")], 4, 48) == CISpec(
        (1, 1, 1, 6), (2, 3))


def test_match_ci_counterexample():
    assert match_ci([F(0), F(0), F("1/10"), F("9/10")], 4, 72) is None


def test_catalog_shape():
    for group in GROUPS:
        rows = catalog(group)
        assert len(rows) == 9
        assert [b for _, b, _ in rows] == ["top-edge"] * 5 + ["left-edge"] * 4


def test_catalog_qdo_grading():
    for group, cases in GROUPS.items():
        n1 = 4 if group == "4" else (5 if group.startswith("5") else 6)
        for spec, _, _ in catalog(group):
            op = qdo_from_ci(spec)
            assert op.lambda_power == n1
            assert op.theta.degree == n1


def test_verify_corollary_4a():
    rep = verify_corollary("4a", 10)
    assert rep.ok
    assert rep.forward_checked == 9
    assert "θ^2(θ-1/10)(θ-9/10)" in rep.flagged_non_ci
    assert rep.an_type  # the uniform A_n operator was seen and excluded


def test_verify_corollary_corrupt():
    rep = verify_corollary("4a", 6, corrupt_catalog=True)
    assert not rep.ok and rep.forward_mismatches


def test_verify_corollary_bound_validation():
    with pytest.raises(ValueError):
        verify_corollary("4a", 5)
