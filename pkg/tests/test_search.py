from fractions import Fraction

import numpy as np
import pytest

from pairshare.field import field_make, format_elem
from pairshare.search import (
    Candidate,
    DegreeProfile,
    LiftError,
    ProfileError,
    _Compiled,
    build_constraints,
    c_of_candidate,
    count_constraints,
    enumerate_survivors,
    exact_lift,
    exact_verify,
    gauss_newton,
    numeric_search,
    quadric_profile,
)

GAUSS = field_make((1, 0))


@pytest.fixture(scope="module")
def quadric():
    system = build_constraints(quadric_profile())
    return system, numeric_search(system, starts=200, seed=0)


@pytest.mark.parametrize("m,n,count", [(9, 9, 68), (1, 1, 4), (2, 2, 12), (3, 5, 28)])
def test_count_constraints(m, n, count):
    assert count_constraints(m, n) == count


def test_count_constraints_rejects_zero():
    with pytest.raises(ProfileError):
        count_constraints(0, 3)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (2, 3), (3, 2), (4, 3)])
def test_generated_count_matches_formula(m, n):
    counts = build_constraints(DegreeProfile(m, n)).counts
    assert counts["equations"] == count_constraints(m, n)
    assert counts["slots"] - counts["exempted"] - counts["duplicates"] == counts["equations"]
    assert counts["exempted"] == 8


def test_two_two_system():
    sys_ = build_constraints(DegreeProfile(2, 2), free_tail="all")
    assert sys_.counts["equations"] == 12
    assert sys_.unknowns == ("a3", "b3", "a4", "b4", "A", "c_0_0", "c_0_1", "c_1_0", "c_1_1")
    assert sys_.overdetermined
    assert sys_.equations[0] == ("pair 1: K = 0", sys_.equations[0][1])


def test_zero_tail_system_is_empty():
    sys_ = build_constraints(DegreeProfile(2, 2))
    assert sys_.unknowns == ("a3", "b3", "a4", "b4", "A")
    assert sys_.overdetermined
    assert numeric_search(sys_, starts=30, seed=1) == []


def test_enumerate_survivors():
    choices = list(enumerate_survivors(1, 2))
    assert len(choices) == 2 ** 4 and choices[0] == ((1, 1),) * 4


@pytest.mark.parametrize(
    "kwargs,msg",
    [
        (dict(m=10, n=2), "m, n <= 9"),
        (dict(m=2, n=2, s=0), "1 <= s, t <= 4"),
        (dict(m=2, n=2, s=3), "must not exceed"),
        (dict(m=9, n=9, s=5, t=5), "s, t <= 4"),
        (dict(m=2, n=2, kappa=5), "kappa"),
        (dict(m=2, n=2, survivors=((0, 1),) * 4), "inconsistent exemption indices"),
        (dict(m=2, n=2, survivors=((3, 1),) * 4), "inconsistent exemption indices"),
        (dict(m=2, n=2, sides=("z",) * 4), "unknown side"),
        (dict(m=2, n=2, tail=(((2, 0), 1),)), "not a tail monomial"),
    ],
)
def test_profile_validation(kwargs, msg):
    with pytest.raises(ProfileError, match=msg):
        DegreeProfile(**kwargs)


def test_quadric_search_recovers_both_signs(quadric):
    system, cands = quadric
    assert system.counts["equations"] == 8 and len(system.unknowns) == 5
    verified = []
    for c in cands:
        assert c.residual < 1e-10
        v = exact_verify(c, system)
        if v.verified:
            verified.append(c_of_candidate(c.exact_lift))
        else:
            assert "not pairwise distinct" in v.reason
    assert sorted(format_elem(v) for v in verified) == ["-1", "1"]


def test_planted_candidate_certificate(quadric):
    system, cands = quadric
    planted = next(c for c in cands if c.exact_lift and format_elem(c.exact_lift["a3"]) == "1/4" and format_elem(c.exact_lift["a4"]) == "3/4")
    v = exact_verify(planted, system)
    assert v.verified
    assert v.certificate["K"] == "4*x^2-2*x*y+y^2-3*x"
    fibers = v.certificate["fibers"]
    # monomial fibers of order 2 on the y-side over the first two pairs and on the x-side over the others
    assert [(f["y_side"], f["x_side"]) for f in fibers] == [(True, False), (True, False), (False, True), (False, True)]
    assert [f["k"] if f["y_side"] else f["l"] for f in fibers] == [2, 2, 2, 2]
    assert v.certificate["shape"]["matches"]


def test_search_is_deterministic():
    system = build_constraints(quadric_profile())
    a = numeric_search(system, starts=40, seed=7)
    b = numeric_search(system, starts=40, seed=7)
    assert [c.to_json() for c in a] == [c.to_json() for c in b]


def test_trajectories_non_increasing():
    system = build_constraints(quadric_profile())
    comp = _Compiled(system)
    rng = np.random.default_rng(3)
    for _ in range(25):
        u0 = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        _, hist = gauss_newton(comp, u0)
        assert all(b < a for a, b in zip(hist, hist[1:]))


def test_perturbed_candidate_names_first_violation():
    system = build_constraints(quadric_profile())
    exact = {"a3": Fraction(1, 4), "b3": Fraction(-1, 2), "a4": Fraction(3, 4), "b4": Fraction(3, 2), "A": Fraction(4)}
    exact["b3"] += Fraction(1, 1000)
    cand = Candidate({k: complex(v) for k, v in exact.items()}, 1.0)
    v = exact_verify(cand, system)
    assert not v.verified and v.reason == "equation does not vanish"
    assert v.first_violation.startswith("pair 3:")


def test_sqrt2_over_gaussian_field_fails_to_lift():
    cand = Candidate({"a3": complex(2 ** 0.5), "b3": 1j}, 0.0)
    with pytest.raises(LiftError, match="a3"):
        exact_lift(cand, GAUSS)
    ok = Candidate({"a3": complex(0.5, -2), "b3": 1j}, 0.0)
    lifted = exact_lift(ok, GAUSS)
    assert format_elem(lifted["b3"]) == "a"


def test_search_rejects_bad_tol():
    with pytest.raises(ValueError):
        numeric_search(build_constraints(quadric_profile()), tol=0)
