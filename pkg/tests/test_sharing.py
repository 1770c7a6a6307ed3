import json
from fractions import Fraction

import pytest

from pairshare.ratfunc import INF, PunctureSet
from pairshare.sharing import (
    NOT_SHARED,
    SHARED_CM,
    SHARED_IM,
    SharedPairSpec,
    SharingError,
    check_pair,
    mismatch_punctures,
    mobius_relation_guard,
    multiplicity_pattern,
    sharing_certificate,
)
from pairshare.instances import gundersen, gundersen_normalized, quadric_pair, quadric_pairs

from helpers import P, R, S


@pytest.fixture(scope="module")
def gund():
    return gundersen()


def test_cm_pair_with_witness(gund):
    Q, Qt, _ = gund
    v = check_pair(Q, Qt, (S("-1/2"), S("1/4")), PunctureSet.of([S("0")], "w"))
    assert v.verdict == SHARED_CM
    assert v.witnesses["support"] == "w^2+3"
    assert v.divisor_f.entries == ((P("w^2+3", "w"), 1),)


def test_im_pair_zero(gund):
    Q, Qt, _ = gund
    v = check_pair(Q, Qt, (S("0"), S("0")), PunctureSet.of([S("0")], "w"))
    # the simple zero of Q at w = oo has no partner: not shared unless oo is punctured
    assert v.verdict == NOT_SHARED and v.witnesses["separating_inf"] == "f"
    assert v.divisor_f.to_json() == [{"factor": "w+1", "mult": 1}, {"inf": 1}]
    assert v.divisor_g.to_json() == [{"factor": "w+1", "mult": 2}]
    v2 = check_pair(Q, Qt, (S("0"), S("0")), PunctureSet.of([S("0"), INF], "w"))
    assert v2.verdict == SHARED_IM


def test_trivial_cm():
    v = check_pair(R("t"), R("t"), (S("5"), S("5")))
    assert v.verdict == SHARED_CM


def test_pattern_minus_eighth(gund):
    Q, Qt, _ = gund
    rep = multiplicity_pattern(Q, Qt, (S("-1/8"), S("-1/8")))
    assert rep.patterns() == {(2, 1)}
    assert str(rep.classes[0].pointclass) == "w+3"
    assert rep.p_nu == 2 and rep.pattern_ok


def test_pattern_identity_all_simple():
    rep = multiplicity_pattern(R("t^3-t"), R("t^3-t"), (S("2"), S("2")))
    assert rep.patterns() == {(1, 1)} and rep.count("1:1") == 3


def test_pattern_requires_shared():
    with pytest.raises(SharingError):
        multiplicity_pattern(R("t^2"), R("t^2+t"), (S("1"), S("1")), PunctureSet.empty())


def test_pattern_violation_reported():
    rep = multiplicity_pattern(R("t^2"), R("t^2"), (S("0"), S("0")))
    assert rep.patterns() == {(2, 2)} and not rep.pattern_ok and len(rep.violations) == 1


def test_gundersen_certificate(gund):
    Q, Qt, spec = gund
    cert = sharing_certificate(Q, Qt, spec)
    assert cert.verified
    verdicts = [p.verdict for p in cert.pairs]
    assert verdicts == [SHARED_IM] * 4 + [SHARED_CM]
    pats = [c.patterns() for c in cert.patterns]
    assert pats[:4] == [{(1, 2)}, {(1, 2)}, {(2, 1)}, {(2, 1)}]
    assert cert.punctures.poly == P("w", "w") and cert.punctures.infinity
    assert not cert.excluded_mobius
    json.dumps(cert.to_json())


def test_normalized_gundersen_certificate():
    Q, Qt, spec = gundersen_normalized()
    cert = sharing_certificate(Q, Qt, spec)
    assert cert.verified
    assert cert.punctures.count == 2
    assert cert.punctures.poly.degree <= 1


@pytest.mark.parametrize("c,points", [(1, {"0", "-4"}), (-1, {"0", "4"})])
def test_quadric_feasible(c, points):
    Q, Qt = quadric_pair(c)
    cert = sharing_certificate(Q, Qt, quadric_pairs(c))
    assert cert.verified and cert.feasible
    assert set(cert.to_json()["puncture_points"]) == points
    M = cert.realization
    assert {str(M(S("0"))), str(M(INF))} == points


def test_quadric_c3_infeasible():
    Q, Qt = quadric_pair(3)
    cert = sharing_certificate(Q, Qt, quadric_pairs(3))
    assert not cert.feasible and not cert.verified
    assert cert.punctures.count == 4
    assert set(cert.to_json()["puncture_points"]) == {"0", "-4/3", "-8", "-4"}


def test_quadric_pairs_listed():
    spec = quadric_pairs(1)
    assert [(str(a), str(b)) for a, b in spec.pairs[:4]] == [("0", "0"), ("8/3", "-8/3"), ("2/3", "4/3"), ("2", "-4")]


def test_mobius_guard():
    assert mobius_relation_guard(R("t"), R("(2*t+1)/(t-1)"))
    Q, Qt, _ = gundersen()
    assert not mobius_relation_guard(Q, Qt)
    assert not mobius_relation_guard(R("t^2"), R("t^3"))


def test_excluded_flag():
    cert = sharing_certificate(R("t"), R("(2*t+1)/(t-1)"), SharedPairSpec.make([(0, "-1")]))
    assert cert.excluded_mobius and not cert.verified


def test_spec_requires_distinct_values():
    with pytest.raises(SharingError):
        SharedPairSpec.make([(0, 0), (0, 1)])


def test_mismatch_punctures_gundersen(gund):
    Q, Qt, _ = gund
    p = mismatch_punctures(Q, Qt, (S("1"), S("1")))
    assert p.poly == P("w", "w") and not p.infinity
