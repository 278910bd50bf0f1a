"""Plane-field analysis: E-l-C closed forms, witnesses, flags, foliations."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engelhomology.engel import (
    CORRECTED_FORMULAS,
    FORMULA_STRINGS,
    GENERIC_CONDITIONS,
    WITNESS_CORRECTIONS,
    WITNESSES,
    Elc,
    PlanePair,
    characteristic_foliation,
    elc,
    elc_formula_check,
    elc_formula_report,
    engel_flag_check,
    foliation_containment,
    transcribed_formula,
    verify_witness,
)
from engelhomology.exact import (
    MissingParameter,
    ParamPolynomial,
    PolyFraction,
)
from engelhomology.liealg import (
    ConstraintViolation,
    LieAlgebra4,
    class_type,
    family,
)

PV = ParamPolynomial.variable

rationals = st.fractions(
    min_value=Fraction(-4), max_value=Fraction(4), max_denominator=3)


def _D(i, j):
    return PV(f"p{i}") * PV(f"q{j}") - PV(f"p{j}") * PV(f"q{i}")


# ---------------------------------------------------------------------------
# the coefficient itself


def test_plane_pair_validation():
    with pytest.raises(ValueError):
        PlanePair((1, 2, 3), (0, 0, 0, 1))


def test_elc_type1_closed_form():
    got = elc(class_type(1), PlanePair.symbolic()).value
    want = PV("p4") * _D(3, 4) ** 3
    assert (got - PolyFraction.lift(want)).is_zero()


def test_elc_type1_witness_value():
    value = elc(class_type(1), PlanePair((0, 0, 0, 1), (0, 0, 1, 0))).value
    assert value == PolyFraction.lift(-1)


@given(p=st.tuples(rationals, rationals, rationals, rationals),
       lam=rationals)
@settings(max_examples=25, deadline=None)
def test_elc_vanishes_on_proportional_planes(p, lam):
    plane = PlanePair(p, tuple(lam * x for x in p))
    assert elc(class_type(7), plane).is_zero()


def test_elc_shear_invariance():
    # replacing q by q + lam*p fixes every minor, hence the coefficient
    lam = Fraction(3, 2)
    for n in (1, 8, 12):
        base = PlanePair.symbolic()
        sheared = PlanePair(base.p,
                            tuple(q + p * PolyFraction.lift(lam)
                                  for p, q in zip(base.p, base.q)))
        alg = class_type(n)
        assert (elc(alg, base).value - elc(alg, sheared).value).is_zero()


def test_elc_scaling_degrees():
    # w1 enters the tower three times, w2 once
    lam = PolyFraction.lift(Fraction(2))
    base = PlanePair.symbolic()
    alg = class_type(10)
    v = elc(alg, base).value
    lam3 = lam * lam * lam
    scaled_p = PlanePair(tuple(x * lam for x in base.p), base.q)
    assert (elc(alg, scaled_p).value - v * lam3 * lam).is_zero()
    scaled_q = PlanePair(base.p, tuple(x * lam for x in base.q))
    assert (elc(alg, scaled_q).value - v * lam3).is_zero()


# ---------------------------------------------------------------------------
# the twelve closed forms


@pytest.mark.parametrize("n", range(1, 13))
def test_formula_reports(n):
    report = elc_formula_report(n)
    assert report["transcribed"] == FORMULA_STRINGS[n]
    assert report["computed"]
    if n == 9:
        # transcription slip: the p3 term carries Det(2,4), not Det(1,4)
        assert not report["match"]
        assert report["corrected"] == CORRECTED_FORMULAS[9][1]
        assert not elc_formula_check(9)
    else:
        assert report["match"], report
        assert elc_formula_check(n)


def test_corrected_formula_9_is_exact():
    computed = elc(class_type(9), PlanePair.symbolic()).value
    want = PolyFraction.lift(CORRECTED_FORMULAS[9][0]())
    assert (computed - want).is_zero()
    bad = PolyFraction.lift(transcribed_formula(9))
    assert not (computed - bad).is_zero()


@pytest.mark.parametrize("n,kwargs", [
    (2, {"a": 1}),
    (5, {"a": 1}),
    (5, {"b": 1}),
    (5, {"a": 3, "b": 3}),
    (9, {"b": 1}),
])
def test_no_structure_loci_kill_the_coefficient(n, kwargs):
    value = elc(class_type(n, **kwargs), PlanePair.symbolic()).value
    assert value.is_zero()


# ---------------------------------------------------------------------------
# witness planes


@pytest.mark.parametrize("n", range(1, 13))
def test_witness_table(n):
    p, q = WITNESSES[n]
    if n == 5:
        # the tabulated plane sits inside the y2-free subalgebra
        # span(y1, y3, y4); its quadruple wedge vanishes identically
        assert not verify_witness(n, p, q)
        cp, cq = WITNESS_CORRECTIONS[5]
        assert verify_witness(n, cp, cq)
    else:
        assert verify_witness(n, p, q)


def test_witness_examples_with_params():
    assert verify_witness(1, (0, 0, 0, 1), (0, 0, 1, 0))
    assert verify_witness(7, (0, 0, 1, 1), (0, 0, 0, 1))
    # on the excluded locus a=1 the plane degenerates for every (p, q)
    for q in ((1, 0, 1, 0), (1, 2, 3, 4), (0, 1, 1, 1)):
        assert not verify_witness(2, (0, 0, 0, 1), q, {"a": 1})


def test_witness_rejects_bad_params():
    with pytest.raises(ConstraintViolation):
        verify_witness(5, *WITNESSES[5], {"a": 0})
    with pytest.raises(ConstraintViolation):
        verify_witness(9, *WITNESSES[9], {"b": 2})


def test_generic_condition_table():
    assert set(GENERIC_CONDITIONS) == {2, 5, 9}


# ---------------------------------------------------------------------------
# flag dimensions


def test_flag_family1_generic_point():
    g = family(1).specialize({p: Fraction(1) for p in family(1).params})
    assert engel_flag_check(g, PlanePair((1, 0, 0, 0), (0, 1, 0, 0))) == (3, 4)


def test_flag_abelian():
    abelian = LieAlgebra4("abelian", {})
    assert engel_flag_check(
        abelian, PlanePair((1, 0, 0, 0), (0, 1, 0, 0))) == (2, 2)


def test_flag_type1_witness_plane():
    assert engel_flag_check(
        class_type(1), PlanePair((0, 0, 0, 1), (0, 0, 1, 0))) == (3, 4)


def test_flag_requires_full_specialization():
    with pytest.raises(MissingParameter):
        engel_flag_check(family(1), PlanePair((1, 0, 0, 0), (0, 1, 0, 0)))


def test_flag_with_assignment_argument():
    g = family(4)
    assign = {p: Fraction(2) for p in g.params}
    assert engel_flag_check(
        g, PlanePair((1, 0, 0, 0), (0, 1, 0, 0)), assign) == (3, 4)


# ---------------------------------------------------------------------------
# characteristic foliation


def test_foliation_families_with_uniform_line():
    for n in (1, 2, 4, 5, 6):
        f = characteristic_foliation(family(n))
        assert f.kind == "line"
        u, v = f.direction
        want_u = PolyFraction.lift(PV("C234"))
        want_v = PolyFraction.lift(-1)
        assert (u * want_v - v * want_u).is_zero(), n
        assert f.describe() == "span(C234*y1 - y2)"
        assert foliation_containment(family(n), f.direction)
        assert f.note is None


def test_foliation_family3_line():
    f = characteristic_foliation(family(3))
    assert f.kind == "line"
    u, v = f.direction
    want_u = PolyFraction.lift(PV("C244"))
    want_v = PolyFraction.lift(-PV("C144"))
    assert (u * want_v - v * want_u).is_zero()
    assert f.describe() == "span(C244*y1 - C144*y2)"
    assert foliation_containment(family(3), f.direction)
    assert f.note


def test_foliation_abelian_full_plane():
    f = characteristic_foliation(LieAlgebra4("abelian", {}))
    assert f.kind == "plane"
    assert f.direction is None
    assert f.describe() == "all lines alpha*y1 + beta*y2"


def test_foliation_independent_conditions_pin_origin():
    g = LieAlgebra4("twist", {(1, 2, 4): 1, (2, 3, 4): 1})
    assert g.is_lie()
    f = characteristic_foliation(g)
    assert f.kind == "point"
    assert f.describe() == "no nonzero direction"


def test_foliation_json():
    doc = characteristic_foliation(family(5)).to_json()
    assert doc["algebra"] == "family-5"
    assert doc["kind"] == "line"
    assert doc["solution"] == "span(C234*y1 - y2)"
    assert doc["direction"] == ["C234", "-1"]
    assert "note" not in doc
    doc3 = characteristic_foliation(family(3)).to_json()
    assert "note" in doc3


def test_elc_repr_and_str():
    e = Elc(Fraction(-1))
    assert str(e) == "-1"
    assert "Elc" in repr(e)
