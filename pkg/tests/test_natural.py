"""Twist-vanishing classifiers against their own finite scans.

The scans are the referee: they evaluate actual cohomology row by row
inside a window whose sufficiency the window-stability tests probe by
re-running with a much larger window.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hirzebruch import (
    DirectSum,
    DivisorClass,
    DomainError,
    IdealSheafModel,
    Line,
    Locus,
    Outcome,
    PointConfig,
    Surface,
    direct_sum_natural_wrt_m,
    ideal_natural_wrt_m,
    line_natural_wrt_m,
    line_natural_wrt_r,
    line_unconditional_wrt_m,
    min_twist_with_sections,
    scan_verdict,
    unconditional_scan,
)

surfaces = st.integers(min_value=1, max_value=4).map(Surface)
coords = st.integers(min_value=-10, max_value=10)
classes = st.builds(DivisorClass, coords, coords)
lines = classes.map(Line)
sums = st.lists(classes, min_size=1, max_size=4).map(lambda cs: DirectSum(tuple(cs)))
ideals = st.builds(
    IdealSheafModel,
    st.builds(PointConfig, st.integers(min_value=0, max_value=6), st.sampled_from(list(Locus))),
    classes,
)
models = st.one_of(lines, sums, ideals)


# --- twisting-class validation


def test_rejects_bad_twisting_classes():
    surface = Surface(2)
    line = Line(DivisorClass(1, 1))
    for bad in [(0, 0), (-1, 2), (1, 0), (1, 1), (2, 3)]:
        with pytest.raises(DomainError):
            scan_verdict(surface, line, DivisorClass(*bad))
    with pytest.raises(DomainError):
        scan_verdict(surface, line, surface.m_class(), extra_window=-1)


def test_direct_sum_must_be_nonempty():
    with pytest.raises(DomainError):
        DirectSum(())
    with pytest.raises(DomainError):
        direct_sum_natural_wrt_m(Surface(1), [])


# --- first twist with sections


FROZEN_MIN_TWIST = [
    # (e, model, by, m0)
    (1, Line(DivisorClass(-3, 2)), "M", 3),
    (1, Line(DivisorClass(0, 0)), "M", 0),
    (2, Line(DivisorClass(4, -5)), "F", 5),
    (1, DirectSum((DivisorClass(-5, 0), DivisorClass(0, -4))), "M", 4),
    (1, IdealSheafModel(PointConfig(3, Locus.GENERAL), DivisorClass(1, 1)), "M", 1),
    (1, IdealSheafModel(PointConfig(3, Locus.ON_FIBER), DivisorClass(2, 2)), "M", -1),
    (2, IdealSheafModel(PointConfig(2, Locus.ON_SECTION), DivisorClass(1, 1)), "M", 0),
]


@pytest.mark.parametrize("e,model,by_key,expected", FROZEN_MIN_TWIST)
def test_frozen_min_twist(e, model, by_key, expected):
    surface = Surface(e)
    by = surface.m_class() if by_key == "M" else DivisorClass(0, 1)
    assert min_twist_with_sections(surface, model, by) == expected


def test_min_twist_can_be_empty():
    surface = Surface(1)
    fiber = DivisorClass(0, 1)
    with pytest.raises(DomainError):
        min_twist_with_sections(surface, Line(DivisorClass(-2, 5)), fiber)
    with pytest.raises(DomainError):
        scan_verdict(surface, Line(DivisorClass(-2, 5)), fiber)


@settings(max_examples=200)
@given(surfaces, models)
def test_min_twist_is_sharp(surface, model):
    from hirzebruch.natural import _values_at

    by = surface.m_class()
    m0 = min_twist_with_sections(surface, model, by)
    assert _values_at(surface, model, m0, by)[0] > 0
    assert _values_at(surface, model, m0 - 1, by)[0] == 0


# --- frozen verdicts


def test_documented_failure_witness():
    surface = Surface(2)
    evidence = scan_verdict(surface, Line(DivisorClass(1, 0)), surface.m_class())
    assert not evidence.verdict.holds()
    assert evidence.verdict.witness_t == 0
    assert (evidence.verdict.witness_h0, evidence.verdict.witness_h1) == (1, 1)


def test_mixed_quadrant_failure_is_caught():
    # sections first appear at t=7 where the fiber coordinate hits 0 but
    # the slack is -12; h1 there is 66
    surface = Surface(1)
    evidence = scan_verdict(surface, Line(DivisorClass(5, -7)), surface.m_class())
    assert not line_natural_wrt_m(surface, DivisorClass(5, -7))
    assert evidence.verdict.witness_t == 7
    assert (evidence.verdict.witness_h0, evidence.verdict.witness_h1) == (1, 66)


def test_deep_negative_fiber_coordinate():
    surface = Surface(2)
    evidence = scan_verdict(surface, Line(DivisorClass(1, -9)), surface.m_class())
    assert evidence.verdict.witness_t == 5
    assert (evidence.verdict.witness_h0, evidence.verdict.witness_h1) == (2, 30)


def test_boundary_slack_holds():
    # slack exactly -1 is clean at every twist with sections
    surface = Surface(3)
    assert line_natural_wrt_m(surface, DivisorClass(-4, -13))
    evidence = scan_verdict(surface, Line(DivisorClass(-4, -13)), surface.m_class())
    assert evidence.verdict.holds()
    assert evidence.rows[0][0] == 5


def test_unconditional_band():
    surface = Surface(2)
    inside = DivisorClass(1, 1)
    outside = DivisorClass(1, 4)
    assert line_unconditional_wrt_m(surface, inside)
    assert unconditional_scan(surface, Line(inside), surface.m_class()).verdict.holds()
    assert not line_unconditional_wrt_m(surface, outside)
    evidence = unconditional_scan(surface, Line(outside), surface.m_class())
    assert not evidence.verdict.holds()
    # the first scanned row already fails: the left tail is uniformly bad
    assert evidence.verdict.witness_t == evidence.rows[0][0]


def test_ample_twist_rescues_negative_slack():
    # each twist by the minimal ample class buys one unit of slack, so
    # v + ceil(-v/(e+1)) >= eu - 1 decides; (1,-1) at e=2 just misses
    surface = Surface(2)
    assert not line_natural_wrt_r(surface, DivisorClass(1, -1))
    evidence = scan_verdict(surface, Line(DivisorClass(1, -1)), surface.r_class())
    assert evidence.verdict.witness_t == 1
    assert (evidence.verdict.witness_h0, evidence.verdict.witness_h1) == (4, 1)
    # two more units of fiber degree flip it
    assert line_natural_wrt_r(surface, DivisorClass(1, 1))
    assert scan_verdict(surface, Line(DivisorClass(1, 1)), surface.r_class()).verdict.holds()


@pytest.mark.parametrize("e", [1, 2, 3, 4])
def test_counterexample_sum_fails_at_zero(e):
    surface = Surface(e)
    first = DivisorClass(0, 0)
    second = DivisorClass(-2, 4 - e)
    assert line_natural_wrt_m(surface, first)
    assert line_natural_wrt_m(surface, second)
    assert not direct_sum_natural_wrt_m(surface, [first, second])
    evidence = scan_verdict(surface, DirectSum((first, second)), surface.m_class())
    assert evidence.verdict.witness_t == 0
    assert (evidence.verdict.witness_h0, evidence.verdict.witness_h1) == (1, 5)


def test_sum_with_one_bad_summand_fails():
    surface = Surface(1)
    assert not direct_sum_natural_wrt_m(surface, [DivisorClass(5, 5), DivisorClass(0, -2)])


# --- closed forms vs scans


@settings(max_examples=400)
@given(surfaces, classes)
def test_line_closed_forms_match_scans(surface, cls):
    m = surface.m_class()
    assert line_natural_wrt_m(surface, cls) == scan_verdict(surface, Line(cls), m).verdict.holds()
    assert (
        line_unconditional_wrt_m(surface, cls)
        == unconditional_scan(surface, Line(cls), m).verdict.holds()
    )
    assert (
        line_natural_wrt_r(surface, cls)
        == scan_verdict(surface, Line(cls), surface.r_class()).verdict.holds()
    )


@settings(max_examples=300)
@given(surfaces, st.lists(classes, min_size=1, max_size=5))
def test_sum_closed_form_matches_scan(surface, cs):
    closed = direct_sum_natural_wrt_m(surface, cs)
    scanned = scan_verdict(surface, DirectSum(tuple(cs)), surface.m_class()).verdict.holds()
    assert closed == scanned


def test_sum_criterion_against_wide_window():
    # independent referee: fixed generous window instead of the computed
    # stabilization bound
    rng = random.Random(421)
    m_cache = {e: Surface(e) for e in (1, 2, 3, 4)}
    for _ in range(400):
        e = rng.randint(1, 4)
        surface = m_cache[e]
        cs = [
            DivisorClass(rng.randint(-9, 9), rng.randint(-9, 9))
            for _ in range(rng.randint(1, 5))
        ]
        model = DirectSum(tuple(cs))
        by = surface.m_class()
        m0 = min_twist_with_sections(surface, model, by)
        from hirzebruch.natural import _values_at

        wide = all(
            _values_at(surface, model, t, by)[1] == 0 for t in range(m0, m0 + 41)
        )
        assert direct_sum_natural_wrt_m(surface, cs) == wide


# --- window sufficiency


@settings(max_examples=300)
@given(surfaces, models)
def test_scan_window_is_stable(surface, model):
    base = scan_verdict(surface, model, surface.m_class())
    wide = scan_verdict(surface, model, surface.m_class(), extra_window=15)
    assert base.verdict == wide.verdict


@settings(max_examples=200)
@given(surfaces, st.one_of(lines, sums))
def test_unconditional_window_is_stable(surface, model):
    base = unconditional_scan(surface, model, surface.m_class())
    wide = unconditional_scan(surface, model, surface.m_class(), extra_window=15)
    assert base.verdict.outcome == wide.verdict.outcome


@settings(max_examples=150)
@given(surfaces, lines, st.integers(min_value=0, max_value=2))
def test_scan_windows_stable_for_other_spanned_classes(surface, model, pick):
    by = [DivisorClass(0, 1), surface.r_class(), DivisorClass(2, 2 * surface.e + 1)][pick]
    if by.a == 0 and model.cls.a < 0:
        return  # no twist ever has sections
    base = scan_verdict(surface, model, by)
    wide = scan_verdict(surface, model, by, extra_window=15)
    assert base.verdict == wide.verdict


@settings(max_examples=200)
@given(surfaces, ideals)
def test_ideal_scans_are_stable_and_named(surface, model):
    base = scan_verdict(surface, model, surface.m_class())
    wide = scan_verdict(surface, model, surface.m_class(), extra_window=15)
    assert base.verdict == wide.verdict
    assert ideal_natural_wrt_m(surface, model) == base.verdict.holds()


# --- scan evidence invariants


@settings(max_examples=200)
@given(surfaces, models)
def test_evidence_shape(surface, model):
    evidence = scan_verdict(surface, model, surface.m_class())
    ts = [row[0] for row in evidence.rows]
    assert ts == list(range(ts[0], ts[-1] + 1))
    assert ts[0] == min_twist_with_sections(surface, model, surface.m_class())
    assert all(row[1] > 0 for row in evidence.rows)  # sections persist
    if evidence.verdict.outcome is Outcome.FAILS:
        first_bad = next(row for row in evidence.rows if row[2] > 0)
        assert evidence.verdict.witness_t == first_bad[0]
    else:
        assert all(row[2] == 0 for row in evidence.rows)
