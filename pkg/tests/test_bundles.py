"""Rank-2 construction, cohomology boxes, stability, and the region map."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hirzebruch import (
    ChernData,
    ConstructionError,
    DivisorClass,
    DomainError,
    Locus,
    Outcome,
    RegionLabel,
    Surface,
    allowed_min_section_divisors,
    audit_extension_natural,
    c1_obstructed,
    chern_of_extension,
    chi,
    classify_region,
    cohomology_interval,
    construct_extension,
    construction_c2,
    extension_c2_twisted,
    h0,
    section_count_bounds,
    stability_certificate,
)
from hirzebruch.sheaves import IdealSheafModel, PointConfig, h0_ideal

surfaces = st.integers(min_value=1, max_value=4).map(Surface)


def build(e, u, v, m, s):
    return construct_extension(Surface(e), u, v, m, s)


# --- Chern bookkeeping


def test_allowed_min_section_divisors():
    assert allowed_min_section_divisors(Surface(1)) == [
        DivisorClass(0, 0),
        DivisorClass(1, 0),
        DivisorClass(0, 1),
    ]
    e3 = allowed_min_section_divisors(Surface(3))
    assert len(e3) == 7
    assert e3 == [
        DivisorClass(0, 0),
        DivisorClass(1, 0),
        DivisorClass(0, 1),
        DivisorClass(0, 2),
        DivisorClass(0, 3),
        DivisorClass(1, 1),
        DivisorClass(1, 2),
    ]


def test_chern_data_validation():
    with pytest.raises(DomainError):
        ChernData(rank=0, c1=DivisorClass(0, 0), c2=0)
    with pytest.raises(DomainError):
        ChernData(rank=1, c1=DivisorClass(0, 0), c2=-1)  # rank 1 has c2 = 0
    assert ChernData(rank=2, c1=DivisorClass(1, 1), c2=-3).c2 == -3


def test_twisted_c2_frozen():
    # e=2, vanishing class (1,0), c1=(2,3), m=1: D.c1 = -1, M.D = 0,
    # D^2 = -2, so c2 of the twisted bundle is s + 1
    surface = Surface(2)
    d = DivisorClass(1, 0)
    c1 = DivisorClass(2, 3)
    for s in (0, 1, 5):
        assert extension_c2_twisted(surface, d, 1, c1, s) == s + 1
    with pytest.raises(DomainError):
        extension_c2_twisted(surface, d, 1, c1, -1)


def test_untwisting_undoes_the_shift():
    # untwisted c2 = twisted c2 - m(M.c1) - m^2 e
    surface = Surface(2)
    d = DivisorClass(1, 0)
    c1 = DivisorClass(2, 3)
    data = chern_of_extension(surface, d, 1, c1, 4)
    assert data.c1 == c1
    assert data.c2 == (4 + 1) - 1 * 3 - 1 * 2


@settings(max_examples=200)
@given(
    surfaces,
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=-4, max_value=8),
    st.integers(min_value=0, max_value=3),
    st.integers(min_value=0, max_value=6),
)
def test_presentation_and_construction_c2_agree(surface, u, dv, m, s):
    # the twisted bundle's sub-line is always (1,0), so the minimal-section
    # route with that vanishing divisor must land on the construction's c2
    v = surface.e * (u - 1) - 1 + dv
    d = DivisorClass(1, 0)
    via_presentation = chern_of_extension(surface, d, m, DivisorClass(u, v), s).c2
    assert via_presentation == construction_c2(surface, u, v, m, s)


# --- admissible point counts


FROZEN_BOUNDS = [
    # (e, u, v, m, a_lo, b_hi)
    (1, 3, 2, 0, 3, 6),
    (1, 2, 1, 0, 1, 3),
    (1, 2, 1, 1, 6, 10),
    (1, 2, 1, 2, 15, 21),
    (1, 2, 1, 3, 28, 36),
    (2, 1, 0, 0, 0, 1),
    (2, 2, 1, 0, 0, 2),
    (3, 3, 6, 0, 5, 12),
]


@pytest.mark.parametrize("e,u,v,m,lo,hi", FROZEN_BOUNDS)
def test_frozen_section_bounds(e, u, v, m, lo, hi):
    assert section_count_bounds(Surface(e), u, v, m) == (lo, hi)


def test_section_bounds_reject_negative_m():
    with pytest.raises(DomainError):
        section_count_bounds(Surface(1), 2, 1, -1)


@settings(max_examples=200)
@given(
    surfaces,
    st.integers(min_value=-2, max_value=5),
    st.integers(min_value=-8, max_value=10),
    st.integers(min_value=0, max_value=3),
)
def test_bounds_are_ordered_and_h0_valued(surface, u, v, m):
    lo, hi = section_count_bounds(surface, u, v, m)
    e = surface.e
    assert 0 <= lo <= hi
    assert lo == h0(surface, DivisorClass(u + 2 * m - 2, v + 2 * m * e - e))
    assert hi == h0(surface, DivisorClass(u + 2 * m - 1, v + 2 * m * e))


# --- construction hypotheses


def test_construction_rejections_are_named():
    surface = Surface(2)
    with pytest.raises(ConstructionError) as info:
        construct_extension(surface, 3, 1, 0, 0)  # needs v >= 2*2-1 = 3
    assert info.value.reason == "hypothesis_v"
    with pytest.raises(ConstructionError) as info:
        construct_extension(surface, 2, 3, -1, 0)
    assert info.value.reason == "hypothesis_m"
    with pytest.raises(ConstructionError) as info:
        construct_extension(surface, 2, 3, 0, 99)
    assert info.value.reason == "s_out_of_range"
    with pytest.raises(ConstructionError) as info:
        construct_extension(surface, 2, 3, 0, -1)
    assert info.value.reason == "s_out_of_range"


def test_datum_shape():
    datum = build(1, 3, 2, 0, 3)
    assert datum.sub == DivisorClass(1, 0)
    assert datum.quotient.cls == DivisorClass(2, 2)
    assert datum.quotient.config == PointConfig(3, Locus.GENERAL)
    assert datum.c1() == DivisorClass(3, 2)
    chern = datum.chern()
    assert (chern.rank, chern.c1, chern.c2) == (2, DivisorClass(3, 2), 3)
    assert datum.section_min and datum.cayley_bacharach
    assert not datum.ext_forced_split


@settings(max_examples=200)
@given(
    surfaces,
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=0, max_value=6),
    st.integers(min_value=0, max_value=2),
    st.data(),
)
def test_constructible_data_invariants(surface, u, dv, m, data):
    v = surface.e * (u - 1) - 1 + dv
    lo, hi = section_count_bounds(surface, u, v, m)
    s = data.draw(st.integers(min_value=lo, max_value=hi))
    datum = construct_extension(surface, u, v, m, s)
    # ends add up to c1, the twist only moves the splitting
    assert datum.sub + datum.quotient.cls == DivisorClass(u, v)
    assert datum.chern().c2 == construction_c2(surface, u, v, m, s)
    # an in-range point count always leaves the minimal-section and
    # point-condition certificates satisfied
    assert datum.section_min
    assert datum.cayley_bacharach
    if datum.ext_forced_split:
        assert s == 0


# --- cohomology boxes


def test_exact_box_at_e1():
    # sub (1,0) has no h1 on F_1, so the rows are exact there
    datum = build(1, 2, 1, 0, 2)
    box = cohomology_interval(datum, 0)
    assert box.exact()
    assert (box.h0_min, box.h1_min, box.h2_min) == (2, 0, 0)
    assert box.chi == 2
    assert box.expected.chi() == 2


def test_forced_split_box_is_the_sum():
    datum = build(2, 2, 1, 0, 0)
    assert datum.ext_forced_split
    box = cohomology_interval(datum, 0)
    assert box.exact()
    # O(1,0) + O(1,1) on F_2: h0 = 1 + 2, h1 = 1 + 0
    assert (box.h0_min, box.h1_min, box.h2_min) == (3, 1, 0)


def test_unforced_box_is_wide_at_higher_e():
    # same boundary shape at e=3 is NOT forced: the connecting map can act
    datum = build(3, 2, 2, 0, 0)
    assert not datum.ext_forced_split
    box = cohomology_interval(datum, 0)
    assert not box.exact()
    assert (box.h0_min, box.h0_max) == (2, 4)
    assert box.h1_min == 0 and box.h1_max == 2


@settings(max_examples=150)
@given(
    surfaces,
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=0, max_value=5),
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=-2, max_value=6),
)
def test_box_consistency(surface, u, dv, m, t):
    v = surface.e * (u - 1) - 1 + dv
    lo, hi = section_count_bounds(surface, u, v, m)
    datum = construct_extension(surface, u, v, m, lo)
    box = cohomology_interval(datum, t)
    assert box.h0_min <= box.h0_max
    assert box.h1_min <= box.h1_max
    assert box.h2_min <= box.h2_max
    assert box.expected.chi() == box.chi
    assert (box.h0_min, box.h1_min, box.h2_min) == (
        box.expected.h0,
        box.expected.h1,
        box.expected.h2,
    )


# --- the natural-cohomology audit


def test_audit_holds_on_the_first_surface():
    audit = audit_extension_natural(build(1, 3, 2, 0, 3))
    assert audit.verdict.outcome is Outcome.HOLDS
    assert audit.rows[0].t == audit.scan_start == -1
    assert all(row.outcome is Outcome.HOLDS for row in audit.rows)


def test_audit_catches_the_forced_split():
    audit = audit_extension_natural(build(2, 2, 1, 0, 0))
    assert audit.verdict.outcome is Outcome.FAILS
    assert audit.verdict.witness_t == 0
    assert (audit.verdict.witness_h0, audit.verdict.witness_h1) == (3, 1)


def test_audit_indeterminate_at_higher_e():
    surface = Surface(2)
    lo, _ = section_count_bounds(surface, 3, 3, 0)
    audit = audit_extension_natural(construct_extension(surface, 3, 3, 0, lo))
    assert audit.verdict.outcome is Outcome.INDETERMINATE


@settings(max_examples=100)
@given(
    st.integers(min_value=1, max_value=2).map(Surface),
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=0, max_value=2),
    st.data(),
)
def test_audit_window_is_stable(surface, u, dv, m, data):
    v = surface.e * (u - 1) - 1 + dv
    lo, hi = section_count_bounds(surface, u, v, m)
    s = data.draw(st.integers(min_value=lo, max_value=hi))
    datum = construct_extension(surface, u, v, m, s)
    base = audit_extension_natural(datum)
    wide = audit_extension_natural(datum, extra_window=10)
    assert base.verdict == wide.verdict


def test_audit_rows_cover_the_window():
    datum = build(1, 2, 1, 1, 6)
    audit = audit_extension_natural(datum)
    ts = [row.t for row in audit.rows]
    assert ts[0] == datum.m - 1
    assert ts == list(range(audit.scan_start, audit.scan_stop + 1))


# --- stability certificates


def test_stability_certificate_frozen_instance():
    # the flagship instance: both polarizations certify, and the
    # half-slope box is exactly three classes
    for s in (3, 4, 5, 6):
        datum = build(1, 3, 2, 0, s)
        r_report = stability_certificate(datum, "R")
        assert r_report.certified
        assert [c.cls for c in r_report.candidates] == [
            DivisorClass(1, 2),
            DivisorClass(2, 1),
            DivisorClass(2, 2),
        ]
        assert all(c.reason == "genericity" for c in r_report.candidates)
        assert r_report.warnings == ()
        m_report = stability_certificate(datum, "M")
        assert m_report.certified
        assert all(c.reason is not None for c in m_report.candidates)
        assert any(c.tail for c in m_report.candidates)


def test_r_candidate_box_is_complete():
    # independent wide enumeration: outside the reported box no class with
    # qualifying slope can map to either end of the extension
    datum = build(1, 3, 2, 0, 3)
    surface = datum.surface
    reported = {(c.cls.a, c.cls.b) for c in stability_certificate(datum, "R").candidates}
    for gamma in range(-15, 16):
        for delta in range(-15, 16):
            if 2 * (gamma + delta) < datum.u + datum.v:
                continue
            n_cls = DivisorClass(gamma, delta)
            if (gamma, delta) in reported:
                continue
            assert not surface.positivity(datum.sub - n_cls).effective
            residual = datum.quotient.cls - n_cls
            shifted = IdealSheafModel(datum.quotient.config, residual)
            assert h0_ideal(surface, shifted) == 0


def test_m_tail_entries_are_really_frozen():
    # walking gamma further down past a tail marker never changes the
    # exclusion ingredients
    datum = build(1, 3, 2, 0, 3)
    surface = datum.surface
    report = stability_certificate(datum, "M")
    for cand in report.candidates:
        if not cand.tail:
            continue
        delta = cand.cls.b
        probes = [cand.cls.a, cand.cls.a - 1, cand.cls.a - 7]
        states = set()
        for gamma in probes:
            n_cls = DivisorClass(gamma, delta)
            residual = datum.quotient.cls - n_cls
            shifted = IdealSheafModel(datum.quotient.config, residual)
            states.add(
                (
                    surface.positivity(datum.sub - n_cls).effective,
                    h0_ideal(surface, shifted) > 0,
                    h0(surface, residual) > 0,
                )
            )
        assert len(states) == 1


def test_stability_requires_untwisted_presentation():
    datum = build(1, 2, 1, 1, 6)
    with pytest.raises(DomainError):
        stability_certificate(datum, "R")


def test_stability_warnings():
    surface = Surface(1)
    # v = 2eu violates the strict slope hypothesis
    lo, _ = section_count_bounds(surface, 3, 6, 0)
    loud = stability_certificate(construct_extension(surface, 3, 6, 0, lo), "R")
    assert loud.warnings
    # u below 3 is outside the certified range
    lo, _ = section_count_bounds(surface, 2, 3, 0)
    small = stability_certificate(construct_extension(surface, 2, 3, 0, lo), "M")
    assert any("u = 2" in w for w in small.warnings)
    with pytest.raises(ValueError):
        stability_certificate(build(1, 3, 2, 0, 3), "Q")


@pytest.mark.parametrize("e", [2, 3, 4])
def test_stability_certifies_across_surfaces(e):
    surface = Surface(e)
    u, v = 3, 2 * e
    lo, hi = section_count_bounds(surface, u, v, 0)
    for s in (lo, hi):
        datum = construct_extension(surface, u, v, 0, s)
        assert stability_certificate(datum, "R").certified
        assert stability_certificate(datum, "M").certified


# --- region classifier


def test_region_thresholds():
    surface = Surface(2)
    # rank 2: boundary between v = e(u-1)-2 and e(u-1)-1
    assert c1_obstructed(surface, 2, 3, 2)
    assert not c1_obstructed(surface, 2, 3, 3)
    # rank 1: boundary shifts by e
    assert c1_obstructed(surface, 1, 3, 4)
    assert not c1_obstructed(surface, 1, 3, 5)
    with pytest.raises(DomainError):
        c1_obstructed(surface, 0, 1, 1)


def test_classifier_rejects_bad_inputs():
    surface = Surface(1)
    with pytest.raises(DomainError):
        classify_region(surface, 3, (0, 1), (0, 1))
    with pytest.raises(DomainError):
        classify_region(surface, 2, (1, 0), (0, 1))
    with pytest.raises(DomainError):
        classify_region(surface, 2, (0, 1), (0, 1), m_max=-1)


def test_flagship_c2_witness():
    cells = classify_region(Surface(1), 2, (2, 2), (1, 1), m_max=3)
    assert len(cells) == 1
    assert cells[0].label is RegionLabel.EXISTENT
    assert cells[0].witness == ((1, 24),)


def test_witness_intervals_before_merging():
    # the same instance at m_max=0..2 shows the merging is doing real work
    assert classify_region(Surface(1), 2, (2, 2), (1, 1), 0)[0].witness == ((1, 3),)
    assert classify_region(Surface(1), 2, (2, 2), (1, 1), 1)[0].witness == ((1, 8),)
    assert classify_region(Surface(1), 2, (2, 2), (1, 1), 2)[0].witness == ((1, 15),)


def test_adjacent_intervals_merge():
    # consecutive twists always touch when v + e(2m+1) + 1 >= 0: the next
    # lower bound exceeds the previous upper bound by exactly that amount
    assert classify_region(Surface(2), 2, (3, 3), (3, 3), 1)[0].witness == ((1, 14),)
    assert classify_region(Surface(3), 2, (3, 3), (5, 5), 1)[0].witness == ((2, 21),)


def test_interval_merging_handles_gaps():
    # deep negative v does produce disjoint c2 intervals: s = 0 is the
    # only admissible count, so each twist contributes a single point
    cells = classify_region(Surface(1), 2, (-3, -3), (-5, -5), 2)
    assert cells[0].witness == ((-1, -1), (3, 3), (5, 5))


@settings(max_examples=120)
@given(
    surfaces,
    st.integers(min_value=1, max_value=2),
    st.integers(min_value=-3, max_value=5),
    st.integers(min_value=-8, max_value=10),
)
def test_partition_is_exact(surface, rank, u, v):
    cells = classify_region(surface, rank, (u, u), (v, v))
    cell = cells[0]
    assert cell.label is not RegionLabel.UNKNOWN
    threshold = surface.e * (u - rank + 1) - 1
    if v <= threshold - 1:
        assert cell.label is RegionLabel.NONEXISTENT
        assert cell.witness == ()
    else:
        assert cell.label is RegionLabel.EXISTENT
        assert cell.witness != ()
