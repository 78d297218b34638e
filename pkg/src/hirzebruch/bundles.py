"""Rank-2 bundles as extensions: Chern data, construction, audits, stability.

A rank-2 bundle E on F_e is presented here by an extension

    0 -> O(sub) -> E -> I_Z(quot) -> 0

with Z a length-s general subscheme.  The standard construction takes
integers (u, v, m, s) with v >= e(u-1)-1, m >= 0 and builds the datum with
sub = (1-m, -e*m) and quot = (u+m-1, v+e*m), so c1(E) = (u, v); the
admissible range of s is [a_lo, b_hi] = `section_count_bounds`.  Two
numerical certificates ride along: the chosen twist is the first with a
section (section_min), and the points impose the independence needed for
local freeness (cayley_bacharach).

E is never materialized.  Its cohomology at a twist is reported as a box
of intervals squeezed out of the long exact sequence, together with the
point estimate obtained by giving every connecting map maximal rank; the
box collapses to exact values when the extension is forced to split
(s = 0 and no ext group).  Everything downstream of the intervals speaks
the Holds / Fails / Indeterminate trichotomy rather than pretending to
exact answers it does not have.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .cohomology import CohomologyTriple, chi, h0, h1, h2
from .natural import Outcome, Verdict, _ceil_div
from .picard import DivisorClass, DomainError, Surface, twist
from .sheaves import (
    IdealSheafModel,
    Locus,
    PointConfig,
    h0_ideal,
    h1_ideal,
    h2_ideal,
)


class ConstructionError(DomainError):
    """A construction hypothesis failed; `reason` names which one."""

    def __init__(self, reason: str, message: str) -> None:
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class ChernData:
    rank: int
    c1: DivisorClass
    c2: int

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise DomainError(f"rank must be >= 1, got {self.rank}")
        if self.rank == 1 and self.c2 < 0:
            # rank-1 c2 is an ideal length
            raise DomainError(f"rank-1 c2 is a point count, got {self.c2}")


@dataclass(frozen=True)
class ExtensionDatum:
    """One extension presentation of a rank-2 sheaf, plus its certificates.

    c1 is (u, v); sub and quotient carry the two ends.  section_min records
    that no earlier twist of the would-be bundle has a section (numerically
    equivalent to s >= a_lo); cayley_bacharach records the point-count
    inequality that makes a locally free extension possible, vacuous at
    s = 0; ext_forced_split records that the extension group vanishes and
    s = 0, so the only extension is the direct sum.
    """

    surface: Surface
    u: int
    v: int
    m: int
    s: int
    sub: DivisorClass
    quotient: IdealSheafModel
    section_min: bool
    cayley_bacharach: bool
    ext_forced_split: bool

    def __post_init__(self) -> None:
        if self.s < 0:
            raise DomainError(f"point count must be >= 0, got {self.s}")
        if self.quotient.config.z != self.s:
            raise DomainError("quotient ideal length must equal s")
        total = self.sub + self.quotient.cls
        if (total.a, total.b) != (self.u, self.v):
            raise DomainError(
                f"ends {self.sub} + {self.quotient.cls} do not add up to c1 ({self.u},{self.v})"
            )

    def c1(self) -> DivisorClass:
        return DivisorClass(self.u, self.v)

    def chern(self) -> ChernData:
        c2 = self.s + self.surface.intersect(self.sub, self.quotient.cls)
        return ChernData(rank=2, c1=self.c1(), c2=c2)


# ---------------------------------------------------------------------------
# Chern formulas


def allowed_min_section_divisors(surface: Surface) -> list[DivisorClass]:
    """Possible vanishing classes of a minimal section, for ranks <= 2.

    Exactly 2e+1 classes: (0,0), (1,0), the fiber multiples (0,1)..(0,e),
    and for e >= 2 the mixed classes (1,1)..(1,e-1).
    """
    e = surface.e
    out = [DivisorClass(0, 0), DivisorClass(1, 0)]
    out.extend(DivisorClass(0, y) for y in range(1, e + 1))
    out.extend(DivisorClass(1, y) for y in range(1, e))
    assert len(out) == 2 * e + 1
    return out


def extension_c2_twisted(
    surface: Surface, vanishing: DivisorClass, m: int, c1: DivisorClass, s: int
) -> int:
    """c2 of E(mM) when a minimal section of E(mM) vanishes on `vanishing`
    plus s residual points: D.c1 + 2m(M.D) - D^2 + s."""
    if s < 0:
        raise DomainError(f"point count must be >= 0, got {s}")
    mm = surface.m_class()
    return (
        s
        + surface.intersect(vanishing, c1)
        + 2 * m * surface.intersect(mm, vanishing)
        - surface.intersect(vanishing, vanishing)
    )


def chern_of_extension(
    surface: Surface, vanishing: DivisorClass, m: int, c1: DivisorClass, s: int
) -> ChernData:
    """Chern data of the untwisted E from the minimal-section presentation.

    Undoes the twist: c2(E) = c2(E(mM)) - m(M.c1) - m^2 e.
    """
    twisted = extension_c2_twisted(surface, vanishing, m, c1, s)
    mm = surface.m_class()
    c2 = twisted - m * surface.intersect(mm, c1) - m * m * surface.e
    return ChernData(rank=2, c1=c1, c2=c2)


def section_count_bounds(surface: Surface, u: int, v: int, m: int) -> tuple[int, int]:
    """(a_lo, b_hi): the admissible point-count range of the construction.

    a_lo = h0 of (u+2m-2, v+2me-e), the quotient class one twist before m;
    b_hi = h0 of (u+2m-1, v+2me), the quotient class at twist m.  Always
    a_lo <= b_hi since the two classes differ by the effective class M.
    """
    if m < 0:
        raise DomainError(f"twist parameter must be >= 0, got {m}")
    e = surface.e
    a_lo = h0(surface, DivisorClass(u + 2 * m - 2, v + 2 * m * e - e))
    b_hi = h0(surface, DivisorClass(u + 2 * m - 1, v + 2 * m * e))
    assert a_lo <= b_hi
    return a_lo, b_hi


def construction_c2(surface: Surface, u: int, v: int, m: int, s: int) -> int:
    """c2 of the standard construction: s - e(u+m-1) + (1-m)(v+em)."""
    e = surface.e
    return s - e * (u + m - 1) + (1 - m) * (v + e * m)


def c1_obstructed(surface: Surface, rank: int, u: int, v: int) -> bool:
    """True when no rank-`rank` bundle with c1 = (u, v) has natural
    cohomology w.r.t. M: the criterion is v <= e(u - rank + 1) - 2.
    False only means "not decided by this criterion"."""
    if rank < 1:
        raise DomainError(f"rank must be >= 1, got {rank}")
    return v <= surface.e * (u - rank + 1) - 2


# ---------------------------------------------------------------------------
# the standard construction


def construct_extension(surface: Surface, u: int, v: int, m: int, s: int) -> ExtensionDatum:
    """Build the standard extension datum for (u, v, m, s).

    Hypotheses, each rejected with a named ConstructionError:
      hypothesis_v:   v >= e(u-1)-1
      hypothesis_m:   m >= 0
      s_out_of_range: a_lo <= s <= b_hi
    """
    e = surface.e
    if v < e * (u - 1) - 1:
        raise ConstructionError(
            "hypothesis_v", f"need v >= e(u-1)-1 = {e * (u - 1) - 1}, got v = {v}"
        )
    if m < 0:
        raise ConstructionError("hypothesis_m", f"need m >= 0, got m = {m}")
    a_lo, b_hi = section_count_bounds(surface, u, v, m)
    if not a_lo <= s <= b_hi:
        raise ConstructionError(
            "s_out_of_range", f"need {a_lo} <= s <= {b_hi}, got s = {s}"
        )

    sub = DivisorClass(1 - m, -e * m)
    qcls = DivisorClass(u + m - 1, v + e * m)
    quotient = IdealSheafModel(PointConfig(z=s, locus=Locus.GENERAL), qcls)

    # no section before the m-th twist <=> s >= a_lo, true by the range check
    section_min = h0(surface, DivisorClass(u + 2 * m - 2, v + 2 * m * e - e)) <= s
    assert section_min == (s >= a_lo)

    if s == 0:
        cayley_bacharach = True  # vacuous: no points to condition
    else:
        cb_class = DivisorClass(u + 2 * m - 5, v + 2 * m * e - 2 * e - 2)
        cayley_bacharach = h0(surface, cb_class) <= s - 1

    ext_forced_split = s == 0 and h1(surface, sub - qcls) == 0

    return ExtensionDatum(
        surface=surface,
        u=u,
        v=v,
        m=m,
        s=s,
        sub=sub,
        quotient=quotient,
        section_min=section_min,
        cayley_bacharach=cayley_bacharach,
        ext_forced_split=ext_forced_split,
    )


# ---------------------------------------------------------------------------
# long-exact-sequence intervals


@dataclass(frozen=True)
class CohomologyInterval:
    """Box of possible (h0, h1, h2) for the extension at one twist.

    The long exact sequence leaves exactly two free parameters, the ranks
    of the two connecting maps; the box is their exact projection and
    `expected` is the corner where both ranks are maximal.  chi is exact.
    """

    h0_min: int
    h0_max: int
    h1_min: int
    h1_max: int
    h2_min: int
    h2_max: int
    chi: int
    expected: CohomologyTriple

    def exact(self) -> bool:
        return (
            self.h0_min == self.h0_max
            and self.h1_min == self.h1_max
            and self.h2_min == self.h2_max
        )


def cohomology_interval(datum: ExtensionDatum, t: int) -> CohomologyInterval:
    """Cohomology box of the extension twisted by t copies of M.

    With a_i from the sub line bundle and q_i from the quotient ideal model
    (both twisted by tM), the connecting-map ranks r0 <= min(q0, a1) and
    r1 <= min(q1, a2) give h0 = a0 + q0 - r0, h1 = (a1 - r0) + (q1 - r1),
    h2 = (a2 - r1) + q2.  The bounds below are those projections; the
    expected triple takes r0, r1 maximal.  A forced split pins r0 = r1 = 0.
    """
    surface = datum.surface
    mm = surface.m_class()
    a_cls = twist(datum.sub, t, mm)
    a0, a1, a2 = h0(surface, a_cls), h1(surface, a_cls), h2(surface, a_cls)
    q_model = datum.quotient.twisted(t, mm)
    q0 = h0_ideal(surface, q_model)
    q1 = h1_ideal(surface, q_model)
    q2 = h2_ideal(surface, q_model)

    total_chi = chi(surface, a_cls) + chi(surface, q_model.cls) - datum.s

    if datum.ext_forced_split:
        lo0 = hi0 = a0 + q0
        lo1 = hi1 = a1 + q1
        lo2 = hi2 = a2 + q2
    else:
        lo0, hi0 = a0 + max(0, q0 - a1), a0 + q0
        lo1, hi1 = max(0, a1 - q0) + max(0, q1 - a2), a1 + q1
        lo2, hi2 = max(0, a2 - q1) + q2, a2 + q2
    expected = CohomologyTriple(lo0, lo1, lo2)

    assert expected.chi() == total_chi
    assert lo0 <= hi0 and lo1 <= hi1 and lo2 <= hi2
    return CohomologyInterval(
        h0_min=lo0,
        h0_max=hi0,
        h1_min=lo1,
        h1_max=hi1,
        h2_min=lo2,
        h2_max=hi2,
        chi=total_chi,
        expected=expected,
    )


# ---------------------------------------------------------------------------
# natural-cohomology audit of an extension, w.r.t. M


@dataclass(frozen=True)
class ExtensionAuditRow:
    t: int
    interval: CohomologyInterval
    outcome: Outcome


@dataclass(frozen=True)
class ExtensionAudit:
    rows: tuple[ExtensionAuditRow, ...]
    verdict: Verdict
    scan_start: int
    scan_stop: int


def _audit_scan_stop(datum: ExtensionDatum) -> int:
    """Twist past which the h1 upper bound a1 + q1 is monotone nonincreasing.

    Needs the component line bundles settled into the constant regime (both
    coordinates nonnegative, h-coordinate positive: h1 then depends only on
    the constant M-slack) and, once settled, the quotient's point
    correction max(0, s - capacity) is nonincreasing because the capacity
    is nondecreasing for every locus; the extra cuts push the capacity of
    the unbounded loci past s.  For construction data the capacity at twist
    m is already b_hi >= s; the cuts cover hand-built data.
    """
    surface = datum.surface
    e = surface.e
    qcls = datum.quotient.cls
    cuts = [datum.m]
    for cls in (datum.sub, qcls):
        cuts.append(1 - cls.a)
        cuts.append(_ceil_div(-cls.b, e))
    if datum.s > 0:
        locus = datum.quotient.config.locus
        if locus is Locus.GENERAL:
            # capacity is full h0 >= b-coordinate + 1
            cuts.append(_ceil_div(datum.s - 1 - qcls.b, e))
        elif locus is Locus.ON_FIBER:
            # capacity is min(a, b//e) + 1
            cuts.append(datum.s - 1 - qcls.a)
            cuts.append(_ceil_div(e * (datum.s - 1) - qcls.b, e))
        # ON_SECTION: capacity is constant under M; no cut exists or is needed
    return max(cuts) + 1


def audit_extension_natural(datum: ExtensionDatum, extra_window: int = 0) -> ExtensionAudit:
    """Scan twists of the extension for the natural-cohomology property.

    Per twist: Fails when the box forces h0 > 0 and h1 > 0; Holds when it
    forces h1 = 0 or h0 = 0; Indeterminate otherwise.  Aggregate verdict:
    Fails on any failing row; Holds when every row holds and both tails
    are pinned (left: h0_max = 0 at the first row, and h0_max is monotone
    under twisting by the spanned class M, so every earlier twist has no
    sections; right: h1_max = 0 at the last row, which lies past the
    monotone threshold of `_audit_scan_stop`); otherwise Indeterminate.
    """
    if extra_window < 0:
        raise DomainError(f"extra_window must be >= 0, got {extra_window}")
    start = datum.m - 1
    stop = _audit_scan_stop(datum) + extra_window
    rows = []
    failing: Optional[ExtensionAuditRow] = None
    all_hold = True
    for t in range(start, stop + 1):
        box = cohomology_interval(datum, t)
        if box.h0_min > 0 and box.h1_min > 0:
            outcome = Outcome.FAILS
        elif box.h1_max == 0 or box.h0_max == 0:
            outcome = Outcome.HOLDS
        else:
            outcome = Outcome.INDETERMINATE
        row = ExtensionAuditRow(t=t, interval=box, outcome=outcome)
        rows.append(row)
        if outcome is Outcome.FAILS and failing is None:
            failing = row
        if outcome is not Outcome.HOLDS:
            all_hold = False

    if failing is not None:
        verdict = Verdict(
            Outcome.FAILS,
            witness_t=failing.t,
            witness_h0=failing.interval.h0_min,
            witness_h1=failing.interval.h1_min,
        )
    else:
        left_pinned = rows[0].interval.h0_max == 0
        right_pinned = rows[-1].interval.h1_max == 0
        if all_hold and left_pinned and right_pinned:
            verdict = Verdict(Outcome.HOLDS)
        else:
            verdict = Verdict(Outcome.INDETERMINATE)
    return ExtensionAudit(
        rows=tuple(rows), verdict=verdict, scan_start=start, scan_stop=stop
    )


# ---------------------------------------------------------------------------
# slope stability


class Polarization(str, enum.Enum):
    R = "R"
    M = "M"


@dataclass(frozen=True)
class DestabilizerCandidate:
    """A slope-qualifying class N, with its exclusion reason if excluded.

    reason is None when the candidate is NOT excluded (the certificate then
    fails); "no_map" when N maps into neither end; "genericity" when the
    only possible route is through the quotient and the s general points
    absorb every section of the residual class.  A tail entry stands for
    every class (g, delta) with g <= its own first coordinate: below it all
    three exclusion ingredients are frozen (see `_m_candidates`).
    """

    cls: DivisorClass
    reason: Optional[str]
    tail: bool = False


@dataclass(frozen=True)
class StabilityReport:
    polarization: Polarization
    certified: bool
    candidates: tuple[DestabilizerCandidate, ...]
    warnings: tuple[str, ...]


def _exclusion(datum: ExtensionDatum, n_cls: DivisorClass) -> Optional[str]:
    """Why O(N) cannot inject into the extension, or None if it can.

    A nonzero map lands in the sub (needs sub - N effective) or, after
    composing with the quotient map, in the ideal piece (needs a section
    of the ideal model twisted to class quot - N; for general points that
    is h0(quot - N) >= s + 1).
    """
    surface = datum.surface
    if surface.positivity(datum.sub - n_cls).effective:
        return None
    residual = datum.quotient.cls - n_cls
    shifted = IdealSheafModel(datum.quotient.config, residual)
    if h0_ideal(surface, shifted) > 0:
        return None
    if h0(surface, residual) > 0:
        return "genericity"
    return "no_map"


def _r_candidates(datum: ExtensionDatum) -> list[DestabilizerCandidate]:
    # N.R = gamma + delta for every e, so the slope condition is
    # 2(gamma + delta) >= u + v.  Classes outside the box below map into
    # neither end and are excluded wholesale: a map needs gamma <= sub.a
    # or gamma <= quot.a, and delta <= sub.b or delta <= quot.b.
    u, v = datum.u, datum.v
    gamma_max = max(datum.sub.a, datum.quotient.cls.a)
    delta_max = max(datum.sub.b, datum.quotient.cls.b)
    threshold = _ceil_div(u + v, 2)
    out = []
    for delta in range(threshold - gamma_max, delta_max + 1):
        for gamma in range(threshold - delta, gamma_max + 1):
            n_cls = DivisorClass(gamma, delta)
            out.append(DestabilizerCandidate(n_cls, _exclusion(datum, n_cls)))
    return out


def _m_candidates(datum: ExtensionDatum) -> list[DestabilizerCandidate]:
    # N.M = delta, so the slope condition is 2*delta >= v and gamma is
    # unbounded below.  For gamma below both 0 and the freeze point
    # quot.a - floor(max(0, v - delta)/e), the residual class (quot - N)
    # keeps a constant h0 (its h-coordinate is past the section count's
    # saturation) and constant effectivity, and sub - N keeps a constant
    # effectivity status; one tail entry per delta stands for all of them.
    surface = datum.surface
    e = surface.e
    qcls = datum.quotient.cls
    gamma_max = max(datum.sub.a, qcls.a)
    delta_max = max(datum.sub.b, qcls.b)
    out = []
    for delta in range(_ceil_div(datum.v, 2), delta_max + 1):
        w = qcls.b - delta
        freeze = qcls.a - (max(0, w) // e)
        gamma_lo = min(0, freeze, datum.sub.a)
        for gamma in range(gamma_lo, gamma_max + 1):
            n_cls = DivisorClass(gamma, delta)
            out.append(DestabilizerCandidate(n_cls, _exclusion(datum, n_cls)))
        tail_cls = DivisorClass(gamma_lo - 1, delta)
        out.append(
            DestabilizerCandidate(tail_cls, _exclusion(datum, tail_cls), tail=True)
        )
    return out


def stability_certificate(datum: ExtensionDatum, polarization: Polarization | str) -> StabilityReport:
    """Try to certify slope stability of the extension for one polarization.

    Enumerates every class N whose slope meets or exceeds half of c1's and
    which could inject into the extension; certified means every one is
    excluded.  Any rank-1 subsheaf saturates to such an O(N), so an empty
    or fully excluded candidate list is a genuine stability proof given
    general points; a surviving candidate is reported, not judged.

    Only twist parameter m = 0 is supported; the slope bookkeeping above
    assumes the untwisted presentation.
    """
    pol = Polarization(polarization)
    if datum.m != 0:
        raise DomainError(f"stability certification needs m = 0, got m = {datum.m}")
    surface = datum.surface
    e, u, v = surface.e, datum.u, datum.v

    warnings = []
    if u < 3:
        warnings.append(f"u = {u} is below the certified range u >= 3")
    if v >= 2 * e * u:
        warnings.append(f"v = {v} violates v < 2eu = {2 * e * u}")
    if pol is Polarization.M and v > 2 * e * u - 3:
        warnings.append(
            f"v = {v} violates the fiber-polarization bound v <= 2eu-3 = {2 * e * u - 3}"
        )

    if pol is Polarization.R:
        candidates = _r_candidates(datum)
    else:
        candidates = _m_candidates(datum)
    candidates.sort(key=lambda cand: (cand.cls.a, cand.cls.b))
    certified = all(cand.reason is not None for cand in candidates)
    return StabilityReport(
        polarization=pol,
        certified=certified,
        candidates=tuple(candidates),
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# region classifier


class RegionLabel(str, enum.Enum):
    NONEXISTENT = "Nonexistent"
    EXISTENT = "Existent"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class RegionCell:
    """One (u, v) cell: the label and, when existent, the c2 values
    realized by the construction as merged inclusive intervals."""

    u: int
    v: int
    label: RegionLabel
    witness: tuple[tuple[int, int], ...] = field(default=())


def _merge_intervals(intervals: list[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    # merge overlapping or adjacent inclusive integer intervals
    ordered = sorted(intervals)
    merged: list[list[int]] = []
    for lo, hi in ordered:
        if merged and lo <= merged[-1][1] + 1:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


def _c2_witness(surface: Surface, u: int, v: int, m_max: int) -> tuple[tuple[int, int], ...]:
    intervals = []
    for m in range(m_max + 1):
        a_lo, b_hi = section_count_bounds(surface, u, v, m)
        base = construction_c2(surface, u, v, m, 0)
        intervals.append((base + a_lo, base + b_hi))
    return _merge_intervals(intervals)


def classify_region(
    surface: Surface,
    rank: int,
    u_range: tuple[int, int],
    v_range: tuple[int, int],
    m_max: int = 0,
) -> tuple[RegionCell, ...]:
    """Label each (u, v) cell of the grid for rank 1 or 2.

    Nonexistent when `c1_obstructed`; Existent when the construction (rank
    2) or the line-bundle criterion v >= eu-1 (rank 1) applies.  For these
    two ranks the thresholds are adjacent integers, so every cell is
    decided.  Rank-2 witnesses list the c2 values over m = 0..m_max;
    rank-1 witnesses are the single point 0 (the line bundle itself).
    """
    if rank not in (1, 2):
        raise DomainError(f"classifier covers ranks 1 and 2, got {rank}")
    if m_max < 0:
        raise DomainError(f"m_max must be >= 0, got {m_max}")
    u_lo, u_hi = u_range
    v_lo, v_hi = v_range
    if u_lo > u_hi or v_lo > v_hi:
        raise DomainError("empty (u, v) range")
    e = surface.e
    cells = []
    for u in range(u_lo, u_hi + 1):
        for v in range(v_lo, v_hi + 1):
            if c1_obstructed(surface, rank, u, v):
                cells.append(RegionCell(u, v, RegionLabel.NONEXISTENT))
            elif rank == 1:
                # v >= eu - 1: the line bundle (u, v) itself is natural
                assert v >= e * u - 1
                cells.append(
                    RegionCell(u, v, RegionLabel.EXISTENT, witness=((0, 0),))
                )
            else:
                assert v >= e * (u - 1) - 1
                witness = _c2_witness(surface, u, v, m_max)
                cells.append(RegionCell(u, v, RegionLabel.EXISTENT, witness=witness))
    return tuple(cells)


__all__ = [
    "ChernData",
    "CohomologyInterval",
    "ConstructionError",
    "DestabilizerCandidate",
    "ExtensionAudit",
    "ExtensionAuditRow",
    "ExtensionDatum",
    "Polarization",
    "RegionCell",
    "RegionLabel",
    "StabilityReport",
    "allowed_min_section_divisors",
    "audit_extension_natural",
    "c1_obstructed",
    "chern_of_extension",
    "classify_region",
    "cohomology_interval",
    "construct_extension",
    "construction_c2",
    "extension_c2_twisted",
    "section_count_bounds",
    "stability_certificate",
]
