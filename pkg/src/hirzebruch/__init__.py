"""Exact cohomology of line bundles, ideal sheaves, and rank-2 extensions
on the ruled surfaces indexed by a positive integer e, with classifiers
for the twist-vanishing ("natural cohomology") condition.

All arithmetic is exact; there is no floating point anywhere.
"""

from .picard import DivisorClass, DomainError, PositivityReport, Surface, twist
from .cohomology import (
    CohomologyTriple,
    ConsistencyError,
    chi,
    cohomology_profile,
    h0,
    h1,
    h1_vanishes,
    h2,
    oracle_h0,
    triple,
)
from .sheaves import (
    IdealSheafModel,
    Locus,
    PointConfig,
    h0_ideal,
    h1_ideal,
    h2_ideal,
    max_conditions,
    restriction_degree,
)
from .natural import (
    DirectSum,
    Line,
    Outcome,
    ScanEvidence,
    SheafModel,
    Verdict,
    direct_sum_natural_wrt_m,
    ideal_natural_wrt_m,
    line_natural_wrt_m,
    line_natural_wrt_r,
    line_unconditional_wrt_m,
    min_twist_with_sections,
    scan_verdict,
    unconditional_scan,
)
from .bundles import (
    ChernData,
    CohomologyInterval,
    ConstructionError,
    DestabilizerCandidate,
    ExtensionAudit,
    ExtensionAuditRow,
    ExtensionDatum,
    Polarization,
    RegionCell,
    RegionLabel,
    StabilityReport,
    allowed_min_section_divisors,
    audit_extension_natural,
    chern_of_extension,
    classify_region,
    cohomology_interval,
    construct_extension,
    construction_c2,
    c1_obstructed,
    extension_c2_twisted,
    section_count_bounds,
    stability_certificate,
)
from .audit import CLAIMS, Finding, run_audit

__version__ = "0.1.0"

__all__ = [
    "DivisorClass",
    "DomainError",
    "PositivityReport",
    "Surface",
    "twist",
    "CohomologyTriple",
    "ConsistencyError",
    "chi",
    "cohomology_profile",
    "h0",
    "h1",
    "h1_vanishes",
    "h2",
    "oracle_h0",
    "triple",
    "IdealSheafModel",
    "Locus",
    "PointConfig",
    "h0_ideal",
    "h1_ideal",
    "h2_ideal",
    "max_conditions",
    "restriction_degree",
    "DirectSum",
    "Line",
    "Outcome",
    "ScanEvidence",
    "SheafModel",
    "Verdict",
    "direct_sum_natural_wrt_m",
    "ideal_natural_wrt_m",
    "line_natural_wrt_m",
    "line_natural_wrt_r",
    "line_unconditional_wrt_m",
    "min_twist_with_sections",
    "scan_verdict",
    "unconditional_scan",
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
    "chern_of_extension",
    "classify_region",
    "cohomology_interval",
    "construct_extension",
    "construction_c2",
    "c1_obstructed",
    "extension_c2_twisted",
    "section_count_bounds",
    "stability_certificate",
    "CLAIMS",
    "Finding",
    "run_audit",
]
