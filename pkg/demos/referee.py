"""Run the built-in claim auditor and print its findings.

Ten standing claims about twisted cohomology, splitting, construction
windows, stability, and the nonexistence region are re-derived from
scratch on every surface in range and compared against the package's
closed forms.  "agrees" is silent confirmation; "discrepancy" marks a
boundary case where the sharper computation disagrees with the naive
expectation; "indeterminate" means the interval arithmetic cannot decide.

Run with: python3 demos/referee.py
"""

from collections import Counter

from hirzebruch import CLAIMS, run_audit

findings = run_audit(e_values=(1, 2, 3, 4))

tally = Counter(f.status for f in findings)
print(f"checked {len(findings)} claim instances over e = 1..4")
print(f"  agrees: {tally['agrees']}, discrepancy: {tally['discrepancy']}, "
      f"indeterminate: {tally['indeterminate']}\n")

print("claims in audit order:")
for slug in CLAIMS:
    statuses = {f.e: f.status for f in findings if f.claim == slug}
    marks = "  ".join(f"e={e}:{statuses[e][:5]}" for e in sorted(statuses))
    print(f"  {slug:24s} {marks}")
print()

print("details for every non-agreement:")
for f in findings:
    if f.status != "agrees":
        print(f"  [{f.status}] {f.claim} (e = {f.e})")
        print(f"      subject: {f.subject}")
        print(f"      detail:  {f.detail}")
