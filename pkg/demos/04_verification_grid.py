"""Driving the verification harness from Python.

The same machinery behind the dickson-verify command line: build a grid
configuration, run it, inspect the structured report.  The default grid
(every identity family over six (p, n) pairs) finishes in a few seconds.
"""
import json

from dickson import CaseSpec, GridConfig, emit_report, run_case, run_grid
from dickson.verify import report_to_dict

print("== one case at a time ==")
for spec in (
    CaseSpec(theorem="main", p=3, n=2, s=1, i=4),
    CaseSpec(theorem="kernel", p=2, n=3, s=2, i=5),
    CaseSpec(theorem="cor-n3", p=3, n=2, s=1),  # the report-only composite
    CaseSpec(theorem="q0-power", p=2, n=2, perturb=True),  # self-test hook
):
    r = run_case(spec)
    status = "skip" if r.skipped else ("FAIL" if not r.passed else
                                       "flag" if r.flagged else "pass")
    extra = f"  witness {r.witness}" if r.witness else ""
    print(f"{spec.theorem:<10} p={spec.p} n={spec.n}: {status}{extra}")

print()
print("== a small grid, text report ==")
config = GridConfig(theorems=("smith-switzer", "q0-power"), pairs=((3, 2), (2, 2)))
report = run_grid(config)
print(emit_report(report, "text"))

print("== the same report as machine-readable JSON ==")
data = report_to_dict(report)
print(json.dumps(data["summary"], sort_keys=True))
print("cases carry (theorem, p, n, s, i, d, passed, skipped, flagged, timing)")
print()
print("command line equivalents:")
print("  dickson-verify                              # full default grid")
print("  dickson-verify --theorem main --p 5 --n 2   # one family, one pair")
print("  dickson-verify --format json --out r.json   # structured output")
print("  dickson-verify --inject-failure; echo $?    # exit code self-test -> 1")
