"""Verification and spectrum reports plus their JSON/text serialization.

The JSON layout is stable so runs can be diffed: a report is
{"suite": ..., "params": {...}, "checks": [...], "pass": bool} and each check
is {"id", "residual", "scalar", "pass", "millis"}. Complex numbers serialize
as two-element [re, im] lists. Timings default to 0 so identical args + seed
produce byte-identical output; pass collect_timings=True to record wall time.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    id: str
    residual: float
    passed: bool
    scalar: complex | None = None
    millis: int = 0


@dataclass
class VerificationReport:
    suite: str
    params: dict
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def find(self, check_id: str) -> CheckResult:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)


_collect_timings_default = False


def set_timings_default(on: bool) -> None:
    """Opt subsequently built reports into wall-time capture (CLI hook)."""
    global _collect_timings_default
    _collect_timings_default = bool(on)


class ReportBuilder:
    """Collects checks in a fixed order; ids are 'module.check.instance'."""

    def __init__(
        self, suite: str, params: dict, collect_timings: bool | None = None
    ):
        self.suite = suite
        self.params = dict(params)
        self.checks: list[CheckResult] = []
        if collect_timings is None:
            collect_timings = _collect_timings_default
        self.collect_timings = collect_timings
        self._t0 = time.perf_counter()

    def _lap_ms(self) -> int:
        if not self.collect_timings:
            return 0
        now = time.perf_counter()
        ms = int(round(1000 * (now - self._t0)))
        self._t0 = now
        return ms

    def add(
        self,
        check_id: str,
        residual: float,
        tol: float,
        scalar: complex | None = None,
    ) -> CheckResult:
        c = CheckResult(
            id=check_id,
            residual=float(residual),
            passed=bool(residual <= tol),
            scalar=scalar,
            millis=self._lap_ms(),
        )
        self.checks.append(c)
        return c

    def add_flag(self, check_id: str, ok: bool, residual: float = 0.0) -> CheckResult:
        """For pass/fail facts that are not residual comparisons."""
        c = CheckResult(
            id=check_id,
            residual=float(residual),
            passed=bool(ok),
            scalar=None,
            millis=self._lap_ms(),
        )
        self.checks.append(c)
        return c

    def report(self) -> VerificationReport:
        return VerificationReport(self.suite, self.params, self.checks)


@dataclass
class SpectrumReport:
    n: int
    sites: int
    eigenvalues: list[complex]
    clusters: list[dict]  # {"value": complex centroid, "multiplicity": int}
    hermitian_defect: float
    cluster_tol: float

    @property
    def total_multiplicity(self) -> int:
        return sum(c["multiplicity"] for c in self.clusters)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _num(z):
    """Complex (or real) number -> JSON-safe value."""
    if z is None:
        return None
    z = complex(z)
    if z.imag == 0.0:
        return z.real
    return [z.real, z.imag]


def _num_back(v):
    if v is None:
        return None
    if isinstance(v, list):
        return complex(v[0], v[1])
    return complex(v)


def _param_value(v):
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, (float, complex)):
        return _num(v)
    return v


def report_to_dict(r: VerificationReport) -> dict:
    return {
        "suite": r.suite,
        "params": {k: _param_value(v) for k, v in r.params.items()},
        "checks": [
            {
                "id": c.id,
                "residual": c.residual,
                "scalar": _num(c.scalar),
                "pass": c.passed,
                "millis": c.millis,
            }
            for c in r.checks
        ],
        "pass": r.passed,
    }


def _param_back(v):
    if isinstance(v, list) and len(v) == 2:
        return complex(v[0], v[1])
    return v


def report_from_dict(d: dict) -> VerificationReport:
    checks = [
        CheckResult(
            id=c["id"],
            residual=float(c["residual"]),
            passed=bool(c["pass"]),
            scalar=_num_back(c["scalar"]),
            millis=int(c["millis"]),
        )
        for c in d["checks"]
    ]
    params = {k: _param_back(v) for k, v in d["params"].items()}
    return VerificationReport(d["suite"], params, checks)


def spectrum_to_dict(r: SpectrumReport) -> dict:
    return {
        "n": r.n,
        "sites": r.sites,
        "eigenvalues": [_num(z) for z in r.eigenvalues],
        "clusters": [
            {"value": _num(c["value"]), "multiplicity": c["multiplicity"]}
            for c in r.clusters
        ],
        "hermitian_defect": r.hermitian_defect,
        "cluster_tol": r.cluster_tol,
    }


def emit_report(report, fmt: str = "json") -> str:
    """Serialize a VerificationReport or SpectrumReport."""
    if isinstance(report, VerificationReport):
        d = report_to_dict(report)
    elif isinstance(report, SpectrumReport):
        d = spectrum_to_dict(report)
    else:
        raise TypeError(f"cannot serialize {type(report).__name__}")
    if fmt == "json":
        return json.dumps(d, indent=2, sort_keys=False) + "\n"
    if fmt == "text":
        return _emit_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text: str) -> VerificationReport:
    return report_from_dict(json.loads(text))


def _emit_text(report) -> str:
    lines = []
    if isinstance(report, VerificationReport):
        lines.append(f"suite: {report.suite}")
        for k, v in report.params.items():
            lines.append(f"  {k} = {v}")
        lines.append(f"{'check':<44} {'residual':>12} {'scalar':>24} {'ok':>4}")
        for c in report.checks:
            sc = "" if c.scalar is None else f"{c.scalar:.6g}"
            lines.append(
                f"{c.id:<44} {c.residual:>12.3e} {sc:>24} "
                f"{'ok' if c.passed else 'FAIL':>4}"
            )
        lines.append(f"overall: {'PASS' if report.passed else 'FAIL'} "
                     f"({len(report.checks)} checks, "
                     f"max residual {report.max_residual():.3e})")
    else:
        lines.append(f"spectrum: n={report.n} sites={report.sites}")
        lines.append(f"hermitian defect: {report.hermitian_defect:.3e}")
        lines.append(f"clusters (tol {report.cluster_tol:.1e}):")
        for c in report.clusters:
            lines.append(f"  {c['value']!s:<40} x{c['multiplicity']}")
    return "\n".join(lines) + "\n"
