"""Verification harness: evaluate inequality suites and persist reports.

A suite is a list of case specs, each expanding into a cartesian product of
theorems, exponents q, class parameters (alpha, m) and split points x. For
every combination the |f'|**q hypothesis is checked first on a grid; rejected
combinations are counted and skipped, never reported as violations. Admitted
combinations are evaluated by an oracle left-hand side against the closed-form
right-hand side.

Reports are written as a CSV with 17-significant-digit reals plus a sibling
JSON file echoing the configuration and the seed. Two runs of the same config
produce byte-identical files; nothing time-dependent is serialized.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .bounds import (
    classical_symmetric_rhs,
    evaluate_bound,
    midpoint_rhs,
    midpoint_rhs_convex,
    midpoint_rhs_midsplit,
    trapezoid_rhs,
    trapezoid_rhs_convex,
    trapezoid_rhs_midsplit,
)
from .convexity import GridSpec, Verdict, check_hypothesis
from .core import (
    BoundCase,
    BoundReport,
    ConvexityParams,
    DifferentiablePair,
    DomainSpec,
    HHBoundError,
    Interval,
    InvalidCaseError,
    RealFunction,
    TheoremId,
    parse_function,
)
from .quadrature import (
    lhs_endpoint_with_error,
    lhs_point_with_error,
    sup_norm,
)

__all__ = [
    "SUP_SAFETY_FACTOR",
    "CSV_HEADER",
    "CaseSpec",
    "SuiteConfig",
    "CaseReport",
    "SuiteResult",
    "CaseTemplate",
    "verify_case",
    "sweep_x",
    "reduction_check",
    "run_suite",
    "default_suite",
    "format_real",
]

# sampled sup estimates are inflated before entering any right-hand side so
# sampling error can never understate a bound; explicit g_sup values bypass it
SUP_SAFETY_FACTOR = 1.0 + 1e-6

_HOLDS_ABS = 1e-9
_HOLDS_REL = 1e-9

CSV_HEADER = "theorem_id,family_f,family_g,a,b,x,q,alpha,m,lhs,rhs,slack,tightness,holds"


def format_real(v: float) -> str:
    """Render a float with 17 significant digits (round-trip safe)."""
    return f"{v:.17g}"


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class CaseSpec:
    """One block of a suite: a function pair, a weight, and parameter grids.

    Exactly one of x_sweep (n equally spaced points), x_values (explicit) or
    x_random (n seeded uniform draws) selects the split points.
    """

    f: str
    g: str
    a: float
    b: float
    q_values: tuple[float, ...]
    alpha_values: tuple[float, ...]
    m_values: tuple[float, ...]
    theorems: tuple[str, ...]
    x_sweep: int | None = None
    x_values: tuple[float, ...] | None = None
    x_random: int | None = None
    b_star: float | None = None
    g_sup: float | None = None

    def __post_init__(self) -> None:
        chosen = sum(v is not None for v in (self.x_sweep, self.x_values, self.x_random))
        if chosen != 1:
            raise InvalidCaseError("exactly one of x_sweep, x_values, x_random is required")
        for tid in self.theorems:
            TheoremId(tid)  # raises ValueError on unknown ids

    def effective_b_star(self) -> float:
        if self.b_star is not None:
            return self.b_star
        return max(self.b, self.b / min(self.m_values))

    def to_dict(self) -> dict:
        x: dict = {}
        if self.x_sweep is not None:
            x = {"sweep": self.x_sweep}
        elif self.x_values is not None:
            x = {"values": list(self.x_values)}
        else:
            x = {"random": self.x_random}
        return {
            "f": self.f,
            "g": self.g,
            "a": self.a,
            "b": self.b,
            "x": x,
            "q": list(self.q_values),
            "alpha": list(self.alpha_values),
            "m": list(self.m_values),
            "theorems": list(self.theorems),
            "b_star": self.b_star,
            "g_sup": self.g_sup,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CaseSpec":
        x = d.get("x", {})
        return cls(
            f=d["f"],
            g=d["g"],
            a=float(d["a"]),
            b=float(d["b"]),
            q_values=tuple(float(v) for v in d["q"]),
            alpha_values=tuple(float(v) for v in d["alpha"]),
            m_values=tuple(float(v) for v in d["m"]),
            theorems=tuple(d["theorems"]),
            x_sweep=x.get("sweep"),
            x_values=tuple(float(v) for v in x["values"]) if "values" in x else None,
            x_random=x.get("random"),
            b_star=None if d.get("b_star") is None else float(d["b_star"]),
            g_sup=None if d.get("g_sup") is None else float(d["g_sup"]),
        )


@dataclass(frozen=True)
class SuiteConfig:
    """Suite-level settings; mirrors the JSON config format field for field."""

    cases: tuple[CaseSpec, ...]
    seed: int = 20260815
    output_dir: str = "reports"
    jobs: int = 1
    grid: GridSpec = field(default_factory=GridSpec)

    def __post_init__(self) -> None:
        if not self.cases:
            raise InvalidCaseError("suite config needs at least one case")
        if self.jobs < 1:
            raise InvalidCaseError(f"jobs must be >= 1, got {self.jobs}")

    def to_dict(self) -> dict:
        return {
            "cases": [c.to_dict() for c in self.cases],
            "seed": self.seed,
            "output_dir": self.output_dir,
            "jobs": self.jobs,
            "grid": {"nx": self.grid.nx, "ny": self.grid.ny, "nt": self.grid.nt},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        grid = d.get("grid", {})
        return cls(
            cases=tuple(CaseSpec.from_dict(c) for c in d["cases"]),
            seed=int(d.get("seed", 20260815)),
            output_dir=str(d.get("output_dir", "reports")),
            jobs=int(d.get("jobs", 1)),
            grid=GridSpec(int(grid.get("nx", 51)), int(grid.get("ny", 51)),
                          int(grid.get("nt", 51))),
        )

    @classmethod
    def from_json(cls, path: str | Path) -> "SuiteConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class CaseReport:
    """One CSV row: the case coordinates plus the bound-check outcome."""

    theorem_id: str
    family_f: str
    family_g: str
    a: float
    b: float
    x: float
    q: float
    alpha: float
    m: float
    lhs: float
    rhs: float
    slack: float
    tightness: float
    holds: bool

    def to_csv_row(self) -> str:
        reals = (self.a, self.b, self.x, self.q, self.alpha, self.m,
                 self.lhs, self.rhs, self.slack, self.tightness)
        return ",".join([self.theorem_id, self.family_f, self.family_g]
                        + [format_real(v) for v in reals]
                        + ["true" if self.holds else "false"])

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "family_f": self.family_f,
            "family_g": self.family_g,
            "a": self.a,
            "b": self.b,
            "x": self.x,
            "q": self.q,
            "alpha": self.alpha,
            "m": self.m,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tightness": self.tightness,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class SuiteResult:
    """Aggregated outcome of a suite run.

    wall_time lives only on this in-memory object; it is deliberately not
    serialized so that report files are byte-identical across runs.
    """

    reports: tuple[CaseReport, ...]
    violations: int
    hypothesis_rejections: int
    max_tightness: float
    wall_time: float
    csv_path: Path | None = None
    json_path: Path | None = None


# ---------------------------------------------------------------------------
# single-case verification


def verify_case(case: BoundCase, theorem_id: TheoremId | str) -> BoundReport:
    """Evaluate one inequality instance and compare the two sides.

    The left-hand side comes from oracle quadrature (endpoint rule for
    T13/T21/C11/C21, point rule for T14/T22/C12/C22), the right-hand side
    from the closed forms. ``holds`` allows the oracle's own error estimate
    plus max(1e-9, 1e-9 * |rhs|).

    The |f'|**q hypothesis is a precondition here; the suite runner gates on
    check_hypothesis before calling this.
    """
    tid = TheoremId(theorem_id)
    if tid.uses_endpoint_rule:
        lhs, lhs_err = lhs_endpoint_with_error(case)
    else:
        lhs, lhs_err = lhs_point_with_error(case)
    lhs = float(lhs)
    rhs = float(evaluate_bound(case, tid))
    slack = rhs - lhs
    if rhs != 0.0:
        tightness = lhs / rhs
    else:
        tightness = 0.0 if lhs == 0.0 else math.inf
    holds = bool(lhs <= rhs + max(_HOLDS_ABS, _HOLDS_REL * abs(rhs)) + lhs_err)
    return BoundReport(tid, lhs, rhs, slack, tightness, holds)


@dataclass(frozen=True)
class CaseTemplate:
    """A bound case with the split point left open; ``at(x)`` closes it."""

    pair: DifferentiablePair
    g: RealFunction
    interval: Interval
    q: float
    params: ConvexityParams
    g_sup: float

    def at(self, x: float) -> BoundCase:
        return BoundCase(self.pair, self.g, self.interval, x, self.q,
                         self.params, self.g_sup)


def sweep_x(template: CaseTemplate, n_points: int,
            theorem_id: TheoremId | str) -> list[BoundReport]:
    """Verify the inequality across an equally spaced x-sweep.

    A point whose evaluation raises a library error is skipped; the sweep
    continues and reports stay in x order.
    """
    if n_points < 2:
        raise InvalidCaseError(f"sweep needs at least 2 points, got {n_points}")
    iv = template.interval
    out: list[BoundReport] = []
    for k in range(n_points):
        x = iv.a + k * iv.width / (n_points - 1)
        try:
            out.append(verify_case(template.at(x), theorem_id))
        except HHBoundError:
            continue
    return out


# ---------------------------------------------------------------------------
# reduction identities


def reduction_check(iv: Interval, n_cases: int, seed: int = 20260815) -> float:
    """Max deviation between the general-class bounds at (1, 1) and their
    plain-convex counterparts over seeded random admissible cases.

    Each draw compares four pairs: the two general-x forms against their
    cubic-coefficient versions, and the two midpoint-split forms against the
    shared classical bound. Exact algebra says every deviation is zero.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_cases):
        x = float(rng.uniform(iv.a, iv.b))
        q = float(rng.uniform(1.0, 3.0))
        fp_a = float(rng.uniform(0.0, 3.0))
        fp_b = float(rng.uniform(0.0, 3.0))
        g_sup = float(rng.uniform(0.5, 2.0))
        pairs = (
            (trapezoid_rhs(iv, x, q, 1.0, 1.0, fp_a, fp_b, g_sup),
             trapezoid_rhs_convex(iv, x, q, fp_a, fp_b, g_sup)),
            (midpoint_rhs(iv, x, q, 1.0, 1.0, fp_a, fp_b, g_sup),
             midpoint_rhs_convex(iv, x, q, fp_a, fp_b, g_sup)),
            (trapezoid_rhs_midsplit(iv, q, 1.0, 1.0, fp_a, fp_b, g_sup),
             classical_symmetric_rhs(iv, q, fp_a, fp_b, g_sup)),
            (midpoint_rhs_midsplit(iv, q, 1.0, 1.0, fp_a, fp_b, g_sup),
             classical_symmetric_rhs(iv, q, fp_a, fp_b, g_sup)),
        )
        for general, special in pairs:
            worst = max(worst, abs(general - special))
    return worst


# ---------------------------------------------------------------------------
# suite runner

_GATE_PLAIN = ConvexityParams(1.0, 1.0)


@lru_cache(maxsize=None)
def _gate_verdict(pair: DifferentiablePair, q: float, params: ConvexityParams,
                  iv: Interval, grid: GridSpec) -> Verdict:
    return check_hypothesis(pair, q, params, iv, grid)


@lru_cache(maxsize=None)
def _pair_checked(pair: DifferentiablePair, iv: Interval) -> float:
    return pair.validate_finite_difference(iv)


def _resolve_xs(spec: CaseSpec, rng: np.random.Generator) -> tuple[float, ...]:
    if spec.x_sweep is not None:
        if spec.x_sweep < 2:
            raise InvalidCaseError("x sweep needs at least 2 points")
        return tuple(np.linspace(spec.a, spec.b, spec.x_sweep))
    if spec.x_values is not None:
        return spec.x_values
    return tuple(sorted(float(v) for v in rng.uniform(spec.a, spec.b, spec.x_random)))


def _evaluate_spec(spec: CaseSpec, xs: tuple[float, ...],
                   grid: GridSpec) -> tuple[list[CaseReport], int]:
    f = parse_function(spec.f)
    g = parse_function(spec.g)
    iv = Interval(spec.a, spec.b)
    pair = DifferentiablePair.from_family(f, DomainSpec(spec.effective_b_star()))
    _pair_checked(pair, iv)
    if spec.g_sup is not None:
        g_sup = spec.g_sup
    else:
        g_sup = sup_norm(g, iv) * SUP_SAFETY_FACTOR
    rows: list[CaseReport] = []
    rejections = 0
    for tid_str in spec.theorems:
        tid = TheoremId(tid_str)
        for q in spec.q_values:
            for alpha in spec.alpha_values:
                for m in spec.m_values:
                    params = ConvexityParams(alpha, m)
                    gate = params if tid.uses_class_params else _GATE_PLAIN
                    if not _gate_verdict(pair, q, gate, iv, grid).holds:
                        rejections += 1
                        continue
                    for x in xs:
                        case = BoundCase(pair, g, iv, x, q, params, g_sup)
                        rep = verify_case(case, tid)
                        rows.append(CaseReport(
                            tid.value, spec.f, spec.g, iv.a, iv.b, x, q,
                            alpha, m, rep.lhs, rep.rhs, rep.slack,
                            rep.tightness, rep.holds))
    return rows, rejections


def run_suite(config: SuiteConfig) -> SuiteResult:
    """Run every case of the config and persist CSV and JSON reports.

    Case specs are independent and evaluated concurrently up to config.jobs;
    report order is always the config order. Random split points are drawn
    up front from the config seed, so results do not depend on scheduling.
    """
    start = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    resolved = [_resolve_xs(spec, rng) for spec in config.cases]

    if config.jobs == 1:
        outcomes = [_evaluate_spec(spec, xs, config.grid)
                    for spec, xs in zip(config.cases, resolved)]
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            futures = [pool.submit(_evaluate_spec, spec, xs, config.grid)
                       for spec, xs in zip(config.cases, resolved)]
            outcomes = [f.result() for f in futures]

    reports: list[CaseReport] = []
    rejections = 0
    for rows, rej in outcomes:
        reports.extend(rows)
        rejections += rej

    violations = sum(1 for r in reports if not r.holds)
    finite = [r.tightness for r in reports if math.isfinite(r.tightness)]
    max_tightness = max(finite) if finite else 0.0

    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "report.csv"
    json_path = out_dir / "report.json"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in reports:
            fh.write(r.to_csv_row() + "\n")
    # where the report went and how many workers produced it are not part
    # of the result; dropping them keeps report bytes run-independent
    config_echo = config.to_dict()
    del config_echo["output_dir"]
    del config_echo["jobs"]
    payload = {
        "config": config_echo,
        "seed": config.seed,
        "violations": violations,
        "hypothesis_rejections": rejections,
        "max_tightness": max_tightness,
        "reports": [r.to_dict() for r in reports],
    }
    with open(json_path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")

    return SuiteResult(tuple(reports), violations, rejections, max_tightness,
                       time.perf_counter() - start, csv_path, json_path)


# ---------------------------------------------------------------------------
# bundled suite


def default_suite(output_dir: str = "reports", jobs: int = 1) -> SuiteConfig:
    """The bundled verification suite.

    Sweeps the two general-class forms over f in {t^2, t^3, e^t}, weights
    {1, s, s(1-s), sin s}, q in {1, 1.5, 2, 3} and a 4x4 (alpha, m) grid with
    21 split points on [0, 1]; adds the plain-convex sweeps and the
    midpoint-split forms for the symmetric weights. b_star = 4 keeps b/m
    evaluable down to m = 0.25.
    """
    fs = ("monomial:2", "monomial:3", "exp")
    gs = ("const:1", "monomial:1", "poly:0:1:-1", "sin")
    symmetric_gs = ("const:1", "poly:0:1:-1")
    qs = (1.0, 1.5, 2.0, 3.0)
    levels = (0.25, 0.5, 0.75, 1.0)
    cases: list[CaseSpec] = []
    for f in fs:
        for g in gs:
            cases.append(CaseSpec(
                f=f, g=g, a=0.0, b=1.0, q_values=qs, alpha_values=levels,
                m_values=levels, theorems=("T21", "T22"), x_sweep=21,
                b_star=4.0))
            cases.append(CaseSpec(
                f=f, g=g, a=0.0, b=1.0, q_values=qs, alpha_values=(1.0,),
                m_values=(1.0,), theorems=("T13", "T14"), x_sweep=21,
                b_star=4.0))
    for f in fs:
        for g in symmetric_gs:
            cases.append(CaseSpec(
                f=f, g=g, a=0.0, b=1.0, q_values=qs, alpha_values=levels,
                m_values=levels, theorems=("C21", "C22"), x_values=(0.5,),
                b_star=4.0))
            cases.append(CaseSpec(
                f=f, g=g, a=0.0, b=1.0, q_values=qs, alpha_values=(1.0,),
                m_values=(1.0,), theorems=("C11", "C12"), x_values=(0.5,),
                b_star=4.0))
    return SuiteConfig(cases=tuple(cases), output_dir=output_dir, jobs=jobs)
