"""Per-point bound reports, parameter scans and their CSV/JSON encodings."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import bounds, generaldyne
from .errors import SingularMatrixError
from .params import ModelParams

AXES = ("lambda1", "lambda2", "alpha", "theta", "phi", "z")


@dataclass(frozen=True)
class BoundReport:
    """Every scalar the package computes at one parameter point.

    Undefined quantities (singular QFI, or no general-dyne setting given)
    are ``None``.
    """

    lambda1: float
    lambda2: float
    alpha: float
    theta: float
    phi: float
    z: float | None
    q11: float
    q12: float
    q22: float
    u12: float
    sloppiness: float | None
    incompatibility: float | None
    quantumness: float | None
    t_identity: float
    cq: float | None
    bracket_t: float | None
    bracket_r: float | None
    cq_weighted: float | None
    c_sep_min_1: float | None
    c_sep_min_2: float | None
    gamma_star_1: float | None
    gamma_star_2: float | None
    c_g: float | None
    singular: bool

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "BoundReport":
        return cls(**{f.name: data[f.name] for f in fields(cls)})


FIELDS = tuple(f.name for f in fields(BoundReport))


def build_report(p: ModelParams, weight=None, z: float | None = None,
                 sing_tol: float = 1e-12) -> BoundReport:
    q = bounds.qfim_closed(p)
    u = bounds.uhlmann_closed(p)
    sb = bounds.scalar_bounds(q, u, sing_tol)
    step = None
    weighted = None
    if not sb.singular:
        step = bounds.stepwise_optimal(q, sb.sloppiness)
        weighted = bounds.weighted_cq(q, weight)
    cg = None
    if z is not None:
        try:
            cg = generaldyne.c_g(generaldyne.cfi_matrix(p, z), sing_tol)
        except SingularMatrixError:
            cg = None
    return BoundReport(
        lambda1=p.lambda1, lambda2=p.lambda2, alpha=p.alpha,
        theta=p.theta, phi=p.phi, z=None if z is None else float(z),
        q11=float(q[0, 0]), q12=float(q[0, 1]), q22=float(q[1, 1]),
        u12=float(u[0, 1]),
        sloppiness=sb.sloppiness, incompatibility=sb.incompatibility,
        quantumness=sb.quantumness, t_identity=sb.t_identity, cq=sb.cq,
        bracket_t=sb.bracket_t, bracket_r=sb.bracket_r, cq_weighted=weighted,
        c_sep_min_1=step and step.c_sep_min_1,
        c_sep_min_2=step and step.c_sep_min_2,
        gamma_star_1=step and step.gamma_star_1,
        gamma_star_2=step and step.gamma_star_2,
        c_g=cg, singular=sb.singular,
    )


@dataclass(frozen=True)
class ScanSpec:
    axis: str
    start: float
    stop: float
    count: int
    fixed: ModelParams
    z: float | None = None

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"count must be an integer >= 2, got {self.count}")
        if not self.start < self.stop:
            raise ValueError(f"need start < stop, got {self.start} >= {self.stop}")

    def points(self):
        for value in np.linspace(self.start, self.stop, int(self.count)):
            value = float(value)
            if self.axis == "z":
                yield self.fixed, value
            else:
                yield self.fixed.replace(**{self.axis: value}), self.z


def _report_task(task):
    p, z, weight, sing_tol = task
    return build_report(p, weight, z, sing_tol)


def scan(spec: ScanSpec, weight=None, sing_tol: float = 1e-12, jobs: int = 1):
    """Reports along one axis, in grid order regardless of ``jobs``."""
    tasks = [(p, z, weight, sing_tol) for p, z in spec.points()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_report_task, tasks))
    return [_report_task(t) for t in tasks]


def format_value(value, digits: int | None = None) -> str:
    """CSV cell text: shortest round-trip float repr, empty for ``None``."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if digits is None:
        return repr(float(value))
    return f"{float(value):.{digits}g}"


def _round(value, digits):
    if digits is None or value is None or isinstance(value, bool):
        return value
    return float(f"{value:.{digits}g}")


def write_csv(reports, stream, digits: int | None = None) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(FIELDS)
    for r in reports:
        writer.writerow([format_value(getattr(r, name), digits) for name in FIELDS])


def to_csv(reports, digits: int | None = None) -> str:
    buf = io.StringIO()
    write_csv(reports, buf, digits)
    return buf.getvalue()


def _parse_cell(name, text):
    if name == "singular":
        return text == "true"
    if text == "":
        return None
    return float(text)


def read_csv(text: str):
    rows = csv.DictReader(io.StringIO(text))
    return [
        BoundReport.from_dict({k: _parse_cell(k, v) for k, v in row.items()})
        for row in rows
    ]


def to_json(reports, digits: int | None = None) -> str:
    """JSON array of report objects (a bare object for a single report)."""
    def encode(r):
        return {k: _round(v, digits) for k, v in r.to_dict().items()}

    if isinstance(reports, BoundReport):
        return json.dumps(encode(reports))
    return json.dumps([encode(r) for r in reports])


def read_json(text: str):
    data = json.loads(text)
    if isinstance(data, dict):
        return BoundReport.from_dict(data)
    return [BoundReport.from_dict(d) for d in data]

