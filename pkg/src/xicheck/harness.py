"""Identity registry, check runner, parameter sweeps and report I/O."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from . import oracle
from .errors import ContractError, DomainError
from .numeric import DEFAULT_CONTEXT, PrecisionContext, QuadratureResult, as_complex
from .series import ModularPair, lhs_ramanujan, lhs_theorem31, lhs_theorem41, sum_polygamma
from .specfun import hurwitz_zeta, riemann_zeta
from .transforms import (
    ContourSpec,
    int1_int2_check,
    lhs_eq19,
    lhs_eq20,
    mellin_beta_series,
    mellin_line_result,
    modular_pair_integral,
    ramanujan_integral,
    rhs_eq19,
    rhs_eq20,
    sine_kernel_check,
    spurious_term,
    xi_kernel_integral,
)

FOUR_PI_SQ = 4 * math.pi ** 2
SPURIOUS_MARGIN = 100


class IdentityId(str, Enum):
    thm31 = "thm31"
    thm41 = "thm41"
    cor32 = "cor32"
    guinand = "guinand"
    ramanujan = "ramanujan"
    eq19 = "eq19"
    eq20 = "eq20"
    eq15mod = "eq15mod"
    sine = "sine"
    int12 = "int12"
    mellin_titchmarsh = "mellin_titchmarsh"
    beta_series = "beta_series"
    spurious = "spurious"


Side = Tuple[str, complex]


@dataclass
class CheckReport:
    identity: str
    params: Dict[str, object]
    sides: List[Side]
    max_abs_err: float
    max_rel_err: float
    passed: bool
    wall_time_ms: float
    truncations: List[float]
    error: Optional[str] = None
    notes: Dict[str, float] = field(default_factory=dict)


@dataclass
class Evaluation:
    """Raw output of an identity check before scoring.

    ``groups`` lists the labels that must agree with each other; sides not
    in any group are reported but not scored.
    """

    sides: List[Side]
    groups: List[Tuple[str, ...]]
    truncations: List[float] = field(default_factory=list)
    notes: Dict[str, float] = field(default_factory=dict)
    extra_ok: bool = True


@dataclass(frozen=True)
class Identity:
    id: IdentityId
    summary: str
    defaults: Mapping[str, object]
    evaluate: Callable[[dict, PrecisionContext], Evaluation]
    oracle: Optional[Callable[[dict, int], List[Tuple[int, str, complex]]]] = None


def _two(label_a, a: QuadratureResult, label_b, b: QuadratureResult) -> Evaluation:
    return Evaluation(
        [(label_a, complex(a.value)), (label_b, complex(b.value))],
        [(label_a, label_b)],
        [a.truncation_point, b.truncation_point],
    )


# ------------------------------------------------------------- evaluators


def _thm31(p, ctx):
    z, a = as_complex(p["z"]), p["alpha"]
    if not z.real > 2:
        raise DomainError("thm31 needs Re z > 2")
    series = lhs_theorem31(z, ModularPair.from_alpha(a), "alpha", ctx)
    line = mellin_line_result(z, a, None, ctx)
    kern = xi_kernel_integral(z, a, ctx)
    return Evaluation(
        [("series", series), ("mellin", complex(line.value)), ("xi_integral", complex(kern.value))],
        [("series", "mellin", "xi_integral")],
        [line.truncation_point, kern.truncation_point],
    )


def _thm41(p, ctx):
    z, a = as_complex(p["z"]), p["alpha"]
    if not 0 < z.real < 2:
        raise DomainError("thm41 needs 0 < Re z < 2")
    pair = ModularPair.from_alpha(a)
    kern = xi_kernel_integral(z, a, ctx)
    return Evaluation(
        [
            ("series_alpha", lhs_theorem41(z, pair, "alpha", ctx)),
            ("series_beta", lhs_theorem41(z, pair, "beta", ctx)),
            ("xi_integral", complex(kern.value)),
        ],
        [("series_alpha", "series_beta", "xi_integral")],
        [kern.truncation_point],
    )


def _cor32(p, ctx):
    z = as_complex(p["z"])
    if not z.real > 2:
        raise DomainError("cor32 needs Re z > 2")
    kern = xi_kernel_integral(z, 1.0, ctx)
    return Evaluation(
        [
            ("series", lhs_theorem31(z, ModularPair.from_alpha(1.0), "alpha", ctx)),
            ("closed_form", riemann_zeta(z - 1, ctx) - riemann_zeta(z, ctx)),
            ("xi_integral", complex(kern.value)),
        ],
        [("series", "closed_form", "xi_integral")],
        [kern.truncation_point],
    )


def _guinand(p, ctx):
    k, x = p["k"], p["x"]
    if int(k) != k or k < 2:
        raise DomainError("guinand needs an integer k >= 2")
    k = int(k)
    lhs = sum_polygamma(k, x, ctx).value
    rhs = x ** (-k - 1) * sum_polygamma(k, 1 / x, ctx).value
    return Evaluation([("lhs", lhs), ("rhs", rhs)], [("lhs", "rhs")])


def _ramanujan(p, ctx):
    a = p["alpha"]
    pair = ModularPair.from_alpha(a)
    integral = ramanujan_integral(a, ctx)
    return Evaluation(
        [
            ("series_alpha", complex(lhs_ramanujan(pair, "alpha", ctx))),
            ("series_beta", complex(lhs_ramanujan(pair, "beta", ctx))),
            ("integral", complex(integral.value)),
        ],
        [("series_alpha", "series_beta", "integral")],
        [integral.truncation_point],
    )


def _eq19(p, ctx):
    return _two("lhs", lhs_eq19(p["s"], p["n"], ctx), "rhs", rhs_eq19(p["s"], p["n"], ctx))


def _eq20(p, ctx):
    return _two("lhs", lhs_eq20(p["s"], p["n"], ctx), "rhs", rhs_eq20(p["s"], p["n"], ctx))


def _eq15mod(p, ctx):
    s, a = p["s"], p["alpha"]
    return Evaluation(
        [("alpha_form", modular_pair_integral(s, a, ctx)), ("beta_form", modular_pair_integral(s, FOUR_PI_SQ / a, ctx))],
        [("alpha_form", "beta_form")],
    )


def _sine(p, ctx):
    quad, closed = sine_kernel_check(p["alpha"], p["x"], ctx)
    return Evaluation([("quadrature", complex(quad)), ("closed_form", complex(closed))], [("quadrature", "closed_form")])


def _int12(p, ctx):
    (c1, q1), (c2, q2) = int1_int2_check(p["s"], ctx)
    return Evaluation(
        [("int1_closed", complex(c1)), ("int1_quad", complex(q1)), ("int2_closed", complex(c2)), ("int2_quad", complex(q2))],
        [("int1_closed", "int1_quad"), ("int2_closed", "int2_quad")],
    )


def _spec_for(z: complex, c) -> ContourSpec:
    base = ContourSpec.default_for(z)
    return base if c is None else ContourSpec(float(c), base.half_height)


def _titchmarsh(p, ctx):
    z = as_complex(p["z"])
    line = mellin_line_result(z, 1.0, _spec_for(z, p.get("c")), ctx)
    closed = riemann_zeta(z - 1, ctx) - riemann_zeta(z, ctx)
    return Evaluation(
        [("mellin", complex(line.value)), ("closed_form", closed)],
        [("mellin", "closed_form")],
        [line.truncation_point],
    )


def _beta_series(p, ctx):
    x, z = p["x"], as_complex(p["z"])
    line = mellin_beta_series(x, z, _spec_for(z, p.get("c")), ctx)
    direct = x ** (-z) * hurwitz_zeta(z, 1 + 1 / x, ctx)
    return Evaluation([("mellin", complex(line)), ("direct_sum", direct)], [("mellin", "direct_sum")])


def _spurious(p, ctx):
    s, n = p["s"], p["n"]
    lhs = lhs_eq19(s, n, ctx)
    rhs = rhs_eq19(s, n, ctx)
    with_term = complex(rhs.value) + spurious_term(s, n)
    gap = abs(complex(lhs.value) - with_term)
    return Evaluation(
        [("lhs", complex(lhs.value)), ("rhs", complex(rhs.value)), ("rhs_with_spurious", with_term)],
        [("lhs", "rhs")],
        [lhs.truncation_point, rhs.truncation_point],
        {"spurious_gap": gap},
        gap > SPURIOUS_MARGIN * ctx.identity_tol,
    )


# ----------------------------------------------------------------- oracles


def _one(label: str, fn):
    return lambda p, d: [(0, label, complex(fn(p, d)))]


def _int12_oracle(p, d):
    first, second = oracle.int12_closed(p["s"], d)
    return [(0, "int1_oracle", complex(first)), (1, "int2_oracle", complex(second))]


REGISTRY: Dict[IdentityId, Identity] = {
    i.id: i
    for i in (
        Identity(
            IdentityId.thm31,
            "a^{-z/2} sum_{k>=1} zeta(z, 1+k/a) = Mellin line integral = Xi-kernel integral, Re z > 2",
            {"z": 4.0, "alpha": 2.0},
            _thm31,
            _one("oracle", lambda p, d: oracle.theorem31(p["z"], p["alpha"], d)),
        ),
        Identity(
            IdentityId.thm41,
            "varphi-series at alpha = varphi-series at 1/alpha = Xi-kernel integral, 0 < Re z < 2",
            {"z": 1.5, "alpha": 2.0},
            _thm41,
            _one("oracle", lambda p, d: oracle.theorem41(p["z"], p["alpha"], d)),
        ),
        Identity(
            IdentityId.cor32,
            "sum_{k>=1} zeta(z, 1+k) = zeta(z-1) - zeta(z) = Xi-kernel integral at alpha = 1",
            {"z": 4.0},
            _cor32,
            _one("oracle", lambda p, d: oracle.zeta_difference(p["z"], d)),
        ),
        Identity(
            IdentityId.guinand,
            "Guinand: sum psi^(k)(1+nx) = x^{-k-1} sum psi^(k)(1+n/x), k >= 2",
            {"k": 2, "x": 2.0},
            _guinand,
            _one("oracle", lambda p, d: oracle.guinand(int(p["k"]), p["x"], d)),
        ),
        Identity(
            IdentityId.ramanujan,
            "Ramanujan: sqrt(a){(gamma - log 2 pi a)/(2a) + sum phi(na)} symmetric in a <-> 1/a, equal to the |Xi Gamma|^2 integral",
            {"alpha": 2.0},
            _ramanujan,
            _one("oracle", lambda p, d: oracle.ramanujan(p["alpha"], d)),
        ),
        Identity(
            IdentityId.eq19,
            "Xi-kernel cos(nt) integral = (1/8)(4 pi)^{-(s-3)/2} int x^s/((e^{xe^n}-1)(e^{xe^-n}-1)) dx, Re s > 1",
            {"s": 3.0, "n": 0.5},
            _eq19,
            _one("oracle", lambda p, d: oracle.eq19_rhs(p["s"], p["n"], d)),
        ),
        Identity(
            IdentityId.eq20,
            "same kernel with each 1/(e^u-1) replaced by 1/(e^u-1) - 1/u, -1 < Re s < 1",
            {"s": 0.5, "n": 0.3},
            _eq20,
            _one("oracle", lambda p, d: oracle.eq20_rhs(p["s"], p["n"], d)),
        ),
        Identity(
            IdentityId.eq15mod,
            "(a^{(s+1)/2}/2) int x^s/((e^{2 pi x}-1)(e^{ax}-1)) dx invariant under a <-> 4 pi^2/a",
            {"s": 2.5, "alpha": math.pi},
            _eq15mod,
            _one("oracle", lambda p, d: oracle.modular_pair(p["s"], p["alpha"], d)),
        ),
        Identity(
            IdentityId.sine,
            "int sin(a x y)/(e^{2 pi y}-1) dy = (1/(e^{ax}-1) - 1/(ax) + 1/2)/2",
            {"alpha": 2 * math.pi, "x": 1.0},
            _sine,
            _one("oracle", lambda p, d: oracle.sine_closed(p["alpha"], p["x"], d)),
        ),
        Identity(
            IdentityId.int12,
            "zeta(1-s)/(4cos(pi s/2)) and zeta(-s)/(8sin(pi s/2)) as Bose-type x-integrals",
            {"s": 2.5},
            _int12,
            _int12_oracle,
        ),
        Identity(
            IdentityId.mellin_titchmarsh,
            "normalized Mellin line integral of Gamma(s)zeta(s)Gamma(z-s)zeta(z-s) at alpha = 1 equals zeta(z-1) - zeta(z)",
            {"z": 4.0, "c": None},
            _titchmarsh,
            _one("oracle", lambda p, d: oracle.zeta_difference(p["z"], d)),
        ),
        Identity(
            IdentityId.beta_series,
            "line integral of B(s,z-s)zeta(s)x^{-s} = sum_{m>=1} (1+xm)^{-z}",
            {"x": 1.0, "z": 4.0, "c": None},
            _beta_series,
            _one("oracle", lambda p, d: oracle.beta_series(p["x"], p["z"], d)),
        ),
        Identity(
            IdentityId.spurious,
            "x-integral identity holds, a variant with an extra Gamma(s)zeta(s)cosh term fails",
            {"s": 3.0, "n": 0.5},
            _spurious,
            _one("oracle", lambda p, d: oracle.eq19_rhs(p["s"], p["n"], d)),
        ),
    )
}


# ------------------------------------------------------------------ runner


def _normalize(value):
    if isinstance(value, bool) or value is None or isinstance(value, int):
        return value
    w = complex(value)
    return w.real if w.imag == 0.0 else w


def _score(ev: Evaluation, ctx: PrecisionContext):
    lookup = dict(ev.sides)
    max_abs = 0.0
    for group in ev.groups:
        for a, b in itertools.combinations(group, 2):
            max_abs = max(max_abs, abs(lookup[a] - lookup[b]))
    scale = max(abs(v) for _, v in ev.sides)
    max_rel = max_abs / (1 + scale)
    return max_abs, max_rel, max_rel < ctx.identity_tol and ev.extra_ok


def run_check(identity, params: Optional[Mapping] = None, ctx: PrecisionContext = DEFAULT_CONTEXT) -> CheckReport:
    """Evaluate every side of one identity. Never raises: failures come back
    as a report with ``passed=False`` and ``error`` set."""
    start = time.perf_counter()
    name = identity.value if isinstance(identity, IdentityId) else str(identity)
    merged: Dict[str, object] = dict(params or {})
    try:
        entry = REGISTRY[IdentityId(name)]
        unknown = sorted(set(merged) - set(entry.defaults))
        if unknown:
            raise ContractError(f"unknown parameter(s) for {name}: {', '.join(unknown)}")
        merged = {k: _normalize(merged.get(k, v)) for k, v in entry.defaults.items()}
        call_params = {k: v for k, v in merged.items() if v is not None}
        ev = entry.evaluate(call_params, ctx)
        if ctx.digits > 0 and entry.oracle is not None:
            for gi, label, value in entry.oracle(call_params, ctx.digits):
                ev.sides.append((label, value))
                ev.groups[gi] = ev.groups[gi] + (label,)
        ev.sides = [(label, complex(v)) for label, v in ev.sides]
        max_abs, max_rel, ok = _score(ev, ctx)
        return CheckReport(
            name, merged, ev.sides, max_abs, max_rel, ok,
            1000 * (time.perf_counter() - start), list(ev.truncations), None, dict(ev.notes),
        )
    except Exception as exc:  # noqa: BLE001 - a report must always come back
        return CheckReport(
            name, merged, [], math.nan, math.nan, False,
            1000 * (time.perf_counter() - start), [], f"{type(exc).__name__}: {exc}",
        )


def _run_point(args):
    identity, params, ctx = args
    return run_check(identity, params, ctx)


def grid_points(grid: Mapping[str, Sequence]) -> List[Dict[str, object]]:
    """Cartesian product, row-major over sorted keys (last key fastest)."""
    keys = sorted(grid)
    return [dict(zip(keys, combo)) for combo in itertools.product(*(list(grid[k]) for k in keys))]


def sweep(identity, grid: Mapping[str, Sequence], ctx: PrecisionContext = DEFAULT_CONTEXT, *, workers: int = 1) -> List[CheckReport]:
    entry = REGISTRY[IdentityId(identity)]
    unknown = sorted(set(grid) - set(entry.defaults))
    if unknown:
        raise ContractError(f"unknown grid key(s) for {entry.id.value}: {', '.join(unknown)}")
    jobs = [(entry.id, point, ctx) for point in grid_points(grid)]
    if workers <= 1 or len(jobs) <= 1:
        return [_run_point(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_point, jobs))


# ------------------------------------------------------------ serialization


def _real_token(x: float) -> str:
    return format(x, ".16e") if math.isfinite(x) else "null"


def _complex_text(w: complex) -> str:
    return f"{w.real:.16e}{w.imag:+.16e}i"


def _json_value(v) -> str:
    if v is None or isinstance(v, (bool, str)):
        return json.dumps(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _real_token(v)
    if isinstance(v, complex):
        return f'{{"re": {_real_token(v.real)}, "im": {_real_token(v.imag)}}}'
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _report_json(r: CheckReport) -> str:
    body = {
        "identity": r.identity,
        "params": r.params,
        "sides": [{"label": label, "value": value} for label, value in r.sides],
        "max_abs_err": r.max_abs_err,
        "max_rel_err": r.max_rel_err,
        "pass": r.passed,
        "wall_time_ms": r.wall_time_ms,
        "truncations": [float(t) for t in r.truncations],
        "error": r.error,
        "notes": r.notes,
    }
    return _json_value(body)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, complex):
        return _complex_text(v)
    if isinstance(v, float):
        return format(v, ".16e") if math.isfinite(v) else "nan"
    return str(v)


def emit(reports: Sequence[CheckReport], fmt: str = "json") -> bytes:
    """Serialize reports as UTF-8 JSON (a list of objects) or CSV."""
    if fmt == "json":
        text = "[\n" + ",\n".join(_report_json(r) for r in reports) + ("\n]\n" if reports else "]\n")
        return text.encode("utf-8")
    if fmt != "csv":
        raise ContractError(f"unknown format {fmt!r}")
    param_keys: List[str] = []
    side_keys: List[str] = []
    for r in reports:
        param_keys += [k for k in r.params if k not in param_keys]
        side_keys += [label for label, _ in r.sides if label not in side_keys]
    header = ["identity", *(f"param:{k}" for k in param_keys), *(f"side:{k}" for k in side_keys),
              "max_abs_err", "max_rel_err", "pass", "wall_time_ms"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in reports:
        sides = dict(r.sides)
        w.writerow(
            [r.identity]
            + [_csv_cell(r.params.get(k)) for k in param_keys]
            + [_csv_cell(sides[k]) if k in sides else "" for k in side_keys]
            + [_csv_cell(r.max_abs_err), _csv_cell(r.max_rel_err), _csv_cell(r.passed), _csv_cell(r.wall_time_ms)]
        )
    return buf.getvalue().encode("utf-8")


def _decode(v):
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return complex(_decode(v["re"]), _decode(v["im"]))
    if isinstance(v, dict):
        return {k: _decode(x) for k, x in v.items()}
    if v is None:
        return None
    return v


def _real(v) -> float:
    return math.nan if v is None else float(v)


def load_json(data: bytes) -> List[CheckReport]:
    """Inverse of ``emit(..., "json")``."""
    out = []
    for obj in json.loads(data.decode("utf-8")):
        out.append(
            CheckReport(
                obj["identity"],
                {k: _decode(v) for k, v in obj["params"].items()},
                [(s["label"], complex(_decode(s["value"]))) for s in obj["sides"]],
                _real(obj["max_abs_err"]),
                _real(obj["max_rel_err"]),
                bool(obj["pass"]),
                _real(obj["wall_time_ms"]),
                [float(t) for t in obj["truncations"]],
                obj["error"],
                {k: _real(v) for k, v in obj["notes"].items()},
            )
        )
    return out
