"""Command line front end: ``ybcollide {verify,orbit,collide,spectrum}``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import export
from .collisions import VelocityPair, collide, energy, momentum
from .scalars import DEFAULT_TOL, Backend, DomainError, Sampler
from .states import ChainParams, ChainState
from .transfer import integrals, iterate
from .verification import SUITES, run_suite

# exact orbits grow roughly 12 k^2 bits per coordinate after k steps
MAX_EXACT_STEPS = 1000


@dataclass
class ScenarioConfig:
    n: int = 3
    alpha: list = field(default_factory=lambda: ["3"])
    beta: list = field(default_factory=lambda: ["1"])
    x: list = field(default_factory=list)
    y: list = field(default_factory=list)
    steps: int = 1000
    backend: str = "float"
    seed: int = 0
    stride: int = 1
    projection: list = field(default_factory=lambda: ["x1", "x2", "x3"])

    @classmethod
    def from_json(cls, path) -> "ScenarioConfig":
        data = json.loads(Path(path).read_text())
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise DomainError(f"unknown scenario keys: {sorted(unknown)}")
        for key in ("alpha", "beta", "x", "y", "projection"):
            if key in data and not isinstance(data[key], list):
                data[key] = [data[key]]
        return cls(**data)

    def resolve(self):
        """Validated (state, params, backend)."""
        backend = Backend(self.backend)
        if self.n < 1:
            raise DomainError("n must be at least 1")
        if self.steps < 0:
            raise DomainError("steps must be non-negative")
        if self.stride < 1:
            raise DomainError("stride must be positive")
        if backend.exact and self.steps > MAX_EXACT_STEPS:
            raise DomainError(f"exact orbits are capped at {MAX_EXACT_STEPS} steps")
        alpha = backend.coerce_all(self.alpha)
        beta = backend.coerce_all(self.beta)
        if len(alpha) == 1:
            alpha = alpha * self.n
        if len(beta) == 1:
            beta = beta * self.n
        params = ChainParams(alpha, beta)
        params.check(self.n)
        if self.x or self.y:
            x, y = backend.coerce_all(self.x), backend.coerce_all(self.y)
            if len(x) != self.n or len(y) != self.n:
                raise DomainError(f"initial x and y need {self.n} entries each")
        else:
            sampler = Sampler(self.seed, backend)
            x, y = sampler.positive(self.n, 0.5, 2), sampler.positive(self.n, 0.5, 2)
        if not all(v > 0 for v in x + y):
            raise DomainError("initial coordinates must be positive")
        return ChainState(x, y), params, backend


def _split(text):
    return [t for t in text.split(",") if t.strip()]


def _scenario_from_args(args) -> ScenarioConfig:
    cfg = ScenarioConfig.from_json(args.config) if args.config else ScenarioConfig()
    for key in ("n", "steps", "backend", "seed", "stride"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    for key in ("alpha", "beta", "x", "y", "projection"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, _split(val))
    if args.projection is None and not args.config:
        cfg.projection = [f"x{i}" for i in range(1, min(cfg.n, 3) + 1)]
        cfg.projection += [f"y{i}" for i in range(1, 4 - len(cfg.projection))]
    return cfg


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.samples, args.seed, args.backend,
                       negative_control=args.negative_control)
    out = {
        "suite": report.suite,
        "samples": report.samples,
        "backend": report.backend,
        "seed": args.seed,
        "checks": report.checks,
        "failures": report.failures,
        "max_residual": export.format_scalar(report.max_residual),
        "passed": report.passed,
    }
    text = export.dumps(out)
    if args.report:
        export.write_text(args.report, text)
    sys.stdout.write(text)
    return 0 if report.passed else 1


def cmd_orbit(args) -> int:
    cfg = _scenario_from_args(args)
    state, params, backend = cfg.resolve()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rec = export.OrbitRecorder()
    iterate(state, params, cfg.steps, observer=rec, stride=cfg.stride)
    export.write_orbit_csv(out / "orbit.csv", rec.steps, rec.states)
    report = export.drift_report(rec, backend, params, DEFAULT_TOL.drift_tol)
    export.write_text(out / "drift.json", export.dumps(report))
    if cfg.projection:
        if len(cfg.projection) != 3:
            raise DomainError("projection needs exactly three coordinates")
        export.write_projection_csv(out / "projection.csv", rec.states, cfg.projection)
        title = f"T_{cfg.n} orbit, alpha={cfg.alpha}, beta={cfg.beta}"
        export.write_text(out / "plot.gp",
                          export.plot_script("projection.csv", cfg.projection, title))
    sys.stdout.write(export.dumps({"out": str(out), "within_tolerance": report["within_tolerance"],
                                   "max_relative_drift": report["max_relative_drift"]}))
    return 0


def cmd_collide(args) -> int:
    backend = Backend(args.backend)
    m1, m2, v1, v2, c = backend.coerce_all([args.m1, args.m2, args.v1, args.v2, args.c])
    if not (m1 > 0 and m2 > 0):
        raise DomainError("masses must be positive")
    if not (-c < v1 < c and -c < v2 < c):
        raise DomainError(f"velocities must lie strictly between -c and c (c={c})")
    before = VelocityPair(v1, v2, c)
    after = collide(before, (m1, m2))
    sys.stdout.write(export.dumps({
        "backend": backend.value,
        "v1p": after.v1,
        "v2p": after.v2,
        "energy_in": energy(before, (m1, m2)),
        "energy_out": energy(after, (m1, m2)),
        "momentum_in": momentum(before, (m1, m2)),
        "momentum_out": momentum(after, (m1, m2)),
    }))
    return 0


def _spectrum_dict(state, params) -> dict:
    rep = integrals(state, params)
    return {"I": rep.spectral, "leading": 2, "E": rep.E, "P": rep.P, "H": rep.H,
            "linear": rep.linear}


def cmd_spectrum(args) -> int:
    cfg = _scenario_from_args(args)
    state, params, _ = cfg.resolve()
    out = _spectrum_dict(state, params)
    if args.after_steps is not None:
        if args.after_steps < 0:
            raise DomainError("after-steps must be non-negative")
        later = iterate(state, params, args.after_steps)
        # with per-site masses the betas have moved with the y-block
        moved = params
        if not params.is_autonomous:
            for _ in range(args.after_steps):
                moved = moved.advanced()
        after = _spectrum_dict(later, moved)
        out["after"] = after
        out["after_steps"] = args.after_steps
        out["differences"] = {
            "I": [b - a for a, b in zip(out["I"], after["I"])],
            **{k: after[k] - out[k] for k in ("E", "P", "H", "linear")},
        }
    sys.stdout.write(export.dumps(out))
    return 0


def _add_scenario_args(p):
    p.add_argument("--config", help="scenario JSON file (flags override its fields)")
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", help="mass alpha, or comma-separated per-site list")
    p.add_argument("--beta", help="mass beta, or comma-separated per-site list")
    p.add_argument("--x", help="comma-separated initial x_1..x_n")
    p.add_argument("--y", help="comma-separated initial y_1..y_n")
    p.add_argument("--backend", choices=[b.value for b in Backend])
    p.add_argument("--seed", type=int, help="seed for a random start when x, y are omitted")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ybcollide",
                                     description="Relativistic collisions as Yang-Baxter maps")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run randomised identity checks")
    v.add_argument("--suite", choices=("all",) + SUITES, default="all")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--backend", choices=[b.value for b in Backend], default="rational")
    v.add_argument("--negative-control", action="store_true",
                   help="inject a broken map and a perturbed quad face (must fail)")
    v.add_argument("--report", help="also write the JSON report here")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("orbit", help="iterate the transfer map and export the orbit")
    _add_scenario_args(o)
    o.add_argument("--steps", type=int)
    o.add_argument("--stride", type=int)
    o.add_argument("--projection", help="three coordinate names, e.g. x1,x2,y1")
    o.add_argument("--out", default="orbit_out", help="output directory")
    o.set_defaults(func=cmd_orbit)

    c = sub.add_parser("collide", help="collide two particles")
    c.add_argument("--m1", required=True)
    c.add_argument("--m2", required=True)
    c.add_argument("--v1", required=True)
    c.add_argument("--v2", required=True)
    c.add_argument("--c", default="1")
    c.add_argument("--backend", choices=[b.value for b in Backend], default="float")
    c.set_defaults(func=cmd_collide)

    s = sub.add_parser("spectrum", help="monodromy trace coefficients and closed-form integrals")
    _add_scenario_args(s)
    s.add_argument("--after-steps", type=int)
    s.set_defaults(func=cmd_spectrum, projection=None)
    return parser


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        # exact orbit coordinates quickly exceed the default digit limit
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"ybcollide: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
