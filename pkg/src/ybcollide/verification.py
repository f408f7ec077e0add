"""Randomised verification suites behind ``ybcollide verify``.

Each suite draws ``samples`` points from a seeded sampler, evaluates
residuals of the identities it owns and returns a :class:`SuiteReport`.
On the rational backend a check passes only on a literal zero residual;
on floats residuals are scaled by max(1, |value|) and compared to the
absolute tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import lax, poisson, properties as props
from .collisions import VelocityPair, collide, phi_inv, yb_map
from .scalars import Backend, DEFAULT_TOL, Sampler, ToleranceConfig, is_exact
from .states import ChainParams, ChainState, ExtendedState
from .transfer import (h_function, integrals, signed_volume_residual, transfer_step,
                       volume_check)

SUITES = ("yb", "lax", "transfer", "poisson", "quad")


@dataclass
class SuiteReport:
    suite: str
    samples: int
    backend: str
    failures: list = field(default_factory=list)
    max_residual: object = 0
    checks: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, name: str, residual, index: int, cfg: ToleranceConfig):
        self.checks += 1
        if is_exact(residual):
            ok = residual == 0
        else:
            residual = float(residual)
            ok = residual <= cfg.abs_tol
        if residual > self.max_residual:
            self.max_residual = residual
        if not ok:
            self.failures.append({"check": name, "sample": index, "residual": residual})

    def expect(self, name: str, condition: bool, index: int):
        self.checks += 1
        if not condition:
            self.failures.append({"check": name, "sample": index, "residual": None})

    def merge(self, other: "SuiteReport"):
        self.failures.extend(other.failures)
        self.checks += other.checks
        if other.max_residual > self.max_residual:
            self.max_residual = other.max_residual


def scaled_diff(left, right):
    """Largest |a - b| / max(1, |a|, |b|) over matching components."""
    pairs = zip(props._flatten(left), props._flatten(right))
    return max(abs(a - b) / max(1, abs(a), abs(b)) for a, b in pairs)


def scaled_matrix_residual(lhs, rhs, exact: bool):
    """Coefficient residual of lhs - rhs, divided by the coefficient scale on floats."""
    res = (lhs - rhs).max_abs()
    if exact:
        return res
    return res / max(1, lhs.max_abs(), rhs.max_abs())


def _scaled(res, exact: bool, *scales):
    if exact:
        return abs(res)
    return abs(res) / max([1] + [abs(s) for s in scales])


def yb_check_residual(f, triple, exact: bool):
    if exact:
        return props.yb_residual(f, triple)
    return scaled_diff(*props.yb_sides(f, triple))


def _extended_pairs(sampler: Sampler, count: int):
    return list(zip(sampler.signed(count, 0.05, 1), sampler.positive(count)))


def run_yb(samples: int, sampler: Sampler, cfg=DEFAULT_TOL, negative_control=False):
    exact = sampler.backend.exact
    rep = SuiteReport("yb", samples, sampler.backend.value)
    maps = [("yb_map", props.yb_parametric), ("nonrel_collision", props.nonrel_parametric),
            ("collide", props.collide_parametric())]
    for i in range(samples):
        params = tuple(sampler.positive(3))
        pos = sampler.positive(3)
        for name, f in maps:
            if name == "nonrel_collision":
                vals = sampler.signed(3)
            elif name == "collide":
                vals = [phi_inv(v) for v in pos]
            else:
                vals = pos
            rep.record(name, yb_check_residual(f, props.YBTriple(*vals, params), exact), i, cfg)
        pairs4 = tuple(zip(sampler.positive(3), sampler.positive(3)))
        rep.record("yb_map4", yb_check_residual(
            props.yb4_parametric, props.YBTriple(*sampler.positive(3), pairs4), exact), i, cfg)
        ext = _extended_pairs(sampler, 3)
        rep.record("rtilde", yb_check_residual(
            props.rtilde_parametric, props.YBTriple(*ext, params), exact), i, cfg)
        point, m = tuple(pos[:2]), params[:2]
        rep.expect("yb_map involution", props.involution_check(props.yb_parametric, point, m, cfg), i)
        rep.expect("yb_map reversibility",
                   props.reversibility_check(props.yb_parametric, point, m, cfg), i)
        vel = (phi_inv(pos[0]), phi_inv(pos[1]))
        rep.expect("collide involution",
                   props.involution_check(props.collide_parametric(), vel, m, cfg), i)
        rep.expect("yb_map4 is not an involution", not props.involution_check(
            props.yb4_parametric, point, (pairs4[0], pairs4[1]), cfg), i)
        if negative_control:
            rep.record("broken map (negative control)", yb_check_residual(
                props.broken_parametric, props.YBTriple(*pos, params), exact), i, cfg)
    return rep


def run_lax(samples: int, sampler: Sampler, cfg=DEFAULT_TOL, negative_control=False):
    exact = sampler.backend.exact
    rep = SuiteReport("lax", samples, sampler.backend.value)
    for i in range(samples):
        x, y = sampler.positive(2)
        m = tuple(sampler.positive(2))
        u, v = yb_map((x, y), m)
        rep.record("Lax residual of yb_map", scaled_matrix_residual(
            lax.lax_L(u, m[0]) * lax.lax_L(v, m[1]), lax.lax_L(y, m[1]) * lax.lax_L(x, m[0]),
            exact), i, cfg)
        sols = lax.lax_equation_solutions(x, y, m, cfg)
        rep.expect("Lax equation has the collision as unique solution",
                   len(sols) == 1 and props._same(sols[0], (u, v), cfg), i)
        vx, vy = phi_inv(x), phi_inv(y)
        out = collide(VelocityPair(vx, vy), m)
        rep.record("velocity-space Lax residual", scaled_matrix_residual(
            lax.lax_velocity(out.v1, m[0]) * lax.lax_velocity(out.v2, m[1]),
            lax.lax_velocity(vy, m[1]) * lax.lax_velocity(vx, m[0]), exact), i, cfg)
        a1, a2 = sampler.signed(1, 0.05, 1)[0], sampler.scalar()
        det = lax.lax_Ltilde(a1, a2, m[0]).det()
        target = [-1, 0, 1 / (m[0] * m[0])]
        rep.record("det of extended Lax matrix",
                   max(abs(p - q) for p, q in zip(det, target)), i, cfg)
        px, py = _extended_pairs(sampler, 2)
        try:
            pu, pv = lax.solve_lax_4d(px, py, m)
        except ZeroDivisionError:
            continue
        rep.record("extended Lax residual", scaled_matrix_residual(
            lax.lax_Ltilde(*pu, m[0]) * lax.lax_Ltilde(*pv, m[1]),
            lax.lax_Ltilde(*py, m[1]) * lax.lax_Ltilde(*px, m[0]), exact), i, cfg)
    return rep


def run_transfer(samples: int, sampler: Sampler, cfg=DEFAULT_TOL, negative_control=False,
                 sizes=(1, 2, 3)):
    exact = sampler.backend.exact
    rep = SuiteReport("transfer", samples, sampler.backend.value)
    for i in range(samples):
        for n in sizes:
            params = ChainParams.autonomous(*sampler.positive(2), n)
            s = ChainState(sampler.positive(n), sampler.positive(n))
            t = transfer_step(s, params)
            before, after = integrals(s, params), integrals(t, params)
            for key, val in before.as_dict().items():
                other = after.as_dict()[key]
                diff = other - val if exact else scaled_diff([other], [val])
                rep.record(f"n={n} integral {key}", abs(diff), i, cfg)
            X, Y = math.prod(s.x), math.prod(s.y)
            checks = (("volume form", volume_check(s, params), (1 / (X * X), 1 / (Y * Y))),
                      ("signed volume identity", signed_volume_residual(s, params), (1 / (X * Y),)),
                      ("h anti-invariance", h_function(t) + h_function(s), (X / Y, Y / X)))
            for name, res, scales in checks:
                rep.record(f"n={n} {name}", _scaled(res, exact, *scales), i, cfg)
    return rep


def run_poisson(samples: int, sampler: Sampler, cfg=DEFAULT_TOL, negative_control=False,
                sizes=(1, 2)):
    exact = sampler.backend.exact
    rep = SuiteReport("poisson", samples, sampler.backend.value)
    for i in range(samples):
        m = tuple(sampler.positive(2))
        for n in sizes:
            s = ExtendedState(_extended_pairs(sampler, n), _extended_pairs(sampler, n))
            step = lambda z: poisson.tilde_transfer_step(z, m)
            jac = (lambda z: poisson.tilde_transfer_jacobian(z, m)) if exact else None
            res = poisson.poisson_map_residual(step, s, m, jac)
            image = step(s).as_vector()
            rep.record(f"n={n} Poisson map", _scaled(res, exact, *image, *s.as_vector()), i, cfg)
        mm = tuple(sampler.positive(2, 0.5, 2))
        s = ExtendedState(list(zip(sampler.signed(2, 0.05, 1), sampler.positive(2, 0.5, 2))),
                          list(zip(sampler.signed(2, 0.05, 1), sampler.positive(2, 0.5, 2))))
        rep.record("n=2 trace involution", poisson.involution_residual(s, mm), i, cfg)
        x, y = sampler.positive(2)
        rep.record("symplectic form", _scaled(poisson.symplectic_residual_2d((x, y), m), exact,
                                              1 / (x * x), 1 / (y * y)), i, cfg)
        rep.expect("reduction to the collision map", poisson.reduction_check(x, y, m, cfg), i)
    return rep


def run_quad(samples: int, sampler: Sampler, cfg=DEFAULT_TOL, negative_control=False):
    exact = sampler.backend.exact
    rep = SuiteReport("quad", samples, sampler.backend.value)
    for i in range(samples):
        w00, w10, w11 = sampler.positive(3)
        m = tuple(sampler.positive(2))
        rep.expect("quad/YB correspondence", props.quad_yb_equivalence(w00, w10, w11, m, cfg), i)
        w01 = props.solve_w01(w00, w10, w11, m)
        face = props.QuadFace(w00, w10, w01, w11, m)
        res = props.quad_residual(face)
        rep.record("solved face residual", abs(res) if exact else abs(res) / max(1, w10 * w00), i, cfg)
        corners = sampler.positive(4)
        m3 = tuple(sampler.positive(3))
        try:
            disc = props.cube_consistency(*corners, m3)
        except props.DomainError:
            continue
        rep.record("3D consistency", disc if exact else scaled_diff([disc], [0]), i, cfg)
        if negative_control:
            bad = props.QuadFace(w00, w10, w01 + 1, w11, m)
            rep.record("perturbed face (negative control)", abs(props.quad_residual(bad)), i, cfg)
            rep.record("perturbed cube (negative control)",
                       props.cube_consistency(*corners, m3, shift=1), i, cfg)
    return rep


RUNNERS = {"yb": run_yb, "lax": run_lax, "transfer": run_transfer,
           "poisson": run_poisson, "quad": run_quad}


def run_suite(suite: str, samples: int, seed: int, backend=Backend.RATIONAL,
              negative_control: bool = False, cfg: ToleranceConfig = DEFAULT_TOL) -> SuiteReport:
    """Run one suite or ``"all"``; every suite gets its own child sampler of ``seed``."""
    backend = Backend(backend)
    names = SUITES if suite == "all" else (suite,)
    total = SuiteReport(suite, samples, backend.value)
    for k, name in enumerate(names):
        sampler = Sampler(seed, backend).spawn(k)
        total.merge(RUNNERS[name](samples, sampler, cfg, negative_control))
    return total
