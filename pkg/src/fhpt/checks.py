"""Named verification checks over the whole stack, with one report per run.

Every check pins an identity that holds exactly in exact arithmetic, computes
a scalar residual for it, and compares against a tolerance chosen for double
precision.  A tolerance override replaces every per-check tolerance at once,
which is how the command line exposes "rerun the suite stricter/looser".

Checks that define an identity at fixed parameters (the squared-integer
spectrum at unit well strength, Bessel closed forms) always run at those
parameters; the rest follow the configured well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import apply_lowering, apply_raising, casimir_eigenvalue, commutator_residual, ladder_coefficients
from .coherent import (
    build_coherent_state,
    lowering_eigenstate_residual,
    radial_weight_moment,
    resolution_of_identity_check,
)
from .model import PotentialParams, build_basis_state, eval_state, momentum_level, overlap, residual_ode
from .quadrature import default_r_max, gauss_legendre, integrate_semi_infinite_k_weight
from .special import bessel_i, bessel_k, gamma_fn

__all__ = ["CheckConfig", "CheckResult", "VerificationReport", "run_checks"]

REPORT_VERSION = "fhpt-report/1"


@dataclass(frozen=True)
class CheckConfig:
    A: float = 2.0
    c1: float = 1.0
    m0: float = 0.5
    c: float = 1.0
    hbar: float = 1.0
    nmax: int = 10
    quad_order: int = 200
    tol_override: float | None = None

    def to_dict(self) -> dict:
        return {
            "A": self.A,
            "c1": self.c1,
            "m0": self.m0,
            "c": self.c,
            "hbar": self.hbar,
            "nmax": self.nmax,
            "quad_order": self.quad_order,
            "tol_override": self.tol_override,
        }


@dataclass(frozen=True)
class CheckResult:
    name: str
    identity: str
    residual: float
    tol: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "identity": self.identity,
            "residual": self.residual,
            "tol": self.tol,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class VerificationReport:
    version: str
    config: dict
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }


def _result(name: str, identity: str, residual: float, tol: float, override: float | None) -> CheckResult:
    if override is not None:
        tol = override
    return CheckResult(name, identity, float(residual), float(tol), bool(residual < tol))


_TAU_GRID = np.linspace(-0.5 * np.pi + 0.05, 0.5 * np.pi - 0.05, 101)


def run_checks(config: CheckConfig | None = None) -> VerificationReport:
    if config is None:
        config = CheckConfig()
    ov = config.tol_override
    params = PotentialParams(A=config.A, c1=config.c1, m0=config.m0, c=config.c, hbar=config.hbar)
    L = params.L
    checks: list[CheckResult] = []

    # master equation residual, level by level
    r = max(residual_ode(n, params) for n in range(min(config.nmax, 20) + 1))
    checks.append(_result("ode-residual", "secant-well-equation", r, 1e-9, ov))

    # squared-integer spectrum at unit well strength in natural units
    unit = PotentialParams(A=1.0)
    r = max(
        abs(momentum_level(n, unit) - (n + 1.0) ** 2) / (n + 1.0) ** 2 for n in range(51)
    )
    checks.append(_result("spectrum-square-law", "unit-well-squared-integers", r, 1e-14, ov))

    # orthonormality of the basis under the t measure
    rule = gauss_legendre(config.quad_order)
    rule2 = gauss_legendre(2 * config.quad_order)
    nb = min(config.nmax, 20)
    gram = np.array([[overlap(i, j, params, rule) for j in range(nb + 1)] for i in range(nb + 1)])
    gram2 = np.array([[overlap(i, j, params, rule2) for j in range(nb + 1)] for i in range(nb + 1)])
    checks.append(_result("gram-identity", "basis-orthonormality", np.max(np.abs(gram - np.eye(nb + 1))), 1e-10, ov))
    checks.append(_result("gram-order-doubling", "quadrature-convergence", np.max(np.abs(gram - gram2)), 1e-12, ov))

    # ladder maps against their eigenvalue relations
    nlad = min(config.nmax, 15)
    y = np.sin(_TAU_GRID)
    worst_up = 0.0
    worst_dn = 0.0
    for n in range(nlad + 1):
        st = build_basis_state(n, params)
        lc = ladder_coefficients(n, L)
        up = apply_raising(st)(y)
        target = lc.raise_eig * eval_state(build_basis_state(n + 1, params), _TAU_GRID)
        worst_up = max(worst_up, np.max(np.abs(up - target)) / np.max(np.abs(target)))
        if n >= 1:
            dn = apply_lowering(st)(y)
            target = lc.lower_eig * eval_state(build_basis_state(n - 1, params), _TAU_GRID)
            worst_dn = max(worst_dn, np.max(np.abs(dn - target)) / np.max(np.abs(target)))
    checks.append(_result("ladder-raising", "raising-eigenvalue", worst_up, 1e-9, ov))
    checks.append(_result("ladder-lowering", "lowering-eigenvalue", worst_dn, 1e-9, ov))

    ground = apply_lowering(build_basis_state(0, params))(y)
    checks.append(_result("ground-annihilation", "lowering-kills-ground", np.max(np.abs(ground)), 1e-10, ov))

    r = max(commutator_residual(n, params) for n in range(min(config.nmax, 12) + 1))
    checks.append(_result("commutator", "ladder-commutator", r, 1e-9, ov))

    cas = L * L - 0.25
    r = max(abs(casimir_eigenvalue(n, params) - cas) for n in range(21))
    checks.append(_result("casimir-constancy", "casimir-invariant", r, 1e-12, ov))

    # coherent states: weight normalization and the annihilation eigenrelation
    r = 0.0
    for z in (0.5 + 0.0j, 2.0 + 0.0j, 5.0 + 0.0j):
        cs = build_coherent_state(z, params)
        r = max(r, abs(1.0 - cs.norm_sq))
    checks.append(_result("coherent-normalization", "unit-weight-sum", r, 1e-12, ov))

    r = 0.0
    for z in (0.5 + 0.0j, 1.0 + 1.0j, 3.0 * np.exp(0.25j * np.pi)):
        cs = build_coherent_state(z, params)
        r = max(r, lowering_eigenstate_residual(cs))
    checks.append(_result("lowering-eigenstate", "annihilation-eigenrelation", r, 1e-10, ov))

    # completeness over the label plane: diagonal moments equal 1
    nres = min(config.nmax, 10)
    shared_r_max = default_r_max(2.0 * nres + 2.0 * L + 1.0)
    r = max(
        abs(resolution_of_identity_check(n, n, params, rule=rule, r_max=shared_r_max) - 1.0)
        for n in range(nres + 1)
    )
    checks.append(_result("identity-resolution", "label-plane-completeness", r, 1e-7, ov))

    r = 0.0
    for k in (0, 3, 7):
        mu = 2.0 * k + 2.0 * L + 1.0
        closed = radial_weight_moment(mu, 2.0 * L)
        quad = integrate_semi_infinite_k_weight(
            lambda rr, m=mu: rr**m, 2.0 * L, r_max=default_r_max(mu), rule=rule
        )
        r = max(r, abs(quad - closed) / closed)
    checks.append(_result("radial-closed-form", "k-weighted-moments", r, 1e-9, ov))

    # special-function layer: Wronskian, half-order closed forms, rule exactness
    r = 0.0
    for nu in (0.3, 1.0, 2.5, 4.0):
        for x in (0.7, 3.0, 11.0):
            w = x * (bessel_i(nu, x) * bessel_k(nu + 1.0, x) + bessel_i(nu + 1.0, x) * bessel_k(nu, x))
            r = max(r, abs(w - 1.0))
    checks.append(_result("bessel-wronskian", "cross-product-identity", r, 1e-10, ov))

    r = 0.0
    for x in (0.5, 1.0, 2.0, 5.0):
        i_half = math.sqrt(2.0 / (math.pi * x)) * math.sinh(x)
        k_half = math.sqrt(0.5 * math.pi / x) * math.exp(-x)
        r = max(r, abs(bessel_i(0.5, x) - i_half) / i_half)
        r = max(r, abs(bessel_k(0.5, x) - k_half) / k_half)
    checks.append(_result("half-order-bessel", "elementary-closed-forms", r, 1e-12, ov))

    rule40 = gauss_legendre(40)
    r = 0.0
    for m in range(0, 65, 2):
        quad = float(np.dot(rule40.weights, rule40.nodes**m))
        r = max(r, abs(quad - 2.0 / (m + 1.0)))
    checks.append(_result("quadrature-exactness", "polynomial-exactness", r, 1e-12, ov))

    r = 0.0
    for m, x in ((1.0, 0.6), (2.0, 1.5), (5.0, 3.0), (2.0 * L, 2.0)):
        total = 0.0
        term_log_x = math.log(x)
        n = 0
        while True:
            t = math.exp((2 * n + m) * term_log_x - math.lgamma(n + 1.0)) / gamma_fn(n + m + 1.0)
            total += t
            if n > 3 and t < 1e-20 * total:
                break
            n += 1
        ref = bessel_i(m, 2.0 * x)
        r = max(r, abs(total - ref) / ref)
    checks.append(_result("bessel-sum-identity", "weight-series-resummation", r, 1e-12, ov))

    return VerificationReport(REPORT_VERSION, config.to_dict(), checks)
