"""Trigonometric R-matrices in both gradations, with their full check suite.

The braid-form solution on C^n (x) C^n is

    Rcheck(lambda) = sinh(lambda + i mu) I + sinh(lambda) U,

with U the bulk Hecke generator; R = P Rcheck. Entrywise,

    R^(h) = a sum e_ii (x) e_ii + b sum_{i!=j} e_ii (x) e_jj
            + c sum_{i!=j} e^{-sgn(i-j) lambda} e_ij (x) e_ji,

a = sinh(lambda+i mu), b = sinh lambda, c = sinh i mu. The principal
gradation replaces the hopping phase by e^{((i-j) 2/n - sgn(i-j)) lambda} and
equals the gauge conjugation V1(lambda) R^(h) V1(-lambda) with
V(lambda) = diag(1, e^{2 lambda/n}, ..., e^{(n-1) 2 lambda/n}).

Unitarity holds with the scalar

    g(lambda) = sinh(i mu + lambda) sinh(i mu - lambda):

Rcheck(lambda) Rcheck(-lambda) = g(lambda) I and R(lambda) Rhat(-lambda) =
g(lambda) I where Rhat = P R P. The closed form of the inverse,
R(-lambda)^{-1} = Rhat(lambda)/g(lambda), is what makes large-lambda
monodromy asymptotics numerically viable, so it is exposed here.
"""

from __future__ import annotations

import cmath
from enum import Enum

import numpy as np
from scipy.optimize import minimize

from .hecke_algebra import build_bulk_generator
from .params import ModelParams
from .reporting import ReportBuilder, VerificationReport
from .sampling import rng_from_seed, sample_model, sample_spectral
from .tensor_core import (
    Operator,
    basis_matrix,
    commutator,
    embed_at,
    frob,
    identity_op,
    kron,
    partial_transpose,
    permutation_swap,
    prop_check,
    rel_residual,
)

__all__ = [
    "Gauge",
    "build_rcheck",
    "build_r",
    "build_r_hat",
    "build_r_inverse",
    "unitarity_scalar",
    "build_gauge_V",
    "build_M",
    "fit_crossing_shift",
    "verify_ybe_suite",
]


class Gauge(str, Enum):
    homogeneous = "homogeneous"
    principal = "principal"


def build_rcheck(params: ModelParams, lam: complex) -> Operator:
    n = params.n
    u = build_bulk_generator(params)
    eye = np.eye(n * n, dtype=np.complex128)
    return Operator(
        cmath.sinh(lam + 1j * params.mu) * eye + cmath.sinh(lam) * u.mat, (n, n)
    )


def build_r(params: ModelParams, lam: complex, gauge: Gauge = Gauge.homogeneous) -> Operator:
    n, mu = params.n, params.mu
    a = cmath.sinh(lam + 1j * mu)
    b = cmath.sinh(lam)
    c = cmath.sinh(1j * mu)
    r = np.zeros((n * n, n * n), dtype=np.complex128)
    for i in range(1, n + 1):
        r += a * np.kron(basis_matrix(n, i, i), basis_matrix(n, i, i))
        for j in range(1, n + 1):
            if i == j:
                continue
            r += b * np.kron(basis_matrix(n, i, i), basis_matrix(n, j, j))
            if gauge == Gauge.homogeneous:
                phase = cmath.exp(-np.sign(i - j) * lam)
            else:
                phase = cmath.exp(((i - j) * 2.0 / n - np.sign(i - j)) * lam)
            r += c * phase * np.kron(basis_matrix(n, i, j), basis_matrix(n, j, i))
    return Operator(r, (n, n))


def build_r_hat(params: ModelParams, lam: complex, gauge: Gauge = Gauge.homogeneous) -> Operator:
    """P R(lambda) P; for these symmetric R matrices also the total transpose."""
    p = permutation_swap(params.n)
    return p @ build_r(params, lam, gauge) @ p


def unitarity_scalar(params: ModelParams, lam: complex) -> complex:
    return cmath.sinh(1j * params.mu + lam) * cmath.sinh(1j * params.mu - lam)


def build_r_inverse(params: ModelParams, lam: complex, gauge: Gauge = Gauge.homogeneous) -> Operator:
    """Closed-form R(lambda)^{-1} = Rhat-at-(-lambda) / g(lambda), no np.linalg.inv.

    In the principal gradation the same identity holds after conjugating by
    the gauge matrix on the first factor.
    """
    g = unitarity_scalar(params, lam)
    if abs(g) < 1e-14:
        raise ZeroDivisionError(f"R(lambda) singular at lambda = {lam}")
    if gauge == Gauge.homogeneous:
        return build_r_hat(params, -lam, gauge) * (1.0 / g)
    v_pos = embed_at(build_gauge_V(params, -lam), [1], (params.n, params.n))
    v_neg = embed_at(build_gauge_V(params, lam), [1], (params.n, params.n))
    inner = build_r_hat(params, -lam, Gauge.homogeneous)
    return (v_neg @ inner @ v_pos) * (1.0 / g)


def build_gauge_V(params: ModelParams, lam: complex) -> Operator:
    n = params.n
    d = [cmath.exp(2.0 * lam * j / n) for j in range(n)]
    return Operator(np.diag(d), (n,))


def build_M(params: ModelParams, gauge: Gauge = Gauge.homogeneous) -> Operator:
    n = params.n
    if gauge == Gauge.principal:
        return identity_op([n])
    d = [cmath.exp(1j * params.mu * (n - 2 * j + 1)) for j in range(1, n + 1)]
    return Operator(np.diag(d), (n,))


# ---------------------------------------------------------------------------
# crossing-shift fit
# ---------------------------------------------------------------------------


def _crossing_residual(params: ModelParams, lam: complex, rho: complex, gauge: Gauge) -> float:
    n = params.n
    m1 = embed_at(build_M(params, gauge), [1], (n, n))
    r1 = partial_transpose(build_r(params, lam, gauge), 1)
    r2 = partial_transpose(build_r(params, -lam - 2j * rho, gauge), 2)
    prod = r1 @ m1 @ r2 @ m1.inv()
    return prop_check(prod, identity_op((n, n)), 1.0).residual


def fit_crossing_shift(
    params: ModelParams,
    lam: complex,
    gauge: Gauge = Gauge.homogeneous,
) -> tuple[complex, float]:
    """Fit the shift rho in the crossing relation by residual minimization.

    Coarse complex grid scan followed by a Nelder-Mead polish. Returns
    (rho, residual-at-rho). The value is fitted, never assumed.
    """

    def cost(xy):
        return _crossing_residual(params, lam, complex(xy[0], xy[1]), gauge)

    # Entries depend on rho through sinh(... - 2 i rho) and e^{± 2 i rho}
    # factors, so the zero set of the (proportional!) relation is periodic in
    # Re(rho): shifting rho by pi/2 flips the global sign of R in the
    # homogeneous gradation (and for n = 2 in both), which a proportionality
    # cannot see; in the principal gradation with n > 2 the hopping phases
    # break that half-period and only pi survives. Scan one fundamental strip
    # and report the canonical representative.
    period = np.pi / 2 if (gauge == Gauge.homogeneous or params.n == 2) else np.pi
    grid = []
    for re in np.linspace(0.0, period, max(8, int(period / 0.05)), endpoint=False):
        for im in np.linspace(-0.6, 0.6, 9):
            grid.append(((re, im), cost((re, im))))
    grid.sort(key=lambda t: t[1])
    best_rho, best_val = None, np.inf
    for x0, _ in grid[:3]:
        res = minimize(cost, x0=x0, method="Nelder-Mead",
                       options={"xatol": 1e-13, "fatol": 1e-15, "maxiter": 4000})
        val = cost(res.x)
        if val < best_val:
            best_rho, best_val = complex(res.x[0], res.x[1]), val
    rho = complex(best_rho.real % period, best_rho.imag)
    return rho, best_val


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------


def verify_ybe_suite(
    params: ModelParams,
    samples: int = 20,
    tol: float = 1e-10,
    seed: int = 0,
) -> VerificationReport:
    n = params.n
    rng = rng_from_seed(seed)
    rb = ReportBuilder(
        "ybe", {"n": n, "samples": samples, "seed": seed, "tol": tol}
    )
    space3 = (n, n, n)

    for s in range(samples):
        p = params if s == 0 else sample_model(rng, n)
        l1, l2 = sample_spectral(rng, p, 2)
        for gauge in (Gauge.homogeneous, Gauge.principal):
            tag = f"s{s}.{gauge.value[:4]}"
            r12 = embed_at(build_r(p, l1 - l2, gauge), [1, 2], space3)
            r13 = embed_at(build_r(p, l1, gauge), [1, 3], space3)
            r23 = embed_at(build_r(p, l2, gauge), [2, 3], space3)
            lhs = r12 @ r13 @ r23
            rhs = r23 @ r13 @ r12
            rb.add(f"ybe.ybe.{tag}", frob(lhs - rhs) / max(frob(lhs), 1e-300), tol)

            ru = build_r(p, l1, gauge)
            uni = ru @ build_r_hat(p, -l1, gauge)
            g = unitarity_scalar(p, l1)
            rb.add(
                f"ybe.runitarity.{tag}",
                rel_residual(uni, g * identity_op((n, n))),
                tol,
            )
            inv = build_r_inverse(p, l1, gauge)
            rb.add(
                f"ybe.rinverse.{tag}",
                rel_residual(ru @ inv, identity_op((n, n))),
                tol,
            )

            m = build_M(p, gauge)
            mm = kron(m, m)
            rb.add(
                f"ybe.mcomm.{tag}",
                frob(commutator(mm, ru)) / max(frob(ru) * frob(mm.mat) / n, 1e-300),
                tol,
            )

        # braid form, homogeneous only (Rcheck is gauge-independent input)
        c12_a = embed_at(build_rcheck(p, l1 - l2), [1, 2], space3)
        c23_b = embed_at(build_rcheck(p, l1), [2, 3], space3)
        c12_c = embed_at(build_rcheck(p, l2), [1, 2], space3)
        c23_d = embed_at(build_rcheck(p, l2), [2, 3], space3)
        c12_e = embed_at(build_rcheck(p, l1), [1, 2], space3)
        c23_f = embed_at(build_rcheck(p, l1 - l2), [2, 3], space3)
        lhs = c12_a @ c23_b @ c12_c
        rhs = c23_d @ c12_e @ c23_f
        rb.add(f"ybe.braid.s{s}", frob(lhs - rhs) / max(frob(lhs), 1e-300), tol)

        cu = build_rcheck(p, l1) @ build_rcheck(p, -l1)
        rb.add(
            f"ybe.cunitarity.s{s}",
            rel_residual(cu, unitarity_scalar(p, l1) * identity_op((n, n))),
            tol,
        )
        # P Rcheck equals the entrywise homogeneous R
        rb.add(
            f"ybe.prcheck.s{s}",
            rel_residual(
                permutation_swap(n) @ build_rcheck(p, l1),
                build_r(p, l1, Gauge.homogeneous),
            ),
            1e-13,
        )
        # gauge covariance
        v1p = embed_at(build_gauge_V(p, l1), [1], (n, n))
        v1m = embed_at(build_gauge_V(p, -l1), [1], (n, n))
        rb.add(
            f"ybe.gauge.s{s}",
            rel_residual(
                v1p @ build_r(p, l1, Gauge.homogeneous) @ v1m,
                build_r(p, l1, Gauge.principal),
            ),
            1e-12,
        )

    # crossing: fit the shift at one lambda, assert lambda-independence at a
    # second, for each gauge (fit once per suite run; it is a scan)
    lam_a, lam_b = sample_spectral(rng, params, 2)
    for gauge in (Gauge.homogeneous, Gauge.principal):
        rho_a, res_a = fit_crossing_shift(params, lam_a, gauge)
        rho_b, res_b = fit_crossing_shift(params, lam_b, gauge)
        rb.add(f"ybe.crossing.fit.{gauge.value[:4]}", max(res_a, res_b), tol,
               scalar=rho_a)
        rb.add(
            f"ybe.crossing.drift.{gauge.value[:4]}",
            abs(rho_a - rho_b) / max(abs(rho_a), 1e-300),
            1e-8,
            scalar=rho_b,
        )
    return rb.report()
