"""Non-local boundary charges of the open chain and their symmetry checks.

At large spectral parameter the double-row operator degenerates, block by
block in the auxiliary space, into a fixed matrix of operators on the quantum
sites alone. Those blocks are the boundary charges: quadratic combinations of
the coproduct tower entries dressed by the right boundary data. They commute
with every Hecke generator of the boundary representation, hence with the
Hamiltonian, and with the whole transfer matrix at every spectral parameter.
The lone exception is the (n, n) entry, which picks up the affine corners and
fails to commute by an exactly computable defect proportional to the extreme
off-diagonal blocks of the double row.

The same charges arise three independent ways and the suite confronts all of
them pairwise:

* products of N-fold coproducts of the tower entries with the boundary
  weights inserted (the defining formulas),
* the one-site coproduct recursion that peels the first site off,
* numerical extraction from the double row at large real spectral parameter.

In the homogeneous gradation the extraction is a straight block read-off.
In the principal gradation every matrix entry is graded by exp(2*lam/n)
and the charge matrix splits across two consecutive grades, so the blocks
are separated by evaluating at lam + i*pi*k for k = 0, 1, 2 and projecting
the grade classes with a discrete Fourier sum. That keeps the real part of
lam moderate and avoids subtractive loss between grades of very different
size.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, replace

import numpy as np

from .hecke_algebra import build_bulk_generator, rep_boundary, rep_bulk
from .params import DegenerateParameters, ModelParams
from .quantum_algebra import (
    GeneratorKind,
    GeneratorLabel,
    TElementFamily,
    TElementLabel,
    block_closed_rep,
    coproduct_rep,
    t_element_rep,
)
from .reflection_k import LeftBoundaryKind, build_k_explicit
from .reporting import ReportBuilder, VerificationReport
from .sampling import rng_from_seed, sample_spectral
from .spin_chain import (
    ChainSpec,
    build_double_row,
    build_hamiltonian,
    build_transfer,
)
from .tensor_core import (
    Operator,
    basis_matrix,
    embed_at,
    frob,
    permutation_swap,
)
from .yang_baxter import Gauge

_FLOOR = 1e-300


def _lab(family: TElementFamily, i: int, j: int) -> TElementLabel:
    return TElementLabel(family, i, j)


_T = TElementFamily


def boundary_entry_indices(n: int) -> tuple[tuple[int, int], ...]:
    """Auxiliary-space positions where the boundary charges live.

    The full first row and first column survive, together with the interior
    square 2..n-1 in both indices. Positions (n, k) and (k, n) with k >= 2
    vanish identically; (n, n) is the affine charge and is kept separate.
    """
    idx = [(1, 1)]
    for i in range(2, n + 1):
        idx.append((1, i))
        idx.append((i, 1))
    for k in range(2, n):
        for l in range(2, n):
            idx.append((k, l))
    return tuple(idx)


@dataclass(frozen=True)
class ChargeSet:
    """Boundary charges on ``sites`` quantum spaces.

    ``entries`` maps auxiliary positions from :func:`boundary_entry_indices`
    to operators; every one of them commutes with the boundary Hecke
    representation and with the open transfer matrix. ``affine`` is the
    (n, n) charge, the only entry carrying the affine corner generators, and
    the only one with a nonvanishing transfer-matrix defect.
    """

    params: ModelParams
    sites: int
    entries: dict
    affine: Operator


# ---------------------------------------------------------------------------
# coproduct towers of the generating-matrix entries
# ---------------------------------------------------------------------------


def build_bulk_charges(
    params: ModelParams,
    N: int,
    sign: str = "plus",
    first_site_lambda: complex | None = None,
) -> dict:
    """N-fold coproducts of the generating-matrix entries.

    The plus family returns the upper-triangular ``t`` tower, the
    lower-triangular hatted tower, and the two affine corners. The diagonal
    of either tower is the group-like Cartan square; superdiagonal entries
    together with the hatted corner are exactly the operators that survive
    at next-to-leading order in the principal-gradation asymptotics. The
    minus family mirrors this with the inverse dressing and the remaining
    affine corner.
    """
    if sign not in ("plus", "minus"):
        raise ValueError(f"unknown charge family sign {sign!r}")
    n = params.n

    def rep(family, i, j):
        return t_element_rep(
            params, _lab(family, i, j), L=N, first_site_lambda=first_site_lambda
        )

    if sign == "plus":
        upper = {
            (i, j): rep(_T.t, i, j)
            for i in range(1, n + 1)
            for j in range(i, n + 1)
        }
        lower = {
            (i, j): rep(_T.t_hat, i, j)
            for j in range(1, n + 1)
            for i in range(j, n + 1)
        }
        return {
            "t": upper,
            "t_hat": lower,
            "corner": rep(_T.t0_n1, n, 1),
            "corner_hat": rep(_T.t0hat_1n, 1, n),
        }
    lower = {
        (i, j): rep(_T.t_minus, i, j)
        for j in range(1, n + 1)
        for i in range(j, n + 1)
    }
    return {"t": lower, "corner": rep(_T.t0_minus_1n, 1, n)}


def build_affine_charge(
    params: ModelParams, N: int, first_site_lambda: complex | None = None
) -> Operator:
    """The (n, n) boundary charge.

    Quadratic in the last Cartan with both affine corners attached; the
    boundary parameter zeta enters only here, through the cosh weight in
    front of the Cartan square.
    """
    n = params.n

    def rep(family, i, j):
        return t_element_rep(
            params, _lab(family, i, j), L=N, first_site_lambda=first_site_lambda
        ).mat

    tnn = rep(_T.t, n, n)
    c2 = 2.0 * cmath.cosh(2j * params.mu * params.zeta)
    mat = (
        -c2 * (tnn @ tnn)
        - 1j * (tnn @ rep(_T.t0hat_1n, 1, n))
        - 1j * (rep(_T.t0_n1, n, 1) @ rep(_T.t_hat, n, n))
    )
    return Operator(mat, (n,) * N)


def build_boundary_charges(
    params: ModelParams, N: int, first_site_lambda: complex | None = None
) -> ChargeSet:
    """Assemble the full charge set from products of coproduct towers.

    The first row and column mix the two towers through the right boundary
    weights; the interior block is a plain quadratic sum. All entries are
    spectral-parameter independent once the sites are fixed (the optional
    first-site evaluation point only matters for the affine corners).
    """
    n = params.n
    bulk = build_bulk_charges(params, N, "plus", first_site_lambda)
    T = {k: v.mat for k, v in bulk["t"].items()}
    That = {k: v.mat for k, v in bulk["t_hat"].items()}
    em = cmath.exp(1j * params.mu * params.m)
    ch2 = em + 1.0 / em
    dims = (n,) * N
    d = n**N

    entries: dict = {}
    acc = ch2 * (T[1, 1] @ That[1, 1])
    acc -= 1j * (T[1, n] @ That[1, 1])
    acc -= 1j * (T[1, 1] @ That[n, 1])
    for j in range(2, n):
        acc = acc + em * (T[1, j] @ That[j, 1])
    entries[(1, 1)] = Operator(acc, dims)
    for i in range(2, n + 1):
        acc = -1j * (T[1, 1] @ That[n, i])
        for j in range(i, n):
            acc = acc + em * (T[1, j] @ That[j, i])
        entries[(1, i)] = Operator(acc, dims)
        acc = -1j * (T[i, n] @ That[1, 1])
        for j in range(i, n):
            acc = acc + em * (T[i, j] @ That[j, 1])
        entries[(i, 1)] = Operator(acc, dims)
    for k in range(2, n):
        for l in range(2, n):
            acc = np.zeros((d, d), dtype=np.complex128)
            for j in range(max(k, l), n):
                acc = acc + em * (T[k, j] @ That[j, l])
            entries[(k, l)] = Operator(acc, dims)
    affine = build_affine_charge(params, N, first_site_lambda)
    return ChargeSet(params=params, sites=N, entries=entries, affine=affine)


# ---------------------------------------------------------------------------
# single-site closed forms
# ---------------------------------------------------------------------------


def eval_Q_rep(params: ModelParams, which: tuple, lam: complex = 0.0) -> Operator:
    """Single-site charge under the evaluation representation.

    The first row and column close in matrix units with simple boundary
    weights; the (1, n) and (n, 1) entries coincide and are group-like up to
    the scalar -i. Only the (n, n) entry remembers the evaluation point,
    through the affine corners. The interior block has no displayed closed
    form and is built from the defining quadratic products instead.
    """
    n = params.n
    q = params.q
    w = params.w
    i, j = which
    allowed = set(boundary_entry_indices(n))
    allowed.add((n, n))
    if which not in allowed:
        raise ValueError(f"no boundary charge at position {which} for n={n}")
    em = cmath.exp(1j * params.mu * params.m)
    ish = 0.5j * w  # i sinh(i mu)

    def e(a, b):
        return basis_matrix(n, a, b)

    qcorner = np.eye(n, dtype=np.complex128)
    qcorner[0, 0] = q
    qcorner[n - 1, n - 1] *= q
    if which == (1, 1):
        hdown = np.eye(n, dtype=np.complex128)
        hdown[0, 0] = q
        hdown[n - 1, n - 1] = 1.0 / q
        inner = -(cmath.cosh(1j * params.mu * params.m) / ish) * hdown
        inner += e(n, 1) + e(1, n)
        for k in range(2, n):
            inner += 1j * w * em * e(k, k)
        mat = -1j * w * (qcorner @ inner)
    elif i == 1 and 2 <= j <= n - 1:
        mat = -1j * w * (1j * em * e(j, 1) + e(j, n))
    elif j == 1 and 2 <= i <= n - 1:
        mat = -1j * w * (1j * em * e(1, i) + e(n, i))
    elif which in ((1, n), (n, 1)):
        mat = -1j * qcorner
    elif which == (n, n):
        hup = np.eye(n, dtype=np.complex128)
        hup[0, 0] = 1.0 / q
        hup[n - 1, n - 1] = q
        inner = (cmath.cosh(2j * params.mu * params.zeta) / ish) * hup
        inner += cmath.exp(-2 * lam) * e(n, 1) + cmath.exp(2 * lam) * e(1, n)
        mat = -1j * w * (qcorner @ inner)
    else:
        mat = np.zeros((n, n), dtype=np.complex128)
        for jj in range(max(i, j), n):
            a = t_element_rep(params, _lab(_T.t, i, jj), L=1, first_site_lambda=lam)
            b = t_element_rep(
                params, _lab(_T.t_hat, jj, j), L=1, first_site_lambda=lam
            )
            mat += em * (a.mat @ b.mat)
    return Operator(mat, (n,))


# ---------------------------------------------------------------------------
# coproduct recursion
# ---------------------------------------------------------------------------


def _t_prime_rep(
    params: ModelParams,
    label: TElementLabel,
    L: int,
    first_site_lambda: complex | None = None,
) -> np.ndarray:
    """Primed L-fold coproduct image of a tower entry.

    Only the top split is flipped: the distinguished site sits in the first
    tensor slot and everything below it carries plain coproducts. For the
    towers this is the factorized sum read in the opposite order; the affine
    corners keep their two-term split with the legs exchanged.
    """
    if L == 1:
        return t_element_rep(
            params, label, L=1, first_site_lambda=first_site_lambda
        ).mat
    n = params.n

    def one(lab):
        return t_element_rep(
            params, lab, L=1, first_site_lambda=first_site_lambda
        ).mat

    def rest(lab):
        return t_element_rep(params, lab, L=L - 1).mat

    fam, i, j = label.family, label.i, label.j
    if fam == _T.t:
        return sum(
            np.kron(one(_lab(fam, i, k)), rest(_lab(fam, k, j)))
            for k in range(i, j + 1)
        )
    if fam == _T.t_hat:
        return sum(
            np.kron(one(_lab(fam, k, j)), rest(_lab(fam, i, k)))
            for k in range(j, i + 1)
        )
    if fam in (_T.t0_n1, _T.t0hat_1n):
        return np.kron(one(label), rest(_lab(_T.t, 1, 1))) + np.kron(
            one(_lab(_T.t, n, n)), rest(label)
        )
    raise ValueError(f"no primed realization for family {fam}")


def coproduct_charges(
    params: ModelParams,
    L: int,
    which: tuple,
    variant: str = "delta",
    first_site_lambda: complex | None = None,
) -> Operator:
    """Charge on L sites through the one-site splitting of the coproduct.

    Peels the first site off: the top split carries single-site charges and
    tower entries, everything below is a plain (L-1)-fold coproduct. The
    primed variant flips only that top split. Entries without a displayed
    recursion, namely (1, n), (n, 1) and the interior block, go through the
    homomorphism property of the (primed) coproduct instead.
    """
    n = params.n
    allowed = set(boundary_entry_indices(n))
    allowed.add((n, n))
    if which not in allowed:
        raise ValueError(f"no boundary charge at position {which} for n={n}")
    if variant not in ("delta", "delta_prime"):
        raise ValueError(f"unknown coproduct variant {variant!r}")
    if L < 1:
        raise ValueError("need at least one tensor factor")
    lam0 = 0.0 if first_site_lambda is None else first_site_lambda
    if L == 1:
        return eval_Q_rep(params, which, lam0)
    i, j = which
    em = cmath.exp(1j * params.mu * params.m)
    dims = (n,) * L
    dfull = n**L
    kron = np.kron

    def one(fam, a, b):
        return t_element_rep(
            params, _lab(fam, a, b), L=1, first_site_lambda=first_site_lambda
        ).mat

    def rest(fam, a, b):
        return t_element_rep(params, _lab(fam, a, b), L=L - 1).mat

    interior = 2 <= i <= n - 1 and 2 <= j <= n - 1
    if which in ((1, n), (n, 1)) or interior:
        if variant == "delta":

            def img(fam, a, b):
                return t_element_rep(
                    params, _lab(fam, a, b), L=L, first_site_lambda=first_site_lambda
                ).mat

        else:

            def img(fam, a, b):
                return _t_prime_rep(params, _lab(fam, a, b), L, first_site_lambda)

        if which == (1, n):
            mat = -1j * img(_T.t, 1, 1) @ img(_T.t_hat, n, n)
        elif which == (n, 1):
            mat = -1j * img(_T.t, n, n) @ img(_T.t_hat, 1, 1)
        else:
            mat = np.zeros((dfull, dfull), dtype=np.complex128)
            for jj in range(max(i, j), n):
                mat += em * (img(_T.t, i, jj) @ img(_T.t_hat, jj, j))
        return Operator(mat, dims)

    def site_q(pos):
        return eval_Q_rep(params, pos, lam0).mat

    def rec(pos):
        return coproduct_charges(params, L - 1, pos, "delta").mat

    mat = np.zeros((dfull, dfull), dtype=np.complex128)
    if variant == "delta":
        if which == (n, n):
            c2 = 2.0 * cmath.cosh(2j * params.mu * params.zeta)
            site_corner = one(_T.t, 1, 1) @ one(_T.t, n, n)
            dnn = rest(_T.t, n, n)
            mat = kron(site_q((n, n)) + c2 * site_corner, dnn @ dnn)
            mat += kron(site_corner, rec((n, n)))
        elif which == (1, 1):
            for k in range(1, n):
                mat += kron(site_q((1, k)), rest(_T.t, 1, 1) @ rest(_T.t_hat, k, 1))
            for k in range(2, n):
                mat += kron(site_q((k, 1)), rest(_T.t, 1, k) @ rest(_T.t, 1, 1))
            for jj in range(2, n):
                for k in range(2, jj + 1):
                    for l in range(2, jj + 1):
                        mat += em * kron(
                            one(_T.t, k, jj) @ one(_T.t_hat, jj, l),
                            rest(_T.t, 1, k) @ rest(_T.t_hat, l, 1),
                        )
            mat += -1j * kron(
                one(_T.t, 1, 1) @ one(_T.t, n, n),
                rest(_T.t, 1, n) @ rest(_T.t, 1, 1)
                + rest(_T.t, 1, 1) @ rest(_T.t_hat, n, 1),
            )
        elif i == 1:
            ii = j
            for k in range(ii, n):
                mat += kron(site_q((1, k)), rest(_T.t, 1, 1) @ rest(_T.t_hat, k, ii))
            for jj in range(ii, n):
                for k in range(2, jj + 1):
                    for l in range(ii, jj + 1):
                        mat += em * kron(
                            one(_T.t, k, jj) @ one(_T.t_hat, jj, l),
                            rest(_T.t, 1, k) @ rest(_T.t_hat, l, ii),
                        )
            mat += -1j * kron(
                one(_T.t, 1, 1) @ one(_T.t, n, n),
                rest(_T.t, 1, 1) @ rest(_T.t_hat, n, ii),
            )
        else:
            ii = i
            for k in range(ii, n):
                mat += kron(site_q((k, 1)), rest(_T.t, ii, k) @ rest(_T.t, 1, 1))
            for jj in range(ii, n):
                for k in range(ii, jj + 1):
                    for l in range(2, jj + 1):
                        mat += em * kron(
                            one(_T.t, k, jj) @ one(_T.t_hat, jj, l),
                            rest(_T.t, ii, k) @ rest(_T.t_hat, l, 1),
                        )
            mat += -1j * kron(
                one(_T.t, n, n) @ one(_T.t, 1, 1),
                rest(_T.t, ii, n) @ rest(_T.t, 1, 1),
            )
        return Operator(mat, dims)

    if which == (n, n):
        c2 = 2.0 * cmath.cosh(2j * params.mu * params.zeta)
        legs = rest(_T.t, 1, 1) @ rest(_T.t, n, n)
        dnn1 = one(_T.t, n, n)
        mat = kron(dnn1 @ dnn1, rec((n, n)) + c2 * legs)
        mat += kron(site_q((n, n)), legs)
    elif which == (1, 1):
        legs = rest(_T.t, 1, 1) @ rest(_T.t, n, n)
        for k in range(1, n):
            mat += kron(one(_T.t, 1, 1) @ one(_T.t_hat, k, 1), rec((1, k)))
        for k in range(2, n):
            mat += kron(one(_T.t, 1, k) @ one(_T.t, 1, 1), rec((k, 1)))
        for jj in range(2, n):
            for k in range(2, jj + 1):
                for l in range(2, jj + 1):
                    mat += em * kron(
                        one(_T.t, 1, k) @ one(_T.t_hat, l, 1),
                        rest(_T.t, k, jj) @ rest(_T.t_hat, jj, l),
                    )
        mat += -1j * kron(
            one(_T.t, 1, n) @ one(_T.t, 1, 1)
            + one(_T.t, 1, 1) @ one(_T.t_hat, n, 1),
            legs,
        )
    elif i == 1:
        ii = j
        for k in range(ii, n):
            mat += kron(one(_T.t, 1, 1) @ one(_T.t_hat, k, ii), rec((1, k)))
        for jj in range(ii, n):
            for k in range(2, jj + 1):
                for l in range(ii, jj + 1):
                    mat += em * kron(
                        one(_T.t, 1, k) @ one(_T.t_hat, l, ii),
                        rest(_T.t, k, jj) @ rest(_T.t_hat, jj, l),
                    )
        mat += -1j * kron(
            one(_T.t, 1, 1) @ one(_T.t_hat, n, ii),
            rest(_T.t, 1, 1) @ rest(_T.t, n, n),
        )
    else:
        ii = i
        for k in range(ii, n):
            mat += kron(one(_T.t, ii, k) @ one(_T.t, 1, 1), rec((k, 1)))
        for jj in range(ii, n):
            for k in range(ii, jj + 1):
                for l in range(2, jj + 1):
                    mat += em * kron(
                        one(_T.t, ii, k) @ one(_T.t_hat, l, 1),
                        rest(_T.t, k, jj) @ rest(_T.t_hat, jj, l),
                    )
        mat += -1j * kron(
            one(_T.t, ii, n) @ one(_T.t, 1, 1),
            rest(_T.t, n, n) @ rest(_T.t, 1, 1),
        )
    return Operator(mat, dims)


def cyclic_shift(n: int, N: int) -> Operator:
    """Permutation bringing the last of N sites to the front.

    Conjugation by this operator realizes the primed coproduct when every
    site carries the same representation, which pins the primed recursion
    against the plain one without reusing any of its code.
    """
    dims = [n] * N
    c = Operator(np.eye(n**N, dtype=np.complex128), tuple(dims))
    for k in range(1, N):
        c = c @ embed_at(permutation_swap(n), [k, k + 1], dims)
    return c


# ---------------------------------------------------------------------------
# asymptotic extraction from the double row
# ---------------------------------------------------------------------------


def _charge_block(charges: ChargeSet, i: int, j: int, d: int) -> np.ndarray:
    if (i, j) in charges.entries:
        return charges.entries[(i, j)].mat
    n = charges.params.n
    if (i, j) == (n, n):
        return charges.affine.mat
    return np.zeros((d, d), dtype=np.complex128)


def asymptotic_charges_residual(
    params: ModelParams, N: int, re_lambda: float = 15.0
) -> tuple[float, complex]:
    """Homogeneous-gradation read-off of the charges from the double row.

    At large real spectral parameter the auxiliary blocks on the surviving
    positions approach the corresponding charges times one overall scalar;
    the remaining positions vanish at that order. The (n, n) block sits one
    order down: it approaches the affine charge times the same scalar
    suppressed by exactly exp(-2*lam), and the fit enforces that with no
    extra freedom.
    """
    p = replace(params, sites=N)
    spec = ChainSpec(params=p)
    lam = complex(re_lambda)
    dr = build_double_row(spec, lam).mat
    charges = build_boundary_charges(p, N)
    n = p.n
    d = n**N

    def block(i, j):
        return dr[(i - 1) * d : i * d, (j - 1) * d : j * d]

    surviving = set(charges.entries)
    num = 0.0j
    den = 0.0
    for i, j in surviving:
        qm = charges.entries[(i, j)].mat
        num += np.vdot(qm, block(i, j))
        den += np.vdot(qm, qm).real
    s = num / den
    err = 0.0
    norm = 0.0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if (i, j) == (n, n):
                continue
            b = block(i, j)
            qm = _charge_block(charges, i, j, d)
            err += np.linalg.norm(b - s * qm) ** 2
            norm += np.linalg.norm(b) ** 2
    res = np.sqrt(err / norm)
    scaled = block(n, n) / cmath.exp(-2 * lam)
    res_aff = np.linalg.norm(scaled - s * charges.affine.mat) / np.linalg.norm(scaled)
    return float(max(res, res_aff)), complex(s)


def principal_asymptotic_residual(
    params: ModelParams, N: int, re_lambda: float = 12.0
) -> float:
    """Principal-gradation split of the double row against the charges.

    For n = 3 the leading order occupies the antidiagonal blocks (1,3),
    (2,2), (3,1) and the next grade down, suppressed by exp(-2*lam/3),
    occupies (1,2), (2,1) and the affine (3,3). One common scalar must fit
    both orders. Grade classes are separated exactly by evaluating at
    lam + i*pi*k and Fourier-projecting over k = 0, 1, 2; the remaining
    within-class truncation falls off like exp(-2*lam).
    """
    if params.n != 3:
        raise ValueError("the principal asymptotic split is recorded for n=3")
    n = 3
    p = replace(params, sites=N)
    spec = ChainSpec(params=p, gauge=Gauge.principal)
    d = n**N
    mats = [
        build_double_row(spec, complex(re_lambda, np.pi * k)).mat for k in range(3)
    ]

    def project(g):
        acc = np.zeros_like(mats[0])
        for k in range(3):
            acc = acc + cmath.exp(-2j * np.pi * k * g / 3) * mats[k]
        return acc / 3.0

    charges = build_boundary_charges(p, N)
    lead_pos = ((1, 3), (2, 2), (3, 1))
    corr_pos = ((1, 2), (2, 1), (3, 3))
    zero_pos = ((1, 1), (2, 3), (3, 2))

    def block(m, i, j):
        return m[(i - 1) * d : i * d, (j - 1) * d : j * d]

    # the overall scalar carries its own grade; find it as the class where
    # the leading blocks actually live
    proj = [project(g) for g in range(3)]
    weights = [
        sum(np.linalg.norm(block(proj[g], i, j)) for (i, j) in lead_pos)
        for g in range(3)
    ]
    g0 = int(np.argmax(weights))
    lead = proj[g0]
    corr = proj[(g0 - 1) % 3]
    eps = cmath.exp(-2.0 * re_lambda / 3.0)

    num = 0.0j
    den = 0.0
    for i, j in lead_pos:
        qm = _charge_block(charges, i, j, d)
        num += np.vdot(qm, block(lead, i, j))
        den += np.vdot(qm, qm).real
    s = num / den

    err = 0.0
    norm = 0.0
    for i, j in lead_pos:
        qm = _charge_block(charges, i, j, d)
        err += np.linalg.norm(block(lead, i, j) - s * qm) ** 2
        norm += np.linalg.norm(block(lead, i, j)) ** 2
    for i, j in corr_pos:
        qm = _charge_block(charges, i, j, d)
        scaled = block(corr, i, j) / eps
        err += np.linalg.norm(scaled - s * qm) ** 2
        norm += np.linalg.norm(scaled) ** 2
    for i, j in zero_pos:
        err += np.linalg.norm(block(lead, i, j)) ** 2
        err += np.linalg.norm(block(corr, i, j) / eps) ** 2
    return float(np.sqrt(err / norm))


# ---------------------------------------------------------------------------
# braid exchange of the charge matrix
# ---------------------------------------------------------------------------


def braid_exchange_residuals(
    params: ModelParams, N: int, first_site_lambda: complex | None = None
) -> tuple[float, float]:
    """Four-term exchange of the braid image with the charge matrix.

    The charge matrix, spread over two auxiliary legs, plays the role of a
    constant boundary solution braided by P g^{+-1} on the leg pair. Both
    signs of the braid generator are exchanged against the plus realization
    on the inner factors. No spectral parameter enters.
    """
    n = params.n
    charges = build_boundary_charges(params, N, first_site_lambda)
    dq = n**N
    idq = np.eye(dq, dtype=np.complex128)
    idn = np.eye(n, dtype=np.complex128)
    u = build_bulk_generator(params).mat
    g = {
        +1: u + params.q * np.eye(n * n, dtype=np.complex128),
        -1: u + np.eye(n * n, dtype=np.complex128) / params.q,
    }
    pswap = permutation_swap(n).mat
    r = {s: np.kron(pswap @ g[s], idq) for s in (+1, -1)}
    rhat = {s: np.kron(g[s] @ pswap, idq) for s in (+1, -1)}
    t1 = np.zeros((n * n * dq,) * 2, dtype=np.complex128)
    t2 = np.zeros_like(t1)
    for (i, j), op in charges.entries.items():
        t1 += np.kron(basis_matrix(n, i, j), np.kron(idn, op.mat))
        t2 += np.kron(idn, np.kron(basis_matrix(n, i, j), op.mat))

    def res(sign):
        lhs = r[sign] @ t1 @ rhat[+1] @ t2
        rhs = t2 @ r[+1] @ t1 @ rhat[sign]
        return float(
            np.linalg.norm(lhs - rhs)
            / max(np.linalg.norm(lhs), np.linalg.norm(rhs), _FLOOR)
        )

    return res(+1), res(-1)


# ---------------------------------------------------------------------------
# transfer-matrix commutators and the displayed exchange relations
# ---------------------------------------------------------------------------


def double_row_blocks(spec: ChainSpec, lam: complex) -> dict:
    """Auxiliary-space blocks of the double row at one spectral parameter."""
    p = spec.params
    n, d = p.n, p.n**p.sites
    dr = build_double_row(spec, lam).mat
    return {
        (i, j): dr[(i - 1) * d : i * d, (j - 1) * d : j * d]
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }


def affine_transfer_defect(
    spec: ChainSpec, lam: complex, charges: ChargeSet, e11enn: np.ndarray
) -> tuple[float, float]:
    """Defect of the affine charge against the open transfer matrix.

    Returns the residual of the closed form, which involves only the extreme
    off-diagonal blocks of the double row, and the size of the commutator
    itself; both are relative to frob(t) frob(charge). The commutator must
    come out nonzero: the affine charge is genuinely outside the symmetry.
    """
    p = spec.params
    n, d = p.n, p.n**p.sites
    t = build_transfer(spec, lam).mat
    tnn = charges.affine.mat
    comm = t @ tnn - tnn @ t
    dr = build_double_row(spec, lam).mat
    b1n = dr[0:d, (n - 1) * d :]
    cn1 = dr[(n - 1) * d :, 0:d]
    closed = (
        2j * p.w * cmath.sinh(2 * lam + 1j * n * p.mu) * ((b1n - cn1) @ e11enn)
    )
    scale = max(frob(t) * frob(tnn), _FLOOR)
    return (
        float(np.linalg.norm(comm - closed) / scale),
        float(np.linalg.norm(comm) / scale),
    )


def _comm_zero(a: np.ndarray, b: np.ndarray) -> float:
    return float(
        np.linalg.norm(a @ b - b @ a)
        / max(np.linalg.norm(a) * np.linalg.norm(b), _FLOOR)
    )


def _eq_res(lhs: np.ndarray, rhs: np.ndarray) -> float:
    return float(
        np.linalg.norm(lhs - rhs)
        / max(np.linalg.norm(lhs), np.linalg.norm(rhs), _FLOOR)
    )


def exchange_relation_residuals(
    spec: ChainSpec,
    lam: complex,
    charges: ChargeSet,
    cache: dict,
) -> dict:
    """Displayed exchange relations between double-row blocks and the
    unbroken quantum-group generators, grouped by display.

    ``cache`` must hold the N-site coproducts: "e"/"f"/"hp"/"hm" keyed by
    simple-root index and "eps" keyed by 1..n (Cartan squares). Relations
    whose index range is empty at the given n are simply absent from the
    result; at n = 3 the middle-index family degenerates to the diagonal
    statements, which are kept.
    """
    p = spec.params
    n = p.n
    q = p.q
    w = p.w
    em = cmath.exp(1j * p.mu * p.m)
    qh = cmath.sqrt(q)  # principal branch, |mu| small enough at desk scale
    blk = double_row_blocks(spec, lam)
    a_blk = {i: blk[(i, i)] for i in range(1, n + 1)}
    out: dict = {}

    def e_cop(idx):
        return cache["e"][idx]

    def f_cop(idx):
        return cache["f"][idx]

    def eps(idx):
        return cache["eps"][idx]

    res: list = []
    for jj in range(2, n - 1):
        ecur = e_cop(jj)
        hm = cache["hm"][jj]
        c = blk[(jj + 1, jj)]
        res.append(_eq_res(ecur @ a_blk[jj] - a_blk[jj] @ ecur, -1.0 / qh * hm @ c))
        res.append(
            _eq_res(ecur @ a_blk[jj + 1] - a_blk[jj + 1] @ ecur, qh * c @ hm)
        )
        for other in range(1, n + 1):
            if other in (jj, jj + 1):
                continue
            res.append(_comm_zero(ecur, a_blk[other]))
    if res:
        out["com2"] = max(res)

    res = []
    for jj in range(2, n - 1):
        fcur = f_cop(jj)
        hm = cache["hm"][jj]
        b = blk[(jj, jj + 1)]
        res.append(_eq_res(fcur @ a_blk[jj] - a_blk[jj] @ fcur, 1.0 / qh * b @ hm))
        res.append(
            _eq_res(fcur @ a_blk[jj + 1] - a_blk[jj + 1] @ fcur, -qh * hm @ b)
        )
        for other in range(1, n + 1):
            if other in (jj, jj + 1):
                continue
            res.append(_comm_zero(fcur, a_blk[other]))
    if res:
        out["com3"] = max(res)

    res = []
    for jj in range(2, n):
        for other in range(1, n + 1):
            res.append(_comm_zero(eps(jj), a_blk[other]))
    for jj in range(2, n - 1):
        hp, hm = cache["hp"][jj], cache["hm"][jj]
        b = blk[(jj, jj + 1)]
        c = blk[(jj + 1, jj)]
        res.append(_eq_res(qh * hp @ b, 1.0 / qh * b @ hp))
        res.append(_eq_res(1.0 / qh * hm @ b, qh * b @ hm))
        res.append(_eq_res(1.0 / qh * hp @ c, qh * c @ hp))
        res.append(_eq_res(qh * hm @ c, 1.0 / qh * c @ hm))
    if res:
        out["com4"] = max(res)

    res = []
    tsum = np.zeros_like(a_blk[1])
    for idx in range(1, n + 1):
        tsum = tsum + q ** (n - 2 * idx + 1) * a_blk[idx]
    for jj in range(2, n - 1):
        hm = cache["hm"][jj]
        b = blk[(jj, jj + 1)]
        c = blk[(jj + 1, jj)]
        pref = q ** (n - 2 * jj)
        # Both sides of these weighted-sum relations cancel to zero at
        # generic parameters (the right side by the half-Cartan exchange
        # rules, the left because tsum is the transfer matrix), so the
        # residual is measured against the uncancelled constituents.
        lhs_e = e_cop(jj) @ tsum - tsum @ e_cop(jj)
        rhs_e = pref * (-qh * hm @ c + 1.0 / qh * c @ hm)
        den_e = max(
            frob(e_cop(jj)) * frob(tsum), abs(pref) * frob(hm) * frob(c), 1e-300
        )
        res.append(frob(lhs_e - rhs_e) / den_e)
        lhs_f = f_cop(jj) @ tsum - tsum @ f_cop(jj)
        rhs_f = pref * (qh * b @ hm - 1.0 / qh * hm @ b)
        den_f = max(
            frob(f_cop(jj)) * frob(tsum), abs(pref) * frob(hm) * frob(b), 1e-300
        )
        res.append(frob(lhs_f - rhs_f) / den_f)
    if res:
        out["com4b"] = max(res)

    if n == 3:
        e22sq = eps(2) @ eps(2)
        corners = eps(1) @ eps(3)
        t12 = charges.entries[(1, 2)].mat
        t21 = charges.entries[(2, 1)].mat
        t11 = charges.entries[(1, 1)].mat
        b12, b13, b23 = blk[(1, 2)], blk[(1, 3)], blk[(2, 3)]
        c21, c31, c32 = blk[(2, 1)], blk[(3, 1)], blk[(3, 2)]

        def comm(x, y):
            return x @ y - y @ x

        out["com5"] = max(
            _eq_res(comm(a_blk[1], t12), -em * w / q * b12 @ e22sq),
            _eq_res(comm(a_blk[3], t12), 1j * w * c32 @ corners),
            _eq_res(
                comm(a_blk[2], t12),
                em * w / q * e22sq @ b12 - 1j * w / q * corners @ c32,
            ),
            _eq_res(
                comm(t12, c21),
                1j * w / q * corners @ c31
                - em * w / q * e22sq @ a_blk[1]
                + em * w / q * a_blk[2] @ e22sq,
            ),
        )
        out["com6"] = max(
            _eq_res(comm(a_blk[1], t21), em * w / q * e22sq @ c21),
            _eq_res(comm(a_blk[3], t21), -1j * w * corners @ b23),
            _eq_res(
                comm(a_blk[2], t21),
                -em * w / q * c21 @ e22sq + 1j * w / q * b23 @ corners,
            ),
            _eq_res(
                comm(t21, b12),
                -1j * w / q * b13 @ corners
                + em * w / q * a_blk[1] @ e22sq
                - em * w / q * e22sq @ a_blk[2],
            ),
        )
        out["com7"] = max(
            _eq_res(
                comm(a_blk[1], t11),
                -w / q * b12 @ t21
                + 1j * w / q * b13 @ corners
                + w / q * t12 @ c21
                - 1j * w / q * corners @ c31,
            ),
            _eq_res(
                comm(a_blk[2], t11),
                -w * q * c21 @ t12
                + w * q * t21 @ b12
                + em * w * w * (e22sq @ a_blk[2] - a_blk[2] @ e22sq),
            ),
            _eq_res(
                comm(a_blk[3], t11),
                -1j * w * q * corners @ b13 + 1j * w * q * c31 @ corners,
            ),
        )
        out["com9"] = max(
            _eq_res(q * corners @ c32, c32 @ corners),
            _eq_res(e22sq @ b12, q * q * b12 @ e22sq),
            _eq_res(corners @ b23, q * b23 @ corners),
            _eq_res(q * q * e22sq @ c21, c21 @ e22sq),
            _comm_zero(corners, b13),
            _comm_zero(corners, c31),
        )

    e11enn = cache["eps"][1] @ cache["eps"][n]
    b1n = blk[(1, n)]
    cn1 = blk[(n, 1)]
    tnn = charges.affine.mat
    ep, emm = cmath.exp(2 * lam), cmath.exp(-2 * lam)
    res = [
        _eq_res(
            a_blk[1] @ tnn - tnn @ a_blk[1],
            1j * w * q * ep * (b1n @ e11enn - e11enn @ cn1),
        ),
        _eq_res(
            a_blk[n] @ tnn - tnn @ a_blk[n],
            1j * w / q * emm * (cn1 @ e11enn - e11enn @ b1n),
        ),
    ]
    for jj in range(2, n):
        res.append(_comm_zero(a_blk[jj], tnn))
    out["com8"] = max(res)
    out["com11"] = max(_comm_zero(e11enn, b1n), _comm_zero(e11enn, cn1))
    return out


# ---------------------------------------------------------------------------
# spectral degeneracy witness
# ---------------------------------------------------------------------------


def degeneracy_witness(
    params: ModelParams, N: int, cluster_tol: float = 1e-8
) -> float:
    """Largest off-ray defect of any charge on an isolated eigenvector.

    The charges commute with the Hamiltonian, so wherever a charge turns an
    eigenvector away from its own ray the eigenvalue must be degenerate.
    Contrapositively, every eigenvector attached to an isolated eigenvalue
    has to be a joint eigenvector of the whole charge set; the returned
    defect measures how far the worst one is from that, relative to the
    spectral norm of the charge, and should sit at solver noise.
    """
    p = replace(params, sites=N)
    h = build_hamiltonian(ChainSpec(params=p)).mat
    evals, vecs = np.linalg.eig(h)
    scale = max(1.0, float(np.max(np.abs(evals))))
    charges = build_boundary_charges(p, N)
    ops = [op.mat for op in charges.entries.values()]
    opnorms = [np.linalg.norm(m, 2) for m in ops]
    worst = 0.0
    for a in range(evals.size):
        close = np.abs(evals - evals[a]) < cluster_tol * scale
        if int(close.sum()) > 1:
            continue
        v = vecs[:, a]
        v = v / np.linalg.norm(v)
        for m, nm in zip(ops, opnorms):
            y = m @ v
            off = y - v * np.vdot(v, y)
            worst = max(worst, float(np.linalg.norm(off) / max(nm, _FLOOR)))
    return worst


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------


def verify_symmetry_suite(
    spec: ChainSpec, samples: int = 5, tol: float = 1e-9, seed: int = 0
) -> VerificationReport:
    """Run every boundary-charge check at the configured size.

    The symmetry statements are made for the homogeneous gradation with a
    trivial left boundary and the explicit right boundary, so the suite pins
    that setting internally; the incoming spec contributes the model
    parameters, the site count, and the diagonal-family data used by the
    residual-symmetry checks.
    """
    p = spec.params
    n, N = p.n, p.sites
    rng = rng_from_seed(seed)
    rb = ReportBuilder(
        "symmetry",
        {"n": n, "sites": N, "samples": samples, "seed": seed, "tol": tol,
         "diag_block": spec.diag_block},
    )

    hspec = ChainSpec(params=p)
    aspec = ChainSpec(params=p, left_boundary=LeftBoundaryKind.affine_limit)
    tspec = ChainSpec(params=p, right_boundary="trivial")
    dspec = ChainSpec(
        params=p, right_boundary="diagonal", diag_block=spec.diag_block, xi=spec.xi
    )
    charges = build_boundary_charges(p, N)
    all_positions = list(charges.entries.keys())

    cache = {
        "e": {i: coproduct_rep(p, GeneratorLabel(GeneratorKind.E, i), N).mat
              for i in range(1, n)},
        "f": {i: coproduct_rep(p, GeneratorLabel(GeneratorKind.F, i), N).mat
              for i in range(1, n)},
        "hp": {i: coproduct_rep(p, GeneratorLabel(GeneratorKind.HCARTAN, i), N).mat
               for i in range(1, n)},
        "hm": {i: coproduct_rep(
                   p, GeneratorLabel(GeneratorKind.HCARTAN, i, inverse=True), N).mat
               for i in range(1, n)},
        "eps": {i: t_element_rep(p, _lab(_T.t, i, i), L=N).mat
                for i in range(1, n + 1)},
    }
    e11enn = cache["eps"][1] @ cache["eps"][n]

    # (a) every charge entry commutes with every boundary Hecke generator
    for l in range(N):
        gen = rep_boundary(p) if l == 0 else rep_bulk(p, l)
        res = max(
            _comm_zero(gen.mat, charges.entries[pos].mat) for pos in all_positions
        )
        rb.add(f"symmetry.prop41_l{l}", res, tol)

    # (b) hence with the Hamiltonian
    try:
        h = build_hamiltonian(hspec)
        res = max(
            _comm_zero(h.mat, charges.entries[pos].mat) for pos in all_positions
        )
        rb.add("symmetry.corollary", res, tol)
    except DegenerateParameters:
        rb.add_flag("symmetry.corollary_skipped_degenerate", True)

    # single-site closed forms against the defining products
    lam0 = sample_spectral(rng, p, 1)[0]
    res = 0.0
    em = cmath.exp(1j * p.mu * p.m)
    ch2 = em + 1.0 / em
    one = {
        (fam, a, b): t_element_rep(p, _lab(fam, a, b), L=1, first_site_lambda=lam0).mat
        for fam in (_T.t, _T.t_hat)
        for a in range(1, n + 1)
        for b in range(1, n + 1)
        if (fam == _T.t and a <= b) or (fam == _T.t_hat and a >= b)
    }

    def prod_entry(pos):
        i, j = pos
        if pos == (1, 1):
            acc = ch2 * one[(_T.t, 1, 1)] @ one[(_T.t_hat, 1, 1)]
            acc = acc - 1j * one[(_T.t, 1, n)] @ one[(_T.t_hat, 1, 1)]
            acc = acc - 1j * one[(_T.t, 1, 1)] @ one[(_T.t_hat, n, 1)]
            for jj in range(2, n):
                acc = acc + em * one[(_T.t, 1, jj)] @ one[(_T.t_hat, jj, 1)]
            return acc
        if i == 1:
            acc = -1j * one[(_T.t, 1, 1)] @ one[(_T.t_hat, n, j)]
            for jj in range(j, n):
                acc = acc + em * one[(_T.t, 1, jj)] @ one[(_T.t_hat, jj, j)]
            return acc
        if j == 1:
            acc = -1j * one[(_T.t, i, n)] @ one[(_T.t_hat, 1, 1)]
            for jj in range(i, n):
                acc = acc + em * one[(_T.t, i, jj)] @ one[(_T.t_hat, jj, 1)]
            return acc
        acc = np.zeros((n, n), dtype=np.complex128)
        for jj in range(max(i, j), n):
            acc = acc + em * one[(_T.t, i, jj)] @ one[(_T.t_hat, jj, j)]
        return acc

    for pos in boundary_entry_indices(n):
        res = max(res, _eq_res(eval_Q_rep(p, pos, lam0).mat, prod_entry(pos)))
    aff1 = build_affine_charge(p, 1, first_site_lambda=lam0)
    res = max(res, _eq_res(eval_Q_rep(p, (n, n), lam0).mat, aff1.mat))
    rb.add("symmetry.evalq", res, 1e-11)

    res = max(
        _eq_res(eval_Q_rep(p, (i, 1), lam0).mat, eval_Q_rep(p, (1, i), lam0).mat.T)
        for i in range(2, n + 1)
    )
    rb.add("symmetry.evalq_transpose", res, 1e-12)

    # coproduct recursion against the product construction, both variants
    res = 0.0
    shift = cyclic_shift(n, N)
    shift_inv = shift.transpose()  # permutation, so the transpose inverts it
    for pos in all_positions:
        built = coproduct_charges(p, N, pos)
        res = max(res, _eq_res(built.mat, charges.entries[pos].mat))
    built = coproduct_charges(p, N, (n, n))
    res = max(res, _eq_res(built.mat, charges.affine.mat))
    rb.add("symmetry.recursion", res, 1e-11)

    res = 0.0
    for pos in all_positions + [(n, n)]:
        primed = coproduct_charges(p, N, pos, "delta_prime")
        ref = (
            charges.affine.mat if pos == (n, n) else charges.entries[pos].mat
        )
        res = max(res, _eq_res(primed.mat, (shift @ Operator(ref, (n,) * N) @ shift_inv).mat))
    rb.add("symmetry.recursion_prime", res, 1e-11)

    # block closed forms of the primed coproducts with one evaluated site
    which_list = ["Qnn"] if n != 3 else ["Qnn", "Q11", "Q12", "Q21"]
    cd = {
        "Tnn": charges.affine.mat,
        "T11": charges.entries[(1, 1)].mat,
    }
    if n == 3:
        cd["T12"] = charges.entries[(1, 2)].mat
        cd["T21"] = charges.entries[(2, 1)].mat
    pos_of = {"Qnn": (n, n), "Q11": (1, 1), "Q12": (1, 2), "Q21": (2, 1)}
    res = 0.0
    for wname in which_list:
        closed = block_closed_rep(p, wname, N, lam0, charges=cd)
        generic = coproduct_charges(
            p, N + 1, pos_of[wname], "delta_prime", first_site_lambda=lam0
        )
        res = max(res, _eq_res(generic.mat, closed.mat))
    rb.add("symmetry.block_closed", res, 1e-11)

    # asymptotic read-off, both gradations
    res, _ = asymptotic_charges_residual(p, N)
    rb.add("symmetry.asym_hom", res, 1e-8)
    if n == 3:
        rb.add("symmetry.asym_principal", principal_asymptotic_residual(p, N), 1e-8)

    # braid exchange of the charge matrix; gates at one site, reported as a
    # diagnostic at two where the display leaves the normalization open
    rp, rm = braid_exchange_residuals(p, 1)
    rb.add("symmetry.rr_plus", rp, tol)
    rb.add("symmetry.rr_minus", rm, tol)
    if N >= 2:
        rp2, rm2 = braid_exchange_residuals(p, 2)
        rb.add_flag("symmetry.rr_n2_diagnostic", True, residual=max(rp2, rm2))

    gl_small = [cache["e"][i] for i in range(2, n - 1)]
    gl_small += [cache["f"][i] for i in range(2, n - 1)]
    gl_small += [cache["eps"][i] for i in range(2, n)]
    gl_full = [cache["e"][i] for i in range(1, n)]
    gl_full += [cache["f"][i] for i in range(1, n)]
    gl_full += [cache["eps"][i] for i in range(1, n + 1)]
    lblock = spec.diag_block
    gl_pair = [cache["e"][i] for i in range(1, n) if i != lblock]
    gl_pair += [cache["f"][i] for i in range(1, n) if i != lblock]
    gl_pair += [cache["eps"][i] for i in range(1, n + 1)]

    lams = sample_spectral(rng, p, samples)
    for s, lam in enumerate(lams):
        t_open = build_transfer(hspec, lam).mat
        if gl_small:
            res = max(_comm_zero(t_open, gen) for gen in gl_small)
            rb.add(f"symmetry.prop42.s{s}", res, tol)
        res = max(
            _comm_zero(t_open, charges.entries[pos].mat) for pos in all_positions
        )
        rb.add(f"symmetry.prop43.s{s}", res, tol)

        res, size = affine_transfer_defect(hspec, lam, charges, e11enn)
        rb.add(f"symmetry.com12.s{s}", res, tol)
        rb.add_flag(f"symmetry.com12_nonzero.s{s}", size > 1e-3, residual=size)

        t_aff = build_transfer(aspec, lam).mat
        rb.add(
            f"symmetry.fin_affine.s{s}", _comm_zero(t_aff, charges.affine.mat), tol
        )
        if gl_small:
            res = max(_comm_zero(t_aff, gen) for gen in gl_small)
            rb.add(f"symmetry.fin_gl.s{s}", res, tol)
        if n == 3:
            size = _comm_zero(t_aff, charges.entries[(1, 2)].mat)
            rb.add_flag(f"symmetry.fin_witness.s{s}", size > 1e-3, residual=size)

        t_triv = build_transfer(tspec, lam).mat
        res = max(_comm_zero(t_triv, gen) for gen in gl_full)
        rb.add(f"symmetry.trivial_k.s{s}", res, tol)

        t_diag = build_transfer(dspec, lam).mat
        res = max(_comm_zero(t_diag, gen) for gen in gl_pair)
        rb.add(f"symmetry.diagonal_k.s{s}", res, tol)

        kmat = build_k_explicit(p, lam, Gauge.homogeneous).mat
        res = 0.0
        for pos in list(boundary_entry_indices(n)) + [(n, n)]:
            left = eval_Q_rep(p, pos, lam).mat @ kmat
            right = kmat @ eval_Q_rep(p, pos, -lam).mat
            res = max(res, _eq_res(left, right))
        rb.add(f"symmetry.ik.s{s}", res, 1e-11)

        for name, value in exchange_relation_residuals(
            hspec, lam, charges, cache
        ).items():
            rb.add(f"symmetry.{name}.s{s}", value, tol)

    if n == 3 and N == 2:
        rb.add("symmetry.degeneracy", degeneracy_witness(p, N), 1e-8)

    return rb.report()
