"""Dense complex operator algebra on tensor-product spaces.

Everything downstream (R-matrices, K-matrices, monodromies, charges) is a
square complex matrix living on an ordered tensor product of local spaces.
The ``Operator`` wrapper keeps the factor dimensions next to the matrix so
that embeddings, partial traces and partial transposes never need the caller
to re-supply them.

Conventions: the first tensor factor is the slow (most significant) index,
i.e. ``kron(A, B)`` puts A on the first factor. Basis states of C^d1 (x) C^d2
are enumerated as |11>, |12>, ..., |1 d2>, |21>, ... in row-major order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Operator",
    "ProportionalityResult",
    "kron",
    "embed_at",
    "permutation_swap",
    "partial_trace_first",
    "partial_transpose",
    "commutator",
    "prop_check",
    "basis_matrix",
    "identity_op",
    "frob",
    "rel_residual",
]

# Relative residuals divide by max(norm, _FLOOR) so an exactly-zero reference
# never produces NaN.
_FLOOR = 1e-300


@dataclass(frozen=True)
class Operator:
    """A square complex matrix together with its tensor-factor dimensions."""

    mat: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=np.complex128)
        object.__setattr__(self, "mat", mat)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator matrix must be square, got {mat.shape}")
        if len(dims) == 0 or any(d < 1 for d in dims):
            raise ValueError(f"bad factor dimensions {dims}")
        if math.prod(dims) != mat.shape[0]:
            raise ValueError(
                f"factor dimensions {dims} do not multiply to side {mat.shape[0]}"
            )

    # Arithmetic is deliberately thin: just enough to write checks the way
    # they appear on paper. Mixed-dims operands must at least agree in size.
    def __matmul__(self, other: "Operator") -> "Operator":
        self._require_same_side(other)
        return Operator(self.mat @ other.mat, self.dims)

    def __add__(self, other: "Operator") -> "Operator":
        self._require_same_side(other)
        return Operator(self.mat + other.mat, self.dims)

    def __sub__(self, other: "Operator") -> "Operator":
        self._require_same_side(other)
        return Operator(self.mat - other.mat, self.dims)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.mat * scalar, self.dims)

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return Operator(-self.mat, self.dims)

    @property
    def side(self) -> int:
        return self.mat.shape[0]

    def transpose(self) -> "Operator":
        return Operator(self.mat.T, self.dims)

    def inv(self) -> "Operator":
        return Operator(np.linalg.inv(self.mat), self.dims)

    def trace(self) -> complex:
        return complex(np.trace(self.mat))

    def _require_same_side(self, other: "Operator") -> None:
        if self.mat.shape != other.mat.shape:
            raise ValueError(
                f"dimension mismatch: {self.mat.shape} vs {other.mat.shape}"
            )


@dataclass(frozen=True)
class ProportionalityResult:
    """Best-fit scalar c with A ≈ c B, and the relative Frobenius defect."""

    scalar: complex
    residual: float
    passed: bool


def frob(a: Operator | np.ndarray) -> float:
    m = a.mat if isinstance(a, Operator) else a
    return float(np.linalg.norm(m))


def rel_residual(a: Operator | np.ndarray, b: Operator | np.ndarray) -> float:
    """|| A - B ||_F / max(||B||_F, floor)."""
    ma = a.mat if isinstance(a, Operator) else np.asarray(a)
    mb = b.mat if isinstance(b, Operator) else np.asarray(b)
    return float(np.linalg.norm(ma - mb) / max(np.linalg.norm(mb), _FLOOR))


def basis_matrix(n: int, i: int, j: int) -> np.ndarray:
    """Matrix unit with a single 1 at row i, column j (1-based)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"matrix unit indices ({i},{j}) out of range for n={n}")
    e = np.zeros((n, n), dtype=np.complex128)
    e[i - 1, j - 1] = 1.0
    return e


def identity_op(dims) -> Operator:
    dims = tuple(int(d) for d in dims)
    return Operator(np.eye(math.prod(dims), dtype=np.complex128), dims)


def kron(a: Operator, b: Operator) -> Operator:
    return Operator(np.kron(a.mat, b.mat), a.dims + b.dims)


def embed_at(op: Operator, slots, space) -> Operator:
    """Embed ``op`` so it acts on the named slots (1-based) of ``space``.

    ``slots`` is an ordered list matching op.dims factor by factor; the
    remaining slots carry the identity. Non-adjacent and permuted slot lists
    are allowed, e.g. embed_at(R, [1, 3], [n, n, n]) puts the first factor of
    R on slot 1 and the second on slot 3.
    """
    space = tuple(int(d) for d in space)
    slots = [int(s) for s in slots]
    k = len(space)
    if len(set(slots)) != len(slots):
        raise ValueError(f"duplicate slots in {slots}")
    for pos, s in enumerate(slots):
        if not (1 <= s <= k):
            raise ValueError(f"slot {s} out of range 1..{k}")
        if space[s - 1] != op.dims[pos]:
            raise ValueError(
                f"slot {s} has dimension {space[s-1]} but operator factor "
                f"{pos+1} has dimension {op.dims[pos]}"
            )
    if len(slots) != len(op.dims):
        raise ValueError("slot count must match operator factor count")

    rest = [s for s in range(1, k + 1) if s not in slots]
    order = slots + rest  # factor order of op (x) identity
    rest_dim = math.prod(space[s - 1] for s in rest) if rest else 1
    big = np.kron(op.mat, np.eye(rest_dim, dtype=np.complex128))

    # big currently lives on the permuted factor order; transpose row and
    # column tensor indices back to the natural slot order.
    perm_dims = [space[s - 1] for s in order]
    tens = big.reshape(perm_dims + perm_dims)
    # axis p of tens holds slot order[p]; we want axis s-1 to hold slot s
    inverse = [order.index(s + 1) for s in range(k)]
    axes = inverse + [k + p for p in inverse]
    out = tens.transpose(axes).reshape(math.prod(space), math.prod(space))
    return Operator(out, space)


def permutation_swap(d: int) -> Operator:
    """P with P (v (x) w) = w (x) v on C^d (x) C^d."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    p = np.eye(d * d, dtype=np.complex128)
    p = p.reshape(d, d, d, d).transpose(1, 0, 2, 3).reshape(d * d, d * d)
    return Operator(p, (d, d))


def partial_trace_first(a: Operator) -> Operator:
    if len(a.dims) < 2:
        raise ValueError("need at least two tensor factors to trace one out")
    d0 = a.dims[0]
    rest = math.prod(a.dims[1:])
    t = a.mat.reshape(d0, rest, d0, rest)
    return Operator(np.einsum("arbs,ab->rs", t, np.eye(d0)), a.dims[1:])


def partial_transpose(a: Operator, slot: int) -> Operator:
    k = len(a.dims)
    if not (1 <= slot <= k):
        raise ValueError(f"slot {slot} out of range 1..{k}")
    dims = list(a.dims)
    tens = a.mat.reshape(dims + dims)
    axes = list(range(2 * k))
    axes[slot - 1], axes[k + slot - 1] = axes[k + slot - 1], axes[slot - 1]
    side = math.prod(dims)
    return Operator(tens.transpose(axes).reshape(side, side), a.dims)


def commutator(a: Operator, b: Operator) -> Operator:
    a._require_same_side(b)
    return Operator(a.mat @ b.mat - b.mat @ a.mat, a.dims)


def prop_check(a: Operator, b: Operator, tol: float = 1e-9) -> ProportionalityResult:
    """Best-fit A ≈ c B in Frobenius inner product; c = <B,A>/<B,B>."""
    a._require_same_side(b)
    bb = np.vdot(b.mat, b.mat)
    if abs(bb) < _FLOOR:
        raise ValueError("reference operator is numerically zero")
    c = complex(np.vdot(b.mat, a.mat) / bb)
    residual = float(
        np.linalg.norm(a.mat - c * b.mat) / max(np.linalg.norm(a.mat), _FLOOR)
    )
    return ProportionalityResult(scalar=c, residual=residual, passed=residual <= tol)
