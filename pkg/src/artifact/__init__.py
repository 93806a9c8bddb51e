"""Boundary symmetries of trigonometric open spin chains, numerically.

The package builds the whole tower as dense complex matrices: Hecke-algebra
generators and their chain representations, R- and K-matrices in both
gradations, evaluation and coproduct representations of the deformed affine
gl(n) algebra, Lax operators, open/closed transfer matrices, the boundary
Hamiltonian, and the non-local boundary charges -- and verifies the algebraic
identities relating them at sampled generic parameters.
"""

from .params import DegenerateParameters, ModelParams
from .tensor_core import (
    Operator,
    ProportionalityResult,
    basis_matrix,
    commutator,
    embed_at,
    frob,
    identity_op,
    kron,
    partial_trace_first,
    partial_transpose,
    permutation_swap,
    prop_check,
    rel_residual,
)

__version__ = "0.1.0"
