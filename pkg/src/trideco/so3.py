"""Finest decomposition layer, combining the metric and the volume element.

Lowering the two pseudo-matrices of the mixed part and splitting each into
symmetric and skew pieces turns the mixed part into two symmetric traceless
pseudo-matrices plus two proper vectors.  Together with the trace vector and
traceless remainder of the symmetric part and the pseudo-scalar, this is the
complete representation of a generic third-order tensor; ``reassemble``
inverts it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gl3, o3, sl3
from .sl3 import EPSILON, Sl3Parts
from .tensor import EUCLIDEAN, Metric, Tensor2, Tensor3, TensorError, Vector3

# Proportionality constants between the axial vectors of the skew matrix
# parts and the trace vectors of the mixed components.  Frozen from the
# solver run in scripts/derive_constants.py; metric independence is part of
# what that script demonstrates.
AXIAL_FROM_FIRST_TRACE = -1.5
AXIAL_FROM_SECOND_TRACE = 1.5

# Skew matrix parts written back in terms of the trace vectors.
FIRST_SKEW_COEFF = -0.75
SECOND_SKEW_COEFF = 0.75


@dataclass(frozen=True)
class So3Parts:
    """Symmetric traceless matrices and proper vectors of the mixed part."""

    e_mat: Tensor2
    f_mat: Tensor2
    beta_vec: Vector3
    gamma_vec: Vector3

    def __post_init__(self):
        if self.e_mat.parity != 1 or self.f_mat.parity != 1:
            raise TensorError("matrix parts must be pseudo-tensors")
        if self.beta_vec.parity != 0 or self.gamma_vec.parity != 0:
            raise TensorError("vector parts must be proper")


def _lower_second(mat: Tensor2, metric: Metric) -> np.ndarray:
    return np.einsum("nm,im->in", metric.g, mat.components)


def so3_split(parts: Sl3Parts, metric: Metric = EUCLIDEAN) -> So3Parts:
    """Lower the mixed-part matrices and separate symmetric and skew pieces.

    The skew pieces are equivalent to vectors through the alternating symbol;
    those axial vectors are fixed multiples of the trace vectors of the two
    mixed components, so the returned vectors are the trace vectors
    themselves.
    """
    b_low = _lower_second(parts.b_check, metric)
    c_low = _lower_second(parts.c_check, metric)
    matrix_parity = parts.b_check.parity
    vector_parity = (matrix_parity + 1) % 2
    e_mat = Tensor2((b_low + b_low.T) / 2.0, "ll", matrix_parity)
    f_mat = Tensor2((c_low + c_low.T) / 2.0, "ll", matrix_parity)
    b_axial = np.einsum("ijk,ij->k", EPSILON, (b_low - b_low.T) / 2.0)
    c_axial = np.einsum("ijk,ij->k", EPSILON, (c_low - c_low.T) / 2.0)
    beta_vec = Vector3(b_axial / AXIAL_FROM_FIRST_TRACE, "upper", vector_parity)
    gamma_vec = Vector3(c_axial / AXIAL_FROM_SECOND_TRACE, "upper", vector_parity)
    return So3Parts(e_mat=e_mat, f_mat=f_mat, beta_vec=beta_vec, gamma_vec=gamma_vec)


@dataclass(frozen=True)
class So3Representation:
    """Complete finest-level representation of one tensor.

    The symmetric part is ``(alpha, r_part)``, the antisymmetric part is the
    single pseudo-scalar, and each mixed component is a (matrix, vector)
    pair.
    """

    alpha: Vector3
    r_part: Tensor3
    a_scalar: float
    e_mat: Tensor2
    beta_vec: Vector3
    f_mat: Tensor2
    gamma_vec: Vector3

    def __post_init__(self):
        if self.e_mat.parity != 1 or self.f_mat.parity != 1:
            raise TensorError("matrix parts must be pseudo-tensors")
        if self.beta_vec.parity != 0 or self.gamma_vec.parity != 0 or self.alpha.parity != 0:
            raise TensorError("vector parts must be proper")


def so3_representation(t: Tensor3, metric: Metric = EUCLIDEAN) -> So3Representation:
    s = gl3.symmetric_part(t)
    n = gl3.residue_part(t)
    _, r_part, alpha = o3.s_trace_split(s, metric)
    contractions = sl3.epsilon_contractions(n)
    split = so3_split(contractions, metric)
    return So3Representation(
        alpha=alpha,
        r_part=r_part,
        a_scalar=sl3.pseudo_scalar(t),
        e_mat=split.e_mat,
        beta_vec=split.beta_vec,
        f_mat=split.f_mat,
        gamma_vec=split.gamma_vec,
    )


def _mixed_matrix(sym_low: Tensor2, skew_coeff: float, vec: Vector3,
                  metric: Metric) -> Tensor2:
    low = sym_low.components + skew_coeff * np.einsum(
        "imj,j->im", EPSILON, vec.components
    )
    return Tensor2(np.einsum("in,nm->im", low, metric.g_inv), "lu", parity=1)


def first_component_from(e_mat: Tensor2, beta_vec: Vector3,
                         metric: Metric = EUCLIDEAN) -> Tensor3:
    """Rebuild the slots-1,2-symmetric mixed component from (matrix, vector)."""
    return sl3.reconstruct_n1(_mixed_matrix(e_mat, FIRST_SKEW_COEFF, beta_vec, metric))


def second_component_from(f_mat: Tensor2, gamma_vec: Vector3,
                          metric: Metric = EUCLIDEAN) -> Tensor3:
    """Rebuild the slots-1,3-symmetric mixed component from (matrix, vector)."""
    return sl3.reconstruct_n2(_mixed_matrix(f_mat, SECOND_SKEW_COEFF, gamma_vec, metric))


def reassemble(rep: So3Representation, metric: Metric = EUCLIDEAN) -> Tensor3:
    """Invert ``so3_representation``; exact up to rounding."""
    g_inv = metric.g_inv
    k_components = (
        np.einsum("i,jk->ijk", rep.alpha.components, g_inv)
        + np.einsum("j,ik->ijk", rep.alpha.components, g_inv)
        + np.einsum("k,ij->ijk", rep.alpha.components, g_inv)
    ) / 5.0
    s = Tensor3(k_components, "upper") + rep.r_part
    a = rep.a_scalar * Tensor3(EPSILON, "upper")
    n1 = first_component_from(rep.e_mat, rep.beta_vec, metric)
    n2 = second_component_from(rep.f_mat, rep.gamma_vec, metric)
    return s + a + n1 + n2
