"""Decompositions of pair-symmetric and pair-antisymmetric third-order tensors.

A tensor symmetric in its last two slots (the piezoelectric shape, 18
components) has no fully antisymmetric part and its mixed part cannot be
split further: the decomposition is unique.  A tensor antisymmetric in its
first two slots (the Hall shape, 9 components) has no fully symmetric part
and likewise decomposes uniquely.  Both mixed parts are equivalent to a
single traceless 3x3 pseudo-matrix; the reconstruction weights below are
solver-verified (FORMULA_NOTES.txt).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import gl3
from .sl3 import EPSILON
from .tensor import (
    EUCLIDEAN,
    Metric,
    SymmetryError,
    Tensor2,
    Tensor3,
    VarianceError,
    Vector3,
    max_abs,
)

#: relative asymmetry accepted on ingestion and symmetrized away
INGEST_TOL = 1e-9
#: below this relative asymmetry the repair is rounding dust, not worth a warning
INGEST_SILENT = 1e-13

#: weight rebuilding the pair-symmetric mixed part from its matrix
PIEZO_RECONSTRUCTION_COEFF = 1.0 / 3.0
#: skew part of the pair-symmetric matrix in terms of the trace vector
PIEZO_SKEW_FROM_TRACE = -0.75

#: weights rebuilding the pair-antisymmetric mixed part from its matrix
HALL_RECONSTRUCTION_COEFFS = (1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0)
#: skew part of the pair-antisymmetric matrix in terms of the trace covector
HALL_SKEW_FROM_TRACE = -0.5
#: weights of the lowered-matrix form of the reconstruction
HALL_MATRIX_WEIGHTS = (0.5, -0.5, 0.5)


def _ingest(components: np.ndarray, defect: np.ndarray, repaired: np.ndarray,
            what: str) -> np.ndarray:
    asymmetry = max_abs(defect)
    scale = max(1.0, max_abs(components))
    if asymmetry > INGEST_TOL * scale:
        raise SymmetryError(
            f"{what}: relative asymmetry {asymmetry / scale:.3e} exceeds {INGEST_TOL:.0e}"
        )
    if asymmetry > INGEST_SILENT * scale:
        warnings.warn(f"{what}: symmetrized away asymmetry {asymmetry:.3e}",
                      stacklevel=3)
    return repaired


@dataclass(frozen=True)
class PiezoTensor:
    """Upper-variance tensor symmetric in its last two slots.

    Small ingestion noise (relative asymmetry up to 1e-9) is symmetrized away
    with a warning; anything larger is an error.
    """

    tensor: Tensor3

    def __post_init__(self):
        if self.tensor.variance != "upper":
            raise VarianceError("pair-symmetric tensors use upper variance")
        c = self.tensor.components
        swapped = np.transpose(c, (0, 2, 1))
        repaired = _ingest(c, c - swapped, (c + swapped) / 2.0, "pair-symmetric tensor")
        object.__setattr__(self, "tensor", Tensor3(repaired, "upper", self.tensor.parity))


@dataclass(frozen=True)
class HallTensor:
    """Lower-variance tensor antisymmetric in its first two slots."""

    tensor: Tensor3

    def __post_init__(self):
        if self.tensor.variance != "lower":
            raise VarianceError("pair-antisymmetric tensors use lower variance")
        c = self.tensor.components
        swapped = np.transpose(c, (1, 0, 2))
        repaired = _ingest(c, c + swapped, (c - swapped) / 2.0, "pair-antisymmetric tensor")
        object.__setattr__(self, "tensor", Tensor3(repaired, "lower", self.tensor.parity))


@dataclass(frozen=True)
class PiezoParts:
    s: Tensor3
    n: Tensor3
    k_part: Tensor3
    r_part: Tensor3
    m_part: Tensor3
    p_part: Tensor3
    alpha: Vector3
    beta: Vector3
    b_mat: Tensor2
    b_sym: Tensor2
    b_skew: Tensor2
    metric: Metric


def piezo_decompose(d: PiezoTensor, metric: Metric = EUCLIDEAN) -> PiezoParts:
    """Unique decomposition of a pair-symmetric tensor.

    Every part keeps the last-two-slot symmetry.  The two trace vectors lead
    to the split 18 = (3 + 7) + (3 + 5) into a trace and a traceless piece of
    both the fully symmetric and the mixed part.
    """
    t = d.tensor
    g, g_inv = metric.g, metric.g_inv
    s = gl3.symmetric_part(t)
    n = t - s
    v = np.einsum("ij,ijk->k", g, t.components)
    w = np.einsum("ij,kij->k", g, t.components)
    alpha = (2.0 * v + w) / 3.0
    k_components = (
        np.einsum("i,jk->ijk", alpha, g_inv)
        + np.einsum("j,ik->ijk", alpha, g_inv)
        + np.einsum("k,ij->ijk", alpha, g_inv)
    ) / 5.0
    k_part = Tensor3(k_components, "upper", t.parity)
    beta = 2.0 / 3.0 * (v - w)
    m_components = (
        np.einsum("k,ij->ijk", beta, g_inv)
        + np.einsum("j,ik->ijk", beta, g_inv)
        - 2.0 * np.einsum("i,jk->ijk", beta, g_inv)
    ) / 4.0
    m_part = Tensor3(m_components, "upper", t.parity)
    b_mat, b_sym, b_skew = _piezo_matrix(n, metric)
    return PiezoParts(
        s=s,
        n=n,
        k_part=k_part,
        r_part=s - k_part,
        m_part=m_part,
        p_part=n - m_part,
        alpha=Vector3(alpha, "upper", t.parity),
        beta=Vector3(beta, "upper", t.parity),
        b_mat=b_mat,
        b_sym=b_sym,
        b_skew=b_skew,
        metric=metric,
    )


def _piezo_matrix(n: Tensor3, metric: Metric) -> tuple[Tensor2, Tensor2, Tensor2]:
    parity = (n.parity + 1) % 2
    raw = np.einsum("ijk,kmj->im", EPSILON, n.components)
    low = np.einsum("nm,im->in", metric.g, raw)
    return (
        Tensor2(raw, "lu", parity),
        Tensor2((low + low.T) / 2.0, "ll", parity),
        Tensor2((low - low.T) / 2.0, "ll", parity),
    )


def piezo_matrix_rep(parts: PiezoParts) -> Tensor2:
    """Traceless pseudo-matrix equivalent to the mixed part."""
    return parts.b_mat


def piezo_n_from_matrix(b_mat: Tensor2) -> Tensor3:
    """Invert the matrix representation of the pair-symmetric mixed part."""
    b = b_mat.components
    components = PIEZO_RECONSTRUCTION_COEFF * (
        np.einsum("pm,kpj->kmj", b, EPSILON) + np.einsum("pj,kpm->kmj", b, EPSILON)
    )
    return Tensor3(components, "upper", parity=0)


def piezo_parts_from_matrix(parts: PiezoParts) -> tuple[Tensor3, Tensor3]:
    """Trace and traceless mixed pieces rebuilt from the matrix halves.

    The skew half carries the trace vector and rebuilds the trace piece; the
    symmetric half rebuilds the traceless piece.
    """
    g_inv = parts.metric.g_inv

    def rebuild(half: Tensor2) -> Tensor3:
        components = PIEZO_RECONSTRUCTION_COEFF * (
            np.einsum("mr,kpj,pr->kmj", g_inv, EPSILON, half.components)
            + np.einsum("jr,kpm,pr->kmj", g_inv, EPSILON, half.components)
        )
        return Tensor3(components, "upper", parity=0)

    return rebuild(parts.b_skew), rebuild(parts.b_sym)


@dataclass(frozen=True)
class HallParts:
    a: Tensor3
    n: Tensor3
    m_part: Tensor3
    p_part: Tensor3
    a_scalar: float
    v_vec: Vector3
    a_check: Tensor2
    a_sym: Tensor2
    a_skew: Tensor2
    metric: Metric


def hall_decompose(h: HallTensor, metric: Metric = EUCLIDEAN) -> HallParts:
    """Unique decomposition of a pair-antisymmetric tensor, 9 = 1 + (3 + 5).

    The fully antisymmetric part is one pseudo-scalar; the mixed part splits
    around the single trace covector into a trace piece and a traceless one.
    """
    t = h.tensor
    g, g_inv = metric.g, metric.g_inv
    a = gl3.antisymmetric_part(t)
    n = t - a
    a_scalar = float(np.einsum("ijk,ijk->", EPSILON, t.components) / 6.0)
    v = np.einsum("ij,ikj->k", g_inv, t.components)
    m_components = (
        np.einsum("j,ik->ijk", v, g) - np.einsum("i,jk->ijk", v, g)
    ) / 2.0
    m_part = Tensor3(m_components, "lower", t.parity)
    a_check, a_sym, a_skew = _hall_matrix(n, metric)
    return HallParts(
        a=a,
        n=n,
        m_part=m_part,
        p_part=n - m_part,
        a_scalar=a_scalar,
        v_vec=Vector3(v, "lower", t.parity),
        a_check=a_check,
        a_sym=a_sym,
        a_skew=a_skew,
        metric=metric,
    )


def _hall_matrix(n: Tensor3, metric: Metric) -> tuple[Tensor2, Tensor2, Tensor2]:
    parity = (n.parity + 1) % 2
    raw = np.einsum("ijk,mjk->im", EPSILON, n.components)
    raised = np.einsum("im,mj->ij", raw, metric.g_inv)
    return (
        Tensor2(raw, "ul", parity),
        Tensor2((raised + raised.T) / 2.0, "uu", parity),
        Tensor2((raised - raised.T) / 2.0, "uu", parity),
    )


def hall_matrix_rep(parts: HallParts) -> Tensor2:
    """Traceless pseudo-matrix equivalent to the mixed part."""
    return parts.a_check


def hall_n_from_matrix(a_check: Tensor2) -> Tensor3:
    """Invert the matrix representation of the pair-antisymmetric mixed part."""
    x, y, z = HALL_RECONSTRUCTION_COEFFS
    a = a_check.components
    components = (
        x * np.einsum("pk,pmj->kmj", a, EPSILON)
        + y * np.einsum("pm,pkj->kmj", a, EPSILON)
        + z * np.einsum("pj,pmk->kmj", a, EPSILON)
    )
    return Tensor3(components, "lower", parity=0)


def hall_parts_from_matrix(parts: HallParts) -> tuple[Tensor3, Tensor3]:
    """Trace and traceless mixed pieces rebuilt from the matrix halves."""
    g = parts.metric.g
    x, y, z = HALL_MATRIX_WEIGHTS

    def rebuild(half: Tensor2) -> Tensor3:
        components = (
            x * np.einsum("pr,kr,pmj->kmj", half.components, g, EPSILON)
            + y * np.einsum("pr,mr,pkj->kmj", half.components, g, EPSILON)
            + z * np.einsum("pr,jr,pmk->kmj", half.components, g, EPSILON)
        )
        return Tensor3(components, "lower", parity=0)

    return rebuild(parts.a_skew), rebuild(parts.a_sym)
