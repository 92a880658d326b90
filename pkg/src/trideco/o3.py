"""Metric-refined decomposition: trace vectors, trace parts, traceless parts.

With a metric available, the symmetric part splits into a pure-trace piece
built from one vector and a totally traceless remainder, and the mixed part
splits likewise from two vectors.  All coefficient formulas take the supplied
metric verbatim; the Euclidean case is just the default.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gl3
from .tensor import (
    EUCLIDEAN,
    Metric,
    SymmetryError,
    Tensor3,
    VarianceError,
    Vector3,
    max_abs,
    scalar_product,
)


def _validation_scale(t: Tensor3) -> float:
    return max(1.0, t.max_abs())


def _require_upper(t: Tensor3, what: str) -> None:
    if t.variance != "upper":
        raise VarianceError(f"{what} expects an upper-variance tensor")


@dataclass(frozen=True)
class TraceVectors:
    u: Vector3
    v: Vector3
    w: Vector3


def trace_vectors(t: Tensor3, metric: Metric = EUCLIDEAN) -> TraceVectors:
    """The three metric contractions over slot pairs (1,2), (1,3), (2,3)."""
    _require_upper(t, "trace_vectors")
    g = metric.g
    u = np.einsum("ij,ijk->k", g, t.components)
    v = np.einsum("ij,ikj->k", g, t.components)
    w = np.einsum("ij,kij->k", g, t.components)
    return TraceVectors(
        u=Vector3(u, "upper", t.parity),
        v=Vector3(v, "upper", t.parity),
        w=Vector3(w, "upper", t.parity),
    )


def _pure_trace_sym(alpha: np.ndarray, g_inv: np.ndarray) -> np.ndarray:
    return (
        np.einsum("i,jk->ijk", alpha, g_inv)
        + np.einsum("j,ik->ijk", alpha, g_inv)
        + np.einsum("k,ij->ijk", alpha, g_inv)
    )


def s_trace_split(
    s: Tensor3, metric: Metric = EUCLIDEAN, tol: float = 1e-9
) -> tuple[Tensor3, Tensor3, Vector3]:
    """Split a fully symmetric tensor into its trace part and traceless rest.

    Returns ``(k_part, r_part, alpha)`` with ``k_part + r_part == s``, all
    three metric traces of ``r_part`` zero, and ``alpha`` the single
    independent trace vector of ``s``.  The 1/5 weight on the trace part is
    exactly what makes the remainder traceless.
    """
    _require_upper(s, "s_trace_split")
    if max_abs(s.components - gl3.symmetric_part(s).components) > tol * _validation_scale(s):
        raise SymmetryError("s_trace_split expects a fully symmetric tensor")
    alpha = np.einsum("ij,ijk->k", metric.g, s.components)
    k_components = _pure_trace_sym(alpha, metric.g_inv) / 5.0
    k_part = Tensor3(k_components, "upper", s.parity)
    return k_part, s - k_part, Vector3(alpha, "upper", s.parity)


def n_trace_split(
    n: Tensor3, metric: Metric = EUCLIDEAN, tol: float = 1e-9
) -> tuple[Tensor3, Tensor3, Vector3, Vector3]:
    """Split a mixed-symmetry tensor into its trace part and traceless rest.

    Returns ``(m_part, p_part, beta, gamma)``.  The trace part is assembled
    from the tensor's own trace vectors with 1/6 weights; ``beta`` and
    ``gamma`` are the independent trace vectors of the two plain-family
    components and determine the same trace part through the per-family
    formulas.
    """
    _require_upper(n, "n_trace_split")
    scale = _validation_scale(n)
    if (
        gl3.symmetric_part(n).max_abs() > tol * scale
        or gl3.antisymmetric_part(n).max_abs() > tol * scale
    ):
        raise SymmetryError("n_trace_split expects a mixed-symmetry tensor")
    g, g_inv = metric.g, metric.g_inv
    u = np.einsum("ij,ijk->k", g, n.components)
    v = np.einsum("ij,ikj->k", g, n.components)
    w = np.einsum("ij,kij->k", g, n.components)
    m_components = (
        np.einsum("k,ij->ijk", 2 * u - v - w, g_inv)
        + np.einsum("i,jk->ijk", 2 * w - u - v, g_inv)
        + np.einsum("j,ik->ijk", 2 * v - u - w, g_inv)
    ) / 6.0
    m_part = Tensor3(m_components, "upper", n.parity)
    beta = Vector3(2.0 / 3.0 * (u - w), "upper", n.parity)
    gamma = Vector3(2.0 / 3.0 * (v - w), "upper", n.parity)
    return m_part, n - m_part, beta, gamma


def n_family_trace_split(
    n1: Tensor3, n2: Tensor3, metric: Metric = EUCLIDEAN, tol: float = 1e-9
) -> tuple[Tensor3, Tensor3, Tensor3, Tensor3]:
    """Trace/traceless split of the two plain-family components.

    Returns ``(m1, p1, m2, p2)``; the 1/4 weights solve the traceless
    conditions on each branch.
    """
    _require_upper(n1, "n_family_trace_split")
    _require_upper(n2, "n_family_trace_split")
    if max_abs(n1.components - np.transpose(n1.components, (1, 0, 2))) > tol * _validation_scale(n1):
        raise SymmetryError("first component must be symmetric in slots 1,2")
    if max_abs(n2.components - np.transpose(n2.components, (2, 1, 0))) > tol * _validation_scale(n2):
        raise SymmetryError("second component must be symmetric in slots 1,3")
    g, g_inv = metric.g, metric.g_inv
    beta = np.einsum("ij,ijk->k", g, n1.components)
    gamma = np.einsum("ij,ikj->k", g, n2.components)
    m1 = Tensor3(
        (
            2 * np.einsum("k,ij->ijk", beta, g_inv)
            - np.einsum("i,jk->ijk", beta, g_inv)
            - np.einsum("j,ik->ijk", beta, g_inv)
        )
        / 4.0,
        "upper",
        n1.parity,
    )
    m2 = Tensor3(
        (
            2 * np.einsum("j,ik->ijk", gamma, g_inv)
            - np.einsum("i,jk->ijk", gamma, g_inv)
            - np.einsum("k,ij->ijk", gamma, g_inv)
        )
        / 4.0,
        "upper",
        n2.parity,
    )
    return m1, n1 - m1, m2, n2 - m2


def orthogonality_matrix(parts, metric: Metric = EUCLIDEAN) -> np.ndarray:
    """Gram matrix of scalar products between the given tensors."""
    parts = list(parts)
    gram = np.zeros((len(parts), len(parts)))
    for row, a in enumerate(parts):
        for col, b in enumerate(parts):
            if col < row:
                gram[row, col] = gram[col, row]
            else:
                gram[row, col] = scalar_product(a, b, metric)
    return gram


@dataclass(frozen=True)
class O3Parts:
    k_part: Tensor3
    r_part: Tensor3
    a: Tensor3
    m_part: Tensor3
    p_part: Tensor3
    alpha: Vector3
    beta: Vector3
    gamma: Vector3


def decompose(t: Tensor3, metric: Metric = EUCLIDEAN) -> O3Parts:
    """The unique five-part metric decomposition of a generic tensor."""
    s = gl3.symmetric_part(t)
    a = gl3.antisymmetric_part(t)
    n = gl3.residue_part(t)
    k_part, r_part, alpha = s_trace_split(s, metric)
    m_part, p_part, beta, gamma = n_trace_split(n, metric)
    return O3Parts(k_part, r_part, a, m_part, p_part, alpha, beta, gamma)
