"""Volume-element layer: alternating contractions and matrix representations.

The fully antisymmetric part of a tensor is one pseudo-scalar; the mixed part
is equivalent to a pair of traceless 3x3 pseudo-matrices obtained by
contracting two slots with the alternating symbol.  The inverse maps ship with
solver-verified coefficients; see FORMULA_NOTES.txt at the repository root for
the cross-check record.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .tensor import Tensor2, Tensor3, VarianceError


def _build_epsilon() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for perm in itertools.permutations(range(3)):
        inversions = sum(
            1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b]
        )
        eps[perm] = -1.0 if inversions % 2 else 1.0
    eps.setflags(write=False)
    return eps


#: alternating symbol; the same numerical entries serve both index positions
EPSILON = _build_epsilon()

#: weight of the per-branch matrix-to-tensor reconstruction, fixed by the
#: defining contractions (a hand derivation circulates with -1/2; the solver
#: value is -1/3, see FORMULA_NOTES.txt)
RECONSTRUCTION_COEFF = -1.0 / 3.0


def epsilon_tensor(variance: str = "upper") -> Tensor3:
    return Tensor3(EPSILON, variance, parity=1)


def pseudo_scalar(t: Tensor3) -> float:
    """Full contraction with the alternating symbol, normalized to 1 on it."""
    if t.variance != "upper":
        raise VarianceError("pseudo_scalar expects an upper-variance tensor")
    return float(np.einsum("ijk,ijk->", EPSILON, t.components) / 6.0)


@dataclass(frozen=True)
class Sl3Parts:
    """The pseudo-scalar and the three two-slot contractions of one tensor.

    The raw matrices share the trace ``6 * a_scalar``; subtracting
    ``2 * a_scalar * I`` yields the traceless forms, which sum to zero and
    depend only on the mixed-symmetry part of the input.
    """

    a_scalar: float
    a_mat: Tensor2
    b_mat: Tensor2
    c_mat: Tensor2
    a_check: Tensor2
    b_check: Tensor2
    c_check: Tensor2


def epsilon_contractions(t: Tensor3) -> Sl3Parts:
    if t.variance != "upper":
        raise VarianceError("epsilon_contractions expects an upper-variance tensor")
    a_scalar = pseudo_scalar(t)
    parity = (t.parity + 1) % 2
    raw = {
        "a": np.einsum("ijk,mjk->im", EPSILON, t.components),
        "b": np.einsum("ijk,kmj->im", EPSILON, t.components),
        "c": np.einsum("ijk,jkm->im", EPSILON, t.components),
    }
    shift = 2.0 * a_scalar * np.eye(3)
    mats = {key: Tensor2(value, "lu", parity) for key, value in raw.items()}
    checks = {key: Tensor2(value - shift, "lu", parity) for key, value in raw.items()}
    return Sl3Parts(
        a_scalar=a_scalar,
        a_mat=mats["a"],
        b_mat=mats["b"],
        c_mat=mats["c"],
        a_check=checks["a"],
        b_check=checks["b"],
        c_check=checks["c"],
    )


def _require_traceless_pseudo(mat: Tensor2, what: str, tol: float) -> None:
    if mat.variance != "lu" or mat.parity != 1:
        raise VarianceError(f"{what} expects a mixed (lower, upper) pseudo-matrix")
    if abs(mat.trace()) > tol * max(1.0, mat.max_abs()):
        raise VarianceError(f"{what} expects a traceless matrix")


def reconstruct_n1(b_check: Tensor2, tol: float = 1e-9) -> Tensor3:
    """Rebuild the slots-1,2-symmetric mixed component from its matrix."""
    _require_traceless_pseudo(b_check, "reconstruct_n1", tol)
    b = b_check.components
    components = RECONSTRUCTION_COEFF * (
        np.einsum("pk,pmj->kmj", b, EPSILON) + np.einsum("pm,pkj->kmj", b, EPSILON)
    )
    return Tensor3(components, "upper", parity=0)


def reconstruct_n2(c_check: Tensor2, tol: float = 1e-9) -> Tensor3:
    """Rebuild the slots-1,3-symmetric mixed component from its matrix."""
    _require_traceless_pseudo(c_check, "reconstruct_n2", tol)
    c = c_check.components
    components = RECONSTRUCTION_COEFF * (
        np.einsum("pk,pmj->kmj", c, EPSILON) + np.einsum("pj,pmk->kmj", c, EPSILON)
    )
    return Tensor3(components, "upper", parity=0)


def reconstruct_n(b_check: Tensor2, c_check: Tensor2, tol: float = 1e-9) -> Tensor3:
    """Rebuild the full mixed-symmetry part from its two matrices.

    Round trip: feeding the ``b_check``/``c_check`` of a tensor back through
    this map returns that tensor's mixed-symmetry part.
    """
    return reconstruct_n1(b_check, tol) + reconstruct_n2(c_check, tol)
