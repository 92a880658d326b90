"""Decomposition of a third-order tensor under arbitrary invertible basis change.

The tensor splits uniquely into a totally symmetric part, a totally
antisymmetric part and a mixed-symmetry residue.  The residue splits further
into two 8-dimensional pieces, but that finer split is a genuine gauge choice;
three inequivalent families are provided and the caller must name one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .symmetrizers import FULL_ANTISYMMETRIZER, FULL_SYMMETRIZER, MIXED_PAIRS
from .tensor import Tensor3

FAMILIES = ("plain", "tilde", "hat")


def symmetric_part(t: Tensor3) -> Tensor3:
    """Average of all six slot permutations."""
    return FULL_SYMMETRIZER.apply(t) / 6.0


def antisymmetric_part(t: Tensor3) -> Tensor3:
    """Sign-weighted average of all six slot permutations."""
    return FULL_ANTISYMMETRIZER.apply(t) / 6.0


def residue_part(t: Tensor3) -> Tensor3:
    """What remains after removing both fully symmetric and antisymmetric parts."""
    return t - symmetric_part(t) - antisymmetric_part(t)


def n_split(t: Tensor3, family: str) -> tuple[Tensor3, Tensor3]:
    """Split the mixed-symmetry residue of ``t`` into the named pair.

    The two outputs always sum to ``residue_part(t)``.  In the plain family
    the first output is symmetric in slots 1,2 and the second in slots 1,3.
    """
    try:
        first_op, second_op = MIXED_PAIRS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return first_op.apply(t) / 3.0, second_op.apply(t) / 3.0


@dataclass(frozen=True)
class Gl3Parts:
    s: Tensor3
    a: Tensor3
    n: Tensor3
    n1: Tensor3
    n2: Tensor3
    family: str


def decompose(t: Tensor3, family: str) -> Gl3Parts:
    n1, n2 = n_split(t, family)
    return Gl3Parts(
        s=symmetric_part(t),
        a=antisymmetric_part(t),
        n=residue_part(t),
        n1=n1,
        n2=n2,
        family=family,
    )
