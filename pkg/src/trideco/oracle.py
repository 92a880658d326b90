"""Brute-force verification engine.

Every decomposition map in this package is linear on the 27-dimensional
component space, so each one can be materialized as an explicit 27x27 matrix
by evaluating it, as a black box, on the standard basis.  Ranks of those
matrices check the dimension ledger, matrix algebra checks idempotence and
complementarity, and least-squares solves recover every closed-form
coefficient the package ships.  The solves are built from nothing but
component arrays, the metric and the alternating symbol; they never reuse
the shipped closed forms, so a transcription error in a formula cannot hide
from them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import constitutive, gl3, o3
from .sl3 import EPSILON
from .tensor import EUCLIDEAN, Metric, Tensor3

RANK_TOL = 1e-9
#: required ratio between the smallest kept and largest dropped singular value
RANK_GAP = 1e6


def _pair_symmetrize(arr: np.ndarray) -> np.ndarray:
    return (arr + np.transpose(arr, (0, 2, 1))) / 2.0


def _pair_antisymmetrize(arr: np.ndarray) -> np.ndarray:
    return (arr - np.transpose(arr, (1, 0, 2))) / 2.0


def _wrap(func, variance="upper"):
    def on_components(arr: np.ndarray) -> np.ndarray:
        return func(Tensor3(arr, variance)).components

    return on_components


def _operator_table(metric: Metric):
    def k_of(t):
        return o3.s_trace_split(gl3.symmetric_part(t), metric)[0]

    def r_of(t):
        return o3.s_trace_split(gl3.symmetric_part(t), metric)[1]

    def m_of(t):
        return o3.n_trace_split(gl3.residue_part(t), metric)[0]

    def p_of(t):
        return o3.n_trace_split(gl3.residue_part(t), metric)[1]

    def family_split(t, slot):
        n1, n2 = gl3.n_split(t, "plain")
        return o3.n_family_trace_split(n1, n2, metric)[slot]

    table = {
        "identity": _wrap(lambda t: t),
        "symmetric": _wrap(gl3.symmetric_part),
        "antisymmetric": _wrap(gl3.antisymmetric_part),
        "residue": _wrap(gl3.residue_part),
        "k_part": _wrap(k_of),
        "r_part": _wrap(r_of),
        "m_part": _wrap(m_of),
        "p_part": _wrap(p_of),
        "m1_part": _wrap(lambda t: family_split(t, 0)),
        "p1_part": _wrap(lambda t: family_split(t, 1)),
        "m2_part": _wrap(lambda t: family_split(t, 2)),
        "p2_part": _wrap(lambda t: family_split(t, 3)),
    }
    for family in gl3.FAMILIES:
        table[f"n1_{family}"] = _wrap(lambda t, f=family: gl3.n_split(t, f)[0])
        table[f"n2_{family}"] = _wrap(lambda t, f=family: gl3.n_split(t, f)[1])

    # restrictions to the pair-symmetric and pair-antisymmetric slices,
    # materialized through the constitutive code paths
    def piezo_field(arr: np.ndarray, field: str) -> np.ndarray:
        wrapped = constitutive.PiezoTensor(Tensor3(_pair_symmetrize(arr)))
        parts = constitutive.piezo_decompose(wrapped, metric)
        return getattr(parts, field).components

    def hall_field(arr: np.ndarray, field: str) -> np.ndarray:
        wrapped = constitutive.HallTensor(Tensor3(_pair_antisymmetrize(arr), "lower"))
        parts = constitutive.hall_decompose(wrapped, metric)
        return getattr(parts, field).components

    for name, field in [
        ("piezo_s", "s"),
        ("piezo_n", "n"),
        ("piezo_k", "k_part"),
        ("piezo_r", "r_part"),
        ("piezo_m", "m_part"),
        ("piezo_p", "p_part"),
    ]:
        table[name] = lambda arr, f=field: piezo_field(arr, f)
    for name, field in [
        ("hall_a", "a"),
        ("hall_n", "n"),
        ("hall_m", "m_part"),
        ("hall_p", "p_part"),
    ]:
        table[name] = lambda arr, f=field: hall_field(arr, f)
    return table


#: ranks of every materialized map, as fixed by the dimension bookkeeping
DIMENSION_LEDGER = {
    "identity": 27,
    "symmetric": 10,
    "antisymmetric": 1,
    "residue": 16,
    "n1_plain": 8,
    "n2_plain": 8,
    "n1_tilde": 8,
    "n2_tilde": 8,
    "n1_hat": 8,
    "n2_hat": 8,
    "k_part": 3,
    "r_part": 7,
    "m_part": 6,
    "p_part": 10,
    "m1_part": 3,
    "p1_part": 5,
    "m2_part": 3,
    "p2_part": 5,
    "piezo_s": 10,
    "piezo_n": 8,
    "piezo_k": 3,
    "piezo_r": 7,
    "piezo_m": 3,
    "piezo_p": 5,
    "hall_a": 1,
    "hall_n": 8,
    "hall_m": 3,
    "hall_p": 5,
}


@dataclass(frozen=True)
class LinearMap27:
    """A named linear operator on the flattened component space."""

    matrix: np.ndarray
    label: str

    def apply(self, arr: np.ndarray) -> np.ndarray:
        return (self.matrix @ np.asarray(arr, dtype=float).reshape(27)).reshape(3, 3, 3)


def operator_names() -> tuple[str, ...]:
    return tuple(DIMENSION_LEDGER)


def materialize(op_name: str, metric: Metric = EUCLIDEAN) -> LinearMap27:
    """Build the 27x27 matrix of a named operation, column by column."""
    table = _operator_table(metric)
    if op_name not in table:
        raise KeyError(f"unknown operator {op_name!r}")
    op = table[op_name]
    matrix = np.zeros((27, 27))
    for col in range(27):
        basis = np.zeros(27)
        basis[col] = 1.0
        matrix[:, col] = op(basis.reshape(3, 3, 3)).reshape(27)
    return LinearMap27(matrix=matrix, label=op_name)


def rank(linear_map: LinearMap27, tol: float = RANK_TOL) -> int:
    """Numerical rank with a spectral-gap guard against miscounts."""
    singular = np.linalg.svd(linear_map.matrix, compute_uv=False)
    top = singular[0] if singular[0] > 0 else 1.0
    kept = int(np.sum(singular >= tol * top))
    if 0 < kept < len(singular) and singular[kept] > 0:
        gap = singular[kept - 1] / singular[kept]
        if gap < RANK_GAP:
            raise ArithmeticError(
                f"{linear_map.label}: singular-value gap {gap:.2e} too small to "
                f"certify rank {kept}"
            )
    return kept


@dataclass(frozen=True)
class ProjectorReport:
    label: str
    rank: int
    idempotence_defect: float

    @property
    def is_projector(self) -> bool:
        return self.idempotence_defect <= 1e-12


def verify_projector(linear_map: LinearMap27) -> ProjectorReport:
    m = linear_map.matrix
    return ProjectorReport(
        label=linear_map.label,
        rank=rank(linear_map),
        idempotence_defect=float(np.max(np.abs(m @ m - m))),
    )


@dataclass(frozen=True)
class FamilyReport:
    members: tuple[ProjectorReport, ...]
    completeness_defect: float
    max_pairwise_product: float

    @property
    def is_resolution(self) -> bool:
        return (
            all(member.is_projector for member in self.members)
            and self.completeness_defect <= 1e-12
            and self.max_pairwise_product <= 1e-12
        )


def verify_projector_family(
    linear_maps, target: np.ndarray | None = None
) -> FamilyReport:
    """Check that a set of maps resolves ``target`` (identity by default)."""
    maps = list(linear_maps)
    if target is None:
        target = np.eye(27)
    total = sum(lm.matrix for lm in maps)
    pairwise = 0.0
    for i, first in enumerate(maps):
        for second in maps[i + 1:]:
            pairwise = max(
                pairwise,
                float(np.max(np.abs(first.matrix @ second.matrix))),
                float(np.max(np.abs(second.matrix @ first.matrix))),
            )
    return FamilyReport(
        members=tuple(verify_projector(lm) for lm in maps),
        completeness_defect=float(np.max(np.abs(total - target))),
        max_pairwise_product=pairwise,
    )


@dataclass(frozen=True)
class ReconstructionSolve:
    system: str
    labels: tuple[str, ...]
    coefficients: np.ndarray
    residual: float
    system_rank: int


def _basis_tensors(slice_name: str | None = None):
    for col in range(27):
        arr = np.zeros(27)
        arr[col] = 1.0
        arr = arr.reshape(3, 3, 3)
        if slice_name == "pair_symmetric":
            arr = _pair_symmetrize(arr)
        elif slice_name == "pair_antisymmetric":
            arr = _pair_antisymmetrize(arr)
        yield arr


def _lstsq(features: list[np.ndarray], targets: list[np.ndarray]):
    design = np.vstack(features)
    rhs = np.concatenate(targets)
    coefficients, _, system_rank, _ = np.linalg.lstsq(design, rhs, rcond=None)
    residual = float(np.max(np.abs(design @ coefficients - rhs)))
    return coefficients, residual, int(system_rank)


def solve_reconstruction(system: str, metric: Metric = EUCLIDEAN) -> ReconstructionSolve:
    """Least-squares solve of a reconstruction ansatz over the full basis.

    Supported systems:

    * ``n1_from_matrix`` / ``n2_from_matrix``: rebuild a mixed component from
      its alternating contraction, three candidate terms each.
    * ``k_from_trace``: single weight making the symmetric remainder traceless.
    * ``m1_from_trace``: two weights making the first mixed branch traceless.
    * ``piezo_n_from_matrix``: single weight on the pair-symmetric slice.
    * ``hall_n_from_matrix``: three weights on the pair-antisymmetric slice.

    Rank-deficient systems are fine: some ansatz terms are linearly dependent
    on the traceless matrix space, and the minimum-norm solution is returned.
    """
    g, g_inv = metric.g, metric.g_inv
    features: list[np.ndarray] = []
    targets: list[np.ndarray] = []

    if system in ("n1_from_matrix", "n2_from_matrix"):
        first = system == "n1_from_matrix"
        for arr in _basis_tensors():
            t = Tensor3(arr)
            component = gl3.n_split(t, "plain")[0 if first else 1].components
            mat = (
                np.einsum("ijk,kmj->im", EPSILON, component)
                if first
                else np.einsum("ijk,jkm->im", EPSILON, component)
            )
            f1 = np.einsum("pk,pmj->kmj", mat, EPSILON).reshape(27)
            f2 = np.einsum("pm,pkj->kmj", mat, EPSILON).reshape(27)
            f3 = np.einsum("pj,pmk->kmj", mat, EPSILON).reshape(27)
            features.append(np.stack([f1, f2, f3], axis=1))
            targets.append(component.reshape(27))
        labels = ("x", "y", "z")

    elif system == "k_from_trace":
        for arr in _basis_tensors():
            s = gl3.symmetric_part(Tensor3(arr)).components
            alpha = np.einsum("ij,ijk->k", g, s)
            candidate = (
                np.einsum("i,jk->ijk", alpha, g_inv)
                + np.einsum("j,ik->ijk", alpha, g_inv)
                + np.einsum("k,ij->ijk", alpha, g_inv)
            )
            for trace in ("ij,ijk->k", "ik,ijk->j", "jk,ijk->i"):
                features.append(np.einsum(trace, g, candidate).reshape(-1, 1))
                targets.append(np.einsum(trace, g, s))
        labels = ("weight",)

    elif system == "m1_from_trace":
        for arr in _basis_tensors():
            n1 = gl3.n_split(Tensor3(arr), "plain")[0].components
            beta = np.einsum("ij,ijk->k", g, n1)
            pair_term = np.einsum("i,jk->ijk", beta, g_inv) + np.einsum(
                "j,ik->ijk", beta, g_inv
            )
            last_term = np.einsum("k,ij->ijk", beta, g_inv)
            for trace in ("ij,ijk->k", "ik,ijk->j", "jk,ijk->i"):
                features.append(
                    np.stack(
                        [np.einsum(trace, g, pair_term), np.einsum(trace, g, last_term)],
                        axis=1,
                    )
                )
                targets.append(np.einsum(trace, g, n1))
        labels = ("x", "y")

    elif system == "piezo_n_from_matrix":
        for arr in _basis_tensors("pair_symmetric"):
            n = gl3.residue_part(Tensor3(arr)).components
            mat = np.einsum("ijk,kmj->im", EPSILON, n)
            candidate = np.einsum("pm,kpj->kmj", mat, EPSILON) + np.einsum(
                "pj,kpm->kmj", mat, EPSILON
            )
            features.append(candidate.reshape(-1, 1))
            targets.append(n.reshape(27))
        labels = ("weight",)

    elif system == "hall_n_from_matrix":
        for arr in _basis_tensors("pair_antisymmetric"):
            n = gl3.residue_part(Tensor3(arr, "lower")).components
            mat = np.einsum("ijk,mjk->im", EPSILON, n)
            f1 = np.einsum("pk,pmj->kmj", mat, EPSILON).reshape(27)
            f2 = np.einsum("pm,pkj->kmj", mat, EPSILON).reshape(27)
            f3 = np.einsum("pj,pmk->kmj", mat, EPSILON).reshape(27)
            features.append(np.stack([f1, f2, f3], axis=1))
            targets.append(n.reshape(27))
        labels = ("x", "y", "z")

    else:
        raise KeyError(f"unknown reconstruction system {system!r}")

    coefficients, residual, system_rank = _lstsq(features, targets)
    return ReconstructionSolve(
        system=system,
        labels=labels,
        coefficients=coefficients,
        residual=residual,
        system_rank=system_rank,
    )


def random_components(rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, (3, 3, 3))


def generic_tensor(
    rng: np.random.Generator, variance: str = "upper", min_norm: float = 1e-3
) -> Tensor3:
    """Sample a tensor whose decomposition parts are all comfortably nonzero.

    Draws uniformly from [-1, 1] per component and rejects draws in which any
    part used by a genericity argument has norm below ``min_norm``.
    """
    while True:
        candidate = Tensor3(random_components(rng), variance)
        parts = [
            gl3.symmetric_part(candidate),
            gl3.antisymmetric_part(candidate),
            gl3.residue_part(candidate),
        ]
        for family in gl3.FAMILIES:
            parts.extend(gl3.n_split(candidate, family))
        if all(np.linalg.norm(part.components) >= min_norm for part in parts):
            return candidate


def agreement(op_name: str, metric: Metric = EUCLIDEAN, seed: int = 0,
              samples: int = 100) -> float:
    """Max deviation between the materialized matrix and the live operation."""
    linear_map = materialize(op_name, metric)
    table = _operator_table(metric)
    op = table[op_name]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        arr = random_components(rng)
        worst = max(worst, float(np.max(np.abs(linear_map.apply(arr) - op(arr)))))
    return worst


def dimension_report(metric: Metric = EUCLIDEAN) -> list[tuple[str, int, int]]:
    """(name, measured rank, expected rank) for every registered operator."""
    return [
        (name, rank(materialize(name, metric)), expected)
        for name, expected in DIMENSION_LEDGER.items()
    ]


SHIPPED_CONSTANTS = (
    ("n1_from_matrix", ("x", "y", "z"), (-1.0 / 3.0, -1.0 / 3.0, 0.0), (-0.5, -0.5, 0.0)),
    ("n2_from_matrix", ("x", "y", "z"), (-1.0 / 3.0, 0.0, -1.0 / 3.0), (-0.5, 0.0, -0.5)),
    ("k_from_trace", ("weight",), (0.2,), (0.2,)),
    ("m1_from_trace", ("x", "y"), (-0.25, 0.5), (-0.25, 0.5)),
    ("piezo_n_from_matrix", ("weight",), (1.0 / 3.0,), (0.5,)),
    ("hall_n_from_matrix", ("x", "y", "z"), (1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0), (0.5, -0.5, 1.0)),
)


def formula_notes(metric: Metric = EUCLIDEAN) -> str:
    """Plain-text record of solver-determined reconstruction coefficients.

    Every coefficient shipped by the package is re-derived here by solving
    the defining relations over the full component basis.  Where a
    hand-derived value that circulates for a system differs from the solved
    one, the discrepancy is recorded; the solved value is what ships.
    """
    lines = [
        "FORMULA NOTES",
        "=============",
        "",
        "Reconstruction coefficients are determined by least-squares solves of",
        "the defining linear relations on the full 27-component basis (per-slice",
        "bases for the restricted shapes).  Residuals are reported in max-abs.",
        "Some systems are rank-deficient because the candidate terms obey the",
        "3x3 identity  X^p_k e_pmj - X^p_m e_pkj - X^p_j e_pmk = tr(X) e_kmj,",
        "which vanishes on traceless X; the minimum-norm solution is reported.",
        "",
    ]
    for system, labels, shipped, quoted in SHIPPED_CONSTANTS:
        solve = solve_reconstruction(system, metric)
        solved = tuple(round(float(c), 12) for c in solve.coefficients)
        lines.append(f"{system}:")
        lines.append(f"  ansatz terms      {', '.join(labels)}")
        lines.append(f"  solved            {solved}")
        lines.append(f"  residual          {solve.residual:.3e}")
        lines.append(f"  system rank       {solve.system_rank}")
        lines.append(f"  shipped           {tuple(float(c) for c in shipped)}")
        if any(abs(a - b) > 1e-10 for a, b in zip(shipped, quoted)):
            lines.append(
                f"  NOTE: a hand derivation circulates with {tuple(quoted)}; it"
            )
            lines.append(
                "  fails the defining relations and is not what this package uses."
            )
        lines.append("")
    lines.append("Matrix-half parametrization constants (solver-checked, both for the")
    lines.append("Euclidean and non-Euclidean metrics exercised in the test suite):")
    lines.append("  skew(first mixed matrix)  = -3/4 * eps . (first trace vector)")
    lines.append("  skew(second mixed matrix) = +3/4 * eps . (second trace vector)")
    lines.append("  axial vectors therefore equal -3/2 resp. +3/2 times the trace vectors")
    lines.append("  pair-antisymmetric shape: skew(matrix) = -1/2 * eps . (trace covector)")
    lines.append("  (a hand derivation circulates with +1/2 resp. -1/3 for the first and")
    lines.append("  last of these; both fail the defining relations)")
    lines.append("")
    lines.append("Label conventions for the mixed-pair families on restricted shapes:")
    lines.append("  pair-symmetric input: tilde pair collapses, second member vanishes")
    lines.append("  pair-antisymmetric input: hat pair collapses, FIRST member vanishes")
    lines.append("  (the second member equals the whole mixed part; statements that the")
    lines.append("  second hat member vanishes have the labels swapped)")
    lines.append("")
    return "\n".join(lines)


def write_formula_notes(path, metric: Metric = EUCLIDEAN) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(formula_notes(metric))
