"""Decomposition reports: symmetry classification, part norms, Gram matrices.

The JSON document is the source of truth; the text rendering is generated
from the same dictionary, so both carry identical numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gl3, o3, sl3, so3
from .constitutive import HallTensor, PiezoTensor, hall_decompose, piezo_decompose
from .tensor import EUCLIDEAN, Metric, Tensor3, VarianceError, max_abs, norm

REPORT_SCHEMA = 1

#: classification threshold, relative to the tensor's max-abs component
CLASSIFY_REL_TOL = 1e-9

LEVELS = ("gl3", "o3", "sl3", "so3")
MODES = ("generic", "piezo", "hall")


def classify_symmetry(t: Tensor3, rel_tol: float = CLASSIFY_REL_TOL) -> str:
    """Most specific symmetry class of ``t``.

    One of ``fully-symmetric``, ``fully-antisymmetric``, ``pair-symmetric-jk``,
    ``pair-antisymmetric-ij``, ``generic``.
    """
    scale = t.max_abs()
    if scale == 0.0:
        return "fully-symmetric"
    threshold = rel_tol * scale
    c = t.components
    if max_abs(c - gl3.symmetric_part(t).components) <= threshold:
        return "fully-symmetric"
    if max_abs(c - gl3.antisymmetric_part(t).components) <= threshold:
        return "fully-antisymmetric"
    if max_abs(c - np.transpose(c, (0, 2, 1))) <= threshold:
        return "pair-symmetric-jk"
    if max_abs(c + np.transpose(c, (1, 0, 2))) <= threshold:
        return "pair-antisymmetric-ij"
    return "generic"


@dataclass(frozen=True)
class PartEntry:
    name: str
    dim: int
    norm: float
    share: float
    tensor: Tensor3


@dataclass(frozen=True)
class DecompositionReport:
    level: str
    mode: str
    family: str | None
    input_summary: dict
    parts: tuple[PartEntry, ...]
    gram: np.ndarray
    residual: float
    pseudo_scalar: float | None

    def to_dict(self) -> dict:
        document = {
            "schema": REPORT_SCHEMA,
            "input": self.input_summary,
            "level": self.level,
            "mode": self.mode,
            "parts": [
                {"name": p.name, "dim": p.dim, "norm": p.norm, "share": p.share}
                for p in self.parts
            ],
            "gram": self.gram.tolist(),
            "residual": self.residual,
        }
        if self.family is not None:
            document["family"] = self.family
        if self.pseudo_scalar is not None:
            document["pseudo_scalar"] = self.pseudo_scalar
        return document

    def render_text(self, tol: float = 1e-12) -> str:
        doc = self.to_dict()
        lines = [
            f"input: norm {doc['input']['norm']:.12g}, "
            f"class {doc['input']['symmetry_class']}, "
            f"variance {doc['input']['variance']}",
            f"level {doc['level']}, mode {doc['mode']}"
            + (f", family {doc['family']}" if "family" in doc else ""),
            "",
            f"{'part':<18}{'dim':>4}{'norm':>22}{'share':>12}",
        ]
        for part in doc["parts"]:
            lines.append(
                f"{part['name']:<18}{part['dim']:>4}"
                f"{part['norm']:>22.12e}{part['share']:>12.6f}"
            )
        total_share = sum(part["share"] for part in doc["parts"])
        lines.append(f"{'total':<18}{'':>4}{'':>22}{total_share:>12.6f}")
        lines.append("")
        if "pseudo_scalar" in doc:
            lines.append(f"pseudo-scalar: {doc['pseudo_scalar']:.12g}")
        off_diag = 0.0
        gram = np.asarray(doc["gram"])
        if gram.size:
            off_diag = float(np.max(np.abs(gram - np.diag(np.diag(gram)))))
        lines.append(
            f"gram off-diagonal max: {off_diag:.3e}"
            + ("" if off_diag <= tol else "  (parts not mutually orthogonal)")
        )
        lines.append(f"reconstruction residual: {doc['residual']:.3e}")
        return "\n".join(lines) + "\n"


def _entries(named_parts, total_sq: float, metric: Metric) -> list[PartEntry]:
    entries = []
    for name, dim, tensor in named_parts:
        part_norm = norm(tensor, metric)
        share = part_norm**2 / total_sq if total_sq > 0 else 0.0
        entries.append(PartEntry(name, dim, part_norm, share, tensor))
    return entries


def build_report(
    t: Tensor3,
    level: str = "so3",
    family: str | None = None,
    mode: str = "generic",
    metric: Metric = EUCLIDEAN,
) -> DecompositionReport:
    """Decompose ``t`` at the requested level and package the result.

    Generic modes expect upper variance.  The finest level reports the
    plain-family branch splits; at the ``gl3`` level a family is required
    only when the mixed-part split is requested.
    """
    if mode == "piezo":
        return _piezo_report(t, metric)
    if mode == "hall":
        return _hall_report(t, metric)
    if mode != "generic":
        raise ValueError(f"unknown mode {mode!r}")
    if t.variance != "upper":
        raise VarianceError("generic decomposition expects an upper-variance tensor")
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")

    total_sq = norm(t, metric) ** 2
    pseudo = None
    used_family = None

    if level == "gl3":
        if family is None:
            named = [
                ("sym", 10, gl3.symmetric_part(t)),
                ("antisym", 1, gl3.antisymmetric_part(t)),
                ("mixed", 16, gl3.residue_part(t)),
            ]
        else:
            parts = gl3.decompose(t, family)
            used_family = family
            named = [
                ("sym", 10, parts.s),
                ("antisym", 1, parts.a),
                ("mixed_1", 8, parts.n1),
                ("mixed_2", 8, parts.n2),
            ]
    elif level == "o3":
        parts = o3.decompose(t, metric)
        named = [
            ("sym_trace", 3, parts.k_part),
            ("sym_traceless", 7, parts.r_part),
            ("antisym", 1, parts.a),
            ("mixed_trace", 6, parts.m_part),
            ("mixed_traceless", 10, parts.p_part),
        ]
    elif level == "sl3":
        pseudo = sl3.pseudo_scalar(t)
        named = [
            ("sym", 10, gl3.symmetric_part(t)),
            ("antisym", 1, gl3.antisymmetric_part(t)),
            ("mixed", 16, gl3.residue_part(t)),
        ]
    else:  # so3: the finest split, plain-family branches
        pseudo = sl3.pseudo_scalar(t)
        used_family = "plain"
        s = gl3.symmetric_part(t)
        a = gl3.antisymmetric_part(t)
        k_part, r_part, _ = o3.s_trace_split(s, metric)
        n1, n2 = gl3.n_split(t, "plain")
        m1, p1, m2, p2 = o3.n_family_trace_split(n1, n2, metric)
        named = [
            ("sym_trace", 3, k_part),
            ("sym_traceless", 7, r_part),
            ("antisym", 1, a),
            ("mixed_1_trace", 3, m1),
            ("mixed_1_traceless", 5, p1),
            ("mixed_2_trace", 3, m2),
            ("mixed_2_traceless", 5, p2),
        ]

    entries = _entries(named, total_sq, metric)
    rebuilt = entries[0].tensor
    for entry in entries[1:]:
        rebuilt = rebuilt + entry.tensor
    return DecompositionReport(
        level=level,
        mode="generic",
        family=used_family,
        input_summary=_input_summary(t, metric),
        parts=tuple(entries),
        gram=o3.orthogonality_matrix([e.tensor for e in entries], metric),
        residual=max_abs(t.components - rebuilt.components),
        pseudo_scalar=pseudo,
    )


def _input_summary(t: Tensor3, metric: Metric) -> dict:
    return {
        "norm": norm(t, metric),
        "symmetry_class": classify_symmetry(t),
        "variance": t.variance,
        "parity": t.parity,
    }


def _piezo_report(t: Tensor3, metric: Metric) -> DecompositionReport:
    wrapped = t if isinstance(t, PiezoTensor) else PiezoTensor(t)
    parts = piezo_decompose(wrapped, metric)
    source = wrapped.tensor
    total_sq = norm(source, metric) ** 2
    named = [
        ("sym_trace", 3, parts.k_part),
        ("sym_traceless", 7, parts.r_part),
        ("mixed_trace", 3, parts.m_part),
        ("mixed_traceless", 5, parts.p_part),
    ]
    entries = _entries(named, total_sq, metric)
    rebuilt = entries[0].tensor
    for entry in entries[1:]:
        rebuilt = rebuilt + entry.tensor
    return DecompositionReport(
        level="o3",
        mode="piezo",
        family=None,
        input_summary=_input_summary(source, metric),
        parts=tuple(entries),
        gram=o3.orthogonality_matrix([e.tensor for e in entries], metric),
        residual=max_abs(source.components - rebuilt.components),
        pseudo_scalar=None,
    )


def _hall_report(t: Tensor3, metric: Metric) -> DecompositionReport:
    wrapped = t if isinstance(t, HallTensor) else HallTensor(t)
    parts = hall_decompose(wrapped, metric)
    source = wrapped.tensor
    total_sq = norm(source, metric) ** 2
    named = [
        ("antisym", 1, parts.a),
        ("mixed_trace", 3, parts.m_part),
        ("mixed_traceless", 5, parts.p_part),
    ]
    entries = _entries(named, total_sq, metric)
    rebuilt = entries[0].tensor
    for entry in entries[1:]:
        rebuilt = rebuilt + entry.tensor
    return DecompositionReport(
        level="o3",
        mode="hall",
        family=None,
        input_summary=_input_summary(source, metric),
        parts=tuple(entries),
        gram=o3.orthogonality_matrix([e.tensor for e in entries], metric),
        residual=max_abs(source.components - rebuilt.components),
        pseudo_scalar=parts.a_scalar,
    )
