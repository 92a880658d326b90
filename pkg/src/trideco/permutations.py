"""Permutations of the three index slots of a third-order tensor."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Perm:
    """A permutation of the three tensor slots.

    ``images[p]`` is the 0-based slot that the content of slot ``p`` moves to.
    The group product ``a * b`` applies ``b`` first, then ``a``.
    """

    images: tuple[int, int, int]

    def __post_init__(self):
        if sorted(self.images) != [0, 1, 2]:
            raise ValueError(f"not a permutation of (0, 1, 2): {self.images!r}")

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(tuple(self.images[other.images[p]] for p in range(3)))

    def inverse(self) -> "Perm":
        inv = [0, 0, 0]
        for p, q in enumerate(self.images):
            inv[q] = p
        return Perm(tuple(inv))

    @property
    def sign(self) -> int:
        inversions = sum(
            1
            for a in range(3)
            for b in range(a + 1, 3)
            if self.images[a] > self.images[b]
        )
        return -1 if inversions % 2 else 1

    @property
    def is_identity(self) -> bool:
        return self.images == (0, 1, 2)

    @property
    def label(self) -> str:
        """Cycle notation with 1-based slots, identity written ``e``."""
        if self.is_identity:
            return "e"
        moved = [p for p in range(3) if self.images[p] != p]
        if len(moved) == 2:
            a, b = moved
            return f"({a + 1}{b + 1})"
        # a 3-cycle; start from slot 1
        cycle = [0, self.images[0], self.images[self.images[0]]]
        return "(" + "".join(str(p + 1) for p in cycle) + ")"

    @classmethod
    def from_cycle(cls, text: str) -> "Perm":
        """Parse cycle notation such as ``"(12)"`` or ``"(123)"``; ``"e"`` or
        ``"I"`` is the identity."""
        text = text.strip()
        if text in ("e", "I", "()", ""):
            return IDENTITY
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"unrecognized cycle notation: {text!r}")
        slots = [int(c) - 1 for c in text[1:-1]]
        if sorted(slots) not in ([0, 1], [0, 2], [1, 2], [0, 1, 2]):
            raise ValueError(f"unrecognized cycle notation: {text!r}")
        images = [0, 1, 2]
        for pos, slot in enumerate(slots):
            images[slot] = slots[(pos + 1) % len(slots)]
        return cls(tuple(images))

    def transpose_axes(self) -> tuple[int, int, int]:
        """Axes argument for ``np.transpose`` realizing the slot action.

        ``np.transpose(a, axes)[i] = a[m]`` with ``m[axes[p]] = i[p]``, so the
        axes tuple must be the inverse permutation.
        """
        return self.inverse().images

    def __str__(self) -> str:
        return self.label


IDENTITY = Perm((0, 1, 2))
SWAP_12 = Perm.from_cycle("(12)")
SWAP_13 = Perm.from_cycle("(13)")
SWAP_23 = Perm.from_cycle("(23)")
CYCLE_123 = Perm.from_cycle("(123)")
CYCLE_132 = Perm.from_cycle("(132)")

#: the symmetric group on three slots, in canonical order
S3: tuple[Perm, ...] = (IDENTITY, SWAP_12, SWAP_13, SWAP_23, CYCLE_123, CYCLE_132)

S3_INDEX = {perm: pos for pos, perm in enumerate(S3)}
