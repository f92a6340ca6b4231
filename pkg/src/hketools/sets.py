"""Ground sets, set-systems and the elementary family operations.

Sets are stored as Python ints used as membership bitmasks over the
canonical (sorted) ground order, so there is no width limit. Subfamilies
are bitmasks over the canonical member order; the public functions also
accept an iterable of member indices.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (
    EmptyFamilyError,
    EmptySubfamilyError,
    NonUniformError,
    OverlapError,
)

__all__ = [
    "GroundSet",
    "ElementSet",
    "SetSystem",
    "AtomProfile",
    "DuplicateMemberWarning",
    "family_union",
    "family_intersection",
    "uniform_alpha",
    "ke_check",
    "atom_profile",
    "duality_equality",
    "bits",
    "subfamilies_by_size",
]


class DuplicateMemberWarning(UserWarning):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def subfamilies_by_size(m: int, *, start: int = 1) -> Iterator[int]:
    """All subsets of range(m) as masks, by size then lexicographic index order."""
    from itertools import combinations

    for k in range(start, m + 1):
        for combo in combinations(range(m), k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            yield mask


@dataclass(frozen=True)
class GroundSet:
    labels: tuple[str, ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError("ground labels must be distinct")
        labels = tuple(sorted(labels))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index", {x: i for i, x in enumerate(labels)})

    @classmethod
    def of(cls, labels: Iterable) -> "GroundSet":
        return cls(tuple(dict.fromkeys(str(x) for x in labels)))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def mask_of(self, labels: Iterable) -> int:
        mask = 0
        for x in labels:
            try:
                mask |= 1 << self.index[str(x)]
            except KeyError:
                raise KeyError(f"label {x!r} is not in the ground set") from None
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))


@dataclass(frozen=True)
class ElementSet:
    ground: GroundSet
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask & ~self.ground.full_mask:
            raise ValueError("mask refers to elements outside the ground set")

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        i = self.ground.index.get(str(label))
        return i is not None and bool(self.mask >> i & 1)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.ground.labels_of(self.mask)

    def as_set(self) -> frozenset[str]:
        return frozenset(self.labels)

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels) + "}"


@dataclass(frozen=True)
class SetSystem:
    """A finite family of distinct sets over an explicit ground set.

    Members are kept sorted by mask value, so member indices (and hence
    subfamily masks) are stable for a given input.
    """

    ground: GroundSet
    masks: tuple[int, ...]
    duplicates_dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        full = self.ground.full_mask
        for mk in self.masks:
            if mk < 0 or mk & ~full:
                raise ValueError("member refers to elements outside the ground set")
        canon = tuple(sorted(set(self.masks)))
        dropped = len(self.masks) - len(canon)
        object.__setattr__(self, "masks", canon)
        if dropped:
            object.__setattr__(self, "duplicates_dropped", self.duplicates_dropped + dropped)
            warnings.warn(
                f"{dropped} duplicate member(s) collapsed", DuplicateMemberWarning, stacklevel=3
            )

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable], ground: Iterable | None = None) -> "SetSystem":
        sets = [list(s) for s in sets]
        if ground is None:
            ground = [x for s in sets for x in s]
        g = GroundSet.of(ground)
        return cls(g, tuple(g.mask_of(s) for s in sets))

    @property
    def m(self) -> int:
        return len(self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    @property
    def all_mask(self) -> int:
        """Subfamily mask selecting every member."""
        return (1 << len(self.masks)) - 1

    def member(self, i: int) -> ElementSet:
        return ElementSet(self.ground, self.masks[i])

    @property
    def members(self) -> tuple[ElementSet, ...]:
        return tuple(ElementSet(self.ground, mk) for mk in self.masks)

    def as_sets(self) -> list[frozenset[str]]:
        return [frozenset(self.ground.labels_of(mk)) for mk in self.masks]

    def subfamily_mask(self, sub: int | Iterable[int] | None) -> int:
        """Normalize a subfamily given as mask, index iterable, or None (= all)."""
        if sub is None:
            return self.all_mask
        if isinstance(sub, int):
            mask = sub
        else:
            mask = 0
            for i in sub:
                if not 0 <= i < len(self.masks):
                    raise IndexError(f"member index {i} out of range")
                mask |= 1 << i
        if mask & ~self.all_mask:
            raise IndexError("subfamily mask refers to missing members")
        return mask

    def restrict(self, sub: int | Iterable[int]) -> "SetSystem":
        """The subfamily as a SetSystem over the same ground."""
        mask = self.subfamily_mask(sub)
        return SetSystem(self.ground, tuple(self.masks[i] for i in bits(mask)))

    def indices(self, sub: int) -> list[int]:
        return list(bits(sub))

    def __repr__(self) -> str:
        inner = ", ".join(repr(s) for s in self.members)
        return f"SetSystem([{inner}] over {len(self.ground)} elements)"


def _union_mask(F: SetSystem, sub: int) -> int:
    out = 0
    for i in bits(sub):
        out |= F.masks[i]
    return out


def _inter_mask(F: SetSystem, sub: int) -> int:
    out = F.ground.full_mask
    for i in bits(sub):
        out &= F.masks[i]
    return out


def _nonempty(F: SetSystem, sub) -> int:
    mask = F.subfamily_mask(sub)
    if not mask:
        raise EmptySubfamilyError("subfamily must be non-empty")
    return mask


def family_union(F: SetSystem, sub=None) -> ElementSet:
    """Elements lying in at least one member of the subfamily."""
    return ElementSet(F.ground, _union_mask(F, _nonempty(F, sub)))


def family_intersection(F: SetSystem, sub=None) -> ElementSet:
    """Elements lying in every member of the subfamily."""
    return ElementSet(F.ground, _inter_mask(F, _nonempty(F, sub)))


def uniform_alpha(F: SetSystem) -> int | None:
    """Common member size if it is the same positive number for all members, else None."""
    if not F.masks:
        raise EmptyFamilyError("family must be non-empty")
    sizes = {mk.bit_count() for mk in F.masks}
    if len(sizes) != 1:
        return None
    (alpha,) = sizes
    return alpha if alpha >= 1 else None


def ke_check(F: SetSystem) -> bool:
    alpha = uniform_alpha(F)
    if alpha is None:
        raise NonUniformError("KE check needs a uniform family with positive member size")
    union = _union_mask(F, F.all_mask).bit_count()
    inter = _inter_mask(F, F.all_mask).bit_count()
    return union + inter == 2 * alpha


@dataclass(frozen=True)
class AtomProfile:
    """Partition of the ground set by membership signature.

    ``cells`` maps a signature (subfamily mask) to the element mask of
    ground elements belonging to exactly those members. Only non-empty
    cells are stored; absent signatures answer the empty set.
    """

    family: SetSystem
    cells: Mapping[int, int]

    def cell_mask(self, signature: int) -> int:
        return self.cells.get(signature, 0)

    def cell(self, sub) -> ElementSet:
        sig = self.family.subfamily_mask(sub) if sub is not None else 0
        return ElementSet(self.family.ground, self.cell_mask(sig))

    def size(self, signature: int) -> int:
        return self.cells.get(signature, 0).bit_count()

    def items(self):
        """(signature index list, ElementSet) pairs in signature order."""
        for sig in sorted(self.cells):
            yield list(bits(sig)), ElementSet(self.family.ground, self.cells[sig])


def atom_profile(F: SetSystem) -> AtomProfile:
    if not F.masks:
        raise EmptyFamilyError("family must be non-empty")
    # Transpose: one signature per ground element.
    sig_of = [0] * len(F.ground)
    for j, mk in enumerate(F.masks):
        for i in bits(mk):
            sig_of[i] |= 1 << j
    cells: dict[int, int] = {}
    for i, sig in enumerate(sig_of):
        cells[sig] = cells.get(sig, 0) | (1 << i)
    return AtomProfile(F, cells)


def duality_equality(F: SetSystem, sub1, sub2) -> tuple[int, int, bool]:
    """Sizes of (meet of sub1 minus join of sub2) and its mirror image, and whether they match."""
    g1 = _nonempty(F, sub1)
    g2 = _nonempty(F, sub2)
    if g1 & g2:
        raise OverlapError("subfamilies must be disjoint")
    lhs = (_inter_mask(F, g1) & ~_union_mask(F, g2)).bit_count()
    rhs = (_inter_mask(F, g2) & ~_union_mask(F, g1)).bit_count()
    return lhs, rhs, lhs == rhs
