"""Three independent deciders for the hereditary KE property, plus helpers.

* ``hke_bruteforce`` checks |union| + |intersection| = 2*alpha on every
  non-empty subfamily.
* ``hke_pairs`` checks the duality equality on every pair of disjoint
  non-empty subfamilies.
* ``hke_partition`` checks it only on complementary pairs, which reduces
  to comparing atom cells of complementary signatures.

All three agree on every input; ``equivalence_audit`` runs them side by
side and raises if they do not.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import (
    CapExceededError,
    DisagreementError,
    EmptyFamilyError,
    HkeError,
    TheoremViolation,
)
from .sets import (
    SetSystem,
    atom_profile,
    bits,
    duality_equality,
    family_intersection,
    family_union,
    subfamilies_by_size,
)

BRUTE_CAP = 24
PAIRS_CAP = 16

NONUNIFORM = "nonuniform"
NONPOSITIVE_ALPHA = "nonpositive-alpha"
SUBSET = "subset-violation"
PAIR = "pair-violation"
PARITY = "parity"


@dataclass(frozen=True)
class Witness:
    """Counterexample to one of the HKE conditions.

    ``subfamilies`` holds sorted member-index tuples; ``values`` holds the
    two numbers whose mismatch is the violation:

    ============  ==============================  ==============================
    kind          subfamilies                     values
    ============  ==============================  ==============================
    nonuniform    ((i,), (j,))                    (|A_i|, |A_j|)
    nonpos-alpha  ((0,),)                         (alpha, 1)  meaning alpha < 1
    subset        (G,)                            (|U G| + |^ G|, 2 alpha)
    pair          (G1, G2)                        (|^G1 - U G2|, |^G2 - U G1|)
    parity        (all,)                          (|U F| + |^ F|, even part)
    ============  ==============================  ==============================
    """

    kind: str
    subfamilies: tuple[tuple[int, ...], ...]
    values: tuple[int, int]

    def replay(self, F: SetSystem) -> tuple[int, int]:
        """Recompute ``values`` from scratch using the core set operations."""
        subs = self.subfamilies
        if self.kind == NONUNIFORM:
            return len(F.member(subs[0][0])), len(F.member(subs[1][0]))
        if self.kind == NONPOSITIVE_ALPHA:
            return len(F.member(subs[0][0])), 1
        if self.kind == SUBSET:
            g = subs[0]
            total = len(family_union(F, g)) + len(family_intersection(F, g))
            return total, 2 * len(F.member(0))
        if self.kind == PAIR:
            lhs, rhs, _ = duality_equality(F, subs[0], subs[1])
            return lhs, rhs
        if self.kind == PARITY:
            total = len(family_union(F)) + len(family_intersection(F))
            return total, total - total % 2
        raise ValueError(f"unknown witness kind {self.kind!r}")

    def is_valid(self, F: SetSystem) -> bool:
        got = self.replay(F)
        if got != self.values:
            return False
        if self.kind == NONPOSITIVE_ALPHA:
            return got[0] < got[1]
        return got[0] != got[1]

    def describe(self, F: SetSystem) -> list[list[list[str]]]:
        """Resolve every subfamily to the element labels of its members."""
        return [[list(F.member(i).labels) for i in sub] for sub in self.subfamilies]

    def to_dict(self, F: SetSystem | None = None) -> dict:
        out = {
            "kind": self.kind,
            "subfamilies": [list(s) for s in self.subfamilies],
            "values": list(self.values),
        }
        if F is not None:
            out["members"] = self.describe(F)
        return out


@dataclass(frozen=True)
class HkeVerdict:
    holds: bool
    method: str
    alpha: int | None = None
    witness: Witness | None = None
    # Member sizes confirmed equal to alpha (partition oracle only).
    member_sizes: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.holds and (self.alpha is None or self.witness is not None):
            raise ValueError("a passing verdict carries alpha and no witness")
        if not self.holds and (self.alpha is not None or self.witness is None):
            raise ValueError("a failing verdict carries a witness and no alpha")

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self, F: SetSystem | None = None) -> dict:
        out = {"method": self.method, "holds": self.holds, "alpha": self.alpha}
        out["witness"] = self.witness.to_dict(F) if self.witness else None
        if self.member_sizes is not None:
            out["member_sizes"] = list(self.member_sizes)
        return out


def _fail(method: str, kind: str, subs, values) -> HkeVerdict:
    subs = tuple(tuple(s) for s in subs)
    return HkeVerdict(False, method, witness=Witness(kind, subs, tuple(values)))


def _check_size(F: SetSystem, cap: int, method: str):
    if not F.masks:
        raise EmptyFamilyError("family must be non-empty")
    if F.m > cap:
        raise CapExceededError(
            f"{method} oracle is capped at {cap} members (got {F.m}); use hke_partition"
        )


def _uniformity_witness(F: SetSystem, method: str) -> HkeVerdict | None:
    sizes = [mk.bit_count() for mk in F.masks]
    for j in range(1, len(sizes)):
        if sizes[j] != sizes[0]:
            return _fail(method, NONUNIFORM, [(0,), (j,)], (sizes[0], sizes[j]))
    if sizes[0] < 1:
        return _fail(method, NONPOSITIVE_ALPHA, [(0,)], (sizes[0], 1))
    return None


def _walk_combinations(masks: Sequence[int], k: int, full: int):
    """Yield (indices, union, intersection) for k-subsets in lexicographic order."""
    m = len(masks)
    idx: list[int] = []

    def rec(start, uni, inter):
        if len(idx) == k:
            yield tuple(idx), uni, inter
            return
        for i in range(start, m - (k - len(idx)) + 1):
            idx.append(i)
            yield from rec(i + 1, uni | masks[i], inter & masks[i])
            idx.pop()

    yield from rec(0, 0, full)


def hke_bruteforce(F: SetSystem, cap: int = BRUTE_CAP) -> HkeVerdict:
    """Check the defining identity on every non-empty subfamily."""
    method = "brute"
    _check_size(F, cap, method)
    bad = _uniformity_witness(F, method)
    if bad is not None:
        return bad
    alpha = F.masks[0].bit_count()
    target = 2 * alpha
    full = F.ground.full_mask
    for k in range(1, F.m + 1):
        for idx, uni, inter in _walk_combinations(F.masks, k, full):
            total = uni.bit_count() + inter.bit_count()
            if total != target:
                return _fail(method, SUBSET, [idx], (total, target))
    return HkeVerdict(True, method, alpha=alpha)


def _subfamily_tables(F: SetSystem) -> tuple[list[int], list[int]]:
    """Union and intersection masks for every subfamily mask."""
    n = 1 << F.m
    uni = [0] * n
    inter = [F.ground.full_mask] * n
    for mask in range(1, n):
        low = mask & -mask
        rest = mask ^ low
        mk = F.masks[low.bit_length() - 1]
        uni[mask] = uni[rest] | mk
        inter[mask] = inter[rest] & mk
    return uni, inter


def disjoint_pairs(m: int):
    """Unordered pairs of disjoint non-empty subfamilies, each listed once.

    Ordered by the size and rank of the combined subfamily, then by the
    size and rank of the part holding the lowest combined index.
    """
    for union in subfamilies_by_size(m, start=2):
        low = union & -union
        rest = list(bits(union ^ low))
        for k in range(len(rest)):
            for combo in combinations(rest, k):
                g1 = low
                for i in combo:
                    g1 |= 1 << i
                yield g1, union ^ g1


def hke_pairs(F: SetSystem, cap: int = PAIRS_CAP) -> HkeVerdict:
    """Check the duality equality on every pair of disjoint non-empty subfamilies."""
    method = "pairs"
    _check_size(F, cap, method)
    uni, inter = _subfamily_tables(F)
    for g1, g2 in disjoint_pairs(F.m):
        lhs = (inter[g1] & ~uni[g2]).bit_count()
        rhs = (inter[g2] & ~uni[g1]).bit_count()
        if lhs != rhs:
            return _fail(method, PAIR, [tuple(bits(g1)), tuple(bits(g2))], (lhs, rhs))
    # The duality condition forces uniformity; alpha must still be positive.
    sizes = {mk.bit_count() for mk in F.masks}
    if len(sizes) != 1:
        raise TheoremViolation(f"pairs oracle passed a non-uniform family: {F!r}")
    (alpha,) = sizes
    if alpha < 1:
        return _fail(method, NONPOSITIVE_ALPHA, [(0,)], (alpha, 1))
    return HkeVerdict(True, method, alpha=alpha)


def hke_partition(F: SetSystem) -> HkeVerdict:
    """Compare atom cells of complementary signatures. Linear in the input size."""
    method = "partition"
    if not F.masks:
        raise EmptyFamilyError("family must be non-empty")
    prof = atom_profile(F)
    everyone = F.all_mask
    union_size = sum(prof.size(s) for s in prof.cells if s)
    core_size = prof.size(everyone)
    total = union_size + core_size
    if total % 2:
        return _fail(method, PARITY, [tuple(range(F.m))], (total, total - 1))

    violations = []
    for sig in prof.cells:
        if sig == 0 or sig == everyone:
            continue
        g1 = sig if sig & 1 else everyone ^ sig
        g2 = everyone ^ g1
        a, b = prof.size(g1), prof.size(g2)
        if a != b:
            key = (g1.bit_count(), tuple(bits(g1)))
            violations.append((key, g1, g2, a, b))
    if violations:
        _, g1, g2, a, b = min(violations)
        return _fail(method, PAIR, [tuple(bits(g1)), tuple(bits(g2))], (a, b))

    alpha = total // 2
    if alpha < 1:
        return _fail(method, NONPOSITIVE_ALPHA, [(0,)], (alpha, 1))
    sizes = tuple(mk.bit_count() for mk in F.masks)
    if any(s != alpha for s in sizes):
        raise TheoremViolation(f"partition oracle passed a non-uniform family: {F!r}")
    return HkeVerdict(True, method, alpha=alpha, member_sizes=sizes)


ORACLES = {
    "brute": hke_bruteforce,
    "pairs": hke_pairs,
    "partition": hke_partition,
}


@dataclass(frozen=True)
class EliminationTerms:
    """Bookkeeping behind the fact that complementary-cell balance forces uniformity.

    For a member D, ``x`` sums the cells of proper signatures containing D
    and ``y`` those of non-empty signatures avoiding it.
    """

    member: int
    x: int
    y: int
    union_size: int
    core_size: int
    member_size: int


def elimination_terms(F: SetSystem) -> list[EliminationTerms]:
    prof = atom_profile(F)
    everyone = F.all_mask
    core = prof.size(everyone)
    union_size = sum(prof.size(s) for s in prof.cells if s)
    out = []
    for d in range(F.m):
        x = y = 0
        for sig in prof.cells:
            if sig == 0 or sig == everyone:
                continue
            if sig >> d & 1:
                x += prof.size(sig)
            else:
                y += prof.size(sig)
        out.append(EliminationTerms(d, x, y, union_size, core, F.masks[d].bit_count()))
    return out


@dataclass
class AuditReport:
    holds: bool
    alpha: int | None
    verdicts: dict[str, HkeVerdict]
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self, F: SetSystem | None = None, timing: bool = True) -> dict:
        out = {
            "holds": self.holds,
            "alpha": self.alpha,
            "verdicts": {k: v.to_dict(F) for k, v in self.verdicts.items()},
        }
        if timing:
            out["timing"] = dict(self.timings)
        return out


def equivalence_audit(
    F: SetSystem, brute_cap: int = BRUTE_CAP, pairs_cap: int = PAIRS_CAP
) -> AuditReport:
    """Run all three oracles and insist that they agree."""
    verdicts, timings = {}, {}
    runners = {
        "brute": lambda: hke_bruteforce(F, brute_cap),
        "pairs": lambda: hke_pairs(F, pairs_cap),
        "partition": lambda: hke_partition(F),
    }
    for name, run in runners.items():
        t0 = time.perf_counter()
        verdicts[name] = run()
        timings[name] = time.perf_counter() - t0
    outcomes = {v.holds for v in verdicts.values()}
    if len(outcomes) != 1:
        summary = {k: v.holds for k, v in verdicts.items()}
        raise DisagreementError(f"oracles disagree on {F!r}: {summary}")
    alphas = {v.alpha for v in verdicts.values()}
    if len(alphas) != 1:
        raise DisagreementError(f"oracles report different alpha on {F!r}: {alphas}")
    for name, v in verdicts.items():
        if v.witness is not None and not v.witness.is_valid(F):
            raise TheoremViolation(f"{name} oracle produced a witness that does not replay")
    (holds,) = outcomes
    (alpha,) = alphas
    return AuditReport(holds, alpha, verdicts, timings)


def _complement_pairs(m: int) -> list[int]:
    """Proper signatures containing member 0; each stands for one complementary pair."""
    everyone = (1 << m) - 1
    return [s for s in range(1, everyone) if s & 1]


def hke_from_cell_sizes(m: int, pair_sizes: Sequence[int], core_size: int) -> SetSystem:
    """Materialize a family whose complementary atom cells have the given sizes.

    ``pair_sizes[k]`` is the size of both cells of the k-th complementary
    pair, pairs listed by the mask of the side containing member 0.
    """
    sigs = _complement_pairs(m)
    if len(pair_sizes) != len(sigs):
        raise ValueError(f"expected {len(sigs)} pair sizes for m={m}, got {len(pair_sizes)}")
    if core_size < 0 or any(s < 0 for s in pair_sizes):
        raise ValueError("cell sizes must be non-negative")
    everyone = (1 << m) - 1
    cells: list[tuple[int, int]] = []
    for sig, size in zip(sigs, pair_sizes):
        cells.append((sig, size))
        cells.append((everyone ^ sig, size))
    cells.append((everyone, core_size))
    n = sum(size for _, size in cells)
    width = max(1, len(str(max(n - 1, 0))))
    members: list[list[str]] = [[] for _ in range(m)]
    labels = []
    counter = 0
    for sig, size in cells:
        for _ in range(size):
            label = f"x{counter:0{width}d}"
            counter += 1
            labels.append(label)
            for j in bits(sig):
                members[j].append(label)
    return SetSystem.from_sets(members, ground=labels)


def generate_hke(m: int, cell_size_bound: int = 2, seed: int | None = 0) -> SetSystem:
    """Random HKE family with exactly ``m`` distinct members; deterministic per seed."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if cell_size_bound < 1:
        raise ValueError("cell_size_bound must be positive")
    rng = random.Random(seed)
    npairs = len(_complement_pairs(m))
    while True:
        pair_sizes = [rng.randint(0, cell_size_bound) for _ in range(npairs)]
        core = rng.randint(0, cell_size_bound)
        if _distinct_and_positive(m, pair_sizes, core):
            return hke_from_cell_sizes(m, pair_sizes, core)


def _distinct_and_positive(m: int, pair_sizes: Sequence[int], core: int) -> bool:
    everyone = (1 << m) - 1
    live = [s for s, size in zip(_complement_pairs(m), pair_sizes) if size]
    if not live and core == 0:
        return False
    # Members j and k differ iff some non-empty cell separates them; each
    # live pair contributes both a signature and its complement.
    for j in range(m):
        for k in range(j + 1, m):
            if not any((s >> j & 1) != (s >> k & 1) for s in live):
                return False
    return True


class PreconditionError(HkeError, ValueError):
    pass


@dataclass(frozen=True)
class ExerciseReport:
    clause1: tuple[int, int]
    clause2: tuple[int, int]
    via_duality1: tuple[int, int]
    via_duality2: tuple[int, int]

    @property
    def holds(self) -> bool:
        return (
            self.clause1[0] == self.clause1[1]
            and self.clause2[0] == self.clause2[1]
            and self.clause1 == self.via_duality1
            and self.clause2 == self.via_duality2
        )


def exercise_identities(F: SetSystem) -> ExerciseReport:
    """|A-B-C| vs |B&C-A| and |A&B-C-D| vs |C&D-A-B| on a 4-member HKE family."""
    if F.m != 4:
        raise PreconditionError(f"need exactly 4 members, got {F.m}")
    if not hke_partition(F).holds:
        raise PreconditionError("family is not HKE")
    A, B, C, D = F.as_sets()
    c1 = (len(A - B - C), len(B & C - A))
    c2 = (len(A & B - C - D), len(C & D - A - B))
    d1 = duality_equality(F, [0], [1, 2])[:2]
    d2 = duality_equality(F, [0, 1], [2, 3])[:2]
    return ExerciseReport(c1, c2, d1, d2)
