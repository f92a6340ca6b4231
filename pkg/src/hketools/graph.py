"""KE-graph recognition and the matching-certificate harness.

A graph is KE when its independence number plus its matching number equals
its order. Such graphs are exactly those admitting a certificate: an HKE
family F of maximum independent sets together with a matching that
saturates V - union(F) into intersection(F). ``verify_characterization``
searches for certificates and checks that their existence tracks KE-ness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .errors import CapExceededError, DisagreementError, OverlapError, TheoremViolation
from .hke import HkeVerdict, hke_bruteforce, hke_pairs, hke_partition
from .sets import GroundSet, SetSystem, bits, ke_check, subfamilies_by_size

EXACT_CAP = 24
CERTIFY_EDGE_LIMIT = 20
DEFAULT_SEARCH_CAP = 12


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are index pairs (i, j) with i < j."""

    vertices: GroundSet
    edges: frozenset[tuple[int, int]]
    adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.vertices)
        adj = [0] * n
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"loop at vertex {self.vertices.labels[i]!r}")
            if not (0 <= i < n and 0 <= j < n) or i > j:
                raise ValueError(f"bad edge {(i, j)}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        object.__setattr__(self, "adj", tuple(adj))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], vertices: Iterable | None = None) -> "Graph":
        edges = [(str(u), str(v)) for u, v in edges]
        if vertices is None:
            vertices = [x for e in edges for x in e]
        else:
            vertices = list(vertices) + [x for e in edges for x in e]
        ground = GroundSet.of(vertices)
        pairs = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u!r}")
            i, j = ground.index[u], ground.index[v]
            pairs.add((min(i, j), max(i, j)))
        return cls(ground, frozenset(pairs))

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> "Graph":
        """Graph on vertices 1..n whose edges are selected from all_pairs(n) by ``mask``."""
        pairs = all_pairs(n)
        ground = GroundSet.of(range(1, n + 1))
        # GroundSet sorts labels as strings; remap to canonical indices.
        pos = [ground.index[str(k + 1)] for k in range(n)]
        chosen = set()
        for b in bits(mask):
            a, c = pairs[b]
            i, j = pos[a], pos[c]
            chosen.add((min(i, j), max(i, j)))
        return cls(ground, frozenset(chosen))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def label_edges(self) -> list[tuple[str, str]]:
        lab = self.vertices.labels
        return [(lab[i], lab[j]) for i, j in sorted(self.edges)]

    def is_independent(self, mask: int) -> bool:
        return all(not (self.adj[i] & mask) for i in bits(mask))


@lru_cache(maxsize=None)
def all_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(n), 2))


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint edges of a graph, stored as index pairs.

    When produced by ``saturating_matching`` each pair is oriented
    (saturated side, target side).
    """

    graph: Graph
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = 0
        for u, v in self.pairs:
            if not (self.graph.adj[u] >> v & 1):
                raise ValueError(f"{(u, v)} is not an edge")
            if (seen >> u & 1) or (seen >> v & 1):
                raise ValueError("matching edges share a vertex")
            seen |= (1 << u) | (1 << v)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def covered(self) -> int:
        mask = 0
        for u, v in self.pairs:
            mask |= (1 << u) | (1 << v)
        return mask

    def labels(self) -> list[tuple[str, str]]:
        lab = self.graph.vertices.labels
        return [(lab[u], lab[v]) for u, v in self.pairs]


@dataclass(frozen=True)
class OmegaFamily:
    family: SetSystem
    alpha: int


def _check_cap(G: Graph, cap: int):
    if G.n > cap:
        raise CapExceededError(f"exact search is capped at {cap} vertices (got {G.n})")


def _greedy_independent(G: Graph) -> int:
    remaining = G.vertices.full_mask
    size = 0
    while remaining:
        # min-degree vertex within what is left
        v = min(bits(remaining), key=lambda i: (G.adj[i] & remaining).bit_count())
        size += 1
        remaining &= ~((1 << v) | G.adj[v])
    return size


def independence(G: Graph, cap: int = EXACT_CAP) -> OmegaFamily:
    """alpha(G) and every maximum independent set, by branch and bound."""
    _check_cap(G, cap)
    adj = G.adj
    best = _greedy_independent(G)
    found: list[int] = []

    def rec(chosen: int, size: int, cand: int):
        nonlocal best, found
        if not cand:
            if size > best:
                best, found = size, [chosen]
            elif size == best:
                found.append(chosen)
            return
        if size + cand.bit_count() < best:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        rec(chosen | low, size + 1, cand & ~low & ~adj[v])
        rec(chosen, size, cand & ~low)

    rec(0, 0, G.vertices.full_mask)
    return OmegaFamily(SetSystem(G.vertices, tuple(found)), best)


def matching_number(
    G: Graph, cap: int = EXACT_CAP, certify: bool = True
) -> tuple[int, Matching]:
    """Maximum matching by memoized branching on the lowest uncovered vertex.

    With ``certify`` and at most 20 edges, an independent search over edge
    subsets confirms that no larger matching exists.
    """
    _check_cap(G, cap)
    adj = G.adj

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[int, tuple]:
        if not mask:
            return 0, ()
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        top = best(rest)
        for u in bits(adj[v] & rest):
            size, pairs = best(rest & ~(1 << u))
            if size + 1 > top[0]:
                top = (size + 1, ((v, u),) + pairs)
        return top

    mu, pairs = best(G.vertices.full_mask)
    M = Matching(G, pairs)
    if certify and len(G.edges) <= CERTIFY_EDGE_LIMIT and _has_matching_of_size(G, mu + 1):
        raise TheoremViolation(f"matching search missed a matching of size {mu + 1}")
    return mu, M


def _has_matching_of_size(G: Graph, k: int) -> bool:
    if 2 * k > G.n:
        return False
    for combo in combinations(sorted(G.edges), k):
        seen = 0
        for u, v in combo:
            bit = (1 << u) | (1 << v)
            if seen & bit:
                break
            seen |= bit
        else:
            return True
    return False


def is_ke_graph(G: Graph, cap: int = EXACT_CAP) -> bool:
    alpha = independence(G, cap).alpha
    mu, _ = matching_number(G, cap)
    return alpha + mu == G.n


def omega_is_hke(G: Graph, omega: OmegaFamily | None = None) -> HkeVerdict:
    """HKE verdict for the family of all maximum independent sets."""
    omega = omega or independence(G)
    verdict = hke_partition(omega.family)
    if omega.family.m <= 8:
        brute = hke_bruteforce(omega.family)
        if brute.holds != verdict.holds:
            raise DisagreementError(f"oracles disagree on the maximum independent sets of {G}")
    return verdict


def _to_mask(G: Graph, X) -> int:
    if isinstance(X, int):
        return X
    if hasattr(X, "mask"):
        return X.mask
    return G.vertices.mask_of(X)


def saturating_matching(G: Graph, X, Y) -> Matching | None:
    """A matching of X-Y edges covering every vertex of X, or None.

    Decided exactly by alternating-path augmentation.
    """
    xm, ym = _to_mask(G, X), _to_mask(G, Y)
    if xm & ym:
        raise OverlapError("X and Y must be disjoint")
    if xm.bit_count() > ym.bit_count():
        return None
    match_y: dict[int, int] = {}

    def augment(x: int, visited: set[int]) -> bool:
        for y in bits(G.adj[x] & ym):
            if y in visited:
                continue
            visited.add(y)
            if y not in match_y or augment(match_y[y], visited):
                match_y[y] = x
                return True
        return False

    for x in bits(xm):
        if not augment(x, set()):
            return None
    pairs = tuple(sorted((x, y) for y, x in match_y.items()))
    return Matching(G, pairs)


class SubfamilyError(ValueError):
    pass


@dataclass(frozen=True)
class KeSubfamilyReport:
    applicable: bool
    ke: bool
    verdict: HkeVerdict | None


def ke_subfamily_implies_hke(
    G: Graph, F, omega: OmegaFamily | None = None
) -> KeSubfamilyReport:
    """If F (drawn from the maximum independent sets) is KE, check that it is HKE too."""
    omega = omega or independence(G)
    if isinstance(F, SetSystem):
        masks = F.masks
    else:
        masks = tuple(G.vertices.mask_of(s) for s in F)
    if not masks:
        raise SubfamilyError("subfamily must be non-empty")
    allowed = set(omega.family.masks)
    for mk in masks:
        if mk not in allowed:
            labels = G.vertices.labels_of(mk)
            raise SubfamilyError(f"{set(labels)} is not a maximum independent set")
    sub = SetSystem(G.vertices, tuple(masks))
    if not ke_check(sub):
        return KeSubfamilyReport(False, False, None)
    verdict = hke_partition(sub)
    if not verdict.holds:
        raise TheoremViolation(f"KE family of maximum independent sets is not HKE: {sub!r}")
    return KeSubfamilyReport(True, True, verdict)


@dataclass(frozen=True)
class Certificate:
    subfamily: tuple[int, ...]
    family: SetSystem
    outside: int
    core: int
    matching: Matching
    pairs_holds: bool | None
    partition_holds: bool

    @property
    def outside_covered(self) -> int:
        return (self.matching.covered & self.outside).bit_count()

    @property
    def core_covered(self) -> int:
        return (self.matching.covered & self.core).bit_count()

    def to_dict(self) -> dict:
        lab = self.family.ground
        return {
            "subfamily": list(self.subfamily),
            "members": [list(s.labels) for s in self.family.members],
            "outside": list(lab.labels_of(self.outside)),
            "core": list(lab.labels_of(self.core)),
            "matching": [list(e) for e in self.matching.labels()],
            "outside_covered": [self.outside_covered, self.outside.bit_count()],
            "core_covered": [self.core_covered, self.core.bit_count()],
            "pairs_oracle": self.pairs_holds,
            "partition_oracle": self.partition_holds,
        }


@dataclass
class CharacterizationReport:
    n: int
    alpha: int
    mu: int
    is_ke: bool
    omega_size: int
    certificate: Certificate | None
    examined: int
    # Whether the whole family of maximum independent sets is itself a certificate.
    omega_certifies: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "mu": self.mu,
            "is_ke": self.is_ke,
            "omega_size": self.omega_size,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "subfamilies_examined": self.examined,
            "omega_certifies": self.omega_certifies,
        }


def _try_certificate(G: Graph, omega: SetSystem, sub: int, full_check: bool) -> Certificate | None:
    uni = inter = None
    for i in bits(sub):
        mk = omega.masks[i]
        uni = mk if uni is None else uni | mk
        inter = mk if inter is None else inter & mk
    outside = G.vertices.full_mask & ~uni
    if outside.bit_count() > inter.bit_count():
        return None
    M = saturating_matching(G, outside, inter)
    if M is None:
        return None
    F = omega.restrict(sub)
    if not hke_partition(F).holds:
        return None
    pairs_ok = hke_pairs(F).holds if full_check and F.m <= 16 else None
    return Certificate(tuple(bits(sub)), F, outside, inter, M, pairs_ok, True)


def verify_characterization(
    G: Graph, search_cap: int = DEFAULT_SEARCH_CAP, omega: OmegaFamily | None = None
) -> CharacterizationReport:
    """Search for a certificate and check it exists exactly when G is KE.

    Subfamilies are tried by size, then lexicographic rank. For KE graphs
    the first certificate ends the search; otherwise every subfamily is
    tried, which needs at most ``search_cap`` maximum independent sets.
    """
    omega = omega or independence(G)
    mu, _ = matching_number(G)
    ke = omega.alpha + mu == G.n
    fam = omega.family
    if not ke and fam.m > search_cap:
        raise CapExceededError(
            f"{fam.m} maximum independent sets exceed the search cap of {search_cap}"
        )
    cert = None
    examined = 0
    for sub in subfamilies_by_size(fam.m):
        if ke and sub.bit_count() > 1 and fam.m > search_cap:
            raise CapExceededError("no singleton certificate and the family exceeds the search cap")
        examined += 1
        cert = _try_certificate(G, fam, sub, full_check=True)
        if cert is not None:
            break
    if ke and cert is None:
        raise TheoremViolation(f"KE graph without a certificate: {G.label_edges()}")
    if not ke and cert is not None:
        raise TheoremViolation(f"certificate found on a non-KE graph: {G.label_edges()}")
    whole = _try_certificate(G, fam, fam.all_mask, full_check=False) is not None
    return CharacterizationReport(G.n, omega.alpha, mu, ke, fam.m, cert, examined, whole)
