"""Line-oriented text formats for set-systems and graphs, and random corpora.

Set-system format::

    # comment
    ground: 1 2 3     (optional; defaults to the union of the members)
    set: 1 2
    set: 2 3

Graph format::

    vertices: 1 2 3 4 (optional; isolated vertices must be listed here)
    edge: 1 2
    edge: 2 3
"""

from __future__ import annotations

import random
import warnings

from .errors import ParseError
from .graph import Graph
from .sets import GroundSet, SetSystem


class DuplicateEdgeWarning(UserWarning):
    pass


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: values', got {raw.strip()!r}", lineno)
        yield lineno, key.strip(), rest.split()


def parse_setsystem(text: str) -> SetSystem:
    ground = None
    members: list[tuple[int, list[str]]] = []
    for lineno, key, tokens in _lines(text):
        if key == "ground":
            if ground is not None:
                raise ParseError("ground declared twice", lineno)
            if len(set(tokens)) != len(tokens):
                raise ParseError("repeated label in ground", lineno)
            ground = tokens
        elif key == "set":
            members.append((lineno, tokens))
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if ground is None:
        g = GroundSet.of(t for _, toks in members for t in toks)
    else:
        g = GroundSet.of(ground)
    masks = []
    for lineno, tokens in members:
        for t in tokens:
            if t not in g.index:
                raise ParseError(f"label {t!r} is not in the declared ground", lineno)
        masks.append(g.mask_of(tokens))
    return SetSystem(g, tuple(masks))


def render_setsystem(F: SetSystem) -> str:
    lines = ["ground: " + " ".join(F.ground.labels)]
    for s in F.members:
        lines.append(("set: " + " ".join(s.labels)).rstrip())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    seen: set[frozenset[str]] = set()
    dupes = 0
    for lineno, key, tokens in _lines(text):
        if key == "vertices":
            vertices.extend(tokens)
        elif key == "edge":
            if len(tokens) != 2:
                raise ParseError("an edge needs exactly two endpoints", lineno)
            u, v = tokens
            if u == v:
                raise ParseError(f"loop at vertex {u!r}", lineno)
            e = frozenset((u, v))
            if e in seen:
                dupes += 1
                continue
            seen.add(e)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if len(set(vertices)) != len(vertices):
        raise ParseError("repeated vertex label")
    if dupes:
        warnings.warn(f"{dupes} duplicate edge(s) collapsed", DuplicateEdgeWarning, stacklevel=2)
    return Graph.from_edges(edges, vertices=vertices)


def render_graph(G: Graph) -> str:
    lines = [("vertices: " + " ".join(G.vertices.labels)).rstrip()]
    lines += [f"edge: {u} {v}" for u, v in G.label_edges()]
    return "\n".join(lines) + "\n"


def random_setsystem(m: int, ground_size: int, density: float, seed: int | None = 0) -> SetSystem:
    """Each ground element joins each of the m members independently with probability density."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if ground_size < 0:
        raise ValueError("ground_size must be non-negative")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    width = len(str(ground_size))
    ground = GroundSet.of(f"{i:0{width}d}" for i in range(1, ground_size + 1))
    masks = []
    for _ in range(m):
        mask = 0
        for i in range(ground_size):
            # strict comparison keeps density 0 and 1 exact
            if rng.random() < density:
                mask |= 1 << i
        masks.append(mask)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return SetSystem(ground, tuple(masks))
