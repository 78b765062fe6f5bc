"""Core hypergraph model: uniform and multi hypergraphs, graphs, colorings.

Vertices are the integers ``0..n-1``.  Edges are stored as sorted tuples and
a :class:`Hypergraph` keeps its edge list in lexicographic order, so two
hypergraphs on the same labelled vertex set compare equal iff they have the
same edges.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

Edge = tuple[int, ...]

CANONICAL_LIMIT = 12


class HypergraphError(ValueError):
    """Invalid hypergraph data or an operation outside its domain."""


class FormatError(HypergraphError):
    """Malformed hypergraph text."""


class SizeLimitError(HypergraphError):
    """Input exceeds a configured size guard."""


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise HypergraphError(f"vertex {v} out of range for n={n}")


class _Incidence:
    # lazily built vertex -> edge-index lists shared by both hypergraph kinds
    __slots__ = ()

    def incidence(self) -> list[list[int]]:
        inc = self._inc
        if inc is None:
            inc = [[] for _ in range(self.n)]
            for i, e in enumerate(self.edges):
                for v in e:
                    inc[v].append(i)
            self._inc = inc
        return inc

    def degree(self, v: int) -> int:
        _check_vertex(self.n, v)
        return len(self.incidence()[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self.incidence()]

    def neighborhood(self, v: int) -> frozenset[int]:
        """Vertices sharing at least one edge with ``v`` (``v`` excluded)."""
        _check_vertex(self.n, v)
        out: set[int] = set()
        for i in self.incidence()[v]:
            out.update(self.edges[i])
        out.discard(v)
        return frozenset(out)

    def __len__(self) -> int:
        return len(self.edges)


class Hypergraph(_Incidence):
    """Simple ``r``-uniform hypergraph in normal form."""

    __slots__ = ("n", "r", "edges", "_inc", "_edge_set")

    def __init__(self, n: int, r: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise HypergraphError("vertex count must be non-negative")
        if r < 1:
            raise HypergraphError("uniformity must be at least 1")
        normal = []
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != r:
                raise HypergraphError(f"edge {t} has size {len(t)}, expected {r}")
            if len(set(t)) != r:
                raise HypergraphError(f"repeated vertex in edge {t}")
            if t[0] < 0 or t[-1] >= n:
                raise HypergraphError(f"edge {t} has a vertex out of range for n={n}")
            normal.append(t)
        normal.sort()
        for a, b in zip(normal, normal[1:]):
            if a == b:
                raise HypergraphError(f"duplicate edge {a}")
        self.n = n
        self.r = r
        self.edges: tuple[Edge, ...] = tuple(normal)
        self._inc = None
        self._edge_set = None

    @classmethod
    def _trusted(cls, n: int, r: int, edges: Iterable[Edge]) -> "Hypergraph":
        # edges already sorted tuples, deduplicated, in range
        obj = cls.__new__(cls)
        Hypergraph._fill(obj, n, r, tuple(sorted(edges)))
        return obj

    @staticmethod
    def _fill(obj, n, r, edges):
        obj.n = n
        obj.r = r
        obj.edges = edges
        obj._inc = None
        obj._edge_set = None

    def edge_set(self) -> frozenset[Edge]:
        if self._edge_set is None:
            self._edge_set = frozenset(self.edges)
        return self._edge_set

    def __contains__(self, e) -> bool:
        return tuple(sorted(e)) in self.edge_set()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.r, self.edges) == (other.n, other.r, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, r={self.r}, edges={len(self.edges)})"

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Image under the vertex map ``v -> perm[v]`` (a permutation of 0..n-1)."""
        if sorted(perm) != list(range(self.n)):
            raise HypergraphError("relabel needs a permutation of 0..n-1")
        return Hypergraph._trusted(
            self.n, self.r, (tuple(sorted(perm[v] for v in e)) for e in self.edges)
        )

    def to_multi(self) -> "MultiHypergraph":
        return MultiHypergraph(self.n, self.edges)


class Graph(Hypergraph):
    """Simple graph, i.e. a 2-uniform :class:`Hypergraph`."""

    __slots__ = ()

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        super().__init__(n, 2, edges)

    @classmethod
    def _trusted(cls, n, r, edges):
        obj = cls.__new__(cls)
        Hypergraph._fill(obj, n, 2, tuple(sorted(edges)))
        return obj

    @classmethod
    def from_hypergraph(cls, h: Hypergraph) -> "Graph":
        if h.r != 2:
            raise HypergraphError("a graph needs uniformity 2")
        return cls._trusted(h.n, 2, h.edges)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


class MultiHypergraph(_Incidence):
    """Hypergraph whose edges may repeat and may have different sizes."""

    __slots__ = ("n", "edges", "_inc")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise HypergraphError("vertex count must be non-negative")
        normal = []
        for e in edges:
            t = tuple(sorted(e))
            if not t:
                raise HypergraphError("empty edge")
            if len(set(t)) != len(t):
                raise HypergraphError(f"repeated vertex in edge {t}")
            if t[0] < 0 or t[-1] >= n:
                raise HypergraphError(f"edge {t} has a vertex out of range for n={n}")
            normal.append(t)
        normal.sort()
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(normal)
        self._inc = None

    def multiplicities(self) -> Counter:
        return Counter(self.edges)

    def sizes(self) -> set[int]:
        return {len(e) for e in self.edges}

    def simplify(self) -> Hypergraph:
        """Drop repeated edges; requires uniform edge sizes."""
        sizes = self.sizes()
        if len(sizes) > 1:
            raise HypergraphError("cannot simplify a mixed-uniformity multi-hypergraph")
        r = sizes.pop() if sizes else 1
        return Hypergraph._trusted(self.n, r, set(self.edges))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiHypergraph):
            return NotImplemented
        return (self.n, self.edges) == (other.n, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"MultiHypergraph(n={self.n}, edges={len(self.edges)})"


class ColoredHypergraph:
    """A (multi-)hypergraph with a proper edge coloring.

    ``colors[i]`` is the color of ``base.edges[i]``; ``None`` means uncolored.
    Two edges with the same (non-None) color must be vertex-disjoint.
    """

    __slots__ = ("base", "colors")

    def __init__(self, base: Hypergraph | MultiHypergraph, colors: Sequence[int | None]):
        if len(colors) != len(base.edges):
            raise HypergraphError("one color per edge required")
        seen: dict[int, set[int]] = {}
        for e, c in zip(base.edges, colors):
            if c is None:
                continue
            used = seen.setdefault(c, set())
            if used.intersection(e):
                raise HypergraphError(f"color {c} is not a matching")
            used.update(e)
        self.base = base
        self.colors = tuple(colors)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.base.edges

    def color_classes(self) -> dict[int, list[Edge]]:
        out: dict[int, list[Edge]] = {}
        for e, c in zip(self.base.edges, self.colors):
            if c is not None:
                out.setdefault(c, []).append(e)
        return out

    def __repr__(self) -> str:
        return f"ColoredHypergraph({self.base!r}, colors={len(set(self.colors))})"

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[Edge, int | None]], multi: bool):
        # sort (edge, color) pairs together so colors stay aligned with normal form
        items = sorted(((tuple(sorted(e)), c) for e, c in pairs), key=lambda p: (p[0], p[1] is None, p[1] or 0))
        edges = [e for e, _ in items]
        if multi:
            base: Hypergraph | MultiHypergraph = MultiHypergraph(n, edges)
        else:
            r = len(edges[0]) if edges else 1
            base = Hypergraph(n, r, edges)
        return cls(base, [c for _, c in items])


def degree(h: Hypergraph | MultiHypergraph, v: int) -> int:
    """Number of edges (with multiplicity) containing ``v``."""
    return h.degree(v)


def link_hypergraph(h: Hypergraph | MultiHypergraph, x: int) -> MultiHypergraph:
    """Traces ``e - {x}`` of the edges through ``x``, on the same vertex set."""
    _check_vertex(h.n, x)
    traces = [tuple(v for v in h.edges[i] if v != x) for i in h.incidence()[x]]
    return MultiHypergraph(h.n, [t for t in traces if t])


def link_with_origin(h: Hypergraph | MultiHypergraph, x: int) -> list[tuple[Edge, int]]:
    """Like :func:`link_hypergraph` but keeps the index of each source edge."""
    _check_vertex(h.n, x)
    return [(tuple(v for v in h.edges[i] if v != x), i) for i in h.incidence()[x]]


def is_linear(h: Hypergraph | MultiHypergraph) -> bool:
    """True iff every two edges share at most one vertex."""
    seen: set[tuple[int, int]] = set()
    for e in h.edges:
        for p in combinations(e, 2):
            if p in seen:
                return False
            seen.add(p)
    return True


def disjoint_union(h1: Hypergraph, h2: Hypergraph) -> Hypergraph:
    """``h1`` followed by a copy of ``h2`` shifted by ``h1.n``."""
    if h1.r != h2.r:
        raise HypergraphError(f"uniformity mismatch: {h1.r} vs {h2.r}")
    shift = h1.n
    edges = list(h1.edges) + [tuple(v + shift for v in e) for e in h2.edges]
    cls = Graph if isinstance(h1, Graph) and isinstance(h2, Graph) else Hypergraph
    return cls._trusted(h1.n + h2.n, h1.r, edges)


def empty_hypergraph(n: int, r: int) -> Hypergraph:
    return Hypergraph._trusted(n, r, ())


# ---------------------------------------------------------------------------
# canonical form


def colex_rank(e: Sequence[int]) -> int:
    return sum(comb(v, i + 1) for i, v in enumerate(e))


def _refine(h: Hypergraph) -> list[list[int]]:
    """Ordered cells of an isomorphism-invariant vertex partition."""
    inc = h.incidence()
    color = [len(inc[v]) for v in range(h.n)]
    while True:
        sig = []
        for v in range(h.n):
            around = sorted(
                tuple(sorted(color[u] for u in h.edges[i] if u != v)) for i in inc[v]
            )
            sig.append((color[v], tuple(around)))
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(color)):
            color = new
            break
        color = new
    cells: dict[int, list[int]] = {}
    for v in range(h.n):
        cells.setdefault(color[v], []).append(v)
    # larger invariant first: high-degree vertices get the small labels
    return [cells[c] for c in sorted(cells, reverse=True)]


def transposition_classes(h: Hypergraph) -> list[int]:
    """Class id per vertex; ``u ~ v`` iff swapping ``u`` and ``v`` is an automorphism."""
    es = h.edge_set()
    inc = h.incidence()
    cls = list(range(h.n))
    for u in range(h.n):
        if cls[u] != u:
            continue
        for v in range(u + 1, h.n):
            if cls[v] != v or len(inc[u]) != len(inc[v]):
                continue
            ok = True
            for i in inc[u]:
                e = h.edges[i]
                if v in e:
                    continue
                img = tuple(sorted(v if x == u else x for x in e))
                if img not in es:
                    ok = False
                    break
            if ok:
                cls[v] = u
    return cls


def canonical_labeling(h: Hypergraph, limit: int = CANONICAL_LIMIT) -> list[int]:
    """Permutation ``perm`` (old -> new label) giving the canonical relabelling."""
    if h.n > limit:
        raise SizeLimitError(f"canonical form limited to n <= {limit}, got n={h.n}")
    n = h.n
    inc = h.incidence()
    cells = _refine(h)
    slot_cell = []
    for ci, cell in enumerate(cells):
        slot_cell.extend([ci] * len(cell))
    twin = transposition_classes(h)
    label = [-1] * n
    order: list[int] = []
    best: list[list[int]] | None = None
    current: list[list[int]] = []
    best_order: list[int] = []

    def segment(v: int, j: int) -> list[int]:
        out = []
        for i in inc[v]:
            ls = []
            for u in h.edges[i]:
                if u == v:
                    ls.append(j)
                elif label[u] >= 0:
                    ls.append(label[u])
                else:
                    break
            else:
                ls.sort()
                out.append(colex_rank(ls))
        out.sort()
        return out

    def rec(j: int, eq: bool) -> bool:
        # eq: current prefix equals best's prefix; otherwise it is strictly smaller
        nonlocal best, best_order
        if j == n:
            if best is None or not eq:
                best = [s[:] for s in current]
                best_order = order[:]
                return True
            return False
        updated = False
        tried: set[int] = set()
        for v in cells[slot_cell[j]]:
            if label[v] >= 0 or twin[v] in tried:
                continue
            tried.add(twin[v])
            seg = segment(v, j)
            child_eq = eq
            if best is not None and eq and seg != best[j]:
                if not _seg_less(seg, best[j]):
                    continue
                child_eq = False
            label[v] = j
            order.append(v)
            current.append(seg)
            if rec(j + 1, child_eq):
                updated = True
                eq = True
            current.pop()
            order.pop()
            label[v] = -1
        return updated

    rec(0, True)
    perm = [0] * n
    for j, v in enumerate(best_order):
        perm[v] = j
    return perm


def _seg_less(a: list[int], b: list[int]) -> bool:
    """Segment comparison where a proper prefix counts as the larger one."""
    for x, y in zip(a, b):
        if x != y:
            return x < y
    return len(a) > len(b)


def canonical_form(h: Hypergraph, limit: int = CANONICAL_LIMIT) -> bytes:
    """Byte string equal for two hypergraphs iff they are isomorphic."""
    return write_hypergraph(h.relabel(canonical_labeling(h, limit))).encode()


def is_isomorphic(h1: Hypergraph, h2: Hypergraph, limit: int = CANONICAL_LIMIT) -> bool:
    if (h1.n, h1.r, len(h1.edges)) != (h2.n, h2.r, len(h2.edges)):
        return False
    return canonical_form(h1, limit) == canonical_form(h2, limit)


# ---------------------------------------------------------------------------
# text format


def write_hypergraph(h: Hypergraph | MultiHypergraph) -> str:
    if isinstance(h, MultiHypergraph):
        header = f"{h.n} *"
    else:
        header = f"{h.n} {h.r}"
    lines = [header] + [" ".join(map(str, e)) for e in h.edges]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str, strict: bool = True) -> Hypergraph | MultiHypergraph:
    """Parse the ``n r`` / ``n *`` text format.

    With ``strict`` the text must already be in normal form (strictly
    increasing vertices per line, edges in lexicographic order, trailing
    newline); otherwise edges are normalized on the way in.
    """
    if strict and not text.endswith("\n"):
        raise FormatError("missing trailing newline")
    lines = [ln for ln in text.split("\n")]
    if lines and lines[-1] == "":
        lines.pop()
    body = [(i + 1, ln) for i, ln in enumerate(lines) if not ln.startswith("#")]
    if not body:
        raise FormatError("missing header")
    lineno, head = body[0]
    parts = head.split()
    if len(parts) != 2:
        raise FormatError(f"line {lineno}: header must be 'n r' or 'n *'")
    try:
        n = int(parts[0])
        r = None if parts[1] == "*" else int(parts[1])
    except ValueError:
        raise FormatError(f"line {lineno}: malformed header {head!r}") from None
    if n < 0 or (r is not None and r < 1):
        raise FormatError(f"line {lineno}: malformed header {head!r}")
    edges: list[Edge] = []
    for lineno, ln in body[1:]:
        try:
            vs = [int(tok) for tok in ln.split(" ")] if strict else [int(tok) for tok in ln.split()]
        except ValueError:
            raise FormatError(f"line {lineno}: malformed edge {ln!r}") from None
        if len(set(vs)) != len(vs):
            raise FormatError(f"line {lineno}: repeated vertex in edge")
        if r is not None and len(vs) != r:
            raise FormatError(f"line {lineno}: edge has {len(vs)} vertices, expected {r}")
        if not vs:
            raise FormatError(f"line {lineno}: empty edge")
        if any(v < 0 or v >= n for v in vs):
            raise FormatError(f"line {lineno}: vertex out of range")
        t = tuple(vs)
        if strict and list(t) != sorted(t):
            raise FormatError(f"line {lineno}: vertices not strictly increasing")
        t = tuple(sorted(t))
        if strict and edges:
            if r is not None and t == edges[-1]:
                raise FormatError(f"line {lineno}: duplicate edge")
            if t < edges[-1]:
                raise FormatError(f"line {lineno}: edges not in lexicographic order")
        edges.append(t)
    if r is None:
        return MultiHypergraph(n, edges)
    if len(set(edges)) != len(edges):
        raise FormatError("duplicate edge")
    return Hypergraph._trusted(n, r, edges)


def all_r_subsets(n: int, r: int) -> list[Edge]:
    return list(combinations(range(n), r))
