"""Certificate-producing detectors for star-like configurations.

Every positive answer comes with a witness that :func:`verify_witness`
checks against the host hypergraph directly.  Every negative answer is the
result of an exhaustive search; when the node budget runs out the
detectors raise :class:`SearchLimitExceeded` instead of answering.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .hypercore import (
    Hypergraph,
    MultiHypergraph,
    link_with_origin,
    transposition_classes,
)

DEFAULT_NODE_CAP = 10**7

PATTERNS = (
    "berge-star",
    "berge-star-forest",
    "expansion-star",
    "expansion-star-forest",
    "matching",
    "graph-star-forest",
)


class SearchLimitExceeded(RuntimeError):
    """The search budget ran out before the answer was certified."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


def node_cap_from_env(default: int = DEFAULT_NODE_CAP) -> int:
    raw = os.environ.get("TURAN_NODE_CAP")
    return int(raw) if raw else default


class Budget:
    __slots__ = ("cap", "nodes")

    def __init__(self, cap: int | None = None):
        self.cap = node_cap_from_env() if cap is None else cap
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.cap:
            raise SearchLimitExceeded(self.nodes)


@dataclass(frozen=True)
class Pattern:
    """A forbidden configuration: ``k`` disjoint stars with ``l`` edges each."""

    kind: str  # "berge" or "expansion"
    k: int = 1
    l: int = 1

    @classmethod
    def named(cls, name: str, k: int = 1, l: int = 1) -> "Pattern":
        if name in ("berge-star", "berge-star-forest", "graph-star-forest"):
            return cls("berge", 1 if name == "berge-star" else k, l)
        if name in ("expansion-star", "expansion-star-forest"):
            return cls("expansion", 1 if name == "expansion-star" else k, l)
        if name == "matching":
            return cls("expansion", k, 1)
        raise ValueError(f"unknown pattern {name!r}")

    def vertices_needed(self, r: int) -> int:
        if self.kind == "berge":
            return self.k * (self.l + 1)
        return self.k * (1 + self.l * (r - 1))


@dataclass(frozen=True)
class SdrWitness:
    pairs: tuple[tuple[int, int], ...]  # (edge index, representative)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class BergeWitness:
    """One Berge star: skeleton edges ``(center, leaf)`` and the hosting edges."""

    center: int
    skeleton: tuple[tuple[int, int], ...]
    assignment: tuple[int, ...]

    @property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.skeleton)

    def to_json(self) -> dict:
        return {
            "center": self.center,
            "skeleton": [list(e) for e in self.skeleton],
            "hyperedges": list(self.assignment),
        }


@dataclass(frozen=True)
class ExpansionWitness:
    """Expanded stars as ``(center, edge indices)`` pairs."""

    stars: tuple[tuple[int, tuple[int, ...]], ...]

    def to_json(self) -> dict:
        return {"stars": [{"center": c, "hyperedges": list(es)} for c, es in self.stars]}


@dataclass(frozen=True)
class WitnessCheck:
    ok: bool
    reason: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# systems of distinct representatives


def _sdr(sets: Sequence[Sequence[int]], blocked: Iterable[int] = ()) -> dict[int, int]:
    """Maximum SDR as ``{set index: representative}`` (augmenting paths)."""
    blocked = set(blocked)
    owner: dict[int, int] = {}
    rep: dict[int, int] = {}
    options = [[v for v in s if v not in blocked] for s in sets]
    # greedy start
    for i, opts in enumerate(options):
        for v in opts:
            if v not in owner:
                owner[v] = i
                rep[i] = v
                break

    def augment(i: int, seen: set[int]) -> bool:
        for v in options[i]:
            if v in seen:
                continue
            seen.add(v)
            j = owner.get(v)
            if j is None or augment(j, seen):
                owner[v] = i
                rep[i] = v
                return True
        return False

    for i in range(len(sets)):
        if i not in rep:
            augment(i, set())
    return rep


def max_sdr(m: MultiHypergraph | Hypergraph) -> tuple[int, SdrWitness]:
    """Size of a maximum system of distinct representatives, with a witness."""
    rep = _sdr(m.edges)
    return len(rep), SdrWitness(tuple(sorted(rep.items())))


# ---------------------------------------------------------------------------
# Berge stars


def _berge_star_at(h: Hypergraph, l: int, c: int, blocked=(), skip_edges=()) -> BergeWitness | None:
    traces = [(t, i) for t, i in link_with_origin(h, c) if i not in skip_edges]
    if len(traces) < l:
        return None
    rep = _sdr([t for t, _ in traces], blocked)
    if len(rep) < l:
        return None
    chosen = sorted(rep.items())[:l]
    return BergeWitness(
        c, tuple((c, v) for _, v in chosen), tuple(traces[j][1] for j, _ in chosen)
    )


def find_berge_star(h: Hypergraph, l: int, center: int | None = None) -> BergeWitness | None:
    """A Berge copy of the star with ``l`` edges, or ``None``.

    With ``center`` given only that vertex is tried; otherwise centers are
    scanned by decreasing degree.
    """
    if l < 1:
        raise ValueError("l must be positive")
    if center is not None:
        return _berge_star_at(h, l, center)
    degs = h.degrees()
    for c in sorted(range(h.n), key=lambda v: (-degs[v], v)):
        if degs[c] < l:
            break
        w = _berge_star_at(h, l, c)
        if w is not None:
            return w
    return None


class _Flow:
    """Unit-ish max flow (Edmonds-Karp) on a small explicit network."""

    def __init__(self, n: int):
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def arc(self, u: int, v: int, c: int) -> int:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        return len(self.to) - 2

    def run(self, s: int, t: int, limit: int) -> int:
        flow = 0
        to, cap, adj = self.to, self.cap, self.adj
        while flow < limit:
            prev = {s: -1}
            queue = [s]
            for u in queue:
                if u == t:
                    break
                for a in adj[u]:
                    if cap[a] > 0 and to[a] not in prev:
                        prev[to[a]] = a
                        queue.append(to[a])
            if t not in prev:
                break
            v = t
            while v != s:
                a = prev[v]
                cap[a] -= 1
                cap[a ^ 1] += 1
                v = to[a ^ 1]
            flow += 1
        return flow


def _berge_forest_for_centers(h: Hypergraph, l: int, centers: Sequence[int]) -> list[BergeWitness] | None:
    """Disjoint Berge stars with exactly these centers, via a max-flow model."""
    cset = set(centers)
    inc = h.incidence()
    edge_ids = sorted({i for c in centers for i in inc[c]})
    k = len(centers)
    # node layout: 0 source, 1 sink, centers, edge-in, edge-out, vertices
    base_e = 2 + k
    base_v = base_e + 2 * len(edge_ids)
    net = _Flow(base_v + h.n)
    for ci in range(k):
        net.arc(0, 2 + ci, l)
    first_arc = {}
    leaf_arcs = {}
    used_vertices = set()
    for j, i in enumerate(edge_ids):
        e = h.edges[i]
        ein, eout = base_e + 2 * j, base_e + 2 * j + 1
        for ci, c in enumerate(centers):
            if c in e:
                first_arc[(ci, i)] = net.arc(2 + ci, ein, 1)
        net.arc(ein, eout, 1)
        for x in e:
            if x not in cset:
                leaf_arcs[(i, x)] = net.arc(eout, base_v + x, 1)
                used_vertices.add(x)
    for x in sorted(used_vertices):
        net.arc(base_v + x, 1, 1)
    if net.run(0, 1, k * l) < k * l:
        return None
    out = []
    for ci, c in enumerate(centers):
        pairs = []
        for i in edge_ids:
            a = first_arc.get((ci, i))
            if a is None or net.cap[a] != 0:
                continue
            leaf = next(x for x in h.edges[i] if x not in cset and net.cap[leaf_arcs[(i, x)]] == 0)
            pairs.append((leaf, i))
        pairs.sort()
        out.append(BergeWitness(c, tuple((c, x) for x, _ in pairs), tuple(i for _, i in pairs)))
    return out


def find_berge_star_forest(
    h: Hypergraph,
    k: int,
    l: int,
    centers_within: Iterable[int] | None = None,
    budget: Budget | None = None,
) -> list[BergeWitness] | None:
    """``k`` Berge stars with vertex-disjoint skeletons and distinct host edges.

    Center sets are enumerated in increasing order; each partial set is
    tested by max flow (feasibility is inherited by subsets, so infeasible
    prefixes are cut).  ``centers_within`` demands at least one center in
    the given set.
    """
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    budget = budget or Budget()
    if k * (l + 1) > h.n or k * l > len(h.edges):
        return None
    required = set(centers_within) if centers_within is not None else None
    cand = [c for c in range(h.n) if h.degree(c) >= l and _berge_star_at(h, l, c) is not None]
    if not cand:
        return None
    twin = transposition_classes(h) if required is None else list(range(h.n))
    chosen: list[int] = []

    def twin_ok(v: int) -> bool:
        # inside a class of interchangeable vertices, centers form a prefix
        return all(u in chosen for u in range(v) if twin[u] == twin[v])

    def rec(start: int) -> list[BergeWitness] | None:
        budget.tick()
        if len(chosen) == k:
            if required is not None and not required.intersection(chosen):
                return None
            return _berge_forest_for_centers(h, l, chosen)
        need = k - len(chosen)
        for pos in range(start, len(cand) - need + 1):
            v = cand[pos]
            if not twin_ok(v):
                continue
            if required is not None and not required.intersection(chosen):
                if not any(c in required for c in cand[pos:]):
                    return None
            chosen.append(v)
            if len(chosen) == k or _berge_forest_for_centers(h, l, chosen) is not None:
                found = rec(pos + 1)
                if found is not None:
                    return found
            chosen.pop()
        return None

    return rec(0)


# ---------------------------------------------------------------------------
# expanded stars


def _packings(traces, l: int, blocked: set[int], budget: Budget):
    """All ways to pick ``l`` pairwise disjoint traces avoiding ``blocked``."""
    usable = [(t, i) for t, i in traces if blocked.isdisjoint(t)]
    picked: list[int] = []

    def rec(start: int, used: set[int]):
        budget.tick()
        if len(picked) == l:
            yield tuple(picked), frozenset(used)
            return
        for pos in range(start, len(usable) - (l - len(picked)) + 1):
            t, i = usable[pos]
            if used.isdisjoint(t):
                picked.append(i)
                yield from rec(pos + 1, used | set(t))
                picked.pop()

    yield from rec(0, set())


def find_expansion_star(
    h: Hypergraph, l: int, center: int | None = None, budget: Budget | None = None
) -> ExpansionWitness | None:
    """``l`` edges through one vertex, pairwise disjoint elsewhere."""
    if l < 1:
        raise ValueError("l must be positive")
    budget = budget or Budget()
    centers = [center] if center is not None else range(h.n)
    for c in centers:
        if h.degree(c) < l:
            continue
        for edges, _ in _packings(link_with_origin(h, c), l, {c}, budget):
            return ExpansionWitness(((c, edges),))
    return None


def find_expansion_star_forest(
    h: Hypergraph,
    k: int,
    l: int,
    centers_within: Iterable[int] | None = None,
    budget: Budget | None = None,
) -> ExpansionWitness | None:
    """``k`` vertex-disjoint expanded stars with ``l`` edges each (``l = 1``: a matching)."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    budget = budget or Budget()
    r = h.r
    per_star = 1 + l * (r - 1)
    if k * per_star > h.n or k * l > len(h.edges):
        return None
    required = set(centers_within) if centers_within is not None else None
    links = [link_with_origin(h, c) for c in range(h.n)]
    twin = transposition_classes(h) if required is None else list(range(h.n))
    stars: list[tuple[int, tuple[int, ...]]] = []
    centers: list[int] = []
    failed: set = set()

    def rec(start: int, used: frozenset) -> bool:
        budget.tick()
        if len(stars) == k:
            return required is None or not required.isdisjoint(centers)
        need = k - len(stars)
        if h.n - len(used) < need * per_star:
            return False
        key = (start, used, tuple(centers))
        if key in failed:
            return False
        for c in range(start, h.n):
            if c in used or len(links[c]) < l:
                continue
            if any(twin[u] == twin[c] and u not in centers for u in range(c)):
                continue
            if required is not None and required.isdisjoint(centers):
                if not any(x >= c for x in required):
                    break
            seen_sets = set()
            for edges, span in _packings(links[c], l, set(used) | {c}, budget):
                if span in seen_sets:
                    continue
                seen_sets.add(span)
                stars.append((c, edges))
                centers.append(c)
                if rec(c + 1, used | span | {c}):
                    return True
                stars.pop()
                centers.pop()
        failed.add(key)
        return False

    if rec(0, frozenset()):
        return ExpansionWitness(tuple(stars))
    return None


def find_pattern(h: Hypergraph, pattern: Pattern, centers_within=None, budget=None):
    if pattern.kind == "berge":
        return find_berge_star_forest(h, pattern.k, pattern.l, centers_within, budget)
    return find_expansion_star_forest(h, pattern.k, pattern.l, centers_within, budget)


# ---------------------------------------------------------------------------
# witness checking


def verify_sdr(m: MultiHypergraph | Hypergraph, w: SdrWitness) -> WitnessCheck:
    idx = [i for i, _ in w.pairs]
    reps = [v for _, v in w.pairs]
    if len(set(idx)) != len(idx):
        return WitnessCheck(False, "edge used twice")
    if len(set(reps)) != len(reps):
        return WitnessCheck(False, "representatives not distinct")
    for i, v in w.pairs:
        if not 0 <= i < len(m.edges):
            return WitnessCheck(False, "edge index out of range")
        if v not in m.edges[i]:
            return WitnessCheck(False, "representative not in its edge")
    return WitnessCheck(True)


def verify_witness(h, pattern: Pattern | str, witness) -> WitnessCheck:
    """Check a witness against ``h`` using only the definitions."""
    if pattern == "sdr" or isinstance(witness, SdrWitness):
        return verify_sdr(h, witness)
    if isinstance(pattern, str):
        raise ValueError("pass a Pattern for star witnesses")
    m = len(h.edges)
    if pattern.kind == "berge":
        stars = [witness] if isinstance(witness, BergeWitness) else list(witness)
        if len(stars) != pattern.k:
            return WitnessCheck(False, "wrong star count")
        used_edges: list[int] = []
        spans: list[set[int]] = []
        for s in stars:
            if len(s.skeleton) != pattern.l or len(s.assignment) != pattern.l:
                return WitnessCheck(False, "wrong star size")
            leaves = [v for _, v in s.skeleton]
            if any(u != s.center for u, _ in s.skeleton) or s.center in leaves or len(set(leaves)) != len(leaves):
                return WitnessCheck(False, "skeleton is not a star")
            for (u, v), i in zip(s.skeleton, s.assignment):
                if not 0 <= i < m:
                    return WitnessCheck(False, "edge index out of range")
                if u not in h.edges[i] or v not in h.edges[i]:
                    return WitnessCheck(False, "skeleton edge not in its hyperedge")
            used_edges.extend(s.assignment)
            spans.append({s.center, *leaves})
        if len(set(used_edges)) != len(used_edges):
            return WitnessCheck(False, "assignment not injective")
        if sum(map(len, spans)) != len(set().union(*spans)):
            return WitnessCheck(False, "skeletons not disjoint")
        return WitnessCheck(True)
    stars = witness.stars
    if len(stars) != pattern.k:
        return WitnessCheck(False, "wrong star count")
    spans = []
    for c, idxs in stars:
        if len(idxs) != pattern.l or len(set(idxs)) != len(idxs):
            return WitnessCheck(False, "wrong star size")
        if any(not 0 <= i < m for i in idxs):
            return WitnessCheck(False, "edge index out of range")
        es = [set(h.edges[i]) for i in idxs]
        if any(c not in e for e in es):
            return WitnessCheck(False, "center missing from an edge")
        for a in range(len(es)):
            for b in range(a + 1, len(es)):
                if es[a] & es[b] != {c}:
                    return WitnessCheck(False, "not an expanded star")
        spans.append(set().union(*es))
    if sum(map(len, spans)) != len(set().union(*spans)):
        return WitnessCheck(False, "stars not disjoint")
    return WitnessCheck(True)


# ---------------------------------------------------------------------------
# degree arithmetic


def adl_bound(d: int, max_degree: int, eps: Fraction | int, n: int) -> Fraction:
    """Most vertices of degree below ``d`` when the average degree is >= d - eps.

    Counting the degree sum both ways gives ``(D - d + eps)/(D - d + 1) * n``
    with ``D`` the maximum degree.
    """
    eps = Fraction(eps)
    if d < 1 or max_degree < 1:
        raise ValueError("d and the maximum degree must be positive")
    if max_degree < d:
        raise ValueError("maximum degree must be at least d")
    if not 0 <= eps < 1:
        raise ValueError("eps must lie in [0, 1)")
    return (max_degree - d + eps) / (max_degree - d + 1) * n


def berge_degree_cap(l: int, r: int) -> int:
    """Largest degree a vertex can have in a Berge-``S_l``-free ``r``-graph."""
    if l <= r:
        return l - 1
    return comb(l - 1, r - 1)
