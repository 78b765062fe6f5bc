"""Exact Turán oracles for desk-scale parameters.

The search is an orderly generation: edges of ``K_n^r`` are ranked in colex
order, a partial hypergraph is kept only when its sorted rank list is the
lexicographic minimum over all vertex relabellings, and children add an edge
of larger rank than every edge present.  Removing the largest edge of a
canonical set leaves a canonical set, so each isomorphism class of a
family-free hypergraph is visited exactly once.

Branch-and-bound prunes a node only when its bound is strictly below the best
value seen, so every optimum class survives and is reported.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .detect import (
    Budget,
    Pattern,
    SearchLimitExceeded,
    berge_degree_cap,
    find_pattern,
    node_cap_from_env,
)
from .hypercore import (
    Graph,
    Hypergraph,
    HypergraphError,
    canonical_form,
    colex_rank,
    transposition_classes,
)

EXTREMAL_CAP = 100
FAMILY_PATTERNS = ("berge-star", "berge-star-forest", "graph-star-forest", "expansion-star",
                   "expansion-star-forest", "matching")


@dataclass(frozen=True)
class ForbiddenFamily:
    pattern: str
    k: int = 1
    l: int = 1
    host: str = "all"

    def __post_init__(self):
        if self.pattern not in FAMILY_PATTERNS:
            raise ValueError(f"unknown pattern {self.pattern!r}")
        if self.host not in ("all", "linear"):
            raise ValueError(f"host must be 'all' or 'linear', got {self.host!r}")
        if self.k < 1 or self.l < 1:
            raise ValueError("k and l must be positive")

    @property
    def as_pattern(self) -> Pattern:
        return Pattern.named(self.pattern, self.k, self.l)

    def to_json(self) -> dict:
        return {"pattern": self.pattern, "k": self.k, "l": self.l, "host": self.host}

    def degree_cap(self, r: int) -> int | None:
        """Maximum degree of a free hypergraph, when one is known to hold."""
        p = self.as_pattern
        if p.kind == "berge" and p.k == 1:
            return berge_degree_cap(p.l, r)
        if p.kind == "expansion" and p.k == 1 and p.l == 1:
            return 0
        return None


@dataclass
class SearchReport:
    n: int
    r: int
    family: dict
    optimum: int
    extremal: list[str]
    nodes: int
    status: str = "exact"
    extremal_complete: bool = True
    objective: str = "edges"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "family": self.family,
            "objective": self.objective,
            "optimum": self.optimum,
            "extremal": list(self.extremal),
            "extremal_complete": self.extremal_complete,
            "nodes": self.nodes,
            "status": self.status,
        }

    def hypergraphs(self) -> list[Hypergraph]:
        from .hypercore import parse_hypergraph

        return [parse_hypergraph(s) for s in self.extremal]


# ---------------------------------------------------------------------------
# canonicity test for orderly generation


def _segments(n: int, edges, perm) -> list[list[int]]:
    segs: list[list[int]] = [[] for _ in range(n)]
    for e in edges:
        img = sorted(perm[v] for v in e)
        segs[img[-1]].append(colex_rank(img))
    for s in segs:
        s.sort()
    return segs


def is_canonical(n: int, r: int, edges: list[tuple[int, ...]]) -> bool:
    """True iff no relabelling gives a lexicographically smaller sorted rank list."""
    if not edges:
        return True
    h = Hypergraph._trusted(n, r, edges)
    inc = h.incidence()
    target = _segments(n, edges, list(range(n)))
    twin = transposition_classes(h)
    label = [-1] * n

    def segment(v: int, j: int) -> list[int]:
        out = []
        for i in inc[v]:
            ls = []
            for u in edges[i]:
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

    def smaller(j: int) -> bool:
        # can labels j.. be assigned so the list drops strictly below target?
        if j == n:
            return False
        tried = set()
        for v in range(n):
            if label[v] >= 0 or twin[v] in tried:
                continue
            tried.add(twin[v])
            seg = segment(v, j)
            if seg != target[j]:
                if _seg_less(seg, target[j]):
                    return True
                continue
            label[v] = j
            found = smaller(j + 1)
            label[v] = -1
            if found:
                return True
        return False

    return not smaller(0)


def _seg_less(a: list[int], b: list[int]) -> bool:
    for x, y in zip(a, b):
        if x != y:
            return x < y
    return len(a) > len(b)


# ---------------------------------------------------------------------------
# cliques


def count_cliques(g: Graph | Hypergraph, r: int) -> int:
    """Number of ``r``-cliques, by pivoting (each leaf counts ``C(pivots, r - held)``)."""
    if r < 1:
        raise ValueError("r must be positive")
    if g.r != 2:
        raise HypergraphError("count_cliques needs a graph")
    adj = [set() for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    total = 0

    def rec(cand: set[int], held: int, pivots: int) -> None:
        nonlocal total
        if held > r:
            return
        if not cand:
            total += comb(pivots, r - held)
            return
        p = max(sorted(cand), key=lambda u: len(adj[u] & cand))
        rest = set(cand)
        for v in sorted(cand - adj[p]):
            rec(rest & adj[v], held + (v != p), pivots + (v == p))
            rest.discard(v)

    rec(set(range(g.n)), 0, 0)
    return total


def clique_hypergraph(g: Graph | Hypergraph, r: int) -> Hypergraph:
    """The ``r``-graph whose edges are the vertex sets of ``r``-cliques of ``g``."""
    if g.r != 2:
        raise HypergraphError("clique_hypergraph needs a graph")
    adj = [set() for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    out = []

    def grow(clique: list[int], cand: list[int]) -> None:
        if len(clique) == r:
            out.append(tuple(clique))
            return
        for i, v in enumerate(cand):
            clique.append(v)
            grow(clique, [u for u in cand[i + 1:] if u in adj[v]])
            clique.pop()

    grow([], list(range(g.n)))
    return Hypergraph(g.n, r, out)


# ---------------------------------------------------------------------------
# search engine


@dataclass
class _Problem:
    """Search parameters shipped to workers; must stay picklable."""

    n: int
    r: int
    family: ForbiddenFamily
    objective: str = "edges"  # or "cliques"
    clique_r: int = 0
    node_cap: int = 0
    ranked: list = field(default_factory=list)

    def __post_init__(self):
        if not self.ranked:
            self.ranked = sorted(combinations(range(self.n), self.r), key=colex_rank)


@dataclass
class _Outcome:
    best: int
    extremal: list  # canonical strings, at most EXTREMAL_CAP + 1
    nodes: int
    capped: bool


class _Search:
    def __init__(self, prob: _Problem, floor: int):
        self.p = prob
        self.pattern = prob.family.as_pattern
        self.linear = prob.family.host == "linear"
        self.cap = prob.family.degree_cap(prob.r)
        self.best = floor
        self.found: list[tuple[tuple, ...]] = []
        self.nodes = 0
        self.capped = False

    # -- node bookkeeping ---------------------------------------------------
    def tick(self):
        self.nodes += 1
        if self.nodes > self.p.node_cap:
            raise SearchLimitExceeded(self.nodes)

    def score(self, edges) -> int:
        if self.p.objective == "edges":
            return len(edges)
        return count_cliques(Graph._trusted(self.p.n, 2, edges), self.p.clique_r)

    def record(self, edges) -> None:
        s = self.score(edges)
        if s > self.best:
            self.best = s
            self.found = []
        if s == self.best and len(self.found) <= EXTREMAL_CAP:
            self.found.append(tuple(edges))

    # -- pruning ------------------------------------------------------------
    def available(self, edges, deg, pairs, start: int) -> list[int]:
        out = []
        for pos in range(start, len(self.p.ranked)):
            e = self.p.ranked[pos]
            if self.cap is not None and any(deg[v] >= self.cap for v in e):
                continue
            if self.linear and any(pr in pairs for pr in combinations(e, 2)):
                continue
            out.append(pos)
        return out

    def bound(self, edges, deg, pairs, avail: list[int]) -> int:
        if self.p.objective == "cliques":
            union = list(edges) + [self.p.ranked[i] for i in avail]
            return count_cliques(Graph._trusted(self.p.n, 2, sorted(union)), self.p.clique_r)
        extra = len(avail)
        r = self.p.r
        if self.cap is not None:
            adeg = [0] * self.p.n
            for i in avail:
                for v in self.p.ranked[i]:
                    adeg[v] += 1
            room = sum(min(self.cap - deg[v], adeg[v]) for v in range(self.p.n))
            extra = min(extra, room // r)
        if self.linear and r >= 2:
            free_pairs = set()
            for i in avail:
                free_pairs.update(combinations(self.p.ranked[i], 2))
            extra = min(extra, len(free_pairs) // comb(r, 2))
        return len(edges) + extra

    def free_with(self, edges, new) -> bool:
        """``edges + [new]`` is family-free, given that ``edges`` is."""
        h = Hypergraph._trusted(self.p.n, self.p.r, sorted(edges + [new]))
        try:
            hit = find_pattern(h, self.pattern, centers_within=new, budget=Budget(self.p.node_cap))
        except SearchLimitExceeded:
            self.capped = True
            return False
        return hit is None

    # -- traversal ----------------------------------------------------------
    def expand(self, edges, deg, pairs, start):
        """Edges that keep the node free, or ``None`` when the bound prunes it.

        Freeness is inherited by subhypergraphs, so every descendant only
        uses edges from this list; it is a valid basis for the bound.
        """
        avail = self.available(edges, deg, pairs, start)
        if self.bound(edges, deg, pairs, avail) < self.best:
            return None
        usable = [pos for pos in avail if self.free_with(edges, self.p.ranked[pos])]
        if len(usable) < len(avail) and self.bound(edges, deg, pairs, usable) < self.best:
            return None
        return usable

    def dfs(self, edges, deg, pairs, start, stop_depth=None, frontier=None):
        self.tick()
        self.record(edges)
        if stop_depth is not None and len(edges) == stop_depth:
            frontier.append((list(edges), start))
            return
        usable = self.expand(edges, deg, pairs, start)
        if usable is None:
            return
        for idx, pos in enumerate(usable):
            if self.bound(edges, deg, pairs, usable[idx:]) < self.best:
                break
            e = self.p.ranked[pos]
            if not is_canonical(self.p.n, self.p.r, sorted(edges + [e])):
                continue
            edges.append(e)
            for v in e:
                deg[v] += 1
            added = [pr for pr in combinations(e, 2) if pr not in pairs]
            pairs.update(added)
            self.dfs(edges, deg, pairs, pos + 1, stop_depth, frontier)
            pairs.difference_update(added)
            for v in e:
                deg[v] -= 1
            edges.pop()

    def run_from(self, edges, start):
        deg = [0] * self.p.n
        pairs = set()
        for e in edges:
            for v in e:
                deg[v] += 1
            pairs.update(combinations(e, 2))
        # the splitter already counted this node
        self.nodes -= 1
        self.dfs(list(edges), deg, pairs, start)


def _run_task(args) -> _Outcome:
    prob, floor, edges, start = args
    s = _Search(prob, floor)
    try:
        s.run_from(edges, start)
    except SearchLimitExceeded:
        s.capped = True
    return _Outcome(s.best, _strings(prob, s.found), s.nodes, s.capped)


def _strings(prob: _Problem, found) -> list[str]:
    out = set()
    for edges in found:
        h = Hypergraph._trusted(prob.n, prob.r, sorted(edges))
        out.add(canonical_form(h).decode())
    return sorted(out)


def _search(prob: _Problem, floor: int, workers: int, split_depth: int) -> SearchReport:
    root = _Search(prob, floor)
    frontier: list = []
    capped = False
    try:
        root.dfs([], [0] * prob.n, set(), 0, stop_depth=split_depth, frontier=frontier)
    except SearchLimitExceeded:
        capped = True
        frontier = []
    capped = capped or root.capped
    best = root.best
    tasks = [(prob, floor, e, st) for e, st in frontier]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_task, tasks))
    else:
        outcomes = [_run_task(t) for t in tasks]
    nodes = root.nodes
    for o in outcomes:
        nodes += o.nodes
        capped = capped or o.capped
        best = max(best, o.best)
    # frontier nodes are recorded by the splitter and again by their task;
    # canonical strings deduplicate them
    merged = set(_strings(prob, root.found)) if root.best == best else set()
    for o in outcomes:
        if o.best == best:
            merged.update(o.extremal)
    extremal = sorted(merged)
    complete = len(extremal) <= EXTREMAL_CAP
    return SearchReport(
        n=prob.n,
        r=prob.r,
        family=prob.family.to_json(),
        optimum=best,
        extremal=extremal[:EXTREMAL_CAP],
        nodes=nodes,
        status="capped" if capped else "exact",
        extremal_complete=complete,
        objective=prob.objective,
    )


def _default_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    raw = os.environ.get("TURAN_WORKERS")
    return max(1, int(raw)) if raw else 1


def exact_turan(
    n: int,
    r: int,
    family: ForbiddenFamily,
    workers: int | None = None,
    node_cap: int | None = None,
    seed: Hypergraph | None = None,
    split_depth: int = 2,
) -> SearchReport:
    """Largest number of edges in an ``n``-vertex ``r``-graph free of ``family``.

    ``seed`` is an optional known family-free hypergraph; its size is used as
    the initial incumbent.  The report is the same for every worker count.
    """
    if r < 2 or n < 1:
        raise ValueError("need r >= 2 and n >= 1")
    if family.pattern == "graph-star-forest" and r != 2:
        raise ValueError("graph-star-forest needs r = 2")
    cap = node_cap_from_env() if node_cap is None else node_cap
    prob = _Problem(n, r, family, node_cap=cap)
    floor = 0
    if seed is not None:
        if (seed.n, seed.r) != (n, r):
            raise ValueError("seed has the wrong order or uniformity")
        if find_pattern(seed, family.as_pattern) is not None:
            raise ValueError("seed contains the forbidden configuration")
        floor = len(seed.edges)
    return _search(prob, floor, _default_workers(workers), split_depth)


def exact_generalized_turan(
    n: int,
    r: int,
    k: int,
    l: int,
    workers: int | None = None,
    node_cap: int | None = None,
    split_depth: int = 2,
) -> SearchReport:
    """Most ``K_r`` copies in an ``n``-vertex graph with no ``k`` disjoint ``S_l``."""
    if r < 2:
        raise ValueError("r must be at least 2")
    cap = node_cap_from_env() if node_cap is None else node_cap
    family = ForbiddenFamily("graph-star-forest", k, l)
    prob = _Problem(n, 2, family, objective="cliques", clique_r=r, node_cap=cap)
    rep = _search(prob, 0, _default_workers(workers), split_depth)
    rep.family = dict(rep.family, clique_r=r)
    return rep


def enumerate_free(n: int, r: int, family: ForbiddenFamily, node_cap: int | None = None):
    """Every family-free ``r``-graph on ``n`` vertices, one per isomorphism class."""
    cap = node_cap_from_env() if node_cap is None else node_cap
    s = _Search(_Problem(n, r, family, node_cap=cap), 0)
    out = []

    def walk(edges, deg, pairs, start):
        s.tick()
        out.append(Hypergraph._trusted(n, r, sorted(edges)))
        for pos in s.available(edges, deg, pairs, start):
            e = s.p.ranked[pos]
            if not is_canonical(n, r, sorted(edges + [e])) or not s.free_with(edges, e):
                continue
            edges.append(e)
            for v in e:
                deg[v] += 1
            added = [pr for pr in combinations(e, 2) if pr not in pairs]
            pairs.update(added)
            walk(edges, deg, pairs, pos + 1)
            pairs.difference_update(added)
            for v in e:
                deg[v] -= 1
            edges.pop()

    walk([], [0] * n, set(), 0)
    if s.capped:
        raise SearchLimitExceeded(s.nodes)
    return out
