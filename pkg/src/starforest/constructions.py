"""Extremal and lower-bound constructions for star-forest Turán problems.

Every builder returns a :class:`LabeledConstruction`: the hypergraph, a
partition of its vertices into named roles (``A`` for the apex set, then
the classes or copies making up ``B``), the parameters, and the edge count
predicted in closed form.  The prediction is checked against the built
hypergraph on construction, so a mismatch fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .hypercore import (
    ColoredHypergraph,
    Graph,
    Hypergraph,
    HypergraphError,
    MultiHypergraph,
    SizeLimitError,
    disjoint_union,
)

MAX_VERTICES = 200_000


class ConstructionError(HypergraphError):
    """Parameters outside a construction's domain."""


@dataclass(frozen=True)
class LabeledConstruction:
    name: str
    hypergraph: Hypergraph
    labels: dict[str, tuple[int, ...]]
    params: dict[str, int]
    predicted_edges: Fraction
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        covered = sorted(v for vs in self.labels.values() for v in vs)
        if covered != list(range(self.hypergraph.n)):
            raise ConstructionError(f"{self.name}: labels do not partition the vertex set")
        if self.predicted_edges != len(self.hypergraph.edges):
            raise ConstructionError(
                f"{self.name}: predicted {self.predicted_edges} edges, built {len(self.hypergraph.edges)}"
            )

    @property
    def apex(self) -> tuple[int, ...]:
        return self.labels.get("A", ())

    @property
    def rest(self) -> tuple[int, ...]:
        a = set(self.apex)
        return tuple(v for v in range(self.hypergraph.n) if v not in a)

    def label_text(self) -> str:
        """Side-car label file: one ``role=v1 v2 ...`` line per role."""
        return "".join(f"{k}={' '.join(map(str, vs))}\n" for k, vs in self.labels.items())


def _ranges(sizes, start=0):
    out = []
    for s in sizes:
        out.append(tuple(range(start, start + s)))
        start += s
    return out


# ---------------------------------------------------------------------------
# building blocks


def complete_uniform(m: int, r: int) -> Hypergraph:
    """All ``r``-subsets of ``m`` vertices."""
    if m < 0 or r < 1:
        raise ConstructionError("need m >= 0 and r >= 1")
    return Hypergraph._trusted(m, r, combinations(range(m), r))


def star_graph(l: int) -> Graph:
    """Star with center 0 and leaves 1..l."""
    if l < 0:
        raise ConstructionError("star size must be non-negative")
    return Graph._trusted(l + 1, 2, [(0, i) for i in range(1, l + 1)])


def copies(f: Hypergraph, k: int) -> Hypergraph:
    """``k`` pairwise vertex-disjoint copies of ``f``."""
    if k < 1:
        raise ConstructionError("need k >= 1")
    out = f
    for _ in range(k - 1):
        out = disjoint_union(out, f)
    return out


def expansion(f: Hypergraph, r: int) -> Hypergraph:
    """Pad every edge of the graph ``f`` with ``r - 2`` fresh vertices."""
    if f.r != 2:
        raise ConstructionError("expansion is defined for graphs")
    if r < 2:
        raise ConstructionError("need r >= 2")
    if r == 2:
        return f
    pad = r - 2
    edges = [e + tuple(range(f.n + i * pad, f.n + (i + 1) * pad)) for i, e in enumerate(f.edges)]
    return Hypergraph._trusted(f.n + pad * len(f.edges), r, edges)


def circle_regular(n: int, r: int, d: int) -> Hypergraph:
    """``d``-regular ``r``-uniform hypergraph from ``d`` rotated interval partitions.

    The vertices sit on a circle; offset ``o`` cuts it into the intervals
    ``{o + jr, ..., o + jr + r - 1}`` (mod ``n``).  Offsets ``0..d-1`` are used.
    """
    if not 0 <= d < r:
        raise ConstructionError(f"need 0 <= d < r, got d={d}, r={r}")
    if d == 0:
        return Hypergraph._trusted(n, r, ())
    if n % r or n <= r:
        raise ConstructionError(f"need r | n and n > r, got n={n}, r={r}")
    edges = set()
    for o in range(d):
        for j in range(n // r):
            edges.add(tuple(sorted((o + j * r + i) % n for i in range(r))))
    if len(edges) != d * n // r:
        raise ConstructionError("interval classes collided")
    return Hypergraph._trusted(n, r, edges)


def _lattice_lines(side: int, d: int):
    # vertex index: mixed radix, coordinate 0 most significant
    strides = [side ** (d - 1 - i) for i in range(d)]
    for coord in range(d):
        others = [i for i in range(d) if i != coord]
        for fixed in product(range(side), repeat=d - 1):
            base = sum(strides[i] * x for i, x in zip(others, fixed))
            yield tuple(base + strides[coord] * t for t in range(side)), coord


def lattice(r: int, d: int) -> ColoredHypergraph:
    """The grid ``[r]^d`` with axis-parallel lines as edges, colored by axis.

    ``r = 1`` or ``d = 0`` are accepted as degenerate factors for products:
    ``[1]^d`` is one vertex carrying ``d`` singleton edges (a multi-hypergraph).
    """
    if r < 1 or d < 0:
        raise ConstructionError("need r >= 1 and d >= 0")
    if r**d > MAX_VERTICES:
        raise SizeLimitError(f"[{r}]^{d} exceeds {MAX_VERTICES} vertices")
    pairs = list(_lattice_lines(r, d))
    return ColoredHypergraph.from_pairs(r**d, pairs, multi=(r == 1))


def cartesian_product(h, g) -> ColoredHypergraph:
    """Cartesian product of two (optionally colored) hypergraphs.

    Vertex ``(u, v)`` gets index ``u * g.n + v``.  Edges are ``{u} x e`` for
    ``e`` in ``g`` and ``f x {v}`` for ``f`` in ``h``; the latter keep the
    color of ``f`` when ``h`` is colored, the former are uncolored.
    """
    hc = h.colors if isinstance(h, ColoredHypergraph) else (None,) * len(h.edges)
    hb = h.base if isinstance(h, ColoredHypergraph) else h
    gb = g.base if isinstance(g, ColoredHypergraph) else g
    if hb.n * gb.n > MAX_VERTICES:
        raise SizeLimitError("product exceeds the vertex limit")
    m = gb.n
    pairs = []
    for u in range(hb.n):
        for e in gb.edges:
            pairs.append((tuple(u * m + v for v in e), None))
    for v in range(m):
        for f, c in zip(hb.edges, hc):
            pairs.append((tuple(u * m + v for u in f), c))
    return ColoredHypergraph.from_pairs(hb.n * m, pairs, multi=True)


# ---------------------------------------------------------------------------
# extremal constructions


def apex_extremal_expansion(n: int, k: int, r: int, base: Hypergraph) -> LabeledConstruction:
    """``k - 1`` apex vertices, every ``r``-set meeting them, ``base`` on the rest.

    ``base`` should be ``S_l^+``-free on ``n - k + 1`` vertices; the result
    then has no ``k`` vertex-disjoint expanded stars.
    """
    if r < 2 or k < 1:
        raise ConstructionError("need r >= 2 and k >= 1")
    m = n - k + 1
    if base.n != m:
        raise ConstructionError(f"base must have n - k + 1 = {m} vertices, has {base.n}")
    if base.r != r:
        raise ConstructionError("base uniformity mismatch")
    a = k - 1
    edges = [e for e in combinations(range(n), r) if e[0] < a]
    edges += [tuple(v + a for v in e) for e in base.edges]
    labels = {"A": tuple(range(a)), "B": tuple(range(a, n))}
    predicted = comb(n, r) - comb(m, r) + len(base.edges)
    return LabeledConstruction(
        "apex_expansion", Hypergraph._trusted(n, r, edges), labels,
        {"n": n, "k": k, "r": r}, Fraction(predicted), {"base_edges": len(base.edges)},
    )


def linear_star_forest_extremal(n: int, k: int, l: int, r: int) -> LabeledConstruction:
    """Linear ``k.S_l^+``-free hypergraph built from lattice products.

    ``B`` is tiled by copies of ``[r-1]^(k-1) x [r]^(l-1)``; its ``r``-edges
    are kept and every ``(r-1)``-edge of color ``i`` is extended by apex ``a_i``.
    """
    if r < 2 or k < 1 or l < 1:
        raise ConstructionError("need r >= 2 and k, l >= 1")
    block = (r - 1) ** (k - 1) * r ** (l - 1)
    m = n - k + 1
    if m <= 0 or m % block:
        raise ConstructionError(f"n - k + 1 = {m} must be a positive multiple of {block}")
    prod_h = cartesian_product(lattice(r - 1, k - 1), lattice(r, l - 1))
    a = k - 1
    edges = set()
    copies_ = []
    for j in range(m // block):
        off = a + j * block
        copies_.append(tuple(range(off, off + block)))
        for e, c in zip(prod_h.edges, prod_h.colors):
            shifted = tuple(v + off for v in e)
            if c is None:
                edges.add(shifted)
            else:
                edges.add(tuple(sorted(shifted + (c,))))
    labels = {"A": tuple(range(a))}
    labels.update({f"copy_{j}": c for j, c in enumerate(copies_)})
    predicted = (Fraction(l - 1, r) + Fraction(k - 1, r - 1)) * m
    return LabeledConstruction(
        "linear_star_forest", Hypergraph._trusted(n, r, edges), labels,
        {"n": n, "k": k, "l": l, "r": r}, predicted, {"block": block},
    )


def berge_star_extremal(n: int, l: int, r: int) -> LabeledConstruction:
    """Berge-``S_l``-free hypergraph: disjoint cliques (``l > r``) or a circle design."""
    if l < 1 or r < 2 or n < 0:
        raise ConstructionError("need l >= 1, r >= 2")
    params = {"n": n, "l": l, "r": r}
    if l == 1:
        return LabeledConstruction(
            "berge_star", Hypergraph._trusted(n, r, ()), {"B": tuple(range(n))},
            params, Fraction(0),
        )
    if l > r:
        q, t = divmod(n, l)
        sizes = [l] * q + ([t] if t else [])
        classes = _ranges(sizes)
        edges = [e for c in classes for e in combinations(c, r)]
        labels = {f"class_{i}": c for i, c in enumerate(classes)}
        predicted = q * comb(l, r) + comb(t, r)
        return LabeledConstruction(
            "berge_star", Hypergraph._trusted(n, r, edges), labels, params, Fraction(predicted)
        )
    h = circle_regular(n, r, l - 1)
    return LabeledConstruction(
        "berge_star", h, {"B": tuple(range(n))}, params, Fraction((l - 1) * n, r)
    )


def berge_forest_large_r(n: int, k: int, l: int, r: int) -> LabeledConstruction:
    """Apex set ``A`` of size ``k - 1`` added to every edge of a circle design on ``B``."""
    if k < 1 or l < 1:
        raise ConstructionError("need k, l >= 1")
    if r < l + k - 1:
        raise ConstructionError(f"needs r >= l + k - 1, got r={r}, l={l}, k={k}")
    m, s = n - k + 1, r - k + 1
    if m % s or m <= s:
        raise ConstructionError(f"needs (r-k+1) | (n-k+1) and n-k+1 > r-k+1; got {s}, {m}")
    a = k - 1
    inner = circle_regular(m, s, l - 1)
    edges = [tuple(range(a)) + tuple(v + a for v in e) for e in inner.edges]
    labels = {"A": tuple(range(a)), "B": tuple(range(a, n))}
    return LabeledConstruction(
        "berge_forest_large_r", Hypergraph._trusted(n, r, edges), labels,
        {"n": n, "k": k, "l": l, "r": r}, Fraction((l - 1) * m, s),
    )


def small_r_count(n: int, k: int, l: int, r: int) -> int:
    q, t = divmod(n - k + 1, l)
    return (comb(l + k - 1, r) - comb(k - 1, r)) * q + comb(t + k - 1, r)


def berge_forest_small_r(n: int, k: int, l: int, r: int) -> LabeledConstruction:
    """``H(n, l, k, r)``: cliques on ``A`` joined with each class of a partition of ``B``.

    ``B`` is cut into ``q`` classes of size ``l`` plus one class of size
    ``t = (n-k+1) mod l`` when ``t > 0``; each class together with ``A`` spans
    a complete ``r``-uniform hypergraph.
    """
    if k < 1 or l < 1 or r < 1:
        raise ConstructionError("need k, l, r >= 1")
    if r > l + k - 1:
        raise ConstructionError(f"needs r <= l + k - 1, got r={r}, l={l}, k={k}")
    m = n - k + 1
    if m < 1:
        raise ConstructionError("need n >= k")
    a = k - 1
    q, t = divmod(m, l)
    classes = _ranges([l] * q + ([t] if t else []), start=a)
    apex = tuple(range(a))
    edges = set()
    for c in classes:
        edges.update(combinations(apex + c, r))
    labels = {"A": apex}
    labels.update({f"class_{i}": c for i, c in enumerate(classes)})
    return LabeledConstruction(
        "berge_forest_small_r", Hypergraph._trusted(n, r, edges), labels,
        {"n": n, "k": k, "l": l, "r": r}, Fraction(small_r_count(n, k, l, r)), {"t": t},
    )


def quasi_regular_graph(m: int, d: int) -> Graph:
    """Graph on ``m > d`` vertices, max degree ``d``, with ``floor(d*m/2)`` edges.

    Circulant on distances ``1..d//2``; for odd ``d`` a (near-)perfect matching
    at distance ``floor(m/2)`` is added, which leaves one vertex of degree
    ``d - 1`` when ``m`` is odd.
    """
    if d < 0 or (d > 0 and m <= d):
        raise ConstructionError(f"need m > d, got m={m}, d={d}")
    edges = set()
    for s in range(1, d // 2 + 1):
        for i in range(m):
            edges.add(tuple(sorted((i, (i + s) % m))))
    if d % 2:
        h = m // 2
        for i in range(h):
            edges.add((i, i + h))
    return Graph._trusted(m, 2, edges)


def llp_extremal_graph(n: int, k: int, l: int) -> LabeledConstruction:
    """``K_(k-1)`` joined to a maximum ``(l-1)``-quasi-regular graph on the rest."""
    if k < 1 or l < 1:
        raise ConstructionError("need k, l >= 1")
    if n < k + l:
        raise ConstructionError(f"need n >= k + l, got n={n}")
    a, m = k - 1, n - k + 1
    inner = quasi_regular_graph(m, l - 1)
    edges = [e for e in combinations(range(n), 2) if e[0] < a]
    edges += [(u + a, v + a) for u, v in inner.edges]
    predicted = (l - 1) * m // 2 + a * m + comb(a, 2)
    labels = {"A": tuple(range(a)), "B": tuple(range(a, n))}
    return LabeledConstruction(
        "llp_graph", Graph._trusted(n, 2, edges), labels,
        {"n": n, "k": k, "l": l}, Fraction(predicted),
    )


def clique_join_graph(n: int, k: int, l: int) -> Graph:
    """``K_(k-1)`` joined to disjoint ``K_l``'s (plus one smaller clique) on the rest.

    Its ``r``-clique hypergraph is exactly :func:`berge_forest_small_r`.
    """
    a, m = k - 1, n - k + 1
    q, t = divmod(m, l)
    classes = _ranges([l] * q + ([t] if t else []), start=a)
    apex = tuple(range(a))
    edges = set()
    for c in classes:
        edges.update(combinations(apex + c, 2))
    return Graph._trusted(n, 2, edges)


BUILDERS = {
    "complete": complete_uniform,
    "circle_regular": circle_regular,
    "lattice": lattice,
    "linear_star_forest": linear_star_forest_extremal,
    "berge_star": berge_star_extremal,
    "berge_forest_large_r": berge_forest_large_r,
    "berge_forest_small_r": berge_forest_small_r,
    "llp_graph": llp_extremal_graph,
}
