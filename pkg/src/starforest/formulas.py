"""Closed-form Turán values for star forests, evaluated in exact arithmetic.

All values are :class:`fractions.Fraction`.  Each function returns a
:class:`BoundValue` recording whether the number is an exact extremal value,
an upper bound, or only a leading term, together with the parameter regime
it was evaluated in.  The source statements hold only for ``n`` large
enough, and that threshold is never quantified; exact values carry that
caveat.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

EXACT = "exact"
UPPER = "upper-bound"
LOWER = "lower-bound"
LEADING = "asymptotic-leading-term"

LARGE_N = "asymptotic caveat: n threshold unspecified"


class RegimeError(ValueError):
    """Parameters outside the regime where the formula applies."""


@dataclass(frozen=True)
class BoundValue:
    value: Fraction
    kind: str
    regime: str
    caveat: str | None = LARGE_N

    @property
    def is_integral(self) -> bool:
        return self.value.denominator == 1

    def to_json(self) -> dict:
        out = {"value": str(self.value), "kind": self.kind, "regime": self.regime}
        if self.caveat:
            out["caveat"] = self.caveat
        return out


def binom(a: int, b: int) -> int:
    """``C(a, b)``, zero outside ``0 <= b <= a``."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise RegimeError(msg)


def f_star_forest_graph(n: int, k: int, l: int) -> BoundValue:
    """``ex(n, k.S_l)`` for graphs."""
    _need(n >= k >= 1 and l >= 1, "needs n >= k >= 1, l >= 1")
    m = n - k + 1
    v = (l - 1) * m // 2 + (k - 1) * m + binom(k - 1, 2)
    return BoundValue(Fraction(v), EXACT, "n large")


def f_matching(n: int, k: int, r: int) -> BoundValue:
    """Most edges in an ``r``-graph without ``k`` pairwise disjoint edges."""
    _need(n >= r >= 2 and k >= 1, "needs n >= r >= 2, k >= 1")
    return BoundValue(Fraction(binom(n, r) - binom(n - k + 1, r)), EXACT, "n large")


def f_expansion_forest(n: int, k: int, l: int, r: int, ex_star: int) -> BoundValue:
    """``ex_r(n, k.S_l^+)`` given the single-star value ``ex_star = ex_r(n-k+1, S_l^+)``."""
    _need(r >= 2 and k >= 1 and l >= 1, "needs r >= 2, k, l >= 1")
    _need(ex_star >= 0, "ex_star must be a certified non-negative value")
    v = binom(n, r) - binom(n - k + 1, r) + ex_star
    return BoundValue(Fraction(v), EXACT, "n large; single-star value supplied")


def f_linear_upper(n: int, k: int, l: int, r: int) -> BoundValue:
    """Upper bound on ``ex_r^lin(n, k.S_l^+)``, sharp up to the constant term."""
    _need(r >= 2 and k >= 1 and l >= 1, "needs r >= 2, k, l >= 1")
    v = (Fraction(l - 1, r) + Fraction(k - 1, r - 1)) * (n - k + 1)
    v += Fraction(binom(k - 1, 2), binom(r, 2))
    return BoundValue(v, UPPER, "n large; sharp asymptotically")


def linear_leading_term(n: int, k: int, l: int, r: int) -> Fraction:
    """The part of :func:`f_linear_upper` that the lattice construction attains."""
    return (Fraction(l - 1, r) + Fraction(k - 1, r - 1)) * (n - k + 1)


def f_linear_matching_leading(n: int, k: int, r: int) -> BoundValue:
    """Leading term of ``ex_r^lin(n, M_k)``; the constant is not determined."""
    _need(r >= 2 and k >= 1, "needs r >= 2, k >= 1")
    return BoundValue(Fraction(k - 1, r - 1) * (n - k + 1), LEADING, "n large; + O(1)")


def f_berge_star(n: int, l: int, r: int) -> BoundValue:
    """``ex_r(n, Berge-S_l)``: exact under the divisibility condition, else an upper bound."""
    _need(l >= 1 and r >= 2, "needs l >= 1, r >= 2")
    if l == 1:
        return BoundValue(Fraction(0), EXACT, "l = 1", None)
    if l > r:
        v = Fraction(binom(l, r) * n, l)
        kind = EXACT if n % l == 0 else UPPER
        return BoundValue(v, kind, "l > r", None)
    v = Fraction((l - 1) * n, r)
    kind = EXACT if n % r == 0 and n > r else UPPER
    return BoundValue(v, kind, "l <= r", None)


def f_berge_forest_large_r(n: int, k: int, l: int, r: int) -> BoundValue:
    _need(k >= 1 and l >= 1, "needs k, l >= 1")
    _need(r >= l + k - 1, f"large-r regime needs r >= l + k - 1 (r={r}, l={l}, k={k})")
    m, s = n - k + 1, r - k + 1
    # with m = s the host has a single r-set
    kind = EXACT if m % s == 0 and m > s else UPPER
    return BoundValue(Fraction((l - 1) * m, s), kind, "r >= l + k - 1, n large")


def f_berge_forest_small_r(n: int, k: int, l: int, r: int) -> BoundValue:
    _need(k >= 1 and l >= 1 and r >= 2, "needs k, l >= 1, r >= 2")
    _need(r <= l + k - 2, f"small-r regime needs r <= l + k - 2 (r={r}, l={l}, k={k})")
    m = n - k + 1
    per_class = binom(l + k - 1, r) - binom(k - 1, r)
    ceil_classes = -(-m // l)
    v = per_class * ceil_classes + binom(k - 1, r)
    kind = EXACT if m % l == 0 else UPPER
    return BoundValue(Fraction(v), kind, "r <= l + k - 2, n large")


def f_berge_forest(n: int, k: int, l: int, r: int) -> BoundValue:
    """Dispatch to the large-r or small-r value by regime."""
    if r >= l + k - 1:
        return f_berge_forest_large_r(n, k, l, r)
    return f_berge_forest_small_r(n, k, l, r)


def construction_count_small_r(n: int, k: int, l: int, r: int) -> int:
    """Edge count of the clique construction ``H(n, l, k, r)``."""
    _need(k >= 1 and l >= 1 and r >= 1, "needs k, l, r >= 1")
    _need(r <= l + k - 1, "construction needs r <= l + k - 1")
    q, t = divmod(n - k + 1, l)
    return (binom(l + k - 1, r) - binom(k - 1, r)) * q + binom(t + k - 1, r)


def f_generalized_turan_cliques(n: int, k: int, l: int, r: int) -> BoundValue:
    """Most ``K_r`` copies in a ``k.S_l``-free graph."""
    _need(r >= 3, "needs r >= 3")
    _need(r <= l + k - 2, "needs r <= l + k - 2")
    _need((n - k + 1) % l == 0, "needs l | n - k + 1")
    v = (binom(l + k - 1, r) - binom(k - 1, r)) * ((n - k + 1) // l) + binom(k - 1, r)
    return BoundValue(Fraction(v), EXACT, "r <= l + k - 2, l | n - k + 1, n large")


def f_matching_cliques(n: int, k: int, r: int) -> BoundValue:
    """Most ``K_r`` copies in a graph without ``k`` disjoint edges, ``r >= k + 2``."""
    _need(r >= k + 2, "needs r >= k + 2")
    _need(n >= 2 * k - 1, "needs n >= 2k - 1")
    return BoundValue(Fraction(binom(2 * k - 1, r)), EXACT, "r >= k + 2, n >= 2k - 1", None)


FORMULAS = {
    "star_forest_graph": (f_star_forest_graph, ("n", "k", "l")),
    "matching": (f_matching, ("n", "k", "r")),
    "expansion_forest": (f_expansion_forest, ("n", "k", "l", "r", "ex_star")),
    "linear_upper": (f_linear_upper, ("n", "k", "l", "r")),
    "linear_matching_leading": (f_linear_matching_leading, ("n", "k", "r")),
    "berge_star": (f_berge_star, ("n", "l", "r")),
    "berge_forest": (f_berge_forest, ("n", "k", "l", "r")),
    "berge_forest_large_r": (f_berge_forest_large_r, ("n", "k", "l", "r")),
    "berge_forest_small_r": (f_berge_forest_small_r, ("n", "k", "l", "r")),
    "generalized_turan_cliques": (f_generalized_turan_cliques, ("n", "k", "l", "r")),
    "matching_cliques": (f_matching_cliques, ("n", "k", "r")),
}


def evaluate(name: str, **params: int) -> BoundValue:
    try:
        fn, names = FORMULAS[name]
    except KeyError:
        raise RegimeError(f"unknown formula {name!r}") from None
    missing = [p for p in names if params.get(p) is None]
    if missing:
        raise RegimeError(f"formula {name} needs {', '.join(missing)}")
    return fn(*(params[p] for p in names))
