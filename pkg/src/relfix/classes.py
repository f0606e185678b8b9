"""Completeness classes and the class-completeness predicate.

A class is a family of subsets decided by looking only at the subset and the
relation restricted to it:

``all``       every subset
``connex``    any two members comparable (so every member is reflexive)
``directed``  any two members have a bound inside the subset; the empty set
              counts as directed
``well``      well-related: every nonempty subset has a least element
``omega``     ranges of monotone sequences ℕ → A; on a finite carrier these are
              the nonempty X admitting an ordering x1..xk with xi ⊑ xj for all
              i ≤ j (take first-appearance order; pad with the last element)

Weak chain-completeness coincides with ``well`` under antisymmetry, so it has
no separate tag.
"""

from __future__ import annotations

import warnings

from .core import LIMITS, ElemSet, RelatedSet, check_cap, members, popcount
from .props import OK, Witness, least_extraction

CLASSES = ("all", "connex", "directed", "well", "omega")

_ALIASES = {
    "all": "all", "univ": "all",
    "connex": "connex", "chain": "connex",
    "directed": "directed",
    "well": "well", "wellrelated": "well", "well_related": "well",
    "omega": "omega", "omegarange": "omega", "omega_range": "omega",
}


def normalize_class(cls: str) -> str:
    try:
        return _ALIASES[cls.lower()]
    except KeyError:
        raise ValueError(f"unknown subset class {cls!r}") from None


def _cache(R: RelatedSet) -> dict:
    return R.__dict__.setdefault("_class_cache", {})


def set_le(R: RelatedSet, X: ElemSet, Y: ElemSet) -> bool:
    """X ⊑ˢ Y: every member of X is related to every member of Y."""
    rows = R.rows
    while X:
        x = (X & -X).bit_length() - 1
        if Y & ~rows[x]:
            return False
        X &= X - 1
    return True


def _connex(R, X):
    rows, cols = R.rows, R.cols
    m = X
    while m:
        x = (m & -m).bit_length() - 1
        if X & ~(rows[x] | cols[x]):
            return False
        m &= m - 1
    return True


def _directed(R, X):
    rows = R.rows
    xs = members(X)
    for i, x in enumerate(xs):
        for y in xs[i:]:
            if not rows[x] & rows[y] & X:
                return False
    return True


def omega_order(R: RelatedSet, X: ElemSet) -> list[int] | None:
    """An ordering x1..xk of X with xi ⊑ xj for all i ≤ j, or None.

    Depth-first permutation search memoized on the set still to be placed.
    """
    if not X:
        return None
    k = popcount(X)
    rows = R.rows
    memo: dict[ElemSet, bool] = {}
    if k > LIMITS.omega_search_cap:
        warnings.warn(
            f"ω-range search over {k} elements exceeds cap {LIMITS.omega_search_cap}; "
            "cost is exponential in the subset size",
            RuntimeWarning,
            stacklevel=2,
        )

    def place(rest: ElemSet, out: list[int]) -> bool:
        if not rest:
            return True
        if rest in memo:
            return False
        for e in members(rest):
            if rest & ~rows[e] == 0:
                out.append(e)
                if place(rest & ~(1 << e), out):
                    return True
                out.pop()
        memo[rest] = False
        return False

    out: list[int] = []
    return out if place(X, out) else None


def is_in_class(R: RelatedSet, X: ElemSet, cls: str) -> bool:
    cls = normalize_class(cls)
    if cls == "all":
        return True
    if cls == "connex":
        return _connex(R, X)
    if cls == "directed":
        return _directed(R, X)
    if cls == "well":
        return not least_extraction(R, X)[1]
    return omega_order(R, X) is not None


def subsets_in_class(R: RelatedSet, cls: str) -> list[ElemSet]:
    """Members of the class among subsets of the carrier, ascending by mask."""
    cls = normalize_class(cls)
    check_cap(R.n)
    cache = _cache(R)
    if cls not in cache:
        if cls == "all":
            cache[cls] = list(range(1 << R.n))
        else:
            cache[cls] = [X for X in range(1 << R.n) if is_in_class(R, X, cls)]
    return cache[cls]


def check_complete(R: RelatedSet, cls: str) -> Witness:
    """Every subset in the class has at least one supremum in R."""
    cls = normalize_class(cls)
    key = ("complete", cls)
    cache = _cache(R)
    if key not in cache:
        table = R.sup_table
        w = OK
        for X in subsets_in_class(R, cls):
            if not table[X]:
                w = Witness(False, subset=X, clause=f"{cls}-class subset has a supremum")
                break
        cache[key] = w
    return cache[key]
