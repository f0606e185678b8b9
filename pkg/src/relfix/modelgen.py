"""Enumerators, a reproducible sampler, and named standard instances.

Pseudo-randomness comes from a counter-based SplitMix64 hash rather than a
stateful generator: the value for ``(seed, k1, k2, ...)`` is obtained by
folding each key into the state with ``state = splitmix64(state ^ key)``,
starting from ``splitmix64(seed)``.  SplitMix64 uses the constants
0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB with shifts
30, 27, 31.  A 64-bit output u becomes a float as (u >> 11) / 2**53 and an
integer below m as (u * m) >> 64.  Any k-th draw can therefore be computed
without the previous ones, which keeps parallel sampling deterministic.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .core import (
    EndoMap,
    RelatedSet,
    check_cap,
    default_names,
    make_related_set,
    related_set_from_code,
)
from .errors import CapExceeded
from .props import check_map_condition, check_property

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def rand_u64(seed: int, *keys: int) -> int:
    h = splitmix64(seed & MASK64)
    for k in keys:
        h = splitmix64(h ^ (k & MASK64))
    return h


def rand_unit(seed: int, *keys: int) -> float:
    return (rand_u64(seed, *keys) >> 11) * (1.0 / (1 << 53))


def rand_below(m: int, seed: int, *keys: int) -> int:
    return (rand_u64(seed, *keys) * m) >> 64


# Cheap syntactic properties are tested before expensive ones.
_PROPERTY_COST = {"reflexive": 0, "irreflexive": 0, "antisymmetric": 0, "symmetric": 0,
                  "asymmetric": 0, "connex": 1, "transitive": 2}


def order_by_cost(tags: Iterable[str]) -> list[str]:
    return sorted(set(tags), key=lambda p: (_PROPERTY_COST.get(p, 5), p))


def enumerate_related_sets(n: int, constraints: Iterable[str] = ()) -> Iterator[RelatedSet]:
    """Every relation on n elements, ascending by adjacency code, filtered."""
    check_cap(n)
    if n * n > 30:
        raise CapExceeded(f"2^{n * n} relations is beyond raw enumeration")
    tags = order_by_cost(constraints)
    for code in range(1 << (n * n)):
        R = related_set_from_code(n, code)
        if all(check_property(R, p) for p in tags):
            yield R


def map_from_index(n: int, k: int) -> EndoMap:
    """The k-th map in lexicographic order (position 0 most significant)."""
    target = [0] * n
    for i in range(n - 1, -1, -1):
        k, target[i] = divmod(k, n)
    return EndoMap(tuple(target))


def enumerate_endo_maps(R: RelatedSet, constraints: Iterable[str] = ()) -> Iterator[EndoMap]:
    check_cap(R.n)
    conds = sorted(set(constraints), key=lambda c: ("continuous" in c, c))
    for target in itertools.product(range(R.n), repeat=R.n):
        f = EndoMap(target)
        if all(check_map_condition(R, f, c) for c in conds):
            yield f


def random_instance(seed: int, n: int, density: float) -> RelatedSet:
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    check_cap(n)
    rows = []
    for i in range(n):
        r = 0
        for j in range(n):
            if rand_unit(seed, i * n + j) < density:
                r |= 1 << j
        rows.append(r)
    return RelatedSet(default_names(n), tuple(rows))


# -- standard instances ------------------------------------------------------

SIGN_ELEMENTS = ("bot", "neg", "zero", "pos", "top")


def _sign_join(a: str, b: str) -> str:
    if a == "bot":
        return b
    if b == "bot" or a == b:
        return a
    return "top"


def _sign_double(a: str) -> str:
    return a


def _sign_inc(a: str) -> str:
    return {"bot": "bot", "neg": "top", "zero": "pos", "pos": "pos", "top": "top"}[a]


def sign_transfer(a: str) -> str:
    """Loop head of ``x = 1; while ...: x = x * 2; x = x + 1``."""
    return _sign_join("pos", _sign_inc(_sign_double(a)))


def standard_instance(name: str, k: int | None = None) -> tuple[RelatedSet, EndoMap | None]:
    """Named instances: ``powerset k``, ``chain k``, ``divisors k``,
    ``all_true k`` and ``sign_analysis``.

    ``sign_analysis`` is the sign lattice ⊥ ⊑ −, 0, + ⊑ ⊤ with the abstract
    transfer map of a two-statement loop body; its least fixed point (``pos``)
    is the loop invariant.
    """
    if name == "sign_analysis":
        names = SIGN_ELEMENTS
        edges = [(a, a) for a in names]
        edges += [("bot", a) for a in names if a != "bot"]
        edges += [(a, "top") for a in names if a not in ("bot", "top")]
        R = make_related_set(names, edges)
        return R, EndoMap(tuple(R.index[sign_transfer(a)] for a in names))
    if k is None or k < 0:
        raise ValueError(f"{name} needs a nonnegative size")
    if name == "powerset":
        check_cap(1 << k)
        masks = range(1 << k)
        names = ["s" + "".join(str(i) for i in range(k) if m >> i & 1) for m in masks]
        edges = [(names[a], names[b]) for a in masks for b in masks if a & ~b == 0]
        return make_related_set(names, edges), None
    if name == "chain":
        check_cap(k)
        names = [f"c{i + 1}" for i in range(k)]
        return make_related_set(names, [(names[i], names[j]) for i in range(k) for j in range(i, k)]), None
    if name == "divisors":
        if k < 1:
            raise ValueError("divisors needs a positive integer")
        ds = [d for d in range(1, k + 1) if k % d == 0]
        check_cap(len(ds))
        names = [f"d{d}" for d in ds]
        return make_related_set(names, [(f"d{a}", f"d{b}") for a in ds for b in ds if b % a == 0]), None
    if name == "all_true":
        check_cap(k)
        names = default_names(k)
        return make_related_set(names, [(a, b) for a in names for b in names]), None
    raise ValueError(f"unknown standard instance {name!r}")

