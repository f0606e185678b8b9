"""Finite related sets, endo-maps and element subsets.

A related set is a finite carrier together with an arbitrary binary relation.
Nothing about the relation is assumed: it need not be reflexive, transitive or
antisymmetric.  Elements are identified by their carrier index; labels are only
used for presentation.

Subsets of the carrier (``ElemSet``) are plain ``int`` bitmasks: bit ``i`` is
set iff element ``i`` is a member.  The relation is stored row-wise as
bitmasks too, ``rows[i]`` holding every ``j`` with ``i ⊑ j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, InputError

ElemSet = int


@dataclass
class Limits:
    """Enumeration caps.  Mutate ``LIMITS`` to reconfigure globally."""

    carrier_cap: int = 16
    omega_search_cap: int = 8


LIMITS = Limits()


def check_cap(n: int, what: str = "carrier") -> None:
    if n > LIMITS.carrier_cap:
        raise CapExceeded(f"{what} size {n} exceeds cap {LIMITS.carrier_cap}")


# -- ElemSet helpers ---------------------------------------------------------

def members(mask: ElemSet) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> ElemSet:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def submasks(mask: ElemSet) -> Iterator[ElemSet]:
    """All subsets of ``mask`` in ascending numeric order."""
    bits = members(mask)
    for k in range(1 << len(bits)):
        s = 0
        for t, b in enumerate(bits):
            if k >> t & 1:
                s |= 1 << b
        yield s


def popcount(mask: ElemSet) -> int:
    return bin(mask).count("1")


def lowest(mask: ElemSet) -> int:
    """Index of the least member; ``mask`` must be nonempty."""
    return (mask & -mask).bit_length() - 1


# -- related sets ------------------------------------------------------------

def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"a{i + 1}" for i in range(n))


@dataclass(frozen=True)
class RelatedSet:
    names: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise InputError("duplicate element label")
        if len(self.rows) != n:
            raise InputError(f"relation has {len(self.rows)} rows for {n} elements")
        full = (1 << n) - 1
        for r in self.rows:
            if r & ~full:
                raise InputError("relation entry outside the carrier")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> ElemSet:
        return (1 << len(self.names)) - 1

    def le(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def sim(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1) and bool(self.rows[j] >> i & 1)

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """``cols[j]`` is the set of ``i`` with ``i ⊑ j``."""
        n = self.n
        return tuple(mask_of(i for i in range(n) if self.rows[i] >> j & 1) for j in range(n))

    @cached_property
    def sim_rows(self) -> tuple[int, ...]:
        return tuple(r & c for r, c in zip(self.rows, self.cols))

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @property
    def matrix(self) -> tuple[tuple[bool, ...], ...]:
        n = self.n
        return tuple(tuple(bool(r >> j & 1) for j in range(n)) for r in self.rows)

    @property
    def code(self) -> int:
        """The adjacency matrix read as an integer, entry (i, j) at bit i*n + j."""
        n = self.n
        c = 0
        for i, r in enumerate(self.rows):
            c |= r << (i * n)
        return c

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in members(self.rows[i])]

    def label_set(self, mask: ElemSet) -> list[str]:
        return [self.names[i] for i in members(mask)]

    @cached_property
    def sup_table(self) -> tuple[ElemSet, ...]:
        """Suprema of every subset, indexed by subset mask (2^n entries)."""
        check_cap(self.n)
        rows, full = self.rows, self.full
        n = self.n
        bounds = [full] * (1 << n)
        for m in range(1, 1 << n):
            low = (m & -m).bit_length() - 1
            bounds[m] = bounds[m & (m - 1)] & rows[low]
        table = []
        for b in bounds:
            s = 0
            x = b
            while x:
                e = (x & -x).bit_length() - 1
                if b & ~rows[e] == 0:
                    s |= 1 << e
                x &= x - 1
            table.append(s)
        return tuple(table)

    def __repr__(self) -> str:
        return f"RelatedSet({list(self.names)}, {[(self.names[i], self.names[j]) for i, j in self.edges()]})"

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[bool]], names: Sequence[str] | None = None) -> "RelatedSet":
        n = len(matrix)
        rows = tuple(mask_of(j for j, v in enumerate(row) if v) for row in matrix)
        return cls(tuple(names) if names is not None else default_names(n), rows)


@lru_cache(maxsize=1 << 17)
def related_set_from_code(n: int, code: int) -> RelatedSet:
    """Relation whose adjacency matrix is ``code`` (bit i*n + j), labels a1..an.

    Cached so that per-relation tables are shared across the maps enumerated
    over the same relation.
    """
    row_mask = (1 << n) - 1
    rows = tuple((code >> (i * n)) & row_mask for i in range(n))
    return RelatedSet(default_names(n), rows)


def make_related_set(names: Sequence[str], edges: Iterable[tuple[str, str]]) -> RelatedSet:
    names = tuple(names)
    if len(set(names)) != len(names):
        seen = set()
        dup = next(x for x in names if x in seen or seen.add(x))
        raise InputError(f"duplicate label {dup!r}")
    check_cap(len(names))
    idx = {x: i for i, x in enumerate(names)}
    rows = [0] * len(names)
    for a, b in edges:
        for end in (a, b):
            if end not in idx:
                raise InputError(f"edge endpoint {end!r} not in carrier")
        rows[idx[a]] |= 1 << idx[b]
    return RelatedSet(names, tuple(rows))


def derived_relation(R: RelatedSet, kind: str) -> RelatedSet:
    """``dual`` (transpose), ``strict`` (x ⊑ y and not y ⊑ x) or ``similarity``."""
    if kind == "dual":
        rows = R.cols
    elif kind == "strict":
        rows = tuple(r & ~c for r, c in zip(R.rows, R.cols))
    elif kind == "similarity":
        rows = R.sim_rows
    else:
        raise ValueError(f"unknown derived relation {kind!r}")
    return RelatedSet(R.names, tuple(rows))


def restrict(R: RelatedSet, X: ElemSet) -> tuple[RelatedSet, list[int]]:
    """Sub-related set on ``X``; also returns the sub-to-ambient index map.

    Results are memoized on ``R`` so repeated restrictions share their tables.
    """
    memo = R.__dict__.setdefault("_restrict_cache", {})
    if X not in memo:
        idx = members(X)
        pos = {a: k for k, a in enumerate(idx)}
        rows = tuple(mask_of(pos[j] for j in members(R.rows[a] & X)) for a in idx)
        memo[X] = (RelatedSet(tuple(R.names[a] for a in idx), rows), idx)
    sub, idx = memo[X]
    return sub, list(idx)


# -- endo-maps ---------------------------------------------------------------

@dataclass(frozen=True)
class EndoMap:
    target: tuple[int, ...]

    def __post_init__(self):
        n = len(self.target)
        for t in self.target:
            if not 0 <= t < n:
                raise InputError(f"map target {t} outside carrier of size {n}")

    def __call__(self, i: int) -> int:
        return self.target[i]

    def __len__(self) -> int:
        return len(self.target)

    @cached_property
    def fixed(self) -> ElemSet:
        return mask_of(i for i, t in enumerate(self.target) if t == i)


def make_endo_map(R: RelatedSet, assignments: Iterable[tuple[str, str]]) -> EndoMap:
    idx = R.index
    target: list[int | None] = [None] * R.n
    for a, b in assignments:
        for end in (a, b):
            if end not in idx:
                raise InputError(f"label {end!r} outside carrier")
        if target[idx[a]] is not None:
            raise InputError(f"duplicate assignment for {a!r}")
        target[idx[a]] = idx[b]
    for i, t in enumerate(target):
        if t is None:
            raise InputError(f"missing assignment for {R.names[i]!r}")
    return EndoMap(tuple(target))  # type: ignore[arg-type]


def identity_map(n: int) -> EndoMap:
    return EndoMap(tuple(range(n)))


def apply_iter(f: EndoMap, n: int, x: int) -> int:
    for _ in range(n):
        x = f.target[x]
    return x


def image(f: EndoMap, X: ElemSet) -> ElemSet:
    t = f.target
    out = 0
    while X:
        i = (X & -X).bit_length() - 1
        out |= 1 << t[i]
        X &= X - 1
    return out


def restrict_map(f: EndoMap, idx: list[int]) -> EndoMap | None:
    """``f`` restricted to the ambient indices ``idx``; None if not closed."""
    pos = {a: k for k, a in enumerate(idx)}
    out = []
    for a in idx:
        b = f.target[a]
        if b not in pos:
            return None
        out.append(pos[b])
    return EndoMap(tuple(out))

