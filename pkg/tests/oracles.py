"""Brute-force reference implementations, written straight from the definitions.

These work on Python sets of element indices and never touch the library's
bitmask helpers, so agreement with the library is meaningful.
"""

from __future__ import annotations

from itertools import combinations, permutations, product


def le(R, x, y):
    return R.matrix[x][y]


def elements(R):
    return range(R.n)


def all_subsets(items):
    items = list(items)
    for k in range(len(items) + 1):
        for c in combinations(items, k):
            yield frozenset(c)


def to_set(mask):
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def to_mask(s):
    return sum(1 << i for i in s)


# -- bounds ------------------------------------------------------------------

def upper_bounds(R, X):
    return {b for b in elements(R) if all(le(R, x, b) for x in X)}


def least(R, X):
    return {x for x in X if all(le(R, x, y) for y in X)}


def greatest(R, X):
    return {x for x in X if all(le(R, y, x) for y in X)}


def sups(R, X):
    return least(R, upper_bounds(R, X))


def sim(R, x, y):
    return le(R, x, y) and le(R, y, x)


def strict(R, x, y):
    return le(R, x, y) and not le(R, y, x)


# -- relation properties -----------------------------------------------------

def reflexive(R):
    return all(le(R, x, x) for x in elements(R))


def irreflexive(R):
    return not any(le(R, x, x) for x in elements(R))


def transitive(R):
    A = elements(R)
    return all(le(R, x, z) for x, y, z in product(A, A, A) if le(R, x, y) and le(R, y, z))


def antisymmetric(R):
    return all(x == y for x, y in product(elements(R), repeat=2) if sim(R, x, y))


def symmetric(R):
    return all(le(R, y, x) for x, y in product(elements(R), repeat=2) if le(R, x, y))


def asymmetric(R):
    return not any(sim(R, x, y) for x, y in product(elements(R), repeat=2))


def connex(R):
    return all(le(R, x, y) or le(R, y, x) for x, y in product(elements(R), repeat=2))


def semiattractive(R):
    A = elements(R)
    return all(le(R, x, z) for x, y, z in product(A, A, A) if sim(R, x, y) and le(R, y, z))


def dual_semiattractive(R):
    A = elements(R)
    return all(le(R, z, x) for x, y, z in product(A, A, A) if sim(R, x, y) and le(R, z, y))


def well_related_set(R, X):
    return all(least(R, Y) for Y in all_subsets(X) if Y)


def well_related(R):
    return well_related_set(R, elements(R))


def well_founded_strict(R):
    def minimal(Y):
        return [x for x in Y if not any(strict(R, y, x) for y in Y)]
    return all(minimal(Y) for Y in all_subsets(elements(R)) if Y)


ATOMIC = {
    "reflexive": reflexive, "irreflexive": irreflexive, "transitive": transitive,
    "antisymmetric": antisymmetric, "symmetric": symmetric, "asymmetric": asymmetric,
    "connex": connex, "semiattractive": semiattractive, "well_related": well_related,
    "well_founded_strict": well_founded_strict,
}

COMPOSITE = {
    "attractive": ("semiattractive", dual_semiattractive),
    "pseudo_order": ("reflexive", "antisymmetric"),
    "quasi_order": ("reflexive", "transitive"),
    "partial_order": ("reflexive", "transitive", "antisymmetric"),
    "near_order": ("transitive", "antisymmetric"),
    "strict_order": ("irreflexive", "transitive"),
    "tolerance": ("reflexive", "symmetric"),
    "equivalence": ("reflexive", "symmetric", "transitive"),
    "partial_equivalence": ("symmetric", "transitive"),
    "well_ordered": ("antisymmetric", "well_related"),
}


def has_property(R, p):
    if p in ATOMIC:
        return ATOMIC[p](R)
    return all((ATOMIC[q](R) if isinstance(q, str) else q(R)) for q in COMPOSITE[p])


# -- subset classes ----------------------------------------------------------

def is_connex_set(R, X):
    return all(le(R, x, y) or le(R, y, x) for x, y in product(X, repeat=2))


def is_directed_set(R, X):
    return all(any(le(R, x, z) and le(R, y, z) for z in X) for x, y in product(X, repeat=2))


def is_omega_range(R, X):
    """Some sequence s0..s(m-1), m ≤ 2|A|, with range X and si ⊑ sj for i ≤ j.

    Padding the last element forever gives a monotone sequence on the naturals.
    Explores prefixes breadth-first; a prefix matters only through its set of
    values, but every length up to the bound is tried.
    """
    X = frozenset(X)
    if not X:
        return False
    bound = 2 * max(R.n, 1)
    frontier = {frozenset([x]) for x in X if le(R, x, x)}
    for _ in range(bound):
        if X in frontier:
            return True
        nxt = set()
        for seen in frontier:
            for y in X:
                if le(R, y, y) and all(le(R, s, y) for s in seen):
                    nxt.add(seen | {y})
        frontier = nxt
    return X in frontier


def in_class(R, X, cls):
    if cls == "all":
        return True
    if cls == "connex":
        return is_connex_set(R, X)
    if cls == "directed":
        return is_directed_set(R, X)
    if cls == "well":
        return well_related_set(R, X)
    if cls == "omega":
        return is_omega_range(R, X)
    raise ValueError(cls)


def complete(R, cls):
    return all(sups(R, X) for X in all_subsets(elements(R)) if in_class(R, X, cls))


# -- maps --------------------------------------------------------------------

def monotone(R, f):
    return all(le(R, f[x], f[y]) for x, y in product(elements(R), repeat=2) if le(R, x, y))


def inflationary(R, f):
    return all(le(R, x, f[x]) for x in elements(R))


def inflationary_variant(R, f):
    return all(le(R, x, f[y]) for x, y in product(elements(R), repeat=2) if le(R, x, y))


def pointwise_infl_or_mono(R, f):
    return all(le(R, x, f[x]) or all(le(R, f[y], f[x]) for y in elements(R) if le(R, y, x))
               for x in elements(R))


def _continuous(R, f, cls, nonempty):
    for X in all_subsets(elements(R)):
        if nonempty and not X:
            continue
        if not in_class(R, X, cls):
            continue
        img = {f[x] for x in X}
        for s in sups(R, X):
            if f[s] not in sups(R, img):
                return False
    return True


def omega_continuous(R, f):
    return _continuous(R, f, "omega", True)


def scott_continuous(R, f):
    return _continuous(R, f, "directed", True)


MAP_CONDITIONS = {
    "monotone": monotone, "inflationary": inflationary, "inflationary_variant": inflationary_variant,
    "pointwise_infl_or_mono": pointwise_infl_or_mono, "omega_continuous": omega_continuous,
    "scott_continuous": scott_continuous,
}


# -- fixed points ------------------------------------------------------------

def fixed_points(R, f):
    return {x for x in elements(R) if f[x] == x}


def qfps(R, f):
    return {x for x in elements(R) if sim(R, f[x], x)}


def bottoms(R):
    return {b for b in elements(R) if all(le(R, b, x) for x in elements(R))}


def iterates(f, start):
    seen = []
    x = start
    while x not in seen:
        seen.append(x)
        x = f[x]
    return set(seen)


def sm_closed_sets(R, f):
    """Subsets closed under f and containing every supremum of their subsets."""
    out = []
    for B in all_subsets(elements(R)):
        if any(f[x] not in B for x in B):
            continue
        if all(sups(R, X) <= B for X in all_subsets(B)):
            out.append(B)
    return out


def sm_core(R, f):
    core = set(elements(R))
    for B in sm_closed_sets(R, f):
        core &= B
    return core


def sup_closed_sets(R):
    """Subsets containing every supremum of each of their subsets (map-free part)."""
    return [B for B in all_subsets(elements(R)) if all(sups(R, X) <= B for X in all_subsets(B))]


def core_from_closed(R, f, closed):
    core = set(elements(R))
    for B in closed:
        if all(f[x] in B for x in B):
            core &= B
    return core


def least_fixed_points(R, f):
    return least(R, fixed_points(R, f))


def least_qfps(R, f):
    return least(R, qfps(R, f))


# -- relabeling --------------------------------------------------------------

def permute_code(n, code, p):
    out = 0
    for i in range(n):
        for j in range(n):
            if code >> (i * n + j) & 1:
                out |= 1 << (p[i] * n + p[j])
    return out


def orbit_representatives(n):
    """Least code in each relabeling class of size-n relations."""
    perms = list(permutations(range(n)))
    return [c for c in range(1 << (n * n)) if all(permute_code(n, c, p) >= c for p in perms)]
