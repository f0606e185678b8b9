"""Property checkers for relations and for maps over them.

Every checker returns a :class:`Witness`.  A failing witness names the
smallest counterexample under lexicographic scan order: element tuples are
compared position-wise, subsets by their bitmask.

The ``tolerance`` and ``partial_equivalence`` tags follow the usual textbook
definitions (reflexive + symmetric, and symmetric + transitive).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import ElemSet, EndoMap, RelatedSet, image, members

PROPERTY_NAMES = (
    "reflexive", "irreflexive", "transitive", "antisymmetric", "symmetric",
    "asymmetric", "connex", "semiattractive", "attractive", "well_related",
    "well_founded_strict", "pseudo_order", "quasi_order", "partial_order",
    "near_order", "strict_order", "tolerance", "equivalence",
    "partial_equivalence", "well_ordered",
)

MAP_CONDITIONS = (
    "monotone", "inflationary", "inflationary_variant",
    "pointwise_infl_or_mono", "omega_continuous", "scott_continuous",
)

# Composite properties as conjunctions of other tags.
COMPOSITES: dict[str, tuple[str, ...]] = {
    "attractive": ("semiattractive", "dual_semiattractive"),
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


@dataclass(frozen=True)
class Witness:
    verdict: bool
    elements: tuple[int, ...] = ()
    subset: ElemSet | None = None
    clause: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.verdict

    def describe(self, R: RelatedSet) -> str:
        if self.verdict:
            return "holds"
        parts = []
        if self.elements:
            parts.append("(" + ", ".join(R.names[i] for i in self.elements) + ")")
        if self.subset is not None:
            parts.append("{" + ", ".join(R.label_set(self.subset)) + "}")
        return f"fails [{self.clause}] at " + " ".join(parts)

    def to_json(self, R: RelatedSet) -> dict:
        return {
            "verdict": self.verdict,
            "clause": self.clause,
            "elements": [R.names[i] for i in self.elements],
            "subset": None if self.subset is None else R.label_set(self.subset),
        }


OK = Witness(True)


# -- atomic relation checks --------------------------------------------------

def _reflexive(R):
    for x, r in enumerate(R.rows):
        if not r >> x & 1:
            return Witness(False, (x,), clause="x ⊑ x")
    return OK


def _irreflexive(R):
    for x, r in enumerate(R.rows):
        if r >> x & 1:
            return Witness(False, (x,), clause="not x ⊑ x")
    return OK


def _transitive(R):
    rows = R.rows
    for x, rx in enumerate(rows):
        for y in members(rx):
            bad = rows[y] & ~rx
            if bad:
                z = (bad & -bad).bit_length() - 1
                return Witness(False, (x, y, z), clause="x ⊑ y ∧ y ⊑ z ⟹ x ⊑ z")
    return OK


def _antisymmetric(R):
    for x, s in enumerate(R.sim_rows):
        bad = s & ~(1 << x)
        if bad:
            return Witness(False, (x, (bad & -bad).bit_length() - 1), clause="x ⊑ y ∧ y ⊑ x ⟹ x = y")
    return OK


def _symmetric(R):
    for x, (r, c) in enumerate(zip(R.rows, R.cols)):
        bad = r & ~c
        if bad:
            return Witness(False, (x, (bad & -bad).bit_length() - 1), clause="x ⊑ y ⟹ y ⊑ x")
    return OK


def _asymmetric(R):
    for x, s in enumerate(R.sim_rows):
        if s:
            return Witness(False, (x, (s & -s).bit_length() - 1), clause="x ⊑ y ⟹ not y ⊑ x")
    return OK


def _connex(R):
    full = R.full
    for x, (r, c) in enumerate(zip(R.rows, R.cols)):
        bad = full & ~(r | c)
        if bad:
            return Witness(False, (x, (bad & -bad).bit_length() - 1), clause="x ⊑ y ∨ y ⊑ x")
    return OK


def _semiattractive_rows(rows, sim_rows, clause):
    for x, rx in enumerate(rows):
        for y in members(sim_rows[x]):
            bad = rows[y] & ~rx
            if bad:
                return Witness(False, (x, y, (bad & -bad).bit_length() - 1), clause=clause)
    return OK


def _semiattractive(R):
    return _semiattractive_rows(R.rows, R.sim_rows, "x ∼ y ∧ y ⊑ z ⟹ x ⊑ z")


def _dual_semiattractive(R):
    return _semiattractive_rows(R.cols, R.sim_rows, "x ∼ y ∧ z ⊑ y ⟹ z ⊑ x")


def least_extraction(R: RelatedSet, X: ElemSet) -> tuple[list[int], ElemSet]:
    """Greedily peel off a least element of what remains of ``X``.

    Returns the extraction order and the leftover set; the leftover is empty
    iff ``X`` is well-related (every nonempty subset has a least element).
    """
    rows = R.rows
    order = []
    rest = X
    while rest:
        cand = rest
        found = -1
        while cand:
            e = (cand & -cand).bit_length() - 1
            if rest & ~rows[e] == 0:
                found = e
                break
            cand &= cand - 1
        if found < 0:
            break
        order.append(found)
        rest &= ~(1 << found)
    return order, rest


def has_least(R: RelatedSet, X: ElemSet) -> bool:
    rows = R.rows
    x = X
    while x:
        e = (x & -x).bit_length() - 1
        if X & ~rows[e] == 0:
            return True
        x &= x - 1
    return False


def _first_subset(R: RelatedSet, limit: ElemSet, bad) -> ElemSet:
    for m in range(1, limit + 1):
        if m & ~limit == 0 and bad(m):
            return m
    return limit


def _well_related(R):
    _, rest = least_extraction(R, R.full)
    if rest:
        X = _first_subset(R, R.full, lambda m: not has_least(R, m))
        return Witness(False, subset=X, clause="nonempty subset has a least element")
    return OK


def _strict_minimal_peel(R: RelatedSet, X: ElemSet) -> ElemSet:
    strict_cols = [c & ~r for r, c in zip(R.rows, R.cols)]
    rest = X
    while rest:
        removable = 0
        x = rest
        while x:
            e = (x & -x).bit_length() - 1
            if strict_cols[e] & rest == 0:
                removable |= 1 << e
            x &= x - 1
        if not removable:
            break
        rest &= ~removable
    return rest


def _well_founded_strict(R):
    if _strict_minimal_peel(R, R.full):
        X = _first_subset(R, R.full, lambda m: _strict_minimal_peel(R, m) == m)
        return Witness(False, subset=X, clause="nonempty subset has a ⊏-minimal element")
    return OK


_ATOMIC = {
    "reflexive": _reflexive,
    "irreflexive": _irreflexive,
    "transitive": _transitive,
    "antisymmetric": _antisymmetric,
    "symmetric": _symmetric,
    "asymmetric": _asymmetric,
    "connex": _connex,
    "semiattractive": _semiattractive,
    "dual_semiattractive": _dual_semiattractive,
    "well_related": _well_related,
    "well_founded_strict": _well_founded_strict,
}


def check_property(R: RelatedSet, p: str) -> Witness:
    if p in _ATOMIC:
        return _ATOMIC[p](R)
    if p in COMPOSITES:
        for part in COMPOSITES[p]:
            w = check_property(R, part)
            if not w:
                return Witness(False, w.elements, w.subset, f"{part}: {w.clause}")
        return OK
    raise ValueError(f"unknown property {p!r}")


# -- fast classification -----------------------------------------------------

def _atomic_flags(R: RelatedSet) -> dict[str, bool]:
    rows, cols, sims = R.rows, R.cols, R.sim_rows
    full = R.full
    refl = irr = True
    trans = anti = sym = asym = conn = semi = dsemi = True
    for x in range(R.n):
        rx, cx, sx = rows[x], cols[x], sims[x]
        bx = 1 << x
        if rx & bx:
            irr = False
        else:
            refl = False
        if sx & ~bx:
            anti = False
        if sx:
            asym = False
        if rx & ~cx:
            sym = False
        if full & ~(rx | cx):
            conn = False
        if trans:
            y = rx
            while y:
                e = (y & -y).bit_length() - 1
                if rows[e] & ~rx:
                    trans = False
                    break
                y &= y - 1
        if semi or dsemi:
            y = sx
            while y:
                e = (y & -y).bit_length() - 1
                if rows[e] & ~rx:
                    semi = False
                if cols[e] & ~cx:
                    dsemi = False
                y &= y - 1
    wr = conn and not least_extraction(R, full)[1]
    wf = wr or not _strict_minimal_peel(R, full)
    return {
        "reflexive": refl, "irreflexive": irr, "transitive": trans,
        "antisymmetric": anti, "symmetric": sym, "asymmetric": asym,
        "connex": conn, "semiattractive": semi, "dual_semiattractive": dsemi,
        "well_related": wr, "well_founded_strict": wf,
    }


def classify(R: RelatedSet) -> frozenset[str]:
    """Every catalog tag whose checker holds on ``R``."""
    flags = _atomic_flags(R)
    for name, parts in COMPOSITES.items():
        flags[name] = all(flags[p] for p in parts)
    return frozenset(p for p in PROPERTY_NAMES if flags[p])


# Hypotheses on the left jointly entail the tag on the right.  Edges marked by
# sublocale declarations plus the arrows of the combination diagram.
_EDGES: list[tuple[tuple[str, ...], str]] = [
    (("well_related",), "connex"),
    (("connex",), "reflexive"),
    (("well_related",), "well_founded_strict"),
    (("antisymmetric", "well_related"), "well_ordered"),
    (("well_ordered",), "well_related"),
    (("well_ordered",), "antisymmetric"),
    (("antisymmetric", "well_related"), "partial_order"),
    (("well_ordered",), "partial_order"),
    (("reflexive", "antisymmetric"), "pseudo_order"),
    (("reflexive", "transitive"), "quasi_order"),
    (("quasi_order", "antisymmetric"), "partial_order"),
    (("partial_order",), "pseudo_order"),
    (("partial_order",), "quasi_order"),
    (("pseudo_order", "near_order"), "partial_order"),
    (("transitive", "antisymmetric"), "near_order"),
    (("near_order",), "transitive"),
    (("near_order",), "antisymmetric"),
    (("irreflexive", "antisymmetric"), "asymmetric"),
    (("asymmetric",), "irreflexive"),
    (("asymmetric",), "antisymmetric"),
    (("irreflexive", "transitive"), "strict_order"),
    (("strict_order",), "asymmetric"),
    (("strict_order",), "near_order"),
    (("transitive", "asymmetric"), "strict_order"),
    (("transitive",), "attractive"),
    (("antisymmetric",), "attractive"),
    (("attractive",), "semiattractive"),
    (("symmetric", "transitive"), "partial_equivalence"),
    (("reflexive", "symmetric"), "tolerance"),
    (("quasi_order", "symmetric"), "equivalence"),
    (("partial_equivalence", "reflexive"), "equivalence"),
    (("tolerance", "transitive"), "equivalence"),
    (("equivalence",), "tolerance"),
    (("equivalence",), "partial_equivalence"),
    (("equivalence",), "quasi_order"),
    (("strict_order",), "well_founded_strict"),
]


def entailment_edges() -> list[tuple[frozenset[str], str]]:
    return [(frozenset(h), c) for h, c in _EDGES]


# -- map conditions ----------------------------------------------------------

def _monotone(R, f):
    rows, t = R.rows, f.target
    for x, rx in enumerate(rows):
        rfx = rows[t[x]]
        y = rx
        while y:
            e = (y & -y).bit_length() - 1
            if not rfx >> t[e] & 1:
                return Witness(False, (x, e), clause="x ⊑ y ⟹ f x ⊑ f y")
            y &= y - 1
    return OK


def _inflationary(R, f):
    for x, t in enumerate(f.target):
        if not R.rows[x] >> t & 1:
            return Witness(False, (x,), clause="x ⊑ f x")
    return OK


def _inflationary_variant(R, f):
    rows, t = R.rows, f.target
    for x, rx in enumerate(rows):
        for y in members(rx):
            if not rx >> t[y] & 1:
                return Witness(False, (x, y), clause="x ⊑ y ⟹ x ⊑ f y")
    return OK


def _pointwise_infl_or_mono(R, f):
    rows, cols, t = R.rows, R.cols, f.target
    for x in range(R.n):
        if rows[x] >> t[x] & 1:
            continue
        for y in members(cols[x]):
            if not rows[t[y]] >> t[x] & 1:
                return Witness(False, (x, y), clause="x ⊑ f x ∨ (∀y. y ⊑ x ⟶ f y ⊑ f x)")
    return OK


def _continuity(R, f, subsets, clause):
    table = R.sup_table
    t = f.target
    for X in subsets:
        sups = table[X]
        if not sups:
            continue
        img_sups = table[image(f, X)]
        for s in members(sups):
            if not img_sups >> t[s] & 1:
                return Witness(False, (s,), subset=X, clause=clause)
    return OK


def _omega_continuous(R, f):
    from .classes import subsets_in_class
    return _continuity(R, f, subsets_in_class(R, "omega"), "f s is a supremum of f`X for ω-chain ranges X")


def _scott_continuous(R, f):
    from .classes import subsets_in_class
    return _continuity(R, f, (X for X in subsets_in_class(R, "directed") if X),
                       "f s is a supremum of f`X for nonempty directed X")


_MAP = {
    "monotone": _monotone,
    "inflationary": _inflationary,
    "inflationary_variant": _inflationary_variant,
    "pointwise_infl_or_mono": _pointwise_infl_or_mono,
    "omega_continuous": _omega_continuous,
    "scott_continuous": _scott_continuous,
}


def check_map_condition(R: RelatedSet, f: EndoMap, c: str) -> Witness:
    if c not in _MAP:
        raise ValueError(f"unknown map condition {c!r}")
    return _MAP[c](R, f)
