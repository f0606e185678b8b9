"""Quasi-fixed points on fully complete related sets.

The family of f-closed subsets that contain every supremum (taken in the
whole related set) of each of their subsets has a least member C.  Any
supremum of C is a quasi-fixed point of f provided f is, at every point,
either inflationary or monotone from below.  No order axioms are needed.
"""

from __future__ import annotations

from ..core import ElemSet, EndoMap, RelatedSet, image, lowest, members, submasks
from ..errors import InternalFailure
from .common import note, require_complete, require_map


def sm_closed(R: RelatedSet, f: EndoMap, B: ElemSet) -> bool:
    if image(f, B) & ~B:
        return False
    table = R.sup_table
    return all(table[X] & ~B == 0 for X in submasks(B))


def sm_core_set(R: RelatedSet, f: EndoMap, trace: list[str] | None = None) -> ElemSet:
    """Least closed set, by iterating B ↦ B ∪ f`B ∪ sups(subsets of B) from ∅.

    The inner step enumerates every subset of the current B, so the cost is
    exponential in |B|.
    """
    table = R.sup_table
    B = 0
    while True:
        nxt = B | image(f, B)
        for X in submasks(B):
            nxt |= table[X]
        if nxt == B:
            break
        note(trace, f"core grows to {{{', '.join(R.label_set(nxt))}}}")
        B = nxt
    return B


def sm_qfp(R: RelatedSet, f: EndoMap, check: bool = True, trace: list[str] | None = None) -> int:
    if check:
        require_complete(R, "all")
        require_map(R, f, "pointwise_infl_or_mono")
    C = sm_core_set(R, f, trace)
    sups = R.sup_table[C]
    if not sups:
        raise InternalFailure("core set has no supremum")
    sims = R.sim_rows
    for c in members(sups):
        if not sims[c] >> f.target[c] & 1:
            raise InternalFailure(f"supremum {R.names[c]} of the core set is not a quasi-fixed point")
    c = lowest(sups)
    note(trace, f"suprema of core: {{{', '.join(R.label_set(sups))}}}; chose {R.names[c]}")
    note(trace, f"f {R.names[c]} = {R.names[f.target[c]]} ∼ {R.names[c]}")
    return c
