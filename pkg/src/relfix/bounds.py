"""Bounds, extremes and extreme bounds.

Without antisymmetry a set can have several greatest elements or several
suprema, so every function here returns the full set of candidates.  Infima
are suprema in the dual relation.
"""

from __future__ import annotations

from .core import ElemSet, RelatedSet


def bounds_of(R: RelatedSet, X: ElemSet) -> ElemSet:
    """Elements b with x ⊑ b for every x in X (the whole carrier if X is empty)."""
    b = R.full
    rows = R.rows
    while X:
        x = (X & -X).bit_length() - 1
        b &= rows[x]
        X &= X - 1
    return b


def extremes_of(R: RelatedSet, X: ElemSet, side: str = "greatest") -> ElemSet:
    if side == "greatest":
        above = R.cols
    elif side == "least":
        above = R.rows
    else:
        raise ValueError(f"side must be 'greatest' or 'least', not {side!r}")
    out = 0
    m = X
    while m:
        e = (m & -m).bit_length() - 1
        if X & ~above[e] == 0:
            out |= 1 << e
        m &= m - 1
    return out


def extreme_bounds(R: RelatedSet, X: ElemSet) -> ElemSet:
    """All suprema of X: the least elements of its set of bounds."""
    return extremes_of(R, bounds_of(R, X), "least")
