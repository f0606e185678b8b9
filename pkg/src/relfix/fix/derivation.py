"""Fixed points on well-complete antisymmetric related sets via derivations.

A derivation is a well-ordered chain in which every element is either f of
the greatest element below it (a successor step) or a supremum of the
f-closed set below it (a limit step).  The union of all derivations is itself
a derivation; its supremum is a fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bounds import extreme_bounds, extremes_of
from ..core import EndoMap, RelatedSet, image, lowest, popcount
from ..errors import HypothesisViolation, InternalFailure, PreconditionViolation
from ..props import OK, Witness, check_map_condition, check_property, least_extraction
from .common import note, require_complete, require_map, require_property

LIMIT = "limit"
SUCCESSOR = "successor"


@dataclass(frozen=True)
class Derivation:
    seq: tuple[int, ...] = ()
    # (LIMIT, None) or (SUCCESSOR, carrier index of the predecessor)
    kinds: tuple[tuple[str, int | None], ...] = ()

    @property
    def members(self) -> int:
        m = 0
        for x in self.seq:
            m |= 1 << x
        return m

    def describe(self, R: RelatedSet) -> list[str]:
        out = []
        for x, (kind, pred) in zip(self.seq, self.kinds):
            if kind == LIMIT:
                out.append(f"{R.names[x]} (limit)")
            else:
                out.append(f"{R.names[x]} (successor of {R.names[pred]})")
        return out


def check_derivation(R: RelatedSet, f: EndoMap, D: Derivation) -> Witness:
    if len(D.seq) != len(D.kinds):
        return Witness(False, clause="one kind per element")
    if len(set(D.seq)) != len(D.seq):
        return Witness(False, clause="elements are distinct")
    rows, t = R.rows, f.target
    for j, y in enumerate(D.seq):
        for x in D.seq[:j]:
            if not (rows[x] >> y & 1) or rows[y] >> x & 1:
                return Witness(False, (x, y), clause=f"strictly increasing at position {j}")
    X = D.members
    if least_extraction(R, X)[1]:
        return Witness(False, subset=X, clause="well-ordered")
    prefix = 0
    for k, (x, (kind, pred)) in enumerate(zip(D.seq, D.kinds)):
        if kind == SUCCESSOR:
            if pred is None or not (prefix >> pred & 1):
                return Witness(False, (x,), subset=prefix, clause=f"successor predecessor lies below, position {k}")
            if not extremes_of(R, prefix, "greatest") >> pred & 1:
                return Witness(False, (x, pred), subset=prefix, clause=f"predecessor is greatest, position {k}")
            if t[pred] != x:
                return Witness(False, (x, pred), clause=f"successor equals f of predecessor, position {k}")
        elif kind == LIMIT:
            if image(f, prefix) & ~prefix:
                return Witness(False, (x,), subset=prefix, clause=f"limit prefix is f-closed, position {k}")
            if not extreme_bounds(R, prefix) >> x & 1:
                return Witness(False, (x,), subset=prefix, clause=f"limit is a supremum of its prefix, position {k}")
        else:
            return Witness(False, (x,), clause=f"unknown kind {kind!r}")
        prefix |= 1 << x
    return OK


def _check_new(R: RelatedSet, f: EndoMap, X: int, x: int, pos: int) -> None:
    rows, t = R.rows, f.target
    prev = X & ~(1 << x)
    if prev & ~R.cols[x] or prev & rows[x]:
        raise HypothesisViolation("appended element is strictly above the prefix", pos, R.names[x])
    if not rows[t[x]] >> t[x] & 1:
        raise HypothesisViolation("f x ⊑ f x on the derivation", pos, R.names[x])
    # derivation_infl for pairs involving x: a ⊑ b ⟹ a ⊑ f b
    for a in range(R.n):
        if not X >> a & 1:
            continue
        if rows[a] >> x & 1 and not rows[a] >> t[x] & 1:
            raise HypothesisViolation("x ⊑ y ⟹ x ⊑ f y on the derivation", pos, f"{R.names[a]}, {R.names[x]}")
        if rows[x] >> a & 1 and not rows[x] >> t[a] & 1:
            raise HypothesisViolation("x ⊑ y ⟹ x ⊑ f y on the derivation", pos, f"{R.names[x]}, {R.names[a]}")


def build_derivable(R: RelatedSet, f: EndoMap, check: bool = True,
                    trace: list[str] | None = None) -> Derivation:
    """The maximal derivation, preferring limit steps over successor steps."""
    if check:
        require_property(R, "antisymmetric")
        require_complete(R, "well")
    seq: list[int] = []
    kinds: list[tuple[str, int | None]] = []
    P = 0
    while True:
        pos = len(seq)
        if image(f, P) & ~P == 0:
            sups = extreme_bounds(R, P)
            if not sups:
                raise HypothesisViolation("f-closed prefix has a supremum", pos)
            if popcount(sups) > 1:
                raise HypothesisViolation("prefix has a unique supremum (antisymmetry)", pos,
                                          ", ".join(R.label_set(sups)))
            s = lowest(sups)
            if P >> s & 1:
                note(trace, f"prefix is f-closed with supremum {R.names[s]} already derived; stop")
                break
            seq.append(s)
            kinds.append((LIMIT, None))
            note(trace, f"limit: {R.names[s]}")
            x = s
        else:
            y = seq[-1]
            if not extremes_of(R, P, "greatest") >> y & 1:
                raise HypothesisViolation("prefix has a greatest element", pos)
            x = f.target[y]
            if P >> x & 1:
                raise HypothesisViolation("f of an earlier element stays in the derivation", pos)
            seq.append(x)
            kinds.append((SUCCESSOR, y))
            note(trace, f"successor: {R.names[x]} = f {R.names[y]}")
        P |= 1 << x
        _check_new(R, f, P, x, pos)
    return Derivation(tuple(seq), tuple(kinds))


def derivation_fp(R: RelatedSet, f: EndoMap, check: bool = True,
                  trace: list[str] | None = None) -> int:
    """A strict fixed point: the supremum of the derivable elements."""
    if check:
        require_property(R, "antisymmetric")
        require_complete(R, "well")
        mono = check_map_condition(R, f, "monotone")
        infl = check_property(R, "pseudo_order") and check_map_condition(R, f, "inflationary_variant")
        if not (mono or infl):
            raise PreconditionViolation("monotone, or pseudo-order with x ⊑ y ⟹ x ⊑ f y", mono.describe(R))
    D = build_derivable(R, f, check=False, trace=trace)
    Dm = D.members
    sups = extreme_bounds(R, Dm)
    if not sups:
        raise InternalFailure("derivable set has no supremum")
    p = lowest(sups)
    if f.target[p] != p or not Dm >> p & 1:
        raise InternalFailure(f"supremum {R.names[p]} of the derivable set is not a fixed point")
    note(trace, f"supremum of derivable set: {R.names[p]}, f {R.names[p]} = {R.names[p]}")
    return p


def least_fp_mono(R: RelatedSet, f: EndoMap, check: bool = True,
                  trace: list[str] | None = None) -> int:
    if check:
        require_property(R, "antisymmetric")
        require_complete(R, "well")
        require_map(R, f, "monotone")
    p = derivation_fp(R, f, check=False, trace=trace)
    if f.fixed & ~R.rows[p]:
        raise InternalFailure(f"fixed point {R.names[p]} is not below every fixed point")
    return p
