"""Conjecture refutation and bulk theorem checking over small finite models.

Instances are visited in a canonical order: size ascending, then relation code,
then map index (lexicographic, position 0 most significant), then bottom
index.  Past the budget the visit order is replaced by seeded sampling where
the k-th sample depends only on ``(seed, key, n, k)``.  Work is cut into
index ranges whose results are merged in range order, so the outcome does not
depend on how many workers ran.
"""

from __future__ import annotations

import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from . import fix
from .bounds import bounds_of, extreme_bounds, extremes_of
from .classes import check_complete, normalize_class, subsets_in_class
from .core import EndoMap, RelatedSet, check_cap, derived_relation, members, related_set_from_code
from .errors import RelfixError
from .modelgen import map_from_index, order_by_cost, rand_below
from .props import MAP_CONDITIONS, PROPERTY_NAMES, check_map_condition, check_property, entailment_edges

# -- atom catalog ------------------------------------------------------------

CONCLUSION_ATOMS = ("exists_strict_fp", "exists_qfp", "exists_least_fp", "exists_least_qfp",
                    "kleene_sups_are_least_qfps")
_ATOM_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\(([A-Za-z_][A-Za-z0-9_]*)\))?$")


def _split(atom: str) -> tuple[str, str | None]:
    m = _ATOM_RE.match(atom)
    if not m:
        raise ValueError(f"malformed atom {atom!r}")
    return m.group(1), m.group(2)


def atom_kind(atom: str) -> str:
    """``relation``, ``map``, ``bottom`` or ``conclusion``; ValueError if unknown."""
    head, arg = _split(atom)
    if arg is None:
        if head in PROPERTY_NAMES:
            return "relation"
        if head in MAP_CONDITIONS:
            return "map"
        if head == "has_bottom":
            return "bottom"
        if head in CONCLUSION_ATOMS:
            return "conclusion"
    elif head in ("complete", "qfp_set_complete"):
        normalize_class(arg)
        return "relation" if head == "complete" else "conclusion"
    raise ValueError(f"unknown atom {atom!r}")


def canonical_atom(atom: str) -> str:
    head, arg = _split(atom)
    return f"{head}({normalize_class(arg)})" if arg is not None else head


def is_atom(atom: str) -> bool:
    try:
        atom_kind(atom)
        return True
    except ValueError:
        return False


@dataclass(frozen=True)
class Conjecture:
    name: str
    assume: tuple[str, ...]
    conclude: str

    def __post_init__(self):
        object.__setattr__(self, "assume", tuple(canonical_atom(a) for a in self.assume))
        object.__setattr__(self, "conclude", canonical_atom(self.conclude))
        for a in self.assume:
            if atom_kind(a) == "conclusion":
                raise ValueError(f"{a!r} can only be concluded")
        if atom_kind(self.conclude) not in ("conclusion", "relation", "map", "bottom"):
            raise ValueError(f"cannot conclude {self.conclude!r}")
        if self.conclude == "kleene_sups_are_least_qfps" and "has_bottom" not in self.assume:
            raise ValueError("kleene_sups_are_least_qfps needs has_bottom among the assumptions")

    @property
    def atoms(self) -> tuple[str, ...]:
        return self.assume + (self.conclude,)

    @property
    def needs_map(self) -> bool:
        return any(atom_kind(a) in ("map", "conclusion") for a in self.atoms)

    @property
    def needs_bottom(self) -> bool:
        return "has_bottom" in self.assume or self.conclude == "kleene_sups_are_least_qfps"


@dataclass(frozen=True)
class Instance:
    R: RelatedSet
    f: EndoMap | None = None
    bot: int | None = None

    def to_json(self) -> dict:
        R = self.R
        return {
            "size": R.n,
            "elements": list(R.names),
            "le": [[R.names[i], R.names[j]] for i, j in R.edges()],
            "map": None if self.f is None else {R.names[i]: R.names[t] for i, t in enumerate(self.f.target)},
            "bottom": None if self.bot is None else R.names[self.bot],
        }

    def to_text(self) -> str:
        from .textio import serialize_map, serialize_relset

        out = serialize_relset("A", self.R)
        if self.f is not None:
            out += "\n" + serialize_map("f", "A", self.R, self.f)
        if self.bot is not None:
            out += f"# bottom: {self.R.names[self.bot]}\n"
        return out


@dataclass
class Report:
    name: str
    verdict: str  # refuted | no-counterexample | verified | violated
    examined: int = 0
    instance: Instance | None = None
    counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    millis: int | None = None

    @property
    def ok(self) -> bool:
        return self.verdict in ("verified", "no-counterexample")

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "name": self.name,
            "verdict": self.verdict,
            "examined": self.examined,
            "counts": {str(k): v for k, v in self.counts.items()},
            "instance": None if self.instance is None else self.instance.to_json(),
            "violations": self.violations,
        }
        if timing and self.millis is not None:
            out["millis"] = self.millis
        return out


# -- atom evaluation (brute force) -------------------------------------------

def _least_within(R: RelatedSet, S: int) -> int:
    """Members of S below every member of S."""
    return extremes_of(R, S, "least")


def evaluate_atom(atom: str, inst: Instance) -> bool:
    """Truth of one atom on an instance, by direct evaluation."""
    R, f, bot = inst.R, inst.f, inst.bot
    head, arg = _split(atom)
    if head in PROPERTY_NAMES:
        return bool(check_property(R, head))
    if head == "complete":
        return bool(check_complete(R, arg))
    if head == "has_bottom":
        return bot is not None and R.rows[bot] == R.full
    if head in MAP_CONDITIONS:
        return bool(check_map_condition(R, f, head))
    qfps = fix.qfp_set(R, f) if f is not None else 0
    if head == "exists_strict_fp":
        return f.fixed != 0
    if head == "exists_qfp":
        return qfps != 0
    if head == "exists_least_fp":
        return _least_within(R, f.fixed) != 0
    if head == "exists_least_qfp":
        return _least_within(R, qfps) != 0
    if head == "qfp_set_complete":
        cls = normalize_class(arg)
        rows = R.rows
        for X in subsets_in_class(R, cls):
            if X & ~qfps:
                continue
            bnds = bounds_of(R, X) & qfps
            if not any(bnds & ~rows[q] == 0 for q in members(bnds)):
                return False
        return True
    if head == "kleene_sups_are_least_qfps":
        Fn = fix.kleene_iterates(R, f, bot)
        return extreme_bounds(R, Fn) == _least_within(R, qfps)
    raise ValueError(f"unknown atom {atom!r}")


def _relation_filter(atoms: Iterable[str]) -> list[str]:
    rel = [a for a in atoms if atom_kind(a) == "relation"]
    props = order_by_cost(a for a in rel if not a.startswith("complete("))
    return props + sorted(a for a in rel if a.startswith("complete("))


def _map_filter(atoms: Iterable[str]) -> list[str]:
    return sorted((a for a in atoms if atom_kind(a) == "map"), key=lambda c: ("continuous" in c, c))


def validate_refutation(c: Conjecture, inst: Instance) -> bool:
    """All assumptions hold and the conclusion fails, rechecked from scratch."""
    fresh = Instance(RelatedSet(inst.R.names, inst.R.rows), inst.f, inst.bot)
    return all(evaluate_atom(a, fresh) for a in c.assume) and not evaluate_atom(c.conclude, fresh)


# -- chunked execution -------------------------------------------------------

def _run(worker: Callable, tasks: list[tuple], jobs: int) -> Iterator:
    """Results of ``worker(*task)`` in task order; stops when the consumer stops."""
    if jobs <= 1 or len(tasks) <= 1:
        for t in tasks:
            yield worker(*t)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        window = 2 * jobs
        futs = [pool.submit(worker, *t) for t in tasks[:window]]
        nxt = window
        try:
            for i in range(len(tasks)):
                res = futs[i].result()
                if nxt < len(tasks):
                    futs.append(pool.submit(worker, *tasks[nxt]))
                    nxt += 1
                yield res
        finally:
            for fu in futs:
                fu.cancel()


def _chunks(total: int, size: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def _raw_space(n: int, needs_map: bool) -> int:
    return (1 << (n * n)) * (n ** n if needs_map else 1)


def _rel_ok(R: RelatedSet, rel_atoms: list[str]) -> bool:
    for a in rel_atoms:
        head, arg = _split(a)
        if not (check_complete(R, arg) if head == "complete" else check_property(R, head)):
            return False
    return True


def _map_ok(R: RelatedSet, f: EndoMap, map_atoms: list[str]) -> bool:
    return all(check_map_condition(R, f, c) for c in map_atoms)


def _bottom_choices(R: RelatedSet, wants: bool) -> list[int | None]:
    return members(fix.bottoms(R)) if wants else [None]


# -- counterexample search ---------------------------------------------------

def _search_exhaustive_chunk(c: Conjecture, n: int, lo: int, hi: int) -> tuple[int, tuple | None]:
    rel_atoms = _relation_filter(c.assume)
    map_atoms = _map_filter(c.assume)
    nmaps = n ** n if c.needs_map else 1
    examined = 0
    for code in range(lo, hi):
        R = related_set_from_code(n, code)
        if not _rel_ok(R, rel_atoms):
            continue
        bots = _bottom_choices(R, c.needs_bottom)
        if not bots:
            continue
        for k in range(nmaps):
            f = map_from_index(n, k) if c.needs_map else None
            if f is not None and not _map_ok(R, f, map_atoms):
                continue
            for b in bots:
                examined += 1
                if not evaluate_atom(c.conclude, Instance(R, f, b)):
                    return examined, (code, k, b)
    return examined, None


def _sample_instance(key: int, n: int, k: int, seed: int, needs_map: bool,
                     needs_bottom: bool, attempt: int) -> Instance:
    code = rand_below(1 << (n * n), seed, key, n, k, attempt, 0)
    R = related_set_from_code(n, code)
    f = map_from_index(n, rand_below(n ** n, seed, key, n, k, attempt, 1)) if needs_map else None
    bot = None
    if needs_bottom:
        bots = members(fix.bottoms(R))
        bot = bots[rand_below(len(bots), seed, key, n, k, attempt, 2)] if bots else None
    return Instance(R, f, bot)


def _search_sample_chunk(c: Conjecture, n: int, lo: int, hi: int, seed: int) -> tuple[int, tuple | None]:
    """Raw draws lo..hi-1; returns (accepted, (accepted index, draw) of first refutation)."""
    rel_atoms = _relation_filter(c.assume)
    map_atoms = _map_filter(c.assume)
    accepted = 0
    for k in range(lo, hi):
        inst = _sample_instance(_name_key(c.name), n, k, seed, c.needs_map, c.needs_bottom, 0)
        if c.needs_bottom and inst.bot is None:
            continue
        if not _rel_ok(inst.R, rel_atoms):
            continue
        if inst.f is not None and not _map_ok(inst.R, inst.f, map_atoms):
            continue
        accepted += 1
        if not evaluate_atom(c.conclude, inst):
            return accepted, (k, inst.R.code, inst.f and inst.f.target, inst.bot)
    return accepted, None


def _name_key(name: str) -> int:
    h = 0
    for b in name.encode():
        h = (h * 131 + b) & ((1 << 64) - 1)
    return h


SAMPLE_DRAW_FACTOR = 64


def find_counterexample(c: Conjecture, max_n: int, budget: int | None = None, seed: int = 0,
                        jobs: int = 1, min_n: int = 1) -> Report:
    """First refuting instance in canonical order over sizes min_n..max_n.

    A size is enumerated exhaustively when its raw instance count fits the
    budget (always, when no budget is given); otherwise ``budget`` accepted
    samples are drawn, out of at most ``SAMPLE_DRAW_FACTOR * budget`` raw draws.
    """
    check_cap(max_n)
    t0 = time.perf_counter()
    report = Report(c.name, "no-counterexample")
    for n in range(min_n, max_n + 1):
        raw = _raw_space(n, c.needs_map)
        if budget is None or raw <= budget:
            report.counts[n] = {"mode": "exhaustive", "examined": 0}
            nrel = 1 << (n * n)
            tasks = [(c, n, lo, hi) for lo, hi in _chunks(nrel, max(1, nrel // 64))]
            for examined, hit in _run(_search_exhaustive_chunk, tasks, jobs):
                report.counts[n]["examined"] += examined
                if hit:
                    code, k, b = hit
                    R = related_set_from_code(n, code)
                    report.instance = Instance(R, map_from_index(n, k) if c.needs_map else None, b)
                    break
        else:
            report.counts[n] = {"mode": "sampled", "examined": 0}
            draws = SAMPLE_DRAW_FACTOR * budget
            tasks = [(c, n, lo, hi, seed) for lo, hi in _chunks(draws, max(1, draws // 256))]
            left = budget
            for accepted, hit in _run(_search_sample_chunk, tasks, jobs):
                if hit and accepted <= left:
                    report.counts[n]["examined"] += accepted
                    _, code, target, b = hit
                    f = EndoMap(target) if target is not None else None
                    report.instance = Instance(related_set_from_code(n, code), f, b)
                    break
                take = min(accepted, left)
                report.counts[n]["examined"] += take
                left -= take
                if left == 0:
                    break
        report.examined += report.counts[n]["examined"]
        if report.instance is not None:
            if not validate_refutation(c, report.instance):
                raise RuntimeError("search produced an instance that does not refute the conjecture")
            report.verdict = "refuted"
            break
    report.millis = int((time.perf_counter() - t0) * 1000)
    return report


# -- theorem suite -----------------------------------------------------------
# Each conclusion returns None when it holds and a message otherwise.  Engines
# are looked up through the ``fix`` module at call time so tests can swap in a
# corrupted engine.

def _is_qfp(R: RelatedSet, f: EndoMap, p: int) -> bool:
    return R.sim(p, f.target[p])


def _least_fixed_points(R: RelatedSet, f: EndoMap) -> int:
    return _least_within(R, f.fixed)


def _c_ex_qfp(R, f, bot):
    p = fix.sm_qfp(R, f, check=False)
    return None if _is_qfp(R, f, p) else f"sm_qfp returned {R.names[p]}, not a quasi-fixed point"


def _c_ex_fp(R, f, bot):
    p = fix.sm_qfp(R, f, check=False)
    return None if f.target[p] == p else f"sm_qfp returned {R.names[p]}, not a fixed point"


def _c_derivation_fp(R, f, bot):
    p = fix.derivation_fp(R, f, check=False)
    return None if f.target[p] == p else f"derivation_fp returned {R.names[p]}, not a fixed point"


def _c_least_fp(R, f, bot):
    p = fix.least_fp_mono(R, f, check=False)
    if not _least_fixed_points(R, f) >> p & 1 or f.target[p] != p:
        return f"least_fp_mono returned {R.names[p]}, not a least fixed point"
    D = fix.build_derivable(R, f, check=False)
    w = fix.check_derivation(R, f, D)
    if not w:
        return f"derivable set is not a derivation: {w.describe(R)}"
    rows, t = R.rows, f.target
    for i, x in enumerate(D.seq):
        for y in D.seq[i + 1:]:
            if not rows[t[x]] >> y & 1:
                return f"derivation element {R.names[x]} below {R.names[y]} but f x not below it"
            if not rows[x] >> t[y] & 1:
                return f"derivation pair {R.names[x]}, {R.names[y]} breaks x ⊑ f y"
        if not rows[t[x]] >> t[x] & 1:
            return f"f {R.names[x]} is not reflexive"
    return None


def _c_least_qfp(R, f, bot):
    c = fix.least_qfp_attractive(R, f, check=False)
    if not _is_qfp(R, f, c):
        return f"least_qfp_attractive returned {R.names[c]}, not a quasi-fixed point"
    if fix.qfp_set(R, f) & ~R.rows[c]:
        return f"{R.names[c]} is not below every quasi-fixed point"
    return None


def _qfp_complete(cls: str):
    def conclusion(R, f, bot):
        rows = R.rows
        qfps = fix.qfp_set(R, f)
        # P ranges over no strict fixed points and all of them; when every
        # fixed point is already a qfp the two runs coincide.
        for P in sorted({0, f.fixed & ~qfps}):
            w = fix.verify_qfp_complete(R, f, cls, P, check=False)
            if not w:
                return f"P={{{', '.join(R.label_set(P))}}}: {w.describe(R)}"
            S = qfps | P
            for X in subsets_in_class(R, cls):
                if X & ~S:
                    continue
                q = fix.qfp_sup_in_class(R, f, cls, X, P, check=False)
                bnds = bounds_of(R, X) & S
                if not (bnds >> q & 1 and bnds & ~rows[q] == 0):
                    return f"qfp_sup_in_class gave {R.names[q]} for {{{', '.join(R.label_set(X))}}}"
        return None
    conclusion.__name__ = f"_c_qfp_complete_{cls}"
    return conclusion


def _c_complete_dual(R, f, bot):
    w = check_complete(derived_relation(R, "dual"), "all")
    return None if w else f"dual is not complete: {w.describe(R)}"


def _c_entailments(R, f, bot):
    holds = {p: bool(check_property(R, p)) for p in PROPERTY_NAMES}
    for hyps, concl in entailment_edges():
        if all(holds[h] for h in hyps) and not holds[concl]:
            return f"{' + '.join(sorted(hyps))} holds but {concl} fails"
    return None


def _c_scott_omega(R, f, bot):
    w = check_map_condition(R, f, "omega_continuous")
    return None if w else f"scott-continuous map is not omega-continuous: {w.describe(R)}"


def _c_omega_mono_refl(R, f, bot):
    rows, t = R.rows, f.target
    for x in range(R.n):
        for y in members(rows[x]):
            if rows[x] >> x & 1 and rows[y] >> y & 1 and not rows[t[x]] >> t[y] & 1:
                return f"{R.names[x]} ⊑ {R.names[y]} (both reflexive) but f values unrelated"
    return None


def _c_ex_kleene_qfp(R, f, bot):
    Fn = fix.kleene_iterates(R, f, bot)
    return None if extreme_bounds(R, Fn) else "iterates have no supremum"


def _c_kleene_qfp(R, f, bot):
    Fn = fix.kleene_iterates(R, f, bot)
    for s in members(extreme_bounds(R, Fn)):
        if not _is_qfp(R, f, s):
            return f"supremum {R.names[s]} of the iterates is not a quasi-fixed point"
    if check_complete(R, "omega"):
        sups = fix.kleene_qfps(R, f, bot, check=False)
        if sups != extreme_bounds(R, Fn):
            return "kleene_qfps disagrees with brute-force suprema"
    return None


def _c_kleene_least(R, f, bot):
    w = fix.kleene_least_equivalence(R, f, bot, check=False)
    if not w:
        return w.describe(R)
    Fn = fix.kleene_iterates(R, f, bot)
    if extreme_bounds(R, Fn) != _least_within(R, fix.qfp_set(R, f)):
        return "suprema of iterates differ from least quasi-fixed points"
    return None


@dataclass(frozen=True)
class Theorem:
    name: str
    assume: tuple[str, ...]
    check: Callable
    needs_map: bool = True

    @property
    def needs_bottom(self) -> bool:
        return "has_bottom" in self.assume


THEOREMS: tuple[Theorem, ...] = (
    Theorem("complete_infl_mono_imp_ex_qfp", ("complete(all)", "pointwise_infl_or_mono"), _c_ex_qfp),
    Theorem("complete_infl_mono_imp_ex_fp", ("antisymmetric", "complete(all)", "pointwise_infl_or_mono"),
            _c_ex_fp),
    Theorem("well_complete_infl_imp_ex_fixed_point",
            ("pseudo_order", "complete(well)", "inflationary_variant"), _c_derivation_fp),
    Theorem("mono_imp_ex_least_fp", ("antisymmetric", "complete(well)", "monotone"), _c_least_fp),
    Theorem("attract_mono_imp_least_qfp", ("attractive", "complete(well)", "monotone"), _c_least_qfp),
    *(Theorem(f"attract_mono_imp_fp_qfp_complete[{cls}]", ("attractive", f"complete({cls})", "monotone"),
              _qfp_complete(cls)) for cls in ("all", "connex", "directed", "well")),
    Theorem("complete_dual", ("complete(all)",), _c_complete_dual, needs_map=False),
    Theorem("sublocale_entailments", (), _c_entailments, needs_map=False),
    Theorem("scott_continous_imp_omega_continous", ("scott_continuous",), _c_scott_omega),
    Theorem("omega_continous_imp_mono_refl", ("omega_continuous",), _c_omega_mono_refl),
    Theorem("ex_kleene_qfp", ("complete(omega)", "has_bottom", "omega_continuous"), _c_ex_kleene_qfp),
    Theorem("kleene_qfp", ("has_bottom", "omega_continuous"), _c_kleene_qfp),
    Theorem("kleene_qfp_is_dual_extreme", ("attractive", "complete(omega)", "has_bottom", "omega_continuous"),
            _c_kleene_least),
)

MAX_VIOLATIONS = 5
SAMPLE_ATTEMPTS = 4096


def _theorem(name: str) -> Theorem:
    for t in THEOREMS:
        if t.name == name:
            return t
    raise KeyError(name)


def _run_check(th: Theorem, inst: Instance) -> str | None:
    try:
        return th.check(inst.R, inst.f, inst.bot)
    except RelfixError as exc:
        return f"{type(exc).__name__}: {exc}"


def _violation(inst: Instance, msg: str) -> dict:
    return {"message": msg, "instance": inst.to_json()}


def _verify_exhaustive_chunk(name: str, n: int, lo: int, hi: int) -> tuple[int, list]:
    th = _theorem(name)
    rel_atoms = _relation_filter(th.assume)
    map_atoms = _map_filter(th.assume)
    nmaps = n ** n if th.needs_map else 1
    examined, bad = 0, []
    for code in range(lo, hi):
        R = related_set_from_code(n, code)
        if not _rel_ok(R, rel_atoms):
            continue
        bots = _bottom_choices(R, th.needs_bottom)
        for k in range(nmaps):
            f = map_from_index(n, k) if th.needs_map else None
            if f is not None and not _map_ok(R, f, map_atoms):
                continue
            for b in bots:
                inst = Instance(R, f, b)
                examined += 1
                msg = _run_check(th, inst)
                if msg and len(bad) < MAX_VIOLATIONS:
                    bad.append(_violation(inst, msg))
    return examined, bad


@lru_cache(maxsize=64)
def relation_pool(n: int, rel_atoms: tuple[str, ...], bottom: bool) -> tuple[int, ...]:
    """Codes of size-n relations meeting the relation-level atoms, ascending."""
    out = []
    for code in range(1 << (n * n)):
        R = _fresh(n, code)
        if _rel_ok(R, list(rel_atoms)) and (not bottom or fix.bottoms(R)):
            out.append(code)
    return tuple(out)


def _fresh(n: int, code: int) -> RelatedSet:
    row_mask = (1 << n) - 1
    return RelatedSet(related_set_from_code(n, 0).names, tuple((code >> (i * n)) & row_mask for i in range(n)))


_MEMO: dict = {"key": None}


def _sample_memo(name: str, n: int) -> tuple[dict, dict]:
    """Per-process caches of map-filter results and verdicts for one theorem.

    Sampling is with replacement, so repeated draws reuse earlier verdicts.
    """
    if _MEMO["key"] != (name, n):
        _MEMO.update(key=(name, n), maps={}, verdicts={})
    return _MEMO["maps"], _MEMO["verdicts"]


def _verify_sample_chunk(name: str, n: int, lo: int, hi: int, seed: int) -> tuple[int, list, int]:
    th = _theorem(name)
    rel_atoms = tuple(_relation_filter(th.assume))
    map_atoms = _map_filter(th.assume)
    pool = relation_pool(n, rel_atoms, th.needs_bottom)
    key = _name_key(th.name)
    examined, bad, missed = 0, [], 0
    if not pool:
        return 0, [], 0
    map_memo, verdicts = _sample_memo(name, n)
    nmaps = n ** n
    for k in range(lo, hi):
        for attempt in range(SAMPLE_ATTEMPTS):
            code = pool[rand_below(len(pool), seed, key, n, k, attempt, 0)]
            R = related_set_from_code(n, code)
            mi = rand_below(nmaps, seed, key, n, k, attempt, 1) if th.needs_map else None
            f = map_from_index(n, mi) if th.needs_map else None
            if f is not None:
                ok = map_memo.get((code, mi))
                if ok is None:
                    ok = map_memo[(code, mi)] = _map_ok(R, f, map_atoms)
                if not ok:
                    continue
            bot = None
            if th.needs_bottom:
                bots = members(fix.bottoms(R))
                bot = bots[rand_below(len(bots), seed, key, n, k, attempt, 2)]
            inst = Instance(R, f, bot)
            examined += 1
            ikey = (code, mi, bot)
            if ikey not in verdicts:
                verdicts[ikey] = _run_check(th, inst)
            msg = verdicts[ikey]
            if msg and len(bad) < MAX_VIOLATIONS:
                bad.append(_violation(inst, msg))
            break
        else:
            missed += 1
    return examined, bad, missed


def verify_theorem(th: Theorem, max_n: int, budget: int = 100_000, seed: int = 0, jobs: int = 1,
                   min_n: int = 0) -> Report:
    check_cap(max_n)
    t0 = time.perf_counter()
    report = Report(th.name, "verified")
    for n in range(min_n, max_n + 1):
        if _raw_space(n, th.needs_map) <= budget:
            nrel = 1 << (n * n)
            tasks = [(th.name, n, lo, hi) for lo, hi in _chunks(nrel, max(1, nrel // 64))]
            entry = {"mode": "exhaustive", "examined": 0}
            for examined, bad in _run(_verify_exhaustive_chunk, tasks, jobs):
                entry["examined"] += examined
                report.violations.extend(bad)
        else:
            tasks = [(th.name, n, lo, hi, seed) for lo, hi in _chunks(budget, max(1, budget // 64))]
            entry = {"mode": "sampled", "examined": 0, "unfilled": 0}
            for examined, bad, missed in _run(_verify_sample_chunk, tasks, jobs):
                entry["examined"] += examined
                entry["unfilled"] += missed
                report.violations.extend(bad)
        report.counts[n] = entry
        report.examined += entry["examined"]
    del report.violations[MAX_VIOLATIONS:]
    if report.violations:
        report.verdict = "violated"
    report.millis = int((time.perf_counter() - t0) * 1000)
    return report


def verify_theorems(max_n: int, budget: int = 100_000, seed: int = 0, jobs: int = 1,
                    min_n: int = 0, names: Iterable[str] | None = None) -> list[Report]:
    """One report per theorem; a theorem is violated if any instance fails its conclusion."""
    chosen = THEOREMS if names is None else tuple(_theorem(n) for n in names)
    return [verify_theorem(th, max_n, budget, seed, jobs, min_n) for th in chosen]
