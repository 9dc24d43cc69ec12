"""Satisfaction checking over teams and multiteams.

Four modes are supported, chosen by `SemanticsConfig`: teams may be plain
sets (every multiplicity 1) or genuine multiteams, and splitting/supplementing
may be lax or strict.  In lax mode a disjunction splits a multiteam into two
submultiteams that together cover it (per row k, l <= m and k + l >= m) and
an existential gives every copy of a row a nonempty submultiset of the domain;
in strict mode the split is an exact partition (k + l = m) and every copy
picks a single domain element.  Literals and atoms only ever look at rows
with multiplicity at least one.

The evaluator is an exhaustive exact search with early exit, enumerating in a
fixed deterministic order (rows sorted, values sorted, sizes ascending).  An
optional cache keyed by (subformula, multiteam) is on by default and is
semantics-transparent; pass use_cache=False for the plain recursion.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from . import atoms
from .errors import InputError
from .formula import (CI, And, Dep, Eq, Excl, Exists, ExistsFrac, Forall,
                      ForallFrac, Formula, ImplFrac, Inc, Neq, NegRel, Or,
                      PCI, PInc, Rel, Threshold, free_vars, subformulas)
from .model import Assignment, Multiset, Multiteam, Multistructure

__all__ = ["SemanticsConfig", "Instance", "evaluate", "evaluate_classical",
           "enum_or_splits", "enum_supplements", "extend_universal",
           "Witness", "witness"]

TEAM_KINDS = ("set", "multi")
STRICTNESS = ("lax", "strict")
APPROX_KINDS = ("ratio", "absolute")


@dataclass(frozen=True)
class SemanticsConfig:
    """Selects one of the four semantics and the size-bound flavor."""

    team_kind: str = "multi"
    strictness: str = "lax"
    approx_kind: str = "ratio"

    def __post_init__(self):
        if self.team_kind not in TEAM_KINDS:
            raise InputError(f"team_kind must be one of {TEAM_KINDS}, got {self.team_kind!r}")
        if self.strictness not in STRICTNESS:
            raise InputError(f"strictness must be one of {STRICTNESS}, got {self.strictness!r}")
        if self.approx_kind not in APPROX_KINDS:
            raise InputError(f"approx_kind must be one of {APPROX_KINDS}, got {self.approx_kind!r}")


@dataclass(frozen=True)
class Instance:
    """A structure, a multiteam, and a formula: one unit of checking."""

    structure: Multistructure
    team: Multiteam
    formula: Formula
    cfg: SemanticsConfig = SemanticsConfig()

    def check(self, cfg: SemanticsConfig | None = None, *, use_cache: bool = True) -> bool:
        return evaluate(self.structure, self.team, self.formula,
                        cfg or self.cfg, use_cache=use_cache)


def _validate(structure: Multistructure, team: Multiteam, f: Formula,
              cfg: SemanticsConfig) -> None:
    missing = sorted(free_vars(f) - set(team.variables))
    if missing:
        raise InputError(f"free variables {missing} are not bound by the multiteam")
    support = set(structure.domain.support)
    stray = sorted(v for v in team.values_used() if v not in support)
    if stray:
        raise InputError(f"multiteam values {stray} lie outside the structure domain")
    if cfg.team_kind == "set":
        if not team.is_flat():
            raise InputError("set semantics requires team multiplicities at most 1")
        if any(n > 1 for _, n in structure.domain.items()):
            raise InputError("set semantics requires domain multiplicities at most 1")
    for sub in subformulas(f):
        if isinstance(sub, (Rel, NegRel)):
            if structure.arity(sub.name) != len(sub.args):
                raise InputError(
                    f"relation {sub.name} has arity {structure.arity(sub.name)}, "
                    f"used with {len(sub.args)} arguments")
        p = getattr(sub, "p", None)
        if isinstance(p, Threshold):
            if p.absolute and cfg.approx_kind != "absolute":
                raise InputError("absolute bound #k requires approx_kind='absolute'")
            if not p.absolute and cfg.approx_kind != "ratio":
                raise InputError("fractional bound requires approx_kind='ratio'")


def _extender(variables: tuple[str, ...], var: str):
    """New sorted variable tuple and a key builder for extending rows by var."""
    if var in variables:
        p = variables.index(var)
        new_vars = variables

        def place(key, value):
            return key[:p] + (value,) + key[p + 1:]
    else:
        p = bisect_left(variables, var)
        new_vars = variables[:p] + (var,) + variables[p:]

        def place(key, value):
            return key[:p] + (value,) + key[p:]
    return new_vars, place


def enum_or_splits(t: Multiteam, cfg: SemanticsConfig | None = None
                   ) -> Iterator[tuple[Multiteam, Multiteam]]:
    """All (Y, Z) pairs a disjunction may split t into, left-major order."""
    cfg = cfg or SemanticsConfig()
    entries = t.row_items()
    keys = [k for k, _ in entries]
    mults = [m for _, m in entries]
    strict = cfg.strictness == "strict"
    for kvec in itertools.product(*[range(m + 1) for m in mults]):
        y = Multiteam._from_table(t.variables, {k: c for k, c in zip(keys, kvec) if c})
        if strict:
            zchoices = [(m - c,) for m, c in zip(mults, kvec)]
        else:
            zchoices = [tuple(range(m - c, m + 1)) for m, c in zip(mults, kvec)]
        for lvec in itertools.product(*zchoices):
            z = Multiteam._from_table(t.variables, {k: c for k, c in zip(keys, lvec) if c})
            yield y, z


def _supplement_vectors(m: int, dom_mults: list[int], strict: bool) -> list[tuple[int, ...]]:
    """Per-row value count vectors reachable by giving each of the m copies a
    nonempty submultiset (lax) or a single element (strict) of the domain."""
    if strict:
        axes = [range(m + 1)] * len(dom_mults)
        return [v for v in itertools.product(*axes) if sum(v) == m]
    axes = [range(m * n + 1) for n in dom_mults]
    return [v for v in itertools.product(*axes) if sum(v) >= m]


def enum_supplements(t: Multiteam, x: str, dom: Multiset,
                     cfg: SemanticsConfig | None = None) -> Iterator[Multiteam]:
    """All distinct multiteams obtainable by supplementing t at x from dom."""
    cfg = cfg or SemanticsConfig()
    if dom.size == 0:
        raise InputError("cannot supplement from an empty domain")
    values = [v for v, _ in dom.items()]
    dom_mults = [n for _, n in dom.items()]
    new_vars, place = _extender(t.variables, x)
    entries = t.row_items()
    strict = cfg.strictness == "strict"
    spaces = [_supplement_vectors(m, dom_mults, strict) for _, m in entries]
    seen: set[Multiteam] = set()
    for choice in itertools.product(*spaces):
        table: dict[tuple[str, ...], int] = {}
        for (key, _), vec in zip(entries, choice):
            for value, c in zip(values, vec):
                if c:
                    nk = place(key, value)
                    table[nk] = table.get(nk, 0) + c
        supplemented = Multiteam._from_table(new_vars, table)
        if cfg.team_kind == "set":
            supplemented = supplemented.support()
        if supplemented not in seen:
            seen.add(supplemented)
            yield supplemented


def extend_universal(t: Multiteam, x: str, dom: Multiset) -> Multiteam:
    """The multiteam extending every copy of every row by every domain value,
    so row s(a/x) collects multiplicity m(s)*n(a) from each preimage s."""
    if dom.size == 0:
        raise InputError("cannot extend over an empty domain")
    new_vars, place = _extender(t.variables, x)
    table: dict[tuple[str, ...], int] = {}
    for key, m in t.row_items():
        for value, n in dom.items():
            nk = place(key, value)
            table[nk] = table.get(nk, 0) + m * n
    return Multiteam._from_table(new_vars, table)


class _Eval:
    """One evaluation run: fixed structure and config, optional memo cache."""

    __slots__ = ("structure", "cfg", "cache")

    def __init__(self, structure: Multistructure, cfg: SemanticsConfig, use_cache: bool):
        self.structure = structure
        self.cfg = cfg
        self.cache: Optional[dict] = {} if use_cache else None

    def run(self, f: Formula, team: Multiteam) -> bool:
        if self.cache is None:
            return self._dispatch(f, team)
        key = (f, team)
        hit = self.cache.get(key)
        if hit is None:
            hit = self._dispatch(f, team)
            self.cache[key] = hit
        return hit

    def _rows_hold(self, team: Multiteam, pred: Callable[[tuple[str, ...]], bool]) -> bool:
        return all(pred(k) for k, _ in team.row_items())

    def _dispatch(self, f: Formula, team: Multiteam) -> bool:
        if isinstance(f, Eq):
            px, py = team.position(f.x), team.position(f.y)
            return self._rows_hold(team, lambda k: k[px] == k[py])
        if isinstance(f, Neq):
            px, py = team.position(f.x), team.position(f.y)
            return self._rows_hold(team, lambda k: k[px] != k[py])
        if isinstance(f, Rel):
            pos = team.positions(f.args)
            return self._rows_hold(
                team, lambda k: self.structure.has(f.name, tuple(k[i] for i in pos)))
        if isinstance(f, NegRel):
            pos = team.positions(f.args)
            return self._rows_hold(
                team, lambda k: not self.structure.has(f.name, tuple(k[i] for i in pos)))
        if isinstance(f, And):
            return self.run(f.left, team) and self.run(f.right, team)
        if isinstance(f, Or):
            return self._or(f, team)
        if isinstance(f, Exists):
            return any(self.run(f.body, sup) for sup in
                       enum_supplements(team, f.var, self.structure.domain, self.cfg))
        if isinstance(f, Forall):
            extended = extend_universal(team, f.var, self.structure.domain)
            if self.cfg.team_kind == "set":
                extended = extended.support()
            return self.run(f.body, extended)
        if isinstance(f, Dep):
            return atoms.eval_dep(team, f.xs, f.ys)
        if isinstance(f, Inc):
            return atoms.eval_inc(team, f.xs, f.ys)
        if isinstance(f, Excl):
            return atoms.eval_excl(team, f.xs, f.ys)
        if isinstance(f, CI):
            return atoms.eval_ci(team, f.xs, f.ys, f.zs)
        if isinstance(f, PInc):
            return atoms.eval_pinc(team, f.xs, f.ys)
        if isinstance(f, PCI):
            return atoms.eval_pci(team, f.xs, f.ys, f.zs)
        if isinstance(f, (ExistsFrac, ForallFrac, ImplFrac)):
            from . import approx
            return approx._dispatch_frac(self, f, team)
        raise InputError(f"cannot evaluate a {type(f).__name__} node")

    def _or(self, f: Or, team: Multiteam) -> bool:
        entries = team.row_items()
        keys = [k for k, _ in entries]
        mults = [m for _, m in entries]
        strict = self.cfg.strictness == "strict"
        svars = team.variables
        for kvec in itertools.product(*[range(m + 1) for m in mults]):
            y = Multiteam._from_table(svars, {k: c for k, c in zip(keys, kvec) if c})
            if not self.run(f.left, y):
                continue
            if strict:
                zchoices = [(m - c,) for m, c in zip(mults, kvec)]
            else:
                zchoices = [tuple(range(m - c, m + 1)) for m, c in zip(mults, kvec)]
            for lvec in itertools.product(*zchoices):
                z = Multiteam._from_table(svars, {k: c for k, c in zip(keys, lvec) if c})
                if self.run(f.right, z):
                    return True
        return False


def evaluate(structure: Multistructure, team: Multiteam, f: Formula,
             cfg: SemanticsConfig | None = None, *, use_cache: bool = True) -> bool:
    """Exact satisfaction of f by the multiteam over the structure."""
    cfg = cfg or SemanticsConfig()
    _validate(structure, team, f, cfg)
    return _Eval(structure, cfg, use_cache).run(f, team.canonical())


def evaluate_classical(structure: Multistructure, s: Assignment, f: Formula) -> bool:
    """Ordinary single-assignment first-order satisfaction."""
    if isinstance(f, Eq):
        return s[f.x] == s[f.y]
    if isinstance(f, Neq):
        return s[f.x] != s[f.y]
    if isinstance(f, Rel):
        return structure.has(f.name, s.project(f.args))
    if isinstance(f, NegRel):
        return not structure.has(f.name, s.project(f.args))
    if isinstance(f, And):
        return evaluate_classical(structure, s, f.left) and evaluate_classical(structure, s, f.right)
    if isinstance(f, Or):
        return evaluate_classical(structure, s, f.left) or evaluate_classical(structure, s, f.right)
    if isinstance(f, Exists):
        return any(evaluate_classical(structure, s.extended(f.var, a), f.body)
                   for a in structure.domain.support)
    if isinstance(f, Forall):
        return all(evaluate_classical(structure, s.extended(f.var, a), f.body)
                   for a in structure.domain.support)
    raise InputError(f"{type(f).__name__} is not first-order")


@dataclass(frozen=True)
class Witness:
    """One node of an evaluation trace: which subteam made which part true."""

    formula: Formula
    team: Multiteam
    holds: bool
    choice: str
    parts: tuple["Witness", ...]


def witness(structure: Multistructure, team: Multiteam, f: Formula,
            cfg: SemanticsConfig | None = None, *, use_cache: bool = True) -> Witness:
    """Evaluate and, on success, report the first witnessing choices in the
    same deterministic order the evaluator searches them."""
    cfg = cfg or SemanticsConfig()
    _validate(structure, team, f, cfg)
    return _trace(_Eval(structure, cfg, use_cache), f, team.canonical())


def _trace(ev: _Eval, f: Formula, team: Multiteam) -> Witness:
    if not ev.run(f, team):
        return Witness(f, team, False, "", ())
    if isinstance(f, And):
        parts = (_trace(ev, f.left, team), _trace(ev, f.right, team))
        return Witness(f, team, True, "both conjuncts on the same multiteam", parts)
    if isinstance(f, Or):
        for y, z in enum_or_splits(team, ev.cfg):
            if ev.run(f.left, y) and ev.run(f.right, z):
                parts = (_trace(ev, f.left, y), _trace(ev, f.right, z))
                return Witness(f, team, True, "split", parts)
    if isinstance(f, Exists):
        for sup in enum_supplements(team, f.var, ev.structure.domain, ev.cfg):
            if ev.run(f.body, sup):
                return Witness(f, team, True, f"supplement for {f.var}",
                               (_trace(ev, f.body, sup),))
    if isinstance(f, Forall):
        extended = extend_universal(team, f.var, ev.structure.domain)
        if ev.cfg.team_kind == "set":
            extended = extended.support()
        return Witness(f, team, True, f"universal extension of {f.var}",
                       (_trace(ev, f.body, extended),))
    if isinstance(f, (ExistsFrac, ForallFrac, ImplFrac)):
        from . import approx
        return approx._trace_frac(ev, f, team)
    return Witness(f, team, True, "", ())
