"""Approximation operators: <p> (some large-enough part), [p] (every
large-enough part), and the approximate implication a ->{p} b.

All three quantify over submultiteams whose size meets a bound: at least
p*|t| for a fractional threshold, at least k rows for an absolute one.  The
comparison is exact rational arithmetic, |Y|*den >= num*|t|, so boundary
cases like 2/3 of 3 are decided correctly.  Submultiteams differing only in
zero-multiplicity carrier rows are canonically equal and enumerated once.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from numbers import Rational
from typing import Iterator

from .errors import InputError
from .formula import (ExistsFrac, ForallFrac, Formula, ImplFrac, Threshold)
from .model import Multiteam, Multistructure
from .semantics import SemanticsConfig, Witness, _Eval, _trace, evaluate

__all__ = ["eval_exists_frac", "eval_forall_frac", "eval_impl_frac",
           "enum_bounded_submultisets"]


def _as_threshold(p, cfg: SemanticsConfig) -> Threshold:
    if isinstance(p, Threshold):
        return p
    if cfg.approx_kind == "absolute":
        if not isinstance(p, int) or isinstance(p, bool):
            raise InputError(f"absolute mode needs an integer bound, got {p!r}")
        return Threshold(p, absolute=True)
    return Threshold(Fraction(p))


def _bound_as_threshold(threshold) -> Threshold:
    if isinstance(threshold, Threshold):
        return threshold
    if isinstance(threshold, int) and not isinstance(threshold, bool):
        return Threshold(threshold, absolute=True)
    if isinstance(threshold, Rational):
        return Threshold(Fraction(threshold))
    raise InputError(f"size bound must be a rational or an integer count, got {threshold!r}")


def enum_bounded_submultisets(t: Multiteam, threshold) -> Iterator[Multiteam]:
    """All submultiteams of t whose size meets the bound, smallest first and
    in row order within equal sizes.  An integer bound is an absolute row
    count; a rational bound is a fraction of |t|."""
    th = _bound_as_threshold(threshold)
    entries = t.row_items()
    keys = [k for k, _ in entries]
    mults = [m for _, m in entries]
    needed = th.min_size(t.size)
    vectors = [v for v in itertools.product(*[range(m + 1) for m in mults])
               if sum(v) >= needed]
    vectors.sort(key=lambda v: (sum(v), v))
    for vec in vectors:
        yield Multiteam._from_table(
            t.variables, {k: c for k, c in zip(keys, vec) if c})


def eval_exists_frac(A: Multistructure, t: Multiteam, p, f: Formula,
                     cfg: SemanticsConfig | None = None, *, use_cache: bool = True) -> bool:
    """Does some submultiteam of size at least p*|t| satisfy f?"""
    cfg = cfg or SemanticsConfig()
    return evaluate(A, t, ExistsFrac(_as_threshold(p, cfg), f), cfg, use_cache=use_cache)


def eval_forall_frac(A: Multistructure, t: Multiteam, p, f: Formula,
                     cfg: SemanticsConfig | None = None, *, use_cache: bool = True) -> bool:
    """Does every submultiteam of size at least p*|t| satisfy f?"""
    cfg = cfg or SemanticsConfig()
    return evaluate(A, t, ForallFrac(_as_threshold(p, cfg), f), cfg, use_cache=use_cache)


def eval_impl_frac(A: Multistructure, t: Multiteam, p, f: Formula, g: Formula,
                   cfg: SemanticsConfig | None = None, *, use_cache: bool = True) -> bool:
    """On every submultiteam of size at least p*|t|, does f imply g?"""
    cfg = cfg or SemanticsConfig()
    return evaluate(A, t, ImplFrac(_as_threshold(p, cfg), f, g), cfg, use_cache=use_cache)


def _dispatch_frac(ev: _Eval, f: Formula, team: Multiteam) -> bool:
    parts = enum_bounded_submultisets(team, f.p)
    if isinstance(f, ExistsFrac):
        return any(ev.run(f.body, y) for y in parts)
    if isinstance(f, ForallFrac):
        return all(ev.run(f.body, y) for y in parts)
    if isinstance(f, ImplFrac):
        return all(ev.run(f.right, y) for y in parts if ev.run(f.left, y))
    raise InputError(f"cannot evaluate a {type(f).__name__} node")


def _trace_frac(ev: _Eval, f: Formula, team: Multiteam) -> Witness:
    """Witness node for an already-true approximation operator."""
    if isinstance(f, ExistsFrac):
        for y in enum_bounded_submultisets(team, f.p):
            if ev.run(f.body, y):
                return Witness(f, team, True,
                               f"submultiteam of size {y.size} out of {team.size}",
                               (_trace(ev, f.body, y),))
    if isinstance(f, ForallFrac):
        return Witness(f, team, True,
                       "every submultiteam meeting the size bound satisfies the body", ())
    return Witness(f, team, True,
                   "the implication holds on every submultiteam meeting the size bound", ())
