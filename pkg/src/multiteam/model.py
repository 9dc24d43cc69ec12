"""Core data model: multisets, assignments, multiteams, and multistructures.

Values are plain strings ordered lexicographically, so every iteration order
in the package is deterministic and reproducible.  Multiplicities are Python
ints (arbitrary precision) and probabilities are exact `fractions.Fraction`s;
no floating point appears anywhere.  All types are immutable after
construction and hashable, so they can be shared between evaluators and used
as cache keys.  Zero multiplicities may be stored for notational convenience;
equality and subset checks always canonicalize first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError

__all__ = ["Multiset", "Assignment", "Multiteam", "Multistructure"]


def _check_value(v) -> str:
    if not isinstance(v, str):
        raise InputError(f"values must be strings, got {v!r}")
    return v


def _check_mult(v, m) -> int:
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise InputError(f"multiplicity of {v!r} must be a nonnegative integer, got {m!r}")
    return m


class Multiset:
    """A finite multiset of string values with nonnegative integer counts."""

    __slots__ = ("_entries", "_size", "_hash")

    def __init__(self, entries: Mapping[str, int] | Iterable[str] = ()):
        counts: dict[str, int] = {}
        if isinstance(entries, Mapping):
            for v, m in entries.items():
                _check_value(v)
                _check_mult(v, m)
                if m > 0:
                    counts[v] = counts.get(v, 0) + m
        else:
            for v in entries:
                _check_value(v)
                counts[v] = counts.get(v, 0) + 1
        object.__setattr__(self, "_entries", counts)
        object.__setattr__(self, "_size", sum(counts.values()))
        object.__setattr__(self, "_hash", hash(frozenset(counts.items())))

    def __setattr__(self, name, value):
        raise AttributeError("Multiset is immutable")

    def mult(self, v: str) -> int:
        return self._entries.get(v, 0)

    @property
    def size(self) -> int:
        """Total number of occurrences."""
        return self._size

    @property
    def support(self) -> tuple[str, ...]:
        """The distinct values, sorted."""
        return tuple(sorted(self._entries))

    def items(self) -> list[tuple[str, int]]:
        """(value, multiplicity) pairs in sorted value order."""
        return sorted(self._entries.items())

    def canonical_set(self) -> frozenset[tuple[str, int]]:
        """The set of (value, occurrence-index) pairs unfolding the multiset."""
        return frozenset((v, i) for v, m in self._entries.items() for i in range(1, m + 1))

    def disjoint_union(self, other: "Multiset") -> "Multiset":
        """Additive union: each value's count is the sum of the two counts."""
        counts = dict(self._entries)
        for v, m in other._entries.items():
            counts[v] = counts.get(v, 0) + m
        return Multiset(counts)

    def issubmset(self, other: "Multiset") -> bool:
        """Componentwise <=, equivalent to inclusion of canonical set representatives."""
        return all(m <= other.mult(v) for v, m in self._entries.items())

    def __contains__(self, v: str) -> bool:
        return self.mult(v) >= 1

    def __iter__(self) -> Iterator[str]:
        return iter(self.support)

    def __bool__(self) -> bool:
        return self._size > 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{v}:{m}" for v, m in self.items())
        return f"Multiset({{{body}}})"


class Assignment:
    """An immutable binding of variables to values."""

    __slots__ = ("_bindings", "_hash")

    def __init__(self, bindings: Mapping[str, str] | Iterable[tuple[str, str]] = ()):
        pairs = dict(bindings)
        for var, v in pairs.items():
            if not isinstance(var, str):
                raise InputError(f"variable names must be strings, got {var!r}")
            _check_value(v)
        object.__setattr__(self, "_bindings", pairs)
        object.__setattr__(self, "_hash", hash(frozenset(pairs.items())))

    def __setattr__(self, name, value):
        raise AttributeError("Assignment is immutable")

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(self._bindings))

    def __getitem__(self, var: str) -> str:
        try:
            return self._bindings[var]
        except KeyError:
            raise InputError(f"assignment does not bind variable {var!r}") from None

    def project(self, variables: Sequence[str]) -> tuple[str, ...]:
        """The value tuple s(x1),...,s(xn)."""
        return tuple(self[x] for x in variables)

    def extended(self, var: str, value: str) -> "Assignment":
        """The modified assignment mapping var to value and all else unchanged."""
        pairs = dict(self._bindings)
        pairs[_check_value_var(var)] = _check_value(value)
        return Assignment(pairs)

    def restricted(self, variables: Iterable[str]) -> "Assignment":
        keep = set(variables)
        return Assignment({x: v for x, v in self._bindings.items() if x in keep})

    def as_dict(self) -> dict[str, str]:
        return dict(self._bindings)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return self._bindings == other._bindings

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{x}={v}" for x, v in sorted(self._bindings.items()))
        return f"Assignment({body})"


def _check_value_var(var) -> str:
    if not isinstance(var, str):
        raise InputError(f"variable names must be strings, got {var!r}")
    return var


class Multiteam:
    """A multiset of assignments over a fixed variable domain.

    Rows are stored positionally against the sorted variable tuple.  The
    carrier may contain zero-multiplicity rows; equality, hashing and subset
    checks ignore them, while `carrier_items` and `weak_flattening` keep them.
    """

    __slots__ = ("_vars", "_index", "_rows", "_size", "_hash", "_sorted_items")

    def __init__(self, variables: Iterable[str],
                 rows: Mapping | Iterable = ()):
        vars_in = [_check_value_var(x) for x in variables]
        if len(set(vars_in)) != len(vars_in):
            raise InputError(f"duplicate variable names in {vars_in!r}")
        svars = tuple(sorted(vars_in))
        # positions of the sorted variables inside the caller's ordering,
        # used to reindex tuple rows given in that ordering
        perm = [vars_in.index(x) for x in svars]
        table: dict[tuple[str, ...], int] = {}

        def add(row, mult):
            key = self._coerce_row(row, vars_in, svars, perm)
            _check_mult(row, mult)
            table[key] = table.get(key, 0) + mult

        if isinstance(rows, Mapping):
            for row, mult in rows.items():
                add(row, mult)
        else:
            for row in rows:
                add(row, 1)
        object.__setattr__(self, "_vars", svars)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(svars)})
        object.__setattr__(self, "_rows", table)
        object.__setattr__(self, "_size", sum(table.values()))
        canon = frozenset((k, m) for k, m in table.items() if m > 0)
        object.__setattr__(self, "_hash", hash((svars, canon)))
        object.__setattr__(self, "_sorted_items", None)

    @staticmethod
    def _coerce_row(row, vars_in, svars, perm) -> tuple[str, ...]:
        if isinstance(row, Assignment):
            row = row.as_dict()
        if isinstance(row, Mapping):
            if set(row) != set(svars):
                raise InputError(f"row {row!r} does not bind exactly the variables {svars!r}")
            return tuple(_check_value(row[x]) for x in svars)
        values = tuple(_check_value(v) for v in row)
        if len(values) != len(vars_in):
            raise InputError(f"row {values!r} has {len(values)} values for {len(vars_in)} variables")
        return tuple(values[i] for i in perm)

    @classmethod
    def _from_table(cls, svars: tuple[str, ...], table: dict[tuple[str, ...], int]) -> "Multiteam":
        """Internal fast path: table must already be keyed by svars order."""
        mt = cls.__new__(cls)
        object.__setattr__(mt, "_vars", svars)
        object.__setattr__(mt, "_index", {x: i for i, x in enumerate(svars)})
        object.__setattr__(mt, "_rows", table)
        object.__setattr__(mt, "_size", sum(table.values()))
        canon = frozenset((k, m) for k, m in table.items() if m > 0)
        object.__setattr__(mt, "_hash", hash((svars, canon)))
        object.__setattr__(mt, "_sorted_items", None)
        return mt

    @classmethod
    def empty(cls, variables: Iterable[str] = ()) -> "Multiteam":
        return cls(variables, ())

    def __setattr__(self, name, value):
        raise AttributeError("Multiteam is immutable")

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def size(self) -> int:
        """Sum of all multiplicities."""
        return self._size

    def position(self, var: str) -> int:
        try:
            return self._index[var]
        except KeyError:
            raise InputError(f"unknown variable {var!r}; team variables are {self._vars!r}") from None

    def positions(self, variables: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.position(x) for x in variables)

    def row_items(self) -> list[tuple[tuple[str, ...], int]]:
        """Rows with multiplicity >= 1 as (value-tuple, mult), sorted."""
        cached = self._sorted_items
        if cached is None:
            cached = sorted((k, m) for k, m in self._rows.items() if m > 0)
            object.__setattr__(self, "_sorted_items", cached)
        return cached

    def carrier_items(self) -> list[tuple[tuple[str, ...], int]]:
        """All stored rows including zero-multiplicity ones, sorted."""
        return sorted(self._rows.items())

    def rows(self) -> Iterator[tuple[Assignment, int]]:
        """(assignment, multiplicity) pairs with multiplicity >= 1, in sorted order."""
        for key, m in self.row_items():
            yield self.assignment(key), m

    def assignment(self, key: tuple[str, ...]) -> Assignment:
        return Assignment(dict(zip(self._vars, key)))

    def mult(self, row) -> int:
        key = self._coerce_row(row, list(self._vars), self._vars, list(range(len(self._vars))))
        return self._rows.get(key, 0)

    def support(self) -> "Multiteam":
        """Rows with multiplicity >= 1, each set to multiplicity exactly 1."""
        return Multiteam._from_table(self._vars, {k: 1 for k, m in self._rows.items() if m > 0})

    def support_keys(self) -> list[tuple[str, ...]]:
        return [k for k, _ in self.row_items()]

    def weak_flattening(self) -> "Multiteam":
        """Like support, but retains zero-multiplicity rows in the carrier."""
        return Multiteam._from_table(
            self._vars, {k: (1 if m > 0 else 0) for k, m in self._rows.items()})

    def select(self, variables: Sequence[str], values: Sequence[str]) -> "Multiteam":
        """Same carrier; multiplicity kept on rows where s(variables) = values, zero elsewhere."""
        if len(variables) != len(values):
            raise InputError("select needs as many values as variables")
        pos = self.positions(variables)
        vals = tuple(values)
        table = {k: (m if tuple(k[i] for i in pos) == vals else 0)
                 for k, m in self._rows.items()}
        return Multiteam._from_table(self._vars, table)

    def count(self, variables: Sequence[str], values: Sequence[str]) -> int:
        """Size of the selection, without building the team."""
        if len(variables) != len(values):
            raise InputError("count needs as many values as variables")
        pos = self.positions(variables)
        vals = tuple(values)
        return sum(m for k, m in self._rows.items()
                   if m > 0 and tuple(k[i] for i in pos) == vals)

    def restrict(self, variables: Iterable[str]) -> "Multiteam":
        """Project rows onto a subset of the variables, summing multiplicities."""
        keep = sorted(set(variables))
        pos = self.positions(keep)
        table: dict[tuple[str, ...], int] = {}
        for k, m in self._rows.items():
            key = tuple(k[i] for i in pos)
            table[key] = table.get(key, 0) + m
        return Multiteam._from_table(tuple(keep), table)

    def prob(self, variables: Sequence[str], values: Sequence[str]) -> Fraction:
        """Exact probability that the variables take the given values."""
        if self._size == 0:
            raise InputError("probability is undefined on an empty multiteam")
        return Fraction(self.count(variables, values), self._size)

    def disjoint_union(self, other: "Multiteam") -> "Multiteam":
        """Additive union of two multiteams over the same variables."""
        if self._vars != other._vars:
            raise InputError(
                f"disjoint union needs equal variable domains, got {self._vars!r} and {other._vars!r}")
        table = dict(self._rows)
        for k, m in other._rows.items():
            table[k] = table.get(k, 0) + m
        return Multiteam._from_table(self._vars, table)

    def issubmteam(self, other: "Multiteam") -> bool:
        """Componentwise multiplicity <=; requires equal variable domains."""
        if self._vars != other._vars:
            raise InputError(
                f"submultiset test needs equal variable domains, got {self._vars!r} and {other._vars!r}")
        return all(m <= other._rows.get(k, 0) for k, m in self._rows.items() if m > 0)

    def canonical(self) -> "Multiteam":
        """Drop zero-multiplicity rows from the carrier."""
        return Multiteam._from_table(self._vars, {k: m for k, m in self._rows.items() if m > 0})

    def is_flat(self) -> bool:
        """True when every stored multiplicity is 0 or 1."""
        return all(m <= 1 for m in self._rows.values())

    def values_used(self) -> set[str]:
        return {v for k, m in self._rows.items() if m > 0 for v in k}

    def __bool__(self) -> bool:
        return self._size > 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiteam):
            return NotImplemented
        if self._vars != other._vars:
            return False
        mine = {k: m for k, m in self._rows.items() if m > 0}
        theirs = {k: m for k, m in other._rows.items() if m > 0}
        return mine == theirs

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        head = ",".join(self._vars)
        body = "; ".join(f"({','.join(k)}):{m}" for k, m in self.carrier_items())
        return f"Multiteam[{head}]{{{body}}}"


class Multistructure:
    """A multiset domain together with named relations over its support."""

    __slots__ = ("_domain", "_relations", "_hash")

    def __init__(self, domain: Multiset | Mapping[str, int] | Iterable[str],
                 relations: Mapping[str, tuple[int, Iterable[Sequence[str]]]] = ()):
        if not isinstance(domain, Multiset):
            domain = Multiset(domain)
        if domain.size == 0:
            raise InputError("structure domain must be nonempty")
        support = set(domain.support)
        rels: dict[str, tuple[int, frozenset[tuple[str, ...]]]] = {}
        for name, (arity, tuples) in dict(relations).items():
            if not isinstance(name, str):
                raise InputError(f"relation names must be strings, got {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise InputError(f"arity of {name} must be a nonnegative integer, got {arity!r}")
            fixed = set()
            for tup in tuples:
                tup = tuple(_check_value(v) for v in tup)
                if len(tup) != arity:
                    raise InputError(f"tuple {tup!r} does not match arity {arity} of relation {name}")
                for v in tup:
                    if v not in support:
                        raise InputError(
                            f"tuple {tup!r} of relation {name} uses {v!r}, which is outside the domain support")
                fixed.add(tup)
            rels[name] = (arity, frozenset(fixed))
        object.__setattr__(self, "_domain", domain)
        object.__setattr__(self, "_relations", rels)
        object.__setattr__(self, "_hash", hash((domain, frozenset(
            (name, arity, tuples) for name, (arity, tuples) in rels.items()))))

    def __setattr__(self, name, value):
        raise AttributeError("Multistructure is immutable")

    @property
    def domain(self) -> Multiset:
        return self._domain

    @property
    def relations(self) -> dict[str, tuple[int, frozenset[tuple[str, ...]]]]:
        return dict(self._relations)

    def arity(self, name: str) -> int:
        return self._rel(name)[0]

    def tuples(self, name: str) -> frozenset[tuple[str, ...]]:
        return self._rel(name)[1]

    def has(self, name: str, values: Sequence[str]) -> bool:
        arity, tuples = self._rel(name)
        values = tuple(values)
        if len(values) != arity:
            raise InputError(f"relation {name} has arity {arity}, got {len(values)} values")
        return values in tuples

    def _rel(self, name: str):
        try:
            return self._relations[name]
        except KeyError:
            raise InputError(f"unknown relation {name!r}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multistructure):
            return NotImplemented
        return self._domain == other._domain and self._relations == other._relations

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        rels = ", ".join(f"{name}/{arity}" for name, (arity, _) in sorted(self._relations.items()))
        return f"Multistructure(domain={self._domain!r}, relations=[{rels}])"
