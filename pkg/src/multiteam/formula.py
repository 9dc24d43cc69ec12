"""Formula AST for first-order logic with dependency atoms, probabilistic
atoms, and approximation operators.

Nodes are frozen dataclasses; `str()` of a node is the canonical text form,
which the parser maps back to an equal AST.  Negation appears only on
relational and equality atoms, so there is no negation node: the negated
forms `x != y` and `~R(...)` are atoms of their own.

Atom group order follows the text syntax: `ind(xs ; ys ; zs)` conditions on
the first group, i.e. it asserts that ys and zs are independent once xs is
fixed, and likewise for `pind`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .errors import InputError

__all__ = [
    "Threshold", "Formula", "Eq", "Neq", "Rel", "NegRel", "And", "Or",
    "Exists", "Forall", "Dep", "Inc", "Excl", "CI", "PInc", "PCI",
    "ExistsFrac", "ForallFrac", "ImplFrac", "TRUE",
    "free_vars", "is_first_order", "subformulas",
]


@dataclass(frozen=True)
class Threshold:
    """A size bound for the approximation operators.

    Ratio thresholds hold a Fraction p in [0,1] and bound a part Y of a whole
    X by |Y| >= p*|X| (compared exactly, |Y|*den >= num*|X|).  Absolute
    thresholds hold a natural number k and bound |Y| >= k.
    """

    value: Union[Fraction, int]
    absolute: bool = False

    def __post_init__(self):
        if self.absolute:
            if not isinstance(self.value, int) or isinstance(self.value, bool) or self.value < 0:
                raise InputError(f"absolute threshold must be a nonnegative integer, got {self.value!r}")
        else:
            value = Fraction(self.value)
            if not 0 <= value <= 1:
                raise InputError(f"ratio threshold must lie in [0,1], got {value}")
            object.__setattr__(self, "value", value)

    def admits(self, part_size: int, whole_size: int) -> bool:
        """Does a part of this size meet the bound relative to the whole?"""
        if self.absolute:
            return part_size >= self.value
        return part_size * self.value.denominator >= self.value.numerator * whole_size

    def min_size(self, whole_size: int) -> int:
        """Smallest part size meeting the bound (may exceed whole_size)."""
        if self.absolute:
            return self.value
        num, den = self.value.numerator, self.value.denominator
        return -(-num * whole_size // den)  # ceiling division

    def __str__(self) -> str:
        if self.absolute:
            return f"#{self.value}"
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"


class Formula:
    """Base class of all AST nodes."""

    __slots__ = ()


def _check_vars(node: str, variables: Sequence[str]) -> tuple[str, ...]:
    out = tuple(variables)
    for x in out:
        if not isinstance(x, str) or not x:
            raise InputError(f"{node} expects variable names, got {x!r}")
    return out


@dataclass(frozen=True)
class Eq(Formula):
    x: str
    y: str

    def __str__(self) -> str:
        return f"{self.x} = {self.y}"


@dataclass(frozen=True)
class Neq(Formula):
    x: str
    y: str

    def __str__(self) -> str:
        return f"{self.x} != {self.y}"


@dataclass(frozen=True)
class Rel(Formula):
    name: str
    args: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", _check_vars("relation atom", self.args))

    def __str__(self) -> str:
        return f"{self.name}({','.join(self.args)})"


@dataclass(frozen=True)
class NegRel(Formula):
    name: str
    args: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", _check_vars("negated relation atom", self.args))

    def __str__(self) -> str:
        return f"~{self.name}({','.join(self.args)})"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula

    # parenthesized because the quantifier scope extends maximally to the right
    def __str__(self) -> str:
        return f"(E {self.var}. {self.body})"


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula

    def __str__(self) -> str:
        return f"(A {self.var}. {self.body})"


def _group_text(*groups: Sequence[str]) -> str:
    return " ; ".join(",".join(g) for g in groups).strip()


@dataclass(frozen=True)
class Dep(Formula):
    """Functional dependence: xs determines ys.  dep(; ys) asserts constancy."""

    xs: tuple[str, ...]
    ys: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", _check_vars("dep", self.xs))
        object.__setattr__(self, "ys", _check_vars("dep", self.ys))

    def __str__(self) -> str:
        return f"dep({_group_text(self.xs, self.ys)})"


@dataclass(frozen=True)
class Inc(Formula):
    """Inclusion: every value of xs occurs as a value of ys."""

    xs: tuple[str, ...]
    ys: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", _check_vars("inc", self.xs))
        object.__setattr__(self, "ys", _check_vars("inc", self.ys))
        if len(self.xs) != len(self.ys):
            raise InputError(f"inc needs equally long sides, got {len(self.xs)} and {len(self.ys)}")

    def __str__(self) -> str:
        return f"inc({_group_text(self.xs, self.ys)})"


@dataclass(frozen=True)
class Excl(Formula):
    """Exclusion: xs and ys share no value tuple."""

    xs: tuple[str, ...]
    ys: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", _check_vars("excl", self.xs))
        object.__setattr__(self, "ys", _check_vars("excl", self.ys))
        if len(self.xs) != len(self.ys):
            raise InputError(f"excl needs equally long sides, got {len(self.xs)} and {len(self.ys)}")

    def __str__(self) -> str:
        return f"excl({_group_text(self.xs, self.ys)})"


@dataclass(frozen=True)
class CI(Formula):
    """Conditional independence of ys and zs given xs (combinability of rows)."""

    xs: tuple[str, ...]
    ys: tuple[str, ...]
    zs: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", _check_vars("ind", self.xs))
        object.__setattr__(self, "ys", _check_vars("ind", self.ys))
        object.__setattr__(self, "zs", _check_vars("ind", self.zs))

    def __str__(self) -> str:
        return f"ind({_group_text(self.xs, self.ys, self.zs)})"


@dataclass(frozen=True)
class PInc(Formula):
    """Probabilistic inclusion: each xs value tuple occurs at most as often as ys takes it."""

    xs: tuple[str, ...]
    ys: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", _check_vars("pinc", self.xs))
        object.__setattr__(self, "ys", _check_vars("pinc", self.ys))
        if len(self.xs) != len(self.ys):
            raise InputError(f"pinc needs equally long sides, got {len(self.xs)} and {len(self.ys)}")

    def __str__(self) -> str:
        return f"pinc({_group_text(self.xs, self.ys)})"


@dataclass(frozen=True)
class PCI(Formula):
    """Probabilistic conditional independence given xs: the exact count product equation."""

    xs: tuple[str, ...]
    ys: tuple[str, ...]
    zs: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", _check_vars("pind", self.xs))
        object.__setattr__(self, "ys", _check_vars("pind", self.ys))
        object.__setattr__(self, "zs", _check_vars("pind", self.zs))

    def __str__(self) -> str:
        return f"pind({_group_text(self.xs, self.ys, self.zs)})"


@dataclass(frozen=True)
class ExistsFrac(Formula):
    """Some submultiteam of at least the threshold size satisfies the body."""

    p: Threshold
    body: Formula

    def __str__(self) -> str:
        return f"<{self.p}> {self.body}"


@dataclass(frozen=True)
class ForallFrac(Formula):
    """Every submultiteam of at least the threshold size satisfies the body."""

    p: Threshold
    body: Formula

    def __str__(self) -> str:
        return f"[{self.p}] {self.body}"


@dataclass(frozen=True)
class ImplFrac(Formula):
    """Every submultiteam of at least the threshold size satisfying the
    antecedent also satisfies the consequent."""

    p: Threshold
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} ->{{{self.p}}} {self.right})"


#: `dep(;)` requires nothing of any row, so it is satisfied by every
#: multiteam in every mode: a convenient syntactic truth constant.
TRUE = Dep((), ())


def free_vars(f: Formula) -> frozenset[str]:
    """The free variables of a formula; quantifiers bind their variable."""
    if isinstance(f, (Eq, Neq)):
        return frozenset((f.x, f.y))
    if isinstance(f, (Rel, NegRel)):
        return frozenset(f.args)
    if isinstance(f, (And, Or)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    if isinstance(f, (Dep, Inc, Excl, PInc)):
        return frozenset(f.xs) | frozenset(f.ys)
    if isinstance(f, (CI, PCI)):
        return frozenset(f.xs) | frozenset(f.ys) | frozenset(f.zs)
    if isinstance(f, (ExistsFrac, ForallFrac)):
        return free_vars(f.body)
    if isinstance(f, ImplFrac):
        return free_vars(f.left) | free_vars(f.right)
    raise InputError(f"not a formula node: {f!r}")


def is_first_order(f: Formula) -> bool:
    """True when the formula uses only literals, connectives and quantifiers."""
    if isinstance(f, (Eq, Neq, Rel, NegRel)):
        return True
    if isinstance(f, (And, Or)):
        return is_first_order(f.left) and is_first_order(f.right)
    if isinstance(f, (Exists, Forall)):
        return is_first_order(f.body)
    return False


def subformulas(f: Formula) -> Iterator[Formula]:
    """The formula and all its subformulas, outermost first."""
    yield f
    if isinstance(f, (And, Or)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (Exists, Forall, ExistsFrac, ForallFrac)):
        yield from subformulas(f.body)
    elif isinstance(f, ImplFrac):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
