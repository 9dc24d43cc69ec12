"""Text formats for multiteams and multistructures.

Multiteams are CSV: a header of variable names, optionally ending in a
`#count` column holding decimal multiplicities (absent means 1 per row).
Multistructures are line oriented: a `domain:` line of values with optional
`*mult` suffixes, then one `rel NAME/ARITY:` line of parenthesized value
tuples per relation.  Dumps are canonical - rows and values in sorted order,
zero-multiplicity rows dropped - so loading a dump reproduces the input up to
canonicalization and dumps are diffable.
"""

from __future__ import annotations

import csv
import io as _stringio

from .errors import InputError, ParseError
from .model import Multiset, Multiteam, Multistructure

__all__ = ["load_multiteam", "dump_multiteam", "load_structure", "dump_structure"]

COUNT_COLUMN = "#count"


def load_multiteam(text: str) -> Multiteam:
    """Parse the CSV multiteam format."""
    reader = csv.reader(_stringio.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("multiteam CSV needs a header row") from None
    header = [h.strip() for h in header]
    counted = bool(header) and header[-1] == COUNT_COLUMN
    variables = header[:-1] if counted else header
    if len(set(variables)) != len(variables):
        raise ParseError(f"duplicate variable names in header {header!r}")
    if COUNT_COLUMN in variables:
        raise ParseError(f"{COUNT_COLUMN} may only be the final column")
    table: dict[tuple[str, ...], int] = {}
    for lineno, row in enumerate(reader, 2):
        if not row:
            continue
        row = [v.strip() for v in row]
        if len(row) != len(header):
            raise ParseError(
                f"row has {len(row)} fields, header has {len(header)}", line=lineno)
        if counted:
            values, count_text = tuple(row[:-1]), row[-1]
            try:
                count = int(count_text)
            except ValueError:
                raise ParseError(
                    f"count {count_text!r} is not an integer", line=lineno) from None
            if count < 0:
                raise ParseError(f"count {count} is negative", line=lineno)
        else:
            values, count = tuple(row), 1
        table[values] = table.get(values, 0) + count
    return Multiteam(variables, table)


def dump_multiteam(t: Multiteam) -> str:
    """Canonical CSV text for a multiteam, always with a #count column."""
    out = _stringio.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(t.variables) + [COUNT_COLUMN])
    for key, m in t.row_items():
        writer.writerow(list(key) + [str(m)])
    return out.getvalue()


def _parse_domain_tokens(tokens, lineno) -> Multiset:
    counts: dict[str, int] = {}
    for token in tokens:
        value, star, mult_text = token.partition("*")
        if not value:
            raise ParseError(f"malformed domain entry {token!r}", line=lineno)
        if star:
            try:
                mult = int(mult_text)
            except ValueError:
                raise ParseError(
                    f"malformed multiplicity in {token!r}", line=lineno) from None
        else:
            mult = 1
        if mult <= 0:
            raise ParseError(f"domain multiplicity in {token!r} must be positive",
                             line=lineno)
        counts[value] = counts.get(value, 0) + mult
    return Multiset(counts)


def _parse_tuple_token(token, arity, lineno) -> tuple[str, ...]:
    if not (token.startswith("(") and token.endswith(")")):
        raise ParseError(f"relation tuple {token!r} must be parenthesized", line=lineno)
    inner = token[1:-1].strip()
    values = tuple(v.strip() for v in inner.split(",")) if inner else ()
    if any(not v for v in values):
        raise ParseError(f"relation tuple {token!r} has an empty value", line=lineno)
    if len(values) != arity:
        raise ParseError(f"tuple {token!r} does not match arity {arity}", line=lineno)
    return values


def load_structure(text: str) -> Multistructure:
    """Parse the line-oriented multistructure format."""
    domain = None
    relations: dict[str, tuple[int, list[tuple[str, ...]]]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, colon, rest = line.partition(":")
        if not colon:
            raise ParseError(f"expected 'domain:' or 'rel NAME/ARITY:', got {line!r}",
                             line=lineno)
        head = head.strip()
        tokens = rest.split()
        if head == "domain":
            if domain is not None:
                raise ParseError("duplicate domain line", line=lineno)
            domain = _parse_domain_tokens(tokens, lineno)
        elif head.startswith("rel "):
            name, slash, arity_text = head[4:].strip().partition("/")
            name = name.strip()
            if not slash or not name:
                raise ParseError(f"relation head must be 'rel NAME/ARITY', got {head!r}",
                                 line=lineno)
            try:
                arity = int(arity_text)
            except ValueError:
                raise ParseError(f"relation arity {arity_text!r} is not an integer",
                                 line=lineno) from None
            if name in relations:
                raise ParseError(f"duplicate relation {name}", line=lineno)
            relations[name] = (arity, [_parse_tuple_token(tok, arity, lineno)
                                       for tok in tokens])
        else:
            raise ParseError(f"expected 'domain:' or 'rel NAME/ARITY:', got {line!r}",
                             line=lineno)
    if domain is None:
        raise ParseError("structure text has no domain line")
    return Multistructure(domain, relations)


def dump_structure(a: Multistructure) -> str:
    """Canonical text for a multistructure."""
    entries = []
    for value, mult in a.domain.items():
        entries.append(value if mult == 1 else f"{value}*{mult}")
    lines = ["domain: " + " ".join(entries)]
    for name, (arity, tuples) in sorted(a.relations.items()):
        rendered = " ".join("(" + ",".join(tup) + ")" for tup in sorted(tuples))
        lines.append(f"rel {name}/{arity}:" + (" " + rendered if rendered else ""))
    return "\n".join(lines) + "\n"
