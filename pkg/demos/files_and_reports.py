"""
Text formats for teams and structures
=====================================

"""

# multiteams serialize as CSV with a trailing #count column
from multiteam.io import (dump_multiteam, dump_structure, load_multiteam,
                          load_structure)
from multiteam.model import Multiteam, Multistructure

team = Multiteam(("x", "y"), {("0", "0"): 2, ("0", "1"): 1})
text = dump_multiteam(team)
print(text)
print("round trip equal:", load_multiteam(text) == team)

# a missing #count column means every row counts once
print(load_multiteam("x,y\n0,0\n0,1\n").row_items())

# structures are a domain line (with optional *multiplicity) plus relations
structure = Multistructure({"a": 2, "b": 1}, {"R": (1, {("a",)})})
text = dump_structure(structure)
print(text)
print("round trip equal:", load_structure(text) == structure)

# formulas print back into their own concrete syntax
from multiteam.parser import parse

f = parse("A u. pind(u ; x ; y) -> {1/2} <#3> inc(x ; y)")
print("parsed and printed:", f)
print("round trip equal:", parse(str(f)) == f)
