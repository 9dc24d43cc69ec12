"""
Evaluating formulas over multiteams in all four modes
=====================================================

"""

# a multiteam is a table of assignments with counts: here four rows over
# x and y, with the all-zero row appearing twice
from multiteam.model import Multiteam, Multistructure

team = Multiteam(("x", "y"), {("0", "0"): 2, ("0", "1"): 1,
                              ("1", "0"): 1, ("1", "1"): 1})
structure = Multistructure(("0", "1"), {"R": (1, {("0",)})})
print("team size:", team.size, "rows:", team.row_items())

# formulas come from a tiny concrete syntax: quantifiers E/A, split |,
# conjunction &, and the dependency atoms written like dep(x ; y)
from multiteam.parser import parse
from multiteam.semantics import SemanticsConfig, evaluate

f = parse("E u. (u = x & dep(u ; y)) | dep(y)")
print("checking:", f)

# the same formula under every combination of team kind and strictness;
# set semantics ignores the counts, strict semantics forbids overlap
for kind in ("set", "multi"):
    for strictness in ("lax", "strict"):
        cfg = SemanticsConfig(team_kind=kind, strictness=strictness)
        verdict = evaluate(structure, team.support() if kind == "set" else team,
                           f, cfg)
        print(f"{kind}/{strictness}: {verdict}")

# a witness trace shows which split and which supplement made it true
from multiteam.semantics import witness

trace = witness(structure, team, f)
print("witness choice at the top:", trace.choice)
print("first part holds on", trace.parts[0].team.row_items())
