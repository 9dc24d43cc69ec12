"""
CNF satisfiability as multiteam model checking
==============================================

"""

# a CNF formula is clauses of (variable, parity) literals, parity 1 negated
from multiteam.reductions import (CnfFormula, encode_3sat, encode_maxsat,
                                  maxsat_oracle, parse_dimacs, sat_oracle)

phi = CnfFormula(((("x1", 0), ("x2", 1), ("x3", 0)),
                  (("x1", 1), ("x2", 0), ("x3", 1))))
print("cnf:", phi)

# the encoder turns it into one team row per literal occurrence plus a
# fixed formula: pick a third of the rows, one per clause, consistently
instance = encode_3sat(phi)
print("team rows:", len(instance.team.row_items()))
print("formula:", instance.formula)

# model checking the instance answers satisfiability exactly
print("check:", instance.check(), "| brute force:", sat_oracle(phi))

# the threshold variant answers "are at least k clauses satisfiable"
pairs = CnfFormula(((("x1", 0), ("x2", 1)), (("x1", 1), ("x2", 0)),
                    (("x1", 1), ("x2", 1))))
best = maxsat_oracle(pairs)
print("best assignment satisfies", best, "of", len(pairs.clauses))
from fractions import Fraction
for k in range(4):
    inst = encode_maxsat(pairs, Fraction(k, 3))
    print(f"  at least {k}: {inst.check()}")

# DIMACS text works too
text = "c demo\np cnf 2 2\n1 -2 0\n-1 2 0\n"
print("parsed from dimacs:", parse_dimacs(text))
