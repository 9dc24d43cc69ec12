"""
Support atoms versus counting atoms
===================================

"""

# the support atoms (dep, inc, excl, ind) only see which rows occur;
# the counting atoms (pinc, pind) see how often
from multiteam.atoms import (eval_ci, eval_dep, eval_excl, eval_inc,
                             eval_pci, eval_pinc)
from multiteam.model import Multiteam

skewed = Multiteam(("x", "y"), {("0", "0"): 2, ("0", "1"): 1,
                                ("1", "0"): 1, ("1", "1"): 1})

# x and y are combinable here (every x-value meets every y-value) ...
print("ind(; x ; y):", eval_ci(skewed, (), ("x",), ("y",)))

# ... but their counts are not an exact product: Pr(x=0,y=0) = 2/5
# while Pr(x=0) * Pr(y=0) = 3/5 * 3/5
print("pind(; x ; y):", eval_pci(skewed, (), ("x",), ("y",)))
print("x=0,y=0 probability:", skewed.prob(("x", "y"), ("0", "0")))

# forgetting the counts restores the product: the weak flattening passes
print("pind on flattening:", eval_pci(skewed.weak_flattening(), (),
                                      ("x",), ("y",)))

# count inclusion pinc(x ; y) strengthens inc: each value must occur as a
# y-value at least as often as it occurs as an x-value; 0 occurs twice
# under x but only once under y, so inc holds and pinc does not
swap = Multiteam(("x", "y"), {("0", "1"): 2, ("1", "0"): 1})
print("inc(x ; y):", eval_inc(swap, ("x",), ("y",)))
print("pinc(x ; y):", eval_pinc(swap, ("x",), ("y",)))

# functional dependence and exclusion round out the family
print("dep(x ; y):", eval_dep(swap, ("x",), ("y",)))
print("excl(x ; y):", eval_excl(swap, ("x",), ("y",)))

# self-independence of x given nothing is exactly constancy of x
constant = Multiteam(("x", "y"), {("0", "0"): 3, ("0", "1"): 1})
print("x constant:", eval_pci(constant, (), ("x",), ("x",)),
      "| y constant:", eval_pci(constant, (), ("y",), ("y",)))
