"""
Minimizing a submodular function under a cardinality congruence
===============================================================

Walks through the core solver: minimize f(S) over all subsets whose size
hits a prescribed residue class, using bounded enumeration of pinned
minimal minimizers.  Along the way we look at the bookkeeping counters,
what the exactness guarantee depends on, and what happens when the
search depth is set too low.
"""

from ccsm import (
    CongruencyConstraint,
    GroundSet,
    Modular,
    SubmodularOracle,
    enum_solve,
    exhaustive_solve,
    pair_count,
    tight_depth_instance,
)

# ----------------------------------------------------------------------
# A first instance: pick an even-sized subset of weighted items
# ----------------------------------------------------------------------
# f is modular (a plain sum of weights), so the unconstrained minimum
# is just "take every negative item".  The parity constraint makes the
# problem combinatorial: with three negative weights, some negative item
# has to be dropped or a cheap positive one added.

ground = GroundSet(("a", "b", "c", "d", "e", "f"))
weights = {"a": -4, "b": -3, "c": -2, "d": 1, "e": 5, "f": 9}
oracle = SubmodularOracle(ground, Modular(weights))
even = CongruencyConstraint(2, 0)

solution = enum_solve(oracle, constraint=even)
print("minimize  sum of weights  subject to  |S| even")
print(f"  optimum value : {solution.value}")
print(f"  optimum set   : {sorted(solution.best)}")
print(f"  guaranteed    : {solution.guaranteed}")

# The best even set keeps the two cheapest negatives {a, b} = -7; adding
# "c" and "d" (net -1) is the only improvement that preserves parity.
truth = exhaustive_solve(oracle, constraint=even)
assert solution.value == truth.optimum
print(f"  exhaustive check agrees: {truth.optimum}")

# ----------------------------------------------------------------------
# What the solver actually did
# ----------------------------------------------------------------------
# For modulus m the certified depth is m - 1.  The solver walks every
# disjoint pair (A, B) with |A|, |B| <= depth, restricts the lattice to
# sets containing A and avoiding B, and collects the minimal minimizer
# of each restriction.  Pairs whose restriction is empty are skipped;
# the two counters always add up to the total number of pairs.

n, depth = ground.n, solution.depth
print(f"\n  depth {depth}: {solution.sfm_calls} minimizations"
      f" + {solution.skipped_empty} empty restrictions"
      f" = pair_count({n}, {depth}) = {pair_count(n, depth)}")
assert solution.sfm_calls + solution.skipped_empty == pair_count(n, depth)
print(f"  distinct candidate sets collected: {solution.candidates}")

# ----------------------------------------------------------------------
# The depth requirement is tight
# ----------------------------------------------------------------------
# There are instances where every depth below m - 1 misses the optimum.
# The family below hides the best residue-0 set behind m pinned
# elements: one heavy negative element plus m - 1 neutral ones, so the
# solver must pin all of them at once to see it.

for m in (3, 4, 5):
    inst = tight_depth_instance(m)
    full = enum_solve(inst.oracle, inst.ring, inst.constraint)
    shallow = enum_solve(inst.oracle, inst.ring, inst.constraint, depth=m - 2)
    found = "misses it" if shallow.value != full.value else "still finds it"
    print(f"\nm = {m}: optimum {full.value} at depth {m - 1};"
          f" depth {m - 2} reports {shallow.value} ({found})")
    assert full.guaranteed and not shallow.guaranteed
    assert full.value == -1

# A shallow run never lies about its status: `guaranteed` turns off, and
# whatever value it reports is still the true f-value of a feasible set,
# just not necessarily the best one.
