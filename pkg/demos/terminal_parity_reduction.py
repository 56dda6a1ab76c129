"""
Terminal congruences by cloning the non-terminals
=================================================

A constraint on |S & T| for a terminal set T can be rewritten as a
plain constraint on |S| over a larger ground set: append m - 1 clones
of every non-terminal and tie each clone to its original with
implications both ways.  Closed sets then carry each non-terminal with
multiplicity m, so modulo m only the terminals count.  This demo runs
the rewrite on a small graph cut, solves both formulations, and maps
the enlarged answer back.
"""

from itertools import chain, combinations

from ccsm import (
    CutUndirected,
    GroundSet,
    RingFamily,
    SubmodularOracle,
    TCutConstraint,
    enum_solve,
    exhaustive_solve,
    tcut_reduce,
)

# ----------------------------------------------------------------------
# A house-shaped graph with two terminals
# ----------------------------------------------------------------------
EDGES = (
    ("a", "b", 2), ("b", "c", 2), ("c", "d", 1),
    ("d", "e", 3), ("e", "a", 1), ("b", "e", 2),
)
ground = GroundSet(("a", "b", "c", "d", "e"))
oracle = SubmodularOracle(ground, CutUndirected(EDGES))
terminals = frozenset({"a", "c"})

# Ask for a cut side containing exactly one of the two terminals — the
# classic "separate a from c as cheaply as possible" question, phrased
# as |S & T| odd.
constraint = TCutConstraint(terminals, 2, 1)

direct = enum_solve(oracle, constraint=constraint)
print(f"direct solve:   value {direct.value} at {sorted(direct.best)}")

# ----------------------------------------------------------------------
# The same question after the rewrite
# ----------------------------------------------------------------------
reduction = tcut_reduce(oracle, RingFamily.full(ground), terminals, 2, 1)
big = reduction.ring.ground
print(f"\nenlarged ground ({big.n} elements): {list(big.elements)}")
print(f"implication arcs tying clones to originals: {len(reduction.ring.implications)}")

reduced = exhaustive_solve(reduction.oracle, reduction.ring, reduction.constraint)
projected = reduction.project(reduced.all_minimal_optima[0])
print(f"reduced solve:  value {reduced.optimum}"
      f" at {sorted(reduced.all_minimal_optima[0])}")
print(f"projected back: {sorted(projected)}")

assert reduced.optimum == direct.value
assert oracle.eval(projected) == direct.value
assert len(projected & terminals) % 2 == 1

# ----------------------------------------------------------------------
# Brute force referee
# ----------------------------------------------------------------------
def cut_weight(side):
    return sum(w for u, v, w in EDGES if (u in side) != (v in side))

subsets = chain.from_iterable(combinations(ground.elements, k) for k in range(6))
best = min(cut_weight(set(s)) for s in subsets if len(set(s) & terminals) % 2 == 1)
print(f"\nbrute force over all 32 subsets: {best}")
assert best == direct.value

# ----------------------------------------------------------------------
# Higher moduli work the same way, just with more clones
# ----------------------------------------------------------------------
three = frozenset({"a", "b", "c"})
for residue in range(3):
    red = tcut_reduce(oracle, RingFamily.full(ground), three, 3, residue)
    res = exhaustive_solve(red.oracle, red.ring, red.constraint)
    subsets = chain.from_iterable(combinations(ground.elements, k) for k in range(6))
    want = min(
        (cut_weight(set(s)) for s in subsets if len(set(s) & three) % 3 == residue),
        default=None,
    )
    assert res.optimum == want
    print(f"|S & {{a,b,c}}| = {residue} (mod 3):"
          f" optimum {res.optimum} on a {red.ring.ground.n}-element enlarged ground")
# Each of the two non-terminals receives two clones here, so the
# enlarged ground has 5 + 2*2 = 9 elements.
