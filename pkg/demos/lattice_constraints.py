"""
Restricting the search to a ring family
=======================================

The solver never requires the feasible region to be the full power set:
any family closed under union and intersection works.  Such families are
described by forced-in elements, forced-out elements, and implication
arcs ("if u is chosen then v must be too").  This demo builds a small
dependency structure, inspects closures, and solves a constrained
minimization inside it — including the case where the lattice and the
congruence are jointly unsatisfiable.
"""

from ccsm import (
    CongruencyConstraint,
    GroundSet,
    Modular,
    RingFamily,
    SubmodularOracle,
    enum_solve,
    exhaustive_solve,
)

# ----------------------------------------------------------------------
# A software-package picture: choosing a package drags in its deps
# ----------------------------------------------------------------------
ground = GroundSet(("app", "gui", "net", "core", "docs"))
ring = RingFamily.from_labels(
    ground,
    forced_in=("core",),
    implications=(("app", "gui"), ("app", "net"), ("gui", "core"), ("net", "core")),
)

print("closure of {app}:", sorted(ring.closure({"app"})))
print("closure of {docs}:", sorted(ring.closure({"docs"})))
print("is {app, core} alone a member?", ring.member({"app", "core"}))
print("members of the family:")
for member in sorted(ring.members(), key=lambda s: (len(s), sorted(s))):
    print("   ", sorted(member) or "{}")

# ----------------------------------------------------------------------
# Minimizing inside the family
# ----------------------------------------------------------------------
# Negative weight on "app" pulls it in, but choosing it costs its two
# dependencies.  The odd-size constraint then decides between the lean
# forced baseline {core} and richer closed supersets.

weights = {"app": -5, "gui": 2, "net": 2, "core": 0, "docs": 1}
oracle = SubmodularOracle(ground, Modular(weights))
odd = CongruencyConstraint(2, 1)

solution = enum_solve(oracle, ring, odd)
print(f"\nodd-size minimum inside the family: {solution.value}"
      f" at {sorted(solution.best)}")
truth = exhaustive_solve(oracle, ring, odd)
assert solution.value == truth.optimum

# {app} alone closes to {app, gui, net, core}: size 4, even, value -1.
# The best odd member adds "docs" on top, reaching size 5 at value 0...
# unless staying at the forced singleton {core} (size 1, value 0) ties.
# The solver breaks ties toward smaller sets.
assert solution.best == frozenset({"core"})

# ----------------------------------------------------------------------
# Joint infeasibility is a value, not an error
# ----------------------------------------------------------------------
# Force nearly everything in and nothing satisfies the residue: the
# solver reports best=None rather than raising, because an empty
# feasible region is a legitimate answer for a search.

tight_ring = RingFamily.from_labels(
    ground,
    forced_in=("app", "gui", "net", "core"),
    implications=(("docs", "app"),),
)
mod5 = CongruencyConstraint(5, 2)  # members have size 4 or 5, never 2 mod 5
blocked = enum_solve(oracle, tight_ring, mod5)
print(f"\nover-constrained run: best={blocked.best} value={blocked.value}")
assert blocked.best is None and blocked.value is None
