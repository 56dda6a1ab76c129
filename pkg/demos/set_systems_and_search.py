"""
Intersection-closed set systems with forbidden residues
=======================================================

The enumeration depth needed by the congruency solver is governed by a
small combinatorial object: a family of subsets that is closed under
intersection, has no member whose size is congruent to |N| modulo m,
and whose members cover every subset of N up to d elements.  Deep
families force deep searches.  This demo verifies a hand-built family,
watches the checker produce failure witnesses, rules families out with
a counting obstruction, and runs the bounded search for small ones.
"""

from ccsm import (
    GroundSet,
    SetSystem,
    atoms,
    check_md_system,
    construct_mm2_system,
    frankl_wilson_check,
    inclusion_exclusion_check,
    search_md_system,
)

# ----------------------------------------------------------------------
# The standard deep family and what the checker says about it
# ----------------------------------------------------------------------
# On ground {1..m} take every subset that contains element 1 and is not
# the full set: intersection-closed, sizes 1..m-1 (never 0 = |N| mod m),
# and covering every subset of size <= m - 2.

for m in (3, 4, 6):
    system = construct_mm2_system(m)
    verdict = check_md_system(system, m, m - 2)
    print(f"m={m}: {len(system)} member sets, depth-{m - 2} family ok={verdict.ok}")
    assert verdict.ok

# Push the same family one level past its strength and the checker
# answers with a concrete subset nothing covers:
system3 = construct_mm2_system(3)
too_deep = check_md_system(system3, 3, 2)
print(f"\nm=3 at d=2: ok={too_deep.ok}, failed={too_deep.failed!r},"
      f" uncovered witness={too_deep.witness}")
assert too_deep.failed == "covering"

# ----------------------------------------------------------------------
# Witnesses for the other two defining properties
# ----------------------------------------------------------------------
ab = GroundSet(("a", "b"))
open_family = SetSystem.from_labels(GroundSet(("a", "b", "c")), [("a",), ("b",)])
v = check_md_system(open_family, 2, 1)
print(f"\nnot intersection-closed: failed={v.failed!r} witness={v.witness}")

full_member = SetSystem.from_labels(ab, [("a",), ("a", "b")])
v = check_md_system(full_member, 2, 1)
print(f"bad member size: failed={v.failed!r} witness={v.witness}")

# ----------------------------------------------------------------------
# A counting obstruction that rules families out wholesale
# ----------------------------------------------------------------------
# Over a prime modulus, alternating-sum counting over an intersection-
# closed covering family forces some member size into the forbidden
# residue class.  The checker below always finds a violated premise;
# on a valid deep family the violated premise is exactly the forbidden
# residue showing up when the prime and residue are chosen adversarially.

probe = inclusion_exclusion_check(system3, 3, 1)
print(f"\ncounting probe on the m=3 family (p=3, r=1):"
      f" failed={probe.failed!r} witness={probe.witness}")
assert not probe.ok

# Uniform families get a sharper tool: when every member has size 1
# mod 2 and pairwise intersections all hit residue 0, the family can
# have at most C(n, 1) = n members.  Singletons sit exactly at the
# bound; the witness reports (family size, bound).
singles = SetSystem.from_labels(
    GroundSet(("a", "b", "c", "d", "e")),
    [(lab,) for lab in "abcde"],
)
fw = frankl_wilson_check(singles, 2, 1, (1, 0))
print(f"uniform-family bound on 5 singletons: ok={fw.ok} witness={fw.witness}")
assert fw.ok and fw.witness == (5, 5)

# ----------------------------------------------------------------------
# Searching for small families by brute force
# ----------------------------------------------------------------------
# The search closes candidate generator sets under intersection and
# checks the result, scanning generator pools in a fixed order, so a
# hit is reproducible.

found = search_md_system(3, 1, 3, 3)
print(f"\nsearch m=3 d=1 on 3 elements: {[list(found.labels(h)) for h in found.sets]}")
assert check_md_system(found, 3, 1).ok

missing = search_md_system(2, 1, 4, 4)
print(f"search m=2 d=1 on 4 elements: {missing}")
# None is the honest answer: for m=2 the forbidden residue |N| mod 2
# leaves too few usable sizes, and no generator pool within the budget
# covers all singletons.

# ----------------------------------------------------------------------
# Atoms: the finest distinctions a family can express
# ----------------------------------------------------------------------
blocks = atoms(found)
print(f"\natoms of the found family: {[sorted(b) for b in blocks]}")
# Elements in one atom appear in exactly the same member sets; the
# number of atoms bounds how much structure downstream constructions
# can extract from the family.
