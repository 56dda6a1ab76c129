"""
Cardinality transforms and their residue patterns
=================================================

A cardinality transform sends each subset S of a ground set to a subset
G(S) of a larger one so that |G(S)| depends only on |S| through a target
polynomial g, while intersections are preserved: G(A & B) = G(A) & G(B).
This demo builds the basic kinds, verifies the defining properties
exhaustively on small grounds, and shows the stepwise residue pattern
that makes one particular kind useful: |G(S)| mod p detects whether |S|
is a multiple of m.
"""

from ccsm import (
    Binomial,
    Constant,
    GroundSet,
    Power,
    PrimePower,
    Sum,
    apply_transform,
    binom_mod_check,
    g_value,
    level,
    verify_transform,
)

# ----------------------------------------------------------------------
# The target polynomials
# ----------------------------------------------------------------------
# Constant(c): g(x) = c          level 0
# Power(k):    g(x) = x**k       level k
# Binomial(k): g(x) = C(x, k)    level k
# Sum(parts):  g(x) = sum of the parts' targets
kinds = (
    ("g(x) = 3", Constant(3)),
    ("g(x) = x^2", Power(2)),
    ("g(x) = C(x,2)", Binomial(2)),
    ("g(x) = 1+x+C(x,2)", Sum((Constant(1), Power(1), Binomial(2)))),
)
print("x                :", list(range(7)))
for label, kind in kinds:
    print(f"{label:<17}:", [g_value(kind, x) for x in range(7)], f"(level {level(kind)})")

# ----------------------------------------------------------------------
# Realizing a target on an actual ground set
# ----------------------------------------------------------------------
ground = GroundSet(("p", "q", "r"))
tr = apply_transform(Binomial(2), ground)
print(f"\nBinomial(2) on 3 elements: target ground has {tr.target.n} elements")
for subset in ((), ("p",), ("p", "q"), ("p", "q", "r")):
    image = tr.image(subset)
    print(f"  G({set(subset) or '{}'}) has size {len(image)}"
          f" = C({len(subset)}, 2)")

# Pairwise-intersection elements only appear once both endpoints are in,
# which is exactly why |G(S)| = C(|S|, 2) and why the construction
# respects intersections.  The verifier checks all of this for every
# subset pair on the given ground size:
report = verify_transform(Binomial(2), 4)
print(f"\nexhaustive verification on n=4: ok={report.ok},"
      f" checks={report.checks}")
assert report.ok

# ----------------------------------------------------------------------
# The residue pattern behind congruence detection
# ----------------------------------------------------------------------
# For a prime power p**a, the dedicated kind produces g with
#   g(x) = 0 (mod p)  when x = 0 (mod p**a),  and
#   g(x) = 1 (mod p)  otherwise.
# So reading |G(S)| modulo p answers "is |S| divisible by m" — the
# bridge from cardinality congruences to residue arithmetic.

for m, p in ((4, 2), (9, 3), (8, 2)):
    pattern = [g_value(PrimePower(m), x) % p for x in range(2 * m + 1)]
    print(f"\nPrimePower({m}) mod {p}: {pattern}")
    assert all(v == (0 if x % m == 0 else 1) for x, v in enumerate(pattern))
print("zeroes land exactly on the multiples of m")

# The pattern rests on a classical binomial congruence: C(x, p**a) mod p
# depends on x only through x mod p**a ... shifted by one power.  The
# checker sweeps it exhaustively over a range of upper indices:
rep = binom_mod_check(3, 2, 200)
print(f"\nbinomial congruence sweep p=3, a=2: ok={rep.ok}, checked={rep.checked}")
assert rep.ok
