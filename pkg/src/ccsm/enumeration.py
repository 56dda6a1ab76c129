"""Congruency-constrained minimization by bounded pair enumeration.

The solver walks every disjoint pair (A, B) of subsets with |A|, |B| <= d,
finds the inclusion-minimal minimizer of f over the lattice members that
contain A and avoid B, and finally picks the best constraint-feasible set
among the collected minimizers.  For a prime-power modulus m the depth
m - 1 (or k * (m - 1) for k simultaneous congruences) makes this exact.

Minimal minimizers for *all* pairs at once come from a dense dynamic
program over the 3**n (in A, in B, free) assignments: a pair with a free
element is the union of the two pairs that pin it, and the scaled
objective g(S) = (n + 1) f(S) + |S| has a unique minimizer on every
non-empty sublattice, so taking the better child is well-defined.  When
the pair budget is small the solver enumerates pairs directly instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator

import numpy as np

from .constraints import (
    CongruencyConstraint,
    Constraint,
    GeneralizedConstraint,
    MembershipOracle,
    TCutConstraint,
    default_depth,
    guarantees_exactness,
)
from .errors import InputError
from .ground import (
    interval_masks,
    popcount_array,
    reversed_bits_array,
)
from .lattice import RingFamily
from .limits import _PAIR_SWITCH, require_exhaustible, ternary_cap
from .oracles import SubmodularOracle

_SENTINEL = np.iinfo(np.int64).max // 4

ROUTE_TERNARY = "ternary"
ROUTE_PER_PAIR = "per_pair"


def pair_count(n: int, d: int) -> int:
    """Number of ordered disjoint pairs (A, B) with |A| <= d and |B| <= d."""
    if n < 0 or d < 0:
        raise InputError("pair_count needs n >= 0 and d >= 0")
    total = 0
    for i in range(min(n, d) + 1):
        for j in range(min(n - i, d) + 1):
            total += comb(n, i) * comb(n - i, j)
    return total


def candidate_pairs(n: int, d: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All disjoint index pairs (A, B) up to size d, in (size, lex) order of
    A and then of B."""
    if n < 0 or d < 0:
        raise InputError("candidate_pairs needs n >= 0 and d >= 0")
    indices = range(n)
    for sa in range(min(n, d) + 1):
        for a in combinations(indices, sa):
            rest = [i for i in indices if i not in a]
            for sb in range(min(len(rest), d) + 1):
                for b in combinations(rest, sb):
                    yield a, b


@dataclass
class _NodeTable:
    """Per-pair results: masks of A and B, the minimal minimizer, emptiness."""

    n: int
    amask: np.ndarray
    bmask: np.ndarray
    setmask: np.ndarray
    nonempty: np.ndarray
    values: np.ndarray
    route: str


def _scaled_table(oracle: SubmodularOracle, ring: RingFamily) -> tuple[np.ndarray, np.ndarray]:
    n = oracle.ground.n
    values = oracle.value_table()
    feasible = ring.feasibility_table()
    masks = np.arange(1 << n, dtype=np.int64)
    scaled = (n + 1) * values + popcount_array(masks)
    return values, np.where(feasible, scaled, _SENTINEL)


def _node_table_ternary(oracle: SubmodularOracle, ring: RingFamily, dmax: int) -> _NodeTable:
    n = oracle.ground.n
    values, g = _scaled_table(oracle, ring)
    p3 = [3**i for i in range(n + 1)]
    size = p3[n]
    idx3 = np.arange(size, dtype=np.int64)
    # Ternary digit i: 0 = free, 1 = pinned into A, 2 = pinned into B.
    gval = np.full(size, _SENTINEL, dtype=np.int64)
    setmask = np.zeros(size, dtype=np.int64)
    masks = np.arange(1 << n, dtype=np.int64)
    tern = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        bit = (masks >> i) & 1
        tern += np.where(bit == 1, p3[i], 2 * p3[i])
    gval[tern] = g
    setmask[tern] = masks
    for i in range(n):
        step = p3[i]
        free = np.nonzero((idx3 // step) % 3 == 0)[0]
        left = gval[free + step]
        right = gval[free + 2 * step]
        take_left = left <= right
        gval[free] = np.where(take_left, left, right)
        setmask[free] = np.where(take_left, setmask[free + step], setmask[free + 2 * step])
    count_a = np.zeros(size, dtype=np.int8)
    count_b = np.zeros(size, dtype=np.int8)
    for i in range(n):
        digit = (idx3 // p3[i]) % 3
        count_a += digit == 1
        count_b += digit == 2
    keep = np.nonzero((count_a <= dmax) & (count_b <= dmax))[0]
    amask = np.zeros(len(keep), dtype=np.int64)
    bmask = np.zeros(len(keep), dtype=np.int64)
    for i in range(n):
        digit = (keep // p3[i]) % 3
        amask |= (digit == 1).astype(np.int64) << i
        bmask |= (digit == 2).astype(np.int64) << i
    return _NodeTable(
        n=n,
        amask=amask,
        bmask=bmask,
        setmask=setmask[keep],
        nonempty=gval[keep] != _SENTINEL,
        values=values,
        route=ROUTE_TERNARY,
    )


def _node_table_per_pair(oracle: SubmodularOracle, ring: RingFamily, dmax: int) -> _NodeTable:
    n = oracle.ground.n
    values, g = _scaled_table(oracle, ring)
    amasks: list[int] = []
    bmasks: list[int] = []
    setmasks: list[int] = []
    nonempty: list[bool] = []
    for a, b in candidate_pairs(n, dmax):
        a_mask = sum(1 << i for i in a)
        b_mask = sum(1 << i for i in b)
        free = [i for i in range(n) if not ((a_mask | b_mask) >> i) & 1]
        idx = interval_masks(a_mask, free)
        local = g[idx]
        k = int(np.argmin(local))
        amasks.append(a_mask)
        bmasks.append(b_mask)
        if local[k] == _SENTINEL:
            setmasks.append(0)
            nonempty.append(False)
        else:
            setmasks.append(int(idx[k]))
            nonempty.append(True)
    return _NodeTable(
        n=n,
        amask=np.array(amasks, dtype=np.int64),
        bmask=np.array(bmasks, dtype=np.int64),
        setmask=np.array(setmasks, dtype=np.int64),
        nonempty=np.array(nonempty, dtype=bool),
        values=values,
        route=ROUTE_PER_PAIR,
    )


def _node_table(oracle: SubmodularOracle, ring: RingFamily, dmax: int) -> _NodeTable:
    n = oracle.ground.n
    require_exhaustible(n, "pair-enumeration solving")
    pairs = pair_count(n, dmax)
    if n <= ternary_cap() and pairs > _PAIR_SWITCH:
        return _node_table_ternary(oracle, ring, dmax)
    return _node_table_per_pair(oracle, ring, dmax)


@dataclass(frozen=True)
class EnumSolution:
    """Result of a pair-enumeration run.

    ``best is None`` means no collected candidate was feasible (a value,
    not an error).  ``candidates`` counts distinct minimal minimizers;
    ``sfm_calls`` counts pairs whose sublattice was non-empty and
    ``skipped_empty`` the rest, so the two always sum to
    ``pair_count(n, depth)``.
    """

    best: frozenset[str] | None
    value: int | None
    depth: int
    candidates: int
    sfm_calls: int
    skipped_empty: int
    guaranteed: bool
    candidate_sets: tuple[frozenset[str], ...] = field(default=(), repr=False)
    route: str = ROUTE_TERNARY


def _ordered_candidates(table: _NodeTable) -> np.ndarray:
    """Distinct collected sets ordered by (value, cardinality, lex)."""
    cands = np.unique(table.setmask[table.nonempty])
    if len(cands) == 0:
        return cands
    vals = table.values[cands]
    rev = reversed_bits_array(cands, table.n)
    order = np.lexsort((-rev, popcount_array(cands), vals))
    return cands[order]


def enum_solve(
    oracle: SubmodularOracle,
    ring: RingFamily | None = None,
    constraint: Constraint | None = None,
    depth: int | None = None,
) -> EnumSolution:
    """Minimize f over lattice members satisfying the constraint.

    ``depth`` defaults to the constraint's certified depth; passing a
    smaller value trades exactness for speed and flips ``guaranteed``
    off.  Opaque membership constraints always need an explicit depth.
    """
    ground = oracle.ground
    n = ground.n
    if ring is None:
        ring = RingFamily.full(ground)
    if ring.ground is not ground and ring.ground.elements != ground.elements:
        raise InputError("oracle and ring family use different ground sets")
    if depth is None:
        if constraint is None:
            depth = 0
        else:
            depth = default_depth(constraint)
    if depth < 0:
        raise InputError(f"depth must be >= 0, got {depth}")
    table = _node_table(oracle, ring, depth)
    sfm_calls = int(table.nonempty.sum())
    skipped = int(len(table.nonempty) - sfm_calls)
    assert sfm_calls + skipped == pair_count(n, depth)
    ordered = _ordered_candidates(table)
    if constraint is None:
        feasible = lambda mask: True  # noqa: E731
    else:
        feasible = _compile_member(constraint, ground)
    best_mask: int | None = None
    for m in ordered:
        if feasible(int(m)):
            best_mask = int(m)
            break
    if constraint is None:
        # Unconstrained runs return the lattice minimum itself.
        guaranteed = True
    else:
        guaranteed = guarantees_exactness(constraint, depth)
    return EnumSolution(
        best=None if best_mask is None else ground.set_of(best_mask),
        value=None if best_mask is None else int(table.values[best_mask]),
        depth=depth,
        candidates=len(ordered),
        sfm_calls=sfm_calls,
        skipped_empty=skipped,
        guaranteed=guaranteed,
        candidate_sets=tuple(ground.set_of(int(m)) for m in ordered),
        route=table.route,
    )


def _compile_member(constraint: Constraint, ground):
    """Bind a constraint to a ground set as a fast mask predicate."""
    if isinstance(constraint, CongruencyConstraint):
        m, r = constraint.modulus, constraint.residue
        return lambda mask: mask.bit_count() % m == r
    if isinstance(constraint, TCutConstraint):
        tm = ground.mask_of(constraint.terminals)
        m, r = constraint.modulus, constraint.residue
        return lambda mask: (mask & tm).bit_count() % m == r
    if isinstance(constraint, GeneralizedConstraint):
        tms = constraint.term_masks(ground)
        m = constraint.modulus
        return lambda mask: all((mask & tm).bit_count() % m == ri for tm, ri in tms)
    if isinstance(constraint, MembershipOracle):
        return lambda mask: constraint.mask_member(mask, ground)
    raise InputError(f"unknown constraint {constraint!r}")
