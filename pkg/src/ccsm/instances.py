"""Problem instances and their on-disk JSON form.

An instance bundles an oracle, a lattice, and an optional feasibility
constraint.  The file format uses top-level keys ``ground_set``,
``function``, ``lattice`` (optional) and ``constraint`` (optional); the
function and constraint objects are tagged unions selected by ``type``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .constraints import (
    CongruencyConstraint,
    Constraint,
    GeneralizedConstraint,
    TCutConstraint,
)
from .errors import InputError
from .ground import GroundSet
from .lattice import RingFamily
from .oracles import (
    Coverage,
    CutDirected,
    CutUndirected,
    ExplicitTable,
    Modular,
    SubmodularOracle,
    check_submodular,
)


@dataclass(frozen=True)
class Instance:
    oracle: SubmodularOracle
    ring: RingFamily
    constraint: Constraint | None

    @property
    def ground(self) -> GroundSet:
        return self.oracle.ground


def _require_keys(payload: dict, required: set[str], optional: set[str], what: str) -> None:
    if not isinstance(payload, dict):
        raise InputError(f"{what} must be a JSON object")
    keys = set(payload)
    missing = required - keys
    if missing:
        raise InputError(f"{what} is missing keys {sorted(missing)}")
    extra = keys - required - optional
    if extra:
        raise InputError(f"{what} has unknown keys {sorted(extra)}")


def _parse_function(payload: dict, ground: GroundSet) -> SubmodularOracle:
    _require_keys(payload, {"type"}, {"weights", "edges", "arcs", "covered_sets", "values"},
                  "function")
    tag = payload["type"]
    if tag == "modular":
        _require_keys(payload, {"type", "weights"}, set(), "modular function")
        weights = payload["weights"]
        if not isinstance(weights, dict):
            raise InputError('"weights" must map labels to integers')
        spec = Modular({str(k): int(v) for k, v in weights.items()})
    elif tag == "cut_undirected":
        _require_keys(payload, {"type", "edges"}, set(), "cut function")
        spec = CutUndirected(tuple((str(u), str(v), int(w)) for u, v, w in payload["edges"]))
    elif tag == "cut_directed":
        _require_keys(payload, {"type", "arcs"}, set(), "cut function")
        spec = CutDirected(tuple((str(u), str(v), int(w)) for u, v, w in payload["arcs"]))
    elif tag == "coverage":
        _require_keys(payload, {"type", "covered_sets"}, set(), "coverage function")
        covered = payload["covered_sets"]
        if not isinstance(covered, dict):
            raise InputError('"covered_sets" must map labels to item lists')
        spec = Coverage({str(k): tuple(str(i) for i in v) for k, v in covered.items()})
    elif tag == "explicit_table":
        _require_keys(payload, {"type", "values"}, set(), "table function")
        entries = payload["values"]
        if not isinstance(entries, list):
            raise InputError('"values" must be a list of [labels, value] pairs')
        table = [None] * (1 << ground.n)
        for entry in entries:
            try:
                labels, value = entry
            except (TypeError, ValueError):
                raise InputError(f"table entry {entry!r} is not a [labels, value] pair")
            mask = ground.mask_of(labels)
            if table[mask] is not None:
                raise InputError(f"duplicate table entry for {sorted(labels)}")
            table[mask] = int(value)
        holes = table.count(None)
        if holes:
            raise InputError(f"table is missing {holes} of {1 << ground.n} subsets")
        spec = ExplicitTable(tuple(table))
    else:
        raise InputError(f"unknown function type {tag!r}")
    oracle = SubmodularOracle(ground, spec)
    if tag == "explicit_table":
        mode = "exhaustive" if ground.n <= 16 else "sampled"
        report = check_submodular(oracle, mode=mode, trials=4096)
        if not report.ok:
            a, b = report.witness
            raise InputError(
                f"explicit table is not submodular: witness ({sorted(a)}, {sorted(b)})"
            )
    return oracle


def _parse_lattice(payload: dict | None, ground: GroundSet) -> RingFamily:
    if payload is None:
        return RingFamily.full(ground)
    _require_keys(payload, set(), {"forced_in", "forced_out", "implications"}, "lattice")
    implications = []
    for entry in payload.get("implications", []):
        try:
            u, v = entry
        except (TypeError, ValueError):
            raise InputError(f"implication {entry!r} is not a [u, v] pair")
        implications.append((str(u), str(v)))
    return RingFamily.from_labels(
        ground,
        tuple(str(x) for x in payload.get("forced_in", [])),
        tuple(str(x) for x in payload.get("forced_out", [])),
        implications,
    )


def parse_constraint(payload: dict | None) -> Constraint | None:
    if payload is None:
        return None
    _require_keys(payload, {"type"}, {"modulus", "residue", "terms", "set"}, "constraint")
    tag = payload["type"]
    if tag == "congruency":
        _require_keys(payload, {"type", "modulus", "residue"}, set(), "congruency constraint")
        return CongruencyConstraint(int(payload["modulus"]), int(payload["residue"]))
    if tag == "generalized":
        _require_keys(payload, {"type", "modulus", "terms"}, set(), "generalized constraint")
        terms = []
        for term in payload["terms"]:
            _require_keys(term, {"set", "residue"}, set(), "generalized term")
            terms.append((frozenset(str(x) for x in term["set"]), int(term["residue"])))
        return GeneralizedConstraint(int(payload["modulus"]), tuple(terms))
    if tag == "tcut":
        _require_keys(payload, {"type", "set", "modulus", "residue"}, set(), "tcut constraint")
        return TCutConstraint(
            frozenset(str(x) for x in payload["set"]),
            int(payload["modulus"]),
            int(payload["residue"]),
        )
    raise InputError(f"unknown constraint type {tag!r}")


def instance_from_dict(payload: dict) -> Instance:
    _require_keys(payload, {"ground_set", "function"}, {"lattice", "constraint"}, "instance")
    ground = GroundSet(tuple(str(x) for x in payload["ground_set"]))
    oracle = _parse_function(payload["function"], ground)
    ring = _parse_lattice(payload.get("lattice"), ground)
    constraint = parse_constraint(payload.get("constraint"))
    if isinstance(constraint, (GeneralizedConstraint, TCutConstraint)):
        # Fail fast on labels outside the ground set.
        constraint.mask_member(0, ground)
    return Instance(oracle, ring, constraint)


def load_instance(path: str | Path) -> Instance:
    try:
        payload = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read instance file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"instance file is not valid JSON: {exc}") from None
    return instance_from_dict(payload)


def instance_to_dict(instance: Instance) -> dict:
    """Serialize back to the file form (explicit tables stay explicit)."""
    ground = instance.ground
    oracle = instance.oracle
    spec = oracle.spec
    if isinstance(spec, Modular):
        function = {"type": "modular", "weights": dict(spec.weights)}
    elif isinstance(spec, CutUndirected):
        function = {"type": "cut_undirected", "edges": [list(e) for e in spec.edges]}
    elif isinstance(spec, CutDirected):
        function = {"type": "cut_directed", "arcs": [list(a) for a in spec.arcs]}
    elif isinstance(spec, Coverage):
        function = {
            "type": "coverage",
            "covered_sets": {k: list(v) for k, v in spec.covered_sets.items()},
        }
    elif isinstance(spec, ExplicitTable):
        function = {
            "type": "explicit_table",
            "values": [
                [list(ground.labels_of(mask)), int(v)] for mask, v in enumerate(spec.values)
            ],
        }
    else:
        raise InputError(f"function spec {type(spec).__name__} has no file form")
    payload: dict = {"ground_set": list(ground.elements), "function": function}
    ring = instance.ring
    if ring.forced_in or ring.forced_out or ring.implications:
        payload["lattice"] = {
            "forced_in": list(ground.labels_of(ring.forced_in)),
            "forced_out": list(ground.labels_of(ring.forced_out)),
            "implications": [
                [ground.elements[u], ground.elements[v]] for u, v in ring.implications
            ],
        }
    constraint = instance.constraint
    if isinstance(constraint, CongruencyConstraint):
        payload["constraint"] = {
            "type": "congruency",
            "modulus": constraint.modulus,
            "residue": constraint.residue,
        }
    elif isinstance(constraint, GeneralizedConstraint):
        payload["constraint"] = {
            "type": "generalized",
            "modulus": constraint.modulus,
            "terms": [
                {"set": sorted(s), "residue": r} for s, r in constraint.terms
            ],
        }
    elif isinstance(constraint, TCutConstraint):
        payload["constraint"] = {
            "type": "tcut",
            "set": sorted(constraint.terminals),
            "modulus": constraint.modulus,
            "residue": constraint.residue,
        }
    elif constraint is not None:
        raise InputError("membership-oracle constraints have no file form")
    return payload
