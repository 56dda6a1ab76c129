"""JSON instance format: parsing, validation, and round-trips."""

from __future__ import annotations

import json

import pytest

from ccsm.constraints import (
    CongruencyConstraint,
    GeneralizedConstraint,
    TCutConstraint,
)
from ccsm.errors import InputError
from ccsm.instances import (
    instance_from_dict,
    instance_to_dict,
    load_instance,
    parse_constraint,
)
from ccsm.oracles import Coverage, CutDirected, CutUndirected, ExplicitTable, Modular


def _base(function, **extra):
    payload = {"ground_set": ["a", "b", "c"], "function": function}
    payload.update(extra)
    return payload


def test_modular_round_trip():
    payload = _base({"type": "modular", "weights": {"a": -2, "b": 1}})
    inst = instance_from_dict(payload)
    assert isinstance(inst.oracle.spec, Modular)
    assert inst.oracle.eval(("a", "b")) == -1
    assert inst.constraint is None
    again = instance_to_dict(inst)
    assert again == payload


def test_cut_round_trips():
    payload = _base(
        {"type": "cut_undirected", "edges": [["a", "b", 2], ["b", "c", 1]]}
    )
    inst = instance_from_dict(payload)
    assert isinstance(inst.oracle.spec, CutUndirected)
    assert inst.oracle.eval(("b",)) == 3
    assert instance_to_dict(inst) == payload

    payload = _base({"type": "cut_directed", "arcs": [["a", "b", 2]]})
    inst = instance_from_dict(payload)
    assert isinstance(inst.oracle.spec, CutDirected)
    assert inst.oracle.eval(("a",)) == 2
    assert inst.oracle.eval(("b",)) == 0
    assert instance_to_dict(inst) == payload


def test_coverage_round_trip():
    payload = _base(
        {"type": "coverage", "covered_sets": {"a": ["1", "2"], "b": ["2"], "c": []}}
    )
    inst = instance_from_dict(payload)
    assert isinstance(inst.oracle.spec, Coverage)
    assert inst.oracle.eval(("a", "b")) == 2
    assert instance_to_dict(inst) == payload


def test_table_round_trip():
    values = [
        [[], 0],
        [["a"], 2],
        [["b"], 1],
        [["a", "b"], 2],
    ]
    payload = {"ground_set": ["a", "b"], "function": {"type": "explicit_table", "values": values}}
    inst = instance_from_dict(payload)
    assert isinstance(inst.oracle.spec, ExplicitTable)
    assert inst.oracle.eval(("a",)) == 2
    again = instance_to_dict(inst)
    assert again["function"]["type"] == "explicit_table"
    assert instance_from_dict(again).oracle.value_table().tolist() == [0, 2, 1, 2]


def test_non_submodular_table_is_rejected_with_witness():
    # f(S) = |S|**2 is strictly supermodular.
    values = [[list(s), len(s) ** 2] for s in ([], ["a"], ["b"], ["a", "b"])]
    payload = {
        "ground_set": ["a", "b"],
        "function": {"type": "explicit_table", "values": values},
    }
    with pytest.raises(InputError, match="not submodular"):
        instance_from_dict(payload)


def test_table_holes_and_duplicates_are_rejected():
    payload = {
        "ground_set": ["a", "b"],
        "function": {"type": "explicit_table", "values": [[[], 0], [["a"], 1]]},
    }
    with pytest.raises(InputError, match="missing"):
        instance_from_dict(payload)
    payload["function"]["values"] = [[[], 0], [[], 1], [["a"], 1], [["b"], 1]]
    with pytest.raises(InputError, match="duplicate"):
        instance_from_dict(payload)


def test_lattice_and_constraint_round_trip():
    payload = _base(
        {"type": "modular", "weights": {"a": 1}},
        lattice={"forced_in": ["a"], "forced_out": [], "implications": [["b", "c"]]},
        constraint={"type": "congruency", "modulus": 3, "residue": 1},
    )
    inst = instance_from_dict(payload)
    assert inst.ring.member(("a",))
    assert not inst.ring.member(("a", "b"))
    assert inst.ring.member(("a", "b", "c"))
    assert inst.constraint == CongruencyConstraint(3, 1)
    assert instance_to_dict(inst) == payload


def test_generalized_and_tcut_constraints():
    payload = _base(
        {"type": "modular", "weights": {}},
        constraint={
            "type": "generalized",
            "modulus": 2,
            "terms": [{"set": ["a", "b"], "residue": 1}],
        },
    )
    inst = instance_from_dict(payload)
    assert isinstance(inst.constraint, GeneralizedConstraint)
    assert instance_to_dict(inst) == payload

    payload = _base(
        {"type": "modular", "weights": {}},
        constraint={"type": "tcut", "set": ["a", "c"], "modulus": 2, "residue": 1},
    )
    inst = instance_from_dict(payload)
    assert isinstance(inst.constraint, TCutConstraint)
    assert inst.constraint.terminals == frozenset({"a", "c"})
    assert instance_to_dict(inst) == payload


def test_constraint_labels_outside_ground_are_rejected():
    payload = _base(
        {"type": "modular", "weights": {}},
        constraint={"type": "tcut", "set": ["z"], "modulus": 2, "residue": 0},
    )
    with pytest.raises(InputError):
        instance_from_dict(payload)
    payload["constraint"] = {
        "type": "generalized",
        "modulus": 2,
        "terms": [{"set": ["q"], "residue": 0}],
    }
    with pytest.raises(InputError):
        instance_from_dict(payload)


def test_strict_keys_everywhere():
    with pytest.raises(InputError, match="unknown keys"):
        instance_from_dict(
            _base({"type": "modular", "weights": {}}, comment="hello")
        )
    with pytest.raises(InputError, match="missing keys"):
        instance_from_dict({"ground_set": ["a"]})
    with pytest.raises(InputError, match="unknown keys"):
        instance_from_dict(_base({"type": "modular", "weights": {}, "edges": []}))
    with pytest.raises(InputError, match="unknown function type"):
        instance_from_dict(_base({"type": "mystery"}))
    with pytest.raises(InputError, match="unknown constraint type"):
        parse_constraint({"type": "parity"})
    with pytest.raises(InputError):
        instance_from_dict(
            _base({"type": "modular", "weights": {}}, lattice={"pinned": ["a"]})
        )


def test_parse_constraint_none_passthrough():
    assert parse_constraint(None) is None


def test_load_instance_file_errors(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        load_instance(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError, match="not valid JSON"):
        load_instance(bad)
    good = tmp_path / "good.json"
    good.write_text(
        json.dumps(_base({"type": "modular", "weights": {"a": 4}}))
    )
    inst = load_instance(good)
    assert inst.oracle.eval(("a",)) == 4
