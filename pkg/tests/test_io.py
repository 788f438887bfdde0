import json

import pytest
from hypothesis import given

from f1rep import io
from f1rep.errors import InstanceFormatError, StringError, StructuralError
from f1rep.fixtures import ACYCLIC_TRIANGLE, TWO_LOOPS, fixture_a, fixture_b, fixture_c, fixture_path, load_fixture
from f1rep.generate import random_winding
from f1rep.nice import verify_obstruction

from conftest import windings


def test_shipped_fixtures_match_the_builders():
    a = load_fixture("A")
    assert (a.windings["V"], a.windings["W"]) == fixture_a()
    assert load_fixture("B").winding() == fixture_b()
    c = load_fixture("C")
    assert c.winding() == fixture_c()
    (rec,) = c.obstructions
    assert rec.winding == "C" and verify_obstruction(c.winding(), rec.obstruction)
    assert c.gradings["C"] == [{"1": 0, "2": 0}]


def test_shipped_fixtures_are_canonical():
    for name in "ABC":
        text = fixture_path(name).read_text()
        assert io.dumps(io.loads(text)) == text


def test_no_winding():
    doc = {"base": io.quiver_dict(TWO_LOOPS), "windings": []}
    with pytest.raises(InstanceFormatError, match="no winding"):
        io.from_dict(doc)


def test_json_errors_carry_position():
    with pytest.raises(InstanceFormatError, match=r"line 2, column"):
        io.loads('{"base":\n  ]')


def test_schema_errors_carry_path():
    doc = json.loads(fixture_path("B").read_text())
    doc["windings"][0]["arrows"][1]["source"] = 7
    with pytest.raises(InstanceFormatError, match=r"\$\.windings\[0\]\.arrows\[1\]\.source"):
        io.from_dict(doc)
    doc = json.loads(fixture_path("B").read_text())
    del doc["base"]
    with pytest.raises(InstanceFormatError, match="'base' is a required property"):
        io.from_dict(doc)


def test_unresolved_ids_are_structural():
    doc = json.loads(fixture_path("B").read_text())
    doc["windings"][0]["arrows"][0]["color"] = "green"
    with pytest.raises(StructuralError, match=r"\$\.windings\[0\]"):
        io.from_dict(doc)


def test_bad_obstruction_letters():
    doc = json.loads(fixture_path("C").read_text())
    doc["obstructions"][0]["E"] = [["b", 1], ["b", 1]]
    with pytest.raises(StringError, match="obstructions"):
        io.from_dict(doc)


def test_duplicate_winding_names():
    doc = json.loads(fixture_path("A").read_text())
    doc["windings"][1]["name"] = "V"
    with pytest.raises(InstanceFormatError, match="duplicate"):
        io.from_dict(doc)


def test_missing_file(tmp_path):
    with pytest.raises(InstanceFormatError):
        io.load(tmp_path / "nope.json")


def test_invalid_winding_still_parses():
    # the winding condition is a semantic check, not a parse error
    doc = json.loads(fixture_path("B").read_text())
    doc["windings"][0]["arrows"].append({"id": "g", "source": "2", "target": "2", "color": "blue"})
    inst = io.from_dict(doc)
    assert not inst.winding().report.ok


def test_serialize_parse_is_identity_on_canonical_form():
    text = io.dumps(io.single("B", fixture_b()))
    assert io.dumps(io.loads(text)) == text
    # re-ordered keys canonicalise to the same bytes
    shuffled = json.dumps(json.loads(text), indent=None, sort_keys=False)
    assert io.dumps(io.loads(shuffled)) == text


def test_round_trip_two_hundred_random_instances():
    for seed in range(200):
        base = (TWO_LOOPS, ACYCLIC_TRIANGLE)[seed % 2]
        w = random_winding(base, 1 + seed % 6, (seed % 11) / 10, seed)
        text = io.dumps(io.single(f"R{seed}", w))
        back = io.loads(text)
        assert back.winding() == w
        assert io.dumps(back) == text


@given(windings())
def test_round_trip_property(w):
    text = io.dumps(io.single("W", w))
    assert io.loads(text).winding() == w
