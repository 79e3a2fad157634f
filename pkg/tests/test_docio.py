import json

import pytest

from krasner.core import InputError
from krasner.corpus import base_members, hyper3
from krasner.docio import dump_structure, load_structure, same_tables, structure_from_doc, structure_to_doc


def doc3():
    return structure_to_doc(hyper3(), canonical=False)


@pytest.mark.parametrize("h", base_members(), ids=lambda h: h.name)
def test_round_trip(h, tmp_path):
    p = tmp_path / "s.json"
    dump_structure(h, p)
    back = load_structure(p)
    assert same_tables(h, back)
    assert back.name_map == {f"a{i}": h.names[i] for i in range(h.size)}
    assert dump_structure(back) == dump_structure(h)


def test_conflicting_rows():
    d = doc3()
    d["g"].append({"args": ["u", "u"], "value": "u"})
    with pytest.raises(InputError, match="conflicting"):
        structure_from_doc(d)


def test_permuted_duplicate_agrees():
    d = doc3()
    d["g"].append({"args": ["u", "1"], "value": "u"})
    assert same_tables(structure_from_doc(d), hyper3())


def test_missing_row():
    d = doc3()
    d["f"] = [r for r in d["f"] if r["args"] != ["1", "u"]]
    with pytest.raises(InputError, match="no row"):
        structure_from_doc(d)


def test_unknown_element():
    d = doc3()
    d["g"][0]["value"] = "w"
    with pytest.raises(InputError, match="unknown element"):
        structure_from_doc(d)


@pytest.mark.parametrize("field", ["m", "elements", "f", "zero"])
def test_missing_field(field):
    d = doc3()
    del d[field]
    with pytest.raises(InputError):
        structure_from_doc(d)


def test_bad_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(InputError):
        load_structure(p)
    with pytest.raises(InputError):
        load_structure(tmp_path / "missing.json")


def test_wrong_arity_row():
    d = doc3()
    d["g"][0]["args"] = ["0", "0", "0"]
    with pytest.raises(InputError):
        structure_from_doc(d)


def test_dump_is_json():
    json.loads(dump_structure(hyper3()))
