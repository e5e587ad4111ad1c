import json
import random

import jsonschema
import pytest

from linkforms import (
    InputError,
    KKManifold1,
    form_from_document,
    form_to_document,
    load_form,
    load_manifold,
    manifold_from_document,
    manifold_to_document,
    parse_form,
    parse_manifold,
    standard_w,
    direct_sum,
)
from linkforms.corpus import scramble_form
from linkforms.documents import FORM_DOCUMENT_SCHEMA, KK_MANIFOLD_SCHEMA, SIGN_CONVENTION


def test_sign_convention_tag():
    assert SIGN_CONVENTION == "sec3"
    doc = form_to_document(standard_w(3))
    assert doc["sign_convention"] == "sec3"


def test_form_round_trip():
    rng = random.Random(2)
    for base in (standard_w(3), direct_sum(standard_w(3), standard_w(9))):
        form, _ = scramble_form(base, rng)
        doc = form_to_document(form)
        jsonschema.validate(doc, FORM_DOCUMENT_SCHEMA)
        back = form_from_document(json.loads(json.dumps(doc)))
        assert back.group == form.group
        assert back.gram == form.gram
        assert back.name == form.name


def test_form_document_shape():
    doc = form_to_document(standard_w(3))
    assert doc["orders"] == [3, 3]
    assert doc["gram"][0][1] == "1/3"
    assert doc["gram"][1][0] == "2/3"
    assert doc["gram"][0][0] == "0/1"


@pytest.mark.parametrize(
    "mutate,fragment",
    [
        (lambda d: d.update(gram=[["0/1"]]), "2x2"),
        (lambda d: d.update(extra=1), "unknown keys"),
        (lambda d: d.pop("orders"), "required"),
        (lambda d: d.update(orders=[3, "3"]), "list of integers"),
        (lambda d: d.update(orders=[3, True]), "list of integers"),
        (lambda d: d.update(sign_convention="other"), "sign_convention"),
        (lambda d: d.update(name=7), "must be a string"),
        (lambda d: d["gram"][0].__setitem__(1, 5), "fraction string"),
    ],
)
def test_form_document_rejections(mutate, fragment):
    doc = form_to_document(standard_w(3))
    mutate(doc)
    with pytest.raises(InputError, match=fragment):
        form_from_document(doc)


def test_malformed_fraction_names_position():
    doc = form_to_document(standard_w(3))
    doc["gram"][0][1] = "1/0"
    with pytest.raises(InputError, match=r"gram\[0\]\[1\].*zero denominator"):
        form_from_document(doc, source="W.json")


def test_parse_form_json_diagnostics():
    with pytest.raises(InputError, match="line 1"):
        parse_form("{not json", source="bad.json")
    with pytest.raises(InputError, match="expected a JSON object"):
        parse_form("[1, 2]", source="bad.json")


def test_load_form_missing_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        load_form(str(tmp_path / "absent.json"))


def test_load_form_round_trip(tmp_path):
    p = tmp_path / "w9.json"
    p.write_text(json.dumps(form_to_document(standard_w(9))))
    form = load_form(str(p))
    assert form.group.orders == (9, 9)
    # diagnostics carry the path
    p2 = tmp_path / "bad.json"
    doc = form_to_document(standard_w(9))
    doc["gram"][1][0] = "x/3"
    p2.write_text(json.dumps(doc))
    with pytest.raises(InputError, match="bad.json"):
        load_form(str(p2))


def test_manifold_round_trip():
    N = KKManifold1(3, plus=2, minus=1, circles=1, null_b2=2)
    doc = manifold_to_document(N)
    jsonschema.validate(doc, KK_MANIFOLD_SCHEMA)
    assert manifold_from_document(doc) == N


def test_manifold_defaults_and_rejections():
    assert manifold_from_document({"k": 3, "plus": 1, "minus": 0}).circles == 0
    with pytest.raises(InputError, match="missing required key"):
        manifold_from_document({"k": 3, "plus": 1})
    with pytest.raises(InputError, match="unknown keys"):
        manifold_from_document({"k": 3, "plus": 1, "minus": 0, "genus": 2})
    with pytest.raises(InputError, match="must be an integer"):
        manifold_from_document({"k": 3, "plus": True, "minus": 0})
    with pytest.raises(InputError, match="k must be >= 2"):
        manifold_from_document({"k": 1, "plus": 1, "minus": 0})


def test_parse_and_load_manifold(tmp_path):
    text = json.dumps({"k": 5, "plus": 7, "minus": 1})
    assert parse_manifold(text).k == 5
    p = tmp_path / "m.json"
    p.write_text(text)
    assert load_manifold(str(p)).plus == 7
    with pytest.raises(InputError, match="cannot read"):
        load_manifold(str(tmp_path / "nope.json"))
