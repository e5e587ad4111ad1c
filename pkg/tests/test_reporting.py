import json

import jsonschema
import pytest

from linkforms.reporting import REPORT_SCHEMA, make_report, render_text, to_json


def test_minimal_report_validates():
    rep = make_report("classify", "ok", {"normal_form": "W_3"})
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert "stats" not in rep and "seed" not in rep


def test_full_report_validates():
    rep = make_report(
        "verify", "fail", {"first_failure": "x"}, stats={"n": 3}, seed=17
    )
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["seed"] == 17


def test_bad_status_rejected():
    with pytest.raises(ValueError, match="bad status"):
        make_report("x", "maybe", {})


def test_schema_rejects_extras():
    rep = make_report("x", "ok", {})
    rep["extra"] = 1
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(rep, REPORT_SCHEMA)


def test_json_round_trip():
    rep = make_report("rank", "ok", {"value": 2, "certified": True}, stats={"nodes": 5})
    assert json.loads(to_json(rep)) == rep


def test_render_text_verdict_line():
    rep = make_report("rank", "ok", {"value": 2})
    text = render_text(rep)
    assert text.splitlines()[0] == "rank: OK"
    assert "  value: 2" in text


def test_render_text_booleans_and_empties():
    rep = make_report(
        "x", "ok", {"certified": True, "flag": False, "items": [], "map": {}}
    )
    text = render_text(rep)
    assert "certified: yes" in text
    assert "flag: no" in text
    assert "items: (none)" in text
    assert "map: (none)" in text


def test_render_text_nested():
    rep = make_report(
        "x",
        "ok",
        {"outer": {"inner": 1, "deep": {"leaf": True}}},
        stats={"checked": 9},
    )
    text = render_text(rep)
    lines = text.splitlines()
    assert "  outer:" in lines
    assert "    inner: 1" in lines
    assert "      leaf: yes" in lines
    assert "  --" in lines
    assert "  checked: 9" in lines


def test_render_text_list_of_dicts():
    rep = make_report("x", "ok", {"rows": [{"a": 1}, {"a": 2}], "plain": [1, 2]})
    text = render_text(rep)
    lines = text.splitlines()
    assert "    -" in lines
    assert "      a: 1" in lines
    assert "    - 1" in lines
    # no raw dict reprs leak into the rendering
    assert "{" not in text
