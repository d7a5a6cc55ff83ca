import json

import pytest

from refcalc.model import (
    ModelError,
    dump_structure,
    load_structure,
    model_to_text,
    parse_linrec,
    parse_model_file,
    parse_model_text,
)


def test_three_declarations(models_dir):
    m = parse_model_file(models_dir / "families.rcm")
    assert [d.kind for d in m.decls] == ["index", "family", "module"]
    assert m.modules["M"].ring == "Q"


@pytest.mark.parametrize("name", ["families.rcm", "reflexive.rcm", "planted_inequality.rcm"])
def test_round_trip(models_dir, name):
    m = parse_model_file(models_dir / name)
    again = parse_model_text(model_to_text(m), path=str(models_dir / name))
    assert again.ast() == m.ast()


def test_type_error_names_declaration(models_dir):
    with pytest.raises(ModelError) as e:
        parse_model_file(models_dir / "rect_on_sum.rcm")
    msg = str(e.value)
    assert "rect_on_sum.rcm:2:19:" in msg
    assert "declaration 'bad'" in msg and "RECT needs a Prod index" in msg


def test_ragged_json_is_located(models_dir):
    with pytest.raises(ModelError, match=r"mult\[1\]: expected 2 rows"):
        parse_model_file(models_dir / "bad_mult.json")


def test_duplicate_names():
    with pytest.raises(ModelError, match="duplicate"):
        parse_model_text("index A = Atom A\nindex A = Atom B\n")


def test_unknown_index():
    with pytest.raises(ModelError, match="unknown index"):
        parse_model_text("module M on Z = FULL\n")


def test_field_mismatch_in_equal():
    text = "index A = Atom A\nmodule M on A = FULL coeff Q\nmodule N on A = FULL coeff Fp:3\nequal M N\n"
    with pytest.raises(ModelError, match="field mismatch"):
        parse_model_text(text)


def test_syntax_error_position():
    with pytest.raises(ModelError, match=r":1:\d+:"):
        parse_model_text("index A = Atom\n")


def test_structure_round_trip(models_dir):
    data = json.loads((models_dir / "group_algebra_z2_f3.json").read_text())
    B = load_structure(data)
    assert load_structure(dump_structure(B)) == B


def test_linrec_literal():
    w = parse_linrec("linrec(Fp:7, f=x - 2, init=[1], structure=multiplicative)")
    assert [int(v) for v in w.values(4)] == [1, 2, 4, 1]
