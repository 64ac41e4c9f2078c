import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given

from pgca.algebra import BOLD, Element, Generator, H, I, Ib, J, L
from pgca.errors import BasisMixError, ParseError, SchemaError
from pgca.exprio import (
    INSTANCE_SCHEMA,
    REPORT_SCHEMA,
    dump_json,
    load_instance,
    parse_element,
    parse_scalar,
    print_element,
    save_instance,
    save_report,
)
from pgca.derivations import Derivation
from pgca.scalars import IMAG_UNIT, GaussianRational as Q

from conftest import elements

DOCS = Path(__file__).resolve().parent.parent / "docs"


def test_parse_examples():
    x = parse_element("2*L[3] + (1+1i)*I[-2] - J[0]")
    assert x.terms == {Generator("L", 3): 2, Generator("I", -2): Q(1, 1), Generator("J", 0): -1}
    assert parse_element("L[1] - L[1]") == 0
    assert parse_element("  i * H[ 0 ]+3/4*I[1]") == H(0, IMAG_UNIT) + I(1, Fraction(3, 4))
    assert parse_element("(2i)*J[1]") == J(1, Q(0, 2))
    assert parse_element("(1-1/2i)*L[0]") == L(0, Q(1, Fraction(-1, 2)))
    assert parse_element("0") == 0
    assert parse_element("Ib[2]") == Ib(2)


def test_parse_scalar():
    assert parse_scalar("-3/4") == Fraction(-3, 4)
    assert parse_scalar("(0+1i)") == IMAG_UNIT
    assert parse_scalar("i") == IMAG_UNIT


def test_basis_mix():
    with pytest.raises(BasisMixError) as info:
        parse_element("Ib[2] + L[0]")
    assert info.value.offset == 8


@pytest.mark.parametrize(
    "text, offset, expected",
    [
        ("2*L[3] +", 8, "scalar"),
        ("L[x]", 2, "digit"),
        ("(1+2)*L[0]", 4, "'i'"),
        ("3*L[1] 4", 7, "'+'"),
        ("5", 0, "'*'"),
        ("1/0*L[1]", 2, ()),
    ],
)
def test_positioned_errors(text, offset, expected):
    with pytest.raises(ParseError) as info:
        parse_element(text)
    assert info.value.offset == offset
    if expected:
        assert expected in info.value.expected


def test_offset_is_in_bytes():
    with pytest.raises(ParseError) as info:
        parse_element("L[1] + é")
    assert info.value.offset == 7
    with pytest.raises(ParseError) as info:
        parse_element("é")
    assert info.value.offset == 0


def test_print_examples():
    assert print_element(Element()) == "0"
    assert print_element(Element({Generator("J", 0): -1, Generator("L", 3): 2})) == "2*L[3] - J[0]"
    assert print_element(H(0, IMAG_UNIT)) == "(0+1i)*H[0]"
    assert print_element(-J(3)) == "-J[3]"
    assert print_element(L(1, Fraction(-3, 4)) + I(0, Q(0, -1))) == "-3/4*L[1] + (0-1i)*I[0]"


@given(elements(max_terms=8))
def test_round_trip_plain(x):
    text = print_element(x)
    assert parse_element(text) == x
    assert print_element(parse_element(text)) == text


@given(elements(BOLD, max_terms=8))
def test_round_trip_bold(x):
    assert parse_element(print_element(x)) == x


def _doc(**over):
    doc = {
        "window": {"radius": 12, "interior": 6},
        "table": [{"point": "L[0]", "value": "0"}, {"point": "L[1]", "value": "0"},
                  {"point": "I[0] + J[0]", "value": "0"}],
    }
    doc.update(over)
    return doc


def test_load_minimal_instance():
    inst = load_instance(_doc())
    assert inst.window.radius == 12 and len(inst.table) == 3
    assert save_instance(inst) == _doc()


def test_schema_errors():
    doc = _doc()
    del doc["window"]
    with pytest.raises(SchemaError) as info:
        load_instance(doc)
    assert info.value.path == "/window"
    doc = _doc()
    doc["table"].append({"point": "L[0]", "value": "L[1]"})
    with pytest.raises(SchemaError) as info:
        load_instance(doc)
    assert info.value.path == "/table/3/point" and "duplicate" in str(info.value)
    with pytest.raises(SchemaError) as info:
        load_instance(_doc(table=[{"point": "L[0]", "value": "L["}]))
    assert info.value.path == "/table/0/value"
    with pytest.raises(SchemaError) as info:
        load_instance(_doc(window={"radius": 12, "interior": 9}))
    assert info.value.path == "/window"
    with pytest.raises(SchemaError) as info:
        load_instance(_doc(table=[{"point": "L[9]", "value": "0"}]))
    assert info.value.path == "/table/0/point"
    with pytest.raises(SchemaError) as info:
        load_instance(_doc(window={"radius": "12"}))
    assert info.value.path == "/window/radius"


def test_report_serialization():
    doc = save_report({"command": "x", "status": "pass", "exit_code": 0,
                       "d": Derivation(L(1), Q(1, 2)), "k": Fraction(3, 7)})
    assert doc["d"] == {"inner": "L[1]", "outer": "(1+2i)"}
    assert doc["k"] == "3/7"
    with pytest.raises(TypeError):
        save_report({"command": "x", "status": "pass", "exit_code": 0, "f": 0.5})
    with pytest.raises(SchemaError):
        save_report({"command": "x", "status": "maybe", "exit_code": 0})


def test_published_schemas_match():
    assert json.loads((DOCS / "instance.schema.json").read_text()) == INSTANCE_SCHEMA
    assert json.loads((DOCS / "report.schema.json").read_text()) == REPORT_SCHEMA
    assert dump_json(INSTANCE_SCHEMA) == (DOCS / "instance.schema.json").read_text()
