from __future__ import annotations

import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from paveset.cli import main
from paveset.serialize import ParseError, ValidationError, emit_instance, parse_instance, parse_instance_text

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())


def resolve(argv):
    out = list(argv)
    for i, tok in enumerate(out[:-1]):
        if tok == "-i":
            out[i + 1] = str(GOLDEN / out[i + 1])
    return out


def run(argv, capsys):
    code = main(resolve(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden_output_is_byte_exact(case, capsys, monkeypatch):
    monkeypatch.delenv("PAVESET_SEED", raising=False)
    code, out, _ = run(case["argv"] + ["--json"], capsys)
    expected = (GOLDEN / "expected" / f"{case['name']}.json").read_text(encoding="utf-8")
    assert code == case["exit"]
    assert out == expected


def payload(argv, capsys):
    code, out, _ = run(argv + ["--json"], capsys)
    return code, json.loads(out)


def test_stated_values(capsys):
    # values from the worked examples, asserted independently of the golden files
    assert payload(["integrate", "-i", "two_point.json", "-f", "f", "-a", "alpha"], capsys) == (
        0,
        {"schema_version": 1, "command": "integrate", "value": "4"},
    )
    code, p = payload(["measurable", "-i", "two_point.json", "-f", "h", "-E", "E"], capsys)
    assert code == 1 and p["missing_level"] == [1] and p["measurable"] is False
    code, p = payload(["enumerate-monotone", "--n", "3", "--count-only"], capsys)
    assert code == 0 and p["count"] == 19
    code, p = payload(["integrate", "-i", "two_point.json", "-f", "f", "-a", "alpha", "--over", "0"], capsys)
    assert p["value"] == "3"
    code, p = payload(["integrate", "-i", "two_point.json", "-f", "s", "-a", "half"], capsys)
    assert p["value"] == "-1/2"
    code, p = payload(["caratheodory", "-i", "two_point.json", "-m", "flat"], capsys)
    assert p["algebra"] == [[], [0, 1]]
    code, p = payload(["modular", "-i", "two_point.json", "-d", "top"], capsys)
    assert code == 1 and p["pair"] == [[0], [1]]
    code, p = payload(["atoms", "-i", "atoms.json", "-E", "A"], capsys)
    assert p["atoms"] == [[0, 1], [2, 3]]
    code, p = payload(["property-n", "-i", "property_n.json", "-K", "K", "-U", "U"], capsys)
    assert code == 1 and p["counterexample"] == [[0], [0, 1, 2]]
    code, p = payload(["integrate", "-i", "nat.json", "-f", "seven", "-c", "at0"], capsys)
    assert p["value"] == "7"


def test_plain_text_output(capsys):
    code, out, _ = run(["integrate", "-i", "two_point.json", "-f", "f", "-a", "alpha"], capsys)
    assert (code, out) == (0, "4\n")
    code, out, _ = run(["enumerate-monotone", "--n", "3", "--count-only"], capsys)
    assert (code, out) == (0, "19\n")


def test_oracle_and_level_set_check_agree_on_golden_instances(capsys):
    for fn in ("f", "g", "h", "ind0"):
        for paving in ("E", "P", "T", "antichain"):
            argv = ["-i", "two_point.json", "-f", fn, "-E", paving]
            c1, p1 = payload(["measurable", *argv], capsys)
            c2, p2 = payload(["oracle", *argv], capsys)
            assert c1 == c2 and p1["measurable"] == p2["measurable"]


def test_witness_capacities_reproduce_the_gap_through_integrate(tmp_path, capsys):
    _, w = payload(["witness", "-i", "two_point.json", "-f", "h", "-E", "E"], capsys)
    doc = {
        "ground": 2,
        "capacities": {"alpha": w["alpha"], "beta": w["beta"]},
        "functions": {"g": w["g"]},
    }
    path = tmp_path / "witness.json"
    path.write_text(json.dumps(doc))
    values = []
    for cap in ("alpha", "beta"):
        code = main(["integrate", "-i", str(path), "-f", "g", "-a", cap, "--json"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        values.append(F(out["value"]))
    assert values == [F(w["integral_alpha"]), F(w["integral_beta"])]
    assert values[0] < values[1]


@pytest.mark.parametrize("name", ["two_point", "property_n", "atoms", "nat", "minimal"])
def test_instances_round_trip_through_the_emitter(name):
    doc = parse_instance(GOLDEN / f"{name}.json")
    text = emit_instance(doc)
    assert emit_instance(parse_instance_text(text)) == text


def test_json_outputs_reparse(capsys):
    for case in CASES:
        _, out, _ = run(case["argv"] + ["--json"], capsys)
        assert json.loads(out)["schema_version"] == 1


def test_parse_examples():
    doc = parse_instance(GOLDEN / "minimal.json")
    assert doc.pavings["E"].as_lists() == [[], [0], [0, 1]]
    with pytest.raises(ValidationError) as err:
        parse_instance(GOLDEN / "bad_capacity.json")
    assert err.value.invariant == "NonzeroEmpty"
    doc = parse_instance_text('{"ground": 1, "functions": {"f": ["1/3"]}}')
    assert doc.functions["f"].values == (F(1, 3),)
    assert '"1/3"' in emit_instance(doc)


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as err:
        parse_instance_text('{"ground": 2,,}')
    assert "line 1" in str(err.value)


def test_usage_errors_exit_3(capsys):
    assert main(["no-such-command"]) == 3
    assert main([]) == 3
    capsys.readouterr()


def test_seed_precedence(monkeypatch, capsys):
    argv = ["verify", "--suite", "theorem2", "--samples", "5"]
    monkeypatch.delenv("PAVESET_SEED", raising=False)
    assert payload(argv, capsys)[1]["seed"] == 1981
    monkeypatch.setenv("PAVESET_SEED", "5")
    assert payload(argv, capsys)[1]["seed"] == 5
    assert payload(argv + ["--seed", "9"], capsys)[1]["seed"] == 9
