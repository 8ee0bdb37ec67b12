"""Command-line surface: grammar, formats, exit codes, schema stability."""

import json
import time

import pytest

from rowmotion.cli import (
    ExprParseError,
    RunResult,
    main,
    parse_poset_expr,
)
from rowmotion.constructions import (
    H,
    J,
    K,
    Chain,
    DUnion,
    Layer,
    OSum,
    Prod,
    to_text,
)

JSON_KEYS = {
    "command", "poset", "n_elements", "max_rank",
    "orbits", "checks", "witnesses", "elapsed_ms",
}


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- expression grammar -------------------------------------------------------


def test_grammar_round_trips():
    for text, expr in [
        ("chain(4)", Chain(4)),
        ("k(3)", K(3)),
        ("h(2)", H(2)),
        ("prod(chain(2),chain(3))", Prod(Chain(2), Chain(3))),
        ("osum(chain(1),k(2))", OSum(Chain(1), K(2))),
        ("dunion(chain(2),chain(2))", DUnion(Chain(2), Chain(2))),
        ("j(chain(3))", J(Chain(3))),
        ("layer(E6,4)", Layer("E", 6, 4)),
        ("layer(F4, 4)", Layer("F", 4, 4)),
    ]:
        assert parse_poset_expr(text) == expr
        assert parse_poset_expr(to_text(expr)) == expr


def test_grammar_is_case_and_space_insensitive():
    assert parse_poset_expr(" PROD( Chain(2) , CHAIN(3) ) ") == Prod(
        Chain(2), Chain(3)
    )
    assert parse_poset_expr("Layer(e8, 8)") == Layer("E", 8, 8)


def test_grammar_errors_carry_byte_offsets():
    cases = [
        ("nosuch(3)", 0),
        ("prod(chain(2)", 13),
        ("chain(0)", 6),
        ("chain(x)", 6),
        ("layer(A2,9)", 9),
        ("layer(Q4,1)", 6),
        ("chain(2)extra", 8),
    ]
    for text, offset in cases:
        with pytest.raises(ExprParseError) as info:
            parse_poset_expr(text)
        assert info.value.offset == offset, text


def test_nested_expression():
    text = "prod(chain(2),j(j(prod(chain(2),chain(3)))))"
    expr = parse_poset_expr(text)
    assert expr == Prod(Chain(2), J(J(Prod(Chain(2), Chain(3)))))


# -- commands and formats -----------------------------------------------------


def test_orbits_table(capsys):
    code, out, err = run(capsys, "orbits", "prod(chain(2),chain(3))")
    assert code == 0
    assert "orbit" in out and "6/5" in out
    assert out.count("\n6/5") == 0  # averages rendered inline per row


def test_orbits_json_schema(capsys):
    code, out, _ = run(
        capsys, "orbits", "prod(chain(2),chain(3))", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == JSON_KEYS
    assert doc["command"] == "orbits"
    assert doc["poset"] == "prod(chain(2),chain(3))"
    assert doc["n_elements"] == 6
    assert doc["max_rank"] == 4
    assert len(doc["orbits"]) == 2
    for o in doc["orbits"]:
        assert set(o) == {"orbit_id", "length", "avg_size", "sizes"}
        assert o["avg_size"] == "6/5"
    # keys are sorted for byte-stable output
    assert out.index('"checks"') < out.index('"command"') < out.index('"orbits"')


def test_json_is_deterministic(capsys):
    args = ["orbits", "k(2)", "--format", "json", "--no-timing"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_orbits_csv(capsys):
    code, out, _ = run(
        capsys, "orbits", "prod(chain(2),chain(3))", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "orbit_id,length,avg_size,sizes"
    assert lines[1].startswith("0,5,6/5,")


def test_orbits_seed(capsys):
    code, out, _ = run(
        capsys, "orbits", "chain(4)", "--seed-ideal", "1100",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["orbits"]) == 1
    assert doc["orbits"][0]["length"] == 5


def test_orbits_seed_must_be_down_closed(capsys):
    code, out, err = run(capsys, "orbits", "chain(4)", "--seed-ideal", "0101")
    assert code == 2
    assert "down-closed" in err


def test_verify_grid_passes(capsys):
    code, out, _ = run(capsys, "verify-grid", "2", "3")
    assert code == 0
    assert "[PASS]" in out and "[FAIL]" not in out


def test_verify_grid_word_rows(capsys):
    code, out, _ = run(
        capsys, "verify-grid", "3", "7", "--word", "0011101111"
    )
    assert code == 0
    assert "1:0101110111:2" in out
    assert "9:1100011111:1" in out
    assert "10:0011101111:1" in out


def test_verify_k_passes(capsys):
    code, out, _ = run(capsys, "verify-k", "2", "2")
    assert code == 0
    assert "[FAIL]" not in out
    assert "full-rank codec round-trips" in out


def test_verify_delta1_named_entry(capsys):
    code, out, _ = run(capsys, "verify-delta1", "layer(F4,4)")
    assert code == 0
    assert "orbit averages constant" in out


def test_verify_delta1_expression_fallback(capsys):
    code, out, _ = run(
        capsys, "verify-delta1", "prod(chain(2),chain(4))",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["checks"] and all(c["passed"] for c in doc["checks"])


def test_conjectures_layer(capsys):
    code, out, _ = run(capsys, "conjectures", "layer(A3,2)")
    assert code == 0
    assert "element plus partner fill each orbit" in out


def test_conjectures_need_a_layer(capsys):
    code, out, err = run(capsys, "conjectures", "chain(3)")
    assert code == 2
    assert "layer" in err


def test_encode_grid_ideal(capsys):
    code, out, _ = run(
        capsys, "encode", "prod(chain(2),chain(3))",
        "--seed-ideal", "110000",
    )
    assert code == 0
    assert "0" in out and "1" in out


def test_encode_split_ideal_gets_starred_word(capsys):
    code, out, _ = run(
        capsys, "encode", "prod(chain(2),k(1))",
        "--seed-ideal", "11000000",
    )
    assert code == 0
    assert "01*011" in out


def test_step_word_plain(capsys):
    code, out, _ = run(capsys, "step-word", "0011101111", "--steps", "3")
    assert code == 0
    assert "1:0101110111" in out
    assert "3:1101011101" in out


def test_step_word_starred(capsys):
    code, out, _ = run(capsys, "step-word", "01*011", "--steps", "5")
    assert code == 0
    assert "5:01*011" in out


def test_step_word_rejects_garbage(capsys):
    code, out, err = run(capsys, "step-word", "01x11")
    assert code == 2


def test_catalog_lists_everything(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    for name in ["[2]x[3]x[3]", "[2]xH6", "J3([2]x[3])", "layer(E8,8)"]:
        assert name in out
    assert "[FAIL]" not in out


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "orbits", "prod(chain(2)")
    assert code == 2
    assert "byte 13" in err


def test_cap_exit_code(capsys):
    code, out, err = run(
        capsys, "orbits", "prod(chain(8),prod(chain(8),chain(8)))",
        "--cap", "500",
    )
    assert code == 3
    assert "cap" in err.lower()


def test_cap_stops_before_long_orbit_walks(capsys):
    # 216 elements pass the element guard; the enumeration cap must then
    # fire before any orbit walk can run past it
    start = time.monotonic()
    code, out, err = run(
        capsys, "orbits", "prod(chain(6),prod(chain(6),chain(6)))",
        "--cap", "500",
    )
    assert code == 3
    assert "cap" in err.lower()
    assert time.monotonic() - start < 10


def test_unbudgeted_cap_is_clamped(capsys):
    # without --budget a huge --cap must not admit a huge build
    code, out, err = run(
        capsys, "orbits", "chain(30000)", "--cap", "1000000000",
    )
    assert code == 3
    code, out, err = run(capsys, "orbits", "chain(30000)", "--cap", "50000")
    assert code == 3


def test_csv_failures_go_to_stderr(capsys):
    # a failing check must stay visible in csv mode, which only carries
    # orbit rows on stdout
    from rowmotion.cli import RunResult, _emit

    result = RunResult(command="demo")
    result.checks = [{"name": "x", "passed": False, "details": "boom"}]

    class Args:
        format = "csv"
        no_timing = True

    code = _emit(result, Args())
    captured = capsys.readouterr()
    assert code == 1
    assert "x" in captured.err


def test_run_result_round_trip():
    result = RunResult(command="orbits")
    result.poset = "chain(2)"
    result.n_elements = 2
    result.max_rank = 2
    result.orbits = [{"orbit_id": 0, "length": 3, "avg_size": "2/3",
                      "sizes": [0, 1, 1]}]
    doc = result.to_dict()
    assert set(doc) == JSON_KEYS
    again = RunResult.from_dict(doc)
    assert again.to_dict() == doc


def test_threads_flag_matches_default(capsys):
    base = ["orbits", "prod(chain(3),chain(3))", "--format", "json",
            "--no-timing"]
    _, out1, _ = run(capsys, *base)
    _, out2, _ = run(capsys, *base, "--threads", "4")
    assert out1 == out2
