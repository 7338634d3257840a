import json

import pytest

from purity_lab.cli import COMMANDS, SessionError, main, parse_session
from purity_lab.cli.fixtures import FIXTURES


@pytest.fixture(scope="module")
def e1_path(tmp_path_factory):
    p = tmp_path_factory.mktemp("s") / "e1.pl"
    p.write_text(FIXTURES["e1"])
    return str(p)


@pytest.fixture(scope="module")
def e2_path(tmp_path_factory):
    p = tmp_path_factory.mktemp("s") / "e2.pl"
    p.write_text(FIXTURES["e2"])
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fixtures_parse():
    for text in FIXTURES.values():
        parse_session(text)


def test_golden_outputs(capsys, e1_path):
    assert run(capsys, "eval-pp", e1_path, "twice", "M")[:2] == (0, "{0, 2}\n")
    assert run(capsys, "rr-apply", e1_path, "L=Lambda")[:2] == (0, "(1 | 1,1 | [1;1])\n")
    assert run(capsys, "ord-bounds", "2", "0")[:2] == (0, "lower=2 upper=3\n")


def test_deterministic(capsys, e1_path):
    for argv in (["maranda-check", e1_path, "R1", "R2", "2"], ["rr-realize", e1_path, "all"], ["hom", e1_path, "M", "M"]):
        a, b = run(capsys, *argv), run(capsys, *argv)
        assert a == b and a[0] == 0


def test_pp_vs_end(capsys, e1_path):
    code, out, _ = run(capsys, "pp-vs-end", e1_path, "M", "twice")
    assert code == 0 and "agree: true" in out
    code, out, _ = run(capsys, "pp-vs-end", e1_path, "L2", "x1 = x1")
    assert code == 0 and "agree: false" in out


def test_exit_codes(capsys, e1_path):
    assert run(capsys, "interp-full", e1_path, "modp")[0] == 1
    assert run(capsys, "hom", e1_path, "M", "Nope")[0] == 2
    code, _, err = run(capsys, "reduce", e1_path, "Lambda", "9")
    assert code == 3 and "Precision" in err


def test_json(capsys, e1_path):
    code, out, _ = run(capsys, "--json", "eval-pp", e1_path, "twice", "M")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["text"] == "{0, 2}"
    code, out, _ = run(capsys, "--json", "hom", e1_path, "M", "Nope")
    doc = json.loads(out)
    assert code == 2 and doc["ok"] is False and doc["error"] in ("InputError", "SessionError")


def test_session_errors_carry_line_numbers(capsys, tmp_path):
    p = tmp_path / "bad.pl"
    p.write_text("purity-lab/1\nring Z4 2 2\nmodule M Z4 nonsense\n")
    with pytest.raises(SessionError, match="line 3"):
        parse_session(p.read_text())
    code, _, err = run(capsys, "hom", str(p), "M", "M")
    assert code == 2 and "line 3" in err


def test_e2_commands(capsys, e2_path):
    code, out, _ = run(capsys, "zg-cbrank", e2_path, "all")
    assert code == 0 and "G1" in out
    code, out, _ = run(capsys, "zg-closure", e2_path, "A[3..]")
    assert code == 0 and "A[inf]" in out and "div:S0" in out
    code, out, _ = run(capsys, "zg-closed", e2_path, "A[1]")
    assert code == 0 and out.startswith("false") and "div:S0" in out


def test_fixtures_command(capsys):
    code, out, _ = run(capsys, "fixtures", "e1")
    assert code == 0 and out.strip() == FIXTURES["e1"].strip()


def test_every_command_has_usage():
    assert len(COMMANDS) >= 30
    for name, (handler, _, usage) in COMMANDS.items():
        assert callable(handler) and isinstance(usage, str)
