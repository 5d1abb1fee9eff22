import io
import shutil
from pathlib import Path

import pytest

from nfm.cli import RunConfig, main, repl, run_file, run_golden_tests, transcript
from nfm.syntax import read_forms

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def run_repl(text, **kw):
    out = io.StringIO()
    assert repl(RunConfig(**kw), io.StringIO(text), out) == 0
    return out.getvalue()


def test_repl_session():
    out = run_repl("(match-all {1 2 3} (list integer) [<cons $x $ts> [x ts]])\n")
    assert out == "> {[1 {2 3}]}\n> \n"


def test_repl_errors_do_not_end_the_session():
    out = run_repl("(undefined)\n(define $x 1)\nx\n")
    assert out == "> Error: UnboundVariable: undefined\n> > 1\n> \n"


def test_repl_multiline_continuation():
    out = run_repl("(+ 1\n   2)\n")
    assert out == "> 3\n> \n"


def test_repl_read_error():
    out = run_repl(")\n1\n")
    assert out.startswith("> Error: UnbalancedDelimiter")
    assert out.endswith("> 1\n> \n")


def test_defaults():
    c = RunConfig()
    assert (c.mode, c.print_limit, c.oracle_cap, c.stdlib) == ("repl", 100, 7, True)


def test_run_file_comb(tmp_path, capsys):
    assert run_file(CORPUS / "comb.nfm", RunConfig()) == 0
    assert capsys.readouterr().out == (
        "{{1 2} {1 3} {2 3} {1 4} {2 4} {3 4}}\n"
        "{{1 2} {1 3} {2 3} {1 4} {2 4} {3 4}}\n"
        "{{1 2 3} {1 2 4} {1 3 4} {2 3 4}}\n")


def test_run_empty_file(tmp_path, capsys):
    f = tmp_path / "empty.nfm"
    f.write_text("")
    assert run_file(f, RunConfig()) == 0
    assert capsys.readouterr() == ("", "")


def test_run_file_misplaced_ellipsis(tmp_path, capsys):
    f = tmp_path / "bad.nfm"
    f.write_text("1\n(match-all {1} (list integer) [<cons ... $x> x])\n")
    assert run_file(f, RunConfig()) == 2
    out, err = capsys.readouterr()
    assert out == ""
    assert err.startswith("Error: MisplacedEllipsis") and "<cons ... $x>" in err


def test_run_file_eval_error_aborts(tmp_path, capsys):
    f = tmp_path / "err.nfm"
    f.write_text("1\n(nope)\n2\n")
    assert run_file(f, RunConfig()) == 1
    out, err = capsys.readouterr()
    assert out == "1\n" and err == "Error: UnboundVariable: nope\n"


def test_run_missing_file(tmp_path, capsys):
    assert run_file(tmp_path / "absent.nfm", RunConfig()) == 2


def test_main_modes(capsys):
    assert main(["eval", "(take 3 primes)"]) == 0
    assert capsys.readouterr().out == "{2 3 5}\n"
    assert main(["eval", "--print-limit", "2", "nats"]) == 0
    assert capsys.readouterr().out == "{1 2 ...}\n"
    assert main(["--print-limit", "0", "eval", "(take 3 nats)"]) == 0
    assert capsys.readouterr().out == "{1 2 3}\n"
    assert main(["eval", "--no-stdlib", "(member? 1 {1})"]) == 1
    assert main(["eval", "(+ 1"]) == 2
    assert main(["bogus"]) == 2


@pytest.mark.parametrize("limit", [None, 5, 40, 100])
def test_print_limit_does_not_change_small_outputs(limit):
    text = (CORPUS / "cons.nfm").read_text()
    assert transcript(text, RunConfig(print_limit=limit)) == (CORPUS / "cons.expected").read_text()


def test_golden_corpus_passes():
    out = io.StringIO()
    assert run_golden_tests(CORPUS, RunConfig(), out) == 0
    lines = out.getvalue().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].endswith(" tests, 0 failed")


def test_golden_reports_corrupted_file(tmp_path):
    for p in CORPUS.glob("*"):
        if p.stem in ("cons", "join", "library"):
            shutil.copy(p, tmp_path / p.name)
    bad = tmp_path / "join.expected"
    bad.write_text(bad.read_text().replace("[{1} {2 3}]", "[{1} {3 2}]"))
    out = io.StringIO()
    assert run_golden_tests(tmp_path, RunConfig(), out) == 1
    report = out.getvalue()
    assert "PASS cons" in report and "PASS library" in report
    assert "FAIL join: line 2:" in report
    assert report.endswith("3 tests, 1 failed\n")


def test_golden_missing_pair(tmp_path):
    (tmp_path / "lonely.nfm").write_text("1\n")
    out = io.StringIO()
    assert run_golden_tests(tmp_path, RunConfig(), out) == 1
    assert "FAIL lonely: missing .expected" in out.getvalue()


def test_golden_empty_dir(tmp_path, capsys):
    assert main(["test", str(tmp_path)]) == 0
    assert capsys.readouterr().out == "0 tests, 0 failed\n"


@pytest.mark.parametrize("name", sorted(p.stem for p in CORPUS.glob("*.nfm")))
def test_transcript_replay_through_run_file(name, capsys):
    # dropping the echoed inputs from a transcript leaves exactly what `run` prints
    source = (CORPUS / f"{name}.nfm").read_text()
    expected = (CORPUS / f"{name}.expected").read_text()
    for form in read_forms(source):
        echo = "> " + source[form.start:form.end] + "\n"
        expected = expected.replace(echo, "", 1)
    assert run_file(CORPUS / f"{name}.nfm", RunConfig()) == 0
    assert capsys.readouterr().out == expected
