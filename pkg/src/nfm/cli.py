"""Command line entry points: ``nfm`` (REPL), ``nfm run``, ``nfm eval``, ``nfm test``."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import NfmError, NfmSyntaxError, ReadError, RecursionDepth, UnexpectedEnd
from .evaluator import Interpreter
from .oracle import ORACLE_CAP
from .syntax import parse_top, read_forms

EXIT_OK = 0
EXIT_EVAL = 1
EXIT_USAGE = 2

RECURSION_LIMIT = 20000


@dataclass
class RunConfig:
    mode: str = "repl"
    target: str | None = None
    print_limit: int | None = 100
    oracle_cap: int = ORACLE_CAP
    stdlib: bool = True

    def interpreter(self):
        return Interpreter(stdlib=self.stdlib, print_limit=self.print_limit)


def execute(interp, node):
    """Run one node; evaluation errors come back as NfmError instances."""
    try:
        return interp.execute(node)
    except RecursionError:
        raise RecursionDepth("evaluation nested too deeply") from None


def transcript(text, config):
    """Replay ``text`` form by form the way the REPL shows it.

    Each input is echoed after ``> `` exactly as written, followed by its
    printed value (nothing for definitions) or an ``Error:`` line.
    """
    interp = config.interpreter()
    out = []
    for form in read_forms(text):
        out.append("> " + text[form.start:form.end])
        try:
            result = execute(interp, parse_top(form))
        except NfmError as e:
            result = e.render()
        if result is not None:
            out.append(result)
    return "".join(line + "\n" for line in out)


# ---------------------------------------------------------------------------
# modes


def repl(config, stdin=None, stdout=None):
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    interp = config.interpreter()
    buffer = ""
    stdout.write("> ")
    stdout.flush()
    for line in stdin:
        buffer += line
        try:
            forms = read_forms(buffer)
        except UnexpectedEnd:
            continue
        except NfmError as e:
            stdout.write(e.render() + "\n")
            forms = []
        buffer = ""
        for form in forms:
            try:
                result = execute(interp, parse_top(form))
            except NfmError as e:
                result = e.render()
            if result is not None:
                stdout.write(result + "\n")
        stdout.write("> ")
        stdout.flush()
    stdout.write("\n")
    return EXIT_OK


def _load(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        print(f"Error: IOError: {e}", file=sys.stderr)
        return None


def run_source(text, config, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        nodes = [parse_top(f) for f in read_forms(text)]
    except (ReadError, NfmSyntaxError) as e:
        stderr.write(e.render() + "\n")
        return EXIT_USAGE
    interp = config.interpreter()
    for node in nodes:
        try:
            result = execute(interp, node)
        except NfmError as e:
            stderr.write(e.render() + "\n")
            return EXIT_EVAL
        if result is not None:
            stdout.write(result + "\n")
    return EXIT_OK


def run_file(path, config, stdout=None, stderr=None):
    text = _load(path)
    if text is None:
        return EXIT_USAGE
    return run_source(text, config, stdout, stderr)


@dataclass
class GoldenResult:
    name: str
    passed: bool
    message: str = ""


def _first_difference(expected, actual):
    exp, act = expected.splitlines(), actual.splitlines()
    for i in range(max(len(exp), len(act))):
        e = exp[i] if i < len(exp) else "<end of file>"
        a = act[i] if i < len(act) else "<end of output>"
        if e != a:
            return f"line {i + 1}: expected {e!r}, got {a!r}"
    return "trailing whitespace differs"


def golden_results(directory, config):
    directory = Path(directory)
    programs = {p.stem: p for p in directory.glob("*.nfm")}
    expected = {p.stem: p for p in directory.glob("*.expected")}
    results = []
    for name in sorted(programs.keys() | expected.keys()):
        if name not in expected:
            results.append(GoldenResult(name, False, "missing .expected"))
            continue
        if name not in programs:
            results.append(GoldenResult(name, False, "missing .nfm"))
            continue
        want = expected[name].read_text(encoding="utf-8")
        try:
            got = transcript(programs[name].read_text(encoding="utf-8"), config)
        except NfmError as e:
            results.append(GoldenResult(name, False, e.render()))
            continue
        if got == want:
            results.append(GoldenResult(name, True))
        else:
            results.append(GoldenResult(name, False, _first_difference(want, got)))
    return results


def run_golden_tests(directory, config, stdout=None):
    stdout = stdout or sys.stdout
    if not Path(directory).is_dir():
        stdout.write(f"Error: IOError: {directory} is not a directory\n")
        return EXIT_USAGE
    results = golden_results(directory, config)
    for r in results:
        stdout.write(f"PASS {r.name}\n" if r.passed else f"FAIL {r.name}: {r.message}\n")
    failed = sum(not r.passed for r in results)
    stdout.write(f"{len(results)} tests, {failed} failed\n")
    return EXIT_OK if failed == 0 else EXIT_EVAL


# ---------------------------------------------------------------------------


def _limit(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("print limit must be >= 0")
    return n or None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--print-limit", type=_limit, default=argparse.SUPPRESS, metavar="N",
                        help="elements shown per collection before '...' (0: no limit; default 100)")
    common.add_argument("--no-stdlib", action="store_true", default=argparse.SUPPRESS,
                        help="skip the pattern-matching list library")
    parser = argparse.ArgumentParser(prog="nfm", parents=[common],
                                     description="Interpreter for non-linear pattern matching "
                                                 "against non-free data types.")
    sub = parser.add_subparsers(dest="mode")
    p = sub.add_parser("run", parents=[common], help="run a .nfm file")
    p.add_argument("target", metavar="FILE")
    p = sub.add_parser("eval", parents=[common], help="evaluate one expression")
    p.add_argument("target", metavar="EXPR")
    p = sub.add_parser("test", parents=[common], help="compare .nfm files with .expected transcripts")
    p.add_argument("target", metavar="DIR")
    return parser


def main(argv=None):
    sys.setrecursionlimit(max(sys.getrecursionlimit(), RECURSION_LIMIT))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    config = RunConfig(
        mode=args.mode or "repl",
        target=getattr(args, "target", None),
        print_limit=getattr(args, "print_limit", 100),
        stdlib=not getattr(args, "no_stdlib", False),
    )
    if config.mode == "run":
        return run_file(config.target, config)
    if config.mode == "eval":
        return run_source(config.target, config)
    if config.mode == "test":
        return run_golden_tests(config.target, config)
    return repl(config)


if __name__ == "__main__":
    sys.exit(main())
