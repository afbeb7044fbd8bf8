"""Line-oriented experiment-description language (.qif files).

One instruction per line, `name key=value ...`; `#` starts a comment and
blank lines are ignored.  The instruction set mirrors the interferometer
pipeline:

    source width=1 mean=0
    bs t=0.85
    kick path=B delta=0.2
    phase path=B alpha=0
    recombine
    select port=C
    report moments

Numbers are plain decimals with an optional exponent; units are W for
momenta and radians for phases.  Duplicate keys are an error (silent
override would hide experiment mistakes), and instructions must appear in
pipeline order: one source first, then one bs, any kicks/phases, then
recombine, select, report(s).
"""

import math
import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import interferometer as mzi
from . import wavepacket as wp
from .errors import CircuitRuntimeError, QifError

_NUMBER_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z")
_TOKEN_RE = re.compile(r"\S+")

REPORT_KINDS = ("moments", "wavefunction", "conservation")

# key schema per instruction; None marks a bare-word argument (report kind)
_SCHEMAS = {
    "source": {"width": "number", "mean": "number"},
    "bs": {"t": "number"},
    "kick": {"path": "path", "delta": "number"},
    "phase": {"path": "path", "alpha": "number"},
    "recombine": {},
    "select": {"port": "port"},
    "report": None,
}


class ParseError(QifError):
    """Syntax or structure error, pointing at the offending token."""

    def __init__(self, message, line, column=1, token=""):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.token = token


@dataclass(frozen=True)
class Instruction:
    name: str
    args: dict
    line: int = 0

    def __eq__(self, other):
        if not isinstance(other, Instruction):
            return NotImplemented
        # structural equality ignores source positions
        return self.name == other.name and self.args == other.args


@dataclass(frozen=True)
class CircuitProgram:
    instructions: tuple

    def __eq__(self, other):
        if not isinstance(other, CircuitProgram):
            return NotImplemented
        return tuple(self.instructions) == tuple(other.instructions)


def _parse_value(kind, key, raw, line_no, column):
    if kind == "number":
        if not _NUMBER_RE.match(raw):
            raise ParseError(f"malformed number for {key}: {raw!r}", line_no, column, raw)
        value = float(raw)
        if not math.isfinite(value):
            raise ParseError(f"number out of range for {key}: {raw!r}", line_no, column, raw)
        return value
    if kind == "path":
        if raw not in ("A", "B"):
            raise ParseError("path must be A or B", line_no, column, raw)
        return raw
    if kind == "port":
        if raw not in ("C", "D"):
            raise ParseError("port must be C or D", line_no, column, raw)
        return raw
    raise AssertionError(kind)


def _parse_line(line, line_no):
    tokens = [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(line)]
    name, name_col = tokens[0]
    if name not in _SCHEMAS:
        raise ParseError(f"unknown instruction {name!r}", line_no, name_col, name)
    schema = _SCHEMAS[name]

    if schema is None:  # report: single bare kind token
        if len(tokens) != 2:
            raise ParseError("report takes exactly one kind", line_no, name_col, name)
        kind, col = tokens[1]
        if kind not in REPORT_KINDS:
            raise ParseError(
                f"report kind must be one of {', '.join(REPORT_KINDS)}",
                line_no, col, kind,
            )
        return Instruction(name, {"kind": kind}, line_no)

    args = {}
    for raw, col in tokens[1:]:
        if "=" not in raw:
            raise ParseError(f"expected key=value, got {raw!r}", line_no, col, raw)
        key, _, value = raw.partition("=")
        if key not in schema:
            raise ParseError(f"unknown key {key!r} for {name}", line_no, col, raw)
        if key in args:
            raise ParseError(f"duplicate key {key!r}", line_no, col, raw)
        args[key] = _parse_value(schema[key], key, value, line_no, col + len(key) + 1)
    missing = sorted(set(schema) - set(args))
    if missing:
        raise ParseError(f"missing key {missing[0]!r} for {name}", line_no, name_col, name)
    return Instruction(name, args, line_no)


# pipeline stage per instruction; stages must be non-decreasing
_STAGE = {"source": 0, "bs": 1, "kick": 2, "phase": 2, "recombine": 3,
          "select": 4, "report": 5}
_ONCE = ("source", "bs", "recombine", "select")


def _validate(instructions):
    if not instructions or instructions[0].name != "source":
        line = instructions[0].line if instructions else 1
        raise ParseError("missing source", line)
    seen = set()
    stage = 0
    for ins in instructions:
        if ins.name in _ONCE:
            if ins.name in seen:
                raise ParseError(f"duplicate {ins.name}", ins.line)
            seen.add(ins.name)
        s = _STAGE[ins.name]
        if s < stage:
            raise ParseError(f"{ins.name} out of order", ins.line)
        stage = max(stage, s)
        if ins.name in ("kick", "phase") and "bs" not in seen:
            raise ParseError(f"{ins.name} requires bs first", ins.line)
        if ins.name == "recombine" and "bs" not in seen:
            raise ParseError("recombine requires bs first", ins.line)
        if ins.name == "select" and "recombine" not in seen:
            raise ParseError("select requires recombine first", ins.line)
        if ins.name == "report" and "select" not in seen:
            raise ParseError("report requires select first", ins.line)


def parse(text: str) -> CircuitProgram:
    """Parse program text; raises ParseError with line/column on failure."""
    instructions = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0]
        if not stripped.strip():
            continue
        instructions.append(_parse_line(stripped, line_no))
    _validate(instructions)
    return CircuitProgram(tuple(instructions))


def serialize(program: CircuitProgram) -> str:
    """Canonical text form; parse(serialize(p)) == p. Comments are not kept."""
    lines = []
    for ins in program.instructions:
        if ins.name == "report":
            lines.append(f"report {ins.args['kind']}")
        else:
            parts = [ins.name]
            for key in _SCHEMAS[ins.name]:
                value = ins.args[key]
                parts.append(f"{key}={value!r}" if isinstance(value, float)
                             else f"{key}={value}")
            lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


@dataclass
class ExecutionResult:
    """Structured outcome of a program run plus the printable report."""

    outcome_c: Optional[mzi.PortOutcome] = None
    outcome_d: Optional[mzi.PortOutcome] = None
    selected: Optional[mzi.PortOutcome] = None
    conservation_residual: Optional[float] = None
    lines: list = field(default_factory=list)

    @property
    def report(self) -> str:
        return "\n".join(self.lines)


def execute(program: CircuitProgram, grid: Optional[wp.GridSpec] = None) -> ExecutionResult:
    """Run a parsed program on the given grid (default 4096-point grid).

    Deterministic: identical program and grid give bit-identical results.
    Runtime failures (aliasing, dark-port moments) are reported with the
    line number of the offending instruction.
    """
    if grid is None:
        grid = wp.default_grid()
    result = ExecutionResult()
    wf = None            # before bs
    state = None         # between bs and recombine
    bs_t = None
    kick_total = {"A": 0.0, "B": 0.0}

    def fail(ins, exc):
        raise CircuitRuntimeError(f"{ins.name}: {exc}", ins.line) from exc

    for ins in program.instructions:
        try:
            if ins.name == "source":
                wf = wp.gaussian_init(
                    wp.GaussianParams(width=ins.args["width"], mean=ins.args["mean"]),
                    grid,
                )
                source_mean = ins.args["mean"]
            elif ins.name == "bs":
                bs_t = ins.args["t"]
                state = mzi.split(wf, mzi.BeamSplitterCoeffs(bs_t))
            elif ins.name == "kick":
                path, delta = ins.args["path"], ins.args["delta"]
                kick_total[path] += delta
                a, b = state.path_a, state.path_b
                if path == "A":
                    a = wp.shift(a, delta)
                else:
                    b = wp.shift(b, delta)
                state = mzi.TwoPathState(a, b)
            elif ins.name == "phase":
                factor = np.exp(1j * ins.args["alpha"])
                a, b = state.path_a, state.path_b
                if ins.args["path"] == "A":
                    a = wp.MomentumWavefunction(grid, factor * a.amplitudes)
                else:
                    b = wp.MomentumWavefunction(grid, factor * b.amplitudes)
                state = mzi.TwoPathState(a, b)
            elif ins.name == "recombine":
                raw_c, raw_d = mzi.recombine(state)
                result.outcome_c = mzi.port_stats(raw_c, "C")
                result.outcome_d = mzi.port_stats(raw_d, "D")
            elif ins.name == "select":
                result.selected = (result.outcome_c if ins.args["port"] == "C"
                                   else result.outcome_d)
            elif ins.name == "report":
                _run_report(ins, result, bs_t, kick_total, source_mean)
        except CircuitRuntimeError:
            raise
        except QifError as exc:
            fail(ins, exc)
    return result


def _run_report(ins, result, bs_t, kick_total, source_mean):
    kind = ins.args["kind"]
    sel = result.selected
    if kind == "moments":
        if sel.is_dark:
            result.lines.append(
                f"port {sel.port}: P = {sel.probability:.12g}, <p> undefined (dark port)"
            )
        else:
            result.lines.append(
                f"port {sel.port}: P = {sel.probability:.12g}, <p> = {sel.mean_p:.12g}"
            )
    elif kind == "conservation":
        # general two-arm momentum balance; reduces to the t/r identity when
        # only arm B is kicked
        residual = mzi.conservation_residual(
            result.outcome_c, result.outcome_d, bs_t,
            kick_total["B"] - kick_total["A"], source_mean + kick_total["A"],
        )
        result.conservation_residual = residual
        result.lines.append(f"conservation residual = {residual:.12g}")
    elif kind == "wavefunction":
        amp = sel.wavefunction.amplitudes
        p = sel.wavefunction.grid.p
        result.lines.append(f"port {sel.port} wavefunction ({len(p)} nodes): p re im")
        result.lines.extend(
            f"{pk:.17g} {ak.real:.17g} {ak.imag:.17g}" for pk, ak in zip(p, amp)
        )
