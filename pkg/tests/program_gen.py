"""Random circuit-program generator and mutator for parser tests."""

import numpy as np

from qif import circuitfile as cf

REPORTS = ("moments", "wavefunction", "conservation")


def random_number(rng) -> float:
    exp = rng.integers(-6, 7)
    return float(np.round(rng.uniform(-10, 10), 6) * 10.0 ** exp)


def random_program_text(rng) -> str:
    """A structurally valid program with randomized parameters."""
    lines = [f"source width={float(rng.uniform(0.2, 3.0))!r} mean={random_number(rng)!r}"]
    lines.append(f"bs t={float(rng.uniform(0.0, 1.0))!r}")
    for _ in range(rng.integers(0, 4)):
        path = str(rng.choice(["A", "B"]))
        if rng.random() < 0.5:
            lines.append(f"kick path={path} delta={float(rng.uniform(-2, 2))!r}")
        else:
            lines.append(f"phase path={path} alpha={random_number(rng)!r}")
    if rng.random() < 0.9:
        lines.append("recombine")
        if rng.random() < 0.9:
            lines.append(f"select port={rng.choice(['C', 'D'])}")
            for _ in range(rng.integers(0, 3)):
                lines.append(f"report {rng.choice(REPORTS)}")
    if rng.random() < 0.3:
        lines.insert(rng.integers(1, len(lines) + 1), "# a comment line")
    return "\n".join(lines) + "\n"


#: Each mutator takes (lines, rng) and returns (mutated_lines,
#: expected_error_line).  Every mutation is invalid by construction.
def _mutate_unknown_instruction(lines, rng):
    i = int(rng.integers(0, len(lines)))
    lines[i] = "frobnicate x=1"
    return lines, i + 1


def _mutate_bad_path(lines, rng):
    i = int(rng.integers(0, len(lines)))
    lines[i] = "kick path=Q delta=0.1"
    # may also trip ordering if placed at line 1 (not source); still that line
    return lines, i + 1


def _mutate_malformed_number(lines, rng):
    i = next(j for j, l in enumerate(lines) if l.startswith("bs"))
    lines[i] = "bs t=0..5"
    return lines, i + 1


def _mutate_duplicate_key(lines, rng):
    i = next(j for j, l in enumerate(lines) if l.startswith("bs"))
    lines[i] = "bs t=0.5 t=0.6"
    return lines, i + 1


def _mutate_unknown_key(lines, rng):
    i = next(j for j, l in enumerate(lines) if l.startswith("source"))
    lines[i] = "source width=1 mean=0 sigma=2"
    return lines, i + 1


def _mutate_missing_key(lines, rng):
    i = next(j for j, l in enumerate(lines) if l.startswith("source"))
    lines[i] = "source width=1"
    return lines, i + 1


def _mutate_duplicate_source(lines, rng):
    lines.append("source width=1 mean=0")
    return lines, len(lines)


def _mutate_drop_source(lines, rng):
    i = next(j for j, l in enumerate(lines) if l.startswith("source"))
    del lines[i]
    first = next(j for j, l in enumerate(lines) if l.strip() and not l.startswith("#"))
    return lines, first + 1


def _mutate_early_select(lines, rng):
    i = next(j for j, l in enumerate(lines) if l.startswith("bs"))
    lines.insert(i + 1, "select port=C")
    return lines, i + 2


def _mutate_bad_report_kind(lines, rng):
    lines.append("select port=C") if not any(
        l.startswith("select") for l in lines
    ) else None
    # ensure pipeline order stays valid up to the bad report
    if not any(l.startswith("recombine") for l in lines):
        return _mutate_unknown_instruction(lines, rng)
    lines.append("report everything")
    return lines, len(lines)


MUTATORS = (
    _mutate_unknown_instruction,
    _mutate_bad_path,
    _mutate_malformed_number,
    _mutate_duplicate_key,
    _mutate_unknown_key,
    _mutate_missing_key,
    _mutate_duplicate_source,
    _mutate_drop_source,
    _mutate_early_select,
    _mutate_bad_report_kind,
)


def mutate_program_text(text, rng):
    """Corrupt one aspect of a valid program; returns (text, expected line)."""
    lines = [l for l in text.splitlines()]
    mutator = MUTATORS[int(rng.integers(0, len(MUTATORS)))]
    lines, err_line = mutator(lines, rng)
    return "\n".join(lines) + "\n", err_line


def assert_roundtrip(text):
    program = cf.parse(text)
    again = cf.parse(cf.serialize(program))
    assert again == program, f"round trip failed for:\n{text}"
    return program
