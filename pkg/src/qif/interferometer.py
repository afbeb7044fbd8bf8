"""Two-path Mach-Zehnder pipeline with post-selection statistics.

Conventions: the first beam splitter has real transmission t and reflection
i*r with r = sqrt(1 - t^2); the second beam splitter is fixed balanced with
coefficients 1/sqrt(2) (transmission) and i/sqrt(2) (reflection).  Only the
total arm phase alpha = beta + gamma enters the dynamics; an unobservable
global phase on port D is dropped.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import wavepacket as wp
from .errors import GridMismatchError
from .wavepacket import MomentumWavefunction

#: Ports with probability below this report an undefined mean instead of 0/0.
DARK_PORT_THRESHOLD = 1e-15

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class BeamSplitterCoeffs:
    """Transmission t in [0, 1]; reflection r = sqrt(1 - t^2), phase i."""

    t: float

    def __post_init__(self):
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"transmission must lie in [0, 1], got {self.t}")

    @property
    def r(self) -> float:
        return float(np.sqrt(1.0 - self.t * self.t))


@dataclass(frozen=True)
class PhaseSetting:
    """Propagation phase beta and kick phase gamma; only their sum acts."""

    beta: float = 0.0
    gamma: float = 0.0

    @property
    def alpha(self) -> float:
        return self.beta + self.gamma


@dataclass(frozen=True)
class TwoPathState:
    """Wavefunction components in arms A and B, on a shared grid."""

    path_a: MomentumWavefunction
    path_b: MomentumWavefunction

    def __post_init__(self):
        if self.path_a.grid != self.path_b.grid:
            raise GridMismatchError("arm wavefunctions must share a grid")

    def total_norm(self) -> float:
        return wp.norm(self.path_a) + wp.norm(self.path_b)


@dataclass(frozen=True)
class PortOutcome:
    """Post-selection result at one exit port.

    mean_p is None for a dark port (probability below threshold), where the
    conditional average is undefined.
    """

    port: str
    probability: float
    wavefunction: MomentumWavefunction
    mean_p: Optional[float]

    @property
    def is_dark(self) -> bool:
        return self.mean_p is None


def split(input_wf: MomentumWavefunction, bs: BeamSplitterCoeffs) -> TwoPathState:
    """First beam splitter: arm A gets t*Phi, arm B gets i*r*Phi."""
    amp = input_wf.amplitudes
    return TwoPathState(
        path_a=MomentumWavefunction(input_wf.grid, bs.t * amp),
        path_b=MomentumWavefunction(input_wf.grid, 1j * bs.r * amp),
    )


def apply_kick(state: TwoPathState, delta: float, phase: PhaseSetting) -> TwoPathState:
    """Impulsive kick in arm B: shift by delta and multiply by e^(i alpha)."""
    kicked = wp.shift(state.path_b, delta)
    factor = np.exp(1j * phase.alpha)
    return TwoPathState(
        path_a=state.path_a,
        path_b=MomentumWavefunction(kicked.grid, factor * kicked.amplitudes),
    )


def recombine(state: TwoPathState):
    """Second (balanced) beam splitter.

    Returns the raw, unnormalized port wavefunctions
        raw_c = (a + i b) / sqrt(2),   raw_d = (a - i b) / sqrt(2),
    which for a state prepared by split + apply_kick reduce to
        raw_c = (t Phi(p) - r e^(i alpha) Phi(p - delta)) / sqrt(2)
    and the + counterpart at port D.  Pointwise unitary, so
    norm(raw_c) + norm(raw_d) equals the total input norm.
    """
    a = state.path_a.amplitudes
    b = state.path_b.amplitudes
    grid = state.path_a.grid
    raw_c = MomentumWavefunction(grid, (a + 1j * b) / _SQRT2)
    raw_d = MomentumWavefunction(grid, (a - 1j * b) / _SQRT2)
    return raw_c, raw_d


def port_stats(raw: MomentumWavefunction, port: str) -> PortOutcome:
    """Probability, normalized wavefunction and conditional mean at a port."""
    prob = wp.norm(raw)
    if prob < DARK_PORT_THRESHOLD:
        return PortOutcome(port=port, probability=prob, wavefunction=raw, mean_p=None)
    normalized = MomentumWavefunction(raw.grid, raw.amplitudes / np.sqrt(prob))
    return PortOutcome(
        port=port,
        probability=prob,
        wavefunction=normalized,
        mean_p=wp.mean_momentum(normalized),
    )


def _weighted_mean(outcome: PortOutcome) -> float:
    # P_j * <p>_j; a dark port contributes nothing (raw moment < threshold).
    if outcome.is_dark:
        return 0.0
    return outcome.probability * outcome.mean_p


def conservation_residual(out_c: PortOutcome, out_d: PortOutcome,
                          t: float, delta: float, mean_in: float) -> float:
    """|P_C <p>_C + P_D <p>_D - (t^2 mean_in + r^2 (mean_in + delta))|.

    The post-selected averages, weighted by their probabilities, must
    reproduce the unconditional momentum balance of the two arms.
    """
    r_sq = 1.0 - t * t
    expected = t * t * mean_in + r_sq * (mean_in + delta)
    return abs(_weighted_mean(out_c) + _weighted_mean(out_d) - expected)


def run_mzi(input_wf: MomentumWavefunction, t: float, delta: float,
            phase: PhaseSetting = PhaseSetting()):
    """Full pipeline: split, kick arm B, recombine, post-select both ports."""
    state = split(input_wf, BeamSplitterCoeffs(t))
    state = apply_kick(state, delta, phase)
    raw_c, raw_d = recombine(state)
    return port_stats(raw_c, "C"), port_stats(raw_d, "D")
