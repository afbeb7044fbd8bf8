"""qif: quantum interference of force in a two-path interferometer.

Simulates a particle in a Mach-Zehnder interferometer that receives a
momentum kick +delta in one arm only, and shows that post-selection on one
exit port can leave the particle with a *negative* average momentum.

Subpackages:
    wavepacket     momentum-space states on a uniform grid
    interferometer the two-path pipeline and post-selection statistics
    analytic       closed-form Gaussian port statistics (the oracle)
    splitstep      split-step Schrodinger propagation of the kick
    feasibility    SI-unit electron-beam estimates
    spinor         internal-state (cold-atom) protocol
    circuitfile    the .qif experiment-description language
    cli            command-line interface
"""

from . import (  # noqa: F401
    analytic,
    circuitfile,
    feasibility,
    interferometer,
    spinor,
    splitstep,
    wavepacket,
)

__version__ = "0.1.0"
