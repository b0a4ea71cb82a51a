"""Shared test helpers: a pure-state mirror of the stack operations.

The density-operator lab and the single-ket language must agree on
every pure flow, so tests interpret command sequences twice: once with
the real stack and once here, where a stack is a plain list of Beams
(bottom first) driven only by simple-beam calls.  The two routes share
no stack code.
"""

import numpy as np

from sglab import beam
from sglab.beamstack import BeamStack
from sglab.core import Ket
from sglab.script import Command, direction


def random_ket(rng) -> Ket:
    amp = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return Ket(amp / np.linalg.norm(amp))


def pure_stack(ket: Ket) -> BeamStack:
    """A one-beam stack holding the pure state |ket><ket|."""
    return BeamStack(1, np.outer(ket.amp, ket.amp.conj()))


def pure_apply(beams: list, cmd: Command) -> list:
    kind = cmd.kind
    if kind == "show":
        return list(beams)
    if kind == "drop":
        return beams[:-1]
    if kind == "flip":
        return beams[:-2] + [beams[-1], beams[-2]]
    theta, phi = direction(cmd)
    if kind == "split":
        plus, minus = beam.split(theta, phi, beams[-1])
        return beams[:-1] + [plus, minus]
    if kind == "recombine":
        merged = beam.recombine(theta, phi, (beams[-2], beams[-1]))
        return beams[:-2] + [merged]
    if kind == "bfield":
        turned = beam.apply_bfield(theta, phi, cmd.omega, beams[-1])
        return beams[:-1] + [turned]
    if kind == "filter":
        pick = beam.filter_plus if cmd.sign == "+" else beam.filter_minus
        return beams[:-1] + [pick(theta, phi, beams[-1])]
    raise ValueError(kind)


def pure_intensities(beams: list) -> list:
    return [beam.intensity(b) for b in beams]


def random_command(rng, count: int) -> tuple[Command, int]:
    """A random device command legal on a stack of ``count`` beams.

    Never drains the stack below one beam, so any sequence it produces
    is legal end to end.  Returns the command and the new beam count.
    """
    kinds = ["split", "filter", "bfield"]
    if count >= 2:
        kinds += ["recombine", "flip", "drop"]
    kind = str(rng.choice(kinds))
    fields = {}
    if kind not in ("flip", "drop"):
        if rng.random() < 0.5:
            fields["axis"] = str(rng.choice(["x", "y", "z"]))
        else:
            fields["theta"] = float(rng.uniform(0, np.pi))
            fields["phi"] = float(rng.uniform(0, 2 * np.pi))
    if kind == "filter":
        fields["sign"] = "+" if rng.random() < 0.5 else "-"
    if kind == "bfield":
        fields["omega"] = float(rng.uniform(-4 * np.pi, 4 * np.pi))
    delta = {"split": 1, "recombine": -1, "drop": -1}.get(kind, 0)
    return Command(kind, **fields), count + delta
