"""Single beams as unnormalized kets, for pencil-and-paper work.

This is the lightweight alternative to the full density-operator
stacks: a beam is just a ket whose squared norm is the beam intensity,
so a beam of intensity 1 holds a normalized state and a fully blocked
beam is the zero ket.  It cannot express unpolarized light or
correlations between beams, which is why the sources here are the pure
basis beams rather than a random one.

Every device is a composition of Dirac products: a splitter applies
the two projectors |n+><n+| and |n-><n-|, a recombiner adds the
projected ports back together, and a field applies the precession
unitary.  For any pure input the intensities agree exactly with the
density-operator lab.
"""

import math

import numpy as np

from . import core
from .core import Ket, dagger, nminus, nplus, rotation

__all__ = [
    "Beam", "intensity", "split", "recombine", "apply_bfield",
    "filter_plus", "filter_minus",
    "xp_beam", "xm_beam", "yp_beam", "ym_beam", "zp_beam", "zm_beam",
    "xp_filter", "xm_filter", "yp_filter", "ym_filter", "zp_filter", "zm_filter",
]

_X = (math.pi / 2, 0.0)
_Y = (math.pi / 2, math.pi / 2)
_Z = (0.0, 0.0)


class Beam:
    """A beam carrying the unnormalized ket ``amp``."""

    __slots__ = ("amp",)

    def __init__(self, amp: Ket):
        if not isinstance(amp, Ket):
            raise TypeError("a beam is built from a ket")
        self.amp = amp

    def __repr__(self):
        return f"Beam of intensity {intensity(self)}"


xp_beam = Beam(core.xp)
xm_beam = Beam(core.xm)
yp_beam = Beam(core.yp)
ym_beam = Beam(core.ym)
zp_beam = Beam(core.zp)
zm_beam = Beam(core.zm)


def intensity(beam: Beam) -> float:
    """Squared norm of the beam's ket."""
    return float(np.vdot(beam.amp.amp, beam.amp.amp).real)


def split(theta: float, phi: float, beam: Beam) -> tuple[Beam, Beam]:
    """Analyzer along (theta, phi): the (spin-up, spin-down) output pair."""
    plus, minus = nplus(theta, phi), nminus(theta, phi)
    return (
        Beam(plus * (dagger(plus) * beam.amp)),
        Beam(minus * (dagger(minus) * beam.amp)),
    )


def recombine(theta: float, phi: float, ports: tuple[Beam, Beam]) -> Beam:
    """Reversed analyzer along (theta, phi) merging a (plus, minus) port pair.

    Each port keeps only its matching spin component, so feeding back an
    unflipped split along the same axis reconstructs the original beam.
    """
    plus, minus = nplus(theta, phi), nminus(theta, phi)
    plus_port, minus_port = ports
    return Beam(
        plus * (dagger(plus) * plus_port.amp)
        + minus * (dagger(minus) * minus_port.amp)
    )


def apply_bfield(theta: float, phi: float, omega: float, beam: Beam) -> Beam:
    """Precess the beam's spin by omega about the (theta, phi) axis."""
    return Beam(rotation(theta, phi, omega) * beam.amp)


def filter_plus(theta: float, phi: float, beam: Beam) -> Beam:
    """Keep the spin-up component along (theta, phi)."""
    return split(theta, phi, beam)[0]


def filter_minus(theta: float, phi: float, beam: Beam) -> Beam:
    """Keep the spin-down component along (theta, phi)."""
    return split(theta, phi, beam)[1]


def xp_filter(beam: Beam) -> Beam:
    return filter_plus(*_X, beam)


def xm_filter(beam: Beam) -> Beam:
    return filter_minus(*_X, beam)


def yp_filter(beam: Beam) -> Beam:
    return filter_plus(*_Y, beam)


def ym_filter(beam: Beam) -> Beam:
    return filter_minus(*_Y, beam)


def zp_filter(beam: Beam) -> Beam:
    return filter_plus(*_Z, beam)


def zm_filter(beam: Beam) -> Beam:
    return filter_minus(*_Z, beam)
