"""Stacks of particle beams threaded through Stern-Gerlach devices.

A stack of B beams is one density operator rho on the joint
spin (x) path space of a single particle, dimension 2B.  The basis
orders spin first: joint index s*B + j for spin s in {z+, z-} and path
j in 0..B-1, with path 0 the bottom of the stack and path B-1 the top.
Off-diagonal path blocks carry the coherences that let a recombiner
restore a split beam, and tracing out spin gives each beam's intensity:

    intensity(j) = rho[j, j] + rho[B + j, B + j]

The source is unpolarized, so a fresh beam is the maximally mixed
rho = I/2 with intensity 1.  Devices act as explicit matrices
rho -> M rho M^dagger; splitters and recombiners change B, so M is
rectangular.  Dropping a beam discards both its population and all its
cross-coherences, which is what makes filtered sequences irreversible
while split-then-recombine is not.

All operations return a new stack; values are immutable.
"""

import math

import numpy as np

from .core import nminus, nplus, rotation

__all__ = [
    "BeamStack", "BeamStackError", "empty_stack", "random_beam", "push_random",
    "intensities", "pretty", "split", "drop_beam", "flip_beams", "recombine",
    "apply_bfield", "filter_plus", "filter_minus",
    "split_x", "split_y", "split_z", "recombine_x", "recombine_y", "recombine_z",
    "xp_filter", "xm_filter", "yp_filter", "ym_filter", "zp_filter", "zm_filter",
    "bfield_x", "bfield_y", "bfield_z",
]

X_AXIS = (math.pi / 2, 0.0)
Y_AXIS = (math.pi / 2, math.pi / 2)
Z_AXIS = (0.0, 0.0)


class BeamStackError(Exception):
    """An operation asked for more beams than the stack holds.

    ``code`` is a stable machine-readable tag ("no-beam",
    "need-two-beams") reused by the command service.
    """

    def __init__(self, message: str, code: str):
        super().__init__(message)
        self.code = code


class BeamStack:
    """An immutable stack of beams; see the module docstring for the model."""

    __slots__ = ("beam_count", "rho")

    def __init__(self, beam_count: int, rho):
        a = np.array(rho, dtype=complex)
        if a.shape != (2 * beam_count, 2 * beam_count):
            raise ValueError(
                f"a {beam_count}-beam stack needs a {2 * beam_count}x{2 * beam_count}"
                f" matrix, got shape {a.shape}"
            )
        if a.size and not np.isfinite(a).all():
            raise ValueError("density matrix entries must be finite")
        # re-symmetrize so rounding from M rho M^dagger can never accumulate
        a = (a + a.conj().T) / 2
        a.flags.writeable = False
        self.beam_count = beam_count
        self.rho = a

    def __repr__(self):
        if self.beam_count == 0:
            return "(no beams)"
        return str(self)

    def __str__(self):
        return "\n".join(
            f"Beam of intensity {pretty(v)}" for v in intensities(self)
        )


def pretty(value: float) -> float:
    """An intensity as displayed: -0.0 and sub-1e-12 negatives clamp to 0.0."""
    return 0.0 if -1e-12 <= value <= 0.0 else value


def empty_stack() -> BeamStack:
    """The stack with no beams."""
    return BeamStack(0, np.zeros((0, 0)))


def random_beam() -> BeamStack:
    """A single unpolarized beam of intensity 1: rho = I/2."""
    return BeamStack(1, np.eye(2) / 2)


def push_random(stack: BeamStack) -> BeamStack:
    """Add a fresh unpolarized beam on top, uncorrelated with the rest."""
    b = stack.beam_count + 1
    embed = np.kron(np.eye(2), np.eye(b, stack.beam_count))
    rho = embed @ stack.rho @ embed.T
    return BeamStack(b, rho + _on_path(np.eye(2) / 2, b - 1, b - 1, b, b))


def intensities(stack: BeamStack) -> list[float]:
    """Beam intensities from bottom (index 0) to top."""
    b = stack.beam_count
    return [float((stack.rho[j, j] + stack.rho[b + j, b + j]).real) for j in range(b)]


def _on_path(spin, j: int, k: int, b_out: int, b_in: int) -> np.ndarray:
    """The joint-space block spin (x) |j><k| as a 2*b_out x 2*b_in matrix."""
    path = np.zeros((b_out, b_in))
    path[j, k] = 1.0
    return np.kron(np.asarray(spin, dtype=complex), path)


def _projectors(theta: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    plus = nplus(theta, phi).amp
    minus = nminus(theta, phi).amp
    return np.outer(plus, plus.conj()), np.outer(minus, minus.conj())


def _require(stack: BeamStack, needed: int, doing: str) -> None:
    if stack.beam_count < needed:
        if needed == 1:
            raise BeamStackError(f"no beam to {doing}", code="no-beam")
        raise BeamStackError(f"need two beams to {doing}", code="need-two-beams")


def split(theta: float, phi: float, stack: BeamStack) -> BeamStack:
    """Pass the top beam through a Stern-Gerlach analyzer along (theta, phi).

    The spin-up component replaces the top beam and the spin-down
    component lands above it, so the new top is the minus port.  The
    isometry keeps every cross-coherence, which is why a recombiner can
    undo this.
    """
    _require(stack, 1, "split")
    b = stack.beam_count
    pp, pm = _projectors(theta, phi)
    keep = np.zeros((b + 1, b))
    keep[: b - 1, : b - 1] = np.eye(b - 1)
    v = (
        np.kron(np.eye(2), keep)
        + _on_path(pp, b - 1, b - 1, b + 1, b)
        + _on_path(pm, b, b - 1, b + 1, b)
    )
    return BeamStack(b + 1, v @ stack.rho @ v.conj().T)


def drop_beam(stack: BeamStack) -> BeamStack:
    """Block the top beam: its population and all its coherences are lost."""
    _require(stack, 1, "drop")
    b = stack.beam_count
    q = np.kron(np.eye(2), np.eye(b - 1, b))
    return BeamStack(b - 1, q @ stack.rho @ q.T)


def flip_beams(stack: BeamStack) -> BeamStack:
    """Swap the top two beams."""
    _require(stack, 2, "flip")
    b = stack.beam_count
    perm = np.eye(b)
    perm[[b - 2, b - 1]] = perm[[b - 1, b - 2]]
    u = np.kron(np.eye(2), perm)
    return BeamStack(b, u @ stack.rho @ u.T)


def recombine(theta: float, phi: float, stack: BeamStack) -> BeamStack:
    """Merge the top two beams in a reversed analyzer along (theta, phi).

    The plus port is the second beam from the top and the minus port is
    the top beam, mirroring what a splitter just produced.  Components
    entering the wrong port are discarded, so a recombiner only restores
    the original beam when it faces the same axis as the splitter and
    the beams are unflipped.
    """
    _require(stack, 2, "recombine")
    b = stack.beam_count
    pp, pm = _projectors(theta, phi)
    keep = np.zeros((b - 1, b))
    keep[: b - 2, : b - 2] = np.eye(b - 2)
    w = (
        np.kron(np.eye(2), keep)
        + _on_path(pp, b - 2, b - 2, b - 1, b)
        + _on_path(pm, b - 2, b - 1, b - 1, b)
    )
    return BeamStack(b - 1, w @ stack.rho @ w.conj().T)


def apply_bfield(theta: float, phi: float, omega: float, stack: BeamStack) -> BeamStack:
    """Precess the top beam's spin by omega about the (theta, phi) axis."""
    _require(stack, 1, "precess")
    b = stack.beam_count
    top = np.zeros((b, b))
    top[b - 1, b - 1] = 1.0
    u = rotation(theta, phi, omega).m
    g = np.kron(u, top) + np.kron(np.eye(2), np.eye(b) - top)
    return BeamStack(b, g @ stack.rho @ g.conj().T)


def filter_plus(theta: float, phi: float, stack: BeamStack) -> BeamStack:
    """Keep only the spin-up component along (theta, phi): split, drop the rest."""
    return drop_beam(split(theta, phi, stack))


def filter_minus(theta: float, phi: float, stack: BeamStack) -> BeamStack:
    """Keep only the spin-down component along (theta, phi)."""
    return drop_beam(flip_beams(split(theta, phi, stack)))


def split_x(stack: BeamStack) -> BeamStack:
    return split(*X_AXIS, stack)


def split_y(stack: BeamStack) -> BeamStack:
    return split(*Y_AXIS, stack)


def split_z(stack: BeamStack) -> BeamStack:
    return split(*Z_AXIS, stack)


def recombine_x(stack: BeamStack) -> BeamStack:
    return recombine(*X_AXIS, stack)


def recombine_y(stack: BeamStack) -> BeamStack:
    return recombine(*Y_AXIS, stack)


def recombine_z(stack: BeamStack) -> BeamStack:
    return recombine(*Z_AXIS, stack)


def xp_filter(stack: BeamStack) -> BeamStack:
    return filter_plus(*X_AXIS, stack)


def xm_filter(stack: BeamStack) -> BeamStack:
    return filter_minus(*X_AXIS, stack)


def yp_filter(stack: BeamStack) -> BeamStack:
    return filter_plus(*Y_AXIS, stack)


def ym_filter(stack: BeamStack) -> BeamStack:
    return filter_minus(*Y_AXIS, stack)


def zp_filter(stack: BeamStack) -> BeamStack:
    return filter_plus(*Z_AXIS, stack)


def zm_filter(stack: BeamStack) -> BeamStack:
    return filter_minus(*Z_AXIS, stack)


def bfield_x(omega: float, stack: BeamStack) -> BeamStack:
    return apply_bfield(*X_AXIS, omega, stack)


def bfield_y(omega: float, stack: BeamStack) -> BeamStack:
    return apply_bfield(*Y_AXIS, omega, stack)


def bfield_z(omega: float, stack: BeamStack) -> BeamStack:
    return apply_bfield(*Z_AXIS, omega, stack)
