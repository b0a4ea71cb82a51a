"""Bra-ket calculational layer for spin-1/2 particles.

Values come in four sorts -- complex scalars, kets, bras, and 2x2
operators -- joined by one associative Dirac product, written ``*``.
Twelve of the sixteen sort pairings multiply; the remaining four
(ket*ket, ket*operator, bra*bra, operator*bra) have no meaning and
raise :class:`NonsenseProductError`.

Amplitudes are stored in the {|z+>, |z->} basis with zp = (1, 0).
hbar = 1 throughout, so the spin observables exposed here are the bare
Pauli operators; physical spin components are hbar/2 times these.

All values are immutable; every function returns a fresh value.
"""

import cmath
import math

import numpy as np

__all__ = [
    "Ket", "Bra", "Operator",
    "NonsenseProductError", "NormalizationError",
    "dirac", "dagger", "norm", "probability", "rotation", "time_ev",
    "xp", "xm", "yp", "ym", "zp", "zm", "nplus", "nminus",
    "identity", "sx", "sy", "sz", "sn",
]


class NonsenseProductError(TypeError):
    """Dirac product of a sort pair that has no meaning."""

    def __init__(self, left_sort: str, right_sort: str):
        super().__init__(f"nonsense product: {left_sort} * {right_sort}")
        self.left_sort = left_sort
        self.right_sort = right_sort


class NormalizationError(ValueError):
    """A ket that must be normalized is not."""


_SCALAR_TYPES = (int, float, complex, np.integer, np.floating, np.complexfloating)


def _is_scalar(x) -> bool:
    return isinstance(x, _SCALAR_TYPES) and not isinstance(x, bool)


def _sort(x) -> str:
    if _is_scalar(x):
        return "C"
    if isinstance(x, Ket):
        return "Ket"
    if isinstance(x, Bra):
        return "Bra"
    if isinstance(x, Operator):
        return "Operator"
    raise TypeError(f"{type(x).__name__} is not a Dirac-product sort")


def _amplitudes(values, what: str) -> np.ndarray:
    a = np.array(values, dtype=complex)
    if a.shape != (2,):
        raise ValueError(f"{what} needs exactly 2 amplitudes, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError(f"{what} amplitudes must be finite")
    a.flags.writeable = False
    return a


class Ket:
    """State vector |psi>: two complex amplitudes in the z basis."""

    __slots__ = ("amp",)

    def __init__(self, amp):
        self.amp = _amplitudes(amp, "a ket")

    def __mul__(self, other):
        return dirac(self, other)

    def __rmul__(self, other):
        return dirac(other, self)

    def __add__(self, other):
        if isinstance(other, Ket):
            return Ket(self.amp + other.amp)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Ket):
            return Ket(self.amp - other.amp)
        return NotImplemented

    def __neg__(self):
        return Ket(-self.amp)

    def __repr__(self):
        return f"Ket[{self.amp[0]!r}, {self.amp[1]!r}]"


class Bra:
    """Dual vector <phi|: holds the conjugated amplitudes of its ket."""

    __slots__ = ("amp",)

    def __init__(self, amp):
        self.amp = _amplitudes(amp, "a bra")

    def __mul__(self, other):
        return dirac(self, other)

    def __rmul__(self, other):
        return dirac(other, self)

    def __add__(self, other):
        if isinstance(other, Bra):
            return Bra(self.amp + other.amp)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Bra):
            return Bra(self.amp - other.amp)
        return NotImplemented

    def __neg__(self):
        return Bra(-self.amp)

    def __repr__(self):
        return f"Bra[{self.amp[0]!r}, {self.amp[1]!r}]"


class Operator:
    """Linear operator on the spin-1/2 state space: a 2x2 complex matrix."""

    __slots__ = ("m",)

    def __init__(self, m):
        a = np.array(m, dtype=complex)
        if a.shape != (2, 2):
            raise ValueError(f"an operator needs a 2x2 matrix, got shape {a.shape}")
        if not np.isfinite(a).all():
            raise ValueError("operator entries must be finite")
        a.flags.writeable = False
        self.m = a

    def __mul__(self, other):
        return dirac(self, other)

    def __rmul__(self, other):
        return dirac(other, self)

    def __add__(self, other):
        if isinstance(other, Operator):
            return Operator(self.m + other.m)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Operator):
            return Operator(self.m - other.m)
        return NotImplemented

    def __neg__(self):
        return Operator(-self.m)

    def __repr__(self):
        return f"Operator{self.m.tolist()!r}"


def dirac(a, b):
    """The Dirac product of two values.

    Covers scalar products, inner products (bra * ket), outer products
    (ket * bra), operator application, and operator composition.  The
    four meaningless pairings raise :class:`NonsenseProductError`.
    """
    if _is_scalar(a):
        ca = complex(a)
        if _is_scalar(b):
            return ca * complex(b)
        if isinstance(b, Ket):
            return Ket(ca * b.amp)
        if isinstance(b, Bra):
            return Bra(ca * b.amp)
        if isinstance(b, Operator):
            return Operator(ca * b.m)
    elif isinstance(a, Ket):
        if _is_scalar(b):
            return Ket(a.amp * complex(b))
        if isinstance(b, Bra):
            return Operator(np.outer(a.amp, b.amp))
        if isinstance(b, (Ket, Operator)):
            raise NonsenseProductError(_sort(a), _sort(b))
    elif isinstance(a, Bra):
        if _is_scalar(b):
            return Bra(a.amp * complex(b))
        if isinstance(b, Ket):
            # the bra already holds conjugated amplitudes, so a plain dot
            return complex(a.amp @ b.amp)
        if isinstance(b, Operator):
            return Bra(a.amp @ b.m)
        if isinstance(b, Bra):
            raise NonsenseProductError(_sort(a), _sort(b))
    elif isinstance(a, Operator):
        if _is_scalar(b):
            return Operator(a.m * complex(b))
        if isinstance(b, Ket):
            return Ket(a.m @ b.amp)
        if isinstance(b, Operator):
            return Operator(a.m @ b.m)
        if isinstance(b, Bra):
            raise NonsenseProductError(_sort(a), _sort(b))
    raise TypeError(
        f"dirac product is not defined for {type(a).__name__} and {type(b).__name__}"
    )


def dagger(x):
    """Adjoint: ket <-> bra, operator -> conjugate transpose, scalar -> conjugate."""
    if _is_scalar(x):
        return complex(x).conjugate()
    if isinstance(x, Ket):
        return Bra(np.conj(x.amp))
    if isinstance(x, Bra):
        return Ket(np.conj(x.amp))
    if isinstance(x, Operator):
        return Operator(x.m.conj().T)
    raise TypeError(f"dagger is not defined for {type(x).__name__}")


def norm(x) -> float:
    """Euclidean norm of a ket or bra."""
    if isinstance(x, (Ket, Bra)):
        return float(np.linalg.norm(x.amp))
    raise TypeError(f"norm is not defined for {type(x).__name__}")


_RSQRT2 = 1.0 / math.sqrt(2.0)

zp = Ket([1.0, 0.0])
zm = Ket([0.0, 1.0])
xp = Ket([_RSQRT2, _RSQRT2])
xm = Ket([_RSQRT2, -_RSQRT2])
yp = Ket([_RSQRT2, 1j * _RSQRT2])
ym = Ket([_RSQRT2, -1j * _RSQRT2])


def nplus(theta: float, phi: float) -> Ket:
    """Spin-up ket along the (theta, phi) spherical direction.

    |n+> = cos(theta/2) |z+> + e^{i phi} sin(theta/2) |z->
    """
    return Ket([math.cos(theta / 2), cmath.exp(1j * phi) * math.sin(theta / 2)])


def nminus(theta: float, phi: float) -> Ket:
    """Spin-down ket along the (theta, phi) spherical direction.

    |n-> = sin(theta/2) |z+> - e^{i phi} cos(theta/2) |z->
    """
    return Ket([math.sin(theta / 2), -cmath.exp(1j * phi) * math.cos(theta / 2)])


identity = Operator([[1.0, 0.0], [0.0, 1.0]])
sx = Operator([[0.0, 1.0], [1.0, 0.0]])
sy = Operator([[0.0, -1.0j], [1.0j, 0.0]])
sz = Operator([[1.0, 0.0], [0.0, -1.0]])


def sn(theta: float, phi: float) -> Operator:
    """Spin component along (theta, phi): equals |n+><n+| - |n-><n-|."""
    st, ct = math.sin(theta), math.cos(theta)
    return Operator([
        [ct, st * cmath.exp(-1j * phi)],
        [st * cmath.exp(1j * phi), -ct],
    ])


def probability(outcome: Ket, state: Ket) -> float:
    """Born rule: the probability |<outcome|state>|^2.

    Both kets must be normalized (within 1e-6), since the rule in this
    form only applies to normalized states.
    """
    if not isinstance(outcome, Ket) or not isinstance(state, Ket):
        raise TypeError("probability expects two kets")
    for name, ket in (("outcome", outcome), ("state", state)):
        n = norm(ket)
        if abs(n - 1.0) > 1e-6:
            raise NormalizationError(f"{name} ket has norm {n!r}, expected 1")
    return float(abs(dagger(outcome) * state) ** 2)


def rotation(theta: float, phi: float, omega: float) -> Operator:
    """Spin precession by angle omega about the (theta, phi) axis.

    Returns the unitary cos(omega/2) I - i sin(omega/2) sigma_n, i.e.
    exp(-i omega sigma_n / 2); omega bundles field strength and duration.
    Spinor identity: a 2*pi rotation gives -I, only 4*pi returns I.
    """
    return math.cos(omega / 2) * identity - (1j * math.sin(omega / 2)) * sn(theta, phi)


def time_ev(dt: float, hamiltonian: Operator, psi: Ket) -> Ket:
    """Advance psi by one time step dt of the Schrodinger equation (hbar = 1).

    Uses the Cayley form (I + i dt H/2)^-1 (I - i dt H/2), which is
    exactly unitary for Hermitian H, so the norm is preserved to
    rounding; the one-step error against the exact propagator
    exp(-i dt H) is O(dt^3).
    """
    if not isinstance(hamiltonian, Operator) or not isinstance(psi, Ket):
        raise TypeError("time_ev expects an operator and a ket")
    if not dt > 0:
        raise ValueError(f"time step must be positive, got {dt!r}")
    h = hamiltonian.m
    if np.abs(h - h.conj().T).max() > 1e-9:
        raise ValueError("Hamiltonian must be Hermitian")
    half = 0.5j * dt * h
    eye = np.eye(2)
    return Ket(np.linalg.solve(eye + half, (eye - half) @ psi.amp))
