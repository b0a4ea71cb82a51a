"""Stern-Gerlach workbench: bra-ket calculus and a beam lab for spin-1/2.

The top level re-exports the calculational layer (kets, bras,
operators, one Dirac product) and the density-operator beam stacks.
The single-beam pure-state language lives in :mod:`sglab.beam`, the
script language in :mod:`sglab.script`, the interactive loop in
:mod:`sglab.repl`, and the HTTP session service in
:mod:`sglab.service`.
"""

__version__ = "0.1.0"

from .core import *  # noqa: F401,F403
from .beamstack import *  # noqa: F401,F403
