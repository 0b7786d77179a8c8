"""
Modal logic of quantum superpositions.

Formulas over kets such as ``|psi>`` are combined with a superposition
connective ``*`` and a measurement operator ``M`` on top of classical modal
logic.  The package parses formulas, evaluates them in Kripke models,
searches bounded model spaces for countermodels, checks Hilbert-style proof
scripts and decides a non-adjunctive quantum deduction relation.
"""

from .formula import *  # noqa: F401,F403
from .kripke import *  # noqa: F401,F403
from .validity import *  # noqa: F401,F403
from .proofs import *  # noqa: F401,F403
from .qdeduction import *  # noqa: F401,F403
from . import formula, kripke, validity, proofs, qdeduction

__version__ = "0.1.0"

__all__ = (formula.__all__ + kripke.__all__ + validity.__all__ + proofs.__all__
           + qdeduction.__all__)
