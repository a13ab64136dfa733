"""Exact computations for tame-symbol central extensions of split tori over F_q(t)."""

__version__ = "0.1.0"

from .errors import MetatorError

__all__ = ["MetatorError", "__version__"]
