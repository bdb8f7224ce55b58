"""Spectral asymmetry of elliptic matrix pseudodifferential operators on flat tori."""
from .errors import SpecasymError
from .quadrature import Torus

__version__ = "0.1.0"

__all__ = ["SpecasymError", "Torus", "__version__"]
