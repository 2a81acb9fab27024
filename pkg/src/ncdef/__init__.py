"""Exact computations with deformations of collections of quiver representations."""

from .linalg import Field, GF, QQ, Matrix
from .algebra import Quiver, BoundQuiver, PathAlgebra, AlgebraHom, build_algebra
from .rep import Rep, RepMap
from .aobjects import AObject

__all__ = ["Field", "GF", "QQ", "Matrix", "Quiver", "BoundQuiver", "PathAlgebra", "AlgebraHom",
           "build_algebra", "Rep", "RepMap", "AObject"]
__version__ = "0.1.0"
