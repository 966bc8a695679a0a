"""Set-theoretic solutions of the braid equation on quivers, and the
groupoids, matched pairs, racks and linear models attached to them."""
from .kernels import BACKEND
from .quiver import Quiver
from .report import InvariantError, Report, set_assert_level
from .solution import NonDegenerateSolution, Solution, check_nondegenerate, check_solution

__all__ = [
    "BACKEND",
    "InvariantError",
    "NonDegenerateSolution",
    "Quiver",
    "Report",
    "Solution",
    "check_nondegenerate",
    "check_solution",
    "set_assert_level",
]
__version__ = "0.1.0"
