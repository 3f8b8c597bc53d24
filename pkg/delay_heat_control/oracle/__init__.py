"""Independent finite-difference oracle."""

from .finite_difference import laplacian, residual_fd, solve_fd
from .models import SCHEMES, FdConfig

__all__ = ["FdConfig", "SCHEMES", "laplacian", "residual_fd", "solve_fd"]
