"""Exact construction and certification of rank jumps in A-hypergeometric systems."""

from .certify import GapCertificate, certify_gap, independence_rank, verify_solution
from .gkz import build_family, build_system, laurent_solutions, quadratic_demo, series_solution
from .linalg import IntMatrix, gcd_maximal_minors, hermite_normal_form, integer_kernel_basis, rational_rank
from .polytope import normalized_volume, triangulate
from .puiseux import EulerOperator, PuiseuxPoly, ToricBinomial, apply_euler, apply_toric
from .toric import Binomial, buchberger_binomial, toric_generating_set

__version__ = "0.1.0"
