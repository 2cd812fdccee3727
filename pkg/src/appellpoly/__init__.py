"""Generating-function construction of Appell and Askey-scheme polynomial families,
exact identity checks, and Hermite/Laguerre limit experiments."""

from .poly import Poly, RadicalPoly, poly_add, poly_affine, poly_derivative, poly_eval, poly_mul, sup_error_on_grid
from .series import Series, builtin_series, series_exp, series_log, series_mul, series_pow, series_recip, series_scale_var

__version__ = "0.1.0"
