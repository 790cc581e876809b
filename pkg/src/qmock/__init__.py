"""Exact truncated q-series, theta and Appell functions, and identity checks."""

from .appell import AppellSpec, appell_expand, change_z_correction, level_p_decomposition
from .dsl import compare, evaluate, parse, unparse
from .errors import *  # noqa: F401,F403
from .report import Verdict
from .series import QPower, QSeries, equal_to_order, monomial
from .suites import run_suite
from .theta import J, Jbar, PochSpec, ThetaSpec, pochhammer, quotient, theta_prod, theta_sum

__version__ = "0.1.0"
