"""Symbolic and numeric kernel for quasi-homogeneous foliation germs.

Layers, bottom up:

* :mod:`folgal.series`      exact truncated series, one and two variables
* :mod:`folgal.quasihomog`  weights, Milnor cobasis, logarithmic fields
* :mod:`folgal.logforms`    logarithmic one-forms and Godbillon-Vey checks
* :mod:`folgal.prenormal`   degree-by-degree prenormalization
* :mod:`folgal.invariant`   the invariant family, reducibility, final forms
* :mod:`folgal.onevar`      one-variable germs, flows, groupoid residuals
* :mod:`folgal.periods`     numeric periods and holonomy on Milnor fibers
* :mod:`folgal.cli`         the ``folgal`` command-line front end
"""

__version__ = "0.1.0"

from .errors import FolgalError

__all__ = ["FolgalError", "__version__"]
