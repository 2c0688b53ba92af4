"""Validated interval-Fourier integration of dissipative PDEs.

Rigorously integrates the non-autonomous Chafee-Infante equation and the
fractional Burgers equation (and their variational equations) forward in
time on interval Fourier representations, and assembles machine-checked
certificates of existence and local attraction of periodic orbits.
"""

from .interval import Interval

__all__ = ["Interval"]
__version__ = "0.1.0"
