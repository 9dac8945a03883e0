"""Closed-form and numerical solvers for planar Dirac fermions in
separable electrostatic / scalar / gauge step potentials."""

__version__ = "0.1.0"
