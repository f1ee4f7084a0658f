"""Askey-Wilson difference calculus, Wronskians, Nevanlinna functionals and min-max decompositions."""

__version__ = "0.1.0"
