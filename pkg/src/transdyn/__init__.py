"""Exact computational checks of transitivity-type properties of dynamical systems."""
__version__ = "0.1.0"
