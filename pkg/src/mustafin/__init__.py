"""Lattice-class combinatorics for Mustafin varieties and local models."""

__version__ = "0.1.0"
