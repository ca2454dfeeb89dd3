"""Stabilizer-group toolkit for magic-state Hamiltonian energy bounds."""

__version__ = "0.1.0"
