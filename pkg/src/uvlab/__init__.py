"""Finite Boolean algebras, UV-spaces and the dualities between them."""

__version__ = "0.1.0"
