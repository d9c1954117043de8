"""Exact tools for deciding whether indecomposables of a quiver algebra over
GF(p) are determined by their composition factors."""

__version__ = "0.1.0"
