"""Morita obstruction classes for surface bundles over the torus built from stable graphs."""

__version__ = "0.1.0"
