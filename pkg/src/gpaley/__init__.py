"""Generalised Paley graphs and their Cartesian decompositions."""
