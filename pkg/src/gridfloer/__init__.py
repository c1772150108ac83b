"""Combinatorial knot and link Floer homology from grid diagrams."""

from .grid import GridDiagram, GridError, apply_move, load_grid, parse_grid, random_move_sequence

__all__ = ["GridDiagram", "GridError", "apply_move", "load_grid", "parse_grid", "random_move_sequence"]
