"""Exact enumeration workbench for tilings of hexagonal dungeons on the G2 lattice.

The package computes weighted perfect-matching (tiling) generating functions
of dungeon regions with exact arithmetic, and checks the closed product
formulas, condensation recurrences and graph identities that govern them.
"""

__version__ = "0.1.0"
