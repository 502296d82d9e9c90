"""Exact combinatorics, straightening laws, and syzygies for the coordinate
rings of spaces of rational curves in Grassmannians."""

__version__ = "0.1.0"
