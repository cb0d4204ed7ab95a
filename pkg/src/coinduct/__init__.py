"""Coinductive constructions: hypersets, processes, games, sign strings, Int and a toy computer."""

__version__ = "0.1.0"
