"""Executable tenzan jutsu: notation, exact derivation replay and verification."""

__version__ = "0.1.0"
