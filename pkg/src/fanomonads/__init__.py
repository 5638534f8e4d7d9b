"""Exact linear-algebra models of instanton moduli on Fano threefolds."""

__version__ = "0.1.0"
