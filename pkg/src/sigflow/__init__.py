"""Exact semantics and normal forms for signal-flow diagrams."""

__version__ = "0.1.0"
