"""First homology of Milnor fiber boundaries of line arrangements."""

__version__ = "0.1.0"
