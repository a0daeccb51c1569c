"""witt-residue - higher residue pairings of quasi-homogeneous singularities."""

__version__ = "0.1.0"
