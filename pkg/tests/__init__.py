"""Test package for witt-residue."""
