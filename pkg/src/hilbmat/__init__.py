"""Hilbert matrices of reduced point configurations on P1 x P1."""
