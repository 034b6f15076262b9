"""Exact computations with fat points and line arrangements in the plane."""
