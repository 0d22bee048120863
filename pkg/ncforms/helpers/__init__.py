"""Define helpers."""
