"""Define fixtures to use in tests."""
