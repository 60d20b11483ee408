"""tanglekit utilities."""
