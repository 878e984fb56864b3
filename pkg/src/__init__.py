"""Network slice placement engine."""
