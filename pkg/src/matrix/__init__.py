"""7x7 matrix algebra over exact domains."""
