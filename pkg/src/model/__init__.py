"""Report models."""
