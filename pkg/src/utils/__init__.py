"""Report naming helpers."""
