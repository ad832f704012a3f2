"""Unit tests for g2cert."""
