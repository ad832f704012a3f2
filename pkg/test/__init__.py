"""Test package for g2cert."""
