"""Exact rational, polynomial and rational-function arithmetic."""
