"""Certification checks, formula emission and the stability ledger."""
