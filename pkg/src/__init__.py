"""g2cert: exact certification of the split G2 7x7 realization."""
