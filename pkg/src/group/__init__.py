"""The split G2 realization, its Levi subgroup and the big-cell decomposition."""
