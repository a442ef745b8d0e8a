"""Engineering limits.

None of these come from the mathematics; they keep exact computations at
desk scale and turn runaway inputs into explicit errors.
"""

ELEMENT_CAP = 5040
SUBGROUP_CAP = 512
BRUTE_DEGREE_CAP = 9
BACKTRACK_DEGREE_CAP = 24
ORBITAL_DEGREE_CAP = 64
NODE_BUDGET = 2_000_000
SYLOW_TOWER_DEGREE_CAP = 64
COSET_DEGREE_CAP = 512
