# Constrained Horn clauses for SAR atoms.
