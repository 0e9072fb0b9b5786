# List formulas over symbolic automatic relations.
