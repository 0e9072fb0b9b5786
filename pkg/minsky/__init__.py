# Two-counter machines and their reduction to SAR satisfiability.
