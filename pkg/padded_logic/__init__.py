# Padded integers and guard formulas.
