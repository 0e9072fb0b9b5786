# Symbolic synchronous automata.
