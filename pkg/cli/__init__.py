# Command-line front end: solve, translate, bench, check-model, encode-minsky.
