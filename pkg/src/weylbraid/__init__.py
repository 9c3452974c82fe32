"""Good-position braid representatives for twisted Weyl groups."""
