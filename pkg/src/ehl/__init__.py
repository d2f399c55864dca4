"""Even-hole-free graph toolkit."""
