"""Trace codes over the chain ring F_p[u]/(u^k)."""
