"""Rate bounds and brute-force verification for linear (q,k)-hash codes."""

__version__ = "0.1.0"
