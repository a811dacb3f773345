"""Numerical audits of energy generation and Morawetz-multiplier identities
for null geodesics and mode waves on black-hole exterior spacetimes."""

__version__ = "0.1.0"
