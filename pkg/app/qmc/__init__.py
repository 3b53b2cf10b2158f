"""Quasi-Monte Carlo toolkit — exact low-discrepancy sequences and copula bounds."""
