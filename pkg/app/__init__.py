"""QMC Toolkit — Exact low-discrepancy sequences, discrepancy and copula integral bounds."""
