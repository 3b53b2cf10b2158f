"""Messages — User-facing strings printed by the command layer."""

from __future__ import annotations

# --- Verification ---------------------------------------------------------------
ROW_CHECK = "{status}  {check}: {details}"
CHECK_PASS = "PASS"
CHECK_FAIL = "FAIL"
MSG_VERIFY_SUMMARY = "{passed}/{total} checks passed"

CHECK_ORBIT = "kf-orbit == ls(1,1)"
CHECK_CONJUGACY = "kf ∘ monna == monna ∘ odometer"
CHECK_CYLINDERS = "cylinder measure == image length"
CHECK_TILING = "ls partition tiles [0,1)"

# --- Copula ------------------------------------------------------------------------
LABEL_EXACT_BOUNDS = "bounds"
LABEL_APPROX_BOUNDS = "approximate bounds"

# --- Warnings ------------------------------------------------------------------------
WARN_PATTERN = "coefficients {coeffs} are outside the admissible patterns; φ_β(ℕ) ⊂ [0,1) is not guaranteed"
WARN_NOT_COPRIME = "Halton bases {bases} are not pairwise coprime"

# --- Errors ----------------------------------------------------------------------------
ERR_USAGE = "invalid arguments"
ERR_NO_INPUT = "either --input or --family is required"
ERR_BAD_CONFIG = "config file {path} must hold a mapping of flag names to values"
ERR_BAD_PRECISION = "precision must lie in [{low}, {high}]"
ERR_BAD_N = "--n must be at least 1"
ERR_MISSING_FLAG = "family {family} requires --{flag}"
