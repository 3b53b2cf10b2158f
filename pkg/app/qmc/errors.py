"""Domain errors — Exceptions raised by the numeric modules.

Value-type errors also derive from ValueError so that generic callers
can catch them without importing this module.
"""


class QMCError(Exception):
    """Base class for all toolkit errors."""


class PatternWarning(UserWarning):
    """Soft failure: input outside the range where uniform distribution is claimed."""


# =============================================================================
# EXACT FIELD
# =============================================================================
class FieldMismatch(QMCError, ValueError):
    """Operands live in different number fields."""


class DivisionByZero(QMCError, ZeroDivisionError):
    """Exact division by the zero element."""


# =============================================================================
# NUMERATION
# =============================================================================
class EmptyCoeffs(QMCError, ValueError):
    """A numeration system needs at least one recurrence coefficient."""


class LeadingZero(QMCError, ValueError):
    """The leading recurrence coefficient a_0 must be positive."""


class OutOfRange(QMCError, ValueError):
    """Argument outside [0, 1)."""


class InadmissiblePrefix(QMCError, ValueError):
    """Cylinder prefix violates the admissibility condition."""


# =============================================================================
# SEQUENCES
# =============================================================================
class BadPermutation(QMCError, ValueError):
    """Digit permutation is not a bijection of {0, ..., b-1}."""


class NotInDomain(QMCError, ValueError):
    """Point has no branch of the interval exchange."""


# =============================================================================
# DISCREPANCY
# =============================================================================
class EmptyInput(QMCError, ValueError):
    """Discrepancy of an empty point set is undefined."""


class BudgetExceeded(QMCError, ValueError):
    """Exact enumeration would exceed the configured budget."""


class NotAPartitionOfSet(QMCError, ValueError):
    """Subsets are empty or do not add up to the point set."""


# =============================================================================
# COPULA
# =============================================================================
class NonSquare(QMCError, ValueError):
    """Assignment matrix is not square."""


class NonFinite(QMCError, ValueError):
    """Assignment matrix contains NaN or infinite entries."""


class LipschitzViolation(QMCError, ValueError):
    """Sandwich gap exceeds the bound implied by the declared Lipschitz constant."""


# =============================================================================
# COMMAND LINE
# =============================================================================
class UsageError(QMCError):
    """Invalid command-line arguments or configuration file."""
