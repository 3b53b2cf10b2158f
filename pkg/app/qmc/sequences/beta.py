"""β-adic sequences — Monna images of the integers in one or several numeration systems.

Systems outside the admissible patterns are still accepted here; build_system
has already warned about them.
"""

from __future__ import annotations

from collections.abc import Sequence

from ..exactfield import AlgExt
from ..numeration import NumerationSystem, greedy_expand, monna_map


def beta_vdc(n: int, system: NumerationSystem) -> AlgExt:
    """φ_β(n), the β-adic van der Corput point."""
    return monna_map(greedy_expand(n, system), system)


def beta_halton(n: int, systems: Sequence[NumerationSystem]) -> tuple[AlgExt, ...]:
    """(φ_{β_1}(n), …, φ_{β_s}(n))."""
    return tuple(beta_vdc(n, system) for system in systems)
