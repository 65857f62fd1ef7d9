"""Exception taxonomy shared by all modules.

Structural errors signal malformed inputs (mismatched variable tables,
unknown variable names, elements outside a spanning set).  Domain errors
signal mathematically inadmissible parameters, the prime example being a
density weight inside the critical set of a symbol module.
"""

from __future__ import annotations


class StructuralError(ValueError):
    """Malformed input: incompatible tables, unknown names, bad shapes."""


class TableMismatchError(StructuralError):
    """Two operands live over different variable tables."""


class UnknownVariableError(StructuralError):
    """A variable name or index is not present in the table."""


class SpanError(StructuralError):
    """An element lies outside the expected linear span."""


class DomainError(ValueError):
    """Mathematically inadmissible parameters."""


class CriticalWeightError(DomainError):
    """Density weight lies in the critical set of the module.

    Carries the integer p with weight == -p/(2(n+1)) so reports can point
    at the offending member.
    """

    def __init__(self, weight, k: int, n: int, p: int):
        self.weight = weight
        self.k = k
        self.n = n
        self.p = p
        super().__init__(
            f"critical weight {weight} for fiber degree {k} (n={n}): "
            f"equals -{p}/(2*(n+1))"
        )


class SingularSystemError(DomainError):
    """A linear system that the caller required to be regular is singular."""
