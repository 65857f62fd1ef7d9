"""Scalar spectral data of the contact-algebra action on R^k_delta.

Pure closed-form arithmetic shared by the operator, Casimir and weight
classification layers:

  * the contraction/raising commutation scalar
        r(l, k) = -(l/2) (2(n+1) delta + 2k + l - 1),
  * the Casimir constant
        c(k, delta) = (n+1)^2 delta^2 - (n+1)^2 delta
                      + k (n+1) delta + (k^2 - k)/2,
  * the eigenvalues  eps^{k,l}_delta = (c(k, delta) + r(l, k-l)) / (n+2),
  * the critical set C_k = {-p / (2(n+1)) : p = 0..2k-2}, where the
    eigenspace decomposition of R^k_delta degenerates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CriticalWeightError, DomainError


def commutation_r(l: int, k: int, delta, n: int) -> Fraction:
    """r(l, k) for the identity  i_a o X^l = X^l o i_a + r(l, k) X^(l-1)."""
    if l < 0:
        raise DomainError("l must be >= 0")
    delta = Fraction(delta)
    return -Fraction(l, 2) * (2 * (n + 1) * delta + 2 * k + l - 1)


def c_value(n: int, k: int, delta) -> Fraction:
    delta = Fraction(delta)
    n1 = n + 1
    return n1 * n1 * delta * delta - n1 * n1 * delta + k * n1 * delta + Fraction(k * k - k, 2)


def eigenvalue(n: int, k: int, l: int, delta) -> Fraction:
    """Casimir eigenvalue on the l-th summand of R^k_delta."""
    if not 0 <= l <= k:
        raise DomainError(f"eigenvalue index l={l} outside 0..{k}")
    return (c_value(n, k, delta) + commutation_r(l, k - l, delta, n)) / (n + 2)


@dataclass(frozen=True)
class CriticalSet:
    """Weights where some commutation scalar in the peeling vanishes."""

    k: int
    n: int
    members: tuple

    def __contains__(self, delta) -> bool:
        return Fraction(delta) in self.members

    def index_of(self, delta) -> int:
        """The p with delta == -p/(2(n+1)); DomainError if not a member."""
        delta = Fraction(delta)
        for p, member in enumerate(self.members):
            if member == delta:
                return p
        raise DomainError(f"{delta} is not a critical weight for k={self.k}")


def critical_set(k: int, n: int) -> CriticalSet:
    if k < 0:
        raise DomainError("k must be >= 0")
    members = tuple(Fraction(-p, 2 * (n + 1)) for p in range(max(2 * k - 1, 0)))
    return CriticalSet(k, n, members)


def require_noncritical(delta, k: int, n: int):
    """Raise CriticalWeightError when delta lies in C_k."""
    cs = critical_set(k, n)
    delta = Fraction(delta)
    if delta in cs:
        raise CriticalWeightError(delta, k, n, cs.index_of(delta))
