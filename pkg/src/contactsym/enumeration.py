"""Deterministic exponent enumeration helpers.

All enumerations are emitted in graded lexicographic order over the given
slot ordering so that ansatz bases, report orderings and kernel bases are
reproducible across runs.
"""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def exponents_of_degree(slots: int, degree: int) -> tuple:
    """All exponent tuples of the exact total degree, lex over slot order."""
    if slots == 0:
        return ((),) if degree == 0 else ()
    out = []

    def rec(pos, remaining, current):
        if pos == slots - 1:
            out.append(tuple(current) + (remaining,))
            return
        for k in range(remaining, -1, -1):
            current.append(k)
            rec(pos + 1, remaining - k, current)
            current.pop()

    rec(0, degree, [])
    return tuple(out)


@lru_cache(maxsize=None)
def exponents_up_to(slots: int, degree: int) -> tuple:
    """All exponent tuples of total degree <= degree, graded then lex."""
    out = []
    for d in range(degree + 1):
        out.extend(exponents_of_degree(slots, d))
    return tuple(out)


def compositions_with_minimum(total: int, minima: tuple) -> tuple:
    """All tuples a with a_i >= minima_i and sum(a) == total."""
    slots = len(minima)
    if slots == 0:
        return ((),) if total == 0 else ()
    spare = total - sum(minima)
    if spare < 0:
        return ()
    return tuple(
        tuple(m + e for m, e in zip(minima, extra))
        for extra in exponents_of_degree(slots, spare)
    )
