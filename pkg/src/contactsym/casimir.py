"""Casimir operator of the projective contact algebra on R^k_delta.

Two independent assemblies are implemented:

  * dual_sum -- the raw pairing  sum_a L_{e_a} o L_{e^a}  over the
    Killing-dual generator bases;
  * eq_casimir2 -- the regrouped eight-term form obtained from the bracket
    identities of the quadratic generating functions (their agreement is
    itself a check of those identities).

The diagonal closed form is (1/(n+2)) (c(k, delta) id + X o i_alpha),
where the X-leg carries the intermediate weight delta + (k-1)/(n+1), i.e.
the zeroth-order scalar a = 2(n+1) delta + k - 1.

Operator equality on R^k_delta is decided by evaluation on the family
{x^a xi^b : |a| <= max_base_degree, |b| = k} plus a seeded spot check at
|a| = 7; both sides have base order <= 2, so the family determines the
restriction to fiber degree k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .contact import sp_basis
from .diffop import DiffOp
from .enumeration import exponents_of_degree, exponents_up_to
from .errors import DomainError
from .linalg import exact_nullspace
from .operators import gen_hamiltonian_op, i_alpha_op
from .poly import Poly, grlex_key
from .rationals import format_rational
from .spectra import c_value, eigenvalue
from .symbols import RModule, lie_action_as_diffop

__all__ = [
    "CasimirResult",
    "assemble_casimir",
    "c_value",
    "casimir_matrix",
    "casimir_terms",
    "closed_form_casimir",
    "eigenvalue",
    "diagonalization_witness",
    "expansion_constants",
    "verify_diagonal_form",
]


def _action(basis, label, module) -> DiffOp:
    return lie_action_as_diffop(basis.field(label), module)


def assemble_casimir(n: int, k: int, delta, form: str = "dual_sum") -> DiffOp:
    """Exact Casimir operator on R^k_delta in either assembled form."""
    delta = Fraction(delta)
    module = RModule(n, k, delta)
    basis = sp_basis(n)
    acts = {g.label: _action(basis, g.label, module) for g in basis.generators}
    if form == "dual_sum":
        out = DiffOp.zero(module.table)
        for gen, dual in zip(basis.generators, basis.duals):
            left = acts[gen.label]
            for lbl, c in dual.items():
                out = out + left.compose(acts[lbl]).scale(c)
        return out
    if form == "eq_casimir2":
        out = DiffOp.zero(module.table)
        for term in casimir_terms(n, k, delta):
            out = out + term
        return out
    raise DomainError(f"unknown Casimir form {form!r}")


def casimir_terms(n: int, k: int, delta) -> list[DiffOp]:
    """The eight summands T_1..T_8 of the regrouped Casimir form."""
    delta = Fraction(delta)
    module = RModule(n, k, delta)
    basis = sp_basis(n)
    acts = {g.label: _action(basis, g.label, module) for g in basis.generators}
    zero = DiffOp.zero(module.table)
    c4 = Fraction(1, 4 * (n + 2))
    c2 = Fraction(1, 2 * (n + 2))

    t1 = acts["t2"].compose(acts["1"]).scale(-c4)
    t2 = acts["t"].compose(acts["t"]).scale(c4)
    t3 = zero
    for i in range(1, n + 1):
        t3 = t3 + acts[f"tq{i}"].compose(acts[f"p{i}"]) - acts[f"tp{i}"].compose(acts[f"q{i}"])
    t3 = t3.scale(c2)
    t4 = zero
    for i in range(1, n + 1):
        t4 = t4 + acts[f"p{i}p{i}"].compose(acts[f"q{i}q{i}"])
    t4 = t4.scale(-c4)
    t5 = zero
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            t5 = t5 + acts[f"p{i}p{j}"].compose(acts[f"q{i}q{j}"])
    t5 = t5.scale(-c2)
    t6 = zero
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            # L_{X_{p_i q^j}} o L_{X_{p_j q^i}}: labels carry (p index, q index)
            t6 = t6 + acts[f"p{i}q{j}"].compose(acts[f"p{j}q{i}"])
    t6 = t6.scale(c4)
    t7 = acts["t"].scale(Fraction(n + 1, 2 * (n + 2)))
    t8 = zero
    for i in range(1, n + 1):
        t8 = t8 + acts[f"p{i}q{i}"]
    t8 = t8.scale(Fraction(n + 1, 4 * (n + 2)))
    return [t1, t2, t3, t4, t5, t6, t7, t8]


def closed_form_casimir(n: int, k: int, delta) -> DiffOp:
    """(1/(n+2)) (c(k, delta) id + X o i_alpha) on R^k_delta."""
    delta = Fraction(delta)
    module = RModule(n, k, delta)
    tab = module.table
    out = DiffOp.identity(tab).scale(c_value(n, k, delta))
    if k > 0:
        x_leg = gen_hamiltonian_op(module.contracted())
        out = out + x_leg.compose(i_alpha_op(tab))
    return out.scale(Fraction(1, n + 2))


def monomial_family(n: int, k: int, max_base_degree: int):
    """Exponent tuples for {x^a xi^b : |a| <= D, |b| = k} on the R-table."""
    tab = RModule(n, k, Fraction(0)).table
    base = exponents_up_to(tab.base_size, max_base_degree)
    fiber = exponents_of_degree(tab.base_size, k)
    return tab, [a + b for a in base for b in fiber]


@dataclass(frozen=True)
class CasimirResult:
    n: int
    k: int
    delta: Fraction
    assembled: DiffOp
    closed_form: DiffOp
    c: Fraction
    eigenvalues: tuple
    verified: bool
    max_base_degree: int
    counterexample: Optional[Poly]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "delta": format_rational(self.delta),
            "c": format_rational(self.c),
            "eigenvalues": [format_rational(e) for e in self.eigenvalues],
            "verified": self.verified,
            "family": {"max_base_degree": self.max_base_degree},
            "counterexample": None if self.counterexample is None
            else self.counterexample.to_json(),
        }


def verify_diagonal_form(
    n: int, k: int, delta, max_base_degree: int = 4, spot_checks: int = 3
) -> CasimirResult:
    """Compare the assembled Casimir with its diagonal closed form.

    Evaluates both on the full monomial family, then on seeded random
    monomials of base degree 7.  On disagreement the first differing
    monomial is recorded as the counterexample.
    """
    delta = Fraction(delta)
    assembled = assemble_casimir(n, k, delta, "dual_sum")
    closed = closed_form_casimir(n, k, delta)
    tab, family = monomial_family(n, k, max_base_degree)
    verified = True
    witness = None
    for exp in sorted(family, key=grlex_key):
        mono = Poly.monomial(tab, exp)
        if assembled.apply(mono) != closed.apply(mono):
            verified, witness = False, mono
            break
    if verified and spot_checks:
        rng = random.Random(20240 + 1000 * n + 100 * k)
        fibers = exponents_of_degree(tab.base_size, k)
        highs = exponents_of_degree(tab.base_size, 7)
        for _ in range(spot_checks):
            exp = rng.choice(highs) + rng.choice(fibers)
            mono = Poly.monomial(tab, exp)
            if assembled.apply(mono) != closed.apply(mono):
                verified, witness = False, mono
                break
    eigs = tuple(eigenvalue(n, k, l, delta) for l in range(k + 1))
    return CasimirResult(
        n, k, delta, assembled, closed, c_value(n, k, delta), eigs,
        verified, max_base_degree, witness,
    )


@dataclass(frozen=True)
class CasimirMatrix:
    """The Casimir on the largest C-invariant monomial subfamily of a span."""

    module: RModule
    family: tuple          # kept exponent tuples, graded-lex
    matrix: tuple          # rows of Fractions, matrix[i][j] = <e_i, C e_j>
    overflow: tuple        # dropped exponent tuples (image left the span)

    def annihilated_by_spectrum(self) -> bool:
        """prod_l (M - eps_l I) == 0; certifies roots and diagonalizability."""
        size = len(self.family)
        if size == 0:
            return True
        acc = [[Fraction(1) if i == j else Fraction(0) for j in range(size)]
               for i in range(size)]
        for l in range(self.module.k + 1):
            eps = eigenvalue(self.module.n, self.module.k, l, self.module.delta)
            shifted = [[self.matrix[i][j] - (eps if i == j else 0) for j in range(size)]
                       for i in range(size)]
            acc = [[sum((acc[i][r] * shifted[r][j] for r in range(size)), Fraction(0))
                    for j in range(size)] for i in range(size)]
        return all(all(x == 0 for x in row) for row in acc)

    def eigenspace_dimension(self, eps: Fraction) -> int:
        size = len(self.family)
        shifted = [[self.matrix[i][j] - (eps if i == j else 0) for j in range(size)]
                   for i in range(size)]
        return len(exact_nullspace(shifted, size))


def casimir_matrix(n: int, k: int, delta, base_degree: int) -> CasimirMatrix:
    """Restrict the assembled Casimir to {x^a xi^b : |a| <= D, |b| = k}.

    The Casimir can raise the base degree of individual monomials, so the
    span is shrunk to its largest C-invariant monomial subfamily; the
    dropped monomials are reported as overflow columns.
    """
    delta = Fraction(delta)
    module = RModule(n, k, delta)
    cas = assemble_casimir(n, k, delta, "dual_sum")
    tab, family = monomial_family(n, k, base_degree)
    family = sorted(family, key=grlex_key)
    images = {exp: cas.apply(Poly.monomial(tab, exp)) for exp in family}
    kept = set(family)
    changed = True
    while changed:
        changed = False
        for exp in list(kept):
            if any(out_exp not in kept for out_exp in images[exp].terms):
                kept.discard(exp)
                changed = True
    final = tuple(exp for exp in family if exp in kept)
    index = {exp: i for i, exp in enumerate(final)}
    size = len(final)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for j, exp in enumerate(final):
        for out_exp, coeff in images[exp].terms.items():
            matrix[index[out_exp]][j] = coeff
    overflow = tuple(exp for exp in family if exp not in kept)
    return CasimirMatrix(module, final, tuple(tuple(r) for r in matrix), overflow)


# -- expansion-coefficient recovery ----------------------------------------------


def diagonalization_witness(n: int, k: int) -> Poly:
    """(p_1 xi_t + xi_q1)^k: a contraction-free element spanning a top summand."""
    tab = RModule(n, k, Fraction(0)).table
    base = (
        Poly.variable(tab, tab.p(1)) * Poly.variable(tab, tab.fiber("xi", tab.t))
        + Poly.variable(tab, tab.fiber("xi", tab.q(1)))
    )
    return base ** k


def extract_scalar(multiple: Poly, of: Poly) -> Fraction:
    """The exact scalar s with multiple == s * of; DomainError otherwise."""
    if of.is_zero():
        raise DomainError("cannot extract a scalar against the zero polynomial")
    if multiple.is_zero():
        return Fraction(0)
    exp, coeff = next(iter(of.terms.items()))
    s = multiple.terms.get(exp, Fraction(0)) / coeff
    if multiple != of.scale(s):
        raise DomainError("operand is not a scalar multiple")
    return s


def expansion_constants(n: int, k: int, delta) -> tuple:
    """Recover (c0, c1, c2) of C = sum_m c_m X^m i_alpha^m from eigenvectors.

    c0 comes from the witness P^k (a ker-i_alpha element), c1 from X P^{k-1}
    and c2 from X^2 P^{k-2}, exactly as in the diagonalization argument.
    Entries that need k >= 1 or k >= 2 are returned as None below those.
    """
    from .operators import gen_hamiltonian  # local import to avoid cycle at import time
    from .spectra import commutation_r
    from .symbols import SymbolElem

    delta = Fraction(delta)
    cas = assemble_casimir(n, k, delta, "dual_sum")
    witness_k = SymbolElem(diagonalization_witness(n, k), RModule(n, k, delta))
    c0 = extract_scalar(cas.apply(witness_k.poly), witness_k.poly)
    c1 = c2 = None
    if k >= 1:
        lower = SymbolElem(diagonalization_witness(n, k - 1), RModule(n, k - 1, delta))
        lifted = gen_hamiltonian(lower)
        eig1 = extract_scalar(cas.apply(lifted.poly), lifted.poly)
        c1 = (eig1 - c0) / commutation_r(1, k - 1, delta, n)
    if k >= 2:
        lowest = SymbolElem(diagonalization_witness(n, k - 2), RModule(n, k - 2, delta))
        lifted2 = gen_hamiltonian(gen_hamiltonian(lowest))
        eig2 = extract_scalar(cas.apply(lifted2.poly), lifted2.poly)
        r2 = commutation_r(2, k - 2, delta, n)
        r1 = commutation_r(1, k - 2, delta, n)
        c2 = (eig2 - c0 - r2 * c1) / (r1 * r2)
    return c0, c1, c2
