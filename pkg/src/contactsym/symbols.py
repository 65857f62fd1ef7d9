"""Density-weighted symbol modules and the exact Lie-derivative actions.

Two families of modules appear:

  * R^k_delta -- polynomials of homogeneous degree k in the xi block,
    carrying the true density weight  delta + k/(n+1).  Only the xi block
    is enabled on their tables.
  * S^{k m}_{l; nu} -- polynomials of homogeneous degrees (k, m, l) in the
    blocks (xi, eta, Y), of weight nu.  Blocks with degree zero are left
    off the table (a product of elements takes the union of blocks).

The action of a base vector field X on a symbol Q is

    L_X Q = X(Q) - dX^i/dx^j xi_i dQ/dxi_j - (same for eta)
            + dX^i/dx^j Y^j dQ/dY^i + weight * div(X) * Q,

with the *true bundle weight* in the divergence term: delta + k/(n+1) on
R^k_delta.  Dropping the k/(n+1) shift is the classic silent error; the
weight is always read off the module descriptor, never inferred from the
polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .contact import VField, divergence
from .diffop import DiffOp
from .errors import DomainError, StructuralError, TableMismatchError
from .poly import Poly
from .rationals import format_rational
from .vartable import VarTable, table


def weight_unit(n: int) -> Fraction:
    """The basic weight increment I = 1/(n+1)."""
    return Fraction(1, n + 1)


@dataclass(frozen=True)
class RModule:
    """R^k_delta: xi-degree k with bundle weight delta + k/(n+1)."""

    n: int
    k: int
    delta: Fraction

    def __post_init__(self):
        if self.k < 0:
            raise DomainError("fiber degree must be >= 0")
        object.__setattr__(self, "delta", Fraction(self.delta))

    @property
    def blocks(self) -> tuple:
        return ("xi",)

    @property
    def table(self) -> VarTable:
        return table(self.n, ("xi",))

    @property
    def weight(self) -> Fraction:
        return self.delta + Fraction(self.k, self.n + 1)

    @property
    def fiber_degrees(self) -> dict:
        return {"xi": self.k}

    def contracted(self) -> "RModule":
        return RModule(self.n, max(self.k - 1, 0), self.delta)

    def raised(self) -> "RModule":
        return RModule(self.n, self.k + 1, self.delta)

    def describe(self) -> dict:
        return {"module": "R", "n": self.n, "k": self.k, "delta": format_rational(self.delta)}

    def __str__(self):
        return f"R^{self.k}_({format_rational(self.delta)})[n={self.n}]"


@dataclass(frozen=True)
class SModule:
    """S^{k m}_{l; nu}: degrees (k, m, l) in (xi, eta, Y), weight nu."""

    n: int
    k: int
    m: int = 0
    l: int = 0
    nu: Fraction = Fraction(0)

    def __post_init__(self):
        if min(self.k, self.m, self.l) < 0:
            raise DomainError("fiber degrees must be >= 0")
        object.__setattr__(self, "nu", Fraction(self.nu))

    @property
    def blocks(self) -> tuple:
        out = []
        if self.k:
            out.append("xi")
        if self.m:
            out.append("eta")
        if self.l:
            out.append("Y")
        return tuple(out)

    @property
    def table(self) -> VarTable:
        return table(self.n, self.blocks)

    @property
    def weight(self) -> Fraction:
        return self.nu

    @property
    def fiber_degrees(self) -> dict:
        return {b: {"xi": self.k, "eta": self.m, "Y": self.l}[b] for b in self.blocks}

    def contracted(self) -> "SModule":
        return SModule(self.n, max(self.k - 1, 0), self.m, self.l,
                       self.nu - weight_unit(self.n))

    def raised(self) -> "SModule":
        return SModule(self.n, self.k + 1, self.m, self.l, self.nu + weight_unit(self.n))

    def product(self, other: "SModule") -> "SModule":
        if self.n != other.n:
            raise TableMismatchError("modules over different n")
        return SModule(self.n, self.k + other.k, self.m + other.m,
                       self.l + other.l, self.nu + other.nu)

    def describe(self) -> dict:
        return {"module": "S", "n": self.n, "k": self.k, "m": self.m, "l": self.l,
                "nu": format_rational(self.nu)}

    def __str__(self):
        return f"S^{self.k},{self.m}_({self.l};{format_rational(self.nu)})[n={self.n}]"


ModuleDesc = Union[RModule, SModule]


class SymbolElem:
    """A polynomial member of a symbol module.

    The polynomial must be homogeneous of the declared degree in every
    enabled fiber block; weight bookkeeping lives on the module descriptor.
    """

    __slots__ = ("poly", "module")

    def __init__(self, poly: Poly, module: ModuleDesc):
        tab = module.table
        poly = poly if poly.table == tab else poly.convert(tab)
        for block, deg in module.fiber_degrees.items():
            if not poly.is_homogeneous_on(tab.block_range(block), deg):
                raise StructuralError(
                    f"polynomial is not homogeneous of degree {deg} in block {block}"
                )
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "module", module)

    def __setattr__(self, *_):
        raise AttributeError("SymbolElem is immutable")

    @property
    def n(self) -> int:
        return self.module.n

    @property
    def weight(self) -> Fraction:
        return self.module.weight

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __eq__(self, other):
        if not isinstance(other, SymbolElem):
            return NotImplemented
        return self.module == other.module and self.poly == other.poly

    def __add__(self, other: "SymbolElem") -> "SymbolElem":
        if self.module != other.module:
            raise TableMismatchError("cannot add symbols from different modules")
        return SymbolElem(self.poly + other.poly, self.module)

    def __sub__(self, other: "SymbolElem") -> "SymbolElem":
        if self.module != other.module:
            raise TableMismatchError("cannot subtract symbols from different modules")
        return SymbolElem(self.poly - other.poly, self.module)

    def scale(self, c) -> "SymbolElem":
        return SymbolElem(self.poly.scale(c), self.module)

    def __mul__(self, other: "SymbolElem") -> "SymbolElem":
        """Module product (S-type descriptors only): degrees and weights add."""
        if not isinstance(other, SymbolElem):
            return NotImplemented
        if not isinstance(self.module, SModule) or not isinstance(other.module, SModule):
            raise StructuralError("symbol products are defined on S-type modules")
        mod = self.module.product(other.module)
        tab = mod.table
        return SymbolElem(self.poly.convert(tab) * other.poly.convert(tab), mod)

    def __str__(self):
        return f"{self.poly} in {self.module}"

    def __repr__(self):
        return f"SymbolElem({self})"

    def to_json(self) -> dict:
        doc = self.module.describe()
        doc["poly"] = self.poly.to_json()
        return doc


# -- actions -----------------------------------------------------------------


def density_action(x: VField, f: Poly, lam) -> Poly:
    """Action on lambda-densities: L^lam_X f = X(f) + lam * f * div(X)."""
    lam = Fraction(lam)
    out = x.apply(f)
    if lam:
        out = out + (f * divergence(x).convert(f.table)).scale(lam)
    return out


def lie_action_symbol(x: VField, s: SymbolElem) -> SymbolElem:
    """L_X on a symbol: fiber degrees preserved, module unchanged."""
    tab = s.module.table
    q = s.poly
    out = x.apply(q)
    jac = _jacobian(x)
    for i in range(tab.base_size):
        for j in range(tab.base_size):
            dji = jac[j][i]
            if dji.is_zero():
                continue
            dji = dji.convert(tab)
            for block in s.module.blocks:
                if block == "Y":
                    # + dX^i/dx^j * Y^j * dQ/dY^i
                    dq = q.diff(tab.fiber("Y", i))
                    if dq:
                        out = out + dji * Poly.variable(tab, tab.fiber("Y", j)) * dq
                else:
                    # - dX^i/dx^j * xi_i * dQ/dxi_j
                    dq = q.diff(tab.fiber(block, j))
                    if dq:
                        out = out - dji * Poly.variable(tab, tab.fiber(block, i)) * dq
    w = s.module.weight
    if w:
        out = out + (q * divergence(x).convert(tab)).scale(w)
    return SymbolElem(out, s.module)


def lie_action_as_diffop(x: VField, module: ModuleDesc) -> DiffOp:
    """The same action packaged as a normal-ordered operator on the module table."""
    tab = module.table
    terms: dict = {}

    def add(midx, coeff: Poly):
        if coeff.is_zero():
            return
        prev = terms.get(midx)
        coeff = coeff if prev is None else prev + coeff
        if coeff:
            terms[midx] = coeff
        else:
            terms.pop(midx, None)

    def unit(idx):
        m = [0] * tab.size
        m[idx] = 1
        return tuple(m)

    for a in range(tab.base_size):
        add(unit(a), x.components[a].convert(tab))
    jac = _jacobian(x)
    for i in range(tab.base_size):
        for j in range(tab.base_size):
            dji = jac[j][i]
            if dji.is_zero():
                continue
            dji = dji.convert(tab)
            for block in module.blocks:
                if block == "Y":
                    add(unit(tab.fiber("Y", i)),
                        dji * Poly.variable(tab, tab.fiber("Y", j)))
                else:
                    add(unit(tab.fiber(block, j)),
                        -(dji * Poly.variable(tab, tab.fiber(block, i))))
    w = module.weight
    if w:
        add((0,) * tab.size, divergence(x).convert(tab).scale(w))
    return DiffOp(tab, terms)


def _jacobian(x: VField):
    """jac[j][i] = d(X^i)/d(x_j) over the base table."""
    size = x.table.base_size
    return [[x.components[i].diff(j) for i in range(size)] for j in range(size)]


# -- named Euler-type operators (shared by several modules) -------------------


def spatial_euler_op(tab: VarTable) -> DiffOp:
    """E_s = sum_s x_s d_{x_s} over the spatial base variables."""
    out = DiffOp.zero(tab)
    for a in tab.spatial_base():
        out = out + DiffOp.partial(tab, a, Poly.variable(tab, a))
    return out


def base_euler_op(tab: VarTable) -> DiffOp:
    """Full base Euler field, including t d_t."""
    out = DiffOp.zero(tab)
    for a in tab.base_range:
        out = out + DiffOp.partial(tab, a, Poly.variable(tab, a))
    return out


def fiber_euler_op(tab: VarTable, block: str = "xi") -> DiffOp:
    """E_block = sum over the whole fiber block of v d_v."""
    out = DiffOp.zero(tab)
    for idx in tab.block_range(block):
        out = out + DiffOp.partial(tab, idx, Poly.variable(tab, idx))
    return out


def fiber_spatial_euler_op(tab: VarTable, block: str = "xi") -> DiffOp:
    """Spatial part of the fiber Euler operator (omits the t slot)."""
    out = DiffOp.zero(tab)
    off = tab.block_offset(block)
    for a in tab.spatial_base():
        out = out + DiffOp.partial(tab, off + a, Poly.variable(tab, off + a))
    return out


def euler_contraction_poly(tab: VarTable, block: str = "xi") -> Poly:
    """E(xi) = sum_s x_s xi_s + t xi_t, the pairing of the Euler field with xi."""
    out = Poly.zero(tab)
    for a in tab.base_range:
        out = out + Poly.variable(tab, a) * Poly.variable(tab, tab.fiber(block, a))
    return out


def spatial_contraction_poly(tab: VarTable, block: str = "xi") -> Poly:
    """<E_s, xi_s> = sum over spatial pairs x_s xi_s."""
    out = Poly.zero(tab)
    for a in tab.spatial_base():
        out = out + Poly.variable(tab, a) * Poly.variable(tab, tab.fiber(block, a))
    return out
