"""Catalog of normal-closure Galois groups as explicit matrix groups.

Generators are monomial ell x ell matrices over GF(p^ell): a diagonal
matrix of Frobenius-conjugate entries and a cyclic-shift matrix with a
corner coefficient.  Groups are classified by the invariant pair
(c, split class), never by abstract isomorphism search; orders come from
honest breadth-first closure over canonical matrix keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .arith import multiplicative_order
from .census import (CensusReport, ExtensionParams, census_by_group,
                     cyclic_label, nonabelian_label)
from .errors import CapacityError, DomainError, InvariantError
from .ffield import FieldCtx, make_field

CLOSURE_CAP = 10 ** 5
FIELD_CEILING = 1 << 62


@dataclass(frozen=True)
class MonomialMatrix:
    """ell x ell matrix sending e_j to coeffs[j] * e_{(j+shift) mod ell}."""

    ell: int
    shift: int
    coeffs: tuple[int, ...]

    def mul(self, other: "MonomialMatrix", ctx: FieldCtx) -> "MonomialMatrix":
        ell = self.ell
        s = (self.shift + other.shift) % ell
        coeffs = tuple(
            ctx.mul(other.coeffs[j], self.coeffs[(j + other.shift) % ell])
            for j in range(ell))
        return MonomialMatrix(ell, s, coeffs)

    def inv(self, ctx: FieldCtx) -> "MonomialMatrix":
        ell = self.ell
        s = (-self.shift) % ell
        coeffs = tuple(ctx.inv(self.coeffs[(k - s) % ell]) for k in range(ell))
        return MonomialMatrix(ell, s, coeffs)

    def is_identity(self) -> bool:
        return self.shift == 0 and all(c == 1 for c in self.coeffs)

    def dense(self) -> tuple[tuple[int, ...], ...]:
        """Row tuples of encoded field elements."""
        ell = self.ell
        rows = [[0] * ell for _ in range(ell)]
        for j in range(ell):
            rows[(j + self.shift) % ell][j] = self.coeffs[j]
        return tuple(tuple(r) for r in rows)

    @staticmethod
    def identity(ell: int) -> "MonomialMatrix":
        return MonomialMatrix(ell, 0, (1,) * ell)


@dataclass(frozen=True)
class MatrixPair:
    """The diagonal/shift generator pair acting on the ell-dim space."""

    T: MonomialMatrix
    V: MonomialMatrix


def generator_matrices(ctx: FieldCtx, alpha: int, beta: int, ell: int) -> MatrixPair:
    """T = diag(alpha, alpha^p, ..., alpha^(p^(ell-1))), V = shift with
    corner beta; deterministic in (alpha, beta)."""
    if alpha == 0 or beta == 0:
        raise DomainError("alpha and beta must be nonzero")
    diag = tuple(ctx.frob(alpha, j) for j in range(ell))
    T = MonomialMatrix(ell, 0, diag)
    V = MonomialMatrix(ell, 1, (1,) * (ell - 1) + (beta,))
    return MatrixPair(T=T, V=V)


def group_closure_order(generators, ctx: FieldCtx, cap: int = CLOSURE_CAP) -> int:
    """Order of the generated matrix group by explicit BFS closure."""
    gens = list(generators)
    seen = {MonomialMatrix.identity(gens[0].ell)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = m.mul(g, ctx)
                if prod not in seen:
                    if len(seen) >= cap:
                        raise CapacityError(f"group closure exceeds cap {cap}")
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return len(seen)


def closure_elements(generators, ctx: FieldCtx, cap: int = CLOSURE_CAP):
    gens = list(generators)
    seen = {MonomialMatrix.identity(gens[0].ell)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = m.mul(g, ctx)
                if prod not in seen:
                    if len(seen) >= cap:
                        raise CapacityError(f"group closure exceeds cap {cap}")
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# split / nonsplit conventions (shared with the module oracle)

@lru_cache(maxsize=None)
def least_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    for g in range(2, p):
        if multiplicative_order(g, p) == p - 1:
            return g
    raise DomainError(f"{p} has no primitive root; not prime?")


def power_sum(p: int, ell: int) -> int:
    """1 + p + ... + p^(ell-1)."""
    return (p ** ell - 1) // (p - 1)


def beta_is_power_residue(c: int, beta_order: int, p: int, ell: int) -> bool:
    """Whether an element of the given order lies in C^(1+p+...+p^(ell-1))
    for C cyclic of order c; this decides the split case."""
    ps = power_sum(p, ell)
    return (c // gcd(c, ps)) % beta_order == 0


def nonsplit_index(c: int, beta_residue: int, p: int, ell: int) -> int:
    """Class index 1..ell-1 of beta (an element of F_p*, as an int mod p)
    relative to the canonical coset generator.

    Convention: h = g^((p-1)/g1) for g the least primitive root mod p and
    g1 = gcd(c, p-1) generates C intersect F_p*; the index is the discrete
    log of beta base h, reduced mod ell."""
    g1 = gcd(c, p - 1)
    h = pow(least_primitive_root(p), (p - 1) // g1, p)
    x = 1
    for k in range(g1):
        if x == beta_residue % p:
            j = k % ell
            if j == 0:
                raise InvariantError("nonsplit_index called on a split beta")
            return j
        x = x * h % p
    raise DomainError(f"{beta_residue} is not in the order-{g1} subgroup mod {p}")


def split_class(ctx: FieldCtx, alpha: int, beta: int,
                params: ExtensionParams) -> tuple[str, int]:
    """("split", 0) or ("nonsplit", j) for the pair (alpha, beta).

    alpha ranges over GF(p^ell)^*, beta over the prime subfield; the class
    depends only on c = ord<alpha,beta> and the coset of beta, so it is
    invariant under alpha -> alpha^p.
    """
    p, ell = params.p, params.ell
    if alpha == 0 or beta == 0:
        raise DomainError("alpha and beta must be nonzero")
    if ctx.frob(beta) != beta:
        raise DomainError("beta must lie in the prime subfield")
    c = _lcm(ctx.element_order(alpha), ctx.element_order(beta))
    beta_order = ctx.element_order(beta)
    if beta_is_power_residue(c, beta_order, p, ell):
        return ("split", 0)
    return ("nonsplit", nonsplit_index(c, beta, p, ell))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# the catalog

@dataclass(frozen=True)
class GroupDescriptor:
    kind: str  # "cyclic" | "split" | "nonsplit"
    c: int
    class_index: int
    p: int
    ell: int
    label: str


@dataclass(frozen=True)
class CatalogEntry:
    descriptor: GroupDescriptor
    alpha: int
    beta: int
    generators: tuple[MonomialMatrix, ...]
    matrix_order: int | None  # None when beyond the closure cap
    expected_matrix_order: int
    full_order: int  # matrix part times p^ell
    abelian: bool
    noncommuting_witness: tuple[MonomialMatrix, MonomialMatrix] | None


def catalog(params: ExtensionParams, closure_cap: int = CLOSURE_CAP,
            census: CensusReport | None = None) -> list[CatalogEntry]:
    """One entry per positive-count census descriptor, with a concrete
    matrix representative; closure orders are computed when the expected
    order fits under the cap, otherwise left as None."""
    p, ell = params.p, params.ell
    ctx = make_field(p, ell, ceiling=FIELD_CEILING)
    if census is None:
        census = census_by_group(params)
    entries: list[CatalogEntry] = []
    for centry in census.by_group:
        c = centry.c
        alpha = ctx.root_of_unity(c)
        if centry.kind == "cyclic":
            beta = 1
            diag_a = MonomialMatrix(ell, 0, tuple(ctx.frob(alpha, j) for j in range(ell)))
            diag_b = MonomialMatrix(ell, 0, (1,) * ell)
            gens: tuple[MonomialMatrix, ...] = (diag_a, diag_b)
            expected = c
            abelian = True
            desc = GroupDescriptor("cyclic", c, 0, p, ell, cyclic_label(c))
        else:
            if centry.kind == "split":
                beta = 1
            else:
                g1 = gcd(c, p - 1)
                h = pow(least_primitive_root(p), (p - 1) // g1, p)
                beta = pow(h, centry.class_index, p)
                got = split_class(ctx, alpha, beta, params)
                if got != ("nonsplit", centry.class_index):
                    raise InvariantError(
                        f"nonsplit representative for {centry.label} "
                        f"classified as {got}")
            pair = generator_matrices(ctx, alpha, beta, ell)
            gens = (pair.T, pair.V)
            expected = c * ell
            abelian = False
            desc = GroupDescriptor(centry.kind, c, centry.class_index, p, ell,
                                   nonabelian_label(c, centry.kind == "split",
                                                    centry.class_index))
        order = None
        witness = None
        if expected <= closure_cap:
            elements = closure_elements(gens, ctx, cap=closure_cap)
            order = len(elements)
            if order != expected:
                raise InvariantError(
                    f"closure order {order} != expected {expected} for {desc.label}")
            if not abelian:
                witness = _noncommuting_pair(gens, ctx)
                if witness is None:
                    raise InvariantError(f"{desc.label} closed abelian")
            elif _noncommuting_pair(gens, ctx) is not None:
                raise InvariantError(f"{desc.label} is not abelian")
        entries.append(CatalogEntry(
            descriptor=desc, alpha=alpha, beta=beta, generators=gens,
            matrix_order=order, expected_matrix_order=expected,
            full_order=expected * p ** ell, abelian=abelian,
            noncommuting_witness=witness))
    return entries


def _noncommuting_pair(gens, ctx: FieldCtx):
    for a in gens:
        for b in gens:
            if a.mul(b, ctx) != b.mul(a, ctx):
                return (a, b)
    return None


# ---------------------------------------------------------------------------
# prime-field models (regular representation on the power basis)

def regular_rep(ctx: FieldCtx, a: int) -> list[int]:
    """Multiplication-by-a as basis images over F_p (encoded vectors of
    the linalg codec: packed ints for p = 2, digit tuples otherwise)."""
    images = ctx.mult_matrix(a)
    if ctx.p == 2:
        return images
    return [ctx.digits(img) for img in images]


def frobenius_rep(ctx: FieldCtx, k: int = 1) -> list:
    """x -> x^(p^k) as basis images over F_p."""
    images = [ctx.frob(ctx.p ** j, k) for j in range(ctx.m)]
    if ctx.p == 2:
        return images
    return [ctx.digits(img) for img in images]


def compose_images(ctx: FieldCtx, outer: list, inner: list) -> list:
    """Basis images of outer o inner (images in the linalg codec)."""
    if ctx.p == 2:
        out = []
        for img in inner:
            acc = 0
            j = 0
            while img:
                if img & 1:
                    acc ^= outer[j]
                img >>= 1
                j += 1
            out.append(acc)
        return out
    p, m = ctx.p, ctx.m
    out = []
    for img in inner:
        acc = [0] * m
        for j, c in enumerate(img):
            if c:
                col = outer[j]
                for i in range(m):
                    acc[i] = (acc[i] + c * col[i]) % p
        out.append(tuple(acc))
    return out


def cyclic_prime_field_model(ctx: FieldCtx, alpha: int, beta: int) -> list[list]:
    """F_p-matrices of the two commuting diagonal generators: the pair
    acts on GF(p^ell) by multiplication."""
    return [regular_rep(ctx, alpha), regular_rep(ctx, beta)]


def nonabelian_prime_field_model(ctx: FieldCtx, alpha: int, beta: int) -> list[list]:
    """F_p-matrices of (mult by alpha, mult-by-root o Frobenius^(ell-1))
    where root^(1+p+...+p^(ell-1)) = beta, so the shift generator's ell-th
    power is exactly the scalar beta; generates a group isomorphic to
    <T_alpha, V_beta>."""
    tau = regular_rep(ctx, alpha)
    root = _power_sum_root(ctx, beta)
    v = compose_images(ctx, regular_rep(ctx, root), frobenius_rep(ctx, ctx.m - 1))
    return [tau, v]


def _power_sum_root(ctx: FieldCtx, beta: int) -> int:
    """Solve x^(1+p+...+p^(ell-1)) = beta for beta in the prime subfield;
    the discrete log of beta is always divisible by the power sum."""
    ps = power_sum(ctx.p, ctx.m)
    if beta == 1:
        return 1
    t = _dlog(ctx, beta)
    if t % ps != 0:
        raise InvariantError(f"no power-sum root for {beta}")
    return ctx.pow(ctx.generator, t // ps)


def _dlog(ctx: FieldCtx, x: int) -> int:
    """Brute discrete log base the canonical generator (small fields only)."""
    if ctx.mult_order > 1 << 20:
        raise CapacityError("discrete log table too large")
    acc = 1
    for k in range(ctx.mult_order):
        if acc == x:
            return k
        acc = ctx.mul(acc, ctx.generator)
    raise DomainError(f"{x} is not invertible")
