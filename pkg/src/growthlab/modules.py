"""Finitely generated modules over Z[x_1..x_l] and their maximal-submodule
growth.

A module is given either by commuting integer matrices acting on
Z^k (+) Z/t_1 (+) ... (MatrixAction) or, in one variable, by a presentation
matrix over Z[x] (Presented).  Every maximal submodule of p-power index
contains pN, so counting happens in the fiber N/pN: split the fiber into
primary components of the commuting algebra, read off the residue degree e
and multiplicity s at each maximal ideal, and sum (q^s - 1)/(q - 1) over the
ideals with residue field of the right size q = p^k.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass, field

from .arith import factorint, is_prime, prime_power_decompose, primes_up_to
from .linalg import (
    identity_matrix,
    image_basis,
    kernel_basis,
    mat_apply,
    mat_from_int,
    mat_mul,
    mat_sub,
    min_poly_of_matrix,
    poly_of_matrix,
    rank,
    row_space_basis,
    rref,
    smith_normal_form_int,
    smith_normal_form_poly,
    solve,
    x_minus_matrix,
)
from .poly import (
    DEFAULT_SEED,
    QQ,
    PrimeField,
    count_irreducibles,
    distinct_complex_root_count,
    factor_mod_p,
    int_poly_to_field,
    pdeg,
    pmod,
    pnormalize,
)

# exhaustive algebra scan is used below this many elements; above it, leaf
# acceptance is randomized with failure probability <= 2**-T per leaf
EXHAUSTIVE_ALGEBRA_LIMIT = 2 ** 10


def _as_matrix_tuple(m):
    return tuple(tuple(int(x) for x in row) for row in m)


def _int_mat_mul(A, B):
    n = len(B)
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(n)) for j in range(len(B[0])))
        for i in range(len(A))
    )


def _int_det(A):
    n = len(A)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        # compute permutation sign by counting inversions
        inv = sum(
            1 for i in range(n) for j in range(i + 1, n) if seen[i] > seen[j]
        )
        sign = -1 if inv % 2 else 1
        term = sign
        for i in range(n):
            term *= A[i][perm[i]]
        total += term
    return total


@dataclass(frozen=True)
class MatrixAction:
    """Z^k (+) (+)_j Z/t_j with l commuting integer matrices acting on it.

    Matrix columns are the images of the generators: the first k columns are
    the free generators, the rest the torsion generators in order.
    """

    k: int
    torsion: tuple[int, ...]
    actions: tuple[tuple[tuple[int, ...], ...], ...]
    group_action: bool = False

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        object.__setattr__(
            self, "actions", tuple(_as_matrix_tuple(a) for a in self.actions)
        )
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")
        if not self.actions:
            raise ValueError("at least one action matrix required")
        dim = self.k + len(self.torsion)
        for idx, a in enumerate(self.actions):
            if len(a) != dim or any(len(r) != dim for r in a):
                raise ValueError(
                    f"actions[{idx}] is not {dim}x{dim}"
                )
        for i in range(len(self.actions)):
            for j in range(i + 1, len(self.actions)):
                if dim and _int_mat_mul(self.actions[i], self.actions[j]) != _int_mat_mul(
                    self.actions[j], self.actions[i]
                ):
                    raise ValueError(
                        f"actions[{i}] and actions[{j}] do not commute"
                    )
        for idx, a in enumerate(self.actions):
            self._check_endomorphism(a, idx)
        if self.group_action:
            for idx, a in enumerate(self.actions):
                self._check_automorphism(a, idx)

    def _check_endomorphism(self, a, idx):
        # torsion generator e_{k+j} has order t_j; its image must too
        k = self.k
        for j, t in enumerate(self.torsion):
            for r in range(k):
                if a[r][k + j] != 0:
                    raise ValueError(
                        f"actions[{idx}] maps torsion generator {j} into the free part"
                    )
            for r, tr in enumerate(self.torsion):
                if (t * a[k + r][k + j]) % tr:
                    raise ValueError(
                        f"actions[{idx}] does not preserve torsion relation {j}"
                    )

    def _check_automorphism(self, a, idx):
        k = self.k
        free_block = [row[:k] for row in a[:k]]
        if k and abs(_int_det(free_block)) != 1:
            raise ValueError(
                f"actions[{idx}] is not invertible on the free part (group_action)"
            )
        qs = set()
        for t in self.torsion:
            qs.update(factorint(t))
        for q in sorted(qs):
            idxs = [j for j, t in enumerate(self.torsion) if t % q == 0]
            F = PrimeField(q)
            block = [
                [F.from_int(a[k + r][k + c]) for c in idxs] for r in idxs
            ]
            if rank(F, block, len(idxs)) != len(idxs):
                raise ValueError(
                    f"actions[{idx}] is not an automorphism of the torsion mod {q}"
                )

    @property
    def ell(self) -> int:
        return len(self.actions)

    def free_blocks(self):
        k = self.k
        return [tuple(row[:k] for row in a[:k]) for a in self.actions]


@dataclass(frozen=True)
class Presented:
    """Cokernel of a relation matrix over Z[x] (one variable).

    `relations` has `gens` rows; each column is one relation.  Entries are
    integer coefficient tuples in ascending degree.
    """

    gens: int
    relations: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        rel = tuple(
            tuple(tuple(pnormalize(list(e))) for e in row) for row in self.relations
        )
        object.__setattr__(self, "relations", rel)
        if self.gens < 0:
            raise ValueError("gens must be nonnegative")
        if len(rel) not in (0, self.gens):
            raise ValueError("relations must have one row per generator")
        if rel and len({len(r) for r in rel}) > 1:
            raise ValueError("ragged relation matrix")

    def relation_matrix(self):
        if self.relations:
            return [list(map(list, row)) for row in self.relations]
        return [[] for _ in range(self.gens)]


ModuleDescriptor = MatrixAction | Presented


@dataclass(frozen=True)
class FiberModule:
    """The F_p-module N/pN with its induced commuting actions."""

    p: int
    dim: int
    actions: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        F = PrimeField(self.p)
        for a in self.actions:
            if len(a) != self.dim or any(len(r) != self.dim for r in a):
                raise ValueError("fiber action has wrong dimensions")
        for i in range(len(self.actions)):
            for j in range(i + 1, len(self.actions)):
                A = [list(r) for r in self.actions[i]]
                B = [list(r) for r in self.actions[j]]
                if mat_mul(F, A, B) != mat_mul(F, B, A):
                    raise ValueError("fiber actions do not commute")


@dataclass(frozen=True)
class PresentedFiber:
    """N/pN for a Presented module: F_p[x] invariant factors plus free rank."""

    p: int
    invariant_factors: tuple[tuple[int, ...], ...]
    free_rank: int


@dataclass(frozen=True)
class SpectrumEntry:
    """One maximal ideal of the fiber algebra: residue field F_{p^e},
    multiplicity s, dimension of the primary component it came from."""

    e: int
    s: int
    component_dim: int


@dataclass(frozen=True)
class ModuleInvariants:
    d: int
    t: int
    a: tuple[tuple[int, ...], ...]
    rho: tuple[int, ...]
    s0: int | None
    r0: int | None
    provenance: str  # "exact" | "window-stabilized"


@dataclass(frozen=True)
class GrowthType:
    """Trichotomy: n^degree polynomial growth, or n^degree/log n."""

    kind: str  # "PolyDegree" | "SubPoly"
    degree: int
    d: int
    r_max: int
    r0: int

    def __str__(self):
        if self.kind == "SubPoly":
            return f"n^{self.degree}/log n"
        if self.degree == 0:
            return "bounded"
        return f"n^{self.degree}"


# -- fibers --------------------------------------------------------------------


def fiber_mod_p(m: ModuleDescriptor, p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if isinstance(m, Presented):
        F = PrimeField(p)
        rows = [
            [int_poly_to_field(F, list(e)) for e in row] for row in m.relations
        ]
        snf = smith_normal_form_poly(F, rows, ncols=len(rows[0]) if rows else 0)
        nonunit = tuple(
            tuple(d) for d in snf.diagonal if pdeg(d) >= 1
        )
        return PresentedFiber(
            p=p, invariant_factors=nonunit, free_rank=m.gens - snf.rank
        )
    keep = list(range(m.k)) + [
        m.k + j for j, t in enumerate(m.torsion) if t % p == 0
    ]
    acts = tuple(
        tuple(tuple(m.actions[i][r][c] % p for c in keep) for r in keep)
        for i in range(len(m.actions))
    )
    return FiberModule(p=p, dim=len(keep), actions=acts)


# -- joint spectrum ------------------------------------------------------------


def _restrict(F, M, basis, dim):
    """Matrix of M on the invariant subspace spanned by `basis`."""
    if not basis:
        return []
    bt = [[basis[j][i] for j in range(len(basis))] for i in range(dim)]
    cols = []
    for b in basis:
        img = mat_apply(F, M, b)
        coords = solve(F, bt, img, len(basis))
        if coords is None:
            raise ValueError("subspace not invariant")
        cols.append(coords)
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(cols))]


def _algebra_basis(F, mats, dim):
    """Span-closure basis of the unital algebra generated by `mats`.

    Returns matrices whose flattenings are in reduced echelon form.
    """
    def flat(M):
        return [x for row in M for x in row]

    def unflat(v):
        return [list(v[i * dim : (i + 1) * dim]) for i in range(dim)]

    basis_rows = row_space_basis(F, [flat(identity_matrix(F, dim))] + [flat(list(map(list, M))) for M in mats], dim * dim)
    while True:
        products = [
            flat(mat_mul(F, unflat(b), list(map(list, M))))
            for b in basis_rows
            for M in mats
        ]
        new_rows = row_space_basis(F, basis_rows + products, dim * dim)
        if len(new_rows) == len(basis_rows):
            return [unflat(v) for v in basis_rows]
        basis_rows = new_rows


def _split_by_operator(F, mats, dim, S):
    """Decompose F^dim into primary components of S; None if S is primary."""
    f = min_poly_of_matrix(F, S)
    fac = factor_mod_p(f, F.p)
    if len(fac.factors) < 2:
        return None
    pieces = []
    for g, mult in fac.factors:
        P = poly_of_matrix(F, list(g), S)
        Q = P
        for _ in range(mult - 1):
            Q = mat_mul(F, Q, P)
        basis = kernel_basis(F, Q, dim)
        sub = [_restrict(F, list(map(list, M)), basis, dim) for M in mats]
        pieces.append((sub, len(basis)))
    return pieces


def _quotient_maps(F, sub_basis, dim):
    """RREF data for reducing vectors modulo a subspace."""
    R, pivots = rref(F, sub_basis, dim)
    comp = [c for c in range(dim) if c not in pivots]
    return R, pivots, comp


def _reduce_mod(F, R, pivots, comp, v):
    v = list(v)
    for r, pc in enumerate(pivots):
        c = v[pc]
        if c != F.zero:
            for i in range(len(v)):
                v[i] = F.sub(v[i], F.mul(c, R[r][i]))
    return [v[c] for c in comp]


def _leaf_entry(F, mats, dim):
    """Residue data (e, s) at an accepted leaf."""
    # min poly of each generator is a power of a single irreducible g_i;
    # the radical of the algebra is generated by the g_i(M_i)
    nil_images = []
    for M in mats:
        f = min_poly_of_matrix(F, M)
        fac = factor_mod_p(f, F.p)
        assert len(fac.factors) == 1
        g = list(fac.factors[0][0])
        P = poly_of_matrix(F, g, M)
        nil_images.extend([P[r][c] for r in range(dim)] for c in range(dim))
    mw = row_space_basis(F, nil_images, dim) if nil_images else []
    R, pivots, comp = _quotient_maps(F, mw, dim) if mw else ([], [], list(range(dim)))
    qdim = len(comp)
    induced = []
    for M in mats:
        cols = []
        for c in comp:
            e = [F.zero] * dim
            e[c] = F.one
            cols.append(_reduce_mod(F, R, pivots, comp, mat_apply(F, M, e)))
        induced.append([[cols[j][i] for j in range(qdim)] for i in range(qdim)])
    alg = _algebra_basis(F, induced, qdim) if qdim else []
    e = len(alg)
    assert e >= 1 and qdim % e == 0
    return SpectrumEntry(e=e, s=qdim // e, component_dim=dim)


def _spectrum_of_component(F, mats, dim, rng, out):
    if dim == 0:
        return
    # split along each generator's min-poly factorization first
    for M in mats:
        pieces = _split_by_operator(F, mats, dim, M)
        if pieces:
            for sub, sdim in pieces:
                _spectrum_of_component(F, sub, sdim, rng, out)
            return
    alg = _algebra_basis(F, mats, dim)
    adim = len(alg)
    p = F.p
    if adim > 1 and p ** adim <= EXHAUSTIVE_ALGEBRA_LIMIT:
        for coeffs in itertools.product(range(p), repeat=adim):
            if all(c == 0 for c in coeffs):
                continue
            S = [
                [
                    sum(F.mul(F.from_int(c), alg[t][i][j]) for t, c in enumerate(coeffs)) % p
                    for j in range(dim)
                ]
                for i in range(dim)
            ]
            pieces = _split_by_operator(F, mats, dim, S)
            if pieces:
                for sub, sdim in pieces:
                    _spectrum_of_component(F, sub, sdim, rng, out)
                return
    elif adim > 1:
        budget = 40 + 2 * adim
        fails = 0
        while fails < budget:
            coeffs = [rng.randrange(p) for _ in range(adim)]
            if all(c == 0 for c in coeffs):
                continue
            S = [
                [
                    sum(c * alg[t][i][j] for t, c in enumerate(coeffs)) % p
                    for j in range(dim)
                ]
                for i in range(dim)
            ]
            pieces = _split_by_operator(F, mats, dim, S)
            if pieces:
                for sub, sdim in pieces:
                    _spectrum_of_component(F, sub, sdim, rng, out)
                return
            fails += 1
    out.append(_leaf_entry(F, mats, dim))


@functools.lru_cache(maxsize=None)
def joint_spectrum(fiber: FiberModule, seed: int = DEFAULT_SEED) -> tuple[SpectrumEntry, ...]:
    """Maximal ideals of the algebra generated by the fiber actions.

    Each entry (e, s, component_dim) contributes (q^s - 1)/(q - 1) maximal
    submodules of index q = p^e.
    """
    F = PrimeField(fiber.p)
    mats = [list(map(list, a)) for a in fiber.actions]
    rng = random.Random(seed * 1000003 + fiber.p)
    out: list[SpectrumEntry] = []
    _spectrum_of_component(F, mats, fiber.dim, rng, out)
    return tuple(sorted(out, key=lambda s: (s.e, s.s, s.component_dim)))


# -- counting ------------------------------------------------------------------


def count_max_submodules(m: ModuleDescriptor, n: int, seed: int = DEFAULT_SEED) -> int:
    """Number of maximal submodules of index n; 0 off prime powers."""
    if n < 2:
        raise ValueError(f"index must be >= 2, got {n}")
    pp = prime_power_decompose(n)
    if pp is None:
        return 0
    if isinstance(m, Presented):
        fib = fiber_mod_p(m, pp.p)
        return chain_count(
            [list(b) for b in fib.invariant_factors], fib.free_rank, n
        )
    fib = fiber_mod_p(m, pp.p)
    total = 0
    for entry in joint_spectrum(fib, seed):
        if entry.e == pp.k:
            q = n
            total += (q ** entry.s - 1) // (q - 1)
    return total


def chain_count(invariant_factors, free_rank: int, n: int) -> int:
    """Maximal submodules of index n of (+)_j F_p[x]/(b_j) (+) F_p[x]^free_rank.

    The summands are ordered so each is a quotient of the next (torsion
    ascending by divisibility, then free); the count telescopes as
    sum_j (m_n(A_j) - m_n(A_{j-1})) (1 + n + ... + n^{t-j}).
    """
    pp = prime_power_decompose(n)
    if pp is None:
        raise ValueError(f"{n} is not a prime power")
    p, k = pp.p, pp.k
    F = PrimeField(p)
    factors = [pnormalize([F.from_int(c) for c in b]) for b in invariant_factors]
    for b, bnext in zip(factors, factors[1:]):
        if pmod(F, bnext, b):
            raise ValueError("invariant factors violate the divisibility chain")
    per_term = [
        factor_mod_p(b, p).distinct_factors_of_degree(k) for b in factors
    ] + [count_irreducibles(p, k)] * free_rank
    t = len(per_term)
    total = 0
    prev = 0
    for j, mj in enumerate(per_term, start=1):
        weight = sum(n ** i for i in range(t - j + 1))
        total += (mj - prev) * weight
        prev = mj
    return total


def split_triv_nontriv(m: ModuleDescriptor, n: int, seed: int = DEFAULT_SEED) -> tuple[int, int]:
    """(mtriv, mnontriv): maximal submodules whose simple quotient carries a
    trivial / nontrivial action.  Trivial quotients exist only at prime n."""
    total = count_max_submodules(m, n, seed)
    pp = prime_power_decompose(n)
    if pp is None or pp.k != 1:
        return 0, total
    p = pp.p
    if isinstance(m, Presented):
        fib = fiber_mod_p(m, p)
        F = PrimeField(p)
        tp = fib.free_rank + sum(
            1 for b in fib.invariant_factors
            if sum(b[i] for i in range(len(b))) % p == 0  # b(1) = 0
        )
    else:
        fib = fiber_mod_p(m, p)
        F = PrimeField(p)
        images = []
        for a in fib.actions:
            AmI = mat_sub(F, [list(r) for r in a], identity_matrix(F, fib.dim))
            for col in range(fib.dim):
                images.append([AmI[r][col] for r in range(fib.dim)])
        tp = fib.dim - len(row_space_basis(F, images, fib.dim)) if images else fib.dim
    mtriv = (p ** tp - 1) // (p - 1)
    return mtriv, total - mtriv


# -- invariants and classification ----------------------------------------------


def bad_prime_ledger_module(m: ModuleDescriptor) -> frozenset[int]:
    """Finite superset of the primes where the fiber can differ from the
    generic (characteristic-0) behavior."""
    bad: set[int] = set()
    if isinstance(m, Presented):
        rows = [[[*e] for e in row] for row in m.relations]
        snf = smith_normal_form_poly(QQ, rows, ncols=len(rows[0]) if rows else 0)
        return snf.bad_primes
    for t in m.torsion:
        bad.update(factorint(t))
    for blk in m.free_blocks():
        det = _int_det([list(r) for r in blk])
        if det not in (0,):
            if abs(det) > 1:
                bad.update(factorint(abs(det)))
        snf = smith_normal_form_poly(QQ, x_minus_matrix(QQ, [list(r) for r in blk]), ncols=m.k)
        bad.update(snf.bad_primes)
    return frozenset(bad)


def module_invariants(m: ModuleDescriptor, window: int = 3, seed: int = DEFAULT_SEED) -> ModuleInvariants:
    if isinstance(m, Presented):
        rows_q = [[[*e] for e in row] for row in m.relations]
        snf = smith_normal_form_poly(QQ, rows_q, ncols=len(rows_q[0]) if rows_q else 0)
        a = tuple(
            tuple(int(c) for c in d) for d in snf.diagonal if pdeg(d) >= 1
        )
        r0 = m.gens - snf.rank
        s0 = len(a)
        rel_at_1 = [
            [sum(int(c) for c in e) for e in row] for row in m.relations
        ] or [[] for _ in range(m.gens)]
        t = m.gens - smith_normal_form_int(rel_at_1, ncols=len(rel_at_1[0]) if rel_at_1 else 0).rank
        rho = tuple(distinct_complex_root_count(list(d)) for d in a)
        return ModuleInvariants(
            d=r0 + s0, t=t, a=a, rho=rho, s0=s0, r0=r0, provenance="exact"
        )
    k = m.k
    stacked = []
    for blk in m.free_blocks():
        for r in range(k):
            stacked.append([blk[r][c] - (1 if r == c else 0) for c in range(k)])
    t = k - smith_normal_form_int(stacked, ncols=k).rank
    if m.ell == 1:
        blk = [list(r) for r in m.free_blocks()[0]]
        snf = smith_normal_form_poly(QQ, x_minus_matrix(QQ, blk), ncols=k)
        a = tuple(tuple(int(c) for c in d) for d in snf.diagonal if pdeg(d) >= 1)
        rho = tuple(distinct_complex_root_count(list(d)) for d in a)
        return ModuleInvariants(
            d=len(a), t=t, a=a, rho=rho, s0=None, r0=None, provenance="exact"
        )
    # several variables: recover d from joint spectra over a window of good primes
    bad = bad_prime_ledger_module(m)
    ds = []
    p = 2
    while len(ds) < window:
        if is_prime(p) and p not in bad:
            spec = joint_spectrum(fiber_mod_p(m, p), seed)
            ds.append(max((e.s for e in spec), default=0))
        p += 1
    if len(set(ds)) > 1:
        raise ValueError(
            f"window of {window} good primes did not stabilize d (saw {sorted(set(ds))}); "
            "retry with a larger window"
        )
    return ModuleInvariants(
        d=ds[0], t=t, a=(), rho=(), s0=None, r0=None, provenance="window-stabilized"
    )


def growth_type_classify(m: ModuleDescriptor) -> GrowthType:
    """Growth trichotomy for a presented Z[x]-module: polynomial of degree
    d or d-1, or n^r_max/log n."""
    if not isinstance(m, Presented):
        raise ValueError("growth_type_classify requires a Presented module")
    rows_q = [[[*e] for e in row] for row in m.relations]
    ncols = len(rows_q[0]) if rows_q else 0
    snf = smith_normal_form_poly(QQ, rows_q, ncols=ncols)
    r0 = m.gens - snf.rank
    s0 = sum(1 for d in snf.diagonal if pdeg(d) >= 1)
    d = r0 + s0
    r_max = r0
    for p in sorted(set(snf.bad_primes) | {2, 3}):
        F = PrimeField(p)
        rows_p = [
            [int_poly_to_field(F, list(e)) for e in row] for row in m.relations
        ]
        rp = m.gens - smith_normal_form_poly(F, rows_p, ncols=ncols).rank
        r_max = max(r_max, rp)
    if d > r_max:
        return GrowthType(kind="PolyDegree", degree=d - 1, d=d, r_max=r_max, r0=r0)
    if d == r_max == r0:
        return GrowthType(kind="PolyDegree", degree=d, d=d, r_max=r_max, r0=r0)
    return GrowthType(kind="SubPoly", degree=r_max, d=d, r_max=r_max, r0=r0)
