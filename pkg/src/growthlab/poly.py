"""Dense univariate polynomial arithmetic over Z, Q and F_p.

Polynomials are lists of coefficients in ascending degree order with no
trailing zeros (the zero polynomial is the empty list).  Coefficients over
F_p are ints in [0, p); over Q they are `fractions.Fraction`; over Z plain
ints.  Field-dependent operations take the coefficient field as their first
argument.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorint, is_prime, mobius

DEFAULT_SEED = 0xC0FFEE


class PrimeField:
    """Arithmetic of F_p on ints in [0, p)."""

    __slots__ = ("p",)

    zero = 0
    one = 1

    def __init__(self, p: int):
        self.p = p

    def from_int(self, a):
        return int(a) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField:
    """Arithmetic of Q on `Fraction` values."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_int(a):
        return Fraction(a)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def div(a, b):
        return a / b

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


# -- basic arithmetic ---------------------------------------------------------


def pnormalize(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def pdeg(c) -> int:
    """Degree, with deg 0 = -1 by convention."""
    return len(c) - 1


def padd(F, a, b):
    n = max(len(a), len(b))
    out = [F.zero] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = F.add(out[i], x)
    return pnormalize(out)


def psub(F, a, b):
    return padd(F, a, [F.neg(x) for x in b])


def pscale(F, c, a):
    if c == F.zero:
        return []
    return pnormalize([F.mul(c, x) for x in a])


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == F.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return pnormalize(out)


def pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    inv_lc = F.inv(b[-1])
    while len(a) >= len(b):
        c = F.mul(a[-1], inv_lc)
        k = len(a) - len(b)
        q[k] = c
        for i, x in enumerate(b):
            a[k + i] = F.sub(a[k + i], F.mul(c, x))
        a = pnormalize(a)
        if not a:
            break
    return pnormalize(q), a


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pmonic(F, a):
    if not a:
        return []
    return pscale(F, F.inv(a[-1]), a)


def peval(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pderiv(F, a):
    return pnormalize([F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def ppowmod(F, a, e, m):
    """a**e mod m by binary exponentiation."""
    out = [F.one]
    a = pmod(F, a, m)
    while e:
        if e & 1:
            out = pmod(F, pmul(F, out, a), m)
        a = pmod(F, pmul(F, a, a), m)
        e >>= 1
    return out


def gcd_over_field(F, a, b):
    """Monic gcd by the Euclidean algorithm; both-zero input is an error."""
    a, b = pnormalize(a), pnormalize(b)
    if not a and not b:
        raise ValueError("gcd(0, 0) undefined")
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def plcm(F, a, b):
    g = gcd_over_field(F, a, b)
    return pmonic(F, pdivmod(F, pmul(F, a, b), g)[0])


# -- integer polynomials ------------------------------------------------------


def content_and_primitive(f: list[int]) -> tuple[int, list[int]]:
    """gcd of coefficients and the primitive part f/content."""
    f = pnormalize(f)
    if not f:
        raise ValueError("zero polynomial has no content")
    c = 0
    for x in f:
        c = math.gcd(c, x)
    return c, [x // c for x in f]


def int_poly_to_field(F, f):
    return pnormalize([F.from_int(c) for c in f])


def rationals_to_int_poly(f) -> list[int]:
    """Clear denominators of a Q-polynomial; returns an integer polynomial."""
    den = 1
    for c in f:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in f]


def resultant_with_derivative(f: list[int]) -> int:
    """res(f, f') over Z via exact Sylvester-determinant evaluation."""
    fq = [Fraction(c) for c in f]
    dq = pnormalize([Fraction(i) * fq[i] for i in range(1, len(fq))])
    n, m = pdeg(fq), pdeg(dq)
    if n < 1:
        raise ValueError("resultant needs nonconstant f")
    if m < 0:
        return 0
    size = n + m
    rows = []
    for i in range(m):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(fq)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(dq)):
            row[i + j] = c
        rows.append(row)
    # exact Gaussian elimination determinant
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col] != 0:
                factor = rows[r][col] * inv
                for c2 in range(col, size):
                    rows[r][c2] -= factor * rows[col][c2]
    assert det.denominator == 1
    return int(det)


def bad_prime_ledger(f: list[int]) -> set[int]:
    """Primes where deg or squarefreeness of f mod p can drop.

    These divide content(f), the leading coefficient, or res(f, f').
    """
    f = pnormalize(f)
    if pdeg(f) < 1:
        raise ValueError("nonconstant polynomial required")
    bad: set[int] = set()
    cont, _ = content_and_primitive(f)
    for n in (abs(cont), abs(f[-1]), abs(resultant_with_derivative(f))):
        if n > 1:
            bad.update(factorint(n))
    return bad


# -- squarefree parts and root counts -----------------------------------------


def squarefree_part(F, f):
    """Monic product of the distinct irreducible factors of f.

    Over Q its degree is the number of distinct complex roots; over F_p the
    number of distinct roots in the algebraic closure.  Handles the
    inseparable case f' = 0 (then f = g(x^p)) by recursion.
    """
    f = pnormalize(f)
    if pdeg(f) < 1:
        raise ValueError("nonconstant polynomial required")
    if isinstance(F, PrimeField):
        # parts of distinct multiplicity are pairwise coprime
        acc = [F.one]
        for part, _ in _squarefree_decomposition(F, pmonic(F, f)):
            acc = pmul(F, acc, part)
        return pmonic(F, acc)
    g = gcd_over_field(F, f, pderiv(F, f))
    return pmonic(F, pdivmod(F, f, g)[0])


def distinct_complex_root_count(f) -> int:
    """Number rho of distinct roots of f in C (degree of the squarefree part)."""
    fq = pnormalize([Fraction(c) for c in f])
    if pdeg(fq) < 1:
        raise ValueError("nonconstant polynomial required")
    return pdeg(squarefree_part(QQ, fq))


# -- factorization over F_p ---------------------------------------------------


@dataclass(frozen=True)
class FactorizationModP:
    """Complete factorization over F_p: unit * prod(factor**mult)."""

    p: int
    unit: int
    factors: tuple[tuple[tuple[int, ...], int], ...]  # (monic coeffs, multiplicity)

    def remultiply(self) -> list[int]:
        F = PrimeField(self.p)
        out = [self.unit]
        for coeffs, mult in self.factors:
            for _ in range(mult):
                out = pmul(F, out, list(coeffs))
        return out

    def distinct_factors_of_degree(self, k: int) -> int:
        return sum(1 for coeffs, _ in self.factors if len(coeffs) - 1 == k)


def factor_mod_p(f, p: int, rng: random.Random | None = None) -> FactorizationModP:
    """Irreducible factorization of f over F_p.

    Squarefree decomposition, then distinct-degree splitting, then
    Cantor-Zassenhaus equal-degree splitting (trace map for p = 2).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    F = PrimeField(p)
    fbar = int_poly_to_field(F, f) if f and isinstance(f[0], int) else pnormalize(f)
    if not fbar:
        raise ValueError("polynomial vanishes mod p (content divisible by p)")
    if rng is None:
        rng = random.Random(DEFAULT_SEED)
    unit = fbar[-1]
    fbar = pmonic(F, fbar)
    found: dict[tuple[int, ...], int] = {}
    for part, mult in _squarefree_decomposition(F, fbar):
        if pdeg(part) < 1:
            continue
        for irr in _factor_squarefree(F, part, rng):
            key = tuple(irr)
            found[key] = found.get(key, 0) + mult
    factors = tuple(sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0])))
    return FactorizationModP(p=p, unit=unit, factors=factors)


def _squarefree_decomposition(F, f):
    """Yun-style decomposition over F_p; yields (squarefree part, multiplicity)."""
    p = F.p
    out = []
    e = 1
    while pdeg(f) >= 1:
        d = pderiv(F, f)
        if not d:
            f = [f[i] for i in range(0, len(f), p)]
            e *= p
            continue
        c = gcd_over_field(F, f, d)
        w = pdivmod(F, f, c)[0]
        i = 1
        while pdeg(w) >= 1:
            y = gcd_over_field(F, w, c)
            z = pdivmod(F, w, y)[0]
            if pdeg(z) >= 1:
                out.append((z, i * e))
            w = y
            c = pdivmod(F, c, y)[0]
            i += 1
        f = c
    return out


def _factor_squarefree(F, f, rng):
    """Irreducible factors of a monic squarefree polynomial over F_p."""
    p = F.p
    out = []
    x = [F.zero, F.one]
    h = x
    d = 0
    rest = f
    while pdeg(rest) >= 2 * (d + 1):
        d += 1
        h = ppowmod(F, h, p, rest)
        g = gcd_over_field(F, psub(F, h, x), rest)
        if pdeg(g) >= 1:
            out.extend(_equal_degree_split(F, g, d, rng))
            rest = pdivmod(F, rest, g)[0]
            h = pmod(F, h, rest)
    if pdeg(rest) >= 1:
        out.append(rest)
    return out


def _equal_degree_split(F, g, d, rng):
    """Split a product of distinct irreducibles, all of degree d."""
    if pdeg(g) == d:
        return [g]
    p = F.p
    if p ** pdeg(g) <= 2 ** 16 and d == 1:
        # deterministic root scan
        roots = [a for a in range(p) if peval(F, g, a) == 0]
        return [[F.neg(a), F.one] for a in roots]
    while True:
        a = [F.from_int(rng.randrange(p)) for _ in range(pdeg(g))]
        a = pnormalize(a)
        if pdeg(a) < 1:
            continue
        if p == 2:
            t = [F.zero]
            b = pmod(F, a, g)
            for _ in range(d):
                t = padd(F, t, b)
                b = pmod(F, pmul(F, b, b), g)
            cand = gcd_over_field(F, t, g)
        else:
            b = ppowmod(F, a, (p ** d - 1) // 2, g)
            cand = gcd_over_field(F, psub(F, b, [F.one]), g)
        if 0 < pdeg(cand) < pdeg(g):
            left = _equal_degree_split(F, cand, d, rng)
            right = _equal_degree_split(F, pdivmod(F, g, cand)[0], d, rng)
            return left + right


def count_irreducibles(p: int, k: int) -> int:
    """Number of monic irreducible degree-k polynomials over F_p.

    Gauss's necklace formula (1/k) * sum_{a | k} mu(k/a) p**a.
    """
    if k < 1:
        raise ValueError(f"degree must be >= 1, got {k}")
    total = sum(mobius(k // a) * p ** a for a in range(1, k + 1) if k % a == 0)
    assert total % k == 0
    return total // k


# -- text format ---------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?P<coeff>\d+)?\s*\*?\s*(?P<var>x)?\s*(?:\^\s*(?P<exp>\d+))?$"
)


def parse_poly(text: str) -> list[int]:
    """Parse integer-coefficient expressions like 'x^3 - 1' or '6*x^2 + 4'."""
    s = text.replace("−", "-").strip()
    if not s:
        raise ValueError("empty polynomial string")
    # split into signed terms
    tokens = re.split(r"(?=[+-])", s.replace(" ", ""))
    coeffs: dict[int, int] = {}
    for tok in tokens:
        if not tok:
            continue
        sign = 1
        while tok and tok[0] in "+-":
            if tok[0] == "-":
                sign = -sign
            tok = tok[1:]
        m = _TERM_RE.match(tok)
        if not m or (m.group("exp") and not m.group("var")) or not tok:
            raise ValueError(f"cannot parse polynomial term {tok!r} in {text!r}")
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        if m.group("var"):
            exp = int(m.group("exp")) if m.group("exp") else 1
        else:
            exp = 0
        coeffs[exp] = coeffs.get(exp, 0) + sign * coeff
    out = [coeffs.get(i, 0) for i in range(max(coeffs) + 1)]
    return pnormalize(out)


def poly_to_str(f) -> str:
    """Render a polynomial in the same text format parse_poly accepts."""
    f = pnormalize(list(f))
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        if i == 0:
            term = str(abs(c))
        else:
            xpow = "x" if i == 1 else f"x^{i}"
            term = xpow if abs(c) == 1 else f"{abs(c)}*{xpow}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, term))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text
