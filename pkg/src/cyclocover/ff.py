"""Exact arithmetic over F_p and F_{p^d}.

Univariate polynomials are dense coefficient lists (lowest degree first),
multivariate ones are sparse maps from exponent tuples to residues.  All
values are immutable after construction; the randomized factorization
steps take an explicit seed so runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import DegreeBudgetExceeded, InvalidInput, ParamOutOfRange

DEFAULT_TERM_BUDGET = 10**7

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field F_p for an odd prime p < 2^31."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 3 or p >= 2**31:
            raise ParamOutOfRange(f"p must be an odd prime in [3, 2^31): got {p}")
        if p % 2 == 0 or not is_prime_u64(p):
            raise ParamOutOfRange(f"p must be an odd prime: got {p}")
        self.p = p

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def elem(self, x: int) -> int:
        return x % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(x, self.p - 2, self.p)


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _mul_coeffs(a: tuple, b: tuple, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    nza = [(i, c) for i, c in enumerate(a) if c]
    nzb = [(i, c) for i, c in enumerate(b) if c]
    if len(nza) > len(nzb):
        nza, nzb = nzb, nza
    for i, c in nza:
        for jj, d in nzb:
            out[i + jj] += c * d
    return [c % p for c in out]


class FpUniPoly:
    """Dense univariate polynomial over F_p, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree None
    (never -1, so it cannot leak into index arithmetic).
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs: Iterable[int]):
        self.field = field
        self.coeffs = _trim([c % field.p for c in coeffs])

    @classmethod
    def zero(cls, field: PrimeField) -> "FpUniPoly":
        return cls(field, [])

    @classmethod
    def one(cls, field: PrimeField) -> "FpUniPoly":
        return cls(field, [1])

    @classmethod
    def constant(cls, field: PrimeField, c: int) -> "FpUniPoly":
        return cls(field, [c])

    @classmethod
    def monomial(cls, field: PrimeField, c: int, e: int) -> "FpUniPoly":
        return cls(field, [0] * e + [c])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpUniPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.coeffs))

    def _check(self, other: "FpUniPoly") -> None:
        if self.field != other.field:
            raise InvalidInput("mixed prime fields")

    def __add__(self, other: "FpUniPoly") -> "FpUniPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.field.p
        return FpUniPoly(self.field, out)

    def __sub__(self, other: "FpUniPoly") -> "FpUniPoly":
        return self + (-other)

    def __neg__(self) -> "FpUniPoly":
        return FpUniPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other: "FpUniPoly") -> "FpUniPoly":
        self._check(other)
        return FpUniPoly(self.field, _mul_coeffs(self.coeffs, other.coeffs, self.field.p))

    def scale(self, c: int) -> "FpUniPoly":
        c %= self.field.p
        return FpUniPoly(self.field, [c * x for x in self.coeffs])

    def shift(self, e: int) -> "FpUniPoly":
        """Multiply by t^e."""
        if self.is_zero:
            return self
        return FpUniPoly(self.field, [0] * e + list(self.coeffs))

    def frobenius_pow(self, k: int) -> "FpUniPoly":
        """self**(p**k), via the freshman's dream: exponents scale by p^k."""
        if k == 0 or self.is_zero:
            return self
        q = self.field.p**k
        out = [0] * (q * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * q] = c
        return FpUniPoly(self.field, out)

    def divrem(self, other: "FpUniPoly") -> tuple:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.field.p
        rem = list(self.coeffs)
        db = other.degree
        lead_inv = self.field.inv(other.coeffs[-1])
        if len(rem) - 1 < db:
            return FpUniPoly.zero(self.field), self
        quot = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] % p
            if c == 0:
                continue
            q = c * lead_inv % p
            quot[i - db] = q
            for jj in range(db + 1):
                rem[i - db + jj] = (rem[i - db + jj] - q * other.coeffs[jj]) % p
        return FpUniPoly(self.field, quot), FpUniPoly(self.field, rem)

    def __floordiv__(self, other: "FpUniPoly") -> "FpUniPoly":
        return self.divrem(other)[0]

    def __mod__(self, other: "FpUniPoly") -> "FpUniPoly":
        return self.divrem(other)[1]

    def monic(self) -> "FpUniPoly":
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def gcd(self, other: "FpUniPoly") -> "FpUniPoly":
        """Monic greatest common divisor."""
        self._check(other)
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "FpUniPoly":
        p = self.field.p
        return FpUniPoly(self.field, [(i * c) % p for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x: int) -> int:
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def compose(self, other: "FpUniPoly") -> "FpUniPoly":
        self._check(other)
        acc = FpUniPoly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + FpUniPoly.constant(self.field, c)
        return acc

    def valuation_at(self, c: int) -> int:
        """Largest k with (t-c)^k dividing self."""
        if self.is_zero:
            raise InvalidInput("valuation of the zero polynomial")
        c %= self.field.p
        if c == 0:
            for i, x in enumerate(self.coeffs):
                if x:
                    return i
        lin = FpUniPoly(self.field, [-c, 1])
        k = 0
        cur = self
        while True:
            q, r = cur.divrem(lin)
            if not r.is_zero:
                return k
            k += 1
            cur = q

    def to_text(self) -> str:
        """Canonical text form: 'c0 + c1*t + ...', zero terms omitted."""
        if self.is_zero:
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{e}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return list(self.coeffs)

    def __repr__(self) -> str:
        return f"FpUniPoly(p={self.field.p}, {self.to_text()})"


def poly_mulmod(a: FpUniPoly, b: FpUniPoly, mod: FpUniPoly) -> FpUniPoly:
    return (a * b) % mod


def poly_powmod(base: FpUniPoly, e: int, mod: FpUniPoly) -> FpUniPoly:
    result = FpUniPoly.one(base.field)
    base = base % mod
    while e > 0:
        if e & 1:
            result = poly_mulmod(result, base, mod)
        base = poly_mulmod(base, base, mod)
        e >>= 1
    return result


def binomial_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem (products over base-p digits)."""
    if k < 0 or n < 0 or k > n:
        return 0
    out = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        ki = min(ki, ni - ki)
        num = den = 1
        for i in range(ki):
            num = num * (ni - i) % p
            den = den * (i + 1) % p
        out = out * num * pow(den, p - 2, p) % p
        n //= p
        k //= p
    return out


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor^multiplicity), factors monic irreducible."""

    unit: int
    factors: tuple  # of (FpUniPoly, int)

    def expand(self, field: PrimeField) -> FpUniPoly:
        out = FpUniPoly.constant(field, self.unit)
        for fac, mult in self.factors:
            for _ in range(mult):
                out = out * fac
        return out


def _squarefree_parts(f: FpUniPoly) -> dict:
    """Monic f -> {monic squarefree part: multiplicity}."""
    p = f.field.p
    res: dict = {}
    if f.degree == 0:
        return res
    fp = f.derivative()
    if fp.is_zero:
        # f = g(t^p) = g(t)^p over F_p; take the p-th root by exponent division
        root = FpUniPoly(f.field, [f.coeffs[i * p] for i in range(0, f.degree // p + 1)])
        for part, mult in _squarefree_parts(root).items():
            res[part] = res.get(part, 0) + mult * p
        return res
    g = f.gcd(fp)
    w = (f // g).monic()
    i = 1
    while w.degree and w.degree > 0:
        y = w.gcd(g)
        z = (w // y).monic()
        if z.degree and z.degree > 0:
            res[z] = res.get(z, 0) + i
        i += 1
        w = y
        g = (g // y).monic()
    if g.degree and g.degree > 0:
        for part, mult in _squarefree_parts(g).items():
            res[part] = res.get(part, 0) + mult
    return res


def _distinct_degree(f: FpUniPoly, cap: Optional[int] = None) -> list:
    """Monic squarefree f -> [(product of irreducible factors of degree d, d)].

    With cap set, stops after degree cap and drops the remainder (used by
    the bounded root search)."""
    p = f.field.p
    out = []
    h = FpUniPoly(f.field, [0, 1])  # t
    cur = f
    d = 0
    while cur.degree and cur.degree > 0:
        d += 1
        if cap is not None and d > cap:
            return out
        if cur.degree < 2 * d:
            if cap is None or cur.degree <= cap:
                out.append((cur, cur.degree))
            break
        h = poly_powmod(h, p, cur)
        g = cur.gcd(h - FpUniPoly(f.field, [0, 1]))
        if g.degree and g.degree > 0:
            out.append((g, d))
            cur = (cur // g).monic()
            h = h % cur
    return out


def _equal_degree_split(f: FpUniPoly, d: int, rng: random.Random) -> list:
    """Monic squarefree product of degree-d irreducibles -> list of them."""
    p = f.field.p
    if f.degree == d:
        return [f]
    n = f.degree
    while True:
        u = FpUniPoly(f.field, [rng.randrange(p) for _ in range(n)])
        if u.is_zero or (u.degree is not None and u.degree == 0):
            continue
        g = f.gcd(u)
        if g.degree and 0 < g.degree < n:
            return _equal_degree_split(g, d, rng) + _equal_degree_split((f // g).monic(), d, rng)
        v = poly_powmod(u, (p**d - 1) // 2, f) - FpUniPoly.one(f.field)
        if v.is_zero:
            continue
        g = f.gcd(v)
        if g.degree and 0 < g.degree < n:
            return _equal_degree_split(g, d, rng) + _equal_degree_split((f // g).monic(), d, rng)


def factor(f: FpUniPoly, seed: int) -> Factorization:
    """Complete factorization: squarefree decomposition, distinct-degree
    splitting, then seeded Cantor-Zassenhaus equal-degree splitting."""
    if f.is_zero:
        raise InvalidInput("cannot factor the zero polynomial")
    unit = f.coeffs[-1]
    rng = random.Random(seed)
    found: dict = {}
    for part, mult in _squarefree_parts(f.monic()).items():
        for prod, d in _distinct_degree(part):
            for irr in _equal_degree_split(prod, d, rng):
                found[irr] = found.get(irr, 0) + mult
    factors = sorted(found.items(), key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return Factorization(unit=unit, factors=tuple(factors))


def is_irreducible(f: FpUniPoly) -> bool:
    """Distinct-degree irreducibility test for monic f."""
    if f.is_zero or f.degree == 0:
        return False
    n = f.degree
    if n == 1:
        return True
    p = f.field.p
    t = FpUniPoly(f.field, [0, 1])
    h = poly_powmod(t, p**n, f)
    if h != t % f:
        return False
    for q in _prime_divisors(n):
        h = poly_powmod(t, p ** (n // q), f)
        if f.gcd(h - t).degree != 0:
            return False
    return True


def _prime_divisors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class ExtField:
    """F_{p^d} presented as F_p[t]/(modulus), modulus monic irreducible."""

    __slots__ = ("base", "d", "modulus")

    def __init__(self, base: PrimeField, modulus: FpUniPoly, check: bool = True):
        if modulus.field != base:
            raise InvalidInput("modulus lives in the wrong field")
        if modulus.is_zero or modulus.degree is None or modulus.degree < 1:
            raise InvalidInput("modulus must be non-constant")
        modulus = modulus.monic()
        if check and not is_irreducible(modulus):
            raise InvalidInput("modulus is not irreducible")
        self.base = base
        self.d = modulus.degree
        self.modulus = modulus

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash((self.base.p, self.modulus.coeffs))

    def elem(self, poly: FpUniPoly) -> "ExtFieldElem":
        return ExtFieldElem(self, poly % self.modulus)

    def from_base(self, c: int) -> "ExtFieldElem":
        return self.elem(FpUniPoly.constant(self.base, c))

    def generator(self) -> "ExtFieldElem":
        """The residue class of t (a root of the modulus)."""
        return self.elem(FpUniPoly(self.base, [0, 1]))

    def __repr__(self) -> str:
        return f"ExtField(p={self.base.p}, d={self.d}, mod={self.modulus.to_text()})"


class ExtFieldElem:
    __slots__ = ("ext", "rep")

    def __init__(self, ext: ExtField, rep: FpUniPoly):
        self.ext = ext
        self.rep = rep

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtFieldElem) and other.ext == self.ext and other.rep == self.rep

    def __hash__(self) -> int:
        return hash((self.ext.base.p, self.ext.modulus.coeffs, self.rep.coeffs))

    def __add__(self, other: "ExtFieldElem") -> "ExtFieldElem":
        return ExtFieldElem(self.ext, self.rep + other.rep)

    def __sub__(self, other: "ExtFieldElem") -> "ExtFieldElem":
        return ExtFieldElem(self.ext, self.rep - other.rep)

    def __mul__(self, other: "ExtFieldElem") -> "ExtFieldElem":
        return ExtFieldElem(self.ext, (self.rep * other.rep) % self.ext.modulus)

    def inv(self) -> "ExtFieldElem":
        if self.is_zero:
            raise ZeroDivisionError("inverse of 0 in extension field")
        # Fermat: x^(p^d - 2)
        e = self.ext.base.p**self.ext.d - 2
        out = self.ext.from_base(1)
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def to_json(self) -> dict:
        return {"degree": self.ext.d, "modulus": self.ext.modulus.to_json(), "value": self.rep.to_json()}

    def __repr__(self) -> str:
        return f"ExtFieldElem({self.rep.to_text()} in {self.ext!r})"


def eval_in_ext(f: FpUniPoly, alpha: ExtFieldElem) -> ExtFieldElem:
    """Evaluate f (over F_p) at an extension-field point, by Horner."""
    acc = alpha.ext.from_base(0)
    for c in reversed(f.coeffs):
        acc = acc * alpha + alpha.ext.from_base(c)
    return acc


def ext_roots(f: FpUniPoly, dmax: int, seed: int) -> list:
    """One representative root per irreducible factor of degree <= dmax.

    Each factor g of degree d is used as the modulus of F_{p^d}, so the
    class of t is an exact root; returns [(ExtFieldElem, d)], sorted by
    (d, factor coefficients)."""
    if f.is_zero:
        raise InvalidInput("root search on the zero polynomial")
    if dmax < 1:
        raise ParamOutOfRange("dmax must be >= 1")
    rng = random.Random(seed)
    irreducibles = []
    for part in _squarefree_parts(f.monic()):
        for prod, d in _distinct_degree(part, cap=dmax):
            irreducibles.extend(_equal_degree_split(prod, d, rng))
    irreducibles.sort(key=lambda g: (g.degree, g.coeffs))
    out = []
    for g in irreducibles:
        ext = ExtField(f.field, g, check=False)
        out.append((ext.generator(), g.degree))
    return out


class FpMultiPoly:
    """Sparse multivariate polynomial over F_p in r variables.

    Terms map exponent tuples of length r to nonzero residues."""

    __slots__ = ("field", "r", "terms")

    def __init__(self, field: PrimeField, r: int, terms: dict):
        self.field = field
        self.r = r
        clean = {}
        for exps, c in terms.items():
            c %= field.p
            if c:
                if len(exps) != r:
                    raise InvalidInput("exponent tuple of wrong length")
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def zero(cls, field: PrimeField, r: int) -> "FpMultiPoly":
        return cls(field, r, {})

    @classmethod
    def constant(cls, field: PrimeField, r: int, c: int) -> "FpMultiPoly":
        return cls(field, r, {tuple([0] * r): c})

    @classmethod
    def variable(cls, field: PrimeField, r: int, var: int) -> "FpMultiPoly":
        e = [0] * r
        e[var] = 1
        return cls(field, r, {tuple(e): 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def num_terms(self) -> int:
        return len(self.terms)

    def total_degree(self) -> Optional[int]:
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMultiPoly)
            and other.field == self.field
            and other.r == self.r
            and other.terms == self.terms
        )

    def _check(self, other: "FpMultiPoly") -> None:
        if self.field != other.field or self.r != other.r:
            raise InvalidInput("incompatible multivariate polynomials")

    def __add__(self, other: "FpMultiPoly") -> "FpMultiPoly":
        self._check(other)
        out = dict(self.terms)
        p = self.field.p
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return FpMultiPoly(self.field, self.r, out)

    def __neg__(self) -> "FpMultiPoly":
        p = self.field.p
        return FpMultiPoly(self.field, self.r, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other: "FpMultiPoly") -> "FpMultiPoly":
        return self + (-other)

    def scale(self, c: int) -> "FpMultiPoly":
        return FpMultiPoly(self.field, self.r, {e: v * c for e, v in self.terms.items()})

    def mul(self, other: "FpMultiPoly", budget: int = DEFAULT_TERM_BUDGET) -> "FpMultiPoly":
        self._check(other)
        if len(self.terms) * len(other.terms) > 4 * budget:
            raise DegreeBudgetExceeded(
                f"product would touch ~{len(self.terms) * len(other.terms)} term pairs"
            )
        p = self.field.p
        out: dict = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        if len(out) > budget:
            raise DegreeBudgetExceeded(f"product has {len(out)} terms (budget {budget})")
        return FpMultiPoly(self.field, self.r, {e: c % p for e, c in out.items()})

    def __mul__(self, other: "FpMultiPoly") -> "FpMultiPoly":
        return self.mul(other)

    def frobenius_pow(self, k: int) -> "FpMultiPoly":
        """self**(p**k) by exponent scaling (coefficients are fixed by
        Frobenius on F_p)."""
        if k == 0:
            return self
        q = self.field.p**k
        return FpMultiPoly(
            self.field, self.r, {tuple(q * x for x in e): c for e, c in self.terms.items()}
        )

    def min_exponent(self, var: int) -> Optional[int]:
        if not self.terms:
            return None
        return min(e[var] for e in self.terms)

    def substitute_shift(self, var: int, base_var: int, budget: int = DEFAULT_TERM_BUDGET) -> "FpMultiPoly":
        """Replace x_var by (x_base_var + x_var), expanding binomially."""
        p = self.field.p
        out: dict = {}
        count = 0
        for exps, c in self.terms.items():
            n = exps[var]
            for i in range(n + 1):
                b = binomial_mod_p(n, i, p)
                if not b:
                    continue
                e = list(exps)
                e[var] = i
                e[base_var] += n - i
                key = tuple(e)
                out[key] = (out.get(key, 0) + c * b) % p
                count += 1
                if count > 8 * budget:
                    raise DegreeBudgetExceeded("substitution exceeded the term budget")
        return FpMultiPoly(self.field, self.r, out)

    def substitute_values(self, assignments: dict) -> "FpMultiPoly":
        """Partially evaluate: {var index: residue}. Remaining variables
        keep their slots (exponent 0 on the substituted ones)."""
        p = self.field.p
        out: dict = {}
        for exps, c in self.terms.items():
            v = c
            e = list(exps)
            for var, val in assignments.items():
                v = v * pow(val % p, e[var], p) % p
                e[var] = 0
            if v:
                key = tuple(e)
                out[key] = (out.get(key, 0) + v) % p
        return FpMultiPoly(self.field, self.r, out)

    def to_unipoly(self, var: int) -> FpUniPoly:
        """Collapse to a univariate polynomial in x_var; every other
        variable must have exponent 0 everywhere."""
        coeffs: dict = {}
        for exps, c in self.terms.items():
            for i, e in enumerate(exps):
                if i != var and e:
                    raise InvalidInput("polynomial is not univariate in the chosen variable")
            coeffs[exps[var]] = c
        if not coeffs:
            return FpUniPoly.zero(self.field)
        out = [0] * (max(coeffs) + 1)
        for e, c in coeffs.items():
            out[e] = c
        return FpUniPoly(self.field, out)

    def evaluate(self, point: list) -> int:
        p = self.field.p
        if len(point) != self.r:
            raise InvalidInput("evaluation point of wrong length")
        acc = 0
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = v * pow(x % p, e, p) % p
            acc = (acc + v) % p
        return acc

    def to_json(self) -> list:
        items = sorted(self.terms.items())
        return [{"exponents": list(e), "coefficient": c} for e, c in items]

    def __repr__(self) -> str:
        return f"FpMultiPoly(p={self.field.p}, r={self.r}, {len(self.terms)} terms)"
