"""Character-indexed Cartier/Frobenius matrices for cyclic covers.

Every character index c in 1..m-1 carries branch exponents
b_k(c) = floor(p * ((c*a_k) mod m) / m) and their sum s(c).  The two
matrix families are built from graded slices of prod_k (1 + x_k)^{b_k}:
phi entries are single signed slices, psi entries combine decremented
slices with the cofactor coefficients of prod_{s != k} (x - x_s).

An OrbitContext walks the multiplication-by-p orbit through a chosen
base character and assembles the chain matrices A_0..A_{l-1}, whose
twisted composite h0 cuts out the non-ordinary locus in the branch-point
coordinates.  For four branch points the substitution
(x_1, x_2, x_3, x_4) = (infinity, t, 1, 0) turns every entry into a
univariate polynomial, and the partial composite h1 over the first i0
steps gives a computable certificate of non-ordinariness.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .errors import (
    DegreeBudgetExceeded,
    HypothesisNotMet,
    IndexOutOfRange,
    InvalidInput,
    ParamOutOfRange,
    PDividesM,
    PsiHypothesisNotMet,
)
from .fabc import FabcParams, fabc
from .ff import (
    DEFAULT_TERM_BUDGET,
    ExtField,
    FpMultiPoly,
    FpUniPoly,
    PrimeField,
    binomial_mod_p,
    factor,
    _squarefree_parts,
)
from .monodromy import MonodromyDatum, frobenius_orbits, signature

KIND_PHI = "phi"
KIND_PHI_DUAL = "phi_dual"
KIND_PSI = "psi"
KIND_PSI_DUAL = "psi_dual"


def _require_coprime(datum: MonodromyDatum, p: int) -> None:
    if math.gcd(p, datum.m) != 1:
        raise PDividesM(f"p = {p} shares a factor with m = {datum.m}")


def branch_exponents(datum: MonodromyDatum, p: int, tau: int, order=None) -> tuple:
    """b_k = floor(p * ((tau*a_k) mod m) / m), optionally with the branch
    slots permuted by `order` (a tuple of original indices)."""
    m = datum.m
    if not 1 <= tau <= m - 1:
        raise IndexOutOfRange(f"character index {tau} outside 1..{m - 1}")
    labels = datum.a if order is None else tuple(datum.a[k] for k in order)
    return tuple((p * ((tau * ak) % m)) // m for ak in labels)


def first_covering_index(bs, n: int) -> int:
    """Least c (1-based) with b_1 + ... + b_c > n; needs sum(bs) > n >= 0."""
    if n < 0 or sum(bs) <= n:
        raise ParamOutOfRange("covering index needs 0 <= n < sum(bs)")
    acc = 0
    for idx, b in enumerate(bs, start=1):
        acc += b
        if acc > n:
            return idx
    raise AssertionError("unreachable")


def _graded_slice(field: PrimeField, bs, n: int, budget: int) -> FpMultiPoly:
    """Degree-n slice of prod_k (1 + x_k)^{b_k} as a multivariate polynomial.

    Every b_k is < p, so each binomial coefficient is a nonzero single
    Lucas digit and the slice has exactly as many terms as compositions."""
    r = len(bs)
    if n < 0 or n > sum(bs):
        return FpMultiPoly.zero(field, r)
    suffix = [0] * (r + 1)
    for k in range(r - 1, -1, -1):
        suffix[k] = suffix[k + 1] + bs[k]
    p = field.p
    terms: dict = {}
    exps = [0] * r

    def walk(k: int, rem: int, coef: int) -> None:
        if k == r:
            terms[tuple(exps)] = coef
            if len(terms) > budget:
                raise DegreeBudgetExceeded(
                    f"graded slice exceeds {budget} terms"
                )
            return
        lo = max(0, rem - suffix[k + 1])
        hi = min(bs[k], rem)
        for nk in range(lo, hi + 1):
            exps[k] = nk
            walk(k + 1, rem - nk, (coef * binomial_mod_p(bs[k], nk, p)) % p)
        exps[k] = 0

    walk(0, n, 1)
    return FpMultiPoly(field, r, terms)


def _qhat(field: PrimeField, r: int, jp: int, k: int) -> FpMultiPoly:
    """Coefficient of x^{jp-1} in prod_{s != k} (x - x_s): the elementary
    symmetric polynomial of degree r-jp in the other variables, with sign
    (-1)^{r-jp}."""
    deg = r - jp
    sgn = 1 if deg % 2 == 0 else field.p - 1
    terms = {}
    for combo in itertools.combinations([s for s in range(r) if s != k], deg):
        e = [0] * r
        for s in combo:
            e[s] = 1
        terms[tuple(e)] = sgn
    return FpMultiPoly(field, r, terms)


def phi_entry(
    datum: MonodromyDatum,
    p: int,
    tau: int,
    jp: int,
    j: int,
    budget: int = DEFAULT_TERM_BUDGET,
) -> FpMultiPoly:
    """Entry (jp, j) of the phi matrix at character tau: the signed
    degree-N slice with N = s - p*j + jp.  Out-of-range N gives zero."""
    field = PrimeField(p)
    _require_coprime(datum, p)
    m = datum.m
    sig = signature(datum)
    if not 1 <= tau <= m - 1:
        raise IndexOutOfRange(f"character index {tau} outside 1..{m - 1}")
    if not 1 <= j <= sig[tau]:
        raise IndexOutOfRange(f"column {j} outside 1..{sig[tau]} at character {tau}")
    rows = sig[(p * tau) % m]
    if not 1 <= jp <= rows:
        raise IndexOutOfRange(f"row {jp} outside 1..{rows} at character {tau}")
    bs = branch_exponents(datum, p, tau)
    n = sum(bs) - (p * j - jp)
    block = _graded_slice(field, bs, n, budget)
    return block if n % 2 == 0 else -block


def psi_entry(
    datum: MonodromyDatum,
    p: int,
    tau: int,
    jp: int,
    j: int,
    budget: int = DEFAULT_TERM_BUDGET,
) -> FpMultiPoly:
    """Entry (jp, j) of the psi matrix at character tau.

    Defined only when gcd(tau, m) = 1 and the signature vanishes at
    p*tau or at m-tau; outside that window the defining sum does not
    compute the operator and we refuse."""
    field = PrimeField(p)
    _require_coprime(datum, p)
    m, r = datum.m, datum.r
    sig = signature(datum)
    if not 1 <= tau <= m - 1:
        raise IndexOutOfRange(f"character index {tau} outside 1..{m - 1}")
    if math.gcd(tau, m) != 1 or not (sig[(p * tau) % m] == 0 or sig[(m - tau) % m] == 0):
        raise PsiHypothesisNotMet(
            f"psi at character {tau} needs gcd(tau, m) = 1 and a vanishing "
            f"signature at {(p * tau) % m} or {(m - tau) % m}"
        )
    if not 1 <= j <= sig[tau]:
        raise IndexOutOfRange(f"column {j} outside 1..{sig[tau]} at character {tau}")
    rows = sig[(m - (p * tau) % m) % m]
    if not 1 <= jp <= rows:
        raise IndexOutOfRange(f"row {jp} outside 1..{rows} at character {tau}")
    bs = branch_exponents(datum, p, tau)
    n = sum(bs) - p * j
    sign = 1 if n % 2 == 0 else field.p - 1
    acc = FpMultiPoly.zero(field, r)
    for k in range(r):
        if bs[k] == 0:
            continue
        dec = list(bs)
        dec[k] -= 1
        sl = _graded_slice(field, dec, n, budget)
        if sl.is_zero:
            continue
        piece = sl.mul(_qhat(field, r, jp, k), budget).scale((bs[k] * sign) % field.p)
        acc = acc + piece
    return -acc


class OrbitContext:
    """Multiplication-by-p walk through the dual of a base character.

    `base` is a unit B0 mod m; the chain is anchored at c0 = (m - B0) % m,
    whose signature value must be 1, and visits u_i = p^i * c0 mod m.
    Derived attributes:

      chars        (u_0, ..., u_{l-1}), the anchored walk
      dims         (d_0, ..., d_l): signature at u_i, or at m - u_i when
                   that vanishes; d_0 = d_l = 1
      kinds        per-step matrix family, one of the KIND_* tags
      chain_chars  the character each step's matrix is computed at (u_i
                   for the plain kinds, m - u_i for the dual ones)
      i0           least i >= 1 with signature 1 at u_i
      branch_order slot permutation (r = 4 only) making the middle two
                   branch exponents at c0 sum to at most the outer two
    """

    __slots__ = (
        "datum",
        "p",
        "field",
        "base",
        "c0",
        "sig",
        "orbit",
        "chars",
        "l",
        "i0",
        "dims",
        "kinds",
        "chain_chars",
        "branch_order",
        "ordered_datum",
    )

    def __init__(self, datum: MonodromyDatum, p: int, base: int):
        self.field = PrimeField(p)
        _require_coprime(datum, p)
        m = datum.m
        if not 1 <= base <= m - 1:
            raise ParamOutOfRange(f"base character {base} outside 1..{m - 1}")
        if math.gcd(base, m) != 1:
            raise InvalidInput(f"base character {base} is not a unit mod {m}")
        self.datum = datum
        self.p = p
        self.base = base
        self.sig = signature(datum)
        self.c0 = (m - base) % m
        if self.sig[self.c0] != 1:
            raise HypothesisNotMet(
                f"chain needs signature 1 at index {self.c0} (dual of base {base}), "
                f"got {self.sig[self.c0]}"
            )
        chars = [self.c0]
        u = (p * self.c0) % m
        while u != self.c0:
            chars.append(u)
            u = (p * u) % m
        self.chars = tuple(chars)
        self.l = len(chars)
        self.i0 = next(
            i for i in range(1, self.l + 1) if self.sig[chars[i % self.l]] == 1
        )
        dims = []
        for u in chars:
            fu = self.sig[u]
            dims.append(fu if fu >= 1 else self.sig[(m - u) % m])
        dims.append(dims[0])
        self.dims = tuple(dims)
        kinds = []
        wchars = []
        for i in range(self.l):
            u = chars[i]
            v = chars[(i + 1) % self.l]
            if self.sig[u] >= 1:
                kinds.append(KIND_PHI if self.sig[v] >= 1 else KIND_PSI)
                wchars.append(u)
            else:
                kinds.append(KIND_PSI_DUAL if self.sig[v] >= 1 else KIND_PHI_DUAL)
                wchars.append((m - u) % m)
        self.kinds = tuple(kinds)
        self.chain_chars = tuple(wchars)
        self.orbit = next(
            o for o in frobenius_orbits(m, p, self.sig) if base in o.members
        )
        if datum.r == 4:
            bs = branch_exponents(datum, p, self.c0)
            self.branch_order = next(
                perm
                for perm in itertools.permutations(range(4))
                if bs[perm[1]] + bs[perm[2]] <= bs[perm[0]] + bs[perm[3]]
            )
        else:
            self.branch_order = tuple(range(datum.r))
        self.ordered_datum = (
            datum
            if self.branch_order == tuple(range(datum.r))
            else MonodromyDatum(m, datum.r, tuple(datum.a[k] for k in self.branch_order))
        )

    def __repr__(self) -> str:
        return (
            f"OrbitContext(m={self.datum.m}, p={self.p}, base={self.base}, "
            f"l={self.l}, i0={self.i0})"
        )


@dataclass(frozen=True)
class HWChain:
    """Chain matrices A_0..A_{l-1}; A_i has shape dims[i+1] x dims[i]."""

    matrices: tuple  # of tuples of tuples of FpMultiPoly
    kinds: tuple
    chars: tuple
    dims: tuple


def build_chain(ctx: OrbitContext, budget: int = DEFAULT_TERM_BUDGET) -> HWChain:
    """Assemble the chain matrices along the orbit walk.

    Plain kinds take entries at u_i, dual kinds at m - u_i (the operators
    at mirrored characters are represented by the same matrices)."""
    mats = []
    for i in range(ctx.l):
        rows, cols = ctx.dims[i + 1], ctx.dims[i]
        w = ctx.chain_chars[i]
        entry = phi_entry if ctx.kinds[i] in (KIND_PHI, KIND_PHI_DUAL) else psi_entry
        mats.append(
            tuple(
                tuple(entry(ctx.datum, ctx.p, w, jp, j, budget) for j in range(1, cols + 1))
                for jp in range(1, rows + 1)
            )
        )
    return HWChain(tuple(mats), ctx.kinds, ctx.chain_chars, ctx.dims)


def _paths(dims):
    """All index paths J with J(0) = J(l) = 1 and 1 <= J(i) <= dims[i]."""
    l = len(dims) - 1
    middles = [range(1, d + 1) for d in dims[1:l]]
    for mid in itertools.product(*middles):
        yield (1, *mid, 1)


def h0(ctx: OrbitContext, budget: int = DEFAULT_TERM_BUDGET) -> FpMultiPoly:
    """Scalar twisted composite of the full chain, as the path sum

        h0 = sum_J prod_i A_i(J(i+1), J(i)) ** (p ** (l-1-i)).

    Grows like p^l; the budget turns infeasible requests into an error."""
    chain = build_chain(ctx, budget)
    total = FpMultiPoly.zero(ctx.field, ctx.datum.r)
    for path in _paths(chain.dims):
        term = FpMultiPoly.constant(ctx.field, ctx.datum.r, 1)
        for i in range(ctx.l):
            entry = chain.matrices[i][path[i + 1] - 1][path[i] - 1]
            term = term.mul(entry.frobenius_pow(ctx.l - 1 - i), budget)
        total = total + term
    return total


def specialize_infty(f: FpMultiPoly) -> FpUniPoly:
    """Substitute (x_1, x_2, x_3, x_4) = (infinity, t, 1, 0): keep the
    monomials maximizing the exponent gap between x_1 and x_4, then read
    off the x_2-polynomial with the other variables set to 1."""
    if f.r != 4:
        raise ParamOutOfRange("specialization is defined for four branch points")
    if f.is_zero:
        return FpUniPoly.zero(f.field)
    gap = max(e[0] - e[3] for e in f.terms)
    kept = {e: c for e, c in f.terms.items() if e[0] - e[3] == gap}
    filtered = FpMultiPoly(f.field, 4, kept)
    return filtered.substitute_values({0: 1, 2: 1, 3: 1}).to_unipoly(1)


def _phi_closed_form(field: PrimeField, bs, n: int) -> Optional[FpUniPoly]:
    # valid when the extremal monomials carry the full first exponent and
    # miss the last variable entirely
    c = n - bs[0]
    if field.p == 2 or not 0 <= c <= bs[1] + bs[2]:
        return None
    poly = fabc(FabcParams(bs[1], bs[2], c, field.p))
    return poly if n % 2 == 0 else poly.scale(field.p - 1)


def phi_specialized(ctx: OrbitContext, tau: int, jp: int, j: int) -> FpUniPoly:
    """Univariate phi entry after specialization, via the closed form

        (-1)^N * f(b_2, b_3, N - b_1)   with N = s - p*j + jp

    in the context's branch order; falls back to direct extraction when
    the closed form's support window fails (possible only at small p)."""
    if ctx.datum.r != 4:
        raise ParamOutOfRange("specialized entries need four branch points")
    datum = ctx.ordered_datum
    sig = ctx.sig
    m, p = datum.m, ctx.p
    if not 1 <= tau <= m - 1:
        raise IndexOutOfRange(f"character index {tau} outside 1..{m - 1}")
    if not 1 <= j <= sig[tau]:
        raise IndexOutOfRange(f"column {j} outside 1..{sig[tau]} at character {tau}")
    rows = sig[(p * tau) % m]
    if not 1 <= jp <= rows:
        raise IndexOutOfRange(f"row {jp} outside 1..{rows} at character {tau}")
    bs = branch_exponents(datum, p, tau)
    n = sum(bs) - (p * j - jp)
    closed = _phi_closed_form(ctx.field, bs, n)
    if closed is not None:
        return closed
    return specialize_infty(phi_entry(datum, p, tau, jp, j))


def psi_specialized(ctx: OrbitContext, tau: int, jp: int, j: int) -> FpUniPoly:
    """Univariate psi entry after specialization.

    Row 1 carries the factor b_4 * t, row 2 the scalar (s - p*j - b_1 + 1);
    both reduce to f(b_2, b_3, .) sums.  Falls back to direct extraction
    outside the closed forms' support window."""
    if ctx.datum.r != 4:
        raise ParamOutOfRange("specialized entries need four branch points")
    datum = ctx.ordered_datum
    sig = ctx.sig
    m, p = datum.m, ctx.p
    if not 1 <= tau <= m - 1:
        raise IndexOutOfRange(f"character index {tau} outside 1..{m - 1}")
    if math.gcd(tau, m) != 1 or not (sig[(p * tau) % m] == 0 or sig[(m - tau) % m] == 0):
        raise PsiHypothesisNotMet(
            f"psi at character {tau} needs gcd(tau, m) = 1 and a vanishing "
            f"signature at {(p * tau) % m} or {(m - tau) % m}"
        )
    if not 1 <= j <= sig[tau]:
        raise IndexOutOfRange(f"column {j} outside 1..{sig[tau]} at character {tau}")
    rows = sig[(m - (p * tau) % m) % m]
    if not 1 <= jp <= rows:
        raise IndexOutOfRange(f"row {jp} outside 1..{rows} at character {tau}")
    bs = branch_exponents(datum, p, tau)
    n0 = sum(bs) - p * j
    sign = 1 if n0 % 2 == 0 else ctx.field.p - 1
    if p != 2 and all(b >= 1 for b in bs) and jp in (1, 2):
        if jp == 1 and 0 <= n0 - bs[0] <= bs[1] + bs[2]:
            body = fabc(FabcParams(bs[1], bs[2], n0 - bs[0], p))
            return body.scale((bs[3] * sign) % p).shift(1)
        if jp == 2 and 0 <= n0 - bs[0] + 1 <= bs[1] + bs[2]:
            body = fabc(FabcParams(bs[1], bs[2], n0 - bs[0] + 1, p))
            return body.scale(((n0 - bs[0] + 1) * sign) % p)
    return specialize_infty(psi_entry(datum, p, tau, jp, j))


@dataclass(frozen=True)
class SpecializedChain:
    """Univariate chain matrices for the first i0 steps."""

    matrices: tuple  # of tuples of tuples of FpUniPoly
    kinds: tuple
    chars: tuple
    dims: tuple  # d_0..d_{i0}
    i0: int
    branch_order: tuple


def specialized_chain(ctx: OrbitContext) -> SpecializedChain:
    if ctx.datum.r != 4:
        raise ParamOutOfRange("specialized chains need four branch points")
    mats = []
    for i in range(ctx.i0):
        rows, cols = ctx.dims[i + 1], ctx.dims[i]
        w = ctx.chain_chars[i]
        entry = (
            phi_specialized
            if ctx.kinds[i] in (KIND_PHI, KIND_PHI_DUAL)
            else psi_specialized
        )
        mats.append(
            tuple(
                tuple(entry(ctx, w, jp, j) for j in range(1, cols + 1))
                for jp in range(1, rows + 1)
            )
        )
    return SpecializedChain(
        tuple(mats),
        ctx.kinds[: ctx.i0],
        ctx.chain_chars[: ctx.i0],
        ctx.dims[: ctx.i0 + 1],
        ctx.i0,
        ctx.branch_order,
    )


def _mat_mul_uni(a, b):
    rows, mid, cols = len(a), len(b), len(b[0])
    assert len(a[0]) == mid
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            cell = None
            for t in range(mid):
                term = a[i][t] * b[t][j]
                cell = term if cell is None else cell + term
            row.append(cell)
        out.append(row)
    return out


def h1(ctx: OrbitContext, budget: int = DEFAULT_TERM_BUDGET) -> FpUniPoly:
    """Twisted composite of the specialized chain over the first i0 steps:

        h1 = A_{i0-1} . A_{i0-2}^(p) . ... . A_0^(p^(i0-1)),

    a 1x1 matrix read off as a polynomial in t.  It divides the full
    specialized composite, so any root off {0, 1} certifies a
    non-ordinary member of the family."""
    sc = specialized_chain(ctx)
    est = 0
    for i, mat in enumerate(sc.matrices):
        dmax = max((e.degree or 0) for row in mat for e in row)
        est += dmax * (ctx.p ** (ctx.i0 - 1 - i))
    if est >= budget:
        raise DegreeBudgetExceeded(
            f"composite degree ~{est} exceeds the budget {budget}"
        )
    acc = None
    for i in range(ctx.i0 - 1, -1, -1):
        twisted = [
            [e.frobenius_pow(ctx.i0 - 1 - i) for e in row] for row in sc.matrices[i]
        ]
        acc = twisted if acc is None else _mat_mul_uni(acc, twisted)
    return acc[0][0]


@dataclass(frozen=True)
class H1Profile:
    """Exact shape data of h1 extracted without expanding the composite."""

    v_t: int
    degree: int
    value_at_one: int


def h1_profile(ctx: OrbitContext) -> H1Profile:
    """Valuation at 0, degree, and value at 1 of h1, computed layer by
    layer: values at 1 are Frobenius-fixed so they compose as a plain
    matrix product, and for p > 3m the per-entry valuations and degrees
    sit below p, making the path sums base-p digits that cannot collide
    or cancel."""
    if ctx.p <= 3 * ctx.datum.m:
        raise HypothesisNotMet(
            f"profile extraction needs p > 3m (p = {ctx.p}, m = {ctx.datum.m})"
        )
    sc = specialized_chain(ctx)
    p = ctx.p
    vmin = {1: 0}
    dmax = {1: 0}
    vals = {1: 1}
    for i in range(sc.i0):
        weight = p ** (sc.i0 - 1 - i)
        mat = sc.matrices[i]
        rows, cols = len(mat), len(mat[0])
        nvmin: dict = {}
        ndmax: dict = {}
        nvals: dict = {}
        for jp in range(1, rows + 1):
            acc_val = 0
            for j in range(1, cols + 1):
                entry = mat[jp - 1][j - 1]
                if entry.is_zero:
                    raise HypothesisNotMet(
                        "vanishing chain entry; profile laws do not apply"
                    )
                ev = entry.valuation_at(0)
                ed = entry.degree
                assert ev < p and ed < p
                cand_v = vmin[j] + weight * ev
                cand_d = dmax[j] + weight * ed
                if jp not in nvmin or cand_v < nvmin[jp]:
                    nvmin[jp] = cand_v
                if jp not in ndmax or cand_d > ndmax[jp]:
                    ndmax[jp] = cand_d
                acc_val = (acc_val + entry.evaluate(1) * vals[j]) % p
            nvals[jp] = acc_val
        vmin, dmax, vals = nvmin, ndmax, nvals
    return H1Profile(v_t=vmin[1], degree=dmax[1], value_at_one=vals[1])


def divisor_multiplicity(
    h: FpMultiPoly, j1: int, j2: int, budget: int = DEFAULT_TERM_BUDGET
) -> int:
    """Multiplicity of (x_{j1} - x_{j2}) in h (1-based variable labels),
    read off as the least exponent of the shifted variable after the
    substitution x_{j2} -> x_{j1} + x_{j2}."""
    if h.is_zero:
        raise InvalidInput("multiplicity in the zero polynomial")
    if not (1 <= j1 <= h.r and 1 <= j2 <= h.r) or j1 == j2:
        raise IndexOutOfRange(f"need two distinct labels in 1..{h.r}")
    shifted = h.substitute_shift(j2 - 1, j1 - 1, budget)
    return shifted.min_exponent(j2 - 1)


def h0_divisor_multiplicity(
    ctx: OrbitContext, j1: int, j2: int, budget: int = DEFAULT_TERM_BUDGET
) -> int:
    """Multiplicity of (x_{j1} - x_{j2}) in h0.

    When every chain layer is 1x1 the composite is a plain product of
    entries raised to p-powers (over F_p the exponent twist e -> p*e is
    the p-th power map on polynomials), so the valuation splits as
    sum_i p^{l-1-i} * v(entry_i) without expanding the product.  Chains
    with wider layers fall back to expanding h0."""
    if all(d == 1 for d in ctx.dims):
        chain = build_chain(ctx, budget)
        return sum(
            (ctx.p ** (ctx.l - 1 - i))
            * divisor_multiplicity(chain.matrices[i][0][0], j1, j2, budget)
            for i in range(ctx.l)
        )
    return divisor_multiplicity(h0(ctx, budget), j1, j2, budget)


def divisor_bound(ctx: OrbitContext, j1: int, j2: int) -> int:
    """Upper bound sum_i p^{l-1-i} * max(0, b_{j1} + b_{j2} - (p - 3)) for
    the multiplicity of (x_{j1} - x_{j2}) in h0, with the branch exponents
    taken at each step's chain character."""
    r = ctx.datum.r
    if not (1 <= j1 <= r and 1 <= j2 <= r) or j1 == j2:
        raise IndexOutOfRange(f"need two distinct labels in 1..{r}")
    total = 0
    for i in range(ctx.l):
        bs = branch_exponents(ctx.datum, ctx.p, ctx.chain_chars[i])
        t_i = max(0, bs[j1 - 1] + bs[j2 - 1] - (ctx.p - 3))
        total += (ctx.p ** (ctx.l - 1 - i)) * t_i
    return total


def _strip_01(f: FpUniPoly) -> FpUniPoly:
    """Divide out all t and (t - 1) factors."""
    field = f.field
    v0 = f.valuation_at(0)
    if v0:
        f = FpUniPoly(field, f.coeffs[v0:])
    v1 = f.valuation_at(1)
    lin = FpUniPoly(field, [field.p - 1, 1])
    for _ in range(v1):
        f = f // lin
    return f


@dataclass(frozen=True)
class Witness:
    """A certified non-ordinary member: alpha is a root of the certificate
    (None when every remaining factor exceeds the degree cap), in the
    branch coordinates fixed by branch_order."""

    alpha: Optional[object]
    degree: int
    certificate: FpUniPoly
    branch_order: tuple


def nonordinary_witness(
    ctx: OrbitContext, dmax: int, seed: int, budget: int = DEFAULT_TERM_BUDGET
) -> Optional[Witness]:
    """Root of h1 off {0, 1}, as a concrete extension-field element.

    Returns None only when h1 has no factor left after stripping t and
    t - 1 (for p > 3m that cannot happen)."""
    if dmax < 1:
        raise ParamOutOfRange("dmax must be >= 1")
    poly = h1(ctx, budget)
    if poly.is_zero:
        raise HypothesisNotMet(
            "chain composite vanishes identically; every parameter is a witness"
        )
    g = _strip_01(poly)
    if g.degree == 0:
        return None
    fac = factor(g, seed)
    for base_poly, _mult in fac.factors:
        if base_poly.degree <= dmax:
            if base_poly.degree == 1:
                # root in the prime field itself
                root = (-base_poly.coeffs[0] * ctx.field.inv(base_poly.coeffs[1])) % ctx.p
                return Witness(root, 1, base_poly, ctx.branch_order)
            ext = ExtField(ctx.field, base_poly, check=False)
            return Witness(ext.generator(), base_poly.degree, base_poly, ctx.branch_order)
    smallest = fac.factors[0][0]
    return Witness(None, smallest.degree, smallest, ctx.branch_order)


def witness_count(ctx: OrbitContext, budget: int = DEFAULT_TERM_BUDGET) -> int:
    """Number of distinct roots of h1 outside {0, 1}: the degree of the
    radical of h1 with all t and (t - 1) factors removed."""
    poly = h1(ctx, budget)
    if poly.is_zero:
        raise HypothesisNotMet(
            "chain composite vanishes identically; every parameter is a witness"
        )
    g = _strip_01(poly)
    if g.degree == 0:
        return 0
    return sum(part.degree for part in _squarefree_parts(g.monic()))
