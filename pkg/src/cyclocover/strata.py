"""Newton polygons and stratum censuses for four-branch-point families.

Per Frobenius orbit the generic polygon has slopes
lambda_j = #{c in orbit : f(c) >= g+1-j} / l for j = 1..g, each with
multiplicity l, and the bottom polygon is isoclinic of the same height
with slope sum(f over orbit) / (l*g).  Family polygons are slope-multiset
sums over all orbits; only the full sums are symmetric, the per-orbit
pieces need not be.

When p = +-1 mod m every balanced character pair {c, m-c} (signature 1
on both sides) contributes an independent binary choice: its piece stays
generic or drops to the isoclinic bottom, according to whether the
specialized chain polynomial phi_c vanishes at the curve coordinate.
The census decides each vanishing pattern exactly, by gcds and cofactors
of the stripped squarefree parts of the phi_c, and attaches those
polynomials as certificates.  In the remaining congruence classes only
the generic/non-generic split is reported, certified by the chain
polynomial at the smallest anchor character.
"""

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    HypothesisNotMet,
    InvalidInput,
    ParamOutOfRange,
    PDividesM,
    UnsupportedFamily,
    WrongCongruenceClass,
)
from .fabc import FabcParams, fabc
from .ff import (
    DEFAULT_TERM_BUDGET,
    ExtFieldElem,
    FpUniPoly,
    PrimeField,
    eval_in_ext,
    is_prime_u64,
    _squarefree_parts,
)
from .hassewitt import (
    OrbitContext,
    branch_exponents,
    h1,
    phi_entry,
    specialize_infty,
    _strip_01,
)
from .monodromy import FrobeniusOrbit, MonodromyDatum, frobenius_orbits, signature

LABEL_MU_ORDINARY = "MuOrdinary"
LABEL_W2 = "W2"
LABEL_W3 = "W3"
LABEL_BASIC = "Basic"
LABEL_NU = "Nu"
_LABELS = (LABEL_MU_ORDINARY, LABEL_W2, LABEL_W3, LABEL_BASIC, LABEL_NU)

M7_FAMILY = MonodromyDatum(7, 4, (3, 1, 1, 2))


@dataclass(frozen=True)
class NewtonPolygon:
    """Slope multiset (slope, multiplicity), slopes strictly increasing."""

    parts: tuple

    def __post_init__(self):
        prev = None
        for part in self.parts:
            if not (isinstance(part, tuple) and len(part) == 2):
                raise InvalidInput(f"polygon part must be (slope, mult): got {part!r}")
            slope, mult = part
            if not isinstance(slope, Fraction):
                raise InvalidInput(f"slope must be a Fraction: got {slope!r}")
            if not 0 <= slope <= 1:
                raise InvalidInput(f"slope {slope} outside [0, 1]")
            if not (isinstance(mult, int) and mult > 0):
                raise InvalidInput(f"multiplicity must be a positive integer: got {mult!r}")
            if prev is not None and slope <= prev:
                raise InvalidInput("slopes must be strictly increasing")
            prev = slope

    @classmethod
    def from_slopes(cls, pairs) -> "NewtonPolygon":
        """Normalize any (slope, mult) iterable: merge equal slopes, sort."""
        acc: dict = {}
        for slope, mult in pairs:
            slope = Fraction(slope)
            acc[slope] = acc.get(slope, 0) + mult
        return cls(tuple(sorted((s, m) for s, m in acc.items() if m != 0)))

    @property
    def height(self) -> int:
        return sum(m for _, m in self.parts)

    @property
    def slope_sum(self) -> Fraction:
        return sum((s * m for s, m in self.parts), Fraction(0))

    @property
    def is_symmetric(self) -> bool:
        table = dict(self.parts)
        return all(table.get(1 - s, 0) == m for s, m in self.parts)

    @property
    def is_supersingular(self) -> bool:
        return all(s == Fraction(1, 2) for s, _ in self.parts)

    def __add__(self, other: "NewtonPolygon") -> "NewtonPolygon":
        return NewtonPolygon.from_slopes(self.parts + other.parts)

    def to_text(self) -> str:
        if not self.parts:
            return "()"
        return " ".join(f"{s}^{m}" for s, m in self.parts)

    def to_json(self) -> list:
        return [[str(s), m] for s, m in self.parts]


def polygon_sum(a: NewtonPolygon, b: NewtonPolygon) -> NewtonPolygon:
    """Multiset union of the slope parts."""
    return a + b


def ord_polygon(eps: int) -> NewtonPolygon:
    """Slopes {0, 1} each with multiplicity eps; eps = 0 gives the empty
    polygon."""
    if eps < 0:
        raise ParamOutOfRange(f"ord multiplicity must be >= 0: got {eps}")
    if eps == 0:
        return NewtonPolygon(())
    return NewtonPolygon(((Fraction(0), eps), (Fraction(1), eps)))


def _orbit_g(orbit: FrobeniusOrbit, sig) -> int:
    m = len(sig)
    g = sig[orbit.members[0]] + sig[(m - orbit.members[0]) % m]
    for c in orbit.members:
        if sig[c] + sig[(m - c) % m] != g:
            raise InvalidInput(f"signature sum not constant on orbit {orbit.members}")
    return g


def mu_ordinary_orbit(orbit: FrobeniusOrbit, sig) -> NewtonPolygon:
    """Generic polygon of one orbit: lambda_j = #{c : f(c) >= g+1-j} / l,
    multiplicity l for each j = 1..g."""
    g = _orbit_g(orbit, sig)
    l = orbit.l
    pairs = []
    for j in range(1, g + 1):
        cnt = sum(1 for c in orbit.members if sig[c] >= g + 1 - j)
        pairs.append((Fraction(cnt, l), l))
    return NewtonPolygon.from_slopes(pairs)


def basic_orbit(orbit: FrobeniusOrbit, sig) -> NewtonPolygon:
    """Bottom polygon of one orbit: isoclinic of height l*g with slope
    sum(f over orbit) / (l*g)."""
    g = _orbit_g(orbit, sig)
    height = orbit.l * g
    if height == 0:
        return NewtonPolygon(())
    fsum = sum(sig[c] for c in orbit.members)
    return NewtonPolygon(((Fraction(fsum, height), height),))


def mu_ordinary_family(datum: MonodromyDatum, p: int) -> NewtonPolygon:
    """Generic polygon of the whole family: sum over all orbits."""
    PrimeField(p)
    sig = signature(datum)
    out = NewtonPolygon(())
    for orbit in frobenius_orbits(datum.m, p, sig):
        out = out + mu_ordinary_orbit(orbit, sig)
    return out


def basic_family(datum: MonodromyDatum, p: int) -> NewtonPolygon:
    """Bottom polygon of the whole family: sum of isoclinic orbit pieces."""
    PrimeField(p)
    sig = signature(datum)
    out = NewtonPolygon(())
    for orbit in frobenius_orbits(datum.m, p, sig):
        out = out + basic_orbit(orbit, sig)
    return out


def _stratum_polygon(datum: MonodromyDatum, p: int, vanishing: frozenset) -> NewtonPolygon:
    """Polygon of the stratum where exactly the pairs named in `vanishing`
    (by their representative min(c, m-c)) drop to the bottom piece."""
    m = datum.m
    sig = signature(datum)
    out = NewtonPolygon(())
    for orbit in frobenius_orbits(m, p, sig):
        rep = min(min(c, m - c) for c in orbit.members)
        piece = basic_orbit(orbit, sig) if rep in vanishing else mu_ordinary_orbit(orbit, sig)
        out = out + piece
    return out


@dataclass(frozen=True)
class StratumLabel:
    kind: str
    m: int
    p_class: int

    def __post_init__(self):
        if self.kind not in _LABELS:
            raise InvalidInput(f"unknown stratum kind {self.kind!r}")
        if not 1 <= self.p_class < self.m:
            raise InvalidInput(f"residue class {self.p_class} outside 1..{self.m - 1}")
        if self.kind in (LABEL_W2, LABEL_W3) and not (
            self.m == 7 and self.p_class in (1, 6)
        ):
            raise InvalidInput(f"{self.kind} only exists for m=7, p = +-1 mod 7")

    def __str__(self) -> str:
        return f"{self.kind}(p={self.p_class} mod {self.m})"


@dataclass(frozen=True)
class Classification:
    label: StratumLabel
    polygon: NewtonPolygon


def _chain_poly(datum: MonodromyDatum, p: int, c: int, budget: int) -> FpUniPoly:
    """Specialized chain polynomial anchored at character c (base m-c)."""
    ctx = OrbitContext(datum, p, (datum.m - c) % datum.m)
    return h1(ctx, budget)


def _radical_01(f: FpUniPoly) -> FpUniPoly:
    """Monic product of the distinct irreducible factors of f away from
    t and t-1."""
    if f.is_zero:
        raise HypothesisNotMet("chain polynomial vanishes identically")
    stripped = _strip_01(f)
    if stripped.degree == 0:
        return FpUniPoly.one(f.field)
    out = FpUniPoly.one(f.field)
    for part in _squarefree_parts(stripped.monic()):
        out = out * part
    return out


def _vanishes_at(f: FpUniPoly, alpha) -> bool:
    if isinstance(alpha, ExtFieldElem):
        return eval_in_ext(f, alpha).is_zero
    return f.evaluate(alpha) == 0


def classify_m7(p: int, alpha, budget: int = DEFAULT_TERM_BUDGET) -> Classification:
    """Stratum of the curve with coordinate alpha in the (7,4,(3,1,1,2))
    family: read off which of phi_2, phi_3 vanish at alpha.

    alpha may be an integer (prime-field point) or an ExtFieldElem."""
    field = PrimeField(p)
    cls = p % 7
    if cls not in (1, 6):
        raise WrongCongruenceClass(f"p = {p} is {cls} mod 7, need +-1")
    if isinstance(alpha, ExtFieldElem):
        if alpha.ext.base != field:
            raise InvalidInput(f"alpha lives over p={alpha.ext.base.p}, expected {p}")
        excluded = alpha.is_zero or alpha == alpha.ext.from_base(1)
    else:
        excluded = alpha % p in (0, 1)
    if excluded:
        raise ParamOutOfRange("alpha must avoid 0 and 1")
    vanishing = set()
    for c in (2, 3):
        if _vanishes_at(_chain_poly(M7_FAMILY, p, c, budget), alpha):
            vanishing.add(c)
    if not vanishing:
        kind = LABEL_MU_ORDINARY
    elif vanishing == {3}:
        kind = LABEL_W2
    elif vanishing == {2}:
        kind = LABEL_W3
    else:
        kind = LABEL_BASIC
    return Classification(
        label=StratumLabel(kind, 7, cls),
        polygon=_stratum_polygon(M7_FAMILY, p, frozenset(vanishing)),
    )


@dataclass(frozen=True)
class StratumReport:
    label: StratumLabel
    dim: Optional[int]
    nonempty: bool
    certificate: Optional[str]
    polygon: NewtonPolygon

    def to_json_record(self) -> dict:
        return {
            "label": self.label.kind,
            "dim": self.dim,
            "nonempty": self.nonempty,
            "certificate": self.certificate,
        }


@dataclass(frozen=True)
class CensusReport:
    datum: MonodromyDatum
    p: int
    p_class: int
    dim_sh: int
    strata: tuple

    def to_json_record(self) -> dict:
        return {
            "p": self.p,
            "class": self.p_class,
            "strata": [s.to_json_record() for s in self.strata],
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_json_record(), sort_keys=True, separators=(",", ":"))


def census(
    datum: MonodromyDatum,
    p: int,
    allow_small: bool = False,
    budget: int = DEFAULT_TERM_BUDGET,
) -> CensusReport:
    """Which strata meet the family at prime p, with exact certificates.

    For p = +-1 mod m each balanced pair's chain polynomial phi_c is
    stripped of its roots at 0 and 1 and reduced to its radical; the
    strata then read off gcds: a pattern is realized exactly when the
    matching cofactor has positive degree.  Other congruence classes get
    the two-row generic / non-generic report."""
    if datum.r != 4 or datum.m not in (5, 7):
        raise UnsupportedFamily(
            f"census needs r=4 and m in {{5, 7}}: got m={datum.m}, r={datum.r}"
        )
    PrimeField(p)
    if math.gcd(p, datum.m) != 1:
        raise PDividesM(f"p = {p} shares a factor with m = {datum.m}")
    if p <= 3 * datum.m and not allow_small:
        raise HypothesisNotMet(
            f"census assumes p > {3 * datum.m}; pass allow_small=True to force p = {p}"
        )
    m = datum.m
    sig = signature(datum)
    cls = p % m
    pairs = [(c, m - c) for c in range(1, (m + 1) // 2)]
    dim_sh = sum(sig[c] * sig[m - c] for c, _ in pairs)
    reps = [c for c, cc in pairs if sig[c] == 1 and sig[cc] == 1]
    mu_row = StratumReport(
        label=StratumLabel(LABEL_MU_ORDINARY, m, cls),
        dim=dim_sh,
        nonempty=True,
        certificate=None,
        polygon=_stratum_polygon(datum, p, frozenset()),
    )
    if cls in (1, m - 1):
        rads = {c: _radical_01(_chain_poly(datum, p, c, budget)) for c in reps}
        if m == 7 and reps == [2, 3]:
            g = rads[2].gcd(rads[3])
            w2_cof = (rads[3] // g).monic()
            w3_cof = (rads[2] // g).monic()
            rows = [
                (LABEL_W2, dim_sh - 1, w2_cof, frozenset({3})),
                (LABEL_W3, dim_sh - 1, w3_cof, frozenset({2})),
                (LABEL_BASIC, dim_sh - 2, g, frozenset({2, 3})),
            ]
        elif len(reps) == 1:
            rows = [(LABEL_BASIC, dim_sh - 1, rads[reps[0]], frozenset({reps[0]}))]
        else:
            raise UnsupportedFamily(
                f"no stratum labels for {len(reps)} balanced pairs (m={m})"
            )
        strata = [mu_row]
        for kind, dim, cert_poly, vanishing in rows:
            nonempty = cert_poly.degree is not None and cert_poly.degree >= 1
            strata.append(
                StratumReport(
                    label=StratumLabel(kind, m, cls),
                    dim=dim,
                    nonempty=nonempty,
                    certificate=cert_poly.to_text() if nonempty else None,
                    polygon=_stratum_polygon(datum, p, vanishing),
                )
            )
    else:
        anchor = min(c for c in range(1, m) if sig[c] == 1)
        rad = _radical_01(_chain_poly(datum, p, anchor, budget))
        nonempty = rad.degree is not None and rad.degree >= 1
        strata = [
            mu_row,
            StratumReport(
                label=StratumLabel(LABEL_NU, m, cls),
                dim=dim_sh - 1,
                nonempty=nonempty,
                certificate=rad.to_text() if nonempty else None,
                polygon=basic_family(datum, p),
            ),
        ]
    return CensusReport(datum=datum, p=p, p_class=cls, dim_sh=dim_sh, strata=tuple(strata))


def _survey_task(args) -> CensusReport:
    datum, p, allow_small, budget = args
    return census(datum, p, allow_small=allow_small, budget=budget)


@dataclass(frozen=True)
class SurveyResult:
    datum: MonodromyDatum
    congruence: int
    records: tuple
    counts: dict = field(compare=False)

    def nonempty_count(self, kind: str) -> int:
        return self.counts.get(kind, 0)

    def to_json_lines(self) -> str:
        if not self.records:
            return ""
        return "\n".join(r.to_json_line() for r in self.records) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["p", "class", "label", "dim", "nonempty", "certificate"])
        for rec in self.records:
            for s in rec.strata:
                writer.writerow(
                    [
                        rec.p,
                        rec.p_class,
                        s.label.kind,
                        "" if s.dim is None else s.dim,
                        s.nonempty,
                        "" if s.certificate is None else s.certificate,
                    ]
                )
        return buf.getvalue()


def survey_primes(m: int, congruence: int, count: int) -> list:
    """First `count` primes congruent to `congruence` mod m."""
    if count < 0:
        raise ParamOutOfRange(f"count must be >= 0: got {count}")
    if not 1 <= congruence < m or math.gcd(congruence, m) != 1:
        raise ParamOutOfRange(
            f"congruence class {congruence} mod {m} contains at most one prime"
        )
    primes = []
    n = congruence
    while len(primes) < count:
        if n >= 2 and is_prime_u64(n):
            primes.append(n)
        n += m
    return primes


def prime_survey(
    datum: MonodromyDatum,
    congruence: int,
    count: int,
    workers: int = 1,
    allow_small: bool = False,
    budget: int = DEFAULT_TERM_BUDGET,
) -> SurveyResult:
    """Census of the first `count` primes in one congruence class.

    Workers each run the pure census on their own primes; the records
    are merged back in increasing-p order regardless of completion
    order."""
    if workers < 1:
        raise ParamOutOfRange(f"workers must be >= 1: got {workers}")
    primes = survey_primes(datum.m, congruence, count)
    tasks = [(datum, p, allow_small, budget) for p in primes]
    if workers == 1 or len(tasks) <= 1:
        records = [_survey_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_survey_task, tasks))
    records.sort(key=lambda r: r.p)
    counts: dict = {}
    for rec in records:
        for s in rec.strata:
            if s.nonempty:
                counts[s.label.kind] = counts.get(s.label.kind, 0) + 1
    return SurveyResult(datum=datum, congruence=congruence, records=tuple(records), counts=counts)


def supersingular_minus_one(
    datum: MonodromyDatum, p: int, budget: int = DEFAULT_TERM_BUDGET
) -> bool:
    """Does the curve at coordinate -1 drop to the all-1/2 bottom polygon?

    Needs m odd, a repeated label, and p = -1 mod m.  With the repeated
    labels moved to the middle slots, the coordinate -1 is the fixed
    point of the swap of the two finite nonzero branch points, and each
    balanced pair's chain entry is evaluated there; the unbalanced pairs
    contribute forced half-slope pieces.  Returns the verdict of the
    evaluations (the theory says every one vanishes)."""
    m = datum.m
    if m % 2 == 0:
        raise HypothesisNotMet(f"m must be odd: got {m}")
    if datum.r != 4:
        raise HypothesisNotMet(f"four branch points required: got r={datum.r}")
    repeated = next(
        (
            (i, j)
            for i in range(4)
            for j in range(i + 1, 4)
            if datum.a[i] == datum.a[j]
        ),
        None,
    )
    if repeated is None:
        raise HypothesisNotMet("labels are pairwise distinct")
    if p % m != m - 1:
        raise HypothesisNotMet(f"p = {p} is {p % m} mod {m}, need -1")
    PrimeField(p)
    i, j = repeated
    outer = [k for k in range(4) if k not in (i, j)]
    order = (outer[0], i, j, outer[1])
    ordered = MonodromyDatum(m, 4, tuple(datum.a[k] for k in order))
    sig = signature(datum)
    for c in range(1, (m + 1) // 2):
        if sig[c] != 1 or sig[m - c] != 1:
            continue
        bs = branch_exponents(datum, p, c, order=order)
        n = sum(bs) - p + 1
        if p > 2 and 0 <= n - bs[0] <= bs[1] + bs[2]:
            value = fabc(FabcParams(bs[1], bs[2], n - bs[0], p)).evaluate(p - 1)
        else:
            entry = phi_entry(ordered, p, c, 1, 1, budget)
            value = specialize_infty(entry).evaluate(p - 1)
        if value != 0:
            return False
    return True
