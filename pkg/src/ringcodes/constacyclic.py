"""Constacyclic codes: ideals of R[x]/(x^n - lambda) over chain rings.

The canonical internal presentation is the primary-ideal exponent vector:
against the certified factor set {pi_1, ..., pi_b} of x^n - lambda, every
ideal is the product over l of <pi_l, gamma^(m_l)> with 0 <= m_l <= e, so
ideal equality is equality of exponent vectors and there are exactly
(e+1)^b ideals.  Divisor presentations (free codes, exponents in {0, e}),
the divisibility-chain family <g_0, gamma g_1, ...> and the single
generator sum_j gamma^(j-1) * (x^n - lambda)/F_j are all converted to and
from that vector.

The hat convention here reads (x^n - lambda)/F_j with the code's own
twist; generator matrices come from the free shift bases x^t * gamma^j *
G_j with G_j the product of the factors whose exponent exceeds j.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Optional, Sequence

from .errors import (
    BudgetExceededError,
    GcdViolationError,
    NotCoprimeError,
    NotDivisorError,
    SpecMismatchError,
    VerificationError,
)
from .linear import LinearCode, resolve_budget
from .polys import (
    FactorSet,
    RingPoly,
    binomial_xn_minus,
    factor_xn_minus_lambda,
    reduce_mod_xn_lambda,
)
from .rings import ChainRing, RingElement


def poly_to_vector(f: RingPoly, n: int):
    return [f.coeff(i) for i in range(n)]


def vector_to_poly(ring: ChainRing, vec) -> RingPoly:
    return RingPoly(ring, list(vec))


def twisted_shift(vec, lam: RingElement):
    """(c_0, ..., c_{n-1}) -> (lambda * c_{n-1}, c_0, ..., c_{n-2})."""
    return [vec[-1] * lam] + list(vec[:-1])


class ConstacyclicCode:
    """A lambda-constacyclic code, canonically an exponent vector over the
    factor set of x^n - lambda."""

    def __init__(self, factor_set: FactorSet, exponents: Sequence[int]):
        self.fs = factor_set
        self.ring = factor_set.ring
        self.n = factor_set.n
        self.lam = factor_set.lam
        exps = tuple(int(m) for m in exponents)
        if len(exps) != factor_set.b:
            raise ValueError("exponent vector length differs from the factor count")
        if any(not 0 <= m <= self.ring.e for m in exps):
            raise ValueError("exponents must lie in [0, e]")
        self.exponents = exps

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_exponents(cls, n, lam, ring, exponents, factor_set=None):
        fs = factor_set or factor_xn_minus_lambda(n, lam, ring)
        return cls(fs, exponents)

    @classmethod
    def from_divisor(cls, f: RingPoly, n: int, lam, ring: ChainRing = None,
                     factor_set: FactorSet = None) -> "ConstacyclicCode":
        """Free constacyclic code generated by a monic divisor of x^n - lambda;
        the rank is n - deg f."""
        ring = ring or f.ring
        fs = factor_set or factor_xn_minus_lambda(n, lam, ring)
        modulus = fs.modulus
        if not f.is_monic or not (modulus % f).is_zero:
            raise NotDivisorError("f does not divide x^n - lambda")
        # the factors of f are exactly the basic irreducibles dividing it
        exps = []
        rem = f
        for pi in fs.factors:
            q, r = divmod(rem, pi)
            if r.is_zero:
                exps.append(ring.e)
                rem = q
            else:
                exps.append(0)
        if rem.degree != 0 or not rem.coeffs[0] == ring.one:
            raise NotDivisorError("f is not a product of basic irreducible factors")
        code = cls(fs, exps)
        if code.rank != n - f.degree:
            raise VerificationError("free constacyclic rank differs from n - deg f")
        return code

    @classmethod
    def zero_code(cls, fs: FactorSet):
        return cls(fs, (fs.ring.e,) * fs.b)

    @classmethod
    def full_code(cls, fs: FactorSet):
        return cls(fs, (0,) * fs.b)

    # -- structure ----------------------------------------------------------------

    def generator_family(self):
        """[(j, G_j)] for j = 0..e-1 with G_j = prod of factors with m_l > j."""
        out = []
        for j in range(self.ring.e):
            g = RingPoly.one(self.ring)
            for m, pi in zip(self.exponents, self.fs.factors):
                if m > j:
                    g = g * pi
            out.append((j, g))
        return out

    @cached_property
    def linear(self) -> LinearCode:
        """The underlying linear code, via free shift bases per gamma stratum."""
        rows = []
        for j, g in self.generator_family():
            if g.degree == self.n:  # G_j = x^n - lambda: contributes nothing
                continue
            scale = self.ring.gamma_power(j)
            base = g * scale
            for t in range(self.n - int(g.degree)):
                rows.append(poly_to_vector(base.shift(t), self.n))
        if not rows:
            return LinearCode.zero(self.ring, self.n)
        return LinearCode(self.ring, self.n, rows)

    @property
    def cardinality(self) -> int:
        # componentwise count: each <pi_l, gamma^(m_l)> contributes (e - m_l) deg pi_l digits
        total = sum(
            (self.ring.e - m) * int(pi.degree)
            for m, pi in zip(self.exponents, self.fs.factors)
        )
        return self.ring.p ** total

    @property
    def rank(self) -> int:
        return self.linear.rank

    @property
    def is_free(self) -> bool:
        return all(m in (0, self.ring.e) for m in self.exponents)

    def divisor(self) -> RingPoly:
        """For a free code, the monic divisor generating it."""
        if not self.is_free:
            raise VerificationError("only free constacyclic codes have a divisor generator")
        g = RingPoly.one(self.ring)
        for m, pi in zip(self.exponents, self.fs.factors):
            if m == self.ring.e:
                g = g * pi
        return g

    def __eq__(self, other):
        return (
            isinstance(other, ConstacyclicCode)
            and self.ring == other.ring
            and self.n == other.n
            and self.lam == other.lam
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.ring, self.n, self.lam, self.exponents))

    def __repr__(self):
        return (
            f"ConstacyclicCode(n={self.n}, lambda={self.lam!r}, "
            f"exponents={self.exponents})"
        )

    def is_shift_closed(self) -> bool:
        lin = self.linear
        return all(
            lin.contains(twisted_shift(list(row), self.lam)) for row in lin.howell
        )

    def descriptor(self) -> dict:
        return {
            "n": self.n,
            "lambda": list(self.lam.digits),
            "exponents": list(self.exponents),
            "factors": [f.to_json() for f in self.fs.factors],
        }

    # -- duality --------------------------------------------------------------------

    def dual(self) -> "ConstacyclicCode":
        """Dual code, recognized as a lambda^(-1)-constacyclic exponent vector.

        Computed as the linear-code kernel, then re-expressed against the
        factor set of x^n - lambda^(-1) by valuations modulo each factor;
        the reconstruction is verified to equal the kernel exactly.
        """
        lam_inv = self.lam.inverse()
        dual_lin = self.linear.dual()
        fs_inv = factor_xn_minus_lambda(self.n, lam_inv, self.ring)
        exps = []
        for pi in fs_inv.factors:
            m = self.ring.e
            for row in dual_lin.howell:
                m = min(m, _valuation_mod(vector_to_poly(self.ring, row), pi))
                if m == 0:
                    break
            exps.append(m)
        cand = ConstacyclicCode(fs_inv, exps)
        if cand.linear != dual_lin:
            raise VerificationError("dual is not the recognized constacyclic code")
        return cand

    # -- precision maps ----------------------------------------------------------------

    def project(self, i: int) -> "ConstacyclicCode":
        """Image under the precision truncation; exponents cap at i."""
        if i > self.ring.e:
            raise SpecMismatchError("projection target exceeds current precision")
        ring_i = self.ring.with_precision(i)
        fs_i = factor_xn_minus_lambda(self.n, self.lam.project(i), ring_i)
        # factors correspond through their residue images
        exps = []
        for pi in fs_i.factors:
            idx = self.fs.index_of_residue(pi.residue())
            exps.append(min(self.exponents[idx], i))
        cand = ConstacyclicCode(fs_i, exps)
        if cand.linear != self.linear.project_to(i):
            raise VerificationError("projection mismatch between ideal and linear views")
        return cand

    def lift(self, j: int) -> "ConstacyclicCode":
        """Lift preserving the exponent vector; factors lift by Hensel.

        Free codes lift to the free code on the Hensel-lifted divisor (the
        unique one projecting back), keeping rank, and for MDS inputs the
        distance; projecting the lift returns this code."""
        if j < self.ring.e:
            raise SpecMismatchError("lift target below current precision")
        ring_j = self.ring.with_precision(j)
        fs_j = factor_xn_minus_lambda(self.n, self.lam.lift(j), ring_j)
        exps = [0] * fs_j.b
        for idx_j, pi in enumerate(fs_j.factors):
            idx = self.fs.index_of_residue(pi.residue())
            m = self.exponents[idx]
            exps[idx_j] = j if m == self.ring.e else m
        return ConstacyclicCode(fs_j, exps)

    def map_precision(self, j: int) -> "ConstacyclicCode":
        if j == self.ring.e:
            return self
        return self.lift(j) if j > self.ring.e else self.project(j)


def _valuation_mod(g: RingPoly, pi: RingPoly) -> int:
    """Largest v <= e with g in <pi, gamma^v>, i.e. pi_v | g_v over R_v."""
    ring = g.ring
    for v in range(ring.e, 0, -1):
        if (g.project(v) % pi.project(v)).is_zero:
            return v
    return 0


# ---------------------------------------------------------------------------
# spec-facing operations
# ---------------------------------------------------------------------------

def from_divisor(f: RingPoly, n: int, lam, ring: ChainRing = None) -> ConstacyclicCode:
    return ConstacyclicCode.from_divisor(f, n, lam, ring)


def single_generator(family: Sequence[RingPoly], n: int, lam, ring: ChainRing):
    """Convert a coprime family F_0, ..., F_e with product x^n - lambda into
    the single-generator presentation.

    Returns (generator polynomial, cardinality, code).  The generator is
    sum_{j=1..e} gamma^(j-1) * (x^n - lambda)/F_j; the module it generates
    is verified to equal the code of the family (exponent m = j - 1 on the
    factors of F_j for j >= 1, m = e on those of F_0), and the cardinality
    matches |K|^(sum (e-j) deg F_{j+1}).
    """
    lam = ring.elem(lam)
    e = ring.e
    if len(family) != e + 1:
        raise ValueError(f"family must have e + 1 = {e + 1} polynomials")
    fs = factor_xn_minus_lambda(n, lam, ring)
    modulus = fs.modulus
    prod = RingPoly.one(ring)
    for F in family:
        prod = prod * F
    if prod != modulus:
        raise NotCoprimeError("family product does not equal x^n - lambda")
    # map each basic irreducible to the unique family member it divides
    exps = []
    for pi in fs.factors:
        owners = [j for j, F in enumerate(family) if (F % pi).is_zero]
        if len(owners) != 1:
            raise NotCoprimeError("family is not pairwise coprime")
        j = owners[0]
        exps.append(e if j == 0 else j - 1)
    code = ConstacyclicCode(fs, exps)

    gen = RingPoly.zero(ring)
    for j in range(1, e + 1):
        hat = modulus // family[j]
        gen = gen + hat * ring.gamma_power(j - 1)
    gen = reduce_mod_xn_lambda(gen, n, lam)
    # the cyclic module on the single generator must equal the family code
    rows = [poly_to_vector(reduce_mod_xn_lambda(gen.shift(t), n, lam), n) for t in range(n)]
    single = LinearCode(ring, n, rows) if any(any(not x.is_zero for x in r) for r in rows) else LinearCode.zero(ring, n)
    if single != code.linear:
        raise VerificationError("single-generator module differs from the family code")
    log_card = sum((e - j) * int(family[j + 1].degree) for j in range(e) if not family[j + 1].is_zero)
    if ring.p ** log_card != code.cardinality:
        raise VerificationError("cardinality formula mismatch for the family")
    return gen, code.cardinality, code


def enumerate_all(n: int, lam, ring: ChainRing, budget: Optional[int] = None):
    """All constacyclic codes with the given twist: exactly (e+1)^b of them,
    pairwise distinct (checked by canonical-form deduplication)."""
    budget = resolve_budget(budget)
    fs = factor_xn_minus_lambda(n, lam, ring)
    total = (ring.e + 1) ** fs.b
    if total > budget:
        raise BudgetExceededError(
            f"(e+1)^b = {total} codes exceed budget {budget}", cardinality=total
        )
    codes = [
        ConstacyclicCode(fs, exps)
        for exps in itertools.product(range(ring.e + 1), repeat=fs.b)
    ]
    distinct = {code.linear for code in codes}
    if len(distinct) != total:
        raise VerificationError("ideal count (e+1)^b failed deduplication")
    return codes


def counts(n: int, lam, ring: ChainRing, budget: Optional[int] = None):
    """(total, free_total) = ((e+1)^b, 2^b), cross-checked by enumeration
    when the total fits the budget."""
    lam_el = ring.elem(lam)
    if n % ring.p == 0:
        raise GcdViolationError(f"gcd(n, p) = gcd({n}, {ring.p}) != 1")
    fs = factor_xn_minus_lambda(n, lam_el, ring)
    total = (ring.e + 1) ** fs.b
    free_total = 2 ** fs.b
    budget = resolve_budget(budget)
    if total <= min(budget, 4096):
        codes = enumerate_all(n, lam_el, ring, budget)
        free_seen = sum(1 for c in codes if c.is_free)
        if free_seen != free_total:
            raise VerificationError("free-code count 2^b failed enumeration")
    return total, free_total


def dual_constacyclic(code: ConstacyclicCode) -> ConstacyclicCode:
    return code.dual()


def map_constacyclic_precision(code: ConstacyclicCode, j: int) -> ConstacyclicCode:
    return code.map_precision(j)
