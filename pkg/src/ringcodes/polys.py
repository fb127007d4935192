"""Polynomials over chain rings and their residue fields.

The heavy lifting happens in two layers.  A private layer works on plain
integer coefficient tuples over F_p and provides division, gcd, modular
exponentiation and a full factorization pipeline (squarefree split,
distinct-degree split, then equal-degree split with an explicitly seeded
random source so output is reproducible run to run).  The public layer
wraps chain-ring coefficient polynomials (`RingPoly`), certified
factorizations of x^n - lambda (`FactorSet`), digit-by-digit Hensel
lifting, Bezout coprimality witnesses, idempotent generators and the
cyclotomic coset counts that predict factor numbers.

Everything is exact; all randomness is confined to equal-degree splitting
and never leaks into results.
"""

from __future__ import annotations

import random
from typing import Sequence

from .errors import (
    GcdViolationError,
    NonUnitError,
    NotCoprimeError,
    NotDivisorError,
    NotMonicError,
    VerificationError,
)
from .rings import ChainRing, RingElement, make_ring

_EDF_SEED = 0x5EED


# ---------------------------------------------------------------------------
# F_p polynomials as trimmed low-to-high integer tuples
# ---------------------------------------------------------------------------

def _fp_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _fp_add(a, b, p):
    n = max(len(a), len(b))
    return _fp_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _fp_neg(a, p):
    return tuple((-x) % p for x in a)


def _fp_sub(a, b, p):
    return _fp_add(a, _fp_neg(b, p), p)


def _fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(out)


def _fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv_lead = pow(b[-1], -1, p)
    rem = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        coef = rem[i + len(b) - 1] * inv_lead % p
        if coef:
            q[i] = coef
            for j, y in enumerate(b):
                rem[i + j] = (rem[i + j] - coef * y) % p
    return _fp_trim(q), _fp_trim(rem)


def _fp_monic(a, p):
    if not a:
        return ()
    inv = pow(a[-1], -1, p)
    return tuple(x * inv % p for x in a)


def _fp_gcd(a, b, p):
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return _fp_monic(a, p)


def _fp_ext_gcd(a, b, p):
    """Return (g, u, v) with u*a + v*b = g and g monic."""
    r0, r1 = a, b
    u0, u1 = (1,), ()
    v0, v1 = (), (1,)
    while r1:
        q, r = _fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, _fp_sub(u0, _fp_mul(q, u1, p), p)
        v0, v1 = v1, _fp_sub(v0, _fp_mul(q, v1, p), p)
    if not r0:
        return (), u0, v0
    inv = pow(r0[-1], -1, p)
    scale = (inv,)
    return _fp_monic(r0, p), _fp_mul(scale, u0, p), _fp_mul(scale, v0, p)


def _fp_pow_mod(base, exp, mod, p):
    result = (1,)
    base = _fp_divmod(base, mod, p)[1]
    while exp > 0:
        if exp & 1:
            result = _fp_divmod(_fp_mul(result, base, p), mod, p)[1]
        base = _fp_divmod(_fp_mul(base, base, p), mod, p)[1]
        exp >>= 1
    return result


def _fp_deriv(a, p):
    return _fp_trim([i * a[i] % p for i in range(1, len(a))])


def _fp_pth_root(a, p):
    # over the prime field c^p = c, so a(x) = b(x^p) gives b_i = a_{i*p}
    return _fp_trim([a[i] for i in range(0, len(a), p)])


def _fp_squarefree_parts(f, p):
    """Decompose monic f into [(g, m)] with g monic squarefree, f = prod g^m."""
    out = []
    c = _fp_gcd(f, _fp_deriv(f, p), p)
    w = _fp_divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = _fp_gcd(w, c, p)
        fac = _fp_divmod(w, y, p)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = _fp_divmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        for g, m in _fp_squarefree_parts(_fp_pth_root(c, p), p):
            out.append((g, m * p))
    return out


def _fp_distinct_degree(f, p):
    """Split squarefree monic f into [(product of degree-d factors, d)]."""
    out = []
    h = (0, 1)  # x
    k = f
    d = 0
    while len(k) - 1 > 2 * d:
        d += 1
        h = _fp_pow_mod(h, p, k, p)
        g = _fp_gcd(_fp_sub(h, (0, 1), p), k, p)
        if len(g) > 1:
            out.append((g, d))
            k = _fp_divmod(k, g, p)[0]
            h = _fp_divmod(h, k, p)[1]
    if len(k) > 1:
        out.append((k, len(k) - 1))
    return out


def _fp_equal_degree(g, d, p, rng):
    """Cantor-Zassenhaus split of g into its degree-d irreducible factors."""
    r = (len(g) - 1) // d
    if r == 1:
        return [g]
    while True:
        h = tuple(rng.randrange(p) for _ in range(len(g) - 1))
        h = _fp_trim(h)
        if len(h) <= 1:
            continue
        if p == 2:
            # trace map h + h^2 + ... + h^(2^(d-1)) mod g
            t, acc = (), h
            for _ in range(d):
                t = _fp_add(t, acc, p)
                acc = _fp_pow_mod(acc, 2, g, p)
            u = _fp_gcd(t, g, p)
        else:
            t = _fp_pow_mod(h, (p ** d - 1) // 2, g, p)
            u = _fp_gcd(_fp_sub(t, (1,), p), g, p)
        if 1 < len(u) < len(g):
            rest = _fp_divmod(g, u, p)[0]
            return _fp_equal_degree(u, d, p, rng) + _fp_equal_degree(rest, d, p, rng)


def _fp_factor(f, p, rng=None):
    """Monic irreducible factorization [(g, mult)] of f != 0, sorted."""
    if not f:
        raise ZeroDivisionError("cannot factor the zero polynomial")
    if rng is None:
        rng = random.Random(_EDF_SEED)
    lead = f[-1]
    f = _fp_monic(f, p)
    found = {}
    for sf, mult in _fp_squarefree_parts(f, p):
        for block, d in _fp_distinct_degree(sf, p):
            for irr in _fp_equal_degree(block, d, p, rng):
                found[irr] = found.get(irr, 0) + mult
    factors = sorted(found.items(), key=lambda it: (len(it[0]), it[0]))
    return lead, factors


def _fp_is_irreducible(f, p):
    if len(f) <= 1:
        return False
    _, factors = _fp_factor(f, p)
    return len(factors) == 1 and factors[0][1] == 1 and len(factors[0][0]) == len(f)


# ---------------------------------------------------------------------------
# Polynomials over a chain ring
# ---------------------------------------------------------------------------

NEG_INF = float("-inf")


class RingPoly:
    """Polynomial with chain-ring coefficients, trailing zeros trimmed."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: ChainRing, coeffs: Sequence):
        cs = [ring.elem(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, ())

    @classmethod
    def one(cls, ring):
        return cls(ring, (ring.one,))

    @classmethod
    def x_power(cls, ring, t, scale=None):
        scale = ring.one if scale is None else ring.elem(scale)
        return cls(ring, (ring.zero,) * t + (scale,))

    @classmethod
    def from_int_coeffs(cls, ring, ints):
        return cls(ring, [ring.elem(int(c)) for c in ints])

    # -- structure -----------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    @property
    def is_regular(self) -> bool:
        """Not a zero divisor, i.e. the residue image is nonzero."""
        return any(c.digits[0] != 0 for c in self.coeffs)

    def coeff(self, i: int) -> RingElement:
        return self.coeffs[i] if i < len(self.coeffs) else self.ring.zero

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingPoly)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"RingPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            cs = repr(c)
            if "+" in cs or "*" in cs:
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                parts.append(xs if cs == "1" else f"{cs}*{xs}")
        return "+".join(parts)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, RingPoly) or other.ring != self.ring:
            raise TypeError("operands live over different rings")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RingPoly(self.ring, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return RingPoly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return RingPoly(self.ring, [c * other for c in self.coeffs])
        self._check(other)
        if self.is_zero or other.is_zero:
            return RingPoly.zero(self.ring)
        out = [self.ring.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return RingPoly(self.ring, out)

    def __divmod__(self, other):
        self._check(other)
        if not other.is_monic:
            if other.coeffs and other.coeffs[-1].is_unit:
                inv = other.coeffs[-1].inverse()
                q, r = divmod(self, other * inv)
                return q * inv, r
            raise NotMonicError(f"divisor {other} is not monic (nor unit-led)")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        q = [self.ring.zero] * max(len(rem) - db, 0)
        for i in range(len(rem) - db - 1, -1, -1):
            c = rem[i + db]
            if c.is_zero:
                continue
            q[i] = c
            for j, b in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - c * b
        return RingPoly(self.ring, q), RingPoly(self.ring, rem[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def shift(self, t: int):
        """Multiplication by x^t."""
        if self.is_zero:
            return self
        return RingPoly(self.ring, (self.ring.zero,) * t + self.coeffs)

    def evaluate(self, point) -> RingElement:
        point = self.ring.elem(point)
        acc = self.ring.zero
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    # -- precision and residue maps -------------------------------------------

    def residue(self):
        """Coefficientwise image in F_p as an integer tuple."""
        return _fp_trim([c.digits[0] for c in self.coeffs])

    def project(self, i: int) -> "RingPoly":
        return RingPoly(self.ring.with_precision(i), [c.project(i) for c in self.coeffs])

    def lift(self, j: int) -> "RingPoly":
        return RingPoly(self.ring.with_precision(j), [c.lift(j) for c in self.coeffs])

    def to_json(self) -> list:
        return [list(c.digits) for c in self.coeffs]

    @staticmethod
    def from_json(ring: ChainRing, data) -> "RingPoly":
        return RingPoly(ring, [ring.from_digits(c) for c in data])


def poly_arith(f: RingPoly, g: RingPoly, op: str):
    """Spec-facing dispatcher over {add, mul, divmod-by-monic}."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "divmod-by-monic":
        return divmod(f, g)
    raise ValueError(f"unknown op {op!r}")


def _from_fp(ring: ChainRing, fp_coeffs) -> RingPoly:
    """Lift an F_p coefficient tuple into ring (digits padded with zeros)."""
    return RingPoly.from_int_coeffs(ring, fp_coeffs)


def binomial_xn_minus(ring: ChainRing, n: int, lam) -> RingPoly:
    lam = ring.elem(lam)
    coeffs = [-lam] + [ring.zero] * (n - 1) + [ring.one]
    return RingPoly(ring, coeffs)


def reduce_mod_xn_lambda(f: RingPoly, n: int, lam) -> RingPoly:
    """Reduce modulo x^n - lambda by folding x^(n+t) onto lambda * x^t."""
    lam = f.ring.elem(lam)
    coeffs = list(f.coeffs)
    while len(coeffs) > n:
        c = coeffs.pop()
        t = len(coeffs) - n
        coeffs[t] = coeffs[t] + c * lam
    return RingPoly(f.ring, coeffs)


# ---------------------------------------------------------------------------
# Residue factorization (public wrapper)
# ---------------------------------------------------------------------------

def factor_over_residue(f: RingPoly, rng=None):
    """Factor a polynomial over a residue field F_p (a ring with e = 1).

    Returns (leading_unit, [(RingPoly irreducible monic, multiplicity)]),
    sorted by (degree, coefficient tuple) for run-to-run determinism.
    """
    ring = f.ring
    if ring.e != 1:
        raise ValueError("factor_over_residue expects a residue-field polynomial")
    if f.is_zero:
        raise ZeroDivisionError("cannot factor the zero polynomial")
    lead, factors = _fp_factor(f.residue(), ring.p, rng)
    return ring.elem(lead), [(_from_fp(ring, g), m) for g, m in factors]


def is_irreducible_over_residue(f: RingPoly) -> bool:
    if f.ring.e != 1:
        raise ValueError("irreducibility test expects a residue-field polynomial")
    return _fp_is_irreducible(f.residue(), f.ring.p)


# ---------------------------------------------------------------------------
# Hensel machinery
# ---------------------------------------------------------------------------

def hensel_lift(f: RingPoly, residue_factors) -> list:
    """Lift a pairwise-coprime factorization of the residue image of f.

    f must be monic over R_e; the residue factors g_1, ..., g_r must be
    monic, non-constant, pairwise coprime over F_p with product equal to
    the residue image of f (this forces the image to be squarefree when
    the g_i are irreducible).  Returns monic f_1, ..., f_r over R_e with
    f = f_1 * ... * f_r exactly and residue(f_j) = g_j.
    """
    ring = f.ring
    p, e = ring.p, ring.e
    if not f.is_monic:
        raise NotMonicError("Hensel lifting requires a monic polynomial")
    gs = []
    for g in residue_factors:
        gt = g.residue() if isinstance(g, RingPoly) else _fp_trim([int(c) % p for c in g])
        if len(gt) <= 1:
            raise ValueError("residue factors must be non-constant")
        if gt[-1] != 1:
            raise NotMonicError("residue factors must be monic")
        gs.append(gt)
    for i in range(len(gs)):
        for j in range(i + 1, len(gs)):
            if _fp_gcd(gs[i], gs[j], p) != (1,):
                raise NotCoprimeError("residue factors are not pairwise coprime")
    prod = (1,)
    for g in gs:
        prod = _fp_mul(prod, g, p)
    if prod != f.residue():
        raise VerificationError("residue factors do not multiply to the image of f")

    lifts = [_from_fp(ring, g) for g in gs]
    if len(gs) == 1:
        return [f]
    # cofactor inverses modulo each g_i, over F_p
    inv_cof = []
    for i, g in enumerate(gs):
        cof = (1,)
        for j, h in enumerate(gs):
            if j != i:
                cof = _fp_divmod(_fp_mul(cof, h, p), g, p)[1]
        gg, u, _ = _fp_ext_gcd(cof, g, p)
        if gg != (1,):
            raise NotCoprimeError("internal: cofactor not invertible")
        inv_cof.append(u)

    for l in range(1, e):
        prod_l = RingPoly.one(ring)
        for fl in lifts:
            prod_l = prod_l * fl
        err = f - prod_l
        if err.is_zero:
            break
        if min(c.valuation for c in err.coeffs if not c.is_zero) < l:
            raise VerificationError("Hensel step lost a gamma digit")
        delta = _fp_trim([c.shift_down(l).digits[0] for c in err.coeffs])
        for i, g in enumerate(gs):
            di = _fp_divmod(_fp_mul(delta, inv_cof[i], p), g, p)[1]
            corr = _from_fp(ring, di) * ring.gamma_power(l)
            lifts[i] = lifts[i] + corr
    prod_e = RingPoly.one(ring)
    for fl in lifts:
        prod_e = prod_e * fl
    if prod_e != f:
        raise VerificationError("Hensel lifting failed to reconstruct f exactly")
    return lifts


def coprimality_witness(f: RingPoly, g: RingPoly):
    """Bezout pair (u, v) with u*f + v*g = 1 over the chain ring.

    Computed over F_p and lifted digit by digit, mirroring the definition
    of coprimality <f> + <g> = R[x].
    """
    ring = f.ring
    p, e = ring.p, ring.e
    fr, gr = f.residue(), g.residue()
    gg, u0, v0 = _fp_ext_gcd(fr, gr, p)
    if gg != (1,):
        raise NotCoprimeError(f"{f} and {g} are not coprime modulo gamma")
    u, v = _from_fp(ring, u0), _from_fp(ring, v0)
    one = RingPoly.one(ring)
    for l in range(1, e):
        defect = one - (u * f + v * g)
        if defect.is_zero:
            break
        if min(c.valuation for c in defect.coeffs if not c.is_zero) < l:
            raise VerificationError("Bezout lift lost a gamma digit")
        delta = _fp_trim([c.shift_down(l).digits[0] for c in defect.coeffs])
        if len(gr) > 1:
            a = _fp_divmod(_fp_mul(u0, delta, p), gr, p)[1]
            b_num = _fp_sub(delta, _fp_mul(a, fr, p), p)
            b, rem = _fp_divmod(b_num, gr, p)
            if rem:
                raise VerificationError("Bezout correction was not exact")
        else:
            a = ()
            b = _fp_mul(delta, (pow(gr[0], -1, p),), p)
        u = u + _from_fp(ring, a) * ring.gamma_power(l)
        v = v + _from_fp(ring, b) * ring.gamma_power(l)
    if u * f + v * g != one:
        raise VerificationError("Bezout witness failed exact verification")
    return u, v


class FactorSet:
    """Certified factorization of x^n - lambda into monic basic irreducibles.

    Invariants checked at construction: the factors multiply back to
    x^n - lambda exactly, every residue image is irreducible, and each
    factor pair carries a verified Bezout witness.
    """

    def __init__(self, ring: ChainRing, n: int, lam: RingElement, factors):
        self.ring = ring
        self.n = n
        self.lam = lam
        self.modulus = binomial_xn_minus(ring, n, lam)
        self.factors = tuple(
            sorted(factors, key=lambda f: (len(f.coeffs), tuple(c.digits for c in f.coeffs)))
        )
        self._witnesses = {}
        self._verify()

    @property
    def b(self) -> int:
        return len(self.factors)

    def _verify(self):
        prod = RingPoly.one(self.ring)
        for f in self.factors:
            if not f.is_monic:
                raise VerificationError(f"factor {f} is not monic")
            prod = prod * f
        if prod != self.modulus:
            raise VerificationError("factor product does not reconstruct x^n - lambda")
        for g in self.factors:
            if not _fp_is_irreducible(g.residue(), self.ring.p):
                raise VerificationError(f"residue image of {g} is not irreducible")
        for i in range(self.b):
            for j in range(i + 1, self.b):
                self._witnesses[(i, j)] = coprimality_witness(self.factors[i], self.factors[j])

    def witness(self, i: int, j: int):
        if i > j:
            i, j = j, i
        return self._witnesses[(i, j)]

    def cofactor(self, index: int) -> RingPoly:
        out = RingPoly.one(self.ring)
        for j, f in enumerate(self.factors):
            if j != index:
                out = out * f
        return out

    def index_of_residue(self, residue_tuple) -> int:
        for i, f in enumerate(self.factors):
            if f.residue() == residue_tuple:
                return i
        raise NotDivisorError("no factor with the requested residue image")

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "n": self.n,
            "lambda": list(self.lam.digits),
            "factors": [f.to_json() for f in self.factors],
        }


def factor_xn_minus_lambda(n: int, lam, ring: ChainRing) -> FactorSet:
    """Factor x^n - lambda over R_e into monic basic irreducibles.

    Requires gcd(n, p) = 1 (so the residue image is squarefree) and lambda
    a unit.  The number of factors equals the number of irreducible
    divisors of the residue image over F_p.
    """
    lam = ring.elem(lam)
    if n < 1:
        raise ValueError("length n must be >= 1")
    if n % ring.p == 0:
        raise GcdViolationError(f"gcd(n, p) = gcd({n}, {ring.p}) != 1")
    if not lam.is_unit:
        raise NonUnitError("lambda must be a unit")
    modulus = binomial_xn_minus(ring, n, lam)
    _, residue_factors = _fp_factor(modulus.residue(), ring.p)
    if any(m != 1 for _, m in residue_factors):
        raise VerificationError("residue of x^n - lambda unexpectedly not squarefree")
    lifted = hensel_lift(modulus, [_from_fp(ring.residue_ring(), g) for g, _ in residue_factors])
    return FactorSet(ring, n, lam, lifted)


def lift_irreducible(h1: RingPoly, n: int, lam, ring: ChainRing) -> RingPoly:
    """The unique monic basic irreducible over R_e projecting onto h1.

    h1 must be a monic irreducible divisor of x^n - lambda_1 over F_p;
    uniqueness is realized by matching against the certified factor set.
    """
    lam = ring.elem(lam)
    if isinstance(h1, RingPoly) and h1.ring.p != ring.p:
        raise NotDivisorError(f"h1 lives over F_{h1.ring.p}, target residue field is F_{ring.p}")
    hr = h1.residue() if isinstance(h1, RingPoly) else _fp_trim([int(c) for c in h1])
    p = ring.p
    if not _fp_is_irreducible(hr, p):
        raise NotDivisorError("h1 is not irreducible over the residue field")
    fs = factor_xn_minus_lambda(n, lam, ring)
    modr = fs.modulus.residue()
    if _fp_divmod(modr, hr, p)[1]:
        raise NotDivisorError("h1 does not divide x^n - lambda over the residue field")
    return fs.factors[fs.index_of_residue(hr)]


# ---------------------------------------------------------------------------
# Idempotents
# ---------------------------------------------------------------------------

def idempotent_from_factor(pi: RingPoly, n: int, lam, ring: ChainRing = None) -> RingPoly:
    """Idempotent e(x) with <pi, gamma> = <e, gamma> in R[x]/(x^n - lambda).

    Starts from the residue idempotent of <pi mod gamma> and fixes one
    gamma digit per step (e-1 steps in total); the correction uses
    theta = h for p = 2 and theta = h * (1 - 2e) otherwise, which inverts
    1 - 2e modulo gamma.  The result squares to itself exactly and is
    checked against pi by divisor comparison modulo gamma.
    """
    ring = pi.ring if ring is None else ring
    lam = ring.elem(lam)
    p, e = ring.p, ring.e
    modulus = binomial_xn_minus(ring, n, lam)
    if not pi.is_monic or not (modulus % pi).is_zero:
        raise NotDivisorError("pi does not divide x^n - lambda")
    if pi == modulus:
        return RingPoly.zero(ring)

    fr = modulus.residue()
    pr = pi.residue()
    comp = _fp_divmod(fr, pr, p)[0]
    g, u, _ = _fp_ext_gcd(pr, comp, p)
    if g != (1,):
        raise NotCoprimeError("factor and cofactor are not coprime")
    e1 = _fp_divmod(_fp_mul(u, pr, p), fr, p)[1]
    E = _from_fp(ring, e1)
    for l in range(1, e):
        defect = reduce_mod_xn_lambda(E * E - E, n, lam)
        if defect.is_zero:
            continue
        if min(c.valuation for c in defect.coeffs if not c.is_zero) < l:
            raise VerificationError("idempotent iteration lost a gamma digit")
        h = _fp_trim([c.shift_down(l).digits[0] for c in defect.coeffs])
        if p == 2:
            theta = h
        else:
            one_minus_2e = _fp_sub((1,), _fp_mul((2,), e1, p), p)
            theta = _fp_divmod(_fp_mul(h, one_minus_2e, p), fr, p)[1]
        E = E + _from_fp(ring, theta) * ring.gamma_power(l)
    if not reduce_mod_xn_lambda(E * E - E, n, lam).is_zero:
        raise VerificationError("lifted element is not idempotent")
    # mutual membership modulo gamma: <e mod gamma> = <pi mod gamma>
    er = E.residue()
    if _fp_gcd(er, fr, p) != _fp_monic(pr, p) and er:
        raise VerificationError("idempotent does not generate the factor modulo gamma")
    return E


# ---------------------------------------------------------------------------
# Cyclotomic coset counts
# ---------------------------------------------------------------------------

def cyclotomic_count(n: int, lam: int, p: int) -> int:
    """Number of irreducible divisors of x^n - lam over F_p for lam = +-1.

    Counted through p-cyclotomic cosets: on Z_n for lam = 1 (and for
    lam = -1 when p = 2, where the two coincide), and on the odd residues
    modulo 2n for lam = -1 with p odd.
    """
    if lam not in (1, -1):
        raise ValueError("coset count is defined for lambda in {+1, -1}")
    if n % p == 0:
        raise GcdViolationError(f"gcd(n, p) = gcd({n}, {p}) != 1")
    if lam == 1 or p == 2:
        universe = range(n)
        mod = n
    else:
        universe = range(1, 2 * n, 2)
        mod = 2 * n
    seen = set()
    count = 0
    for x in universe:
        if x in seen:
            continue
        count += 1
        y = x
        while y not in seen:
            seen.add(y)
            y = y * p % mod
    return count


# ---------------------------------------------------------------------------
# Regular division against a divisor of x^n - lambda
# ---------------------------------------------------------------------------

def regular_divide(g: RingPoly, f: RingPoly, n: int, lam):
    """Write g = ((x^n - lambda)/f) * p~ + q~ with deg q~ <= n - deg f - 1.

    f must be a monic divisor of x^n - lambda with gcd(n, p) = 1; the
    identity is exact and implies f*g = f*q~ in R[x]/(x^n - lambda).
    """
    ring = g.ring
    lam = ring.elem(lam)
    if n % ring.p == 0:
        raise GcdViolationError(f"gcd(n, p) = gcd({n}, {ring.p}) != 1")
    modulus = binomial_xn_minus(ring, n, lam)
    if not f.is_monic:
        raise NotMonicError("divisor must be monic")
    cof, rem = divmod(modulus, f)
    if not rem.is_zero:
        raise NotDivisorError("f does not divide x^n - lambda")
    return divmod(g, cof)
