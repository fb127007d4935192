"""Exact arithmetic in finite chain rings with prime residue field.

Two flavors are supported, both with maximal ideal generated by a single
nilpotent element ``gamma`` of nilpotency index ``e``:

* ``zpe``      -- the integers modulo p^e, with gamma = p;
* ``fpgamma``  -- the truncated polynomial ring F_p[gamma]/(gamma^e).

The two share all gamma-adic combinatorics (digit expansions, valuations,
unit structure) but are genuinely different rings for e > 1: ``zpe`` has
characteristic p^e while ``fpgamma`` has characteristic p.  Every element
is stored as its canonical digit vector (a_0, ..., a_{e-1}) with digits in
[0, p); equality is digitwise.  All values are immutable and every
operation is a pure function, so everything here is safe to share across
threads.

Truncated-precision rings stand in for arbitrary-precision gamma-adic
objects: a gamma-adic value is represented by a representative over a
user-chosen precision N together with its projections ``project(i)`` for
i <= N.
"""

from __future__ import annotations

import functools
from typing import Iterator, Sequence

from .errors import (
    NonUnitError,
    SpecMismatchError,
    ZeroElementError,
)

FLAVOR_ZPE = "zpe"
FLAVOR_FPGAMMA = "fpgamma"

_FLAVOR_ALIASES = {
    "zpe": FLAVOR_ZPE,
    "integer-modular": FLAVOR_ZPE,
    "fpgamma": FLAVOR_FPGAMMA,
    "fpg": FLAVOR_FPGAMMA,
    "series-truncated": FLAVOR_FPGAMMA,
}

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3 * 10^24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def make_ring(p: int, e: int, flavor: str = FLAVOR_ZPE) -> "ChainRing":
    """Validated chain-ring constructor; cached so equal specs are shared."""
    try:
        flavor = _FLAVOR_ALIASES[flavor]
    except KeyError:
        raise ValueError(f"unknown flavor {flavor!r}") from None
    return _cached_ring(p, e, flavor)


@functools.lru_cache(maxsize=None)
def _cached_ring(p: int, e: int, flavor: str) -> "ChainRing":
    return ChainRing(p, e, flavor)


class ChainRing:
    """A finite chain ring R with |R| = p^e and residue field F_p."""

    def __init__(self, p: int, e: int, flavor: str = FLAVOR_ZPE):
        try:
            flavor = _FLAVOR_ALIASES[flavor]
        except KeyError:
            raise ValueError(f"unknown flavor {flavor!r}") from None
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if not isinstance(e, int) or e < 1:
            raise ValueError(f"nilpotency index e = {e} must be >= 1")
        self.p = p
        self.e = e
        self.flavor = flavor
        self.size = p ** e
        self.zero = RingElement(self, (0,) * e)
        self.one = RingElement(self, (1,) + (0,) * (e - 1))
        gamma_digits = [0] * e
        if e >= 2:
            gamma_digits[1] = 1
        self.gamma = RingElement(self, tuple(gamma_digits))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ChainRing)
            and (self.p, self.e, self.flavor) == (other.p, other.e, other.flavor)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.flavor))

    def __repr__(self) -> str:
        if self.flavor == FLAVOR_ZPE:
            return f"Z_{self.p}^{self.e}" if self.e > 1 else f"F_{self.p}"
        return f"F_{self.p}[g]/(g^{self.e})"

    @property
    def characteristic(self) -> int:
        return self.p ** self.e if self.flavor == FLAVOR_ZPE else self.p

    @property
    def is_field(self) -> bool:
        return self.e == 1

    def elem(self, value) -> "RingElement":
        """Coerce an int (image of n*1), digit sequence or element of self."""
        if isinstance(value, RingElement):
            if value.ring != self:
                raise SpecMismatchError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, int):
            if self.flavor == FLAVOR_ZPE:
                return self.from_int_value(value % self.size)
            return RingElement(self, (value % self.p,) + (0,) * (self.e - 1))
        return self.from_digits(value)

    def from_digits(self, digits: Sequence[int]) -> "RingElement":
        digits = tuple(int(d) % self.p for d in digits)
        if len(digits) != self.e:
            raise ValueError(f"expected {self.e} digits, got {len(digits)}")
        return RingElement(self, digits)

    def from_int_value(self, v: int) -> "RingElement":
        """Element whose base-p digit vector is that of v (0 <= v < p^e)."""
        v %= self.size
        digits = []
        for _ in range(self.e):
            digits.append(v % self.p)
            v //= self.p
        return RingElement(self, tuple(digits))

    # from_int_value and from_index coincide: the digit vector determines the
    # element in both flavors, only the arithmetic on top of it differs.
    from_index = from_int_value

    def elements(self) -> Iterator["RingElement"]:
        for i in range(self.size):
            yield self.from_index(i)

    def units(self) -> Iterator["RingElement"]:
        for a in self.elements():
            if a.is_unit:
                yield a

    def residue_ring(self) -> "ChainRing":
        return make_ring(self.p, 1, self.flavor)

    def with_precision(self, e: int) -> "ChainRing":
        return make_ring(self.p, e, self.flavor)

    def gamma_power(self, l: int) -> "RingElement":
        digits = [0] * self.e
        if 0 <= l < self.e:
            digits[l] = 1
        return RingElement(self, tuple(digits))

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "flavor": self.flavor}

    @staticmethod
    def from_json(d: dict) -> "ChainRing":
        return make_ring(int(d["p"]), int(d["e"]), str(d["flavor"]))


class RingElement:
    """Immutable chain-ring element in canonical digit form."""

    __slots__ = ("ring", "digits")

    def __init__(self, ring: ChainRing, digits: tuple):
        self.ring = ring
        self.digits = digits

    # -- representation helpers -------------------------------------------

    @property
    def index(self) -> int:
        """Integer encoding sum(a_l * p^l); for zpe this is the value mod p^e."""
        p, idx = self.ring.p, 0
        for d in reversed(self.digits):
            idx = idx * p + d
        return idx

    def __repr__(self) -> str:
        if self.ring.flavor == FLAVOR_ZPE:
            return str(self.index)
        parts = []
        for l, d in enumerate(self.digits):
            if d == 0:
                continue
            if l == 0:
                parts.append(str(d))
            else:
                g = "g" if l == 1 else f"g^{l}"
                parts.append(g if d == 1 else f"{d}*{g}")
        return "+".join(parts) if parts else "0"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElement)
            and self.ring == other.ring
            and self.digits == other.digits
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.digits))

    def __bool__(self) -> bool:
        return any(self.digits)

    @property
    def is_zero(self) -> bool:
        return not any(self.digits)

    @property
    def is_unit(self) -> bool:
        return self.digits[0] != 0

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "RingElement") -> None:
        if not isinstance(other, RingElement) or other.ring != self.ring:
            raise SpecMismatchError(f"mixing {self.ring} with {getattr(other, 'ring', type(other))}")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        r = self.ring
        if r.flavor == FLAVOR_ZPE:
            return r.from_int_value(self.index + other.index)
        p = r.p
        return RingElement(r, tuple((a + b) % p for a, b in zip(self.digits, other.digits)))

    def __neg__(self) -> "RingElement":
        r = self.ring
        if r.flavor == FLAVOR_ZPE:
            return r.from_int_value(-self.index % r.size)
        p = r.p
        return RingElement(r, tuple((-a) % p for a in self.digits))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        r = self.ring
        if r.flavor == FLAVOR_ZPE:
            return r.from_int_value(self.index * other.index)
        p, e = r.p, r.e
        out = [0] * e
        for i, a in enumerate(self.digits):
            if a == 0:
                continue
            for j in range(e - i):
                b = other.digits[j]
                if b:
                    out[i + j] = (out[i + j] + a * b) % p
        return RingElement(r, tuple(out))

    def inverse(self) -> "RingElement":
        """Multiplicative inverse; defined exactly for units (a_0 != 0)."""
        r = self.ring
        if not self.is_unit:
            raise NonUnitError(f"{self!r} is not a unit in {r}")
        if r.flavor == FLAVOR_ZPE:
            return r.from_int_value(pow(self.index, -1, r.size))
        # digit recurrence: (a*b)_l = 0 for l >= 1 determines b_l one by one
        p, e = r.p, r.e
        inv0 = pow(self.digits[0], -1, p)
        b = [inv0] + [0] * (e - 1)
        for l in range(1, e):
            acc = sum(self.digits[i] * b[l - i] for i in range(1, l + 1)) % p
            b[l] = (-acc * inv0) % p
        return RingElement(r, tuple(b))

    # -- gamma-adic structure ----------------------------------------------

    @property
    def valuation(self) -> int:
        """Least l with digit a_l nonzero; equals e for the zero element."""
        for l, d in enumerate(self.digits):
            if d:
                return l
        return self.ring.e

    def valuation_split(self) -> tuple:
        """Write a = gamma^l * d with d a unit; errors on zero."""
        if self.is_zero:
            raise ZeroElementError("zero element has no valuation split")
        l = self.valuation
        return l, self.shift_down(l)

    def shift_down(self, l: int) -> "RingElement":
        """Exact division by gamma^l of the digit vector (canonical quotient)."""
        e = self.ring.e
        return RingElement(self.ring, self.digits[l:] + (0,) * min(l, e))

    def shift_up(self, l: int) -> "RingElement":
        """Multiplication by gamma^l (digit shift, truncated at e)."""
        e = self.ring.e
        if l >= e:
            return self.ring.zero
        return RingElement(self.ring, (0,) * l + self.digits[: e - l])

    def truncated_below(self, l: int) -> "RingElement":
        """The part sum_{i<l} a_i gamma^i viewed in the same ring."""
        return RingElement(self.ring, self.digits[:l] + (0,) * (self.ring.e - l))

    def project(self, i: int) -> "RingElement":
        """Precision map to R_i (truncate digits); requires i <= e."""
        if i > self.ring.e:
            raise SpecMismatchError(f"projection target {i} exceeds precision {self.ring.e}")
        if i < 1:
            raise ValueError("precision must be >= 1")
        return RingElement(self.ring.with_precision(i), self.digits[:i])

    def lift(self, j: int) -> "RingElement":
        """Section of the precision map to R_j (pad high digits with zeros)."""
        if j < self.ring.e:
            raise SpecMismatchError(f"lift target {j} below precision {self.ring.e}")
        return RingElement(self.ring.with_precision(j), self.digits + (0,) * (j - self.ring.e))

    def to_json(self) -> list:
        return list(self.digits)


def arith(a: RingElement, b, op: str) -> RingElement:
    """Spec-facing dispatcher over {add, mul, neg} (b ignored for neg)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


def expand(a: RingElement) -> tuple:
    """Canonical digit vector (a_0, ..., a_{e-1}) of a."""
    return a.digits


def invert(a: RingElement) -> RingElement:
    return a.inverse()


def valuation_split(a: RingElement) -> tuple:
    return a.valuation_split()


def map_precision(a: RingElement, i: int) -> RingElement:
    return a.project(i)


def lift_elem(a: RingElement, j: int) -> RingElement:
    return a.lift(j)
