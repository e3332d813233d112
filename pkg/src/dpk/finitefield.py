"""GF(p^k) arithmetic with explicitly verified irreducible moduli.

Elements are plain ints in [0, q) encoding base-p coefficient vectors,
little endian: x = sum c_i p^i represents sum c_i a^i where a is the
modulus root.  Irreducibility of the modulus is checked exhaustively by
trial division (the toolkit only uses k <= 6 and small p), so a field
object is itself a certificate.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DpkError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- dense little-endian polynomial helpers over GF(p) --


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        a = _poly_trim(a)
        if len(a) - 1 < dm:
            break
        shift = len(a) - 1 - dm
        c = (a[-1] * inv_lead) % p
        for i, coef in enumerate(m):
            a[shift + i] = (a[shift + i] - c * coef) % p
        a = _poly_trim(a)
    return a


def _monic_polys(degree, p):
    """All monic polynomials of the given degree over GF(p), little endian."""

    def rec(i, cur):
        if i == degree:
            yield cur + [1]
            return
        for c in range(p):
            yield from rec(i + 1, cur + [c])

    yield from rec(0, [])


def _is_irreducible(m, p) -> bool:
    """Exhaustive trial division; m monic little endian of degree >= 1."""
    deg = len(m) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(d, p):
            if not _poly_mod(m, f, p):
                return False
    return True


class FiniteField:
    """GF(p^k); element arithmetic plus the coefficient-field protocol."""

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise DpkError(f"{p} is not prime")
        if k < 1:
            raise DpkError("extension degree must be >= 1")
        if k > 6:
            raise DpkError("extension degree > 6 is out of scope")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                modulus = self._smallest_irreducible()
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise DpkError("modulus must be monic of degree k, little endian")
            if not _is_irreducible(list(modulus), p):
                raise DpkError(f"modulus {modulus} is reducible over GF({p})")
            self.modulus = modulus
        self.zero = 0
        self.one = 1
        self.characteristic = p

    def _smallest_irreducible(self):
        for tail in _monic_polys(self.k, self.p):
            if _is_irreducible(tail, self.p):
                return tuple(tail)
        raise DpkError("no irreducible polynomial found")  # unreachable

    # -- encode/decode --

    def coeffs(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(out)

    def element(self, coeffs) -> int:
        x = 0
        for c in reversed(list(coeffs)):
            x = x * self.p + (c % self.p)
        return x

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, fr: Fraction) -> int:
        den = fr.denominator % self.p
        if den == 0:
            raise DpkError(f"denominator of {fr} is not invertible mod {self.p}")
        return (fr.numerator % self.p) * pow(den, self.p - 2, self.p) % self.p

    # -- arithmetic on encoded elements --

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.element([(x + y) % self.p for x, y in zip(ca, cb)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.element([(-c) % self.p for c in self.coeffs(a)])

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        prod = _poly_mul(list(self.coeffs(a)), list(self.coeffs(b)), self.p)
        red = _poly_mod(prod, list(self.modulus), self.p)
        return self.element(red + [0] * (self.k - len(red)))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: int) -> bool:
        return a == 0

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def in_prime_field(self, a: int) -> bool:
        return a < self.p

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        x = a
        n = 1
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def multiplicative_generator(self) -> int:
        for a in self.units():
            if self.multiplicative_order(a) == self.q - 1:
                return a
        raise DpkError("no generator found")  # unreachable for a field

    def label(self):
        if self.k == 1:
            return {"p": self.p, "k": 1}
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, mod={list(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))


class _Rationals:
    """Coefficient-field protocol over exact fractions."""

    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def from_fraction(fr):
        return Fraction(fr)

    @staticmethod
    def label():
        return "QQ"

    def __repr__(self):
        return "QQ"


QQ = _Rationals()
