"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) reduced modulo
the N-th cyclotomic polynomial, as integer numerators over one positive common
denominator.  Two equal field elements therefore have identical storage.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from .errors import ConductorMismatch

__all__ = [
    "Cyc",
    "cyclotomic_polynomial",
    "euler_phi",
    "as_fraction",
    "parse_rational",
]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    # row j holds the power-basis coordinates of z^j, 0 <= j < n
    phi = euler_phi(n)
    cyc = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z and reduce with z^phi = -sum cyc[i] z^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * cyc[i]
    return tuple(rows)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Cyc):
        return x.to_fraction()
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        a, b = text.split("/", 1)
        return Fraction(int(a), int(b))
    return Fraction(int(text))


class Cyc:
    """An element of Q(zeta_N) in canonical power-basis form."""

    __slots__ = ("N", "nums", "den", "_hash")

    def __init__(self, N: int, value=0):
        if isinstance(value, Cyc):
            if value.N != N:
                raise ConductorMismatch(f"{value.N} != {N}")
            self.N, self.nums, self.den = value.N, value.nums, value.den
        else:
            q = as_fraction(value)
            phi = euler_phi(N)
            self.N = N
            self.nums = (q.numerator,) + (0,) * (phi - 1)
            self.den = q.denominator
        self._hash = None

    @classmethod
    def _raw(cls, N: int, nums, den: int) -> "Cyc":
        g = den
        for a in nums:
            if a:
                g = gcd(g, a)
                if g == 1:
                    break
        if den < 0:
            g = -g
        obj = object.__new__(cls)
        obj.N = N
        if g != 1:
            obj.nums = tuple(a // g for a in nums)
            obj.den = den // g
        else:
            obj.nums = tuple(nums)
            obj.den = den
        if not any(obj.nums):
            obj.den = 1
        obj._hash = None
        return obj

    @classmethod
    def zeta(cls, N: int, j: int = 1) -> "Cyc":
        return cls._raw(N, _reduction_table(N)[j % N], 1)

    @classmethod
    def root_of_unity(cls, N: int, order: int, j: int = 1) -> "Cyc":
        """zeta_order^j expressed inside Q(zeta_N)."""
        if N % order == 0:
            return cls.zeta(N, (N // order) * j)
        if N % 2 == 1 and (2 * N) % order == 0:
            # zeta_2N = -zeta_N^((N+1)/2)
            e = ((2 * N) // order) * j % (2 * N)
            base = cls.zeta(N, ((N + 1) // 2) * e)
            return -base if e % 2 else base
        raise ConductorMismatch(f"zeta_{order} is not in Q(zeta_{N})")

    @classmethod
    def from_coeffs(cls, N: int, coeffs) -> "Cyc":
        """Build from a map (or sequence) j -> rational coefficient of zeta_N^j, any j."""
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
        table = _reduction_table(N)
        phi = euler_phi(N)
        fr = [(j, as_fraction(c)) for j, c in items]
        den = 1
        for _, c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        acc = [0] * phi
        for j, c in fr:
            if c:
                a = c.numerator * (den // c.denominator)
                for i, r in enumerate(table[j % N]):
                    if r:
                        acc[i] += a * r
        return cls._raw(N, acc, den)

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> "Cyc | None":
        if isinstance(other, Cyc):
            if other.N != self.N:
                raise ConductorMismatch(f"Q(zeta_{self.N}) vs Q(zeta_{other.N})")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc(self.N, other)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Cyc._raw(self.N, [a + b for a, b in zip(self.nums, o.nums)], self.den)
        d1, d2 = self.den, o.den
        return Cyc._raw(self.N, [a * d2 + b * d1 for a, b in zip(self.nums, o.nums)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(Cyc)
        obj.N, obj.nums, obj.den, obj._hash = self.N, tuple(-a for a in self.nums), self.den, None
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.nums, o.nums
        phi = len(a)
        if phi == 1:
            return Cyc._raw(self.N, (a[0] * b[0],), self.den * o.den)
        if not any(b[1:]):
            c = b[0]
            return Cyc._raw(self.N, [x * c for x in a], self.den * o.den)
        if not any(a[1:]):
            c = a[0]
            return Cyc._raw(self.N, [x * c for x in b], self.den * o.den)
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        table = _reduction_table(self.N)
        N = self.N
        for j in range(phi, 2 * phi - 1):
            c = conv[j]
            if c:
                for i, r in enumerate(table[j % N]):
                    if r:
                        out[i] += c * r
        return Cyc._raw(self.N, out, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if not any(self.nums):
            raise ZeroDivisionError("division by zero in Q(zeta_%d)" % self.N)
        phi = len(self.nums)
        if phi == 1:
            return Cyc._raw(self.N, (self.den,), self.nums[0])
        # solve (multiplication-by-self matrix) x = e_0 over Q
        cols = []
        for j in range(phi):
            prod = self * Cyc.zeta(self.N, j)
            cols.append([Fraction(v, prod.den) for v in prod.nums])
        rows = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            p = next(r for r in range(c, phi) if rows[r][c])
            rows[c], rows[p] = rows[p], rows[c]
            inv = 1 / rows[c][c]
            rows[c] = [v * inv for v in rows[c]]
            for r in range(phi):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[c])]
        return Cyc.from_coeffs(self.N, [rows[i][phi] for i in range(phi)])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.nums) == 1 or not any(o.nums[1:]):
            if not o.nums[0]:
                raise ZeroDivisionError("division by zero in Q(zeta_%d)" % self.N)
            c = o.nums[0]
            return Cyc._raw(self.N, [x * o.den for x in self.nums], self.den * c)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyc(self.N, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- structure --------------------------------------------------------
    def conj(self) -> "Cyc":
        """Complex conjugate: zeta_N -> zeta_N^(N-1)."""
        if len(self.nums) == 1:
            return self
        table = _reduction_table(self.N)
        acc = [0] * len(self.nums)
        for j, a in enumerate(self.nums):
            if a:
                for i, r in enumerate(table[(-j) % self.N]):
                    if r:
                        acc[i] += a * r
        return Cyc._raw(self.N, acc, self.den)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def __bool__(self):
        return any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def coeffs(self) -> dict[int, Fraction]:
        return {j: Fraction(a, self.den) for j, a in enumerate(self.nums) if a}

    def to_complex(self) -> complex:
        """Display-only floating point value under zeta_N = exp(2 pi i / N)."""
        z = cmath.exp(2j * cmath.pi / self.N)
        return sum(a * z**j for j, a in enumerate(self.nums)) / self.den

    def __eq__(self, other):
        if isinstance(other, Cyc):
            return self.N == other.N and self.den == other.den and self.nums == other.nums
        if isinstance(other, (int, Fraction)):
            if any(self.nums[1:]):
                return False
            return Fraction(self.nums[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.nums[1:]):
                self._hash = hash(Fraction(self.nums[0], self.den))
            else:
                self._hash = hash((self.N, self.nums, self.den))
        return self._hash

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        c = []
        for j, a in enumerate(self.nums):
            if a:
                q = Fraction(a, self.den)
                c.append([j, q.numerator, q.denominator])
        return {"N": self.N, "c": c}

    @classmethod
    def from_json(cls, data: dict) -> "Cyc":
        N = int(data["N"])
        if N < 1:
            raise ValueError("conductor must be positive")
        phi = euler_phi(N)
        seen = set()
        coeffs = {}
        for entry in data["c"]:
            j, num, den = (int(v) for v in entry)
            if not 0 <= j < phi:
                raise ValueError(f"exponent {j} outside 0..{phi - 1}")
            if j in seen:
                raise ValueError(f"duplicate exponent {j}")
            if den <= 0 or num == 0 or gcd(num, den) != 1:
                raise ValueError(f"non-canonical coefficient {num}/{den}")
            seen.add(j)
            coeffs[j] = Fraction(num, den)
        return cls.from_coeffs(N, coeffs)

    def __repr__(self):
        return f"Cyc({self.N}, {self})"

    def __str__(self):
        if not any(self.nums):
            return "0"
        parts = []
        for j, a in enumerate(self.nums):
            if not a:
                continue
            q = Fraction(a, self.den)
            if j == 0:
                body = str(abs(q))
            else:
                base = f"z{self.N}" + (f"^{j}" if j > 1 else "")
                body = base if abs(q) == 1 else f"{abs(q)}*{base}"
            sign = "-" if q < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def needs_parens(self) -> bool:
        return sum(1 for a in self.nums if a) > 1
