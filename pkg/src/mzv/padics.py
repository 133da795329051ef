"""Fixed-precision p-adic numbers with pessimistic precision tracking.

A value is stored as p**val * unit where the whole number is known modulo
p**aprec (absolute precision).  Zero "to precision" is val == aprec with
unit == 0, i.e. O(p**aprec).  Arithmetic propagates the worst-case
precision of the operands; comparison is congruence modulo
p**min(aprec_x, aprec_y).
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_PRECISION = 30


def _int_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicNumber:
    __slots__ = ("p", "aprec", "val", "unit")

    def __init__(self, p: int, val: int, unit: int, aprec: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "aprec", aprec)
        rel = aprec - val
        if rel <= 0:
            object.__setattr__(self, "val", aprec)
            object.__setattr__(self, "unit", 0)
            return
        unit %= p**rel
        if unit != 0:
            shift = _int_valuation(unit, p)
            if shift:
                val += shift
                rel = aprec - val
                unit = (unit // p**shift) % p**rel if rel > 0 else 0
        if unit == 0:
            val = aprec
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "unit", unit)

    def __setattr__(self, name, value):
        raise AttributeError("PadicNumber is immutable")

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(p: int, aprec: int = DEFAULT_PRECISION) -> "PadicNumber":
        return PadicNumber(p, aprec, 0, aprec)

    @staticmethod
    def from_rational(q, p: int, aprec: int = DEFAULT_PRECISION) -> "PadicNumber":
        q = Fraction(q)
        if q == 0:
            return PadicNumber.zero(p, aprec)
        vn = _int_valuation(q.numerator, p) if q.numerator else 0
        vd = _int_valuation(q.denominator, p)
        val = vn - vd
        rel = aprec - val
        if rel <= 0:
            return PadicNumber.zero(p, aprec)
        mod = p**rel
        num = abs(q.numerator) // p**vn
        den = q.denominator // p**vd
        unit = num * pow(den, -1, mod) % mod
        if q < 0:
            unit = (-unit) % mod
        return PadicNumber(p, val, unit, aprec)

    # -- queries -----------------------------------------------------

    def is_zero(self) -> bool:
        """Indistinguishable from zero at this precision."""
        return self.unit == 0

    def valuation(self) -> int:
        if self.is_zero():
            raise ValueError(f"valuation of O({self.p}^{self.aprec}) is not known")
        return self.val

    def lift(self) -> Fraction:
        """A rational representative p**val * unit."""
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "PadicNumber"):
        if self.p != other.p:
            raise ValueError(f"mixed primes {self.p} and {other.p}")

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return PadicNumber.from_rational(other, self.p, self.aprec)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        self._check(o)
        aprec = min(self.aprec, o.aprec)
        val = min(self.val, o.val)
        rel = aprec - val
        if rel <= 0:
            return PadicNumber.zero(self.p, aprec)
        mod = self.p**rel
        s = (self.unit * self.p ** (self.val - val) + o.unit * self.p ** (o.val - val)) % mod
        return PadicNumber(self.p, val, s, aprec)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        rel = self.aprec - self.val
        return PadicNumber(self.p, self.val, (-self.unit) % self.p**rel, self.aprec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        self._check(o)
        # relative precision of a product is the min of the relative precisions
        aprec = min(self.aprec + o.val, o.aprec + self.val)
        if self.is_zero() or o.is_zero():
            return PadicNumber.zero(self.p, aprec)
        val = self.val + o.val
        rel = aprec - val
        if rel <= 0:
            return PadicNumber.zero(self.p, aprec)
        return PadicNumber(self.p, val, (self.unit * o.unit) % self.p**rel, aprec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        self._check(o)
        if o.is_zero():
            raise ZeroDivisionError("division by a p-adic zero (to working precision)")
        aprec = min(self.aprec - o.val, o.aprec - 2 * o.val + self.val)
        if self.is_zero():
            return PadicNumber.zero(self.p, aprec)
        val = self.val - o.val
        rel = aprec - val
        if rel <= 0:
            return PadicNumber.zero(self.p, aprec)
        mod = self.p**rel
        return PadicNumber(self.p, val, self.unit * pow(o.unit, -1, mod) % mod, aprec)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return 1 / self ** (-k)
        out = PadicNumber.from_rational(1, self.p, self.aprec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        self._check(o)
        return (self - o).is_zero()

    def __hash__(self):  # congruence-class equality is not hash-friendly
        raise TypeError("PadicNumber is unhashable")

    # -- display -------------------------------------------------------

    def digits(self, count: int | None = None) -> list[int]:
        """Base-p digits of the unit part, least significant first."""
        rel = self.aprec - self.val
        if count is None:
            count = rel
        u = self.unit
        out = []
        for _ in range(max(0, min(count, rel))):
            out.append(u % self.p)
            u //= self.p
        return out

    def __repr__(self):
        return f"PadicNumber(p={self.p}, {self})"

    def __str__(self):
        if self.is_zero():
            return f"O({self.p}^{self.aprec})"
        parts = []
        for i, d in enumerate(self.digits()):
            if d == 0:
                continue
            e = self.val + i
            if e == 0:
                parts.append(str(d))
            elif e == 1:
                parts.append(f"{d}*{self.p}")
            else:
                parts.append(f"{d}*{self.p}^{e}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.p}^{self.aprec})"


def parse_padic(text: str, p: int, aprec: int) -> PadicNumber:
    """Inverse of str() for serialization round trips."""
    text = text.strip()
    body, _, tail = text.rpartition("+ O(")
    if not tail:
        raise ValueError(f"not a p-adic literal: {text!r}")
    if not body.strip():
        return PadicNumber.zero(p, int(tail.rstrip(")").split("^")[1]) if "^" in tail else 1)
    total = Fraction(0)
    for part in body.split(" + "):
        part = part.strip()
        if not part or part == "0":
            continue
        if "*" in part:
            d, pw = part.split("*")
            base, _, exp = pw.partition("^")
            total += Fraction(int(d)) * Fraction(int(base)) ** int(exp or 1)
        else:
            total += Fraction(int(part))
    return PadicNumber.from_rational(total, p, aprec)


def teichmuller_unit(u: int, p: int, aprec: int) -> int:
    """The Teichmuller representative of u mod p**aprec (u prime to p).

    For p == 2 the torsion is {1, -1}; the representative is chosen so that
    u divided by it is 1 mod 4.
    """
    mod = p**aprec
    if p == 2:
        return 1 if u % 4 == 1 else mod - 1
    x = u % mod
    for _ in range(aprec + 1):
        nxt = pow(x, p, mod)
        if nxt == x:
            break
        x = nxt
    return x


def padic_log(z: PadicNumber, branch=0) -> PadicNumber:
    """Branch-parameterized p-adic logarithm.

    Writes z = p**v * w * u with w the Teichmuller representative and u a
    1-unit (1 mod 4 when p == 2), and returns v*branch + log(u) using the
    alternating series on 1-units.  The branch value only fixes log(p);
    Teichmuller torsion maps to 0.
    """
    if z.is_zero():
        raise ValueError("p-adic logarithm of zero")
    p = z.p
    rel = z.aprec - z.val
    guard = _division_guard(p, rel) + 4
    work = rel + guard
    mod = p**work
    u = z.unit % mod
    w = teichmuller_unit(u, p, work)
    u1 = u * pow(w, -1, mod) % mod
    t = (u1 - 1) % mod
    acc = 0
    tn = 1
    step = 2 if p == 2 else 1  # valuation gained per factor of t
    n = 1
    while n * step <= work:
        tn = tn * t % mod
        if tn == 0:
            break
        e = _int_valuation(n, p) if n % p == 0 else 0
        q = tn // p**e
        term = q * pow(n // p**e, -1, mod) % mod
        acc = (acc + term if n % 2 == 1 else acc - term) % mod
        n += 1
    log_u = PadicNumber(p, 0, acc % p**rel, rel)
    b = branch if isinstance(branch, PadicNumber) else PadicNumber.from_rational(branch, p, z.aprec)
    return b * z.valuation() + log_u


def _division_guard(p: int, aprec: int) -> int:
    """Digits lost to the worst 1/n factor over the summation range."""
    g = 0
    n = 1
    while n <= 2 * (aprec + 8):
        n *= p
        g += 1
    return g
