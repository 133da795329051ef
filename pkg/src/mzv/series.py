"""Truncated non-commutative formal power series in A and B.

All values are immutable after construction and every operation is a pure
function, so series can be shared freely.  Arithmetic truncates at the
minimum truncation weight of the operands and is weight-exact below it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .rings import Ring, RingMismatchError
from .shufflealg import shuffle_many
from .words import EMPTY, Word, all_words, lyndon_multiplicity_factorization, lyndon_words, words_up_to

DEFAULT_TRUNCATION = 5
# hard cap; reassign to go higher (word counts double per weight)
MAX_TRUNCATION = 16


class NCSeries:
    __slots__ = ("ring", "truncation", "coeffs")

    def __init__(self, ring: Ring, truncation: int, coeffs: dict[Word, object] | None = None):
        if truncation < 0:
            raise ValueError("truncation weight must be nonnegative")
        if truncation > MAX_TRUNCATION:
            raise ValueError(f"truncation weight {truncation} exceeds the cap {MAX_TRUNCATION}")
        clean = {}
        for w, c in (coeffs or {}).items():
            if w.weight > truncation:
                raise ValueError(f"word {w} exceeds truncation weight {truncation}")
            if not ring.is_zero(c):
                clean[w] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "truncation", truncation)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NCSeries is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(ring: Ring, truncation: int = DEFAULT_TRUNCATION) -> "NCSeries":
        return NCSeries(ring, truncation, {})

    @staticmethod
    def one(ring: Ring, truncation: int = DEFAULT_TRUNCATION) -> "NCSeries":
        return NCSeries(ring, truncation, {EMPTY: ring.one})

    @staticmethod
    def letter(ring: Ring, name: str, truncation: int = DEFAULT_TRUNCATION, coeff=None) -> "NCSeries":
        return NCSeries(ring, truncation, {Word(name): ring.one if coeff is None else coeff})

    # -- access ---------------------------------------------------------

    def __getitem__(self, word) -> object:
        if isinstance(word, str):
            word = Word(word)
        if word.weight > self.truncation:
            raise KeyError(f"word {word} is beyond the truncation weight {self.truncation}")
        return self.coeffs.get(word, self.ring.zero)

    def words(self):
        return sorted(self.coeffs)

    def constant_term(self):
        return self[EMPTY]

    def weight_part(self, n: int) -> dict[Word, object]:
        return {w: c for w, c in self.coeffs.items() if w.weight == n}

    def max_weight_stored(self) -> int:
        return max((w.weight for w in self.coeffs), default=0)

    # -- ring plumbing ----------------------------------------------------

    def _join(self, other: "NCSeries") -> int:
        if not isinstance(other, NCSeries):
            raise TypeError("expected an NCSeries")
        if not self.ring.compatible(other.ring):
            raise RingMismatchError(f"incompatible rings {self.ring} and {other.ring}")
        return min(self.truncation, other.truncation)

    def _from(self, truncation: int, coeffs: dict[Word, object]) -> "NCSeries":
        return NCSeries(self.ring, truncation, coeffs)

    # -- linear structure ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCSeries(self.ring, self.truncation, {EMPTY: self.ring.from_fraction(other)})
        n = self._join(other)
        out = {w: c for w, c in self.coeffs.items() if w.weight <= n}
        for w, c in other.coeffs.items():
            if w.weight <= n:
                out[w] = out[w] + c if w in out else c
        return self._from(n, out)

    __radd__ = __add__

    def __neg__(self):
        return self._from(self.truncation, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCSeries(self.ring, self.truncation, {EMPTY: self.ring.from_fraction(other)})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCSeries":
        """Multiply every coefficient by a ring element or rational."""
        if isinstance(c, (int, Fraction)):
            c = self.ring.from_fraction(c)
        return self._from(self.truncation, {w: val * c for w, val in self.coeffs.items()})

    def truncate(self, n: int) -> "NCSeries":
        n = min(n, self.truncation)
        return self._from(n, {w: c for w, c in self.coeffs.items() if w.weight <= n})

    # -- multiplication -----------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        n = self._join(other)
        out: dict[Word, object] = {}
        for u, cu in self.coeffs.items():
            if u.weight > n:
                continue
            for v, cv in other.coeffs.items():
                if u.weight + v.weight > n:
                    continue
                w = u + v
                add = cu * cv
                out[w] = out[w] + add if w in out else add
        return self._from(n, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def invert(self) -> "NCSeries":
        """Two-sided inverse by weight recursion; the constant term must be a unit."""
        c0 = self.constant_term()
        if not self.ring.is_unit(c0):
            raise ValueError("series inverse needs a unit constant term")
        inv0 = self.ring.invert(c0)
        n = self.truncation
        out: dict[Word, object] = {EMPTY: inv0}
        by_weight = [self.weight_part(k) for k in range(n + 1)]
        for weight in range(1, n + 1):
            for w in all_words(weight):
                acc = None
                for k in range(1, weight + 1):
                    for u, cu in by_weight[k].items():
                        if w.letters.startswith(u.letters):
                            v = Word(w.letters[len(u.letters):])
                            g = out.get(v)
                            if g is not None:
                                term = cu * g
                                acc = term if acc is None else acc + term
                if acc is not None:
                    out[w] = -(inv0 * acc)
        return self._from(n, out)

    def substitute(self, img_a: "NCSeries", img_b: "NCSeries") -> "NCSeries":
        """The ring homomorphism A -> img_a, B -> img_b applied to the series.

        Both images must have zero constant term so that the substitution
        is weight-nondecreasing and truncation stays exact.
        """
        n = min(self.truncation, img_a.truncation, img_b.truncation)
        self._join(img_a)
        self._join(img_b)
        for img in (img_a, img_b):
            if not self.ring.is_zero(img.constant_term()):
                raise ValueError("substitution images must have zero constant term")
        images = {"A": img_a.truncate(n), "B": img_b.truncate(n)}
        memo: dict[str, NCSeries] = {"": NCSeries.one(self.ring, n)}

        def image(word: Word) -> NCSeries:
            s = word.letters
            if s not in memo:
                memo[s] = image(Word(s[:-1])) * images[s[-1]]
            return memo[s]

        acc = NCSeries.zero(self.ring, n)
        for w, c in self.coeffs.items():
            if w.weight > n:
                continue
            acc = acc + image(w).scale(c)
        return acc

    # -- exp / log ------------------------------------------------------------

    def exp(self) -> "NCSeries":
        if not self.ring.has_rationals:
            raise ValueError("exp needs rational scalars in the coefficient ring")
        if not self.ring.is_zero(self.constant_term()):
            raise ValueError("exp is defined for series with zero constant term")
        acc = NCSeries.one(self.ring, self.truncation)
        term = NCSeries.one(self.ring, self.truncation)
        for k in range(1, self.truncation + 1):
            term = (term * self).scale(Fraction(1, k))
            if not term.coeffs:
                break
            acc = acc + term
        return acc

    def log(self) -> "NCSeries":
        if not self.ring.has_rationals:
            raise ValueError("log needs rational scalars in the coefficient ring")
        if not self.ring.eq(self.constant_term(), self.ring.one):
            raise ValueError("log is defined for series with constant term 1")
        x = self - NCSeries.one(self.ring, self.truncation)
        acc = NCSeries.zero(self.ring, self.truncation)
        power = NCSeries.one(self.ring, self.truncation)
        for k in range(1, self.truncation + 1):
            power = power * x
            if not power.coeffs:
                break
            acc = acc + power.scale(Fraction((-1) ** (k + 1), k))
        return acc

    # -- comparison and display -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, NCSeries):
            return NotImplemented
        if not self.ring.compatible(other.ring) or self.truncation != other.truncation:
            return False
        for w in set(self.coeffs) | set(other.coeffs):
            if not self.ring.eq(self[w], other[w]):
                return False
        return True

    def __hash__(self):
        raise TypeError("NCSeries is unhashable")

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.coeffs.values())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = [f"({self.ring.coeff_str(c)})*{w}" if w.weight else f"({self.ring.coeff_str(c)})"
                 for w, c in sorted(self.coeffs.items())]
        return " + ".join(parts)

    def __repr__(self):
        return f"NCSeries(N={self.truncation}, {self})"


class TensorSeries:
    """A truncated element of the completed tensor square, used by the coproduct."""

    __slots__ = ("ring", "truncation", "coeffs")

    def __init__(self, ring: Ring, truncation: int, coeffs: dict[tuple[Word, Word], object] | None = None):
        clean = {}
        for (u, v), c in (coeffs or {}).items():
            if u.weight + v.weight > truncation:
                raise ValueError("tensor term exceeds the truncation weight")
            if not ring.is_zero(c):
                clean[(u, v)] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "truncation", truncation)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TensorSeries is immutable")

    def __getitem__(self, pair):
        u, v = pair
        if isinstance(u, str):
            u = Word(u)
        if isinstance(v, str):
            v = Word(v)
        return self.coeffs.get((u, v), self.ring.zero)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] - c if k in out else -c
        return TensorSeries(self.ring, min(self.truncation, other.truncation),
                            {k: v for k, v in out.items() if k[0].weight + k[1].weight <= min(self.truncation, other.truncation)})

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.coeffs.values())

    def __eq__(self, other):
        return isinstance(other, TensorSeries) and (self - other).is_zero()

    def __hash__(self):
        raise TypeError("TensorSeries is unhashable")


@lru_cache(maxsize=None)
def _word_splits(letters: str) -> tuple[tuple[str, str, int], ...]:
    """All (left, right, multiplicity) splittings of a word under the coproduct
    that makes both letters primitive."""
    n = len(letters)
    acc: dict[tuple[str, str], int] = {}
    for mask in range(2**n):
        left = "".join(letters[i] for i in range(n) if mask >> i & 1)
        right = "".join(letters[i] for i in range(n) if not mask >> i & 1)
        acc[(left, right)] = acc.get((left, right), 0) + 1
    return tuple((l, r, m) for (l, r), m in acc.items())


def coproduct(f: NCSeries) -> TensorSeries:
    """The coproduct with A and B primitive, truncated at f's weight."""
    out: dict[tuple[Word, Word], object] = {}
    for w, c in f.coeffs.items():
        for left, right, mult in _word_splits(w.letters):
            key = (Word(left), Word(right))
            add = c * mult
            out[key] = out[key] + add if key in out else add
    return TensorSeries(f.ring, f.truncation, out)


def tensor_square(f: NCSeries) -> TensorSeries:
    out: dict[tuple[Word, Word], object] = {}
    for u, cu in f.coeffs.items():
        for v, cv in f.coeffs.items():
            if u.weight + v.weight <= f.truncation:
                out[(u, v)] = cu * cv
    return TensorSeries(f.ring, f.truncation, out)


def is_group_like(f: NCSeries, max_weight: int | None = None) -> bool:
    """True iff f has constant term 1 and its coproduct equals f tensor f
    coefficientwise up to the truncation (or `max_weight`)."""
    g = f.truncate(max_weight) if max_weight is not None else f
    if not g.ring.eq(g.constant_term(), g.ring.one):
        return False
    return (coproduct(g) - tensor_square(g)).is_zero()


def character_series(assignments: dict[Word, object], truncation: int, ring: Ring) -> NCSeries:
    """The unique group-like series whose shuffle character takes the given
    values on Lyndon words (missing words default to 0).

    The shuffle algebra is a polynomial ring on Lyndon words: for a word w
    with Lyndon factorization l1^m1 ... lk^mk the shuffle product of the
    factors equals (m1! ... mk!) w plus lexicographically smaller words of
    the same weight, so the coefficients are solved per weight in
    ascending lexicographic order.
    """
    if not ring.has_rationals:
        raise ValueError("character extension needs rational scalars in the ring")
    for w in assignments:
        if not w.is_lyndon():
            raise ValueError(f"assignment on non-Lyndon word {w}")
    values: dict[Word, object] = {EMPTY: ring.one}
    for weight in range(1, truncation + 1):
        for w in all_words(weight):
            if w.is_lyndon():
                values[w] = assignments.get(w, ring.zero)
                continue
            factors = lyndon_multiplicity_factorization(w)
            product = None
            lead_coeff = 1
            flat: list[Word] = []
            for l, m in factors:
                lead_coeff *= _factorial(m)
                phi = values[l]
                for _ in range(m):
                    product = phi if product is None else product * phi
                    flat.append(l)
            expansion = shuffle_many(flat)
            acc = product
            for u, mult in expansion.items():
                if u == w:
                    if mult != lead_coeff:
                        raise AssertionError("unexpected leading multiplicity in Lyndon expansion")
                    continue
                if u > w:
                    raise AssertionError("Lyndon expansion produced a lexicographically larger word")
                acc = acc - values[u] * mult
            values[w] = acc * ring.from_fraction(Fraction(1, lead_coeff))
    return NCSeries(ring, truncation, values)


def series_character(f: NCSeries) -> dict[Word, object]:
    """Restriction of f's coefficients to Lyndon words (the free coordinates)."""
    return {w: f[w] for w in lyndon_words(f.truncation)}


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def random_series(ring: Ring, truncation: int, rng, constant=None, density: float = 0.7) -> NCSeries:
    """A random series for property tests; coefficients are small rationals."""
    coeffs: dict[Word, object] = {}
    if constant is not None:
        coeffs[EMPTY] = ring.from_fraction(constant)
    elif rng.random() < 0.8:
        coeffs[EMPTY] = ring.from_fraction(Fraction(rng.randint(-3, 3)))
    for w in words_up_to(truncation):
        if w.weight == 0:
            continue
        if rng.random() < density:
            coeffs[w] = ring.from_fraction(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
    return NCSeries(ring, truncation, coeffs)
