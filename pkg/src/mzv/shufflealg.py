"""Word-level shuffle algebra, index-level quasi-shuffle, and the
double-shuffle relation generator with exact rank reduction.

The index <-> word codec follows the convention that the index
(k_1, ..., k_m) encodes the word A^(k_m-1) B A^(k_(m-1)-1) B ... A^(k_1-1) B
and carries the sign (-1)^m.  A word is "convergent" when it starts with A
and ends with B, i.e. when its index is admissible (last entry >= 2).

Divergent coefficients of a group-like series are recovered from the
convergent ones and prescribed single-letter values by two inductions:
words with r leading B's are resolved through the shuffle B^r with the
convergent remainder (the word itself appears with coefficient r! in the
fully collected form, here coefficient 1 against the collected power
word), then words with trailing A's are resolved symmetrically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .symbols import SymbolPoly, ZetaSym
from .words import EMPTY, Word, all_words

# -- indices ---------------------------------------------------------------


@dataclass(frozen=True)
class Index:
    entries: tuple[int, ...]

    def __post_init__(self):
        if any(k < 1 for k in self.entries):
            raise ValueError(f"index entries must be positive, got {self.entries}")

    @property
    def weight(self) -> int:
        return sum(self.entries)

    @property
    def depth(self) -> int:
        return len(self.entries)

    @property
    def admissible(self) -> bool:
        return bool(self.entries) and self.entries[-1] >= 2

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


def word_of_index(index: tuple[int, ...] | Index) -> tuple[Word, int]:
    """The word of an index together with the sign (-1)^depth."""
    entries = tuple(index.entries if isinstance(index, Index) else index)
    letters = "".join("A" * (k - 1) + "B" for k in reversed(entries))
    return Word(letters), (-1) ** len(entries)


def index_of_word(word: Word) -> tuple[tuple[int, ...], int]:
    """Inverse codec; defined exactly on words ending in B."""
    s = word.letters
    if not s or not s.endswith("B"):
        raise ValueError(f"word {word!r} does not end in B and is not index-encodable")
    blocks = [len(b) + 1 for b in s.split("B")[:-1]]
    entries = tuple(reversed(blocks))
    return entries, (-1) ** len(entries)


def is_convergent_word(word: Word) -> bool:
    s = word.letters
    return len(s) >= 2 and s[0] == "A" and s[-1] == "B"


def convergent_words(weight: int) -> list[Word]:
    return [w for w in all_words(weight) if is_convergent_word(w)]


def admissible_indices(weight: int) -> list[tuple[int, ...]]:
    """All admissible indices of the given weight, canonical order."""
    return [index_of_word(w)[0] for w in convergent_words(weight)]


# -- shuffle ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _shuffle_strings(u: str, v: str) -> tuple[tuple[str, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[str, int] = {}
    for rest, c in _shuffle_strings(u[1:], v):
        acc[u[0] + rest] = acc.get(u[0] + rest, 0) + c
    for rest, c in _shuffle_strings(u, v[1:]):
        acc[v[0] + rest] = acc.get(v[0] + rest, 0) + c
    return tuple(sorted(acc.items()))


def shuffle_words(u: Word, v: Word) -> dict[Word, int]:
    """Sum over all order-preserving interleavings, with multiplicities."""
    return {Word(s): c for s, c in _shuffle_strings(u.letters, v.letters)}


def shuffle_combinations(terms_u: dict[Word, object], terms_v: dict[Word, object]) -> dict[Word, object]:
    """Bilinear extension of the shuffle product."""
    out: dict[Word, object] = {}
    for u, cu in terms_u.items():
        for v, cv in terms_v.items():
            for w, m in shuffle_words(u, v).items():
                add = cu * cv * m
                out[w] = out[w] + add if w in out else add
    return out


def shuffle_many(factors: list[Word]) -> dict[Word, int]:
    acc = {EMPTY: 1}
    for f in factors:
        acc = shuffle_combinations(acc, {f: 1})
    return acc


# -- quasi-shuffle (stuffle) -------------------------------------------------


@lru_cache(maxsize=None)
def _stuffle(i: tuple[int, ...], j: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    if not i:
        return ((j, 1),)
    if not j:
        return ((i, 1),)
    acc: dict[tuple[int, ...], int] = {}

    def add(head: int, tail_terms):
        for t, c in tail_terms:
            key = (head,) + t
            acc[key] = acc.get(key, 0) + c

    add(i[0], _stuffle(i[1:], j))
    add(j[0], _stuffle(i, j[1:]))
    add(i[0] + j[0], _stuffle(i[1:], j[1:]))
    return tuple(sorted(acc.items()))


def stuffle_indices(i: tuple[int, ...] | Index, j: tuple[int, ...] | Index) -> dict[tuple[int, ...], int]:
    """Quasi-shuffle product: interleavings where heads may merge by addition.

    The heads here are the entries k_1 (innermost summation variable), so
    the recursion matches the series product of nested sums directly.
    """
    it = tuple(i.entries if isinstance(i, Index) else i)
    jt = tuple(j.entries if isinstance(j, Index) else j)
    return dict(_stuffle(it, jt))


# -- divergent-coefficient recovery -----------------------------------------


class InconsistentCharacterError(ValueError):
    pass


def recover_character(known: dict[Word, object], c_a, c_b, max_weight: int, ring,
                      check_consistency: bool = True) -> dict[Word, object]:
    """Extend convergent-word coefficients to the unique shuffle character.

    `known` must assign a coefficient to every convergent word of weight
    <= max_weight and be shuffle-multiplicative on convergent words (this
    is checked unless `check_consistency` is disabled, which the
    regularization tables need because they treat the convergent
    coefficients as free symbols).  `c_a` and `c_b` are the prescribed
    single-letter coefficients.  Returns the full coefficient map on all
    words of weight <= max_weight.
    """
    if not ring.has_rationals:
        raise ValueError("divergent-coefficient recovery needs rational scalars in the ring")
    for weight in range(2, max_weight + 1):
        for w in convergent_words(weight):
            if w not in known:
                raise ValueError(f"missing convergent coefficient for {w}")
    if check_consistency:
        _check_convergent_consistency(known, max_weight, ring)

    coeffs: dict[Word, object] = {EMPTY: ring.one}
    if max_weight >= 1:
        coeffs[Word("A")] = c_a
        coeffs[Word("B")] = c_b
    for weight in range(2, max_weight + 1):
        for w in convergent_words(weight):
            coeffs[w] = known[w]
    # pure powers: the shuffle power of a letter is s! times the power word
    for s in range(2, max_weight + 1):
        fact = ring.from_fraction(Fraction(1, _factorial(s)))
        coeffs[Word("A" * s)] = _power(c_a, s) * fact
        coeffs[Word("B" * s)] = _power(c_b, s) * fact

    # words with r leading B's followed by a convergent remainder
    for r in range(1, max_weight - 1):
        br = Word("B" * r)
        phi_br = coeffs[br]
        for rest_weight in range(2, max_weight - r + 1):
            for v in convergent_words(rest_weight):
                target = br + v
                acc = phi_br * coeffs[v]
                for u, m in shuffle_words(br, v).items():
                    if u == target:
                        continue
                    acc = acc - coeffs[u] * m
                coeffs[target] = acc

    # words with s trailing A's; the prefix ends in B and is already known
    for s in range(1, max_weight):
        a_s = Word("A" * s)
        phi_as = coeffs[a_s]
        for prefix_weight in range(1, max_weight - s + 1):
            for x in all_words(prefix_weight):
                if not x.letters.endswith("B"):
                    continue
                target = x + a_s
                acc = phi_as * coeffs[x]
                for u, m in shuffle_words(a_s, x).items():
                    if u == target:
                        continue
                    acc = acc - coeffs[u] * m
                coeffs[target] = acc

    return coeffs


def _check_convergent_consistency(known, max_weight, ring):
    for wu in range(2, max_weight - 1):
        for wv in range(wu, max_weight - wu + 1):
            for u in convergent_words(wu):
                for v in convergent_words(wv):
                    lhs = known[u] * known[v]
                    acc = None
                    for t, m in shuffle_words(u, v).items():
                        add = known[t] * m
                        acc = add if acc is None else acc + add
                    if not ring.eq(lhs, acc):
                        raise InconsistentCharacterError(
                            f"shuffle relation violated on convergent pair ({u}, {v})"
                        )


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _power(x, n: int):
    out = None
    for _ in range(n):
        out = x if out is None else out * x
    return out


# -- regularized zeta expressions --------------------------------------------


@lru_cache(maxsize=None)
def _shuffle_reg_table(max_weight: int) -> dict[Word, SymbolPoly]:
    """Character table with convergent words mapped to their zeta symbols
    and both letter coefficients set to zero (shuffle regularization)."""
    from .rings import SYMBOLIC

    known: dict[Word, SymbolPoly] = {}
    for weight in range(2, max_weight + 1):
        for w in convergent_words(weight):
            entries, sign = index_of_word(w)
            known[w] = SymbolPoly.gen(ZetaSym("complex", entries), Fraction(sign))
    return recover_character(known, SymbolPoly.ZERO, SymbolPoly.ZERO, max_weight, SYMBOLIC,
                             check_consistency=False)


def _linear_poly_to_index_dict(poly: SymbolPoly) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for mono, c in poly.terms.items():
        if len(mono) != 1 or mono[0][1] != 1 or not isinstance(mono[0][0], ZetaSym):
            raise ValueError("expected a linear combination of zeta symbols")
        out[mono[0][0].index] = out.get(mono[0][0].index, Fraction(0)) + Fraction(c)
    return {k: v for k, v in out.items() if v}


def shuffle_regularized(index: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
    """The shuffle-regularized value of a (possibly divergent) index as a
    linear combination of admissible indices, with zeta(1) sent to 0."""
    idx = tuple(index)
    if idx and idx[-1] >= 2:
        return {idx: Fraction(1)}
    if idx == (1,):
        return {}
    word, sign = word_of_index(idx)
    table = _shuffle_reg_table(sum(idx))
    return _linear_poly_to_index_dict(Fraction(sign) * table[word])


@lru_cache(maxsize=None)
def stuffle_regularized(index: tuple[int, ...]) -> dict[tuple[int, ...], "Fraction"]:
    """The quasi-shuffle-regularized value of an index, with zeta(1) = 0.

    A trailing 1 is peeled off through the product (1) * prefix, whose only
    term with the same number of trailing 1's is the index itself (with
    coefficient 1); everything else has strictly fewer and recurses.
    """
    idx = tuple(index)
    if idx and idx[-1] >= 2:
        return {idx: Fraction(1)}
    if idx == (1,) or not idx:
        return {}
    prefix = idx[:-1]
    out: dict[tuple[int, ...], Fraction] = {}
    for term, mult in stuffle_indices((1,), prefix).items():
        if term == idx:
            continue
        for base, c in stuffle_regularized(term).items():
            out[base] = out.get(base, Fraction(0)) - mult * c
    return {k: v for k, v in out.items() if v}


# -- relation rows ------------------------------------------------------------

Monomial = tuple[tuple[int, ...], ...]  # sorted multiset of admissible indices


def _mono(*indices: tuple[int, ...]) -> Monomial:
    return tuple(sorted(indices))


def monomial_weight(mono: Monomial) -> int:
    return sum(sum(idx) for idx in mono)


def monomial_str(mono: Monomial, flavor: str = "complex") -> str:
    parts = []
    for idx, grp in itertools.groupby(mono):
        n = len(list(grp))
        s = str(ZetaSym(flavor, idx))
        parts.append(s if n == 1 else f"{s}^{n}")
    return "*".join(parts) if parts else "1"


def _pivot_key(mono: Monomial):
    """Pivot preference: single symbols over products, deeper over shallower,
    then lexicographically larger index tuples.  The reduction eliminates
    the largest monomial of each row, so products of lower-weight symbols
    survive into the basis."""
    is_single = 1 if len(mono) == 1 else 0
    depth = sum(len(idx) for idx in mono)
    return (is_single, depth, mono)


@dataclass
class RelationRow:
    weight: int
    coeffs: dict[Monomial, Fraction]
    provenance: str = ""

    def __post_init__(self):
        self.coeffs = {m: Fraction(c) for m, c in self.coeffs.items() if c != 0}
        if not self.coeffs:
            raise ValueError("relation rows must be nonzero")
        if any(monomial_weight(m) != self.weight for m in self.coeffs):
            raise ValueError("relation row is not weight-homogeneous")

    def normalized(self) -> tuple[tuple[Monomial, Fraction], ...]:
        lead = max(self.coeffs, key=_pivot_key)
        scale = self.coeffs[lead]
        return tuple(sorted(((m, c / scale) for m, c in self.coeffs.items()), key=lambda mc: _pivot_key(mc[0])))


def _shuffle_expansion(i: tuple[int, ...], j: tuple[int, ...]) -> dict[Monomial, Fraction]:
    wi, si = word_of_index(i)
    wj, sj = word_of_index(j)
    out: dict[Monomial, Fraction] = {}
    for t, m in shuffle_words(wi, wj).items():
        entries, st = index_of_word(t)
        mono = _mono(entries)
        out[mono] = out.get(mono, Fraction(0)) + Fraction(m * st * si * sj)
    return {k: v for k, v in out.items() if v}


def _stuffle_expansion(i: tuple[int, ...], j: tuple[int, ...]) -> dict[Monomial, Fraction]:
    out: dict[Monomial, Fraction] = {}
    for t, m in stuffle_indices(i, j).items():
        mono = _mono(t)
        out[mono] = out.get(mono, Fraction(0)) + Fraction(m)
    return {k: v for k, v in out.items() if v}


def generate_double_shuffle(weight: int, flavor: str = "complex") -> list[RelationRow]:
    """Relation rows of the given weight.

    For every unordered pair of admissible indices with weights summing to
    `weight`, the product monomial is equated with both its interleaving
    (integral shuffle) and its nested-sum (quasi-shuffle) expansion.  For
    every admissible j of weight-1 less, the divergent index j+(1,) is
    regularized on both sides with zero letter coefficients and the two
    resolutions are equated.  Rows are normalized and deduplicated;
    `flavor` only tags the export naming.
    """
    if weight < 2:
        raise ValueError("double shuffle relations start at weight 2")
    rows: list[RelationRow] = []
    lower = [idx for wt in range(2, weight - 1) for idx in admissible_indices(wt)]
    for a, b in itertools.combinations_with_replacement(lower, 2):
        if sum(a) + sum(b) != weight:
            continue
        mono = _mono(a, b)
        for expansion, kind in ((_shuffle_expansion(a, b), "integral"), (_stuffle_expansion(a, b), "series")):
            coeffs = {mono: Fraction(1)}
            for m, c in expansion.items():
                coeffs[m] = coeffs.get(m, Fraction(0)) - c
            try:
                rows.append(RelationRow(weight, coeffs, f"{kind} shuffle of zeta{a} * zeta{b}"))
            except ValueError:
                pass
    for j in admissible_indices(weight - 1):
        d = tuple(j) + (1,)
        coeffs: dict[Monomial, Fraction] = {}
        for idx, c in shuffle_regularized(d).items():
            coeffs[_mono(idx)] = coeffs.get(_mono(idx), Fraction(0)) + c
        for idx, c in stuffle_regularized(d).items():
            coeffs[_mono(idx)] = coeffs.get(_mono(idx), Fraction(0)) - c
        try:
            rows.append(RelationRow(weight, coeffs, f"regularizations of zeta{d} compared"))
        except ValueError:
            pass  # the two regularizations coincide: trivial row
    # deduplicate up to scale
    seen = set()
    unique = []
    for row in rows:
        key = row.normalized()
        if key not in seen:
            seen.add(key)
            unique.append(row)
    return unique


def zeta_monomials(weight: int) -> list[Monomial]:
    """All multisets of admissible indices with total weight `weight`."""
    out: list[Monomial] = []

    def rec(remaining: int, smallest: tuple[int, ...] | None, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for wt in range(2, remaining + 1):
            for idx in admissible_indices(wt):
                if smallest is not None and idx < smallest:
                    continue
                acc.append(idx)
                rec(remaining - wt, idx, acc)
                acc.pop()

    rec(weight, None, [])
    return sorted(out)


@dataclass
class ReductionResult:
    weight: int
    rank: int
    basis: list[Monomial]
    expressions: dict[Monomial, dict[Monomial, Fraction]]

    @property
    def dimension_bound(self) -> int:
        return len(self.basis)

    def express(self, mono: Monomial) -> dict[Monomial, Fraction]:
        """mono as a combination of basis monomials."""
        if mono in self.expressions:
            return dict(self.expressions[mono])
        return {mono: Fraction(1)}


def reduce_relations(rows: list[RelationRow], weight: int) -> ReductionResult:
    """Exact fraction-free row reduction of the relation rows.

    Rows are scaled to integers and eliminated Bareiss-style over the
    monomial axis sorted by pivot preference; the quotient basis is the
    set of monomials that never lead a row, and every pivot monomial gets
    an expression in the basis.
    """
    if any(r.weight != weight for r in rows):
        raise ValueError("rows must be homogeneous of the stated weight")
    monos = sorted(zeta_monomials(weight), key=_pivot_key, reverse=True)
    col_of = {m: k for k, m in enumerate(monos)}
    matrix: list[list[int]] = []
    for row in rows:
        denom = 1
        for c in row.coeffs.values():
            denom = denom * c.denominator // _gcd(denom, c.denominator)
        vec = [0] * len(monos)
        for m, c in row.coeffs.items():
            vec[col_of[m]] = int(c * denom)
        matrix.append(vec)

    # Bareiss fraction-free forward elimination
    pivots: list[tuple[int, int]] = []  # (row, col)
    r = 0
    prev = 1
    for col in range(len(monos)):
        sel = next((i for i in range(r, len(matrix)) if matrix[i][col] != 0), None)
        if sel is None:
            continue
        matrix[r], matrix[sel] = matrix[sel], matrix[r]
        for i in range(r + 1, len(matrix)):
            if all(x == 0 for x in matrix[i]):
                continue
            for c2 in range(len(monos)):
                if c2 == col:
                    continue
                matrix[i][c2] = (matrix[r][col] * matrix[i][c2] - matrix[i][col] * matrix[r][c2]) // prev
            matrix[i][col] = 0
        prev = matrix[r][col]
        pivots.append((r, col))
        r += 1

    pivot_cols = [c for _, c in pivots]
    basis = sorted((m for k, m in enumerate(monos) if k not in pivot_cols), key=_pivot_key)
    # back-substitution with exact fractions for the expression table
    expressions: dict[Monomial, dict[Monomial, Fraction]] = {}
    for rr, cc in reversed(pivots):
        expr: dict[Monomial, Fraction] = {}
        lead = Fraction(matrix[rr][cc])
        for c2 in range(cc + 1, len(monos)):
            val = Fraction(matrix[rr][c2])
            if not val:
                continue
            coeff = -val / lead
            tgt = monos[c2]
            if tgt in expressions:
                for bm, bc in expressions[tgt].items():
                    expr[bm] = expr.get(bm, Fraction(0)) + coeff * bc
            else:
                expr[tgt] = expr.get(tgt, Fraction(0)) + coeff
        expressions[monos[cc]] = {m: c for m, c in expr.items() if c}
    return ReductionResult(weight, len(pivots), basis, expressions)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a > 0 else -a
