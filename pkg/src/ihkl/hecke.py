"""Hecke algebra of S_n over integer Laurent polynomials in v.

The T-basis satisfies T_s^2 = (v^2 - 1) T_s + v^2 T_1 and T_u T_w =
T_{uw} when lengths add. Kazhdan-Lusztig polynomials are produced by
two independent routes: extraction from Bott-Samelson products
v^{-l(w)} (T_{s_1} + 1) ... (T_{s_k} + 1), and the classical descent
recursion; agreement of the two is the main internal cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coxeter import Permutation, all_elements, bruhat_leq, from_word, identity
from .errors import ComputationError, InternalConsistencyError


class LaurentPoly:
    """Sparse integer Laurent polynomial; the variable is v by default."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for e, c in (coeffs or {}).items():
            c = int(c)
            if c:
                clean[int(e)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def v_power(cls, e, c=1):
        return cls({e: c})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                del out[e]
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by v^k."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def bar(self):
        """Substitute v -> v^{-1}."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def is_palindromic(self):
        return self.coeffs == {-e: c for e, c in self.coeffs.items()}

    def coefficient(self, e):
        return self.coeffs.get(e, 0)

    def max_degree(self):
        return max(self.coeffs) if self.coeffs else None

    def min_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def subs_q(self, q):
        """Evaluate at v^2 = q; only even exponents may be present."""
        total = 0
        for e, c in self.coeffs.items():
            if e % 2:
                raise ComputationError(
                    "odd exponent %d: element does not lie in Z[v^2]" % e)
            total += c * q ** (e // 2)
        return total

    def to_q(self):
        """Rewrite an element of Z[v^2] as a polynomial in q = v^2."""
        out = {}
        for e, c in self.coeffs.items():
            if e % 2 or e < 0:
                raise ComputationError(
                    "exponent %d: element does not lie in Z[q]" % e)
            out[e // 2] = c
        return LaurentPoly(out)

    def format(self, var="v"):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                term = str(c)
            else:
                head = var if e == 1 else "%s^%d" % (var, e)
                if c == 1:
                    term = head
                elif c == -1:
                    term = "-" + head
                else:
                    term = "%d*%s" % (c, head)
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += term if term.startswith("-") else "+" + term
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "LaurentPoly(%r)" % (self.coeffs,)


class HeckeElement:
    """Finite Z[v, v^{-1}]-combination of T-basis elements of rank n."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        for w, c in (terms or {}).items():
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly({0: c})
            if w.n != n:
                raise ComputationError("term %s has wrong rank" % w)
            if c:
                clean[w] = c
        self.terms = clean

    @classmethod
    def unit(cls, n):
        return cls(n, {identity(n): LaurentPoly.one()})

    @classmethod
    def t(cls, w: Permutation):
        return cls(w.n, {w: LaurentPoly.one()})

    def coeff(self, w: Permutation) -> LaurentPoly:
        return self.terms.get(w, LaurentPoly.zero())

    def __eq__(self, other):
        return (isinstance(other, HeckeElement) and self.n == other.n
                and self.terms == other.terms)

    def __add__(self, other):
        if self.n != other.n:
            raise ComputationError("rank mismatch")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, LaurentPoly.zero()) + c
        return HeckeElement(self.n, out)

    def __sub__(self, other):
        return self + other.scale(LaurentPoly({0: -1}))

    def scale(self, c) -> "HeckeElement":
        if isinstance(c, int):
            c = LaurentPoly({0: c})
        return HeckeElement(self.n, {w: p * c for w, p in self.terms.items()})

    def support(self):
        return sorted(self.terms, key=lambda w: (w.length(), w.word))

    def format(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (-w.length(), w.word)):
            c = self.terms[w]
            if c == 1:
                parts.append("T:%s" % w)
            elif len(c.coeffs) == 1:
                parts.append("%s*T:%s" % (c.format(), w))
            else:
                parts.append("(%s)*T:%s" % (c.format(), w))
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "HeckeElement(%d, %s)" % (self.n, self.format())


V2M1 = LaurentPoly({2: 1, 0: -1})      # v^2 - 1
V2 = LaurentPoly({2: 1})
VM2 = LaurentPoly({-2: 1})
VM2M1 = LaurentPoly({-2: 1, 0: -1})    # v^{-2} - 1


def _mul_right_simple(a: HeckeElement, i: int) -> HeckeElement:
    """a * T_{s_i} by the quadratic relation."""
    out = {}

    def acc(w, c):
        out[w] = out.get(w, LaurentPoly.zero()) + c

    for w, c in a.terms.items():
        ws = w.apply_right(i)
        if ws.length() > w.length():
            acc(ws, c)
        else:
            acc(w, c * V2M1)
            acc(ws, c * V2)
    return HeckeElement(a.n, out)


def t_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """The algebra product, expanding b along reduced words."""
    if a.n != b.n:
        raise ComputationError("rank mismatch")
    total = HeckeElement(a.n)
    for w, c in b.terms.items():
        part = a.scale(c)
        for i in w.reduced_word():
            part = _mul_right_simple(part, i)
        total = total + part
    return total


def t_inverse(w: Permutation) -> HeckeElement:
    """(T_w)^{-1} as the reversed product of simple inverses."""
    n = w.n
    out = HeckeElement.unit(n)
    inv_s = {}
    for i in reversed(w.reduced_word()):
        if i not in inv_s:
            s = identity(n).apply_right(i)
            inv_s[i] = HeckeElement(n, {s: VM2, identity(n): VM2M1})
        out = t_mul(out, inv_s[i])
    return out


def iota(a: HeckeElement) -> HeckeElement:
    """The self-duality involution: v -> v^{-1} on coefficients and
    T_w -> (T at w^{-1})^{-1} on the basis.

    On the generators this is T_s -> T_s^{-1}; reversing a reduced word
    while inverting each factor lands on the inverse of the basis
    element at w^{-1}, which is what makes the canonical basis fixed.
    """
    total = HeckeElement(a.n)
    for w, c in a.terms.items():
        total = total + t_inverse(w.inverse()).scale(c.bar())
    return total


@dataclass
class KLResult:
    """Canonical basis element C'_w with its polynomial data.

    kl_polys maps u to P_{u,w} as a polynomial in q; corrections maps u
    to the palindromic multiple p_u removed during Bott-Samelson
    extraction (that route only).
    """

    w: Permutation
    cprime: HeckeElement
    kl_polys: dict = field(default_factory=dict)      # Permutation -> LaurentPoly in q
    corrections: dict = field(default_factory=dict)   # Permutation -> LaurentPoly in v


_BS_CACHE = {}    # (n, word of w) -> KLResult
_REC_CACHE = {}   # (n, word of w) -> KLResult


def _extract_kl(w: Permutation, elem: HeckeElement) -> dict:
    """Read P_{u,w} off C'_w and verify the defining constraints."""
    lw = w.length()
    polys = {}
    for u, c in elem.terms.items():
        scaled = c.shift(lw)
        lo = scaled.min_degree()
        if lo < 0 or any(e % 2 for e in scaled.coeffs):
            raise InternalConsistencyError(
                "coefficient of T_%s in C'_%s is %s, not in Z[v^2]" % (u, w, c))
        p = scaled.to_q()
        if u == w:
            if p != 1:
                raise InternalConsistencyError("P_{w,w} != 1 at w = %s" % w)
        elif 2 * p.max_degree() > lw - u.length() - 1:
            raise InternalConsistencyError(
                "degree bound violated at (%s, %s): %s" % (u, w, p.format("q")))
        polys[u] = p
    return polys


def kl_bott_samelson(word, n: int) -> KLResult:
    """C'_w from the Bott-Samelson product over a reduced word.

    E = v^{-k} (T_{s_1} + 1) ... (T_{s_k} + 1) equals C'_w plus smaller
    canonical terms; for u < w in decreasing length order the palindromic
    part of v^{l(u)} * (coefficient of T_u) determines the multiple p_u
    of C'_u to subtract. What remains is C'_w.
    """
    word = tuple(word)
    w = from_word(word, n)
    if len(word) != w.length():
        raise ComputationError("word %r is not reduced" % (word,))
    key = (n, w.word)
    if key in _BS_CACHE and _BS_CACHE[key].w.word == w.word and word == w.reduced_word():
        return _BS_CACHE[key]

    e = HeckeElement.unit(n)
    for i in word:
        e = _mul_right_simple(e, i) + e
    e = e.scale(LaurentPoly.v_power(-len(word)))

    corrections = {}
    for length in range(w.length() - 1, -1, -1):
        for u in [x for x in e.support() if x.length() == length]:
            g = e.coeff(u).shift(u.length())
            half = {d: c for d, c in g.coeffs.items() if d >= 0}
            p_u = LaurentPoly({0: half.get(0, 0)})
            for d, c in half.items():
                if d > 0:
                    p_u = p_u + LaurentPoly({d: c, -d: c})
            if not p_u:
                continue
            corrections[u] = p_u
            cu = cprime(u, algorithm="bott_samelson").cprime
            e = e - cu.scale(p_u)

    result = KLResult(w, e, _extract_kl(w, e), corrections)
    for u in result.kl_polys:
        if u != w:
            g = e.coeff(u).shift(u.length())
            if g.max_degree() is not None and g.max_degree() >= 0:
                raise InternalConsistencyError(
                    "extraction left a non-negative degree at (%s, %s)" % (u, w))
    if word == w.reduced_word():
        _BS_CACHE[key] = result
    return result


def _mu(p: LaurentPoly, lu: int, lw: int) -> int:
    """Top-permitted-degree coefficient of P_{u,w} (0 when the bound is odd)."""
    gap = lw - lu - 1
    return p.coefficient(gap // 2) if gap % 2 == 0 and gap >= 0 else 0


def kl_recursion(w: Permutation) -> KLResult:
    """C'_w by the descent recursion, verified against the axioms.

    For a left descent s of w and w' = s w:
    C'_w = C'_s C'_{w'} - sum of mu(u, w') C'_u over u < w' with s u < u.
    The result is checked to be iota-fixed with the right degree bounds.
    """
    n = w.n
    key = (n, w.word)
    if key in _REC_CACHE:
        return _REC_CACHE[key]
    if w.length() == 0:
        result = KLResult(w, HeckeElement.unit(n),
                          {w: LaurentPoly.one()})
        _REC_CACHE[key] = result
        return result

    winv = w.inverse()
    i = next(j for j in range(1, n) if winv.word[j - 1] > winv.word[j])
    wp = w.apply_left(i)
    s = identity(n).apply_right(i)
    cs = HeckeElement(n, {s: LaurentPoly.v_power(-1),
                          identity(n): LaurentPoly.v_power(-1)})
    prev = kl_recursion(wp)
    e = t_mul(cs, prev.cprime)
    for u, p in prev.kl_polys.items():
        if u == wp:
            continue
        if u.apply_left(i).length() < u.length():
            m = _mu(p, u.length(), wp.length())
            if m:
                e = e - kl_recursion(u).cprime.scale(m)

    if iota(e) != e:
        raise InternalConsistencyError("C'_%s from the recursion is not iota-fixed" % w)
    result = KLResult(w, e, _extract_kl(w, e))
    _REC_CACHE[key] = result
    return result


def cprime(w: Permutation, algorithm: str = "bott_samelson") -> KLResult:
    if algorithm == "bott_samelson":
        key = (w.n, w.word)
        if key not in _BS_CACHE:
            kl_bott_samelson(w.reduced_word(), w.n)
        return _BS_CACHE[key]
    if algorithm == "recursion":
        return kl_recursion(w)
    raise ComputationError("unknown algorithm %r" % algorithm)


def kl_table(n: int, algorithm: str = "both"):
    """All P_{u,w} for u <= w in S_n, as polynomials in q.

    In both mode the Bott-Samelson and recursion tables are computed
    independently and compared entry by entry; any discrepancy is a hard
    error listing the offending pairs.
    """
    if algorithm not in ("bott_samelson", "recursion", "both"):
        raise ComputationError("unknown algorithm %r" % algorithm)
    algos = ("bott_samelson", "recursion") if algorithm == "both" else (algorithm,)
    tables = []
    for alg in algos:
        table = {}
        for w in all_elements(n):
            res = cprime(w, algorithm=alg)
            for u, p in res.kl_polys.items():
                table[(u, w)] = p
        tables.append(table)
    if len(tables) == 2:
        bad = [k for k in set(tables[0]) | set(tables[1])
               if tables[0].get(k) != tables[1].get(k)]
        if bad:
            raise InternalConsistencyError(
                "KL algorithm disagreement at: %s"
                % ", ".join("(%s,%s)" % k for k in sorted(
                    bad, key=lambda k: (k[1].word, k[0].word))))
    return tables[0]


class StalkTable(dict):
    """Degree -> dimension; ``comparable`` is False when u is not below w."""

    comparable = True


def ic_stalk_dims(u: Permutation, w: Permutation) -> StalkTable:
    """Stalk dimension table over the u-cell of the w-variety's IC object.

    The q^j coefficient of P_{u,w} sits in degree -l(w) + 2j; all odd
    offsets vanish.
    """
    out = StalkTable()
    if not bruhat_leq(u, w):
        out.comparable = False
        return out
    p = cprime(w).kl_polys[u]
    for j, c in p.coeffs.items():
        out[-w.length() + 2 * j] = c
    return out
