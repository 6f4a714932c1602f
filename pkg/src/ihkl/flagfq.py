"""Brute-force flag variety of GL_n over a prime field F_q.

Full flags are chains of subspaces stored as reduced row-echelon bases,
which makes equality of subspaces literal tuple equality. Relative
position of two flags is the permutation read off the rank array
r_{ij} = dim(F1_i intersect F2_j) by its unit jumps; convolution of
G-invariant functions on flag pairs gives the specialization of the
Hecke algebra at v^2 = q, which is verified pair by pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .coxeter import Permutation, all_elements, identity
from .errors import ComputationError

MAX_N = 4
MAX_Q = 7


def _check_bounds(n, q, force=False):
    if n < 1:
        raise ComputationError("need n >= 1")
    if q < 2 or any(q % d == 0 for d in range(2, q)):
        raise ComputationError("%d is not prime" % q)
    if not force and (n > MAX_N or q > MAX_Q):
        raise ComputationError(
            "n=%d, q=%d exceeds the brute-force bounds n<=%d, q<=%d "
            "(pass force to override)" % (n, q, MAX_N, MAX_Q))


def rref(rows, q):
    """Reduced row-echelon form mod q; zero rows dropped; canonical."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] % q), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], q - 2, q)
        mat[r] = [(x * inv) % q for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % q:
                f = mat[i][c]
                mat[i] = [(a - f * b) % q for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in mat[:r])


def _rank(rows, q):
    return len(rref(rows, q))


@dataclass(frozen=True)
class FullFlag:
    """Proper subspaces V_1 through V_{n-1} in echelon form."""

    n: int
    q: int
    steps: tuple  # steps[i] = echelon basis of V_{i+1}, dims 1..n-1

    def subspace(self, i):
        """Basis rows of V_i, with V_0 = 0 and V_n the full space."""
        if i == 0:
            return ()
        if i == self.n:
            return tuple(tuple(1 if j == k else 0 for j in range(self.n))
                         for k in range(self.n))
        return self.steps[i - 1]


def _all_vectors(n, q):
    return [v for v in itertools.product(range(q), repeat=n) if any(v)]


@lru_cache(maxsize=None)
def enumerate_flags(n: int, q: int, force: bool = False):
    """All full flags in F_q^n, canonically deduplicated."""
    _check_bounds(n, q, force)
    vectors = _all_vectors(n, q)
    partial = [()]
    for dim in range(1, n):
        nxt = set()
        for chain in partial:
            current = chain[-1] if chain else ()
            seen = set()
            for v in vectors:
                cand = rref(current + (v,), q)
                if len(cand) != dim or cand in seen:
                    continue
                seen.add(cand)
                nxt.add(chain + (cand,))
        partial = sorted(nxt)
    return tuple(FullFlag(n, q, chain) for chain in partial)


def standard_flag(n: int, q: int) -> FullFlag:
    steps = tuple(tuple(tuple(1 if j == k else 0 for j in range(n))
                        for k in range(i))
                  for i in range(1, n))
    return FullFlag(n, q, steps)


def permuted_flag(w: Permutation, q: int) -> FullFlag:
    """The coordinate flag spanned by e_{w(1)}, ..., e_{w(i)} at step i."""
    n = w.n
    steps = []
    for i in range(1, n):
        rows = tuple(tuple(1 if j == w(k) - 1 else 0 for j in range(n))
                     for k in range(1, i + 1))
        steps.append(rref(rows, q))
    return FullFlag(n, q, tuple(steps))


def relative_position(f1: FullFlag, f2: FullFlag) -> Permutation:
    """The permutation with w(j) = i at the unit jump of the rank array.

    Calibrated so relative_position(standard flag, permuted_flag(w)) = w.
    """
    if (f1.n, f1.q) != (f2.n, f2.q):
        raise ComputationError("flags live in different spaces")
    n, q = f1.n, f1.q
    r = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        a = f1.subspace(i)
        for j in range(n + 1):
            b = f2.subspace(j)
            r[i][j] = i + j - _rank(a + b, q)
    word = [0] * n
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if r[i][j] - r[i - 1][j] - r[i][j - 1] + r[i - 1][j - 1] == 1:
                word[j - 1] = i
                break
    return Permutation(tuple(word))


@lru_cache(maxsize=None)
def _cells(n, q, force=False):
    """Flags grouped by relative position to the standard flag."""
    base = standard_flag(n, q)
    cells = {}
    for f in enumerate_flags(n, q, force):
        w = relative_position(base, f)
        cells.setdefault(w, []).append(f)
    return cells


def schubert_cell_sizes(n: int, q: int, force: bool = False):
    """Number of flags at each relative position from the standard flag."""
    return {w: len(fs) for w, fs in _cells(n, q, force).items()}


@dataclass(frozen=True)
class WFunction:
    """G-invariant integer function on flag pairs, stored on W."""

    n: int
    values: tuple  # sorted ((one-line word, value), ...)

    @classmethod
    def from_dict(cls, n, table):
        items = tuple(sorted((w.word, int(c)) for w, c in table.items() if c))
        return cls(n, items)

    @classmethod
    def t(cls, w: Permutation):
        return cls.from_dict(w.n, {w: 1})

    def as_dict(self):
        return {Permutation(word): c for word, c in self.values}

    def __call__(self, w: Permutation) -> int:
        for word, c in self.values:
            if word == w.word:
                return c
        return 0


def convolve(f: WFunction, g: WFunction, n: int, q: int,
             force: bool = False) -> WFunction:
    """(f * g)(w) = sum over flags F2 of f(pos(base, F2)) g(pos(F2, F_w)).

    F_w is a flag at position w from the base flag; the sum is checked
    to be independent of that choice on a second representative.
    """
    _check_bounds(n, q, force)
    if f.n != n or g.n != n:
        raise ComputationError("rank mismatch")
    cells = _cells(n, q, force)
    flags = enumerate_flags(n, q, force)
    base = standard_flag(n, q)
    fd, gd = f.as_dict(), g.as_dict()
    pos_base = {fl: relative_position(base, fl) for fl in flags}
    out = {}
    for w in all_elements(n):
        reps = cells[w][:2]
        totals = []
        for fw in reps:
            total = 0
            for f2 in flags:
                a = fd.get(pos_base[f2], 0)
                if a:
                    b = gd.get(relative_position(f2, fw), 0)
                    if b:
                        total += a * b
            totals.append(total)
        if len(set(totals)) != 1:
            raise ComputationError(
                "convolution value at %s depends on the representative flag" % w)
        out[w] = totals[0]
    return WFunction.from_dict(n, out)


@dataclass
class SpecializationReport:
    """Per-pair comparison of Hecke products against F_q convolution."""

    n: int
    q: int
    checked: int = 0
    mismatches: list = field(default_factory=list)  # (u, w, hecke, convolution)

    @property
    def passed(self):
        return not self.mismatches

    def render_text(self):
        head = "hecke vs F_q convolution (n=%d, q=%d): %d/%d pairs match" % (
            self.n, self.q, self.checked - len(self.mismatches), self.checked)
        lines = [head]
        for u, w, hv, cv in self.mismatches:
            lines.append("  MISMATCH T_%s * T_%s: hecke %s, convolution %s"
                         % (u, w, hv, cv))
        return "\n".join(lines)

    def to_json(self):
        return {
            "n": self.n, "q": self.q, "checked": self.checked,
            "passed": self.passed,
            "mismatches": [{"u": str(u), "w": str(w),
                            "hecke": hv, "convolution": cv}
                           for u, w, hv, cv in self.mismatches],
        }


def verify_hecke_specialization(n: int, q: int,
                                force: bool = False) -> SpecializationReport:
    """Compare every T_u T_w at v^2 = q with brute-force convolution."""
    from .hecke import HeckeElement, t_mul
    _check_bounds(n, q, force)
    report = SpecializationReport(n, q)
    els = all_elements(n)
    for u in els:
        for w in els:
            prod = t_mul(HeckeElement.t(u), HeckeElement.t(w))
            hecke_vals = {x: c.subs_q(q) for x, c in prod.terms.items()}
            hecke_vals = {x: c for x, c in hecke_vals.items() if c}
            conv = convolve(WFunction.t(u), WFunction.t(w), n, q, force)
            conv_vals = conv.as_dict()
            report.checked += 1
            if hecke_vals != conv_vals:
                report.mismatches.append(
                    (u, w,
                     {str(x): c for x, c in hecke_vals.items()},
                     {str(x): c for x, c in conv_vals.items()}))
    return report
