"""Finite simplicial complexes with stratification data.

A stratified complex is a pair (K, L) plus a filtration by subcomplexes:
K is a finite simplicial complex, L ("ends") a subcomplex modeling the
boundary at infinity, and the represented space is X = |K| - |L|.
Borel-Moore chains are relative chains mod L; compactly supported chains
live on the part of K disjoint from L.

Simplices are tuples of vertex identifiers, strictly sorted under a fixed
total order; the alternating-sign boundary of the sorted tuple is the
orientation convention. All coefficients are exact rationals.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ComputationError, UsageError, ValidationError
from .linalg import sparse_rank

_VKEY_CACHE = {}


def vkey(v):
    """A canonical sort key giving a strict total order on vertex ids.

    Vertex identifiers may be strings, integers, or (after subdivision,
    cones and suspensions) nested tuples of these; the key is injective
    and consistent across mixed types.
    """
    try:
        return _VKEY_CACHE[v]
    except (KeyError, TypeError):
        pass
    if isinstance(v, tuple):
        k = ("t", tuple(vkey(x) for x in v))
    elif isinstance(v, bool):
        k = ("b", v)
    elif isinstance(v, int):
        k = ("i", v)
    else:
        k = ("s", str(v))
    try:
        _VKEY_CACHE[v] = k
    except TypeError:
        pass
    return k


def simplex(vertices) -> tuple:
    """Normalize an iterable of vertex ids into a sorted simplex tuple."""
    t = tuple(sorted(vertices, key=vkey))
    for a, b in zip(t, t[1:]):
        if a == b:
            raise ComputationError("degenerate simplex %r" % (vertices,))
    return t


def faces_with_signs(s: tuple):
    """The codimension-1 faces of a sorted simplex with boundary signs."""
    for j in range(len(s)):
        yield (s[:j] + s[j + 1:], -1 if j % 2 else 1)


class SimplicialComplex:
    """A finite set of simplices closed under taking faces."""

    def __init__(self, simplices, closed=False):
        simps = set(tuple(s) for s in simplices)
        if not closed:
            stack = list(simps)
            while stack:
                s = stack.pop()
                for f, _ in faces_with_signs(s):
                    if f and f not in simps:
                        simps.add(f)
                        stack.append(f)
        self._simplices = frozenset(simps)
        by_dim = {}
        for s in simps:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._by_dim = {d: sorted(v, key=lambda s: tuple(vkey(x) for x in s))
                        for d, v in by_dim.items()}

    @classmethod
    def from_maximal(cls, maximal):
        return cls([simplex(s) for s in maximal])

    @classmethod
    def empty(cls):
        return cls([], closed=True)

    @property
    def simplices(self):
        return self._simplices

    def of_dim(self, d):
        return self._by_dim.get(d, [])

    @property
    def dim(self):
        return max(self._by_dim) if self._by_dim else -1

    @property
    def vertices(self):
        return frozenset(s[0] for s in self.of_dim(0))

    def __contains__(self, s):
        return tuple(s) in self._simplices

    def __len__(self):
        return len(self._simplices)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._simplices == other._simplices

    def __hash__(self):
        return hash(self._simplices)

    def f_vector(self):
        return tuple(len(self.of_dim(d)) for d in range(self.dim + 1))

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self._simplices <= other._simplices

    def is_full_in(self, ambient: "SimplicialComplex") -> bool:
        """Full: any ambient simplex with all vertices here lies here."""
        vs = self.vertices
        for s in ambient.simplices:
            if s not in self._simplices and all(v in vs for v in s):
                return False
        return True

    def full_subcomplex(self, vertices) -> "SimplicialComplex":
        vs = set(vertices)
        return SimplicialComplex(
            [s for s in self._simplices if all(v in vs for v in s)], closed=True)

    def restrict_to(self, simplices) -> "SimplicialComplex":
        keep = set(simplices)
        return SimplicialComplex(self._simplices & keep, closed=True)

    def link(self, x) -> "SimplicialComplex":
        out = []
        for s in self._simplices:
            if x not in s:
                t = simplex(s + (x,))
                if t in self._simplices:
                    out.append(s)
        return SimplicialComplex(out, closed=True)

    def star_closed(self, x) -> "SimplicialComplex":
        return SimplicialComplex([s for s in self._simplices if x in s])

    def connected_components(self):
        """Partition of the vertex set by edge connectivity."""
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in self.of_dim(1):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        comps = {}
        for v in self.vertices:
            comps.setdefault(find(v), set()).add(v)
        return sorted(comps.values(), key=lambda c: min(vkey(v) for v in c))


class StratifiedComplex:
    """Ambient complex K, formal dimension n, ends L, filtration F(2..n)."""

    def __init__(self, ambient: SimplicialComplex, dimension: int,
                 ends: SimplicialComplex | None = None,
                 filtration: dict | None = None):
        self.ambient = ambient
        self.dimension = dimension
        self.ends = ends if ends is not None else SimplicialComplex.empty()
        filt = dict(filtration or {})
        if not self.ends.is_subcomplex_of(ambient):
            raise ComputationError("ends is not a subcomplex of the ambient complex")
        self.filtration = {}
        for k in range(2, dimension + 1):
            fk = filt.pop(k, None)
            if fk is None:
                fk = SimplicialComplex.empty()
            if not fk.is_subcomplex_of(ambient):
                raise ComputationError("filtration F(%d) is not a subcomplex" % k)
            self.filtration[k] = fk
        if filt:
            raise ComputationError("filtration keys out of range: %r" % sorted(filt))
        ks = sorted(self.filtration)
        for a, b in zip(ks, ks[1:]):
            if not self.filtration[b].is_subcomplex_of(self.filtration[a]):
                raise ComputationError("filtration not nested at codimension %d" % b)

    def F(self, k) -> SimplicialComplex:
        if k < 2:
            return self.ambient
        return self.filtration.get(k, SimplicialComplex.empty())

    @property
    def singular_set(self) -> SimplicialComplex:
        return self.F(2)

    def stratum_nonempty(self, k) -> bool:
        nxt = self.F(k + 1) if k + 1 <= self.dimension else SimplicialComplex.empty()
        return len(self.F(k)) > len(nxt)

    def strata_full(self) -> bool:
        return all(self.F(k).is_full_in(self.ambient)
                   for k in range(2, self.dimension + 1))

    def interior(self) -> SimplicialComplex:
        """Full subcomplex on the vertices not in the ends."""
        keep = self.ambient.vertices - self.ends.vertices
        return self.ambient.full_subcomplex(keep)

    def substructure(self, sub: SimplicialComplex) -> "StratifiedComplex":
        """The stratified complex induced on a subcomplex (ends dropped)."""
        return StratifiedComplex(
            sub, self.dimension,
            ends=self.ends.restrict_to(sub.simplices),
            filtration={k: self.F(k).restrict_to(sub.simplices)
                        for k in range(2, self.dimension + 1)})


@dataclass(frozen=True)
class Chain:
    """A degree-graded sparse rational chain."""

    degree: int
    coefficients: dict  # simplex -> non-zero Fraction

    def __post_init__(self):
        clean = {}
        for s, c in self.coefficients.items():
            if len(s) - 1 != self.degree:
                raise ComputationError(
                    "simplex %r has dimension %d, chain degree is %d"
                    % (s, len(s) - 1, self.degree))
            c = Fraction(c)
            if c:
                clean[tuple(s)] = c
        object.__setattr__(self, "coefficients", clean)

    def is_zero(self):
        return not self.coefficients


def boundary(c: Chain, ctx: StratifiedComplex) -> Chain:
    """Alternating-sign boundary, relative to the ends of ctx.

    Faces lying entirely inside the ends subcomplex are dropped; this is
    the relative-chain convention realizing closed (Borel-Moore) supports
    on X = |K| - |L|.
    """
    out = {}
    for s, coeff in c.coefficients.items():
        if s not in ctx.ambient:
            raise ComputationError("simplex %r not in the complex" % (s,))
        for f, sign in faces_with_signs(s):
            if not f or f in ctx.ends:
                continue
            v = out.get(f, Fraction(0)) + sign * coeff
            if v:
                out[f] = v
            else:
                del out[f]
    return Chain(c.degree - 1, out)


# ---------------------------------------------------------------------------
# boundary matrices and homology

def chain_basis(s: StratifiedComplex, i: int):
    """The i-simplices of K not in L, in canonical order."""
    return [x for x in s.ambient.of_dim(i) if x not in s.ends]


def boundary_columns(s: StratifiedComplex, i: int, basis_i=None, basis_prev=None):
    """Columns of the relative boundary matrix in degree i."""
    if basis_i is None:
        basis_i = chain_basis(s, i)
    if basis_prev is None:
        basis_prev = chain_basis(s, i - 1)
    index = {x: r for r, x in enumerate(basis_prev)}
    cols = []
    for x in basis_i:
        col = {}
        for f, sign in faces_with_signs(x):
            r = index.get(f)
            if r is not None:
                col[r] = Fraction(sign)
        cols.append(col)
    return cols


def _relative_homology_dims(s: StratifiedComplex):
    n = s.dimension
    bases = {i: chain_basis(s, i) for i in range(0, n + 1)}
    ranks = {}
    for i in range(1, n + 1):
        ranks[i] = sparse_rank(boundary_columns(s, i, bases[i], bases[i - 1]))
    out = {}
    for i in range(0, n + 1):
        out[i] = len(bases[i]) - ranks.get(i, 0) - ranks.get(i + 1, 0)
    return out


def interior_order_complex(s: StratifiedComplex) -> StratifiedComplex:
    """The full subcomplex of the barycentric subdivision away from the ends.

    Vertices are the simplices of K not in L; simplices are chains of
    proper inclusions. The filtration carries over by membership of the
    barycenter's underlying simplex. This is the standard deformation
    retract of |K| - |L| and needs no fullness hypothesis on L.
    """
    poset = sorted((x for x in s.ambient.simplices if x not in s.ends),
                   key=lambda x: (len(x), tuple(vkey(v) for v in x)))
    chains = _inclusion_chains(poset)
    sub = SimplicialComplex([simplex(ch) for ch in chains], closed=True)
    filt = {}
    for k in range(2, s.dimension + 1):
        fk = s.F(k)
        filt[k] = sub.restrict_to(
            simplex(ch) for ch in chains if all(m in fk for m in ch))
    return StratifiedComplex(sub, s.dimension, filtration=filt)


def _inclusion_chains(poset):
    """All chains x1 < x2 < ... (proper face inclusions) in a simplex poset."""
    members = set(poset)
    memo = {}

    def chains_ending_at(x):
        if x in memo:
            return memo[x]
        out = [(x,)]
        for m in range(1, len(x)):
            for sub in itertools.combinations(x, m):
                if sub in members:
                    out.extend(ch + (x,) for ch in chains_ending_at(sub))
        memo[x] = out
        return out

    all_chains = []
    for x in poset:
        all_chains.extend(chains_ending_at(x))
    return all_chains


def homology_dims(s: StratifiedComplex, supports: str) -> dict:
    """Rational homology dimensions by degree.

    ``borel_moore``: homology of the relative complex C(K)/C(L).
    ``compact``: homology of the part of K disjoint from L (the full
    interior subcomplex when L is full in K, else the interior of the
    barycentric subdivision, which requires no hypothesis).
    """
    report = validate(s)
    for name in ("purity", "pseudomanifold", "filtration", "no_codim_1"):
        if not report.checks[name][0]:
            raise ValidationError("complex failed validation:\n" + report.render_text())
    if supports == "borel_moore":
        return _relative_homology_dims(s)
    if supports != "compact":
        raise UsageError("unknown supports mode %r" % supports)
    if len(s.ends) == 0:
        return _relative_homology_dims(s)
    if s.ends.is_full_in(s.ambient):
        inner = s.ambient.full_subcomplex(s.ambient.vertices - s.ends.vertices)
        model = StratifiedComplex(inner, s.dimension)
    else:
        model = interior_order_complex(s)
    return _relative_homology_dims(model)


# ---------------------------------------------------------------------------
# constructions

def barycentric_subdivide(s: StratifiedComplex) -> StratifiedComplex:
    """Barycentric subdivision of (K, L) and the whole filtration.

    Barycenters are identified with the simplices they subdivide, so the
    new vertex set is the old simplex set. After one application every
    filtration subcomplex and the ends are full subcomplexes.
    """
    poset = sorted(s.ambient.simplices,
                   key=lambda x: (len(x), tuple(vkey(v) for v in x)))
    chains = _inclusion_chains(poset)
    amb = SimplicialComplex([simplex(ch) for ch in chains], closed=True)

    def sub_of(member_set):
        return amb.restrict_to(
            simplex(ch) for ch in chains if all(m in member_set for m in ch))

    return StratifiedComplex(
        amb, s.dimension,
        ends=sub_of(s.ends.simplices),
        filtration={k: sub_of(s.F(k).simplices) for k in range(2, s.dimension + 1)})


_APEX = "apex"


def cone(base: StratifiedComplex, apex=None) -> StratifiedComplex:
    """The closed cone over a compact base, with the open cone as X.

    The apex is a new vertex joined to every simplex of the base; the
    ends are a copy of the base, so the represented space is the open
    cone. The apex alone forms the deepest filtration step.
    """
    if len(base.ends) != 0:
        raise ComputationError("cone requires a compact base (empty ends)")
    apex = apex if apex is not None else _APEX
    if apex in base.ambient.vertices:
        raise ComputationError("apex vertex %r already present" % (apex,))
    k = base.dimension + 1

    def coned(sub: SimplicialComplex) -> SimplicialComplex:
        simps = [(apex,)]
        for x in sub.simplices:
            simps.append(x)
            simps.append(simplex(x + (apex,)))
        return SimplicialComplex(simps, closed=True)

    amb = coned(base.ambient)
    filt = {j: coned(base.F(j)) for j in range(2, k)}
    filt[k] = SimplicialComplex([(apex,)], closed=True)
    return StratifiedComplex(amb, k, ends=base.ambient, filtration=filt)


def _prism(sub: SimplicialComplex) -> SimplicialComplex:
    """Staircase (path-monotone) triangulation of |sub| x [0, 1]."""
    simps = []
    for x in sub.simplices:
        bottom = tuple((v, 0) for v in x)
        top = tuple((v, 1) for v in x)
        simps.append(bottom)
        simps.append(top)
        for j in range(len(x)):
            simps.append(simplex(bottom[: j + 1] + top[j:]))
    return SimplicialComplex(simps)


def suspend(s: StratifiedComplex) -> StratifiedComplex:
    """The prism model of R x X.

    K becomes the staircase triangulation of K x I; the ends collect both
    prism caps plus the prism over the old ends; each filtration step is
    the prism over the old one.
    """
    amb = _prism(s.ambient)
    caps = [tuple((v, 0) for v in x) for x in s.ambient.simplices]
    caps += [tuple((v, 1) for v in x) for x in s.ambient.simplices]
    ends = SimplicialComplex(
        list(_prism(s.ends).simplices) + caps, closed=True)
    filt = {k: _prism(s.F(k)) for k in range(2, s.dimension + 1)}
    return StratifiedComplex(amb, s.dimension + 1, ends=ends, filtration=filt)


# ---------------------------------------------------------------------------
# validation

class ValidationReport:
    """Pass/fail per structural check; reports rather than throws."""

    def __init__(self):
        self.checks = {}

    def add(self, name, passed, message=""):
        self.checks[name] = (bool(passed), message)

    @property
    def ok(self):
        return all(p for p, _ in self.checks.values())

    def render_text(self):
        lines = []
        for name, (passed, msg) in self.checks.items():
            line = "%-16s %s" % (name, "pass" if passed else "FAIL")
            if msg and not passed:
                line += "  (%s)" % msg
            lines.append(line)
        return "\n".join(lines)

    def to_json(self):
        return {name: {"passed": p, "detail": m}
                for name, (p, m) in self.checks.items()}


def validate(s: StratifiedComplex) -> ValidationReport:
    rep = ValidationReport()
    n = s.dimension
    K = s.ambient

    covered = set()
    facet_count = {}
    for t in K.of_dim(n):
        for m in range(1, len(t) + 1):
            covered.update(itertools.combinations(t, m))
        for f, _ in faces_with_signs(t):
            facet_count[f] = facet_count.get(f, 0) + 1
    bad = [x for x in K.simplices if len(x) - 1 < n and x not in covered]
    rep.add("purity", not bad,
            "%d simplices not contained in an %d-simplex" % (len(bad), n))

    bad = [(x, facet_count.get(x, 0)) for x in K.of_dim(n - 1)
           if x not in s.ends and facet_count.get(x, 0) != 2]
    rep.add("pseudomanifold", not bad,
            "%d interior (n-1)-simplices without exactly two cofaces" % len(bad))

    msgs = []
    for k in range(2, n + 1):
        if s.F(k).dim > n - k:
            msgs.append("dim F(%d) = %d > %d" % (k, s.F(k).dim, n - k))
    rep.add("filtration", not msgs, "; ".join(msgs))

    if n >= 3:
        ok = set(s.F(2).of_dim(n - 1)) == set(s.F(3).of_dim(n - 1))
        rep.add("no_codim_1", ok, "F(2) has (n-1)-simplices outside F(3)")
    else:
        rep.add("no_codim_1", s.F(2).dim <= n - 2 if n >= 2 else True,
                "codimension-1 singular simplices")

    rep.add("ends_full", s.ends.is_full_in(K), "ends subcomplex is not full")

    not_full = [k for k in range(2, n + 1) if not s.F(k).is_full_in(K)]
    rep.add("strata_full", not not_full,
            "F(%s) not full; barycentric_subdivide first" %
            ",".join(map(str, not_full)))
    return rep


# ---------------------------------------------------------------------------
# JSON interface

_JSON_KEYS = {"dimension", "vertices", "simplices", "ends", "filtration"}


def complex_from_dict(data: dict) -> StratifiedComplex:
    if not isinstance(data, dict):
        raise UsageError("complex file must contain a JSON object")
    unknown = set(data) - _JSON_KEYS
    if unknown:
        raise UsageError("unknown keys in complex file: %s" % ", ".join(sorted(unknown)))
    try:
        n = int(data["dimension"])
        vertices = list(data["vertices"])
        top = [simplex(x) for x in data["simplices"]]
    except (KeyError, TypeError) as e:
        raise UsageError("malformed complex file: %s" % e)
    vs = set(vertices)
    for x in top:
        for v in x:
            if v not in vs:
                raise UsageError("simplex %r uses unknown vertex %r" % (x, v))
    amb = SimplicialComplex(top)
    ends = SimplicialComplex([simplex(x) for x in data.get("ends", [])])
    filt_in = data.get("filtration", {})
    listed = {}
    for key, arr in filt_in.items():
        try:
            k = int(key)
        except ValueError:
            raise UsageError("filtration key %r is not a codimension" % key)
        listed[k] = [simplex(x) for x in arr]
    filtration = {}
    for k in range(2, n + 1):
        simps = []
        for j, arr in listed.items():
            if j >= k:
                simps.extend(arr)
        filtration[k] = SimplicialComplex(simps)
    return StratifiedComplex(amb, n, ends=ends, filtration=filtration)


def load_complex(path) -> StratifiedComplex:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise UsageError("invalid JSON in %s: %s" % (path, e))
    return complex_from_dict(data)


def complex_to_dict(s: StratifiedComplex) -> dict:
    names = {}
    used = set()
    for v in sorted(s.ambient.vertices, key=vkey):
        name = v if isinstance(v, str) else "v%d" % len(names)
        while name in used:
            name += "_"
        names[v] = name
        used.add(name)

    def render(sub: SimplicialComplex, dims=None):
        out = []
        for d in range(sub.dim + 1):
            if dims is not None and d not in dims:
                continue
            out.extend([names[v] for v in x] for x in sub.of_dim(d))
        return out

    return {
        "dimension": s.dimension,
        "vertices": [names[v] for v in sorted(s.ambient.vertices, key=vkey)],
        "simplices": render(s.ambient),
        "ends": render(s.ends),
        "filtration": {str(k): render(s.F(k)) for k in range(2, s.dimension + 1)
                       if len(s.F(k))},
    }


def dump_complex(s: StratifiedComplex, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(complex_to_dict(s), fh, indent=1)
        fh.write("\n")
