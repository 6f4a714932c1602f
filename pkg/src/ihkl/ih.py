"""Intersection homology of stratified simplicial complexes.

An i-chain is allowable for a perversity p when its support meets each
filtration step F(k) in dimension at most i - k + p(k), and its boundary
satisfies the same bound one degree down. On a triangulation whose
filtration subcomplexes are full, the support condition can be checked
simplex by simplex: the dimension of a union is the maximum of the
dimensions, and fullness makes the intersection of a closed simplex with
F(k) a single face. The boundary condition is imposed on the chain's
boundary after cancellation, which turns the allowable chain groups into
kernels of finite rational matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import (Chain, SimplicialComplex, StratifiedComplex,
                        barycentric_subdivide, boundary_columns, chain_basis,
                        cone, faces_with_signs, interior_order_complex,
                        simplex, suspend, vkey, _relative_homology_dims)
from .errors import ComputationError, InternalConsistencyError, ValidationError
from .linalg import RationalMatrix, rank_kernel, solve_in_span, sparse_rank
from .perversity import Perversity, is_complementary, make_standard

SUPPORTS = ("borel_moore", "compact")


def _fit_perversity(p: Perversity | None, n: int) -> Perversity | None:
    """Restrict p to dimension n; None when no perversity is needed."""
    if n < 2:
        return None
    if p is None:
        raise ComputationError("a perversity is required in dimension >= 2")
    if p.dimension == n:
        return p
    if p.dimension > n:
        return p.restrict(n)
    raise ComputationError(
        "perversity dimension %d too small for a %d-complex" % (p.dimension, n))


def _check_supports(supports):
    if supports not in SUPPORTS:
        raise ComputationError("unknown supports mode %r" % supports)


def _require_full_strata(s: StratifiedComplex):
    if not s.strata_full():
        raise ValidationError(
            "filtration subcomplexes are not full; barycentric_subdivide first")


def _simplex_allowable(x, i, fverts, p: Perversity | None, n: int) -> bool:
    for k in range(2, n + 1):
        vs = fverts.get(k)
        if not vs:
            continue
        cnt = sum(1 for v in x if v in vs)
        if cnt and cnt - 1 > i - k + p(k):
            return False
    return True


def _filtration_vertices(s: StratifiedComplex):
    return {k: s.F(k).vertices for k in range(2, s.dimension + 1)}


def allowable_simplices(s: StratifiedComplex, p: Perversity, i: int,
                        supports: str = "borel_moore"):
    """The i-simplices that may appear in an allowable chain."""
    _check_supports(supports)
    _require_full_strata(s)
    p = _fit_perversity(p, s.dimension)
    fverts = _filtration_vertices(s)
    ends_v = s.ends.vertices
    out = []
    for x in s.ambient.of_dim(i):
        if x in s.ends:
            continue
        if supports == "compact" and any(v in ends_v for v in x):
            continue
        if _simplex_allowable(x, i, fverts, p, s.dimension):
            out.append(x)
    return out


def _compact_model(s: StratifiedComplex) -> StratifiedComplex:
    """A compact-supports model of X with empty ends.

    The full subcomplex away from the ends is used when pushing away
    from the ends is a stratum-faithful retraction: the ends must be
    full, every simplex off the ends must retain an interior face, and
    that face must lie in exactly the filtration steps the simplex does.
    Otherwise the interior of the barycentric subdivision is used (its
    vertices are the simplices off the ends), for which the conditions
    always hold.
    """
    if len(s.ends) == 0:
        return s
    n = s.dimension
    if s.ends.is_full_in(s.ambient) and _interior_retract_ok(s):
        inner = s.ambient.full_subcomplex(s.ambient.vertices - s.ends.vertices)
        return StratifiedComplex(
            inner, n,
            filtration={k: s.F(k).restrict_to(inner.simplices)
                        for k in range(2, n + 1)})
    return interior_order_complex(s)


def _interior_retract_ok(s: StratifiedComplex) -> bool:
    ev = s.ends.vertices
    fs = [s.F(k) for k in range(2, s.dimension + 1)]
    for x in s.ambient.simplices:
        if x in s.ends:
            continue
        tau = tuple(v for v in x if v not in ev)
        if not tau:
            return False
        for fk in fs:
            if tau in fk and x not in fk:
                return False
    return True


def _ih_dims_relative(s: StratifiedComplex, p: Perversity | None) -> dict:
    """IH dims of the relative complex (K, L); L is empty in compact mode."""
    n = s.dimension
    if p is None or all(len(s.F(k)) == 0 for k in range(2, n + 1)):
        return _relative_homology_dims(s)
    fverts = _filtration_vertices(s)
    bases = {i: chain_basis(s, i) for i in range(0, n + 1)}
    allow = {i: [x for x in bases[i]
                 if _simplex_allowable(x, i, fverts, p, n)]
             for i in range(0, n + 1)}
    rank_full = {}
    rank_nonallow = {}
    for i in range(1, n + 1):
        cols = boundary_columns(s, i, allow[i], bases[i - 1])
        rank_full[i] = sparse_rank(cols)
        allowed_prev = set()
        lookup = {x: r for r, x in enumerate(bases[i - 1])}
        for x in allow[i - 1]:
            allowed_prev.add(lookup[x])
        ncols = [{r: v for r, v in col.items() if r not in allowed_prev}
                 for col in cols]
        rank_nonallow[i] = sparse_rank(ncols)
    out = {}
    for i in range(0, n + 1):
        cycles = len(allow[i]) - rank_full.get(i, 0)
        boundaries = rank_full.get(i + 1, 0) - rank_nonallow.get(i + 1, 0)
        out[i] = cycles - boundaries
    return out


def ih_dims(s: StratifiedComplex, p: Perversity | None, supports: str = "borel_moore",
            subdivide: int = 0, auto_subdivide: bool = True) -> dict:
    """Intersection homology dimensions by degree.

    ``subdivide`` forces extra barycentric subdivisions up front (for
    skeptical runs); one automatic subdivision is applied when the
    filtration subcomplexes are not full.
    """
    _check_supports(supports)
    for _ in range(subdivide):
        s = barycentric_subdivide(s)
    if supports == "compact":
        s = _compact_model(s)
    if not s.strata_full():
        if not auto_subdivide:
            raise ValidationError(
                "filtration subcomplexes are not full; barycentric_subdivide first")
        s = barycentric_subdivide(s)
    return _ih_dims_relative(s, _fit_perversity(p, s.dimension))


# ---------------------------------------------------------------------------
# explicit allowable chain complexes

@dataclass
class AllowableComplex:
    """Bases of the allowable chain groups and their boundary matrices.

    ``basis[i]`` is a list of chains spanning the degree-i allowable
    group; ``boundary[i]`` expresses their boundaries in the degree-(i-1)
    basis. In compact mode the chains live on the derived interior model
    stored in ``context``.
    """

    context: StratifiedComplex
    perversity: Perversity | None
    supports: str
    basis: dict = field(default_factory=dict)       # i -> list of Chain
    boundary: dict = field(default_factory=dict)    # i -> RationalMatrix

    def dims(self):
        out = {}
        n = self.context.dimension
        for i in range(0, n + 1):
            d_i = self.boundary.get(i)
            d_next = self.boundary.get(i + 1)
            rank_i = sparse_rank(d_i.col_dicts()) if d_i is not None else 0
            rank_next = sparse_rank(d_next.col_dicts()) if d_next is not None else 0
            out[i] = len(self.basis.get(i, [])) - rank_i - rank_next
        return out


def allowable_complex(s: StratifiedComplex, p: Perversity,
                      supports: str = "borel_moore") -> AllowableComplex:
    """Explicit bases for the allowable chain groups (small complexes)."""
    _check_supports(supports)
    if supports == "compact":
        s = _compact_model(s)
    _require_full_strata(s)
    n = s.dimension
    p = _fit_perversity(p, n)
    fverts = _filtration_vertices(s)
    bases = {i: chain_basis(s, i) for i in range(0, n + 1)}
    if p is None:
        allow = bases
    else:
        allow = {i: [x for x in bases[i]
                     if _simplex_allowable(x, i, fverts, p, n)]
                 for i in range(0, n + 1)}

    out = AllowableComplex(s, p, supports)
    chain_cols = {}  # i -> list of columns (simplex-row coords) spanning I_pC_i
    for i in range(0, n + 1):
        cols = boundary_columns(s, i, allow[i], bases[i - 1]) if i > 0 else \
            [dict() for _ in allow[i]]
        lookup = {x: r for r, x in enumerate(bases[i - 1])} if i > 0 else {}
        allowed_prev = {lookup[x] for x in allow[i - 1]} if i > 0 else set()
        proj = RationalMatrix(
            len(bases[i - 1] if i > 0 else []), len(allow[i]),
            {(r, j): v for j, col in enumerate(cols)
             for r, v in col.items() if r not in allowed_prev})
        _, kernel = rank_kernel(proj)
        simp_index = {x: r for r, x in enumerate(bases[i])}
        chains = []
        ccols = []
        for vec in kernel:
            coeffs = {allow[i][j]: c for j, c in enumerate(vec) if c}
            chains.append(Chain(i, coeffs))
            ccols.append({simp_index[x]: c for x, c in coeffs.items()})
        out.basis[i] = chains
        chain_cols[i] = ccols

    for i in range(1, n + 1):
        if not out.basis[i]:
            continue
        prev_index = {x: r for r, x in enumerate(bases[i - 1])}
        targets = []
        for ch in out.basis[i]:
            col = {}
            for x, c in ch.coefficients.items():
                for f, sign in ((f, sg) for f, sg in faces_with_signs(x)
                                if f in prev_index):
                    r = prev_index[f]
                    v = col.get(r, Fraction(0)) + sign * c
                    if v:
                        col[r] = v
                    else:
                        del col[r]
            targets.append(col)
        if out.basis[i - 1]:
            try:
                combos = solve_in_span(chain_cols[i - 1], targets)
            except ValueError:
                raise InternalConsistencyError(
                    "boundary of an allowable chain left the allowable complex")
        else:
            if any(t for t in targets):
                raise InternalConsistencyError(
                    "boundary of an allowable chain left the allowable complex")
            combos = [dict() for _ in targets]
        out.boundary[i] = RationalMatrix(
            len(out.basis[i - 1]), len(out.basis[i]),
            {(r, j): v for j, combo in enumerate(combos) for r, v in combo.items()})

    for i in range(2, n + 1):
        a, b = out.boundary.get(i - 1), out.boundary.get(i)
        if a is None or b is None:
            continue
        if not _product_is_zero(a, b):
            raise InternalConsistencyError("composite boundary is non-zero")
    return out


def _product_is_zero(a: RationalMatrix, b: RationalMatrix) -> bool:
    bcols = b.col_dicts()
    arows = a.row_dicts()
    for col in bcols:
        for i, row in enumerate(arows):
            if sum((row[k] * col[k] for k in row.keys() & col.keys()), Fraction(0)):
                return False
    return True


# ---------------------------------------------------------------------------
# reports

@dataclass
class ComparisonReport:
    title: str
    rows: list = field(default_factory=list)  # (label, left, right)
    notes: list = field(default_factory=list)

    def add(self, label, left, right):
        self.rows.append((str(label), left, right))

    @property
    def passed(self):
        return all(l == r for _, l, r in self.rows)

    def render_text(self):
        lines = ["%s: %s" % (self.title, "PASS" if self.passed else "FAIL")]
        for label, l, r in self.rows:
            mark = "ok" if l == r else "MISMATCH"
            lines.append("  %-24s %-8s %s vs %s" % (label, mark, l, r))
        lines.extend("  note: %s" % m for m in self.notes)
        return "\n".join(lines)

    def to_json(self):
        return {
            "title": self.title,
            "passed": self.passed,
            "rows": [{"label": a, "left": l, "right": r, "equal": l == r}
                     for a, l, r in self.rows],
            "notes": list(self.notes),
        }


def cone_formula_check(link: StratifiedComplex, p: Perversity) -> ComparisonReport:
    """Compare IH of the open cone with the truncation prediction.

    The prediction: degree j of the cone carries IH_{j-1} of the link
    when j >= k - p(k), and nothing below that cutoff (k = cone dimension).
    """
    if len(link.ends) != 0:
        raise ComputationError("cone formula needs a compact link")
    k = link.dimension + 1
    if k < 2 or p.dimension < k:
        raise ComputationError("need a perversity of dimension >= %d" % k)
    pk = p(k)
    c = cone(link)
    direct = ih_dims(c, p, "borel_moore")
    link_ih = ih_dims(link, p if link.dimension >= 2 else None, "borel_moore")
    rep = ComparisonReport("cone formula (dim %d, p(%d)=%d)" % (k, k, pk))
    cutoff = k - pk
    for j in range(0, k + 1):
        predicted = link_ih.get(j - 1, 0) if j >= cutoff else 0
        rep.add("degree %d" % j, direct.get(j, 0), predicted)
    rep.notes.append("truncation cutoff at degree %d" % cutoff)
    return rep


def suspension_check(s: StratifiedComplex, p: Perversity) -> ComparisonReport:
    """IH of R x X should be IH of X shifted up one degree."""
    n = s.dimension
    if p.dimension < n + 1:
        raise ComputationError("need a perversity of dimension >= %d" % (n + 1))
    base = ih_dims(s, p if n >= 2 else None, "borel_moore")
    sus = ih_dims(suspend(s), p, "borel_moore")
    rep = ComparisonReport("suspension shift (dim %d -> %d)" % (n, n + 1))
    rep.add("degree 0", sus.get(0, 0), 0)
    for i in range(0, n + 1):
        rep.add("degree %d" % (i + 1), sus.get(i + 1, 0), base.get(i, 0))
    return rep


def local_stalk_table(s: StratifiedComplex, x, p: Perversity) -> dict:
    """Stalk cohomology table at a vertex, from the IH of its link.

    Entries sit in degrees -n + j for 0 <= j <= p(k) where k is the
    codimension of the stratum of x; the entry at -n + j is the link's
    IH in degree (k - 1) - j. Only non-zero entries are returned.
    """
    n = s.dimension
    if (x,) not in s.ambient:
        raise ComputationError("%r is not a vertex of the complex" % (x,))
    if (x,) in s.ends:
        raise ComputationError("%r lies in the ends; it has no stalk in X" % (x,))
    _require_full_strata(s)
    link = s.ambient.link(x)
    linkst = StratifiedComplex(
        link, n - 1,
        filtration={k: s.F(k).restrict_to(link.simplices)
                    for k in range(2, n)})
    link_ih = ih_dims(linkst, p if n - 1 >= 2 else None, "borel_moore")
    k = None
    for j in range(n, 1, -1):
        if (x,) in s.F(j):
            k = j
            break
    if k is None:
        k, jmax = n, 0  # smooth point: single entry, the link's top IH
    else:
        jmax = _fit_perversity(p, n)(k)
    table = {}
    for j in range(0, jmax + 1):
        d = link_ih.get(k - 1 - j, 0)
        if d:
            table[-n + j] = d
    return table


def normalize_isolated(s: StratifiedComplex) -> StratifiedComplex:
    """Split isolated singular vertices into one copy per link component.

    Incident simplices reattach to the copy carrying their link
    component. The copies stay in F(2) as (now normal) markers.
    """
    sing = s.F(2)
    if sing.dim > 0:
        raise ComputationError(
            "normalization implemented for isolated singular points only")
    split = {}
    for v in sorted(sing.vertices, key=vkey):
        comps = s.ambient.link(v).connected_components()
        if len(comps) > 1:
            split[v] = comps

    def mapped(x):
        out = []
        for v in x:
            if v in split:
                rest = [u for u in x if u != v]
                if not rest:
                    return None  # bare vertex; its copies come from cofaces
                comp = next(i for i, c in enumerate(split[v]) if rest[0] in c)
                out.append((v, comp))
            else:
                out.append(v)
        return simplex(out)

    def map_sub(sub: SimplicialComplex, extra=()):
        simps = list(extra)
        for x in sub.simplices:
            m = mapped(x)
            if m is not None:
                simps.append(m)
        return SimplicialComplex(simps)

    copies = [((v, i),) for v in split for i in range(len(split[v]))]
    amb = map_sub(s.ambient, extra=copies)
    new_sing = [((v, i),) for v in split for i in range(len(split[v]))]
    new_sing += [(v,) for v in sing.vertices if v not in split]
    filt = {2: SimplicialComplex(new_sing, closed=True)}
    for k in range(3, s.dimension + 1):
        filt[k] = map_sub(s.F(k))
    return StratifiedComplex(amb, s.dimension, ends=map_sub(s.ends), filtration=filt)


def duality_report(s: StratifiedComplex, p: Perversity, q: Perversity) -> ComparisonReport:
    """Dimension form of Poincare duality for complementary perversities."""
    n = s.dimension
    pf, qf = _fit_perversity(p, n), _fit_perversity(q, n)
    if pf is not None and not is_complementary(pf, qf):
        raise ComputationError("perversities %s and %s are not complementary" % (p, q))
    rep = ComparisonReport("duality: I_pH_i vs I_qH^c_{n-i}")
    bm = ih_dims(s, pf, "borel_moore")
    cp = ih_dims(s, qf, "compact")
    for i in range(0, n + 1):
        rep.add("degree %d" % i, bm.get(i, 0), cp.get(n - i, 0))
    even = [k for k in range(2, n + 1) if s.stratum_nonempty(k)]
    if even and all(k % 2 == 0 for k in even) and n >= 2:
        m = make_standard("lower_middle", n)
        mb = ih_dims(s, m, "borel_moore")
        mc = ih_dims(s, m, "compact")
        for i in range(0, n + 1):
            rep.add("middle degree %d" % i, mb.get(i, 0), mc.get(n - i, 0))
        rep.notes.append("even-codimension strata: middle self-duality checked")
    return rep


def is_normal(s: StratifiedComplex) -> bool:
    """Link-connectivity normality at every singular vertex."""
    sing_v = s.F(2).vertices
    for v in sorted(sing_v, key=vkey):
        link = s.ambient.link(v)
        inner = link.full_subcomplex(link.vertices - sing_v)
        if len(inner.connected_components()) > 1:
            return False
    return True


def is_orientable(s: StratifiedComplex) -> bool:
    """Greedy orientation propagation over the top-dimensional simplices."""
    n = s.dimension
    top = s.ambient.of_dim(n)
    by_face = {}
    for t in top:
        for f, sign in faces_with_signs(t):
            by_face.setdefault(f, []).append((t, sign))
    orient = {}
    for start in top:
        if start in orient:
            continue
        orient[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for f, sign in faces_with_signs(t):
                if f in s.ends or f in s.F(2):
                    continue
                for t2, sign2 in by_face.get(f, []):
                    if t2 == t:
                        continue
                    want = -sign * orient[t] * sign2
                    if t2 not in orient:
                        orient[t2] = want
                        stack.append(t2)
                    elif orient[t2] != want:
                        return False
    return True


def extremal_comparison(s: StratifiedComplex) -> ComparisonReport:
    """Top perversity against Borel-Moore homology; zero against cohomology.

    Cohomology dimensions over the rationals equal compact homology
    dimensions in the matching degree, which is how the right-hand side
    is computed.
    """
    if not is_normal(s):
        raise ComputationError("complex is not normal; comparison does not apply")
    if not is_orientable(s):
        raise ComputationError("complex is not orientable; comparison does not apply")
    n = s.dimension
    rep = ComparisonReport("extremal perversities")
    top_ih = ih_dims(s, make_standard("top", max(n, 2)), "borel_moore")
    hbm = _homology_bm(s)
    for i in range(0, n + 1):
        rep.add("I_t degree %d" % i, top_ih.get(i, 0), hbm.get(i, 0))
    zero_ih = ih_dims(s, make_standard("zero", max(n, 2)), "borel_moore")
    hc = _homology_c(s)
    for i in range(0, n + 1):
        rep.add("I_0 deg %d vs H^%d" % (i, n - i), zero_ih.get(i, 0), hc.get(n - i, 0))
    return rep


def _homology_bm(s):
    from .complexes import homology_dims
    return homology_dims(s, "borel_moore")


def _homology_c(s):
    from .complexes import homology_dims
    return homology_dims(s, "compact")
