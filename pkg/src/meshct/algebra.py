"""Representations of quivers with length-two relations over an exact field.

The main entry points are :func:`build_algebra`, :func:`projective`,
:func:`injective`, :func:`hom_space`, :func:`ext`, :func:`decompose`,
:func:`twist` and :func:`loewy_diagram`.

Conventions
-----------
An arrow ``a: u -> v`` acts by a ``dims[v] x dims[u]`` matrix.  Paths are
tuples of arrow ids in the order they are traversed, so the path
``(a, b)`` acts as ``M_b @ M_a``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy

from . import linalg as la
from .linalg import Field
from .translation import BoundQuiver


class RelationViolation(ValueError):
    pass


class NonTerminatingGrowth(RuntimeError):
    pass


class DecompositionUnstable(RuntimeError):
    pass


class ResolutionCapExceeded(RuntimeError):
    pass


def _mm(a, b, field, rows, cols):
    if rows == 0:
        return []
    if cols == 0:
        return [[] for _ in range(rows)]
    return la.matmul(a, b, field, ncols=cols)


class Representation:
    """A module over a bound quiver, given by vertex dimensions and arrow matrices."""

    def __init__(self, quiver: BoundQuiver, field: Field, dims: dict, maps: dict,
                 check: bool = True, name: str | None = None):
        self.quiver = quiver
        self.field = field
        self.dims = {v: int(dims.get(v, 0)) for v in quiver.vertices}
        self.maps = {}
        for a in quiver.arrows:
            m = maps.get(a.id)
            r, c = self.dims[a.tgt], self.dims[a.src]
            if m is None:
                m = la.zeros(r, c)
            if len(m) != r or any(len(row) != c for row in m):
                raise ValueError(f"arrow {a.id} has the wrong shape")
            self.maps[a.id] = [[field.reduce(x) for x in row] for row in m]
        self.name = name
        if check:
            self.check_relations()

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> dict:
        return {v: d for v, d in self.dims.items() if d}

    def path_matrix(self, path) -> list:
        """Matrix of a path given as a tuple of arrow ids."""
        q = self.quiver
        first = q.arrow(path[0])
        cur = la.identity(self.dims[first.src])
        rows = self.dims[first.src]
        for aid in path:
            a = q.arrow(aid)
            cur = _mm(self.maps[aid], cur, self.field, self.dims[a.tgt], rows)
        return cur

    def check_relations(self) -> None:
        f = self.field
        for s, t, terms in self.quiver.relations:
            r, c = self.dims[t], self.dims[s]
            if r == 0 or c == 0:
                continue
            total = la.zeros(r, c)
            for coef, (a1, a2) in terms:
                mid = self.dims[self.quiver.arrow(a1).tgt]
                prod = _mm(self.maps[a2], self.maps[a1], f, r, c) if mid else la.zeros(r, c)
                for i in range(r):
                    for j in range(c):
                        total[i][j] += coef * prod[i][j]
            if not la.is_zero_matrix(total, f):
                raise RelationViolation(f"relation {s} -> {t} fails")

    def __repr__(self):
        dv = ", ".join(f"{v}:{d}" for v, d in self.dims.items() if d)
        return f"Representation({self.name or ''} {dv})"

    # serialization

    def to_json_dict(self) -> dict:
        return {
            "dims": {str(_vkey(v)): d for v, d in self.dims.items()},
            "arrows": {aid: [[_num(x) for x in row] for row in m] for aid, m in self.maps.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json_dict(cls, data: dict, quiver: BoundQuiver, field: Field) -> "Representation":
        lookup = {str(_vkey(v)): v for v in quiver.vertices}
        dims = {lookup[k]: int(n) for k, n in data["dims"].items()}
        maps = {aid: [[field(x) if not isinstance(x, str) else field(x) for x in row] for row in m]
                for aid, m in data["arrows"].items()}
        return cls(quiver, field, dims, maps)


def _vkey(v):
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return v


def _num(x):
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        return f"{x.numerator}/{x.denominator}"
    return x


@dataclass
class Morphism:
    """A module map given by one matrix per vertex."""

    source: Representation
    target: Representation
    blocks: dict

    @property
    def field(self) -> Field:
        return self.source.field

    def vector(self) -> list:
        out = []
        for v in self.source.quiver.vertices:
            for row in self.blocks[v]:
                out.extend(row)
        return out

    def compose_after(self, other: "Morphism") -> "Morphism":
        """``self ∘ other``."""
        f = self.field
        blocks = {}
        for v in self.source.quiver.vertices:
            blocks[v] = _mm(self.blocks[v], other.blocks[v], f,
                            self.target.dims[v], other.source.dims[v])
        return Morphism(other.source, self.target, blocks)

    def is_zero(self) -> bool:
        return all(la.is_zero_matrix(b, self.field) for b in self.blocks.values())

    def is_iso(self) -> bool:
        f = self.field
        for v in self.source.quiver.vertices:
            n, m = self.target.dims[v], self.source.dims[v]
            if n != m:
                return False
            if n and la.rank(self.blocks[v], n, f) != n:
                return False
        return True

    def check(self) -> None:
        f = self.field
        M, N = self.source, self.target
        for a in M.quiver.arrows:
            u, w = a.src, a.tgt
            lhs = _mm(self.blocks[w], M.maps[a.id], f, N.dims[w], M.dims[u])
            rhs = _mm(N.maps[a.id], self.blocks[u], f, N.dims[w], M.dims[u])
            if any(f.reduce(x - y) for r1, r2 in zip(lhs, rhs) for x, y in zip(r1, r2)):
                raise ValueError(f"morphism does not commute with {a.id}")


def combine(maps: list, coeffs: list, source: Representation, target: Representation) -> Morphism:
    f = source.field
    blocks = {}
    for v in source.quiver.vertices:
        r, c = target.dims[v], source.dims[v]
        acc = la.zeros(r, c)
        for m, k in zip(maps, coeffs):
            if not k:
                continue
            b = m.blocks[v]
            for i in range(r):
                for j in range(c):
                    if b[i][j]:
                        acc[i][j] = f.reduce(acc[i][j] + k * b[i][j])
        blocks[v] = acc
    return Morphism(source, target, blocks)


def identity_morphism(M: Representation) -> Morphism:
    return Morphism(M, M, {v: la.identity(d) for v, d in M.dims.items()})


def zero_morphism(M: Representation, N: Representation) -> Morphism:
    return Morphism(M, N, {v: la.zeros(N.dims[v], M.dims[v]) for v in M.quiver.vertices})


def morphism_from_vector(vec, source: Representation, target: Representation) -> Morphism:
    blocks = {}
    pos = 0
    for v in source.quiver.vertices:
        r, c = target.dims[v], source.dims[v]
        blocks[v] = [list(vec[pos + i * c: pos + (i + 1) * c]) for i in range(r)]
        pos += r * c
    return Morphism(source, target, blocks)


# ---------------------------------------------------------------------------
# projectives via graded reduction


@dataclass
class GradedBasis:
    """Basis of a graded projective: one entry ``(vertex, word, parent, arrow)`` per element."""

    elements: list
    layers: list
    index_at: dict  # global element index -> position within its vertex space


def graded_projective(quiver: BoundQuiver, v, field: Field, cap: int = 200):
    """The projective ``P(v)`` of paths starting at ``v`` modulo relations.

    Layer ``d+1`` is the quotient of ``arrows ⊗ layer d`` by the images of
    the relations applied to layer ``d-1``.  Returns the representation and
    its :class:`GradedBasis`.
    """
    # layer entries: (vertex, word, parent_global_index, arrow_id)
    elements = [(v, (), None, None)]
    layers = [[0]]
    acts = []  # acts[d][arrow_id][j_global] -> {k_global: coeff}
    rel_by_source = {}
    for s, t, terms in quiver.relations:
        rel_by_source.setdefault(s, []).append((t, terms))
    out_arrows = {x: quiver.arrows_from(x) for x in quiver.vertices}
    d = 0
    while True:
        if d > cap:
            raise NonTerminatingGrowth(f"projective at {v} exceeds {cap} layers")
        cur = layers[d]
        cands: dict = {}
        for j in cur:
            x = elements[j][0]
            for a in out_arrows[x]:
                cands.setdefault(a.tgt, []).append((a.id, j))
        rels: dict = {}
        if d >= 1:
            prev_act = acts[d - 1]
            for q in layers[d - 1]:
                x = elements[q][0]
                for t, terms in rel_by_source.get(x, []):
                    if t not in cands:
                        continue
                    col = {c: i for i, c in enumerate(cands[t])}
                    vec = [0] * len(cands[t])
                    for coef, (a1, a2) in terms:
                        for j, c in prev_act.get(a1, {}).get(q, {}).items():
                            key = (a2, j)
                            if key in col:
                                vec[col[key]] += coef * c
                    if any(field.reduce(y) for y in vec):
                        rels.setdefault(t, []).append(vec)
        new_layer = []
        act: dict = {}
        for t in quiver.vertices:
            if t not in cands:
                continue
            cl = cands[t]
            red, piv = la.rref(rels.get(t, []), len(cl), field)
            pivrow = dict(zip(piv, red))
            newidx = {}
            for ci, (aid, j) in enumerate(cl):
                if ci in pivrow:
                    continue
                newidx[ci] = len(elements)
                elements.append((t, elements[j][1] + (aid,), j, aid))
                new_layer.append(newidx[ci])
            for ci, (aid, j) in enumerate(cl):
                if ci in pivrow:
                    row = pivrow[ci]
                    img = {newidx[k]: field.reduce(-row[k]) for k in newidx if row[k]}
                else:
                    img = {newidx[ci]: 1}
                act.setdefault(aid, {})[j] = img
        acts.append(act)
        if not new_layer:
            break
        layers.append(new_layer)
        d += 1
    # assemble vertex spaces in global order
    pos = {}
    dims = {x: 0 for x in quiver.vertices}
    for g, (x, _, _, _) in enumerate(elements):
        pos[g] = dims[x]
        dims[x] += 1
    maps = {a.id: la.zeros(dims[a.tgt], dims[a.src]) for a in quiver.arrows}
    for act in acts:
        for aid, cols in act.items():
            m = maps[aid]
            for j, img in cols.items():
                for k, c in img.items():
                    m[pos[k]][pos[j]] = c
    rep = Representation(quiver, field, dims, maps, check=True)
    return rep, GradedBasis(elements, layers, pos)


def _graded_dual(quiver: BoundQuiver, x, field: Field, cap: int = 200):
    """``D Hom(-, x)``: the injective at ``x`` built from the opposite quiver."""
    op = quiver.opposite()
    P, basis = graded_projective(op, x, field, cap)
    maps = {}
    for a in quiver.arrows:
        maps[a.id] = la.transpose(P.maps[a.id], ncols=P.dims[a.tgt]) if P.dims[a.src] else \
            la.zeros(P.dims[a.tgt], 0)
    return Representation(quiver, field, dict(P.dims), maps), basis


def injective_of_quiver(quiver: BoundQuiver, x, field: Field, cap: int = 200) -> Representation:
    return _graded_dual(quiver, x, field, cap)[0]


def projective_of_quiver(quiver: BoundQuiver, v, field: Field, cap: int = 200) -> Representation:
    return graded_projective(quiver, v, field, cap)[0]


def simple(quiver: BoundQuiver, v, field: Field) -> Representation:
    return Representation(quiver, field, {v: 1}, {})


# ---------------------------------------------------------------------------
# algebras


@dataclass
class AlgebraTable:
    """A basic algebra presented by a bound quiver, with a graded basis."""

    quiver: BoundQuiver
    field: Field
    projectives: dict
    bases: dict
    basis: list = dc_field(default_factory=list)
    mult: dict = dc_field(default_factory=dict)
    idempotents: dict = dc_field(default_factory=dict)
    presentation: object = None
    _injectives: dict = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def loewy_length(self) -> int:
        return max(len(b.layers) for b in self.bases.values())

    def projective(self, v) -> Representation:
        return self.projectives[v]

    def injective(self, v) -> Representation:
        if v not in self._injectives:
            self._injectives[v] = injective_of_quiver(self.quiver, v, self.field)
        return self._injectives[v]

    def simple(self, v) -> Representation:
        return simple(self.quiver, v, self.field)

    def multiply(self, i: int, j: int) -> dict:
        """Structure constants of ``basis[i] * basis[j]`` (path ``j`` then path ``i``)."""
        return self.mult.get((i, j), {})


def build_algebra(presentation, field: Field | None = None, cap: int | None = None) -> AlgebraTable:
    """Basis and multiplication table of the algebra of a bound quiver.

    ``presentation`` is an :class:`~meshct.translation.OrbitPresentation` or
    a :class:`~meshct.translation.BoundQuiver`.
    """
    field = field or la.default_field()
    quiver = presentation.quiver() if hasattr(presentation, "quiver") else presentation
    if cap is None:
        spec = getattr(presentation, "spec", None)
        cap = 6 * spec.coxeter_copies if spec is not None else 200
    projectives, bases = {}, {}
    for v in quiver.vertices:
        P, b = graded_projective(quiver, v, field, cap)
        projectives[v] = P
        bases[v] = b
    table = AlgebraTable(quiver, field, projectives, bases,
                         presentation=presentation if hasattr(presentation, "spec") else None)
    index = {}
    for v in quiver.vertices:
        for g, (x, word, _, _) in enumerate(bases[v].elements):
            index[(v, g)] = len(table.basis)
            table.basis.append((v, x, word))
        table.idempotents[v] = index[(v, 0)]
    # product p * q for q in e_x Λ e_v and p starting at x
    for v in quiver.vertices:
        P, b = projectives[v], bases[v]
        for gq, (x, _, _, _) in enumerate(b.elements):
            vec = [0] * P.dims[x]
            vec[b.index_at[gq]] = 1
            images = _word_images(projectives[x], bases[x], P, x, vec)
            for gp, img_vertex, img in images:
                consts = {}
                for g2, (y, _, _, _) in enumerate(b.elements):
                    if y == img_vertex:
                        c = img[b.index_at[g2]]
                        if c:
                            consts[index[(v, g2)]] = c
                if consts:
                    table.mult[(index[(x, gp)], index[(v, gq)])] = consts
    return table


def _word_images(Px: Representation, bx: GradedBasis, M: Representation, x, vec):
    """Images of ``vec ∈ M_x`` under every basis path of ``P(x)``.

    Returns a list ``(element_index, vertex, image_vector)``.
    """
    out = []
    imgs = {}
    for g, (y, word, parent, aid) in enumerate(bx.elements):
        if parent is None:
            img = list(vec)
        else:
            img = la.matvec(M.maps[aid], imgs[parent], M.field)
        imgs[g] = img
        out.append((g, y, img))
    return out


# ---------------------------------------------------------------------------
# Hom


def hom_space(M: Representation, N: Representation) -> list:
    """A basis of Hom(M, N)."""
    f = M.field
    verts = M.quiver.vertices
    offset = {}
    n = 0
    for v in verts:
        offset[v] = n
        n += N.dims[v] * M.dims[v]
    if n == 0:
        return []
    rows = []
    for a in M.quiver.arrows:
        u, w = a.src, a.tgt
        du_m, dw_m = M.dims[u], M.dims[w]
        du_n, dw_n = N.dims[u], N.dims[w]
        if du_m == 0 or dw_n == 0:
            continue
        Ma, Na = M.maps[a.id], N.maps[a.id]
        ou, ow = offset[u], offset[w]
        # entry (r, c) of  N_a f_u - f_w M_a
        for r in range(dw_n):
            Nar = Na[r]
            for c in range(du_m):
                row = [0] * n
                for k in range(du_n):
                    x = Nar[k]
                    if x:
                        row[ou + k * du_m + c] += x
                for k in range(dw_m):
                    y = Ma[k][c]
                    if y:
                        row[ow + r * dw_m + k] -= y
                if any(row):
                    rows.append(row)
    sol = la.nullspace(rows, n, f)
    return [morphism_from_vector(vec, M, N) for vec in sol]


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_space(M, N))


# ---------------------------------------------------------------------------
# sub, quotient, sums


def submodule(M: Representation, spaces: dict):
    """Submodule spanned by per-vertex bases (lists of vectors); returns (S, inclusion)."""
    f = M.field
    bases = {v: la.span_basis(spaces.get(v, []), M.dims[v], f) for v in M.quiver.vertices}
    dims = {v: len(b) for v, b in bases.items()}
    maps = {}
    for a in M.quiver.arrows:
        src, tgt = bases[a.src], bases[a.tgt]
        imgs = [la.matvec(M.maps[a.id], vec, f) for vec in src]
        coords = la.solve_in_basis(tgt, imgs, M.dims[a.tgt], f) if imgs else []
        if coords is None:
            raise ValueError("subspace is not a submodule")
        maps[a.id] = la.transpose(coords, ncols=len(tgt)) if coords else la.zeros(len(tgt), 0)
    S = Representation(M.quiver, f, dims, maps, check=False)
    incl = Morphism(S, M, {v: la.transpose(bases[v], ncols=M.dims[v]) if bases[v]
                           else la.zeros(M.dims[v], 0) for v in M.quiver.vertices})
    return S, incl


def _quotient_projection(sub, dim, field):
    """(complement indices, projection matrix) for ``K^dim / span(sub)``."""
    red, piv = la.rref(sub, dim, field)
    pivset = set(piv)
    comp = [c for c in range(dim) if c not in pivset]
    cpos = {c: i for i, c in enumerate(comp)}
    P = la.zeros(len(comp), dim)
    for c in comp:
        P[cpos[c]][c] = 1
    for row, pc in zip(red, piv):
        for c in comp:
            if row[c]:
                P[cpos[c]][pc] = field.reduce(-row[c])
    return comp, P


def quotient(M: Representation, spaces: dict):
    """Quotient of ``M`` by the submodule spanned by ``spaces``; returns (Q, projection)."""
    f = M.field
    proj = {}
    comps = {}
    for v in M.quiver.vertices:
        comps[v], proj[v] = _quotient_projection(spaces.get(v, []), M.dims[v], f)
    dims = {v: len(c) for v, c in comps.items()}
    maps = {}
    for a in M.quiver.arrows:
        cols = []
        for c in comps[a.src]:
            col = [row[c] for row in M.maps[a.id]]
            cols.append(la.matvec(proj[a.tgt], col, f))
        maps[a.id] = la.transpose(cols, ncols=dims[a.tgt]) if cols else la.zeros(dims[a.tgt], 0)
    Q = Representation(M.quiver, f, dims, maps, check=False)
    return Q, Morphism(M, Q, proj)


def kernel(phi: Morphism):
    M = phi.source
    f = M.field
    spaces = {}
    for v in M.quiver.vertices:
        if M.dims[v]:
            spaces[v] = la.nullspace(phi.blocks[v], M.dims[v], f)
    return submodule(M, spaces)


def image_spaces(phi: Morphism) -> dict:
    N = phi.target
    out = {}
    for v in N.quiver.vertices:
        if phi.source.dims[v] and N.dims[v]:
            out[v] = la.transpose(phi.blocks[v])
    return out


def cokernel(phi: Morphism):
    return quotient(phi.target, image_spaces(phi))


def image(phi: Morphism):
    return submodule(phi.target, image_spaces(phi))


def direct_sum(mods: list):
    """Direct sum with its inclusions and projections."""
    if not mods:
        raise ValueError("empty direct sum")
    q, f = mods[0].quiver, mods[0].field
    dims = {v: sum(m.dims[v] for m in mods) for v in q.vertices}
    maps = {}
    for a in q.arrows:
        big = la.zeros(dims[a.tgt], dims[a.src])
        r0 = c0 = 0
        for m in mods:
            blk = m.maps[a.id]
            for i, row in enumerate(blk):
                for j, x in enumerate(row):
                    big[r0 + i][c0 + j] = x
            r0 += m.dims[a.tgt]
            c0 += m.dims[a.src]
        maps[a.id] = big
    S = Representation(q, f, dims, maps, check=False)
    incs, projs = [], []
    offs = {v: 0 for v in q.vertices}
    for m in mods:
        ib, pb = {}, {}
        for v in q.vertices:
            d, o = m.dims[v], offs[v]
            ib[v] = [[1 if (i == o + j) else 0 for j in range(d)] for i in range(dims[v])]
            pb[v] = [[1 if (j == o + i) else 0 for j in range(dims[v])] for i in range(d)]
            offs[v] += d
        incs.append(Morphism(m, S, ib))
        projs.append(Morphism(S, m, pb))
    return S, incs, projs


def map_into_sum(maps: list, S: Representation) -> Morphism:
    """Column map ``X -> ⊕ T_j`` from the components ``X -> T_j``."""
    X = maps[0].source
    blocks = {}
    for v in X.quiver.vertices:
        rows = []
        for m in maps:
            rows.extend(m.blocks[v])
        blocks[v] = rows if rows else la.zeros(0, X.dims[v])
    return Morphism(X, S, blocks)


def map_from_sum(maps: list, S: Representation) -> Morphism:
    """Row map ``⊕ T_j -> X`` from the components ``T_j -> X``."""
    X = maps[0].target
    blocks = {}
    for v in X.quiver.vertices:
        rows = [[] for _ in range(X.dims[v])]
        for m in maps:
            for i, row in enumerate(m.blocks[v]):
                rows[i].extend(row)
        blocks[v] = rows
    return Morphism(S, X, blocks)


# ---------------------------------------------------------------------------
# radical, socle, covers, syzygies


def radical_spaces(M: Representation) -> dict:
    out = {}
    for v in M.quiver.vertices:
        vecs = []
        for a in M.quiver.arrows_into(v):
            if M.dims[a.src]:
                vecs.extend(la.transpose(M.maps[a.id]))
        out[v] = la.span_basis(vecs, M.dims[v], M.field) if M.dims[v] else []
    return out


def socle_spaces(M: Representation) -> dict:
    out = {}
    for v in M.quiver.vertices:
        if not M.dims[v]:
            out[v] = []
            continue
        rows = []
        for a in M.quiver.arrows_from(v):
            rows.extend(M.maps[a.id])
        out[v] = la.nullspace(rows, M.dims[v], M.field)
    return out


def top_dims(M: Representation) -> dict:
    rad = radical_spaces(M)
    return {v: M.dims[v] - len(rad[v]) for v in M.quiver.vertices}


def socle_dims(M: Representation) -> dict:
    return {v: len(s) for v, s in socle_spaces(M).items()}


class ProjectiveSource:
    """Supplies graded projectives for a quiver, cached per vertex."""

    def __init__(self, quiver: BoundQuiver, field: Field, cap: int = 200):
        self.quiver = quiver
        self.field = field
        self.cap = cap
        self._cache = {}

    def get(self, v):
        if v not in self._cache:
            self._cache[v] = graded_projective(self.quiver, v, self.field, self.cap)
        return self._cache[v]


_SOURCES: dict = {}


def projective_source(quiver: BoundQuiver, field: Field) -> ProjectiveSource:
    key = (id(quiver), field)
    src = _SOURCES.get(key)
    if src is None or src.quiver is not quiver:
        src = ProjectiveSource(quiver, field)
        _SOURCES[key] = src
    return src


def projective_cover(M: Representation, source: ProjectiveSource | None = None):
    """Minimal projective cover ``P -> M``; returns (P, map, list of top vertices)."""
    f = M.field
    source = source or projective_source(M.quiver, f)
    rad = radical_spaces(M)
    gens = []
    for v in M.quiver.vertices:
        if M.dims[v] == 0:
            continue
        for vec in la.complement_basis(rad[v], M.dims[v], f):
            gens.append((v, vec))
    if not gens:
        return None, None, []
    pieces, comps = [], []
    for v, vec in gens:
        P, b = source.get(v)
        pieces.append(P)
        blocks = {x: la.zeros(M.dims[x], P.dims[x]) for x in M.quiver.vertices}
        for g, y, img in _word_images(P, b, M, v, vec):
            col = b.index_at[g]
            for i, c in enumerate(img):
                blocks[y][i][col] = c
        comps.append(blocks)
    S, incs, projs = direct_sum(pieces)
    blocks = {}
    for x in M.quiver.vertices:
        rows = [[] for _ in range(M.dims[x])]
        for bl in comps:
            for i in range(M.dims[x]):
                rows[i].extend(bl[x][i])
        blocks[x] = rows
    return S, Morphism(S, M, blocks), [v for v, _ in gens]


def syzygy(M: Representation, source: ProjectiveSource | None = None):
    """First syzygy ``ΩM`` and the cover data ``(P, cover_map, tops)``."""
    P, pi, tops = projective_cover(M, source)
    if P is None:
        return Representation(M.quiver, M.field, {}, {}), (None, None, [])
    K, _ = kernel(pi)
    return K, (P, pi, tops)


def is_projective(M: Representation, source: ProjectiveSource | None = None) -> bool:
    P, _, _ = projective_cover(M, source)
    return P is None or P.dim == M.dim


@dataclass
class ExtResult:
    k: int
    dim: int
    syzygy: Representation
    cover_tops: list


def ext(k: int, M: Representation, N: Representation, source: ProjectiveSource | None = None,
        cap: int = 3) -> ExtResult:
    """``Ext^k(M, N)`` via a minimal projective resolution of ``M``.

    Uses ``dim Ext^1(X, N) = dim Hom(ΩX, N) - dim Hom(P_0, N) + dim Hom(X, N)``
    with ``X = Ω^{k-1} M``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > cap:
        raise ResolutionCapExceeded(f"Ext^{k} beyond cap {cap}")
    X = M
    for _ in range(k - 1):
        X, _ = syzygy(X, source)
    omega, (P, _, tops) = syzygy(X, source)
    if P is None:
        return ExtResult(k, 0, omega, [])
    hom_p = sum(N.dims[v] for v in tops)
    d = hom_dim(omega, N) - hom_p + hom_dim(X, N)
    return ExtResult(k, d, omega, tops)


def ext_dim(k: int, M, N, source=None) -> int:
    return ext(k, M, N, source, cap=max(3, k)).dim


def ext1_from_syzygy(X, omega, tops, N) -> int:
    """``dim Ext^1(X, N)`` reusing a precomputed syzygy of ``X``."""
    if not tops:
        return 0
    return hom_dim(omega, N) - sum(N.dims[v] for v in tops) + hom_dim(X, N)


# ---------------------------------------------------------------------------
# endomorphisms, locality, decomposition


def _block_trace_product(x: Morphism, y: Morphism) -> object:
    f = x.field
    tot = 0
    for v, bx in x.blocks.items():
        by = y.blocks[v]
        n = len(bx)
        for i in range(n):
            for k in range(n):
                if bx[i][k] and by[k][i]:
                    tot += bx[i][k] * by[k][i]
    return f.reduce(tot)


def radical_of_endomorphisms(basis: list) -> list:
    """Coefficient vectors spanning ``rad End(M)`` (trace-form radical)."""
    if not basis:
        return []
    f = basis[0].field
    gram = [[_block_trace_product(x, y) for y in basis] for x in basis]
    return la.nullspace(gram, len(basis), f)


def is_local(M: Representation, basis: list | None = None) -> bool:
    basis = basis if basis is not None else hom_space(M, M)
    if M.dim == 0:
        return False
    if len(basis) == 1:
        return True
    return len(basis) - len(radical_of_endomorphisms(basis)) == 1


def is_indecomposable(M: Representation) -> bool:
    return is_local(M)


def _poly_eval(coeffs: list, psi: Morphism) -> Morphism:
    """Evaluate a polynomial (coefficients from highest degree) at ``psi``."""
    M = psi.source
    f = M.field
    acc = zero_morphism(M, M)
    ident = identity_morphism(M)
    for c in coeffs:
        acc = psi.compose_after(acc)
        if c:
            acc = combine([acc, ident], [1, c], M, M)
    return acc


def minimal_polynomial(psi: Morphism) -> list:
    """Monic minimal polynomial of an endomorphism, coefficients from highest degree."""
    M = psi.source
    f = M.field
    powers = [identity_morphism(M)]
    vecs = [powers[0].vector()]
    dim = len(vecs[0])
    while True:
        nxt = psi.compose_after(powers[-1])
        v = nxt.vector()
        coords = la.solve_in_basis(vecs, [v], dim, f)
        if coords is not None:
            c = coords[0]
            # psi^n = sum c_i psi^i  ->  t^n - sum c_i t^i
            return [1] + [f.reduce(-x) for x in reversed(c)]
        powers.append(nxt)
        vecs.append(v)


def _sympy_factor(coeffs: list, field: Field):
    t = sympy.Symbol("t")
    if field.p is None:
        expr = sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * t ** i
                   for i, c in enumerate(reversed(coeffs)))
        poly = sympy.Poly(expr, t, domain="QQ")
    else:
        poly = sympy.Poly([int(c) for c in coeffs], t, modulus=field.p)
    _, facs = poly.factor_list()
    out = []
    for g, e in facs:
        cs = g.all_coeffs()
        lead = cs[0]
        if field.p is None:
            vals = [Fraction(int(sympy.fraction(c / lead)[0]), int(sympy.fraction(c / lead)[1]))
                    for c in cs]
            vals = [field(x) for x in vals]
        else:
            inv = pow(int(lead) % field.p, -1, field.p)
            vals = [int(c) * inv % field.p for c in cs]
        out.append((vals, e))
    return out


def _poly_mul(a: list, b: list, field: Field) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = field.reduce(out[i + j] + x * y)
    return out


def split_once(M: Representation, rng: random.Random, basis: list | None = None):
    """Split ``M`` into two nonzero summands using a random endomorphism.

    Returns ``None`` if ``M`` is indecomposable, otherwise a pair of
    (submodule, inclusion) with ``M`` their direct sum.
    """
    basis = basis if basis is not None else hom_space(M, M)
    if is_local(M, basis):
        return None
    f = M.field
    for _ in range(40):
        coeffs = [rng.randint(-9, 9) for _ in basis]
        psi = combine(basis, coeffs, M, M)
        mp = minimal_polynomial(psi)
        facs = _sympy_factor(mp, f)
        if len(facs) < 2:
            continue
        g1, e1 = facs[0]
        p1 = [1]
        for _ in range(e1):
            p1 = _poly_mul(p1, g1, f)
        rest = [1]
        for g, e in facs[1:]:
            for _ in range(e):
                rest = _poly_mul(rest, g, f)
        A, ia = kernel(_poly_eval(p1, psi))
        B, ib = kernel(_poly_eval(rest, psi))
        if A.dim and B.dim and A.dim + B.dim == M.dim:
            return (A, ia), (B, ib)
    raise DecompositionUnstable("no splitting endomorphism found")


def decompose_full(M: Representation, seed: int = 0) -> list:
    """Indecomposable summands of ``M`` with inclusions into ``M``."""
    rng = random.Random(seed)
    out = []
    stack = [(M, identity_morphism(M))]
    while stack:
        X, inc = stack.pop()
        if X.dim == 0:
            continue
        parts = split_once(X, rng)
        if parts is None:
            out.append((X, inc))
            continue
        for Y, iy in parts:
            stack.append((Y, inc.compose_after(iy)))
    out.reverse()
    return out


def decompose(M: Representation, seed: int = 0, verify: bool = False) -> list:
    """Krull-Schmidt decomposition as ``[(indecomposable, multiplicity), ...]``."""
    parts = [X for X, _ in decompose_full(M, seed)]
    groups = group_isomorphic(parts)
    if verify:
        again = group_isomorphic([X for X, _ in decompose_full(M, seed + 1)])
        if sorted(n for _, n in groups) != sorted(n for _, n in again) or not all(
                any(is_isomorphic(X, Y) and n == m for Y, m in again) for X, n in groups):
            raise DecompositionUnstable("decompositions disagree between seeds")
    return groups


def group_isomorphic(mods: list) -> list:
    groups = []
    for X in mods:
        for g in groups:
            if is_isomorphic(g[0], X):
                g[1] += 1
                break
        else:
            groups.append([X, 1])
    return [(X, n) for X, n in groups]


def is_isomorphic(X: Representation, Y: Representation, seed: int = 0) -> bool:
    """Isomorphism test.

    For indecomposable ``X`` some basis pair ``g ∘ f`` is invertible iff
    ``X ≅ Y``; otherwise a few random elements of Hom(X, Y) are tried.
    """
    if X.dims != Y.dims:
        return False
    if X.dim == 0:
        return True
    H = hom_space(X, Y)
    if not H:
        return False
    rng = random.Random(seed)
    for _ in range(4):
        phi = combine(H, [rng.randint(-50, 50) for _ in H], X, Y)
        if phi.is_iso():
            return True
    if is_local(X):
        G = hom_space(Y, X)
        for f_ in H:
            for g in G:
                if g.compose_after(f_).is_iso():
                    return True
        return False
    # decomposable: compare decompositions
    dx = decompose(X, seed)
    dy = decompose(Y, seed)
    if len(dx) != len(dy):
        return False
    used = set()
    for A, n in dx:
        for j, (B, m) in enumerate(dy):
            if j not in used and n == m and is_isomorphic(A, B):
                used.add(j)
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# twist and Loewy diagrams


def twist(M: Representation, sigma_tilde, power: int = 1) -> Representation:
    """Relabel ``M`` along a quiver automorphism.

    ``sigma_tilde`` is an :class:`~meshct.translation.OrbitPresentation`
    (its σ̃) or a pair ``(vertex_map, arrow_map)``.  The twisted module has
    ``(σ̃M)_{σ(v)} = M_v`` and ``(σ̃M)_{σ̃(a)} = M_a``.
    """
    if hasattr(sigma_tilde, "sigma_tilde_vertices"):
        vmap, amap = sigma_tilde.sigma_tilde_vertices, sigma_tilde.sigma_tilde_arrows
    else:
        vmap, amap = sigma_tilde
    out = M
    n = power
    if n < 0:
        inv_v = {b: a for a, b in vmap.items()}
        inv_a = {b: a for a, b in amap.items()}
        vmap, amap, n = inv_v, inv_a, -n
    for _ in range(n):
        dims = {vmap[v]: d for v, d in out.dims.items()}
        maps = {amap[a]: m for a, m in out.maps.items()}
        out = Representation(out.quiver, out.field, dims, maps, check=False, name=None)
    return out


def twist_morphism(phi: Morphism, sigma_tilde, power: int = 1) -> Morphism:
    if hasattr(sigma_tilde, "sigma_tilde_vertices"):
        vmap = sigma_tilde.sigma_tilde_vertices
    else:
        vmap = sigma_tilde[0]
    src = twist(phi.source, sigma_tilde, power)
    tgt = twist(phi.target, sigma_tilde, power)
    blocks = dict(phi.blocks)
    n = power
    if n < 0:
        vmap = {b: a for a, b in vmap.items()}
        n = -n
    for _ in range(n):
        blocks = {vmap[v]: b for v, b in blocks.items()}
    return Morphism(src, tgt, blocks)


def socle_series(M: Representation) -> list:
    """Dimension vectors of the socle layers, socle first."""
    rows = []
    Q = M
    while Q.dim:
        soc = socle_spaces(Q)
        rows.append({v: len(s) for v, s in soc.items() if s})
        Q, _ = quotient(Q, soc)
    return rows


def radical_series(M: Representation) -> list:
    """Dimension vectors of the radical layers, top first."""
    rows = []
    X = M
    while X.dim:
        rad = radical_spaces(X)
        rows.append({v: X.dims[v] - len(rad[v]) for v in X.quiver.vertices
                     if X.dims[v] - len(rad[v])})
        X, _ = submodule(X, rad)
    return rows


def loewy_diagram(M: Representation) -> str:
    """Socle series rendered top row first, rows separated by " / "."""
    rows = socle_series(M)
    parts = []
    for row in reversed(rows):
        labels = []
        for v in sorted(row, key=_sort_key):
            labels.extend([str(_vkey(v))] * row[v])
        parts.append(" ".join(labels))
    return " / ".join(parts)


def _sort_key(v):
    return v if not isinstance(v, tuple) else tuple(v)


def parse_loewy(text: str) -> list:
    """Rows of a diagram string as multisets ``{label: count}``, top first."""
    rows = []
    for part in text.split("/"):
        row = {}
        for tok in part.split():
            row[tok] = row.get(tok, 0) + 1
        rows.append(row)
    return rows
