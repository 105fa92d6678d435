"""Equivariant cluster tilting modules: construction, approximation, mutation.

A :class:`CTModule` is a list of labelled indecomposable summands together
with their orbits under the twist ``γ``.  The start module has one summand
``T(v_i)`` for each vertex of the Auslander rectangle: the push-down of the
injective ``I((i, σ^i v))``, whose socle is the simple at ``v``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from . import algebra as alg
from . import linalg as la
from .linalg import Field
from .matrices import LabeledIntMatrix, OrbitPartitionSpec, fold_matrix, orbit_name
from .mesh import _rectangle_injective
from .translation import OrbitPresentation, lift, orbit_map, build_window

# γ is the σ̃-twist; the orientation below is fixed by the Ext-duality check
# dim Ext^1(Y, X) = dim Ext^1(X, γY) (see the tests).
GAMMA_DIRECTION = 1


class RigidityViolation(RuntimeError):
    pass


class NotInjective(RuntimeError):
    pass


class MutationAtProjective(ValueError):
    pass


class ResolutionCap(RuntimeError):
    pass


def gamma(M: alg.Representation, pres: OrbitPresentation, k: int = 1) -> alg.Representation:
    """The twist ``γ^k M``."""
    return alg.twist(M, pres, GAMMA_DIRECTION * k)


def gamma_morphism(phi: alg.Morphism, pres: OrbitPresentation, k: int = 1) -> alg.Morphism:
    return alg.twist_morphism(phi, pres, GAMMA_DIRECTION * k)


def summand_label(v, i: int) -> str:
    return f"{v}_{i}"


def next_label(label: str) -> str:
    """``1_1 -> 1_1@1 -> 1_1@2``."""
    base, _, gen = label.partition("@")
    return f"{base}@{int(gen or 0) + 1}"


def base_label(label: str) -> str:
    return label.partition("@")[0]


def label_key(label: str):
    """Sort key (level, vertex) of a summand label."""
    v, _, i = base_label(label).partition("_")
    return (int(i), int(v)) if v.isdigit() and i.isdigit() else (0, 0)


class CTModule:
    """A basic γ-equivariant module given by its labelled summands."""

    def __init__(self, pres: OrbitPresentation, field: Field, summands: list, orbits: list,
                 projective_flags: dict | None = None, cache: dict | None = None):
        self.pres = pres
        self.field = field
        self.quiver = pres.quiver()
        self.summands = list(summands)
        self._mods = dict(self.summands)
        self.orbits = [list(o) for o in orbits]
        self.source = alg.projective_source(self.quiver, field)
        self._hom = {} if cache is None else dict(cache.get("hom", {}))
        self._rad = {} if cache is None else dict(cache.get("rad", {}))
        self._syz = {} if cache is None else dict(cache.get("syz", {}))
        if projective_flags is None:
            projective_flags = {l: alg.is_projective(M, self.source) for l, M in self.summands}
        self.projective_flags = dict(projective_flags)

    # basic access

    @property
    def labels(self) -> list:
        return [l for l, _ in self.summands]

    def module(self, label) -> alg.Representation:
        return self._mods[label]

    def __len__(self):
        return len(self.summands)

    def partition(self) -> OrbitPartitionSpec:
        return OrbitPartitionSpec(self.orbits)

    def orbit_of(self, label) -> list:
        for o in self.orbits:
            if label in o:
                return o
        raise KeyError(label)

    def is_projective(self, label) -> bool:
        return self.projective_flags[label]

    @property
    def nonprojective_labels(self) -> list:
        return [l for l in self.labels if not self.projective_flags[l]]

    def orbit_names(self) -> list:
        return [orbit_name(o) for o in self.orbits]

    def total_module(self) -> alg.Representation:
        return alg.direct_sum([M for _, M in self.summands])[0]

    # cached homological data

    def hom(self, a, b) -> list:
        key = (a, b)
        if key not in self._hom:
            self._hom[key] = alg.hom_space(self._mods[a], self._mods[b])
        return self._hom[key]

    def rad(self, a, b) -> list:
        """Basis of the radical maps ``T_a -> T_b``."""
        if a != b:
            return self.hom(a, b)
        if a not in self._rad:
            basis = self.hom(a, a)
            coeffs = alg.radical_of_endomorphisms(basis)
            M = self._mods[a]
            self._rad[a] = [alg.combine(basis, c, M, M) for c in coeffs]
        return self._rad[a]

    def syzygy(self, label, k: int = 1):
        """``(Ω^k T, Ω^{k-1} T, tops)`` for the summand ``label``."""
        key = (label, k)
        if key not in self._syz:
            prev = self._mods[label] if k == 1 else self.syzygy(label, k - 1)[0]
            omega, (_, _, tops) = alg.syzygy(prev, self.source)
            self._syz[key] = (omega, prev, tops)
        return self._syz[key]

    def ext(self, k: int, a, b) -> int:
        """``dim Ext^k(T_a, T_b)``."""
        omega, prev, tops = self.syzygy(a, k)
        return alg.ext1_from_syzygy(prev, omega, tops, self._mods[b])

    def ext_against(self, k: int, a, N: alg.Representation) -> int:
        omega, prev, tops = self.syzygy(a, k)
        return alg.ext1_from_syzygy(prev, omega, tops, N)

    def cache(self, drop=()) -> dict:
        drop = set(drop)
        return {
            "hom": {k: v for k, v in self._hom.items() if not drop & set(k)},
            "rad": {k: v for k, v in self._rad.items() if k not in drop},
            "syz": {k: v for k, v in self._syz.items() if k[0] not in drop},
        }

    # checks

    def rigidity_failures(self, first=None) -> list:
        """Pairs with ``Ext^1 != 0``; γ-invariance lets the first entry run over orbit heads."""
        heads = first if first is not None else [o[0] for o in self.orbits]
        bad = []
        for a in heads:
            for b in self.labels:
                if self.ext(1, a, b):
                    bad.append((a, b))
                if a != b and first is not None and self.ext(1, b, a):
                    bad.append((b, a))
        return bad

    def is_rigid(self) -> bool:
        return not self.rigidity_failures()

    def equivariance_failures(self) -> list:
        bad = []
        for o in self.orbits:
            for k, l in enumerate(o):
                nxt = o[(k + 1) % len(o)]
                if not alg.is_isomorphic(gamma(self._mods[l], self.pres), self._mods[nxt]):
                    bad.append((l, nxt))
        return bad

    def basic_failures(self) -> list:
        bad = []
        labs = self.labels
        for i, a in enumerate(labs):
            for b in labs[i + 1:]:
                if self._mods[a].dims == self._mods[b].dims and alg.is_isomorphic(
                        self._mods[a], self._mods[b]):
                    bad.append((a, b))
        return bad

    # output

    def to_json_dict(self, seed: int | None = None) -> dict:
        return {
            "type": self.pres.spec.folded_type,
            "field": self.field.name,
            "seed": seed,
            "summands": [
                {
                    "label": l,
                    "projective": self.projective_flags[l],
                    "dims": {str(v): d for v, d in M.dims.items()},
                    "loewy": alg.loewy_diagram(M),
                }
                for l, M in self.summands
            ],
            "orbits": [{"name": orbit_name(o), "members": o} for o in self.orbits],
            "orbit_count": len(self.orbits),
        }


def pushdown_injective(pres: OrbitPresentation, x, field: Field) -> alg.Representation:
    """Push-down of the rectangle injective ``I(x)`` to the folded quiver."""
    spec = pres.spec
    I = _rectangle_injective(spec, tuple(x), field)
    offsets, dims = {}, {v: 0 for v in spec.base_vertices}
    for y in I.quiver.vertices:
        d = I.dims[y]
        if d:
            w = orbit_map(spec, y)
            offsets[y] = dims[w]
            dims[w] += d
    maps = {a.id: la.zeros(dims[a.tgt], dims[a.src]) for a in pres.folded_arrows}
    for a in I.quiver.arrows:
        if not (I.dims[a.src] and I.dims[a.tgt]):
            continue
        fa = pres.fold_arrow(a.id)
        blk = I.maps[a.id]
        r0, c0 = offsets[a.tgt], offsets[a.src]
        big = maps[fa]
        for i, row in enumerate(blk):
            for j, val in enumerate(row):
                if val:
                    big[r0 + i][c0 + j] = val
    return alg.Representation(pres.quiver(), field, dims, maps, check=True)


def gamma_orbit_vertices(pres: OrbitPresentation, v) -> list:
    spec = pres.spec
    out = [v]
    w = spec.sigma_power(v, GAMMA_DIRECTION)
    while w != v:
        out.append(w)
        w = spec.sigma_power(w, GAMMA_DIRECTION)
    return out


def start_module(pres: OrbitPresentation, field: Field | None = None,
                 verify: bool = True) -> CTModule:
    """Push-down of the injectives of the Auslander rectangle, one summand per vertex."""
    field = field or la.default_field()
    spec = pres.spec
    m = spec.coxeter_copies
    summands, flags = [], {}
    for i in range(m):
        for v in spec.base_vertices:
            M = pushdown_injective(pres, lift(spec, v, i), field)
            M.name = summand_label(v, i)
            summands.append((summand_label(v, i), M))
            flags[summand_label(v, i)] = None
    orbits = []
    for i in range(m):
        seen = set()
        for v in spec.base_vertices:
            if v in seen:
                continue
            orb = gamma_orbit_vertices(pres, v)
            seen.update(orb)
            orbits.append([summand_label(w, i) for w in orb])
    T = CTModule(pres, field, summands, orbits)
    if verify:
        bad = T.rigidity_failures()
        if bad:
            raise RigidityViolation(f"start module not rigid at {bad[:3]}")
        bad = T.equivariance_failures()
        if bad:
            raise RigidityViolation(f"start module not γ-equivariant at {bad[:3]}")
    return T


# ---------------------------------------------------------------------------
# approximations


@dataclass
class Approximation:
    """A map between ``X`` and a direct sum of summands of ``T``."""

    components: list  # [(label, Morphism)] in codomain/domain order
    sum_module: alg.Representation | None
    morphism: alg.Morphism | None

    def multiplicities(self) -> dict:
        out = {}
        for l, _ in self.components:
            out[l] = out.get(l, 0) + 1
        return out


def _vectors(maps):
    return [m.vector() for m in maps]


def _choose_complement(sub_vecs, cand_maps, field, rng):
    if not cand_maps:
        return []
    dim = len(cand_maps[0].vector())
    idx = la.extend_complement(sub_vecs, _vectors(cand_maps), dim, field)
    chosen = [cand_maps[i] for i in idx]
    if rng is not None and chosen:
        # a random change of complement gives an equally minimal approximation
        src, tgt = chosen[0].source, chosen[0].target
        mixed = []
        pool = chosen + [alg.morphism_from_vector(v, src, tgt) for v in sub_vecs]
        while True:
            coeffs = [[rng.randint(-3, 3) for _ in pool] for _ in chosen]
            for row, k in zip(coeffs, range(len(chosen))):
                row[k] += 7
            mixed = [alg.combine(pool, c, src, tgt) for c in coeffs]
            if la.rank(sub_vecs + _vectors(mixed), dim, field) == la.rank(
                    sub_vecs, dim, field) + len(chosen):
                break
        chosen = mixed
    return chosen


def left_approximation(T: CTModule, X: alg.Representation, targets: list,
                       own_label=None, rng: random.Random | None = None) -> Approximation:
    """Minimal left ``add(targets)``-approximation of ``X``.

    If ``own_label`` is given, ``X`` is that summand and only radical maps are
    used (the source map of ``X`` in ``add T``).
    """
    f = T.field
    maps_from = {}
    for j in targets:
        if own_label is not None:
            maps_from[j] = T.rad(own_label, j)
        else:
            maps_from[j] = alg.hom_space(X, T.module(j))
    comps = []
    for j in targets:
        through = []
        for k in targets:
            for g in T.rad(k, j):
                for h in maps_from[k]:
                    through.append(g.compose_after(h).vector())
        for m in _choose_complement(through, maps_from[j], f, rng):
            comps.append((j, m))
    if not comps:
        return Approximation([], None, None)
    S, _, _ = alg.direct_sum([T.module(j) for j, _ in comps])
    phi = alg.map_into_sum([m for _, m in comps], S)
    return Approximation(comps, S, phi)


def right_approximation(T: CTModule, Z: alg.Representation, sources: list,
                        rng: random.Random | None = None) -> Approximation:
    """Minimal right ``add(sources)``-approximation of ``Z``."""
    f = T.field
    maps_into = {j: alg.hom_space(T.module(j), Z) for j in sources}
    comps = []
    for j in sources:
        through = []
        for k in sources:
            for g in T.rad(j, k):
                for h in maps_into[k]:
                    through.append(h.compose_after(g).vector())
        for m in _choose_complement(through, maps_into[j], f, rng):
            comps.append((j, m))
    if not comps:
        return Approximation([], None, None)
    S, _, _ = alg.direct_sum([T.module(j) for j, _ in comps])
    phi = alg.map_from_sum([m for _, m in comps], S)
    return Approximation(comps, S, phi)


def approximation_failures(T: CTModule, X: alg.Representation, appr: Approximation,
                           targets: list) -> list:
    """Targets ``j`` for which some map ``X -> T_j`` does not factor through ``appr``."""
    bad = []
    for j in targets:
        direct = alg.hom_space(X, T.module(j))
        if not direct:
            continue
        dim = len(direct[0].vector())
        through = []
        if appr.morphism is not None:
            for g in alg.hom_space(appr.sum_module, T.module(j)):
                through.append(g.compose_after(appr.morphism).vector())
        if la.rank(through, dim, T.field) != len(direct):
            bad.append(j)
    return bad


def minimal_left_approx(T: CTModule, label, rng=None) -> Approximation:
    """Minimal left ``add(T/X)``-approximation of the summand ``X = T_label``.

    ``T/X`` removes the whole γ-orbit of ``X``.
    """
    orbit = set(T.orbit_of(label))
    targets = [l for l in T.labels if l not in orbit]
    return left_approximation(T, T.module(label), targets, rng=rng)


def projective_socle_approx(T: CTModule, label) -> Approximation:
    """Left approximation of ``P / soc P`` for a projective-injective summand ``P``."""
    P = T.module(label)
    Z, _ = alg.quotient(P, alg.socle_spaces(P))
    return left_approximation(T, Z, T.labels)


# ---------------------------------------------------------------------------
# mutation


@dataclass
class ExchangeSequence:
    index: int
    left_label: str
    left: alg.Representation
    middle_labels: list
    map_in: alg.Morphism
    right_label: str
    right: alg.Representation
    map_out: alg.Morphism


@dataclass
class ExchangeRecord:
    direction: str
    forward: list = field(default_factory=list)
    backward: list = field(default_factory=list)
    backward_kernel_powers: list = field(default_factory=list)


def resolve_direction(T: CTModule, direction) -> list:
    """Orbit of ``T`` named by a label, an orbit name, or slot syntax ``{1,2}@1``."""
    d = str(direction).strip()
    for o in T.orbits:
        if d in o or d == orbit_name(o):
            return o
    m = re.fullmatch(r"\{?([\w,\s]+?)\}?@(\d+)", d)
    if m:
        verts = {x.strip() for x in m.group(1).split(",")}
        level = m.group(2)
        want = {f"{v}_{level}" for v in verts}
        for o in T.orbits:
            if {base_label(l) for l in o} == want:
                return o
    raise KeyError(f"no orbit named {direction!r}")


def mutate(T: CTModule, direction, seed: int | None = None, verify: bool = True):
    """Replace the orbit ``direction`` of ``T`` by its exchange partner.

    Returns ``(T*, ExchangeRecord)``.
    """
    orbit = resolve_direction(T, direction)
    if any(T.is_projective(l) for l in orbit):
        raise MutationAtProjective(f"orbit {orbit_name(orbit)} is projective")
    rng = random.Random(seed) if seed is not None else None
    pres = T.pres
    head = orbit[0]
    X = T.module(head)
    targets = [l for l in T.labels if l not in set(orbit)]
    fwd = left_approximation(T, X, targets, rng=rng)
    K, _ = alg.kernel(fwd.morphism)
    if K.dim:
        raise NotInjective(f"approximation of {head} is not injective")
    Y, proj = alg.cokernel(fwd.morphism)
    if not alg.is_local(Y):
        raise RigidityViolation(f"exchange partner of {head} is decomposable")
    if alg.is_isomorphic(X, Y):
        raise RigidityViolation(f"exchange partner of {head} is isomorphic to it")
    record = ExchangeRecord(orbit_name(orbit))
    new_labels = [next_label(l) for l in orbit]
    new_mods = {}
    for i, l in enumerate(orbit):
        Yi = gamma(Y, pres, i)
        Yi.name = new_labels[i]
        new_mods[l] = (new_labels[i], Yi)
        mids = [_gamma_label(T, j, i) for j, _ in fwd.components]
        record.forward.append(ExchangeSequence(
            i, l, T.module(l), mids, gamma_morphism(fwd.morphism, pres, i),
            new_labels[i], Yi, gamma_morphism(proj, pres, i)))
    # backward sequences: right approximations of each γ^i X
    for i, l in enumerate(orbit):
        bwd = right_approximation(T, T.module(l), targets, rng=rng)
        Kb, inc = alg.kernel(bwd.morphism)
        power = None
        for j in range(len(orbit)):
            if alg.is_isomorphic(Kb, new_mods[orbit[j]][1]):
                power = j
                break
        record.backward.append(ExchangeSequence(
            i, new_mods[orbit[power]][0] if power is not None else "?", Kb,
            [j for j, _ in bwd.components], inc, l, T.module(l), bwd.morphism))
        record.backward_kernel_powers.append(power)
    summands = []
    flags = {}
    for l, M in T.summands:
        if l in new_mods:
            summands.append(new_mods[l])
            flags[new_mods[l][0]] = False
        else:
            summands.append((l, M))
            flags[l] = T.projective_flags[l]
    orbits = [[new_mods[l][0] if l in new_mods else l for l in o] for o in T.orbits]
    Tstar = CTModule(pres, T.field, summands, orbits, flags, cache=T.cache(drop=orbit))
    if verify:
        bad = Tstar.rigidity_failures(first=[new_labels[0]])
        if bad:
            raise RigidityViolation(f"mutation is not rigid at {bad[:3]}")
        for nl in new_labels:
            for l in Tstar.labels:
                if l != nl and Tstar.module(l).dims == Tstar.module(nl).dims and \
                        alg.is_isomorphic(Tstar.module(l), Tstar.module(nl)):
                    raise RigidityViolation(f"mutation is not basic: {nl} ≅ {l}")
    return Tstar, record


def exchange_ext_pattern(T: CTModule, record: ExchangeRecord) -> list:
    """``dim Ext^1(Y, γ^i X)`` for ``i = 0 .. |orbit|-1``; expected ``[1, 0, ...]``."""
    first = record.forward[0]
    src = T.source
    return [alg.ext_dim(1, first.right, s.left, src) for s in record.forward]


def _gamma_label(T: CTModule, label, k: int):
    o = T.orbit_of(label)
    return o[(o.index(label) + k) % len(o)]


def summand_matching(T1: CTModule, T2: CTModule) -> dict | None:
    """Label map ``T1 -> T2`` pairing isomorphic summands, or ``None``."""
    out = {}
    used = set()
    for l, M in T1.summands:
        for l2, N in T2.summands:
            if l2 not in used and M.dims == N.dims and alg.is_isomorphic(M, N):
                out[l] = l2
                used.add(l2)
                break
        else:
            return None
    return out


# ---------------------------------------------------------------------------
# End(T): quiver, Cartan matrix, exchange matrix


@dataclass
class EndQuiver:
    labels: list
    arrows: dict  # (source label, target label) -> count

    def count(self, a, b) -> int:
        return self.arrows.get((a, b), 0)

    def to_dot(self, name: str = "EndT") -> str:
        lines = [f"digraph {name} {{"]
        for l in self.labels:
            lines.append(f'  "{l}";')
        for (a, b), n in sorted(self.arrows.items(), key=lambda kv: (
                self.labels.index(kv[0][0]), self.labels.index(kv[0][1]))):
            for _ in range(n):
                lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def irreducible_count(T: CTModule, a, b) -> int:
    """``dim rad(a, b) / rad^2(a, b)``."""
    rad_ab = T.rad(a, b)
    if not rad_ab:
        return 0
    comps = []
    for k in T.labels:
        left = T.rad(a, k)
        if not left:
            continue
        right = T.rad(k, b)
        for g in right:
            for h in left:
                comps.append(g.compose_after(h).vector())
    dim = len(rad_ab[0].vector())
    return len(rad_ab) - la.rank(comps, dim, T.field)


def end_quiver_and_cartan(T: CTModule):
    """Quiver of End(T) and ``C~`` with ``c~_MN = dim Hom(N, M)``."""
    labels = T.labels
    arrows = {}
    part = T.partition()
    # the quiver is γ-invariant, so count from orbit heads only
    for o in T.orbits:
        a = o[0]
        for b in labels:
            n = irreducible_count(T, a, b)
            if n:
                for k in range(len(o)):
                    arrows[(part.gamma(a, k), part.gamma(b, k))] = n
    C = [[len(T.hom(n, m)) for n in labels] for m in labels]
    return EndQuiver(labels, arrows), LabeledIntMatrix.square(labels, C)


def exchange_matrix(T: CTModule, quiver: EndQuiver | None = None):
    """``(B~, B~°, B°)``: full antisymmetrised arrow matrix, its principal part and fold."""
    if quiver is None:
        quiver, _ = end_quiver_and_cartan(T)
    labels = T.labels
    full = [[quiver.count(n, m) - quiver.count(m, n) for n in labels] for m in labels]
    Bt = LabeledIntMatrix.square(labels, full)
    npl = T.nonprojective_labels
    Bo_t = Bt.submatrix(npl, npl)
    Bo = fold_matrix(Bo_t, T.partition().restrict(npl))
    return Bt, Bo_t, Bo


# ---------------------------------------------------------------------------
# homological profile of End(T)


def resolution_of_simple(T: CTModule, label, cap: int = 6) -> list:
    """Terms of the minimal projective resolution of the simple ``S_label`` of End(T).

    Term ``s`` is a multiset ``{label: multiplicity}``; projectives are
    ``Hom(T_j, T)``, so each term is read off from a left approximation.
    """
    terms = [{label: 1}]
    appr = left_approximation(T, T.module(label), T.labels, own_label=label)
    while appr.components:
        terms.append(appr.multiplicities())
        if len(terms) - 1 > cap:
            raise ResolutionCap(f"resolution of S_{label} exceeds {cap}")
        C, _ = alg.cokernel(appr.morphism)
        if C.dim == 0:
            break
        appr = left_approximation(T, C, T.labels)
    return terms


def ext_e_table(T: CTModule, cap: int = 6) -> dict:
    """``label -> resolution terms`` for every simple of End(T)."""
    part = T.partition()
    out = {}
    for o in T.orbits:
        res = resolution_of_simple(T, o[0], cap)
        for k, l in enumerate(o):
            out[l] = [{part.gamma(x, k): n for x, n in term.items()} for term in res]
    return out


def ringel_matrix(T: CTModule, table: dict | None = None) -> LabeledIntMatrix:
    """``r~_MN = sum_i (-1)^i dim Ext^i_E(S_M, S_N)``."""
    table = table or ext_e_table(T)
    labels = T.labels
    R = []
    for m in labels:
        row = []
        for n in labels:
            row.append(sum((-1) ** s * term.get(n, 0) for s, term in enumerate(table[m])))
        R.append(row)
    return LabeledIntMatrix.square(labels, R)


def dominant_dimension(T: CTModule, cap: int = 6) -> int:
    """``1 + min{i >= 1 : Ext^i(T, T) != 0}``, the dominant dimension of End(T)."""
    heads = [o[0] for o in T.orbits]
    for i in range(1, cap + 1):
        for a in heads:
            for b in T.labels:
                if T.ext(i, a, b):
                    return i + 1
    raise ResolutionCap(f"Ext^i(T, T) vanishes up to {cap}")


@dataclass
class HomologicalProfile:
    gl_dim: int
    dom_dim: int
    projective_dims: dict
    table: dict


def homological_profile(T: CTModule, cap: int = 6) -> HomologicalProfile:
    """Global and dominant dimension of End(T)."""
    if not T.nonprojective_labels:
        raise ValueError("T must contain non-projective summands")
    table = ext_e_table(T, cap)
    pds = {l: len(terms) - 1 for l, terms in table.items()}
    return HomologicalProfile(max(pds.values()), dominant_dimension(T, cap), pds, table)


def ext_duality_failures(T: CTModule, table: dict | None = None) -> list:
    """Pairs violating ``Ext^{3-i}_E(S_X, S_Z) = Ext^i_E(S_Z, S_{γ^{-1} X})``."""
    table = table or ext_e_table(T)
    part = T.partition()

    def e(a, b, s):
        terms = table[a]
        return terms[s].get(b, 0) if s < len(terms) else 0

    bad = []
    for x in T.nonprojective_labels:
        gx = part.gamma(x, -1)
        for z in T.labels:
            for i in range(4):
                if e(x, z, 3 - i) != e(z, gx, i):
                    bad.append((x, z, i))
    return bad


def identity_suite(T: CTModule, Tstar: CTModule | None = None, direction=None) -> list:
    """Cartan/Ringel identities for ``T``, and across the mutation ``T -> T*`` if given."""
    from .matrices import cartan_identity_suite

    q, C = end_quiver_and_cartan(T)
    R = ringel_matrix(T)
    Bt, _, _ = exchange_matrix(T, q)
    mutated = None
    if Tstar is not None:
        qs, Cs = end_quiver_and_cartan(Tstar)
        Bs, _, _ = exchange_matrix(Tstar, qs)
        head = resolve_direction(T, direction)[0]
        mutated = {"direction": head, "C_tilde": Cs, "B_tilde": Bs,
                   "partition": Tstar.partition(), "nonprojective": Tstar.nonprojective_labels}
    return cartan_identity_suite(C, R, Bt, T.partition(), T.nonprojective_labels, mutated)
