"""Finite windows of the translation quiver ZΔ and its orbit quiver.

Vertices of ZΔ are pairs ``(i, v)``.  Each base arrow ``α: v -> w`` gives
``α_i: (i, v) -> (i, w)`` and ``α'_i: (i, w) -> (i - 1, v)``, and the
translation is ``τ(i, v) = (i + 1, v)``.  Paths therefore run from higher
levels to lower ones.  Folding by the group generated by ``στ`` identifies
``(i, v)`` with the level-0 vertex ``σ^{-i}(v)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .dynkin import DynkinSpec


class EmptyRange(ValueError):
    pass


class UnsupportedOrientation(ValueError):
    pass


class NonAdmissibleAction(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    id: str
    src: object
    tgt: object


@dataclass
class BoundQuiver:
    """A quiver with homogeneous length-two relations.

    ``relations`` is a list of ``(source, target, terms)`` where each term is
    ``(coeff, (first_arrow_id, second_arrow_id))`` read in path order.
    """

    vertices: list
    arrows: list
    relations: list
    _by_id: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_id = {a.id: a for a in self.arrows}

    def arrow(self, aid: str) -> Arrow:
        return self._by_id[aid]

    def arrows_from(self, v) -> list:
        return [a for a in self.arrows if a.src == v]

    def arrows_into(self, v) -> list:
        return [a for a in self.arrows if a.tgt == v]

    def opposite(self) -> "BoundQuiver":
        arrows = [Arrow(a.id, a.tgt, a.src) for a in self.arrows]
        rels = [(t, s, [(c, (p[1], p[0])) for c, p in terms]) for s, t, terms in self.relations]
        return BoundQuiver(list(self.vertices), arrows, rels)

    def check_relations(self) -> None:
        for s, t, terms in self.relations:
            for _, (a1, a2) in terms:
                x, y = self.arrow(a1), self.arrow(a2)
                if x.src != s or x.tgt != y.src or y.tgt != t:
                    raise ValueError(f"relation term {a1},{a2} is not a path {s} -> {t}")


def _vertex_name(x) -> str:
    if isinstance(x, tuple):
        return f"({x[0]},{x[1]})"
    return str(x)


def to_json_dict(q: BoundQuiver) -> dict:
    return {
        "vertices": [list(v) if isinstance(v, tuple) else v for v in q.vertices],
        "arrows": [
            {
                "id": a.id,
                "src": list(a.src) if isinstance(a.src, tuple) else a.src,
                "tgt": list(a.tgt) if isinstance(a.tgt, tuple) else a.tgt,
            }
            for a in q.arrows
        ],
        "relations": [
            [{"path": list(p), "coeff": c} for c, p in terms] for _, _, terms in q.relations
        ],
    }


def to_json(q: BoundQuiver) -> str:
    return json.dumps(to_json_dict(q), indent=2)


def to_dot(q: BoundQuiver, name: str = "Q") -> str:
    lines = [f"digraph {name} {{"]
    for v in q.vertices:
        lines.append(f'  "{_vertex_name(v)}";')
    for a in q.arrows:
        lines.append(f'  "{_vertex_name(a.src)}" -> "{_vertex_name(a.tgt)}" [label="{a.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class TranslationWindow:
    """Levels ``i_min..i_max`` of ZΔ."""

    spec: DynkinSpec
    i_min: int
    i_max: int
    vertices: list
    arrows: list

    def __contains__(self, x) -> bool:
        return self.i_min <= x[0] <= self.i_max and x[1] in self.spec.sigma

    def tau(self, x):
        return (x[0] + 1, x[1])

    def tau_inverse(self, x):
        return (x[0] - 1, x[1])

    def arrows_into(self, z) -> list:
        return [a for a in self.arrows if a.tgt == z]

    def mesh(self, z) -> list:
        """Pairs ``(partner, arrow)`` for the mesh ending at ``z``.

        Empty when ``τz`` lies outside the window.
        """
        tz = self.tau(z)
        if tz not in self:
            return []
        out = []
        for b in self.arrows_into(z):
            partner = [a for a in self.arrows if a.src == tz and a.tgt == b.src]
            if len(partner) != 1:
                raise AssertionError(f"no unique mesh partner for {b.id}")
            out.append((partner[0], b))
        return out

    def bound_quiver(self, vertex_filter=None) -> BoundQuiver:
        """Window (or a union of its levels) as a quiver with mesh relations."""
        keep = [v for v in self.vertices if vertex_filter is None or vertex_filter(v)]
        keepset = set(keep)
        arrows = [a for a in self.arrows if a.src in keepset and a.tgt in keepset]
        rels = []
        for z in keep:
            pairs = self.mesh(z)
            if not pairs or self.tau(z) not in keepset:
                continue
            if any(p.tgt not in keepset for p, _ in pairs):
                continue
            rels.append((self.tau(z), z, [(1, (p.id, b.id)) for p, b in pairs]))
        return BoundQuiver(keep, arrows, rels)


def build_window(spec: DynkinSpec, i_min: int, i_max: int) -> TranslationWindow:
    """Levels ``i_min..i_max`` of ZΔ with every arrow between them."""
    if i_min > i_max:
        raise EmptyRange(f"empty level range {i_min}..{i_max}")
    verts = [(i, v) for i in range(i_min, i_max + 1) for v in spec.base_vertices]
    arrows = []
    for i in range(i_min, i_max + 1):
        for k, (v, w) in enumerate(spec.base_arrows):
            arrows.append(Arrow(f"a{k}_{i}", (i, v), (i, w)))
            if i - 1 >= i_min:
                arrows.append(Arrow(f"a{k}'_{i}", (i, w), (i - 1, v)))
    return TranslationWindow(spec, i_min, i_max, verts, arrows)


@dataclass(frozen=True)
class GroupElement:
    """The automorphism ``(i, v) -> (i + tau_power, σ^sigma_power(v))``."""

    sigma_power: int
    tau_power: int

    def act(self, spec: DynkinSpec, x):
        return (x[0] + self.tau_power, spec.sigma_power(x[1], self.sigma_power))

    def compose(self, other: "GroupElement", order: int) -> "GroupElement":
        return GroupElement((self.sigma_power + other.sigma_power) % order,
                            self.tau_power + other.tau_power)

    def power(self, k: int, order: int) -> "GroupElement":
        return GroupElement((self.sigma_power * k) % order, self.tau_power * k)


SIGMA_TAU = GroupElement(1, 1)


def check_admissible(spec: DynkinSpec, window: TranslationWindow,
                     generator: GroupElement = SIGMA_TAU):
    """Whether no nontrivial power of ``generator`` fixes a window vertex.

    Returns ``(True, None)`` or ``(False, fixed_vertex)``.
    """
    if not window.vertices:
        raise EmptyRange("empty window")
    height = window.i_max - window.i_min + 1
    order = spec.order
    for k in range(1, order * height + 1):
        g = generator.power(k, order)
        if g.tau_power == 0 and g.sigma_power % order == 0:
            # the identity: the group is finite and this power is trivial
            break
        for x in window.vertices:
            if g.act(spec, x) == x:
                return False, x
    return True, None


def auslander_rectangle(spec: DynkinSpec) -> list:
    """Vertices ``(i, v)`` with ``0 <= i < coxeter_copies``."""
    if not spec.rectangular:
        raise UnsupportedOrientation(f"{spec.base_type} orientation has no rectangle")
    return [(i, v) for i in range(spec.coxeter_copies) for v in spec.base_vertices]


def orbit_map(spec: DynkinSpec, x) -> int:
    """Level-0 representative ``σ^{-i}(v)`` of the orbit of ``(i, v)``."""
    i, v = x
    return spec.sigma_power(v, -i)


def lift(spec: DynkinSpec, v: int, i: int):
    """The vertex at level ``i`` lying over the folded vertex ``v``."""
    return (i, spec.sigma_power(v, i))


@dataclass
class OrbitPresentation:
    """The folded quiver ZΔ/<στ> with its mesh relations."""

    spec: DynkinSpec
    folded_vertices: list
    folded_arrows: list
    mesh_relations: list
    sigma_tilde_vertices: dict
    sigma_tilde_arrows: dict
    _quiver: object = field(default=None, repr=False)

    def quiver(self) -> BoundQuiver:
        """The folded quiver as a :class:`BoundQuiver` (one shared instance)."""
        if self._quiver is None:
            self._quiver = BoundQuiver(list(self.folded_vertices), list(self.folded_arrows),
                                       list(self.mesh_relations))
        return self._quiver

    def fold_arrow(self, window_arrow_id: str) -> str:
        """Folded arrow id for a window arrow id such as ``a2'_1``."""
        head, level = window_arrow_id.rsplit("_", 1)
        i = int(level)
        prime = head.endswith("'")
        k = int(head.rstrip("'")[1:])
        k2 = _sigma_arrow(self.spec, k, -i)
        return f"a{k2}{'-' if prime else '+'}"

    def opposite_involution(self) -> dict:
        """Arrow map ``(α,+) <-> (α,-)`` used to compare the quiver with its opposite."""
        out = {}
        for k in range(len(self.spec.base_arrows)):
            out[f"a{k}+"] = f"a{k}-"
            out[f"a{k}-"] = f"a{k}+"
        return out


def _sigma_arrow(spec: DynkinSpec, k: int, power: int) -> int:
    s, t = spec.base_arrows[k]
    img = (spec.sigma_power(s, power), spec.sigma_power(t, power))
    return spec.base_arrows.index(img)


def fold(spec: DynkinSpec) -> OrbitPresentation:
    """Orbit quiver of ZΔ under ``στ`` with one mesh relation per vertex."""
    window = build_window(spec, 0, max(1, spec.order))
    ok, witness = check_admissible(spec, window)
    if not ok:
        raise NonAdmissibleAction(f"στ fixes {witness}")
    arrows = []
    for k, (v, w) in enumerate(spec.base_arrows):
        arrows.append(Arrow(f"a{k}+", v, w))
        arrows.append(Arrow(f"a{k}-", w, spec.sigma[v]))
    pres = OrbitPresentation(spec, list(spec.base_vertices), arrows, [], {}, {})
    rels = []
    for x in spec.base_vertices:
        terms = []
        for p, b in window.mesh((0, x)):
            terms.append((1, (pres.fold_arrow(p.id), pres.fold_arrow(b.id))))
        rels.append((spec.sigma_power(x, -1), x, terms))
    pres.mesh_relations = rels
    pres.sigma_tilde_vertices = {v: spec.sigma[v] for v in spec.base_vertices}
    st = {}
    for k in range(len(spec.base_arrows)):
        k2 = _sigma_arrow(spec, k, 1)
        st[f"a{k}+"] = f"a{k2}+"
        st[f"a{k}-"] = f"a{k2}-"
    pres.sigma_tilde_arrows = st
    pres._quiver = None
    pres.quiver().check_relations()
    return pres
