"""Hom dimensions in the mesh category of ZΔ by knitting.

``hom_dim(x, z)`` is computed from the additive recursion

    h_x(z) = max(0, sum_{y -> z} h_x(y) - h_x(τz)),   h_x(x) = 1,

processing levels downwards from ``x``.  Because ZΔ is invariant under τ,
only one hammock per base vertex is ever knitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import algebra as alg
from .dynkin import DynkinSpec
from .linalg import Field, default_field
from .translation import auslander_rectangle, build_window, orbit_map


class VertexOutsideRectangle(ValueError):
    pass


class KnittingCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class HammockTable:
    """Nonzero values of ``z -> dim Hom(source, z)``."""

    source: tuple
    values: dict

    def __getitem__(self, z) -> int:
        return self.values.get(z, 0)

    def support(self) -> list:
        return sorted(self.values)

    def as_text(self) -> str:
        if not self.values:
            return ""
        levels = sorted({z[0] for z in self.values}, reverse=True)
        verts = sorted({z[1] for z in self.values})
        width = max(2, max(len(str(v)) for v in verts))
        head = "level " + " ".join(str(v).rjust(width) for v in verts)
        lines = [head]
        for i in levels:
            cells = " ".join(str(self.values.get((i, v), 0)).rjust(width) for v in verts)
            lines.append(str(i).rjust(5) + " " + cells)
        return "\n".join(lines)

    def as_json_dict(self) -> dict:
        return {
            "source": list(self.source),
            "values": [{"vertex": list(z), "dim": d} for z, d in sorted(self.values.items())],
        }


def _predecessors(spec: DynkinSpec):
    """For each base vertex z: same-level sources and next-level sources of arrows into (i, z)."""
    same = {v: [] for v in spec.base_vertices}
    upper = {v: [] for v in spec.base_vertices}
    for s, t in spec.base_arrows:
        same[t].append(s)   # α_i: (i, s) -> (i, t)
        upper[s].append(t)  # α'_{i+1}: (i+1, t) -> (i, s)
    return same, upper


@lru_cache(maxsize=None)
def _base_hammock(spec: DynkinSpec, v: int) -> tuple:
    same, upper = _predecessors(spec)
    order = spec.topological_order()
    cap = 4 * spec.coxeter_copies
    h: dict = {(0, v): 1}
    i = 0
    while True:
        if -i > cap:
            raise KnittingCapExceeded(f"hammock of (0,{v}) exceeds {cap} levels")
        level_nonzero = False
        for z in order:
            x = (i, z)
            if x == (0, v):
                level_nonzero = True
                continue
            total = sum(h.get((i, s), 0) for s in same[z])
            total += sum(h.get((i + 1, t), 0) for t in upper[z])
            total -= h.get((i + 1, z), 0)
            if total > 0:
                h[x] = total
                level_nonzero = True
        if not level_nonzero:
            break
        i -= 1
    return tuple(sorted(h.items()))


def hammock(spec: DynkinSpec, x) -> HammockTable:
    """Knitted hammock starting at ``x``."""
    i0, v = x
    vals = {(i + i0, z): d for (i, z), d in _base_hammock(spec, v)}
    return HammockTable(tuple(x), vals)


def hom_dim(spec: DynkinSpec, x, z) -> int:
    """``dim Hom(x, z)`` in the mesh category of ZΔ."""
    i0, v = x
    return dict(_base_hammock(spec, v)).get((z[0] - i0, z[1]), 0)


def _check_in_rectangle(spec: DynkinSpec, x) -> None:
    if not (0 <= x[0] < spec.coxeter_copies and x[1] in spec.base_vertices):
        raise VertexOutsideRectangle(f"{x} is outside the Auslander rectangle")


def injective_dim_vector(spec: DynkinSpec, x) -> dict:
    """Dimension vector of ``I(x)`` over the Auslander rectangle (nonzero entries)."""
    _check_in_rectangle(spec, tuple(x))
    out = {}
    for y in auslander_rectangle(spec):
        d = hom_dim(spec, y, x)
        if d:
            out[y] = d
    return out


def pushdown_dim_vector(spec: DynkinSpec, x) -> dict:
    """Dimension vector over the folded quiver of the push-down of ``I(x)``."""
    out = {v: 0 for v in spec.base_vertices}
    for y, d in injective_dim_vector(spec, x).items():
        out[orbit_map(spec, y)] += d
    return out


# ---------------------------------------------------------------------------
# linear-algebra oracles over the cover


@lru_cache(maxsize=None)
def rectangle_quiver(spec: DynkinSpec):
    """The Auslander rectangle as a bound quiver with its internal meshes."""
    m = spec.coxeter_copies
    return build_window(spec, 0, m - 1).bound_quiver()


def rectangle_hom_dim(spec: DynkinSpec, x, y, field: Field | None = None) -> int:
    """``dim Hom(x, y)`` from the graded path basis of the rectangle's bound quiver."""
    field = field or default_field()
    P = _rectangle_projective(spec, tuple(x), field)
    return P.dims.get(tuple(y), 0)


@lru_cache(maxsize=None)
def _rectangle_projective(spec, x, field):
    return alg.projective_of_quiver(rectangle_quiver(spec), x, field)


@lru_cache(maxsize=None)
def _cover_window(spec: DynkinSpec):
    m = spec.coxeter_copies
    return build_window(spec, -(m - 1), 2 * (m - 1))


def _shift_arrow_id(spec: DynkinSpec, aid: str, j: int) -> str:
    head, level = aid.rsplit("_", 1)
    prime = head.endswith("'")
    k = int(head.rstrip("'")[1:])
    s, t = spec.base_arrows[k]
    k2 = spec.base_arrows.index((spec.sigma_power(s, j), spec.sigma_power(t, j)))
    return f"a{k2}{chr(39) if prime else ''}_{int(level) + j}"


def cover_injective(spec: DynkinSpec, x, field: Field, shift: int = 0) -> alg.Representation:
    """``g_* I(x)`` for ``g = (στ)^shift`` as a module over the cover window."""
    I = _rectangle_injective(spec, tuple(x), field)
    W = _cover_quiver(spec)
    dims = {}
    for y, d in I.dims.items():
        if d:
            gy = (y[0] + shift, spec.sigma_power(y[1], shift))
            dims[gy] = d
    maps = {}
    for aid, m in I.maps.items():
        if m and m[0]:
            maps[_shift_arrow_id(spec, aid, shift)] = m
    return alg.Representation(W, field, dims, maps, check=False)


@lru_cache(maxsize=None)
def _rectangle_injective(spec, x, field):
    return alg.injective_of_quiver(rectangle_quiver(spec), x, field)


@lru_cache(maxsize=None)
def _cover_quiver(spec):
    return _cover_window(spec).bound_quiver()


def covering_hom_dim(spec: DynkinSpec, x, y, field: Field | None = None) -> int:
    """``sum_g dim Hom(I(y), g_* I(x))`` over the group generated by στ.

    Only shifts with ``|j| < coxeter_copies`` can overlap the rectangle.
    """
    field = field or default_field()
    m = spec.coxeter_copies
    Iy = cover_injective(spec, y, field, 0)
    total = 0
    for j in range(-(m - 1), m):
        gx = cover_injective(spec, x, field, j)
        if not any(Iy.dims[v] and gx.dims[v] for v in Iy.dims):
            continue
        total += alg.hom_dim(Iy, gx)
    return total
