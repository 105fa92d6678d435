"""Dynkin diagrams with the fixed orientations used for folding.

Each supported type is encoded by a simply-laced base diagram, an
orientation of it, and a diagram automorphism ``sigma``.  Non-simply-laced
types are obtained by folding: B(k) from A(2k-1), C(n) from D(n+1), F4 from
E6 and G2 from D4.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class UnsupportedType(ValueError):
    """Raised for a type tag outside the supported list."""


@dataclass(frozen=True)
class DynkinSpec:
    """Base diagram, orientation and folding automorphism.

    Attributes
    ----------
    folded_type : str
        Canonical tag, e.g. ``"B(3)"``, ``"F4"`` or ``"E(6)"``.
    base_type : str
        Tag of the simply-laced base diagram, e.g. ``"A(5)"``.
    base_vertices : tuple of int
        Vertex labels of the base diagram.
    base_arrows : tuple of (int, int)
        Oriented edges ``(source, target)``.
    sigma : tuple of int
        ``sigma[v]`` is the image of vertex ``v``.
    coxeter_copies : int
        Number of copies of the base diagram in the Auslander rectangle.
    rectangular : bool
        Whether the orientation makes the Auslander quiver a rectangle of
        ``coxeter_copies`` levels.
    """

    folded_type: str
    base_type: str
    base_vertices: tuple
    base_arrows: tuple
    sigma: tuple
    coxeter_copies: int
    rectangular: bool = True
    tag: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        """Order of sigma as a permutation."""
        k = 1
        cur = tuple(self.sigma)
        ident = tuple(self.base_vertices)
        while cur != ident:
            cur = tuple(self.sigma[v] for v in cur)
            k += 1
        return k

    def sigma_power(self, v: int, k: int) -> int:
        """Apply sigma ``k`` times (``k`` may be negative)."""
        k %= self.order
        for _ in range(k):
            v = self.sigma[v]
        return v

    def sigma_orbits(self) -> list[list[int]]:
        """Orbits of sigma on vertices, each listed as v, sigma(v), ..."""
        seen = set()
        out = []
        for v in self.base_vertices:
            if v in seen:
                continue
            orb = [v]
            seen.add(v)
            w = self.sigma[v]
            while w != v:
                orb.append(w)
                seen.add(w)
                w = self.sigma[w]
            out.append(orb)
        return out

    def topological_order(self) -> list[int]:
        """Vertices ordered so that every arrow goes from earlier to later."""
        indeg = {v: 0 for v in self.base_vertices}
        for _, t in self.base_arrows:
            indeg[t] += 1
        ready = sorted(v for v, d in indeg.items() if d == 0)
        out = []
        while ready:
            v = ready.pop(0)
            out.append(v)
            for s, t in self.base_arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
                        ready.sort()
        return out


def _root_count(letter: str, n: int) -> int:
    if letter == "A":
        return n * (n + 1) // 2
    if letter in ("B", "C"):
        return n * n
    if letter == "D":
        return n * (n - 1)
    if letter == "E":
        return {6: 36, 7: 63, 8: 120}[n]
    if letter == "F":
        return 24
    if letter == "G":
        return 6
    raise UnsupportedType(letter)


_TAG = re.compile(r"^\s*([A-Ga-g])\s*\(?\s*(\d+)\s*\)?\s*$")


def parse_type(tag: str) -> tuple[str, int]:
    """Split tags like ``"b3"``, ``"B(3)"`` or ``"F4"`` into ``("B", 3)``."""
    m = _TAG.match(str(tag))
    if not m:
        raise UnsupportedType(f"unsupported type {tag!r}")
    letter, n = m.group(1).upper(), int(m.group(2))
    ok = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }[letter]
    if not ok:
        raise UnsupportedType(f"unsupported type {tag!r}")
    return letter, n


def canonical_tag(letter: str, n: int) -> str:
    if letter in ("F", "G"):
        return f"{letter}{n}"
    return f"{letter}({n})"


def _type_a(n: int):
    """A(n) with the central sink 0, odd labels to the left, even to the right."""
    verts = tuple(range(n))
    arrows = []
    for v in range(1, n):
        # 1 -> 0, 3 -> 1, 5 -> 3, ...  and 2 -> 0, 4 -> 2, ...
        tgt = v - 2 if v >= 3 else 0
        arrows.append((v, tgt))
    return verts, tuple(arrows)


def _type_d(n: int):
    """D(n): fork vertices 0 and 1 into the branch vertex 2, tail n-1 -> ... -> 3 -> 2."""
    verts = tuple(range(n))
    arrows = [(0, 2), (1, 2)]
    for v in range(3, n):
        arrows.append((v, v - 1))
    return verts, tuple(arrows)


def _type_e(n: int):
    """E6 as drawn: 4 -> 2 -> 0 <- 1 <- 3 and 0 -> 5; E7/E8 extend the 3-arm."""
    verts = tuple(range(n))
    arrows = [(4, 2), (2, 0), (1, 0), (3, 1), (0, 5)]
    if n >= 7:
        arrows.append((6, 4))
    if n >= 8:
        arrows.append((7, 6))
    return verts, tuple(arrows)


def folding_datum(folded_type: str) -> DynkinSpec:
    """Base diagram, orientation and sigma for a type tag.

    >>> folding_datum("b3").sigma
    (0, 2, 1, 4, 3)
    """
    letter, n = parse_type(folded_type)
    tag = canonical_tag(letter, n)
    if letter == "A":
        if n % 2 == 0:
            # no central vertex, so no orientation of the required shape
            raise UnsupportedType(f"A({n}) has no supported orientation (n must be odd)")
        verts, arrows = _type_a(n)
        sigma = verts
        base = f"A({n})"
        rect = True
    elif letter == "D":
        verts, arrows = _type_d(n)
        sigma = verts
        base = f"D({n})"
        rect = True
    elif letter == "E":
        verts, arrows = _type_e(n)
        sigma = verts
        base = f"E({n})"
        rect = True
    elif letter == "B":
        verts, arrows = _type_a(2 * n - 1)
        sig = list(verts)
        for v in range(1, 2 * n - 1, 2):
            sig[v], sig[v + 1] = v + 1, v
        sigma = tuple(sig)
        base = f"A({2 * n - 1})"
        rect = True
    elif letter == "C":
        verts, arrows = _type_d(n + 1)
        sig = list(verts)
        sig[0], sig[1] = 1, 0
        sigma = tuple(sig)
        base = f"D({n + 1})"
        rect = True
    elif letter == "F":
        verts, arrows = _type_e(6)
        sigma = (0, 2, 1, 4, 3, 5)
        base = "E(6)"
        rect = True
    else:  # G2
        verts, arrows = _type_d(4)
        sigma = (1, 3, 2, 0)
        base = "D(4)"
        rect = True
    bl, bn = parse_type(base)
    copies = _root_count(bl, bn) // len(verts)
    spec = DynkinSpec(
        folded_type=tag,
        base_type=base,
        base_vertices=tuple(verts),
        base_arrows=tuple(arrows),
        sigma=tuple(sigma),
        coxeter_copies=copies,
        rectangular=rect,
        tag=f"{letter.lower()}{n}",
    )
    _check_spec(spec)
    return spec


def _check_spec(spec: DynkinSpec) -> None:
    if spec.coxeter_copies * len(spec.base_vertices) != base_positive_root_count(spec):
        raise AssertionError("coxeter_copies inconsistent with the root count")
    arrows = set(spec.base_arrows)
    image = {(spec.sigma[s], spec.sigma[t]) for s, t in arrows}
    if image != arrows:
        raise AssertionError(f"sigma is not a diagram automorphism of {spec.base_type}")


def positive_root_count(folded_type: str) -> int:
    """Number of positive roots of the folded type."""
    letter, n = parse_type(folded_type)
    return _root_count(letter, n)


def base_positive_root_count(spec: DynkinSpec) -> int:
    letter, n = parse_type(spec.base_type)
    return _root_count(letter, n)


SUPPORTED_TAGS = ("a3", "a5", "d4", "d5", "e6", "e7", "e8", "b2", "b3", "c3", "f4", "g2")
