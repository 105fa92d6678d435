import json

import pytest

from meshct import translation as tr
from meshct.dynkin import SUPPORTED_TAGS, folding_datum


@pytest.fixture(scope="module")
def b3():
    return folding_datum("b3")


def test_window_counts(b3):
    w = tr.build_window(folding_datum("a5"), 0, 2)
    assert len(w.vertices) == 15
    assert len(w.arrows) == 4 * 3 + 4 * 2


def test_primed_arrow(b3):
    w = tr.build_window(b3, 0, 1)
    k = b3.base_arrows.index((1, 0))
    a = next(x for x in w.arrows if x.id == f"a{k}'_1")
    assert (a.src, a.tgt) == ((1, 0), (0, 1))


def test_tau(b3):
    w = tr.build_window(b3, 0, 2)
    assert all(w.tau((0, v)) == (1, v) for v in b3.base_vertices)


def test_empty_range(b3):
    with pytest.raises(tr.EmptyRange):
        tr.build_window(b3, 2, 1)


def test_meshes_pair_bijectively(b3):
    w = tr.build_window(b3, 0, 3)
    for z in w.vertices:
        pairs = w.mesh(z)
        if w.tau(z) in w:
            assert len(pairs) == len(w.arrows_into(z))
            for p, b in pairs:
                assert p.src == w.tau(z) and p.tgt == b.src and b.tgt == z


def test_admissibility(b3):
    w = tr.build_window(b3, 0, 3)
    assert tr.check_admissible(b3, w) == (True, None)
    ok, witness = tr.check_admissible(b3, w, tr.GroupElement(1, 0))
    assert not ok and witness[1] == 0
    a5 = folding_datum("a5")
    assert tr.check_admissible(a5, tr.build_window(a5, 0, 3), tr.GroupElement(0, 1))[0]


@pytest.mark.parametrize("tag,size", [("b3", 15), ("f4", 36), ("g2", 12)])
def test_rectangle_sizes(tag, size):
    assert len(tr.auslander_rectangle(folding_datum(tag))) == size


def test_fold_b3(b3):
    pres = tr.fold(b3)
    q = pres.quiver()
    assert len(q.vertices) == 5 and len(q.arrows) == 8
    k = b3.base_arrows.index((3, 1))
    a = q.arrow(f"a{k}-")
    assert (a.src, a.tgt) == (1, 4)
    assert pres.sigma_tilde_vertices == {0: 0, 1: 2, 2: 1, 3: 4, 4: 3}


@pytest.mark.parametrize("tag", SUPPORTED_TAGS)
def test_fold_invariants(tag):
    spec = folding_datum(tag)
    pres = tr.fold(spec)
    q = pres.quiver()
    assert len(q.arrows) == 2 * len(spec.base_arrows)
    # one mesh relation per vertex, one +1 term per incoming arrow
    assert len(q.relations) == len(q.vertices)
    for s, t, terms in q.relations:
        assert len(terms) == len(q.arrows_into(t))
        assert all(c == 1 for c, _ in terms)
    # σ̃ maps mesh relations to mesh relations
    st, sv = pres.sigma_tilde_arrows, pres.sigma_tilde_vertices
    rels = {(s, t, frozenset(p for _, p in terms)) for s, t, terms in q.relations}
    for s, t, terms in q.relations:
        img = (sv[s], sv[t], frozenset((st[a], st[b]) for _, (a, b) in terms))
        assert img in rels
    # orbit map is constant on στ-orbits
    w = tr.build_window(spec, 0, 3)
    for x in w.vertices:
        assert tr.orbit_map(spec, tr.SIGMA_TAU.act(spec, x)) == tr.orbit_map(spec, x)


@pytest.mark.parametrize("tag", ["b3", "g2", "f4"])
def test_opposite_involution(tag):
    pres = tr.fold(folding_datum(tag))
    q = pres.quiver()
    inv = pres.opposite_involution()
    sv, st = pres.sigma_tilde_vertices, pres.sigma_tilde_arrows
    # a+ : v -> w and a- : w -> σv, so reversing a+ and applying σ̃ gives a-
    for k in range(len(pres.spec.base_arrows)):
        plus, minus = q.arrow(f"a{k}+"), q.arrow(f"a{k}-")
        assert inv[plus.id] == minus.id
        assert (minus.src, minus.tgt) == (plus.tgt, sv[plus.src])


def test_fold_trivial_sigma_matches_double_quiver():
    spec = folding_datum("a3")
    q = tr.fold(spec).quiver()
    assert len(q.arrows) == 2 * (len(spec.base_vertices) - 1)
    assert all(s == t for s, t, _ in q.relations)


def test_json_and_dot(b3):
    q = tr.fold(b3).quiver()
    data = json.loads(tr.to_json(q))
    assert [a["id"] for a in data["arrows"]] == [a.id for a in q.arrows]
    assert all("path" in t and "coeff" in t for rel in data["relations"] for t in rel)
    dot = tr.to_dot(q)
    assert dot.startswith("digraph") and dot.count("->") == 8
