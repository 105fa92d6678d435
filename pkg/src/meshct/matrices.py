"""Labelled integer matrices: mutation, folding and the Cartan/Ringel checks.

Mutation follows Fomin-Zelevinsky,

    a'_ij = -a_ij                                   if i = k or j = k,
    a'_ij = a_ij + (|a_ik| a_kj + a_ik |a_kj|) / 2  otherwise,

and is factored as ``W A U`` with the involutions returned by
:func:`uw_factors`.  All arithmetic is on Python integers.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class LabelMismatch(ValueError):
    pass


class NonzeroDiagonal(ValueError):
    pass


class NotGammaAction(ValueError):
    pass


class SingularCartan(ValueError):
    pass


@dataclass
class LabeledIntMatrix:
    row_labels: list
    col_labels: list
    entries: list

    def __post_init__(self):
        self.row_labels = list(self.row_labels)
        self.col_labels = list(self.col_labels)
        self.entries = [[int(x) for x in row] for row in self.entries]
        if len(self.entries) != len(self.row_labels) or any(
                len(r) != len(self.col_labels) for r in self.entries):
            raise ValueError("entries do not match the labels")
        self._ri = {l: i for i, l in enumerate(self.row_labels)}
        self._ci = {l: i for i, l in enumerate(self.col_labels)}

    @classmethod
    def square(cls, labels, entries) -> "LabeledIntMatrix":
        return cls(list(labels), list(labels), entries)

    @classmethod
    def identity(cls, labels) -> "LabeledIntMatrix":
        n = len(labels)
        return cls.square(labels, [[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, key) -> int:
        r, c = key
        return self.entries[self._ri[r]][self._ci[c]]

    def __eq__(self, other) -> bool:
        return (isinstance(other, LabeledIntMatrix) and self.row_labels == other.row_labels
                and self.col_labels == other.col_labels and self.entries == other.entries)

    @property
    def shape(self):
        return len(self.row_labels), len(self.col_labels)

    def is_square(self) -> bool:
        return self.row_labels == self.col_labels

    def transpose(self) -> "LabeledIntMatrix":
        return LabeledIntMatrix(self.col_labels, self.row_labels,
                                [list(c) for c in zip(*self.entries)] if self.entries else [])

    def __matmul__(self, other: "LabeledIntMatrix") -> "LabeledIntMatrix":
        if self.col_labels != other.row_labels:
            raise LabelMismatch("inner labels differ")
        bt = list(zip(*other.entries)) if other.entries else [()] * len(other.col_labels)
        out = [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in self.entries]
        return LabeledIntMatrix(self.row_labels, other.col_labels, out)

    def __neg__(self):
        return LabeledIntMatrix(self.row_labels, self.col_labels,
                                [[-x for x in r] for r in self.entries])

    def __add__(self, other):
        self._same_labels(other)
        return LabeledIntMatrix(self.row_labels, self.col_labels,
                                [[x + y for x, y in zip(a, b)]
                                 for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return self + (-other)

    def _same_labels(self, other):
        if self.row_labels != other.row_labels or self.col_labels != other.col_labels:
            raise LabelMismatch("labels differ")

    def submatrix(self, rows, cols) -> "LabeledIntMatrix":
        return LabeledIntMatrix(rows, cols, [[self[r, c] for c in cols] for r in rows])

    def inverse(self) -> "LabeledIntMatrix":
        """Integer inverse; raises :class:`SingularCartan` if it does not exist."""
        n = len(self.row_labels)
        a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self.entries)]
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                raise SingularCartan("matrix is singular")
            a[c], a[p] = a[p], a[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        inv = [row[n:] for row in a]
        if any(x.denominator != 1 for row in inv for x in row):
            raise SingularCartan("inverse is not integral")
        return LabeledIntMatrix(self.col_labels, self.row_labels,
                                [[int(x) for x in row] for row in inv])

    # serialization

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [str(l) for l in self.col_labels])
        for l, row in zip(self.row_labels, self.entries):
            w.writerow([str(l)] + [str(x) for x in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "LabeledIntMatrix":
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        cols = rows[0][1:]
        labels = [r[0] for r in rows[1:]]
        entries = [[int(x) for x in r[1:]] for r in rows[1:]]
        return cls(labels, cols, entries)

    def to_json_dict(self) -> dict:
        return {"row_labels": self.row_labels, "col_labels": self.col_labels,
                "entries": self.entries}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "LabeledIntMatrix":
        d = json.loads(text)
        return cls(d["row_labels"], d["col_labels"], d["entries"])


@dataclass
class OrbitPartitionSpec:
    """Ordered orbits; ``γ̂`` sends each label to the next one in its orbit."""

    orbits: list

    def __post_init__(self):
        self.orbits = [list(o) for o in self.orbits]
        self._orbit_of = {}
        for o in self.orbits:
            for l in o:
                if l in self._orbit_of:
                    raise ValueError(f"label {l} in two orbits")
                self._orbit_of[l] = o

    @classmethod
    def trivial(cls, labels) -> "OrbitPartitionSpec":
        return cls([[l] for l in labels])

    @property
    def labels(self) -> list:
        return [l for o in self.orbits for l in o]

    def gamma(self, label, k: int = 1):
        o = self._orbit_of[label]
        return o[(o.index(label) + k) % len(o)]

    def orbit_of(self, label) -> list:
        return self._orbit_of[label]

    def representative(self, label):
        return self._orbit_of[label][0]

    def orbit_name(self, orbit) -> str:
        return orbit_name(orbit)

    def restrict(self, labels) -> "OrbitPartitionSpec":
        keep = set(labels)
        return OrbitPartitionSpec([o for o in self.orbits if o[0] in keep])

    def to_json(self) -> str:
        return json.dumps({"orbits": self.orbits})

    @classmethod
    def from_json(cls, text: str) -> "OrbitPartitionSpec":
        return cls(json.loads(text)["orbits"])


def orbit_name(orbit) -> str:
    """``{1,2}_1`` style name from member labels ``1_1``, ``2_1``; generic labels otherwise."""
    parts = [str(l).split("_", 1) for l in orbit]
    if all(len(p) == 2 for p in parts) and len({p[1] for p in parts}) == 1:
        verts = ",".join(sorted((p[0] for p in parts), key=_natural))
        return f"{{{verts}}}_{parts[0][1]}" if len(parts) > 1 else f"{parts[0][0]}_{parts[0][1]}"
    return "{" + ",".join(str(l) for l in orbit) + "}"


def _natural(text: str):
    return (0, int(text)) if text.isdigit() else (1, text)


def is_gamma_action(A: LabeledIntMatrix, p: OrbitPartitionSpec) -> bool:
    """Entries invariant under applying γ̂ to rows and columns simultaneously."""
    for labels in (A.row_labels, A.col_labels):
        for l in labels:
            try:
                p.orbit_of(l)
            except KeyError:
                raise LabelMismatch(f"label {l} not in the partition") from None
    for r in A.row_labels:
        for c in A.col_labels:
            gr, gc = p.gamma(r), p.gamma(c)
            if gr in A._ri and gc in A._ci and A[gr, gc] != A[r, c]:
                return False
    return True


def fold_matrix(A: LabeledIntMatrix, p: OrbitPartitionSpec, check: bool = True) -> LabeledIntMatrix:
    """Quotient matrix: ``a_MN = sum_{M~ in M} a~_{M~ N~}`` at a fixed column representative."""
    if check and not is_gamma_action(A, p):
        raise NotGammaAction("matrix is not invariant under the orbit action")
    row_orbits = _orbits_in_order(A.row_labels, p)
    col_orbits = _orbits_in_order(A.col_labels, p)
    out = []
    for ro in row_orbits:
        row = []
        for co in col_orbits:
            vals = {sum(A[r, c] for r in ro) for c in co}
            if len(vals) != 1:
                raise NotGammaAction("fold depends on the column representative")
            row.append(vals.pop())
        out.append(row)
    return LabeledIntMatrix([orbit_name(o) for o in row_orbits],
                            [orbit_name(o) for o in col_orbits], out)


def _orbits_in_order(labels, p: OrbitPartitionSpec) -> list:
    seen, out = set(), []
    for l in labels:
        o = p.orbit_of(l)
        if tuple(o) not in seen:
            seen.add(tuple(o))
            out.append(list(o))
    return out


def _check_diagonal(A: LabeledIntMatrix, kk: int):
    # only a_kk enters the formulas; mutating a matrix that is not
    # sign-skew-symmetric may create other diagonal entries, and mutating
    # again must still undo it
    if not A.is_square():
        raise LabelMismatch("matrix is not square")
    if A.entries[kk][kk]:
        raise NonzeroDiagonal(f"diagonal entry at {A.row_labels[kk]} must be zero")


def _index(A: LabeledIntMatrix, k) -> int:
    if isinstance(k, int) and k not in A._ri:
        return k
    return A._ri[k]


def fz_mutate(A: LabeledIntMatrix, k) -> LabeledIntMatrix:
    """Fomin-Zelevinsky mutation at the label (or index) ``k``."""
    kk = _index(A, k)
    _check_diagonal(A, kk)
    a = A.entries
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == kk or j == kk:
                row.append(-a[i][j])
            else:
                twice = abs(a[i][kk]) * a[kk][j] + a[i][kk] * abs(a[kk][j])
                row.append(a[i][j] + twice // 2)
        out.append(row)
    return LabeledIntMatrix(A.row_labels, A.col_labels, out)


def uw_factors(A: LabeledIntMatrix, k):
    """Involutions ``U, W`` with ``W A U = fz_mutate(A, k)``."""
    kk = _index(A, k)
    _check_diagonal(A, kk)
    a = A.entries
    n = len(a)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    W = [[int(i == j) for j in range(n)] for i in range(n)]
    U[kk][kk] = -1
    W[kk][kk] = -1
    for j in range(n):
        if j != kk and a[kk][j] <= 0:
            U[kk][j] = abs(a[kk][j])
    for i in range(n):
        if i != kk and a[i][kk] >= 0:
            W[i][kk] = abs(a[i][kk])
    labels = A.row_labels
    return LabeledIntMatrix.square(labels, U), LabeledIntMatrix.square(labels, W)


def is_admissible(B: LabeledIntMatrix, p: OrbitPartitionSpec) -> bool:
    """Weak sign constancy of each row across every column orbit."""
    col_orbits = _orbits_in_order(B.col_labels, p)
    for r in B.row_labels:
        for co in col_orbits:
            vals = [B[r, c] for c in co if c in B._ci]
            if any(v > 0 for v in vals) and any(v < 0 for v in vals):
                return False
    return True


def is_skew_symmetrizable(B: LabeledIntMatrix):
    """Positive integer diagonal ``D`` (as a list) with ``D B`` skew-symmetric, or ``None``.

    Ratios ``d_j / d_i = -b_ij / b_ji`` are propagated along nonzero entries;
    each connected component is scaled to coprime integers.
    """
    if not B.is_square():
        return None
    a = B.entries
    n = len(a)
    d: list = [None] * n
    for i in range(n):
        for j in range(n):
            if (a[i][j] == 0) != (a[j][i] == 0):
                return None
            if i == j and a[i][i] != 0:
                return None
            if a[i][j] and a[i][j] * a[j][i] > 0:
                return None
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if a[i][j] == 0:
                    continue
                want = d[i] * Fraction(-a[i][j], a[j][i])
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    stack.append(j)
                elif d[j] != want:
                    return None
        den = 1
        for i in comp:
            den = den * d[i].denominator // gcd(den, d[i].denominator)
        ints = [int(d[i] * den) for i in comp]
        g = 0
        for x in ints:
            g = gcd(g, x)
        for i, x in zip(comp, ints):
            d[i] = x // g
    return [int(x) for x in d]


def principal_part(A: LabeledIntMatrix, labels) -> LabeledIntMatrix:
    return A.submatrix(list(labels), list(labels))


@dataclass
class IdentityResult:
    name: str
    status: str  # "pass", "fail" or "skipped"
    detail: str = ""


def cartan_identity_suite(C_tilde: LabeledIntMatrix, R_tilde: LabeledIntMatrix,
                          B_tilde: LabeledIntMatrix, partition: OrbitPartitionSpec,
                          nonprojective: list, mutated=None) -> list:
    """Check the Cartan/Ringel identities for ``T`` (and its mutation).

    ``mutated`` is ``None`` or a dict with keys ``direction`` (an orbit
    member label of ``T``), ``C_tilde`` and ``B_tilde`` of ``T*`` and
    ``partition`` of ``T*`` (whose orbits are listed in the same positions).
    """
    results = []
    G_tilde = C_tilde.transpose()
    G_tilde = LabeledIntMatrix(C_tilde.row_labels, C_tilde.col_labels, G_tilde.entries)
    try:
        inv_t = C_tilde.inverse().transpose()
        inv_t = LabeledIntMatrix(C_tilde.row_labels, C_tilde.col_labels, inv_t.entries)
    except SingularCartan as exc:
        raise SingularCartan(f"Cartan matrix not invertible over Z: {exc}") from None
    results.append(IdentityResult("R~ = C~^-t", "pass" if R_tilde == inv_t else "fail"))
    R = fold_matrix(R_tilde, partition)
    G = fold_matrix(G_tilde, partition)
    ok = (R @ G) == LabeledIntMatrix.identity(R.row_labels)
    results.append(IdentityResult("R G = I", "pass" if ok else "fail"))
    npl = [l for l in B_tilde.row_labels if l in set(nonprojective)]
    Bo = fold_matrix(principal_part(B_tilde, npl), partition.restrict(npl))
    Ro = fold_matrix(principal_part(R_tilde, npl), partition.restrict(npl))
    results.append(IdentityResult("B° = R°", "pass" if Bo == Ro else "fail"))
    if mutated is None:
        return results
    admissible = is_admissible(B_tilde, partition)
    if not admissible:
        results.append(IdentityResult("G* = U G W", "skipped", "not admissible"))
        results.append(IdentityResult("B°* = mu(B°)", "skipped", "not admissible"))
        return results
    B = fold_matrix(B_tilde, partition)
    k = orbit_name(partition.orbit_of(mutated["direction"]))
    U, W = uw_factors(B, k)
    star_part = mutated["partition"]
    C_star = mutated["C_tilde"]
    G_star = fold_matrix(LabeledIntMatrix(C_star.row_labels, C_star.col_labels,
                                          C_star.transpose().entries), star_part)
    G_star_rel = LabeledIntMatrix(G.row_labels, G.col_labels, G_star.entries)
    ok = (U @ G @ W) == G_star_rel
    results.append(IdentityResult("G* = U G W", "pass" if ok else "fail"))
    B_star = mutated["B_tilde"]
    npl_star = [l for l in B_star.row_labels if l in set(mutated["nonprojective"])]
    Bo_star = fold_matrix(principal_part(B_star, npl_star), star_part.restrict(npl_star))
    mu = fz_mutate(Bo, k)
    ok = Bo_star.entries == mu.entries
    results.append(IdentityResult("B°* = mu(B°)", "pass" if ok else "fail"))
    return results
