"""The worked P(B3) example: artifacts and their comparison with the packaged fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from . import algebra as alg
from . import tilting as tl
from .dynkin import folding_datum
from .linalg import Field, default_field
from .matrices import LabeledIntMatrix, fz_mutate, uw_factors
from .translation import fold

MATRIX_FIXTURES = (
    ("B_tilde_principal", "b3_B_tilde_principal.csv"),
    ("B_principal", "b3_B_principal.csv"),
    ("U", "b3_U.csv"),
    ("W", "b3_W.csv"),
    ("mu2_B_principal", "b3_mu2_B_principal.csv"),
)

DIRECTION = "{1,2}_1"


def fixture_text(name: str) -> str:
    return resources.files("meshct").joinpath("fixtures").joinpath(name).read_text()


def fixture_matrix(name: str) -> LabeledIntMatrix:
    return LabeledIntMatrix.from_csv(fixture_text(name))


def fixture_loewy() -> dict:
    return json.loads(fixture_text("b3_loewy.json"))


def same_layers(a: str, b: str) -> bool:
    """Loewy strings equal up to the order of labels within a layer."""
    return alg.parse_loewy(a) == alg.parse_loewy(b)


@dataclass
class ExampleRun:
    artifacts: list  # [(name, text)] in emission order
    checks: list = field(default_factory=list)  # [(name, ok, detail)]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def report(self, seed=None, field_name=None) -> str:
        lines = [f"example: b3  field: {field_name}  seed: {seed}"]
        for name, ok, detail in self.checks:
            lines.append(f"{name}: {'ok' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
        lines.append(f"overall: {'ok' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def run_b3_example(field: Field | None = None, seed: int | None = None) -> ExampleRun:
    field = field or default_field()
    pres = fold(folding_datum("b3"))
    T = tl.start_module(pres, field)
    run = ExampleRun([])
    chk = run.checks

    chk.append(("summands", len(T) == 15, f"{len(T)}"))
    chk.append(("orbits", len(T.orbits) == 9, f"{len(T.orbits)}"))
    loewy = fixture_loewy()
    bad = [l for l, s in loewy.items() if not same_layers(alg.loewy_diagram(T.module(l)), s)]
    chk.append(("loewy diagrams", not bad, ",".join(bad)))

    quiver, _ = tl.end_quiver_and_cartan(T)
    _, Bot, Bo = tl.exchange_matrix(T, quiver)
    U, W = uw_factors(Bo, DIRECTION)
    mu = fz_mutate(Bo, DIRECTION)
    run.artifacts = [
        ("end_quiver.dot", quiver.to_dot()),
        ("B_tilde_principal.csv", Bot.to_csv()),
        ("B_principal.csv", Bo.to_csv()),
        ("U.csv", U.to_csv()),
        ("W.csv", W.to_csv()),
        ("mu2_B_principal.csv", mu.to_csv()),
    ]
    texts = dict(run.artifacts)
    for name, fname in MATRIX_FIXTURES:
        chk.append((f"{name} fixture", texts[name + ".csv"] == fixture_text(fname), ""))

    Ts, rec = tl.mutate(T, DIRECTION, seed=seed)
    mids = sorted(rec.forward[0].middle_labels)
    chk.append(("forward middle term", mids == ["0_2", "1_0", "3_1"], " ".join(mids)))
    b = rec.backward[1]
    chk.append(("backward sequence", b.right_label == "2_1" and b.left_label == "1_1@1"
                 and sorted(b.middle_labels) == ["0_1", "2_2", "3_0"],
                 f"{b.left_label} -> {' '.join(sorted(b.middle_labels))} -> {b.right_label}"))
    _, _, Bs = tl.exchange_matrix(Ts)
    chk.append(("mutated exchange matrix = mu2(B°)", Bs.entries == mu.entries, ""))
    T2, _ = tl.mutate(Ts, tl.next_label("1_1"), seed=seed)
    chk.append(("involution", tl.summand_matching(T, T2) is not None, ""))
    results = tl.identity_suite(T, Ts, DIRECTION)
    for r in results:
        chk.append((r.name, r.status == "pass", r.status))
    return run
