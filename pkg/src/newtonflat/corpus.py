"""Built-in example corpus: separating examples for the implication diagram.

Smooth functions with divergent Taylor series are encoded as their jet up to
``T`` plus a factorial tail rule; the flat function ``exp(-|z|^-2)`` is the
zero jet with an annotation.  ``expected`` is the verdict table the pipeline
must reproduce (P/R/U for conditions 1-8); ``truth`` is the actual truth
table of the example (T/F), against which no Proved/Refuted may disagree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .classify import ClassificationReport, classify, diagram_consistent
from .parsing import parse


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    title: str
    text: str
    nvars: int
    expected: str
    truth: str
    origin: str
    annotations: tuple = ()


def factorial_sum(var: str, start: int, stop: int, power: int = 1) -> str:
    terms = [f"{math.factorial(j) ** power}*{var}^{j}" for j in range(start, stop + 1)]
    return "2*Re(" + " + ".join(terms) + ")"


def _entries():
    cusp = "|z1^3 - z2^2|^2"
    f12 = factorial_sum("z1", 2, 12)
    return (
        CorpusEntry("1-not-2", "infinite type without infinite regular type",
                    f"2*Re(w) + {cusp} + |z3|^2", 3, "PUUPURRU", "TFFTFFFF",
                    "cusp plus a square in three variables"),
        CorpusEntry("2-not-3", "infinite regular type without a regular tangent curve",
                    f"# n=1 T=12 tail=z1:factorial:1:2\n2*Re(w) + {f12}", 1, "PPRRRRPU", "TTFFFFTF",
                    "divergent pure series c_j = j!"),
        CorpusEntry("1-not-4", "infinite type without any tangent curve",
                    f"# n=1 T=12 tail=z1:factorial:2:2\n2*Re(w) + {factorial_sum('z1', 2, 12, 2)}", 1,
                    "PPRRRRPU", "TTFFFFTF", "divergent pure series c_j = (j!)^2"),
        CorpusEntry("4-not-3", "a singular tangent curve but no regular one",
                    f"2*Re(w) + {cusp}", 2, "PUUPURRU", "TFFTFFFF", "cusp in two variables"),
        CorpusEntry("5-not-6", "non-convenient but not a slab",
                    "2*Re(w) + |z2|^2", 2, "PPPPPRRU", "TTTTTFFF", "F = |z_n|^2, n = 2"),
        CorpusEntry("2-not-7", "infinite regular type with finite Bloom-Graham type",
                    "2*Re(w) + |z3|^2", 3, "PPPPPRRU", "TTTTTFFF", "F = |z_n|^2, n = 3"),
        CorpusEntry("7-not-6", "infinite Bloom-Graham type but not a slab",
                    f"# n=1 T=16 tail=z1:factorial:1:2\n2*Re(w) + {factorial_sum('z1', 2, 16)}", 1,
                    "PPRRRRPU", "TTFFFFTF", "divergent pure series c_j = j!"),
        CorpusEntry("6-not-8", "slab polyhedron without Levi-flatness",
                    "# n=1 complete\n2*Re(w)", 1, "PPPPPPPU", "TTTTTTTF",
                    "F = exp(-|z|^-2), flat at 0",
                    ("F = exp(-|z1|^-2) is flat at 0 and is represented by its zero jet",)),
        CorpusEntry("cusp-divergent", "non-canonical cusp with a divergent pure series",
                    f"# n=2 T=12 tail=z1:factorial:1:8\n2*Re(w) + {cusp} + {factorial_sum('z1', 8, 12)}", 2,
                    "PUUUURRU", "TFFFFFFF",
                    "cusp plus c_j = j! for j >= 8: regular type 6, infinite type, no canonical coordinate"),
        CorpusEntry("sum-form", "sum of divergent one-variable functions",
                    f"# n=2 T=12 tail=z1:factorial:1:2 tail=z2:factorial:1:2\n"
                    f"2*Re(w) + {f12} + {factorial_sum('z2', 2, 12)}", 2, "PPRRRRPU", "TTFFFFTF",
                    "f_1(z_1) + f_2(z_2) with divergent pure series"),
    )


CORPUS = _entries()


def entry(entry_id: str) -> CorpusEntry:
    for e in CORPUS:
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


@dataclass(frozen=True)
class CorpusResult:
    entry: CorpusEntry
    report: ClassificationReport
    table: str
    matches: bool
    sound: bool

    @property
    def passed(self) -> bool:
        return self.matches and self.sound


def truth_consistent(table: str, truth: str) -> bool:
    """No Proved where the truth is false and no Refuted where it is true."""
    return all(not (v == "P" and t == "F") and not (v == "R" and t == "T") for v, t in zip(table, truth))


def run_entry(e: CorpusEntry, budget: int = 10, seed: int = 0) -> CorpusResult:
    df = parse(e.text)
    rep = classify(df, budget=budget, seed=seed, annotations=e.annotations)
    rep.corpus_id = e.id
    table = rep.table()
    sound = diagram_consistent(rep.conditions, df.nvars == 1) and truth_consistent(table, e.truth)
    return CorpusResult(e, rep, table, table == e.expected, sound)


def run_corpus(budget: int = 10, seed: int = 0, ids=None) -> list:
    return [run_entry(e, budget, seed) for e in CORPUS if ids is None or e.id in ids]
