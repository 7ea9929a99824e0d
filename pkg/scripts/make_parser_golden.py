"""Regenerate tests/golden/parser.json: 300 deterministic parser cases.

Each case stores the input text and the exact compact JSON document the parser
produces for it (a parse document or an error document).  Run after an
intentional change of the parser or of its output format.
"""
from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

from newtonflat.errors import NewtonFlatError
from newtonflat.parsing import parse
from newtonflat.report import dumps, error_document, parse_document

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "golden" / "parser.json"
NUMBERS = ["1", "2", "3", "1/2", "3/4", "5/3", "0.25", "7"]
GAUSS = ["i", "(1+i)", "(2-3*i)", "(1/2*i)", "(-1+2*i)"]


def holo(rng: random.Random, nvars: int, w: bool) -> str:
    """A random holomorphic monomial sum."""
    out = []
    for _ in range(rng.randint(1, 3)):
        factors = [f"z{rng.randint(1, nvars)}^{rng.randint(1, 4)}" for _ in range(rng.randint(1, 2))]
        if w and rng.random() < 0.3:
            factors.append("w")
        coef = rng.choice(NUMBERS + GAUSS)
        out.append("*".join([coef] + factors) if rng.random() < 0.6 else "*".join(factors))
    return " + ".join(out)


def real_term(rng: random.Random, nvars: int, w: bool) -> str:
    kind = rng.randrange(6)
    if kind == 0:
        return f"2*Re({holo(rng, nvars, w)})"
    if kind == 1:
        return f"Im({holo(rng, nvars, w)})"
    if kind == 2:
        return f"|{holo(rng, nvars, False)}|^{rng.choice([2, 4])}"
    if kind == 3:
        return f"{rng.choice(NUMBERS)}*|z{rng.randint(1, nvars)}|^{2 * rng.randint(1, 4)}"
    if kind == 4:
        a = holo(rng, nvars, False)
        return f"({a})*conj({a})"
    return f"-{rng.choice(NUMBERS)}*Re(z{rng.randint(1, nvars)}^{rng.randint(1, 3)}*conj(z{rng.randint(1, nvars)})^{rng.randint(1, 3)})"


def valid_case(rng: random.Random) -> str:
    nvars = rng.randint(1, 3)
    w = rng.random() < 0.7
    parts = (["2*Re(w)"] if w else []) + [real_term(rng, nvars, w) for _ in range(rng.randint(1, 4))]
    text = " + ".join(parts)
    r = rng.random()
    if r < 0.2:
        text = f"# n={nvars} T=40 complete\n{text}"
    elif r < 0.3:
        text = f"# n={nvars} T=40\n{text}"
    elif r < 0.35:
        text = f"# n={nvars} T=40 tail=z1:{rng.choice(['geometric', 'factorial', 'polynomial'])}:{rng.choice(['1', '1/2', '2'])}\n{text}"
    return text


MUTATIONS = ["@", ")", "(", "|", "^", "^^", "+*", "z0", "Re(", "conj", "/0", "^1.5", "z", "$", "1/", "**"]


def invalid_case(rng: random.Random) -> str:
    text = valid_case(rng)
    kind = rng.randrange(4)
    if kind == 0:  # insert a bad token
        k = rng.randint(0, len(text))
        return text[:k] + rng.choice(MUTATIONS) + text[k:]
    if kind == 1:  # truncate
        return text[: rng.randint(0, max(0, len(text) - 1))]
    if kind == 2:  # a holomorphic term that is not real
        return text + " + " + holo(rng, 2, False)
    return rng.choice(["# n=1 T=2\n|z1|^4", "# n=x\nz1", "# n=1 T=0\n|z1|^2", "# n=1 foo\n|z1|^2",
                       "# n=1\n|z2|^2", "|z1|^3", "# T=4 tail=z1:weird:1\n|z1|^2", "Re(z1) / (z1 - z1)"])


def cases(seed: int = 20240607, count: int = 300) -> list:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        text = valid_case(rng) if k % 3 else invalid_case(rng)
        out.append({"id": k, "input": text})
    return out


def render(text: str) -> str:
    try:
        doc = parse_document(parse(text))
    except NewtonFlatError as exc:
        doc = error_document(exc)
    return dumps(doc)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    data = [{**c, "output": render(c["input"])} for c in cases()]
    args.out.write_text(json.dumps(data, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    kinds = sum(json.loads(d["output"])["kind"] == "error" for d in data)
    print(f"wrote {len(data)} cases ({kinds} errors) to {args.out}")


if __name__ == "__main__":
    main()
