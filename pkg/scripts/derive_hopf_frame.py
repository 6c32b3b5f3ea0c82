#!/usr/bin/env python3
"""Derive the Hopf-surface model fixture from quaternion arithmetic.

The Lie algebra is the quaternions H with basis (e1, e2, e3, e4) =
(i, j, k, 1): the su(2) factor spanned by i, j, k with commutator brackets
[i, j] = 2k (cyclic) plus the central direction 1.  The hypercomplex
structure is LEFT multiplication by i, j, k, which commutes with the
right-invariant vector fields and therefore descends to the associated
compact quotient.

Running this script regenerates src/hkt_lab/fixtures/hopf.json and
validates the compiled model end to end.  It is retained so the fixture is
reproducible rather than hand-typed.
"""

import json
from pathlib import Path

BASIS = ["i", "j", "k", "1"]

# quaternion multiplication table: MUL[a][b] = (sign, unit)
MUL = {
    "1": {"1": (1, "1"), "i": (1, "i"), "j": (1, "j"), "k": (1, "k")},
    "i": {"1": (1, "i"), "i": (-1, "1"), "j": (1, "k"), "k": (-1, "j")},
    "j": {"1": (1, "j"), "i": (-1, "k"), "j": (-1, "1"), "k": (1, "i")},
    "k": {"1": (1, "k"), "i": (1, "j"), "j": (-1, "i"), "k": (-1, "1")},
}


def left_mult_matrix(unit: str) -> list[list[int]]:
    """Matrix of x -> unit * x in the basis (i, j, k, 1), columns = images."""
    mat = [[0] * 4 for _ in range(4)]
    for c, b in enumerate(BASIS):
        sign, prod = MUL[unit][b]
        mat[BASIS.index(prod)][c] = sign
    return mat


def commutator(a: str, b: str) -> dict[str, int]:
    """[a, b] = ab - ba expanded in the basis."""
    out: dict[str, int] = {}
    s1, p1 = MUL[a][b]
    s2, p2 = MUL[b][a]
    out[p1] = out.get(p1, 0) + s1
    out[p2] = out.get(p2, 0) - s2
    return {u: c for u, c in out.items() if c}


def main():
    frame = {"I": left_mult_matrix("i"), "J": left_mult_matrix("j"),
             "K": left_mult_matrix("k")}
    structure = []
    for ia in range(4):
        for ib in range(ia + 1, 4):
            for unit, c in commutator(BASIS[ia], BASIS[ib]).items():
                structure.append({"i": ia + 1, "j": ib + 1,
                                  "k": BASIS.index(unit) + 1, "c": c})
    spec = {
        "name": "hopf",
        "backend": "lie",
        "n": 1,
        "frame": frame,
        "metric": "identity",
        "structure_constants": structure,
    }

    out = Path(__file__).resolve().parent.parent / "src" / "hkt_lab" / \
        "fixtures" / "hopf.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(spec, indent=2) + "\n")
    print(f"wrote {out}")

    from hkt_lab.models import ManifoldModel, ModelSpec
    model = ManifoldModel(ModelSpec.from_dict(spec))
    status = model.hkt_status()
    assert status["is_hkt"], status
    assert not status["is_hyperkahler"], status
    torsion = model.bismut_torsion()
    assert torsion["all_equal"], torsion
    print("hopf model validates: HKT, not hyperkahler, equal torsion forms")


if __name__ == "__main__":
    main()
