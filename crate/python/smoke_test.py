"""Smoke test for the noise_lab extension module.

Build with `cargo build -p noise-lab-python`, then run
`python3 python/smoke_test.py` from the repository root.
"""

import os
import shutil
import sys
import tempfile
from fractions import Fraction

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    built = os.path.join(ROOT, "target", "debug", "libnoise_lab.so")
    tmp = tempfile.mkdtemp()
    shutil.copy(built, os.path.join(tmp, "noise_lab.so"))
    sys.path.insert(0, tmp)
    import noise_lab

    return noise_lab


def main():
    nl = load()

    m = nl.NoiseModel.coins(2)
    assert m.size == 4 and m.n_cells == 2
    psi = ["6", "2", "0", "4"]
    assert m.expectation(psi) == "3"
    masses = m.spectral_masses(psi)
    assert masses["∅"] == "9" and masses["{1,2}"] == "4", masses
    assert m.first_chaos_dimension() == 2

    skewed = nl.NoiseModel([[Fraction(1, 3), Fraction(2, 3)], ["1/4", "1/4", "1/2"]])
    assert skewed.size == 6
    q = skewed.project([1], ["1", "2", "3", "4", "5", "6"])
    assert len(q) == 6

    four = nl.NoiseModel.coins(4)
    v = [2, 0, 0, 2, 0, -2, -2, 0, 0, -2, -2, 0, 2, 0, 0, 2]
    assert four.atomless_defect(v, [[1, 2], [3, 4]]) == "1"

    a = nl.RegOpen([("0", "1/3")])
    b = nl.RegOpen([("1/4", "1/2")])
    assert (a | b).intervals() == [("0", "1/2")]
    assert (a & b).intervals() == [("1/4", "1/3")]
    assert (~a) | a == nl.RegOpen.one()
    assert (a & b).le(a)
    assert Fraction(1, 5) in a and "1/2" not in a
    assert a.boundary() == ["1/3"]
    assert len({a, nl.RegOpen([("0", "1/3")])}) == 1

    emb = nl.Embedding(["1/5", "1/3", "2/3"])
    assert emb.h(a) == [1]
    join, witness = emb.boundary_dichotomy(a)
    assert join == [1, 3] and witness == [2], (join, witness)
    assert emb.verify_closure_test(3, 0)

    assert nl.check_regular_open_laws(100, 1)
    code, text = nl.verify(os.path.join(ROOT, "crates", "core", "examples", "two-coins.json"), only="laws")
    assert code == 0 and "summary:" in text, text

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
