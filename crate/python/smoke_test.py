"""Smoke test for the kakimizu_py extension module.

Builds the extension with cargo, copies it next to a temporary import path
and exercises the main entry points.

    python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "kakimizu-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libkakimizu_py.so"
    if not lib.exists():
        sys.exit(f"extension not found at {lib}")
    return lib


def main():
    lib = build()
    with tempfile.TemporaryDirectory() as tmp:
        shutil.copy(lib, Path(tmp) / "kakimizu_py.so")
        sys.path.insert(0, tmp)
        import kakimizu_py as k

        f1 = k.HeightFamily(2, [[0, 0], [0, 1], [1, 0]])
        assert len(f1) == 3 and f1.is_convex_closed()
        assert f1.members == [[0, 0], [0, 1], [1, 0]]
        assert k.HeightFamily.parse(f1.serialize()).serialize() == f1.serialize()

        ps = k.ProjectionStructure.from_family(f1)
        checks = ps.run_all_checks()
        assert checks and all(passed for _, passed, _, _ in checks), checks
        assert ps.dismantle(2) == ([1, 0, 2], [1, 2])
        assert ps.convex_hull([1, 2]) == [0, 1, 2]
        assert ps.find_invariant_simplex(1) == [0]
        assert ps.fix_complex() == ([[0]], [])

        c4 = k.FlagComplex(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        assert c4.greedy_dismantle() is None
        assert [b for b, _ in c4.reduced_homology()] == [0, 1]
        assert not c4.is_homology_point()
        assert f1.complex().is_homology_point()

        assert k.smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
        assert k.kakimizu_distance([0, 1], [1, 0]) == 2
        assert k.project([0, 0], [0, 2]) == [0, 1]

        fam = k.HeightFamily.generate(3, 4, 3, seed=7, symmetric=True)
        assert [1, 0, 2] in fam.column_symmetries()
        ps = k.ProjectionStructure.from_family(fam)
        assert all(passed for _, passed, _, _ in ps.run_all_checks())

        try:
            k.HeightFamily.parse("%heightfamily v1\ncolumns 2\nvertex 0 1 1\n")
        except ValueError as e:
            assert "line 3" in str(e)
        else:
            raise AssertionError("unnormalized heights were accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
