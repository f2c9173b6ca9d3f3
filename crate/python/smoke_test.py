"""Smoke test for the greedylab_py extension module.

Build the module first, then run:

    cargo build -p greedylab-py --release
    python python/smoke_test.py
"""

import json
import math
import pathlib
import shutil
import sys
import tempfile


def _import_module():
    try:
        import greedylab_py

        return greedylab_py
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        built = root / "target" / profile / "libgreedylab_py.so"
        if built.exists():
            stage = pathlib.Path(tempfile.mkdtemp(prefix="greedylab-py-"))
            shutil.copy(built, stage / "greedylab_py.so")
            sys.path.insert(0, str(stage))
            import greedylab_py

            return greedylab_py
    raise SystemExit("build the extension first: cargo build -p greedylab-py")


def main():
    gl = _import_module()
    x = [(1, 3.0), (2, 2.0), (3, 1.0)]

    l2 = gl.Space.lp(2.0)
    assert math.isclose(l2.norm(x), math.sqrt(14.0))
    assert gl.ordering(x) == [1, 2, 3]
    assert gl.ordering([(1, 1.0), (2, -1.0), (3, 0.5)]) == [1, 2, 3]
    assert math.isclose(gl.greedy_residual_norm(l2, x, 1), math.sqrt(5.0))
    assert gl.greedy_m(x, 2) == [(1, 3.0), (2, 2.0)]

    value, witness = gl.sigma(l2, x, 1, 5)
    assert witness == [1] and math.isclose(value, math.sqrt(5.0))

    value, witness = gl.d(l2, x, 2, 5)
    assert math.isclose(value, math.sqrt(1.5), rel_tol=1e-9)

    value, witness, signs = gl.d_star(gl.Space.lp(1.0), [(1, 1.0), (2, -1.0)], 2, 4)
    assert value < 1e-9 and len(signs) == 2

    assert math.isclose(gl.lp_indicator_distance(2.0, 4, 2), math.sqrt(2.0))
    assert gl.l1_indicator_distance(3, 7) == 3.0
    assert math.isclose(
        gl.hilbert_closed(x, 1, False), gl.d(gl.Space.hilbert(), x, 1, 4)[0], rel_tol=1e-9
    )

    summing = gl.Space.summing_c0()
    assert summing.norm([(1, 1.0), (2, -1.0)]) == 1.0

    report = json.loads(gl.constants_report(gl.Space.lp(2.0), 5))
    bounds = {e["name"]: e["lower_bound"] for e in report["estimates"]}
    assert all(abs(b - 1.0) < 1e-9 for b in bounds.values()), bounds
    assert report["exact_case"]["pass"]

    report = json.loads(gl.constants_report(summing, 5))
    assert report["estimates"][0]["name"] == "K_su"
    assert report["estimates"][0]["lower_bound"] > 1.0

    try:
        gl.Space.lp(0.5)
    except ValueError:
        pass
    else:
        raise AssertionError("lp(0.5) should raise")

    print("smoke test passed")


if __name__ == "__main__":
    main()
