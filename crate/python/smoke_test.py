#!/usr/bin/env python3
"""Smoke test for the distvar_py extension module.

Build the extension first:

    cargo build -p distvar-py --release

then run this script from the repository root:

    python3 python/smoke_test.py
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libdistvar_py.so", "distvar_py.so", "libdistvar_py.dylib")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("extension not found; run `cargo build -p distvar-py --release` first")
    staging = pathlib.Path(tempfile.mkdtemp(prefix="distvar_py_"))
    shutil.copy(built, staging / "distvar_py.so")
    sys.path.insert(0, str(staging))
    import distvar_py

    return distvar_py


def main():
    dv = load_module()

    u = dv.BlockUnitary.haar(2, 2, seed=42)
    assert u.m == 2 and u.n == 2
    assert u.unitarity_residual() < 1e-12

    # JSON round trip preserves the matrix exactly
    u2 = dv.BlockUnitary.from_json(u.to_json())
    assert u.matrix() == u2.matrix()

    # transfer function is a strict contraction inside the disk
    psi = u.psi(0.3 + 0.2j)
    assert len(psi) == 2 and len(psi[0]) == 2
    assert u.defect_residual(0.3 + 0.2j) < 1e-12

    # invariants reconstruct the variety polynomial
    q = dv.variety_poly(u)
    inv = dv.invariants(u)
    q2 = dv.reconstruct_q(dv.Invariants.from_json(inv.to_json()))
    assert q.relative_distance(q2) < 1e-8

    # the polynomial vanishes on its own sheets
    z = 0.4 - 0.1j
    for w in dv.sheets_w(q, z):
        assert abs(q.eval(z, w)) < 1e-8

    # gauge orbit members decide SAME, independent draws decide DIFFERENT
    assert dv.same_variety(u, dv.gauge_orbit_sample(u, 7))
    assert not dv.same_variety(u, dv.BlockUnitary.haar(2, 2, seed=43))

    # functional equation and full verification suite
    assert dv.lemma_residual(u, 0.5 + 0.1j) < 1e-9
    assert dv.is_distinguished(u)
    report, notices, passed = dv.verify(u, samples=32)
    assert passed, report
    assert '"unitarity"' in report

    print("smoke test passed")


if __name__ == "__main__":
    main()
