"""Smoke test for the qbethe_py extension.

Build the module and put it on the path first, for example:

    cargo build --release -p qbethe-python --features extension-module
    cp target/release/libqbethe_py.so python/qbethe_py.so
    python3 python/smoke_test.py
"""

import json
from fractions import Fraction

import qbethe_py as qb


def main():
    assert qb.kernel("f", "3", "1") == "11/4"
    assert qb.izergin([], []) == "1"

    cfg = qb.BetheConfig(["3"], ["5/7"], ["-2"], ["11/3"], kappa=["1", "5/3", "1"])
    s = cfg.scalar_sum()
    assert cfg.scalar_det("S1") == s
    assert cfg.scalar_intermediate() == s
    print("scalar product", s)

    try:
        cfg.scalar_det("Sq2")
    except ValueError as e:
        assert "contract" in str(e)
    else:
        raise AssertionError("Sq2 accepted an S1 twist")

    ff = qb.BetheConfig(["3"], [], ["-5"], [], z="7", r1_at_z="2", r3_at_z="1")
    assert ff.form_factor("ff22") == ff.form_factor("ff22_analytic") == "-105/64"

    vac = qb.BetheConfig([], [], [], [], kappa=["1", "1", "4"], z="7", r3_at_z="3")
    assert Fraction(vac.form_factor("ff33_q2")) == 3

    records, ok = qb.verify("hc", seed=1, trials=1, max_a=1, max_b=1)
    assert ok and records
    assert all(json.loads(r)["status"] == "pass" for r in records)
    print("ok:", len(records), "suite records")


if __name__ == "__main__":
    main()
