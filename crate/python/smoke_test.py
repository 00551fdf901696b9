#!/usr/bin/env python3
"""Smoke test for the Python bindings.

Build the extension first (either way works):

    maturin develop -m crates/py/Cargo.toml --release
or
    cargo build -p equigeo-py --release
    cp target/release/libequigeo.so python/equigeo.so

then run:   python3 python/smoke_test.py
"""

import sys
import pathlib

sys.path.insert(0, str(pathlib.Path(__file__).parent))

import equigeo


def check(label, cond):
    status = "ok" if cond else "FAIL"
    print(f"  {status}  {label}")
    if not cond:
        sys.exit(1)


def main():
    print("field arithmetic")
    f = equigeo.Field(120)
    check("conductor 120, degree 32", f.conductor() == 120 and f.degree() == 32)
    check("z4*z4 == -1", f.parse("z4*z4") == f.parse("-1"))
    s6 = f.parse("(z8+z8^-1)*(z12+z12^-1)")
    check("sqrt6 squares to 6", s6 * s6 == f.parse("6"))
    re, im = s6.embed()
    check("sqrt6 embeds near 2.449", abs(re - 6 ** 0.5) < 1e-9 and abs(im) < 1e-9)
    check("exact square root search", f.sqrt(f.parse("-3/2")) is not None)

    print("polynomials")
    q = f.poly("x1^2+x2^2+x3^2+x4^2+x5^2")
    check("5 terms of degree 2", q.num_terms() == 5 and q.degree() == 2)
    pt = [f.parse(c) for c in ("1", "1", "1", "2*z4", "1")]
    check("orbit representative on the quadric", q.eval(pt).is_zero())
    check("partial derivative", q.partial(0) == f.poly("2*x1"))

    print("groups and orbits")
    tk = equigeo.Toolkit()
    std = tk.group("A5-standard")
    check("order 60", std.order() == 60)
    check("census", std.order_census() == {1: 1, 2: 15, 3: 20, 5: 24})
    check("orbit of the printed point has length 5", std.orbit_length("x1.s5") == 5)
    check("generic stabilizer is trivial", std.stabilizer_order("3 : -7 : 11 : 2 : 19") == 1)
    check("invariant quadrics dimension 2", std.invariant_dimension(2) == 2)
    check(
        "orbit table of the diagonal quadric",
        std.small_orbit_lengths("X1", 19) == [5, 5, 10, 10, 12, 12],
    )

    print("birational image")
    out = tk.cremona_image("A5-standard", "x1.s5")
    check("five A1 points", out["census"] == ["A1"] * 5 and out["invariant"])

    print("check runner")
    reports = tk.run_checks("lattice.detA")
    check("lattice.detA passes", len(reports) == 1 and reports[0]["status"] == "pass")
    check("computed determinant 186", reports[0]["computed"] == "det 186")
    j1 = tk.run_checks_json("lattice.*")
    j2 = tk.run_checks_json("lattice.*")
    check("JSON ledger deterministic", j1 == j2)

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
