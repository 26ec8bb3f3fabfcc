"""Smoke test for the dklattice Python module.

Build and install with `pip install --no-build-isolation -e crates/python`
(or `maturin develop`), then run `python python/smoke_test.py`.
"""

import dklattice as dk

shape = [3, 3, 3, 3]

# e1 e1 = -x and e2 e1 = -e12
assert dk.blade_product(0b0010, 0b0010) == (-1, 0)
assert dk.blade_product(0b0100, 0b0010) == (-1, 0b0110)

omega = dk.Form.random(shape, 1)
assert omega.shape == shape
assert len(omega.coeffs()) == 16 * 81

two_routes = dk.d_c(omega) + dk.delta_c(omega)
assert two_routes.max_abs_diff(dk.dirac(omega)) <= 1e-12
assert dk.d_c(dk.d_c(omega)).sup_norm() <= 1e-13

parts = dk.decompose(omega, ["p0+", "p0-"])
total = parts[0] + parts[1]
assert total.max_abs_diff(omega) <= 1e-13

text = omega.to_json()
assert dk.Form.from_json(text) == omega

modes = dk.eigenmodes("dk", [4, 4, 4, 4], [0, 2, 0, 0])
masses = sorted(m.mass.real for m in modes)
assert masses == [-2.0] * 8 + [2.0] * 8, masses
for mode in modes:
    r = dk.residual("dk", mode.form(), mode.mass)
    assert r.sup_norm() <= 1e-10

lines, ok = dk.run_verify([2, 2, 2, 2], seed=3, suite="projectors")
assert ok and all(line.startswith("PROP ") for line in lines)

try:
    dk.residual("maxwell", omega, 1.0)
except ValueError:
    pass
else:
    raise AssertionError("unknown equation tag accepted")

print("smoke test passed")
