"""Generate elliptic.json: the local expansion of the plane-cubic family

    y0 = y1^3 + A y0^2 y1 + B y0^3

over Q[A,B]: the solution series y0(y1), the uniformizer alpha = sqrt(y0/y1),
the reversion y1(alpha), the two affine generators, and their relation.
"""
import json, os
from fractions import Fraction as Fr
from oralib import (PolyRing, ser_add, ser_mul, ser_inv, ser_nth_root, ser_revert,
                    ser_sub, ser_monomial, ser_to_json, ser_trim, ser_smul)

R = PolyRing(["A", "B"])
W = 18
out = {"_oracle": "tools/oracles/gen_elliptic.py"}

A = R.sym("A")
B = R.sym("B")
y1 = ser_monomial(R, R.one(), 1, W)

def cap(s):
    return ser_trim(R, (s[0], min(s[1], W)))

# fixed point from 0: valuation-raising, so iterate to the window
y0 = ({}, W)
for _ in range(W):
    t1 = ser_monomial(R, R.one(), 3, W)                       # y1^3
    t2 = ({e + 1: R.mul(A, c) for e, c in ser_mul(R, y0, y0)[0].items()},
          ser_mul(R, y0, y0)[1] + 1)                           # A y0^2 y1
    y03 = ser_mul(R, ser_mul(R, y0, y0), y0)
    t3 = ({e: R.mul(B, c) for e, c in y03[0].items()}, y03[1])  # B y0^3
    y0 = cap(ser_add(R, ser_add(R, t1, t2), t3))

# verify it is a fixed point and spot-check frozen coefficients
sq = ser_mul(R, y0, y0)
rhs = ser_add(R, ser_monomial(R, R.one(), 3, W),
              ser_add(R, ({e + 1: R.mul(A, c) for e, c in sq[0].items()}, sq[1] + 1),
                      ({e: R.mul(B, c) for e, c in ser_mul(R, sq, y0)[0].items()},
                       ser_mul(R, sq, y0)[1])))
assert ser_sub(R, y0, cap(rhs))[0] == {}, "not a fixed point"
assert y0[0][3] == R.one()
assert y0[0][7] == A
assert y0[0][9] == B
assert y0[0][11] == R.smul(2, R.mul(A, A))

alpha2 = ser_mul(R, y0, ser_inv(R, y1))      # y0 / y1, valuation 2, monic
alpha = ser_nth_root(R, alpha2, 2)
y1_of_alpha = ser_revert(R, alpha)
inv_y1 = ser_inv(R, y1_of_alpha)

# identity: 1/y1^2 = alpha^-2 + A alpha^2 + B alpha^4
lhs = ser_mul(R, inv_y1, inv_y1)
idrhs = ser_trim(R, ({-2: R.one(), 2: A, 4: B}, lhs[1]))
assert ser_sub(R, lhs, idrhs)[0] == {}, "uniformizer identity"

# generators and the affine relation gen2^2 - gen1^3 - A gen1 - B = 0
gen1 = ser_monomial(R, R.one(), -2, W)
gen2 = ser_mul(R, ser_monomial(R, R.one(), -2, inv_y1[1] + 10 ** 6), inv_y1)
g2sq = ser_mul(R, gen2, gen2)
rel = ser_sub(R, g2sq, ser_trim(R, ({-6: R.one(), -2: A, 0: B}, g2sq[1])))
assert rel[0] == {}, "affine cubic relation"

out["y0"] = ser_to_json(R, y0)
out["alpha"] = ser_to_json(R, alpha)
out["y1_of_alpha"] = ser_to_json(R, y1_of_alpha)
out["gen2"] = ser_to_json(R, gen2)

path = os.path.join(os.path.dirname(__file__), "../../crates/core/tests/fixtures/elliptic.json")
with open(os.path.abspath(path), "w") as fh:
    json.dump(out, fh, indent=1, sort_keys=True)
print("wrote", os.path.abspath(path))
