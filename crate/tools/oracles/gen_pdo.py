"""Generate pdo_basic.json: frozen expectations for operator-ring ops over Q[[x]]."""
import json, os
from fractions import Fraction as Fr
from oralib import (QQ, XS, op_mul, op_invert, op_one, op_sub, op_left_normal_form,
                    op_sigma, op_act, op_to_json, ser_to_json)

B = QQ()
XLEN = 12
C = XS(B, XLEN)
DEPTH = 10
out = {"_oracle": "tools/oracles/gen_pdo.py"}

def xs(*coeffs):
    v = [Fr(c) for c in coeffs] + [Fr(0)] * (XLEN - len(coeffs))
    return v[:XLEN]

def op(top, *terms):
    ts = [t if isinstance(t, list) else xs(t) for t in terms]
    ts += [C.zero()] * (DEPTH - len(ts))
    return (top, ts[:DEPTH])

# (D + x)(D - x) = D^2 - 1 - x^2
P = op(1, 1, xs(0, 1))
Q = op(1, 1, xs(0, -1))
prod = op_mul(C, P, Q)
assert prod[0] == 2
assert prod[1][0] == C.one() and C.iszero(prod[1][1])
assert prod[1][2] == xs(-1, 0, -1)
out["mul_weyl"] = {"lhs": op_to_json(C, P), "rhs": op_to_json(C, Q),
                   "product": op_to_json(C, prod)}

# a general product with negative orders:
# P = D + x + x^2 D^-1,  Q = D^-1 + x D^-2
P = op(1, 1, xs(0, 1), xs(0, 0, 1))
Q = op(-1, 1, xs(0, 1))
prod = op_mul(C, P, Q)
out["mul_mixed"] = {"lhs": op_to_json(C, P), "rhs": op_to_json(C, Q),
                    "product": op_to_json(C, prod)}

# inverse of S = 1 + x D^-1 (two-sided within the window)
S = op(0, 1, xs(0, 1))
T = op_invert(C, S)
for left, right in [(T, S), (S, T)]:
    r = op_sub(C, op_mul(C, left, right), op_one(C, DEPTH))
    assert all(C.iszero(c) for c in r[1][:DEPTH - 1]), "inverse check"
out["invert_S"] = {"input": op_to_json(C, S), "inverse": op_to_json(C, T)}

# left normal form of x^2 D^2: b = [x^2, -4x, 2]
P = op(2, xs(0, 0, 1))
L = op_left_normal_form(C, P)
assert L[1][0] == xs(0, 0, 1) and L[1][1] == xs(0, -4) and L[1][2] == xs(2)
out["lnf_x2d2"] = {"input": op_to_json(C, P), "left_terms": op_to_json(C, L)}

# left normal form of a denser operator
P = op(1, xs(1, 1), xs(0, 0, 3), xs(0, 1))
L = op_left_normal_form(C, P)
out["lnf_dense"] = {"input": op_to_json(C, P), "left_terms": op_to_json(C, L)}

# sigma of D^n S for S = 1 + x D^-1, n = 0..5  (the forward rows)
rows = []
for n in range(6):
    Dn = (n, [C.one()] + [C.zero()] * (DEPTH - 1))
    rows.append(ser_to_json(B, op_sigma(C, op_mul(C, Dn, S))))
out["sigma_rows_S"] = {"S": op_to_json(C, S), "rows": rows}

# act example: act(S, y^-1 + 2 y^2)
v = ({-1: Fr(1), 2: Fr(2)}, 8)
w = op_act(C, B, S, v)
out["act_example"] = {"P": op_to_json(C, S),
                      "v": ser_to_json(B, v), "result": ser_to_json(B, w)}

path = os.path.join(os.path.dirname(__file__), "../../crates/core/tests/fixtures/pdo_basic.json")
with open(os.path.abspath(path), "w") as fh:
    json.dump(out, fh, indent=1, sort_keys=True)
print("wrote", os.path.abspath(path))
