"""Generate xlx.json: frozen conjugators X with X^-1 L X = D^N."""
import json, os
from fractions import Fraction as Fr
from oralib import QQ, XS, op_mul, op_invert, op_sub, op_to_json, xlx_conjugator

B = QQ()
XLEN = 14
C = XS(B, XLEN)
DEPTH = 8
out = {"_oracle": "tools/oracles/gen_xlx.py"}

def xs(*coeffs):
    v = [Fr(c) for c in coeffs] + [Fr(0)] * (XLEN - len(coeffs))
    return v[:XLEN]

def op(top, *terms):
    ts = [t if isinstance(t, list) else xs(t) for t in terms]
    ts += [C.zero()] * (DEPTH - len(ts))
    return (top, ts[:DEPTH])

def check(L, N, X, okdepth, okx):
    # residual X^-1 L X - D^N must vanish on the reliable part of the window
    Xi = op_invert(C, X)
    R = op_mul(C, op_mul(C, Xi, L), X)
    assert R[0] == N
    for l in range(okdepth):
        coef = R[1][l]
        want = C.one() if l == 0 else C.zero()
        for i in range(okx):
            assert coef[i] == want[i], (l, i, coef[i])

cases = []

# Airy-type: L = D^2 + x
L = op(2, 1, 0, xs(0, 1))
X = xlx_conjugator(C, L, 2, DEPTH)
check(L, 2, X, DEPTH - 1, XLEN - 2 * DEPTH + 2)
cases.append({"name": "airy", "N": 2, "L": op_to_json(C, L), "X": op_to_json(C, X)})

# constant coefficients: L = D^2 + 2D + 5 (s_0 should be exp(-x))
L = op(2, 1, 2, 5)
X = xlx_conjugator(C, L, 2, DEPTH)
check(L, 2, X, DEPTH - 1, XLEN - 2 * DEPTH + 2)
cases.append({"name": "const2", "N": 2, "L": op_to_json(C, L), "X": op_to_json(C, X)})

# order 3 with series coefficients: L = D^3 + x D + (1 + x^2)
L = op(3, 1, 0, xs(0, 1), xs(1, 0, 1))
X = xlx_conjugator(C, L, 3, DEPTH)
check(L, 3, X, DEPTH - 1, XLEN - 2 * DEPTH + 2)
cases.append({"name": "ord3", "N": 3, "L": op_to_json(C, L), "X": op_to_json(C, X)})

# negative order: L = D^-1 + x D^-2
L = op(-1, 1, xs(0, 1))
X = xlx_conjugator(C, L, -1, DEPTH)
check(L, -1, X, DEPTH - 1, XLEN - 2 * DEPTH + 2)
cases.append({"name": "negord", "N": -1, "L": op_to_json(C, L), "X": op_to_json(C, X)})

out["cases"] = cases

path = os.path.join(os.path.dirname(__file__), "../../crates/core/tests/fixtures/xlx.json")
with open(os.path.abspath(path), "w") as fh:
    json.dump(out, fh, indent=1, sort_keys=True)
print("wrote", os.path.abspath(path))
