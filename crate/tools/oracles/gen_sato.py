"""Generate sato.json: forward rows and inverse recovery for the Sato map."""
import json, os
from fractions import Fraction as Fr
from oralib import QQ, XS, sato_forward, sato_inverse, op_to_json, ser_to_json

B = QQ()
XLEN = 12
C = XS(B, XLEN)
DEPTH = 10
out = {"_oracle": "tools/oracles/gen_sato.py"}

def xs(*coeffs):
    v = [Fr(c) for c in coeffs] + [Fr(0)] * (XLEN - len(coeffs))
    return v[:XLEN]

def op(top, *terms):
    ts = [t if isinstance(t, list) else xs(t) for t in terms]
    ts += [C.zero()] * (DEPTH - len(ts))
    return (top, ts[:DEPTH])

def nz(row):
    return {e: v for e, v in row[0].items() if v != 0}

# S1 = 1 + x D^-1: rows should start 1, y^-1 + y, y^-2 + 2, y^-3 + 3 y^-1, ...
S1 = op(0, 1, xs(0, 1))
rows1 = sato_forward(C, B, S1, DEPTH)
assert nz(rows1[0]) == {0: Fr(1)}
assert nz(rows1[1]) == {-1: Fr(1), 1: Fr(1)}
assert nz(rows1[2]) == {-2: Fr(1), 0: Fr(2)}
assert nz(rows1[3]) == {-3: Fr(1), -1: Fr(3)}

# recover S1 from the rows
K = DEPTH - 1
S1r = sato_inverse(B, rows1, K, XLEN)
for i in range(1, K + 1):
    want = S1[1][i] if i < DEPTH else C.zero()
    got = S1r[1][i]
    for j in range(K - i + 1):
        assert got[j] == want[j], (i, j)

out["S1"] = {"S": op_to_json(C, S1),
             "rows": [ser_to_json(B, r) for r in rows1],
             "recovered": op_to_json(C, S1r)}

# a denser S2 = 1 + (x^2/2) D^-1 + (1 + x) D^-2 + x^3 D^-3
S2 = op(0, 1, xs(0, 0, Fr(1, 2)), xs(1, 1), xs(0, 0, 0, 1))
rows2 = sato_forward(C, B, S2, DEPTH)
S2r = sato_inverse(B, rows2, K, XLEN)
for i in range(1, K + 1):
    want = S2[1][i] if i < DEPTH else C.zero()
    got = S2r[1][i]
    for j in range(K - i + 1):
        assert got[j] == want[j], (i, j)
out["S2"] = {"S": op_to_json(C, S2),
             "rows": [ser_to_json(B, r) for r in rows2],
             "recovered": op_to_json(C, S2r)}

path = os.path.join(os.path.dirname(__file__), "../../crates/core/tests/fixtures/sato.json")
with open(os.path.abspath(path), "w") as fh:
    json.dump(out, fh, indent=1, sort_keys=True)
print("wrote", os.path.abspath(path))
