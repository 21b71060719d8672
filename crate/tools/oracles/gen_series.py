"""Generate series_basic.json: frozen expectations for Laurent-series ops."""
import json, os
from fractions import Fraction as Fr
from oralib import (QQ, ser_add, ser_mul, ser_inv, ser_nth_root, ser_compose,
                    ser_revert, ser_one, ser_monomial, ser_sub, ser_to_json, ser_trim)

R = QQ()
W = 14
out = {"_oracle": "tools/oracles/gen_series.py"}

def ser(d, g=W):
    return ser_trim(R, ({e: Fr(v) for e, v in d.items()}, g))

def expect_identity(name, got, want_dict):
    c, g = got
    for e, v in want_dict.items():
        assert c.get(e, Fr(0)) == Fr(v), (name, e, c.get(e), v)

# invert: 1/(1 - z - z^2) has Fibonacci coefficients
s = ser({0: 1, 1: -1, 2: -1})
t = ser_inv(R, s)
prod = ser_mul(R, s, t)
expect_identity("fib", prod, {0: 1, 1: 0, 2: 0, 5: 0})
out["invert_fib"] = {"input": ser_to_json(R, s), "inverse": ser_to_json(R, t)}

# invert with a Laurent tail: 1/(z^-1 + 1 + z)
s = ser({-1: 1, 0: 1, 1: 1})
t = ser_inv(R, s)
assert ser_mul(R, s, t)[0] == {0: Fr(1)}
out["invert_laurent"] = {"input": ser_to_json(R, s), "inverse": ser_to_json(R, t)}

# square root of z^2 (1 + z)
s = ser({2: 1, 3: 1})
t = ser_nth_root(R, s, 2)
assert ser_sub(R, ser_mul(R, t, t), s)[0] == {}
out["root_z2_1pz"] = {"input": ser_to_json(R, s), "n": 2, "root": ser_to_json(R, t)}

# square root of z^-4 (1 + z + z^2)
s = ser({-4: 1, -3: 1, -2: 1})
t = ser_nth_root(R, s, 2)
assert ser_sub(R, ser_mul(R, t, t), s)[0] == {}
out["root_laurent"] = {"input": ser_to_json(R, s), "n": 2, "root": ser_to_json(R, t)}

# cube root of (1 + z)^3 is exactly 1 + z
s = ser({0: 1, 1: 3, 2: 3, 3: 1})
t = ser_nth_root(R, s, 3)
assert t[0] == {0: Fr(1), 1: Fr(1)}, t
out["root_exact_cube"] = {"input": ser_to_json(R, s), "n": 3, "root": ser_to_json(R, t)}

# compose z^-1 with (z + z^2) equals invert(z + z^2)
g = ser({1: 1, 2: 1})
f = ser({-1: 1})
comp = ser_compose(R, f, g)
inv = ser_inv(R, g)
# agree on the shared window
cw = min(comp[1], inv[1])
for e in range(-2, cw):
    assert comp[0].get(e, Fr(0)) == inv[0].get(e, Fr(0)), e
out["compose_inv"] = {"outer": ser_to_json(R, f), "inner": ser_to_json(R, g),
                      "result": ser_to_json(R, comp)}

# mixed-exponent composition: (z^-2 + z) o (z + z^3)
f = ser({-2: 1, 1: 1})
g = ser({1: 1, 3: 1})
comp = ser_compose(R, f, g)
out["compose_mixed"] = {"outer": ser_to_json(R, f), "inner": ser_to_json(R, g),
                        "result": ser_to_json(R, comp)}

# reversion of z + z^2 (signed Catalan numbers) and of z + z^2 + z^3
for name, d in [("revert_catalan", {1: 1, 2: 1}), ("revert_deg3", {1: 1, 2: 1, 3: 1})]:
    f = ser(d)
    g = ser_revert(R, f)
    chk = ser_compose(R, f, g)
    for e in range(1, chk[1]):
        assert chk[0].get(e, Fr(0)) == (Fr(1) if e == 1 else Fr(0)), (name, e)
    out[name] = {"input": ser_to_json(R, f), "reversion": ser_to_json(R, g)}

path = os.path.join(os.path.dirname(__file__), "../../crates/core/tests/fixtures/series_basic.json")
with open(os.path.abspath(path), "w") as fh:
    json.dump(out, fh, indent=1, sort_keys=True)
print("wrote", os.path.abspath(path))
