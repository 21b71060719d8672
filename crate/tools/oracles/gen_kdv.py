"""Generate kdv.json: commutator coefficients for L = D^2 + v, P = D^3 + a D^2 + b D + c
in the jet ring Q{v,a,b,c}, plus the eliminated stationary equation.

Orientation note (documented in the library): the coefficients of LP - PL are
   (I)   2 a'
   (II)  a'' + 2 b' - 3 v'
   (III) b'' + 2 c' - 3 v'' - 2 a v'
   (IV)  c'' - v''' - a v'' - b v'
and substituting (I)-(III) into (IV) with a constant yields
   -(1/6) b''' - (2/3) b b'.
"""
import json, os
from fractions import Fraction as Fr
from oralib import JetRing, op_mul, op_sub, op_to_json

J = JetRing(["v", "a", "b", "c"], 4)

class JC:
    """Adapter giving the jet ring the coefficient-ring interface used by op_mul."""
    B = J
    def zero(self): return J.zero()
    def one(self): return J.one()
    def add(self, x, y): return J.add(x, y)
    def neg(self, x): return J.neg(x)
    def mul(self, x, y): return J.mul(x, y)
    def smul(self, q, x): return J.smul(q, x)
    def iszero(self, x): return J.iszero(x)
    def eq(self, x, y): return J.eq(x, y)
    def derive(self, x): return J.derive(x)
    def to_json(self, x): return J.to_json(x)

C = JC()
DEPTH = 7
out = {"_oracle": "tools/oracles/gen_kdv.py"}

def op(top, terms):
    ts = list(terms) + [J.zero()] * (DEPTH - len(terms))
    return (top, ts[:DEPTH])

v, a, b, c = (J.jet(s, 0) for s in ["v", "a", "b", "c"])
L = op(2, [J.one(), J.zero(), v])
P = op(3, [J.one(), a, b, c])

comm = op_sub(C, op_mul(C, L, P), op_mul(C, P, L))
assert comm[0] == 5 and J.iszero(comm[1][0]) and J.iszero(comm[1][1])
eqs = comm[1][2:6]          # coefficients of D^3, D^2, D^1, D^0

def jets(name, k):
    return J.jet(name, k)

expect = [
    J.smul(2, jets("a", 1)),
    J.add(J.add(jets("a", 2), J.smul(2, jets("b", 1))), J.smul(-3, jets("v", 1))),
    J.add(J.add(J.add(jets("b", 2), J.smul(2, jets("c", 1))), J.smul(-3, jets("v", 2))),
          J.smul(-2, J.mul(a, jets("v", 1)))),
    J.add(J.add(J.add(jets("c", 2), J.neg(jets("v", 3))), J.neg(J.mul(a, jets("v", 2)))),
          J.neg(J.mul(b, jets("v", 1)))),
]
for got, want in zip(eqs, expect):
    assert J.eq(got, want), (J.to_json(got), J.to_json(want))

# elimination: a' -> 0 (a constant), v^{(k)} -> (2/3) b^{(k)} for k >= 1,
# c' -> (1/2) b'' + (2/3) a b', and its derivatives.
table = {}
for k in range(1, 5):
    table[(J.syms.index("a"), k)] = J.zero()
    table[(J.syms.index("v"), k)] = J.smul(Fr(2, 3), jets("b", k))
cexp = J.add(J.smul(Fr(1, 2), jets("b", 2)), J.smul(Fr(2, 3), J.mul(a, jets("b", 1))))
for k in range(1, 4):
    table[(J.syms.index("c"), k)] = cexp
    if k < 3:
        cexp = J.derive(cexp)
reduced = J.subst(eqs[3], table)
reduced = J.subst(reduced, table)   # second pass resolves jets introduced by c-substitution
want = J.add(J.smul(Fr(-1, 6), jets("b", 3)), J.smul(Fr(-2, 3), J.mul(b, jets("b", 1))))
assert J.eq(reduced, want), (J.to_json(reduced), J.to_json(want))

out["system"] = [J.to_json(e) for e in eqs]
out["eliminated"] = J.to_json(reduced)

path = os.path.join(os.path.dirname(__file__), "../../crates/core/tests/fixtures/kdv.json")
with open(os.path.abspath(path), "w") as fh:
    json.dump(out, fh, indent=1, sort_keys=True)
print("wrote", os.path.abspath(path))
