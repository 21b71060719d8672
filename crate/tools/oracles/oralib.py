"""Independent reference implementations used to generate the frozen fixtures
in crates/core/tests/fixtures/.  Pure stdlib (fractions) — no third-party deps.

Everything here is deliberately written in the most direct style possible
(dense dicts, explicit loops) so it can serve as an an oracle for the Rust
library without sharing any code or structure with it.

Run regen.sh to rebuild all fixture files.
"""

from fractions import Fraction as Fr
import json

# ---------------------------------------------------------------------------
# coefficient rings
# ---------------------------------------------------------------------------

class QQ:
    """Rational coefficients."""
    def zero(self): return Fr(0)
    def one(self): return Fr(1)
    def add(self, a, b): return a + b
    def neg(self, a): return -a
    def mul(self, a, b): return a * b
    def smul(self, q, a): return q * a
    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("non-unit")
        return 1 / a
    def iszero(self, a): return a == 0
    def eq(self, a, b): return a == b
    def to_json(self, a): return str(a)


class PolyRing:
    """Multivariate polynomials over Q in named symbols.

    Element: dict {exponent-tuple: Fraction}, zeros pruned.
    """
    def __init__(self, names):
        self.names = list(names)
        self.n = len(names)

    def zero(self): return {}
    def one(self): return {(0,) * self.n: Fr(1)}
    def const(self, q):
        return {} if q == 0 else {(0,) * self.n: Fr(q)}
    def sym(self, name):
        e = [0] * self.n
        e[self.names.index(name)] = 1
        return {tuple(e): Fr(1)}
    def add(self, a, b):
        r = dict(a)
        for e, c in b.items():
            c2 = r.get(e, Fr(0)) + c
            if c2 == 0:
                r.pop(e, None)
            else:
                r[e] = c2
        return r
    def neg(self, a): return {e: -c for e, c in a.items()}
    def mul(self, a, b):
        r = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = r.get(e, Fr(0)) + c1 * c2
                if c == 0:
                    r.pop(e, None)
                else:
                    r[e] = c
        return r
    def smul(self, q, a):
        q = Fr(q)
        return {} if q == 0 else {e: q * c for e, c in a.items()}
    def inv(self, a):
        if list(a.keys()) == [(0,) * self.n]:
            return {(0,) * self.n: 1 / a[(0,) * self.n]}
        raise ZeroDivisionError("non-unit polynomial")
    def iszero(self, a): return not a
    def eq(self, a, b): return a == b
    def to_json(self, a):
        out = {}
        for e, c in sorted(a.items()):
            key = ",".join(str(x) for x in e)
            out[key] = str(c)
        return out


# ---------------------------------------------------------------------------
# truncated Laurent series over a coefficient ring
#
# series = (coeffs: dict {exp: coeff}, guaranteed: int)  -- known-zero below
# the smallest stored exponent, unknown at exponents >= guaranteed.
# ---------------------------------------------------------------------------

def ser_trim(R, s):
    c, g = s
    return ({e: v for e, v in c.items() if e < g and not R.iszero(v)}, g)

def ser_val(R, s):
    """Smallest exponent with a (known-)nonzero coefficient, else guaranteed."""
    c, g = ser_trim(R, s)
    return min(c.keys()) if c else g

def ser_add(R, a, b):
    g = min(a[1], b[1])
    c = dict(a[0])
    for e, v in b[0].items():
        c[e] = R.add(c.get(e, R.zero()), v)
    return ser_trim(R, (c, g))

def ser_neg(R, a):
    return ({e: R.neg(v) for e, v in a[0].items()}, a[1])

def ser_sub(R, a, b):
    return ser_add(R, a, ser_neg(R, b))

def ser_mul(R, a, b):
    ga, gb = a[1], b[1]
    va, vb = ser_val(R, a), ser_val(R, b)
    g = min(va + gb, vb + ga)
    c = {}
    for e1, v1 in a[0].items():
        for e2, v2 in b[0].items():
            e = e1 + e2
            if e < g:
                c[e] = R.add(c.get(e, R.zero()), R.mul(v1, v2))
    return ser_trim(R, (c, g))

def ser_smul(R, q, a):
    return ser_trim(R, ({e: R.smul(q, v) for e, v in a[0].items()}, a[1]))

def ser_monomial(R, coeff, e, g):
    return ser_trim(R, ({e: coeff}, g))

def ser_one(R, g):
    return ({0: R.one()}, g)

def ser_inv(R, s):
    """Inverse of a series with unit leading coefficient."""
    c, g = ser_trim(R, s)
    v = min(c.keys())          # raises on empty: order indeterminate
    lead = c[v]
    t0 = R.inv(lead)
    rel = g - v               # number of known relative terms
    # t = z^{-v} (t_0 + t_1 z + ...), solve sum_{j<=l} s_{v+l-j} t_j = [l==0]
    t = {0: t0}
    for l in range(1, rel):
        acc = R.zero()
        for j in range(l):
            sc = c.get(v + l - j)
            if sc is not None:
                acc = R.add(acc, R.mul(sc, t[j]))
        t[l] = R.neg(R.mul(t0, acc))
    out = {(-v + l): val for l, val in t.items()}
    return ser_trim(R, (out, -v + rel))

def ser_nth_root(R, s, N):
    """Monic N-th root; N may be negative (root of the inverse)."""
    if N < 0:
        return ser_nth_root(R, ser_inv(R, s), -N)
    c, g = ser_trim(R, s)
    M = min(c.keys())
    assert M % N == 0
    assert R.eq(c[M], R.one()), "root requires a monic argument"
    rel = g - M
    # t = z^{M/N} (1 + t_1 z + ...): match (1 + sum t_j z^j)^N term by term.
    t = {0: R.one()}
    for n in range(1, rel):
        # expand u^N with u = current partial t (t_n treated as 0), coefficient of z^n
        u = ({e: v for e, v in t.items()}, n + 1)
        p = ser_one(R, n + 1)
        for _ in range(N):
            p = ser_mul(R, p, u)
        have = p[0].get(n, R.zero())
        want = c.get(M + n, R.zero())
        # linear coefficient of t_n in u^N at z^n is N
        t[n] = R.smul(Fr(1, N), R.add(want, R.neg(have)))
    out = {(M // N + j): v for j, v in t.items()}
    return ser_trim(R, (out, M // N + rel))

def ser_pow(R, s, k):
    if k < 0:
        return ser_pow(R, ser_inv(R, s), -k)
    g = s[1] if s[0] else s[1]
    # big window; multiplication tracks honestly
    acc = ser_one(R, 10 ** 6)
    for _ in range(k):
        acc = ser_mul(R, acc, s)
    return acc

def ser_compose(R, f, g):
    """f(g) for g of valuation >= 1."""
    fc, fg = ser_trim(R, f)
    vg = ser_val(R, g)
    assert vg >= 1
    gg = g[1]
    vf = ser_val(R, f)
    guar = min(vg * fg, vf * vg + gg - vg)
    acc = ({}, guar)
    for e, c in sorted(fc.items()):
        p = ser_pow(R, g, e)
        term = ({ee: R.mul(c, vv) for ee, vv in p[0].items()}, min(p[1], guar))
        acc = ser_add(R, acc, term)
    return ser_trim(R, (acc[0], guar))

def ser_revert(R, f):
    """Compositional inverse of f with valuation exactly 1, unit leading coeff."""
    fc, fg = ser_trim(R, f)
    assert min(fc.keys()) == 1
    f1 = fc[1]
    inv_f1 = R.inv(f1)
    gser = ({1: inv_f1}, fg)
    for k in range(2, fg):
        err = ser_sub(R, ser_compose(R, f, gser), ser_monomial(R, R.one(), 1, fg))
        ek = err[0].get(k, R.zero())
        delta = R.neg(R.mul(inv_f1, ek))
        gser = ser_add(R, gser, ser_monomial(R, delta, k, fg))
    return ser_trim(R, gser)

def ser_to_json(R, s):
    c, g = ser_trim(R, s)
    if c:
        low = min(c.keys())
        coeffs = [R.to_json(c.get(e, R.zero())) for e in range(low, g)]
    else:
        low, coeffs = g, []
    return {"low": low, "guaranteed": g, "coeffs": coeffs}


# ---------------------------------------------------------------------------
# x-power-series coefficients (for the operator ring over R0[[x]])
# xs = list of base-ring elements [c0, c1, ...] -- truncated, exact below len
# ---------------------------------------------------------------------------

class XS:
    """x-power-series ring over a base ring B, fixed working length n."""
    def __init__(self, B, n):
        self.B, self.n = B, n
    def zero(self): return [self.B.zero()] * self.n
    def one(self):
        return [self.B.one()] + [self.B.zero()] * (self.n - 1)
    def from_base(self, b):
        return [b] + [self.B.zero()] * (self.n - 1)
    def add(self, a, b): return [self.B.add(x, y) for x, y in zip(a, b)]
    def neg(self, a): return [self.B.neg(x) for x in a]
    def mul(self, a, b):
        out = [self.B.zero()] * self.n
        for i, x in enumerate(a):
            if self.B.iszero(x):
                continue
            for j, y in enumerate(b):
                if i + j >= self.n:
                    break
                out[i + j] = self.B.add(out[i + j], self.B.mul(x, y))
        return out
    def smul(self, q, a): return [self.B.smul(q, x) for x in a]
    def inv(self, a):
        c0 = self.B.inv(a[0])
        t = [c0] + [self.B.zero()] * (self.n - 1)
        for l in range(1, self.n):
            acc = self.B.zero()
            for j in range(l):
                acc = self.B.add(acc, self.B.mul(a[l - j], t[j]))
            t[l] = self.B.neg(self.B.mul(c0, acc))
        return t
    def iszero(self, a): return all(self.B.iszero(x) for x in a)
    def eq(self, a, b): return all(self.B.eq(x, y) for x, y in zip(a, b))
    def derive(self, a):
        return [self.B.smul(i + 1, a[i + 1]) for i in range(self.n - 1)] + [self.B.zero()]
    def eval0(self, a): return a[0]
    def x(self):
        out = self.zero()
        out[1] = self.B.one()
        return out
    def to_json(self, a):
        return [self.B.to_json(x) for x in a]


class JetRing:
    """Differential polynomials Q{syms} with jet-shift derivation.

    Element: dict {monomial: Fraction}, monomial = sorted tuple of
    ((sym_index, jet_order), exponent).
    """
    def __init__(self, syms, max_jet):
        self.syms = list(syms)
        self.max_jet = max_jet
    def zero(self): return {}
    def one(self): return {(): Fr(1)}
    def jet(self, name, j):
        assert j <= self.max_jet
        return {(((self.syms.index(name), j), 1),): Fr(1)}
    def add(self, a, b):
        r = dict(a)
        for m, c in b.items():
            c2 = r.get(m, Fr(0)) + c
            if c2 == 0:
                r.pop(m, None)
            else:
                r[m] = c2
        return r
    def neg(self, a): return {m: -c for m, c in a.items()}
    def _mmul(self, m1, m2):
        d = dict(m1)
        for v, e in m2:
            d[v] = d.get(v, 0) + e
        return tuple(sorted(d.items()))
    def mul(self, a, b):
        r = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = self._mmul(m1, m2)
                c = r.get(m, Fr(0)) + c1 * c2
                if c == 0:
                    r.pop(m, None)
                else:
                    r[m] = c
        return r
    def smul(self, q, a):
        q = Fr(q)
        return {} if q == 0 else {m: q * c for m, c in a.items()}
    def inv(self, a):
        if list(a.keys()) == [()]:
            return {(): 1 / a[()]}
        raise ZeroDivisionError
    def iszero(self, a): return not a
    def eq(self, a, b): return a == b
    def derive(self, a):
        out = {}
        for m, c in a.items():
            for (s, j), e in m:
                assert j + 1 <= self.max_jet, "jet order exceeded"
                lower = dict(m)
                if lower[(s, j)] == 1:
                    del lower[(s, j)]
                else:
                    lower[(s, j)] -= 1
                lower[(s, j + 1)] = lower.get((s, j + 1), 0) + 1
                mono = tuple(sorted(lower.items()))
                cc = out.get(mono, Fr(0)) + c * e
                if cc == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = cc
        return out
    def subst(self, a, table):
        """Substitute jets: table maps (sym_index, jet) -> element; identity otherwise."""
        out = self.zero()
        for m, c in a.items():
            term = {(): c}
            for (s, j), e in m:
                rep = table.get((s, j), {(((s, j), 1),): Fr(1)})
                for _ in range(e):
                    term = self.mul(term, rep)
            out = self.add(out, term)
        return out
    def to_json(self, a):
        items = []
        for m, c in sorted(a.items()):
            items.append({
                "monomial": [[self.syms[s], j, e] for (s, j), e in m],
                "coeff": str(c),
            })
        return items


# ---------------------------------------------------------------------------
# pseudo-differential operators, right normal form over a coefficient ring C
# with derivation.  op = (top: int, terms: [c_0, c_1, ...]) meaning
# sum_m terms[m] * D^{top-m}; unknown below the stored depth.
# ---------------------------------------------------------------------------

def binom(n, i):
    """Generalized binomial C(n, i) for integer n, i >= 0 (exact Fraction)."""
    out = Fr(1)
    for k in range(i):
        out *= Fr(n - k, k + 1)
    return out

def op_mul(C, P, Q):
    (M, a), (N, b) = P, Q
    depth = min(len(a), len(b))
    # lazy derivative cache for b: only rows a nonzero binomial asks for
    ders = [list(b)]
    def der(i, j):
        while len(ders) <= i:
            ders.append([C.derive(x) for x in ders[-1]])
        return ders[i][j]
    out = []
    for l in range(depth):
        acc = C.zero()
        for m in range(l + 1):
            if C.iszero(a[m]):
                continue
            for i in range(l - m + 1):
                cb = binom(M - m, i)
                if cb == 0:
                    continue
                acc = C.add(acc, C.smul(cb, C.mul(a[m], der(i, l - m - i))))
        out.append(acc)
    return (M + N, out)

def op_one(C, depth):
    return (0, [C.one()] + [C.zero()] * (depth - 1))

def op_sub(C, P, Q):
    (M, a), (N, b) = P, Q
    assert M == N
    depth = min(len(a), len(b))
    return (M, [C.add(a[i], C.neg(b[i])) for i in range(depth)])

def op_invert(C, P):
    """Two-sided inverse of an order-0 operator with unit leading coefficient."""
    M, s = P
    assert M == 0
    depth = len(s)
    ders = [list(s)]
    for _ in range(depth):
        ders.append([C.derive(x) for x in ders[-1]])
    t0 = C.inv(s[0])
    t = [t0]
    for l in range(1, depth):
        acc = C.zero()
        for m in range(l):
            for i in range(l - m + 1):
                cb = binom(-m, i)
                if cb == 0:
                    continue
                acc = C.add(acc, C.smul(cb, C.mul(t[m], ders[i][l - m - i])))
        # the (m,i) = (l,0) term is t_l s_0: solve
        t.append(C.neg(C.mul(t0, acc)))
    return (0, t)

def op_left_normal_form(C, P):
    """b_n with P = sum_n D^{top-n} b_n: b_l = a_l - sum_{n<l} C(top-n, l-n) b_n^{(l-n)}."""
    M, a = P
    b = []
    for l in range(len(a)):
        acc = a[l]
        for n in range(l):
            d = b[n]
            for _ in range(l - n):
                d = C.derive(d)
            acc = C.add(acc, C.smul(-binom(M - n, l - n), d))
        b.append(acc)
    return (M, b)

def op_sigma(C, P):
    """sigma: evaluate right-normal coefficients at x=0; Laurent series in y."""
    M, a = P
    coeffs = {}
    for m, c in enumerate(a):
        v = C.eval0(c)
        coeffs[m - M] = v
    return (coeffs, len(a) - M)

def op_act(C, R0, P, v):
    """act(P, .) applied to v in R0((y)): sigma(QP) for the constant lift Q of v."""
    vc, vg = v
    low = min(vc.keys())
    depth = vg - low
    # constant lift: y^e -> D^{-e}; top order = -low
    terms = [C.from_base(vc.get(low + m, R0.zero())) for m in range(depth)]
    Q = (-low, terms)
    return op_sigma(C, op_mul(C, Q, P))


def xlx_conjugator(C, L, N, depth):
    """X with X^{-1} L X = D^N for monic L of order N (right-normal coeffs u).

    Normalization: s_0(0) = 1, s_l(0) = 0 for l >= 1.
    C must be an XS ring over QQ-like base.
    """
    M, u = L
    assert M == N
    uders = [list(u)]
    for _ in range(depth + 2):
        uders.append([C.derive(x) for x in uders[-1]])
    s = []
    for l in range(1, depth + 1):
        # rhs P_{l-2} = -sum_{m+i>=2} C(N-m, i) u_m s_{l-m-i}^{(i)}
        rhs = C.zero()
        for m in range(0, l + 1):
            if m >= len(u):
                break
            for i in range(0, l - m + 1):
                if m + i < 2:
                    continue
                k = l - m - i
                cb = binom(N - m, i)
                if cb == 0:
                    continue
                sk = s[k]
                for _ in range(i):
                    sk = C.derive(sk)
                rhs = C.add(rhs, C.smul(-cb, C.mul(uders[0][m], sk)))
        # solve N s' + u_1 s = rhs, s(0) = [l == 1]
        u1 = u[1] if len(u) > 1 else C.zero()
        init = C.B.one() if l == 1 else C.B.zero()
        sol = [init] + [C.B.zero()] * (C.n - 1)
        for i in range(C.n - 1):
            conv = C.B.zero()
            for j in range(i + 1):
                conv = C.B.add(conv, C.B.mul(u1[i - j], sol[j]))
            val = C.B.add(C.B.smul(Fr(-1, N), conv), C.B.smul(Fr(1, N), rhs[i]))
            sol[i + 1] = C.B.smul(Fr(1, i + 1), val)
        s.append(sol)
    return (0, s[:depth])


def sato_forward(C, R0, S, rows):
    out = []
    depth = len(S[1])
    for n in range(rows):
        Dn = (n, [C.one()] + [C.zero()] * (depth - 1))
        out.append(op_sigma(C, op_mul(C, Dn, S)))
    return out

def sato_inverse(R0, W, K, xlen):
    """Recover monic order-0 S (s_0 = 1) from big-cell rows w_n = sigma(D^n S).

    For each k >= 1 solve, over n = 0..k-1:
        sum_{i+j=k, i>=1} C(n, j) s_i^{(j)}(0) = [y^{k-n}] w_n.
    Returns list of x-series (as coefficient lists, length xlen).
    """
    jets = {}  # (i, j) -> value
    for k in range(1, K + 1):
        for n in range(k):
            target = W[n][0].get(k - n, R0.zero())
            acc = R0.zero()
            for j in range(n + 1):       # C(n, j) = 0 for j > n
                i = k - j
                if i < 1:
                    continue
                if j == n:
                    # unknown being solved (largest j with C(n,j) != 0)
                    continue
                acc = R0.add(acc, R0.smul(binom(n, j), jets[(i, j)]))
            # C(n, n) = 1
            i = k - n
            if i >= 1:
                jets[(i, n)] = R0.add(target, R0.neg(acc))
    terms = []
    for i in range(K + 1):
        xs = [R0.zero()] * xlen
        if i == 0:
            xs[0] = R0.one()
        else:
            for j in range(xlen):
                if (i, j) in jets:
                    xs[j] = R0.smul(Fr(1, _fact(j)), jets[(i, j)])
        terms.append(xs)
    return (0, terms)

def _fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out

def op_to_json(C, P):
    M, a = P
    return {"top_order": M, "terms": [C.to_json(x) for x in a]}
