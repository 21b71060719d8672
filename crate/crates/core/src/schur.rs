//! Commutative algebras of constant-coefficient symbols, big-cell bases,
//! the Sato correspondence in both directions, and the bijection taking a
//! commutative algebra of differential operators to an embedded pair
//! (algebra, basis) of spectral data.
//!
//! Throughout, symbols live in R((y)) with the order convention
//! ord(y^{-n}) = n, and bases are finite triangular windows: row n is monic
//! of order n. All checks are performed within the guaranteed windows of the
//! inputs — nothing is asserted past what the truncations certify.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::normalize::{
    conjugate_by_unit, conjugator_to_power, gauge_first_order, has_constant_coefficients,
};
use crate::pdo::{generalized_binomial, PseudoOp};
use crate::ring::{Ring, RingElement};
use crate::series::TruncLaurent;

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns (g, u, v) with u·a + v·b = g = gcd(a, b), a,b > 0.
fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return (a, 1, 0);
    }
    let (g, u, v) = egcd(b, a % b);
    (g, v, u - (a / b) * v)
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

/// gcd of the orders of the given symbols — the rank of the algebra they
/// generate, since order is additive on products over a domain.
pub fn pure_rank(gens: &[TruncLaurent]) -> Result<i64> {
    let mut g: i64 = 0;
    let mut has_positive = false;
    for v in gens {
        let ord = v.order_of()?;
        if ord > 0 {
            has_positive = true;
        }
        g = gcd_i64(g, ord);
    }
    if !has_positive {
        return Err(Error::NoPositiveOrder(
            "rank needs at least one generator of positive order".into(),
        ));
    }
    Ok(g)
}

/// A commutative algebra of symbols in R((y)) presented by generators, with
/// its rank r = gcd of the generator orders.
#[derive(Debug, Clone)]
pub struct PureRankAlgebra {
    ring: Ring,
    generators: Vec<TruncLaurent>,
    declared_rank: i64,
}

impl PureRankAlgebra {
    /// Validates that the gcd of generator orders equals the declared rank
    /// and that order-0 generators are constants (the algebra meets R[[y]]
    /// only in R).
    pub fn new(ring: &Ring, generators: Vec<TruncLaurent>, declared_rank: i64) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch(
                    "generator over a different coefficient ring".into(),
                ));
            }
        }
        let live: Vec<TruncLaurent> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        let r = pure_rank(&live)?;
        if r != declared_rank {
            return Err(Error::InvalidInput(format!(
                "declared rank {declared_rank} but generator orders have gcd {r}"
            )));
        }
        for g in &live {
            if g.order_of()? == 0 && !tail_is_zero(g, 1)? {
                return Err(Error::InvalidInput(
                    "an order-0 generator must be a constant".into(),
                ));
            }
        }
        Ok(PureRankAlgebra {
            ring: ring.clone(),
            generators,
            declared_rank,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[TruncLaurent] {
        &self.generators
    }

    pub fn rank(&self) -> i64 {
        self.declared_rank
    }
}

/// True when all known coefficients at exponents ≥ `from` vanish.
fn tail_is_zero(v: &TruncLaurent, from: i64) -> Result<bool> {
    let mut e = from.max(v.low_exp());
    while e < v.guaranteed_exp() {
        if !v.coeff_at(e)?.is_zero() {
            return Ok(false);
        }
        e += 1;
    }
    Ok(true)
}

/// Monic uniformizer z = a⁻ⁱ·bʲ of order −r, r = gcd(ord a, ord b), with the
/// smallest nonnegative exponents i, j satisfying i·ord(a) − j·ord(b) = r.
pub fn uniformizer_z(a: &TruncLaurent, b: &TruncLaurent) -> Result<TruncLaurent> {
    for v in [a, b] {
        if !v.is_monic()? {
            return Err(Error::NotMonic("uniformizer inputs must be monic".into()));
        }
        if v.order_of()? <= 0 {
            return Err(Error::NoPositiveOrder(
                "uniformizer inputs must have positive order".into(),
            ));
        }
    }
    let na = a.order_of()?;
    let nb = b.order_of()?;
    let (r, u, v) = egcd(na, nb);
    // general solution: i = u + t·(nb/r), j = −v + t·(na/r); pick the least
    // t making both nonnegative.
    let t = div_ceil(-u * r, nb).max(div_ceil(v * r, na));
    let i = u + t * (nb / r);
    let j = -v + t * (na / r);
    debug_assert!(i >= 0 && j >= 0 && i * na - j * nb == r);
    a.invert()?
        .pow(i as u32)?
        .multiply(&b.pow(j as u32)?)
}

/// Splits v ∈ R((y)) along exponent residues mod r: component k collects the
/// exponents m = r·q + i with i = −α + k (k = 0..r−1), re-indexed as z^q.
pub fn split_level(v: &TruncLaurent, r: i64, alpha: i64) -> Result<Vec<TruncLaurent>> {
    if r < 1 {
        return Err(Error::InvalidInput("split rank must be at least 1".into()));
    }
    let ring = v.ring().clone();
    let low = v.low_exp();
    let g = v.guaranteed_exp();
    let mut parts = Vec::with_capacity(r as usize);
    for k in 0..r {
        let i = -alpha + k;
        let q_low = div_ceil(low - i, r);
        let q_hi = div_floor(g - 1 - i, r) + 1;
        let mut coeffs = Vec::new();
        let mut q = q_low;
        while q < q_hi {
            coeffs.push(v.coeff_at(r * q + i)?);
            q += 1;
        }
        parts.push(TruncLaurent::from_coeffs(&ring, "z", q_low, coeffs)?);
    }
    Ok(parts)
}

/// Inverse of [`split_level`]: maps component k's z^q back to y^{rq−α+k} and
/// sums. Exact on the common window.
pub fn reassemble_level(
    parts: &[TruncLaurent],
    r: i64,
    alpha: i64,
    var: &str,
) -> Result<TruncLaurent> {
    if parts.is_empty() || r < 1 || parts.len() != r as usize {
        return Err(Error::InvalidInput(
            "reassembly needs exactly r components".into(),
        ));
    }
    let ring = parts[0].ring().clone();
    let mut low = i64::MAX;
    let mut g_out = i64::MAX;
    for (k, p) in parts.iter().enumerate() {
        let i = -alpha + k as i64;
        low = low.min(r * p.low_exp() + i);
        g_out = g_out.min(r * p.guaranteed_exp() + i);
    }
    let mut coeffs = vec![ring.zero(); (g_out - low).max(0) as usize];
    for (k, p) in parts.iter().enumerate() {
        let i = -alpha + k as i64;
        let mut q = p.low_exp();
        while q < p.guaranteed_exp() {
            let m = r * q + i;
            if m >= low && m < g_out {
                coeffs[(m - low) as usize] = p.coeff_at(q)?;
            }
            q += 1;
        }
    }
    TruncLaurent::from_coeffs(&ring, var, low, coeffs)
}

/// A triangular window basis of a point of the big cell: row n is monic of
/// order n (leading term y⁻ⁿ), so the span complements R[[y]]·y.
#[derive(Debug, Clone)]
pub struct BigCellBasis {
    ring: Ring,
    rows: Vec<TruncLaurent>,
}

impl BigCellBasis {
    pub fn new(rows: Vec<TruncLaurent>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidInput("a basis needs at least one row".into()));
        }
        let ring = rows[0].ring().clone();
        for (n, row) in rows.iter().enumerate() {
            if row.ring() != &ring {
                return Err(Error::RingMismatch(
                    "basis rows over different rings".into(),
                ));
            }
            let ok = !row.is_zero()
                && row.order_of()? == n as i64
                && row.leading_coeff()?.sub(&ring.one())?.is_zero();
            if !ok {
                return Err(Error::NotBigCell(format!(
                    "row {n} must be monic of order {n}"
                )));
            }
        }
        Ok(BigCellBasis { ring, rows })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> &[TruncLaurent] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Rows w_n = σ(∂ⁿ·S) for a monic order-0 operator S — the point of the big
/// cell corresponding to S.
pub fn sato_forward(s: &PseudoOp, rows: usize) -> Result<BigCellBasis> {
    let ring = s.ring().clone();
    if !ring.is_x_series() {
        return Err(Error::UnsupportedRing(
            "the correspondence evaluates coefficients at x = 0; the operator needs an x-series ring".into(),
        ));
    }
    if s.order_of()? != 0 {
        return Err(Error::WrongOrder(
            "the correspondence applies to order-0 operators".into(),
        ));
    }
    if !s.is_monic()? {
        return Err(Error::NotMonic(
            "the correspondence applies to monic operators".into(),
        ));
    }
    let mut out = Vec::with_capacity(rows);
    for n in 0..rows {
        let d_n = PseudoOp::d_power(&ring, n as i64, s.depth())?;
        out.push(d_n.multiply(s)?.sigma()?);
    }
    BigCellBasis::new(out)
}

/// Recovers the unique monic order-0 operator S with `sato_forward(S) = W`.
///
/// For each jet level k ≥ 1 the Taylor jets s_i^{(j)}(0) (i + j = k, i ≥ 1)
/// satisfy, over n = 0..k−1,
///
/// ```text
/// Σ_{i+j=k, i≥1} C(n, j)·s_i^{(j)}(0) = [y^{k−n}] w_n ,
/// ```
///
/// a unit-lower-triangular system in the processing order (C(n, n) = 1),
/// solved by forward substitution.
pub fn sato_inverse(w: &BigCellBasis, xring: &Ring) -> Result<PseudoOp> {
    if !xring.is_x_series() || xring.base() != *w.ring() {
        return Err(Error::UnsupportedRing(
            "need an x-series ring over the basis coefficient ring".into(),
        ));
    }
    let base = w.ring().clone();
    let mut k_max = w.len() as i64;
    for (n, row) in w.rows().iter().enumerate() {
        k_max = k_max.min(row.guaranteed_exp() + n as i64);
    }
    if k_max < 2 {
        return Err(Error::WindowTooSmall(
            "basis window certifies no operator terms".into(),
        ));
    }
    let k_top = (k_max - 1) as usize;
    let mut jets = vec![vec![base.zero(); k_top + 1]; k_top + 1];
    for k in 1..=k_top {
        for n in 0..k {
            let target = w.rows()[n].coeff_at((k - n) as i64)?;
            let mut acc = base.zero();
            // only j < n contributes knowns: the j = n jet is the unknown
            // (its coefficient C(n, n) = 1)
            for j in 0..n {
                let i = k - j;
                if i > k_top {
                    continue;
                }
                let c = generalized_binomial(n as i64, j);
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&jets[j][i].scale(&c))?;
            }
            jets[n][k - n] = target.sub(&acc)?;
        }
    }
    let mut terms = Vec::with_capacity(k_top + 1);
    for i in 0..=k_top {
        if i == 0 {
            let mut coeffs = vec![base.zero(); k_top + 1];
            coeffs[0] = base.one();
            terms.push(xring.series_from_base(&coeffs, k_top + 1)?);
        } else {
            let prec = k_top - i + 1;
            let mut coeffs = Vec::with_capacity(prec);
            let mut factorial = BigInt::one();
            for j in 0..prec {
                if j > 0 {
                    factorial *= BigInt::from(j as i64);
                }
                coeffs.push(jets[j][i].scale(&BigRational::new(BigInt::one(), factorial.clone())));
            }
            terms.push(xring.series_from_base(&coeffs, prec)?);
        }
    }
    let op = PseudoOp::from_terms(xring, 0, terms)?;
    // The jet system reads only the y^{≥1} tail of each row; the remaining
    // coefficients must then agree with the operator it determines, or the
    // rows are not the canonical rows of any monic order-0 operator.
    let check = sato_forward(&op, w.len())?;
    for (got, want) in check.rows().iter().zip(w.rows()) {
        if !got.eq_within_window(want)? {
            return Err(Error::NotBigCell(
                "row tails are inconsistent: no monic order-0 operator has these canonical rows"
                    .into(),
            ));
        }
    }
    Ok(op)
}

/// An algebra of constant-coefficient symbols together with a stable basis:
/// the spectral data of a commutative algebra of differential operators.
#[derive(Debug, Clone)]
pub struct EmbeddedSchurPair {
    pub algebra: PureRankAlgebra,
    pub basis: BigCellBasis,
    pub rank: i64,
    pub level: i64,
    pub index: i64,
}

/// The constant-coefficient lift y^e ↦ ∂^{−e} of a symbol, at the symbol's
/// own window.
fn lift_symbol(xring: &Ring, v: &TruncLaurent) -> Result<PseudoOp> {
    let mut terms = Vec::new();
    let mut e = v.low_exp();
    while e < v.guaranteed_exp() {
        terms.push(xring.embed(&v.coeff_at(e)?)?);
        e += 1;
    }
    PseudoOp::from_terms(xring, -v.low_exp(), terms)
}

/// From commuting differential operators to their spectral pair.
///
/// Picks the first monic element P of minimal positive order N among the
/// generators and their products of length ≤ 3; gauges away the ∂^{N−1}
/// coefficient of P so that the conjugator X normalizing P to ∂^N is monic;
/// then A = X⁻¹·(gauged generators)·X — constant-coefficient exactly when the
/// generators commute — and W = sato_forward(X). The gauge step makes the
/// result invariant under conjugating the input by any invertible function.
pub fn mu_forward(gens: &[PseudoOp]) -> Result<EmbeddedSchurPair> {
    if gens.is_empty() {
        return Err(Error::InvalidInput("no generators given".into()));
    }
    let ring = gens[0].ring().clone();
    if !ring.is_x_series() {
        return Err(Error::UnsupportedRing(
            "generators must live over an x-series ring".into(),
        ));
    }
    for (i, g) in gens.iter().enumerate() {
        if g.ring() != &ring {
            return Err(Error::RingMismatch(
                "generators over different rings".into(),
            ));
        }
        if !g.is_differential() {
            return Err(Error::NotDifferential(format!(
                "generator {i} has negative-order terms"
            )));
        }
    }
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            if !gens[i].commutator(&gens[j])?.is_zero() {
                return Err(Error::NonCommuting(format!(
                    "generators {i} and {j} do not commute"
                )));
            }
        }
    }
    // Deterministic search for a monic element of minimal positive order:
    // generators first, then products of length 2 and 3 in index order.
    let mut candidates: Vec<PseudoOp> = gens.to_vec();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let p2 = gens[i].multiply(&gens[j])?;
            for k in j..gens.len() {
                candidates.push(p2.multiply(&gens[k])?);
            }
            candidates.push(p2);
        }
    }
    let mut best: Option<(i64, PseudoOp)> = None;
    for c in &candidates {
        if c.is_zero() {
            continue;
        }
        let ord = c.order_of()?;
        if ord <= 0 || !c.is_monic()? {
            continue;
        }
        if best.as_ref().map_or(true, |(bo, _)| ord < *bo) {
            best = Some((ord, c.clone()));
        }
    }
    let (n, p) = best.ok_or_else(|| {
        Error::NoPositiveOrder(
            "no monic element of positive order among generators and short products".into(),
        )
    })?;
    // Gauge: f = exp((1/N)∫u₁) kills the ∂^{N−1} coefficient of P, making the
    // conjugator monic. Constants cancel, so the choice is gauge-invariant.
    let u1 = p.coeff_of_power(n - 1)?;
    let f = gauge_first_order(&u1.scale(&BigRational::new(BigInt::one(), BigInt::from(n))))?;
    let p_gauged = conjugate_by_unit(&p, &f)?;
    let x = conjugator_to_power(&p_gauged, n)?.conjugator;
    debug_assert!(x.is_monic().unwrap_or(false));
    let x_inv = x.invert()?;
    let mut a_gens = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let g_gauged = conjugate_by_unit(g, &f)?;
        let a_op = x_inv.multiply(&g_gauged)?.multiply(&x)?;
        if !has_constant_coefficients(&a_op)? {
            return Err(Error::NonCommuting(format!(
                "conjugate of generator {i} has x-dependent coefficients"
            )));
        }
        a_gens.push(a_op.sigma()?);
    }
    let live: Vec<TruncLaurent> = a_gens.iter().filter(|v| !v.is_zero()).cloned().collect();
    let rank = pure_rank(&live)?;
    let algebra = PureRankAlgebra::new(&ring.base(), a_gens, rank)?;
    let basis = sato_forward(&x, x.depth())?;
    Ok(EmbeddedSchurPair {
        algebra,
        basis,
        rank,
        level: -1,
        index: 0,
    })
}

/// From a spectral pair back to differential operators: S = sato_inverse(W)
/// and B = S·A·S⁻¹. Stability of W under A is exactly what makes every
/// conjugate differential; a violation is reported as such.
pub fn mu_inverse(pair: &EmbeddedSchurPair, xring: &Ring) -> Result<Vec<PseudoOp>> {
    let s = sato_inverse(&pair.basis, xring)?;
    let s_inv = s.invert()?;
    let mut out = Vec::new();
    for (i, a) in pair.algebra.generators().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let a_op = lift_symbol(xring, a)?;
        let b = s.multiply(&a_op)?.multiply(&s_inv)?;
        if !b.is_differential() {
            return Err(Error::StabilityViolation(format!(
                "generator {i} conjugates to an operator with negative-order terms; the basis is not stable under the algebra"
            )));
        }
        out.push(b);
    }
    Ok(out)
}

/// Structured outcome of validating an embedded pair.
#[derive(Debug, Clone)]
pub struct PairReport {
    /// Every checkable a·w_n reduced to zero against the basis.
    pub stable: bool,
    /// Generators and sampled products meet R[[y]] only in constants.
    pub intersection_trivial: bool,
    /// gcd of generator orders matches the declared rank.
    pub rank_consistent: bool,
    pub computed_rank: Option<i64>,
    pub notes: Vec<String>,
}

impl PairReport {
    pub fn is_valid(&self) -> bool {
        self.stable && self.intersection_trivial && self.rank_consistent
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.is_valid(),
            "stable": self.stable,
            "intersection_trivial": self.intersection_trivial,
            "rank_consistent": self.rank_consistent,
            "computed_rank": self.computed_rank,
            "notes": self.notes,
        })
    }
}

/// Reduce v against the triangular basis rows; returns the remainder, which
/// is zero within the window exactly when v lies in the span.
fn reduce_against(v: &TruncLaurent, rows: &[TruncLaurent]) -> Result<TruncLaurent> {
    let max_order = rows.len() as i64 - 1;
    let mut p = v.clone();
    loop {
        if p.is_zero() {
            return Ok(p);
        }
        let o = p.order_of()?;
        if o < 0 || o > max_order {
            return Ok(p);
        }
        let lc = p.leading_coeff()?;
        p = p.sub(&rows[o as usize].scale(&lc)?)?;
    }
}

/// Checks A·W ⊆ W (row by row, by reduction), triviality of A ∩ R[[y]], and
/// rank consistency. Returns a report rather than failing.
pub fn validate_pair(pair: &EmbeddedSchurPair) -> PairReport {
    let mut notes = Vec::new();
    let gens: Vec<TruncLaurent> = pair
        .algebra
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();

    // rank
    let computed_rank = pure_rank(&gens).ok();
    let rank_consistent = computed_rank == Some(pair.rank);
    if !rank_consistent {
        notes.push(format!(
            "declared rank {} but computed {:?}",
            pair.rank, computed_rank
        ));
    }

    // intersection with R[[y]]
    let mut intersection_trivial = true;
    let mut samples: Vec<(String, TruncLaurent)> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| (format!("generator {i}"), g.clone()))
        .collect();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            if let Ok(pr) = gens[i].multiply(&gens[j]) {
                samples.push((format!("product {i}*{j}"), pr));
            }
        }
    }
    for (label, v) in &samples {
        if v.is_zero() {
            continue;
        }
        let bad = match v.order_of() {
            Ok(o) if o < 0 => true,
            Ok(0) => !tail_is_zero(v, 1).unwrap_or(false),
            Ok(_) => false,
            Err(_) => true,
        };
        if bad {
            intersection_trivial = false;
            notes.push(format!(
                "{label} meets R[[y]] in a non-constant element"
            ));
        }
    }

    // stability
    let rows = pair.basis.rows();
    let max_order = rows.len() as i64 - 1;
    let mut stable = true;
    let mut checked = 0usize;
    for (gi, a) in gens.iter().enumerate() {
        let ord = match a.order_of() {
            Ok(o) => o,
            Err(_) => continue,
        };
        for (n, w_n) in rows.iter().enumerate() {
            if ord + n as i64 > max_order {
                continue;
            }
            checked += 1;
            match a.multiply(w_n).and_then(|p| reduce_against(&p, rows)) {
                Ok(rem) if rem.is_zero() => {}
                Ok(_) => {
                    stable = false;
                    notes.push(format!(
                        "generator {gi} times row {n} does not reduce into the basis"
                    ));
                }
                Err(e) => {
                    stable = false;
                    notes.push(format!(
                        "generator {gi} times row {n}: reduction failed ({e})"
                    ));
                }
            }
        }
    }
    if checked == 0 && !gens.is_empty() {
        notes.push("no stability products fit inside the basis window".into());
    }

    PairReport {
        stable,
        intersection_trivial,
        rank_consistent,
        computed_rank,
        notes,
    }
}

/// Row-echelon data for a family of symbols over the rationals: pivot
/// exponents (lowest surviving exponent of each row) plus the common window.
fn echelon_pivots(rows: &[TruncLaurent]) -> Result<(BTreeMap<i64, TruncLaurent>, i64, i64)> {
    if rows.is_empty() {
        return Err(Error::InvalidInput("no rows given".into()));
    }
    let ring = rows[0].ring().clone();
    if !ring.is_rationals() {
        return Err(Error::UnsupportedRing(
            "dimension counts need coefficients in the rationals".into(),
        ));
    }
    let mut lo = i64::MAX;
    let mut hi = i64::MAX;
    for r in rows {
        if r.ring() != &ring {
            return Err(Error::RingMismatch("rows over different rings".into()));
        }
        if !r.is_zero() {
            lo = lo.min(r.low_exp());
        }
        hi = hi.min(r.guaranteed_exp());
    }
    if lo == i64::MAX || hi <= lo {
        return Err(Error::WindowTooSmall(
            "rows certify no common exponent window".into(),
        ));
    }
    let mut pivots: BTreeMap<i64, TruncLaurent> = BTreeMap::new();
    for r in rows {
        let mut p = r.clone();
        loop {
            if p.is_zero() || p.low_exp() >= hi {
                return Err(Error::WindowTooSmall(
                    "a row vanishes within the window; dimensions are not certified".into(),
                ));
            }
            let e = p.low_exp();
            match pivots.get(&e) {
                None => {
                    let lc = p.leading_coeff()?;
                    let inv = lc
                        .as_rational()
                        .filter(|q| !q.is_zero())
                        .map(|q| q.recip())
                        .ok_or_else(|| Error::NonUnit("pivot is not invertible".into()))?;
                    pivots.insert(e, p.scale_rational(&inv));
                    break;
                }
                Some(pivot_row) => {
                    let lc = p.leading_coeff()?;
                    p = p.sub(&pivot_row.scale(&lc)?)?;
                }
            }
        }
    }
    Ok((pivots, lo, hi))
}

/// dim(W ∩ R[[y]]·y^{−α}) − dim(R((y)) / (W + R[[y]]·y^{−α})), computed by
/// row reduction at the window. Coefficients must be rational.
pub fn index_of(rows: &[TruncLaurent], alpha: i64) -> Result<i64> {
    let (pivots, lo, hi) = echelon_pivots(rows)?;
    let cut = -alpha;
    if cut > hi {
        return Err(Error::WindowTooSmall(format!(
            "the cut at exponent {cut} lies beyond the certified window (top {hi})"
        )));
    }
    let dim_int = pivots.keys().filter(|&&e| e >= cut).count() as i64;
    let mut coker = 0i64;
    let mut e = lo;
    while e < cut {
        if !pivots.contains_key(&e) {
            coker += 1;
        }
        e += 1;
    }
    Ok(dim_int - coker)
}

/// The smallest N with W ⊕ R[[y]]·y^{N+1} = R((y)) at the window: the pivot
/// exponents must form the complete interval from the window floor up to N.
/// Returns None when no such splitting exists within the window.
pub fn is_strongly_semistable(rows: &[TruncLaurent]) -> Result<Option<i64>> {
    let (pivots, _, hi) = echelon_pivots(rows)?;
    let (lo_p, hi_p) = match (pivots.keys().next(), pivots.keys().last()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => return Ok(None),
    };
    if hi_p >= hi {
        return Err(Error::WindowTooSmall(
            "the splitting bound is not certified within the window".into(),
        ));
    }
    let complete = (lo_p..=hi_p).all(|e| pivots.contains_key(&e));
    Ok(if complete { Some(hi_p) } else { None })
}

impl EmbeddedSchurPair {
    pub fn to_json(&self) -> Value {
        json!({
            "A": {"generators": self.algebra.generators().iter().map(|g| g.to_json()).collect::<Vec<_>>()},
            "W": {"rows": self.basis.rows().iter().map(|r| r.to_json()).collect::<Vec<_>>()},
            "rank": self.rank,
            "level": self.level,
            "index": self.index,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let gens_v = v
            .pointer("/A/generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::BadEncoding("pair needs A.generators".into()))?;
        let rows_v = v
            .pointer("/W/rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::BadEncoding("pair needs W.rows".into()))?;
        let rank = v
            .get("rank")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::BadEncoding("pair needs an integer rank".into()))?;
        let level = v.get("level").and_then(Value::as_i64).unwrap_or(-1);
        let index = v.get("index").and_then(Value::as_i64).unwrap_or(0);
        let generators = gens_v
            .iter()
            .map(TruncLaurent::from_json)
            .collect::<Result<Vec<_>>>()?;
        let rows = rows_v
            .iter()
            .map(TruncLaurent::from_json)
            .collect::<Result<Vec<_>>>()?;
        if generators.is_empty() {
            return Err(Error::BadEncoding("pair needs at least one generator".into()));
        }
        let ring = generators[0].ring().clone();
        let algebra = PureRankAlgebra::new(&ring, generators, rank)?;
        let basis = BigCellBasis::new(rows)?;
        Ok(EmbeddedSchurPair {
            algebra,
            basis,
            rank,
            level,
            index,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq() -> Ring {
        Ring::rationals()
    }

    fn xq(prec: usize) -> Ring {
        Ring::x_series(&qq(), prec).unwrap()
    }

    fn ym(n: i64, g: i64) -> TruncLaurent {
        TruncLaurent::monomial(&qq(), "y", qq().one(), -n, g).unwrap()
    }

    #[test]
    fn rank_is_gcd_of_orders() {
        assert_eq!(pure_rank(&[ym(2, 8), ym(3, 8)]).unwrap(), 1);
        assert_eq!(pure_rank(&[ym(4, 8), ym(6, 8)]).unwrap(), 2);
        assert_eq!(pure_rank(&[ym(4, 8)]).unwrap(), 4);
        assert!(matches!(
            pure_rank(&[ym(0, 8)]),
            Err(Error::NoPositiveOrder(_))
        ));
    }

    #[test]
    fn uniformizer_examples() {
        // a = y⁻², b = y⁻³ → z = a⁻²b = y
        let z = uniformizer_z(&ym(2, 8), &ym(3, 8)).unwrap();
        assert_eq!(z.order_of().unwrap(), -1);
        assert!(z.is_monic().unwrap());
        assert_eq!(z.low_exp(), 1);
        // a = b = y⁻² → z = a⁻¹ = y²
        let z2 = uniformizer_z(&ym(2, 8), &ym(2, 8)).unwrap();
        assert_eq!(z2.order_of().unwrap(), -2);
        assert!(z2.is_monic().unwrap());
        // a = y⁻² + y⁻¹, b = y⁻³ → monic of order −1
        let a = ym(2, 8).add(&ym(1, 8)).unwrap();
        let z3 = uniformizer_z(&a, &ym(3, 8)).unwrap();
        assert_eq!(z3.order_of().unwrap(), -1);
        assert!(z3.is_monic().unwrap());
        // non-monic input
        assert!(matches!(
            uniformizer_z(&ym(2, 8).scale_rational(&BigRational::from(BigInt::from(2))), &ym(3, 8)),
            Err(Error::NotMonic(_))
        ));
    }

    #[test]
    fn split_and_reassemble() {
        // v = y⁻³ + y², r = 2, α = −1 → residues i ∈ {1, 2}
        let v = ym(3, 6).add(&ym(-2, 6)).unwrap();
        let parts = split_level(&v, 2, -1).unwrap();
        assert_eq!(parts.len(), 2);
        // component i=1 (k=0): −3 = 2·(−2)+1 → z⁻²
        assert_eq!(parts[0].coeff_at(-2).unwrap().as_rational().unwrap(), BigRational::one());
        // component i=2 (k=1): 2 = 2·0+2 → 1
        assert_eq!(parts[1].coeff_at(0).unwrap().as_rational().unwrap(), BigRational::one());
        let back = reassemble_level(&parts, 2, -1, "y").unwrap();
        assert!(back.eq_exact(&v));
        // v = y⁻³, r = 2, α = 0 → residues {0, 1}: component i=1 holds z⁻²
        let v2 = ym(3, 5);
        let parts2 = split_level(&v2, 2, 0).unwrap();
        assert_eq!(parts2[1].coeff_at(-2).unwrap().as_rational().unwrap(), BigRational::one());
        assert!(parts2[0].is_zero());
        assert!(reassemble_level(&parts2, 2, 0, "y").unwrap().eq_exact(&v2));
        // r = 1 is the identity
        let parts3 = split_level(&v, 1, 5).unwrap();
        assert!(reassemble_level(&parts3, 1, 5, "y").unwrap().eq_exact(&v));
    }

    #[test]
    fn forward_rows_of_identity_and_shift() {
        let r = xq(12);
        let one = PseudoOp::one(&r, 8).unwrap();
        let w = sato_forward(&one, 6).unwrap();
        for (n, row) in w.rows().iter().enumerate() {
            assert!(row.eq_within_window(&ym(n as i64, row.guaranteed_exp())).unwrap());
        }
        // S = 1 + x∂⁻¹
        let s = PseudoOp::from_terms(
            &r,
            0,
            vec![r.one(), r.x().unwrap(), r.zero(), r.zero(), r.zero(), r.zero()],
        )
        .unwrap();
        let w2 = sato_forward(&s, 4).unwrap();
        let rows = w2.rows();
        // w₀ = 1, w₁ = y⁻¹ + y, w₂ = y⁻² + 2, w₃ = y⁻³ + 3y⁻¹
        assert!(tail_is_zero(&rows[0], 1).unwrap());
        assert_eq!(rows[1].coeff_at(1).unwrap().as_rational().unwrap(), BigRational::one());
        assert_eq!(
            rows[2].coeff_at(0).unwrap().as_rational().unwrap(),
            BigRational::from(BigInt::from(2))
        );
        assert_eq!(
            rows[3].coeff_at(-1).unwrap().as_rational().unwrap(),
            BigRational::from(BigInt::from(3))
        );
        // order ≠ 0 is rejected
        let d = PseudoOp::d_power(&r, 1, 4).unwrap();
        assert!(matches!(sato_forward(&d, 3), Err(Error::WrongOrder(_))));
    }

    #[test]
    fn inverse_recovers_operator() {
        let r = xq(12);
        // S = 1 → W standard → S back
        let w = sato_forward(&PseudoOp::one(&r, 8).unwrap(), 8).unwrap();
        let s = sato_inverse(&w, &r).unwrap();
        assert!(s.eq_within_window(&PseudoOp::one(&r, s.depth()).unwrap()).unwrap());
        // S = 1 + x∂⁻¹ round trip
        let s1 = PseudoOp::from_terms(
            &r,
            0,
            vec![r.one(), r.x().unwrap(), r.zero(), r.zero(), r.zero(), r.zero(), r.zero(), r.zero()],
        )
        .unwrap();
        let w1 = sato_forward(&s1, 8).unwrap();
        let back = sato_inverse(&w1, &r).unwrap();
        assert!(back.eq_within_window(&s1).unwrap());
        // a basis missing the order-1 row is not a big-cell basis
        assert!(matches!(
            BigCellBasis::new(vec![ym(0, 8), ym(2, 8)]),
            Err(Error::NotBigCell(_))
        ));
    }

    #[test]
    fn recovery_system_is_unimodular() {
        // The jet system at level k has matrix M[n][j] = C(n, j) over
        // n, j = 0..k−1 — unit lower triangular, determinant 1. Verify by
        // explicit elimination up to k = 12.
        for k in 1..=12usize {
            let mut m: Vec<Vec<BigRational>> = (0..k)
                .map(|n| (0..k).map(|j| generalized_binomial(n as i64, j)).collect())
                .collect();
            let mut det = BigRational::one();
            for col in 0..k {
                let piv = (col..k).find(|&row| !m[row][col].is_zero()).unwrap();
                if piv != col {
                    m.swap(piv, col);
                    det = -det;
                }
                det *= m[col][col].clone();
                for row in (col + 1)..k {
                    let f = &m[row][col] / &m[col][col];
                    for j in col..k {
                        let sub = &f * &m[col][j];
                        m[row][j] -= sub;
                    }
                }
            }
            assert!(det.is_one(), "determinant at level {k} is {det}");
        }
    }

    #[test]
    fn pair_from_pure_powers() {
        let r = xq(14);
        let gens = vec![
            PseudoOp::d_power(&r, 2, 8).unwrap(),
            PseudoOp::d_power(&r, 3, 8).unwrap(),
        ];
        let pair = mu_forward(&gens).unwrap();
        assert_eq!(pair.rank, 1);
        assert_eq!(pair.level, -1);
        // A = {y⁻², y⁻³}
        let a = pair.algebra.generators();
        assert!(a[0].eq_within_window(&ym(2, a[0].guaranteed_exp())).unwrap());
        assert!(a[1].eq_within_window(&ym(3, a[1].guaranteed_exp())).unwrap());
        // W standard
        for (n, row) in pair.basis.rows().iter().enumerate() {
            assert!(row.eq_within_window(&ym(n as i64, row.guaranteed_exp())).unwrap());
        }
        let report = validate_pair(&pair);
        assert!(report.is_valid(), "notes: {:?}", report.notes);
        assert_eq!(index_of(pair.basis.rows(), -1).unwrap(), 0);
        assert_eq!(is_strongly_semistable(pair.basis.rows()).unwrap(), Some(0));
        // and back: B = {∂², ∂³}
        let back = mu_inverse(&pair, &r).unwrap();
        assert!(back[0].eq_within_window(&PseudoOp::d_power(&r, 2, back[0].depth()).unwrap()).unwrap());
        assert!(back[1].eq_within_window(&PseudoOp::d_power(&r, 3, back[1].depth()).unwrap()).unwrap());
    }

    #[test]
    fn non_commuting_generators_are_rejected() {
        let r = xq(12);
        let d2 = PseudoOp::d_power(&r, 2, 6).unwrap();
        let mut terms = vec![r.zero(); 6];
        terms[0] = r.one();
        terms[3] = r.x().unwrap();
        let d3x = PseudoOp::from_terms(&r, 3, terms).unwrap();
        assert!(matches!(
            mu_forward(&[d2, d3x]),
            Err(Error::NonCommuting(_))
        ));
    }

    #[test]
    fn order_one_generator_round_trip() {
        // B = {∂ + x}: gauging by f = exp(x²/2) turns it into ∂, so A = {y⁻¹}
        // and W is standard; the round trip returns ∂, equivalent to the
        // input by the same gauge.
        let r = xq(14);
        let g = PseudoOp::from_terms(
            &r,
            1,
            vec![r.one(), r.x().unwrap(), r.zero(), r.zero(), r.zero(), r.zero(), r.zero()],
        )
        .unwrap();
        let pair = mu_forward(&[g.clone()]).unwrap();
        assert_eq!(pair.rank, 1);
        let a = pair.algebra.generators();
        assert!(a[0].eq_within_window(&ym(1, a[0].guaranteed_exp())).unwrap());
        for (n, row) in pair.basis.rows().iter().enumerate() {
            assert!(row.eq_within_window(&ym(n as i64, row.guaranteed_exp())).unwrap());
        }
        let back = mu_inverse(&pair, &r).unwrap();
        // back = {∂}; conjugating by f⁻¹ (f = exp(x²/2), f′ = x·f) recovers ∂ + x
        let f = gauge_first_order(&r.x().unwrap()).unwrap();
        let f_inv = f.invert().unwrap();
        let restored = conjugate_by_unit(&back[0], &f_inv).unwrap();
        assert!(restored.eq_within_window(&g).unwrap());
    }

    #[test]
    fn unstable_basis_is_reported() {
        // W = rows of S = 1 + x∂⁻¹ is not stable under y⁻²:
        // S·∂²·S⁻¹ = ∂² − 2·S⁻¹ has negative-order terms, and the reduction
        // of y⁻²·w₁ = y⁻³ + y⁻¹ leaves the remainder 2y.
        let r = xq(12);
        let s = PseudoOp::from_terms(
            &r,
            0,
            vec![r.one(), r.x().unwrap(), r.zero(), r.zero(), r.zero(), r.zero(), r.zero(), r.zero()],
        )
        .unwrap();
        let basis = sato_forward(&s, 8).unwrap();
        let g = basis.rows()[0].guaranteed_exp();
        let algebra = PureRankAlgebra::new(&qq(), vec![ym(2, g)], 2).unwrap();
        let pair = EmbeddedSchurPair {
            algebra,
            basis,
            rank: 2,
            level: -1,
            index: 0,
        };
        let report = validate_pair(&pair);
        assert!(!report.stable, "notes: {:?}", report.notes);
        assert!(!report.is_valid());
        // mu_inverse sees the same failure as a non-differential conjugate
        assert!(matches!(
            mu_inverse(&pair, &r),
            Err(Error::StabilityViolation(_))
        ));
        // rows with tails no operator produces are rejected outright
        let gg = 8;
        let mut rows = vec![ym(0, gg).add(&ym(-1, gg)).unwrap()];
        for n in 1..6 {
            rows.push(ym(n, gg));
        }
        let fake = BigCellBasis::new(rows).unwrap();
        assert!(matches!(
            sato_inverse(&fake, &r),
            Err(Error::NotBigCell(_))
        ));
    }

    #[test]
    fn intersection_violation_is_reported() {
        // an algebra containing y (order −1) meets R[[y]] nontrivially
        let g = 8;
        let algebra = PureRankAlgebra {
            ring: qq(),
            generators: vec![ym(2, g), ym(-1, g)],
            declared_rank: 2,
        };
        let rows = (0..6).map(|n| ym(n, g)).collect();
        let pair = EmbeddedSchurPair {
            algebra,
            basis: BigCellBasis::new(rows).unwrap(),
            rank: 2,
            level: -1,
            index: 0,
        };
        let report = validate_pair(&pair);
        assert!(!report.intersection_trivial);
        assert!(!report.is_valid());
    }

    #[test]
    fn index_examples() {
        let g = 8;
        let std_rows: Vec<TruncLaurent> = (0..6).map(|n| ym(n, g)).collect();
        assert_eq!(index_of(&std_rows, -1).unwrap(), 0);
        assert_eq!(index_of(&std_rows, 0).unwrap(), 1);
        // W spanned by {y⁻ⁿ : n ≥ 1}
        let shifted: Vec<TruncLaurent> = (1..7).map(|n| ym(n, g)).collect();
        assert_eq!(index_of(&shifted, -1).unwrap(), -1);
    }

    #[test]
    fn semistability_examples() {
        let g = 8;
        let std_rows: Vec<TruncLaurent> = (0..6).map(|n| ym(n, g)).collect();
        assert_eq!(is_strongly_semistable(&std_rows).unwrap(), Some(0));
        // rows {1, y, y⁻², ..}: exponent −1 is never a pivot → no splitting
        let mut rows = vec![ym(0, g), ym(-1, g)];
        for n in 2..6 {
            rows.push(ym(n, g));
        }
        assert_eq!(is_strongly_semistable(&rows).unwrap(), None);
    }

    #[test]
    fn pair_json_round_trip() {
        let r = xq(12);
        let gens = vec![
            PseudoOp::d_power(&r, 2, 6).unwrap(),
            PseudoOp::d_power(&r, 3, 6).unwrap(),
        ];
        let pair = mu_forward(&gens).unwrap();
        let v = pair.to_json();
        let back = EmbeddedSchurPair::from_json(&v).unwrap();
        assert_eq!(back.rank, pair.rank);
        assert_eq!(back.level, pair.level);
        assert_eq!(back.basis.len(), pair.basis.len());
        for (a, b) in back
            .algebra
            .generators()
            .iter()
            .zip(pair.algebra.generators())
        {
            assert!(a.eq_exact(b));
        }
    }
}
