//! Differential coefficient rings of characteristic zero.
//!
//! Four concrete instances, all exact (no floating point):
//!
//! * `Rationals` — arbitrary-precision reduced fractions, zero derivation.
//! * `Polynomial` — multivariate polynomials in named constant symbols,
//!   zero derivation.
//! * `DiffPolynomial` — polynomials in jet variables `u, u', u'', …` of named
//!   function symbols, derivation = jet shift with a hard bound on the jet
//!   order chosen at construction.
//! * `XPowerSeries` — truncated power series in `x` over one of the scalar
//!   kinds above, derivation = d/dx. Every element carries its own precision
//!   `p` (known modulo `x^p`); arithmetic propagates the honest minimum.
//!
//! Elements are immutable and kept in a canonical normal form, so structural
//! equality is mathematical equality (per precision window).

pub mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use poly::{Monomial, MultiPoly};

// ---------------------------------------------------------------------------
// Ring descriptors
// ---------------------------------------------------------------------------

/// Internal representation of a ring descriptor.
#[derive(Debug, PartialEq, Eq)]
enum RingRepr {
    Rationals,
    /// Polynomial ring in constant symbols (zero derivation).
    Polynomial { vars: Vec<String> },
    /// Differential polynomial ring: jet variables of the given function
    /// symbols up to (and including) `max_jet`.
    DiffPolynomial { symbols: Vec<String>, max_jet: usize },
    /// Power series in `x` over a scalar base, with a default precision used
    /// when minting new elements.
    XPowerSeries { base: Ring, prec: usize },
}

/// A shared, immutable coefficient-ring descriptor.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingRepr>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Ring {}

fn validate_symbol(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && !name.chars().next().unwrap().is_ascii_digit()
        && name
            .chars()
            .all(|c| !c.is_whitespace() && !"'*+-/^()[]{},;\"".contains(c));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("invalid symbol name {name:?}")))
    }
}

fn validate_symbols(names: &[String]) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        validate_symbol(n)?;
        if names[..i].contains(n) {
            return Err(Error::InvalidInput(format!("duplicate symbol name {n:?}")));
        }
    }
    Ok(())
}

impl Ring {
    pub fn rationals() -> Ring {
        Ring(Arc::new(RingRepr::Rationals))
    }

    pub fn polynomial(vars: &[&str]) -> Result<Ring> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        validate_symbols(&vars)?;
        Ok(Ring(Arc::new(RingRepr::Polynomial { vars })))
    }

    pub fn diff_polynomial(symbols: &[&str], max_jet: usize) -> Result<Ring> {
        let symbols: Vec<String> = symbols.iter().map(|s| s.to_string()).collect();
        validate_symbols(&symbols)?;
        Ok(Ring(Arc::new(RingRepr::DiffPolynomial { symbols, max_jet })))
    }

    /// Power series in `x` over a scalar base ring; `prec` is the default
    /// precision for newly minted elements (constants, symbols, `x`).
    pub fn x_series(base: &Ring, prec: usize) -> Result<Ring> {
        if matches!(&*base.0, RingRepr::XPowerSeries { .. }) {
            return Err(Error::UnsupportedRing(
                "x-series base must be a scalar ring".into(),
            ));
        }
        Ok(Ring(Arc::new(RingRepr::XPowerSeries {
            base: base.clone(),
            prec,
        })))
    }

    pub fn is_x_series(&self) -> bool {
        matches!(&*self.0, RingRepr::XPowerSeries { .. })
    }

    pub fn is_diff_polynomial(&self) -> bool {
        matches!(&*self.0, RingRepr::DiffPolynomial { .. })
    }

    pub fn is_rationals(&self) -> bool {
        matches!(&*self.0, RingRepr::Rationals)
    }

    /// Base ring of an x-series ring; the ring itself otherwise.
    pub fn base(&self) -> Ring {
        match &*self.0 {
            RingRepr::XPowerSeries { base, .. } => base.clone(),
            _ => self.clone(),
        }
    }

    /// Default element precision of an x-series ring.
    pub fn default_prec(&self) -> Option<usize> {
        match &*self.0 {
            RingRepr::XPowerSeries { prec, .. } => Some(*prec),
            _ => None,
        }
    }

    /// Declared symbol names (polynomial variables or function symbols).
    pub fn symbol_names(&self) -> Vec<String> {
        match &*self.0 {
            RingRepr::Rationals => Vec::new(),
            RingRepr::Polynomial { vars } => vars.clone(),
            RingRepr::DiffPolynomial { symbols, .. } => symbols.clone(),
            RingRepr::XPowerSeries { base, .. } => base.symbol_names(),
        }
    }

    pub fn max_jet(&self) -> Option<usize> {
        match &*self.0 {
            RingRepr::DiffPolynomial { max_jet, .. } => Some(*max_jet),
            RingRepr::XPowerSeries { base, .. } => base.max_jet(),
            _ => None,
        }
    }

    fn kind_name(&self) -> &'static str {
        match &*self.0 {
            RingRepr::Rationals => "rationals",
            RingRepr::Polynomial { .. } => "polynomial",
            RingRepr::DiffPolynomial { .. } => "diff_polynomial",
            RingRepr::XPowerSeries { .. } => "x_series",
        }
    }

    // -- descriptor JSON ----------------------------------------------------

    pub fn to_json(&self) -> serde_json::Value {
        match &*self.0 {
            RingRepr::Rationals => json!({"kind": "rationals"}),
            RingRepr::Polynomial { vars } => json!({"kind": "polynomial", "vars": vars}),
            RingRepr::DiffPolynomial { symbols, max_jet } => {
                json!({"kind": "diff_polynomial", "symbols": symbols, "max_jet": max_jet})
            }
            RingRepr::XPowerSeries { base, prec } => {
                json!({"kind": "x_series", "base": base.to_json(), "prec": prec})
            }
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Ring> {
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| Error::BadEncoding("ring descriptor needs a \"kind\" field".into()))?;
        let strings = |key: &str| -> Result<Vec<String>> {
            v.get(key)
                .and_then(|x| x.as_array())
                .map(|a| {
                    a.iter()
                        .map(|s| {
                            s.as_str()
                                .map(|s| s.to_string())
                                .ok_or_else(|| Error::BadEncoding(format!("{key} must be strings")))
                        })
                        .collect()
                })
                .unwrap_or_else(|| Err(Error::BadEncoding(format!("ring descriptor needs {key:?}"))))
        };
        match kind {
            "rationals" => Ok(Ring::rationals()),
            "polynomial" => {
                let vars = strings("vars")?;
                validate_symbols(&vars)?;
                Ok(Ring(Arc::new(RingRepr::Polynomial { vars })))
            }
            "diff_polynomial" => {
                let symbols = strings("symbols")?;
                validate_symbols(&symbols)?;
                let max_jet = v
                    .get("max_jet")
                    .and_then(|x| x.as_u64())
                    .ok_or_else(|| Error::BadEncoding("diff_polynomial needs max_jet".into()))?;
                Ok(Ring(Arc::new(RingRepr::DiffPolynomial {
                    symbols,
                    max_jet: max_jet as usize,
                })))
            }
            "x_series" => {
                let base = Ring::from_json(
                    v.get("base")
                        .ok_or_else(|| Error::BadEncoding("x_series needs base".into()))?,
                )?;
                let prec = v
                    .get("prec")
                    .and_then(|x| x.as_u64())
                    .ok_or_else(|| Error::BadEncoding("x_series needs prec".into()))?;
                Ring::x_series(&base, prec as usize)
            }
            other => Err(Error::BadEncoding(format!("unknown ring kind {other:?}"))),
        }
    }

    // -- element constructors -----------------------------------------------

    pub fn zero(&self) -> RingElement {
        RingElement {
            ring: self.clone(),
            value: self.v_from_rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> RingElement {
        RingElement {
            ring: self.clone(),
            value: self.v_from_rational(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> RingElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: BigRational) -> RingElement {
        RingElement {
            ring: self.clone(),
            value: self.v_from_rational(q),
        }
    }

    /// The named symbol as an element: a variable of a polynomial ring, the
    /// zeroth jet of a function symbol, either one embedded in an x-series
    /// ring over such a base.
    pub fn symbol(&self, name: &str) -> Result<RingElement> {
        match &*self.0 {
            RingRepr::Rationals => Err(Error::UnknownSymbol(format!(
                "no symbol {name:?} in the ring of rationals"
            ))),
            RingRepr::Polynomial { vars } => {
                let id = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::UnknownSymbol(format!("unknown symbol {name:?}")))?;
                Ok(RingElement {
                    ring: self.clone(),
                    value: Value::Poly(MultiPoly::var(id as u32)),
                })
            }
            RingRepr::DiffPolynomial { .. } => self.jet(name, 0),
            RingRepr::XPowerSeries { base, .. } => self.embed(&base.symbol(name)?),
        }
    }

    /// Jet variable of a differential polynomial ring: `jet("u", 2)` is `u''`.
    pub fn jet(&self, name: &str, order: usize) -> Result<RingElement> {
        match &*self.0 {
            RingRepr::DiffPolynomial { symbols, max_jet } => {
                let s = symbols
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::UnknownSymbol(format!("unknown symbol {name:?}")))?;
                if order > *max_jet {
                    return Err(Error::JetOrderExceeded(format!(
                        "jet order {order} of {name:?} exceeds the ring bound {max_jet}"
                    )));
                }
                Ok(RingElement {
                    ring: self.clone(),
                    value: Value::Poly(MultiPoly::var(jet_var_id(s, order, *max_jet))),
                })
            }
            RingRepr::XPowerSeries { base, .. } => self.embed(&base.jet(name, order)?),
            _ => Err(Error::UnsupportedRing(
                "jet variables require a differential polynomial ring".into(),
            )),
        }
    }

    /// The series variable `x` of an x-series ring, at default precision.
    pub fn x(&self) -> Result<RingElement> {
        match &*self.0 {
            RingRepr::XPowerSeries { base, prec } => Ok(RingElement {
                ring: self.clone(),
                value: norm_series(
                    vec![base.v_from_rational(BigRational::zero()), base.v_from_rational(BigRational::one())],
                    *prec,
                ),
            }),
            _ => Err(Error::UnsupportedRing(
                "the variable x lives in an x-series ring".into(),
            )),
        }
    }

    /// Embed a base-ring element as a constant series at default precision.
    pub fn embed(&self, e: &RingElement) -> Result<RingElement> {
        match &*self.0 {
            RingRepr::XPowerSeries { base, prec } => {
                if e.ring != *base {
                    return Err(Error::RingMismatch(
                        "embedded element does not belong to the base ring".into(),
                    ));
                }
                Ok(RingElement {
                    ring: self.clone(),
                    value: norm_series(vec![e.value.clone()], *prec),
                })
            }
            _ => Err(Error::UnsupportedRing("embedding requires an x-series ring".into())),
        }
    }

    /// Build a series Σ coeffs[i]·x^i known modulo x^prec from base elements.
    pub fn series_from_base(&self, coeffs: &[RingElement], prec: usize) -> Result<RingElement> {
        match &*self.0 {
            RingRepr::XPowerSeries { base, .. } => {
                let mut vals = Vec::with_capacity(coeffs.len());
                for c in coeffs {
                    if c.ring != *base {
                        return Err(Error::RingMismatch(
                            "series coefficient does not belong to the base ring".into(),
                        ));
                    }
                    vals.push(c.value.clone());
                }
                Ok(RingElement {
                    ring: self.clone(),
                    value: norm_series(vals, prec),
                })
            }
            _ => Err(Error::UnsupportedRing(
                "series construction requires an x-series ring".into(),
            )),
        }
    }

    // -- value-level operations (dispatch on ring kind) ---------------------

    fn v_from_rational(&self, q: BigRational) -> Value {
        match &*self.0 {
            RingRepr::Rationals => Value::Rational(q),
            RingRepr::Polynomial { .. } | RingRepr::DiffPolynomial { .. } => {
                Value::Poly(MultiPoly::constant(q))
            }
            RingRepr::XPowerSeries { base, prec } => {
                norm_series(vec![base.v_from_rational(q)], *prec)
            }
        }
    }

    fn v_is_zero(&self, v: &Value) -> bool {
        match v {
            Value::Rational(q) => q.is_zero(),
            Value::Poly(p) => p.is_zero(),
            Value::Series { coeffs, .. } => coeffs.is_empty(),
        }
    }

    fn v_add(&self, a: &Value, b: &Value) -> Value {
        match (&*self.0, a, b) {
            (RingRepr::Rationals, Value::Rational(x), Value::Rational(y)) => {
                Value::Rational(x + y)
            }
            (RingRepr::Polynomial { .. } | RingRepr::DiffPolynomial { .. }, Value::Poly(x), Value::Poly(y)) => {
                Value::Poly(x.add(y))
            }
            (RingRepr::XPowerSeries { base, .. }, Value::Series { coeffs: ca, prec: pa }, Value::Series { coeffs: cb, prec: pb }) => {
                let prec = (*pa).min(*pb);
                let n = ca.len().max(cb.len()).min(prec);
                let zero = base.v_from_rational(BigRational::zero());
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let x = ca.get(i).unwrap_or(&zero);
                    let y = cb.get(i).unwrap_or(&zero);
                    out.push(base.v_add(x, y));
                }
                norm_series(out, prec)
            }
            _ => unreachable!("value shape does not match ring kind"),
        }
    }

    fn v_neg(&self, a: &Value) -> Value {
        match (&*self.0, a) {
            (RingRepr::Rationals, Value::Rational(x)) => Value::Rational(-x),
            (RingRepr::Polynomial { .. } | RingRepr::DiffPolynomial { .. }, Value::Poly(x)) => {
                Value::Poly(x.neg())
            }
            (RingRepr::XPowerSeries { base, .. }, Value::Series { coeffs, prec }) => Value::Series {
                coeffs: coeffs.iter().map(|c| base.v_neg(c)).collect(),
                prec: *prec,
            },
            _ => unreachable!("value shape does not match ring kind"),
        }
    }

    fn v_scale(&self, a: &Value, q: &BigRational) -> Value {
        match (&*self.0, a) {
            (RingRepr::Rationals, Value::Rational(x)) => Value::Rational(x * q),
            (RingRepr::Polynomial { .. } | RingRepr::DiffPolynomial { .. }, Value::Poly(x)) => {
                Value::Poly(x.scale(q))
            }
            (RingRepr::XPowerSeries { base, .. }, Value::Series { coeffs, prec }) => norm_series(
                coeffs.iter().map(|c| base.v_scale(c, q)).collect(),
                *prec,
            ),
            _ => unreachable!("value shape does not match ring kind"),
        }
    }

    fn v_mul(&self, a: &Value, b: &Value) -> Value {
        match (&*self.0, a, b) {
            (RingRepr::Rationals, Value::Rational(x), Value::Rational(y)) => {
                Value::Rational(x * y)
            }
            (RingRepr::Polynomial { .. } | RingRepr::DiffPolynomial { .. }, Value::Poly(x), Value::Poly(y)) => {
                Value::Poly(x.mul(y))
            }
            (RingRepr::XPowerSeries { base, .. }, Value::Series { coeffs: ca, prec: pa }, Value::Series { coeffs: cb, prec: pb }) => {
                // Valuation-aware precision: the product of something
                // vanishing to order v with something known modulo x^p is
                // known modulo x^{p+v}.
                let va = series_valuation(base, ca, *pa);
                let vb = series_valuation(base, cb, *pb);
                let prec = (pa + vb).min(pb + va);
                if ca.is_empty() || cb.is_empty() {
                    return norm_series(Vec::new(), prec);
                }
                let n = (ca.len() + cb.len() - 1).min(prec);
                let mut out = vec![base.v_from_rational(BigRational::zero()); n];
                for (i, x) in ca.iter().enumerate() {
                    if base.v_is_zero(x) {
                        continue;
                    }
                    for (j, y) in cb.iter().enumerate() {
                        if i + j >= n {
                            break;
                        }
                        if base.v_is_zero(y) {
                            continue;
                        }
                        let t = base.v_mul(x, y);
                        out[i + j] = base.v_add(&out[i + j], &t);
                    }
                }
                norm_series(out, prec)
            }
            _ => unreachable!("value shape does not match ring kind"),
        }
    }

    fn v_invert(&self, a: &Value) -> Result<Value> {
        match (&*self.0, a) {
            (RingRepr::Rationals, Value::Rational(x)) => {
                if x.is_zero() {
                    Err(Error::NonUnit("division by zero".into()))
                } else {
                    Ok(Value::Rational(x.recip()))
                }
            }
            (RingRepr::Polynomial { .. } | RingRepr::DiffPolynomial { .. }, Value::Poly(x)) => {
                match x.as_constant() {
                    Some(c) if !c.is_zero() => Ok(Value::Poly(MultiPoly::constant(c.recip()))),
                    Some(_) => Err(Error::NonUnit("division by zero".into())),
                    None => Err(Error::NonUnit(
                        "nonconstant polynomials are not units".into(),
                    )),
                }
            }
            (RingRepr::XPowerSeries { base, .. }, Value::Series { coeffs, prec }) => {
                if *prec == 0 {
                    return Err(Error::ZeroPrecision(
                        "cannot invert a series known to precision 0".into(),
                    ));
                }
                if coeffs.is_empty() || base.v_is_zero(&coeffs[0]) {
                    return Err(Error::NonUnit(
                        "series with zero constant term is not a unit".into(),
                    ));
                }
                let t0 = base.v_invert(&coeffs[0])?;
                let mut t = vec![t0.clone()];
                for l in 1..*prec {
                    // t_l = -t_0 · Σ_{j<l} s_{l-j} t_j
                    let mut acc = base.v_from_rational(BigRational::zero());
                    for (j, tj) in t.iter().enumerate().take(l) {
                        if let Some(s) = coeffs.get(l - j) {
                            if !base.v_is_zero(s) && !base.v_is_zero(tj) {
                                let prod = base.v_mul(s, tj);
                                acc = base.v_add(&acc, &prod);
                            }
                        }
                    }
                    let tl = base.v_neg(&base.v_mul(&t0, &acc));
                    t.push(tl);
                }
                Ok(norm_series(t, *prec))
            }
            _ => unreachable!("value shape does not match ring kind"),
        }
    }

    fn v_derive(&self, a: &Value) -> Result<Value> {
        match (&*self.0, a) {
            (RingRepr::Rationals, Value::Rational(_)) => Ok(Value::Rational(BigRational::zero())),
            (RingRepr::Polynomial { .. }, Value::Poly(_)) => Ok(Value::Poly(MultiPoly::zero())),
            (RingRepr::DiffPolynomial { symbols, max_jet }, Value::Poly(p)) => {
                Ok(Value::Poly(diffpoly_derive(p, symbols, *max_jet)?))
            }
            (RingRepr::XPowerSeries { base, .. }, Value::Series { coeffs, prec }) => {
                let prec = prec.saturating_sub(1);
                let n = coeffs.len().min(prec + 1);
                let mut out = Vec::new();
                for i in 0..n {
                    if i >= prec {
                        break;
                    }
                    // (i+1)·c_{i+1} + c_i'
                    let shift = match coeffs.get(i + 1) {
                        Some(c) => base.v_scale(c, &BigRational::from_integer(BigInt::from(i as i64 + 1))),
                        None => base.v_from_rational(BigRational::zero()),
                    };
                    let inner = base.v_derive(&coeffs[i])?;
                    out.push(base.v_add(&shift, &inner));
                }
                Ok(norm_series(out, prec))
            }
            _ => unreachable!("value shape does not match ring kind"),
        }
    }
}

/// Variable id encoding for jet variables: symbols are major, jets minor, so
/// the graded-lex order ranks earlier symbols and lower jets first.
fn jet_var_id(sym: usize, jet: usize, max_jet: usize) -> u32 {
    (sym * (max_jet + 1) + jet) as u32
}

fn jet_var_decode(id: u32, max_jet: usize) -> (usize, usize) {
    let id = id as usize;
    (id / (max_jet + 1), id % (max_jet + 1))
}

pub(crate) fn jet_display_name(sym: &str, jet: usize) -> String {
    let mut s = String::from(sym);
    for _ in 0..jet {
        s.push('\'');
    }
    s
}

/// Leibniz derivation on a differential polynomial: each jet variable steps to
/// the next jet; stepping past the ring's bound on a live term is an error.
fn diffpoly_derive(p: &MultiPoly, symbols: &[String], max_jet: usize) -> Result<MultiPoly> {
    let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
    for (m, c) in &p.terms {
        for (k, &(id, e)) in m.0.iter().enumerate() {
            let (sym, jet) = jet_var_decode(id, max_jet);
            if jet + 1 > max_jet {
                return Err(Error::JetOrderExceeded(format!(
                    "derivation needs jet order {} of {:?}, beyond the ring bound {}",
                    jet + 1,
                    symbols[sym],
                    max_jet
                )));
            }
            // e · (m / v) · v_next
            let mut exps = m.0.clone();
            if e == 1 {
                exps.remove(k);
            } else {
                exps[k].1 = e - 1;
            }
            let next = jet_var_id(sym, jet + 1, max_jet);
            let mono = Monomial(exps).mul(&Monomial::var(next));
            terms.push((mono, c * BigRational::from_integer(BigInt::from(e as i64))));
        }
    }
    Ok(MultiPoly::from_unsorted(terms))
}

/// First stored index with a nonzero coefficient; `prec` when none (the
/// element is indistinguishable from zero at its precision).
fn series_valuation(base: &Ring, coeffs: &[Value], prec: usize) -> usize {
    coeffs
        .iter()
        .position(|c| !base.v_is_zero(c))
        .unwrap_or(prec)
}

/// Canonical series value: stored coefficients truncated to the precision
/// window and stripped of trailing zeros.
fn norm_series(mut coeffs: Vec<Value>, prec: usize) -> Value {
    coeffs.truncate(prec);
    while let Some(last) = coeffs.last() {
        let zero = match last {
            Value::Rational(q) => q.is_zero(),
            Value::Poly(p) => p.is_zero(),
            Value::Series { .. } => unreachable!("series coefficients are scalar"),
        };
        if zero {
            coeffs.pop();
        } else {
            break;
        }
    }
    Value::Series { coeffs, prec }
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// Canonical element payload. Scalar kinds are exact; series know their
/// precision.
#[derive(Debug, Clone, PartialEq)]
enum Value {
    Rational(BigRational),
    Poly(MultiPoly),
    Series { coeffs: Vec<Value>, prec: usize },
}

/// An immutable element of one of the four ring kinds.
#[derive(Debug, Clone, PartialEq)]
pub struct RingElement {
    ring: Ring,
    value: Value,
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// True when every stored coefficient is zero — i.e. the element is
    /// indistinguishable from zero at its precision.
    pub fn is_zero(&self) -> bool {
        self.ring.v_is_zero(&self.value)
    }

    /// Precision of a series element (`None` for exact scalar kinds).
    pub fn precision(&self) -> Option<usize> {
        match &self.value {
            Value::Series { prec, .. } => Some(*prec),
            _ => None,
        }
    }

    fn check_same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "operands belong to different rings ({} vs {})",
                self.ring.kind_name(),
                other.ring.kind_name()
            )))
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same_ring(other)?;
        Ok(RingElement {
            ring: self.ring.clone(),
            value: self.ring.v_add(&self.value, &other.value),
        })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same_ring(other)?;
        let nb = self.ring.v_neg(&other.value);
        Ok(RingElement {
            ring: self.ring.clone(),
            value: self.ring.v_add(&self.value, &nb),
        })
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            value: self.ring.v_neg(&self.value),
        }
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same_ring(other)?;
        Ok(RingElement {
            ring: self.ring.clone(),
            value: self.ring.v_mul(&self.value, &other.value),
        })
    }

    pub fn scale(&self, q: &BigRational) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            value: self.ring.v_scale(&self.value, q),
        }
    }

    pub fn scale_i64(&self, n: i64) -> RingElement {
        self.scale(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn div_i64(&self, n: i64) -> Result<RingElement> {
        if n == 0 {
            return Err(Error::NonUnit("division by zero".into()));
        }
        Ok(self.scale(&BigRational::new(BigInt::from(1), BigInt::from(n))))
    }

    pub fn pow(&self, e: usize) -> RingElement {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = RingElement {
                ring: self.ring.clone(),
                value: self.ring.v_mul(&acc.value, &self.value),
            };
        }
        acc
    }

    /// Multiplicative inverse: total on nonzero rationals and constants,
    /// defined on series with unit constant term.
    pub fn invert(&self) -> Result<RingElement> {
        Ok(RingElement {
            ring: self.ring.clone(),
            value: self.ring.v_invert(&self.value)?,
        })
    }

    /// The ring's derivation: zero on rationals and polynomial constants, jet
    /// shift on differential polynomials, d/dx on series (precision drops 1).
    pub fn derive(&self) -> Result<RingElement> {
        Ok(RingElement {
            ring: self.ring.clone(),
            value: self.ring.v_derive(&self.value)?,
        })
    }

    /// n-fold derivation.
    pub fn derive_n(&self, n: usize) -> Result<RingElement> {
        let mut e = self.clone();
        for _ in 0..n {
            e = e.derive()?;
        }
        Ok(e)
    }

    /// Antiderivative with zero constant term; series only (precision +1).
    pub fn integrate_zero(&self) -> Result<RingElement> {
        match (&*self.ring.0, &self.value) {
            (RingRepr::XPowerSeries { base, .. }, Value::Series { coeffs, prec }) => {
                let mut out = Vec::with_capacity(coeffs.len() + 1);
                out.push(base.v_from_rational(BigRational::zero()));
                for (i, c) in coeffs.iter().enumerate() {
                    out.push(base.v_scale(
                        c,
                        &BigRational::new(BigInt::from(1), BigInt::from(i as i64 + 1)),
                    ));
                }
                Ok(RingElement {
                    ring: self.ring.clone(),
                    value: norm_series(out, prec + 1),
                })
            }
            _ => Err(Error::UnsupportedRing(format!(
                "no total integration on a {} ring",
                self.ring.kind_name()
            ))),
        }
    }

    /// Constant coefficient of a series, as a base-ring element.
    pub fn eval_at_zero(&self) -> Result<RingElement> {
        match (&*self.ring.0, &self.value) {
            (RingRepr::XPowerSeries { base, .. }, Value::Series { coeffs, prec }) => {
                if *prec == 0 {
                    return Err(Error::ZeroPrecision(
                        "constant term of a series known to precision 0".into(),
                    ));
                }
                let v = coeffs
                    .first()
                    .cloned()
                    .unwrap_or_else(|| base.v_from_rational(BigRational::zero()));
                Ok(RingElement {
                    ring: base.clone(),
                    value: v,
                })
            }
            _ => Err(Error::UnsupportedRing(
                "eval_at_zero requires an x-series element".into(),
            )),
        }
    }

    /// Coefficient of x^i as a base-ring element; `i` must lie inside the
    /// precision window.
    pub fn x_coeff(&self, i: usize) -> Result<RingElement> {
        match (&*self.ring.0, &self.value) {
            (RingRepr::XPowerSeries { base, .. }, Value::Series { coeffs, prec }) => {
                if i >= *prec {
                    return Err(Error::WindowTooSmall(format!(
                        "coefficient of x^{i} requested from a series known modulo x^{prec}"
                    )));
                }
                let v = coeffs
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| base.v_from_rational(BigRational::zero()));
                Ok(RingElement {
                    ring: base.clone(),
                    value: v,
                })
            }
            _ => Err(Error::UnsupportedRing(
                "x_coeff requires an x-series element".into(),
            )),
        }
    }

    /// Index of the first nonzero stored coefficient of a series; equals the
    /// precision when all stored coefficients vanish.
    pub fn x_valuation(&self) -> Result<usize> {
        match (&*self.ring.0, &self.value) {
            (RingRepr::XPowerSeries { base, .. }, Value::Series { coeffs, prec }) => {
                Ok(series_valuation(base, coeffs, *prec))
            }
            _ => Err(Error::UnsupportedRing(
                "x_valuation requires an x-series element".into(),
            )),
        }
    }

    /// Lower a series element's precision (a no-op at or above the current
    /// one is rejected only when it would claim unknown coefficients).
    pub fn with_precision(&self, p: usize) -> Result<RingElement> {
        match (&*self.ring.0, &self.value) {
            (RingRepr::XPowerSeries { .. }, Value::Series { coeffs, prec }) => {
                if p > *prec {
                    return Err(Error::WindowTooSmall(format!(
                        "cannot extend precision from {prec} to {p}: higher coefficients are unknown"
                    )));
                }
                Ok(RingElement {
                    ring: self.ring.clone(),
                    value: norm_series(coeffs.clone(), p),
                })
            }
            _ => Err(Error::UnsupportedRing(
                "precision applies to x-series elements".into(),
            )),
        }
    }

    /// Equality as far as both operands are known: scalars compare exactly,
    /// series compare on the shared precision window.
    pub fn eq_within_precision(&self, other: &RingElement) -> Result<bool> {
        self.check_same_ring(other)?;
        match (&self.value, &other.value) {
            (Value::Series { coeffs: ca, prec: pa }, Value::Series { coeffs: cb, prec: pb }) => {
                let p = (*pa).min(*pb);
                let base = self.ring.base();
                for i in 0..p {
                    let zero = base.v_from_rational(BigRational::zero());
                    let x = ca.get(i).unwrap_or(&zero);
                    let y = cb.get(i).unwrap_or(&zero);
                    let diff = base.v_add(x, &base.v_neg(y));
                    if !base.v_is_zero(&diff) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Ok(self.value == other.value),
        }
    }

    /// The rational value of an element that is constant (rationals, constant
    /// polynomials, constant series over such a base).
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Rational(q) => Some(q.clone()),
            Value::Poly(p) => p.as_constant(),
            Value::Series { coeffs, prec } => {
                if *prec == 0 || coeffs.len() > 1 {
                    return None;
                }
                match coeffs.first() {
                    None => Some(BigRational::zero()),
                    Some(Value::Rational(q)) => Some(q.clone()),
                    Some(Value::Poly(p)) => p.as_constant(),
                    Some(Value::Series { .. }) => None,
                }
            }
        }
    }

    /// Substitute target-ring values for every jet variable of a differential
    /// polynomial. The map is keyed by (symbol name, jet order) and must cover
    /// every variable that occurs.
    pub fn substitute_jets(
        &self,
        target: &Ring,
        map: &BTreeMap<(String, usize), RingElement>,
    ) -> Result<RingElement> {
        let (symbols, max_jet) = match &*self.ring.0 {
            RingRepr::DiffPolynomial { symbols, max_jet } => (symbols, *max_jet),
            _ => {
                return Err(Error::UnsupportedRing(
                    "jet substitution applies to differential polynomials".into(),
                ))
            }
        };
        let p = match &self.value {
            Value::Poly(p) => p,
            _ => unreachable!("value shape does not match ring kind"),
        };
        let mut acc = target.zero();
        for (m, c) in &p.terms {
            let mut term = target.from_rational(c.clone());
            for &(id, e) in &m.0 {
                let (sym, jet) = jet_var_decode(id, max_jet);
                let key = (symbols[sym].clone(), jet);
                let sub = map.get(&key).ok_or_else(|| {
                    Error::UnknownSymbol(format!(
                        "no substitution for {}",
                        jet_display_name(&symbols[sym], jet)
                    ))
                })?;
                if sub.ring() != target {
                    return Err(Error::RingMismatch(
                        "substitution value belongs to a different ring".into(),
                    ));
                }
                term = term.mul(&sub.pow(e as usize))?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    // -- element JSON --------------------------------------------------------

    pub fn to_json(&self) -> serde_json::Value {
        value_to_json(&self.ring, &self.value)
    }

    pub fn from_json(ring: &Ring, v: &serde_json::Value) -> Result<RingElement> {
        Ok(RingElement {
            ring: ring.clone(),
            value: value_from_json(ring, v)?,
        })
    }
}

fn rational_to_string(q: &BigRational) -> String {
    q.to_string()
}

pub(crate) fn rational_from_str(s: &str) -> Result<BigRational> {
    s.parse::<BigRational>()
        .map_err(|_| Error::BadEncoding(format!("not a rational: {s:?}")))
}

fn poly_var_display(ring: &Ring, id: u32) -> String {
    match &*ring.0 {
        RingRepr::Polynomial { vars } => vars[id as usize].clone(),
        RingRepr::DiffPolynomial { symbols, max_jet } => {
            let (sym, jet) = jet_var_decode(id, *max_jet);
            jet_display_name(&symbols[sym], jet)
        }
        _ => unreachable!("polynomial payload in a non-polynomial ring"),
    }
}

fn poly_var_parse(ring: &Ring, name: &str) -> Result<u32> {
    match &*ring.0 {
        RingRepr::Polynomial { vars } => vars
            .iter()
            .position(|v| v == name)
            .map(|i| i as u32)
            .ok_or_else(|| Error::UnknownSymbol(format!("unknown symbol {name:?}"))),
        RingRepr::DiffPolynomial { symbols, max_jet } => {
            let stripped = name.trim_end_matches('\'');
            let jet = name.len() - stripped.len();
            let sym = symbols
                .iter()
                .position(|v| v == stripped)
                .ok_or_else(|| Error::UnknownSymbol(format!("unknown symbol {stripped:?}")))?;
            if jet > *max_jet {
                return Err(Error::JetOrderExceeded(format!(
                    "jet order {jet} of {stripped:?} exceeds the ring bound {max_jet}"
                )));
            }
            Ok(jet_var_id(sym, jet, *max_jet))
        }
        _ => Err(Error::UnsupportedRing("ring has no symbols".into())),
    }
}

fn value_to_json(ring: &Ring, v: &Value) -> serde_json::Value {
    match v {
        Value::Rational(q) => serde_json::Value::String(rational_to_string(q)),
        Value::Poly(p) => {
            let monomials: Vec<serde_json::Value> = p
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = serde_json::Map::new();
                    for &(id, e) in &m.0 {
                        exps.insert(poly_var_display(ring, id), json!(e));
                    }
                    json!({"coeffs": rational_to_string(c), "exps": exps})
                })
                .collect();
            json!({ "monomials": monomials })
        }
        Value::Series { coeffs, prec } => {
            let base = ring.base();
            let cs: Vec<serde_json::Value> =
                coeffs.iter().map(|c| value_to_json(&base, c)).collect();
            json!({"coeffs": cs, "prec": prec})
        }
    }
}

fn value_from_json(ring: &Ring, v: &serde_json::Value) -> Result<Value> {
    match &*ring.0 {
        RingRepr::Rationals => match v.as_str() {
            Some(s) => Ok(Value::Rational(rational_from_str(s)?)),
            None => Err(Error::BadEncoding("rational must be a string".into())),
        },
        RingRepr::Polynomial { .. } | RingRepr::DiffPolynomial { .. } => {
            // Accept either a bare rational string (constant) or the full
            // monomial encoding.
            if let Some(s) = v.as_str() {
                return Ok(Value::Poly(MultiPoly::constant(rational_from_str(s)?)));
            }
            let monomials = v
                .get("monomials")
                .and_then(|m| m.as_array())
                .ok_or_else(|| Error::BadEncoding("polynomial needs \"monomials\"".into()))?;
            let mut terms = Vec::with_capacity(monomials.len());
            for m in monomials {
                let c = m
                    .get("coeffs")
                    .and_then(|c| c.as_str())
                    .ok_or_else(|| Error::BadEncoding("monomial needs \"coeffs\"".into()))?;
                let c = rational_from_str(c)?;
                let exps = m
                    .get("exps")
                    .and_then(|e| e.as_object())
                    .ok_or_else(|| Error::BadEncoding("monomial needs \"exps\"".into()))?;
                let mut mono: Vec<(u32, u32)> = Vec::with_capacity(exps.len());
                for (name, e) in exps {
                    let id = poly_var_parse(ring, name)?;
                    let e = e
                        .as_u64()
                        .filter(|&e| e > 0)
                        .ok_or_else(|| Error::BadEncoding("exponents must be positive".into()))?;
                    mono.push((id, e as u32));
                }
                mono.sort_unstable();
                terms.push((Monomial(mono), c));
            }
            Ok(Value::Poly(MultiPoly::from_unsorted(terms)))
        }
        RingRepr::XPowerSeries { base, .. } => {
            let coeffs = v
                .get("coeffs")
                .and_then(|c| c.as_array())
                .ok_or_else(|| Error::BadEncoding("series needs \"coeffs\"".into()))?;
            let prec = v
                .get("prec")
                .and_then(|p| p.as_u64())
                .ok_or_else(|| Error::BadEncoding("series needs \"prec\"".into()))?;
            let vals = coeffs
                .iter()
                .map(|c| value_from_json(base, c))
                .collect::<Result<Vec<_>>>()?;
            Ok(norm_series(vals, prec as usize))
        }
    }
}

// ---------------------------------------------------------------------------
// Display
// ---------------------------------------------------------------------------

/// Join pre-signed term strings with " + " / " - " separators.
pub(crate) fn join_signed(terms: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        if k == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

fn poly_term_strings(ring: &Ring, p: &MultiPoly) -> Vec<String> {
    p.terms
        .iter()
        .map(|(m, c)| {
            let mono = m
                .0
                .iter()
                .map(|&(id, e)| {
                    let name = poly_var_display(ring, id);
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                rational_to_string(c)
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", rational_to_string(c))
            }
        })
        .collect()
}

/// Term strings (pre-signed) of any value; `xpow` maps a power of x to its
/// display when the value is a series.
fn value_term_strings(ring: &Ring, v: &Value) -> Vec<String> {
    match v {
        Value::Rational(q) => {
            if q.is_zero() {
                vec![]
            } else {
                vec![rational_to_string(q)]
            }
        }
        Value::Poly(p) => poly_term_strings(ring, p),
        Value::Series { coeffs, .. } => {
            let base = ring.base();
            let mut out = Vec::new();
            for (i, c) in coeffs.iter().enumerate() {
                if base.v_is_zero(c) {
                    continue;
                }
                let xpow = match i {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x^{i}"),
                };
                let parts = value_term_strings(&base, c);
                if i == 0 {
                    out.extend(parts);
                } else if parts.len() == 1 {
                    let s = &parts[0];
                    if s == "1" {
                        out.push(xpow);
                    } else if s == "-1" {
                        out.push(format!("-{xpow}"));
                    } else {
                        out.push(format!("{s}*{xpow}"));
                    }
                } else {
                    out.push(format!("({})*{xpow}", join_signed(&parts)));
                }
            }
            out
        }
    }
}

/// Pre-signed term strings of an element, for composite displays (series and
/// operator renderers wrap multi-term coefficients in parentheses).
pub(crate) fn element_term_strings(e: &RingElement) -> Vec<String> {
    value_term_strings(&e.ring, &e.value)
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = value_term_strings(&self.ring, &self.value);
        write!(f, "{}", join_signed(&terms))
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rationals_arithmetic_and_inverse() {
        let r = Ring::rationals();
        let a = r.from_rational(q(2, 3));
        let b = r.from_rational(q(-1, 6));
        let s = a.add(&b).unwrap();
        assert_eq!(s.as_rational(), Some(q(1, 2)));
        let inv = s.invert().unwrap();
        assert_eq!(inv.as_rational(), Some(q(2, 1)));
        assert!(r.from_i64(0).invert().is_err());
        assert_eq!(a.derive().unwrap().as_rational(), Some(q(0, 1)));
    }

    #[test]
    fn polynomial_arithmetic_canonical() {
        let r = Ring::polynomial(&["A", "B"]).unwrap();
        let a = r.symbol("A").unwrap();
        let b = r.symbol("B").unwrap();
        // (A+B)^2 - (A-B)^2 = 4AB
        let p = a.add(&b).unwrap().pow(2);
        let m = a.sub(&b).unwrap().pow(2);
        let d = p.sub(&m).unwrap();
        let want = a.mul(&b).unwrap().scale_i64(4);
        assert_eq!(d, want);
        assert_eq!(d.to_string(), "4*A*B");
        assert!(a.invert().is_err());
        assert!(a.derive().unwrap().is_zero());
    }

    #[test]
    fn diffpoly_jet_shift_and_leibniz() {
        let r = Ring::diff_polynomial(&["u"], 3).unwrap();
        let u = r.jet("u", 0).unwrap();
        let u1 = r.jet("u", 1).unwrap();
        let u2 = r.jet("u", 2).unwrap();
        // (u·u')' = u'^2 + u·u''
        let lhs = u.mul(&u1).unwrap().derive().unwrap();
        let rhs = u1.pow(2).add(&u.mul(&u2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(u.to_string(), "u");
        assert_eq!(u2.to_string(), "u''");
        // jet bound is enforced
        let top = r.jet("u", 3).unwrap();
        assert!(matches!(
            top.derive(),
            Err(Error::JetOrderExceeded(_))
        ));
        assert!(r.jet("u", 4).is_err());
    }

    #[test]
    fn series_derive_integrate_eval() {
        let base = Ring::rationals();
        let r = Ring::x_series(&base, 8).unwrap();
        let x = r.x().unwrap();
        let e = r.one().add(&x.pow(2).scale(&q(3, 1))).unwrap(); // 1 + 3x²
        let d = e.derive().unwrap(); // 6x, precision 7
        assert_eq!(d.precision(), Some(7));
        assert_eq!(
            d.x_coeff(1).unwrap().as_rational(),
            Some(q(6, 1))
        );
        let i = d.integrate_zero().unwrap(); // 3x², precision 8
        assert_eq!(i.precision(), Some(8));
        assert!(i.eval_at_zero().unwrap().is_zero());
        assert!(i.eq_within_precision(&x.pow(2).scale(&q(3, 1))).unwrap());
    }

    #[test]
    fn series_inverse_is_reciprocal() {
        let base = Ring::rationals();
        let r = Ring::x_series(&base, 10).unwrap();
        let x = r.x().unwrap();
        let s = r.one().add(&x).unwrap(); // 1 + x
        let t = s.invert().unwrap();
        let prod = s.mul(&t).unwrap();
        assert!(prod.eq_within_precision(&r.one()).unwrap());
        // alternating signs
        assert_eq!(t.x_coeff(5).unwrap().as_rational(), Some(q(-1, 1)));
        // x itself is not a unit
        assert!(matches!(x.invert(), Err(Error::NonUnit(_))));
    }

    #[test]
    fn series_precision_propagates() {
        let base = Ring::rationals();
        let r = Ring::x_series(&base, 6).unwrap();
        let x = r.x().unwrap();
        let a = x.clone(); // valuation 1, precision 6
        let b = x.pow(2); // valuation 2, precision 6(+) per the min rule
        let prod = a.mul(&b).unwrap();
        // min(p_a + v_b, p_b + v_a) ≥ 6 + 1
        assert!(prod.precision().unwrap() >= 7);
        assert_eq!(prod.x_coeff(3).unwrap().as_rational(), Some(q(1, 1)));
        assert!(matches!(
            r.one().x_coeff(6),
            Err(Error::WindowTooSmall(_))
        ));
    }

    #[test]
    fn leibniz_on_series_over_diffpoly_base() {
        let base = Ring::diff_polynomial(&["u"], 4).unwrap();
        let r = Ring::x_series(&base, 5).unwrap();
        let u = r.symbol("u").unwrap();
        let x = r.x().unwrap();
        let a = u.mul(&x).unwrap(); // u·x
        let d = a.derive().unwrap(); // u + u'·x
        assert_eq!(d.x_coeff(0).unwrap(), base.jet("u", 0).unwrap());
        assert_eq!(d.x_coeff(1).unwrap(), base.jet("u", 1).unwrap());
    }

    #[test]
    fn substitution_of_jets() {
        // Substitute u ↦ 2, u' ↦ 0 in u² + u' over the rationals.
        let r = Ring::diff_polynomial(&["u"], 2).unwrap();
        let p = r.jet("u", 0).unwrap().pow(2).add(&r.jet("u", 1).unwrap()).unwrap();
        let target = Ring::rationals();
        let mut map = BTreeMap::new();
        map.insert(("u".into(), 0), target.from_i64(2));
        map.insert(("u".into(), 1), target.from_i64(0));
        let out = p.substitute_jets(&target, &map).unwrap();
        assert_eq!(out.as_rational(), Some(q(4, 1)));
    }

    #[test]
    fn json_roundtrip_all_kinds() {
        let rq = Ring::rationals();
        let e = rq.from_rational(q(-7, 3));
        assert_eq!(RingElement::from_json(&rq, &e.to_json()).unwrap(), e);

        let rp = Ring::polynomial(&["A", "B"]).unwrap();
        let p = rp
            .symbol("A")
            .unwrap()
            .pow(2)
            .sub(&rp.symbol("B").unwrap().scale(&q(1, 2)))
            .unwrap();
        assert_eq!(RingElement::from_json(&rp, &p.to_json()).unwrap(), p);

        let rd = Ring::diff_polynomial(&["v"], 3).unwrap();
        let d = rd.jet("v", 2).unwrap().mul(&rd.jet("v", 0).unwrap()).unwrap();
        assert_eq!(RingElement::from_json(&rd, &d.to_json()).unwrap(), d);

        let rs = Ring::x_series(&rp, 7).unwrap();
        let s = rs
            .x()
            .unwrap()
            .mul(&rs.symbol("A").unwrap())
            .unwrap()
            .add(&rs.one())
            .unwrap();
        let back = RingElement::from_json(&rs, &s.to_json()).unwrap();
        assert_eq!(back, s);

        // ring descriptors round-trip too
        for ring in [rq, rp, rd, rs] {
            assert_eq!(Ring::from_json(&ring.to_json()).unwrap(), ring);
        }
    }

    #[test]
    fn display_is_readable() {
        let rp = Ring::polynomial(&["A"]).unwrap();
        let rs = Ring::x_series(&rp, 6).unwrap();
        let x = rs.x().unwrap();
        let a = rs.symbol("A").unwrap();
        let e = rs
            .one()
            .sub(&x.scale(&q(1, 2)))
            .unwrap()
            .add(&a.add(&rs.one()).unwrap().mul(&x.pow(3)).unwrap())
            .unwrap();
        assert_eq!(e.to_string(), "1 - 1/2*x + (A + 1)*x^3");
        assert_eq!(rs.zero().to_string(), "0");
    }

    #[test]
    fn mixed_ring_operations_are_rejected() {
        let a = Ring::rationals().one();
        let b = Ring::polynomial(&["A"]).unwrap().one();
        assert!(matches!(a.add(&b), Err(Error::RingMismatch(_))));
    }
}
