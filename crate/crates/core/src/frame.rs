//! Frame shapes: finitely supported exponent maps `k -> a_k` standing for
//! the rational function `prod_k (t^k - 1)^{a_k}`.
//!
//! The `(t^k - 1)` realization keeps characteristic polynomials monic. The
//! `(1 - t^k)` form used in tables differs by the sign `(-1)^{sum a_k}`,
//! which cancels in every quotient identity; frame equality is
//! sign-agnostic either way because exponent maps are compared directly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{cyclotomic, totient, IntPoly, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FrameShape {
    exps: BTreeMap<u64, i64>,
}

impl FrameShape {
    /// The constant 1.
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a frame from `(k, a_k)` pairs, merging repeated keys and
    /// dropping zero exponents. Panics on `k = 0`.
    pub fn from_pairs<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Self {
        let mut exps = BTreeMap::new();
        for (k, a) in pairs {
            assert!(k > 0, "frame keys must be positive");
            *exps.entry(k).or_insert(0) += a;
        }
        exps.retain(|_, a| *a != 0);
        FrameShape { exps }
    }

    /// `(t^k - 1)`.
    pub fn single(k: u64) -> Self {
        Self::from_pairs([(k, 1)])
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exps
    }

    pub fn exponent(&self, k: u64) -> i64 {
        self.exps.get(&k).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// `sum k * a_k`, the degree of the realized rational function.
    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|(&k, &a)| k as i64 * a).sum()
    }

    pub fn mul(&self, other: &FrameShape) -> FrameShape {
        Self::from_pairs(self.pairs().chain(other.pairs()))
    }

    pub fn div(&self, other: &FrameShape) -> FrameShape {
        self.mul(&other.inverse())
    }

    pub fn inverse(&self) -> FrameShape {
        Self::from_pairs(self.exps.iter().map(|(&k, &a)| (k, -a)))
    }

    /// Substitution `t -> t^s`.
    pub fn scale_keys(&self, s: u64) -> FrameShape {
        assert!(s > 0);
        Self::from_pairs(self.exps.iter().map(|(&k, &a)| (k * s, a)))
    }

    fn pairs(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exps.iter().map(|(&k, &a)| (k, a))
    }

    /// Multiplicity `e_m = sum_{m | k} a_k` of the cyclotomic polynomial
    /// `Phi_m` for every `m` with `e_m != 0`.
    pub fn cyclotomic_multiplicities(&self) -> BTreeMap<u64, i64> {
        let mut e: BTreeMap<u64, i64> = BTreeMap::new();
        for (&k, &a) in &self.exps {
            for m in divisors(k) {
                *e.entry(m).or_insert(0) += a;
            }
        }
        e.retain(|_, v| *v != 0);
        e
    }

    /// True when the realized rational function is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.cyclotomic_multiplicities().values().all(|&e| e > 0)
    }

    /// Sum of the `a_k`; the realization differs from the `(1 - t^k)` form
    /// by `(-1)` to this power.
    pub fn exponent_sum(&self) -> i64 {
        self.exps.values().sum()
    }

    /// Text notation: numerator keys ascending, repeated by multiplicity,
    /// joined by `·`, then `/` and the denominator. An empty side is `1^0`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    fn side(&self, positive: bool) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .filter(|(_, &a)| (a > 0) == positive)
            .flat_map(|(&k, &a)| std::iter::repeat_n(k.to_string(), a.unsigned_abs() as usize))
            .collect();
        if parts.is_empty() {
            "1^0".to_string()
        } else {
            parts.join("·")
        }
    }
}

fn divisors(k: u64) -> impl Iterator<Item = u64> {
    (1..=k).filter(move |m| k % m == 0)
}

/// `prod (t^k - 1)^{a_k}` as a reduced rational function.
pub fn frame_to_ratfunc(f: &FrameShape) -> RatFunc {
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for (m, e) in f.cyclotomic_multiplicities() {
        let phi = cyclotomic(m as usize).pow(e.unsigned_abs() as u32);
        if e > 0 {
            num = &num * &phi;
        } else {
            den = &den * &phi;
        }
    }
    // products of distinct cyclotomics are coprime, so this is already reduced
    RatFunc::new(num, den)
}

/// Smallest bound that is guaranteed to cover every cyclotomic factor of a
/// polynomial of degree `d`: the largest `m` with `phi(m) <= d`.
pub fn default_cyclotomic_bound(d: usize) -> u64 {
    let d = d as u64;
    // phi(m) >= sqrt(m / 2), so phi(m) <= d forces m <= 2 d^2
    let limit = 2 * d * d + 2;
    (1..=limit).filter(|&m| totient(m) <= d).max().unwrap_or(0)
}

/// Inverts [`frame_to_ratfunc`]. `bound` caps the cyclotomic indices that are
/// tried; `None` uses [`default_cyclotomic_bound`] of the larger side.
pub fn ratfunc_to_frame(r: &RatFunc, bound: Option<u64>) -> Result<FrameShape> {
    if r.is_zero() {
        return Err(Error::NotAFrameProduct("zero".into()));
    }
    let num_deg = r.numerator().degree().unwrap_or(0);
    let den_deg = r.denominator().degree().unwrap_or(0);
    let bound = bound.unwrap_or_else(|| default_cyclotomic_bound(num_deg.max(den_deg)));
    let (num_rest, num_mult) = strip_cyclotomics(r.numerator(), bound);
    let (den_rest, den_mult) = strip_cyclotomics(r.denominator(), bound);
    if !num_rest.is_constant() || !den_rest.is_constant() || num_rest != den_rest {
        return Err(Error::NotAFrameProduct(format!(
            "residual factor ({num_rest}) / ({den_rest})"
        )));
    }
    let mut e: BTreeMap<u64, i64> = num_mult;
    for (m, c) in den_mult {
        *e.entry(m).or_insert(0) -= c;
    }
    e.retain(|_, v| *v != 0);
    Ok(frame_from_cyclotomic_multiplicities(&e))
}

/// Solves `e_m = sum_{m | k} a_k` top-down from the largest index.
pub fn frame_from_cyclotomic_multiplicities(e: &BTreeMap<u64, i64>) -> FrameShape {
    let Some(&top) = e.keys().next_back() else {
        return FrameShape::one();
    };
    let mut alpha: BTreeMap<u64, i64> = BTreeMap::new();
    for m in (1..=top).rev() {
        let above: i64 = (2..)
            .map(|j| j * m)
            .take_while(|&k| k <= top)
            .map(|k| alpha.get(&k).copied().unwrap_or(0))
            .sum();
        let a = e.get(&m).copied().unwrap_or(0) - above;
        if a != 0 {
            alpha.insert(m, a);
        }
    }
    FrameShape { exps: alpha }
}

fn strip_cyclotomics(p: &IntPoly, bound: u64) -> (IntPoly, BTreeMap<u64, i64>) {
    let mut rest = p.clone();
    let mut mult = BTreeMap::new();
    for m in 1..=bound {
        let deg = rest.degree().unwrap_or(0) as u64;
        if totient(m) > deg {
            continue;
        }
        let phi = cyclotomic(m as usize);
        let mut count = 0i64;
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
            count += 1;
        }
        if count > 0 {
            mult.insert(m, count);
        }
    }
    (rest, mult)
}

/// `a_k -> -a_k` moved to key `d / k`.
pub fn saito_dual(f: &FrameShape, d: u64) -> Result<FrameShape> {
    for &k in f.exps.keys() {
        if d == 0 || d % k != 0 {
            return Err(Error::KeyNotDividing { key: k, degree: d });
        }
    }
    Ok(FrameShape::from_pairs(f.exps.iter().map(|(&k, &a)| (d / k, -a))))
}

impl fmt::Display for FrameShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let has_den = self.exps.values().any(|&a| a < 0);
        if has_den {
            write!(f, "{}/{}", self.side(true), self.side(false))
        } else {
            write!(f, "{}", self.side(true))
        }
    }
}

impl FromStr for FrameShape {
    type Err = Error;

    /// Accepts `·` or `*` separators, an optional single `/`, and `k^e`
    /// tokens for explicit exponents.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty frame shape".into()));
        }
        let mut sides = s.split('/');
        let num = sides.next().unwrap_or("");
        let den = sides.next().unwrap_or("");
        if sides.next().is_some() {
            return Err(Error::Parse(format!("more than one '/' in {s:?}")));
        }
        let mut pairs = parse_side(num)?;
        pairs.extend(parse_side(den)?.into_iter().map(|(k, a)| (k, -a)));
        Ok(FrameShape::from_pairs(pairs))
    }
}

fn parse_side(s: &str) -> Result<Vec<(u64, i64)>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(['·', '*'])
        .map(|tok| {
            let tok = tok.trim();
            let (k, e) = match tok.split_once('^') {
                Some((k, e)) => (k.trim(), e.trim()),
                None => (tok, "1"),
            };
            let k: u64 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad frame key {tok:?}")))?;
            let e: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad frame exponent {tok:?}")))?;
            if k == 0 {
                return Err(Error::Parse("frame key 0".into()));
            }
            Ok((k, e))
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct FrameJson {
    num: BTreeMap<String, u64>,
    den: BTreeMap<String, u64>,
}

impl Serialize for FrameShape {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // keys sorted numerically, not lexically
        struct Side<'a>(&'a FrameShape, bool);
        impl Serialize for Side<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                use serde::ser::SerializeMap;
                let entries: Vec<_> =
                    self.0.exps.iter().filter(|(_, &a)| (a > 0) == self.1).collect();
                let mut map = s.serialize_map(Some(entries.len()))?;
                for (k, a) in entries {
                    map.serialize_entry(&k.to_string(), &a.unsigned_abs())?;
                }
                map.end()
            }
        }
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("FrameShape", 2)?;
        st.serialize_field("num", &Side(self, true))?;
        st.serialize_field("den", &Side(self, false))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FrameShape {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = FrameJson::deserialize(deserializer)?;
        let mut pairs = Vec::new();
        for (sign, side) in [(1i64, &raw.num), (-1, &raw.den)] {
            for (k, &a) in side {
                let k: u64 = k.parse().map_err(D::Error::custom)?;
                if k == 0 {
                    return Err(D::Error::custom("frame key 0"));
                }
                pairs.push((k, sign * a as i64));
            }
        }
        Ok(FrameShape::from_pairs(pairs))
    }
}
