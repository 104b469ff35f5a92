//! Gamma triples (γ, δ, N) and the hypergeometric parameters they encode.
//!
//! The parameters of a triple come from the rational function
//! Π_{γ_j<0} (T^{-γ_j} - ζ_N^{δ_j}) / Π_{γ_j>0} (T^{γ_j} - ζ_N^{-δ_j})
//! after cancelling common roots. Every root is a root of unity of order
//! dividing L = N·lcm|γ_j|, so the cancellation is done on residues mod L.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaTriple {
    pub gamma: Vec<i64>,
    pub delta: Vec<i64>,
    #[serde(rename = "N")]
    pub n: u64,
}

impl fmt::Display for GammaTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {})", self.gamma, self.delta, self.n)
    }
}

impl GammaTriple {
    pub fn new(gamma: Vec<i64>, delta: Vec<i64>, n: u64) -> Result<Self> {
        let t = GammaTriple { gamma, delta, n };
        t.validate()?;
        Ok(t)
    }

    /// Checks the defining conditions and returns (r, s), the numbers of
    /// negative and positive entries of γ.
    pub fn validate(&self) -> Result<(usize, usize)> {
        if self.n == 0 {
            return Err(Error::Triple("N must be positive".into()));
        }
        if self.gamma.len() != self.delta.len() {
            return Err(Error::Triple(format!(
                "gamma has length {} but delta has length {}",
                self.gamma.len(),
                self.delta.len()
            )));
        }
        if self.gamma.len() < 2 {
            return Err(Error::Triple("gamma needs at least two entries".into()));
        }
        if self.gamma.contains(&0) {
            return Err(Error::Triple("gamma has a zero component".into()));
        }
        if self.gamma.iter().sum::<i64>() != 0 {
            return Err(Error::Triple("gamma entries do not sum to zero".into()));
        }
        if self.gamma.iter().fold(0i64, |a, &b| a.gcd(&b)) != 1 {
            return Err(Error::Triple("gamma entries are not coprime".into()));
        }
        Ok(self.signs())
    }

    pub fn signs(&self) -> (usize, usize) {
        let r = self.gamma.iter().filter(|&&g| g < 0).count();
        (r, self.gamma.len() - r)
    }

    /// δ_j (q-1)/N as integers, when they are integral.
    pub fn scaled_delta(&self, n: u64) -> Result<Vec<i64>> {
        self.delta
            .iter()
            .map(|&d| {
                let num = d as i128 * n as i128;
                if num % self.n as i128 != 0 {
                    Err(Error::Domain(format!(
                        "δ·(q-1)/N is not integral for δ = {:?}, N = {}, q-1 = {n}",
                        self.delta, self.n
                    )))
                } else {
                    Ok((num / self.n as i128) as i64)
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HypergeometricParams {
    pub alpha: Vec<Rational64>,
    pub beta: Vec<Rational64>,
}

impl HypergeometricParams {
    pub fn new(mut alpha: Vec<Rational64>, mut beta: Vec<Rational64>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::Params("alpha and beta must have equal length".into()));
        }
        for x in alpha.iter().chain(&beta) {
            if !x.is_positive() || *x > Rational64::one() {
                return Err(Error::Params(format!("{x} is not in (0, 1]")));
            }
        }
        if alpha.iter().any(|a| beta.contains(a)) {
            return Err(Error::Params("some alpha_i - beta_j is an integer".into()));
        }
        alpha.sort();
        beta.sort();
        Ok(HypergeometricParams { alpha, beta })
    }

    pub fn empty() -> Self {
        HypergeometricParams { alpha: Vec::new(), beta: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// Parses comma separated fractions such as "1/3,2/3".
    pub fn parse(alpha: &str, beta: &str) -> Result<Self> {
        Self::new(parse_fraction_list(alpha)?, parse_fraction_list(beta)?)
    }

    /// Least common denominator of all entries (1 for empty parameters).
    pub fn denominator_lcm(&self) -> i64 {
        self.alpha.iter().chain(&self.beta).fold(1, |acc, x| acc.lcm(x.denom()))
    }

    pub fn alpha_strings(&self) -> Vec<String> {
        self.alpha.iter().map(ToString::to_string).collect()
    }

    pub fn beta_strings(&self) -> Vec<String> {
        self.beta.iter().map(ToString::to_string).collect()
    }

    /// Σ (α_i - β_i).
    pub fn defect(&self) -> Rational64 {
        self.alpha.iter().sum::<Rational64>() - self.beta.iter().sum::<Rational64>()
    }
}

impl fmt::Display for HypergeometricParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}); ({}))", self.alpha_strings().join(", "), self.beta_strings().join(", "))
    }
}

impl Serialize for HypergeometricParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HypergeometricParams", 2)?;
        st.serialize_field("alpha", &self.alpha_strings())?;
        st.serialize_field("beta", &self.beta_strings())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for HypergeometricParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            alpha: Vec<String>,
            beta: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        let conv = |v: &[String]| -> Result<Vec<Rational64>> { v.iter().map(|x| parse_fraction(x)).collect() };
        let alpha = conv(&raw.alpha).map_err(serde::de::Error::custom)?;
        let beta = conv(&raw.beta).map_err(serde::de::Error::custom)?;
        HypergeometricParams::new(alpha, beta).map_err(serde::de::Error::custom)
    }
}

pub fn parse_fraction(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad fraction {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(a, b))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_fraction_list(s: &str) -> Result<Vec<Rational64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_fraction).collect()
}

/// Multiset of roots of unity e^{2πi a/L}, keyed by a mod L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMultiset {
    pub level: u64,
    pub counts: BTreeMap<u64, u32>,
}

impl RootMultiset {
    pub fn new(level: u64) -> Self {
        RootMultiset { level, counts: BTreeMap::new() }
    }

    /// Adds the k roots of T^k = e^{2πi a/L}, where k | L.
    fn add_roots_of(&mut self, k: u64, a: i64) {
        let l = self.level as i64;
        let step = l / k as i64;
        debug_assert_eq!(a % k as i64, 0, "root exponent must be divisible by k");
        let base = a / k as i64;
        for i in 0..k as i64 {
            *self.counts.entry((base + i * step).rem_euclid(l) as u64).or_default() += 1;
        }
    }

    pub fn size(&self) -> u32 {
        self.counts.values().sum()
    }

    /// Removes the common part of two multisets, returning how many roots
    /// were cancelled from each.
    pub fn cancel(&mut self, other: &mut RootMultiset) -> u32 {
        let mut removed = 0;
        for (a, c) in self.counts.iter_mut() {
            if let Some(d) = other.counts.get_mut(a) {
                let m = (*c).min(*d);
                *c -= m;
                *d -= m;
                removed += m;
            }
        }
        self.counts.retain(|_, c| *c > 0);
        other.counts.retain(|_, c| *c > 0);
        removed
    }

    /// Exponents as rationals in (0, 1], with 0 ↦ 1.
    pub fn to_rationals(&self) -> Vec<Rational64> {
        let mut out = Vec::new();
        for (&a, &c) in &self.counts {
            let x = if a == 0 {
                Rational64::one()
            } else {
                Rational64::new(a as i64, self.level as i64)
            };
            out.extend(std::iter::repeat_n(x, c as usize));
        }
        out.sort();
        out
    }
}

/// Numerator and denominator root multisets of a triple before cancellation.
pub fn root_multisets(t: &GammaTriple) -> Result<(RootMultiset, RootMultiset)> {
    t.validate()?;
    let lcm = t.gamma.iter().fold(1i64, |acc, g| acc.lcm(&g.abs()));
    let level = t.n as i64 * lcm;
    let scale = level / t.n as i64;
    let mut num = RootMultiset::new(level as u64);
    let mut den = RootMultiset::new(level as u64);
    for (&g, &d) in t.gamma.iter().zip(&t.delta) {
        let k = g.unsigned_abs();
        if g < 0 {
            num.add_roots_of(k, d * scale);
        } else {
            den.add_roots_of(k, -d * scale);
        }
    }
    Ok((num, den))
}

pub fn params_from_triple(t: &GammaTriple) -> Result<HypergeometricParams> {
    let (mut num, mut den) = root_multisets(t)?;
    num.cancel(&mut den);
    HypergeometricParams::new(num.to_rationals(), den.to_rationals())
}

pub fn triple_from_params(p: &HypergeometricParams) -> Result<GammaTriple> {
    if p.is_empty() {
        return Err(Error::Params(
            "empty parameters have no triple of this shape; use ((-2,1,1),(0,0,N),2N)".into(),
        ));
    }
    let n = p.denominator_lcm();
    let len = p.len();
    let gamma: Vec<i64> = std::iter::repeat_n(-1, len).chain(std::iter::repeat_n(1, len)).collect();
    let delta: Vec<i64> = p
        .alpha
        .iter()
        .map(|a| (a * n).to_integer())
        .chain(p.beta.iter().map(|b| -(b * n).to_integer()))
        .collect();
    GammaTriple::new(gamma, delta, n as u64)
}

/// A triple with Σδ_j ≡ 0 (mod N), available when Σ(α_i - β_i) ∈ ½Z.
pub fn balanced_triple_from_params(p: &HypergeometricParams) -> Result<GammaTriple> {
    let twice = p.defect() * 2;
    if !twice.is_integer() {
        return Err(Error::Params(format!(
            "Σ(α_i - β_i) = {} is not a half integer",
            p.defect()
        )));
    }
    if p.is_empty() {
        return GammaTriple::new(vec![-2, 1, 1], vec![0, 0, 1], 2);
    }
    let n = 2 * p.denominator_lcm();
    let len = p.len();
    let mut gamma: Vec<i64> = std::iter::repeat_n(-1, len).chain(std::iter::repeat_n(1, len)).collect();
    let mut delta: Vec<i64> = p
        .alpha
        .iter()
        .map(|a| (a * n).to_integer())
        .chain(p.beta.iter().map(|b| -(b * n).to_integer()))
        .collect();
    let sum: i64 = delta.iter().sum();
    if sum.rem_euclid(n) != 0 {
        // The sum is an odd multiple of N/2; the empty triple
        // ((-2,1,1),(0,0,N/2),N) shifts it by N/2.
        gamma.extend([-2, 1, 1]);
        delta.extend([0, 0, n / 2]);
    }
    GammaTriple::new(gamma, delta, n as u64)
}

pub fn minors_gcd(gamma: &[i64], delta: &[i64]) -> i64 {
    let mut g = 0i64;
    for i in 0..gamma.len() {
        for j in i + 1..gamma.len() {
            g = g.gcd(&(gamma[i] * delta[j] - gamma[j] * delta[i]));
        }
    }
    g
}

/// Divides δ by its content and, if needed, appends (1,-1)/(0,0) so that
/// the 2×2 minors of [γ; δ] are coprime. Returns the new triple and the
/// factor k such that (γ', kδ', N) represents the input parameters.
pub fn normalize_minors(t: &GammaTriple) -> Result<(GammaTriple, u64)> {
    t.validate()?;
    let content = t.delta.iter().fold(0i64, |a, &b| a.gcd(&b));
    if content == 0 {
        return Err(Error::Triple("delta is zero; nothing to normalize".into()));
    }
    let mut gamma = t.gamma.clone();
    let mut delta: Vec<i64> = t.delta.iter().map(|d| d / content).collect();
    if minors_gcd(&gamma, &delta) != 1 {
        gamma.extend([1, -1]);
        delta.extend([0, 0]);
    }
    debug_assert_eq!(minors_gcd(&gamma, &delta), 1);
    let k = content.rem_euclid(t.n as i64) as u64;
    Ok((GammaTriple::new(gamma, delta, t.n)?, k))
}

/// Multiplicity of e^{2πi m/(q-1)} as a common root of numerator and
/// denominator.
pub fn s_delta(t: &GammaTriple, q: u64, m: i64) -> Result<u32> {
    let n = q - 1;
    let sd = t.scaled_delta(n)?;
    let nn = n as i128;
    let (mut neg, mut pos) = (0u32, 0u32);
    for (&g, &d) in t.gamma.iter().zip(&sd) {
        if (g as i128 * m as i128 + d as i128).rem_euclid(nn).is_zero() {
            if g < 0 {
                neg += 1;
            } else {
                pos += 1;
            }
        }
    }
    Ok(neg.min(pos))
}

pub fn eta_delta(t: &GammaTriple, q: u64, m: i64) -> Result<u32> {
    Ok((s_delta(t, q, m)? >= 1) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn params(a: &[(i64, i64)], b: &[(i64, i64)]) -> HypergeometricParams {
        HypergeometricParams::new(a.iter().map(|&(x, y)| r(x, y)).collect(), b.iter().map(|&(x, y)| r(x, y)).collect())
            .unwrap()
    }

    #[test]
    fn validation() {
        let t = GammaTriple::new(vec![-3, 1, 1, 1], vec![0; 4], 1).unwrap();
        assert_eq!(t.validate().unwrap(), (1, 3));
        assert!(GammaTriple::new(vec![-1, 1, 1], vec![0; 3], 1).is_err());
        assert!(GammaTriple::new(vec![-2, 0, 1, 1], vec![0; 4], 1).is_err());
        assert!(GammaTriple::new(vec![-2, 2], vec![0; 2], 1).is_err());
        assert!(GammaTriple::new(vec![-2, 1, 1], vec![0; 3], 0).is_err());
    }

    #[test]
    fn parameter_examples() {
        let third = params(&[(1, 3), (2, 3)], &[(1, 1), (1, 1)]);
        let t1 = GammaTriple::new(vec![-3, 1, 1, 1], vec![0; 4], 1).unwrap();
        let t2 = GammaTriple::new(vec![-1, -1, 1, 1], vec![1, -1, 0, 0], 3).unwrap();
        assert_eq!(params_from_triple(&t1).unwrap(), third);
        assert_eq!(params_from_triple(&t2).unwrap(), third);
        let t4 = GammaTriple::new(vec![-4, 1, 1, 1, 1], vec![0; 5], 4).unwrap();
        assert_eq!(
            params_from_triple(&t4).unwrap(),
            params(&[(1, 4), (2, 4), (3, 4)], &[(1, 1), (1, 1), (1, 1)])
        );
        for n in 1..6 {
            let e = GammaTriple::new(vec![-2, 1, 1], vec![0, 0, n], 2 * n as u64).unwrap();
            assert!(params_from_triple(&e).unwrap().is_empty());
        }
    }

    #[test]
    fn round_trips() {
        let cases = [
            params(&[(1, 3), (2, 3)], &[(1, 1), (1, 1)]),
            params(&[(1, 5)], &[(1, 2)]),
            params(&[(1, 4), (3, 4)], &[(1, 2), (1, 1)]),
            params(&[(1, 6), (1, 2), (5, 6)], &[(1, 3), (2, 3), (1, 1)]),
        ];
        for p in &cases {
            assert_eq!(&params_from_triple(&triple_from_params(p).unwrap()).unwrap(), p);
            if !(p.defect() * 2).is_integer() {
                assert!(balanced_triple_from_params(p).is_err());
                continue;
            }
            let b = balanced_triple_from_params(p).unwrap();
            assert_eq!(b.delta.iter().sum::<i64>().rem_euclid(b.n as i64), 0);
            assert_eq!(&params_from_triple(&b).unwrap(), p);
        }
        assert!(balanced_triple_from_params(&params(&[(1, 3)], &[(1, 1)])).is_err());
        assert!(triple_from_params(&HypergeometricParams::empty()).is_err());
    }

    #[test]
    fn minors_normalization() {
        let t = GammaTriple::new(vec![-1, -1, 1, 1], vec![2, -2, 0, 0], 3).unwrap();
        let (n, k) = normalize_minors(&t).unwrap();
        assert_eq!(minors_gcd(&n.gamma, &n.delta), 1);
        let scaled = GammaTriple::new(n.gamma.clone(), n.delta.iter().map(|d| d * k as i64).collect(), n.n).unwrap();
        assert_eq!(params_from_triple(&scaled).unwrap(), params_from_triple(&t).unwrap());
        assert!(normalize_minors(&GammaTriple::new(vec![-2, 1, 1], vec![0; 3], 1).unwrap()).is_err());
    }

    #[test]
    fn s_delta_examples() {
        let t = GammaTriple::new(vec![-3, 1, 1, 1], vec![0; 4], 1).unwrap();
        assert_eq!(s_delta(&t, 7, 0).unwrap(), 1);
        let t = GammaTriple::new(vec![-1, -1, 1, 1], vec![0; 4], 1).unwrap();
        assert_eq!(s_delta(&t, 7, 0).unwrap(), 2);
        let t = GammaTriple::new(vec![-1, -1, 1, 1], vec![1, -1, 0, 0], 3).unwrap();
        assert!(s_delta(&t, 6, 0).is_err());
        assert_eq!(eta_delta(&t, 7, 0).unwrap(), 0);
        assert!((0..6).all(|m| s_delta(&t, 7, m).unwrap() == 0));
    }

    #[test]
    fn s_delta_symmetric_over_q() {
        for gamma in [vec![-3, 1, 1, 1], vec![-2, -2, 1, 3], vec![-6, 2, 3, 1]] {
            let t = GammaTriple::new(gamma, vec![0; 4], 1).unwrap();
            for q in [7u64, 13, 25, 31] {
                for m in 0..(q as i64 - 1) {
                    assert_eq!(s_delta(&t, q, m).unwrap(), s_delta(&t, q, -m).unwrap());
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn triple_strategy() -> impl Strategy<Value = GammaTriple> {
            (proptest::collection::vec(1i64..5, 1..3), proptest::collection::vec(1i64..5, 1..3), 1u64..7)
                .prop_filter_map("balanced gamma", |(neg, pos, n)| {
                    let sn: i64 = neg.iter().sum();
                    let sp: i64 = pos.iter().sum();
                    let mut gamma: Vec<i64> = neg.iter().map(|x| -x).collect();
                    gamma.extend(pos.iter().copied());
                    if sn != sp {
                        gamma.push(sn - sp);
                    }
                    Some((gamma, n))
                })
                .prop_flat_map(|(gamma, n)| {
                    let len = gamma.len();
                    (Just(gamma), proptest::collection::vec(-6i64..7, len), Just(n))
                })
                .prop_filter_map("valid triple", |(g, d, n)| GammaTriple::new(g, d, n).ok())
        }

        proptest! {
            #[test]
            fn cancellation_conserves_degree(t in triple_strategy()) {
                let (mut num, mut den) = root_multisets(&t).unwrap();
                let total: i64 = t.gamma.iter().filter(|&&g| g < 0).map(|g| -g).sum();
                let removed = num.cancel(&mut den);
                let p = params_from_triple(&t).unwrap();
                prop_assert_eq!(total - removed as i64, p.len() as i64);
            }

            #[test]
            fn scaling_delta_and_n(t in triple_strategy(), k in 1u64..5) {
                let s = GammaTriple::new(t.gamma.clone(), t.delta.iter().map(|d| d * k as i64).collect(), t.n * k).unwrap();
                prop_assert_eq!(params_from_triple(&t).unwrap(), params_from_triple(&s).unwrap());
            }

            #[test]
            fn balanced_sum_gives_half_integer(t in triple_strategy()) {
                if t.delta.iter().sum::<i64>().rem_euclid(t.n as i64) == 0 {
                    let p = params_from_triple(&t).unwrap();
                    prop_assert!((p.defect() * 2).is_integer());
                }
            }

            #[test]
            fn s_delta_bounded(t in triple_strategy(), m in -30i64..30) {
                let (r, s) = t.signs();
                let q = t.n * 6 + 1;
                if let Ok(v) = s_delta(&t, q, m) {
                    prop_assert!(v as usize <= r.min(s));
                }
            }
        }
    }
}
