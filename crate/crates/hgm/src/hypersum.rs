//! Finite hypergeometric sums.
//!
//! Both definitions are evaluated as F(x) = Σ_m c_m χ^m(s·x) for a fixed
//! coefficient vector c and a shift s ∈ F_q^×, so a single precomputation
//! serves every argument x.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffield::{CharacterTable, FieldDescriptor, FieldElement, GaussTable, KahanSum};
use crate::gammatriple::{
    balanced_triple_from_params, params_from_triple, s_delta, triple_from_params, GammaTriple,
    HypergeometricParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Definition {
    Classical,
    Triple,
}

/// Serializes a complex number as {"re", "im"} with 12 significant digits.
pub fn serialize_complex<S: Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let round = |x: f64| format!("{x:.11e}").parse::<f64>().unwrap_or(x);
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &round(c.re))?;
    st.serialize_field("im", &round(c.im))?;
    st.end()
}

#[derive(Clone, Debug, Serialize)]
pub struct HypergeometricValue {
    #[serde(serialize_with = "serialize_complex")]
    pub value: Complex64,
    pub q: u64,
    pub t: FieldElement,
    pub definition: Definition,
    pub triple: Option<GammaTriple>,
}

/// F(x) = Σ_m coeffs[m] χ^m(shift·x).
#[derive(Clone, Debug)]
pub struct SumCoefficients {
    pub coeffs: Vec<Complex64>,
    pub shift: FieldElement,
}

impl SumCoefficients {
    pub fn eval(&self, ct: &CharacterTable, x: FieldElement) -> Result<Complex64> {
        if x.is_zero() {
            return Err(Error::Domain("hypergeometric sums need t ≠ 0".into()));
        }
        let e = ct.dlog(ct.mul(self.shift, x)).expect("nonzero") as i64;
        let mut acc = KahanSum::new();
        for (m, c) in self.coeffs.iter().enumerate() {
            acc.add(c * ct.zeta_n(m as i64 * e));
        }
        Ok(acc.value())
    }
}

/// γ^γ = Π γ_j^{γ_j} in F_q.
pub fn gamma_power(gamma: &[i64], field: &FieldDescriptor) -> Result<FieldElement> {
    let mut acc = FieldElement::ONE;
    for &g in gamma {
        let base = field.from_int(g);
        if base.is_zero() {
            return Err(Error::Domain(format!(
                "q = {} is not coprime to gamma entry {g}",
                field.q()
            )));
        }
        acc = field.mul(acc, field.pow_signed(base, g)?);
    }
    Ok(acc)
}

/// Checks that the triple sum is defined at q.
pub fn triple_defined_at(t: &GammaTriple, q: u64) -> Result<()> {
    t.validate()?;
    let p = crate::ffield::prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?.0 as i64;
    if let Some(g) = t.gamma.iter().find(|&&g| g % p == 0) {
        return Err(Error::Domain(format!("q = {q} is not coprime to gamma entry {g}")));
    }
    t.scaled_delta(q - 1).map(|_| ())
}

pub fn triple_coefficients(t: &GammaTriple, gt: &GaussTable) -> Result<SumCoefficients> {
    let q = gt.q();
    triple_defined_at(t, q)?;
    let n = gt.n() as i64;
    let sd = t.scaled_delta(n as u64)?;
    let s0 = s_delta(t, q, 0)? as i32;
    let denom = gt.gauss_vec(&sd);
    let scale = 1.0 / (1.0 - q as f64);
    let coeffs = (0..n)
        .map(|m| {
            let args: Vec<i64> = t.gamma.iter().zip(&sd).map(|(&g, &d)| -g * m + d).collect();
            let s = s_delta(t, q, -m).expect("checked") as i32;
            gt.gauss_vec(&args) / denom * (q as f64).powi(s - s0) * scale
        })
        .collect();
    Ok(SumCoefficients { coeffs, shift: gamma_power(&t.gamma, gt.field())? })
}

/// The triple sum F_q(γ, δ, N | x).
pub fn f_triple(t: &GammaTriple, gt: &GaussTable, x: FieldElement) -> Result<Complex64> {
    triple_coefficients(t, gt)?.eval(gt.ct(), x)
}

fn scaled_params(p: &HypergeometricParams, n: u64) -> Result<(Vec<i64>, Vec<i64>)> {
    let conv = |v: &[Rational64]| -> Result<Vec<i64>> {
        v.iter()
            .map(|x| {
                let y = x * n as i64;
                if y.is_integer() {
                    Ok(y.to_integer())
                } else {
                    Err(Error::Domain(format!("(q-1)·{x} is not an integer for q-1 = {n}")))
                }
            })
            .collect()
    };
    Ok((conv(&p.alpha)?, conv(&p.beta)?))
}

pub fn classical_defined_at(p: &HypergeometricParams, q: u64) -> bool {
    scaled_params(p, q - 1).is_ok()
}

pub fn classical_coefficients(p: &HypergeometricParams, gt: &GaussTable) -> Result<SumCoefficients> {
    let n = gt.n() as i64;
    let (a, b) = scaled_params(p, n as u64)?;
    let scale = 1.0 / (1.0 - gt.q() as f64);
    let coeffs = (0..n)
        .map(|m| {
            let mut term = Complex64::new(scale, 0.0);
            for (&ai, &bi) in a.iter().zip(&b) {
                term *= gt.gauss(m + ai) * gt.gauss(-m - bi) / (gt.gauss(ai) * gt.gauss(-bi));
            }
            term
        })
        .collect();
    let field = gt.field();
    let shift = if p.len().is_multiple_of(2) { FieldElement::ONE } else { field.neg(FieldElement::ONE) };
    Ok(SumCoefficients { coeffs, shift })
}

/// The classical sum F_q(α; β | x).
pub fn f_classical(p: &HypergeometricParams, gt: &GaussTable, x: FieldElement) -> Result<Complex64> {
    classical_coefficients(p, gt)?.eval(gt.ct(), x)
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Cyclotomic multiplicities a_d of Π_α (T - e(α)) / Π_β (T - e(β)), if
/// the parameters are stable under Gal(Q̄/Q).
fn cyclotomic_exponents(p: &HypergeometricParams) -> Option<BTreeMap<u64, i64>> {
    let mut out = BTreeMap::new();
    for (list, sign) in [(&p.alpha, 1i64), (&p.beta, -1)] {
        let mut by_den: BTreeMap<u64, BTreeMap<i64, i64>> = BTreeMap::new();
        for x in list {
            let d = x.denom().to_u64()?;
            let k = x.numer() % x.denom();
            *by_den.entry(d).or_default().entry(k).or_default() += 1;
        }
        for (d, counts) in by_den {
            let units: Vec<i64> = (0..d as i64).filter(|k| k.gcd(&(d as i64)) == 1).collect();
            let mult = *counts.values().next()?;
            if counts.len() != units.len() || counts.values().any(|&c| c != mult) {
                return None;
            }
            *out.entry(d).or_insert(0) += sign * mult;
        }
    }
    Some(out)
}

/// The δ = 0 triple of parameters defined over Q, obtained by writing
/// Π_α (T - e(α)) / Π_β (T - e(β)) as a product of (T^k - 1)^{±1}.
pub fn rational_triple_from_params(p: &HypergeometricParams) -> Result<GammaTriple> {
    let a = cyclotomic_exponents(p)
        .ok_or_else(|| Error::Params(format!("{p} is not defined over Q")))?;
    let top = a.keys().copied().max().unwrap_or(1);
    let mut gamma = Vec::new();
    for k in 1..=top {
        let e: i64 = a
            .iter()
            .filter(|(&d, _)| d % k == 0)
            .map(|(&d, &c)| c * mobius(d / k))
            .sum();
        let entry = if e > 0 { -(k as i64) } else { k as i64 };
        gamma.extend(std::iter::repeat_n(entry, e.unsigned_abs() as usize));
    }
    // (T - 1)/(T - 1) restores gcd 1 without changing the parameters.
    if gamma.iter().fold(0i64, |g, &x| g.gcd(&x)) > 1 {
        gamma.extend([-1, 1]);
    }
    gamma.sort();
    let len = gamma.len();
    GammaTriple::new(gamma, vec![0; len], 1)
}

/// Representing triples in order of preference.
pub fn representing_triples(p: &HypergeometricParams) -> Vec<GammaTriple> {
    let mut out = Vec::new();
    if let Ok(t) = rational_triple_from_params(p) {
        out.push(t);
    }
    if let Ok(t) = triple_from_params(p) {
        out.push(t);
    }
    if let Ok(t) = balanced_triple_from_params(p) {
        out.push(t);
    }
    out.retain(|t| params_from_triple(t).as_ref() == Ok(p));
    out
}

/// F_q(α; β | x) with the definition extended through gamma triples.
pub fn f_extended(p: &HypergeometricParams, gt: &GaussTable, x: FieldElement) -> Result<HypergeometricValue> {
    let q = gt.q();
    if classical_defined_at(p, q) {
        return Ok(HypergeometricValue {
            value: f_classical(p, gt, x)?,
            q,
            t: x,
            definition: Definition::Classical,
            triple: None,
        });
    }
    let candidates = representing_triples(p);
    for t in &candidates {
        if triple_defined_at(t, q).is_ok() {
            return Ok(HypergeometricValue {
                value: f_triple(t, gt, x)?,
                q,
                t: x,
                definition: Definition::Triple,
                triple: Some(t.clone()),
            });
        }
    }
    Err(Error::Domain(format!(
        "no implemented representing triple of {p} is defined at q = {q}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::field_of_size;

    fn third() -> HypergeometricParams {
        HypergeometricParams::parse("1/3,2/3", "1,1").unwrap()
    }

    #[test]
    fn empty_parameters() {
        let gt = GaussTable::for_field(&field_of_size(7).unwrap()).unwrap();
        let p = HypergeometricParams::empty();
        for x in 1..7 {
            let v = f_classical(&p, &gt, FieldElement(x)).unwrap();
            let expected = if x == 1 { -1.0 } else { 0.0 };
            assert!((v - Complex64::new(expected, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn special_value_at_one() {
        for q in [7u64, 13, 19] {
            let gt = GaussTable::for_field(&field_of_size(q).unwrap()).unwrap();
            let v = f_classical(&third(), &gt, FieldElement::ONE).unwrap();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-9, "q = {q}: {v}");
        }
    }

    #[test]
    fn classical_independent_of_additive_character() {
        let f = field_of_size(13).unwrap();
        let ct = CharacterTable::new(&f).unwrap();
        let p = HypergeometricParams::parse("1/4,1/3", "1/2,1").unwrap();
        let a = GaussTable::new(ct.clone());
        let b = GaussTable::new(ct.with_additive_twist(FieldElement(7)).unwrap());
        for x in 1..13 {
            let va = f_classical(&p, &a, FieldElement(x)).unwrap();
            let vb = f_classical(&p, &b, FieldElement(x)).unwrap();
            assert!((va - vb).norm() < 1e-9);
        }
    }

    #[test]
    fn triple_matches_classical_on_example() {
        let t = GammaTriple::new(vec![-3, 1, 1, 1], vec![0; 4], 1).unwrap();
        for q in [7u64, 13, 16, 25] {
            let gt = GaussTable::for_field(&field_of_size(q).unwrap()).unwrap();
            for x in 1..q as u32 {
                let a = f_triple(&t, &gt, FieldElement(x)).unwrap();
                let b = f_classical(&third(), &gt, FieldElement(x)).unwrap();
                assert!((a - b).norm() < 1e-8, "q = {q}, x = {x}");
            }
        }
    }

    // δ = 0 gives the gamma-vector form: (1/(1-q)) Σ_m (-1)^{d+2} g(-γm) q^{s(m)-s(0)} χ^m(γ^γ t).
    #[test]
    fn zero_delta_reduces_to_gamma_vector_form() {
        let t = GammaTriple::new(vec![-2, -1, 1, 2], vec![0; 4], 1).unwrap();
        let q = 11u64;
        let gt = GaussTable::for_field(&field_of_size(q).unwrap()).unwrap();
        let ct = gt.ct();
        let gg = gamma_power(&t.gamma, gt.field()).unwrap();
        let s0 = s_delta(&t, q, 0).unwrap() as i32;
        for x in 1..q as u32 {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..10i64 {
                let args: Vec<i64> = t.gamma.iter().map(|g| -g * m).collect();
                let s = s_delta(&t, q, m).unwrap() as i32;
                acc += gt.gauss_vec(&args) * (q as f64).powi(s - s0) * ct.chi(m, ct.mul(gg, FieldElement(x))).unwrap();
            }
            acc /= 1.0 - q as f64;
            let v = f_triple(&t, &gt, FieldElement(x)).unwrap();
            assert!((acc - v).norm() < 1e-9);
        }
    }

    #[test]
    fn rational_triples() {
        let t = rational_triple_from_params(&third()).unwrap();
        assert_eq!(t.gamma, vec![-3, 1, 1, 1]);
        let p = HypergeometricParams::parse("1/4,1/2,3/4", "1,1,1").unwrap();
        assert_eq!(rational_triple_from_params(&p).unwrap().gamma, vec![-4, 1, 1, 1, 1]);
        let p = HypergeometricParams::parse("1/6,5/6", "1/3,2/3").unwrap();
        let t = rational_triple_from_params(&p).unwrap();
        assert_eq!(params_from_triple(&t).unwrap(), p);
        assert!(rational_triple_from_params(&HypergeometricParams::parse("1/3", "1").unwrap()).is_err());
    }

    #[test]
    fn extended_definition() {
        let gt = GaussTable::for_field(&field_of_size(5).unwrap()).unwrap();
        let v = f_extended(&third(), &gt, FieldElement(2)).unwrap();
        assert_eq!(v.definition, Definition::Triple);
        assert_eq!(v.triple.unwrap().gamma, vec![-3, 1, 1, 1]);
        let gt = GaussTable::for_field(&field_of_size(7).unwrap()).unwrap();
        assert_eq!(f_extended(&third(), &gt, FieldElement(2)).unwrap().definition, Definition::Classical);
        let gt = GaussTable::for_field(&field_of_size(9).unwrap()).unwrap();
        assert!(f_extended(&third(), &gt, FieldElement(2)).is_err());
    }

    #[test]
    fn rational_triple_with_even_gamma() {
        let p = HypergeometricParams::parse("1/4,3/4", "1/2,1").unwrap();
        let t = rational_triple_from_params(&p).unwrap();
        assert_eq!(t.gamma, vec![-4, -1, 1, 2, 2]);
        let twisted = GammaTriple::new(vec![-4, 1, 1, 1, 1], vec![0, 0, 1, 1, 0], 2).unwrap();
        let gt = GaussTable::for_field(&field_of_size(13).unwrap()).unwrap();
        for x in 1..13 {
            let x = FieldElement(x);
            let a = f_triple(&t, &gt, x).unwrap();
            let b = f_triple(&twisted, &gt, x).unwrap();
            assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn gamma_power_requires_coprimality() {
        let f = field_of_size(9).unwrap();
        assert!(gamma_power(&[-3, 1, 1, 1], &f).is_err());
        let f = field_of_size(7).unwrap();
        // (-3)^{-3} = -1/27 = -1/6 = 1 in F_7.
        assert_eq!(gamma_power(&[-3, 1, 1, 1], &f).unwrap(), FieldElement(1));
    }
}
