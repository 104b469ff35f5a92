//! Closed-form point counts.
//!
//! With c = -mγ + δ(λ) running over the solutions of M·c ≡ 0 (mod q-1),
//! write G_{m,λ} = g(c) χ^m(t) χ^{-λ}(σ). The count of the face
//! restriction that drops the monomials in S is
//!
//!   q·#V(f|_S) = (q-1)^d + (-1)^{|S|} (q-1)^{|S|-1} Σ_{λ,m} [c_S ≡ 0] G_{m,λ},
//!
//! and every compactification count is assembled from these.

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, GaussTable, KahanSum};
use crate::gammatriple::{minors_gcd, params_from_triple, s_delta, GammaTriple, HypergeometricParams};
use crate::hypersum::{f_classical, f_triple, gamma_power, serialize_complex};
use crate::toric::GaleData;

pub const RESIDUAL_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionTerm {
    pub lambda: Vec<u64>,
    pub delta: Vec<i64>,
    pub triple: GammaTriple,
    pub params: HypergeometricParams,
    /// q^{s_δ(0)-1} g(δ).
    #[serde(serialize_with = "serialize_complex")]
    pub prefactor: Complex64,
    /// χ^{-λ}(σ).
    #[serde(serialize_with = "serialize_complex")]
    pub character: Complex64,
    #[serde(serialize_with = "serialize_complex")]
    pub value: Complex64,
}

impl DecompositionTerm {
    /// The term's contribution -χ^{-λ}(σ) q^{s_δ(0)-1} g(δ) F.
    pub fn contribution(&self) -> Complex64 {
        -self.character * self.prefactor * self.value
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountResult {
    #[serde(serialize_with = "serialize_complex")]
    pub raw: Complex64,
    pub rounded: u64,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<DecompositionTerm>>,
}

impl CountResult {
    fn new(raw: Complex64, decomposition: Option<Vec<DecompositionTerm>>) -> Result<Self> {
        let rounded = raw.re.round();
        let residual = (raw - Complex64::new(rounded, 0.0)).norm();
        if residual.is_nan() || residual >= RESIDUAL_TOLERANCE {
            return Err(Error::Residual { re: raw.re, im: raw.im, residual });
        }
        if rounded < 0.0 {
            return Err(Error::Integrality(format!("negative count {rounded}")));
        }
        Ok(CountResult { raw, rounded: rounded as u64, residual, decomposition })
    }
}

fn binom(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

fn ipow(b: i128, e: usize) -> i128 {
    b.pow(e as u32)
}

/// (q^{r+s-1}-1)/(q-1) + (q-1)^{r+s-2} - q^{r-1}(q-1)^{s-1} - q^{s-1}(q-1)^{r-1}.
pub fn polynomial_compact_i(r: usize, s: usize, q: u64) -> i128 {
    let q = q as i128;
    let n = q - 1;
    let geom: i128 = (0..r + s - 1).map(|k| ipow(q, k)).sum();
    geom + ipow(n, r + s - 2) - ipow(q, r - 1) * ipow(n, s - 1) - ipow(q, s - 1) * ipow(n, r - 1)
}

/// Σ_{k<min(r,s)} C(r-1,k) C(s-1,k) (q^{d-k} - q^k)/(q-1), with d = r+s-2.
pub fn polynomial_compact_ii(r: usize, s: usize, q: u64) -> i128 {
    let q = q as i128;
    let d = r + s - 2;
    (0..r.min(s))
        .map(|k| binom(r - 1, k) * binom(s - 1, k) * (k..d - k).map(|e| ipow(q, e)).sum::<i128>())
        .sum()
}

/// Polynomial part of the hypergeometric form for the shapes that have one.
pub fn shape_polynomial(r: usize, s: usize, q: u64) -> Option<i128> {
    let (a, b) = (r.min(s), r.max(s));
    let q = q as i128;
    match (a, b) {
        (1, _) => Some((0..r + s - 2).map(|k| ipow(q, k)).sum()),
        (2, 2) => Some(q + 1),
        (2, 3) => Some(q * q + 3 * q + 1),
        _ => None,
    }
}

struct Cell {
    g: Complex64,
    zeros: u32,
}

/// G_{m,λ} and the zero pattern of c for every (λ, m).
struct Grid {
    cells: Vec<Vec<Cell>>,
}

fn check_table(g: &GaleData, gt: &GaussTable) -> Result<()> {
    if gt.field() != &g.field {
        return Err(Error::Domain("Gauss table and hypersurface use different fields".into()));
    }
    Ok(())
}

fn lambda_character(g: &GaleData, gt: &GaussTable, lambda: &[u64]) -> Complex64 {
    let ct = gt.ct();
    let e: i64 = lambda
        .iter()
        .zip(&g.sigma)
        .map(|(&l, &s)| l as i64 * ct.dlog(s).expect("σ is nonzero") as i64)
        .sum();
    ct.zeta_n(-e)
}

fn build_grid(g: &GaleData, gt: &GaussTable) -> Result<Grid> {
    check_table(g, gt)?;
    let n = gt.n() as i64;
    let ct = gt.ct();
    let lt = ct.dlog(g.t).expect("t is nonzero") as i64;
    let lambdas = g.lambda_set()?;
    let cells = lambdas
        .iter()
        .map(|entry| {
            let chi = lambda_character(g, gt, &entry.lambda);
            (0..n)
                .map(|m| {
                    let mut zeros = 0u32;
                    let mut prod = Complex64::new(1.0, 0.0);
                    for (j, (&gj, &dj)) in g.gamma.iter().zip(&entry.delta).enumerate() {
                        let c = (-m * gj + dj as i64).rem_euclid(n);
                        if c == 0 {
                            zeros |= 1 << j;
                        }
                        prod *= gt.gauss(c);
                    }
                    Cell { g: prod * ct.zeta_n(m * lt) * chi, zeros }
                })
                .collect()
        })
        .collect();
    Ok(Grid { cells })
}

impl Grid {
    fn stratum_sum(&self, mask: u32) -> Complex64 {
        let mut acc = KahanSum::new();
        for row in &self.cells {
            for cell in row {
                if cell.zeros & mask == mask {
                    acc.add(cell.g);
                }
            }
        }
        acc.value()
    }
}

fn mask_of(s: &[usize]) -> u32 {
    s.iter().fold(0, |m, &j| m | 1 << j)
}

fn stratum_raw(g: &GaleData, grid: &Grid, s: &[usize]) -> Complex64 {
    let q = g.q() as f64;
    let n = q - 1.0;
    let sign = if s.len().is_multiple_of(2) { 1.0 } else { -1.0 };
    let main = n.powi(g.d as i32);
    let scale = sign * n.powi(s.len() as i32 - 1);
    (Complex64::new(main, 0.0) + grid.stratum_sum(mask_of(s)) * scale) / q
}

/// #V(f|_S): points of the torus on which the monomials outside S sum to 0.
pub fn count_stratum(g: &GaleData, gt: &GaussTable, s: &[usize]) -> Result<CountResult> {
    let grid = build_grid(g, gt)?;
    CountResult::new(stratum_raw(g, &grid, s), None)
}

/// Per-λ hypergeometric terms -χ^{-λ}(σ) q^{s(0)-1} g(δ(λ)) F_q(γ, δ(λ), q-1 | t/γ^γ).
pub fn hypergeometric_terms(g: &GaleData, gt: &GaussTable) -> Result<Vec<DecompositionTerm>> {
    check_table(g, gt)?;
    let field = gt.field();
    let q = gt.q();
    let n = gt.n();
    let x = field.mul(g.t, field.inv(gamma_power(&g.gamma, field)?)?);
    g.lambda_set()?
        .into_iter()
        .map(|entry| {
            let delta: Vec<i64> = entry.delta.iter().map(|&v| v as i64).collect();
            let triple = g.triple(delta.clone(), n)?;
            let s0 = s_delta(&triple, q, 0)? as i32;
            let prefactor = gt.gauss_vec(&delta) * (q as f64).powi(s0 - 1);
            Ok(DecompositionTerm {
                character: lambda_character(g, gt, &entry.lambda),
                value: f_triple(&triple, gt, x)?,
                params: params_from_triple(&triple)?,
                lambda: entry.lambda,
                delta,
                triple,
                prefactor,
            })
        })
        .collect()
}

fn sum_contributions(terms: &[DecompositionTerm]) -> Complex64 {
    let mut acc = KahanSum::new();
    for t in terms {
        acc.add(t.contribution());
    }
    acc.value()
}

/// Closure in the toric variety of the Newton polytope. When the shape
/// admits a hypergeometric form, it is evaluated too and must agree.
pub fn count_compact_i(g: &GaleData, gt: &GaussTable) -> Result<CountResult> {
    let grid = build_grid(g, gt)?;
    let q = g.q() as f64;
    let n = q - 1.0;
    let neg = (1u32 << g.r) - 1;
    let mut acc = KahanSum::new();
    for row in &grid.cells {
        for cell in row {
            let eta = cell.zeros & neg != 0 && cell.zeros & !neg != 0;
            let w = if eta { 1.0 } else { 1.0 / q };
            acc.add(cell.g * w);
        }
    }
    let poly = polynomial_compact_i(g.r, g.s, g.q()) as f64;
    let raw = Complex64::new(poly, 0.0) + acc.value() / n;
    let coprime = gamma_power(&g.gamma, &g.field).is_ok();
    let decomposition = match shape_polynomial(g.r, g.s, g.q()) {
        Some(p) if coprime => {
            let terms = hypergeometric_terms(g, gt)?;
            let alt = Complex64::new(p as f64, 0.0) + sum_contributions(&terms);
            if (alt - raw).norm() >= RESIDUAL_TOLERANCE {
                return Err(Error::Mismatch(format!(
                    "compactification I: {raw} vs hypergeometric form {alt}"
                )));
            }
            Some(terms)
        }
        _ => None,
    };
    CountResult::new(raw, decomposition)
}

/// Compactification I as the sum of its face strata, each evaluated
/// separately and required to be integral.
pub fn count_compact_i_stratified(g: &GaleData, gt: &GaussTable) -> Result<CountResult> {
    let grid = build_grid(g, gt)?;
    let n = g.q() as f64 - 1.0;
    let mut total = CountResult::new(stratum_raw(g, &grid, &[]), None)?.raw;
    for face in g.faces() {
        let part = stratum_raw(g, &grid, &face.s) / n.powi(face.s.len() as i32 - 1);
        total += CountResult::new(part, None)?.raw;
    }
    CountResult::new(total, None)
}

/// Closure in the staircase toric variety.
pub fn count_compact_ii(g: &GaleData, gt: &GaussTable) -> Result<CountResult> {
    let terms = hypergeometric_terms(g, gt)?;
    let poly = polynomial_compact_ii(g.r, g.s, g.q()) as f64;
    let raw = Complex64::new(poly, 0.0) + sum_contributions(&terms);
    CountResult::new(raw, Some(terms))
}

/// Compactification II as the sum over staircase cones.
pub fn count_compact_ii_stratified(g: &GaleData, gt: &GaussTable) -> Result<CountResult> {
    let grid = build_grid(g, gt)?;
    let n = g.q() as f64 - 1.0;
    let mut total = Complex64::new(0.0, 0.0);
    for cone in g.staircase_fan() {
        let part = stratum_raw(g, &grid, &cone.support) / n.powi(cone.len() as i32);
        total += CountResult::new(part, None)?.raw;
    }
    CountResult::new(total, None)
}

/// The primitive specialization: polynomial + (-1)^{r+s-1} q^{min(r,s)-1} F_q(γ, 0, q-1 | t/γ^γ).
pub fn primitive_form(g: &GaleData, gt: &GaussTable) -> Result<CountResult> {
    check_table(g, gt)?;
    if g.degree != 1 {
        return Err(Error::Domain("the primitive form needs a primitive hypersurface".into()));
    }
    let field = gt.field();
    let x = field.mul(g.t, field.inv(gamma_power(&g.gamma, field)?)?);
    let triple = g.triple(vec![0; g.d + 2], 1)?;
    let f = f_triple(&triple, gt, x)?;
    let sign = if (g.r + g.s) % 2 == 1 { 1.0 } else { -1.0 };
    let poly = polynomial_compact_ii(g.r, g.s, g.q()) as f64;
    let raw = Complex64::new(poly, 0.0) + f * sign * (g.q() as f64).powi(g.r.min(g.s) as i32 - 1);
    CountResult::new(raw, None)
}

/// Compactified cyclic cover attached to a gamma triple with coprime
/// maximal minors.
pub fn count_cyclic_cover(triple: &GammaTriple, gt: &GaussTable, tval: FieldElement) -> Result<CountResult> {
    let (r, s) = triple.validate()?;
    if minors_gcd(&triple.gamma, &triple.delta) != 1 {
        return Err(Error::Domain(
            "maximal minors of [γ; δ] are not coprime; normalize the triple first".into(),
        ));
    }
    if triple.delta.iter().sum::<i64>() != 0 {
        return Err(Error::Domain("cyclic covers need Σδ_j = 0".into()));
    }
    let field = gt.field();
    let q = gt.q();
    let n = gt.n();
    if !n.is_multiple_of(triple.n) {
        return Err(Error::Domain(format!("N = {} does not divide q-1 = {n}", triple.n)));
    }
    if tval.is_zero() {
        return Err(Error::Domain("t must be nonzero".into()));
    }
    let x = field.mul(tval, field.inv(gamma_power(&triple.gamma, field)?)?);
    let terms = (0..triple.n)
        .map(|j| {
            let delta: Vec<i64> = triple.delta.iter().map(|&v| v * j as i64).collect();
            let tj = GammaTriple::new(triple.gamma.clone(), delta.clone(), triple.n)?;
            let s0 = s_delta(&tj, q, 0)? as i32;
            let prefactor = gt.gauss_vec(&tj.scaled_delta(n)?) * (q as f64).powi(s0 - 1);
            Ok(DecompositionTerm {
                lambda: vec![j],
                value: f_triple(&tj, gt, x)?,
                params: params_from_triple(&tj)?,
                delta,
                triple: tj,
                prefactor,
                character: Complex64::new(1.0, 0.0),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let poly = polynomial_compact_ii(r, s, q) as f64;
    CountResult::new(Complex64::new(poly, 0.0) + sum_contributions(&terms), Some(terms))
}

#[derive(Clone, Debug, Serialize)]
pub struct DworkSpec {
    pub d: usize,
    pub q: u64,
    pub u: FieldElement,
    pub e: u64,
}

impl DworkSpec {
    pub fn new(d: usize, gt: &GaussTable, u: FieldElement) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain("the Dwork family needs d ≥ 2".into()));
        }
        let q = gt.q();
        if (gt.field().p() as u64).gcd(&(d as u64 + 1)) != 1 {
            return Err(Error::Domain(format!("gcd(q, d+1) ≠ 1 for q = {q}, d = {d}")));
        }
        if u.is_zero() || u.0 as u64 >= q {
            return Err(Error::Domain("u must be a nonzero field element".into()));
        }
        Ok(DworkSpec { d, q, u, e: gt.n().gcd(&(d as u64 + 1)) })
    }

    /// γ = (-(d+1), 1, …, 1).
    pub fn gamma(&self) -> Vec<i64> {
        let mut g = vec![1i64; self.d + 2];
        g[0] = -(self.d as i64 + 1);
        g
    }

    /// δ(λ) = (0, λ_1, …, λ_{d-1}, -Σλ_i, 0) for λ ∈ (Z/e)^{d-1}.
    pub fn deltas(&self) -> Vec<(Vec<u64>, Vec<i64>)> {
        let k = self.d - 1;
        let total = self.e.pow(k as u32);
        (0..total)
            .map(|idx| {
                let mut rest = idx;
                let mut lambda = vec![0u64; k];
                for l in lambda.iter_mut().rev() {
                    *l = rest % self.e;
                    rest /= self.e;
                }
                let mut delta = vec![0i64; self.d + 2];
                for (i, &l) in lambda.iter().enumerate() {
                    delta[i + 1] = l as i64;
                }
                delta[self.d] = -(lambda.iter().sum::<u64>() as i64);
                (lambda, delta)
            })
            .collect()
    }
}

/// Projective Dwork hypersurface via the sum over (Z/e)^{d-1}.
pub fn dwork_count(spec: &DworkSpec, gt: &GaussTable) -> Result<CountResult> {
    let field = gt.field();
    let (q, n) = (gt.q(), gt.n());
    if spec.q != q {
        return Err(Error::Domain("Gauss table does not match the Dwork field".into()));
    }
    let x = field.pow(spec.u, spec.d as u64 + 1);
    let gamma = spec.gamma();
    let terms = spec
        .deltas()
        .into_iter()
        .map(|(lambda, delta)| {
            let triple = GammaTriple::new(gamma.clone(), delta.clone(), spec.e)?;
            let s0 = s_delta(&triple, q, 0)? as i32;
            let prefactor = gt.gauss_vec(&triple.scaled_delta(n)?) * (q as f64).powi(s0 - 1);
            Ok(DecompositionTerm {
                value: f_triple(&triple, gt, x)?,
                params: params_from_triple(&triple)?,
                lambda,
                delta,
                triple,
                prefactor,
                character: Complex64::new(1.0, 0.0),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let poly: i128 = (0..spec.d).map(|k| ipow(q as i128, k)).sum();
    CountResult::new(Complex64::new(poly as f64, 0.0) + sum_contributions(&terms), Some(terms))
}

/// Decomposition terms grouped by their hypergeometric parameters.
pub fn parameter_classes(terms: &[DecompositionTerm]) -> Vec<(HypergeometricParams, u64)> {
    let mut out: Vec<(HypergeometricParams, u64)> = Vec::new();
    for t in terms {
        match out.iter_mut().find(|(p, _)| p == &t.params) {
            Some((_, k)) => *k += 1,
            None => out.push((t.params.clone(), 1)),
        }
    }
    out
}

/// Exact check of the two binomial identities for given r, s, q.
pub fn binomial_identities_check(r: usize, s: usize, q: u64) -> Result<()> {
    if r == 0 || s == 0 {
        return Err(Error::Domain("r and s must be positive".into()));
    }
    let q = q as i128;
    let inner = |k: usize| -> i128 { (1..k).map(|a| binom(r, a) * binom(s, k - a)).sum() };
    let alt: i128 = (2..=r + s).map(|k| if k % 2 == 0 { inner(k) } else { -inner(k) }).sum();
    let weighted: i128 = (2..=r + s).map(|k| ipow(q - 1, r + s - k) * inner(k)).sum();
    let expected = (ipow(q, r) - ipow(q - 1, r)) * (ipow(q, s) - ipow(q - 1, s));
    if alt != 1 {
        return Err(Error::Mismatch(format!("alternating sum is {alt} for r = {r}, s = {s}")));
    }
    if weighted != expected {
        return Err(Error::Mismatch(format!("weighted sum {weighted} ≠ {expected}")));
    }
    Ok(())
}

/// Residuals of the two reflection identities relating F((1/4);(3/4)) and
/// F((3/4);(1/4)) to F((1/2);(1)) for q ≡ 1 mod 4.
pub fn reflection_residuals(gt: &GaussTable, u: FieldElement) -> Result<(f64, f64)> {
    let n = gt.n() as i64;
    if n % 4 != 0 {
        return Err(Error::Domain("needs q ≡ 1 mod 4".into()));
    }
    let field = gt.field();
    let x = field.pow(u, 4);
    let p = |a: &str, b: &str| HypergeometricParams::parse(a, b);
    let half = f_classical(&p("1/2", "1")?, gt, x)?;
    let sign = gt.ct().chi(n / 4, field.neg(FieldElement::ONE))?;
    let g2 = gt.gauss(n / 2);
    let rhs48 = -sign * g2 / (gt.gauss(n / 4) * gt.gauss(n / 4)) * half;
    let rhs49 = -sign * g2 / (gt.gauss(-n / 4) * gt.gauss(-n / 4)) * half;
    let lhs48 = f_classical(&p("1/4", "3/4")?, gt, x)?;
    let lhs49 = f_classical(&p("3/4", "1/4")?, gt, x)?;
    Ok(((lhs48 - rhs48).norm(), (lhs49 - rhs49).norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{field_of_size, CharacterTable};
    use crate::oracle::{bf_compact_i, bf_compact_ii, bf_projective_dwork, face_counts, OracleConfig};
    use crate::toric::{analyze, dwork_hypersurface, primitive_from_gamma};

    fn table(q: u64) -> GaussTable {
        GaussTable::for_field(&field_of_size(q).unwrap()).unwrap()
    }

    #[test]
    fn polynomials() {
        assert_eq!(polynomial_compact_i(2, 2, 7), 7 + 2);
        assert_eq!(polynomial_compact_ii(2, 2, 7), 8);
        assert_eq!(polynomial_compact_ii(1, 4, 5), 31);
        assert_eq!(polynomial_compact_ii(2, 3, 5), 25 + 15 + 1);
        assert_eq!(shape_polynomial(2, 3, 5), Some(41));
        assert_eq!(shape_polynomial(3, 3, 5), None);
    }

    #[test]
    fn binomial_identities_small() {
        for r in 1..5 {
            for s in 1..5 {
                binomial_identities_check(r, s, 7).unwrap();
            }
        }
    }

    #[test]
    fn strata_match_oracle() {
        let cfg = OracleConfig::default();
        for q in [5u64, 7, 8, 9] {
            let gt = table(q);
            let f = gt.field().clone();
            let h = primitive_from_gamma(&f, &[-2, -1, 1, 2], vec![FieldElement(1), FieldElement(2), FieldElement(3), FieldElement(1)]).unwrap();
            let g = analyze(&h).unwrap();
            let bf = face_counts(&g.hypersurface(), &cfg).unwrap();
            for face in g.faces() {
                assert_eq!(count_stratum(&g, &gt, &face.s).unwrap().rounded, bf.get(&face.s), "q = {q}, S = {:?}", face.s);
            }
            assert_eq!(count_stratum(&g, &gt, &[]).unwrap().rounded, bf.torus());
        }
    }

    #[test]
    fn dwork_all_paths_agree() {
        let cfg = OracleConfig::default();
        for q in [5u64, 7, 13] {
            let gt = table(q);
            let f = gt.field().clone();
            for u in 1..q as u32 {
                let u = FieldElement(u);
                let spec = DworkSpec::new(2, &gt, u).unwrap();
                let direct = dwork_count(&spec, &gt).unwrap().rounded;
                let g = analyze(&dwork_hypersurface(&f, 2, u).unwrap()).unwrap();
                let c1 = count_compact_i(&g, &gt).unwrap().rounded;
                let strat = count_compact_i_stratified(&g, &gt).unwrap().rounded;
                let bf = bf_projective_dwork(&f, 2, u, &cfg).unwrap();
                assert_eq!((direct, c1, strat), (bf, bf, bf), "q = {q}, u = {u:?}");
            }
        }
    }

    #[test]
    fn non_primitive_against_oracle() {
        let cfg = OracleConfig::default();
        for q in [7u64, 9, 13] {
            let gt = table(q);
            let f = gt.field().clone();
            let h = crate::toric::LaurentHypersurface::new(
                &f,
                vec![vec![0, 2, 0, 2], vec![0, 0, 2, 2]],
                vec![FieldElement(1), FieldElement(2), FieldElement(3), FieldElement(1)],
            )
            .unwrap();
            let g = analyze(&h).unwrap();
            assert_eq!(g.degree, 4);
            let c1 = count_compact_i(&g, &gt).unwrap();
            let c2 = count_compact_ii(&g, &gt).unwrap();
            assert_eq!(c1.rounded, bf_compact_i(&h, &cfg).unwrap().total);
            assert_eq!(c2.rounded, bf_compact_ii(&h, &cfg).unwrap().total);
            assert_eq!(c2.rounded, count_compact_ii_stratified(&g, &gt).unwrap().rounded);
        }
    }

    #[test]
    fn primitive_form_agrees() {
        let gt = table(11);
        let f = gt.field().clone();
        let h = primitive_from_gamma(&f, &[-3, 1, 1, 1], vec![FieldElement(2), FieldElement(1), FieldElement(5), FieldElement(1)]).unwrap();
        let g = analyze(&h).unwrap();
        assert_eq!(primitive_form(&g, &gt).unwrap().rounded, count_compact_ii(&g, &gt).unwrap().rounded);
    }

    #[test]
    fn generator_invariance() {
        let f = field_of_size(13).unwrap();
        let h = dwork_hypersurface(&f, 2, FieldElement(3)).unwrap();
        let g = analyze(&h).unwrap();
        let base = count_compact_ii(&g, &table(13)).unwrap().rounded;
        for gen in [2u32, 6, 7, 11] {
            let gt = GaussTable::new(CharacterTable::with_generator(&f, FieldElement(gen)).unwrap());
            assert_eq!(count_compact_ii(&g, &gt).unwrap().rounded, base);
        }
    }

    #[test]
    fn cyclic_cover_at_one() {
        let t = GammaTriple::new(vec![-1, -1, 1, 1], vec![1, -1, 0, 0], 3).unwrap();
        for q in [7u64, 13, 19] {
            let gt = table(q);
            assert_eq!(count_cyclic_cover(&t, &gt, FieldElement::ONE).unwrap().rounded, 2 * q - 1);
        }
    }

    #[test]
    fn dwork_k3_classes() {
        let gt = table(13);
        let spec = DworkSpec::new(3, &gt, FieldElement(2)).unwrap();
        let res = dwork_count(&spec, &gt).unwrap();
        let classes = parameter_classes(res.decomposition.as_ref().unwrap());
        let find = |a: &str, b: &str| {
            let p = HypergeometricParams::parse(a, b).unwrap();
            classes.iter().find(|(c, _)| *c == p).map(|(_, k)| *k)
        };
        assert_eq!(find("1/4,2/4,3/4", "1,1,1"), Some(1));
        assert_eq!(find("1/4,3/4", "1/2,1"), Some(3));
        assert_eq!(find("1/2", "1"), Some(6));
        assert_eq!(find("1/4", "3/4"), Some(3));
        assert_eq!(find("3/4", "1/4"), Some(3));
        assert_eq!(classes.len(), 5);
    }

    #[test]
    fn reflection_identities() {
        let gt = table(13);
        for u in 1..13 {
            let (a, b) = reflection_residuals(&gt, FieldElement(u)).unwrap();
            assert!(a < 1e-9 && b < 1e-9);
        }
    }
}
