//! Hypersurfaces in the d-torus cut out by d+2 monomials: Gale data, the
//! character set Λ(q), the face lattice of the Newton polytope, its normal
//! fan, and the staircase refinement.
//!
//! All indices are 0-based and refer to the columns after sorting γ, so
//! that columns 0..r carry negative entries and r..r+s positive ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{make_field, ElementRepr, FieldDescriptor, FieldElement};
use crate::gammatriple::GammaTriple;
use crate::hypersum::gamma_power;
use crate::zlinalg::{
    big_to_i64_vec, gale_vector, hnf, i64_to_big_vec, integer_kernel, kernel_basis_with_ones,
    basis_starting_with, modular_nullspace, rational_rank, solve_integer, solve_rational,
    solve_rho, unimodular_inverse, HermiteResult, IntMatrix,
};

#[derive(Clone, Debug)]
pub struct LaurentHypersurface {
    field: FieldDescriptor,
    exponents: Vec<Vec<i64>>,
    coefficients: Vec<FieldElement>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypersurfaceJson {
    pub p: u64,
    pub k: u32,
    pub exponents: Vec<Vec<i64>>,
    pub coefficients: Vec<ElementRepr>,
}

impl LaurentHypersurface {
    /// `exponents` has d rows and d+2 columns; column j is the exponent
    /// vector of the j-th monomial.
    pub fn new(
        field: &FieldDescriptor,
        exponents: Vec<Vec<i64>>,
        coefficients: Vec<FieldElement>,
    ) -> Result<Self> {
        let d = exponents.len();
        if d == 0 {
            return Err(Error::Domain("need at least one variable".into()));
        }
        if exponents.iter().any(|row| row.len() != d + 2) || coefficients.len() != d + 2 {
            return Err(Error::Domain(format!("expected {d} rows of {} exponents and {} coefficients", d + 2, d + 2)));
        }
        if coefficients.iter().any(|c| c.is_zero()) {
            return Err(Error::Domain("coefficients must be nonzero".into()));
        }
        if coefficients.iter().any(|c| c.0 >= field.q()) {
            return Err(Error::Domain("coefficient outside the field".into()));
        }
        let h = LaurentHypersurface { field: field.clone(), exponents, coefficients };
        for a in 0..d + 2 {
            for b in a + 1..d + 2 {
                if h.column(a) == h.column(b) {
                    return Err(Error::Domain(format!("monomials {a} and {b} coincide")));
                }
            }
        }
        if h.matrix().rank() != d + 1 {
            return Err(Error::Domain("exponent vectors lie in an affine hyperplane".into()));
        }
        Ok(h)
    }

    pub fn from_json(j: &HypersurfaceJson) -> Result<Self> {
        let field = make_field(j.p, j.k)?;
        let coeffs = j.coefficients.iter().map(|c| field.from_repr(c)).collect::<Result<Vec<_>>>()?;
        Self::new(&field, j.exponents.clone(), coeffs)
    }

    pub fn to_json(&self) -> HypersurfaceJson {
        HypersurfaceJson {
            p: self.field.p() as u64,
            k: self.field.k(),
            exponents: self.exponents.clone(),
            coefficients: self.coefficients.iter().map(|&c| self.field.to_repr(c)).collect(),
        }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }
    pub fn d(&self) -> usize {
        self.exponents.len()
    }
    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }
    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coefficients
    }
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.exponents.iter().map(|row| row[j]).collect()
    }

    /// M = [1; exponents].
    pub fn matrix(&self) -> IntMatrix {
        let mut rows = vec![vec![1i64; self.d() + 2]];
        rows.extend(self.exponents.iter().cloned());
        IntMatrix::from_rows(&rows)
    }

    /// Same monomials over another field, coefficients reduced from their
    /// integer representatives.
    pub fn with_coefficients(&self, coefficients: Vec<FieldElement>) -> Result<Self> {
        Self::new(&self.field, self.exponents.clone(), coefficients)
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Use -γ instead of the default sign, which has r ≤ s.
    pub flip_gamma: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaleData {
    #[serde(skip)]
    pub field: FieldDescriptor,
    pub d: usize,
    /// perm[new] = original column index.
    pub perm: Vec<usize>,
    pub gamma: Vec<i64>,
    pub r: usize,
    pub s: usize,
    /// Permuted exponent rows and coefficients.
    pub exponents: Vec<Vec<i64>>,
    pub coefficients: Vec<FieldElement>,
    /// Rows 1, f_1, …, f_d.
    pub fbasis: Vec<Vec<i64>>,
    /// Row i holds the coordinates of m_i in f_1..f_d.
    pub coeff: Vec<Vec<i64>>,
    pub nmat: Vec<Vec<i64>>,
    pub rho: Vec<Vec<i64>>,
    pub degree: u64,
    pub t: FieldElement,
    pub sigma: Vec<FieldElement>,
}

pub fn analyze(h: &LaurentHypersurface) -> Result<GaleData> {
    analyze_with(h, &AnalyzeOptions::default())
}

pub fn analyze_with(h: &LaurentHypersurface, opts: &AnalyzeOptions) -> Result<GaleData> {
    let d = h.d();
    let mut gamma0 = gale_vector(&h.matrix())?;
    if gamma0.contains(&0) {
        return Err(Error::Domain(format!(
            "Gale dual {gamma0:?} has a zero entry; such polytopes are not supported"
        )));
    }
    let negatives = gamma0.iter().filter(|&&g| g < 0).count();
    if (2 * negatives > gamma0.len()) != opts.flip_gamma {
        gamma0.iter_mut().for_each(|g| *g = -*g);
    }
    let mut perm: Vec<usize> = (0..d + 2).collect();
    perm.sort_by_key(|&j| (gamma0[j], j));
    let gamma: Vec<i64> = perm.iter().map(|&j| gamma0[j]).collect();
    let exponents: Vec<Vec<i64>> =
        h.exponents.iter().map(|row| perm.iter().map(|&j| row[j]).collect()).collect();
    let coefficients: Vec<FieldElement> = perm.iter().map(|&j| h.coefficients[j]).collect();
    let r = gamma.iter().filter(|&&g| g < 0).count();
    let s = d + 2 - r;

    let f = kernel_basis_with_ones(&gamma)?;
    let ft = f.transpose();
    let mut cprime = Vec::with_capacity(d);
    for row in &exponents {
        let x = solve_integer(&ft, &i64_to_big_vec(row))
            .ok_or_else(|| Error::Linalg("exponent row outside the kernel lattice".into()))?;
        cprime.push(x[1..].to_vec());
    }
    let cprime = IntMatrix::from_big_rows(cprime);
    let HermiteResult { h: nmat, u } = hnf(&cprime.transpose());
    let rho0 = IntMatrix::from_rows(&solve_rho(&f)?);
    let rho = u.mul(&rho0).to_i64_rows()?;
    let uinv_t = unimodular_inverse(&u)?.transpose();
    let frows = IntMatrix::from_big_rows((1..=d).map(|i| f.row(i).to_vec()).collect());
    let ftilde = uinv_t.mul(&frows);
    let mut fbasis = vec![vec![1i64; d + 2]];
    fbasis.extend(ftilde.to_i64_rows()?);
    let degree = nmat.det().abs();
    let degree: u64 = degree
        .try_into()
        .map_err(|_| Error::Linalg("covering degree too large".into()))?;

    let field = h.field.clone();
    let mut g = GaleData {
        field,
        d,
        perm,
        gamma,
        r,
        s,
        exponents,
        coefficients,
        fbasis,
        coeff: nmat.transpose().to_i64_rows()?,
        nmat: nmat.to_i64_rows()?,
        rho,
        degree,
        t: FieldElement::ONE,
        sigma: Vec::new(),
    };
    g.rho = g.rho.iter().map(|row| canonical_mod_gamma(row, &g.gamma)).collect();
    g.refresh_constants()?;
    Ok(g)
}

/// Representative of v + Zγ with least max-norm, ties broken
/// lexicographically.
fn canonical_mod_gamma(v: &[i64], gamma: &[i64]) -> Vec<i64> {
    let bound = 2 * v.iter().map(|x| x.abs()).max().unwrap_or(0) + 1;
    (-bound..=bound)
        .map(|c| v.iter().zip(gamma).map(|(&x, &g)| x + c * g).collect::<Vec<i64>>())
        .min_by(|a, b| {
            let na = a.iter().map(|x| x.abs()).max();
            let nb = b.iter().map(|x| x.abs()).max();
            na.cmp(&nb).then_with(|| a.cmp(b))
        })
        .expect("nonempty range")
}

/// Product Π u_j^{e_j} in the field.
fn monomial_value(field: &FieldDescriptor, u: &[FieldElement], e: &[i64]) -> Result<FieldElement> {
    let mut acc = FieldElement::ONE;
    for (&x, &k) in u.iter().zip(e) {
        acc = field.mul(acc, field.pow_signed(x, k)?);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaEntry {
    pub lambda: Vec<u64>,
    /// δ(λ)_j = Σ_k λ_k ρ_kj mod q-1.
    pub delta: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub s: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StairCone {
    pub pairs: Vec<(usize, usize)>,
    pub support: Vec<usize>,
}

impl StairCone {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity {
    /// Smooth and Δ-regular.
    Smooth,
    /// Exactly this many ordinary double points.
    OrdinaryDoublePoints(u64),
    /// Characteristic divides the covering degree.
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalCone {
    pub rays: Vec<(usize, usize)>,
    pub rank: usize,
    pub extremal: Vec<bool>,
}

impl NormalCone {
    pub fn is_simplicial(&self) -> bool {
        self.extremal.iter().filter(|&&e| e).count() == self.rank
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FanReport {
    pub rays: usize,
    pub faces: usize,
    pub cones_by_dim: Vec<usize>,
    pub normal_fan_simplicial: bool,
    pub staircase_simplicial: bool,
    pub staircase_refines: bool,
}

impl GaleData {
    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn matrix(&self) -> IntMatrix {
        let mut rows = vec![vec![1i64; self.d + 2]];
        rows.extend(self.exponents.iter().cloned());
        IntMatrix::from_rows(&rows)
    }

    pub fn hypersurface(&self) -> LaurentHypersurface {
        LaurentHypersurface {
            field: self.field.clone(),
            exponents: self.exponents.clone(),
            coefficients: self.coefficients.clone(),
        }
    }

    pub fn is_negative(&self, j: usize) -> bool {
        j < self.r
    }

    pub fn triple(&self, delta: Vec<i64>, n: u64) -> Result<GammaTriple> {
        GammaTriple::new(self.gamma.clone(), delta, n)
    }

    fn refresh_constants(&mut self) -> Result<()> {
        self.t = monomial_value(&self.field, &self.coefficients, &self.gamma)?;
        self.sigma = self
            .rho
            .iter()
            .map(|row| monomial_value(&self.field, &self.coefficients, row))
            .collect::<Result<_>>()?;
        Ok(())
    }

    /// Replaces ρ_k by ρ_k + c_k γ.
    pub fn shift_rho(&self, c: &[i64]) -> Result<GaleData> {
        let mut g = self.clone();
        for (row, &ck) in g.rho.iter_mut().zip(c) {
            for (x, &gj) in row.iter_mut().zip(&self.gamma) {
                *x += ck * gj;
            }
        }
        g.refresh_constants()?;
        Ok(g)
    }

    /// γ^γ in F_q.
    pub fn gamma_gamma(&self) -> Result<FieldElement> {
        gamma_power(&self.gamma, &self.field)
    }

    /// Λ(q) together with the twists δ(λ).
    pub fn lambda_set(&self) -> Result<Vec<LambdaEntry>> {
        let n = self.q() - 1;
        let lambdas = modular_nullspace(&IntMatrix::from_rows(&self.nmat), n.max(1))?;
        Ok(lambdas
            .into_iter()
            .map(|lambda| {
                let delta = (0..self.d + 2)
                    .map(|j| {
                        let v: i128 = lambda
                            .iter()
                            .zip(&self.rho)
                            .map(|(&l, row)| l as i128 * row[j] as i128)
                            .sum();
                        v.rem_euclid(n.max(1) as i128) as u64
                    })
                    .collect();
                LambdaEntry { lambda, delta }
            })
            .collect())
    }

    /// Proper faces, indexed by the set S of monomials off the face.
    pub fn faces(&self) -> Vec<Face> {
        let m = self.d + 2;
        let mut out = Vec::new();
        for mask in 1u32..(1 << m) - 1 {
            let s: Vec<usize> = (0..m).filter(|&j| mask >> j & 1 == 1).collect();
            let neg = s.iter().any(|&j| j < self.r);
            let pos = s.iter().any(|&j| j >= self.r);
            if neg && pos {
                out.push(Face { dim: self.d + 1 - s.len(), s });
            }
        }
        out.sort_by(|a, b| a.s.len().cmp(&b.s.len()).then_with(|| a.s.cmp(&b.s)));
        out
    }

    /// Inward normal α^{(i,j)} with (α_0, α)·M = -γ_i e_j + γ_j e_i;
    /// returns (α_0, α).
    pub fn facet_normal(&self, i: usize, j: usize) -> Result<(BigRational, Vec<BigRational>)> {
        if !(i < self.r && self.r <= j && j < self.d + 2) {
            return Err(Error::Domain(format!("({i}, {j}) is not a negative/positive index pair")));
        }
        let mut x = vec![BigInt::zero(); self.d + 2];
        x[j] = BigInt::from(-self.gamma[i]);
        x[i] = BigInt::from(self.gamma[j]);
        let sol = solve_rational(&self.matrix().transpose(), &x)
            .ok_or_else(|| Error::Linalg("facet normal system is inconsistent".into()))?;
        Ok((sol[0].clone(), sol[1..].to_vec()))
    }

    /// All non-maximal staircase sequences, including the empty one.
    pub fn staircase_fan(&self) -> Vec<StairCone> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        while let Some(seq) = stack.pop() {
            let support = support_of(&seq);
            if support.len() < self.d + 2 {
                out.push(StairCone { pairs: seq.clone(), support });
            }
            let (i0, j0) = seq.last().copied().unwrap_or((0, self.r));
            for i in i0..self.r {
                for j in j0..self.d + 2 {
                    if seq.last() == Some(&(i, j)) {
                        continue;
                    }
                    let mut next = seq.clone();
                    next.push((i, j));
                    stack.push(next);
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.pairs.cmp(&b.pairs)));
        out
    }

    /// Normal cone of the face with complement S, with its generating rays.
    pub fn normal_cone(&self, s: &[usize]) -> Result<NormalCone> {
        let rays: Vec<(usize, usize)> = s
            .iter()
            .filter(|&&i| i < self.r)
            .flat_map(|&i| s.iter().filter(|&&j| j >= self.r).map(move |&j| (i, j)))
            .collect();
        let vecs = rays
            .iter()
            .map(|&(i, j)| self.facet_normal(i, j).map(|(_, a)| primitive_integer(&a)))
            .collect::<Result<Vec<_>>>()?;
        let rank = rational_rank(&vecs.iter().map(|v| to_rational(v)).collect::<Vec<_>>());
        let extremal = (0..vecs.len())
            .map(|k| {
                let others: Vec<Vec<BigInt>> =
                    vecs.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, v)| v.clone()).collect();
                !in_cone(&vecs[k], &others)
            })
            .collect();
        Ok(NormalCone { rays, rank, extremal })
    }

    /// Linear independence of the generators of every staircase cone.
    pub fn staircase_is_simplicial(&self) -> Result<bool> {
        for c in self.staircase_fan() {
            let normals = c
                .pairs
                .iter()
                .map(|&(i, j)| self.facet_normal(i, j).map(|(_, a)| a))
                .collect::<Result<Vec<_>>>()?;
            if rational_rank(&normals) != c.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every staircase cone lies in the normal cone of the face F with
    /// S_F = S_C: its generators are rays of σ_F and the corresponding
    /// functionals vanish on F and are nonnegative on Δ.
    pub fn staircase_refines_normal_fan(&self) -> Result<bool> {
        let m = self.matrix();
        for c in self.staircase_fan() {
            if c.is_empty() {
                continue;
            }
            let cone = self.normal_cone(&c.support)?;
            for &(i, j) in &c.pairs {
                if !cone.rays.contains(&(i, j)) {
                    return Ok(false);
                }
                let (a0, a) = self.facet_normal(i, j)?;
                for col in 0..self.d + 2 {
                    let mut v = a0.clone();
                    for (row, ar) in a.iter().enumerate() {
                        v += ar * BigRational::from_integer(m[(row + 1, col)].clone());
                    }
                    let on_face = !c.support.contains(&col);
                    if v.is_negative() || (on_face && !v.is_zero()) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn fan_report(&self) -> Result<FanReport> {
        let faces = self.faces();
        let mut normal_simplicial = true;
        for f in &faces {
            if !self.normal_cone(&f.s)?.is_simplicial() {
                normal_simplicial = false;
                break;
            }
        }
        let fan = self.staircase_fan();
        let mut cones_by_dim = vec![0usize; self.d + 1];
        for c in &fan {
            cones_by_dim[c.len()] += 1;
        }
        Ok(FanReport {
            rays: self.r * self.s,
            faces: faces.len(),
            cones_by_dim,
            normal_fan_simplicial: normal_simplicial,
            staircase_simplicial: self.staircase_is_simplicial()?,
            staircase_refines: self.staircase_refines_normal_fan()?,
        })
    }

    /// Smoothness predicate comparing t with γ^γ.
    pub fn regularity(&self) -> Result<Regularity> {
        if self.degree.gcd(&(self.field.p() as u64)) != 1 {
            return Ok(Regularity::Undetermined);
        }
        if self.gamma.iter().any(|&g| g % self.field.p() as i64 == 0) {
            return Ok(Regularity::Undetermined);
        }
        Ok(if self.t == self.gamma_gamma()? {
            Regularity::OrdinaryDoublePoints(self.degree)
        } else {
            Regularity::Smooth
        })
    }
}

fn support_of(seq: &[(usize, usize)]) -> Vec<usize> {
    let mut s: Vec<usize> = seq.iter().flat_map(|&(i, j)| [i, j]).collect();
    s.sort();
    s.dedup();
    s
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Positive multiple of a rational vector with coprime integer entries.
fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Whether v is a nonnegative combination of `gens`, via Carathéodory:
/// try every linearly independent subset.
fn in_cone(v: &[BigInt], gens: &[Vec<BigInt>]) -> bool {
    let k = gens.len();
    for mask in 0u32..(1 << k) {
        let sub: Vec<&Vec<BigInt>> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| &gens[i]).collect();
        let rat: Vec<Vec<BigRational>> = sub.iter().map(|g| to_rational(g)).collect();
        if rational_rank(&rat) != sub.len() {
            continue;
        }
        let rows: Vec<Vec<BigInt>> =
            (0..v.len()).map(|r| sub.iter().map(|g| g[r].clone()).collect()).collect();
        let a = if sub.is_empty() {
            IntMatrix::zeros(v.len(), 0)
        } else {
            IntMatrix::from_big_rows(rows)
        };
        if let Some(x) = solve_rational(&a, v) {
            if x.iter().all(|c| !c.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// The primitive hypersurface with exponent rows f_1..f_d of the kernel
/// basis of γ.
pub fn primitive_from_gamma(
    field: &FieldDescriptor,
    gamma: &[i64],
    coefficients: Vec<FieldElement>,
) -> Result<LaurentHypersurface> {
    let f = kernel_basis_with_ones(gamma)?.to_i64_rows()?;
    LaurentHypersurface::new(field, f[1..].to_vec(), coefficients)
}

/// Torus part of the Dwork hypersurface Σ x_i^{d+1} + 1 - (d+1)u^{-1} x_1⋯x_d,
/// with monomials ordered (x_1⋯x_d, x_1^{d+1}, …, x_d^{d+1}, 1).
pub fn dwork_hypersurface(field: &FieldDescriptor, d: usize, u: FieldElement) -> Result<LaurentHypersurface> {
    if d < 1 {
        return Err(Error::Domain("Dwork family needs d ≥ 1".into()));
    }
    let e = d as i64 + 1;
    let mut exps = vec![vec![0i64; d + 2]; d];
    for (i, row) in exps.iter_mut().enumerate() {
        row[0] = 1;
        row[i + 1] = e;
    }
    let uinv = field.inv(u)?;
    let lead = field.neg(field.mul(field.from_int(e), uinv));
    if lead.is_zero() {
        return Err(Error::Domain("characteristic divides d+1".into()));
    }
    let mut coeffs = vec![FieldElement::ONE; d + 2];
    coeffs[0] = lead;
    LaurentHypersurface::new(field, exps, coeffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverData {
    pub kappa: Vec<i64>,
    pub f1: Vec<i64>,
    /// Basis (1, f_2, …, f_d) of ker G.
    pub kernel: Vec<Vec<i64>>,
}

/// The torus hypersurface Σ_j t^{κ_j} z^{N f_1j} Π_{i≥2} x_i^{f_ij} whose
/// compactification realizes the cyclic cover of a gamma triple.
pub fn cyclic_cover_hypersurface(
    triple: &GammaTriple,
    field: &FieldDescriptor,
    t: FieldElement,
) -> Result<(LaurentHypersurface, CoverData)> {
    triple.validate()?;
    if triple.delta.iter().sum::<i64>() != 0 {
        return Err(Error::Domain("cyclic covers need Σδ_j = 0".into()));
    }
    if t.is_zero() {
        return Err(Error::Domain("t must be nonzero".into()));
    }
    let m = triple.gamma.len();
    let g = IntMatrix::from_rows(&[triple.gamma.clone(), triple.delta.clone()]);
    let kappa = solve_integer(&g, &i64_to_big_vec(&[1, 0]));
    let f1 = solve_integer(&g, &i64_to_big_vec(&[0, 1]));
    let (Some(kappa), Some(f1)) = (kappa, f1) else {
        return Err(Error::Domain("maximal minors of [γ; δ] are not coprime".into()));
    };
    let ker = integer_kernel(&g);
    let ones = vec![BigInt::from(1); m];
    let kernel = basis_starting_with(&ker, &ones)?
        .iter()
        .map(|v| big_to_i64_vec(v))
        .collect::<Result<Vec<_>>>()?;
    let kappa = big_to_i64_vec(&kappa)?;
    let f1 = big_to_i64_vec(&f1)?;
    let n = triple.n as i64;
    let mut exps = vec![f1.iter().map(|x| x * n).collect::<Vec<i64>>()];
    exps.extend(kernel[1..].iter().cloned());
    let coeffs = kappa.iter().map(|&k| field.pow_signed(t, k)).collect::<Result<Vec<_>>>()?;
    let h = LaurentHypersurface::new(field, exps, coeffs)?;
    Ok((h, CoverData { kappa, f1, kernel }))
}
