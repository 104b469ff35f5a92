//! Seeded generator of test hypersurfaces with prescribed Gale shape and
//! covering degree.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::ffield::{field_of_size, FieldElement};
use crate::toric::{HypersurfaceJson, LaurentHypersurface};
use crate::zlinalg::{kernel_basis_with_ones, IntMatrix};

pub const SHAPES: [(usize, usize); 4] = [(1, 3), (2, 2), (1, 4), (2, 3)];
pub const DEGREES: [u64; 6] = [1, 2, 3, 4, 9, 16];
pub const FIELDS: [u64; 8] = [5, 7, 8, 9, 11, 13, 16, 25];

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub label: String,
    pub gamma: Vec<i64>,
    pub degree: u64,
    pub hypersurface: HypersurfaceJson,
}

impl CorpusEntry {
    pub fn hypersurface(&self) -> Result<LaurentHypersurface> {
        LaurentHypersurface::from_json(&self.hypersurface)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Random γ with r negative then s positive entries, |γ_j| ≤ bound,
/// zero sum and gcd 1.
pub fn random_gamma(rng: &mut impl Rng, r: usize, s: usize, bound: i64) -> Vec<i64> {
    loop {
        let mut g: Vec<i64> = (0..r).map(|_| -rng.gen_range(1..=bound)).collect();
        g.extend((0..s).map(|_| rng.gen_range(1..=bound)));
        if g.iter().sum::<i64>() == 0 && g.iter().fold(0, |a, &b| gcd(a, b)) == 1 {
            return g;
        }
    }
}

/// Diagonal of a d×d matrix with determinant `degree`, spreading square
/// factors over two coordinates when possible.
fn degree_diagonal(d: usize, degree: u64) -> Vec<i64> {
    let mut diag = vec![1i64; d];
    let root = (degree as f64).sqrt().round() as u64;
    if d >= 2 && root > 1 && root * root == degree {
        diag[d - 2] = root as i64;
        diag[d - 1] = root as i64;
    } else {
        diag[d - 1] = degree as i64;
    }
    diag
}

fn random_unimodular(rng: &mut impl Rng, d: usize) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
    if d < 2 {
        return IntMatrix::from_rows(&rows);
    }
    for _ in 0..2 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        let src = rows[j].clone();
        for (a, b) in rows[i].iter_mut().zip(src) {
            *a += c * b;
        }
    }
    rows.shuffle(rng);
    IntMatrix::from_rows(&rows)
}

/// Exponent rows A·(f_1, …, f_d) + b·1 with |det A| = degree.
pub fn exponents_for(rng: &mut impl Rng, gamma: &[i64], degree: u64) -> Result<Vec<Vec<i64>>> {
    let d = gamma.len() - 2;
    let f = kernel_basis_with_ones(gamma)?.to_i64_rows()?;
    let fk = IntMatrix::from_rows(&f[1..]);
    let diag = degree_diagonal(d, degree);
    let mut dm = IntMatrix::from_rows(&(0..d).map(|i| (0..d).map(|j| if i == j { diag[i] } else { 0 }).collect::<Vec<i64>>()).collect::<Vec<_>>());
    dm = random_unimodular(rng, d).mul(&dm).mul(&random_unimodular(rng, d));
    let mut rows = dm.mul(&fk).to_i64_rows()?;
    for row in rows.iter_mut() {
        let b = rng.gen_range(-1..=1);
        row.iter_mut().for_each(|x| *x += b);
    }
    Ok(rows)
}

fn coprime_fields(gamma: &[i64]) -> Vec<u64> {
    FIELDS
        .iter()
        .copied()
        .filter(|&q| {
            let p = (2..=q).find(|p| q % p == 0).unwrap() as i64;
            gamma.iter().all(|g| g % p != 0)
        })
        .collect()
}

/// Deterministic corpus covering every (shape, degree) pair at least once.
pub fn generate(seed: u64, per_pair: usize) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut field_cursor = 0usize;
    for &(r, s) in &SHAPES {
        for &degree in &DEGREES {
            for _ in 0..per_pair {
                let gamma = loop {
                    let g = random_gamma(&mut rng, r, s, 5);
                    if !coprime_fields(&g).is_empty() {
                        break g;
                    }
                };
                let fields = coprime_fields(&gamma);
                let q = fields[field_cursor % fields.len()];
                field_cursor += 1;
                let field = field_of_size(q)?;
                let exps = exponents_for(&mut rng, &gamma, degree)?;
                let coeffs: Vec<FieldElement> =
                    (0..gamma.len()).map(|_| FieldElement(rng.gen_range(1..q as u32))).collect();
                let h = LaurentHypersurface::new(&field, exps, coeffs)?;
                out.push(CorpusEntry {
                    label: format!("r{r}s{s}-deg{degree}-q{q}-{}", out.len()),
                    gamma,
                    degree,
                    hypersurface: h.to_json(),
                });
            }
        }
    }
    Ok(out)
}
