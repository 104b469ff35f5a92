//! Brute-force point counts over F_q.
//!
//! A point x = (g^{a_1}, …, g^{a_d}) of the torus gives monomial values
//! w_j = u_j g^{Σ_i a_i m_ij}; one pass over the torus evaluates the sum
//! of every subset of the w_j, so all face restrictions are counted at once.

use std::num::NonZeroUsize;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{CharacterTable, FieldDescriptor, FieldElement};
use crate::toric::LaurentHypersurface;
use crate::zlinalg::gale_vector;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Maximum number of field operations.
    pub budget: u64,
    pub jobs: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { budget: DEFAULT_BUDGET, jobs: 1 }
    }
}

impl OracleConfig {
    /// Budget from `HGM_BUDGET` if set, all available cores.
    pub fn from_env() -> Self {
        let budget = std::env::var("HGM_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        let jobs = std::thread::available_parallelism().map_or(1, NonZeroUsize::get);
        OracleConfig { budget, jobs }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn check(&self, needed: u128) -> Result<()> {
        if needed > self.budget as u128 {
            Err(Error::Budget { needed, budget: self.budget })
        } else {
            Ok(())
        }
    }
}

/// #V(f|_S) for every subset S of dropped monomials, indexed by bitmask.
#[derive(Clone, Debug)]
pub struct FaceCounts {
    pub d: usize,
    pub q: u64,
    counts: Vec<u64>,
}

impl FaceCounts {
    pub fn get(&self, s: &[usize]) -> u64 {
        self.counts[mask_of(s)]
    }
    pub fn torus(&self) -> u64 {
        self.counts[0]
    }
}

fn mask_of(s: &[usize]) -> usize {
    s.iter().fold(0, |m, &j| m | 1 << j)
}

fn members(mask: usize, m: usize) -> Vec<usize> {
    (0..m).filter(|&j| mask >> j & 1 == 1).collect()
}

pub fn face_counts(h: &LaurentHypersurface, cfg: &OracleConfig) -> Result<FaceCounts> {
    let field = h.field();
    let d = h.d();
    let m = d + 2;
    let q = field.q() as u64;
    let n = q - 1;
    cfg.check((n as u128).pow(d as u32) * (1u128 << m))?;
    let ct = CharacterTable::new(field)?;
    let base: Vec<u64> = h.coefficients().iter().map(|&u| ct.dlog(u).expect("nonzero")).collect();
    let exps: Vec<Vec<u64>> = h
        .exponents()
        .iter()
        .map(|row| row.iter().map(|&e| e.rem_euclid(n as i64) as u64).collect())
        .collect();
    let full = (1usize << m) - 1;

    let worker = |first: std::ops::Range<u64>| -> Vec<u64> {
        let mut counts = vec![0u64; 1 << m];
        let mut sums = vec![FieldElement::ZERO; 1 << m];
        let mut a = vec![0u64; d];
        let rest = n.pow(d as u32 - 1);
        for a0 in first {
            a[0] = a0;
            for idx in 0..rest {
                let mut k = idx;
                for ai in a.iter_mut().skip(1) {
                    *ai = k % n;
                    k /= n;
                }
                let w: Vec<FieldElement> = (0..m)
                    .map(|j| {
                        let e = (0..d).fold(base[j], |acc, i| (acc + a[i] * exps[i][j]) % n);
                        ct.gen_pow(e as i64)
                    })
                    .collect();
                for mask in 1..=full {
                    let low = mask.trailing_zeros() as usize;
                    sums[mask] = field.add(sums[mask & (mask - 1)], w[low]);
                }
                for (s, c) in counts.iter_mut().enumerate() {
                    if sums[full ^ s].is_zero() {
                        *c += 1;
                    }
                }
            }
        }
        counts
    };

    let jobs = (cfg.jobs as u64).clamp(1, n);
    let chunk = n.div_ceil(jobs);
    let parts: Vec<Vec<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|k| {
                let lo = k * chunk;
                let hi = ((k + 1) * chunk).min(n);
                let worker = &worker;
                scope.spawn(move || worker(lo..hi))
            })
            .collect();
        handles.into_iter().map(|hd| hd.join().expect("oracle worker panicked")).collect()
    });
    let mut counts = vec![0u64; 1 << m];
    for part in parts {
        for (c, p) in counts.iter_mut().zip(part) {
            *c += p;
        }
    }
    Ok(FaceCounts { d, q, counts })
}

pub fn bf_torus(h: &LaurentHypersurface, cfg: &OracleConfig) -> Result<u64> {
    Ok(face_counts(h, cfg)?.torus())
}

/// #V(f|_F) where F is the face obtained by dropping the monomials in S.
pub fn bf_face(h: &LaurentHypersurface, s: &[usize], cfg: &OracleConfig) -> Result<u64> {
    Ok(face_counts(h, cfg)?.get(s))
}

#[derive(Clone, Debug, Serialize)]
pub struct Stratum {
    /// Dropped monomials, in the input column order.
    pub s: Vec<usize>,
    pub codim: u32,
    pub multiplicity: u64,
    pub raw: u64,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StratifiedCount {
    pub per_stratum: Vec<Stratum>,
    pub total: u64,
}

fn stratum(counts: &FaceCounts, s: Vec<usize>, codim: u32, multiplicity: u64) -> Result<Stratum> {
    let raw = counts.get(&s);
    let div = (counts.q - 1).pow(codim);
    if !raw.is_multiple_of(div) {
        return Err(Error::Integrality(format!(
            "stratum {s:?}: {raw} points not divisible by (q-1)^{codim}"
        )));
    }
    Ok(Stratum { s, codim, multiplicity, raw, count: raw / div })
}

fn total(per_stratum: Vec<Stratum>) -> StratifiedCount {
    let total = per_stratum.iter().map(|s| s.multiplicity * s.count).sum();
    StratifiedCount { per_stratum, total }
}

fn sign_classes(h: &LaurentHypersurface) -> Result<(Vec<usize>, Vec<usize>)> {
    let gamma = gale_vector(&h.matrix())?;
    if gamma.contains(&0) {
        return Err(Error::Domain("Gale dual has a zero entry".into()));
    }
    let neg = (0..gamma.len()).filter(|&j| gamma[j] < 0).collect();
    let pos = (0..gamma.len()).filter(|&j| gamma[j] > 0).collect();
    Ok((neg, pos))
}

/// Closure in the toric variety of the Newton polytope, stratified by faces.
pub fn stratify_compact_i(h: &LaurentHypersurface, counts: &FaceCounts) -> Result<StratifiedCount> {
    let (neg, _) = sign_classes(h)?;
    let m = h.d() + 2;
    let mut parts = vec![stratum(counts, Vec::new(), 0, 1)?];
    for mask in 1..(1usize << m) - 1 {
        let s = members(mask, m);
        let has_neg = s.iter().any(|j| neg.contains(j));
        let has_pos = s.iter().any(|j| !neg.contains(j));
        if has_neg && has_pos {
            let codim = s.len() as u32 - 1;
            parts.push(stratum(counts, s, codim, 1)?);
        }
    }
    Ok(total(parts))
}

/// Closure in the staircase toric variety, stratified by cones; cones
/// with the same support and length are merged.
pub fn stratify_compact_ii(h: &LaurentHypersurface, counts: &FaceCounts) -> Result<StratifiedCount> {
    let (neg, pos) = sign_classes(h)?;
    let m = h.d() + 2;
    let (r, s) = (neg.len(), pos.len());
    // tally[(mask, len)] = number of monotone chains in the r×s grid.
    let mut tally = std::collections::BTreeMap::<(usize, usize), u64>::new();
    let mut stack: Vec<(Vec<(usize, usize)>, usize)> = vec![(Vec::new(), 0)];
    while let Some((chain, mask)) = stack.pop() {
        if mask == (1 << m) - 1 {
            continue;
        }
        *tally.entry((mask, chain.len())).or_insert(0) += 1;
        let (i0, j0) = chain.last().copied().unwrap_or((0, 0));
        for i in i0..r {
            for j in j0..s {
                if chain.last() == Some(&(i, j)) {
                    continue;
                }
                let mut next = chain.clone();
                next.push((i, j));
                stack.push((next, mask | 1 << neg[i] | 1 << pos[j]));
            }
        }
    }
    let parts = tally
        .into_iter()
        .map(|((mask, len), mult)| stratum(counts, members(mask, m), len as u32, mult))
        .collect::<Result<Vec<_>>>()?;
    Ok(total(parts))
}

pub fn bf_compact_i(h: &LaurentHypersurface, cfg: &OracleConfig) -> Result<StratifiedCount> {
    stratify_compact_i(h, &face_counts(h, cfg)?)
}

pub fn bf_compact_ii(h: &LaurentHypersurface, cfg: &OracleConfig) -> Result<StratifiedCount> {
    stratify_compact_ii(h, &face_counts(h, cfg)?)
}

/// Points of y_1^{d+1} + … + y_{d+1}^{d+1} - u^{-1}(d+1) y_1⋯y_{d+1} = 0 in P^d.
pub fn bf_projective_dwork(field: &FieldDescriptor, d: usize, u: FieldElement, cfg: &OracleConfig) -> Result<u64> {
    if u.is_zero() {
        return Err(Error::Domain("u must be nonzero".into()));
    }
    let q = field.q() as u64;
    let points = (0..=d as u32).map(|k| q.pow(k) as u128).sum::<u128>();
    cfg.check(points * (2 * d as u128 + 2))?;
    let e = d as u64 + 1;
    let pow: Vec<FieldElement> = field.elements().map(|y| field.pow(y, e)).collect();
    let c = field.neg(field.mul(field.inv(u)?, field.from_int(e as i64)));
    let mut count = 0u64;
    let mut y = vec![FieldElement::ZERO; d + 1];
    for lead in 0..=d {
        // Points whose first nonzero coordinate is y_lead = 1.
        let free = d - lead;
        let total = q.pow(free as u32);
        for idx in 0..total {
            y.iter_mut().for_each(|v| *v = FieldElement::ZERO);
            y[lead] = FieldElement::ONE;
            let mut k = idx;
            for v in y.iter_mut().skip(lead + 1) {
                *v = FieldElement((k % q) as u32);
                k /= q;
            }
            let mut sum = FieldElement::ZERO;
            let mut prod = c;
            for &v in &y {
                sum = field.add(sum, pow[v.0 as usize]);
                prod = field.mul(prod, v);
            }
            if field.add(sum, prod).is_zero() {
                count += 1;
            }
        }
    }
    Ok(count)
}
