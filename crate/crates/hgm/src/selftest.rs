//! The acceptance suite: numbered criteria, each returning pass/fail with
//! a short detail line.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{self, CorpusEntry};
use crate::count::{
    primitive_form, count_compact_i, count_compact_ii, count_cyclic_cover, dwork_count, binomial_identities_check,
    reflection_residuals, parameter_classes, CountResult, DworkSpec, RESIDUAL_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::ffield::{field_of_size, prime_power, CharacterTable, FieldDescriptor, FieldElement, GaussTable};
use crate::gammatriple::{params_from_triple, GammaTriple, HypergeometricParams};
use crate::hypersum::{
    classical_coefficients, classical_defined_at, f_classical, f_extended, f_triple, triple_coefficients,
    triple_defined_at,
};
use crate::oracle::{bf_compact_i, bf_compact_ii, bf_projective_dwork, OracleConfig};
use crate::toric::{analyze, analyze_with, cyclic_cover_hypersurface, dwork_hypersurface, primitive_from_gamma, AnalyzeOptions, GaleData};

pub const CORPUS_SEED: u64 = 20_240_517;
pub const CORPUS_PER_PAIR: usize = 2;
pub const TRIPLE_SEED: u64 = 7_310;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: Option<f64>,
}

pub const TITLES: [&str; 14] = [
    "Gauss sum laws",
    "Hasse-Davenport",
    "triple sum equals classical sum",
    "two representations of (1/3,2/3;1,1)",
    "special value at t = 1",
    "binomial identities",
    "compactification I against oracle",
    "compactification II against oracle",
    "cyclic covers",
    "Dwork d = 2",
    "Dwork d = 3",
    "Dwork d = 4 at q = 11",
    "invariance suite",
    "fan properties",
];

const LIMITS: [Option<f64>; 14] = [
    Some(5.0),
    Some(30.0),
    Some(120.0),
    None,
    None,
    Some(1.0),
    Some(300.0),
    None,
    None,
    None,
    None,
    Some(30.0),
    None,
    Some(1.0),
];

pub fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&q| prime_power(q).is_some()).collect()
}

fn table(q: u64) -> Result<GaussTable> {
    GaussTable::for_field(&field_of_size(q)?)
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Mismatch(msg.into())
}

fn nonzero(field: &FieldDescriptor) -> impl Iterator<Item = FieldElement> {
    (1..field.q()).map(FieldElement)
}

fn expect_count(label: &str, got: &CountResult, want: u64) -> Result<()> {
    if got.rounded != want || got.residual >= RESIDUAL_TOLERANCE {
        return Err(fail(format!("{label}: formula {} (residual {:.1e}) vs {want}", got.rounded, got.residual)));
    }
    Ok(())
}

fn criterion_1() -> Result<String> {
    let mut checks = 0;
    for q in prime_powers(2, 64) {
        let gt = table(q)?;
        let n = gt.n() as i64;
        let minus_one = gt.field().neg(FieldElement::ONE);
        if (gt.gauss(0) + 1.0).norm() >= 1e-9 {
            return Err(fail(format!("g(0) ≠ -1 at q = {q}")));
        }
        for m in 1..n {
            let want = gt.ct().chi(m, minus_one)? * q as f64;
            let err = (gt.gauss(m) * gt.gauss(-m) - want).norm();
            if err >= 1e-9 {
                return Err(fail(format!("g(m)g(-m) off by {err:.1e} at q = {q}, m = {m}")));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} reflection checks"))
}

fn criterion_2() -> Result<String> {
    let mut checks = 0;
    let mut worst: f64 = 0.0;
    for q in prime_powers(2, 64) {
        let gt = table(q)?;
        let n = gt.n() as i64;
        let field = gt.field();
        for big_n in (1..=n).filter(|k| n % k == 0) {
            let step = n / big_n;
            let nf = field.from_int(big_n);
            let denom: Complex64 = (0..big_n).map(|j| gt.gauss(j * step)).product();
            for m in 0..n {
                let num: Complex64 = (0..big_n).map(|j| gt.gauss(m + j * step)).product();
                let rhs = -gt.ct().chi(big_n * m, nf)? * num / denom;
                let err = (gt.gauss(big_n * m) - rhs).norm();
                worst = worst.max(err);
                if err >= 1e-8 {
                    return Err(fail(format!("q = {q}, N = {big_n}, m = {m}: error {err:.1e}")));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} identities, worst error {worst:.1e}"))
}

/// Deterministic gamma triples with d ≤ 4, |γ_j| ≤ 6, N ≤ 6 and nonempty parameters.
pub fn triple_corpus(seed: u64, size: usize) -> Vec<GammaTriple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<GammaTriple> = Vec::new();
    while out.len() < size {
        let len = rng.gen_range(3..=6);
        let r = rng.gen_range(1..len);
        let gamma = corpus::random_gamma(&mut rng, r, len - r, 6);
        let n = rng.gen_range(1..=6u64);
        let delta: Vec<i64> = (0..len).map(|_| rng.gen_range(0..n as i64)).collect();
        let Ok(t) = GammaTriple::new(gamma, delta, n) else { continue };
        let Ok(p) = params_from_triple(&t) else { continue };
        let admissible = prime_powers(2, 100)
            .into_iter()
            .any(|q| triple_defined_at(&t, q).is_ok() && classical_defined_at(&p, q));
        if p.is_empty() || !admissible || out.contains(&t) {
            continue;
        }
        out.push(t);
    }
    out
}

fn criterion_3() -> Result<String> {
    let triples = triple_corpus(TRIPLE_SEED, 24);
    let tables: Vec<GaussTable> = prime_powers(2, 100).into_iter().map(table).collect::<Result<_>>()?;
    let mut checks = 0;
    let mut worst: f64 = 0.0;
    let mut covered = 0;
    for t in &triples {
        let p = params_from_triple(t)?;
        let mut any = false;
        for gt in &tables {
            let q = gt.q();
            if triple_defined_at(t, q).is_err() || !classical_defined_at(&p, q) {
                continue;
            }
            any = true;
            let a = triple_coefficients(t, gt)?;
            let b = classical_coefficients(&p, gt)?;
            for x in nonzero(gt.field()) {
                let err = (a.eval(gt.ct(), x)? - b.eval(gt.ct(), x)?).norm();
                worst = worst.max(err);
                if err >= 1e-6 {
                    return Err(fail(format!("{t} at q = {q}, t = {}: error {err:.1e}", x.0)));
                }
                checks += 1;
            }
        }
        covered += any as usize;
    }
    if covered < 20 {
        return Err(fail(format!("only {covered} triples admissible somewhere")));
    }
    Ok(format!("{} triples ({covered} exercised), {checks} evaluations, worst {worst:.1e}", triples.len()))
}

fn criterion_4() -> Result<String> {
    let a = GammaTriple::new(vec![-3, 1, 1, 1], vec![0, 0, 0, 0], 1)?;
    let b = GammaTriple::new(vec![-1, -1, 1, 1], vec![1, -1, 0, 0], 3)?;
    let mut checks = 0;
    for q in prime_powers(2, 200).into_iter().filter(|q| q % 3 == 1) {
        let gt = table(q)?;
        let ca = triple_coefficients(&a, &gt)?;
        let cb = triple_coefficients(&b, &gt)?;
        for x in nonzero(gt.field()) {
            let err = (ca.eval(gt.ct(), x)? - cb.eval(gt.ct(), x)?).norm();
            if err >= 1e-6 {
                return Err(fail(format!("q = {q}, t = {}: error {err:.1e}", x.0)));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} evaluations"))
}

fn criterion_5() -> Result<String> {
    let p = HypergeometricParams::parse("1/3,2/3", "1,1")?;
    for q in [7u64, 13, 19, 25, 31] {
        let v = f_classical(&p, &table(q)?, FieldElement::ONE)?;
        if (v - 1.0).norm() >= RESIDUAL_TOLERANCE {
            return Err(fail(format!("q = {q}: value {v}")));
        }
    }
    Ok("F = 1 at q = 7, 13, 19, 25, 31".into())
}

fn criterion_6() -> Result<String> {
    for r in 1..=8 {
        for s in 1..=8 {
            for q in [2, 3, 5, 7, 11] {
                binomial_identities_check(r, s, q)?;
            }
        }
    }
    Ok("320 exact checks".into())
}

pub fn acceptance_corpus() -> Result<Vec<CorpusEntry>> {
    corpus::generate(CORPUS_SEED, CORPUS_PER_PAIR)
}

fn corpus_case(e: &CorpusEntry) -> Result<(GaleData, GaussTable)> {
    let h = e.hypersurface()?;
    let gt = GaussTable::for_field(h.field())?;
    Ok((analyze(&h)?, gt))
}

fn criterion_7(cfg: &OracleConfig) -> Result<String> {
    let entries = acceptance_corpus()?;
    let mut cross_checked = 0;
    for e in &entries {
        let (g, gt) = corpus_case(e)?;
        let got = count_compact_i(&g, &gt).map_err(|err| fail(format!("{}: {err}", e.label)))?;
        cross_checked += got.decomposition.is_some() as usize;
        expect_count(&e.label, &got, bf_compact_i(&e.hypersurface()?, cfg)?.total)?;
    }
    Ok(format!("{} hypersurfaces, {cross_checked} with hypergeometric cross-check", entries.len()))
}

fn criterion_8(cfg: &OracleConfig) -> Result<String> {
    let entries = acceptance_corpus()?;
    let mut primitive = 0;
    for e in &entries {
        let (g, gt) = corpus_case(e)?;
        let want = bf_compact_ii(&e.hypersurface()?, cfg)?.total;
        expect_count(&e.label, &count_compact_ii(&g, &gt)?, want)?;
        if g.degree == 1 {
            expect_count(&format!("{} (primitive form)", e.label), &primitive_form(&g, &gt)?, want)?;
            primitive += 1;
        }
    }
    Ok(format!("{} hypersurfaces, {primitive} primitive", entries.len()))
}

pub fn genus_two_triple() -> GammaTriple {
    GammaTriple::new(vec![-1, -1, 1, 1], vec![1, -1, 0, 0], 3).expect("valid triple")
}

fn criterion_9(cfg: &OracleConfig) -> Result<String> {
    let triple = genus_two_triple();
    let mut checks = 0;
    for q in [7u64, 13, 19] {
        let gt = table(q)?;
        let field = gt.field().clone();
        for t in nonzero(&field) {
            let got = count_cyclic_cover(&triple, &gt, t)?;
            let (h, _) = cyclic_cover_hypersurface(&triple, &field, t)?;
            expect_count(&format!("q = {q}, t = {}", t.0), &got, bf_compact_ii(&h, cfg)?.total)?;
            let f = f_triple(&triple, &gt, t)?;
            let extra = if t == FieldElement::ONE { q as f64 } else { 0.0 };
            let displayed = (q + 1) as f64 - 2.0 * f + extra;
            if (displayed - got.raw).norm() >= RESIDUAL_TOLERANCE {
                return Err(fail(format!("q = {q}, t = {}: displayed form {displayed}", t.0)));
            }
            checks += 1;
        }
        expect_count(&format!("q = {q}, t = 1"), &count_cyclic_cover(&triple, &gt, FieldElement::ONE)?, 2 * q - 1)?;
    }
    Ok(format!("{checks} fibres"))
}

fn dwork_against_oracle(d: usize, qs: &[u64], cfg: &OracleConfig) -> Result<usize> {
    let mut checks = 0;
    for &q in qs {
        let gt = table(q)?;
        let field = gt.field().clone();
        for u in nonzero(&field) {
            let spec = DworkSpec::new(d, &gt, u)?;
            let got = dwork_count(&spec, &gt)?;
            expect_count(&format!("d = {d}, q = {q}, u = {}", u.0), &got, bf_projective_dwork(&field, d, u, cfg)?)?;
            checks += 1;
        }
    }
    Ok(checks)
}

pub const DWORK2_FIELDS: [u64; 9] = [2, 4, 5, 7, 8, 11, 13, 16, 25];
pub const DWORK3_FIELDS: [u64; 3] = [7, 11, 13];

fn criterion_10(cfg: &OracleConfig) -> Result<String> {
    let checks = dwork_against_oracle(2, &DWORK2_FIELDS, cfg)?;
    for q in DWORK2_FIELDS.into_iter().filter(|q| q % 3 == 1) {
        let gt = table(q)?;
        expect_count(&format!("q = {q}, u = 1"), &dwork_count(&DworkSpec::new(2, &gt, FieldElement::ONE)?, &gt)?, 3 * q)?;
    }
    Ok(format!("{checks} fibres"))
}

fn criterion_11(cfg: &OracleConfig) -> Result<String> {
    let checks = dwork_against_oracle(3, &DWORK3_FIELDS, cfg)?;
    let gt = table(13)?;
    let res = dwork_count(&DworkSpec::new(3, &gt, FieldElement(2))?, &gt)?;
    let classes = parameter_classes(res.decomposition.as_deref().unwrap_or_default());
    let expected = [
        ("1/4,2/4,3/4", "1,1,1", 1),
        ("1/4,3/4", "1/2,1", 3),
        ("1/2", "1", 6),
        ("1/4", "3/4", 3),
        ("3/4", "1/4", 3),
    ];
    if classes.len() != expected.len() {
        return Err(fail(format!("{} parameter classes", classes.len())));
    }
    for (a, b, k) in expected {
        let p = HypergeometricParams::parse(a, b)?;
        if !classes.iter().any(|(c, m)| *c == p && *m == k) {
            return Err(fail(format!("class ({a}; {b}) does not have multiplicity {k}")));
        }
    }
    for u in nonzero(gt.field()) {
        let (a, b) = reflection_residuals(&gt, u)?;
        if a >= 1e-6 || b >= 1e-6 {
            return Err(fail(format!("reflection identities fail at u = {}", u.0)));
        }
    }
    // q ≡ 3 mod 4: closed form with two sums.
    let outer = HypergeometricParams::parse("1/4,2/4,3/4", "1,1,1")?;
    let inner = HypergeometricParams::parse("1/4,3/4", "1/2,1")?;
    for q in [7u64, 11] {
        let gt = table(q)?;
        let field = gt.field().clone();
        for u in nonzero(&field) {
            let x = field.pow(u, 4);
            let want = (q * q + q + 1) as f64 + f_extended(&outer, &gt, x)?.value
                - 3.0 * q as f64 * f_extended(&inner, &gt, x)?.value;
            let got = dwork_count(&DworkSpec::new(3, &gt, u)?, &gt)?;
            if (want - got.raw).norm() >= RESIDUAL_TOLERANCE {
                return Err(fail(format!("q = {q}, u = {}: closed form {want}", u.0)));
            }
        }
    }
    Ok(format!("{checks} fibres, classes 1/3/6/3/3 at q = 13"))
}

fn criterion_12(cfg: &OracleConfig) -> Result<String> {
    let gt = table(11)?;
    let terms = dwork_count(&DworkSpec::new(4, &gt, FieldElement::ONE)?, &gt)?.decomposition.map_or(0, |d| d.len());
    if terms != 125 {
        return Err(fail(format!("{terms} decomposition terms")));
    }
    let checks = dwork_against_oracle(4, &[11], cfg)?;
    Ok(format!("{checks} fibres, 125 terms each"))
}

/// Tables with a different generator and with a twisted additive character.
fn variant_tables(field: &FieldDescriptor) -> Result<Vec<GaussTable>> {
    let base = CharacterTable::new(field)?;
    let n = field.q() as u64 - 1;
    let mut out = Vec::new();
    if let Some(k) = (2..n).find(|k| num_integer::gcd(*k, n) == 1) {
        let gen = field.pow(base.generator(), k);
        out.push(GaussTable::new(CharacterTable::with_generator(field, gen)?));
    }
    if field.q() > 2 {
        out.push(GaussTable::new(base.with_additive_twist(base.generator())?));
    }
    Ok(out)
}

/// GaleData with flipped γ and with shifted ρ.
fn variant_gale(h: &crate::toric::LaurentHypersurface, rng: &mut impl Rng) -> Result<Vec<GaleData>> {
    let g = analyze(h)?;
    let c: Vec<i64> = (0..g.d).map(|_| rng.gen_range(-2..=2)).collect();
    Ok(vec![analyze_with(h, &AnalyzeOptions { flip_gamma: true })?, g.shift_rho(&c)?])
}

fn same(label: &str, base: u64, other: &CountResult) -> Result<()> {
    if other.rounded != base {
        return Err(fail(format!("{label}: {} vs {base}", other.rounded)));
    }
    Ok(())
}

fn criterion_13() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut checks = 0;
    for e in acceptance_corpus()? {
        let h = e.hypersurface()?;
        let (g, gt) = corpus_case(&e)?;
        let (c1, c2) = (count_compact_i(&g, &gt)?.rounded, count_compact_ii(&g, &gt)?.rounded);
        for vt in variant_tables(h.field())? {
            same(&e.label, c1, &count_compact_i(&g, &vt)?)?;
            same(&e.label, c2, &count_compact_ii(&g, &vt)?)?;
            checks += 2;
        }
        for vg in variant_gale(&h, &mut rng)? {
            same(&e.label, c1, &count_compact_i(&vg, &gt)?)?;
            same(&e.label, c2, &count_compact_ii(&vg, &gt)?)?;
            checks += 2;
        }
    }
    let triple = genus_two_triple();
    for q in [7u64, 13, 19] {
        let gt = table(q)?;
        let field = gt.field().clone();
        for t in nonzero(&field) {
            let base = count_cyclic_cover(&triple, &gt, t)?.rounded;
            for vt in variant_tables(&field)? {
                same("cover", base, &count_cyclic_cover(&triple, &vt, t)?)?;
                checks += 1;
            }
            let (h, _) = cyclic_cover_hypersurface(&triple, &field, t)?;
            for vg in variant_gale(&h, &mut rng)? {
                same("cover", base, &count_compact_ii(&vg, &gt)?)?;
                checks += 1;
            }
        }
    }
    for (d, qs) in [(2, &DWORK2_FIELDS[..]), (3, &DWORK3_FIELDS[..]), (4, &[11u64][..])] {
        for &q in qs {
            let gt = table(q)?;
            let field = gt.field().clone();
            for u in nonzero(&field) {
                let spec = DworkSpec::new(d, &gt, u)?;
                let base = dwork_count(&spec, &gt)?.rounded;
                for vt in variant_tables(&field)? {
                    same("Dwork", base, &dwork_count(&spec, &vt)?)?;
                    checks += 1;
                }
                let h = dwork_hypersurface(&field, d, u)?;
                let g = analyze(&h)?;
                let torus_route = count_compact_ii(&g, &gt)?.rounded;
                for vg in variant_gale(&h, &mut rng)? {
                    same("Dwork staircase", torus_route, &count_compact_ii(&vg, &gt)?)?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} variant counts unchanged"))
}

fn criterion_14() -> Result<String> {
    let mut checked = 0;
    for e in acceptance_corpus()? {
        let g = analyze(&e.hypersurface()?)?;
        if !g.staircase_is_simplicial()? {
            return Err(fail(format!("{}: staircase fan not simplicial", e.label)));
        }
        if !g.staircase_refines_normal_fan()? {
            return Err(fail(format!("{}: staircase fan does not refine the normal fan", e.label)));
        }
        checked += 1;
    }
    let field = field_of_size(7)?;
    let w = analyze(&primitive_from_gamma(&field, &[-30, -1, 6, 10, 15], vec![FieldElement::ONE; 5])?)?;
    let cone = w.normal_cone(&[0, 1, 2, 3])?;
    if cone.is_simplicial() || cone.rays.len() != 4 || cone.rank != 3 {
        return Err(fail("non-simplicial cone of the witness not detected"));
    }
    if !w.staircase_is_simplicial()? || !w.staircase_refines_normal_fan()? {
        return Err(fail("witness staircase fan check failed"));
    }
    Ok(format!("{checked} corpus fans plus witness; witness cone has 4 rays in rank 3"))
}

pub fn run(id: usize, cfg: &OracleConfig) -> CriterionReport {
    let start = Instant::now();
    let outcome = match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(cfg),
        8 => criterion_8(cfg),
        9 => criterion_9(cfg),
        10 => criterion_10(cfg),
        11 => criterion_11(cfg),
        12 => criterion_12(cfg),
        13 => criterion_13(),
        14 => criterion_14(),
        _ => Err(Error::Domain(format!("no criterion {id}"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    let limit_seconds = LIMITS.get(id.wrapping_sub(1)).copied().flatten();
    let in_time = limit_seconds.is_none_or(|l| seconds < l);
    let (pass, detail) = match outcome {
        Ok(d) if in_time => (true, d),
        Ok(d) => (false, format!("{d}; took {seconds:.1} s, limit {} s", limit_seconds.unwrap_or(0.0))),
        Err(e) => (false, e.to_string()),
    };
    CriterionReport {
        id,
        title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        pass,
        detail,
        seconds,
        limit_seconds,
    }
}

pub fn run_all(cfg: &OracleConfig) -> Vec<CriterionReport> {
    (1..=TITLES.len()).map(|id| run(id, cfg)).collect()
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {:>2}: {} | {} | {} ({:.2} s)",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.seconds
        )
    }
}
