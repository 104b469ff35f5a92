use hgm::corpus::{exponents_for, random_gamma};
use hgm::count::{count_compact_i, count_compact_ii, count_stratum};
use hgm::ffield::{field_of_size, CharacterTable, FieldElement, GaussTable};
use hgm::oracle::{face_counts, OracleConfig};
use hgm::toric::{analyze, analyze_with, AnalyzeOptions, LaurentHypersurface};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SHAPES: [(usize, usize); 4] = [(1, 3), (2, 2), (1, 4), (2, 3)];
const FIELDS: [u64; 6] = [5, 7, 8, 9, 11, 13];

/// A random hypersurface with coprime γ, or None if the draw is not coprime to q.
fn build(seed: u64, shape: usize, degree: u64, q: u64) -> Option<LaurentHypersurface> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (r, s) = SHAPES[shape];
    let gamma = random_gamma(&mut rng, r, s, 5);
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).unwrap() as i64;
    if gamma.iter().any(|g| g % p == 0) {
        return None;
    }
    let field = field_of_size(q).unwrap();
    let exps = exponents_for(&mut rng, &gamma, degree).unwrap();
    let coeffs = (0..gamma.len()).map(|j| FieldElement(1 + ((seed >> (4 * j)) % (q - 1)) as u32)).collect();
    Some(LaurentHypersurface::new(&field, exps, coeffs).unwrap())
}

fn case() -> impl Strategy<Value = (u64, usize, u64, u64)> {
    (any::<u64>(), 0..SHAPES.len(), prop::sample::select(vec![1u64, 2, 3, 4]), prop::sample::select(FIELDS.to_vec()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn strata_match_oracle((seed, shape, degree, q) in case()) {
        let Some(h) = build(seed, shape, degree, q) else { return Ok(()) };
        let g = analyze(&h).unwrap();
        let gt = GaussTable::for_field(h.field()).unwrap();
        let bf = face_counts(&h, &OracleConfig::default()).unwrap();
        // Strata are indexed in the sorted order of the analysis.
        for face in g.faces() {
            let original: Vec<usize> = face.s.iter().map(|&j| g.perm[j]).collect();
            prop_assert_eq!(count_stratum(&g, &gt, &face.s).unwrap().rounded, bf.get(&original));
        }
        prop_assert_eq!(count_stratum(&g, &gt, &[]).unwrap().rounded, bf.torus());
    }

    #[test]
    fn counts_ignore_conventions((seed, shape, degree, q) in case(), shift in prop::collection::vec(-3i64..=3, 3)) {
        let Some(h) = build(seed, shape, degree, q) else { return Ok(()) };
        let g = analyze(&h).unwrap();
        let gt = GaussTable::for_field(h.field()).unwrap();
        let base = (count_compact_i(&g, &gt).unwrap().rounded, count_compact_ii(&g, &gt).unwrap().rounded);
        let flipped = analyze_with(&h, &AnalyzeOptions { flip_gamma: true }).unwrap();
        let shifted = g.shift_rho(&shift[..g.d]).unwrap();
        for v in [flipped, shifted] {
            prop_assert_eq!((count_compact_i(&v, &gt).unwrap().rounded, count_compact_ii(&v, &gt).unwrap().rounded), base);
        }
        let field = h.field();
        let ct = CharacterTable::new(field).unwrap();
        let n = q - 1;
        let k = (2..n).find(|k| num_integer::gcd(*k, n) == 1).unwrap();
        let other = GaussTable::new(CharacterTable::with_generator(field, field.pow(ct.generator(), k)).unwrap());
        let twisted = GaussTable::new(ct.with_additive_twist(FieldElement(2)).unwrap());
        for t in [other, twisted] {
            prop_assert_eq!((count_compact_i(&g, &t).unwrap().rounded, count_compact_ii(&g, &t).unwrap().rounded), base);
        }
    }

    #[test]
    fn oracle_independent_of_threads((seed, shape, degree, q) in case(), jobs in 2usize..6) {
        let Some(h) = build(seed, shape, degree, q) else { return Ok(()) };
        let a = face_counts(&h, &OracleConfig::default()).unwrap();
        let b = face_counts(&h, &OracleConfig::default().with_jobs(jobs)).unwrap();
        for mask in 0..(1usize << (h.d() + 2)) {
            let s: Vec<usize> = (0..h.d() + 2).filter(|j| mask >> j & 1 == 1).collect();
            prop_assert_eq!(a.get(&s), b.get(&s));
        }
    }
}
