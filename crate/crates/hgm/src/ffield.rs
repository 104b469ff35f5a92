//! Finite fields, additive and multiplicative characters, Gauss sums.
//!
//! An element of F_q = F_p[x]/(f) is stored as the integer encoding of its
//! reduced representative: c_0 + c_1 x + ... + c_{k-1} x^{k-1} becomes
//! c_0 + c_1 p + ... + c_{k-1} p^{k-1}. For prime fields this is the residue.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field the constructor accepts.
pub const FIELD_BOUND: u64 = 1 << 20;
/// Largest field for which character and Gauss tables are built.
pub const TABLE_BOUND: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldDescriptor {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients from low to high degree (length k+1).
    modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `Some((p, k))` if `q = p^k` with p prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u32, k))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, low degree first, no trailing zeros.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = mod_pow(f[df], p - 2, p);
    while r.len() > df {
        let c = r[r.len() - 1] * lead_inv % p;
        let shift = r.len() - 1 - df;
        for (i, &fi) in f.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * fi % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Ben-Or test: f of degree k is irreducible iff gcd(x^{p^i} - x, f) = 1
/// for every i ≤ k/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    let x = vec![0u64, 1];
    let mut h = poly_rem(&x, f, p);
    for _ in 1..=k / 2 {
        h = poly_powmod(&h, p, f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if poly_gcd(&diff, f, p).len() > 1 {
            return false;
        }
    }
    true
}

/// Builds F_{p^k} with the first irreducible monic modulus in encoding order.
pub fn make_field(p: u64, k: u32) -> Result<FieldDescriptor> {
    if !is_prime(p) {
        return Err(Error::Field(format!("{p} is not prime")));
    }
    if k < 1 {
        return Err(Error::Field("exponent k must be at least 1".into()));
    }
    let q = (p as u128).pow(k);
    if q > FIELD_BOUND as u128 {
        return Err(Error::Field(format!("q = {p}^{k} exceeds the bound {FIELD_BOUND}")));
    }
    let q = q as u64;
    let count = q;
    for code in 0..count {
        let mut f: Vec<u64> = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return Ok(FieldDescriptor {
                p: p as u32,
                k,
                q: q as u32,
                modulus: f.into_iter().map(|x| x as u32).collect(),
            });
        }
    }
    Err(Error::Field(format!("no irreducible polynomial of degree {k} over F_{p}")))
}

/// Convenience constructor from the field size.
pub fn field_of_size(q: u64) -> Result<FieldDescriptor> {
    let (p, k) = prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
    make_field(p as u64, k)
}

impl FieldDescriptor {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut c = a.0;
        for _ in 0..self.k {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<FieldElement> {
        if digits.len() != self.k as usize {
            return Err(Error::Field(format!(
                "expected {} digits, got {}",
                self.k,
                digits.len()
            )));
        }
        let mut code = 0u32;
        for &d in digits.iter().rev() {
            if d >= self.p {
                return Err(Error::Field(format!("digit {d} out of range for p = {}", self.p)));
            }
            code = code * self.p + d;
        }
        Ok(FieldElement(code))
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code >= self.q {
            return Err(Error::Field(format!("element code {code} out of range for q = {}", self.q)));
        }
        Ok(FieldElement(code))
    }

    /// Image of an integer under Z -> F_p ⊂ F_q.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u32> = self.digits(a).into_iter().map(|c| (self.p - c) % self.p).collect();
        self.from_digits(&d).expect("digits in range")
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let p = self.p as u64;
        let f: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let x: Vec<u64> = self.digits(a).into_iter().map(u64::from).collect();
        let y: Vec<u64> = self.digits(b).into_iter().map(u64::from).collect();
        let mut r = poly_mulmod(&x, &y, &f, p);
        r.resize(self.k as usize, 0);
        let d: Vec<u32> = r.into_iter().map(|c| c as u32).collect();
        self.from_digits(&d).expect("reduced product")
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut result = FieldElement::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        result
    }

    /// Power with a signed exponent; negative exponents need a nonzero base.
    pub fn pow_signed(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            return Ok(self.pow(a, e as u64));
        }
        Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::Field("zero has no inverse".into()));
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn order(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let n = self.q as u64 - 1;
        let mut ord = n;
        for l in prime_factors(n) {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == FieldElement::ONE {
                ord /= l;
            }
        }
        Some(ord)
    }

    /// First element in encoding order with multiplicative order q - 1.
    pub fn default_generator(&self) -> FieldElement {
        let n = self.q as u64 - 1;
        (1..self.q)
            .map(FieldElement)
            .find(|&a| self.order(a) == Some(n))
            .expect("F_q^x is cyclic")
    }

    /// Absolute trace Σ_{i<k} a^{p^i}, an element of F_p.
    pub fn trace(&self, a: FieldElement) -> u32 {
        let mut acc = FieldElement::ZERO;
        let mut y = a;
        for _ in 0..self.k {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as u64);
        }
        debug_assert!(acc.0 < self.p, "trace must lie in the prime field");
        acc.0
    }

    pub fn to_repr(&self, a: FieldElement) -> ElementRepr {
        if self.k == 1 {
            ElementRepr::Int(a.0 as i64)
        } else {
            ElementRepr::Digits(self.digits(a))
        }
    }

    /// Integers denote elements of the prime subfield; digit lists are
    /// polynomial coefficients in increasing degree.
    pub fn from_repr(&self, r: &ElementRepr) -> Result<FieldElement> {
        match r {
            ElementRepr::Int(n) => Ok(self.from_int(*n)),
            ElementRepr::Digits(d) => self.from_digits(d),
        }
    }
}

/// Serialized form of a field element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Int(i64),
    Digits(Vec<u32>),
}

/// e^{2πi j/n}.
pub fn root_of_unity(j: u64, n: u64) -> Complex64 {
    let theta = 2.0 * PI * (j % n) as f64 / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// Compensated complex summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Character data for F_q: a generator with its discrete logarithm, and an
/// additive character ψ_a(x) = ζ_p^{Tr(a x)}.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    field: FieldDescriptor,
    generator: FieldElement,
    psi_twist: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
    psi: Vec<u32>,
    zeta_p: Vec<Complex64>,
    zeta_n: Vec<Complex64>,
}

const NO_LOG: u32 = u32::MAX;

pub fn char_table(field: &FieldDescriptor) -> Result<CharacterTable> {
    CharacterTable::new(field)
}

impl CharacterTable {
    pub fn new(field: &FieldDescriptor) -> Result<Self> {
        Self::check_size(field)?;
        Self::build(field, field.default_generator(), FieldElement::ONE)
    }

    pub fn with_generator(field: &FieldDescriptor, generator: FieldElement) -> Result<Self> {
        Self::check_size(field)?;
        if field.order(generator) != Some(field.q() as u64 - 1) {
            return Err(Error::Field(format!(
                "element {} does not generate F_{}^x",
                generator.0,
                field.q()
            )));
        }
        Self::build(field, generator, FieldElement::ONE)
    }

    /// Same generator, additive character replaced by x ↦ ψ(a x).
    pub fn with_additive_twist(&self, a: FieldElement) -> Result<Self> {
        if a.is_zero() || a.0 >= self.field.q() {
            return Err(Error::Field("additive twist must be a nonzero element".into()));
        }
        let mut out = self.clone();
        out.psi_twist = a;
        out.psi = (0..self.field.q())
            .map(|x| out.trace[out.mul(a, FieldElement(x)).0 as usize])
            .collect();
        Ok(out)
    }

    fn check_size(field: &FieldDescriptor) -> Result<()> {
        if field.q() as u64 > TABLE_BOUND {
            return Err(Error::Field(format!(
                "character tables need q ≤ {TABLE_BOUND}, got {}",
                field.q()
            )));
        }
        Ok(())
    }

    fn build(field: &FieldDescriptor, generator: FieldElement, twist: FieldElement) -> Result<Self> {
        let q = field.q() as usize;
        let n = q - 1;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![NO_LOG; q];
        let mut x = FieldElement::ONE;
        for i in 0..n {
            if log[x.0 as usize] != NO_LOG {
                return Err(Error::Field(format!("element {} is not a generator", generator.0)));
            }
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = field.mul(x, generator);
        }
        // Trace is F_p-linear: tabulate it on the power basis, then extend.
        let p = field.p();
        let basis_trace: Vec<u32> = (0..field.k())
            .map(|i| field.trace(FieldElement(p.pow(i))))
            .collect();
        let trace: Vec<u32> = (0..field.q())
            .map(|a| {
                field
                    .digits(FieldElement(a))
                    .iter()
                    .zip(&basis_trace)
                    .fold(0u64, |acc, (&c, &t)| (acc + c as u64 * t as u64) % p as u64)
                    as u32
            })
            .collect();
        let zeta_p = (0..p as u64).map(|j| root_of_unity(j, p as u64)).collect();
        let zeta_n = (0..n as u64).map(|j| root_of_unity(j, n as u64)).collect();
        let mut table = CharacterTable {
            field: field.clone(),
            generator,
            psi_twist: twist,
            exp,
            log,
            psi: trace.clone(),
            trace,
            zeta_p,
            zeta_n,
        };
        if twist != FieldElement::ONE {
            table = table.with_additive_twist(twist)?;
        }
        Ok(table)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }
    pub fn generator(&self) -> FieldElement {
        self.generator
    }
    pub fn additive_twist(&self) -> FieldElement {
        self.psi_twist
    }
    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }
    /// q^× = q - 1.
    pub fn n(&self) -> u64 {
        self.field.q() as u64 - 1
    }

    pub fn dlog(&self, x: FieldElement) -> Option<u64> {
        match self.log.get(x.0 as usize) {
            Some(&l) if l != NO_LOG => Some(l as u64),
            _ => None,
        }
    }

    /// g^i for any integer i.
    pub fn gen_pow(&self, i: i64) -> FieldElement {
        FieldElement(self.exp[i.rem_euclid(self.n() as i64) as usize])
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (self.dlog(a), self.dlog(b)) {
            (Some(x), Some(y)) => FieldElement(self.exp[((x + y) % self.n()) as usize]),
            _ => FieldElement::ZERO,
        }
    }

    pub fn trace(&self, x: FieldElement) -> u32 {
        self.trace[x.0 as usize]
    }

    pub fn psi(&self, x: FieldElement) -> Complex64 {
        self.zeta_p[self.psi[x.0 as usize] as usize]
    }

    /// Exponent e with χ^m(x) = ζ_{q-1}^e, for x ≠ 0.
    pub fn chi_exponent(&self, m: i64, x: FieldElement) -> Result<u64> {
        let l = self
            .dlog(x)
            .ok_or_else(|| Error::Field("χ is undefined at 0".into()))?;
        let n = self.n();
        Ok(((m.rem_euclid(n as i64) as u128 * l as u128) % n as u128) as u64)
    }

    pub fn chi(&self, m: i64, x: FieldElement) -> Result<Complex64> {
        Ok(self.zeta_n(self.chi_exponent(m, x)? as i64))
    }

    /// ζ_{q-1}^e.
    pub fn zeta_n(&self, e: i64) -> Complex64 {
        self.zeta_n[e.rem_euclid(self.n() as i64) as usize]
    }
}

/// Gauss sums g(m) = Σ_{u ≠ 0} ψ(u) χ^m(u) for all m mod q - 1.
#[derive(Clone, Debug)]
pub struct GaussTable {
    ct: CharacterTable,
    values: Vec<Complex64>,
}

impl GaussTable {
    pub fn new(ct: CharacterTable) -> Self {
        let n = ct.n() as usize;
        let psi: Vec<Complex64> = ct.exp.iter().map(|&x| ct.psi(FieldElement(x))).collect();
        let values = (0..n)
            .map(|m| {
                let mut acc = KahanSum::new();
                for (i, &ps) in psi.iter().enumerate() {
                    acc.add(ps * ct.zeta_n[(m * i) % n]);
                }
                acc.value()
            })
            .collect();
        GaussTable { ct, values }
    }

    pub fn for_field(field: &FieldDescriptor) -> Result<Self> {
        Ok(Self::new(CharacterTable::new(field)?))
    }

    pub fn ct(&self) -> &CharacterTable {
        &self.ct
    }
    pub fn field(&self) -> &FieldDescriptor {
        &self.ct.field
    }
    pub fn q(&self) -> u64 {
        self.ct.q()
    }
    pub fn n(&self) -> u64 {
        self.ct.n()
    }

    pub fn gauss(&self, m: i64) -> Complex64 {
        self.values[m.rem_euclid(self.ct.n() as i64) as usize]
    }

    /// g(v) = Π_j g(v_j).
    pub fn gauss_vec(&self, v: &[i64]) -> Complex64 {
        v.iter().fold(Complex64::new(1.0, 0.0), |acc, &m| acc * self.gauss(m))
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn rejects_bad_input() {
        assert!(make_field(4, 1).is_err());
        assert!(make_field(3, 0).is_err());
        assert!(make_field(2, 21).is_err());
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = make_field(7, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.q(), 7);
    }

    // Oracle: first monic quadratic over F_3 without a root in F_3.
    #[test]
    fn f9_modulus_by_root_search() {
        let f = make_field(3, 2).unwrap();
        let expected = (0..9u32)
            .map(|code| (code % 3, code / 3))
            .find(|&(c0, c1)| (0..3u32).all(|x| (x * x + c1 * x + c0) % 3 != 0))
            .unwrap();
        assert_eq!(f.modulus(), &[expected.0, expected.1, 1]);
    }

    #[test]
    fn extension_arithmetic_is_a_field() {
        for (p, k) in [(2, 3), (3, 2), (2, 4), (5, 2)] {
            let f = make_field(p, k).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                }
            }
        }
    }

    #[test]
    fn dlog_walk_is_consistent() {
        let f = make_field(5, 2).unwrap();
        let ct = CharacterTable::new(&f).unwrap();
        assert_eq!(ct.dlog(ct.generator()), Some(1));
        for a in f.elements().skip(1) {
            for b in f.elements().skip(1) {
                let lhs = ct.dlog(f.mul(a, b)).unwrap();
                assert_eq!(lhs, (ct.dlog(a).unwrap() + ct.dlog(b).unwrap()) % ct.n());
            }
        }
    }

    #[test]
    fn f7_character_order() {
        let f = make_field(7, 1).unwrap();
        let ct = CharacterTable::new(&f).unwrap();
        assert_eq!(ct.generator(), FieldElement(3));
        for x in 1..7 {
            assert!(close(ct.chi(6, FieldElement(x)).unwrap(), Complex64::new(1.0, 0.0), 1e-12));
        }
        assert!(!close(ct.chi(1, FieldElement(3)).unwrap(), Complex64::new(1.0, 0.0), 1e-6));
    }

    // Oracle: x + x^3 computed with field multiplication only.
    #[test]
    fn f9_trace_is_frobenius_sum() {
        let f = make_field(3, 2).unwrap();
        let ct = CharacterTable::new(&f).unwrap();
        for x in f.elements() {
            let x3 = f.mul(x, f.mul(x, x));
            let s = f.add(x, x3);
            assert!(s.0 < 3);
            assert_eq!(ct.trace(x), s.0);
        }
        assert!(f.elements().any(|x| ct.trace(x) != 0));
    }

    #[test]
    fn f2_is_degenerate_but_valid() {
        let f = make_field(2, 1).unwrap();
        let gt = GaussTable::for_field(&f).unwrap();
        assert_eq!(gt.n(), 1);
        assert!(close(gt.ct().psi(FieldElement::ONE), Complex64::new(-1.0, 0.0), 1e-15));
        assert!(close(gt.gauss(0), Complex64::new(-1.0, 0.0), 1e-15));
        assert!(close(gt.gauss(5), Complex64::new(-1.0, 0.0), 1e-15));
    }

    // Oracle: two-term sum over F_3^x with generator 2, so χ(2) = -1.
    #[test]
    fn gauss_q3() {
        let gt = GaussTable::for_field(&make_field(3, 1).unwrap()).unwrap();
        let z3 = root_of_unity(1, 3);
        let expected = z3 - z3 * z3;
        assert!(close(gt.gauss(1), expected, 1e-14));
    }

    #[test]
    fn orthogonality() {
        for q in [4u64, 7, 8, 9, 25] {
            let f = field_of_size(q).unwrap();
            let ct = CharacterTable::new(&f).unwrap();
            for x in f.elements() {
                let mut s = KahanSum::new();
                for t in f.elements() {
                    s.add(ct.psi(f.mul(t, x)));
                }
                let expected = if x.is_zero() { q as f64 } else { 0.0 };
                assert!(close(s.value(), Complex64::new(expected, 0.0), 1e-9));
                if !x.is_zero() {
                    let mut c = KahanSum::new();
                    for m in 0..ct.n() as i64 {
                        c.add(ct.chi(m, x).unwrap());
                    }
                    let expected = if x == FieldElement::ONE { ct.n() as f64 } else { 0.0 };
                    assert!(close(c.value(), Complex64::new(expected, 0.0), 1e-9));
                }
            }
        }
    }

    #[test]
    fn gauss_laws_small() {
        for q in [5u64, 8, 9, 16, 27] {
            let f = field_of_size(q).unwrap();
            let gt = GaussTable::for_field(&f).unwrap();
            let minus_one = f.neg(FieldElement::ONE);
            assert!(close(gt.gauss(0), Complex64::new(-1.0, 0.0), 1e-12));
            for m in 1..gt.n() as i64 {
                let lhs = gt.gauss(m) * gt.gauss(-m);
                let rhs = gt.ct().chi(m, minus_one).unwrap() * q as f64;
                assert!(close(lhs, rhs, 1e-10));
                assert!((gt.gauss(m).norm_sqr() - q as f64).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn additive_twist_scales_gauss_sums() {
        let f = field_of_size(13).unwrap();
        let ct = CharacterTable::new(&f).unwrap();
        let base = GaussTable::new(ct.clone());
        for a in [2u32, 5, 12] {
            let twisted = GaussTable::new(ct.with_additive_twist(FieldElement(a)).unwrap());
            for m in 0..12 {
                let expected = base.gauss(m) * ct.chi(-m, FieldElement(a)).unwrap();
                assert!(close(twisted.gauss(m), expected, 1e-10));
            }
        }
    }

    #[test]
    fn rejects_non_generator() {
        let f = field_of_size(7).unwrap();
        assert!(CharacterTable::with_generator(&f, FieldElement(2)).is_err());
        assert!(CharacterTable::with_generator(&f, FieldElement(5)).is_ok());
    }
}
