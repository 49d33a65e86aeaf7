//! Finite fields `F_q`, `q = p^k`, as `F_p[x] / (m(x))`.
//!
//! These only exist to expand `F_q`-matrix constructions into `F_p`
//! structure constants, so the fields involved are tiny and multiplication
//! and inversion are tabulated whenever `q <= 256`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{is_prime, Fp};

const TABLE_LIMIT: usize = 256;

/// An element of `F_q` as a little-endian coefficient list of length `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub coeffs: Vec<u32>,
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

#[derive(Debug, Clone)]
pub struct FieldSpec {
    fp: Fp,
    k: usize,
    /// Monic, little-endian, length `k + 1`.
    modulus: Vec<u32>,
    mul_table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.fp.p() == other.fp.p() && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// `F_{p^k}` with the lexicographically smallest (little-endian) monic
/// irreducible modulus of degree `k`.
pub fn make_field(p: u64, k: usize) -> Result<FieldSpec> {
    if !is_prime(p) || p >= 1 << 16 {
        return Err(Error::NotPrime(p));
    }
    if k < 1 {
        return Err(Error::InvalidParameter(format!(
            "field degree must be >= 1, got {k}"
        )));
    }
    let fp = Fp::new(p);
    let modulus = monic_polys(p as u32, k)
        .find(|m| is_irreducible(&fp, m))
        .expect("an irreducible polynomial exists in every degree");
    FieldSpec::with_modulus(p, modulus)
}

/// Monic polynomials of degree `k`, little-endian lexicographic order.
fn monic_polys(p: u32, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as usize).pow(k as u32);
    (0..total).map(move |mut i| {
        let mut m = Vec::with_capacity(k + 1);
        // coefficient 0 varies slowest, so index digits are read most significant first
        let mut digits = vec![0; k];
        for slot in digits.iter_mut().rev() {
            *slot = (i % p as usize) as u32;
            i /= p as usize;
        }
        m.extend(digits);
        m.push(1);
        m
    })
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(fp: &Fp, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    (1..=deg / 2)
        .all(|d| monic_polys(fp.p(), d).all(|f| !poly_rem(fp, m, &f).iter().all(|&c| c == 0)))
}

/// Remainder of `a` modulo monic `b`.
fn poly_rem(fp: &Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = fp.sub(r[shift + i], fp.mul(lead, bc));
            }
        }
        r.pop();
    }
    r
}

impl FieldSpec {
    /// Builds the field from an explicit monic modulus; irreducibility is checked.
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<FieldSpec> {
        if !is_prime(p) || p >= 1 << 16 {
            return Err(Error::NotPrime(p));
        }
        let fp = Fp::new(p);
        let k = modulus.len().saturating_sub(1);
        if k < 1 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p as u32) {
            return Err(Error::InvalidParameter(
                "modulus must be monic of degree >= 1".into(),
            ));
        }
        if !is_irreducible(&fp, &modulus) {
            return Err(Error::InvalidParameter(format!(
                "modulus {modulus:?} is reducible"
            )));
        }
        let mut f = FieldSpec {
            fp,
            k,
            modulus,
            mul_table: None,
            inv_table: None,
        };
        let q = f.order();
        if q <= TABLE_LIMIT {
            let elems: Vec<FieldElement> = f.elements().collect();
            let mut mul = vec![0u32; q * q];
            for (i, a) in elems.iter().enumerate() {
                for (j, b) in elems.iter().enumerate() {
                    mul[i * q + j] = f.index_of(&f.mul_slow(a, b)) as u32;
                }
            }
            let mut inv = vec![0u32; q];
            for i in 1..q {
                inv[i] = (1..q).find(|&j| mul[i * q + j] == 1).unwrap() as u32;
            }
            f.mul_table = Some(mul);
            f.inv_table = Some(inv);
        }
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.fp.p()
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn prime_field(&self) -> &Fp {
        &self.fp
    }

    /// `q = p^k`.
    pub fn order(&self) -> usize {
        (self.p() as usize).pow(self.k as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.scalar(1)
    }

    pub fn scalar(&self, c: u32) -> FieldElement {
        let mut coeffs = vec![0; self.k];
        coeffs[0] = c % self.p();
        FieldElement { coeffs }
    }

    /// The class of `x`; equals the scalar root when `k = 1`.
    pub fn generator(&self) -> FieldElement {
        if self.k == 1 {
            return self.scalar(self.fp.neg(self.modulus[0]));
        }
        let mut coeffs = vec![0; self.k];
        coeffs[1] = 1;
        FieldElement { coeffs }
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<FieldElement> {
        if coeffs.len() != self.k || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::InvalidParameter(format!(
                "{coeffs:?} is not an element of GF({})",
                self.order()
            )));
        }
        Ok(FieldElement { coeffs })
    }

    /// Little-endian base-`p` index, so `index_of(scalar(c)) == c`.
    pub fn index_of(&self, a: &FieldElement) -> usize {
        a.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p() as usize + c as usize)
    }

    pub fn from_index(&self, mut i: usize) -> FieldElement {
        let p = self.p() as usize;
        let coeffs = (0..self.k)
            .map(|_| {
                let c = (i % p) as u32;
                i /= p;
                c
            })
            .collect();
        FieldElement { coeffs }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|i| self.from_index(i))
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: self.fp.add_vec(&a.coeffs, &b.coeffs),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: self.fp.sub_vec(&a.coeffs, &b.coeffs),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: self.fp.neg_vec(&a.coeffs),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match &self.mul_table {
            Some(t) => {
                let q = self.order();
                self.from_index(t[self.index_of(a) * q + self.index_of(b)] as usize)
            }
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut prod = vec![0u32; 2 * self.k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = self.fp.add(prod[i + j], self.fp.mul(x, y));
            }
        }
        let mut r = poly_rem(&self.fp, &prod, &self.modulus);
        r.resize(self.k, 0);
        FieldElement { coeffs: r }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.inv_table {
            Some(t) => self.from_index(t[self.index_of(a)] as usize),
            // a^(q-2)
            None => self.pow(a, self.order() as u64 - 2),
        })
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}
