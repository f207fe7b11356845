//! Arithmetic in GF(p^e).
//!
//! Elements are stored as `u32` in `0..q`: the element with coefficient
//! vector `(c_0, .., c_{e-1})` is encoded as `c_0 + c_1 p + .. + c_{e-1} p^{e-1}`.
//! Zero is `0` and one is `1` for every field. Multiplication goes through
//! discrete log tables built from a primitive element found at construction.

use crate::error::{Error, Result};

/// Largest field order built unless a caller asks for more.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 16;

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

/// Splits `q = p^e` with `p` prime, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, coefficients low to high, length `e + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FiniteField {
    /// GF(p^e) with the default order cap.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        Self::with_max_order(p, e, DEFAULT_MAX_ORDER)
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, e)
    }

    pub fn with_max_order(p: u64, e: u32, max: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= max && q <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge { p, e, max })?;
        let p = p as u32;
        let q = q as u32;
        let modulus = smallest_irreducible(p, e);

        let mut field = FiniteField {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_log_tables();
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus polynomial, coefficients from `x^0` up to `x^e`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Coefficient vector of `a`, low degree first.
    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut rest = a;
        for _ in 0..self.e {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let l = (self.log[a as usize] + self.log[b as usize]) % n;
        self.exp[l as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = (n - self.log[a as usize]) % n;
        Some(self.exp[l as usize])
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (k % n)) % n;
        self.exp[l as usize]
    }

    /// Whether `a` is a nonzero square.
    pub fn is_square(&self, a: u32) -> bool {
        a != 0 && (self.p == 2 || self.log[a as usize].is_multiple_of(2))
    }

    /// Polynomial product reduced by the modulus; used before the log
    /// tables exist.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let ca = self.coefficients(a);
        let cb = self.coefficients(b);
        let mut prod = vec![0u32; 2 * self.e as usize];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let rem = poly_rem(&prod, &self.modulus, self.p);
        let mut digits = rem;
        digits.resize(self.e as usize, 0);
        self.encode(&digits)
    }

    fn build_log_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; n.max(1)];
        let mut log = vec![0u32; self.q as usize];
        for g in 1..self.q {
            let mut x = 1u32;
            let mut ord = 0usize;
            loop {
                exp[ord] = x;
                ord += 1;
                x = self.mul_slow(x, g);
                if x == 1 || ord > n {
                    break;
                }
            }
            if ord == n {
                for (i, &v) in exp.iter().enumerate() {
                    log[v as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients encode `code`.
fn monic_from_code(code: u64, deg: u32, p: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(deg as usize + 1);
    let mut rest = code;
    for _ in 0..deg {
        out.push((rest % p as u64) as u32);
        rest /= p as u64;
    }
    out.push(1);
    out
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for code in 0..(p as u64).pow(d) {
            let g = monic_from_code(code, d, p);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `e`, ordering candidates by the
/// integer `c_0 + c_1 p + .. + c_{e-1} p^{e-1}` of their lower coefficients.
pub fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    (0..(p as u64).pow(e))
        .map(|code| monic_from_code(code, e, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
