//! Table-driven arithmetic in GF(q) for prime powers q <= 32.
//!
//! An element of GF(p^e) is encoded as the integer whose base-p digits are
//! the coefficients of its polynomial representative, constant term first.
//! Extension fields use the Conway polynomial for (p, e), so the tables and
//! everything generated from them are identical from run to run.

use crate::error::{Error, Result};

/// Conway polynomials for the non-prime fields we support: (p, e, low-order
/// coefficients of the monic polynomial, constant term first).
const CONWAY: &[(usize, u32, &[usize])] = &[
    (2, 2, &[1, 1]),          // x^2 + x + 1
    (2, 3, &[1, 1, 0]),       // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0]),    // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0]), // x^5 + x^2 + 1
    (3, 2, &[2, 2]),          // x^2 + 2x + 2
    (3, 3, &[1, 2, 0]),       // x^3 + 2x + 1
    (5, 2, &[2, 4]),          // x^2 + 4x + 2
];

pub const MAX_ORDER: usize = 32;

#[derive(Debug, Clone)]
pub struct FiniteField {
    q: usize,
    p: usize,
    e: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Splits `q` as `p^e`, if it is a prime power.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
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

impl FiniteField {
    pub fn new(q: usize) -> Result<FiniteField> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower { q })?;
        if q > MAX_ORDER {
            return Err(Error::UnsupportedOrder {
                what: "finite field",
                q,
            });
        }
        let modulus: &[usize] = if e == 1 {
            &[]
        } else {
            CONWAY
                .iter()
                .find(|(pp, ee, _)| *pp == p && *ee == e)
                .map(|(_, _, c)| *c)
                .ok_or(Error::UnsupportedOrder {
                    what: "finite field",
                    q,
                })?
        };

        let digits = |mut x: usize| -> Vec<usize> {
            let mut d = vec![0; e as usize];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let encode = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u8;

                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0usize; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (e as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    // x^e = -(modulus low terms)
                    for (i, m) in modulus.iter().enumerate() {
                        let idx = deg - e as usize + i;
                        prod[idx] = (prod[idx] + c * (p - m % p)) % p;
                    }
                }
                mul[a * q + b] = encode(&prod[..e as usize]) as u8;
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..q)
                    .find(|&b| mul[a * q + b] == 1)
                    .ok_or(Error::UnsupportedOrder {
                        what: "finite field (reducible modulus)",
                        q,
                    })? as u8;
            }
        }
        Ok(FiniteField {
            q,
            p,
            e,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a] as usize)
    }

    pub fn pow(&self, a: usize, mut exp: usize) -> usize {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.q
    }
}
