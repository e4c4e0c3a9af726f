//! Arithmetic in GF(q) for primes and small prime powers.
//!
//! Elements are the integers `0..q`, read as base-`p` digit vectors
//! (coefficients of a polynomial of degree `< m`, least significant first).
//! Multiplication goes through log/exp tables over a primitive element.

use crate::error::{precondition, Result};

/// Monic irreducible polynomials for the non-prime field orders supported,
/// as coefficient lists from the constant term up (leading 1 omitted).
const MODULI: &[(usize, usize, &[usize])] = &[
    (4, 2, &[1, 1]),
    (8, 2, &[1, 1, 0]),
    (16, 2, &[1, 1, 0, 0]),
    (32, 2, &[1, 0, 1, 0, 0]),
    (64, 2, &[1, 1, 0, 1, 1, 0]),
    (128, 2, &[1, 1, 0, 0, 0, 0, 0]),
    (9, 3, &[2, 2]),
    (27, 3, &[1, 2, 0]),
    (81, 3, &[2, 0, 0, 2]),
    (25, 5, &[2, 4]),
    (125, 5, &[3, 3, 0]),
    (49, 7, &[3, 6]),
    (121, 11, &[2, 7]),
];

/// Largest prime order accepted (keeps tables small).
pub const MAX_PRIME: usize = 4093;

/// `Some((p, m))` with `q = p^m` when `q` is a prime power.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut m = 0;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

#[derive(Clone, Debug)]
pub struct Field {
    q: usize,
    p: usize,
    m: usize,
    exp: Vec<usize>,
    log: Vec<usize>,
}

impl Field {
    pub fn new(q: usize) -> Result<Field> {
        let Some((p, m)) = prime_power(q) else {
            return precondition(format!("q = {q} is not a prime power"));
        };
        let m = m as usize;
        let modulus: Vec<usize> = if m == 1 {
            if q > MAX_PRIME {
                return precondition(format!("prime q = {q} exceeds {MAX_PRIME}"));
            }
            vec![]
        } else {
            match MODULI.iter().find(|e| e.0 == q) {
                Some(e) => e.2.to_vec(),
                None => {
                    return precondition(format!(
                        "no irreducible polynomial tabulated for q = {q} (prime powers up to 128)"
                    ))
                }
            }
        };
        let mul = |a: usize, b: usize| -> usize {
            if m == 1 {
                return a * b % p;
            }
            let (da, db) = (digits(a, p, m), digits(b, p, m));
            let mut prod = vec![0usize; 2 * m - 1];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // Reduce using x^m = -(modulus lower terms).
            for deg in (m..prod.len()).rev() {
                let c = prod[deg];
                if c != 0 {
                    prod[deg] = 0;
                    for (i, &f) in modulus.iter().enumerate() {
                        let d = deg - m + i;
                        prod[d] = (prod[d] + (p - c) * f) % p;
                    }
                }
            }
            undigits(&prod[..m], p)
        };
        for g in 2.min(q - 1)..q {
            let mut exp = Vec::with_capacity(q - 1);
            let mut x = 1;
            loop {
                exp.push(x);
                x = mul(x, g);
                if x == 1 || exp.len() >= q {
                    break;
                }
            }
            if exp.len() == q - 1 {
                let mut log = vec![usize::MAX; q];
                for (i, &v) in exp.iter().enumerate() {
                    log[v] = i;
                }
                return Ok(Field { q, p, m, exp, log });
            }
        }
        unreachable!("a finite field always has a primitive element")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.m {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.m {
            out += (self.p - a % self.p) % self.p * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no inverse");
        self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
    }

    /// `g^i` for the fixed primitive element `g`.
    pub fn pow_primitive(&self, i: usize) -> usize {
        self.exp[i % (self.q - 1)]
    }

    /// The multiplicative subgroup of order `d` (requires `d | q - 1`).
    pub fn subgroup(&self, d: usize) -> Vec<usize> {
        assert!(d >= 1 && (self.q - 1).is_multiple_of(d));
        let step = (self.q - 1) / d;
        (0..d).map(|j| self.exp[j * step]).collect()
    }
}

fn digits(mut a: usize, p: usize, m: usize) -> Vec<usize> {
    (0..m)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime(n: usize) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    /// Trial division by every monic polynomial of degree 1..=m/2.
    fn irreducible(p: usize, low: &[usize]) -> bool {
        let m = low.len();
        let mut f: Vec<usize> = low.to_vec();
        f.push(1);
        for d in 1..=m / 2 {
            for code in 0..p.pow(d as u32) {
                let mut g = digits(code, p, d);
                g.push(1);
                // Remainder of f by monic g.
                let mut r = f.clone();
                for deg in (d..=m).rev() {
                    let c = r[deg];
                    if c != 0 {
                        for (i, &gi) in g.iter().enumerate() {
                            let k = deg - d + i;
                            r[k] = (r[k] + (p - c) * gi) % p;
                        }
                    }
                }
                if r.iter().all(|&x| x == 0) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn tabulated_moduli_are_irreducible() {
        for &(q, p, low) in MODULI {
            assert_eq!(p.pow(low.len() as u32), q);
            assert!(irreducible(p, low), "q = {q}");
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(Field::new(6).is_err());
        assert!(Field::new(243).is_err());
        assert!(is_prime(4093));
    }

    #[test]
    fn field_axioms_on_small_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49] {
            let f = Field::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_orders() {
        let f = Field::new(7).unwrap();
        let mut h = f.subgroup(2);
        h.sort();
        assert_eq!(h, vec![1, 6]);
        assert_eq!(f.subgroup(6).len(), 6);
    }
}
