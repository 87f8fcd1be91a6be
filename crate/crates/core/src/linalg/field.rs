use rand::Rng;

use crate::error::{Error, Result};

/// The Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

/// An element of a prime field, always stored reduced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldScalar(u64);

impl FieldScalar {
    pub const ZERO: FieldScalar = FieldScalar(0);
    pub const ONE: FieldScalar = FieldScalar(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Arithmetic modulo a word-sized prime `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: DEFAULT_PRIME }
    }
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 62 {
            return Err(Error::precondition(format!("prime {p} must be below 2^62")));
        }
        if !is_prime(p) {
            return Err(Error::precondition(format!("{p} is not prime")));
        }
        Ok(Field { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn element(&self, v: u64) -> FieldScalar {
        FieldScalar(v % self.p)
    }

    pub fn from_i64(&self, v: i64) -> FieldScalar {
        let r = v.rem_euclid(self.p as i64);
        FieldScalar(r as u64)
    }

    /// Uniform sample from the whole field.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldScalar {
        FieldScalar(rng.gen_range(0..self.p))
    }

    #[inline]
    pub fn add(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        let s = a.0 + b.0;
        FieldScalar(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        FieldScalar(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: FieldScalar) -> FieldScalar {
        if a.0 == 0 {
            a
        } else {
            FieldScalar(self.p - a.0)
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        FieldScalar(((a.0 as u128 * b.0 as u128) % self.p as u128) as u64)
    }

    pub fn pow(&self, a: FieldScalar, mut e: u64) -> FieldScalar {
        let mut base = a;
        let mut acc = FieldScalar::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: FieldScalar) -> FieldScalar {
        assert!(!a.is_zero(), "inverse of zero");
        self.pow(a, self.p - 2)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
