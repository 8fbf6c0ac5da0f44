//! Prime field arithmetic.
//!
//! Elements carry their modulus so they can be used without a separate
//! context object. The modulus is kept below 2^32 so products fit in a `u64`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// An element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fp {
    residue: u64,
    modulus: u64,
}

/// Largest modulus accepted by [`Fp`].
pub const MAX_MODULUS: u64 = u32::MAX as u64;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        debug_assert!((2..=MAX_MODULUS).contains(&modulus));
        let m = modulus as i64;
        Fp { residue: value.rem_euclid(m) as u64, modulus }
    }

    pub fn from_u64(value: u64, modulus: u64) -> Self {
        Fp { residue: value % modulus, modulus }
    }

    pub fn zero(modulus: u64) -> Self {
        Fp { residue: 0, modulus }
    }

    pub fn one(modulus: u64) -> Self {
        Fp { residue: 1 % modulus, modulus }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.residue
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn is_one(self) -> bool {
        self.residue == 1
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // extended Euclid on (residue, modulus)
        let (mut r0, mut r1) = (self.modulus as i128, self.residue as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp::new(s0.rem_euclid(self.modulus as i128) as i64, self.modulus))
    }

    pub fn is_square(self) -> bool {
        self.is_zero() || self.pow((self.modulus - 1) / 2).is_one()
    }

    /// A square root by Tonelli-Shanks, or `None` for non-residues.
    /// Returns the root with the smaller residue.
    pub fn sqrt(self) -> Option<Self> {
        let p = self.modulus;
        if self.is_zero() {
            return Some(self);
        }
        if !self.is_square() {
            return None;
        }
        let root = if p % 4 == 3 {
            self.pow((p + 1) / 4)
        } else {
            let mut q = p - 1;
            let mut s = 0u32;
            while q.is_multiple_of(2) {
                q /= 2;
                s += 1;
            }
            let mut z = Fp::from_u64(2, p);
            while z.is_square() {
                z += Fp::one(p);
            }
            let mut m = s;
            let mut c = z.pow(q);
            let mut t = self.pow(q);
            let mut r = self.pow(q.div_ceil(2));
            while !t.is_one() {
                let mut i = 0u32;
                let mut t2 = t;
                while !t2.is_one() {
                    t2 *= t2;
                    i += 1;
                }
                let b = c.pow(1u64 << (m - i - 1));
                m = i;
                c = b * b;
                t *= c;
                r *= b;
            }
            r
        };
        let other = -root;
        Some(if other.residue < root.residue { other } else { root })
    }

    /// Signed representative in (-p/2, p/2].
    pub fn signed(self) -> i64 {
        if self.residue > self.modulus / 2 {
            self.residue as i64 - self.modulus as i64
        } else {
            self.residue as i64
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.residue + rhs.residue;
        Fp { residue: if s >= self.modulus { s - self.modulus } else { s }, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = if self.residue >= rhs.residue {
            self.residue - rhs.residue
        } else {
            self.residue + self.modulus - rhs.residue
        };
        Fp { residue: s, modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { residue: self.residue * rhs.residue % self.modulus, modulus: self.modulus }
    }
}

impl Div for Fp {
    type Output = Fp;
    /// Panics on division by zero.
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        if self.residue == 0 {
            self
        } else {
            Fp { residue: self.modulus - self.residue, modulus: self.modulus }
        }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}
