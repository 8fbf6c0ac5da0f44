//! Dense univariate polynomials over F_p, lowest degree first.

use std::fmt;

use super::field::Fp;

/// A polynomial in canonical form: no trailing zero coefficients.
/// The zero polynomial has an empty coefficient list and degree `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    modulus: u64,
    coeffs: Vec<Fp>,
}

impl Poly {
    pub fn new(coeffs: Vec<Fp>, modulus: u64) -> Self {
        let mut p = Poly { modulus, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64], modulus: u64) -> Self {
        Poly::new(coeffs.iter().map(|&c| Fp::new(c, modulus)).collect(), modulus)
    }

    pub fn zero(modulus: u64) -> Self {
        Poly { modulus, coeffs: Vec::new() }
    }

    pub fn one(modulus: u64) -> Self {
        Poly::constant(Fp::one(modulus))
    }

    pub fn constant(c: Fp) -> Self {
        Poly::new(vec![c], c.modulus())
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Fp, k: usize) -> Self {
        let mut coeffs = vec![Fp::zero(c.modulus()); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs, c.modulus())
    }

    pub fn x(modulus: u64) -> Self {
        Poly::monomial(Fp::one(modulus), 1)
    }

    /// `x - a`
    pub fn linear_root(a: Fp) -> Self {
        Poly::new(vec![-a, Fp::one(a.modulus())], a.modulus())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fp {
        self.coeffs.get(i).copied().unwrap_or(Fp::zero(self.modulus))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<Fp> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(lc.inv().unwrap()),
        }
    }

    pub fn scale(&self, c: Fp) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| a * c).collect(), self.modulus)
    }

    pub fn eval(&self, x: Fp) -> Fp {
        let mut acc = Fp::zero(self.modulus);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Poly::new(coeffs, self.modulus)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Poly::new(coeffs, self.modulus)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| -c).collect(), self.modulus)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.modulus);
        }
        let p = self.modulus;
        // accumulate in u64 lanes, reducing lazily
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a.value() * b.value()) % p;
            }
        }
        Poly::new(acc.into_iter().map(|v| Fp::from_u64(v, p)).collect(), p)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let inv_lc = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(self.modulus), self.clone());
        }
        let mut quot = vec![Fp::zero(self.modulus); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] * inv_lc;
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
        rem.truncate(dd);
        (Poly::new(quot, self.modulus), Poly::new(rem, self.modulus))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic (or zero).
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let m = self.modulus;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(m), Poly::zero(m));
        let (mut t0, mut t1) = (Poly::zero(m), Poly::one(m));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                (r0.scale(inv), s0.scale(inv), t0.scale(inv))
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        let m = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * Fp::from_u64(i as u64, m))
            .collect();
        Poly::new(coeffs, m)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Order of vanishing at `a`; `None` for the zero polynomial.
    pub fn order_at(&self, a: Fp) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let lin = Poly::linear_root(a);
        let mut q = self.clone();
        let mut k = 0;
        loop {
            let (quot, r) = q.div_rem(&lin);
            if !r.is_zero() {
                return Some(k);
            }
            q = quot;
            k += 1;
        }
    }

    /// Coefficients of `self(a + t)` in powers of `t` (Taylor shift).
    pub fn taylor_shift(&self, a: Fp) -> Poly {
        // Horner in the shifted variable
        let m = self.modulus;
        let lin = Poly::new(vec![a, Fp::one(m)], m);
        let mut acc = Poly::zero(m);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c));
        }
        acc
    }

    /// Rational roots with multiplicity, ascending by residue.
    /// Brute-force search over the field, which is fine for the desk-scale primes used here.
    pub fn rational_roots(&self) -> Vec<(Fp, u32)> {
        if self.is_zero() {
            return Vec::new();
        }
        let m = self.modulus;
        // restrict the search to the split part gcd(self, x^p - x)
        let split = self.gcd(&x_pow_mod(m, self).sub(&Poly::x(m)).rem(self));
        let mut roots = Vec::new();
        if split.is_constant() {
            return roots;
        }
        let target = split.degree().unwrap();
        for v in 0..m {
            let a = Fp::from_u64(v, m);
            if split.eval(a).is_zero() {
                roots.push((a, self.order_at(a).unwrap()));
                if roots.len() == target {
                    break;
                }
            }
        }
        roots
    }

    /// True when the polynomial is a product of linear factors over F_p.
    pub fn splits(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.rational_roots().iter().map(|r| r.1 as usize).sum::<usize>() == d,
        }
    }

    /// Squarefree part: product of the distinct monic irreducible factors
    /// (valid for polynomials whose degree is below the characteristic).
    pub fn radical(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).unwrap().monic()
    }

    /// Exact square root when `self` is the square of a polynomial.
    pub fn sqrt(&self) -> Option<Poly> {
        let m = self.modulus;
        let Some(d) = self.degree() else {
            return Some(self.clone());
        };
        if d % 2 == 1 {
            return None;
        }
        let n = d / 2;
        let lc = self.leading().unwrap().sqrt()?;
        // determine coefficients from the top down
        let mut r = vec![Fp::zero(m); n + 1];
        r[n] = lc;
        let two_lc = lc + lc;
        for k in (0..n).rev() {
            // coefficient of x^{n+k} in r^2
            let mut s = Fp::zero(m);
            for i in (k + 1)..=n {
                let j = n + k - i;
                if j > k && j <= n {
                    s += r[i] * r[j];
                }
            }
            r[k] = (self.coeff(n + k) - s) / two_lc;
        }
        let cand = Poly::new(r, m);
        (cand.mul(&cand) == *self).then_some(cand)
    }
}

/// `x^p mod f` by repeated squaring.
fn x_pow_mod(p: u64, f: &Poly) -> Poly {
    let mut base = Poly::x(p).rem(f);
    let mut acc = Poly::one(p).rem(f);
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).rem(f);
        }
        base = base.mul(&base).rem(f);
        e >>= 1;
    }
    acc
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{}", c)?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", c)?,
                (_, true) => write!(f, "x^{}", i)?,
                (_, false) => write!(f, "{}*x^{}", c, i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p11(c: &[i64]) -> Poly {
        Poly::from_i64(c, 11)
    }

    #[test]
    fn gcd_examples() {
        // gcd(x^2 - 1, x - 1) = x - 1
        assert_eq!(p11(&[-1, 0, 1]).gcd(&p11(&[-1, 1])), p11(&[-1, 1]));
        // gcd(f, 0) = monic(f)
        let f = p11(&[3, 0, 2]);
        assert_eq!(f.gcd(&Poly::zero(11)), f.monic());
        assert!(Poly::zero(11).gcd(&Poly::zero(11)).is_zero());
    }

    #[test]
    fn division_identity() {
        let a = p11(&[1, 2, 3, 4, 5, 6]);
        let b = p11(&[7, 0, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg_i64() < b.deg_i64());
    }

    #[test]
    fn xgcd_bezout() {
        let a = p11(&[1, 2, 3, 4]);
        let b = p11(&[5, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn roots_and_orders() {
        // x^5 - x = x (x-1)(x+1)(x^2+1); x^2+1 is irreducible mod 11
        let f = p11(&[0, -1, 0, 0, 0, 1]);
        let roots: Vec<u64> = f.rational_roots().iter().map(|r| r.0.value()).collect();
        assert_eq!(roots, vec![0, 1, 10]);
        assert!(!f.splits());
        let sq = p11(&[-3, 1]).pow(3).mul(&p11(&[1, 1]));
        assert_eq!(sq.rational_roots(), vec![(Fp::new(3, 11), 3), (Fp::new(10, 11), 1)]);
        assert!(sq.splits());
        assert_eq!(sq.radical(), p11(&[-3, 1]).mul(&p11(&[1, 1])));
    }

    #[test]
    fn taylor_and_sqrt() {
        let f = p11(&[0, -1, 0, 0, 0, 1]);
        let a = Fp::new(3, 11);
        let s = f.taylor_shift(a);
        assert_eq!(s.coeff(0), f.eval(a));
        assert_eq!(s.coeff(1), f.derivative().eval(a));
        let g = p11(&[2, 5, 7]);
        assert_eq!(g.mul(&g).sqrt().map(|r| r.mul(&r)), Some(g.mul(&g)));
        assert!(p11(&[1, 0, 0, 1]).sqrt().is_none());
        assert!(p11(&[2, 0, 1]).sqrt().is_none());
    }
}
