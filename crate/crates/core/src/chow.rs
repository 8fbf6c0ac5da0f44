//! The subring of `H^*(Jac(X) × P^g, Q)` generated by the theta class `t`
//! and the hyperplane class `h`, with exact rational coefficients.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

pub type Q = Ratio<i64>;

/// `Σ c_{a,b} t^a h^b` truncated at `t^{g+1} = h^{g+1} = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct ChowClass {
    g: usize,
    coeffs: Vec<Vec<Q>>,
}

impl ChowClass {
    pub fn zero(g: usize) -> Self {
        ChowClass { g, coeffs: vec![vec![Q::from_integer(0); g + 1]; g + 1] }
    }

    pub fn constant(g: usize, v: Q) -> Self {
        let mut c = ChowClass::zero(g);
        c.coeffs[0][0] = v;
        c
    }

    pub fn monomial(g: usize, a: usize, b: usize, v: Q) -> Self {
        let mut c = ChowClass::zero(g);
        if a <= g && b <= g {
            c.coeffs[a][b] = v;
        }
        c
    }

    pub fn t(g: usize) -> Self {
        ChowClass::monomial(g, 1, 0, Q::from_integer(1))
    }

    pub fn h(g: usize) -> Self {
        ChowClass::monomial(g, 0, 1, Q::from_integer(1))
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// Coefficient of `t^a h^b`.
    pub fn coeff(&self, a: usize, b: usize) -> Q {
        if a > self.g || b > self.g {
            return Q::from_integer(0);
        }
        self.coeffs[a][b]
    }

    /// Homogeneous part of degree `k` as `(a, b, coefficient)` with `a + b = k`.
    pub fn graded_part(&self, k: usize) -> Vec<(usize, usize, Q)> {
        (0..=k.min(self.g))
            .filter(|&a| k - a <= self.g)
            .map(|a| (a, k - a, self.coeffs[a][k - a]))
            .filter(|x| x.2 != Q::from_integer(0))
            .collect()
    }

    pub fn add(&self, o: &ChowClass) -> ChowClass {
        assert_eq!(self.g, o.g, "classes on different spaces");
        let mut out = self.clone();
        for a in 0..=self.g {
            for b in 0..=self.g {
                out.coeffs[a][b] += o.coeffs[a][b];
            }
        }
        out
    }

    pub fn sub(&self, o: &ChowClass) -> ChowClass {
        self.add(&o.scale(Q::from_integer(-1)))
    }

    pub fn scale(&self, v: Q) -> ChowClass {
        let mut out = self.clone();
        out.coeffs.iter_mut().flatten().for_each(|c| *c *= v);
        out
    }

    pub fn mul(&self, o: &ChowClass) -> ChowClass {
        assert_eq!(self.g, o.g, "classes on different spaces");
        let g = self.g;
        let mut out = ChowClass::zero(g);
        for a1 in 0..=g {
            for b1 in 0..=g {
                let x = self.coeffs[a1][b1];
                if x == Q::from_integer(0) {
                    continue;
                }
                for a2 in 0..=g - a1 {
                    for b2 in 0..=g - b1 {
                        out.coeffs[a1 + a2][b1 + b2] += x * o.coeffs[a2][b2];
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> ChowClass {
        (0..e).fold(ChowClass::constant(self.g, Q::from_integer(1)), |acc, _| acc.mul(self))
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for k in 0..=2 * self.g {
            for (a, b, c) in self.graded_part(k) {
                let mono = match (a, b) {
                    (0, 0) => String::new(),
                    _ => {
                        let tp = match a {
                            0 => String::new(),
                            1 => "t".into(),
                            _ => format!("t^{}", a),
                        };
                        let hp = match b {
                            0 => String::new(),
                            1 => "h".into(),
                            _ => format!("h^{}", b),
                        };
                        [tp, hp].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("*")
                    }
                };
                terms.push(if mono.is_empty() { c.to_string() } else { format!("{}*{}", c, mono) });
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `exp(h)` truncated.
pub fn exp_h(g: usize) -> ChowClass {
    let mut c = ChowClass::zero(g);
    for k in 0..=g {
        c.coeffs[0][k] = Q::new(1, factorial(k));
    }
    c
}

/// `r ((g-1) + (g-1) e^h + t (1 - e^h))`.
pub fn ch_tft(g: usize, r: usize) -> ChowClass {
    let gm1 = Q::from_integer(g as i64 - 1);
    let e = exp_h(g);
    let one = ChowClass::constant(g, Q::from_integer(1));
    ChowClass::constant(g, gm1)
        .add(&e.scale(gm1))
        .add(&ChowClass::t(g).mul(&one.sub(&e)))
        .scale(Q::from_integer(r as i64))
}

/// `(h / (1 - e^{-h}))^{g+1}`; the abelian factor contributes 1.
pub fn todd(g: usize) -> ChowClass {
    // (1 - e^{-h}) / h = Σ (-1)^k h^k / (k+1)!
    let s: Vec<Q> = (0..=g).map(|k| Q::new(if k % 2 == 0 { 1 } else { -1 }, factorial(k + 1))).collect();
    // invert the power series
    let mut inv = vec![Q::from_integer(0); g + 1];
    inv[0] = Q::from_integer(1) / s[0];
    for n in 1..=g {
        let acc: Q = (1..=n).map(|k| s[k] * inv[n - k]).sum();
        inv[n] = -acc / s[0];
    }
    let mut base = ChowClass::zero(g);
    for (k, v) in inv.into_iter().enumerate() {
        base.coeffs[0][k] = v;
    }
    base.pow(g as u32 + 1)
}

/// `g! · coefficient of t^g h^g`.
pub fn integrate(cls: &ChowClass) -> Q {
    cls.coeff(cls.g, cls.g) * Q::from_integer(factorial(cls.g))
}

/// `(p, rg·C(g-1, p-1))` for `1 <= p <= g`.
pub fn cohomology_table(g: usize, r: usize) -> Vec<(usize, u64)> {
    (1..=g).map(|p| (p, (r * g) as u64 * crate::transform::binomial(g as i64 - 1, p as i64 - 1))).collect()
}

/// Alternating sum of the table against the HRR integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HrrCheck {
    pub g: usize,
    pub r: usize,
    pub degree_zero: i64,
    pub alternating_sum: i64,
    pub integral: String,
    pub consistent: bool,
}

pub fn hrr_check(g: usize, r: usize) -> HrrCheck {
    let ch = ch_tft(g, r);
    let integral = integrate(&ch.mul(&todd(g)));
    let alt: i64 = cohomology_table(g, r).iter().map(|&(p, d)| if p % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
    let deg0 = ch.coeff(0, 0);
    HrrCheck {
        g,
        r,
        degree_zero: deg0.to_integer(),
        alternating_sum: alt,
        integral: integral.to_string(),
        consistent: integral == Q::from_integer(alt) && deg0 == Q::from_integer(((2 * g - 2) * r) as i64),
    }
}
