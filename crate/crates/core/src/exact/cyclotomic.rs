//! The cyclotomic fields ℚ(ζ_n), represented as ℚ[x] modulo the n-th
//! cyclotomic polynomial Φ_n.
//!
//! Elements carry their own order and promote to the least common multiple
//! on binary operations (`ζ_m = ζ_{lcm}^{lcm/m}`), so values of different
//! orders mix freely. The coefficient vector has length φ(n) — the power
//! basis `1, ζ, …, ζ^{φ(n)−1}` — making "is this rational?" a tail check.
//!
//! Only small orders ever occur here (twice the exponent denominators of
//! finite-group characters), so Φ_n is computed by the divisor recursion
//! `x^n − 1 = Π_{d|n} Φ_d(x)` and cached.

use super::laurent::Field;
use super::Rational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

/// An element of ℚ(ζ_n) in the power basis modulo Φ_n.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    /// Length φ(order); `c[i]` multiplies `ζ^i`.
    c: Vec<Rational>,
}

impl Cyclotomic {
    /// The rational `r` as an order-1 element.
    pub fn from_rat(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            c: vec![r],
        }
    }

    /// The root of unity `ζ_order^power`.
    pub fn zeta(order: u32, power: i64) -> Self {
        assert!(order >= 1, "order must be positive");
        let p = power.rem_euclid(order as i64) as usize;
        let mut raw = vec![Rational::zero(); p + 1];
        raw[p] = Rational::one();
        Self::reduce(order, raw)
    }

    /// `e^{2πi·a}` for a rational `a`: the root of unity of order
    /// `denominator(a)` raised to `numerator(a)`.
    pub fn from_turns(a: &Rational) -> Self {
        let den = a.denom().to_u32().expect("root order fits u32");
        let num = a.numer().to_i64().expect("root exponent fits i64");
        Self::zeta(den, num)
    }

    /// The field order this element is represented in.
    pub fn order(&self) -> u32 {
        self.order
    }

    fn reduce(order: u32, mut raw: Vec<Rational>) -> Self {
        let phi = phi_of(order) as usize;
        if raw.len() > phi {
            let modulus = cyclotomic_poly(order);
            poly_rem_in_place(&mut raw, &modulus);
        }
        raw.resize(phi, Rational::zero());
        Cyclotomic { order, c: raw }
    }

    fn promote(&self, order: u32) -> Self {
        if self.order == order {
            return self.clone();
        }
        debug_assert!(order % self.order == 0);
        let step = (order / self.order) as usize;
        let mut raw = vec![Rational::zero(); (self.c.len().max(1) - 1) * step + 1];
        for (i, coeff) in self.c.iter().enumerate() {
            if !coeff.is_zero() {
                raw[i * step] = coeff.clone();
            }
        }
        Self::reduce(order, raw)
    }

    fn common_order(&self, other: &Self) -> u32 {
        (self.order as u64).lcm(&(other.order as u64)) as u32
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Φ_n (irreducible over ℚ, so every nonzero element is invertible).
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let modulus = cyclotomic_poly(self.order);
        let inv = poly_mod_inverse(&self.c, &modulus);
        Self::reduce(self.order, inv)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let n = self.common_order(other);
        self.promote(n).c == other.promote(n).c
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_rat(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_rat(Rational::one())
    }
    fn is_one(&self) -> bool {
        self.as_rational().map(|r| r.is_one()).unwrap_or(false)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        let n = self.common_order(&rhs);
        let mut a = self.promote(n);
        let b = rhs.promote(n);
        for (x, y) in a.c.iter_mut().zip(b.c.iter()) {
            *x += y;
        }
        a
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Self {
        Cyclotomic {
            order: self.order,
            c: self.c.into_iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        let n = self.common_order(&rhs);
        let a = self.promote(n);
        let b = rhs.promote(n);
        if a.is_zero() || b.is_zero() {
            return Cyclotomic {
                order: n,
                c: vec![Rational::zero(); phi_of(n) as usize],
            };
        }
        let mut raw = vec![Rational::zero(); a.c.len() + b.c.len()];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Self::reduce(n, raw)
    }
}

impl Div for Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl Field for Cyclotomic {
    fn from_rational(r: &Rational) -> Self {
        Self::from_rat(r.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", x)?;
            } else if i == 1 {
                write!(f, "{}*zeta{}", x, self.order)?;
            } else {
                write!(f, "{}*zeta{}^{}", x, self.order, i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Euler's totient.
fn phi_of(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Dense ascending coefficients of Φ_n, cached per order.
fn cyclotomic_poly(n: u32) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<Rational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n − 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![Rational::zero(); n as usize + 1];
    p[0] = -Rational::one();
    p[n as usize] = Rational::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            p = poly_div_exact(&p, &phi_d);
        }
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Exact dense division (remainder known to vanish).
fn poly_div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r: Vec<Rational> = a.to_vec();
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db)];
    for k in (db..r.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        q[k - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let idx = k - db + j;
            let delta = &c * bj;
            r[idx] -= delta;
        }
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

/// In-place remainder of `a` modulo the monic `m`. Each pass zeroes the
/// current leading coefficient and pops it; vanishing leaders just pop.
fn poly_rem_in_place(a: &mut Vec<Rational>, m: &[Rational]) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let k = a.len() - 1;
        let c = a[k].clone();
        if !c.is_zero() {
            for (j, mj) in m.iter().enumerate() {
                let idx = k - dm + j;
                let delta = &c * mj;
                a[idx] -= delta;
            }
        }
        a.pop();
    }
}

/// Inverse of `a` modulo the monic irreducible `m`, by extended Euclid.
fn poly_mod_inverse(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    // Classic iterative extended gcd on (m, a): maintain r, new_r and the
    // Bezout coefficient of `a` only.
    let trim = |v: &mut Vec<Rational>| {
        while v.last().map(|x| x.is_zero()).unwrap_or(false) {
            v.pop();
        }
    };
    let mut r0: Vec<Rational> = m.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    trim(&mut r1);
    let mut t0: Vec<Rational> = vec![];
    let mut t1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, rem) = poly_divmod(&r0, &r1);
        let mut t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        trim(&mut t2);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    // r0 is a nonzero constant (gcd, m irreducible): scale t0 by its inverse.
    debug_assert_eq!(r0.len(), 1);
    let inv = Rational::one() / r0[0].clone();
    t0.iter().map(|x| x * &inv).collect()
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r: Vec<Rational> = a.to_vec();
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        let c = &r[k] / &lb;
        if !c.is_zero() {
            q[k - db] = c.clone();
            for (j, bj) in b.iter().enumerate() {
                let delta = &c * bj;
                r[k - db + j] -= delta;
            }
        }
    }
    while r.last().map(|x| x.is_zero()).unwrap_or(false) {
        r.pop();
    }
    r.truncate(db);
    (q, r)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn square_roots_of_unity() {
        let m1 = Cyclotomic::zeta(2, 1);
        assert_eq!(m1.as_rational().unwrap(), rat_int(-1));
        assert!(Cyclotomic::zeta(2, 2).is_one());
    }

    #[test]
    fn cube_root_relations() {
        let z = Cyclotomic::zeta(3, 1);
        // 1 + ζ + ζ² = 0.
        let sum = Cyclotomic::one() + z.clone() + z.clone() * z.clone();
        assert!(sum.is_zero());
        assert!((z.clone() * z.clone() * z.clone()).is_one());
        assert!(z.as_rational().is_none());
    }

    #[test]
    fn mixed_orders_promote() {
        // ζ6² = ζ3.
        let a = Cyclotomic::zeta(6, 2);
        let b = Cyclotomic::zeta(3, 1);
        assert_eq!(a, b);
        // ζ6³ = −1.
        assert_eq!(Cyclotomic::zeta(6, 3).as_rational().unwrap(), rat_int(-1));
    }

    #[test]
    fn division_round_trips() {
        let z = Cyclotomic::zeta(12, 5) + Cyclotomic::from_rat(rat(2, 3));
        let w = Cyclotomic::zeta(12, 7) - Cyclotomic::from_rat(rat_int(4));
        let q = z.clone() / w.clone();
        assert_eq!(q * w, z);
    }

    #[test]
    fn from_turns_reduction() {
        // e^{2πi·(3/6)} = e^{πi}... 3/6 reduces to 1/2 inside Rational.
        let a = Cyclotomic::from_turns(&rat(1, 2));
        assert_eq!(a.as_rational().unwrap(), rat_int(-1));
        let b = Cyclotomic::from_turns(&rat(-1, 3));
        assert_eq!(b, Cyclotomic::zeta(3, 2));
    }
}
