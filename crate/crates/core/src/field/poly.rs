//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients, optionally reduced modulo a prime.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    /// 0 for integer coefficients, otherwise a prime.
    modulus: u64,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize, modulus: u64) -> Self {
        Poly {
            nvars,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, modulus: u64, c: BigInt) -> Self {
        let mut p = Poly::zero(nvars, modulus);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize, modulus: u64) -> Self {
        Poly::constant(nvars, modulus, BigInt::one())
    }

    pub fn var(nvars: usize, modulus: u64, index: usize) -> Self {
        let mut mono = vec![0; nvars];
        mono[index] = 1;
        Poly::monomial(nvars, modulus, mono, BigInt::one())
    }

    pub fn monomial(nvars: usize, modulus: u64, mono: Monomial, c: BigInt) -> Self {
        let mut p = Poly::zero(nvars, modulus);
        p.add_term(mono, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    fn reduce(&self, c: BigInt) -> BigInt {
        if self.modulus == 0 {
            c
        } else {
            c.mod_floor(&BigInt::from(self.modulus))
        }
    }

    fn add_term(&mut self, mono: Monomial, c: BigInt) {
        let c = self.reduce(c);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = if self.modulus == 0 {
                    o.get() + c
                } else {
                    (o.get() + c).mod_floor(&BigInt::from(self.modulus))
                };
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Leading term in lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.nvars, self.modulus);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars, self.modulus);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        let mut out = Poly::zero(self.nvars, self.modulus);
        for (m, c1) in &self.terms {
            out.add_term(m.clone(), c1 * c);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by a monomial.
    pub fn shift(&self, mono: &[u32]) -> Poly {
        let mut out = Poly::zero(self.nvars, self.modulus);
        for (m, c) in &self.terms {
            let m2 = m.iter().zip(mono).map(|(a, b)| a + b).collect();
            out.terms.insert(m2, c.clone());
        }
        out
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut acc = first.clone();
        for m in it {
            for (a, b) in acc.iter_mut().zip(m) {
                *a = (*a).min(*b);
            }
        }
        acc
    }

    /// Divide every exponent by a monomial that divides all terms.
    pub fn unshift(&self, mono: &[u32]) -> Poly {
        let mut out = Poly::zero(self.nvars, self.modulus);
        for (m, c) in &self.terms {
            let m2 = m.iter().zip(mono).map(|(a, b)| a - b).collect();
            out.terms.insert(m2, c.clone());
        }
        out
    }

    /// gcd of the integer coefficients (integer case only; 1 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            BigInt::one()
        } else {
            g
        }
    }

    /// Exact division by an integer (caller guarantees divisibility).
    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        if self.modulus != 0 {
            let inv = mod_inverse(c, self.modulus);
            return self.scale(&inv);
        }
        let mut out = Poly::zero(self.nvars, self.modulus);
        for (m, c1) in &self.terms {
            out.terms.insert(m.clone(), c1 / c);
        }
        out
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = if self.modulus != 0 {
            Some(mod_inverse(&lc, self.modulus))
        } else {
            None
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars, self.modulus);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if rm.iter().zip(&lm).any(|(a, b)| a < b) {
                return None;
            }
            let qc = match &lc_inv {
                Some(inv) => rc * inv,
                None => {
                    let (q, r) = rc.div_rem(&lc);
                    if !r.is_zero() {
                        return None;
                    }
                    q
                }
            };
            let qm: Monomial = rm.iter().zip(&lm).map(|(a, b)| a - b).collect();
            let term = Poly::monomial(self.nvars, self.modulus, qm, qc);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    /// Lowest-terms reduction data: greatest common divisor of two
    /// univariate polynomials, normalized (positive leading coefficient and
    /// primitive over the integers, monic modulo p).
    pub fn univariate_gcd(a: &Poly, b: &Poly) -> Poly {
        debug_assert!(a.nvars == 1 && b.nvars == 1);
        let modulus = a.modulus;
        if a.is_zero() {
            return b.normalize_gcd_output();
        }
        if b.is_zero() {
            return a.normalize_gcd_output();
        }
        if modulus != 0 {
            let mut x = to_dense(a);
            let mut y = to_dense(b);
            let p = BigInt::from(modulus);
            while !y.is_empty() {
                let r = dense_rem_mod(&x, &y, &p);
                x = y;
                y = r;
            }
            return from_dense(&x, modulus).normalize_gcd_output();
        }
        let ca = a.content();
        let cb = b.content();
        let cg = ca.gcd(&cb);
        let mut x = to_dense(&a.div_scalar(&ca));
        let mut y = to_dense(&b.div_scalar(&cb));
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = dense_pseudo_rem(&x, &y);
            let r = primitive_dense(r);
            x = y;
            y = r;
        }
        from_dense(&x, 0).normalize_gcd_output().scale(&cg)
    }

    fn normalize_gcd_output(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading().unwrap().1.clone();
        if self.modulus != 0 {
            return self.scale(&mod_inverse(&lc, self.modulus));
        }
        let c = self.content();
        let p = self.div_scalar(&c);
        if lc.is_negative() {
            p.neg()
        } else {
            p
        }
    }

    pub fn cmp_terms(&self, other: &Poly) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }

    pub fn fmt_with(&self, vars: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut c = c.clone();
            if self.modulus == 0 {
                if k == 0 {
                    if c.is_negative() {
                        write!(f, "-")?;
                    }
                } else if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                c = c.abs();
            } else if k > 0 {
                write!(f, " + ")?;
            }
            let is_const = m.iter().all(|&e| e == 0);
            if is_const {
                write!(f, "{}", c)?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{}*", c)?;
            }
            let mut first = true;
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{}", vars[v])?;
                } else {
                    write!(f, "{}^{}", vars[v], e)?;
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn mod_inverse(c: &BigInt, p: u64) -> BigInt {
    let p = BigInt::from(p);
    let c = c.mod_floor(&p);
    let e = c.extended_gcd(&p);
    assert!(e.gcd.is_one(), "inverse of zero modulo p");
    e.x.mod_floor(&p)
}

fn to_dense(p: &Poly) -> Vec<BigInt> {
    let deg = p.leading().map(|(m, _)| m[0] as usize).unwrap_or(0);
    let mut out = vec![BigInt::zero(); if p.is_zero() { 0 } else { deg + 1 }];
    for (m, c) in p.terms() {
        out[m[0] as usize] = c.clone();
    }
    out
}

fn from_dense(v: &[BigInt], modulus: u64) -> Poly {
    let mut p = Poly::zero(1, modulus);
    for (i, c) in v.iter().enumerate() {
        p.add_term(vec![i as u32], c.clone());
    }
    p
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_rem_mod(x: &[BigInt], y: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = x.to_vec();
    let ly = y.len();
    let inv = {
        let e = y[ly - 1].mod_floor(p).extended_gcd(p);
        e.x.mod_floor(p)
    };
    trim(&mut r);
    while r.len() >= ly {
        let shift = r.len() - ly;
        let c = (r.last().unwrap() * &inv).mod_floor(p);
        for (i, yc) in y.iter().enumerate() {
            r[shift + i] = (&r[shift + i] - &c * yc).mod_floor(p);
        }
        trim(&mut r);
    }
    r
}

fn dense_pseudo_rem(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = x.to_vec();
    let ly = y.len();
    let lc = y[ly - 1].clone();
    trim(&mut r);
    while r.len() >= ly {
        let shift = r.len() - ly;
        let c = r.last().unwrap().clone();
        for v in r.iter_mut() {
            *v *= &lc;
        }
        for (i, yc) in y.iter().enumerate() {
            r[shift + i] -= &c * yc;
        }
        trim(&mut r);
    }
    r
}

fn primitive_dense(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}
