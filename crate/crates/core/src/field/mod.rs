//! Exact scalars: the rationals, prime fields and rational function fields.

mod parse;
pub mod poly;
mod unit;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use poly::Poly;
pub use unit::UnitDescriptor;

/// Default bound on `p` for multiplicative order enumeration in GF(p).
pub const DEFAULT_ORDER_BOUND: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseField {
    Rationals,
    PrimeField(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
    RationalFunctions { base: BaseField, vars: Vec<String> },
}

/// Result of a multiplicative order computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

/// A fraction of polynomials. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalFunction {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElement {
    Rational(BigRational),
    Residue(u64),
    Fraction(RationalFunction),
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Residue(r) => *r == 0,
            FieldElement::Fraction(f) => f.num.is_zero(),
        }
    }
}

/// A field together with the precomputed data needed for arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    desc: FieldDescriptor,
    /// Characteristic (0 or a prime).
    p: u64,
    /// Least primitive root modulo `p` (unused in characteristic 0).
    generator: u64,
    vars: Vec<String>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn least_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root")
}

impl Field {
    pub fn new(desc: FieldDescriptor) -> Result<Self> {
        let check_p = |p: u64| -> Result<u64> {
            if !is_prime(p) {
                return Err(Error::InvalidField(format!("{p} is not prime")));
            }
            if p >= 1 << 31 {
                return Err(Error::InvalidField(format!("prime {p} too large")));
            }
            Ok(p)
        };
        let (p, vars) = match &desc {
            FieldDescriptor::Rationals => (0, Vec::new()),
            FieldDescriptor::PrimeField(p) => (check_p(*p)?, Vec::new()),
            FieldDescriptor::RationalFunctions { base, vars } => {
                let p = match base {
                    BaseField::Rationals => 0,
                    BaseField::PrimeField(p) => check_p(*p)?,
                };
                for (i, v) in vars.iter().enumerate() {
                    if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return Err(Error::InvalidField(format!("bad variable name {v:?}")));
                    }
                    if v.chars().next().unwrap().is_ascii_digit() {
                        return Err(Error::InvalidField(format!("bad variable name {v:?}")));
                    }
                    if vars[..i].contains(v) {
                        return Err(Error::InvalidField(format!("duplicate variable {v}")));
                    }
                }
                (p, vars.clone())
            }
        };
        let generator = if p == 0 { 0 } else { least_primitive_root(p) };
        Ok(Field {
            desc,
            p,
            generator,
            vars,
        })
    }

    pub fn rationals() -> Self {
        Field::new(FieldDescriptor::Rationals).unwrap()
    }

    pub fn prime(p: u64) -> Result<Self> {
        Field::new(FieldDescriptor::PrimeField(p))
    }

    /// ℚ(vars...).
    pub fn rational_functions(vars: &[&str]) -> Result<Self> {
        Field::new(FieldDescriptor::RationalFunctions {
            base: BaseField::Rationals,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// The fixed generator of GF(p)^×.
    pub fn generator(&self) -> Option<u64> {
        (self.p != 0).then_some(self.generator)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    fn is_function_field(&self) -> bool {
        matches!(self.desc, FieldDescriptor::RationalFunctions { .. })
    }

    pub fn name(&self) -> String {
        match &self.desc {
            FieldDescriptor::Rationals => "Q".into(),
            FieldDescriptor::PrimeField(p) => format!("GF({p})"),
            FieldDescriptor::RationalFunctions { base, vars } => {
                let b = match base {
                    BaseField::Rationals => "Q".to_string(),
                    BaseField::PrimeField(p) => format!("GF({p})"),
                };
                format!("{b}({})", vars.join(","))
            }
        }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn from_bigint(&self, n: BigInt) -> FieldElement {
        match &self.desc {
            FieldDescriptor::Rationals => FieldElement::Rational(BigRational::from_integer(n)),
            FieldDescriptor::PrimeField(p) => {
                FieldElement::Residue(n.mod_floor(&BigInt::from(*p)).to_u64().unwrap())
            }
            FieldDescriptor::RationalFunctions { .. } => FieldElement::Fraction(RationalFunction {
                num: Poly::constant(self.nvars(), self.p, n),
                den: Poly::one(self.nvars(), self.p),
            }),
        }
    }

    pub fn int(&self, n: i64) -> FieldElement {
        self.from_bigint(BigInt::from(n))
    }

    pub fn zero(&self) -> FieldElement {
        self.int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    /// The transcendental generator with the given name.
    pub fn var(&self, name: &str) -> Result<FieldElement> {
        let idx = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?} in {}", self.name())))?;
        Ok(FieldElement::Fraction(RationalFunction {
            num: Poly::var(self.nvars(), self.p, idx),
            den: Poly::one(self.nvars(), self.p),
        }))
    }

    /// A rational number `n/d` mapped into the field.
    pub fn ratio(&self, n: i64, d: i64) -> Result<FieldElement> {
        let d = self.int(d);
        self.div(&self.int(n), &d)
    }

    pub fn is_zero(&self, x: &FieldElement) -> bool {
        x.is_zero()
    }

    pub fn is_one(&self, x: &FieldElement) -> bool {
        *x == self.one()
    }

    fn normalize_fraction(&self, num: Poly, den: Poly) -> RationalFunction {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Poly::one(self.nvars(), self.p),
            };
        }
        let (mut num, mut den) = (num, den);
        if self.nvars() == 1 && !(den.is_constant()) {
            let g = Poly::univariate_gcd(&num, &den);
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let mn = num.monomial_content();
        let md = den.monomial_content();
        let common: Vec<u32> = mn.iter().zip(&md).map(|(a, b)| (*a).min(*b)).collect();
        if common.iter().any(|&e| e > 0) {
            num = num.unshift(&common);
            den = den.unshift(&common);
        }
        let lc = den.leading().unwrap().1.clone();
        if self.p != 0 {
            if !lc.is_one() {
                let inv = poly::mod_inverse(&lc, self.p);
                num = num.scale(&inv);
                den = den.scale(&inv);
            }
        } else {
            let g = num.content().gcd(&den.content());
            if !g.is_one() {
                num = num.div_scalar(&g);
                den = den.div_scalar(&g);
            }
            if lc.is_negative() {
                num = num.neg();
                den = den.neg();
            }
        }
        RationalFunction { num, den }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x + y),
            (FieldElement::Residue(x), FieldElement::Residue(y)) => {
                FieldElement::Residue((x + y) % self.p)
            }
            (FieldElement::Fraction(x), FieldElement::Fraction(y)) => {
                if x.den == y.den {
                    return FieldElement::Fraction(
                        self.normalize_fraction(x.num.add(&y.num), x.den.clone()),
                    );
                }
                let num = x.num.mul(&y.den).add(&y.num.mul(&x.den));
                FieldElement::Fraction(self.normalize_fraction(num, x.den.mul(&y.den)))
            }
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match a {
            FieldElement::Rational(x) => FieldElement::Rational(-x),
            FieldElement::Residue(x) => FieldElement::Residue((self.p - x) % self.p),
            FieldElement::Fraction(x) => FieldElement::Fraction(RationalFunction {
                num: x.num.neg(),
                den: x.den.clone(),
            }),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x * y),
            (FieldElement::Residue(x), FieldElement::Residue(y)) => {
                FieldElement::Residue(((*x as u128 * *y as u128) % self.p as u128) as u64)
            }
            (FieldElement::Fraction(x), FieldElement::Fraction(y)) => {
                if x.num.is_zero() || y.num.is_zero() {
                    return self.zero();
                }
                FieldElement::Fraction(
                    self.normalize_fraction(x.num.mul(&y.num), x.den.mul(&y.den)),
                )
            }
            _ => panic!("mixed field elements"),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::NotAUnit);
        }
        Ok(match a {
            FieldElement::Rational(x) => FieldElement::Rational(x.recip()),
            FieldElement::Residue(x) => FieldElement::Residue(pow_mod(*x, self.p - 2, self.p)),
            FieldElement::Fraction(x) => {
                FieldElement::Fraction(self.normalize_fraction(x.den.clone(), x.num.clone()))
            }
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        if let FieldElement::Residue(x) = base {
            return Ok(FieldElement::Residue(pow_mod(x, e, self.p)));
        }
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        Ok(acc)
    }

    /// Whether the element lies in the prime/base subfield, and if so its value there.
    fn constant_value(&self, a: &FieldElement) -> Option<FieldElement> {
        match a {
            FieldElement::Fraction(f) => {
                let (nm, nc) = f.num.leading()?;
                let (dm, dc) = f.den.leading()?;
                if nm != dm {
                    return None;
                }
                let check = f.num.scale(dc).sub(&f.den.scale(nc));
                if !check.is_zero() {
                    return None;
                }
                if self.p == 0 {
                    Some(FieldElement::Rational(BigRational::new(nc.clone(), dc.clone())))
                } else {
                    let inv = poly::mod_inverse(dc, self.p);
                    let v = (nc * inv).mod_floor(&BigInt::from(self.p));
                    Some(FieldElement::Residue(v.to_u64().unwrap()))
                }
            }
            other => Some(other.clone()),
        }
    }

    /// Least n ≥ 1 with aⁿ = 1, or infinite.
    pub fn multiplicative_order(&self, a: &FieldElement) -> Result<Order> {
        self.multiplicative_order_bounded(a, DEFAULT_ORDER_BOUND)
    }

    pub fn multiplicative_order_bounded(&self, a: &FieldElement, bound: u64) -> Result<Order> {
        if a.is_zero() {
            return Err(Error::NotAUnit);
        }
        let Some(c) = self.constant_value(a) else {
            return Ok(Order::Infinite);
        };
        match c {
            FieldElement::Rational(r) => Ok(if r.is_one() {
                Order::Finite(1)
            } else if r == -BigRational::one() {
                Order::Finite(2)
            } else {
                Order::Infinite
            }),
            FieldElement::Residue(x) => {
                if self.p >= bound {
                    return Err(Error::OrderBoundExceeded {
                        p: self.p,
                        bound,
                    });
                }
                let mut acc = x;
                let mut n = 1u64;
                while acc != 1 {
                    acc = ((acc as u128 * x as u128) % self.p as u128) as u64;
                    n += 1;
                }
                Ok(Order::Finite(n))
            }
            FieldElement::Fraction(_) => unreachable!(),
        }
    }

    /// Order of the cyclic group of roots of unity usable in discrete units:
    /// 2 in characteristic 0, p − 1 over GF(p) and its function fields.
    pub fn root_group_order(&self) -> u64 {
        if self.p == 0 {
            2
        } else {
            self.p - 1
        }
    }

    pub fn format(&self, a: &FieldElement) -> String {
        struct D<'a>(&'a Field, &'a FieldElement);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                match self.1 {
                    FieldElement::Rational(r) => {
                        if r.denom().is_one() {
                            write!(f, "{}", r.numer())
                        } else {
                            write!(f, "{}/{}", r.numer(), r.denom())
                        }
                    }
                    FieldElement::Residue(x) => write!(f, "{x}"),
                    FieldElement::Fraction(x) => {
                        let vars = &self.0.vars;
                        let simple_num = x.num.num_terms() <= 1;
                        if x.den.is_constant() && x.den.constant_term().is_one() {
                            return x.num.fmt_with(vars, f);
                        }
                        if simple_num {
                            x.num.fmt_with(vars, f)?;
                        } else {
                            write!(f, "(")?;
                            x.num.fmt_with(vars, f)?;
                            write!(f, ")")?;
                        }
                        write!(f, "/(")?;
                        x.den.fmt_with(vars, f)?;
                        write!(f, ")")
                    }
                }
            }
        }
        D(self, a).to_string()
    }

    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        parse::parse_element(self, s)
    }

    /// Evaluate ζ_N^e · ∏ q_v^{m_v}.
    pub fn unit_eval(&self, u: &UnitDescriptor) -> Result<FieldElement> {
        let c = self.root_exponent(u)?;
        let mut value = if self.p == 0 {
            if c % 2 == 0 {
                self.one()
            } else {
                self.int(-1)
            }
        } else {
            self.from_bigint(BigInt::from(pow_mod(self.generator, c, self.p)))
        };
        for (var, &e) in &u.mono {
            if e == 0 {
                continue;
            }
            let q = self.var(var)?;
            value = self.mul(&value, &self.pow(&q, e)?);
        }
        Ok(value)
    }

    /// Exponent c with ζ_N^e = ω^c for the canonical generator ω of the root group.
    pub fn root_exponent(&self, u: &UnitDescriptor) -> Result<u64> {
        let n = u.zeta_order;
        if n == 0 {
            return Err(Error::InvalidArgument("zeta_order must be positive".into()));
        }
        let l = self.root_group_order();
        let unrealizable = || Error::UnrealizableRoot {
            order: n,
            field: self.name(),
        };
        if self.p == 2 {
            // −1 = 1; only orders 1 and 2 are accepted.
            return if n <= 2 { Ok(0) } else { Err(unrealizable()) };
        }
        if l % n != 0 {
            return Err(unrealizable());
        }
        let e = u.zeta_exp.rem_euclid(n as i64) as u64;
        Ok((e * (l / n)) % l)
    }

    pub fn unit_order(&self, u: &UnitDescriptor) -> Result<Order> {
        for (v, &e) in &u.mono {
            if !self.vars.contains(v) {
                return Err(Error::Parse(format!("unknown variable {v:?} in {}", self.name())));
            }
            if e != 0 {
                return Ok(Order::Infinite);
            }
        }
        let c = self.root_exponent(u)?;
        let l = self.root_group_order().max(1);
        Ok(Order::Finite(l / c.gcd(&l)))
    }

    /// True when the element is a nonconstant rational function.
    pub fn is_transcendental(&self, a: &FieldElement) -> bool {
        self.is_function_field() && self.constant_value(a).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_of_minus_one_over_rationals() {
        let k = Field::rationals();
        assert_eq!(k.multiplicative_order(&k.int(-1)).unwrap(), Order::Finite(2));
        assert_eq!(k.multiplicative_order(&k.int(1)).unwrap(), Order::Finite(1));
        assert_eq!(k.multiplicative_order(&k.int(3)).unwrap(), Order::Infinite);
    }

    #[test]
    fn order_of_transcendental_is_infinite() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let q = k.var("q").unwrap();
        assert_eq!(k.multiplicative_order(&q).unwrap(), Order::Infinite);
        let c = k.div(&q, &q).unwrap();
        assert_eq!(k.multiplicative_order(&c).unwrap(), Order::Finite(1));
        let m = k.div(&k.neg(&q), &q).unwrap();
        assert_eq!(k.multiplicative_order(&m).unwrap(), Order::Finite(2));
    }

    #[test]
    fn order_in_gf7() {
        let k = Field::prime(7).unwrap();
        assert_eq!(k.multiplicative_order(&k.int(3)).unwrap(), Order::Finite(6));
        assert_eq!(k.multiplicative_order(&k.int(2)).unwrap(), Order::Finite(3));
        assert_eq!(k.multiplicative_order(&k.int(0)), Err(Error::NotAUnit));
    }

    #[test]
    fn order_bound_enforced() {
        let k = Field::prime(101).unwrap();
        assert_eq!(
            k.multiplicative_order_bounded(&k.int(3), 100),
            Err(Error::OrderBoundExceeded { p: 101, bound: 100 })
        );
    }

    #[test]
    fn generator_is_least_primitive_root() {
        assert_eq!(Field::prime(7).unwrap().generator(), Some(3));
        assert_eq!(Field::prime(5).unwrap().generator(), Some(2));
        assert_eq!(Field::prime(3).unwrap().generator(), Some(2));
    }

    #[test]
    fn rejects_composite_and_duplicate_vars() {
        assert!(Field::prime(9).is_err());
        assert!(Field::rational_functions(&["q", "q"]).is_err());
        assert!(Field::rational_functions(&[""]).is_err());
    }

    #[test]
    fn unit_eval_examples() {
        let q = Field::rationals();
        let u = UnitDescriptor::root(2, 1);
        assert_eq!(q.unit_eval(&u).unwrap(), q.int(-1));
        assert!(q.unit_eval(&UnitDescriptor::root(4, 1)).is_err());

        let f = Field::rational_functions(&["q"]).unwrap();
        let u = UnitDescriptor::monomial(&[("q", 3)]);
        let qv = f.var("q").unwrap();
        assert_eq!(f.unit_eval(&u).unwrap(), f.pow(&qv, 3).unwrap());

        let g7 = Field::prime(7).unwrap();
        assert_eq!(g7.unit_eval(&UnitDescriptor::root(6, 2)).unwrap(), g7.int(2));
    }

    #[test]
    fn rational_function_equality_by_cross_multiplication() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let q = k.var("q").unwrap();
        let a = k.div(&k.mul(&q, &q), &q).unwrap();
        assert_eq!(a, q);
        let one = k.one();
        let x = k.sub(&k.mul(&q, &q), &one);
        let y = k.add(&q, &one);
        assert_eq!(k.div(&x, &y).unwrap(), k.sub(&q, &one));
    }

    #[test]
    fn formatting() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let q = k.var("q").unwrap();
        let e = k.div(&k.sub(&k.pow(&q, 2).unwrap(), &k.int(3)), &q).unwrap();
        assert_eq!(k.format(&e), "(q^2 - 3)/(q)");
        assert_eq!(Field::rationals().format(&Field::rationals().ratio(-2, 4).unwrap()), "-1/2");
    }
}
