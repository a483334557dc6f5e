//! TOML input: a field plus a QCI, a twisted product of two QCIs, or explicit structure constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::{qci_construct, truncated_polynomial, BasisElement, GradedAlgebra, QciSpec, TwistedProduct};
use crate::error::{Error, Result};
use crate::field::{BaseField, Field, FieldDescriptor, UnitDescriptor};
use crate::grading::{Degree, Twist};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub field: FieldSection,
    pub algebra: AlgebraSection,
    pub twist: Option<TwistSection>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    /// "rationals", "prime" or "rational-functions"
    pub kind: String,
    pub p: Option<u64>,
    #[serde(default)]
    pub vars: Vec<String>,
}

/// One commutator q_ij, indices 1-based with i < j.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QEntry {
    pub i: usize,
    pub j: usize,
    #[serde(default = "one")]
    pub zeta_order: u64,
    #[serde(default)]
    pub zeta_exp: i64,
    #[serde(default)]
    pub mono: BTreeMap<String, i64>,
}

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSection {
    pub exponents: Vec<usize>,
    #[serde(default)]
    pub q: Vec<QEntry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub degree: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    /// label ↦ coefficient
    pub terms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSection {
    #[serde(rename = "type")]
    pub kind: String,
    pub exponents: Option<Vec<usize>>,
    pub q: Option<Vec<QEntry>>,
    pub left: Option<FactorSection>,
    pub right: Option<FactorSection>,
    pub rank: Option<usize>,
    pub basis: Option<Vec<BasisEntry>>,
    pub unit: Option<String>,
    pub products: Option<Vec<ProductEntry>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSection {
    pub matrix: Vec<Vec<UnitDescriptor>>,
}

/// A parsed input, ready for computation.
#[derive(Clone, Debug)]
pub enum Input {
    Qci(QciSpec),
    Tensor { left: QciSpec, right: QciSpec, twist: Twist },
    Explicit(Arc<GradedAlgebra>),
}

pub fn parse_config(text: &str) -> Result<Config> {
    toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))
}

fn build_field(f: &FieldSection) -> Result<Field> {
    let desc = match f.kind.as_str() {
        "rationals" => FieldDescriptor::Rationals,
        "prime" => FieldDescriptor::PrimeField(f.p.ok_or_else(|| Error::Parse("field.p is required for kind = \"prime\"".into()))?),
        "rational-functions" => FieldDescriptor::RationalFunctions {
            base: f.p.map_or(BaseField::Rationals, BaseField::PrimeField),
            vars: f.vars.clone(),
        },
        other => return Err(Error::Parse(format!("unknown field kind {other:?}"))),
    };
    if f.kind != "rational-functions" && !f.vars.is_empty() {
        return Err(Error::Parse("field.vars only applies to rational-functions".into()));
    }
    if f.kind == "rationals" && f.p.is_some() {
        return Err(Error::Parse("field.p does not apply to rationals".into()));
    }
    Field::new(desc)
}

fn build_qci(k: &Field, exponents: &[usize], q: &[QEntry], order_bound: u64) -> Result<QciSpec> {
    let mut pairs = Vec::with_capacity(q.len());
    for e in q {
        if e.i == 0 || e.j == 0 {
            return Err(Error::Parse("commutator indices are 1-based".into()));
        }
        let u = UnitDescriptor {
            zeta_order: e.zeta_order,
            zeta_exp: e.zeta_exp,
            mono: e.mono.clone(),
        };
        k.multiplicative_order_bounded(&k.unit_eval(&u)?, order_bound)?;
        pairs.push((e.i - 1, e.j - 1, u));
    }
    QciSpec::new(k.clone(), exponents.to_vec(), pairs)
}

fn build_explicit(k: &Field, a: &AlgebraSection) -> Result<GradedAlgebra> {
    let missing = |what: &str| Error::Parse(format!("algebra.{what} is required for type = \"explicit\""));
    let rank = a.rank.ok_or_else(|| missing("rank"))?;
    let entries = a.basis.as_ref().ok_or_else(|| missing("basis"))?;
    let mut basis = Vec::with_capacity(entries.len());
    for e in entries {
        if e.degree.len() != rank {
            return Err(Error::Parse(format!("degree of {} has the wrong length", e.label)));
        }
        basis.push(BasisElement {
            label: e.label.clone(),
            degree: Degree(e.degree.clone()),
        });
    }
    let index = |l: &str| {
        basis
            .iter()
            .position(|b| b.label == l)
            .ok_or_else(|| Error::Parse(format!("unknown basis label {l:?}")))
    };
    let unit = match &a.unit {
        Some(l) => index(l)?,
        None => 0,
    };
    let d = basis.len();
    let mut products = vec![Vec::new(); d * d];
    for p in a.products.as_deref().unwrap_or(&[]) {
        let (u, v) = (index(&p.left)?, index(&p.right)?);
        let mut terms = Vec::new();
        for (l, c) in &p.terms {
            let c = k.parse(c)?;
            if !c.is_zero() {
                terms.push((index(l)?, c));
            }
        }
        terms.sort_by_key(|(i, _)| *i);
        products[u * d + v] = terms;
    }
    // products with the unit are implied
    for w in 0..d {
        products[unit * d + w] = vec![(w, k.one())];
        products[w * d + unit] = vec![(w, k.one())];
    }
    GradedAlgebra::new(k.clone(), rank, basis, unit, products)
}

impl Input {
    /// `order_bound` caps multiplicative-order enumeration over GF(p).
    pub fn from_config(c: &Config, order_bound: u64) -> Result<Input> {
        let k = build_field(&c.field)?;
        let a = &c.algebra;
        let unexpected = |fields: &[(&str, bool)]| -> Result<()> {
            match fields.iter().find(|(_, present)| *present) {
                Some((name, _)) => Err(Error::Parse(format!("algebra.{name} does not apply to type = {:?}", a.kind))),
                None => Ok(()),
            }
        };
        let explicit_fields = [
            ("rank", a.rank.is_some()),
            ("basis", a.basis.is_some()),
            ("unit", a.unit.is_some()),
            ("products", a.products.is_some()),
        ];
        match a.kind.as_str() {
            "qci" => {
                unexpected(&[("left", a.left.is_some()), ("right", a.right.is_some())])?;
                unexpected(&explicit_fields)?;
                if c.twist.is_some() {
                    return Err(Error::Parse("[twist] only applies to type = \"tensor\"".into()));
                }
                let exps = a.exponents.as_ref().ok_or_else(|| Error::Parse("algebra.exponents is required".into()))?;
                Ok(Input::Qci(build_qci(&k, exps, a.q.as_deref().unwrap_or(&[]), order_bound)?))
            }
            "tensor" => {
                unexpected(&[("exponents", a.exponents.is_some()), ("q", a.q.is_some())])?;
                unexpected(&explicit_fields)?;
                let side = |f: &Option<FactorSection>, name: &str| -> Result<QciSpec> {
                    let f = f.as_ref().ok_or_else(|| Error::Parse(format!("algebra.{name} is required")))?;
                    build_qci(&k, &f.exponents, &f.q, order_bound)
                };
                let (left, right) = (side(&a.left, "left")?, side(&a.right, "right")?);
                let t = c.twist.as_ref().ok_or_else(|| Error::Parse("[twist] is required for type = \"tensor\"".into()))?;
                if t.matrix.len() != left.n() || t.matrix.iter().any(|r| r.len() != right.n()) {
                    return Err(Error::Parse(format!(
                        "twist.matrix must be {}x{}",
                        left.n(),
                        right.n()
                    )));
                }
                let twist = Twist::from_units(&k, t.matrix.clone())?;
                Ok(Input::Tensor { left, right, twist })
            }
            "explicit" => {
                unexpected(&[
                    ("exponents", a.exponents.is_some()),
                    ("q", a.q.is_some()),
                    ("left", a.left.is_some()),
                    ("right", a.right.is_some()),
                ])?;
                Ok(Input::Explicit(Arc::new(build_explicit(&k, a)?)))
            }
            other => Err(Error::Parse(format!("unknown algebra type {other:?}"))),
        }
    }

    pub fn field(&self) -> &Field {
        match self {
            Input::Qci(s) => s.field(),
            Input::Tensor { left, .. } => left.field(),
            Input::Explicit(a) => a.field(),
        }
    }

    /// The QCI this input presents, if any. A twisted product of QCIs with unit twist
    /// entries is again a QCI: right variable j commutes past left variable i with T_ij.
    pub fn as_qci(&self) -> Result<Option<QciSpec>> {
        match self {
            Input::Qci(s) => Ok(Some(s.clone())),
            Input::Explicit(_) => Ok(None),
            Input::Tensor { left, right, twist } => {
                let (m, n) = (left.n(), right.n());
                let mut exps = left.exponents().to_vec();
                exps.extend_from_slice(right.exponents());
                let mut pairs = Vec::new();
                for i in 0..m {
                    for j in i + 1..m {
                        pairs.push((i, j, left.q(i, j).clone()));
                    }
                    for j in 0..n {
                        let Some(u) = twist.unit(i, j) else { return Ok(None) };
                        pairs.push((i, m + j, u.clone()));
                    }
                }
                for i in 0..n {
                    for j in i + 1..n {
                        pairs.push((m + i, m + j, right.q(i, j).clone()));
                    }
                }
                Ok(Some(QciSpec::new(left.field().clone(), exps, pairs)?))
            }
        }
    }

    /// The algebra, built once.
    pub fn algebra(&self) -> Result<Arc<GradedAlgebra>> {
        match self {
            Input::Qci(s) => Ok(Arc::new(qci_construct(s)?)),
            Input::Tensor { .. } => Ok(self.twisted_product()?.expect("tensor input").algebra.clone()),
            Input::Explicit(a) => Ok(a.clone()),
        }
    }

    /// A factorization Λ ⊗ᵗ Γ: the given one for tensor inputs, and
    /// QCI(x₁..x_{n−1}) ⊗ᵗ k[x_n]/(x_n^{a_n}) for a QCI with n ≥ 2.
    pub fn twisted_product(&self) -> Result<Option<TwistedProduct>> {
        match self {
            Input::Qci(s) if s.n() >= 2 => {
                let n = s.n();
                let left = Arc::new(qci_construct(&s.truncate(n - 1))?);
                let right = Arc::new(truncated_polynomial(s.field(), s.exponents()[n - 1])?);
                Ok(Some(TwistedProduct::new(left, right, s.last_variable_twist()?)?))
            }
            Input::Tensor { left, right, twist } => {
                let l = Arc::new(qci_construct(left)?);
                let r = Arc::new(qci_construct(right)?);
                Ok(Some(TwistedProduct::new(l, r, twist.clone())?))
            }
            _ => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_ORDER_BOUND;

    fn load(s: &str) -> Result<Input> {
        Input::from_config(&parse_config(s)?, DEFAULT_ORDER_BOUND)
    }

    #[test]
    fn qci_over_function_field() {
        let i = load(
            r#"
[field]
kind = "rational-functions"
vars = ["q"]
[algebra]
type = "qci"
exponents = [2, 2]
[[algebra.q]]
i = 1
j = 2
mono = { q = 1 }
"#,
        )
        .unwrap();
        assert_eq!(i.algebra().unwrap().dim(), 4);
        assert!(i.twisted_product().unwrap().is_some());
    }

    #[test]
    fn unknown_key_is_named() {
        let err = load("[field]\nkind = \"rationals\"\ncolour = 3\n[algebra]\ntype = \"qci\"\nexponents = [2]\n").unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");
    }

    #[test]
    fn tensor_matches_the_merged_qci() {
        let i = load(
            r#"
[field]
kind = "prime"
p = 5
[algebra]
type = "tensor"
[algebra.left]
exponents = [2]
[algebra.right]
exponents = [3]
[twist]
matrix = [[{ zeta_order = 4, zeta_exp = 1 }]]
"#,
        )
        .unwrap();
        let merged = qci_construct(&i.as_qci().unwrap().unwrap()).unwrap();
        assert_eq!(merged.dim(), i.algebra().unwrap().dim());
    }

    #[test]
    fn explicit_dual_numbers() {
        let i = load(
            r#"
[field]
kind = "rationals"
[algebra]
type = "explicit"
rank = 1
basis = [{ label = "1", degree = [0] }, { label = "x", degree = [1] }]
products = []
"#,
        )
        .unwrap();
        let a = i.algebra().unwrap();
        assert!(a.check_associativity().is_ok());
        assert_eq!(a.truncated_polynomial_exponent(), Some(2));
    }
}
