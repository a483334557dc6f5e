use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A unit in discrete form: ζ_N^e · ∏ q_v^{m_v}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitDescriptor {
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

impl Default for UnitDescriptor {
    fn default() -> Self {
        UnitDescriptor::one()
    }
}

impl UnitDescriptor {
    pub fn one() -> Self {
        UnitDescriptor {
            zeta_order: 1,
            zeta_exp: 0,
            mono: BTreeMap::new(),
        }
    }

    pub fn minus_one() -> Self {
        UnitDescriptor::root(2, 1)
    }

    pub fn root(order: u64, exp: i64) -> Self {
        UnitDescriptor {
            zeta_order: order,
            zeta_exp: exp,
            mono: BTreeMap::new(),
        }
    }

    pub fn monomial(exps: &[(&str, i64)]) -> Self {
        UnitDescriptor {
            zeta_order: 1,
            zeta_exp: 0,
            mono: exps.iter().map(|(v, e)| (v.to_string(), *e)).collect(),
        }
    }

    pub fn var(name: &str) -> Self {
        UnitDescriptor::monomial(&[(name, 1)])
    }

    pub fn mul(&self, other: &UnitDescriptor) -> UnitDescriptor {
        let n = self.zeta_order.lcm(&other.zeta_order);
        let e = self.zeta_exp * (n / self.zeta_order) as i64
            + other.zeta_exp * (n / other.zeta_order) as i64;
        let mut mono = self.mono.clone();
        for (v, m) in &other.mono {
            *mono.entry(v.clone()).or_insert(0) += m;
        }
        mono.retain(|_, m| *m != 0);
        UnitDescriptor {
            zeta_order: n,
            zeta_exp: e.rem_euclid(n as i64),
            mono,
        }
    }

    pub fn pow(&self, k: i64) -> UnitDescriptor {
        let n = self.zeta_order as i64;
        UnitDescriptor {
            zeta_order: self.zeta_order,
            zeta_exp: (self.zeta_exp * k).rem_euclid(n),
            mono: self
                .mono
                .iter()
                .map(|(v, m)| (v.clone(), m * k))
                .filter(|(_, m)| *m != 0)
                .collect(),
        }
    }

    /// True when no transcendental variable appears with nonzero exponent.
    pub fn is_root_of_unity_form(&self) -> bool {
        self.mono.values().all(|&m| m == 0)
    }
}
