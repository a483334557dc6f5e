//! Structural verification suites, each comparing two independent computations.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{GradedAlgebra, QciSpec, TwistedProduct};
use crate::cohomology::hochschild::{bimodule_resolution, hochschild_kunneth_check};
use crate::cohomology::kunneth::{ext_kunneth_check, module_resolution};
use crate::cohomology::qci::extring_presentation_check;
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::hom::{graded_hom, tensor_morphism, twisted_endo_check};
use crate::module::{identity_matrix, module_tensor, shift_isomorphism, GradedModule};
use crate::resolution::minimal_resolution;
use crate::total::{twisted_total_resolution, TensorKind};

pub const SUITES: [&str; 7] = ["shifts", "hom", "endo", "kunneth-ext", "kunneth-hh", "extring", "exactness"];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    /// reason the suite had nothing to check
    pub skipped: Option<String>,
    pub details: Value,
}

impl SuiteReport {
    fn done(suite: &str, passed: bool, details: Value) -> Self {
        SuiteReport {
            suite: suite.into(),
            passed,
            skipped: None,
            details,
        }
    }

    fn skip(suite: &str, why: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            passed: true,
            skipped: Some(why.into()),
            details: Value::Null,
        }
    }
}

/// What a suite may use: a factorization, a QCI presentation and the algebra itself.
pub struct SuiteInput {
    pub algebra: Arc<GradedAlgebra>,
    pub tp: Option<TwistedProduct>,
    pub qci: Option<QciSpec>,
    pub trunc: usize,
    pub allow_large: bool,
}

fn test_modules(alg: &Arc<GradedAlgebra>) -> Result<Vec<(&'static str, GradedModule)>> {
    Ok(vec![
        ("k", GradedModule::trivial(alg.clone())?),
        ("regular", GradedModule::regular(alg.clone())),
    ])
}

/// A few nonzero degrees of the given rank.
fn sample_degrees(rank: usize) -> Vec<Degree> {
    let mut out = vec![Degree::unit(rank, 0), Degree::unit(rank, rank - 1).scaled(-2)];
    if rank > 1 {
        out.push(&Degree::unit(rank, 0).scaled(3) + &Degree::unit(rank, 1));
    }
    out
}

/// M⟨a⟩ ⊗ᵗ N⟨b⟩ → (M ⊗ᵗ N)⟨a,b⟩ is a module isomorphism; the untwisted identity as a control.
pub fn shifts_suite(tp: &TwistedProduct) -> Result<SuiteReport> {
    let k = tp.algebra.field();
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut control_failures = 0;
    for (ml, m) in test_modules(&tp.left)? {
        for (nl, n) in test_modules(&tp.right)? {
            let base = module_tensor(tp, &m, &n)?;
            for a in sample_degrees(tp.left.grading_rank()) {
                for b in sample_degrees(tp.right.grading_rank()) {
                    let src = module_tensor(tp, &m.shift(&a)?, &n.shift(&b)?)?;
                    let tgt = base.shift(&a.concat(&b))?;
                    let zero = Degree::zero(tgt.algebra().grading_rank());
                    let f = shift_isomorphism(tp, &m, &n, &a)?;
                    checked += 1;
                    if !src.is_module_map(&tgt, &f, &zero) {
                        failures.push(json!({"m": ml, "n": nl, "a": a.0, "b": b.0}));
                    }
                    if !src.is_module_map(&tgt, &identity_matrix(k, src.dim()), &zero) {
                        control_failures += 1;
                    }
                }
            }
        }
    }
    Ok(SuiteReport::done(
        "shifts",
        failures.is_empty(),
        json!({"checked": checked, "failures": failures, "identity_control_failures": control_failures}),
    ))
}

/// dim grHom(M⊗N, M'⊗N')_{(a,b)} = dim grHom(M,M')_a · dim grHom(N,N')_b, and every φ⊗ψ is a module map.
pub fn hom_suite(tp: &TwistedProduct) -> Result<SuiteReport> {
    let lm = test_modules(&tp.left)?;
    let rm = test_modules(&tp.right)?;
    let rank = tp.left.grading_rank();
    let mut mismatches = Vec::new();
    let mut bad_maps = 0;
    let mut rows = 0;
    for (m_name, m) in &lm {
        for (m2_name, m2) in &lm {
            let left = graded_hom(m, m2)?;
            for (n_name, n) in &rm {
                for (n2_name, n2) in &rm {
                    let right = graded_hom(n, n2)?;
                    let src = module_tensor(tp, m, n)?;
                    let tgt = module_tensor(tp, m2, n2)?;
                    let whole = graded_hom(&src, &tgt)?;
                    let mut keys: BTreeSet<Degree> = whole.dims().into_keys().collect();
                    for a in left.dims().keys() {
                        for b in right.dims().keys() {
                            keys.insert(a.concat(b));
                        }
                    }
                    for ab in keys {
                        let (a, b) = ab.split(rank);
                        let prod = left.dims().get(&a).copied().unwrap_or(0) * right.dims().get(&b).copied().unwrap_or(0);
                        let got = whole.dims().get(&ab).copied().unwrap_or(0);
                        rows += 1;
                        if prod != got {
                            mismatches.push(json!({
                                "pair": [m_name, m2_name, n_name, n2_name],
                                "degree": ab.0, "product": prod, "tensor": got
                            }));
                        }
                    }
                    for (a, phis) in &left.pieces {
                        for (b, psis) in &right.pieces {
                            for phi in phis {
                                for psi in psis {
                                    let h = tensor_morphism(tp, m, n, phi, a, psi)?;
                                    if !src.is_module_map(&tgt, &h, &a.concat(b)) {
                                        bad_maps += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(SuiteReport::done(
        "hom",
        mismatches.is_empty() && bad_maps == 0,
        json!({"degrees_compared": rows, "mismatches": mismatches, "non_module_maps": bad_maps}),
    ))
}

/// End(M ⊗ᵗ N) = End(M) ⊗ᵗ End(N) for M = k ⊕ Λ, N = k ⊕ Γ.
pub fn endo_suite(tp: &TwistedProduct) -> Result<SuiteReport> {
    let gen = |alg: &Arc<GradedAlgebra>| -> Result<GradedModule> {
        GradedModule::direct_sum(&[GradedModule::trivial(alg.clone())?, GradedModule::regular(alg.clone())])
    };
    let r = twisted_endo_check(tp, &gen(&tp.left)?, &gen(&tp.right)?)?;
    Ok(SuiteReport::done("endo", r.passed(), serde_json::to_value(&r).expect("serializable")))
}

/// Ext Künneth on k ⊗ᵗ k: bidegree dimensions and the t̃ product rule, with the sign-dropped control.
pub fn kunneth_ext_suite(tp: &TwistedProduct, trunc: usize) -> Result<SuiteReport> {
    let m = GradedModule::trivial(tp.left.clone())?;
    let n = GradedModule::trivial(tp.right.clone())?;
    let r = ext_kunneth_check(tp, &m, &n, trunc)?;
    let failures: Vec<_> = r.dims.iter().filter(|d| d.convolution != d.tensor).collect();
    Ok(SuiteReport::done(
        "kunneth-ext",
        r.passed(),
        json!({
            "rows": r.dims.len(),
            "dimension_mismatches": failures,
            "products_checked": r.products_checked,
            "product_failures": r.product_failures,
            "negative_control_failures": r.negative_control_failures,
        }),
    ))
}

pub fn kunneth_hh_suite(tp: &TwistedProduct, trunc: usize, allow_large: bool) -> Result<SuiteReport> {
    let r = hochschild_kunneth_check(tp, trunc, allow_large)?;
    Ok(SuiteReport::done(
        "kunneth-hh",
        r.passed(),
        json!({
            "left_kernel": r.left_kernel,
            "right_kernel": r.right_kernel,
            "rows": r.rows.len(),
            "mismatches": r.mismatches(),
        }),
    ))
}

/// The verdict uses the relation families as printed; the corrected family is reported alongside.
pub fn extring_suite(spec: &QciSpec, trunc: usize) -> Result<SuiteReport> {
    let r = extring_presentation_check(spec, trunc.max(4))?;
    let failing = |v: &[crate::cohomology::qci::RelationCheck]| -> Vec<Value> {
        v.iter().filter(|c| !c.holds).map(|c| serde_json::to_value(c).expect("serializable")).collect()
    };
    Ok(SuiteReport::done(
        "extring",
        r.passed(),
        json!({
            "printed_pass": r.printed_pass(),
            "printed_failures": failing(&r.printed),
            "corrected_pass": r.corrected_pass(),
            "corrected_failures": failing(&r.corrected),
            "spanning_pass": r.spanning_pass(),
            "spanning": r.spanning,
        }),
    ))
}

/// Tensor products of resolutions are resolutions, for modules and for bimodules.
pub fn exactness_suite(input: &SuiteInput) -> Result<SuiteReport> {
    let trunc = input.trunc;
    let mut checks = Vec::new();
    let k_mod = GradedModule::trivial(input.algebra.clone())?;
    let minimal = minimal_resolution(input.algebra.clone(), &k_mod, trunc)?;
    checks.push(json!({"complex": "minimal", "exact": minimal.is_exact(), "minimal": minimal.is_minimal()}));
    if let Some(tp) = &input.tp {
        let p = module_resolution(&tp.left, &GradedModule::trivial(tp.left.clone())?, trunc)?;
        let q = module_resolution(&tp.right, &GradedModule::trivial(tp.right.clone())?, trunc)?;
        let tot = twisted_total_resolution(tp, &p, &q, TensorKind::Module, trunc)?;
        checks.push(json!({
            "complex": "module-total",
            "exact": tot.is_exact(),
            "betti_agree": tot.betti() == minimal.betti(),
        }));
        let guard_ok = input.allow_large || tp.algebra.dim() <= crate::cohomology::hochschild::HH_DIM_GUARD;
        if guard_ok {
            let p = bimodule_resolution(&tp.left, trunc, input.allow_large)?.with_algebra(tp.left_envelope())?;
            let q = bimodule_resolution(&tp.right, trunc, input.allow_large)?.with_algebra(tp.right_envelope())?;
            let tot = twisted_total_resolution(tp, &p, &q, TensorKind::Bimodule, trunc)?;
            checks.push(json!({"complex": "bimodule-total", "exact": tot.is_exact()}));
        }
    }
    let passed = checks.iter().all(|c| {
        c.as_object()
            .expect("object")
            .iter()
            .all(|(key, v)| key == "complex" || v.as_bool() == Some(true))
    });
    Ok(SuiteReport::done("exactness", passed, json!({"checks": checks})))
}

pub fn run_suite(name: &str, input: &SuiteInput) -> Result<SuiteReport> {
    let no_tp = "input has no twisted-product factorization";
    match (name, &input.tp) {
        ("shifts", Some(tp)) => shifts_suite(tp),
        ("hom", Some(tp)) => hom_suite(tp),
        ("endo", Some(tp)) => endo_suite(tp),
        ("kunneth-ext", Some(tp)) => kunneth_ext_suite(tp, input.trunc),
        ("kunneth-hh", Some(tp)) => kunneth_hh_suite(tp, input.trunc, input.allow_large),
        ("shifts" | "hom" | "endo" | "kunneth-ext" | "kunneth-hh", None) => Ok(SuiteReport::skip(name, no_tp)),
        ("extring", _) => match &input.qci {
            Some(spec) => extring_suite(spec, input.trunc),
            None => Ok(SuiteReport::skip(name, "input is not a QCI")),
        },
        ("exactness", _) => exactness_suite(input),
        _ => Err(Error::InvalidArgument(format!("unknown suite {name:?}"))),
    }
}

/// Expand "all" and validate names.
pub fn suite_names(selector: &str) -> Result<Vec<&'static str>> {
    if selector == "all" {
        return Ok(SUITES.to_vec());
    }
    SUITES
        .iter()
        .find(|s| **s == selector)
        .map(|s| vec![*s])
        .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {selector:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{qci_construct, truncated_polynomial};
    use crate::{Field, Twist, UnitDescriptor};

    fn minus_one_square(k: &Field) -> TwistedProduct {
        let g = Arc::new(truncated_polynomial(k, 2).unwrap());
        let t = Twist::from_units(k, vec![vec![UnitDescriptor::minus_one()]]).unwrap();
        TwistedProduct::new(g.clone(), g, t).unwrap()
    }

    #[test]
    fn module_level_suites_pass() {
        let tp = minus_one_square(&Field::rationals());
        for r in [shifts_suite(&tp), hom_suite(&tp), endo_suite(&tp)] {
            let r = r.unwrap();
            assert!(r.passed, "{r:?}");
        }
        assert!(shifts_suite(&tp).unwrap().details["identity_control_failures"].as_u64().unwrap() > 0);
    }

    #[test]
    fn exactness_on_a_qci() {
        let k = Field::rationals();
        let spec = QciSpec::uniform(k.clone(), vec![2, 3], UnitDescriptor::minus_one()).unwrap();
        let n = spec.exponents()[1];
        let tp = TwistedProduct::new(
            Arc::new(qci_construct(&spec.truncate(1)).unwrap()),
            Arc::new(truncated_polynomial(&k, n).unwrap()),
            spec.last_variable_twist().unwrap(),
        )
        .unwrap();
        let input = SuiteInput {
            algebra: tp.algebra.clone(),
            tp: Some(tp),
            qci: Some(spec),
            trunc: 3,
            allow_large: false,
        };
        let r = exactness_suite(&input).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(run_suite("nope", &input).is_err());
        assert_eq!(suite_names("all").unwrap().len(), 7);
    }
}
