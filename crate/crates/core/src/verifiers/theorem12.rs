use std::sync::Arc;

use super::report::{VerificationReport, Verdict};
use crate::error::Result;
use crate::group::{is_soluble, normal_closure_in, FiniteGroup, Subgroup};
use crate::polyfun::{build_polyfun_group, PolyFunGroup, PolyFunOptions, PolyFunction, Strategy};

/// Whether `candidate` and `target` are the same group: equal orders and every
/// generator of `candidate` lies in `target`.
pub fn same_subgroup(candidate: &PolyFunGroup, target: &PolyFunGroup) -> bool {
    candidate.order() == target.order() && candidate.generators().iter().all(|f| target.contains(f))
}

pub fn conjugation_generators(g: &Arc<FiniteGroup>, n: usize) -> Result<Vec<PolyFunction>> {
    let mut out = Vec::new();
    for i in 1..=n {
        for a in g.elements() {
            out.push(PolyFunction::conjugation(g, n, i, a)?);
        }
    }
    Ok(out)
}

/// `⋃ᵢ Ψᵢ(S)` for a generating set `S` of `Ḡ₁[x]`.
pub fn psi_generators(g: &Arc<FiniteGroup>, n: usize, options: PolyFunOptions) -> Result<Vec<PolyFunction>> {
    let one = build_polyfun_group(g, 1, Strategy::Chain, options)?.one_subgroup()?;
    let mut out = Vec::new();
    for i in 1..=n {
        for f in one.generators() {
            out.push(f.embed_coordinate(i, n)?);
        }
    }
    Ok(out)
}

pub fn theorem12_checks(
    g: &Arc<FiniteGroup>,
    n: usize,
    strategy: Strategy,
    options: PolyFunOptions,
) -> Result<VerificationReport> {
    let p = build_polyfun_group(g, n, strategy, options)?;
    let one = p.one_subgroup()?;
    let mut report = VerificationReport::new("thm1.2")
        .param("group", g.name())
        .param("n", n)
        .param("strategy", strategy);
    report.evidence("one_subgroup_order", one.order().to_string());

    let whole = Subgroup::whole(g);
    let mut mismatches = Vec::new();
    if n > 0 {
        for a in g.elements() {
            let mut v = vec![0; n];
            v[0] = a;
            let image = one.eval_image(&v)?;
            let closure = normal_closure_in(g, &whole, &[a]);
            if image != closure {
                mismatches.push(serde_json::json!({
                    "a": a,
                    "image": image.members(),
                    "normal_closure": closure.members(),
                }));
            }
        }
    }
    report.check(
        "evaluation image is the normal closure",
        Verdict::from_bool(mismatches.is_empty()),
        serde_json::json!({ "elements_checked": g.order(), "mismatches": mismatches }),
    );

    let conj = PolyFunGroup::generated(g, n, conjugation_generators(g, n)?, Strategy::Chain, options)?;
    report.check(
        "generated by conjugation functions",
        Verdict::from_bool(same_subgroup(&conj, &one)),
        serde_json::json!({ "closure_order": conj.order().to_string(), "one_subgroup_order": one.order().to_string() }),
    );

    let psi = PolyFunGroup::generated(g, n, psi_generators(g, n, options)?, Strategy::Chain, options)?;
    report.check(
        "generated by coordinate embeddings",
        Verdict::from_bool(same_subgroup(&psi, &one)),
        serde_json::json!({ "closure_order": psi.order().to_string(), "one_subgroup_order": one.order().to_string() }),
    );

    let group_soluble = is_soluble(g);
    let one_soluble = one.chain().derived_length().is_some();
    report.check(
        "soluble iff soluble",
        Verdict::from_bool(group_soluble == one_soluble),
        serde_json::json!({ "group": group_soluble, "one_subgroup": one_soluble }),
    );
    Ok(report)
}
