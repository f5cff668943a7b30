use rayon::prelude::*;
use serde_json::json;

use super::{Context, TheoremReport};
use crate::field::{gcd, Elem};
use crate::spectra::{differential_set, subspace_type, SubspaceType};

fn only_ranks(ctx: &Context, allowed: &[u32]) -> bool {
    ctx.pp.m_counts().iter().all(|(r, &c)| c == 0 || allowed.contains(r))
}

pub(super) fn one_or_two_preimages(ctx: &Context) -> TheoremReport {
    const ID: &str = "apn.one-or-two-preimages";
    if !ctx.f.field().is_binary() {
        return TheoremReport::inapplicable(ID, "needs p = 2");
    }
    if !ctx.is_apn() {
        return TheoremReport::hypotheses_not_met(ID, "not APN", json!({ "uniformity": ctx.dp.uniformity() }));
    }
    let pp = &ctx.pp;
    let q = pp.order();
    let n = ctx.f.field().n();
    let (m1, m2, m3, m4) = (pp.m(1), pp.m(2), pp.m(3), pp.m(4));
    let low = m1 + m2;
    let low_eq_case = if n.is_multiple_of(2) {
        pp.is_almost_k_to_1(3)
    } else {
        m2 == 1 && m3 == pp.image_size() - 1 && only_ranks(ctx, &[2, 3])
    };
    let weighted = 3 * m1 + 4 * m2 + 3 * m3;
    let weighted_eq = weighted == q + 2;
    let weighted_case = pp.collisions() == 3 * q - 2 && only_ranks(ctx, &[1, 2, 3, 4]);
    let reduction = !weighted_eq || low == 2 * m4 + 1;
    let holds = low >= 1 && (low == 1) == low_eq_case && weighted >= q + 2 && weighted_eq == weighted_case && reduction;
    TheoremReport::evaluated(
        ID,
        holds,
        json!({
            "m1_plus_m2": low,
            "weighted_sum": weighted,
            "weighted_bound": q + 2,
            "weighted_equality": weighted_eq,
            "m4": m4,
        }),
    )
}

pub(super) fn apn_lower_bound_cases(ctx: &Context) -> TheoremReport {
    const ID: &str = "apn.lower-bound-cases";
    let field = ctx.f.field();
    if !field.is_binary() {
        return TheoremReport::inapplicable(ID, "needs p = 2");
    }
    let pp = &ctx.pp;
    let q = pp.order();
    let n = field.n();
    let minimum = if n.is_multiple_of(2) { q.div_ceil(3) } else { (q + 1) / 3 };
    let image = pp.image_size();
    let w = json!({ "minimum": minimum, "image_size": image, "apn": ctx.is_apn() });
    if !ctx.is_apn() || image != minimum {
        return TheoremReport::hypotheses_not_met(ID, "needs an APN map at the minimal image size", w);
    }
    let (m1, m2, m3, m4) = (pp.m(1), pp.m(2), pp.m(3), pp.m(4));
    let case = if n % 2 == 1 {
        (m2 == 1 && m3 == image - 1 && only_ranks(ctx, &[2, 3])).then_some("odd")
    } else if m1 == 1 && m3 == image - 1 && only_ranks(ctx, &[1, 3]) {
        Some("1")
    } else if m2 == 2 && m3 == image - 2 && only_ranks(ctx, &[2, 3]) {
        Some("2")
    } else if m2 == 3 && m4 == 1 && m3 == image - 4 && only_ranks(ctx, &[2, 3, 4]) {
        Some("3")
    } else {
        None
    };
    let mut w = w;
    w["case"] = json!(case);
    w["m"] = json!(pp.m_counts());
    TheoremReport::evaluated(ID, case.is_some(), w)
}

pub(super) fn monomial_gcd(ctx: &Context) -> TheoremReport {
    const ID: &str = "apn.monomial-gcd";
    let field = ctx.f.field();
    if !field.is_binary() {
        return TheoremReport::inapplicable(ID, "needs p = 2");
    }
    let poly = match ctx.poly() {
        Ok(p) => p,
        Err(e) => return TheoremReport::inapplicable(ID, e),
    };
    let Some((k, _)) = poly.as_monomial() else {
        return TheoremReport::hypotheses_not_met(ID, "not a monomial", json!(null));
    };
    if !ctx.is_apn() {
        return TheoremReport::hypotheses_not_met(ID, "not APN", json!({ "exponent": k }));
    }
    let q = ctx.pp.order();
    let g = gcd(k, q - 1);
    let expected = if field.n().is_multiple_of(2) { 3 } else { 1 };
    TheoremReport::evaluated(ID, g == expected, json!({ "exponent": k, "gcd": g, "expected": expected }))
}

pub(super) fn almost_3_to_1_sufficient(ctx: &Context) -> TheoremReport {
    const ID: &str = "apn.almost-3-to-1-sufficient";
    let field = ctx.f.field();
    if !field.is_binary() || field.n() % 2 == 1 {
        return TheoremReport::inapplicable(ID, "needs p = 2 and n even");
    }
    let pp = &ctx.pp;
    let low_nonzero: Vec<Elem> =
        (1..pp.order() as Elem).filter(|&y| (1..3).contains(&pp.omega(y))).collect();
    let f0 = ctx.f.eval(0);
    let w = json!({ "apn": ctx.is_apn(), "f_at_zero": f0, "nonzero_with_few_preimages": low_nonzero.len() });
    if !ctx.is_apn() || f0 != 0 || !low_nonzero.is_empty() {
        return TheoremReport::hypotheses_not_met(ID, "needs APN, f(0) = 0 and >= 3 preimages off zero", w);
    }
    TheoremReport::evaluated(ID, pp.is_almost_k_to_1(3), w)
}

/// Divisors k >= 2 of q - 1 for which the map is k-divisible.
fn divisibility_orders(ctx: &Context) -> Vec<u64> {
    let q = ctx.pp.order();
    (2..q).filter(|k| (q - 1).is_multiple_of(*k) && ctx.f.is_k_divisible(*k).unwrap_or(false)).collect()
}

fn is_power_of(p: u64, mut d: u64) -> bool {
    if d == 0 {
        return false;
    }
    while d.is_multiple_of(p) {
        d /= p;
    }
    d == 1
}

pub(super) fn do_equivalence(ctx: &Context) -> TheoremReport {
    const ID: &str = "do.equivalence";
    let poly = match ctx.poly() {
        Ok(p) => p,
        Err(e) => return TheoremReport::inapplicable(ID, e),
    };
    let orders = divisibility_orders(ctx);
    if !poly.is_do() || orders.is_empty() {
        return TheoremReport::hypotheses_not_met(
            ID,
            "needs a DO map that is (d+1)-divisible for some d >= 1",
            json!({ "do": poly.is_do(), "divisibility_orders": orders }),
        );
    }
    let field = ctx.f.field();
    let uniformity = ctx.dp.uniformity();
    let mut holds = true;
    let mut per = Vec::new();
    for &k in &orders {
        let d = (k - 1) as u32;
        let uniform = uniformity == d;
        let almost = ctx.pp.is_almost_k_to_1(k as u32);
        let mut entry = json!({ "k": k, "d_uniform": uniform, "almost_k_to_1": almost });
        holds &= uniform == almost;
        if almost {
            let balanced = ctx.dp.is_zero_difference_balanced(d);
            let linear = (1..field.order() as Elem).into_par_iter().all(|a| {
                let ds = differential_set(ctx.f, a).expect("nonzero direction");
                subspace_type(field, &ds.elements) == SubspaceType::LinearSubspace
            });
            let prime_power = is_power_of(field.p() as u64, d as u64);
            entry["zero_difference_balanced"] = json!(balanced);
            entry["linear_differential_sets"] = json!(linear);
            entry["d_is_power_of_p"] = json!(prime_power);
            holds &= balanced && linear && prime_power && uniform;
        }
        per.push(entry);
    }
    TheoremReport::evaluated(ID, holds, json!({ "uniformity": uniformity, "orders": per }))
}

pub(super) fn uniform_implies_almost(ctx: &Context) -> TheoremReport {
    const ID: &str = "div.uniform-implies-almost";
    let uniformity = ctx.dp.uniformity() as u64;
    let orders = divisibility_orders(ctx);
    if !orders.contains(&(uniformity + 1)) {
        return TheoremReport::hypotheses_not_met(
            ID,
            "needs a d-uniform map that is (d+1)-divisible",
            json!({ "uniformity": uniformity, "divisibility_orders": orders }),
        );
    }
    let k = uniformity + 1;
    TheoremReport::evaluated(ID, ctx.pp.is_almost_k_to_1(k as u32), json!({ "k": k }))
}

pub(super) fn subfield_permutation(ctx: &Context) -> TheoremReport {
    const ID: &str = "subfield.apn-permutation";
    let field = ctx.f.field();
    let n = field.n();
    if !field.is_binary() || n % 2 == 1 {
        return TheoremReport::inapplicable(ID, "needs p = 2 and n even");
    }
    let m = n >> n.trailing_zeros();
    if m < 3 {
        return TheoremReport::inapplicable(ID, "odd part of n is below 3");
    }
    let poly = match ctx.poly() {
        Ok(p) => p,
        Err(e) => return TheoremReport::inapplicable(ID, e),
    };
    let in_sub = poly.coefficients_in_subfield(m);
    let divisible = ctx.f.is_k_divisible(3).unwrap_or(false);
    let w = json!({ "m": m, "do": poly.is_do(), "coefficients_in_subfield": in_sub, "divisible_by_3": divisible, "apn": ctx.is_apn() });
    if !(poly.is_do() && in_sub && divisible && ctx.is_apn()) {
        return TheoremReport::hypotheses_not_met(ID, "needs a 3-divisible APN DO map over F_2^m", w);
    }
    let sub = field.subfield_elements(m).expect("m divides n");
    let mut index = vec![usize::MAX; field.order()];
    for (i, &s) in sub.iter().enumerate() {
        index[s as usize] = i;
    }
    let restricted: Option<Vec<usize>> = sub.iter().map(|&s| Some(index[ctx.f.eval(s) as usize]).filter(|&i| i != usize::MAX)).collect();
    let mut w = w;
    let Some(restricted) = restricted else {
        w["maps_into_subfield"] = json!(false);
        return TheoremReport::evaluated(ID, false, w);
    };
    let mut seen = vec![false; sub.len()];
    restricted.iter().for_each(|&i| seen[i] = true);
    let bijective = seen.iter().all(|&s| s);
    let apn = sub[1..].par_iter().all(|&a| {
        let mut hist = vec![0u32; sub.len()];
        for &x in &sub {
            let y = field.add(ctx.f.eval(field.add(x, a)), ctx.f.eval(x));
            hist[index[y as usize]] += 1;
        }
        hist.iter().all(|&c| c <= 2)
    });
    w["maps_into_subfield"] = json!(true);
    w["bijective_on_subfield"] = json!(bijective);
    w["apn_on_subfield"] = json!(apn);
    TheoremReport::evaluated(ID, bijective && apn, w)
}
