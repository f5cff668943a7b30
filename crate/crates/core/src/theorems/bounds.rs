use serde_json::json;

use super::{Context, TheoremReport};
use crate::field::Elem;

/// (floor(sqrt(x)), whether x is a perfect square).
pub fn isqrt_exact(x: u64) -> (u64, bool) {
    let r = x.isqrt();
    (r, r * r == x)
}

/// Largest integer I with I <= q - (sqrt(x) - 1) / 2, and whether sqrt(x) was exact.
pub fn ceil_sqrt_bound(q: u64, x: u64) -> (u64, bool) {
    let (r, exact) = isqrt_exact(x);
    // smallest L with 2L + 1 >= sqrt(x)
    let l = if exact { r.saturating_sub(1).div_ceil(2) } else { r.div_ceil(2) };
    (q.saturating_sub(l), exact)
}

fn upper(id: &'static str, ctx: &Context, bound: u64, extra: serde_json::Value) -> TheoremReport {
    let image = ctx.pp.image_size();
    let mut w = json!({ "bound": bound, "image_size": image, "slack": bound as i64 - image as i64 });
    if let (Some(obj), serde_json::Value::Object(more)) = (w.as_object_mut(), extra) {
        obj.extend(more);
    }
    TheoremReport::evaluated(id, image <= bound, w)
}

pub(super) fn cauchy_schwarz(ctx: &Context) -> TheoremReport {
    let pp = &ctx.pp;
    let (q, n, image) = (pp.order(), pp.collisions(), pp.image_size());
    let bound = pp.cauchy_schwarz_bound();
    let equality = image * n == q * q;
    let k_to_1 = q % image == 0 && pp.is_k_to_1((q / image) as u32);
    TheoremReport::evaluated(
        "lb.cauchy-schwarz",
        image >= bound && equality == k_to_1,
        json!({ "bound": bound, "image_size": image, "collisions": n, "equality": equality, "k_to_1": k_to_1 }),
    )
}

pub(super) fn collision_bound(ctx: &Context) -> TheoremReport {
    let (pp, dp) = (&ctx.pp, &ctx.dp);
    let q = pp.order();
    let d = dp.uniformity() as u64;
    let t0 = dp.t0();
    let n = pp.collisions();
    let zeros: Vec<u64> = (1..q as Elem).map(|a| dp.zero_solutions(a) as u64).collect();
    let identity = n == q + zeros.iter().sum::<u64>();
    let first = n <= q + d * t0;
    let first_eq = (n == q + d * t0) == zeros.iter().all(|&z| z == 0 || z == d);
    let second = n <= (d + 1) * q - d;
    let second_eq = (n == (d + 1) * q - d) == dp.is_zero_difference_balanced(d as u32);
    TheoremReport::evaluated(
        "lb.collision-bound",
        identity && first && first_eq && second && second_eq,
        json!({
            "collisions": n,
            "uniformity": d,
            "t0": t0,
            "bound_t0": q + d * t0,
            "bound_q": (d + 1) * q - d,
            "zero_difference_balanced": dp.is_zero_difference_balanced(d as u32),
        }),
    )
}

pub(super) fn lower_bound(ctx: &Context) -> TheoremReport {
    let (pp, dp) = (&ctx.pp, &ctx.dp);
    let q = pp.order();
    let d = dp.uniformity() as u64;
    let image = pp.image_size();
    let bound = q.div_ceil(d + 1);
    let mut w = json!({ "bound": bound, "image_size": image, "uniformity": d, "minimal": image == bound });
    let mut holds = image >= bound;
    if image == bound {
        let ex = pp.exceptional_set(d);
        let eps = ex.epsilon;
        let dev = pp.squared_deviation(d) as i64;
        let dev_bound = (d as i64 + 1) * (eps - 1) + 1;
        let d_sum = ex.elements.len() as i64 * (d as i64 + 1) - eps;
        let eps_ok = 1 <= eps && eps <= d as i64;
        holds &= eps_ok && dev <= dev_bound && ex.omega_sum as i64 == d_sum;
        let obj = w.as_object_mut().expect("object");
        obj.insert("epsilon".into(), json!(eps));
        obj.insert("exceptional_set".into(), json!(ex.elements));
        obj.insert("squared_deviation".into(), json!(dev));
        obj.insert("squared_deviation_bound".into(), json!(dev_bound));
        obj.insert("exceptional_omega_sum".into(), json!(ex.omega_sum));
    }
    TheoremReport::evaluated("lb.duniform", holds, w)
}

/// (sum_{r<=d} r(d+1-r) M_r, sum_{r<=d+1} r(d+2-r) M_r).
fn mr_sums(ctx: &Context, d: i128) -> (i128, i128) {
    let mut s1 = 0i128;
    let mut s2 = 0i128;
    for (&r, &c) in ctx.pp.m_counts() {
        let (r, c) = (r as i128, c as i128);
        if r <= d {
            s1 += r * (d + 1 - r) * c;
        }
        if r <= d + 1 {
            s2 += r * (d + 2 - r) * c;
        }
    }
    (s1, s2)
}

pub(super) fn mr_inequalities(ctx: &Context) -> TheoremReport {
    let pp = &ctx.pp;
    let q = pp.order() as i128;
    let d = ctx.dp.uniformity() as i128;
    let (s1, s2) = mr_sums(ctx, d);
    let n = pp.collisions() as i128;
    let extreme = n == (d + 1) * q - d;
    let vanish_from = |from: i128| pp.m_counts().iter().all(|(&r, &c)| (r as i128) < from || c == 0);
    let clause1 = s1 >= d;
    let clause1_eq = (s1 == d) == (extreme && vanish_from(d + 2));
    let clause2 = s2 >= q + d;
    let clause2_eq = (s2 == q + d) == (extreme && vanish_from(d + 3));
    let m_next = pp.m((d + 2) as u32) as i128;
    let reduction = !(extreme && vanish_from(d + 3)) || s1 == (d + 2) * m_next + d;
    TheoremReport::evaluated(
        "mr.inequalities",
        clause1 && clause1_eq && clause2 && clause2_eq && reduction,
        json!({
            "uniformity": d as i64,
            "first_sum": s1 as i64,
            "first_bound": d as i64,
            "first_holds": clause1,
            "first_equality_characterized": clause1_eq,
            "second_sum": s2 as i64,
            "second_bound": (q + d) as i64,
            "second_holds": clause2,
            "second_equality_characterized": clause2_eq,
            "reduction_holds": reduction,
            "collisions_extreme": extreme,
        }),
    )
}

pub(super) fn coulter_senger(ctx: &Context) -> TheoremReport {
    let q = ctx.pp.order();
    let x = 4 * ctx.pp.collisions() - 4 * q + 1;
    let (bound, exact) = ceil_sqrt_bound(q, x);
    upper("ub.coulter-senger", ctx, bound, json!({ "radicand": x, "sqrt_exact": exact }))
}

pub(super) fn ab_bound(ctx: &Context) -> TheoremReport {
    const ID: &str = "ub.ab";
    let field = ctx.f.field();
    if !field.is_binary() || field.n().is_multiple_of(2) {
        return TheoremReport::inapplicable(ID, "needs p = 2 and n odd");
    }
    let wp = match ctx.full_walsh() {
        Ok(w) => w,
        Err(e) => return TheoremReport::inapplicable(ID, e),
    };
    if !wp.is_almost_bent().unwrap_or(false) {
        return TheoremReport::hypotheses_not_met(ID, "not almost bent", json!(null));
    }
    let q = ctx.pp.order();
    let n = field.n();
    let k = ctx.pp.max_omega() as u64;
    let v = 1u64 << n.div_ceil(2);
    let general = q - ((k - 1) * v).div_ceil(k);
    let mut r = upper(ID, ctx, general, json!({ "max_omega": k }));
    if !ctx.pp.is_permutation() {
        let nonbij = q - (1u64 << ((n - 1) / 2));
        let ok = ctx.pp.image_size() <= nonbij;
        r.witnesses["non_bijective_bound"] = json!(nonbij);
        r.conclusion_holds &= ok;
        if !ok {
            r.status = super::Status::Fail;
        }
    }
    r
}

pub(super) fn bent_count_bound(ctx: &Context) -> TheoremReport {
    const ID: &str = "ub.bent-count";
    let field = ctx.f.field();
    if !field.is_binary() || field.n() % 2 == 1 {
        return TheoremReport::inapplicable(ID, "needs p = 2 and n even");
    }
    let wp = match ctx.full_walsh() {
        Ok(w) => w,
        Err(e) => return TheoremReport::inapplicable(ID, e),
    };
    let q = ctx.pp.order();
    let t = wp.bent_component_count().expect("even n");
    let (bound, exact) = ceil_sqrt_bound(q, 4 * t + 1);
    let n_ok = ctx.pp.collisions() >= t + q;
    let mut r = upper(ID, ctx, bound, json!({ "bent_count": t, "sqrt_exact": exact, "collision_bound": t + q }));
    if !n_ok {
        r.conclusion_holds = false;
        r.status = super::Status::Fail;
    }
    r
}

pub(super) fn plateaued_apn_bound(ctx: &Context) -> TheoremReport {
    const ID: &str = "ub.plateaued-apn";
    let field = ctx.f.field();
    if !field.is_binary() {
        return TheoremReport::inapplicable(ID, "needs p = 2");
    }
    let wp = match ctx.full_walsh() {
        Ok(w) => w,
        Err(e) => return TheoremReport::inapplicable(ID, e),
    };
    let plateaued = wp.is_component_wise_plateaued().expect("full");
    let n = field.n();
    let w = json!({ "plateaued": plateaued, "apn": ctx.is_apn(), "permutation": ctx.pp.is_permutation() });
    if !plateaued || !ctx.is_apn() || (n % 2 == 1 && ctx.pp.is_permutation()) {
        return TheoremReport::hypotheses_not_met(ID, "needs a plateaued APN map, non-bijective for odd n", w);
    }
    let q = ctx.pp.order();
    if n % 2 == 1 {
        upper(ID, ctx, q - (1u64 << ((n - 1) / 2)), json!({}))
    } else {
        let (bound, exact) = ceil_sqrt_bound(q, 8 * (q - 1) / 3 + 1);
        upper(ID, ctx, bound, json!({ "sqrt_exact": exact }))
    }
}

pub(super) fn wan_bound(ctx: &Context) -> TheoremReport {
    const ID: &str = "ub.wan";
    let poly = match ctx.poly() {
        Ok(p) => p,
        Err(e) => return TheoremReport::inapplicable(ID, e),
    };
    let deg = poly.degree();
    if ctx.pp.is_permutation() || deg == 0 {
        return TheoremReport::hypotheses_not_met(
            ID,
            "needs a non-bijective map of positive degree",
            json!({ "degree": deg }),
        );
    }
    let q = ctx.pp.order();
    upper(ID, ctx, q - (q - 1).div_ceil(deg), json!({ "degree": deg }))
}
