use std::borrow::Cow;

use serde_json::json;

use super::{Context, TheoremReport};
use crate::error::Error;
use crate::field::Elem;
use crate::walsh::{ab_statistics, WalshProfile};

fn odd_ab<'c>(ctx: &'c Context, id: &'static str) -> Result<&'c WalshProfile, TheoremReport> {
    let field = ctx.f.field();
    if !field.is_binary() || field.n().is_multiple_of(2) || field.n() < 3 {
        return Err(TheoremReport::inapplicable(id, "needs p = 2 and odd n >= 3"));
    }
    let wp = ctx.full_walsh().map_err(|e| TheoremReport::inapplicable(id, e))?;
    if !wp.is_almost_bent().expect("odd n") {
        return Err(TheoremReport::hypotheses_not_met(id, "not almost bent", json!(null)));
    }
    Ok(wp)
}

fn even_full<'c>(ctx: &'c Context, id: &'static str) -> Result<&'c WalshProfile, TheoremReport> {
    let field = ctx.f.field();
    if !field.is_binary() || field.n() % 2 == 1 {
        return Err(TheoremReport::inapplicable(id, "needs p = 2 and n even"));
    }
    ctx.full_walsh().map_err(|e| TheoremReport::inapplicable(id, e))
}

pub(super) fn ab_lemma(ctx: &Context) -> TheoremReport {
    const ID: &str = "ab.lemma-stats";
    let wp = match odd_ab(ctx, ID) {
        Ok(w) => w,
        Err(r) => return r,
    };
    match ab_statistics(ctx.f, &ctx.pp, wp) {
        Ok(s) => TheoremReport::evaluated(ID, true, json!(s)),
        Err(Error::ConclusionFailed(msg)) => {
            let mut r = TheoremReport::evaluated(ID, false, json!(null));
            r.note = Some(msg);
            r
        }
        Err(e) => TheoremReport::inapplicable(ID, e.to_string()),
    }
}

pub(super) fn ab_corollary(ctx: &Context) -> TheoremReport {
    const ID: &str = "ab.corollary";
    let wp = match odd_ab(ctx, ID) {
        Ok(w) => w,
        Err(r) => return r,
    };
    let q = ctx.pp.order();
    let n = ctx.pp.collisions();
    let balanced = wp.balanced_count();
    let zdb = ctx.dp.is_zero_difference_balanced(2);
    let image = ctx.pp.image_size();
    let clauses = [n.is_multiple_of(4), balanced % 2 == 1, n <= 3 * q - 4, !zdb, 3 * image > q + 1];
    TheoremReport::evaluated(
        ID,
        clauses.iter().all(|&c| c),
        json!({
            "collisions": n,
            "collisions_divisible_by_4": clauses[0],
            "balanced_count": balanced,
            "collision_bound": 3 * q - 4,
            "zero_difference_2_balanced": zdb,
            "image_size": image,
        }),
    )
}

/// r with k = 2^r + 1, if any.
fn r_of(k: u32) -> Option<u32> {
    let s = k.checked_sub(1)?;
    (s >= 2 && s.is_power_of_two()).then(|| s.trailing_zeros())
}

pub(super) fn k_to_1_spectrum(ctx: &Context) -> TheoremReport {
    const ID: &str = "walsh.k-to-1-spectrum";
    let wp = match even_full(ctx, ID) {
        Ok(w) => w,
        Err(r) => return r,
    };
    let pp = &ctx.pp;
    let n = ctx.f.field().n();
    let k = pp.max_omega();
    let plateaued = wp.is_component_wise_plateaued().expect("full");
    let hyp = r_of(k).filter(|&r| pp.is_almost_k_to_1(k) && n.is_multiple_of(2 * r));
    let Some(r) = hyp.filter(|_| plateaued) else {
        return TheoremReport::hypotheses_not_met(
            ID,
            "needs a plateaued almost-(2^r+1)-to-1 map with 2r | n",
            json!({ "max_omega": k, "plateaued": plateaued }),
        );
    };
    let m = n / (2 * r);
    let field = ctx.f.field();
    // move the single one-preimage point to 0 -> 0
    let x0 = (0..pp.order() as Elem).find(|&x| pp.omega(ctx.f.eval(x)) == 1).expect("almost-k-to-1");
    let shifted;
    let (w, normalized): (Cow<WalshProfile>, bool) = if x0 == 0 && ctx.f.eval(0) == 0 {
        (Cow::Borrowed(wp), false)
    } else {
        shifted = ctx.f.shift_normalize(x0, field.neg(ctx.f.eval(x0)));
        match WalshProfile::full_with_cap(&shifted, ctx.walsh_cap) {
            Ok(p) => (Cow::Owned(p), true),
            Err(e) => return TheoremReport::inapplicable(ID, e.to_string()),
        }
    };
    let q1 = pp.order() - 1;
    let kk = (1u64 << r) + 1;
    let bent_expected = (1u64 << r) * q1 / kk;
    let amp_expected = q1 / kk;
    let bent = w.amplitude_count(0).expect("full");
    let amp = w.amplitude_count(2 * r).expect("full");
    let sign = |e: u32| if e.is_multiple_of(2) { 1i64 } else { -1 };
    let allowed = [sign(m) << (r * m), sign(m + 1) << (r * (m + 1))];
    let values = w.w_zero_values();
    let values_ok = values.iter().all(|v| allowed.contains(v));
    TheoremReport::evaluated(
        ID,
        bent == bent_expected && amp == amp_expected && values_ok,
        json!({
            "r": r,
            "m": m,
            "normalized": normalized,
            "bent_count": bent,
            "bent_expected": bent_expected,
            "amplitude_2r_count": amp,
            "amplitude_2r_expected": amp_expected,
            "w_zero_values": values,
            "w_zero_allowed": allowed,
        }),
    )
}

pub(super) fn max_bent_converse(ctx: &Context) -> TheoremReport {
    const ID: &str = "walsh.max-bent-converse";
    let wp = match even_full(ctx, ID) {
        Ok(w) => w,
        Err(r) => return r,
    };
    let n = ctx.f.field().n();
    let k = (1u32 << (n / 2)) + 1;
    if !ctx.pp.is_almost_k_to_1(k) {
        return TheoremReport::hypotheses_not_met(ID, "needs an almost-(2^(n/2)+1)-to-1 map", json!({ "k": k }));
    }
    let q = ctx.pp.order();
    let plateaued = wp.is_component_wise_plateaued().expect("full");
    let bent = wp.bent_component_count().expect("even n");
    let target = q - (1u64 << (n / 2));
    TheoremReport::evaluated(
        ID,
        plateaued == (bent == target),
        json!({ "k": k, "plateaued": plateaued, "bent_count": bent, "bent_target": target }),
    )
}

pub(super) fn almost_3_to_1_classical(ctx: &Context) -> TheoremReport {
    const ID: &str = "walsh.almost-3-to-1-classical";
    let wp = match even_full(ctx, ID) {
        Ok(w) => w,
        Err(r) => return r,
    };
    let plateaued = wp.is_component_wise_plateaued().expect("full");
    let almost = ctx.pp.is_almost_k_to_1(3);
    if !(plateaued && almost) {
        return TheoremReport::hypotheses_not_met(
            ID,
            "needs a plateaued almost-3-to-1 map",
            json!({ "plateaued": plateaued, "almost_3_to_1": almost }),
        );
    }
    let classical = wp.is_classical_spectrum().expect("even n");
    TheoremReport::evaluated(ID, ctx.is_apn() && classical, json!({ "apn": ctx.is_apn(), "classical": classical }))
}

pub(super) fn bent_count_apn(ctx: &Context) -> TheoremReport {
    const ID: &str = "walsh.berger-apn";
    let wp = match even_full(ctx, ID) {
        Ok(w) => w,
        Err(r) => return r,
    };
    let q1 = ctx.pp.order() - 1;
    let plateaued = wp.is_component_wise_plateaued().expect("full");
    let bent = wp.amplitude_count(0).expect("full");
    let amp2 = wp.amplitude_count(2).expect("full");
    let w = json!({ "plateaued": plateaued, "bent_count": bent, "amplitude_2_count": amp2 });
    if !(plateaued && bent == 2 * q1 / 3 && amp2 == q1 / 3) {
        return TheoremReport::hypotheses_not_met(ID, "needs 2(q-1)/3 bent and (q-1)/3 amplitude-2 components", w);
    }
    TheoremReport::evaluated(ID, ctx.is_apn(), w)
}
