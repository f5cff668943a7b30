//! Mechanical checks of the preimage, differential and spectral theorems.
//!
//! Each check looks at precomputed profiles of one map and reports whether it
//! applies, whether its hypotheses hold and, if so, whether its conclusion does.

mod bounds;
mod spectral;
mod structure;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::map::{interpolate, MapTable, PolyRepr};
use crate::spectra::{DifferentialProfile, PreimageProfile};
use crate::walsh::{WalshProfile, DEFAULT_FULL_CAP};

pub use bounds::{ceil_sqrt_bound, isqrt_exact};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    HypothesesNotMet,
    Inapplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub id: &'static str,
    pub status: Status,
    pub applicable: bool,
    pub hypotheses_hold: bool,
    /// Only meaningful when applicable and the hypotheses hold.
    pub conclusion_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub witnesses: Value,
}

impl TheoremReport {
    pub fn inapplicable(id: &'static str, note: impl Into<String>) -> Self {
        TheoremReport {
            id,
            status: Status::Inapplicable,
            applicable: false,
            hypotheses_hold: false,
            conclusion_holds: false,
            note: Some(note.into()),
            witnesses: Value::Null,
        }
    }

    pub fn hypotheses_not_met(id: &'static str, note: impl Into<String>, witnesses: Value) -> Self {
        TheoremReport {
            id,
            status: Status::HypothesesNotMet,
            applicable: true,
            hypotheses_hold: false,
            conclusion_holds: false,
            note: Some(note.into()),
            witnesses,
        }
    }

    pub fn evaluated(id: &'static str, holds: bool, witnesses: Value) -> Self {
        TheoremReport {
            id,
            status: if holds { Status::Pass } else { Status::Fail },
            applicable: true,
            hypotheses_hold: true,
            conclusion_holds: holds,
            note: None,
            witnesses,
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalshMode {
    Full,
    ZeroOnly,
    Skip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub walsh: WalshMode,
    pub walsh_cap: u32,
    /// Interpolate only when q <= 2^interpolation_cap.
    pub interpolation_cap: u32,
}

pub const DEFAULT_INTERPOLATION_CAP: u32 = 12;

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { walsh: WalshMode::Full, walsh_cap: DEFAULT_FULL_CAP, interpolation_cap: DEFAULT_INTERPOLATION_CAP }
    }
}

/// All profiles of one map, computed once and shared by every check.
pub struct Context<'a> {
    pub f: &'a MapTable,
    pub pp: PreimageProfile,
    pub dp: DifferentialProfile,
    pub wp: Option<WalshProfile>,
    pub walsh_note: Option<String>,
    pub poly: Option<PolyRepr>,
    pub walsh_cap: u32,
}

impl<'a> Context<'a> {
    pub fn new(f: &'a MapTable, opts: &RunOptions) -> Result<Self> {
        let field = f.field();
        let (wp, walsh_note) = if !field.is_binary() {
            (None, Some("Walsh spectra are computed for p = 2 only".to_string()))
        } else {
            match opts.walsh {
                WalshMode::Full => (Some(WalshProfile::full_with_cap(f, opts.walsh_cap)?), None),
                WalshMode::ZeroOnly => (Some(WalshProfile::zero_only(f)?), None),
                WalshMode::Skip => (None, Some("Walsh computation skipped".to_string())),
            }
        };
        let poly = (field.order() as u64 <= 1u64 << opts.interpolation_cap).then(|| interpolate(f));
        Ok(Context {
            f,
            pp: PreimageProfile::new(f),
            dp: DifferentialProfile::new(f),
            wp,
            walsh_note,
            poly,
            walsh_cap: opts.walsh_cap,
        })
    }

    /// The Walsh profile if it was computed in full mode.
    pub(crate) fn full_walsh(&self) -> std::result::Result<&WalshProfile, String> {
        match &self.wp {
            Some(w) if w.is_full() => Ok(w),
            Some(_) => Err("needs the full Walsh spectrum".into()),
            None => Err(self.walsh_note.clone().unwrap_or_else(|| "no Walsh spectrum".into())),
        }
    }

    pub(crate) fn poly(&self) -> std::result::Result<&PolyRepr, String> {
        self.poly.as_ref().ok_or_else(|| "field too large for interpolation".to_string())
    }

    pub(crate) fn is_apn(&self) -> bool {
        self.f.field().is_binary() && self.dp.is_apn()
    }
}

type Check = fn(&Context) -> TheoremReport;

pub const THEOREM_IDS: &[&str] = &[
    "lb.cauchy-schwarz",
    "lb.collision-bound",
    "lb.duniform",
    "mr.inequalities",
    "apn.one-or-two-preimages",
    "apn.lower-bound-cases",
    "apn.monomial-gcd",
    "apn.almost-3-to-1-sufficient",
    "do.equivalence",
    "div.uniform-implies-almost",
    "subfield.apn-permutation",
    "ab.lemma-stats",
    "ab.corollary",
    "ub.coulter-senger",
    "ub.ab",
    "ub.bent-count",
    "ub.plateaued-apn",
    "ub.wan",
    "walsh.k-to-1-spectrum",
    "walsh.max-bent-converse",
    "walsh.almost-3-to-1-classical",
    "walsh.berger-apn",
];

const CHECKS: &[Check] = &[
    bounds::cauchy_schwarz,
    bounds::collision_bound,
    bounds::lower_bound,
    bounds::mr_inequalities,
    structure::one_or_two_preimages,
    structure::apn_lower_bound_cases,
    structure::monomial_gcd,
    structure::almost_3_to_1_sufficient,
    structure::do_equivalence,
    structure::uniform_implies_almost,
    structure::subfield_permutation,
    spectral::ab_lemma,
    spectral::ab_corollary,
    bounds::coulter_senger,
    bounds::ab_bound,
    bounds::bent_count_bound,
    bounds::plateaued_apn_bound,
    bounds::wan_bound,
    spectral::k_to_1_spectrum,
    spectral::max_bent_converse,
    spectral::almost_3_to_1_classical,
    spectral::bent_count_apn,
];

/// Matches `all`, an exact id, or a prefix pattern ending in `*`, comma separated.
pub fn suite_matches(suite: &str, id: &str) -> bool {
    suite.split(',').map(str::trim).filter(|s| !s.is_empty()).any(|pat| {
        pat == "all" || pat == id || pat.strip_suffix('*').is_some_and(|pre| id.starts_with(pre))
    })
}

/// Runs the checks whose ids match `suite`, in the fixed catalog order.
pub fn run_suite(ctx: &Context, suite: &str) -> Vec<TheoremReport> {
    let selected: Vec<Check> = THEOREM_IDS
        .iter()
        .zip(CHECKS)
        .filter(|(id, _)| suite_matches(suite, id))
        .map(|(_, c)| *c)
        .collect();
    let reports: Vec<TheoremReport> = selected.par_iter().map(|c| c(ctx)).collect();
    debug_assert!(reports.iter().all(|r| THEOREM_IDS.contains(&r.id)));
    reports
}

pub fn run_all(f: &MapTable) -> Result<Vec<TheoremReport>> {
    run_all_with(f, &RunOptions::default())
}

pub fn run_all_with(f: &MapTable, opts: &RunOptions) -> Result<Vec<TheoremReport>> {
    let ctx = Context::new(f, opts)?;
    Ok(run_suite(&ctx, "all"))
}

/// Runs a single check by id.
pub fn check(ctx: &Context, id: &str) -> Option<TheoremReport> {
    THEOREM_IDS.iter().position(|&t| t == id).map(|i| CHECKS[i](ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    pub(crate) fn table(p: u32, n: u32, expr: &str) -> MapTable {
        MapTable::from_expression(FieldSpec::build(p, n, None).unwrap(), expr).unwrap()
    }

    pub(crate) fn report(f: &MapTable, id: &str) -> TheoremReport {
        let ctx = Context::new(f, &RunOptions::default()).unwrap();
        check(&ctx, id).unwrap()
    }

    #[test]
    fn ids_and_checks_align() {
        assert_eq!(THEOREM_IDS.len(), CHECKS.len());
        let f = table(2, 4, "x^3");
        let reports = run_all(&f).unwrap();
        let ids: Vec<&str> = reports.iter().map(|r| r.id).collect();
        assert_eq!(ids, THEOREM_IDS);
    }

    #[test]
    fn cube_passes_everything_applicable() {
        for n in 2..=8 {
            let f = table(2, n, "x^3");
            for r in run_all(&f).unwrap() {
                assert!(!r.failed(), "n = {n}: {r:?}");
            }
        }
    }

    #[test]
    fn suite_patterns() {
        assert!(suite_matches("all", "ub.wan"));
        assert!(suite_matches("ab.*", "ab.corollary"));
        assert!(!suite_matches("ab.*", "apn.monomial-gcd"));
        assert!(suite_matches("lb.duniform, ub.wan", "ub.wan"));
        let f = table(2, 4, "x^3");
        let ctx = Context::new(&f, &RunOptions::default()).unwrap();
        let ab = run_suite(&ctx, "ab.*");
        assert_eq!(ab.len(), 2);
        assert!(ab.iter().all(|r| r.status == Status::Inapplicable));
    }

    #[test]
    fn odd_characteristic_runs() {
        let f = table(3, 2, "x^2");
        let reports = run_all(&f).unwrap();
        assert!(reports.iter().all(|r| !r.failed()), "{reports:?}");
        let walsh: Vec<_> = reports.iter().filter(|r| r.id.starts_with("walsh.")).collect();
        assert!(walsh.iter().all(|r| r.status == Status::Inapplicable));
    }

    #[test]
    fn skip_modes() {
        let f = table(2, 5, "x^3");
        for mode in [WalshMode::ZeroOnly, WalshMode::Skip] {
            let opts = RunOptions { walsh: mode, ..Default::default() };
            let reports = run_all_with(&f, &opts).unwrap();
            let r = reports.iter().find(|r| r.id == "ab.lemma-stats").unwrap();
            assert_eq!(r.status, Status::Inapplicable);
        }
        let opts = RunOptions { walsh_cap: 3, ..Default::default() };
        assert!(run_all_with(&f, &opts).is_err());
    }
}
