//! Constructors for the named map families, with their hypotheses checked.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{gcd, Elem, FieldSpec};
use crate::map::{BivariateMap, MapTable};

fn hyp(family: &'static str, clause: impl Into<String>) -> Error {
    Error::Hypothesis { family, clause: clause.into() }
}

fn require_binary(family: &'static str, field: &FieldSpec) -> Result<()> {
    if field.is_binary() {
        Ok(())
    } else {
        Err(hyp(family, "p = 2"))
    }
}

fn nonzero(family: &'static str, field: &FieldSpec, name: &str, v: Elem) -> Result<Elem> {
    field.check_elem(v as u64)?;
    if v == 0 {
        return Err(hyp(family, format!("{} != 0", name)));
    }
    Ok(v)
}

/// x^(2^k + 1) computed as x^(2^k) * x.
fn gold_power(field: &FieldSpec, x: Elem, k: u32) -> Elem {
    field.mul(field.frobenius(x, k), x)
}

/// x^(2^k+1), with a warning when gcd(k, n) != 1.
pub fn gold(field: &Arc<FieldSpec>, k: u32) -> Result<(MapTable, Vec<String>)> {
    require_binary("gold", field)?;
    let mut warnings = Vec::new();
    if gcd(k as u64, field.n() as u64) != 1 {
        warnings.push(format!("gcd(k, n) = gcd({}, {}) != 1: the Gold map is not APN", k, field.n()));
    }
    let f = field.clone();
    Ok((MapTable::from_fn(field.clone(), move |x| gold_power(&f, x, k)), warnings))
}

pub fn monomial(field: &Arc<FieldSpec>, k: u64) -> MapTable {
    let f = field.clone();
    MapTable::from_fn(field.clone(), move |x| f.pow(x, k))
}

/// x^3 + Tr(x^9).
pub fn cube_plus_trace(field: &Arc<FieldSpec>) -> Result<MapTable> {
    require_binary("cube-plus-trace", field)?;
    let f = field.clone();
    Ok(MapTable::from_fn(field.clone(), move |x| f.add(f.pow(x, 3), f.trace(f.pow(x, 9)))))
}

/// x^3 + a^-1 Tr(a^3 x^9) for odd n.
pub fn cube_trace_2to1(field: &Arc<FieldSpec>, a: Elem) -> Result<MapTable> {
    const NAME: &str = "cube-trace-2to1";
    require_binary(NAME, field)?;
    if field.n().is_multiple_of(2) {
        return Err(hyp(NAME, "n odd"));
    }
    let a = nonzero(NAME, field, "a", a)?;
    let f = field.clone();
    let a_inv = f.inv(a)?;
    let a3 = f.pow(a, 3);
    Ok(MapTable::from_fn(field.clone(), move |x| {
        let t = f.trace(f.mul(a3, f.pow(x, 9)));
        f.add(f.pow(x, 3), f.mul(a_inv, t))
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// The trace term as is.
    Plain,
    /// The trace term squared.
    Squared,
}

/// Tr_{2^3m/2^3}(a^3 y^3 + a^6 y^6), optionally squared, times a^-1.
fn budaghyan_term(f: &FieldSpec, a: Elem, a_inv: Elem, y: Elem, variant: Variant) -> Elem {
    let a3y3 = f.mul(f.pow(a, 3), f.pow(y, 3));
    let arg = f.add(a3y3, f.mul(a3y3, a3y3));
    let mut t = f.trace_relative(arg, 3).expect("3 divides n");
    if variant == Variant::Squared {
        t = f.mul(t, t);
    }
    f.mul(a_inv, t)
}

fn budaghyan_check(field: &FieldSpec, a: Elem) -> Result<Elem> {
    const NAME: &str = "budaghyan";
    require_binary(NAME, field)?;
    if !field.n().is_multiple_of(3) {
        return Err(hyp(NAME, "n = 3m"));
    }
    nonzero(NAME, field, "a", a)
}

/// x^3 + a^-1 Tr_{2^3m/2^3}(a^3 x^9 + a^6 x^18), or with the trace squared.
pub fn budaghyan(field: &Arc<FieldSpec>, a: Elem, variant: Variant) -> Result<MapTable> {
    let a = budaghyan_check(field, a)?;
    let f = field.clone();
    let a_inv = f.inv(a)?;
    Ok(MapTable::from_fn(field.clone(), move |x| {
        let x3 = f.pow(x, 3);
        f.add(x3, budaghyan_term(&f, a, a_inv, x3, variant))
    }))
}

/// The inner map f' with f = f'(x^3): x + a^-1 Tr_{2^3m/2^3}(a^3 x^3 + a^6 x^6).
pub fn budaghyan_inner(field: &Arc<FieldSpec>, a: Elem, variant: Variant) -> Result<MapTable> {
    let a = budaghyan_check(field, a)?;
    let f = field.clone();
    let a_inv = f.inv(a)?;
    Ok(MapTable::from_fn(field.clone(), move |x| f.add(x, budaghyan_term(&f, a, a_inv, x, variant))))
}

/// Smallest code in F_{2^m} that is not a cube; None when every element is a cube.
pub fn smallest_non_cube(field: &FieldSpec) -> Option<Elem> {
    (1..field.order() as Elem).find(|&x| !field.is_cube(x))
}

fn zhou_pott_check(half: &FieldSpec, i: u32, k: u32, alpha: Elem) -> Result<()> {
    const NAME: &str = "zhou-pott";
    require_binary(NAME, half)?;
    let m = half.n();
    if m < 2 || m % 2 == 1 {
        return Err(hyp(NAME, "m >= 2 even"));
    }
    if i < 2 || i % 2 == 1 {
        return Err(hyp(NAME, "i >= 2 even"));
    }
    if gcd(k as u64, m as u64) != 1 {
        return Err(hyp(NAME, "gcd(k, m) = 1"));
    }
    half.check_elem(alpha as u64)?;
    if half.is_cube(alpha) {
        return Err(hyp(NAME, "alpha not a cube in F_2^m"));
    }
    Ok(())
}

/// (x^(2^k+1) + alpha y^((2^k+1) 2^i), x y) on F_2^m x F_2^m.
pub fn zhou_pott_f(half: &Arc<FieldSpec>, i: u32, k: u32, alpha: Elem) -> Result<BivariateMap> {
    zhou_pott_check(half, i, k, alpha)?;
    let h = half.clone();
    Ok(BivariateMap::from_fn(half.clone(), move |x, y| {
        let g = h.add(gold_power(&h, x, k), h.mul(alpha, h.frobenius(gold_power(&h, y, k), i)));
        (g, h.mul(x, y))
    }))
}

/// (x^(2^k+1) + alpha y^(2^k+1), x y^(2^(m-i))) on F_2^m x F_2^m.
pub fn zhou_pott_g(half: &Arc<FieldSpec>, i: u32, k: u32, alpha: Elem) -> Result<BivariateMap> {
    zhou_pott_check(half, i, k, alpha)?;
    let m = half.n() as i64;
    // y^(2^(m-i)) with the Frobenius exponent taken mod m
    let shift = (m - i as i64).rem_euclid(m) as u32;
    let h = half.clone();
    Ok(BivariateMap::from_fn(half.clone(), move |x, y| {
        let g = h.add(gold_power(&h, x, k), h.mul(alpha, gold_power(&h, y, k)));
        (g, h.mul(x, h.frobenius(y, shift)))
    }))
}

fn gologlu_check(half: &FieldSpec, k: u32, odd_m: bool, name: &'static str) -> Result<()> {
    require_binary(name, half)?;
    let m = half.n();
    if gcd(3 * k as u64, m as u64) != 1 {
        return Err(hyp(name, "gcd(3k, m) = 1"));
    }
    if odd_m && m.is_multiple_of(2) {
        return Err(hyp(name, "m odd"));
    }
    Ok(())
}

fn gologlu_first(h: &FieldSpec, x: Elem, y: Elem, k: u32) -> Elem {
    let t = h.add(gold_power(h, x, k), h.mul(x, h.frobenius(y, k)));
    h.add(t, gold_power(h, y, k))
}

/// (x^(2^k+1) + x y^(2^k) + y^(2^k+1), x^(2^2k+1) + x^(2^2k) y + y^(2^2k+1)).
pub fn gologlu_f1(half: &Arc<FieldSpec>, k: u32) -> Result<BivariateMap> {
    gologlu_check(half, k, false, "gologlu-f1")?;
    let h = half.clone();
    Ok(BivariateMap::from_fn(half.clone(), move |x, y| {
        let s = h.add(gold_power(&h, x, 2 * k), h.mul(h.frobenius(x, 2 * k), y));
        (gologlu_first(&h, x, y, k), h.add(s, gold_power(&h, y, 2 * k)))
    }))
}

/// (x^(2^k+1) + x y^(2^k) + y^(2^k+1), x^(2^3k) y + x y^(2^3k)), m odd.
pub fn gologlu_f2(half: &Arc<FieldSpec>, k: u32) -> Result<BivariateMap> {
    gologlu_check(half, k, true, "gologlu-f2")?;
    let h = half.clone();
    Ok(BivariateMap::from_fn(half.clone(), move |x, y| {
        let s = h.add(h.mul(h.frobenius(x, 3 * k), y), h.mul(x, h.frobenius(y, 3 * k)));
        (gologlu_first(&h, x, y, k), s)
    }))
}

fn chk_check(field: &FieldSpec, alpha: Elem, beta: Elem, gamma: Elem) -> Result<()> {
    const NAME: &str = "chk-apn";
    require_binary(NAME, field)?;
    if field.n() % 2 == 1 {
        return Err(hyp(NAME, "n even"));
    }
    nonzero(NAME, field, "alpha", alpha)?;
    nonzero(NAME, field, "beta", beta)?;
    nonzero(NAME, field, "gamma", gamma)?;
    if field.trace(field.mul(beta, alpha)) != 1 {
        return Err(hyp(NAME, "Tr(beta alpha) = 1"));
    }
    let hits = (0..field.order() as Elem).any(|x| field.add(field.mul(x, x), field.mul(alpha, x)) == gamma);
    if hits {
        return Err(hyp(NAME, "gamma not in {x^2 + alpha x}"));
    }
    Ok(())
}

/// x^2 + alpha x + gamma Tr(alpha^-3 x^3 + beta x), evaluated at y.
fn chk_inner_at(f: &FieldSpec, c: (Elem, Elem, Elem, Elem), y: Elem) -> Elem {
    let (alpha, beta, gamma, alpha_m3) = c;
    let t = f.trace(f.add(f.mul(alpha_m3, f.pow(y, 3)), f.mul(beta, y)));
    f.add(f.add(f.mul(y, y), f.mul(alpha, y)), f.mul(gamma, t))
}

/// The inner permutation x^2 + alpha x + gamma Tr(alpha^-3 x^3 + beta x).
pub fn chk_inner(field: &Arc<FieldSpec>, alpha: Elem, beta: Elem, gamma: Elem) -> Result<MapTable> {
    chk_check(field, alpha, beta, gamma)?;
    let f = field.clone();
    let c = (alpha, beta, gamma, f.pow_signed(alpha, -3));
    Ok(MapTable::from_fn(field.clone(), move |x| chk_inner_at(&f, c, x)))
}

/// x^6 + alpha x^3 + gamma Tr(alpha^-3 x^9 + beta x^3).
pub fn chk_apn(field: &Arc<FieldSpec>, alpha: Elem, beta: Elem, gamma: Elem) -> Result<MapTable> {
    chk_check(field, alpha, beta, gamma)?;
    let f = field.clone();
    let c = (alpha, beta, gamma, f.pow_signed(alpha, -3));
    Ok(MapTable::from_fn(field.clone(), move |x| chk_inner_at(&f, c, f.pow(x, 3))))
}

/// Admissible (alpha, beta, gamma) in lexicographic order of codes.
pub fn chk_admissible(field: &Arc<FieldSpec>, limit: usize) -> Vec<(Elem, Elem, Elem)> {
    let q = field.order() as Elem;
    let mut out = Vec::new();
    if !field.is_binary() || field.n() % 2 == 1 {
        return out;
    }
    for alpha in 1..q {
        let mut image = vec![false; q as usize];
        for x in 0..q {
            image[field.add(field.mul(x, x), field.mul(alpha, x)) as usize] = true;
        }
        for beta in 1..q {
            if field.trace(field.mul(beta, alpha)) != 1 {
                continue;
            }
            for gamma in 1..q {
                if !image[gamma as usize] {
                    out.push((alpha, beta, gamma));
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Parameters of a family instance, as accepted by the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Elem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Elem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Elem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Elem>,
}

/// A resolved family instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    Gold { n: u32, k: u32 },
    CubePlusTrace { n: u32 },
    CubeTrace2to1 { n: u32, a: Elem },
    BudaghyanF1 { m: u32, a: Elem },
    BudaghyanF2 { m: u32, a: Elem },
    BudaghyanF1Inner { m: u32, a: Elem },
    BudaghyanF2Inner { m: u32, a: Elem },
    ZhouPottF { m: u32, i: u32, k: u32, alpha: Elem },
    ZhouPottG { m: u32, i: u32, k: u32, alpha: Elem },
    GologluF1 { m: u32, k: u32 },
    GologluF2 { m: u32, k: u32 },
    ChkApn { n: u32, alpha: Elem, beta: Elem, gamma: Elem },
    ChkInner { n: u32, alpha: Elem, beta: Elem, gamma: Elem },
    /// x^3 + x^64 + x^16 + x^4 on F_2^7.
    Min7,
    /// x^3 + x^256 on F_2^11.
    Min11,
    /// x^3 + x^4 on F_2^n.
    Binomial { n: u32 },
    /// x^d on F_2^(5g), d = 2^4g + 2^3g + 2^2g + 2^g - 1.
    Dobbertin { g: u32 },
}

/// Output of a family constructor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Built {
    Univariate(MapTable),
    Bivariate(BivariateMap),
}

impl Built {
    /// The univariate table, converting bivariate maps with the default basis.
    pub fn into_univariate(self) -> Result<MapTable> {
        match self {
            Built::Univariate(t) => Ok(t),
            Built::Bivariate(b) => b.to_univariate(),
        }
    }
}

pub const FAMILY_IDS: &[&str] = &[
    "gold",
    "cube-plus-trace",
    "cube-trace-2to1",
    "budaghyan-f1",
    "budaghyan-f2",
    "budaghyan-f1-inner",
    "budaghyan-f2-inner",
    "zhou-pott-f",
    "zhou-pott-g",
    "gologlu-f1",
    "gologlu-f2",
    "chk-apn",
    "chk-inner",
    "min7",
    "min11",
    "binomial-n<N>",
    "dobbertin-g<G>",
];

fn need<T: Copy>(v: Option<T>, id: &str, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("family `{}` needs --{}", id, name)))
}

fn suffix_number(id: &str, prefix: &str) -> Option<u32> {
    id.strip_prefix(prefix).and_then(|s| s.parse().ok())
}

impl FamilySpec {
    /// Resolves an id plus parameters. Ids accept `_` in place of `-`.
    pub fn from_id(id: &str, p: &FamilyParams) -> Result<FamilySpec> {
        let norm = id.to_ascii_lowercase().replace('_', "-");
        let a = p.a.unwrap_or(1);
        let spec = match norm.as_str() {
            "gold" => FamilySpec::Gold { n: need(p.n, id, "n")?, k: p.k.unwrap_or(1) },
            "cube-plus-trace" => FamilySpec::CubePlusTrace { n: need(p.n, id, "n")? },
            "cube-trace-2to1" | "cube_trace_2to1" => FamilySpec::CubeTrace2to1 { n: need(p.n, id, "n")?, a },
            "budaghyan-f1" => FamilySpec::BudaghyanF1 { m: need(p.m, id, "m")?, a },
            "budaghyan-f2" => FamilySpec::BudaghyanF2 { m: need(p.m, id, "m")?, a },
            "budaghyan-f1-inner" => FamilySpec::BudaghyanF1Inner { m: need(p.m, id, "m")?, a },
            "budaghyan-f2-inner" => FamilySpec::BudaghyanF2Inner { m: need(p.m, id, "m")?, a },
            "zhou-pott-f" | "zhou-pott-g" => {
                let m = need(p.m, id, "m")?;
                let alpha = match p.alpha {
                    Some(v) => v,
                    None => smallest_non_cube(&*FieldSpec::binary(m)?)
                        .ok_or_else(|| hyp("zhou-pott", "alpha not a cube in F_2^m"))?,
                };
                let (i, k) = (p.i.unwrap_or(2), p.k.unwrap_or(1));
                if norm == "zhou-pott-f" {
                    FamilySpec::ZhouPottF { m, i, k, alpha }
                } else {
                    FamilySpec::ZhouPottG { m, i, k, alpha }
                }
            }
            "gologlu-f1" => FamilySpec::GologluF1 { m: need(p.m, id, "m")?, k: p.k.unwrap_or(1) },
            "gologlu-f2" => FamilySpec::GologluF2 { m: need(p.m, id, "m")?, k: p.k.unwrap_or(1) },
            "chk-apn" | "chk-inner" => {
                let n = need(p.n, id, "n")?;
                let (alpha, beta, gamma) = match (p.alpha, p.beta, p.gamma) {
                    (Some(al), Some(be), Some(ga)) => (al, be, ga),
                    (None, None, None) => *chk_admissible(&FieldSpec::binary(n)?, 1)
                        .first()
                        .ok_or_else(|| hyp("chk-apn", "n even"))?,
                    _ => return Err(Error::Parse("chk families need all of --alpha, --beta, --gamma or none".into())),
                };
                if norm == "chk-apn" {
                    FamilySpec::ChkApn { n, alpha, beta, gamma }
                } else {
                    FamilySpec::ChkInner { n, alpha, beta, gamma }
                }
            }
            "min7" => FamilySpec::Min7,
            "min11" => FamilySpec::Min11,
            "binomial" => FamilySpec::Binomial { n: need(p.n, id, "n")? },
            "dobbertin" => FamilySpec::Dobbertin { g: need(p.k, id, "k")? },
            other => {
                if let Some(n) = suffix_number(other, "binomial-n") {
                    FamilySpec::Binomial { n }
                } else if let Some(g) = suffix_number(other, "dobbertin-g") {
                    FamilySpec::Dobbertin { g }
                } else {
                    return Err(Error::UnknownFamily(id.to_string()));
                }
            }
        };
        Ok(spec)
    }

    /// Stable textual id.
    pub fn id(&self) -> String {
        match self {
            FamilySpec::Gold { .. } => "gold".into(),
            FamilySpec::CubePlusTrace { .. } => "cube-plus-trace".into(),
            FamilySpec::CubeTrace2to1 { .. } => "cube-trace-2to1".into(),
            FamilySpec::BudaghyanF1 { .. } => "budaghyan-f1".into(),
            FamilySpec::BudaghyanF2 { .. } => "budaghyan-f2".into(),
            FamilySpec::BudaghyanF1Inner { .. } => "budaghyan-f1-inner".into(),
            FamilySpec::BudaghyanF2Inner { .. } => "budaghyan-f2-inner".into(),
            FamilySpec::ZhouPottF { .. } => "zhou-pott-f".into(),
            FamilySpec::ZhouPottG { .. } => "zhou-pott-g".into(),
            FamilySpec::GologluF1 { .. } => "gologlu-f1".into(),
            FamilySpec::GologluF2 { .. } => "gologlu-f2".into(),
            FamilySpec::ChkApn { .. } => "chk-apn".into(),
            FamilySpec::ChkInner { .. } => "chk-inner".into(),
            FamilySpec::Min7 => "min7".into(),
            FamilySpec::Min11 => "min11".into(),
            FamilySpec::Binomial { n } => format!("binomial-n{}", n),
            FamilySpec::Dobbertin { g } => format!("dobbertin-g{}", g),
        }
    }

    /// Degree of the (full) field the map lives on.
    pub fn field_degree(&self) -> u32 {
        match *self {
            FamilySpec::Gold { n, .. }
            | FamilySpec::CubePlusTrace { n }
            | FamilySpec::CubeTrace2to1 { n, .. }
            | FamilySpec::ChkApn { n, .. }
            | FamilySpec::ChkInner { n, .. }
            | FamilySpec::Binomial { n } => n,
            FamilySpec::BudaghyanF1 { m, .. }
            | FamilySpec::BudaghyanF2 { m, .. }
            | FamilySpec::BudaghyanF1Inner { m, .. }
            | FamilySpec::BudaghyanF2Inner { m, .. } => 3 * m,
            FamilySpec::ZhouPottF { m, .. }
            | FamilySpec::ZhouPottG { m, .. }
            | FamilySpec::GologluF1 { m, .. }
            | FamilySpec::GologluF2 { m, .. } => 2 * m,
            FamilySpec::Min7 => 7,
            FamilySpec::Min11 => 11,
            FamilySpec::Dobbertin { g } => 5 * g,
        }
    }

    pub fn build(&self) -> Result<(Built, Vec<String>)> {
        self.build_with_cap(crate::field::DEFAULT_TABLE_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<(Built, Vec<String>)> {
        let field = |n: u32| FieldSpec::with_cap(2, n, None, cap).map(Arc::new);
        let uni = |t: MapTable| Ok((Built::Univariate(t), Vec::new()));
        let bi = |b: BivariateMap| Ok((Built::Bivariate(b), Vec::new()));
        match *self {
            FamilySpec::Gold { n, k } => {
                let (t, w) = gold(&field(n)?, k)?;
                Ok((Built::Univariate(t), w))
            }
            FamilySpec::CubePlusTrace { n } => uni(cube_plus_trace(&field(n)?)?),
            FamilySpec::CubeTrace2to1 { n, a } => uni(cube_trace_2to1(&field(n)?, a)?),
            FamilySpec::BudaghyanF1 { m, a } => uni(budaghyan(&field(3 * m)?, a, Variant::Plain)?),
            FamilySpec::BudaghyanF2 { m, a } => uni(budaghyan(&field(3 * m)?, a, Variant::Squared)?),
            FamilySpec::BudaghyanF1Inner { m, a } => uni(budaghyan_inner(&field(3 * m)?, a, Variant::Plain)?),
            FamilySpec::BudaghyanF2Inner { m, a } => uni(budaghyan_inner(&field(3 * m)?, a, Variant::Squared)?),
            FamilySpec::ZhouPottF { m, i, k, alpha } => bi(zhou_pott_f(&field(m)?, i, k, alpha)?),
            FamilySpec::ZhouPottG { m, i, k, alpha } => {
                let half = field(m)?;
                let bv = zhou_pott_g(&half, i, k, alpha)?;
                let mut warnings = Vec::new();
                if i % m == 0 {
                    warnings.push(format!(
                        "i = {} is a multiple of m = {}: y^(2^(m-i)) is the identity and g coincides with f",
                        i, m
                    ));
                }
                Ok((Built::Bivariate(bv), warnings))
            }
            FamilySpec::GologluF1 { m, k } => bi(gologlu_f1(&field(m)?, k)?),
            FamilySpec::GologluF2 { m, k } => bi(gologlu_f2(&field(m)?, k)?),
            FamilySpec::ChkApn { n, alpha, beta, gamma } => uni(chk_apn(&field(n)?, alpha, beta, gamma)?),
            FamilySpec::ChkInner { n, alpha, beta, gamma } => uni(chk_inner(&field(n)?, alpha, beta, gamma)?),
            FamilySpec::Min7 => uni(MapTable::from_expression(field(7)?, "x^3 + x^64 + x^16 + x^4")?),
            FamilySpec::Min11 => uni(MapTable::from_expression(field(11)?, "x^3 + x^256")?),
            FamilySpec::Binomial { n } => {
                if n == 0 {
                    return Err(Error::ZeroDegree);
                }
                uni(MapTable::from_expression(field(n)?, "x^3 + x^4")?)
            }
            FamilySpec::Dobbertin { g } => {
                if g == 0 || g % 2 == 1 {
                    return Err(hyp("dobbertin", "10 | n with n = 5g"));
                }
                let f = field(5 * g)?;
                uni(monomial(&f, dobbertin_exponent(g)))
            }
        }
    }
}

/// 2^4g + 2^3g + 2^2g + 2^g - 1.
pub fn dobbertin_exponent(g: u32) -> u64 {
    (1u64 << (4 * g)) + (1u64 << (3 * g)) + (1u64 << (2 * g)) + (1u64 << g) - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{DifferentialProfile, PreimageProfile};

    fn bin(n: u32) -> Arc<FieldSpec> {
        FieldSpec::binary(n).unwrap()
    }

    #[test]
    fn gold_images_and_warnings() {
        let (t, w) = gold(&bin(4), 1).unwrap();
        assert!(w.is_empty());
        assert_eq!(PreimageProfile::new(&t).image_size(), 6);
        let (t5, _) = gold(&bin(5), 1).unwrap();
        assert!(PreimageProfile::new(&t5).is_permutation());
        let (x5, w) = gold(&bin(4), 2).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(PreimageProfile::new(&x5).image_size(), 4);
        assert_eq!(x5, monomial(&bin(4), 5));
    }

    #[test]
    fn cube_plus_trace_shapes() {
        let f4 = cube_plus_trace(&bin(4)).unwrap();
        assert!(PreimageProfile::new(&f4).is_almost_k_to_1(3));
        assert!(PreimageProfile::new(&cube_plus_trace(&bin(5)).unwrap()).is_k_to_1(2));
        assert_eq!(DifferentialProfile::new(&cube_plus_trace(&bin(3)).unwrap()).uniformity(), 2);
        assert_eq!(f4, MapTable::from_expression(bin(4), "x^3 + Tr(x^9)").unwrap());
    }

    #[test]
    fn cube_trace_2to1_gates_and_shape() {
        assert!(cube_trace_2to1(&bin(4), 1).is_err());
        assert!(cube_trace_2to1(&bin(5), 0).is_err());
        assert_eq!(PreimageProfile::new(&cube_trace_2to1(&bin(5), 1).unwrap()).m(2), 16);
        assert_eq!(PreimageProfile::new(&cube_trace_2to1(&bin(3), 1).unwrap()).m(2), 4);
        let f7 = bin(7);
        let g = f7.generator();
        assert!(PreimageProfile::new(&cube_trace_2to1(&f7, g).unwrap()).is_k_to_1(2));
    }

    #[test]
    fn budaghyan_small_cases() {
        for v in [Variant::Plain, Variant::Squared] {
            let pp = PreimageProfile::new(&budaghyan(&bin(3), 1, v).unwrap());
            assert_eq!((pp.m(1), pp.m(4), pp.image_size()), (4, 1, 5));
            assert!(budaghyan_inner(&bin(6), 1, v).unwrap().is_permutation());
        }
        assert!(budaghyan(&bin(4), 1, Variant::Plain).is_err());
        assert!(budaghyan(&bin(6), 0, Variant::Plain).is_err());
    }

    #[test]
    fn composed_equals_inner_of_cube() {
        let f = bin(6);
        for v in [Variant::Plain, Variant::Squared] {
            let outer = budaghyan(&f, 3, v).unwrap();
            let inner = budaghyan_inner(&f, 3, v).unwrap();
            assert!((0..64).all(|x| outer.eval(x) == inner.eval(f.pow(x, 3))));
        }
    }

    #[test]
    fn zhou_pott_gates() {
        let half = bin(2);
        let w = smallest_non_cube(&half).unwrap();
        assert!(zhou_pott_f(&half, 2, 1, w).is_ok());
        assert!(zhou_pott_f(&half, 2, 1, 1).is_err());
        assert!(zhou_pott_f(&half, 3, 1, w).is_err());
        assert!(zhou_pott_f(&half, 2, 2, w).is_err());
        assert!(zhou_pott_f(&bin(3), 2, 1, 2).is_err());
        assert_eq!(smallest_non_cube(&bin(3)), None);
    }

    #[test]
    fn zhou_pott_images() {
        let half = bin(2);
        let w = smallest_non_cube(&half).unwrap();
        let f = zhou_pott_f(&half, 2, 1, w).unwrap().to_univariate().unwrap();
        let pp = PreimageProfile::new(&f);
        assert_eq!(pp.image_size(), 6);
        assert!(pp.is_almost_k_to_1(3));
        let g = zhou_pott_g(&half, 2, 1, w).unwrap().to_univariate().unwrap();
        assert!(PreimageProfile::new(&g).is_almost_k_to_1(3));
    }

    #[test]
    fn zhou_pott_collision_structure() {
        // f(x, y) = f(u, v) iff (x, y) = (w u, w^2 v) with w in F_4^*
        let half = bin(4);
        let alpha = smallest_non_cube(&half).unwrap();
        let bv = zhou_pott_f(&half, 2, 1, alpha).unwrap();
        let cube_roots: Vec<Elem> = (1..16).filter(|&w| half.pow(w, 3) == 1).collect();
        assert_eq!(cube_roots.len(), 3);
        for x in 0..16 {
            for y in 0..16 {
                let orbit: Vec<(Elem, Elem)> =
                    cube_roots.iter().map(|&w| (half.mul(w, x), half.mul(half.mul(w, w), y))).collect();
                for u in 0..16 {
                    for v in 0..16 {
                        let same = bv.eval(x, y) == bv.eval(u, v);
                        assert_eq!(same, orbit.contains(&(u, v)), "({x},{y}) vs ({u},{v})");
                    }
                }
            }
        }
    }

    #[test]
    fn gologlu_symmetry_and_gates() {
        let half = bin(2);
        let f1 = gologlu_f1(&half, 1).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(f1.eval(y, half.add(x, y)), f1.eval(x, y));
                assert_eq!(f1.eval(half.add(x, y), x), f1.eval(x, y));
            }
        }
        assert_eq!(PreimageProfile::new(&f1.to_univariate().unwrap()).image_size(), 6);
        assert!(gologlu_f1(&bin(3), 1).is_err());
        assert!(gologlu_f2(&bin(4), 1).is_err());
        assert!(gologlu_f2(&bin(2), 1).is_err());
        let f2 = gologlu_f2(&bin(5), 1).unwrap();
        let h = bin(5);
        for x in 0..32 {
            for y in 0..32 {
                assert_eq!(f2.eval(y, h.add(x, y)), f2.eval(x, y));
            }
        }
    }

    #[test]
    fn chk_gates_and_permutation() {
        let f = bin(4);
        let triples = chk_admissible(&f, 5);
        assert!(!triples.is_empty());
        for &(a, b, c) in &triples {
            assert!(chk_inner(&f, a, b, c).unwrap().is_permutation());
            assert_eq!(DifferentialProfile::new(&chk_apn(&f, a, b, c).unwrap()).uniformity(), 2);
        }
        let (a, b, _) = triples[0];
        // gamma = a^2 + a*a = 0 is excluded; take x = 1: 1 + a
        let inside = f.add(1, a);
        let err = chk_apn(&f, a, b, inside).unwrap_err();
        assert!(matches!(err, Error::Hypothesis { ref clause, .. } if clause.contains("gamma")));
        assert!(chk_apn(&bin(5), 1, 1, 1).is_err());
        assert!(chk_admissible(&bin(5), 1).is_empty());
    }

    #[test]
    fn named_catalog() {
        let build = |id: &str| FamilySpec::from_id(id, &FamilyParams::default()).unwrap().build().unwrap().0;
        let min7 = build("min7").into_univariate().unwrap();
        assert_eq!(PreimageProfile::new(&min7).image_size(), 57);
        assert_eq!(dobbertin_exponent(2), 339);
        assert!(FamilySpec::Dobbertin { g: 1 }.build().is_err());
        assert!(FamilySpec::from_id("nope", &FamilyParams::default()).is_err());
        assert_eq!(FamilySpec::from_id("binomial-n5", &FamilyParams::default()).unwrap(), FamilySpec::Binomial { n: 5 });
        assert_eq!(
            FamilySpec::from_id("budaghyan_f1", &FamilyParams { m: Some(1), ..Default::default() }).unwrap(),
            FamilySpec::BudaghyanF1 { m: 1, a: 1 }
        );
    }

    #[test]
    fn spec_round_trips_through_json() {
        let s = FamilySpec::ZhouPottF { m: 2, i: 2, k: 1, alpha: 2 };
        let j = serde_json::to_string(&s).unwrap();
        assert!(j.contains("\"family\":\"zhou-pott-f\""));
        assert_eq!(serde_json::from_str::<FamilySpec>(&j).unwrap(), s);
        for spec in [FamilySpec::Binomial { n: 5 }, FamilySpec::Dobbertin { g: 2 }, FamilySpec::Min7] {
            assert_eq!(FamilySpec::from_id(&spec.id(), &FamilyParams::default()).unwrap(), spec);
        }
    }

    #[test]
    fn deterministic() {
        let s = FamilySpec::GologluF1 { m: 4, k: 1 };
        assert!(FamilySpec::GologluF1 { m: 3, k: 1 }.build().is_err());
        let a = s.build().unwrap().0.into_univariate().unwrap();
        let b = s.build().unwrap().0.into_univariate().unwrap();
        assert_eq!(a.digest(), b.digest());
    }
}
