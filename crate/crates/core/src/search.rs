//! Exhaustive and seeded random searches, streamed as JSON lines.

use std::io::Write;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::families::monomial;
use crate::field::{gcd, Elem, FieldSpec};
use crate::map::{MapTable, PolyRepr};
use crate::spectra::{uniformity_exceeds, DifferentialProfile, PreimageProfile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum SearchMode {
    MonomialExhaustive { n: u32 },
    QuadraticRandom { n: u32, samples: u64, seed: u64 },
    MinimalImageProbe { n: u32, samples: u64, seed: u64 },
}

/// APN exponents 1 <= k <= q - 2 of x^k on F_2^n, in increasing order.
pub fn apn_monomial_exponents(field: &Arc<FieldSpec>) -> Vec<u64> {
    let q = field.order() as u64;
    (1..q - 1)
        .into_par_iter()
        .filter(|&k| !uniformity_exceeds(&monomial(field, k), 2))
        .collect()
}

/// Sum of c x^(2^i + 2^j) over i < j < n, each term kept with probability 1/2.
pub fn random_do(field: &Arc<FieldSpec>, rng: &mut ChaCha8Rng) -> PolyRepr {
    let n = field.n();
    let q = field.order() as u32;
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.5) {
                terms.push(((1u64 << i) + (1u64 << j), rng.random_range(1..q)));
            }
        }
    }
    PolyRepr::new(field.clone(), terms).expect("exponents below q")
}

/// A random table whose preimage distribution is `omegas` (one entry per image point).
pub fn random_with_distribution(field: &Arc<FieldSpec>, omegas: &[u32], rng: &mut ChaCha8Rng) -> MapTable {
    let q = field.order();
    debug_assert_eq!(omegas.iter().map(|&w| w as usize).sum::<usize>(), q);
    let mut points: Vec<Elem> = (0..q as Elem).collect();
    points.shuffle(rng);
    let image = &points[..omegas.len()];
    let mut table: Vec<Elem> = omegas.iter().zip(image).flat_map(|(&w, &y)| std::iter::repeat_n(y, w as usize)).collect();
    table.shuffle(rng);
    MapTable::new(field.clone(), table).expect("values in range")
}

/// The even-n distributions at image size (q + 2) / 3: case 1, 2 and 3.
pub fn minimal_distributions(n: u32) -> [Vec<u32>; 3] {
    let image = (1usize << n).div_ceil(3);
    let mut c1 = vec![3; image];
    c1[0] = 1;
    let mut c2 = vec![3; image];
    c2[..2].copy_from_slice(&[2, 2]);
    let mut c3 = vec![3; image];
    if image >= 4 {
        c3[..4].copy_from_slice(&[2, 2, 2, 4]);
    }
    [c1, c2, c3]
}

fn minimal_case(pp: &PreimageProfile) -> Option<u8> {
    let image = pp.image_size();
    let ranks = |allowed: &[u32]| pp.m_counts().keys().all(|r| allowed.contains(r));
    if pp.m(1) == 1 && pp.m(3) == image - 1 && ranks(&[1, 3]) {
        Some(1)
    } else if pp.m(2) == 2 && pp.m(3) == image - 2 && ranks(&[2, 3]) {
        Some(2)
    } else if pp.m(2) == 3 && pp.m(4) == 1 && ranks(&[2, 3, 4]) {
        Some(3)
    } else {
        None
    }
}

fn emit<W: Write>(out: &mut W, v: serde_json::Value) -> Result<()> {
    writeln!(out, "{}", v)?;
    Ok(())
}

fn field_for(n: u32, cap: usize) -> Result<Arc<FieldSpec>> {
    FieldSpec::with_cap(2, n, None, cap).map(Arc::new)
}

pub fn run<W: Write>(mode: &SearchMode, cap: usize, out: &mut W) -> Result<()> {
    match *mode {
        SearchMode::MonomialExhaustive { n } => {
            let field = field_for(n, cap)?;
            let q = field.order() as u64;
            let found = apn_monomial_exponents(&field);
            for &k in &found {
                let f = monomial(&field, k);
                emit(out, json!({
                    "mode": "monomial-exhaustive",
                    "n": n,
                    "k": k,
                    "gcd": gcd(k, q - 1),
                    "digest": f.digest(),
                    "recipe": format!("x^{k}"),
                }))?;
            }
            emit(out, json!({ "summary": true, "mode": "monomial-exhaustive", "n": n, "checked": q - 2, "apn_exponents": found }))
        }
        SearchMode::QuadraticRandom { n, samples, seed } => {
            let field = field_for(n, cap)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut hits = 0u64;
            for sample in 0..samples {
                let poly = random_do(&field, &mut rng);
                let f = poly.to_table();
                if uniformity_exceeds(&f, 2) {
                    continue;
                }
                hits += 1;
                let pp = PreimageProfile::new(&f);
                emit(out, json!({
                    "mode": "quadratic-random",
                    "n": n,
                    "seed": seed,
                    "sample": sample,
                    "image_size": pp.image_size(),
                    "digest": f.digest(),
                    "recipe": poly.to_string(),
                }))?;
            }
            emit(out, json!({ "summary": true, "mode": "quadratic-random", "n": n, "seed": seed, "samples": samples, "apn_hits": hits }))
        }
        SearchMode::MinimalImageProbe { n, samples, seed } => {
            if n % 2 == 1 || n < 2 {
                return Err(Error::Unsupported("minimal-image probe needs even n >= 2".into()));
            }
            let field = field_for(n, cap)?;
            let q = field.order() as u64;
            let minimum = q.div_ceil(3);
            let dists = minimal_distributions(n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut by_case = [0u64; 3];
            for sample in 0..samples {
                // rotate through: random DO polynomial, case-2 table, case-3 table
                let (f, recipe) = match sample % 3 {
                    0 => {
                        let poly = random_do(&field, &mut rng);
                        (poly.to_table(), format!("do:{}", poly))
                    }
                    s => (random_with_distribution(&field, &dists[s as usize], &mut rng), format!("distribution-case-{}", s + 1)),
                };
                let pp = PreimageProfile::new(&f);
                if pp.image_size() != minimum || uniformity_exceeds(&f, 2) {
                    continue;
                }
                let Some(case) = minimal_case(&pp) else { continue };
                by_case[case as usize - 1] += 1;
                emit(out, json!({
                    "mode": "minimal-image-probe",
                    "n": n,
                    "seed": seed,
                    "sample": sample,
                    "case": case,
                    "case_2_or_3": case != 1,
                    "uniformity": DifferentialProfile::new(&f).uniformity(),
                    "digest": f.digest(),
                    "recipe": recipe,
                }))?;
            }
            emit(out, json!({
                "summary": true,
                "mode": "minimal-image-probe",
                "n": n,
                "seed": seed,
                "samples": samples,
                "case_1": by_case[0],
                "case_2": by_case[1],
                "case_3": by_case[2],
            }))
        }
    }
}
