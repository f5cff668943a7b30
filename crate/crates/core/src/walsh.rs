//! Walsh spectra of maps on binary fields.
//!
//! W(b, a) = sum_x (-1)^(Tr(b f(x) + a x)). With t(b) the bit vector
//! t(b)_j = Tr(b x^j), Tr(b y) = parity(y & t(b)), so one fast Walsh-Hadamard
//! transform of a component yields W(b, a) for every a at index t(a).

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{gcd, Elem, FieldSpec};
use crate::map::MapTable;
use crate::spectra::PreimageProfile;

pub const DEFAULT_FULL_CAP: u32 = 14;
pub const DEFAULT_ZERO_CAP: u32 = 20;

/// In-place unnormalized Walsh-Hadamard transform.
pub fn fwht(v: &mut [i64]) {
    let len = v.len();
    let mut h = 1;
    while h < len {
        for chunk in v.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

fn binary_field(f: &MapTable) -> Result<&FieldSpec> {
    let field = f.field();
    if !field.is_binary() {
        return Err(Error::Unsupported("Walsh analysis needs p = 2".into()));
    }
    Ok(field)
}

/// t(b) for every b, so that Tr(b y) = parity(y & t[b]).
fn trace_forms(field: &FieldSpec) -> Vec<u32> {
    let n = field.n();
    (0..field.order() as Elem)
        .map(|b| (0..n).fold(0u32, |acc, j| acc | field.trace(field.mul(b, 1 << j)) << j))
        .collect()
}

fn component(f: &MapTable, tb: u32) -> Vec<i64> {
    let mut v: Vec<i64> = f
        .table()
        .iter()
        .map(|&y| if (y & tb).count_ones() & 1 == 0 { 1 } else { -1 })
        .collect();
    fwht(&mut v);
    v
}

/// W(b, a) for every a, indexed by a.
pub fn component_spectrum(f: &MapTable, b: Elem) -> Result<Vec<i64>> {
    let field = binary_field(f)?;
    if b == 0 {
        return Err(Error::NotApplicable("Walsh component b = 0".into()));
    }
    field.check_elem(b as u64)?;
    let t = trace_forms(field);
    let w = component(f, t[b as usize]);
    Ok((0..field.order()).map(|a| w[t[a] as usize]).collect())
}

/// Amplitude t when every nonzero |W| equals 2^((n + t) / 2).
fn amplitude(n: u32, w: &[i64]) -> Option<u32> {
    let max = w.iter().map(|v| v.unsigned_abs()).max()?;
    if !max.is_power_of_two() || w.iter().any(|v| v.unsigned_abs() != 0 && v.unsigned_abs() != max) {
        return None;
    }
    let s = max.trailing_zeros();
    (2 * s).checked_sub(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshProfile {
    n: u32,
    full: bool,
    /// index b - 1
    w_zero: Vec<i64>,
    /// index b - 1; empty unless full
    amplitudes: Vec<Option<u32>>,
    /// |W(b, a)| -> multiplicity over b != 0 and all a; empty unless full
    spectrum: BTreeMap<u64, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalshSummary {
    pub mode: &'static str,
    pub balanced_count: u64,
    pub w_zero_values: BTreeMap<i64, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component_wise_plateaued: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<BTreeMap<String, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bent_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended_spectrum: Option<BTreeMap<u64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub almost_bent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical: Option<bool>,
}

impl WalshProfile {
    pub fn full(f: &MapTable) -> Result<Self> {
        Self::full_with_cap(f, DEFAULT_FULL_CAP)
    }

    pub fn full_with_cap(f: &MapTable, cap: u32) -> Result<Self> {
        let field = binary_field(f)?;
        let n = field.n();
        if n > cap {
            return Err(Error::WalshCapExceeded { n, cap });
        }
        let t = trace_forms(field);
        let parseval = 1i64 << (2 * n);
        let per: Vec<(i64, Option<u32>, BTreeMap<u64, u64>)> = (1..field.order())
            .into_par_iter()
            .map(|b| {
                let w = component(f, t[b]);
                let energy: i64 = w.iter().map(|v| v * v).sum();
                assert_eq!(energy, parseval, "Parseval identity violated for b = {b}");
                let mut hist = BTreeMap::new();
                for v in &w {
                    *hist.entry(v.unsigned_abs()).or_insert(0u64) += 1;
                }
                (w[0], amplitude(n, &w), hist)
            })
            .collect();
        let mut spectrum = BTreeMap::new();
        for (_, _, h) in &per {
            for (&k, &c) in h {
                *spectrum.entry(k).or_insert(0) += c;
            }
        }
        Ok(WalshProfile {
            n,
            full: true,
            w_zero: per.iter().map(|p| p.0).collect(),
            amplitudes: per.iter().map(|p| p.1).collect(),
            spectrum,
        })
    }

    /// Only W(b, 0), by one transform of the preimage counts:
    /// W(b, 0) = sum_y omega(y) (-1)^(Tr(b y)).
    pub fn zero_only(f: &MapTable) -> Result<Self> {
        Self::zero_only_with_cap(f, DEFAULT_ZERO_CAP)
    }

    pub fn zero_only_with_cap(f: &MapTable, cap: u32) -> Result<Self> {
        let field = binary_field(f)?;
        let n = field.n();
        if n > cap {
            return Err(Error::WalshCapExceeded { n, cap });
        }
        let mut omega = vec![0i64; field.order()];
        for &y in f.table() {
            omega[y as usize] += 1;
        }
        fwht(&mut omega);
        let t = trace_forms(field);
        Ok(WalshProfile {
            n,
            full: false,
            w_zero: (1..field.order()).map(|b| omega[t[b] as usize]).collect(),
            amplitudes: Vec::new(),
            spectrum: BTreeMap::new(),
        })
    }

    fn require_full(&self) -> Result<()> {
        if self.full {
            Ok(())
        } else {
            Err(Error::NotApplicable("needs the full Walsh spectrum".into()))
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn w_zero(&self, b: Elem) -> i64 {
        self.w_zero[b as usize - 1]
    }

    pub fn w_zero_all(&self) -> &[i64] {
        &self.w_zero
    }

    pub fn w_zero_values(&self) -> BTreeSet<i64> {
        self.w_zero.iter().copied().collect()
    }

    /// Amplitude of component b, None if it is not plateaued.
    pub fn amplitude(&self, b: Elem) -> Result<Option<u32>> {
        self.require_full()?;
        Ok(self.amplitudes[b as usize - 1])
    }

    pub fn is_component_wise_plateaued(&self) -> Result<bool> {
        self.require_full()?;
        Ok(self.amplitudes.iter().all(Option::is_some))
    }

    pub fn amplitude_count(&self, t: u32) -> Result<u64> {
        self.require_full()?;
        Ok(self.amplitudes.iter().filter(|&&a| a == Some(t)).count() as u64)
    }

    /// Components with W(b, 0) = 0.
    pub fn balanced_count(&self) -> u64 {
        self.w_zero.iter().filter(|&&w| w == 0).count() as u64
    }

    /// Components with amplitude 0. Defined for even n only.
    pub fn bent_component_count(&self) -> Result<u64> {
        if self.n % 2 == 1 {
            return Err(Error::NotApplicable("bent components need even n".into()));
        }
        self.amplitude_count(0)
    }

    /// (N0, N+, N-): W(b, 0) equal to 0, +2^((n+1)/2), -2^((n+1)/2). Odd n.
    pub fn ab_counts(&self) -> Result<(u64, u64, u64)> {
        if self.n.is_multiple_of(2) {
            return Err(Error::NotApplicable("AB statistics need odd n".into()));
        }
        let v = 1i64 << self.n.div_ceil(2);
        let count = |x: i64| self.w_zero.iter().filter(|&&w| w == x).count() as u64;
        Ok((count(0), count(v), count(-v)))
    }

    pub fn is_almost_bent(&self) -> Result<bool> {
        if self.n.is_multiple_of(2) {
            return Err(Error::NotApplicable("almost bent needs odd n".into()));
        }
        self.require_full()?;
        Ok(self.amplitudes.iter().all(|&a| a == Some(1)))
    }

    /// The extended spectrum, |W(b, a)| -> multiplicity.
    pub fn spectrum(&self) -> Result<&BTreeMap<u64, u64>> {
        self.require_full()?;
        Ok(&self.spectrum)
    }

    /// Values {0, 2^(n/2), 2^((n+2)/2)} with multiplicities (2^n-1) 2^(n-2),
    /// (2/3)(2^n-1) 2^n and (1/3)(2^n-1) 2^(n-2).
    pub fn is_classical_spectrum(&self) -> Result<bool> {
        if self.n % 2 == 1 {
            return Err(Error::NotApplicable("classical spectrum needs even n".into()));
        }
        self.require_full()?;
        let expected = classical_multiplicities(self.n);
        let have: Vec<(u64, u64)> = self.spectrum.iter().map(|(&k, &c)| (k, c)).collect();
        Ok(have == expected)
    }

    pub fn summary(&self) -> WalshSummary {
        let mut w_zero_values = BTreeMap::new();
        for &w in &self.w_zero {
            *w_zero_values.entry(w).or_insert(0) += 1;
        }
        let full = self.full.then_some(());
        WalshSummary {
            mode: if self.full { "full" } else { "zero-only" },
            balanced_count: self.balanced_count(),
            w_zero_values,
            component_wise_plateaued: full.map(|_| self.amplitudes.iter().all(Option::is_some)),
            amplitudes: full.map(|_| {
                let mut m = BTreeMap::new();
                for a in &self.amplitudes {
                    let key = a.map_or("none".to_string(), |t| t.to_string());
                    *m.entry(key).or_insert(0) += 1;
                }
                m
            }),
            bent_count: full.and_then(|_| self.bent_component_count().ok()),
            extended_spectrum: full.map(|_| self.spectrum.clone()),
            almost_bent: full.and_then(|_| self.is_almost_bent().ok()),
            classical: full.and_then(|_| self.is_classical_spectrum().ok()),
        }
    }
}

/// The classical multiplicity pattern for even n, as sorted (|W|, count).
pub fn classical_multiplicities(n: u32) -> Vec<(u64, u64)> {
    let q = 1u64 << n;
    let c0 = (q - 1) * (q >> 2);
    let c1 = 2 * (q - 1) * q / 3;
    let c2 = (q - 1) * (q >> 2) / 3;
    debug_assert_eq!(c0 + c1 + c2, (q - 1) * q);
    vec![(0, c0), (1 << (n / 2), c1), (1 << (n / 2 + 1), c2)]
}

/// Direct and closed-form AB statistics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbStatistics {
    pub n0: u64,
    pub n_plus: u64,
    pub n_minus: u64,
    pub collisions: u64,
    pub omega_zero: u32,
}

/// Counts (N0, N+, N-) directly and checks them against
/// N0 = 2^n - 1 + 2^(n-1) - N/2 and
/// N+- = N/4 - 2^(n-2) +- 2^((n-3)/2) (omega(0) - 1).
pub fn ab_statistics(f: &MapTable, pp: &PreimageProfile, wp: &WalshProfile) -> Result<AbStatistics> {
    let n = wp.n();
    if !wp.is_almost_bent()? {
        return Err(Error::NotApplicable("map is not almost bent".into()));
    }
    let (n0, n_plus, n_minus) = wp.ab_counts()?;
    let big_n = pp.collisions() as i64;
    let w0 = pp.omega(0) as i64;
    let q = 1i64 << n;
    let closed_n0 = q - 1 + q / 2 - big_n / 2;
    let (closed_plus, closed_minus) = if n >= 3 {
        let base = big_n / 4 - q / 4;
        let shift = (1i64 << ((n - 3) / 2)) * (w0 - 1);
        (base + shift, base - shift)
    } else {
        // n = 1: 2^((n-3)/2) = 1/2, so work with doubled quantities
        let twice = big_n / 2 - q / 2;
        ((twice + (w0 - 1)) / 2, (twice - (w0 - 1)) / 2)
    };
    let direct = (n0 as i64, n_plus as i64, n_minus as i64);
    if big_n % 4 != 0 || direct != (closed_n0, closed_plus, closed_minus) {
        return Err(Error::ConclusionFailed(format!(
            "AB statistics {:?} differ from closed forms ({}, {}, {}) for N = {}, omega(0) = {} of {}",
            direct,
            closed_n0,
            closed_plus,
            closed_minus,
            big_n,
            w0,
            f.field()
        )));
    }
    Ok(AbStatistics { n0, n_plus, n_minus, collisions: pp.collisions(), omega_zero: pp.omega(0) })
}

/// Writes `b,a,W` rows for every b != 0 and every a.
pub fn write_spectrum_csv<W: Write>(f: &MapTable, cap: u32, out: &mut W) -> Result<()> {
    let field = binary_field(f)?;
    if field.n() > cap {
        return Err(Error::WalshCapExceeded { n: field.n(), cap });
    }
    let t = trace_forms(field);
    writeln!(out, "b,a,W")?;
    for b in 1..field.order() {
        let w = component(f, t[b]);
        for a in 0..field.order() {
            writeln!(out, "{},{},{}", b, a, w[t[a] as usize])?;
        }
    }
    Ok(())
}

/// gcd(2^i - 1, 2^r + 1): 2^gcd(i,r) + 1 if i / gcd(i, r) is even, else 1.
pub fn gcd_pow2_minus_plus(i: u32, r: u32) -> u64 {
    let g = gcd(i as u64, r as u64) as u32;
    if (i / g).is_multiple_of(2) {
        (1u64 << g) + 1
    } else {
        1
    }
}

/// gcd(2^i + 1, 2^r + 1): 2^gcd(i,r) + 1 if i / gcd and r / gcd are both odd, else 1.
pub fn gcd_pow2_plus_plus(i: u32, r: u32) -> u64 {
    let g = gcd(i as u64, r as u64) as u32;
    if (i / g) % 2 == 1 && (r / g) % 2 == 1 {
        (1u64 << g) + 1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: u32, expr: &str) -> MapTable {
        MapTable::from_expression(FieldSpec::binary(n).unwrap(), expr).unwrap()
    }

    fn naive(f: &MapTable, b: Elem, a: Elem) -> i64 {
        let field = f.field();
        (0..field.order() as Elem)
            .map(|x| {
                let e = field.trace(field.add(field.mul(b, f.eval(x)), field.mul(a, x)));
                if e == 0 { 1 } else { -1 }
            })
            .sum()
    }

    #[test]
    fn fwht_matches_definition_small() {
        let comp = [1i64, -1, -1, 1, 1, 1, -1, 1];
        let mut v = comp;
        fwht(&mut v);
        for (k, &wk) in v.iter().enumerate() {
            let direct: i64 = (0..8)
                .map(|x| comp[x] * if (x & k).count_ones() % 2 == 0 { 1 } else { -1 })
                .sum();
            assert_eq!(wk, direct);
        }
    }

    #[test]
    fn component_spectrum_matches_naive() {
        for (n, e) in [(3, "x^3"), (4, "x^3 + x^4"), (5, "x^7 + g*x"), (6, "Tr(x^3) + x^5")] {
            let f = table(n, e);
            for b in 1..f.field().order() as Elem {
                let w = component_spectrum(&f, b).unwrap();
                for a in 0..f.field().order() as Elem {
                    assert_eq!(w[a as usize], naive(&f, b, a), "{e} b={b} a={a}");
                }
            }
        }
    }

    #[test]
    fn identity_is_a_delta() {
        let f = table(4, "x");
        for b in 1..16 {
            let w = component_spectrum(&f, b).unwrap();
            for a in 0..16 {
                assert_eq!(w[a as usize], if a == b { 16 } else { 0 });
            }
        }
        assert_eq!(WalshProfile::full(&f).unwrap().bent_component_count().unwrap(), 0);
    }

    #[test]
    fn cube_profiles() {
        let wp3 = WalshProfile::full(&table(3, "x^3")).unwrap();
        assert!(wp3.is_almost_bent().unwrap());
        assert!(wp3.spectrum().unwrap().keys().all(|&k| k == 0 || k == 4));

        let wp4 = WalshProfile::full(&table(4, "x^3")).unwrap();
        assert_eq!(wp4.bent_component_count().unwrap(), 10);
        assert_eq!(wp4.amplitude_count(2).unwrap(), 5);
        assert_eq!(wp4.w_zero_values(), [-8, 4].into_iter().collect());
        assert!(wp4.is_classical_spectrum().unwrap());
        assert_eq!(classical_multiplicities(4), vec![(0, 60), (4, 160), (8, 20)]);
        assert!(wp4.is_almost_bent().is_err());

        let wp5 = WalshProfile::full(&table(5, "x^3")).unwrap();
        assert_eq!(wp5.balanced_count(), 31);
        assert_eq!(wp5.ab_counts().unwrap(), (31, 0, 0));
        assert!(wp5.is_classical_spectrum().is_err());
        assert!(wp5.bent_component_count().is_err());
    }

    #[test]
    fn zero_only_agrees_with_full() {
        for (n, e) in [(4, "x^3"), (5, "x^3 + x^4"), (6, "x^5 + x^3 + 1"), (7, "x^-1")] {
            let f = table(n, e);
            let full = WalshProfile::full(&f).unwrap();
            let zero = WalshProfile::zero_only(&f).unwrap();
            assert_eq!(full.w_zero_all(), zero.w_zero_all(), "{e}");
            assert!(zero.amplitude(1).is_err());
        }
    }

    #[test]
    fn quintic_on_f16() {
        let wp = WalshProfile::full(&table(4, "x^5")).unwrap();
        assert_eq!(wp.bent_component_count().unwrap(), 12);
        assert_eq!(wp.amplitude_count(4).unwrap(), 3);
        assert_eq!(wp.w_zero_values(), [-4, 16].into_iter().collect());
    }

    #[test]
    fn ab_statistics_binomial() {
        let f = table(5, "x^3 + x^4");
        let pp = PreimageProfile::new(&f);
        assert_eq!(pp.omega(0), 2);
        let wp = WalshProfile::full(&f).unwrap();
        let s = ab_statistics(&f, &pp, &wp).unwrap();
        assert_eq!((s.n0, s.n_plus, s.n_minus), (15, 10, 6));

        let c = table(3, "x^3");
        let s = ab_statistics(&c, &PreimageProfile::new(&c), &WalshProfile::full(&c).unwrap()).unwrap();
        assert_eq!((s.n0, s.n_plus, s.n_minus), (7, 0, 0));

        let non_ab = table(5, "x^-1");
        let r = ab_statistics(&non_ab, &PreimageProfile::new(&non_ab), &WalshProfile::full(&non_ab).unwrap());
        assert!(matches!(r, Err(Error::NotApplicable(_))));
    }

    #[test]
    fn walsh_sums_tie_to_preimages() {
        for (n, e) in [(4, "x^3 + 1"), (5, "x^3 + x^4"), (6, "x^9 + g")] {
            let f = table(n, e);
            let pp = PreimageProfile::new(&f);
            let wp = WalshProfile::zero_only(&f).unwrap();
            let q = 1i64 << n;
            let s1: i64 = wp.w_zero_all().iter().sum();
            assert_eq!(s1, q * (pp.omega(0) as i64 - 1));
            let s2: i64 = wp.w_zero_all().iter().map(|w| w * w).sum();
            assert_eq!(s2 + q * q, q * pp.collisions() as i64);
        }
    }

    #[test]
    fn caps_and_characteristic() {
        let f = table(6, "x^3");
        assert!(matches!(WalshProfile::full_with_cap(&f, 5), Err(Error::WalshCapExceeded { .. })));
        assert!(WalshProfile::zero_only_with_cap(&f, 5).is_err());
        let odd = MapTable::from_expression(FieldSpec::build(3, 2, None).unwrap(), "x^2").unwrap();
        assert!(WalshProfile::full(&odd).is_err());
        assert!(component_spectrum(&f, 0).is_err());
    }

    #[test]
    fn csv_export() {
        let f = table(2, "x^3");
        let mut buf = Vec::new();
        write_spectrum_csv(&f, 14, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 3 * 4);
        assert!(text.starts_with("b,a,W\n1,0,"));
    }

    #[test]
    fn gcd_lemma_matches_integer_gcd() {
        for i in 1..=24u32 {
            for r in 1..=24u32 {
                let a = (1u64 << i) - 1;
                let b = (1u64 << r) + 1;
                let c = (1u64 << i) + 1;
                assert_eq!(gcd_pow2_minus_plus(i, r), gcd(a, b), "i={i} r={r}");
                assert_eq!(gcd_pow2_plus_plus(i, r), gcd(c, b), "i={i} r={r}");
            }
        }
    }
}
