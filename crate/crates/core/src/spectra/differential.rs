use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::map::MapTable;

/// Differential statistics, streamed one direction at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialProfile {
    uniformity: u32,
    /// index a - 1: #{x : f(x + a) - f(x) = 0}
    zero_solutions: Vec<u32>,
    /// index a - 1: max_b #{x : f(x + a) - f(x) = b}
    max_row: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialSummary {
    pub uniformity: u32,
    pub t0: u64,
    pub zero_solutions_min: u32,
    pub zero_solutions_max: u32,
}

struct Row {
    zeros: u32,
    max: u32,
}

fn row(f: &MapTable, a: Elem, hist: &mut [u32], diffs: &mut [Elem]) -> Row {
    let field = f.field();
    let q = f.table().len() as Elem;
    for x in 0..q {
        let d = field.sub(f.eval(field.add(x, a)), f.eval(x));
        diffs[x as usize] = d;
        hist[d as usize] += 1;
    }
    let zeros = hist[0];
    let mut max = 0;
    for &d in diffs.iter() {
        max = max.max(hist[d as usize]);
    }
    for &d in diffs.iter() {
        hist[d as usize] = 0;
    }
    Row { zeros, max }
}

impl DifferentialProfile {
    pub fn new(f: &MapTable) -> Self {
        let q = f.table().len();
        let rows: Vec<Row> = (1..q as Elem)
            .into_par_iter()
            .map_init(|| (vec![0u32; q], vec![0 as Elem; q]), |(h, d), a| row(f, a, h, d))
            .collect();
        let uniformity = rows.iter().map(|r| r.max).max().unwrap_or(0);
        DifferentialProfile {
            uniformity,
            zero_solutions: rows.iter().map(|r| r.zeros).collect(),
            max_row: rows.iter().map(|r| r.max).collect(),
        }
    }

    pub fn uniformity(&self) -> u32 {
        self.uniformity
    }

    pub fn zero_solutions(&self, a: Elem) -> u32 {
        self.zero_solutions[a as usize - 1]
    }

    pub fn max_row(&self, a: Elem) -> u32 {
        self.max_row[a as usize - 1]
    }

    /// Number of directions a != 0 where f(x + a) = f(x) has a solution.
    pub fn t0(&self) -> u64 {
        self.zero_solutions.iter().filter(|&&z| z > 0).count() as u64
    }

    pub fn is_apn(&self) -> bool {
        self.uniformity == 2
    }

    /// f(x + a) = f(x) has exactly d solutions for every a != 0.
    pub fn is_zero_difference_balanced(&self, d: u32) -> bool {
        self.zero_solutions.iter().all(|&z| z == d)
    }

    pub fn summary(&self) -> DifferentialSummary {
        DifferentialSummary {
            uniformity: self.uniformity,
            t0: self.t0(),
            zero_solutions_min: self.zero_solutions.iter().copied().min().unwrap_or(0),
            zero_solutions_max: self.zero_solutions.iter().copied().max().unwrap_or(0),
        }
    }
}

/// max_b #{x : f(x + a) - f(x) = b} for a single direction.
pub fn row_uniformity(f: &MapTable, a: Elem) -> u32 {
    let q = f.table().len();
    row(f, a, &mut vec![0; q], &mut vec![0; q]).max
}

/// True when some direction has a row entry above `bound`; stops early.
pub fn uniformity_exceeds(f: &MapTable, bound: u32) -> bool {
    let q = f.table().len();
    (1..q as Elem)
        .into_par_iter()
        .map_init(|| (vec![0u32; q], vec![0 as Elem; q]), |(h, d), a| row(f, a, h, d).max)
        .any(|m| m > bound)
}

/// D_a(f) = {f(x + a) - f(x) : x in F_q}, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialSet {
    pub a: Elem,
    pub elements: Vec<Elem>,
}

impl DifferentialSet {
    pub fn contains_zero(&self) -> bool {
        self.elements.first() == Some(&0)
    }
}

pub fn differential_set(f: &MapTable, a: Elem) -> Result<DifferentialSet> {
    let field = f.field();
    if a == 0 {
        return Err(Error::NotApplicable("differential set in direction 0".into()));
    }
    field.check_elem(a as u64)?;
    let mut seen = vec![false; field.order()];
    for x in 0..field.order() as Elem {
        seen[field.sub(f.eval(field.add(x, a)), f.eval(x)) as usize] = true;
    }
    let elements = seen.iter().enumerate().filter(|(_, &s)| s).map(|(y, _)| y as Elem).collect();
    Ok(DifferentialSet { a, elements })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubspaceType {
    LinearSubspace,
    AffineSubspace,
    Neither,
}

/// Whether the set spanned by `set` over F_p is `set` itself.
///
/// The span is grown one generator at a time and abandoned as soon as it gets
/// larger than the set, so the cost is linear in |set| times p.
fn is_linear(field: &FieldSpec, set: &[Elem]) -> bool {
    let q = field.order();
    let mut member = vec![false; q];
    for &s in set {
        member[s as usize] = true;
    }
    if !member[0] {
        return false;
    }
    let mut in_span = vec![false; q];
    in_span[0] = true;
    let mut span: Vec<Elem> = vec![0];
    let p = field.p();
    for &v in set {
        if in_span[v as usize] {
            continue;
        }
        let base = span.len();
        if base * p as usize > set.len() {
            return false;
        }
        for c in 1..p {
            let cv = field.mul(c as Elem, v);
            for i in 0..base {
                let w = field.add(span[i], cv);
                if !member[w as usize] {
                    return false;
                }
                in_span[w as usize] = true;
                span.push(w);
            }
        }
    }
    span.len() == set.len()
}

pub fn subspace_type(field: &FieldSpec, set: &[Elem]) -> SubspaceType {
    if set.is_empty() {
        return SubspaceType::Neither;
    }
    if is_linear(field, set) {
        return SubspaceType::LinearSubspace;
    }
    let v0 = set[0];
    let shifted: Vec<Elem> = set.iter().map(|&s| field.sub(s, v0)).collect();
    if is_linear(field, &shifted) {
        SubspaceType::AffineSubspace
    } else {
        SubspaceType::Neither
    }
}

/// Every differential set is an affine hyperplane.
pub fn is_crooked(f: &MapTable) -> Result<bool> {
    let field = f.field();
    if !field.is_binary() {
        return Err(Error::Unsupported("crookedness is defined for p = 2".into()));
    }
    let half = field.order() / 2;
    Ok((1..field.order() as Elem).into_par_iter().all(|a| {
        let ds = differential_set(f, a).expect("nonzero direction");
        ds.elements.len() == half && subspace_type(field, &ds.elements) != SubspaceType::Neither
    }))
}
