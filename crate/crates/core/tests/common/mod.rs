#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use fieldmaps::{Elem, FieldSpec, MapTable};

pub fn table(p: u32, n: u32, expr: &str) -> MapTable {
    MapTable::from_expression(FieldSpec::build(p, n, None).unwrap(), expr).unwrap()
}

pub fn bin(n: u32) -> Arc<FieldSpec> {
    FieldSpec::binary(n).unwrap()
}

/// W(b, a) by the definition, for every b != 0 and a.
pub fn naive_walsh(f: &MapTable) -> Vec<Vec<i64>> {
    let field = f.field();
    let q = field.order() as Elem;
    (1..q)
        .map(|b| {
            (0..q)
                .map(|a| {
                    (0..q)
                        .map(|x| {
                            let t = field.trace(field.add(field.mul(b, f.eval(x)), field.mul(a, x)));
                            if t == 0 { 1 } else { -1 }
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// max over a != 0 and b of #{x : f(x + a) - f(x) = b}.
pub fn naive_uniformity(f: &MapTable) -> u32 {
    let field = f.field();
    let q = field.order() as Elem;
    let mut best = 0;
    for a in 1..q {
        let mut counts = BTreeMap::new();
        for x in 0..q {
            *counts.entry(field.sub(f.eval(field.add(x, a)), f.eval(x))).or_insert(0u32) += 1;
        }
        best = best.max(*counts.values().max().unwrap());
    }
    best
}

/// omega(y) for every y, by counting.
pub fn naive_omega(f: &MapTable) -> Vec<u64> {
    let mut w = vec![0u64; f.field().order()];
    for &y in f.table() {
        w[y as usize] += 1;
    }
    w
}

/// r -> M_r for r >= 1.
pub fn naive_m(f: &MapTable) -> BTreeMap<u32, u64> {
    let mut m = BTreeMap::new();
    for w in naive_omega(f) {
        if w > 0 {
            *m.entry(w as u32).or_insert(0) += 1;
        }
    }
    m
}

/// #{(x, y) : f(x) = f(y)}.
pub fn naive_collisions(f: &MapTable) -> u64 {
    let t = f.table();
    let mut n = 0;
    for &a in t {
        for &b in t {
            n += (a == b) as u64;
        }
    }
    n
}

pub fn naive_image(f: &MapTable) -> u64 {
    naive_omega(f).iter().filter(|&&w| w > 0).count() as u64
}

pub fn naive_is_cube(field: &FieldSpec, x: Elem) -> bool {
    (0..field.order() as Elem).any(|y| field.mul(field.mul(y, y), y) == x)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Uniform random table on the field.
pub fn random_table(field: &Arc<FieldSpec>, values: &[u32]) -> MapTable {
    let q = field.order() as u32;
    MapTable::new(field.clone(), values.iter().map(|v| v % q).collect()).unwrap()
}
