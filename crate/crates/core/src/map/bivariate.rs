use std::sync::Arc;

use rayon::prelude::*;

use super::MapTable;
use crate::error::{Error, Result};
use crate::field::{Elem, Embedding, FieldSpec};

/// A map (x, y) -> (G(x, y), H(x, y)) on F_{p^m} x F_{p^m}.
///
/// Both component tables are indexed by the pair code `x * p^m + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateMap {
    half: Arc<FieldSpec>,
    g: Vec<Elem>,
    h: Vec<Elem>,
}

impl BivariateMap {
    pub fn new(half: Arc<FieldSpec>, g: Vec<Elem>, h: Vec<Elem>) -> Result<Self> {
        let qh = half.order();
        let len = qh * qh;
        for t in [&g, &h] {
            if t.len() != len {
                return Err(Error::TableLength { got: t.len(), q: len });
            }
            if let Some(&bad) = t.iter().find(|&&v| v as usize >= qh) {
                return Err(Error::ElementOutOfRange { code: bad as u64, q: qh });
            }
        }
        Ok(BivariateMap { half, g, h })
    }

    pub fn from_fn<F>(half: Arc<FieldSpec>, f: F) -> Self
    where
        F: Fn(Elem, Elem) -> (Elem, Elem) + Sync,
    {
        let qh = half.order() as Elem;
        let pairs: Vec<(Elem, Elem)> = (0..qh * qh)
            .into_par_iter()
            .map(|code| f(code / qh, code % qh))
            .collect();
        let (g, h) = pairs.into_iter().unzip();
        BivariateMap { half, g, h }
    }

    pub fn half(&self) -> &Arc<FieldSpec> {
        &self.half
    }

    pub fn g_table(&self) -> &[Elem] {
        &self.g
    }

    pub fn h_table(&self) -> &[Elem] {
        &self.h
    }

    #[inline]
    pub fn eval(&self, x: Elem, y: Elem) -> (Elem, Elem) {
        let code = (x as usize) * self.half.order() + y as usize;
        (self.g[code], self.h[code])
    }

    /// The field of order p^(2m) with its default modulus.
    pub fn full_field(&self) -> Result<Arc<FieldSpec>> {
        FieldSpec::build(self.half.p(), 2 * self.half.n(), None)
    }

    /// Univariate form over the default full field using the basis (1, g).
    pub fn to_univariate(&self) -> Result<MapTable> {
        let big = self.full_field()?;
        let (u1, u2) = default_basis(&big);
        bivariate_to_univariate(self, &big, u1, u2)
    }
}

/// (1, g) with g the field generator, which never lies in a proper subfield.
pub fn default_basis(big: &FieldSpec) -> (Elem, Elem) {
    (1, big.generator())
}

fn check_sizes(half: &FieldSpec, big: &FieldSpec) -> Result<()> {
    if half.p() != big.p() || big.n() != 2 * half.n() {
        return Err(Error::Unsupported(format!(
            "a bivariate map over F_{}^{} needs the field F_{}^{}, got F_{}^{}",
            half.p(),
            half.n(),
            half.p(),
            2 * half.n(),
            big.p(),
            big.n()
        )));
    }
    Ok(())
}

/// z = x u1 + y u2 maps to G(x, y) u1 + H(x, y) u2, where x and y are read off
/// with the dual basis: x = Tr(v1 z), y = Tr(v2 z).
pub fn bivariate_to_univariate(bv: &BivariateMap, big: &Arc<FieldSpec>, u1: Elem, u2: Elem) -> Result<MapTable> {
    check_sizes(bv.half(), big)?;
    big.check_elem(u1 as u64)?;
    big.check_elem(u2 as u64)?;
    let m = bv.half().n();
    let (v1, v2) = big.dual_basis(u1, u2, m)?;
    let emb = Embedding::new(bv.half().clone(), big.clone())?;
    let coord = |v: Elem, z: Elem| {
        let t = big.trace_relative(big.mul(v, z), m).expect("m divides n");
        emb.project(t).expect("relative trace lands in the subfield")
    };
    Ok(MapTable::from_fn(big.clone(), |z| {
        let (g, h) = bv.eval(coord(v1, z), coord(v2, z));
        big.add(big.mul(emb.embed(g), u1), big.mul(emb.embed(h), u2))
    }))
}

/// Inverse of [`bivariate_to_univariate`] for the same basis.
pub fn univariate_to_bivariate(f: &MapTable, half: &Arc<FieldSpec>, u1: Elem, u2: Elem) -> Result<BivariateMap> {
    let big = f.field();
    check_sizes(half, big)?;
    let m = half.n();
    let (v1, v2) = big.dual_basis(u1, u2, m)?;
    let emb = Embedding::new(half.clone(), big.clone())?;
    let coord = |v: Elem, z: Elem| {
        let t = big.trace_relative(big.mul(v, z), m).expect("m divides n");
        emb.project(t).expect("relative trace lands in the subfield")
    };
    Ok(BivariateMap::from_fn(half.clone(), |x, y| {
        let z = big.add(big.mul(emb.embed(x), u1), big.mul(emb.embed(y), u2));
        let w = f.eval(z);
        (coord(v1, w), coord(v2, w))
    }))
}
