//! Maps F_q -> F_q and their representations.

mod bivariate;
mod expr;
pub mod io;
mod poly;

pub use bivariate::{bivariate_to_univariate, default_basis, univariate_to_bivariate, BivariateMap};
pub use expr::Expr;
pub use poly::{interpolate, PolyRepr};

use std::sync::Arc;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

/// A map on a finite field as a lookup table: `table[x] = f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapTable {
    field: Arc<FieldSpec>,
    table: Vec<Elem>,
}

impl MapTable {
    pub fn new(field: Arc<FieldSpec>, table: Vec<Elem>) -> Result<Self> {
        let q = field.order();
        if table.len() != q {
            return Err(Error::TableLength { got: table.len(), q });
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= q) {
            return Err(Error::ElementOutOfRange { code: bad as u64, q });
        }
        Ok(MapTable { field, table })
    }

    /// Tabulates `f` over the whole field.
    pub fn from_fn<F>(field: Arc<FieldSpec>, f: F) -> Self
    where
        F: Fn(Elem) -> Elem + Sync,
    {
        let q = field.order() as Elem;
        let table = (0..q).into_par_iter().map(&f).collect();
        MapTable { field, table }
    }

    /// Evaluates an expression such as `x^3 + Tr(x^9)` at every point.
    pub fn from_expression(field: Arc<FieldSpec>, expr: &str) -> Result<Self> {
        let e = Expr::parse(expr)?;
        e.validate(&field)?;
        Ok(Self::from_fn(field.clone(), |x| e.eval(&field, x)))
    }

    pub fn identity(field: Arc<FieldSpec>) -> Self {
        Self::from_fn(field, |x| x)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn into_table(self) -> Vec<Elem> {
        self.table
    }

    #[inline]
    pub fn eval(&self, x: Elem) -> Elem {
        self.table[x as usize]
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    /// x -> f(x + c) + u.
    pub fn shift_normalize(&self, c: Elem, u: Elem) -> MapTable {
        let f = &self.field;
        Self::from_fn(f.clone(), |x| f.add(self.eval(f.add(x, c)), u))
    }

    /// f(x) = f(wx) for every w whose order divides k. Checked against a
    /// single generator of the order-k subgroup, which suffices.
    pub fn is_k_divisible(&self, k: u64) -> Result<bool> {
        let f = &self.field;
        let order = f.order() as u64 - 1;
        if k == 0 || !order.is_multiple_of(k) {
            return Err(Error::NotDivisor { what: "divisibility order", t: k, n: order });
        }
        let w = f.exp(order / k);
        Ok((0..f.order() as Elem).all(|x| self.eval(f.mul(w, x)) == self.eval(x)))
    }

    /// SHA-256 of the LUT serialization, hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(io::write_lut(self).as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u32) -> Arc<FieldSpec> {
        FieldSpec::binary(n).unwrap()
    }

    #[test]
    fn table_validation() {
        assert!(MapTable::new(f(2), vec![0, 1, 2]).is_err());
        assert!(MapTable::new(f(2), vec![0, 1, 2, 4]).is_err());
        assert!(MapTable::new(f(2), vec![0, 1, 2, 3]).unwrap().is_permutation());
    }

    #[test]
    fn divisibility() {
        let cube16 = MapTable::from_expression(f(4), "x^3").unwrap();
        assert!(cube16.is_k_divisible(3).unwrap());
        assert!(!cube16.is_k_divisible(5).unwrap());
        let cube32 = MapTable::from_expression(f(5), "x^3").unwrap();
        assert!(cube32.is_k_divisible(1).unwrap());
        assert!(cube32.is_k_divisible(3).is_err());
    }

    #[test]
    fn divisibility_matches_exhaustive_roots_of_unity() {
        let field = f(6);
        for e in [3u64, 7, 9, 21, 5, 63] {
            let m = MapTable::from_fn(field.clone(), |x| field.pow(x, e));
            for k in [1u64, 3, 7, 9, 21, 63] {
                let roots: Vec<Elem> = (1..64).filter(|&w| field.pow(w, k) == 1).collect();
                let brute = roots
                    .iter()
                    .all(|&w| (0..64).all(|x| m.eval(field.mul(w, x)) == m.eval(x)));
                assert_eq!(m.is_k_divisible(k).unwrap(), brute, "x^{e}, k={k}");
            }
        }
    }

    #[test]
    fn shifts() {
        let field = f(4);
        let m = MapTable::from_expression(field.clone(), "x^3 + 1").unwrap();
        assert_eq!(m.shift_normalize(0, 0), m);
        assert_eq!(m.shift_normalize(0, 1), MapTable::from_expression(field.clone(), "x^3").unwrap());
        let n = m.shift_normalize(0, m.eval(0));
        assert_eq!(n.eval(0), 0);
    }
}
