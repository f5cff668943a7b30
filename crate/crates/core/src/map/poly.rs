use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::MapTable;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

/// Sparse univariate polynomial of degree below q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRepr {
    field: Arc<FieldSpec>,
    /// (exponent, coefficient), exponents strictly increasing, coefficients nonzero.
    coeffs: Vec<(u64, Elem)>,
}

fn digit_sum(mut e: u64, p: u64) -> u64 {
    let mut s = 0;
    while e > 0 {
        s += e % p;
        e /= p;
    }
    s
}

impl PolyRepr {
    /// Collects terms, merging repeated exponents and dropping zero coefficients.
    pub fn new(field: Arc<FieldSpec>, terms: impl IntoIterator<Item = (u64, Elem)>) -> Result<Self> {
        let q = field.order() as u64;
        let mut merged = std::collections::BTreeMap::new();
        for (e, c) in terms {
            if e >= q {
                return Err(Error::Parse(format!("exponent {} is not below q = {}", e, q)));
            }
            field.check_elem(c as u64)?;
            let slot = merged.entry(e).or_insert(0);
            *slot = field.add(*slot, c);
        }
        let coeffs = merged.into_iter().filter(|&(_, c)| c != 0).collect();
        Ok(PolyRepr { field, coeffs })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[(u64, Elem)] {
        &self.coeffs
    }

    /// Largest exponent with a nonzero coefficient; 0 for constants.
    pub fn degree(&self) -> u64 {
        self.coeffs.last().map_or(0, |&(e, _)| e)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .fold(0, |acc, &(e, c)| f.add(acc, f.mul(c, f.pow(x, e))))
    }

    pub fn to_table(&self) -> MapTable {
        MapTable::from_fn(self.field.clone(), |x| self.eval(x))
    }

    /// Every exponent is p^i + p^j, with i != j in characteristic 2.
    pub fn is_do(&self) -> bool {
        let p = self.field.p() as u64;
        self.coeffs.iter().all(|&(e, _)| digit_sum(e, p) == 2)
    }

    /// DO terms plus F_p-affine terms (exponents 0 and p^i).
    pub fn is_quadratic(&self) -> bool {
        let p = self.field.p() as u64;
        self.coeffs.iter().all(|&(e, _)| digit_sum(e, p) <= 2)
    }

    /// `Some((k, c))` when the polynomial is the single term c*x^k.
    pub fn as_monomial(&self) -> Option<(u64, Elem)> {
        match self.coeffs.as_slice() {
            [(e, c)] => Some((*e, *c)),
            _ => None,
        }
    }

    pub fn coefficients_in_subfield(&self, m: u32) -> bool {
        self.coeffs.iter().all(|&(_, c)| self.field.in_subfield(c, m))
    }

    /// Parses whitespace-separated `e:c` pairs.
    pub fn parse(field: Arc<FieldSpec>, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for tok in text.split_whitespace() {
            let (e, c) = tok
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `e:c`, got `{}`", tok)))?;
            let e = e.parse::<u64>().map_err(|_| Error::Parse(format!("bad exponent `{}`", e)))?;
            let c = c.parse::<u64>().map_err(|_| Error::Parse(format!("bad coefficient `{}`", c)))?;
            terms.push((e, field.check_elem(c)?));
        }
        Self::new(field, terms)
    }
}

impl fmt::Display for PolyRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}", e, c)?;
            first = false;
        }
        Ok(())
    }
}

/// The unique polynomial of degree < q agreeing with `f` everywhere.
///
/// Lagrange interpolation over all q points, specialised to finite fields:
/// c_0 = f(0), c_k = -sum_{x != 0} f(x) x^{-k} for 0 < k < q-1, and
/// c_{q-1} = -sum_x f(x). Quadratic in q.
pub fn interpolate(f: &MapTable) -> PolyRepr {
    let field = f.field().clone();
    let q = field.order();
    let order = q as u64 - 1;
    // log f(g^i), or None where the value is zero
    let logs: Vec<Option<u64>> = (0..order)
        .map(|i| match f.eval(field.exp(i)) {
            0 => None,
            y => Some(field.log(y) as u64),
        })
        .collect();

    let middle: Vec<(u64, Elem)> = (1..order)
        .into_par_iter()
        .map(|k| {
            let mut acc = 0;
            let mut ki = 0u64;
            for l in &logs {
                if let Some(ly) = *l {
                    acc = field.add(acc, field.exp(ly + order - ki));
                }
                ki += k;
                if ki >= order {
                    ki -= order;
                }
            }
            (k, field.neg(acc))
        })
        .collect();

    let total = f.table().iter().fold(0, |acc, &y| field.add(acc, y));
    let mut terms = Vec::with_capacity(q);
    terms.push((0, f.eval(0)));
    terms.extend(middle);
    terms.push((order, field.neg(total)));
    PolyRepr::new(field, terms).expect("exponents are below q")
}
