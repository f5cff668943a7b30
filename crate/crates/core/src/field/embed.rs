use std::sync::Arc;

use super::{poly, Elem, FieldSpec};
use crate::error::{Error, Result};

/// Field embedding F_{p^m} -> F_{p^n} for m | n.
///
/// The image of the small field's polynomial variable is the smallest-code
/// root of its modulus inside the subfield of order p^m.
#[derive(Debug, Clone)]
pub struct Embedding {
    sub: Arc<FieldSpec>,
    sup: Arc<FieldSpec>,
    forward: Vec<Elem>,
    backward: Vec<Elem>,
}

const NOT_IN_IMAGE: Elem = Elem::MAX;

impl Embedding {
    pub fn new(sub: Arc<FieldSpec>, sup: Arc<FieldSpec>) -> Result<Self> {
        if sub.p() != sup.p() {
            return Err(Error::Unsupported("embedding between different characteristics".into()));
        }
        if !sup.n().is_multiple_of(sub.n()) {
            return Err(Error::NotDivisor { what: "embedding degree", t: sub.n() as u64, n: sup.n() as u64 });
        }
        let candidates = sup.subfield_elements(sub.n())?;
        let eval = |r: Elem| {
            sub.modulus()
                .iter()
                .rev()
                .fold(0, |acc, &c| sup.add(sup.mul(acc, r), c as Elem))
        };
        let root = candidates
            .into_iter()
            .find(|&r| eval(r) == 0)
            .expect("the subfield contains every root of an irreducible of its degree");
        let powers: Vec<Elem> = (0..sub.n()).map(|i| sup.pow(root, i as u64)).collect();
        let mut forward = Vec::with_capacity(sub.order());
        let mut backward = vec![NOT_IN_IMAGE; sup.order()];
        for code in 0..sub.order() as u64 {
            let d = poly::digits(code, sub.p(), sub.n() as usize);
            let img = d
                .iter()
                .zip(&powers)
                .fold(0, |acc, (&c, &pw)| sup.add(acc, sup.mul(c as Elem, pw)));
            forward.push(img);
            backward[img as usize] = code as Elem;
        }
        Ok(Embedding { sub, sup, forward, backward })
    }

    pub fn sub(&self) -> &Arc<FieldSpec> {
        &self.sub
    }

    pub fn sup(&self) -> &Arc<FieldSpec> {
        &self.sup
    }

    #[inline]
    pub fn embed(&self, x: Elem) -> Elem {
        self.forward[x as usize]
    }

    /// Inverse of `embed` on its image.
    #[inline]
    pub fn project(&self, y: Elem) -> Option<Elem> {
        match self.backward[y as usize] {
            NOT_IN_IMAGE => None,
            c => Some(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        for (p, m, n) in [(2, 2, 4), (2, 3, 6), (2, 2, 6), (3, 1, 2), (3, 2, 4)] {
            let sub = FieldSpec::build(p, m, None).unwrap();
            let sup = FieldSpec::build(p, n, None).unwrap();
            let e = Embedding::new(sub.clone(), sup.clone()).unwrap();
            let qs = sub.order() as Elem;
            for a in 0..qs {
                assert_eq!(e.project(e.embed(a)), Some(a));
                for b in 0..qs {
                    assert_eq!(e.embed(sub.add(a, b)), sup.add(e.embed(a), e.embed(b)));
                    assert_eq!(e.embed(sub.mul(a, b)), sup.mul(e.embed(a), e.embed(b)));
                }
            }
            let image: Vec<Elem> = {
                let mut v: Vec<Elem> = (0..qs).map(|a| e.embed(a)).collect();
                v.sort_unstable();
                v
            };
            assert_eq!(image, sup.subfield_elements(m).unwrap());
        }
    }

    #[test]
    fn rejects_non_divisor() {
        let sub = FieldSpec::binary(3).unwrap();
        let sup = FieldSpec::binary(4).unwrap();
        assert!(Embedding::new(sub, sup).is_err());
    }
}
