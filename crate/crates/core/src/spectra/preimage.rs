use std::collections::BTreeMap;

use serde::Serialize;

use crate::field::Elem;
use crate::map::MapTable;

/// Image and preimage statistics of a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageProfile {
    q: u64,
    image_size: u64,
    /// r -> M_r, only for r with M_r > 0.
    m: BTreeMap<u32, u64>,
    collisions: u64,
    omega: Vec<u32>,
}

/// D = {y in Image(f) : omega(y) != d + 1} together with
/// epsilon = (d + 1) |Image(f)| - q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalSet {
    pub d: u64,
    pub epsilon: i64,
    pub elements: Vec<Elem>,
    pub omega_sum: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreimageSummary {
    pub image_size: u64,
    pub m: BTreeMap<u32, u64>,
    pub collisions: u64,
    pub omega_zero: u32,
    pub permutation: bool,
}

impl PreimageProfile {
    pub fn new(f: &MapTable) -> Self {
        let q = f.table().len();
        let mut omega = vec![0u32; q];
        for &y in f.table() {
            omega[y as usize] += 1;
        }
        let mut m = BTreeMap::new();
        let mut collisions = 0u64;
        for &w in &omega {
            if w > 0 {
                *m.entry(w).or_insert(0) += 1;
                collisions += (w as u64) * (w as u64);
            }
        }
        let image_size = m.values().sum();
        let pp = PreimageProfile { q: q as u64, image_size, m, collisions, omega };
        assert!(pp.identities_hold(), "preimage identities violated");
        pp
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn image_size(&self) -> u64 {
        self.image_size
    }

    /// M_r(f); zero for r without any element.
    pub fn m(&self, r: u32) -> u64 {
        self.m.get(&r).copied().unwrap_or(0)
    }

    pub fn m_counts(&self) -> &BTreeMap<u32, u64> {
        &self.m
    }

    /// N(f) = #{(x, y) : f(x) = f(y)} = sum of omega(y)^2.
    pub fn collisions(&self) -> u64 {
        self.collisions
    }

    pub fn omega(&self, y: Elem) -> u32 {
        self.omega[y as usize]
    }

    pub fn omega_table(&self) -> &[u32] {
        &self.omega
    }

    /// Largest preimage size.
    pub fn max_omega(&self) -> u32 {
        self.m.keys().next_back().copied().unwrap_or(0)
    }

    /// sum M_r = |Image|, sum r M_r = q, sum r^2 M_r = N.
    pub fn identities_hold(&self) -> bool {
        let s0: u64 = self.m.values().sum();
        let s1: u64 = self.m.iter().map(|(&r, &c)| r as u64 * c).sum();
        let s2: u64 = self.m.iter().map(|(&r, &c)| (r as u64).pow(2) * c).sum();
        s0 == self.image_size && s1 == self.q && s2 == self.collisions
    }

    pub fn is_permutation(&self) -> bool {
        self.m(1) == self.q
    }

    pub fn is_k_to_1(&self, k: u32) -> bool {
        self.m.len() == 1 && self.m(k) == self.image_size
    }

    pub fn is_almost_k_to_1(&self, k: u32) -> bool {
        if k == 1 {
            return false;
        }
        self.m(1) == 1 && self.m(k) == self.image_size - 1 && self.m.len() <= 2
    }

    /// ceil(q^2 / N), the Cauchy-Schwarz lower bound on the image size.
    pub fn cauchy_schwarz_bound(&self) -> u64 {
        (self.q * self.q).div_ceil(self.collisions)
    }

    pub fn exceptional_set(&self, d: u64) -> ExceptionalSet {
        let epsilon = ((d + 1) * self.image_size) as i64 - self.q as i64;
        let elements: Vec<Elem> = self
            .omega
            .iter()
            .enumerate()
            .filter(|&(_, &w)| w > 0 && w as u64 != d + 1)
            .map(|(y, _)| y as Elem)
            .collect();
        let omega_sum = elements.iter().map(|&y| self.omega[y as usize] as u64).sum();
        ExceptionalSet { d, epsilon, elements, omega_sum }
    }

    /// sum over the image of (omega(y) - (d + 1))^2.
    pub fn squared_deviation(&self, d: u64) -> u64 {
        self.m
            .iter()
            .map(|(&r, &c)| (r as i64 - (d as i64 + 1)).pow(2) as u64 * c)
            .sum()
    }

    pub fn summary(&self) -> PreimageSummary {
        PreimageSummary {
            image_size: self.image_size,
            m: self.m.clone(),
            collisions: self.collisions,
            omega_zero: self.omega[0],
            permutation: self.is_permutation(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn profile(n: u32, expr: &str) -> PreimageProfile {
        PreimageProfile::new(&MapTable::from_expression(FieldSpec::binary(n).unwrap(), expr).unwrap())
    }

    #[test]
    fn cube_on_f16() {
        let pp = profile(4, "x^3");
        assert_eq!(pp.image_size(), 6);
        assert_eq!(pp.m(1), 1);
        assert_eq!(pp.m(3), 5);
        assert_eq!(pp.collisions(), 46);
        assert!(pp.is_almost_k_to_1(3));
        assert!(!pp.is_k_to_1(3));
        let ex = pp.exceptional_set(2);
        assert_eq!(ex.elements, vec![0]);
        assert_eq!(ex.epsilon, 2);
        assert_eq!(ex.omega_sum as i64, ex.elements.len() as i64 * 3 - ex.epsilon);
    }

    #[test]
    fn binomial_profiles() {
        let pp = profile(4, "x^3 + x^4");
        assert_eq!((pp.m(1), pp.m(2), pp.m(4)), (10, 1, 1));
        assert_eq!(pp.image_size(), 12);
        // 10 + 4 + 16
        assert_eq!(pp.collisions(), 30);
        let pp5 = profile(5, "x^3 + x^4");
        assert_eq!(pp5.m(2), 16);
        assert!(pp5.is_k_to_1(2));
        assert_eq!(pp5.collisions(), 64);
    }

    #[test]
    fn permutations_and_bounds() {
        let id = profile(3, "x");
        assert!(id.is_permutation());
        assert!(id.is_k_to_1(1));
        assert!(!id.is_almost_k_to_1(1));
        assert_eq!(id.collisions(), 8);
        assert_eq!(id.cauchy_schwarz_bound(), 8);
        let c = profile(3, "5");
        assert_eq!(c.image_size(), 1);
        assert_eq!(c.collisions(), 64);
        assert_eq!(c.max_omega(), 8);
    }

    #[test]
    fn squared_deviation_matches_direct_sum() {
        let pp = profile(4, "x^3 + x^4");
        let direct: u64 = pp
            .omega_table()
            .iter()
            .filter(|&&w| w > 0)
            .map(|&w| (w as i64 - 3).pow(2) as u64)
            .sum();
        assert_eq!(pp.squared_deviation(2), direct);
    }
}
