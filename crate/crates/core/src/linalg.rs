//! Exact row echelon forms over sparse vectors.
//!
//! Each stored row is normalised so that its largest key (the pivot) has
//! coefficient one. Reducing a vector walks its keys from the top down, so
//! the remainder contains no pivot keys and is a normal form modulo the span.

use std::collections::BTreeMap;

use crate::exactnum::Scalar;

pub type SparseVec<K> = BTreeMap<K, Scalar>;

#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

/// `v -= c * row`, dropping cancelled entries.
fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Scalar, row: &SparseVec<K>) {
    for (k, x) in row {
        let d = c * x;
        match v.get_mut(k) {
            Some(y) => {
                *y -= &d;
                if y.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(k.clone(), -d);
            }
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// The remainder of `v` modulo the span of the stored rows.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        v.retain(|_, c| !c.is_zero());
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => v.keys().rev().find(|k| self.rows.contains_key(*k)).cloned(),
                Some(b) => v.range(..b.clone()).rev().map(|(k, _)| k).find(|k| self.rows.contains_key(*k)).cloned(),
            };
            let Some(k) = next else { break };
            let c = v[&k].clone();
            axpy(&mut v, &c, &self.rows[&k]);
            bound = Some(k);
        }
        v
    }

    pub fn contains(&self, v: SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns `false` when `v` was already in it.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.recip().expect("leading coefficient is nonzero");
        for c in r.values_mut() {
            *c = &*c * &inv;
        }
        self.rows.insert(pivot, r);
        true
    }
}

/// The rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(vs: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut ech = Echelon::new();
    for v in vs {
        ech.insert(v);
    }
    ech.rank()
}
