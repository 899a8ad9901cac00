//! Finite groups given by explicit multiplication tables.
//!
//! Element 0 is always the identity. Everything downstream indexes elements
//! by `usize` into the table.

mod build;
pub mod catalog;
mod io;
mod iso;
mod structure;

pub use build::{build_group, GroupSpec};
pub(crate) use build::check_action;
pub use io::{parse_group, write_group};
pub use iso::{are_isomorphic, invariant_signature};
pub use structure::{
    all_subgroups, center, centralizer, conjugacy_classes, derived_subgroup, normalizer,
    subgroups_up_to_conjugacy, SubgroupClass, DEFAULT_SUBGROUP_BOUND,
};

use crate::error::{Error, Result};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table and checks every group axiom,
    /// associativity included (O(n^3)).
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        let g = Self::from_table_unchecked_assoc(order, table)?;
        g.check_associative()?;
        Ok(g)
    }

    /// Checks the Latin-square and identity conditions but not associativity.
    /// Used by constructors whose associativity follows from the construction.
    pub(crate) fn from_table_unchecked_assoc(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&x) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidGroup(format!("entry {x} out of range")));
        }
        for x in 0..order {
            if table[x] != x || table[x * order] != x {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let mut seen = vec![0u32; order];
        for r in 0..order {
            for c in 0..order {
                let v = table[r * order + c];
                if seen[v] == (r as u32) + 1 {
                    return Err(Error::InvalidGroup(format!("row {r} is not a permutation")));
                }
                seen[v] = r as u32 + 1;
            }
        }
        let mut seen = vec![0u32; order];
        for c in 0..order {
            for r in 0..order {
                let v = table[r * order + c];
                if seen[v] == (c as u32) + 1 {
                    return Err(Error::InvalidGroup(format!("column {c} is not a permutation")));
                }
                seen[v] = c as u32 + 1;
            }
        }
        let mul: Vec<u32> = table.into_iter().map(|x| x as u32).collect();
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| mul[x * order + y] == 0)
                .expect("latin square has an identity in every row");
            inv[x] = y as u32;
        }
        Ok(FiniteGroup {
            order,
            mul,
            inv,
            labels: None,
        })
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let ok = crate::par::all_range(n, |x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        });
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGroup("multiplication is not associative".into()))
        }
    }

    /// Exhaustive check of all group axioms.
    pub fn validate(&self) -> Result<()> {
        Self::from_table_unchecked_assoc(self.order, self.table())?.check_associative()
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            mul: vec![0],
            inv: vec![0],
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn table(&self) -> Vec<usize> {
        self.mul.iter().map(|&x| x as usize).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|g| self.element_order(g))
            .fold(1, |a, b| num_integer::lcm(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exponent of the abelianization `G / [G, G]`.
    pub fn abelianization_exponent(&self) -> usize {
        let d = derived_subgroup(self);
        let (q, _) = self
            .quotient(&d)
            .expect("the derived subgroup is normal");
        q.exponent()
    }

    /// Quotient by a normal subgroup; cosets are ordered by their minimal
    /// element, so the identity coset is 0. Also returns the projection.
    pub fn quotient(&self, normal: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        let n = self.order;
        for g in 0..n {
            for &x in normal.elements() {
                if !normal.contains(self.conjugate(g, x)) {
                    return Err(Error::NotASubgroup("subgroup is not normal".into()));
                }
            }
        }
        let mut proj = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if proj[g] == usize::MAX {
                let idx = reps.len();
                reps.push(g);
                for &x in normal.elements() {
                    proj[self.mul(g, x)] = idx;
                }
            }
        }
        let q = reps.len();
        let mut table = vec![0usize; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = proj[self.mul(a, b)];
            }
        }
        Ok((FiniteGroup::from_table_unchecked_assoc(q, table)?, proj))
    }
}

/// A subgroup stored as the strictly increasing list of its elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Checks closure and returns the canonical form.
    pub fn new(group: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        if elements.iter().any(|&x| x >= group.order()) {
            return Err(Error::NotASubgroup("element out of range".into()));
        }
        let s = Subgroup { elements };
        for &a in &s.elements {
            if !s.contains(group.inv(a)) {
                return Err(Error::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &s.elements {
                if !s.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "not closed under multiplication at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(s)
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        Subgroup { elements }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup {
            elements: (0..group.order()).collect(),
        }
    }

    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Self {
        let mut mark = vec![false; group.order()];
        mark[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut elements = vec![0usize];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = group.mul(x, g);
                if !mark[y] {
                    mark[y] = true;
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Position of `x` in the element list (its index in [`Self::to_group`]).
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// The subgroup as a standalone group; element `i` is `elements()[i]`.
    pub fn to_group(&self, group: &FiniteGroup) -> FiniteGroup {
        let k = self.order();
        let mut table = Vec::with_capacity(k * k);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(self.position(group.mul(a, b)).expect("closed"));
            }
        }
        let mut sub = FiniteGroup::from_table_unchecked_assoc(k, table)
            .expect("a subgroup table is a group table");
        if let Some(labels) = group.labels() {
            sub.labels = Some(self.elements.iter().map(|&x| labels[x].clone()).collect());
        }
        sub
    }

    pub fn conjugate_by(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut e: Vec<usize> = self.elements.iter().map(|&x| group.conjugate(g, x)).collect();
        e.sort_unstable();
        Subgroup { elements: e }
    }

    pub fn is_normal(&self, group: &FiniteGroup) -> bool {
        (0..group.order()).all(|g| self.elements.iter().all(|&x| self.contains(group.conjugate(g, x))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroup::from_table(2, vec![1, 0, 0, 1]).is_err());
        assert!(FiniteGroup::from_table(0, vec![]).is_err());
        // a Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(FiniteGroup::from_table(5, loop5).is_err());
    }

    #[test]
    fn subgroup_checks_closure() {
        let g = build_group(&GroupSpec::Cyclic(4)).unwrap();
        assert!(Subgroup::new(&g, vec![0, 2]).is_ok());
        assert!(Subgroup::new(&g, vec![0, 1]).is_err());
        assert_eq!(Subgroup::generated(&g, &[1]).order(), 4);
    }

    #[test]
    fn quotient_of_cyclic() {
        let g = build_group(&GroupSpec::Cyclic(6)).unwrap();
        let h = Subgroup::generated(&g, &[2]);
        let (q, proj) = g.quotient(&h).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj[0], 0);
        assert_eq!(proj[1], 1);
    }
}
