use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::par;
use std::collections::{BTreeSet, HashSet};

pub const DEFAULT_SUBGROUP_BOUND: usize = 64;

/// Conjugacy classes, each sorted with its minimal element first, listed in
/// order of those minimal elements. The identity class is `[0]`.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|h| g.conjugate(h, x)).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            seen[y] = true;
        }
        classes.push(class);
    }
    classes
}

pub fn centralizer(g: &FiniteGroup, x: usize) -> Subgroup {
    Subgroup::from_sorted_unchecked(
        (0..g.order())
            .filter(|&h| g.mul(x, h) == g.mul(h, x))
            .collect(),
    )
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    Subgroup::from_sorted_unchecked(
        (0..g.order())
            .filter(|&z| (0..g.order()).all(|h| g.mul(z, h) == g.mul(h, z)))
            .collect(),
    )
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    let checked = Subgroup::new(g, h.elements().to_vec())?;
    Ok(Subgroup::from_sorted_unchecked(
        (0..g.order())
            .filter(|&x| checked.elements().iter().all(|&y| checked.contains(g.conjugate(x, y))))
            .collect(),
    ))
}

/// The commutator subgroup `[G, G]`.
pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    let n = g.order();
    let mut comms = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            comms.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
        }
    }
    let gens: Vec<usize> = comms.into_iter().collect();
    Subgroup::generated(g, &gens)
}

/// A conjugacy class of subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClass {
    /// Canonical representative: the lexicographically smallest member.
    pub representative: Subgroup,
    pub normalizer: Subgroup,
    pub orbit_size: usize,
}

fn check_bound(g: &FiniteGroup, bound: usize) -> Result<()> {
    if g.order() > bound {
        return Err(Error::SizeBound {
            what: "group for subgroup enumeration".into(),
            order: g.order(),
            bound,
        });
    }
    Ok(())
}

/// Every subgroup of `g`, sorted by (order, elements).
///
/// Layered closure: each known subgroup is extended by one element from each
/// of its right cosets, and the results deduplicated by canonical form.
pub fn all_subgroups(g: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    check_bound(g, bound)?;
    let n = g.order();
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    found.insert(vec![0]);
    let mut layer: Vec<Vec<usize>> = vec![vec![0]];
    while !layer.is_empty() {
        let extended: Vec<Vec<Vec<usize>>> = par::map(&layer, |h| {
            let sub = Subgroup::from_sorted_unchecked(h.clone());
            let gens = small_generating_set(g, &sub);
            let mut covered = vec![false; n];
            for &x in h {
                covered[x] = true;
            }
            let mut out = Vec::new();
            for x in 0..n {
                if covered[x] {
                    continue;
                }
                for &y in h {
                    covered[g.mul(y, x)] = true;
                }
                let mut gx = gens.clone();
                gx.push(x);
                out.push(Subgroup::generated(g, &gx).elements);
            }
            out
        });
        let mut next = Vec::new();
        for cand in extended.into_iter().flatten() {
            if found.insert(cand.clone()) {
                next.push(cand);
            }
        }
        next.sort();
        layer = next;
    }
    let mut all: Vec<Subgroup> = found.into_iter().map(Subgroup::from_sorted_unchecked).collect();
    all.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    Ok(all)
}

/// A generating set built greedily from the sorted element list.
pub(crate) fn small_generating_set(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut cur = Subgroup::trivial();
    for &x in h.elements() {
        if !cur.contains(x) {
            gens.push(x);
            cur = Subgroup::generated(g, &gens);
            if cur.order() == h.order() {
                break;
            }
        }
    }
    gens
}

/// Subgroups up to conjugacy, ordered by (order, representative elements).
/// Orbit size times normalizer order equals |G| for every class.
pub fn subgroups_up_to_conjugacy(g: &FiniteGroup, bound: usize) -> Result<Vec<SubgroupClass>> {
    let all = all_subgroups(g, bound)?;
    let index: std::collections::HashMap<&[usize], usize> =
        all.iter().enumerate().map(|(i, s)| (s.elements(), i)).collect();
    let mut assigned = vec![false; all.len()];
    let mut classes = Vec::new();
    for i in 0..all.len() {
        if assigned[i] {
            continue;
        }
        let rep = &all[i];
        let conjugates = par::map_range(g.order(), |x| rep.conjugate_by(g, x));
        let mut normalizer = Vec::new();
        let mut orbit = BTreeSet::new();
        for (x, c) in conjugates.iter().enumerate() {
            if c == rep {
                normalizer.push(x);
            }
            orbit.insert(index[c.elements()]);
        }
        for &j in &orbit {
            assigned[j] = true;
        }
        classes.push(SubgroupClass {
            representative: rep.clone(),
            normalizer: Subgroup::from_sorted_unchecked(normalizer),
            orbit_size: orbit.len(),
        });
    }
    Ok(classes)
}
