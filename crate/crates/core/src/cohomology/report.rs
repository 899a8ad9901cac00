use super::{h2_classes_with, is_nondegenerate, H2Options};
use crate::error::{Error, Result};
use crate::group::{subgroups_up_to_conjugacy, FiniteGroup, Subgroup};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualH2Entry {
    pub subgroup: Subgroup,
    pub h2_order: usize,
    pub nondegenerate: usize,
    pub orbits: usize,
}

/// Per-subgroup-class contributions to H² of the dual of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualH2Report {
    pub entries: Vec<DualH2Entry>,
    pub total: usize,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// For each conjugacy class of subgroups `H`, the nondegenerate classes in
/// H²(H;T) up to the action `(g·c)(x,y) = c(g⁻¹xg, g⁻¹yg)` of the normalizer.
pub fn dual_h2_report(g: &FiniteGroup, subgroup_bound: usize, opts: &H2Options) -> Result<DualH2Report> {
    let classes = subgroups_up_to_conjugacy(g, subgroup_bound)?;
    let entries = crate::par::try_map(&classes, |cls| {
        let h = &cls.representative;
        let hg = Arc::new(h.to_group(g));
        let set = h2_classes_with(hg.clone(), opts).map_err(|e| match e {
            Error::SizeBound { order, bound, .. } => Error::SizeBound {
                what: format!("subgroup {:?}", h.elements()),
                order,
                bound,
            },
            other => other,
        })?;
        let t = set.transversal().ok_or_else(|| Error::SizeBound {
            what: format!("H² transversal of subgroup {:?}", h.elements()),
            order: h.order(),
            bound: opts.transversal_cap,
        })?;
        let nondeg: Vec<usize> = (0..t.len()).filter(|&i| is_nondegenerate(&t[i])).collect();
        let mut parent: Vec<usize> = (0..t.len()).collect();
        for &x in cls.normalizer.elements() {
            let xi = g.inv(x);
            // local index of x⁻¹ a x for each local a
            let map: Vec<usize> = h
                .elements()
                .iter()
                .map(|&a| h.position(g.conjugate(xi, a)).expect("normalizer preserves H"))
                .collect();
            for &i in &nondeg {
                let moved = t[i].pullback(hg.clone(), &map);
                let j = set.class_of(&moved)?;
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let mut roots: Vec<usize> = nondeg.iter().map(|&i| find(&mut parent, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        Ok::<_, Error>(DualH2Entry {
            subgroup: h.clone(),
            h2_order: t.len(),
            nondegenerate: nondeg.len(),
            orbits: roots.len(),
        })
    })?;
    let total = entries.iter().map(|e| e.orbits).sum();
    Ok(DualH2Report { entries, total })
}
