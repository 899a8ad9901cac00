use super::{fusion_ring_of_group, DimensionFunction, FusionRing};
use crate::error::Result;
use crate::group::{are_isomorphic, FiniteGroup};

/// Per-label data preserved by any based-ring isomorphism.
fn fingerprint(r: &FusionRing, d: &DimensionFunction, i: usize) -> (u64, bool, Vec<u64>, Vec<u64>) {
    let n = r.size();
    let mut row: Vec<u64> = (0..n)
        .flat_map(|j| (0..n).map(move |k| (j, k)))
        .map(|(j, k)| r.constant(i, j, k).expect("finite ring"))
        .collect();
    row.sort_unstable();
    let mut square: Vec<u64> = (0..n).map(|k| r.constant(i, i, k).expect("finite ring")).collect();
    square.sort_unstable();
    (d.get(i), r.dual(i) == i, row, square)
}

struct Search<'a> {
    r1: &'a FusionRing,
    r2: &'a FusionRing,
    n: usize,
    candidates: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Whether extending by `i ↦ j` keeps all constants among assigned labels.
    fn consistent(&self, map: &[Option<usize>], i: usize, j: usize) -> bool {
        let d1 = self.r1.dual(i);
        if let Some(t) = map[d1] {
            if t != self.r2.dual(j) {
                return false;
            }
        } else if d1 == i && self.r2.dual(j) != j {
            return false;
        }
        let c1 = |a, b, c| self.r1.constant(a, b, c).expect("finite ring");
        let c2 = |a, b, c| self.r2.constant(a, b, c).expect("finite ring");
        let img = |x: usize| if x == i { Some(j) } else { map[x] };
        let assigned: Vec<usize> = (0..self.n).filter(|&x| x == i || map[x].is_some()).collect();
        for &a in &assigned {
            for &b in &assigned {
                for &c in &assigned {
                    if a != i && b != i && c != i {
                        continue;
                    }
                    let (ia, ib, ic) = (img(a).unwrap(), img(b).unwrap(), img(c).unwrap());
                    if c1(a, b, c) != c2(ia, ib, ic) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn extend(&self, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, next: usize) -> bool {
        if next == self.n {
            return true;
        }
        for &j in &self.candidates[next] {
            if used[j] || !self.consistent(map, next, j) {
                continue;
            }
            map[next] = Some(j);
            used[j] = true;
            if self.extend(map, used, next + 1) {
                return true;
            }
            map[next] = None;
            used[j] = false;
        }
        false
    }
}

/// A bijection of bases fixing the unit, commuting with duality, preserving
/// dimensions and all structure constants; the witness is re-verified.
/// Infinite rings compare equal only to themselves.
pub fn fusion_rings_isomorphic(
    r1: &FusionRing,
    d1: &DimensionFunction,
    r2: &FusionRing,
    d2: &DimensionFunction,
) -> Option<Vec<usize>> {
    if !r1.is_finite() || !r2.is_finite() {
        return (r1 == r2 && d1 == d2).then(|| (0..r1.size()).collect());
    }
    let n = r1.size();
    if n != r2.size() || n == 0 {
        return None;
    }
    let f1: Vec<_> = (0..n).map(|i| fingerprint(r1, d1, i)).collect();
    let f2: Vec<_> = (0..n).map(|i| fingerprint(r2, d2, i)).collect();
    let mut s1 = f1.clone();
    let mut s2 = f2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return None;
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| if i == 0 { vec![0] } else { (1..n).filter(|&j| f1[i] == f2[j]).collect() })
        .collect();
    let search = Search { r1, r2, n, candidates };
    // branch on the image of label 1 in parallel
    let first: Vec<usize> = if n > 1 { search.candidates[1].clone() } else { vec![] };
    let found = if n == 1 {
        Some(vec![0])
    } else {
        crate::par::find_map_first(&first, |&j| {
            let mut map = vec![None; n];
            let mut used = vec![false; n];
            map[0] = Some(0);
            used[0] = true;
            if !search.consistent(&map, 1, j) {
                return None;
            }
            map[1] = Some(j);
            used[j] = true;
            search
                .extend(&mut map, &mut used, 2)
                .then(|| map.iter().map(|x| x.expect("complete")).collect::<Vec<usize>>())
        })
    };
    found.filter(|w| verify_witness(r1, d1, r2, d2, w))
}

fn verify_witness(r1: &FusionRing, d1: &DimensionFunction, r2: &FusionRing, d2: &DimensionFunction, w: &[usize]) -> bool {
    let n = r1.size();
    let mut seen = vec![false; n];
    for &x in w {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    if w[0] != 0 {
        return false;
    }
    (0..n).all(|i| d1.get(i) == d2.get(w[i]) && w[r1.dual(i)] == r2.dual(w[i]))
        && (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| r1.constant(i, j, k).ok() == r2.constant(w[i], w[j], w[k]).ok())
            })
        })
}

/// Representation-theoretic comparison of two groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCheck {
    pub groups_isomorphic: bool,
    pub degrees_equal: bool,
    pub fusion_isomorphic: bool,
    pub witness: Option<Vec<usize>>,
}

pub fn certify_pair(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<PairCheck> {
    let (r1, d1) = fusion_ring_of_group(g1)?;
    let (r2, d2) = fusion_ring_of_group(g2)?;
    let mut a = d1.0.clone();
    let mut b = d2.0.clone();
    a.sort_unstable();
    b.sort_unstable();
    let witness = fusion_rings_isomorphic(&r1, &d1, &r2, &d2);
    Ok(PairCheck {
        groups_isomorphic: are_isomorphic(g1, g2).is_some(),
        degrees_equal: a == b,
        fusion_isomorphic: witness.is_some(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn ring(name: &str) -> (FusionRing, DimensionFunction) {
        fusion_ring_of_group(&catalog::lookup(name).unwrap()).unwrap()
    }

    #[test]
    fn self_isomorphism() {
        let (r, d) = ring("s4");
        assert!(fusion_rings_isomorphic(&r, &d, &r, &d).is_some());
    }

    #[test]
    fn d8_and_q8() {
        let c = certify_pair(&catalog::lookup("d8").unwrap(), &catalog::lookup("q8").unwrap()).unwrap();
        assert!(!c.groups_isomorphic);
        assert!(c.degrees_equal);
        assert!(c.fusion_isomorphic);
    }

    #[test]
    fn c4_and_klein() {
        let (r1, d1) = ring("c4");
        let (r2, d2) = ring("c2xc2");
        assert!(fusion_rings_isomorphic(&r1, &d1, &r2, &d2).is_none());
    }
}
