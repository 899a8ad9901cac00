use super::structure::{center, conjugacy_classes, derived_subgroup};
use super::{FiniteGroup, Subgroup};

/// Isomorphism invariants used for pruning: order, the sorted multiset of
/// `(element order, class size)` pairs, center order, derived subgroup order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub order: usize,
    pub element_stats: Vec<(usize, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
}

fn element_keys(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut keys = vec![(0, 0); g.order()];
    for class in conjugacy_classes(g) {
        for &x in &class {
            keys[x] = (g.element_order(x), class.len());
        }
    }
    keys
}

pub fn invariant_signature(g: &FiniteGroup) -> Signature {
    let mut stats = element_keys(g);
    stats.sort_unstable();
    Signature {
        order: g.order(),
        element_stats: stats,
        center_order: center(g).order(),
        derived_order: derived_subgroup(g).order(),
    }
}

/// Extends the images of `gens[..k]` to the subgroup they generate. Returns
/// `None` if the assignment is not an injective homomorphism there.
fn extend_map(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if std::mem::replace(&mut used[img], true) {
                    return None;
                }
                map[y] = img;
                queue.push_back(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// Decides whether `g` and `h` are isomorphic; on success returns a witness
/// `phi` with `phi[g.mul(a, b)] == h.mul(phi[a], phi[b])`.
///
/// Generator-image backtracking, pruned by element order and class size.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    if invariant_signature(g) != invariant_signature(h) {
        return None;
    }
    let kg = element_keys(g);
    let kh = element_keys(h);
    // greedy generators, preferring rare keys so candidate lists stay short
    let mut key_count = std::collections::HashMap::new();
    for k in &kg {
        *key_count.entry(*k).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&x| (key_count[&kg[x]], std::cmp::Reverse(kg[x].0), x));
    let mut gens = Vec::new();
    let mut cur = Subgroup::trivial();
    while cur.order() < g.order() {
        let best = order
            .iter()
            .copied()
            .filter(|&x| !cur.contains(x))
            .max_by_key(|&x| {
                let mut t = gens.clone();
                t.push(x);
                (Subgroup::generated(g, &t).order(), std::cmp::Reverse(key_count[&kg[x]]))
            })
            .expect("proper subgroup has an outside element");
        gens.push(best);
        cur = Subgroup::generated(g, &gens);
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..h.order()).filter(|&t| kh[t] == kg[s]).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    backtrack(g, h, &gens, &candidates, &mut images)
}

fn backtrack(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let k = images.len();
    if k == gens.len() {
        let map = extend_map(g, h, gens, images)?;
        return map.iter().all(|&x| x != usize::MAX).then_some(map);
    }
    for &t in &candidates[k] {
        images.push(t);
        if extend_map(g, h, &gens[..=k], images).is_some() {
            if let Some(m) = backtrack(g, h, gens, candidates, images) {
                return Some(m);
            }
        }
        images.pop();
    }
    None
}
