use super::{
    alternating_classes, antisymmetrization, dual_image, form_to_cocycle, invariant_chains, is_k_coboundary, tau,
    AbelianGroup, AlternatingForm, ExtensionCocycle, KAction,
};
use crate::cohomology::Cocycle;
use crate::error::{Error, Result};
use crate::group::{are_isomorphic, build_group, FiniteGroup, GroupSpec};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Record of one application of the τ-construction.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub action: Arc<KAction>,
    pub form: AlternatingForm,
    pub cocycle: Cocycle,
    pub b1: ExtensionCocycle,
    pub tau: ExtensionCocycle,
    pub b2: ExtensionCocycle,
    /// `b2 - b1` equals the τ-image, re-checked entrywise.
    pub premise_verified: bool,
    /// The form has a nontrivial radical.
    pub degenerate: bool,
    pub tau_is_coboundary: bool,
    pub isomorphic: bool,
}

impl Certificate {
    /// Flat `key=value` record.
    pub fn record(&self) -> Vec<(String, String)> {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let act = &self.action;
        let k = act.acting();
        let mut out = vec![
            ("k_order".to_string(), k.order().to_string()),
            (
                "a_factors".to_string(),
                act.abelian().factors().iter().map(u64::to_string).collect::<Vec<_>>().join(","),
            ),
        ];
        for g in 0..k.order() {
            out.push((format!("action_{g}"), join(&act.table()[g])));
        }
        out.push((
            "form".to_string(),
            self.form.upper().iter().map(u64::to_string).collect::<Vec<_>>().join(","),
        ));
        out.push(("b1".to_string(), join(self.b1.table())));
        out.push(("tau".to_string(), join(self.tau.table())));
        out.push(("premise_verified".to_string(), self.premise_verified.to_string()));
        out.push(("degenerate".to_string(), self.degenerate.to_string()));
        out.push(("tau_coboundary".to_string(), self.tau_is_coboundary.to_string()));
        out.push(("isomorphic".to_string(), self.isomorphic.to_string()));
        out
    }
}

#[derive(Debug, Clone)]
pub struct MonoidalPair {
    pub g1: FiniteGroup,
    pub g2: FiniteGroup,
    pub certificate: Certificate,
}

/// `G1` from `b1` and `G2` from `b1 + τ([c])`, with the certificate.
pub fn monoidal_pair(act: &Arc<KAction>, c: &Cocycle, b1: &ExtensionCocycle) -> Result<MonoidalPair> {
    if b1.action_arc() != act {
        return Err(Error::InvalidAction("b1 is defined for a different action".into()));
    }
    let form = antisymmetrization(c, act.abelian())?;
    if !form.is_invariant(act) {
        return Err(Error::NoSolution("class is not K-invariant".into()));
    }
    let t = tau(act, c)?;
    let b2 = b1.add(&t)?;
    b2.validate()?;
    let premise_verified = b2.sub(b1)? == t;
    let g1 = build_group(&GroupSpec::Extension(b1.clone()))?;
    let g2 = build_group(&GroupSpec::Extension(b2.clone()))?;
    let isomorphic = g1 == g2 || are_isomorphic(&g1, &g2).is_some();
    let tau_is_coboundary = is_k_coboundary(&t);
    Ok(MonoidalPair {
        g1,
        g2,
        certificate: Certificate {
            action: act.clone(),
            degenerate: !form.is_nondegenerate(),
            form,
            cocycle: c.clone(),
            b1: b1.clone(),
            tau: t,
            b2,
            premise_verified,
            tau_is_coboundary,
            isomorphic,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_a_order: usize,
    pub max_k_order: usize,
    /// Maximum number of candidate triples examined.
    pub budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_a_order: 81,
            max_k_order: 24,
            budget: 100_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub pair: MonoidalPair,
    pub examined: usize,
}

/// Automorphisms of `A` as a group: elements, composition table, inverses.
struct PermGroup {
    perms: Vec<Vec<usize>>,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl PermGroup {
    fn new(perms: Vec<Vec<usize>>) -> Self {
        let k = perms.len();
        let index: std::collections::HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut mul = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                // (p_i p_j)(x) = p_i(p_j(x))
                let comp: Vec<usize> = perms[j].iter().map(|&x| perms[i][x]).collect();
                mul[i * k + j] = index[comp.as_slice()];
            }
        }
        let inv = (0..k).map(|i| (0..k).find(|&j| mul[i * k + j] == 0).unwrap()).collect();
        PermGroup { perms, mul, inv }
    }

    fn len(&self) -> usize {
        self.perms.len()
    }

    fn m(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.len() + j]
    }

    /// Closure of `gens`, or `None` once it exceeds `cap` elements.
    fn closure(&self, gens: &[usize], cap: usize) -> Option<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &s in gens {
                let y = self.m(x, s);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                    if elems.len() > cap {
                        return None;
                    }
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Some(elems)
    }

    /// Smallest conjugate of a sorted element set, as a canonical label.
    fn canonical(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .map(|s| {
                let si = self.inv[s];
                let mut c: Vec<usize> = set.iter().map(|&x| self.m(self.m(s, x), si)).collect();
                c.sort_unstable();
                c
            })
            .min()
            .expect("nonempty group")
    }

    /// Subgroups generated by one or two elements with at most `cap`
    /// elements, one per conjugacy class, by increasing order.
    fn small_subgroups(&self, cap: usize) -> Vec<Vec<usize>> {
        let k = self.len();
        let mut found = BTreeSet::new();
        for x in 1..k {
            if let Some(s) = self.closure(&[x], cap) {
                found.insert(s);
            }
        }
        let pairs: Vec<(usize, usize)> = (1..k).flat_map(|x| (x + 1..k).map(move |y| (x, y))).collect();
        let gen2 = crate::par::map(&pairs, |&(x, y)| self.closure(&[x, y], cap));
        found.extend(gen2.into_iter().flatten());
        let mut canon: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for s in found {
            if s.len() > 1 {
                canon.insert((s.len(), self.canonical(&s)));
            }
        }
        canon.into_iter().map(|(_, s)| s).collect()
    }

    fn action(&self, sub: &[usize], a: &AbelianGroup) -> KAction {
        let pos = |x: usize| sub.binary_search(&x).expect("closed subgroup");
        let n = sub.len();
        let mut table = vec![0; n * n];
        for (i, &x) in sub.iter().enumerate() {
            for (j, &y) in sub.iter().enumerate() {
                table[i * n + j] = pos(self.m(x, y));
            }
        }
        let k = FiniteGroup::from_table(n, table).expect("subgroup of automorphisms");
        let perms = sub.iter().map(|&x| self.perms[x].clone()).collect();
        KAction::new_unchecked(Arc::new(k), a.clone(), perms)
    }
}

/// The group of automorphisms of `A` generated by `gens` (image tables),
/// acting on `A`; fails once the closure exceeds `cap` elements.
pub fn generated_action(a: &AbelianGroup, gens: &[Vec<usize>], cap: usize) -> Result<Arc<KAction>> {
    let n = a.order();
    for g in gens {
        if g.len() != n {
            return Err(Error::InvalidAction(format!("image table of length {} on a group of order {n}", g.len())));
        }
        let mut hit = vec![false; n];
        g.iter().filter(|&&x| x < n).for_each(|&x| hit[x] = true);
        let hom = (0..n).all(|x| (0..n).all(|y| g[a.add(x, y)] == a.add(g[x], g[y])));
        if !hom || hit.contains(&false) {
            return Err(Error::InvalidAction("generator is not an automorphism".into()));
        }
    }
    let mut elems: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut seen: BTreeSet<Vec<usize>> = elems.iter().cloned().collect();
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let next: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
            if seen.insert(next.clone()) {
                elems.push(next);
                if elems.len() > cap {
                    return Err(Error::SizeBound {
                        what: "generated automorphism group".into(),
                        order: elems.len(),
                        bound: cap,
                    });
                }
            }
        }
        i += 1;
    }
    let pg = PermGroup::new(elems);
    let all: Vec<usize> = (0..pg.len()).collect();
    let act = pg.action(&all, a);
    Ok(Arc::new(KAction::new(act.acting_arc().clone(), a.clone(), act.table().to_vec())?))
}

/// Orbit representatives of nonzero forms under `Aut(Â)`, in lexicographic
/// order.
fn form_orbit_reps(forms: &[AlternatingForm], auts: &[Vec<usize>]) -> Vec<AlternatingForm> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for f in forms.iter().filter(|f| !f.is_zero()) {
        if seen.contains(f) {
            continue;
        }
        for s in auts {
            seen.insert(f.pullback(s));
        }
        reps.push(f.clone());
    }
    reps
}

/// Searches for a split extension `G1 = A ⋊ K` and `G2 = G_{τ(c)}` that are
/// not isomorphic. `A` runs over noncyclic abelian groups by increasing order,
/// then over nonzero forms up to automorphism; `K` over one- and
/// two-generated subgroups of the form stabilizer in `Aut(A)`, by
/// increasing order and up to conjugacy.
pub fn search_monoidal_pairs(cfg: &SearchConfig) -> Result<SearchOutcome> {
    let mut examined = 0usize;
    for order in 4..=cfg.max_a_order as u64 {
        for chain in invariant_chains(order) {
            if chain.len() < 2 {
                continue;
            }
            let a = AbelianGroup::new(chain)?;
            let auts = a.automorphisms();
            let forms = alternating_classes(&a);
            let reps = form_orbit_reps(&forms, &auts);
            let mut cands: Vec<(usize, usize, Arc<KAction>)> = Vec::new();
            for (fi, f) in reps.iter().enumerate() {
                let stab: Vec<Vec<usize>> = auts
                    .iter()
                    .filter(|s| {
                        let d: Vec<usize> = (0..a.order()).map(|phi| dual_image(&a, s, phi)).collect();
                        f.pullback(&d) == *f
                    })
                    .cloned()
                    .collect();
                let pg = PermGroup::new(stab);
                for sub in pg.small_subgroups(cfg.max_k_order) {
                    cands.push((sub.len(), fi, Arc::new(pg.action(&sub, &a))));
                }
            }
            cands.sort_by_key(|(len, fi, _)| (*len, *fi));
            let remaining = cfg.budget.saturating_sub(examined);
            let cands = &cands[..cands.len().min(remaining)];
            let hit = crate::par::find_map_first(&cands.iter().enumerate().collect::<Vec<_>>(), |(i, (_, fi, act))| {
                let c = form_to_cocycle(&reps[*fi]);
                let b1 = ExtensionCocycle::zero(act.clone());
                let t = tau(act, &c).ok()?;
                if is_k_coboundary(&t) {
                    return None;
                }
                let pair = monoidal_pair(act, &c, &b1).ok()?;
                (!pair.certificate.isomorphic).then_some((*i, pair))
            });
            if let Some((i, pair)) = hit {
                return Ok(SearchOutcome {
                    pair,
                    examined: examined + i + 1,
                });
            }
            examined += cands.len();
            if examined >= cfg.budget {
                return Err(Error::SearchExhausted(format!("budget of {} candidates used", cfg.budget)));
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no pair with |A| <= {} and |K| <= {}",
        cfg.max_a_order, cfg.max_k_order
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn trivial_class_gives_equal_tables() {
        let a = AbelianGroup::new(vec![2, 2]).unwrap();
        let k = Arc::new(catalog::lookup("c2").unwrap());
        let act = Arc::new(KAction::new(k, a.clone(), vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]).unwrap());
        let c = Cocycle::zero(Arc::new(a.to_group()), 4);
        let p = monoidal_pair(&act, &c, &ExtensionCocycle::zero(act.clone())).unwrap();
        assert_eq!(p.g1, p.g2);
        assert!(p.certificate.premise_verified);
        assert_eq!(p.g1.order(), 8);
    }

    #[test]
    fn trivial_action_gives_equal_tables() {
        let a = AbelianGroup::new(vec![2, 2]).unwrap();
        let k = Arc::new(catalog::lookup("c2").unwrap());
        let act = Arc::new(KAction::trivial(k, a.clone()));
        let c = form_to_cocycle(&alternating_classes(&a)[1]);
        let p = monoidal_pair(&act, &c, &ExtensionCocycle::zero(act.clone())).unwrap();
        assert_eq!(p.g1, p.g2);
        assert!(p.certificate.tau.is_zero());
    }

    #[test]
    fn perm_group_subgroups_of_aut_v4() {
        let a = AbelianGroup::new(vec![2, 2]).unwrap();
        let pg = PermGroup::new(a.automorphisms());
        // S3: classes of nontrivial subgroups are C2, C3, S3
        let subs = pg.small_subgroups(24);
        let sizes: Vec<usize> = subs.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 3, 6]);
    }
}
