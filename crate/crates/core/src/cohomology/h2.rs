use super::{cochain_len, Cocycle};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::zmod::{self, Howell};
use num_bigint::BigUint;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

pub const DEFAULT_H2_BOUND: usize = 36;
pub const TRANSVERSAL_CAP: usize = 4096;

#[derive(Debug, Clone, Copy)]
pub struct H2Options {
    pub bound: usize,
    pub transversal_cap: usize,
}

impl Default for H2Options {
    fn default() -> Self {
        H2Options {
            bound: DEFAULT_H2_BOUND,
            transversal_cap: TRANSVERSAL_CAP,
        }
    }
}

/// `M = |G| · exp(G^ab)`: a T-valued cochain trivializing a cocycle with
/// values in the |G|-th roots of unity can be taken with values in μ_M.
pub fn t_modulus(g: &FiniteGroup) -> u64 {
    g.order() as u64 * g.abelianization_exponent() as u64
}

#[inline]
fn var(n: usize, g: usize, h: usize) -> usize {
    (g - 1) * (n - 1) + (h - 1)
}

/// Sparse equations of the degree-2 coboundary on normalized cochains:
/// `c(h,k) - c(gh,k) + c(g,hk) - c(g,h) = 0` for `g, h, k != e`.
fn cocycle_equations(g: &FiniteGroup) -> impl Iterator<Item = Vec<(usize, u64)>> + '_ {
    let n = g.order();
    let triples = (1..n).flat_map(move |a| (1..n).flat_map(move |b| (1..n).map(move |c| (a, b, c))));
    triples.filter_map(move |(a, b, c)| {
        let mut terms: Vec<(usize, i64)> = Vec::with_capacity(4);
        let mut push = |x: usize, y: usize, s: i64| {
            if x != 0 && y != 0 {
                terms.push((var(n, x, y), s));
            }
        };
        let (ab, bc) = (g.mul(a, b), g.mul(b, c));
        push(b, c, 1);
        push(ab, c, -1);
        push(a, bc, 1);
        push(a, b, -1);
        terms.sort_unstable();
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(4);
        for (v, s) in terms {
            match merged.last_mut() {
                Some((w, t)) if *w == v => *t += s,
                _ => merged.push((v, s)),
            }
        }
        merged.retain(|&(_, s)| s != 0);
        (!merged.is_empty()).then(|| {
            merged
                .into_iter()
                .map(|(v, s)| (v, s.rem_euclid(n as i64) as u64))
                .collect()
        })
    })
}

/// Normalized coboundaries `dδ_x` of the point 1-cochains, `x != e`, as
/// dense vectors over Z/modulus.
fn coboundary_generators(g: &FiniteGroup, modulus: u64) -> Vec<Vec<u64>> {
    let n = g.order();
    let len = cochain_len(n);
    let mut rows = vec![vec![0u64; len]; n.saturating_sub(1)];
    for a in 1..n {
        for b in 1..n {
            let ab = g.mul(a, b);
            let v = var(n, a, b);
            rows[a - 1][v] += 1;
            rows[b - 1][v] += 1;
            if ab != 0 {
                rows[ab - 1][v] += modulus - 1;
            }
        }
    }
    for r in rows.iter_mut() {
        r.iter_mut().for_each(|x| *x %= modulus);
    }
    rows
}

/// Homomorphisms `G → Z/e`, as value lists on the non-identity elements.
fn characters_mod(g: &FiniteGroup, e: u64) -> Vec<Vec<u64>> {
    let n = g.order();
    let eqs = (1..n).flat_map(move |a| {
        (1..n).map(move |b| {
            let ab = g.mul(a, b);
            let mut t = vec![(a - 1, 1u64), (b - 1, 1u64)];
            if ab != 0 {
                t.push((ab - 1, e - 1));
            }
            t
        })
    });
    zmod::kernel_sparse(n - 1, e, eqs)
}

/// The carry cocycle `(φ(g) + φ(h) - φ(gh)) / e` of a homomorphism into Z/e
/// lifted to `0..e`.
fn carry(g: &FiniteGroup, e: u64, phi: &[u64]) -> Vec<u64> {
    let n = g.order();
    let lift = |x: usize| if x == 0 { 0 } else { phi[x - 1] };
    let mut v = vec![0; cochain_len(n)];
    for a in 1..n {
        for b in 1..n {
            let s = lift(a) + lift(b) - lift(g.mul(a, b)) as u64;
            debug_assert_eq!(s % e, 0);
            v[var(n, a, b)] = s / e;
        }
    }
    v
}

/// H²(G; T) with a transversal of normalized representatives.
#[derive(Debug, Clone)]
pub struct CohClassSet {
    group: Arc<FiniteGroup>,
    modulus: u64,
    t_modulus: u64,
    invariants: Vec<u64>,
    cocycle_count: BigUint,
    t_coboundary_count: BigUint,
    t_coboundaries: Howell,
    transversal: Option<Vec<Cocycle>>,
    index: HashMap<Vec<u64>, usize>,
}

impl CohClassSet {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// The coefficient modulus m = |G|.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The modulus M in which T-triviality is decided.
    pub fn t_modulus(&self) -> u64 {
        self.t_modulus
    }

    /// Invariant factors of H²(G;T), ascending, each at least 2.
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> BigUint {
        self.invariants.iter().map(|&d| BigUint::from(d)).product()
    }

    /// |Z²(G; μ_m)| on normalized cochains.
    pub fn cocycle_count(&self) -> &BigUint {
        &self.cocycle_count
    }

    /// Number of μ_m-valued normalized cocycles that are T-coboundaries.
    pub fn t_coboundary_count(&self) -> &BigUint {
        &self.t_coboundary_count
    }

    /// Class representatives, the trivial class first; `None` above the cap.
    pub fn transversal(&self) -> Option<&[Cocycle]> {
        self.transversal.as_deref()
    }

    /// Canonical representative vector of the class of `c`.
    pub fn canonical_vector(&self, c: &Cocycle) -> Result<Vec<u64>> {
        if c.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(c.modulus(), self.modulus));
        }
        let mut v = c.normalized_vector();
        self.t_coboundaries.reduce(&mut v);
        Ok(v)
    }

    /// Index of the class of `c` in the transversal.
    pub fn class_of(&self, c: &Cocycle) -> Result<usize> {
        if self.transversal.is_none() {
            return Err(Error::SizeBound {
                what: "H² transversal".into(),
                order: self.invariants.iter().product::<u64>() as usize,
                bound: TRANSVERSAL_CAP,
            });
        }
        let v = self.canonical_vector(c)?;
        self.index
            .get(&v)
            .copied()
            .ok_or_else(|| Error::Consistency("cocycle class not found in the transversal".into()))
    }
}

pub fn h2_classes(g: &FiniteGroup) -> Result<CohClassSet> {
    h2_classes_with(Arc::new(g.clone()), &H2Options::default())
}

/// Z² is the kernel of the coboundary map on normalized cochains over Z/m;
/// the T-coboundaries are B² plus the carry cocycles of homomorphisms
/// `G → Z/exp(G^ab)`, which is the pullback of the coboundaries over Z/M.
pub fn h2_classes_with(group: Arc<FiniteGroup>, opts: &H2Options) -> Result<CohClassSet> {
    let g = &*group;
    let n = g.order();
    if n > opts.bound {
        return Err(Error::SizeBound {
            what: "group for H²".into(),
            order: n,
            bound: opts.bound,
        });
    }
    let m = n as u64;
    let e = g.abelianization_exponent() as u64;
    let len = cochain_len(n);

    let z_gens = zmod::kernel_sparse(len, m, cocycle_equations(g));
    let mut bt_gens = coboundary_generators(g, m);
    for phi in characters_mod(g, e) {
        bt_gens.push(carry(g, e, &phi).into_iter().map(|x| x % m).collect());
    }
    let t_coboundaries = Howell::new(m, len, bt_gens.clone());
    let z_howell = Howell::new(m, len, z_gens.clone());
    for b in t_coboundaries.rows() {
        if !z_howell.contains(b) {
            return Err(Error::Consistency("a T-coboundary is not a cocycle".into()));
        }
    }

    // relations among the cocycle generators modulo T-coboundaries
    let r = z_gens.len();
    let mut stacked = z_gens.clone();
    stacked.extend(t_coboundaries.rows().iter().cloned());
    let relations: Vec<Vec<u64>> = zmod::left_kernel(&stacked, len, m)
        .into_iter()
        .map(|v| v[..r].to_vec())
        .collect();
    let invariants = zmod::invariant_factors(&zmod::cokernel_orders(&relations, r, m));
    let order: BigUint = invariants.iter().map(|&d| BigUint::from(d)).product();
    let cocycle_count = z_howell.span_order();
    let t_coboundary_count = t_coboundaries.span_order();
    if &t_coboundary_count * &order != cocycle_count {
        return Err(Error::Consistency(format!(
            "|Z²| = {cocycle_count}, |B_T| = {t_coboundary_count}, |H²| = {order}"
        )));
    }

    let mut transversal = None;
    let mut index = HashMap::new();
    if order <= BigUint::from(opts.transversal_cap) {
        let rel_howell = Howell::new(m, r, relations);
        let mut gens: Vec<Vec<u64>> = Vec::new();
        for i in 0..r {
            let mut u = vec![0u64; r];
            u[i] = 1 % m;
            rel_howell.reduce(&mut u);
            if u.iter().any(|&x| x != 0) && !gens.contains(&u) {
                gens.push(u);
            }
        }
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let zero = vec![0u64; r];
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for gen in &gens {
                    let mut y: Vec<u64> = x.iter().zip(gen).map(|(a, b)| (a + b) % m).collect();
                    rel_howell.reduce(&mut y);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let mut reps: Vec<Vec<u64>> = seen
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![0u64; len];
                for (a, z) in coeffs.iter().zip(&z_gens) {
                    if *a != 0 {
                        for (x, y) in v.iter_mut().zip(z) {
                            *x = ((*x as u128 + *a as u128 * *y as u128) % m as u128) as u64;
                        }
                    }
                }
                t_coboundaries.reduce(&mut v);
                v
            })
            .collect();
        reps.sort();
        reps.dedup();
        if BigUint::from(reps.len()) != order {
            return Err(Error::Consistency(format!(
                "transversal has {} classes, expected {order}",
                reps.len()
            )));
        }
        index = reps.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        transversal = Some(
            reps.iter()
                .map(|v| Cocycle::from_normalized_vector(group.clone(), m, v))
                .collect(),
        );
    }

    Ok(CohClassSet {
        group: group.clone(),
        modulus: m,
        t_modulus: m * e,
        invariants,
        cocycle_count,
        t_coboundary_count,
        t_coboundaries,
        transversal,
        index,
    })
}

/// True iff `(M/m)·c` is a coboundary over Z/M, `M = |G| exp(G^ab)`.
///
/// Works for any modulus dividing M; other moduli are first scaled up.
pub fn is_t_coboundary(c: &Cocycle) -> bool {
    let g = c.group();
    let big = crate::zmod::lcm(t_modulus(g), c.modulus() * g.abelianization_exponent() as u64);
    let len = cochain_len(g.order());
    let image = Howell::new(big, len, coboundary_generators(g, big));
    let f = big / c.modulus();
    let v: Vec<u64> = c.normalized_vector().iter().map(|x| x * f % big).collect();
    image.contains(&v)
}

pub fn cohomologous(c1: &Cocycle, c2: &Cocycle) -> Result<bool> {
    Ok(is_t_coboundary(&c1.sub(c2)?))
}
