#![allow(dead_code)]

use cocycle_lab::abelian::{
    form_to_cocycle, generated_action, k_invariant_classes, solve_z, AbelianGroup, ExtensionCocycle, KAction,
};
use cocycle_lab::cohomology::Cocycle;
use cocycle_lab::group::FiniteGroup;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Result of enumerating every normalized 2-cochain with values in `Z/m`.
pub struct BruteH2 {
    pub cocycles: Vec<Vec<u64>>,
    pub t_coboundaries: BTreeSet<Vec<u64>>,
}

impl BruteH2 {
    pub fn order(&self) -> usize {
        self.cocycles.len() / self.t_coboundaries.len()
    }
}

/// Normalized cochains are indexed by `(g - 1)(n - 1) + (h - 1)`.
fn full_table(n: usize, v: &[u64]) -> Vec<u64> {
    let mut t = vec![0; n * n];
    for g in 1..n {
        for h in 1..n {
            t[g * n + h] = v[(g - 1) * (n - 1) + (h - 1)];
        }
    }
    t
}

pub fn cochain_table(n: usize, v: &[u64]) -> Vec<u64> {
    full_table(n, v)
}

/// Cocycles with values in `Z/m`, and the `μ_m`-valued cocycles that are
/// coboundaries of `μ_big`-valued 1-cochains (`m | big`).
pub fn brute_h2(g: &FiniteGroup, m: u64, big: u64) -> BruteH2 {
    let n = g.order();
    let len = (n - 1) * (n - 1);
    let total = (m as usize).pow(len as u32);
    let mut cocycles = Vec::new();
    let mut v = vec![0u64; len];
    for code in 0..total {
        let mut x = code;
        for slot in v.iter_mut() {
            *slot = (x % m as usize) as u64;
            x /= m as usize;
        }
        let t = full_table(n, &v);
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    (t[b * n + c] + t[a * n + g.mul(b, c)]) % m == (t[a * n + b] + t[g.mul(a, b) * n + c]) % m
                })
            })
        });
        if ok {
            cocycles.push(v.clone());
        }
    }
    let mut t_coboundaries = BTreeSet::new();
    let scale = big / m;
    let count = (big as usize).pow((n - 1) as u32);
    for code in 0..count {
        let mut x = code;
        let mut phi = vec![0u64; n];
        for slot in phi.iter_mut().skip(1) {
            *slot = (x % big as usize) as u64;
            x /= big as usize;
        }
        let mut w = Vec::with_capacity(len);
        let mut fits = true;
        for a in 1..n {
            for b in 1..n {
                let d = (phi[a] + phi[b] + big - phi[g.mul(a, b)]) % big;
                if d % scale != 0 {
                    fits = false;
                }
                w.push(d / scale);
            }
        }
        if fits {
            t_coboundaries.insert(w);
        }
    }
    BruteH2 { cocycles, t_coboundaries }
}

pub fn cocycle_from_vector(g: &Arc<FiniteGroup>, m: u64, v: &[u64]) -> Cocycle {
    Cocycle::new(g.clone(), m, full_table(g.order(), v)).expect("brute-force cocycle")
}

/// `C_n / 4^n` with `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan_over_four_pow(n: usize) -> BigRational {
    let mut binom = BigInt::from(1);
    for k in 0..n {
        binom = binom * BigInt::from(2 * n - k) / BigInt::from(k + 1);
    }
    let c = binom / BigInt::from(n + 1);
    BigRational::new(c, BigInt::from(4).pow(n as u32))
}

/// Number of alternating bicharacters on an abelian group with invariant
/// factors `chain`: the product of `gcd(d_i, d_j)` over pairs `i < j`.
pub fn alternating_count(chain: &[u64]) -> u64 {
    let mut out = 1;
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            out *= num_integer::gcd(chain[i], chain[j]);
        }
    }
    out
}

/// A randomized τ-pipeline input.
pub struct TauInstance {
    pub action: Arc<KAction>,
    pub cocycle: Cocycle,
}

pub const TAU_CHAINS: &[&[u64]] = &[&[2, 2], &[3, 3], &[2, 4], &[2, 2, 2], &[4, 4], &[2, 2, 4], &[2, 2, 2, 2]];

/// Random `K ≤ Aut(A)` generated by one or two automorphisms, a random
/// `K`-invariant form, and a random coboundary added to its cocycle.
pub fn random_tau_instance(rng: &mut ChaCha8Rng, auts: &[(AbelianGroup, Vec<Vec<usize>>)], max_k: usize) -> Option<TauInstance> {
    let (a, list) = auts.choose(rng)?;
    let ngens = rng.gen_range(1..=2);
    let gens: Vec<Vec<usize>> = (0..ngens).map(|_| list.choose(rng).unwrap().clone()).collect();
    let action = generated_action(a, &gens, max_k).ok()?;
    let forms = k_invariant_classes(&action);
    let form = forms.choose(rng)?;
    let c = form_to_cocycle(form);
    let n = a.order();
    let mut phi: Vec<u64> = (0..n).map(|_| rng.gen_range(0..c.modulus())).collect();
    phi[0] = 0;
    let d = Cocycle::coboundary(c.group_arc().clone(), c.modulus(), &phi);
    Some(TauInstance {
        action,
        cocycle: c.add(&d).expect("same group and modulus"),
    })
}

/// Independent membership check: recomputes `b̃(g,h)(φ)` from the solver's
/// `z_g` and compares with `⟨φ, b(g,h)⟩` scaled into `Z/M`.
pub fn membership_holds(inst: &TauInstance, b: &ExtensionCocycle) -> bool {
    let act = &inst.action;
    let k = act.acting();
    let a = act.abelian();
    let n = a.order();
    let e = a.exponent();
    let zs: Vec<(u64, Vec<u64>)> = (0..k.order()).map(|g| solve_z(act, &inst.cocycle, g).expect("invariant class")).collect();
    let big = zs[0].0;
    let z = |g: usize, phi: usize| -> u64 { zs[g].1[phi] % big };
    (0..k.order()).all(|g| {
        (0..k.order()).all(|h| {
            let gi = k.inv(g);
            (0..n).all(|phi| {
                let lhs = (z(g, phi) + z(h, act.apply_dual(gi, phi)) + big - z(k.mul(g, h), phi)) % big;
                let rhs = a.pairing(phi, b.value(g, h)) * (big / e) % big;
                lhs == rhs
            })
        })
    })
}

/// `g.b(h,k) + b(g,hk) = b(g,h) + b(gh,k)`, checked directly.
pub fn k_cocycle_identity(b: &ExtensionCocycle) -> bool {
    let act = b.action();
    let k = act.acting();
    let a = act.abelian();
    let n = k.order();
    (0..n).all(|g| {
        (0..n).all(|h| {
            (0..n).all(|l| {
                let lhs = a.add(act.apply(g, b.value(h, l)), b.value(g, k.mul(h, l)));
                let rhs = a.add(b.value(g, h), b.value(k.mul(g, h), l));
                lhs == rhs
            })
        })
    })
}

/// Associativity of the extension product, on all triples for small groups
/// and on `samples` random triples otherwise.
pub fn extension_associative(b: &ExtensionCocycle, rng: &mut ChaCha8Rng, samples: usize) -> bool {
    let act = b.action();
    let k = act.acting();
    let a = act.abelian();
    let na = a.order();
    let n = na * k.order();
    let mul = |x: usize, y: usize| -> usize {
        let (a1, g1) = (x % na, x / na);
        let (a2, g2) = (y % na, y / na);
        let s = a.add(a.add(a1, act.apply(g1, a2)), b.value(g1, g2));
        s + na * k.mul(g1, g2)
    };
    let check = |x, y, z| mul(mul(x, y), z) == mul(x, mul(y, z));
    if n <= 48 {
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| check(x, y, z))))
    } else {
        (0..samples).all(|_| check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
    }
}
