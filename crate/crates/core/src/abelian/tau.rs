use super::{ExtensionCocycle, KAction};
use crate::cohomology::Cocycle;
use crate::error::{Error, Result};
use crate::zmod::{lcm, solve_left, solve_left_ordered};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Order in which unknowns are offered to the elimination. Different rules
/// can produce different (equally valid) cochains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    #[default]
    Natural,
    Reversed,
    Shuffled(u64),
}

impl PivotRule {
    fn order(self, k: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..k).collect();
        match self {
            PivotRule::Natural => {}
            PivotRule::Reversed => v.reverse(),
            PivotRule::Shuffled(seed) => v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        }
        v
    }
}

/// Working modulus for the `z_g` system: large enough that a `T`-valued
/// trivialization of a `Z/m` cocycle on a group of order `n` and exponent
/// `e` takes values in `Z/M`.
fn working_modulus(c: &Cocycle, act: &KAction) -> u64 {
    let a = act.abelian();
    let e = a.exponent();
    lcm(a.order() as u64 * e, c.modulus() * e)
}

fn check_on_dual(act: &KAction, c: &Cocycle) -> Result<()> {
    if c.group().order() != act.abelian().order() {
        return Err(Error::Dimension("cocycle is not defined on the dual of A".into()));
    }
    Ok(())
}

/// `z_g` with `c = c^g + dz_g`, where `c^g(φ, χ) = c(g⁻¹φ, g⁻¹χ)` and
/// `dz(φ, χ) = z(φ) + z(χ) - z(φ + χ)`. Values in `Z/M`; returns `(M, z_g)`.
pub fn solve_z(act: &KAction, c: &Cocycle, g: usize) -> Result<(u64, Vec<u64>)> {
    solve_z_with(act, c, g, PivotRule::Natural)
}

pub fn solve_z_with(act: &KAction, c: &Cocycle, g: usize, rule: PivotRule) -> Result<(u64, Vec<u64>)> {
    check_on_dual(act, c)?;
    let big = working_modulus(c, act);
    let a = act.abelian();
    let n = a.order();
    if g == 0 {
        return Ok((big, vec![0; n]));
    }
    let gi = act.acting().inv(g);
    let f = big / c.modulus();
    let m = c.modulus();
    // unknowns z(φ), φ != 0; one column per pair (φ, χ) of nonzero elements
    let cols = (n - 1) * (n - 1);
    let mut rows = vec![vec![0u64; cols]; n - 1];
    let mut target = vec![0u64; cols];
    for phi in 1..n {
        for chi in 1..n {
            let col = (phi - 1) * (n - 1) + chi - 1;
            rows[phi - 1][col] = (rows[phi - 1][col] + 1) % big;
            rows[chi - 1][col] = (rows[chi - 1][col] + 1) % big;
            let s = a.add(phi, chi);
            if s != 0 {
                rows[s - 1][col] = (rows[s - 1][col] + big - 1) % big;
            }
            let cg = c.value(act.apply_dual(gi, phi), act.apply_dual(gi, chi));
            target[col] = (c.value(phi, chi) + m - cg) % m * f;
        }
    }
    let sol = if rule == PivotRule::Natural {
        solve_left(&rows, cols, &target, big)
    } else {
        solve_left_ordered(&rows, cols, &target, big, &rule.order(n - 1))
    }
    .ok_or_else(|| Error::NoSolution(format!("class is not invariant under element {g}")))?;
    let mut z = Vec::with_capacity(n);
    z.push(0);
    z.extend(sol);
    Ok((big, z))
}

/// The τ-image of an invariant class: `b(g,h) = z_g + z_h^g - z_gh`, with
/// `z^g(φ) = z(g⁻¹φ)`, converted to elements of `A` through the pairing.
pub fn tau(act: &Arc<KAction>, c: &Cocycle) -> Result<ExtensionCocycle> {
    tau_with(act, c, PivotRule::Natural)
}

pub fn tau_with(act: &Arc<KAction>, c: &Cocycle, rule: PivotRule) -> Result<ExtensionCocycle> {
    check_on_dual(act, c)?;
    let k = act.acting();
    let a = act.abelian();
    let nk = k.order();
    let n = a.order();
    let zs = crate::par::try_map_range(nk, |g| solve_z_with(act, c, g, rule))?;
    let big = zs[0].0;
    let e = a.exponent();
    let mut table = vec![0usize; nk * nk];
    for g in 0..nk {
        let gi = k.inv(g);
        for h in 0..nk {
            let gh = k.mul(g, h);
            let b: Vec<u64> = (0..n)
                .map(|phi| (zs[g].1[phi] + zs[h].1[act.apply_dual(gi, phi)] + big - zs[gh].1[phi]) % big)
                .collect();
            table[g * nk + h] = character_to_element(act, &b, big, e).map_err(|msg| {
                Error::Membership(format!("b({g}, {h}) is not in A: {msg}"))
            })?;
        }
    }
    let b = ExtensionCocycle::new_unchecked(act.clone(), table);
    b.validate()?;
    Ok(b)
}

/// The element `a` with `ψ(φ) = (M/e)·⟨φ, a⟩` for every `φ`, if any.
fn character_to_element(act: &KAction, psi: &[u64], big: u64, e: u64) -> std::result::Result<usize, String> {
    let a = act.abelian();
    let mut coords = Vec::with_capacity(a.rank());
    for (i, &d) in a.factors().iter().enumerate() {
        let v = psi[a.basis(i)];
        let unit = big / d;
        if v % unit != 0 {
            return Err(format!("value {v} at generator {i} is not a multiple of {unit}"));
        }
        coords.push(v / unit);
    }
    let x = a.index(&coords);
    let scale = big / e;
    for (phi, &v) in psi.iter().enumerate() {
        if a.pairing(phi, x) * scale % big != v {
            return Err(format!("not a homomorphism at {phi}"));
        }
    }
    Ok(x)
}

/// Whether `b = df` for some `f: K → A` with `f(e) = 0`, by a linear solve
/// over `Z/e` after embedding `A` in `(Z/e)^r` via `a_i ↦ (e/d_i) a_i`.
pub fn is_k_coboundary(b: &ExtensionCocycle) -> bool {
    k_coboundary_witness(b).is_some()
}

/// A 1-cochain `f` with `df = b`, if one exists.
pub fn k_coboundary_witness(b: &ExtensionCocycle) -> Option<Vec<usize>> {
    let act = b.action();
    let k = act.acting();
    let a = act.abelian();
    let nk = k.order();
    let f = a.factors();
    let r = f.len();
    let e = a.exponent();
    if nk == 1 || r == 0 {
        return Some(vec![0; nk]);
    }
    // matrix of each g on coordinates: column j is g.(basis j)
    let mats: Vec<Vec<Vec<u64>>> = (0..nk)
        .map(|g| (0..r).map(|j| a.coords(act.apply(g, a.basis(j)))).collect())
        .collect();
    let var = |g: usize, j: usize| (g - 1) * r + j;
    let nvars = (nk - 1) * r;
    let cols = nk * nk * r;
    let mut rows = vec![vec![0u64; cols]; nvars];
    let mut target = vec![0u64; cols];
    for g in 0..nk {
        for h in 0..nk {
            let gh = k.mul(g, h);
            let bv = a.coords(b.value(g, h));
            for i in 0..r {
                let col = (g * nk + h) * r + i;
                let s = e / f[i];
                target[col] = bv[i] * s % e;
                if g != 0 {
                    let v = &mut rows[var(g, i)][col];
                    *v = (*v + s) % e;
                }
                if h != 0 {
                    for j in 0..r {
                        let v = &mut rows[var(h, j)][col];
                        *v = (*v + mats[g][j][i] * s) % e;
                    }
                }
                if gh != 0 {
                    let v = &mut rows[var(gh, i)][col];
                    *v = (*v + e - s) % e;
                }
            }
        }
    }
    let sol = solve_left(&rows, cols, &target, e)?;
    let mut out = vec![0usize; nk];
    for (g, slot) in out.iter_mut().enumerate().skip(1) {
        let coords: Vec<u64> = (0..r).map(|j| sol[var(g, j)] % f[j]).collect();
        *slot = a.index(&coords);
    }
    Some(out)
}
