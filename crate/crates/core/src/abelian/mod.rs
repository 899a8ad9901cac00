//! Finite abelian groups, their duals and alternating forms, group actions
//! on them, and the extension pipeline built from invariant dual classes.

mod action;
mod forms;
mod pairs;
mod tau;

pub(crate) use action::dual_image;
pub use action::{parse_action, write_action, ActionFile, ExtensionCocycle, KAction};
pub use forms::{
    alternating_classes, antisymmetrization, form_to_cocycle, h2_fg_abelian, k_invariant_classes,
    radical_and_b, AlternatingForm, FgAbelianH2,
};
pub use pairs::{
    generated_action, monoidal_pair, search_monoidal_pairs, Certificate, MonoidalPair, SearchConfig, SearchOutcome,
};
pub use tau::{is_k_coboundary, k_coboundary_witness, solve_z, solve_z_with, tau, tau_with, PivotRule};

use crate::error::{Error, Result};
use crate::group::{are_isomorphic, FiniteGroup, GroupSpec, Subgroup};

/// `Z/d_1 ⊕ ... ⊕ Z/d_r` with `d_1 | d_2 | ... | d_r`, each at least 2.
///
/// Element index is mixed radix with the first coordinate fastest, which
/// matches the element order of the corresponding direct product of cyclic
/// groups built by [`crate::group::build_group`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// All invariant-factor chains of abelian groups of order `n`, in
/// lexicographic order of the chain. The trivial group is the empty chain.
pub fn invariant_chains(n: u64) -> Vec<Vec<u64>> {
    fn rec(rest: u64, min: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        // the next factor d must be a multiple of the previous one and the
        // remaining cofactor must be a product of multiples of d
        let mut d = min.max(2);
        while d <= rest {
            if rest % d == 0 && d % prefix.last().copied().unwrap_or(1) == 0 {
                let co = rest / d;
                if co == 1 || co % d == 0 {
                    prefix.push(d);
                    rec(co, d, prefix, out);
                    prefix.pop();
                }
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    rec(n, 2, &mut Vec::new(), &mut out);
    out
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidSpec("invariant factors must be at least 2".into()));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidSpec(format!("{factors:?} is not a divisibility chain")));
        }
        Ok(AbelianGroup { factors })
    }

    /// Normalizes arbitrary cyclic orders to invariant-factor form.
    pub fn from_orders(orders: &[u64]) -> Self {
        AbelianGroup {
            factors: crate::zmod::invariant_factors(orders),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn coords(&self, mut x: usize) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&d| {
                let c = x as u64 % d;
                x /= d as usize;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        let mut idx = 0usize;
        for (c, &d) in coords.iter().zip(&self.factors).rev() {
            idx = idx * d as usize + (c % d) as usize;
        }
        idx
    }

    /// Index of the i-th standard generator.
    pub fn basis(&self, i: usize) -> usize {
        self.factors[..i].iter().product::<u64>() as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        self.index(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let x = self.coords(a);
        let s: Vec<u64> = x.iter().zip(&self.factors).map(|(p, d)| (d - p) % d).collect();
        self.index(&s)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, k: u64, a: usize) -> usize {
        let s: Vec<u64> = self.coords(a).iter().map(|p| p * k).collect();
        self.index(&s)
    }

    /// The perfect pairing `⟨χ, a⟩ = Σ χ_i a_i (e / d_i)` into Z/e, e the
    /// exponent. The dual group is identified with the same coordinates.
    pub fn pairing(&self, chi: usize, a: usize) -> u64 {
        let e = self.exponent();
        let (x, y) = (self.coords(chi), self.coords(a));
        x.iter()
            .zip(&y)
            .zip(&self.factors)
            .map(|((p, q), d)| p * q % d * (e / d))
            .sum::<u64>()
            % e
    }

    pub fn to_spec(&self) -> GroupSpec {
        let mut it = self.factors.iter().map(|&d| GroupSpec::Cyclic(d as usize));
        let first = it.next().unwrap_or(GroupSpec::Cyclic(1));
        it.fold(first, GroupSpec::product)
    }

    pub fn to_group(&self) -> FiniteGroup {
        crate::group::build_group(&self.to_spec()).expect("cyclic products build")
    }

    /// Invariant factors of an abelian subgroup, with an isomorphism from the
    /// standard model: `map[i]` is the element of `g` at standard index `i`.
    pub fn decompose(g: &FiniteGroup, h: &Subgroup) -> Result<(AbelianGroup, Vec<usize>)> {
        let hg = h.to_group(g);
        if !hg.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let orders = {
            let mut o: Vec<usize> = (0..hg.order()).map(|x| hg.element_order(x)).collect();
            o.sort_unstable();
            o
        };
        for chain in invariant_chains(hg.order() as u64) {
            let a = AbelianGroup { factors: chain };
            let model = a.to_group();
            let mut mo: Vec<usize> = (0..model.order()).map(|x| model.element_order(x)).collect();
            mo.sort_unstable();
            if mo != orders {
                continue;
            }
            let phi = are_isomorphic(&model, &hg)
                .ok_or_else(|| Error::Consistency("abelian groups with equal order statistics".into()))?;
            let map = phi.iter().map(|&x| h.elements()[x]).collect();
            return Ok((a, map));
        }
        Err(Error::Consistency("no invariant-factor chain matches".into()))
    }

    /// Every automorphism, as image tables, in lexicographic order.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let r = self.rank();
        let orders: Vec<u64> = (0..n)
            .map(|x| {
                self.coords(x)
                    .iter()
                    .zip(&self.factors)
                    .map(|(&c, &d)| d / crate::zmod::gcd(c, d))
                    .fold(1, crate::zmod::lcm)
            })
            .collect();
        let cands: Vec<Vec<usize>> = self
            .factors
            .iter()
            .map(|&d| (0..n).filter(|&x| d % orders[x] == 0).collect())
            .collect();
        let mut out = Vec::new();
        let mut images = vec![0usize; r];
        fn rec(a: &AbelianGroup, cands: &[Vec<usize>], i: usize, images: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == cands.len() {
                let n = a.order();
                let mut table = vec![0usize; n];
                let mut seen = vec![false; n];
                for (x, slot) in table.iter_mut().enumerate() {
                    let mut acc = 0;
                    for (j, &c) in a.coords(x).iter().enumerate() {
                        acc = a.add(acc, a.scale(c, images[j]));
                    }
                    if std::mem::replace(&mut seen[acc], true) {
                        return;
                    }
                    *slot = acc;
                }
                out.push(table);
                return;
            }
            for &c in &cands[i] {
                images[i] = c;
                rec(a, cands, i + 1, images, out);
            }
        }
        rec(self, &cands, 0, &mut images, &mut out);
        out.sort();
        out
    }
}
