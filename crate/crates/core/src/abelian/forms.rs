use super::{AbelianGroup, KAction};
use crate::cohomology::Cocycle;
use crate::error::{Error, Result};
use crate::zmod::{gcd, invariant_factors};
use std::sync::Arc;

/// An alternating bicharacter on the dual `Â`, stored by its values on pairs
/// of standard generators: `entry(i, j)` lies in `Z/gcd(d_i, d_j)` and stands
/// for the root of unity `exp(2πi entry / gcd(d_i, d_j))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlternatingForm {
    group: AbelianGroup,
    upper: Vec<u64>,
}

fn upper_index(r: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    i * r - i * (i + 1) / 2 + (j - i - 1)
}

impl AlternatingForm {
    /// `upper` lists `B_ij` for `i < j` row by row.
    pub fn new(group: AbelianGroup, upper: Vec<u64>) -> Result<Self> {
        let r = group.rank();
        if upper.len() != r * r.saturating_sub(1) / 2 {
            return Err(Error::Dimension(format!(
                "{} entries for a form of rank {r}",
                upper.len()
            )));
        }
        let f = group.factors().to_vec();
        let mut k = 0;
        let mut upper = upper;
        for i in 0..r {
            for j in i + 1..r {
                upper[k] %= gcd(f[i], f[j]);
                k += 1;
            }
        }
        Ok(AlternatingForm { group, upper })
    }

    pub fn zero(group: AbelianGroup) -> Self {
        let r = group.rank();
        AlternatingForm {
            group,
            upper: vec![0; r * r.saturating_sub(1) / 2],
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn upper(&self) -> &[u64] {
        &self.upper
    }

    /// `B_ij` as an element of `Z/gcd(d_i, d_j)`, antisymmetric in `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        let f = self.group.factors();
        let r = f.len();
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Less => self.upper[upper_index(r, i, j)],
            std::cmp::Ordering::Greater => {
                let g = gcd(f[i], f[j]);
                (g - self.upper[upper_index(r, j, i)]) % g
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(|&x| x == 0)
    }

    /// Value on `(χ, ψ)` in `Z/n`, `n = |A|`.
    pub fn value(&self, chi: usize, psi: usize) -> u64 {
        let n = self.group.order() as u64;
        let f = self.group.factors();
        let (x, y) = (self.group.coords(chi), self.group.coords(psi));
        let r = f.len();
        let mut s = 0u64;
        for i in 0..r {
            for j in i + 1..r {
                let b = self.upper[upper_index(r, i, j)];
                if b == 0 {
                    continue;
                }
                let g = gcd(f[i], f[j]);
                let t = (x[i] * y[j] + n * g - (x[j] * y[i]) % (n * g)) % g;
                s = (s + b * t % g * (n / g)) % n;
            }
        }
        s
    }

    /// `{χ : form(χ, ·) = 0}` in increasing index order.
    pub fn radical(&self) -> Vec<usize> {
        let n = self.group.order();
        let r = self.group.rank();
        (0..n)
            .filter(|&chi| (0..r).all(|j| self.value(chi, self.group.basis(j)) == 0))
            .collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().len() == 1
    }

    /// The transformed form `(χ, ψ) ↦ form(σχ, σψ)` for an automorphism
    /// `σ` of the dual, given as an image table.
    pub fn pullback(&self, sigma: &[usize]) -> AlternatingForm {
        let f = self.group.factors();
        let r = f.len();
        let n = self.group.order() as u64;
        let mut upper = Vec::with_capacity(self.upper.len());
        for i in 0..r {
            for j in i + 1..r {
                let v = self.value(sigma[self.group.basis(i)], sigma[self.group.basis(j)]);
                let g = gcd(f[i], f[j]);
                upper.push(v / (n / g));
            }
        }
        AlternatingForm {
            group: self.group.clone(),
            upper,
        }
    }

    /// Whether `form(g⁻¹χ, g⁻¹ψ) = form(χ, ψ)` for every `g` in `K`.
    pub fn is_invariant(&self, act: &KAction) -> bool {
        let r = self.group.rank();
        let k = act.acting();
        (0..k.order()).all(|g| {
            let gi = k.inv(g);
            (0..r).all(|i| {
                (i + 1..r).all(|j| {
                    let (x, y) = (self.group.basis(i), self.group.basis(j));
                    self.value(act.apply_dual(gi, x), act.apply_dual(gi, y)) == self.value(x, y)
                })
            })
        })
    }
}

/// Every alternating form on the dual of `a`, in lexicographic order of the
/// upper-triangular entries (zero form first).
pub fn alternating_classes(a: &AbelianGroup) -> Vec<AlternatingForm> {
    let f = a.factors();
    let r = f.len();
    let mut bounds = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            bounds.push(gcd(f[i], f[j]));
        }
    }
    let total: u64 = bounds.iter().product();
    (0..total)
        .map(|mut idx| {
            let mut upper = vec![0; bounds.len()];
            for (slot, &b) in upper.iter_mut().zip(&bounds).rev() {
                *slot = idx % b;
                idx /= b;
            }
            AlternatingForm {
                group: a.clone(),
                upper,
            }
        })
        .collect()
}

/// The bilinear representative `c(x, y) = Σ_{i<j} B_ij x_i y_j (n / g_ij)`
/// in `Z/n`, `n = |A|`, on the dual group (same indexing as `A`).
pub fn form_to_cocycle(form: &AlternatingForm) -> Cocycle {
    let a = form.group();
    let n = a.order();
    let m = n as u64;
    let f = a.factors();
    let r = f.len();
    let coords: Vec<Vec<u64>> = (0..n).map(|x| a.coords(x)).collect();
    let mut table = vec![0u64; n * n];
    for x in 0..n {
        for y in 0..n {
            let mut s = 0u64;
            for i in 0..r {
                for j in i + 1..r {
                    let b = form.upper[upper_index(r, i, j)];
                    if b != 0 {
                        let g = gcd(f[i], f[j]);
                        s = (s + b * (coords[x][i] * coords[y][j] % g) % g * (m / g)) % m;
                    }
                }
            }
            table[x * n + y] = s;
        }
    }
    Cocycle::new_unchecked(Arc::new(a.to_group()), m, table)
}

/// The form `c(χ_i, χ_j) - c(χ_j, χ_i)` of a cocycle on the dual of `a`.
pub fn antisymmetrization(c: &Cocycle, a: &AbelianGroup) -> Result<AlternatingForm> {
    if c.group().order() != a.order() {
        return Err(Error::Dimension("cocycle is not on the dual of A".into()));
    }
    let m = c.modulus();
    let f = a.factors();
    let r = f.len();
    let mut upper = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let (x, y) = (a.basis(i), a.basis(j));
            let v = (c.value(x, y) + m - c.value(y, x)) % m;
            let g = gcd(f[i], f[j]);
            // v/m must be a fraction with denominator dividing g
            if (v as u128 * g as u128) % m as u128 != 0 {
                return Err(Error::Consistency(format!(
                    "commutator value {v}/{m} on generators ({i}, {j}) has order not dividing {g}"
                )));
            }
            upper.push(((v as u128 * g as u128) / m as u128) as u64 % g);
        }
    }
    Ok(AlternatingForm {
        group: a.clone(),
        upper,
    })
}

/// The radical of the form inside `Â` and its annihilator `B ⊂ A`, both as
/// sorted element lists.
pub fn radical_and_b(form: &AlternatingForm) -> (Vec<usize>, Vec<usize>) {
    let a = form.group();
    let rad = form.radical();
    let b = (0..a.order())
        .filter(|&x| rad.iter().all(|&chi| a.pairing(chi, x) == 0))
        .collect();
    (rad, b)
}

/// Forms fixed by the dual `K`-action.
pub fn k_invariant_classes(act: &KAction) -> Vec<AlternatingForm> {
    alternating_classes(act.abelian())
        .into_iter()
        .filter(|f| f.is_invariant(act))
        .collect()
}

/// `Hom(∧²Γ, T)` for `Γ = Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgAbelianH2 {
    pub torus_rank: usize,
    pub finite: Vec<u64>,
}

impl FgAbelianH2 {
    pub fn is_trivial(&self) -> bool {
        self.torus_rank == 0 && self.finite.is_empty()
    }

    /// Order of the finite part.
    pub fn finite_order(&self) -> u64 {
        self.finite.iter().product()
    }
}

pub fn h2_fg_abelian(free_rank: usize, torsion: &[u64]) -> Result<FgAbelianH2> {
    let t: Vec<u64> = torsion.iter().copied().filter(|&d| d != 1).collect();
    if t.contains(&0) {
        return Err(Error::InvalidSpec("torsion factors must be positive".into()));
    }
    let mut orders = Vec::new();
    for &d in &t {
        orders.extend(std::iter::repeat(d).take(free_rank));
    }
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            orders.push(gcd(t[i], t[j]));
        }
    }
    Ok(FgAbelianH2 {
        torus_rank: free_rank * free_rank.saturating_sub(1) / 2,
        finite: invariant_factors(&orders),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{is_nondegenerate, Cocycle};

    fn grp(f: &[u64]) -> AbelianGroup {
        AbelianGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn form_counts() {
        assert_eq!(alternating_classes(&grp(&[6])).len(), 1);
        assert_eq!(alternating_classes(&grp(&[2, 2])).len(), 2);
        assert_eq!(alternating_classes(&grp(&[2, 4])).len(), 2);
        assert_eq!(alternating_classes(&grp(&[2, 2, 2])).len(), 8);
        assert_eq!(alternating_classes(&grp(&[3, 3])).len(), 3);
        assert_eq!(alternating_classes(&grp(&[2, 2, 4])).len(), 8);
    }

    #[test]
    fn cocycle_round_trip_and_nondegeneracy() {
        for f in [vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2], vec![4, 4], vec![2, 2, 4]] {
            let a = grp(&f);
            for form in alternating_classes(&a) {
                let c = form_to_cocycle(&form);
                c.validate().unwrap();
                assert_eq!(antisymmetrization(&c, &a).unwrap(), form);
                assert_eq!(form.is_nondegenerate(), is_nondegenerate(&c));
            }
        }
    }

    #[test]
    fn value_is_alternating_bicharacter() {
        let a = grp(&[2, 4]);
        let form = &alternating_classes(&a)[1];
        let n = a.order() as u64;
        for x in 0..8 {
            assert_eq!(form.value(x, x), 0);
            for y in 0..8 {
                assert_eq!((form.value(x, y) + form.value(y, x)) % n, 0);
                for z in 0..8 {
                    assert_eq!(form.value(a.add(x, y), z), (form.value(x, z) + form.value(y, z)) % n);
                }
            }
        }
    }

    #[test]
    fn radicals() {
        let a = grp(&[2, 2]);
        let (rad, b) = radical_and_b(&AlternatingForm::zero(a.clone()));
        assert_eq!(rad, vec![0, 1, 2, 3]);
        assert_eq!(b, vec![0]);
        let (rad, b) = radical_and_b(&alternating_classes(&a)[1]);
        assert_eq!(rad, vec![0]);
        assert_eq!(b, vec![0, 1, 2, 3]);
        // block form on the first two coordinates of C2^4
        let a4 = grp(&[2, 2, 2, 2]);
        let form = AlternatingForm::new(a4.clone(), vec![1, 0, 0, 0, 0, 0]).unwrap();
        let (rad, b) = radical_and_b(&form);
        assert_eq!(rad.len(), 4);
        assert_eq!(b, vec![0, 1, 2, 3]);
    }

    #[test]
    fn invariant_forms() {
        let k2 = Arc::new(crate::group::catalog::lookup("c2").unwrap());
        let a = grp(&[2, 2]);
        let swap = KAction::new(k2.clone(), a.clone(), vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]).unwrap();
        assert_eq!(k_invariant_classes(&swap).len(), 2);
        let triv = KAction::trivial(k2, grp(&[2, 2, 2]));
        assert_eq!(k_invariant_classes(&triv).len(), 8);
    }

    #[test]
    fn cyclic_permutation_of_c2_cubed() {
        let a = grp(&[2, 2, 2]);
        let k3 = Arc::new(crate::group::catalog::lookup("c3").unwrap());
        let rot = |x: usize| {
            let c = a.coords(x);
            a.index(&[c[2], c[0], c[1]])
        };
        let t1: Vec<usize> = (0..8).map(rot).collect();
        let t2: Vec<usize> = (0..8).map(|x| rot(rot(x))).collect();
        let act = KAction::new(k3, a.clone(), vec![(0..8).collect(), t1, t2]).unwrap();
        let inv = k_invariant_classes(&act);
        // oracle: apply the rotation to every form directly
        let oracle: Vec<AlternatingForm> = alternating_classes(&a)
            .into_iter()
            .filter(|f| (0..8).all(|x| (0..8).all(|y| f.value(rot(x), rot(y)) == f.value(x, y))))
            .collect();
        assert_eq!(inv, oracle);
        assert_eq!(inv.len(), 2);
        assert!(inv[0].is_zero());
        assert_eq!(inv[1].upper(), &[1, 1, 1]);
    }

    #[test]
    fn fg_abelian() {
        assert!(h2_fg_abelian(0, &[7]).unwrap().is_trivial());
        assert_eq!(h2_fg_abelian(0, &[2, 2]).unwrap().finite, vec![2]);
        let z2 = h2_fg_abelian(2, &[]).unwrap();
        assert_eq!((z2.torus_rank, z2.finite.is_empty()), (1, true));
        assert_eq!(h2_fg_abelian(1, &[2, 4]).unwrap().finite, vec![2, 2, 4]);
        for f in [vec![2, 2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 4]] {
            let n = alternating_classes(&grp(&f)).len() as u64;
            assert_eq!(h2_fg_abelian(0, &f).unwrap().finite_order(), n);
        }
    }

    #[test]
    fn zero_cocycle_has_zero_form() {
        let a = grp(&[3, 3]);
        let c = Cocycle::zero(Arc::new(a.to_group()), 9);
        assert!(antisymmetrization(&c, &a).unwrap().is_zero());
    }
}
