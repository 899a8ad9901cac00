use super::cyclotomic::{rational, CyclotomicField, CyclotomicNumber};
use super::linalg::EchelonBasis;
use super::tensor::GroupAlgebraTensor;
use crate::abelian::AbelianGroup;
use crate::cohomology::Cocycle;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::zmod::lcm;
use std::sync::Arc;

/// `F = Σ_{χ,ψ} ζ^{c(χ,ψ)} e_χ ⊗ e_ψ` for a cocycle `c` on the dual of the
/// abelian subgroup `sub`, with `e_χ = |A|⁻¹ Σ_a ⟨χ, a⁻¹⟩ a`.
///
/// The dual of `A` is indexed like the standard model of `A` returned by
/// [`AbelianGroup::decompose`], so `c` must live on that model.
pub fn embed_dual_cocycle(group: &Arc<FiniteGroup>, sub: &Subgroup, c: &Cocycle) -> Result<GroupAlgebraTensor> {
    let (a, map) = AbelianGroup::decompose(group, sub)?;
    if c.group().table() != a.to_group().table() {
        return Err(Error::Dimension(format!(
            "cocycle is not on the dual of the subgroup with invariants {:?}",
            a.factors()
        )));
    }
    let c = c.minimal_modulus();
    let m = c.modulus();
    let e = a.exponent();
    let l = lcm(m, e);
    let field = CyclotomicField::new(l);
    let n = a.order();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let scale = rational(1, (n * n) as i64);
    let coeffs = crate::par::map(&pairs, |&(x, y)| {
        let mut counts = vec![0i64; l as usize];
        for chi in 0..n {
            let px = a.pairing(chi, x) * (l / e);
            for psi in 0..n {
                let py = a.pairing(psi, y) * (l / e);
                let v = (c.value(chi, psi) * (l / m) + 2 * l - px - py) % l;
                counts[v as usize] += 1;
            }
        }
        CyclotomicNumber::from_exponent_counts(&field, &counts).scale(&scale)
    });
    let mut f = GroupAlgebraTensor::zero(group.clone(), field.clone(), 2);
    for (&(x, y), v) in pairs.iter().zip(coeffs) {
        if !v.is_zero() {
            let t = GroupAlgebraTensor::basis(group.clone(), field.clone(), &[map[x], map[y]], v);
            f = f.add(&t)?;
        }
    }
    if !f.is_unitary() {
        return Err(Error::NotUnitary("embedded dual cocycle".into()));
    }
    Ok(f)
}

/// `(F ⊗ 1)(Δ ⊗ ι)(F) = (1 ⊗ F)(ι ⊗ Δ)(F)`, compared coefficientwise.
pub fn check_dual_cocycle(f: &GroupAlgebraTensor) -> bool {
    if f.degree() != 2 {
        return false;
    }
    let lhs = f.extend_right().mul(&f.coproduct_left());
    let rhs = f.extend_left().mul(&f.coproduct_right());
    matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
}

/// `R = F_21 F^*`.
pub fn r_matrix(f: &GroupAlgebraTensor) -> Result<GroupAlgebraTensor> {
    if f.degree() != 2 {
        return Err(Error::Dimension("R-matrix needs a degree-2 tensor".into()));
    }
    if !f.is_unitary() {
        return Err(Error::NotUnitary("dual cocycle".into()));
    }
    f.flip().mul(&f.star())
}

#[derive(Debug, Clone)]
pub struct SliceSpan {
    pub rank: usize,
    /// Reduced row echelon basis of the slices `(ω ⊗ ι)(R)`.
    pub basis: Vec<Vec<CyclotomicNumber>>,
    /// Subgroup generated by the supports of the basis vectors.
    pub support: Subgroup,
    /// The slices `(ι ⊗ ω)(R)` span the same subspace.
    pub left_equals_right: bool,
}

/// Span of the one-legged slices of a degree-2 tensor, by exact elimination.
pub fn slice_span(r: &GroupAlgebraTensor) -> Result<SliceSpan> {
    if r.degree() != 2 {
        return Err(Error::Dimension("slices need a degree-2 tensor".into()));
    }
    let group = r.group();
    let n = group.order();
    let m = r.coefficient_matrix();
    let mut rows = EchelonBasis::new(n);
    for row in &m {
        if row.iter().any(|x| !x.is_zero()) {
            rows.insert(row);
        }
    }
    let mut cols = EchelonBasis::new(n);
    for j in 0..n {
        let col: Vec<CyclotomicNumber> = (0..n).map(|i| m[i][j].clone()).collect();
        if col.iter().any(|x| !x.is_zero()) {
            cols.insert(&col);
        }
    }
    let left_equals_right =
        rows.rank() == cols.rank() && cols.rows().iter().all(|c| rows.contains(c));
    let mut gens: Vec<usize> = Vec::new();
    for row in rows.rows() {
        gens.extend((0..n).filter(|&h| !row[h].is_zero()));
    }
    gens.sort_unstable();
    gens.dedup();
    Ok(SliceSpan {
        rank: rows.rank(),
        basis: rows.rows().to_vec(),
        support: Subgroup::generated(group, &gens),
        left_equals_right,
    })
}

/// Whether `F^* F_21` commutes with every `g ⊗ g`.
pub fn is_cocommutative_twist(f: &GroupAlgebraTensor) -> bool {
    if f.degree() != 2 {
        return false;
    }
    let Ok(x) = f.star().mul(&f.flip()) else {
        return false;
    };
    let group = f.group();
    let one = CyclotomicNumber::one(f.field());
    (0..group.order()).all(|g| {
        let gg = GroupAlgebraTensor::basis(group.clone(), f.field().clone(), &[g, g], one.clone());
        matches!((gg.mul(&x), x.mul(&gg)), (Ok(a), Ok(b)) if a == b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{alternating_classes, form_to_cocycle};
    use crate::group::catalog;

    fn v4_form_cocycle() -> Cocycle {
        let a = AbelianGroup::new(vec![2, 2]).unwrap();
        form_to_cocycle(&alternating_classes(&a)[1])
    }

    #[test]
    fn trivial_embedding_is_identity() {
        let g = Arc::new(catalog::lookup("s3").unwrap());
        let c = Cocycle::zero(Arc::new(FiniteGroup::trivial()), 1);
        let f = embed_dual_cocycle(&g, &Subgroup::trivial(), &c).unwrap();
        assert!(f.is_identity());
        assert!(check_dual_cocycle(&f));
        assert!(r_matrix(&f).unwrap().is_identity());
        let s = slice_span(&f).unwrap();
        assert_eq!(s.rank, 1);
        assert_eq!(s.support.elements(), &[0]);
        assert!(is_cocommutative_twist(&f));
    }

    #[test]
    fn v4_nondegenerate() {
        let g = Arc::new(catalog::lookup("c2xc2").unwrap());
        let f = embed_dual_cocycle(&g, &Subgroup::whole(&g), &v4_form_cocycle()).unwrap();
        // F is supported on {e, a} x {e, b} for the two generators
        assert_eq!(f.nnz(), 4);
        assert!(check_dual_cocycle(&f));
        let r = r_matrix(&f).unwrap();
        assert_eq!(r.flip(), r.star());
        assert!(r.flip().mul(&r).unwrap().is_identity());
        let s = slice_span(&r).unwrap();
        assert_eq!(s.rank, 4);
        assert_eq!(s.support.order(), 4);
        assert!(s.left_equals_right);
    }

    #[test]
    fn induced_into_d8() {
        let g = Arc::new(catalog::lookup("d8").unwrap());
        let v4 = Subgroup::generated(&g, &[2, 4]);
        let f = embed_dual_cocycle(&g, &v4, &v4_form_cocycle()).unwrap();
        assert!(f.terms().all(|(l, _)| v4.contains(l[0]) && v4.contains(l[1])));
        assert!(check_dual_cocycle(&f));
        let s = slice_span(&r_matrix(&f).unwrap()).unwrap();
        assert_eq!(s.rank, 4);
        assert_eq!(s.support, v4);
    }

    #[test]
    fn corruption_breaks_the_identity() {
        let g = Arc::new(catalog::lookup("c2xc2").unwrap());
        let f = embed_dual_cocycle(&g, &Subgroup::whole(&g), &v4_form_cocycle()).unwrap();
        let k = f.field().clone();
        let bump = GroupAlgebraTensor::basis(g.clone(), k.clone(), &[1, 2], CyclotomicNumber::from_rational(&k, rational(1, 3)));
        assert!(!check_dual_cocycle(&f.add(&bump).unwrap()));
    }

    #[test]
    fn symmetric_twist_has_trivial_r() {
        // a coboundary on the dual is symmetric
        let a = AbelianGroup::new(vec![4]).unwrap();
        let dual = Arc::new(a.to_group());
        let c = Cocycle::coboundary(dual, 4, &[0, 1, 3, 2]);
        let g = Arc::new(catalog::lookup("c4").unwrap());
        let f = embed_dual_cocycle(&g, &Subgroup::whole(&g), &c).unwrap();
        assert_eq!(f.flip(), f);
        assert!(r_matrix(&f).unwrap().is_identity());
    }
}
