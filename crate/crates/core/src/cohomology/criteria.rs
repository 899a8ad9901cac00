use super::{h2_classes_with, Cocycle, H2Options};
use crate::algebra::{CyclotomicField, CyclotomicNumber, EchelonBasis};
use crate::error::{Error, Result};
use crate::group::{centralizer, FiniteGroup};
use std::sync::Arc;

/// The map `h ↦ c(g,h) - c(h,g)` on the centralizer of `g`, as
/// `(h, value)` pairs in increasing `h`. Checked to be a homomorphism.
pub fn antisym_character(c: &Cocycle, g: usize) -> Result<Vec<(usize, u64)>> {
    let grp = c.group();
    let m = c.modulus();
    let cent = centralizer(grp, g);
    let chi = |h: usize| (c.value(g, h) + m - c.value(h, g)) % m;
    for &h1 in cent.elements() {
        for &h2 in cent.elements() {
            if chi(grp.mul(h1, h2)) != (chi(h1) + chi(h2)) % m {
                return Err(Error::NotAHomomorphism { g, h1, h2 });
            }
        }
    }
    Ok(cent.elements().iter().map(|&h| (h, chi(h))).collect())
}

/// Every `g != e` has some `h` in its centralizer with `c(g,h) != c(h,g)`.
pub fn is_nondegenerate(c: &Cocycle) -> bool {
    let grp = c.group();
    (1..grp.order()).all(|g| {
        (0..grp.order()).any(|h| grp.mul(g, h) == grp.mul(h, g) && c.value(g, h) != c.value(h, g))
    })
}

/// Dimension of the center of the twisted group algebra
/// `u_g u_h = ζ^{c(g,h)} u_{gh}`, by exact elimination of the commutation
/// system `u_g a = a u_g` over the cyclotomic field.
pub fn twisted_center_dim(c: &Cocycle) -> usize {
    let c = c.minimal_modulus();
    let grp = c.group();
    let n = grp.order();
    let field = CyclotomicField::new(c.modulus());
    let zero = CyclotomicNumber::zero(&field);
    let mut basis = EchelonBasis::new(n);
    for g in 0..n {
        let gi = grp.inv(g);
        for y in 0..n {
            // coefficient of u_y in u_g a - a u_g
            let left = grp.mul(gi, y);
            let right = grp.mul(y, gi);
            let mut row = vec![zero.clone(); n];
            row[left] = &row[left] + &CyclotomicNumber::root(&field, c.value(g, left) as i64);
            row[right] = &row[right] - &CyclotomicNumber::root(&field, c.value(right, g) as i64);
            if row.iter().any(|x| !x.is_zero()) {
                basis.insert(&row);
            }
        }
    }
    n - basis.rank()
}

/// Whether `G` carries a nondegenerate class, scanning the H² transversal.
pub fn is_central_type(g: &FiniteGroup, opts: &H2Options) -> Result<bool> {
    let set = h2_classes_with(Arc::new(g.clone()), opts)?;
    let t = set.transversal().ok_or(Error::SizeBound {
        what: "H² transversal".into(),
        order: g.order(),
        bound: opts.transversal_cap,
    })?;
    Ok(crate::par::find_map_first(t, |c| is_nondegenerate(c).then_some(())).is_some())
}
