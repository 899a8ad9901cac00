use super::cyclotomic::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// An element of `CG^{⊗k}`, `k ∈ {1, 2, 3}`, with cyclotomic coefficients,
/// stored sparsely by the linear index `g_1 + n g_2 + n² g_3`.
#[derive(Clone, Debug)]
pub struct GroupAlgebraTensor {
    group: Arc<FiniteGroup>,
    field: Arc<CyclotomicField>,
    degree: usize,
    coeffs: BTreeMap<usize, CyclotomicNumber>,
}

impl PartialEq for GroupAlgebraTensor {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.degree == other.degree
            && self.field.conductor() == other.field.conductor()
            && self.coeffs == other.coeffs
    }
}

impl GroupAlgebraTensor {
    pub fn zero(group: Arc<FiniteGroup>, field: Arc<CyclotomicField>, degree: usize) -> Self {
        assert!((1..=3).contains(&degree), "tensor degree must be 1, 2 or 3");
        GroupAlgebraTensor {
            group,
            field,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// `e ⊗ ... ⊗ e`.
    pub fn identity(group: Arc<FiniteGroup>, field: Arc<CyclotomicField>, degree: usize) -> Self {
        let mut t = Self::zero(group, field, degree);
        t.coeffs.insert(0, CyclotomicNumber::one(&t.field));
        t
    }

    /// `coeff · g_1 ⊗ ... ⊗ g_k`.
    pub fn basis(
        group: Arc<FiniteGroup>,
        field: Arc<CyclotomicField>,
        legs: &[usize],
        coeff: CyclotomicNumber,
    ) -> Self {
        let mut t = Self::zero(group, field, legs.len());
        let idx = t.index(legs);
        t.set(idx, coeff);
        t
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of nonzero coefficients.
    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn index(&self, legs: &[usize]) -> usize {
        let n = self.group.order();
        legs.iter().rev().fold(0, |acc, &g| acc * n + g)
    }

    fn legs(&self, mut idx: usize) -> [usize; 3] {
        let n = self.group.order();
        let mut out = [0; 3];
        for slot in out.iter_mut().take(self.degree) {
            *slot = idx % n;
            idx /= n;
        }
        out
    }

    fn set(&mut self, idx: usize, v: CyclotomicNumber) {
        if v.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, v);
        }
    }

    fn accumulate(&mut self, idx: usize, v: &CyclotomicNumber) {
        let cur = match self.coeffs.remove(&idx) {
            Some(c) => &c + v,
            None => v.clone(),
        };
        self.set(idx, cur);
    }

    pub fn coefficient(&self, legs: &[usize]) -> CyclotomicNumber {
        assert_eq!(legs.len(), self.degree);
        self.coeffs
            .get(&self.index(legs))
            .cloned()
            .unwrap_or_else(|| CyclotomicNumber::zero(&self.field))
    }

    /// Nonzero terms as `(legs, coefficient)` in index order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &CyclotomicNumber)> + '_ {
        self.coeffs
            .iter()
            .map(move |(&i, c)| (self.legs(i)[..self.degree].to_vec(), c))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::Dimension("tensors over different groups".into()));
        }
        if self.degree != other.degree {
            return Err(Error::Dimension(format!(
                "tensor degrees {} and {}",
                self.degree, other.degree
            )));
        }
        if self.field.conductor() != other.field.conductor() {
            return Err(Error::ModulusMismatch(self.field.conductor(), other.field.conductor()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.accumulate(i, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.accumulate(i, &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self::zero(self.group.clone(), self.field.clone(), self.degree);
        for (&i, c) in &self.coeffs {
            out.set(i, c.scale(q));
        }
        out
    }

    /// Legwise convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let g = &self.group;
        let mut out = Self::zero(g.clone(), self.field.clone(), self.degree);
        for (&i, a) in &self.coeffs {
            let li = self.legs(i);
            for (&j, b) in &other.coeffs {
                let lj = self.legs(j);
                let mut prod = [0; 3];
                for t in 0..self.degree {
                    prod[t] = g.mul(li[t], lj[t]);
                }
                let idx = self.index(&prod[..self.degree]);
                out.accumulate(idx, &(a * b));
            }
        }
        Ok(out)
    }

    /// Conjugate-linear involution: `(c g)^* = conj(c) g⁻¹` on every leg.
    pub fn star(&self) -> Self {
        let g = &self.group;
        let mut out = Self::zero(g.clone(), self.field.clone(), self.degree);
        for (&i, c) in &self.coeffs {
            let l = self.legs(i);
            let mut inv = [0; 3];
            for t in 0..self.degree {
                inv[t] = g.inv(l[t]);
            }
            let idx = self.index(&inv[..self.degree]);
            out.set(idx, c.conj());
        }
        out
    }

    fn remap(&self, degree: usize, f: impl Fn([usize; 3]) -> Vec<usize>) -> Self {
        let mut out = Self::zero(self.group.clone(), self.field.clone(), degree);
        for (&i, c) in &self.coeffs {
            let idx = out.index(&f(self.legs(i)));
            out.accumulate(idx, c);
        }
        out
    }

    /// `F_21` for a degree-2 tensor.
    pub fn flip(&self) -> Self {
        assert_eq!(self.degree, 2);
        self.remap(2, |l| vec![l[1], l[0]])
    }

    /// `(Δ ⊗ ι)`: `g ⊗ h ↦ g ⊗ g ⊗ h`.
    pub fn coproduct_left(&self) -> Self {
        assert_eq!(self.degree, 2);
        self.remap(3, |l| vec![l[0], l[0], l[1]])
    }

    /// `(ι ⊗ Δ)`: `g ⊗ h ↦ g ⊗ h ⊗ h`.
    pub fn coproduct_right(&self) -> Self {
        assert_eq!(self.degree, 2);
        self.remap(3, |l| vec![l[0], l[1], l[1]])
    }

    /// `Δ` on a degree-1 tensor.
    pub fn coproduct(&self) -> Self {
        assert_eq!(self.degree, 1);
        self.remap(2, |l| vec![l[0], l[0]])
    }

    /// `X ⊗ 1`.
    pub fn extend_right(&self) -> Self {
        let d = self.degree;
        assert!(d < 3);
        self.remap(d + 1, |l| {
            let mut v = l[..d].to_vec();
            v.push(0);
            v
        })
    }

    /// `1 ⊗ X`.
    pub fn extend_left(&self) -> Self {
        let d = self.degree;
        assert!(d < 3);
        self.remap(d + 1, |l| {
            let mut v = vec![0];
            v.extend_from_slice(&l[..d]);
            v
        })
    }

    /// Multiplication map `g ⊗ h ↦ gh` on a degree-2 tensor.
    pub fn multiply_legs(&self) -> Self {
        assert_eq!(self.degree, 2);
        let g = self.group.clone();
        self.remap(1, move |l| vec![g.mul(l[0], l[1])])
    }

    /// Coefficients of a degree-2 tensor as an `n × n` matrix, rows by the
    /// first leg.
    pub fn coefficient_matrix(&self) -> Vec<Vec<CyclotomicNumber>> {
        assert_eq!(self.degree, 2);
        let n = self.group.order();
        let mut m = vec![vec![CyclotomicNumber::zero(&self.field); n]; n];
        for (&i, c) in &self.coeffs {
            let l = self.legs(i);
            m[l[0]][l[1]] = c.clone();
        }
        m
    }

    /// The same tensor over a field containing the current one.
    pub fn promote(&self, field: &Arc<CyclotomicField>) -> Self {
        let mut out = Self::zero(self.group.clone(), field.clone(), self.degree);
        for (&i, c) in &self.coeffs {
            out.set(i, c.promote(field));
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(CyclotomicNumber::is_one)
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.star()).is_ok_and(|p| p.is_identity())
    }
}

impl fmt::Display for GroupAlgebraTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (&i, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let l = self.legs(i);
            let legs: Vec<String> = l[..self.degree].iter().map(usize::to_string).collect();
            write!(f, "({c})[{}]", legs.join("⊗"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclotomic::rational;
    use crate::group::catalog;

    fn setup() -> (Arc<FiniteGroup>, Arc<CyclotomicField>) {
        (Arc::new(catalog::lookup("s3").unwrap()), CyclotomicField::new(3))
    }

    #[test]
    fn products_follow_the_group() {
        let (g, k) = setup();
        let x = GroupAlgebraTensor::basis(g.clone(), k.clone(), &[1, 2], CyclotomicNumber::root(&k, 1));
        let y = GroupAlgebraTensor::basis(g.clone(), k.clone(), &[3, 4], CyclotomicNumber::root(&k, 1));
        let p = x.mul(&y).unwrap();
        assert_eq!(p.nnz(), 1);
        let c = p.coefficient(&[g.mul(1, 3), g.mul(2, 4)]);
        assert_eq!(c, CyclotomicNumber::root(&k, 2));
        let one = GroupAlgebraTensor::identity(g.clone(), k.clone(), 2);
        assert_eq!(one.mul(&x).unwrap(), x);
        assert!(x.is_unitary());
    }

    #[test]
    fn star_is_antimultiplicative() {
        let (g, k) = setup();
        let mut x = GroupAlgebraTensor::basis(g.clone(), k.clone(), &[1], CyclotomicNumber::root(&k, 1));
        x = x
            .add(&GroupAlgebraTensor::basis(g.clone(), k.clone(), &[4], CyclotomicNumber::from_rational(&k, rational(1, 2))))
            .unwrap();
        let y = GroupAlgebraTensor::basis(g.clone(), k.clone(), &[3], CyclotomicNumber::root(&k, 2))
            .add(&GroupAlgebraTensor::identity(g.clone(), k.clone(), 1))
            .unwrap();
        assert_eq!(x.mul(&y).unwrap().star(), y.star().mul(&x.star()).unwrap());
        assert_eq!(x.star().star(), x);
    }

    #[test]
    fn leg_maps() {
        let (g, k) = setup();
        let x = GroupAlgebraTensor::basis(g.clone(), k.clone(), &[1, 2], CyclotomicNumber::one(&k));
        assert_eq!(x.flip().coefficient(&[2, 1]), CyclotomicNumber::one(&k));
        assert!(!x.coproduct_left().coefficient(&[1, 1, 2]).is_zero());
        assert!(!x.coproduct_right().coefficient(&[1, 2, 2]).is_zero());
        assert!(!x.extend_right().coefficient(&[1, 2, 0]).is_zero());
        assert!(!x.extend_left().coefficient(&[0, 1, 2]).is_zero());
        assert!(!x.multiply_legs().coefficient(&[g.mul(1, 2)]).is_zero());
        let d = GroupAlgebraTensor::basis(g.clone(), k.clone(), &[5], CyclotomicNumber::one(&k)).coproduct();
        assert!(!d.coefficient(&[5, 5]).is_zero());
        assert_eq!(x.sub(&x).unwrap().nnz(), 0);
    }
}
