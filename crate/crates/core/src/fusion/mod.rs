//! Character tables, fusion rings of finite groups and of SU(2), and the
//! random-walk diagnostics for amenability of a fusion ring with a
//! dimension function.

mod amenability;
mod chartab;
mod iso;
mod measure;

pub use amenability::{
    amenability_report, lambda_matrix, multiplication_matrix, operator_norm, return_sequence,
    AmenabilityParams, AmenabilityReport, ReturnStep, Verdict, NORM_TOLERANCE,
};
pub use chartab::{character_table, dixon_prime, CharacterTable, CHARTAB_BOUND};
pub use iso::{certify_pair, fusion_rings_isomorphic, PairCheck};
pub use measure::{convolve, Measure};

use crate::algebra::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use chartab::{conj_counts, mul_counts};

/// A based ring with nonnegative integer structure constants `m(i, j, k)`
/// (the multiplicity of `k` in `i·j`), unit `0` and an involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FusionRing {
    /// Finite basis with an explicit `size³` table indexed `(i·size + j)·size + k`.
    Table {
        size: usize,
        dual: Vec<usize>,
        constants: Vec<u64>,
    },
    /// Rep SU(2) on the basis `0..=bound` of highest weights (spin `j/2`).
    /// Products `i·j` are exact only for `i + j ≤ bound`.
    Su2 { bound: usize },
}

impl FusionRing {
    pub fn table(size: usize, dual: Vec<usize>, constants: Vec<u64>) -> Result<Self> {
        if dual.len() != size || constants.len() != size * size * size {
            return Err(Error::Dimension(format!("fusion table of size {size}")));
        }
        Ok(FusionRing::Table { size, dual, constants })
    }

    /// Basis size (for SU(2) the number of labels kept).
    pub fn size(&self) -> usize {
        match self {
            FusionRing::Table { size, .. } => *size,
            FusionRing::Su2 { bound } => bound + 1,
        }
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn dual(&self, i: usize) -> usize {
        match self {
            FusionRing::Table { dual, .. } => dual[i],
            FusionRing::Su2 { .. } => i,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FusionRing::Table { .. })
    }

    /// Whether the full expansion of `i·j` lies within the basis.
    pub fn is_exact(&self, i: usize, j: usize) -> bool {
        match self {
            FusionRing::Table { .. } => true,
            FusionRing::Su2 { bound } => i + j <= *bound,
        }
    }

    /// `m(i, j, k)`; refuses products cut by the truncation.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Result<u64> {
        match self {
            FusionRing::Table { size, constants, .. } => Ok(constants[(i * size + j) * size + k]),
            FusionRing::Su2 { bound } => {
                if i + j > *bound {
                    return Err(Error::Truncation {
                        max_safe: bound.saturating_sub(i.min(j)),
                    });
                }
                Ok(u64::from(i.abs_diff(j) <= k && k <= i + j && (i + j - k) % 2 == 0))
            }
        }
    }

    /// Nonzero terms `(k, m(i, j, k))` of `i·j`.
    pub fn product(&self, i: usize, j: usize) -> Result<Vec<(usize, u64)>> {
        match self {
            FusionRing::Su2 { bound } => {
                if i + j > *bound {
                    return Err(Error::Truncation {
                        max_safe: bound.saturating_sub(i.min(j)),
                    });
                }
                Ok((i.abs_diff(j)..=i + j).step_by(2).map(|k| (k, 1)).collect())
            }
            FusionRing::Table { size, .. } => Ok((0..*size)
                .filter_map(|k| {
                    let m = self.constant(i, j, k).expect("finite table");
                    (m != 0).then_some((k, m))
                })
                .collect()),
        }
    }

    /// Unit, duality, associativity and Frobenius reciprocity
    /// `m(i, j, k) = m(k, dual(j), i)` over all exact index triples.
    pub fn verify(&self) -> Result<()> {
        let n = self.size();
        let bad = |what: &str| Err(Error::Consistency(format!("fusion ring: {what}")));
        for i in 0..n {
            if self.dual(self.dual(i)) != i {
                return bad("involution");
            }
            for j in 0..n {
                if !self.is_exact(i, j) {
                    continue;
                }
                if self.constant(i, j, 0)? != u64::from(i == self.dual(j)) {
                    return bad("unit coefficient");
                }
                for k in 0..n {
                    if self.is_exact(k, self.dual(j)) && self.constant(i, j, k)? != self.constant(k, self.dual(j), i)? {
                        return bad("Frobenius reciprocity");
                    }
                }
            }
            if self.constant(0, i, i)? != 1 || self.constant(i, 0, i)? != 1 {
                return bad("unit");
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.is_finite() && i + j + k > self.size() - 1 {
                        continue;
                    }
                    for s in 0..n {
                        let mut l = 0u64;
                        let mut r = 0u64;
                        for (t, a) in self.product(i, j)? {
                            l += a * self.constant(t, k, s)?;
                        }
                        for (t, a) in self.product(j, k)? {
                            r += a * self.constant(i, t, s)?;
                        }
                        if l != r {
                            return bad("associativity");
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Positive dimension values on the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionFunction(pub Vec<u64>);

impl DimensionFunction {
    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    /// `d(i) d(j) = Σ_k m(i, j, k) d(k)` on exact products, `d(dual i) = d(i)`,
    /// `d ≥ 1`.
    pub fn verify(&self, ring: &FusionRing) -> Result<()> {
        let n = ring.size();
        if self.0.len() != n {
            return Err(Error::Dimension("dimension vector length".into()));
        }
        for i in 0..n {
            if self.0[i] == 0 || self.0[ring.dual(i)] != self.0[i] {
                return Err(Error::Consistency(format!("dimension at {i}")));
            }
            for j in 0..n {
                if !ring.is_exact(i, j) {
                    continue;
                }
                let s: u64 = ring.product(i, j)?.iter().map(|&(k, m)| m * self.0[k]).sum();
                if s != self.0[i] * self.0[j] {
                    return Err(Error::Consistency(format!("dimension is not multiplicative at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }
}

/// Representation ring of `g` with the classical dimension function, the
/// basis ordered like the rows of its character table.
pub fn fusion_ring_of_group(g: &FiniteGroup) -> Result<(FusionRing, DimensionFunction)> {
    let t = character_table(g)?;
    fusion_ring_of_table(&t)
}

/// Structure constants `m(i, j, k) = |G|⁻¹ Σ_C |C| χ_i χ_j conj(χ_k)`,
/// evaluated in `Z[ζ]` and required to be nonnegative integers.
pub fn fusion_ring_of_table(t: &CharacterTable) -> Result<(FusionRing, DimensionFunction)> {
    let k = t.len();
    let n = t.group().order() as i64;
    let field = t.field().clone();
    let mult = t.multiplicities();
    let sizes: Vec<i64> = t.classes().iter().map(|c| c.len() as i64).collect();
    // dual: the row whose values are the conjugates
    let dual: Vec<usize> = (0..k)
        .map(|i| {
            let conj: Vec<Vec<i64>> = mult[i].iter().map(|c| conj_counts(c)).collect();
            (0..k).find(|&j| mult[j] == conj).expect("conjugate character is irreducible")
        })
        .collect();
    let triples: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let rows = crate::par::try_map(&triples, |&(i, j)| {
        let prods: Vec<Vec<i64>> = (0..sizes.len()).map(|s| mul_counts(&mult[i][s], &mult[j][s])).collect();
        (0..k)
            .map(|l| {
                let e = field.conductor() as usize;
                let mut acc = vec![0i64; e];
                for s in 0..sizes.len() {
                    let p = mul_counts(&prods[s], &conj_counts(&mult[l][s]));
                    for (a, v) in acc.iter_mut().zip(p) {
                        *a += sizes[s] * v;
                    }
                }
                let v = CyclotomicNumber::from_exponent_counts(&field, &acc);
                let q = v.as_rational().ok_or_else(|| Error::NonIntegral {
                    i,
                    j,
                    k: l,
                    value: v.to_string(),
                })?;
                let q = q / num_rational::BigRational::from_integer(n.into());
                if !q.is_integer() || q < num_rational::BigRational::from_integer(0.into()) {
                    return Err(Error::NonIntegral {
                        i,
                        j,
                        k: l,
                        value: q.to_string(),
                    });
                }
                Ok(num_traits::ToPrimitive::to_u64(&q.to_integer()).expect("small constant"))
            })
            .collect::<Result<Vec<u64>>>()
    })?;
    let constants: Vec<u64> = rows.into_iter().flatten().collect();
    let ring = FusionRing::table(k, dual, constants)?;
    Ok((ring, DimensionFunction(t.degrees().to_vec())))
}

/// Rep SU(2) truncated to highest weights `0..=bound`, `d(j) = j + 1`.
pub fn su2_ring(bound: usize) -> (FusionRing, DimensionFunction) {
    (
        FusionRing::Su2 { bound },
        DimensionFunction((1..=bound as u64 + 1).collect()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn c2_ring() {
        let (r, d) = fusion_ring_of_group(&catalog::lookup("c2").unwrap()).unwrap();
        assert_eq!(r.constant(1, 1, 0).unwrap(), 1);
        assert_eq!(r.constant(1, 1, 1).unwrap(), 0);
        r.verify().unwrap();
        d.verify(&r).unwrap();
    }

    #[test]
    fn s3_standard_square() {
        let (r, d) = fusion_ring_of_group(&catalog::lookup("s3").unwrap()).unwrap();
        assert_eq!(d.0, vec![1, 1, 2]);
        assert_eq!(r.product(2, 2).unwrap(), vec![(0, 1), (1, 1), (2, 1)]);
        r.verify().unwrap();
    }

    #[test]
    fn abelian_rings_are_group_rings() {
        for name in ["c4", "c2xc2", "c6", "c2xc4", "c8"] {
            let (r, d) = fusion_ring_of_group(&catalog::lookup(name).unwrap()).unwrap();
            assert!(d.0.iter().all(|&x| x == 1));
            for i in 0..r.size() {
                for j in 0..r.size() {
                    let p = r.product(i, j).unwrap();
                    assert_eq!(p.len(), 1);
                    assert_eq!(p[0].1, 1);
                }
            }
        }
    }

    #[test]
    fn su2_rules() {
        let (r, d) = su2_ring(6);
        assert_eq!(r.product(1, 1).unwrap(), vec![(0, 1), (2, 1)]);
        assert_eq!(d.get(1) * d.get(1), d.get(0) + d.get(2));
        assert!((0..=6).all(|i| r.dual(i) == i));
        assert!(matches!(r.constant(4, 3, 1), Err(Error::Truncation { .. })));
        r.verify().unwrap();
        d.verify(&r).unwrap();
    }
}
