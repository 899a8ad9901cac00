use super::{convolve, DimensionFunction, FusionRing, Measure};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Slack allowed above 1 before a norm counts as a contraction violation.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Entry `(i, k)` is `m(j, k, i)`: left multiplication by `j` on the first
/// `n` basis labels.
pub fn multiplication_matrix(ring: &FusionRing, j: usize, n: usize) -> Result<DMatrix<f64>> {
    if n == 0 || n > ring.size() || j >= ring.size() {
        return Err(Error::Dimension(format!("truncation {n} for a basis of size {}", ring.size())));
    }
    Ok(DMatrix::from_fn(n, n, |i, k| compressed_constant(ring, j, k, i) as f64))
}

/// `m(i, j, k)` read off the full (untruncated) rule; only entries inside
/// the first `n` labels are ever requested, which is a compression.
fn compressed_constant(ring: &FusionRing, i: usize, j: usize, k: usize) -> u64 {
    match ring {
        FusionRing::Su2 { .. } => u64::from(i.abs_diff(j) <= k && k <= i + j && (i + j - k) % 2 == 0),
        FusionRing::Table { .. } => ring.constant(i, j, k).expect("finite table"),
    }
}

/// `λ_μ = Σ_j μ(j)/d(j) Λ_j` compressed to the first `n` labels.
pub fn lambda_matrix(ring: &FusionRing, d: &DimensionFunction, mu: &Measure, n: usize) -> Result<DMatrix<f64>> {
    if d.0.len() != ring.size() {
        return Err(Error::Dimension("dimension vector length".into()));
    }
    let mut out = DMatrix::<f64>::zeros(n.max(1), n.max(1));
    for (j, w) in mu.terms() {
        let c = w.to_f64().expect("finite weight") / d.get(j) as f64;
        out += multiplication_matrix(ring, j, n)? * c;
    }
    Ok(out)
}

/// Spectral norm: symmetric eigensolver when `a` is symmetric, otherwise the
/// square root of the largest eigenvalue of `aᵀa`.
pub fn operator_norm(a: &DMatrix<f64>) -> f64 {
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    let symmetric = a.nrows() == a.ncols()
        && (0..a.nrows()).all(|i| (0..i).all(|k| (a[(i, k)] - a[(k, i)]).abs() <= 1e-12 * scale));
    if symmetric {
        let e = SymmetricEigen::new(a.clone());
        e.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    } else {
        let e = SymmetricEigen::new(a.transpose() * a);
        e.eigenvalues.iter().fold(0.0f64, |m, x| m.max(*x)).max(0.0).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReturnStep {
    pub n: usize,
    /// `(μ̌*μ)ⁿ(e)`, exact.
    pub value: BigRational,
    /// `value^{1/n}`.
    pub root: f64,
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("bounded").ln();
    }
    let shift = bits - 60;
    (x >> shift).to_f64().expect("bounded").ln() + shift as f64 * std::f64::consts::LN_2
}

fn nth_root(q: &BigRational, n: usize) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    ((ln_big(q.numer()) - ln_big(q.denom())) / n as f64).exp()
}

/// Return probabilities `(μ̌*μ)ⁿ(e)` for `n = 1..=n_max` by repeated
/// convolution. On an infinite ring this refuses once the walk would leave
/// the truncated basis, reporting the last safe `n`.
pub fn return_sequence(ring: &FusionRing, d: &DimensionFunction, mu: &Measure, n_max: usize) -> Result<Vec<ReturnStep>> {
    let nu = convolve(ring, d, &mu.check(ring), mu).map_err(|e| match e {
        Error::Truncation { .. } => Error::Truncation { max_safe: 0 },
        e => e,
    })?;
    let mut out = Vec::with_capacity(n_max);
    let mut p = nu.clone();
    for n in 1..=n_max {
        if n > 1 {
            p = convolve(ring, d, &p, &nu).map_err(|e| match e {
                Error::Truncation { .. } => Error::Truncation { max_safe: n - 1 },
                e => e,
            })?;
        }
        let value = p.get(ring.unit());
        let root = nth_root(&value, n);
        out.push(ReturnStep { n, value, root });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmenabilityParams {
    /// Truncation sizes for the norm sweep; clamped to the basis size.
    pub truncations: Vec<usize>,
    pub return_steps: usize,
}

impl Default for AmenabilityParams {
    fn default() -> Self {
        AmenabilityParams {
            truncations: vec![10, 20, 40, 80],
            return_steps: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ConsistentWithAmenable,
    Inconclusive,
    /// A norm above 1 or a broken dimension identity; indicates bad input.
    ViolatesContraction,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::ConsistentWithAmenable => "consistent-with-amenable",
            Verdict::Inconclusive => "inconclusive",
            Verdict::ViolatesContraction => "violates-contraction",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmenabilityReport {
    /// `(N, ‖λ_μ‖)` over the truncation sweep.
    pub norms: Vec<(usize, f64)>,
    /// True for infinite rings: compressed norms only bound the norm from below.
    pub norms_are_lower_bounds: bool,
    /// `(j, ‖Λ_j‖, d(j))` at the largest truncation, for `j` in the support.
    pub generator_norms: Vec<(usize, f64, u64)>,
    pub returns: Vec<ReturnStep>,
    /// Set when the return sequence stopped early at the truncation.
    pub returns_cut_at: Option<usize>,
    pub dimension_ok: bool,
    pub contraction_ok: bool,
    pub symmetric_measure: bool,
    pub verdict: Verdict,
}

fn nondecreasing(xs: impl Iterator<Item = f64>) -> bool {
    let v: Vec<f64> = xs.collect();
    v.windows(2).all(|w| w[1] >= w[0] - 1e-12)
}

/// Norm sweep, return probabilities and the contraction bound for one
/// measure. The verdict only describes trends over the computed range.
pub fn amenability_report(
    ring: &FusionRing,
    d: &DimensionFunction,
    mu: &Measure,
    params: &AmenabilityParams,
) -> Result<AmenabilityReport> {
    let size = ring.size();
    if mu.max_label() >= size || d.0.len() != size {
        return Err(Error::Dimension("measure or dimension vector outside the basis".into()));
    }
    let dimension_ok = d.verify(ring).is_ok();
    let mut sizes: Vec<usize> = if ring.is_finite() {
        vec![size]
    } else {
        params.truncations.iter().map(|&n| n.clamp(mu.max_label() + 1, size)).collect()
    };
    sizes.sort_unstable();
    sizes.dedup();
    let norms: Vec<(usize, f64)> = crate::par::try_map(&sizes, |&n| {
        lambda_matrix(ring, d, mu, n).map(|m| (n, operator_norm(&m)))
    })?;
    let top = *sizes.last().expect("nonempty sweep");
    let generator_norms = mu
        .support()
        .map(|j| multiplication_matrix(ring, j, top).map(|m| (j, operator_norm(&m), d.get(j))))
        .collect::<Result<Vec<_>>>()?;
    let (returns, returns_cut_at) = if dimension_ok {
        match return_sequence(ring, d, mu, params.return_steps) {
            Ok(r) => (r, None),
            Err(Error::Truncation { max_safe }) => {
                let r = if max_safe > 0 {
                    return_sequence(ring, d, mu, max_safe)?
                } else {
                    Vec::new()
                };
                (r, Some(max_safe))
            }
            Err(e) => return Err(e),
        }
    } else {
        (Vec::new(), None)
    };
    let contraction_ok = norms.iter().all(|&(_, x)| x <= 1.0 + NORM_TOLERANCE);
    let verdict = if !dimension_ok || !contraction_ok {
        Verdict::ViolatesContraction
    } else if norms.iter().any(|&(_, x)| x >= 1.0 - NORM_TOLERANCE) {
        Verdict::ConsistentWithAmenable
    } else {
        // deficits 1 - ‖λ_N‖ must shrink at least like 1/N, roots must climb
        let first = norms[0];
        let last = *norms.last().expect("nonempty");
        let decays = norms.len() >= 2
            && nondecreasing(norms.iter().map(|x| x.1))
            && (1.0 - last.1) <= (1.0 - first.1) * first.0 as f64 / last.0 as f64;
        let climbs = returns.len() >= 2 && nondecreasing(returns.iter().map(|s| s.root));
        if decays && climbs {
            Verdict::ConsistentWithAmenable
        } else {
            Verdict::Inconclusive
        }
    };
    Ok(AmenabilityReport {
        norms,
        norms_are_lower_bounds: !ring.is_finite(),
        generator_norms,
        returns,
        returns_cut_at,
        dimension_ok,
        contraction_ok,
        symmetric_measure: mu.is_symmetric(ring),
        verdict,
    })
}

impl AmenabilityReport {
    /// Machine-readable rows: `norm N value` and `return n value root`.
    pub fn rows(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (n, x) in &self.norms {
            out.push(format!("norm {n} {x:.12}"));
        }
        for s in &self.returns {
            out.push(format!("return {} {} {:.12}", s.n, s.value, s.root));
        }
        out.push(format!("verdict {}", self.verdict.label()));
        out
    }

    /// Smallest computed distance of a norm from 1 (negative if above 1).
    pub fn min_deficit(&self) -> f64 {
        self.norms.iter().map(|x| 1.0 - x.1).fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclotomic::rational;
    use crate::fusion::{fusion_ring_of_group, su2_ring};
    use crate::group::catalog;
    use std::f64::consts::PI;

    #[test]
    fn path_graph_norms() {
        let (r, _) = su2_ring(120);
        for n in [3, 10, 100] {
            let x = operator_norm(&multiplication_matrix(&r, 1, n).unwrap());
            assert!((x - 2.0 * (PI / (n as f64 + 1.0)).cos()).abs() < 1e-9);
        }
    }

    #[test]
    fn nonsymmetric_route_agrees() {
        let (r, d) = su2_ring(30);
        let mu = Measure::new([(1, rational(1, 2)), (2, rational(1, 2))]).unwrap();
        let a = lambda_matrix(&r, &d, &mu, 12).unwrap();
        let via_square = SymmetricEigen::new(a.transpose() * &a)
            .eigenvalues
            .iter()
            .fold(0.0f64, |m, x| m.max(*x))
            .sqrt();
        assert!((operator_norm(&a) - via_square).abs() < 1e-10);
    }

    #[test]
    fn spin_half_returns() {
        let (r, d) = su2_ring(10);
        let s = return_sequence(&r, &d, &Measure::dirac(1), 2).unwrap();
        assert_eq!(s[0].value, rational(1, 4));
        assert_eq!(s[1].value, rational(1, 8));
        assert!((s[1].root - 0.125f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            return_sequence(&r, &d, &Measure::dirac(1), 6),
            Err(Error::Truncation { max_safe: 5 })
        ));
    }

    #[test]
    fn unit_measure_always_returns() {
        let (r, d) = su2_ring(4);
        for s in return_sequence(&r, &d, &Measure::dirac(0), 5).unwrap() {
            assert_eq!(s.value, rational(1, 1));
            assert_eq!(s.root, 1.0);
        }
    }

    #[test]
    fn group_ring_is_amenable() {
        let (r, d) = fusion_ring_of_group(&catalog::lookup("s3").unwrap()).unwrap();
        let mu = Measure::new([(1, rational(1, 3)), (2, rational(2, 3))]).unwrap();
        let rep = amenability_report(&r, &d, &mu, &AmenabilityParams::default()).unwrap();
        assert!((rep.norms[0].1 - 1.0).abs() < 1e-12);
        assert_eq!(rep.verdict, Verdict::ConsistentWithAmenable);
    }

    #[test]
    fn su2_trend() {
        let (r, d) = su2_ring(200);
        let rep = amenability_report(&r, &d, &Measure::dirac(1), &AmenabilityParams::default()).unwrap();
        assert!(rep.norms_are_lower_bounds);
        assert_eq!(rep.verdict, Verdict::ConsistentWithAmenable);
        for (n, x) in &rep.norms {
            assert!((x - (PI / (*n as f64 + 1.0)).cos()).abs() < 1e-9);
        }
    }

    #[test]
    fn corrupted_ring_is_flagged() {
        let r = FusionRing::table(2, vec![0, 1], vec![1, 0, 0, 1, 0, 1, 2, 0]).unwrap();
        let d = DimensionFunction(vec![1, 1]);
        let rep = amenability_report(&r, &d, &Measure::dirac(1), &AmenabilityParams::default()).unwrap();
        assert!(!rep.dimension_ok);
        assert!(!rep.contraction_ok);
        assert_eq!(rep.verdict, Verdict::ViolatesContraction);
    }
}
