use super::{DimensionFunction, FusionRing};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Finitely supported probability measure on the basis of a fusion ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure(BTreeMap<usize, BigRational>);

impl Measure {
    /// Drops zero weights; requires nonnegative weights of total mass 1.
    pub fn new(weights: impl IntoIterator<Item = (usize, BigRational)>) -> Result<Self> {
        let mut map: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (i, w) in weights {
            if w < BigRational::zero() {
                return Err(Error::Consistency(format!("negative weight at {i}")));
            }
            *map.entry(i).or_insert_with(BigRational::zero) += w;
        }
        map.retain(|_, w| !w.is_zero());
        let m = Measure(map);
        if !m.mass().is_one() {
            return Err(Error::Consistency(format!("measure has mass {}", m.mass())));
        }
        Ok(m)
    }

    pub fn dirac(i: usize) -> Self {
        Measure(BTreeMap::from([(i, BigRational::one())]))
    }

    /// Equal weights on the given labels.
    pub fn uniform(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Consistency("empty support".into()));
        }
        let w = BigRational::new(1.into(), (labels.len() as i64).into());
        Self::new(labels.iter().map(|&i| (i, w.clone())))
    }

    pub fn get(&self, i: usize) -> BigRational {
        self.0.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn max_label(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.0.iter().map(|(&i, w)| (i, w))
    }

    pub fn mass(&self) -> BigRational {
        self.0.values().fold(BigRational::zero(), |a, w| a + w)
    }

    /// `μ̌(i) = μ(dual i)`.
    pub fn check(&self, ring: &FusionRing) -> Self {
        Measure(self.0.iter().map(|(&i, w)| (ring.dual(i), w.clone())).collect())
    }

    pub fn is_symmetric(&self, ring: &FusionRing) -> bool {
        self.check(ring) == *self
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(i, w)| format!("{i}:{w}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses the `Display` form: `i:w` terms separated by spaces or commas.
impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .enumerate()
            .map(|(n, t)| {
                let bad = || Error::Parse {
                    line: 1,
                    msg: format!("term {} `{t}` is not of the form label:weight", n + 1),
                };
                let (i, w) = t.split_once(':').ok_or_else(bad)?;
                Ok((i.parse().map_err(|_| bad())?, w.parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<(usize, BigRational)>>>()?;
        Measure::new(terms)
    }
}

/// `(μ*ν)(k) =Σ_{i,j} m(i, j, k) d(k) / (d(i) d(j)) μ(i) ν(j)`, exact.
///
/// Refuses products that leave the truncated basis of an infinite ring, and
/// fails if the result does not have mass 1 (a broken dimension function).
pub fn convolve(ring: &FusionRing, d: &DimensionFunction, mu: &Measure, nu: &Measure) -> Result<Measure> {
    let n = ring.size();
    if mu.max_label() >= n || nu.max_label() >= n || d.0.len() != n {
        return Err(Error::Dimension("measure support outside the basis".into()));
    }
    let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (i, a) in mu.terms() {
        for (j, b) in nu.terms() {
            let w = a * b / BigRational::from_integer((d.get(i) * d.get(j)).into());
            for (k, m) in ring.product(i, j)? {
                *out.entry(k).or_insert_with(BigRational::zero) +=
                    &w * BigRational::from_integer((m * d.get(k)).into());
            }
        }
    }
    out.retain(|_, w| !w.is_zero());
    let res = Measure(out);
    if !res.mass().is_one() {
        return Err(Error::Consistency(format!(
            "convolution has mass {}; the dimension function is not multiplicative",
            res.mass()
        )));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclotomic::rational;
    use crate::fusion::su2_ring;

    #[test]
    fn su2_square_of_spin_half() {
        let (r, d) = su2_ring(4);
        let m = convolve(&r, &d, &Measure::dirac(1), &Measure::dirac(1)).unwrap();
        assert_eq!(m.get(0), rational(1, 4));
        assert_eq!(m.get(2), rational(3, 4));
        assert_eq!(m.mass(), BigRational::one());
    }

    #[test]
    fn unit_is_neutral() {
        let (r, d) = su2_ring(6);
        let mu = Measure::new([(1, rational(1, 3)), (2, rational(2, 3))]).unwrap();
        assert_eq!(convolve(&r, &d, &Measure::dirac(0), &mu).unwrap(), mu);
        assert_eq!(convolve(&r, &d, &mu, &Measure::dirac(0)).unwrap(), mu);
    }

    #[test]
    fn refuses_at_the_boundary() {
        let (r, d) = su2_ring(3);
        assert!(matches!(
            convolve(&r, &d, &Measure::dirac(2), &Measure::dirac(2)),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn parse_round_trip() {
        let mu: Measure = "1:1/3, 2:2/3".parse().unwrap();
        assert_eq!(mu.get(2), rational(2, 3));
        assert_eq!(mu.to_string().parse::<Measure>().unwrap(), mu);
        assert!("1:1/2".parse::<Measure>().is_err());
        assert!("x".parse::<Measure>().is_err());
    }

    #[test]
    fn rejects_bad_mass() {
        assert!(Measure::new([(0, rational(1, 2))]).is_err());
        assert!(Measure::new([(0, rational(3, 2)), (1, rational(-1, 2))]).is_err());
    }
}
