use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// The cyclotomic field Q(ζ_m), stored as Q[x]/Φ_m with ζ = x.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    conductor: u64,
    phi: Vec<i64>,
    /// `powers[k]` is ζ^k reduced modulo Φ_m, for `k < m`.
    powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![0i64; num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1] - top * phi[i];
            }
            cur[0] = -top * phi[0];
        }
        Arc::new(CyclotomicField {
            conductor,
            phi,
            powers,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn power(&self, k: usize) -> &[i64] {
        &self.powers[k % self.conductor as usize]
    }
}

/// An element of Q(ζ_m) in the power basis `1, ζ, ..., ζ^(φ(m)-1)`.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl CyclotomicNumber {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CyclotomicNumber {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_integer(field, 1)
    }

    /// ζ^k for any integer k.
    pub fn root(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let m = field.conductor as i64;
        Self::from_int_coeffs(field, field.power(k.rem_euclid(m) as usize))
    }

    /// `Σ counts[k] ζ^k` for an integer vector indexed by exponent.
    pub fn from_exponent_counts(field: &Arc<CyclotomicField>, counts: &[i64]) -> Self {
        let deg = field.degree();
        let mut acc = vec![0i64; deg];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &p) in acc.iter_mut().zip(field.power(k)) {
                    *a += c * p;
                }
            }
        }
        Self::from_int_coeffs(field, &acc)
    }

    fn from_int_coeffs(field: &Arc<CyclotomicField>, c: &[i64]) -> Self {
        CyclotomicNumber {
            field: field.clone(),
            coeffs: c.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Galois automorphism ζ ↦ ζ^k (k coprime to the conductor).
    pub fn galois(&self, k: u64) -> Self {
        let f = &self.field;
        let deg = f.degree();
        let mut out = vec![BigRational::zero(); deg];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = f.power(((j as u64 * k) % f.conductor) as usize);
            for (o, &x) in out.iter_mut().zip(p) {
                if x != 0 {
                    *o += c * BigRational::from_integer(x.into());
                }
            }
        }
        CyclotomicNumber {
            field: f.clone(),
            coeffs: out,
        }
    }

    /// Complex conjugation, ζ ↦ ζ^-1.
    pub fn conj(&self) -> Self {
        let m = self.field.conductor;
        self.galois((m - 1) % m.max(1))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.field.conductor;
        let mut prod = Self::one(&self.field);
        for k in 2..m {
            if crate::zmod::gcd(k, m) == 1 {
                prod = &prod * &self.galois(k);
            }
        }
        let norm = (self * &prod).as_rational().expect("the norm is rational");
        Some(prod.scale(&(BigRational::one() / norm)))
    }

    /// Re-expresses the number in `Q(ζ_M)` for a multiple `M` of its conductor.
    pub fn promote(&self, target: &Arc<CyclotomicField>) -> Self {
        let (m, big) = (self.field.conductor, target.conductor);
        assert!(big % m == 0, "conductor {m} does not divide {big}");
        let step = big / m;
        let mut out = Self::zero(target);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &x) in out.coeffs.iter_mut().zip(target.power((j as u64 * step) as usize)) {
                if x != 0 {
                    *o += c * BigRational::from_integer(x.into());
                }
            }
        }
        out
    }

    /// Numerical value as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let m = self.field.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * j as f64 / m;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.field.conductor, rhs.field.conductor);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.field.conductor, rhs.field.conductor);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.field.conductor, rhs.field.conductor);
        let f = &self.field;
        let deg = f.degree();
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigRational> = prod.drain(..deg).collect();
        for (t, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(f.power(t + deg)) {
                if x != 0 {
                    *o += &c * BigRational::from_integer(x.into());
                }
            }
        }
        CyclotomicNumber {
            field: f.clone(),
            coeffs: out,
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Sum of terms `p/q·ζ^k`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "ζ^{k}")?;
            } else {
                write!(f, "{a}·ζ^{k}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Integer helper for `BigInt` conversion at call sites.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
