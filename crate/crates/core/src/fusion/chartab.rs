use crate::algebra::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, FiniteGroup};
use crate::zmod::is_prime;
use std::sync::Arc;

/// Largest group order accepted by [`character_table`].
pub const CHARTAB_BOUND: usize = 128;

/// Irreducible characters of a finite group.
///
/// Values are stored both as cyclotomic numbers in `Q(ζ_e)`, `e = exp(G)`,
/// and as eigenvalue multiplicities: `multiplicities[i][s][k]` is how often
/// `ζ^k` occurs as an eigenvalue of a representative of class `s` in the
/// i-th representation.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    field: Arc<CyclotomicField>,
    values: Vec<Vec<CyclotomicNumber>>,
    multiplicities: Vec<Vec<Vec<i64>>>,
    degrees: Vec<u64>,
    prime: u64,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// `values()[i][s]` is `χ_i` on class `s`.
    pub fn values(&self) -> &[Vec<CyclotomicNumber>] {
        &self.values
    }

    pub fn multiplicities(&self) -> &[Vec<Vec<i64>>] {
        &self.multiplicities
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// The prime used for the modular eigenvector computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Exact check of `Σ_C |C| χ_i(C) conj(χ_j(C)) = |G| δ_ij` and
    /// `Σ d_i² = |G|`.
    pub fn verify(&self) -> Result<()> {
        let n = self.group.order() as i64;
        let e = self.field.conductor() as usize;
        let k = self.len();
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != n as u64 {
            return Err(Error::Consistency("degrees do not square-sum to |G|".into()));
        }
        for i in 0..k {
            for j in 0..k {
                let mut acc = vec![0i64; e];
                for (s, class) in self.classes.iter().enumerate() {
                    let conj = conj_counts(&self.multiplicities[j][s]);
                    let prod = mul_counts(&self.multiplicities[i][s], &conj);
                    for (a, p) in acc.iter_mut().zip(prod) {
                        *a += class.len() as i64 * p;
                    }
                }
                let v = CyclotomicNumber::from_exponent_counts(&self.field, &acc);
                let expected = if i == j { n } else { 0 };
                if v != CyclotomicNumber::from_integer(&self.field, expected) {
                    return Err(Error::Consistency(format!("orthogonality fails for rows {i}, {j}")));
                }
            }
        }
        Ok(())
    }
}

/// Product in `Z[x]/(x^e - 1)`.
pub(crate) fn mul_counts(a: &[i64], b: &[i64]) -> Vec<i64> {
    let e = a.len();
    let mut out = vec![0i64; e];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[(i + j) % e] += x * y;
            }
        }
    }
    out
}

/// Complex conjugation `x^k ↦ x^{-k}`.
pub(crate) fn conj_counts(a: &[i64]) -> Vec<i64> {
    let e = a.len();
    (0..e).map(|k| a[(e - k) % e]).collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_p(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√n`.
pub fn dixon_prime(n: usize, e: u64) -> Result<u64> {
    let lo = 2.0 * (n as f64).sqrt();
    let hi = 1_000_000u64;
    let mut p = e + 1;
    while p < hi {
        if p as f64 > lo && is_prime(p) {
            return Ok(p);
        }
        p += e;
    }
    Err(Error::NoPrime { lo: lo.ceil() as u64, hi })
}

/// Primitive `e`-th root of unity mod `p`.
fn primitive_root_of_unity(e: u64, p: u64) -> u64 {
    let factors: Vec<u64> = crate::zmod::factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    let g = (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("multiplicative group is cyclic");
    pow_mod(g, (p - 1) / e, p)
}

/// Row-reduced basis of the kernel of a `d × d` matrix over `F_p`.
fn kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(r) = (row..d).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, r);
        let iv = inv_p(a[row][col], p);
        for x in a[row].iter_mut() {
            *x = *x * iv % p;
        }
        for r2 in 0..d {
            if r2 != row && a[r2][col] != 0 {
                let f = a[r2][col];
                for c in 0..d {
                    a[r2][c] = (a[r2][c] + p - f * a[row][c] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; d];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Coordinates of `v` in the span of `basis` (assumed to contain it), via
/// the pivot columns of a reduced copy.
struct SubspaceCoords {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    // transform[i] expresses reduced row i in the original basis
    transform: Vec<Vec<u64>>,
    p: u64,
}

impl SubspaceCoords {
    fn new(basis: &[Vec<u64>], p: u64) -> Self {
        let d = basis.len();
        let mut rows = basis.to_vec();
        let mut transform: Vec<Vec<u64>> = (0..d)
            .map(|i| (0..d).map(|j| u64::from(i == j)).collect())
            .collect();
        let mut pivots = Vec::new();
        let cols = basis.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(i) = (r..d).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, i);
            transform.swap(r, i);
            let iv = inv_p(rows[r][c], p);
            for x in rows[r].iter_mut() {
                *x = *x * iv % p;
            }
            for x in transform[r].iter_mut() {
                *x = *x * iv % p;
            }
            for i2 in 0..d {
                if i2 != r && rows[i2][c] != 0 {
                    let f = rows[i2][c];
                    for cc in 0..cols {
                        rows[i2][cc] = (rows[i2][cc] + p - f * rows[r][cc] % p) % p;
                    }
                    for cc in 0..d {
                        transform[i2][cc] = (transform[i2][cc] + p - f * transform[r][cc] % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        SubspaceCoords {
            rows,
            pivots,
            transform,
            p,
        }
    }

    fn coords(&self, v: &[u64]) -> Vec<u64> {
        let d = self.transform.len();
        let p = self.p;
        let mut out = vec![0u64; d];
        for (i, &pc) in self.pivots.iter().enumerate() {
            let f = v[pc];
            if f != 0 {
                for (o, &t) in out.iter_mut().zip(&self.transform[i]) {
                    *o = (*o + f * t) % p;
                }
            }
        }
        debug_assert_eq!(self.rows.len(), d);
        out
    }
}

/// Dixon's method: common eigenvectors of the class matrices over `F_p`,
/// lifted to cyclotomic values through eigenvalue multiplicities.
pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    let n = g.order();
    if n > CHARTAB_BOUND {
        return Err(Error::SizeBound {
            what: "character table".into(),
            order: n,
            bound: CHARTAB_BOUND,
        });
    }
    let classes = conjugacy_classes(g);
    let k = classes.len();
    let mut class_of = vec![0; n];
    for (s, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = s;
        }
    }
    let e = g.exponent() as u64;
    let p = dixon_prime(n, e)?;
    // a[j][r][s] = #{x in C_j : x⁻¹ g_s in C_r}
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (s, cs) in classes.iter().enumerate() {
        let rep = cs[0];
        for x in 0..n {
            let y = g.mul(g.inv(x), rep);
            a[class_of[x]][class_of[y]][s] += 1;
        }
    }
    // split F_p^k into common eigenspaces of A_j with (A_j)_{r,s} = a[j][r][s]
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()];
    for j in 1..k {
        let mut next = Vec::new();
        for v in spaces {
            if v.len() == 1 {
                next.push(v);
                continue;
            }
            let d = v.len();
            let sc = SubspaceCoords::new(&v, p);
            // matrix of A_j on V: column i = coords of A_j v_i
            let images: Vec<Vec<u64>> = v
                .iter()
                .map(|b| {
                    let img: Vec<u64> = (0..k)
                        .map(|r| (0..k).fold(0u64, |acc, s| (acc + a[j][r][s] % p * b[s]) % p))
                        .collect();
                    sc.coords(&img)
                })
                .collect();
            let mut found = 0;
            for lambda in 0..p {
                let m: Vec<Vec<u64>> = (0..d)
                    .map(|r| {
                        (0..d)
                            .map(|c| (images[c][r] + if r == c { p - lambda } else { 0 }) % p)
                            .collect()
                    })
                    .collect();
                let ker = kernel_mod_p(&m, p);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|w| {
                        (0..k)
                            .map(|t| (0..d).fold(0u64, |acc, i| (acc + w[i] * v[i][t]) % p))
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(Error::Consistency(format!("class matrix {j} is not split over F_{p}")));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|v| v.len() != 1) || spaces.len() != k {
        return Err(Error::Consistency("class matrices do not separate characters".into()));
    }
    let z = primitive_root_of_unity(e, p);
    let zinv = inv_p(z, p);
    let inv_class: Vec<usize> = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    let field = CyclotomicField::new(e);
    let mut rows = Vec::with_capacity(k);
    for v in spaces {
        let w0 = &v[0];
        let s0 = inv_p(w0[0], p);
        let w: Vec<u64> = w0.iter().map(|x| x * s0 % p).collect();
        // d² = |G| / Σ_s w_s w_{s*} / |C_s|
        let sum = (0..k).fold(0u64, |acc, s| {
            (acc + w[s] * w[inv_class[s]] % p * inv_p(classes[s].len() as u64 % p, p)) % p
        });
        let d2 = n as u64 % p * inv_p(sum, p) % p;
        let deg = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::Consistency("no integral degree".into()))?;
        let theta: Vec<u64> = (0..k)
            .map(|s| deg % p * w[s] % p * inv_p(classes[s].len() as u64 % p, p) % p)
            .collect();
        let inv_e = inv_p(e % p, p);
        let mut mults = Vec::with_capacity(k);
        for cs in &classes {
            let x = cs[0];
            let mut powers = Vec::with_capacity(e as usize);
            let mut y = 0;
            for _ in 0..e {
                powers.push(theta[class_of[y]]);
                y = g.mul(y, x);
            }
            let mut counts = vec![0i64; e as usize];
            for (kk, slot) in counts.iter_mut().enumerate() {
                let zk = pow_mod(zinv, kk as u64, p);
                let mut acc = 0u64;
                let mut zl = 1u64;
                for &t in &powers {
                    acc = (acc + t * zl) % p;
                    zl = zl * zk % p;
                }
                let ak = acc * inv_e % p;
                if ak > deg {
                    return Err(Error::Consistency(format!("eigenvalue multiplicity {ak} exceeds degree {deg}")));
                }
                *slot = ak as i64;
            }
            mults.push(counts);
        }
        rows.push((deg, mults));
    }
    rows.sort_by(|(d1, m1), (d2, m2)| d1.cmp(d2).then_with(|| m2.cmp(m1)));
    let degrees: Vec<u64> = rows.iter().map(|(d, _)| *d).collect();
    let multiplicities: Vec<Vec<Vec<i64>>> = rows.into_iter().map(|(_, m)| m).collect();
    let values = multiplicities
        .iter()
        .map(|row| row.iter().map(|c| CyclotomicNumber::from_exponent_counts(&field, c)).collect())
        .collect();
    let t = CharacterTable {
        group: Arc::new(g.clone()),
        classes,
        class_of,
        field,
        values,
        multiplicities,
        degrees,
        prime: p,
    };
    t.verify()?;
    Ok(t)
}
