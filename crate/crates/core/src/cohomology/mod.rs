//! Second cohomology of finite groups with circle coefficients.
//!
//! A cocycle with values in the m-th roots of unity is stored additively:
//! the value `v` in Z/m stands for `exp(2πi v / m)`.

mod criteria;
mod h2;
mod report;

pub use criteria::{
    antisym_character, is_central_type, is_nondegenerate, twisted_center_dim,
};
pub use h2::{
    cohomologous, h2_classes, h2_classes_with, is_t_coboundary, t_modulus, CohClassSet,
    H2Options, DEFAULT_H2_BOUND, TRANSVERSAL_CAP,
};
pub use report::{dual_h2_report, DualH2Entry, DualH2Report};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use std::sync::Arc;

/// A normalized 2-cocycle `G × G → Z/m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cocycle {
    group: Arc<FiniteGroup>,
    modulus: u64,
    table: Vec<u64>,
}

/// Number of coordinates of a normalized 2-cochain: `(n - 1)^2`.
pub(crate) fn cochain_len(n: usize) -> usize {
    (n - 1) * (n - 1)
}

impl Cocycle {
    /// Checks normalization and the cocycle identity exhaustively.
    pub fn new(group: Arc<FiniteGroup>, modulus: u64, table: Vec<u64>) -> Result<Self> {
        let n = group.order();
        if modulus == 0 {
            return Err(Error::InvalidSpec("modulus must be positive".into()));
        }
        if table.len() != n * n {
            return Err(Error::Dimension(format!(
                "cocycle table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        let c = Cocycle {
            group,
            modulus,
            table: table.into_iter().map(|v| v % modulus).collect(),
        };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(group: Arc<FiniteGroup>, modulus: u64, table: Vec<u64>) -> Self {
        Cocycle {
            group,
            modulus,
            table,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.group.order();
        let m = self.modulus;
        for g in 0..n {
            if self.value(0, g) != 0 {
                return Err(Error::NotNormalized { g: 0, h: g });
            }
            if self.value(g, 0) != 0 {
                return Err(Error::NotNormalized { g, h: 0 });
            }
        }
        let bad = crate::par::map_range(n, |g| {
            for h in 0..n {
                let gh = self.group.mul(g, h);
                for k in 0..n {
                    let hk = self.group.mul(h, k);
                    let lhs = (self.value(g, h) + self.value(gh, k)) % m;
                    let rhs = (self.value(h, k) + self.value(g, hk)) % m;
                    if lhs != rhs {
                        return Some((g, h, k));
                    }
                }
            }
            None
        });
        match bad.into_iter().flatten().next() {
            Some((g, h, k)) => Err(Error::CocycleIdentity { g, h, k }),
            None => Ok(()),
        }
    }

    pub fn zero(group: Arc<FiniteGroup>, modulus: u64) -> Self {
        let n = group.order();
        Cocycle {
            group,
            modulus,
            table: vec![0; n * n],
        }
    }

    /// The coboundary `dφ(g, h) = φ(g) + φ(h) - φ(gh)` of a 1-cochain with
    /// `φ(e) = 0`.
    pub fn coboundary(group: Arc<FiniteGroup>, modulus: u64, phi: &[u64]) -> Self {
        let n = group.order();
        assert_eq!(phi.len(), n);
        assert_eq!(phi[0] % modulus, 0, "1-cochain must vanish at the identity");
        let m = modulus;
        let mut table = vec![0; n * n];
        for g in 0..n {
            for h in 0..n {
                table[g * n + h] = (phi[g] % m + phi[h] % m + m - phi[group.mul(g, h)] % m) % m;
            }
        }
        Cocycle {
            group,
            modulus,
            table,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn value(&self, g: usize, h: usize) -> u64 {
        self.table[g * self.group.order() + h]
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    /// Coordinates `c(g, h)` for `g, h != e`, row-major.
    pub fn normalized_vector(&self) -> Vec<u64> {
        let n = self.group.order();
        let mut v = Vec::with_capacity(cochain_len(n));
        for g in 1..n {
            v.extend_from_slice(&self.table[g * n + 1..(g + 1) * n]);
        }
        v
    }

    pub(crate) fn from_normalized_vector(group: Arc<FiniteGroup>, modulus: u64, v: &[u64]) -> Self {
        let n = group.order();
        assert_eq!(v.len(), cochain_len(n));
        let mut table = vec![0; n * n];
        for g in 1..n {
            for h in 1..n {
                table[g * n + h] = v[(g - 1) * (n - 1) + h - 1] % modulus;
            }
        }
        Cocycle {
            group,
            modulus,
            table,
        }
    }

    fn check_compatible(&self, other: &Cocycle) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.group != other.group {
            return Err(Error::Dimension("cocycles live on different groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        self.check_compatible(other)?;
        let m = self.modulus;
        Ok(Cocycle {
            group: self.group.clone(),
            modulus: m,
            table: self.table.iter().zip(&other.table).map(|(a, b)| (a + b) % m).collect(),
        })
    }

    pub fn sub(&self, other: &Cocycle) -> Result<Cocycle> {
        self.check_compatible(other)?;
        let m = self.modulus;
        Ok(Cocycle {
            group: self.group.clone(),
            modulus: m,
            table: self.table.iter().zip(&other.table).map(|(a, b)| (a + m - b) % m).collect(),
        })
    }

    /// The same cocycle viewed in Z/`modulus`, a multiple of the current one.
    pub fn with_modulus(&self, modulus: u64) -> Result<Cocycle> {
        if modulus % self.modulus != 0 {
            return Err(Error::ModulusMismatch(self.modulus, modulus));
        }
        let f = modulus / self.modulus;
        Ok(Cocycle {
            group: self.group.clone(),
            modulus,
            table: self.table.iter().map(|v| v * f).collect(),
        })
    }

    /// The same cocycle in the smallest modulus that holds its values.
    pub fn minimal_modulus(&self) -> Cocycle {
        let g = self.table.iter().fold(self.modulus, |g, &v| crate::zmod::gcd(g, v));
        Cocycle {
            group: self.group.clone(),
            modulus: self.modulus / g,
            table: self.table.iter().map(|v| v / g).collect(),
        }
    }

    /// `c'(x, y) = c(map[x], map[y])` on `group`, where `map` is a
    /// homomorphism from `group` into the current group.
    pub fn pullback(&self, group: Arc<FiniteGroup>, map: &[usize]) -> Cocycle {
        let n = group.order();
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = self.value(map[x], map[y]);
            }
        }
        Cocycle {
            group,
            modulus: self.modulus,
            table,
        }
    }
}

/// Header of a cocycle file: `group <path>` and `modulus m`, then the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleFile {
    pub group_path: String,
    pub modulus: u64,
    pub table: Vec<u64>,
}

pub fn parse_cocycle_file(text: &str) -> Result<CocycleFile> {
    let mut group_path = None;
    let mut modulus = None;
    let mut table = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: ln + 1, msg };
        if let Some(rest) = line.strip_prefix("group ") {
            group_path = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("modulus ") {
            modulus = Some(rest.trim().parse::<u64>().map_err(|e| perr(e.to_string()))?);
        } else {
            for t in line.split_whitespace() {
                table.push(t.parse::<u64>().map_err(|e| perr(e.to_string()))?);
            }
        }
    }
    Ok(CocycleFile {
        group_path: group_path.ok_or(Error::Parse {
            line: 1,
            msg: "missing `group` line".into(),
        })?,
        modulus: modulus.ok_or(Error::Parse {
            line: 2,
            msg: "missing `modulus` line".into(),
        })?,
        table,
    })
}

pub fn write_cocycle(c: &Cocycle, group_path: &str) -> String {
    let n = c.group.order();
    let mut out = format!("group {group_path}\nmodulus {}\n", c.modulus);
    for g in 0..n {
        let row: Vec<String> = (0..n).map(|h| c.value(g, h).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
