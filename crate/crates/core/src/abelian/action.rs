use super::AbelianGroup;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use std::sync::Arc;

/// A finite group `K` acting on a finite abelian group `A` by automorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KAction {
    acting: Arc<FiniteGroup>,
    abelian: AbelianGroup,
    table: Vec<Vec<usize>>,
    dual: Vec<Vec<usize>>,
}

impl KAction {
    /// `table[g][a]` is `g.a`.
    pub fn new(acting: Arc<FiniteGroup>, abelian: AbelianGroup, table: Vec<Vec<usize>>) -> Result<Self> {
        crate::group::check_action(&abelian.to_group(), &acting, &table)?;
        Ok(Self::new_unchecked(acting, abelian, table))
    }

    pub(crate) fn new_unchecked(acting: Arc<FiniteGroup>, abelian: AbelianGroup, table: Vec<Vec<usize>>) -> Self {
        let dual = (0..acting.order())
            .map(|g| {
                let gi = acting.inv(g);
                (0..abelian.order())
                    .map(|phi| dual_image(&abelian, &table[gi], phi))
                    .collect()
            })
            .collect();
        KAction {
            acting,
            abelian,
            table,
            dual,
        }
    }

    pub fn trivial(acting: Arc<FiniteGroup>, abelian: AbelianGroup) -> Self {
        let id: Vec<usize> = (0..abelian.order()).collect();
        let table = vec![id; acting.order()];
        Self::new_unchecked(acting, abelian, table)
    }

    pub fn acting(&self) -> &FiniteGroup {
        &self.acting
    }

    pub fn acting_arc(&self) -> &Arc<FiniteGroup> {
        &self.acting
    }

    pub fn abelian(&self) -> &AbelianGroup {
        &self.abelian
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, g: usize, a: usize) -> usize {
        self.table[g][a]
    }

    /// The contragredient action on the dual: `(g·φ)(a) = φ(g⁻¹.a)`.
    #[inline]
    pub fn apply_dual(&self, g: usize, phi: usize) -> usize {
        self.dual[g][phi]
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|m| m.iter().enumerate().all(|(i, &x)| i == x))
    }
}

/// The character `a ↦ φ(σ(a))` in coordinates.
pub(crate) fn dual_image(a: &AbelianGroup, sigma: &[usize], phi: usize) -> usize {
    let e = a.exponent();
    let coords: Vec<u64> = a
        .factors()
        .iter()
        .enumerate()
        .map(|(j, &d)| a.pairing(phi, sigma[a.basis(j)]) / (e / d))
        .collect();
    a.index(&coords)
}

/// A normalized 2-cocycle `K × K → A` for the twisted action:
/// `g.b(h,k) + b(g,hk) = b(g,h) + b(gh,k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionCocycle {
    action: Arc<KAction>,
    table: Vec<usize>,
}

impl ExtensionCocycle {
    pub fn new(action: Arc<KAction>, table: Vec<usize>) -> Result<Self> {
        let nk = action.acting().order();
        if table.len() != nk * nk {
            return Err(Error::Dimension(format!(
                "extension cocycle has {} entries, expected {}",
                table.len(),
                nk * nk
            )));
        }
        if table.iter().any(|&x| x >= action.abelian().order()) {
            return Err(Error::InvalidSpec("extension cocycle value outside A".into()));
        }
        let b = ExtensionCocycle { action, table };
        b.validate()?;
        Ok(b)
    }

    pub(crate) fn new_unchecked(action: Arc<KAction>, table: Vec<usize>) -> Self {
        ExtensionCocycle { action, table }
    }

    pub fn zero(action: Arc<KAction>) -> Self {
        let nk = action.acting().order();
        ExtensionCocycle {
            action,
            table: vec![0; nk * nk],
        }
    }

    pub fn action(&self) -> &KAction {
        &self.action
    }

    pub fn action_arc(&self) -> &Arc<KAction> {
        &self.action
    }

    #[inline]
    pub fn value(&self, g: usize, h: usize) -> usize {
        self.table[g * self.action.acting().order() + h]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&x| x == 0)
    }

    pub fn validate(&self) -> Result<()> {
        let act = &self.action;
        let (k, a) = (act.acting(), act.abelian());
        let nk = k.order();
        for g in 0..nk {
            if self.value(0, g) != 0 {
                return Err(Error::NotNormalized { g: 0, h: g });
            }
            if self.value(g, 0) != 0 {
                return Err(Error::NotNormalized { g, h: 0 });
            }
        }
        for g in 0..nk {
            for h in 0..nk {
                let gh = k.mul(g, h);
                for x in 0..nk {
                    let lhs = a.add(act.apply(g, self.value(h, x)), self.value(g, k.mul(h, x)));
                    let rhs = a.add(self.value(g, h), self.value(gh, x));
                    if lhs != rhs {
                        return Err(Error::CocycleIdentity { g, h, k: x });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_same_action(&self, other: &ExtensionCocycle) -> Result<()> {
        if self.action != other.action {
            return Err(Error::InvalidAction("cocycles for different actions".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ExtensionCocycle) -> Result<ExtensionCocycle> {
        self.check_same_action(other)?;
        let a = self.action.abelian();
        Ok(ExtensionCocycle {
            action: self.action.clone(),
            table: self.table.iter().zip(&other.table).map(|(&x, &y)| a.add(x, y)).collect(),
        })
    }

    pub fn sub(&self, other: &ExtensionCocycle) -> Result<ExtensionCocycle> {
        self.check_same_action(other)?;
        let a = self.action.abelian();
        Ok(ExtensionCocycle {
            action: self.action.clone(),
            table: self.table.iter().zip(&other.table).map(|(&x, &y)| a.sub(x, y)).collect(),
        })
    }

    /// The coboundary `(df)(g,h) = f(g) + g.f(h) - f(gh)` of `f: K → A`
    /// with `f(e) = 0`.
    pub fn coboundary(action: Arc<KAction>, f: &[usize]) -> Self {
        let k = action.acting();
        let a = action.abelian();
        let nk = k.order();
        assert_eq!(f.len(), nk);
        assert_eq!(f[0], 0, "1-cochain must vanish at the identity");
        let mut table = vec![0; nk * nk];
        for g in 0..nk {
            for h in 0..nk {
                table[g * nk + h] = a.sub(a.add(f[g], action.apply(g, f[h])), f[k.mul(g, h)]);
            }
        }
        ExtensionCocycle { action, table }
    }
}

/// Contents of an action file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionFile {
    pub group_path: String,
    pub factors: Vec<u64>,
    pub table: Vec<Vec<usize>>,
}

/// `group <path>`, `factors d1 d2 ...`, then one permutation line of A per
/// element of K.
pub fn parse_action(text: &str) -> Result<ActionFile> {
    let mut group_path = None;
    let mut factors = None;
    let mut table = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: ln + 1, msg };
        if let Some(rest) = line.strip_prefix("group ") {
            group_path = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("factors") {
            let f: std::result::Result<Vec<u64>, _> = rest.split_whitespace().map(str::parse).collect();
            factors = Some(f.map_err(|e| perr(e.to_string()))?);
        } else {
            let row: std::result::Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            table.push(row.map_err(|e| perr(e.to_string()))?);
        }
    }
    Ok(ActionFile {
        group_path: group_path.ok_or(Error::Parse {
            line: 1,
            msg: "missing `group` line".into(),
        })?,
        factors: factors.ok_or(Error::Parse {
            line: 2,
            msg: "missing `factors` line".into(),
        })?,
        table,
    })
}

pub fn write_action(act: &KAction, group_path: &str) -> String {
    let f: Vec<String> = act.abelian().factors().iter().map(u64::to_string).collect();
    let mut out = format!("group {group_path}\nfactors {}\n", f.join(" "));
    for row in act.table() {
        let r: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&r.join(" "));
        out.push('\n');
    }
    out
}
