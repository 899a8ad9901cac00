use super::FiniteGroup;
use crate::abelian::ExtensionCocycle;
use crate::error::{Error, Result};

/// Constructor expression for a finite group.
///
/// Element order is fixed by the construction: in products and extensions
/// the pair `(a, b)` has index `a + |A| * b`.
#[derive(Debug, Clone)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of the given order `2n`: elements `r^i s^j` at index `i + n j`.
    Dihedral(usize),
    /// Symmetric group on `n <= 5` points, permutations in lexicographic order.
    Symmetric(usize),
    Quaternion8,
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    /// `normal ⋊ acting`, where `action[k]` is the automorphism of `normal`
    /// (as an image list) by which `k` acts.
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Vec<usize>>,
    },
    /// Extension of `K` by abelian `A` with product
    /// `(a, g)(a', g') = (a + g.a' + b(g, g'), g g')`.
    Extension(ExtensionCocycle),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::DirectProduct(Box::new(a), Box::new(b))
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Dihedral(order) => dihedral(*order),
        GroupSpec::Symmetric(n) => symmetric(*n),
        GroupSpec::Quaternion8 => Ok(quaternion8()),
        GroupSpec::DirectProduct(a, b) => {
            let (a, b) = (build_group(a)?, build_group(b)?);
            Ok(direct_product(&a, &b))
        }
        GroupSpec::Semidirect {
            normal,
            acting,
            action,
        } => {
            let (n, k) = (build_group(normal)?, build_group(acting)?);
            semidirect(&n, &k, action)
        }
        GroupSpec::Extension(b) => extension(b),
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidSpec("cyclic(0)".into()));
    }
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    FiniteGroup::from_table_unchecked_assoc(n, table)
}

fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::InvalidSpec(format!("dihedral order {order} must be even and >= 2")));
    }
    let n = order / 2;
    let idx = |i: usize, j: usize| i + n * j;
    let mut table = vec![0; order * order];
    for a in 0..n {
        for b in 0..2 {
            for c in 0..n {
                for d in 0..2 {
                    // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b + d)
                    let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                    table[idx(a, b) * order + idx(c, d)] = idx(rot, (b + d) % 2);
                }
            }
        }
    }
    FiniteGroup::from_table_unchecked_assoc(order, table)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Sign of a permutation in one-line notation: +1 or -1.
pub(crate) fn permutation_sign(p: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 5 {
        return Err(Error::InvalidSpec(format!("symmetric({n}) outside 1..=5")));
    }
    let perms = permutations(n);
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let m = perms.len();
    let mut table = vec![0; m * m];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            // (p q)(x) = p(q(x))
            let pq: Vec<usize> = q.iter().map(|&x| p[x]).collect();
            table[i * m + j] = index[&pq];
        }
    }
    let labels = perms
        .iter()
        .map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<String>())
        .collect();
    Ok(FiniteGroup::from_table_unchecked_assoc(m, table)?.with_labels(labels))
}

fn quaternion8() -> FiniteGroup {
    // basis 1, i, j, k with sign; index = 2 * unit + (sign < 0)
    const UNIT_MUL: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mut table = vec![0; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (u, neg) = UNIT_MUL[a / 2][b / 2];
            let sign = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
            table[a * 8 + b] = 2 * u + usize::from(sign);
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_table_unchecked_assoc(8, table)
        .expect("quaternion table is a group")
        .with_labels(labels)
}

pub(crate) fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![0; n * n];
    for x in 0..n {
        let (xa, xb) = (x % na, x / na);
        for y in 0..n {
            let (ya, yb) = (y % na, y / na);
            table[x * n + y] = a.mul(xa, ya) + na * b.mul(xb, yb);
        }
    }
    let g = FiniteGroup::from_table_unchecked_assoc(n, table).expect("product of groups");
    match (a.labels(), b.labels()) {
        (Some(la), Some(lb)) => {
            let labels = (0..n)
                .map(|x| format!("({},{})", la[x % na], lb[x / na]))
                .collect();
            g.with_labels(labels)
        }
        _ => g,
    }
}

/// Checks that `action` is a homomorphism from `acting` into `Aut(normal)`.
pub(crate) fn check_action(
    normal: &FiniteGroup,
    acting: &FiniteGroup,
    action: &[Vec<usize>],
) -> Result<()> {
    let (nn, nk) = (normal.order(), acting.order());
    if action.len() != nk {
        return Err(Error::InvalidAction(format!(
            "{} maps given for a group of order {nk}",
            action.len()
        )));
    }
    for (k, map) in action.iter().enumerate() {
        if map.len() != nn {
            return Err(Error::InvalidAction(format!("map of element {k} has wrong length")));
        }
        let mut seen = vec![false; nn];
        for &x in map {
            if x >= nn || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidAction(format!("map of element {k} is not bijective")));
            }
        }
        for x in 0..nn {
            for y in 0..nn {
                if map[normal.mul(x, y)] != normal.mul(map[x], map[y]) {
                    return Err(Error::InvalidAction(format!(
                        "map of element {k} does not respect ({x}, {y})"
                    )));
                }
            }
        }
    }
    if action[0].iter().enumerate().any(|(i, &x)| i != x) {
        return Err(Error::InvalidAction("identity does not act trivially".into()));
    }
    for g in 0..nk {
        for h in 0..nk {
            let gh = acting.mul(g, h);
            if (0..nn).any(|x| action[gh][x] != action[g][action[h][x]]) {
                return Err(Error::InvalidAction(format!(
                    "action is not a homomorphism at ({g}, {h})"
                )));
            }
        }
    }
    Ok(())
}

fn semidirect(normal: &FiniteGroup, acting: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroup> {
    check_action(normal, acting, action)?;
    let (nn, nk) = (normal.order(), acting.order());
    let n = nn * nk;
    let mut table = vec![0; n * n];
    for x in 0..n {
        let (xn, xk) = (x % nn, x / nn);
        for y in 0..n {
            let (yn, yk) = (y % nn, y / nn);
            table[x * n + y] = normal.mul(xn, action[xk][yn]) + nn * acting.mul(xk, yk);
        }
    }
    FiniteGroup::from_table_unchecked_assoc(n, table)
}

fn extension(b: &ExtensionCocycle) -> Result<FiniteGroup> {
    b.validate()?;
    let act = b.action();
    let (a, k) = (act.abelian(), act.acting());
    let (na, nk) = (a.order(), k.order());
    let n = na * nk;
    let mut table = vec![0; n * n];
    for x in 0..n {
        let (xa, xk) = (x % na, x / na);
        for y in 0..n {
            let (ya, yk) = (y % na, y / na);
            let s = a.add(a.add(xa, act.apply(xk, ya)), b.value(xk, yk));
            table[x * n + y] = s + na * k.mul(xk, yk);
        }
    }
    FiniteGroup::from_table_unchecked_assoc(n, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = build_group(&GroupSpec::Cyclic(1)).unwrap();
        assert_eq!(g.order(), 1);
        g.validate().unwrap();
    }

    #[test]
    fn constructors_satisfy_axioms() {
        for spec in [
            GroupSpec::Cyclic(7),
            GroupSpec::Dihedral(8),
            GroupSpec::Dihedral(12),
            GroupSpec::Symmetric(3),
            GroupSpec::Symmetric(4),
            GroupSpec::Quaternion8,
            GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Dihedral(8)),
        ] {
            let g = build_group(&spec).unwrap();
            g.validate().unwrap();
        }
    }

    #[test]
    fn orders_multiply() {
        let g = build_group(&GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Dihedral(8))).unwrap();
        assert_eq!(g.order(), 16);
        assert!(!g.is_abelian());
        assert_eq!(build_group(&GroupSpec::Symmetric(5)).unwrap().order(), 120);
    }

    #[test]
    fn semidirect_rejects_non_automorphism() {
        let bad = GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Cyclic(3)),
            acting: Box::new(GroupSpec::Cyclic(2)),
            action: vec![vec![0, 1, 2], vec![0, 1, 1]],
        };
        assert!(matches!(build_group(&bad), Err(Error::InvalidAction(_))));
        let not_hom = GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Cyclic(3)),
            acting: Box::new(GroupSpec::Cyclic(3)),
            action: vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1]],
        };
        assert!(matches!(build_group(&not_hom), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn sign_of_permutations() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
