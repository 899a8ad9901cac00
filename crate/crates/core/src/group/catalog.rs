//! Named groups.
//!
//! A name is a product of factors joined by `x`: `c<n>` cyclic, `d<2n>`
//! dihedral of order `2n`, `s<n>` symmetric, `q8`, `a4`, and `c3:s3` where
//! `S3` acts on `C3` through the sign. Example: `c2xc3:s3` has order 36.

use super::{build_group, FiniteGroup, GroupSpec};
use crate::abelian::invariant_chains;
use crate::error::{Error, Result};

fn atom(name: &str) -> Result<GroupSpec> {
    let bad = || Error::InvalidSpec(format!("unknown catalog factor `{name}`"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    Ok(match name {
        "q8" => GroupSpec::Quaternion8,
        "a4" => a4(),
        "c3:s3" => c3_by_s3(),
        _ if name.starts_with('c') => GroupSpec::Cyclic(num(&name[1..])?),
        _ if name.starts_with('d') => GroupSpec::Dihedral(num(&name[1..])?),
        _ if name.starts_with('s') => GroupSpec::Symmetric(num(&name[1..])?),
        _ => return Err(bad()),
    })
}

/// `C2^2 ⋊ C3`, the generator cycling the three involutions.
pub fn a4() -> GroupSpec {
    GroupSpec::Semidirect {
        normal: Box::new(GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(2))),
        acting: Box::new(GroupSpec::Cyclic(3)),
        action: vec![vec![0, 1, 2, 3], vec![0, 2, 3, 1], vec![0, 3, 1, 2]],
    }
}

/// `C3 ⋊ S3` with odd permutations inverting `C3`.
pub fn c3_by_s3() -> GroupSpec {
    let s3 = build_group(&GroupSpec::Symmetric(3)).expect("S3");
    let perms: Vec<Vec<usize>> = s3
        .labels()
        .expect("symmetric groups carry labels")
        .iter()
        .map(|l| l.bytes().map(|b| (b - b'1') as usize).collect())
        .collect();
    let action = perms
        .iter()
        .map(|p| {
            if super::build::permutation_sign(p) == 1 {
                vec![0, 1, 2]
            } else {
                vec![0, 2, 1]
            }
        })
        .collect();
    GroupSpec::Semidirect {
        normal: Box::new(GroupSpec::Cyclic(3)),
        acting: Box::new(GroupSpec::Symmetric(3)),
        action,
    }
}

pub fn spec(name: &str) -> Result<GroupSpec> {
    let name = name.trim().to_ascii_lowercase();
    let mut factors = name.split('x').map(atom);
    let first = factors
        .next()
        .ok_or_else(|| Error::InvalidSpec("empty catalog name".into()))??;
    factors.try_fold(first, |acc, f| Ok(GroupSpec::product(acc, f?)))
}

pub fn lookup(name: &str) -> Result<FiniteGroup> {
    build_group(&spec(name)?)
}

/// Name of the abelian group with the given invariant factors.
pub fn abelian_name(chain: &[u64]) -> String {
    if chain.is_empty() {
        return "c1".into();
    }
    chain.iter().map(|d| format!("c{d}")).collect::<Vec<_>>().join("x")
}

/// Names of every abelian group of order at most `max_order`, by order.
pub fn abelian_names(max_order: usize) -> Vec<String> {
    (1..=max_order as u64)
        .flat_map(invariant_chains)
        .map(|c| abelian_name(&c))
        .collect()
}

/// The full test catalog: every abelian group of order at most 36, dihedral
/// groups of order at most 16, `q8`, `s3`, `s4`, `a4`, `c2xd8`, `c2xc3:s3`.
pub fn standard_names() -> Vec<String> {
    let mut names = abelian_names(36);
    names.extend((4..=16).step_by(2).map(|n| format!("d{n}")));
    names.extend(["q8", "s3", "s4", "a4", "c2xd8", "c2xc3:s3"].map(String::from));
    names
}
