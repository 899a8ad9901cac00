use super::FiniteGroup;
use crate::error::{Error, Result};

/// Parses the group file format:
///
/// ```text
/// order 2
/// 0 1
/// 1 0
/// # label 1 s
/// ```
pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (ln, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let order: usize = first
        .trim()
        .strip_prefix("order")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: ln + 1,
            msg: "expected `order n`".into(),
        })?;
    let mut table = Vec::with_capacity(order * order);
    let mut labels: Vec<Option<String>> = vec![None; order];
    let mut rows = 0;
    for (ln, line) in lines {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            let mut parts = rest.split_whitespace();
            if parts.next() != Some("label") {
                continue;
            }
            let idx: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .filter(|&i| i < order)
                .ok_or_else(|| Error::Parse {
                    line: ln + 1,
                    msg: "bad label index".into(),
                })?;
            let name = parts.collect::<Vec<_>>().join(" ");
            labels[idx] = Some(name);
            continue;
        }
        if rows == order {
            return Err(Error::Parse {
                line: ln + 1,
                msg: "more table rows than the order".into(),
            });
        }
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse {
                line: ln + 1,
                msg: format!("{e}"),
            })?;
        if row.len() != order {
            return Err(Error::Parse {
                line: ln + 1,
                msg: format!("row has {} entries, expected {order}", row.len()),
            });
        }
        table.extend(row);
        rows += 1;
    }
    if rows != order {
        return Err(Error::Parse {
            line: rows + 2,
            msg: format!("found {rows} rows, expected {order}"),
        });
    }
    let g = FiniteGroup::from_table(order, table)?;
    if labels.iter().all(Option::is_some) {
        Ok(g.with_labels(labels.into_iter().map(Option::unwrap).collect()))
    } else {
        Ok(g)
    }
}

pub fn write_group(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = format!("order {n}\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(labels) = g.labels() {
        for (i, l) in labels.iter().enumerate() {
            out.push_str(&format!("# label {i} {}\n", l.trim()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    #[test]
    fn round_trip() {
        for spec in [GroupSpec::Symmetric(3), GroupSpec::Cyclic(5), GroupSpec::Quaternion8] {
            let g = build_group(&spec).unwrap();
            let text = write_group(&g);
            assert!(text.lines().all(|l| l == l.trim_end()));
            let h = parse_group(&text).unwrap();
            assert_eq!(g, h);
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_group("").is_err());
        assert!(parse_group("order 2\n0 1\n").is_err());
        assert!(parse_group("order 2\n0 1\n1 1\n").is_err());
        assert!(matches!(parse_group("ord 2\n"), Err(Error::Parse { line: 1, .. })));
    }
}
