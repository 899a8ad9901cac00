use crate::output::{join, yes_no, Record, Report};
use crate::{Cli, Command, Failure};
use cocycle_lab::abelian::{
    form_to_cocycle, generated_action, h2_fg_abelian, is_k_coboundary, k_invariant_classes, parse_action,
    search_monoidal_pairs, tau, write_action, AbelianGroup, KAction, SearchConfig,
};
use cocycle_lab::algebra::{embed_dual_cocycle, r_matrix, slice_span};
use cocycle_lab::cohomology::{
    dual_h2_report, h2_classes_with, is_central_type, is_nondegenerate, parse_cocycle_file, twisted_center_dim,
    Cocycle, H2Options, DEFAULT_H2_BOUND,
};
use cocycle_lab::fusion::{
    amenability_report, certify_pair, character_table, fusion_ring_of_group, su2_ring, AmenabilityParams,
    DimensionFunction, FusionRing, Measure,
};
use cocycle_lab::group::{
    catalog, center, conjugacy_classes, derived_subgroup, parse_group, write_group, FiniteGroup, Subgroup,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

const DEFAULT_SCAN_ORDER: u64 = 36;
const DEFAULT_SUBGROUP_BOUND: usize = 64;
const DEFAULT_RETURN_STEPS: usize = 20;
/// Chains used for seeded random τ instances.
const RANDOM_CHAINS: &[&[u64]] = &[&[2, 2], &[3, 3], &[2, 4], &[2, 2, 2], &[4, 4], &[2, 2, 2, 2]];

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Paths inside action and cocycle files are relative to the file.
fn relative_to(file: &Path, target: &str) -> PathBuf {
    let t = Path::new(target);
    if t.is_absolute() || target.starts_with("catalog:") {
        t.to_path_buf()
    } else {
        file.parent().unwrap_or(Path::new(".")).join(t)
    }
}

fn load_group(spec: &str) -> Result<FiniteGroup, Failure> {
    match spec.strip_prefix("catalog:") {
        Some(name) => catalog::lookup(name).map_err(|e| Failure::Usage(format!("{spec}: {e}"))),
        None => parse_group(&read(Path::new(spec))?).map_err(|e| Failure::Domain(format!("{spec}: {e}"))),
    }
}

fn group_label(spec: &str) -> String {
    spec.strip_prefix("catalog:").unwrap_or(spec).to_string()
}

/// Every file a command reads, with contents, for the cache key.
pub fn input_files(cmd: &Command) -> Result<Vec<(String, Vec<u8>)>, Failure> {
    let mut paths: Vec<PathBuf> = Vec::new();
    let group = |s: &Option<String>, paths: &mut Vec<PathBuf>| {
        if let Some(s) = s {
            if !s.starts_with("catalog:") && !s.starts_with("su2:") {
                paths.push(PathBuf::from(s));
            }
        }
    };
    match cmd {
        Command::Group { group: g, .. }
        | Command::DualH2 { group: g }
        | Command::Slices { group: g, .. }
        | Command::Chartab { group: g } => group(&Some(g.clone()), &mut paths),
        Command::H2 { group: g, cocycle } => {
            group(g, &mut paths);
            if let Some(c) = cocycle {
                let file = parse_cocycle_file(&read(c)?)?;
                paths.push(c.clone());
                group(&Some(relative_to(c, &file.group_path).display().to_string()), &mut paths);
            }
        }
        Command::ScanCtfg { group: g } => group(g, &mut paths),
        Command::Fusion { group: g, compare } => {
            group(&Some(g.clone()), &mut paths);
            group(compare, &mut paths);
        }
        Command::Amen { ring, .. } => group(&Some(ring.clone()), &mut paths),
        Command::Tau { action: Some(a), .. } => {
            let file = parse_action(&read(a)?)?;
            paths.push(a.clone());
            group(&Some(relative_to(a, &file.group_path).display().to_string()), &mut paths);
        }
        Command::Tau { action: None, .. } | Command::Pair { .. } | Command::CenterH2 { .. } => {}
    }
    paths
        .into_iter()
        .map(|p| {
            let bytes = fs::read(&p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            Ok((p.display().to_string(), bytes))
        })
        .collect()
}

fn h2_options(cli: &Cli) -> H2Options {
    H2Options {
        bound: cli.global.max_order.map_or(DEFAULT_H2_BOUND, |m| m as usize),
        ..Default::default()
    }
}

pub fn execute(cli: &Cli) -> Result<Report, Failure> {
    let mut rep = Report::default();
    match &cli.command {
        Command::Group { group, dump } => cmd_group(&mut rep, group, *dump)?,
        Command::H2 { group, cocycle } => cmd_h2(&mut rep, cli, group.as_deref(), cocycle.as_deref())?,
        Command::ScanCtfg { group } => cmd_scan(&mut rep, cli, group.as_deref())?,
        Command::DualH2 { group } => cmd_dual_h2(&mut rep, cli, group)?,
        Command::Tau { action, form } => cmd_tau(&mut rep, cli, action.as_deref(), *form)?,
        Command::Pair { out } => cmd_pair(&mut rep, cli, out.as_deref())?,
        Command::Slices { group, class } => cmd_slices(&mut rep, cli, group, *class)?,
        Command::Chartab { group } => cmd_chartab(&mut rep, group)?,
        Command::Fusion { group, compare } => cmd_fusion(&mut rep, group, compare.as_deref())?,
        Command::Amen {
            ring,
            measure,
            truncations,
        } => cmd_amen(&mut rep, cli, ring, measure, truncations)?,
        Command::CenterH2 { rank, torsion } => {
            let h = h2_fg_abelian(*rank, torsion)?;
            rep.push(
                Record::new("center-h2")
                    .field("torus_rank", h.torus_rank)
                    .field("finite", join(&h.finite))
                    .field("finite_order", h.finite_order())
                    .field("trivial", yes_no(h.is_trivial())),
            );
        }
    }
    Ok(rep)
}

fn cmd_group(rep: &mut Report, spec: &str, dump: bool) -> Result<(), Failure> {
    let g = load_group(spec)?;
    if dump {
        rep.set_raw(write_group(&g));
        return Ok(());
    }
    let mut orders = std::collections::BTreeMap::new();
    for x in 0..g.order() {
        *orders.entry(g.element_order(x)).or_insert(0usize) += 1;
    }
    let stats: Vec<String> = orders.iter().map(|(o, c)| format!("{o}^{c}")).collect();
    rep.push(
        Record::new("group")
            .field("name", group_label(spec))
            .field("order", g.order())
            .field("abelian", yes_no(g.is_abelian()))
            .field("exponent", g.exponent())
            .field("classes", conjugacy_classes(&g).len())
            .field("center", center(&g).order())
            .field("derived", derived_subgroup(&g).order())
            .field("element_orders", stats.join(",")),
    );
    Ok(())
}

fn cmd_h2(rep: &mut Report, cli: &Cli, group: Option<&str>, cocycle: Option<&Path>) -> Result<(), Failure> {
    let opts = h2_options(cli);
    let (g, file) = match cocycle {
        Some(path) => {
            let file = parse_cocycle_file(&read(path)?)?;
            let gpath = relative_to(path, &file.group_path).display().to_string();
            (Arc::new(load_group(group.unwrap_or(&gpath))?), Some(file))
        }
        None => (Arc::new(load_group(group.expect("clap requires --group"))?), None),
    };
    let set = h2_classes_with(g.clone(), &opts)?;
    let order = set.order();
    rep.push(
        Record::new("h2")
            .field("group_order", g.order())
            .field("invariants", join(set.invariants()))
            .field("order", &order)
            .field("trivial", yes_no(order == 1u32.into()))
            .field("modulus", set.modulus())
            .field("cocycles", set.cocycle_count())
            .field("t_coboundaries", set.t_coboundary_count()),
    );
    if let Some(t) = set.transversal() {
        for (i, c) in t.iter().enumerate() {
            rep.push(
                Record::new("class")
                    .field("index", i)
                    .field("nondegenerate", yes_no(is_nondegenerate(c)))
                    .field("vector", join(&set.canonical_vector(c)?)),
            );
        }
    }
    if let Some(file) = file {
        // lift into the coefficient ring of the class set
        let c = Cocycle::new(g.clone(), file.modulus, file.table)?
            .minimal_modulus()
            .with_modulus(set.modulus())?;
        rep.push(
            Record::new("cocycle")
                .field("class", set.class_of(&c)?)
                .field("nondegenerate", yes_no(is_nondegenerate(&c)))
                .field("twisted_center_dim", twisted_center_dim(&c)),
        );
    }
    Ok(())
}

fn cmd_scan(rep: &mut Report, cli: &Cli, group: Option<&str>) -> Result<(), Failure> {
    let opts = h2_options(cli);
    let targets: Vec<String> = match group {
        Some(g) => vec![g.to_string()],
        None => {
            let bound = cli.global.max_order.unwrap_or(DEFAULT_SCAN_ORDER) as usize;
            catalog::standard_names()
                .into_iter()
                .filter(|n| catalog::lookup(n).map(|g| g.order() <= bound).unwrap_or(false))
                .map(|n| format!("catalog:{n}"))
                .collect()
        }
    };
    let mut hits = 0;
    for spec in &targets {
        let g = load_group(spec)?;
        let ct = is_central_type(&g, &opts).map_err(|e| Failure::Domain(format!("{spec}: {e}")))?;
        hits += ct as usize;
        rep.push(
            Record::new("group")
                .field("name", group_label(spec))
                .field("order", g.order())
                .field("central-type", yes_no(ct)),
        );
    }
    rep.push(Record::new("summary").field("groups", targets.len()).field("central_type", hits));
    Ok(())
}

fn cmd_dual_h2(rep: &mut Report, cli: &Cli, spec: &str) -> Result<(), Failure> {
    let g = load_group(spec)?;
    let bound = cli.global.max_order.map_or(DEFAULT_SUBGROUP_BOUND, |m| m as usize);
    let r = dual_h2_report(&g, bound, &h2_options(cli))?;
    for e in &r.entries {
        rep.push(
            Record::new("subgroup")
                .field("elements", join(e.subgroup.elements()))
                .field("order", e.subgroup.order())
                .field("h2_order", e.h2_order)
                .field("nondegenerate", e.nondegenerate)
                .field("orbits", e.orbits),
        );
    }
    rep.push(Record::new("total").field("classes", r.total));
    Ok(())
}

fn random_action(seed: u64) -> Result<Arc<KAction>, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let a = AbelianGroup::new(RANDOM_CHAINS.choose(&mut rng).expect("nonempty").to_vec())?;
        let auts = a.automorphisms();
        let gens: Vec<Vec<usize>> =
            (0..rng.gen_range(1..=2)).map(|_| auts.choose(&mut rng).expect("identity").clone()).collect();
        if let Ok(act) = generated_action(&a, &gens, 24) {
            return Ok(act);
        }
    }
    Err(Failure::Domain("no random action found within 1000 draws".into()))
}

fn cmd_tau(rep: &mut Report, cli: &Cli, action: Option<&Path>, form: Option<usize>) -> Result<(), Failure> {
    let act = match action {
        Some(path) => {
            let file = parse_action(&read(path)?)?;
            let k = load_group(&relative_to(path, &file.group_path).display().to_string())?;
            Arc::new(KAction::new(Arc::new(k), AbelianGroup::new(file.factors)?, file.table)?)
        }
        None => random_action(cli.global.seed)?,
    };
    let forms = k_invariant_classes(&act);
    let idx = match form {
        Some(i) if i < forms.len() => i,
        Some(i) => return Err(Failure::Usage(format!("form index {i} out of range (0..{})", forms.len()))),
        None => forms.iter().position(|f| f.is_nondegenerate()).unwrap_or(forms.len() - 1),
    };
    let f = &forms[idx];
    let b = tau(&act, &form_to_cocycle(f))?;
    rep.push(
        Record::new("action")
            .field("k_order", act.acting().order())
            .field("a_factors", join(act.abelian().factors()))
            .field("invariant_forms", forms.len()),
    );
    rep.push(
        Record::new("form")
            .field("index", idx)
            .field("upper", join(f.upper()))
            .field("nondegenerate", yes_no(f.is_nondegenerate())),
    );
    rep.push(
        Record::new("tau")
            .field("table", join(b.table()))
            .field("coboundary", yes_no(is_k_coboundary(&b))),
    );
    Ok(())
}

fn cmd_pair(rep: &mut Report, cli: &Cli, out: Option<&Path>) -> Result<(), Failure> {
    let mut cfg = SearchConfig::default();
    if let Some(m) = cli.global.max_order {
        cfg.max_a_order = m as usize;
    }
    if let Some(b) = cli.global.budget {
        cfg.budget = b as usize;
    }
    let found = search_monoidal_pairs(&cfg)?;
    let p = &found.pair;
    let check = certify_pair(&p.g1, &p.g2)?;
    rep.push(
        Record::new("search")
            .field("examined", found.examined)
            .field("group_order", p.g1.order()),
    );
    rep.push(Record::new("certificate").fields(p.certificate.record()));
    rep.push(
        Record::new("check")
            .field("groups_isomorphic", yes_no(check.groups_isomorphic))
            .field("degrees_equal", yes_no(check.degrees_equal))
            .field("fusion_isomorphic", yes_no(check.fusion_isomorphic))
            .field("witness", check.witness.as_deref().map_or("-".into(), join)),
    );
    if let Some(dir) = out {
        let write = |name: &str, text: String| {
            fs::write(dir.join(name), text).map_err(|e| Failure::Usage(format!("cannot write {name}: {e}")))
        };
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
        write("g1.grp", write_group(&p.g1))?;
        write("g2.grp", write_group(&p.g2))?;
        write("k.grp", write_group(p.certificate.action.acting()))?;
        write("action.txt", write_action(&p.certificate.action, "k.grp"))?;
    }
    Ok(())
}

fn cmd_slices(rep: &mut Report, cli: &Cli, spec: &str, class: usize) -> Result<(), Failure> {
    let g = Arc::new(load_group(spec)?);
    let set = h2_classes_with(g.clone(), &h2_options(cli))?;
    let t = set
        .transversal()
        .ok_or_else(|| Failure::Domain("H² too large for a transversal".into()))?;
    let c = t
        .get(class)
        .ok_or_else(|| Failure::Usage(format!("class index {class} out of range (0..{})", t.len())))?;
    let f = embed_dual_cocycle(&g, &Subgroup::whole(&g), c)?;
    let s = slice_span(&r_matrix(&f)?)?;
    rep.push(
        Record::new("slices")
            .field("class", class)
            .field("rank", s.rank)
            .field("group_order", g.order())
            .field("support", join(s.support.elements()))
            .field("left_equals_right", yes_no(s.left_equals_right))
            .field("nondegenerate", yes_no(is_nondegenerate(c))),
    );
    Ok(())
}

fn cmd_chartab(rep: &mut Report, spec: &str) -> Result<(), Failure> {
    let g = load_group(spec)?;
    let t = character_table(&g)?;
    rep.push(
        Record::new("table")
            .field("classes", t.len())
            .field("conductor", t.field().conductor())
            .field("prime", t.prime()),
    );
    for (i, cl) in t.classes().iter().enumerate() {
        rep.push(
            Record::new("class")
                .field("index", i)
                .field("size", cl.len())
                .field("representative", cl[0])
                .field("element_order", g.element_order(cl[0])),
        );
    }
    for (i, row) in t.values().iter().enumerate() {
        let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        rep.push(
            Record::new("character")
                .field("index", i)
                .field("degree", t.degrees()[i])
                .field("values", vals.join(" ; ")),
        );
    }
    Ok(())
}

fn push_ring(rep: &mut Report, r: &FusionRing, d: &DimensionFunction) -> Result<(), Failure> {
    for i in 0..r.size() {
        rep.push(
            Record::new("label")
                .field("index", i)
                .field("dimension", d.get(i))
                .field("dual", r.dual(i)),
        );
    }
    for i in 0..r.size() {
        for j in 0..r.size() {
            let terms: Vec<String> = r.product(i, j)?.iter().map(|(k, m)| format!("{m}*{k}")).collect();
            rep.push(Record::new("rule").field("i", i).field("j", j).field("product", terms.join("+")));
        }
    }
    Ok(())
}

fn cmd_fusion(rep: &mut Report, spec: &str, compare: Option<&str>) -> Result<(), Failure> {
    let g = load_group(spec)?;
    match compare {
        None => {
            let (r, d) = fusion_ring_of_group(&g)?;
            rep.push(Record::new("ring").field("group", group_label(spec)).field("rank", r.size()));
            push_ring(rep, &r, &d)?;
        }
        Some(other) => {
            let h = load_group(other)?;
            let check = certify_pair(&g, &h)?;
            rep.push(
                Record::new("compare")
                    .field("first", group_label(spec))
                    .field("second", group_label(other))
                    .field("groups_isomorphic", yes_no(check.groups_isomorphic))
                    .field("degrees_equal", yes_no(check.degrees_equal))
                    .field("fusion_isomorphic", yes_no(check.fusion_isomorphic))
                    .field("witness", check.witness.as_deref().map_or("-".into(), join)),
            );
        }
    }
    Ok(())
}

fn cmd_amen(rep: &mut Report, cli: &Cli, ring: &str, measure: &str, truncations: &[usize]) -> Result<(), Failure> {
    let (r, d) = match ring.strip_prefix("su2:") {
        Some(b) => {
            let bound: usize = b
                .parse()
                .map_err(|_| Failure::Usage(format!("bad truncation bound in `{ring}`")))?;
            su2_ring(bound)
        }
        None => fusion_ring_of_group(&load_group(ring)?)?,
    };
    let mu: Measure = measure.parse().map_err(|e: cocycle_lab::Error| Failure::Usage(e.to_string()))?;
    if truncations.iter().any(|&n| n == 0) {
        return Err(Failure::Usage("truncation sizes must be positive".into()));
    }
    let params = AmenabilityParams {
        truncations: truncations.to_vec(),
        return_steps: cli.global.budget.map_or(DEFAULT_RETURN_STEPS, |b| b as usize),
    };
    let a = amenability_report(&r, &d, &mu, &params)?;
    rep.push(
        Record::new("measure")
            .field("ring", ring)
            .field("support", mu.to_string().replace(' ', ","))
            .field("symmetric", yes_no(a.symmetric_measure)),
    );
    for (n, x) in &a.norms {
        rep.push(Record::new("norm").field("N", n).field("value", format!("{x:.12}")));
    }
    for (j, x, dj) in &a.generator_norms {
        rep.push(
            Record::new("generator")
                .field("label", j)
                .field("norm", format!("{x:.12}"))
                .field("dimension", dj),
        );
    }
    for s in &a.returns {
        rep.push(
            Record::new("return")
                .field("n", s.n)
                .field("value", &s.value)
                .field("root", format!("{:.12}", s.root)),
        );
    }
    rep.push(
        Record::new("verdict")
            .field("label", a.verdict.label())
            .field("lower_bounds", yes_no(a.norms_are_lower_bounds))
            .field("dimension_ok", yes_no(a.dimension_ok))
            .field("contraction_ok", yes_no(a.contraction_ok))
            .field("returns_cut_at", a.returns_cut_at.map_or("-".into(), |n| n.to_string())),
    );
    Ok(())
}
