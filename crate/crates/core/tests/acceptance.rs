//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use cocycle_lab::abelian::{
    alternating_classes, h2_fg_abelian, invariant_chains, search_monoidal_pairs, tau, tau_with, is_k_coboundary,
    AbelianGroup, PivotRule, SearchConfig,
};
use cocycle_lab::algebra::{embed_dual_cocycle, r_matrix, slice_span};
use cocycle_lab::cohomology::{
    dual_h2_report, h2_classes, h2_classes_with, is_central_type, is_nondegenerate, t_modulus, twisted_center_dim,
    H2Options,
};
use cocycle_lab::fusion::{
    certify_pair, character_table, fusion_ring_of_group, fusion_rings_isomorphic, lambda_matrix, multiplication_matrix,
    operator_norm, return_sequence, su2_ring, Measure,
};
use cocycle_lab::group::{are_isomorphic, catalog, FiniteGroup, Subgroup};
use common::*;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Closed-form norm agreement for the SU(2) path graph.
const PATH_NORM_TOL: f64 = 1e-9;
/// Group-ring norms are exactly 1.
const GROUP_RING_NORM_TOL: f64 = 1e-12;
/// Contraction slack.
const CONTRACTION_TOL: f64 = 1e-9;
/// Bracket for the 100th root of `C_100 / 4^100`.
const ROOT_100_RANGE: (f64, f64) = (0.92, 0.94);
const TAU_INSTANCES: usize = 200;
const SEED: u64 = 0x5eed_c0c1;

const BUDGET_CATALOG: Duration = Duration::from_secs(600);
const BUDGET_ORDER_36: Duration = Duration::from_secs(1800);
const BUDGET_PAIR: Duration = Duration::from_secs(3600);

type Outcome = Result<String, String>;

fn opts() -> H2Options {
    H2Options {
        bound: 36,
        ..Default::default()
    }
}

fn is_square(n: usize) -> bool {
    let r = (n as f64).sqrt().round() as usize;
    r * r == n
}

fn chain_of(name: &str) -> Option<Vec<u64>> {
    if name == "c1" {
        return Some(vec![]);
    }
    name.split('x')
        .map(|p| p.strip_prefix('c').and_then(|d| d.parse().ok()))
        .collect()
}

fn c1_square_order() -> Outcome {
    let start = Instant::now();
    let mut ctfg = Vec::new();
    for name in catalog::standard_names() {
        let g = catalog::lookup(&name).map_err(|e| e.to_string())?;
        if is_central_type(&g, &opts()).map_err(|e| format!("{name}: {e}"))? {
            if !is_square(g.order()) {
                return Err(format!("{name} is of central type with order {}", g.order()));
            }
            ctfg.push(name);
        }
    }
    let t = start.elapsed();
    if t > BUDGET_CATALOG {
        return Err(format!("catalog scan took {t:?}"));
    }
    Ok(format!("{} groups of central type, all of square order, {t:.1?}", ctfg.len()))
}

fn c2_abelian_classification() -> Outcome {
    let mut checked = 0;
    for name in catalog::abelian_names(36) {
        let chain = chain_of(&name).ok_or(format!("unparsed name {name}"))?;
        // G ≅ H × H iff every invariant factor occurs an even number of times
        let mut counts = std::collections::BTreeMap::new();
        for d in &chain {
            *counts.entry(*d).or_insert(0) += 1;
        }
        let expected = counts.values().all(|c| c % 2 == 0);
        let g = catalog::lookup(&name).map_err(|e| e.to_string())?;
        let got = is_central_type(&g, &opts()).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("{name}: central type {got}, expected {expected}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} abelian groups agree"))
}

fn c3_minimal_nonabelian() -> Outcome {
    let mut small = 0;
    for name in catalog::standard_names() {
        let g = catalog::lookup(&name).map_err(|e| e.to_string())?;
        if !g.is_abelian() && g.order() < 16 {
            if is_central_type(&g, &opts()).map_err(|e| e.to_string())? {
                return Err(format!("{name} of order {} is of central type", g.order()));
            }
            small += 1;
        }
    }
    let c2d8 = catalog::lookup("c2xd8").map_err(|e| e.to_string())?;
    if !is_central_type(&c2d8, &opts()).map_err(|e| e.to_string())? {
        return Err("c2xd8 is not of central type".into());
    }
    let start = Instant::now();
    let g36 = catalog::lookup("c2xc3:s3").map_err(|e| e.to_string())?;
    if !is_central_type(&g36, &opts()).map_err(|e| e.to_string())? {
        return Err("c2xc3:s3 is not of central type".into());
    }
    let t = start.elapsed();
    if t > BUDGET_ORDER_36 {
        return Err(format!("order-36 check took {t:?}"));
    }
    Ok(format!("{small} small nonabelian groups fail; c2xd8 and c2xc3:s3 pass ({t:.1?})"))
}

fn c4_three_way() -> Outcome {
    let mut classes = 0;
    let mut slices = 0;
    for name in catalog::standard_names() {
        let g = catalog::lookup(&name).map_err(|e| e.to_string())?;
        if g.order() > 16 {
            continue;
        }
        let set = h2_classes(&g).map_err(|e| e.to_string())?;
        for c in set.transversal().ok_or("missing transversal")? {
            let crit = is_nondegenerate(c);
            if crit != (twisted_center_dim(c) == 1) {
                return Err(format!("{name}: criterion and twisted center disagree"));
            }
            classes += 1;
        }
        if g.is_abelian() {
            // the cocycle lives on the standard model of the group, viewed as the dual
            let (std_model, _) = AbelianGroup::decompose(&g, &Subgroup::whole(&g)).map_err(|e| e.to_string())?;
            let model = Arc::new(std_model.to_group());
            let set = h2_classes_with(model.clone(), &opts()).map_err(|e| e.to_string())?;
            for c in set.transversal().ok_or("missing transversal")? {
                let f = embed_dual_cocycle(&model, &Subgroup::whole(&model), c).map_err(|e| e.to_string())?;
                let r = r_matrix(&f).map_err(|e| e.to_string())?;
                let rank = slice_span(&r).map_err(|e| e.to_string())?.rank;
                if is_nondegenerate(c) != (rank == model.order()) {
                    return Err(format!("{name}: slice rank {rank} disagrees with the criterion"));
                }
                slices += 1;
            }
        }
    }
    Ok(format!("{classes} classes agree with the twisted center, {slices} abelian classes with slice ranks"))
}

fn c5_dual_h2_abelian() -> Outcome {
    let mut parts = Vec::new();
    for (name, chain) in [("c2", vec![2u64]), ("c4", vec![4]), ("c2xc2", vec![2, 2]), ("c2xc2xc2", vec![2, 2, 2])] {
        let g = catalog::lookup(name).map_err(|e| e.to_string())?;
        let rep = dual_h2_report(&g, 64, &opts()).map_err(|e| e.to_string())?;
        let expected = alternating_count(&chain) as usize;
        let enumerated = alternating_classes(&AbelianGroup::new(chain).map_err(|e| e.to_string())?).len();
        if rep.total != expected || enumerated != expected {
            return Err(format!("{name}: total {}, forms {enumerated}, expected {expected}", rep.total));
        }
        parts.push(format!("{name}={}", rep.total));
    }
    Ok(parts.join(" "))
}

fn c6_tau_pipeline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let auts: Vec<(AbelianGroup, Vec<Vec<usize>>)> = TAU_CHAINS
        .iter()
        .map(|c| {
            let a = AbelianGroup::new(c.to_vec()).expect("valid chain");
            let auts = a.automorphisms();
            (a, auts)
        })
        .collect();
    let mut done = 0;
    let mut nontrivial = 0;
    let mut attempts = 0;
    while done < TAU_INSTANCES {
        attempts += 1;
        if attempts > 50 * TAU_INSTANCES {
            return Err(format!("only {done} instances generated"));
        }
        let Some(inst) = random_tau_instance(&mut rng, &auts, 24) else {
            continue;
        };
        let b = tau(&inst.action, &inst.cocycle).map_err(|e| format!("instance {done}: {e}"))?;
        if !membership_holds(&inst, &b) {
            return Err(format!("instance {done}: membership fails"));
        }
        if !k_cocycle_identity(&b) {
            return Err(format!("instance {done}: cocycle identity fails"));
        }
        if !extension_associative(&b, &mut rng, 4000) {
            return Err(format!("instance {done}: extension is not associative"));
        }
        for rule in [PivotRule::Reversed, PivotRule::Shuffled(rng.gen())] {
            let other = tau_with(&inst.action, &inst.cocycle, rule).map_err(|e| e.to_string())?;
            if !is_k_coboundary(&other.sub(&b).map_err(|e| e.to_string())?) {
                return Err(format!("instance {done}: solver variants differ by a non-coboundary"));
            }
        }
        if !is_k_coboundary(&b) {
            nontrivial += 1;
        }
        done += 1;
    }
    // random small K rarely yields a non-split τ; add the one behind the pair search
    let cert = search_monoidal_pairs(&SearchConfig::default()).map_err(|e| e.to_string())?.pair.certificate;
    let inst = TauInstance {
        action: cert.action.clone(),
        cocycle: cert.cocycle.clone(),
    };
    let b = tau(&inst.action, &inst.cocycle).map_err(|e| e.to_string())?;
    if is_k_coboundary(&b) || !membership_holds(&inst, &b) || !k_cocycle_identity(&b) {
        return Err("non-split instance fails".into());
    }
    if !extension_associative(&b, &mut rng, 20_000) {
        return Err("non-split extension is not associative".into());
    }
    nontrivial += 1;
    Ok(format!("{done} random instances pass ({nontrivial} non-split including the search instance)"))
}

fn c7_monoidal_pair() -> Outcome {
    let start = Instant::now();
    let out = search_monoidal_pairs(&SearchConfig::default()).map_err(|e| e.to_string())?;
    let p = &out.pair;
    let check = certify_pair(&p.g1, &p.g2).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    if p.certificate.isomorphic || check.groups_isomorphic {
        return Err("the groups are isomorphic".into());
    }
    if !p.certificate.premise_verified {
        return Err("premise b2 - b1 = τ(c) not verified".into());
    }
    if !check.degrees_equal || !check.fusion_isomorphic {
        return Err(format!(
            "degrees equal {}, fusion rings isomorphic {}",
            check.degrees_equal, check.fusion_isomorphic
        ));
    }
    if t > BUDGET_PAIR {
        return Err(format!("search took {t:?}"));
    }
    Ok(format!(
        "|G| = {}, |A| = {}, |K| = {} after {} candidates ({t:.1?})",
        p.g1.order(),
        p.certificate.action.abelian().order(),
        p.certificate.action.acting().order(),
        out.examined
    ))
}

fn c8_fusion_sanity() -> Outcome {
    let d8 = catalog::lookup("d8").map_err(|e| e.to_string())?;
    let q8 = catalog::lookup("q8").map_err(|e| e.to_string())?;
    let (r1, f1) = fusion_ring_of_group(&d8).map_err(|e| e.to_string())?;
    let (r2, f2) = fusion_ring_of_group(&q8).map_err(|e| e.to_string())?;
    if fusion_rings_isomorphic(&r1, &f1, &r2, &f2).is_none() || are_isomorphic(&d8, &q8).is_some() {
        return Err("d8 / q8 comparison fails".into());
    }
    let mut tables = 0;
    for name in catalog::standard_names() {
        let g = catalog::lookup(&name).map_err(|e| e.to_string())?;
        let t = character_table(&g).map_err(|e| format!("{name}: {e}"))?;
        t.verify().map_err(|e| format!("{name}: {e}"))?;
        let (r, d) = fusion_ring_of_group(&g).map_err(|e| format!("{name}: {e}"))?;
        r.verify().map_err(|e| format!("{name}: {e}"))?;
        d.verify(&r).map_err(|e| format!("{name}: {e}"))?;
        tables += 1;
    }
    Ok(format!("d8 ~ q8 as fusion rings; {tables} tables orthogonal with integral constants"))
}

fn random_measure(rng: &mut ChaCha8Rng, labels: usize) -> Measure {
    let k = rng.gen_range(1..=labels.min(4));
    let mut support = BTreeSet::new();
    while support.len() < k {
        support.insert(rng.gen_range(0..labels));
    }
    let weights: Vec<u64> = support.iter().map(|_| rng.gen_range(1..10)).collect();
    let total: u64 = weights.iter().sum();
    Measure::new(
        support
            .into_iter()
            .zip(weights)
            .map(|(i, w)| (i, BigRational::new(w.into(), total.into()))),
    )
    .expect("probability measure")
}

fn c9_amenability() -> Outcome {
    let (su2, dsu2) = su2_ring(200);
    for n in [3usize, 10, 100] {
        let x = operator_norm(&multiplication_matrix(&su2, 1, n).map_err(|e| e.to_string())?);
        let want = 2.0 * (PI / (n as f64 + 1.0)).cos();
        if (x - want).abs() > PATH_NORM_TOL {
            return Err(format!("N = {n}: norm {x}, closed form {want}"));
        }
    }
    let seq = return_sequence(&su2, &dsu2, &Measure::dirac(1), 100).map_err(|e| e.to_string())?;
    for s in &seq {
        if s.value != catalan_over_four_pow(s.n) {
            return Err(format!("return value at n = {} is {}", s.n, s.value));
        }
    }
    let root = seq[99].root;
    if !(ROOT_100_RANGE.0 < root && root < ROOT_100_RANGE.1) {
        return Err(format!("100th root {root}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst_group = 0.0f64;
    for name in catalog::standard_names() {
        let g = catalog::lookup(&name).map_err(|e| e.to_string())?;
        let (r, d) = fusion_ring_of_group(&g).map_err(|e| e.to_string())?;
        for _ in 0..3 {
            let mu = random_measure(&mut rng, r.size());
            let x = operator_norm(&lambda_matrix(&r, &d, &mu, r.size()).map_err(|e| e.to_string())?);
            worst_group = worst_group.max((x - 1.0).abs());
        }
    }
    if worst_group > GROUP_RING_NORM_TOL {
        return Err(format!("group-ring norm off by {worst_group:e}"));
    }
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let mu = random_measure(&mut rng, 12);
        let n = rng.gen_range(13..=120);
        let x = operator_norm(&lambda_matrix(&su2, &dsu2, &mu, n).map_err(|e| e.to_string())?);
        worst = worst.max(x);
    }
    if worst > 1.0 + CONTRACTION_TOL {
        return Err(format!("truncated norm {worst} exceeds 1"));
    }
    Ok(format!(
        "path norms match; Catalan returns exact to n = 100, root {root:.5}; group rings within {worst_group:.1e}; max truncated norm {worst:.6}"
    ))
}

fn c10_center_h2() -> Outcome {
    for n in 1..=12u64 {
        let h = h2_fg_abelian(0, &[n]).map_err(|e| e.to_string())?;
        if !h.is_trivial() {
            return Err(format!("Z/{n} gives {h:?}"));
        }
    }
    let v4 = h2_fg_abelian(0, &[2, 2]).map_err(|e| e.to_string())?;
    if v4.torus_rank != 0 || v4.finite != vec![2] {
        return Err(format!("(Z/2)^2 gives {v4:?}"));
    }
    let z2 = h2_fg_abelian(2, &[]).map_err(|e| e.to_string())?;
    if z2.torus_rank != 1 || !z2.finite.is_empty() {
        return Err(format!("Z^2 gives {z2:?}"));
    }
    Ok("Z/n trivial, (Z/2)^2 -> Z/2, Z^2 -> T".into())
}

fn c11_oracle() -> Outcome {
    let mut parts = Vec::new();
    for chain in (1..=4u64).flat_map(invariant_chains) {
        let g: Arc<FiniteGroup> = Arc::new(AbelianGroup::new(chain.clone()).map_err(|e| e.to_string())?.to_group());
        let set = h2_classes_with(g.clone(), &opts()).map_err(|e| e.to_string())?;
        let m = g.order() as u64;
        let brute = brute_h2(&g, m, t_modulus(&g));
        if set.cocycle_count() != &num_bigint::BigUint::from(brute.cocycles.len()) {
            return Err(format!("{chain:?}: cocycle count {} vs {}", set.cocycle_count(), brute.cocycles.len()));
        }
        if set.t_coboundary_count() != &num_bigint::BigUint::from(brute.t_coboundaries.len()) {
            return Err(format!("{chain:?}: T-coboundary count differs"));
        }
        if set.order() != num_bigint::BigUint::from(brute.order()) {
            return Err(format!("{chain:?}: |H²| {} vs {}", set.order(), brute.order()));
        }
        // classes agree with cosets of the brute-force T-coboundaries
        let labels: Vec<usize> = brute
            .cocycles
            .iter()
            .map(|v| set.class_of(&cocycle_from_vector(&g, m, v)).expect("cocycle"))
            .collect();
        for (i, u) in brute.cocycles.iter().enumerate() {
            for (j, v) in brute.cocycles.iter().enumerate() {
                let diff: Vec<u64> = u.iter().zip(v).map(|(a, b)| (a + m - b) % m).collect();
                if (labels[i] == labels[j]) != brute.t_coboundaries.contains(&diff) {
                    return Err(format!("{chain:?}: class labels disagree with cosets"));
                }
            }
        }
        parts.push(format!("{chain:?}:{}", brute.order()));
    }
    // the nonabelian-free range also covers every group of order <= 4
    Ok(parts.join(" "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("square-order law", c1_square_order),
        ("abelian classification", c2_abelian_classification),
        ("minimal nonabelian central type", c3_minimal_nonabelian),
        ("three-way nondegeneracy", c4_three_way),
        ("dual H2 of abelian groups", c5_dual_h2_abelian),
        ("tau pipeline", c6_tau_pipeline),
        ("monoidal pair", c7_monoidal_pair),
        ("fusion and characters", c8_fusion_sanity),
        ("amenability numerics", c9_amenability),
        ("center H2", c10_center_h2),
        ("brute-force oracle", c11_oracle),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("{:02} {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("acceptance {label}: PASS [{:.1?}] {detail}", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("acceptance {label}: FAIL [{:.1?}] {why}", start.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    }
}
