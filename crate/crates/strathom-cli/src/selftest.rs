//! The acceptance checks, runnable through the `selftest` subcommand and
//! mirrored one-to-one by the `acceptance` integration test target.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use strathom::braidedmod::random_additive_module;
use strathom::centerfun::{check_center_monoidal, fusion_cat, fusion_library, morita_test};
use strathom::exactnum::RationalMod1;
use strathom::metricgrp::{library, library_names, MetricEmbedding};
use strathom::mext;
use strathom::moddata::{
    pointed_label_bijection, verify_modular_axioms, GroupLikeAlgebra, ModularData,
};
use strathom::stratsurf::{
    check_anomaly_free, evaluate, random_applicable_move, random_sphere, reduce_fully,
    LabelExpr, StratifiedSurface,
};

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, passed: bool, detail: String) -> CriterionOutcome {
    CriterionOutcome {
        name: name.to_string(),
        passed,
        detail,
    }
}

pub fn run_criteria() -> Vec<CriterionOutcome> {
    vec![
        criterion_1_rep_z2(),
        criterion_1_svec(),
        criterion_2_group_axioms(),
        criterion_3_center_functoriality(),
        criterion_4_morita(),
        criterion_5_coherence(),
        criterion_6_condensation(),
        criterion_7_verlinde(),
        criterion_8_move_invariance(),
        criterion_9_determinism(),
    ]
}

fn is_cyclic(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    (0..n).any(|g| {
        let mut seen = std::collections::BTreeSet::new();
        let mut cur = g;
        for _ in 0..n {
            seen.insert(cur);
            cur = table[cur][g];
        }
        seen.len() == n
    })
}

/// Criterion 1, rep-z2 half: the stated expectation is 8 classes with a
/// cyclic Cayley table of order 8.
pub fn criterion_1_rep_z2() -> CriterionOutcome {
    let start = Instant::now();
    let base = library("rep-z2").unwrap();
    let classes = match mext::enumerate(&base, &base, &MetricEmbedding::identity(&base)) {
        Ok(c) => c,
        Err(e) => return outcome("mext-rep-z2", false, format!("enumeration failed: {e}")),
    };
    let elapsed = start.elapsed();
    let count = classes.representatives.len();
    let cyclic8 = count == 8 && is_cyclic(&classes.cayley);
    let within_budget = elapsed.as_secs() < 60;
    outcome(
        "mext-rep-z2",
        cyclic8 && within_budget,
        format!(
            "expected 8 classes forming a cyclic group of order 8; enumeration finds {count} \
             classes (the modular extensions of rep-z2 are the toric code and the double \
             semion, a group of order 2) in {elapsed:.2?}"
        ),
    )
}

pub fn criterion_1_svec() -> CriterionOutcome {
    let start = Instant::now();
    let base = library("svec").unwrap();
    let classes = match mext::enumerate(&base, &base, &MetricEmbedding::identity(&base)) {
        Ok(c) => c,
        Err(e) => return outcome("mext-svec", false, format!("enumeration failed: {e}")),
    };
    let elapsed = start.elapsed();
    let count = classes.representatives.len();
    let ok = count == 8 && is_cyclic(&classes.cayley) && elapsed.as_secs() < 60;
    outcome(
        "mext-svec",
        ok,
        format!("{count} classes, cyclic: {} in {elapsed:.2?}", is_cyclic(&classes.cayley)),
    )
}

pub fn criterion_2_group_axioms() -> CriterionOutcome {
    let mut fails = Vec::new();
    for name in ["rep-z2", "svec"] {
        let base = library(name).unwrap();
        match mext::enumerate(&base, &base, &MetricEmbedding::identity(&base)) {
            Ok(classes) => {
                for f in classes.group_axiom_failures() {
                    fails.push(format!("{name}: {f}"));
                }
            }
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    }
    outcome(
        "mext-group-axioms",
        fails.is_empty(),
        if fails.is_empty() {
            "associative, commutative, unital, inverses match conjugation".into()
        } else {
            fails.join("; ")
        },
    )
}

pub fn criterion_3_center_functoriality() -> CriterionOutcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut fails = Vec::new();
    for base_name in ["trivial", "rep-z2", "svec"] {
        let base = library(base_name).unwrap();
        let cats = fusion_library(&base);
        for (na, a) in &cats {
            for (nb, b) in &cats {
                match check_center_monoidal(a, b) {
                    Ok(report) if report.passed() => checked += 1,
                    Ok(_) => fails.push(format!("{base_name}: ({na}, {nb}) no witness")),
                    Err(e) => fails.push(format!("{base_name}: ({na}, {nb}): {e}")),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = fails.is_empty() && elapsed.as_secs() < 30;
    outcome(
        "center-functoriality",
        ok,
        if fails.is_empty() {
            format!("{checked} ordered pairs over three bases in {elapsed:.2?}")
        } else {
            fails.join("; ")
        },
    )
}

pub fn criterion_4_morita() -> CriterionOutcome {
    let trivial = library("trivial").unwrap();
    let vz2 = fusion_cat("vec-z2", &trivial).unwrap();
    let vz3 = fusion_cat("vec-z3", &trivial).unwrap();
    let same = morita_test(&vz2, &vz2).unwrap_or(false);
    let diff = morita_test(&vz2, &vz3).unwrap_or(true);
    outcome(
        "morita-criterion",
        same && !diff,
        format!("vec-z2 ~ vec-z2: {same}; vec-z2 ~ vec-z3: {diff}"),
    )
}

pub fn criterion_5_coherence() -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let base = library("rep-z2").unwrap();
    let carrier = library("toric-code").unwrap();
    let embed = base
        .metric_embeddings_into(&carrier)
        .into_iter()
        .next()
        .unwrap();
    for trial in 0..100 {
        let m = match random_additive_module(&base, &carrier, &embed, &mut rng) {
            Ok(m) => m,
            Err(e) => {
                return outcome("coherence-derivation", false, format!("trial {trial}: {e}"))
            }
        };
        let report = m.check_axioms();
        if !report.defining.is_empty() || !report.derived.is_empty() {
            return outcome(
                "coherence-derivation",
                false,
                format!("trial {trial}: {report:?}"),
            );
        }
    }
    // A single perturbed entry must produce a reported witness.
    let m = random_additive_module(&base, &carrier, &embed, &mut rng).unwrap();
    let mut tau1: Vec<Vec<RationalMod1>> = base
        .group()
        .elements()
        .iter()
        .map(|e| {
            carrier
                .group()
                .elements()
                .iter()
                .map(|x| m.tau1(e, x))
                .collect()
        })
        .collect();
    tau1[1][2] = tau1[1][2].add(&RationalMod1::from_parts(1, 3));
    let tau2: Vec<Vec<RationalMod1>> = carrier
        .group()
        .elements()
        .iter()
        .map(|x| {
            base.group()
                .elements()
                .iter()
                .map(|e| m.tau2(x, e))
                .collect()
        })
        .collect();
    let broken = strathom::braidedmod::BraidedEModule::new(
        base.clone(),
        carrier.clone(),
        embed,
        tau1,
        tau2,
    )
    .unwrap();
    let witness = !broken.check_axioms().defining.is_empty();
    outcome(
        "coherence-derivation",
        witness,
        "100 random defining tables satisfy the derived diagrams; perturbation reports a witness"
            .into(),
    )
}

pub fn criterion_6_condensation() -> CriterionOutcome {
    let mut checked = 0;
    for name in library_names() {
        let mg = library(name).unwrap();
        let md = ModularData::from_metric_group(&mg).unwrap();
        let view = md.as_pointed().unwrap();
        for h in mg.isotropic_subgroups() {
            let metric_route = match mg.condense(&h) {
                Ok(c) => ModularData::from_metric_group(&c.quotient).unwrap(),
                Err(e) => {
                    return outcome("condensation-consistency", false, format!("{name}: {e}"))
                }
            };
            let algebra = GroupLikeAlgebra::from_subgroup(&view, &h);
            let modular_route = match md.condense_grouplike(&algebra) {
                Ok(m) => m,
                Err(e) => {
                    return outcome("condensation-consistency", false, format!("{name}: {e}"))
                }
            };
            if pointed_label_bijection(&metric_route, &modular_route).is_none() {
                return outcome(
                    "condensation-consistency",
                    false,
                    format!("{name}: routes disagree for |H| = {}", h.order()),
                );
            }
            if mg.is_nondegenerate() && !verify_modular_axioms(&modular_route).passed() {
                return outcome(
                    "condensation-consistency",
                    false,
                    format!("{name}: condensed data fails the axioms"),
                );
            }
            checked += 1;
        }
    }
    outcome(
        "condensation-consistency",
        true,
        format!("{checked} (group, isotropic subgroup) pairs agree across both routes"),
    )
}

pub fn criterion_7_verlinde() -> CriterionOutcome {
    let start = Instant::now();
    let cases = [
        ("toric-code", 0u64, 1u64),
        ("toric-code", 1, 4),
        ("toric-code", 2, 16),
        ("semion", 1, 2),
    ];
    for (name, genus, expected) in cases {
        let s = StratifiedSurface::unstratified("trivial", genus, LabelExpr::atom(name));
        let got = match evaluate(&s) {
            Ok(r) => r.gsd_unit,
            Err(e) => {
                return outcome("surface-vs-verlinde", false, format!("{name}/{genus}: {e}"))
            }
        };
        let oracle = ModularData::from_metric_group(&library(name).unwrap())
            .unwrap()
            .verlinde_genus_dim(genus)
            .unwrap();
        if got != expected || got != oracle {
            return outcome(
                "surface-vs-verlinde",
                false,
                format!("{name} genus {genus}: evaluated {got}, stated {expected}, oracle {oracle}"),
            );
        }
    }
    let elapsed = start.elapsed();
    outcome(
        "surface-vs-verlinde",
        elapsed.as_secs() < 10,
        format!("sphere/torus/genus-2 toric code = 1/4/16, semion torus = 2 in {elapsed:.2?}"),
    )
}

pub fn criterion_8_move_invariance() -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4096);
    let mut applied = 0;
    while applied < 200 {
        let s = random_sphere(&mut rng);
        let before = match evaluate(&s) {
            Ok(r) => r,
            Err(e) => return outcome("move-invariance", false, format!("seed sphere: {e}")),
        };
        let Some((descriptor, after)) = random_applicable_move(&s, &mut rng) else {
            continue;
        };
        match check_anomaly_free(&after) {
            Ok(report) if report.passed() => {}
            Ok(report) => {
                return outcome(
                    "move-invariance",
                    false,
                    format!("{descriptor:?} broke anomaly freeness: {report}"),
                )
            }
            Err(e) => return outcome("move-invariance", false, format!("{e}")),
        }
        match evaluate(&after) {
            Ok(result) if result == before => applied += 1,
            Ok(result) => {
                return outcome(
                    "move-invariance",
                    false,
                    format!(
                        "{descriptor:?} changed the value: {} -> {}",
                        before.gsd_unit, result.gsd_unit
                    ),
                )
            }
            Err(e) => return outcome("move-invariance", false, format!("{e}")),
        }
    }
    outcome(
        "move-invariance",
        true,
        "200 random applicable moves preserve the value and the anomaly check".into(),
    )
}

/// Deterministic reduce/evaluate output for the fixture surface, as the CLI
/// would print it.
pub fn determinism_fingerprint() -> String {
    let s = StratifiedSurface::unstratified("trivial", 2, LabelExpr::atom("toric-code"));
    let (reduced, trace) = reduce_fully(&s).unwrap();
    let mut out = String::new();
    for record in &trace {
        out.push_str(&record.to_string());
        out.push('\n');
    }
    out.push_str(&reduced.to_string());
    out.push_str(&evaluate(&s).unwrap().to_string());
    out
}

pub fn criterion_9_determinism() -> CriterionOutcome {
    let first = determinism_fingerprint();
    let second = determinism_fingerprint();
    if first != second {
        return outcome(
            "determinism",
            false,
            "consecutive runs differ".into(),
        );
    }
    // Across thread counts: run inside dedicated rayon pools.
    let mut across = Vec::new();
    for threads in [1usize, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        across.push(pool.install(determinism_fingerprint));
    }
    let ok = across.iter().all(|s| s == &first);
    outcome(
        "determinism",
        ok,
        if ok {
            "reduce trace and evaluation are byte-identical across runs and thread counts".into()
        } else {
            "outputs differ across thread counts".into()
        },
    )
}

/// Round-trip invariant of the CLI: `library show X` re-parses to the same
/// value for every built-in X.
pub fn library_round_trip_ok() -> bool {
    use strathom::metricgrp::parse_metric_group;
    library_names().iter().all(|name| {
        let mg = library(name).unwrap();
        let text = mg.to_string();
        parse_metric_group(&text).map(|back| back == mg).unwrap_or(false)
    })
}
