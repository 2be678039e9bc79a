use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::moves::{move_add_edge, move_add_point, move_contract, move_fuse, move_merge};
use super::*;

fn atom(name: &str) -> LabelExpr {
    LabelExpr::atom(name)
}

/// A sphere on the theta graph: two vertices, three parallel edges, three
/// two-sided faces. Edge 0 = darts {0,1}, edge 1 = {2,3}, edge 2 = {4,5};
/// the face {1,2} separates edges 0 and 1.
fn theta_sphere(c: &str, d: &str, b: &str, wall: LabelExpr) -> StratifiedSurface {
    let alpha = vec![1, 0, 3, 2, 5, 4];
    let sigma = vec![2, 5, 4, 1, 0, 3];
    // Orbits: sigma = (0 2 4)(1 5 3). Faces (phi = sigma after alpha):
    // {0,5}, {1,2}, {3,4}.
    let mut faces = BTreeMap::new();
    faces.insert(0, atom(c));
    faces.insert(1, atom(d));
    faces.insert(3, atom(b));
    let mut edges = BTreeMap::new();
    for (key, forward) in [(0usize, 0usize), (2, 3), (4, 4)] {
        edges.insert(
            key,
            EdgeData {
                label: wall.clone(),
                forward,
            },
        );
    }
    let mut vertices = BTreeMap::new();
    vertices.insert(0, LabelExpr::forget0(wall.clone()));
    vertices.insert(1, LabelExpr::forget0(wall));
    StratifiedSurface::new("trivial", alpha, sigma, faces, edges, vertices, None, vec![])
        .unwrap()
}

#[test]
fn validation_examples() {
    // Sphere carrying only a face and a floating point: valid, genus 0.
    let dartless = StratifiedSurface::new(
        "trivial",
        vec![],
        vec![],
        BTreeMap::new(),
        BTreeMap::new(),
        BTreeMap::new(),
        Some(atom("toric-code")),
        vec![LabelExpr::forget0(LabelExpr::forget1(atom("toric-code")))],
    )
    .unwrap();
    let summary = dartless.validate().unwrap();
    assert_eq!(summary.genus, 0);

    // One vertex, two loops, one face: the torus.
    let torus = StratifiedSurface::unstratified("trivial", 1, atom("toric-code"));
    let summary = torus.validate().unwrap();
    assert_eq!((summary.vertices, summary.edges, summary.faces), (1, 2, 1));
    assert_eq!(summary.genus, 1);

    // Forward dart outside its edge: orientation error.
    let mut bad = StratifiedSurface::unstratified("trivial", 0, atom("toric-code"));
    bad.edges.get_mut(&0).unwrap().forward = 5;
    assert!(matches!(
        bad.validate(),
        Err(SurfaceError::Invalid(msg)) if msg.contains("orientation") || msg.contains("forward")
    ));
}

#[test]
fn serialization_round_trips() {
    let samples = vec![
        StratifiedSurface::unstratified("trivial", 0, atom("semion")),
        StratifiedSurface::unstratified("trivial", 2, atom("toric-code")),
        StratifiedSurface::loop_island(
            "trivial",
            atom("toric-code"),
            atom("trivial"),
            atom("vec-z2"),
        ),
        theta_sphere(
            "toric-code",
            "toric-code",
            "toric-code",
            LabelExpr::forget1(atom("toric-code")),
        ),
    ];
    for s in samples {
        let text = s.to_string();
        let back = parse_surface(&text).unwrap();
        assert_eq!(back, s, "round trip through:\n{text}");
        assert_eq!(back.to_string(), text);
    }
}

#[test]
fn fuse_on_the_theta_sphere() {
    let wall = LabelExpr::forget1(atom("toric-code"));
    let s = theta_sphere("toric-code", "toric-code", "toric-code", wall);
    let (v0, e0, f0) = s.counts();
    // Edges 0 and 2 both have the face {1,2} on matching sides of edge 0
    // and edge 1 (keys 0 and 2).
    let fused = move_fuse(&s, 0, 2).unwrap();
    let (v1, e1, f1) = fused.counts();
    assert_eq!((v1, e1, f1), (v0, e0 - 1, f0 - 1));
    assert_eq!(fused.genus(), 0);
    // The new edge is labelled with the fused bimodule.
    let has_fused_label = fused
        .edges_with_keys()
        .iter()
        .any(|(_, d)| matches!(d.label, LabelExpr::BimodTensor(..)));
    assert!(has_fused_label);

    // Fusing an edge with itself is rejected.
    assert!(matches!(
        move_fuse(&s, 0, 0),
        Err(MoveError::Pattern(_))
    ));
}

#[test]
fn fuse_preserves_evaluation() {
    let wall = LabelExpr::forget1(atom("toric-code"));
    let s = theta_sphere("toric-code", "toric-code", "toric-code", wall);
    let before = evaluate(&s).unwrap();
    let after = evaluate(&move_fuse(&s, 0, 2).unwrap()).unwrap();
    assert_eq!(before, after);
    assert_eq!(before.gsd_unit, 1);
}

#[test]
fn contract_examples() {
    // Contracting the only edge of a two-vertex sphere leaves a one-point
    // sphere.
    let s = StratifiedSurface::unstratified("trivial", 0, atom("semion"));
    let contracted = move_contract(&s, 0).unwrap();
    assert_eq!(contracted.dart_count(), 0);
    assert_eq!(contracted.floating.len(), 1);
    assert!(matches!(contracted.floating[0], LabelExpr::VFuse(..)));
    assert_eq!(contracted.sole_face_label().unwrap(), &atom("semion"));

    // Loop contraction is rejected.
    let island = StratifiedSurface::loop_island(
        "trivial",
        atom("toric-code"),
        atom("toric-code"),
        LabelExpr::forget1(atom("toric-code")),
    );
    assert_eq!(move_contract(&island, 0).unwrap_err(), MoveError::LoopEdge);
}

#[test]
fn contraction_order_does_not_change_evaluation() {
    // Subdivide the skeleton edge twice: a path of three edges; contract in
    // the two different orders and compare evaluations.
    let s = StratifiedSurface::unstratified("trivial", 0, atom("toric-code"));
    let s = move_add_point(&s, 0).unwrap();
    let s = move_add_point(&s, 0).unwrap();
    let keys: Vec<usize> = s.edges_with_keys().iter().map(|(k, _)| *k).collect();
    assert_eq!(keys.len(), 3);
    let left_first = move_contract(&s, keys[0]).unwrap();
    let right_first = move_contract(&s, keys[2]).unwrap();
    let a = evaluate(&left_first).unwrap();
    let b = evaluate(&right_first).unwrap();
    let c = evaluate(&s).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn add_point_then_reduce_is_neutral() {
    let s = StratifiedSurface::unstratified("trivial", 0, atom("z4-1"));
    let subdivided = move_add_point(&s, 0).unwrap();
    let (v, e, f) = subdivided.counts();
    let (v0, e0, f0) = s.counts();
    assert_eq!((v, e, f), (v0 + 1, e0 + 1, f0));
    assert_eq!(evaluate(&s).unwrap(), evaluate(&subdivided).unwrap());
}

#[test]
fn add_edge_splits_a_face() {
    let torus = StratifiedSurface::unstratified("trivial", 1, atom("toric-code"));
    // Insert a loop at a corner of the single face.
    let face = torus.faces_with_keys()[0].0;
    let grown = move_add_edge(&torus, face, 0, 0).unwrap();
    let (v, e, f) = grown.counts();
    assert_eq!((v, e, f), (1, 3, 2));
    assert_eq!(grown.genus(), 1);

    // Corners must lie on the face.
    let sphere = StratifiedSurface::unstratified("trivial", 0, atom("semion"));
    let fkey = sphere.faces_with_keys()[0].0;
    assert!(move_add_edge(&sphere, fkey, 7, 0).is_err());
}

#[test]
fn merge_after_adding_a_parallel_edge_is_neutral() {
    // Adding a parallel forgetful copy inside a face and merging it back
    // changes nothing observable.
    let s = theta_sphere(
        "toric-code",
        "toric-code",
        "toric-code",
        LabelExpr::forget1(atom("toric-code")),
    );
    let before = evaluate(&s).unwrap();
    let face = s.faces_with_keys()[0].0;
    let orbit: Vec<usize> = (0..s.dart_count())
        .filter(|&d| s.face_key_of(d) == face)
        .collect();
    let grown = move_add_edge(&s, face, orbit[0], orbit[1]).unwrap();
    assert_eq!(evaluate(&grown).unwrap(), before);
}

#[test]
fn reduce_examples() {
    // The theta sphere reduces to isolated points.
    let s = theta_sphere(
        "toric-code",
        "toric-code",
        "toric-code",
        LabelExpr::forget1(atom("toric-code")),
    );
    let (reduced, trace) = reduce_to_points(&s).unwrap();
    assert_eq!(reduced.dart_count(), 0);
    assert!(!trace.is_empty());
    assert!(reduced.sole_face_label().is_some());

    // Already reduced input is a fixed point.
    let (again, trace2) = reduce_to_points(&reduced).unwrap();
    assert_eq!(again, reduced);
    assert!(trace2.is_empty());
}

#[test]
fn genus_reduction_bookkeeping() {
    let torus = StratifiedSurface::unstratified("trivial", 1, atom("toric-code"));
    let (cut, record) = reduce_genus_once(&torus).unwrap();
    assert_eq!(cut.genus(), 0);
    assert!(record.description.starts_with("cut-handle"));
    assert!(cut
        .floating
        .iter()
        .any(|l| matches!(l, LabelExpr::Coend(_))));

    let genus2 = StratifiedSurface::unstratified("trivial", 2, atom("toric-code"));
    let (cut1, _) = reduce_genus_once(&genus2).unwrap();
    assert_eq!(cut1.genus(), 1);
    let (cut2, _) = reduce_genus_once(&cut1).unwrap();
    assert_eq!(cut2.genus(), 0);

    assert!(reduce_genus_once(&cut2).is_err());
}

#[test]
fn evaluation_matches_the_verlinde_oracle() {
    use crate::moddata::ModularData;
    for (name, genus) in [
        ("toric-code", 0u64),
        ("toric-code", 1),
        ("toric-code", 2),
        ("semion", 1),
        ("double-semion", 2),
        ("z4-3", 1),
    ] {
        let s = StratifiedSurface::unstratified("trivial", genus, atom(name));
        let result = evaluate(&s).unwrap();
        let md = ModularData::from_metric_group(&crate::metricgrp::library(name).unwrap())
            .unwrap();
        let expected = md.verlinde_genus_dim(genus).unwrap();
        assert_eq!(result.gsd_unit, expected, "{name} at genus {genus}");
        assert_eq!(result.total_dim, expected, "trivial base: everything is the unit");
    }
}

#[test]
fn stratified_torus_cut_matches_direct_evaluation() {
    // A torus with an extra contractible wall evaluates like the bare one.
    let torus = StratifiedSurface::unstratified("trivial", 1, atom("toric-code"));
    let face = torus.faces_with_keys()[0].0;
    let stratified = move_add_edge(&torus, face, 0, 0).unwrap();
    assert_eq!(
        evaluate(&stratified).unwrap(),
        evaluate(&torus).unwrap()
    );
}

#[test]
fn anomaly_check_examples() {
    // Unstratified toric-code sphere: passes with assumptions only for
    // nothing (all labels have backends).
    let s = StratifiedSurface::unstratified("trivial", 0, atom("toric-code"));
    let report = check_anomaly_free(&s).unwrap();
    assert!(report.passed(), "{report}");

    // A degenerate face over the trivial base fails.
    let bad = StratifiedSurface::unstratified("trivial", 0, atom("rep-z2"));
    let report = check_anomaly_free(&bad).unwrap();
    assert!(!report.passed());

    // vec-z2 wall between toric code and the trivial phase: closed.
    let island = StratifiedSurface::loop_island(
        "trivial",
        atom("toric-code"),
        atom("trivial"),
        atom("vec-z2"),
    );
    let report = check_anomaly_free(&island).unwrap();
    assert!(report.passed(), "{report}");

    // vec-z2 wall between two toric codes: not closed.
    let wrong = StratifiedSurface::loop_island(
        "trivial",
        atom("toric-code"),
        atom("toric-code"),
        atom("vec-z2"),
    );
    let report = check_anomaly_free(&wrong).unwrap();
    assert!(!report.passed());

    // Forgetful walls are checked, not just assumed.
    let forget = StratifiedSurface::loop_island(
        "trivial",
        atom("double-semion"),
        atom("double-semion"),
        LabelExpr::forget1(atom("double-semion")),
    );
    let report = check_anomaly_free(&forget).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn moves_preserve_anomaly_freeness_and_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 40 {
        let s = random_sphere(&mut rng);
        let before = evaluate(&s).unwrap();
        let Some((descriptor, after)) = random_applicable_move(&s, &mut rng) else {
            continue;
        };
        let report = check_anomaly_free(&after).unwrap();
        assert!(report.passed(), "{:?} broke anomaly freeness", descriptor);
        assert_eq!(
            evaluate(&after).unwrap(),
            before,
            "{descriptor:?} changed the evaluation"
        );
        checked += 1;
    }
}

#[test]
fn euler_bookkeeping_per_move() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let s = random_sphere(&mut rng);
        let Some((descriptor, after)) = random_applicable_move(&s, &mut rng) else {
            continue;
        };
        let (v0, e0, f0) = s.counts();
        let (v1, e1, f1) = after.counts();
        match descriptor {
            MoveDescriptor::Contract { .. } => {
                assert_eq!((v1, e1, f1), (v0 - 1, e0 - 1, f0));
            }
            MoveDescriptor::Fuse { .. } | MoveDescriptor::Merge { .. } => {
                assert_eq!((v1, e1, f1), (v0, e0 - 1, f0 - 1));
            }
            MoveDescriptor::AddPoint { .. } => {
                assert_eq!((v1, e1, f1), (v0 + 1, e0 + 1, f0));
            }
            MoveDescriptor::AddEdge { .. } => {
                assert_eq!((v1, e1, f1), (v0, e0 + 1, f0 + 1));
            }
        }
        assert_eq!(after.genus(), 0);
    }
}

#[test]
fn reduction_is_confluent_across_random_prefixes() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let s = random_sphere(&mut rng);
        let reference = evaluate(&s).unwrap();
        // Two independent random walks of applicable moves, then full
        // evaluation.
        for _ in 0..2 {
            let mut cur = s.clone();
            for _ in 0..rng.gen_range(1..4) {
                if let Some((_, next)) = random_applicable_move(&cur, &mut rng) {
                    cur = next;
                }
            }
            assert_eq!(evaluate(&cur).unwrap(), reference);
        }
    }
}

#[test]
fn traces_are_deterministic() {
    let s = theta_sphere(
        "semion",
        "semion",
        "semion",
        LabelExpr::forget1(atom("semion")),
    );
    let (r1, t1) = reduce_fully(&s).unwrap();
    let (r2, t2) = reduce_fully(&s).unwrap();
    assert_eq!(r1, r2);
    let lines1: Vec<String> = t1.iter().map(|r| r.to_string()).collect();
    let lines2: Vec<String> = t2.iter().map(|r| r.to_string()).collect();
    assert_eq!(lines1, lines2);
}
