//! Seeded random anomaly-free spheres and random applicable moves, for the
//! move-invariance and confluence property batches.

use rand::Rng;

use super::labels::LabelExpr;
use super::moves::MoveDescriptor;
use super::reduce::next_step;
use super::StratifiedSurface;

const FACE_POOL: [&str; 6] = [
    "toric-code",
    "double-semion",
    "semion",
    "anti-semion",
    "z4-1",
    "z4-3",
];

/// A random anomaly-free labelled sphere over the trivial base: a seed
/// sphere (unstratified skeleton or a walled island) grown by a few random
/// point and edge insertions.
pub fn random_sphere(rng: &mut impl Rng) -> StratifiedSurface {
    let name = FACE_POOL[rng.gen_range(0..FACE_POOL.len())];
    let face = LabelExpr::atom(name);
    let mut s = if rng.gen_bool(0.5) {
        StratifiedSurface::unstratified("trivial", 0, face)
    } else {
        StratifiedSurface::loop_island(
            "trivial",
            face.clone(),
            face.clone(),
            LabelExpr::forget1(face),
        )
    };
    let steps = rng.gen_range(0..5);
    for _ in 0..steps {
        if let Some((_, grown)) = random_growth_move(&s, rng) {
            s = grown;
        }
    }
    s
}

/// A random point or edge insertion.
fn random_growth_move(
    s: &StratifiedSurface,
    rng: &mut impl Rng,
) -> Option<(MoveDescriptor, StratifiedSurface)> {
    let mut options = Vec::new();
    for (key, _) in s.edges_with_keys() {
        options.push(MoveDescriptor::AddPoint { edge: key });
    }
    for (fkey, _) in s.faces_with_keys() {
        let orbit: Vec<usize> = (0..s.dart_count())
            .filter(|&d| s.face_key_of(d) == fkey)
            .collect();
        for &p in &orbit {
            for &q in &orbit {
                options.push(MoveDescriptor::AddEdge { face: fkey, p, q });
            }
        }
    }
    if options.is_empty() {
        return None;
    }
    let pick = options[rng.gen_range(0..options.len())].clone();
    let applied = pick.apply(s).ok()?;
    Some((pick, applied))
}

/// All applicable moves on a surface, in a canonical order.
pub fn applicable_moves(s: &StratifiedSurface) -> Vec<MoveDescriptor> {
    let mut out = Vec::new();
    for (key, _) in s.edges_with_keys() {
        if s.tail_vertex_key(key) != s.head_vertex_key(key) {
            out.push(MoveDescriptor::Contract { edge: key });
        }
    }
    let mut faces: Vec<Vec<usize>> = s.face_orbits();
    faces.sort_by_key(|orbit| *orbit.iter().min().unwrap());
    for orbit in &faces {
        if orbit.len() != 2 {
            continue;
        }
        let (x, y) = (orbit[0], orbit[1]);
        let e1 = s.edge_key_of(x);
        let e2 = s.edge_key_of(y);
        if e1 == e2 {
            continue;
        }
        let f1 = s.edge_data(e1).forward;
        let f2 = s.edge_data(e2).forward;
        let same_side = (x == s.alpha(f1) && y == s.alpha(f2)) || (x == f1 && y == f2);
        out.push(if same_side {
            MoveDescriptor::Fuse { e1, e2 }
        } else {
            MoveDescriptor::Merge { e1, e2 }
        });
    }
    for (key, _) in s.edges_with_keys() {
        out.push(MoveDescriptor::AddPoint { edge: key });
    }
    for (fkey, _) in s.faces_with_keys() {
        let orbit: Vec<usize> = (0..s.dart_count())
            .filter(|&d| s.face_key_of(d) == fkey)
            .collect();
        for &p in &orbit {
            for &q in &orbit {
                out.push(MoveDescriptor::AddEdge { face: fkey, p, q });
            }
        }
    }
    out
}

/// Pick a uniformly random applicable move and apply it.
pub fn random_applicable_move(
    s: &StratifiedSurface,
    rng: &mut impl Rng,
) -> Option<(MoveDescriptor, StratifiedSurface)> {
    let options = applicable_moves(s);
    if options.is_empty() {
        return None;
    }
    // Some candidates may fail on label grounds; retry a bounded number of
    // times to keep the draw close to uniform.
    for _ in 0..32 {
        let pick = options[rng.gen_range(0..options.len())].clone();
        if let Ok(applied) = pick.apply(s) {
            return Some((pick, applied));
        }
    }
    // Fall back to the deterministic reduction step.
    let step = next_step(s)?;
    let applied = step.apply(s).ok()?;
    Some((step, applied))
}
