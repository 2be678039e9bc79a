//! The excision moves: fuse, contract, merge, point insertion and edge
//! insertion. Every move is a local surgery on the two permutations with
//! exact label bookkeeping; the Euler-characteristic change of each move is
//! pinned by its construction and re-checked in tests.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::labels::LabelExpr;
use super::{EdgeData, StratifiedSurface, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("no such cell")]
    NoSuchCell,
    #[error("pattern mismatch: {0}")]
    Pattern(String),
    #[error("contracting a loop is not allowed")]
    LoopEdge,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A concrete applicable move, used by the random-move machinery and the
/// reduction trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveDescriptor {
    Contract { edge: usize },
    Fuse { e1: usize, e2: usize },
    Merge { e1: usize, e2: usize },
    AddPoint { edge: usize },
    AddEdge { face: usize, p: usize, q: usize },
}

impl MoveDescriptor {
    pub fn apply(&self, s: &StratifiedSurface) -> Result<StratifiedSurface, MoveError> {
        match *self {
            MoveDescriptor::Contract { edge } => move_contract(s, edge),
            MoveDescriptor::Fuse { e1, e2 } => move_fuse(s, e1, e2),
            MoveDescriptor::Merge { e1, e2 } => move_merge(s, e1, e2),
            MoveDescriptor::AddPoint { edge } => move_add_point(s, edge),
            MoveDescriptor::AddEdge { face, p, q } => move_add_edge(s, face, p, q),
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            MoveDescriptor::Contract { edge } => format!("contract e{}", edge + 1),
            MoveDescriptor::Fuse { e1, e2 } => format!("fuse e{} e{}", e1 + 1, e2 + 1),
            MoveDescriptor::Merge { e1, e2 } => format!("merge e{} e{}", e1 + 1, e2 + 1),
            MoveDescriptor::AddPoint { edge } => format!("add-point e{}", edge + 1),
            MoveDescriptor::AddEdge { face, p, q } => {
                format!("add-edge f{} {} {}", face + 1, p + 1, q + 1)
            }
        }
    }
}

fn sigma_pred(s: &StratifiedSurface, d: usize) -> usize {
    let mut cur = d;
    while s.sigma(cur) != d {
        cur = s.sigma(cur);
    }
    cur
}

/// Drop the given darts from their vertex rotations: relink the survivors
/// of each affected rotation and report the vertex keys that lose every
/// dart.
fn drop_from_rotations(
    s: &StratifiedSurface,
    removed: &BTreeSet<usize>,
) -> (BTreeMap<usize, usize>, Vec<usize>) {
    let mut sigma_over = BTreeMap::new();
    let mut emptied = Vec::new();
    let mut handled_vertices = BTreeSet::new();
    for &gone in removed {
        let vkey = s.vertex_key_of(gone);
        if !handled_vertices.insert(vkey) {
            continue;
        }
        let mut order = vec![vkey];
        let mut cur = s.sigma(vkey);
        while cur != vkey {
            order.push(cur);
            cur = s.sigma(cur);
        }
        let survivors: Vec<usize> = order
            .iter()
            .copied()
            .filter(|t| !removed.contains(t))
            .collect();
        if survivors.is_empty() {
            emptied.push(vkey);
        } else {
            for (i, &t) in survivors.iter().enumerate() {
                sigma_over.insert(t, survivors[(i + 1) % survivors.len()]);
            }
        }
    }
    (sigma_over, emptied)
}

/// Contract an edge joining two distinct vertices; the merged vertex is
/// labelled `VFuse(tail label, edge label, head label)`.
pub fn move_contract(s: &StratifiedSurface, edge: usize) -> Result<StratifiedSurface, MoveError> {
    let data = s.edges.get(&edge).ok_or(MoveError::NoSuchCell)?.clone();
    let d = data.forward;
    let r = s.alpha(d);
    let tail_key = s.vertex_key_of(d);
    let head_key = s.vertex_key_of(r);
    if tail_key == head_key {
        return Err(MoveError::LoopEdge);
    }
    let new_label = LabelExpr::VFuse(
        Box::new(s.vertex_label(tail_key).clone()),
        Box::new(data.label.clone()),
        Box::new(s.vertex_label(head_key).clone()),
    );
    // Splice the two rotations, dropping d and r.
    let mut sigma_over: BTreeMap<usize, usize> = BTreeMap::new();
    let tail_alone = s.sigma(d) == d;
    let head_alone = s.sigma(r) == r;
    match (tail_alone, head_alone) {
        (false, false) => {
            sigma_over.insert(sigma_pred(s, d), s.sigma(r));
            sigma_over.insert(sigma_pred(s, r), s.sigma(d));
        }
        (true, false) => {
            sigma_over.insert(sigma_pred(s, r), s.sigma(r));
        }
        (false, true) => {
            sigma_over.insert(sigma_pred(s, d), s.sigma(d));
        }
        (true, true) => {}
    }
    let remove: BTreeSet<usize> = [d, r].into_iter().collect();
    let merged_becomes_floating = tail_alone && head_alone;
    // When every dart disappears the lone face survives as the sole face.
    let sole_face = if s.dart_count() == 2 {
        Some(s.face_label(s.face_key_of(d)).clone())
    } else {
        None
    };
    let surface = s.rebuild(
        &remove,
        &BTreeMap::new(),
        &sigma_over,
        |old| Some(s.face_label(s.face_key_of(old)).clone()),
        |_| None,
        |old| {
            let key = s.vertex_key_of(old);
            if key == tail_key || key == head_key {
                Some(new_label.clone())
            } else {
                Some(s.vertex_label(key).clone())
            }
        },
        sole_face,
        if merged_becomes_floating {
            vec![new_label.clone()]
        } else {
            Vec::new()
        },
    )?;
    Ok(surface)
}

/// The two-sided pattern behind fuse and merge: a degree-2 face whose two
/// boundary darts belong to distinct edges.
struct BigonPattern {
    /// Dart of the face lying on edge `e1`.
    x: usize,
    /// Dart of the face lying on edge `e2`.
    y: usize,
    face_key: usize,
}

fn bigon_between(s: &StratifiedSurface, e1: usize, e2: usize) -> Result<BigonPattern, MoveError> {
    if e1 == e2 {
        return Err(MoveError::Pattern("the two edges must be distinct".into()));
    }
    let d1 = s.edges.get(&e1).ok_or(MoveError::NoSuchCell)?.forward;
    if !s.edges.contains_key(&e2) {
        return Err(MoveError::NoSuchCell);
    }
    for x in [d1, s.alpha(d1)] {
        let y = s.phi(x);
        if s.phi(y) == x && s.edge_key_of(y) == e2 && y != x {
            return Ok(BigonPattern {
                x,
                y,
                face_key: s.face_key_of(x),
            });
        }
    }
    Err(MoveError::Pattern(
        "the edges do not cobound a two-sided face".into(),
    ))
}

fn eliminate_bigon(
    s: &StratifiedSurface,
    pat: &BigonPattern,
    label: LabelExpr,
    forward: usize,
) -> Result<StratifiedSurface, MoveError> {
    let BigonPattern { x, y, .. } = *pat;
    let (ax, ay) = (s.alpha(x), s.alpha(y));
    let mut alpha_over = BTreeMap::new();
    alpha_over.insert(ax, ay);
    alpha_over.insert(ay, ax);
    let remove: BTreeSet<usize> = [x, y].into_iter().collect();
    let (sigma_over, emptied) = drop_from_rotations(s, &remove);
    let emptied_vertices: Vec<LabelExpr> = emptied
        .iter()
        .map(|&k| s.vertex_label(k).clone())
        .collect();
    let data = EdgeData { label, forward };
    let new_key = ax.min(ay);
    let surface = s.rebuild(
        &remove,
        &alpha_over,
        &sigma_over,
        |old| {
            if s.face_key_of(old) == pat.face_key {
                None
            } else {
                Some(s.face_label(s.face_key_of(old)).clone())
            }
        },
        |old_key| {
            if old_key == new_key {
                Some(data.clone())
            } else {
                None
            }
        },
        |old| Some(s.vertex_label(s.vertex_key_of(old)).clone()),
        None,
        emptied_vertices,
    )?;
    Ok(surface)
}

/// Fuse two 1-cells across the 2-cell between them into a single 1-cell
/// labelled `BimodTensor`. The pattern requires the shared face to lie on
/// the same side of both edges.
pub fn move_fuse(
    s: &StratifiedSurface,
    e1: usize,
    e2: usize,
) -> Result<StratifiedSurface, MoveError> {
    let pat = bigon_between(s, e1, e2)?;
    let f1 = s.edges[&e1].forward;
    let f2 = s.edges[&e2].forward;
    let face_label = s.face_label(pat.face_key).clone();
    let m = s.edges[&e1].label.clone();
    let n = s.edges[&e2].label.clone();
    let label = LabelExpr::BimodTensor(Box::new(m), Box::new(face_label), Box::new(n));
    // Same side: the face holds the backward darts of both edges
    // (face on the right of both) or the forward darts of both.
    if pat.x == s.alpha(f1) && pat.y == s.alpha(f2) {
        eliminate_bigon(s, &pat, label, f1)
    } else if pat.x == f1 && pat.y == f2 {
        eliminate_bigon(s, &pat, label, s.alpha(f1))
    } else {
        Err(MoveError::Pattern(
            "fuse needs the shared face on the same side of both edges".into(),
        ))
    }
}

/// Merge two parallel 1-cells across the bigon between them into a single
/// 1-cell labelled `EMerge`. The pattern requires the bigon to lie on
/// opposite sides of the two edges; the endpoints then coincide pairwise.
pub fn move_merge(
    s: &StratifiedSurface,
    e1: usize,
    e2: usize,
) -> Result<StratifiedSurface, MoveError> {
    let pat = bigon_between(s, e1, e2)?;
    let f1 = s.edges[&e1].forward;
    let f2 = s.edges[&e2].forward;
    let face_label = s.face_label(pat.face_key).clone();
    let l1 = s.edges[&e1].label.clone();
    let l2 = s.edges[&e2].label.clone();
    if pat.x == s.alpha(f1) && pat.y == f2 {
        // Bigon right of e1, left of e2.
        let label = LabelExpr::EMerge(Box::new(l1), Box::new(face_label), Box::new(l2));
        eliminate_bigon(s, &pat, label, f1)
    } else if pat.x == f1 && pat.y == s.alpha(f2) {
        let label = LabelExpr::EMerge(Box::new(l2), Box::new(face_label), Box::new(l1));
        eliminate_bigon(s, &pat, label, f2)
    } else {
        Err(MoveError::Pattern(
            "merge needs the bigon on opposite sides of the two edges".into(),
        ))
    }
}

/// Subdivide an edge, inserting a 0-cell labelled by the forgotten edge
/// algebra.
pub fn move_add_point(s: &StratifiedSurface, edge: usize) -> Result<StratifiedSurface, MoveError> {
    let data = s.edges.get(&edge).ok_or(MoveError::NoSuchCell)?.clone();
    let f = data.forward;
    let r = s.alpha(f);
    let n = s.dart_count();
    let mut alpha: Vec<usize> = (0..n).map(|d| s.alpha(d)).collect();
    let mut sigma: Vec<usize> = (0..n).map(|d| s.sigma(d)).collect();
    alpha.push(f);
    alpha.push(r);
    alpha[f] = n;
    alpha[r] = n + 1;
    sigma.push(n + 1);
    sigma.push(n);
    let faces = s.faces.clone();
    let mut edges = s.edges.clone();
    edges.remove(&edge);
    edges.insert(
        f.min(n),
        EdgeData {
            label: data.label.clone(),
            forward: f,
        },
    );
    edges.insert(
        r.min(n + 1),
        EdgeData {
            label: data.label.clone(),
            forward: n + 1,
        },
    );
    let mut vertices = s.vertices.clone();
    vertices.insert(n, LabelExpr::forget0(data.label));
    StratifiedSurface::new(
        &s.base,
        alpha,
        sigma,
        faces,
        edges,
        vertices,
        None,
        s.floating.clone(),
    )
    .map_err(MoveError::from)
}

/// Insert an oriented 1-cell inside a face between two boundary corners
/// (darts of the face's walk), labelled by the forgotten face algebra.
/// Splits the face in two; both parts keep the face's label.
pub fn move_add_edge(
    s: &StratifiedSurface,
    face: usize,
    p: usize,
    q: usize,
) -> Result<StratifiedSurface, MoveError> {
    if !s.faces.contains_key(&face) {
        return Err(MoveError::NoSuchCell);
    }
    if p >= s.dart_count()
        || q >= s.dart_count()
        || s.face_key_of(p) != face
        || s.face_key_of(q) != face
    {
        return Err(MoveError::Pattern(
            "both corners must lie on the boundary of the face".into(),
        ));
    }
    let face_label = s.faces[&face].clone();
    let n = s.dart_count();
    let mut alpha: Vec<usize> = (0..n).map(|d| s.alpha(d)).collect();
    let mut sigma: Vec<usize> = (0..n).map(|d| s.sigma(d)).collect();
    alpha.push(n + 1);
    alpha.push(n);
    sigma.push(0);
    sigma.push(0);
    if p == q {
        // Loop at the corner before p: rotation gains (.., n, n+1, p, ..).
        let pred = sigma_pred(s, p);
        sigma[n] = n + 1;
        sigma[n + 1] = p;
        if pred == p {
            sigma[p] = n;
        } else {
            sigma[pred] = n;
        }
    } else {
        let pred_p = sigma_pred(s, p);
        sigma[n] = p;
        if pred_p == p {
            sigma[p] = n;
        } else {
            sigma[pred_p] = n;
        }
        let pred_q = if sigma_pred(s, q) == q {
            q
        } else {
            sigma_pred(s, q)
        };
        sigma[n + 1] = q;
        if pred_q == q {
            sigma[q] = n + 1;
        } else {
            // The predecessor may have been redirected already when p and q
            // share a vertex and q follows p.
            if sigma[pred_q] == q {
                sigma[pred_q] = n + 1;
            } else if sigma[n] == q {
                sigma[n] = n + 1;
                sigma[n + 1] = q;
            } else {
                sigma[pred_q] = n + 1;
            }
        }
    }
    let mut edges = s.edges.clone();
    edges.insert(
        n,
        EdgeData {
            label: LabelExpr::forget1(face_label.clone()),
            forward: n,
        },
    );
    // Recompute face orbits: old darts keep their face labels, the two new
    // darts inherit the split face's label.
    let draft = StratifiedSurface {
        base: s.base.clone(),
        alpha,
        sigma,
        faces: BTreeMap::new(),
        edges,
        vertices: s.vertices.clone(),
        sole_face: None,
        floating: s.floating.clone(),
    };
    let mut faces = BTreeMap::new();
    for orbit in draft.face_orbits() {
        let key = *orbit.iter().min().unwrap();
        let label = orbit
            .iter()
            .find(|&&d| d < n)
            .map(|&d| s.face_label(s.face_key_of(d)).clone())
            .unwrap_or_else(|| face_label.clone());
        faces.insert(key, label);
    }
    StratifiedSurface::new(
        &draft.base,
        draft.alpha,
        draft.sigma,
        faces,
        draft.edges,
        draft.vertices,
        None,
        draft.floating,
    )
    .map_err(MoveError::from)
}

/// Remove an edge outright, merging its side faces. Only legitimate when
/// both sides carry the same label; used by the genus reduction, where the
/// removed loop is a forgetful cut of the surrounding face.
pub(crate) fn remove_edge(
    s: &StratifiedSurface,
    edge: usize,
) -> Result<StratifiedSurface, MoveError> {
    let data = s.edges.get(&edge).ok_or(MoveError::NoSuchCell)?.clone();
    let d = data.forward;
    let r = s.alpha(d);
    let remove: BTreeSet<usize> = [d, r].into_iter().collect();
    let (sigma_over, emptied) = drop_from_rotations(s, &remove);
    let floating: Vec<LabelExpr> = emptied
        .iter()
        .map(|&k| s.vertex_label(k).clone())
        .collect();
    let sole_face = if s.dart_count() == 2 {
        Some(s.face_label(s.face_key_of(d)).clone())
    } else {
        None
    };
    let surface = s.rebuild(
        &remove,
        &BTreeMap::new(),
        &sigma_over,
        |old| Some(s.face_label(s.face_key_of(old)).clone()),
        |_| None,
        |old| Some(s.vertex_label(s.vertex_key_of(old)).clone()),
        sole_face,
        floating,
    )?;
    Ok(surface)
}
