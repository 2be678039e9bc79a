//! Closed oriented stratified surfaces as rotation systems with labelled
//! cells, the excision moves, a deterministic reduction strategy, and
//! evaluation to a pair `(E, u_Sigma)`.
//!
//! Darts are `0..2E`; `alpha` is the fixed-point-free edge involution and
//! `sigma` the vertex rotation; faces are the orbits of `d -> sigma(alpha(d))`.
//! An edge is oriented by its `forward` dart: the face containing the
//! forward dart is the left side, the face containing the opposite dart the
//! right side. Cells are keyed by the least dart of their orbit. Isolated
//! labelled 0-cells (no darts) live in a separate `floating` list; a
//! surface with no darts at all is a sphere with one face.

mod evaluate;
mod labels;
mod moves;
mod random;
mod reduce;

pub use evaluate::{
    check_anomaly_free, evaluate, AnomalyReport, EvalError, EvaluationResult,
};
pub use labels::{LabelError, LabelExpr, Sort};
pub use moves::{MoveDescriptor, MoveError};
pub use random::{applicable_moves, random_applicable_move, random_sphere};
pub use reduce::{reduce_fully, reduce_genus_once, reduce_to_points, MoveRecord};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid surface: {0}")]
    Invalid(String),
    #[error("cannot parse surface: {0}")]
    Parse(String),
    #[error(transparent)]
    Label(#[from] LabelError),
}

/// Data attached to an edge: its label and the forward dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeData {
    pub label: LabelExpr,
    pub forward: usize,
}

/// A closed oriented stratified surface with labelled 0/1/2-cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedSurface {
    pub base: String,
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    /// Face labels keyed by the least dart of the face orbit.
    faces: BTreeMap<usize, LabelExpr>,
    /// Edge data keyed by the least dart of the edge pair.
    edges: BTreeMap<usize, EdgeData>,
    /// Vertex labels keyed by the least dart of the vertex orbit.
    vertices: BTreeMap<usize, LabelExpr>,
    /// The face label of a surface with no darts.
    sole_face: Option<LabelExpr>,
    /// Isolated 0-cells.
    pub floating: Vec<LabelExpr>,
}

impl StratifiedSurface {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        base: &str,
        alpha: Vec<usize>,
        sigma: Vec<usize>,
        faces: BTreeMap<usize, LabelExpr>,
        edges: BTreeMap<usize, EdgeData>,
        vertices: BTreeMap<usize, LabelExpr>,
        sole_face: Option<LabelExpr>,
        floating: Vec<LabelExpr>,
    ) -> Result<Self, SurfaceError> {
        let s = StratifiedSurface {
            base: base.to_string(),
            alpha,
            sigma,
            faces,
            edges,
            vertices,
            sole_face,
            floating,
        };
        s.validate_structure()?;
        Ok(s)
    }

    /// Number of darts.
    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }

    /// Face successor: walk the boundary of the face containing `d`.
    pub fn phi(&self, d: usize) -> usize {
        self.sigma[self.alpha[d]]
    }

    fn orbits(perm: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; perm.len()];
        let mut out = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut cur = perm[start];
            while cur != start {
                seen[cur] = true;
                orbit.push(cur);
                cur = perm[cur];
            }
            out.push(orbit);
        }
        out
    }

    /// Vertex orbits (cyclic dart order at each vertex).
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        Self::orbits(&self.sigma)
    }

    /// Face orbits (boundary walks).
    pub fn face_orbits(&self) -> Vec<Vec<usize>> {
        let phi: Vec<usize> = (0..self.dart_count()).map(|d| self.phi(d)).collect();
        Self::orbits(&phi)
    }

    /// Edge pairs as (least dart, other dart).
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.dart_count())
            .filter(|&d| d < self.alpha[d])
            .map(|d| (d, self.alpha[d]))
            .collect()
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        if self.dart_count() == 0 {
            return (0, 0, 1);
        }
        (
            self.vertex_orbits().len(),
            self.dart_count() / 2,
            self.face_orbits().len(),
        )
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.counts();
        v as i64 - e as i64 + f as i64 + if self.dart_count() == 0 { 1 } else { 0 }
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    /// Key (least dart) of the face containing `d`.
    pub fn face_key_of(&self, d: usize) -> usize {
        let mut least = d;
        let mut cur = self.phi(d);
        while cur != d {
            least = least.min(cur);
            cur = self.phi(cur);
        }
        least
    }

    /// Key of the vertex containing `d`.
    pub fn vertex_key_of(&self, d: usize) -> usize {
        let mut least = d;
        let mut cur = self.sigma[d];
        while cur != d {
            least = least.min(cur);
            cur = self.sigma(cur);
        }
        least
    }

    pub fn edge_key_of(&self, d: usize) -> usize {
        d.min(self.alpha[d])
    }

    pub fn face_label(&self, key: usize) -> &LabelExpr {
        &self.faces[&key]
    }

    pub fn edge_data(&self, key: usize) -> &EdgeData {
        &self.edges[&key]
    }

    pub fn vertex_label(&self, key: usize) -> &LabelExpr {
        &self.vertices[&key]
    }

    pub fn sole_face_label(&self) -> Option<&LabelExpr> {
        self.sole_face.as_ref()
    }

    pub fn faces_with_keys(&self) -> Vec<(usize, LabelExpr)> {
        self.faces.iter().map(|(&k, l)| (k, l.clone())).collect()
    }

    pub fn edges_with_keys(&self) -> Vec<(usize, EdgeData)> {
        self.edges.iter().map(|(&k, d)| (k, d.clone())).collect()
    }

    pub fn vertices_with_keys(&self) -> Vec<(usize, LabelExpr)> {
        self.vertices.iter().map(|(&k, l)| (k, l.clone())).collect()
    }

    /// Left face of an edge: the face containing the forward dart.
    pub fn left_face_key(&self, edge_key: usize) -> usize {
        self.face_key_of(self.edges[&edge_key].forward)
    }

    /// Right face of an edge: the face containing the backward dart.
    pub fn right_face_key(&self, edge_key: usize) -> usize {
        self.face_key_of(self.alpha[self.edges[&edge_key].forward])
    }

    /// Tail vertex of an edge (base of the forward dart).
    pub fn tail_vertex_key(&self, edge_key: usize) -> usize {
        self.vertex_key_of(self.edges[&edge_key].forward)
    }

    /// Head vertex of an edge (base of the backward dart).
    pub fn head_vertex_key(&self, edge_key: usize) -> usize {
        self.vertex_key_of(self.alpha[self.edges[&edge_key].forward])
    }

    fn validate_structure(&self) -> Result<(), SurfaceError> {
        let n = self.alpha.len();
        if self.sigma.len() != n {
            return Err(SurfaceError::Invalid(
                "alpha and sigma have different sizes".into(),
            ));
        }
        if n == 0 {
            if self.sole_face.is_none() {
                return Err(SurfaceError::Invalid(
                    "a surface without darts needs its face label".into(),
                ));
            }
            if !self.faces.is_empty() || !self.edges.is_empty() || !self.vertices.is_empty() {
                return Err(SurfaceError::Invalid(
                    "dartless surface carries dart-indexed labels".into(),
                ));
            }
            return Ok(());
        }
        if self.sole_face.is_some() {
            return Err(SurfaceError::Invalid(
                "sole-face label on a surface with darts".into(),
            ));
        }
        // Permutation checks.
        for perm in [&self.alpha, &self.sigma] {
            let mut seen = vec![false; n];
            for &d in perm {
                if d >= n || seen[d] {
                    return Err(SurfaceError::Invalid("not a permutation".into()));
                }
                seen[d] = true;
            }
        }
        for d in 0..n {
            if self.alpha[d] == d || self.alpha[self.alpha[d]] != d {
                return Err(SurfaceError::Invalid(
                    "edge involution must be fixed-point-free and involutive".into(),
                ));
            }
        }
        // Connectivity of the dart graph under sigma and alpha.
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(d) = stack.pop() {
            for next in [self.alpha[d], self.sigma[d]] {
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(SurfaceError::Invalid("surface is not connected".into()));
        }
        // Labels keyed correctly and total.
        let face_keys: BTreeSet<usize> =
            self.face_orbits().iter().map(|o| *o.iter().min().unwrap()).collect();
        if face_keys != self.faces.keys().copied().collect() {
            return Err(SurfaceError::Invalid("face labels out of sync".into()));
        }
        let vertex_keys: BTreeSet<usize> =
            self.vertex_orbits().iter().map(|o| *o.iter().min().unwrap()).collect();
        if vertex_keys != self.vertices.keys().copied().collect() {
            return Err(SurfaceError::Invalid("vertex labels out of sync".into()));
        }
        let edge_keys: BTreeSet<usize> = self.edge_pairs().iter().map(|&(a, _)| a).collect();
        if edge_keys != self.edges.keys().copied().collect() {
            return Err(SurfaceError::Invalid("edge labels out of sync".into()));
        }
        for (&key, data) in &self.edges {
            if data.forward >= n || self.edge_key_of(data.forward) != key {
                return Err(SurfaceError::Invalid(format!(
                    "orientation error: forward dart {} does not belong to edge {}",
                    data.forward + 1,
                    key + 1
                )));
            }
        }
        Ok(())
    }

    /// Structural and sort validation; returns genus on success.
    pub fn validate(&self) -> Result<ValidationSummary, SurfaceError> {
        self.validate_structure()?;
        let chi = self.euler_characteristic();
        if chi % 2 != 0 || chi > 2 {
            return Err(SurfaceError::Invalid(format!(
                "Euler characteristic {chi} is not that of a closed oriented surface"
            )));
        }
        for label in self.faces.values().chain(self.sole_face.iter()) {
            let s = label.sort()?;
            if s != Sort::Cell2 {
                return Err(SurfaceError::Invalid(format!(
                    "face labeled with a {s}: {label}"
                )));
            }
        }
        for data in self.edges.values() {
            let s = data.label.sort()?;
            if s != Sort::Cell1 {
                return Err(SurfaceError::Invalid(format!(
                    "edge labeled with a {s}: {}",
                    data.label
                )));
            }
        }
        for label in self.vertices.values().chain(self.floating.iter()) {
            let s = label.sort()?;
            if s != Sort::Cell0 {
                return Err(SurfaceError::Invalid(format!(
                    "vertex labeled with a {s}: {label}"
                )));
            }
        }
        let (v, e, f) = self.counts();
        Ok(ValidationSummary {
            vertices: v,
            edges: e,
            faces: f,
            genus: self.genus(),
        })
    }

    /// The unstratified genus-g surface carrying a single 2-cell label:
    /// encoded with its canonical skeleton (all skeleton cells carry the
    /// forgetful labels of the face).
    pub fn unstratified(base: &str, genus: u64, face: LabelExpr) -> StratifiedSurface {
        let edge = LabelExpr::forget1(face.clone());
        let vertex = LabelExpr::forget0(edge.clone());
        if genus == 0 {
            // Two vertices joined by one edge.
            let alpha = vec![1, 0];
            let sigma = vec![0, 1];
            let mut faces = BTreeMap::new();
            faces.insert(0, face);
            let mut edges = BTreeMap::new();
            edges.insert(
                0,
                EdgeData {
                    label: edge,
                    forward: 0,
                },
            );
            let mut vertices = BTreeMap::new();
            vertices.insert(0, vertex.clone());
            vertices.insert(1, vertex);
            StratifiedSurface {
                base: base.to_string(),
                alpha,
                sigma,
                faces,
                edges,
                vertices,
                sole_face: None,
                floating: Vec::new(),
            }
        } else {
            // One vertex, 2g loops in the standard interleaved pattern:
            // sigma one 4g-cycle, alpha pairing (4k, 4k+2) and (4k+1, 4k+3).
            let n = (4 * genus) as usize;
            let sigma: Vec<usize> = (0..n).map(|d| (d + 1) % n).collect();
            let mut alpha = vec![0usize; n];
            for k in 0..genus as usize {
                alpha[4 * k] = 4 * k + 2;
                alpha[4 * k + 2] = 4 * k;
                alpha[4 * k + 1] = 4 * k + 3;
                alpha[4 * k + 3] = 4 * k + 1;
            }
            let mut faces = BTreeMap::new();
            faces.insert(0, face);
            let mut edges = BTreeMap::new();
            for k in 0..genus as usize {
                edges.insert(
                    4 * k,
                    EdgeData {
                        label: edge.clone(),
                        forward: 4 * k,
                    },
                );
                edges.insert(
                    4 * k + 1,
                    EdgeData {
                        label: edge.clone(),
                        forward: 4 * k + 1,
                    },
                );
            }
            let mut vertices = BTreeMap::new();
            vertices.insert(0, vertex);
            let s = StratifiedSurface {
                base: base.to_string(),
                alpha,
                sigma,
                faces,
                edges,
                vertices,
                sole_face: None,
                floating: Vec::new(),
            };
            debug_assert_eq!(s.genus(), genus as i64);
            s
        }
    }

    /// A sphere split by one closed wall into an inner and an outer disk.
    /// The forward dart lies in the outer face, so the wall's left side is
    /// `outer` and its right side is `inner`.
    pub fn loop_island(
        base: &str,
        outer: LabelExpr,
        inner: LabelExpr,
        wall: LabelExpr,
    ) -> StratifiedSurface {
        let alpha = vec![1, 0];
        let sigma = vec![1, 0];
        // Faces: phi(0) = sigma(1) = 0 and phi(1) = sigma(0) = 1: two
        // monogons; dart 0 bounds one, dart 1 the other.
        let mut faces = BTreeMap::new();
        faces.insert(0, outer);
        faces.insert(1, inner);
        let mut edges = BTreeMap::new();
        edges.insert(
            0,
            EdgeData {
                label: wall.clone(),
                forward: 0,
            },
        );
        let mut vertices = BTreeMap::new();
        vertices.insert(0, LabelExpr::forget0(wall));
        StratifiedSurface {
            base: base.to_string(),
            alpha,
            sigma,
            faces,
            edges,
            vertices,
            sole_face: None,
            floating: Vec::new(),
        }
    }

    /// Rebuild with the given darts removed, carrying the labels across.
    /// `new_edges` maps surviving edge keys (after renumbering) to data;
    /// callers pass label fixups through the closures.
    pub(crate) fn rebuild(
        &self,
        remove: &BTreeSet<usize>,
        new_alpha: &BTreeMap<usize, usize>,
        new_sigma: &BTreeMap<usize, usize>,
        face_label_of_old_dart: impl Fn(usize) -> Option<LabelExpr>,
        edge_data_override: impl Fn(usize) -> Option<EdgeData>,
        vertex_label_override: impl Fn(usize) -> Option<LabelExpr>,
        sole_face: Option<LabelExpr>,
        extra_floating: Vec<LabelExpr>,
    ) -> Result<StratifiedSurface, SurfaceError> {
        // Renumber surviving darts.
        let survivors: Vec<usize> = (0..self.dart_count())
            .filter(|d| !remove.contains(d))
            .collect();
        let rank: BTreeMap<usize, usize> = survivors
            .iter()
            .enumerate()
            .map(|(i, &d)| (d, i))
            .collect();
        let alpha: Vec<usize> = survivors
            .iter()
            .map(|&d| rank[&new_alpha.get(&d).copied().unwrap_or(self.alpha[d])])
            .collect();
        let sigma: Vec<usize> = survivors
            .iter()
            .map(|&d| rank[&new_sigma.get(&d).copied().unwrap_or(self.sigma[d])])
            .collect();
        let mut out = StratifiedSurface {
            base: self.base.clone(),
            alpha,
            sigma,
            faces: BTreeMap::new(),
            edges: BTreeMap::new(),
            vertices: BTreeMap::new(),
            sole_face,
            floating: self
                .floating
                .iter()
                .cloned()
                .chain(extra_floating)
                .collect(),
        };
        if out.dart_count() == 0 {
            out.validate_structure()?;
            return Ok(out);
        }
        // Faces: each new orbit takes the (unique) carried label of its
        // member darts.
        for orbit in out.face_orbits() {
            let key = *orbit.iter().min().unwrap();
            let mut labels: Vec<LabelExpr> = orbit
                .iter()
                .filter_map(|&d| face_label_of_old_dart(survivors[d]))
                .collect();
            labels.dedup();
            match labels.len() {
                1 => {
                    out.faces.insert(key, labels.pop().unwrap());
                }
                0 => {
                    return Err(SurfaceError::Invalid(
                        "a face lost its label during surgery".into(),
                    ))
                }
                _ => {
                    return Err(SurfaceError::Invalid(format!(
                        "surgery would merge faces with different labels: {labels:?}"
                    )))
                }
            }
        }
        // Edges.
        for (a, b) in out.edge_pairs() {
            let old_a = survivors[a];
            let old_b = survivors[b];
            let data = edge_data_override(old_a.min(old_b))
                .or_else(|| {
                    self.edges
                        .get(&self.edge_key_of(old_a))
                        .filter(|_| self.alpha[old_a] == old_b)
                        .cloned()
                })
                .ok_or_else(|| SurfaceError::Invalid("an edge lost its label".into()))?;
            let forward = rank
                .get(&data.forward)
                .copied()
                .ok_or_else(|| SurfaceError::Invalid("forward dart was removed".into()))?;
            out.edges.insert(
                a,
                EdgeData {
                    label: data.label,
                    forward,
                },
            );
        }
        // Vertices.
        for orbit in out.vertex_orbits() {
            let key = *orbit.iter().min().unwrap();
            let mut labels: Vec<LabelExpr> = orbit
                .iter()
                .filter_map(|&d| vertex_label_override(survivors[d]))
                .collect();
            labels.dedup();
            match labels.len() {
                1 => {
                    out.vertices.insert(key, labels.pop().unwrap());
                }
                0 => {
                    return Err(SurfaceError::Invalid(
                        "a vertex lost its label during surgery".into(),
                    ))
                }
                _ => {
                    return Err(SurfaceError::Invalid(format!(
                        "surgery would merge vertices with different labels: {labels:?}"
                    )))
                }
            }
        }
        out.validate_structure()?;
        Ok(out)
    }
}

/// Headline numbers from validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub genus: i64,
}

impl fmt::Display for ValidationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "valid: V={} E={} F={} genus={}",
            self.vertices, self.edges, self.faces, self.genus
        )
    }
}

fn cycles_to_string(perm: &[usize]) -> String {
    let mut out = String::new();
    for orbit in StratifiedSurface::orbits(perm) {
        out.push('(');
        for (i, d) in orbit.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&(d + 1).to_string());
        }
        out.push(')');
    }
    out
}

fn parse_cycles(text: &str, n: usize) -> Result<Vec<usize>, SurfaceError> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut assigned = vec![false; n];
    let body = text.trim();
    let mut rest = body;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| SurfaceError::Parse(format!("expected '(' in {body:?}")))?;
        let close = rest[open..]
            .find(')')
            .ok_or_else(|| SurfaceError::Parse(format!("unclosed cycle in {body:?}")))?
            + open;
        let cycle: Vec<usize> = rest[open + 1..close]
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| SurfaceError::Parse(format!("bad dart {t:?}")))
                    .and_then(|d| {
                        if d == 0 || d > n {
                            Err(SurfaceError::Parse(format!("dart {d} out of range")))
                        } else {
                            Ok(d - 1)
                        }
                    })
            })
            .collect::<Result<_, _>>()?;
        for (i, &d) in cycle.iter().enumerate() {
            if assigned[d] {
                return Err(SurfaceError::Parse(format!(
                    "dart {} appears twice",
                    d + 1
                )));
            }
            assigned[d] = true;
            perm[d] = cycle[(i + 1) % cycle.len()];
        }
        rest = &rest[close + 1..];
    }
    Ok(perm)
}

impl fmt::Display for StratifiedSurface {
    /// Text format: header, base, dart count, the two permutations in
    /// cycle notation (1-based), then one line per labelled cell. Parsing
    /// and printing round-trip bit-exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "surface")?;
        writeln!(f, "base {}", self.base)?;
        writeln!(f, "darts {}", self.dart_count())?;
        if self.dart_count() > 0 {
            writeln!(f, "involution {}", cycles_to_string(&self.alpha))?;
            writeln!(f, "rotation {}", cycles_to_string(&self.sigma))?;
        }
        if let Some(label) = &self.sole_face {
            writeln!(f, "face - {label}")?;
        }
        for (key, label) in &self.faces {
            writeln!(f, "face {} {label}", key + 1)?;
        }
        for (key, data) in &self.edges {
            writeln!(f, "edge {} {} {}", key + 1, data.forward + 1, data.label)?;
        }
        for (key, label) in &self.vertices {
            writeln!(f, "vertex {} {label}", key + 1)?;
        }
        for label in &self.floating {
            writeln!(f, "floating {label}")?;
        }
        Ok(())
    }
}

/// Parse the `surface` text format.
pub fn parse_surface(text: &str) -> Result<StratifiedSurface, SurfaceError> {
    let mut base = "trivial".to_string();
    let mut darts: Option<usize> = None;
    let mut alpha: Option<Vec<usize>> = None;
    let mut sigma: Option<Vec<usize>> = None;
    let mut faces: BTreeMap<usize, LabelExpr> = BTreeMap::new();
    let mut sole_face = None;
    let mut edges: BTreeMap<usize, EdgeData> = BTreeMap::new();
    let mut vertices: BTreeMap<usize, LabelExpr> = BTreeMap::new();
    let mut floating = Vec::new();
    let mut seen_header = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (tag, rest) = line.split_once(' ').unwrap_or((line, ""));
        match tag {
            "surface" => seen_header = true,
            "base" => base = rest.trim().to_string(),
            "darts" => {
                darts = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| SurfaceError::Parse(format!("bad dart count {rest:?}")))?,
                )
            }
            "involution" => {
                let n = darts.ok_or_else(|| {
                    SurfaceError::Parse("darts must precede involution".into())
                })?;
                alpha = Some(parse_cycles(rest, n)?);
            }
            "rotation" => {
                let n = darts
                    .ok_or_else(|| SurfaceError::Parse("darts must precede rotation".into()))?;
                sigma = Some(parse_cycles(rest, n)?);
            }
            "face" => {
                let (key, label) = rest
                    .split_once(' ')
                    .ok_or_else(|| SurfaceError::Parse(format!("bad face line {line:?}")))?;
                let expr: LabelExpr = label.trim().parse()?;
                if key.trim() == "-" {
                    sole_face = Some(expr);
                } else {
                    let k: usize = key
                        .trim()
                        .parse()
                        .map_err(|_| SurfaceError::Parse(format!("bad face key {key:?}")))?;
                    faces.insert(k - 1, expr);
                }
            }
            "edge" => {
                let parts: Vec<&str> = rest.splitn(3, ' ').collect();
                if parts.len() != 3 {
                    return Err(SurfaceError::Parse(format!("bad edge line {line:?}")));
                }
                let key: usize = parts[0]
                    .parse()
                    .map_err(|_| SurfaceError::Parse(format!("bad edge key {:?}", parts[0])))?;
                let forward: usize = parts[1].parse().map_err(|_| {
                    SurfaceError::Parse(format!("bad forward dart {:?}", parts[1]))
                })?;
                let label: LabelExpr = parts[2].trim().parse()?;
                edges.insert(
                    key - 1,
                    EdgeData {
                        label,
                        forward: forward - 1,
                    },
                );
            }
            "vertex" => {
                let (key, label) = rest
                    .split_once(' ')
                    .ok_or_else(|| SurfaceError::Parse(format!("bad vertex line {line:?}")))?;
                let k: usize = key
                    .trim()
                    .parse()
                    .map_err(|_| SurfaceError::Parse(format!("bad vertex key {key:?}")))?;
                vertices.insert(k - 1, label.trim().parse()?);
            }
            "floating" => floating.push(rest.trim().parse()?),
            _ => return Err(SurfaceError::Parse(format!("unknown line {line:?}"))),
        }
    }
    if !seen_header {
        return Err(SurfaceError::Parse("missing `surface` header".into()));
    }
    let n = darts.ok_or_else(|| SurfaceError::Parse("missing dart count".into()))?;
    let alpha = alpha.unwrap_or_else(|| (0..n).collect());
    let sigma = sigma.unwrap_or_else(|| (0..n).collect());
    if n > 0 && (alpha.len() != n || sigma.len() != n) {
        return Err(SurfaceError::Parse("permutation sizes disagree".into()));
    }
    StratifiedSurface::new(
        &base, alpha, sigma, faces, edges, vertices, sole_face, floating,
    )
}

#[cfg(test)]
mod tests;
