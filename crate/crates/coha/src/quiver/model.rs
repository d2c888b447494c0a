//! Quivers with involution and duality structure.
//!
//! The involution `theta` reverses orientation: `src(theta(a)) = theta(tgt(a))`
//! and `tgt(theta(a)) = theta(src(a))`. Signs satisfy
//! `sgn(a) * sgn(theta(a)) = sgn(src(a)) * sgn(tgt(a))`. Every theta-fixed
//! vertex carries a declared classical type (Sp, even O, odd O) which fixes
//! its gauge group, Weyl block and root system.

use crate::symbolic::{Polynomial, Variable};
use crate::weyl::BlockKind;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type VertexId = u32;
pub type ArrowId = u32;
/// Orbits are named by their smallest vertex id.
pub type OrbitId = u32;

/// Classical type of a theta-fixed vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FixedType {
    /// Symplectic gauge group `Sp(2k)`.
    Sp,
    /// Even orthogonal gauge group `O(2k)`.
    OEven,
    /// Odd orthogonal gauge group `O(2k+1)`.
    OOdd,
}

impl FixedType {
    pub fn weyl_kind(self) -> BlockKind {
        match self {
            FixedType::Sp | FixedType::OOdd => BlockKind::BC,
            FixedType::OEven => BlockKind::D,
        }
    }
}

/// Arrow-orbit classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowCase {
    /// Neither endpoint fixed.
    O,
    /// Fixed self-loop with `theta(a) = a`.
    I,
    /// Distinct endpoints exchanged by theta, arrow self-paired.
    II,
    /// Source non-fixed, target fixed.
    III,
    /// Source fixed, target non-fixed (computed through the III partner).
    IIIPrime,
    /// Both endpoints fixed, distinct, opposite parity.
    IV,
}

#[derive(Clone, Debug)]
pub struct VertexData {
    pub id: VertexId,
    pub theta: VertexId,
    pub sgn: i8,
}

#[derive(Clone, Debug)]
pub struct ArrowData {
    pub id: ArrowId,
    pub src: VertexId,
    pub tgt: VertexId,
    pub theta: ArrowId,
    pub sgn: i8,
    /// Affine-linear weight in declared edge-weight parameters.
    pub weight: Polynomial,
}

/// Framing data at one vertex orbit.
#[derive(Clone, Debug)]
pub struct FramingBlock {
    pub rank: usize,
    /// One equivariant weight variable per framing slot.
    pub weights: Vec<Variable>,
}

pub type Framing = BTreeMap<OrbitId, FramingBlock>;

#[derive(Clone, Debug)]
pub struct DualityQuiver {
    pub vertices: Vec<VertexData>,
    pub arrows: Vec<ArrowData>,
    pub fixed_types: BTreeMap<VertexId, FixedType>,
    pub framing: Framing,
    pub params: Vec<String>,
}

/// One invariant violation, with the offending ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub code: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.detail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum QuiverError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown arrow {0}")]
    UnknownArrow(ArrowId),
    #[error("arrow {0} falls outside the supported case list: {1}")]
    Unclassifiable(ArrowId, String),
    #[error("quiver is invalid: {0}")]
    Invalid(String),
    #[error("unsupported sign convention: {0}")]
    UnsupportedSignConvention(String),
    #[error("framing mismatch: {0}")]
    FramingMismatch(String),
}

impl DualityQuiver {
    pub fn vertex(&self, id: VertexId) -> Result<&VertexData, QuiverError> {
        self.vertices
            .iter()
            .find(|v| v.id == id)
            .ok_or(QuiverError::UnknownVertex(id))
    }

    pub fn arrow(&self, id: ArrowId) -> Result<&ArrowData, QuiverError> {
        self.arrows
            .iter()
            .find(|a| a.id == id)
            .ok_or(QuiverError::UnknownArrow(id))
    }

    pub fn theta_vertex(&self, id: VertexId) -> VertexId {
        self.vertex(id).map(|v| v.theta).unwrap_or(id)
    }

    pub fn is_fixed(&self, id: VertexId) -> bool {
        self.theta_vertex(id) == id
    }

    pub fn fixed_type(&self, id: VertexId) -> Option<FixedType> {
        self.fixed_types.get(&id).copied()
    }

    /// Orbit representative: the smaller id of `{v, theta(v)}`.
    pub fn orbit_of(&self, v: VertexId) -> OrbitId {
        v.min(self.theta_vertex(v))
    }

    /// Weyl-block kind of a vertex orbit (module side).
    pub fn orbit_kind(&self, orbit: OrbitId) -> BlockKind {
        match self.fixed_type(orbit) {
            Some(t) => t.weyl_kind(),
            None => BlockKind::Gl,
        }
    }

    /// Declared parameter variables (edge weights).
    pub fn param_vars(&self) -> Vec<Variable> {
        self.params.iter().map(|p| Variable::weight(p)).collect()
    }

    /// Report every violated structural invariant.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut push = |code: &'static str, detail: String| {
            report.violations.push(Violation { code, detail });
        };
        let vertex_ids: BTreeSet<VertexId> = self.vertices.iter().map(|v| v.id).collect();
        if vertex_ids.len() != self.vertices.len() {
            push("duplicate-vertex-id", "vertex ids are not distinct".into());
        }
        let arrow_ids: BTreeSet<ArrowId> = self.arrows.iter().map(|a| a.id).collect();
        if arrow_ids.len() != self.arrows.len() {
            push("duplicate-arrow-id", "arrow ids are not distinct".into());
        }
        for v in &self.vertices {
            if !vertex_ids.contains(&v.theta) {
                push("theta-unknown-vertex", format!("vertex {}", v.id));
                continue;
            }
            let w = self.vertices.iter().find(|w| w.id == v.theta).unwrap();
            if w.theta != v.id {
                push("theta-not-involutive", format!("vertex {}", v.id));
            }
            if w.sgn != v.sgn {
                push(
                    "sign-not-theta-invariant",
                    format!("vertices {} and {}", v.id, w.id),
                );
            }
            if v.sgn != 1 && v.sgn != -1 {
                push("bad-sign", format!("vertex {}", v.id));
            }
        }
        for a in &self.arrows {
            if !vertex_ids.contains(&a.src) || !vertex_ids.contains(&a.tgt) {
                push("arrow-unknown-vertex", format!("arrow {}", a.id));
                continue;
            }
            let Some(b) = self.arrows.iter().find(|b| b.id == a.theta) else {
                push("theta-unknown-arrow", format!("arrow {}", a.id));
                continue;
            };
            if b.theta != a.id {
                push("theta-not-involutive", format!("arrow {}", a.id));
            }
            if b.src != self.theta_vertex(a.tgt) || b.tgt != self.theta_vertex(a.src) {
                push(
                    "theta-orientation",
                    format!(
                        "arrow {}: theta image {} must go {} -> {}",
                        a.id,
                        b.id,
                        self.theta_vertex(a.tgt),
                        self.theta_vertex(a.src)
                    ),
                );
            }
            let (sv, tv) = (
                self.vertices.iter().find(|v| v.id == a.src),
                self.vertices.iter().find(|v| v.id == a.tgt),
            );
            if let (Some(sv), Some(tv)) = (sv, tv) {
                if i32::from(a.sgn) * i32::from(b.sgn) != i32::from(sv.sgn) * i32::from(tv.sgn) {
                    push("sign-incompatible", format!("arrow {}", a.id));
                }
            }
            if !a.weight.is_affine() {
                push("weight-not-affine", format!("arrow {}", a.id));
            }
            let declared: BTreeSet<Variable> = self.param_vars().into_iter().collect();
            if !a.weight.variables().iter().all(|v| declared.contains(v)) {
                push("weight-unknown-param", format!("arrow {}", a.id));
            }
        }
        for v in &self.vertices {
            let fixed = v.theta == v.id;
            match (fixed, self.fixed_types.contains_key(&v.id)) {
                (true, false) => push("fixed-type-missing", format!("vertex {}", v.id)),
                (false, true) => push("fixed-type-on-nonfixed", format!("vertex {}", v.id)),
                _ => {}
            }
        }
        for (orbit, fr) in &self.framing {
            if !vertex_ids.contains(orbit) {
                push("framing-unknown-orbit", format!("orbit {orbit}"));
                continue;
            }
            if self.orbit_of(*orbit) != *orbit {
                push("framing-not-representative", format!("orbit {orbit}"));
            }
            if fr.weights.len() != fr.rank {
                push(
                    "framing-rank-mismatch",
                    format!("orbit {orbit}: rank {} != {} weights", fr.rank, fr.weights.len()),
                );
            }
        }
        report
    }

    /// Classify an arrow into the supported case list.
    pub fn classify_arrow(&self, id: ArrowId) -> Result<ArrowCase, QuiverError> {
        let a = self.arrow(id)?;
        let sf = self.is_fixed(a.src);
        let tf = self.is_fixed(a.tgt);
        match (sf, tf) {
            (false, false) => {
                if a.src != a.tgt && self.theta_vertex(a.src) == a.tgt {
                    if a.theta == a.id {
                        Ok(ArrowCase::II)
                    } else {
                        Ok(ArrowCase::O)
                    }
                } else {
                    Ok(ArrowCase::O)
                }
            }
            (false, true) => Ok(ArrowCase::III),
            (true, false) => Ok(ArrowCase::IIIPrime),
            (true, true) => {
                if a.src == a.tgt {
                    if a.theta == a.id {
                        Ok(ArrowCase::I)
                    } else {
                        Err(QuiverError::Unclassifiable(
                            id,
                            "fixed self-loop not preserved by theta".into(),
                        ))
                    }
                } else {
                    let ps = self.vertex(a.src)?.sgn;
                    let pt = self.vertex(a.tgt)?.sgn;
                    if ps != pt {
                        Ok(ArrowCase::IV)
                    } else {
                        Err(QuiverError::Unclassifiable(
                            id,
                            "both endpoints fixed with equal parity".into(),
                        ))
                    }
                }
            }
        }
    }

    /// Vertex orbits `(representative, partner)` sorted by representative.
    pub fn vertex_orbits(&self) -> Vec<(OrbitId, Option<VertexId>)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut ids: Vec<VertexId> = self.vertices.iter().map(|v| v.id).collect();
        ids.sort_unstable();
        for id in ids {
            if seen.contains(&id) {
                continue;
            }
            let other = self.theta_vertex(id);
            seen.insert(id);
            if other == id {
                out.push((id, None));
            } else {
                seen.insert(other);
                out.push((id.min(other), Some(id.max(other))));
            }
        }
        out
    }

    /// Arrow orbits `(representative, partner)` sorted by representative id;
    /// representatives are the smallest arrow id in the orbit.
    pub fn arrow_orbits(&self) -> Vec<(ArrowId, Option<ArrowId>)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut ids: Vec<ArrowId> = self.arrows.iter().map(|a| a.id).collect();
        ids.sort_unstable();
        for id in ids {
            if seen.contains(&id) {
                continue;
            }
            let other = self.arrow(id).map(|a| a.theta).unwrap_or(id);
            seen.insert(id);
            if other == id {
                out.push((id, None));
            } else {
                seen.insert(other);
                out.push((id.min(other), Some(id.max(other))));
            }
        }
        out
    }

    /// The member of an arrow orbit the kernel formulas instantiate: the
    /// case-III member when the orbit mixes III and III', otherwise the
    /// representative itself.
    pub fn orbit_kernel_member(&self, rep: ArrowId) -> Result<ArrowId, QuiverError> {
        let case = self.classify_arrow(rep)?;
        if case == ArrowCase::IIIPrime {
            let partner = self.arrow(rep)?.theta;
            if self.classify_arrow(partner)? == ArrowCase::III {
                return Ok(partner);
            }
            return Err(QuiverError::Unclassifiable(
                rep,
                "source-fixed arrow without a target-fixed partner".into(),
            ));
        }
        Ok(rep)
    }
}

/// A plain quiver (no duality data) used as input for the doubled and
/// tripled constructions. `involution` is a diagram automorphism (defaults
/// to the identity).
#[derive(Clone, Debug)]
pub struct PlainQuiver {
    pub vertices: Vec<VertexId>,
    /// `(id, src, tgt)`
    pub arrows: Vec<(ArrowId, VertexId, VertexId)>,
    pub involution: BTreeMap<VertexId, VertexId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoublingMode {
    Double,
    Triple,
}

/// Build the doubled (`a`, `abar`) or tripled (plus one loop per vertex)
/// duality quiver. Weights: `t1` on original arrows, `t2` on reversed ones,
/// `-t1-t2` on loops.
///
/// The involution sends `a: i -> j` to an arrow `sigma(j) -> sigma(i)`:
/// a plain arrow when the diagram has one there (folded quivers), otherwise
/// the reverse of the `sigma(i) -> sigma(j)` arrow (bipartite convention).
/// For the one-vertex quiver with identity involution every loop is
/// theta-fixed. Arrow signs are chosen per orbit so that
/// `sgn(a) sgn(theta(a)) = sgn(src) sgn(tgt)`; self-paired arrows whose
/// endpoint signs multiply to -1 are rejected.
pub fn double_triple(
    plain: &PlainQuiver,
    mode: DoublingMode,
    fixed_types: BTreeMap<VertexId, FixedType>,
) -> Result<DualityQuiver, QuiverError> {
    let sigma = |v: VertexId| *plain.involution.get(&v).unwrap_or(&v);
    for (&a, &b) in &plain.involution {
        if sigma(b) != a {
            return Err(QuiverError::UnsupportedSignConvention(format!(
                "vertex involution is not involutive at {a}"
            )));
        }
    }
    let t1 = Polynomial::var(Variable::weight("t1"));
    let t2 = Polynomial::var(Variable::weight("t2"));
    let loop_weight = -&(&t1 + &t2);

    // Doubled arrow ids: plain arrow at index k -> id 2k, its reverse -> 2k+1.
    let fwd = |k: usize| 2 * k as ArrowId;
    let rev = |k: usize| 2 * k as ArrowId + 1;
    let n_plain = plain.arrows.len();
    let mut theta: BTreeMap<ArrowId, ArrowId> = BTreeMap::new();
    for (k, (_, src, tgt)) in plain.arrows.iter().enumerate() {
        if theta.contains_key(&fwd(k)) {
            continue;
        }
        // Preferred: a plain arrow sigma(tgt) -> sigma(src).
        let partner_plain = plain
            .arrows
            .iter()
            .enumerate()
            .position(|(m, (_, s, t))| {
                *s == sigma(*tgt) && *t == sigma(*src) && !theta.contains_key(&fwd(m))
            });
        if let Some(m) = partner_plain {
            theta.insert(fwd(k), fwd(m));
            theta.insert(fwd(m), fwd(k));
            theta.insert(rev(k), rev(m));
            theta.insert(rev(m), rev(k));
            continue;
        }
        // Fallback: pair with the reverse of the sigma-image arrow.
        let img = plain
            .arrows
            .iter()
            .position(|(_, s, t)| *s == sigma(*src) && *t == sigma(*tgt))
            .ok_or_else(|| {
                QuiverError::UnsupportedSignConvention(format!(
                    "no involution partner for the arrow {} -> {}",
                    src, tgt
                ))
            })?;
        theta.insert(fwd(k), rev(img));
        theta.insert(rev(img), fwd(k));
        theta.insert(rev(k), fwd(img));
        theta.insert(fwd(img), rev(k));
    }

    let vertex_sgn = |v: VertexId| -> i8 {
        match fixed_types.get(&v) {
            Some(FixedType::Sp) => -1,
            _ => 1,
        }
    };

    let mut arrows: Vec<ArrowData> = Vec::new();
    for (k, (_, src, tgt)) in plain.arrows.iter().enumerate() {
        for (id, s, t, w) in [
            (fwd(k), *src, *tgt, t1.clone()),
            (rev(k), *tgt, *src, t2.clone()),
        ] {
            arrows.push(ArrowData {
                id,
                src: s,
                tgt: t,
                theta: theta[&id],
                sgn: 1,
                weight: w,
            });
        }
    }
    if mode == DoublingMode::Triple {
        let base = 2 * n_plain as ArrowId;
        let vpos = |v: VertexId| plain.vertices.iter().position(|w| *w == v).unwrap() as ArrowId;
        for (k, v) in plain.vertices.iter().enumerate() {
            arrows.push(ArrowData {
                id: base + k as ArrowId,
                src: *v,
                tgt: *v,
                theta: base + vpos(sigma(*v)),
                sgn: 1,
                weight: loop_weight.clone(),
            });
        }
    }
    // Orbit-wise sign assignment.
    let mut assigned: BTreeSet<ArrowId> = BTreeSet::new();
    let arrow_info: BTreeMap<ArrowId, (VertexId, VertexId, ArrowId)> = arrows
        .iter()
        .map(|a| (a.id, (a.src, a.tgt, a.theta)))
        .collect();
    let mut sgn_of: BTreeMap<ArrowId, i8> = BTreeMap::new();
    for a in &arrows {
        if assigned.contains(&a.id) {
            continue;
        }
        let target = vertex_sgn(a.src) * vertex_sgn(a.tgt);
        if a.theta == a.id {
            if target != 1 {
                return Err(QuiverError::UnsupportedSignConvention(format!(
                    "self-paired arrow {} with endpoint sign product -1",
                    a.id
                )));
            }
            sgn_of.insert(a.id, 1);
            assigned.insert(a.id);
        } else {
            let (_, _, partner) = arrow_info[&a.id];
            sgn_of.insert(a.id, 1);
            sgn_of.insert(partner, target);
            assigned.insert(a.id);
            assigned.insert(partner);
        }
    }
    for a in &mut arrows {
        a.sgn = sgn_of[&a.id];
    }

    let vertices: Vec<VertexData> = plain
        .vertices
        .iter()
        .map(|v| VertexData {
            id: *v,
            theta: sigma(*v),
            sgn: vertex_sgn(*v),
        })
        .collect();
    let q = DualityQuiver {
        vertices,
        arrows,
        fixed_types,
        framing: Framing::new(),
        params: vec!["t1".into(), "t2".into()],
    };
    let report = q.validate();
    if !report.is_valid() {
        return Err(QuiverError::Invalid(
            report
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    Ok(q)
}

/// Attach framing data (checked against the quiver's orbits).
pub fn frame(q: &DualityQuiver, framing: Framing) -> Result<DualityQuiver, QuiverError> {
    for (orbit, fr) in &framing {
        q.vertex(*orbit)?;
        if q.orbit_of(*orbit) != *orbit {
            return Err(QuiverError::FramingMismatch(format!(
                "orbit key {orbit} is not a representative"
            )));
        }
        if fr.weights.len() != fr.rank {
            return Err(QuiverError::FramingMismatch(format!(
                "orbit {orbit}: rank {} != {} weights",
                fr.rank,
                fr.weights.len()
            )));
        }
    }
    let mut out = q.clone();
    out.framing = framing;
    Ok(out)
}

/// Dimension vector for the plain quiver (one entry per vertex).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct DimVec(pub BTreeMap<VertexId, u32>);

impl DimVec {
    pub fn zero() -> Self {
        DimVec::default()
    }

    pub fn delta(v: VertexId) -> Self {
        DimVec(BTreeMap::from([(v, 1)]))
    }

    pub fn get(&self, v: VertexId) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: VertexId, n: u32) {
        if n == 0 {
            self.0.remove(&v);
        } else {
            self.0.insert(v, n);
        }
    }

    pub fn add(&self, other: &DimVec) -> DimVec {
        let mut out = self.clone();
        for (v, n) in &other.0 {
            out.set(*v, out.get(*v) + n);
        }
        out
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    /// Image under the vertex involution.
    pub fn theta(&self, q: &DualityQuiver) -> DimVec {
        let mut out = DimVec::zero();
        for (v, n) in &self.0 {
            out.set(q.theta_vertex(*v), out.get(q.theta_vertex(*v)) + n);
        }
        out
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, n)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}: {n}")?;
        }
        write!(f, "}}")
    }
}

/// Orthosymplectic dimension vector: torus rank per vertex orbit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct OspDimVec(pub BTreeMap<OrbitId, u32>);

impl OspDimVec {
    pub fn zero() -> Self {
        OspDimVec::default()
    }

    pub fn delta(orbit: OrbitId) -> Self {
        OspDimVec(BTreeMap::from([(orbit, 1)]))
    }

    pub fn get(&self, orbit: OrbitId) -> u32 {
        self.0.get(&orbit).copied().unwrap_or(0)
    }

    pub fn set(&mut self, orbit: OrbitId, n: u32) {
        if n == 0 {
            self.0.remove(&orbit);
        } else {
            self.0.insert(orbit, n);
        }
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    /// Degree of the module after acting by an algebra element of degree `d`:
    /// at orbit `[i]` the rank grows by `d_i + d_{theta(i)}` (one of the two
    /// summands at a fixed vertex).
    pub fn after_action(&self, q: &DualityQuiver, d: &DimVec) -> OspDimVec {
        let mut out = self.clone();
        for (orbit, _) in q.vertex_orbits() {
            let grow = if q.is_fixed(orbit) {
                d.get(orbit)
            } else {
                let partner = q.theta_vertex(orbit);
                d.get(orbit) + d.get(partner)
            };
            if grow > 0 {
                out.set(orbit, out.get(orbit) + grow);
            }
        }
        out
    }
}

impl fmt::Display for OspDimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, n)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}: {n}")?;
        }
        write!(f, "}}")
    }
}

/// Enumerate the orthosymplectic decompositions of `d`: pairs `(d', d'')`
/// with `d' + theta(d') + d'' = d` rank-wise per orbit.
pub fn osp_decompositions(q: &DualityQuiver, d: &OspDimVec) -> Vec<(DimVec, OspDimVec)> {
    let orbits = q.vertex_orbits();
    let mut splits: Vec<(DimVec, OspDimVec)> = vec![(DimVec::zero(), OspDimVec::zero())];
    for (rep, partner) in orbits {
        let rank = d.get(rep);
        let mut next = Vec::new();
        for (dprime, ddouble) in &splits {
            match partner {
                None => {
                    for a in 0..=rank {
                        let mut dp = dprime.clone();
                        dp.set(rep, a);
                        let mut dd = ddouble.clone();
                        dd.set(rep, rank - a);
                        next.push((dp, dd));
                    }
                }
                Some(other) => {
                    for a in 0..=rank {
                        for b in 0..=(rank - a) {
                            let mut dp = dprime.clone();
                            dp.set(rep, a);
                            dp.set(other, b);
                            let mut dd = ddouble.clone();
                            dd.set(rep, rank - a - b);
                            next.push((dp, dd));
                        }
                    }
                }
            }
        }
        splits = next;
    }
    splits
}

// ---------------------------------------------------------------------------
// Stock examples used across tests and the command line
// ---------------------------------------------------------------------------

/// The tripled one-loop quiver: one fixed vertex, three theta-fixed loops
/// with weights `t1`, `t2`, `-t1-t2`.
pub fn jordan_tripled(fixed: FixedType) -> DualityQuiver {
    let plain = PlainQuiver {
        vertices: vec![1],
        arrows: vec![(0, 1, 1)],
        involution: BTreeMap::new(),
    };
    double_triple(&plain, DoublingMode::Triple, BTreeMap::from([(1, fixed)]))
        .expect("valid by construction")
}

/// The folded three-vertex linear quiver, tripled, with the central vertex
/// fixed: vertices `1 <-> 3`, center `2`.
pub fn folded_a3(center: FixedType) -> DualityQuiver {
    let plain = PlainQuiver {
        vertices: vec![1, 2, 3],
        arrows: vec![(0, 1, 2), (1, 2, 3)],
        involution: BTreeMap::from([(1, 3), (3, 1), (2, 2)]),
    };
    double_triple(&plain, DoublingMode::Triple, BTreeMap::from([(2, center)]))
        .expect("valid by construction")
}

/// Two non-fixed vertices exchanged by theta with two self-paired arrows
/// between them: the smallest quiver with exchanged-pair (case II) orbits.
pub fn exchanged_pair_quiver() -> DualityQuiver {
    let t1 = Polynomial::var(Variable::weight("t1"));
    let t2 = Polynomial::var(Variable::weight("t2"));
    let q = DualityQuiver {
        vertices: vec![
            VertexData { id: 1, theta: 2, sgn: 1 },
            VertexData { id: 2, theta: 1, sgn: 1 },
        ],
        arrows: vec![
            ArrowData {
                id: 0,
                src: 1,
                tgt: 2,
                theta: 0,
                sgn: 1,
                weight: t1,
            },
            ArrowData {
                id: 1,
                src: 2,
                tgt: 1,
                theta: 1,
                sgn: 1,
                weight: t2,
            },
        ],
        fixed_types: BTreeMap::new(),
        framing: Framing::new(),
        params: vec!["t1".into(), "t2".into()],
    };
    debug_assert!(q.validate().is_valid());
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_tripled_is_valid_with_case_i_loops() {
        let q = jordan_tripled(FixedType::Sp);
        assert!(q.validate().is_valid());
        assert_eq!(q.arrows.len(), 3);
        for a in &q.arrows {
            assert_eq!(q.classify_arrow(a.id).unwrap(), ArrowCase::I);
        }
        assert_eq!(q.arrow_orbits().len(), 3);
        assert!(q.arrow_orbits().iter().all(|(_, p)| p.is_none()));
    }

    #[test]
    fn broken_involution_detected() {
        let mut q = jordan_tripled(FixedType::Sp);
        q.arrows[0].theta = q.arrows[1].id;
        let report = q.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == "theta-not-involutive"));
    }

    #[test]
    fn sign_incompatibility_detected() {
        let mut q = folded_a3(FixedType::Sp);
        q.arrows[0].sgn = -q.arrows[0].sgn;
        let report = q.validate();
        assert!(report.violations.iter().any(|v| v.code == "sign-incompatible"));
    }

    #[test]
    fn folded_a3_classification() {
        let q = folded_a3(FixedType::Sp);
        assert!(q.validate().is_valid());
        // Arrows into the center from a non-fixed vertex: case III.
        let into_center: Vec<ArrowId> = q
            .arrows
            .iter()
            .filter(|a| a.tgt == 2 && a.src != 2)
            .map(|a| a.id)
            .collect();
        assert!(!into_center.is_empty());
        for id in into_center {
            assert_eq!(q.classify_arrow(id).unwrap(), ArrowCase::III);
        }
        // Outer loops: case O; center loop: case I.
        for a in &q.arrows {
            if a.src == a.tgt {
                let expect = if a.src == 2 { ArrowCase::I } else { ArrowCase::O };
                assert_eq!(q.classify_arrow(a.id).unwrap(), expect);
            }
        }
        // Vertex orbits: outer pair and center.
        assert_eq!(q.vertex_orbits(), vec![(1, Some(3)), (2, None)]);
    }

    #[test]
    fn exchanged_pair_is_case_ii() {
        let q = exchanged_pair_quiver();
        assert!(q.validate().is_valid());
        assert_eq!(q.classify_arrow(0).unwrap(), ArrowCase::II);
        assert_eq!(q.classify_arrow(1).unwrap(), ArrowCase::II);
    }

    #[test]
    fn double_of_a2() {
        let plain = PlainQuiver {
            vertices: vec![1, 2],
            arrows: vec![(0, 1, 2)],
            involution: BTreeMap::from([(1, 1), (2, 2)]),
        };
        let q = double_triple(
            &plain,
            DoublingMode::Double,
            BTreeMap::from([(1, FixedType::OEven), (2, FixedType::Sp)]),
        )
        .unwrap();
        assert!(q.validate().is_valid());
        assert_eq!(q.arrows.len(), 2);
        // Both endpoints fixed with opposite parity: case IV.
        assert_eq!(q.classify_arrow(0).unwrap(), ArrowCase::IV);
    }

    #[test]
    fn unclassifiable_rejected() {
        let plain = PlainQuiver {
            vertices: vec![1, 2],
            arrows: vec![(0, 1, 2)],
            involution: BTreeMap::from([(1, 1), (2, 2)]),
        };
        // Equal parity at both fixed endpoints
        let q = double_triple(
            &plain,
            DoublingMode::Double,
            BTreeMap::from([(1, FixedType::OEven), (2, FixedType::OOdd)]),
        )
        .unwrap();
        assert!(matches!(
            q.classify_arrow(0),
            Err(QuiverError::Unclassifiable(..))
        ));
    }

    #[test]
    fn osp_decompositions_enumeration() {
        let q = jordan_tripled(FixedType::Sp);
        let d = OspDimVec(BTreeMap::from([(1, 2)]));
        let splits = osp_decompositions(&q, &d);
        // d' in {0,1,2} at the single fixed vertex
        assert_eq!(splits.len(), 3);
        let q2 = folded_a3(FixedType::Sp);
        let d2 = OspDimVec(BTreeMap::from([(1, 1), (2, 1)]));
        let splits2 = osp_decompositions(&q2, &d2);
        // orbit {1,3}: (a,b) with a+b<=1: 3 options; center: 2 options
        assert_eq!(splits2.len(), 6);
    }

    #[test]
    fn framing_validation() {
        let q = jordan_tripled(FixedType::Sp);
        let fr = Framing::from([(
            1,
            FramingBlock {
                rank: 1,
                weights: vec![Variable::weight("u1")],
            },
        )]);
        let framed = frame(&q, fr).unwrap();
        assert!(framed.validate().is_valid());
        let bad = Framing::from([(
            1,
            FramingBlock {
                rank: 2,
                weights: vec![Variable::weight("u1")],
            },
        )]);
        assert!(frame(&q, bad).is_err());
    }
}
