//! Reflections and Coxeter transformations on dimension vectors, reduction of
//! orientations to the canonical ones, and the nonhomogeneous tubes.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, SymmetricQuiver};
use crate::types::{classify, defect, is_canonical_orientation, null_root, TameType};

/// `c_x(a)`: the entry at `x` becomes the sum over neighbours along arrows at
/// `x` minus `a(x)`. Entries may become negative.
pub fn reflect_dim(q: &Quiver, x: usize, a: &[i64]) -> Result<DimVector> {
    if a.len() != q.num_vertices() {
        return Err(Error::Malformed(format!("vector has {} entries but the quiver has {} vertices", a.len(), q.num_vertices())));
    }
    if x >= q.num_vertices() {
        return Err(Error::Malformed(format!("vertex index {x} out of range")));
    }
    if !q.is_sink(x) && !q.is_source(x) {
        return Err(Error::Precondition(format!("{} is neither a sink nor a source", q.vertex_name(x))));
    }
    let neighbours: i64 = q
        .arrows()
        .iter()
        .filter_map(|ar| match (ar.tail == x, ar.head == x) {
            (true, false) => Some(a[ar.head]),
            (false, true) => Some(a[ar.tail]),
            _ => None,
        })
        .sum();
    let mut out = a.to_vec();
    out[x] = neighbours - a[x];
    Ok(out)
}

/// Reflects at an admissible sink (or source) `x` and then at `σx`,
/// returning the reflected symmetric quiver together with the vector.
pub fn reflect_pair_dim(qs: &SymmetricQuiver, x: usize, a: &[i64]) -> Result<(SymmetricQuiver, DimVector)> {
    let reflected = qs.reflect_pair(x)?;
    let q = qs.quiver();
    let mut v = reflect_dim(q, x, a)?;
    let s = qs.sigma_vertex(x);
    if s != x {
        // No arrow joins x and σx, so σx keeps its sink/source status after
        // reversing the arrows at x.
        let mid = q.reverse_at(&[x]);
        v = reflect_dim(&mid, s, &v)?;
    }
    Ok((reflected, v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Plus,
    Minus,
}

/// The admissible numbering used by [`coxeter_dim`]: at each step the
/// lowest-index sink (for `Plus`) or source (for `Minus`) not yet used.
pub fn coxeter_order(q: &Quiver, dir: Direction) -> Vec<usize> {
    let n = q.num_vertices();
    let mut cur = q.clone();
    let mut used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let x = (0..n)
            .find(|&x| {
                !used[x]
                    && match dir {
                        Direction::Plus => cur.is_sink(x),
                        Direction::Minus => cur.is_source(x),
                    }
            })
            .expect("acyclic quiver always has an unused sink");
        used[x] = true;
        order.push(x);
        cur = cur.reverse_at(&[x]);
    }
    order
}

/// Applies the reflections of `order` in turn, reversing arrows as it goes.
pub fn reflect_along(q: &Quiver, order: &[usize], a: &[i64]) -> Result<DimVector> {
    let mut cur = q.clone();
    let mut v = a.to_vec();
    for &x in order {
        v = reflect_dim(&cur, x, &v)?;
        cur = cur.reverse_at(&[x]);
    }
    Ok(v)
}

/// `C⁺` (all sinks first) or `C⁻` (all sources first) on a dimension vector.
pub fn coxeter_dim(q: &Quiver, a: &[i64], dir: Direction) -> Result<DimVector> {
    if !q.is_acyclic() {
        return Err(Error::Precondition("quiver has an oriented cycle".into()));
    }
    reflect_along(q, &coxeter_order(q, dir), a)
}

/// An ordered list of admissible sinks, each taken in the quiver produced by
/// the previous pair reflections.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionSequence {
    pub steps: Vec<String>,
}

impl ReflectionSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the sequence, checking admissibility at each step.
    pub fn apply(&self, qs: &SymmetricQuiver) -> Result<SymmetricQuiver> {
        let mut cur = qs.clone();
        for name in &self.steps {
            let x = cur.quiver().vertex(name).ok_or_else(|| Error::Malformed(format!("unknown vertex {name}")))?;
            if !cur.is_admissible_sink(x) {
                return Err(Error::Precondition(format!("{name} is not an admissible sink at its step")));
            }
            cur = cur.reflect_pair(x)?;
        }
        Ok(cur)
    }

    /// Pushes a dimension vector through the sequence.
    pub fn apply_dim(&self, qs: &SymmetricQuiver, a: &[i64]) -> Result<(SymmetricQuiver, DimVector)> {
        let mut cur = qs.clone();
        let mut v = a.to_vec();
        for name in &self.steps {
            let x = cur.quiver().vertex(name).ok_or_else(|| Error::Malformed(format!("unknown vertex {name}")))?;
            if !cur.is_admissible_sink(x) {
                return Err(Error::Precondition(format!("{name} is not an admissible sink at its step")));
            }
            let (next, w) = reflect_pair_dim(&cur, x, &v)?;
            cur = next;
            v = w;
        }
        Ok((cur, v))
    }
}

/// Orientation key: for each arrow, whether it points from the lower to the
/// higher vertex index.
fn orientation_key(q: &Quiver) -> Vec<bool> {
    q.arrows().iter().map(|a| a.tail < a.head).collect()
}

/// Default limit on explored orientations in [`reduce_to_canonical`].
pub const REDUCTION_BUDGET: usize = 200_000;

/// Breadth-first search over pair reflections at admissible sinks until the
/// orientation is canonical for the type of `qs`.
pub fn reduce_to_canonical(qs: &SymmetricQuiver) -> Result<(ReflectionSequence, SymmetricQuiver)> {
    reduce_to_canonical_with_budget(qs, REDUCTION_BUDGET)
}

pub fn reduce_to_canonical_with_budget(qs: &SymmetricQuiver, budget: usize) -> Result<(ReflectionSequence, SymmetricQuiver)> {
    let ty = classify(qs)?;
    if is_canonical_orientation(qs, ty) {
        return Ok((ReflectionSequence::default(), qs.clone()));
    }
    let mut parent: HashMap<Vec<bool>, Option<(Vec<bool>, usize)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(orientation_key(qs.quiver()), None);
    queue.push_back(qs.clone());
    while let Some(cur) = queue.pop_front() {
        let key = orientation_key(cur.quiver());
        for x in cur.admissible_sinks() {
            let next = cur.reflect_pair(x)?;
            let nk = orientation_key(next.quiver());
            if parent.contains_key(&nk) {
                continue;
            }
            parent.insert(nk.clone(), Some((key.clone(), x)));
            if is_canonical_orientation(&next, ty) {
                let mut steps = Vec::new();
                let mut k = nk;
                while let Some(Some((pk, x))) = parent.get(&k) {
                    steps.push(qs.quiver().vertex_name(*x).to_string());
                    k = pk.clone();
                }
                steps.reverse();
                return Ok((ReflectionSequence { steps }, next));
            }
            if parent.len() >= budget {
                return Err(Error::Verification(format!(
                    "no canonical orientation found after exploring {} orientations",
                    parent.len()
                )));
            }
            queue.push_back(next);
        }
    }
    Err(Error::Verification(format!(
        "orientation graph exhausted after {} orientations without reaching a canonical one",
        parent.len()
    )))
}

/// How a δ-fixed tube element meets the fixed part of the involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum FixedKind {
    /// Nonzero at this fixed vertex.
    Vertex(usize),
    /// Nonzero at the tail of this fixed arrow.
    Arrow(usize),
}

/// Which third of the index set an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Plus,
    Fixed,
    Minus,
}

/// One `C⁺`-orbit of simple regular dimension vectors.
///
/// Indices are 0-based: element `i` here is `e_{i+1}` in 1-based notation, and
/// `elements[(i + 1) % n] = C⁺ elements[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tube {
    pub elements: Vec<DimVector>,
    /// Index of the tube that δ maps this one onto.
    pub partner: usize,
    /// `δ elements[i] = tubes[partner].elements[sigma_i[i]]`.
    pub sigma_i: Vec<usize>,
    pub parts: Vec<Part>,
    /// For δ-fixed elements, the fixed vertex or arrow it meets.
    pub fixed_kind: Vec<Option<FixedKind>>,
}

impl Tube {
    pub fn period(&self) -> usize {
        self.elements.len()
    }

    pub fn is_self_dual(&self, me: usize) -> bool {
        self.partner == me
    }

    /// Sum of the elements in the cyclic interval starting at `start` of
    /// length `len`.
    pub fn arc_sum(&self, start: usize, len: usize) -> DimVector {
        let n = self.period();
        let mut out = vec![0; self.elements[0].len()];
        for t in 0..len {
            for (o, v) in out.iter_mut().zip(&self.elements[(start + t) % n]) {
                *o += v;
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TubeData {
    pub null_root: DimVector,
    pub tubes: Vec<Tube>,
}

/// Every vector in the box `0 <= a <= h`, excluding `0` and `h`.
fn box_vectors(h: &[i64]) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; h.len()];
    loop {
        let mut i = 0;
        while i < h.len() && cur[i] == h[i] {
            cur[i] = 0;
            i += 1;
        }
        if i == h.len() {
            break;
        }
        cur[i] += 1;
        if cur != h {
            out.push(cur.clone());
        }
    }
    out
}

fn fixed_kind(qs: &SymmetricQuiver, e: &[i64]) -> Option<FixedKind> {
    if let Some(x) = qs.fixed_vertices().into_iter().find(|&x| e[x] != 0) {
        return Some(FixedKind::Vertex(x));
    }
    qs.fixed_arrows().into_iter().find(|&a| e[qs.quiver().arrow(a).tail] != 0).map(FixedKind::Arrow)
}

/// Computes the nonhomogeneous tubes of a symmetric quiver in canonical
/// orientation.
///
/// The simple regular roots are the positive real roots below `h` with
/// defect zero whose `C⁺`-orbit sums to `h`. Tubes are ordered by number of
/// δ-fixed elements, then period, then the first element (largest first).
/// Inside a tube the first element is δ-fixed when possible, preferring
/// elements meeting a fixed arrow; otherwise it is chosen so that δ swaps
/// elements 0 and 1.
pub fn tube_data(qs: &SymmetricQuiver) -> Result<TubeData> {
    let ty = classify(qs)?;
    if !is_canonical_orientation(qs, ty) {
        return Err(Error::Precondition("orientation is not canonical; reduce it first".into()));
    }
    let q = qs.quiver();
    let h = null_root(q)?;
    let candidates: Vec<DimVector> = box_vectors(&h)
        .into_iter()
        .filter(|a| q.tits(a) == 1 && q.euler(&h, a) == 0)
        .collect();
    let mut seen: Vec<DimVector> = Vec::new();
    let mut orbits: Vec<Vec<DimVector>> = Vec::new();
    for c in &candidates {
        if seen.contains(c) {
            continue;
        }
        let mut orbit = vec![c.clone()];
        let mut cur = coxeter_dim(q, c, Direction::Plus)?;
        let mut escaped = false;
        while &cur != c {
            if !candidates.contains(&cur) || orbit.len() > candidates.len() {
                escaped = true;
                break;
            }
            orbit.push(cur.clone());
            cur = coxeter_dim(q, &cur, Direction::Plus)?;
        }
        seen.extend(orbit.iter().cloned());
        if escaped || orbit.len() < 2 {
            continue;
        }
        let mut sum = vec![0; h.len()];
        for e in &orbit {
            for (s, v) in sum.iter_mut().zip(e) {
                *s += v;
            }
        }
        if sum == h {
            orbits.push(orbit);
        }
    }

    // Rotate each orbit to its base point.
    let rotate = |orbit: Vec<DimVector>, start: usize| -> Vec<DimVector> {
        let n = orbit.len();
        (0..n).map(|i| orbit[(start + i) % n].clone()).collect()
    };
    let mut based: Vec<Vec<DimVector>> = Vec::new();
    for orbit in orbits {
        let n = orbit.len();
        let fixed: Vec<usize> = (0..n).filter(|&i| qs.delta(&orbit[i]) == orbit[i]).collect();
        let start = if !fixed.is_empty() {
            let rank = |i: &usize| match fixed_kind(qs, &orbit[*i]) {
                Some(FixedKind::Arrow(_)) => 0,
                _ => 1,
            };
            let best = fixed.iter().map(rank).min().unwrap();
            fixed.iter().copied().filter(|i| rank(i) == best).max_by(|&i, &j| orbit[i].cmp(&orbit[j])).unwrap()
        } else if orbit.contains(&qs.delta(&orbit[0])) {
            (0..n)
                .filter(|&i| qs.delta(&orbit[i]) == orbit[(i + 1) % n])
                .max_by(|&i, &j| orbit[i].cmp(&orbit[j]))
                .ok_or_else(|| Error::Verification("self-dual tube without adjacent dual pair".into()))?
        } else {
            (0..n).max_by(|&i, &j| orbit[i].cmp(&orbit[j])).unwrap()
        };
        based.push(rotate(orbit, start));
    }
    let fixed_count = |o: &Vec<DimVector>| o.iter().filter(|e| qs.delta(e) == **e).count();
    based.sort_by(|a, b| {
        fixed_count(b).cmp(&fixed_count(a)).then(b.len().cmp(&a.len())).then(b[0].cmp(&a[0]))
    });
    // A tube mapped onto a different one is re-indexed so that
    // δ e_i = e'_{-i}, with the earlier tube keeping its base point.
    for t in 0..based.len() {
        let d0 = qs.delta(&based[t][0]);
        if let Some(u) = (t + 1..based.len()).find(|&u| based[u].contains(&d0)) {
            if !based[t].contains(&d0) {
                let start = based[u].iter().position(|e| *e == d0).unwrap();
                based[u] = rotate(based[u].clone(), start);
            }
        }
    }

    let mut tubes = Vec::new();
    for (t, els) in based.iter().enumerate() {
        let n = els.len();
        let d0 = qs.delta(&els[0]);
        let partner = (0..based.len())
            .find(|&u| based[u].contains(&d0))
            .ok_or_else(|| Error::Verification("δ does not permute the tubes".into()))?;
        let sigma_i: Vec<usize> = els
            .iter()
            .map(|e| based[partner].iter().position(|f| *f == qs.delta(e)).expect("δ maps the tube onto its partner"))
            .collect();
        let fixed: Vec<bool> = (0..n).map(|i| partner == t && sigma_i[i] == i).collect();
        let parts: Vec<Part> = if partner != t {
            vec![if partner > t { Part::Plus } else { Part::Minus }; n]
        } else if fixed.iter().any(|&f| f) {
            (0..n)
                .map(|i| {
                    if fixed[i] {
                        Part::Fixed
                    } else if i <= (n - 1) / 2 {
                        Part::Plus
                    } else {
                        Part::Minus
                    }
                })
                .collect()
        } else {
            (0..n).map(|i| if (1..=n / 2).contains(&i) { Part::Plus } else { Part::Minus }).collect()
        };
        let fixed_kind = (0..n).map(|i| if fixed[i] { fixed_kind(qs, &els[i]) } else { None }).collect();
        tubes.push(Tube { elements: els.clone(), partner, sigma_i, parts, fixed_kind });
    }
    for t in &tubes {
        for e in &t.elements {
            if defect(q, e)? != 0 {
                return Err(Error::Verification("tube element with nonzero defect".into()));
            }
        }
    }
    Ok(TubeData { null_root: h, tubes })
}

/// Canonical quiver of a type together with its tube data.
pub fn canonical_tubes(ty: TameType) -> Result<(SymmetricQuiver, TubeData)> {
    let qs = crate::types::build_canonical(ty)?;
    let td = tube_data(&qs)?;
    Ok((qs, td))
}
