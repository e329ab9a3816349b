//! Classification of symmetric quivers of tame type and their canonical
//! orientations.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use symquiv_exact::{q, Matrix, Q};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, SymmetricQuiver};

/// The reflection-equivalence classes of symmetric tame quivers.
///
/// For the cyclic types `k` and `l` count non-fixed arrows in the two cyclic
/// directions; for the `D` types `n` is the number of vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum TameType {
    /// Two fixed arrows pointing opposite ways around the cycle.
    A201 { k: usize, l: usize },
    /// Two fixed arrows pointing the same way around the cycle.
    A202 { k: usize, l: usize },
    /// Two fixed vertices.
    A02 { k: usize, l: usize },
    /// One fixed vertex and one fixed arrow.
    A11 { k: usize, l: usize },
    /// Central symmetry: nothing fixed.
    A00 { k: usize },
    /// Tree type with one fixed arrow.
    D10 { n: usize },
    /// Tree type with one fixed vertex.
    D01 { n: usize },
}

impl TameType {
    /// `(fixed arrows, fixed vertices, k, l)` for the cyclic types.
    pub fn stkl(&self) -> Option<(usize, usize, usize, usize)> {
        match *self {
            TameType::A201 { k, l } | TameType::A202 { k, l } => Some((2, 0, k, l)),
            TameType::A02 { k, l } => Some((0, 2, k, l)),
            TameType::A11 { k, l } => Some((1, 1, k, l)),
            TameType::A00 { k } => Some((0, 0, k, k)),
            TameType::D10 { .. } | TameType::D01 { .. } => None,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.stkl().is_some()
    }

    pub fn num_vertices(&self) -> usize {
        match *self {
            TameType::A201 { k, l } | TameType::A202 { k, l } => k + l + 2,
            TameType::A02 { k, l } => k + l,
            TameType::A11 { k, l } => k + l + 1,
            TameType::A00 { k } => 2 * k,
            TameType::D10 { n } | TameType::D01 { n } => n,
        }
    }

    /// Checks the parameter constraints of each family.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(format!("{self}: {m}")));
        let even = |x: usize| x.is_multiple_of(2);
        match *self {
            TameType::A201 { k, l } => {
                if !even(k) || !even(l) {
                    return bad("k and l must be even");
                }
                if k > l {
                    return bad("parameters are normalized so that k <= l");
                }
            }
            TameType::A202 { k, l } => {
                if !even(k) || !even(l) {
                    return bad("k and l must be even");
                }
                if k < 2 {
                    return bad("k must be at least 2");
                }
            }
            TameType::A02 { k, l } => {
                if !even(k) || !even(l) {
                    return bad("k and l must be even");
                }
                if k < 2 || l < 2 {
                    return bad("k and l must be at least 2");
                }
                if k > l {
                    return bad("parameters are normalized so that k <= l");
                }
            }
            TameType::A11 { k, l } => {
                if !even(k) || !even(l) {
                    return bad("k and l must be even");
                }
                if l < 2 {
                    return bad("l must be at least 2");
                }
            }
            TameType::A00 { k } => {
                if k < 2 {
                    return bad("k must be at least 2");
                }
            }
            TameType::D10 { n } => {
                if n < 6 || !even(n) {
                    return bad("needs an even number of vertices, at least 6");
                }
            }
            TameType::D01 { n } => {
                if n < 5 || even(n) {
                    return bad("needs an odd number of vertices, at least 5");
                }
            }
        }
        Ok(())
    }

    /// Parses the CLI spelling, e.g. `A11:0,6`, `A00:4`, `D10:6`, `Deq:7`.
    pub fn parse(s: &str) -> Result<TameType> {
        let bad = || Error::Malformed(format!("cannot parse type {s:?}; expected e.g. A11:0,6"));
        let (fam, params) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = params
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let two = |nums: &[usize]| if nums.len() == 2 { Ok((nums[0], nums[1])) } else { Err(bad()) };
        let one = |nums: &[usize]| if nums.len() == 1 { Ok(nums[0]) } else { Err(bad()) };
        let t = match fam.trim() {
            "A201" => {
                let (k, l) = two(&nums)?;
                TameType::A201 { k, l }
            }
            "A202" => {
                let (k, l) = two(&nums)?;
                TameType::A202 { k, l }
            }
            "A02" => {
                let (k, l) = two(&nums)?;
                TameType::A02 { k, l }
            }
            "A11" => {
                let (k, l) = two(&nums)?;
                TameType::A11 { k, l }
            }
            "A00" => TameType::A00 { k: one(&nums)? },
            "D10" => TameType::D10 { n: one(&nums)? },
            "D01" => TameType::D01 { n: one(&nums)? },
            "Deq" => {
                let n = one(&nums)?;
                if n % 2 == 0 {
                    TameType::D10 { n }
                } else {
                    TameType::D01 { n }
                }
            }
            _ => return Err(bad()),
        };
        Ok(t)
    }

    /// Every valid type with at most `max_vertices` vertices.
    pub fn all_up_to(max_vertices: usize) -> Vec<TameType> {
        let mut out = Vec::new();
        let evens = |lo: usize| (lo..=max_vertices).step_by(2).collect::<Vec<_>>();
        for k in evens(0) {
            for l in evens(0) {
                for t in [
                    TameType::A201 { k, l },
                    TameType::A202 { k, l },
                    TameType::A02 { k, l },
                    TameType::A11 { k, l },
                ] {
                    if t.validate().is_ok() && t.num_vertices() <= max_vertices {
                        out.push(t);
                    }
                }
            }
        }
        for k in 2..=max_vertices / 2 {
            out.push(TameType::A00 { k });
        }
        for n in 5..=max_vertices {
            let t = if n % 2 == 0 { TameType::D10 { n } } else { TameType::D01 { n } };
            if t.validate().is_ok() {
                out.push(t);
            }
        }
        out
    }
}

impl fmt::Display for TameType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TameType::A201 { k, l } => write!(f, "Ã^{{2,0,1}}_{{{k},{l}}}"),
            TameType::A202 { k, l } => write!(f, "Ã^{{2,0,2}}_{{{k},{l}}}"),
            TameType::A02 { k, l } => write!(f, "Ã^{{0,2}}_{{{k},{l}}}"),
            TameType::A11 { k, l } => write!(f, "Ã^{{1,1}}_{{{k},{l}}}"),
            TameType::A00 { k } => write!(f, "Ã^{{0,0}}_{{{k}}}"),
            TameType::D10 { n } => write!(f, "D̃^{{1,0}}_{{{n}}}"),
            TameType::D01 { n } => write!(f, "D̃^{{0,1}}_{{{n}}}"),
        }
    }
}

/// One step of a walk around a cycle: the arrow used and whether it points
/// along the walk.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CycleStep {
    pub arrow: usize,
    pub forward: bool,
}

/// Walks the underlying cycle starting at vertex 0.
pub(crate) fn cycle_walk(q: &Quiver) -> Vec<CycleStep> {
    let n = q.num_vertices();
    let mut steps = Vec::with_capacity(n);
    let mut cur = 0;
    let mut prev: Option<usize> = None;
    for _ in 0..n {
        let (a, ar) = q
            .arrows()
            .iter()
            .enumerate()
            .find(|(i, ar)| Some(*i) != prev && (ar.tail == cur || ar.head == cur))
            .expect("cycle walk on a graph that is not a cycle");
        let forward = ar.tail == cur;
        let next = if forward { ar.head } else { ar.tail };
        steps.push(CycleStep { arrow: a, forward });
        prev = Some(a);
        cur = next;
    }
    steps
}

fn is_cycle_graph(q: &Quiver) -> bool {
    q.num_vertices() >= 2
        && q.num_arrows() == q.num_vertices()
        && (0..q.num_vertices()).all(|x| q.degree(x) == 2)
}

fn is_d_tree(q: &Quiver) -> bool {
    let n = q.num_vertices();
    if n < 5 || q.num_arrows() + 1 != n {
        return false;
    }
    let deg: Vec<usize> = (0..n).map(|x| q.degree(x)).collect();
    let leaves = deg.iter().filter(|&&d| d == 1).count();
    if n == 5 {
        return leaves == 4 && deg.iter().filter(|&&d| d == 4).count() == 1;
    }
    let branch: Vec<usize> = (0..n).filter(|&x| deg[x] == 3).collect();
    if branch.len() != 2 || leaves != 4 || deg.iter().any(|&d| d > 3) {
        return false;
    }
    branch.iter().all(|&b| (0..n).filter(|&y| deg[y] == 1 && q.adjacent(b, y)).count() == 2)
}

/// Identifies the reflection-equivalence class of a symmetric quiver.
pub fn classify(qs: &SymmetricQuiver) -> Result<TameType> {
    let q = qs.quiver();
    if !q.is_connected() {
        return Err(Error::NotTame("underlying graph is not connected".into()));
    }
    if !q.is_acyclic() {
        return Err(Error::NotTame("quiver has an oriented cycle".into()));
    }
    let s = qs.fixed_arrows().len();
    let t = qs.fixed_vertices().len();
    if is_d_tree(q) {
        let n = q.num_vertices();
        return match (s, t) {
            (1, 0) => Ok(TameType::D10 { n }),
            (0, 1) => Ok(TameType::D01 { n }),
            _ => Err(Error::NotTame(format!(
                "involution on a D-type tree fixes {s} arrows and {t} vertices"
            ))),
        };
    }
    if !is_cycle_graph(q) {
        return Err(Error::NotTame("underlying graph is neither a cycle nor a D-type tree".into()));
    }
    let walk = cycle_walk(q);
    let dir = |a: usize| walk.iter().find(|st| st.arrow == a).map(|st| st.forward).unwrap();
    let non_fixed: Vec<bool> = walk.iter().filter(|st| qs.sigma_arrow(st.arrow) != st.arrow).map(|st| st.forward).collect();
    let count = |d: bool| non_fixed.iter().filter(|&&f| f == d).count();
    let even_pair = |k: usize, l: usize| -> Result<()> {
        if k % 2 == 1 || l % 2 == 1 {
            Err(Error::NotTame(format!("arrow counts k={k}, l={l} must be even")))
        } else {
            Ok(())
        }
    };
    let fixed = qs.fixed_arrows();
    let ty = match (s, t) {
        (1, 1) => {
            let ccw = dir(fixed[0]);
            let (k, l) = (count(ccw), count(!ccw));
            even_pair(k, l)?;
            TameType::A11 { k, l }
        }
        (2, 0) => {
            let (d1, d2) = (dir(fixed[0]), dir(fixed[1]));
            if d1 == d2 {
                let (k, l) = (count(!d1), count(d1));
                even_pair(k, l)?;
                TameType::A202 { k, l }
            } else {
                let (m1, m2) = (count(d1), count(d2));
                even_pair(m1, m2)?;
                TameType::A201 { k: m1.min(m2), l: m1.max(m2) }
            }
        }
        (0, 2) => {
            let (m1, m2) = (count(true), count(false));
            even_pair(m1, m2)?;
            TameType::A02 { k: m1.min(m2), l: m1.max(m2) }
        }
        (0, 0) => TameType::A00 { k: q.num_vertices() / 2 },
        _ => {
            return Err(Error::NotTame(format!(
                "involution on a cycle fixes {s} arrows and {t} vertices"
            )))
        }
    };
    ty.validate().map_err(|e| Error::NotTame(e.to_string()))?;
    Ok(ty)
}

fn sig(s: &str) -> String {
    format!("σ({s})")
}

#[derive(Default)]
struct Draft {
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
    vertex_pairs: Vec<(String, String)>,
    arrow_pairs: Vec<(String, String)>,
}

impl Draft {
    fn arrow(&mut self, id: impl Into<String>, t: &str, h: &str) {
        self.arrows.push((id.into(), t.to_string(), h.to_string()));
    }

    /// Adds a non-fixed arrow and its mirror image.
    fn paired_arrow(&mut self, id: &str, t: &str, h: &str, sigma_of: &dyn Fn(&str) -> String) {
        self.arrow(id, t, h);
        self.arrow(sig(id), &sigma_of(h), &sigma_of(t));
        self.arrow_pairs.push((id.to_string(), sig(id)));
    }

    fn finish(mut self) -> Result<SymmetricQuiver> {
        // Plus-side arrows first so that the first member of each pair is the
        // representative.
        let plus: Vec<String> = self.arrow_pairs.iter().map(|p| p.0.clone()).collect();
        self.arrows.sort_by_key(|(id, _, _)| {
            if plus.contains(id) {
                0
            } else if id.starts_with('σ') {
                1
            } else {
                2
            }
        });
        let q = Quiver::new(&self.vertices, &self.arrows)?;
        SymmetricQuiver::from_names(q, &self.vertex_pairs, &self.arrow_pairs)
    }
}

/// A path of fresh vertices named by consecutive integers starting at `first`.
fn numbered(first: usize, count: usize) -> Vec<String> {
    (first..first + count).map(|i| i.to_string()).collect()
}

/// Builds the canonical orientation of a type.
pub fn build_canonical(ty: TameType) -> Result<SymmetricQuiver> {
    ty.validate()?;
    match ty {
        TameType::A11 { k, l } => build_two_path(k, l, TopEnd::FixedVertex, BottomEnd::FixedArrow, l == 2),
        TameType::A201 { k, l } => build_two_path(k, l, TopEnd::FixedArrow, BottomEnd::FixedArrow, false),
        TameType::A202 { k, l } => build_two_path(k, l, TopEnd::FixedArrow, BottomEnd::ReversedFixedArrow, false),
        TameType::A02 { k, l } => build_two_path(k, l, TopEnd::FixedVertex, BottomEnd::FixedVertex, false),
        TameType::A00 { k } => build_central(k),
        TameType::D10 { n } | TameType::D01 { n } => build_d(n),
    }
}

#[derive(Clone, Copy, PartialEq)]
enum TopEnd {
    FixedVertex,
    FixedArrow,
}

#[derive(Clone, Copy, PartialEq)]
enum BottomEnd {
    FixedVertex,
    FixedArrow,
    ReversedFixedArrow,
}

/// Source `1` and sink `σ(1)` joined by an upper path (through `v` arrows)
/// and a lower path (through `u` arrows), each folded by the involution.
fn build_two_path(k: usize, l: usize, top: TopEnd, bottom: BottomEnd, name_a: bool) -> Result<SymmetricQuiver> {
    let a0 = "1".to_string();
    let xs = numbered(2, l / 2);
    let ys = numbered(2 + l / 2, k / 2);
    let top_fixed = top == TopEnd::FixedVertex;
    let bottom_fixed = bottom == BottomEnd::FixedVertex;
    let fixed: Vec<String> = [
        if top_fixed { xs.last().cloned() } else { None },
        if bottom_fixed { ys.last().cloned() } else { None },
    ]
    .into_iter()
    .flatten()
    .collect();
    let sigma_of = {
        let fixed = fixed.clone();
        move |v: &str| if fixed.iter().any(|f| f == v) { v.to_string() } else { sig(v) }
    };

    let mut d = Draft::default();
    d.vertices.push(a0.clone());
    d.vertices.extend(xs.iter().cloned());
    d.vertices.extend(ys.iter().cloned());
    for x in xs.iter().rev() {
        if !fixed.contains(x) {
            d.vertices.push(sig(x));
        }
    }
    d.vertices.push(sig(&a0));
    for y in ys.iter().rev() {
        if !fixed.contains(y) {
            d.vertices.push(sig(y));
        }
    }
    d.vertex_pairs.push((a0.clone(), sig(&a0)));
    for v in xs.iter().chain(ys.iter()) {
        if !fixed.contains(v) {
            d.vertex_pairs.push((v.clone(), sig(v)));
        }
    }

    let mut prev = a0.clone();
    for (i, x) in xs.iter().enumerate() {
        let id = if name_a { "a".to_string() } else { format!("v{}", i + 1) };
        d.paired_arrow(&id, &prev, x, &sigma_of);
        prev = x.clone();
    }
    if top == TopEnd::FixedArrow {
        d.arrow("c", &prev, &sig(&prev));
    }

    let mut prev = a0.clone();
    for (j, y) in ys.iter().enumerate() {
        d.paired_arrow(&format!("u{}", j + 1), &prev, y, &sigma_of);
        prev = y.clone();
    }
    match bottom {
        BottomEnd::FixedArrow => d.arrow("b", &prev, &sig(&prev)),
        // The lower path ends in a sink and the fixed arrow comes back into
        // it from the mirrored source.
        BottomEnd::ReversedFixedArrow => d.arrow("b", &sig(&prev), &prev),
        BottomEnd::FixedVertex => {}
    }
    d.finish()
}

/// Two parallel paths of length `k` from `1` to `σ(1)`, swapped by a
/// half-turn.
fn build_central(k: usize) -> Result<SymmetricQuiver> {
    let a0 = "1".to_string();
    let xs = numbered(2, k - 1);
    let mut d = Draft::default();
    d.vertices.push(a0.clone());
    d.vertices.extend(xs.iter().cloned());
    d.vertices.push(sig(&a0));
    d.vertices.extend(xs.iter().map(|x| sig(x)));
    d.vertex_pairs.push((a0.clone(), sig(&a0)));
    for x in &xs {
        d.vertex_pairs.push((x.clone(), sig(x)));
    }
    let mut path = vec![a0.clone()];
    path.extend(xs.iter().cloned());
    path.push(sig(&a0));
    let sigma_of = |v: &str| match v.strip_prefix("σ(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => sig(v),
    };
    for i in 0..k {
        d.paired_arrow(&format!("v{}", i + 1), &path[i], &path[i + 1], &sigma_of);
    }
    d.finish()
}

/// Equioriented tree: two left leaves into a path, mirrored on the right.
fn build_d(n: usize) -> Result<SymmetricQuiver> {
    let m = n / 2;
    let odd = n % 2 == 1;
    let left = numbered(1, m);
    let center = odd.then(|| (m + 1).to_string());
    let mut d = Draft::default();
    d.vertices.extend(left.iter().cloned());
    if let Some(c) = &center {
        d.vertices.push(c.clone());
    }
    d.vertices.extend(left.iter().map(|x| sig(x)));
    for x in &left {
        d.vertex_pairs.push((x.clone(), sig(x)));
    }
    let sigma_of = {
        let center = center.clone();
        move |v: &str| {
            if Some(v) == center.as_deref() {
                v.to_string()
            } else {
                match v.strip_prefix("σ(").and_then(|r| r.strip_suffix(')')) {
                    Some(inner) => inner.to_string(),
                    None => sig(v),
                }
            }
        }
    };
    // Path vertices on the left are 3..=m; when there are none the leaves
    // attach straight to the center.
    let branch = if m >= 3 { left[2].clone() } else { center.clone().expect("small tree has a center") };
    d.paired_arrow("a1", &left[0], &branch, &sigma_of);
    d.paired_arrow("a2", &left[1], &branch, &sigma_of);
    for i in 3..m {
        d.paired_arrow(&format!("v{i}"), &left[i - 1], &left[i], &sigma_of);
    }
    if m >= 3 {
        let last = left[m - 1].clone();
        match &center {
            Some(c) => d.paired_arrow(&format!("v{m}"), &last, c, &sigma_of),
            None => d.arrow("b", &last, &sig(&last)),
        }
    }
    d.finish()
}

/// Whether the orientation is the canonical one for its type.
pub fn is_canonical_orientation(qs: &SymmetricQuiver, ty: TameType) -> bool {
    let q = qs.quiver();
    let sources = q.sources();
    let sinks = q.sinks();
    match ty {
        TameType::A11 { .. } | TameType::A201 { .. } | TameType::A02 { .. } | TameType::A00 { .. } => {
            sources.len() == 1 && sinks.len() == 1 && sinks[0] == qs.sigma_vertex(sources[0])
        }
        TameType::A202 { .. } => {
            sources.len() == 2
                && qs.fixed_arrows().iter().any(|&a| {
                    let ar = q.arrow(a);
                    q.is_source(ar.tail) && q.is_sink(ar.head)
                })
        }
        TameType::D10 { .. } | TameType::D01 { .. } => {
            sources.len() == 2
                && sinks.len() == 2
                && sources.iter().chain(&sinks).all(|&x| q.degree(x) == 1)
                && {
                    let nb = |x: usize| q.arrows().iter().find(|a| a.tail == x || a.head == x).map(|a| if a.tail == x { a.head } else { a.tail });
                    nb(sources[0]) == nb(sources[1])
                }
        }
    }
}

/// Primitive positive generator of the radical of the Tits form.
pub fn null_root(quiver: &Quiver) -> Result<DimVector> {
    let n = quiver.num_vertices();
    if !quiver.is_connected() {
        return Err(Error::NotTame("underlying graph is not connected".into()));
    }
    let sym = Matrix::<Q>::from_fn(n, n, |i, j| {
        let (ei, ej) = (quiver.unit(i), quiver.unit(j));
        q(quiver.euler(&ei, &ej) + quiver.euler(&ej, &ei))
    });
    let ns = sym.nullspace();
    if ns.len() != 1 {
        return Err(Error::NotTame(format!("radical of the Tits form has rank {}", ns.len())));
    }
    let v = &ns[0];
    let lcm = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    let sign_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let mut out = Vec::with_capacity(n);
    for x in ints {
        let y = x / &g;
        let y: i64 = i64::try_from(if sign_neg { -y } else { y }).map_err(|_| Error::NotTame("radical vector too large".into()))?;
        out.push(y);
    }
    if out.iter().any(|&x| x <= 0) {
        return Err(Error::NotTame("radical is not spanned by a sincere positive vector".into()));
    }
    Ok(out)
}

/// Defect `<h, a>`.
pub fn defect(q: &Quiver, a: &[i64]) -> Result<i64> {
    let h = null_root(q)?;
    Ok(q.euler(&h, a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Preprojective,
    Regular,
    Preinjective,
}

/// Sign of the defect: negative is preprojective, zero regular, positive
/// preinjective.
pub fn region_of(q: &Quiver, a: &[i64]) -> Result<Region> {
    Ok(match defect(q, a)?.signum() {
        -1 => Region::Preprojective,
        0 => Region::Regular,
        _ => Region::Preinjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_a11_matches_labels() {
        let qs = build_canonical(TameType::A11 { k: 0, l: 2 }).unwrap();
        let q = qs.quiver();
        assert_eq!(q.vertices(), &["1", "2", "σ(1)"]);
        let ids: Vec<&str> = q.arrows().iter().map(|a| a.id.as_str()).collect();
        assert_eq!(ids, vec!["a", "σ(a)", "b"]);
        assert_eq!(qs.fixed_arrows(), vec![2]);
        assert_eq!(qs.fixed_vertices(), vec![1]);
        assert_eq!(classify(&qs).unwrap(), TameType::A11 { k: 0, l: 2 });
    }

    #[test]
    fn a11_odd_rejected() {
        assert!(build_canonical(TameType::A11 { k: 1, l: 2 }).is_err());
    }

    #[test]
    fn six_gon_vertex_order() {
        let qs = build_canonical(TameType::A11 { k: 0, l: 6 }).unwrap();
        assert_eq!(qs.quiver().vertices(), &["1", "2", "3", "4", "σ(3)", "σ(2)", "σ(1)"]);
    }

    #[test]
    fn path_is_not_tame() {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        assert!(null_root(&q).is_err());
    }

    #[test]
    fn projective_defect() {
        let qs = build_canonical(TameType::A11 { k: 0, l: 2 }).unwrap();
        assert_eq!(defect(qs.quiver(), &[1, 1, 2]).unwrap(), -1);
        assert_eq!(defect(qs.quiver(), &[2, 1, 1]).unwrap(), 1);
    }

    #[test]
    fn roundtrip_and_null_roots_up_to_twelve() {
        for ty in TameType::all_up_to(12) {
            let qs = build_canonical(ty).unwrap();
            assert_eq!(qs.quiver().num_vertices(), ty.num_vertices(), "{ty}");
            assert_eq!(classify(&qs).unwrap(), ty, "{ty}");
            assert!(is_canonical_orientation(&qs, ty), "{ty}");
            let h = null_root(qs.quiver()).unwrap();
            assert_eq!(qs.quiver().tits(&h), 0);
            let q = qs.quiver();
            for x in 0..q.num_vertices() {
                let expect = if ty.is_cyclic() || q.degree(x) == 1 { 1 } else { 2 };
                assert_eq!(h[x], expect, "{ty} at {}", q.vertex_name(x));
            }
        }
    }
}
