//! Regular symmetric dimension vectors: the unique expansion over the null
//! root and tube elements, labelled polygons, arcs, and the plain,
//! symplectic and orthogonal generic decompositions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use symquiv_exact::{Matrix, Q};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, SymmetricQuiver};
use crate::reflections::{FixedKind, Part, TubeData};
use crate::representations::Flavor;
use crate::types::defect;

/// One tube's elements labelled by their coefficients in the expansion of a
/// regular dimension vector. Tubes swapped by δ appear once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledPolygon {
    pub tube: usize,
    /// 0, 1, 2 for the first, second and third polygon.
    pub ordinal: usize,
    pub labels: Vec<i64>,
    pub self_dual: bool,
    pub sigma_i: Vec<usize>,
    pub parts: Vec<Part>,
}

impl LabelledPolygon {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Name of the element at `pos`, `e₃`, `e′₁` and so on.
    pub fn element_name(&self, pos: usize) -> String {
        let prime = ["", "′", "″", "‴"].get(self.ordinal).copied().unwrap_or("*");
        format!("e{prime}{}", subscript(pos + 1))
    }
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularDecomposition {
    /// Multiplicity of the null root.
    pub p: i64,
    pub polygons: Vec<LabelledPolygon>,
}

/// Writes a regular symmetric `d` as `p·h + Σ labels · tube elements` with a
/// zero label in every tube.
pub fn regular_decompose(qs: &SymmetricQuiver, td: &TubeData, d: &[i64], flavor: Flavor) -> Result<RegularDecomposition> {
    let q = qs.quiver();
    q.check_dim(d)?;
    if !qs.is_symmetric_dim(d) {
        return Err(Error::Precondition("dimension vector is not symmetric".into()));
    }
    if defect(q, d)? != 0 {
        return Err(Error::Precondition("dimension vector is not regular (nonzero defect)".into()));
    }
    let mut columns: Vec<&DimVector> = vec![&td.null_root];
    let mut slots = Vec::new();
    for (t, tube) in td.tubes.iter().enumerate() {
        for (i, e) in tube.elements.iter().enumerate().skip(1) {
            columns.push(e);
            slots.push((t, i));
        }
    }
    let n = q.num_vertices();
    let m = Matrix::from_fn(n, columns.len(), |r, c| Q::from_integer(columns[c][r].into()));
    let rhs: Vec<Q> = d.iter().map(|&x| Q::from_integer(x.into())).collect();
    let sol = m
        .solve(&rhs)
        .ok_or_else(|| Error::Precondition("dimension vector is not regular (outside the tube lattice)".into()))?;
    let as_int = |x: &Q| -> Result<i64> {
        if !x.is_integer() {
            return Err(Error::Precondition("dimension vector is not regular (fractional coefficients)".into()));
        }
        i64::try_from(x.to_integer()).map_err(|_| Error::Precondition("coefficient overflow".into()))
    };
    let mut p = as_int(&sol[0])?;
    let mut labels: Vec<Vec<i64>> = td.tubes.iter().map(|t| vec![0; t.period()]).collect();
    for (k, &(t, i)) in slots.iter().enumerate() {
        labels[t][i] = as_int(&sol[k + 1])?;
    }
    for l in labels.iter_mut() {
        let min = *l.iter().min().unwrap();
        for x in l.iter_mut() {
            *x -= min;
        }
        p += min;
    }
    if p < 0 {
        return Err(Error::Precondition("dimension vector is not regular (negative multiplicity of h)".into()));
    }
    for (t, tube) in td.tubes.iter().enumerate() {
        for i in 0..tube.period() {
            if labels[t][i] != labels[tube.partner][tube.sigma_i[i]] {
                return Err(Error::Verification("labels are not δ-symmetric".into()));
            }
        }
    }
    if flavor == Flavor::Symplectic {
        if let Some(x) = qs.fixed_vertices().into_iter().find(|&x| d[x] % 2 != 0) {
            return Err(Error::Precondition(format!(
                "symplectic dimension must be even at fixed vertex {}",
                q.vertex_name(x)
            )));
        }
    }
    let mut polygons = Vec::new();
    for (t, tube) in td.tubes.iter().enumerate() {
        if tube.partner < t {
            continue;
        }
        polygons.push(LabelledPolygon {
            tube: t,
            ordinal: polygons.len(),
            labels: labels[t].clone(),
            self_dual: tube.partner == t,
            sigma_i: tube.sigma_i.clone(),
            parts: tube.parts.clone(),
        });
    }
    Ok(RegularDecomposition { p, polygons })
}

/// A cyclic run of `len` consecutive polygon positions starting at `start`.
/// Generator arcs include both endpoints, so a loop around a polygon with
/// `n` elements has `len = n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub start: usize,
    pub len: usize,
    pub ind: i64,
}

impl Arc {
    pub fn end(&self, n: usize) -> usize {
        (self.start + self.len - 1) % n
    }

    pub fn positions(&self, n: usize) -> Vec<usize> {
        (0..self.len.min(n)).map(|t| (self.start + t) % n).collect()
    }

    /// Support of the tube module named by a generator arc: the first
    /// endpoint and the interior.
    pub fn module_support(&self, n: usize) -> Vec<usize> {
        (0..self.len - 1).map(|t| (self.start + t) % n).collect()
    }

    pub fn contains(&self, other: &Arc, n: usize) -> bool {
        let mine = self.positions(n);
        other.positions(n).iter().all(|p| mine.contains(p))
    }

    pub fn render(&self, poly: &LabelledPolygon) -> String {
        let n = poly.len();
        format!("[{},{}]", self.start + 1, self.end(n) + 1)
    }
}

/// Arcs `[i, j]` with `p_i = p_j` and every interior label larger, indexed
/// by `p_i`. With all labels zero these are the edges of the polygon.
pub fn admissible_arcs(poly: &LabelledPolygon) -> Vec<Arc> {
    let n = poly.len();
    let l = &poly.labels;
    let mut out = Vec::new();
    for i in 0..n {
        for gap in 1..=n {
            let j = (i + gap) % n;
            let interior_ok = (1..gap).all(|t| l[(i + t) % n] > l[i]);
            if !interior_ok {
                break;
            }
            if l[j] == l[i] {
                out.push(Arc { start: i, len: gap + 1, ind: l[i] });
            }
        }
    }
    out
}

/// The maximal runs of positions with label at least `t`, for every level
/// `t ≥ 1`, each with the number of levels it spans. Each run's index is
/// its smallest label. Sorted outermost first.
pub fn decomposition_arcs(poly: &LabelledPolygon) -> Vec<(Arc, i64)> {
    let n = poly.len();
    let l = &poly.labels;
    let max = l.iter().copied().max().unwrap_or(0);
    let mut counts: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for t in 1..=max {
        if l.iter().all(|&x| x >= t) {
            *counts.entry((0, n)).or_default() += 1;
            continue;
        }
        for s in 0..n {
            if l[s] >= t && l[(s + n - 1) % n] < t {
                let mut len = 0;
                while l[(s + len) % n] >= t {
                    len += 1;
                }
                *counts.entry((s, len)).or_default() += 1;
            }
        }
    }
    let mut out: Vec<(Arc, i64)> = counts
        .into_iter()
        .map(|((start, len), q)| {
            let ind = (0..len).map(|k| l[(start + k) % n]).min().unwrap();
            (Arc { start, len, ind }, q)
        })
        .collect();
    out.sort_by_key(|(a, _)| (std::cmp::Reverse(a.len), a.start));
    out
}

/// Multiplicities `ind[h] - ind[h-1]` of a chain of nested arcs, outermost
/// first.
pub fn arc_multiplicity(nested: &[Arc], n: usize) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(nested.len());
    let mut prev = 0;
    for (k, a) in nested.iter().enumerate() {
        if k > 0 && !nested[k - 1].contains(a, n) {
            return Err(Error::Precondition("arcs are not nested".into()));
        }
        out.push(a.ind - prev);
        prev = a.ind;
    }
    Ok(out)
}

/// A point of a self-dual polygon fixed by σ_I: an element or the edge
/// between `i` and `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Center {
    Element(usize),
    Edge(usize),
}

pub fn centers(poly: &LabelledPolygon) -> Vec<Center> {
    if !poly.self_dual {
        return Vec::new();
    }
    let n = poly.len();
    let mut out = Vec::new();
    for i in 0..n {
        if poly.sigma_i[i] == i {
            out.push(Center::Element(i));
        }
    }
    for i in 0..n {
        if n > 1 && poly.sigma_i[i] == (i + 1) % n && !(n == 2 && i == 1 && out.contains(&Center::Edge(0))) {
            out.push(Center::Edge(i));
        }
    }
    out
}

/// Splits a self-dual polygon into the σ_I-stable halves around its two
/// centers; positions equidistant from both belong to neither. Polygons
/// without a σ_I are a single part.
pub fn up_down_split(poly: &LabelledPolygon) -> (Vec<usize>, Vec<usize>) {
    let n = poly.len();
    let cs = centers(poly);
    if cs.len() < 2 {
        return ((0..n).collect(), Vec::new());
    }
    // Doubled cyclic distance, so edges sit at half-integer positions.
    let dist = |k: usize, c: Center| -> usize {
        let d = |a: usize, b: usize| {
            let x = (a + n - b) % n;
            x.min(n - x)
        };
        match c {
            Center::Element(i) => 2 * d(k, i),
            Center::Edge(i) => 2 * d(k, i).min(d(k, (i + 1) % n)) + 1,
        }
    };
    let mut up = Vec::new();
    let mut down = Vec::new();
    for k in 0..n {
        let (a, b) = (dist(k, cs[0]), dist(k, cs[1]));
        if a < b {
            up.push(k);
        } else if b < a {
            down.push(k);
        }
    }
    (up, down)
}

/// Which kind of σ-fixed object a symmetric arc runs through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CenterKind {
    Vertex(usize),
    Arrow(usize),
}

fn center_of(poly: &LabelledPolygon, arc: &Arc) -> Option<Center> {
    let n = poly.len();
    let pos = arc.positions(n);
    if let Some(&i) = pos.iter().find(|&&i| poly.sigma_i[i] == i) {
        return Some(Center::Element(i));
    }
    pos.iter()
        .find(|&&i| poly.sigma_i[i] == (i + 1) % n && pos.contains(&((i + 1) % n)))
        .map(|&i| Center::Edge(i))
}

fn center_kind(qs: &SymmetricQuiver, td: &TubeData, poly: &LabelledPolygon, c: Center) -> Result<CenterKind> {
    let tube = &td.tubes[poly.tube];
    match c {
        Center::Element(i) => match tube.fixed_kind[i] {
            Some(FixedKind::Vertex(x)) => Ok(CenterKind::Vertex(x)),
            Some(FixedKind::Arrow(a)) => Ok(CenterKind::Arrow(a)),
            None => Err(Error::Unsupported("δ-fixed element meets no fixed vertex or arrow".into())),
        },
        Center::Edge(i) => qs
            .fixed_arrows()
            .into_iter()
            .find(|&a| tube.elements[i][qs.quiver().arrow(a).tail] != 0)
            .map(CenterKind::Arrow)
            .ok_or_else(|| Error::Unsupported("σ_I-fixed edge meets no fixed arrow".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SummandShape {
    /// `e_R + δe_R` for a run not fixed by σ_I.
    Pair,
    /// `e_R` for a σ_I-stable run.
    Symmetric,
    /// Two nested symmetric runs joined into one summand.
    Joined,
    /// `h + e_R`, used when an odd number of symmetric runs meets an odd `p`.
    WithNullRoot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub vector: DimVector,
    pub multiplicity: i64,
    pub shape: SummandShape,
    pub polygon: usize,
    /// Arcs the summand was built from.
    pub arcs: Vec<Arc>,
    /// Coefficient of each polygon element.
    pub coefficients: Vec<i64>,
    /// Set for outputs of the odd-`p` merge, whose form is a convention.
    pub convention_dependent: bool,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricDecomposition {
    pub flavor: Flavor,
    pub p: i64,
    pub null_root: DimVector,
    pub summands: Vec<Summand>,
}

impl SymmetricDecomposition {
    /// The summands in ⊕-notation, without the null root part.
    pub fn render_regular_part(&self) -> String {
        self.summands.iter().map(|s| s.text.clone()).collect::<Vec<_>>().join(" ⊕ ")
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        match self.p {
            0 => {}
            1 => parts.push("h".to_string()),
            p => parts.push(format!("h^{{⊕{p}}}")),
        }
        if !self.summands.is_empty() {
            parts.push(self.render_regular_part());
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }

    /// `p·h + Σ multiplicity · vector`.
    pub fn total(&self) -> DimVector {
        let mut out: DimVector = self.null_root.iter().map(|x| x * self.p).collect();
        for s in &self.summands {
            for (o, v) in out.iter_mut().zip(&s.vector) {
                *o += v * s.multiplicity;
            }
        }
        out
    }
}

/// Renders `Σ coefficients · elements` in the polygon's notation and
/// reports whether the result has more than one term.
fn render_coefficients(poly: &LabelledPolygon, coefs: &[i64]) -> (String, bool) {
    let mut terms = Vec::new();
    let prefix = |c: i64| if c == 1 { String::new() } else { c.to_string() };
    for (i, &c) in coefs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let plus = !poly.self_dual || poly.parts[i] == Part::Plus;
        if plus {
            let e = poly.element_name(i);
            terms.push(format!("{}({e}+δ{e})", prefix(c)));
        }
    }
    if poly.self_dual {
        for (i, &c) in coefs.iter().enumerate() {
            if c != 0 && poly.parts[i] == Part::Fixed {
                terms.push(format!("{}{}", prefix(c), poly.element_name(i)));
            }
        }
    }
    let compound = terms.len() > 1;
    (terms.join("+"), compound)
}

fn wrap(term: &str, compound: bool) -> String {
    if compound {
        format!("({term})")
    } else {
        term.to_string()
    }
}

fn with_multiplicity(body: &str, compound: bool, mult: i64) -> String {
    if mult == 1 {
        return wrap(body, compound);
    }
    let base = if !compound && body.starts_with('(') && body.ends_with(')') {
        body.to_string()
    } else {
        format!("({body})")
    };
    format!("{base}^{{⊕{mult}}}")
}

fn indicator(poly: &LabelledPolygon, arc: &Arc) -> Vec<i64> {
    let mut v = vec![0; poly.len()];
    for p in arc.positions(poly.len()) {
        v[p] += 1;
    }
    v
}

fn vector_of(td: &TubeData, poly: &LabelledPolygon, coefs: &[i64]) -> DimVector {
    let tube = &td.tubes[poly.tube];
    let mut out = vec![0i64; td.null_root.len()];
    for (i, &c) in coefs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (o, e) in out.iter_mut().zip(&tube.elements[i]) {
            *o += c * e;
        }
        if !poly.self_dual {
            let partner = &td.tubes[tube.partner];
            for (o, e) in out.iter_mut().zip(&partner.elements[tube.sigma_i[i]]) {
                *o += c * e;
            }
        }
    }
    out
}

fn plain_summand(td: &TubeData, poly: &LabelledPolygon, coefs: Vec<i64>, mult: i64, shape: SummandShape, arcs: Vec<Arc>) -> Summand {
    let (body, compound) = render_coefficients(poly, &coefs);
    Summand {
        vector: vector_of(td, poly, &coefs),
        multiplicity: mult,
        shape,
        polygon: poly.ordinal,
        arcs,
        text: with_multiplicity(&body, compound, mult),
        coefficients: coefs,
        convention_dependent: false,
    }
}

fn sigma_arc(poly: &LabelledPolygon, arc: &Arc) -> Arc {
    let n = poly.len();
    let end = arc.end(n);
    Arc { start: poly.sigma_i[end], len: arc.len, ind: arc.ind }
}

/// Symmetric runs of one polygon grouped by center, outermost first, and
/// the σ_I-pairs of the remaining runs.
struct PolygonRuns {
    symmetric: BTreeMap<Center, Vec<(Arc, i64)>>,
    pairs: Vec<(Arc, i64)>,
}

fn polygon_runs(poly: &LabelledPolygon) -> Result<PolygonRuns> {
    let n = poly.len();
    let mut symmetric: BTreeMap<Center, Vec<(Arc, i64)>> = BTreeMap::new();
    let mut pairs = Vec::new();
    let runs = decomposition_arcs(poly);
    for (arc, q) in &runs {
        if !poly.self_dual {
            pairs.push((*arc, *q));
            continue;
        }
        let mirror = sigma_arc(poly, arc);
        if mirror.start == arc.start && mirror.len == arc.len {
            let c = center_of(poly, arc).ok_or_else(|| Error::Verification("symmetric run without a center".into()))?;
            symmetric.entry(c).or_default().push((*arc, *q));
        } else {
            // Keep the member of the pair with more positions in I₊.
            let plus = |a: &Arc| a.positions(n).iter().filter(|&&i| poly.parts[i] == Part::Plus).count();
            if plus(arc) > plus(&mirror) || (plus(arc) == plus(&mirror) && arc.start < mirror.start) {
                pairs.push((*arc, *q));
            }
        }
    }
    pairs.sort_by_key(|(a, _)| (a.start, std::cmp::Reverse(a.len)));
    Ok(PolygonRuns { symmetric, pairs })
}

fn pair_summand(td: &TubeData, poly: &LabelledPolygon, arc: Arc, q: i64) -> Summand {
    let mut coefs = indicator(poly, &arc);
    if poly.self_dual {
        let mirror = indicator(poly, &sigma_arc(poly, &arc));
        for (c, m) in coefs.iter_mut().zip(mirror) {
            *c += m;
        }
    }
    plain_summand(td, poly, coefs, q, SummandShape::Pair, vec![arc])
}

/// The generic decomposition of a regular symmetric dimension vector.
pub fn generic_decompose(qs: &SymmetricQuiver, td: &TubeData, d: &[i64]) -> Result<SymmetricDecomposition> {
    classical_decompose(qs, td, d, Flavor::Plain)
}

/// Generic decomposition in `SpRep(Q, d)`: symmetric runs through a
/// σ-fixed vertex are joined in nested pairs.
pub fn symplectic_generic(qs: &SymmetricQuiver, td: &TubeData, d: &[i64]) -> Result<SymmetricDecomposition> {
    classical_decompose(qs, td, d, Flavor::Symplectic)
}

/// Generic decomposition in `ORep(Q, d)`: symmetric runs through a σ-fixed
/// arrow `a` are joined in nested pairs when `d̄(ta)` is even.
pub fn orthogonal_generic(qs: &SymmetricQuiver, td: &TubeData, d: &[i64]) -> Result<SymmetricDecomposition> {
    classical_decompose(qs, td, d, Flavor::Orthogonal)
}

fn classical_decompose(qs: &SymmetricQuiver, td: &TubeData, d: &[i64], flavor: Flavor) -> Result<SymmetricDecomposition> {
    let reg = regular_decompose(qs, td, d, flavor)?;
    let mut p = reg.p;
    let mut summands = Vec::new();
    for poly in &reg.polygons {
        let runs = polygon_runs(poly)?;
        let d_bar = vector_of(td, poly, &poly.labels);
        for (&center, group) in &runs.symmetric {
            let kind = center_kind(qs, td, poly, center)?;
            let join = match (flavor, kind) {
                (Flavor::Symplectic, CenterKind::Vertex(_)) => true,
                (Flavor::Orthogonal, CenterKind::Arrow(a)) => d_bar[qs.quiver().arrow(a).tail] % 2 == 0,
                _ => false,
            };
            if !join {
                for &(arc, q) in group {
                    summands.push(plain_summand(td, poly, indicator(poly, &arc), q, SummandShape::Symmetric, vec![arc]));
                }
                continue;
            }
            let mut chain: Vec<Arc> = group.iter().flat_map(|&(a, q)| std::iter::repeat_n(a, q as usize)).collect();
            let mut leftover = None;
            if chain.len() % 2 == 1 {
                let last = chain.pop().unwrap();
                if p % 2 == 1 {
                    p -= 1;
                    let coefs = indicator(poly, &last);
                    let mut vector = vector_of(td, poly, &coefs);
                    for (v, h) in vector.iter_mut().zip(&td.null_root) {
                        *v += h;
                    }
                    let (body, _) = render_coefficients(poly, &coefs);
                    leftover = Some(Summand {
                        vector,
                        multiplicity: 1,
                        shape: SummandShape::WithNullRoot,
                        polygon: poly.ordinal,
                        arcs: vec![last],
                        coefficients: coefs,
                        convention_dependent: true,
                        text: format!("(h+{body})"),
                    });
                } else if flavor == Flavor::Symplectic {
                    return Err(Error::Precondition(format!(
                        "odd number of symmetric runs through {} cannot be paired",
                        poly.element_name(match center {
                            Center::Element(i) | Center::Edge(i) => i,
                        })
                    )));
                } else {
                    leftover = Some(plain_summand(td, poly, indicator(poly, &last), 1, SummandShape::Symmetric, vec![last]));
                }
            }
            // Each joined summand with its body text and whether that body
            // has several terms.
            let mut joined: Vec<(Summand, String, bool)> = Vec::new();
            for pair in chain.chunks(2) {
                let (outer, inner) = (pair[0], pair[1]);
                if let Some((prev, _, _)) = joined.last_mut() {
                    if prev.arcs == [outer, inner] {
                        prev.multiplicity += 1;
                        continue;
                    }
                }
                let mut coefs = indicator(poly, &outer);
                for (c, x) in coefs.iter_mut().zip(indicator(poly, &inner)) {
                    *c += x;
                }
                let (body, compound) = if outer == inner {
                    let (b, compound) = render_coefficients(poly, &indicator(poly, &outer));
                    (format!("2{}", wrap(&b, compound)), false)
                } else {
                    render_coefficients(poly, &coefs)
                };
                let summand = Summand {
                    vector: vector_of(td, poly, &coefs),
                    multiplicity: 1,
                    shape: SummandShape::Joined,
                    polygon: poly.ordinal,
                    arcs: vec![outer, inner],
                    coefficients: coefs,
                    convention_dependent: false,
                    text: String::new(),
                };
                joined.push((summand, body, compound));
            }
            let joined = joined.into_iter().map(|(mut s, body, compound)| {
                s.text = if s.multiplicity == 1 {
                    wrap(&body, compound)
                } else {
                    format!("({body})^{{⊕{}}}", s.multiplicity)
                };
                s
            });
            summands.extend(joined);
            summands.extend(leftover);
        }
        for &(arc, q) in &runs.pairs {
            summands.push(pair_summand(td, poly, arc, q));
        }
    }
    let out = SymmetricDecomposition { flavor, p, null_root: td.null_root.clone(), summands };
    if out.total() != d {
        return Err(Error::Verification("decomposition does not re-sum to d".into()));
    }
    Ok(out)
}

/// `Σ labels · elements` for a polygon, the part of `d` it carries.
pub fn polygon_vector(td: &TubeData, poly: &LabelledPolygon) -> DimVector {
    vector_of(td, poly, &poly.labels)
}
