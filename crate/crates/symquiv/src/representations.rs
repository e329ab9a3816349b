//! Representations over exact rationals (or any [`Scalar`]), Hom and Ext,
//! duality, reflection functors, orthogonal and symplectic structures, and
//! explicit models of regular indecomposables on canonical cyclic quivers.

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use symquiv_exact::{q, Matrix, Scalar, Q};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, Side, SymmetricQuiver};
use crate::reflections::{Direction, TubeData};

/// One matrix per arrow, `mats[a]` of shape `dim(head) x dim(tail)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<R = Q> {
    dims: Vec<usize>,
    mats: Vec<Matrix<R>>,
}

fn to_usize_dims(dims: &[i64]) -> Result<Vec<usize>> {
    dims.iter()
        .map(|&d| usize::try_from(d).map_err(|_| Error::Malformed(format!("negative dimension {d}"))))
        .collect()
}

impl<R: Scalar> Representation<R> {
    pub fn new(q: &Quiver, dims: &[i64], mats: Vec<Matrix<R>>) -> Result<Self> {
        q.check_dim(dims)?;
        let dims = to_usize_dims(dims)?;
        if mats.len() != q.num_arrows() {
            return Err(Error::Malformed(format!("expected {} matrices, got {}", q.num_arrows(), mats.len())));
        }
        for (a, m) in q.arrows().iter().zip(&mats) {
            if m.shape() != (dims[a.head], dims[a.tail]) {
                return Err(Error::Malformed(format!(
                    "matrix for arrow {} has shape {:?}, expected {:?}",
                    a.id,
                    m.shape(),
                    (dims[a.head], dims[a.tail])
                )));
            }
        }
        Ok(Representation { dims, mats })
    }

    pub fn zero(q: &Quiver, dims: &[i64]) -> Result<Self> {
        let d = to_usize_dims(dims)?;
        let mats = q.arrows().iter().map(|a| Matrix::zeros(d[a.head], d[a.tail])).collect();
        Self::new(q, dims, mats)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn mat(&self, a: usize) -> &Matrix<R> {
        &self.mats[a]
    }

    pub fn mats(&self) -> &[Matrix<R>] {
        &self.mats
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Representation<S> {
        Representation { dims: self.dims.clone(), mats: self.mats.iter().map(|m| m.map(&f)).collect() }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| Matrix::block_diag(&[a.clone(), b.clone()])).collect();
        Representation { dims, mats }
    }

    /// The composite along a path given as arrows in traversal order, starting
    /// at vertex `start` (only used when the path is empty).
    pub fn path_map(&self, start: usize, path: &[usize]) -> Matrix<R> {
        let mut m = Matrix::identity(self.dims[start]);
        for &a in path {
            m = self.mats[a].mul(&m);
        }
        m
    }
}

/// A basis of `Hom(V, W)`, each element one matrix per vertex.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<Vec<Matrix<Q>>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Index bookkeeping for unknowns `f_x`, a `W(x) x V(x)` matrix per vertex.
fn hom_offsets(v: &[usize], w: &[usize]) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(v.len());
    let mut total = 0;
    for (a, b) in v.iter().zip(w) {
        off.push(total);
        total += a * b;
    }
    (off, total)
}

/// The linear map `f -> (f_{ha} V(a) - W(a) f_{ta})_a` as a matrix.
fn hom_system(q: &Quiver, v: &Representation<Q>, w: &Representation<Q>) -> (Matrix<Q>, Vec<usize>) {
    let (off, nvars) = hom_offsets(&v.dims, &w.dims);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (t, h) = (a.tail, a.head);
        let va = &v.mats[ai];
        let wa = &w.mats[ai];
        // Equation entry (r, c) of a W(h) x V(t) matrix.
        for r in 0..w.dims[h] {
            for c in 0..v.dims[t] {
                let mut row = vec![Q::zero(); nvars];
                // (f_h V(a))_{rc} = sum_k f_h[r][k] V(a)[k][c]
                for k in 0..v.dims[h] {
                    row[off[h] + r * v.dims[h] + k] += &va[(k, c)];
                }
                // (W(a) f_t)_{rc} = sum_k W(a)[r][k] f_t[k][c]
                for k in 0..w.dims[t] {
                    row[off[t] + k * v.dims[t] + c] -= &wa[(r, k)];
                }
                rows.push(row);
            }
        }
    }
    (Matrix::from_rows(rows, nvars).expect("rows have equal length"), off)
}

/// `Hom_Q(V, W)` by exact linear algebra.
pub fn hom_space(q: &Quiver, v: &Representation<Q>, w: &Representation<Q>) -> HomSpace {
    let (sys, off) = hom_system(q, v, w);
    let null = sys.nullspace();
    let basis = null
        .into_iter()
        .map(|vec| {
            (0..q.num_vertices())
                .map(|x| Matrix::from_fn(w.dims[x], v.dims[x], |r, c| vec[off[x] + r * v.dims[x] + c].clone()))
                .collect()
        })
        .collect();
    HomSpace { basis }
}

pub fn hom_dim(q: &Quiver, v: &Representation<Q>, w: &Representation<Q>) -> usize {
    let (sys, _) = hom_system(q, v, w);
    sys.cols() - sys.rank()
}

/// `dim Hom - <dim V, dim W>`, which is `dim Ext¹` for path algebras.
pub fn ext_dim(q: &Quiver, v: &Representation<Q>, w: &Representation<Q>) -> Result<usize> {
    let e = hom_dim(q, v, w) as i64 - q.euler(&v.dim_vector(), &w.dim_vector());
    usize::try_from(e).map_err(|_| Error::Verification(format!("negative Ext dimension {e}")))
}

/// Whether some homomorphism in each direction is invertible, tested on a
/// generic combination of the Hom basis.
pub fn is_isomorphic(q: &Quiver, v: &Representation<Q>, w: &Representation<Q>) -> bool {
    if v.dims != w.dims {
        return false;
    }
    let hs = hom_space(q, v, w);
    if hs.dim() == 0 {
        return v.total_dim() == 0;
    }
    // A fixed pseudo-random combination; invertible elements form a dense
    // open set, so a failure here is retried with other coefficients.
    for attempt in 0..4i64 {
        let ok = (0..q.num_vertices()).all(|x| {
            let mut m = Matrix::<Q>::zeros(w.dims[x], v.dims[x]);
            for (i, b) in hs.basis.iter().enumerate() {
                let c = q_coef(i as i64, attempt);
                m = m.add(&b[x].scale(&c));
            }
            m.det() != Q::zero()
        });
        if ok {
            return true;
        }
    }
    false
}

fn q_coef(i: i64, attempt: i64) -> Q {
    q((i + 1) * (i + 2 + attempt) % 97 + 1 + attempt * 13)
}

/// Duality: spaces `V(σx)^*` and maps `-V(σa)^T`.
pub fn nabla<R: Scalar>(qs: &SymmetricQuiver, v: &Representation<R>) -> Representation<R> {
    let n = qs.quiver().num_vertices();
    let dims = (0..n).map(|x| v.dims[qs.sigma_vertex(x)]).collect();
    let mats = (0..qs.quiver().num_arrows()).map(|a| v.mats[qs.sigma_arrow(a)].transpose().neg()).collect();
    Representation { dims, mats }
}

/// Reflection functor at a sink (`Plus`) or source (`Minus`). The result is a
/// representation of `q.reverse_at(&[x])`.
pub fn bgp_reflect(q: &Quiver, v: &Representation<Q>, x: usize, dir: Direction) -> Result<Representation<Q>> {
    let arrows: Vec<usize> = match dir {
        Direction::Plus if q.is_sink(x) => q.incoming(x).collect(),
        Direction::Minus if q.is_source(x) => q.outgoing(x).collect(),
        _ => {
            return Err(Error::Precondition(format!(
                "{} is not a {} for this reflection",
                q.vertex_name(x),
                if dir == Direction::Plus { "sink" } else { "source" }
            )))
        }
    };
    let far = |a: usize| if dir == Direction::Plus { q.arrow(a).tail } else { q.arrow(a).head };
    let sizes: Vec<usize> = arrows.iter().map(|&a| v.dims[far(a)]).collect();
    let mut mats = v.mats.clone();
    let mut dims = v.dims.clone();
    match dir {
        Direction::Plus => {
            // h = [V(a_1) ... V(a_k)] : ⊕ V(t a_i) -> V(x); new space ker h.
            let h = Matrix::from_blocks(&[v.dims[x]], &sizes, |_, j| Some(v.mats[arrows[j]].clone()));
            let ker = h.nullspace();
            dims[x] = ker.len();
            let mut start = 0;
            for (j, &a) in arrows.iter().enumerate() {
                mats[a] = Matrix::from_fn(sizes[j], ker.len(), |r, c| ker[c][start + r].clone());
                start += sizes[j];
            }
        }
        Direction::Minus => {
            // g = [V(a_1); ...; V(a_k)] : V(x) -> ⊕ V(h a_i); new space coker g,
            // realised by the rows of a left annihilator of g.
            let g = Matrix::from_blocks(&sizes, &[v.dims[x]], |i, _| Some(v.mats[arrows[i]].clone()));
            let left = g.transpose().nullspace();
            dims[x] = left.len();
            let mut start = 0;
            for (j, &a) in arrows.iter().enumerate() {
                mats[a] = Matrix::from_fn(left.len(), sizes[j], |r, c| left[r][start + c].clone());
                start += sizes[j];
            }
        }
    }
    let rq = q.reverse_at(&[x]);
    let dv: Vec<i64> = dims.iter().map(|&d| d as i64).collect();
    Representation::new(&rq, &dv, mats)
}

/// Applies [`bgp_reflect`] along an admissible numbering, giving `C⁺V` or `C⁻V`
/// as a representation of the same quiver.
pub fn coxeter_rep(q: &Quiver, v: &Representation<Q>, dir: Direction) -> Result<Representation<Q>> {
    let mut cur_q = q.clone();
    let mut cur = v.clone();
    for x in crate::reflections::coxeter_order(q, dir) {
        cur = bgp_reflect(&cur_q, &cur, x, dir)?;
        cur_q = cur_q.reverse_at(&[x]);
    }
    Ok(cur)
}

/// Which classical group a form structure belongs to. `Plain` stands for no
/// form at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Plain,
    Orthogonal,
    Symplectic,
}

impl Flavor {
    /// `+1` for symmetric forms, `-1` for alternating ones.
    pub fn epsilon(self) -> i64 {
        match self {
            Flavor::Symplectic => -1,
            _ => 1,
        }
    }

    pub fn parse(s: &str) -> Result<Flavor> {
        match s {
            "plain" | "generic" => Ok(Flavor::Plain),
            "orthogonal" | "o" => Ok(Flavor::Orthogonal),
            "symplectic" | "sp" => Ok(Flavor::Symplectic),
            _ => Err(Error::Malformed(format!("unknown flavor {s}"))),
        }
    }
}

/// The standard alternating form `[[0, I], [-I, 0]]` of even size `n`.
pub fn standard_j(n: usize) -> Matrix<Q> {
    let m = n / 2;
    Matrix::from_fn(n, n, |i, j| {
        if j == i + m && i < m {
            Q::one()
        } else if i == j + m && j < m {
            -Q::one()
        } else {
            Q::zero()
        }
    })
}

/// Gram block pairing `V(x)` with `V(σx)`: identity on the plus side,
/// `ε` times identity on the minus side and the standard form at fixed
/// vertices.
pub fn gram_block(qs: &SymmetricQuiver, flavor: Flavor, x: usize, dim: usize) -> Matrix<Q> {
    match qs.vertex_side(x) {
        Side::Plus => Matrix::identity(dim),
        Side::Minus => Matrix::identity(dim).scale(&q(flavor.epsilon())),
        Side::Fixed => match flavor {
            Flavor::Symplectic => standard_j(dim),
            _ => Matrix::identity(dim),
        },
    }
}

/// Checks that dimensions allow a form of the given flavor.
pub fn check_form_dims(qs: &SymmetricQuiver, dims: &[i64], flavor: Flavor) -> Result<()> {
    if !qs.is_symmetric_dim(dims) {
        return Err(Error::Precondition("dimension vector is not symmetric".into()));
    }
    if flavor == Flavor::Symplectic {
        for x in qs.fixed_vertices() {
            if dims[x] % 2 != 0 {
                return Err(Error::Precondition(format!(
                    "symplectic structure needs even dimension at fixed vertex {}",
                    qs.quiver().vertex_name(x)
                )));
            }
        }
    }
    Ok(())
}

/// `V(σa)` forced by compatibility: `-G_{ta}^{-1} V(a)^T G_{ha}`.
fn partner_matrix<R: Scalar>(qs: &SymmetricQuiver, flavor: Flavor, dims: &[usize], a: usize, m: &Matrix<R>) -> Matrix<R> {
    let ar = qs.quiver().arrow(a);
    let gt = gram_block(qs, flavor, ar.tail, dims[ar.tail]);
    let gh = gram_block(qs, flavor, ar.head, dims[ar.head]);
    let gt_inv = gt.inverse().expect("gram blocks are invertible");
    let lift = |g: &Matrix<Q>| g.map(R::from_q);
    lift(&gt_inv).mul(&m.transpose()).mul(&lift(&gh)).neg()
}

/// Result of [`check_form`]: empty `violations` means the structure holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormReport {
    pub violations: Vec<String>,
}

impl FormReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies the compatibility identity `<V(a)v, w> + <v, V(σa)w> = 0` for
/// every arrow under the standard normalization, plus parity at fixed
/// vertices for the symplectic flavor.
pub fn check_form(qs: &SymmetricQuiver, v: &Representation<Q>, flavor: Flavor) -> FormReport {
    let mut report = FormReport::default();
    if let Err(e) = check_form_dims(qs, &v.dim_vector(), flavor) {
        report.violations.push(e.to_string());
        return report;
    }
    for a in 0..qs.quiver().num_arrows() {
        let expect = partner_matrix(qs, flavor, &v.dims, a, &v.mats[a]);
        if expect != v.mats[qs.sigma_arrow(a)] {
            report.violations.push(format!("arrow {} violates compatibility", qs.quiver().arrow(a).id));
        }
    }
    report
}

/// One free coordinate of the space of orthogonal or symplectic
/// representations: entry `(row, col)` of the matrix at `arrow`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coordinate {
    pub arrow: usize,
    pub row: usize,
    pub col: usize,
}

/// Coordinates on `ORep` / `SpRep`: every entry of each plus arrow, the strict
/// upper triangle (orthogonal) or upper triangle with diagonal (symplectic)
/// of each fixed arrow. For `Plain`, every entry of every arrow.
pub fn form_coordinates(qs: &SymmetricQuiver, dims: &[i64], flavor: Flavor) -> Vec<Coordinate> {
    let q = qs.quiver();
    let mut out = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (r, c) = (dims[a.head] as usize, dims[a.tail] as usize);
        let side = qs.arrow_side(ai);
        if flavor == Flavor::Plain || side == Side::Plus {
            for i in 0..r {
                for j in 0..c {
                    out.push(Coordinate { arrow: ai, row: i, col: j });
                }
            }
        } else if side == Side::Fixed {
            for i in 0..r {
                let from = if flavor == Flavor::Orthogonal { i + 1 } else { i };
                for j in from..c {
                    out.push(Coordinate { arrow: ai, row: i, col: j });
                }
            }
        }
    }
    out
}

/// Builds the representation with the given coordinate values, filling the
/// dependent matrices from the compatibility identities.
pub fn rep_from_coordinates<R: Scalar>(
    qs: &SymmetricQuiver,
    dims: &[i64],
    flavor: Flavor,
    coords: &[Coordinate],
    values: &[R],
) -> Result<Representation<R>> {
    if flavor != Flavor::Plain {
        check_form_dims(qs, dims, flavor)?;
    }
    let q = qs.quiver();
    let d = to_usize_dims(dims)?;
    let mut mats: Vec<Matrix<R>> = q.arrows().iter().map(|a| Matrix::zeros(d[a.head], d[a.tail])).collect();
    for (c, v) in coords.iter().zip(values) {
        mats[c.arrow][(c.row, c.col)] = v.clone();
        if flavor != Flavor::Plain && qs.arrow_side(c.arrow) == Side::Fixed && c.row != c.col {
            // Orthogonal: skew; symplectic: symmetric.
            let mirrored = if flavor == Flavor::Orthogonal { -v.clone() } else { v.clone() };
            mats[c.arrow][(c.col, c.row)] = mirrored;
        }
    }
    if flavor != Flavor::Plain {
        for a in 0..q.num_arrows() {
            if qs.arrow_side(a) == Side::Plus {
                let s = qs.sigma_arrow(a);
                mats[s] = partner_matrix(qs, flavor, &d, a, &mats[a]);
            }
        }
    }
    Representation::new(q, dims, mats)
}

/// A small random rational: mostly integers in `[-4, 4]`, sometimes halves.
pub fn random_q<G: Rng + ?Sized>(rng: &mut G) -> Q {
    let n: i64 = rng.gen_range(-4..=4);
    if rng.gen_bool(0.2) {
        Q::new(n.into(), 2.into())
    } else {
        q(n)
    }
}

/// Uniformly random entries on every free coordinate.
pub fn random_rep<G: Rng + ?Sized>(qs: &SymmetricQuiver, dims: &[i64], flavor: Flavor, rng: &mut G) -> Result<Representation<Q>> {
    let coords = form_coordinates(qs, dims, flavor);
    let values: Vec<Q> = coords.iter().map(|_| random_q(rng)).collect();
    rep_from_coordinates(qs, dims, flavor, &coords, &values)
}

/// Random representation of a bare quiver.
pub fn random_plain_rep<G: Rng + ?Sized>(q: &Quiver, dims: &[i64], rng: &mut G) -> Result<Representation<Q>> {
    let d = to_usize_dims(dims)?;
    let mats = q.arrows().iter().map(|a| Matrix::from_fn(d[a.head], d[a.tail], |_, _| random_q(rng))).collect();
    Representation::new(q, dims, mats)
}

/// Which regular indecomposable to build on a canonical cyclic quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RegularName {
    /// The uniserial module on `len` consecutive tube elements from `start`
    /// (0-based), so its dimension vector is their sum.
    Tube { tube: usize, start: usize, len: usize },
    /// The homogeneous module with path scalars: the upper path from the
    /// source carries `phi` and the lower one `-psi`.
    Pencil { phi: i64, psi: i64 },
}

/// The two maximal paths from the unique source to the unique sink of a
/// canonical cyclic orientation, upper (through the first named arrow) first.
pub fn source_paths(qs: &SymmetricQuiver) -> Result<(Vec<usize>, Vec<usize>)> {
    let q = qs.quiver();
    let sources = q.sources();
    let sinks = q.sinks();
    if sources.len() != 1 || sinks.len() != 1 || q.num_vertices() < 2 {
        return Err(Error::Unsupported("pencil modules need a single source and a single sink".into()));
    }
    let (s, t) = (sources[0], sinks[0]);
    let mut starts: Vec<usize> = q.outgoing(s).collect();
    starts.sort();
    if starts.len() != 2 {
        return Err(Error::Unsupported("source must have exactly two outgoing arrows".into()));
    }
    let walk = |first: usize| {
        let mut path = vec![first];
        let mut cur = q.arrow(first).head;
        while cur != t {
            let next = q.outgoing(cur).next().expect("path continues to the sink");
            path.push(next);
            cur = q.arrow(next).head;
        }
        path
    };
    Ok((walk(starts[0]), walk(starts[1])))
}

/// Explicit model of a regular indecomposable on a canonical cyclic quiver.
pub fn build_regular_a(qs: &SymmetricQuiver, tubes: &TubeData, name: RegularName) -> Result<Representation<Q>> {
    let q = qs.quiver();
    let ty = crate::types::classify(qs)?;
    if !ty.is_cyclic() {
        return Err(Error::Unsupported("explicit regular models exist only for cyclic types".into()));
    }
    match name {
        RegularName::Tube { tube, start, len } => {
            let t = tubes.tubes.get(tube).ok_or_else(|| Error::Precondition(format!("no tube {tube}")))?;
            if start >= t.period() || len == 0 || len > t.period() {
                return Err(Error::Precondition(format!(
                    "tube coordinate ({start}, {len}) outside 0..{} with length at most the period",
                    t.period()
                )));
            }
            if len == t.period() {
                return full_length_module(qs, tubes, tube, start);
            }
            let dims = t.arc_sum(start, len);
            if dims.iter().any(|&d| d > 1) {
                return Err(Error::Unsupported("arc dimension exceeds one at some vertex".into()));
            }
            let mats = q
                .arrows()
                .iter()
                .map(|a| {
                    let on = dims[a.tail] == 1 && dims[a.head] == 1;
                    Matrix::from_fn(dims[a.head] as usize, dims[a.tail] as usize, |_, _| if on { Q::one() } else { Q::zero() })
                })
                .collect();
            Representation::new(q, &dims, mats)
        }
        RegularName::Pencil { phi, psi } => {
            let (upper, lower) = source_paths(qs)?;
            let n = q.num_vertices();
            let dims = vec![1; n];
            let mut mats: Vec<Matrix<Q>> = (0..q.num_arrows()).map(|_| Matrix::identity(1)).collect();
            mats[upper[0]] = Matrix::from_fn(1, 1, |_, _| symquiv_exact::q(phi));
            mats[lower[0]] = Matrix::from_fn(1, 1, |_, _| symquiv_exact::q(-psi));
            Representation::new(q, &dims, mats)
        }
    }
}

/// The module of dimension `h` in a tube with regular top `elements[start]`:
/// identity maps everywhere except one arrow joining the last element of
/// the run back to the first, which is zero.
fn full_length_module(qs: &SymmetricQuiver, tubes: &TubeData, tube: usize, start: usize) -> Result<Representation<Q>> {
    let q = qs.quiver();
    let t = &tubes.tubes[tube];
    let n = t.period();
    let dims = t.arc_sum(start, n);
    if dims.iter().any(|&d| d > 1) {
        return Err(Error::Unsupported("arc dimension exceeds one at some vertex".into()));
    }
    let first = &t.elements[start];
    let last = &t.elements[(start + n - 1) % n];
    let top = build_regular_a(qs, tubes, RegularName::Tube { tube, start, len: 1 })?;
    let socle = build_regular_a(qs, tubes, RegularName::Tube { tube, start: (start + n - 1) % n, len: 1 })?;
    for (ai, a) in q.arrows().iter().enumerate() {
        let joins = (first[a.tail] > 0 && last[a.head] > 0) || (last[a.tail] > 0 && first[a.head] > 0);
        if !joins {
            continue;
        }
        let mats: Vec<Matrix<Q>> = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(bi, b)| {
                let on = bi != ai && dims[b.tail] == 1 && dims[b.head] == 1;
                Matrix::from_fn(dims[b.head] as usize, dims[b.tail] as usize, |_, _| if on { Q::one() } else { Q::zero() })
            })
            .collect();
        let m = Representation::new(q, &dims, mats)?;
        if hom_dim(q, &m, &m) == 1 && hom_dim(q, &m, &top) > 0 && hom_dim(q, &socle, &m) > 0 {
            return Ok(m);
        }
    }
    Err(Error::Unsupported("no full-length tube module with the requested top".into()))
}

/// Indecomposable projective at `x`: paths out of `x`, one basis vector per
/// path, with arrows acting by extension.
pub fn projective(q: &Quiver, x: usize) -> Representation<Q> {
    // Enumerate paths starting at x.
    let mut paths: Vec<(usize, Vec<usize>)> = vec![(x, vec![])];
    let mut i = 0;
    while i < paths.len() {
        let (end, p) = paths[i].clone();
        for a in q.outgoing(end) {
            let mut np = p.clone();
            np.push(a);
            paths.push((q.arrow(a).head, np));
        }
        i += 1;
    }
    let n = q.num_vertices();
    let mut index: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (pi, (end, _)) in paths.iter().enumerate() {
        index[*end].push(pi);
    }
    let dims: Vec<i64> = index.iter().map(|v| v.len() as i64).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            Matrix::from_fn(index[a.head].len(), index[a.tail].len(), |r, c| {
                let (_, src) = &paths[index[a.tail][c]];
                let (_, dst) = &paths[index[a.head][r]];
                let mut ext = src.clone();
                ext.push(ai);
                if *dst == ext {
                    Q::one()
                } else {
                    Q::zero()
                }
            })
        })
        .collect();
    Representation::new(q, &dims, mats).expect("projective is well formed")
}

/// Indecomposable injective at `x`, as the dual of the projective of the
/// opposite quiver.
pub fn injective(q: &Quiver, x: usize) -> Representation<Q> {
    let op_arrows: Vec<(String, String, String)> = q
        .arrows()
        .iter()
        .map(|a| (a.id.clone(), q.vertex_name(a.head).to_string(), q.vertex_name(a.tail).to_string()))
        .collect();
    let op = Quiver::new(q.vertices(), &op_arrows).expect("opposite quiver is valid");
    let p = projective(&op, x);
    Representation { dims: p.dims.clone(), mats: p.mats.iter().map(|m| m.transpose()).collect() }
}

/// Simple representation at `x`.
pub fn simple(q: &Quiver, x: usize) -> Representation<Q> {
    Representation::zero(q, &q.unit(x)).expect("unit vector is a valid dimension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflections::tube_data;
    use crate::types::{build_canonical, TameType};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small() -> SymmetricQuiver {
        build_canonical(TameType::A11 { k: 0, l: 2 }).unwrap()
    }

    #[test]
    fn hom_of_simple_and_projective() {
        let qs = small();
        let q = qs.quiver();
        let s2 = simple(q, 1);
        assert_eq!(hom_dim(q, &s2, &s2), 1);
        assert_eq!(ext_dim(q, &s2, &s2).unwrap(), 0);
        let p1 = projective(q, 0);
        assert_eq!(p1.dim_vector(), vec![1, 1, 2]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = random_plain_rep(q, &[2, 1, 3], &mut rng).unwrap();
        assert_eq!(hom_dim(q, &p1, &w), 2);
        assert_eq!(injective(q, 2).dim_vector(), vec![2, 1, 1]);
    }

    #[test]
    fn nabla_is_an_involution() {
        let qs = small();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = random_plain_rep(qs.quiver(), &[2, 1, 3], &mut rng).unwrap();
        assert_eq!(nabla(&qs, &nabla(&qs, &v)), v);
    }

    #[test]
    fn forms_and_parity() {
        let qs = small();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let w = random_rep(&qs, &[2, 2, 2], Flavor::Orthogonal, &mut rng).unwrap();
        assert!(check_form(&qs, &w, Flavor::Orthogonal).ok());
        assert!(w.mat(2).is_skew());
        let z = Representation::<Q>::zero(qs.quiver(), &[1, 1, 1]).unwrap();
        assert!(check_form(&qs, &z, Flavor::Orthogonal).ok());
        assert!(!check_form(&qs, &z, Flavor::Symplectic).ok());
    }

    #[test]
    fn regular_models() {
        let qs = small();
        let td = tube_data(&qs).unwrap();
        let e = build_regular_a(&qs, &td, RegularName::Tube { tube: 0, start: 1, len: 1 }).unwrap();
        assert_eq!(e.dim_vector(), vec![0, 1, 0]);
        let v = build_regular_a(&qs, &td, RegularName::Pencil { phi: 1, psi: 0 }).unwrap();
        assert_eq!(hom_dim(qs.quiver(), &v, &v), 1);
        assert!(build_regular_a(&qs, &td, RegularName::Tube { tube: 0, start: 5, len: 1 }).is_err());
        // One full-length module is the pencil point (0, 1); the point
        // (1, 0) lies in the rank-one tube.
        let q = qs.quiver();
        let full: Vec<_> = (0..2)
            .map(|s| build_regular_a(&qs, &td, RegularName::Tube { tube: 0, start: s, len: 2 }).unwrap())
            .collect();
        assert!(!is_isomorphic(q, &full[0], &full[1]));
        let points: Vec<_> = [(1, 0), (0, 1)]
            .iter()
            .map(|&(phi, psi)| build_regular_a(&qs, &td, RegularName::Pencil { phi, psi }).unwrap())
            .collect();
        let matches: Vec<usize> =
            full.iter().map(|m| points.iter().filter(|p| is_isomorphic(q, m, p)).count()).collect();
        assert_eq!(matches.iter().sum::<usize>(), 1);
        assert!(full.iter().any(|m| is_isomorphic(q, m, &points[1])));
    }

    #[test]
    fn reflection_functor_dimensions() {
        let qs = small();
        let q = qs.quiver();
        let td = tube_data(&qs).unwrap();
        let v = build_regular_a(&qs, &td, RegularName::Pencil { phi: 2, psi: 3 }).unwrap();
        let s1 = q.vertex("σ(1)").unwrap();
        let r = bgp_reflect(q, &v, s1, Direction::Plus).unwrap();
        assert_eq!(r.dim_vector(), crate::reflections::reflect_dim(q, s1, &[1, 1, 1]).unwrap());
        let back = bgp_reflect(&q.reverse_at(&[s1]), &r, s1, Direction::Minus).unwrap();
        assert!(is_isomorphic(q, &back, &v));
        assert_eq!(bgp_reflect(q, &simple(q, s1), s1, Direction::Plus).unwrap().total_dim(), 0);
    }
}
