//! Projective presentations, the matrices `Hom_Q(d, W)`, determinantal and
//! Pfaffian semi-invariants, and their weights.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use symquiv_exact::{Matrix, Scalar, Q};

fn qn(n: i64) -> Q {
    symquiv_exact::q(n)
}

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, Side, SymmetricQuiver};
use crate::representations::{gram_block, random_rep, Flavor, Representation};

/// A path given by its start vertex and its arrows in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(x: usize) -> Path {
        Path { start: x, arrows: Vec::new() }
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrow(a).head)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Path) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Path { start: self.start, arrows }
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", q.vertex_name(self.start));
        }
        // Composition is written right to left.
        self.arrows.iter().rev().map(|&a| q.arrow(a).id.clone()).collect::<Vec<_>>().join("·")
    }
}

/// Rational linear combination of paths sharing start and end.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PathComb {
    terms: BTreeMap<Path, Q>,
}

impl PathComb {
    pub fn single(p: Path, c: Q) -> Self {
        let mut out = PathComb::default();
        out.add(p, c);
        out
    }

    pub fn add(&mut self, p: Path, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(p).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Q)> {
        self.terms.iter()
    }

    /// The coefficient of the trivial path, if the combination consists of
    /// it alone.
    pub fn as_scalar(&self) -> Option<Q> {
        if self.terms.len() == 1 {
            let (p, c) = self.terms.iter().next().unwrap();
            if p.arrows.is_empty() {
                return Some(c.clone());
            }
        }
        None
    }

    /// `first` then `second`, composed term by term.
    pub fn compose(first: &PathComb, second: &PathComb) -> PathComb {
        let mut out = PathComb::default();
        for (p1, c1) in &first.terms {
            for (p2, c2) in &second.terms {
                out.add(p1.then(p2), c1 * c2);
            }
        }
        out
    }

    pub fn sub_assign(&mut self, other: &PathComb) {
        for (p, c) in &other.terms {
            self.add(p.clone(), -c.clone());
        }
    }

    pub fn scale(&self, c: &Q) -> PathComb {
        let mut out = PathComb::default();
        for (p, x) in &self.terms {
            out.add(p.clone(), x * c);
        }
        out
    }

    /// `Σ c · W(path)` as a `W(end) x W(start)` matrix.
    pub fn evaluate<R: Scalar>(&self, w: &Representation<R>, from: usize, to: usize) -> Matrix<R> {
        let mut m = Matrix::zeros(w.dims()[to], w.dims()[from]);
        for (p, c) in &self.terms {
            m = m.add(&w.path_map(p.start, &p.arrows).scale(c));
        }
        m
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(p, c)| {
                let c = symquiv_exact::q_to_string(c);
                if c == "1" {
                    p.render(q)
                } else {
                    format!("{c}*{}", p.render(q))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A map `⊕_r P_{rels[r]} -> ⊕_g P_{gens[g]}` of projectives, with
/// `entries[r][g]` a combination of paths from `gens[g]` to `rels[r]`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Presentation {
    pub gens: Vec<usize>,
    pub rels: Vec<usize>,
    pub entries: Vec<Vec<PathComb>>,
}

impl Presentation {
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty() && self.rels.is_empty()
    }

    /// Dimension vector of the cokernel, `Σ dim P_gen - Σ dim P_rel`.
    pub fn cokernel_dim(&self, q: &Quiver) -> DimVector {
        let mut out = vec![0i64; q.num_vertices()];
        let proj: Vec<DimVector> = (0..q.num_vertices()).map(|x| path_counts(q, x)).collect();
        for &g in &self.gens {
            for (o, p) in out.iter_mut().zip(&proj[g]) {
                *o += p;
            }
        }
        for &r in &self.rels {
            for (o, p) in out.iter_mut().zip(&proj[r]) {
                *o -= p;
            }
        }
        out
    }

    pub fn render(&self, q: &Quiver) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| format!("[{}]", row.iter().map(|e| e.render(q)).collect::<Vec<_>>().join(", ")))
            .collect();
        format!(
            "P1 = {{{}}} -> P0 = {{{}}}, matrix {}",
            self.rels.iter().map(|&x| q.vertex_name(x)).collect::<Vec<_>>().join(", "),
            self.gens.iter().map(|&x| q.vertex_name(x)).collect::<Vec<_>>().join(", "),
            rows.join(" ")
        )
    }
}

/// Number of paths from `x` to each vertex, which is `dim P_x`.
fn path_counts(q: &Quiver, x: usize) -> DimVector {
    let mut counts = vec![0i64; q.num_vertices()];
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        counts[y] += 1;
        stack.extend(q.outgoing(y).map(|a| q.arrow(a).head));
    }
    counts
}

/// The two-term resolution with generators `V(x) ⊗ P_x` and relations
/// `V(ta) ⊗ P_{ha}` mapping `v ⊗ e_{ha}` to `V(a)v ⊗ e_{ha} - v ⊗ a`.
pub fn canonical_presentation(q: &Quiver, v: &Representation<Q>) -> Presentation {
    let dims = v.dims();
    let mut gen_index = vec![Vec::new(); q.num_vertices()];
    let mut gens = Vec::new();
    for x in 0..q.num_vertices() {
        for _ in 0..dims[x] {
            gen_index[x].push(gens.len());
            gens.push(x);
        }
    }
    let mut rels = Vec::new();
    let mut entries = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        for j in 0..dims[a.tail] {
            let mut row = vec![PathComb::default(); gens.len()];
            for i in 0..dims[a.head] {
                let c = v.mat(ai)[(i, j)].clone();
                row[gen_index[a.head][i]].add(Path::trivial(a.head), c);
            }
            row[gen_index[a.tail][j]].add(Path { start: a.tail, arrows: vec![ai] }, -Q::one());
            rels.push(a.head);
            entries.push(row);
        }
    }
    Presentation { gens, rels, entries }
}

/// Cancels every summand pair joined by a nonzero scalar entry, pivoting in
/// row-major order. The result is the minimal presentation up to
/// isomorphism.
pub fn minimize(mut p: Presentation) -> Presentation {
    loop {
        let pivot = (0..p.rels.len()).find_map(|r| {
            (0..p.gens.len()).find_map(|g| {
                if p.rels[r] == p.gens[g] {
                    p.entries[r][g].as_scalar().filter(|c| !c.is_zero()).map(|c| (r, g, c))
                } else {
                    None
                }
            })
        });
        let Some((r, g, c)) = pivot else { return p };
        let inv = Q::one() / c;
        let pivot_row = p.entries[r].clone();
        for rr in 0..p.rels.len() {
            if rr == r || p.entries[rr][g].is_zero() {
                continue;
            }
            let factor = p.entries[rr][g].scale(&inv);
            for gg in 0..p.gens.len() {
                if gg == g || pivot_row[gg].is_zero() {
                    continue;
                }
                // Entry (r, gg) runs from gens[gg] to rels[r] = gens[g], and
                // factor from gens[g] on to rels[rr].
                let upd = PathComb::compose(&pivot_row[gg], &factor);
                p.entries[rr][gg].sub_assign(&upd);
            }
        }
        p.entries.remove(r);
        p.rels.remove(r);
        for row in p.entries.iter_mut() {
            row.remove(g);
        }
        p.gens.remove(g);
    }
}

pub fn minimal_presentation(q: &Quiver, v: &Representation<Q>) -> Presentation {
    minimize(canonical_presentation(q, v))
}

/// The block matrix of `Hom_Q(d, W)`: columns `(g, basis of W(gens[g]))`,
/// rows `(r, basis of W(rels[r]))`. Not necessarily square.
pub fn hom_matrix<R: Scalar>(p: &Presentation, w: &Representation<R>) -> Matrix<R> {
    let rs: Vec<usize> = p.rels.iter().map(|&x| w.dims()[x]).collect();
    let cs: Vec<usize> = p.gens.iter().map(|&x| w.dims()[x]).collect();
    Matrix::from_blocks(&rs, &cs, |r, g| {
        let e = &p.entries[r][g];
        if e.is_zero() {
            None
        } else {
            Some(e.evaluate(w, p.gens[g], p.rels[r]))
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueKind {
    Det,
    Pf,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemiInvariantValue<R = Q> {
    pub value: R,
    pub kind: ValueKind,
}

/// `det Hom_Q(d^V_min, W)`, requiring `<dim V, dim W> = 0`. A projective `V`
/// gives the zero semi-invariant.
pub fn c_eval<R: Scalar>(q: &Quiver, v: &Representation<Q>, w: &Representation<R>) -> Result<SemiInvariantValue<R>> {
    let e = q.euler(&v.dim_vector(), &w.dim_vector());
    if e != 0 {
        return Err(Error::Precondition(format!("<dim V, dim W> = {e}, not 0")));
    }
    let p = minimal_presentation(q, v);
    c_eval_presentation(&p, w)
}

/// Determinant for an already computed presentation.
pub fn c_eval_presentation<R: Scalar>(p: &Presentation, w: &Representation<R>) -> Result<SemiInvariantValue<R>> {
    if p.rels.is_empty() && !p.gens.is_empty() {
        return Ok(SemiInvariantValue { value: R::zero(), kind: ValueKind::Det });
    }
    let m = hom_matrix(p, w);
    let value = m.try_det().map_err(|e| Error::Precondition(e.to_string()))?;
    Ok(SemiInvariantValue { value, kind: ValueKind::Det })
}

/// Exact Pfaffian of a skew-symmetric rational matrix.
pub fn pfaffian(a: &Matrix<Q>) -> Result<Q> {
    a.try_pf().map_err(|e| Error::Precondition(e.to_string()))
}

/// Data turning `Hom_Q(d^V_min, W)` into a skew-symmetric matrix: the
/// bilinear form `Mᵀ Ĝ L(W)`, where `Ĝ` pairs `W(rel)` with `W(σ rel)` and
/// `L(W)` is a fixed combination of paths from each generator vertex to the
/// σ-image of each relation vertex.
#[derive(Clone, Debug)]
pub struct PfaffianRecipe {
    pub presentation: Presentation,
    pub flavor: Flavor,
    /// `link[r][g]`: paths from `gens[g]` to `σ(rels[r])`.
    pub link: Vec<Vec<PathComb>>,
}

fn paths_between(q: &Quiver, from: usize, to: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = vec![Path::trivial(from)];
    while let Some(p) = stack.pop() {
        let end = p.end(q);
        if end == to {
            out.push(p.clone());
        }
        for a in q.outgoing(end) {
            let mut np = p.clone();
            np.arrows.push(a);
            stack.push(np);
        }
    }
    out.sort();
    out
}

impl PfaffianRecipe {
    /// The skew-symmetric matrix at `W` (skewness is verified by the caller).
    pub fn matrix<R: Scalar>(&self, qs: &SymmetricQuiver, w: &Representation<R>) -> Matrix<R> {
        let p = &self.presentation;
        let m = hom_matrix(p, w);
        let rs: Vec<usize> = p.rels.iter().map(|&x| w.dims()[x]).collect();
        let cs: Vec<usize> = p.gens.iter().map(|&x| w.dims()[x]).collect();
        let g_hat = Matrix::<Q>::block_diag(
            &p.rels.iter().map(|&x| gram_block(qs, self.flavor, x, w.dims()[x])).collect::<Vec<_>>(),
        )
        .map(R::from_q);
        let l = Matrix::from_blocks(&rs, &cs, |r, g| {
            let e = &self.link[r][g];
            if e.is_zero() {
                None
            } else {
                Some(e.evaluate(w, p.gens[g], qs.sigma_vertex(p.rels[r])))
            }
        });
        m.transpose().mul(&g_hat).mul(&l)
    }
}

/// Number of random representations used to solve for the link matrix, and
/// of fresh ones used to confirm it.
const PF_SOLVE_SAMPLES: usize = 3;
const PF_CHECK_SAMPLES: usize = 3;

/// Finds a link matrix making `Hom_Q(d^V_min, ·)` skew-symmetric on
/// representations of dimension `dims` with the given form. Fails when no
/// such link exists, which happens exactly when `V` lacks the needed
/// self-duality.
pub fn pfaffian_recipe(qs: &SymmetricQuiver, v: &Representation<Q>, dims: &[i64], flavor: Flavor) -> Result<PfaffianRecipe> {
    let q = qs.quiver();
    if flavor == Flavor::Plain {
        return Err(Error::Precondition("Pfaffians need an orthogonal or symplectic structure".into()));
    }
    let e = q.euler(&v.dim_vector(), dims);
    if e != 0 {
        return Err(Error::Precondition(format!("<dim V, dim W> = {e}, not 0")));
    }
    let p = minimal_presentation(q, v);
    // Unknowns: one coefficient per (r, g, path from gens[g] to σ rels[r]).
    let mut unknowns: Vec<(usize, usize, Path)> = Vec::new();
    for r in 0..p.rels.len() {
        for g in 0..p.gens.len() {
            for path in paths_between(q, p.gens[g], qs.sigma_vertex(p.rels[r])) {
                unknowns.push((r, g, path));
            }
        }
    }
    if unknowns.is_empty() {
        return Err(Error::Precondition("no link between relations and generators".into()));
    }
    let basis_recipe = |k: usize| -> PfaffianRecipe {
        let mut link = vec![vec![PathComb::default(); p.gens.len()]; p.rels.len()];
        let (r, g, path) = &unknowns[k];
        link[*r][*g] = PathComb::single(path.clone(), Q::one());
        PfaffianRecipe { presentation: p.clone(), flavor, link }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for _ in 0..PF_SOLVE_SAMPLES {
        let w = random_rep(qs, dims, flavor, &mut rng)?;
        let mats: Vec<Matrix<Q>> = (0..unknowns.len()).map(|k| basis_recipe(k).matrix(qs, &w)).collect();
        let n = mats[0].rows();
        if n != mats[0].cols() {
            return Err(Error::Precondition("Hom matrix is not square".into()));
        }
        for i in 0..n {
            for j in i..n {
                rows.push(mats.iter().map(|m| &m[(i, j)] + &m[(j, i)]).collect());
            }
        }
    }
    let sys = Matrix::from_rows(rows, unknowns.len()).expect("uniform rows");
    let null = sys.nullspace();
    let build = |coeffs: &[Q]| -> PfaffianRecipe {
        let mut link = vec![vec![PathComb::default(); p.gens.len()]; p.rels.len()];
        for (k, c) in coeffs.iter().enumerate() {
            let (r, g, path) = &unknowns[k];
            link[*r][*g].add(path.clone(), c.clone());
        }
        PfaffianRecipe { presentation: p.clone(), flavor, link }
    };
    // Prefer a single basis solution whose constant part is invertible with
    // determinant ±1; fall back to any invertible one.
    let mut fallback = None;
    let mut candidates: Vec<Vec<Q>> = null.clone();
    if null.len() > 1 {
        let mut sum = vec![Q::zero(); unknowns.len()];
        for (i, b) in null.iter().enumerate() {
            for (s, x) in sum.iter_mut().zip(b) {
                *s += x * qn(i as i64 + 1);
            }
        }
        candidates.push(sum);
    }
    for c in candidates {
        let recipe = build(&c);
        let d = link_constant_det(qs, &recipe);
        if d.is_zero() {
            continue;
        }
        let mut ok = true;
        for _ in 0..PF_CHECK_SAMPLES {
            let w = random_rep(qs, dims, flavor, &mut rng)?;
            if !recipe.matrix(qs, &w).is_skew() {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        if d == Q::one() || d == -Q::one() {
            return Ok(recipe);
        }
        fallback.get_or_insert(recipe);
    }
    fallback.ok_or_else(|| Error::Verification("Hom matrix cannot be made skew-symmetric".into()))
}

/// Determinant of the trivial-path part of the link, which is the
/// W-independent factor relating `pf²` and `det`.
fn link_constant_det(qs: &SymmetricQuiver, r: &PfaffianRecipe) -> Q {
    let p = &r.presentation;
    let n = p.rels.len();
    if n != p.gens.len() {
        return Q::zero();
    }
    let m = Matrix::from_fn(n, n, |i, j| {
        r.link[i][j].terms().filter(|(path, _)| path.arrows.is_empty()).map(|(_, c)| c.clone()).fold(Q::zero(), |a, b| a + b)
    });
    let _ = qs;
    m.det()
}

/// `pf(Mᵀ Ĝ L)` at `W`, checking skew-symmetry.
pub fn pf_eval_recipe<R: Scalar>(qs: &SymmetricQuiver, recipe: &PfaffianRecipe, w: &Representation<R>) -> Result<SemiInvariantValue<R>> {
    let m = recipe.matrix(qs, w);
    if !m.is_skew() {
        return Err(Error::Verification("evaluated matrix is not skew-symmetric".into()));
    }
    let value = m.try_pf().map_err(|e| Error::Precondition(e.to_string()))?;
    Ok(SemiInvariantValue { value, kind: ValueKind::Pf })
}

/// Pfaffian semi-invariant of `V` at an orthogonal or symplectic `W`.
pub fn pf_eval(qs: &SymmetricQuiver, v: &Representation<Q>, w: &Representation<Q>, flavor: Flavor) -> Result<SemiInvariantValue<Q>> {
    let recipe = pfaffian_recipe(qs, v, &w.dim_vector(), flavor)?;
    pf_eval_recipe(qs, &recipe, w)
}

/// Weight of `c^V` on symmetric representations: `<dim V, e_y>` at each
/// vertex, with the entries at fixed vertices removed since the classical
/// groups there have no characters. Pfaffian weights are half of this.
pub fn weight_of(qs: &SymmetricQuiver, alpha: &[i64], kind: ValueKind) -> Vec<Q> {
    let q = qs.quiver();
    (0..q.num_vertices())
        .map(|y| {
            if qs.vertex_side(y) == Side::Fixed {
                return Q::zero();
            }
            let w = qn(q.euler(alpha, &q.unit(y)));
            match kind {
                ValueKind::Det => w,
                ValueKind::Pf => w / qn(2),
            }
        })
        .collect()
}

/// Plain weight `<alpha, ·>` without any correction.
pub fn euler_weight(q: &Quiver, alpha: &[i64]) -> Vec<i64> {
    (0..q.num_vertices()).map(|y| q.euler(alpha, &q.unit(y))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflections::tube_data;
    use crate::representations::{build_regular_a, hom_dim, random_plain_rep, simple, RegularName};
    use crate::types::{build_canonical, TameType};

    fn small() -> SymmetricQuiver {
        build_canonical(TameType::A11 { k: 0, l: 2 }).unwrap()
    }

    #[test]
    fn minimal_presentation_of_simple() {
        let qs = small();
        let q = qs.quiver();
        let p = minimal_presentation(q, &simple(q, 1));
        assert_eq!(p.gens, vec![1]);
        assert_eq!(p.rels, vec![2]);
        assert_eq!(p.cokernel_dim(q), vec![0, 1, 0]);
        assert_eq!(p.entries[0][0].render(q), "-1*σ(a)");
    }

    #[test]
    fn c_eval_vanishing() {
        let qs = small();
        let q = qs.quiver();
        let s2 = simple(q, 1);
        let ones = Representation::new(q, &[1, 1, 1], (0..3).map(|_| Matrix::<Q>::identity(1)).collect()).unwrap();
        assert_eq!(num_traits::Signed::abs(&c_eval(q, &s2, &ones).unwrap().value), Q::one());
        let mut mats: Vec<Matrix<Q>> = (0..3).map(|_| Matrix::identity(1)).collect();
        mats[1] = Matrix::zeros(1, 1);
        let w = Representation::new(q, &[1, 1, 1], mats).unwrap();
        assert!(c_eval(q, &s2, &w).unwrap().value.is_zero());
        assert!(hom_dim(q, &s2, &w) > 0);
    }

    #[test]
    fn pfaffian_of_pencil_module() {
        let qs = small();
        let td = tube_data(&qs).unwrap();
        let v = build_regular_a(&qs, &td, RegularName::Pencil { phi: 1, psi: 0 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let w = random_rep(&qs, &[2, 2, 2], Flavor::Orthogonal, &mut rng).unwrap();
        let pf = pf_eval(&qs, &v, &w, Flavor::Orthogonal).unwrap().value;
        let b = qs.quiver().arrow_named("b").unwrap();
        use num_traits::Signed;
        assert_eq!(pf.clone() * pf.clone(), c_eval(qs.quiver(), &v, &w).unwrap().value.abs());
        assert_eq!(pf.abs(), w.mat(b)[(0, 1)].abs());
    }

    #[test]
    fn weights_of_simple() {
        let qs = small();
        assert_eq!(euler_weight(qs.quiver(), &[0, 1, 0]), vec![0, 1, -1]);
        assert_eq!(weight_of(&qs, &[0, 1, 0], ValueKind::Det), vec![qn(0), qn(0), qn(-1)]);
    }

    #[test]
    fn presentations_agree_up_to_constant() {
        let qs = small();
        let q = qs.quiver();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let v = random_plain_rep(q, &[1, 0, 1], &mut rng).unwrap();
        let canon = canonical_presentation(q, &v);
        let min = minimize(canon.clone());
        let mut ratio: Option<Q> = None;
        for _ in 0..5 {
            let w = random_plain_rep(q, &[1, 1, 1], &mut rng).unwrap();
            let a = c_eval_presentation(&canon, &w).unwrap().value;
            let b = c_eval_presentation(&min, &w).unwrap().value;
            if b.is_zero() {
                assert!(a.is_zero());
                continue;
            }
            let r = a / b;
            if let Some(prev) = &ratio {
                assert_eq!(prev, &r);
            }
            ratio = Some(r);
        }
    }
}
