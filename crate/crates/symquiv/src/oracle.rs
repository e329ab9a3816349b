//! Brute-force checks of semi-invariants: random elements of
//! `∏ SL(V_x) × SO/Sp(V_fixed)` acting on representations, and exact
//! dimensions of invariant spaces in each degree from the Lie algebra action
//! on polynomial coordinates.

use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;
use symquiv_exact::{Echelon, Matrix, Monomial, Poly, Scalar, Q};

use crate::catalog::{evaluate_generator, GeneratorDescriptor};
use crate::error::{Error, Result};
use crate::quiver::{Side, SymmetricQuiver};
use crate::representations::{
    check_form_dims, form_coordinates, gram_block, random_q, rep_from_coordinates, standard_j, Flavor, Representation,
};

/// One matrix per vertex, compatible with the form when the flavor has one.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub mats: Vec<Matrix<Q>>,
}

fn unipotent<G: Rng + ?Sized>(n: usize, rng: &mut G) -> Matrix<Q> {
    let upper = Matrix::from_fn(n, n, |i, j| if i == j { Q::from_integer(1.into()) } else if i < j { random_q(rng) } else { Q::from_integer(0.into()) });
    let lower = Matrix::from_fn(n, n, |i, j| if i == j { Q::from_integer(1.into()) } else if i > j { random_q(rng) } else { Q::from_integer(0.into()) });
    upper.mul(&lower)
}

/// Element of the fixed-vertex Lie algebra built from the symmetric or skew
/// matrix `s`: skew itself (orthogonal) or `J⁻¹·s` (symplectic).
fn fixed_lie(flavor: Flavor, s: &Matrix<Q>) -> Matrix<Q> {
    match flavor {
        Flavor::Symplectic => standard_j(s.rows()).neg().mul(s),
        _ => s.clone(),
    }
}

/// Random element of `SO(n)` or `Sp(n)` by the Cayley transform
/// `(I - X)⁻¹(I + X)`, drawing again when `I - X` is singular.
fn cayley<G: Rng + ?Sized>(n: usize, flavor: Flavor, rng: &mut G) -> Matrix<Q> {
    loop {
        let mut s = Matrix::<Q>::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = random_q(rng);
                match flavor {
                    Flavor::Symplectic => {
                        s[(i, j)] = v.clone();
                        s[(j, i)] = v;
                    }
                    _ if i != j => {
                        s[(i, j)] = v.clone();
                        s[(j, i)] = -v;
                    }
                    _ => {}
                }
            }
        }
        let x = fixed_lie(flavor, &s);
        let id = Matrix::<Q>::identity(n);
        if let Some(inv) = id.sub(&x).inverse() {
            return inv.mul(&id.add(&x));
        }
    }
}

/// Random element of the group acting on `Rep(Q, d)` (plain flavor) or on
/// `ORep`/`SpRep`: unipotent at plus vertices, the inverse transpose at
/// their partners, and a Cayley transform at fixed vertices.
pub fn random_group_element<G: Rng + ?Sized>(qs: &SymmetricQuiver, dims: &[i64], flavor: Flavor, rng: &mut G) -> Result<GroupElement> {
    if flavor != Flavor::Plain {
        check_form_dims(qs, dims, flavor)?;
    }
    let n = qs.quiver().num_vertices();
    let mut mats: Vec<Option<Matrix<Q>>> = vec![None; n];
    for x in 0..n {
        if mats[x].is_some() {
            continue;
        }
        let dx = dims[x] as usize;
        if flavor == Flavor::Plain {
            mats[x] = Some(unipotent(dx, rng));
            continue;
        }
        match qs.vertex_side(x) {
            Side::Fixed => mats[x] = Some(cayley(dx, flavor, rng)),
            _ => {
                let g = unipotent(dx, rng);
                let s = qs.sigma_vertex(x);
                // Preserve the pairing of V(x) with V(σx): gᵀ·G·g' = G.
                let gram = gram_block(qs, flavor, x, dx);
                let partner = gram.inverse().expect("invertible").mul(&g.inverse().expect("unipotent").transpose()).mul(&gram);
                mats[s] = Some(partner);
                mats[x] = Some(g);
            }
        }
    }
    Ok(GroupElement { mats: mats.into_iter().map(|m| m.expect("every vertex assigned")).collect() })
}

/// `(g·W)(a) = g_{ha} W(a) g_{ta}⁻¹`.
pub fn act(qs: &SymmetricQuiver, g: &GroupElement, w: &Representation<Q>) -> Result<Representation<Q>> {
    let q = qs.quiver();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let inv = g.mats[a.tail].inverse().ok_or_else(|| Error::Verification("group element is singular".into()))?;
            Ok(g.mats[a.head].mul(w.mat(i)).mul(&inv))
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(q, &w.dim_vector(), mats)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub label: String,
    pub trials: usize,
    pub failures: usize,
    /// Trials where the value at `W` was zero, which make the check vacuous.
    pub vanishing: usize,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.vanishing < self.trials
    }
}

/// Compares `f(g·W)` with `f(W)` for random `W` and random `g`.
pub fn invariance_test<G: Rng + ?Sized>(
    qs: &SymmetricQuiver,
    gen: &GeneratorDescriptor,
    dims: &[i64],
    flavor: Flavor,
    trials: usize,
    rng: &mut G,
) -> Result<InvarianceReport> {
    let mut failures = 0;
    let mut vanishing = 0;
    for _ in 0..trials {
        let w = crate::representations::random_rep(qs, dims, flavor, rng)?;
        let g = random_group_element(qs, dims, flavor, rng)?;
        let before = evaluate_generator(qs, gen, &w)?;
        let after = evaluate_generator(qs, gen, &act(qs, &g, &w)?)?;
        if num_traits::Zero::is_zero(&before) {
            vanishing += 1;
        }
        if before != after {
            failures += 1;
        }
    }
    Ok(InvarianceReport { label: gen.label.clone(), trials, failures, vanishing })
}

/// A basis of the Lie algebra of the acting group, one matrix per vertex.
fn lie_basis(qs: &SymmetricQuiver, dims: &[i64], flavor: Flavor) -> Vec<Vec<Matrix<Q>>> {
    let n = qs.quiver().num_vertices();
    let zero = || (0..n).map(|x| Matrix::<Q>::zeros(dims[x] as usize, dims[x] as usize)).collect::<Vec<_>>();
    let one = Q::from_integer(1.into());
    let mut out = Vec::new();
    for x in 0..n {
        let dx = dims[x] as usize;
        let side = qs.vertex_side(x);
        if flavor != Flavor::Plain && side == Side::Minus {
            continue;
        }
        if flavor != Flavor::Plain && side == Side::Fixed {
            for i in 0..dx {
                for j in i..dx {
                    if flavor == Flavor::Orthogonal && i == j {
                        continue;
                    }
                    let mut s = Matrix::<Q>::zeros(dx, dx);
                    s[(i, j)] = one.clone();
                    s[(j, i)] = if flavor == Flavor::Orthogonal { -one.clone() } else { one.clone() };
                    let mut e = zero();
                    e[x] = fixed_lie(flavor, &s);
                    out.push(e);
                }
            }
            continue;
        }
        let mut sl = Vec::new();
        for i in 0..dx {
            for j in 0..dx {
                if i != j {
                    let mut m = Matrix::<Q>::zeros(dx, dx);
                    m[(i, j)] = one.clone();
                    sl.push(m);
                }
            }
        }
        for i in 0..dx.saturating_sub(1) {
            let mut m = Matrix::<Q>::zeros(dx, dx);
            m[(i, i)] = one.clone();
            m[(i + 1, i + 1)] = -one.clone();
            sl.push(m);
        }
        for m in sl {
            let mut e = zero();
            if flavor != Flavor::Plain {
                let s = qs.sigma_vertex(x);
                let gram = gram_block(qs, flavor, x, dx);
                e[s] = gram.inverse().expect("invertible").mul(&m.transpose()).mul(&gram).neg();
            }
            e[x] = m;
            out.push(e);
        }
    }
    out
}

/// Coordinate ring data: the generic representation with one variable per
/// free coordinate.
pub struct GenericRep {
    pub nvars: usize,
    pub rep: Representation<Poly>,
    coords: Vec<crate::representations::Coordinate>,
}

pub fn generic_rep(qs: &SymmetricQuiver, dims: &[i64], flavor: Flavor) -> Result<GenericRep> {
    let coords = form_coordinates(qs, dims, flavor);
    let vars: Vec<Poly> = (0..coords.len()).map(Poly::var).collect();
    let rep = rep_from_coordinates(qs, dims, flavor, &coords, &vars)?;
    Ok(GenericRep { nvars: coords.len(), rep, coords })
}

/// Linear vector fields of the Lie algebra on the coordinates: entry
/// `[k][c]` lists `(j, λ)` with `(X_k·x)_c = Σ λ x_j`.
fn vector_fields(qs: &SymmetricQuiver, dims: &[i64], flavor: Flavor, gr: &GenericRep) -> Vec<Vec<Vec<(usize, Q)>>> {
    let q = qs.quiver();
    lie_basis(qs, dims, flavor)
        .into_iter()
        .map(|x| {
            gr.coords
                .iter()
                .map(|c| {
                    let a = q.arrow(c.arrow);
                    let lift = |m: &Matrix<Q>| m.map(Poly::from_q);
                    let moved = lift(&x[a.head]).mul(gr.rep.mat(c.arrow)).sub(&gr.rep.mat(c.arrow).mul(&lift(&x[a.tail])));
                    let entry = &moved[(c.row, c.col)];
                    entry
                        .terms()
                        .map(|(m, coef)| {
                            let j = (0..gr.nvars).find(|&j| m.exponent(j) == 1).expect("linear entry");
                            (j, coef.clone())
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Dimension of the degree-`k` invariants for `k = 0..=max_degree`, as the
/// common kernel of the Lie algebra derivations on degree-`k` polynomials.
pub fn invariant_dims(qs: &SymmetricQuiver, dims: &[i64], flavor: Flavor, max_degree: u32) -> Result<Vec<usize>> {
    if flavor == Flavor::Symplectic && qs.fixed_vertices().iter().any(|&x| dims[x] % 2 != 0) {
        let mut out = vec![0; max_degree as usize + 1];
        out[0] = 1;
        return Ok(out);
    }
    let gr = generic_rep(qs, dims, flavor)?;
    let fields = vector_fields(qs, dims, flavor, &gr);
    let mut out = Vec::new();
    for k in 0..=max_degree {
        let basis = Monomial::all_of_degree(gr.nvars, k);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for field in &fields {
            // Image of each basis monomial under the derivation, as columns.
            let mut block = vec![vec![Q::from_integer(0.into()); basis.len()]; basis.len()];
            for (col, m) in basis.iter().enumerate() {
                for (c, lin) in field.iter().enumerate() {
                    let e = m.exponent(c);
                    if e == 0 || lin.is_empty() {
                        continue;
                    }
                    let mut exps = m.exponents().to_vec();
                    exps.resize(gr.nvars, 0);
                    exps[c] -= 1;
                    for (j, coef) in lin {
                        let mut ex = exps.clone();
                        ex[*j] += 1;
                        let target = Monomial::new(ex);
                        let row = index[&target];
                        block[row][col] += coef * Q::from_integer(e.into());
                    }
                }
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|v| !num_traits::Zero::is_zero(v))));
        }
        let kernel = if rows.is_empty() {
            basis.len()
        } else {
            let m = Matrix::from_rows(rows, basis.len()).expect("rectangular");
            basis.len() - m.rank()
        };
        out.push(kernel);
    }
    Ok(out)
}

/// Dimension of the degree-`k` part of the subalgebra generated by the
/// homogeneous components of the given generators, for `k = 0..=max_degree`.
/// Components of an invariant are invariant, so a generic pencil point
/// contributes its pencil coefficients.
pub fn subalgebra_dims(
    qs: &SymmetricQuiver,
    gens: &[GeneratorDescriptor],
    dims: &[i64],
    flavor: Flavor,
    max_degree: u32,
) -> Result<Vec<usize>> {
    let gr = generic_rep(qs, dims, flavor)?;
    let mut polys = Vec::new();
    for g in gens {
        let p = evaluate_generator(qs, g, &gr.rep)?;
        for deg in 1..=p.degree().unwrap_or(0) {
            let part = p.homogeneous_part(deg);
            if !num_traits::Zero::is_zero(&part) {
                polys.push((deg, part));
            }
        }
    }
    let mut out = Vec::new();
    for k in 0..=max_degree {
        let basis = Monomial::all_of_degree(gr.nvars, k);
        let mut ech = Echelon::new(basis.len());
        for prod in products_of_degree(&polys, k) {
            ech.insert(prod.coefficients_in(&basis));
        }
        out.push(ech.rank());
    }
    Ok(out)
}

/// Every product of the given homogeneous polynomials (with repetition)
/// of total degree `k`.
fn products_of_degree(polys: &[(u32, Poly)], k: u32) -> Vec<Poly> {
    fn rec(polys: &[(u32, Poly)], from: usize, left: u32, acc: Poly, out: &mut Vec<Poly>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in from..polys.len() {
            let (d, p) = &polys[i];
            if *d <= left {
                rec(polys, i, left - d, acc.clone() * p.clone(), out);
            }
        }
    }
    let mut out = Vec::new();
    rec(polys, 0, k, <Poly as num_traits::One>::one(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::list_generators;
    use crate::reflections::canonical_tubes;
    use crate::types::TameType;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_preserves_forms() {
        let (qs, _) = canonical_tubes(TameType::A11 { k: 0, l: 2 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for flavor in [Flavor::Orthogonal, Flavor::Symplectic] {
            let d = [2, 2, 2];
            let w = crate::representations::random_rep(&qs, &d, flavor, &mut rng).unwrap();
            let g = random_group_element(&qs, &d, flavor, &mut rng).unwrap();
            let gw = act(&qs, &g, &w).unwrap();
            assert!(crate::representations::check_form(&qs, &gw, flavor).ok());
            for m in &g.mats {
                assert_eq!(m.det(), Q::from_integer(1.into()));
            }
        }
    }

    #[test]
    fn generators_match_invariant_dims_small() {
        let (qs, td) = canonical_tubes(TameType::A11 { k: 0, l: 2 }).unwrap();
        let d = [2, 2, 2];
        let gens = list_generators(&qs, &td, &d, Flavor::Orthogonal).unwrap().generators;
        let inv = invariant_dims(&qs, &d, Flavor::Orthogonal, 4).unwrap();
        let sub = subalgebra_dims(&qs, &gens, &d, Flavor::Orthogonal, 4).unwrap();
        assert_eq!(inv, sub);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for g in &gens {
            assert!(invariance_test(&qs, g, &d, Flavor::Orthogonal, 3, &mut rng).unwrap().passed());
            assert!(!invariance_test(&qs, &g.mutated(), &d, Flavor::Orthogonal, 3, &mut rng).unwrap().passed());
        }
    }
}
