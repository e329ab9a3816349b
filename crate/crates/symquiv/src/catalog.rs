//! Generators of orthogonal and symplectic semi-invariant rings for regular
//! dimension vectors, the (Op)/(Spp) test, evaluation of each generator at a
//! representation, weight tables, and transport along reflections.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use symquiv_exact::{Matrix, Scalar, Q};

use crate::decomposition::{admissible_arcs, regular_decompose, Arc};
use crate::error::{Error, Result};
use crate::quiver::{DimVector, Side, SymmetricQuiver};
use crate::reflections::{coxeter_dim, Direction, ReflectionSequence, TubeData};
use crate::representations::{
    bgp_reflect, build_regular_a, check_form_dims, random_rep, source_paths, Flavor, RegularName, Representation,
};
use crate::semiinvariants::{
    c_eval_presentation, minimal_presentation, pf_eval_recipe, pfaffian_recipe, weight_of, PfaffianRecipe, Presentation,
    ValueKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    DetArc,
    PfArc,
    DetPencilCoeff,
    PfPencilCoeff,
    DetArrow,
}

impl GeneratorKind {
    pub fn value_kind(self) -> ValueKind {
        match self {
            GeneratorKind::PfArc | GeneratorKind::PfPencilCoeff => ValueKind::Pf,
            _ => ValueKind::Det,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GeneratorSource {
    /// Admissible arc of a labelled polygon; the module is the tube module
    /// on the arc's first endpoint and interior.
    Arc { polygon: usize, tube: usize, arc: Arc },
    /// The module `V_(φ,ψ)` of dimension `h`.
    PencilPoint { phi: i64, psi: i64 },
    /// Coefficient of `φ^(degree-index) ψ^index` in
    /// `det(ψ·W(upper path) + φ·W(lower path))`.
    PencilCoefficient { index: usize, degree: usize },
}

/// Whether a regular module gives a Pfaffian on symplectic (Op) or
/// orthogonal (Spp) representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Op,
    Spp,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorDescriptor {
    pub kind: GeneratorKind,
    pub source: GeneratorSource,
    pub label: String,
    /// Dimension vector of the defining module (`h` for pencil coefficients).
    pub alpha: DimVector,
    #[serde(serialize_with = "crate::serde_q::serialize_vec")]
    pub weight: Vec<Q>,
    pub flavor: Flavor,
    /// Minimal presentation or path formula, for display.
    pub recipe: String,
    /// Multiplies the value by one matrix entry; used as a negative control.
    pub mutated: bool,
    #[serde(skip)]
    presentation: Option<Presentation>,
    #[serde(skip)]
    pf_recipe: Option<PfaffianRecipe>,
    #[serde(skip)]
    pencil_paths: Option<(Vec<usize>, Vec<usize>)>,
}

impl GeneratorDescriptor {
    /// Copy whose evaluation carries an extra arrow factor, so it is no
    /// longer invariant.
    pub fn mutated(&self) -> GeneratorDescriptor {
        let mut g = self.clone();
        g.mutated = true;
        g.label = format!("{} · (corrupted)", g.label);
        g
    }
}

/// The generator list for `(Q, d)` and the flavor, or a note when the ring
/// is trivial.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorList {
    pub generators: Vec<GeneratorDescriptor>,
    pub note: Option<String>,
}

const PROBE_SAMPLES: usize = 3;

/// Decides (Op)/(Spp) for a regular module: `C⁺(dim V) = δ(dim V)` is
/// necessary, and the flavor is the one for which `Hom(d^V_min, W)` can be
/// made skew-symmetric on representations of dimension `2h`.
pub fn check_op_spp(qs: &SymmetricQuiver, td: &TubeData, v: &Representation<Q>) -> Result<Property> {
    let q = qs.quiver();
    let alpha = v.dim_vector();
    if coxeter_dim(q, &alpha, Direction::Plus)? != qs.delta(&alpha) {
        return Ok(Property::Neither);
    }
    let dims: DimVector = td.null_root.iter().map(|x| 2 * x).collect();
    if pfaffian_recipe(qs, v, &dims, Flavor::Symplectic).is_ok() {
        return Ok(Property::Op);
    }
    if pfaffian_recipe(qs, v, &dims, Flavor::Orthogonal).is_ok() {
        return Ok(Property::Spp);
    }
    Ok(Property::Neither)
}

fn pf_recipe_for(qs: &SymmetricQuiver, v: &Representation<Q>, d: &[i64], flavor: Flavor) -> Option<PfaffianRecipe> {
    if flavor == Flavor::Plain {
        return None;
    }
    let alpha = v.dim_vector();
    if coxeter_dim(qs.quiver(), &alpha, Direction::Plus).ok()? != qs.delta(&alpha) {
        return None;
    }
    pfaffian_recipe(qs, v, d, flavor).ok()
}

fn module_generator(
    qs: &SymmetricQuiver,
    d: &[i64],
    flavor: Flavor,
    source: GeneratorSource,
    label: String,
    alpha: DimVector,
    module: Option<Representation<Q>>,
) -> Result<GeneratorDescriptor> {
    let q = qs.quiver();
    if q.euler(&alpha, d) != 0 {
        return Err(Error::Verification(format!("<dim {label}, d> is not zero")));
    }
    let (kind, presentation, pf_recipe, recipe) = match &module {
        Some(v) => {
            let pres = minimal_presentation(q, v);
            let text = pres.render(q);
            match pf_recipe_for(qs, v, d, flavor) {
                Some(r) => (GeneratorKind::PfArc, Some(pres), Some(r), text),
                None => {
                    let single_arrow = pres.gens.len() == 1
                        && pres.rels.len() == 1
                        && pres.entries[0][0].terms().count() == 1
                        && pres.entries[0][0].terms().all(|(p, _)| p.arrows.len() == 1);
                    let kind = if single_arrow { GeneratorKind::DetArrow } else { GeneratorKind::DetArc };
                    (kind, Some(pres), None, text)
                }
            }
        }
        None => (GeneratorKind::DetArc, None, None, "no explicit model for this type".into()),
    };
    Ok(GeneratorDescriptor {
        kind,
        weight: weight_of(qs, &alpha, kind.value_kind()),
        source,
        label,
        alpha,
        flavor,
        recipe,
        mutated: false,
        presentation,
        pf_recipe,
        pencil_paths: None,
    })
}

/// Whether `SpRep(Q, d)` is empty because some fixed vertex has odd
/// dimension.
pub fn symplectic_parity_fails(qs: &SymmetricQuiver, d: &[i64]) -> bool {
    qs.fixed_vertices().into_iter().any(|x| d[x] % 2 != 0)
}

/// Generators of `OSI(Q, d)`, `SpSI(Q, d)` or (for the plain flavor) the
/// semi-invariants attached to the same modules: one per admissible arc,
/// one per pencil point `(1,0), (0,1), (1,1)`, and the nonzero pencil
/// coefficients. Pfaffian kinds are used when the module allows them.
pub fn list_generators(qs: &SymmetricQuiver, td: &TubeData, d: &[i64], flavor: Flavor) -> Result<GeneratorList> {
    let q = qs.quiver();
    if flavor == Flavor::Symplectic && symplectic_parity_fails(qs, d) {
        return Ok(GeneratorList {
            generators: Vec::new(),
            note: Some("trivial ring: constants (no symplectic representations of this dimension)".into()),
        });
    }
    let reg = regular_decompose(qs, td, d, flavor)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ef);
    let samples: Vec<Representation<Q>> =
        (0..PROBE_SAMPLES).map(|_| random_rep(qs, d, flavor, &mut rng)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for poly in &reg.polygons {
        let tube = &td.tubes[poly.tube];
        for arc in admissible_arcs(poly) {
            let support_len = arc.len - 1;
            let alpha = tube.arc_sum(arc.start, support_len);
            let module = match build_regular_a(qs, td, RegularName::Tube { tube: poly.tube, start: arc.start, len: support_len }) {
                Ok(m) => Some(m),
                Err(Error::Unsupported(_)) => None,
                Err(e) => return Err(e),
            };
            let label = format!("E{}", arc.render(poly));
            let label = if poly.ordinal == 0 { label } else { format!("{label}{}", "′".repeat(poly.ordinal)) };
            let source = GeneratorSource::Arc { polygon: poly.ordinal, tube: poly.tube, arc };
            out.push(module_generator(qs, d, flavor, source, label, alpha, module)?);
        }
    }
    let paths = match source_paths(qs) {
        Ok(p) if crate::types::classify(qs)?.is_cyclic() => Some(p),
        _ => None,
    };
    for (phi, psi) in [(1, 0), (0, 1), (1, 1)] {
        let module = if paths.is_some() { Some(build_regular_a(qs, td, RegularName::Pencil { phi, psi })?) } else { None };
        let source = GeneratorSource::PencilPoint { phi, psi };
        out.push(module_generator(qs, d, flavor, source, format!("V({phi},{psi})"), td.null_root.clone(), module)?);
    }
    if let Some((upper, lower)) = paths {
        let source_vertex = q.arrow(upper[0]).tail;
        let degree = d[source_vertex] as usize;
        let up_name: Vec<&str> = upper.iter().rev().map(|&a| q.arrow(a).id.as_str()).collect();
        let low_name: Vec<&str> = lower.iter().rev().map(|&a| q.arrow(a).id.as_str()).collect();
        let formula = format!("det(ψ·W({}) + φ·W({}))", up_name.join("·"), low_name.join("·"));
        for index in 0..=degree {
            let g = GeneratorDescriptor {
                kind: GeneratorKind::DetPencilCoeff,
                source: GeneratorSource::PencilCoefficient { index, degree },
                label: format!("c{index}"),
                alpha: td.null_root.clone(),
                weight: weight_of(qs, &td.null_root, ValueKind::Det).iter().map(|w| w * Q::from_integer(degree.into())).collect(),
                flavor,
                recipe: format!("coefficient of φ^{}ψ^{index} in {formula}", degree - index),
                mutated: false,
                presentation: None,
                pf_recipe: None,
                pencil_paths: Some((upper.clone(), lower.clone())),
            };
            if !vanishes_on(qs, &g, &samples)? {
                out.push(g);
            }
        }
    }
    // An arc whose module meets every generic representation of the flavor
    // gives the zero function there; it is reported and left out.
    let mut dropped = Vec::new();
    let mut kept = Vec::with_capacity(out.len());
    for g in out {
        let evaluable = g.presentation.is_some() || g.pencil_paths.is_some();
        if evaluable && vanishes_on(qs, &g, &samples)? {
            dropped.push(g.label);
        } else {
            kept.push(g);
        }
    }
    let note = (!dropped.is_empty()).then(|| format!("identically zero on this representation space, omitted: {}", dropped.join(", ")));
    Ok(GeneratorList { generators: kept, note })
}

fn vanishes_on(qs: &SymmetricQuiver, g: &GeneratorDescriptor, samples: &[Representation<Q>]) -> Result<bool> {
    for w in samples {
        if !num_traits::Zero::is_zero(&evaluate_generator(qs, g, w)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficients of `P(s) = det(L + s·U)` in `s`, recovered from the values
/// at `s = 0..=degree`.
fn pencil_coefficients<R: Scalar>(lower: &Matrix<R>, upper: &Matrix<R>, degree: usize) -> Vec<R> {
    let values: Vec<R> = (0..=degree)
        .map(|s| {
            let sq = Q::from_integer(s.into());
            lower.add(&upper.scale(&sq)).det()
        })
        .collect();
    let n = degree + 1;
    let vandermonde = Matrix::from_fn(n, n, |s, j| Q::from_integer(num_bigint::BigInt::from(s).pow(j as u32)));
    let inv = vandermonde.inverse().expect("Vandermonde matrix at distinct points is invertible");
    (0..n)
        .map(|j| (0..n).fold(R::zero(), |acc, s| acc + values[s].scale(&inv[(j, s)])))
        .collect()
}

/// Value of a generator at `W`, over any scalar ring (rationals or
/// polynomials in the coordinates).
pub fn evaluate_generator<R: Scalar>(qs: &SymmetricQuiver, g: &GeneratorDescriptor, w: &Representation<R>) -> Result<R> {
    let q = qs.quiver();
    let dims = w.dim_vector();
    if q.euler(&g.alpha, &dims) != 0 {
        return Err(Error::Precondition(format!("<dim {}, dim W> is not zero", g.label)));
    }
    let value = match &g.source {
        GeneratorSource::PencilCoefficient { index, degree } => {
            let (upper, lower) = g.pencil_paths.as_ref().ok_or_else(|| Error::Unsupported("no pencil paths".into()))?;
            let start = q.arrow(upper[0]).tail;
            let u = w.path_map(start, upper);
            let l = w.path_map(start, lower);
            if !u.is_square() {
                return Err(Error::Precondition("pencil matrices are not square".into()));
            }
            pencil_coefficients(&l, &u, *degree).swap_remove(*index)
        }
        _ => {
            if let Some(r) = &g.pf_recipe {
                pf_eval_recipe(qs, r, w)?.value
            } else {
                let p = g
                    .presentation
                    .as_ref()
                    .ok_or_else(|| Error::Unsupported(format!("{} has no explicit model", g.label)))?;
                c_eval_presentation(p, w)?.value
            }
        }
    };
    if g.mutated {
        let a = (0..q.num_arrows())
            .find(|&a| w.mat(a).rows() > 0 && w.mat(a).cols() > 0)
            .ok_or_else(|| Error::Precondition("no nonzero arrow space to corrupt with".into()))?;
        return Ok(value * w.mat(a)[(0, 0)].clone());
    }
    Ok(value)
}

/// Weight of every generator in the list, keyed by label.
pub fn weights_table(qs: &SymmetricQuiver, td: &TubeData, d: &[i64], flavor: Flavor) -> Result<Vec<(String, Vec<Q>)>> {
    Ok(list_generators(qs, td, d, flavor)?.generators.into_iter().map(|g| (g.label, g.weight)).collect())
}

/// The character of a weight on `∏ GL(V_x)` over plus vertices: `w(x) - w(σx)`.
pub fn plus_character(qs: &SymmetricQuiver, weight: &[Q]) -> Vec<Q> {
    (0..qs.quiver().num_vertices())
        .filter(|&x| qs.vertex_side(x) == Side::Plus)
        .map(|x| &weight[x] - &weight[qs.sigma_vertex(x)])
        .collect()
}

/// A generator's defining dimension vector pushed through pair reflections.
#[derive(Clone, Debug, Serialize)]
pub struct Transported {
    pub label: String,
    pub alpha: DimVector,
    /// Set when the module is killed by a reflection, so the semi-invariant
    /// becomes constant and a polynomial variable is adjoined instead.
    pub degenerate: Option<String>,
}

/// Renames a generator along `C⁺_(x,σx)` steps.
pub fn transport(qs: &SymmetricQuiver, g: &GeneratorDescriptor, seq: &ReflectionSequence) -> Result<Transported> {
    let mut cur = qs.clone();
    let mut alpha = g.alpha.clone();
    let mut label = g.label.clone();
    for name in &seq.steps {
        let x = cur.quiver().vertex(name).ok_or_else(|| Error::Malformed(format!("unknown vertex {name}")))?;
        if !cur.is_admissible_sink(x) {
            return Err(Error::Precondition(format!("{name} is not an admissible sink at its step")));
        }
        let simple_here = [x, cur.sigma_vertex(x)].iter().any(|&y| alpha == cur.quiver().unit(y));
        if simple_here {
            return Ok(Transported {
                label: format!("C⁺({label})"),
                alpha: vec![0; alpha.len()],
                degenerate: Some(format!("simple at {name} reflects to zero; the ring gains a polynomial variable y")),
            });
        }
        let (next, v) = crate::reflections::reflect_pair_dim(&cur, x, &alpha)?;
        if v.iter().any(|&c| c < 0) {
            return Err(Error::Precondition(format!("reflection at {name} leaves the positive cone")));
        }
        cur = next;
        alpha = v;
        label = format!("C⁺_{name}({label})");
    }
    Ok(Transported { label, alpha, degenerate: None })
}

/// Applies the reflection functors at `x` and `σx` to a representation
/// of the current quiver, returning the reflected quiver and module.
pub fn reflect_rep_pair(qs: &SymmetricQuiver, v: &Representation<Q>, x: usize) -> Result<(SymmetricQuiver, Representation<Q>)> {
    let dir = if qs.is_admissible_sink(x) {
        Direction::Plus
    } else if qs.is_admissible_source(x) {
        Direction::Minus
    } else {
        return Err(Error::Precondition("vertex is neither an admissible sink nor source".into()));
    };
    let q = qs.quiver();
    let mut r = bgp_reflect(q, v, x, dir)?;
    let mut cur = q.reverse_at(&[x]);
    let s = qs.sigma_vertex(x);
    if s != x {
        // σx is a source when x is a sink, and the other way round.
        let back = if dir == Direction::Plus { Direction::Minus } else { Direction::Plus };
        r = bgp_reflect(&cur, &r, s, back)?;
        cur = cur.reverse_at(&[s]);
    }
    let next = qs.reflect_pair(x)?;
    debug_assert_eq!(next.quiver().arrows().iter().map(|a| (a.tail, a.head)).collect::<Vec<_>>(),
        cur.arrows().iter().map(|a| (a.tail, a.head)).collect::<Vec<_>>());
    Ok((next, r))
}

/// Dimension check used before evaluating on a form-carrying `W`.
pub fn check_flavor_dims(qs: &SymmetricQuiver, d: &[i64], flavor: Flavor) -> Result<()> {
    if flavor == Flavor::Plain {
        return Ok(());
    }
    check_form_dims(qs, d, flavor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflections::canonical_tubes;
    use crate::types::TameType;
    use symquiv_exact::q;

    fn small() -> (SymmetricQuiver, TubeData) {
        canonical_tubes(TameType::A11 { k: 0, l: 2 }).unwrap()
    }

    #[test]
    fn orthogonal_two_h_list() {
        let (qs, td) = small();
        let list = list_generators(&qs, &td, &[2, 2, 2], Flavor::Orthogonal).unwrap();
        let kinds: Vec<(String, GeneratorKind)> = list.generators.iter().map(|g| (g.label.clone(), g.kind)).collect();
        assert!(kinds.contains(&("V(1,0)".into(), GeneratorKind::PfArc)));
        let coeffs: Vec<usize> = list
            .generators
            .iter()
            .filter_map(|g| match g.source {
                GeneratorSource::PencilCoefficient { index, .. } => Some(index),
                _ => None,
            })
            .collect();
        assert_eq!(coeffs, vec![0, 2]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = random_rep(&qs, &[2, 2, 2], Flavor::Orthogonal, &mut rng).unwrap();
        let b = qs.quiver().arrow_named("b").unwrap();
        let pf = list.generators.iter().find(|g| g.label == "V(1,0)").unwrap();
        let val = evaluate_generator(&qs, pf, &w).unwrap();
        assert!(val == w.mat(b)[(0, 1)] || val == -w.mat(b)[(0, 1)].clone());
        // c at index p/2 is det W(σa·a), at index 0 it is det W(b).
        let c0 = list.generators.iter().find(|g| g.label == "c0").unwrap();
        assert_eq!(evaluate_generator(&qs, c0, &w).unwrap(), w.mat(b).det());
        let c2 = list.generators.iter().find(|g| g.label == "c2").unwrap();
        let a = qs.quiver().arrow_named("a").unwrap();
        let sa = qs.sigma_arrow(a);
        assert_eq!(evaluate_generator(&qs, c2, &w).unwrap(), w.mat(sa).mul(w.mat(a)).det());
    }

    #[test]
    fn odd_symplectic_is_trivial() {
        let (qs, td) = small();
        let list = list_generators(&qs, &td, &[3, 3, 3], Flavor::Symplectic).unwrap();
        assert!(list.generators.is_empty());
        assert!(list.note.unwrap().contains("trivial ring"));
    }

    #[test]
    fn pencil_point_property() {
        let (qs, td) = small();
        for (phi, psi, want) in [(1, 0, Property::Spp), (0, 1, Property::Spp), (1, 1, Property::Neither)] {
            let v = build_regular_a(&qs, &td, RegularName::Pencil { phi, psi }).unwrap();
            assert_eq!(check_op_spp(&qs, &td, &v).unwrap(), want);
        }
        let full = build_regular_a(&qs, &td, RegularName::Tube { tube: 0, start: 0, len: 2 }).unwrap();
        assert_eq!(check_op_spp(&qs, &td, &full).unwrap(), Property::Op);
        let p = crate::representations::projective(qs.quiver(), 0);
        assert_eq!(check_op_spp(&qs, &td, &p).unwrap(), Property::Neither);
    }

    #[test]
    fn edge_generator_is_arrow_determinant() {
        let (qs, td) = canonical_tubes(TameType::A11 { k: 0, l: 6 }).unwrap();
        let d: DimVector = td.null_root.iter().map(|x| 2 * x).collect();
        let list = list_generators(&qs, &td, &d, Flavor::Orthogonal).unwrap();
        let arrows = list.generators.iter().filter(|g| g.kind == GeneratorKind::DetArrow).count();
        assert!(arrows >= 4);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let w = random_rep(&qs, &d, Flavor::Orthogonal, &mut rng).unwrap();
        for g in list.generators.iter().filter(|g| g.kind == GeneratorKind::DetArrow) {
            let v = evaluate_generator(&qs, g, &w).unwrap();
            let p = g.presentation.as_ref().unwrap();
            let (path, _) = p.entries[0][0].terms().next().unwrap();
            let det = w.mat(path.arrows[0]).det();
            assert!(v == det || v == -det.clone());
        }
    }

    #[test]
    fn transport_identity_and_null_root() {
        let (qs, td) = canonical_tubes(TameType::A11 { k: 2, l: 2 }).unwrap();
        let d: DimVector = td.null_root.iter().map(|x| 2 * x).collect();
        let list = list_generators(&qs, &td, &d, Flavor::Orthogonal).unwrap();
        let g = &list.generators[0];
        let t = transport(&qs, g, &ReflectionSequence::default()).unwrap();
        assert_eq!(t.alpha, g.alpha);
        let pencil = list.generators.iter().find(|g| g.label == "V(1,1)").unwrap();
        let sink = qs.admissible_sinks()[0];
        let seq = ReflectionSequence { steps: vec![qs.quiver().vertex_name(sink).to_string()] };
        assert_eq!(transport(&qs, pencil, &seq).unwrap().alpha, td.null_root);
    }

    #[test]
    fn weights_are_halved_for_pfaffians() {
        let (qs, td) = small();
        let table = weights_table(&qs, &td, &[2, 2, 2], Flavor::Orthogonal).unwrap();
        let (_, w) = table.iter().find(|(l, _)| l == "V(1,0)").unwrap();
        assert_eq!(plus_character(&qs, w), vec![q(1)]);
    }
}
