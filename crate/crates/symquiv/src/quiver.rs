//! Quivers, symmetric quivers, and the integral forms on dimension vectors.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Dimension vectors are indexed by vertex position.
pub type DimVector = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver with named vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// Arrows are given as `(id, tail, head)` using vertex names.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate vertex {v}")));
            }
        }
        let mut out = Vec::with_capacity(arrows.len());
        let mut arrow_index = HashMap::new();
        for (id, t, h) in arrows {
            let (id, t, h) = (id.as_ref(), t.as_ref(), h.as_ref());
            let tail = *vertex_index
                .get(t)
                .ok_or_else(|| Error::Malformed(format!("arrow {id} has unknown tail {t}")))?;
            let head = *vertex_index
                .get(h)
                .ok_or_else(|| Error::Malformed(format!("arrow {id} has unknown head {h}")))?;
            if arrow_index.insert(id.to_string(), out.len()).is_some() {
                return Err(Error::Malformed(format!("duplicate arrow {id}")));
            }
            out.push(Arrow { id: id.to_string(), tail, head });
        }
        Ok(Quiver { vertices, arrows: out, vertex_index, arrow_index })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_name(&self, x: usize) -> &str {
        &self.vertices[x]
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_named(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn outgoing(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.tail == x).map(|(i, _)| i)
    }

    pub fn incoming(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.head == x).map(|(i, _)| i)
    }

    pub fn is_sink(&self, x: usize) -> bool {
        self.outgoing(x).next().is_none()
    }

    pub fn is_source(&self, x: usize) -> bool {
        self.incoming(x).next().is_none()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&x| self.is_source(x)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&x| self.is_sink(x)).collect()
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.arrows.iter().any(|a| (a.tail == x && a.head == y) || (a.tail == y && a.head == x))
    }

    /// Number of edges at `x` in the underlying graph.
    pub fn degree(&self, x: usize) -> usize {
        self.arrows.iter().map(|a| usize::from(a.tail == x) + usize::from(a.head == x)).sum()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for a in &self.arrows {
                for (u, v) in [(a.tail, a.head), (a.head, a.tail)] {
                    if u == x && !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.num_vertices();
        let mut indeg: Vec<usize> = (0..n).map(|x| self.incoming(x).count()).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut seen = 0;
        while let Some(x) = ready.pop() {
            seen += 1;
            for a in self.outgoing(x).collect::<Vec<_>>() {
                let h = self.arrows[a].head;
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    ready.push(h);
                }
            }
        }
        seen == n
    }

    /// Reverses every arrow incident to a vertex in `xs`. Names are kept.
    pub fn reverse_at(&self, xs: &[usize]) -> Quiver {
        let mut q = self.clone();
        for a in q.arrows.iter_mut() {
            if xs.contains(&a.tail) || xs.contains(&a.head) {
                std::mem::swap(&mut a.tail, &mut a.head);
            }
        }
        q
    }

    /// Euler form `<a,b> = sum a(x)b(x) - sum over arrows a(tail)b(head)`.
    pub fn euler(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        diag - self.arrows.iter().map(|ar| a[ar.tail] * b[ar.head]).sum::<i64>()
    }

    /// Tits form `q(a) = <a,a>`.
    pub fn tits(&self, a: &[i64]) -> i64 {
        self.euler(a, a)
    }

    pub fn check_dim(&self, a: &[i64]) -> Result<()> {
        if a.len() != self.num_vertices() {
            return Err(Error::Malformed(format!(
                "dimension vector has {} entries but the quiver has {} vertices",
                a.len(),
                self.num_vertices()
            )));
        }
        if a.iter().any(|&x| x < 0) {
            return Err(Error::Malformed("dimension vector has a negative entry".into()));
        }
        Ok(())
    }

    pub fn unit(&self, x: usize) -> DimVector {
        let mut e = vec![0; self.num_vertices()];
        e[x] = 1;
        e
    }

    /// Parses a `{vertex: value}` map into a dimension vector.
    pub fn dim_from_map(&self, map: &HashMap<String, i64>) -> Result<DimVector> {
        let mut d = vec![0; self.num_vertices()];
        for (k, v) in map {
            let x = self.vertex(k).ok_or_else(|| Error::Malformed(format!("unknown vertex {k}")))?;
            d[x] = *v;
        }
        self.check_dim(&d)?;
        Ok(d)
    }
}

/// Where a vertex or arrow sits relative to the involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// First member of a swapped pair.
    Plus,
    /// Fixed by the involution.
    Fixed,
    /// Second member of a swapped pair.
    Minus,
}

/// A quiver with an involution on vertices and arrows that reverses arrows.
///
/// The `Plus` member of a swapped pair is the one listed first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricQuiver {
    quiver: Quiver,
    sigma_v: Vec<usize>,
    sigma_a: Vec<usize>,
}

impl SymmetricQuiver {
    pub fn new(quiver: Quiver, sigma_v: Vec<usize>, sigma_a: Vec<usize>) -> Result<Self> {
        let bad = |m: String| Err(Error::NotSymmetric(m));
        let n = quiver.num_vertices();
        let m = quiver.num_arrows();
        if sigma_v.len() != n || sigma_a.len() != m {
            return bad("involution does not cover every vertex and arrow".into());
        }
        for x in 0..n {
            if sigma_v[x] >= n || sigma_v[sigma_v[x]] != x {
                return bad(format!("vertex map is not an involution at {}", quiver.vertex_name(x)));
            }
        }
        for a in 0..m {
            let b = sigma_a[a];
            if b >= m || sigma_a[b] != a {
                return bad(format!("arrow map is not an involution at {}", quiver.arrow(a).id));
            }
            let (ar, br) = (quiver.arrow(a), quiver.arrow(b));
            if br.tail != sigma_v[ar.head] || br.head != sigma_v[ar.tail] {
                return bad(format!("arrow {} is not reversed by the involution", ar.id));
            }
            if sigma_v[ar.tail] == ar.head && b != a {
                return bad(format!("arrow {} joins a vertex to its image but is not fixed", ar.id));
            }
        }
        Ok(SymmetricQuiver { quiver, sigma_v, sigma_a })
    }

    /// Builds from names: `sigma_vertices` and `sigma_arrows` list each
    /// swapped pair once; unlisted items are fixed.
    pub fn from_names<S: AsRef<str>>(quiver: Quiver, sigma_vertices: &[(S, S)], sigma_arrows: &[(S, S)]) -> Result<Self> {
        let mut sv: Vec<usize> = (0..quiver.num_vertices()).collect();
        let mut sa: Vec<usize> = (0..quiver.num_arrows()).collect();
        for (x, y) in sigma_vertices {
            let xi = quiver.vertex(x.as_ref()).ok_or_else(|| Error::Malformed(format!("unknown vertex {}", x.as_ref())))?;
            let yi = quiver.vertex(y.as_ref()).ok_or_else(|| Error::Malformed(format!("unknown vertex {}", y.as_ref())))?;
            sv[xi] = yi;
            sv[yi] = xi;
        }
        for (x, y) in sigma_arrows {
            let xi = quiver.arrow_named(x.as_ref()).ok_or_else(|| Error::Malformed(format!("unknown arrow {}", x.as_ref())))?;
            let yi = quiver.arrow_named(y.as_ref()).ok_or_else(|| Error::Malformed(format!("unknown arrow {}", y.as_ref())))?;
            sa[xi] = yi;
            sa[yi] = xi;
        }
        Self::new(quiver, sv, sa)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn sigma_vertex(&self, x: usize) -> usize {
        self.sigma_v[x]
    }

    pub fn sigma_arrow(&self, a: usize) -> usize {
        self.sigma_a[a]
    }

    pub fn sigma_vertices(&self) -> &[usize] {
        &self.sigma_v
    }

    pub fn sigma_arrows(&self) -> &[usize] {
        &self.sigma_a
    }

    pub fn vertex_side(&self, x: usize) -> Side {
        use std::cmp::Ordering::*;
        match x.cmp(&self.sigma_v[x]) {
            Less => Side::Plus,
            Equal => Side::Fixed,
            Greater => Side::Minus,
        }
    }

    pub fn arrow_side(&self, a: usize) -> Side {
        use std::cmp::Ordering::*;
        match a.cmp(&self.sigma_a[a]) {
            Less => Side::Plus,
            Equal => Side::Fixed,
            Greater => Side::Minus,
        }
    }

    pub fn fixed_vertices(&self) -> Vec<usize> {
        (0..self.quiver.num_vertices()).filter(|&x| self.sigma_v[x] == x).collect()
    }

    pub fn fixed_arrows(&self) -> Vec<usize> {
        (0..self.quiver.num_arrows()).filter(|&a| self.sigma_a[a] == a).collect()
    }

    pub fn plus_vertices(&self) -> Vec<usize> {
        (0..self.quiver.num_vertices()).filter(|&x| self.vertex_side(x) == Side::Plus).collect()
    }

    pub fn plus_arrows(&self) -> Vec<usize> {
        (0..self.quiver.num_arrows()).filter(|&a| self.arrow_side(a) == Side::Plus).collect()
    }

    /// The dual vector `x -> a(sigma x)`.
    pub fn delta(&self, a: &[i64]) -> DimVector {
        self.sigma_v.iter().map(|&s| a[s]).collect()
    }

    pub fn is_symmetric_dim(&self, a: &[i64]) -> bool {
        self.delta(a) == a
    }

    /// Sink `x` with no arrow joining `x` and its image.
    pub fn is_admissible_sink(&self, x: usize) -> bool {
        let s = self.sigma_v[x];
        self.quiver.is_sink(x) && (s == x || !self.quiver.adjacent(x, s))
    }

    pub fn admissible_sinks(&self) -> Vec<usize> {
        (0..self.quiver.num_vertices()).filter(|&x| self.is_admissible_sink(x)).collect()
    }

    /// Source `x` with no arrow joining `x` and its image.
    pub fn is_admissible_source(&self, x: usize) -> bool {
        let s = self.sigma_v[x];
        self.quiver.is_source(x) && (s == x || !self.quiver.adjacent(x, s))
    }

    /// The quiver obtained by reversing the arrows at `x` and its image.
    /// `x` must be an admissible sink or an admissible source.
    pub fn reflect_pair(&self, x: usize) -> Result<SymmetricQuiver> {
        if !self.is_admissible_sink(x) && !self.is_admissible_source(x) {
            return Err(Error::Precondition(format!(
                "{} is neither an admissible sink nor an admissible source",
                self.quiver.vertex_name(x)
            )));
        }
        let mut pair = vec![x];
        if self.sigma_v[x] != x {
            pair.push(self.sigma_v[x]);
        }
        let q = self.quiver.reverse_at(&pair);
        Ok(SymmetricQuiver { quiver: q, sigma_v: self.sigma_v.clone(), sigma_a: self.sigma_a.clone() })
    }

    /// Same quiver with every arrow reoriented to match `directions`, where
    /// `true` keeps the stored orientation. Used by orientation searches.
    pub fn with_orientation(&self, reversed: &[bool]) -> SymmetricQuiver {
        let mut q = self.quiver.clone();
        for (a, &r) in q.arrows.iter_mut().zip(reversed) {
            if r {
                std::mem::swap(&mut a.tail, &mut a.head);
            }
        }
        SymmetricQuiver { quiver: q, sigma_v: self.sigma_v.clone(), sigma_a: self.sigma_a.clone() }
    }
}
