//! Permutations and permutation groups: orbit structure, group order via a
//! stabilizer chain, and the one-permutation-per-line file format.

use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use std::collections::HashMap;

/// A permutation of `0..degree`, stored as the image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(Error::InvalidPermutation(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[im] = true;
        }
        Ok(Permutation(images.into_iter().map(|x| x as u32).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Composition: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation(inv)
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// A permutation group given by generators, with lazily computed orbits.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl PermutationGroup {
    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
        }
    }

    /// Builds a group from generators, dropping identities and duplicates and
    /// sorting the rest for schedule-independent output.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator degree {} != group degree {}",
                    g.degree(),
                    degree
                )));
            }
            if !g.is_identity() {
                gens.push(g);
            }
        }
        gens.sort();
        gens.dedup();
        Ok(PermutationGroup {
            degree,
            generators: gens,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Orbit partition of `0..degree`, each orbit sorted, orbits ordered by
    /// smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for i in 0..self.degree {
                uf.union(i, g.apply(i));
            }
        }
        uf.partition()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits().len()
    }

    /// Orbit of a single point.
    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut stack = vec![point];
        let mut orbit = Vec::new();
        seen[point] = true;
        while let Some(p) = stack.pop() {
            orbit.push(p);
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Group order via a Schreier–Sims stabilizer chain.
    ///
    /// Verification restarts whenever a Schreier generator fails to sift, so
    /// this stays correct at the cost of repeated passes; fine for the
    /// desk-scale degrees used here.
    pub fn order(&self) -> BigUint {
        schreier_sims_order(self.degree, &self.generators)
    }

    /// One permutation per line, space-separated images. Byte-deterministic.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            let line: Vec<String> = g.images().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(degree: usize, text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let images: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad permutation token {t:?}")))
                })
                .collect::<Result<_>>()?;
            if images.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "permutation of length {} in a degree-{} file",
                    images.len(),
                    degree
                )));
            }
            gens.push(Permutation::from_images(images)?);
        }
        PermutationGroup::new(degree, gens)
    }
}

/// Plain union-find over `0..n`.
pub struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let up = self.parent[self.parent[x] as usize];
            self.parent[x] = up;
            x = up as usize;
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // attach larger root index under smaller so roots are orbit minima
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
        }
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn partition(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            let r = self.find(i);
            groups.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        for g in &mut out {
            g.sort_unstable();
        }
        out.sort_by_key(|g| g[0]);
        out
    }
}

// ---------------------------------------------------------------------------
// Schreier–Sims (order computation only).
// ---------------------------------------------------------------------------

struct Level {
    point: usize,
    /// transversal[p] = group element mapping `point` to `p`
    transversal: HashMap<usize, Permutation>,
    /// indices into the strong set of the generators fixing all earlier base points
    gen_idx: Vec<usize>,
}

/// |G| for G = ⟨gens⟩ by building a stabilizer chain and verifying every
/// Schreier generator sifts to the identity. On a sift failure the residue
/// joins the strong set and the whole verification restarts.
fn schreier_sims_order(degree: usize, gens: &[Permutation]) -> BigUint {
    let mut strong: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    strong.dedup();
    if strong.is_empty() {
        return BigUint::one();
    }
    let mut base: Vec<usize> = Vec::new();

    'restart: loop {
        // every strong generator must move some base point
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                let moved = (0..degree)
                    .find(|&p| g.apply(p) != p)
                    .expect("non-identity permutation moves a point");
                base.push(moved);
            }
        }

        // build levels: S_i = strong gens fixing base[0..i]
        let mut levels: Vec<Level> = Vec::with_capacity(base.len());
        for (i, &b) in base.iter().enumerate() {
            let gen_idx: Vec<usize> = strong
                .iter()
                .enumerate()
                .filter(|(_, g)| base[..i].iter().all(|&p| g.apply(p) == p))
                .map(|(k, _)| k)
                .collect();
            let mut transversal = HashMap::new();
            transversal.insert(b, Permutation::identity(degree));
            let mut queue = vec![b];
            while let Some(p) = queue.pop() {
                let t_p = transversal[&p].clone();
                for &k in &gen_idx {
                    let q = strong[k].apply(p);
                    if !transversal.contains_key(&q) {
                        transversal.insert(q, strong[k].compose(&t_p));
                        queue.push(q);
                    }
                }
            }
            levels.push(Level {
                point: b,
                transversal,
                gen_idx,
            });
        }

        // verify Schreier generators level by level
        for i in 0..levels.len() {
            let points: Vec<usize> = levels[i].transversal.keys().copied().collect();
            for &p in &points {
                let t_p = levels[i].transversal[&p].clone();
                for &k in &levels[i].gen_idx {
                    let s = &strong[k];
                    let q = s.apply(p);
                    let schreier = levels[i].transversal[&q]
                        .inverse()
                        .compose(&s.compose(&t_p));
                    // sift through the deeper part of the chain
                    let mut residue = schreier;
                    let mut ok = true;
                    for l in levels.iter().skip(i + 1) {
                        let image = residue.apply(l.point);
                        match l.transversal.get(&image) {
                            Some(t) => residue = t.inverse().compose(&residue),
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok || !residue.is_identity() {
                        strong.push(residue);
                        continue 'restart;
                    }
                }
            }
        }

        let mut acc = BigUint::one();
        for level in &levels {
            acc *= BigUint::from(level.transversal.len());
        }
        return acc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_and_inverse() {
        let a = perm(&[1, 2, 0]);
        let b = perm(&[0, 2, 1]);
        let ab = a.compose(&b); // a(b(i))
        assert_eq!(ab, perm(&[1, 0, 2]));
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn symmetric_group_order() {
        // S4 from a transposition and a 4-cycle
        let g = PermutationGroup::new(4, vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])]).unwrap();
        assert_eq!(g.order(), BigUint::from(24u32));
        assert_eq!(g.orbit_count(), 1);
    }

    #[test]
    fn dihedral_order() {
        // D5 acting on the pentagon
        let rot = perm(&[1, 2, 3, 4, 0]);
        let refl = perm(&[0, 4, 3, 2, 1]);
        let g = PermutationGroup::new(5, vec![rot, refl]).unwrap();
        assert_eq!(g.order(), BigUint::from(10u32));
    }

    #[test]
    fn trivial_group() {
        let g = PermutationGroup::trivial(6);
        assert_eq!(g.order(), BigUint::one());
        assert_eq!(g.orbit_count(), 6);
    }

    #[test]
    fn text_round_trip() {
        let g = PermutationGroup::new(4, vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])]).unwrap();
        let text = g.to_text();
        let h = PermutationGroup::from_text(4, &text).unwrap();
        assert_eq!(g.generators(), h.generators());
        assert_eq!(text, h.to_text());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }
}
