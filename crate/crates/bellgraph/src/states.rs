//! Structured vector families and their orthogonality graphs.
//!
//! Rays are stored as unnormalized Gaussian-integer component vectors in a
//! canonical global phase, so equality, deduplication, and orthogonality are
//! all exact. Three families are generated here:
//!
//! * Pauli states: joint eigenbases of the maximal commuting subsets of the
//!   n-qubit Pauli group, enumerated through the GF(2) symplectic
//!   representation (no numerical diagonalization).
//! * Newman states: ±1 vectors of length `d ≡ 0 (mod 4)` with an even number
//!   of −1 entries, deduplicated under global sign.
//! * Hadamard rows (see [`crate::hadamard`]), which embed into the Newman
//!   universe as cliques.

use crate::bitset::BitSet;
use crate::gauss::{self, GaussInt};
use crate::graph::Graph;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// A ray: a nonzero vector up to global phase, components exact.
///
/// Canonical form: components divided by their integer content, then the
/// quarter-phase variant with the lexicographically greatest component list
/// is chosen. For unit-component rays this makes the first nonzero component
/// real and positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ray {
    comps: Vec<GaussInt>,
}

impl Ray {
    pub fn new(comps: Vec<GaussInt>) -> Result<Ray> {
        if comps.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidVectorSet("zero vector is not a ray".into()));
        }
        let mut ray = Ray { comps };
        ray.canonicalize();
        Ok(ray)
    }

    pub fn from_ints(comps: &[i64]) -> Result<Ray> {
        Ray::new(comps.iter().map(|&re| GaussInt::new(re, 0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[GaussInt] {
        &self.comps
    }

    /// Squared Euclidean norm of the stored (unnormalized) vector.
    pub fn norm_sq(&self) -> i64 {
        self.comps.iter().map(|c| c.norm_sq()).sum()
    }

    /// ⟨self|other⟩ = Σ conj(self_i)·other_i, exact.
    pub fn inner(&self, other: &Ray) -> GaussInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.comps
            .iter()
            .zip(&other.comps)
            .fold(gauss::ZERO, |acc, (a, b)| acc + a.conj() * *b)
    }

    pub fn is_orthogonal(&self, other: &Ray) -> bool {
        self.inner(other).is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.comps.iter().all(|c| c.im == 0)
    }

    fn canonicalize(&mut self) {
        // divide by integer content
        let mut g: i64 = 0;
        for c in &self.comps {
            g = gcd(g, c.re.abs());
            g = gcd(g, c.im.abs());
        }
        if g > 1 {
            for c in &mut self.comps {
                c.re /= g;
                c.im /= g;
            }
        }
        // quarter-phase canonical representative
        let variants = [gauss::ONE, -gauss::ONE, gauss::I, -gauss::I];
        let best = variants
            .iter()
            .map(|&u| self.comps.iter().map(|&c| u * c).collect::<Vec<_>>())
            .max()
            .expect("nonempty variant list");
        self.comps = best;
    }
}

impl std::fmt::Debug for Ray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Provenance of a vector set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    PauliReal,
    PauliComplex,
    Newman,
    HadamardRows,
    User,
}

/// Number field restriction for the Pauli family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

/// A list of distinct rays of a common dimension.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorSet {
    pub dimension: usize,
    pub field: FamilyTag,
    pub rays: Vec<Ray>,
}

impl VectorSet {
    pub fn new(dimension: usize, field: FamilyTag, rays: Vec<Ray>) -> Result<Self> {
        for r in &rays {
            if r.dim() != dimension {
                return Err(Error::MixedDimensions(dimension, r.dim()));
            }
        }
        let mut seen = HashSet::new();
        for r in &rays {
            if !seen.insert(r.clone()) {
                return Err(Error::InvalidVectorSet(format!(
                    "duplicate ray {r:?} (up to global phase)"
                )));
            }
        }
        Ok(VectorSet {
            dimension,
            field,
            rays,
        })
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("vector set serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let vs: VectorSet = serde_json::from_str(text)?;
        VectorSet::new(vs.dimension, vs.field, vs.rays)
    }

    /// Orthogonality graph: vertex per ray, edge iff
    /// |⟨v_i|v_j⟩|² ≤ tol²·‖v_i‖²‖v_j‖².  `tol = 0` is the exact case.
    pub fn orthogonality_graph(&self, tol: f64) -> Result<Graph> {
        let n = self.len();
        let rows: Vec<BitSet> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = BitSet::new(n);
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let ip = self.rays[i].inner(&self.rays[j]).norm_sq();
                    let orthogonal = if tol == 0.0 {
                        ip == 0
                    } else {
                        (ip as f64)
                            <= tol * tol
                                * self.rays[i].norm_sq() as f64
                                * self.rays[j].norm_sq() as f64
                    };
                    if orthogonal {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let mut g = Graph::new(n);
        for (i, row) in rows.into_iter().enumerate() {
            for j in row.iter() {
                if j > i {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }
}

/// True iff every edge of `g` maps to an orthogonal pair of `vs`.
/// A true answer certifies that the orthogonal rank of `g` is at most the
/// dimension of the set.
pub fn verify_orthonormal_representation(vs: &VectorSet, g: &Graph) -> Result<bool> {
    if vs.len() != g.vertex_count() {
        return Err(Error::InvalidVectorSet(format!(
            "{} rays for {} vertices",
            vs.len(),
            g.vertex_count()
        )));
    }
    Ok(g.edges()
        .iter()
        .all(|&(u, v)| vs.rays[u].is_orthogonal(&vs.rays[v])))
}

// ---------------------------------------------------------------------------
// Pauli states
// ---------------------------------------------------------------------------

/// Joint eigenbases of all maximal commuting subsets of the n-qubit Pauli
/// group, as rays in dimension 2^n. `Field::Real` keeps only rays whose
/// canonical form has all-real components.
///
/// Counts: `L·2^n` rays for the complex family with `L = ∏_{j=1..n}(2^j+1)`,
/// and `∏_{j=1..n}(2^j+2)` rays for the real subfamily.
pub fn pauli_states(n: usize, field: Field) -> Result<VectorSet> {
    pauli_states_with_limit(n, field, 4)
}

pub fn pauli_states_with_limit(n: usize, field: Field, max_n: usize) -> Result<VectorSet> {
    if n < 2 {
        return Err(Error::BadFamilyParameter(format!(
            "Pauli family needs n >= 2 qubits, got {n}"
        )));
    }
    if n > max_n {
        return Err(Error::BadFamilyParameter(format!(
            "n = {n} exceeds the configured ceiling {max_n}"
        )));
    }
    let d = 1usize << n;
    let lagrangians = enumerate_lagrangians(n);
    let expected_l: usize = (1..=n).map(|j| (1usize << j) + 1).product();
    assert_eq!(lagrangians.len(), expected_l, "Lagrangian count mismatch");

    let per_basis: Vec<Vec<Ray>> = lagrangians
        .par_iter()
        .map(|basis| eigenbasis_rays(n, basis))
        .collect();

    let mut seen = HashSet::new();
    let mut rays = Vec::new();
    for basis_rays in per_basis {
        for ray in basis_rays {
            let keep = match field {
                Field::Real => ray.is_real(),
                Field::Complex => true,
            };
            if keep && seen.insert(ray.clone()) {
                rays.push(ray);
            }
        }
    }
    let tag = match field {
        Field::Real => FamilyTag::PauliReal,
        Field::Complex => FamilyTag::PauliComplex,
    };
    VectorSet::new(d, tag, rays)
}

/// A Pauli operator in the GF(2) symplectic representation: low `n` bits are
/// the X part, high `n` bits the Z part.
type SpVec = u32;

#[inline]
fn symplectic_form(n: usize, a: SpVec, b: SpVec) -> u32 {
    let (ax, az) = (a & ((1 << n) - 1), a >> n);
    let (bx, bz) = (b & ((1 << n) - 1), b >> n);
    ((ax & bz).count_ones() + (az & bx).count_ones()) & 1
}

/// Row-reduced echelon form over GF(2); rows sorted descending. This is the
/// canonical key for a subspace.
fn rref(rows: &mut Vec<SpVec>) {
    let mut pivot_row = 0;
    for bit in (0..32).rev() {
        let mask = 1u32 << bit;
        if let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r] & mask != 0) {
            rows.swap(pivot_row, r);
            for r2 in 0..rows.len() {
                if r2 != pivot_row && rows[r2] & mask != 0 {
                    rows[r2] ^= rows[pivot_row];
                }
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    rows.sort_unstable_by(|a, b| b.cmp(a));
}

/// All maximal isotropic (Lagrangian) subspaces of GF(2)^{2n}, via the orbit
/// of the all-Z subspace under symplectic transvections.
fn enumerate_lagrangians(n: usize) -> Vec<Vec<SpVec>> {
    let dim = 2 * n;
    let mut start: Vec<SpVec> = (0..n).map(|i| 1u32 << (n + i)).collect();
    rref(&mut start);
    let mut seen: HashSet<Vec<SpVec>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = vec![start];
    let mut out = Vec::new();
    while let Some(basis) = queue.pop() {
        out.push(basis.clone());
        for v in 1..(1u32 << dim) {
            // transvection x -> x + <x,v> v is symplectic
            let mut image: Vec<SpVec> = basis
                .iter()
                .map(|&row| {
                    if symplectic_form(n, row, v) == 1 {
                        row ^ v
                    } else {
                        row
                    }
                })
                .collect();
            rref(&mut image);
            debug_assert_eq!(image.len(), n);
            if seen.insert(image.clone()) {
                queue.push(image);
            }
        }
    }
    out.sort();
    out
}

/// Dense Gaussian-integer matrix of the Hermitian Pauli operator with
/// symplectic coordinates `(x|z)`:  i^{x·z} X^x Z^z.
fn pauli_matrix(n: usize, v: SpVec) -> Vec<GaussInt> {
    let d = 1usize << n;
    let x = (v & ((1 << n) - 1)) as usize;
    let z = (v >> n) as usize;
    let phase_pow = (x & z).count_ones() % 4;
    let phase = match phase_pow {
        0 => gauss::ONE,
        1 => gauss::I,
        2 => -gauss::ONE,
        _ => -gauss::I,
    };
    let mut m = vec![gauss::ZERO; d * d];
    for c in 0..d {
        let sign = if ((z & c).count_ones() & 1) == 1 {
            -gauss::ONE
        } else {
            gauss::ONE
        };
        m[(c ^ x) * d + c] = phase * sign;
    }
    m
}

fn mat_mul(n: usize, a: &[GaussInt], b: &[GaussInt]) -> Vec<GaussInt> {
    let d = 1usize << n;
    let mut out = vec![gauss::ZERO; d * d];
    for r in 0..d {
        for k in 0..d {
            let ark = a[r * d + k];
            if ark.is_zero() {
                continue;
            }
            for c in 0..d {
                let bkc = b[k * d + c];
                if !bkc.is_zero() {
                    out[r * d + c] += ark * bkc;
                }
            }
        }
    }
    out
}

/// The 2^n rays of the joint eigenbasis of one Lagrangian subspace.
///
/// For each sign pattern s the (rank-one) group-average projector is read off
/// as Σ_T (−1)^{s·T} ∏_{i∈T} G_i and a nonzero column is extracted.
fn eigenbasis_rays(n: usize, basis: &[SpVec]) -> Vec<Ray> {
    let d = 1usize << n;
    let gens: Vec<Vec<GaussInt>> = basis.iter().map(|&v| pauli_matrix(n, v)).collect();

    // subset products in Gray-code order (generators commute and square to I)
    let mut products: Vec<Vec<GaussInt>> = Vec::with_capacity(d);
    let mut identity = vec![gauss::ZERO; d * d];
    for r in 0..d {
        identity[r * d + r] = gauss::ONE;
    }
    products.push(identity);
    let mut current_mask = 0usize;
    let mut current = products[0].clone();
    let mut by_mask = vec![Vec::new(); 1 << n];
    by_mask[0] = current.clone();
    for t in 1..(1usize << n) {
        let gray = t ^ (t >> 1);
        let flipped = (gray ^ current_mask).trailing_zeros() as usize;
        current = mat_mul(n, &current, &gens[flipped]);
        current_mask = gray;
        by_mask[gray] = current.clone();
    }

    let mut rays = Vec::with_capacity(d);
    for s in 0..(1usize << n) {
        let mut sum = vec![gauss::ZERO; d * d];
        for (mask, m) in by_mask.iter().enumerate() {
            let neg = ((mask & s).count_ones() & 1) == 1;
            for (acc, &x) in sum.iter_mut().zip(m.iter()) {
                *acc += if neg { -x } else { x };
            }
        }
        // first column with a nonzero entry is proportional to the eigenvector
        let col = (0..d)
            .find(|&c| (0..d).any(|r| !sum[r * d + c].is_zero()))
            .expect("stabilizer projector is nonzero");
        let comps: Vec<GaussInt> = (0..d).map(|r| sum[r * d + col]).collect();
        let ray = Ray::new(comps).expect("projector column is nonzero");
        debug_assert!(
            ray.components().iter().all(|c| c.is_unit_or_zero()),
            "stabilizer ray has non-unit component: {ray:?}"
        );
        rays.push(ray);
    }
    rays
}

// ---------------------------------------------------------------------------
// Newman states and Hadamard-cube vector universes
// ---------------------------------------------------------------------------

/// Newman family: ±1 rays of length `d ≡ 0 (mod 4)` with an even number of
/// −1 components, deduplicated under global sign (2^{d−2} rays).
pub fn newman_states(d: usize) -> Result<VectorSet> {
    newman_states_with_limit(d, 16)
}

pub fn newman_states_with_limit(d: usize, max_d: usize) -> Result<VectorSet> {
    if d == 0 || d % 4 != 0 {
        return Err(Error::BadFamilyParameter(format!(
            "Newman family needs d ≡ 0 (mod 4), got {d}"
        )));
    }
    if d > max_d {
        return Err(Error::BadFamilyParameter(format!(
            "d = {d} exceeds the materialization ceiling {max_d}; use the closed forms"
        )));
    }
    // first component pinned to +1; even number of −1 among the rest
    let mut rays = Vec::with_capacity(1usize << (d - 2));
    for mask in 0..(1u64 << (d - 1)) {
        if mask.count_ones() & 1 != 0 {
            continue;
        }
        let mut comps = Vec::with_capacity(d);
        comps.push(1i64);
        for bit in 0..(d - 1) {
            comps.push(if mask >> bit & 1 == 1 { -1 } else { 1 });
        }
        rays.push(Ray::from_ints(&comps)?);
    }
    VectorSet::new(d, FamilyTag::Newman, rays)
}

/// Parity class of the hypercube-direction universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaParity {
    Even,
    Odd,
}

/// All ±1 vectors of length n whose number of +1 components has the given
/// parity. These are vectors, not rays: v and −v both appear when n is a
/// multiple of 4.
pub fn omega_vectors(n: usize, parity: OmegaParity) -> Result<Vec<Vec<i64>>> {
    if n == 0 || n > 16 {
        return Err(Error::BadFamilyParameter(format!(
            "hypercube universe materialized only for 1 ≤ n ≤ 16, got {n}"
        )));
    }
    let want_even = matches!(parity, OmegaParity::Even);
    let mut out = Vec::with_capacity(1usize << (n - 1));
    for mask in 0..(1u64 << n) {
        let plus_ones = n as u32 - mask.count_ones();
        if (plus_ones % 2 == 0) == want_even {
            out.push(
                (0..n)
                    .map(|b| if mask >> b & 1 == 1 { -1 } else { 1 })
                    .collect(),
            );
        }
    }
    Ok(out)
}

/// Orthogonality graph on a list of ±1 vectors (vertices in list order).
pub fn vectors_orthogonality_graph(vectors: &[Vec<i64>]) -> Result<Graph> {
    let n = vectors.len();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let dot: i64 = vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a * b).sum();
            if dot == 0 {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Componentwise sum of a hypercube parity class; zero for n ≥ 3.
pub fn omega_vector_sum(n: usize, parity: OmegaParity) -> Result<Vec<i64>> {
    let vectors = omega_vectors(n, parity)?;
    let mut sum = vec![0i64; n];
    for v in vectors {
        for (s, c) in sum.iter_mut().zip(v) {
            *s += c;
        }
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Frame identity
// ---------------------------------------------------------------------------

/// Checks Σ|v⟩⟨v| = c·I over normalized rays; returns the frame constant c.
///
/// A frame constant strictly above the independence number of the
/// orthogonality graph certifies state-independent contextuality of the set.
pub fn sic_frame_check(vs: &VectorSet) -> (bool, Option<BigRational>) {
    let d = vs.dimension;
    // accumulate Σ vv†/‖v‖² exactly, as rationals over a common denominator
    let mut acc: Vec<BigRational> =
        vec![BigRational::from_integer(BigInt::from(0)); d * d * 2];
    for ray in &vs.rays {
        let ns = BigInt::from(ray.norm_sq());
        for r in 0..d {
            for c in 0..d {
                let z = ray.components()[r] * ray.components()[c].conj();
                if z.re != 0 {
                    acc[(r * d + c) * 2] += BigRational::new(BigInt::from(z.re), ns.clone());
                }
                if z.im != 0 {
                    acc[(r * d + c) * 2 + 1] += BigRational::new(BigInt::from(z.im), ns.clone());
                }
            }
        }
    }
    let zero = BigRational::from_integer(BigInt::from(0));
    let c0 = acc[0].clone();
    for r in 0..d {
        for c in 0..d {
            let re = &acc[(r * d + c) * 2];
            let im = &acc[(r * d + c) * 2 + 1];
            if im != &zero {
                return (false, None);
            }
            if r == c && re != &c0 {
                return (false, None);
            }
            if r != c && re != &zero {
                return (false, None);
            }
        }
    }
    (true, Some(c0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_canonical_phase_idempotent() {
        let r1 = Ray::new(vec![GaussInt::new(0, -2), GaussInt::new(2, 0)]).unwrap();
        let r2 = Ray::new(vec![GaussInt::new(2, 0), GaussInt::new(0, 2)]).unwrap();
        // (0,-2i; 2) ~ multiply by i -> (2, 2i) -> content 2 -> (1, i)
        assert_eq!(r1, r2);
        let again = Ray::new(r1.components().to_vec()).unwrap();
        assert_eq!(r1, again);
    }

    #[test]
    fn ray_sign_dedup() {
        let a = Ray::from_ints(&[1, -1, 1, 1]).unwrap();
        let b = Ray::from_ints(&[-1, 1, -1, -1]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn newman_small_counts() {
        let n4 = newman_states(4).unwrap();
        assert_eq!(n4.len(), 4);
        let expected: Vec<Ray> = [
            [1, 1, 1, 1],
            [1, 1, -1, -1],
            [1, -1, 1, -1],
            [1, -1, -1, 1],
        ]
        .iter()
        .map(|v| Ray::from_ints(&v.map(|x| x as i64)).unwrap())
        .collect();
        for e in &expected {
            assert!(n4.rays.contains(e));
        }
        assert_eq!(newman_states(8).unwrap().len(), 64);
        assert!(newman_states(6).is_err());
        assert!(newman_states_with_limit(20, 16).is_err());
    }

    #[test]
    fn newman4_graph_is_k4() {
        let n4 = newman_states(4).unwrap();
        let g = n4.orthogonality_graph(0.0).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn pauli2_counts() {
        let real = pauli_states(2, Field::Real).unwrap();
        assert_eq!(real.len(), 24);
        assert_eq!(real.dimension, 4);
        let complex = pauli_states(2, Field::Complex).unwrap();
        assert_eq!(complex.len(), 60); // L·d = 15·4
    }

    #[test]
    fn pauli2_graph_shape() {
        let real = pauli_states(2, Field::Real).unwrap();
        let g = real.orthogonality_graph(0.0).unwrap();
        assert_eq!(g.vertex_count(), 24);
        assert_eq!(g.edge_count(), 108);
        assert_eq!(g.is_regular(), Some(9));
        assert!(verify_orthonormal_representation(&real, &g).unwrap());
    }

    #[test]
    fn pauli3_count() {
        let real = pauli_states(3, Field::Real).unwrap();
        assert_eq!(real.len(), 240);
    }

    #[test]
    fn lagrangian_counts() {
        assert_eq!(enumerate_lagrangians(2).len(), 15);
        assert_eq!(enumerate_lagrangians(3).len(), 135);
    }

    #[test]
    fn frame_identity_single_basis() {
        // computational basis of dimension 3: frame constant 1
        let rays = vec![
            Ray::from_ints(&[1, 0, 0]).unwrap(),
            Ray::from_ints(&[0, 1, 0]).unwrap(),
            Ray::from_ints(&[0, 0, 1]).unwrap(),
        ];
        let vs = VectorSet::new(3, FamilyTag::User, rays).unwrap();
        let (ok, c) = sic_frame_check(&vs);
        assert!(ok);
        assert_eq!(c.unwrap(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn frame_identity_newman12() {
        let n12 = newman_states(12).unwrap();
        let (ok, c) = sic_frame_check(&n12);
        assert!(ok);
        assert_eq!(
            c.unwrap(),
            BigRational::new(BigInt::from(1024), BigInt::from(12))
        );
    }

    #[test]
    fn omega_sums_vanish() {
        for parity in [OmegaParity::Even, OmegaParity::Odd] {
            assert_eq!(omega_vector_sum(5, parity).unwrap(), vec![0; 5]);
            assert_eq!(omega_vector_sum(8, parity).unwrap(), vec![0; 8]);
        }
    }

    #[test]
    fn vector_set_json_round_trip() {
        let vs = newman_states(4).unwrap();
        let text = vs.to_json();
        let back = VectorSet::from_json(&text).unwrap();
        assert_eq!(back.len(), 4);
        assert_eq!(back.dimension, 4);
        assert_eq!(back.rays, vs.rays);
    }

    #[test]
    fn orthogonality_rejects_mixed_dims() {
        let rays = vec![
            Ray::from_ints(&[1, 0]).unwrap(),
            Ray::from_ints(&[1, 0, 0]).unwrap(),
        ];
        assert!(VectorSet::new(2, FamilyTag::User, rays).is_err());
    }
}
