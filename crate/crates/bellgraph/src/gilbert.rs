//! Symmetry-reduced Gilbert distance algorithm over the local polytope:
//! assignment-class enumeration, the class-scanning oracle, the projected
//! iteration, separating-inequality extraction, and exact-rational LP
//! certification of critical values.
//!
//! The working coordinates are flat Collins-Gisin vectors of length
//! (m+1)²: corner, Alice marginals, Bob marginals, then joints row-major
//! over (alice, bob). The iteration runs in f64; extraction and
//! certification return to exact rationals.

use crate::bell::{BellFunctional, CorrelationPoint, LocalBound};
use crate::perm::{PermutationGroup, UnionFind};
use crate::simplex::{self, Constraint};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

// ---------------------------------------------------------------------------
// Assignment classes
// ---------------------------------------------------------------------------

/// One equivalence class of deterministic single-party assignments under the
/// setting-permutation group: its minimum-image representative and size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassRep {
    pub mask: u32,
    pub size: u64,
}

/// Layer-by-layer enumeration of assignment classes: starting from the
/// all-zeros assignment, every representative with k ones is promoted by each
/// single bit, reduced to its minimum image under the group, and deduplicated;
/// the layers exhaust all weights.
///
/// The minimum image is exact (full orbit walk, memoized across the run), so
/// the class count is the true orbit count of the group action on 2^m masks.
pub fn enumerate_classes(m: usize, group: &PermutationGroup) -> Result<Vec<ClassRep>> {
    if m != group.degree() {
        return Err(Error::ClassEnumerationInfeasible(format!(
            "group degree {} != settings {m}",
            group.degree()
        )));
    }
    if m > 24 {
        return Err(Error::ClassEnumerationInfeasible(format!(
            "m = {m} settings: the 2^m canonical-form cache would not fit desk memory"
        )));
    }
    let size = 1usize << m;
    let tables = mask_tables(m, group);

    const UNSET: u32 = u32::MAX;
    let mut canon: Vec<u32> = vec![UNSET, 0]; // placeholder, replaced below
    canon.clear();
    canon.resize(size, UNSET);
    let mut orbit_sizes: HashMap<u32, u64> = HashMap::new();

    let mut canonical = |mask: u32,
                         canon: &mut Vec<u32>,
                         orbit_sizes: &mut HashMap<u32, u64>|
     -> u32 {
        if canon[mask as usize] != UNSET {
            return canon[mask as usize];
        }
        // walk the whole orbit
        let mut members = vec![mask];
        canon[mask as usize] = mask; // temporary visited marker
        let mut head = 0;
        let mut min = mask;
        while head < members.len() {
            let cur = members[head];
            head += 1;
            for t in &tables {
                let img = apply_table(t, cur);
                if canon[img as usize] == UNSET {
                    canon[img as usize] = img;
                    members.push(img);
                    if img < min {
                        min = img;
                    }
                }
            }
        }
        for &mem in &members {
            canon[mem as usize] = min;
        }
        orbit_sizes.insert(min, members.len() as u64);
        min
    };

    let mut classes: Vec<ClassRep> = Vec::new();
    let mut layer: Vec<u32> = vec![canonical(0, &mut canon, &mut orbit_sizes)];
    classes.push(ClassRep {
        mask: 0,
        size: orbit_sizes[&0],
    });
    for _weight in 0..m {
        let mut next: Vec<u32> = Vec::new();
        for &rep in &layer {
            for bit in 0..m {
                if rep >> bit & 1 == 0 {
                    let promoted = rep | 1 << bit;
                    let c = canonical(promoted, &mut canon, &mut orbit_sizes);
                    next.push(c);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        for &rep in &next {
            classes.push(ClassRep {
                mask: rep,
                size: orbit_sizes[&rep],
            });
        }
        layer = next;
    }
    classes.sort_by_key(|c| (c.mask.count_ones(), c.mask));
    debug_assert_eq!(
        classes.iter().map(|c| c.size as u128).sum::<u128>(),
        1u128 << m
    );
    Ok(classes)
}

/// Byte-indexed permutation tables: applying a permutation to a mask is three
/// lookups and two ors.
fn mask_tables(m: usize, group: &PermutationGroup) -> Vec<[Vec<u32>; 3]> {
    group
        .generators()
        .iter()
        .map(|g| {
            let images: Vec<usize> = g.images().collect();
            let mut t = [vec![0u32; 256], vec![0u32; 256], vec![0u32; 256]];
            for (byte, table) in t.iter_mut().enumerate() {
                for v in 0..256usize {
                    let mut img = 0u32;
                    for bit in 0..8 {
                        let src = byte * 8 + bit;
                        if src < m && v >> bit & 1 == 1 {
                            img |= 1 << images[src];
                        }
                    }
                    table[v] = img;
                }
            }
            t
        })
        .collect()
}

#[inline]
fn apply_table(t: &[Vec<u32>; 3], mask: u32) -> u32 {
    t[0][(mask & 255) as usize]
        | t[1][(mask >> 8 & 255) as usize]
        | t[2][(mask >> 16 & 255) as usize]
}

// ---------------------------------------------------------------------------
// Coordinate orbits and symmetrization
// ---------------------------------------------------------------------------

/// Orbit partition of the (m+1)² CG coordinates under the setting group and
/// optionally the party swap. Group-averaging a vector is averaging within
/// each orbit, which is the orthogonal projection onto the invariant
/// subspace; no group element is ever materialized.
#[derive(Clone, Debug)]
pub struct CoordOrbits {
    pub m: usize,
    pub orbit_id: Vec<u32>,
    pub orbit_members: Vec<Vec<u32>>,
}

impl CoordOrbits {
    pub fn new(m: usize, group: &PermutationGroup, party_swap: bool) -> Self {
        let coords = (m + 1) * (m + 1);
        let alice = |i: usize| 1 + i;
        let bob = |j: usize| 1 + m + j;
        let joint = |i: usize, j: usize| 1 + 2 * m + i * m + j;
        let mut uf = UnionFind::new(coords);
        for g in group.generators() {
            let im: Vec<usize> = g.images().collect();
            for i in 0..m {
                uf.union(alice(i), alice(im[i]));
                uf.union(bob(i), bob(im[i]));
                for j in 0..m {
                    uf.union(joint(i, j), joint(im[i], im[j]));
                }
            }
        }
        if party_swap {
            for i in 0..m {
                uf.union(alice(i), bob(i));
                for j in 0..m {
                    uf.union(joint(i, j), joint(j, i));
                }
            }
        }
        let parts = uf.partition();
        let mut orbit_id = vec![0u32; coords];
        let mut orbit_members = Vec::with_capacity(parts.len());
        for (oid, part) in parts.into_iter().enumerate() {
            for &c in &part {
                orbit_id[c] = oid as u32;
            }
            orbit_members.push(part.into_iter().map(|c| c as u32).collect());
        }
        CoordOrbits {
            m,
            orbit_id,
            orbit_members,
        }
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_members.len()
    }

    /// Group average in place.
    pub fn symmetrize(&self, v: &mut [f64]) {
        for members in &self.orbit_members {
            let mean =
                members.iter().map(|&c| v[c as usize]).sum::<f64>() / members.len() as f64;
            for &c in members {
                v[c as usize] = mean;
            }
        }
    }

    /// Per-orbit values of a vector that is already orbit-constant.
    pub fn orbit_values_exact(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        let mut out = Vec::with_capacity(self.orbit_members.len());
        for members in &self.orbit_members {
            let first = &v[members[0] as usize];
            for &c in members.iter().skip(1) {
                if &v[c as usize] != first {
                    return Err(Error::ClassEnumerationInfeasible(
                        "point is not invariant under the supplied symmetry group".into(),
                    ));
                }
            }
            out.push(first.clone());
        }
        Ok(out)
    }
}

/// Everything the symmetry-reduced machinery needs about one scenario.
#[derive(Clone, Debug)]
pub struct SymmetryContext {
    pub m: usize,
    pub group: PermutationGroup,
    pub party_swap: bool,
    pub classes: Vec<ClassRep>,
    pub orbits: CoordOrbits,
}

impl SymmetryContext {
    pub fn new(group: PermutationGroup, party_swap: bool) -> Result<Self> {
        let m = group.degree();
        let classes = enumerate_classes(m, &group)?;
        let total: u128 = classes.iter().map(|c| c.size as u128).sum();
        if total != 1u128 << m {
            return Err(Error::ClassEnumerationInfeasible(format!(
                "class sizes sum to {total}, expected 2^{m}"
            )));
        }
        let orbits = CoordOrbits::new(m, &group, party_swap);
        Ok(SymmetryContext {
            m,
            group,
            party_swap,
            classes,
            orbits,
        })
    }

    pub fn class_masks(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c.mask).collect()
    }

    /// Stable fingerprint of the group for run manifests.
    pub fn group_fingerprint(&self) -> String {
        let text = self.group.to_text();
        // FNV-1a, 64 bit
        let mut hash: u64 = 0xcbf29ce484222325;
        for b in text.bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
        format!("deg{}-gens{}-{hash:016x}", self.group.degree(), self.group.generators().len())
    }
}

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

/// The local vertex maximizing ⟨direction, vertex⟩, found by scanning one
/// Alice representative per class; Bob's optimal bits follow from the signs
/// of the accumulated column coefficients. Valid whenever the direction is
/// invariant under the class group.
pub fn oracle(direction: &[f64], ctx: &SymmetryContext) -> OracleResult {
    let m = ctx.m;
    debug_assert_eq!(direction.len(), (m + 1) * (m + 1));
    let best = ctx
        .classes
        .par_iter()
        .map(|rep| {
            let (value, bob) = alice_mask_value(direction, m, rep.mask);
            (value, rep.mask, bob)
        })
        .reduce(
            || (f64::NEG_INFINITY, u32::MAX, 0u32),
            |a, b| {
                if (b.0, std::cmp::Reverse(b.1)) > (a.0, std::cmp::Reverse(a.1)) {
                    b
                } else {
                    a
                }
            },
        );
    OracleResult {
        value: best.0,
        alice: best.1,
        bob: best.2,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OracleResult {
    pub value: f64,
    pub alice: u32,
    pub bob: u32,
}

fn alice_mask_value(direction: &[f64], m: usize, mask: u32) -> (f64, u32) {
    let mut value = direction[0];
    for i in 0..m {
        if mask >> i & 1 == 1 {
            value += direction[1 + i];
        }
    }
    let joints = &direction[1 + 2 * m..];
    let mut bob = 0u32;
    for j in 0..m {
        let mut col = direction[1 + m + j];
        for i in 0..m {
            if mask >> i & 1 == 1 {
                col += joints[i * m + j];
            }
        }
        if col > 0.0 {
            value += col;
            bob |= 1 << j;
        }
    }
    (value, bob)
}

/// CG vector of the deterministic vertex (a, b).
pub fn vertex_cg(m: usize, alice: u32, bob: u32) -> Vec<f64> {
    let mut v = vec![0.0; (m + 1) * (m + 1)];
    v[0] = 1.0;
    for i in 0..m {
        if alice >> i & 1 == 1 {
            v[1 + i] = 1.0;
        }
    }
    for j in 0..m {
        if bob >> j & 1 == 1 {
            v[1 + m + j] = 1.0;
        }
    }
    for i in 0..m {
        for j in 0..m {
            if alice >> i & 1 == 1 && bob >> j & 1 == 1 {
                v[1 + 2 * m + i * m + j] = 1.0;
            }
        }
    }
    v
}

pub fn point_to_f64(p: &CorrelationPoint) -> Vec<f64> {
    p.to_cg_vector()
        .iter()
        .map(|r| r.to_f64().unwrap_or(f64::NAN))
        .collect()
}

// ---------------------------------------------------------------------------
// Gilbert iteration
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct GilbertConfig {
    pub max_iter: u64,
    /// stop when the distance improves by less than this
    pub tol: f64,
}

impl Default for GilbertConfig {
    fn default() -> Self {
        GilbertConfig {
            max_iter: 1_000_000,
            tol: 1e-10,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IterationState {
    /// current local point in CG coordinates
    pub s: Vec<f64>,
    pub distance: f64,
    pub iterations: u64,
    pub converged: bool,
    /// diagnostics for the property checks
    pub monotone: bool,
    pub lambda_in_range: bool,
    pub symmetrization_contractive: bool,
}

/// Runs the symmetrized iteration from the all-zeros vertex: oracle step,
/// optimal convex combination, then group average. The group average never
/// increases the distance because the target is group-invariant.
pub fn gilbert_run(q: &[f64], ctx: &SymmetryContext, cfg: &GilbertConfig) -> IterationState {
    let mut s = vertex_cg(ctx.m, 0, 0);
    ctx.orbits.symmetrize(&mut s);
    let mut distance = dist(q, &s);
    let mut state = IterationState {
        s,
        distance,
        iterations: 0,
        converged: false,
        monotone: true,
        lambda_in_range: true,
        symmetrization_contractive: true,
    };
    for iter in 0..cfg.max_iter {
        state.iterations = iter + 1;
        let dir: Vec<f64> = q.iter().zip(&state.s).map(|(a, b)| a - b).collect();
        let o = oracle(&dir, ctx);
        let vertex = vertex_cg(ctx.m, o.alice, o.bob);
        let step: Vec<f64> = vertex.iter().zip(&state.s).map(|(v, s)| v - s).collect();
        let den: f64 = step.iter().map(|x| x * x).sum();
        if den == 0.0 {
            state.converged = true;
            break;
        }
        let num: f64 = dir.iter().zip(&step).map(|(a, b)| a * b).sum();
        let lambda = (num / den).clamp(0.0, 1.0);
        if !(0.0..=1.0).contains(&lambda) {
            state.lambda_in_range = false;
        }
        for (sv, st) in state.s.iter_mut().zip(&step) {
            *sv += lambda * st;
        }
        let before_sym = dist(q, &state.s);
        ctx.orbits.symmetrize(&mut state.s);
        let after_sym = dist(q, &state.s);
        if after_sym > before_sym + 1e-9 {
            state.symmetrization_contractive = false;
        }
        if after_sym > distance + 1e-9 {
            state.monotone = false;
        }
        let improvement = distance - after_sym;
        distance = after_sym;
        state.distance = distance;
        if improvement.abs() < cfg.tol {
            state.converged = true;
            break;
        }
    }
    state
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

// ---------------------------------------------------------------------------
// Inequality extraction
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct SeparatingInequality {
    pub functional: BellFunctional,
    pub local_bound: BigRational,
    /// functional value at the target minus the local bound; positive means
    /// the rounded inequality still separates
    pub margin: BigRational,
    pub iterations: u64,
    pub final_distance: f64,
    pub denominator_cap: u64,
}

/// Turns the final Gilbert direction `q − s` into a rational Bell functional:
/// per-orbit continued-fraction rounding with an escalating denominator cap,
/// integer rescaling, and re-certification of the local bound over the
/// classes. Fails only if no cap (nor the unrounded direction) separates.
pub fn extract_inequality(
    q_point: &CorrelationPoint,
    state: &IterationState,
    ctx: &SymmetryContext,
) -> Result<SeparatingInequality> {
    let q = point_to_f64(q_point);
    let dir: Vec<f64> = q.iter().zip(&state.s).map(|(a, b)| a - b).collect();
    // per-orbit means (the iterate is group-invariant up to float noise)
    let mut orbit_vals: Vec<f64> = Vec::with_capacity(ctx.orbits.orbit_count());
    for members in &ctx.orbits.orbit_members {
        orbit_vals
            .push(members.iter().map(|&c| dir[c as usize]).sum::<f64>() / members.len() as f64);
    }
    let scale = orbit_vals
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return Err(Error::Lp("zero direction: target is local".into()));
    }

    let masks = ctx.class_masks();
    for cap in [64u64, 256, 1024, 4096] {
        let rounded: Vec<BigRational> = orbit_vals
            .iter()
            .map(|v| continued_fraction_round(v / scale, cap))
            .collect();
        if let Some(sep) = certify_direction(&rounded, q_point, ctx, &masks, state, cap) {
            return Ok(sep);
        }
    }
    // last resort: exact conversion of the float direction
    let unrounded: Vec<BigRational> = orbit_vals
        .iter()
        .map(|v| BigRational::from_float(v / scale).unwrap_or_else(BigRational::zero))
        .collect();
    certify_direction(&unrounded, q_point, ctx, &masks, state, 0).ok_or_else(|| {
        Error::Lp("extracted direction does not separate, even unrounded".into())
    })
}

fn certify_direction(
    orbit_vals: &[BigRational],
    q_point: &CorrelationPoint,
    ctx: &SymmetryContext,
    masks: &[u32],
    state: &IterationState,
    cap: u64,
) -> Option<SeparatingInequality> {
    // integer rescale: divide by gcd-of-denominators equivalent (multiply by lcm)
    let mut lcm = BigInt::one();
    for v in orbit_vals {
        lcm = num_integer::Integer::lcm(&lcm, v.denom());
    }
    let ints: Vec<BigRational> = orbit_vals
        .iter()
        .map(|v| v * BigRational::from_integer(lcm.clone()))
        .collect();
    let functional = functional_from_orbit_values(ctx, &ints);
    let bound = functional.local_bound_classes(masks);
    let margin = functional.value_at(q_point) - &bound.value;
    if margin.is_positive() {
        Some(SeparatingInequality {
            functional,
            local_bound: bound.value,
            margin,
            iterations: state.iterations,
            final_distance: state.distance,
            denominator_cap: cap,
        })
    } else {
        None
    }
}

/// Builds a functional from per-orbit coefficient values (corner forced to 0).
pub fn functional_from_orbit_values(
    ctx: &SymmetryContext,
    orbit_vals: &[BigRational],
) -> BellFunctional {
    let m = ctx.m;
    let mut f = BellFunctional::zero(m);
    for (oid, members) in ctx.orbits.orbit_members.iter().enumerate() {
        for &c in members {
            let c = c as usize;
            let v = orbit_vals[oid].clone();
            if c == 0 {
                // corner of a separating direction is zero by construction
            } else if c <= m {
                f.alice_marg[c - 1] = v;
            } else if c <= 2 * m {
                f.bob_marg[c - 1 - m] = v;
            } else {
                let idx = c - 1 - 2 * m;
                f.joint[idx / m][idx % m] = v;
            }
        }
    }
    f
}

/// Nearest rational with denominator at most `cap` (continued fractions).
pub fn continued_fraction_round(x: f64, cap: u64) -> BigRational {
    if !x.is_finite() {
        return BigRational::zero();
    }
    let negative = x < 0.0;
    let mut x = x.abs();
    // convergents p/q
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = x.floor() as i128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > cap as i128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = x - a as f64;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    if q1 == 0 {
        return BigRational::zero();
    }
    let r = BigRational::new(BigInt::from(p1), BigInt::from(q1));
    if negative {
        -r
    } else {
        r
    }
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Certificate {
    /// deterministic pairs (a, b) attaining the local bound
    pub optimal_pair_count: u128,
    /// distinct symmetrized deterministic matrices among them
    pub class_matrix_count: usize,
    /// whether the target point is a convex combination of those matrices
    pub feasible: bool,
    /// hull weights (index into the deduplicated matrix list) when feasible
    pub weights: Vec<(usize, BigRational)>,
}

/// Collects every deterministic pair achieving the local bound of `f`,
/// symmetrizes them (as per-coordinate-orbit averages, represented exactly by
/// per-orbit counts), deduplicates, and solves the exact LP asking whether
/// the degraded quantum point lies in their convex hull.
///
/// Feasibility at exactly the critical visibility or efficiency certifies
/// that the critical value cannot be improved for these correlations.
pub fn certify_lp(
    q_degraded: &CorrelationPoint,
    f: &BellFunctional,
    ctx: &SymmetryContext,
    tie_budget: u32,
) -> Result<Certificate> {
    let m = ctx.m;
    let masks = ctx.class_masks();
    let bound = f.local_bound_classes(&masks);

    // per-class optimal-pair survey, exact integer arithmetic
    let scaled = ScaledForCertify::new(f);
    let c_scaled = scaled.value_of(&bound.value);
    let surveys: Vec<ClassSurvey> = ctx
        .classes
        .par_iter()
        .filter_map(|rep| scaled.survey(rep, c_scaled, m))
        .collect();

    let mut pair_count: u128 = 0;
    for s in &surveys {
        if s.tie_cols.len() as u32 > tie_budget {
            return Err(Error::ClassEnumerationInfeasible(format!(
                "{} tied columns exceed the expansion budget",
                s.tie_cols.len()
            )));
        }
        pair_count += (s.class_size as u128) << s.tie_cols.len();
    }

    // deduplicate symmetrized matrices by per-orbit counts
    let mut by_fingerprint: HashMap<Vec<u32>, (u32, u32)> = HashMap::new();
    for s in &surveys {
        for tie_subset in 0..(1u32 << s.tie_cols.len()) {
            let mut bob = s.forced_bob;
            for (k, &col) in s.tie_cols.iter().enumerate() {
                if tie_subset >> k & 1 == 1 {
                    bob |= 1 << col;
                }
            }
            let fp = orbit_counts(ctx, s.alice, bob);
            by_fingerprint.entry(fp).or_insert((s.alice, bob));
        }
    }
    let matrices: Vec<Vec<u32>> = {
        let mut keys: Vec<Vec<u32>> = by_fingerprint.keys().cloned().collect();
        keys.sort();
        keys
    };

    // hull LP in orbit coordinates: Σ λ_k · count_k[o] = q_o · |orbit o|
    let q_orbit = ctx.orbits.orbit_values_exact(&q_degraded.to_cg_vector())?;
    let vars = matrices.len();
    let mut constraints = Vec::with_capacity(q_orbit.len() + 1);
    for (o, q_o) in q_orbit.iter().enumerate() {
        let coeffs: Vec<BigRational> = matrices
            .iter()
            .map(|counts| BigRational::from_integer(BigInt::from(counts[o])))
            .collect();
        let rhs = q_o * BigRational::from_integer(BigInt::from(ctx.orbits.orbit_members[o].len()));
        constraints.push(Constraint::eq(coeffs, rhs));
    }
    constraints.push(Constraint::eq(
        vec![BigRational::one(); vars],
        BigRational::one(),
    ));
    let solution = simplex::feasible_point(vars, &constraints)?;
    let (feasible, weights) = match solution {
        Some(sol) => (
            true,
            sol.into_iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .collect(),
        ),
        None => (false, Vec::new()),
    };
    Ok(Certificate {
        optimal_pair_count: pair_count,
        class_matrix_count: matrices.len(),
        feasible,
        weights,
    })
}

struct ClassSurvey {
    alice: u32,
    forced_bob: u32,
    tie_cols: Vec<u8>,
    class_size: u64,
}

struct ScaledForCertify {
    m: usize,
    denom: BigInt,
    corner: i128,
    alice_marg: Vec<i128>,
    bob_marg: Vec<i128>,
    joint: Vec<Vec<i128>>,
}

impl ScaledForCertify {
    fn new(f: &BellFunctional) -> Self {
        let mut denom = BigInt::one();
        let mut fold = |r: &BigRational| denom = num_integer::Integer::lcm(&denom, r.denom());
        fold(&f.corner);
        f.alice_marg.iter().for_each(&mut fold);
        f.bob_marg.iter().for_each(&mut fold);
        f.joint.iter().flatten().for_each(&mut fold);
        let scale = denom.clone();
        let to_int = move |r: &BigRational| -> i128 {
            (r * BigRational::from_integer(scale.clone()))
                .to_integer()
                .to_i128()
                .expect("scaled coefficient fits in i128")
        };
        ScaledForCertify {
            m: f.m,
            denom,
            corner: to_int(&f.corner),
            alice_marg: f.alice_marg.iter().map(&to_int).collect(),
            bob_marg: f.bob_marg.iter().map(&to_int).collect(),
            joint: f
                .joint
                .iter()
                .map(|row| row.iter().map(&to_int).collect())
                .collect(),
        }
    }

    fn value_of(&self, r: &BigRational) -> i128 {
        (r * BigRational::from_integer(self.denom.clone()))
            .to_integer()
            .to_i128()
            .expect("bound fits in i128")
    }

    /// For one Alice class representative: the maximum value, forced Bob
    /// bits (strictly positive columns), and zero columns (free ties) —
    /// kept only when the maximum attains the bound.
    fn survey(&self, rep: &ClassRep, c_scaled: i128, m: usize) -> Option<ClassSurvey> {
        let mask = rep.mask;
        let mut value = self.corner;
        for i in 0..m {
            if mask >> i & 1 == 1 {
                value += self.alice_marg[i];
            }
        }
        let mut forced = 0u32;
        let mut ties = Vec::new();
        for j in 0..m {
            let mut col = self.bob_marg[j];
            for i in 0..m {
                if mask >> i & 1 == 1 {
                    col += self.joint[i][j];
                }
            }
            if col > 0 {
                value += col;
                forced |= 1 << j;
            } else if col == 0 {
                ties.push(j as u8);
            }
        }
        (value == c_scaled).then_some(ClassSurvey {
            alice: mask,
            forced_bob: forced,
            tie_cols: ties,
            class_size: rep.size,
        })
    }
}

/// Per-orbit counts of 1-entries of the deterministic CG matrix of (a, b);
/// dividing by the orbit sizes gives the symmetrized matrix exactly.
fn orbit_counts(ctx: &SymmetryContext, alice: u32, bob: u32) -> Vec<u32> {
    let m = ctx.m;
    let mut counts = vec![0u32; ctx.orbits.orbit_count()];
    counts[ctx.orbits.orbit_id[0] as usize] += 1; // corner
    for i in 0..m {
        if alice >> i & 1 == 1 {
            counts[ctx.orbits.orbit_id[1 + i] as usize] += 1;
        }
        if bob >> i & 1 == 1 {
            counts[ctx.orbits.orbit_id[1 + m + i] as usize] += 1;
        }
    }
    for i in 0..m {
        if alice >> i & 1 == 0 {
            continue;
        }
        for j in 0..m {
            if bob >> j & 1 == 1 {
                counts[ctx.orbits.orbit_id[1 + 2 * m + i * m + j] as usize] += 1;
            }
        }
    }
    counts
}

// ---------------------------------------------------------------------------
// Invariant-subspace grid scan (alternative to the iteration)
// ---------------------------------------------------------------------------

/// Scans symmetric functionals directly: every free orbit coefficient ranges
/// over `grid`, pinned orbits stay at zero; returns the separating functional
/// with the smallest critical efficiency, if any separates.
pub fn scan_symmetric_grid(
    q_point: &CorrelationPoint,
    ctx: &SymmetryContext,
    grid: &[BigRational],
    pinned_zero: &[usize],
) -> Result<Option<SeparatingInequality>> {
    let masks = ctx.class_masks();
    let orbit_count = ctx.orbits.orbit_count();
    let free: Vec<usize> = (1..orbit_count) // orbit of the corner coordinate stays zero
        .filter(|o| !pinned_zero.contains(o))
        .collect();
    let combos = (grid.len() as u128).checked_pow(free.len() as u32);
    match combos {
        Some(c) if c <= 1_000_000 => {}
        _ => {
            return Err(Error::ClassEnumerationInfeasible(format!(
                "grid scan over {} free orbits is too large",
                free.len()
            )))
        }
    }
    let mut best: Option<(f64, SeparatingInequality)> = None;
    let mut idx = vec![0usize; free.len()];
    loop {
        let mut vals = vec![BigRational::zero(); orbit_count];
        for (k, &o) in free.iter().enumerate() {
            vals[o] = grid[idx[k]].clone();
        }
        let f = functional_from_orbit_values(ctx, &vals);
        let bound = f.local_bound_classes(&masks);
        let margin = f.value_at(q_point) - &bound.value;
        if margin.is_positive() {
            let report =
                crate::bell::efficiency_report(&f, &bound.value, q_point, None);
            if let Some(eta) = report.eta_crit.as_ref().map(|e| e.to_f64()) {
                if best.as_ref().map_or(true, |(e, _)| eta < *e) {
                    best = Some((
                        eta,
                        SeparatingInequality {
                            functional: f,
                            local_bound: bound.value,
                            margin,
                            iterations: 0,
                            final_distance: f64::NAN,
                            denominator_cap: 0,
                        },
                    ));
                }
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(best.map(|(_, s)| s));
            }
            idx[k] += 1;
            if idx[k] < grid.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Run manifest / result JSON
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct RunManifest {
    pub q_source: String,
    pub group_fingerprint: String,
    pub party_swap: bool,
    pub classes: usize,
    pub tol: f64,
    pub max_iter: u64,
    pub seed: Option<u64>,
}

#[derive(Serialize, Deserialize)]
pub struct GilbertResultJson {
    pub manifest: RunManifest,
    pub iterations: u64,
    pub final_distance: f64,
    pub converged: bool,
    pub functional: serde_json::Value,
    pub local_bound: String,
    pub margin: String,
    pub report: serde_json::Value,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::{efficiency_report, graph_bell_functional};
    use crate::graph::Graph;
    use crate::perm::Permutation;
    use crate::simplex::{integer, rational};
    use rand::{Rng, SeedableRng};

    fn s5_group() -> PermutationGroup {
        PermutationGroup::new(
            5,
            vec![
                Permutation::from_images(vec![1, 0, 2, 3, 4]).unwrap(),
                Permutation::from_images(vec![1, 2, 3, 4, 0]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn classes_trivial_group() {
        let classes = enumerate_classes(3, &PermutationGroup::trivial(3)).unwrap();
        assert_eq!(classes.len(), 8);
        assert!(classes.iter().all(|c| c.size == 1));
    }

    #[test]
    fn classes_full_symmetric_group() {
        let classes = enumerate_classes(5, &s5_group()).unwrap();
        assert_eq!(classes.len(), 6); // one orbit per popcount
        let total: u64 = classes.iter().map(|c| c.size).sum();
        assert_eq!(total, 32);
        let sizes: Vec<u64> = classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 5, 10, 10, 5, 1]);
    }

    #[test]
    fn classes_circulant_sum() {
        let g = Graph::circulant(10, &[2, 3]).unwrap();
        let group = crate::aut::automorphism_group(&g).unwrap();
        let classes = enumerate_classes(10, &group).unwrap();
        let total: u128 = classes.iter().map(|c| c.size as u128).sum();
        assert_eq!(total, 1 << 10);
    }

    fn c5_context() -> SymmetryContext {
        let c5 = Graph::circulant(5, &[1]).unwrap();
        let group = crate::aut::automorphism_group(&c5).unwrap();
        SymmetryContext::new(group, true).unwrap()
    }

    #[test]
    fn oracle_matches_local_bound() {
        let ctx = c5_context();
        let c5 = Graph::circulant(5, &[1]).unwrap();
        let f = graph_bell_functional(&c5, 1);
        let brute = f.local_bound_brute().unwrap();
        // direction = the functional's own coefficients
        let mut dir = vec![0.0; 36];
        for i in 0..5 {
            for j in 0..5 {
                dir[1 + 10 + i * 5 + j] = f.joint[i][j].to_f64().unwrap();
            }
        }
        let o = oracle(&dir, &ctx);
        assert!((o.value - brute.value.to_f64().unwrap()).abs() < 1e-12);
    }

    #[test]
    fn oracle_dominates_random_vertices() {
        let ctx = c5_context();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            // the class scan is valid for group-invariant directions, which
            // is what the iteration produces
            let mut dir: Vec<f64> = (0..36).map(|_| rng.gen_range(-1.0..1.0)).collect();
            ctx.orbits.symmetrize(&mut dir);
            let o = oracle(&dir, &ctx);
            for _ in 0..200 {
                let a: u32 = rng.gen_range(0..32);
                let b: u32 = rng.gen_range(0..32);
                let v = vertex_cg(5, a, b);
                let val: f64 = v.iter().zip(&dir).map(|(x, d)| x * d).sum();
                assert!(val <= o.value + 1e-9);
            }
        }
    }

    #[test]
    fn all_negative_direction_gives_zero_vertex() {
        let ctx = c5_context();
        let mut dir = vec![-1.0; 36];
        dir[0] = 0.0;
        let o = oracle(&dir, &ctx);
        assert_eq!(o.alice, 0);
        assert_eq!(o.bob, 0);
        assert_eq!(o.value, 0.0);
    }

    #[test]
    fn symmetrization_is_contraction() {
        let ctx = c5_context();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            // group-invariant target
            let mut q: Vec<f64> = (0..36).map(|_| rng.gen_range(-1.0..1.0)).collect();
            ctx.orbits.symmetrize(&mut q);
            let s: Vec<f64> = (0..36).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut s_sym = s.clone();
            ctx.orbits.symmetrize(&mut s_sym);
            assert!(dist(&q, &s_sym) <= dist(&q, &s) + 1e-12);
        }
    }

    /// PR-box-shaped two-setting scenario: marginals 1/2, joints 1/2 except
    /// the (1,1) joint at 0. Nonlocal, so the distance stays positive and
    /// extraction must produce a separating inequality.
    fn pr_box_point() -> CorrelationPoint {
        let mut p = CorrelationPoint::maximally_mixed(2, 2);
        p.joint[0][0] = rational(1, 2);
        p.joint[0][1] = rational(1, 2);
        p.joint[1][0] = rational(1, 2);
        p.joint[1][1] = integer(0);
        p
    }

    fn chsh_context() -> SymmetryContext {
        SymmetryContext::new(PermutationGroup::trivial(2), true).unwrap()
    }

    #[test]
    fn gilbert_separates_pr_box() {
        let ctx = chsh_context();
        let q = pr_box_point();
        let qv = point_to_f64(&q);
        let out = gilbert_run(&qv, &ctx, &GilbertConfig::default());
        assert!(out.monotone);
        assert!(out.lambda_in_range);
        assert!(out.symmetrization_contractive);
        assert!(out.distance > 0.05, "PR box is far from local: {}", out.distance);
        let sep = extract_inequality(&q, &out, &ctx).unwrap();
        assert!(sep.margin.is_positive());
        // the rounded inequality is group-invariant (swap-symmetric here)
        assert!(sep.functional.is_swap_symmetric());
    }

    #[test]
    fn gilbert_converges_inside_polytope() {
        let ctx = chsh_context();
        // product point: marginals 1/2, joints 1/4 — local
        let p = CorrelationPoint::maximally_mixed(2, 2);
        let out = gilbert_run(&point_to_f64(&p), &ctx, &GilbertConfig::default());
        assert!(out.distance < 1e-5, "local point: distance {}", out.distance);
    }

    #[test]
    fn certify_chsh_boundary() {
        let ctx = chsh_context();
        // CH functional: −A1 −B1 +A1B1 +A1B2 +A2B1 −A2B2 ≤ 0
        let mut f = BellFunctional::zero(2);
        f.alice_marg[0] = integer(-1);
        f.bob_marg[0] = integer(-1);
        f.joint[0][0] = integer(1);
        f.joint[0][1] = integer(1);
        f.joint[1][0] = integer(1);
        f.joint[1][1] = integer(-1);
        let bound = f.local_bound_brute().unwrap();
        assert_eq!(bound.value, integer(0));

        // brute-force count of optimal pairs over all 16
        let mut optimal = Vec::new();
        for a in 0..4u32 {
            for b in 0..4u32 {
                let v = vertex_cg(2, a, b);
                let fv = [
                    0.0,
                    -1.0 * v[1],
                    0.0,
                    -1.0 * v[3],
                    0.0,
                    v[5] + v[6] + v[7] - v[8],
                ]
                .iter()
                .sum::<f64>();
                if fv == 0.0 {
                    optimal.push((a, b));
                }
            }
        }
        let cert_target = {
            // uniform mixture of the optimal pairs: certainly in their hull
            let mut p = CorrelationPoint::maximally_mixed(2, 2);
            let k = optimal.len() as i64;
            let mut am = [0i64; 2];
            let mut bm = [0i64; 2];
            let mut jm = [[0i64; 2]; 2];
            for &(a, b) in &optimal {
                for i in 0..2 {
                    if a >> i & 1 == 1 {
                        am[i] += 1;
                    }
                    if b >> i & 1 == 1 {
                        bm[i] += 1;
                    }
                    for j in 0..2 {
                        if a >> i & 1 == 1 && b >> j & 1 == 1 {
                            jm[i][j] += 1;
                        }
                    }
                }
            }
            for i in 0..2 {
                p.alice_marg[i] = rational(am[i], k);
                p.bob_marg[i] = rational(bm[i], k);
                for j in 0..2 {
                    p.joint[i][j] = rational(jm[i][j], k);
                }
            }
            p
        };
        let cert = certify_lp(&cert_target, &f, &ctx, 16).unwrap();
        assert_eq!(cert.optimal_pair_count, optimal.len() as u128);
        assert!(cert.feasible);

        // the PR box value is 1/2 > 0: not in the hull of bound-achieving points
        let cert2 = certify_lp(&pr_box_point(), &f, &ctx, 16).unwrap();
        assert!(!cert2.feasible);
    }

    #[test]
    fn efficiency_report_from_extracted_direction() {
        let ctx = chsh_context();
        let q = pr_box_point();
        let out = gilbert_run(&point_to_f64(&q), &ctx, &GilbertConfig::default());
        let sep = extract_inequality(&q, &out, &ctx).unwrap();
        let report = efficiency_report(&sep.functional, &sep.local_bound, &q, None);
        assert!(report.violating());
    }

    #[test]
    fn cf_rounding() {
        assert_eq!(continued_fraction_round(0.5, 64), rational(1, 2));
        assert_eq!(continued_fraction_round(-2.0 / 3.0, 64), rational(-2, 3));
        assert_eq!(continued_fraction_round(0.833333333333, 6), rational(5, 6));
        // idempotent on already-small rationals
        let r = rational(5, 6).to_f64().unwrap();
        assert_eq!(continued_fraction_round(r, 64), rational(5, 6));
        assert_eq!(continued_fraction_round(1e-14, 64), BigRational::zero());
    }
}
