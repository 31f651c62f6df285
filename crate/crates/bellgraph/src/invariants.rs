//! Graph invariants: independence number (plain, weighted, orbit-decomposed),
//! clique number, xi number, fractional packing and chromatic numbers, and
//! the closed-form Newman-graph quantities.
//!
//! Exact values carry witnesses; anything computed under a budget carries an
//! exactness flag instead of failing.

use crate::aut::{automorphism_group_with, AutLimits};
use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::mis::{self, SearchOutcome};
use crate::perm::PermutationGroup;
use crate::simplex::{self, Constraint, LpOutcome};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Budgets for the exact engines.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    /// branch-and-bound node limit
    pub mis_nodes: u64,
    /// a-priori cap on C(|V|, α+1) for the xi scan
    pub xi_subsets: u64,
    /// cap on enumerated maximal cliques / independent sets for the LPs
    pub clique_lists: usize,
    /// threshold below which plain branch-and-bound replaces orbit branching
    pub kappa: usize,
    pub aut: AutLimits,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            mis_nodes: 200_000_000,
            xi_subsets: 50_000_000,
            clique_lists: 200_000,
            kappa: 150,
            aut: AutLimits::default(),
        }
    }
}

// ---------------------------------------------------------------------------
// Independence and clique numbers
// ---------------------------------------------------------------------------

/// Exact maximum independent set via branch and bound, with the orbit
/// decomposition layered on top when a group is supplied and the graph is
/// larger than the `kappa` threshold.
///
/// Orbit branching: pick a vertex `v` in a largest orbit; either some maximum
/// independent set contains `v` (delete its closed neighborhood, count 1) or
/// no maximum independent set meets the orbit at all (delete the orbit).
/// Taking the larger branch value is exact because the second branch is
/// always a valid lower bound.
pub fn independence_number(
    g: &Graph,
    group: Option<&PermutationGroup>,
    budgets: &Budgets,
) -> SearchOutcome {
    match group {
        Some(grp) if g.vertex_count() > budgets.kappa && !grp.is_trivial() => {
            orbit_alpha(g, grp, budgets, 0)
        }
        _ => mis::max_independent_set(g, budgets.mis_nodes),
    }
}

fn orbit_alpha(
    g: &Graph,
    group: &PermutationGroup,
    budgets: &Budgets,
    depth: usize,
) -> SearchOutcome {
    let n = g.vertex_count();
    if n <= budgets.kappa || depth > 64 {
        return mis::max_independent_set(g, budgets.mis_nodes);
    }
    let orbits = group.orbits();
    let orbit = orbits
        .iter()
        .max_by_key(|o| (o.len(), std::cmp::Reverse(o[0])))
        .expect("nonempty graph has orbits");
    let v = orbit[0];

    // branch 1: v in the independent set — drop N[v]
    let mut keep1: Vec<usize> = (0..n)
        .filter(|&u| u != v && !g.is_edge(u, v))
        .collect();
    keep1.sort_unstable();
    let sub1 = g.induced_subgraph(&keep1);
    let r1 = recurse_alpha(&sub1, budgets, depth + 1);

    // branch 2: no maximum independent set meets the orbit — drop it entirely
    let orbit_set: std::collections::HashSet<usize> = orbit.iter().copied().collect();
    let keep2: Vec<usize> = (0..n).filter(|u| !orbit_set.contains(u)).collect();
    let sub2 = g.induced_subgraph(&keep2);
    let r2 = recurse_alpha(&sub2, budgets, depth + 1);

    let exact = r1.exact && r2.exact;
    let nodes = r1.nodes + r2.nodes;
    if 1 + r1.value >= r2.value {
        let mut witness: Vec<usize> = r1.witness.iter().map(|&i| keep1[i]).collect();
        witness.push(v);
        witness.sort_unstable();
        SearchOutcome {
            value: 1 + r1.value,
            witness,
            exact,
            nodes,
        }
    } else {
        let witness: Vec<usize> = r2.witness.iter().map(|&i| keep2[i]).collect();
        SearchOutcome {
            value: r2.value,
            witness,
            exact,
            nodes,
        }
    }
}

fn recurse_alpha(g: &Graph, budgets: &Budgets, depth: usize) -> SearchOutcome {
    if g.vertex_count() <= budgets.kappa {
        return mis::max_independent_set(g, budgets.mis_nodes);
    }
    // the subgraph symmetry must be recomputed; on failure fall back to plain search
    let limits = AutLimits {
        max_vertices: budgets.aut.max_vertices,
        node_budget: budgets.aut.node_budget.min(2_000_000),
    };
    match automorphism_group_with(g, limits) {
        Ok(grp) if !grp.is_trivial() => orbit_alpha(g, &grp, budgets, depth),
        _ => mis::max_independent_set(g, budgets.mis_nodes),
    }
}

/// Exact clique number with witness (α of the complement on the same engine).
pub fn clique_number(g: &Graph, budgets: &Budgets) -> SearchOutcome {
    mis::max_clique(g, budgets.mis_nodes)
}

/// Clique number when an a-priori upper bound is known (for orthogonality
/// graphs the ray dimension caps the clique number, so reaching the cap is a
/// proof of equality).
pub fn clique_number_capped(g: &Graph, cap: u64, budgets: &Budgets) -> SearchOutcome {
    mis::max_clique_capped(g, cap, budgets.mis_nodes)
}

// ---------------------------------------------------------------------------
// Xi number
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct XiOutcome {
    pub value: u32,
    pub exact: bool,
    /// a witness subset attaining the value, when the scan ran
    pub witness: Option<Vec<usize>>,
}

/// Xi number: the minimum over all (α+1)-subsets S of the maximum in-subset
/// degree. Monotone under subset inclusion, so a partial subset whose current
/// maximum already reaches the incumbent is pruned; the scan stops early at
/// the global minimum 1.
///
/// If C(|V|, α+1) exceeds the subset budget the scan is skipped and the
/// certified lower bound 1 is returned with `exact = false` (the safe
/// direction for the Bell-functional edge coefficients).
pub fn xi_number(g: &Graph, alpha: u64, budgets: &Budgets) -> XiOutcome {
    let n = g.vertex_count() as u64;
    let k = alpha + 1;
    if k > n {
        // edgeless graph: no (α+1)-subset exists; xi is undefined, report 1
        return XiOutcome {
            value: 1,
            exact: false,
            witness: None,
        };
    }
    let subsets = binomial_u64_capped(n, k, budgets.xi_subsets.saturating_mul(2));
    if subsets > budgets.xi_subsets {
        return XiOutcome {
            value: 1,
            exact: false,
            witness: None,
        };
    }

    let k = k as usize;
    let mut best = alpha.min(u32::MAX as u64) as u32 + 1; // in-subset degree ≤ α always
    let mut best_witness: Vec<usize> = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut degs: Vec<u32> = Vec::with_capacity(k);
    scan_subsets(
        g,
        k,
        0,
        &mut chosen,
        &mut degs,
        0,
        &mut best,
        &mut best_witness,
    );
    XiOutcome {
        value: best,
        exact: true,
        witness: Some(best_witness),
    }
}

#[allow(clippy::too_many_arguments)]
fn scan_subsets(
    g: &Graph,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    degs: &mut Vec<u32>,
    current_max: u32,
    best: &mut u32,
    best_witness: &mut Vec<usize>,
) -> bool {
    if *best == 1 {
        return true; // global minimum reached
    }
    if chosen.len() == k {
        if current_max < *best {
            *best = current_max;
            *best_witness = chosen.clone();
        }
        return *best == 1;
    }
    let n = g.vertex_count();
    let remaining = k - chosen.len();
    for v in start..=(n - remaining) {
        let mut new_max = current_max;
        let mut deg_v = 0u32;
        for (i, &u) in chosen.iter().enumerate() {
            if g.is_edge(u, v) {
                deg_v += 1;
                new_max = new_max.max(degs[i] + 1);
            }
        }
        new_max = new_max.max(deg_v);
        if new_max >= *best {
            continue; // supersets can only be worse
        }
        chosen.push(v);
        for (i, &u) in chosen.iter().take(chosen.len() - 1).enumerate() {
            if g.is_edge(u, v) {
                degs[i] += 1;
            }
        }
        degs.push(deg_v);
        let done = scan_subsets(g, k, v + 1, chosen, degs, new_max, best, best_witness);
        degs.pop();
        chosen.pop();
        for (i, &u) in chosen.iter().enumerate() {
            if g.is_edge(u, v) {
                degs[i] -= 1;
            }
        }
        if done {
            return true;
        }
    }
    false
}

fn binomial_u64_capped(n: u64, k: u64, cap: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

// ---------------------------------------------------------------------------
// Fractional packing and fractional chromatic numbers
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpMethod {
    /// exact rational LP over the enumerated maximal structures
    ExactLp,
    /// vertex-transitive shortcut |V|/ω (packing) or |V|/α (chromatic)
    VertexTransitive,
}

/// Fractional packing number α*: max Σ p_i over p ≥ 0 with Σ_{i∈C} p_i ≤ 1
/// for every maximal clique C.
pub fn fractional_packing(
    g: &Graph,
    group: Option<&PermutationGroup>,
    budgets: &Budgets,
) -> Result<(BigRational, LpMethod)> {
    if let Ok(cliques) = maximal_cliques(g, budgets.clique_lists) {
        let value = packing_lp(g.vertex_count(), &cliques)?;
        return Ok((value, LpMethod::ExactLp));
    }
    vertex_transitive_packing(g, group, budgets)
}

fn vertex_transitive_packing(
    g: &Graph,
    group: Option<&PermutationGroup>,
    budgets: &Budgets,
) -> Result<(BigRational, LpMethod)> {
    let transitive = match group {
        Some(grp) => grp.orbit_count() <= 1,
        None => crate::aut::is_vertex_transitive(g)?,
    };
    if !transitive {
        return Err(Error::Lp(
            "clique enumeration over budget and graph is not vertex-transitive".into(),
        ));
    }
    let omega = clique_number(g, budgets);
    if !omega.exact {
        return Err(Error::Lp("clique number inexact under budget".into()));
    }
    Ok((
        BigRational::new(BigInt::from(g.vertex_count()), BigInt::from(omega.value)),
        LpMethod::VertexTransitive,
    ))
}

fn packing_lp(n: usize, cliques: &[Vec<usize>]) -> Result<BigRational> {
    let objective = vec![BigRational::one(); n];
    let constraints: Vec<Constraint> = cliques
        .iter()
        .map(|c| {
            let mut row = vec![BigRational::zero(); n];
            for &v in c {
                row[v] = BigRational::one();
            }
            Constraint::le(row, BigRational::one())
        })
        .collect();
    match simplex::maximize(&objective, &constraints)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        other => Err(Error::Lp(format!("packing LP not optimal: {other:?}"))),
    }
}

/// Fractional chromatic number χ_f, as the LP dual form: max Σ x_v subject to
/// Σ_{v∈S} x_v ≤ 1 over every maximal independent set S (equal to the
/// minimum fractional cover by LP duality).
pub fn fractional_chromatic(
    g: &Graph,
    group: Option<&PermutationGroup>,
    budgets: &Budgets,
) -> Result<(BigRational, LpMethod)> {
    if let Ok(sets) = maximal_cliques(&g.complement(), budgets.clique_lists) {
        let value = packing_lp(g.vertex_count(), &sets)?;
        return Ok((value, LpMethod::ExactLp));
    }
    let transitive = match group {
        Some(grp) => grp.orbit_count() <= 1,
        None => crate::aut::is_vertex_transitive(g)?,
    };
    if !transitive {
        return Err(Error::Lp(
            "independent-set enumeration over budget and graph is not vertex-transitive".into(),
        ));
    }
    let alpha = independence_number(g, group, budgets);
    if !alpha.exact {
        return Err(Error::Lp("independence number inexact under budget".into()));
    }
    Ok((
        BigRational::new(BigInt::from(g.vertex_count()), BigInt::from(alpha.value)),
        LpMethod::VertexTransitive,
    ))
}

/// All maximal cliques (Bron–Kerbosch with pivoting); errors out past `cap`.
pub fn maximal_cliques(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut r = Vec::new();
    let p = BitSet::full(n);
    let x = BitSet::new(n);
    bron_kerbosch(g, &mut r, p, x, &mut out, cap)?;
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    p: BitSet,
    x: BitSet,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if p.is_empty() && x.is_empty() {
        if out.len() >= cap {
            return Err(Error::Lp(format!("more than {cap} maximal cliques")));
        }
        let mut clique = r.clone();
        clique.sort_unstable();
        out.push(clique);
        return Ok(());
    }
    // pivot: vertex of P ∪ X with most neighbors in P
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.intersection_count(g.neighbors(u)), std::cmp::Reverse(u)))
        .expect("P or X nonempty");
    let candidates = p.difference(g.neighbors(pivot));
    let mut p = p;
    let mut x = x;
    for v in candidates.iter() {
        let np = p.intersection(g.neighbors(v));
        let nx = x.intersection(g.neighbors(v));
        r.push(v);
        bron_kerbosch(g, r, np, nx, out, cap)?;
        r.pop();
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Weighted independence and the quantum-advantage gap
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct WeightedAlpha {
    pub value: BigRational,
    pub witness: Vec<usize>,
    pub exact: bool,
}

/// Maximum-weight independent set with rational weights (scaled to integers
/// internally).
pub fn weighted_alpha(g: &Graph, weights: &[BigRational], budgets: &Budgets) -> Result<WeightedAlpha> {
    if weights.len() != g.vertex_count() {
        return Err(Error::InvalidGraph("weight length mismatch".into()));
    }
    if weights.iter().any(|w| w.is_negative()) {
        return Err(Error::InvalidGraph("negative vertex weight".into()));
    }
    let mut denom_lcm = BigInt::one();
    for w in weights {
        denom_lcm = denom_lcm.lcm(w.denom());
    }
    let scaled: Vec<u64> = weights
        .iter()
        .map(|w| {
            (w * BigRational::from_integer(denom_lcm.clone()))
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::InvalidGraph("weight too large after scaling".into()))
        })
        .collect::<Result<_>>()?;
    let outcome = mis::max_weight_independent_set(g, &scaled, budgets.mis_nodes);
    Ok(WeightedAlpha {
        value: BigRational::new(BigInt::from(outcome.value), denom_lcm),
        witness: outcome.witness,
        exact: outcome.exact,
    })
}

#[derive(Clone, Debug)]
pub struct WeightedGap {
    pub alpha_w: BigRational,
    pub weight_sum_over_xi: BigRational,
    /// true iff Σw_i/ξ > α(G, w), i.e. the weighted set beats every local model
    pub gap: bool,
    pub exact: bool,
}

/// Checks the weighted quantum-advantage condition Σ w_i / ξ > α(G, w).
pub fn weighted_gap_check(
    g: &Graph,
    weights: &[BigRational],
    xi: u64,
    budgets: &Budgets,
) -> Result<WeightedGap> {
    let alpha = weighted_alpha(g, weights, budgets)?;
    let sum: BigRational = weights.iter().sum();
    let ratio = sum / BigRational::from_integer(BigInt::from(xi));
    Ok(WeightedGap {
        gap: ratio > alpha.value,
        alpha_w: alpha.value,
        weight_sum_over_xi: ratio,
        exact: alpha.exact,
    })
}

// ---------------------------------------------------------------------------
// Newman closed forms
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct NewmanAlpha {
    /// α of the Newman graph Y_n
    pub y_alpha: BigUint,
    /// α of the full hypercube-direction graph Ω_n = 4·α(Y_n)
    pub omega_alpha: BigUint,
    /// true when n is neither 2^k (k ≥ 2) nor 4·p^k for an odd prime p,
    /// where the closed form is only conjectured
    pub conjectural: bool,
}

/// Closed-form independence numbers of the Newman graphs:
/// α(Ω_n) = 4·Σ_{i=0}^{n/4−1} C(n−1, i) and α(Y_n) = α(Ω_n)/4.
pub fn newman_alpha(n: u64) -> Result<NewmanAlpha> {
    if n == 0 || n % 4 != 0 {
        return Err(Error::BadFamilyParameter(format!(
            "Newman formula needs n ≡ 0 (mod 4), got {n}"
        )));
    }
    let mut y_alpha = BigUint::zero();
    for i in 0..(n / 4) {
        y_alpha += binomial_big(n - 1, i);
    }
    let omega_alpha = &y_alpha * BigUint::from(4u32);
    Ok(NewmanAlpha {
        conjectural: !newman_formula_proven(n),
        y_alpha,
        omega_alpha,
    })
}

/// The formula is proven for n = 2^k (k ≥ 2) and n = 4·p^k (p an odd prime).
fn newman_formula_proven(n: u64) -> bool {
    if n >= 4 && n.is_power_of_two() {
        return true;
    }
    let m = n / 4;
    if m < 3 || m % 2 == 0 {
        return false;
    }
    // is m a power of a single odd prime?
    let mut m = m;
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            return m == 1;
        }
        p += 2;
    }
    true // m itself is an odd prime
}

pub fn binomial_big(n: u64, k: u64) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// |V(Y_n)| = 2^{n−2}.
pub fn newman_vertex_count(n: u64) -> BigUint {
    BigUint::from(2u32).pow((n - 2) as u32)
}

/// |E(Y_n)| = 2^{n−4} · C(n, n/2).
pub fn newman_edge_count(n: u64) -> BigUint {
    BigUint::from(2u32).pow((n - 4) as u32) * binomial_big(n, n / 2)
}

/// Critical-efficiency bound for the Newman family:
/// sqrt(α(Y_n) / (2^{n−2}/n)), evaluated exactly before the square root.
pub fn newman_eta_crit(n: u64) -> Result<f64> {
    let alpha = newman_alpha(n)?;
    let ratio = BigRational::new(
        BigInt::from(alpha.y_alpha * BigUint::from(n)),
        BigInt::from(newman_vertex_count(n)),
    );
    Ok(ratio.to_f64().unwrap_or(f64::NAN).sqrt())
}

// ---------------------------------------------------------------------------
// Scan metric over vertex-transitive graph lists
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VtScanRow {
    pub vertices: usize,
    pub min_ratio: f64,
    pub witness_index: usize,
    /// indices of graphs skipped because an invariant timed out
    pub skipped: Vec<usize>,
}

/// For each vertex count in the list, the minimum of sqrt(α / (|V|/ω)) — a
/// lower bound on the critical efficiency achievable from that graph size.
pub fn vt_scan(graphs: &[Graph], budgets: &Budgets) -> Vec<VtScanRow> {
    use std::collections::BTreeMap;
    let mut by_size: BTreeMap<usize, VtScanRow> = BTreeMap::new();
    for (idx, g) in graphs.iter().enumerate() {
        let n = g.vertex_count();
        let row = by_size.entry(n).or_insert(VtScanRow {
            vertices: n,
            min_ratio: f64::INFINITY,
            witness_index: usize::MAX,
            skipped: Vec::new(),
        });
        let alpha = independence_number(g, None, budgets);
        let omega = clique_number(g, budgets);
        if !alpha.exact || !omega.exact {
            row.skipped.push(idx);
            continue;
        }
        let ratio =
            (alpha.value as f64 * omega.value as f64 / n as f64).sqrt();
        if ratio < row.min_ratio {
            row.min_ratio = ratio;
            row.witness_index = idx;
        }
    }
    by_size.into_values().collect()
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

/// Summary of the invariants of one graph. Rationals are rendered as `p/q`
/// strings; `*_exact` flags distinguish exact values from budget-limited
/// bounds. `alpha` and `alpha_star` double as the sandwich bounds for the
/// Lovász number.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariantReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub alpha: u64,
    pub alpha_exact: bool,
    pub omega: u64,
    pub omega_exact: bool,
    pub xi_cap: u32,
    pub xi_cap_exact: bool,
    pub alpha_star: Option<String>,
    pub alpha_star_method: Option<LpMethod>,
    pub chi_fractional: Option<String>,
    pub chi_fractional_method: Option<LpMethod>,
    /// sandwich: ω ≤ ϑ(complement) ≤ ξ ≤ χ; lower edge is ω
    pub xi_rank_lower: u64,
    /// upper bound from a certified orthonormal representation, when known
    pub xi_rank_upper: Option<u64>,
    pub vertex_transitive: Option<bool>,
}

pub fn format_ratio(r: &BigRational) -> String {
    if r.denom() == &BigInt::one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Computes the full report. `representation_dim` is a certified upper bound
/// on the orthogonal rank (e.g. the dimension of the generating vector set).
pub fn analyze(
    g: &Graph,
    group: Option<&PermutationGroup>,
    representation_dim: Option<u64>,
    budgets: &Budgets,
) -> InvariantReport {
    let alpha = independence_number(g, group, budgets);
    let omega = match representation_dim {
        Some(d) => clique_number_capped(g, d, budgets),
        None => clique_number(g, budgets),
    };
    let xi = xi_number(g, alpha.value, budgets);
    let alpha_star = fractional_packing(g, group, budgets).ok();
    let chi_f = fractional_chromatic(g, group, budgets).ok();
    let transitive = match group {
        Some(grp) => Some(grp.orbit_count() <= 1),
        None => crate::aut::is_vertex_transitive(g).ok(),
    };
    InvariantReport {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        alpha: alpha.value,
        alpha_exact: alpha.exact,
        omega: omega.value,
        omega_exact: omega.exact,
        xi_cap: xi.value,
        xi_cap_exact: xi.exact,
        alpha_star: alpha_star.as_ref().map(|(v, _)| format_ratio(v)),
        alpha_star_method: alpha_star.as_ref().map(|(_, m)| *m),
        chi_fractional: chi_f.as_ref().map(|(v, _)| format_ratio(v)),
        chi_fractional_method: chi_f.as_ref().map(|(_, m)| *m),
        xi_rank_lower: omega.value,
        xi_rank_upper: representation_dim,
        vertex_transitive: transitive,
    }
}
