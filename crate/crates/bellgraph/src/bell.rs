//! Bell functionals in Collins-Gisin layout, correlation points, noise and
//! detection transforms, exact local bounds, and critical-efficiency /
//! critical-visibility reports.
//!
//! Everything is exact rational end to end: coefficients, probabilities,
//! bounds, and the critical values themselves wherever a closed form exists
//! (`4/5`, `7/9`, `41/45` come out as rationals, `sqrt(5/6)` stays symbolic).

use crate::graph::Graph;
use crate::invariants::{format_ratio, parse_ratio};
use crate::states::VectorSet;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

// ---------------------------------------------------------------------------
// Functional
// ---------------------------------------------------------------------------

/// A two-outcome bipartite Bell functional in Collins-Gisin layout: a corner
/// constant, marginal coefficients for each party, and joint coefficients.
/// `joint[i][j]` multiplies P(A_i = B_j = 1).
#[derive(Clone, Debug, PartialEq)]
pub struct BellFunctional {
    pub m: usize,
    pub corner: BigRational,
    pub alice_marg: Vec<BigRational>,
    pub bob_marg: Vec<BigRational>,
    pub joint: Vec<Vec<BigRational>>,
}

impl BellFunctional {
    pub fn zero(m: usize) -> Self {
        BellFunctional {
            m,
            corner: BigRational::zero(),
            alice_marg: vec![BigRational::zero(); m],
            bob_marg: vec![BigRational::zero(); m],
            joint: vec![vec![BigRational::zero(); m]; m],
        }
    }

    /// True when the functional is invariant under the party swap.
    pub fn is_swap_symmetric(&self) -> bool {
        self.alice_marg == self.bob_marg
            && (0..self.m).all(|i| (0..self.m).all(|j| self.joint[i][j] == self.joint[j][i]))
    }

    /// Value at a correlation point (includes the corner constant).
    pub fn value_at(&self, p: &CorrelationPoint) -> BigRational {
        let mut acc = self.corner.clone();
        for i in 0..self.m {
            acc += &self.alice_marg[i] * &p.alice_marg[i];
            acc += &self.bob_marg[i] * &p.bob_marg[i];
        }
        for i in 0..self.m {
            for j in 0..self.m {
                if !self.joint[i][j].is_zero() {
                    acc += &self.joint[i][j] * &p.joint[i][j];
                }
            }
        }
        acc
    }

    /// Coefficients scaled to a common integer denominator (for the exact
    /// enumeration loops).
    fn scaled(&self) -> ScaledFunctional {
        let mut denom = BigInt::one();
        let mut fold = |r: &BigRational| denom = denom.lcm(r.denom());
        fold(&self.corner);
        self.alice_marg.iter().for_each(&mut fold);
        self.bob_marg.iter().for_each(&mut fold);
        self.joint.iter().flatten().for_each(&mut fold);
        let scale = denom.clone();
        let to_int = move |r: &BigRational| -> i128 {
            (r * BigRational::from_integer(scale.clone()))
                .to_integer()
                .to_i128()
                .expect("scaled coefficient fits in i128")
        };
        ScaledFunctional {
            m: self.m,
            denom,
            corner: to_int(&self.corner),
            alice_marg: self.alice_marg.iter().map(&to_int).collect(),
            bob_marg: self.bob_marg.iter().map(&to_int).collect(),
            joint: self
                .joint
                .iter()
                .map(|row| row.iter().map(&to_int).collect())
                .collect(),
        }
    }

    /// Exact local bound by enumerating all 2^m deterministic assignments of
    /// one party in Gray-code order; the other party's optimal outcomes
    /// follow from the accumulated column signs. Refuses m > 30.
    pub fn local_bound_brute(&self) -> Result<LocalBound> {
        if self.m > 30 {
            return Err(Error::LocalBoundInfeasible { settings: self.m });
        }
        let s = self.scaled();
        let m = s.m;
        // Gray-code walk with incremental column sums, parallel over chunks
        let chunks = 64usize.min(1usize << m.min(10));
        let total: u64 = 1 << m;
        let per = total / chunks as u64;
        let best = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c as u64 * per;
                let hi = if c + 1 == chunks { total } else { lo + per };
                scan_gray_range(&s, lo, hi)
            })
            .reduce(
                || (i128::MIN, u64::MAX),
                |a, b| {
                    if (b.0, std::cmp::Reverse(b.1)) > (a.0, std::cmp::Reverse(a.1)) {
                        b
                    } else {
                        a
                    }
                },
            );
        Ok(self.bound_from_mask(&s, best.0, best.1))
    }

    /// Local bound scanning only one representative per symmetry class.
    /// Valid when the functional is invariant under the class-defining group.
    pub fn local_bound_classes(&self, reps: &[u32]) -> LocalBound {
        let s = self.scaled();
        let best = reps
            .par_iter()
            .map(|&mask| (value_for_alice_mask(&s, mask as u64), mask as u64))
            .reduce(
                || (i128::MIN, u64::MAX),
                |a, b| {
                    if (b.0, std::cmp::Reverse(b.1)) > (a.0, std::cmp::Reverse(a.1)) {
                        b
                    } else {
                        a
                    }
                },
            );
        self.bound_from_mask(&s, best.0, best.1)
    }

    fn bound_from_mask(&self, s: &ScaledFunctional, value: i128, mask: u64) -> LocalBound {
        let m = s.m;
        let alice: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
        let bob: Vec<bool> = (0..m)
            .map(|j| {
                let mut col = s.bob_marg[j];
                for i in 0..m {
                    if alice[i] {
                        col += s.joint[i][j];
                    }
                }
                col > 0
            })
            .collect();
        LocalBound {
            value: BigRational::new(BigInt::from(value), s.denom.clone()),
            alice,
            bob,
        }
    }

    pub fn to_json(&self) -> String {
        let dto = FunctionalJson {
            m: self.m,
            corner: format_ratio(&self.corner),
            row_marginals: self.alice_marg.iter().map(format_ratio).collect(),
            col_marginals: self.bob_marg.iter().map(format_ratio).collect(),
            body: self
                .joint
                .iter()
                .map(|row| row.iter().map(format_ratio).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("functional serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: FunctionalJson = serde_json::from_str(text)?;
        let m = dto.m;
        if dto.row_marginals.len() != m || dto.col_marginals.len() != m || dto.body.len() != m {
            return Err(Error::Parse("functional dimensions inconsistent".into()));
        }
        let parse_vec = |v: &[String]| -> Result<Vec<BigRational>> {
            v.iter().map(|s| parse_ratio(s)).collect()
        };
        Ok(BellFunctional {
            m,
            corner: parse_ratio(&dto.corner)?,
            alice_marg: parse_vec(&dto.row_marginals)?,
            bob_marg: parse_vec(&dto.col_marginals)?,
            joint: dto
                .body
                .iter()
                .map(|row| parse_vec(row))
                .collect::<Result<_>>()?,
        })
    }
}

/// Bell functional JSON: rationals as `p/q` strings; `row_marginals` are
/// Alice's coefficients (the top row of the Collins-Gisin matrix),
/// `col_marginals` Bob's; `body[i][j]` multiplies P(A_i = B_j = 1).
#[derive(Serialize, Deserialize)]
struct FunctionalJson {
    m: usize,
    corner: String,
    row_marginals: Vec<String>,
    col_marginals: Vec<String>,
    body: Vec<Vec<String>>,
}

struct ScaledFunctional {
    m: usize,
    denom: BigInt,
    corner: i128,
    alice_marg: Vec<i128>,
    bob_marg: Vec<i128>,
    joint: Vec<Vec<i128>>,
}

fn value_for_alice_mask(s: &ScaledFunctional, mask: u64) -> i128 {
    let mut acc = s.corner;
    for i in 0..s.m {
        if mask >> i & 1 == 1 {
            acc += s.alice_marg[i];
        }
    }
    for j in 0..s.m {
        let mut col = s.bob_marg[j];
        for i in 0..s.m {
            if mask >> i & 1 == 1 {
                col += s.joint[i][j];
            }
        }
        if col > 0 {
            acc += col;
        }
    }
    acc
}

/// Walks masks `gray(lo) .. gray(hi)` maintaining incremental column sums.
fn scan_gray_range(s: &ScaledFunctional, lo: u64, hi: u64) -> (i128, u64) {
    let m = s.m;
    let start = lo ^ (lo >> 1);
    let mut cols: Vec<i128> = s.bob_marg.clone();
    let mut marg: i128 = s.corner;
    for i in 0..m {
        if start >> i & 1 == 1 {
            marg += s.alice_marg[i];
            for j in 0..m {
                cols[j] += s.joint[i][j];
            }
        }
    }
    let mut sumpos: i128 = cols.iter().filter(|&&c| c > 0).sum();
    let mut mask = start;
    let mut best = (marg + sumpos, mask);
    for t in (lo + 1)..hi {
        let next = t ^ (t >> 1);
        let flipped = (next ^ mask).trailing_zeros() as usize;
        let added = next >> flipped & 1 == 1;
        if added {
            marg += s.alice_marg[flipped];
        } else {
            marg -= s.alice_marg[flipped];
        }
        for j in 0..m {
            let c = s.joint[flipped][j];
            if c != 0 {
                let old = cols[j];
                let new = if added { old + c } else { old - c };
                if old > 0 {
                    sumpos -= old;
                }
                if new > 0 {
                    sumpos += new;
                }
                cols[j] = new;
            }
        }
        mask = next;
        let value = marg + sumpos;
        if value > best.0 || (value == best.0 && mask < best.1) {
            best = (value, mask);
        }
    }
    best
}

/// A certified local bound together with one witnessing deterministic
/// strategy pair.
#[derive(Clone, Debug)]
pub struct LocalBound {
    pub value: BigRational,
    pub alice: Vec<bool>,
    pub bob: Vec<bool>,
}

/// The graph Bell functional: +1 on the diagonal for every vertex and
/// −1/(2Ξ) on both orientations of every edge; no marginal terms. Its local
/// bound is the independence number whenever `xi_cap` does not exceed the
/// true xi number of the graph.
pub fn graph_bell_functional(g: &Graph, xi_cap: u32) -> BellFunctional {
    assert!(xi_cap >= 1, "xi must be at least 1");
    let m = g.vertex_count();
    let mut f = BellFunctional::zero(m);
    let penalty = BigRational::new(BigInt::from(-1), BigInt::from(2 * xi_cap as i64));
    for i in 0..m {
        f.joint[i][i] = BigRational::one();
    }
    for (u, v) in g.edges() {
        f.joint[u][v] = penalty.clone();
        f.joint[v][u] = penalty.clone();
    }
    f
}

// ---------------------------------------------------------------------------
// Correlation points
// ---------------------------------------------------------------------------

/// Collins-Gisin probability table for one state/measurement pair, with the
/// visibility and detection efficiency applied so far tracked as metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationPoint {
    pub m: usize,
    pub d: usize,
    pub visibility: BigRational,
    pub efficiency: BigRational,
    pub alice_marg: Vec<BigRational>,
    pub bob_marg: Vec<BigRational>,
    pub joint: Vec<Vec<BigRational>>,
}

impl CorrelationPoint {
    /// The point produced by the maximally entangled state of the ray
    /// dimension, with projectors onto the rays on Alice's side and their
    /// conjugates on Bob's: marginals 1/d, joints |⟨v_i|v_j⟩|²/d.
    pub fn quantum(vs: &VectorSet) -> Self {
        let m = vs.len();
        let d = vs.dimension;
        let inv_d = BigRational::new(BigInt::one(), BigInt::from(d));
        let joint: Vec<Vec<BigRational>> = (0..m)
            .into_par_iter()
            .map(|i| {
                let ni = vs.rays[i].norm_sq();
                (0..m)
                    .map(|j| {
                        let nj = vs.rays[j].norm_sq();
                        let ip = vs.rays[i].inner(&vs.rays[j]).norm_sq();
                        BigRational::new(BigInt::from(ip), BigInt::from(ni * nj * d as i64))
                    })
                    .collect()
            })
            .collect();
        CorrelationPoint {
            m,
            d,
            visibility: BigRational::one(),
            efficiency: BigRational::one(),
            alice_marg: vec![inv_d.clone(); m],
            bob_marg: vec![inv_d; m],
            joint,
        }
    }

    /// The maximally mixed point: marginals 1/d, joints 1/d².
    pub fn maximally_mixed(m: usize, d: usize) -> Self {
        let inv_d = BigRational::new(BigInt::one(), BigInt::from(d));
        let inv_d2 = &inv_d * &inv_d;
        CorrelationPoint {
            m,
            d,
            visibility: BigRational::zero(),
            efficiency: BigRational::one(),
            alice_marg: vec![inv_d.clone(); m],
            bob_marg: vec![inv_d; m],
            joint: vec![vec![inv_d2; m]; m],
        }
    }

    /// Werner mixing with the maximally mixed state: joints shrink toward
    /// 1/d², marginals stay at 1/d.
    pub fn apply_werner(&self, w: &BigRational) -> Result<CorrelationPoint> {
        if w.is_negative() || w > &BigRational::one() {
            return Err(Error::Parse(format!("visibility {w} outside [0,1]")));
        }
        let inv_d2 = BigRational::new(BigInt::one(), BigInt::from((self.d * self.d) as i64));
        let complement = BigRational::one() - w;
        let mut out = self.clone();
        out.visibility = &self.visibility * w;
        for row in &mut out.joint {
            for cell in row.iter_mut() {
                *cell = w * &*cell + &complement * &inv_d2;
            }
        }
        Ok(out)
    }

    /// Detection-efficiency transform with no-detection mapped to the
    /// suppressed outcome 0: marginals scale by η, joints by η².
    pub fn apply_detection(&self, eta: &BigRational) -> Result<CorrelationPoint> {
        if !eta.is_positive() || eta > &BigRational::one() {
            return Err(Error::Parse(format!("efficiency {eta} outside (0,1]")));
        }
        let eta2 = eta * eta;
        let mut out = self.clone();
        out.efficiency = &self.efficiency * eta;
        for v in out.alice_marg.iter_mut().chain(out.bob_marg.iter_mut()) {
            *v = &*v * eta;
        }
        for row in &mut out.joint {
            for cell in row.iter_mut() {
                *cell = &*cell * &eta2;
            }
        }
        Ok(out)
    }

    /// No-signaling sanity: entries in [0,1], joints below both marginals.
    pub fn validate(&self) -> Result<()> {
        let unit = BigRational::one();
        let in_range = |r: &BigRational| !r.is_negative() && r <= &unit;
        for v in self.alice_marg.iter().chain(self.bob_marg.iter()) {
            if !in_range(v) {
                return Err(Error::Parse(format!("marginal {v} outside [0,1]")));
            }
        }
        for i in 0..self.m {
            for j in 0..self.m {
                let p = &self.joint[i][j];
                if !in_range(p) || p > &self.alice_marg[i] || p > &self.bob_marg[j] {
                    return Err(Error::Parse(format!("joint ({i},{j}) breaks no-signaling")));
                }
            }
        }
        Ok(())
    }

    /// The point as a flat CG vector: corner, Alice marginals, Bob
    /// marginals, then joints row-major over (alice, bob).
    pub fn to_cg_vector(&self) -> Vec<BigRational> {
        let mut v = Vec::with_capacity((self.m + 1) * (self.m + 1));
        v.push(BigRational::one());
        v.extend(self.alice_marg.iter().cloned());
        v.extend(self.bob_marg.iter().cloned());
        for row in &self.joint {
            v.extend(row.iter().cloned());
        }
        v
    }
}

// ---------------------------------------------------------------------------
// Efficiency report
// ---------------------------------------------------------------------------

/// A critical value, exact where the algebra allows.
#[derive(Clone, Debug, PartialEq)]
pub enum CritValue {
    Exact(BigRational),
    /// the value is the square root of this rational
    SqrtOf(BigRational),
    Approx(f64),
}

impl CritValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            CritValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            CritValue::SqrtOf(r) => r.to_f64().unwrap_or(f64::NAN).sqrt(),
            CritValue::Approx(x) => *x,
        }
    }

    pub fn render(&self) -> String {
        match self {
            CritValue::Exact(r) => format!("{} (= {:.4})", format_ratio(r), self.to_f64()),
            CritValue::SqrtOf(r) => format!("sqrt({}) (= {:.4})", format_ratio(r), self.to_f64()),
            CritValue::Approx(x) => format!("{x:.4}"),
        }
    }
}

/// Which closed form produced the critical values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaPath {
    Protocol1,
    Protocol2,
    Theorem3,
    Theorem4,
    Theorem3b,
}

#[derive(Clone, Debug)]
pub struct EfficiencyReport {
    pub c: BigRational,
    pub q: BigRational,
    pub q_a: BigRational,
    pub q_b: BigRational,
    pub q_mix: BigRational,
    pub x: BigRational,
    /// None = no violation (Q ≤ C): the sentinel outcome, not an error
    pub eta_crit: Option<CritValue>,
    pub w_crit: Option<CritValue>,
    pub formula_path: FormulaPath,
}

impl EfficiencyReport {
    pub fn violating(&self) -> bool {
        self.eta_crit.is_some()
    }
}

/// Builds the report for a certified local bound `c` and a correlation
/// point. `x` is the both-fail value; it defaults to the corner constant
/// (zero for all functionals built here).
pub fn efficiency_report(
    f: &BellFunctional,
    c: &BigRational,
    p: &CorrelationPoint,
    x: Option<BigRational>,
) -> EfficiencyReport {
    let q = f.value_at(p);
    let x = x.unwrap_or_else(|| f.corner.clone());
    let q_a: BigRational = f.corner.clone()
        + f.alice_marg
            .iter()
            .zip(&p.alice_marg)
            .map(|(c, p)| c * p)
            .sum::<BigRational>();
    let q_b: BigRational = f.corner.clone()
        + f.bob_marg
            .iter()
            .zip(&p.bob_marg)
            .map(|(c, p)| c * p)
            .sum::<BigRational>();
    let q_mix = f.value_at(&CorrelationPoint::maximally_mixed(f.m, p.d));

    let zero_marginals = f.alice_marg.iter().all(Zero::is_zero)
        && f.bob_marg.iter().all(Zero::is_zero)
        && f.corner.is_zero();
    let formula_path = if zero_marginals && x.is_zero() {
        if p.visibility < BigRational::one() {
            FormulaPath::Theorem4
        } else {
            FormulaPath::Protocol2
        }
    } else {
        FormulaPath::Protocol1
    };

    if q <= *c {
        return EfficiencyReport {
            c: c.clone(),
            q,
            q_a,
            q_b,
            q_mix,
            x,
            eta_crit: None,
            w_crit: None,
            formula_path,
        };
    }

    let eta_crit = solve_eta(&q, &q_a, &q_b, &x, c);
    let w_crit = if q == q_mix {
        None
    } else {
        let w = (c - &q_mix) / (&q - &q_mix);
        let w = if w.is_negative() { BigRational::zero() } else { w };
        Some(CritValue::Exact(w))
    };
    EfficiencyReport {
        c: c.clone(),
        q,
        q_a,
        q_b,
        q_mix,
        x,
        eta_crit,
        w_crit,
        formula_path,
    }
}

/// Largest root in (0,1] of  (Q−QA−QB+X)·η² + (QA+QB−2X)·η + (X−C) = 0,
/// the detection threshold for Strategy II with both-fail value X.
fn solve_eta(
    q: &BigRational,
    q_a: &BigRational,
    q_b: &BigRational,
    x: &BigRational,
    c: &BigRational,
) -> Option<CritValue> {
    let a = q - q_a - q_b + x;
    let b = q_a + q_b - x - x;
    let c0 = x - c;
    let one = BigRational::one();

    if a.is_zero() {
        if b.is_zero() {
            return None;
        }
        let root = -c0 / &b;
        return (root.is_positive() && root <= one).then_some(CritValue::Exact(root));
    }
    if b.is_zero() {
        // η² = −C0/A
        let sq = -&c0 / &a;
        if !sq.is_positive() {
            return None;
        }
        if sq > one {
            return None;
        }
        return Some(match exact_sqrt(&sq) {
            Some(r) => CritValue::Exact(r),
            None => CritValue::SqrtOf(sq),
        });
    }
    let disc = &b * &b - big(4) * &a * &c0;
    if disc.is_negative() {
        return None;
    }
    if let Some(sd) = exact_sqrt(&disc) {
        let two_a = big(2) * &a;
        let r1 = (-&b + &sd) / &two_a;
        let r2 = (-&b - &sd) / &two_a;
        let mut roots = [r1, r2];
        roots.sort();
        roots
            .into_iter()
            .rev()
            .find(|r| r.is_positive() && *r <= one)
            .map(CritValue::Exact)
    } else {
        let af = a.to_f64()?;
        let bf = b.to_f64()?;
        let cf = c0.to_f64()?;
        let sd = (bf * bf - 4.0 * af * cf).sqrt();
        let mut roots = [(-bf + sd) / (2.0 * af), (-bf - sd) / (2.0 * af)];
        roots.sort_by(f64::total_cmp);
        roots
            .into_iter()
            .rev()
            .find(|&r| r > 0.0 && r <= 1.0 + 1e-12)
            .map(|r| CritValue::Approx(r.min(1.0)))
    }
}

/// √r as an exact rational when numerator and denominator are both perfect
/// squares.
fn exact_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().sqrt();
    let den = r.denom().sqrt();
    (&num * &num == *r.numer() && &den * &den == *r.denom())
        .then(|| BigRational::new(num, den))
}

/// Critical efficiency straight from graph data: sqrt(α / (|V|/ξ)).
pub fn theorem3_eta(alpha: u64, vertex_count: u64, xi: u64) -> CritValue {
    let sq = BigRational::new(
        BigInt::from(alpha) * BigInt::from(xi),
        BigInt::from(vertex_count),
    );
    match exact_sqrt(&sq) {
        Some(r) => CritValue::Exact(r),
        None => CritValue::SqrtOf(sq),
    }
}

/// Critical visibility straight from graph data (Theorem 3b shape):
/// (α − Q_mix) / (|V|/d − Q_mix) with Q_mix = (|V| − |E|/Ξ)/d².
pub fn theorem3b_w(alpha: u64, vertex_count: u64, edge_count: u64, xi_cap: u32, d: u64) -> CritValue {
    let v = big(vertex_count as i64);
    let q_mix = (v.clone() - BigRational::new(BigInt::from(edge_count), BigInt::from(xi_cap)))
        / big((d * d) as i64);
    let q = v / big(d as i64);
    CritValue::Exact((big(alpha as i64) - &q_mix) / (q - q_mix))
}

/// Detection threshold for the n-fold OR/lexicographic product of a graph
/// with itself: (α / (|V|/ξ))^{n/2}.
pub fn product_eta(alpha: &BigRational, v_over_xi: &BigRational, n: u32) -> f64 {
    let ratio = (alpha / v_over_xi).to_f64().unwrap_or(f64::NAN);
    ratio.powf(n as f64 / 2.0)
}

/// Weighted-graph threshold: sqrt(α(G,w) / (Σw_i / ξ)).
pub fn weighted_eta(alpha_w: &BigRational, weight_sum: &BigRational, xi: u64) -> f64 {
    let denom = weight_sum / big(xi as i64);
    (alpha_w / denom).to_f64().unwrap_or(f64::NAN).sqrt()
}

// ---------------------------------------------------------------------------
// Report JSON
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct ReportJson {
    pub c: String,
    pub q: String,
    pub q_a: String,
    pub q_b: String,
    pub q_mix: String,
    pub x: String,
    pub status: String,
    pub eta_crit: Option<String>,
    pub eta_crit_value: Option<f64>,
    pub w_crit: Option<String>,
    pub w_crit_value: Option<f64>,
    pub formula_path: FormulaPath,
}

impl EfficiencyReport {
    pub fn to_json(&self) -> String {
        let render = |v: &Option<CritValue>| v.as_ref().map(|c| c.render());
        let value = |v: &Option<CritValue>| v.as_ref().map(|c| c.to_f64());
        let dto = ReportJson {
            c: format_ratio(&self.c),
            q: format_ratio(&self.q),
            q_a: format_ratio(&self.q_a),
            q_b: format_ratio(&self.q_b),
            q_mix: format_ratio(&self.q_mix),
            x: format_ratio(&self.x),
            status: if self.violating() {
                "violating".into()
            } else {
                "no_violation".into()
            },
            eta_crit: render(&self.eta_crit),
            eta_crit_value: value(&self.eta_crit),
            w_crit: render(&self.w_crit),
            w_crit_value: value(&self.w_crit),
            formula_path: self.formula_path,
        };
        serde_json::to_string_pretty(&dto).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::rational;
    use crate::states::{pauli_states, Field};

    fn c5_functional() -> BellFunctional {
        let c5 = Graph::circulant(5, &[1]).unwrap();
        graph_bell_functional(&c5, 1)
    }

    #[test]
    fn c5_graph_functional_shape_and_bound() {
        let f = c5_functional();
        assert_eq!(f.joint[0][0], big(1));
        assert_eq!(f.joint[0][1], rational(-1, 2));
        assert_eq!(f.joint[0][2], big(0));
        assert!(f.is_swap_symmetric());
        let bound = f.local_bound_brute().unwrap();
        assert_eq!(bound.value, big(2));
        // witness evaluates back to the bound
        let mut p = CorrelationPoint::maximally_mixed(5, 1);
        for i in 0..5 {
            p.alice_marg[i] = if bound.alice[i] { big(1) } else { big(0) };
            p.bob_marg[i] = if bound.bob[i] { big(1) } else { big(0) };
        }
        for i in 0..5 {
            for j in 0..5 {
                p.joint[i][j] = &p.alice_marg[i] * &p.bob_marg[j];
            }
        }
        assert_eq!(f.value_at(&p), big(2));
    }

    #[test]
    fn single_vertex_functional() {
        let g = Graph::new(1);
        let f = graph_bell_functional(&g, 1);
        assert_eq!(f.m, 1);
        assert_eq!(f.joint[0][0], big(1));
        assert_eq!(f.local_bound_brute().unwrap().value, big(1));
    }

    #[test]
    fn quantum_point_pauli24() {
        let p24 = pauli_states(2, Field::Real).unwrap();
        let g = p24.orthogonality_graph(0.0).unwrap();
        let f = graph_bell_functional(&g, 1);
        let q = CorrelationPoint::quantum(&p24);
        q.validate().unwrap();
        assert_eq!(f.value_at(&q), big(6)); // |V|/d = 24/4
        for (u, v) in g.edges() {
            assert!(q.joint[u][v].is_zero());
        }
    }

    #[test]
    fn quantum_point_pauli240_value() {
        let p = pauli_states(3, Field::Real).unwrap();
        let g = p.orthogonality_graph(0.0).unwrap();
        let f = graph_bell_functional(&g, 1);
        let q = CorrelationPoint::quantum(&p);
        assert_eq!(f.value_at(&q), big(30)); // 240/8
    }

    #[test]
    fn bob_conjugation_convention() {
        // On a complex set the joint must be |⟨v_j|v_i⟩|²/d, i.e. the value
        // of the explicit tensor ⟨ψ|Π_i ⊗ Π_j*|ψ⟩ with Bob conjugated.
        let pc = pauli_states(2, Field::Complex).unwrap();
        let q = CorrelationPoint::quantum(&pc);
        let d = pc.dimension;
        // pick a genuinely complex ray for the i == j discrimination case
        let cplx = (0..pc.len())
            .find(|&i| !pc.rays[i].is_real())
            .expect("complex family has a non-real ray");
        for (i, j) in [(0usize, 5usize), (3, 17), (40, 41), (cplx, cplx)] {
            let vi = &pc.rays[i];
            let vj = &pc.rays[j];
            // ⟨ψ|(|v_i⟩ ⊗ |v_j*⟩) = Σ_k v_i[k]·conj(v_j[k]), unnormalized
            let mut amp = crate::gauss::ZERO;
            for k in 0..d {
                amp += vi.components()[k] * vj.components()[k].conj();
            }
            let expect = BigRational::new(
                BigInt::from(amp.norm_sq()),
                BigInt::from(vi.norm_sq() * vj.norm_sq() * d as i64),
            );
            assert_eq!(q.joint[i][j], expect, "joint ({i},{j})");
            // and with an UNconjugated Bob the numbers genuinely differ
            let mut amp_unconj = crate::gauss::ZERO;
            for k in 0..d {
                amp_unconj += vi.components()[k] * vj.components()[k];
            }
            if i == j {
                assert_ne!(amp_unconj.norm_sq(), amp.norm_sq());
            }
        }
    }

    #[test]
    fn werner_and_detection_transforms() {
        let p24 = pauli_states(2, Field::Real).unwrap();
        let g = p24.orthogonality_graph(0.0).unwrap();
        let f = graph_bell_functional(&g, 1);
        let q = CorrelationPoint::quantum(&p24);

        // W = 1 is the identity
        assert_eq!(q.apply_werner(&big(1)).unwrap(), q);
        // value at W: W·6 + (1−W)·Q_mix with Q_mix = (24 − 108)/16
        let w = rational(1, 2);
        let qw = q.apply_werner(&w).unwrap();
        let q_mix = rational(24 - 108, 16);
        let expect = &w * big(6) + (BigRational::one() - &w) * q_mix;
        assert_eq!(f.value_at(&qw), expect);

        // η = 1 identity; zero-marginal functional scales by η²
        assert_eq!(q.apply_detection(&big(1)).unwrap(), q);
        let eta = rational(3, 4);
        let qe = q.apply_detection(&eta).unwrap();
        assert_eq!(f.value_at(&qe), &eta * &eta * big(6));
        qe.validate().unwrap();
    }

    #[test]
    fn pauli24_graph_functional_report() {
        let p24 = pauli_states(2, Field::Real).unwrap();
        let g = p24.orthogonality_graph(0.0).unwrap();
        let f = graph_bell_functional(&g, 1);
        let q = CorrelationPoint::quantum(&p24);
        let report = efficiency_report(&f, &big(5), &q, None);
        assert!(report.violating());
        assert_eq!(report.formula_path, FormulaPath::Protocol2);
        match report.eta_crit.as_ref().unwrap() {
            CritValue::SqrtOf(r) => assert_eq!(*r, rational(5, 6)),
            other => panic!("expected sqrt form, got {other:?}"),
        }
        let eta = report.eta_crit.as_ref().unwrap().to_f64();
        assert!((eta - 0.912870929175277).abs() < 1e-12);
        // W_crit = 41/45
        match report.w_crit.as_ref().unwrap() {
            CritValue::Exact(w) => assert_eq!(*w, rational(41, 45)),
            other => panic!("expected exact W, got {other:?}"),
        }
    }

    #[test]
    fn no_violation_sentinel() {
        // K4 orthogonality functional at its own quantum point: Q = 1 = α
        let n4 = crate::states::newman_states(4).unwrap();
        let g = n4.orthogonality_graph(0.0).unwrap();
        let f = graph_bell_functional(&g, 1);
        let q = CorrelationPoint::quantum(&n4);
        let report = efficiency_report(&f, &big(1), &q, None);
        assert!(!report.violating());
        assert!(report.eta_crit.is_none());
    }

    #[test]
    fn product_eta_values() {
        let a = big(16);
        let v = big(30);
        assert!((product_eta(&a, &v, 1) - 0.7303).abs() < 1e-4);
        assert!((product_eta(&a, &v, 2) - 0.5333).abs() < 1e-4);
        assert!((product_eta(&a, &v, 3) - 0.3895).abs() < 1e-4);
    }

    #[test]
    fn weighted_eta_homogeneity() {
        let a = rational(7, 2);
        let s = big(12);
        let double_a = rational(7, 1);
        let double_s = big(24);
        assert!((weighted_eta(&a, &s, 3) - weighted_eta(&double_a, &double_s, 3)).abs() < 1e-15);
        // uniform weights reduce to the plain formula sqrt(α/(|V|/ξ))
        let t3 = theorem3_eta(2, 5, 1).to_f64();
        let ww = weighted_eta(&big(2), &big(5), 1);
        assert!((t3 - ww).abs() < 1e-15);
    }

    #[test]
    fn functional_json_round_trip() {
        let f = c5_functional();
        let text = f.to_json();
        let back = BellFunctional::from_json(&text).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn brute_force_refuses_oversized() {
        let f = BellFunctional::zero(31);
        assert!(matches!(
            f.local_bound_brute(),
            Err(Error::LocalBoundInfeasible { .. })
        ));
    }

    #[test]
    fn theorem3b_pauli24() {
        let w = theorem3b_w(5, 24, 108, 1, 4);
        match w {
            CritValue::Exact(r) => assert_eq!(r, rational(41, 45)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
