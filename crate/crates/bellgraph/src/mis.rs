//! Exact maximum independent set / maximum clique by branch and bound on
//! bitsets with a greedy-coloring upper bound.
//!
//! The search is single-threaded and the candidate order is fixed, so the
//! reported value and witness are deterministic. Budget exhaustion is a
//! flagged outcome (best incumbent, `exact = false`), never an error.

use crate::bitset::BitSet;
use crate::graph::Graph;

/// Outcome of a clique / independent-set search. `value` is the cardinality,
/// or the total scaled weight for the weighted variants.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub value: u64,
    pub witness: Vec<usize>,
    pub exact: bool,
    pub nodes: u64,
}

/// Maximum independent set of `g`. Decomposes over connected components.
pub fn max_independent_set(g: &Graph, budget: u64) -> SearchOutcome {
    max_weight_independent_set(g, &vec![1; g.vertex_count()], budget)
}

/// Maximum-weight independent set; weights are nonnegative integers
/// (rational weights are scaled by the caller).
pub fn max_weight_independent_set(g: &Graph, weights: &[u64], budget: u64) -> SearchOutcome {
    debug_assert_eq!(weights.len(), g.vertex_count());
    let mut total = SearchOutcome {
        value: 0,
        witness: Vec::new(),
        exact: true,
        nodes: 0,
    };
    for comp in components(g) {
        let sub = g.induced_subgraph(&comp);
        let sub_weights: Vec<u64> = comp.iter().map(|&v| weights[v]).collect();
        // independent sets of the subgraph are cliques of its complement
        let outcome = max_weight_clique_capped(&sub.complement(), &sub_weights, u64::MAX, budget);
        total.value += outcome.value;
        total.exact &= outcome.exact;
        total.nodes += outcome.nodes;
        total.witness.extend(outcome.witness.iter().map(|&v| comp[v]));
    }
    total.witness.sort_unstable();
    total
}

/// Maximum clique of `g`.
pub fn max_clique(g: &Graph, budget: u64) -> SearchOutcome {
    max_weight_clique_capped(g, &vec![1; g.vertex_count()], u64::MAX, budget)
}

/// Maximum clique with an early exit once a clique of size `cap` is found.
/// Useful when an external bound (e.g. the ray dimension for orthogonality
/// graphs) pins the clique number from above.
pub fn max_clique_capped(g: &Graph, cap: u64, budget: u64) -> SearchOutcome {
    max_weight_clique_capped(g, &vec![1; g.vertex_count()], cap, budget)
}

fn max_weight_clique_capped(
    g: &Graph,
    weights: &[u64],
    cap: u64,
    budget: u64,
) -> SearchOutcome {
    let n = g.vertex_count();
    if n == 0 {
        return SearchOutcome {
            value: 0,
            witness: Vec::new(),
            exact: true,
            nodes: 0,
        };
    }
    // static order by descending degree sharpens the coloring bound
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let adj: Vec<BitSet> = order
        .iter()
        .map(|&v| {
            let mut row = BitSet::new(n);
            for u in g.neighbors(v).iter() {
                row.insert(rank[u]);
            }
            row
        })
        .collect();
    let w: Vec<u64> = order.iter().map(|&v| weights[v]).collect();

    let mut search = CliqueSearch {
        adj: &adj,
        weights: &w,
        cap,
        budget,
        nodes: 0,
        truncated: false,
        best: 0,
        best_set: Vec::new(),
    };
    let all = BitSet::full(n);
    search.expand(&mut Vec::new(), 0, all);

    let mut witness: Vec<usize> = search.best_set.iter().map(|&i| order[i]).collect();
    witness.sort_unstable();
    SearchOutcome {
        value: search.best,
        witness,
        exact: !search.truncated,
        nodes: search.nodes,
    }
}

struct CliqueSearch<'a> {
    adj: &'a [BitSet],
    weights: &'a [u64],
    cap: u64,
    budget: u64,
    nodes: u64,
    truncated: bool,
    best: u64,
    best_set: Vec<usize>,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, current_weight: u64, candidates: BitSet) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.truncated = true;
            return;
        }
        if self.best >= self.cap {
            return;
        }
        if candidates.is_empty() {
            if current_weight > self.best {
                self.best = current_weight;
                self.best_set = current.clone();
            }
            return;
        }

        // greedy coloring: classes are independent sets, so any clique takes
        // at most one vertex per class; the cumulative class maxima bound the
        // achievable weight among the first t listed vertices
        let mut listed: Vec<(usize, u64)> = Vec::with_capacity(candidates.count());
        let mut remaining = candidates.clone();
        let mut bound_so_far = 0u64;
        while !remaining.is_empty() {
            let mut class_members = Vec::new();
            let mut available = remaining.clone();
            let mut class_max = 0u64;
            while let Some(v) = available.first() {
                class_members.push(v);
                class_max = class_max.max(self.weights[v]);
                available.remove(v);
                available.subtract(&self.adj[v]);
            }
            bound_so_far += class_max;
            for v in class_members {
                remaining.remove(v);
                listed.push((v, bound_so_far));
            }
        }

        let mut pool = candidates;
        for &(v, bound) in listed.iter().rev() {
            if current_weight + bound <= self.best {
                return;
            }
            let next = pool.intersection(&self.adj[v]);
            current.push(v);
            self.expand(current, current_weight + self.weights[v], next);
            current.pop();
            pool.remove(v);
            if self.truncated || self.best >= self.cap {
                return;
            }
        }
    }
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for u in g.neighbors(v).iter() {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ProductKind;

    #[test]
    fn cycle_and_complete() {
        let c5 = Graph::circulant(5, &[1]).unwrap();
        let out = max_independent_set(&c5, 1 << 20);
        assert_eq!(out.value, 2);
        assert!(out.exact);
        // witness has no internal edge
        assert!(!c5.is_edge(out.witness[0], out.witness[1]));

        let k4 = Graph::circulant(4, &[1, 2]).unwrap();
        assert_eq!(max_independent_set(&k4, 1 << 20).value, 1);
        assert_eq!(max_clique(&k4, 1 << 20).value, 4);
    }

    #[test]
    fn clique_witness_is_complete() {
        let g = Graph::circulant(10, &[2, 3]).unwrap();
        let out = max_clique(&g, 1 << 20);
        for i in 0..out.witness.len() {
            for j in (i + 1)..out.witness.len() {
                assert!(g.is_edge(out.witness[i], out.witness[j]));
            }
        }
    }

    #[test]
    fn alpha_equals_omega_of_complement() {
        for (n, offsets) in [(9usize, vec![1, 2]), (11, vec![1, 3]), (12, vec![2, 3, 4])] {
            let g = Graph::circulant(n, &offsets).unwrap();
            let a = max_independent_set(&g, 1 << 22).value;
            let w = max_clique(&g.complement(), 1 << 22).value;
            assert_eq!(a, w);
        }
    }

    #[test]
    fn c5_product_multiplicativity() {
        let c5 = Graph::circulant(5, &[1]).unwrap();
        for kind in [ProductKind::Or, ProductKind::Lexicographic] {
            let p = c5.product(&c5, kind).unwrap();
            assert_eq!(max_independent_set(&p, 1 << 24).value, 4);
        }
    }

    #[test]
    fn weighted_reduces_to_plain_on_unit_weights() {
        let g = Graph::circulant(10, &[2, 3]).unwrap();
        let plain = max_independent_set(&g, 1 << 20);
        let weighted = max_weight_independent_set(&g, &vec![1; 10], 1 << 20);
        assert_eq!(plain.value, weighted.value);
    }

    #[test]
    fn weighted_prefers_heavy_vertex() {
        // path 0-1-2: weight 5 in the middle beats the two ends
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let out = max_weight_independent_set(&g, &[1, 5, 1], 1 << 10);
        assert_eq!(out.value, 5);
        assert_eq!(out.witness, vec![1]);
    }

    #[test]
    fn budget_exhaustion_flags_inexact() {
        let g = Graph::circulant(30, &[1, 2, 3]).unwrap().complement();
        let out = max_independent_set(&g, 2);
        assert!(!out.exact);
    }

    #[test]
    fn cap_early_exit() {
        // Ci_12(1,2) has clique number 3; a cap at the true value short-circuits
        let g = Graph::circulant(12, &[1, 2]).unwrap();
        let capped = max_clique_capped(&g, 3, 1 << 20);
        assert_eq!(capped.value, 3);
        assert!(capped.exact);
        let full = max_clique(&g, 1 << 20);
        assert_eq!(full.value, 3);
        assert!(capped.nodes <= full.nodes);
    }
}
