//! Graph automorphism search: equitable color refinement plus backtracking
//! with orbit pruning. Returns a generating set and the orbit partition; no
//! canonical form is computed.

use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::perm::{Permutation, PermutationGroup, UnionFind};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Limits for the search. The node budget counts backtracking nodes across
/// the whole run, so exhaustion is deterministic.
#[derive(Clone, Copy, Debug)]
pub struct AutLimits {
    pub max_vertices: usize,
    pub node_budget: u64,
}

impl Default for AutLimits {
    fn default() -> Self {
        AutLimits {
            max_vertices: 5000,
            node_budget: 50_000_000,
        }
    }
}

/// Automorphism group of `g` with default limits.
pub fn automorphism_group(g: &Graph) -> Result<PermutationGroup> {
    automorphism_group_with(g, AutLimits::default())
}

pub fn automorphism_group_with(g: &Graph, limits: AutLimits) -> Result<PermutationGroup> {
    let n = g.vertex_count();
    if n > limits.max_vertices {
        return Err(Error::AutomorphismTooLarge {
            n,
            limit: limits.max_vertices,
        });
    }
    if n == 0 {
        return Ok(PermutationGroup::trivial(0));
    }
    let mut search = Search {
        g,
        n,
        budget: limits.node_budget,
        spent: 0,
    };
    let base = search.stable_coloring(&vec![0u32; n]);
    let gens = search.level(&base, &mut Vec::new())?;
    for p in &gens {
        debug_assert!(g.is_automorphism(&p.images().collect::<Vec<_>>()));
    }
    PermutationGroup::new(n, gens)
}

/// True iff the orbit partition of the automorphism group is a single block.
pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    // Degree mismatch settles it without any search.
    if g.vertex_count() > 0 && g.is_regular().is_none() {
        return Ok(false);
    }
    Ok(automorphism_group(g)?.orbit_count() <= 1)
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    budget: u64,
    spent: u64,
}

impl Search<'_> {
    fn charge(&mut self) -> Result<()> {
        self.spent += 1;
        if self.spent > self.budget {
            Err(Error::AutomorphismBudget { nodes: self.spent })
        } else {
            Ok(())
        }
    }

    /// Iterated neighborhood refinement until the color count stabilizes.
    /// Color ids are canonical: assigned in sorted key order each round.
    fn stable_coloring(&self, initial: &[u32]) -> Vec<u32> {
        let mut colors = initial.to_vec();
        let mut distinct = count_distinct(&colors);
        loop {
            let mut keys: Vec<(u32, Vec<u32>)> = Vec::with_capacity(self.n);
            for v in 0..self.n {
                let mut nb: Vec<u32> = self.g.neighbors(v).iter().map(|u| colors[u]).collect();
                nb.sort_unstable();
                keys.push((colors[v], nb));
            }
            let mut remap: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
            for key in &keys {
                let next = remap.len() as u32;
                remap.entry(key).or_insert(next);
            }
            let new_colors: Vec<u32> = keys.iter().map(|k| remap[k]).collect();
            let new_distinct = remap.len();
            colors = new_colors;
            if new_distinct == distinct {
                return colors;
            }
            distinct = new_distinct;
        }
    }

    /// Colors with `fixed` vertices individualized, then refined.
    fn refined_with_fixed(&self, base: &[u32], fixed: &[usize]) -> Vec<u32> {
        let mut colors = base.to_vec();
        for (i, &f) in fixed.iter().enumerate() {
            colors[f] = self.n as u32 + i as u32 + 1;
        }
        self.stable_coloring(&colors)
    }

    /// Generators of the subgroup fixing `fixed` pointwise.
    fn level(&mut self, base: &[u32], fixed: &mut Vec<usize>) -> Result<Vec<Permutation>> {
        let colors = self.refined_with_fixed(base, fixed);

        // target cell: smallest non-singleton class, ties by smallest member
        let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            classes.entry(c).or_default().push(v);
        }
        let cell = classes
            .values()
            .filter(|m| m.len() >= 2)
            .min_by_key(|m| (m.len(), m[0]))
            .cloned();
        let Some(cell) = cell else {
            return Ok(Vec::new()); // discrete partition: trivial stabilizer
        };

        let b = cell[0];
        fixed.push(b);
        let mut gens = self.level(base, fixed)?;
        fixed.pop();

        let mut uf = UnionFind::new(self.n);
        for p in &gens {
            for v in 0..self.n {
                uf.union(v, p.apply(v));
            }
        }
        for &u in cell.iter().skip(1) {
            if uf.same(b, u) {
                continue;
            }
            if let Some(p) = self.find_mapping(&colors, fixed, b, u)? {
                for v in 0..self.n {
                    uf.union(v, p.apply(v));
                }
                gens.push(p);
            }
        }
        Ok(gens)
    }

    /// One automorphism fixing `fixed` pointwise and mapping `b` to `u`,
    /// if any exists.
    fn find_mapping(
        &mut self,
        colors: &[u32],
        fixed: &[usize],
        b: usize,
        u: usize,
    ) -> Result<Option<Permutation>> {
        // candidate sets: color classes
        let mut class_sets: BTreeMap<u32, BitSet> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            class_sets
                .entry(c)
                .or_insert_with(|| BitSet::new(self.n))
                .insert(v);
        }
        let mut cands: Vec<BitSet> = (0..self.n).map(|v| class_sets[&colors[v]].clone()).collect();

        let mut mapping: Vec<Option<u32>> = vec![None; self.n];
        let mut used = BitSet::new(self.n);
        for &f in fixed {
            if !self.assign(&mut cands, &mut mapping, &mut used, f, f) {
                return Ok(None);
            }
        }
        if !self.assign(&mut cands, &mut mapping, &mut used, b, u) {
            return Ok(None);
        }
        self.extend_mapping(&mut cands, &mut mapping, &mut used)
    }

    /// Restricts candidate sets after committing `v -> w`. Returns false when
    /// some vertex loses all candidates.
    fn assign(
        &self,
        cands: &mut [BitSet],
        mapping: &mut [Option<u32>],
        used: &mut BitSet,
        v: usize,
        w: usize,
    ) -> bool {
        if mapping[v].is_some() || used.contains(w) || !cands[v].contains(w) {
            return false;
        }
        mapping[v] = Some(w as u32);
        used.insert(w);
        let adj_w = self.g.neighbors(w);
        for x in 0..self.n {
            if mapping[x].is_some() {
                continue;
            }
            if self.g.is_edge(x, v) {
                cands[x].intersect_with(adj_w);
            } else {
                cands[x].subtract(adj_w);
            }
            cands[x].remove(w);
            if cands[x].is_empty() {
                return false;
            }
        }
        true
    }

    fn extend_mapping(
        &mut self,
        cands: &mut Vec<BitSet>,
        mapping: &mut Vec<Option<u32>>,
        used: &mut BitSet,
    ) -> Result<Option<Permutation>> {
        self.charge()?;
        // most-constrained unmapped vertex, ties by index
        let next = (0..self.n)
            .filter(|&v| mapping[v].is_none())
            .min_by_key(|&v| (cands[v].count(), v));
        let Some(v) = next else {
            let images: Vec<usize> = mapping.iter().map(|m| m.unwrap() as usize).collect();
            if self.g.is_automorphism(&images) {
                return Ok(Some(Permutation::from_images(images)?));
            }
            return Ok(None);
        };
        let options: Vec<usize> = cands[v].iter().collect();
        for w in options {
            if used.contains(w) {
                continue;
            }
            let mut cands2 = cands.clone();
            let mut mapping2 = mapping.clone();
            let mut used2 = used.clone();
            if self.assign(&mut cands2, &mut mapping2, &mut used2, v, w) {
                if let Some(p) = self.extend_mapping(&mut cands2, &mut mapping2, &mut used2)? {
                    return Ok(Some(p));
                }
            }
        }
        Ok(None)
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn cycle_group() {
        let c5 = Graph::circulant(5, &[1]).unwrap();
        let g = automorphism_group(&c5).unwrap();
        assert_eq!(g.order(), BigUint::from(10u32));
        assert_eq!(g.orbit_count(), 1);
        assert!(is_vertex_transitive(&c5).unwrap());
    }

    #[test]
    fn complete_graph_group() {
        let k4 = Graph::circulant(4, &[1, 2]).unwrap();
        let g = automorphism_group(&k4).unwrap();
        assert_eq!(g.order(), BigUint::from(24u32));
        assert_eq!(g.orbit_count(), 1);
    }

    #[test]
    fn path_not_transitive() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_vertex_transitive(&p3).unwrap());
        let g = automorphism_group(&p3).unwrap();
        assert_eq!(g.order(), BigUint::from(2u32));
        assert_eq!(g.orbit_count(), 2);
    }

    #[test]
    fn petersen_group() {
        // Petersen graph: outer C5, inner pentagram, spokes.
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
            g.add_edge(i, 5 + i).unwrap();
        }
        let grp = automorphism_group(&g).unwrap();
        assert_eq!(grp.order(), BigUint::from(120u32));
        assert!(is_vertex_transitive(&g).unwrap());
    }

    #[test]
    fn circulants_are_vertex_transitive() {
        for (n, offsets) in [(10usize, vec![2, 3]), (7, vec![1, 2]), (12, vec![3, 4])] {
            let g = Graph::circulant(n, &offsets).unwrap();
            assert!(is_vertex_transitive(&g).unwrap(), "Ci_{n}{offsets:?}");
        }
    }

    #[test]
    fn generators_preserve_edges() {
        let g = Graph::circulant(10, &[2, 3]).unwrap();
        let grp = automorphism_group(&g).unwrap();
        for p in grp.generators() {
            let images: Vec<usize> = p.images().collect();
            assert!(g.is_automorphism(&images));
        }
    }

    #[test]
    fn budget_exhaustion_is_distinct_from_trivial() {
        let g = Graph::circulant(12, &[1, 2, 3]).unwrap();
        let result = automorphism_group_with(
            &g,
            AutLimits {
                max_vertices: 5000,
                node_budget: 1,
            },
        );
        assert!(matches!(result, Err(Error::AutomorphismBudget { .. })));
    }
}
