//! Breadth-first enumeration of the reachability relation generated by
//! tilting transformations, with isomorphism deduplication.
//!
//! Reachability is treated as directed: moves are not assumed invertible.
//! Reports record whether the explored region is closed under reverse
//! reachability (`symmetric`), which is expected but never assumed.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::invariants::{signature, InvariantSignature};
use crate::ribbon::{BrauerComplex, EdgeId};
use crate::tilting::apply_move;

/// Explored move graph: one node per isomorphism class.
pub struct OrbitGraph {
    pub nodes: Vec<BrauerComplex>,
    pub index: HashMap<Vec<u8>, usize>,
    /// Outgoing transitions `(move edge, target node)` per node.
    pub edges: Vec<Vec<(EdgeId, usize)>>,
    pub exhausted: bool,
}

/// BFS over all single-edge moves from `seed`, deduplicating by canonical
/// form, up to `max_nodes` distinct classes.
pub fn explore_graph(seed: &BrauerComplex, max_nodes: usize) -> OrbitGraph {
    let mut nodes = vec![seed.clone()];
    let mut index = HashMap::new();
    index.insert(seed.canonical_key(), 0);
    let mut edges: Vec<Vec<(EdgeId, usize)>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    let mut exhausted = true;
    while let Some(i) = queue.pop_front() {
        let b = nodes[i].clone();
        for e in b.complex().edges() {
            let Ok((next, _)) = apply_move(&b, e) else {
                continue; // single-edge complexes admit no moves
            };
            let key = next.canonical_key();
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if nodes.len() >= max_nodes {
                        exhausted = false;
                        continue;
                    }
                    let j = nodes.len();
                    index.insert(key, j);
                    nodes.push(next);
                    edges.push(Vec::new());
                    queue.push_back(j);
                    j
                }
            };
            edges[i].push((e, j));
        }
    }
    OrbitGraph {
        nodes,
        index,
        edges,
        exhausted,
    }
}

impl OrbitGraph {
    /// Whether every explored node can reach node `target` inside the
    /// explored region.
    pub fn all_reach(&self, target: usize) -> bool {
        let n = self.nodes.len();
        let mut rev = vec![Vec::new(); n];
        for (i, outs) in self.edges.iter().enumerate() {
            for &(_, j) in outs {
                rev[j].push(i);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![target];
        seen[target] = true;
        while let Some(v) = stack.pop() {
            for &u in &rev[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Shortest move sequence from node 0 to `target`, as edge ids.
    pub fn path_to(&self, target: usize) -> Option<Vec<EdgeId>> {
        if target == 0 {
            return Some(Vec::new());
        }
        let n = self.nodes.len();
        let mut prev: Vec<Option<(usize, EdgeId)>> = vec![None; n];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &(e, j) in &self.edges[i] {
                if j != 0 && prev[j].is_none() {
                    prev[j] = Some((i, e));
                    if j == target {
                        let mut path = Vec::new();
                        let mut cur = target;
                        while cur != 0 {
                            let (p, e) = prev[cur].unwrap();
                            path.push(e);
                            cur = p;
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(j);
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    /// FNV digest of the seed's canonical encoding.
    pub seed_digest: u64,
    /// Digests of every canonical form reached (including the seed).
    pub members: Vec<u64>,
    pub size: usize,
    /// How often each edge id was moved across all explored transitions.
    pub move_stats: BTreeMap<EdgeId, usize>,
    pub signature: InvariantSignature,
    /// Whether the explored set is closed under reverse reachability.
    pub symmetric: bool,
    pub frontier_exhausted: bool,
}

/// Explores the orbit of `b` under tilting moves, stopping after
/// `max_size` distinct isomorphism classes.
pub fn explore(b: &BrauerComplex, max_size: usize) -> OrbitReport {
    let graph = explore_graph(b, max_size);
    let mut move_stats = BTreeMap::new();
    for outs in &graph.edges {
        for &(e, _) in outs {
            *move_stats.entry(e).or_insert(0) += 1;
        }
    }
    let members: Vec<u64> = graph
        .nodes
        .iter()
        .map(|n| n.canonical_form().digest())
        .collect();
    OrbitReport {
        seed_digest: members[0],
        size: members.len(),
        members,
        move_stats,
        signature: signature(b),
        symmetric: graph.all_reach(0),
        frontier_exhausted: graph.exhausted,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusGroup {
    pub signature: InvariantSignature,
    pub class_count: usize,
    pub orbit_count: usize,
    /// True when the invariants separate the orbits in this group, i.e.
    /// the group is a single orbit.
    pub separated: bool,
    /// Every orbit in the group is strongly connected under moves.
    pub symmetric: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusTable {
    pub edge_budget: usize,
    pub mult_budget: u32,
    pub groups: Vec<CensusGroup>,
}

/// Union-find over the move graph of one signature group; returns orbit ids
/// per member and whether all orbits are strongly connected.
pub fn orbit_partition(members: &[BrauerComplex]) -> (Vec<usize>, bool) {
    let index: HashMap<Vec<u8>, usize> = members
        .iter()
        .enumerate()
        .map(|(i, b)| (b.canonical_key(), i))
        .collect();
    let n = members.len();
    let mut adj = vec![Vec::new(); n];
    let mut radj = vec![Vec::new(); n];
    for (i, b) in members.iter().enumerate() {
        for e in b.complex().edges() {
            let Ok((next, _)) = apply_move(b, e) else {
                continue;
            };
            let j = *index
                .get(&next.canonical_key())
                .expect("moves stay within the enumerated signature group");
            adj[i].push(j);
            radj[j].push(i);
        }
    }
    // weakly connected components
    let mut comp = vec![usize::MAX; n];
    let mut next_comp = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = next_comp;
        while let Some(v) = stack.pop() {
            for &w in adj[v].iter().chain(&radj[v]) {
                if comp[w] == usize::MAX {
                    comp[w] = next_comp;
                    stack.push(w);
                }
            }
        }
        next_comp += 1;
    }
    // strong connectivity inside each weak component
    let mut symmetric = true;
    'outer: for c in 0..next_comp {
        let members_c: Vec<usize> = (0..n).filter(|&i| comp[i] == c).collect();
        if members_c.len() <= 1 {
            continue;
        }
        let start = members_c[0];
        for dir in [&adj, &radj] {
            let mut seen = vec![false; n];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &dir[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if members_c.iter().any(|&i| !seen[i]) {
                symmetric = false;
                continue 'outer;
            }
        }
    }
    (comp, symmetric)
}

/// Enumerates all connected Brauer complexes within the budgets, groups them
/// by invariant signature, and reports the orbit structure of each group.
pub fn census(edge_budget: usize, mult_budget: u32) -> CensusTable {
    let all = crate::enumerate::all_brauer_complexes(edge_budget, mult_budget, false);
    let mut groups: BTreeMap<InvariantSignature, Vec<BrauerComplex>> = BTreeMap::new();
    for b in all {
        groups.entry(signature(&b)).or_default().push(b);
    }
    let groups = groups
        .into_iter()
        .map(|(sig, members)| {
            let (comp, symmetric) = orbit_partition(&members);
            let orbit_count = comp.iter().max().map_or(0, |m| m + 1);
            CensusGroup {
                signature: sig,
                class_count: members.len(),
                orbit_count,
                separated: orbit_count == 1,
                symmetric,
            }
        })
        .collect();
    CensusTable {
        edge_budget,
        mult_budget,
        groups,
    }
}

impl CensusTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,perimeters,mults,genus,bipartite,center_dim,classes,orbits,separated,symmetric\n",
        );
        for g in &self.groups {
            let s = &g.signature;
            let perims: Vec<String> = s.perimeters.iter().map(usize::to_string).collect();
            let mults: Vec<String> = s.mults.iter().map(u32::to_string).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                s.n,
                perims.join(" "),
                mults.join(" "),
                s.genus,
                s.bipartite,
                s.center_dim,
                g.class_count,
                g.orbit_count,
                g.separated,
                g.symmetric
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::*;

    #[test]
    fn decagon_orbit_is_a_single_point() {
        let report = explore(&decagon_c1(), 1000);
        assert!(report.frontier_exhausted);
        assert_eq!(report.size, 1);
        let c2_digest = decagon_c2().canonical_form().digest();
        assert!(!report.members.contains(&c2_digest));
    }

    #[test]
    fn star_orbit_equals_its_invariant_class() {
        // genus-0 complexes with 3 edges and one face of perimeter 6 are
        // exactly the two trees; the orbit of the star must cover both
        let report = explore(&star3(), 1000);
        assert!(report.frontier_exhausted);
        assert_eq!(report.size, 2);
        assert!(report.symmetric);
    }

    #[test]
    fn orbit_members_share_the_seed_signature() {
        for seed in [theta(), star3(), loop_with_leaf()] {
            let graph = explore_graph(&seed, 5000);
            let sig = signature(&seed);
            for node in &graph.nodes {
                assert_eq!(signature(node), sig);
            }
        }
    }

    #[test]
    fn census_single_edge() {
        let table = census(1, 1);
        assert_eq!(table.groups.len(), 2); // segment and loop
        for g in &table.groups {
            assert_eq!(g.class_count, 1);
            assert_eq!(g.orbit_count, 1);
        }
    }

    #[test]
    fn census_three_edges_genus_zero_groups_are_single_orbits() {
        let table = census(3, 1);
        for g in &table.groups {
            if g.signature.genus == 0 {
                assert!(g.separated, "group {:?} splits", g.signature);
            }
        }
    }

    #[test]
    fn census_covers_theta_bipartite_split() {
        let table = census(3, 1);
        let theta_sig = signature(&theta());
        let loop_sig = signature(&theta_loop());
        // the two genus-1 theta-shaped complexes are separated by
        // bipartiteness, hence land in different signature groups
        assert_ne!(theta_sig, loop_sig);
        let g1 = table.groups.iter().find(|g| g.signature == theta_sig);
        let g2 = table.groups.iter().find(|g| g.signature == loop_sig);
        assert!(g1.is_some() && g2.is_some());
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let report = explore(&star3(), 1);
        assert!(!report.frontier_exhausted);
        assert_eq!(report.size, 1);
    }
}

