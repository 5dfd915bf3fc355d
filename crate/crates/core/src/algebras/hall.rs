//! Hall bases of free nilpotent Lie lattices and the collection (rewriting)
//! process that expresses arbitrary brackets of basis elements in the basis.
//!
//! Convention: left-normed Hall words ordered by (weight, creation index);
//! `[a, b]` is a Hall element iff `a > b` and, when `a = [x, y]`, `y <= b`.

use std::collections::HashMap;

/// Index into the Hall element table.
type Id = usize;

#[derive(Clone, Copy, Debug)]
enum Node {
    Leaf,
    Pair(Id, Id),
}

pub(crate) struct HallBasis {
    class: u32,
    weights: Vec<u32>,
    nodes: Vec<Node>,
    pair_index: HashMap<(Id, Id), Id>,
}

/// Sparse integer combination of Hall basis elements.
pub(crate) type Combo = Vec<(Id, i64)>;

impl HallBasis {
    pub fn new(class: u32, gens: usize) -> HallBasis {
        let mut basis = HallBasis {
            class,
            weights: vec![1; gens],
            nodes: vec![Node::Leaf; gens],
            pair_index: HashMap::new(),
        };
        for w in 2..=class {
            // the table only ever grows at the back, so index bounds taken
            // before the loop stay valid
            let len = basis.nodes.len();
            for a in 0..len {
                for b in 0..len {
                    if basis.weights[a] + basis.weights[b] != w || b >= a {
                        continue;
                    }
                    let ok = match basis.nodes[a] {
                        Node::Leaf => true,
                        Node::Pair(_, y) => y <= b,
                    };
                    if ok {
                        let id = basis.nodes.len();
                        basis.weights.push(w);
                        basis.nodes.push(Node::Pair(a, b));
                        basis.pair_index.insert((a, b), id);
                    }
                }
            }
        }
        basis
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn weight(&self, id: Id) -> u32 {
        self.weights[id]
    }

    /// Sizes of the weight-graded blocks `1..=class`.
    pub fn graded_ranks(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.class as usize];
        for &w in &self.weights {
            out[(w - 1) as usize] += 1;
        }
        out
    }

    /// `[u, v]` expanded in the Hall basis.
    pub fn bracket(&self, u: Id, v: Id, memo: &mut HashMap<(Id, Id), Combo>) -> Combo {
        if u == v {
            return vec![];
        }
        if self.weights[u] + self.weights[v] > self.class {
            return vec![];
        }
        if u < v {
            return negate(self.bracket(v, u, memo));
        }
        if let Some(hit) = memo.get(&(u, v)) {
            return hit.clone();
        }
        let result = match self.nodes[u] {
            Node::Leaf => vec![(self.pair_index[&(u, v)], 1)],
            Node::Pair(x, y) => {
                if y <= v {
                    vec![(self.pair_index[&(u, v)], 1)]
                } else {
                    // [[x,y],v] = [[x,v],y] + [x,[y,v]]
                    let mut acc: HashMap<Id, i64> = HashMap::new();
                    for (h, c) in self.bracket(x, v, memo) {
                        for (g, c2) in self.bracket(h, y, memo) {
                            *acc.entry(g).or_insert(0) += c * c2;
                        }
                    }
                    for (h, c) in self.bracket(y, v, memo) {
                        for (g, c2) in self.bracket(x, h, memo) {
                            *acc.entry(g).or_insert(0) += c * c2;
                        }
                    }
                    let mut out: Combo =
                        acc.into_iter().filter(|(_, c)| *c != 0).collect();
                    out.sort_unstable();
                    out
                }
            }
        };
        memo.insert((u, v), result.clone());
        result
    }
}

fn negate(combo: Combo) -> Combo {
    combo.into_iter().map(|(id, c)| (id, -c)).collect()
}

/// All structure constants `[e_i, e_j]` for `i < j` on the Hall basis.
pub(crate) fn structure_constants(basis: &HallBasis) -> Vec<(usize, usize, Combo)> {
    let mut memo = HashMap::new();
    let n = basis.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let combo = basis.bracket(i, j, &mut memo);
            if !combo.is_empty() {
                out.push((i, j, combo));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hall_sizes_match_witt() {
        for (c, d) in [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3), (5, 2)] {
            let basis = HallBasis::new(c as u32, d);
            let witt = super::super::witt_ranks(c, d);
            assert_eq!(basis.len() as u64, witt[0], "rank of f_{{{c},{d}}}");
            let graded = basis.graded_ranks();
            for i in 1..=c {
                let block: u64 = graded[..i].iter().map(|&x| x as u64).sum();
                assert_eq!(block, witt[0] - witt[i], "graded ranks up to weight {i}");
            }
        }
    }

    #[test]
    fn f22_is_heisenberg() {
        let basis = HallBasis::new(2, 2);
        assert_eq!(basis.len(), 3);
        let sc = structure_constants(&basis);
        assert_eq!(sc, vec![(0, 1, vec![(2, -1)])]);
    }
}
