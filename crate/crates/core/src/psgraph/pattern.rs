//! Small graphs excluded from product set graphs, and subgraph search.

use std::fmt;
use std::str::FromStr;

use crate::error::PslError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    K4,
    Gamma1,
    Gamma2,
    Gamma3,
    Gamma4,
    Gamma5,
}

// 2x3 grid: top row 1 2 3, bottom row 4 5 6
const GRID: [(usize, usize); 7] = [(1, 2), (2, 3), (3, 6), (6, 5), (5, 4), (4, 1), (2, 5)];

impl Pattern {
    pub const ALL: [Pattern; 6] =
        [Pattern::K4, Pattern::Gamma1, Pattern::Gamma2, Pattern::Gamma3, Pattern::Gamma4, Pattern::Gamma5];

    /// Edges on vertices numbered from 1.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self {
            Pattern::K4 => vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
            // square 1234 with a second path 1-5-3
            Pattern::Gamma1 => vec![(1, 2), (2, 3), (3, 4), (4, 1), (1, 5), (5, 3)],
            Pattern::Gamma2 => {
                let mut e = GRID.to_vec();
                e.extend([(1, 7), (7, 3)]);
                e
            }
            // three squares on the common edge 1-2
            Pattern::Gamma3 => vec![(1, 2), (1, 3), (3, 4), (4, 2), (1, 5), (5, 6), (6, 2), (1, 7), (7, 8), (8, 2)],
            Pattern::Gamma4 => {
                let mut e = GRID.to_vec();
                e.push((4, 3));
                e
            }
            // triangular prism
            Pattern::Gamma5 => vec![(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (1, 4), (2, 5), (3, 6)],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.edges().iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0)
    }

    /// Neighbour lists on vertices numbered from 0.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (a, b) in self.edges() {
            adj[a - 1].push(b - 1);
            adj[b - 1].push(a - 1);
        }
        adj
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::K4 => "K4",
            Pattern::Gamma1 => "Gamma1",
            Pattern::Gamma2 => "Gamma2",
            Pattern::Gamma3 => "Gamma3",
            Pattern::Gamma4 => "Gamma4",
            Pattern::Gamma5 => "Gamma5",
        })
    }
}

impl FromStr for Pattern {
    type Err = PslError;

    fn from_str(s: &str) -> Result<Self, PslError> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s) || s.eq_ignore_ascii_case(&p.to_string().replace("Gamma", "G")))
            .ok_or_else(|| PslError::Parse(format!("unknown pattern {s:?}")))
    }
}

/// A (not necessarily induced) embedding of `pat` into the simple graph
/// `adj`: entry `i` is the image of pattern vertex `i + 1`.
pub fn find_pattern(adj: &[Vec<usize>], pat: Pattern) -> Option<Vec<usize>> {
    let padj = pat.adjacency();
    let k = padj.len();
    if k > adj.len() {
        return None;
    }
    // place high-degree vertices first, then always a vertex adjacent to the placed ones
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = padj[v].iter().filter(|&&w| placed[w]).count();
                (links, padj[v].len(), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; adj.len()];
    if place(adj, &padj, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn place(
    adj: &[Vec<usize>],
    padj: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let anchor = padj[v].iter().map(|&w| map[w]).find(|&m| m != usize::MAX);
    let candidates: Vec<usize> = match anchor {
        Some(a) => adj[a].clone(),
        None => (0..adj.len()).collect(),
    };
    for cand in candidates {
        if used[cand] || adj[cand].len() < padj[v].len() {
            continue;
        }
        let fits = padj[v]
            .iter()
            .all(|&w| map[w] == usize::MAX || adj[cand].binary_search(&map[w]).is_ok());
        if !fits {
            continue;
        }
        map[v] = cand;
        used[cand] = true;
        if place(adj, padj, order, depth + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[cand] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(adj: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        adj.into_iter()
            .map(|mut v| {
                v.sort();
                v
            })
            .collect()
    }

    #[test]
    fn self_embeddings() {
        for p in Pattern::ALL {
            let adj = sorted(p.adjacency());
            let m = find_pattern(&adj, p).unwrap();
            for (a, b) in p.edges() {
                assert!(adj[m[a - 1]].contains(&m[b - 1]), "{p}");
            }
        }
        let g1 = sorted(Pattern::Gamma1.adjacency());
        assert_eq!(find_pattern(&g1, Pattern::Gamma1).map(|m| m.len()), Some(5));
    }

    #[test]
    fn sizes() {
        let counts: Vec<(usize, usize)> =
            Pattern::ALL.iter().map(|p| (p.vertex_count(), p.edges().len())).collect();
        assert_eq!(counts, vec![(4, 6), (5, 6), (7, 9), (8, 10), (6, 8), (6, 9)]);
    }

    #[test]
    fn absent() {
        // 6-cycle contains neither K4 nor a prism
        let adj: Vec<Vec<usize>> = (0..6).map(|i| sorted(vec![vec![(i + 1) % 6, (i + 5) % 6]]).concat()).collect();
        let adj = sorted(adj);
        for p in Pattern::ALL {
            assert!(find_pattern(&adj, p).is_none());
        }
        assert_eq!("gamma3".parse::<Pattern>().unwrap(), Pattern::Gamma3);
        assert_eq!("G5".parse::<Pattern>().unwrap(), Pattern::Gamma5);
    }
}
