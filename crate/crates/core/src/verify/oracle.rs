//! Exact minimum path decomposition by exhaustive search, for small graphs.
//!
//! The search value of an edge set is one more than the best value of what
//! is left after removing some path through its lowest edge (that edge has
//! to be on some path). Edge sets are bitmasks, values are memoized per
//! mask, and disconnected masks are split into their components first.

use std::collections::HashMap;

use thiserror::Error;

use crate::decompose::Decomposition;
use crate::graph::{Graph, Path, VertexId};

pub const DEFAULT_ORACLE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{m} edges exceeds the oracle limit of {limit}")]
    TooLarge { m: usize, limit: usize },
}

struct Search {
    ends: Vec<(VertexId, VertexId)>,
    /// Per vertex: (neighbor, edge index).
    adj: Vec<Vec<(VertexId, usize)>>,
    memo: HashMap<u32, usize>,
}

impl Search {
    fn new(g: &Graph) -> Self {
        let ends: Vec<(VertexId, VertexId)> = g.edges().map(|e| (e.lo(), e.hi())).collect();
        let mut adj = vec![Vec::new(); g.n()];
        for (i, &(a, b)) in ends.iter().enumerate() {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        Self {
            ends,
            adj,
            memo: HashMap::new(),
        }
    }

    fn degree(&self, mask: u32, v: VertexId) -> usize {
        self.adj[v]
            .iter()
            .filter(|&&(_, i)| mask >> i & 1 == 1)
            .count()
    }

    fn odd_bound(&self, mask: u32) -> usize {
        let odd = (0..self.adj.len())
            .filter(|&v| self.degree(mask, v) % 2 == 1)
            .count();
        (odd / 2).max(usize::from(mask != 0))
    }

    /// Splits a mask into the masks of its connected pieces.
    fn pieces(&self, mask: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut left = mask;
        while left != 0 {
            let seed = left.trailing_zeros() as usize;
            let mut piece = 1u32 << seed;
            let mut stack = vec![self.ends[seed].0, self.ends[seed].1];
            while let Some(v) = stack.pop() {
                for &(w, i) in &self.adj[v] {
                    if left >> i & 1 == 1 && piece >> i & 1 == 0 {
                        piece |= 1 << i;
                        stack.push(w);
                    }
                }
            }
            left &= !piece;
            out.push(piece);
        }
        out
    }

    /// Every simple path inside `mask` through its lowest edge, as
    /// (vertex sequence, edge mask).
    fn paths_through_lowest(&self, mask: u32) -> Vec<(Vec<VertexId>, u32)> {
        let e = mask.trailing_zeros() as usize;
        let (a, b) = self.ends[e];
        let mut lefts = Vec::new();
        self.arms(mask & !(1 << e), a, 1, &mut vec![b, a], 0, &mut lefts);
        let mut out = Vec::new();
        for (left, lmask) in lefts {
            // `left` runs from a outward; the path is reverse(left) then b...
            let mut prefix: Vec<VertexId> = left.iter().rev().copied().collect();
            prefix.push(b);
            let mut rights = Vec::new();
            let mut visited = prefix.clone();
            let base = visited.len() - 1;
            self.arms(
                mask & !(1 << e) & !lmask,
                b,
                base,
                &mut visited,
                0,
                &mut rights,
            );
            for (right, rmask) in rights {
                let mut seq = prefix.clone();
                seq.extend_from_slice(&right[1..]);
                out.push((seq, lmask | rmask | 1 << e));
            }
        }
        out
    }

    /// All simple extensions from `at` inside `mask` avoiding `visited`,
    /// each reported as `visited[base..]` and the edge mask added so far.
    fn arms(
        &self,
        mask: u32,
        at: VertexId,
        base: usize,
        visited: &mut Vec<VertexId>,
        used: u32,
        out: &mut Vec<(Vec<VertexId>, u32)>,
    ) {
        out.push((visited[base..].to_vec(), used));
        for &(w, i) in &self.adj[at] {
            if mask >> i & 1 == 1 && !visited.contains(&w) {
                visited.push(w);
                self.arms(mask & !(1 << i), w, base, visited, used | 1 << i, out);
                visited.pop();
            }
        }
    }

    fn solve(&mut self, mask: u32) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&v) = self.memo.get(&mask) {
            return v;
        }
        let pieces = self.pieces(mask);
        let value = if pieces.len() > 1 {
            pieces.into_iter().map(|p| self.solve(p)).sum()
        } else {
            let floor = self.odd_bound(mask);
            let mut best = usize::MAX;
            for (_, pmask) in self.paths_through_lowest(mask) {
                best = best.min(1 + self.solve(mask & !pmask));
                if best == floor {
                    break;
                }
            }
            best
        };
        self.memo.insert(mask, value);
        value
    }

    fn witness(&mut self, mask: u32, out: &mut Vec<Path>) {
        if mask == 0 {
            return;
        }
        let pieces = self.pieces(mask);
        if pieces.len() > 1 {
            for p in pieces {
                self.witness(p, out);
            }
            return;
        }
        let target = self.solve(mask);
        for (seq, pmask) in self.paths_through_lowest(mask) {
            if 1 + self.solve(mask & !pmask) == target {
                out.push(Path::unchecked(seq));
                self.witness(mask & !pmask, out);
                return;
            }
        }
        unreachable!("memoized value without a witness");
    }
}

/// Exact minimum number of paths partitioning the edges of `g`, with one
/// optimal decomposition. Refuses graphs with more than `limit` edges.
pub fn minimum_decomposition(
    g: &Graph,
    limit: usize,
) -> Result<(usize, Decomposition), OracleError> {
    if g.m() > limit || g.m() > 32 {
        return Err(OracleError::TooLarge { m: g.m(), limit });
    }
    let mut s = Search::new(g);
    let full = if g.m() == 32 {
        u32::MAX
    } else {
        (1u32 << g.m()) - 1
    };
    let size = s.solve(full);
    let mut paths = Vec::with_capacity(size);
    s.witness(full, &mut paths);
    let claimed_bound = g.non_isolated().count() / 2;
    Ok((
        size,
        Decomposition {
            paths,
            claimed_bound,
            bound_met: size <= claimed_bound,
        },
    ))
}
