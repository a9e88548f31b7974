//! Exact exponential-time oracles used to check the spectral bounds.

use super::Graph;
use crate::error::{BoundError, Result};

pub const MAX_ALPHA_VERTICES: usize = 30;
pub const MAX_CHI_VERTICES: usize = 20;

fn masks(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// A maximum independent set, by branch and bound over vertex inclusion.
pub fn max_independent_set(g: &Graph) -> Result<Vec<usize>> {
    if g.n() > MAX_ALPHA_VERTICES {
        return Err(BoundError::TooLarge {
            what: "vertices",
            got: g.n(),
            limit: MAX_ALPHA_VERTICES,
        });
    }
    let adj = masks(g);
    let all = if g.n() == 32 { u32::MAX } else { (1u32 << g.n()) - 1 };
    let mut best = 0u32;
    branch(&adj, all, 0, &mut best);
    Ok((0..g.n()).filter(|&v| best & (1 << v) != 0).collect())
}

fn branch(adj: &[u32], candidates: u32, chosen: u32, best: &mut u32) {
    if chosen.count_ones() + candidates.count_ones() <= best.count_ones() {
        return;
    }
    if candidates == 0 {
        *best = chosen;
        return;
    }
    // branch on the candidate with most candidate neighbours
    let mut pick = candidates.trailing_zeros() as usize;
    let mut pick_deg = 0;
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & candidates).count_ones();
        if d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    if pick_deg == 0 {
        // remaining candidates are pairwise non-adjacent
        let total = chosen | candidates;
        if total.count_ones() > best.count_ones() {
            *best = total;
        }
        return;
    }
    let bit = 1u32 << pick;
    branch(adj, candidates & !bit & !adj[pick], chosen | bit, best);
    branch(adj, candidates & !bit, chosen, best);
}

/// Independence number α(G).
pub fn brute_force_alpha(g: &Graph) -> Result<usize> {
    max_independent_set(g).map(|s| s.len())
}

/// Chromatic number χ(G) by exact backtracking, trying k = 1, 2, … in turn.
pub fn brute_force_chi(g: &Graph) -> Result<usize> {
    if g.n() > MAX_CHI_VERTICES {
        return Err(BoundError::TooLarge {
            what: "vertices",
            got: g.n(),
            limit: MAX_CHI_VERTICES,
        });
    }
    if g.n() == 0 {
        return Ok(0);
    }
    if g.edges().is_empty() {
        return Ok(1);
    }
    let nbrs = g.neighbors();
    // high degree first
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(nbrs[v].len()));
    let mut colour = vec![usize::MAX; g.n()];
    for k in 2..=g.n() {
        if colourable(&nbrs, &order, 0, k, 0, &mut colour) {
            return Ok(k);
        }
    }
    Ok(g.n())
}

fn colourable(nbrs: &[Vec<usize>], order: &[usize], pos: usize, k: usize, used: usize, colour: &mut [usize]) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    // a fresh colour is interchangeable with any other unused one
    for c in 0..k.min(used + 1) {
        if nbrs[v].iter().all(|&w| colour[w] != c) {
            colour[v] = c;
            if colourable(nbrs, order, pos + 1, k, used.max(c + 1), colour) {
                return true;
            }
        }
    }
    colour[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_independent;

    #[test]
    fn alpha_examples() {
        assert_eq!(brute_force_alpha(&Graph::cycle(5)).unwrap(), 2);
        assert_eq!(brute_force_alpha(&Graph::petersen()).unwrap(), 4);
        assert_eq!(brute_force_alpha(&Graph::empty(7)).unwrap(), 7);
        assert_eq!(brute_force_alpha(&Graph::complete(6)).unwrap(), 1);
        let s = max_independent_set(&Graph::petersen()).unwrap();
        assert!(is_independent(&Graph::petersen(), &s).unwrap());
        assert!(matches!(
            brute_force_alpha(&Graph::empty(31)),
            Err(BoundError::TooLarge { .. })
        ));
        assert_eq!(brute_force_alpha(&Graph::empty(30)).unwrap(), 30);
    }

    #[test]
    fn pentagon_alpha_by_enumeration() {
        let g = Graph::cycle(5);
        let best = (0u32..32)
            .filter(|&mask| {
                let s: Vec<usize> = (0..5).filter(|&v| mask & (1 << v) != 0).collect();
                is_independent(&g, &s).unwrap()
            })
            .map(|m| m.count_ones())
            .max()
            .unwrap();
        assert_eq!(best, 2);
    }

    #[test]
    fn chi_examples() {
        assert_eq!(brute_force_chi(&Graph::cycle(5)).unwrap(), 3);
        assert_eq!(brute_force_chi(&Graph::cycle(6)).unwrap(), 2);
        assert_eq!(brute_force_chi(&Graph::petersen()).unwrap(), 3);
        assert_eq!(brute_force_chi(&Graph::complete(4)).unwrap(), 4);
        assert_eq!(brute_force_chi(&Graph::empty(3)).unwrap(), 1);
        assert!(brute_force_chi(&Graph::empty(21)).is_err());
    }
}
