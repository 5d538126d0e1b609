#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use sfborel::SquareFreeMonomial;

/// Every square-free monomial whose largest index is at most `n`.
pub fn all_monomials(n: usize) -> Vec<SquareFreeMonomial> {
    (1u32..(1 << n))
        .map(|mask| {
            let ix = (1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
            SquareFreeMonomial::new(ix).unwrap()
        })
        .collect()
}

/// Monomials reachable from `start` through single Borel moves, by BFS.
pub fn borel_closure_bfs(start: &SquareFreeMonomial) -> HashSet<SquareFreeMonomial> {
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(m) = queue.pop_front() {
        for next in m.borel_moves() {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// All `w`-subsets of `1..=n`.
pub fn subsets(n: usize, w: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, w: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == w {
            out.push(cur.clone());
            return;
        }
        for v in from..=n {
            cur.push(v);
            go(n, w, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, w, 1, &mut Vec::new(), &mut out);
    out
}
