//! Small graph utilities over adjacency lists indexed by `usize`.

use std::collections::VecDeque;

/// Strongly connected components (iterative Tarjan). Components are returned
/// in reverse topological order: a component appears before every component
/// that can reach it.
pub fn tarjan_scc(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut sccs = Vec::new();
    let mut counter = 0usize;
    // (node, next child position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, pos)) = call.last() {
            if pos < succ[v].len() {
                let w = succ[v][pos];
                call.last_mut().expect("non-empty call stack").1 += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    sccs.push(comp);
                }
            }
        }
    }
    sccs
}

/// States reachable from `sources`.
pub fn reachable(succ: &[Vec<usize>], sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; succ.len()];
    let mut queue = VecDeque::new();
    for s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &succ[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// States that can reach some state in `targets`.
pub fn can_reach(succ: &[Vec<usize>], targets: &[bool]) -> Vec<bool> {
    let pred = reverse(succ);
    reachable(&pred, (0..succ.len()).filter(|&s| targets[s]))
}

pub fn reverse(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut pred = vec![Vec::new(); succ.len()];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            pred[w].push(v);
        }
    }
    pred
}

/// True iff the component has an internal edge (more than one state, or a
/// self-loop).
pub fn is_nontrivial(succ: &[Vec<usize>], comp: &[usize]) -> bool {
    comp.len() > 1 || succ[comp[0]].contains(&comp[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scc_order_is_reverse_topological() {
        // 0 -> 1 <-> 2 -> 3 (self-loop)
        let succ = vec![vec![1], vec![2], vec![1, 3], vec![3]];
        let sccs = tarjan_scc(&succ);
        assert_eq!(sccs, vec![vec![3], vec![1, 2], vec![0]]);
        assert!(is_nontrivial(&succ, &[3]));
        assert!(!is_nontrivial(&succ, &[0]));
    }

    #[test]
    fn reachability() {
        let succ = vec![vec![1], vec![], vec![0]];
        assert_eq!(reachable(&succ, [0]), vec![true, true, false]);
        assert_eq!(
            can_reach(&succ, &[false, true, false]),
            vec![true, true, true]
        );
    }
}
