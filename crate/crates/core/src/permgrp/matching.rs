//! Maximum bipartite matching by augmenting paths (Kuhn's algorithm).
//!
//! Left vertices are processed in index order and each adjacency list is
//! tried in the order given, so the result is deterministic and favours the
//! earliest edges.

/// Returns `matched[left] = Some(right)` for a maximum matching.
pub fn max_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let mut right_to_left: Vec<Option<usize>> = vec![None; n_right];
    for u in 0..adj.len() {
        let mut visited = vec![false; n_right];
        augment(u, adj, &mut visited, &mut right_to_left);
    }
    let mut left_to_right = vec![None; adj.len()];
    for (v, u) in right_to_left.iter().enumerate() {
        if let Some(u) = u {
            left_to_right[*u] = Some(v);
        }
    }
    left_to_right
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    visited: &mut [bool],
    right_to_left: &mut [Option<usize>],
) -> bool {
    for &v in &adj[u] {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        if right_to_left[v].is_none_or(|w| augment(w, adj, visited, right_to_left)) {
            right_to_left[v] = Some(u);
            return true;
        }
    }
    false
}
