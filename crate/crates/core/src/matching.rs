//! Bipartite matching by augmenting paths. Graph sizes here are tiny.

/// Maximum matching of left vertices `0..adj.len()` into right vertices
/// `0..n_right`. Returns `match_left[i] = Some(j)`.
pub fn maximum_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    for u in 0..adj.len() {
        let mut seen = vec![false; n_right];
        augment(u, adj, &mut seen, &mut match_right);
    }
    let mut match_left = vec![None; adj.len()];
    for (v, u) in match_right.iter().enumerate() {
        if let Some(u) = u {
            match_left[*u] = Some(v);
        }
    }
    match_left
}

fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if match_right[v].is_none_or(|w| augment(w, adj, seen, match_right)) {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// A perfect matching between two sides of equal size, as `left -> right`.
pub fn perfect_matching(adj: &[Vec<usize>], n_right: usize) -> Option<Vec<usize>> {
    if adj.len() != n_right {
        return None;
    }
    maximum_matching(adj, n_right).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_perfect_matching_needing_augmentation() {
        // greedy 0->0 must be undone
        let adj = vec![vec![0, 1], vec![0]];
        assert_eq!(perfect_matching(&adj, 2), Some(vec![1, 0]));
    }

    #[test]
    fn reports_hall_violation() {
        let adj = vec![vec![0], vec![0], vec![0, 1, 2]];
        assert_eq!(perfect_matching(&adj, 3), None);
        let m = maximum_matching(&adj, 3);
        assert_eq!(m.iter().flatten().count(), 2);
    }

    #[test]
    fn empty_graph_matches_trivially() {
        assert_eq!(perfect_matching(&[], 0), Some(vec![]));
        assert_eq!(perfect_matching(&[vec![]], 1), None);
    }
}
