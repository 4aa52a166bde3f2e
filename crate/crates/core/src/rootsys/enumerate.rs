//! Generation of finite roots.
//!
//! The Hasse diagram of a finite root is a rooted tree with the top as its
//! root, so roots up to isomorphism are exactly unlabelled rooted trees.

use std::collections::BTreeSet;

use rand::Rng;

use super::RootPoset;

/// Parent array: `parent[0]` is unused (node 0 is the top).
fn from_parents(parents: &[usize]) -> RootPoset {
    let ids: Vec<String> = (0..parents.len()).map(|i| format!("n{i}")).collect();
    let pairs: Vec<(usize, usize)> = (1..parents.len()).map(|i| (i, parents[i])).collect();
    RootPoset::from_indices(ids, &pairs).expect("a rooted tree is a partial order")
}

/// Canonical encoding of the subtree at `v` (sorted child encodings).
fn encode(children: &[Vec<usize>], v: usize) -> String {
    let mut parts: Vec<String> = children[v].iter().map(|&c| encode(children, c)).collect();
    parts.sort_unstable();
    format!("({})", parts.concat())
}

fn children_of(parents: &[usize]) -> Vec<Vec<usize>> {
    let mut ch = vec![Vec::new(); parents.len()];
    for (i, &p) in parents.iter().enumerate().skip(1) {
        ch[p].push(i);
    }
    ch
}

/// Decodes a canonical encoding back into a parent array.
fn decode(code: &str) -> Vec<usize> {
    let mut parents = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for c in code.chars() {
        match c {
            '(' => {
                let id = parents.len();
                parents.push(stack.last().copied().unwrap_or(0));
                stack.push(id);
            }
            ')' => {
                stack.pop();
            }
            _ => unreachable!(),
        }
    }
    parents
}

/// Every finite root with at most `max_size` elements, one per isomorphism
/// class, ordered by size and then by canonical encoding.
pub fn all_roots(max_size: usize) -> Vec<RootPoset> {
    let mut out = Vec::new();
    if max_size == 0 {
        return out;
    }
    let mut level: BTreeSet<String> = BTreeSet::from(["()".to_string()]);
    for size in 1..=max_size {
        out.extend(level.iter().map(|c| from_parents(&decode(c))));
        if size == max_size {
            break;
        }
        let mut next = BTreeSet::new();
        for code in &level {
            let parents = decode(code);
            for v in 0..parents.len() {
                let mut grown = parents.clone();
                grown.push(v);
                next.insert(encode(&children_of(&grown), 0));
            }
        }
        level = next;
    }
    out
}

/// A uniformly random recursive tree on `size ≥ 1` nodes, as a root.
pub fn random_root<R: Rng + ?Sized>(rng: &mut R, size: usize) -> RootPoset {
    assert!(size >= 1);
    let mut parents = vec![0];
    for i in 1..size {
        parents.push(rng.gen_range(0..i));
    }
    from_parents(&parents)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_rooted_tree_numbers() {
        let roots = all_roots(7);
        let mut counts = [0usize; 8];
        for r in &roots {
            assert!(r.is_root());
            counts[r.len()] += 1;
        }
        assert_eq!(&counts[1..], &[1, 1, 2, 4, 9, 20, 48]);
    }

    #[test]
    fn decode_inverts_encode() {
        for r in all_roots(6) {
            let parents: Vec<usize> = (0..r.len())
                .map(|i| r.upper_covers(i).first().copied().unwrap_or(0))
                .collect();
            let code = encode(&children_of(&parents), 0);
            assert_eq!(encode(&children_of(&decode(&code)), 0), code);
        }
    }
}
