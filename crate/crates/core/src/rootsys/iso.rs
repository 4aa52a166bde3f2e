use super::RootPoset;

fn signature(p: &RootPoset, a: usize) -> (usize, usize, usize, usize) {
    (
        p.up_count(a),
        p.down_count(a),
        p.lower_covers(a).len(),
        p.upper_covers(a).len(),
    )
}

/// An order isomorphism `P → Q` found by backtracking, as `witness[a] = b`.
pub fn poset_iso(p: &RootPoset, q: &RootPoset) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() || p.covers().len() != q.covers().len() {
        return None;
    }
    let sp: Vec<_> = (0..n).map(|a| signature(p, a)).collect();
    let sq: Vec<_> = (0..n).map(|b| signature(q, b)).collect();
    let mut a_sorted = sp.clone();
    let mut b_sorted = sq.clone();
    a_sorted.sort_unstable();
    b_sorted.sort_unstable();
    if a_sorted != b_sorted {
        return None;
    }
    // assign the most constrained elements (largest up-sets first) early
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| (std::cmp::Reverse(sp[a].0), a));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(p, q, &sp, &sq, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    p: &RootPoset,
    q: &RootPoset,
    sp: &[(usize, usize, usize, usize)],
    sq: &[(usize, usize, usize, usize)],
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&a) = order.get(k) else {
        return true;
    };
    for b in 0..q.len() {
        if used[b] || sp[a] != sq[b] {
            continue;
        }
        let consistent = order[..k].iter().all(|&c| {
            let d = map[c];
            p.leq(a, c) == q.leq(b, d) && p.leq(c, a) == q.leq(d, b)
        });
        if !consistent {
            continue;
        }
        map[a] = b;
        used[b] = true;
        if extend(p, q, sp, sq, order, k + 1, map, used) {
            return true;
        }
        used[b] = false;
        map[a] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::tests::{chain, seven, vee};
    use super::*;

    fn is_iso(p: &RootPoset, q: &RootPoset, w: &[usize]) -> bool {
        (0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(w[a], w[b])))
    }

    #[test]
    fn identity() {
        let s = seven();
        let w = poset_iso(&s, &s).unwrap();
        assert!(is_iso(&s, &s, &w));
    }

    #[test]
    fn chain_is_not_vee() {
        assert!(poset_iso(&chain(3), &vee()).is_none());
    }

    #[test]
    fn swapped_halves() {
        let s = seven();
        fn swap(id: &str) -> &str {
            match id {
            "p1" => "p3",
            "p2" => "p4",
            "p3" => "p1",
            "p4" => "p2",
            "q1" => "q2",
            "q2" => "q1",
            other => other,
            }
        }
        let ids: Vec<&str> = s.ids().iter().map(|i| swap(i)).collect();
        let rel: Vec<(&str, &str)> = s
            .covers()
            .iter()
            .map(|&(a, b)| (s.id(a), s.id(b)))
            .collect();
        let copy = RootPoset::new(&ids, &rel).unwrap();
        assert!(poset_iso(&s, &copy).is_some());
        // the swap itself, read as a map between the two labellings
        let w: Vec<usize> = (0..s.len())
            .map(|a| s.index_of(swap(s.id(a))).unwrap())
            .collect();
        assert!(is_iso(&s, &s, &w));
        assert_ne!(w, (0..s.len()).collect::<Vec<_>>());
    }
}
