//! Small enumeration helpers: multisets, subsets, set partitions.

/// Nondecreasing sequences of length `len` over `0..dim`.
pub fn multisets(dim: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(dim: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            go(dim, len, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(dim, len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

/// All ordered tuples of length `len` over `0..dim`.
pub fn tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Splits positions `0..n` by the bits of `mask` into (selected, rest).
pub fn split_mask(n: usize, mask: u32) -> (Vec<usize>, Vec<usize>) {
    (0..n).partition(|&i| mask & (1 << i) != 0)
}

/// Set partitions of `0..n`. Blocks are increasing and ordered by their
/// smallest element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for p in out {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(i);
                next.push(q);
            }
            let mut q = p;
            q.push(vec![i]);
            next.push(q);
        }
        out = next;
    }
    out
}
