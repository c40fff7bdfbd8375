#![allow(dead_code)]

use qlat::lattice::Poset;

/// Every order-exact image table `Q_n -> Q_N`, found by plain backtracking
/// over source masks with no use of good sequences.
pub fn brute_embeddings(n: usize, big: usize) -> Vec<Vec<u64>> {
    fn rec(n: usize, big: usize, img: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let s = img.len() as u64;
        if s == 1 << n {
            out.push(img.clone());
            return;
        }
        for t in 0..1u64 << big {
            let ok = img.iter().enumerate().all(|(p, &u)| {
                let p = p as u64;
                u != t
                    && ((p & !s == 0) == (u & !t == 0))
                    && ((s & !p == 0) == (t & !u == 0))
            });
            if ok {
                img.push(t);
                rec(n, big, img, out);
                img.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, big, &mut Vec::new(), &mut out);
    out
}

/// Distinct image families of [`brute_embeddings`], each as a cell bitmask
/// (requires `2^N <= 64`).
pub fn brute_copy_masks(n: usize, big: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = brute_embeddings(n, big)
        .into_iter()
        .map(|img| img.iter().fold(0u64, |m, &t| m | 1 << t))
        .collect();
    masks.sort_unstable();
    masks.dedup();
    masks
}

/// Every labeled poset on `size` elements.
pub fn all_posets(size: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|a| (0..size).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                leq[a * size + b] = true;
            }
        }
        if let Ok(p) = Poset::from_matrix(size, leq) {
            out.push(p);
        }
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Whether the cells in `allowed` (a bitmask over `Q_N`, `N <= 6`) contain a
/// copy of `Q_n`, by backtracking over image tables restricted to `allowed`.
pub fn has_copy_within(n: usize, big: usize, allowed: u64) -> bool {
    fn rec(n: usize, big: usize, allowed: u64, img: &mut Vec<u64>) -> bool {
        let s = img.len() as u64;
        if s == 1 << n {
            return true;
        }
        for t in 0..1u64 << big {
            if allowed >> t & 1 == 0 {
                continue;
            }
            let ok = img.iter().enumerate().all(|(p, &u)| {
                let p = p as u64;
                u != t
                    && ((p & !s == 0) == (u & !t == 0))
                    && ((s & !p == 0) == (t & !u == 0))
            });
            if ok {
                img.push(t);
                if rec(n, big, allowed, img) {
                    return true;
                }
                img.pop();
            }
        }
        false
    }
    rec(n, big, allowed, &mut Vec::new())
}
