//! Lexicographic ranking of permutations of `[n]`, used to index chambers.

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Rank of `order` (a permutation of `1..=n`) among all permutations in
/// lexicographic order.
pub(crate) fn rank(order: &[usize]) -> usize {
    let n = order.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = order[i + 1..].iter().filter(|&&x| x < order[i]).count();
        r += smaller * factorial(n - 1 - i);
    }
    r
}

pub(crate) fn unrank(n: usize, mut r: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        out.push(pool.remove(r / f));
        r %= f;
    }
    out
}

/// All permutations of `1..=n` in lexicographic order.
pub(crate) fn all(n: usize) -> Vec<Vec<usize>> {
    (0..factorial(n)).map(|r| unrank(n, r)).collect()
}
