//! Monotone maps [m] → [n] stored as their value lists.

/// Splits a monotone map into a surjection onto its image followed by the
/// inclusion of the image. Returns (surjection values, image).
pub fn factor(theta: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = Vec::with_capacity(theta.len());
    let mut surj = Vec::with_capacity(theta.len());
    for &v in theta {
        if image.last() != Some(&v) {
            image.push(v);
        }
        surj.push(image.len() - 1);
    }
    (surj, image)
}

/// `outer ∘ inner`
pub fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

/// The coface δ_i: [n-1] → [n] skipping i.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|k| if k < i { k } else { k + 1 }).collect()
}

/// The codegeneracy σ_i: [n+1] → [n] repeating i.
pub fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect()
}

pub fn is_identity(theta: &[usize]) -> bool {
    theta.iter().enumerate().all(|(i, &v)| i == v)
}

/// Positions i with theta(i) == theta(i+1), in ascending order.
pub fn repeats(surj: &[usize]) -> Vec<usize> {
    (0..surj.len().saturating_sub(1)).filter(|&i| surj[i] == surj[i + 1]).collect()
}

/// Indices of [n] missing from an injective image, in descending order.
pub fn missing_descending(image: &[usize], n: usize) -> Vec<usize> {
    (0..=n).rev().filter(|i| !image.contains(i)).collect()
}

/// All monotone surjections [m] → [k].
pub fn surjections(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0];
    fn go(m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            if *cur.last().unwrap() == k {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        for v in [last, last + 1] {
            if v <= k && k - v <= m - cur.len() {
                cur.push(v);
                go(m, k, cur, out);
                cur.pop();
            }
        }
    }
    if k <= m {
        go(m, k, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        let (s, im) = factor(&[0, 0, 2, 3, 3]);
        assert_eq!(s, vec![0, 0, 1, 2, 2]);
        assert_eq!(im, vec![0, 2, 3]);
        assert_eq!(compose(&im, &s), vec![0, 0, 2, 3, 3]);
    }

    #[test]
    fn surjection_counts() {
        // C(m, k) surjections [m] → [k]
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(2, 2).len(), 1);
    }

    #[test]
    fn cosimplicial_identity() {
        // δ_j δ_i = δ_i δ_{j-1} for i < j
        let n = 4;
        for j in 0..=n {
            for i in 0..j {
                assert_eq!(compose(&coface(n, j), &coface(n - 1, i)), compose(&coface(n, i), &coface(n - 1, j - 1)));
            }
        }
    }
}
