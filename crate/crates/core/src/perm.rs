//! Permutations of {0..n-1} with signs, acting diagonally on the two
//! variable families.

/// Permutation in one-line notation: `i` maps to `images[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            assert!(v < n && !seen[v], "not a permutation");
            seen[v] = true;
        }
        Perm { images }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Perm { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// +1 or -1 by inversion-count parity.
    pub fn sign(&self) -> i64 {
        let mut inv = 0usize;
        for a in 0..self.images.len() {
            for b in a + 1..self.images.len() {
                if self.images[a] > self.images[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn compose(&self, inner: &Perm) -> Perm {
        assert_eq!(self.n(), inner.n());
        Perm {
            images: (0..self.n()).map(|i| self.apply(inner.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for i in 0..self.n() {
            images[self.apply(i)] = i;
        }
        Perm { images }
    }
}

/// All n! permutations in lexicographic order of one-line notation.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Perm { images: cur.clone() }];
    loop {
        // next_permutation
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm { images: cur.clone() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_signs() {
        assert_eq!(all_perms(3).len(), 6);
        assert_eq!(all_perms(4).len(), 24);
        let even: i64 = all_perms(3).iter().map(|p| p.sign()).sum();
        assert_eq!(even, 0);
        assert_eq!(Perm::identity(4).sign(), 1);
        assert_eq!(Perm::transposition(4, 1, 3).sign(), -1);
    }

    #[test]
    fn compose_inverse() {
        for p in all_perms(4) {
            let q = p.inverse();
            assert_eq!(p.compose(&q), Perm::identity(4));
            assert_eq!(p.sign(), q.sign());
        }
    }
}
