use std::fmt;

use super::GradedError;

/// A permutation of `0..k` in one-line notation: `images[i]` is the position
/// that the entry in position `i` is sent to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Self { images: (0..k).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GradedError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(GradedError::NotAPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based images, as written on paper.
    pub fn from_one_based(images: &[usize]) -> Result<Self, GradedError> {
        let shifted = images
            .iter()
            .map(|&x| x.checked_sub(1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| GradedError::NotAPermutation(images.to_vec()))?;
        Self::from_images(shifted)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different size");
        Self { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn is_even(&self) -> bool {
        let mut inversions = 0usize;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// All `k!` permutations in lexicographic order of their image lists.
    pub fn all(k: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        loop {
            out.push(Self { images: current.clone() });
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }

    /// `self ⊕ other`: acts by `self` on the first block and `other` on the second.
    pub fn block_sum(&self, other: &Self) -> Self {
        let offset = self.len();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + offset));
        Self { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

/// Rearranges `v` into the next lexicographic permutation. Returns false
/// (leaving `v` sorted ascending) once the last one has been passed.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The `(k, l)` shuffles: permutations increasing on `0..l` and on `l..k`.
/// There are `C(k, l)` of them, listed in lexicographic order.
pub fn shuffles(k: usize, l: usize) -> Result<Vec<Permutation>, GradedError> {
    if l > k {
        return Err(GradedError::ShuffleRange { k, l });
    }
    let mut out = Vec::new();
    // choose the image set of the first block
    let mut chosen: Vec<usize> = (0..l).collect();
    loop {
        let mut images = chosen.clone();
        images.extend((0..k).filter(|x| !chosen.contains(x)));
        out.push(Permutation { images });
        if !next_combination(&mut chosen, k) {
            break;
        }
    }
    Ok(out)
}

/// Inverses of [`shuffles`].
pub fn unshuffles(k: usize, l: usize) -> Result<Vec<Permutation>, GradedError> {
    Ok(shuffles(k, l)?.iter().map(Permutation::inverse).collect())
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let l = c.len();
    let mut i = l;
    while i > 0 {
        i -= 1;
        if c[i] < n - l + i {
            c[i] += 1;
            for j in i + 1..l {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(3, 1).unwrap().len(), 3);
        assert_eq!(shuffles(4, 2).unwrap().len(), 6);
        assert_eq!(shuffles(5, 0).unwrap(), vec![Permutation::identity(5)]);
        assert_eq!(shuffles(5, 5).unwrap(), vec![Permutation::identity(5)]);
        assert!(shuffles(2, 3).is_err());
    }

    #[test]
    fn shuffles_are_increasing_on_blocks() {
        for s in shuffles(5, 2).unwrap() {
            assert!(s.image(0) < s.image(1));
            assert!(s.image(2) < s.image(3) && s.image(3) < s.image(4));
        }
    }

    #[test]
    fn unique_factorisation_through_shuffles() {
        // every π factors uniquely as shuffle ∘ (block permutation)
        for l in 0..=3 {
            let sh = shuffles(3, l).unwrap();
            let blocks: Vec<Permutation> = Permutation::all(l)
                .iter()
                .flat_map(|a| Permutation::all(3 - l).into_iter().map(move |b| a.block_sum(&b)))
                .collect();
            for pi in Permutation::all(3) {
                let count = sh
                    .iter()
                    .flat_map(|s| blocks.iter().map(move |b| s.compose(b)))
                    .filter(|p| *p == pi)
                    .count();
                assert_eq!(count, 1, "l={l} pi={pi}");
            }
        }
    }

    #[test]
    fn compose_and_inverse() {
        let p = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert!(p.is_even());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }
}
