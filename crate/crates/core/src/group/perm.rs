use crate::error::{Error, Result};

/// A permutation of `0..degree`, acting on the right: `i^(xy) = (i^x)^y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation((0..degree as u32).collect())
    }

    /// Zero-based image list. Panics if `images` is not a bijection.
    pub fn from_images(images: Vec<usize>) -> Permutation {
        Self::try_from_images(images).expect("not a permutation")
    }

    pub fn try_from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation(images.into_iter().map(|i| i as u32).collect()))
    }

    /// One-based image list, as stored in group files.
    pub fn from_one_based(images: &[usize]) -> Result<Permutation> {
        if images.contains(&0) {
            return Err(Error::InvalidInput("image lists are one-based".into()));
        }
        Self::try_from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// Product of one-based cycles on `degree` points, e.g. `&[&[1, 2, 3]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                images[a - 1] = b - 1;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0.get(i).map_or(i, |&j| j as usize)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize + 1).collect()
    }

    /// Pads with fixed points up to `degree`.
    pub fn extended(&self, degree: usize) -> Permutation {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree.max(self.0.len()) as u32);
        Permutation(v)
    }

    /// Shifts the points by `offset`, fixing `0..offset`.
    pub fn shifted(&self, offset: usize) -> Permutation {
        let mut v: Vec<u32> = (0..offset as u32).collect();
        v.extend(self.0.iter().map(|&i| i + offset as u32));
        Permutation(v)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.image(i as usize) as u32).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}
