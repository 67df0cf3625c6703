use super::resolution::{act_add, block_augmentation, MinimalResolution};
use crate::error::{Error, Result};
use crate::group::GroupHom;
use crate::linalg::FpMatrix;

/// A chain map between minimal resolutions covering a group homomorphism.
#[derive(Debug)]
pub struct ChainMap {
    hom: GroupHom,
    /// `images[n][k]`: image of the `k`-th degree-`n` generator, a vector in
    /// the target's degree-`n` free module.
    images: Vec<Vec<Vec<u8>>>,
    target_ranks: Vec<usize>,
    prime: u8,
}

/// The linear map `H_n(G, F_p) -> H_n(Q, F_p)` induced by a homomorphism.
#[derive(Clone, Debug)]
pub struct InducedHomologyMap {
    pub hom: GroupHom,
    pub degree: usize,
    /// `b_n(G) × b_n(Q)`, acting on row vectors.
    pub matrix: FpMatrix,
}

impl ChainMap {
    /// Lifts `hom` degree by degree: `f_0` sends generator to generator and
    /// `f_n(e)` solves `d_n(x) = f_{n-1}(d_n(e))` in the target.
    pub fn lift(
        hom: &GroupHom,
        source: &MinimalResolution,
        target: &MinimalResolution,
        max_degree: usize,
    ) -> Result<ChainMap> {
        if source.prime() != target.prime() {
            return Err(Error::InvalidInput("resolutions over different primes".into()));
        }
        if hom.source().order() != source.group().order() || hom.target().order() != target.group().order() {
            return Err(Error::InvalidInput("resolutions do not match the homomorphism".into()));
        }
        let top = max_degree.min(source.max_degree()).min(target.max_degree());
        if top < max_degree {
            return Err(Error::InvalidInput(format!(
                "resolutions reach degree {top}, {max_degree} requested"
            )));
        }
        let p = source.prime();
        let (g, q) = (source.group(), target.group());
        let (gn, qn) = (g.order(), q.order());
        let mut f0 = vec![0u8; qn];
        f0[0] = 1;
        let mut images = vec![vec![f0]];
        for n in 1..=max_degree {
            let prev = &images[n - 1];
            let blocks = target.rank(n - 1);
            let mut current = Vec::with_capacity(source.rank(n));
            for image in source.generator_images(n) {
                let mut rhs = vec![0u8; qn * blocks];
                for (j, f_prev) in prev.iter().enumerate() {
                    // push the j-th coefficient block forward to F_p[Q]
                    let mut a = vec![0u8; qn];
                    for (y, &c) in image[j * gn..(j + 1) * gn].iter().enumerate() {
                        if c != 0 {
                            let t = &mut a[hom.apply(y)];
                            *t = ((*t as u16 + c as u16) % p as u16) as u8;
                        }
                    }
                    for (x, &c) in a.iter().enumerate() {
                        if c != 0 {
                            act_add(q, x, f_prev, blocks, c, p, &mut rhs);
                        }
                    }
                }
                let x = target.lift(n, &rhs)?.ok_or_else(|| {
                    Error::Internal(format!("chain map does not lift in degree {n} ({} -> {})", g.name(), q.name()))
                })?;
                current.push(x);
            }
            images.push(current);
        }
        Ok(ChainMap {
            hom: hom.clone(),
            images,
            target_ranks: target.ranks()[..=max_degree].to_vec(),
            prime: p,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.images.len() - 1
    }

    /// The induced map on `H_n`: generator blocks of `f_n` summed.
    pub fn homology_matrix(&self, n: usize) -> FpMatrix {
        let qn = self.hom.target().order();
        let rows: Vec<Vec<u8>> = self.images[n]
            .iter()
            .map(|v| block_augmentation(v, qn, self.prime))
            .collect();
        FpMatrix::from_rows(self.prime, self.target_ranks[n], &rows)
    }

    pub fn induced(&self, n: usize) -> InducedHomologyMap {
        InducedHomologyMap {
            hom: self.hom.clone(),
            degree: n,
            matrix: self.homology_matrix(n),
        }
    }
}

/// Induced map on `H_n` for a homomorphism between groups with computed
/// resolutions.
pub fn induced_map(
    hom: &GroupHom,
    n: usize,
    source: &MinimalResolution,
    target: &MinimalResolution,
) -> Result<InducedHomologyMap> {
    Ok(ChainMap::lift(hom, source, target, n)?.induced(n))
}
