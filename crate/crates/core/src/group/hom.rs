use std::collections::VecDeque;
use std::sync::Arc;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism between two table groups, stored as an element map.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<u32>,
    surjective: bool,
}

impl GroupHom {
    pub(crate) fn new_unchecked(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<usize>,
        surjective: bool,
    ) -> GroupHom {
        GroupHom {
            source,
            target,
            map: map.into_iter().map(|x| x as u32).collect(),
            surjective,
        }
    }

    /// Validates the homomorphism law and computes surjectivity.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<GroupHom> {
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(Error::InvalidInput("element map has the wrong shape".into()));
        }
        let surjective = {
            let mut hit = vec![false; target.order()];
            map.iter().for_each(|&y| hit[y] = true);
            hit.into_iter().all(|b| b)
        };
        let hom = GroupHom::new_unchecked(source, target, map, surjective);
        if !hom.is_homomorphism() {
            return Err(Error::InvalidInput("map does not respect multiplication".into()));
        }
        Ok(hom)
    }

    /// Extends an assignment of the source's defining generators to a
    /// homomorphism, walking the source breadth first.
    pub fn from_generator_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: &[usize],
    ) -> Result<GroupHom> {
        let gens = source.generators().to_vec();
        if gens.len() != images.len() {
            return Err(Error::InvalidInput(format!(
                "{} generators but {} images",
                gens.len(),
                images.len()
            )));
        }
        let mut map = vec![usize::MAX; source.order()];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = source.mul(x, g);
                if map[y] == usize::MAX {
                    map[y] = target.mul(map[x], h);
                    queue.push_back(y);
                }
            }
        }
        if map.contains(&usize::MAX) {
            return Err(Error::InvalidInput("generators do not generate the source".into()));
        }
        GroupHom::new(source, target, map)
    }

    pub fn identity(g: Arc<FiniteGroup>) -> GroupHom {
        let n = g.order();
        GroupHom::new_unchecked(g.clone(), g, (0..n).collect(), true)
    }

    /// The map to the trivial group.
    pub fn to_trivial(g: Arc<FiniteGroup>) -> GroupHom {
        let mut t = FiniteGroup::from_parts("1".into(), None, vec![0], vec![]);
        t.set_prime(g.prime());
        let n = g.order();
        GroupHom::new_unchecked(g, Arc::new(t), vec![0; n], true)
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn map(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.iter().map(|&y| y as usize)
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_homomorphism(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        self.apply(0) == 0
            && (0..s.order())
                .all(|x| (0..s.order()).all(|y| self.apply(s.mul(x, y)) == t.mul(self.apply(x), self.apply(y))))
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_mask(self.map.iter().map(|&y| y == 0).collect())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        let compatible = Arc::ptr_eq(&self.target, &next.source) || *self.target == *next.source;
        if !compatible {
            return Err(Error::InvalidInput("homomorphisms do not compose".into()));
        }
        let map = self.map.iter().map(|&x| next.apply(x as usize)).collect();
        Ok(GroupHom::new_unchecked(
            self.source.clone(),
            next.target.clone(),
            map,
            self.surjective && next.surjective,
        ))
    }
}
