use crate::error::{MsscError, Result};
use crate::instance::{Instance, Permutation, Request};

/// Elements `0..elements` and sets over them. A cover is a set of elements
/// hitting every set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    elements: usize,
    sets: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    pub fn new(elements: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        for set in &sets {
            if set.is_empty() {
                return Err(MsscError::EmptyRequest);
            }
            if let Some(&id) = set.iter().find(|&&id| id >= elements) {
                return Err(MsscError::ElementOutOfRange { id, n: elements });
            }
        }
        Ok(SetCoverInstance { elements, sets })
    }

    pub fn elements(&self) -> usize {
        self.elements
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        self.sets.iter().all(|s| s.iter().any(|e| chosen.contains(e)))
    }
}

/// Builds the Mult-MSSC instance of the hardness construction: the real
/// elements keep ids `0..n_sc`, dummies take `n_sc..n_sc+D`, the initial
/// order lists every dummy before the real elements, and the requests are
/// the sets in order. `D` defaults to `n_sc²·m`.
pub fn setcover_reduce(sc: &SetCoverInstance, dummies: Option<usize>) -> Result<Instance> {
    let n_sc = sc.elements;
    let d = match dummies {
        Some(d) => d,
        None => n_sc
            .checked_mul(n_sc)
            .and_then(|v| v.checked_mul(sc.sets.len()))
            .ok_or_else(|| MsscError::InvalidInstance("dummy count overflows".into()))?,
    };
    let n = n_sc
        .checked_add(d)
        .filter(|&n| n <= u32::MAX as usize)
        .ok_or_else(|| MsscError::InvalidInstance("universe size overflows".into()))?;
    let pi0 = Permutation::from_order((n_sc..n).chain(0..n_sc))?;
    let requests = sc
        .sets
        .iter()
        .map(|s| Request::new(s.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    Instance::new(pi0, requests)
}

/// Largest universe [`minimum_set_covers`] will search.
pub const MAX_COVER_ELEMENTS: usize = 24;

/// Every minimum-size cover by exhaustive search, each sorted, in
/// lexicographic order.
pub fn minimum_set_covers(sc: &SetCoverInstance) -> Result<Vec<Vec<usize>>> {
    let n = sc.elements;
    if n > MAX_COVER_ELEMENTS {
        return Err(MsscError::GuardExceeded(format!(
            "{n} elements exceeds {MAX_COVER_ELEMENTS} for exhaustive set cover"
        )));
    }
    let masks: Vec<u32> = sc
        .sets
        .iter()
        .map(|s| s.iter().fold(0u32, |m, &e| m | 1 << e))
        .collect();
    let mut best: Option<u32> = None;
    let mut found = Vec::new();
    for chosen in 0u32..(1u32 << n) {
        let size = chosen.count_ones();
        if best.is_some_and(|b| size > b) || !masks.iter().all(|&m| m & chosen != 0) {
            continue;
        }
        if best.is_none_or(|b| size < b) {
            best = Some(size);
            found.clear();
        }
        found.push(chosen);
    }
    let mut covers: Vec<Vec<usize>> = found
        .into_iter()
        .map(|m| (0..n).filter(|&e| m >> e & 1 == 1).collect())
        .collect();
    covers.sort();
    Ok(covers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_dummy_count() {
        let sc = SetCoverInstance::new(3, vec![vec![0, 1], vec![2], vec![1, 2]]).unwrap();
        let inst = setcover_reduce(&sc, None).unwrap();
        assert_eq!(inst.n(), 3 + 9 * 3);
        assert_eq!(inst.pi0().element_at(inst.n() - 1).index(), 1);
        for (req, set) in inst.requests().iter().zip(sc.sets()) {
            let ids: Vec<usize> = req.members().iter().map(|e| e.index()).collect();
            assert_eq!(&ids, set);
        }
    }

    #[test]
    fn single_set_shape() {
        let sc = SetCoverInstance::new(1, vec![vec![0]]).unwrap();
        let inst = setcover_reduce(&sc, Some(4)).unwrap();
        assert_eq!(inst.pi0().to_indices(), vec![1, 2, 3, 4, 0]);
    }

    #[test]
    fn minimum_covers() {
        let sc = SetCoverInstance::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(
            minimum_set_covers(&sc).unwrap(),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        let sc = SetCoverInstance::new(3, vec![vec![0], vec![2], vec![0, 1]]).unwrap();
        assert_eq!(minimum_set_covers(&sc).unwrap(), vec![vec![0, 2]]);
        let empty = SetCoverInstance::new(2, vec![]).unwrap();
        assert_eq!(minimum_set_covers(&empty).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(SetCoverInstance::new(2, vec![vec![]]).is_err());
        assert!(SetCoverInstance::new(2, vec![vec![2]]).is_err());
    }
}
