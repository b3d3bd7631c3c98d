//! Exact solvers used as ground truth, and the Set-Cover reduction.

mod dp;
mod setcover;
mod states;

pub use dp::{brute_force_mtf, brute_force_opt, MtfSolution};
pub use setcover::{minimum_set_covers, setcover_reduce, SetCoverInstance, MAX_COVER_ELEMENTS};
pub use states::{MAX_HORIZON, MAX_STATES};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::kendall_tau;
    use crate::instance::{covering_cost, Instance, Permutation};
    use crate::MsscError;
    use proptest::prelude::*;

    fn all_perms(n: usize) -> Vec<Permutation> {
        fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation::from_order(cur.iter().copied()).unwrap());
                return;
            }
            for e in 0..n {
                if !cur.contains(&e) {
                    cur.push(e);
                    rec(n, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }

    /// Forward DP over every permutation with the full distance table.
    fn naive_opt(inst: &Instance) -> u64 {
        let perms = all_perms(inst.n());
        let dist: Vec<Vec<u64>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| kendall_tau(a, b).unwrap()).collect())
            .collect();
        let start = perms.iter().position(|p| p == inst.pi0()).unwrap();
        let mut cost: Vec<u64> = (0..perms.len()).map(|s| if s == start { 0 } else { u64::MAX }).collect();
        for req in inst.requests() {
            cost = (0..perms.len())
                .map(|b| {
                    let best = (0..perms.len())
                        .filter(|&a| cost[a] != u64::MAX)
                        .map(|a| cost[a] + dist[a][b])
                        .min()
                        .unwrap();
                    best + covering_cost(&perms[b], req) as u64
                })
                .collect();
        }
        cost.into_iter().min().unwrap()
    }

    fn instance() -> impl Strategy<Value = Instance> {
        (1usize..=4).prop_flat_map(|n| {
            let pi0 = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            let req = proptest::collection::btree_set(0..n, 1..=n).prop_map(|s| s.into_iter().collect::<Vec<_>>());
            (pi0, proptest::collection::vec(req, 0..=3))
                .prop_map(|(pi0, reqs)| Instance::from_indices(&pi0, &reqs).unwrap())
        })
    }

    #[test]
    fn empty_horizon() {
        let inst = Instance::from_indices(&[1, 0], &[]).unwrap();
        let (sol, report) = brute_force_opt(&inst).unwrap();
        assert!(sol.is_empty());
        assert_eq!(report.total, 0);
    }

    #[test]
    fn two_elements_prefers_staying() {
        let inst = Instance::from_indices(&[0, 1], &[vec![1]]).unwrap();
        let (sol, report) = brute_force_opt(&inst).unwrap();
        assert_eq!(report.total, 2);
        assert_eq!(sol.perms[0].to_indices(), vec![0, 1]);
    }

    #[test]
    fn mtf_front_element_is_free() {
        let inst = Instance::from_indices(&[2, 0, 1], &[vec![2, 0], vec![2], vec![1, 2]]).unwrap();
        let mtf = brute_force_mtf(&inst).unwrap();
        assert_eq!(mtf.moving_kt, 0);
        assert!(mtf.solution.perms.iter().all(|p| p == inst.pi0()));
    }

    #[test]
    fn mtf_prefers_the_element_needed_later() {
        // moving 2 now serves rounds 1 and 2
        let inst = Instance::from_indices(&[0, 1, 2], &[vec![1, 2], vec![2]]).unwrap();
        let mtf = brute_force_mtf(&inst).unwrap();
        assert_eq!(mtf.moving_kt, 2);
        assert_eq!(mtf.moving_footrule, 4);
    }

    #[test]
    fn horizon_guard() {
        let reqs = vec![vec![0]; MAX_HORIZON + 1];
        let inst = Instance::from_indices(&[0, 1], &reqs).unwrap();
        assert!(matches!(brute_force_opt(&inst), Err(MsscError::GuardExceeded(_))));
        assert!(matches!(brute_force_mtf(&inst), Err(MsscError::GuardExceeded(_))));
    }

    #[test]
    fn reduction_toy_extracts_unique_minimum_cover() {
        let sc = SetCoverInstance::new(3, vec![vec![0], vec![2], vec![0, 1]]).unwrap();
        let inst = setcover_reduce(&sc, Some(20)).unwrap();
        let (sol, _) = brute_force_opt(&inst).unwrap();
        let mut cover: Vec<usize> = sol.covering_elements(&inst).iter().map(|e| e.index()).collect();
        cover.sort();
        cover.dedup();
        assert_eq!(vec![cover], minimum_set_covers(&sc).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn opt_matches_naive_dp(inst in instance()) {
            let (sol, report) = brute_force_opt(&inst).unwrap();
            prop_assert_eq!(sol.len(), inst.horizon());
            prop_assert_eq!(report.total, naive_opt(&inst));
        }

        #[test]
        fn single_round_matches_enumeration(inst in instance()) {
            prop_assume!(inst.horizon() >= 1);
            let one = Instance::new(inst.pi0().clone(), inst.requests()[..1].to_vec()).unwrap();
            let direct = all_perms(one.n())
                .iter()
                .map(|p| kendall_tau(one.pi0(), p).unwrap() + covering_cost(p, &one.requests()[0]) as u64)
                .min()
                .unwrap();
            prop_assert_eq!(brute_force_opt(&one).unwrap().1.total, direct);
        }

        #[test]
        fn mtf_is_feasible_and_sandwiched(inst in instance()) {
            let mtf = brute_force_mtf(&inst).unwrap();
            let report = crate::instance::total_cost(&inst, &mtf.solution).unwrap();
            prop_assert_eq!(report.total_moving, mtf.moving_kt);
            prop_assert_eq!(report.total_covering, inst.horizon() as u64);
            let opt = brute_force_opt(&inst).unwrap().1.total;
            prop_assert!(opt <= report.total);
        }
    }
}
