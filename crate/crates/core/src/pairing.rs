//! Two-user pairing on orthogonal resources.
//!
//! A network of `2K` users is split into `K` pairs, each pair running the
//! two-user optimum on its own resource. With that allocation the best
//! matching is near-far: the weakest user goes with the strongest, the
//! second weakest with the second strongest, and so on. The exhaustive
//! matching enumeration here exists to check that claim.

use std::fmt;

use crate::error::{NomaError, Result};
use crate::model::{log2_1p, ChannelGains, RateReport, TransmitSnr};
use crate::power::optimal_two_user;

/// Largest user count [`enumerate_matchings`] accepts (10 395 matchings).
pub const MAX_ENUMERATED_USERS: usize = 12;

/// A perfect matching on `2K` users.
///
/// Indices are zero-based internally and displayed one-based. Each pair is
/// stored `(weak, strong)` and pairs are ordered by their weak member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairingPolicy {
    pairs: Vec<(usize, usize)>,
}

impl PairingPolicy {
    /// Validates that `pairs` is a perfect matching on `0..2K`.
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let n = 2 * pairs.len();
        if n == 0 {
            return Err(NomaError::InvalidPolicy("no pairs".into()));
        }
        let mut seen = vec![false; n];
        let mut canonical = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if i == j {
                return Err(NomaError::InvalidPolicy(format!(
                    "user {} paired with itself",
                    i + 1
                )));
            }
            for u in [i, j] {
                if u >= n {
                    return Err(NomaError::InvalidPolicy(format!(
                        "user {} out of range for {n} users",
                        u + 1
                    )));
                }
                if std::mem::replace(&mut seen[u], true) {
                    return Err(NomaError::InvalidPolicy(format!(
                        "user {} appears twice",
                        u + 1
                    )));
                }
            }
            canonical.push((i, j));
        }
        canonical.sort_unstable();
        Ok(Self { pairs: canonical })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn num_users(&self) -> usize {
        2 * self.pairs.len()
    }
}

impl fmt::Display for PairingPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, j)) in self.pairs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", i + 1, j + 1)?;
        }
        Ok(())
    }
}

/// Which OMA reference the pairing report compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmaBaseline {
    /// Each pair's resource is halved between its two users: `½ log₂(1 + ρg)`.
    #[default]
    PerPair,
    /// The whole band is split over all `2K` users: `(1/2K) log₂(1 + ρg)`.
    Network,
}

/// Near-far matching `{(1, 2K), (2, 2K−1), …, (K, K+1)}`.
pub fn near_far_policy(k: usize) -> Result<PairingPolicy> {
    if k == 0 {
        return Err(NomaError::InvalidPolicy("need at least one pair".into()));
    }
    let n = 2 * k;
    PairingPolicy::new((0..k).map(|i| (i, n - 1 - i)).collect())
}

/// Every perfect matching on `n_users` users, each exactly once.
///
/// There are `(n − 1)!!` of them. The first one is `{(1,2),(3,4),…}` and the
/// order is deterministic.
pub fn enumerate_matchings(n_users: usize) -> Result<Vec<PairingPolicy>> {
    if n_users % 2 == 1 {
        return Err(NomaError::OddUserCount(n_users));
    }
    if n_users < 2 {
        return Err(NomaError::TooFewUsers {
            min: 2,
            found: n_users,
        });
    }
    if n_users > MAX_ENUMERATED_USERS {
        return Err(NomaError::TooManyUsers {
            max: MAX_ENUMERATED_USERS,
            found: n_users,
        });
    }

    fn extend(
        remaining: &mut Vec<usize>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<PairingPolicy>,
    ) {
        if remaining.is_empty() {
            out.push(PairingPolicy {
                pairs: current.clone(),
            });
            return;
        }
        let first = remaining.remove(0);
        for idx in 0..remaining.len() {
            let partner = remaining.remove(idx);
            current.push((first, partner));
            extend(remaining, current, out);
            current.pop();
            remaining.insert(idx, partner);
        }
        remaining.insert(0, first);
    }

    let mut out = Vec::new();
    extend(
        &mut (0..n_users).collect(),
        &mut Vec::with_capacity(n_users / 2),
        &mut out,
    );
    Ok(out)
}

/// Rates of every user when each pair of `policy` runs the two-user optimum
/// on its own resource.
pub fn pairing_sum_rate(
    gains: &ChannelGains,
    policy: &PairingPolicy,
    snr: TransmitSnr,
    baseline: OmaBaseline,
) -> Result<RateReport> {
    let n = gains.len();
    if policy.num_users() != n {
        return Err(NomaError::DimensionMismatch {
            expected: n,
            found: policy.num_users(),
        });
    }
    let g = gains.as_slice();
    let rho = snr.linear();
    let share = match baseline {
        OmaBaseline::PerPair => 0.5,
        OmaBaseline::Network => 1.0 / n as f64,
    };

    let mut noma = vec![0.0; n];
    for &(weak, strong) in policy.pairs() {
        let alloc = optimal_two_user(snr, g[weak])?;
        let [a1, a2] = [alloc.as_slice()[0], alloc.as_slice()[1]];
        let weak_received = rho * a1 * g[weak];
        noma[weak] = log2_1p(weak_received);
        noma[strong] = log2_1p(rho * a2 * g[strong] / (1.0 + weak_received));
    }
    let oma = g.iter().map(|&gi| share * log2_1p(rho * gi)).collect();
    Ok(RateReport::from_rates(noma, oma))
}

/// NOMA sum rates of the three four-user matchings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourUserCases {
    /// `{(1,2),(3,4)}`
    pub case1: f64,
    /// `{(1,3),(2,4)}`
    pub case2: f64,
    /// `{(1,4),(2,3)}`, the near-far matching
    pub case3: f64,
}

impl FourUserCases {
    pub fn as_array(&self) -> [f64; 3] {
        [self.case1, self.case2, self.case3]
    }

    /// `case1 ≤ case2 ≤ case3` up to `tol`.
    pub fn is_ordered(&self, tol: f64) -> bool {
        self.case1 <= self.case2 + tol && self.case2 <= self.case3 + tol
    }
}

pub fn four_user_policies() -> [PairingPolicy; 3] {
    [
        PairingPolicy {
            pairs: vec![(0, 1), (2, 3)],
        },
        PairingPolicy {
            pairs: vec![(0, 2), (1, 3)],
        },
        PairingPolicy {
            pairs: vec![(0, 3), (1, 2)],
        },
    ]
}

pub fn four_user_cases(gains: &ChannelGains, snr: TransmitSnr) -> Result<FourUserCases> {
    if gains.len() != 4 {
        return Err(NomaError::DimensionMismatch {
            expected: 4,
            found: gains.len(),
        });
    }
    let [c1, c2, c3] = four_user_policies()
        .map(|p| pairing_sum_rate(gains, &p, snr, OmaBaseline::PerPair).map(|r| r.noma_sum));
    Ok(FourUserCases {
        case1: c1?,
        case2: c2?,
        case3: c3?,
    })
}

/// Behaviour of `case2 − case1` along an SNR grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseGapReport {
    /// `case2 − case1` at each grid point.
    pub gaps: Vec<f64>,
    /// Whether the gap never drops by more than the step tolerance.
    pub monotone: bool,
    /// High-SNR limit `log₂(g₃ / g₂)`.
    pub high_snr_limit: f64,
    /// `|gap − limit| / limit` at the last grid point; `NaN` when the limit is zero.
    pub limit_relative_error: f64,
}

/// Allowed per-step decrease in [`case_gap_monotonicity`].
pub const GAP_STEP_TOLERANCE: f64 = 1e-9;

/// Evaluates `case2 − case1` over an ascending SNR grid and compares its
/// tail with the high-SNR limit `log₂(g₃/g₂)`.
pub fn case_gap_monotonicity(gains: &ChannelGains, rho_grid: &[f64]) -> Result<CaseGapReport> {
    if rho_grid.is_empty() {
        return Err(NomaError::InvalidConfig("empty SNR grid".into()));
    }
    if let Some(i) = (1..rho_grid.len()).find(|&i| rho_grid[i] <= rho_grid[i - 1]) {
        return Err(NomaError::InvalidConfig(format!(
            "SNR grid must be strictly ascending (entry {i})"
        )));
    }
    let gaps = rho_grid
        .iter()
        .map(|&rho| {
            let cases = four_user_cases(gains, TransmitSnr::new(rho)?)?;
            Ok(cases.case2 - cases.case1)
        })
        .collect::<Result<Vec<_>>>()?;
    let monotone = gaps.windows(2).all(|w| w[1] >= w[0] - GAP_STEP_TOLERANCE);
    let g = gains.as_slice();
    let high_snr_limit = (g[2] / g[1]).log2();
    let last = *gaps.last().expect("grid is nonempty");
    let limit_relative_error = if high_snr_limit > 0.0 {
        (last - high_snr_limit).abs() / high_snr_limit
    } else {
        f64::NAN
    };
    Ok(CaseGapReport {
        gaps,
        monotone,
        high_snr_limit,
        limit_relative_error,
    })
}

/// One matching together with its rates.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedMatching {
    pub policy: PairingPolicy,
    pub report: RateReport,
}

/// All matchings sorted by descending NOMA sum rate.
///
/// Matchings within `tie_tol` of the best are reported with near-far first.
pub fn rank_matchings(
    gains: &ChannelGains,
    snr: TransmitSnr,
    baseline: OmaBaseline,
    tie_tol: f64,
) -> Result<Vec<RankedMatching>> {
    let near_far = near_far_policy(gains.len() / 2)?;
    let mut ranked = enumerate_matchings(gains.len())?
        .into_iter()
        .map(|policy| {
            let report = pairing_sum_rate(gains, &policy, snr, baseline)?;
            Ok(RankedMatching { policy, report })
        })
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|a, b| b.report.noma_sum.total_cmp(&a.report.noma_sum));
    let best = ranked[0].report.noma_sum;
    if let Some(pos) = ranked
        .iter()
        .position(|r| r.policy == near_far && r.report.noma_sum >= best - tie_tol)
    {
        let nf = ranked.remove(pos);
        ranked.insert(0, nf);
    }
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rate_report;
    use std::collections::HashSet;

    fn snr(rho: f64) -> TransmitSnr {
        TransmitSnr::new(rho).unwrap()
    }

    fn gains(v: &[f64]) -> ChannelGains {
        ChannelGains::new(v.to_vec()).unwrap()
    }

    fn double_factorial(n: usize) -> usize {
        (1..=n).rev().step_by(2).product()
    }

    #[test]
    fn near_far_examples() {
        assert_eq!(near_far_policy(1).unwrap().to_string(), "(1,2)");
        assert_eq!(near_far_policy(2).unwrap().to_string(), "(1,4),(2,3)");
        assert_eq!(near_far_policy(3).unwrap().to_string(), "(1,6),(2,5),(3,4)");
        assert!(near_far_policy(0).is_err());
    }

    #[test]
    fn matching_counts() {
        assert_eq!(enumerate_matchings(2).unwrap().len(), 1);
        assert_eq!(enumerate_matchings(4).unwrap().len(), 3);
        assert_eq!(enumerate_matchings(8).unwrap().len(), 7 * 5 * 3);
        for n in (2..=12).step_by(2) {
            let all = enumerate_matchings(n).unwrap();
            assert_eq!(all.len(), double_factorial(n - 1));
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len(), "duplicates for n={n}");
            for p in &all {
                assert!(PairingPolicy::new(p.pairs().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn enumeration_rejects_bad_sizes() {
        assert_eq!(enumerate_matchings(5), Err(NomaError::OddUserCount(5)));
        assert!(matches!(
            enumerate_matchings(14),
            Err(NomaError::TooManyUsers { .. })
        ));
        assert!(matches!(
            enumerate_matchings(0),
            Err(NomaError::TooFewUsers { .. })
        ));
    }

    #[test]
    fn policy_validation() {
        assert!(PairingPolicy::new(vec![(0, 1), (1, 2)]).is_err());
        assert!(PairingPolicy::new(vec![(0, 0)]).is_err());
        assert!(PairingPolicy::new(vec![(0, 5), (1, 2)]).is_err());
        let p = PairingPolicy::new(vec![(3, 1), (2, 0)]).unwrap();
        assert_eq!(p.pairs(), &[(0, 2), (1, 3)]);
    }

    #[test]
    fn weak_user_in_each_pair_gets_oma_rate() {
        let g = gains(&[0.3, 0.8, 2.0, 5.0]);
        let r = pairing_sum_rate(
            &g,
            &near_far_policy(2).unwrap(),
            snr(10.0),
            OmaBaseline::PerPair,
        )
        .unwrap();
        assert!((r.noma_rates[0] - 1.0).abs() < 1e-14);
        for &(weak, _) in near_far_policy(2).unwrap().pairs() {
            let rel = (r.noma_rates[weak] - r.oma_rates[weak]).abs() / r.oma_rates[weak];
            assert!(rel < 1e-9);
        }
    }

    #[test]
    fn single_pair_matches_two_user_report() {
        let g = gains(&[0.45, 1.3]);
        let s = snr(3.7);
        let direct = rate_report(&g, &optimal_two_user(s, 0.45).unwrap(), s).unwrap();
        let paired =
            pairing_sum_rate(&g, &near_far_policy(1).unwrap(), s, OmaBaseline::PerPair).unwrap();
        for (a, b) in direct.noma_rates.iter().zip(&paired.noma_rates) {
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(direct.oma_rates, paired.oma_rates);
    }

    #[test]
    fn network_baseline_uses_full_band_split() {
        let g = gains(&[0.3, 0.8, 2.0, 5.0]);
        let per_pair = pairing_sum_rate(
            &g,
            &near_far_policy(2).unwrap(),
            snr(10.0),
            OmaBaseline::PerPair,
        )
        .unwrap();
        let network = pairing_sum_rate(
            &g,
            &near_far_policy(2).unwrap(),
            snr(10.0),
            OmaBaseline::Network,
        )
        .unwrap();
        assert_eq!(per_pair.noma_rates, network.noma_rates);
        for (p, n) in per_pair.oma_rates.iter().zip(&network.oma_rates) {
            assert!((p / 2.0 - n).abs() < 1e-15);
        }
    }

    #[test]
    fn four_user_ordering_example() {
        let c = four_user_cases(&gains(&[0.3, 0.8, 2.0, 5.0]), snr(10.0)).unwrap();
        assert!(c.is_ordered(0.0), "{c:?}");
        let ranked = rank_matchings(
            &gains(&[0.3, 0.8, 2.0, 5.0]),
            snr(10.0),
            OmaBaseline::PerPair,
            1e-9,
        )
        .unwrap();
        assert_eq!(ranked.len(), 3);
        assert_eq!(ranked[0].policy, near_far_policy(2).unwrap());
        assert!((ranked[0].report.noma_sum - c.case3).abs() < 1e-12);
        assert!((ranked[2].report.noma_sum - c.case1).abs() < 1e-12);
    }

    #[test]
    fn equal_gains_make_cases_equal() {
        let c = four_user_cases(&gains(&[0.6; 4]), snr(25.0)).unwrap();
        assert!((c.case1 - c.case2).abs() < 1e-9);
        assert!((c.case2 - c.case3).abs() < 1e-9);
    }

    #[test]
    fn tie_prefers_near_far() {
        let ranked =
            rank_matchings(&gains(&[0.6; 6]), snr(5.0), OmaBaseline::PerPair, 1e-9).unwrap();
        assert_eq!(ranked[0].policy, near_far_policy(3).unwrap());
    }

    #[test]
    fn four_user_cases_rejects_wrong_length() {
        assert!(four_user_cases(&gains(&[0.1, 0.2]), snr(1.0)).is_err());
    }

    #[test]
    fn case_gap_examples() {
        let g = gains(&[0.3, 0.8, 2.0, 5.0]);
        let grid: Vec<f64> = (0..50)
            .map(|k| 10f64.powf(-6.0 + 12.0 * k as f64 / 49.0))
            .collect();
        let report = case_gap_monotonicity(&g, &grid).unwrap();
        assert!(report.monotone);
        assert!(report.gaps[0].abs() < 1e-5);
        assert!((report.high_snr_limit - 1.321_928_094_887_362_3).abs() < 1e-12);
        assert!(report.limit_relative_error < 0.01);

        let tied = gains(&[0.3, 0.8, 0.8, 5.0]);
        let report = case_gap_monotonicity(&tied, &[1e6, 1e8, 1e10]).unwrap();
        assert_eq!(report.high_snr_limit, 0.0);
        assert!(report.gaps.last().unwrap().abs() < 1e-3);

        assert!(case_gap_monotonicity(&g, &[]).is_err());
        assert!(case_gap_monotonicity(&g, &[2.0, 1.0]).is_err());
    }
}
