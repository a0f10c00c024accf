//! How much the feedback links enlarge the capacity region.
//!
//! Every metric compares `C(params)` against the region with both feedback
//! exponents set to zero. Feedback never shrinks any bound, so the
//! no-feedback region is always contained in the feedback region.

use crate::par::{self, Execution};
use crate::params::{ChannelParams, User, Variant};
use crate::polytope::{Axis, RatePolytope};
use crate::rational::Rational;
use crate::region::{capacity_region, RegionError};

/// Δ1, Δ2 and Σ in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MetricsResult {
    pub delta1: Rational,
    pub delta2: Rational,
    pub sigma: Rational,
}

impl MetricsResult {
    pub fn delta(&self, user: User) -> Rational {
        match user {
            User::One => self.delta1,
            User::Two => self.delta2,
        }
    }
}

/// Δ for one user together with the other user's rate where it is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaDetail {
    pub value: Rational,
    pub other_rate: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdReport {
    pub link: User,
    /// Largest feedback level on `link` (other link off) that leaves the
    /// region unchanged; `None` if no level up to saturation changes it.
    pub threshold: Option<u32>,
    pub saturation: u32,
}

/// The pair of regions every metric compares.
#[derive(Debug, Clone)]
pub struct RegionPair {
    pub with_feedback: RatePolytope,
    pub without_feedback: RatePolytope,
}

impl RegionPair {
    pub fn new(params: &ChannelParams) -> Result<Self, RegionError> {
        Ok(RegionPair {
            with_feedback: capacity_region(params)?,
            without_feedback: capacity_region(&params.derive_variant(Variant::NoFeedback))?,
        })
    }

    /// The slice difference is a difference of two concave piecewise-linear
    /// functions of the other user's rate, so its maximum sits at a vertex
    /// coordinate of one of the two polygons. The domain is capped by the
    /// smaller region's largest rate for the other user.
    pub fn delta_detail(&self, user: User) -> DeltaDetail {
        let fixed = axis_of(user.other());
        let cap = self
            .with_feedback
            .max_coord(fixed)
            .min(self.without_feedback.max_coord(fixed));
        if cap.is_zero() {
            return DeltaDetail {
                value: Rational::ZERO,
                other_rate: Rational::ZERO,
            };
        }
        let mut breakpoints: Vec<Rational> = self
            .with_feedback
            .vertices()
            .iter()
            .chain(self.without_feedback.vertices())
            .map(|v| v.coord(fixed))
            .filter(|r| *r <= cap)
            .chain([Rational::ZERO, cap])
            .collect();
        breakpoints.sort();
        breakpoints.dedup();

        let mut best = DeltaDetail {
            value: Rational::ZERO,
            other_rate: Rational::ZERO,
        };
        let mut first = true;
        for r in breakpoints {
            let (Some(a), Some(b)) = (
                self.with_feedback.slice_max(fixed, r),
                self.without_feedback.slice_max(fixed, r),
            ) else {
                continue;
            };
            let diff = a - b;
            if first || diff > best.value {
                best = DeltaDetail {
                    value: diff,
                    other_rate: r,
                };
                first = false;
            }
        }
        best
    }

    pub fn delta(&self, user: User) -> Rational {
        self.delta_detail(user).value
    }

    pub fn sigma(&self) -> Rational {
        self.with_feedback.max_linear(1, 1) - self.without_feedback.max_linear(1, 1)
    }

    pub fn metrics(&self) -> MetricsResult {
        MetricsResult {
            delta1: self.delta(User::One),
            delta2: self.delta(User::Two),
            sigma: self.sigma(),
        }
    }
}

fn axis_of(user: User) -> Axis {
    match user {
        User::One => Axis::R1,
        User::Two => Axis::R2,
    }
}

/// Largest gain in `user`'s rate at a common rate of the other user.
pub fn delta(params: &ChannelParams, user: User) -> Result<Rational, RegionError> {
    Ok(RegionPair::new(params)?.delta(user))
}

/// Gain in the maximum sum rate.
pub fn sigma(params: &ChannelParams) -> Result<Rational, RegionError> {
    Ok(RegionPair::new(params)?.sigma())
}

pub fn metrics(params: &ChannelParams) -> Result<MetricsResult, RegionError> {
    Ok(RegionPair::new(params)?.metrics())
}

/// Scans the feedback level of `link` upward with the other link off and
/// reports the last level at which the region is still the no-feedback one.
pub fn feedback_threshold(params: &ChannelParams, link: User) -> Result<ThresholdReport, RegionError> {
    let base = params.derive_variant(Variant::NoFeedback);
    let reference = capacity_region(&base)?;
    let saturation = params.saturation(link);
    let mut threshold = None;
    for level in 1..=saturation {
        let region = capacity_region(&base.with_feedback_on(link, level))?;
        if !region.same_region(&reference) {
            threshold = Some(level - 1);
            break;
        }
    }
    Ok(ThresholdReport {
        link,
        threshold,
        saturation,
    })
}

/// True when even noiseless feedback on both links leaves the region unchanged.
pub fn feedback_useless(params: &ChannelParams) -> Result<bool, RegionError> {
    let without = capacity_region(&params.derive_variant(Variant::NoFeedback))?;
    let perfect = capacity_region(&params.derive_variant(Variant::PerfectFeedback))?;
    Ok(perfect.same_region(&without))
}

/// Metrics over every feedback pair up to saturation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSurface {
    pub base: ChannelParams,
    pub max_fb11: u32,
    pub max_fb22: u32,
    /// Row-major: `fb11` major, `fb22` minor, both ascending.
    cells: Vec<MetricsResult>,
}

impl MetricSurface {
    pub fn get(&self, fb11: u32, fb22: u32) -> Option<&MetricsResult> {
        if fb11 > self.max_fb11 || fb22 > self.max_fb22 {
            return None;
        }
        self.cells
            .get(fb11 as usize * (self.max_fb22 as usize + 1) + fb22 as usize)
    }

    /// `(fb11, fb22, metrics)` in row order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &MetricsResult)> + '_ {
        let width = self.max_fb22 as usize + 1;
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, m)| ((i / width) as u32, (i % width) as u32, m))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Evaluates the saturation grid with the default execution strategy.
pub fn sweep(params: &ChannelParams) -> Result<MetricSurface, RegionError> {
    sweep_with(params, Execution::default())
}

pub fn sweep_with(params: &ChannelParams, exec: Execution) -> Result<MetricSurface, RegionError> {
    let base = params.derive_variant(Variant::NoFeedback);
    base.validate()?;
    let max_fb11 = base.saturation(User::One);
    let max_fb22 = base.saturation(User::Two);
    let reference = capacity_region(&base)?;
    let cells: Vec<(u32, u32)> = (0..=max_fb11)
        .flat_map(|a| (0..=max_fb22).map(move |b| (a, b)))
        .collect();
    let results = par::map(exec, &cells, |&(fb11, fb22)| {
        let pair = RegionPair {
            with_feedback: capacity_region(&base.with_feedback(fb11, fb22))?,
            without_feedback: reference.clone(),
        };
        Ok::<_, RegionError>(pair.metrics())
    });
    let cells = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(MetricSurface {
        base,
        max_fb11,
        max_fb22,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(a: u32, b: u32, c: u32, d: u32, e: u32, f: u32) -> ChannelParams {
        ChannelParams::new(a, b, c, d, e, f)
    }

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn figure_values() {
        assert_eq!(delta(&p(20, 15, 12, 13, 15, 14), User::One).unwrap(), r(2, 1));
        assert_eq!(delta(&p(10, 10, 3, 8, 9, 4), User::Two).unwrap(), r(1, 1));
        assert_eq!(delta(&p(7, 8, 15, 13, 11, 9), User::Two).unwrap(), r(3, 1));
        assert_eq!(delta(&p(10, 20, 6, 12, 10, 11), User::One).unwrap(), r(3, 2));
        assert_eq!(sigma(&p(10, 10, 3, 8, 9, 4)).unwrap(), r(1, 1));
        assert_eq!(sigma(&p(20, 15, 12, 13, 15, 14)).unwrap(), Rational::ZERO);
        assert_eq!(sigma(&p(7, 8, 15, 13, 11, 9)).unwrap(), Rational::ZERO);
    }

    #[test]
    fn no_feedback_means_no_gain() {
        let m = metrics(&p(13, 4, 9, 17, 0, 0)).unwrap();
        assert_eq!(m, MetricsResult::default());
    }

    #[test]
    fn degenerate_other_rate_domain() {
        // User 2 has no rate at all, so there is no positive R2 to compare at.
        let m = metrics(&p(5, 0, 0, 10, 0, 10)).unwrap();
        assert_eq!(m.delta1, Rational::ZERO);
    }

    #[test]
    fn thresholds() {
        let t = feedback_threshold(&p(20, 15, 12, 13, 0, 0), User::One).unwrap();
        assert_eq!((t.threshold, t.saturation), (Some(13), 20));
        let t = feedback_threshold(&p(10, 10, 3, 8, 0, 0), User::Two).unwrap();
        assert_eq!(t.threshold, Some(3));
        let t = feedback_threshold(&p(10, 20, 6, 12, 0, 0), User::One).unwrap();
        assert_eq!((t.threshold, t.saturation), (None, 10));
        let t = feedback_threshold(&p(7, 8, 15, 13, 0, 0), User::Two).unwrap();
        assert_eq!(t.threshold, Some(7));
        // The feedback values in the argument are ignored.
        let t = feedback_threshold(&p(7, 8, 15, 13, 4, 4), User::Two).unwrap();
        assert_eq!(t.threshold, Some(7));
    }

    #[test]
    fn uselessness() {
        assert!(feedback_useless(&p(10, 9, 2, 15, 0, 0)).unwrap());
        assert!(!feedback_useless(&p(10, 10, 3, 8, 0, 0)).unwrap());
        assert!(feedback_useless(&p(0, 0, 0, 0, 0, 0)).unwrap());
    }

    #[test]
    fn sweep_cells() {
        let s = sweep(&p(20, 15, 12, 13, 0, 0)).unwrap();
        assert_eq!((s.max_fb11, s.max_fb22), (20, 15));
        assert_eq!(s.len(), 21 * 16);
        assert_eq!(*s.get(0, 0).unwrap(), MetricsResult::default());
        assert_eq!(
            *s.get(15, 14).unwrap(),
            MetricsResult {
                delta1: r(2, 1),
                delta2: r(2, 1),
                sigma: Rational::ZERO
            }
        );
        assert!(s.get(21, 0).is_none());
        for fb11 in 0..=13 {
            assert_eq!(*s.get(fb11, 0).unwrap(), MetricsResult::default());
        }
        let order: Vec<_> = s.iter().take(3).map(|(a, b, _)| (a, b)).collect();
        assert_eq!(order, vec![(0, 0), (0, 1), (0, 2)]);

        let useless = sweep(&p(10, 9, 2, 15, 0, 0)).unwrap();
        assert!(useless.iter().all(|(_, _, m)| *m == MetricsResult::default()));
    }

    #[test]
    fn sequential_and_parallel_sweeps_agree() {
        let params = p(10, 20, 6, 12, 0, 0);
        assert_eq!(
            sweep_with(&params, Execution::Sequential).unwrap(),
            sweep_with(&params, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn sweep_is_monotone() {
        for params in [p(20, 15, 12, 13, 0, 0), p(7, 8, 15, 13, 0, 0), p(10, 10, 3, 8, 0, 0)] {
            let s = sweep(&params).unwrap();
            for (a, b, m) in s.iter() {
                for next in [s.get(a + 1, b), s.get(a, b + 1)].into_iter().flatten() {
                    assert!(next.delta1 >= m.delta1 && next.delta2 >= m.delta2);
                    assert!(next.sigma >= m.sigma);
                }
            }
        }
    }

    fn params_strategy() -> impl Strategy<Value = ChannelParams> {
        (0u32..=15, 0u32..=15, 0u32..=15, 0u32..=15, 0u32..=17, 0u32..=17)
            .prop_map(|(a, b, c, d, e, f)| p(a, b, c, d, e, f))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn metrics_non_negative(params in params_strategy()) {
            let m = metrics(&params).unwrap();
            prop_assert!(m.delta1 >= Rational::ZERO);
            prop_assert!(m.delta2 >= Rational::ZERO);
            prop_assert!(m.sigma >= Rational::ZERO);
        }

        #[test]
        fn sigma_bounded_by_sum_bounds(params in params_strategy()) {
            use crate::region::{evaluate_bound, BoundId};
            let sum_cap = |q: &ChannelParams| {
                evaluate_bound(q, BoundId::Eq8Sum).unwrap().min(evaluate_bound(q, BoundId::Eq9Sum).unwrap())
            };
            let pair = RegionPair::new(&params).unwrap();
            let without_max = pair.without_feedback.max_linear(1, 1);
            let cap_with = Rational::from(sum_cap(&params));
            let cap_without = Rational::from(sum_cap(&params.derive_variant(Variant::NoFeedback)));
            prop_assert!(pair.sigma() <= cap_with - without_max);
            // The gap between the sum bounds limits the gain only when the
            // no-feedback region actually reaches its sum bound.
            if without_max == cap_without {
                prop_assert!(pair.sigma() <= cap_with - cap_without);
            }
        }

        #[test]
        fn sum_bound_gap_is_not_a_general_limit(_x in 0..1u8) {
            // Individual bounds bind here: both regions' sum bounds are 1,
            // yet feedback lifts the sum rate from 0 to 1.
            let params = p(0, 0, 1, 1, 0, 1);
            prop_assert_eq!(sigma(&params).unwrap(), Rational::ONE);
        }

        #[test]
        fn perfect_feedback_dominates(params in params_strategy()) {
            let noisy = capacity_region(&params).unwrap();
            let perfect = capacity_region(&params.derive_variant(Variant::PerfectFeedback)).unwrap();
            prop_assert!(noisy.subset_of(&perfect));
        }

        #[test]
        fn thresholds_below_saturation(params in params_strategy()) {
            for link in User::BOTH {
                let t = feedback_threshold(&params, link).unwrap();
                if let Some(level) = t.threshold {
                    prop_assert!(level < t.saturation);
                }
            }
        }
    }
}
