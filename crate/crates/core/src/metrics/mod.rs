//! Word metrics, the closeness function
//! `h(n) = max { d_A(π(w), ψ(w)) : w ∈ L, |w| ≤ n }` and the coarse order
//! `h ⪯ f` (`h(n) ≤ K f(M n)` for all `n ≥ N`).

mod bfs;
mod formulas;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::groups::{BaumslagSolitar, BsNormalForm, Group, Heisenberg, HeisenbergTriple, Lamplighter, LamplighterElement};
use crate::representations::{Element, Representation, RepresentationError};
use crate::words::Word;

pub use bfs::{ball, bfs_distance, symmetric_generators};
pub use formulas::{bs_complexity, bs_power_distance, fit_sandwich, h3_metric_bounds, lamplighter_distance, SandwichFit};

/// Default search radius for Cayley graph distances.
pub const DEFAULT_BFS_CAP: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("distance mode {mode} is not available for {group}")]
    ModeUnavailable { mode: DistanceMode, group: String },
    #[error("bad scale function {0:?}")]
    BadScale(String),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}

/// A word length known to lie in `[lower, upper]`; `upper` may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistanceValue {
    pub lower: f64,
    pub upper: f64,
}

impl DistanceValue {
    pub fn new(lower: f64, upper: f64) -> DistanceValue {
        assert!(0.0 <= lower && lower <= upper, "bad interval [{lower}, {upper}]");
        DistanceValue { lower, upper }
    }

    pub fn exact(d: f64) -> DistanceValue {
        DistanceValue::new(d, d)
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, d: f64) -> bool {
        self.lower <= d && d <= self.upper
    }
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", format_number(self.lower))
        } else {
            write!(f, "[{}, {}]", format_number(self.lower), format_number(self.upper))
        }
    }
}

/// Decimal form used in reports: integers without a fractional part,
/// `inf` for infinity.
pub fn format_number(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DistanceMode {
    /// A closed formula: lamplighter word length, powers of `a` in `BS(1, q)`.
    ExactFormula,
    /// Bidirectional search up to the given radius.
    BfsCapped(u32),
    /// The Heisenberg estimates `(|x|+|y|+√|z|)/4 ≤ d ≤ 6(|x|+|y|+√|z|)`.
    IntervalBounds,
}

impl fmt::Display for DistanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceMode::ExactFormula => write!(f, "exact-formula"),
            DistanceMode::BfsCapped(cap) => write!(f, "bfs-capped({cap})"),
            DistanceMode::IntervalBounds => write!(f, "interval-bounds"),
        }
    }
}

/// Groups whose word length `d_A(g)` can be evaluated or bounded.
pub trait MeasuredGroup: Group {
    fn default_mode(&self) -> DistanceMode;

    fn measure(&self, g: &Self::Element, mode: DistanceMode) -> Result<DistanceValue, MetricsError>;
}

fn unavailable(mode: DistanceMode, group: &impl Group) -> MetricsError {
    MetricsError::ModeUnavailable {
        mode,
        group: group.name(),
    }
}

impl MeasuredGroup for Lamplighter {
    fn default_mode(&self) -> DistanceMode {
        DistanceMode::ExactFormula
    }

    fn measure(&self, g: &LamplighterElement, mode: DistanceMode) -> Result<DistanceValue, MetricsError> {
        match mode {
            DistanceMode::ExactFormula => Ok(DistanceValue::exact(lamplighter_distance(g) as f64)),
            DistanceMode::BfsCapped(cap) => Ok(bfs_distance(self, &self.identity(), g, cap)),
            DistanceMode::IntervalBounds => Err(unavailable(mode, self)),
        }
    }
}

impl MeasuredGroup for BaumslagSolitar {
    fn default_mode(&self) -> DistanceMode {
        if self.p() == 1 {
            DistanceMode::ExactFormula
        } else {
            DistanceMode::BfsCapped(DEFAULT_BFS_CAP)
        }
    }

    /// The exact formula covers powers of `a` in `BS(1, q)`.
    fn measure(&self, g: &BsNormalForm, mode: DistanceMode) -> Result<DistanceValue, MetricsError> {
        match mode {
            DistanceMode::ExactFormula if self.p() == 1 && g.stem.is_empty() => {
                let d = bs_power_distance(self.q(), &g.tail);
                Ok(DistanceValue::exact(num_traits::ToPrimitive::to_f64(&d).unwrap_or(f64::INFINITY)))
            }
            DistanceMode::BfsCapped(cap) => Ok(bfs_distance(self, &self.identity(), g, cap)),
            _ => Err(unavailable(mode, self)),
        }
    }
}

impl MeasuredGroup for Heisenberg {
    fn default_mode(&self) -> DistanceMode {
        DistanceMode::IntervalBounds
    }

    fn measure(&self, g: &HeisenbergTriple, mode: DistanceMode) -> Result<DistanceValue, MetricsError> {
        match mode {
            DistanceMode::IntervalBounds => Ok(h3_metric_bounds(g)),
            DistanceMode::BfsCapped(cap) => Ok(bfs_distance(self, &self.identity(), g, cap)),
            DistanceMode::ExactFormula => Err(unavailable(mode, self)),
        }
    }
}

/// `d_A(π(w), ψ(w))` for a word of the language.
pub fn closeness<R>(rep: &R, w: &Word, mode: DistanceMode) -> Result<(DistanceValue, Element<R>), MetricsError>
where
    R: Representation,
    R::G: MeasuredGroup,
{
    let group = rep.group();
    let assigned = rep.decode(w)?;
    let natural = group.evaluate(w).map_err(RepresentationError::from)?;
    let gap = group.difference(&natural, &assigned);
    Ok((group.measure(&gap, mode)?, gap))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    pub h_lower: f64,
    pub h_upper: f64,
    /// First word in shortlex order attaining `h_lower`.
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthProfile {
    pub generators: String,
    pub representation: String,
    pub mode: String,
    pub rows: Vec<ProfileRow>,
}

impl GrowthProfile {
    pub fn lower_samples(&self) -> Vec<(usize, f64)> {
        self.rows.iter().map(|r| (r.n, r.h_lower)).collect()
    }

    pub fn upper_samples(&self) -> Vec<(usize, f64)> {
        self.rows.iter().map(|r| (r.n, r.h_upper)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,h_lower,h_upper,witness\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.n,
                format_number(r.h_lower),
                format_number(r.h_upper),
                r.witness
            ));
        }
        out
    }
}

/// `h(n)` for `n = 0..=n_max`, each as an interval. Words are measured in
/// parallel; maxima and witnesses are merged in shortlex order, so the
/// result does not depend on scheduling.
pub fn closeness_profile<R>(rep: &R, n_max: usize, mode: DistanceMode) -> Result<GrowthProfile, MetricsError>
where
    R: Representation,
    R::G: MeasuredGroup,
{
    let group = rep.group();
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut lower = 0.0;
    let mut upper = 0.0;
    let mut witness: Option<String> = None;
    for n in 0..=n_max {
        let words = rep.enumerate_exact(n);
        let values = words
            .par_iter()
            .map(|w| closeness(rep, w, mode).map(|(d, _)| d))
            .collect::<Result<Vec<_>, _>>()?;
        for (w, d) in words.iter().zip(&values) {
            if d.lower > lower || witness.is_none() {
                lower = f64::max(lower, d.lower);
                witness = Some(w.to_string());
            }
            upper = f64::max(upper, d.upper);
        }
        rows.push(ProfileRow {
            n,
            h_lower: lower,
            h_upper: upper,
            witness: witness.clone().unwrap_or_default(),
        });
    }
    let generators = symmetric_generators(group)
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    Ok(GrowthProfile {
        generators,
        representation: rep.label(),
        mode: mode.to_string(),
        rows,
    })
}

/// A non-decreasing, non-negative function of `n`.
#[derive(Clone, Debug, PartialEq)]
pub enum ScaleFunction {
    Zero,
    Identity,
    Exponential,
    Power(f64),
    Constant(f64),
    /// Values at `0, 1, 2, …`; held at the last value beyond the table.
    Table(Vec<f64>),
}

impl ScaleFunction {
    pub fn table(values: Vec<f64>) -> Result<ScaleFunction, MetricsError> {
        let monotone = values.windows(2).all(|w| w[0] <= w[1]);
        if values.is_empty() || !monotone || values[0] < 0.0 {
            return Err(MetricsError::BadScale(format!("{values:?}")));
        }
        Ok(ScaleFunction::Table(values))
    }

    pub fn eval(&self, n: u64) -> f64 {
        let x = n as f64;
        match self {
            ScaleFunction::Zero => 0.0,
            ScaleFunction::Identity => x,
            ScaleFunction::Exponential => x.exp(),
            ScaleFunction::Power(r) => x.powf(*r),
            ScaleFunction::Constant(c) => *c,
            ScaleFunction::Table(values) => values[(n as usize).min(values.len() - 1)],
        }
    }
}

impl fmt::Display for ScaleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleFunction::Zero => write!(f, "zero"),
            ScaleFunction::Identity => write!(f, "identity"),
            ScaleFunction::Exponential => write!(f, "exp"),
            ScaleFunction::Power(r) => write!(f, "power:{r}"),
            ScaleFunction::Constant(c) => write!(f, "const:{c}"),
            ScaleFunction::Table(values) => {
                let values: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "table:{}", values.join(","))
            }
        }
    }
}

impl FromStr for ScaleFunction {
    type Err = MetricsError;

    /// `zero`, `identity`, `exp`, `power:R`, `const:C` or `table:v0,v1,…`.
    fn from_str(s: &str) -> Result<ScaleFunction, MetricsError> {
        let bad = || MetricsError::BadScale(s.to_string());
        let number = |v: &str| v.trim().parse::<f64>().ok().filter(|x| x.is_finite() && *x >= 0.0);
        match s.split_once(':') {
            None => match s.trim() {
                "zero" => Ok(ScaleFunction::Zero),
                "identity" | "id" => Ok(ScaleFunction::Identity),
                "exp" => Ok(ScaleFunction::Exponential),
                _ => Err(bad()),
            },
            Some(("power", r)) => number(r).map(ScaleFunction::Power).ok_or_else(bad),
            Some(("const", c)) => number(c).map(ScaleFunction::Constant).ok_or_else(bad),
            Some(("table", vs)) => {
                let values = vs.split(',').map(number).collect::<Option<Vec<_>>>().ok_or_else(bad)?;
                ScaleFunction::table(values)
            }
            Some(_) => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoarseWitness {
    pub k: u64,
    pub m: u64,
    pub n: u64,
}

/// Searches for `(K, M, N)`, smallest in lexicographic order, with
/// `h(n) ≤ K f(M n)` on every sample `n ≥ N`, where `K ≤ k_max`,
/// `M ≤ m_max` and `1 ≤ N ≤ max(1, n_max / 2)` so the inequality is tested
/// on at least half of the sampled range. Samples with `n = 0` are never
/// constrained.
///
/// A finite sample can refute a witness but not prove `h ⪯ f`; a hit is
/// evidence for the asymptotic relation, a miss evidence against it.
pub fn coarse_dominates(samples: &[(usize, f64)], f: &ScaleFunction, k_max: u64, m_max: u64) -> Option<CoarseWitness> {
    let n_max = samples.iter().map(|s| s.0).max()? as u64;
    let n_limit = (n_max / 2).max(1);
    for k in 1..=k_max {
        for m in 1..=m_max {
            // the failures only depend on n; find the last failing n
            let last_failure = samples
                .iter()
                .filter(|&&(n, h)| n > 0 && h > k as f64 * f.eval(m * n as u64) * (1.0 + 1e-12))
                .map(|&(n, _)| n as u64)
                .max();
            let n = last_failure.map_or(1, |n| n + 1);
            if n <= n_limit {
                return Some(CoarseWitness { k, m, n });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::{BsRepresentation, H3Representation, LamplighterRepresentation};

    #[test]
    fn witness_search_examples() {
        let linear: Vec<(usize, f64)> = (0..=16).map(|n| (n, n as f64)).collect();
        assert_eq!(
            coarse_dominates(&linear, &ScaleFunction::Identity, 64, 64),
            Some(CoarseWitness { k: 1, m: 1, n: 1 })
        );
        let zero: Vec<(usize, f64)> = (0..=16).map(|n| (n, 0.0)).collect();
        for f in [ScaleFunction::Zero, ScaleFunction::Identity, ScaleFunction::Exponential] {
            assert_eq!(coarse_dominates(&zero, &f, 64, 64), Some(CoarseWitness { k: 1, m: 1, n: 1 }));
        }
        let doubling: Vec<(usize, f64)> = (0..=16).map(|n| (n, 2f64.powi(n as i32))).collect();
        assert_eq!(coarse_dominates(&doubling, &ScaleFunction::Identity, 10, 10), None);
        assert!(coarse_dominates(&doubling, &ScaleFunction::Exponential, 1, 1).is_some());
        // a finite sample of a linear function is dominated by 𝔷 only from past the data
        assert_eq!(coarse_dominates(&linear, &ScaleFunction::Zero, 64, 64), None);
    }

    /// Brute force over every triple, the definition read literally.
    fn brute_force(samples: &[(usize, f64)], f: &ScaleFunction, k_max: u64, m_max: u64) -> Option<CoarseWitness> {
        let n_max = samples.iter().map(|s| s.0).max()? as u64;
        for k in 1..=k_max {
            for m in 1..=m_max {
                for n in 1..=(n_max / 2).max(1) {
                    if samples
                        .iter()
                        .filter(|s| s.0 as u64 >= n)
                        .all(|&(x, h)| h <= k as f64 * f.eval(m * x as u64) * (1.0 + 1e-12))
                    {
                        return Some(CoarseWitness { k, m, n });
                    }
                }
            }
        }
        None
    }

    proptest::proptest! {
        #[test]
        fn witness_search_matches_brute_force(
            values in proptest::collection::vec(0u32..400, 1..18),
            power in 0u32..3,
        ) {
            let mut h = 0.0;
            let samples: Vec<(usize, f64)> = values.iter().enumerate().map(|(n, &v)| {
                h = f64::max(h, v as f64);
                (n, h)
            }).collect();
            let f = ScaleFunction::Power(power as f64);
            proptest::prop_assert_eq!(coarse_dominates(&samples, &f, 6, 6), brute_force(&samples, &f, 6, 6));
        }
    }

    #[test]
    fn scale_functions_parse() {
        assert_eq!("exp".parse::<ScaleFunction>().unwrap(), ScaleFunction::Exponential);
        assert_eq!("power:2".parse::<ScaleFunction>().unwrap(), ScaleFunction::Power(2.0));
        assert_eq!("table:0,1,4".parse::<ScaleFunction>().unwrap().eval(9), 4.0);
        assert!("table:3,1".parse::<ScaleFunction>().is_err());
        assert!("const:-1".parse::<ScaleFunction>().is_err());
        assert!("cubic".parse::<ScaleFunction>().is_err());
        for text in ["zero", "identity", "exp", "power:1.5", "const:3", "table:0,1,4"] {
            assert_eq!(text.parse::<ScaleFunction>().unwrap().to_string(), text);
        }
    }

    #[test]
    fn lamplighter_profile_start() {
        let r = LamplighterRepresentation::new();
        let p = closeness_profile(&r, 4, DistanceMode::ExactFormula).unwrap();
        let h: Vec<f64> = p.rows.iter().map(|r| r.h_lower).collect();
        assert_eq!(h, vec![0.0, 0.0, 0.0, 0.0, 1.0]);
        // the first of several words attaining h(4) = 1
        assert_eq!(p.rows[4].witness, "aata");
        let (d, _) = closeness(&r, &"aat-a".parse().unwrap(), DistanceMode::ExactFormula).unwrap();
        assert_eq!(d, DistanceValue::exact(1.0));
        // recomputed directly from the four words of L^{<=3}
        for w in r.enumerate(3) {
            let (d, _) = closeness(&r, &w, DistanceMode::ExactFormula).unwrap();
            assert_eq!(d, DistanceValue::exact(0.0), "{w}");
        }
    }

    #[test]
    fn profiles_are_monotone() {
        let bs = BsRepresentation::new(BaumslagSolitar::new(1, 2).unwrap());
        let h3 = H3Representation::new();
        let lamp = LamplighterRepresentation::new();
        let profiles = [
            closeness_profile(&bs, 8, DistanceMode::ExactFormula).unwrap(),
            closeness_profile(&h3, 8, DistanceMode::IntervalBounds).unwrap(),
            closeness_profile(&lamp, 8, DistanceMode::ExactFormula).unwrap(),
        ];
        for p in &profiles {
            assert_eq!(p.rows[0].h_upper, 0.0);
            for pair in p.rows.windows(2) {
                assert!(pair[0].h_lower <= pair[1].h_lower && pair[0].h_upper <= pair[1].h_upper);
            }
            for row in &p.rows {
                assert!(row.witness.len() <= 3 * row.n + 1);
            }
        }
    }

    #[test]
    fn bfs_mode_matches_formula_on_small_profiles() {
        let bs = BsRepresentation::new(BaumslagSolitar::new(1, 2).unwrap());
        let exact = closeness_profile(&bs, 6, DistanceMode::ExactFormula).unwrap();
        let searched = closeness_profile(&bs, 6, DistanceMode::BfsCapped(16)).unwrap();
        assert_eq!(exact.lower_samples(), searched.lower_samples());
        let lamp = LamplighterRepresentation::new();
        let exact = closeness_profile(&lamp, 7, DistanceMode::ExactFormula).unwrap();
        let searched = closeness_profile(&lamp, 7, DistanceMode::BfsCapped(12)).unwrap();
        assert_eq!(exact.upper_samples(), searched.upper_samples());
    }

    #[test]
    fn csv_shape() {
        let p = closeness_profile(&H3Representation::new(), 3, DistanceMode::IntervalBounds).unwrap();
        let csv = p.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,h_lower,h_upper,witness");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0,0,0,"));
    }
}
