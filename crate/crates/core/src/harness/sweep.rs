//! Sweeps, matched comparisons and the dimensionality study.

use rayon::prelude::*;

use super::plan::{ComparePlan, DimSweepPlan, SweepPlan};
use super::stats::{mann_whitney, RankSum, Summary};
use super::{run_once, HarnessError, Problem};
use crate::engine::Variant;

/// `P ∈ {16, 64, 256, 1024}` crossed with `S ∈ {2, 4, 16, 64, 256}`, keeping `S ≤ P`.
pub fn default_toy_grid() -> Vec<(usize, usize)> {
    let mut grid = Vec::new();
    for p in [16, 64, 256, 1024] {
        for s in [2, 4, 16, 64, 256] {
            if s <= p {
                grid.push((p, s));
            }
        }
    }
    grid
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub population_size: usize,
    pub sample_size: usize,
    /// Objective of each simulation, in seed order.
    pub values: Vec<f64>,
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub variant: Variant,
    pub points: Vec<SweepPoint>,
    /// Index into `points` of the highest mean.
    pub best: usize,
}

impl SweepResult {
    pub fn best_point(&self) -> &SweepPoint {
        &self.points[self.best]
    }
}

/// Runs every simulation of every grid point (in parallel across runs) and
/// picks the point with the highest mean objective. Ties go to the smaller
/// `P`, then the smaller `S`.
pub fn sweep(problem: &Problem, plan: &SweepPlan) -> Result<SweepResult, HarnessError> {
    plan.validate()?;
    let n = plan.simulations_per_point;
    let jobs: Vec<(usize, usize)> = (0..plan.grid.len())
        .flat_map(|point| (0..n).map(move |sim| (point, sim)))
        .collect();
    let values = jobs
        .par_iter()
        .map(|&(point, sim)| {
            let (p, s) = plan.grid[point];
            run_once(problem, &plan.engine(p, s, sim), None)?.objective(plan.objective)
        })
        .collect::<Result<Vec<f64>, HarnessError>>()?;

    let points: Vec<SweepPoint> = plan
        .grid
        .iter()
        .zip(values.chunks(n))
        .map(|(&(p, s), vals)| SweepPoint {
            population_size: p,
            sample_size: s,
            values: vals.to_vec(),
            summary: Summary::of(vals),
        })
        .collect();
    let best = (0..points.len())
        .reduce(|a, b| {
            let (pa, pb) = (&points[a], &points[b]);
            let key = |pt: &SweepPoint| (pt.population_size, pt.sample_size);
            match pb.summary.mean.total_cmp(&pa.summary.mean) {
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Equal => {
                    if key(pb) < key(pa) {
                        b
                    } else {
                        a
                    }
                }
            }
        })
        .expect("validated grid is non-empty");
    Ok(SweepResult {
        variant: plan.variant,
        points,
        best,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArmResult {
    pub label: String,
    pub values: Vec<f64>,
    pub summary: Summary,
}

/// Two-sided rank-sum test between arms `a` and `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairTest {
    pub a: usize,
    pub b: usize,
    /// `mean(a) - mean(b)`.
    pub difference: f64,
    pub test: RankSum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub arms: Vec<ArmResult>,
    pub pairs: Vec<PairTest>,
}

impl ComparisonReport {
    pub fn arm(&self, label: &str) -> Option<&ArmResult> {
        self.arms.iter().find(|a| a.label == label)
    }
}

/// Runs every arm with the same per-repeat seeds and tests every pair.
pub fn compare_variants(problem: &Problem, plan: &ComparePlan) -> Result<ComparisonReport, HarnessError> {
    plan.validate()?;
    let jobs: Vec<(usize, usize)> = (0..plan.arms.len())
        .flat_map(|arm| (0..plan.repeats).map(move |r| (arm, r)))
        .collect();
    let values = jobs
        .par_iter()
        .map(|&(arm, r)| run_once(problem, &plan.engine(&plan.arms[arm], r), None)?.objective(plan.objective))
        .collect::<Result<Vec<f64>, HarnessError>>()?;
    let arms: Vec<ArmResult> = plan
        .arms
        .iter()
        .zip(values.chunks(plan.repeats))
        .map(|(spec, vals)| ArmResult {
            label: spec.label.clone(),
            values: vals.to_vec(),
            summary: Summary::of(vals),
        })
        .collect();
    let mut pairs = Vec::new();
    for a in 0..arms.len() {
        for b in a + 1..arms.len() {
            pairs.push(PairTest {
                a,
                b,
                difference: arms[a].summary.mean - arms[b].summary.mean,
                test: mann_whitney(&arms[a].values, &arms[b].values),
            });
        }
    }
    Ok(ComparisonReport { arms, pairs })
}

/// Meta-optimized outcome of one variant at one dimensionality.
#[derive(Clone, Debug, PartialEq)]
pub struct DimRow {
    pub dimensions: usize,
    pub variant: Variant,
    pub population_size: usize,
    pub sample_size: usize,
    pub values: Vec<f64>,
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DimSweepReport {
    /// Rows ordered by dimensionality, aging before non-aging.
    pub rows: Vec<DimRow>,
    pub sweeps: Vec<(usize, SweepResult)>,
}

impl DimSweepReport {
    pub fn row(&self, dimensions: usize, variant: Variant) -> Option<&DimRow> {
        self.rows
            .iter()
            .find(|r| r.dimensions == dimensions && r.variant == variant)
    }
}

/// Sweeps AE and NAE independently at every dimensionality of the toy space
/// and reports each variant at its best grid point.
pub fn dimensionality_sweep(plan: &DimSweepPlan) -> Result<DimSweepReport, HarnessError> {
    plan.validate()?;
    let mut rows = Vec::new();
    let mut sweeps = Vec::new();
    for &d in &plan.dimensions {
        let problem = Problem::toy(d, plan.noise_sigma)?;
        for variant in [Variant::Aging, Variant::NonAging] {
            let result = sweep(&problem, &plan.sweep_plan(variant))?;
            let best = result.best_point();
            rows.push(DimRow {
                dimensions: d,
                variant,
                population_size: best.population_size,
                sample_size: best.sample_size,
                values: best.values.clone(),
                summary: best.summary,
            });
            sweeps.push((d, result));
        }
    }
    Ok(DimSweepReport { rows, sweeps })
}
