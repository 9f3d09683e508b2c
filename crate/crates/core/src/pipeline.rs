//! The batch pipeline behind the `huygens` binary: sample each primitive,
//! propagate it through the cumulative steps, write the fronts, and run the
//! requested checks. Every check produces one [`CheckLine`]; the run passes
//! iff every line does.

use std::fmt;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fronts::{envelope_verify, semigroup_check, Front};
use crate::output::{self, OutputError};
use crate::scalars::Length;
use crate::scene::{Check, Scenario};
use crate::spheres::Sphere;
use crate::suites::{self, SuiteOutcome};
use crate::GeometryError;

/// Largest admissible semigroup deviation.
pub const SEMIGROUP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Output(#[from] OutputError),
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    /// Where CSV (and SVG) files go; nothing is written without it.
    pub out_dir: Option<PathBuf>,
    pub write_csv: bool,
    pub write_svg: bool,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub trials: usize,
    /// Wavelets drawn per primitive in SVG output.
    pub wavelets: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            out_dir: None,
            write_csv: false,
            write_svg: false,
            checks: Vec::new(),
            seed: 0,
            trials: 10_000,
            wavelets: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} {}", self.name, self.detail)
    }
}

impl From<SuiteOutcome> for CheckLine {
    fn from(o: SuiteOutcome) -> Self {
        CheckLine {
            passed: o.passed(),
            detail: format!(
                "trials={} counterexamples={} max_deviation={:.3e} threshold={:.0e}",
                o.trials, o.counterexamples, o.max_deviation, o.threshold
            ),
            name: o.name,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PipelineReport {
    pub lines: Vec<CheckLine>,
    pub written: Vec<PathBuf>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn failure_detail(e: &GeometryError) -> String {
    match e {
        GeometryError::CausticExceeded { .. } => format!("CausticExceeded: {e}"),
        other => other.to_string(),
    }
}

/// Runs the pipeline for a validated scenario.
pub fn run_pipeline(sc: &Scenario, opts: &PipelineOptions) -> Result<PipelineReport, PipelineError> {
    let mut report = PipelineReport::default();
    if let Some(dir) = &opts.out_dir {
        std::fs::create_dir_all(dir).map_err(|source| PipelineError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    match sc.dimension {
        2 => {
            let fronts = sc.primitives.iter().map(|p| p.front2(sc.sample_count)).collect();
            run_fronts::<2>(fronts, sc, opts, &mut report)?;
        }
        _ => {
            let fronts = sc.primitives.iter().map(|p| p.front3(sc.sample_count)).collect();
            run_fronts::<3>(fronts, sc, opts, &mut report)?;
        }
    }
    report
        .lines
        .extend(run_suites(&[sc.dimension], &opts.checks, opts.seed, opts.trials));
    Ok(report)
}

fn run_fronts<const N: usize>(
    fronts: Vec<Result<Front<N>, GeometryError>>,
    sc: &Scenario,
    opts: &PipelineOptions,
    report: &mut PipelineReport,
) -> Result<(), PipelineError> {
    for (p, front) in fronts.into_iter().enumerate() {
        let front = match front {
            Ok(f) => f,
            Err(e) => {
                report.lines.push(CheckLine {
                    name: format!("sample[p{p}]"),
                    passed: false,
                    detail: e.to_string(),
                });
                continue;
            }
        };

        // cumulative propagation, one step at a time
        let mut chain = vec![front];
        let mut failure = None;
        for (k, &step) in sc.steps.iter().enumerate() {
            match chain[k].propagate(step) {
                Ok(r) => chain.push(r.front_out),
                Err(e) => {
                    failure = Some(format!("step {} (s={step}): {}", k + 1, failure_detail(&e)));
                    break;
                }
            }
        }
        report.lines.push(CheckLine {
            name: format!("propagate[p{p}]"),
            passed: failure.is_none(),
            detail: failure.unwrap_or_else(|| {
                let total: f64 = sc.steps.iter().map(|s| s.get()).sum();
                format!("steps={} total_distance={total}", sc.steps.len())
            }),
        });

        if let (Some(dir), true) = (&opts.out_dir, opts.write_csv) {
            for (k, f) in chain.iter().enumerate() {
                let path = dir.join(format!("p{p}_front{k}.csv"));
                output::write_csv(f, k, &path).map_err(|source| PipelineError::Io {
                    path: path.clone(),
                    source,
                })?;
                report.written.push(path);
            }
        }
        if let (Some(dir), true) = (&opts.out_dir, opts.write_svg) {
            let path = dir.join(format!("p{p}.svg"));
            let wavelets = wavelets_of(&chain[0], sc.steps.first().copied(), opts.wavelets);
            output::write_svg(&chain, &wavelets, &path)?;
            report.written.push(path);
        }

        for check in &opts.checks {
            match check {
                Check::Envelope => report.lines.push(envelope_line(p, &chain, &sc.steps)),
                Check::Semigroup => report.lines.push(semigroup_line(p, &chain[0], &sc.steps)),
                Check::Axioms | Check::Reciprocity => {}
            }
        }
    }
    Ok(())
}

fn wavelets_of<const N: usize>(front: &Front<N>, s: Option<Length>, count: usize) -> Vec<Sphere<N>> {
    let Some(s) = s else { return Vec::new() };
    if count == 0 || front.is_empty() {
        return Vec::new();
    }
    let stride = (front.len() / count).max(1);
    front.points().step_by(stride).take(count).map(|b| Sphere::new(b, s)).collect()
}

fn envelope_line<const N: usize>(p: usize, chain: &[Front<N>], steps: &[Length]) -> CheckLine {
    let name = format!("envelope[p{p}]");
    if chain.len() <= steps.len() {
        return CheckLine {
            name,
            passed: false,
            detail: "CausticExceeded: propagation stopped early".into(),
        };
    }
    let mut failures = 0;
    let mut residual: f64 = 0.0;
    for (k, &s) in steps.iter().enumerate() {
        match envelope_verify(&chain[k], s, &chain[k + 1]) {
            Ok(r) => {
                failures += r.failures().len();
                residual = residual.max(r.max_residual());
            }
            Err(_) => failures += chain[k].len(),
        }
    }
    CheckLine {
        name,
        passed: failures == 0,
        detail: format!("failures={failures} max_residual={residual:.3e}"),
    }
}

fn semigroup_line<const N: usize>(p: usize, front: &Front<N>, steps: &[Length]) -> CheckLine {
    let name = format!("semigroup[p{p}]");
    // consecutive step pairs from the front reached so far; a single step is
    // split in halves
    let pairs: Vec<(Length, Length)> = match steps {
        [] => Vec::new(),
        [s] => {
            let half = Length::new(s.get() / 2.0).expect("half of a length is positive");
            vec![(half, half)]
        }
        _ => steps.windows(2).map(|w| (w[0], w[1])).collect(),
    };
    let mut current = front.clone();
    let mut deviation: f64 = 0.0;
    for (k, (s, t)) in pairs.into_iter().enumerate() {
        match semigroup_check(&current, s, t) {
            Ok(d) => deviation = deviation.max(d),
            Err(e) => {
                return CheckLine { name, passed: false, detail: failure_detail(&e) };
            }
        }
        if k + 1 < steps.len() {
            match current.propagate(steps[k]) {
                Ok(r) => current = r.front_out,
                Err(e) => return CheckLine { name, passed: false, detail: failure_detail(&e) },
            }
        }
    }
    CheckLine {
        name,
        passed: deviation < SEMIGROUP_TOLERANCE,
        detail: format!("max_deviation={deviation:.3e} threshold={SEMIGROUP_TOLERANCE:.0e}"),
    }
}

/// The randomized suites selected by `checks`, for each dimension, in a
/// fixed order from one seeded generator.
pub fn run_suites(dims: &[usize], checks: &[Check], seed: u64, trials: usize) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();
    let axioms = checks.contains(&Check::Axioms);
    let reciprocity = checks.contains(&Check::Reciprocity);
    for &dim in dims {
        macro_rules! suites_for {
            ($n:literal) => {{
                if axioms {
                    lines.push(suites::axiom1_uniqueness::<$n, _>(&mut rng, trials).into());
                    lines.push(suites::axiom2_equivalence::<$n, _>(&mut rng, trials).into());
                    lines.push(suites::axiom3_subtouching::<$n, _>(&mut rng, trials).into());
                    lines.push(suites::sphere_independence::<$n, _>(&mut rng, trials).into());
                }
                if reciprocity {
                    lines.push(suites::reciprocity::<$n, _>(&mut rng, trials).into());
                }
            }};
        }
        match dim {
            2 => suites_for!(2),
            3 => suites_for!(3),
            _ => {}
        }
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::parse_scene;

    fn scene(body: &str) -> Scenario {
        parse_scene(body).unwrap()
    }

    #[test]
    fn circle_semigroup_passes() {
        let sc = scene(r#"{"dimension": 2, "primitives": [{"kind": "circle", "center": [0,0], "radius": 1}],
            "steps": [0.5, 0.5], "sample_count": 64, "checks": ["semigroup"]}"#);
        let opts = PipelineOptions { checks: sc.checks.clone(), ..Default::default() };
        let r = run_pipeline(&sc, &opts).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.lines.iter().any(|l| l.name == "semigroup[p0]"));
    }

    #[test]
    fn ellipse_envelope_passes() {
        let sc = scene(r#"{"dimension": 2, "primitives": [{"kind": "ellipse", "center": [0,0], "semi_axes": [2,1]}],
            "steps": [0.1], "sample_count": 500, "checks": ["envelope", "semigroup"]}"#);
        let opts = PipelineOptions { checks: sc.checks.clone(), ..Default::default() };
        let r = run_pipeline(&sc, &opts).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn inward_circle_past_centre_fails() {
        let sc = scene(r#"{"dimension": 2, "primitives": [{"kind": "circle", "center": [0,0], "radius": 1, "orientation": "inward"}],
            "steps": [1.5], "sample_count": 64, "checks": ["semigroup", "envelope"]}"#);
        let opts = PipelineOptions { checks: sc.checks.clone(), ..Default::default() };
        let r = run_pipeline(&sc, &opts).unwrap();
        assert!(!r.passed());
        let line = r.lines.iter().find(|l| l.name == "propagate[p0]").unwrap();
        assert!(line.detail.contains("CausticExceeded"), "{line}");
        assert!(r.lines.iter().filter(|l| !l.passed).count() >= 2);
    }

    #[test]
    fn sphere_scene_in_3d() {
        let sc = scene(r#"{"dimension": 3, "primitives": [{"kind": "circle", "center": [0,0,0], "radius": 2, "orientation": "inward"}],
            "steps": [0.5, 0.5], "sample_count": 16, "checks": ["envelope", "semigroup"]}"#);
        let opts = PipelineOptions { checks: sc.checks.clone(), ..Default::default() };
        let r = run_pipeline(&sc, &opts).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn suites_are_replayable() {
        let a = run_suites(&[2, 3], &[Check::Axioms, Check::Reciprocity], 42, 200);
        let b = run_suites(&[2, 3], &[Check::Axioms, Check::Reciprocity], 42, 200);
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        assert!(a.iter().all(|l| l.passed));
    }

    #[test]
    fn files_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let sc = scene(r#"{"dimension": 2, "primitives": [{"kind": "circle", "center": [0,0], "radius": 1}],
            "steps": [0.5, 0.5], "sample_count": 16}"#);
        let opts = PipelineOptions {
            out_dir: Some(dir.path().to_owned()),
            write_csv: true,
            write_svg: true,
            ..Default::default()
        };
        let r = run_pipeline(&sc, &opts).unwrap();
        assert_eq!(r.written.len(), 4);
        assert!(r.written.iter().all(|f| f.starts_with(dir.path()) && f.exists()));
        let csv = std::fs::read_to_string(dir.path().join("p0_front2.csv")).unwrap();
        assert_eq!(csv.lines().count(), 17);
        assert!(csv.lines().nth(1).unwrap().starts_with("2,0,2.000000000000,"));
    }
}
