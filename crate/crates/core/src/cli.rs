//! Command-line front end producing JSON reports.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{rational, Matrix, Subspace};
use crate::flagvariety::FlagPoint;
use crate::kgroup::{check_k, KGroup, KModel, NilAlgebra};
use crate::orbits::{same_orbit, OrbitPoint, Punctured, Triple};
use crate::rootdata::{GradedLie, LQSpec};
use crate::schubert::{CellDecomposition, SamplingScheme};
use crate::symmetry::report::verify_restriction;
use crate::symmetry::Setting;
use crate::weyl::double_coset_reps;

#[derive(Parser, Debug)]
#[command(name = "symflag", version, about = "Exact verification of symmetries on restricted flag varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hasse diagram, cell spaces and double coset representatives.
    Hasse(Common),
    /// Classify sampled points for every double coset representative.
    VerifyTheorem(Common),
    /// Structural checks of the group K.
    KgroupCheck {
        #[command(flatten)]
        common: Common,
        /// Override the curvature scale, e.g. "0" or "3/2".
        #[arg(long, default_value = "1")]
        mu_scale: String,
    },
    /// Orbit invariants and transporters for the subspaces in a file.
    Orbits {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subspaces: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Case {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long, value_enum)]
    pub case: Case,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub grid_radius: i64,
    /// Random samples per cell (verify-theorem) or group samples (kgroup-check).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Per-cell cap on grid points.
    #[arg(long, default_value_t = 200)]
    pub cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Common {
    fn spec(&self) -> Result<LQSpec> {
        match (self.case, self.l) {
            (Case::A, Some(l)) => LQSpec::a(self.n, l),
            (Case::A, None) => Err(Error::InvalidParameters("case A needs --l".into())),
            (Case::C, None) => LQSpec::c(self.n),
            (Case::C, Some(_)) => Err(Error::InvalidParameters("case C takes no --l".into())),
        }
    }

    fn samples(&self, default: usize) -> Result<usize> {
        let s = self.samples.unwrap_or(default);
        if s == 0 || self.cap == 0 || self.grid_radius <= 0 {
            return Err(Error::InvalidParameters("counts must be positive".into()));
        }
        Ok(s)
    }
}

/// A report and whether it records a finding.
pub struct Outcome {
    pub report: Value,
    pub finding: bool,
}

pub fn hasse(spec: LQSpec) -> Result<Outcome> {
    let lie = GradedLie::new(spec)?;
    let cd = CellDecomposition::new(lie);
    let cells: Vec<Value> = cd
        .cells()
        .iter()
        .map(|h| {
            json!({
                "w": h.w,
                "length": h.length,
                "cell_space": cd.cell_space(h).iter().map(|r| r.label()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let reps: Vec<Value> = double_coset_reps(cd.lie()).iter().map(|h| json!({"w": h.w, "length": h.length})).collect();
    Ok(Outcome { report: json!({"spec": spec, "cells": cells, "double_coset_reps": reps}), finding: false })
}

pub fn verify_theorem(spec: LQSpec, scheme: SamplingScheme) -> Result<Outcome> {
    let cd = CellDecomposition::new(GradedLie::new(spec)?);
    let mut out = Vec::new();
    let mut finding = false;
    for rep in double_coset_reps(cd.lie()) {
        if rep.length == 0 {
            continue;
        }
        let predicted = rep.length == 1;
        let setting = Setting::new(&cd, rep.clone())?;
        let report = verify_restriction(&setting, &scheme)?;
        let agrees = report.is_symmetric() == predicted;
        finding |= !agrees;
        out.push(json!({
            "v": rep.w,
            "length": rep.length,
            "predicted_symmetric": predicted,
            "verdict": report.verdict,
            "agrees": agrees,
            "cells": report.cells,
        }));
    }
    Ok(Outcome {
        report: json!({
            "spec": spec,
            "seed": scheme.seed,
            "grid_radius": scheme.grid_radius,
            "cap": scheme.cap,
            "samples": scheme.random,
            "representatives": out,
        }),
        finding,
    })
}

pub fn kgroup_check(spec: LQSpec, mu_scale: &str, seed: u64, samples: usize) -> Result<Outcome> {
    let model = KModel::with_mu_scale(spec, rational::parse(mu_scale)?)?;
    let group = KGroup::new(NilAlgebra::new(model)?);
    let report = check_k(&group, seed, samples)?;
    let finding = !report.all_passed() || !report.findings.is_empty();
    Ok(Outcome { report: serde_json::to_value(&report).map_err(|e| Error::Inconsistent(e.to_string()))?, finding })
}

#[derive(Deserialize)]
struct SubspaceFile {
    ambient: usize,
    subspaces: Vec<NamedSubspace>,
}

#[derive(Deserialize)]
struct NamedSubspace {
    name: String,
    /// One row per spanning vector.
    basis: Matrix,
}

#[derive(Serialize)]
struct PointEntry<'a> {
    name: &'a str,
    triple: Triple,
}

pub fn orbits(spec: LQSpec, input: &str, seed: u64) -> Result<Outcome> {
    let file: SubspaceFile = serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
    let lie = GradedLie::new(spec)?;
    if file.ambient != spec.ambient() {
        return Err(Error::DimensionMismatch(format!("{spec} acts on dimension {}, file has {}", spec.ambient(), file.ambient)));
    }
    let pm = Punctured::new(&lie)?;
    let nil = NilAlgebra::new(KModel::new(spec)?)?;
    let origin = vec![rational::one(), rational::zero()];
    let mut points = Vec::new();
    for s in &file.subspaces {
        if s.basis.cols() != file.ambient {
            return Err(Error::DimensionMismatch(format!("{}: vectors of length {}", s.name, s.basis.cols())));
        }
        let flag = FlagPoint::new(&lie, Subspace::column_span(&s.basis.transpose()))
            .map_err(|e| Error::Precondition(format!("{}: {e}", s.name)))?;
        pm.triple(&flag).map_err(|e| Error::Precondition(format!("{}: {e}", s.name)))?;
        let size = nil.model.size;
        points.push((s.name.as_str(), OrbitPoint { nil: Matrix::zeros(size, size), line: origin.clone(), flag }));
    }
    let mut entries = Vec::new();
    for (name, p) in &points {
        entries.push(PointEntry { name, triple: Triple(pm.triple(&p.flag)?) });
    }
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let c = same_orbit(&pm, &nil, &points[i].1, &points[j].1, seed)?;
            pairs.push(json!({
                "pair": [points[i].0, points[j].0],
                "triple": [c.triples.0, c.triples.1],
                "same_orbit": c.same_orbit,
                "component": c.transporter.as_ref().map(|t| t.component),
                "transporter": c.transporter.as_ref().map(|t| &t.flag),
            }));
        }
    }
    Ok(Outcome {
        report: json!({
            "spec": spec,
            "seed": seed,
            "removed": [pm.w1, pm.w2],
            "points": entries,
            "pairs": pairs,
        }),
        finding: false,
    })
}

fn execute(cli: &Cli) -> Result<(Outcome, Option<PathBuf>)> {
    Ok(match &cli.command {
        Command::Hasse(c) => (hasse(c.spec()?)?, c.out.clone()),
        Command::VerifyTheorem(c) => {
            let scheme = SamplingScheme { grid_radius: c.grid_radius, cap: c.cap, random: c.samples(20)?, seed: c.seed };
            (verify_theorem(c.spec()?, scheme)?, c.out.clone())
        }
        Command::KgroupCheck { common: c, mu_scale } => (kgroup_check(c.spec()?, mu_scale, c.seed, c.samples(100)?)?, c.out.clone()),
        Command::Orbits { common: c, subspaces } => {
            let input = std::fs::read_to_string(subspaces).map_err(|e| Error::Parse(format!("{}: {e}", subspaces.display())))?;
            (orbits(c.spec()?, &input, c.seed)?, c.out.clone())
        }
    })
}

/// Runs the command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok((outcome, out)) => {
            let text = serde_json::to_string_pretty(&outcome.report).expect("JSON values serialize") + "\n";
            let written = match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| e.to_string()),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 1;
            }
            if outcome.finding {
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
