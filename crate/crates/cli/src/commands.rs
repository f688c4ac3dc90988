use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

use qaa_core::flow::{compute_flow, intersection_index, IndexOptions};
use qaa_core::flow::{
    DEFAULT_FLOW_DT, DEFAULT_FLOW_SAMPLES, DEFAULT_FLOW_SCALE, DEFAULT_FLOW_STEPS,
};
use qaa_core::noise::{noisy_qaa_histogram, NoiseModel, NoisyRunConfig};
use qaa_core::{
    brute_force_maxcut, parse_graph, qaa_evolve, sample_measurements, Graph, TrotterSchedule,
};

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct BruteArgs {
    /// Graph JSON file: {"vertices": n, "edges": [[i, j], ...]}
    pub graph: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct QaaArgs {
    pub graph: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    pub dt: f64,
    /// Number of Trotter steps N_t.
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, default_value_t = 8192)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// heron-r3-opt, heron-r2-med, none or custom:p1,p2,pro. Omit for the ideal circuit.
    #[arg(long)]
    pub noise: Option<String>,
    /// Keep only the K most frequent bitstrings (0 keeps all).
    #[arg(long, default_value_t = 8)]
    pub top: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct FlowArgs {
    pub graph: PathBuf,
    /// Number of s values in [0, 1].
    #[arg(long, default_value_t = DEFAULT_FLOW_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_FLOW_STEPS)]
    pub steps: usize,
    #[arg(long, default_value_t = DEFAULT_FLOW_DT)]
    pub dt: f64,
    /// Radius multiplier: points are drawn at radius scale * s.
    #[arg(long, default_value_t = DEFAULT_FLOW_SCALE)]
    pub scale: f64,
    /// Eigenphase CSV; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Branch CSV. Defaults to `<out>.branches.csv` next to --out.
    #[arg(long)]
    pub branches: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct IndexArgs {
    pub graph: PathBuf,
    /// Initial grid size over s (refined adaptively).
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Everything a command writes. `primary` goes to --out or stdout.
pub struct Output {
    pub primary: String,
    pub extra: Vec<(PathBuf, String)>,
    pub notes: Vec<String>,
}

impl Output {
    fn single(primary: String) -> Self {
        Self {
            primary,
            extra: Vec::new(),
            notes: Vec::new(),
        }
    }
}

pub fn load_graph(path: &Path) -> Result<(Graph, Vec<u8>)> {
    let bytes = std::fs::read(path)
        .with_context(|| format!("cannot read graph file {}", path.display()))?;
    let text =
        std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let graph = parse_graph(text).with_context(|| format!("in {}", path.display()))?;
    Ok((graph, bytes))
}

#[derive(Serialize)]
struct BruteReport {
    max_cut: usize,
    degeneracy: usize,
    solutions: Vec<String>,
}

pub fn brute(g: &Graph) -> Result<Output> {
    let sol = brute_force_maxcut(g)?;
    let report = BruteReport {
        max_cut: sol.max_cut,
        degeneracy: sol.degeneracy(),
        solutions: sol.solutions.iter().map(|p| p.to_string()).collect(),
    };
    Ok(Output::single(json_line(&report)?))
}

pub fn qaa(g: &Graph, args: &QaaArgs) -> Result<Output> {
    let schedule = TrotterSchedule::new(args.dt, args.steps)?;
    let hist = match &args.noise {
        None => sample_measurements(&qaa_evolve(g, schedule)?, args.shots, args.seed)?,
        Some(name) => noisy_qaa_histogram(&NoisyRunConfig {
            graph: g.clone(),
            schedule,
            noise: name.parse::<NoiseModel>()?,
            shots: args.shots,
            seed: args.seed,
        })?,
    };
    Ok(Output::single(json_line(&hist.to_report(args.top))?))
}

pub fn flow(g: &Graph, args: &FlowArgs) -> Result<Output> {
    let schedule = TrotterSchedule::new(args.dt, args.steps)?;
    let flow = compute_flow(g, args.samples, schedule, args.scale)?;

    let mut samples = String::from("s,k,phase,re_scaled,im_scaled\n");
    for sample in &flow.samples {
        for (k, (phi, z)) in sample
            .eigenphases
            .iter()
            .zip(&sample.scaled_points)
            .enumerate()
        {
            writeln!(samples, "{},{},{},{},{}", sample.s, k, phi, z.re, z.im)?;
        }
    }
    let mut branches = String::from("branch_id,s,phase\n");
    for (id, branch) in flow.branches.iter().enumerate() {
        for (s, phi) in &branch.points {
            writeln!(branches, "{id},{s},{phi}")?;
        }
    }

    let branch_path = args.branches.clone().or_else(|| {
        args.out.as_ref().map(|out| {
            let mut name = out.file_stem().unwrap_or_default().to_os_string();
            name.push(".branches.csv");
            out.with_file_name(name)
        })
    });
    let mut notes = Vec::new();
    if flow.wrap.wrapped {
        notes.push(format!(
            "warning: spectrum winds {:.2} times around the circle (t = {}); branches may alias",
            flow.wrap.windings, flow.wrap.t
        ));
    }
    notes.push(format!(
        "{} branches end on the optimal-cut phase {:.6}",
        flow.branches_into_ground(1e-6).len(),
        flow.ground_phase
    ));
    Ok(Output {
        primary: samples,
        extra: branch_path.map(|p| (p, branches)).into_iter().collect(),
        notes,
    })
}

pub fn index(g: &Graph, args: &IndexArgs) -> Result<Output> {
    let opts = IndexOptions {
        n_samples: args.samples,
        ..IndexOptions::default()
    };
    let report = intersection_index(g, opts)?;
    Ok(Output::single(json_line(&report)?))
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}
