//! Command-line front end: sequence synthesis, the reference table, contour
//! grids, addressing-error sweeps, and the self-check.
//!
//! Exit codes: 0 success, 1 verification or runtime failure, 2 infeasible
//! request, 64 usage error. All angles are radians unless `--degrees` is
//! given, which converts inputs only. Output is deterministic: identical
//! invocations produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use narrowpulse::addressing::{
    epsilon_sweep, position_sweep, BeamModel, DetectionModel, SweepKind, SweepSpec, SweepTable,
};
use narrowpulse::families::{reference_table, Subfamily};
use narrowpulse::numfmt::{sig15, sig9};
use narrowpulse::optimizer::{contour_grid, synthesize};
use narrowpulse::pulse::{Pulse, PulseSequence};
use narrowpulse::seqfile;
use narrowpulse::verify::{check_reference_table, TABLE_TOL};
use narrowpulse::{sk1, Error};

const TAU: f64 = std::f64::consts::TAU;

#[derive(Parser)]
#[command(
    name = "narrowpulse",
    version,
    about = "Narrowband composite pulse sequences for selective qubit addressing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    /// Minimize the total pulse area (T_min subfamily).
    Area,
    /// Minimize the residual infidelity coefficient (E_min subfamily).
    Infidelity,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sk1,
    Task1,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a pulse sequence for a target in-plane rotation
    Synth {
        /// Target rotation angle in (0, 2pi]
        #[arg(long)]
        angle: f64,
        /// Target rotation axis azimuth
        #[arg(long, default_value_t = 0.0)]
        azimuth: f64,
        /// Cost functional for the task1 family
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Area)]
        objective: ObjectiveArg,
        #[arg(long, value_enum, default_value_t = FamilyArg::Task1)]
        family: FamilyArg,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Interpret --angle and --azimuth as degrees
        #[arg(long)]
        degrees: bool,
    },
    /// Emit the 16-row reference table recomputed at full precision
    Table {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Population inversion vs relative drive strength over [0, 1]
    SweepEpsilon {
        #[arg(long)]
        angle: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
        /// Detection-fidelity visibility factor in [0, 1]
        #[arg(long, default_value_t = 1.0)]
        detection: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        degrees: bool,
    },
    /// Population inversion vs ion position under a Gaussian beam
    SweepPosition {
        #[arg(long)]
        angle: f64,
        /// 1/e^2 intensity radius, micrometers
        #[arg(long, default_value_t = 22.1)]
        waist_radius: f64,
        /// Full sweep width, micrometers, centered on the beam
        #[arg(long, default_value_t = 120.0)]
        span: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[arg(long, default_value_t = 1.0)]
        detection: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        degrees: bool,
    },
    /// Net angle, pulse area, and infidelity over an n x n (lambda_x, lambda_y) grid
    Contours {
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive the reference table and report per-row deviations
    Verify,
}

enum Failure {
    Usage(String),
    Infeasible(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Infeasible(_) => 2,
            Failure::Runtime(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Infeasible(m) | Failure::Runtime(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AngleOutOfRange { .. }
            | Error::NoSolution { .. }
            | Error::Infeasible { .. } => Failure::Infeasible(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(64)
                }
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Synth { angle, azimuth, objective, family, out, format, degrees } => {
            let (angle, azimuth) = convert_angles(angle, azimuth, degrees)?;
            synth(angle, azimuth, objective, family, out, format)
        }
        Command::Table { out } => table(out),
        Command::SweepEpsilon { angle, points, detection, out, degrees } => {
            let (angle, _) = convert_angles(angle, 0.0, degrees)?;
            sweep_epsilon(angle, points, detection, out)
        }
        Command::SweepPosition {
            angle,
            waist_radius,
            span,
            points,
            detection,
            out,
            degrees,
        } => {
            let (angle, _) = convert_angles(angle, 0.0, degrees)?;
            sweep_position(angle, waist_radius, span, points, detection, out)
        }
        Command::Contours { n, out } => contours(n, out),
        Command::Verify => verify(),
    }
}

fn convert_angles(angle: f64, azimuth: f64, degrees: bool) -> Result<(f64, f64), Failure> {
    if !angle.is_finite() || !azimuth.is_finite() {
        return Err(Failure::Usage("angles must be finite".into()));
    }
    let scale = if degrees { std::f64::consts::PI / 180.0 } else { 1.0 };
    Ok((angle * scale, azimuth * scale))
}

fn require_target_angle(angle: f64) -> Result<(), Failure> {
    if !(angle > 0.0 && angle <= TAU) {
        return Err(Failure::Infeasible(format!(
            "target rotation angle {angle} outside (0, 2pi]"
        )));
    }
    Ok(())
}

fn detection_model(fidelity: f64) -> Result<DetectionModel, Failure> {
    DetectionModel::new(fidelity)
        .map_err(|e| Failure::Usage(format!("--detection: {e}")))
}

fn write_or_print(out: Option<&Path>, data: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, data)?;
            Ok(())
        }
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn synth(
    angle: f64,
    azimuth: f64,
    objective: ObjectiveArg,
    family: FamilyArg,
    out: Option<PathBuf>,
    format: FormatArg,
) -> Result<(), Failure> {
    require_target_angle(angle)?;
    let seq = match family {
        FamilyArg::Sk1 => sk1(angle, azimuth)?,
        FamilyArg::Task1 => {
            let subfamily = match objective {
                ObjectiveArg::Area => Subfamily::TimeMinimal,
                ObjectiveArg::Infidelity => Subfamily::ErrorMinimal,
            };
            let (_, seq) = synthesize(subfamily, angle, azimuth)?;
            seq
        }
    };
    let area = seq.total_pulse_area();
    let coeff = seq.infidelity_coefficient()?;
    let document = match format {
        FormatArg::Json => seqfile::sequence_to_string(&seq),
        FormatArg::Csv => {
            let mut s = String::from("pulse,theta,phi\n");
            for (k, p) in seq.pulses().iter().enumerate() {
                let _ = writeln!(s, "{},{},{}", k + 1, sig15(p.theta()), sig15(p.phi()));
            }
            s
        }
    };
    let summary = format!(
        "pulses: {}\ntotal_pulse_area: {}\ninfidelity_coeff: {}\n",
        seq.len(),
        sig9(area),
        sig9(coeff)
    );
    match out {
        Some(path) => {
            fs::write(path, document)?;
            print!("{summary}");
        }
        None => {
            print!("{document}");
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn table(out: Option<PathBuf>) -> Result<(), Failure> {
    let mut csv = String::from(
        "subfamily,net_rotation,lambda_x,lambda_y,\
         theta_1,theta_2,theta_3,theta_4,theta_5,\
         phi_1,phi_2,phi_3,phi_4,phi_5,pulse_area,infidelity_coeff\n",
    );
    for row in reference_table() {
        let (result, seq) = synthesize(row.subfamily, row.net_rotation, 0.0)?;
        let mut line = format!(
            "{},{},{},{}",
            row.subfamily.label(),
            sig9(row.net_rotation),
            sig9(result.params.lambda_x),
            sig9(result.params.lambda_y)
        );
        for p in seq.pulses() {
            let _ = write!(line, ",{}", sig9(p.theta()));
        }
        for p in seq.pulses() {
            let _ = write!(line, ",{}", sig9(p.phi()));
        }
        let _ = write!(
            line,
            ",{},{}",
            sig9(seq.total_pulse_area()),
            sig9(seq.infidelity_coefficient()?)
        );
        csv.push_str(&line);
        csv.push('\n');
    }
    write_or_print(out.as_deref(), &csv)
}

/// Per-sequence provenance recorded in the sweep metadata sidecar.
struct Provenance {
    name: String,
    lambdas: Option<(f64, f64)>,
    pulse_area: f64,
    infidelity_coeff: Option<f64>,
}

/// The four compared sequences at a given target angle: a bare pulse, SK1,
/// and both optimized TASK1 subfamilies.
fn sweep_sequences(angle: f64) -> Result<(Vec<PulseSequence>, Vec<Provenance>), Failure> {
    let simple = PulseSequence::new("simple", vec![Pulse::new(angle, 0.0)?]);
    let sk1_seq = sk1(angle, 0.0)?;
    let (tmin_result, tmin) = synthesize(Subfamily::TimeMinimal, angle, 0.0)?;
    let (emin_result, emin) = synthesize(Subfamily::ErrorMinimal, angle, 0.0)?;
    let tmin = PulseSequence::new("task1_tmin", tmin.pulses().to_vec());
    let emin = PulseSequence::new("task1_emin", emin.pulses().to_vec());
    let provenance = vec![
        Provenance {
            name: "simple".into(),
            lambdas: None,
            pulse_area: simple.total_pulse_area(),
            infidelity_coeff: None,
        },
        Provenance {
            name: "sk1".into(),
            lambdas: None,
            pulse_area: sk1_seq.total_pulse_area(),
            infidelity_coeff: sk1_seq.infidelity_coefficient().ok(),
        },
        Provenance {
            name: "task1_tmin".into(),
            lambdas: Some((tmin_result.params.lambda_x, tmin_result.params.lambda_y)),
            pulse_area: tmin.total_pulse_area(),
            infidelity_coeff: tmin.infidelity_coefficient().ok(),
        },
        Provenance {
            name: "task1_emin".into(),
            lambdas: Some((emin_result.params.lambda_x, emin_result.params.lambda_y)),
            pulse_area: emin.total_pulse_area(),
            infidelity_coeff: emin.infidelity_coefficient().ok(),
        },
    ];
    Ok((vec![simple, sk1_seq, tmin, emin], provenance))
}

fn render_sweep_csv(tbl: &SweepTable) -> String {
    let mut csv = String::from(tbl.axis_label);
    for (name, _) in &tbl.columns {
        csv.push(',');
        csv.push_str(name);
    }
    csv.push('\n');
    for (k, &x) in tbl.axis.iter().enumerate() {
        csv.push_str(&sig9(x));
        for (_, col) in &tbl.columns {
            csv.push(',');
            csv.push_str(&sig9(col[k]));
        }
        csv.push('\n');
    }
    csv
}

fn sweep_metadata(
    command: &str,
    angle: f64,
    detection: f64,
    spec: &SweepSpec,
    provenance: &[Provenance],
) -> String {
    let mut meta = String::from("{\n");
    let _ = writeln!(meta, "  \"command\": \"{command}\",");
    let _ = writeln!(meta, "  \"target_angle\": {},", sig15(angle));
    let _ = writeln!(meta, "  \"detection_fidelity\": {},", sig15(detection));
    if let Some(b) = &spec.beam {
        let _ = writeln!(
            meta,
            "  \"beam\": {{ \"waist_radius_um\": {}, \"center_um\": {} }},",
            sig15(b.waist_radius()),
            sig15(b.center())
        );
    }
    let _ = writeln!(
        meta,
        "  \"grid\": {{ \"lo\": {}, \"hi\": {}, \"points\": {} }},",
        sig15(spec.lo),
        sig15(spec.hi),
        spec.points
    );
    meta.push_str("  \"sequences\": [\n");
    for (k, p) in provenance.iter().enumerate() {
        let sep = if k + 1 == provenance.len() { "" } else { "," };
        let mut entry = format!(
            "    {{ \"name\": \"{}\", \"pulse_area\": {}",
            p.name,
            sig15(p.pulse_area)
        );
        if let Some((lx, ly)) = p.lambdas {
            let _ = write!(entry, ", \"lambda_x\": {}, \"lambda_y\": {}", sig15(lx), sig15(ly));
        }
        if let Some(c) = p.infidelity_coeff {
            let _ = write!(entry, ", \"infidelity_coeff\": {}", sig15(c));
        }
        let _ = writeln!(meta, "{entry} }}{sep}");
    }
    meta.push_str("  ]\n}\n");
    meta
}

fn emit_sweep(
    command: &str,
    angle: f64,
    detection: f64,
    spec: &SweepSpec,
    provenance: &[Provenance],
    tbl: &SweepTable,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let csv = render_sweep_csv(tbl);
    match out {
        Some(path) => {
            fs::write(path, csv)?;
            let meta = sweep_metadata(command, angle, detection, spec, provenance);
            let mut meta_path = path.as_os_str().to_owned();
            meta_path.push(".meta.json");
            fs::write(PathBuf::from(meta_path), meta)?;
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn sweep_epsilon(
    angle: f64,
    points: usize,
    detection: f64,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    require_target_angle(angle)?;
    if points < 2 {
        return Err(Failure::Usage("--points must be at least 2".into()));
    }
    let (sequences, provenance) = sweep_sequences(angle)?;
    let spec = SweepSpec {
        kind: SweepKind::Epsilon,
        lo: 0.0,
        hi: 1.0,
        points,
        sequences,
        detection: detection_model(detection)?,
        beam: None,
    };
    let tbl = epsilon_sweep(&spec)?;
    emit_sweep("sweep-epsilon", angle, detection, &spec, &provenance, &tbl, out.as_deref())
}

fn sweep_position(
    angle: f64,
    waist_radius: f64,
    span: f64,
    points: usize,
    detection: f64,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    require_target_angle(angle)?;
    if points < 2 {
        return Err(Failure::Usage("--points must be at least 2".into()));
    }
    if !(span.is_finite() && span > 0.0) {
        return Err(Failure::Usage("--span must be positive".into()));
    }
    let beam = BeamModel::new(waist_radius, 0.0)
        .map_err(|e| Failure::Usage(format!("--waist-radius: {e}")))?;
    let (sequences, provenance) = sweep_sequences(angle)?;
    let spec = SweepSpec {
        kind: SweepKind::Position,
        lo: -0.5 * span,
        hi: 0.5 * span,
        points,
        sequences,
        detection: detection_model(detection)?,
        beam: Some(beam),
    };
    let tbl = position_sweep(&spec)?;
    emit_sweep("sweep-position", angle, detection, &spec, &provenance, &tbl, out.as_deref())
}

fn contours(n: usize, out: Option<PathBuf>) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::Usage("--n must be at least 2".into()));
    }
    let grid = contour_grid(n)?;
    let mut csv = String::from("lambda_x,lambda_y,net_angle,pulse_area,infidelity_coeff\n");
    for p in &grid {
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            sig9(p.lambda_x),
            sig9(p.lambda_y),
            sig9(p.net_angle),
            sig9(p.pulse_area),
            sig9(p.infidelity_coeff)
        );
    }
    write_or_print(out.as_deref(), &csv)
}

fn rotation_label(net_rotation: f64) -> String {
    let quarters = (net_rotation / (TAU / 8.0)).round() as i64;
    match quarters {
        1 => "pi/4".into(),
        2 => "pi/2".into(),
        4 => "pi".into(),
        8 => "2pi".into(),
        q if q % 2 == 0 => format!("{}pi/2", q / 2),
        q => format!("{q}pi/4"),
    }
}

fn verify() -> Result<(), Failure> {
    let checks = check_reference_table()?;
    let mut failed = 0usize;
    for c in &checks {
        let label = rotation_label(c.net_rotation);
        if c.passed() {
            println!(
                "PASS  {:<5} {:<6} max_delta {:.1e}",
                c.subfamily.label(),
                label,
                c.max_delta
            );
        } else {
            failed += 1;
            let cols: Vec<String> = c
                .failures
                .iter()
                .map(|f| {
                    format!(
                        "{} (expected {:.4}, got {:.6}, |d| {:.1e})",
                        f.column,
                        f.expected,
                        f.actual,
                        f.delta()
                    )
                })
                .collect();
            println!(
                "FAIL  {:<5} {:<6} {}",
                c.subfamily.label(),
                label,
                cols.join("; ")
            );
        }
    }
    println!(
        "{}/{} rows within {:.0e}",
        checks.len() - failed,
        checks.len(),
        TABLE_TOL
    );
    if failed > 0 {
        return Err(Failure::Runtime(format!("{failed} reference rows deviate")));
    }
    Ok(())
}
