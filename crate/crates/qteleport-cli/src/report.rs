//! Report assembly and rendering.
//!
//! One `Report` value feeds both renderers, so the text and JSON views can
//! never drift apart. Every number is formatted through deterministic paths
//! (fixed-precision text, serde_json's shortest-round-trip floats), which is
//! what makes equal seeds produce byte-identical output.

use qteleport::{NoiseKind, NoisePlacement, NoiseReport, StateVec64, SyndromeOutcome};
use serde::Serialize;
use std::fmt::Write;

use crate::args::{ConfigEcho, OutputArg};

#[derive(Serialize)]
pub struct StageJson {
    pub name: String,
    pub num_qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
    pub ket: String,
}

pub fn stage(name: &str, state: &StateVec64) -> StageJson {
    StageJson {
        name: name.to_string(),
        num_qubits: state.num_qubits(),
        amplitudes: state.amplitudes().iter().map(|c| [c.re, c.im]).collect(),
        ket: state.to_string(),
    }
}

#[derive(Serialize)]
pub struct NoiseJson {
    pub kind: String,
    pub placement: &'static str,
    pub flipped_qubit: Option<usize>,
}

pub fn noise_json(report: &NoiseReport<f64>) -> NoiseJson {
    let kind = match report.spec.kind() {
        NoiseKind::None => "none".to_string(),
        NoiseKind::FlipQubit(k) => format!("q{k}"),
        NoiseKind::RandomSingle(p) => format!("random:{p}"),
    };
    let placement = match report.spec.placement() {
        NoisePlacement::AfterEncode => "after_encode",
        NoisePlacement::AfterC3not => "after_c3not",
    };
    NoiseJson {
        kind,
        placement,
        flipped_qubit: report.flipped_qubit,
    }
}

#[derive(Serialize)]
pub struct SyndromeJson {
    pub index: usize,
    pub label: String,
    pub affected_qubit: Option<usize>,
}

pub fn syndrome_json(outcome: &SyndromeOutcome) -> SyndromeJson {
    SyndromeJson {
        index: outcome.index,
        label: outcome.to_string(),
        affected_qubit: outcome.affected_qubit,
    }
}

#[derive(Serialize)]
pub struct BranchJson {
    pub message: String,
    pub probability: f64,
    pub correction: String,
    pub corrected: Vec<[f64; 2]>,
    pub fidelity: f64,
}

#[derive(Serialize)]
pub struct HistogramJson {
    pub trials: u64,
    pub counts: Vec<u64>,
    pub expected_count: f64,
    pub sigma: f64,
    pub four_sigma_bound: f64,
    pub max_count_deviation: f64,
    pub max_probability_deviation: f64,
    pub min_fidelity: f64,
}

/// Everything one run reports. Fields that never apply to the chosen mode
/// are omitted from JSON; fields that apply but carry no value are null.
#[derive(Serialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub stages: Vec<StageJson>,
    pub noise_report: Option<NoiseJson>,
    pub syndrome: Option<SyndromeJson>,
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message_probability: Option<f64>,
    pub correction: Option<String>,
    pub fidelity_operator: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity_satellite: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub return_noise_report: Option<NoiseJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub return_syndrome: Option<SyndromeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub return_message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub return_message_probability: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub return_correction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub processing_state: Option<StageJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branches: Option<Vec<BranchJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<HistogramJson>,
    pub result: &'static str,
}

impl Report {
    /// Skeleton with every optional section absent; modes fill in their own.
    pub fn skeleton(config: ConfigEcho) -> Self {
        Report {
            config,
            stages: Vec::new(),
            noise_report: None,
            syndrome: None,
            message: None,
            message_probability: None,
            correction: None,
            fidelity_operator: 0.0,
            fidelity_satellite: None,
            return_noise_report: None,
            return_syndrome: None,
            return_message: None,
            return_message_probability: None,
            return_correction: None,
            processing_state: None,
            branches: None,
            histogram: None,
            result: "fail",
        }
    }
}

pub fn render(report: &Report, output: OutputArg) -> String {
    match output {
        OutputArg::Text => render_text(report),
        OutputArg::Json => {
            let mut json = serde_json::to_string_pretty(report).expect("report serializes");
            json.push('\n');
            json
        }
    }
}

fn qubit_word(n: usize) -> &'static str {
    if n == 1 {
        "qubit"
    } else {
        "qubits"
    }
}

fn describe_syndrome(s: &SyndromeJson) -> String {
    match s.affected_qubit {
        Some(k) => format!("flip on qubit q{k}"),
        None => "no flip".to_string(),
    }
}

fn write_noise_line(out: &mut String, label: &str, noise: &NoiseJson) {
    let effect = match noise.flipped_qubit {
        Some(k) => format!("flipped qubit {k}"),
        None => "no flip this run".to_string(),
    };
    let _ = writeln!(
        out,
        "{label}: {} at {} ({effect})",
        noise.kind, noise.placement
    );
}

fn write_stage_lines<'a>(out: &mut String, stages: impl Iterator<Item = &'a StageJson>) {
    for s in stages {
        let _ = writeln!(
            out,
            "{} ({} {}): {}",
            s.name,
            s.num_qubits,
            qubit_word(s.num_qubits),
            s.ket
        );
    }
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let c = &r.config;

    let _ = write!(out, "mode: {}  seed: {}", c.mode, c.seed);
    if let Some(trials) = c.trials {
        let _ = write!(out, "  trials: {trials}");
    }
    out.push('\n');
    let _ = writeln!(out, "input: theta={:.6} phi={:.6}", c.theta, c.phi);
    if !c.rotate.is_empty() || c.phase.is_some() {
        let _ = write!(out, "command:");
        for step in &c.rotate {
            let _ = write!(out, " {}:{:.6}", step.axis, step.angle);
        }
        if let Some(delta) = c.phase {
            let _ = write!(out, " phase:{delta:.6}");
        }
        out.push('\n');
    }
    if let Some(noise) = &r.noise_report {
        write_noise_line(&mut out, "noise", noise);
    }

    let forward = r.stages.iter().filter(|s| !s.name.starts_with("return_"));
    write_stage_lines(&mut out, forward);

    if let Some(s) = &r.syndrome {
        let _ = writeln!(out, "syndrome: {} ({})", s.label, describe_syndrome(s));
    }
    if let Some(message) = &r.message {
        match r.message_probability {
            Some(p) => {
                let _ = writeln!(out, "message: {message} (probability {p:.4})");
            }
            None => {
                let _ = writeln!(out, "message: {message}");
            }
        }
    }
    if let Some(correction) = &r.correction {
        let _ = writeln!(out, "correction: {correction}");
    }

    if let Some(branches) = &r.branches {
        for b in branches {
            let _ = writeln!(
                out,
                "m={} prob={:.4} fidelity={:.9} correction={}",
                b.message, b.probability, b.fidelity, b.correction
            );
        }
        let _ = writeln!(out, "min fidelity: {:.9}", r.fidelity_operator);
    } else if let Some(h) = &r.histogram {
        for (index, &count) in h.counts.iter().enumerate() {
            let _ = writeln!(
                out,
                "m={index:04b} count={count} expected={:.1}",
                h.expected_count
            );
        }
        let _ = writeln!(
            out,
            "sigma: {:.2}  four-sigma bound: {:.2}  max count deviation: {:.1}",
            h.sigma, h.four_sigma_bound, h.max_count_deviation
        );
        let _ = writeln!(
            out,
            "max probability deviation: {:.6}",
            h.max_probability_deviation
        );
        let _ = writeln!(out, "min fidelity: {:.9}", h.min_fidelity);
    } else if r.fidelity_satellite.is_some() {
        let _ = writeln!(out, "operator fidelity: {:.9}", r.fidelity_operator);
    } else {
        let _ = writeln!(out, "fidelity: {:.9}", r.fidelity_operator);
    }

    if let Some(p) = &r.processing_state {
        let _ = writeln!(
            out,
            "processed ({} {}): {}",
            p.num_qubits,
            qubit_word(p.num_qubits),
            p.ket
        );
    }

    if let Some(satellite) = r.fidelity_satellite {
        if let Some(noise) = &r.return_noise_report {
            write_noise_line(&mut out, "return noise", noise);
        }
        let back = r.stages.iter().filter(|s| s.name.starts_with("return_"));
        write_stage_lines(&mut out, back);
        if let Some(s) = &r.return_syndrome {
            let _ = writeln!(
                out,
                "return syndrome: {} ({})",
                s.label,
                describe_syndrome(s)
            );
        }
        if let (Some(message), Some(p)) = (&r.return_message, r.return_message_probability) {
            let _ = writeln!(out, "return message: {message} (probability {p:.4})");
        }
        if let Some(correction) = &r.return_correction {
            let _ = writeln!(out, "return correction: {correction}");
        }
        let _ = writeln!(out, "satellite fidelity: {satellite:.9}");
    }

    let _ = writeln!(out, "result: {}", r.result);
    out
}
