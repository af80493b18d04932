//! Flag parsing and validation.
//!
//! Angles accept plain radians or pi expressions ("pi/2", "3*pi/4", "-pi"),
//! so documented fractions of pi round-trip without decimal drift. All
//! semantic misuse (bad tokens, out-of-range angles, flags that do not apply
//! to the chosen mode) is rejected here, before any simulation runs.

use clap::{Parser, ValueEnum};
use qteleport::{Bloch64, Command64, NoiseKind, NoisePlacement, NoiseSpec64, RotationAxis};

#[derive(Parser, Debug)]
#[command(
    name = "qteleport",
    version,
    about = "Simulates a teleportation control loop protected by a three-qubit bit-flip code",
    after_help = "ANGLES:\n  Plain radians (1.5708) or pi expressions: pi, pi/2, 3*pi/4, -pi/6, 2pi.\n\n\
EXIT CODES:\n  0 run passed its acceptance predicate\n  1 predicate failed\n  \
2 usage error\n  3 internal simulator error"
)]
pub struct Cli {
    /// Polar angle of the input state, in [0, pi]
    #[arg(long, value_parser = parse_angle, default_value = "0")]
    pub theta: f64,

    /// Azimuthal angle of the input state, in [0, 2pi)
    #[arg(long, value_parser = parse_angle, default_value = "0")]
    pub phi: f64,

    /// What to run
    #[arg(long, value_enum, default_value_t = ModeArg::Enumerate)]
    pub mode: ModeArg,

    /// Number of sampled trials; stats mode only (default 16000)
    #[arg(long)]
    pub trials: Option<u64>,

    /// Master seed for every random draw
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Bit-flip noise on the encoded block: none, q0, q1, q2, or random:p
    #[arg(long = "inject-error", value_parser = parse_inject, default_value = "none")]
    pub inject_error: InjectArg,

    /// Where the noise strikes and the syndrome check runs
    #[arg(long, value_enum, default_value_t = PlacementArg::AfterEncode)]
    pub placement: PlacementArg,

    /// Operator rotation step "axis:angle" with axis x, y, or z; repeatable,
    /// applied in the order given (single and roundtrip modes)
    #[arg(long = "rotate", value_name = "AXIS:ANGLE", value_parser = parse_rotate)]
    pub rotate: Vec<RotateArg>,

    /// Global phase appended after the rotation steps
    #[arg(long, value_parser = parse_angle)]
    pub phase: Option<f64>,

    /// Run the receiver-side Toffoli processing stage on the deciphered qubit
    #[arg(long)]
    pub processing: bool,

    /// Report format
    #[arg(long, value_enum, default_value_t = OutputArg::Text)]
    pub output: OutputArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Single,
    Enumerate,
    Stats,
    Roundtrip,
}

impl ModeArg {
    pub fn label(self) -> &'static str {
        match self {
            ModeArg::Single => "single",
            ModeArg::Enumerate => "enumerate",
            ModeArg::Stats => "stats",
            ModeArg::Roundtrip => "roundtrip",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlacementArg {
    #[value(name = "after_encode")]
    AfterEncode,
    #[value(name = "after_c3not")]
    AfterC3not,
}

impl PlacementArg {
    pub fn label(self) -> &'static str {
        match self {
            PlacementArg::AfterEncode => "after_encode",
            PlacementArg::AfterC3not => "after_c3not",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InjectArg {
    None,
    Qubit(usize),
    Random(f64),
}

impl InjectArg {
    pub fn label(self) -> String {
        match self {
            InjectArg::None => "none".into(),
            InjectArg::Qubit(k) => format!("q{k}"),
            InjectArg::Random(p) => format!("random:{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotateArg {
    pub axis: RotationAxis,
    pub angle: f64,
}

/// Parses radians, allowing pi expressions: `[sign][factor][*]pi[/divisor]`.
fn parse_angle(raw: &str) -> Result<f64, String> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err("empty angle".into());
    }
    let (sign, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, trimmed.strip_prefix('+').unwrap_or(trimmed)),
    };
    let magnitude = if let Some(at) = body.find("pi") {
        let (head, tail) = body.split_at(at);
        let tail = &tail[2..];
        let factor = if head.is_empty() {
            1.0
        } else {
            let bare = head.strip_suffix('*').unwrap_or(head);
            bare.parse::<f64>()
                .map_err(|_| format!("bad multiplier {bare:?} before pi"))?
        };
        let divisor = if tail.is_empty() {
            1.0
        } else if let Some(denom) = tail.strip_prefix('/') {
            let d = denom
                .parse::<f64>()
                .map_err(|_| format!("bad divisor {denom:?} after pi"))?;
            if d == 0.0 {
                return Err("division by zero".into());
            }
            d
        } else {
            return Err(format!("unexpected {tail:?} after pi"));
        };
        factor * std::f64::consts::PI / divisor
    } else {
        body.parse::<f64>()
            .map_err(|_| format!("expected radians or a pi expression, got {body:?}"))?
    };
    let value = sign * magnitude;
    if !value.is_finite() {
        return Err("angle is not finite".into());
    }
    Ok(value)
}

fn parse_inject(raw: &str) -> Result<InjectArg, String> {
    match raw {
        "none" => Ok(InjectArg::None),
        "q0" => Ok(InjectArg::Qubit(0)),
        "q1" => Ok(InjectArg::Qubit(1)),
        "q2" => Ok(InjectArg::Qubit(2)),
        other => {
            if let Some(p) = other.strip_prefix("random:") {
                let p = p
                    .parse::<f64>()
                    .map_err(|_| format!("bad probability {p:?} in random:p"))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(format!("probability {p} is outside [0, 1]"));
                }
                Ok(InjectArg::Random(p))
            } else {
                Err(format!(
                    "expected none, q0, q1, q2, or random:p, got {other:?}"
                ))
            }
        }
    }
}

fn parse_rotate(raw: &str) -> Result<RotateArg, String> {
    let (axis, angle) = raw
        .split_once(':')
        .ok_or_else(|| format!("expected axis:angle, got {raw:?}"))?;
    let axis = match axis {
        "x" => RotationAxis::X,
        "y" => RotationAxis::Y,
        "z" => RotationAxis::Z,
        other => {
            return Err(format!(
                "axis must be x, y, or z, got {other:?} (use --phase for a global phase)"
            ))
        }
    };
    let angle = parse_angle(angle)?;
    Ok(RotateArg { axis, angle })
}

/// Mode with its mode-specific payload resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Single,
    Enumerate,
    Stats { trials: u64 },
    Roundtrip,
}

/// Fully validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub coords: Bloch64,
    pub mode: Mode,
    pub seed: u64,
    pub noise: NoiseSpec64,
    pub command: Command64,
    pub processing: bool,
    pub output: OutputArg,
    /// Raw flag values echoed back in reports.
    pub echo: ConfigEcho,
}

/// The resolved flags, echoed verbatim into every report.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConfigEcho {
    pub theta: f64,
    pub phi: f64,
    pub mode: &'static str,
    pub trials: Option<u64>,
    pub seed: u64,
    pub inject_error: String,
    pub placement: &'static str,
    pub rotate: Vec<RotateEcho>,
    pub phase: Option<f64>,
    pub processing: bool,
    pub output: &'static str,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct RotateEcho {
    pub axis: String,
    pub angle: f64,
}

/// Semantic validation on top of clap's syntactic pass.
pub fn validate(cli: Cli) -> Result<RunConfig, String> {
    let coords = Bloch64::new(cli.theta, cli.phi).map_err(|e| match e {
        qteleport::SimError::OutOfRange { name: "theta", .. } => {
            format!("--theta {} is outside [0, pi]", cli.theta)
        }
        qteleport::SimError::OutOfRange { name: "phi", .. } => {
            format!("--phi {} is outside [0, 2pi)", cli.phi)
        }
        other => format!("--theta/--phi rejected: {other}"),
    })?;

    let mode = match cli.mode {
        ModeArg::Stats => {
            let trials = cli.trials.unwrap_or(16_000);
            if trials == 0 {
                return Err("--trials must be at least 1".into());
            }
            Mode::Stats { trials }
        }
        other => {
            if cli.trials.is_some() {
                return Err("--trials only applies to --mode stats".into());
            }
            match other {
                ModeArg::Single => Mode::Single,
                ModeArg::Enumerate => Mode::Enumerate,
                ModeArg::Roundtrip => Mode::Roundtrip,
                ModeArg::Stats => unreachable!(),
            }
        }
    };

    let command_modes = matches!(mode, Mode::Single | Mode::Roundtrip);
    if !command_modes {
        if !cli.rotate.is_empty() {
            return Err(format!(
                "--rotate requires --mode single or roundtrip, not {}",
                cli.mode.label()
            ));
        }
        if cli.phase.is_some() {
            return Err(format!(
                "--phase requires --mode single or roundtrip, not {}",
                cli.mode.label()
            ));
        }
        if cli.processing {
            return Err(format!(
                "--processing requires --mode single or roundtrip, not {}",
                cli.mode.label()
            ));
        }
    }

    let kind = match cli.inject_error {
        InjectArg::None => NoiseKind::None,
        InjectArg::Qubit(k) => NoiseKind::FlipQubit(k),
        InjectArg::Random(p) => NoiseKind::RandomSingle(p),
    };
    let placement = match cli.placement {
        PlacementArg::AfterEncode => NoisePlacement::AfterEncode,
        PlacementArg::AfterC3not => NoisePlacement::AfterC3not,
    };
    let noise = NoiseSpec64::new(kind, placement)
        .map_err(|e| format!("--inject-error rejected: {e}"))?;

    let mut steps: Vec<(RotationAxis, f64)> =
        cli.rotate.iter().map(|r| (r.axis, r.angle)).collect();
    if let Some(delta) = cli.phase {
        steps.push((RotationAxis::GlobalPhase, delta));
    }
    let command = Command64::new(steps).map_err(|e| format!("--rotate/--phase rejected: {e}"))?;

    let echo = ConfigEcho {
        theta: cli.theta,
        phi: cli.phi,
        mode: cli.mode.label(),
        trials: match mode {
            Mode::Stats { trials } => Some(trials),
            _ => None,
        },
        seed: cli.seed,
        inject_error: cli.inject_error.label(),
        placement: cli.placement.label(),
        rotate: cli
            .rotate
            .iter()
            .map(|r| RotateEcho {
                axis: r.axis.to_string(),
                angle: r.angle,
            })
            .collect(),
        phase: cli.phase,
        processing: cli.processing,
        output: match cli.output {
            OutputArg::Text => "text",
            OutputArg::Json => "json",
        },
    };

    Ok(RunConfig {
        coords,
        mode,
        seed: cli.seed,
        noise,
        command,
        processing: cli.processing,
        output: cli.output,
        echo,
    })
}
