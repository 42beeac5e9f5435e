use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "lplab",
    version,
    about = "Laguerre-Polya membership and zero-counting laboratory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Family {
    #[value(name = "eulerF")]
    #[serde(rename = "eulerF")]
    EulerF,
    #[value(name = "theta")]
    #[serde(rename = "theta")]
    Theta,
    #[value(name = "eulerH")]
    #[serde(rename = "eulerH")]
    EulerH,
}

impl Family {
    pub fn kind(self) -> lplab::FamilyKind {
        match self {
            Family::EulerF => lplab::FamilyKind::EulerF,
            Family::Theta => lplab::FamilyKind::PartialTheta,
            Family::EulerH => lplab::FamilyKind::EulerH,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum SignFamily {
    #[value(name = "eulerF")]
    #[serde(rename = "eulerF")]
    EulerF,
    #[value(name = "theta")]
    #[serde(rename = "theta")]
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum ConstantName {
    #[value(name = "q_infinity")]
    #[serde(rename = "q_infinity")]
    QInfinity,
    #[value(name = "c_n")]
    #[serde(rename = "c_n")]
    CN,
    #[value(name = "critical_a")]
    #[serde(rename = "critical_a")]
    CriticalA,
    #[value(name = "thresholds")]
    #[serde(rename = "thresholds")]
    Thresholds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Lemma {
    #[value(name = "2")]
    #[serde(rename = "2")]
    Two,
    #[value(name = "rouche")]
    #[serde(rename = "rouche")]
    Rouche,
    #[value(name = "3")]
    #[serde(rename = "3")]
    Three,
    #[value(name = "6")]
    #[serde(rename = "6")]
    Six,
    #[value(name = "positivity")]
    #[serde(rename = "positivity")]
    Positivity,
    #[value(name = "4algebra")]
    #[serde(rename = "4algebra")]
    FourAlgebra,
}

/// A complex number written `RE` or `RE,IM`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point(pub Complex64);

impl FromStr for Point {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut parts = s.split(',');
        let re = parse_finite(parts.next().unwrap_or(""))?;
        let im = match parts.next() {
            Some(p) => parse_finite(p)?,
            None => 0.0,
        };
        if parts.next().is_some() {
            return Err(format!("expected RE or RE,IM, got `{s}`"));
        }
        Ok(Point(Complex64::new(re, im)))
    }
}

/// `rho:J` or a plain radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Radius {
    Rho(usize),
    Value(f64),
}

impl FromStr for Radius {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.strip_prefix("rho:") {
            Some(j) => j.parse().map(Radius::Rho).map_err(|_| format!("bad index in `{s}`")),
            None => {
                let r = parse_finite(s)?;
                if r > 0.0 {
                    Ok(Radius::Value(r))
                } else {
                    Err(format!("radius must be positive, got {r}"))
                }
            }
        }
    }
}

/// `LO:HI:STEPS`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, steps] = parts.as_slice() else {
            return Err(format!("expected LO:HI:STEPS, got `{s}`"));
        };
        let (lo, hi) = (parse_finite(lo)?, parse_finite(hi)?);
        let steps: usize = steps.parse().map_err(|_| format!("bad step count in `{s}`"))?;
        if !(lo <= hi) || steps == 0 {
            return Err(format!("need LO <= HI and STEPS >= 1, got `{s}`"));
        }
        Ok(Grid { lo, hi, steps })
    }
}

fn parse_finite(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(format!("`{s}` is not a finite number")),
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let x = parse_finite(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be positive, got {x}"))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a family at a complex point.
    Eval {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: Point,
        #[arg(long, value_parser = positive, default_value_t = 1e-14)]
        tol: f64,
    },
    /// Evaluate the degree-N section.
    Section {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        z: Point,
    },
    /// Tabulate p_n and q_n.
    Quotients {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        a: f64,
        #[arg(long = "n-max")]
        n_max: usize,
    },
    /// Decide membership of F_a.
    Classify {
        #[arg(long)]
        a: f64,
        #[arg(long, value_parser = positive)]
        tol: Option<f64>,
    },
    /// Sign test on the critical interval.
    SignTest {
        #[arg(long, value_enum)]
        family: SignFamily,
        #[arg(long)]
        a: f64,
        /// Section degree (theta only).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = lplab::criteria::DEFAULT_GRID)]
        grid: usize,
    },
    /// Count zeros of f_a in |u| < R or |u| < rho_J.
    Zeros {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        radius: Radius,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Critical constants.
    Constants {
        #[arg(long, value_enum)]
        name: ConstantName,
        #[arg(long, required_if_eq("name", "c_n"))]
        n: Option<usize>,
        #[arg(long, value_parser = positive, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Run a lemma check suite.
    Verify {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long = "a-grid")]
        a_grid: Option<Grid>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tabulate the sign-test minimum across a.
    ScanConjecture {
        #[arg(long = "a-lo")]
        a_lo: f64,
        #[arg(long = "a-hi")]
        a_hi: f64,
        #[arg(long)]
        steps: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Section { .. } => "section",
            Command::Quotients { .. } => "quotients",
            Command::Classify { .. } => "classify",
            Command::SignTest { .. } => "sign-test",
            Command::Zeros { .. } => "zeros",
            Command::Constants { .. } => "constants",
            Command::Verify { .. } => "verify",
            Command::ScanConjecture { .. } => "scan-conjecture",
        }
    }

    pub fn is_tabular(&self) -> bool {
        match self {
            Command::Quotients { .. } | Command::ScanConjecture { .. } | Command::Verify { .. } => true,
            Command::Constants { name, .. } => *name == ConstantName::Thresholds,
            _ => false,
        }
    }

    /// Usage checks that clap cannot express.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            Command::SignTest {
                family: SignFamily::EulerF,
                n: Some(_),
                ..
            } => Err("--n applies to the theta family only".into()),
            Command::Constants { name, n: Some(_), .. } if *name != ConstantName::CN => {
                Err("--n applies to --name c_n only".into())
            }
            Command::Verify {
                lemma: Lemma::FourAlgebra,
                a_grid: Some(_),
                ..
            } => Err("4algebra samples a at random; use --seed instead of --a-grid".into()),
            _ => Ok(()),
        }
    }
}
