//! Token-level parsing of invocations into validated requests, and the inverse rendering.

use std::f64::consts::PI;
use std::fmt;

use clap::error::{ContextKind, ContextValue};
use clap::{Args, Parser, Subcommand, ValueEnum};
use parabolica_core::{ExactScalar, Rational, SimpleLieType};

use crate::error::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputOptions {
    pub format: OutputFormat,
    pub quiet: bool,
}

impl Default for OutputOptions {
    fn default() -> Self {
        Self {
            format: OutputFormat::Json,
            quiet: false,
        }
    }
}

/// Bundle data. Node indices are 1-based as typed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub lie_type: SimpleLieType,
    pub parabolic: Vec<usize>,
    pub weight: Vec<i64>,
    /// Coefficients of `ω₀` on `Δ \ I`; adds a curvature block.
    pub kahler: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureRequest {
    pub lie_type: SimpleLieType,
    pub parabolic: Vec<usize>,
    /// `None` selects the Kähler-Einstein class.
    pub kahler: Option<Vec<Rational>>,
    /// Degrees of the line bundle on `Δ \ I`.
    pub line: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileKind {
    Point,
    /// Coordinate subtorus of real codimension `k`.
    Sub { k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSpec {
    pub kind: ProfileKind,
    pub s: f64,
    pub offset: f64,
}

impl ProfileSpec {
    pub fn codim(&self, dim: usize) -> usize {
        match self.kind {
            ProfileKind::Point => dim,
            ProfileKind::Sub { k } => k,
        }
    }
}

impl fmt::Display for ProfileSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ProfileKind::Point => write!(f, "point:s={}", self.s)?,
            ProfileKind::Sub { k } => write!(f, "sub:k={k},s={}", self.s)?,
        }
        if self.offset != 0.0 {
            write!(f, ",offset={}", self.offset)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralRequest {
    pub dim: usize,
    pub modes: usize,
    pub profile: ProfileSpec,
    pub side: f64,
    pub hym: Rational,
    pub kappa: f64,
    pub resolution: Option<usize>,
    pub check_only: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Request {
    Analyze(AnalysisRequest),
    Curvature(CurvatureRequest),
    Spectral(SpectralRequest),
    PaperSuite,
    DumpRoots { lie_type: SimpleLieType },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub output: OutputOptions,
    pub request: Request,
}

#[derive(Parser, Debug)]
#[command(name = "parabolica", version, about = "Homogeneous bundles on flag varieties G/P")]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Print nothing; report through the exit status only.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TypeArgs {
    /// Dynkin label such as A3, B3, D4, E8.
    #[arg(long = "type")]
    lie_type: String,
    /// Simple roots in I, 1-based and comma separated. Omit for the Borel case.
    #[arg(long, default_value = "")]
    parabolic: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chern data and splitting verdict for an irreducible P-module.
    Analyze {
        #[command(flatten)]
        ty: TypeArgs,
        /// Highest weight in fundamental-weight coordinates over all of Δ.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Kähler class coefficients on Δ \ I, e.g. 1,3/2.
        #[arg(long)]
        kahler: Option<String>,
    },
    /// Eigenvalues of ω₀⁻¹∘c₁(L) and the HYM constant of a line bundle.
    Curvature {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        kahler: Option<String>,
        /// Line bundle degrees on Δ \ I.
        #[arg(long, allow_hyphen_values = true)]
        line: String,
    },
    /// Galerkin diagnostics for a distance-power profile on a flat torus.
    Spectral {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Highest mode index kept.
        #[arg(long, default_value_t = 64)]
        modes: usize,
        /// point:s=<s>[,offset=<c>] or sub:k=<codim>,s=<s>[,offset=<c>]
        #[arg(long)]
        profile: String,
        /// Side length of the torus.
        #[arg(long, default_value_t = 2.0 * PI)]
        side: f64,
        /// HYM constant of the reference line bundle.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        hym: String,
        /// Ricci lower bound used in the Bochner constant.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        kappa: f64,
        /// Grid cells per axis for the coefficient FFT.
        #[arg(long)]
        resolution: Option<usize>,
        /// Only certify square integrability.
        #[arg(long)]
        check_only: bool,
        /// Output format, overriding --json/--csv.
        #[arg(long, value_enum)]
        report: Option<OutputFormat>,
    },
    /// Rerun every pinned example and compare.
    PaperSuite,
    /// Cartan matrix and positive roots.
    DumpRoots {
        #[arg(long = "type")]
        lie_type: String,
    },
}

/// Index of the token holding the value of `flag`.
fn locate(tokens: &[String], flag: &str) -> Option<usize> {
    let eq = format!("{flag}=");
    tokens.iter().enumerate().find_map(|(i, t)| {
        if t == flag {
            Some(i + 1)
        } else if t.starts_with(&eq) {
            Some(i)
        } else {
            None
        }
    })
}

struct Ctx<'a> {
    tokens: &'a [String],
}

impl Ctx<'_> {
    fn err(&self, flag: &str, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: locate(self.tokens, flag),
            kind,
        }
    }

    fn lie_type(&self, flag: &str, s: &str) -> Result<SimpleLieType, ParseError> {
        s.parse()
            .map_err(|e: parabolica_core::Error| self.err(flag, ParseErrorKind::UnknownType(e.to_string())))
    }

    fn list<T: std::str::FromStr>(&self, flag: &str, s: &str) -> Result<Vec<T>, ParseError> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',')
            .map(|item| {
                item.trim()
                    .parse()
                    .map_err(|_| self.err(flag, ParseErrorKind::BadNumber(item.trim().to_string())))
            })
            .collect()
    }

    fn parabolic(&self, t: SimpleLieType, s: &str) -> Result<Vec<usize>, ParseError> {
        let nodes: Vec<i64> = self.list("--parabolic", s)?;
        let mut out = Vec::with_capacity(nodes.len());
        for v in nodes {
            if v < 1 || v as usize > t.rank() {
                return Err(self.err("--parabolic", ParseErrorKind::BadIndex { index: v, rank: t.rank() }));
            }
            if out.contains(&(v as usize)) {
                return Err(self.err("--parabolic", ParseErrorKind::DuplicateIndex(v as usize)));
            }
            out.push(v as usize);
        }
        if out.len() == t.rank() {
            return Err(self.err("--parabolic", ParseErrorKind::FullSetNotParabolic));
        }
        out.sort_unstable();
        Ok(out)
    }

    fn sized<T: std::str::FromStr>(&self, flag: &str, s: &str, expected: usize) -> Result<Vec<T>, ParseError> {
        let v: Vec<T> = self.list(flag, s)?;
        if v.len() != expected {
            return Err(self.err(
                flag,
                ParseErrorKind::LengthMismatch {
                    flag: flag.to_string(),
                    expected,
                    got: v.len(),
                },
            ));
        }
        Ok(v)
    }

    fn kahler(&self, s: Option<&str>, expected: usize) -> Result<Option<Vec<Rational>>, ParseError> {
        let Some(s) = s else { return Ok(None) };
        let coeffs: Vec<Rational> = self.sized("--kahler", s, expected)?;
        if let Some((i, c)) = coeffs.iter().enumerate().find(|(_, c)| **c <= Rational::from_i64(0)) {
            return Err(self.err("--kahler", ParseErrorKind::NotKahler { position: i + 1, value: c.to_ratio_string() }));
        }
        Ok(Some(coeffs))
    }

    fn profile(&self, s: &str, dim: usize) -> Result<ProfileSpec, ParseError> {
        let bad = |why: &str| self.err("--profile", ParseErrorKind::BadProfile(format!("{s:?}: {why}")));
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("expected <kind>:<key>=<value>,..."))?;
        let (mut k, mut exp, mut offset) = (None, None, 0.0);
        for pair in rest.split(',') {
            let (key, value) = pair.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let num: f64 = value.trim().parse().map_err(|_| bad("bad number"))?;
            match key.trim() {
                "s" => exp = Some(num),
                "offset" => offset = num,
                "k" if num.fract() == 0.0 && num >= 1.0 => k = Some(num as usize),
                _ => return Err(bad(&format!("unexpected key {key}"))),
            }
        }
        let kind = match (kind.trim(), k) {
            ("point", None) => ProfileKind::Point,
            ("sub", Some(k)) if k <= dim => ProfileKind::Sub { k },
            ("sub", _) => return Err(bad(&format!("sub needs k in 1..={dim}"))),
            _ => return Err(bad("kind must be point or sub")),
        };
        let s = exp.ok_or_else(|| bad("missing s"))?;
        if !(s.is_finite() && s > 0.0 && offset.is_finite()) {
            return Err(bad("s must be positive and finite"));
        }
        Ok(ProfileSpec { kind, s, offset })
    }
}

fn clap_error(tokens: &[String], e: clap::Error) -> ParseError {
    let position = match e.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(arg)) => {
            let flag = arg.split([' ', '=']).next().unwrap_or(arg);
            tokens.iter().position(|t| t == flag || t.starts_with(&format!("{flag}=")))
        }
        _ => None,
    };
    let kind = match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ParseErrorKind::Help(e.to_string()),
        _ => ParseErrorKind::Syntax(e.render().to_string().trim().to_string()),
    };
    ParseError { position, kind }
}

/// Parses arguments (without the program name) into a validated invocation.
/// Error positions index into `tokens`.
pub fn parse_request<S: AsRef<str>>(tokens: &[S]) -> Result<Invocation, ParseError> {
    let tokens: Vec<String> = tokens.iter().map(|t| t.as_ref().to_string()).collect();
    let cli = Cli::try_parse_from(std::iter::once("parabolica".to_string()).chain(tokens.iter().cloned()))
        .map_err(|e| clap_error(&tokens, e))?;
    let ctx = Ctx { tokens: &tokens };
    let mut output = OutputOptions {
        format: if cli.csv { OutputFormat::Csv } else { OutputFormat::Json },
        quiet: cli.quiet,
    };
    let request = match cli.command {
        Command::Analyze { ty, weight, kahler } => {
            let lie_type = ctx.lie_type("--type", &ty.lie_type)?;
            let parabolic = ctx.parabolic(lie_type, &ty.parabolic)?;
            let weight = ctx.sized("--weight", &weight, lie_type.rank())?;
            let kahler = ctx.kahler(kahler.as_deref(), lie_type.rank() - parabolic.len())?;
            Request::Analyze(AnalysisRequest {
                lie_type,
                parabolic,
                weight,
                kahler,
            })
        }
        Command::Curvature { ty, kahler, line } => {
            let lie_type = ctx.lie_type("--type", &ty.lie_type)?;
            let parabolic = ctx.parabolic(lie_type, &ty.parabolic)?;
            let outside = lie_type.rank() - parabolic.len();
            Request::Curvature(CurvatureRequest {
                lie_type,
                kahler: ctx.kahler(kahler.as_deref(), outside)?,
                line: ctx.sized("--line", &line, outside)?,
                parabolic,
            })
        }
        Command::Spectral {
            dim,
            modes,
            profile,
            side,
            hym,
            kappa,
            resolution,
            check_only,
            report,
        } => {
            if dim == 0 {
                return Err(ctx.err("--dim", ParseErrorKind::BadNumber("0".into())));
            }
            if !(side.is_finite() && side > 0.0) {
                return Err(ctx.err("--side", ParseErrorKind::BadNumber(side.to_string())));
            }
            if !kappa.is_finite() {
                return Err(ctx.err("--kappa", ParseErrorKind::BadNumber(kappa.to_string())));
            }
            let hym_value: Rational = hym
                .trim()
                .parse()
                .map_err(|_| ctx.err("--hym", ParseErrorKind::BadNumber(hym.clone())))?;
            if let Some(f) = report {
                output.format = f;
            }
            Request::Spectral(SpectralRequest {
                dim,
                modes,
                profile: ctx.profile(&profile, dim)?,
                side,
                hym: hym_value,
                kappa,
                resolution,
                check_only,
            })
        }
        Command::PaperSuite => Request::PaperSuite,
        Command::DumpRoots { lie_type } => Request::DumpRoots {
            lie_type: ctx.lie_type("--type", &lie_type)?,
        },
    };
    Ok(Invocation { output, request })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn ratios(v: &[Rational]) -> String {
    v.iter().map(ExactScalar::to_ratio_string).collect::<Vec<_>>().join(",")
}

/// Tokens that [`parse_request`] maps back to `inv`.
pub fn render(inv: &Invocation) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut push = |flag: &str, value: String| out.push(format!("{flag}={value}"));
    let mut head = Vec::new();
    match &inv.request {
        Request::Analyze(r) => {
            head.push("analyze".to_string());
            push("--type", r.lie_type.to_string());
            push("--parabolic", join(&r.parabolic));
            push("--weight", join(&r.weight));
            if let Some(k) = &r.kahler {
                push("--kahler", ratios(k));
            }
        }
        Request::Curvature(r) => {
            head.push("curvature".to_string());
            push("--type", r.lie_type.to_string());
            push("--parabolic", join(&r.parabolic));
            if let Some(k) = &r.kahler {
                push("--kahler", ratios(k));
            }
            push("--line", join(&r.line));
        }
        Request::Spectral(r) => {
            head.push("spectral".to_string());
            push("--dim", r.dim.to_string());
            push("--modes", r.modes.to_string());
            push("--profile", r.profile.to_string());
            push("--side", r.side.to_string());
            push("--hym", r.hym.to_ratio_string());
            push("--kappa", r.kappa.to_string());
            if let Some(res) = r.resolution {
                push("--resolution", res.to_string());
            }
            if r.check_only {
                out.push("--check-only".to_string());
            }
        }
        Request::PaperSuite => head.push("paper-suite".to_string()),
        Request::DumpRoots { lie_type } => {
            head.push("dump-roots".to_string());
            push("--type", lie_type.to_string());
        }
    }
    if inv.output.format == OutputFormat::Csv {
        head.push("--csv".to_string());
    }
    if inv.output.quiet {
        head.push("--quiet".to_string());
    }
    head.extend(out);
    head
}
