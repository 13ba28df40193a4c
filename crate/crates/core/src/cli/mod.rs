//! The `kentropy` command line: argument types, input loading and the five
//! commands. Rendering lives in [`report`], file parsing in [`spec_file`].

pub mod report;
pub mod spec_file;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::One;
use sha2::{Digest, Sha256};

use crate::colength::colength_by_enumeration;
use crate::endo::{MonomialMap, TransferSquare};
use crate::entropy::{
    closed_form, closed_form_diagonal, estimate_limit, frobenius_prediction,
    local_entropy_sequence, lower_bounds, sandwich, transfer_check, EntropySequence,
    EstimateMethod, LimitEstimate, SandwichReport, TransferConclusion, TRANSFER_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::growth::ln_big;
use crate::koszul::KoszulComplex;
use crate::monomial::ExponentVector;
use report::{format_g, Report, Table};
use spec_file::{parse_spec, parse_square, SpecFile};

/// Agreement with an exact closed form on a regular ring.
pub const EXACT_TOLERANCE: f64 = 1e-9;

/// Exit status when a verdict fails.
pub const VERDICT_FAILURE: i32 = 4;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "kentropy",
    version,
    about = "Local and categorical entropy of monomial endomorphisms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Tabulate a_n = (1/n) log length(R/φ^n(q)R) and extrapolate its limit.
    Entropy(CommonArgs),
    /// Bound the complexity of the pulled-back Koszul generator, per t.
    Delta(CommonArgs),
    /// Cohomology lengths of a Koszul complex, optionally pulled back along φ^n.
    Koszul(KoszulArgs),
    /// Check computed values against a closed form or a structural identity.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare the local entropies across a commuting square (square file).
    Transfer(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Spec file (square file for `transfer` and `verify transfer`).
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iter: u64,
    /// Comma-separated values of t.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0",
        allow_hyphen_values = true
    )]
    pub t: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Cross-check against brute-force enumeration where the search space allows.
    #[arg(long)]
    pub oracle: bool,
    /// Base for displayed logarithms; tolerances always apply to natural logs.
    #[arg(long, value_enum, default_value_t = LogBase::E)]
    pub log_base: LogBase,
}

#[derive(Args, Debug, Clone)]
pub struct KoszulArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Pull the complex back along this iterate of the input file's map.
    #[arg(long)]
    pub pullback_iter: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Report,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBase {
    E,
    #[value(name = "2")]
    Two,
    #[value(name = "10")]
    Ten,
}

impl LogBase {
    fn name(self) -> &'static str {
        match self {
            LogBase::E => "e",
            LogBase::Two => "2",
            LogBase::Ten => "10",
        }
    }

    fn divisor(self) -> f64 {
        match self {
            LogBase::E => 1.0,
            LogBase::Two => std::f64::consts::LN_2,
            LogBase::Ten => std::f64::consts::LN_10,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Diagonal,
    MonomialMatrix,
    Frobenius,
    IdealIndependence,
    Sandwich,
    Transfer,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Diagonal => "diagonal",
            Suite::MonomialMatrix => "monomial-matrix",
            Suite::Frobenius => "frobenius",
            Suite::IdealIndependence => "ideal-independence",
            Suite::Sandwich => "sandwich",
            Suite::Transfer => "transfer",
        }
    }
}

/// Rendered output and the process exit status (0, or 4 on a failed verdict).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let (common, pullback_iter) = match &cli.command {
        Command::Entropy(c) | Command::Delta(c) | Command::Transfer(c) => (c, None),
        Command::Verify { common, .. } => (common, None),
        Command::Koszul(k) => (&k.common, k.pullback_iter),
    };
    let text = std::fs::read_to_string(&common.spec).map_err(|e| Error::Io {
        path: common.spec.display().to_string(),
        message: e.to_string(),
    })?;
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let mut ctx = Ctx {
        args: common,
        report: Report::new(echo(cli), digest),
    };
    match &cli.command {
        Command::Entropy(_) => ctx.entropy(&parse_spec(&text)?)?,
        Command::Delta(_) => ctx.delta(&parse_spec(&text)?)?,
        Command::Koszul(_) => ctx.koszul(&parse_spec(&text)?, pullback_iter)?,
        Command::Transfer(_) => ctx.transfer(&parse_square(&text)?, false)?,
        Command::Verify {
            suite: Suite::Transfer,
            ..
        } => ctx.transfer(&parse_square(&text)?, true)?,
        Command::Verify { suite, .. } => ctx.verify(*suite, &parse_spec(&text)?)?,
    }
    let report = ctx.report;
    let stdout = match common.format {
        Format::Tsv => report.to_tsv(),
        Format::Report => report.to_json(),
    };
    let exit_code = if report.all_pass() {
        0
    } else {
        VERDICT_FAILURE
    };
    Ok(Outcome { stdout, exit_code })
}

/// Canonical form of the invocation: every flag, defaults included.
fn echo(cli: &Cli) -> String {
    let (head, common, pullback) = match &cli.command {
        Command::Entropy(c) => ("entropy".to_string(), c, None),
        Command::Delta(c) => ("delta".to_string(), c, None),
        Command::Transfer(c) => ("transfer".to_string(), c, None),
        Command::Verify { suite, common } => (format!("verify {}", suite.name()), common, None),
        Command::Koszul(k) => ("koszul".to_string(), &k.common, k.pullback_iter),
    };
    let t: Vec<String> = common.t.iter().map(|&x| format_g(x)).collect();
    let mut s = format!(
        "kentropy {head} --spec {} --max-iter {} --t {} --format {} --log-base {}",
        common.spec.display(),
        common.max_iter,
        t.join(","),
        match common.format {
            Format::Tsv => "tsv",
            Format::Report => "report",
        },
        common.log_base.name()
    );
    if common.oracle {
        s += " --oracle";
    }
    if let Some(n) = pullback {
        let _ = write!(s, " --pullback-iter {n}");
    }
    s
}

fn vectors(v: &[ExponentVector]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn method_name(m: EstimateMethod) -> String {
    match m {
        EstimateMethod::Recurrence { order } => format!("recurrence-order-{order}"),
        EstimateMethod::Slope => "least-squares-slope".into(),
    }
}

struct Ctx<'a> {
    args: &'a CommonArgs,
    report: Report,
}

impl Ctx<'_> {
    /// A natural log in the display base.
    fn lg(&self, x: f64) -> f64 {
        x / self.args.log_base.divisor()
    }

    fn n_max(&self) -> u64 {
        self.args.max_iter
    }

    fn base_facts(&mut self) {
        if self.args.log_base != LogBase::E {
            self.report.notices.push(format!(
                "logarithms shown in base {}",
                self.args.log_base.name()
            ));
        }
    }

    fn sequence_table(&mut self, title: &str, seq: &EntropySequence) {
        let mut t = Table::new(title, vec!["n", "length", "log_length", "a_n"]);
        for r in &seq.rows {
            t.push(vec![
                r.n.into(),
                r.length.clone().into(),
                self.lg(r.log_length).into(),
                self.lg(r.a_n).into(),
            ]);
        }
        self.report.tables.push(t);
    }

    fn estimate_facts(&mut self, prefix: &str, e: &LimitEstimate) {
        let r = &mut self.report;
        let d = self.args.log_base.divisor();
        r.fact(format!("{prefix}estimate"), e.estimate / d);
        r.fact(format!("{prefix}estimate-method"), method_name(e.method));
        r.fact(format!("{prefix}slope"), e.slope / d);
        r.fact(format!("{prefix}last-a_n"), e.last_term / d);
        r.fact(format!("{prefix}slope-minus-last"), e.slope_minus_last / d);
    }

    fn estimate(&mut self, prefix: &str, seq: &EntropySequence) -> Result<Option<LimitEstimate>> {
        if seq.rows.len() < 3 {
            self.report
                .notices
                .push("limit estimate needs --max-iter of at least 3".into());
            return Ok(None);
        }
        let e = estimate_limit(seq)?;
        self.estimate_facts(prefix, &e);
        Ok(Some(e))
    }

    fn oracle_colengths(&mut self, seq: &EntropySequence) -> Result<()> {
        let ring = seq.map.ring();
        let (mut checked, mut agree) = (0usize, true);
        for row in &seq.rows {
            let ideal = seq.map.iterate(row.n)?.image_ideal(&seq.ideal)?;
            match colength_by_enumeration(&ideal, ring) {
                Ok(len) => {
                    checked += 1;
                    agree &= len == row.length;
                }
                Err(Error::EnumerationTooLarge { .. } | Error::Overflow(_)) => {}
                Err(e) => return Err(e),
            }
        }
        self.report.verdict(
            "colength equals box enumeration",
            agree,
            format!(
                "{checked} of {} rows small enough to enumerate",
                seq.rows.len()
            ),
        );
        Ok(())
    }

    fn entropy(&mut self, spec: &SpecFile) -> Result<()> {
        self.base_facts();
        let map = spec.map()?;
        let ideal = spec
            .ideal
            .clone()
            .unwrap_or_else(|| spec.ring.maximal_ideal());
        let seq = local_entropy_sequence(map, &ideal, self.n_max())?;
        self.report.fact("ideal", ideal.to_string());
        self.sequence_table("entropy", &seq);
        if self.args.oracle {
            self.oracle_colengths(&seq)?;
        }
        let est = self.estimate("", &seq)?;
        if let Some(p) = closed_form(map) {
            self.report.fact("prediction", self.lg(p.value));
            self.report.fact("prediction-kind", p.kind.name());
            if let Some(e) = est {
                self.report
                    .fact("estimate-minus-prediction", self.lg(e.estimate - p.value));
            }
        }
        Ok(())
    }

    fn generator_sequence(spec: &SpecFile) -> Vec<ExponentVector> {
        spec.sequence
            .clone()
            .unwrap_or_else(|| spec.ring.maximal_ideal().generators().to_vec())
    }

    fn sandwich_tables(&mut self, reports: &[SandwichReport]) {
        for rep in reports {
            let mut t = Table::new(
                format!("t={}", format_g(rep.t)),
                vec!["n", "lower_logavg", "upper_logavg", "gap_bound", "holds"],
            );
            for row in &rep.rows {
                t.push(vec![
                    row.n.into(),
                    self.lg(row.lower_logavg).into(),
                    self.lg(row.upper_logavg).into(),
                    self.lg(row.gap_bound).into(),
                    if row.holds() { "yes" } else { "no" }.into(),
                ]);
            }
            self.report.tables.push(t);
        }
    }

    fn profile_facts(&mut self, b: &BigUint, width: u64) {
        self.report.fact("B", b.clone());
        self.report.fact("N", width);
    }

    fn delta(&mut self, spec: &SpecFile) -> Result<()> {
        self.base_facts();
        let map = spec.map()?;
        let seq = Self::generator_sequence(spec);
        self.report
            .fact("generator", format!("koszul{}", vectors(&seq)));
        if spec.ring.is_regular() {
            let reports = sandwich(map, &seq, &self.args.t, self.n_max())?;
            self.profile_facts(&reports[0].profile.max_length, reports[0].profile.width);
            if let Some(h) = reports[0].h_loc_reference {
                self.report.fact("h_loc-estimate", self.lg(h));
            }
            self.sandwich_tables(&reports);
            let rows: usize = reports.iter().map(|r| r.rows.len()).sum();
            self.report.verdict(
                "sandwich holds",
                reports.iter().all(SandwichReport::holds),
                format!("lower <= upper <= lower + gap_bound on {rows} rows"),
            );
        } else {
            self.report.notices.push(
                "ring is not regular: upper bound unavailable, reporting the lower bound only"
                    .into(),
            );
            let reports = lower_bounds(map, &seq, &self.args.t, self.n_max())?;
            self.profile_facts(&reports[0].profile.max_length, reports[0].profile.width);
            if let Some(h) = reports[0].h_loc_reference {
                self.report.fact("h_loc-estimate", self.lg(h));
            }
            for rep in &reports {
                let mut t = Table::new(
                    format!("t={}", format_g(rep.t)),
                    vec!["n", "lower_logavg", "h0_logavg"],
                );
                for row in &rep.rows {
                    t.push(vec![
                        row.n.into(),
                        self.lg(row.lower_logavg).into(),
                        self.lg(row.h0_logavg).into(),
                    ]);
                }
                self.report.tables.push(t);
            }
        }
        Ok(())
    }

    fn koszul(&mut self, spec: &SpecFile, pullback_iter: Option<u64>) -> Result<()> {
        let seq = spec
            .sequence
            .clone()
            .ok_or(Error::MissingField("sequence"))?;
        let mut complex = KoszulComplex::build(&spec.ring, seq)?;
        if let Some(n) = pullback_iter {
            complex = complex.pullback(&spec.map()?.iterate(n)?)?;
            self.report.fact("pullback-iterate", n);
        }
        self.report.fact("sequence", vectors(complex.sequence()));
        let h = complex.homology_lengths()?;
        let mut t = Table::new("homology", vec!["degree", "length"]);
        for (k, len) in h.iter() {
            t.push(vec![k.to_string().into(), len.clone().into()]);
        }
        self.report.tables.push(t);
        let profile = h.profile()?;
        self.profile_facts(&profile.max_length, profile.width);
        if self.args.oracle {
            let h0 = complex.h0_length()?;
            self.report.verdict(
                "H^0 equals colength of (x)",
                h.get(0) == h0,
                format!("colength {h0}"),
            );
            let doubled: Vec<u64> = complex
                .default_search_box()?
                .iter()
                .map(|s| 2 * s)
                .collect();
            let boxed = complex.homology_in_box(&doubled)?;
            self.report.verdict(
                "lengths stable on twice the search box",
                boxed == h,
                format!("box sides {doubled:?}"),
            );
        }
        Ok(())
    }

    fn verify(&mut self, suite: Suite, spec: &SpecFile) -> Result<()> {
        self.base_facts();
        match suite {
            Suite::Diagonal => {
                let map = spec.map()?;
                let xi = map
                    .diagonal_exponents()
                    .filter(|_| spec.ring.is_regular())
                    .ok_or_else(|| {
                        Error::InvalidMap(
                            "verify diagonal needs a diagonal map on a regular ring".into(),
                        )
                    })?;
                let base: BigUint = xi.iter().product();
                self.exact_power_suite(map, base, closed_form_diagonal(&xi)?, EXACT_TOLERANCE)
            }
            Suite::MonomialMatrix => {
                let map = spec.map()?;
                let det = map
                    .monomial_matrix_abs_det()
                    .filter(|_| spec.ring.is_regular())
                    .ok_or_else(|| {
                        Error::InvalidMap(
                            "verify monomial-matrix needs a monomial matrix on a regular ring"
                                .into(),
                        )
                    })?;
                let value = ln_big(&det);
                self.exact_power_suite(map, det, value, EXACT_TOLERANCE)
            }
            Suite::Frobenius => {
                let map = spec.map()?;
                if !map.is_frobenius() {
                    return Err(Error::InvalidMap(
                        "verify frobenius needs the map x -> x^p".into(),
                    ));
                }
                let p = spec.ring.characteristic();
                let value = frobenius_prediction(&spec.ring, p)?;
                if spec.ring.is_regular() {
                    let base = BigUint::from(p).pow(spec.ring.dim_ambient() as u32);
                    self.exact_power_suite(map, base, value, EXACT_TOLERANCE)
                } else {
                    let seq =
                        local_entropy_sequence(map, &spec.ring.maximal_ideal(), self.n_max())?;
                    self.deviation_table(&seq, value);
                    self.prediction_verdicts(&seq, value, TRANSFER_TOLERANCE)
                }
            }
            Suite::IdealIndependence => self.ideal_independence(spec),
            Suite::Sandwich => {
                let map = spec.map()?;
                let seq = Self::generator_sequence(spec);
                self.report
                    .fact("generator", format!("koszul{}", vectors(&seq)));
                let reports = sandwich(map, &seq, &self.args.t, self.n_max())?;
                self.profile_facts(&reports[0].profile.max_length, reports[0].profile.width);
                self.sandwich_tables(&reports);
                for rep in &reports {
                    self.report.verdict(
                        format!("t={}: lower <= upper", format_g(rep.t)),
                        rep.rows.iter().all(|r| {
                            r.lower_logavg <= r.upper_logavg + 1e-12 * r.upper_logavg.abs().max(1.0)
                        }),
                        format!("{} rows", rep.rows.len()),
                    );
                    self.report.verdict(
                        format!("t={}: upper - lower <= gap_bound", format_g(rep.t)),
                        rep.holds(),
                        "gap_bound = (log B + N|t|)/n".to_string(),
                    );
                }
                Ok(())
            }
            Suite::Transfer => unreachable!("square files are dispatched separately"),
        }
    }

    fn deviation_table(&mut self, seq: &EntropySequence, prediction: f64) {
        let mut t = Table::new(
            "entropy",
            vec!["n", "length", "a_n", "a_n_minus_prediction"],
        );
        for r in &seq.rows {
            t.push(vec![
                r.n.into(),
                r.length.clone().into(),
                self.lg(r.a_n).into(),
                self.lg(r.a_n - prediction).into(),
            ]);
        }
        self.report.tables.push(t);
    }

    /// Suites whose lengths are exactly `base^n`, so every `a_n` equals `log base`.
    fn exact_power_suite(
        &mut self,
        map: &MonomialMap,
        base: BigUint,
        value: f64,
        tol: f64,
    ) -> Result<()> {
        let seq = local_entropy_sequence(map, &map.ring().maximal_ideal(), self.n_max())?;
        self.deviation_table(&seq, value);
        let exact = seq.rows.iter().all(|r| r.length == base.pow(r.n as u32));
        self.report.verdict(
            format!("length_n = {base}^n exactly"),
            exact,
            format!("n = 1..{}", seq.rows.len()),
        );
        let worst = seq
            .rows
            .iter()
            .map(|r| (r.a_n - value).abs())
            .fold(0.0, f64::max);
        self.report.verdict(
            format!("|a_n - prediction| < {} at every n", format_g(tol)),
            worst < tol,
            format!("max deviation {}", format_g(self.lg(worst))),
        );
        self.prediction_verdicts(&seq, value, tol)
    }

    fn prediction_verdicts(&mut self, seq: &EntropySequence, value: f64, tol: f64) -> Result<()> {
        if self.args.oracle {
            self.oracle_colengths(seq)?;
        }
        self.report.fact("prediction", self.lg(value));
        if let Some(e) = self.estimate("", seq)? {
            let diff = (e.estimate - value).abs();
            self.report.verdict(
                format!("estimate within {} of prediction", format_g(tol)),
                diff <= tol,
                format!("|estimate - prediction| = {}", format_g(self.lg(diff))),
            );
        }
        Ok(())
    }

    fn ideal_independence(&mut self, spec: &SpecFile) -> Result<()> {
        let map = spec.map()?;
        let q = spec.ideal.clone().ok_or(Error::MissingField("ideal"))?;
        let m = spec.ring.maximal_ideal();
        let seq_q = local_entropy_sequence(map, &q, self.n_max())?;
        let seq_m = local_entropy_sequence(map, &m, self.n_max())?;
        // m^k ⊆ q + J for k = Σ(b_i - 1) + 1, and length(R/φ^n(m)^k) is at most
        // length(R/φ^n(m)) times the number of monomials of degree < k.
        let bounds = q
            .sum(spec.ring.quotient())?
            .pure_power_bounds()
            .expect("checked m-primary");
        let k: BigUint =
            bounds.iter().map(|b| b - BigUint::one()).sum::<BigUint>() + BigUint::one();
        let d = spec.ring.dim_ambient();
        let monomials_below_k = binomial(&(&k + BigUint::from(d - 1)), d);
        let log_k = ln_big(&monomials_below_k);
        self.report.fact("ideal", q.to_string());
        self.report.fact("envelope-constant", monomials_below_k);

        let mut t = Table::new(
            "entropy",
            vec!["n", "a_n_ideal", "a_n_maximal", "difference", "envelope"],
        );
        let mut inside = true;
        for (a, b) in seq_q.rows.iter().zip(&seq_m.rows) {
            let diff = a.a_n - b.a_n;
            let env = log_k / a.n as f64;
            inside &= diff >= -1e-12 && diff <= env + 1e-12;
            t.push(vec![
                a.n.into(),
                self.lg(a.a_n).into(),
                self.lg(b.a_n).into(),
                self.lg(diff).into(),
                self.lg(env).into(),
            ]);
        }
        self.report.tables.push(t);
        self.report.verdict(
            "0 <= a_n(ideal) - a_n(maximal) <= envelope at every n",
            inside,
            "envelope = log(envelope-constant)/n".to_string(),
        );
        let (Some(eq), Some(em)) = (
            self.estimate("ideal-", &seq_q)?,
            self.estimate("maximal-", &seq_m)?,
        ) else {
            return Ok(());
        };
        let diff = (eq.estimate - em.estimate).abs();
        self.report.verdict(
            format!("estimates agree within {}", format_g(TRANSFER_TOLERANCE)),
            diff <= TRANSFER_TOLERANCE,
            format!("|difference| = {}", format_g(self.lg(diff))),
        );
        if let Some(p) = closed_form(map) {
            let tol = if spec.ring.is_regular() {
                EXACT_TOLERANCE
            } else {
                TRANSFER_TOLERANCE
            };
            let worst = (eq.estimate - p.value)
                .abs()
                .max((em.estimate - p.value).abs());
            self.report.fact("prediction", self.lg(p.value));
            self.report.verdict(
                format!(
                    "both estimates within {} of the {} prediction",
                    format_g(tol),
                    p.kind.name()
                ),
                worst <= tol,
                format!("max |estimate - prediction| = {}", format_g(self.lg(worst))),
            );
        }
        Ok(())
    }

    fn transfer(&mut self, square: &TransferSquare, verify: bool) -> Result<()> {
        self.base_facts();
        let rep = transfer_check(square, self.n_max(), TRANSFER_TOLERANCE)?;
        self.report.fact("xi", vectors(square.xi_images()));
        let mut t = Table::new("transfer", vec!["n", "a_n_psi", "a_n_phi"]);
        for (a, b) in rep.psi_sequence.rows.iter().zip(&rep.phi_sequence.rows) {
            t.push(vec![
                a.n.into(),
                self.lg(a.a_n).into(),
                self.lg(b.a_n).into(),
            ]);
        }
        self.report.tables.push(t);
        self.estimate_facts("psi-", &rep.psi);
        self.estimate_facts("phi-", &rep.phi);
        match rep.conclusion {
            TransferConclusion::Constant { value } => {
                self.report.fact("conclusion", "constant");
                self.report.fact("shared-value", self.lg(value));
            }
            TransferConclusion::OneSided { lower, upper } => {
                self.report.fact("conclusion", "one-sided");
                self.report.fact("lower", self.lg(lower));
                self.report.fact("upper", self.lg(upper));
            }
        }
        if verify {
            self.report.verdict(
                "square commutes",
                square.check_square(),
                "xi∘psi = phi∘xi on every variable",
            );
            self.report.verdict(
                format!(
                    "local entropies agree within {}",
                    format_g(TRANSFER_TOLERANCE)
                ),
                rep.agree,
                format!(
                    "|psi - phi| = {}",
                    format_g(self.lg((rep.psi.estimate - rep.phi.estimate).abs()))
                ),
            );
            if let Some(p) = closed_form(square.psi()) {
                let diff = (rep.psi.estimate - p.value).abs();
                self.report.fact("prediction", self.lg(p.value));
                self.report.verdict(
                    format!(
                        "shared value within {} of the {} prediction",
                        format_g(TRANSFER_TOLERANCE),
                        p.kind.name()
                    ),
                    diff <= TRANSFER_TOLERANCE,
                    format!("|estimate - prediction| = {}", format_g(self.lg(diff))),
                );
            }
        }
        Ok(())
    }
}

fn binomial(n: &BigUint, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}
