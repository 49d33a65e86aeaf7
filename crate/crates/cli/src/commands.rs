use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use idealcover::cover::{
    cover_solvers, covering_number_with, is_eta_elementary, DEFAULT_COVER_SOLVER,
};
use idealcover::exchange::{cover_result_json, ideal_json, read_ring, write_ring};
use idealcover::guards::{DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_IDEALS, DEFAULT_MAX_SEARCH_NODES};
use idealcover::paperlab::{
    fingerprint_scan, records_csv, ring_families, verify_main_grid, verify_two_sided_grid,
    FamilyParams, ScanMode, Theorem, VerificationRecord,
};
use idealcover::radical::{
    radical_methods, sj_and_k, wedderburn_complement, DEFAULT_RADICAL_METHOD,
};
use idealcover::{enumerate_ideals, Guards, RingPresentation, Side};

use crate::output::{
    destination, emit, json_text, read_file, rows_csv, rows_text, CliError, Format, OUT_DIR_ENV,
};

#[derive(Debug, Parser)]
#[command(
    name = "idealcover",
    version,
    about = "Radicals, ideal lattices and minimal ideal covers of finite algebras over prime fields"
)]
pub struct Cli {
    /// Worker threads (defaults to one per core). Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=1024))]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a ring and print it in the exchange format.
    Construct {
        #[command(flatten)]
        ring: RingArgs,
        /// Also list every ideal of this side.
        #[arg(long, value_parser = parse_side)]
        ideals: Option<Side>,
        #[command(flatten)]
        guards: GuardArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Jacobson radical, optionally with a complement S and the split J = SJ + K.
    Radical {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value = DEFAULT_RADICAL_METHOD)]
        method: String,
        #[arg(long)]
        decompose: bool,
        #[command(flatten)]
        guards: GuardArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lattice of left, right or two-sided ideals.
    Ideals {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value = "left", value_parser = parse_side)]
        side: Side,
        /// Only the maximal ideals.
        #[arg(long)]
        maximal: bool,
        #[command(flatten)]
        guards: GuardArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Covering number and one minimum cover by proper ideals.
    Cover {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value = "left", value_parser = parse_side)]
        side: Side,
        #[arg(long, default_value = DEFAULT_COVER_SOLVER)]
        solver: String,
        #[command(flatten)]
        guards: GuardArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Whether every proper quotient has a strictly larger covering number.
    Elementary {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value = "left", value_parser = parse_side)]
        side: Side,
        #[command(flatten)]
        guards: GuardArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the covering-number results over a parameter grid.
    Verify {
        #[arg(long, value_enum, default_value_t = TheoremArg::Main)]
        theorem: TheoremArg,
        /// Largest q for the main grid (prime powers only).
        #[arg(long, default_value_t = 4)]
        qmax: u64,
        /// Largest n for the main grid.
        #[arg(long, default_value_t = 2)]
        nmax: usize,
        /// Primes for the two-sided check.
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 7])]
        primes: Vec<u64>,
        #[command(flatten)]
        guards: GuardArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify the associative structure tables of dimension d over F_p.
    Scan {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        /// Sample this many tables instead of enumerating all of them.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only list classes of left-elementary rings.
        #[arg(long)]
        elementary_only: bool,
        #[command(flatten)]
        guards: GuardArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Main,
    TwoSided,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Ring exchange file.
    #[arg(long, conflicts_with = "family")]
    pub ring: Option<PathBuf>,
    /// Built-in family: Rnq, Rnq-opposite, null, matrix.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Rank of the null ring (default 2).
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GuardArgs {
    #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_elements: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_IDEALS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_ideals: u64,
    /// Seconds per record.
    #[arg(long, default_value_t = 300, value_parser = clap::value_parser!(u64).range(1..))]
    pub time_budget: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_SEARCH_NODES, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_nodes: u64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
    /// Report real elapsed times instead of 0.
    #[arg(long)]
    pub timings: bool,
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse::<Side>().map_err(|e| e.to_string())
}

#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failed,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Failed => 1,
        }
    }

    fn of(records: &[VerificationRecord]) -> Outcome {
        if records.iter().all(VerificationRecord::passed) {
            Outcome::Success
        } else {
            Outcome::Failed
        }
    }
}

impl GuardArgs {
    fn guards(&self) -> Guards {
        let mut g = Guards::default();
        g.max_elements = self.max_elements;
        g.max_ideals = self.max_ideals as usize;
        g.time_budget = Duration::from_secs(self.time_budget);
        g.max_search_nodes = self.max_nodes;
        g
    }
}

impl RingArgs {
    fn load(&self) -> Result<RingPresentation, CliError> {
        match (&self.ring, &self.family) {
            (Some(path), None) => Ok(read_ring(&read_file(path)?)?.0),
            (None, Some(name)) => {
                let params = FamilyParams {
                    n: self.n,
                    q: self.q,
                    p: self.p,
                    r: self.r,
                };
                Ok(ring_families().get(name)?.build(&params)?)
            }
            _ => Err(CliError::Usage(
                "give exactly one of --ring or --family".into(),
            )),
        }
    }
}

impl OutputArgs {
    fn write(
        &self,
        stem: &str,
        human: impl FnOnce() -> String,
        structured: impl FnOnce() -> Value,
        csv: Option<String>,
    ) -> Result<(), CliError> {
        let text = match self.format {
            Format::Human => human(),
            Format::Structured => json_text(&structured()),
            Format::Csv => {
                csv.ok_or_else(|| CliError::Usage(format!("`{stem}` has no csv output")))?
            }
        };
        emit(
            &text,
            destination(
                self.output.as_deref(),
                self.out_dir.as_deref(),
                stem,
                self.format,
            ),
        )
    }

    fn ms(&self, d: Duration) -> u128 {
        if self.timings {
            d.as_millis()
        } else {
            0
        }
    }
}

fn ring_json(ring: &RingPresentation) -> Value {
    json!({
        "p": ring.p(),
        "dim": ring.dim(),
        "order": ring.size().to_string(),
    })
}

fn ring_line(ring: &RingPresentation) -> String {
    format!(
        "ring: p = {}, dim = {}, order = {}\n",
        ring.p(),
        ring.dim(),
        ring.size()
    )
}

pub fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Construct {
            ring,
            ideals,
            guards,
            output,
        } => {
            let r = ring.load()?;
            let listed = match ideals {
                Some(side) => enumerate_ideals(&r, *side, &guards.guards().armed())?
                    .ideals()
                    .to_vec(),
                None => Vec::new(),
            };
            let text = write_ring(&r, &listed);
            if output.format == Format::Csv {
                return Err(CliError::Usage("`construct` has no csv output".into()));
            }
            emit(
                &text,
                destination(
                    output.output.as_deref(),
                    output.out_dir.as_deref(),
                    "ring",
                    Format::Structured,
                ),
            )?;
        }
        Command::Radical {
            ring,
            method,
            decompose,
            guards,
            output,
        } => {
            let r = ring.load()?;
            let g = guards.guards().armed();
            let methods = radical_methods();
            let start = Instant::now();
            let rad = methods.get(method)?.radical(&r, &g)?;
            let decomposition = if *decompose {
                let d = wedderburn_complement(&r, &g)?;
                let split = sj_and_k(&r, &d).is_ok();
                Some((d, split))
            } else {
                None
            };
            let elapsed = output.ms(start.elapsed());
            let csv = format!(
                "method,dim,order,rows\n{method},{},{},{}\n",
                rad.dim(),
                rad.order(),
                rows_csv(rad.rows())
            );
            output.write(
                "radical",
                || {
                    let mut s = ring_line(&r);
                    s += &format!("method: {method}\n");
                    s += &format!("radical: dim {}, order {}\n", rad.dim(), rad.order());
                    s += &format!("basis: {}\n", rows_text(rad.rows()));
                    if let Some((d, split)) = &decomposition {
                        s += &format!("S: {}\n", rows_text(d.s.rows()));
                        s += &format!("SJ: {}\n", rows_text(d.sj.rows()));
                        s += &format!("K: {}\n", rows_text(d.k.rows()));
                        s += &format!("J = SJ + K direct: {split}\n");
                    }
                    s += &format!("elapsed_ms: {elapsed}\n");
                    s
                },
                || {
                    let mut v = json!({
                        "ring": ring_json(&r),
                        "method": method,
                        "radical": ideal_json(&rad),
                        "elapsed_ms": elapsed,
                    });
                    if let Some((d, split)) = &decomposition {
                        v["decomposition"] = json!({
                            "s": d.s.rows(),
                            "j": d.j.rows(),
                            "sj": d.sj.rows(),
                            "k": d.k.rows(),
                            "splits": split,
                        });
                    }
                    v
                },
                Some(csv),
            )?;
        }
        Command::Ideals {
            ring,
            side,
            maximal,
            guards,
            output,
        } => {
            let r = ring.load()?;
            let lattice = enumerate_ideals(&r, *side, &guards.guards().armed())?;
            let shown: Vec<usize> = (0..lattice.len())
                .filter(|&i| !*maximal || lattice.is_maximal(i))
                .collect();
            let mut csv = String::from("index,dim,order,cyclic,maximal,rows\n");
            for &i in &shown {
                let ideal = &lattice.ideals()[i];
                csv += &format!(
                    "{i},{},{},{},{},{}\n",
                    ideal.dim(),
                    ideal.order(),
                    lattice.is_cyclic(i),
                    lattice.is_maximal(i),
                    rows_csv(ideal.rows())
                );
            }
            output.write(
                "ideals",
                || {
                    let mut s = ring_line(&r);
                    s += &format!(
                        "{side} ideals: {} (cyclic {}, maximal {})\n",
                        lattice.len(),
                        lattice.cyclic_count(),
                        lattice.maximal_indices().count()
                    );
                    for &i in &shown {
                        let ideal = &lattice.ideals()[i];
                        let mut tags = Vec::new();
                        if lattice.is_cyclic(i) {
                            tags.push("cyclic");
                        }
                        if lattice.is_maximal(i) {
                            tags.push("maximal");
                        }
                        s += &format!(
                            "  {i:>4}  dim {}  order {}  {}  {}\n",
                            ideal.dim(),
                            ideal.order(),
                            tags.join(","),
                            rows_text(ideal.rows())
                        );
                    }
                    s
                },
                || {
                    json!({
                        "ring": ring_json(&r),
                        "side": side,
                        "count": lattice.len(),
                        "ideals": shown.iter().map(|&i| {
                            let mut v = ideal_json(&lattice.ideals()[i]);
                            v["cyclic"] = json!(lattice.is_cyclic(i));
                            v["maximal"] = json!(lattice.is_maximal(i));
                            v
                        }).collect::<Vec<_>>(),
                    })
                },
                Some(csv),
            )?;
        }
        Command::Cover {
            ring,
            side,
            solver,
            guards,
            output,
        } => {
            let r = ring.load()?;
            let solvers = cover_solvers();
            let res =
                covering_number_with(&r, *side, solvers.get(solver)?, &guards.guards().armed())?;
            let elapsed = output.ms(res.elapsed);
            let csv = format!(
                "side,eta,certificate,nodes,maximal,forced,elapsed_ms\n{},{},{},{},{},{},{elapsed}\n",
                res.side, res.eta, res.certificate, res.nodes, res.maximal_count, res.forced_count
            );
            output.write(
                "cover",
                || {
                    let mut s = ring_line(&r);
                    s += &format!("side: {}\n", res.side);
                    s += &format!("eta: {}\n", res.eta);
                    s += &format!("certificate: {}\n", res.certificate);
                    s += &format!("maximal ideals: {}\n", res.maximal_count);
                    s += &format!("forced ideals: {}\n", res.forced_count);
                    s += &format!("search nodes: {}\n", res.nodes);
                    s += &format!("elapsed_ms: {elapsed}\n");
                    if let Some(w) = &res.uncovered_witness {
                        s += &format!(
                            "element outside every maximal ideal: {}\n",
                            rows_text(std::slice::from_ref(w))
                        );
                    }
                    for (i, m) in res.cover.iter().enumerate() {
                        s += &format!(
                            "  {:>3}. order {}  {}\n",
                            i + 1,
                            m.order(),
                            rows_text(m.rows())
                        );
                    }
                    s
                },
                || {
                    let mut v = cover_result_json(&res, output.timings);
                    v["ring"] = ring_json(&r);
                    v["solver"] = json!(solver);
                    v
                },
                Some(csv),
            )?;
        }
        Command::Elementary {
            ring,
            side,
            guards,
            output,
        } => {
            let r = ring.load()?;
            let rep = is_eta_elementary(&r, *side, &guards.guards().armed())?;
            let mut csv = String::from("ideal_dim,ideal_order,rows,quotient_eta,exceeds\n");
            for qe in &rep.quotients {
                csv += &format!(
                    "{},{},{},{},{}\n",
                    qe.ideal.dim(),
                    qe.ideal.order(),
                    rows_csv(qe.ideal.rows()),
                    qe.eta,
                    qe.eta > rep.eta
                );
            }
            output.write(
                "elementary",
                || {
                    let mut s = ring_line(&r);
                    s += &format!("side: {side}\n");
                    s += &format!("eta: {}\n", rep.eta);
                    s += &format!("elementary: {}\n", rep.elementary);
                    for qe in &rep.quotients {
                        s += &format!(
                            "  quotient by {} (order {}): eta {}{}\n",
                            rows_text(qe.ideal.rows()),
                            qe.ideal.order(),
                            qe.eta,
                            if qe.eta > rep.eta {
                                ""
                            } else {
                                "  (not larger)"
                            }
                        );
                    }
                    s
                },
                || {
                    json!({
                        "ring": ring_json(&r),
                        "side": side,
                        "eta": rep.eta,
                        "elementary": rep.elementary,
                        "quotients": rep.quotients.iter().map(|qe| json!({
                            "ideal": qe.ideal.rows(),
                            "order": qe.ideal.order().to_string(),
                            "eta": qe.eta,
                        })).collect::<Vec<_>>(),
                    })
                },
                Some(csv),
            )?;
        }
        Command::Verify {
            theorem,
            qmax,
            nmax,
            primes,
            guards,
            output,
        } => {
            let g = guards.guards();
            let (theorem, records) = match theorem {
                TheoremArg::Main => (Theorem::Main, verify_main_grid(*qmax, *nmax, &g)?),
                TheoremArg::TwoSided => (Theorem::TwoSided, verify_two_sided_grid(primes, &g)?),
            };
            let outcome = Outcome::of(&records);
            let failed = outcome == Outcome::Failed;
            output.write(
                &format!("verify-{}", theorem.as_str()),
                || verify_human(theorem, &records, output),
                || {
                    json!({
                        "theorem": theorem,
                        "passed": !failed,
                        "records": records.iter().map(|rec| {
                            let mut v = serde_json::to_value(rec).expect("records serialize");
                            v["verdict"] = json!(rec.verdict());
                            v["order"] = json!(rec.order.to_string());
                            v["elapsed_ms"] = json!(output.ms(rec.elapsed) as u64);
                            v
                        }).collect::<Vec<_>>(),
                    })
                },
                Some(records_csv(theorem, &records, output.timings)),
            )?;
            return Ok(outcome);
        }
        Command::Scan {
            p,
            d,
            samples,
            seed,
            elementary_only,
            guards,
            output,
        } => {
            let mode = match samples {
                Some(samples) => ScanMode::Sampled {
                    samples: *samples,
                    seed: *seed,
                },
                None => ScanMode::Exhaustive,
            };
            let mut rep = fingerprint_scan(*p, *d, mode, &guards.guards().armed())?;
            if *elementary_only {
                rep.classes.retain(|c| c.left_elementary);
            }
            let mut csv = String::from(
                "order,radical_order,has_identity,has_left_identity,has_right_identity,left_ideals,two_sided_ideals,eta_left,eta_right,eta_two_sided,left_elementary,count\n",
            );
            for c in &rep.classes {
                let f = &c.fingerprint;
                csv += &format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    f.order,
                    f.radical_order,
                    f.has_identity,
                    f.has_left_identity,
                    f.has_right_identity,
                    f.left_ideal_count,
                    f.two_sided_ideal_count,
                    f.eta_left,
                    f.eta_right,
                    f.eta_two_sided,
                    c.left_elementary,
                    c.count
                );
            }
            output.write(
                "scan",
                || {
                    let mut s = format!("p = {}, d = {}\n", rep.p, rep.d);
                    s += &match rep.mode {
                        ScanMode::Exhaustive => "mode: exhaustive\n".to_string(),
                        ScanMode::Sampled { samples, seed } => format!("mode: sampled ({samples} tables, seed {seed})\n"),
                    };
                    s += &format!("tables scanned: {}\n", rep.tables_scanned);
                    s += &format!("associative: {}\n", rep.associative);
                    s += &format!("classes: {}\n", rep.classes.len());
                    for c in &rep.classes {
                        let f = &c.fingerprint;
                        s += &format!(
                            "  {} x{}: |J| = {}, identity {}/{}/{}, ideals {}/{}, eta {}/{}/{}, table {:?}\n",
                            if c.left_elementary { "elementary" } else { "other" },
                            c.count,
                            f.radical_order,
                            f.has_identity,
                            f.has_left_identity,
                            f.has_right_identity,
                            f.left_ideal_count,
                            f.two_sided_ideal_count,
                            f.eta_left,
                            f.eta_right,
                            f.eta_two_sided,
                            c.representative
                        );
                    }
                    s
                },
                || serde_json::to_value(&rep).expect("scan reports serialize"),
                Some(csv),
            )?;
        }
    }
    Ok(Outcome::Success)
}

fn verify_human(theorem: Theorem, records: &[VerificationRecord], output: &OutputArgs) -> String {
    let param = match theorem {
        Theorem::Main => "n",
        Theorem::TwoSided => "p",
    };
    let mut s = format!(
        "{:>4} {:>4} {:>10} {:>9} {:>8} {:>6} {:>7} {:>8} {:>10}\n",
        "q", param, "order", "eta", "formula", "forced", "maximal", "verdict", "elapsed_ms"
    );
    for r in records {
        s += &format!(
            "{:>4} {:>4} {:>10} {:>9} {:>8} {:>6} {:>7} {:>8} {:>10}\n",
            r.q,
            r.parameter,
            r.order,
            r.eta_computed.to_string(),
            r.eta_formula,
            r.forced,
            r.maximal,
            r.verdict(),
            output.ms(r.elapsed)
        );
        for f in &r.failures {
            s += &format!("      {f}\n");
        }
    }
    let passed = records.iter().filter(|r| r.passed()).count();
    s += &format!("{passed}/{} passed\n", records.len());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use idealcover::gf::make_field;
    use idealcover::paperlab::verify_main_theorem;

    #[test]
    fn failed_records_exit_with_one() {
        let mut rec =
            verify_main_theorem(1, &make_field(2, 1).unwrap(), &Guards::default()).unwrap();
        assert_eq!(Outcome::of(std::slice::from_ref(&rec)).exit_code(), 0);
        rec.failures
            .push("left covering number 4 differs from formula 3".into());
        assert_eq!(Outcome::of(&[rec]).exit_code(), 1);
    }

    #[test]
    fn guard_errors_exit_with_three() {
        let guard = CliError::Engine(idealcover::Error::IdealGuard { partial: 9, cap: 8 });
        assert_eq!(guard.exit_code(), 3);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::Engine(idealcover::Error::NotPrime(4)).exit_code(),
            2
        );
    }
}
