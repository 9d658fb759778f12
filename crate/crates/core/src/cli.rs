//! Command dispatch and reporting for the `lyndon-pbw` binary.
//!
//! Exit status: 0 when every reported check passes, 1 when some check reports
//! a violation, 2 on input errors. Machine output is the presentation document
//! followed by `report <key> <value>` lines, which the parser skips.

use std::fmt::Display;
use std::path::Path;
use std::sync::Arc;

use clap::{Parser, ValueEnum};

use crate::braiding::{BracketMode, Braiding};
use crate::coalg::{biideal_check, coideal_check, Comultiplication, Side};
use crate::groebner::{DegreeSelector, GroebnerBasis, WordSet};
use crate::pbw::{relative_pbw, show_expansion, FiltrationKind, PbwData};
use crate::presentation::{parse_polynomial, parse_presentation, Presentation};
use crate::series::{
    ambiguities, chain_properties_check, gk_report, hilbert_series_unchecked, homology_bounds_unchecked,
    is_lyndon_ideal, HilbertReport, HomologyReport,
};
use crate::words::{degrees_up_to, Word};

/// The shipped example presentations, addressable by name.
pub const CORPUS: &[(&str, &str)] = &[
    ("quantum_plane", include_str!("../corpus/quantum_plane.pres")),
    ("a2_serre_q2", include_str!("../corpus/a2_serre_q2.pres")),
    ("x_pow_3_zeta", include_str!("../corpus/x_pow_3_zeta.pres")),
    ("x_pow_5_zeta", include_str!("../corpus/x_pow_5_zeta.pres")),
    ("x3_q2_negative", include_str!("../corpus/x3_q2_negative.pres")),
    ("x3_q2", include_str!("../corpus/x3_q2_negative.pres")),
    ("heisenberg", include_str!("../corpus/heisenberg.pres")),
    ("free2", include_str!("../corpus/free2.pres")),
    ("x_pow_2_f2", include_str!("../corpus/x_pow_2_f2.pres")),
    ("x_pow_3_f3", include_str!("../corpus/x_pow_3_f3.pres")),
];

pub fn corpus_entry(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Gb,
    Basis,
    Pbw,
    Heights,
    Rearrange,
    Coideal,
    CheckComult,
    Ore,
    Hilbert,
    Chains,
    ReportAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Tau,
    TauInverse,
}

impl From<ModeArg> for BracketMode {
    fn from(m: ModeArg) -> BracketMode {
        match m {
            ModeArg::Tau => BracketMode::Tau,
            ModeArg::TauInverse => BracketMode::TauInverse,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

/// Computations on graded braided algebras given by a presentation file.
#[derive(Debug, Clone, Parser)]
#[command(name = "lyndon-pbw", version)]
pub struct Cli {
    pub command: Command,
    /// Presentation file, or the name of a corpus entry (e.g. quantum_plane).
    pub input: String,
    /// Truncation degree, overriding the document's max_degree.
    #[arg(long)]
    pub max_degree: Option<u32>,
    #[arg(long, value_enum, default_value = "tau")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    /// Number of pseudo-random generator orders checked besides the lex order.
    #[arg(long, default_value_t = 2)]
    pub orders: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print the presentation document followed by `report` lines.
    #[arg(long)]
    pub machine: bool,
    /// Closed letter subsets `Y1[,Y2]`, letters joined by `+` (Y2 defaults to all letters).
    #[arg(long)]
    pub subalphabet: Option<String>,
    /// Worker threads for parallel verification.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Polynomial to rewrite in PBW normal form (for `rearrange`).
    #[arg(long)]
    pub expr: Option<String>,
}

/// Final output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

#[derive(Debug, Default)]
struct Report {
    lines: Vec<(String, String)>,
    violation: bool,
}

impl Report {
    fn add(&mut self, key: &str, value: impl Display) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    fn check(&mut self, key: &str, passed: bool, detail: impl Display) {
        let detail = detail.to_string();
        let verdict = if passed { "pass" } else { "FAIL" };
        if detail.is_empty() {
            self.add(key, verdict);
        } else {
            self.add(key, format!("{detail} {verdict}"));
        }
        self.violation |= !passed;
    }
}

/// Input problems: exit status 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::error::Error> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn input_err<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

/// Parses arguments (without the program name) and runs the command.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("lyndon-pbw")).chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            Outcome {
                status,
                output: e.render().to_string(),
            }
        }
    }
}

fn load(input: &str) -> Result<String, InputError> {
    let path = Path::new(input);
    if path.is_file() {
        return Ok(std::fs::read_to_string(path)?);
    }
    match corpus_entry(input) {
        Some(text) => Ok(text.to_string()),
        None => input_err(format!("`{input}` is neither a readable file nor a corpus name")),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    match load(&cli.input).and_then(|text| Ok(parse_presentation(&text)?)) {
        Ok(pres) => run_on(cli, &pres),
        Err(e) => failure(e),
    }
}

/// Runs a command on an already parsed presentation; `cli.input` is ignored.
pub fn run_on(cli: &Cli, pres: &Presentation) -> Outcome {
    let go = || -> Result<Outcome, InputError> {
        match cli.max_degree {
            Some(d) => run_presentation(cli, &pres.with_max_degree(d)?),
            None => run_presentation(cli, pres),
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(go),
            Err(e) => Err(InputError(e.to_string())),
        },
        None => go(),
    };
    result.unwrap_or_else(failure)
}

fn failure(e: InputError) -> Outcome {
    Outcome {
        status: 2,
        output: format!("error: {}\n", e.0),
    }
}

struct Context {
    pres: Presentation,
    gb: Arc<GroebnerBasis>,
    braiding: Arc<Braiding>,
}

impl Context {
    fn pbw(&self, mode: BracketMode) -> Result<PbwData, InputError> {
        Ok(PbwData::new(self.gb.clone(), self.braiding.clone(), mode)?)
    }

    fn show(&self, w: &Word) -> String {
        self.pres.alphabet.show_word(w)
    }

    fn show_words(&self, ws: &[Word]) -> String {
        if ws.is_empty() {
            return "(none)".to_string();
        }
        ws.iter().map(|w| self.show(w)).collect::<Vec<_>>().join(" ")
    }
}

fn run_presentation(cli: &Cli, pres: &Presentation) -> Result<Outcome, InputError> {
    let gb = GroebnerBasis::complete(&pres.field, &pres.alphabet, &pres.relations, pres.max_degree)?;
    let braiding = Braiding::new(&pres.field, &pres.alphabet, pres.bicharacter.clone())?;
    let ctx = Context {
        pres: pres.clone(),
        gb: Arc::new(gb),
        braiding: Arc::new(braiding),
    };
    let subalphabet = cli
        .subalphabet
        .as_deref()
        .map(|s| parse_subalphabet(&ctx, s))
        .transpose()?;
    let mut r = Report::default();
    let mode: BracketMode = cli.mode.into();
    let side: Side = cli.side.into();
    match cli.command {
        Command::Gb => gb_section(&ctx, &mut r)?,
        Command::Basis => basis_section(&ctx, &mut r)?,
        Command::Pbw => {
            let p = ctx.pbw(mode)?;
            pbw_section(&ctx, &p, cli, &mut r);
            if let Some((y1, y2)) = subalphabet {
                relative_section(&ctx, y1, y2, mode, &mut r)?;
            }
        }
        Command::Heights => heights_section(&ctx, &ctx.pbw(mode)?, &mut r),
        Command::Rearrange => {
            let Some(expr) = cli.expr.as_deref() else {
                return input_err("rearrange needs --expr <polynomial>");
            };
            let f = parse_polynomial(expr, &pres.field, &pres.alphabet)?;
            rearrange_section(&ctx, &ctx.pbw(mode)?, &f, &mut r);
        }
        Command::Coideal => coideal_section(&ctx, side, &mut r)?,
        Command::CheckComult => {
            comult_section(&ctx, &mut r)?;
        }
        Command::Ore => ore_section(&ctx, &ctx.pbw(mode)?, true, &mut r),
        Command::Hilbert => hilbert_section(&ctx, &ctx.pbw(mode)?, true, &mut r),
        Command::Chains => chains_section(&ctx, &mut r)?,
        Command::ReportAll => {
            let p = ctx.pbw(mode)?;
            gb_section(&ctx, &mut r)?;
            basis_section(&ctx, &mut r)?;
            pbw_section(&ctx, &p, cli, &mut r);
            if let Some((y1, y2)) = subalphabet {
                relative_section(&ctx, y1, y2, mode, &mut r)?;
            }
            heights_section(&ctx, &p, &mut r);
            let biideal = comult_section(&ctx, &mut r)?;
            if biideal {
                coideal_section(&ctx, side, &mut r)?;
            } else {
                r.add("coideal.status", "skipped (biideal condition fails)");
            }
            ore_section(&ctx, &p, false, &mut r);
            hilbert_section(&ctx, &p, false, &mut r);
            chains_section(&ctx, &mut r)?;
        }
    }
    let status = if r.violation { 1 } else { 0 };
    r.add("status", if r.violation { "violation" } else { "pass" });
    let mut output = String::new();
    if cli.machine {
        output.push_str(&pres.to_document());
        for (k, v) in &r.lines {
            output.push_str(&format!("report {k} {v}\n"));
        }
    } else {
        for (k, v) in &r.lines {
            output.push_str(&format!("{k}: {v}\n"));
        }
    }
    Ok(Outcome { status, output })
}

/// `Y1[,Y2]` with letters joined by `+`; each must be an initial segment of the alphabet.
fn parse_subalphabet(ctx: &Context, s: &str) -> Result<(usize, usize), InputError> {
    let alphabet = &ctx.pres.alphabet;
    let segment = |part: &str| -> Result<usize, InputError> {
        let mut idx = Vec::new();
        for name in part.split('+').map(str::trim).filter(|n| !n.is_empty()) {
            match alphabet.index_of(name) {
                Some(i) => idx.push(i as usize),
                None => return input_err(format!("unknown letter `{name}` in --subalphabet")),
            }
        }
        idx.sort_unstable();
        idx.dedup();
        if idx.iter().enumerate().any(|(k, &i)| k != i) {
            return input_err(format!("`{part}` is not an initial segment of the letter order"));
        }
        Ok(idx.len())
    };
    let (a, b) = match s.split_once(',') {
        Some((a, b)) => (segment(a)?, segment(b)?),
        None => (segment(s)?, alphabet.size()),
    };
    if a > b {
        return input_err("--subalphabet needs Y1 inside Y2");
    }
    Ok((a, b))
}

fn gb_section(ctx: &Context, r: &mut Report) -> Result<(), InputError> {
    r.add("gb.bound", ctx.gb.bound());
    r.add("gb.size", ctx.gb.elements().len());
    for e in ctx.gb.elements() {
        r.add("gb.element", e.to_expr());
    }
    r.add("gb.obstructions", ctx.show_words(&ctx.gb.obstructions()?));
    Ok(())
}

fn basis_section(ctx: &Context, r: &mut Report) -> Result<(), InputError> {
    let alphabet = &ctx.pres.alphabet;
    let bound = ctx.gb.bound();
    let mut totals = vec![0usize; bound as usize + 1];
    for d in degrees_up_to(alphabet, bound, alphabet.size()) {
        let words = ctx.gb.irreducible_words(WordSet::All, &DegreeSelector::Exact(d.clone()))?;
        totals[d.total() as usize] += words.len();
        if !words.is_empty() {
            r.add("basis.dimension", format!("{d} {}", words.len()));
        }
    }
    let totals: Vec<String> = totals.iter().map(usize::to_string).collect();
    r.add("basis.total", totals.join(" "));
    let restricted = ctx.gb.irreducible_words(WordSet::Restricted, &DegreeSelector::UpTo(bound))?;
    let irreducible = ctx.gb.irreducible_words(WordSet::All, &DegreeSelector::UpTo(bound))?;
    r.add("basis.restricted_equals_irreducible", restricted == irreducible);
    Ok(())
}

fn order_label(ctx: &Context, p: &PbwData, order: &[usize]) -> String {
    order
        .iter()
        .map(|&i| ctx.show(&p.generators()[i].word))
        .collect::<Vec<_>>()
        .join("<")
}

fn pbw_section(ctx: &Context, p: &PbwData, cli: &Cli, r: &mut Report) {
    r.add("pbw.mode", p.mode().name());
    for g in p.generators() {
        r.add(
            "pbw.generator",
            format!("{} degree={} height={} z={}", ctx.show(&g.word), g.degree, g.height, g.z.to_expr()),
        );
    }
    let orders = p.default_orders(cli.orders, cli.seed);
    let verification = p.verify(&orders);
    for (k, o) in verification.orders.iter().enumerate() {
        let label = order_label(ctx, p, &o.order);
        r.check(&format!("pbw.order.{k}"), o.passed(), format!("{label} degrees={}", o.degrees.len()));
        for d in o.degrees.iter().filter(|d| !d.passed) {
            r.add(
                &format!("pbw.order.{k}.degree"),
                format!(
                    "{} monomials={} dimension={} rank={} FAIL",
                    d.degree, d.monomials, d.dimension, d.rank
                ),
            );
        }
    }
    if !verification.passed() {
        r.add("pbw.filtration", "skipped (basis not verified)");
        return;
    }
    let words = p.generator_words();
    let alphabet = &ctx.pres.alphabet;
    let filtration = p.filtration_check();
    for e in &filtration.entries {
        let label = match &e.kind {
            FiltrationKind::Power { generator, exponent } => {
                format!("z_{}^{exponent}", ctx.show(&words[*generator]))
            }
            FiltrationKind::Commutator { xi, eta } => {
                format!("[z_{}, z_{}]", ctx.show(&words[*xi]), ctx.show(&words[*eta]))
            }
        };
        let value = match &e.expansion {
            Some(x) => show_expansion(x, alphabet, &words),
            None => "(no expansion)".to_string(),
        };
        r.check("pbw.filtration", e.passed, format!("{label} = {value}"));
    }
}

fn relative_section(ctx: &Context, y1: usize, y2: usize, mode: BracketMode, r: &mut Report) -> Result<(), InputError> {
    let names = |k: usize| {
        let n = &ctx.pres.alphabet.names()[..k];
        if n.is_empty() {
            "{}".to_string()
        } else {
            format!("{{{}}}", n.join(","))
        }
    };
    r.add("relative.y1", names(y1));
    r.add("relative.y2", names(y2));
    match relative_pbw(&ctx.gb, &ctx.braiding, y1, y2, mode) {
        Ok(rep) => {
            r.add("relative.xi", ctx.show_words(&rep.xi));
            for d in &rep.degrees {
                r.check(
                    "relative.degree",
                    d.passed,
                    format!(
                        "{} dimension={} expected={} left_rank={} right_rank={}",
                        d.degree, d.dimension, d.expected, d.left_rank, d.right_rank
                    ),
                );
            }
        }
        Err(e) => r.check("relative.status", false, e),
    }
    Ok(())
}

fn heights_section(ctx: &Context, p: &PbwData, r: &mut Report) {
    for g in p.generators() {
        r.add("heights.generator", format!("{} {}", ctx.show(&g.word), g.height));
    }
    let roots = p.root_of_unity_check();
    let words = p.generator_words();
    for e in &roots.entries {
        let order = match e.order {
            crate::scalar::RootOrder::Order(t) => t.to_string(),
            crate::scalar::RootOrder::NotRootWithin(b) => format!("none<={b}"),
        };
        r.check(
            "heights.root_of_unity",
            e.passed,
            format!(
                "{} height={} q={} (n)_q={} order={order}",
                ctx.show(&words[e.generator]),
                e.height,
                e.q,
                e.q_integer
            ),
        );
    }
    let gk = p.gk_lower_bound();
    r.add("heights.unknown_count", gk);
}

fn rearrange_section(ctx: &Context, p: &PbwData, f: &crate::freealg::Polynomial, r: &mut Report) {
    r.add("rearrange.input", f.to_expr());
    match p.to_pbw_normal_form(f) {
        Ok(x) => r.add("rearrange.pbw", show_expansion(&x, &ctx.pres.alphabet, &p.generator_words())),
        Err(e) => r.check("rearrange.pbw", false, e),
    }
}

/// Reports the comultiplication and the biideal check; returns whether the check passed.
fn comult_section(ctx: &Context, r: &mut Report) -> Result<bool, InputError> {
    let c = ctx.pres.comultiplication()?;
    r.add("comult.standard", c.is_standard());
    r.add("comult.left_bounded", c.is_left_bounded());
    r.add("comult.right_bounded", c.is_right_bounded());
    let rep = biideal_check(&c, &ctx.gb)?;
    for e in &rep.entries {
        if !e.residual.is_zero() {
            r.add(
                "comult.residual",
                format!("{} -> {}", ctx.gb.elements()[e.element].to_expr(), e.residual.to_expr()),
            );
        }
    }
    r.check("comult.biideal", rep.passed(), "");
    Ok(rep.passed())
}

fn coideal_section(ctx: &Context, side: Side, r: &mut Report) -> Result<(), InputError> {
    let c: Comultiplication = ctx.pres.comultiplication()?;
    let mode = side.coideal_mode();
    let p = ctx.pbw(mode)?;
    r.add("coideal.side", side);
    r.add("coideal.mode", mode.name());
    if !c.is_bounded(side) {
        r.check("coideal.status", false, format!("comultiplication is not {side} bounded"));
        return Ok(());
    }
    let rep = coideal_check(&p, &c, &ctx.gb, None, side)?;
    for e in &rep.entries {
        let failed: Vec<String> = e.failed_degrees.iter().map(|d| d.to_string()).collect();
        let detail = if failed.is_empty() {
            ctx.show(&p.generators()[e.generator].word)
        } else {
            format!("{} failing degrees {}", ctx.show(&p.generators()[e.generator].word), failed.join(" "))
        };
        r.check("coideal.generator", e.passed(), detail);
    }
    r.add(
        "coideal.subcoalgebra",
        match rep.subcoalgebra {
            Some(true) => "true",
            Some(false) => "false",
            None => "untested (bicharacter does not square to the trivial one)",
        },
    );
    Ok(())
}

fn ore_section(ctx: &Context, p: &PbwData, required: bool, r: &mut Report) {
    let tower = match p.ore_tower() {
        Ok(t) => t,
        Err(e) if required => {
            r.check("ore.status", false, e);
            return;
        }
        Err(e) => {
            r.add("ore.status", format!("not applicable ({e})"));
            return;
        }
    };
    let words = p.generator_words();
    let alphabet = &ctx.pres.alphabet;
    r.add("ore.base", "k");
    for step in &tower.steps {
        let name = format!("z_{}", ctx.show(&words[step.generator]));
        r.add("ore.step", &name);
        for (j, d) in &step.derivations {
            let value = match d {
                Some(x) => show_expansion(x, alphabet, &words),
                None => "(no expansion)".to_string(),
            };
            r.add("ore.delta", format!("{name}(z_{}) = {value}", ctx.show(&words[*j])));
        }
    }
    r.check("ore.certified", tower.certified(), format!("length={}", tower.steps.len()));
}

fn hilbert_lines(report: &HilbertReport, r: &mut Report) {
    let total: Vec<String> = report.series.univariate().iter().map(u64::to_string).collect();
    r.add("hilbert.total", total.join(" "));
    for (d, c) in &report.series.coefficients {
        r.add("hilbert.coefficient", format!("{d} {c}"));
    }
    r.add("hilbert.compared_up_to", report.compared_up_to);
    for m in report.mismatches() {
        r.add(
            "hilbert.mismatch",
            format!("{} predicted={} counted={}", m.degree, m.predicted, m.counted),
        );
    }
}

fn homology_lines(h: &HomologyReport, checked: bool, r: &mut Report) {
    r.add("homology.bound", h.bound);
    r.add("homology.certified", h.certified);
    if let Some(g) = h.gldim {
        r.add("homology.gldim", g);
    }
    if let Some(l) = &h.gorenstein {
        r.add("homology.gorenstein", l);
    }
    if h.finite_heights {
        r.add("homology.caveat", "finite heights present; polynomial-type conclusions do not apply");
    }
    if let Some(f) = &h.fibonacci {
        let chain = format!("{} <= {} <= {} <= {}", f.letters, f.gldim, f.l, f.fib_bound);
        if checked {
            r.check("homology.fibonacci", f.holds, chain);
        } else {
            r.add("homology.fibonacci", format!("{chain} (unchecked)"));
        }
    }
}

fn hilbert_section(ctx: &Context, p: &PbwData, required: bool, r: &mut Report) {
    let lyndon = is_lyndon_ideal(&ctx.gb);
    if lyndon {
        r.add("hilbert.lyndon_ideal", true);
    } else if required {
        r.check("hilbert.lyndon_ideal", false, "ideal not Lyndon");
    } else {
        r.add("hilbert.lyndon_ideal", "false (not applicable; figures below are unchecked)");
    }
    let h = hilbert_series_unchecked(p);
    hilbert_lines(&h, r);
    let matched = h.mismatches().next().is_none();
    if lyndon {
        r.check("hilbert.match", matched, "");
    } else {
        r.add(
            "hilbert.match",
            format!("{} (ideal not Lyndon)", if matched { "agrees" } else { "mismatch" }),
        );
    }
    let gk = gk_report(p);
    r.add("gk.value", if gk.exact { format!("{} exact", gk.value) } else { format!(">= {}", gk.value) });
    let hom = homology_bounds_unchecked(p);
    if !lyndon {
        r.add("homology.flag", "ideal not Lyndon");
    }
    homology_lines(&hom, lyndon, r);
}

fn chains_section(ctx: &Context, r: &mut Report) -> Result<(), InputError> {
    let alphabet = &ctx.pres.alphabet;
    let v = ctx.gb.obstructions()?;
    let bound = ctx.gb.bound();
    r.add("chains.v", ctx.show_words(&v));
    match chain_properties_check(alphabet, &v, bound) {
        Ok(rep) => {
            r.add("chains.u", ctx.show_words(&rep.u));
            r.add("chains.u_exhausted", rep.exhausted);
            r.add("chains.A0", "1");
            let top = rep.chains.keys().max().copied().unwrap_or(0).max(2);
            for n in 1..=top + 1 {
                let set = ambiguities(alphabet, &v, n, bound)?;
                r.add(&format!("chains.A{n}"), ctx.show_words(&set.words));
            }
            r.check("chains.emptiness", rep.emptiness, "");
            r.check("chains.decreasing_products", rep.decreasing_products, "");
            match rep.consecutive_chains {
                Some(ok) => r.check("chains.consecutive", ok, ""),
                None => r.add("chains.consecutive", "skipped (U not exhausted within the bound)"),
            }
        }
        Err(e) => r.add("chains.status", format!("not applicable ({e})")),
    }
    Ok(())
}
