//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::classify::{self, ClassificationReport, SurfaceInvariants, DEFAULT_BOX};
use crate::cohomology::{build_table, parse_bundle, BundleFamily, CohomologyTable, VarietyEntry, Window};
use crate::instanton::{self, BettiShape, InstantonError};
use crate::monads;
use crate::rr;
use crate::Variety;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "instanton-lab", version, about = "Exact cohomology tables and instanton checks")]
pub struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "md")]
    pub json: bool,
    /// Emit markdown (the default).
    #[arg(long, global = true)]
    pub md: bool,
    /// Enumeration box for classification runs.
    #[arg(long = "box", global = true, env = "INSTANTON_LAB_BOX", default_value_t = DEFAULT_BOX)]
    pub search_box: i64,
    /// Twist window `a:b`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Worker threads for enumerations.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct BundleArgs {
    /// Catalog variety, e.g. p3, q5, flag3, p1xp1xp1, scroll-p1:1,1,2, fano:1,4.
    #[arg(long)]
    pub variety: String,
    /// Line bundle or sum, e.g. `O:2`, `h:-1`, `-1,3`, `O^2+O:1`.
    #[arg(long, allow_hyphen_values = true)]
    pub bundle: String,
    /// Override the polarization by coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub polarization: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology table of a bundle over a twist window.
    Cohom(BundleArgs),
    /// Instanton verdict for a bundle or a JSON table.
    Check {
        #[arg(long, required_unless_present = "table")]
        variety: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "variety")]
        bundle: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        polarization: Option<String>,
        /// Cohomology table in JSON, as written by `cohom --json`.
        #[arg(long, conflicts_with = "variety")]
        table: Option<PathBuf>,
    },
    /// Euler characteristics: table values against Riemann-Roch and the instanton polynomial.
    Chi(BundleArgs),
    /// Monad shapes.
    Monad {
        #[command(subcommand)]
        kind: MonadKind,
    },
    /// Brute-force classifications and decision procedures.
    Classify {
        #[command(subcommand)]
        kind: ClassifyKind,
    },
    /// Rank-two stability decisions on cyclic varieties.
    Stability {
        #[command(subcommand)]
        kind: StabilityKind,
    },
    /// Rank-two construction on a scroll.
    Scroll {
        /// Degrees of a scroll over P1.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "generic")]
        degrees: Option<String>,
        /// `n,g,deg` of a scroll over a curve of genus g.
        #[arg(long)]
        generic: Option<String>,
        #[arg(long)]
        k: u64,
    },
    /// Fano threefold correspondences and families.
    Fano {
        #[command(subcommand)]
        kind: FanoKind,
    },
    /// Regularity bounds and optional Betti-shape check.
    ResolutionCheck {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long, default_value_t = 0)]
        defect: u8,
        /// Betti shape in JSON: {"v", "w", "ambient", "beta": [{"p", "i", "value"}]}.
        #[arg(long)]
        betti: Option<PathBuf>,
    },
    /// Quantum number of the image of an instanton under a Veronese embedding.
    Veronese {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        rank: u64,
        #[arg(long)]
        d: i64,
        /// hⁿ of the source polarization.
        #[arg(long, default_value_t = 1)]
        hn: i64,
    },
    /// Numerical quantum numbers on curves and surfaces.
    Quantum {
        #[command(subcommand)]
        kind: QuantumKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum MonadKind {
    /// Monad on Pⁿ; χ(E) is derived from the rank unless given.
    Pn {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        defect: u8,
        #[arg(long)]
        rank: u64,
        #[arg(long)]
        quantum: u64,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<i64>,
        #[arg(long)]
        h0: Option<u64>,
        #[arg(long)]
        hn: Option<u64>,
    },
    /// Spinor monad of an ordinary instanton on a quadric.
    Quadric {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        rank: u64,
        #[arg(long)]
        quantum: u64,
    },
    /// Defect-one monad on Pⁿ.
    PnDefect1 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        rank: u64,
        #[arg(long)]
        quantum: u64,
        #[arg(long, default_value_t = 0)]
        a: i64,
        #[arg(long, default_value_t = 0)]
        c: i64,
    },
    /// Monad with aCM middle term.
    Acm {
        #[arg(long)]
        variety: String,
        #[arg(long, default_value_t = 0)]
        defect: u8,
        #[arg(long)]
        quantum: u64,
        #[arg(long)]
        h1: u64,
        #[arg(long)]
        hn1: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ClassifyKind {
    Flag {
        #[arg(long, default_value_t = 0)]
        defect: u8,
    },
    Segre {
        #[arg(long, default_value_t = 0)]
        defect: u8,
    },
    Cyclic {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        u: i64,
        #[arg(long, allow_hyphen_values = true)]
        v: i64,
        #[arg(long, default_value_t = 0)]
        defect: u8,
    },
}

#[derive(Debug, Subcommand)]
pub enum StabilityKind {
    /// Exception lists for (n, u, v, δ).
    Cyclic {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        u: i64,
        #[arg(long, allow_hyphen_values = true)]
        v: i64,
        #[arg(long, default_value_t = 0)]
        defect: u8,
    },
    /// Rank-two criterion from sections of the normalized bundle.
    Hoppe {
        #[arg(long, allow_hyphen_values = true)]
        epsilon: i64,
        #[arg(long)]
        h0_norm: u64,
        #[arg(long)]
        h0_norm_minus: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FanoKind {
    Bridge {
        #[arg(long)]
        index: u32,
        #[arg(long, default_value_t = 0)]
        defect: u8,
        #[arg(long, default_value_t = 0)]
        epsilon: u8,
    },
    Prime {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SurfaceKind {
    Mukai,
    Genus0,
}

#[derive(Debug, Subcommand)]
pub enum QuantumKind {
    Curve {
        #[arg(long)]
        rank: u64,
        #[arg(long)]
        degree: u64,
        #[arg(long, default_value_t = 0)]
        defect: u8,
    },
    /// Mukai: deg D, χ(O), h², K·h. Genus0: z, q(X), h¹(O(h)), N.
    Surface {
        #[arg(value_enum)]
        kind: SurfaceKind,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', num_args = 4)]
        invariants: Vec<i64>,
        #[arg(long, default_value_t = 0)]
        defect: u8,
    },
}

/// Rendered output and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    json: bool,
    search_box: i64,
    window: Option<Window>,
}

type Res = Result<Outcome, String>;

impl Ctx {
    fn out<T: Serialize>(&self, code: i32, value: &T, md: String) -> Res {
        let stdout = if self.json { serde_json::to_string_pretty(value).expect("serializable") } else { md };
        Ok(Outcome { code, stdout: stdout.trim_end().to_string() + "\n", stderr: String::new() })
    }
}

fn input_err(msg: impl ToString) -> String {
    msg.to_string()
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("window must look like a:b, got {s}"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad window start {a}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad window end {b}"))?;
    if a > b {
        return Err(format!("window {a}:{b} is empty"));
    }
    Ok(Window::new(a, b))
}

fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| format!("bad integer list {s}"))).collect()
}

fn table_for(ctx: &Ctx, b: &BundleArgs, default: fn(i64) -> Window) -> Result<(VarietyEntry, CohomologyTable), String> {
    let entry = VarietyEntry::parse(&b.variety).map_err(input_err)?;
    let summands = parse_bundle(&entry, &b.bundle).map_err(input_err)?;
    let mut family = BundleFamily::sum(summands);
    if let Some(p) = &b.polarization {
        family = family.with_polarization(&parse_ints(p)?);
    }
    let window = ctx.window.unwrap_or_else(|| default(entry.dim() as i64));
    let table = build_table(&entry, &family, window).map_err(input_err)?;
    Ok((entry, table))
}

fn check_window(n: i64) -> Window {
    Window::new(-n - 1, 1)
}

fn verdict_outcome(ctx: &Ctx, table: &CohomologyTable) -> Res {
    match instanton::check_instanton(table) {
        Ok(v) => {
            let code = if v.is_instanton() { EXIT_OK } else { EXIT_NEGATIVE };
            let md = format!("{}\n{}", table.to_markdown(), v.to_markdown());
            ctx.out(code, &json!({ "table": table, "verdict": v }), md)
        }
        Err(e @ InstantonError::Window(_)) => Err(e.to_string()),
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_cohom(ctx: &Ctx, b: &BundleArgs) -> Res {
    let (_, table) = table_for(ctx, b, |n| Window::new(-n - 1, 2))?;
    ctx.out(EXIT_OK, &table, table.to_markdown())
}

fn cmd_check(ctx: &Ctx, variety: &Option<String>, bundle: &Option<String>, pol: &Option<String>, file: &Option<PathBuf>) -> Res {
    let table = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            serde_json::from_str::<CohomologyTable>(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => {
            let b = BundleArgs {
                variety: variety.clone().unwrap_or_default(),
                bundle: bundle.clone().ok_or("--bundle is required with --variety")?,
                polarization: pol.clone(),
            };
            table_for(ctx, &b, check_window)?.1
        }
    };
    verdict_outcome(ctx, &table)
}

#[derive(Serialize)]
struct ChiRow {
    t: i64,
    table: BigInt,
    riemann_roch: Option<BigInt>,
    instanton_polynomial: Option<BigInt>,
}

fn cmd_chi(ctx: &Ctx, b: &BundleArgs) -> Res {
    let (entry, table) = table_for(ctx, b, |n| Window::new(-n - 1, 2))?;
    let n = entry.dim();
    let verdict = instanton::check_instanton(&table).ok();
    let admissible = verdict.as_ref().and_then(|v| v.admissible.first().copied());
    let chi0 = table.row(0).map(|r| r.chi());
    let pol_shift = |t: i64| {
        let h = crate::cohomology::LineBundle::new(&vec![0; entry.variety.picard_rank()]);
        entry.divisor(&h.plus(&polarization_of(&entry, b), t))
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for r in &table.rows {
        let rr_value = match &table.chern {
            Some(c) => rr::chi(&entry, &c.twist(&pol_shift(r.t))).ok(),
            None => None,
        };
        let poly = match (admissible, &chi0) {
            (Some(a), Some(c0)) => Some(instanton::chi_polynomial(n, a.defect, &BigInt::from(a.quantum), c0, r.t)),
            _ => None,
        };
        let value = r.h.chi();
        ok &= rr_value.as_ref().is_none_or(|x| *x == value) && poly.as_ref().is_none_or(|x| *x == value);
        rows.push(ChiRow { t: r.t, table: value, riemann_roch: rr_value, instanton_polynomial: poly });
    }
    let opt = |x: &Option<BigInt>| x.as_ref().map_or("-".to_string(), |v| v.to_string());
    let mut md = format!("**{}**, rank {}\n\n| t | table | Riemann-Roch | instanton polynomial |\n|---|---|---|---|\n", table.variety, table.rank);
    for r in &rows {
        md += &format!("| {} | {} | {} | {} |\n", r.t, r.table, opt(&r.riemann_roch), opt(&r.instanton_polynomial));
    }
    md += &format!("\nconsistent: {ok}\n");
    ctx.out(if ok { EXIT_OK } else { EXIT_NEGATIVE }, &json!({ "variety": table.variety, "rows": rows, "consistent": ok }), md)
}

fn polarization_of(entry: &VarietyEntry, b: &BundleArgs) -> Vec<i64> {
    b.polarization.as_deref().and_then(|p| parse_ints(p).ok()).unwrap_or_else(|| entry.polarization.clone())
}

fn cmd_monad(ctx: &Ctx, kind: &MonadKind) -> Res {
    let shape = match kind {
        MonadKind::Pn { n, defect, rank, quantum, chi, h0, hn } => {
            let chi0 = match chi {
                Some(c) => *c,
                None => chi_from_rank(*n, *defect, *rank, *quantum)?,
            };
            monads::monad_pn(*n, *defect, *quantum, chi0, *h0, *hn).map_err(input_err)?
        }
        MonadKind::Quadric { n, rank, quantum } => {
            let r = monads::monad_quadric_ordinary(*n, *rank, *quantum, None).map_err(input_err)?;
            let md = format!("s = {}\n\n{}", r.s, r.shape.to_markdown());
            return ctx.out(EXIT_OK, &r, md);
        }
        MonadKind::PnDefect1 { n, rank, quantum, a, c } => {
            monads::monad_space_nonordinary(*n, *rank, *quantum, *a, *c).map_err(input_err)?
        }
        MonadKind::Acm { variety, defect, quantum, h1, hn1 } => {
            let entry = VarietyEntry::parse(variety).map_err(input_err)?;
            monads::monad_acm(&entry, *defect, *quantum, *h1, *hn1).map_err(input_err)?
        }
    };
    ctx.out(EXIT_OK, &shape, shape.to_markdown())
}

/// χ(E) of an instanton of the given rank, from the push-forward rank formula.
pub fn chi_from_rank(n: u32, defect: u8, rank: u64, quantum: u64) -> Result<i64, String> {
    let q = BigInt::from(quantum);
    let r0 = instanton::rank_from_chi(n, defect, &q, &BigInt::from(0));
    let r1 = instanton::rank_from_chi(n, defect, &q, &BigInt::from(1));
    let x = (num_rational::BigRational::from_integer(BigInt::from(rank)) - &r0) / (r1 - &r0);
    if !x.is_integer() {
        return Err(format!("no integral χ(E) gives rank {rank} with q = {quantum}"));
    }
    i64::try_from(x.to_integer()).map_err(|e| e.to_string())
}

fn classification(ctx: &Ctx, r: ClassificationReport) -> Res {
    let code = if r.agreement == classify::Agreement::Mismatch { EXIT_NEGATIVE } else { EXIT_OK };
    ctx.out(code, &r, r.to_markdown())
}

fn cmd_classify(ctx: &Ctx, kind: &ClassifyKind) -> Res {
    match kind {
        ClassifyKind::Flag { defect } => {
            classification(ctx, classify::classify_flag_lines(ctx.search_box, *defect).map_err(input_err)?)
        }
        ClassifyKind::Segre { defect } => {
            classification(ctx, classify::classify_segre_lines(ctx.search_box, *defect).map_err(input_err)?)
        }
        ClassifyKind::Cyclic { n, u, v, defect } => {
            let d = classify::classify_cyclic_lines(*n, *u, *v, *defect);
            let md = match (d.assertion, d.witness_w) {
                (Some(a), Some(w)) => format!("assertion ({a}): L = O({w}H)\n\n{}", d.reason),
                _ => format!("none\n\n{}", d.reason),
            };
            ctx.out(if d.assertion.is_some() { EXIT_OK } else { EXIT_NEGATIVE }, &d, md)
        }
    }
}

fn cmd_stability(ctx: &Ctx, kind: &StabilityKind) -> Res {
    match kind {
        StabilityKind::Cyclic { n, u, v, defect } => {
            let r = classify::cyclic_rank2_stability_cases(*n, *u, *v, *defect).map_err(input_err)?;
            let md = format!(
                "- ε = {}, normalization twist {}\n- semistable guaranteed: {}\n- stable guaranteed: {}\n- exceptions: {}\n- status: {}\n",
                r.epsilon,
                r.t_norm,
                r.semistable_guaranteed,
                r.stable_guaranteed,
                if r.exceptions.is_empty() { "none".to_string() } else { r.exceptions.join(", ") },
                status_name(r.status)
            );
            let code = if r.stable_guaranteed { EXIT_OK } else { EXIT_NEGATIVE };
            ctx.out(code, &r, md)
        }
        StabilityKind::Hoppe { epsilon, h0_norm, h0_norm_minus } => {
            let v = classify::hoppe_rank2_eps(*epsilon, *h0_norm, *h0_norm_minus);
            let md = format!("- status: {}\n- rule: {}\n", status_name(v.status), v.rule);
            let code = if v.semistable == Some(true) { EXIT_OK } else { EXIT_NEGATIVE };
            ctx.out(code, &v, md)
        }
    }
}

fn status_name(s: classify::Stability) -> String {
    serde_json::to_value(s).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn cmd_scroll(ctx: &Ctx, degrees: &Option<String>, generic: &Option<String>, k: u64) -> Res {
    let variety = match (degrees, generic) {
        (Some(d), None) => Variety::ScrollP1 { degrees: parse_ints(d)? },
        (None, Some(g)) => match parse_ints(g)?.as_slice() {
            [n, g, d] if *n >= 0 && *g >= 0 => Variety::ScrollGeneric { n: *n as u32, genus: *g as u32, deg_g: *d },
            _ => return Err("--generic needs n,g,deg".into()),
        },
        _ => return Err("give --degrees or --generic".into()),
    };
    variety.validate().map_err(input_err)?;
    let r = classify::scroll_construction_report(&variety, k).map_err(input_err)?;
    let opt = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
    let mut md = format!(
        "## {} with k = {}\n\n- c2·h^(n-2) = {}\n- quantum = {} (certified: {})\n- decomposable: {}\n- h1(End) = {} for k >= 1, {} for non-split k = 0 extensions\n- 1 - χ(End): {}; split bundle: 2 - χ = {}\n\n| sheaf | i | h^i | engine |\n|---|---|---|---|\n",
        r.variety,
        r.k,
        r.c2_h,
        r.quantum,
        r.quantum_certified,
        r.decomposable,
        r.h1_end_ext,
        r.h1_end_ext0,
        opt(r.h1_end_hrr),
        opt(r.h1_end_ext0_hrr.map(|x| x + 1)),
    );
    for c in &r.chain {
        let e = match c.engine_agrees {
            Some(true) => "agrees",
            Some(false) => "DISAGREES",
            None => "-",
        };
        md += &format!("| {} | {} | {} | {} |\n", c.sheaf, c.i, c.value, e);
    }
    let ok = r.quantum_certified && r.chain.iter().all(|c| c.engine_agrees != Some(false));
    ctx.out(if ok { EXIT_OK } else { EXIT_NEGATIVE }, &r, md)
}

fn cmd_fano(ctx: &Ctx, kind: &FanoKind) -> Res {
    match kind {
        FanoKind::Bridge { index, defect, epsilon } => {
            let b = classify::fano_instanton_bridge(*index, *defect, *epsilon).map_err(input_err)?;
            let extra = |x: &Option<String>| x.as_ref().map_or(String::new(), |c| format!(", provided {c}"));
            let md = format!(
                "- q_X^ε = {}\n- normalization twist {}\n- instanton ⇒ classical: case {}{}\n- classical ⇒ instanton: case {}{}\n",
                b.q_x_eps,
                b.t_norm,
                b.instanton_to_classical,
                extra(&b.instanton_to_classical_extra),
                b.classical_to_instanton,
                extra(&b.classical_to_instanton_extra)
            );
            ctx.out(EXIT_OK, &b, md)
        }
        FanoKind::Prime { genus, k } => {
            let r = classify::prime_fano_family(*genus, *k).map_err(input_err)?;
            let md = format!(
                "- genus {}, k = {}\n- c2·h = {}\n- χ(E(-h)) = {}\n- h1(End) = {} (Riemann-Roch: {})\n",
                r.genus, r.k, r.c2_h, r.chi_e_minus_h, r.h1_end, r.h1_end_hrr
            );
            let ok = r.chi_e_minus_h == -(r.k as i64) && r.h1_end == r.h1_end_hrr;
            ctx.out(if ok { EXIT_OK } else { EXIT_NEGATIVE }, &r, md)
        }
    }
}

fn cmd_resolution(ctx: &Ctx, b: &BundleArgs, defect: u8, betti: &Option<PathBuf>) -> Res {
    let (entry, table) = table_for(ctx, b, |n| Window::new(-n - 1, n + 1))?;
    let rep = instanton::regularity_report(&table, defect).map_err(input_err)?;
    let cols = instanton::allowed_columns(&table, defect).ok();
    let mut ok = rep.violations.is_empty();
    let mut shape_ok = None;
    if let Some(path) = betti {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let shape: BettiShape = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let family = BundleFamily::sum(parse_bundle(&entry, &b.bundle).map_err(input_err)?);
        let oracle = |t: i64| -> BigInt {
            let w = Window::new(t, t);
            build_table(&entry, &family, w).map(|tb| tb.rows[0].h.chi()).unwrap_or_default()
        };
        let good = instanton::betti_shape_check(&shape, &oracle);
        ok &= good;
        shape_ok = Some(good);
    }
    let mut md = format!("- v: {:?}\n- w: {}\n- regularity at most: {}\n", rep.v, rep.w, rep.reg_upper.map_or("-".into(), |x| x.to_string()));
    if let Some((a, c)) = cols {
        md += &format!("- allowed columns: [{a}, {c}]\n");
    }
    for v in &rep.violations {
        md += &format!("- violation: {v}\n");
    }
    if !rep.unverified.is_empty() {
        md += &format!("- twists outside the window: {:?}\n", rep.unverified);
    }
    if let Some(g) = shape_ok {
        md += &format!("- Betti shape consistent: {g}\n");
    }
    ctx.out(
        if ok { EXIT_OK } else { EXIT_NEGATIVE },
        &json!({ "regularity": rep, "allowed_columns": cols, "betti_shape_ok": shape_ok }),
        md,
    )
}

fn cmd_veronese(ctx: &Ctx, n: u32, rank: u64, d: i64, hn: i64) -> Res {
    let q = instanton::veronese_quantum(n, rank, d, &BigInt::from(hn)).map_err(input_err)?;
    let s = if q.is_integer() { q.to_integer().to_string() } else { format!("{}/{}", q.numer(), q.denom()) };
    let code = if q.is_integer() { EXIT_OK } else { EXIT_NEGATIVE };
    ctx.out(code, &json!({ "n": n, "rank": rank, "d": d, "hn": hn, "quantum": s }), format!("quantum = {s}"))
}

fn cmd_quantum(ctx: &Ctx, kind: &QuantumKind) -> Res {
    let q = match kind {
        QuantumKind::Curve { rank, degree, defect } => {
            classify::curve_quantum(*rank, *degree, *defect).map_err(input_err)? as i64
        }
        QuantumKind::Surface { kind, invariants, defect } => {
            let [a, b, c, d] = invariants.as_slice() else {
                return Err("--invariants needs four integers".into());
            };
            let (a, b, c, d, defect) = (*a, *b, *c, *d, *defect);
            let inv = match kind {
                SurfaceKind::Mukai => SurfaceInvariants::Mukai { deg_d: a, chi_o: b, h2: c, kh: d, defect },
                SurfaceKind::Genus0 => SurfaceInvariants::Genus0 { z: a, defect, irregularity: b, h1_oh: c, n: d },
            };
            classify::surface_quantum(inv).map_err(input_err)?
        }
    };
    ctx.out(EXIT_OK, &json!({ "quantum": q }), format!("quantum = {q}"))
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Res {
    match cmd {
        Command::Cohom(b) => cmd_cohom(ctx, b),
        Command::Check { variety, bundle, polarization, table } => cmd_check(ctx, variety, bundle, polarization, table),
        Command::Chi(b) => cmd_chi(ctx, b),
        Command::Monad { kind } => cmd_monad(ctx, kind),
        Command::Classify { kind } => cmd_classify(ctx, kind),
        Command::Stability { kind } => cmd_stability(ctx, kind),
        Command::Scroll { degrees, generic, k } => cmd_scroll(ctx, degrees, generic, *k),
        Command::Fano { kind } => cmd_fano(ctx, kind),
        Command::ResolutionCheck { bundle, defect, betti } => cmd_resolution(ctx, bundle, *defect, betti),
        Command::Veronese { n, rank, d, hn } => cmd_veronese(ctx, *n, *rank, *d, *hn),
        Command::Quantum { kind } => cmd_quantum(ctx, kind),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let fail = |msg: String| Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") };
    if cli.search_box < 1 {
        return fail("--box must be >= 1".into());
    }
    let window = match cli.window.as_deref().map(parse_window).transpose() {
        Ok(w) => w,
        Err(e) => return fail(e),
    };
    #[cfg(feature = "parallel")]
    if let Some(j) = cli.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let ctx = Ctx { json: cli.json, search_box: cli.search_box, window };
    dispatch(&ctx, &cli.command).unwrap_or_else(fail)
}

/// Parses arguments and runs; clap usage errors map to exit code 2.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}
