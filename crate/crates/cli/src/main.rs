use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use hurwitz_core::hurwitz::{self, cayley_embed, cayley_structure_check, galois_components, GroupTable, Stratum};
use hurwitz_core::npsemi::{self, LatticePoint};
use hurwitz_core::oracle::{self, GaloisFilter, OracleError, ProductConstraint, SearchLimits};
use hurwitz_core::sigma3::{count_components_deg3, sigma3_normal_form, Deg3Galois, Space};
use hurwitz_core::transpo::{self, TranspoError};
use hurwitz_core::verify::{self, VerifyError, VerifyOptions, CHECK_NAMES};
use hurwitz_core::word::DEFAULT_ORDER_CAP;
use hurwitz_core::{CycleType, Permutation, SubgroupTag, TypeVector, Word};

const MAX_STATES_ENV: &str = "HURWITZ_MAX_STATES";

#[derive(Parser)]
#[command(name = "hurwitz", version, about = "Hurwitz orbits, normal forms and component counts for factorizations in symmetric groups")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// State budget for orbit searches (overrides HURWITZ_MAX_STATES).
    #[arg(long, global = true)]
    max_states: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the Hurwitz orbit of a word.
    Orbit {
        #[arg(long)]
        word: String,
        /// Also list every word of the orbit.
        #[arg(long)]
        list: bool,
    },
    /// Decide Hurwitz equivalence of two words.
    Equiv { first: String, second: String },
    /// Normal form of a word, chosen by its shape unless --kind is given.
    NormalForm {
        #[arg(long)]
        word: String,
        /// identity | split | stable | sigma3
        #[arg(long)]
        kind: Option<String>,
    },
    /// Count components of a stratum.
    Components(ComponentsArgs),
    /// Cayley embedding of a finite group and its structure check.
    Cayley {
        /// JSON file {order, identity, table}.
        #[arg(long, conflicts_with = "group")]
        table: Option<PathBuf>,
        /// Built-in group: cN, z2xz2, s3.
        #[arg(long)]
        group: Option<String>,
        /// Also count Galois components of this length.
        #[arg(long)]
        length: Option<usize>,
    },
    /// Non-perforated subsemigroups given by JSON point lists.
    Npsemi {
        #[command(subcommand)]
        op: NpOp,
    },
    /// Run named verification checks (all when none are given).
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ComponentsArgs {
    #[arg(long)]
    degree: usize,
    #[arg(long)]
    length: usize,
    /// Type vector, e.g. "[3]x6" or "[2]x4 [3]x2".
    #[arg(long)]
    letters: Option<String>,
    /// Allowed letter types, e.g. "[2] [3]".
    #[arg(long)]
    letter_types: Option<String>,
    /// Permutation literal, `identity`, or a cycle type such as `[3]`.
    #[arg(long)]
    product: Option<String>,
    /// trivial | s2 | a3 | s3 | alternating | full_symmetric | other | order:N
    #[arg(long)]
    galois: Option<String>,
    /// disc | line
    #[arg(long, default_value = "disc")]
    space: String,
    #[arg(long)]
    transitive: bool,
    /// Count marked components (no conjugation fusion).
    #[arg(long)]
    marked: bool,
    /// Degree 3 only: count from the classification and cross-check with the oracle.
    #[arg(long)]
    closed_form: bool,
}

#[derive(Subcommand)]
enum NpOp {
    /// Origins of the semigroup generated by the points.
    Origins { points: String },
    /// Membership of a point.
    Member { points: String, point: String },
    Intersect { first: String, second: String },
    Union { first: String, second: String },
}

#[derive(Args)]
struct VerifyArgs {
    names: Vec<String>,
    #[arg(long = "d")]
    degree: Option<usize>,
    #[arg(long)]
    max_genus: Option<usize>,
    #[arg(long)]
    max_length: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

enum Failure {
    Error(String),
    Inconclusive(String),
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Inconclusive { .. } => Failure::Inconclusive(e.to_string()),
            other => Failure::Error(other.to_string()),
        }
    }
}

impl From<hurwitz::HurwitzError> for Failure {
    fn from(e: hurwitz::HurwitzError) -> Self {
        match e {
            hurwitz::HurwitzError::Oracle(o) => o.into(),
            other => Failure::Error(other.to_string()),
        }
    }
}

impl From<hurwitz_core::sigma3::Sigma3Error> for Failure {
    fn from(e: hurwitz_core::sigma3::Sigma3Error) -> Self {
        match e {
            hurwitz_core::sigma3::Sigma3Error::Oracle(o) => o.into(),
            other => Failure::Error(other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Inconclusive(m) => Failure::Inconclusive(m),
            other => Failure::Error(other.to_string()),
        }
    }
}

fn err<E: std::fmt::Display>(context: &str) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::Error(format!("{context}: {e}"))
}

/// Text for humans plus the JSON payload; `ok = false` maps to exit status 1.
struct Output {
    text: String,
    payload: Value,
    ok: bool,
}

fn limits(cli: &Cli) -> Result<SearchLimits, Failure> {
    if let Some(n) = cli.max_states {
        return Ok(SearchLimits::new(n));
    }
    match std::env::var(MAX_STATES_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(SearchLimits::new)
            .map_err(|e| Failure::Error(format!("{MAX_STATES_ENV}={v:?}: {e}"))),
        Err(_) => Ok(SearchLimits::default()),
    }
}

fn parse_word(text: &str, what: &str) -> Result<Word, Failure> {
    Word::parse(text).map_err(|e| Failure::Error(format!("{what}: {e}\n  {text}\n  {}", caret(&e.to_string()))))
}

/// A caret under the reported column, when the message carries one.
fn caret(message: &str) -> String {
    let col = message
        .split("column ")
        .nth(1)
        .and_then(|rest| rest.split(|c: char| !c.is_ascii_digit()).next())
        .and_then(|n| n.parse::<usize>().ok());
    match col {
        Some(c) if c >= 1 => format!("{}^", " ".repeat(c - 1)),
        _ => String::new(),
    }
}

fn perm_text(p: &Permutation) -> String {
    p.to_string()
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let lim = limits(cli)?;
    match &cli.command {
        Command::Orbit { word, list } => {
            let w = parse_word(word, "--word")?;
            let r = oracle::hurwitz_orbit(&w, lim)?;
            if !r.exhausted {
                return Err(Failure::Inconclusive(format!("orbit exceeds {} states", lim.max_states)));
            }
            let mut payload = json!({ "canonical": r.canonical, "size": r.size, "states_explored": r.states_explored });
            let mut text = format!("size {}\ncanonical {}", r.size, r.canonical);
            if *list {
                let words = oracle::orbit_words(&w, lim)?;
                for v in &words {
                    text.push_str(&format!("\n  {v}"));
                }
                payload["words"] = json!(words);
            }
            Ok(Output { text, payload, ok: true })
        }
        Command::Equiv { first, second } => {
            let a = parse_word(first, "first word")?;
            let b = parse_word(second, "second word")?;
            let eq = oracle::hurwitz_equivalent(&a, &b, lim)?;
            Ok(Output { text: eq.to_string(), payload: json!({ "equivalent": eq }), ok: true })
        }
        Command::NormalForm { word, kind } => normal_form(&parse_word(word, "--word")?, kind.as_deref()),
        Command::Components(args) => components(args, lim),
        Command::Cayley { table, group, length } => cayley(table.as_ref(), group.as_deref(), *length, lim),
        Command::Npsemi { op } => npsemi_cmd(op),
        Command::Verify(args) => verify_cmd(args, lim),
    }
}

fn normal_form(w: &Word, kind: Option<&str>) -> Result<Output, Failure> {
    let all_transpositions = w.letters().iter().all(Permutation::is_transposition);
    let kind = match kind {
        Some(k) => k.to_string(),
        None => {
            let d = w.degree();
            let k = w.letters().iter().filter(|p| p.is_transposition()).count();
            let full = w.generated_subgroup(DEFAULT_ORDER_CAP).map(|s| s.tag == SubgroupTag::FullSymmetric).unwrap_or(false);
            if all_transpositions && w.product().is_identity() {
                "identity".into()
            } else if d == 3 {
                "sigma3".into()
            } else if full && k >= 3 * (d - 1) {
                "stable".into()
            } else if all_transpositions {
                "split".into()
            } else {
                return Err(Failure::Error(
                    "no normal form applies: need identity-product transpositions, degree 3, transpositions only, or at least 3(d-1) transpositions with full monodromy".into(),
                ));
            }
        }
    };
    let terr = |e: TranspoError| Failure::Error(e.to_string());
    match kind.as_str() {
        "identity" => {
            let nf = transpo::reduce_identity_transpositions(w).map_err(terr)?;
            let word = nf.to_word();
            let comps: Vec<Value> = nf.components.iter().map(|(m, k)| json!({ "points": m, "multiplicity": k })).collect();
            Ok(Output {
                text: format!("identity transposition normal form\n{nf}\nword {word}"),
                payload: json!({ "kind": "identity", "components": comps, "word": word }),
                ok: true,
            })
        }
        "split" => {
            let (tilde, bar) = transpo::split_tilde_bar(w).map_err(terr)?;
            Ok(Output {
                text: format!("tilde {tilde}\nbar {bar}"),
                payload: json!({ "kind": "split", "tilde": tilde, "bar": bar }),
                ok: true,
            })
        }
        "stable" => {
            let f = transpo::stable_canonical_form(w).map_err(terr)?;
            let rec = f.reconstruct();
            let parts: Vec<String> = f.cycle_parts.iter().map(perm_text).collect();
            Ok(Output {
                text: format!("cycle parts [{}]\nresidual {}\ngenus {}\nword {rec}", parts.join(", "), f.residual, f.genus),
                payload: json!({ "kind": "stable", "cycle_parts": parts, "residual": perm_text(&f.residual), "genus": f.genus, "word": rec }),
                ok: true,
            })
        }
        "sigma3" => {
            let nf = sigma3_normal_form(w)?;
            Ok(Output {
                text: format!(
                    "{}{}\nexact {}\nconjugator {}\nrepresentative {}",
                    nf.family,
                    if nf.family.is_listed() { "" } else { " (supplementary family)" },
                    nf.exact,
                    nf.conjugator,
                    nf.representative
                ),
                payload: json!({
                    "kind": "sigma3",
                    "family": nf.family.to_string(),
                    "listed": nf.family.is_listed(),
                    "exact": nf.exact,
                    "conjugator": perm_text(&nf.conjugator),
                    "representative": nf.representative,
                }),
                ok: true,
            })
        }
        other => Err(Failure::Error(format!("unknown --kind {other:?} (identity|split|stable|sigma3)"))),
    }
}

enum ProductArg {
    Identity,
    Exact(Permutation),
    Type(CycleType),
}

fn parse_product(text: &str, d: usize) -> Result<ProductArg, Failure> {
    let t = text.trim();
    if t == "identity" || t == "1" || t == "()" {
        return Ok(ProductArg::Identity);
    }
    if t.starts_with('[') {
        let ct = CycleType::parse(t).map_err(err("--product"))?;
        return Ok(if ct.is_identity() { ProductArg::Identity } else { ProductArg::Type(ct) });
    }
    let p = Permutation::parse(t, d).map_err(|e| Failure::Error(format!("--product: {e}\n  {t}\n  {}", caret(&e.to_string()))))?;
    Ok(if p.is_identity() { ProductArg::Identity } else { ProductArg::Exact(p) })
}

fn parse_galois(text: &str) -> Result<GaloisFilter, Failure> {
    let t = text.trim();
    if let Some(n) = t.strip_prefix("order:") {
        return n.parse().map(GaloisFilter::Order).map_err(err("--galois"));
    }
    if let Ok(g) = t.parse::<Deg3Galois>() {
        return Ok(g.filter());
    }
    t.parse::<SubgroupTag>().map(GaloisFilter::Tag).map_err(err("--galois"))
}

fn components(a: &ComponentsArgs, lim: SearchLimits) -> Result<Output, Failure> {
    let space: Space = a.space.parse().map_err(|e: String| Failure::Error(e))?;
    let product = a.product.as_deref().map(|p| parse_product(p, a.degree)).transpose()?;
    if a.closed_form {
        if a.degree != 3 {
            return Err(Failure::Error("--closed-form requires --degree 3".into()));
        }
        let galois: Deg3Galois = a
            .galois
            .as_deref()
            .ok_or_else(|| Failure::Error("--closed-form requires --galois (trivial|s2|a3|s3)".into()))?
            .parse()
            .map_err(|e: String| Failure::Error(e))?;
        let global = match &product {
            None | Some(ProductArg::Identity) => None,
            Some(ProductArg::Type(t)) => Some(t.clone()),
            Some(ProductArg::Exact(p)) => Some(p.cycle_type()),
        };
        let c = count_components_deg3(a.length, global.as_ref(), galois, space, Some(lim))?;
        let mut text = format!("{}", c.count);
        if let Some(f) = c.formula {
            text.push_str(&format!("\nclosed form {f}"));
        }
        text.push_str(&format!("\nclassification {}", c.classification));
        if c.discrepancy {
            text.push_str("\ndiscrepancy: oracle and closed form disagree");
        }
        return Ok(Output { text, payload: serde_json::to_value(&c).expect("serializable"), ok: true });
    }

    let mut s = Stratum::new(a.degree, a.length);
    if let Some(tv) = &a.letters {
        let tv = TypeVector::parse(tv).map_err(err("--letters"))?;
        if tv.total() != a.length {
            return Err(Failure::Error(format!("--letters has {} letters but --length is {}", tv.total(), a.length)));
        }
        s.types = Some(tv);
    }
    if let Some(lt) = &a.letter_types {
        let types = lt
            .split(|c: char| c.is_whitespace() || c == ';')
            .filter(|x| !x.is_empty())
            .map(CycleType::parse)
            .collect::<Result<Vec<_>, _>>()
            .map_err(err("--letter-types"))?;
        s.letter_types = Some(types);
    }
    s.product = product.map(|p| match p {
        ProductArg::Identity => ProductConstraint::Exact(Permutation::identity(a.degree)),
        ProductArg::Exact(p) => ProductConstraint::Exact(p),
        ProductArg::Type(t) => ProductConstraint::OfType(t),
    });
    s.galois = a.galois.as_deref().map(parse_galois).transpose()?;
    s.transitive = a.transitive.then_some(true);
    s.space = space;
    s.marked = a.marked;
    let r = hurwitz::count_components(&s, lim)?;
    let mut text = format!("{}", r.count);
    for w in &r.representatives {
        text.push_str(&format!("\n  {w}"));
    }
    Ok(Output { text, payload: serde_json::to_value(&r).expect("serializable"), ok: true })
}

fn builtin_group(name: &str) -> Result<GroupTable, Failure> {
    let n = name.to_ascii_lowercase();
    match n.as_str() {
        "z2xz2" | "klein" | "v4" => Ok(GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2))),
        "s3" => Ok(GroupTable::symmetric(3)),
        _ => {
            let k = n.strip_prefix('c').or_else(|| n.strip_prefix('z'));
            match k.and_then(|k| k.parse::<usize>().ok()) {
                Some(k) if (1..=8).contains(&k) => Ok(GroupTable::cyclic(k)),
                _ => Err(Failure::Error(format!("unknown group {name:?} (cN or zN with N <= 8, z2xz2, s3)"))),
            }
        }
    }
}

fn cayley(table: Option<&PathBuf>, group: Option<&str>, length: Option<usize>, lim: SearchLimits) -> Result<Output, Failure> {
    let g = match (table, group) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<GroupTable>(&text).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?
        }
        (None, Some(name)) => builtin_group(name)?,
        (None, None) => return Err(Failure::Error("give --table FILE or --group NAME".into())),
    };
    let image: Vec<String> = cayley_embed(&g).iter().map(perm_text).collect();
    let r = cayley_structure_check(&g)?;
    let mut text = format!(
        "order {}\nimage [{}]\ncentralizer {}\ncenter {}\nautomorphisms {} (realized {})\n<G, C(G)> {} (expected {})\nnormalizer {} (expected {})\n{}",
        r.group_order,
        image.join(", "),
        r.centralizer_order,
        r.center_order,
        r.aut_order,
        r.automorphisms_realized,
        r.amalgam_order,
        r.expected_amalgam_order,
        r.normalizer_order,
        r.expected_normalizer_order,
        if r.pass { "PASS" } else { "FAIL" }
    );
    let mut payload = json!({ "image": image, "structure": r });
    if let Some(b) = length {
        let c = galois_components(&g, b, lim)?;
        text.push_str(&format!("\ngalois components (length {b}) {}", c.count));
        for w in &c.representatives {
            text.push_str(&format!("\n  {w}"));
        }
        payload["galois_components"] = serde_json::to_value(&c).expect("serializable");
    }
    Ok(Output { text, payload, ok: r.pass })
}

fn parse_points(text: &str, what: &str) -> Result<Vec<LatticePoint>, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Error(format!("{what}: expected a JSON list of points such as [[1,0],[0,2]]: {e}")))
}

fn origin_set(text: &str, what: &str) -> Result<npsemi::OriginSet, Failure> {
    npsemi::origins(&parse_points(text, what)?).map_err(err(what))
}

fn show_set(o: &npsemi::OriginSet) -> Output {
    let pts = o.origins();
    Output { text: serde_json::to_string(&pts).expect("serializable"), payload: json!({ "origins": pts }), ok: true }
}

fn npsemi_cmd(op: &NpOp) -> Result<Output, Failure> {
    match op {
        NpOp::Origins { points } => Ok(show_set(&origin_set(points, "points")?)),
        NpOp::Member { points, point } => {
            let o = origin_set(points, "points")?;
            let p: LatticePoint = serde_json::from_str(point).map_err(err("point"))?;
            let m = o.member(&p).map_err(err("point"))?;
            Ok(Output { text: m.to_string(), payload: json!({ "member": m }), ok: true })
        }
        NpOp::Intersect { first, second } => {
            let r = origin_set(first, "first")?.intersect(&origin_set(second, "second")?).map_err(err("intersect"))?;
            Ok(show_set(&r))
        }
        NpOp::Union { first, second } => {
            let r = origin_set(first, "first")?.union(&origin_set(second, "second")?).map_err(err("union"))?;
            Ok(show_set(&r))
        }
    }
}

#[derive(Serialize)]
struct VerifySummary {
    pass: bool,
    checks: Vec<verify::CheckReport>,
}

fn verify_cmd(a: &VerifyArgs, lim: SearchLimits) -> Result<Output, Failure> {
    let names: Vec<String> = if a.names.is_empty() { CHECK_NAMES.iter().map(|s| s.to_string()).collect() } else { a.names.clone() };
    let opts = VerifyOptions { degree: a.degree, max_genus: a.max_genus, max_length: a.max_length, trials: a.trials, seed: a.seed, limits: lim };
    let mut checks = Vec::new();
    let mut text = Vec::new();
    for n in &names {
        let r = verify::run_check(n, &opts)?;
        for l in &r.lines {
            text.push(format!("    {l}"));
        }
        text.push(format!("{} {}", if r.pass { "PASS" } else { "FAIL" }, r.name));
        checks.push(r);
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(Output { text: text.join("\n"), payload: serde_json::to_value(VerifySummary { pass, checks }).expect("serializable"), ok: pass })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    let (status, code, payload, text) = match result {
        Ok(o) => (if o.ok { "ok" } else { "error" }, if o.ok { 0 } else { 1 }, o.payload, o.text),
        Err(Failure::Error(m)) => ("error", 1, json!({ "message": m }), format!("error: {m}")),
        Err(Failure::Inconclusive(m)) => ("inconclusive", 2, json!({ "message": m }), format!("inconclusive: {m}")),
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&json!({ "status": status, "result": payload })).expect("serializable"));
    } else if code == 0 {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    ExitCode::from(code)
}
