use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use framelink::checks::{self, Status};
use framelink::document::to_pd_text;
use framelink::families::{self, FamilySpec};
use framelink::invariants::{bracket_with_budget, jones_with_budget, DEFAULT_BUDGET};
use framelink::surgery::{self, snf};
use framelink::{BandSpec, Body, Document, FramedLink, LaurentPoly, LinkBody, NamedLink, Slope};

#[derive(Parser)]
#[command(name = "framelink", version, about = "Surgery calculus on framed links")]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of bracket state expansions
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// PD text or JSON document; standard input if omitted or `-`
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    T,
    A,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pd,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate the input
    Validate(Input),
    /// Jones polynomial of each link
    Jones {
        #[command(flatten)]
        input: Input,
        /// Render in t (half-integer powers) or in the bracket variable A
        #[arg(long, value_enum, default_value = "t")]
        form: Form,
    },
    /// Kauffman bracket of each link diagram, in A
    Bracket(Input),
    /// Linking matrix of each link
    Lk(Input),
    /// Slide component i over component j
    Slide {
        #[command(flatten)]
        input: Input,
        /// Component to slide (1-based)
        #[arg(long)]
        i: usize,
        /// Component slid over (1-based)
        #[arg(long)]
        j: usize,
        /// Slope of component j; overrides the document
        #[arg(long)]
        slope: Option<Slope>,
        /// +1 to slide over K_j, -1 over its reverse
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps: i64,
        /// JSON band specification from component i to the slope curve
        #[arg(long)]
        band: Option<PathBuf>,
        /// Print the diagram with the slope curve added, for writing a band
        #[arg(long, conflicts_with = "doc")]
        show_curve: bool,
        /// Print the resulting document instead of a report
        #[arg(long)]
        doc: bool,
        /// Link to act on when the document has several
        #[arg(long)]
        link: Option<String>,
    },
    /// First homology of the surgered manifold
    H1(Input),
    /// Smith normal form of a JSON integer matrix, or of each link's H1 presentation
    Snf(Input),
    /// Generate a named family member
    Gen {
        /// unknot, unlink, hopf, trefoil, whitehead, borromean, chain3, pa
        family: String,
        /// Component count, sign (+/-) or twist parameter
        #[arg(allow_negative_numbers = true)]
        param: Option<String>,
        /// Emit PD text instead of a JSON document
        #[arg(long)]
        pd: bool,
    },
    /// Run the verification battery
    VerifyPaper {
        /// Run a single criterion
        #[arg(long)]
        only: Option<u8>,
    },
    /// Re-serialize the input as a JSON document or PD text
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        to: Format,
    },
    /// Remove curls and bigons
    Simplify {
        #[command(flatten)]
        input: Input,
        /// Emit PD text instead of a JSON document
        #[arg(long)]
        pd: bool,
    },
}

enum Failure {
    Invalid(String),
    Limit(String),
    Mismatch,
}

impl From<framelink::Error> for Failure {
    fn from(e: framelink::Error) -> Self {
        if e.is_resource_limit() {
            Failure::Limit(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

macro_rules! core_err {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                framelink::Error::from(e).into()
            }
        }
    )*};
}
core_err!(
    framelink::ParseError,
    framelink::DiagramError,
    framelink::BracketError,
    framelink::SurgeryError,
    framelink::FamilyError
);

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn read_input(input: &Input) -> Result<String, Failure> {
    match &input.file {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn load(input: &Input) -> Result<Document, Failure> {
    Ok(Document::parse_any(&read_input(input)?)?)
}

fn render_poly(v: &LaurentPoly, form: Form) -> String {
    match form {
        Form::T => v.render_t().unwrap_or_else(|_| v.render_a()),
        Form::A => v.render_a(),
    }
}

/// Prints one value per link, prefixed by the name when there are several.
fn print_per_link(doc: &Document, values: &[String]) {
    for (l, v) in doc.links.iter().zip(values) {
        if doc.links.len() == 1 {
            println!("{v}");
        } else {
            println!("{}: {v}", l.name);
        }
    }
}

fn need_diagram(l: &NamedLink) -> Result<&framelink::Diagram, Failure> {
    match &l.body {
        LinkBody::Diagram(d) => Ok(d),
        LinkBody::Abstract(_) => Err(Failure::Invalid(format!("link {:?} has no diagram", l.name))),
    }
}

fn matrix_rows(m: &[Vec<i64>]) -> Vec<String> {
    m.iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect()
}

fn big_json(m: &snf::Matrix) -> Value {
    Value::Array(
        m.iter()
            .map(|r| {
                Value::Array(r.iter().map(|x| x.to_string().parse().map(Value::Number).unwrap_or(Value::String(x.to_string()))).collect())
            })
            .collect(),
    )
}

fn big_rows(m: &snf::Matrix) -> String {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn run(cli: Cli) -> Result<(), Failure> {
    let budget = cli.budget;
    match cli.command {
        Command::Validate(input) => {
            let doc = load(&input)?;
            let mut out = Vec::new();
            for l in &doc.links {
                let crossings = match &l.body {
                    LinkBody::Diagram(d) => Some(d.crossing_count()),
                    LinkBody::Abstract(_) => None,
                };
                out.push(json!({"name": l.name, "components": l.component_count(), "crossings": crossings}));
                if !cli.json {
                    let c = crossings.map_or("abstract".to_string(), |c| format!("{c} crossings"));
                    println!("{}: ok, {} components, {c}", l.name, l.component_count());
                }
            }
            if cli.json {
                println!("{}", json!({"valid": true, "links": out}));
            }
        }
        Command::Jones { input, form } => {
            let doc = load(&input)?;
            let mut values = Vec::new();
            for l in &doc.links {
                values.push(jones_with_budget(need_diagram(l)?, budget)?);
            }
            if cli.json {
                let links: Vec<Value> = doc
                    .links
                    .iter()
                    .zip(&values)
                    .map(|(l, v)| json!({"name": l.name, "t": v.render_t().ok(), "a": v.render_a()}))
                    .collect();
                println!("{}", json!({ "links": links }));
            } else {
                print_per_link(&doc, &values.iter().map(|v| render_poly(v, form)).collect::<Vec<_>>());
            }
        }
        Command::Bracket(input) => {
            let doc = load(&input)?;
            let mut results = Vec::new();
            for l in &doc.links {
                results.push(bracket_with_budget(need_diagram(l)?, budget)?);
            }
            if cli.json {
                let links: Vec<Value> = doc
                    .links
                    .iter()
                    .zip(&results)
                    .map(|(l, r)| {
                        json!({"name": l.name, "a": r.value.render_a(), "states_visited": r.states_visited, "cache_hits": r.cache_hits})
                    })
                    .collect();
                println!("{}", json!({ "links": links }));
            } else {
                print_per_link(&doc, &results.iter().map(|r| r.value.render_a()).collect::<Vec<_>>());
            }
        }
        Command::Lk(input) => {
            let doc = load(&input)?;
            if cli.json {
                let links: Vec<Value> =
                    doc.links.iter().map(|l| json!({"name": l.name, "lk": l.linking_matrix()})).collect();
                println!("{}", json!({ "links": links }));
            } else {
                for l in &doc.links {
                    if doc.links.len() > 1 {
                        println!("{}:", l.name);
                    }
                    for row in matrix_rows(&l.linking_matrix()) {
                        println!("{row}");
                    }
                }
            }
        }
        Command::Slide { input, i, j, slope, eps, band, show_curve, doc: emit_doc, link } => {
            let doc = load(&input)?;
            let entry = match &link {
                Some(name) => doc
                    .links
                    .iter()
                    .find(|l| &l.name == name)
                    .ok_or_else(|| Failure::Invalid(format!("no link named {name:?}")))?,
                None if doc.links.len() == 1 => &doc.links[0],
                None => return Err(Failure::Invalid("document has several links; pick one with --link".into())),
            };
            let n = entry.component_count();
            for c in [i, j] {
                if c == 0 || c > n {
                    return Err(Failure::Invalid(format!("component {c} out of range 1..={n}")));
                }
            }
            let (i, j) = (i - 1, j - 1);
            let mut fl = entry.framed()?;
            if let Some(s) = slope {
                let mut slopes = fl.slopes().to_vec();
                slopes[j] = s;
                fl = FramedLink::new(fl.body().clone(), slopes)?;
            }
            if show_curve {
                let Body::Diagram(d) = fl.body() else {
                    return Err(Failure::Invalid("--show-curve needs a diagram".into()));
                };
                println!("{}", to_pd_text(&surgery::slope_curve_diagram(d, j, fl.slopes()[j], eps)?));
                return Ok(());
            }
            let band: Option<BandSpec> = match band {
                Some(p) => {
                    let text = fs::read_to_string(&p).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))?;
                    Some(serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("band: {e}")))?)
                }
                None => None,
            };
            let (slid, rec) = surgery::slide_with_band(&fl, i, j, eps, band.as_ref())?;
            if emit_doc {
                let mut out = doc.clone();
                let k = out.links.iter().position(|l| l.name == entry.name).unwrap();
                out.links[k] = NamedLink::from_framed(entry.name.clone(), &slid);
                println!("{}", out.to_json());
            } else if cli.json {
                println!(
                    "{}",
                    json!({
                        "i": i + 1, "j": j + 1, "eps": eps, "x": rec.x,
                        "slope": slid.slopes()[i].to_string(),
                        "slopes": slid.slopes().iter().map(Slope::to_string).collect::<Vec<_>>(),
                        "lk": slid.linking_matrix(),
                    })
                );
            } else {
                println!("x = {}", rec.x);
                println!("new slope of K{}: {}", i + 1, slid.slopes()[i]);
                println!("slopes: {}", slid.slopes().iter().map(Slope::to_string).collect::<Vec<_>>().join(" "));
                println!("linking matrix:");
                for row in matrix_rows(&slid.linking_matrix()) {
                    println!("{row}");
                }
            }
        }
        Command::H1(input) => {
            let doc = load(&input)?;
            let mut rows = Vec::new();
            for l in &doc.links {
                let d = surgery::h1_divisors(&l.framed()?);
                rows.push((l.name.clone(), surgery::h1_description(&d), d));
            }
            if cli.json {
                let links: Vec<Value> = rows
                    .iter()
                    .map(|(n, desc, d)| json!({"name": n, "h1": desc, "divisors": d.iter().map(|x| x.to_string()).collect::<Vec<_>>()}))
                    .collect();
                println!("{}", json!({ "links": links }));
            } else {
                print_per_link(&doc, &rows.iter().map(|r| r.1.clone()).collect::<Vec<_>>());
            }
        }
        Command::Snf(input) => {
            let text = read_input(&input)?;
            let mut mats: Vec<(String, Vec<Vec<i64>>)> = Vec::new();
            if text.trim_start().starts_with('[') {
                let m: Vec<Vec<i64>> = serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("matrix: {e}")))?;
                if m.iter().any(|r| r.len() != m[0].len()) {
                    return Err(Failure::Invalid("matrix rows differ in length".into()));
                }
                mats.push(("matrix".into(), m));
            } else {
                let doc = Document::parse_any(&text)?;
                for l in &doc.links {
                    mats.push((l.name.clone(), surgery::h1_presentation(&l.framed()?)));
                }
            }
            let many = mats.len() > 1;
            let mut out = Vec::new();
            for (name, m) in &mats {
                let s = snf::smith_normal_form(&snf::from_i64(m));
                if cli.json {
                    out.push(json!({"name": name, "d": big_json(&s.d), "u": big_json(&s.u), "v": big_json(&s.v)}));
                } else {
                    if many {
                        println!("{name}:");
                    }
                    println!("D =\n{}\nU =\n{}\nV =\n{}", big_rows(&s.d), big_rows(&s.u), big_rows(&s.v));
                }
            }
            if cli.json {
                println!("{}", Value::Array(out));
            }
        }
        Command::Gen { family, param, pd } => {
            let spec = FamilySpec::parse(&family, param.as_deref())?;
            let g = families::generate(spec)?;
            if pd {
                println!("{}", to_pd_text(&g.diagram));
            } else {
                let mut doc = Document::single(spec.to_string(), g.diagram);
                doc.metadata = match g.twist_crossing {
                    Some(x) => format!("{spec}; orientation: {}; twist crossing {x}", g.orientation),
                    None => format!("{spec}; orientation: {}", g.orientation),
                };
                println!("{}", doc.to_json());
            }
        }
        Command::VerifyPaper { only } => {
            let results = match only {
                Some(id) if checks::REPORTED_CRITERIA.contains(&id) => vec![checks::run(id).unwrap()],
                Some(id) => return Err(Failure::Invalid(format!("no criterion {id}; choose 1..=8"))),
                None => checks::run_reported_checks(),
            };
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&results).expect("serializable"));
            } else {
                for r in &results {
                    println!("{}", r.line());
                }
            }
            if results.iter().any(|r| r.status == Status::Fail) {
                return Err(Failure::Mismatch);
            }
            if let Some(r) = results.iter().find(|r| r.status == Status::ResourceLimit) {
                return Err(Failure::Limit(r.detail.clone()));
            }
        }
        Command::Convert { input, to } => {
            let doc = load(&input)?;
            match to {
                Format::Json => println!("{}", doc.to_json()),
                Format::Pd => {
                    for l in &doc.links {
                        println!("{}", to_pd_text(need_diagram(l)?));
                    }
                }
            }
        }
        Command::Simplify { input, pd } => {
            let mut doc = load(&input)?;
            for l in &mut doc.links {
                if let LinkBody::Diagram(d) = &l.body {
                    let (s, map) = d.simplify_tracked();
                    l.slopes = l.slopes.take().map(|old| map.iter().map(|&k| old[k]).collect());
                    l.body = LinkBody::Diagram(s);
                }
            }
            if pd {
                for l in &doc.links {
                    println!("{}", to_pd_text(need_diagram(l)?));
                }
            } else {
                println!("{}", doc.to_json());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Limit(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch) => ExitCode::from(3),
    }
}
