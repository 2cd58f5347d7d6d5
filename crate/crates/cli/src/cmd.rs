use std::fs;
use std::io::{self, Read, Write};

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use p2q::aut::{self, AutError, Bounds, Level, VerifyReport};
use p2q::catalog::{self, CatalogError, GroupSpec, Mode, TABLE};
use p2q::group::{
    center, derived_subgroup, order_census, AssocCheck, CayleyJson, FiniteGroup, Group, GroupError,
};
use p2q::matrix_form::{decompose_aut, MatrixFormError};

use crate::{Cli, Command, LevelArg, SpecArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    MatrixForm(#[from] MatrixFormError),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<AutError> for CliError {
    fn from(e: AutError) -> Self {
        match e {
            AutError::ResourceBound { .. } => CliError::Resource(e.to_string()),
            AutError::Catalog(c) => CliError::Catalog(c),
            AutError::Group(g) => CliError::Group(g),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Resource(_) => 3,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn mode(cli: &Cli) -> Mode {
    if cli.strict_paper {
        Mode::StrictPaper
    } else {
        Mode::Complete
    }
}

fn assoc(cli: &Cli) -> AssocCheck {
    if cli.full_assoc_check {
        AssocCheck::Full
    } else {
        AssocCheck::Auto
    }
}

fn bounds(cli: &Cli) -> Bounds {
    Bounds::with_max_order(cli.max_order)
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(line: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    match writeln!(out, "{line}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

macro_rules! out {
    ($($t:tt)*) => {
        emit(&format!($($t)*))?
    };
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

/// Structure string of the predicted automorphism group.
fn aut_structure(spec: &GroupSpec) -> &'static str {
    if spec.is_extension() {
        "Hol(C_p x C_p)"
    } else {
        spec.row().map_or("?", |r| r.aut)
    }
}

fn resolve_spec(args: &SpecArgs, cli: &Cli) -> Result<GroupSpec> {
    let spec = if let Some(text) = &args.spec {
        serde_json::from_str::<GroupSpec>(text)?
    } else {
        match (args.ty, args.p, args.q) {
            (Some(ty), Some(p), Some(q)) => GroupSpec {
                ty,
                p,
                q,
                s: args.s,
            },
            _ => {
                return Err(CliError::Usage(
                    "a group needs --type, -p and -q (or --spec)".into(),
                ))
            }
        }
    };
    spec.validate(mode(cli))?;
    Ok(spec)
}

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Enumerate { p, q } => enumerate(cli, *p, *q),
        Command::Build { spec } => build(cli, spec),
        Command::Classify { file } => classify(cli, file.as_deref()),
        Command::Aut { spec, decompose } => aut_cmd(cli, spec, *decompose),
        Command::Verify {
            spec,
            all,
            level,
            timing,
        } => verify(cli, spec, *all, *level, *timing),
        Command::Table { p, q } => table(cli, *p, *q),
    }
}

#[derive(Serialize)]
struct Listing {
    #[serde(flatten)]
    spec: GroupSpec,
    order: u64,
    aut: &'static str,
    aut_order: u64,
}

fn enumerate(cli: &Cli, p: u64, q: u64) -> Result<u8> {
    let specs = catalog::enumerate(p, q, mode(cli))?;
    let rows: Vec<Listing> = specs
        .iter()
        .map(|s| Listing {
            spec: *s,
            order: s.order(),
            aut: aut_structure(s),
            aut_order: aut::predicted_order(s),
        })
        .collect();
    if cli.json {
        print_json(&rows)?;
    } else {
        out!(
            "{:<5} {:>4} {:>4} {:>4} {:>7}  {:<34} {:>10}",
            "type",
            "p",
            "q",
            "s",
            "order",
            "Aut(G)",
            "|Aut(G)|"
        );
        for r in &rows {
            let s = r.spec.s.map_or("-".to_string(), |s| s.to_string());
            out!(
                "{:<5} {:>4} {:>4} {:>4} {:>7}  {:<34} {:>10}",
                r.spec.ty,
                r.spec.p,
                r.spec.q,
                s,
                r.order,
                r.aut,
                r.aut_order
            );
        }
    }
    Ok(0)
}

fn build(cli: &Cli, args: &SpecArgs) -> Result<u8> {
    let spec = resolve_spec(args, cli)?;
    let g = catalog::build_with(&spec, assoc(cli))?;
    if cli.json {
        print_json(&g.to_json())?;
    } else {
        out!("{spec}");
        out!("order          {}", g.order());
        out!("center         {}", center(&g).len());
        out!("derived        {}", derived_subgroup(&g).len());
        let census: Vec<String> = order_census(&g)
            .iter()
            .map(|(o, n)| format!("{o}:{n}"))
            .collect();
        out!("element orders {}", census.join(" "));
    }
    Ok(0)
}

fn classify(cli: &Cli, file: Option<&str>) -> Result<u8> {
    let text = match file {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
        Some(path) => fs::read_to_string(path)?,
    };
    let table: CayleyJson = serde_json::from_str(&text)?;
    let g = FiniteGroup::from_json(&table)?;
    if cli.full_assoc_check {
        FiniteGroup::from_fn(g.order(), g.identity(), AssocCheck::Full, |a, b| {
            g.mul(a, b)
        })?;
    }
    let spec = catalog::classify(&g)?;
    if spec.is_extension() {
        eprintln!("note: the q = 2 scalar class is not a row of the classification table");
    }
    if cli.json {
        print_json(&spec)?;
    } else {
        out!("{spec}");
    }
    Ok(0)
}

fn aut_cmd(cli: &Cli, args: &SpecArgs, decompose: bool) -> Result<u8> {
    let spec = resolve_spec(args, cli)?;
    let g = catalog::build_with(&spec, assoc(cli))?;
    if decompose {
        let ctx = catalog::semidirect_context(&spec)?;
        let brute = aut::brute_aut_with(ctx.group(), &bounds(cli))?;
        let mut triples = Vec::with_capacity(brute.order());
        for i in 0..brute.order() {
            triples.push(decompose_aut(&ctx, &brute.morphism(i))?);
        }
        triples.sort_by(|x, y| (&x.a, &x.d, &x.b).cmp(&(&y.a, &y.d, &y.b)));
        if cli.json {
            print_json(&json!({ "spec": spec, "triples": triples }))?;
        } else {
            let trivial_d = triples
                .iter()
                .filter(|t| {
                    t.d.images()
                        .iter()
                        .enumerate()
                        .all(|(i, &x)| x as usize == i)
                })
                .count();
            out!("{spec}");
            out!("automorphisms  {}", triples.len());
            out!("with d = 1     {trivial_d}");
        }
        return Ok(0);
    }
    let n = aut::count_aut(&g, &bounds(cli))?;
    let predicted = aut::predicted_order(&spec);
    if cli.json {
        print_json(&json!({
            "spec": spec,
            "brute_order": n,
            "predicted": aut_structure(&spec),
            "predicted_order": predicted,
        }))?;
    } else {
        out!("{spec}");
        out!("|Aut(G)|       {n}");
        out!(
            "predicted      {} of order {predicted}",
            aut_structure(&spec)
        );
    }
    Ok(0)
}

fn level_of(l: LevelArg) -> Level {
    match l {
        LevelArg::Order => Level::Order,
        LevelArg::Isomorphism => Level::Isomorphism,
    }
}

fn print_report_line(r: &VerifyReport) -> Result<()> {
    let status = if r.pass { "PASS" } else { "FAIL" };
    let ext = if r.extension {
        " (q = 2 extension)"
    } else {
        ""
    };
    let level = match r.level {
        Level::Order => "order",
        Level::Isomorphism => "isomorphism",
    };
    let millis = r.millis.map_or(String::new(), |m| format!(" {m} ms"));
    out!(
        "{:<28} {:<12} brute {:>9} predicted {:>9}  {status}{ext}{millis}",
        r.spec.to_string(),
        level,
        r.brute_order,
        r.predicted_order
    );
    Ok(())
}

fn verify(cli: &Cli, args: &SpecArgs, all: bool, level: LevelArg, timing: bool) -> Result<u8> {
    let level = level_of(level);
    let b = bounds(cli);
    let finish = |mut r: VerifyReport| {
        if !timing {
            r.millis = None;
        }
        r
    };
    if !all {
        let spec = resolve_spec(args, cli)?;
        if spec.order() as usize > cli.max_order {
            return Err(CliError::Resource(format!(
                "group order {} exceeds --max-order {}",
                spec.order(),
                cli.max_order
            )));
        }
        let r = finish(aut::verify_table_row_with(&spec, level, &b)?);
        if cli.json {
            print_json(&r)?;
        } else {
            print_report_line(&r)?;
        }
        return Ok(if r.pass { 0 } else { 1 });
    }
    let mut reports = Vec::new();
    let mut mismatch = false;
    let mut resource = None;
    for spec in catalog::specs_up_to(cli.max_order as u64, mode(cli)) {
        eprintln!("verifying {spec}");
        match aut::verify_table_row_with(&spec, level, &b) {
            Ok(r) => {
                let r = finish(r);
                if !r.pass && !r.extension {
                    mismatch = true;
                }
                if !cli.json {
                    print_report_line(&r)?;
                }
                reports.push(r);
            }
            Err(e @ AutError::ResourceBound { .. }) => {
                eprintln!("skipped {spec}: {e}");
                if !spec.is_extension() && resource.is_none() {
                    resource = Some(e.to_string());
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    if cli.json {
        print_json(&reports)?;
    }
    if mismatch {
        return Ok(1);
    }
    if let Some(msg) = resource {
        return Err(CliError::Resource(msg));
    }
    Ok(0)
}

#[derive(Serialize)]
struct TableRow {
    #[serde(rename = "type")]
    ty: u8,
    condition: &'static str,
    group: &'static str,
    aut: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    aut_order: Option<u64>,
}

fn table(cli: &Cli, p: Option<u64>, q: Option<u64>) -> Result<u8> {
    let rows: Vec<TableRow> = match (p, q) {
        (Some(p), Some(q)) => {
            let specs = catalog::enumerate(p, q, Mode::StrictPaper)?;
            let mut types: Vec<u8> = specs.iter().map(|s| s.ty).collect();
            types.dedup();
            types
                .into_iter()
                .map(|ty| {
                    let spec = specs.iter().find(|s| s.ty == ty).expect("listed");
                    let row = &TABLE[ty as usize - 1];
                    TableRow {
                        ty,
                        condition: row.condition,
                        group: row.group,
                        aut: row.aut,
                        aut_order: Some(aut::predicted_order(spec)),
                    }
                })
                .collect()
        }
        (None, None) => TABLE
            .iter()
            .map(|r| TableRow {
                ty: r.ty,
                condition: r.condition,
                group: r.group,
                aut: r.aut,
                aut_order: None,
            })
            .collect(),
        _ => return Err(CliError::Usage("give both -p and -q, or neither".into())),
    };
    if cli.json {
        print_json(&rows)?;
    } else {
        let with_orders = p.is_some();
        let line = |ty: &str, c: &str, g: &str, a: &str, o: &str| {
            let s = format!("{ty:<5} {c:<12} {g:<24} {a:<36}");
            if with_orders {
                format!("{s} {o:>10}")
            } else {
                s.trim_end().to_string()
            }
        };
        out!("{}", line("type", "conditions", "G", "Aut(G)", "|Aut(G)|"));
        for r in &rows {
            let ord = r.aut_order.map_or(String::new(), |o| o.to_string());
            out!(
                "{}",
                line(&r.ty.to_string(), r.condition, r.group, r.aut, &ord)
            );
        }
    }
    Ok(0)
}
