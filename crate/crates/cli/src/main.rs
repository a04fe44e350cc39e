//! `kncrystal`: crystal combinatorics for types B and C on
//! Kashiwara-Nakashima tableaux.
//!
//! Tableaux travel as JSON: `{"type":"B"|"C","n":N,"spin":[..],"columns":[[..],..]}`
//! with barred letters negative, columns left to right, cells top to bottom.
//! Skew tableaux add an `"inner"` partition. Exit codes: 0 success, 1 user
//! error, 2 internal invariant breach.

use clap::{Args, Parser, Subcommand};
use kn_crystal::error::Error;
use kn_crystal::graph::{explore_with_budget, extremal_set, to_dot, CrystalVertex, DEFAULT_BUDGET};
use kn_crystal::keys::{ell_bound, keys};
use kn_crystal::sjdt::{evac_b, evac_c, rect_b, rect_c, SkewColumn, SkewTableau};
use kn_crystal::tableau::{
    highest_weight_tableau, split_tableau, tableau_from_json, tableau_to_json, tableau_to_text,
    unsplit, KNTableau, SpinColumn, SpinShape,
};
use kn_crystal::verify::{axioms_negative_control, conjecture_scan, run_suite, SuiteReport};
use kn_crystal::virt::bc_virtualization;
use kn_crystal::{CartanType, Family};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "kncrystal",
    about = "Crystal combinatorics for types B and C on Kashiwara-Nakashima tableaux",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// Lie family of the crystal.
    #[arg(long = "type", value_parser = ["B", "C"])]
    family: Option<String>,
    /// Rank n.
    #[arg(long)]
    n: Option<usize>,
    /// Shape as a JSON spin-partition: `[3,1]` or `{"spin":true,"rows":[1]}`.
    #[arg(long)]
    shape: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Right and left keys of a tableau by dilation at the tight bound.
    Keys {
        /// Tableau JSON, inline or a file path ("-" for stdin).
        input: String,
        #[command(flatten)]
        ty: TypeArgs,
        /// Vertex budget for crystal exploration.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Evacuation (the Lusztig-Schuetzenberger involution on tableaux).
    Evac {
        input: String,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Column splitting (type B -> type C; type C columns double).
    Split {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Inverse of splitting; the spin part of the target is inferred from
    /// parity unless --shape is given.
    Unsplit {
        input: String,
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Rectify a skew tableau by (symplectic) jeu de taquin.
    Rect {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Virtualize a type B tableau into type C via splitting.
    Virtualize {
        input: String,
        /// Cross-check the splitting against the operator-lifted
        /// virtualization of the whole crystal.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Explore the crystal of a shape; print a summary or DOT.
    Graph {
        #[command(flatten)]
        ty: TypeArgs,
        /// Emit DOT on standard output.
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Run a named verification suite.
    Verify {
        /// One of: axioms, keys, schutzenberger, virtualization, sjdt, all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Run the axioms checker on a deliberately corrupted fixture
        /// (negative control; reports exactly one (C1) failure).
        #[arg(long)]
        corrupt: bool,
        #[arg(long)]
        json: bool,
    },
    /// EXPERIMENTAL: scan dilation multiplicities for the divisibility
    /// pattern suggested by the examples.
    ConjectureScan {
        #[command(flatten)]
        ty: TypeArgs,
        /// Largest multiplicity to scan.
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    // Exit codes: 0 success, 1 user error, 2 internal invariant breach.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::Internal(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn read_input(input: &str) -> Result<serde_json::Value, Error> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("stdin: {}", e)))?;
        buf
    } else if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| Error::Parse(format!("cannot read {}: {}", input, e)))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn read_tableau(input: &str) -> Result<KNTableau, Error> {
    tableau_from_json(&read_input(input)?)
}

/// Accept a skew tableau (with "inner") or a straight one.
fn read_skew(input: &str) -> Result<SkewTableau, Error> {
    let v = read_input(input)?;
    let inner: Vec<usize> = match v.get("inner") {
        Some(arr) => serde_json::from_value(arr.clone())?,
        None => Vec::new(),
    };
    let mut plain = v.clone();
    if let Some(obj) = plain.as_object_mut() {
        obj.remove("inner");
    }
    let family = match v.get("type").and_then(|t| t.as_str()) {
        Some("B") => Family::B,
        Some("C") => Family::C,
        _ => return Err(Error::Parse("missing or unknown \"type\"".into())),
    };
    let n = v
        .get("n")
        .and_then(|n| n.as_u64())
        .ok_or_else(|| Error::Parse("missing rank \"n\"".into()))? as usize;
    let t = CartanType::new(family, n)?;
    let spin = match v.get("spin") {
        Some(arr) => Some(SpinColumn::new(serde_json::from_value(arr.clone())?)),
        None => None,
    };
    let columns: Vec<Vec<i32>> = serde_json::from_value(
        v.get("columns")
            .cloned()
            .ok_or_else(|| Error::Parse("missing \"columns\"".into()))?,
    )?;
    // Column j sits below inner'_j = #{r : inner_r >= j} inner cells.
    let cols: Vec<SkewColumn> = columns
        .into_iter()
        .enumerate()
        .map(|(k, cells)| {
            let depth = inner.iter().filter(|&&r| r > k).count();
            SkewColumn {
                top: depth + 1,
                cells,
            }
        })
        .collect();
    let skew = SkewTableau::new(t, spin, cols);
    skew.validate().map_err(Error::Invalid)?;
    Ok(skew)
}

fn parse_shape(t: CartanType, raw: &str) -> Result<SpinShape, Error> {
    let v: serde_json::Value = serde_json::from_str(raw)?;
    let shape = if v.is_array() {
        SpinShape::new(false, serde_json::from_value(v)?)
    } else {
        let spin = v.get("spin").and_then(|s| s.as_bool()).unwrap_or(false);
        let rows: Vec<usize> = match v.get("rows") {
            Some(r) => serde_json::from_value(r.clone())?,
            None => Vec::new(),
        };
        SpinShape::new(spin, rows)
    };
    shape.validate(t).map_err(Error::Invalid)?;
    Ok(shape)
}

fn resolve_type(ty: &TypeArgs) -> Result<CartanType, Error> {
    let family = match ty.family.as_deref() {
        Some("B") => Family::B,
        Some("C") => Family::C,
        Some(other) => return Err(Error::Parse(format!("unknown type {:?}", other))),
        None => return Err(Error::Parse("--type is required here".into())),
    };
    let n = ty
        .n
        .ok_or_else(|| Error::Parse("--n is required here".into()))?;
    CartanType::new(family, n)
}

fn check_type_override(t: &KNTableau, ty: &TypeArgs) -> Result<(), Error> {
    if let Some(f) = ty.family.as_deref() {
        if f != t.ctype.family.to_string() {
            return Err(Error::Parse(format!(
                "--type {} contradicts the input's type {}",
                f, t.ctype.family
            )));
        }
    }
    if let Some(n) = ty.n {
        if n != t.ctype.rank {
            return Err(Error::Parse(format!(
                "--n {} contradicts the input's rank {}",
                n, t.ctype.rank
            )));
        }
    }
    Ok(())
}

fn emit_tableau(t: &KNTableau, json: bool) {
    if json {
        println!("{}", tableau_to_json(t));
    } else {
        println!("{}", tableau_to_text(t));
    }
}

fn print_reports(reports: &[SuiteReport], json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(reports).expect("serializable"));
        return;
    }
    for rep in reports {
        println!(
            "suite {}: {} checks, {} failures",
            rep.suite,
            rep.total_checked(),
            rep.total_failures()
        );
        for case in &rep.cases {
            println!(
                "  {:<45} {:>8} checks  {:>3} failures",
                case.name,
                case.checked,
                case.failures.len()
            );
            for f in &case.failures {
                println!("    FAIL {}", f);
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Keys { input, ty, budget } => {
            let t = read_tableau(&input)?;
            check_type_override(&t, &ty)?;
            let shape = t.shape();
            let hw = highest_weight_tableau(t.ctype, &shape)?;
            let g = explore_with_budget(&CrystalVertex::Tableau(hw), budget)?;
            let v = g
                .index_of(&CrystalVertex::Tableau(t.clone()))
                .ok_or_else(|| {
                    Error::Internal("valid tableau missing from its crystal".into())
                })?;
            let kp = keys(&g, v)?;
            let out = serde_json::json!({
                "input": tableau_to_json(&t),
                "ell": ell_bound(&g),
                "right": tableau_to_json(kp.right.as_tableau().unwrap()),
                "right_word": kp.right_word,
                "right_perm": kp.right_elt.signed_perm(),
                "left": tableau_to_json(kp.left.as_tableau().unwrap()),
                "left_word": kp.left_word,
                "left_perm": kp.left_elt.signed_perm(),
            });
            println!("{}", out);
            Ok(())
        }
        Command::Evac { input, json } => {
            let t = read_tableau(&input)?;
            let e = match t.ctype.family {
                Family::B => evac_b(&t)?,
                Family::C => evac_c(&t)?,
            };
            emit_tableau(&e, json);
            Ok(())
        }
        Command::Split { input, json } => {
            let t = read_tableau(&input)?;
            emit_tableau(&split_tableau(&t)?, json);
            Ok(())
        }
        Command::Unsplit { input, ty, json } => {
            let t = read_tableau(&input)?;
            let spin_target = match ty.shape.as_deref() {
                Some(raw) => parse_shape(CartanType::b(t.ctype.rank), raw)?.spin,
                None => t
                    .shape()
                    .rows
                    .first()
                    .is_some_and(|&r| r % 2 == 1),
            };
            emit_tableau(&unsplit(&t, spin_target)?, json);
            Ok(())
        }
        Command::Rect { input, json } => {
            let skew = read_skew(&input)?;
            let r = match skew.ctype.family {
                Family::B => rect_b(&skew)?,
                Family::C => rect_c(&skew)?,
            };
            emit_tableau(&r, json);
            Ok(())
        }
        Command::Virtualize {
            input,
            check,
            json,
            budget,
        } => {
            let t = read_tableau(&input)?;
            let s = split_tableau(&t)?;
            if check {
                let lambda = t.shape().weight(t.ctype);
                let vm = bc_virtualization(t.ctype.rank, &lambda)?;
                let v = vm
                    .source
                    .index_of(&CrystalVertex::Tableau(t.clone()))
                    .ok_or_else(|| {
                        Error::Internal("tableau missing from its crystal".into())
                    })?;
                let lifted = vm.target.vertex(vm.assignment[v]);
                if lifted.as_tableau() != Some(&s) {
                    return Err(Error::Internal(
                        "operator-lifted image disagrees with the splitting".into(),
                    ));
                }
                let _ = budget;
                eprintln!("operator-lift cross-check: ok");
            }
            emit_tableau(&s, json);
            Ok(())
        }
        Command::Graph { ty, dot, budget } => {
            let t = resolve_type(&ty)?;
            let shape = match ty.shape.as_deref() {
                Some(raw) => parse_shape(t, raw)?,
                None => SpinShape::new(false, vec![]),
            };
            let hw = highest_weight_tableau(t, &shape)?;
            let g = explore_with_budget(&CrystalVertex::Tableau(hw), budget)?;
            if dot {
                print!("{}", to_dot(&g));
            } else {
                let ext = extremal_set(&g);
                let out = serde_json::json!({
                    "type": t.family.to_string(),
                    "n": t.rank,
                    "vertices": g.len(),
                    "extremal": ext.len(),
                    "ell": ell_bound(&g),
                    "highest_weight": format!("{}", g.highest_weight()),
                });
                println!("{}", out);
            }
            Ok(())
        }
        Command::Verify {
            suite,
            corrupt,
            json,
        } => {
            let reports = if corrupt {
                if suite != "axioms" && suite != "all" {
                    return Err(Error::Parse(
                        "--corrupt applies to the axioms suite".into(),
                    ));
                }
                vec![axioms_negative_control()]
            } else {
                run_suite(&suite)?
            };
            print_reports(&reports, json);
            Ok(())
        }
        Command::ConjectureScan { ty, m, json } => {
            let t = resolve_type(&ty)?;
            let shape = match ty.shape.as_deref() {
                Some(raw) => parse_shape(t, raw)?,
                None => {
                    // Default: the weight of the fundamental box.
                    SpinShape::new(false, vec![1])
                }
            };
            let (lcm, rows) = conjecture_scan(t, shape.spin, &shape.rows, m)?;
            eprintln!(
                "EXPERIMENTAL: dilation divisibility scan (not an asserted invariant)"
            );
            if json {
                let out = serde_json::json!({ "lcm": lcm, "rows": rows });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("lcm of extremal-string lengths: {}", lcm);
                println!("{:>4} {:>14} {:>14}", "m", "all_extremal", "lcm | m");
                for r in rows {
                    println!(
                        "{:>4} {:>14} {:>14}",
                        r.m, r.all_extremal, r.lcm_divides_m
                    );
                }
            }
            Ok(())
        }
    }
}
