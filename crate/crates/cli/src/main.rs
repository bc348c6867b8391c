//! `conlat`: congruence lattices, realizations and FD-maximality from the shell.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use conlat::compat::{build_family, check_xyz, verify_compatible, XyzCheck};
use conlat::congruence::{
    brute_force_congruences, classify, congruence_lattice, monolith, relation_closure_congruences,
    ConLattice,
};
use conlat::diagram::{check_admissible, check_star, limit, realize_chain, realize_vshape, Realization};
use conlat::io;
use conlat::poset::DoubleStarCheck;
use conlat::variety::{decide_fdmax_for, enumerate_si_many, show_relation, SIInventory, Verdict};
use conlat::{Error, FinDistLattice, FiniteAlgebra, Guards, Poset, Result};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "conlat", version, about = "Congruence lattices of finite algebras")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Largest universe allowed for limits and products.
    #[arg(long, global = true)]
    guard_size: Option<usize>,

    /// Largest number of congruences collected per algebra.
    #[arg(long, global = true)]
    max_congruences: Option<usize>,

    /// Algebra file whose name and labels replace those of isomorphic
    /// inventory members (repeatable).
    #[arg(long, global = true)]
    alias: Vec<PathBuf>,

    /// Do not adopt names from algebra files next to the inputs.
    #[arg(long, global = true)]
    no_auto_alias: bool,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Congruence lattice of an algebra.
    Con { algebra: PathBuf },
    /// Simple, subdirectly irreducible, or neither.
    Classify { algebra: PathBuf },
    /// Subdirectly irreducible members of the generated variety.
    Si {
        #[arg(required = true)]
        algebras: Vec<PathBuf>,
    },
    /// Congruence FD-maximality of the generated variety.
    Fdmax {
        #[arg(required = true)]
        algebras: Vec<PathBuf>,
    },
    /// Builds an algebra whose congruence lattice has the given poset of
    /// meet-irreducibles (or the given distributive lattice).
    Realize {
        generator: PathBuf,
        poset: PathBuf,
        /// Where to write the realized algebra.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the diagram.
        #[arg(long)]
        diagram: Option<PathBuf>,
    },
    /// Checks Con(algebra) against the lattice determined by the poset.
    Verify { algebra: PathBuf, poset: PathBuf },
    /// The xyz check for a relation, or compatibility of a family with it.
    CompatCheck {
        relation: PathBuf,
        /// Family file to check instead.
        #[arg(long)]
        family: Option<PathBuf>,
        /// Skip the kernel condition.
        #[arg(long)]
        weak: bool,
    },
    /// Builds a strongly compatible family of `k` functions.
    CompatBuild {
        relation: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Limit of a diagram with its admissibility and (*) checks.
    Limit {
        diagram: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Report {
    text: String,
    json: Value,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let out = match cli.format {
                Format::Text => report.text.trim_end().to_string(),
                Format::Json => io::to_canonical_string(&report.json).trim_end().to_string(),
            };
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("conlat: {e}");
            ExitCode::from(if e.is_guard() { 2 } else { 1 })
        }
    }
}

fn guards(cli: &Cli) -> Guards {
    let mut g = Guards::default();
    if let Some(n) = cli.guard_size {
        g.limit_size = n;
    }
    if let Some(n) = cli.max_congruences {
        g.congruences = n;
    }
    g
}

fn run(cli: &Cli) -> Result<Report> {
    let g = guards(cli);
    match &cli.verb {
        Verb::Con { algebra } => con(&io::read_algebra(algebra)?, &g),
        Verb::Classify { algebra } => classify_report(&io::read_algebra(algebra)?, &g),
        Verb::Si { algebras } => {
            let inv = inventory(cli, algebras, &g)?;
            Ok(Report {
                text: inventory_text(&inv),
                json: io::si_to_json(&inv),
            })
        }
        Verb::Fdmax { algebras } => {
            let verdict = decide_fdmax_for(inventory(cli, algebras, &g)?, &g)?;
            Ok(Report {
                text: verdict_text(&verdict),
                json: io::verdict_to_json(&verdict),
            })
        }
        Verb::Realize { generator, poset, output, diagram } => {
            let gen = io::read_algebra(generator)?;
            let p = io::poset_or_lattice_from_json(&io::read_json(poset)?)?;
            let inv = inventory(cli, std::slice::from_ref(generator), &g)?;
            let r = realize(&gen, inv, &p, &g)?;
            if let Some(path) = output {
                io::write_algebra(path, r.algebra())?;
            }
            if let Some(path) = diagram {
                io::write_json(path, &io::diagram_to_json(&r.diagram))?;
            }
            let a = r.algebra();
            let mut text = format!(
                "realized {} with {} elements over {} points\nadmissible: true\n(*): true\n",
                a.name,
                a.len(),
                p.len()
            );
            if let Some(path) = output {
                text.push_str(&format!("written to {}\n", path.display()));
            }
            Ok(Report {
                text,
                json: json!({"size": a.len(), "points": p.len(), "algebra": io::algebra_to_json(a)}),
            })
        }
        Verb::Verify { algebra, poset } => {
            verify(&io::read_algebra(algebra)?, &io::poset_or_lattice_from_json(&io::read_json(poset)?)?, &g)
        }
        Verb::CompatCheck { relation, family, weak } => {
            let e = io::read_relation(relation)?;
            match family {
                None => Ok(xyz_report(&e)),
                Some(path) => {
                    let f = io::family_from_json(&io::read_json(path)?, e.base())?;
                    let outcome = verify_compatible(&f, &e, !weak);
                    let kind = if *weak { "compatible" } else { "strongly compatible" };
                    let text = match &outcome {
                        Ok(()) => format!("{kind}: true\n"),
                        Err(v) => format!("{kind}: false\nviolation: {v}\n"),
                    };
                    Ok(Report {
                        text,
                        json: json!({
                            "strong": !weak,
                            "compatible": outcome.is_ok(),
                            "violation": outcome.err().map(|v| v.to_string()),
                        }),
                    })
                }
            }
        }
        Verb::CompatBuild { relation, k, output } => {
            let e = io::read_relation(relation)?;
            let f = build_family(&e, *k)?;
            let v = io::family_to_json(&f);
            if let Some(path) = output {
                io::write_json(path, &v)?;
            }
            Ok(Report {
                text: format!(
                    "family of {} functions on a domain of {} elements\n{}",
                    f.len(),
                    f.domain_len(),
                    output.as_ref().map_or(String::new(), |p| format!("written to {}\n", p.display()))
                ),
                json: v,
            })
        }
        Verb::Limit { diagram, output } => {
            let d = io::read_diagram(diagram)?;
            let lim = limit(&d, &g)?;
            let adm = check_admissible(&d, &lim);
            let star = check_star(&d, &g)?;
            if let Some(path) = output {
                io::write_algebra(path, &lim.algebra)?;
            }
            let failures: Vec<String> = [adm.describe_failure(&d), star.describe_failure(&d)]
                .into_iter()
                .flatten()
                .collect();
            let mut text = format!(
                "limit has {} elements\nadmissible: {}\n(*): {}\n",
                lim.algebra.len(),
                adm.holds(),
                star.holds()
            );
            for f in &failures {
                text.push_str(&format!("{f}\n"));
            }
            Ok(Report {
                text,
                json: json!({
                    "size": lim.algebra.len(),
                    "admissible": adm.holds(),
                    "star": star.holds(),
                    "failures": failures,
                    "algebra": io::algebra_to_json(&lim.algebra),
                }),
            })
        }
    }
}

fn con(alg: &FiniteAlgebra, g: &Guards) -> Result<Report> {
    let c = congruence_lattice(alg, g)?;
    let mut text = format!("{} congruences of {}; shape {}\n", c.len(), alg.name, c.lattice.shape_tag());
    for (i, theta) in c.congruences.iter().enumerate() {
        text.push_str(&format!("  [{i}] {}\n", theta.display_with(&alg.elements)));
    }
    text.push_str("covers:\n");
    for (lo, hi) in c.cover_labels(alg) {
        text.push_str(&format!("  {lo} < {hi}\n"));
    }
    Ok(Report {
        text,
        json: io::con_to_json(alg, &c),
    })
}

fn classify_report(alg: &FiniteAlgebra, g: &Guards) -> Result<Report> {
    let class = classify(alg, g)?;
    let mu = monolith(alg, g)?.map(|m| m.display_with(&alg.elements));
    let mut text = format!("{}: {class}\n", alg.name);
    if let Some(m) = &mu {
        text.push_str(&format!("monolith: {m}\n"));
    }
    Ok(Report {
        text,
        json: json!({"algebra": alg.name, "class": class.to_string(), "monolith": mu}),
    })
}

/// Aliases from `--alias` plus, unless disabled, every algebra file beside the inputs.
fn aliases(cli: &Cli, inputs: &[PathBuf]) -> Result<Vec<FiniteAlgebra>> {
    let mut out = Vec::new();
    for path in &cli.alias {
        out.push(io::read_algebra(path)?);
    }
    if cli.no_auto_alias {
        return Ok(out);
    }
    let mut dirs: Vec<&Path> = inputs.iter().map(|p| p.parent().unwrap_or(Path::new("."))).collect();
    dirs.dedup();
    for dir in dirs {
        let dir = if dir.as_os_str().is_empty() { Path::new(".") } else { dir };
        let Ok(entries) = std::fs::read_dir(dir) else { continue };
        let mut files: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json") && !inputs.contains(p))
            .collect();
        files.sort();
        // files that are not algebras are simply skipped
        out.extend(files.iter().filter_map(|p| io::read_algebra(p).ok()));
    }
    Ok(out)
}

fn inventory(cli: &Cli, inputs: &[PathBuf], g: &Guards) -> Result<SIInventory> {
    let gens: Vec<FiniteAlgebra> = inputs.iter().map(|p| io::read_algebra(p)).collect::<Result<_>>()?;
    let mut inv = enumerate_si_many(&gens, g, true)?;
    let mut named = gens.clone();
    named.extend(aliases(cli, inputs)?);
    inv.adopt_names(&named);
    Ok(inv)
}

fn names(v: &[FiniteAlgebra]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter()
        .map(|a| format!("{} ({})", a.name, a.len()))
        .collect::<Vec<_>>()
        .join(", ")
}

fn inventory_text(inv: &SIInventory) -> String {
    format!(
        "generator: {}\nsimple: {}\nCon ≅ V: {}\nother SI: {}\nV-variety: {}\n",
        inv.generator.name,
        names(&inv.simples),
        names(&inv.v_algebras),
        names(&inv.others),
        inv.is_v_variety()
    )
}

fn verdict_text(v: &Verdict) -> String {
    let mut text = format!("{v}\n");
    if let Some(w) = &v.witness {
        text.push_str(&format!(
            "witness: {} onto {}\nh0: {}\nh1: {}\nE: {}\n",
            w.c.name,
            w.b.name,
            w.h0.labels(&w.b).join(" "),
            w.h1.labels(&w.b).join(" "),
            show_relation(&w.e)
        ));
    }
    text.push_str(&inventory_text(&v.inventory));
    text
}

/// Chain realization when Con(generator) is a chain, otherwise the
/// double-star construction from the variety's witness pair.
fn realize(gen: &FiniteAlgebra, inv: SIInventory, p: &Poset, g: &Guards) -> Result<Realization> {
    let c = congruence_lattice(gen, g)?;
    if c.lattice.is_chain() && p.check_chain_condition(c.len() - 1) {
        return realize_chain(gen, p, g);
    }
    let split = match p.check_doublestar() {
        DoubleStarCheck::Holds(s) => s,
        DoubleStarCheck::Fails(why) => return Err(Error::Precondition(format!("(**) fails: {why}"))),
    };
    let verdict = decide_fdmax_for(inv, g)?;
    let Some(w) = verdict.witness else {
        return Err(Error::Precondition(format!(
            "no witness pair for the double-star construction: {}",
            verdict.reason
        )));
    };
    let family = build_family(&w.e, split.d.len())?;
    realize_vshape(&w, &family, p, g)
}

/// Independent of `realize`: recomputes Con from scratch and cross-checks it.
fn verify(alg: &FiniteAlgebra, p: &Poset, g: &Guards) -> Result<Report> {
    let con = congruence_lattice(alg, g)?;
    let other = if alg.len() <= 9 {
        brute_force_congruences(alg, 9)?
    } else {
        relation_closure_congruences(alg)
    };
    let other = ConLattice::from_congruences(other)?;
    let agree = other.congruences == con.congruences;
    let target = FinDistLattice::new(p.clone()).materialize(g)?;
    let iso = agree && con.lattice.is_isomorphic(&target);
    let text = format!(
        "Con({}) has {} congruences; target lattice has {} elements\ncross-check: {}\nisomorphic: {iso}\n",
        alg.name,
        con.len(),
        target.len(),
        if agree { "agree" } else { "disagree" }
    );
    Ok(Report {
        text,
        json: json!({
            "algebra": alg.name,
            "congruences": con.len(),
            "target_size": target.len(),
            "cross_check": agree,
            "isomorphic": iso,
        }),
    })
}

fn xyz_report(e: &conlat::compat::ERelation) -> Report {
    let (holds, text, detail) = match check_xyz(e) {
        XyzCheck::Holds(ws) => {
            let mut text = String::from("xyz condition: holds\n");
            let list: Vec<Value> = ws
                .iter()
                .map(|&(ab, (x, y, z))| {
                    let l = |i: usize| e.base()[i].clone();
                    text.push_str(&format!(
                        "  {}: x={} y={} z={}\n",
                        e.format_pair(ab),
                        l(x),
                        l(y),
                        l(z)
                    ));
                    json!({"pair": e.format_pair(ab), "x": l(x), "y": l(y), "z": l(z)})
                })
                .collect();
            (true, text, json!(list))
        }
        XyzCheck::Fails(ab) => (
            false,
            format!("xyz condition (iii) fails at pair {}\n", e.format_pair(ab)),
            json!(e.format_pair(ab)),
        ),
        XyzCheck::Inapplicable => (
            false,
            "xyz check needs a relation with an off-diagonal pair\n".to_string(),
            Value::Null,
        ),
    };
    Report {
        text: format!("E = {}\n{text}", show_relation(e)),
        json: json!({"relation": io::relation_to_json(e), "holds": holds, "detail": detail}),
    }
}
