use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use multibrace::algebra::Algebra;
use multibrace::braces::{enumerate_terms, expand, render_term};
use multibrace::bv::{check_weakly_homotopy_bv, descend, dictionary_defects, BvData};
use multibrace::hochschild::{
    check_gv_identities, gv_structure, lift_b, lift_report, TruncatedHochschild,
};
use multibrace::homotopy::{
    check_a_infinity, check_l_infinity, check_mega, check_pre_l_infinity, format_tuple,
    is_homotopy_g, Side, StructureReport,
};
use multibrace::io::{parse, AlgebraDocument};
use multibrace::maps::{all_tuples, PartitionedMap};
use multibrace::partitions::{compose_patterns, count_terms};
use multibrace::{Error, Partition, SubstitutionPattern};

#[derive(Parser)]
#[command(
    name = "multibrace",
    version,
    about = "Exact checks of homotopy algebra identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose two substitution patterns, outer first.
    Compose { outer: String, inner: String },
    /// Number of terms of {x}{y} with the given argument and inner slot sizes.
    Count {
        #[arg(long, value_delimiter = ',', required = true)]
        args: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        inner: Vec<usize>,
        /// Also print every term with its sign.
        #[arg(long)]
        enumerate: bool,
    },
    /// Term dump of {outer}{inner,...} for maps of a document.
    Expand {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        outer: String,
        #[arg(long, value_delimiter = ',', required = true)]
        inner: Vec<String>,
        /// Target partition, e.g. 2|1.
        #[arg(long)]
        target: String,
    },
    /// Check a structure; exit 0 iff every identity holds.
    Check {
        kind: CheckKind,
        #[arg(long)]
        file: PathBuf,
        /// Largest arity (or partition bound) checked.
        #[arg(long, default_value_t = 5)]
        bound: usize,
        /// Arity cap of the truncated Hochschild space.
        #[arg(long, default_value_t = 3)]
        cap: usize,
        /// Name of the BV operator; defaults to the first operator.
        #[arg(long)]
        operator: Option<String>,
    },
    /// Cohomology of m_(1) with the induced operations.
    Cohomology {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        operator: Option<String>,
    },
    /// Lift the structure to the truncated Hochschild space.
    Lift {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        cap: usize,
        /// Compare lifted and source defects.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Ainf,
    Linf,
    PreLinf,
    Mega,
    G,
    Bv,
    Gv,
    Dictionary,
}

enum Failure {
    Parse(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Syntax(_) | Error::EmptyPartition => {
                Failure::Parse(e.to_string())
            }
            other => Failure::Precondition(other.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<AlgebraDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn bv_data(doc: &AlgebraDocument, operator: Option<&str>) -> Result<BvData, Failure> {
    let b = match operator {
        Some(n) => doc
            .operator(n)
            .ok_or_else(|| Failure::Precondition(format!("no operator `{n}`")))?,
        None => {
            &doc.operators
                .first()
                .ok_or_else(|| Failure::Precondition("document has no operator".into()))?
                .map
        }
    };
    Ok(BvData::new(doc.space.clone(), doc.mega(), b.clone())?)
}

fn product(doc: &AlgebraDocument) -> Result<Algebra, Failure> {
    let m2 = doc
        .mega()
        .plain(2)
        .cloned()
        .ok_or_else(|| Failure::Precondition("document has no map of type 2".into()))?;
    Ok(Algebra::from_product(doc.space.clone(), &m2)?)
}

fn report(r: StructureReport) -> Result<bool, Failure> {
    print!("{r}");
    Ok(r.verdict())
}

fn print_table(doc_space: &multibrace::GradedSpace, name: &str, m: &PartitionedMap) {
    let n = doc_space.dim();
    println!("{name}:");
    let mut any = false;
    for t in all_tuples(n, m.arity()) {
        let v = m.eval_basis(&t);
        if !v.is_zero() {
            println!(
                "  {} -> {}",
                format_tuple(doc_space, m.ty(), &t),
                doc_space.render(&v)
            );
            any = true;
        }
    }
    if !any {
        println!("  0");
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Compose { outer, inner } => {
            let o: SubstitutionPattern = outer.parse()?;
            let i: SubstitutionPattern = inner.parse()?;
            println!("{}", compose_patterns(&o, &i)?);
            Ok(true)
        }
        Command::Count {
            args,
            inner,
            enumerate,
        } => {
            if args.len() != inner.len() {
                return Err(Failure::Precondition(format!(
                    "{} argument slots but {} inner slots",
                    args.len(),
                    inner.len()
                )));
            }
            println!("{}", count_terms(&args, &inner));
            if enumerate {
                let target = Partition::new(args)?;
                let i = Partition::new(inner)?;
                if i.arity() > target.arity() + 1 {
                    return Ok(true);
                }
                let outer = Partition::plain(target.arity() + 1 - i.arity());
                for t in enumerate_terms(&outer, std::slice::from_ref(&i), &[false], &target) {
                    println!(
                        "{}",
                        render_term(&t, &outer, std::slice::from_ref(&i), &target)
                    );
                }
            }
            Ok(true)
        }
        Command::Expand {
            file,
            outer,
            inner,
            target,
        } => {
            let doc = load(&file)?;
            let find = |n: &str| {
                doc.map(n)
                    .or_else(|| doc.operator(n))
                    .ok_or_else(|| Failure::Precondition(format!("no map `{n}`")))
            };
            let x = find(&outer)?;
            let ys = inner
                .iter()
                .map(|n| find(n))
                .collect::<Result<Vec<_>, _>>()?;
            let target: Partition = target.parse()?;
            let types: Vec<Partition> = ys.iter().map(|y| y.ty().clone()).collect();
            let terms = expand(x, &ys, &target);
            println!("{} terms", terms.len());
            for t in &terms {
                println!("{}", render_term(t, x.ty(), &types, &target));
            }
            Ok(true)
        }
        Command::Check {
            kind,
            file,
            bound,
            cap,
            operator,
        } => {
            let doc = load(&file)?;
            let (s, m) = (&doc.space, doc.mega());
            match kind {
                CheckKind::Ainf => report(check_a_infinity(s, &m, bound)?),
                CheckKind::Linf => report(check_l_infinity(s, &m, bound)?),
                CheckKind::PreLinf => {
                    let right = report(check_pre_l_infinity(s, &m, bound, Side::Right)?)?;
                    let left = report(check_pre_l_infinity(s, &m, bound, Side::Left)?)?;
                    Ok(right && left)
                }
                CheckKind::Mega => report(check_mega(s, &m, bound)),
                CheckKind::G => report(is_homotopy_g(s, &m, bound)),
                CheckKind::Bv => report(check_weakly_homotopy_bv(
                    &bv_data(&doc, operator.as_deref())?,
                    bound,
                )?),
                CheckKind::Dictionary => {
                    report(dictionary_defects(&bv_data(&doc, operator.as_deref())?)?)
                }
                CheckKind::Gv => {
                    let a = product(&doc)?;
                    let h = Arc::new(TruncatedHochschild::new(&a.space, cap)?);
                    let structure = gv_structure(&h, &a)?;
                    report(check_gv_identities(&h, &structure))
                }
            }
        }
        Command::Cohomology { file, operator } => {
            let doc = load(&file)?;
            let data = bv_data(&doc, operator.as_deref())?;
            let h = descend(&data)?;
            for (d, n) in h.dimensions() {
                println!("H^{d}: {n}");
            }
            for (name, m) in [
                ("product", &h.product),
                ("G bracket", &h.g_bracket),
                ("BV bracket", &h.bv_bracket),
                ("B", &h.b),
            ] {
                print_table(&h.space, name, m);
            }
            report(h.classical_checks())
        }
        Command::Lift { file, cap, check } => {
            let doc = load(&file)?;
            let h = Arc::new(TruncatedHochschild::new(&doc.space, cap)?);
            println!(
                "truncated Hochschild space: dimension {}, cap {cap}",
                h.dim()
            );
            for b in &doc.operators {
                let lb = lift_b(&h, &b.map)?;
                println!("lifted operator {}: degree {}", b.name, lb.degree());
            }
            if !check {
                return Ok(true);
            }
            let m = doc.mega();
            let targets: Vec<Partition> = ["(1)", "(2)", "(1|1)", "(3)"]
                .iter()
                .map(|t| t.parse().expect("partition literal"))
                .collect();
            report(lift_report(&h, &m, &targets))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
