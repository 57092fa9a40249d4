//! Command-line front end for the max-min eigenproblem toolkit.
//!
//! Subcommands: `star`, `bellman`, `cover`, `eigen`, `verify`,
//! `plot-data`, `validate`. Problems are read from a JSON file (or
//! standard input with `-`); results go to `--out` or standard output.
//!
//! Exit codes: 0 success/verified, 1 verified-false, 2 input error,
//! 3 grid size cap exceeded.

use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use maxmin_eigen::algebra::IndexSet;
use maxmin_eigen::bellman::{bellman_solution_set, least_solution};
use maxmin_eigen::closure::{kleene_star, metric_matrix};
use maxmin_eigen::cover::{build_cover_problem, minimal_solution, solution_set_for_covering};
use maxmin_eigen::eigenspace::{
    background_eigenvectors, full_eigenspace, kl_eigenvectors, pure_eigenvectors,
    EigenspaceDescription, EigenspacePiece, Partition, PieceKind,
};
use maxmin_eigen::error::Error;
use maxmin_eigen::io::{
    matrix_rows, vector_strings, BellmanFile, CoverBlockFile, CoverFile, DescriptionFile,
    ProblemFile, SetFile, StarFile,
};
use maxmin_eigen::oracle::{breakpoints, cross_validate, DEFAULT_GRID_CAP};
use maxmin_eigen::scalar::Scalar;

#[derive(Parser)]
#[command(
    name = "maxmin-eigen",
    version,
    about = "Eigenspaces, closures and equation solving over the max-min algebra on [0, 1]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IoArgs {
    /// Input problem file (JSON); '-' reads standard input.
    #[arg(default_value = "-")]
    input: String,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct LambdaArg {
    /// Value of lambda as a decimal; overrides the input file's value.
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the metric matrix A⁺ and the Kleene star A*.
    Star(IoArgs),
    /// Solve the Bellman equation x = A⊗x ⊕ b completely.
    Bellman(IoArgs),
    /// Solve A⊗z ⊕ b = λ·1 by minimal coverings.
    Cover {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        lambda: LambdaArg,
    },
    /// Compute λ-eigenspace pieces.
    #[command(group(
        ArgGroup::new("selection")
            .args(["all", "pure", "background", "partition"])
            .multiple(false)
    ))]
    Eigen {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        lambda: LambdaArg,
        /// Full eigenspace: pure, background and every proper partition
        /// (the default).
        #[arg(long)]
        all: bool,
        /// Only the pure piece (K = N).
        #[arg(long)]
        pure: bool,
        /// Only the background piece (L = N).
        #[arg(long)]
        background: bool,
        /// Only the partition with this K, as comma-separated 1-based
        /// indices (e.g. --partition 1,3).
        #[arg(long)]
        partition: Option<String>,
    },
    /// Check whether the input's x satisfies A⊗x = λ⊗x.
    Verify {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        lambda: LambdaArg,
    },
    /// Emit box bounds and a sampled point cloud for plotting (n <= 3).
    PlotData {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        lambda: LambdaArg,
        /// Seed for the deterministic point sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-validate the computed eigenspace against the grid oracle.
    Validate {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        lambda: LambdaArg,
        /// Cap on the number of grid points the oracle may enumerate.
        #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
        grid_cap: u128,
        /// Seed for the deterministic piece sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::GridTooLarge { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Star(io) => cmd_star(&io),
        Command::Bellman(io) => cmd_bellman(&io),
        Command::Cover { io, lambda } => cmd_cover(&io, &lambda),
        Command::Eigen {
            io,
            lambda,
            all,
            pure,
            background,
            partition,
        } => cmd_eigen(&io, &lambda, all, pure, background, partition.as_deref()),
        Command::Verify { io, lambda } => cmd_verify(&io, &lambda),
        Command::PlotData { io, lambda, seed } => cmd_plot_data(&io, &lambda, seed),
        Command::Validate {
            io,
            lambda,
            grid_cap,
            seed,
        } => cmd_validate(&io, &lambda, grid_cap, seed),
    }
}

fn read_problem(io: &IoArgs) -> Result<ProblemFile, Error> {
    let text = if io.input == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| Error::Parse {
                token: "<stdin>".into(),
                reason: e.to_string(),
            })?;
        buffer
    } else {
        fs::read_to_string(&io.input).map_err(|e| Error::Parse {
            token: io.input.clone(),
            reason: e.to_string(),
        })?
    };
    ProblemFile::from_json(&text)
}

fn write_output(io: &IoArgs, text: &str) -> Result<(), Error> {
    match &io.out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| Error::Parse {
            token: path.clone(),
            reason: e.to_string(),
        }),
    }
}

fn missing(field: &str) -> Error {
    Error::Parse {
        token: format!("<{field}>"),
        reason: format!("the input file does not provide {field}"),
    }
}

fn resolve_lambda(file: &ProblemFile, flag: &LambdaArg) -> Result<Scalar, Error> {
    if let Some(text) = &flag.lambda {
        return text.parse();
    }
    file.lambda()?.ok_or_else(|| missing("lambda"))
}

fn cmd_star(io: &IoArgs) -> Result<ExitCode, Error> {
    let problem = read_problem(io)?;
    let a = problem.matrix()?;
    let output = StarFile {
        metric: matrix_rows(&metric_matrix(&a)?),
        star: matrix_rows(&kleene_star(&a)?),
    };
    write_output(io, &output.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_bellman(io: &IoArgs) -> Result<ExitCode, Error> {
    let problem = read_problem(io)?;
    let a = problem.matrix()?;
    let b = problem.b_vector()?.ok_or_else(|| missing("b"))?;
    let output = BellmanFile {
        least: vector_strings(&least_solution(&a, &b)?),
        solution_set: SetFile::from_set(&bellman_solution_set(&a, &b)?),
    };
    write_output(io, &output.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_cover(io: &IoArgs, lambda_arg: &LambdaArg) -> Result<ExitCode, Error> {
    let problem = read_problem(io)?;
    let a = problem.matrix()?;
    let b = problem.b_vector()?.ok_or_else(|| missing("b"))?;
    let lambda = resolve_lambda(&problem, lambda_arg)?;

    let cover_problem = build_cover_problem(&a, &b, lambda)?;
    let coverings = cover_problem.minimal_coverings();
    if coverings.is_empty() {
        eprintln!("UNSOLVABLE: no covering of the deficient rows exists");
    }
    let output = CoverFile {
        lambda: lambda.to_string(),
        solvable: !coverings.is_empty(),
        coverings: coverings
            .iter()
            .map(|c| CoverBlockFile {
                w: c.w.iter().map(|j| j + 1).collect(),
                minimal_solution: vector_strings(&minimal_solution(c, lambda, a.cols())),
                solution_set: SetFile::from_set(&solution_set_for_covering(c, lambda, a.cols())),
            })
            .collect(),
    };
    write_output(io, &output.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn parse_partition(text: &str, n: usize) -> Result<Partition, Error> {
    let mut indices = Vec::new();
    for token in text.split(',') {
        let token = token.trim();
        let index: usize = token.parse().map_err(|_| Error::Parse {
            token: token.to_string(),
            reason: "partition indices must be positive integers".into(),
        })?;
        if index == 0 {
            return Err(Error::Parse {
                token: token.to_string(),
                reason: "partition indices are 1-based".into(),
            });
        }
        indices.push(index - 1);
    }
    Partition::from_k(IndexSet::checked(indices, n)?, n)
}

fn cmd_eigen(
    io: &IoArgs,
    lambda_arg: &LambdaArg,
    _all: bool,
    pure: bool,
    background: bool,
    partition: Option<&str>,
) -> Result<ExitCode, Error> {
    let problem = read_problem(io)?;
    let a = problem.matrix()?;
    let lambda = resolve_lambda(&problem, lambda_arg)?;

    let description = if pure {
        let piece = EigenspacePiece {
            kind: PieceKind::Pure,
            partition: Partition::pure(a.rows()),
            covering: None,
            set: pure_eigenvectors(&a, lambda)?,
        };
        EigenspaceDescription {
            matrix: a.clone(),
            lambda,
            pieces: vec![piece],
        }
    } else if background {
        let pieces = match background_eigenvectors(&a, lambda)? {
            Some(set) => vec![EigenspacePiece {
                kind: PieceKind::Background,
                partition: Partition::background(a.rows()),
                covering: None,
                set,
            }],
            None => Vec::new(),
        };
        EigenspaceDescription {
            matrix: a.clone(),
            lambda,
            pieces,
        }
    } else if let Some(text) = partition {
        let partition = parse_partition(text, a.rows())?;
        EigenspaceDescription {
            matrix: a.clone(),
            lambda,
            pieces: kl_eigenvectors(&a, &partition, lambda)?,
        }
    } else {
        full_eigenspace(&a, lambda)?
    };

    write_output(
        io,
        &DescriptionFile::from_description(&description).to_json(),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(io: &IoArgs, lambda_arg: &LambdaArg) -> Result<ExitCode, Error> {
    let problem = read_problem(io)?;
    let a = problem.matrix()?;
    let x = problem.x_vector()?.ok_or_else(|| missing("x"))?;
    let lambda = resolve_lambda(&problem, lambda_arg)?;

    let lhs = a.mul_vec(&x)?;
    let rhs = x.scale(lambda);
    let mut report = String::new();
    let mut verified = true;
    for i in 0..x.dim() {
        let ok = lhs.get(i) == rhs.get(i);
        verified &= ok;
        let _ = writeln!(
            report,
            "row {}: (A\u{2297}x) = {}  \u{3bb}\u{2297}x = {}  [{}]",
            i + 1,
            lhs.get(i),
            rhs.get(i),
            if ok { "ok" } else { "MISMATCH" }
        );
    }
    let _ = write!(
        report,
        "{}",
        if verified {
            "verified: x is a lambda-eigenvector"
        } else {
            "not verified: x is not a lambda-eigenvector"
        }
    );
    write_output(io, &report)?;
    Ok(if verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_plot_data(io: &IoArgs, lambda_arg: &LambdaArg, seed: u64) -> Result<ExitCode, Error> {
    const POINTS_PER_PIECE: usize = 100;

    let problem = read_problem(io)?;
    let a = problem.matrix()?;
    let lambda = resolve_lambda(&problem, lambda_arg)?;
    if a.rows() < 2 || a.rows() > 3 {
        return Err(Error::Shape(format!(
            "plot data is only emitted for 2 or 3 dimensions, got {}",
            a.rows()
        )));
    }

    let description = full_eigenspace(&a, lambda)?;
    let mut boxes = String::from("# piece kind lo/hi bounds per coordinate\n");
    let mut points = String::from("# piece sampled member coordinates\n");
    for (index, piece) in description.pieces.iter().enumerate() {
        let _ = write!(boxes, "{} {}", index + 1, kind_label(piece.kind));
        for (lo, hi) in piece.set.bounds() {
            let _ = write!(boxes, " {lo} {hi}");
        }
        let _ = writeln!(boxes);
        for x in piece.set.sample(POINTS_PER_PIECE, seed ^ index as u64) {
            let _ = write!(points, "{}", index + 1);
            for v in x.entries() {
                let _ = write!(points, " {v}");
            }
            let _ = writeln!(points);
        }
    }

    match &io.out {
        None => {
            print!("{boxes}");
            print!("{points}");
        }
        Some(path) => {
            let write = |suffix: &str, text: &str| {
                let file = format!("{path}.{suffix}.txt");
                fs::write(&file, text).map_err(|e| Error::Parse {
                    token: file,
                    reason: e.to_string(),
                })
            };
            write("boxes", &boxes)?;
            write("points", &points)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn kind_label(kind: PieceKind) -> &'static str {
    match kind {
        PieceKind::Pure => "pure",
        PieceKind::Background => "background",
        PieceKind::Kl => "kl",
    }
}

fn cmd_validate(
    io: &IoArgs,
    lambda_arg: &LambdaArg,
    grid_cap: u128,
    seed: u64,
) -> Result<ExitCode, Error> {
    const SAMPLES_PER_PIECE: usize = 25;

    let problem = read_problem(io)?;
    let a = problem.matrix()?;
    let lambda = resolve_lambda(&problem, lambda_arg)?;

    let description = full_eigenspace(&a, lambda)?;
    let grid = breakpoints(&a, lambda);
    let report = cross_validate(
        &a,
        lambda,
        &description,
        &grid,
        grid_cap,
        SAMPLES_PER_PIECE,
        seed,
    )?;
    let pass = report.pass;
    write_output(io, &report.to_string())?;
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
