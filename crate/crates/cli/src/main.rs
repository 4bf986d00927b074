//! Command-line front end for the subfree calculus.
//!
//! Exit codes: 0 for success or a true predicate, 1 for a well-formed
//! negative answer, 2 for input errors. All output is deterministic.

mod input;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use subfree::fibre::{assemble, relator_audit, translate_identity};
use subfree::lattice::{abelian_sum_kernel, lattice_index, smith_normal_form, vsp_check};
use subfree::magnus::{eta_free, eta_gamma, lcs_member, nilp_eq, specialize};
use subfree::sec::{intersection_certificate, sec_generators, shift_auto, SecSpec};
use subfree::words::{comm, Alphabet, Word};
use subfree::{parse_word_inferred, Error, IntMatrix};

#[derive(Parser)]
#[command(name = "subfree", version, about = "Exact calculus for subdirect products of free groups", long_about = None)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Word arithmetic
    Word {
        #[command(subcommand)]
        cmd: WordCmd,
    },
    /// Power-series images of words
    Magnus {
        #[command(subcommand)]
        cmd: MagnusCmd,
    },
    /// Lower central series membership
    Lcs {
        #[command(subcommand)]
        cmd: LcsCmd,
    },
    /// Equality in free nilpotent quotients
    Nilp {
        #[command(subcommand)]
        cmd: NilpCmd,
    },
    /// Generated subgroups of direct powers and their certificates
    Sec {
        #[command(subcommand)]
        cmd: SecCmd,
    },
    /// Integer matrix normal forms and lattice indices
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Pairwise finite-index projection tests
    Vsp {
        #[command(subcommand)]
        cmd: VspCmd,
    },
    /// Kernel of a three-term sum into a finitely presented abelian group
    Kernel3(Kernel3Args),
    /// Fibre-product presentation assembly and audit
    Fibre {
        #[command(subcommand)]
        cmd: FibreCmd,
    },
}

#[derive(Subcommand)]
enum WordCmd {
    /// Freely reduce a word
    Reduce {
        #[arg(long)]
        word: String,
        /// Generator names, comma separated; inferred from the word if omitted
        #[arg(long, value_delimiter = ',')]
        alphabet: Option<Vec<String>>,
    },
    /// Left-normed commutator of two or more words
    Comm {
        /// Repeat the flag once per argument
        #[arg(long = "word", action = clap::ArgAction::Append, required = true)]
        words: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        alphabet: Option<Vec<String>>,
    },
}

#[derive(Subcommand)]
enum MagnusCmd {
    /// Series image of a word over {a,b} or {w,x,y,z}
    Eval {
        #[arg(long)]
        word: String,
        /// Truncation degree
        #[arg(long)]
        trunc: usize,
        /// Evaluate polynomial coefficients at this integer
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
    },
    /// Inverse of the series image
    Inv {
        #[arg(long)]
        word: String,
        #[arg(long)]
        trunc: usize,
    },
}

#[derive(Subcommand)]
enum LcsCmd {
    /// Test membership in the c-th lower central series term
    Member {
        #[arg(long)]
        word: String,
        #[arg(long)]
        c: u32,
    },
}

#[derive(Subcommand)]
enum NilpCmd {
    /// Test equality in the free nilpotent quotient of class c-1
    Eq {
        /// Exactly two occurrences
        #[arg(long = "word", action = clap::ArgAction::Append, required = true)]
        words: Vec<String>,
        #[arg(long)]
        c: u32,
    },
}

#[derive(Subcommand)]
enum SecCmd {
    /// List the generating tuples
    Gens {
        #[arg(long = "E", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        e: Vec<i64>,
        #[arg(long)]
        c: u32,
    },
    /// Intersection certificate of a word at one coordinate
    Cert {
        #[arg(long)]
        word: String,
        #[arg(long = "E", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        e: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        c: u32,
    },
    /// Apply the coordinate-shift automorphism
    Shift {
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Smith normal form of a matrix file
    Snf {
        #[arg(long)]
        file: PathBuf,
    },
    /// Index of the sublattice spanned by the rows of a matrix file
    Index {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum VspCmd {
    /// Pairwise projection indices of the generated subgroup
    Check {
        #[arg(long = "E", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        e: Vec<i64>,
        #[arg(long)]
        c: u32,
    },
}

#[derive(Args)]
struct Kernel3Args {
    /// File with four matrices: quotient relations, then the three maps
    #[arg(long)]
    file: PathBuf,
}

#[derive(Subcommand)]
enum FibreCmd {
    /// Assemble the fibre-product presentation
    Assemble {
        #[arg(long)]
        file: PathBuf,
    },
    /// Assemble, then audit every relator through the two factor images
    Audit {
        #[arg(long)]
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_with_optional_alphabet(
    text: &str,
    alphabet: &Option<Vec<String>>,
) -> subfree::Result<(Word, Alphabet)> {
    match alphabet {
        Some(names) => {
            let alphabet = Alphabet::new(names)?;
            Ok((Word::parse(text, &alphabet)?, alphabet))
        }
        None => parse_word_inferred(text),
    }
}

/// Words for the series commands live over {a,b} or {w,x,y,z}; which one is
/// inferred from the letters used, defaulting to the four-generator side
/// for letterless input.
enum SeriesAlphabet {
    Free,
    FourGen,
}

fn series_alphabet(text: &str) -> subfree::Result<(SeriesAlphabet, Word)> {
    let (_, inferred) = parse_word_inferred(text)?;
    let free = Alphabet::ab();
    let four = Alphabet::wxyz();
    let in_free = inferred.names().iter().all(|n| free.index_of(n).is_some());
    let in_four = inferred.names().iter().all(|n| four.index_of(n).is_some());
    if in_four {
        Ok((SeriesAlphabet::FourGen, Word::parse(text, &four)?))
    } else if in_free {
        Ok((SeriesAlphabet::Free, Word::parse(text, &free)?))
    } else {
        Err(Error::InvalidArgument(format!(
            "word uses letters {:?}; expected a subset of {{a,b}} or {{w,x,y,z}}",
            inferred.names()
        )))
    }
}

fn print_bool(value: bool) -> ExitCode {
    println!("{value}");
    if value {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> subfree::Result<ExitCode> {
    let mut stdout = std::io::stdout().lock();
    match cli.cmd {
        Cmd::Word { cmd: WordCmd::Reduce { word, alphabet } } => {
            let (w, _) = parse_with_optional_alphabet(&word, &alphabet)?;
            println!("{w}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Word { cmd: WordCmd::Comm { words, alphabet } } => {
            let joined = words.join(" ");
            let (_, alphabet) = parse_with_optional_alphabet(&joined, &alphabet)?;
            let parsed = words
                .iter()
                .map(|t| Word::parse(t, &alphabet))
                .collect::<subfree::Result<Vec<_>>>()?;
            println!("{}", comm(&parsed)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Magnus { cmd: MagnusCmd::Eval { word, trunc, n } } => {
            match series_alphabet(&word)? {
                (SeriesAlphabet::FourGen, g) => {
                    let s = eta_gamma(&g, trunc)?;
                    match n {
                        Some(point) => write!(stdout, "{}", specialize(&s, point).render()),
                        None => write!(stdout, "{}", s.render()),
                    }
                    .expect("stdout");
                }
                (SeriesAlphabet::Free, g) => {
                    if n.is_some() {
                        return Err(Error::InvalidArgument(
                            "--n applies only to words over {w,x,y,z}".into(),
                        ));
                    }
                    write!(stdout, "{}", eta_free(&g, trunc)?.render()).expect("stdout");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Magnus { cmd: MagnusCmd::Inv { word, trunc } } => {
            let rendered = match series_alphabet(&word)? {
                (SeriesAlphabet::FourGen, g) => eta_gamma(&g, trunc)?.inv()?.render(),
                (SeriesAlphabet::Free, g) => eta_free(&g, trunc)?.inv()?.render(),
            };
            write!(stdout, "{rendered}").expect("stdout");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lcs { cmd: LcsCmd::Member { word, c } } => {
            let g = Word::parse(&word, &Alphabet::ab())?;
            Ok(print_bool(lcs_member(&g, c)?))
        }
        Cmd::Nilp { cmd: NilpCmd::Eq { words, c } } => {
            if words.len() != 2 {
                return Err(Error::InvalidArgument(format!(
                    "nilp eq takes exactly two --word flags, got {}",
                    words.len()
                )));
            }
            let ab = Alphabet::ab();
            let u = Word::parse(&words[0], &ab)?;
            let v = Word::parse(&words[1], &ab)?;
            Ok(print_bool(nilp_eq(&u, &v, c)?))
        }
        Cmd::Sec { cmd: SecCmd::Gens { e, c } } => {
            let spec = SecSpec::new(&e, c)?;
            let gens = sec_generators(&spec)?;
            let blocks: Vec<String> = gens.iter().map(|t| t.to_string()).collect();
            write!(stdout, "{}", blocks.join("\n")).expect("stdout");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sec { cmd: SecCmd::Cert { word, e, n, c } } => {
            let g = Word::parse(&word, &Alphabet::wxyz())?;
            let spec = SecSpec::new(&e, c)?;
            let cert = intersection_certificate(&g, &spec, n)?;
            write!(stdout, "{cert}").expect("stdout");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sec { cmd: SecCmd::Shift { word } } => {
            let g = Word::parse(&word, &Alphabet::wxyz())?;
            println!("{}", shift_auto(&g)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lattice { cmd: LatticeCmd::Snf { file } } => {
            let m = IntMatrix::parse(&read(&file)?)?;
            let snf = smith_normal_form(&m);
            write!(stdout, "S:\n{}\nU:\n{}\nV:\n{}", snf.s, snf.u, snf.v).expect("stdout");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lattice { cmd: LatticeCmd::Index { file } } => {
            let m = IntMatrix::parse(&read(&file)?)?;
            let gens: Vec<Vec<subfree::Int>> =
                (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
            let index = lattice_index(&gens, m.cols())?;
            println!("{index}");
            Ok(if index.is_finite() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Vsp { cmd: VspCmd::Check { e, c } } => {
            let spec = SecSpec::new(&e, c)?;
            let gens = sec_generators(&spec)?;
            let coords: BTreeSet<i64> = spec.coords().iter().copied().collect();
            let mut all_finite = true;
            for &i in &coords {
                for &j in coords.iter().filter(|&&j| j > i) {
                    let p = vsp_check(&gens, i, j)?;
                    all_finite &= p.index.is_finite();
                    match p.index {
                        subfree::lattice::LatticeIndex::Finite(k) => {
                            writeln!(stdout, "{i} {j}: index {k}").expect("stdout")
                        }
                        subfree::lattice::LatticeIndex::Infinite => {
                            writeln!(stdout, "{i} {j}: infinite").expect("stdout")
                        }
                    }
                }
            }
            Ok(if all_finite { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Kernel3(args) => {
            let text = read(&args.file)?;
            let mut tokens = text.split_whitespace();
            let rel = IntMatrix::parse_from_tokens(&mut tokens)?;
            let m1 = IntMatrix::parse_from_tokens(&mut tokens)?;
            let m2 = IntMatrix::parse_from_tokens(&mut tokens)?;
            let m3 = IntMatrix::parse_from_tokens(&mut tokens)?;
            if let Some(extra) = tokens.next() {
                return Err(Error::Parse(format!("trailing input at {extra:?}")));
            }
            let r_total = m1.cols() + m2.cols() + m3.cols();
            let gens = abelian_sum_kernel(&rel, [&m1, &m2, &m3])?;
            writeln!(stdout, "{} {}", gens.len(), r_total).expect("stdout");
            for g in gens {
                let row: Vec<String> = g.iter().map(|e| e.to_string()).collect();
                writeln!(stdout, "{}", row.join(" ")).expect("stdout");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fibre { cmd: FibreCmd::Assemble { file } } => {
            let input = input::parse_fibre_file(&read(&file)?)?;
            let z = input
                .sigmas
                .iter()
                .map(|s| translate_identity(&input.p1, s))
                .collect::<subfree::Result<Vec<_>>>()?;
            let pres = assemble(&input.p1, &input.p2, &z)?;
            write!(stdout, "{pres}").expect("stdout");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fibre { cmd: FibreCmd::Audit { file } } => {
            let input = input::parse_fibre_file(&read(&file)?)?;
            let theta = input.theta.as_ref().ok_or_else(|| {
                Error::InvalidArgument(
                    "audit needs g1gens/g2gens and i1/i2 interpretation lines".into(),
                )
            })?;
            let z = input
                .sigmas
                .iter()
                .map(|s| translate_identity(&input.p1, s))
                .collect::<subfree::Result<Vec<_>>>()?;
            let pres = assemble(&input.p1, &input.p2, &z)?;
            let report = relator_audit(&pres, theta)?;
            for entry in &report.entries {
                if entry.passed() {
                    writeln!(stdout, "rel {} {}: pass", entry.family, entry.relator)
                        .expect("stdout");
                } else {
                    writeln!(
                        stdout,
                        "rel {} {}: fail ({}, {})",
                        entry.family, entry.relator, entry.image1, entry.image2
                    )
                    .expect("stdout");
                }
            }
            let passed = report.passed();
            writeln!(stdout, "audit: {}", if passed { "pass" } else { "fail" })
                .expect("stdout");
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn read(path: &PathBuf) -> subfree::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}
