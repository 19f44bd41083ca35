//! Command-line front end: every library operation on JSON documents, with
//! deterministic output and scripted-friendly exit codes.
//!
//! Exit codes: 0 success / all checks pass; 1 law or check failure (with the
//! witness in the output document); 2 usage or parse error; 3 the pushout
//! did not saturate at the bound.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lenscalc::adjunction::{
    apply_l, apply_m, apply_r, verify_adjunctions, AdjunctionReport, Verdict,
};
use lenscalc::cofunctor::cofunctor_span_rep;
use lenscalc::doc::{
    self, category_from_doc, cofunctor_from_doc, doc_for_category, doc_for_cofunctor,
    doc_for_functor, doc_for_lens, doc_for_mealy, doc_for_span, doc_for_symlens,
    functor_from_doc, lens_from_doc, load_document, mealy_from_doc, span_2cell_from_doc,
    span_from_doc, sym_2cell_from_doc, symlens_from_doc, to_canonical_json, Document,
};
use lenscalc::error::Error;
use lenscalc::functor::{boff_factorize, Functor};
use lenscalc::gen::{gen_category, gen_lens, gen_span, gen_symlens, GenConfig};
use lenscalc::lens::{lens_diagram_rep, Lens};
use lenscalc::mealy::{mealy_span_rep, MealyMorphism};
use lenscalc::span::{fake_pullback, lensb_product, spnlens_hcompose};
use lenscalc::symlens::{embed_lens_sym, SymmetricLens};

#[derive(Parser)]
#[command(name = "lenscalc", version, about = "Delta lenses over finite categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the output document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format: the full JSON document or one summary line per check.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Summary,
}

#[derive(Clone, Copy, ValueEnum)]
enum Adjoint {
    M,
    R,
    L,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmbedTarget {
    Sym,
    Span,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Category,
    Lens,
    Symlens,
    Span,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document of any kind against its laws.
    Validate { file: PathBuf },
    /// Classify a functor (discrete opfibration, bijective on objects,
    /// fully faithful) with witnesses.
    Classify { file: PathBuf },
    /// Factorise a functor as bijective-on-objects followed by fully
    /// faithful.
    Factor { file: PathBuf },
    /// Compose two documents of the same kind, first-then-second.
    Compose { first: PathBuf, second: PathBuf },
    /// The span (or diagram) representation of a cofunctor, Mealy morphism
    /// or lens.
    SpanRep { file: PathBuf },
    /// The fake pullback of two lenses into the same category.
    FakePullback { left: PathBuf, right: PathBuf },
    /// The product of two lenses over the same base, with projections.
    Product { left: PathBuf, right: PathBuf },
    /// Apply one of the adjoint triple's functors: M to a span of lenses,
    /// R or L to a symmetric lens.
    Apply {
        #[arg(value_enum)]
        which: Adjoint,
        file: PathBuf,
        /// Saturation bound for the pushout behind L.
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Reverse a symmetric lens.
    Dagger { file: PathBuf },
    /// Embed a lens as a symmetric lens or as a span of lenses.
    Embed {
        #[arg(value_enum)]
        target: EmbedTarget,
        file: PathBuf,
    },
    /// Check a 2-cell document between two spans (`h`) or two symmetric
    /// lenses (`stateMap`).
    #[command(name = "check-2cell")]
    Check2cell { src: PathBuf, tgt: PathBuf, cell: PathBuf },
    /// Verify the adjoint triple on generated instances between two
    /// categories.
    CheckAdjunction {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// How many symmetric lenses and spans to generate.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Generate a random instance of the given kind.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Base or endpoint categories, as required by the kind.
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            if let Err(e) = write_output(cli.out.as_deref(), &output) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = match &e {
                Error::NotSaturated { .. } | Error::LInapplicableAtBound { .. } => 3,
                Error::Document { .. } => 2,
                _ => 1,
            };
            let witness = serde_json::json!({ "error": e.to_string() });
            let rendered = format!("{}\n", serde_json::to_string_pretty(&witness).unwrap());
            if write_output(cli.out.as_deref(), &rendered).is_err() || code == 2 {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn base_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}

fn load_category(path: &Path) -> lenscalc::Result<std::sync::Arc<lenscalc::FinCat>> {
    match load_document(path)? {
        Document::Category(raw) => category_from_doc(&raw),
        other => Err(Error::Document {
            detail: format!("{}: expected a category, found {}", path.display(), other.kind()),
        }),
    }
}

fn load_functor(path: &Path) -> lenscalc::Result<Functor> {
    match load_document(path)? {
        Document::Functor(d) => functor_from_doc(&d, &base_of(path)),
        other => Err(Error::Document {
            detail: format!("{}: expected a functor, found {}", path.display(), other.kind()),
        }),
    }
}

fn load_lens(path: &Path) -> lenscalc::Result<Lens> {
    match load_document(path)? {
        Document::Lens(d) => lens_from_doc(&d, &base_of(path)),
        other => Err(Error::Document {
            detail: format!("{}: expected a lens, found {}", path.display(), other.kind()),
        }),
    }
}

fn load_symlens(path: &Path) -> lenscalc::Result<SymmetricLens> {
    match load_document(path)? {
        Document::SymLens(d) => symlens_from_doc(&d, &base_of(path)),
        other => Err(Error::Document {
            detail: format!(
                "{}: expected a symmetric lens, found {}",
                path.display(),
                other.kind()
            ),
        }),
    }
}

fn load_span(path: &Path) -> lenscalc::Result<lenscalc::span::LensSpan> {
    match load_document(path)? {
        Document::Span(d) => span_from_doc(&d, &base_of(path)),
        other => Err(Error::Document {
            detail: format!(
                "{}: expected a span of lenses, found {}",
                path.display(),
                other.kind()
            ),
        }),
    }
}

fn summary_line(name: &str, verdict: &str) -> String {
    format!("CHECK {name} {verdict}\n")
}

fn run(cli: &Cli) -> lenscalc::Result<String> {
    let summary = cli.format == Format::Summary;
    match &cli.command {
        Command::Validate { file } => {
            let document = load_document(file)?;
            let kind = doc::validate_document(&document, file)?;
            if summary {
                Ok(summary_line("validate", "PASS"))
            } else {
                Ok(to_canonical_json(&serde_json::json!({ "kind": kind, "valid": true })))
            }
        }
        Command::Classify { file } => {
            let f = load_functor(file)?;
            let class = f.classify();
            Ok(to_canonical_json(&serde_json::json!({
                "isDiscreteOpfibration": class.is_discrete_opfibration,
                "isBijectiveOnObjects": class.is_bijective_on_objects,
                "isFullyFaithful": class.is_fully_faithful,
                "dopfWitness": class.dopf_witness,
                "booWitness": class.boo_witness,
                "ffWitness": class.ff_witness,
            })))
        }
        Command::Factor { file } => {
            let f = load_functor(file)?;
            let (e, image, m) = boff_factorize(&f);
            Ok(to_canonical_json(&serde_json::json!({
                "image": doc_for_category(&image),
                "bijectiveOnObjects": doc_for_functor(&e),
                "fullyFaithful": doc_for_functor(&m),
            })))
        }
        Command::Compose { first, second } => {
            let d1 = load_document(first)?;
            let d2 = load_document(second)?;
            match (d1, d2) {
                (Document::Functor(a), Document::Functor(b)) => {
                    let f = functor_from_doc(&a, &base_of(first))?;
                    let g = functor_from_doc(&b, &base_of(second))?;
                    Ok(to_canonical_json(&doc_for_functor(&Functor::compose(&g, &f)?)))
                }
                (Document::Cofunctor(a), Document::Cofunctor(b)) => {
                    let f = cofunctor_from_doc(&a, &base_of(first))?;
                    let g = cofunctor_from_doc(&b, &base_of(second))?;
                    Ok(to_canonical_json(&doc_for_cofunctor(
                        &lenscalc::cofunctor::Cofunctor::compose(&f, &g)?,
                    )))
                }
                (Document::Mealy(a), Document::Mealy(b)) => {
                    let f = mealy_from_doc(&a, &base_of(first))?;
                    let g = mealy_from_doc(&b, &base_of(second))?;
                    Ok(to_canonical_json(&doc_for_mealy(&MealyMorphism::compose(&f, &g)?)))
                }
                (Document::Lens(a), Document::Lens(b)) => {
                    let f = lens_from_doc(&a, &base_of(first))?;
                    let g = lens_from_doc(&b, &base_of(second))?;
                    Ok(to_canonical_json(&doc_for_lens(&Lens::compose(&f, &g)?)))
                }
                (Document::SymLens(a), Document::SymLens(b)) => {
                    let f = symlens_from_doc(&a, &base_of(first))?;
                    let g = symlens_from_doc(&b, &base_of(second))?;
                    Ok(to_canonical_json(&doc_for_symlens(&SymmetricLens::compose(&f, &g)?)))
                }
                (Document::Span(a), Document::Span(b)) => {
                    let f = span_from_doc(&a, &base_of(first))?;
                    let g = span_from_doc(&b, &base_of(second))?;
                    Ok(to_canonical_json(&doc_for_span(&spnlens_hcompose(&f, &g)?)))
                }
                (a, b) => Err(Error::Document {
                    detail: format!("cannot compose a {} with a {}", a.kind(), b.kind()),
                }),
            }
        }
        Command::SpanRep { file } => match load_document(file)? {
            Document::Cofunctor(d) => {
                let c = cofunctor_from_doc(&d, &base_of(file))?;
                let rep = cofunctor_span_rep(&c);
                Ok(to_canonical_json(&serde_json::json!({
                    "apex": doc_for_category(&rep.apex),
                    "leg-b": doc_for_functor(&rep.leg_b),
                    "leg-a": doc_for_functor(&rep.leg_a),
                })))
            }
            Document::Mealy(d) => {
                let m = mealy_from_doc(&d, &base_of(file))?;
                let rep = mealy_span_rep(&m);
                Ok(to_canonical_json(&serde_json::json!({
                    "apex": doc_for_category(&rep.apex),
                    "leg-dom": doc_for_functor(&rep.leg_dom),
                    "leg-cod": doc_for_functor(&rep.leg_cod),
                })))
            }
            Document::Lens(d) => {
                let l = lens_from_doc(&d, &base_of(file))?;
                let rep = lens_diagram_rep(&l);
                Ok(to_canonical_json(&serde_json::json!({
                    "apex": doc_for_category(&rep.apex),
                    "to-dom": doc_for_functor(&rep.to_dom),
                    "to-cod": doc_for_functor(&rep.to_cod),
                    "get": doc_for_functor(&rep.get),
                })))
            }
            other => Err(Error::Document {
                detail: format!(
                    "span-rep applies to cofunctors, Mealy morphisms and lenses, not {}",
                    other.kind()
                ),
            }),
        },
        Command::FakePullback { left, right } => {
            let f = load_lens(left)?;
            let g = load_lens(right)?;
            Ok(to_canonical_json(&doc_for_span(&fake_pullback(&f, &g)?)))
        }
        Command::Product { left, right } => {
            let f = load_lens(left)?;
            let g = load_lens(right)?;
            let prod = lensb_product(&f, &g)?;
            Ok(to_canonical_json(&serde_json::json!({
                "product": doc_for_lens(&prod.product),
                "span": doc_for_span(&prod.span),
                "proj-left": doc_for_functor(&prod.proj_left),
                "proj-right": doc_for_functor(&prod.proj_right),
            })))
        }
        Command::Apply { which, file, bound } => match which {
            Adjoint::M => {
                let s = load_span(file)?;
                Ok(to_canonical_json(&doc_for_symlens(&apply_m(&s)?)))
            }
            Adjoint::R => {
                let s = load_symlens(file)?;
                Ok(to_canonical_json(&doc_for_span(&apply_r(&s)?)))
            }
            Adjoint::L => {
                let s = load_symlens(file)?;
                Ok(to_canonical_json(&doc_for_span(&apply_l(&s, *bound)?)))
            }
        },
        Command::Dagger { file } => {
            let s = load_symlens(file)?;
            Ok(to_canonical_json(&doc_for_symlens(&s.dagger())))
        }
        Command::Embed { target, file } => {
            let l = load_lens(file)?;
            match target {
                EmbedTarget::Sym => Ok(to_canonical_json(&doc_for_symlens(&embed_lens_sym(&l)))),
                EmbedTarget::Span => {
                    Ok(to_canonical_json(&doc_for_span(&lenscalc::span::embed_lens_spn(&l))))
                }
            }
        }
        Command::Check2cell { src, tgt, cell } => {
            let cell_doc = match load_document(cell)? {
                Document::TwoCell(d) => d,
                other => {
                    return Err(Error::Document {
                        detail: format!(
                            "{}: expected a 2-cell, found {}",
                            cell.display(),
                            other.kind()
                        ),
                    })
                }
            };
            match (load_document(src)?, load_document(tgt)?) {
                (Document::Span(s), Document::Span(t)) => {
                    let s = span_from_doc(&s, &base_of(src))?;
                    let t = span_from_doc(&t, &base_of(tgt))?;
                    span_2cell_from_doc(&cell_doc, &base_of(cell), &s, &t)?;
                }
                (Document::SymLens(s), Document::SymLens(t)) => {
                    let s = symlens_from_doc(&s, &base_of(src))?;
                    let t = symlens_from_doc(&t, &base_of(tgt))?;
                    sym_2cell_from_doc(&cell_doc, &s, &t)?;
                }
                (a, b) => {
                    return Err(Error::Document {
                        detail: format!(
                            "check-2cell needs two spans or two symmetric lenses, found {} \
                             and {}",
                            a.kind(),
                            b.kind()
                        ),
                    })
                }
            }
            if summary {
                Ok(summary_line("2cell", "PASS"))
            } else {
                Ok(to_canonical_json(&serde_json::json!({ "valid": true })))
            }
        }
        Command::CheckAdjunction { a, b, seed, count, bound } => {
            let a = load_category(a)?;
            let b = load_category(b)?;
            let mut syms = Vec::new();
            let mut spans = Vec::new();
            for i in 0..*count as u64 {
                syms.push(gen_symlens(&GenConfig::new(seed + i), &a, &b)?);
                spans.push(gen_span(&GenConfig::new(seed + i + 104729), &a, &b)?);
            }
            let report = verify_adjunctions(&a, &b, &syms, &spans, *bound);
            let output = if summary {
                render_summary(&report)
            } else {
                to_canonical_json(&report)
            };
            if report.all_passed() {
                Ok(output)
            } else {
                write_output(cli.out.as_deref(), &output).map_err(|e| Error::Document {
                    detail: format!("cannot write output: {e}"),
                })?;
                Err(Error::shape("adjunction checks failed; see report"))
            }
        }
        Command::Gen { kind, files, seed, bound } => {
            let cfg = GenConfig { seed: *seed, closure_bound: *bound, ..GenConfig::new(*seed) };
            let need = |n: usize| -> lenscalc::Result<()> {
                if files.len() == n {
                    Ok(())
                } else {
                    Err(Error::Document {
                        detail: format!("gen: expected {n} category file(s), got {}", files.len()),
                    })
                }
            };
            match kind {
                GenKind::Category => {
                    need(0)?;
                    Ok(to_canonical_json(&doc_for_category(gen_category(&cfg)?.as_ref())))
                }
                GenKind::Lens => {
                    need(1)?;
                    let b = load_category(&files[0])?;
                    Ok(to_canonical_json(&doc_for_lens(&gen_lens(&cfg, &b)?)))
                }
                GenKind::Symlens => {
                    need(2)?;
                    let a = load_category(&files[0])?;
                    let b = load_category(&files[1])?;
                    Ok(to_canonical_json(&doc_for_symlens(&gen_symlens(&cfg, &a, &b)?)))
                }
                GenKind::Span => {
                    need(2)?;
                    let a = load_category(&files[0])?;
                    let b = load_category(&files[1])?;
                    Ok(to_canonical_json(&doc_for_span(&gen_span(&cfg, &a, &b)?)))
                }
            }
        }
    }
}

/// One `CHECK` line per check name, aggregated over instances: FAIL if any
/// instance fails it, SKIP if every occurrence was skipped, PASS otherwise.
fn render_summary(report: &AdjunctionReport) -> String {
    let mut names: Vec<&str> = Vec::new();
    for inst in &report.instances {
        for c in &inst.checks {
            if !names.contains(&c.name.as_str()) {
                names.push(&c.name);
            }
        }
    }
    let mut out = String::new();
    for name in names {
        let verdicts: Vec<&Verdict> = report
            .instances
            .iter()
            .flat_map(|i| i.checks.iter())
            .filter(|c| c.name == name)
            .map(|c| &c.verdict)
            .collect();
        let verdict = if verdicts.iter().any(|v| matches!(v, Verdict::Fail(_))) {
            "FAIL"
        } else if verdicts.iter().all(|v| matches!(v, Verdict::Skip(_))) {
            "SKIP"
        } else {
            "PASS"
        };
        out.push_str(&summary_line(name, verdict));
    }
    out
}
