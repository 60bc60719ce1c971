use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use scf_core::constructions::{build_phi_mu, build_psi, build_remark_family, phi_eq1, reset_channel};
use scf_core::document::{ChannelDocument, Rep};
use scf_core::regularize::{
    markovian_approximation, regularize_channel, regularize_generator, regularize_markovian_product, scan_path, track_eigenvalues,
    BudgetNorm, ChannelClass, RegularizationReport, Settings,
};
use scf_core::{MapKind, Superoperator};

use crate::report::{spectrum_of, ReportDocument};
use crate::{Budget, Class, Command, ConstructArgs, Construction, Example, Failure, RepArg, VerifyClass};

type Outcome = Result<(), Failure>;

pub fn run(command: Command, seed: u64) -> Outcome {
    let settings = Settings::with_seed(seed);
    match command {
        Command::Inspect { file } => inspect(&file, &settings),
        Command::Construct(args) => construct(args),
        Command::Regularize {
            file,
            eps,
            budget,
            class,
            out,
        } => regularize(&file, eps, budget, class, out.as_deref(), &settings),
        Command::Markovian {
            file,
            eps,
            product,
            out,
        } => markovian(&file, &product, eps, out.as_deref(), &settings),
        Command::Scan { from, to, grid, csv } => scan(&from, &to, grid, &csv, &settings),
        Command::Verify { file, class } => verify(&file, class, &settings),
    }
}

fn load(path: &Path) -> Result<(ChannelDocument, Superoperator), Failure> {
    let doc = ChannelDocument::load(path).map_err(|e| Failure::Invalid(e.to_string()))?;
    let s = doc.to_superop().map_err(|e| Failure::Invalid(e.to_string()))?;
    Ok((doc, s))
}

fn check_eps(eps: f64) -> Outcome {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Failure::Invalid(format!("--eps must be positive and finite, got {eps}")))
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn inspect(file: &Path, settings: &Settings) -> Outcome {
    let (doc, s) = load(file)?;
    ReportDocument {
        command: "inspect".into(),
        inputs: vec![display(file)],
        spectrum: spectrum_of(&s, settings.tol.gap)?,
        certificates: settings.certify(&s, doc.kind),
        regularization: None,
        scan: None,
        output: None,
        output_file: None,
    }
    .print();
    Ok(())
}

fn construct(args: ConstructArgs) -> Outcome {
    let (s, name) = match args.which {
        Construction::Psi { dim } => {
            if dim == 0 {
                return Err(Failure::Invalid("--dim must be positive".into()));
            }
            (build_psi(dim).superop, format!("psi({dim})"))
        }
        Construction::Example { name, mu } => match (name, mu) {
            (Example::Eq1, None) => (phi_eq1(), "eq1".into()),
            (Example::Reset, None) => (reset_channel(2), "reset".into()),
            (Example::PhiMu, Some(mu)) => (
                build_phi_mu(mu).map_err(|e| Failure::Invalid(e.to_string()))?,
                format!("phi-mu({mu})"),
            ),
            (Example::PhiMu, None) => return Err(Failure::Invalid("phi-mu needs --mu".into())),
            (_, Some(_)) => return Err(Failure::Invalid("--mu only applies to phi-mu".into())),
        },
        Construction::Remark { a, b } => (
            build_remark_family(a, b).map_err(|e| Failure::Invalid(e.to_string()))?,
            format!("remark({a}, {b})"),
        ),
    };
    let rep = match args.rep {
        RepArg::Superop => Rep::Superop,
        RepArg::Choi => Rep::Choi,
        RepArg::Kraus => Rep::Kraus,
        RepArg::Ptm => Rep::Ptm,
    };
    let (s, kind, name) = if args.generator {
        (markovian_approximation(&s, &Settings::default())?, MapKind::Generator, format!("{name} - id"))
    } else {
        (s, MapKind::Channel, name)
    };
    let doc = ChannelDocument::from_superop(&s, kind, rep)
        .map_err(|e| Failure::Invalid(e.to_string()))?
        .with_meta("construction", name);
    write_document(&doc, args.out.as_deref())
}

fn write_document(doc: &ChannelDocument, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => doc.store(path).map_err(|e| Failure::Invalid(e.to_string())),
        None => {
            println!("{}", doc.to_json());
            Ok(())
        }
    }
}

/// Emits the report for a command producing a new map, writing the map to
/// `out` or embedding it in the report.
fn finish(
    command: &str,
    inputs: Vec<String>,
    output: &Superoperator,
    kind: MapKind,
    report: RegularizationReport,
    out: Option<&Path>,
    settings: &Settings,
) -> Outcome {
    let doc = ChannelDocument::from_superop(output, kind, Rep::Superop)?;
    let (embedded, output_file) = match out {
        Some(path) => {
            write_document(&doc, Some(path))?;
            (None, Some(display(path)))
        }
        None => (Some(doc), None),
    };
    ReportDocument {
        command: command.into(),
        inputs,
        spectrum: spectrum_of(output, settings.tol.gap)?,
        certificates: report.output_cert.clone(),
        regularization: Some(report),
        scan: None,
        output: embedded,
        output_file,
    }
    .print();
    Ok(())
}

fn regularize(file: &Path, eps: f64, budget: Budget, class: Class, out: Option<&Path>, settings: &Settings) -> Outcome {
    check_eps(eps)?;
    let (doc, s) = load(file)?;
    let budget = match budget {
        Budget::Fro => BudgetNorm::Fro,
        Budget::Diamond => BudgetNorm::DiamondUpper,
    };
    let (output, report) = match doc.kind {
        MapKind::Channel => {
            let class = match class {
                Class::Auto => ChannelClass::Auto,
                Class::Cptp => ChannelClass::Cptp,
                Class::Unital => ChannelClass::Unital,
                Class::Ptp => ChannelClass::Ptp,
            };
            regularize_channel(&s, eps, budget, class, settings)?
        }
        MapKind::Generator => {
            if !matches!(class, Class::Auto) {
                return Err(Failure::Invalid("--class applies to channels only".into()));
            }
            regularize_generator(&s, eps, budget, settings)?
        }
    };
    finish("regularize", vec![display(file)], &output, doc.kind, report, out, settings)
}

fn markovian(file: &Path, product: &[PathBuf], eps: f64, out: Option<&Path>, settings: &Settings) -> Outcome {
    check_eps(eps)?;
    let mut inputs = Vec::new();
    let mut generators = Vec::new();
    for path in std::iter::once(file).chain(product.iter().map(PathBuf::as_path)) {
        let (doc, s) = load(path)?;
        if doc.kind != MapKind::Generator {
            return Err(Failure::Invalid(format!("{} is not a generator document", path.display())));
        }
        inputs.push(display(path));
        generators.push(s);
    }
    let (output, report) = regularize_markovian_product(&generators, eps, settings)?;
    finish("markovian", inputs, &output, MapKind::Channel, report, out, settings)
}

fn scan(from: &Path, to: &Path, grid: usize, csv: &Path, settings: &Settings) -> Outcome {
    if grid < 2 {
        return Err(Failure::Invalid("--grid must be at least 2".into()));
    }
    let (from_doc, x) = load(from)?;
    let (_, z) = load(to)?;
    if x.n() != z.n() {
        return Err(Failure::Invalid(format!("dimension mismatch: {} vs {}", x.n(), z.n())));
    }
    let report = scan_path(&x, &z, grid, settings.tol.gap)?;

    let tracked = track_eigenvalues(&report.spectra);
    let width = tracked.first().map_or(0, Vec::len);
    let mut text = String::from("t");
    for k in 0..width {
        write!(text, ",re_{k},im_{k}").unwrap();
    }
    text.push_str(",gap\n");
    for ((t, row), gap) in report.grid.iter().zip(&tracked).zip(&report.gaps) {
        write!(text, "{t}").unwrap();
        for z in row {
            write!(text, ",{},{}", z.re, z.im).unwrap();
        }
        writeln!(text, ",{gap}").unwrap();
    }
    std::fs::write(csv, text).map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", csv.display())))?;

    ReportDocument {
        command: "scan".into(),
        inputs: vec![display(from), display(to)],
        spectrum: spectrum_of(&x, settings.tol.gap)?,
        certificates: settings.certify(&x, from_doc.kind),
        regularization: None,
        scan: Some(report),
        output: None,
        output_file: Some(display(csv)),
    }
    .print();
    Ok(())
}

fn verify(file: &Path, class: VerifyClass, settings: &Settings) -> Outcome {
    let (_, s) = load(file)?;
    let kind = match class {
        VerifyClass::Gksl => MapKind::Generator,
        _ => MapKind::Channel,
    };
    let cert = settings.certify(&s, kind);
    let passed = match class {
        VerifyClass::Cptp => cert.flags.cptp(),
        VerifyClass::Unital => cert.flags.unital_cptp(),
        VerifyClass::Gksl => cert.flags.gksl,
    };
    ReportDocument {
        command: "verify".into(),
        inputs: vec![display(file)],
        spectrum: spectrum_of(&s, settings.tol.gap)?,
        certificates: cert,
        regularization: None,
        scan: None,
        output: None,
        output_file: None,
    }
    .print();
    if passed {
        Ok(())
    } else {
        let name = match class {
            VerifyClass::Cptp => "cptp",
            VerifyClass::Unital => "unital",
            VerifyClass::Gksl => "gksl",
        };
        Err(Failure::NotCertified(format!("{} does not certify as {name}", file.display())))
    }
}
