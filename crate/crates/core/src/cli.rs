//! Command-line harness: runs the verification pipelines with chosen
//! parameters and emits deterministic reports (text or JSON) plus exit
//! status. Exit codes: 0 all checks pass, 1 a mathematical check failed,
//! 2 usage or schema error. Timing goes to stderr so reports stay
//! byte-identical across runs.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructions::{
    build_crossing, build_osz_algebras, build_r, build_reduced_model, build_theorem_witnesses,
    collapsed_crossing, identity_bimodule_cl, identity_bimodule_ks, lemma_witnesses, sum_of_u,
    u_element, Sign,
};
use crate::dastruct::{
    add, box_tensor_da, compose, find_isomorphism, identity_morphism, reduce,
    verify_homomorphism, verify_homotopy_equivalence, verify_structure, zero_morphism, Bimod,
    Bounds, IsoResult,
};
use crate::pathalg::{ideal_membership, ideal_span, kernel_of_hom_bounded, AlgebraElement};
use crate::schema;

#[derive(Parser, Debug)]
#[command(
    name = "quiver-da",
    about = "Exact path-algebra and DA-bimodule verification harness",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AlgebraName {
    Ks,
    B,
    Cl,
    Clbot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SignArg {
    Pos,
    Neg,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Pos => Sign::Positive,
            SignArg::Neg => Sign::Negative,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Flavor {
    Ks,
    Osz,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ObjectName {
    Ks,
    B,
    Cl,
    Clbot,
    R,
    Rprime,
    P,
    N,
    RestR,
    RestRprime,
    IndP,
    IndN,
    Z,
    Zprime,
    IdKs,
    IdCl,
}

#[derive(Args, Clone, Debug)]
pub struct BoundArgs {
    /// Path-length bound for bounded algebra statements.
    #[arg(long, default_value_t = 8)]
    pub maxlen: usize,
    /// Maximum number of algebra inputs fed to one operation.
    #[arg(long, default_value_t = 3)]
    pub max_inputs: usize,
    /// Length bound on basis paths used as operation inputs.
    #[arg(long, default_value_t = 4)]
    pub basis_len: usize,
    /// Expansion bound for parametric power families.
    #[arg(long, default_value_t = 4)]
    pub k_max: i64,
    /// Composition depth limit for pairings and reductions.
    #[arg(long, default_value_t = 16)]
    pub depth_limit: usize,
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        Bounds {
            max_inputs: self.max_inputs,
            basis_len: self.basis_len,
            k_max: self.k_max,
            depth_limit: self.depth_limit,
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report (or dumped object) to a file instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Confluence, associativity, grading, centrality checks for a built-in
    /// algebra; the bottom-graded corner additionally gets the bounded
    /// kernel identity for the quotient map.
    VerifyAlgebra {
        #[arg(long, value_enum)]
        name: AlgebraName,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full bimodule-equivalence pipeline at one crossing: structure
    /// equations on both sides, the reduction certificate, the morphism
    /// conditions for both witness maps, mutual inverseness, and the
    /// cancellation identities.
    VerifyTheorem2 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compose crossing bimodules along a braid word (left to right),
    /// optionally reduce, and report graded generator counts.
    Braid {
        #[arg(long)]
        m: usize,
        /// Nonzero integers: sign is the crossing sign, magnitude the index.
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Flavor::Ks)]
        flavor: Flavor,
        /// Skip the final reduction.
        #[arg(long)]
        no_reduce: bool,
        /// Compare against a second braid word up to isomorphism after
        /// reduction.
        #[arg(long)]
        isomorphic_to: Option<String>,
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Serialize a built-in object to JSON.
    Dump {
        #[arg(long, value_enum)]
        object: ObjectName,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, value_enum, default_value_t = SignArg::Pos)]
        sign: SignArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Load a JSON object, re-running every validation.
    Load {
        #[arg(long)]
        path: std::path::PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportLine {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<ReportLine>,
    pub passed: bool,
}

impl Report {
    fn new(command: &str, parameters: BTreeMap<String, String>) -> Report {
        Report { command: command.into(), parameters, checks: Vec::new(), passed: true }
    }

    fn push(&mut self, check: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(ReportLine { check: check.into(), passed, detail: detail.into() });
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => {
                let mut s = format!("# {}\n", self.command);
                for (k, v) in &self.parameters {
                    s.push_str(&format!("#   {k} = {v}\n"));
                }
                for line in &self.checks {
                    s.push_str(&format!(
                        "{} {}{}\n",
                        if line.passed { "PASS" } else { "FAIL" },
                        line.check,
                        if line.detail.is_empty() {
                            String::new()
                        } else {
                            format!(" ({})", line.detail)
                        }
                    ));
                }
                s.push_str(&format!("{}\n", if self.passed { "ALL PASS" } else { "FAILED" }));
                s
            }
        }
    }
}

fn emit(text: &str, output: &OutputArgs) -> Result<(), String> {
    match &output.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| format!("writing {path:?}: {e}")),
    }
}

/// Runs a parsed command; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let started = std::time::Instant::now();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    code
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::VerifyAlgebra { name, m, bounds, output } => {
            let report = verify_algebra_report(name, m, &bounds).map_err(|e| e.to_string())?;
            emit(&report.render(output.format), &output)?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::VerifyTheorem2 { m, i, sign, bounds, output } => {
            if m < 2 || i == 0 || i >= m {
                return Err(format!("need m >= 2 and 1 <= i <= m-1, got m={m}, i={i}"));
            }
            let report =
                verify_theorem2_report(m, i, sign.into(), &bounds).map_err(|e| e.to_string())?;
            emit(&report.render(output.format), &output)?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Braid { m, word, flavor, no_reduce, isomorphic_to, bounds, output } => {
            let report = braid_report(
                m,
                &word,
                flavor,
                !no_reduce,
                isomorphic_to.as_deref(),
                &bounds,
            )?;
            emit(&report.render(output.format), &output)?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Dump { object, m, i, sign, output } => {
            let text = dump_object(object, m, i, sign.into())?;
            emit(&text, &output)?;
            Ok(0)
        }
        Command::Load { path, output } => {
            let report = load_report(&path)?;
            emit(&report.render(output.format), &output)?;
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

fn params(entries: &[(&str, String)]) -> BTreeMap<String, String> {
    entries.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn verify_algebra_report(
    name: AlgebraName,
    m: usize,
    bounds: &BoundArgs,
) -> Result<Report, crate::pathalg::PathAlgError> {
    let maxlen = bounds.maxlen;
    let mut report = Report::new(
        "verify-algebra",
        params(&[
            ("name", format!("{name:?}")),
            ("m", m.to_string()),
            ("maxlen", maxlen.to_string()),
        ]),
    );
    let algs = build_osz_algebras(m)?;
    let alg = match name {
        AlgebraName::Ks => algs.a.clone(),
        AlgebraName::B => algs.b.clone(),
        AlgebraName::Cl => algs.cl.clone(),
        AlgebraName::Clbot => algs.cl_bot.clone(),
    };

    let conf = alg.check_confluence(maxlen.max(6));
    report.push(
        "confluence of the rewriting system",
        conf.passed(),
        format!("{} overlaps resolved", conf.checked_pairs),
    );

    let basis = alg.basis(3.min(maxlen));
    let mut assoc = true;
    'assoc: for x in &basis {
        for y in &basis {
            for z in &basis {
                let (xe, ye, ze) = (
                    AlgebraElement::from_path(&alg, x.clone()),
                    AlgebraElement::from_path(&alg, y.clone()),
                    AlgebraElement::from_path(&alg, z.clone()),
                );
                let l = xe.multiply(&ye)?.multiply(&ze)?;
                let r = xe.multiply(&ye.multiply(&ze)?)?;
                if l != r {
                    assoc = false;
                    break 'assoc;
                }
            }
        }
    }
    report.push(
        "associativity on bounded basis triples",
        assoc,
        format!("{} basis paths", basis.len()),
    );

    let mut unit_ok = true;
    let mut graded_ok = true;
    for x in alg.basis(maxlen.min(6)) {
        let xe = AlgebraElement::from_path(&alg, x.clone());
        if AlgebraElement::unit(&alg).multiply(&xe)? != xe
            || xe.multiply(&AlgebraElement::unit(&alg))? != xe
        {
            unit_ok = false;
        }
        for y in alg.basis(3) {
            let prod = xe.multiply(&AlgebraElement::from_path(&alg, y.clone()))?;
            if let Some((_, _, g)) = prod.homogeneous_data() {
                if g != x.grading(&alg.quiver).add(&y.grading(&alg.quiver))? {
                    graded_ok = false;
                }
            }
        }
    }
    report.push("idempotent sum acts as the unit", unit_ok, "");
    report.push("grading additivity on products", graded_ok, "");

    match name {
        AlgebraName::Ks => {
            let dim = alg.basis(maxlen).len();
            report.push(
                "finite dimension",
                dim == 4 * m - 3,
                format!("dimension {dim}"),
            );
        }
        AlgebraName::B | AlgebraName::Cl | AlgebraName::Clbot => {
            let r = match name {
                AlgebraName::B => 1..=m,
                _ => 1..=m,
            };
            let mut central = true;
            let mut powers = true;
            for i in r {
                let u = u_element(&alg, i);
                for x in alg.basis(4) {
                    let xe = AlgebraElement::from_path(&alg, x);
                    if u.multiply(&xe)? != xe.multiply(&u)? {
                        central = false;
                    }
                }
                for n in 1..=5 {
                    if u.pow(n)?.is_zero() {
                        powers = false;
                    }
                }
            }
            report.push("central elements commute with the bounded basis", central, "");
            report.push("powers of the central elements stay nonzero", powers, "N <= 5");
        }
    }

    if matches!(name, AlgebraName::Cl) {
        let keep: std::collections::BTreeSet<usize> = (0..m).collect();
        let cmp = algs.b.compare_corner(&keep, &algs.cl, 2 * maxlen as i64);
        report.push(
            "corner presentation matches the literal corner degreewise",
            cmp.passed(),
            format!("{} graded buckets", cmp.buckets_checked),
        );
    }

    if matches!(name, AlgebraName::Clbot) {
        theorem1_checks(&mut report, &algs, m, maxlen)?;
    }
    Ok(report)
}

fn theorem1_checks(
    report: &mut Report,
    algs: &crate::constructions::OszAlgebras,
    m: usize,
    maxlen: usize,
) -> Result<(), crate::pathalg::PathAlgError> {
    let cl = &algs.cl_bot;
    let total = sum_of_u(cl, m);

    report.push(
        "quotient map is a validated graded homomorphism",
        true,
        "checked at construction",
    );
    report.push(
        "quotient map hits every bounded basis path",
        algs.phi.is_surjective_bounded(4, 4),
        "",
    );

    // ideal spanned by the total central element maps to zero
    let span = ideal_span(cl, &[total.clone()], maxlen);
    let mut ideal_in_kernel = true;
    for x in cl.basis(maxlen.saturating_sub(2)) {
        let prod = AlgebraElement::from_path(cl, x).multiply(&total)?;
        if !algs.phi.apply(&prod)?.is_zero() {
            ideal_in_kernel = false;
        }
    }
    report.push("the ideal lies in the kernel", ideal_in_kernel, "");

    // bounded kernel lies in the ideal; the spanning bound is doubled so
    // the loop-generator replacement stays inside it
    let half = maxlen;
    let kernel = kernel_of_hom_bounded(&algs.phi, half);
    let wide_span = ideal_span(cl, &[total.clone()], 2 * maxlen);
    let mut kernel_in_ideal = true;
    let mut first_bad = String::new();
    for v in &kernel {
        if !wide_span.contains(v) {
            kernel_in_ideal = false;
            first_bad = v.display();
            break;
        }
    }
    report.push(
        "the bounded kernel lies in the ideal",
        kernel_in_ideal,
        if kernel_in_ideal {
            format!("{} kernel vectors to length {half}", kernel.len())
        } else {
            format!("counterexample {first_bad}")
        },
    );
    let _ = span;

    // the corner decomposition generates the same ideal
    let e = |w: &str| -> AlgebraElement {
        AlgebraElement::from_path(cl, crate::pathalg::parse_path(&cl.quiver, w).unwrap())
    };
    let mut gens = vec![e("R1 L1")];
    for i in 1..=m.saturating_sub(2) {
        gens.push(e(&format!("L{i} R{i}")).plus(&e(&format!("R{} L{}", i + 1, i + 1)))?);
    }
    gens.push(e(&format!("L{} R{}", m - 1, m - 1)).plus(&u_element(cl, m))?);
    let mut decomp_ok = gens.len() == m;
    for g in &gens {
        decomp_ok &= ideal_membership(&[total.clone()], g, maxlen)?;
    }
    decomp_ok &= ideal_membership(&gens, &total, maxlen)?;
    report.push(
        "the ideal decomposes into the corner generators",
        decomp_ok,
        format!("{} generators", gens.len()),
    );

    let mut squares = true;
    for i in 1..=m {
        squares &= ideal_membership(&[total.clone()], &u_element(cl, i).pow(2)?, maxlen)?;
    }
    report.push("squares of the central elements lie in the ideal", squares, "");
    Ok(())
}

fn verify_theorem2_report(
    m: usize,
    i: usize,
    sign: Sign,
    bound_args: &BoundArgs,
) -> Result<Report, crate::dastruct::DaError> {
    let bounds = bound_args.bounds();
    let mut report = Report::new(
        "verify-theorem2",
        params(&[
            ("m", m.to_string()),
            ("i", i.to_string()),
            ("sign", sign.as_str().into()),
        ]),
    );
    let algs = build_osz_algebras(m)?;

    let r = build_r(&algs.a, i, sign)?;
    let rep = verify_structure(&r, &bounds);
    report.push("structure equation: zigzag-side crossing bimodule", rep.passed(), detail(&rep));

    let p = build_crossing(&algs, m, i, sign)?;
    let rep = verify_structure(&p, &bounds);
    report.push("structure equation: strands-side crossing bimodule", rep.passed(), detail(&rep));

    let w = lemma_witnesses(&algs, m, i, sign)?;
    let rep = verify_structure(&w.rest, &bounds);
    report.push("structure equation: restricted bimodule", rep.passed(), detail(&rep));
    let rep = verify_structure(&w.model, &bounds);
    report.push("structure equation: reduced model", rep.passed(), detail(&rep));

    let z0 = zero_morphism(&w.model, &w.model, 1)?;
    let hrep = verify_homotopy_equivalence(&w.f, &w.g, &z0, &w.t)?;
    report.push(
        "reduction witnesses: g∘f = id, f∘g = id + dT, T^2 = 0",
        hrep.passed(),
        hrep.first_failure().unwrap_or("").to_string(),
    );
    let gf = compose(&w.g, &w.f)?;
    report.push(
        "projection after inclusion is the identity on the nose",
        gf.table_eq(&identity_morphism(&w.model)),
        "",
    );

    let red = reduce(&w.rest, &bounds)?;
    let iso = find_isomorphism(&red.reduced, &w.model, 200_000);
    report.push(
        "machine reduction matches the reduced model up to relabeling",
        matches!(iso, IsoResult::Found(_)),
        format!("{} cancellation steps", red.steps.len()),
    );
    if i < m - 1 {
        let step = &red.steps[0];
        let count = |arity: usize| {
            step.transferred
                .iter()
                .filter(|(j, _, _)| *j == arity)
                .map(|(_, s, t)| (s, t))
                .collect::<std::collections::BTreeSet<_>>()
                .len()
        };
        report.push(
            "transferred arrow counts (3 one-input, 6 two-input)",
            count(2) == 3 && count(3) == 6,
            format!("{} and {}", count(2), count(3)),
        );
    }

    let tw = build_theorem_witnesses(&algs, m, i, sign)?;
    let rep = verify_structure(&tw.induced, &bounds);
    report.push("structure equation: induced bimodule", rep.passed(), detail(&rep));

    let fwd = add(&tw.iota, &tw.h)?;
    let bwd = add(&tw.iota_prime, &tw.h_prime)?;
    let mrep = verify_homomorphism(&fwd, &bounds)?;
    report.push(
        "morphism conditions for the forward witness",
        mrep.passed(),
        mrep.failure.clone().unwrap_or_default(),
    );
    let mrep = verify_homomorphism(&bwd, &bounds)?;
    report.push(
        "morphism conditions for the backward witness",
        mrep.passed(),
        mrep.failure.clone().unwrap_or_default(),
    );
    report.push(
        "witnesses are mutually inverse",
        compose(&bwd, &fwd)?.table_eq(&identity_morphism(&tw.model))
            && compose(&fwd, &bwd)?.table_eq(&identity_morphism(&tw.induced)),
        "",
    );
    report.push(
        "cancellation identities of the correction terms",
        compose(&tw.h_prime, &tw.iota)?.table_eq(&compose(&tw.iota_prime, &tw.h)?)
            && compose(&tw.h, &tw.iota_prime)?.table_eq(&compose(&tw.iota, &tw.h_prime)?)
            && compose(&tw.h_prime, &tw.h)?.is_zero()
            && compose(&tw.h, &tw.h_prime)?.is_zero(),
        "",
    );
    report.push(
        "witness maps preserve the homological and collapsed gradings",
        true,
        "enforced by morphism validation at construction",
    );
    Ok(report)
}

fn detail(rep: &crate::dastruct::StructureReport) -> String {
    match &rep.failure {
        None => format!("{} instances", rep.instances_checked),
        Some(f) => format!("failed at {} on ({})", f.generator, f.inputs.join(", ")),
    }
}

fn parse_word(m: usize, word: &str) -> Result<Vec<(usize, Sign)>, String> {
    let mut out = Vec::new();
    for tok in word.split([' ', ',']).filter(|t| !t.is_empty()) {
        let v: i64 = tok
            .parse()
            .map_err(|e| format!("braid letter {tok}: {e}"))?;
        if v == 0 || v.unsigned_abs() as usize >= m {
            return Err(format!("braid letter {v} out of range for m = {m}"));
        }
        out.push((
            v.unsigned_abs() as usize,
            if v > 0 { Sign::Positive } else { Sign::Negative },
        ));
    }
    if out.is_empty() {
        return Err("empty braid word".into());
    }
    Ok(out)
}

fn braid_bimodule(
    m: usize,
    word: &[(usize, Sign)],
    flavor: Flavor,
    do_reduce: bool,
    bounds: &Bounds,
) -> Result<(Bimod, bool), String> {
    let algs = build_osz_algebras(m).map_err(|e| e.to_string())?;
    let mut bounded = false;
    // Window for expanding power families: wide enough that every input the
    // bounded structure sweep derives (including one merged product and the
    // internal power growth across the word) stays inside it.
    let window = 2 * (bounds.basis_len + word.len()) + 2;
    let mut factors: Vec<Bimod> = Vec::new();
    for &(i, sign) in word {
        let f = match flavor {
            Flavor::Ks => build_r(&algs.a, i, sign).map_err(|e| e.to_string())?,
            Flavor::Osz => {
                bounded = true;
                let c = collapsed_crossing(&algs, m, i, sign).map_err(|e| e.to_string())?;
                Arc::new(
                    c.concretize(window, window as i64)
                        .map_err(|e| e.to_string())?,
                )
            }
        };
        factors.push(f);
    }
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = box_tensor_da(&acc, f, bounds.depth_limit).map_err(|e| e.to_string())?;
    }
    if do_reduce {
        let red = reduce(&acc, bounds).map_err(|e| e.to_string())?;
        acc = red.reduced;
    }
    Ok((acc, bounded))
}

fn braid_report(
    m: usize,
    word: &str,
    flavor: Flavor,
    do_reduce: bool,
    other: Option<&str>,
    bound_args: &BoundArgs,
) -> Result<Report, String> {
    if m < 2 {
        return Err(format!("m = {m} < 2"));
    }
    let bounds = bound_args.bounds();
    let mut report = Report::new(
        "braid",
        params(&[
            ("m", m.to_string()),
            ("word", word.into()),
            ("flavor", format!("{flavor:?}")),
            ("reduce", do_reduce.to_string()),
        ]),
    );
    let letters = parse_word(m, word)?;
    let (bm, bounded) = braid_bimodule(m, &letters, flavor, do_reduce, &bounds)?;
    if bounded {
        report.push(
            "note: strand-side families expanded to a bounded window",
            true,
            format!("input length <= {}", 2 * (bounds.basis_len + letters.len()) + 2),
        );
    }
    let mut counts: BTreeMap<(i64, String), usize> = BTreeMap::new();
    for g in &bm.generators {
        *counts
            .entry((g.hom_degree, format!("{:?}", g.grading)))
            .or_default() += 1;
    }
    report.push(
        "generator count",
        true,
        format!(
            "{} generators: {}",
            bm.generators.len(),
            counts
                .iter()
                .map(|((h, g), n)| format!("hom {h}, degree {g}: {n}"))
                .collect::<Vec<_>>()
                .join("; ")
        ),
    );
    let rep = verify_structure(&bm, &bounds);
    report.push("structure equation of the composite", rep.passed(), detail(&rep));

    if let Some(second) = other {
        let letters2 = parse_word(m, second)?;
        let (bm2, _) = braid_bimodule(m, &letters2, flavor, true, &bounds)?;
        let budget = 500_000;
        let outcome = match find_isomorphism(&bm, &bm2, budget) {
            IsoResult::Found(_) => ("isomorphic", true),
            IsoResult::NotFound => ("no isomorphism exists", false),
            IsoResult::BudgetExceeded => ("not found within budget", false),
        };
        report.push(
            format!("isomorphic to the bimodule of \"{second}\""),
            outcome.1,
            outcome.0,
        );
    }
    Ok(report)
}

fn dump_object(object: ObjectName, m: usize, i: usize, sign: Sign) -> Result<String, String> {
    let to_err = |e: crate::dastruct::DaError| e.to_string();
    let algs = build_osz_algebras(m).map_err(|e| e.to_string())?;
    let json = match object {
        ObjectName::Ks => serde_json::to_string_pretty(&schema::algebra_to_json(&algs.a)),
        ObjectName::B => serde_json::to_string_pretty(&schema::algebra_to_json(&algs.b)),
        ObjectName::Cl => serde_json::to_string_pretty(&schema::algebra_to_json(&algs.cl)),
        ObjectName::Clbot => serde_json::to_string_pretty(&schema::algebra_to_json(&algs.cl_bot)),
        other => {
            if i == 0 || i >= m {
                return Err(format!("need 1 <= i <= m-1, got i = {i}"));
            }
            let bm: Bimod = match other {
                ObjectName::R => build_r(&algs.a, i, Sign::Positive).map_err(to_err)?,
                ObjectName::Rprime => build_r(&algs.a, i, Sign::Negative).map_err(to_err)?,
                ObjectName::P => build_crossing(&algs, m, i, Sign::Positive).map_err(to_err)?,
                ObjectName::N => build_crossing(&algs, m, i, Sign::Negative).map_err(to_err)?,
                ObjectName::RestR => {
                    let r = build_r(&algs.a, i, Sign::Positive).map_err(to_err)?;
                    crate::dastruct::restrict_scalars(&algs.phi, &r).map_err(to_err)?
                }
                ObjectName::RestRprime => {
                    let r = build_r(&algs.a, i, Sign::Negative).map_err(to_err)?;
                    crate::dastruct::restrict_scalars(&algs.phi, &r).map_err(to_err)?
                }
                ObjectName::IndP => {
                    let c = collapsed_crossing(&algs, m, i, Sign::Positive).map_err(to_err)?;
                    crate::dastruct::induct_scalars(&algs.phi, &c).map_err(to_err)?
                }
                ObjectName::IndN => {
                    let c = collapsed_crossing(&algs, m, i, Sign::Negative).map_err(to_err)?;
                    crate::dastruct::induct_scalars(&algs.phi, &c).map_err(to_err)?
                }
                ObjectName::Z => build_reduced_model(&algs, m, i, Sign::Positive).map_err(to_err)?,
                ObjectName::Zprime => {
                    build_reduced_model(&algs, m, i, Sign::Negative).map_err(to_err)?
                }
                ObjectName::IdKs => identity_bimodule_ks(&algs.a).map_err(to_err)?,
                ObjectName::IdCl => identity_bimodule_cl(&algs.cl, m).map_err(to_err)?,
                _ => unreachable!(),
            };
            let _ = sign;
            serde_json::to_string_pretty(&schema::bimodule_to_json(&bm))
        }
    };
    json.map(|s| s + "\n").map_err(|e| e.to_string())
}

fn load_report(path: &std::path::Path) -> Result<Report, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("reading {path:?}: {e}"))?;
    let mut report = Report::new(
        "load",
        params(&[("path", format!("{}", path.display()))]),
    );
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("parsing {path:?}: {e}"))?;
    if value.get("generators").is_some() {
        let j: schema::BimoduleJson =
            serde_json::from_value(value).map_err(|e| format!("bimodule schema: {e}"))?;
        let bm = schema::bimodule_from_json(&j).map_err(|e| format!("bimodule validation: {e}"))?;
        report.push(
            "bimodule loaded and revalidated",
            true,
            format!(
                "{}: {} generators, {} arrow families",
                bm.name,
                bm.generators.len(),
                bm.arrows.len()
            ),
        );
        // light structural sweep so a loaded table is not taken on faith
        let rep = verify_structure(&bm, &Bounds { max_inputs: 2, basis_len: 3, ..Bounds::default() });
        report.push("structure equation (light sweep)", rep.passed(), detail(&rep));
    } else {
        let j: schema::AlgebraJson =
            serde_json::from_value(value).map_err(|e| format!("algebra schema: {e}"))?;
        let alg = schema::algebra_from_json(&j).map_err(|e| format!("algebra validation: {e}"))?;
        let conf = alg.check_confluence(6);
        report.push(
            "algebra loaded and revalidated",
            conf.passed(),
            format!("{}: {} rules", alg.name, alg.rules.len()),
        );
    }
    Ok(report)
}

/// Dumps then reloads an object, for round-trip tests.
pub fn round_trip_bimodule(bm: &Bimod) -> Result<bool, String> {
    let j = schema::bimodule_to_json(bm);
    let text = serde_json::to_string(&j).map_err(|e| e.to_string())?;
    let j2: schema::BimoduleJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let back = schema::bimodule_from_json(&j2).map_err(|e| e.to_string())?;
    Ok(back.table_eq(bm))
}

/// Runs the CLI on an argument list (without the binary name), writing the
/// report to a scratch file and returning (exit code, report text). Used by
/// integration tests.
pub fn run_captured(args: &[&str]) -> (i32, String) {
    use clap::Parser;
    static SEQ: std::sync::atomic::AtomicUsize = std::sync::atomic::AtomicUsize::new(0);
    let n = SEQ.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    let tmp = std::env::temp_dir().join(format!(
        "quiver-da-{}-{n}.out",
        std::process::id()
    ));
    let mut full: Vec<String> = vec!["quiver-da".into()];
    full.extend(args.iter().map(|s| s.to_string()));
    full.push("--out".into());
    full.push(tmp.display().to_string());
    let cli = match Cli::try_parse_from(&full) {
        Ok(c) => c,
        Err(e) => return (2, e.to_string()),
    };
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            let _ = std::fs::remove_file(&tmp);
            return (2, msg);
        }
    };
    let text = std::fs::read_to_string(&tmp).unwrap_or_default();
    let _ = std::fs::remove_file(&tmp);
    (code, text)
}

/// Entry point used by the binary.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    // flush stdout on success paths handled by print!; ensure stderr order
    let code = run(cli);
    let _ = std::io::stdout().flush();
    code
}
