//! One function per subcommand. Each returns the rendered report and whether
//! some check failed.

use markov_dyck::census::{census_with, CensusOptions, PeriodicCensus};
use markov_dyck::conjugacy::{round_trip, ResolvingReport, RoundTrip};
use markov_dyck::graphs::{check_rotational_homogeneity, GraphExport, Homogeneity};
use markov_dyck::sampling::{lifted_admissible_word, MmeReport, PRNG};
use markov_dyck::series::zeta_from_census;
use markov_dyck::spectra::{fibonacci_entropy, structured_charpoly_report, StructuredReport, SUPPORTED_HEIGHTS};
use markov_dyck::zeta::{zeta_periodic_data, Outcome, ZetaReport};
use markov_dyck::{
    build_companion, build_rotational, entropy, fibonacci_graph, mme_checks, perron_root, sample_path, AdjacencyMatrix,
    BlockCode, CertifiedReal, Graph, HeightData, HeightReduction, ParryChain, PowerSeries, Window,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Command, Format, RunConfig, Source};
use crate::CliError;

pub const DEFAULT_ORDER: usize = 8;
pub const DEFAULT_WINDOWS: usize = 1000;
pub const DEFAULT_WINDOW_LENGTH: usize = 100;
pub const DEFAULT_COPIES: usize = 2;
pub const DEFAULT_SAMPLE_STEPS: usize = 10_000;

/// Rendered report plus the verification verdict.
#[derive(Debug)]
pub struct Output {
    pub body: String,
    pub mismatch: bool,
}

pub fn run(config: &RunConfig) -> Result<Output, CliError> {
    if config.format == Format::Dot && config.command != Command::Graph {
        return Err(CliError::Input(format!(
            "format `dot` is only available for `graph`, not `{}`",
            config.command.name()
        )));
    }
    match config.command {
        Command::Graph => graph(config),
        Command::Entropy => entropy_command(config),
        Command::Zeta => zeta(config),
        Command::Census => census_command(config),
        Command::Conjugacy => conjugacy(config),
        Command::Sample => sample(config),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("records serialize");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn rotational(source: &Source) -> Graph {
    match source {
        Source::Data(d) => build_rotational(d),
        Source::Fibonacci => fibonacci_graph(),
    }
}

fn matrix_lines(m: &AdjacencyMatrix) -> String {
    m.rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            format!("  {}\n", cells.join(" "))
        })
        .collect()
}

fn budget_options(config: &RunConfig) -> CensusOptions {
    CensusOptions {
        budget: config.budget,
        ..CensusOptions::default()
    }
}

// ---------------------------------------------------------------- graph

#[derive(Serialize)]
struct CompanionExport {
    matrix: AdjacencyMatrix,
    graph: GraphExport,
}

#[derive(Serialize)]
struct GraphReport {
    source: String,
    vertices: usize,
    edges: usize,
    strongly_connected: bool,
    homogeneity: Homogeneity,
    rotational: GraphExport,
    companion: Option<CompanionExport>,
}

fn graph(config: &RunConfig) -> Result<Output, CliError> {
    let g = rotational(&config.source);
    if config.format == Format::Dot {
        return Ok(Output {
            body: g.to_dot(),
            mismatch: false,
        });
    }
    let homogeneity = check_rotational_homogeneity(&g);
    let companion = match &config.source {
        Source::Data(d) => Some(build_companion(d)),
        Source::Fibonacci => None,
    };
    let mismatch = match &config.source {
        Source::Data(d) => homogeneity.data.as_ref() != Some(d),
        Source::Fibonacci => false,
    };
    let report = GraphReport {
        source: config.source.name(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        strongly_connected: g.is_strongly_connected(),
        homogeneity,
        rotational: g.export(),
        companion: companion.map(|(graph, matrix)| CompanionExport {
            matrix,
            graph: graph.export(),
        }),
    };
    let body = match config.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = Vec::new();
            let mut add = |name: &str, export: &GraphExport| {
                for e in &export.edges {
                    rows.push(vec![
                        name.to_string(),
                        e.id.to_string(),
                        e.name.clone(),
                        export.vertices[e.source].name.clone(),
                        export.vertices[e.target].name.clone(),
                    ]);
                }
            };
            add("rotational", &report.rotational);
            if let Some(c) = &report.companion {
                add("companion", &c.graph);
            }
            csv_table(&["graph", "id", "edge", "source", "target"], rows)
        }
        Format::Text => {
            let mut s = format!(
                "graph {}\nvertices {}, edges {}, strongly connected {}\n",
                report.source, report.vertices, report.edges, report.strongly_connected
            );
            match &report.homogeneity.data {
                Some(d) => s.push_str(&format!("rotationally homogeneous with data ({d})\n")),
                None => s.push_str("not rotationally homogeneous\n"),
            }
            if let Some(c) = &report.companion {
                s.push_str("companion matrix:\n");
                s.push_str(&matrix_lines(&c.matrix));
            }
            s
        }
        Format::Dot => unreachable!("handled above"),
    };
    Ok(Output { body, mismatch })
}

// ---------------------------------------------------------------- entropy

#[derive(Serialize)]
struct ClosedForm {
    name: &'static str,
    value: f64,
    contained: bool,
}

#[derive(Serialize)]
struct EntropyReport {
    source: String,
    perron: Option<CertifiedReal>,
    entropy: CertifiedReal,
    value: f64,
    closed_forms: Vec<ClosedForm>,
    structured: Option<StructuredReport>,
    verified: bool,
    as_written_mismatch: bool,
}

fn encloses(e: &CertifiedReal, value: f64) -> bool {
    e.contains_f64(value) || e.distance_to(value) <= 4.0 * f64::EPSILON
}

fn entropy_command(config: &RunConfig) -> Result<Output, CliError> {
    let report = match &config.source {
        Source::Fibonacci => {
            let e = fibonacci_entropy();
            let closed = 3.0 * 2f64.ln() - 3f64.ln();
            EntropyReport {
                source: config.source.name(),
                perron: None,
                value: e.midpoint_f64(),
                closed_forms: vec![ClosedForm {
                    name: "3 log 2 - log 3",
                    value: closed,
                    contained: encloses(&e, closed),
                }],
                entropy: e,
                structured: None,
                verified: true,
                as_written_mismatch: false,
            }
        }
        Source::Data(d) => entropy_for_data(config, d)?,
    };
    let mismatch = !report.verified || report.as_written_mismatch;
    let body = match config.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut rows = vec![
                vec!["entropy".into(), format!("{:.17e}", report.value), String::new()],
                vec!["entropy_lower".into(), format!("{:.17e}", report.entropy.lower_f64()), String::new()],
                vec!["entropy_upper".into(), format!("{:.17e}", report.entropy.upper_f64()), String::new()],
            ];
            if let Some(p) = &report.perron {
                rows.push(vec!["perron".into(), format!("{:.17e}", p.midpoint_f64()), String::new()]);
            }
            for c in &report.closed_forms {
                rows.push(vec![c.name.into(), format!("{:.17e}", c.value), c.contained.to_string()]);
            }
            if let Some(s) = &report.structured {
                for r in &s.radicals {
                    let value = r.value.map(|v| format!("{v:.17e}")).unwrap_or_default();
                    rows.push(vec![format!("{} ({:?})", r.formula, r.reading), value, r.agrees.to_string()]);
                }
            }
            csv_table(&["quantity", "value", "check"], rows)
        }
        Format::Text => {
            let mut s = format!("entropy {}\n  value {:.12}\n  enclosure {}\n", report.source, report.value, report.entropy);
            if let Some(p) = &report.perron {
                s.push_str(&format!("  perron root {p}\n"));
            }
            for c in &report.closed_forms {
                s.push_str(&format!("  closed form {} = {:.12}: {}\n", c.name, c.value, verdict(c.contained)));
            }
            if let Some(st) = &report.structured {
                for d in &st.displays {
                    s.push_str(&format!("  display ({:?}) {}: {:?}\n", d.reading, d.text, d.verdict));
                }
                for r in &st.radicals {
                    let value = r.value.map_or("undefined".to_string(), |v| format!("{v:.12}"));
                    s.push_str(&format!(
                        "  {} ({:?}, {} branch) = {}: {}\n",
                        r.formula,
                        r.reading,
                        r.branch,
                        value,
                        verdict(r.agrees)
                    ));
                }
            }
            s
        }
        Format::Dot => unreachable!("rejected in run"),
    };
    Ok(Output { body, mismatch })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "agrees"
    } else {
        "differs"
    }
}

fn entropy_for_data(config: &RunConfig, d: &HeightData) -> Result<EntropyReport, CliError> {
    let perron = perron_root(&build_companion(d).1)?;
    let e = entropy(d)?;
    let log = |n: u32| f64::from(n + 1).ln();
    let c = d.counts();
    let mut closed_forms = Vec::new();
    let mut push = |name: &'static str, value: f64| {
        closed_forms.push(ClosedForm {
            name,
            value,
            contained: encloses(&e, value),
        })
    };
    match d.height() {
        0 => push("log(N+1)", log(c[0])),
        1 => push("(log(N+1) + log(M+1))/2", 0.5 * (log(c[0]) + log(c[1]))),
        _ => {}
    }
    if let (Some(n), true) = (d.constant_value(), d.height() > 0) {
        push("log(N+1), constant data", log(n));
    }
    let structured = if SUPPORTED_HEIGHTS.contains(&d.height()) {
        Some(structured_charpoly_report(d)?)
    } else {
        None
    };
    let verified = closed_forms.iter().all(|c| c.contained) && structured.as_ref().is_none_or(|s| s.verified());
    let as_written_mismatch = structured.as_ref().is_some_and(|s| s.as_written_mismatch());
    Ok(EntropyReport {
        source: config.source.name(),
        perron: Some(perron),
        value: e.midpoint_f64(),
        entropy: e,
        closed_forms,
        structured,
        verified,
        as_written_mismatch,
    })
}

// ---------------------------------------------------------------- zeta

#[derive(Serialize)]
struct CensusZeta {
    source: String,
    order: usize,
    census_zeta: PowerSeries,
}

fn outcome_text(o: &Outcome) -> String {
    match o {
        Outcome::Match => "match".into(),
        Outcome::Mismatch { order } => format!("mismatch at z^{order}"),
        Outcome::Undefined { reason } => format!("undefined ({reason})"),
    }
}

fn series_rows(columns: &[&PowerSeries], through: usize) -> Vec<Vec<String>> {
    (0..=through)
        .map(|k| {
            let mut row = vec![k.to_string()];
            row.extend(columns.iter().map(|s| {
                if k <= s.order() {
                    s.coeff(k).to_string()
                } else {
                    String::new()
                }
            }));
            row
        })
        .collect()
}

fn zeta(config: &RunConfig) -> Result<Output, CliError> {
    let order = config.order.unwrap_or(DEFAULT_ORDER);
    let n = config.n.unwrap_or(order);
    let options = budget_options(config);
    let d = match &config.source {
        Source::Fibonacci => {
            let census = census_with(&fibonacci_graph(), n, &options)?;
            let z = zeta_from_census(&census, order.min(n))?;
            let report = CensusZeta {
                source: config.source.name(),
                order: z.order(),
                census_zeta: z,
            };
            let body = match config.format {
                Format::Json => json(&report),
                Format::Csv => csv_table(&["k", "census"], series_rows(&[&report.census_zeta], report.order)),
                _ => format!("zeta {} from census\n  {}\n", report.source, report.census_zeta),
            };
            return Ok(Output { body, mismatch: false });
        }
        Source::Data(d) => d,
    };
    let (report, periodic, body_json) = match config.copies.filter(|&l| l > 1) {
        Some(copies) => {
            let tilde = d.repeated(copies)?;
            let census = census_with(&build_rotational(&tilde), n, &options)?;
            let p = zeta_periodic_data(d, copies, order, &census)?;
            let body = json(&p);
            (p.report.clone(), Some(p.excursions_periodic), body)
        }
        None => {
            let census = census_with(&build_rotational(d), n, &options)?;
            let r = ZetaReport::build(d, order, &census)?;
            let body = json(&r);
            (r, None, body)
        }
    };
    let mismatch = !report.verified() || report.as_written_mismatch() || periodic == Some(false);
    let body = match config.format {
        Format::Json => body_json,
        Format::Csv => csv_table(
            &["k", "zeta", "census"],
            series_rows(&[&report.zeta, &report.census], report.census_order),
        ),
        Format::Text => zeta_text(config, &report, periodic),
        Format::Dot => unreachable!("rejected in run"),
    };
    Ok(Output { body, mismatch })
}

fn zeta_text(config: &RunConfig, report: &ZetaReport, periodic: Option<bool>) -> String {
    let mut s = format!(
        "zeta {} (data {}) through z^{}\n  excursion zeta {}\n  census zeta    {}\n  verdict: {}\n",
        config.source.name(),
        report.data,
        report.census_order,
        report.zeta.truncate(report.census_order),
        report.census,
        match report.first_mismatch {
            None => "match".to_string(),
            Some(k) => format!("mismatch at z^{k}"),
        }
    );
    for c in &report.classes {
        s.push_str(&format!(
            "  class {} via {}: {}\n",
            c.class.name(),
            c.factor,
            outcome_text(&c.outcome)
        ));
    }
    for d in &report.displays {
        s.push_str(&format!(
            "  {} ({:?}) vs {}: {}\n",
            d.display,
            d.reading,
            d.reference,
            outcome_text(&d.outcome)
        ));
    }
    if let Some(p) = periodic {
        s.push_str(&format!("  excursion series periodic: {p}\n"));
    }
    s
}

// ---------------------------------------------------------------- census

#[derive(Serialize)]
struct CensusReport {
    source: String,
    n_max: usize,
    rows: PeriodicCensus,
    invariant_violations: Vec<String>,
}

fn census_command(config: &RunConfig) -> Result<Output, CliError> {
    let n = config.n.unwrap_or(DEFAULT_ORDER);
    let census = census_with(&rotational(&config.source), n, &budget_options(config))?;
    let report = CensusReport {
        source: config.source.name(),
        n_max: census.n_max(),
        invariant_violations: census.invariant_violations(),
        rows: census,
    };
    let rows = report.rows.rows().iter().map(|r| {
        vec![
            r.n.to_string(),
            r.total.to_string(),
            r.neutral.to_string(),
            r.negative.to_string(),
            r.positive.to_string(),
        ]
    });
    let body = match config.format {
        Format::Json => json(&report),
        Format::Csv => csv_table(&["n", "total", "neutral", "negative", "positive"], rows),
        Format::Text => {
            let mut s = format!("census {} up to n = {}\n", report.source, report.n_max);
            s.push_str("  n  total  neutral  negative  positive\n");
            for r in rows {
                s.push_str(&format!("  {}\n", r.join("  ")));
            }
            for v in &report.invariant_violations {
                s.push_str(&format!("  violation: {v}\n"));
            }
            s
        }
        Format::Dot => unreachable!("rejected in run"),
    };
    Ok(Output {
        body,
        mismatch: !report.invariant_violations.is_empty(),
    })
}

// ---------------------------------------------------------------- conjugacy

#[derive(Serialize)]
struct ReductionReport {
    copies: usize,
    lifted_data: HeightData,
    resolving: ResolvingReport,
    perron_lifted: CertifiedReal,
    perron_reduced: CertifiedReal,
    perron_gap: f64,
    perron_agree: bool,
}

#[derive(Serialize)]
struct ConjugacyReport {
    data: HeightData,
    prng: &'static str,
    seed: u64,
    windows: usize,
    window_length: usize,
    round_trip: RoundTrip,
    interior_rate: f64,
    reduction: ReductionReport,
}

fn conjugacy(config: &RunConfig) -> Result<Output, CliError> {
    let d = config.source.data(config.command)?;
    let windows = config.steps.unwrap_or(DEFAULT_WINDOWS);
    let length = config.n.unwrap_or(DEFAULT_WINDOW_LENGTH);
    let copies = config.copies.unwrap_or(DEFAULT_COPIES);

    let code = BlockCode::new(d);
    let chain = ParryChain::new(code.companion())?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut total = RoundTrip::default();
    for _ in 0..windows {
        let y = lifted_admissible_word(&code, &chain, length, &mut rng);
        total = total.merge(round_trip(&code, &Window::new(y))?);
    }

    let reduction = HeightReduction::new(d, copies)?;
    let perron_lifted = perron_root(&reduction.lifted().adjacency_matrix())?;
    let perron_reduced = perron_root(&reduction.reduced().adjacency_matrix())?;
    let perron_gap = (perron_lifted.midpoint_f64() - perron_reduced.midpoint_f64()).abs();
    let report = ConjugacyReport {
        data: d.clone(),
        prng: PRNG,
        seed: config.seed,
        windows,
        window_length: length,
        interior_rate: total.interior_rate(),
        round_trip: total,
        reduction: ReductionReport {
            copies,
            lifted_data: d.repeated(copies)?,
            resolving: reduction.resolving_check(),
            perron_agree: perron_gap <= 1e-9,
            perron_lifted,
            perron_reduced,
            perron_gap,
        },
    };
    let mismatch =
        report.round_trip.mismatches > 0 || !report.reduction.resolving.passed() || !report.reduction.perron_agree;
    let r = &report;
    let body = match config.format {
        Format::Json => json(r),
        Format::Csv => csv_table(
            &["quantity", "value"],
            [
                ("windows", r.windows.to_string()),
                ("window_length", r.window_length.to_string()),
                ("positions", r.round_trip.positions.to_string()),
                ("determined", r.round_trip.determined.to_string()),
                ("mismatches", r.round_trip.mismatches.to_string()),
                ("interior_rate", format!("{:.6}", r.interior_rate)),
                ("copies", r.reduction.copies.to_string()),
                ("resolving", r.reduction.resolving.passed().to_string()),
                ("perron_gap", format!("{:.3e}", r.reduction.perron_gap)),
            ]
            .into_iter()
            .map(|(k, v)| vec![k.to_string(), v]),
        ),
        Format::Text => format!(
            "conjugacy data ({}), {} seed {}\n  round trip: {} windows of length {}, {} of {} positions determined, {} mismatches\n  interior determined: {:.4}\n  height reduction x{} to ({}): homomorphism {}, right resolving {}, left resolving {}\n  Perron roots {} and {}: gap {:.3e}\n",
            r.data,
            r.prng,
            r.seed,
            r.windows,
            r.window_length,
            r.round_trip.determined,
            r.round_trip.positions,
            r.round_trip.mismatches,
            r.interior_rate,
            r.reduction.copies,
            r.reduction.lifted_data,
            r.reduction.resolving.homomorphism,
            r.reduction.resolving.right_resolving,
            r.reduction.resolving.left_resolving,
            r.reduction.perron_lifted,
            r.reduction.perron_reduced,
            r.reduction.perron_gap
        ),
        Format::Dot => unreachable!("rejected in run"),
    };
    Ok(Output { body, mismatch })
}

// ---------------------------------------------------------------- sample

#[derive(Serialize)]
struct SampleHeader<'a> {
    prng: &'static str,
    seed: u64,
    data: &'a HeightData,
    steps: usize,
    start: String,
}

#[derive(Serialize)]
struct SampleLetter<'a> {
    t: usize,
    letter: &'a str,
    phi: i64,
}

#[derive(Serialize)]
struct SampleFooter<'a> {
    report: &'a MmeReport,
}

fn sample(config: &RunConfig) -> Result<Output, CliError> {
    let d = config.source.data(config.command)?;
    let steps = config.steps.unwrap_or(DEFAULT_SAMPLE_STEPS);
    let code = BlockCode::new(d);
    let companion = code.companion();
    let chain = ParryChain::new(companion)?;
    let path = sample_path(&chain, companion, steps, config.seed);
    let report = mme_checks(d, steps, config.seed)?;
    let names: Vec<String> = companion.edges().iter().map(|e| e.label.to_string()).collect();
    let body = match config.format {
        Format::Json => {
            let mut s = json_line(&SampleHeader {
                prng: path.prng,
                seed: path.seed,
                data: d,
                steps,
                start: companion.vertices()[path.start].to_string(),
            });
            for (t, &e) in path.edges.iter().enumerate() {
                s.push_str(&json_line(&SampleLetter {
                    t,
                    letter: &names[e],
                    phi: code.phi(e),
                }));
            }
            s.push_str(&json_line(&SampleFooter { report: &report }));
            s
        }
        Format::Csv => csv_table(
            &["t", "letter", "phi"],
            path.edges
                .iter()
                .enumerate()
                .map(|(t, &e)| vec![t.to_string(), names[e].clone(), code.phi(e).to_string()]),
        ),
        Format::Text => {
            let letters: Vec<&str> = path.edges.iter().map(|&e| names[e].as_str()).collect();
            let f = &report.forward;
            let r = &report.reversed;
            format!(
                "{}\n# {} seed {}, {} steps, data ({})\n# fr(+1) {:.6}, fr(-1) {:.6}, expected fr(+1) {:.6}\n# entropy estimate {:.6}, log lambda {:.6}\n# decoded admissible {}, reversed check {}\n",
                letters.join(" "),
                report.prng,
                report.seed,
                report.steps,
                report.data,
                f.plus_weight_fraction,
                f.minus_weight_fraction,
                report.expected_plus_fraction,
                f.entropy_estimate,
                report.log_lambda,
                f.decoded_admissible,
                r.majority_holds && r.decoded_admissible && r.entropy_error <= report.tolerance
            )
        }
        Format::Dot => unreachable!("rejected in run"),
    };
    Ok(Output {
        body,
        mismatch: !report.passed(),
    })
}
