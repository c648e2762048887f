use std::fs;
use std::io::IsTerminal;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use surjtop_core::json::{self, Int, Signs};
use surjtop_core::{
    classify_presentation, cokernel, enumerate_systems, parse_assignment, smith_normal_form,
    twisted_matrix, AbelianGroup, CoefficientSystem, Error, Family, FamilyBuild, FamilyParams,
    FamilySpec, GroupOrder, ParseDiagnostic, Presentation,
};

use crate::render;
use crate::{Cli, Command, OutputArgs, ParamArgs, RangeArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// A CLI failure carrying its exit code: 1 usage, 2 parse/validation.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::MissingFamilyParameter(_) => CliError::usage(e.to_string()),
            other => CliError::input(other.to_string()),
        }
    }
}

impl From<ParseDiagnostic> for CliError {
    fn from(d: ParseDiagnostic) -> Self {
        CliError::input(d.to_string())
    }
}

/// Inclusive integer range for sweeps; `FromStr` accepts `a..b` or `a`.
#[derive(Clone, Copy, Debug)]
pub struct RangeArg {
    pub start: u64,
    pub end: u64,
}

impl RangeArg {
    fn values(self) -> impl Iterator<Item = u64> {
        self.start..=self.end
    }
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.parse::<u64>().map_err(|_| format!("invalid integer `{t}`"));
        if let Some((a, b)) = s.split_once("..") {
            let (start, end) = (parse(a)?, parse(b)?);
            if start > end {
                return Err(format!("empty range `{s}`"));
            }
            Ok(RangeArg { start, end })
        } else {
            let v = parse(s)?;
            Ok(RangeArg { start: v, end: v })
        }
    }
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Parse(input) => {
            let p = load_presentation(&input.input)?;
            emit(&input.output, parse_views(&p))?;
            Ok(0)
        }
        Command::H2 { input, alpha } => {
            let p = load_presentation(&input.input)?;
            let signs = match &alpha {
                Some(text) => parse_assignment(text, p.generators())?,
                None => CoefficientSystem::trivial(&p).signs().to_vec(),
            };
            let system = CoefficientSystem::new(&p, signs)?;
            emit(&input.output, h2_views(&p, &system)?)?;
            Ok(0)
        }
        Command::Systems(input) => {
            let p = load_presentation(&input.input)?;
            emit(&input.output, systems_views(&p))?;
            Ok(0)
        }
        Command::Classify { input, paranoid } => {
            let p = load_presentation(&input.input)?;
            let report = classify_presentation(&p, paranoid);
            let table = render_classification(&report);
            let json_text = report.to_json_string();
            emit(&input.output, (json_text, table))?;
            Ok(if report.hypothesis_ok { 0 } else { 3 })
        }
        Command::Family { name, params, output } => {
            let family = Family::from_str(&name).map_err(|e| CliError::usage(e.to_string()))?;
            let spec = FamilySpec { family, params: family_params(&params) };
            let build = spec.build()?;
            emit(&output, family_views(&spec, &build)?)?;
            Ok(0)
        }
        Command::Realize { a, b, c, output } => {
            let r = surjtop_core::realize_order(a, b, c)?;
            emit(&output, realize_views(a, b, c, &r))?;
            Ok(0)
        }
        Command::Sweep { family, ranges, output } => {
            let family = Family::from_str(&family).map_err(|e| CliError::usage(e.to_string()))?;
            emit(&output, sweep_views(family, &ranges)?)?;
            Ok(0)
        }
    }
}

fn family_params(args: &ParamArgs) -> FamilyParams {
    FamilyParams { k: args.k, l: args.l, p: args.p, q: args.q, j: args.j, n: args.n }
}

/// Inline text if it starts with `<`, otherwise a file path.
fn load_presentation(input: &str) -> Result<Presentation, CliError> {
    if input.trim_start().starts_with('<') {
        Ok(Presentation::parse(input)?)
    } else {
        let text = fs::read_to_string(input)
            .map_err(|e| CliError::input(format!("cannot read `{input}`: {e}")))?;
        Ok(Presentation::parse_file(&text)?)
    }
}

fn resolve_format(output: &OutputArgs) -> Result<Format, CliError> {
    if let Some(f) = output.format {
        return Ok(f);
    }
    if let Ok(value) = std::env::var("SURJTOP_FORMAT") {
        return match value.as_str() {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            other => Err(CliError::usage(format!(
                "SURJTOP_FORMAT must be `table` or `json`, got `{other}`"
            ))),
        };
    }
    if output.out.is_some() || !std::io::stdout().is_terminal() {
        Ok(Format::Json)
    } else {
        Ok(Format::Table)
    }
}

/// Renders `(json, table)` in the resolved format to stdout or `--out`.
fn emit(output: &OutputArgs, views: (String, String)) -> Result<(), CliError> {
    let (json_text, table_text) = views;
    let mut text = match resolve_format(output)? {
        Format::Json => json_text,
        Format::Table => table_text,
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    write_out(&output.out, &text)
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::input(format!("cannot write `{}`: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(view: &T) -> String {
    serde_json::to_string_pretty(view).expect("view serialization cannot fail")
}

// ---- per-command views ----------------------------------------------------

#[derive(Serialize)]
struct ParseView {
    presentation: String,
    generators: Vec<String>,
    relators: Vec<String>,
    delta: Vec<Vec<Int>>,
}

fn parse_views(p: &Presentation) -> (String, String) {
    let view = ParseView {
        presentation: p.to_string(),
        generators: p.generators().names().map(str::to_string).collect(),
        relators: p.relators().iter().map(|r| p.format_word(r)).collect(),
        delta: json::matrix(&p.exponent_matrix()),
    };
    let mut table = String::new();
    table.push_str(&format!("presentation: {p}\n"));
    table.push_str(&format!(
        "generators: {}\n",
        p.generators().names().collect::<Vec<_>>().join(", ")
    ));
    table.push_str(&format!("relators ({}):\n", p.num_relators()));
    for (i, r) in p.relators().iter().enumerate() {
        table.push_str(&format!("  r{} = {}\n", i + 1, p.format_word(r)));
    }
    table.push_str(&format!(
        "exponent matrix ({}x{}):\n{}",
        p.num_relators(),
        p.num_generators(),
        render::matrix_block(&p.exponent_matrix(), "  ")
    ));
    (to_json(&view), table)
}

enum OrderView {
    Finite(BigInt),
    Infinite,
}

impl OrderView {
    fn of(group: &AbelianGroup) -> Self {
        match group.order() {
            GroupOrder::Finite(n) => OrderView::Finite(n),
            GroupOrder::Infinite => OrderView::Infinite,
        }
    }
}

impl Serialize for OrderView {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            OrderView::Finite(n) => Int(n.clone()).serialize(serializer),
            OrderView::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

#[derive(Serialize)]
struct SystemView {
    label: Option<String>,
    signs: Signs,
}

fn system_view(p: &Presentation, system: &CoefficientSystem) -> SystemView {
    SystemView {
        label: system.label().map(|l| l.to_string()),
        signs: Signs::of(p.generators(), system),
    }
}

#[derive(Serialize)]
struct H2View {
    presentation: String,
    alpha: SystemView,
    delta: Vec<Vec<Int>>,
    delta_alpha: Vec<Vec<Int>>,
    snf_diag: Vec<Int>,
    h2: json::Group,
    order: OrderView,
}

fn h2_views(p: &Presentation, system: &CoefficientSystem) -> Result<(String, String), CliError> {
    let delta = p.exponent_matrix();
    let delta_alpha = twisted_matrix(p, system)?;
    let snf = smith_normal_form(&delta_alpha);
    let h2 = cokernel(&delta_alpha);
    let view = H2View {
        presentation: p.to_string(),
        alpha: system_view(p, system),
        delta: json::matrix(&delta),
        delta_alpha: json::matrix(&delta_alpha),
        snf_diag: snf.diag().iter().cloned().map(Int).collect(),
        h2: json::group(&h2),
        order: OrderView::of(&h2),
    };

    let mut table = String::new();
    table.push_str(&format!("presentation: {p}\n"));
    table.push_str(&format!("alpha: {}\n", system.describe(p.generators())));
    table.push_str(&format!("delta:\n{}", render::matrix_block(&delta, "  ")));
    table.push_str(&format!("delta^alpha:\n{}", render::matrix_block(&delta_alpha, "  ")));
    table.push_str(&format!(
        "snf diagonal: [{}]\n",
        snf.diag().iter().map(BigInt::to_string).collect::<Vec<_>>().join(", ")
    ));
    table.push_str(&format!("H^2: {h2}\n"));
    table.push_str(&format!("order: {}\n", h2.order()));
    Ok((to_json(&view), table))
}

#[derive(Serialize)]
struct SystemsListView {
    presentation: String,
    count: usize,
    systems: Vec<SystemView>,
}

fn systems_views(p: &Presentation) -> (String, String) {
    let systems = enumerate_systems(p);
    let view = SystemsListView {
        presentation: p.to_string(),
        count: systems.len(),
        systems: systems.iter().map(|s| system_view(p, s)).collect(),
    };

    let mut headers = vec!["#".to_string(), "label".to_string()];
    headers.extend(p.generators().names().map(str::to_string));
    let rows: Vec<Vec<String>> = systems
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = vec![
                (i + 1).to_string(),
                s.label().map(|l| l.to_string()).unwrap_or_else(|| "-".into()),
            ];
            row.extend(s.signs().iter().map(|sign| sign.to_string()));
            row
        })
        .collect();
    let mut table = String::new();
    table.push_str(&format!("presentation: {p}\n"));
    table.push_str(&format!("coefficient systems: {}\n", systems.len()));
    table.push_str(&render::aligned_table(&headers, &rows));
    (to_json(&view), table)
}

fn render_classification(report: &surjtop_core::ClassificationReport) -> String {
    let p = &report.presentation;
    let mut table = String::new();
    table.push_str(&format!("presentation: {p}\n"));
    if !report.hypothesis_ok {
        let hypothesis =
            surjtop_core::HypothesisReport { h2_untwisted: report.h2_untwisted.clone() };
        table.push_str(&format!(
            "hypothesis: FAILED — {}\n",
            hypothesis.failure_reason().unwrap_or_default()
        ));
        table.push_str(&format!("H^2 (untwisted): {}\n", report.h2_untwisted));
        table.push_str("no per-system reports: the counting identities need finite odd order\n");
        return table;
    }
    table.push_str(&format!("hypothesis: ok (H^2 = {})\n", report.h2_untwisted));
    table.push_str(&format!("systems: {}\n\n", report.reports.len()));

    let mut headers = vec!["label".to_string()];
    headers.extend(p.generators().names().map(str::to_string));
    headers.extend(
        ["delta^alpha", "H^2", "c_star", "c_free", "strong"].map(str::to_string),
    );
    let rows: Vec<Vec<String>> = report
        .reports
        .iter()
        .map(|r| {
            let mut row = vec![r
                .system
                .label()
                .map(|l| l.to_string())
                .unwrap_or_else(|| "-".into())];
            row.extend(r.system.signs().iter().map(|s| s.to_string()));
            row.push(render::matrix_inline(&r.delta_alpha));
            row.push(r.h2.to_string());
            row.push(r.c_star.to_string());
            row.push(r.c_free.to_string());
            row.push(r.strongly_surjective.to_string());
            row
        })
        .collect();
    table.push_str(&render::aligned_table(&headers, &rows));
    table.push_str(&format!(
        "\ntotals: {} free classes, {} strongly surjective\n",
        report.totals.free_classes, report.totals.strongly_surjective
    ));
    table.push_str(&format!(
        "per system, the one class that is not strongly surjective is the {}\n",
        surjtop_core::AlphaReport::NON_SURJECTIVE_WITNESS
    ));
    table
}

struct ParamsView(Vec<(&'static str, u64)>);

impl ParamsView {
    fn of(family: Family, params: &FamilyParams) -> Self {
        let lookup = |name: &str| match name {
            "k" => params.k,
            "l" => params.l,
            "p" => params.p,
            "q" => params.q,
            "j" => params.j,
            "n" => params.n,
            _ => None,
        };
        ParamsView(
            family
                .parameters()
                .iter()
                .map(|name| (*name, lookup(name).expect("validated by build")))
                .collect(),
        )
    }

    fn describe(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
    }
}

impl Serialize for ParamsView {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, value) in &self.0 {
            map.serialize_entry(name, value)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct FamilyView {
    family: String,
    params: ParamsView,
    presentation: String,
    a: Int,
    b: Int,
    system: SystemView,
    predicted_order: Int,
    computed_order: Int,
    verified: bool,
}

fn computed_twisted_order(p: &Presentation, system: &CoefficientSystem) -> Result<BigInt, CliError> {
    let h2 = cokernel(&twisted_matrix(p, system)?);
    match h2.order() {
        GroupOrder::Finite(n) => Ok(n),
        GroupOrder::Infinite => {
            Err(CliError::input("twisted cohomology is infinite".to_string()))
        }
    }
}

fn family_views(spec: &FamilySpec, build: &FamilyBuild) -> Result<(String, String), CliError> {
    let p = &build.presentation;
    let relator = &p.relators()[0];
    let (a, b) = (relator.exponent_sum(0), relator.exponent_sum(1));
    let computed = computed_twisted_order(p, &build.system)?;
    let verified = computed == build.predicted_order;
    let params = ParamsView::of(spec.family, &spec.params);
    let view = FamilyView {
        family: build.family.name().to_string(),
        params: ParamsView(params.0.clone()),
        presentation: p.to_string(),
        a: Int(a.clone()),
        b: Int(b.clone()),
        system: system_view(p, &build.system),
        predicted_order: Int(build.predicted_order.clone()),
        computed_order: Int(computed.clone()),
        verified,
    };

    let mut table = String::new();
    table.push_str(&format!("family: {} ({})\n", build.family, params.describe()));
    table.push_str(&format!("presentation: {p}\n"));
    table.push_str(&format!("exponent sums: a = {a}, b = {b}\n"));
    table.push_str(&format!("system: {}\n", build.system.describe(p.generators())));
    table.push_str(&format!(
        "order {} under {}, {}\n",
        computed,
        build.system.describe(p.generators()),
        if verified { "verified" } else { "MISMATCH with prediction" }
    ));
    Ok((to_json(&view), table))
}

#[derive(Serialize)]
struct RealizeView {
    a: u64,
    b: u64,
    c: u64,
    family: String,
    presentation: String,
    system: SystemView,
    order: Int,
    verified: bool,
}

fn realize_views(a: u64, b: u64, c: u64, r: &surjtop_core::Realization) -> (String, String) {
    let p = &r.presentation;
    let view = RealizeView {
        a,
        b,
        c,
        family: r.family.name().to_string(),
        presentation: p.to_string(),
        system: system_view(p, &r.system),
        order: Int(r.order.clone()),
        verified: true,
    };
    let mut table = String::new();
    table.push_str(&format!("realize: a={a} b={b} c={c} via {}\n", r.family));
    table.push_str(&format!("presentation: {p}\n"));
    table.push_str(&format!(
        "order {} under {}, verified\n",
        r.order,
        r.system.describe(p.generators())
    ));
    (to_json(&view), table)
}

#[derive(Serialize)]
struct SweepRow {
    params: ParamsView,
    a: Int,
    b: Int,
    predicted_order: Int,
    computed_order: Int,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct SweepView {
    family: String,
    rows: Vec<SweepRow>,
}

fn sweep_views(family: Family, ranges: &RangeArgs) -> Result<(String, String), CliError> {
    let required = family.parameters();
    let given: [(&str, Option<crate::commands::RangeArg>); 6] = [
        ("k", ranges.k),
        ("l", ranges.l),
        ("p", ranges.p),
        ("q", ranges.q),
        ("j", ranges.j),
        ("n", ranges.n),
    ];
    for (name, value) in &given {
        if value.is_some() && !required.contains(name) {
            return Err(CliError::usage(format!(
                "family {family} does not take parameter --{name}"
            )));
        }
    }
    let mut axes = Vec::new();
    for name in required {
        let Some(range) = given.iter().find(|(n, _)| n == name).and_then(|(_, r)| *r) else {
            return Err(CliError::usage(format!(
                "sweep over family {family} needs --{name} (a value or an inclusive range a..b)"
            )));
        };
        axes.push((*name, range));
    }

    // cartesian product in lexicographic parameter order
    let mut combos: Vec<Vec<(&'static str, u64)>> = vec![Vec::new()];
    for (name, range) in &axes {
        let mut next = Vec::new();
        for combo in &combos {
            for value in range.values() {
                let mut extended = combo.clone();
                extended.push((name, value));
                next.push(extended);
            }
        }
        combos = next;
    }

    let rows: Vec<SweepRow> = combos
        .par_iter()
        .filter_map(|combo| {
            let mut params = FamilyParams::default();
            for (name, value) in combo {
                match *name {
                    "k" => params.k = Some(*value),
                    "l" => params.l = Some(*value),
                    "p" => params.p = Some(*value),
                    "q" => params.q = Some(*value),
                    "j" => params.j = Some(*value),
                    "n" => params.n = Some(*value),
                    _ => unreachable!(),
                }
            }
            // parameter combinations outside the family's domain are skipped
            let build = FamilySpec { family, params }.build().ok()?;
            let relator = &build.presentation.relators()[0];
            let computed =
                computed_twisted_order(&build.presentation, &build.system).ok()?;
            Some(SweepRow {
                params: ParamsView(combo.clone()),
                a: Int(relator.exponent_sum(0)),
                b: Int(relator.exponent_sum(1)),
                predicted_order: Int(build.predicted_order.clone()),
                computed_order: Int(computed.clone()),
                matches: computed == build.predicted_order,
            })
        })
        .collect();

    let view = SweepView { family: family.name().to_string(), rows };

    let mut headers: Vec<String> = axes.iter().map(|(n, _)| n.to_string()).collect();
    headers.extend(["a", "b", "predicted", "computed", "match"].map(str::to_string));
    let body: Vec<Vec<String>> = view
        .rows
        .iter()
        .map(|row| {
            let mut cells: Vec<String> =
                row.params.0.iter().map(|(_, v)| v.to_string()).collect();
            cells.push(row.a.0.to_string());
            cells.push(row.b.0.to_string());
            cells.push(row.predicted_order.0.to_string());
            cells.push(row.computed_order.0.to_string());
            cells.push(row.matches.to_string());
            cells
        })
        .collect();
    let mut table = String::new();
    table.push_str(&format!("sweep: family {family}, {} rows\n", view.rows.len()));
    table.push_str(&render::aligned_table(&headers, &body));
    Ok((to_json(&view), table))
}
