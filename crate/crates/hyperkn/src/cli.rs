//! Command-line front end: parse curve specs, dispatch subcommands, render
//! reports. JSON is the machine format; the text rendering is derived from
//! the emitted JSON value, never computed separately.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::action::{action_matrix, rep_from_profile, trace_closed_form, TraceReport};
use crate::automorphisms::{classify_group, AutError, AutProfile};
use crate::curve::{CurveSpecFile, CurveSummary, HyperellipticCurve};
use crate::cyclo::CycloElem;
use crate::decomposition::{decompose_with, DecompError, DecompositionReport};
use crate::groups::{character_table, CharacterTable, FiniteGroup, GroupFamily};
use crate::linalg::Matrix;
use crate::reduction::{PqTable, Reducer};
use crate::selftest::{run_selftests, SelftestReport};

/// Errors carry the process exit code taxonomy:
/// 2 = parse/config error, 3 = invalid curve, 4 = undetermined automorphism
/// group, 5 = internal consistency failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    InvalidCurve(String),
    Undetermined(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::InvalidCurve(_) => 3,
            CliError::Undetermined(_) => 4,
            CliError::Internal(_) => 5,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse-error",
            CliError::InvalidCurve(_) => "invalid-curve",
            CliError::Undetermined(_) => "undetermined-automorphism-group",
            CliError::Internal(_) => "internal-consistency-failure",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::InvalidCurve(m)
            | CliError::Undetermined(m)
            | CliError::Internal(m) => m,
        }
    }

    /// Structured rendering for the error stream.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": {
                "kind": self.kind(),
                "exit_code": self.exit_code(),
                "message": self.message(),
            }
        })
        .to_string()
    }
}

impl From<DecompError> for CliError {
    fn from(e: DecompError) -> CliError {
        match e {
            DecompError::Aut(AutError::Undetermined { .. }) => {
                CliError::Undetermined(e.to_string())
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<AutError> for CliError {
    fn from(e: AutError) -> CliError {
        match e {
            AutError::Undetermined { .. } => CliError::Undetermined(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub enum InputSource {
    Path(String),
    Stdin,
    Inline(String),
}

#[derive(Clone, Debug)]
pub enum Command {
    Aut { input: InputSource },
    Classes { family: String, param: u64 },
    Chartab { family: String, param: u64 },
    Action { input: InputSource },
    Decompose { input: InputSource },
    PqTable { input: InputSource, m_max: i64 },
    Selftest,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
}

fn read_input(source: &InputSource) -> Result<String, CliError> {
    match source {
        InputSource::Path(p) if p == "-" => read_input(&InputSource::Stdin),
        InputSource::Path(p) => std::fs::read_to_string(Path::new(p))
            .map_err(|e| CliError::Parse(format!("cannot read {p}: {e}"))),
        InputSource::Stdin => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
        InputSource::Inline(s) => Ok(s.clone()),
    }
}

fn load_curve(source: &InputSource) -> Result<HyperellipticCurve, CliError> {
    let text = read_input(source)?;
    let spec: CurveSpecFile =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("curve spec: {e}")))?;
    spec.build()
        .map_err(|e| CliError::InvalidCurve(e.to_string()))
}

pub fn parse_family(name: &str, param: u64) -> Result<GroupFamily, CliError> {
    match name.to_ascii_lowercase().as_str() {
        "cyclic" | "z" => Ok(GroupFamily::Cyclic(param)),
        "dihedral" | "d" => Ok(GroupFamily::Dihedral(param)),
        "dicyclic" | "dic" => Ok(GroupFamily::Dicyclic(param)),
        "u" => Ok(GroupFamily::U(param)),
        other => Err(CliError::Parse(format!(
            "unknown group family `{other}`; expected cyclic | dihedral | dicyclic | u"
        ))),
    }
}

// ---- report shapes ----

#[derive(Serialize, Deserialize)]
struct ElementEntry {
    element: String,
    map: String,
}

#[derive(Serialize, Deserialize)]
struct AutReport {
    curve: CurveSummary,
    curve_hash: String,
    k: u64,
    l: u64,
    twist_subgroup_order: u64,
    flip_exists: bool,
    c: Option<CycloElem>,
    c_squared: Option<CycloElem>,
    epsilon: Option<CycloElem>,
    group: String,
    group_family: GroupFamily,
    generator_assignment: String,
    elements: Vec<ElementEntry>,
    unrepresentable_c_squared: Vec<CycloElem>,
}

fn describe_map(map: &crate::automorphisms::AlgebraMap, n: usize) -> String {
    let (a, delta) = map.t_image();
    let (b, e) = map.u_image(n);
    let t_part = if delta == 1 {
        format!("t -> ({a})*t")
    } else {
        format!("t -> ({a})*t^-1")
    };
    let u_part = if e == 0 {
        format!("u -> ({b})*u")
    } else {
        format!("u -> ({b})*t^{e}*u")
    };
    format!("{t_part}, {u_part}")
}

fn aut_report(curve: &HyperellipticCurve, profile: &AutProfile) -> AutReport {
    AutReport {
        curve: CurveSummary::of(curve),
        curve_hash: curve.content_hash(),
        k: profile.k,
        l: profile.l,
        twist_subgroup_order: 2 * profile.k,
        flip_exists: profile.flip_exists,
        c: profile.c.clone(),
        c_squared: profile.c_squared.clone(),
        epsilon: profile.epsilon.clone(),
        group: profile.group_id.label(),
        group_family: profile.group_id,
        generator_assignment: "y -> twist phi_xi, x -> flip psi_c".to_string(),
        elements: profile
            .element_maps
            .iter()
            .map(|(g, m)| ElementEntry {
                element: g.display(),
                map: describe_map(m, curve.n()),
            })
            .collect(),
        unrepresentable_c_squared: profile.unrepresentable_c2.clone(),
    }
}

#[derive(Serialize, Deserialize)]
struct ClassEntry {
    representative: String,
    size: usize,
    members: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ClassesReport {
    group: String,
    order: usize,
    requested_family: Option<String>,
    class_count: usize,
    classes: Vec<ClassEntry>,
}

#[derive(Serialize, Deserialize)]
struct IrrepEntry {
    label: String,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct ChartabReport {
    group: String,
    order: usize,
    note: String,
    classes: Vec<ClassEntry>,
    irreps: Vec<IrrepEntry>,
    /// values[irrep][class], exact.
    values: Vec<Vec<CycloElem>>,
    /// Human-readable rendering of the same matrix.
    display: Vec<Vec<String>>,
}

/// Symbolic rendering of common character values: rationals, ±i, and the
/// real/imaginary conjugate combinations 2cos / 2i·sin. The conjugate-pair
/// forms are cached per field order.
pub fn trig_display(v: &CycloElem) -> String {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};

    if let Some(q) = v.to_rational() {
        return q.to_string();
    }
    static FORMS: OnceLock<Mutex<HashMap<u64, Vec<(CycloElem, CycloElem)>>>> = OnceLock::new();
    let m = v.order();
    let cache = FORMS.get_or_init(|| Mutex::new(HashMap::new()));
    let forms = {
        let mut guard = cache.lock().unwrap();
        guard
            .entry(m)
            .or_insert_with(|| {
                let z = crate::cyclo::root_of_unity(m, 1);
                let mut pow = CycloElem::one().promote(m);
                let mut out = Vec::with_capacity((m / 2) as usize);
                for _ in 1..=(m / 2) {
                    pow = pow.mul(&z);
                    let inv = pow.conj();
                    out.push((pow.add(&inv), pow.sub(&inv)));
                }
                out
            })
            .clone()
    };
    for (a, (plus, minus)) in forms.iter().enumerate() {
        if v == plus {
            return format!("2cos(2pi*{}/{m})", a + 1);
        }
        if v == minus {
            return format!("2i*sin(2pi*{}/{m})", a + 1);
        }
    }
    if *v == crate::cyclo::imaginary_unit() {
        return "i".to_string();
    }
    if *v == crate::cyclo::imaginary_unit().neg() {
        return "-i".to_string();
    }
    let digits: u32 = std::env::var("HYPERKN_APPROX_DIGITS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let (re, im) = v.approx_complex(digits);
    format!("{v} (~ {re}{}{}i)", if im < 0.0 { "" } else { "+" }, im)
}

fn chartab_report(family: GroupFamily) -> Result<ChartabReport, CliError> {
    let group = FiniteGroup::new(family).map_err(|e| CliError::Parse(e.to_string()))?;
    let table = character_table(&group).map_err(|e| CliError::Internal(e.to_string()))?;
    table
        .verify_orthogonality()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(chartab_report_from(&group, &table))
}

fn chartab_report_from(group: &FiniteGroup, table: &CharacterTable) -> ChartabReport {
    let note = match group.family() {
        GroupFamily::Dicyclic(_) => {
            "one-dimensional labels rho_1..rho_4 are this library's stable order; \
             external listings use omega_0..omega_3 with parity-dependent assignments"
                .to_string()
        }
        _ => String::new(),
    };
    ChartabReport {
        group: group.family().label(),
        order: group.order(),
        note,
        classes: table
            .classes
            .iter()
            .map(|c| ClassEntry {
                representative: c.representative.display(),
                size: c.members.len(),
                members: c.members.iter().map(|m| m.display()).collect(),
            })
            .collect(),
        irreps: table
            .irreps
            .iter()
            .map(|r| IrrepEntry {
                label: r.label.clone(),
                dim: r.dim,
            })
            .collect(),
        values: table.values.clone(),
        display: table
            .values
            .iter()
            .map(|row| row.iter().map(trig_display).collect())
            .collect(),
    }
}

#[derive(Serialize, Deserialize)]
struct GeneratorMatrixEntry {
    generator: String,
    matrix: Matrix,
    trace: CycloElem,
}

#[derive(Serialize, Deserialize)]
struct ActionReport {
    curve: CurveSummary,
    curve_hash: String,
    group: String,
    generators: Vec<GeneratorMatrixEntry>,
    traces: TraceReport,
    /// Pretty rows of the flip matrix restricted to (ω₁..ω_{2n}), when a
    /// flip exists and the block is small enough to eyeball.
    flip_block_display: Option<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
struct PqReport {
    curve_hash: String,
    n: usize,
    m_max: i64,
    p_table: PqTable,
    q_table: PqTable,
}

fn run_command(config: &RunConfig) -> Result<Value, CliError> {
    match &config.command {
        Command::Aut { input } => {
            let curve = load_curve(input)?;
            let profile = classify_group(&curve)?;
            let report = aut_report(&curve, &profile);
            Ok(serde_json::to_value(report).expect("report serializes"))
        }
        Command::Classes { family, param } => {
            let family = parse_family(family, *param)?;
            let group = FiniteGroup::new(family).map_err(|e| CliError::Parse(e.to_string()))?;
            let classes = group.conjugacy_classes();
            let report = ClassesReport {
                group: group.family().label(),
                order: group.order(),
                requested_family: group.requested_family().map(|f| f.label()),
                class_count: classes.len(),
                classes: classes
                    .iter()
                    .map(|c| ClassEntry {
                        representative: c.representative.display(),
                        size: c.members.len(),
                        members: c.members.iter().map(|m| m.display()).collect(),
                    })
                    .collect(),
            };
            Ok(serde_json::to_value(report).expect("report serializes"))
        }
        Command::Chartab { family, param } => {
            let family = parse_family(family, *param)?;
            let report = chartab_report(family)?;
            Ok(serde_json::to_value(report).expect("report serializes"))
        }
        Command::Action { input } => {
            let curve = load_curve(input)?;
            let profile = classify_group(&curve)?;
            let reducer = Reducer::new(curve.clone());
            let rep = rep_from_profile(&reducer, &profile)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            let traces = trace_closed_form(&reducer, &profile);
            let mut generators = vec![GeneratorMatrixEntry {
                generator: "y (twist)".to_string(),
                trace: rep.y_matrix.trace(),
                matrix: rep.y_matrix.clone(),
            }];
            let mut flip_block_display = None;
            if let Some(flip) = &profile.flip_gen {
                let m = action_matrix(&reducer, flip);
                let n = curve.n();
                flip_block_display = Some(
                    (1..=2 * n)
                        .map(|i| (1..=2 * n).map(|j| trig_display(m.get(i, j))).collect())
                        .collect(),
                );
                generators.push(GeneratorMatrixEntry {
                    generator: "x (flip)".to_string(),
                    trace: m.trace(),
                    matrix: m,
                });
            }
            let report = ActionReport {
                curve: CurveSummary::of(&curve),
                curve_hash: curve.content_hash(),
                group: profile.group_id.label(),
                generators,
                traces,
                flip_block_display,
            };
            Ok(serde_json::to_value(report).expect("report serializes"))
        }
        Command::Decompose { input } => {
            let curve = load_curve(input)?;
            let profile = classify_group(&curve)?;
            let reducer = Reducer::new(curve.clone());
            let report: DecompositionReport = decompose_with(&reducer, &profile)?;
            Ok(serde_json::to_value(report).expect("report serializes"))
        }
        Command::PqTable { input, m_max } => {
            let curve = load_curve(input)?;
            if *m_max < 0 {
                return Err(CliError::Parse("m_max must be nonnegative".to_string()));
            }
            let reducer = Reducer::new(curve.clone());
            let report = PqReport {
                curve_hash: curve.content_hash(),
                n: curve.n(),
                m_max: *m_max,
                p_table: reducer.p_table(*m_max),
                q_table: reducer.q_table(*m_max + 2 * curve.n() as i64 + 1),
            };
            Ok(serde_json::to_value(report).expect("report serializes"))
        }
        Command::Selftest => {
            let report: SelftestReport = run_selftests();
            let value = serde_json::to_value(&report).expect("report serializes");
            if report.failed > 0 {
                // Emit the report through the error channel with exit 5.
                return Err(CliError::Internal(format!(
                    "selftest failures: {}",
                    serde_json::to_string(&value).unwrap()
                )));
            }
            Ok(value)
        }
    }
}

/// Execute a command and render its report in the requested format.
pub fn run(config: &RunConfig) -> Result<String, CliError> {
    let value = run_command(config)?;
    Ok(match config.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("value renders");
            s.push('\n');
            s
        }
        OutputFormat::Text => render_text(&value),
    })
}

/// Text rendering derived from the JSON value.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render_value(value, 0, &mut out);
    out
}

fn is_scalar(v: &Value) -> bool {
    matches!(
        v,
        Value::Null | Value::Bool(_) | Value::Number(_) | Value::String(_)
    )
}

fn scalar_to_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_value(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                if is_scalar(v) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_to_string(v)));
                } else if v.as_array().map(|a| a.is_empty()).unwrap_or(false) {
                    out.push_str(&format!("{pad}{k}: []\n"));
                } else if v
                    .as_array()
                    .map(|a| a.iter().all(is_scalar))
                    .unwrap_or(false)
                {
                    let items: Vec<String> =
                        v.as_array().unwrap().iter().map(scalar_to_string).collect();
                    out.push_str(&format!("{pad}{k}: [{}]\n", items.join(", ")));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_value(v, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                if is_scalar(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar_to_string(item)));
                } else if item
                    .as_array()
                    .map(|a| a.iter().all(is_scalar))
                    .unwrap_or(false)
                {
                    let row: Vec<String> = item
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(scalar_to_string)
                        .collect();
                    out.push_str(&format!("{pad}[{}]\n", row.join(", ")));
                } else {
                    out.push_str(&format!("{pad}- item {i}:\n"));
                    render_value(item, indent + 1, out);
                }
            }
        }
        scalar => {
            out.push_str(&format!("{pad}{}\n", scalar_to_string(scalar)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inline(json: &str) -> InputSource {
        InputSource::Inline(json.to_string())
    }

    #[test]
    fn decompose_golden_spec_through_cli() {
        let config = RunConfig {
            command: Command::Decompose {
                input: inline(r#"{"normal_form": {"k": 3, "params": ["2", "1/2"]}}"#),
            },
            format: OutputFormat::Json,
        };
        let out = run(&config).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        let block = v["block_multiplicities"].as_array().unwrap();
        let find = |label: &str| -> u64 {
            block
                .iter()
                .find(|e| e["label"] == label)
                .and_then(|e| e["multiplicity"].as_u64())
                .unwrap()
        };
        assert_eq!(
            [find("rho_1"), find("rho_2"), find("rho_3"), find("rho_4")],
            [0, 0, 0, 2]
        );
        assert_eq!([find("chi_1"), find("chi_2")], [2, 0]);
    }

    #[test]
    fn chartab_dihedral_3_is_the_odd_matrix() {
        let config = RunConfig {
            command: Command::Chartab {
                family: "dihedral".to_string(),
                param: 3,
            },
            format: OutputFormat::Json,
        };
        let out = run(&config).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        let display = v["display"].as_array().unwrap();
        // Rows are irreps over classes ({1}, {y,y²}, reflections); the same
        // data as the known 3×3 odd dihedral matrix, with 2cos(2π/3)
        // simplified to its exact rational value −1.
        assert_eq!(display[0], serde_json::json!(["1", "1", "1"]));
        assert_eq!(display[1], serde_json::json!(["1", "1", "-1"]));
        assert_eq!(display[2], serde_json::json!(["2", "-1", "0"]));
        // An irrational character value keeps the symbolic cosine label.
        let config = RunConfig {
            command: Command::Chartab {
                family: "dihedral".to_string(),
                param: 5,
            },
            format: OutputFormat::Json,
        };
        let out = run(&config).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        let flat = v["display"].to_string();
        assert!(flat.contains("2cos(2pi*1/5)"), "{flat}");
    }

    #[test]
    fn classes_u6() {
        let config = RunConfig {
            command: Command::Classes {
                family: "u".to_string(),
                param: 6,
            },
            format: OutputFormat::Json,
        };
        let out = run(&config).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["class_count"], 12);
    }

    #[test]
    fn deterministic_output_and_round_trip() {
        let config = RunConfig {
            command: Command::Aut {
                input: inline(r#"{"field_order": 1, "roots": ["1", "4"]}"#),
            },
            format: OutputFormat::Json,
        };
        let a = run(&config).unwrap();
        let b = run(&config).unwrap();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        let text = render_text(&v);
        assert!(text.contains("group:"));
    }

    #[test]
    fn exit_codes() {
        let bad_json = RunConfig {
            command: Command::Decompose {
                input: inline("{ not json"),
            },
            format: OutputFormat::Json,
        };
        assert_eq!(run(&bad_json).unwrap_err().exit_code(), 2);

        let bad_curve = RunConfig {
            command: Command::Decompose {
                input: inline(r#"{"field_order": 1, "roots": ["1", "1"]}"#),
            },
            format: OutputFormat::Json,
        };
        assert_eq!(run(&bad_curve).unwrap_err().exit_code(), 3);

        let undetermined = RunConfig {
            command: Command::Decompose {
                input: inline(r#"{"field_order": 1, "roots": ["1", "2"]}"#),
            },
            format: OutputFormat::Json,
        };
        let err = run(&undetermined).unwrap_err();
        assert_eq!(err.exit_code(), 4);
        assert!(err.to_json().contains("undetermined"));
    }

    #[test]
    fn pq_table_report() {
        let config = RunConfig {
            command: Command::PqTable {
                input: inline(r#"{"field_order": 1, "roots": ["1", "-1"]}"#),
                m_max: 3,
            },
            format: OutputFormat::Json,
        };
        let out = run(&config).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["n"], 1);
        assert!(v["curve_hash"].as_str().unwrap().len() == 16);
        assert!(v["p_table"]["rows"]["0"].is_array());
    }
}
