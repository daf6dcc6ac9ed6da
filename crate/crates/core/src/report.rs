//! Scenario configuration, execution and report records.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::appendix::{self, Grid, SpectrumCandidate};
use crate::clifford::MultiVector;
use crate::error::ReportError;
use crate::lie::LieLabel;
use crate::rational::Rational;
use crate::spin::{cache_dir, kappa, SpinRep};
use crate::suite::{criterion_info, Suite, SuiteOptions, CRITERIA};
use crate::torsion::{analyze_fix_algebra, fixed_spinors, SpectrumData, TorsionForm};

/// Eigenvalue (as a rational string) to multiplicity.
pub type SpecMap = BTreeMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FormSource {
    Volume {
        n: usize,
    },
    UnipotentPair,
    Su4,
    /// `coords` are the `S+` coordinates for `n = 8`, the full spinor for `n = 7`.
    SpinorSquare {
        n: usize,
        coords: Vec<Rational>,
    },
    AlphaSquare {
        alpha: MultiVector,
    },
    Spectrum {
        spec: SpecMap,
        zero_dim: usize,
    },
    File {
        path: PathBuf,
    },
    Value(MultiVector),
}

impl FormSource {
    pub fn build(&self) -> Result<TorsionForm, ReportError> {
        Ok(match self {
            FormSource::Volume { n } => TorsionForm::volume(*n)?,
            FormSource::UnipotentPair => TorsionForm::unipotent_pair()?,
            FormSource::Su4 => TorsionForm::su4()?,
            FormSource::SpinorSquare { n, coords } => {
                let rep = SpinRep::shared(*n)?;
                let x = if *n == 8 { rep.plus_spinor(coords) } else { coords.clone() };
                TorsionForm::spinor_square(rep, &x)?
            }
            FormSource::AlphaSquare { alpha } => TorsionForm::alpha_square(alpha)?,
            FormSource::Spectrum { spec, zero_dim } => TorsionForm::from_spectrum(&spectrum_data(spec, *zero_dim)?, None)?,
            FormSource::File { path } => TorsionForm::from_file(path)?,
            FormSource::Value(v) => TorsionForm::from_value(v.clone(), crate::torsion::Provenance::File)?,
        })
    }
}

/// Parses `"1:1,-1:1"` into a spectrum map.
pub fn parse_spec(text: &str) -> Result<SpecMap, ReportError> {
    let mut out = SpecMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (l, m) =
            part.rsplit_once(':').ok_or_else(|| ReportError::config("spec", format!("`{part}` is not eigenvalue:multiplicity")))?;
        let m: usize = m.trim().parse().map_err(|_| ReportError::config("spec", format!("bad multiplicity in `{part}`")))?;
        if out.insert(l.trim().to_string(), m).is_some() {
            return Err(ReportError::config("spec", format!("eigenvalue {l} listed twice")));
        }
    }
    Ok(out)
}

/// Eigenvalues in decreasing order.
pub fn spectrum_data(spec: &SpecMap, zero_dim: usize) -> Result<SpectrumData, ReportError> {
    let mut pairs = Vec::new();
    for (k, m) in spec {
        let l: Rational = k.parse().map_err(|_| ReportError::config(format!("spec.{k}"), "not a rational number"))?;
        pairs.push((l, *m));
    }
    pairs.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(SpectrumData::new(pairs, zero_dim)?)
}

/// Parses the command-line form shorthand: `volume:N`, `unipotent-pair`,
/// `su4`, `spinor-square:N:c1,c2,...`, `file:PATH`.
pub fn parse_form(text: &str) -> Result<FormSource, ReportError> {
    let bad = |m: &str| ReportError::config("form", format!("`{text}`: {m}"));
    let (head, rest) = text.split_once(':').unwrap_or((text, ""));
    match head {
        "volume" => Ok(FormSource::Volume { n: rest.parse().map_err(|_| bad("expected volume:N"))? }),
        "unipotent-pair" => Ok(FormSource::UnipotentPair),
        "su4" => Ok(FormSource::Su4),
        "file" if !rest.is_empty() => Ok(FormSource::File { path: PathBuf::from(rest) }),
        "spinor-square" => {
            let (n, coords) = rest.split_once(':').ok_or_else(|| bad("expected spinor-square:N:c1,c2,..."))?;
            let coords = coords
                .split(',')
                .map(|c| c.trim().parse::<Rational>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad("bad coordinate"))?;
            Ok(FormSource::SpinorSquare { n: n.parse().map_err(|_| bad("bad n"))?, coords })
        }
        _ => Err(bad("unknown form")),
    }
}

/// Claims checked by `verify`, named after the suites that cover them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    VolumeForms,
    Unipotent,
    SpinorSquares,
    GenericInvertible,
    FixedSpinorLadder,
    DimSix,
}

impl std::str::FromStr for Claim {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, ReportError> {
        serde_json::from_value(Value::String(s.to_string())).map_err(|_| {
            ReportError::config(
                "theorem",
                format!("unknown claim `{s}` (volume-forms, unipotent, spinor-squares, generic-invertible, fixed-spinor-ladder, dim-six)"),
            )
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub label: LieLabel,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_dim: Option<usize>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub perfect: bool,
}

impl Expectation {
    fn describe(&self) -> String {
        let mut s = format!("{}, dim {}", self.label, self.dim);
        if let Some(z) = self.z_dim {
            let _ = write!(s, ", dim Z {z}");
        }
        if self.perfect {
            s.push_str(", perfect");
        }
        s
    }
}

fn so(p: usize, q: usize) -> Expectation {
    let m = p + q;
    Expectation { label: LieLabel::So(p, q), dim: m * (m - 1) / 2, z_dim: None, perfect: false }
}

impl Claim {
    /// Form under test and the claimed outcome.
    pub fn setup(
        self,
        form: Option<&FormSource>,
        spec: Option<&SpecMap>,
        zero_dim: Option<usize>,
        n: Option<usize>,
    ) -> Result<(FormSource, Expectation), ReportError> {
        let need_spec = |d: Option<usize>| -> Result<FormSource, ReportError> {
            let spec = spec.ok_or_else(|| ReportError::config("spec", "required for this claim"))?;
            let zero_dim = zero_dim.or(d).ok_or_else(|| ReportError::config("zero_dim", "required for this claim"))?;
            Ok(FormSource::Spectrum { spec: spec.clone(), zero_dim })
        };
        let source = |default: Option<FormSource>| -> Result<FormSource, ReportError> {
            match (form, spec) {
                (Some(f), _) => Ok(f.clone()),
                (None, Some(_)) => need_spec(None),
                (None, None) => default.ok_or_else(|| ReportError::config("form", "a form or spec is required")),
            }
        };
        match self {
            Claim::VolumeForms => {
                let n = n.ok_or_else(|| ReportError::config("n", "required for volume-forms"))?;
                let e = match n {
                    5 => so(5, 1),
                    6 => so(7, 0),
                    7 => so(8, 0),
                    8 => so(8, 1),
                    9 => so(9, 1),
                    _ => return Err(ReportError::config("n", "volume-forms covers n = 5..9")),
                };
                Ok((FormSource::Volume { n }, e))
            }
            Claim::Unipotent => {
                let e = Expectation { z_dim: Some(0), perfect: true, ..so(8, 1) };
                Ok((source(Some(FormSource::UnipotentPair))?, e))
            }
            Claim::SpinorSquares => {
                let f = source(None)?;
                let e = match &f {
                    FormSource::SpinorSquare { n: 8, .. } => Expectation { z_dim: Some(7), ..so(8, 1) },
                    FormSource::SpinorSquare { n: 7, .. } => {
                        Expectation { label: LieLabel::Abelian(7), dim: 7, z_dim: Some(7), perfect: false }
                    }
                    _ => return Err(ReportError::config("form", "spinor-squares needs a spinor_square form with n = 7 or 8")),
                };
                Ok((f, e))
            }
            Claim::GenericInvertible | Claim::FixedSpinorLadder | Claim::DimSix => {
                let f = need_spec(match self {
                    Claim::GenericInvertible => Some(0),
                    Claim::DimSix => Some(6),
                    _ => None,
                })?;
                let FormSource::Spectrum { spec: map, zero_dim: d } = &f else { unreachable!() };
                let data = spectrum_data(map, *d)?;
                let cand = SpectrumCandidate::from(&data);
                let e = match (self, d) {
                    (Claim::GenericInvertible, 0) => {
                        if data.is_unipotent_shape() || appendix::family_of(&cand).is_some() {
                            return Err(ReportError::config("spec", "spectrum is unipotent or exceptional"));
                        }
                        Expectation { z_dim: Some(0), perfect: true, ..so(8, 8) }
                    }
                    (Claim::FixedSpinorLadder, 1..=5) => Expectation { z_dim: Some(*d), ..so(8, 8 - d) },
                    (Claim::DimSix, 6) => Expectation { z_dim: Some(6), perfect: true, ..so(6, 2) },
                    _ => return Err(ReportError::config("zero_dim", "outside the range of this claim")),
                };
                Ok((f, e))
            }
        }
    }
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Task {
    Classify {
        form: FormSource,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<LieLabel>,
    },
    Verify {
        theorem: Claim,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        form: Option<FormSource>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        spec: Option<SpecMap>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        zero_dim: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
    Suite {
        /// Empty means all criteria.
        #[serde(default)]
        criteria: Vec<u32>,
    },
    SpectraSearch {
        #[serde(default)]
        grid: Grid,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k_max: Option<usize>,
    },
    RepCheck {
        n: usize,
        #[serde(default = "default_true")]
        use_cache: bool,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Classify { .. } => "classify",
            Task::Verify { .. } => "verify",
            Task::Suite { .. } => "suite",
            Task::SpectraSearch { .. } => "spectra-search",
            Task::RepCheck { .. } => "rep-check",
        }
    }

    fn randomized(&self) -> bool {
        matches!(self, Task::Suite { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub task: Task,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub options: SuiteOptions,
    #[serde(default)]
    pub scenarios: Vec<Scenario>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ReportError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: Config = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            ReportError::config(path, e.into_inner().to_string())
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Config, ReportError> {
        let text = std::fs::read_to_string(path).map_err(|e| ReportError::Io(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }

    /// Unique ids, seeds present for randomized scenarios, known criteria.
    pub fn validate(&self) -> Result<(), ReportError> {
        let mut seen = std::collections::BTreeSet::new();
        for (i, s) in self.scenarios.iter().enumerate() {
            if !seen.insert(s.id.as_str()) {
                return Err(ReportError::config(format!("scenarios[{i}].id"), format!("duplicate id `{}`", s.id)));
            }
            if s.task.randomized() && s.seed.or(self.seed).is_none() {
                return Err(ReportError::config(format!("scenarios[{i}].seed"), "required for randomized scenarios"));
            }
            if let Task::Suite { criteria } = &s.task {
                if let Some(bad) = criteria.iter().find(|c| criterion_info(**c).is_none()) {
                    return Err(ReportError::config(
                        format!("scenarios[{i}].criteria"),
                        format!("unknown criterion {bad} (valid: 1..=12)"),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// One line of the report. The body is everything except `wall_ms`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u32>,
    pub kind: String,
    pub input: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub result: Value,
    pub pass: bool,
    pub wall_ms: u64,
}

impl ReportRecord {
    pub fn body(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("record serializes");
        v.as_object_mut().expect("object").remove("wall_ms");
        v
    }
}

fn uses_bank(criterion: u32) -> bool {
    !matches!(criterion, 1 | 2 | 4 | 12)
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn form_result(form: &TorsionForm) -> Result<(Value, crate::lie::LieDescriptor, Option<usize>), ReportError> {
    let a = analyze_fix_algebra(form.value())?;
    let z = match form.n() {
        6..=8 => Some(fixed_spinors(form.value(), SpinRep::shared(form.n())?)?.dim()),
        _ => None,
    };
    let v = json!({
        "descriptor": a.descriptor,
        "z_dim": z,
        "spectrum": form.constructed_spectrum(),
    });
    Ok((v, a.descriptor, z))
}

/// Runs one scenario; a suite scenario yields one record per criterion.
pub fn run_scenario(s: &Scenario, config: &Config) -> Result<Vec<ReportRecord>, ReportError> {
    let wrap = |e: ReportError| ReportError::Scenario { id: s.id.clone(), source: Box::new(e) };
    run_inner(s, config).map_err(wrap)
}

fn run_inner(s: &Scenario, config: &Config) -> Result<Vec<ReportRecord>, ReportError> {
    let input = serde_json::to_value(&s.task).expect("task serializes");
    let record = |expected: Option<String>, result: Value, pass: bool, t: Instant| ReportRecord {
        id: s.id.clone(),
        criterion: None,
        kind: s.task.kind().to_string(),
        input: input.clone(),
        expected,
        result,
        pass,
        wall_ms: elapsed_ms(t),
    };
    let t = Instant::now();
    match &s.task {
        Task::Classify { form, expect } => {
            let (result, d, _) = form_result(&form.build()?)?;
            let pass = expect.as_ref().is_none_or(|l| *l == d.label);
            Ok(vec![record(expect.as_ref().map(|l| l.to_string()), result, pass, t)])
        }
        Task::Verify { theorem, form, spec, zero_dim, n } => {
            let (source, e) = theorem.setup(form.as_ref(), spec.as_ref(), *zero_dim, *n)?;
            let (result, d, z) = form_result(&source.build()?)?;
            let pass = d.label == e.label && d.dim == e.dim && e.z_dim.is_none_or(|want| z == Some(want)) && (!e.perfect || d.is_perfect());
            Ok(vec![record(Some(e.describe()), result, pass, t)])
        }
        Task::Suite { criteria } => {
            let seed = s.seed.or(config.seed).ok_or_else(|| ReportError::config("seed", "required for randomized scenarios"))?;
            let ids: Vec<u32> = if criteria.is_empty() { CRITERIA.iter().map(|c| c.id).collect() } else { criteria.clone() };
            let suite = Suite::new(seed, config.options);
            // criteria sharing the sample bank are charged its build time
            let bank_ms = if ids.iter().any(|id| uses_bank(*id)) {
                let t = Instant::now();
                suite.bank()?;
                elapsed_ms(t)
            } else {
                0
            };
            ids.iter()
                .map(|&id| {
                    let t = Instant::now();
                    let o = suite.run(id)?;
                    let shared = if uses_bank(id) { bank_ms } else { 0 };
                    Ok(ReportRecord {
                        id: format!("{}/{}", s.id, o.slug),
                        criterion: Some(id),
                        kind: "suite".into(),
                        input: json!({ "seed": seed, "criterion": id }),
                        expected: Some(o.expected.to_string()),
                        result: json!({ "checks": o.checks, "data": o.data }),
                        pass: o.pass,
                        wall_ms: elapsed_ms(t) + shared,
                    })
                })
                .collect()
        }
        Task::SpectraSearch { grid, k_max } => {
            let k_max = k_max.unwrap_or(config.options.k_max);
            let hits = appendix::family_search(grid, k_max);
            let pass = hits.iter().all(|h| h.family.is_some());
            let hits: Vec<Value> =
                hits.iter().map(|h| json!({"candidate": h.candidate, "pairs": h.pairs, "family": h.family.map(|f| f.roman())})).collect();
            let result = json!({ "k_max": k_max, "hits": hits, "lopsided": appendix::lopsided_feasibility(grid) });
            Ok(vec![record(Some("only families (i), (ii), (iii)".into()), result, pass, t)])
        }
        Task::RepCheck { n, use_cache } => {
            let dir = if *use_cache { cache_dir() } else { None };
            let rep = match &dir {
                Some(d) => SpinRep::load_or_build(*n, d)?,
                None => SpinRep::build(*n)?,
            };
            let nu = rep.nu_action();
            let id = crate::spin::Matrix::identity(rep.dim_s());
            let nu_state = if nu == id {
                "identity"
            } else if (&nu * &nu) == id {
                "involution"
            } else {
                "other"
            };
            let commutant = rep.commutant_dim();
            let pass = commutant == 1 && (*n != 7 || nu_state == "identity");
            let result = json!({
                "n": n,
                "dim_s": rep.dim_s(),
                "commutant_dim": commutant,
                "nu": nu_state,
                "kappa": kappa(*n),
                "cached": dir.is_some(),
            });
            Ok(vec![record(Some("Clifford relations, irreducible (commutant 1), nu = Id for n = 7".into()), result, pass, t)])
        }
    }
}

/// Runs all scenarios on a pool of `jobs` workers; records keep input order.
pub fn run_all(config: &Config, jobs: usize) -> Result<Vec<ReportRecord>, ReportError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| ReportError::Io(e.to_string()))?;
    let results: Vec<Result<Vec<ReportRecord>, ReportError>> =
        pool.install(|| config.scenarios.par_iter().map(|s| run_scenario(s, config)).collect());
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Writes one JSON record per line.
pub fn write_report(path: &Path, records: &[ReportRecord]) -> Result<(), ReportError> {
    let io = |e: std::io::Error| ReportError::Io(format!("{}: {e}", path.display()));
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    for r in records {
        serde_json::to_writer(&mut f, r).map_err(|e| ReportError::Io(e.to_string()))?;
        f.write_all(b"\n").map_err(io)?;
    }
    f.flush().map_err(io)
}

pub fn summary_table(records: &[ReportRecord]) -> String {
    let width = records.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let mut s = format!("{:<width$}  {:<4}  {:>9}  expected\n", "id", "pass", "ms");
    for r in records {
        let _ = writeln!(
            s,
            "{:<width$}  {:<4}  {:>9}  {}",
            r.id,
            if r.pass { "ok" } else { "FAIL" },
            r.wall_ms,
            r.expected.as_deref().unwrap_or("-")
        );
    }
    let passed = records.iter().filter(|r| r.pass).count();
    let _ = writeln!(s, "{passed}/{} passed", records.len());
    s
}

/// 0 when every record passes, 1 otherwise.
pub fn exit_status(records: &[ReportRecord]) -> i32 {
    if records.iter().all(|r| r.pass) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_errors_carry_paths() {
        let err = Config::parse(r#"{"scenarios":[{"id":"a","kind":"rep-check","n":"x"}]}"#).unwrap_err();
        assert!(matches!(err, ReportError::Config { ref path, .. } if path.starts_with("scenarios[0]")), "{err}");
        let err = Config::parse(r#"{"scenarios":[{"id":"s","kind":"suite"}]}"#).unwrap_err();
        assert!(err.to_string().contains("seed"));
        let dup = r#"{"scenarios":[{"id":"a","kind":"rep-check","n":8},{"id":"a","kind":"rep-check","n":7}]}"#;
        assert!(Config::parse(dup).unwrap_err().to_string().contains("duplicate"));
    }

    #[test]
    fn shorthand_forms() {
        assert_eq!(parse_form("volume:8").unwrap(), FormSource::Volume { n: 8 });
        assert_eq!(parse_form("su4").unwrap(), FormSource::Su4);
        assert!(parse_form("volume").is_err());
        let map = parse_spec("1:1, -1:1").unwrap();
        let data = spectrum_data(&map, 6).unwrap();
        assert_eq!(data.eigenvalues()[0].0, Rational::one());
    }

    #[test]
    fn classify_record() {
        let config = Config::default();
        let s = Scenario {
            id: "v8".into(),
            seed: None,
            task: Task::Classify { form: FormSource::Volume { n: 8 }, expect: Some(LieLabel::So(8, 1)) },
        };
        let r = run_scenario(&s, &config).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].pass);
        assert!(r[0].body().get("wall_ms").is_none());
    }

    #[test]
    fn rep_check_rejects_n9() {
        let s = Scenario { id: "r".into(), seed: None, task: Task::RepCheck { n: 9, use_cache: false } };
        let err = run_scenario(&s, &Config::default()).unwrap_err();
        assert!(err.to_string().contains("unsupported n"), "{err}");
    }
}
