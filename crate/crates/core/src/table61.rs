//! The catalogue of indecomposable spherical representations: data file
//! loading, instance enumeration, the verification harness and a handful of
//! known negatives.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{q, LinearSpan, SampleConfig};
use crate::mult_free::multiplicity_profile;
use crate::pair_spec::{parse_pair_spec, CenterGen, PairSpec};
use crate::rep_build::{assemble, DEFAULT_DIM_CAP};
use crate::sphericity::{
    is_spherical_projective, normalizer_report, Certificate, NormalizerReport, Status, Verdict,
};

/// The catalogue shipped with the crate.
pub const BUILTIN_TABLE: &str = include_str!("../data/table61.txt");

/// Highest degree of the multiplicity profile recorded for each instance.
pub const PROFILE_DEGREE: usize = 4;

pub const DEFAULT_MAX_DIM: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    /// Must verify.
    Assert,
    /// An alternative reading that is evaluated and recorded only.
    Report,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Num(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn parse(text: &str) -> Result<Expr> {
        let tokens: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let e = Self::sum(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::TableData(format!("trailing input in expression {text:?}")));
        }
        Ok(e)
    }

    fn sum(t: &[char], pos: &mut usize) -> Result<Expr> {
        let mut lhs = Self::product(t, pos)?;
        while let Some(&c) = t.get(*pos) {
            if c != '+' && c != '-' {
                break;
            }
            *pos += 1;
            let rhs = Self::product(t, pos)?;
            lhs = if c == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn product(t: &[char], pos: &mut usize) -> Result<Expr> {
        let mut lhs = Self::atom(t, pos)?;
        while t.get(*pos) == Some(&'*') {
            *pos += 1;
            let rhs = Self::atom(t, pos)?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn atom(t: &[char], pos: &mut usize) -> Result<Expr> {
        let start = *pos;
        match t.get(*pos) {
            Some('-') => {
                *pos += 1;
                Ok(Expr::Neg(Box::new(Self::atom(t, pos)?)))
            }
            Some('(') => {
                *pos += 1;
                let e = Self::sum(t, pos)?;
                if t.get(*pos) != Some(&')') {
                    return Err(Error::TableData("unbalanced parenthesis".into()));
                }
                *pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                while t.get(*pos).is_some_and(char::is_ascii_digit) {
                    *pos += 1;
                }
                let s: String = t[start..*pos].iter().collect();
                s.parse()
                    .map(Expr::Num)
                    .map_err(|_| Error::TableData(format!("bad integer {s}")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while t.get(*pos).is_some_and(char::is_ascii_alphanumeric) {
                    *pos += 1;
                }
                Ok(Expr::Var(t[start..*pos].iter().collect()))
            }
            other => Err(Error::TableData(format!("unexpected {other:?} in expression"))),
        }
    }

    fn eval(&self, env: &BTreeMap<String, i64>) -> Result<i64> {
        Ok(match self {
            Expr::Num(n) => *n,
            Expr::Var(v) => *env
                .get(v)
                .ok_or_else(|| Error::TableData(format!("unbound parameter {v}")))?,
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
        })
    }
}

/// A lower bound `name >= bound` or `name > bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamConstraint {
    pub name: String,
    pub strict: bool,
    bound: Expr,
}

impl ParamConstraint {
    fn parse(text: &str) -> Result<Self> {
        let (name, strict, rest) = if let Some((a, b)) = text.split_once(">=") {
            (a, false, b)
        } else if let Some((a, b)) = text.split_once('>') {
            (a, true, b)
        } else {
            return Err(Error::TableData(format!("constraint {text:?} is not a lower bound")));
        };
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(Error::TableData(format!("bad parameter name in {text:?}")));
        }
        Ok(Self {
            name: name.to_string(),
            strict,
            bound: Expr::parse(rest)?,
        })
    }

    fn least(&self, env: &BTreeMap<String, i64>) -> Result<i64> {
        Ok(self.bound.eval(env)? + i64::from(self.strict))
    }
}

/// One line of the catalogue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub entry_id: String,
    pub reading: Reading,
    /// Pair-spec text with `{expr}` holes.
    pub template: String,
    pub constraints: Vec<ParamConstraint>,
    /// Center descriptor, `"0"` when there is none.
    pub center: String,
    pub line: usize,
}

impl TableEntry {
    /// Every admissible parameter assignment: each parameter in turn takes its
    /// least value and the next one.
    pub fn assignments(&self) -> Result<Vec<BTreeMap<String, i64>>> {
        let mut out = vec![BTreeMap::new()];
        for c in &self.constraints {
            let mut next = Vec::with_capacity(out.len() * 2);
            for env in &out {
                let least = c.least(env)?;
                for v in [least, least + 1] {
                    let mut e = env.clone();
                    e.insert(c.name.clone(), v);
                    next.push(e);
                }
            }
            out = next;
        }
        Ok(out)
    }

    fn substitute(&self, text: &str, env: &BTreeMap<String, i64>) -> Result<String> {
        let mut out = String::with_capacity(text.len());
        let mut rest = text;
        while let Some(open) = rest.find('{') {
            out.push_str(&rest[..open]);
            let close = rest[open..]
                .find('}')
                .ok_or_else(|| Error::TableData(format!("line {}: unclosed brace", self.line)))?;
            out.push_str(&Expr::parse(&rest[open + 1..open + close])?.eval(env)?.to_string());
            rest = &rest[open + close + 1..];
        }
        out.push_str(rest);
        Ok(out)
    }

    /// The spec text for one parameter assignment.
    pub fn instantiate_text(&self, env: &BTreeMap<String, i64>) -> Result<String> {
        let body = self.substitute(&self.template, env)?;
        if self.center.trim() == "0" {
            Ok(body)
        } else {
            Ok(format!("{body} [{}]", self.substitute(&self.center, env)?))
        }
    }

    pub fn instantiate(&self, env: &BTreeMap<String, i64>) -> Result<PairSpec> {
        let spec = parse_pair_spec(&self.instantiate_text(env)?)?;
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_reading(s: &str, line: usize) -> Result<Reading> {
    match s {
        "assert" => Ok(Reading::Assert),
        "report" => Ok(Reading::Report),
        other => Err(Error::TableData(format!("line {line}: unknown reading {other:?}"))),
    }
}

/// Parses the catalogue format: `id | reading | template | constraints | center`,
/// with `#` comments and blank lines ignored.
pub fn parse_table(text: &str) -> Result<Vec<TableEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let cols: Vec<&str> = content.split('|').map(str::trim).collect();
        if cols.len() != 5 {
            return Err(Error::TableData(format!(
                "line {line}: expected 5 columns, found {}",
                cols.len()
            )));
        }
        let constraints = cols[3]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(ParamConstraint::parse)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::TableData(format!("line {line}: {e}")))?;
        if cols[0].is_empty() || cols[2].is_empty() || cols[4].is_empty() {
            return Err(Error::TableData(format!("line {line}: empty column")));
        }
        out.push(TableEntry {
            entry_id: cols[0].to_string(),
            reading: parse_reading(cols[1], line)?,
            template: cols[2].to_string(),
            constraints,
            center: cols[4].to_string(),
            line,
        });
    }
    Ok(out)
}

pub fn builtin_table() -> Vec<TableEntry> {
    parse_table(BUILTIN_TABLE).expect("the shipped table parses")
}

pub fn load_table(path: &Path) -> Result<Vec<TableEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::TableData(format!("{}: {e}", path.display())))?;
    parse_table(&text)
}

/// A concrete member of the catalogue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub entry_id: String,
    pub reading: Reading,
    pub params: Vec<(String, i64)>,
    /// Position among the entry's rows of the same reading, when it has several.
    pub row: Option<usize>,
    /// Factors (1-based) whose action was twisted by `-w0`.
    pub twisted: Vec<usize>,
    pub spec: PairSpec,
}

impl Instance {
    /// Parameters, twisted factors and reading, e.g. `n=3,m=4;twist=2`.
    pub fn params_label(&self) -> String {
        let mut parts = Vec::new();
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            parts.push(p.join(","));
        }
        if let Some(row) = self.row {
            parts.push(format!("row={row}"));
        }
        if !self.twisted.is_empty() {
            let t: Vec<String> = self.twisted.iter().map(usize::to_string).collect();
            parts.push(format!("twist={}", t.join(",")));
        }
        if self.reading == Reading::Report {
            parts.push("literal".into());
        }
        if parts.is_empty() {
            "-".into()
        } else {
            parts.join(";")
        }
    }
}

/// An assignment whose spec text does not describe a valid pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejected {
    pub entry_id: String,
    pub reading: Reading,
    pub params: Vec<(String, i64)>,
    pub text: String,
    pub error: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub instances: Vec<Instance>,
    pub rejected: Vec<Rejected>,
}

/// All instances with `dim W ≤ max_dim`, in catalogue order, with every
/// combination of twisted factors expanded and duplicates within an entry
/// removed.
pub fn enumerate(table: &[TableEntry], max_dim: usize) -> Result<Enumeration> {
    let mut out = Enumeration::default();
    let mut seen: HashSet<(String, Reading, PairSpec)> = HashSet::new();
    let mut rows: BTreeMap<(&str, Reading), usize> = BTreeMap::new();
    for entry in table {
        *rows.entry((&entry.entry_id, entry.reading)).or_default() += 1;
    }
    let mut position: BTreeMap<(&str, Reading), usize> = BTreeMap::new();
    for entry in table {
        let key = (entry.entry_id.as_str(), entry.reading);
        let pos = position.entry(key).or_default();
        *pos += 1;
        let row = (rows[&key] > 1).then_some(*pos);
        for env in entry.assignments()? {
            let params: Vec<(String, i64)> = entry
                .constraints
                .iter()
                .map(|c| (c.name.clone(), env[&c.name]))
                .collect();
            let spec = match entry.instantiate(&env) {
                Ok(s) => s,
                Err(e) => {
                    out.rejected.push(Rejected {
                        entry_id: entry.entry_id.clone(),
                        reading: entry.reading,
                        params,
                        text: entry.instantiate_text(&env).unwrap_or_default(),
                        error: e.to_string(),
                    });
                    continue;
                }
            };
            if spec.dim_w() > max_dim {
                continue;
            }
            let k = spec.factors.len();
            for mask in 0u32..(1 << k) {
                let twisted: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
                let variant = twisted.iter().fold(spec.clone(), |s, &i| s.twist_factor(i));
                if seen.insert((entry.entry_id.clone(), entry.reading, variant.clone())) {
                    out.instances.push(Instance {
                        entry_id: entry.entry_id.clone(),
                        reading: entry.reading,
                        params: params.clone(),
                        row,
                        twisted: twisted.iter().map(|i| i + 1).collect(),
                        spec: variant,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// `(entry_id, spec)` for every built-in instance with `dim W ≤ max_dim`.
pub fn enumerate_instances(max_dim: usize) -> Vec<(String, PairSpec)> {
    enumerate(&builtin_table(), max_dim)
        .expect("the shipped table enumerates")
        .instances
        .into_iter()
        .map(|i| (i.entry_id, i.spec))
        .collect()
}

fn projection(s: usize, summands: usize) -> CenterGen {
    let mut v = vec![0; summands];
    v[s] = 1;
    CenterGen::Scaling(v)
}

/// Extends the listed center by summand projections, in summand order, until
/// the normalizer condition holds. Projections already in the span of the
/// center are skipped.
pub fn complete_center(spec: &PairSpec) -> Result<PairSpec> {
    let count = spec.summands.len();
    let mut span = LinearSpan::new(count);
    for c in &spec.center {
        span.insert(&c.scalars(count).into_iter().map(q).collect::<Vec<_>>());
    }
    let mut current = spec.clone();
    if normalizer_report(&assemble(&current, DEFAULT_DIM_CAP)?).holds {
        return Ok(current);
    }
    for s in 0..count {
        let p = projection(s, count);
        if !span.insert(&p.scalars(count).into_iter().map(q).collect::<Vec<_>>()) {
            continue;
        }
        current.center.push(p);
        if normalizer_report(&assemble(&current, DEFAULT_DIM_CAP)?).holds {
            break;
        }
    }
    Ok(current)
}

/// Outcome of checking one instance. Failures are recorded, not raised.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryReport {
    pub entry_id: String,
    pub reading: Reading,
    pub params: String,
    pub dim_w: usize,
    /// The instance as listed.
    pub spec: String,
    /// The instance with its center completed, which is what gets tested.
    pub tested: String,
    pub verdict: Option<Verdict>,
    /// Normalizer condition for the completed subalgebra.
    pub normalizer: Option<NormalizerReport>,
    /// Normalizer condition for the subalgebra as listed.
    pub listed_normalizer: Option<NormalizerReport>,
    pub profile: Vec<(usize, i64)>,
    pub millis: u128,
    pub error: Option<String>,
}

impl EntryReport {
    pub fn spherical(&self) -> bool {
        self.verdict.as_ref().is_some_and(Verdict::is_spherical)
    }

    pub fn normalizer_ok(&self) -> bool {
        self.normalizer.is_some_and(|n| n.holds)
    }

    pub fn max_multiplicity(&self) -> Option<i64> {
        self.profile.iter().map(|p| p.1).max()
    }

    /// Whether every check that applies to this instance succeeded.
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.spherical()
            && self.normalizer_ok()
            && self.max_multiplicity().is_none_or(|m| m == 1)
    }

    /// `passed`, except for readings that are only reported.
    pub fn acceptable(&self) -> bool {
        self.reading == Reading::Report || self.passed()
    }

    pub fn verdict_label(&self) -> &'static str {
        match (&self.error, &self.verdict) {
            (Some(_), _) | (None, None) => "Error",
            (None, Some(v)) => match v.status {
                Status::Spherical => "Spherical",
                Status::NotSpherical => "NotSpherical",
                Status::Undetermined => "Undetermined",
            },
        }
    }
}

pub fn verify_entry(inst: &Instance, cfg: &SampleConfig) -> EntryReport {
    let start = Instant::now();
    let mut report = EntryReport {
        entry_id: inst.entry_id.clone(),
        reading: inst.reading,
        params: inst.params_label(),
        dim_w: inst.spec.dim_w(),
        spec: inst.spec.to_string(),
        tested: inst.spec.to_string(),
        verdict: None,
        normalizer: None,
        listed_normalizer: None,
        profile: Vec::new(),
        millis: 0,
        error: None,
    };
    let outcome = (|| -> Result<()> {
        report.listed_normalizer = Some(normalizer_report(&assemble(&inst.spec, DEFAULT_DIM_CAP)?));
        let full = complete_center(&inst.spec)?;
        report.tested = full.to_string();
        let sub = assemble(&full, DEFAULT_DIM_CAP)?;
        report.normalizer = Some(normalizer_report(&sub));
        report.verdict = Some(is_spherical_projective(&sub, cfg)?);
        report.profile = multiplicity_profile(&full, PROFILE_DEGREE)?;
        Ok(())
    })();
    if let Err(e) = outcome {
        report.error = Some(e.to_string());
    }
    report.millis = start.elapsed().as_millis();
    report
}

/// Verifies instances concurrently; reports come back in input order.
pub fn verify_all(instances: &[Instance], cfg: &SampleConfig) -> Vec<EntryReport> {
    instances.par_iter().map(|i| verify_entry(i, cfg)).collect()
}

pub const TSV_HEADER: &str = "entry_id\tparams\tdimW\tverdict\tnormalizer_ok\tmax_mult_d≤4\tmillis";

pub fn tsv_row(r: &EntryReport) -> String {
    let mult = r
        .max_multiplicity()
        .map_or_else(|| "-".to_string(), |m| m.to_string());
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        r.entry_id,
        r.params,
        r.dim_w,
        r.verdict_label(),
        r.normalizer_ok(),
        mult,
        r.millis
    )
}

pub fn to_tsv(reports: &[EntryReport]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&tsv_row(r));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    DimensionCount,
    Multiplicity,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateKind::DimensionCount => write!(f, "DimensionCount"),
            CertificateKind::Multiplicity => write!(f, "Multiplicity"),
        }
    }
}

pub fn certificate_kind(v: &Verdict) -> Option<CertificateKind> {
    match v.certificate {
        Some(Certificate::DimensionCount { .. }) => Some(CertificateKind::DimensionCount),
        Some(Certificate::Multiplicity(_)) => Some(CertificateKind::Multiplicity),
        None => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeControl {
    pub label: String,
    pub spec: PairSpec,
    /// `None` for controls whose outcome is recorded but not asserted.
    pub expected: Option<CertificateKind>,
}

pub fn negative_controls() -> Vec<NegativeControl> {
    let rows: [(&str, &str, Option<CertificateKind>); 5] = [
        ("quartic binary forms", "sl(2): 4w1 [h1]", Some(CertificateKind::DimensionCount)),
        ("adjoint sl3", "sl(3): w1+w2 [h1]", Some(CertificateKind::DimensionCount)),
        (
            "three standard sl2 modules",
            "sl(2): w1 ++ w1 ++ w1 [h(1,0,0), h(0,1,0), h(0,0,1)]",
            Some(CertificateKind::Multiplicity),
        ),
        ("two copies of wedge-two", "sl(4): w2 ++ w2 [h(1,0), h(0,1)]", None),
        ("sl3 x sl3 on the tensor product", "sl(3)+sl(3): w1*w1", None),
    ];
    rows.into_iter()
        .map(|(label, text, expected)| NegativeControl {
            label: label.to_string(),
            spec: parse_pair_spec(text).expect("control spec parses"),
            expected,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControlReport {
    pub label: String,
    pub spec: String,
    pub expected: Option<CertificateKind>,
    pub verdict: Option<Verdict>,
    pub normalizer: Option<NormalizerReport>,
    pub error: Option<String>,
}

impl ControlReport {
    /// Asserted controls must produce their certificate kind; recorded ones
    /// only need to run.
    pub fn passed(&self) -> bool {
        match (self.expected, &self.verdict) {
            (_, None) => false,
            (None, Some(_)) => self.error.is_none(),
            (Some(kind), Some(v)) => {
                v.status == Status::NotSpherical && certificate_kind(v) == Some(kind)
            }
        }
    }
}

pub fn run_control(control: &NegativeControl, cfg: &SampleConfig) -> ControlReport {
    let mut report = ControlReport {
        label: control.label.clone(),
        spec: control.spec.to_string(),
        expected: control.expected,
        verdict: None,
        normalizer: None,
        error: None,
    };
    match assemble(&control.spec, DEFAULT_DIM_CAP) {
        Ok(sub) => {
            report.normalizer = Some(normalizer_report(&sub));
            match is_spherical_projective(&sub, cfg) {
                Ok(v) => report.verdict = Some(v),
                Err(e) => report.error = Some(e.to_string()),
            }
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(max_dim: usize) -> Vec<String> {
        enumerate_instances(max_dim)
            .into_iter()
            .map(|(id, s)| format!("{id} {s}"))
            .collect()
    }

    #[test]
    fn expressions() {
        let env: BTreeMap<String, i64> = [("n".to_string(), 3), ("m".to_string(), 5)].into();
        for (text, want) in [("2*n+1", 7), ("n-m", -2), ("-n", -3), ("2*(n+m)", 16), ("m", 5)] {
            assert_eq!(Expr::parse(text).unwrap().eval(&env).unwrap(), want, "{text}");
        }
        assert!(Expr::parse("n+").is_err());
        assert!(Expr::parse("k").unwrap().eval(&env).is_err());
    }

    #[test]
    fn assignments_take_two_values_per_parameter() {
        let t = parse_table("x | assert | sl({n})+sl({m}): w1*w1 | n>=2, m>n | h1").unwrap();
        let got: Vec<(i64, i64)> = t[0]
            .assignments()
            .unwrap()
            .iter()
            .map(|e| (e["n"], e["m"]))
            .collect();
        assert_eq!(got, vec![(2, 3), (2, 4), (3, 4), (3, 5)]);
        assert_eq!(
            t[0].instantiate_text(&[("n".into(), 2), ("m".into(), 3)].into()).unwrap(),
            "sl(2)+sl(3): w1*w1 [h1]"
        );
    }

    #[test]
    fn malformed_rows_are_rejected() {
        assert!(parse_table("a | assert | sl(2): w1").is_err());
        assert!(parse_table("a | maybe | sl(2): w1 | | 0").is_err());
        assert!(parse_table("a | assert | sl(2): w1 | n=2 | 0").is_err());
    }

    #[test]
    fn small_and_large_instances() {
        let two = labels(2);
        assert!(two.iter().any(|l| l == "i.1 sl(2): w1 [h1]"), "{two:?}");
        assert!(!two.iter().any(|l| l.starts_with("i.11")));
        let seven = labels(7);
        assert!(seven.iter().any(|l| l.starts_with("i.12 g2: w1")));
        assert!(seven.iter().any(|l| l.starts_with("i.2 so(7): w1")));
        assert!(labels(27).iter().any(|l| l.starts_with("i.11 e6: w1")));
    }

    #[test]
    fn twisted_variants_are_generated() {
        let got = labels(6);
        assert!(got.iter().any(|l| l == "i.1 sl(3): w2 [h1]"), "{got:?}");
        let e = enumerate(&builtin_table(), 40).unwrap();
        let so10: Vec<_> = e.instances.iter().filter(|i| i.entry_id == "i.10").collect();
        assert_eq!(so10.len(), 2);
        // With n = 2 both iii.13 rows describe the same pair.
        let small: Vec<_> = e
            .instances
            .iter()
            .filter(|i| i.entry_id == "iii.13" && i.params == vec![("n".to_string(), 2)])
            .collect();
        assert_eq!(small.len(), 1);
    }

    #[test]
    fn literal_readings_that_do_not_parse_are_recorded() {
        let e = enumerate(&builtin_table(), 40).unwrap();
        assert!(e
            .rejected
            .iter()
            .any(|r| r.entry_id == "i.5" && r.reading == Reading::Report));
        assert!(e.rejected.iter().all(|r| r.reading == Reading::Report));
    }

    #[test]
    fn center_completion() {
        let spec = parse_pair_spec("sl(2): w1 ++ w1").unwrap();
        let full = complete_center(&spec).unwrap();
        assert_eq!(full.center.len(), 2);
        let spec = parse_pair_spec("sl(3): w1 ++ w2 [h(1,-1)]").unwrap();
        let full = complete_center(&spec).unwrap();
        assert_eq!(full.center.len(), 2);
        let spec = parse_pair_spec("sl(3): w1 [h1]").unwrap();
        assert_eq!(complete_center(&spec).unwrap(), spec);
    }

    #[test]
    fn verify_small_entries() {
        let cfg = SampleConfig::default();
        let e = enumerate(&builtin_table(), 4).unwrap();
        for inst in e.instances.iter().filter(|i| i.reading == Reading::Assert) {
            let r = verify_entry(inst, &cfg);
            assert!(r.passed(), "{r:?}");
        }
        let line = tsv_row(&verify_entry(&e.instances[0], &cfg));
        assert!(line.starts_with("0\t-\t1\tSpherical\ttrue\t1\t"), "{line}");
    }

    #[test]
    fn asserted_controls() {
        let cfg = SampleConfig::default();
        for c in negative_controls().iter().filter(|c| c.expected.is_some()) {
            let r = run_control(c, &cfg);
            assert!(r.passed(), "{r:?}");
        }
    }
}
