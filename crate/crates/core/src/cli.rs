//! Command-line front end: JSON documents in, JSON (or short text) out.
//!
//! Exit codes: 0 ok, 2 parse error, 3 shape or stability error, 4 failed
//! precondition.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bridge;
use crate::compalg::{self, AlgebraTag};
use crate::error::{Error, Result};
use crate::exteralg::{AltForm, InnerProduct, VolumeForm};
use crate::framecalc::{self, CircleBundleModel, FrameModel, SU3Data};
use crate::random;
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::stable6;
use crate::stable7;
use crate::vcp::{self, CrossProduct, Variant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDocument {
    pub idx: Vec<usize>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDocument {
    pub dim: usize,
    pub degree: usize,
    pub terms: Vec<TermDocument>,
}

fn parse_terms(dim: usize, degree: usize, terms: &[TermDocument]) -> Result<AltForm> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::with_capacity(terms.len());
    for (n, t) in terms.iter().enumerate() {
        let bad = |why: &str| Error::Parse(format!("term {n} {:?}: {why}", t.idx));
        if t.idx.len() != degree {
            return Err(bad(&format!("expected {degree} indices")));
        }
        if t.idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("indices must be strictly ascending"));
        }
        if t.idx.iter().any(|&i| i == 0 || i > dim) {
            return Err(bad(&format!("indices must lie in 1..={dim}")));
        }
        if seen.insert(t.idx.clone(), n).is_some() {
            return Err(bad("duplicate index set"));
        }
        let c = parse_scalar(&t.coef).map_err(|e| bad(&e.to_string()))?;
        out.push((t.idx.clone(), c));
    }
    AltForm::from_terms(dim, degree, out).map_err(|e| Error::Parse(e.to_string()))
}

fn form_terms(form: &AltForm) -> Vec<TermDocument> {
    form.terms().map(|(m, c)| TermDocument { idx: m.indices(), coef: format_scalar(c) }).collect()
}

impl FormDocument {
    pub fn to_form(&self) -> Result<AltForm> {
        if self.dim > crate::exteralg::MAX_DIM || self.degree > self.dim {
            return Err(Error::Parse(format!("unsupported shape: degree {} on dimension {}", self.degree, self.dim)));
        }
        parse_terms(self.dim, self.degree, &self.terms)
    }

    pub fn from_form(form: &AltForm) -> Self {
        FormDocument { dim: form.dim(), degree: form.degree(), terms: form_terms(form) }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BundleDocument {
    #[serde(rename = "F")]
    pub f: Vec<TermDocument>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Su3Document {
    pub omega: Vec<TermDocument>,
    #[serde(rename = "Omega1")]
    pub omega1: Vec<TermDocument>,
    #[serde(rename = "Omega2")]
    pub omega2: Vec<TermDocument>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelDocument {
    pub dim: usize,
    pub metric: Vec<i64>,
    #[serde(default)]
    pub d: BTreeMap<String, Vec<TermDocument>>,
    #[serde(default)]
    pub bundle: Option<BundleDocument>,
    #[serde(default)]
    pub su3: Option<Su3Document>,
}

impl ModelDocument {
    pub fn to_model(&self) -> Result<FrameModel> {
        let n = self.dim;
        if n == 0 || n > crate::exteralg::MAX_DIM {
            return Err(Error::Parse(format!("unsupported model dimension {n}")));
        }
        let mut d1 = vec![AltForm::zero(n, 2); n];
        for (k, terms) in &self.d {
            let i: usize = k.parse().map_err(|_| Error::Parse(format!("d key `{k}` is not an index")))?;
            if i == 0 || i > n {
                return Err(Error::Parse(format!("d key `{k}` out of range 1..={n}")));
            }
            d1[i - 1] = parse_terms(n, 2, terms)?;
        }
        FrameModel::new(n, self.metric.clone(), d1)
    }

    pub fn to_bundle(&self) -> Result<(CircleBundleModel, SU3Data)> {
        let base = self.to_model()?;
        let bundle = self.bundle.as_ref().ok_or_else(|| Error::Parse("model has no `bundle` section".into()))?;
        let f = parse_terms(self.dim, 2, &bundle.f)?;
        let su3 = match &self.su3 {
            Some(s) => SU3Data {
                omega: parse_terms(self.dim, 2, &s.omega)?,
                omega1: parse_terms(self.dim, 3, &s.omega1)?,
                omega2: parse_terms(self.dim, 3, &s.omega2)?,
            },
            None => SU3Data::standard(),
        };
        Ok((CircleBundleModel::new(base, f)?, su3))
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_form(path: &Path) -> Result<AltForm> {
    read_json::<FormDocument>(path)?.to_form()
}

pub fn read_model(path: &Path) -> Result<ModelDocument> {
    read_json(path)
}

#[derive(Parser, Debug)]
#[command(name = "stableforms", version, about = "Stable 3-forms, cross products and G₂ models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    H,
    U,
    O,
    B,
}

impl From<Algebra> for AlgebraTag {
    fn from(a: Algebra) -> Self {
        match a {
            Algebra::H => AlgebraTag::H,
            Algebra::U => AlgebraTag::U,
            Algebra::O => AlgebraTag::O,
            Algebra::B => AlgebraTag::B,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    X,
    X1,
    X2,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::X => Variant::X,
            VariantArg::X1 => Variant::X1,
            VariantArg::X2 => Variant::X2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BridgeSource {
    Vcp7,
    Vcp6,
    Stable6,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orbit class, λ or |signature| of Q, and stabilizer dimension.
    Classify {
        file: PathBuf,
        #[arg(long, value_parser = ["6", "7"])]
        dim: String,
        /// Coefficient c of the volume form c·e¹…ⁿ.
        #[arg(long, allow_hyphen_values = true)]
        vol: Option<String>,
        #[arg(long)]
        canonicalize: bool,
        #[arg(long)]
        json: bool,
    },
    /// Basis multiplication table.
    Cayley {
        #[arg(long, ignore_case = true)]
        algebra: Algebra,
        #[arg(long)]
        json: bool,
    },
    /// Constructions between cross products and stable forms.
    Bridge {
        #[arg(long)]
        from: BridgeSource,
        #[arg(long, default_value = "o", ignore_case = true)]
        algebra: Algebra,
        #[arg(long, default_value = "x1", ignore_case = true)]
        variant: VariantArg,
        /// Unit vector a, as `e0` or comma-separated rationals.
        #[arg(long, default_value = "e0")]
        a: String,
        /// Plane as two vectors, e.g. `e0,e4`.
        #[arg(long)]
        plane: Option<String>,
        /// Form document for --from stable6.
        #[arg(long)]
        form: Option<PathBuf>,
        /// Inner product for --from stable6: `{"gram": [["1", "0", …], …]}`.
        #[arg(long)]
        ip: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        vol: Option<String>,
    },
    /// Fernández–Gray predicates for a circle bundle model.
    G2class { model: PathBuf },
    /// Hitchin density, critical-point check, and optionally the first variation.
    Hitchin {
        model: PathBuf,
        form: PathBuf,
        #[arg(long)]
        variation: Option<PathBuf>,
    },
    /// Para-Calabi–Yau relations for α, β and optionally ω.
    ParaCy {
        model: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
        #[arg(long)]
        omega: Option<PathBuf>,
    },
    /// Randomized check of the cross product or composition identities.
    VcpCheck {
        #[arg(long, ignore_case = true)]
        algebra: Algebra,
        #[arg(long, ignore_case = true)]
        variant: Option<VariantArg>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

/// Pretty JSON with sorted keys.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    serde_json::to_string_pretty(&value).expect("serializable")
}

fn volume(dim: usize, c: Option<&str>) -> Result<VolumeForm> {
    match c {
        None => Ok(VolumeForm::standard(dim)),
        Some(c) => VolumeForm::scaled(dim, parse_scalar(c)?),
    }
}

fn parse_vector(s: &str, dim: usize) -> Result<Vec<Scalar>> {
    let t = s.trim();
    if let Some(i) = t.strip_prefix('e') {
        let i: usize = i.parse().map_err(|_| Error::Parse(format!("invalid basis vector `{s}`")))?;
        if i >= dim {
            return Err(Error::Parse(format!("basis vector `{s}` out of range e0..e{}", dim - 1)));
        }
        let mut v = vec![Scalar::from_integer(0.into()); dim];
        v[i] = Scalar::from_integer(1.into());
        return Ok(v);
    }
    let v = t.split(',').map(parse_scalar).collect::<Result<Vec<_>>>()?;
    if v.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
    }
    Ok(v)
}

fn matrix_strings(m: &crate::linalg::Matrix<Scalar>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(format_scalar).collect()).collect()
}

fn cmd_classify(file: &Path, dim: usize, vol: Option<&str>, canonicalize: bool, json_out: bool) -> Result<String> {
    let form = read_form(file)?;
    if form.dim() != dim || form.degree() != 3 {
        return Err(Error::Shape(format!(
            "expected a 3-form on dimension {dim}, got degree {} on dimension {}",
            form.degree(),
            form.dim()
        )));
    }
    let vol = volume(dim, vol)?;
    let stab_dim = stable6::stabilizer_dim(&form)?;
    let mut out = BTreeMap::new();
    out.insert("stab_dim", json!(stab_dim));
    let text;
    if dim == 6 {
        let class = stable6::classify6(&form, &vol)?;
        let lambda = stable6::lambda(&form, &vol)?;
        text = format!("{class}, lambda={}, stab_dim={stab_dim}", format_scalar(&lambda));
        out.insert("class", json!(class));
        out.insert("lambda", json!(format_scalar(&lambda)));
        if canonicalize && class != stable6::OrbitClass6::NotStable {
            let c = stable6::canonicalize6(&form, &vol)?;
            let basis = match c.basis_rational() {
                Some(g) => json!(matrix_strings(&g.matrix)),
                None => {
                    let m = &c.basis;
                    json!((0..6)
                        .map(|r| (0..6).map(|k| format!("{:?}", m[(r, k)])).collect::<Vec<_>>())
                        .collect::<Vec<_>>())
                }
            };
            out.insert("canonical_basis", basis);
        }
    } else {
        let class = stable7::classify7(&form, &vol)?;
        let inertia = stable7::q_inertia(&form, &vol)?;
        let sig = inertia.signature().abs();
        text = format!("{class}, |sig|={sig}, stab_dim={stab_dim}");
        out.insert("class", json!(class));
        out.insert("abs_signature", json!(sig));
        if canonicalize && class == stable7::OrbitClass7::O7Minus {
            let c = stable7::canonicalize7(&form, &vol)?;
            let rows: Vec<Vec<f64>> = (0..7).map(|r| (0..7).map(|k| c.basis[(r, k)]).collect()).collect();
            out.insert("canonical_basis", json!(rows));
            out.insert("residual", json!(c.residual));
        }
    }
    Ok(if json_out { to_json(&out) } else { text })
}

fn basis_name(sign: i32, k: usize) -> String {
    format!("{}e{k}", if sign < 0 { "-" } else { "+" })
}

fn cmd_cayley(algebra: Algebra, json_out: bool) -> String {
    let tag: AlgebraTag = algebra.into();
    let n = tag.dim();
    let table: Vec<Vec<String>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (s, k) = compalg::basis_product(tag, i, j);
                    basis_name(s, k)
                })
                .collect()
        })
        .collect();
    if json_out {
        return to_json(&json!({ "algebra": tag.to_string(), "dim": n, "table": table }));
    }
    let mut lines = vec![format!("{tag}  e_i·e_j (row i, column j)")];
    for (i, row) in table.iter().enumerate() {
        lines.push(format!("e{i}: {}", row.iter().map(|c| format!("{c:>4}")).collect::<Vec<_>>().join(" ")));
    }
    lines.join("\n")
}

fn three_fold(algebra: Algebra, variant: VariantArg) -> Result<CrossProduct> {
    let tag: AlgebraTag = algebra.into();
    if !matches!(tag, AlgebraTag::O | AlgebraTag::B) {
        return Err(Error::Shape(format!("cross products need 𝕆 or 𝔹, got {tag}")));
    }
    CrossProduct::three_fold(tag, variant.into())
}

#[derive(Deserialize)]
struct IpDocument {
    gram: Vec<Vec<String>>,
}

fn read_ip(path: &Path) -> Result<InnerProduct> {
    let doc: IpDocument = read_json(path)?;
    let rows = doc
        .gram
        .iter()
        .map(|r| r.iter().map(|c| parse_scalar(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("gram matrix must be square".into()));
    }
    InnerProduct::new(crate::linalg::Matrix::from_rows(rows))
}

#[allow(clippy::too_many_arguments)]
fn cmd_bridge(
    from: BridgeSource,
    algebra: Algebra,
    variant: VariantArg,
    a: &str,
    plane: Option<&str>,
    form: Option<&Path>,
    ip: Option<&Path>,
    vol: Option<&str>,
) -> Result<String> {
    match from {
        BridgeSource::Vcp7 => {
            let cp = three_fold(algebra, variant)?;
            let a = parse_vector(a, 8)?;
            let r = bridge::vcp_to_stable7(&cp, &a)?;
            Ok(to_json(&json!({ "class": r.class, "phi": FormDocument::from_form(&r.phi) })))
        }
        BridgeSource::Vcp6 => {
            let cp = three_fold(algebra, variant)?;
            let plane = plane.ok_or_else(|| Error::Parse("--from vcp6 needs --plane".into()))?;
            let parts: Vec<&str> = plane.split(';').collect();
            let (a, b) = match parts.as_slice() {
                [a, b] => (parse_vector(a, 8)?, parse_vector(b, 8)?),
                _ => match plane.split(',').collect::<Vec<_>>().as_slice() {
                    [a, b] if a.trim().starts_with('e') && b.trim().starts_with('e') => {
                        (parse_vector(a, 8)?, parse_vector(b, 8)?)
                    }
                    _ => return Err(Error::Parse(format!("invalid plane `{plane}`; use `e0,e4` or `v;w`"))),
                },
            };
            let r = bridge::vcp_to_stable6(&cp, &a, &b)?;
            Ok(to_json(&json!({
                "class": r.class,
                "lambda": format_scalar(&r.structure.lambda),
                "omega": FormDocument::from_form(&r.omega),
                "omega_hat": FormDocument::from_form(&r.omega_hat),
                "hat_branch": r.hat_branch,
                "k_matches": r.k_matches,
            })))
        }
        BridgeSource::Stable6 => {
            let path = form.ok_or_else(|| Error::Parse("--from stable6 needs --form".into()))?;
            let omega = read_form(path)?;
            if omega.dim() != 6 || omega.degree() != 3 {
                return Err(Error::Shape("--from stable6 needs a 3-form on dimension 6".into()));
            }
            let ip = ip.map(read_ip).transpose()?;
            let vol = volume(6, vol)?;
            let r = bridge::stable6_to_7(&omega, ip.as_ref(), &vol)?;
            let mut out = serde_json::to_value(&r).expect("serializable");
            if let (Some(phi), Value::Object(map)) = (&r.phi, &mut out) {
                map.insert("phi".into(), serde_json::to_value(FormDocument::from_form(phi)).expect("serializable"));
            }
            Ok(to_json(&out))
        }
    }
}

fn cmd_g2class(model: &Path) -> Result<String> {
    let (cb, su3) = read_model(model)?.to_bundle()?;
    let report = framecalc::classify_g2(&cb, &su3)?;
    Ok(to_json(&report))
}

fn cmd_hitchin(model: &Path, form: &Path, variation: Option<&Path>) -> Result<String> {
    let model = read_model(model)?.to_model()?;
    let omega = read_form(form)?;
    if omega.dim() != model.dim() || omega.degree() != 3 {
        return Err(Error::Shape("the form must be a 3-form on the model".into()));
    }
    let v = framecalc::hitchin_eval(&model, &omega)?;
    let mut out = BTreeMap::new();
    out.insert("lambda", json!(format_scalar(&v.lambda)));
    out.insert("phi_density", json!(v.value));
    if stable6::classify6(&omega, &VolumeForm::standard(6))? != stable6::OrbitClass6::NotStable {
        out.insert("critical", json!(framecalc::critical_point_check(&model, &omega)?));
    }
    if let Some(path) = variation {
        let dot = read_form(path)?;
        let var = framecalc::hitchin_variation(&omega, &dot, &VolumeForm::standard(6))?;
        out.insert(
            "variation",
            json!({
                "derivative": var.derivative,
                "pairing": var.pairing,
                "constant": framecalc::HITCHIN_CONSTANT,
                "relative_error": var.relative_error(),
            }),
        );
    }
    Ok(to_json(&out))
}

fn cmd_para_cy(model: &Path, alpha: &Path, beta: &Path, omega: Option<&Path>) -> Result<String> {
    let model = read_model(model)?.to_model()?;
    let a = read_form(alpha)?;
    let b = read_form(beta)?;
    let w = omega.map(read_form).transpose()?;
    Ok(to_json(&framecalc::para_cy_check(&model, &a, &b, w.as_ref())?))
}

fn cmd_vcp_check(algebra: Algebra, variant: Option<VariantArg>, trials: usize) -> Result<String> {
    let tag: AlgebraTag = algebra.into();
    let mut rng = random::rng_from_env(0);
    let report = match variant {
        None => compalg::verify_identities(tag, trials, &mut rng),
        Some(VariantArg::X) => {
            if !matches!(tag, AlgebraTag::O | AlgebraTag::B) {
                return Err(Error::Shape(format!("cross products need 𝕆 or 𝔹, got {tag}")));
            }
            vcp::verify_axioms(&CrossProduct::two_fold(tag)?, trials, &mut rng)
        }
        Some(v) => vcp::verify_axioms(&three_fold(algebra, v)?, trials, &mut rng),
    };
    Ok(to_json(&json!({
        "algebra": tag.to_string(),
        "variant": variant.map(|v| Variant::from(v).to_string()),
        "passed": report.all_passed(),
        "report": report,
    })))
}

/// Runs a parsed command and returns what it prints.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Classify { file, dim, vol, canonicalize, json } => {
            cmd_classify(file, dim.parse().expect("validated by clap"), vol.as_deref(), *canonicalize, *json)
        }
        Command::Cayley { algebra, json } => Ok(cmd_cayley(*algebra, *json)),
        Command::Bridge { from, algebra, variant, a, plane, form, ip, vol } => {
            cmd_bridge(*from, *algebra, *variant, a, plane.as_deref(), form.as_deref(), ip.as_deref(), vol.as_deref())
        }
        Command::G2class { model } => cmd_g2class(model),
        Command::Hitchin { model, form, variation } => cmd_hitchin(model, form, variation.as_deref()),
        Command::ParaCy { model, alpha, beta, omega } => cmd_para_cy(model, alpha, beta, omega.as_deref()),
        Command::VcpCheck { algebra, variant, trials } => cmd_vcp_check(*algebra, *variant, *trials),
    }
}
