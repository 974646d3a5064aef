//! Command-line front end. Every command produces one JSON document (or an
//! SVG for `figure1`).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::center::{compute_center, CenterError, CenterOptions, CenterPresentation};
use crate::commpoly::CPoly;
use crate::curve::{sigma_order, CurveError, SklyaninParams};
use crate::exactfield::{CycNum, ParseError, DEFAULT_CONDUCTOR};
use crate::freealg::{NCPoly, RewriteError, RewriteSystem, Word};
use crate::poisson::PoissonStructure;
use crate::reps::{report, RepError, RepFile, RepReport};
use crate::specialize::{specialize, SpecializeError, SpecializeOptions, LIFT_NAMES};
use crate::strata::{
    azumaya_test, classify_stratum, discriminant_zero_set, expected_irrep_profile, figure1_svg, slice_singulars,
    StrataError, YGeometry, YPoint, ZeroSet,
};

pub const Z_NAMES: [&str; 4] = ["z1", "z2", "z3", "g"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{flag}: {reason}")]
    Flag { flag: &'static str, reason: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Center(#[from] CenterError),
    #[error(transparent)]
    Specialize(#[from] SpecializeError),
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("sigma has no finite order up to {0}")]
    NotPi(u32),
    #[error("{0}")]
    Failed(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Parser, Debug)]
#[command(name = "sklyanin", version, about = "Exact computations with PI Sklyanin algebras")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// a,b,c as exact scalars, e.g. 1,-1,-1
    #[arg(long, global = true, default_value = "1,1,2")]
    pub params: String,
    /// Conductor m of the coefficient field ℚ(ζ_m)
    #[arg(long, global = true, default_value_t = DEFAULT_CONDUCTOR)]
    pub conductor: u32,
    #[arg(long = "degree-cap", global = true)]
    pub degree_cap: Option<usize>,
    #[arg(long = "order-cap", global = true, default_value_t = 12)]
    pub order_cap: u32,
    /// α,β,γ for the deformation (a + αħ, b + βħ, c + γħ)
    #[arg(long, global = true, default_value = "0,0,1")]
    pub direction: String,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Compact single-line JSON
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    SigmaOrder,
    Hilbert {
        #[arg(long = "max-degree", default_value_t = 10)]
        max_degree: usize,
    },
    Center,
    Bracket,
    Jacobi,
    Specialize {
        #[arg(long = "level-bound", default_value_t = 16)]
        level_bound: u32,
    },
    Classify {
        /// z1,z2,z3,g
        #[arg(long)]
        point: String,
    },
    SliceSingulars {
        #[arg(long)]
        gamma: String,
    },
    VerifyRep {
        #[arg(long)]
        file: PathBuf,
    },
    Discriminant {
        /// A single k; all k in 1..=n² when omitted
        #[arg(long)]
        k: Option<u32>,
    },
    Figure1 {
        #[arg(long, default_value_t = 6)]
        n: u32,
    },
}

/// What a command produced. `ok` is false when a verification failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub body: String,
    pub ok: bool,
}

fn flag_err(flag: &'static str, reason: impl ToString) -> CliError {
    CliError::Flag {
        flag,
        reason: reason.to_string(),
    }
}

pub fn parse_list(s: &str, len: usize, m: u32, flag: &'static str) -> Result<Vec<CycNum>, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != len {
        return Err(flag_err(flag, format!("expected {len} comma-separated scalars, got {s:?}")));
    }
    parts
        .iter()
        .map(|p| CycNum::parse_in(p, m).map_err(|e| flag_err(flag, e)))
        .collect()
}

impl RunConfig {
    pub fn with_params(params: &str) -> Self {
        RunConfig {
            params: params.into(),
            conductor: DEFAULT_CONDUCTOR,
            degree_cap: None,
            order_cap: 12,
            direction: "0,0,1".into(),
            out: None,
            json: false,
        }
    }

    pub fn sklyanin_params(&self) -> Result<SklyaninParams, CliError> {
        let v = parse_list(&self.params, 3, self.conductor, "--params")?;
        let [a, b, c]: [CycNum; 3] = v.try_into().expect("three scalars");
        Ok(SklyaninParams::new(a, b, c)?)
    }

    fn center(&self) -> Result<CenterPresentation, CliError> {
        let opts = CenterOptions {
            order_cap: self.order_cap,
            degree_cap: self.degree_cap,
            ..CenterOptions::default()
        };
        Ok(compute_center(&self.sklyanin_params()?, &opts)?)
    }

    fn pi_degree(&self) -> Result<u32, CliError> {
        sigma_order(&self.sklyanin_params()?, self.order_cap)?.ok_or(CliError::NotPi(self.order_cap))
    }

    fn params_strings(&self) -> Result<[String; 3], CliError> {
        Ok(self.sklyanin_params()?.triple().map(|c| c.to_string_in(self.conductor)))
    }
}

/// A commutative polynomial in z1, z2, z3, g: a display string and its terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CPolyDto {
    pub display: String,
    pub terms: Vec<(Vec<u32>, String)>,
}

impl CPolyDto {
    pub fn encode(p: &CPoly, m: u32) -> Self {
        let mut terms: Vec<(Vec<u32>, String)> = p.terms().map(|(e, c)| (e.clone(), c.to_string_in(m))).collect();
        terms.sort();
        CPolyDto {
            display: p.to_string_with(&Z_NAMES, m),
            terms,
        }
    }

    pub fn decode(&self, m: u32) -> Result<CPoly, CliError> {
        let mut p = CPoly::zero(4);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), CycNum::parse_in(c, m)?);
        }
        Ok(p)
    }
}

/// A noncommutative polynomial in x, y, z as (word, coefficient) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NCPolyDto(pub Vec<(String, String)>);

impl NCPolyDto {
    pub fn encode(p: &NCPoly<CycNum>, m: u32) -> Self {
        NCPolyDto(p.terms().map(|(w, c)| (w.to_string(), c.to_string_in(m))).collect())
    }

    pub fn decode(&self, m: u32) -> Result<NCPoly<CycNum>, CliError> {
        let mut p = NCPoly::zero();
        for (w, c) in &self.0 {
            let word = if w.is_empty() || w == "1" {
                Word::empty()
            } else {
                Word::parse(w).ok_or_else(|| CliError::Failed(format!("bad word {w:?}")))?
            };
            p.add_term(word, CycNum::parse_in(c, m)?);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaOrderDoc {
    pub params: [String; 3],
    pub order: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertDoc {
    pub params: [String; 3],
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterDoc {
    pub params: [String; 3],
    pub n: u32,
    pub degree_cap: usize,
    pub good_basis: [[String; 3]; 3],
    pub g: NCPolyDto,
    pub z: [NCPolyDto; 3],
    pub c: Vec<String>,
    pub f: CPolyDto,
    pub ell: Option<CPolyDto>,
    pub alpha: Option<String>,
    pub phi: CPolyDto,
    pub f3: Option<CPolyDto>,
}

impl CenterDoc {
    pub fn encode(cp: &CenterPresentation, m: u32) -> Self {
        let s = |c: &CycNum| c.to_string_in(m);
        CenterDoc {
            params: cp.params.triple().map(|c| s(&c)),
            n: cp.n,
            degree_cap: cp.degree_cap(),
            good_basis: cp.basis.forms.clone().map(|r| r.map(|c| s(&c))),
            g: NCPolyDto::encode(&cp.g, m),
            z: [0, 1, 2].map(|i| NCPolyDto::encode(&cp.z[i], m)),
            c: cp.c.iter().map(s).collect(),
            f: CPolyDto::encode(&cp.f, m),
            ell: cp.structure.ell.as_ref().map(|p| CPolyDto::encode(p, m)),
            alpha: cp.structure.alpha.as_ref().map(s),
            phi: CPolyDto::encode(&cp.structure.phi, m),
            f3: cp.f3.as_ref().map(|p| CPolyDto::encode(p, m)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub params: [String; 3],
    pub n: u32,
    /// {z1,z2}, {z2,z3}, {z3,z1}
    pub brackets: [CPolyDto; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiDoc {
    pub params: [String; 3],
    pub n: u32,
    pub residues: Vec<CPolyDto>,
    pub all_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializeDoc {
    pub params: [String; 3],
    pub direction: [String; 3],
    pub n: u32,
    pub naive_level: u32,
    pub level: u32,
    pub eta: String,
    pub brackets: [CPolyDto; 3],
    /// derivations[z][w] = ∂_z(w), z ∈ {z1, z2, z3, g}, w ∈ {x, y, z}
    pub derivations: Vec<Vec<NCPolyDto>>,
    pub corrections: Vec<(u32, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub point: [String; 4],
    pub stratum: String,
    pub core: String,
    pub azumaya: bool,
    pub expected_dims: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceDoc {
    pub gamma: String,
    pub points: Vec<[String; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantDoc {
    pub n: u32,
    pub zero_sets: Vec<(u32, ZeroSet)>,
}

fn point_strings(p: &YPoint, m: u32) -> [String; 4] {
    p.0.clone().map(|c| c.to_string_in(m))
}

fn render<T: Serialize>(doc: &T, compact: bool) -> String {
    let mut s = if compact {
        serde_json::to_string(doc)
    } else {
        serde_json::to_string_pretty(doc)
    }
    .expect("plain data");
    s.push('\n');
    s
}

/// Run one command. Output bytes depend only on the command and config.
pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Output, CliError> {
    let m = cfg.conductor;
    let ok = |body| Ok(Output { body, ok: true });
    match cmd {
        Command::SigmaOrder => {
            let order = sigma_order(&cfg.sklyanin_params()?, cfg.order_cap)?;
            let doc = SigmaOrderDoc {
                params: cfg.params_strings()?,
                order,
            };
            ok(render(&doc, cfg.json))
        }
        Command::Hilbert { max_degree } => {
            let cap = cfg.degree_cap.unwrap_or(*max_degree).max(*max_degree);
            let rs = RewriteSystem::new(cfg.sklyanin_params()?.triple(), cap)?;
            let doc = HilbertDoc {
                params: cfg.params_strings()?,
                dims: rs.hilbert_dims(*max_degree)?,
            };
            ok(render(&doc, cfg.json))
        }
        Command::Center => ok(render(&CenterDoc::encode(&cfg.center()?, m), cfg.json)),
        Command::Bracket => {
            let cp = cfg.center()?;
            let ps = PoissonStructure::from_f(&cp.f);
            let doc = BracketDoc {
                params: cfg.params_strings()?,
                n: cp.n,
                brackets: ps.brackets.clone().map(|b| CPolyDto::encode(&b, m)),
            };
            ok(render(&doc, cfg.json))
        }
        Command::Jacobi => {
            let cp = cfg.center()?;
            let residues = PoissonStructure::from_f(&cp.f).jacobi_residues();
            let all_zero = residues.iter().all(|r| r.is_zero());
            let doc = JacobiDoc {
                params: cfg.params_strings()?,
                n: cp.n,
                residues: residues.iter().map(|r| CPolyDto::encode(r, m)).collect(),
                all_zero,
            };
            Ok(Output {
                body: render(&doc, cfg.json),
                ok: all_zero,
            })
        }
        Command::Specialize { level_bound } => {
            let cp = cfg.center()?;
            let dir = parse_list(&cfg.direction, 3, m, "--direction")?;
            let opts = SpecializeOptions {
                direction: dir.clone().try_into().expect("three scalars"),
                level_bound: *level_bound,
                degree_cap: cfg.degree_cap,
            };
            let sp = specialize(&cp, &opts)?;
            let doc = SpecializeDoc {
                params: cfg.params_strings()?,
                direction: [0, 1, 2].map(|i| dir[i].to_string_in(m)),
                n: cp.n,
                naive_level: sp.naive_level,
                level: sp.result.level,
                eta: sp.eta.to_string_in(m),
                brackets: sp.result.brackets.clone().map(|b| CPolyDto::encode(&b, m)),
                derivations: sp
                    .result
                    .derivations
                    .iter()
                    .map(|row| row.iter().map(|d| NCPolyDto::encode(d, m)).collect())
                    .collect(),
                corrections: sp
                    .result
                    .corrections
                    .iter()
                    .map(|c| (c.level, c.coeffs.iter().map(|x| x.to_string_in(m)).collect()))
                    .collect(),
            };
            debug_assert_eq!(doc.derivations.len(), LIFT_NAMES.len());
            ok(render(&doc, cfg.json))
        }
        Command::Classify { point } => {
            let cp = cfg.center()?;
            let geo = YGeometry::from_center(&cp);
            let v = parse_list(point, 4, m, "--point")?;
            let p = YPoint(v.try_into().expect("four scalars"));
            let st = classify_stratum(&geo, &p)?;
            let doc = ClassifyDoc {
                point: point_strings(&p, m),
                stratum: st.tag.to_string(),
                core: st.core.describe(m),
                azumaya: azumaya_test(&geo, &p)?,
                expected_dims: expected_irrep_profile(&geo, &p)?,
            };
            ok(render(&doc, cfg.json))
        }
        Command::SliceSingulars { gamma } => {
            let cp = cfg.center()?;
            let geo = YGeometry::from_center(&cp);
            let g = CycNum::parse_in(gamma, m)?;
            let doc = SliceDoc {
                gamma: g.to_string_in(m),
                points: slice_singulars(&geo, &g).iter().map(|p| point_strings(p, m)).collect(),
            };
            ok(render(&doc, cfg.json))
        }
        Command::VerifyRep { file } => {
            let text = std::fs::read_to_string(file).map_err(|source| CliError::Io {
                path: file.clone(),
                source,
            })?;
            let rf = RepFile::from_json(&text)?;
            let (params, rep) = rf.decode()?;
            let cp = compute_center(
                &params,
                &CenterOptions {
                    order_cap: cfg.order_cap,
                    degree_cap: cfg.degree_cap,
                    ..CenterOptions::default()
                },
            )?;
            let r: RepReport = report(&rep, &cp, rf.conductor)?;
            let all = r.relations_ok && r.irreducible && r.stratum_consistent;
            Ok(Output {
                body: render(&r, cfg.json),
                ok: all,
            })
        }
        Command::Discriminant { k } => {
            let n = cfg.pi_degree()?;
            let ks: Vec<u32> = match k {
                Some(k) => vec![*k],
                None => (1..=n * n).collect(),
            };
            let mut zero_sets = Vec::new();
            for k in ks {
                zero_sets.push((k, discriminant_zero_set(n, k)?));
            }
            ok(render(&DiscriminantDoc { n, zero_sets }, cfg.json))
        }
        Command::Figure1 { n } => ok(figure1_svg(*n)),
    }
}

/// Size the global rayon pool from SKLYANIN_THREADS when set.
pub fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("SKLYANIN_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| flag_err("SKLYANIN_THREADS", format!("not a thread count: {v:?}")))?;
        // a second initialization in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json<T: for<'de> Deserialize<'de>>(cmd: Command, params: &str) -> T {
        let out = run(&cmd, &RunConfig::with_params(params)).unwrap();
        assert!(out.ok);
        serde_json::from_str(&out.body).unwrap()
    }

    #[test]
    fn sigma_order_document() {
        let doc: SigmaOrderDoc = run_json(Command::SigmaOrder, "1,1,2");
        assert_eq!(doc.order, Some(2));
        let raw: serde_json::Value = serde_json::from_str(&run(&Command::SigmaOrder, &RunConfig::with_params("1,1,2")).unwrap().body).unwrap();
        assert_eq!(raw["order"], 2);
    }

    #[test]
    fn center_document_round_trips() {
        let cfg = RunConfig::with_params("1,1,2");
        let cp = cfg.center().unwrap();
        let out = run(&Command::Center, &cfg).unwrap();
        let doc: CenterDoc = serde_json::from_str(&out.body).unwrap();
        assert_eq!(doc.f.decode(12).unwrap(), cp.f);
        assert_eq!(doc.g.decode(12).unwrap(), cp.g);
        assert_eq!(doc.z[1].decode(12).unwrap(), cp.z[1]);
        assert_eq!(render(&doc, false), out.body);
        assert_eq!(run(&Command::Center, &cfg).unwrap(), out);
    }

    #[test]
    fn bad_flags_are_errors() {
        let cfg = RunConfig::with_params("1,1");
        assert!(matches!(run(&Command::SigmaOrder, &cfg), Err(CliError::Flag { .. })));
        let cfg = RunConfig::with_params("1,1,1");
        assert!(matches!(run(&Command::SigmaOrder, &cfg), Err(CliError::Curve(_))));
    }

    #[test]
    fn discriminant_document() {
        let doc: DiscriminantDoc = run_json(Command::Discriminant { k: None }, "1,1,2");
        assert_eq!(doc.n, 2);
        assert_eq!(doc.zero_sets[0], (1, ZeroSet::Empty));
        assert_eq!(doc.zero_sets[1], (2, ZeroSet::Origin));
    }
}
