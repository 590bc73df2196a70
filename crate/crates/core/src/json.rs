//! Deterministic JSON serialization for every pipeline stage.
//!
//! Rationals are `"num/den"` strings; lattice coordinates are JSON
//! integers; phases carry a display float plus the exact data that
//! produced them. Object keys serialize sorted, so identical inputs give
//! byte-identical output.

use serde_json::{json, Map, Value};

use crate::analyze::{AnalyzeBundle, RunConfig};
use crate::charge::{CentralCharge, PhaseKey};
use crate::cone::{ConeComponent, GapCertificate, HeartCertificate, ImaginaryCone, Sign};
use crate::exceptional::{ExceptionalCollection, ExceptionalReport};
use crate::gauss::{ratio_string, Gaussian};
use crate::lattice::LatticeVector;
use crate::quiver::{FormPair, Quiver, QuiverType};
use crate::repr::Representation;
use crate::scalar::Scalar;
use crate::tilt::{GldimEstimate, HeartSMC, TiltDirection, TotallyReport};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u64 = 1;

pub fn int_value<I: Scalar>(v: &I) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

pub fn vector_value<I: Scalar>(v: &LatticeVector<I>) -> Value {
    Value::Array(v.coords().iter().map(int_value).collect())
}

pub fn gaussian_value<I: Scalar>(z: &Gaussian<I>) -> Value {
    json!({ "re": ratio_string(&z.re), "im": ratio_string(&z.im) })
}

pub fn phase_value<I: Scalar>(p: &PhaseKey<I>) -> Value {
    let exact = p
        .exact_quarter()
        .map(|r| json!(format!("{}/{}", r.numer(), r.denom())))
        .unwrap_or(Value::Null);
    json!({
        "approx": p.approx(),
        "exact": exact,
        "point": gaussian_value(p.point()),
        "shift": p.turns(),
    })
}

pub fn matrix_value<I: Scalar>(m: &[Vec<I>]) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(int_value).collect()))
            .collect(),
    )
}

pub fn quiver_value(q: &Quiver) -> Value {
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|&(s, t)| json!([s + 1, t + 1]))
        .collect();
    let mut obj = Map::new();
    obj.insert("n".into(), json!(q.n()));
    obj.insert("arrows".into(), Value::Array(arrows));
    if let Some(ls) = q.labels() {
        obj.insert("labels".into(), json!(ls));
    }
    Value::Object(obj)
}

pub fn forms_value<I: Scalar>(f: &FormPair<I>) -> Value {
    json!({ "euler": matrix_value(f.euler()), "cartan": matrix_value(f.cartan()) })
}

pub fn quiver_type_value<I: Scalar>(t: &QuiverType<I>) -> Value {
    match t {
        QuiverType::Finite => json!({ "kind": "finite" }),
        QuiverType::Affine { delta } => json!({ "kind": "affine", "delta": vector_value(delta) }),
        QuiverType::Indefinite => json!({ "kind": "indefinite" }),
    }
}

pub fn charge_value<I: Scalar>(z: &CentralCharge<I>) -> Value {
    Value::Array(z.values().iter().map(gaussian_value).collect())
}

pub fn root_set_value<'a, I: Scalar + 'a>(
    roots: impl IntoIterator<Item = &'a LatticeVector<I>>,
) -> Value {
    let mut sorted: Vec<&LatticeVector<I>> = roots.into_iter().collect();
    sorted.sort();
    Value::Array(sorted.into_iter().map(vector_value).collect())
}

pub fn semistable_value<I: Scalar>(ss: &[(LatticeVector<I>, PhaseKey<I>)]) -> Value {
    Value::Array(
        ss.iter()
            .map(|(v, p)| json!({ "class": vector_value(v), "phase": phase_value(p) }))
            .collect(),
    )
}

pub fn cone_value<I: Scalar>(c: &ImaginaryCone<I>) -> Value {
    match c {
        ImaginaryCone::Empty => json!({ "kind": "empty" }),
        ImaginaryCone::Ray { delta } => json!({ "kind": "ray", "delta": vector_value(delta) }),
        ImaginaryCone::Sampled { generators, bound } => json!({
            "kind": "sampled",
            "bound": bound,
            "generators": root_set_value(generators.iter()),
        }),
    }
}

pub fn components_value<I: Scalar>(cs: &[ConeComponent<I>]) -> Value {
    Value::Array(
        cs.iter()
            .map(|c| {
                json!({
                    "sign": match c.sign { Sign::Plus => "+", Sign::Minus => "-" },
                    "interval": [phase_value(&c.interval.0), phase_value(&c.interval.1)],
                    "witnesses": [vector_value(&c.witnesses.0), vector_value(&c.witnesses.1)],
                    "members": root_set_value(c.members.iter()),
                })
            })
            .collect(),
    )
}

pub fn gap_value<I: Scalar>(gap: &GapCertificate<I>) -> Value {
    json!({
        "theta": phase_value(&gap.theta),
        "theta_prime": phase_value(&gap.theta_prime),
        "direction": [int_value(&gap.direction.0), int_value(&gap.direction.1)],
        "occupied_phases": Value::Array(
            gap.occupied
                .iter()
                .map(|m| json!({ "phase": phase_value(&m.phase), "class": vector_value(&m.class) }))
                .collect()
        ),
        "component_intervals": Value::Array(
            gap.component_intervals
                .iter()
                .map(|(a, b)| json!([phase_value(a), phase_value(b)]))
                .collect()
        ),
    })
}

pub fn heart_value<I: Scalar>(h: &HeartCertificate<I>) -> Value {
    json!({
        "theta": phase_value(&h.theta),
        "simples": Value::Array(
            h.simples
                .iter()
                .map(|s| json!({
                    "root": vector_value(&s.root),
                    "shift": s.shift,
                    "class": vector_value(&s.class),
                    "phase": phase_value(&s.phase),
                }))
                .collect()
        ),
        "basis_matrix": matrix_value(&h.basis),
        "det": int_value(&h.det),
    })
}

pub fn collection_value<I: Scalar>(c: &ExceptionalCollection<I>) -> Value {
    json!({
        "theta": phase_value(&c.theta),
        "entries": Value::Array(
            c.entries
                .iter()
                .map(|e| json!({
                    "root": vector_value(&e.root),
                    "shift": e.shift,
                    "phase": phase_value(&e.phase),
                }))
                .collect()
        ),
    })
}

pub fn report_value(r: &ExceptionalReport) -> Value {
    json!({ "ok": r.ok(), "violations": r.violations })
}

pub fn gldim_value<I: Scalar>(g: &GldimEstimate<I>) -> Value {
    let witness = match &g.witness {
        None => Value::Null,
        Some(w) => json!({
            "from": vector_value(&w.from),
            "to": vector_value(&w.to),
            "degree": w.degree,
        }),
    };
    json!({ "approx": g.approx(), "le_one": g.le_one(), "witness": witness })
}

pub fn totally_value<I: Scalar>(t: &TotallyReport<I>) -> Value {
    json!({
        "value": t.totally,
        "failing": root_set_value(t.failing.iter()),
        "gldim_le_one": t.gldim_le_one,
    })
}

pub fn config_value(cfg: &RunConfig) -> Value {
    json!({
        "height": cfg.height,
        "budget": cfg.budget,
        "retries": cfg.retries,
        "slack": cfg.slack,
        "seed": cfg.seed,
    })
}

pub fn bundle_value<I: Scalar>(b: &AnalyzeBundle<I>) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "config": config_value(&b.config),
        "effective_height": b.height_used,
        "quiver": quiver_value(&b.quiver),
        "forms": forms_value(&b.forms),
        "quiver_type": quiver_type_value(&b.qtype),
        "charge": charge_value(&b.charge),
        "roots": {
            "real": root_set_value(b.real_roots.iter()),
            "imaginary": root_set_value(b.imaginary_roots.iter()),
        },
        "semistable": semistable_value(&b.semistable),
        "support": {
            "eps_sq": ratio_string(&b.support.min_f_sq),
            "z_norm_sq": ratio_string(&b.support.z_norm_sq),
            "argmin": vector_value(&b.support.argmin),
        },
        "cone": cone_value(&b.cone),
        "components": components_value(&b.components),
        "gap": gap_value(&b.gap),
        "heart": heart_value(&b.heart),
        "exceptional": collection_value(&b.collection),
        "exceptional_report": report_value(&b.report),
        "gldim_estimate": gldim_value(&b.gldim),
        "totally_semistable": totally_value(&b.totally),
    })
}

/// Gap-subcommand payload.
pub fn gap_bundle_value<I: Scalar>(
    gap: &GapCertificate<I>,
    components: &[ConeComponent<I>],
    heart: &HeartCertificate<I>,
) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "theta": phase_value(&gap.theta),
        "theta_prime": phase_value(&gap.theta_prime),
        "occupied_phases": Value::Array(
            gap.occupied
                .iter()
                .map(|m| json!({ "phase": phase_value(&m.phase), "class": vector_value(&m.class) }))
                .collect()
        ),
        "components": components_value(components),
        "simples": Value::Array(
            heart.simples
                .iter()
                .map(|s| json!({
                    "root": vector_value(&s.root),
                    "shift": s.shift,
                    "class": vector_value(&s.class),
                    "phase": phase_value(&s.phase),
                }))
                .collect()
        ),
        "det": int_value(&heart.det),
    })
}

pub fn heart_smc_value<I: Scalar>(h: &HeartSMC<I>) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "simples": Value::Array(
            h.simples
                .iter()
                .map(|(root, shift)| json!({ "root": vector_value(root), "shift": shift }))
                .collect()
        ),
        "provenance": Value::Array(
            h.word
                .iter()
                .map(|s| {
                    let d = match s.dir {
                        TiltDirection::Left => "L",
                        TiltDirection::Right => "R",
                    };
                    json!(format!("{}{}", d, s.index + 1))
                })
                .collect()
        ),
    })
}

/// Parses a heart from `{"simples": [{"root": [...], "shift": k}, ...]}` or
/// a bare array of entries.
pub fn parse_heart_smc<I: Scalar>(text: &str) -> Result<HeartSMC<I>> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad heart JSON: {e}")))?;
    let list = v
        .get("simples")
        .and_then(|s| s.as_array())
        .or_else(|| v.as_array())
        .ok_or_else(|| Error::Parse("heart JSON must hold a `simples` array".into()))?;
    let mut simples = Vec::new();
    for e in list {
        let root = e
            .get("root")
            .and_then(|r| r.as_array())
            .ok_or_else(|| Error::Parse("heart entry is missing `root`".into()))?;
        let coords: Option<Vec<i64>> = root.iter().map(|c| c.as_i64()).collect();
        let coords = coords.ok_or_else(|| Error::Parse("root coordinates must be integers".into()))?;
        let shift = e
            .get("shift")
            .and_then(|s| s.as_i64())
            .ok_or_else(|| Error::Parse("heart entry is missing `shift`".into()))?;
        simples.push((LatticeVector::from_ints(&coords), shift));
    }
    Ok(HeartSMC {
        simples,
        word: Vec::new(),
    })
}

pub fn representation_value<I: Scalar>(q: &Quiver, r: &Representation<I>) -> Value {
    let mut maps = Vec::new();
    for (&(s, t), mats) in &r.maps {
        for m in mats {
            maps.push(json!({
                "from": s + 1,
                "to": t + 1,
                "matrix": Value::Array(
                    m.iter()
                        .map(|row| Value::Array(row.iter().map(|x| json!(ratio_string(x))).collect()))
                        .collect()
                ),
            }));
        }
    }
    json!({
        "schema_version": SCHEMA_VERSION,
        "quiver": quiver_value(q),
        "dims": r.dims,
        "maps": Value::Array(maps),
    })
}

/// Parses `{"dims": [...], "maps": [{"from": i, "to": j, "matrix": [["p/q",...],...]}]}`.
pub fn parse_representation<I: Scalar>(q: &Quiver, text: &str) -> Result<Representation<I>> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad representation JSON: {e}")))?;
    let dims_v = v
        .get("dims")
        .and_then(|d| d.as_array())
        .ok_or_else(|| Error::Parse("representation JSON is missing `dims`".into()))?;
    let dims: Option<Vec<usize>> = dims_v.iter().map(|d| d.as_u64().map(|x| x as usize)).collect();
    let dims = dims.ok_or_else(|| Error::Parse("`dims` must be nonnegative integers".into()))?;
    let mut rep = Representation::zero_maps(q, dims);
    let mut seen: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    if let Some(maps) = v.get("maps").and_then(|m| m.as_array()) {
        for e in maps {
            let from = e
                .get("from")
                .and_then(|x| x.as_u64())
                .filter(|&x| x >= 1)
                .ok_or_else(|| Error::Parse("map entry needs a 1-based `from`".into()))?
                as usize
                - 1;
            let to = e
                .get("to")
                .and_then(|x| x.as_u64())
                .filter(|&x| x >= 1)
                .ok_or_else(|| Error::Parse("map entry needs a 1-based `to`".into()))?
                as usize
                - 1;
            let rows = e
                .get("matrix")
                .and_then(|m| m.as_array())
                .ok_or_else(|| Error::Parse("map entry needs a `matrix`".into()))?;
            let mut mat = Vec::new();
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?;
                let mut out = Vec::new();
                for cell in row {
                    let s = cell
                        .as_str()
                        .map(String::from)
                        .or_else(|| cell.as_i64().map(|x| x.to_string()))
                        .ok_or_else(|| Error::Parse("matrix entries are `p/q` strings".into()))?;
                    out.push(crate::gauss::parse_ratio::<I>(&s)?);
                }
                mat.push(out);
            }
            let slot = seen.entry((from, to)).or_insert(0);
            let mats = rep
                .maps
                .get_mut(&(from, to))
                .ok_or_else(|| Error::Parse(format!("no arrow {}->{}", from + 1, to + 1)))?;
            if *slot >= mats.len() {
                return Err(Error::Parse(format!(
                    "too many matrices for arrow {}->{}",
                    from + 1,
                    to + 1
                )));
            }
            mats[*slot] = mat;
            *slot += 1;
        }
    }
    rep.validate(q)?;
    Ok(rep)
}

/// Compact stable rendering used by `--format text`.
pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable value")
}

pub fn to_compact(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable value")
}
