//! Curve and run-log CSV files, full round-trip precision.
//!
//! Curves use the schema `s,c1,c2,t1,t2`, one row per sample, 17 significant
//! digits (re-parsing reproduces every f64 bit-exactly).  A sidecar
//! `<name>.meta.json` carries the orbit kind, step, and stop descriptors so a
//! re-ingested curve feeds downstream reports identically.

use anyhow::{bail, Context, Result};
use morseforge_core::orbit::{CurveState, OrbitKind, OrbitPoint};
use morseforge_core::profile::{CurveMeta, ProfileCurve, StopReason};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

/// 17 significant digits: enough to round-trip any IEEE double.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CurveSidecar {
    pub kind: String,
    pub m: u32,
    pub h: f64,
    pub edge_stop: f64,
    pub end: String,
    pub start_r0: Option<f64>,
    pub start_delta: f64,
    pub on_bisector: bool,
}

fn stop_name(r: StopReason) -> &'static str {
    match r {
        StopReason::EdgeA1 => "edge-a1",
        StopReason::EdgeA2 => "edge-a2",
        StopReason::Pole => "pole",
        StopReason::MaxLength => "max-length",
    }
}

fn stop_from(name: &str) -> Result<StopReason> {
    Ok(match name {
        "edge-a1" => StopReason::EdgeA1,
        "edge-a2" => StopReason::EdgeA2,
        "pole" => StopReason::Pole,
        "max-length" => StopReason::MaxLength,
        other => bail!("unknown stop reason {other:?}"),
    })
}

/// Write `curve.csv` (or any name) plus its `.meta.json` sidecar.
pub fn write_curve(path: &Path, curve: &ProfileCurve) -> Result<()> {
    let mut out = String::with_capacity(curve.samples.len() * 96 + 16);
    out.push_str("s,c1,c2,t1,t2\n");
    for st in &curve.samples {
        out.push_str(&fmt(st.s));
        out.push(',');
        out.push_str(&fmt(st.point.c1));
        out.push(',');
        out.push_str(&fmt(st.point.c2));
        out.push(',');
        out.push_str(&fmt(st.tangent[0]));
        out.push(',');
        out.push_str(&fmt(st.tangent[1]));
        out.push('\n');
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    let (kind, m) = match curve.kind {
        OrbitKind::Spherical => ("spherical", 2),
        OrbitKind::Flat { m } => ("flat", m),
    };
    let sidecar = CurveSidecar {
        kind: kind.into(),
        m,
        h: curve.h,
        edge_stop: curve.meta.edge_stop,
        end: stop_name(curve.meta.end).into(),
        start_r0: curve.meta.start_r0,
        start_delta: curve.meta.start_delta,
        on_bisector: curve.meta.on_bisector,
    };
    let meta_path = sidecar_path(path);
    fs::write(&meta_path, serde_json::to_string_pretty(&sidecar)?)
        .with_context(|| format!("writing {}", meta_path.display()))?;
    Ok(())
}

pub fn sidecar_path(curve_path: &Path) -> std::path::PathBuf {
    let mut p = curve_path.to_path_buf();
    let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    p.set_file_name(format!("{stem}.meta.json"));
    p
}

/// Read a curve CSV back; the sidecar restores the kind and meta, otherwise
/// `fallback_kind` applies and the meta is inferred from the samples.
pub fn read_curve(path: &Path, fallback_kind: Option<OrbitKind>) -> Result<ProfileCurve> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 {
            if line.trim() != "s,c1,c2,t1,t2" {
                bail!("unexpected curve header {line:?}");
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut vals = [0.0f64; 5];
        let mut parts = line.split(',');
        for v in &mut vals {
            let tok = parts.next().with_context(|| format!("short row {lineno}"))?;
            *v = tok.trim().parse().with_context(|| format!("bad float {tok:?} on row {lineno}"))?;
        }
        samples.push(CurveState {
            point: OrbitPoint::new(vals[1], vals[2]),
            tangent: [vals[3], vals[4]],
            s: vals[0],
        });
    }
    if samples.len() < 2 {
        bail!("curve has fewer than two samples");
    }
    let meta_path = sidecar_path(path);
    if meta_path.exists() {
        let sc: CurveSidecar = serde_json::from_str(&fs::read_to_string(&meta_path)?)
            .with_context(|| format!("parsing {}", meta_path.display()))?;
        let kind = match sc.kind.as_str() {
            "spherical" => OrbitKind::Spherical,
            "flat" => OrbitKind::Flat { m: sc.m },
            other => bail!("unknown orbit kind {other:?}"),
        };
        Ok(ProfileCurve {
            kind,
            h: sc.h,
            samples,
            meta: CurveMeta {
                start_r0: sc.start_r0,
                start_delta: sc.start_delta,
                end: stop_from(&sc.end)?,
                edge_stop: sc.edge_stop,
                on_bisector: sc.on_bisector,
            },
        })
    } else {
        let kind = fallback_kind.unwrap_or(OrbitKind::Spherical);
        let h = (samples[samples.len() - 1].s - samples[0].s) / (samples.len() as f64 - 1.0);
        let end = match morseforge_core::geometry::classify_end(samples.last().unwrap(), kind) {
            morseforge_core::geometry::EndKind::EdgeA1 => StopReason::EdgeA1,
            morseforge_core::geometry::EndKind::EdgeA2 => StopReason::EdgeA2,
            morseforge_core::geometry::EndKind::Pole => StopReason::Pole,
            morseforge_core::geometry::EndKind::Interior => StopReason::MaxLength,
        };
        Ok(ProfileCurve {
            kind,
            h,
            samples,
            meta: CurveMeta {
                start_r0: None,
                start_delta: 0.0,
                end,
                edge_stop: 1e-4,
                on_bisector: false,
            },
        })
    }
}

/// Write a generic CSV table with a header and full-precision floats.
pub fn write_table(path: &Path, header: &str, rows: &[Vec<String>]) -> Result<()> {
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
