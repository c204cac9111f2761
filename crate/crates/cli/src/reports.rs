//! Serializable report shapes; the JSON keys are the stable interface.

use morseforge_core::cone::IndicialReport;
use morseforge_core::geometry::QuantityReport;
use morseforge_core::shoot::HsiangProfile;
use morseforge_core::spectrum::SpectralReport;
use serde::Serialize;

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuantityJson {
    pub volume: f64,
    pub int_a3: f64,
    pub sup_rho_a: f64,
    pub cheng_tysk: f64,
    pub minimality_sup: f64,
    pub divergent_flags: Vec<String>,
}

impl From<&QuantityReport> for QuantityJson {
    fn from(r: &QuantityReport) -> Self {
        let mut flags = Vec::new();
        if r.int_a3_divergent {
            flags.push("intA3".to_string());
        }
        if r.cheng_tysk_divergent {
            flags.push("chengTysk".to_string());
        }
        QuantityJson {
            volume: r.volume,
            int_a3: r.int_a3,
            sup_rho_a: r.sup_rho_a,
            cheng_tysk: r.cheng_tysk,
            minimality_sup: r.minimality_sup,
            divergent_flags: flags,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ModeJson {
    pub p: u32,
    pub q: u32,
    pub mult: u32,
    pub neg: usize,
    #[serde(rename = "nearNull")]
    pub near_null: usize,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectrumJson {
    pub pmax: u32,
    pub modes: Vec<ModeJson>,
    pub total_index: u64,
    pub nullity: u64,
}

impl From<&SpectralReport> for SpectrumJson {
    fn from(r: &SpectralReport) -> Self {
        SpectrumJson {
            pmax: r.pmax,
            modes: r
                .modes
                .iter()
                .map(|m| ModeJson {
                    p: m.p,
                    q: m.q,
                    mult: m.mult,
                    neg: m.negatives,
                    near_null: m.near_null,
                })
                .collect(),
            total_index: r.total_index,
            nullity: r.nullity_estimate,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct IndicialEntryJson {
    pub p: u32,
    pub q: u32,
    pub re1: f64,
    pub im1: f64,
    pub re2: f64,
    pub im2: f64,
    pub mult: u32,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IndicialJson {
    pub c: f64,
    pub beta: f64,
    pub strip: [f64; 2],
    pub entries: Vec<IndicialEntryJson>,
    pub crossing_sum: u64,
    pub fredholm_index: i64,
    pub isomorphism: bool,
}

impl From<&IndicialReport> for IndicialJson {
    fn from(r: &IndicialReport) -> Self {
        IndicialJson {
            c: r.c,
            beta: r.beta,
            strip: [r.strip.0, r.strip.1],
            entries: r
                .entries
                .iter()
                .map(|e| IndicialEntryJson {
                    p: e.p,
                    q: e.q,
                    re1: e.roots.0.re,
                    im1: e.roots.0.im,
                    re2: e.roots.1.re,
                    im2: e.roots.1.im,
                    mult: e.mult,
                })
                .collect(),
            crossing_sum: r.crossing_sum,
            fredholm_index: r.fredholm_index,
            isomorphism: r.isomorphism,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BranchJson {
    pub i: u32,
    pub crossings: usize,
    pub r0: f64,
    pub symmetry_defect: f64,
    pub length: f64,
    pub h: f64,
    pub residual_certificate: Option<f64>,
    pub crossing_points: Vec<[f64; 2]>,
}

impl BranchJson {
    pub fn new(p: &HsiangProfile, certificate: Option<f64>) -> Self {
        BranchJson {
            i: p.i,
            crossings: p.crossings,
            r0: p.r0,
            symmetry_defect: p.symmetry_defect,
            length: p.curve.length(),
            h: p.curve.h,
            residual_certificate: certificate,
            crossing_points: morseforge_core::shoot::crossing_table(p)
                .into_iter()
                .map(|(s, r)| [s, r])
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorJson<'a> {
    pub error: ErrorBody<'a>,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody<'a> {
    pub kind: &'a str,
    pub message: String,
}
