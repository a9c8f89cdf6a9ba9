use serde::Serialize;

use crate::error::Result;
use crate::rootdata::LQSpec;
use crate::schubert::{SamplingScheme, SchubertCoord};
use crate::symmetry::{LongCosetCertificate, Setting};
use crate::weyl::{length_one_element, WeylElt};

pub const SYMMETRIC: &str = "symmetric (all sampled points covered)";
pub const NOT_SYMMETRIC: &str = "not symmetric (certified obstruction at listed points)";

/// Listed obstructions per cell; the `none` count is always complete.
pub const MAX_LISTED: usize = 10;

#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    pub point: SchubertCoord,
    /// Present for nonzero points of the length-one cell.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<LongCosetCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub w: WeylElt,
    pub samples: usize,
    pub preserving: usize,
    pub swapping: usize,
    pub none: usize,
    pub obstructions: Vec<Obstruction>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub spec: LQSpec,
    pub v: WeylElt,
    pub cells: Vec<CellReport>,
    pub verdict: String,
}

impl RestrictionReport {
    pub fn is_symmetric(&self) -> bool {
        self.verdict == SYMMETRIC
    }
}

/// Classify every sampled point outside `{eQ, vQ}`.
pub fn verify_restriction(setting: &Setting<'_>, scheme: &SamplingScheme) -> Result<RestrictionReport> {
    let cd = setting.cd;
    let lie = cd.lie();
    let v1 = length_one_element(lie);
    let mut cells = Vec::new();
    for h in cd.cells() {
        let mut rep = CellReport {
            w: h.w.clone(),
            samples: 0,
            preserving: 0,
            swapping: 0,
            none: 0,
            obstructions: Vec::new(),
        };
        for x in cd.sample_cell(h, scheme) {
            if setting.is_removed(&x)? {
                continue;
            }
            rep.samples += 1;
            let c = setting.classify(&x)?;
            rep.preserving += c.preserving_exists() as usize;
            rep.swapping += c.swapping_exists() as usize;
            if c.witness().is_none() {
                rep.none += 1;
                if rep.obstructions.len() < MAX_LISTED {
                    let certificate = if setting.v.length > 1 && h == &v1 && !x.is_zero() {
                        Some(setting.long_coset_certificate(&x)?)
                    } else {
                        None
                    };
                    rep.obstructions.push(Obstruction { point: x, certificate });
                }
            }
        }
        cells.push(rep);
    }
    let symmetric = cells.iter().all(|c| c.none == 0);
    Ok(RestrictionReport {
        spec: *lie.spec(),
        v: setting.v.w.clone(),
        cells,
        verdict: if symmetric { SYMMETRIC } else { NOT_SYMMETRIC }.to_string(),
    })
}
