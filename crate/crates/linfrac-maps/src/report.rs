//! Output formatting. JSON is newline-delimited, one object per row;
//! CSV and markdown carry the same columns minus the witness blobs.

use serde::Serialize;

use crate::enumerate::{CensusRow, MapClass};
use crate::oracle::DiffReport;
use crate::projective::SemilinearAuto;
use crate::symmetry::Classification;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub j: u32,
}

impl WitnessRecord {
    pub fn from_auto(w: &SemilinearAuto) -> Self {
        let [a, b, c, d] = w.matrix().rep().entries();
        WitnessRecord {
            a: a.to_string(),
            b: b.to_string(),
            c: c.to_string(),
            d: d.to_string(),
            j: w.twist(),
        }
    }
}

/// One census class, flattened for output.
#[derive(Clone, Debug, Serialize)]
pub struct MapRecord {
    pub q: u32,
    pub k: u32,
    pub l: u32,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_l: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_l: Option<String>,
    pub flag_group: String,
    pub orbit: u32,
    pub sd: bool,
    pub sp: bool,
    pub mr: bool,
    pub bucket: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality_witness: Option<WitnessRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub petrie_witness: Option<WitnessRecord>,
}

impl MapRecord {
    pub fn from_class(q: u32, class: &MapClass) -> Self {
        let sig = &class.sig;
        MapRecord {
            q,
            k: sig.k,
            l: sig.l,
            family: sig.family.as_str().to_string(),
            xi_k: sig.xi_k.map(|x| x.to_string()),
            xi_l: sig.xi_l.map(|x| x.to_string()),
            omega_k: sig.omega_k.map(|x| x.to_string()),
            omega_l: sig.omega_l.map(|x| x.to_string()),
            flag_group: class.flag_group.as_str().to_string(),
            orbit: class.orbit,
            sd: class.flags.sd,
            sp: class.flags.sp,
            mr: class.flags.mr,
            bucket: class
                .flags
                .bucket()
                .expect("census rejects mr without sp")
                .as_str()
                .to_string(),
            duality_witness: None,
            petrie_witness: None,
        }
    }

    pub fn with_witnesses(mut self, cls: &Classification) -> Self {
        self.duality_witness = cls.duality.as_ref().map(WitnessRecord::from_auto);
        self.petrie_witness = cls.petrie.as_ref().map(WitnessRecord::from_auto);
        self
    }
}

fn opt(s: &Option<String>) -> &str {
    s.as_deref().unwrap_or("")
}

pub fn render_census(rows: &[CensusRow], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = String::new();
            for row in rows {
                out.push_str(&serde_json::to_string(row).expect("plain struct"));
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("q,maps,none,sd_only,sp_only,sd_sp,sp_mr,sd_sp_mr\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.q, r.maps, r.none, r.sd_only, r.sp_only, r.sd_sp, r.sp_mr, r.sd_sp_mr
                ));
            }
            out
        }
        Format::Markdown => {
            let mut out = String::from(
                "| q | maps | none | sd_only | sp_only | sd_sp | sp_mr | sd_sp_mr |\n\
                 |---|------|------|---------|---------|-------|-------|----------|\n",
            );
            for r in rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    r.q, r.maps, r.none, r.sd_only, r.sp_only, r.sd_sp, r.sp_mr, r.sd_sp_mr
                ));
            }
            out
        }
    }
}

pub fn render_listing(records: &[MapRecord], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = String::new();
            for rec in records {
                out.push_str(&serde_json::to_string(rec).expect("plain struct"));
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut out = String::from(
                "q,k,l,family,xi_k,xi_l,omega_k,omega_l,flag_group,orbit,sd,sp,mr,bucket\n",
            );
            for r in records {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    r.q,
                    r.k,
                    r.l,
                    r.family,
                    opt(&r.xi_k),
                    opt(&r.xi_l),
                    opt(&r.omega_k),
                    opt(&r.omega_l),
                    r.flag_group,
                    r.orbit,
                    r.sd,
                    r.sp,
                    r.mr,
                    r.bucket
                ));
            }
            out
        }
        Format::Markdown => {
            let mut out = String::from(
                "| q | k | l | family | xi_k | xi_l | omega_k | omega_l | group | orbit | sd | sp | mr | bucket |\n\
                 |---|---|---|--------|------|------|---------|---------|-------|-------|----|----|----|--------|\n",
            );
            for r in records {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    r.q,
                    r.k,
                    r.l,
                    r.family,
                    opt(&r.xi_k),
                    opt(&r.xi_l),
                    opt(&r.omega_k),
                    opt(&r.omega_l),
                    r.flag_group,
                    r.orbit,
                    r.sd,
                    r.sp,
                    r.mr,
                    r.bucket
                ));
            }
            out
        }
    }
}

pub fn render_diff(diff: &DiffReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string(diff).expect("plain struct");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::from("q,kind,k_or_bucket,l,oracle,census\n");
            out.push_str(&format!(
                "{},total,,,{},{}\n",
                diff.q, diff.oracle_total, diff.census_total
            ));
            for m in &diff.kl_mismatches {
                out.push_str(&format!(
                    "{},kl,{},{},{},{}\n",
                    diff.q, m.k, m.l, m.oracle, m.census
                ));
            }
            for m in &diff.bucket_mismatches {
                out.push_str(&format!(
                    "{},bucket,{},,{},{}\n",
                    diff.q, m.bucket, m.oracle, m.census
                ));
            }
            out
        }
        Format::Markdown => {
            let mut out = format!(
                "q = {}: {} (oracle {}, census {})\n",
                diff.q,
                if diff.ok { "agree" } else { "DISAGREE" },
                diff.oracle_total,
                diff.census_total
            );
            if !diff.kl_mismatches.is_empty() || !diff.bucket_mismatches.is_empty() {
                out.push_str("\n| where | oracle | census |\n|-------|--------|--------|\n");
                for m in &diff.kl_mismatches {
                    out.push_str(&format!("| ({},{}) | {} | {} |\n", m.k, m.l, m.oracle, m.census));
                }
                for m in &diff.bucket_mismatches {
                    out.push_str(&format!("| {} | {} | {} |\n", m.bucket, m.oracle, m.census));
                }
            }
            out
        }
    }
}
