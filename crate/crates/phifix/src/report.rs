//! Parameter sweeps and machine-readable reports.
//!
//! A sweep walks every group of the selected families up to a maximum order,
//! runs the involution enumeration and classification on each, and checks
//! the combined verdicts against the expected classification boundary:
//! the star property (every order-2 automorphism fixing the Frattini
//! subgroup elementwise is inner) holds exactly for the first family with
//! `r >= 2`.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::aut::{star_condition, EnumLimits, EnumMode, StarError};
use crate::group::{family_params_up_to, Elem, Family, FamilyGroup, GroupParams};
use crate::structure;
use crate::witness::match_witness_case;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Option<ReportFormat> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Some(ReportFormat::Json),
            "csv" => Some(ReportFormat::Csv),
            "md" | "markdown" => Some(ReportFormat::Markdown),
            _ => None,
        }
    }
}

/// Structural profile of one group, as printed by `info`.
#[derive(Debug, Clone, Serialize)]
pub struct GroupInfo {
    pub family: Family,
    pub n: u32,
    pub r: Option<u32>,
    pub order: u64,
    pub center_order: u64,
    pub center_cyclic: bool,
    pub frattini_order: u64,
    pub derived_order: u64,
    pub omega1_center_order: u64,
    pub z_frattini_order: u64,
    pub d: u32,
    pub d_center: u32,
    pub d_z_frattini: u32,
    /// Whether `C_G(Z(Frattini)) = Frattini`.
    pub centralizer_z_frattini_equals_frattini: bool,
}

pub fn group_info(group: &FamilyGroup) -> GroupInfo {
    let z = structure::center(group);
    let phi = structure::frattini(group);
    let derived = structure::derived_subgroup(group);
    let z_phi = structure::subgroup_center(&phi);
    let omega = structure::omega1(&z).expect("the center is abelian");
    let cent = structure::centralizer(group, &z_phi);
    GroupInfo {
        family: group.family(),
        n: group.n(),
        r: group.r(),
        order: group.order(),
        center_order: z.order(),
        center_cyclic: structure::is_cyclic(&z),
        frattini_order: phi.order(),
        derived_order: derived.order(),
        omega1_center_order: omega.order(),
        z_frattini_order: z_phi.order(),
        d: structure::min_generator_count(group),
        d_center: structure::subgroup_min_generator_count(&z),
        d_z_frattini: structure::subgroup_min_generator_count(&z_phi),
        centralizer_z_frattini_equals_frattini: cent.set_eq(&phi),
    }
}

pub fn render_info(info: &GroupInfo, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(info).expect("info serializes") + "\n"
        }
        ReportFormat::Csv => {
            let mut out = String::from(
                "family,n,r,order,center_order,center_cyclic,frattini_order,derived_order,\
                 omega1_center_order,z_frattini_order,d,d_center,d_z_frattini,\
                 centralizer_z_frattini_equals_frattini\n",
            );
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                info.family,
                info.n,
                info.r.map_or(String::new(), |r| r.to_string()),
                info.order,
                info.center_order,
                info.center_cyclic,
                info.frattini_order,
                info.derived_order,
                info.omega1_center_order,
                info.z_frattini_order,
                info.d,
                info.d_center,
                info.d_z_frattini,
                info.centralizer_z_frattini_equals_frattini,
            ));
            out
        }
        ReportFormat::Markdown => {
            let group = GroupParams::new(info.family, info.n, info.r);
            let mut out = format!("# {group}\n\n");
            let rows = [
                ("order".to_string(), info.order.to_string()),
                ("|Z(G)|".to_string(), info.center_order.to_string()),
                ("Z(G) cyclic".to_string(), info.center_cyclic.to_string()),
                ("|Frattini|".to_string(), info.frattini_order.to_string()),
                ("|G'|".to_string(), info.derived_order.to_string()),
                ("|Omega_1(Z(G))|".to_string(), info.omega1_center_order.to_string()),
                ("|Z(Frattini)|".to_string(), info.z_frattini_order.to_string()),
                ("d(G)".to_string(), info.d.to_string()),
                ("d(Z(G))".to_string(), info.d_center.to_string()),
                ("d(Z(Frattini))".to_string(), info.d_z_frattini.to_string()),
                (
                    "C_G(Z(Frattini)) = Frattini".to_string(),
                    info.centralizer_z_frattini_equals_frattini.to_string(),
                ),
            ];
            out.push_str("| property | value |\n|---|---|\n");
            for (k, v) in rows {
                out.push_str(&format!("| {k} | {v} |\n"));
            }
            out
        }
    }
}

/// Sweep configuration.
#[derive(Debug, Clone)]
pub struct SweepSettings {
    pub families: Vec<Family>,
    pub max_order: u64,
    pub mode: EnumMode,
    pub seed: u64,
    /// Restrict to a single `n` (and `r`) when set.
    pub only_n: Option<u32>,
    pub only_r: Option<u32>,
}

#[derive(Debug, Clone, Error)]
pub enum SweepError {
    #[error("no families selected")]
    EmptyFamilies,
    #[error("brute-force mode is limited to max-order <= {0}")]
    BruteCap(u64),
    #[error("max-order {0} exceeds the engine cap {1}")]
    EngineCap(u64, u64),
    #[error(transparent)]
    Star(#[from] StarError),
}

/// One sweep row: the structural profile plus the involution census.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub params: GroupParams,
    pub order: u64,
    pub center_order: u64,
    pub center_cyclic: bool,
    pub frattini_order: u64,
    pub derived_order: u64,
    pub d_z_frattini: u32,
    pub star: bool,
    pub total: usize,
    pub inner: usize,
    pub noninner: Vec<(Elem, Elem, Option<&'static str>)>,
    pub runtime_ms: u64,
}

impl SweepRow {
    /// The classification boundary predicts the star property exactly for
    /// the first family with `r >= 2` (the constraint `2r <= n` is part of
    /// the family definition).
    pub fn predicted_star(&self) -> bool {
        self.params.family == Family::Q1 && self.params.r.is_some_and(|r| r >= 2)
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub mismatches: Vec<GroupParams>,
}

impl SweepOutcome {
    pub fn matches_prediction(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Enumerates the selected parameter space and builds one row per group;
/// rows are computed concurrently and reported in `(family, n, r)` order.
pub fn run_sweep(settings: &SweepSettings) -> Result<SweepOutcome, SweepError> {
    if settings.families.is_empty() {
        return Err(SweepError::EmptyFamilies);
    }
    if settings.max_order > crate::group::DEFAULT_ORDER_CAP {
        return Err(SweepError::EngineCap(
            settings.max_order,
            crate::group::DEFAULT_ORDER_CAP,
        ));
    }
    let default_limits = EnumLimits::default();
    if settings.mode == EnumMode::Brute && settings.max_order > default_limits.brute_max_order {
        return Err(SweepError::BruteCap(default_limits.brute_max_order));
    }
    let limits = EnumLimits {
        pruned_max_order: settings.max_order.max(default_limits.pruned_max_order),
        brute_max_order: settings.max_order.max(default_limits.brute_max_order),
    };

    let mut families = settings.families.clone();
    families.sort_unstable();
    families.dedup();
    let mut params: Vec<GroupParams> = Vec::new();
    for family in families {
        params.extend(family_params_up_to(family, settings.max_order));
    }
    if let Some(n) = settings.only_n {
        params.retain(|p| p.n == n);
    }
    if let Some(r) = settings.only_r {
        params.retain(|p| p.r == Some(r));
    }

    let rows: Result<Vec<SweepRow>, SweepError> = params
        .par_iter()
        .map(|&p| {
            let start = Instant::now();
            let group = p.make().expect("enumerated parameters are valid");
            let report = star_condition(&group, settings.mode, &limits)?;
            let info = group_info(&group);
            let noninner = report
                .noninner_witnesses
                .iter()
                .map(|w| (w.image_a, w.image_b, match_witness_case(&group, w)))
                .collect();
            Ok(SweepRow {
                params: p,
                order: group.order(),
                center_order: info.center_order,
                center_cyclic: info.center_cyclic,
                frattini_order: info.frattini_order,
                derived_order: info.derived_order,
                d_z_frattini: info.d_z_frattini,
                star: report.star_holds,
                total: report.total,
                inner: report.inner_count,
                noninner,
                runtime_ms: start.elapsed().as_millis() as u64,
            })
        })
        .collect();
    let rows = rows?;
    let mismatches = rows
        .iter()
        .filter(|row| row.star != row.predicted_star())
        .map(|row| row.params)
        .collect();
    Ok(SweepOutcome { rows, mismatches })
}

#[derive(Serialize)]
struct WitnessJson {
    image_a: Elem,
    image_b: Elem,
    matched_case: Option<String>,
}

#[derive(Serialize)]
struct CountsJson {
    total: usize,
    inner: usize,
    noninner: usize,
}

#[derive(Serialize)]
struct RowJson {
    family: String,
    n: u32,
    r: Option<u32>,
    order: u64,
    center_order: u64,
    center_cyclic: bool,
    frattini_order: u64,
    derived_order: u64,
    d_z_phi: u32,
    star: bool,
    phi_fixing_involutions: CountsJson,
    noninner_witnesses: Vec<WitnessJson>,
    runtime_ms: u64,
}

#[derive(Serialize)]
struct SummaryJson {
    groups: usize,
    star_groups: usize,
    prediction: &'static str,
    matches_prediction: bool,
    mismatches: Vec<String>,
}

#[derive(Serialize)]
struct SweepJson {
    rows: Vec<RowJson>,
    summary: SummaryJson,
}

const PREDICTION: &str = "star holds exactly for family Q1 with r >= 2 (and 2r <= n)";

fn row_json(row: &SweepRow) -> RowJson {
    RowJson {
        family: row.params.family.as_str().to_string(),
        n: row.params.n,
        r: row.params.r,
        order: row.order,
        center_order: row.center_order,
        center_cyclic: row.center_cyclic,
        frattini_order: row.frattini_order,
        derived_order: row.derived_order,
        d_z_phi: row.d_z_frattini,
        star: row.star,
        phi_fixing_involutions: CountsJson {
            total: row.total,
            inner: row.inner,
            noninner: row.noninner.len(),
        },
        noninner_witnesses: row
            .noninner
            .iter()
            .map(|(a, b, case)| WitnessJson {
                image_a: *a,
                image_b: *b,
                matched_case: case.map(str::to_string),
            })
            .collect(),
        runtime_ms: row.runtime_ms,
    }
}

pub fn render_sweep(outcome: &SweepOutcome, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let doc = SweepJson {
                rows: outcome.rows.iter().map(row_json).collect(),
                summary: SummaryJson {
                    groups: outcome.rows.len(),
                    star_groups: outcome.rows.iter().filter(|r| r.star).count(),
                    prediction: PREDICTION,
                    matches_prediction: outcome.matches_prediction(),
                    mismatches: outcome.mismatches.iter().map(|p| p.to_string()).collect(),
                },
            };
            serde_json::to_string_pretty(&doc).expect("sweep serializes") + "\n"
        }
        ReportFormat::Csv => {
            let mut out = String::from(
                "family,n,r,order,center_order,center_cyclic,frattini_order,derived_order,\
                 d_z_phi,star,phi_fixing_total,phi_fixing_inner,phi_fixing_noninner,\
                 noninner_witnesses,matched_cases,runtime_ms\n",
            );
            for row in &outcome.rows {
                let witnesses = row
                    .noninner
                    .iter()
                    .map(|(a, b, _)| {
                        format!("({},{},{})->({},{},{})", a.i, a.j, a.k, b.i, b.j, b.k)
                    })
                    .collect::<Vec<_>>()
                    .join(";");
                let cases = row
                    .noninner
                    .iter()
                    .map(|(_, _, c)| c.unwrap_or("-"))
                    .collect::<Vec<_>>()
                    .join(";");
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},\"{}\",\"{}\",{}\n",
                    row.params.family,
                    row.params.n,
                    row.params.r.map_or(String::new(), |r| r.to_string()),
                    row.order,
                    row.center_order,
                    row.center_cyclic,
                    row.frattini_order,
                    row.derived_order,
                    row.d_z_frattini,
                    row.star,
                    row.total,
                    row.inner,
                    row.noninner.len(),
                    witnesses,
                    cases,
                    row.runtime_ms,
                ));
            }
            out
        }
        ReportFormat::Markdown => {
            let mut out = String::from(
                "| group | order | Z order | Phi order | G' order | d(Z(Phi)) | involutions (inner/non-inner) | star | witnesses |\n\
                 |---|---|---|---|---|---|---|---|---|\n",
            );
            for row in &outcome.rows {
                let witnesses = if row.noninner.is_empty() {
                    "-".to_string()
                } else {
                    row.noninner
                        .iter()
                        .map(|(a, b, case)| {
                            format!(
                                "a->({},{},{}), b->({},{},{}) [{}]",
                                a.i,
                                a.j,
                                a.k,
                                b.i,
                                b.j,
                                b.k,
                                case.unwrap_or("-")
                            )
                        })
                        .collect::<Vec<_>>()
                        .join("; ")
                };
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} ({}/{}) | {} | {} |\n",
                    row.params,
                    row.order,
                    row.center_order,
                    row.frattini_order,
                    row.derived_order,
                    row.d_z_frattini,
                    row.total,
                    row.inner,
                    row.noninner.len(),
                    if row.star { "yes" } else { "no" },
                    witnesses,
                ));
            }
            out.push('\n');
            out.push_str(&format!(
                "groups: {}; star groups: {}; prediction: {PREDICTION}; verdict: {}\n",
                outcome.rows.len(),
                outcome.rows.iter().filter(|r| r.star).count(),
                if outcome.matches_prediction() {
                    "consistent".to_string()
                } else {
                    format!(
                        "MISMATCH on {}",
                        outcome
                            .mismatches
                            .iter()
                            .map(|p| p.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    )
                }
            ));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings(families: Vec<Family>, max_order: u64) -> SweepSettings {
        SweepSettings {
            families,
            max_order,
            mode: EnumMode::Pruned,
            seed: 1,
            only_n: None,
            only_r: None,
        }
    }

    #[test]
    fn sweep_q1_matches_prediction() {
        let outcome = run_sweep(&settings(vec![Family::Q1], 1 << 8)).unwrap();
        assert!(outcome.matches_prediction());
        for row in &outcome.rows {
            let r = row.params.r.unwrap();
            assert_eq!(row.star, r >= 2, "row {:?}", row.params);
        }
    }

    #[test]
    fn sweep_q2_r3_all_fail_star_with_matched_witness() {
        let outcome = run_sweep(&settings(vec![Family::Q2, Family::R3], 1 << 9)).unwrap();
        assert!(!outcome.rows.is_empty());
        for row in &outcome.rows {
            assert!(!row.star, "row {:?}", row.params);
            assert!(
                row.noninner.iter().any(|(_, _, case)| case.is_some()),
                "no cataloged witness matched for {:?}",
                row.params
            );
        }
        assert!(outcome.matches_prediction());
    }

    #[test]
    fn sweep_rejects_bad_configs() {
        assert!(matches!(
            run_sweep(&settings(vec![], 64)),
            Err(SweepError::EmptyFamilies)
        ));
        let mut s = settings(vec![Family::Q1], 1 << 11);
        s.mode = EnumMode::Brute;
        assert!(matches!(run_sweep(&s), Err(SweepError::BruteCap(_))));
    }

    #[test]
    fn json_rows_have_schema_keys_in_order() {
        let outcome = run_sweep(&settings(vec![Family::Q1], 64)).unwrap();
        let text = render_sweep(&outcome, ReportFormat::Json);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        let row = &doc["rows"][0];
        let obj = row.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            vec![
                "family",
                "n",
                "r",
                "order",
                "center_order",
                "center_cyclic",
                "frattini_order",
                "derived_order",
                "d_z_phi",
                "star",
                "phi_fixing_involutions",
                "noninner_witnesses",
                "runtime_ms",
            ]
        );
    }

    #[test]
    fn csv_has_fixed_columns() {
        let outcome = run_sweep(&settings(vec![Family::R3], 64)).unwrap();
        let text = render_sweep(&outcome, ReportFormat::Csv);
        let header = text.lines().next().unwrap();
        assert_eq!(
            header,
            "family,n,r,order,center_order,center_cyclic,frattini_order,derived_order,\
             d_z_phi,star,phi_fixing_total,phi_fixing_inner,phi_fixing_noninner,\
             noninner_witnesses,matched_cases,runtime_ms"
        );
        assert_eq!(text.lines().count(), 1 + outcome.rows.len());
    }

    #[test]
    fn info_reports_expected_values() {
        let g = FamilyGroup::new(Family::Q1, 4, Some(2)).unwrap();
        let info = group_info(&g);
        assert_eq!(info.order, 64);
        assert_eq!(info.center_order, 4);
        assert!(info.center_cyclic);
        assert_eq!(info.frattini_order, 16);
        assert_eq!(info.d, 2);
        assert!(info.centralizer_z_frattini_equals_frattini);

        let g = FamilyGroup::new(Family::Q1, 2, Some(1)).unwrap();
        let info = group_info(&g);
        assert_eq!(info.order, 8);
        assert_eq!(info.center_order, 2);
        assert!(!info.centralizer_z_frattini_equals_frattini);
    }
}
