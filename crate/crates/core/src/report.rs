//! Reference invariant tables, suite reproduction and the combined
//! verification pipeline behind the command-line tool.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartab::{dixon_table, CharacterTable};
use crate::error::{Error, Result};
use crate::groups;
use crate::modring::{build_mod_ring_with, join, InvariantReport, Status, Verification};
use crate::permgroup::PermutationGroup;
use crate::sections;

/// One row of a reference table: `(ℓ_p(G), S_p(G), d, ℓ_p(G,1), ext¹_p(G,1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub group: &'static str,
    pub order: u64,
    pub p: u64,
    pub loewy: usize,
    pub s_p: usize,
    pub d: &'static [usize],
    pub loewy_principal: usize,
    pub ext1: usize,
}

impl ReferenceRow {
    pub fn line(&self) -> String {
        format!(
            "ℓ={} S={} d={} ℓ(1)={} ext¹={}",
            self.loewy,
            self.s_p,
            join(self.d),
            self.loewy_principal,
            self.ext1
        )
    }

    pub fn matches(&self, report: &InvariantReport) -> bool {
        let b = report.principal();
        report.loewy == self.loewy
            && report.s_p == self.s_p
            && report.d_sequence == self.d
            && b.loewy == self.loewy_principal
            && b.ext1 == self.ext1
    }
}

const fn row(
    group: &'static str,
    order: u64,
    p: u64,
    loewy: usize,
    s_p: usize,
    d: &'static [usize],
    loewy_principal: usize,
    ext1: usize,
) -> ReferenceRow {
    ReferenceRow {
        group,
        order,
        p,
        loewy,
        s_p,
        d,
        loewy_principal,
        ext1,
    }
}

pub const WEYL_ROWS: &[ReferenceRow] = &[
    row("W(E6)", 51840, 2, 5, 10, &[25, 19, 9, 3, 1], 5, 3),
    row("W(E6)", 51840, 3, 4, 5, &[25, 13, 4, 1], 4, 2),
    row("W(E6)", 51840, 5, 2, 2, &[25, 2], 2, 1),
    row("W(E7)", 2903040, 2, 7, 24, &[60, 52, 35, 18, 7, 3, 1], 7, 4),
    row("W(E7)", 2903040, 3, 4, 5, &[60, 30, 8, 2], 4, 2),
    row("W(E7)", 2903040, 5, 2, 2, &[60, 6], 2, 1),
    row("W(E7)", 2903040, 7, 2, 2, &[60, 2], 2, 1),
    row("W(E8)", 696729600, 2, 8, 32, &[112, 100, 68, 36, 17, 7, 3, 1], 8, 5),
    row("W(E8)", 696729600, 3, 5, 8, &[112, 65, 24, 7, 2], 5, 2),
    row("W(E8)", 696729600, 5, 3, 3, &[112, 17, 2], 3, 1),
    row("W(E8)", 696729600, 7, 2, 2, &[112, 4], 2, 1),
    row("W(F4)", 1152, 2, 5, 14, &[25, 21, 12, 4, 1], 5, 4),
    row("W(F4)", 1152, 3, 3, 4, &[25, 11, 2], 3, 2),
    row("W(H3)", 120, 2, 3, 4, &[10, 6, 1], 3, 2),
    row("W(H3)", 120, 3, 2, 2, &[10, 2], 2, 1),
    row("W(H3)", 120, 5, 3, 3, &[10, 4, 2], 3, 1),
    row("W(H4)", 14400, 2, 4, 7, &[34, 24, 9, 1], 4, 3),
    row("W(H4)", 14400, 3, 3, 3, &[34, 11, 2], 3, 1),
    row("W(H4)", 14400, 5, 5, 6, &[34, 20, 11, 4, 2], 5, 2),
];

pub const ALTERNATING_ROWS: &[ReferenceRow] = &[
    row("A5", 60, 2, 2, 2, &[5, 1], 2, 1),
    row("A5", 60, 3, 2, 2, &[5, 1], 2, 1),
    row("A5", 60, 5, 3, 3, &[5, 2, 1], 3, 1),
    row("A6", 360, 2, 3, 3, &[7, 2, 1], 3, 1),
    row("A6", 360, 3, 3, 3, &[7, 2, 1], 3, 1),
    row("A6", 360, 5, 3, 3, &[7, 2, 1], 3, 1),
    row("A7", 2520, 2, 3, 3, &[9, 3, 1], 3, 1),
    row("A7", 2520, 3, 3, 3, &[9, 3, 1], 3, 1),
    row("A7", 2520, 5, 2, 2, &[9, 1], 2, 1),
    row("A7", 2520, 7, 3, 3, &[9, 2, 1], 3, 1),
    row("A8", 20160, 2, 4, 5, &[14, 6, 2, 1], 4, 2),
    row("A8", 20160, 3, 3, 3, &[14, 6, 2], 3, 1),
    row("A8", 20160, 5, 3, 3, &[14, 3, 1], 2, 1),
    row("A8", 20160, 7, 3, 3, &[14, 2, 1], 3, 1),
    row("A9", 181440, 2, 4, 5, &[18, 8, 3, 1], 4, 2),
    row("A9", 181440, 3, 4, 6, &[18, 10, 3, 1], 4, 3),
    row("A9", 181440, 5, 3, 3, &[18, 4, 1], 2, 1),
    row("A9", 181440, 7, 2, 2, &[18, 1], 2, 1),
    row("A10", 1814400, 2, 5, 7, &[24, 12, 6, 2, 1], 5, 2),
    row("A10", 1814400, 3, 4, 6, &[24, 13, 4, 1], 4, 3),
    row("A10", 1814400, 5, 3, 3, &[24, 4, 1], 3, 1),
    row("A10", 1814400, 7, 3, 3, &[24, 3, 1], 2, 1),
    row("A11", 19958400, 2, 5, 7, &[31, 17, 8, 3, 1], 5, 2),
    row("A11", 19958400, 3, 4, 5, &[31, 16, 6, 1], 4, 2),
    row("A11", 19958400, 5, 3, 3, &[31, 6, 1], 3, 1),
    row("A11", 19958400, 7, 3, 3, &[31, 4, 1], 2, 1),
    row("A11", 19958400, 11, 3, 3, &[31, 2, 1], 3, 1),
    row("A12", 239500800, 2, 6, 10, &[43, 25, 13, 6, 2, 1], 6, 2),
    row("A12", 239500800, 3, 5, 8, &[43, 22, 9, 2, 1], 5, 3),
    row("A12", 239500800, 5, 3, 3, &[43, 10, 2], 3, 1),
    row("A12", 239500800, 7, 3, 3, &[43, 5, 1], 2, 1),
    row("A12", 239500800, 11, 3, 3, &[43, 2, 1], 3, 1),
];

pub const SIMPLE_ROWS: &[ReferenceRow] = &[
    row("GL(3,2)", 168, 2, 3, 3, &[6, 2, 1], 3, 1),
    row("GL(3,2)", 168, 3, 2, 2, &[6, 1], 2, 1),
    row("GL(3,2)", 168, 7, 3, 3, &[6, 2, 1], 3, 1),
    row("SL(2,8)", 504, 2, 2, 2, &[9, 1], 2, 1),
    row("SL(2,8)", 504, 3, 5, 5, &[9, 4, 3, 2, 1], 5, 1),
    row("SL(2,8)", 504, 7, 4, 4, &[9, 3, 2, 1], 4, 1),
    row("SL(3,3)", 5616, 2, 5, 5, &[12, 5, 3, 2, 1], 5, 1),
    row("SL(3,3)", 5616, 3, 3, 3, &[12, 3, 1], 3, 1),
    row("SL(3,3)", 5616, 13, 5, 5, &[12, 4, 3, 2, 1], 5, 1),
    row("SU(3,3)", 6048, 2, 6, 7, &[14, 9, 6, 4, 2, 1], 6, 2),
    row("SU(3,3)", 6048, 3, 3, 3, &[14, 5, 1], 3, 1),
    row("SU(3,3)", 6048, 7, 3, 3, &[14, 2, 1], 3, 1),
    row("M11", 7920, 2, 5, 5, &[10, 5, 3, 2, 1], 5, 1),
    row("M11", 7920, 3, 2, 2, &[10, 2], 2, 1),
    row("M11", 7920, 5, 2, 2, &[10, 1], 2, 1),
    row("M11", 7920, 11, 3, 3, &[10, 2, 1], 3, 1),
    row("PSp(4,3)", 25920, 2, 4, 5, &[20, 12, 5, 1], 4, 2),
    row("PSp(4,3)", 25920, 3, 5, 7, &[20, 14, 8, 3, 1], 5, 2),
    row("PSp(4,3)", 25920, 5, 2, 2, &[20, 1], 2, 1),
    row("M12", 95040, 2, 4, 7, &[15, 9, 3, 1], 4, 3),
    row("M12", 95040, 3, 3, 3, &[15, 4, 1], 3, 1),
    row("M12", 95040, 5, 2, 2, &[15, 2], 2, 1),
    row("M12", 95040, 11, 3, 3, &[15, 2, 1], 3, 1),
    row("J1", 175560, 2, 2, 2, &[15, 4], 2, 1),
    row("J1", 175560, 3, 2, 2, &[15, 4], 2, 1),
    row("J1", 175560, 5, 3, 3, &[15, 6, 3], 3, 1),
    row("J1", 175560, 7, 2, 2, &[15, 1], 2, 1),
    row("J1", 175560, 11, 2, 2, &[15, 1], 2, 1),
    row("J1", 175560, 19, 4, 4, &[15, 3, 2, 1], 4, 1),
    row("M22", 443520, 2, 4, 5, &[12, 5, 2, 1], 4, 2),
    row("M22", 443520, 3, 2, 2, &[12, 2], 2, 1),
    row("M22", 443520, 5, 2, 2, &[12, 1], 2, 1),
    row("M22", 443520, 7, 3, 3, &[12, 2, 1], 3, 1),
    row("M22", 443520, 11, 3, 3, &[12, 2, 1], 3, 1),
    row("J2", 604800, 2, 4, 5, &[21, 11, 3, 1], 4, 2),
    row("J2", 604800, 3, 3, 3, &[21, 7, 1], 3, 1),
    row("J2", 604800, 5, 5, 5, &[21, 10, 6, 2, 1], 5, 1),
    row("J2", 604800, 7, 2, 2, &[21, 1], 2, 1),
    row("HS", 44352000, 2, 5, 9, &[24, 15, 8, 3, 1], 5, 3),
    row("HS", 44352000, 3, 2, 2, &[24, 5], 2, 1),
    row("HS", 44352000, 5, 3, 4, &[24, 8, 2], 3, 2),
    row("HS", 44352000, 7, 2, 2, &[24, 1], 2, 1),
    row("HS", 44352000, 11, 3, 3, &[24, 2, 1], 3, 1),
];

pub const PSL_ROWS: &[ReferenceRow] = &[
    row("PSL(2,2)", 6, 2, 2, 2, &[3, 1], 2, 1),
    row("PSL(2,2)", 6, 3, 2, 2, &[3, 1], 2, 1),
    row("PSL(2,3)", 12, 2, 2, 2, &[4, 1], 2, 1),
    row("PSL(2,3)", 12, 3, 3, 3, &[4, 2, 1], 3, 1),
    row("PSL(2,4)", 60, 2, 2, 2, &[5, 1], 2, 1),
    row("PSL(2,4)", 60, 3, 2, 2, &[5, 1], 2, 1),
    row("PSL(2,4)", 60, 5, 3, 3, &[5, 2, 1], 3, 1),
    row("PSL(2,5)", 60, 2, 2, 2, &[5, 1], 2, 1),
    row("PSL(2,5)", 60, 3, 2, 2, &[5, 1], 2, 1),
    row("PSL(2,5)", 60, 5, 3, 3, &[5, 2, 1], 3, 1),
    row("PSL(2,7)", 168, 2, 3, 3, &[6, 2, 1], 3, 1),
    row("PSL(2,7)", 168, 3, 2, 2, &[6, 1], 2, 1),
    row("PSL(2,7)", 168, 7, 3, 3, &[6, 2, 1], 3, 1),
    row("PSL(2,8)", 504, 2, 2, 2, &[9, 1], 2, 1),
    row("PSL(2,8)", 504, 3, 5, 5, &[9, 4, 3, 2, 1], 5, 1),
    row("PSL(2,8)", 504, 7, 4, 4, &[9, 3, 2, 1], 4, 1),
    row("PSL(2,9)", 360, 2, 3, 3, &[7, 2, 1], 3, 1),
    row("PSL(2,9)", 360, 3, 3, 3, &[7, 2, 1], 3, 1),
    row("PSL(2,9)", 360, 5, 3, 3, &[7, 2, 1], 3, 1),
    row("PSL(2,11)", 660, 2, 2, 2, &[8, 2], 2, 1),
    row("PSL(2,11)", 660, 3, 2, 2, &[8, 2], 2, 1),
    row("PSL(2,11)", 660, 5, 3, 3, &[8, 2, 1], 3, 1),
    row("PSL(2,11)", 660, 11, 3, 3, &[8, 2, 1], 3, 1),
    row("PSL(2,13)", 1092, 2, 2, 2, &[9, 2], 2, 1),
    row("PSL(2,13)", 1092, 3, 2, 2, &[9, 2], 2, 1),
    row("PSL(2,13)", 1092, 7, 4, 4, &[9, 3, 2, 1], 4, 1),
    row("PSL(2,13)", 1092, 13, 3, 3, &[9, 2, 1], 3, 1),
    row("PSL(2,16)", 4080, 2, 2, 2, &[17, 1], 2, 1),
    row("PSL(2,16)", 4080, 3, 3, 3, &[17, 5, 2], 2, 1),
    row("PSL(2,16)", 4080, 5, 5, 5, &[17, 6, 4, 2, 1], 3, 1),
    row("PSL(2,16)", 4080, 17, 9, 9, &[17, 8, 7, 6, 5, 4, 3, 2, 1], 9, 1),
    row("PSL(2,17)", 2448, 2, 5, 5, &[11, 4, 3, 2, 1], 5, 1),
    row("PSL(2,17)", 2448, 3, 5, 5, &[11, 4, 3, 2, 1], 5, 1),
    row("PSL(2,17)", 2448, 17, 3, 3, &[11, 2, 1], 3, 1),
    row("PSL(2,19)", 3420, 2, 2, 2, &[12, 3], 2, 1),
    row("PSL(2,19)", 3420, 3, 5, 5, &[12, 4, 3, 2, 1], 5, 1),
    row("PSL(2,19)", 3420, 5, 3, 3, &[12, 4, 2], 3, 1),
    row("PSL(2,19)", 3420, 19, 3, 3, &[12, 2, 1], 3, 1),
    row("PSL(2,23)", 6072, 2, 4, 4, &[14, 5, 3, 1], 3, 1),
    row("PSL(2,23)", 6072, 3, 3, 3, &[14, 4, 1], 2, 1),
    row("PSL(2,23)", 6072, 11, 6, 6, &[14, 5, 4, 3, 2, 1], 6, 1),
    row("PSL(2,23)", 6072, 23, 3, 3, &[14, 2, 1], 3, 1),
    row("PSL(2,25)", 7800, 2, 4, 4, &[15, 5, 3, 1], 3, 1),
    row("PSL(2,25)", 7800, 3, 3, 3, &[15, 4, 1], 2, 1),
    row("PSL(2,25)", 7800, 5, 3, 3, &[15, 2, 1], 3, 1),
    row("PSL(2,25)", 7800, 13, 7, 7, &[15, 6, 5, 4, 3, 2, 1], 7, 1),
    row("PSL(2,27)", 9828, 2, 2, 2, &[16, 4], 2, 1),
    row("PSL(2,27)", 9828, 3, 3, 3, &[16, 2, 1], 3, 1),
    row("PSL(2,27)", 9828, 7, 4, 4, &[16, 6, 4, 2], 4, 1),
    row("PSL(2,27)", 9828, 13, 7, 7, &[16, 6, 5, 4, 3, 2, 1], 7, 1),
];

/// The reference tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Simple groups: `GL(3,2)` through `HS`.
    Small,
    Weyl,
    Psl,
    Alternating,
}

impl Suite {
    pub fn rows(self) -> &'static [ReferenceRow] {
        match self {
            Suite::Small => SIMPLE_ROWS,
            Suite::Weyl => WEYL_ROWS,
            Suite::Psl => PSL_ROWS,
            Suite::Alternating => ALTERNATING_ROWS,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Suite::Small),
            "weyl" => Ok(Suite::Weyl),
            "psl" => Ok(Suite::Psl),
            "alternating" => Ok(Suite::Alternating),
            _ => Err(Error::input(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Small => "small",
            Suite::Weyl => "weyl",
            Suite::Psl => "psl",
            Suite::Alternating => "alternating",
        })
    }
}

/// Where character tables come from: a directory of table files, then the
/// builtin groups.
#[derive(Clone, Debug, Default)]
pub struct TableSource {
    pub table_dir: Option<PathBuf>,
}

impl TableSource {
    pub fn new(table_dir: Option<PathBuf>) -> Self {
        Self { table_dir }
    }

    pub fn table_path(dir: &Path, group: &str) -> PathBuf {
        dir.join(format!("{group}.json"))
    }

    /// The table of a named group and, when built from scratch, the group itself.
    pub fn load(&self, group: &str) -> Result<(CharacterTable, Option<PermutationGroup>)> {
        if let Some(dir) = &self.table_dir {
            let path = Self::table_path(dir, group);
            if path.exists() {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
                return Ok((CharacterTable::from_json(&text)?, None));
            }
        }
        let g = match groups::builtin(group) {
            Ok(g) => g,
            Err(Error::Input(_)) => {
                return Err(Error::resource(format!("no builtin group or table file for {group}")))
            }
            Err(e) => return Err(e),
        };
        let table = dixon_table(&g, group)?;
        Ok((table, Some(g)))
    }
}

/// Outcome of one reference row.
#[derive(Clone, Debug, Serialize)]
pub struct RowOutcome {
    pub group: String,
    pub p: u64,
    pub status: Status,
    pub expected: String,
    pub computed: Option<String>,
    pub details: String,
}

impl RowOutcome {
    pub fn text(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        };
        match &self.computed {
            Some(c) if self.status == Status::Fail => format!(
                "{status} {} p={}: expected {} got {}",
                self.group, self.p, self.expected, c
            ),
            Some(c) => format!("{status} {} p={}: {}", self.group, self.p, c),
            None => format!("{status} {} p={}: {}", self.group, self.p, self.details),
        }
    }
}

/// Computes the invariant reports for several primes from one table.
pub fn reports_for_table(table: &CharacterTable, primes: &[u64], seed: u64) -> Result<Vec<Result<InvariantReport>>> {
    let sc = table.structure_constants()?;
    Ok(primes
        .iter()
        .map(|&p| build_mod_ring_with(table, p, sc.clone()).and_then(|r| r.report(seed)))
        .collect())
}

/// Recomputes the rows of a reference table. Rows whose group is unavailable
/// or beyond the computational limits are skipped.
pub fn reproduce(rows: &[ReferenceRow], source: &TableSource, seed: u64) -> Vec<RowOutcome> {
    let mut groups: Vec<&str> = Vec::new();
    for r in rows {
        if !groups.contains(&r.group) {
            groups.push(r.group);
        }
    }
    let per_group: Vec<Vec<RowOutcome>> = groups
        .par_iter()
        .map(|&name| {
            let group_rows: Vec<&ReferenceRow> = rows.iter().filter(|r| r.group == name).collect();
            let skip_all = |status: Status, msg: String| {
                group_rows
                    .iter()
                    .map(|r| RowOutcome {
                        group: name.to_string(),
                        p: r.p,
                        status,
                        expected: r.line(),
                        computed: None,
                        details: msg.clone(),
                    })
                    .collect::<Vec<_>>()
            };
            let table = match source.load(name) {
                Ok((t, _)) => t,
                Err(Error::Resource(msg)) => return skip_all(Status::Skip, msg),
                Err(e) => return skip_all(Status::Fail, e.to_string()),
            };
            if table.order != group_rows[0].order {
                return skip_all(
                    Status::Fail,
                    format!("table has order {}, expected {}", table.order, group_rows[0].order),
                );
            }
            let primes: Vec<u64> = group_rows.iter().map(|r| r.p).collect();
            let reports = match reports_for_table(&table, &primes, seed) {
                Ok(r) => r,
                Err(e) => return skip_all(Status::Fail, e.to_string()),
            };
            group_rows
                .iter()
                .zip(reports)
                .map(|(r, rep)| match rep {
                    Ok(rep) => RowOutcome {
                        group: name.to_string(),
                        p: r.p,
                        status: if r.matches(&rep) { Status::Pass } else { Status::Fail },
                        expected: r.line(),
                        computed: Some(rep.summary_line()),
                        details: String::new(),
                    },
                    Err(e) => RowOutcome {
                        group: name.to_string(),
                        p: r.p,
                        status: if matches!(e, Error::Resource(_)) { Status::Skip } else { Status::Fail },
                        expected: r.line(),
                        computed: None,
                        details: e.to_string(),
                    },
                })
                .collect()
        })
        .collect();
    per_group.into_iter().flatten().collect()
}

/// Invariant report with the full set of group-level verifications.
pub fn verify_group(
    group: &PermutationGroup,
    table: &CharacterTable,
    p: u64,
    seed: u64,
) -> Result<InvariantReport> {
    let ring = build_mod_ring_with(table, p, table.structure_constants()?)?;
    let mut report = ring.report(seed)?;
    let mut v = Vec::new();
    v.push(sections::verify_section_routes(Some(group), table, p)?);
    v.push(sections::verify_section_cardinality(group, table, p)?);

    let mut cartan_bad = Vec::new();
    for &c1 in &ring.p_regular {
        for &c2 in &ring.p_regular {
            let expected = if c1 == c2 { ring.section_classes(c1).len() } else { 0 };
            if ring.cartan_multiplicity(c1, c2)? != expected {
                cartan_bad.push(format!("({c1},{c2})"));
            }
        }
    }
    v.push(Verification::check(
        "cartan multiplicities",
        cartan_bad.is_empty(),
        if cartan_bad.is_empty() {
            format!("{} blocks", ring.p_regular.len())
        } else {
            cartan_bad.join(" ")
        },
    ));

    for block in &report.blocks {
        v.push(sections::verify_block_isomorphism(group, &ring, block)?);
    }
    let principal = report.principal().clone();
    match sections::sylow_normalizer_experiment(group, &principal, p, seed) {
        Ok(ex) => v.push(ex.to_verification()),
        Err(Error::Resource(msg)) => v.push(Verification::new("sylow normalizer question", Status::Skip, msg)),
        Err(e) => return Err(e),
    }
    report.verifications.extend(v);
    Ok(report)
}

/// Worst status in a list: fail over skip over pass.
pub fn overall_status<'a>(statuses: impl IntoIterator<Item = &'a Status>) -> Status {
    let mut out = Status::Pass;
    for s in statuses {
        match s {
            Status::Fail => return Status::Fail,
            Status::Skip => out = Status::Skip,
            Status::Pass => {}
        }
    }
    out
}

/// Plain-text rendering of an invariant report.
pub fn report_text(report: &InvariantReport) -> String {
    let mut out = format!("{} p={} q={}\n", report.group, report.p, report.q);
    out.push_str(&format!("  {}\n", report.summary_line()));
    for b in &report.blocks {
        out.push_str(&format!(
            "  block C{}: dim={} d={} ℓ={} ext¹={}",
            b.class,
            b.dimension,
            join(&b.d_sequence),
            b.loewy,
            b.ext1
        ));
        if let Some(ext) = &b.ext {
            out.push_str(&format!(" ext={}", join(ext)));
        }
        out.push('\n');
    }
    for v in &report.verifications {
        let s = match v.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        };
        out.push_str(&format!("  [{s}] {}: {}\n", v.name, v.details));
    }
    out
}
