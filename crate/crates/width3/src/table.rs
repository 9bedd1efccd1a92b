//! The classification table: for every code starting with a crown bit,
//! whether its section has a 4-crown stack retract, and for codes crowned
//! at both ends the usable lower split levels.

use std::collections::BTreeMap;

use crate::error::{Budget, Error};
use crate::oracle::oracle_4crown_stack_retract;
use crate::section::{all_codes, build_section, SectionCode};
use crate::split::{search_retractive_split, SplitSearchOptions};

/// Hand-transcribed expected table up to height six, used as a golden
/// reference by the verification suites.
pub const CLASSIFICATION_FIXTURE: &str = include_str!("table1_fixture.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub code: SectionCode,
    /// Levels j such that levels 0..j can serve as the lower base of a
    /// down-split: level 0 always, higher j when the prefix is flagged.
    /// Empty for codes not crowned at both ends.
    pub tbases: Vec<usize>,
    /// Whether the section of this code has a 4-crown stack retract.
    pub flag: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SegmentTable {
    rows: BTreeMap<(usize, String), TableRow>,
}

impl SegmentTable {
    pub fn rows(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.values()
    }

    pub fn get(&self, code: &SectionCode) -> Option<&TableRow> {
        self.rows.get(&(code.height(), code.to_string()))
    }

    pub fn flag(&self, code: &SectionCode) -> bool {
        self.get(code)
            .unwrap_or_else(|| panic!("code {code} not in table"))
            .flag
    }

    fn insert(&mut self, row: TableRow) {
        self.rows
            .insert((row.code.height(), row.code.to_string()), row);
    }

    /// One line per row, sorted by (height, code): code, comma-joined
    /// lower base levels (empty when not applicable), y/n flag.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in self.rows.values() {
            let tbases: Vec<String> = row.tbases.iter().map(|k| k.to_string()).collect();
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                row.code,
                tbases.join(","),
                if row.flag { "y" } else { "n" }
            ));
        }
        out
    }
}

/// Builds the table for all codes with leading crown bit up to
/// `max_height`, in increasing height so every lookup the split search
/// makes hits an already-decided smaller code.
pub fn build_segment_table(
    max_height: usize,
    opts: SplitSearchOptions,
) -> Result<SegmentTable, Error> {
    let mut table = SegmentTable::default();
    for m in 1..=max_height {
        for code in all_codes(m) {
            if code.bit(0) != 1 {
                continue;
            }
            let row = decide_code(&code, &table, opts)?;
            table.insert(row);
        }
    }
    Ok(table)
}

fn decide_code(
    code: &SectionCode,
    table: &SegmentTable,
    opts: SplitSearchOptions,
) -> Result<TableRow, Error> {
    let m = code.height();
    let flag = if m == 1 {
        // Base case: the single 6-crown, decided by the brute oracle.
        let p = build_section(code).0;
        oracle_4crown_stack_retract(&p, &mut Budget::new(opts.node_budget))?.is_some()
    } else if code.bit(m - 1) == 0 {
        // Top pair 3C: collapsing the top two levels reduces to the
        // prefix two shorter; a bare crown pair below the 3C top works.
        m == 2 || table.flag(&code.prefix(m - 2))
    } else {
        let p = build_section(code).0;
        search_retractive_split(&p, code, table, opts, &mut Budget::new(opts.node_budget))?.is_some()
    };
    let tbases = if code.is_n2() {
        std::iter::once(0)
            .chain((1..m).filter(|&j| table.flag(&code.prefix(j))))
            .collect()
    } else {
        Vec::new()
    };
    Ok(TableRow { code: code.clone(), tbases, flag })
}
