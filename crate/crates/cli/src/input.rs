//! Genotype-count files: tab-separated, header `snp_id r0 r1 r2 s0 s1 s2`,
//! `#` starts a comment line.

use std::collections::HashSet;
use std::io::BufRead;

use robust_scan::GenotypeCounts;

use crate::error::{CliError, CliResult};

pub const HEADER: [&str; 7] = ["snp_id", "r0", "r1", "r2", "s0", "s1", "s2"];

#[derive(Debug, Clone, PartialEq)]
pub struct CountRow {
    pub snp_id: String,
    pub line: usize,
    pub counts: GenotypeCounts,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedRow {
    pub line: usize,
    pub snp_id: String,
    pub reason: String,
}

#[derive(Debug, Default)]
pub struct CountFile {
    pub rows: Vec<CountRow>,
    /// Well-formed rows that cannot form a table (an empty group).
    pub skipped: Vec<SkippedRow>,
}

fn parse_count(field: &str, name: &str, line: usize) -> CliResult<u64> {
    field.trim().parse::<u64>().map_err(|_| CliError::Parse {
        line,
        message: format!("{name} = '{field}' is not a nonnegative integer"),
    })
}

/// Parse a count file. Structural errors abort with the line number.
pub fn read_counts<R: BufRead>(reader: R) -> CliResult<CountFile> {
    let mut file = CountFile::default();
    let mut seen = HashSet::new();
    let mut header_seen = false;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim_end_matches('\r');
        if text.trim().is_empty() || text.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split('\t').map(str::trim).collect();
        if !header_seen {
            if fields != HEADER {
                return Err(CliError::Parse {
                    line: line_no,
                    message: format!("expected header '{}'", HEADER.join("\t")),
                });
            }
            header_seen = true;
            continue;
        }
        if fields.len() != HEADER.len() {
            return Err(CliError::Parse {
                line: line_no,
                message: format!("expected {} tab-separated fields, found {}", HEADER.len(), fields.len()),
            });
        }
        let snp_id = fields[0].to_string();
        if snp_id.is_empty() {
            return Err(CliError::Parse { line: line_no, message: "empty snp_id".to_string() });
        }
        if !seen.insert(snp_id.clone()) {
            return Err(CliError::Parse { line: line_no, message: format!("duplicate snp_id '{snp_id}'") });
        }
        let mut n = [0u64; 6];
        for (i, v) in n.iter_mut().enumerate() {
            *v = parse_count(fields[i + 1], HEADER[i + 1], line_no)?;
        }
        match GenotypeCounts::new([n[0], n[1], n[2]], [n[3], n[4], n[5]]) {
            Ok(counts) => file.rows.push(CountRow { snp_id, line: line_no, counts }),
            Err(e) => file.skipped.push(SkippedRow { line: line_no, snp_id, reason: e.to_string() }),
        }
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> CliResult<CountFile> {
        read_counts(text.as_bytes())
    }

    #[test]
    fn reads_rows_and_comments() {
        let f = parse("# comment\nsnp_id\tr0\tr1\tr2\ts0\ts1\ts2\nrs1\t1\t2\t3\t4\t5\t6\n\n# x\nrs2\t0\t0\t1\t1\t0\t0\n").unwrap();
        assert_eq!(f.rows.len(), 2);
        assert_eq!(f.rows[0].counts.cases, [1, 2, 3]);
        assert_eq!(f.rows[1].line, 6);
    }

    #[test]
    fn empty_group_rows_are_skipped() {
        let f = parse("snp_id\tr0\tr1\tr2\ts0\ts1\ts2\nrs1\t0\t0\t0\t4\t5\t6\n").unwrap();
        assert!(f.rows.is_empty());
        assert_eq!(f.skipped.len(), 1);
        assert_eq!(f.skipped[0].line, 2);
    }

    #[test]
    fn structural_errors_report_the_line() {
        let header = "snp_id\tr0\tr1\tr2\ts0\ts1\ts2\n";
        let cases = [
            (format!("{header}rs1\t1\t2\t3\t4\t5\n"), 2),
            (format!("{header}rs1\t1\t2\t3\t4\t5\t-6\n"), 2),
            (format!("{header}rs1\t1\t2\t3\t4\t5\t6\nrs1\t1\t2\t3\t4\t5\t6\n"), 3),
            (format!("{header}\t1\t2\t3\t4\t5\t6\n"), 2),
            ("snp\tr0\n".to_string(), 1),
        ];
        for (text, want) in cases {
            match parse(&text) {
                Err(CliError::Parse { line, .. }) => assert_eq!(line, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn empty_input_has_no_rows() {
        let f = parse("").unwrap();
        assert!(f.rows.is_empty() && f.skipped.is_empty());
    }
}
