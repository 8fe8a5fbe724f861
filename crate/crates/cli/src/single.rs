//! `test`: every statistic and p-value for one 2×3 table.

use std::io::Write;

use robust_scan::null::{bootstrap_pvalue, min2_pvalue, BootstrapConfig, BootstrapMethod};
use robust_scan::stats::{catt, gms, hwdtt, max3, min2, pearson, TestResult, DEFAULT_GMS_THRESHOLD};
use robust_scan::GenotypeCounts;
use serde_json::{json, Map, Value};

use crate::error::CliResult;
use crate::format::fmt_opt;

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub name: &'static str,
    pub statistic: Option<f64>,
    pub p_value: Option<f64>,
    /// Extra string-valued fields, such as the GMS selected model.
    pub extra: Vec<(&'static str, String)>,
    pub extra_numbers: Vec<(&'static str, Option<f64>)>,
}

impl Entry {
    fn new(name: &'static str, statistic: Option<f64>, p_value: Option<f64>) -> Self {
        Self { name, statistic, p_value, extra: Vec::new(), extra_numbers: Vec::new() }
    }

    fn from_result(name: &'static str, r: robust_scan::Result<TestResult>) -> Self {
        match r {
            Ok(t) => Self::new(name, Some(t.statistic), t.p_value),
            Err(_) => Self::new(name, None, None),
        }
    }
}

pub fn evaluate(c: &GenotypeCounts, bootstrap: Option<BootstrapConfig>) -> Vec<Entry> {
    let boot_p = |method| bootstrap.and_then(|cfg| bootstrap_pvalue(c, method, cfg).ok());
    let mut entries = vec![
        Entry::from_result("CATT0", catt(c, 0.0)),
        Entry::from_result("CATT_HALF", catt(c, 0.5)),
        Entry::from_result("CATT1", catt(c, 1.0)),
        Entry::from_result("PEARSON", pearson(c)),
    ];
    let max3_stat = max3(c).ok().map(|t| t.statistic);
    entries.push(Entry::new("MAX3", max3_stat, max3_stat.and(boot_p(BootstrapMethod::Max3))));
    let min2_stat = min2(c).ok().map(|t| t.statistic);
    entries.push(Entry::new("MIN2", min2_stat, min2_stat.and_then(|m| min2_pvalue(m).ok())));
    entries.push(Entry::from_result("HWDTT", hwdtt(c)));
    let g = match gms(c, DEFAULT_GMS_THRESHOLD) {
        Ok(r) => {
            let mut e = Entry::new("GMS", Some(r.statistic), boot_p(BootstrapMethod::gms()));
            e.extra.push(("selected_model", r.selected_model.to_string()));
            e.extra_numbers.push(("z_hwdtt", Some(r.z_hwdtt)));
            e
        }
        Err(_) => {
            let mut e = Entry::new("GMS", None, None);
            e.extra.push(("selected_model", "NA".to_string()));
            e.extra_numbers.push(("z_hwdtt", None));
            e
        }
    };
    entries.push(g);
    entries
}

pub fn write_key_values(c: &GenotypeCounts, entries: &[Entry], out: &mut dyn Write) -> CliResult<()> {
    writeln!(out, "cases={},{},{}", c.cases[0], c.cases[1], c.cases[2])?;
    writeln!(out, "controls={},{},{}", c.controls[0], c.controls[1], c.controls[2])?;
    for e in entries {
        writeln!(out, "{}={}", e.name, fmt_opt(e.statistic))?;
        writeln!(out, "{}_p={}", e.name, fmt_opt(e.p_value))?;
        for (k, v) in &e.extra {
            writeln!(out, "{}_{k}={v}", e.name)?;
        }
        for (k, v) in &e.extra_numbers {
            writeln!(out, "{}_{k}={}", e.name, fmt_opt(*v))?;
        }
    }
    Ok(())
}

fn number(x: Option<f64>) -> Value {
    x.filter(|v| v.is_finite()).map_or(Value::Null, |v| json!(v))
}

pub fn to_json(c: &GenotypeCounts, entries: &[Entry]) -> Value {
    let mut root = Map::new();
    root.insert("cases".into(), json!(c.cases));
    root.insert("controls".into(), json!(c.controls));
    for e in entries {
        let mut obj = Map::new();
        obj.insert("statistic".into(), number(e.statistic));
        obj.insert("p_value".into(), number(e.p_value));
        for (k, v) in &e.extra {
            obj.insert((*k).into(), if v == "NA" { Value::Null } else { json!(v) });
        }
        for (k, v) in &e.extra_numbers {
            obj.insert((*k).into(), number(*v));
        }
        root.insert(e.name.into(), Value::Object(obj));
    }
    Value::Object(root)
}
