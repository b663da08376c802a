//! Experiment reports: JSON (`stoc-report/1`), CSV and a plain table.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use stoc_core::bounds::{BoundCertificate, CapacityReport, CapacityVerdict, CertWitness, Side};
use stoc_core::rational::to_fraction_string;
use stoc_core::Rational;

pub const SCHEMA: &str = "stoc-report/1";

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A value stated in the published source.
    Published,
    /// A value from an independent computation.
    Computed,
    /// A value that holds by definition or construction.
    Definition,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Computed => "computed",
            Provenance::Definition => "definition",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemVerdict {
    Pass,
    Fail,
    /// A recorded value with nothing to compare against.
    Info,
}

impl ItemVerdict {
    pub fn name(self) -> &'static str {
        match self {
            ItemVerdict::Pass => "pass",
            ItemVerdict::Fail => "fail",
            ItemVerdict::Info => "info",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub item: String,
    pub expected: String,
    pub got: String,
    pub provenance: Provenance,
    /// `exact` unless the comparison is a tolerance or a trend.
    pub check: String,
    pub verdict: ItemVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresetReport {
    pub preset: String,
    pub description: String,
    pub passed: bool,
    pub items: Vec<Item>,
    pub certificates: Vec<Value>,
    pub capacities: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl PresetReport {
    pub fn failures(&self) -> usize {
        self.items
            .iter()
            .filter(|i| i.verdict == ItemVerdict::Fail)
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub seed: u64,
    /// Factor applied to every size cap, when overridden.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap_scale: Option<usize>,
    pub presets: Vec<PresetReport>,
}

impl Report {
    pub fn new(seed: u64, cap_scale: Option<usize>, presets: Vec<PresetReport>) -> Self {
        Report {
            schema: SCHEMA.into(),
            seed,
            cap_scale,
            presets,
        }
    }

    pub fn failures(&self) -> usize {
        self.presets.iter().map(PresetReport::failures).sum()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["preset", "item", "expected", "got", "provenance", "verdict"])
            .expect("in-memory write");
        for p in &self.presets {
            for i in &p.items {
                w.write_record([
                    &p.preset,
                    &i.item,
                    &i.expected,
                    &i.got,
                    i.provenance.name(),
                    i.verdict.name(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for p in &self.presets {
            let status = if p.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("== {} [{status}] {}", p.preset, p.description));
            if let Some(ms) = p.runtime_ms {
                out.push_str(&format!(" ({ms} ms)"));
            }
            out.push('\n');
            let rows: Vec<[&str; 5]> = p
                .items
                .iter()
                .map(|i| {
                    [
                        i.verdict.name(),
                        i.item.as_str(),
                        i.expected.as_str(),
                        i.got.as_str(),
                        i.provenance.name(),
                    ]
                })
                .collect();
            let header = ["verdict", "item", "expected", "got", "provenance"];
            let mut widths = header.map(str::len);
            for r in &rows {
                for (w, cell) in widths.iter_mut().zip(r) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            for r in std::iter::once(&header).chain(rows.iter()) {
                let cells: Vec<String> = r
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
            for c in &p.capacities {
                out.push_str(&format!(
                    "   capacity {}: {}\n",
                    c["graph"].as_str().unwrap_or("?"),
                    c["verdict"].as_str().unwrap_or("?")
                ));
            }
        }
        let failures = self.failures();
        out.push_str(&format!(
            "{} preset(s), {failures} failed item(s)\n",
            self.presets.len()
        ));
        out
    }
}

pub fn frac(r: &Rational) -> String {
    to_fraction_string(r)
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Upper => "upper",
        Side::Lower => "lower",
        Side::FixedAlphabet => "fixed_alphabet",
    }
}

/// JSON form of a certificate witness.
pub fn witness_json(w: &CertWitness) -> Value {
    match w {
        CertWitness::Set(s) => json!({ "set": s }),
        CertWitness::Partition(p) => json!({ "partition": p }),
        CertWitness::Matching(m) => {
            json!({ "matching": m.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>() })
        }
        CertWitness::Tiling(t) => json!({ "tiling": { "n": t.n, "tiles": t.tiles } }),
        CertWitness::Code(c) => json!({
            "code": { "q": c.q(), "level": c.level(), "n": c.n(), "words": (0..c.len()).map(|i| c.word_digits(i)).collect::<Vec<_>>() }
        }),
        CertWitness::Lp(b) => json!({
            "lp": {
                "tau": b.tau,
                "max_support": b.max_support,
                "closure": b.closure_mode.name(),
                "relaxed": frac(&b.relaxed),
                "grid_rounded": frac(&b.grid_rounded),
                "restricted_gadgets": b.restricted_gadgets,
                "relaxed_integrality": b.relaxed_integrality,
                "gadgets": b.gadget_count,
                "variables": b.variable_count,
                "constraints": b.constraint_count,
                "cover": b.cover.iter().map(|(g, x)| json!({
                    "a": g.a, "b": g.b, "c1": g.c1, "c2": g.c2, "weight": g.weight, "trivial": g.trivial, "value": frac(x)
                })).collect::<Vec<_>>(),
            }
        }),
    }
}

pub fn certificate_json(graph: &str, c: &BoundCertificate, revalidated: bool) -> Value {
    json!({
        "graph": graph,
        "kind": c.kind.name(),
        "side": side_name(c.side()),
        "parameter": frac(&c.parameter),
        "value": frac(&c.value),
        "revalidated": revalidated,
        "witness": witness_json(&c.witness),
    })
}

pub fn verdict_text(v: &CapacityVerdict) -> String {
    match v {
        CapacityVerdict::Tight(r) => format!("tight {}", frac(r)),
        CapacityVerdict::Gap { lower, upper, size } => format!(
            "gap {} (between {} and {})",
            frac(size),
            frac(lower),
            frac(upper)
        ),
    }
}

pub fn capacity_json(r: &CapacityReport) -> Value {
    json!({
        "graph": r.graph,
        "lower": r.lower.iter().map(|l| json!({ "construction": l.construction, "rate": frac(&l.rate), "verified": l.verified })).collect::<Vec<_>>(),
        "upper": r.upper.iter().map(|u| json!({ "kind": u.kind.name(), "value": frac(&u.value) })).collect::<Vec<_>>(),
        "verdict": verdict_text(&r.verdict),
    })
}
