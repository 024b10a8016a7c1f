//! Aggregate rates per group and template, with Wilcoxon contrasts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::score::ScoreRecord;
use super::stats::{significance, wilcoxon_signed_rank};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    CorrectProduced,
    CorrectEndorsed,
    CorrectBoth,
    EtrProduced,
    EtrEndorsed,
    EtrEither,
    FallacyProduced,
    FallacyEndorsed,
    FallacyEither,
}

impl Measure {
    pub const ALL: [Measure; 9] = [
        Measure::CorrectProduced,
        Measure::CorrectEndorsed,
        Measure::CorrectBoth,
        Measure::EtrProduced,
        Measure::EtrEndorsed,
        Measure::EtrEither,
        Measure::FallacyProduced,
        Measure::FallacyEndorsed,
        Measure::FallacyEither,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Measure::CorrectProduced => "Correct answer produced",
            Measure::CorrectEndorsed => "Correct answer endorsed",
            Measure::CorrectBoth => "Correct production and endorsement",
            Measure::EtrProduced => "Production predicted by ETR",
            Measure::EtrEndorsed => "Endorsement predicted by ETR",
            Measure::EtrEither => "Either above predicted by ETR",
            Measure::FallacyProduced => "Production fallacious",
            Measure::FallacyEndorsed => "Fallacy endorsed",
            Measure::FallacyEither => "Fallacy produced or endorsed",
        }
    }

    pub fn of(&self, r: &ScoreRecord) -> bool {
        match self {
            Measure::CorrectProduced => r.correct_produced,
            Measure::CorrectEndorsed => r.correct_endorsed,
            Measure::CorrectBoth => r.correct_produced && r.correct_endorsed,
            Measure::EtrProduced => r.etr_produced,
            Measure::EtrEndorsed => r.etr_endorsed,
            Measure::EtrEither => r.etr_produced || r.etr_endorsed,
            Measure::FallacyProduced => r.fallacy_produced,
            Measure::FallacyEndorsed => r.fallacy_endorsed,
            Measure::FallacyEither => r.fallacy_produced || r.fallacy_endorsed,
        }
    }
}

/// Paired measures compared within a group.
pub const INTRA: [(&str, Measure, Measure); 3] = [
    ("produce vs endorse (ETR-predicted)", Measure::EtrProduced, Measure::EtrEndorsed),
    ("production vs verification (correct)", Measure::CorrectProduced, Measure::CorrectEndorsed),
    ("fallacy production vs endorsement", Measure::FallacyProduced, Measure::FallacyEndorsed),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rate {
    pub group: String,
    pub template: String,
    pub measure: Measure,
    pub count: usize,
    pub total: usize,
    pub needs_review: usize,
}

impl Rate {
    pub fn percent(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            100.0 * self.count as f64 / self.total as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntraContrast {
    pub group: String,
    pub template: String,
    pub contrast: String,
    pub p_value: f64,
    pub pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossContrast {
    pub template: String,
    pub measure: Measure,
    pub a: String,
    pub b: String,
    pub p_value: f64,
    pub pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub rates: Vec<Rate>,
    pub intra: Vec<IntraContrast>,
    pub cross: Vec<CrossContrast>,
}

fn as_f64(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Builds the report. Groups keep the order given; records within a group
/// are split by template.
pub fn aggregate(groups: &[(String, Vec<ScoreRecord>)]) -> Report {
    let mut report = Report::default();
    let mut by_template: Vec<(String, BTreeMap<String, Vec<&ScoreRecord>>)> = Vec::new();
    for (label, records) in groups {
        let mut split: BTreeMap<String, Vec<&ScoreRecord>> = BTreeMap::new();
        for r in records {
            split.entry(r.template.clone()).or_default().push(r);
        }
        for (template, rs) in &split {
            let review = rs.iter().filter(|r| r.needs_review).count();
            for m in Measure::ALL {
                report.rates.push(Rate {
                    group: label.clone(),
                    template: template.clone(),
                    measure: m,
                    count: rs.iter().filter(|r| m.of(r)).count(),
                    total: rs.len(),
                    needs_review: review,
                });
            }
            for (name, x, y) in INTRA {
                let xs: Vec<f64> = rs.iter().map(|r| as_f64(x.of(r))).collect();
                let ys: Vec<f64> = rs.iter().map(|r| as_f64(y.of(r))).collect();
                if let Ok(w) = wilcoxon_signed_rank(&xs, &ys) {
                    report.intra.push(IntraContrast {
                        group: label.clone(),
                        template: template.clone(),
                        contrast: name.to_string(),
                        p_value: w.p_value,
                        pairs: xs.len(),
                    });
                }
            }
        }
        by_template.push((label.clone(), split));
    }
    let templates: BTreeSet<&String> = by_template.iter().flat_map(|(_, s)| s.keys()).collect();
    for template in templates {
        for i in 0..by_template.len() {
            for j in i + 1..by_template.len() {
                let (la, sa) = &by_template[i];
                let (lb, sb) = &by_template[j];
                let (Some(ra), Some(rb)) = (sa.get(template), sb.get(template)) else { continue };
                let index: BTreeMap<&str, &ScoreRecord> = rb.iter().map(|r| (r.problem_id.as_str(), *r)).collect();
                let paired: Vec<(&ScoreRecord, &ScoreRecord)> =
                    ra.iter().filter_map(|r| index.get(r.problem_id.as_str()).map(|s| (*r, *s))).collect();
                for m in Measure::ALL {
                    let xs: Vec<f64> = paired.iter().map(|(a, _)| as_f64(m.of(a))).collect();
                    let ys: Vec<f64> = paired.iter().map(|(_, b)| as_f64(m.of(b))).collect();
                    if let Ok(w) = wilcoxon_signed_rank(&xs, &ys) {
                        report.cross.push(CrossContrast {
                            template: template.clone(),
                            measure: m,
                            a: la.clone(),
                            b: lb.clone(),
                            p_value: w.p_value,
                            pairs: paired.len(),
                        });
                    }
                }
            }
        }
    }
    report
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let mut keys: Vec<(&str, &str)> = Vec::new();
    for r in &report.rates {
        if !keys.contains(&(r.group.as_str(), r.template.as_str())) {
            keys.push((&r.group, &r.template));
        }
    }
    for (group, template) in keys {
        let rates: Vec<&Rate> = report.rates.iter().filter(|r| r.group == group && r.template == template).collect();
        let n = rates.first().map(|r| r.total).unwrap_or(0);
        let review = rates.first().map(|r| r.needs_review).unwrap_or(0);
        let _ = writeln!(out, "== {group} [template: {template}] n={n} needs-review={review}");
        for r in &rates {
            let _ = writeln!(out, "  {:<38} {:>4.0}%  ({}/{})", r.measure.label(), r.percent(), r.count, r.total);
        }
        for c in report.intra.iter().filter(|c| c.group == group && c.template == template) {
            let _ = writeln!(out, "  {:<38} p={:.4}{}", c.contrast, c.p_value, significance(c.p_value));
        }
    }
    if !report.cross.is_empty() {
        let _ = writeln!(out, "== cross-group (Wilcoxon signed-rank, paired by problem)");
        for c in &report.cross {
            let _ = writeln!(
                out,
                "  [{}] {:<38} {} vs {}: p={:.4}{} (pairs={})",
                c.template,
                c.measure.label(),
                c.a,
                c.b,
                c.p_value,
                significance(c.p_value),
                c.pairs
            );
        }
    }
    out
}

/// One JSON object per line, tagged with `type`.
pub fn to_jsonl(report: &Report) -> String {
    let mut out = String::new();
    let tag = |t: &str, v: serde_json::Value| {
        let mut v = v;
        v.as_object_mut().expect("record is an object").insert("type".into(), t.into());
        serde_json::to_string(&v).expect("record serializes") + "\n"
    };
    for r in &report.rates {
        out.push_str(&tag("rate", serde_json::to_value(r).expect("rate")));
    }
    for c in &report.intra {
        out.push_str(&tag("intra", serde_json::to_value(c).expect("intra")));
    }
    for c in &report.cross {
        out.push_str(&tag("cross", serde_json::to_value(c).expect("cross")));
    }
    out
}
