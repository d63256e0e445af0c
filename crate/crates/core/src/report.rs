//! Axiom reports: per-axiom verdicts, witnesses and counterexamples.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::set::{Obj, ObjSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    /// A configuration that contradicts a uniqueness theorem, e.g. two
    /// distinct near identities.
    Anomaly,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
            Verdict::Anomaly => "anomaly",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub verdict: Verdict,
    /// Required checks decide [`AxiomReport::passed`]; the rest are flags and
    /// audit records.
    pub required: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub axiom: String,
    /// The quantified elements, in the order the law names them.
    pub tuple: Vec<Obj>,
    /// Computed sides or escaping results, as described by `detail`.
    pub values: Vec<Obj>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Element(Obj),
    Set(ObjSet),
    Pairs(Vec<(Obj, Obj)>),
    Sets(Vec<ObjSet>),
    Flag(bool),
    Text(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub subject: String,
    pub checks: BTreeMap<String, Check>,
    pub witnesses: BTreeMap<String, Witness>,
    pub counterexamples: Vec<Counterexample>,
    pub anomalies: Vec<String>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>) -> Self {
        AxiomReport { subject: subject.into(), ..Default::default() }
    }

    pub fn require(&mut self, id: &str, verdict: Verdict) -> &mut Check {
        self.set(id, verdict, true)
    }

    pub fn flag(&mut self, id: &str, verdict: Verdict) -> &mut Check {
        self.set(id, verdict, false)
    }

    fn set(&mut self, id: &str, verdict: Verdict, required: bool) -> &mut Check {
        let slot = self.checks.entry(id.to_string()).or_insert(Check { verdict, required, note: None });
        slot.verdict = verdict;
        slot.required = required;
        slot
    }

    pub fn note(&mut self, id: &str, note: impl Into<String>) {
        if let Some(c) = self.checks.get_mut(id) {
            c.note = Some(note.into());
        }
    }

    pub fn counterexample(&mut self, axiom: &str, tuple: Vec<Obj>, values: Vec<Obj>, detail: impl Into<String>) {
        self.counterexamples.push(Counterexample { axiom: axiom.to_string(), tuple, values, detail: detail.into() });
    }

    pub fn witness(&mut self, key: &str, w: Witness) {
        self.witnesses.insert(key.to_string(), w);
    }

    pub fn verdict(&self, id: &str) -> Option<Verdict> {
        self.checks.get(id).map(|c| c.verdict)
    }

    /// True iff every required check passed. A report without required
    /// checks passes vacuously.
    pub fn passed(&self) -> bool {
        self.checks.values().filter(|c| c.required).all(|c| c.verdict.is_pass())
    }

    /// Embeds `other` under `prefix/`. Embedded checks become flags; callers
    /// add the aggregated required check themselves.
    pub fn absorb(&mut self, prefix: &str, other: AxiomReport) {
        for (id, mut check) in other.checks {
            check.required = false;
            self.checks.insert(format!("{prefix}/{id}"), check);
        }
        for (key, w) in other.witnesses {
            self.witnesses.insert(format!("{prefix}/{key}"), w);
        }
        for mut c in other.counterexamples {
            c.axiom = format!("{prefix}/{}", c.axiom);
            self.counterexamples.push(c);
        }
        for a in other.anomalies {
            self.anomalies.push(format!("{prefix}: {a}"));
        }
    }

    pub fn first_counterexample(&self, axiom: &str) -> Option<&Counterexample> {
        self.counterexamples.iter().find(|c| c.axiom == axiom)
    }

    /// Name-resolved, serializable form.
    pub fn to_section(&self, label: &dyn Fn(Obj) -> String) -> ReportSection {
        let set = |s: &ObjSet| s.iter().map(label).collect::<Vec<_>>();
        ReportSection {
            subject: self.subject.clone(),
            passed: self.passed(),
            checks: self
                .checks
                .iter()
                .map(|(id, c)| {
                    (
                        id.clone(),
                        CheckEntry { verdict: c.verdict, required: c.required, note: c.note.clone() },
                    )
                })
                .collect(),
            witnesses: self
                .witnesses
                .iter()
                .map(|(k, w)| {
                    let v = match w {
                        Witness::Element(x) => WitnessEntry::Element(label(*x)),
                        Witness::Set(s) => WitnessEntry::Set(set(s)),
                        Witness::Pairs(ps) => {
                            WitnessEntry::Pairs(ps.iter().map(|&(a, b)| (label(a), label(b))).collect())
                        }
                        Witness::Sets(ss) => WitnessEntry::Sets(ss.iter().map(set).collect()),
                        Witness::Flag(b) => WitnessEntry::Flag(*b),
                        Witness::Text(t) => WitnessEntry::Text(t.clone()),
                    };
                    (k.clone(), v)
                })
                .collect(),
            counterexamples: self
                .counterexamples
                .iter()
                .map(|c| CounterexampleEntry {
                    axiom: c.axiom.clone(),
                    tuple: c.tuple.iter().map(|&x| label(x)).collect(),
                    values: c.values.iter().map(|&x| label(x)).collect(),
                    detail: c.detail.clone(),
                })
                .collect(),
            anomalies: self.anomalies.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub verdict: Verdict,
    pub required: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum WitnessEntry {
    Element(String),
    Set(Vec<String>),
    Pairs(Vec<(String, String)>),
    Sets(Vec<Vec<String>>),
    Flag(bool),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleEntry {
    pub axiom: String,
    pub tuple: Vec<String>,
    pub values: Vec<String>,
    pub detail: String,
}

/// An [`AxiomReport`] with objects resolved to names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSection {
    pub subject: String,
    pub passed: bool,
    pub checks: BTreeMap<String, CheckEntry>,
    pub witnesses: BTreeMap<String, WitnessEntry>,
    pub counterexamples: Vec<CounterexampleEntry>,
    pub anomalies: Vec<String>,
}
