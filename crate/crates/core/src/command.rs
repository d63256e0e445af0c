//! Command dispatch and the report document.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::descriptive::{descriptive_intersection, set_description};
use crate::document::{StructureDocument, TableKind};
use crate::error::{NearnessError, Result};
use crate::morphisms::{
    check_hom_properties, check_image_subring, check_kernel_ideal, check_nearness_hom, first_iso_check, kernel,
    natural_hom, MappingTable,
};
use crate::quotient::{build_quotient_ring, check_quotient_hypothesis, coset_family, CosetClosure, QuotientCandidates};
use crate::report::{AxiomReport, ReportSection, Verdict};
use crate::search::{search_structures, SearchMode, SearchSummary};
use crate::set::{Obj, ObjSet};
use crate::structures::{
    check_element_props, check_ideal, check_intersection_theorem, check_near_group, check_nearness_ring,
    check_subnearness_ring, classify_units, IntersectionKind, Side,
};
use crate::table::{Op, OpTable, StructureCandidate, UpperApprox};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Approx { set: String },
    Near { a: String, b: String },
    VerifyRing { carrier: String },
    VerifySubring { carrier: String, sub: String },
    VerifyIdeal { carrier: String, sub: String, side: Side },
    VerifyGroup { carrier: String, op: Op },
    VerifyUnits { carrier: String },
    VerifyElements { carrier: String },
    VerifyIntersection { carrier: String, parts: Vec<String>, kind: IntersectionKind },
    VerifyHom { map: String, carrier: Option<String>, target: Option<String>, sub: Option<String>, strict: bool },
    Cosets { carrier: String, sub: String, extended: bool },
    Quotient { carrier: String, sub: String, powerset: bool },
    IsoCheck { map: String, carrier: Option<String>, target: Option<String> },
    Search { size: usize, seed: u64, exhaustive: bool, samples: usize },
}

impl Command {
    pub fn needs_document(&self) -> bool {
        !matches!(self, Command::Search { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub header: String,
    pub cells: Vec<String>,
}

/// An operation table in row/column layout, row = left operand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedTable {
    pub name: String,
    pub symbol: String,
    pub headers: Vec<String>,
    pub rows: Vec<TableRow>,
}

/// A computed value that differs from a reference value carried by the
/// input document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deviation {
    pub subject: String,
    pub expected: String,
    pub computed: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: Vec<String>,
    #[serde(default)]
    pub sections: Vec<ReportSection>,
    #[serde(default)]
    pub sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub families: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub tables: Vec<RenderedTable>,
    #[serde(default)]
    pub deviations: Vec<Deviation>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSummary>,
}

impl ReportDocument {
    pub fn new(command: Vec<String>) -> Self {
        ReportDocument { command, ..Default::default() }
    }

    /// True iff every requested verdict passed.
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn section(&self, subject: &str) -> Option<&ReportSection> {
        self.sections.iter().find(|s| s.subject == subject)
    }

    pub fn table(&self, name: &str) -> Option<&RenderedTable> {
        self.tables.iter().find(|t| t.name == name)
    }

    fn push(&mut self, report: &AxiomReport, label: &dyn Fn(Obj) -> String) {
        self.sections.push(report.to_section(label));
    }
}

struct Ctx<'d> {
    doc: &'d StructureDocument,
}

impl<'d> Ctx<'d> {
    fn name(&self, x: Obj) -> String {
        self.doc.universe().name(x).to_string()
    }

    fn names(&self, set: &ObjSet) -> Vec<String> {
        self.doc.universe().set_names(set)
    }

    fn show(&self, set: &ObjSet) -> String {
        self.doc.universe().show_set(set)
    }

    fn candidate(&self, name: &str) -> Result<StructureCandidate<'d>> {
        self.doc.candidate(self.doc.subset(name)?.clone())
    }

    fn label(&self) -> impl Fn(Obj) -> String + '_ {
        move |x| self.name(x)
    }

    fn table(&self, name: &str, t: &OpTable, set: &ObjSet, label: &dyn Fn(Obj) -> String) -> RenderedTable {
        RenderedTable {
            name: name.to_string(),
            symbol: String::new(),
            headers: set.iter().map(label).collect(),
            rows: set
                .iter()
                .map(|x| TableRow { header: label(x), cells: set.iter().map(|y| label(t.apply(x, y))).collect() })
                .collect(),
        }
    }

    fn restriction_tables(&self, out: &mut ReportDocument, set_name: &str, set: &ObjSet) {
        let label = self.label();
        for (op, t) in [(Op::Add, Some(&self.doc.add)), (Op::Mul, self.doc.mul.as_ref())] {
            let Some(t) = t else { continue };
            let mut rt = self.table(&format!("{op} on {set_name}"), t, set, &label);
            rt.symbol = op.symbol().to_string();
            self.compare_table(out, &rt, TableKind::Restriction, op, set_name, None);
            out.tables.push(rt);
        }
    }

    fn compare_table(
        &self,
        out: &mut ReportDocument,
        rt: &RenderedTable,
        kind: TableKind,
        op: Op,
        carrier: &str,
        sub: Option<&str>,
    ) {
        let Some(expected) = self.doc.expected() else { return };
        let op_name = match op {
            Op::Add => "add",
            Op::Mul => "mul",
        };
        for t in &expected.tables {
            let target = if kind == TableKind::Restriction { t.sub.as_deref().unwrap_or(&t.carrier) } else { &t.carrier };
            if t.kind != kind || t.op != op_name || target != carrier || (kind == TableKind::Quotient && t.sub.as_deref() != sub) {
                continue;
            }
            let suffix = |id: &String| if kind == TableKind::Quotient { format!("{id}+{}", sub.unwrap_or("")) } else { id.clone() };
            let wanted: Vec<Vec<String>> = t.rows.iter().map(|row| row.iter().map(suffix).collect()).collect();
            let got: Vec<Vec<String>> = rt.rows.iter().map(|r| r.cells.clone()).collect();
            if wanted != got {
                out.deviations.push(Deviation {
                    subject: format!("{} ({})", t.name, rt.name),
                    expected: format!("{wanted:?}"),
                    computed: format!("{got:?}"),
                    note: None,
                });
            }
        }
    }
}

fn parse_list(parts: &[String], ctx: &Ctx<'_>) -> Result<Vec<ObjSet>> {
    parts.iter().map(|p| ctx.doc.subset(p).cloned()).collect()
}

/// Runs one command. `doc` is the primary document; `target` is the
/// codomain document for homomorphism commands (defaults to `doc`).
pub fn run_command(
    cmd: &Command,
    echo: Vec<String>,
    doc: Option<&StructureDocument>,
    target: Option<&StructureDocument>,
) -> Result<ReportDocument> {
    let mut out = ReportDocument::new(echo);
    if let Command::Search { size, seed, exhaustive, samples } = cmd {
        let mode = if *exhaustive { SearchMode::Exhaustive } else { SearchMode::Random { samples: *samples } };
        out.search = Some(search_structures(*size, *seed, mode)?);
        return Ok(out);
    }
    let doc = doc.ok_or_else(|| NearnessError::Invalid("this command needs an input document".into()))?;
    let ctx = Ctx { doc };
    let label = ctx.label();
    match cmd {
        Command::Approx { set } => {
            let target = doc.subset(set)?;
            let a = doc.space.approximate(target);
            out.sets.insert("set".into(), ctx.names(target));
            out.sets.insert("lower".into(), ctx.names(&a.lower));
            out.sets.insert("upper".into(), ctx.names(&a.upper));
            out.sets.insert("boundary".into(), ctx.names(&a.boundary));
            for p in doc.space.partitions_family() {
                let probes: Vec<&str> = p.source.iter().map(|&i| doc.space.system().probes()[i].name.as_str()).collect();
                out.families.insert(
                    format!("partition:{}", probes.join(",")),
                    p.classes.iter().map(|c| ctx.names(c)).collect(),
                );
            }
        }
        Command::Near { a, b } => {
            let (sa, sb) = (doc.subset(a)?, doc.subset(b)?);
            let (qa, qb) = (set_description(&doc.space, sa), set_description(&doc.space, sb));
            let render = |q: &crate::descriptive::SetDescription| {
                q.descriptions(&doc.space).iter().map(|d| d.to_string()).collect::<Vec<_>>()
            };
            out.sets.insert(format!("Q({a})"), render(&qa));
            out.sets.insert(format!("Q({b})"), render(&qb));
            out.sets.insert("descriptive-intersection".into(), ctx.names(&descriptive_intersection(&doc.space, sa, sb)));
            let mut rep = AxiomReport::new("descriptive nearness");
            rep.flag("near", Verdict::from_bool(qa.meets(&qb)));
            out.push(&rep, &label);
        }
        Command::VerifyRing { carrier } => {
            let r = ctx.candidate(carrier)?;
            out.sets.insert("upper".into(), ctx.names(&r.upper()));
            out.push(&check_nearness_ring(&r)?, &label);
            ctx.restriction_tables(&mut out, carrier, &r.carrier);
        }
        Command::VerifySubring { carrier, sub } => {
            let r = ctx.candidate(carrier)?;
            let s = doc.subset(sub)?;
            out.push(&check_subnearness_ring(s, &r)?, &label);
            ctx.restriction_tables(&mut out, sub, s);
        }
        Command::VerifyIdeal { carrier, sub, side } => {
            let r = ctx.candidate(carrier)?;
            out.push(&check_ideal(doc.subset(sub)?, &r, *side)?, &label);
        }
        Command::VerifyGroup { carrier, op } => {
            let r = ctx.candidate(carrier)?;
            out.sets.insert("upper".into(), ctx.names(&r.upper()));
            out.push(&check_near_group(&r, *op)?, &label);
        }
        Command::VerifyUnits { carrier } => {
            out.push(&classify_units(&ctx.candidate(carrier)?)?, &label);
        }
        Command::VerifyElements { carrier } => {
            out.push(&check_element_props(&ctx.candidate(carrier)?)?, &label);
        }
        Command::VerifyIntersection { carrier, parts, kind } => {
            let r = ctx.candidate(carrier)?;
            out.push(&check_intersection_theorem(&parse_list(parts, &ctx)?, &r, *kind)?, &label);
        }
        Command::Cosets { carrier, sub, extended } => {
            let r = ctx.candidate(carrier)?;
            let s = doc.subset(sub)?;
            let family = coset_family(&r, s, *extended)?;
            out.notes.extend(family.warnings.iter().cloned());
            coset_output(&ctx, &mut out, &r, s, carrier, sub, &family)?;
        }
        Command::Quotient { carrier, sub, powerset } => {
            let r = ctx.candidate(carrier)?;
            let s = doc.subset(sub)?;
            let candidates = if *powerset { QuotientCandidates::Powerset } else { QuotientCandidates::Cosets };
            let closure = CosetClosure::new(&doc.space, &r, s, sub);
            let coset_label = |x: Obj| closure.label(x);
            let hypothesis = check_quotient_hypothesis(&doc.space, &r, s, candidates)?;
            let hyp_ok = hypothesis.passed();
            let mut hyp_section = hypothesis.to_section(&coset_label);
            // The hypothesis names cosets by the subset's own name.
            if let Some(crate::report::WitnessEntry::Text(t)) = hyp_section.witnesses.get_mut("shared-descriptions") {
                *t = t.replace("+S ", &format!("+{sub} ")).replace("+S,", &format!("+{sub},"));
            }
            out.sections.push(hyp_section);
            let extended = coset_family(&r, s, true)?;
            out.notes.extend(extended.warnings.iter().cloned());
            coset_output(&ctx, &mut out, &r, s, carrier, sub, &extended)?;
            if !hyp_ok {
                return Ok(out);
            }
            let q = build_quotient_ring(&doc.space, &r, s, sub)?;
            let qlabel = |x: Obj| q.closure.label(x);
            out.push(&q.report, &qlabel);
            let reps = q.representatives();
            for (op, sym, t) in [(Op::Add, "⊕", &q.add), (Op::Mul, "⊙", &q.mul)] {
                let mut rt = ctx.table(&format!("{sym} on {carrier}/{sub}"), t, &reps, &qlabel);
                rt.symbol = sym.to_string();
                ctx.compare_table(&mut out, &rt, TableKind::Quotient, op, carrier, Some(sub));
                out.tables.push(rt);
            }
            out.sets.insert(format!("N*({carrier}/{sub})"), q.structure().upper().iter().map(qlabel).collect());
            if !q.report.passed() {
                return Ok(out);
            }
            let qs = q.structure();
            let pi = natural_hom(&q, &r)?;
            let mut hom = check_nearness_hom(&pi, &r, &qs, false)?;
            hom.subject = "natural homomorphism".into();
            let props = check_hom_properties(&pi, &r, &qs)?;
            let props_ok = props.passed();
            hom.absorb("properties", props);
            hom.require("properties", Verdict::from_bool(props_ok));
            out.push(&hom, &label);
        }
        Command::VerifyHom { map, carrier, target: tname, sub, strict } => {
            let tdoc = target.unwrap_or(doc);
            let (r1, r2, m) = hom_inputs(doc, tdoc, map, carrier.as_deref(), tname.as_deref())?;
            let tlabel = |x: Obj| tdoc.universe().name(x).to_string();
            out.push(&check_nearness_hom(&m, &r1, &r2, *strict)?, &label);
            out.push(&check_hom_properties(&m, &r1, &r2)?, &label);
            match kernel(&m, &r1, &r2) {
                Ok(k) => {
                    out.sets.insert("kernel".into(), ctx.names(&k));
                    out.push(&check_kernel_ideal(&m, &r1, &r2)?, &label);
                }
                Err(e) => out.notes.push(format!("kernel unavailable: {e}")),
            }
            out.sets.insert("image".into(), m.image(&r1.carrier).iter().map(tlabel).collect());
            if let Some(sub) = sub {
                out.push(&check_image_subring(&m, doc.subset(sub)?, &r1, &r2)?, &label);
            }
        }
        Command::IsoCheck { map, carrier, target: tname } => {
            let tdoc = target.unwrap_or(doc);
            let (r1, r2, chi) = hom_inputs(doc, tdoc, map, carrier.as_deref(), tname.as_deref())?;
            let iso = first_iso_check(&doc.space, &chi, &r1, &r2)?;
            out.sets.insert("kernel".into(), ctx.names(&iso.kernel));
            out.push(&iso.report, &label);
            if let (Some(q), Some(eta)) = (&iso.quotient, &iso.eta) {
                if let Some(classes) = &q.classes {
                    let names: Vec<String> = classes.classes.iter().map(|c| ctx.show(c)).collect();
                    for (sym, rows) in [("⊕", &classes.add), ("⊙", &classes.mul)] {
                        out.tables.push(RenderedTable {
                            name: format!("{sym} on classes"),
                            symbol: sym.to_string(),
                            headers: names.clone(),
                            rows: rows
                                .iter()
                                .enumerate()
                                .map(|(i, row)| TableRow {
                                    header: names[i].clone(),
                                    cells: row.iter().map(|&j| names[j].clone()).collect(),
                                })
                                .collect(),
                        });
                    }
                }
                let mut induced: Vec<Vec<String>> = Vec::new();
                for c in &q.family.cosets {
                    let pair = vec![ctx.show(&c.members), tdoc.universe().name(eta.get(c.representative).expect("total")).to_string()];
                    if !induced.contains(&pair) {
                        induced.push(pair);
                    }
                }
                out.families.insert("induced-map".into(), induced);
            }
        }
        Command::Search { .. } => unreachable!("handled above"),
    }
    Ok(out)
}

fn hom_inputs<'a>(
    doc: &'a StructureDocument,
    tdoc: &'a StructureDocument,
    map: &str,
    carrier: Option<&str>,
    target: Option<&str>,
) -> Result<(StructureCandidate<'a>, StructureCandidate<'a>, MappingTable)> {
    let r1 = doc.candidate(doc.subset_or_all(carrier)?)?;
    let r2 = tdoc.candidate(tdoc.subset_or_all(target)?)?;
    let pairs = doc.map_into(map, tdoc)?;
    let domain: ObjSet = pairs.keys().copied().collect();
    let codomain = r2.upper().union(&pairs.values().copied().collect());
    let m = MappingTable::new(domain, codomain, pairs)?;
    Ok((r1, r2, m))
}

fn coset_output(
    ctx: &Ctx<'_>,
    out: &mut ReportDocument,
    r: &StructureCandidate<'_>,
    s: &ObjSet,
    carrier: &str,
    sub: &str,
    family: &crate::quotient::CosetFamily,
) -> Result<()> {
    let doc = ctx.doc;
    let mut listed = Vec::new();
    for c in &family.cosets {
        let name = format!("{}+{sub}", ctx.name(c.representative));
        out.sets.insert(name.clone(), ctx.names(&c.members));
        let q = set_description(&doc.space, &c.members);
        out.sets.insert(format!("Q({name})"), q.descriptions(&doc.space).iter().map(|d| d.to_string()).collect());
        listed.push(ctx.names(&c.members));
    }
    out.families.insert(format!("{carrier}/{sub}"), listed);
    for (members, reps) in family.shared_member_sets() {
        out.notes.push(format!(
            "cosets {} share the member set {}",
            reps.iter().map(|x| format!("{}+{sub}", ctx.name(x))).collect::<Vec<_>>().join(", "),
            ctx.show(&members)
        ));
    }

    let Some(expected) = doc.expected() else { return Ok(()) };
    for e in expected.cosets.iter().filter(|e| e.carrier == carrier && e.sub == sub) {
        let x = doc.universe().lookup(&e.representative)?;
        if family.get(x).is_none() {
            continue;
        }
        let computed = crate::quotient::weak_coset(x, s, r)?.members;
        let wanted = doc.universe().set(&e.members)?;
        if computed != wanted {
            out.deviations.push(Deviation {
                subject: format!("{}+{sub} members", e.representative),
                expected: ctx.show(&wanted),
                computed: ctx.show(&computed),
                note: e.note.clone(),
            });
        }
    }
    for e in expected.descriptions.iter().filter(|e| e.carrier == carrier && e.sub == sub) {
        let x = doc.universe().lookup(&e.representative)?;
        let Some(c) = family.get(x) else { continue };
        let mut computed: Vec<String> =
            set_description(&doc.space, &c.members).descriptions(&doc.space).iter().map(|d| d.to_string()).collect();
        let mut wanted: Vec<String> = e.tuples.iter().map(|t| format!("({})", t.join(","))).collect();
        computed.sort();
        wanted.sort();
        wanted.dedup();
        if computed != wanted {
            out.deviations.push(Deviation {
                subject: format!("Q({}+{sub})", e.representative),
                expected: format!("{{{}}}", wanted.join(", ")),
                computed: format!("{{{}}}", computed.join(", ")),
                note: e.note.clone(),
            });
        }
    }
    Ok(())
}
