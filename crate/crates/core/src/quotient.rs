//! Weak cosets, coset families and the quotient nearness ring `R/_wS`.
//!
//! A weak coset is identified by its representative: `x+S` and `y+S` are
//! different table entries even when their member sets coincide. Member-set
//! equality is tracked as metadata and drives the well-definedness audit.

use std::collections::BTreeMap;

use crate::descriptive::{powerset, SetDescription};
use crate::error::{NearnessError, Result};
use crate::report::{AxiomReport, Verdict, Witness};
use crate::set::{Obj, ObjSet};
use crate::space::ApproximationSpace;
use crate::structures::{check_nearness_ring, check_subnearness_ring};
use crate::table::{Op, OpTable, StructureCandidate, UpperApprox};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakCoset {
    pub representative: Obj,
    pub sub: ObjSet,
    pub members: ObjSet,
}

/// `{x+s | s ∈ S, x+s ∈ R} ∪ {x}` for any object `x`.
fn coset_members(x: Obj, sub: &ObjSet, r: &StructureCandidate<'_>) -> ObjSet {
    let mut members: ObjSet = sub.iter().map(|s| r.add(x, s)).filter(|y| r.carrier.contains(*y)).collect();
    members.insert(x);
    members
}

/// The weak coset `x+S`; `x` must lie in the carrier or its upper
/// approximation.
pub fn weak_coset(x: Obj, sub: &ObjSet, r: &StructureCandidate<'_>) -> Result<WeakCoset> {
    if !sub.is_subset(&r.carrier) {
        return Err(NearnessError::Precondition("S must be a subset of the carrier".into()));
    }
    if !r.carrier.contains(x) && !r.upper().contains(x) {
        return Err(NearnessError::Precondition(format!(
            "{} lies outside the upper approximation of the carrier",
            r.label(x)
        )));
    }
    Ok(WeakCoset { representative: x, sub: sub.clone(), members: coset_members(x, sub, r) })
}

#[derive(Clone, Debug)]
pub struct CosetFamily {
    pub cosets: Vec<WeakCoset>,
    pub sub: ObjSet,
    /// Representatives drawn from `N*R` instead of `R`.
    pub extended: bool,
    /// Set when `S` did not verify as a subnearness ring of `R`.
    pub warnings: Vec<String>,
}

impl CosetFamily {
    pub fn representatives(&self) -> ObjSet {
        self.cosets.iter().map(|c| c.representative).collect()
    }

    pub fn get(&self, rep: Obj) -> Option<&WeakCoset> {
        self.cosets.iter().find(|c| c.representative == rep)
    }

    pub fn member_sets(&self) -> Vec<ObjSet> {
        self.cosets.iter().map(|c| c.members.clone()).collect()
    }

    /// Groups of representatives whose cosets share a member set (groups of
    /// size one are omitted).
    pub fn shared_member_sets(&self) -> Vec<(ObjSet, ObjSet)> {
        let mut groups: BTreeMap<ObjSet, ObjSet> = BTreeMap::new();
        for c in &self.cosets {
            groups.entry(c.members.clone()).or_default().insert(c.representative);
        }
        groups.into_iter().filter(|(_, reps)| reps.len() > 1).collect()
    }
}

/// `R/∼` (or `(N*R)/∼` when `extended`), one coset per representative in
/// canonical order.
pub fn coset_family(r: &StructureCandidate<'_>, sub: &ObjSet, extended: bool) -> Result<CosetFamily> {
    if !sub.is_subset(&r.carrier) || sub.is_empty() {
        return Err(NearnessError::Precondition("S must be a nonempty subset of the carrier".into()));
    }
    let mut warnings = Vec::new();
    if r.ambient.mul.is_some() && !check_subnearness_ring(sub, r)?.passed() {
        warnings.push("S is not a verified subnearness ring of R".to_string());
    }
    let generators = if extended { r.upper() } else { r.carrier.clone() };
    let cosets = generators
        .iter()
        .map(|x| WeakCoset { representative: x, sub: sub.clone(), members: coset_members(x, sub, r) })
        .collect();
    Ok(CosetFamily { cosets, sub: sub.clone(), extended, warnings })
}

fn combine(a: &WeakCoset, b: &WeakCoset, r: &StructureCandidate<'_>, op: Op) -> Result<WeakCoset> {
    if a.sub != b.sub {
        return Err(NearnessError::Precondition("cosets of different subsets cannot be combined".into()));
    }
    let t = r.table(op).ok_or_else(|| NearnessError::Invalid(format!("operation `{op}` is not defined")))?;
    let (x, y) = (a.representative, b.representative);
    let rep = t.apply(x, y);
    if !r.upper().contains(rep) {
        return Err(NearnessError::Closure { op: op.symbol(), x: r.label(x), y: r.label(y), result: r.label(rep) });
    }
    Ok(WeakCoset { representative: rep, sub: a.sub.clone(), members: coset_members(rep, &a.sub, r) })
}

/// `(x+S) ⊕ (y+S) = (x+y)+S`.
pub fn coset_sum(a: &WeakCoset, b: &WeakCoset, r: &StructureCandidate<'_>) -> Result<WeakCoset> {
    combine(a, b, r, Op::Add)
}

/// `(x+S) ⊙ (y+S) = (x·y)+S`.
pub fn coset_product(a: &WeakCoset, b: &WeakCoset, r: &StructureCandidate<'_>) -> Result<WeakCoset> {
    combine(a, b, r, Op::Mul)
}

/// Descriptive upper approximation on the coset level, indexed by
/// representative: `upper(X)` holds every candidate representative `c` whose
/// coset `c+S` is descriptively near `x+S` for some `x ∈ X`.
#[derive(Clone, Debug)]
pub struct CosetClosure {
    descriptions: Vec<SetDescription>,
    candidates: ObjSet,
    labels: Vec<String>,
}

impl CosetClosure {
    /// Candidates are all weak cosets with representatives in the universe.
    pub fn new(space: &ApproximationSpace, r: &StructureCandidate<'_>, sub: &ObjSet, sub_label: &str) -> Self {
        let universe = space.universe();
        CosetClosure {
            descriptions: universe.objects().map(|x| SetDescription::of(space, &coset_members(x, sub, r))).collect(),
            candidates: universe.all(),
            labels: universe.objects().map(|x| format!("{}+{sub_label}", universe.name(x))).collect(),
        }
    }

    pub fn description(&self, rep: Obj) -> &SetDescription {
        &self.descriptions[rep.index()]
    }

    /// First representative of `family` whose coset is near `rep`'s coset.
    pub fn pairing(&self, rep: Obj, family: &ObjSet) -> Option<Obj> {
        family.iter().find(|&f| self.descriptions[rep.index()].meets(&self.descriptions[f.index()]))
    }
}

impl UpperApprox for CosetClosure {
    fn upper(&self, set: &ObjSet) -> ObjSet {
        self.candidates.iter().filter(|&c| set.iter().any(|x| self.descriptions[c.index()].meets(&self.descriptions[x.index()]))).collect()
    }

    fn label(&self, x: Obj) -> String {
        self.labels[x.index()].clone()
    }
}

/// Candidate family used for `N*(R/∼)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum QuotientCandidates {
    /// Weak cosets with representatives in the universe.
    #[default]
    Cosets,
    /// Every subset of the universe (bounded).
    Powerset,
}

/// Checks `(N*R)/∼ ⊆ N*(R/∼)`.
pub fn check_quotient_hypothesis(
    space: &ApproximationSpace,
    r: &StructureCandidate<'_>,
    sub: &ObjSet,
    candidates: QuotientCandidates,
) -> Result<AxiomReport> {
    let base = coset_family(r, sub, false)?;
    let extended = coset_family(r, sub, true)?;
    let closure = CosetClosure::new(space, r, sub, "S");
    let base_reps = base.representatives();
    let mut rep = AxiomReport::new("quotient hypothesis");
    rep.flag("subring", Verdict::from_bool(base.warnings.is_empty()));

    let mut pairs = Vec::new();
    let mut shared = Vec::new();
    let mut ok = true;
    match candidates {
        QuotientCandidates::Cosets => {
            let near = closure.upper(&base_reps);
            rep.witness("upper-family", Witness::Set(near.clone()));
            for c in &extended.cosets {
                let x = c.representative;
                match closure.pairing(x, &base_reps) {
                    Some(partner) if near.contains(x) => {
                        pairs.push((x, partner));
                        let common = closure.description(x).intersection_ids(closure.description(partner));
                        let rendered: Vec<String> = common.iter().map(|&id| space.description_by_id(id).to_string()).collect();
                        shared.push(format!("{} ~ {} via {}", closure.label(x), closure.label(partner), rendered.join(", ")));
                    }
                    _ => {
                        if ok {
                            rep.counterexample("inclusion", vec![x], vec![], "extended coset is near no coset of R/∼");
                        }
                        ok = false;
                    }
                }
            }
        }
        QuotientCandidates::Powerset => {
            let family = base.member_sets();
            let described: Vec<SetDescription> = family.iter().map(|s| SetDescription::of(space, s)).collect();
            let near: Vec<ObjSet> = powerset(space.universe().len())?
                .into_iter()
                .filter(|b| {
                    let qb = SetDescription::of(space, b);
                    described.iter().any(|q| q.meets(&qb))
                })
                .collect();
            rep.witness("upper-family-size", Witness::Text(near.len().to_string()));
            for c in &extended.cosets {
                if !near.contains(&c.members) {
                    if ok {
                        rep.counterexample("inclusion", vec![c.representative], vec![], "extended coset member set is near no coset of R/∼");
                    }
                    ok = false;
                } else if let Some(partner) = closure.pairing(c.representative, &base_reps) {
                    pairs.push((c.representative, partner));
                }
            }
        }
    }
    rep.require("inclusion", Verdict::from_bool(ok));
    rep.witness("pairings", Witness::Pairs(pairs));
    if !shared.is_empty() {
        rep.witness("shared-descriptions", Witness::Text(shared.join("; ")));
    }
    Ok(rep)
}

/// Tables of a quotient collapsed onto distinct member sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTables {
    pub classes: Vec<ObjSet>,
    /// Indices into `classes`, row-major over `classes`.
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub family: CosetFamily,
    pub extended: CosetFamily,
    pub closure: CosetClosure,
    pub add: OpTable,
    pub mul: OpTable,
    /// `⊕` and `⊙` results by representative, row-major over the carrier.
    pub sum_table: Vec<Vec<Obj>>,
    pub product_table: Vec<Vec<Obj>>,
    pub report: AxiomReport,
    /// Present when representative arithmetic respects member-set equality.
    pub classes: Option<ClassTables>,
}

impl QuotientRing {
    pub fn representatives(&self) -> ObjSet {
        self.family.representatives()
    }

    /// The coset-level structure: representatives as carrier, descriptive
    /// closure as upper approximation.
    pub fn structure(&self) -> StructureCandidate<'_> {
        StructureCandidate::new(&self.closure, self.representatives(), &self.add, Some(&self.mul))
            .expect("tables share the universe")
    }

    /// Additive identity of the quotient, if unique.
    pub fn zero(&self) -> Option<Obj> {
        match self.report.witnesses.get("zero") {
            Some(Witness::Element(z)) => Some(*z),
            _ => None,
        }
    }
}

pub fn build_quotient_ring(
    space: &ApproximationSpace,
    r: &StructureCandidate<'_>,
    sub: &ObjSet,
    sub_label: &str,
) -> Result<QuotientRing> {
    let mul = r.require_mul()?;
    let hypothesis = check_quotient_hypothesis(space, r, sub, QuotientCandidates::Cosets)?;
    if !hypothesis.passed() {
        return Err(NearnessError::Precondition("(N*R)/∼ ⊆ N*(R/∼) does not hold".into()));
    }
    let family = coset_family(r, sub, false)?;
    let extended = coset_family(r, sub, true)?;

    let mut sum_table = Vec::new();
    let mut product_table = Vec::new();
    for a in &family.cosets {
        let mut srow = Vec::new();
        let mut prow = Vec::new();
        for b in &family.cosets {
            srow.push(coset_sum(a, b, r)?.representative);
            prow.push(coset_product(a, b, r)?.representative);
        }
        sum_table.push(srow);
        product_table.push(prow);
    }

    let closure = CosetClosure::new(space, r, sub, sub_label);
    let mut report = AxiomReport::new(format!("quotient nearness ring by {sub_label}"));
    let quotient_candidate = StructureCandidate::new(&closure, family.representatives(), r.ambient.add, Some(mul))?;
    let ring = check_nearness_ring(&quotient_candidate)?;
    let ring_ok = ring.passed();
    for key in ["zero", "negatives", "one"] {
        if let Some(w) = ring.witnesses.get(key) {
            report.witness(key, w.clone());
        }
    }
    report.absorb("ring", ring);
    report.require("nearness-ring", Verdict::from_bool(ring_ok));
    report.absorb("hypothesis", hypothesis);

    let member = |x: Obj| coset_members(x, sub, r);
    let mut well_defined = true;
    for (set, reps) in family.shared_member_sets() {
        let reps: Vec<Obj> = reps.iter().collect();
        report.witness(&format!("shared:{}", reps.iter().map(|&x| closure.label(x)).collect::<Vec<_>>().join("=")), Witness::Set(set));
        for w in reps.windows(2) {
            let (x, x2) = (w[0], w[1]);
            for y in family.representatives().iter() {
                for (t, op) in [(r.ambient.add, "⊕"), (mul, "⊙")] {
                    let cases = [(t.apply(x, y), t.apply(x2, y)), (t.apply(y, x), t.apply(y, x2))];
                    for (a, b) in cases {
                        if member(a) != member(b) && well_defined {
                            well_defined = false;
                            report.counterexample("well-defined", vec![x, x2, y], vec![a, b], format!("equal cosets give different {op} results"));
                            report.anomalies.push(format!(
                                "{} and {} share members but {op} with {} disagrees",
                                closure.label(x),
                                closure.label(x2),
                                closure.label(y)
                            ));
                        }
                    }
                }
            }
        }
    }
    report.flag("well-defined", Verdict::from_bool(well_defined));

    let classes = well_defined.then(|| {
        let mut classes: Vec<ObjSet> = family.cosets.iter().map(|c| c.members.clone()).collect();
        for row in sum_table.iter().chain(&product_table) {
            classes.extend(row.iter().map(|&x| member(x)));
        }
        classes.sort();
        classes.dedup();
        let idx = |x: Obj| classes.binary_search(&member(x)).expect("class present");
        let reps = family.representatives();
        let mut seen = BTreeMap::new();
        for (i, x) in reps.iter().enumerate() {
            seen.entry(idx(x)).or_insert(i);
        }
        let order: Vec<(usize, usize)> = seen.into_iter().collect();
        let add = order.iter().map(|&(_, i)| order.iter().map(|&(_, j)| idx(sum_table[i][j])).collect()).collect();
        let mul = order.iter().map(|&(_, i)| order.iter().map(|&(_, j)| idx(product_table[i][j])).collect()).collect();
        ClassTables { classes, add, mul }
    });

    Ok(QuotientRing {
        family,
        extended,
        closure,
        add: r.ambient.add.clone(),
        mul: mul.clone(),
        sum_table,
        product_table,
        report,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::set::Universe;
    use crate::space::{FeatureSystem, Probe};

    struct Example {
        space: ApproximationSpace,
        add: OpTable,
        mul: OpTable,
    }

    impl Example {
        fn new() -> Self {
            Example { space: fixtures::example_space(), add: fixtures::example_add(), mul: fixtures::example_mul() }
        }

        fn set(&self, ids: &[&str]) -> ObjSet {
            self.space.universe().set(ids).unwrap()
        }

        fn obj(&self, id: &str) -> Obj {
            self.space.universe().lookup(id).unwrap()
        }

        fn ring(&self) -> StructureCandidate<'_> {
            StructureCandidate::new(&self.space, self.set(&["r", "t", "w"]), &self.add, Some(&self.mul)).unwrap()
        }
    }

    #[test]
    fn weak_cosets_of_the_example() {
        let ex = Example::new();
        let (r, s) = (ex.ring(), ex.set(&["r", "w"]));
        let members = |x: &str| weak_coset(ex.obj(x), &s, &r).unwrap().members;
        assert_eq!(members("t"), ex.set(&["r", "t", "w"]));
        assert_eq!(members("w"), ex.set(&["t", "w"]));
        assert_eq!(members("o"), ex.set(&["o", "r", "w"]));
        assert_eq!(members("r"), ex.set(&["r", "t"]));
        assert!(matches!(weak_coset(ex.obj("p"), &s, &r), Err(NearnessError::Precondition(_))));
    }

    #[test]
    fn families_and_representatives() {
        let ex = Example::new();
        let (r, s) = (ex.ring(), ex.set(&["r", "w"]));
        let base = coset_family(&r, &s, false).unwrap();
        assert_eq!(base.representatives(), ex.set(&["r", "t", "w"]));
        assert!(base.warnings.is_empty());
        let extended = coset_family(&r, &s, true).unwrap();
        assert_eq!(extended.representatives(), ex.set(&["o", "r", "t", "w"]));
        assert!(extended.shared_member_sets().is_empty());

        let whole = coset_family(&r, &r.carrier, true).unwrap();
        for c in &whole.cosets {
            let mut expected = r.carrier.clone();
            expected.insert(c.representative);
            assert!(c.members.is_subset(&expected));
        }
    }

    #[test]
    fn coset_tables_of_the_example() {
        let ex = Example::new();
        let (r, s) = (ex.ring(), ex.set(&["r", "w"]));
        let q = build_quotient_ring(&ex.space, &r, &s, "S").unwrap();
        let names = |rows: &Vec<Vec<Obj>>| -> Vec<String> {
            rows.iter().map(|row| row.iter().map(|&x| ex.space.universe().name(x)).collect::<Vec<_>>().join(" ")).collect()
        };
        assert_eq!(names(&q.sum_table), ["t w o", "w o r", "o r t"]);
        assert_eq!(names(&q.product_table), ["t o t", "o o o", "t o t"]);
        assert!(q.report.passed(), "{:?}", q.report);
        assert_eq!(q.zero(), Some(ex.obj("o")));
        assert_eq!(q.structure().upper(), ex.set(&["o", "r", "t", "w"]));
        assert_eq!(q.closure.label(ex.obj("t")), "t+S");
        assert_eq!(q.report.verdict("well-defined"), Some(Verdict::Pass));
    }

    #[test]
    fn representative_arithmetic_matches_member_sets() {
        let ex = Example::new();
        let (r, s) = (ex.ring(), ex.set(&["r", "w"]));
        let family = coset_family(&r, &s, true).unwrap();
        for a in &family.cosets {
            for b in &family.cosets {
                if let Ok(sum) = coset_sum(a, b, &r) {
                    let direct = weak_coset(r.add(a.representative, b.representative), &s, &r).unwrap();
                    assert_eq!(sum, direct);
                }
                if let Ok(prod) = coset_product(a, b, &r) {
                    assert_eq!(prod.members, weak_coset(prod.representative, &s, &r).unwrap().members);
                }
            }
        }
    }

    #[test]
    fn escaping_results_raise_closure_errors() {
        let ex = Example::new();
        let p = StructureCandidate::new(&ex.space, ex.set(&["p"]), &ex.add, Some(&ex.mul)).unwrap();
        let s = ex.set(&["p"]);
        let c = weak_coset(ex.obj("p"), &s, &p).unwrap();
        match coset_sum(&c, &c, &p) {
            Err(NearnessError::Closure { x, y, result, .. }) => assert_eq!((x.as_str(), y.as_str(), result.as_str()), ("p", "p", "r")),
            other => panic!("expected closure error, got {other:?}"),
        }
    }

    #[test]
    fn hypothesis_pairings() {
        let ex = Example::new();
        let (r, s) = (ex.ring(), ex.set(&["r", "w"]));
        let rep = check_quotient_hypothesis(&ex.space, &r, &s, QuotientCandidates::Cosets).unwrap();
        assert!(rep.passed());
        let Some(Witness::Pairs(pairs)) = rep.witnesses.get("pairings") else { panic!("pairings missing") };
        assert!(pairs.contains(&(ex.obj("o"), ex.obj("r"))));
        let Some(Witness::Text(shared)) = rep.witnesses.get("shared-descriptions") else { panic!("shared missing") };
        assert!(shared.contains("o+S ~ r+S via (a1,b2)"), "{shared}");

        let powerset = check_quotient_hypothesis(&ex.space, &r, &s, QuotientCandidates::Powerset).unwrap();
        assert!(powerset.passed());
        let trivial = check_quotient_hypothesis(&ex.space, &r, &r.carrier, QuotientCandidates::Cosets).unwrap();
        assert!(trivial.passed());
    }

    #[test]
    fn hypothesis_fails_when_an_extended_coset_is_isolated() {
        // ℤ4 with 0 and 1 sharing one probe value but not the other: 1 enters
        // N*{0,2} while 1+{0} = {1} has a description of its own.
        let z4 = fixtures::zn(4);
        let probe = |name: &str, v: [&str; 4]| Probe { name: name.into(), values: v.iter().map(|s| s.to_string()).collect() };
        let system = FeatureSystem::new(
            Universe::new(["0", "1", "2", "3"]).unwrap(),
            vec![probe("f", ["A", "A", "B", "C"]), probe("g", ["X", "Y", "Z", "W"])],
            1,
        )
        .unwrap();
        let space = ApproximationSpace::new(system);
        let r = StructureCandidate::new(&space, ObjSet::from_iter([Obj(0), Obj(2)]), &z4.add, Some(&z4.mul)).unwrap();
        let s = ObjSet::singleton(Obj(0));
        let rep = check_quotient_hypothesis(&space, &r, &s, QuotientCandidates::Cosets).unwrap();
        assert_eq!(rep.verdict("inclusion"), Some(Verdict::Fail));
        assert_eq!(rep.first_counterexample("inclusion").unwrap().tuple, vec![Obj(1)]);
        assert!(matches!(build_quotient_ring(&space, &r, &s, "S"), Err(NearnessError::Precondition(_))));
    }

    #[test]
    fn classical_quotient_of_z4() {
        let z4 = fixtures::zn(4);
        let space = z4.space(&[0, 1, 2, 3]);
        let r = StructureCandidate::new(&space, space.universe().all(), &z4.add, Some(&z4.mul)).unwrap();
        let k = ObjSet::from_iter([Obj(0), Obj(2)]);
        let q = build_quotient_ring(&space, &r, &k, "K").unwrap();
        assert!(q.report.passed());
        let classes = q.classes.expect("well defined");
        assert_eq!(classes.classes, vec![k.clone(), ObjSet::from_iter([Obj(1), Obj(3)])]);
        assert_eq!(classes.add, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(classes.mul, vec![vec![0, 0], vec![0, 1]]);
    }
}
