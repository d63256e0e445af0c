//! Axiom checkers for near semigroups, near groups, nearness rings and their
//! substructures.
//!
//! Every "law holds in the upper approximation" requirement is evaluated as:
//! the results the law demands lie in the upper approximation of the carrier,
//! and the stated equalities hold as equalities of objects. Associativity
//! records its equality verdict as the axiom itself and the membership of the
//! intermediate results as a separate `:in-upper` flag. Every violating
//! associativity triple is listed, in lexicographic order.

use crate::error::{NearnessError, Result};
use crate::report::{AxiomReport, Verdict, Witness};
use crate::set::{Obj, ObjSet};
use crate::table::{Op, OpTable, StructureCandidate};

/// Left, right or two-sided ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

impl Side {
    fn left(self) -> bool {
        matches!(self, Side::Left | Side::Both)
    }

    fn right(self) -> bool {
        matches!(self, Side::Right | Side::Both)
    }
}

/// First pair of `set` whose product leaves `set`.
pub fn groupoid_violation(set: &ObjSet, table: &OpTable) -> Option<(Obj, Obj, Obj)> {
    for x in set {
        for y in set {
            let z = table.apply(x, y);
            if !set.contains(z) {
                return Some((x, y, z));
            }
        }
    }
    None
}

pub fn is_groupoid(set: &ObjSet, table: &OpTable) -> bool {
    !set.is_empty() && groupoid_violation(set, table).is_none()
}

fn table<'a>(s: &StructureCandidate<'a>, op: Op) -> Result<&'a OpTable> {
    s.table(op)
        .ok_or_else(|| NearnessError::Invalid(format!("operation `{op}` is not defined for this candidate")))
}

/// Elements of the upper approximation acting as two-sided identity on the
/// whole carrier.
pub fn identities(s: &StructureCandidate<'_>, op: Op) -> Result<ObjSet> {
    let t = table(s, op)?;
    Ok(s.upper()
        .iter()
        .filter(|&e| s.carrier.iter().all(|x| t.apply(x, e) == x && t.apply(e, x) == x))
        .collect())
}

/// The unique additive near identity, or a structural error.
pub fn additive_zero(s: &StructureCandidate<'_>) -> Result<Obj> {
    let ids = identities(s, Op::Add)?;
    match ids.len() {
        1 => Ok(ids.first().expect("one element")),
        0 => Err(NearnessError::Structural("no additive near identity in the upper approximation".into())),
        _ => Err(NearnessError::Structural(format!("{} distinct additive near identities", ids.len()))),
    }
}

/// `-x`: the additive inverse of `x` relative to `zero`, searched in the
/// carrier first and then in the rest of the upper approximation.
pub fn negate(s: &StructureCandidate<'_>, zero: Obj, x: Obj) -> Option<Obj> {
    let inverse_of = |y: &Obj| s.add(x, *y) == zero && s.add(*y, x) == zero;
    s.carrier.iter().find(inverse_of).or_else(|| s.upper().iter().find(inverse_of))
}

/// Inverse of `x` inside the carrier only.
fn carrier_inverse(s: &StructureCandidate<'_>, zero: Obj, x: Obj) -> Option<Obj> {
    s.carrier.iter().find(|&y| s.add(x, y) == zero && s.add(y, x) == zero)
}

/// `x ∘ y ∈ N*S` for all `x, y ∈ S`, recorded under `id`.
fn closure_check(s: &StructureCandidate<'_>, t: &OpTable, op: Op, upper: &ObjSet, id: &str, rep: &mut AxiomReport) {
    for x in &s.carrier {
        for y in &s.carrier {
            let z = t.apply(x, y);
            if !upper.contains(z) {
                rep.require(id, Verdict::Fail);
                rep.counterexample(id, vec![x, y], vec![z], format!("x{op}y escapes the upper approximation"));
                return;
            }
        }
    }
    rep.require(id, Verdict::Pass);
}

fn associativity_check(
    s: &StructureCandidate<'_>,
    t: &OpTable,
    op: Op,
    upper: &ObjSet,
    id: &str,
    rep: &mut AxiomReport,
) {
    let audit = format!("{id}:in-upper");
    let mut equal = true;
    let mut inside = true;
    for x in &s.carrier {
        for y in &s.carrier {
            let xy = t.apply(x, y);
            for z in &s.carrier {
                let yz = t.apply(y, z);
                let lhs = t.apply(x, yz);
                let rhs = t.apply(xy, z);
                if lhs != rhs {
                    equal = false;
                    rep.counterexample(id, vec![x, y, z], vec![lhs, rhs], format!("x{op}(y{op}z) ≠ (x{op}y){op}z"));
                }
                if inside {
                    if let Some(&out) = [xy, yz, lhs, rhs].iter().find(|v| !upper.contains(**v)) {
                        inside = false;
                        rep.counterexample(
                            &audit,
                            vec![x, y, z],
                            vec![out],
                            "an intermediate result of the associativity law escapes the upper approximation",
                        );
                    }
                }
            }
        }
    }
    rep.require(id, Verdict::from_bool(equal));
    rep.flag(&audit, Verdict::from_bool(inside));
}

/// `op(x, y) ∈ N*R` for every pair of the carrier.
pub fn closed_in_upper(s: &StructureCandidate<'_>, op: Op) -> Result<AxiomReport> {
    let t = table(s, op)?;
    let mut rep = AxiomReport::new(format!("closure under {op}"));
    closure_check(s, t, op, &s.upper(), "closure", &mut rep);
    Ok(rep)
}

pub fn check_near_semigroup(s: &StructureCandidate<'_>, op: Op) -> Result<AxiomReport> {
    nonempty(s)?;
    let t = table(s, op)?;
    let upper = s.upper();
    let mut rep = AxiomReport::new(format!("near semigroup under {op}"));
    closure_check(s, t, op, &upper, "NS1", &mut rep);
    associativity_check(s, t, op, &upper, "NS2", &mut rep);
    Ok(rep)
}

pub fn check_near_group(s: &StructureCandidate<'_>, op: Op) -> Result<AxiomReport> {
    nonempty(s)?;
    let t = table(s, op)?;
    let upper = s.upper();
    let mut rep = AxiomReport::new(format!("near group under {op}"));
    closure_check(s, t, op, &upper, "NG1", &mut rep);
    associativity_check(s, t, op, &upper, "NG2", &mut rep);

    let ids = identities(s, op)?;
    let identity = match ids.len() {
        0 => {
            rep.require("NG3", Verdict::Fail);
            // Witness the failure of the first candidate.
            if let Some(u) = upper.first() {
                let x = s
                    .carrier
                    .iter()
                    .find(|&x| t.apply(x, u) != x || t.apply(u, x) != x)
                    .expect("u is not an identity");
                rep.counterexample("NG3", vec![u, x], vec![t.apply(x, u), t.apply(u, x)], "no element of the upper approximation acts as identity (u, x, x∘u, u∘x for the first candidate u)");
            }
            None
        }
        1 => {
            let e = ids.first().expect("one element");
            rep.require("NG3", Verdict::Pass);
            rep.witness("identity", Witness::Element(e));
            Some(e)
        }
        n => {
            rep.require("NG3", Verdict::Anomaly);
            rep.note("NG3", format!("{n} distinct elements act as identity; the near identity must be unique"));
            rep.anomalies.push(format!("{n} distinct near identities under {op}"));
            rep.witness("identities", Witness::Set(ids));
            None
        }
    };

    match identity {
        Some(e) => {
            let mut pairs = Vec::new();
            let mut ok = true;
            for x in &s.carrier {
                let inverses: ObjSet = s.carrier.iter().filter(|&y| t.apply(x, y) == e && t.apply(y, x) == e).collect();
                match inverses.first() {
                    Some(y) => {
                        pairs.push((x, y));
                        if inverses.len() > 1 && rep.verdict("NG2") == Some(Verdict::Pass) {
                            rep.anomalies.push(format!("{} has {} inverses", s.label(x), inverses.len()));
                        }
                    }
                    None if ok => {
                        ok = false;
                        rep.counterexample("NG4", vec![x], vec![], "no inverse inside the carrier");
                    }
                    None => {}
                }
            }
            rep.require("NG4", Verdict::from_bool(ok));
            if ok {
                rep.witness("inverses", Witness::Pairs(pairs));
            }
        }
        None => {
            rep.require("NG4", Verdict::NotApplicable);
            rep.note("NG4", "no unique near identity");
        }
    }

    let abelian = commutativity(s, t, op, "abelian", &mut rep);
    rep.flag("abelian", Verdict::from_bool(abelian));
    Ok(rep)
}

fn commutativity(s: &StructureCandidate<'_>, t: &OpTable, op: Op, id: &str, rep: &mut AxiomReport) -> bool {
    for x in &s.carrier {
        for y in s.carrier.iter().filter(|&y| y > x) {
            let (a, b) = (t.apply(x, y), t.apply(y, x));
            if a != b {
                rep.counterexample(id, vec![x, y], vec![a, b], format!("x{op}y ≠ y{op}x"));
                return false;
            }
        }
    }
    true
}

fn nonempty(s: &StructureCandidate<'_>) -> Result<()> {
    if s.carrier.is_empty() {
        return Err(NearnessError::Precondition("the carrier must be nonempty".into()));
    }
    Ok(())
}

/// NR1–NR3 are required; NR4 (commutativity) and NR5 (identity) are flags.
pub fn check_nearness_ring(s: &StructureCandidate<'_>) -> Result<AxiomReport> {
    nonempty(s)?;
    let mul = s.require_mul()?;
    let upper = s.upper();
    let mut rep = AxiomReport::new("nearness ring");

    let group = check_near_group(s, Op::Add)?;
    let nr1 = if group.verdict("NG3") == Some(Verdict::Anomaly) {
        Verdict::Anomaly
    } else {
        Verdict::from_bool(group.passed() && group.verdict("abelian") == Some(Verdict::Pass))
    };
    if let Some(Witness::Element(e)) = group.witnesses.get("identity") {
        rep.witness("zero", Witness::Element(*e));
    }
    if let Some(w @ Witness::Pairs(_)) = group.witnesses.get("inverses") {
        rep.witness("negatives", w.clone());
    }
    rep.absorb("NR1", group);
    rep.require("NR1", nr1);

    let semigroup = check_near_semigroup(s, Op::Mul)?;
    let nr2 = Verdict::from_bool(semigroup.passed());
    rep.absorb("NR2", semigroup);
    rep.require("NR2", nr2);

    let nr3 = distributivity(s, mul, &upper, &mut rep);
    rep.require("NR3", Verdict::from_bool(nr3));

    let nr4 = commutativity(s, mul, Op::Mul, "NR4", &mut rep);
    rep.flag("NR4", Verdict::from_bool(nr4));

    let ones = identities(s, Op::Mul)?;
    match ones.len() {
        0 => {
            rep.flag("NR5", Verdict::Fail);
            rep.note("NR5", "no multiplicative identity in the upper approximation");
        }
        1 => {
            rep.flag("NR5", Verdict::Pass);
            rep.witness("one", Witness::Element(ones.first().expect("one element")));
        }
        n => {
            rep.flag("NR5", Verdict::Anomaly);
            rep.note("NR5", format!("{n} distinct multiplicative identities"));
            rep.anomalies.push(format!("{n} distinct multiplicative identities"));
            rep.witness("ones", Witness::Set(ones));
        }
    }
    Ok(rep)
}

/// Both distributive laws with every intermediate result in `upper`.
fn distributivity(s: &StructureCandidate<'_>, mul: &OpTable, upper: &ObjSet, rep: &mut AxiomReport) -> bool {
    let add = s.ambient.add;
    for x in &s.carrier {
        for y in &s.carrier {
            for z in &s.carrier {
                // x·(y+z) = x·y + x·z
                let yz = add.apply(y, z);
                let lhs = mul.apply(x, yz);
                let (xy, xz) = (mul.apply(x, y), mul.apply(x, z));
                let rhs = add.apply(xy, xz);
                if let Some(detail) = distributive_violation([yz, lhs, xy, xz, rhs], lhs, rhs, upper) {
                    rep.counterexample("NR3", vec![x, y, z], vec![lhs, rhs], format!("left law x·(y+z) = x·y+x·z: {detail}"));
                    return false;
                }
                // (x+y)·z = x·z + y·z
                let xy_sum = add.apply(x, y);
                let lhs = mul.apply(xy_sum, z);
                let (xz, yz) = (mul.apply(x, z), mul.apply(y, z));
                let rhs = add.apply(xz, yz);
                if let Some(detail) = distributive_violation([xy_sum, lhs, xz, yz, rhs], lhs, rhs, upper) {
                    rep.counterexample("NR3", vec![x, y, z], vec![lhs, rhs], format!("right law (x+y)·z = x·z+y·z: {detail}"));
                    return false;
                }
            }
        }
    }
    true
}

fn distributive_violation(parts: [Obj; 5], lhs: Obj, rhs: Obj, upper: &ObjSet) -> Option<&'static str> {
    if lhs != rhs {
        Some("sides differ")
    } else if parts.iter().any(|p| !upper.contains(*p)) {
        Some("an intermediate result escapes the upper approximation")
    } else {
        None
    }
}

/// Multiplicative identities of zero and negation; applicable when `0 ∈ R`
/// and `0·x, x·0 ∈ R` for every `x`.
pub fn check_element_props(s: &StructureCandidate<'_>) -> Result<AxiomReport> {
    let ring = check_nearness_ring(s)?;
    let mut rep = AxiomReport::new("element properties");
    let ids = ["zero-product", "negation", "double-negation"];
    let not_applicable = |rep: &mut AxiomReport, why: &str| {
        for id in ids {
            rep.flag(id, Verdict::NotApplicable);
            rep.note(id, why);
        }
    };
    if !ring.passed() {
        not_applicable(&mut rep, "the candidate is not a nearness ring");
        return Ok(rep);
    }
    let zero = match ring.witnesses.get("zero") {
        Some(Witness::Element(e)) => *e,
        _ => unreachable!("a passing ring has a unique zero"),
    };
    rep.witness("zero", Witness::Element(zero));
    let in_r = |x: Obj| s.carrier.contains(x);
    if !in_r(zero) || !s.carrier.iter().all(|x| in_r(s.mul(zero, x)) && in_r(s.mul(x, zero))) {
        not_applicable(&mut rep, "requires 0 ∈ R and 0·x, x·0 ∈ R");
        return Ok(rep);
    }

    let mut zero_ok = true;
    for x in &s.carrier {
        let (a, b) = (s.mul(x, zero), s.mul(zero, x));
        if a != zero || b != zero {
            zero_ok = false;
            rep.counterexample("zero-product", vec![x], vec![a, b], "x·0 = 0·x = 0 fails");
            break;
        }
    }
    rep.require("zero-product", Verdict::from_bool(zero_ok));

    let neg = |x: Obj| negate(s, zero, x);
    let mut neg_ok = true;
    let mut dneg_ok = true;
    'pairs: for x in &s.carrier {
        for y in &s.carrier {
            let (Some(nx), Some(ny)) = (neg(x), neg(y)) else {
                unreachable!("carrier elements of a ring have inverses")
            };
            let xy = s.mul(x, y);
            let a = s.mul(x, ny);
            let b = s.mul(nx, y);
            let c = neg(xy);
            if neg_ok && (Some(a) != c || Some(b) != c) {
                neg_ok = false;
                let mut values = vec![a, b];
                values.extend(c);
                rep.counterexample("negation", vec![x, y], values, "x·(−y) = (−x)·y = −(x·y) fails");
            }
            let d = s.mul(nx, ny);
            if dneg_ok && d != xy {
                dneg_ok = false;
                rep.counterexample("double-negation", vec![x, y], vec![d, xy], "(−x)·(−y) = x·y fails");
            }
            if !neg_ok && !dneg_ok {
                break 'pairs;
            }
        }
    }
    rep.require("negation", Verdict::from_bool(neg_ok));
    rep.require("double-negation", Verdict::from_bool(dneg_ok));
    Ok(rep)
}

fn check_sub_preconditions(sub: &ObjSet, r: &StructureCandidate<'_>) -> Result<()> {
    if sub.is_empty() {
        return Err(NearnessError::Precondition("the subset must be nonempty".into()));
    }
    if !sub.is_subset(&r.carrier) {
        return Err(NearnessError::Precondition("the subset must lie inside the carrier".into()));
    }
    Ok(())
}

/// Subring criterion: given groupoid upper approximations, `S` is a
/// subnearness ring iff `−x ∈ S` for every `x ∈ S`.
pub fn check_subnearness_ring(sub: &ObjSet, r: &StructureCandidate<'_>) -> Result<AxiomReport> {
    check_sub_preconditions(sub, r)?;
    let mul = r.require_mul()?;
    let mut rep = AxiomReport::new("subnearness ring");
    rep.flag("ambient-ring", Verdict::from_bool(check_nearness_ring(r)?.passed()));

    let up = r.upper_of(sub);
    rep.witness("upper", Witness::Set(up.clone()));
    let mut hypothesis = true;
    for (id, t, op) in [("groupoid:+", r.ambient.add, Op::Add), ("groupoid:·", mul, Op::Mul)] {
        match groupoid_violation(&up, t) {
            None => {
                rep.require(id, Verdict::Pass);
            }
            Some((x, y, z)) => {
                hypothesis = false;
                rep.require(id, Verdict::NotApplicable);
                rep.note(id, "the upper approximation of the subset is not a groupoid");
                rep.counterexample(id, vec![x, y], vec![z], format!("x{op}y leaves the upper approximation"));
            }
        }
    }
    if !hypothesis {
        rep.require("negation-closed", Verdict::NotApplicable);
        return Ok(rep);
    }

    let zero = match additive_zero(r) {
        Ok(z) => z,
        Err(e) => {
            rep.require("negation-closed", Verdict::NotApplicable);
            rep.note("negation-closed", e.to_string());
            return Ok(rep);
        }
    };
    let mut ok = true;
    let mut pairs = Vec::new();
    for x in sub {
        match carrier_inverse(r, zero, x) {
            Some(nx) if sub.contains(nx) => pairs.push((x, nx)),
            Some(nx) => {
                ok = false;
                rep.counterexample("negation-closed", vec![x], vec![nx], "−x is not in the subset");
                break;
            }
            None => {
                ok = false;
                rep.counterexample("negation-closed", vec![x], vec![], "x has no additive inverse in the carrier");
                break;
            }
        }
    }
    rep.require("negation-closed", Verdict::from_bool(ok));
    if ok {
        rep.witness("negatives", Witness::Pairs(pairs));
    }

    let cross = check_nearness_ring(&r.with_carrier(sub.clone()))?;
    let cross_ok = cross.passed();
    rep.absorb("cross-check", cross);
    rep.flag("cross-check", Verdict::from_bool(cross_ok));
    if ok && !cross_ok {
        rep.anomalies.push("subring criterion holds but the subset fails the nearness ring axioms".into());
    }
    Ok(rep)
}

pub fn check_ideal(ideal: &ObjSet, r: &StructureCandidate<'_>, side: Side) -> Result<AxiomReport> {
    check_sub_preconditions(ideal, r)?;
    r.require_mul()?;
    let zero = additive_zero(r)?;
    let mut negs = Vec::new();
    for y in ideal {
        let ny = carrier_inverse(r, zero, y).ok_or_else(|| {
            NearnessError::Structural(format!("{} has no additive inverse in the carrier", r.label(y)))
        })?;
        negs.push((y, ny));
    }

    let mut rep = AxiomReport::new(match side {
        Side::Left => "left nearness ideal",
        Side::Right => "right nearness ideal",
        Side::Both => "nearness ideal",
    });
    let up = r.upper_of(ideal);
    rep.witness("upper", Witness::Set(up.clone()));
    rep.witness("negatives", Witness::Pairs(negs.clone()));

    let mut diff_ok = true;
    'outer: for x in ideal {
        for &(y, ny) in &negs {
            let d = r.add(x, ny);
            if !up.contains(d) {
                diff_ok = false;
                rep.counterexample("difference", vec![x, y], vec![d], "x−y escapes the upper approximation of the ideal");
                break 'outer;
            }
        }
    }
    rep.require("difference", Verdict::from_bool(diff_ok));

    for (id, wanted, left) in [("left", side.left(), true), ("right", side.right(), false)] {
        if !wanted {
            continue;
        }
        let mut ok = true;
        'scan: for a in &r.carrier {
            for x in ideal {
                let p = if left { r.mul(a, x) } else { r.mul(x, a) };
                if !up.contains(p) {
                    ok = false;
                    let detail = if left { "r·x escapes the upper approximation of the ideal" } else { "x·r escapes the upper approximation of the ideal" };
                    rep.counterexample(id, vec![a, x], vec![p], detail);
                    break 'scan;
                }
            }
        }
        rep.require(id, Verdict::from_bool(ok));
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionKind {
    Subring,
    Ideal,
}

/// Intersection theorems: if `⋂ N*S_i = N*(⋂ S_i)` then `⋂ S_i` is again a
/// subring (ideal).
pub fn check_intersection_theorem(
    parts: &[ObjSet],
    r: &StructureCandidate<'_>,
    kind: IntersectionKind,
) -> Result<AxiomReport> {
    if parts.is_empty() {
        return Err(NearnessError::Precondition("the family of parts must be nonempty".into()));
    }
    let run = |set: &ObjSet| -> Result<AxiomReport> {
        match kind {
            IntersectionKind::Subring => check_subnearness_ring(set, r),
            IntersectionKind::Ideal => check_ideal(set, r, Side::Both),
        }
    };
    let mut rep = AxiomReport::new(match kind {
        IntersectionKind::Subring => "intersection of subnearness rings",
        IntersectionKind::Ideal => "intersection of nearness ideals",
    });

    let mut inter = parts[0].clone();
    for p in &parts[1..] {
        inter = inter.intersection(p);
    }
    rep.witness("intersection", Witness::Set(inter.clone()));
    if inter.is_empty() {
        rep.require("theorem", Verdict::NotApplicable);
        rep.note("theorem", "empty intersection");
        return Ok(rep);
    }

    let mut parts_ok = true;
    for (i, p) in parts.iter().enumerate() {
        let ok = run(p).map(|r| r.passed()).unwrap_or(false);
        parts_ok &= ok;
        rep.flag(&format!("part[{i}]"), Verdict::from_bool(ok));
    }

    let mut meet = r.upper_of(&parts[0]);
    for p in &parts[1..] {
        meet = meet.intersection(&r.upper_of(p));
    }
    let upper_inter = r.upper_of(&inter);
    let condition = meet == upper_inter;
    rep.witness("meet-of-uppers", Witness::Set(meet));
    rep.witness("upper-of-meet", Witness::Set(upper_inter));
    rep.flag("side-condition", Verdict::from_bool(condition));

    let result = run(&inter)?;
    let result_ok = result.passed();
    rep.absorb("intersection", result);
    if parts_ok && condition {
        rep.require("theorem", Verdict::from_bool(result_ok));
        if !result_ok {
            rep.anomalies.push("hypotheses hold but the intersection fails".into());
        }
    } else {
        rep.require("theorem", Verdict::NotApplicable);
        rep.note("theorem", if parts_ok { "side condition fails" } else { "some part fails its own check" });
    }
    Ok(rep)
}

/// Nearness units and division ring / field classification.
pub fn classify_units(s: &StructureCandidate<'_>) -> Result<AxiomReport> {
    let ring = check_nearness_ring(s)?;
    let mut rep = AxiomReport::new("units");
    let one = match (ring.passed(), ring.witnesses.get("one")) {
        (true, Some(Witness::Element(one))) => *one,
        _ => {
            for id in ["division-ring", "field"] {
                rep.flag(id, Verdict::NotApplicable);
                rep.note(id, "requires a nearness ring with identity");
            }
            rep.witness("units", Witness::Set(ObjSet::new()));
            return Ok(rep);
        }
    };
    rep.witness("one", Witness::Element(one));
    let upper = s.upper();
    let units: ObjSet = s
        .carrier
        .iter()
        .filter(|&x| upper.iter().any(|y| s.mul(y, x) == one) && upper.iter().any(|z| s.mul(x, z) == one))
        .collect();
    rep.witness("units", Witness::Set(units));

    let zero = match ring.witnesses.get("zero") {
        Some(Witness::Element(z)) => *z,
        _ => unreachable!("a passing ring has a unique zero"),
    };
    let mut nonzero = s.carrier.clone();
    nonzero.remove(zero);
    if nonzero.is_empty() {
        for id in ["division-ring", "field"] {
            rep.flag(id, Verdict::NotApplicable);
            rep.note(id, "R \\ {0} is empty");
        }
        return Ok(rep);
    }
    let group = check_near_group(&s.with_carrier(nonzero), Op::Mul)?;
    let division = group.passed();
    let field = division && group.verdict("abelian") == Some(Verdict::Pass);
    rep.absorb("nonzero", group);
    rep.flag("division-ring", Verdict::from_bool(division));
    rep.flag("field", Verdict::from_bool(field));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, OrdinaryRing};
    use crate::space::ApproximationSpace;
    use crate::table::UpperApprox;

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

        fn candidate(&self, ids: &[&str]) -> StructureCandidate<'_> {
            StructureCandidate::new(&self.space, self.set(ids), &self.add, Some(&self.mul)).unwrap()
        }
    }

    fn discrete(ring: &OrdinaryRing) -> ApproximationSpace {
        ring.space(&(0..ring.universe.len()).collect::<Vec<_>>())
    }

    #[test]
    fn example_ring_passes_nr1_to_nr4() {
        let ex = Example::new();
        let r = ex.candidate(&["r", "t", "w"]);
        let rep = check_nearness_ring(&r).unwrap();
        for id in ["NR1", "NR2", "NR3"] {
            assert_eq!(rep.verdict(id), Some(Verdict::Pass), "{id}");
        }
        assert_eq!(rep.verdict("NR4"), Some(Verdict::Pass));
        assert_eq!(rep.verdict("NR5"), Some(Verdict::Fail));
        assert!(rep.passed());
        assert_eq!(rep.witnesses.get("zero"), Some(&Witness::Element(ex.obj("o"))));
        let (r_, t, w) = (ex.obj("r"), ex.obj("t"), ex.obj("w"));
        assert_eq!(rep.witnesses.get("negatives"), Some(&Witness::Pairs(vec![(r_, w), (t, t), (w, r_)])));
    }

    #[test]
    fn whole_universe_is_not_a_near_group_under_addition() {
        let ex = Example::new();
        let all = ex.candidate(&fixtures::EXAMPLE_OBJECTS);
        let rep = check_near_group(&all, Op::Add).unwrap();
        assert_eq!(rep.verdict("NG2"), Some(Verdict::Fail));
        let wanted = (vec![ex.obj("r"), ex.obj("s"), ex.obj("s")], vec![ex.obj("o"), ex.obj("p")]);
        assert!(rep.counterexamples.iter().any(|c| c.axiom == "NG2" && (c.tuple.clone(), c.values.clone()) == wanted));
        assert_eq!(rep.counterexamples.iter().filter(|c| c.axiom == "NG2").count(), 26);
    }

    #[test]
    fn several_identities_are_an_anomaly() {
        // ℤ2 multiplication as the operation, both objects indiscernible:
        // 0 and 1 both fix the carrier {0}.
        let z2 = fixtures::zn(2);
        let space = z2.space(&[0, 0]);
        let c = StructureCandidate::new(&space, ObjSet::singleton(Obj(0)), &z2.mul, None).unwrap();
        let rep = check_near_group(&c, Op::Add).unwrap();
        assert_eq!(rep.verdict("NG3"), Some(Verdict::Anomaly));
        assert_eq!(rep.verdict("NG4"), Some(Verdict::NotApplicable));
        assert!(!rep.passed());
        assert!(!rep.anomalies.is_empty());
    }

    #[test]
    fn example_subring_and_ideal() {
        let ex = Example::new();
        let r = ex.candidate(&["r", "t", "w"]);
        let s = ex.set(&["r", "w"]);
        let sub = check_subnearness_ring(&s, &r).unwrap();
        assert!(sub.passed(), "{sub:?}");
        assert_eq!(sub.verdict("cross-check"), Some(Verdict::Pass));
        for side in [Side::Left, Side::Right, Side::Both] {
            assert!(check_ideal(&s, &r, side).unwrap().passed());
        }
        assert_eq!(r.upper_of(&s), ex.set(&["o", "r", "t", "w"]));
    }

    #[test]
    fn non_negation_closed_subset_fails() {
        let z4 = fixtures::zn(4);
        let space = discrete(&z4);
        let r = StructureCandidate::new(&space, space.universe().all(), &z4.add, Some(&z4.mul)).unwrap();
        let one = ObjSet::from_iter([Obj(0), Obj(1)]);
        let rep = check_subnearness_ring(&one, &r).unwrap();
        assert_eq!(rep.verdict("groupoid:+"), Some(Verdict::NotApplicable));
        assert!(!rep.passed());
        let ideal = check_ideal(&ObjSet::from_iter([Obj(0), Obj(2)]), &r, Side::Both).unwrap();
        assert!(ideal.passed());
        let not_ideal = check_ideal(&ObjSet::from_iter([Obj(0), Obj(1), Obj(3)]), &r, Side::Both).unwrap();
        assert_eq!(not_ideal.verdict("difference"), Some(Verdict::Fail));
    }

    #[test]
    fn ordinary_rings_pass_with_element_properties() {
        for ring in [fixtures::zn(2), fixtures::zn(3), fixtures::zn(4), fixtures::z2xz2()] {
            let space = discrete(&ring);
            let c = StructureCandidate::new(&space, space.universe().all(), &ring.add, Some(&ring.mul)).unwrap();
            let rep = check_nearness_ring(&c).unwrap();
            assert!(rep.passed(), "{}", ring.name);
            assert_eq!(rep.verdict("NR5"), Some(Verdict::Pass));
            assert!(check_element_props(&c).unwrap().passed(), "{}", ring.name);
        }
    }

    #[test]
    fn element_properties_need_zero_in_the_carrier() {
        let ex = Example::new();
        let rep = check_element_props(&ex.candidate(&["r", "t", "w"])).unwrap();
        assert_eq!(rep.verdict("zero-product"), Some(Verdict::NotApplicable));
    }

    #[test]
    fn units_and_fields() {
        let z3 = fixtures::zn(3);
        let space = discrete(&z3);
        let c = StructureCandidate::new(&space, space.universe().all(), &z3.add, Some(&z3.mul)).unwrap();
        let rep = classify_units(&c).unwrap();
        assert_eq!(rep.witnesses.get("units"), Some(&Witness::Set(ObjSet::from_iter([Obj(1), Obj(2)]))));
        assert_eq!(rep.verdict("field"), Some(Verdict::Pass));

        let z4 = fixtures::zn(4);
        let space = discrete(&z4);
        let c = StructureCandidate::new(&space, space.universe().all(), &z4.add, Some(&z4.mul)).unwrap();
        let rep = classify_units(&c).unwrap();
        assert_eq!(rep.witnesses.get("units"), Some(&Witness::Set(ObjSet::from_iter([Obj(1), Obj(3)]))));
        assert_eq!(rep.verdict("division-ring"), Some(Verdict::Fail));

        let ex = Example::new();
        let rep = classify_units(&ex.candidate(&["r", "t", "w"])).unwrap();
        assert_eq!(rep.verdict("field"), Some(Verdict::NotApplicable));
    }

    #[test]
    fn intersection_theorems() {
        let z4 = fixtures::zn(4);
        let space = discrete(&z4);
        let r = StructureCandidate::new(&space, space.universe().all(), &z4.add, Some(&z4.mul)).unwrap();
        let parts = [space.universe().all(), ObjSet::from_iter([Obj(0), Obj(2)])];
        for kind in [IntersectionKind::Subring, IntersectionKind::Ideal] {
            let rep = check_intersection_theorem(&parts, &r, kind).unwrap();
            assert_eq!(rep.verdict("theorem"), Some(Verdict::Pass));
        }
        let disjoint = [ObjSet::singleton(Obj(1)), ObjSet::singleton(Obj(2))];
        let rep = check_intersection_theorem(&disjoint, &r, IntersectionKind::Subring).unwrap();
        assert_eq!(rep.verdict("theorem"), Some(Verdict::NotApplicable));
    }

    #[test]
    fn semigroup_and_closure() {
        let ex = Example::new();
        let r = ex.candidate(&["r", "t", "w"]);
        assert!(check_near_semigroup(&r, Op::Mul).unwrap().passed());
        assert!(closed_in_upper(&r, Op::Add).unwrap().passed());
        let v = ex.candidate(&["v"]);
        let rep = closed_in_upper(&v, Op::Add).unwrap();
        assert!(!rep.passed());
        assert_eq!(ex.space.upper(&ex.set(&["v"])), ex.set(&["p", "s", "v", "x"]));
    }

    #[test]
    fn empty_carrier_is_rejected() {
        let ex = Example::new();
        assert!(matches!(check_nearness_ring(&ex.candidate(&[])), Err(NearnessError::Precondition(_))));
    }
}
