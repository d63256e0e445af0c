//! Nearness ring homomorphisms, kernels and the homomorphism theorems.
//!
//! Domain and codomain structures may live over different universes, so
//! reports name codomain objects in their text and keep object-valued
//! witnesses on the domain side.

use std::collections::BTreeMap;

use crate::error::{NearnessError, Result};
use crate::quotient::{build_quotient_ring, check_quotient_hypothesis, QuotientCandidates, QuotientRing};
use crate::report::{AxiomReport, Verdict, Witness};
use crate::set::{Obj, ObjSet};
use crate::space::ApproximationSpace;
use crate::structures::{additive_zero, check_ideal, check_subnearness_ring, is_groupoid, negate, Side};
use crate::table::{Op, StructureCandidate};

/// A total map from `domain` into `codomain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingTable {
    pub domain: ObjSet,
    pub codomain: ObjSet,
    map: BTreeMap<Obj, Obj>,
}

impl MappingTable {
    pub fn new(domain: ObjSet, codomain: ObjSet, map: BTreeMap<Obj, Obj>) -> Result<Self> {
        if let Some(x) = domain.iter().find(|x| !map.contains_key(x)) {
            return Err(NearnessError::Invalid(format!("map is not defined on domain element #{}", x.0)));
        }
        if let Some((x, _)) = map.iter().find(|(x, _)| !domain.contains(**x)) {
            return Err(NearnessError::Invalid(format!("map assigns #{} outside its domain", x.0)));
        }
        if let Some((x, y)) = map.iter().find(|(_, y)| !codomain.contains(**y)) {
            return Err(NearnessError::Invalid(format!("image #{} of #{} lies outside the codomain", y.0, x.0)));
        }
        Ok(MappingTable { domain, codomain, map })
    }

    pub fn get(&self, x: Obj) -> Option<Obj> {
        self.map.get(&x).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Obj, Obj)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    pub fn image(&self, set: &ObjSet) -> ObjSet {
        set.iter().filter_map(|x| self.get(x)).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image(&self.domain).len() == self.domain.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image(&self.domain) == self.codomain
    }
}

fn show(s: &StructureCandidate<'_>, set: &ObjSet) -> String {
    let names: Vec<String> = set.iter().map(|x| s.label(x)).collect();
    format!("{{{}}}", names.join(", "))
}

fn require_total(m: &MappingTable, r1: &StructureCandidate<'_>) -> Result<()> {
    if let Some(x) = r1.upper().iter().find(|&x| m.get(x).is_none()) {
        return Err(NearnessError::Precondition(format!(
            "the map must be total on the upper approximation of the domain carrier; {} is unmapped",
            r1.label(x)
        )));
    }
    Ok(())
}

/// Checks `m(x∘y) = m(x)∘m(y)` for all pairs of `pairs`, listing every
/// violating pair; unmapped results are input errors.
fn preservation(
    m: &MappingTable,
    r1: &StructureCandidate<'_>,
    r2: &StructureCandidate<'_>,
    pairs: &ObjSet,
    prefix: &str,
    rep: &mut AxiomReport,
) -> Result<bool> {
    let mut all = true;
    for (op, id) in [(Op::Add, "additive"), (Op::Mul, "multiplicative")] {
        let t1 = r1.table(op).ok_or_else(|| NearnessError::Invalid(format!("domain lacks operation `{op}`")))?;
        let t2 = r2.table(op).ok_or_else(|| NearnessError::Invalid(format!("codomain lacks operation `{op}`")))?;
        let id = format!("{prefix}{id}");
        let mut ok = true;
        for x in pairs {
            for y in pairs {
                let xy = t1.apply(x, y);
                let lhs = m.get(xy).ok_or_else(|| {
                    NearnessError::Invalid(format!(
                        "{} {op} {} = {} is not in the domain of the map",
                        r1.label(x),
                        r1.label(y),
                        r1.label(xy)
                    ))
                })?;
                let (mx, my) = (m.get(x).expect("pair in domain"), m.get(y).expect("pair in domain"));
                let rhs = t2.apply(mx, my);
                if lhs != rhs {
                    ok = false;
                    rep.counterexample(
                        &id,
                        vec![x, y],
                        vec![xy],
                        format!(
                            "map({}) = {} but map({}){op}map({}) = {}{op}{} = {}",
                            r1.label(xy),
                            r2.label(lhs),
                            r1.label(x),
                            r1.label(y),
                            r2.label(mx),
                            r2.label(my),
                            r2.label(rhs)
                        ),
                    );
                }
            }
        }
        rep.require(&id, Verdict::from_bool(ok));
        all &= ok;
    }
    Ok(all)
}

/// Preservation laws over carrier pairs plus mono/epi/iso flags. `strict`
/// also binds the laws on every domain pair whose result stays in the domain.
pub fn check_nearness_hom(
    m: &MappingTable,
    r1: &StructureCandidate<'_>,
    r2: &StructureCandidate<'_>,
    strict: bool,
) -> Result<AxiomReport> {
    require_total(m, r1)?;
    let mut rep = AxiomReport::new("nearness ring homomorphism");
    preservation(m, r1, r2, &r1.carrier, "", &mut rep)?;
    if strict {
        for (op, id) in [(Op::Add, "strict:additive"), (Op::Mul, "strict:multiplicative")] {
            let (Some(t1), Some(t2)) = (r1.table(op), r2.table(op)) else {
                continue;
            };
            let mut law = true;
            'scan: for x in &m.domain {
                for y in &m.domain {
                    let Some(lhs) = m.get(t1.apply(x, y)) else { continue };
                    let rhs = t2.apply(m.get(x).expect("in domain"), m.get(y).expect("in domain"));
                    if lhs != rhs {
                        law = false;
                        rep.counterexample(id, vec![x, y], vec![t1.apply(x, y)], format!("map fails {op} on this domain pair"));
                        break 'scan;
                    }
                }
            }
            rep.require(id, Verdict::from_bool(law));
        }
    }
    let (mono, epi) = (m.is_injective(), m.is_surjective());
    rep.flag("mono", Verdict::from_bool(mono));
    rep.flag("epi", Verdict::from_bool(epi));
    rep.flag("iso", Verdict::from_bool(mono && epi));
    rep.witness("image", Witness::Text(show(r2, &m.image(&m.domain))));
    Ok(rep)
}

/// `Ker m = {x ∈ R₁ | m(x) = 0_{R₂}}`.
pub fn kernel(m: &MappingTable, r1: &StructureCandidate<'_>, r2: &StructureCandidate<'_>) -> Result<ObjSet> {
    let zero = additive_zero(r2)?;
    Ok(r1.carrier.iter().filter(|&x| m.get(x) == Some(zero)).collect())
}

/// `m(0) = 0` and `m(−x) = −m(x)`.
pub fn check_hom_properties(
    m: &MappingTable,
    r1: &StructureCandidate<'_>,
    r2: &StructureCandidate<'_>,
) -> Result<AxiomReport> {
    let mut rep = AxiomReport::new("homomorphism properties");
    let zeros = (additive_zero(r1), additive_zero(r2));
    let (z1, z2) = match zeros {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            for id in ["zero", "negation"] {
                rep.require(id, Verdict::NotApplicable);
                rep.note(id, e.to_string());
            }
            return Ok(rep);
        }
    };
    rep.witness("zero", Witness::Element(z1));
    match m.get(z1) {
        Some(mz) if mz == z2 => {
            rep.require("zero", Verdict::Pass);
        }
        Some(mz) => {
            rep.require("zero", Verdict::Fail);
            rep.counterexample("zero", vec![z1], vec![], format!("map(0) = {} but 0 = {}", r2.label(mz), r2.label(z2)));
        }
        None => {
            rep.require("zero", Verdict::Fail);
            rep.counterexample("zero", vec![z1], vec![], "0 of the domain is unmapped");
        }
    }

    let mut ok = true;
    for x in &r1.carrier {
        let lhs = negate(r1, z1, x).and_then(|nx| m.get(nx));
        let rhs = m.get(x).and_then(|mx| negate(r2, z2, mx));
        if lhs.is_none() || lhs != rhs {
            ok = false;
            let name = |o: Option<Obj>| o.map(|v| r2.label(v)).unwrap_or_else(|| "undefined".into());
            rep.counterexample("negation", vec![x], vec![], format!("map(−x) = {} but −map(x) = {}", name(lhs), name(rhs)));
            break;
        }
    }
    rep.require("negation", Verdict::from_bool(ok));
    Ok(rep)
}

/// If `m(N*S) = N*m(S)` then `m(S)` is a subnearness ring of `R₂`.
pub fn check_image_subring(
    m: &MappingTable,
    sub: &ObjSet,
    r1: &StructureCandidate<'_>,
    r2: &StructureCandidate<'_>,
) -> Result<AxiomReport> {
    let mut rep = AxiomReport::new("image of a subnearness ring");
    let image = m.image(sub);
    rep.witness("image", Witness::Text(show(r2, &image)));
    let source = check_subnearness_ring(sub, r1)?;
    let source_ok = source.passed();
    rep.flag("source-subring", Verdict::from_bool(source_ok));

    let image_of_upper = m.image(&r1.upper_of(sub));
    let upper_of_image = r2.upper_of(&image);
    let condition = image_of_upper == upper_of_image;
    rep.flag("condition", Verdict::from_bool(condition));
    if !source_ok || !condition {
        rep.require("image-subring", Verdict::NotApplicable);
        rep.note(
            "image-subring",
            if !source_ok {
                "S is not a subnearness ring of the domain".to_string()
            } else {
                format!(
                    "map(N*S) = {} differs from N*map(S) = {}",
                    show(r2, &image_of_upper),
                    show(r2, &upper_of_image)
                )
            },
        );
        return Ok(rep);
    }
    let result = check_subnearness_ring(&image, r2)?;
    let ok = result.passed();
    rep.absorb("image", result);
    rep.require("image-subring", Verdict::from_bool(ok));
    if !ok {
        rep.anomalies.push("hypotheses hold but the image is not a subnearness ring".into());
    }

    let commutative = |s: &StructureCandidate<'_>, set: &ObjSet| {
        set.iter().all(|x| set.iter().all(|y| s.mul(x, y) == s.mul(y, x)))
    };
    if commutative(r1, sub) {
        let c = commutative(r2, &image);
        rep.flag("commutative", Verdict::from_bool(c));
        if !c {
            rep.anomalies.push("S is commutative but its image is not".into());
        }
    }
    Ok(rep)
}

/// A nonempty kernel whose upper approximation is a groupoid is an ideal.
pub fn check_kernel_ideal(
    m: &MappingTable,
    r1: &StructureCandidate<'_>,
    r2: &StructureCandidate<'_>,
) -> Result<AxiomReport> {
    let mut rep = AxiomReport::new("kernel is a nearness ideal");
    let ker = kernel(m, r1, r2)?;
    rep.witness("kernel", Witness::Set(ker.clone()));
    if ker.is_empty() {
        rep.require("kernel-ideal", Verdict::NotApplicable);
        rep.note("kernel-ideal", "the kernel is empty");
        return Ok(rep);
    }
    let up = r1.upper_of(&ker);
    let groupoid = is_groupoid(&up, r1.ambient.add) && is_groupoid(&up, r1.require_mul()?);
    if !groupoid {
        rep.require("kernel-ideal", Verdict::NotApplicable);
        rep.note("kernel-ideal", "the upper approximation of the kernel is not a groupoid under both operations");
        return Ok(rep);
    }
    let ideal = check_ideal(&ker, r1, Side::Both)?;
    let ok = ideal.passed();
    rep.absorb("ideal", ideal);
    rep.require("kernel-ideal", Verdict::from_bool(ok));
    if !ok {
        rep.anomalies.push("the kernel fails the ideal check although its hypotheses hold".into());
    }
    Ok(rep)
}

/// `Π(x) = x+S` on `N*R`, into the quotient's coset level.
pub fn natural_hom(q: &QuotientRing, r: &StructureCandidate<'_>) -> Result<MappingTable> {
    let domain = r.upper();
    let codomain = q.structure().upper();
    if let Some(x) = domain.iter().find(|&x| !codomain.contains(x)) {
        return Err(NearnessError::Precondition(format!(
            "{} lies outside the upper approximation of the quotient",
            q.structure().label(x)
        )));
    }
    MappingTable::new(domain.clone(), codomain, domain.iter().map(|x| (x, x)).collect())
}

/// Laws restricted to pairs of `sub`; also flags whether results stay in `sub`.
pub fn check_restricted_hom(
    m: &MappingTable,
    sub: &ObjSet,
    r1: &StructureCandidate<'_>,
    r2: &StructureCandidate<'_>,
) -> Result<AxiomReport> {
    if sub.is_empty() || !sub.is_subset(&r1.carrier) {
        return Err(NearnessError::Precondition("S must be a nonempty subset of the domain carrier".into()));
    }
    let mut rep = AxiomReport::new("restricted nearness homomorphism");
    preservation(m, r1, r2, sub, "", &mut rep)?;
    let mul = r1.require_mul()?;
    let inside = sub.iter().all(|x| sub.iter().all(|y| sub.contains(r1.add(x, y)) && sub.contains(mul.apply(x, y))));
    rep.flag("results-in-S", Verdict::from_bool(inside));
    Ok(rep)
}

/// Result of [`first_iso_check`]: the report plus the constructed quotient
/// and induced map when every hypothesis held.
#[derive(Clone, Debug)]
pub struct FirstIso {
    pub report: AxiomReport,
    pub kernel: ObjSet,
    pub quotient: Option<QuotientRing>,
    pub eta: Option<MappingTable>,
}

/// `R₁/_wKer χ ≅ χ(R₁)` via the induced map η.
pub fn first_iso_check(
    space1: &ApproximationSpace,
    chi: &MappingTable,
    r1: &StructureCandidate<'_>,
    r2: &StructureCandidate<'_>,
) -> Result<FirstIso> {
    let mut rep = AxiomReport::new("first isomorphism theorem");
    let required = ["well-defined", "restricted-hom"];
    let not_applicable = |mut rep: AxiomReport, kernel: ObjSet, why: String| {
        for id in required {
            rep.require(id, Verdict::NotApplicable);
            rep.note(id, why.clone());
        }
        rep.flag("induced-isomorphism", Verdict::NotApplicable);
        FirstIso { report: rep, kernel, quotient: None, eta: None }
    };

    let hom = check_nearness_hom(chi, r1, r2, false)?;
    let hom_ok = hom.passed();
    rep.absorb("hom", hom);
    rep.flag("hom", Verdict::from_bool(hom_ok));
    if !hom_ok {
        return Ok(not_applicable(rep, ObjSet::new(), "χ is not a nearness homomorphism".into()));
    }

    let ker = match kernel(chi, r1, r2) {
        Ok(k) => k,
        Err(e) => return Ok(not_applicable(rep, ObjSet::new(), e.to_string())),
    };
    rep.witness("kernel", Witness::Set(ker.clone()));
    if ker.is_empty() {
        return Ok(not_applicable(rep, ker, "the kernel is empty".into()));
    }
    let up = r1.upper_of(&ker);
    let mul1 = r1.require_mul()?;
    if !(is_groupoid(&up, r1.ambient.add) && is_groupoid(&up, mul1)) {
        return Ok(not_applicable(rep, ker, "the upper approximation of the kernel is not a groupoid".into()));
    }
    let hypothesis = check_quotient_hypothesis(space1, r1, &ker, QuotientCandidates::Cosets)?;
    let hyp_ok = hypothesis.passed();
    rep.absorb("quotient-hypothesis", hypothesis);
    if !hyp_ok {
        return Ok(not_applicable(rep, ker, "the quotient hypothesis fails for the kernel".into()));
    }

    let image = chi.image(&r1.carrier);
    let image_of_upper = chi.image(&r1.upper());
    let upper_of_image = r2.upper_of(&image);
    rep.witness("image", Witness::Text(show(r2, &image)));
    if image_of_upper != upper_of_image {
        return Ok(not_applicable(
            rep,
            ker,
            format!(
                "N*χ(R₁) = {} differs from χ(N*R₁) = {}",
                show(r2, &upper_of_image),
                show(r2, &image_of_upper)
            ),
        ));
    }
    let target = r2.with_carrier(image.clone());
    let e = match additive_zero(&target) {
        Ok(e) => e,
        Err(err) => return Ok(not_applicable(rep, ker, format!("χ(R₁) has no unique identity: {err}"))),
    };

    let q = match build_quotient_ring(space1, r1, &ker, "Ker") {
        Ok(q) => q,
        Err(err) => return Ok(not_applicable(rep, ker, err.to_string())),
    };
    let quotient_ok = q.report.passed();
    rep.flag("quotient-ring", Verdict::from_bool(quotient_ok));

    // η on (N*R₁)/∼ by the coset rule, constant e elsewhere.
    let extended = q.extended.representatives();
    let domain = space1.universe().all();
    let map: BTreeMap<Obj, Obj> = domain
        .iter()
        .map(|x| (x, if extended.contains(x) { chi.get(x).expect("total on N*R₁") } else { e }))
        .collect();
    let mut codomain = upper_of_image.clone();
    codomain.insert(e);
    let eta = MappingTable::new(domain, codomain, map)?;

    let mut well_defined = true;
    for (_, reps) in q.extended.shared_member_sets() {
        let images: ObjSet = reps.iter().filter_map(|x| eta.get(x)).collect();
        if images.len() > 1 {
            well_defined = false;
            rep.counterexample("well-defined", reps.iter().collect(), vec![], format!("equal cosets map to {}", show(r2, &images)));
            break;
        }
    }
    rep.require("well-defined", Verdict::from_bool(well_defined));

    let qs = q.structure();
    let restricted = check_restricted_hom(&eta, &qs.carrier, &qs, &target)?;
    let restricted_ok = restricted.passed();
    rep.absorb("restricted", restricted);
    rep.require("restricted-hom", Verdict::from_bool(restricted_ok));

    // η as a map on member-set classes of R₁/∼ onto χ(R₁).
    let mut classes: BTreeMap<ObjSet, Obj> = BTreeMap::new();
    let mut consistent = true;
    for c in &q.family.cosets {
        let img = eta.get(c.representative).expect("total");
        if *classes.entry(c.members.clone()).or_insert(img) != img {
            consistent = false;
        }
    }
    let images: ObjSet = classes.values().copied().collect();
    let bijective = consistent && images.len() == classes.len() && images == image;
    rep.flag("induced-isomorphism", Verdict::from_bool(bijective));
    rep.witness("classes", Witness::Sets(classes.keys().cloned().collect()));

    Ok(FirstIso { report: rep, kernel: ker, quotient: Some(q), eta: Some(eta) })
}
