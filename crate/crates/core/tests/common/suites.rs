//! Suites shared by several test targets: they drive the library and
//! compare against the oracle.

use nearness::fixtures::{z2xz2, zn};
use nearness::report::AxiomReport;
use nearness::structures::{
    check_ideal, check_near_group, check_near_semigroup, check_nearness_ring, check_subnearness_ring, Side,
};
use nearness::{Op, StructureCandidate};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

/// Every ring on the additive group ℤ_n: multiplication is fixed by 1·1.
pub fn cyclic_rings(n: usize) -> Vec<(Table, Table)> {
    let add: Table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    (0..n)
        .map(|c| (add.clone(), (0..n).map(|a| (0..n).map(|b| (a * b * c) % n).collect()).collect()))
        .filter(|(a, m)| is_ring(a, m))
        .collect()
}

/// Every ring on ℤ₂ × ℤ₂: multiplication is fixed by the four products of
/// the basis vectors 1 and 2.
pub fn klein_rings() -> Vec<(Table, Table)> {
    let add: Table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    let mut out = Vec::new();
    for code in 0..256usize {
        let c = |i: usize, j: usize| (code >> (2 * (2 * i + j))) & 3;
        let mul: Table = (0..4)
            .map(|x| {
                (0..4)
                    .map(|y| {
                        let mut p = 0;
                        for i in 0..2 {
                            for j in 0..2 {
                                if (x >> i) & 1 == 1 && (y >> j) & 1 == 1 {
                                    p ^= c(i, j);
                                }
                            }
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        if is_ring(&add, &mul) {
            out.push((add.clone(), mul));
        }
    }
    out
}

pub fn rings_up_to_order_four() -> Vec<(String, Table, Table)> {
    let mut out = Vec::new();
    for r in [zn(2), zn(3), zn(4), z2xz2()] {
        out.push((r.name.clone(), from_op_table(&r.add), from_op_table(&r.mul)));
    }
    for n in 1..=4 {
        for (i, (a, m)) in cyclic_rings(n).into_iter().enumerate() {
            out.push((format!("Z{n} with 1·1 = {i}"), a, m));
        }
    }
    for (i, (a, m)) in klein_rings().into_iter().enumerate() {
        out.push((format!("Z2xZ2 structure {i}"), a, m));
    }
    out
}

/// Runs the lemma over every ring and 20 random probe assignments each.
/// Returns (rings, failures).
pub fn lemma_failures(seed: u64) -> (usize, Vec<String>) {
    let rings = rings_up_to_order_four();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for (name, a, m) in &rings {
        assert!(is_ring(a, m), "{name} is not a ring");
        let n = a.len();
        for _ in 0..20 {
            let (features, r) = random_features(&mut rng, n);
            let p = Plain { n, features, r, add: a.clone(), mul: m.clone(), carrier: (0..n).collect() };
            let space = p.space();
            let (add, mul) = p.tables();
            let s = StructureCandidate::new(&space, objset(&p.carrier), &add, Some(&mul)).unwrap();
            if !check_nearness_ring(&s).unwrap().passed() {
                failures.push(format!("{name} under {:?} r={}", p.features, p.r));
            }
        }
    }
    (rings.len(), failures)
}

pub fn top_level(rep: &AxiomReport) -> Verdicts {
    rep.checks.iter().filter(|(id, _)| !id.contains('/')).map(|(id, c)| (id.clone(), c.verdict.label())).collect()
}

/// Every verdict of one candidate, compared with the oracle. Returns the
/// number of verdicts compared.
pub fn compare(p: &Plain, rng: &mut ChaCha8Rng) -> usize {
    let space = p.space();
    let (add, mul) = p.tables();
    let s = StructureCandidate::new(&space, objset(&p.carrier), &add, Some(&mul)).unwrap();
    let mut compared = 0;
    let mut check = |what: &str, got: Verdicts, want: Verdicts| {
        assert_eq!(got, want, "{what} on {p:?}");
        compared += want.len();
    };
    check("near group +", top_level(&check_near_group(&s, Op::Add).unwrap()), near_group(p, &p.add));
    check("near group ·", top_level(&check_near_group(&s, Op::Mul).unwrap()), near_group(p, &p.mul));
    check("near semigroup ·", top_level(&check_near_semigroup(&s, Op::Mul).unwrap()), near_semigroup(p, &p.mul));
    check("nearness ring", top_level(&check_nearness_ring(&s).unwrap()), nearness_ring(p));

    let sub = random_subset(rng, &p.carrier);
    check("subring", top_level(&check_subnearness_ring(&objset(&sub), &s).unwrap()), subring(p, &sub));
    for (side, l, r) in [(Side::Left, true, false), (Side::Right, false, true), (Side::Both, true, true)] {
        match (check_ideal(&objset(&sub), &s, side), ideal(p, &sub, l, r)) {
            (Ok(rep), Some(want)) => check("ideal", top_level(&rep), want),
            (Err(_), None) => check("ideal refusal", Verdicts::new(), Verdicts::new()),
            (got, want) => panic!("ideal {side:?} on {p:?} sub {sub:?}: {got:?} vs {want:?}"),
        }
    }
    compared
}

/// 200 random candidates over universes of size at most 5. Returns the
/// number of verdicts compared.
pub fn oracle_agreement(seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..200).map(|_| {
        let p = random_plain(&mut rng, 5);
        compare(&p, &mut rng)
    }).sum()
}
