mod common;

use common::suites::*;
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn two_hundred_random_candidates_match_the_oracle() {
    assert!(oracle_agreement(2024) > 200 * 20);
}

#[test]
fn agreement_holds_for_other_seeds() {
    for seed in [1, 2, 3] {
        oracle_agreement(seed);
    }
}

#[test]
fn oracle_sees_both_outcomes() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut pass = 0;
    let mut fail = 0;
    for _ in 0..200 {
        let p = random_plain(&mut rng, 5);
        let r = nearness_ring(&p);
        if ["NR1", "NR2", "NR3"].iter().all(|k| r[*k] == "pass") {
            pass += 1;
        } else {
            fail += 1;
        }
        let _ = random_subset(&mut rng, &p.carrier);
    }
    assert!(pass > 10 && fail > 10, "pass {pass} fail {fail}");
}
