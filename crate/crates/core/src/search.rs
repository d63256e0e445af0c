//! Small-structure search: operation tables and one-probe feature tables over
//! `N` objects where a proper subset forms a nearness ring although the whole
//! universe is not an ordinary ring.
//!
//! Feature tables are enumerated up to relabelling of values, i.e. as set
//! partitions of the universe. Exhaustive ring counting walks a decision tree
//! over table entries: a lazily evaluated copy of the ring axioms asks for the
//! next entry it needs, and every decided leaf stands for all completions of
//! its unassigned entries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{NearnessError, Result};
use crate::report::Verdict;
use crate::set::{Obj, ObjSet, Universe};
use crate::space::{ApproximationSpace, FeatureSystem, Probe};
use crate::structures::{check_near_group, check_nearness_ring};
use crate::table::{Op, OpTable, StructureCandidate, UpperApprox};

pub const EXHAUSTIVE_MAX: usize = 3;
pub const RANDOM_MAX: usize = 5;
pub const DEFAULT_SAMPLES: usize = 1000;
const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Random { samples: usize },
    Exhaustive,
}

/// Object ids used by generated universes.
pub fn object_names(n: usize) -> Vec<String> {
    ["a", "b", "c", "d", "e"].iter().take(n).map(|s| s.to_string()).collect()
}

/// Set partitions of `0..n` as restricted growth strings, in lexicographic
/// order.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for v in 0..=limit {
            prefix.push(v);
            grow(prefix, max.max(v), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        grow(&mut Vec::new(), 0, n, &mut out);
    }
    out
}

/// One-probe space whose indiscernibility classes are the blocks of `rgs`.
pub fn space_for(rgs: &[usize]) -> ApproximationSpace {
    let universe = Universe::new(object_names(rgs.len())).expect("distinct ids");
    let probe = Probe { name: "phi".into(), values: rgs.iter().map(|v| format!("f{v}")).collect() };
    ApproximationSpace::new(FeatureSystem::new(universe, vec![probe], 1).expect("valid system"))
}

/// Every table over `n` objects, in lexicographic order of cells.
pub fn all_tables(n: usize) -> impl Iterator<Item = OpTable> {
    let cells = n * n;
    let total = (n as u64).pow(cells as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![Obj(0); cells];
        for c in v.iter_mut().rev() {
            *c = Obj((code % n as u64) as u32);
            code /= n as u64;
        }
        OpTable::new(n, v).expect("in range")
    })
}

/// Classical ring axioms on the whole universe.
pub fn is_ordinary_ring(add: &OpTable, mul: &OpTable) -> bool {
    let n = add.size() as u32;
    let all = || (0..n).map(Obj);
    let a = |x, y| add.apply(x, y);
    let m = |x, y| mul.apply(x, y);
    let Some(zero) = all().find(|&e| all().all(|x| a(x, e) == x && a(e, x) == x)) else {
        return false;
    };
    all().all(|x| all().any(|y| a(x, y) == zero))
        && all().all(|x| all().all(|y| a(x, y) == a(y, x)))
        && all().all(|x| {
            all().all(|y| {
                all().all(|z| {
                    a(x, a(y, z)) == a(a(x, y), z)
                        && m(x, m(y, z)) == m(m(x, y), z)
                        && m(x, a(y, z)) == a(m(x, y), m(x, z))
                        && m(a(x, y), z) == a(m(x, z), m(y, z))
                })
            })
        })
}

/// Proper nonempty subsets of `0..n` in ascending bitmask order.
fn proper_carriers(n: usize) -> Vec<ObjSet> {
    (1..(1u32 << n) - 1).map(|mask| (0..n as u32).filter(|i| mask >> i & 1 == 1).map(Obj).collect()).collect()
}

fn nonempty_carriers(n: usize) -> Vec<ObjSet> {
    (1..1u32 << n).map(|mask| (0..n as u32).filter(|i| mask >> i & 1 == 1).map(Obj).collect()).collect()
}

const UNSET: u8 = u8::MAX;

/// Two tables with possibly unassigned cells: `add` then `mul`, row-major.
#[derive(Clone, Debug)]
pub struct PartialTables {
    n: usize,
    cells: Vec<u8>,
}

type Lazy<T> = std::result::Result<T, usize>;

impl PartialTables {
    pub fn empty(n: usize) -> Self {
        PartialTables { n, cells: vec![UNSET; 2 * n * n] }
    }

    pub fn full(add: &OpTable, mul: &OpTable) -> Self {
        let cells = add.cells().iter().chain(mul.cells()).map(|o| o.0 as u8).collect();
        PartialTables { n: add.size(), cells }
    }

    fn get(&self, i: usize) -> Lazy<usize> {
        match self.cells[i] {
            UNSET => Err(i),
            v => Ok(v as usize),
        }
    }

    fn add(&self, x: usize, y: usize) -> Lazy<usize> {
        self.get(x * self.n + y)
    }

    fn mul(&self, x: usize, y: usize) -> Lazy<usize> {
        self.get(self.n * self.n + x * self.n + y)
    }

    fn free(&self) -> u32 {
        self.cells.iter().filter(|&&c| c == UNSET).count() as u32
    }

    /// Tables with unassigned cells filled by the first object.
    pub fn completed(&self) -> (OpTable, OpTable) {
        let nn = self.n * self.n;
        let cell = |c: u8| Obj(if c == UNSET { 0 } else { c as u32 });
        let add = self.cells[..nn].iter().map(|&c| cell(c)).collect();
        let mul = self.cells[nn..].iter().map(|&c| cell(c)).collect();
        (OpTable::new(self.n, add).expect("in range"), OpTable::new(self.n, mul).expect("in range"))
    }
}

/// The nearness ring verdict of `carrier` evaluated lazily: `Err(i)` asks for
/// cell `i`. Agrees with [`check_nearness_ring`] on complete tables.
pub fn lazy_ring_verdict(p: &PartialTables, carrier: &[usize], upper: u32) -> Lazy<bool> {
    let inu = |v: usize| upper >> v & 1 == 1;
    let n = p.n;
    for &x in carrier {
        for &y in carrier {
            if !inu(p.add(x, y)?) || !inu(p.mul(x, y)?) {
                return Ok(false);
            }
        }
    }
    for &x in carrier {
        for &y in carrier {
            if p.add(x, y)? != p.add(y, x)? {
                return Ok(false);
            }
        }
    }
    for &x in carrier {
        for &y in carrier {
            let xy = p.add(x, y)?;
            for &z in carrier {
                let yz = p.add(y, z)?;
                if p.add(x, yz)? != p.add(xy, z)? {
                    return Ok(false);
                }
            }
        }
    }
    let mut identity = None;
    let mut count = 0;
    for e in (0..n).filter(|&e| inu(e)) {
        let mut acts = true;
        for &x in carrier {
            if p.add(x, e)? != x || p.add(e, x)? != x {
                acts = false;
                break;
            }
        }
        if acts {
            count += 1;
            identity = Some(e);
        }
    }
    let Some(e) = identity.filter(|_| count == 1) else {
        return Ok(false);
    };
    for &x in carrier {
        let mut found = false;
        for &y in carrier {
            if p.add(x, y)? == e && p.add(y, x)? == e {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    for &x in carrier {
        for &y in carrier {
            let xy = p.mul(x, y)?;
            for &z in carrier {
                let yz = p.mul(y, z)?;
                if p.mul(x, yz)? != p.mul(xy, z)? {
                    return Ok(false);
                }
            }
        }
    }
    for &x in carrier {
        for &y in carrier {
            for &z in carrier {
                let yz = p.add(y, z)?;
                let lhs = p.mul(x, yz)?;
                let (xy, xz) = (p.mul(x, y)?, p.mul(x, z)?);
                let rhs = p.add(xy, xz)?;
                if lhs != rhs || ![yz, lhs, xy, xz, rhs].into_iter().all(inu) {
                    return Ok(false);
                }
                let s = p.add(x, y)?;
                let lhs = p.mul(s, z)?;
                let (xz, yz) = (p.mul(x, z)?, p.mul(y, z)?);
                let rhs = p.add(xz, yz)?;
                if lhs != rhs || ![s, lhs, xz, yz, rhs].into_iter().all(inu) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Walks the decision tree; `on_pass` receives every passing leaf with the
/// number of complete table pairs it stands for.
pub fn explore(
    p: &mut PartialTables,
    verdict: &dyn Fn(&PartialTables) -> Lazy<bool>,
    on_pass: &mut dyn FnMut(&PartialTables, u64),
) {
    match verdict(p) {
        Ok(true) => on_pass(p, (p.n as u64).pow(p.free())),
        Ok(false) => {}
        Err(i) => {
            for v in 0..p.n {
                p.cells[i] = v as u8;
                explore(p, verdict, on_pass);
            }
            p.cells[i] = UNSET;
        }
    }
}

fn mask(set: &ObjSet) -> u32 {
    set.iter().fold(0, |m, x| m | 1 << x.0)
}

fn indices(set: &ObjSet) -> Vec<usize> {
    set.iter().map(|x| x.index()).collect()
}

/// Number of table pairs over `rgs` for which `carrier` passes the nearness
/// ring check.
pub fn count_ring_tables(rgs: &[usize], carrier: &ObjSet) -> u64 {
    let space = space_for(rgs);
    let (c, u) = (indices(carrier), mask(&space.upper(carrier)));
    let mut total = 0;
    explore(&mut PartialTables::empty(rgs.len()), &|p| lazy_ring_verdict(p, &c, u), &mut |_, w| total += w);
    total
}

/// All ordinary rings on `0..n` (labelled).
pub fn ordinary_rings(n: usize) -> Vec<(OpTable, OpTable)> {
    let groups: Vec<OpTable> = all_tables(n).filter(is_abelian_group).collect();
    let mut out = Vec::new();
    for add in &groups {
        for mul in all_tables(n) {
            if is_ordinary_ring(add, &mul) {
                out.push((add.clone(), mul));
            }
        }
    }
    out
}

fn is_abelian_group(add: &OpTable) -> bool {
    let n = add.size() as u32;
    let all = || (0..n).map(Obj);
    let a = |x, y| add.apply(x, y);
    let Some(zero) = all().find(|&e| all().all(|x| a(x, e) == x && a(e, x) == x)) else {
        return false;
    };
    all().all(|x| all().any(|y| a(x, y) == zero))
        && all().all(|x| all().all(|y| a(x, y) == a(y, x) && all().all(|z| a(x, a(y, z)) == a(a(x, y), z))))
}

/// A near group found by enumeration.
#[derive(Clone, Debug)]
pub struct NearGroupHit {
    pub features: Vec<usize>,
    pub carrier: ObjSet,
    pub upper: ObjSet,
    pub add: OpTable,
    pub identity: Obj,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearGroupTally {
    pub checked: u64,
    pub found: u64,
    /// Candidates rejected only because several elements act as identity.
    pub several_identities: u64,
}

/// Runs the near group checker on every table, feature partition and
/// nonempty carrier over `n` objects.
pub fn for_each_near_group(n: usize, mut f: impl FnMut(&NearGroupHit)) -> Result<NearGroupTally> {
    if n == 0 || n > EXHAUSTIVE_MAX {
        return Err(NearnessError::SearchTooLarge { size: n, bound: EXHAUSTIVE_MAX, mode: "exhaustive" });
    }
    let mut tally = NearGroupTally::default();
    let carriers = nonempty_carriers(n);
    for rgs in set_partitions(n) {
        let space = space_for(&rgs);
        let uppers: Vec<ObjSet> = carriers.iter().map(|c| space.upper(c)).collect();
        for add in all_tables(n) {
            for (carrier, upper) in carriers.iter().zip(&uppers) {
                let s = StructureCandidate::new(&space, carrier.clone(), &add, None)?;
                let rep = check_near_group(&s, Op::Add)?;
                tally.checked += 1;
                if rep.passed() {
                    tally.found += 1;
                    let identity = match rep.witnesses.get("identity") {
                        Some(crate::report::Witness::Element(e)) => *e,
                        _ => unreachable!("a passing near group has an identity"),
                    };
                    f(&NearGroupHit { features: rgs.clone(), carrier: carrier.clone(), upper: upper.clone(), add: add.clone(), identity });
                } else if rep.verdict("NG3") == Some(Verdict::Anomaly) {
                    tally.several_identities += 1;
                }
            }
        }
    }
    Ok(tally)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingTally {
    pub features: Vec<usize>,
    pub carrier: Vec<String>,
    /// Table pairs for which the carrier is a nearness ring.
    pub passing: u64,
    /// Of those, pairs that make the whole universe an ordinary ring.
    pub ordinary: u64,
    pub found: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundStructure {
    pub features: Vec<String>,
    pub carrier: Vec<String>,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub size: usize,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub feature_assignments: usize,
    /// Table pairs covered per feature assignment (exhaustive) or sampled.
    pub table_pairs: u64,
    pub found: u64,
    pub near_groups: NearGroupTally,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tallies: Vec<RingTally>,
    pub examples: Vec<FoundStructure>,
}

fn render_table(t: &OpTable, names: &[String]) -> Vec<Vec<String>> {
    (0..t.size() as u32).map(|a| t.row(Obj(a)).iter().map(|o| names[o.index()].clone()).collect()).collect()
}

fn found_structure(rgs: &[usize], carrier: &ObjSet, add: &OpTable, mul: &OpTable) -> FoundStructure {
    let names = object_names(rgs.len());
    FoundStructure {
        features: rgs.iter().map(|v| format!("f{v}")).collect(),
        carrier: carrier.iter().map(|x| names[x.index()].clone()).collect(),
        add: render_table(add, &names),
        mul: render_table(mul, &names),
    }
}

pub fn search_structures(size: usize, seed: u64, mode: SearchMode) -> Result<SearchSummary> {
    match mode {
        SearchMode::Exhaustive => exhaustive(size),
        SearchMode::Random { samples } => random(size, seed, samples),
    }
}

fn exhaustive(n: usize) -> Result<SearchSummary> {
    if n == 0 || n > EXHAUSTIVE_MAX {
        return Err(NearnessError::SearchTooLarge { size: n, bound: EXHAUSTIVE_MAX, mode: "exhaustive" });
    }
    let partitions = set_partitions(n);
    let rings = ordinary_rings(n);
    let names = object_names(n);
    let mut tallies = Vec::new();
    let mut examples = Vec::new();
    for rgs in &partitions {
        let space = space_for(rgs);
        for carrier in proper_carriers(n) {
            let (c, u) = (indices(&carrier), mask(&space.upper(&carrier)));
            let mut passing = 0;
            explore(&mut PartialTables::empty(n), &|p| lazy_ring_verdict(p, &c, u), &mut |p, w| {
                passing += w;
                if examples.len() < MAX_EXAMPLES {
                    let (add, mul) = p.completed();
                    if !is_ordinary_ring(&add, &mul) {
                        examples.push(found_structure(rgs, &carrier, &add, &mul));
                    }
                }
            });
            let mut ordinary = 0;
            for (add, mul) in &rings {
                let s = StructureCandidate::new(&space, carrier.clone(), add, Some(mul))?;
                if check_nearness_ring(&s)?.passed() {
                    ordinary += 1;
                }
            }
            tallies.push(RingTally {
                features: rgs.clone(),
                carrier: carrier.iter().map(|x| names[x.index()].clone()).collect(),
                passing,
                ordinary,
                found: passing - ordinary,
            });
        }
    }
    let near_groups = for_each_near_group(n, |_| {})?;
    Ok(SearchSummary {
        size: n,
        mode: "exhaustive".into(),
        seed: None,
        samples: None,
        feature_assignments: partitions.len(),
        table_pairs: (n as u64).pow(2 * (n * n) as u32),
        found: tallies.iter().map(|t| t.found).sum(),
        near_groups,
        tallies,
        examples,
    })
}

fn random_table(rng: &mut ChaCha8Rng, n: usize) -> OpTable {
    let cells = (0..n * n).map(|_| Obj(rng.gen_range(0..n as u32))).collect();
    OpTable::new(n, cells).expect("in range")
}

/// Relabels values in order of first appearance.
fn normalize(values: &[usize]) -> Vec<usize> {
    let mut seen: Vec<usize> = Vec::new();
    values
        .iter()
        .map(|v| match seen.iter().position(|s| s == v) {
            Some(i) => i,
            None => {
                seen.push(*v);
                seen.len() - 1
            }
        })
        .collect()
}

fn random(n: usize, seed: u64, samples: usize) -> Result<SearchSummary> {
    if n == 0 || n > RANDOM_MAX {
        return Err(NearnessError::SearchTooLarge { size: n, bound: RANDOM_MAX, mode: "random" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let carriers = proper_carriers(n);
    let mut found = 0;
    let mut examples = Vec::new();
    let mut near_groups = NearGroupTally::default();
    for _ in 0..samples {
        let raw: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        let rgs = normalize(&raw);
        let space = space_for(&rgs);
        let (add, mul) = (random_table(&mut rng, n), random_table(&mut rng, n));
        let ordinary = is_ordinary_ring(&add, &mul);
        for carrier in &carriers {
            let s = StructureCandidate::new(&space, carrier.clone(), &add, Some(&mul))?;
            let group = check_near_group(&s, Op::Add)?;
            near_groups.checked += 1;
            if group.passed() {
                near_groups.found += 1;
            } else if group.verdict("NG3") == Some(Verdict::Anomaly) {
                near_groups.several_identities += 1;
            }
            if !ordinary && check_nearness_ring(&s)?.passed() {
                found += 1;
                if examples.len() < MAX_EXAMPLES {
                    examples.push(found_structure(&rgs, carrier, &add, &mul));
                }
            }
        }
    }
    Ok(SearchSummary {
        size: n,
        mode: "random".into(),
        seed: Some(seed),
        samples: Some(samples),
        feature_assignments: set_partitions(n).len(),
        table_pairs: samples as u64,
        found,
        near_groups,
        tallies: Vec::new(),
        examples,
    })
}
