//! Naive re-implementations of the definitions over plain vectors. Nothing
//! here calls into the library's checkers.

#![allow(dead_code)]

pub mod suites;

use std::collections::BTreeMap;

use nearness::{ApproximationSpace, FeatureSystem, Obj, ObjSet, OpTable, Probe, Universe};
use rand::Rng;

pub type Table = Vec<Vec<usize>>;

#[derive(Clone, Debug)]
pub struct Plain {
    pub n: usize,
    /// features[probe][object]
    pub features: Vec<Vec<usize>>,
    pub r: usize,
    pub add: Table,
    pub mul: Table,
    pub carrier: Vec<usize>,
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets_of_size(n - 1, k);
    for mut s in subsets_of_size(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

impl Plain {
    /// y is in the upper approximation of xs iff, for some r-subset of
    /// probes, y agrees with some x on all of them.
    pub fn upper(&self, xs: &[usize]) -> Vec<usize> {
        let subsets = subsets_of_size(self.features.len(), self.r);
        (0..self.n)
            .filter(|&y| {
                subsets
                    .iter()
                    .any(|ps| xs.iter().any(|&x| ps.iter().all(|&p| self.features[p][x] == self.features[p][y])))
            })
            .collect()
    }

    pub fn space(&self) -> ApproximationSpace {
        let universe = Universe::new((0..self.n).map(|i| format!("x{i}"))).unwrap();
        let probes = self
            .features
            .iter()
            .enumerate()
            .map(|(i, vals)| Probe { name: format!("f{i}"), values: vals.iter().map(|v| format!("v{v}")).collect() })
            .collect();
        ApproximationSpace::new(FeatureSystem::new(universe, probes, self.r).unwrap())
    }

    pub fn tables(&self) -> (OpTable, OpTable) {
        (to_op_table(&self.add), to_op_table(&self.mul))
    }
}

pub fn to_op_table(t: &Table) -> OpTable {
    OpTable::new(t.len(), t.iter().flatten().map(|&v| Obj(v as u32)).collect()).unwrap()
}

pub fn from_op_table(t: &OpTable) -> Table {
    (0..t.size()).map(|a| (0..t.size()).map(|b| t.apply(Obj(a as u32), Obj(b as u32)).index()).collect()).collect()
}

pub fn objset(xs: &[usize]) -> ObjSet {
    xs.iter().map(|&x| Obj(x as u32)).collect()
}

pub fn indices(s: &ObjSet) -> Vec<usize> {
    s.iter().map(|x| x.index()).collect()
}

pub type Verdicts = BTreeMap<String, &'static str>;

fn v(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn two_sided_identities(t: &Table, carrier: &[usize], up: &[usize]) -> Vec<usize> {
    up.iter().copied().filter(|&e| carrier.iter().all(|&x| t[x][e] == x && t[e][x] == x)).collect()
}

fn commutes(t: &Table, carrier: &[usize]) -> bool {
    carrier.iter().all(|&x| carrier.iter().all(|&y| t[x][y] == t[y][x]))
}

fn closed(t: &Table, carrier: &[usize], up: &[usize]) -> bool {
    carrier.iter().all(|&x| carrier.iter().all(|&y| up.contains(&t[x][y])))
}

fn assoc(t: &Table, carrier: &[usize], up: &[usize]) -> (bool, bool) {
    let mut eq = true;
    let mut inside = true;
    for &x in carrier {
        for &y in carrier {
            for &z in carrier {
                let (xy, yz) = (t[x][y], t[y][z]);
                let (l, r) = (t[x][yz], t[xy][z]);
                eq &= l == r;
                inside &= [xy, yz, l, r].iter().all(|q| up.contains(q));
            }
        }
    }
    (eq, inside)
}

pub fn near_group(p: &Plain, t: &Table) -> Verdicts {
    let c = &p.carrier;
    let up = p.upper(c);
    let mut out = Verdicts::new();
    out.insert("NG1".into(), v(closed(t, c, &up)));
    let (eq, inside) = assoc(t, c, &up);
    out.insert("NG2".into(), v(eq));
    out.insert("NG2:in-upper".into(), v(inside));
    let ids = two_sided_identities(t, c, &up);
    let ng3 = match ids.len() {
        0 => "fail",
        1 => "pass",
        _ => "anomaly",
    };
    out.insert("NG3".into(), ng3);
    let ng4 = if ids.len() == 1 {
        let e = ids[0];
        v(c.iter().all(|&x| c.iter().any(|&y| t[x][y] == e && t[y][x] == e)))
    } else {
        "not-applicable"
    };
    out.insert("NG4".into(), ng4);
    out.insert("abelian".into(), v(commutes(t, c)));
    out
}

pub fn near_semigroup(p: &Plain, t: &Table) -> Verdicts {
    let c = &p.carrier;
    let up = p.upper(c);
    let (eq, inside) = assoc(t, c, &up);
    let mut out = Verdicts::new();
    out.insert("NS1".into(), v(closed(t, c, &up)));
    out.insert("NS2".into(), v(eq));
    out.insert("NS2:in-upper".into(), v(inside));
    out
}

pub fn nearness_ring(p: &Plain) -> Verdicts {
    let c = &p.carrier;
    let up = p.upper(c);
    let (a, m) = (&p.add, &p.mul);
    let g = near_group(p, a);
    let nr1 = if g["NG3"] == "anomaly" {
        "anomaly"
    } else {
        v(["NG1", "NG2", "NG3", "NG4", "abelian"].iter().all(|k| g[*k] == "pass"))
    };
    let s = near_semigroup(p, m);
    let mut nr3 = true;
    for &x in c {
        for &y in c {
            for &z in c {
                let left = [a[y][z], m[x][a[y][z]], m[x][y], m[x][z], a[m[x][y]][m[x][z]]];
                let right = [a[x][y], m[a[x][y]][z], m[x][z], m[y][z], a[m[x][z]][m[y][z]]];
                nr3 &= left[1] == left[4] && right[1] == right[4];
                nr3 &= left.iter().chain(&right).all(|q| up.contains(q));
            }
        }
    }
    let ones = two_sided_identities(m, c, &up);
    let mut out = Verdicts::new();
    out.insert("NR1".into(), nr1);
    out.insert("NR2".into(), v(s["NS1"] == "pass" && s["NS2"] == "pass"));
    out.insert("NR3".into(), v(nr3));
    out.insert("NR4".into(), v(commutes(m, c)));
    out.insert(
        "NR5".into(),
        match ones.len() {
            0 => "fail",
            1 => "pass",
            _ => "anomaly",
        },
    );
    out
}

fn zero(p: &Plain) -> Option<usize> {
    let ids = two_sided_identities(&p.add, &p.carrier, &p.upper(&p.carrier));
    (ids.len() == 1).then(|| ids[0])
}

/// Smallest carrier element y with x+y = y+x = 0.
fn neg(p: &Plain, z: usize, x: usize) -> Option<usize> {
    p.carrier.iter().copied().find(|&y| p.add[x][y] == z && p.add[y][x] == z)
}

fn groupoid(t: &Table, set: &[usize]) -> bool {
    set.iter().all(|&x| set.iter().all(|&y| set.contains(&t[x][y])))
}

fn ring_passes(p: &Plain, carrier: &[usize]) -> bool {
    let q = Plain { carrier: carrier.to_vec(), ..p.clone() };
    let r = nearness_ring(&q);
    ["NR1", "NR2", "NR3"].iter().all(|k| r[*k] == "pass")
}

pub fn subring(p: &Plain, sub: &[usize]) -> Verdicts {
    let up = p.upper(sub);
    let mut out = Verdicts::new();
    out.insert("ambient-ring".into(), v(ring_passes(p, &p.carrier)));
    let ga = groupoid(&p.add, &up);
    let gm = groupoid(&p.mul, &up);
    out.insert("groupoid:+".into(), if ga { "pass" } else { "not-applicable" });
    out.insert("groupoid:·".into(), if gm { "pass" } else { "not-applicable" });
    let nc = match (ga && gm, zero(p)) {
        (true, Some(z)) => v(sub.iter().all(|&x| neg(p, z, x).is_some_and(|n| sub.contains(&n)))),
        _ => "not-applicable",
    };
    out.insert("negation-closed".into(), nc);
    if ga && gm && zero(p).is_some() {
        out.insert("cross-check".into(), v(ring_passes(p, sub)));
    }
    out
}

/// `None` when the checker must refuse (no unique zero or a missing inverse).
pub fn ideal(p: &Plain, i: &[usize], left: bool, right: bool) -> Option<Verdicts> {
    let z = zero(p)?;
    let negs: Vec<usize> = i.iter().map(|&y| neg(p, z, y)).collect::<Option<_>>()?;
    let up = p.upper(i);
    let mut out = Verdicts::new();
    out.insert("difference".into(), v(i.iter().all(|&x| negs.iter().all(|&ny| up.contains(&p.add[x][ny])))));
    if left {
        out.insert("left".into(), v(p.carrier.iter().all(|&a| i.iter().all(|&x| up.contains(&p.mul[a][x])))));
    }
    if right {
        out.insert("right".into(), v(p.carrier.iter().all(|&a| i.iter().all(|&x| up.contains(&p.mul[x][a])))));
    }
    Some(out)
}

/// Ordinary ring axioms by brute force.
pub fn is_ring(a: &Table, m: &Table) -> bool {
    let n = a.len();
    let all: Vec<usize> = (0..n).collect();
    let Some(z) = (0..n).find(|&e| all.iter().all(|&x| a[x][e] == x && a[e][x] == x)) else { return false };
    let tri = |f: &dyn Fn(usize, usize, usize) -> bool| all.iter().all(|&x| all.iter().all(|&y| all.iter().all(|&w| f(x, y, w))));
    commutes(a, &all)
        && all.iter().all(|&x| all.iter().any(|&y| a[x][y] == z))
        && tri(&|x, y, w| a[a[x][y]][w] == a[x][a[y][w]])
        && tri(&|x, y, w| m[m[x][y]][w] == m[x][m[y][w]])
        && tri(&|x, y, w| m[x][a[y][w]] == a[m[x][y]][m[x][w]] && m[a[x][y]][w] == a[m[x][w]][m[y][w]])
}

pub fn random_features(rng: &mut impl Rng, n: usize) -> (Vec<Vec<usize>>, usize) {
    let probes = rng.gen_range(1..=3);
    let values = rng.gen_range(1..=n.max(1));
    let f = (0..probes).map(|_| (0..n).map(|_| rng.gen_range(0..values)).collect()).collect();
    (f, rng.gen_range(1..=probes))
}

pub fn random_table(rng: &mut impl Rng, n: usize) -> Table {
    (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect()).collect()
}

pub fn random_subset(rng: &mut impl Rng, from: &[usize]) -> Vec<usize> {
    loop {
        let s: Vec<usize> = from.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// A random candidate; half of them are built on `ℤ_n` arithmetic under a
/// random relabelling so the checkers see passing cases too.
pub fn random_plain(rng: &mut impl Rng, max_n: usize) -> Plain {
    let n = rng.gen_range(1..=max_n);
    let (features, r) = random_features(rng, n);
    let (add, mul) = if rng.gen_bool(0.5) {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let mut add = vec![vec![0; n]; n];
        let mut mul = vec![vec![0; n]; n];
        let kind = rng.gen_range(0..3);
        for a in 0..n {
            for b in 0..n {
                add[perm[a]][perm[b]] = perm[(a + b) % n];
                mul[perm[a]][perm[b]] = match kind {
                    0 => perm[(a * b) % n],
                    1 => perm[0],
                    _ => rng.gen_range(0..n),
                };
            }
        }
        (add, mul)
    } else {
        (random_table(rng, n), random_table(rng, n))
    };
    let all: Vec<usize> = (0..n).collect();
    let carrier = random_subset(rng, &all);
    Plain { n, features, r, add, mul, carrier }
}
