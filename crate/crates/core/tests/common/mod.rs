#![allow(dead_code)]

use graphcurv::{apsp, generate, DistanceMatrix, Family, Rational};

pub struct Instance {
    pub name: String,
    pub family: Family,
    pub seed: u64,
    pub d: DistanceMatrix,
}

pub fn instance(family: Family, seed: u64) -> Instance {
    let g = generate(&family, seed).unwrap();
    Instance {
        name: if matches!(family, Family::Gnp { .. }) {
            format!("{family}@{seed}")
        } else {
            family.to_string()
        },
        d: apsp(&g).unwrap(),
        family,
        seed,
    }
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

/// The 50 seeded random graphs: seed s has n = 4 + s mod 13 and edge
/// probability cycling through 1/4, 1/3, 1/2, 2/3.
pub fn gnp_instances(count: u64) -> Vec<Instance> {
    const P: [(u64, u64); 4] = [(1, 4), (1, 3), (1, 2), (2, 3)];
    (0..count)
        .map(|s| {
            let (num, den) = P[(s % 4) as usize];
            instance(Family::Gnp { n: 4 + (s % 13) as usize, num, den }, s)
        })
        .collect()
}

/// path, cycle, star, complete for n = 2..=12; hypercube d = 1..=4; 50 gnp.
pub fn criterion_families() -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 2..=12 {
        out.push(instance(Family::Path(n), 0));
        out.push(instance(Family::Cycle(n), 0));
        out.push(instance(Family::Star(n), 0));
        out.push(instance(Family::Complete(n), 0));
    }
    for d in 1..=4 {
        out.push(instance(Family::Hypercube(d), 0));
    }
    out.extend(gnp_instances(50));
    out
}

/// Larger deterministic instances up to n = 64.
pub fn large_families() -> Vec<Instance> {
    let mut out = vec![
        instance(Family::Path(64), 0),
        instance(Family::Cycle(63), 0),
        instance(Family::Cycle(64), 0),
        instance(Family::Star(64), 0),
        instance(Family::Complete(64), 0),
        instance(Family::Grid(8, 8), 0),
        instance(Family::Grid(5, 7), 0),
        instance(Family::Hypercube(5), 0),
    ];
    for s in 0..6 {
        out.push(instance(Family::Gnp { n: 24 + 8 * s as usize, num: 1, den: 5 }, 100 + s));
    }
    out
}

/// Floyd–Warshall on the adjacency relation, used only as an oracle.
pub fn floyd_warshall(g: &graphcurv::Graph) -> Vec<Vec<u64>> {
    let n = g.n();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
        for &v in g.neighbors(u) {
            row[v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}
