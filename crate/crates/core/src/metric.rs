//! All-pairs shortest paths and the dense distance matrix.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense symmetric matrix of graph distances, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    /// Builds a matrix from explicit rows after checking the metric
    /// invariants (zero diagonal, symmetry, positivity off the diagonal,
    /// triangle inequality). Intended for tests and external data.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParams("empty distance matrix".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: r.len() });
        }
        let d = DistanceMatrix { n, entries: rows.concat() };
        for i in 0..n {
            if d.get(i, i) != 0 {
                return Err(Error::InvalidParams(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                if d.get(i, j) != d.get(j, i) {
                    return Err(Error::InvalidParams(format!("asymmetric at ({i}, {j})")));
                }
                if i != j && d.get(i, j) == 0 {
                    return Err(Error::InvalidParams(format!("zero distance at ({i}, {j})")));
                }
                for k in 0..n {
                    if d.get(i, k) > d.get(i, j) + d.get(j, k) {
                        return Err(Error::InvalidParams(format!(
                            "triangle inequality fails for ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(d)
    }
}

/// Unweighted all-pairs shortest paths, one BFS per source.
///
/// Sources are spread over the rayon pool; each BFS fills its own row, so
/// the result does not depend on the number of threads.
pub fn apsp(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.n();
    let mut entries = vec![u32::MAX; n * n];
    entries
        .par_chunks_mut(n)
        .enumerate()
        .for_each(|(source, row)| bfs_row(g, source, row));
    if let Some(pos) = entries[..n].iter().position(|&d| d == u32::MAX) {
        return Err(Error::Disconnected { from: 0, to: pos });
    }
    Ok(DistanceMatrix { n, entries })
}

fn bfs_row(g: &Graph, source: usize, row: &mut [u32]) {
    row[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let next = row[u] + 1;
        for &v in g.neighbors(u) {
            if row[v] == u32::MAX {
                row[v] = next;
                queue.push_back(v);
            }
        }
    }
}

pub fn row_sums(d: &DistanceMatrix) -> Vec<u64> {
    d.rows()
        .map(|r| r.iter().map(|&x| x as u64).sum())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eccentricities {
    pub ecc: Vec<u32>,
    pub radius: u32,
    pub diameter: u32,
    /// Lowest-index vertex attaining the radius.
    pub center: usize,
}

pub fn eccentricities(d: &DistanceMatrix) -> Eccentricities {
    let ecc: Vec<u32> = d.rows().map(|r| r.iter().copied().max().unwrap_or(0)).collect();
    let radius = ecc.iter().copied().min().unwrap_or(0);
    let diameter = ecc.iter().copied().max().unwrap_or(0);
    let center = ecc.iter().position(|&e| e == radius).unwrap_or(0);
    Eccentricities { ecc, radius, diameter, center }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn dist(f: Family) -> DistanceMatrix {
        apsp(&generate(&f, 0).unwrap()).unwrap()
    }

    #[test]
    fn apsp_examples() {
        assert_eq!(
            dist(Family::Path(3)).to_rows(),
            vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]
        );
        let k4 = dist(Family::Complete(4));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(k4.get(i, j), u32::from(i != j));
            }
        }
        let c4 = dist(Family::Cycle(4));
        assert_eq!(c4.row(0), &[0, 1, 2, 1]);
        assert!(row_sums(&c4).iter().all(|&s| s == 4));
    }

    #[test]
    fn disconnected_names_a_pair() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let err = apsp(&g).unwrap_err();
        assert_eq!(err, Error::Disconnected { from: 0, to: 2 });
    }

    #[test]
    fn row_sum_examples() {
        assert_eq!(row_sums(&dist(Family::Path(3))), vec![3, 2, 3]);
        assert_eq!(row_sums(&dist(Family::Hypercube(3))), vec![12; 8]);
        assert_eq!(row_sums(&dist(Family::Star(4))), vec![3, 5, 5, 5]);
    }

    #[test]
    fn eccentricity_examples() {
        let e = eccentricities(&dist(Family::Path(3)));
        assert_eq!(e.ecc, vec![2, 1, 2]);
        assert_eq!((e.radius, e.diameter, e.center), (1, 2, 1));
        for n in 2..7 {
            let e = eccentricities(&dist(Family::Complete(n)));
            assert_eq!((e.radius, e.diameter), (1, 1));
        }
        assert_eq!(eccentricities(&dist(Family::Cycle(5))).ecc, vec![2; 5]);
    }

    #[test]
    fn single_vertex() {
        let d = dist(Family::Complete(1));
        assert_eq!(d.to_rows(), vec![vec![0]]);
        assert_eq!(eccentricities(&d).radius, 0);
    }

    #[test]
    fn from_rows_checks_invariants() {
        assert!(DistanceMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(DistanceMatrix::from_rows(vec![vec![0, 1], vec![2, 0]]).is_err());
        assert!(DistanceMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]).is_err());
        assert!(DistanceMatrix::from_rows(vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(DistanceMatrix::from_rows(vec![
            vec![0, 1, 5],
            vec![1, 0, 1],
            vec![5, 1, 0]
        ])
        .is_err());
        assert!(DistanceMatrix::from_rows(vec![vec![0, 1]]).is_err());
    }
}
