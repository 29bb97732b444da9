use std::collections::BTreeMap;

use super::seed::ExchangeMatrix;
use crate::error::{Error, Result};

/// A triangulated surface: triangles list arcs in clockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub genus: Option<u32>,
    pub cusps: Option<u32>,
    pub triangles: Vec<[usize; 3]>,
}

impl SurfaceSpec {
    pub fn new(triangles: Vec<[usize; 3]>) -> Self {
        SurfaceSpec { genus: None, cusps: None, triangles }
    }

    /// Interior arcs (appearing in two triangle sides), sorted by label.
    pub fn interior_arcs(&self) -> Result<Vec<usize>> {
        if self.triangles.is_empty() {
            return Err(Error::InvalidTriangulation("no triangles".into()));
        }
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for t in &self.triangles {
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(Error::InvalidTriangulation(format!("self-folded triangle {t:?} is not supported")));
            }
            for &a in t {
                *count.entry(a).or_default() += 1;
            }
        }
        if let Some((a, c)) = count.iter().find(|(_, &c)| c > 2) {
            return Err(Error::InvalidTriangulation(format!("arc {a} appears in {c} triangle sides")));
        }
        let interior: Vec<usize> = count.iter().filter(|(_, &c)| c == 2).map(|(&a, _)| a).collect();
        if interior.is_empty() {
            return Err(Error::InvalidTriangulation("no interior arcs".into()));
        }
        if let (Some(g), Some(n)) = (self.genus, self.cusps) {
            if interior.len() == count.len() {
                let expected = 6 * g as i64 - 6 + 3 * n as i64;
                if expected != interior.len() as i64 {
                    return Err(Error::InvalidTriangulation(format!(
                        "S_{{{g},{n}}} needs {expected} arcs, found {}",
                        interior.len()
                    )));
                }
            }
        }
        Ok(interior)
    }

    /// Signed adjacency: +1 when arc j immediately follows arc i in a
    /// triangle, −1 when it immediately precedes; boundary arcs are dropped.
    pub fn exchange_matrix(&self) -> Result<ExchangeMatrix> {
        let arcs = self.interior_arcs()?;
        let index: BTreeMap<usize, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let n = arcs.len();
        let mut b = vec![vec![0i64; n]; n];
        for t in &self.triangles {
            for s in 0..3 {
                let (i, j) = (t[s], t[(s + 1) % 3]);
                if let (Some(&i), Some(&j)) = (index.get(&i), index.get(&j)) {
                    b[i][j] += 1;
                    b[j][i] -= 1;
                }
            }
        }
        ExchangeMatrix::new(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctured_torus() {
        let mut s = SurfaceSpec::new(vec![[0, 1, 2], [0, 1, 2]]);
        s.genus = Some(1);
        s.cusps = Some(1);
        assert_eq!(s.exchange_matrix().unwrap().rows(), &[vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]);
    }

    #[test]
    fn square_with_diagonal() {
        let s = SurfaceSpec::new(vec![[0, 1, 4], [2, 3, 4]]);
        assert_eq!(s.exchange_matrix().unwrap().rows(), &[vec![0]]);
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(SurfaceSpec::new(vec![]).exchange_matrix(), Err(Error::InvalidTriangulation(_))));
        let s = SurfaceSpec::new(vec![[0, 1, 2], [0, 1, 2], [0, 3, 4]]);
        assert!(matches!(s.exchange_matrix(), Err(Error::InvalidTriangulation(_))));
        let mut s = SurfaceSpec::new(vec![[0, 1, 2], [0, 1, 2]]);
        s.genus = Some(2);
        s.cusps = Some(0);
        assert!(matches!(s.exchange_matrix(), Err(Error::InvalidTriangulation(_))));
    }
}
