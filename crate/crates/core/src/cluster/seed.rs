use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::mpoly::MPoly;
use super::ratfn::{congruent_zero, Laurent, RatFn};
use crate::error::{Error, Result};

/// A skew-symmetric integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeMatrix(Vec<Vec<i64>>);

impl ExchangeMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("exchange matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if rows[i][j] != -rows[j][i] {
                    return Err(Error::InvalidMatrix(format!("b[{i}][{j}] = {} but b[{j}][{i}] = {}", rows[i][j], rows[j][i])));
                }
            }
        }
        Ok(ExchangeMatrix(rows))
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.0[i][j] == -self.0[j][i]))
    }

    /// Matrix mutation in direction k (0-based).
    pub fn mutate(&self, k: usize) -> ExchangeMatrix {
        let n = self.size();
        let b = &self.0;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == k || j == k {
                            -b[i][j]
                        } else {
                            b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                        }
                    })
                    .collect()
            })
            .collect();
        ExchangeMatrix(rows)
    }
}

/// Cluster variables in the initial variables, an exchange matrix, and the
/// mutation word (1-based directions) that produced them.
#[derive(Clone, Debug)]
pub struct Seed {
    pub vars: Vec<RatFn>,
    pub b: ExchangeMatrix,
    pub history: Vec<usize>,
}

/// Seeds compare by variables and matrix; the history is not part of identity.
impl PartialEq for Seed {
    fn eq(&self, o: &Self) -> bool {
        self.vars == o.vars && self.b == o.b
    }
}

impl Eq for Seed {}

impl std::hash::Hash for Seed {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.vars.hash(h);
        self.b.hash(h);
    }
}

impl Seed {
    /// The initial seed (x_1, …, x_n; B).
    pub fn initial(b: ExchangeMatrix) -> Self {
        let n = b.size();
        Seed { vars: (0..n).map(|i| RatFn::var(n, i)).collect(), b, history: Vec::new() }
    }

    pub fn new(vars: Vec<RatFn>, b: ExchangeMatrix, history: Vec<usize>) -> Result<Self> {
        let n = b.size();
        if vars.len() != n || vars.iter().any(|v| v.nvars() != n) {
            return Err(Error::ShapeMismatch(format!("{} variables for a {n}×{n} matrix", vars.len())));
        }
        Ok(Seed { vars, b, history })
    }

    pub fn rank(&self) -> usize {
        self.b.size()
    }

    /// μ_k for 1 ≤ k ≤ n.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let n = self.rank();
        if k == 0 || k > n {
            return Err(Error::DirectionOutOfRange(k, n));
        }
        let k0 = k - 1;
        let mut pos = RatFn::one(n);
        let mut neg = RatFn::one(n);
        for i in 0..n {
            let bik = self.b.get(i, k0);
            if bik > 0 {
                pos = pos.mul(&self.vars[i].pow(bik as u32));
            } else if bik < 0 {
                neg = neg.mul(&self.vars[i].pow((-bik) as u32));
            }
        }
        let mut vars = self.vars.clone();
        vars[k0] = RatFn::exchange(&pos, &neg, &self.vars[k0])?;
        let mut history = self.history.clone();
        history.push(k);
        Ok(Seed { vars, b: self.b.mutate(k0), history })
    }

    pub fn mutate_word(&self, word: &[usize]) -> Result<Seed> {
        word.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Laurent certificates for every variable; on failure, the index of the
    /// first offending variable.
    pub fn laurent_certify(&self) -> std::result::Result<Vec<Laurent>, usize> {
        self.vars.iter().enumerate().map(|(i, v)| v.laurent().ok_or(i)).collect()
    }

    /// All seeds reachable by words of length ≤ `depth`, deduplicated.
    pub fn reachable(&self, depth: usize) -> Result<Vec<Seed>> {
        let n = self.rank();
        let mut seen: BTreeSet<SeedKey> = BTreeSet::from([SeedKey::of(self)]);
        let mut all = vec![self.clone()];
        let mut frontier = vec![self.clone()];
        for _ in 0..depth {
            let next: Vec<Seed> = frontier
                .par_iter()
                .flat_map_iter(|s| (1..=n).map(move |k| s.mutate(k)))
                .collect::<Result<Vec<_>>>()?;
            let mut fresh = Vec::new();
            for s in next {
                if seen.insert(SeedKey::of(&s)) {
                    fresh.push(s);
                }
            }
            fresh.sort_by_key(SeedKey::of);
            all.extend(fresh.iter().cloned());
            frontier = fresh;
        }
        Ok(all)
    }

    /// Distinct cluster variables over all words of length ≤ `depth`,
    /// sorted canonically.
    pub fn cluster_variables(&self, depth: usize) -> Result<Vec<RatFn>> {
        let set: BTreeSet<RatFn> = self.reachable(depth)?.into_iter().flat_map(|s| s.vars).collect();
        Ok(set.into_iter().collect())
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct SeedKey(Vec<RatFn>, ExchangeMatrix);

impl SeedKey {
    fn of(s: &Seed) -> Self {
        SeedKey(s.vars.clone(), s.b.clone())
    }
}

/// Whether every coefficient of the Laurent expansion of `v` is divisible by p.
pub fn congruence_level_p(v: &RatFn, p: &BigInt) -> Result<bool> {
    let l = v.laurent().ok_or(Error::NotLaurent)?;
    Ok(congruent_zero(&l, p))
}

/// The binomial exchange polynomial P_k = Π x_i^[b_ik]+ + Π x_i^[-b_ik]+ in
/// the initial variables.
pub fn exchange_polynomial(b: &ExchangeMatrix, k: usize) -> MPoly {
    let n = b.size();
    let pos: Vec<u32> = (0..n).map(|i| b.get(i, k).max(0) as u32).collect();
    let neg: Vec<u32> = (0..n).map(|i| (-b.get(i, k)).max(0) as u32).collect();
    MPoly::monomial(pos, 1.into()).add(&MPoly::monomial(neg, 1.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Seed {
        Seed::initial(ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap())
    }

    #[test]
    fn a2_first_mutation() {
        let s = a2().mutate(1).unwrap();
        assert_eq!(s.vars[0].to_string(), "(1 + x2)/x1");
        assert_eq!(s.b.rows(), &[vec![0, -1], vec![1, 0]]);
        assert_eq!(s.history, vec![1]);
        assert_eq!(s.mutate(1).unwrap(), a2());
    }

    #[test]
    fn zero_matrix_gives_two_over_x() {
        let s = Seed::initial(ExchangeMatrix::new(vec![vec![0, 0], vec![0, 0]]).unwrap());
        assert_eq!(s.mutate(2).unwrap().vars[1].to_string(), "2/x2");
    }

    #[test]
    fn a2_has_five_variables() {
        let vars = a2().cluster_variables(10).unwrap();
        let names: BTreeSet<String> = vars.iter().map(|v| v.to_string()).collect();
        let expected: BTreeSet<String> =
            ["x1", "x2", "(1 + x2)/x1", "(1 + x1 + x2)/(x1*x2)", "(1 + x1)/x2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(names, expected);
    }

    #[test]
    fn direction_checked() {
        assert_eq!(a2().mutate(3).unwrap_err(), Error::DirectionOutOfRange(3, 2));
        assert_eq!(a2().mutate(0).unwrap_err(), Error::DirectionOutOfRange(0, 2));
    }
}
