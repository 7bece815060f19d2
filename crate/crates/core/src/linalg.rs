//! Sparse exact linear algebra over ℚ.
//!
//! Systems are assembled column by column: each unknown is given by its
//! image, a sparse vector indexed by arbitrary ordered keys. Elimination is
//! incremental, so rows are reduced against existing pivots as they arrive.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::polyforms::Rational;

type Row = BTreeMap<usize, Rational>;

/// A linear system `A x = b` with columns described by sparse images.
#[derive(Clone, Debug)]
pub struct LinearSystem<K: Ord + Clone> {
    keys: BTreeMap<K, usize>,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl<K: Ord + Clone> Default for LinearSystem<K> {
    fn default() -> Self {
        Self::new()
    }
}

/// Row echelon form with pivots at the leading column of each row.
struct Echelon {
    // pivot column -> row, row normalised so that the pivot entry is 1
    pivots: BTreeMap<usize, Row>,
}

const RHS: usize = usize::MAX;

impl Echelon {
    fn new() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
        }
    }

    /// Reduces `row`; returns `Err(())` if it reduces to `0 = nonzero`.
    fn insert(&mut self, mut row: Row) -> Result<(), ()> {
        let mut from = 0usize;
        loop {
            let next = row
                .range(from..)
                .map(|(c, _)| *c)
                .find(|c| *c != RHS && self.pivots.contains_key(c));
            let Some(c) = next else { break };
            let factor = row.remove(&c).expect("present");
            for (j, v) in &self.pivots[&c] {
                if *j == c {
                    continue;
                }
                let e = row.entry(*j).or_insert_with(Rational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(j);
                }
            }
            from = c + 1;
        }
        let lead = row.keys().next().copied();
        match lead {
            None => Ok(()),
            Some(RHS) => Err(()),
            Some(c) => {
                let inv = row[&c].recip();
                if !inv.is_one() {
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                }
                self.pivots.insert(c, row);
                Ok(())
            }
        }
    }

    /// Back substitution with all free variables set to `free`.
    fn back_substitute(&self, ncols: usize, free: &BTreeMap<usize, Rational>) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); ncols];
        for (c, v) in free {
            x[*c] = v.clone();
        }
        for (c, row) in self.pivots.iter().rev() {
            let mut val = row.get(&RHS).cloned().unwrap_or_else(Rational::zero);
            for (j, a) in row.range(c + 1..) {
                if *j == RHS {
                    continue;
                }
                if !x[*j].is_zero() {
                    val -= a * &x[*j];
                }
            }
            x[*c] = val;
        }
        x
    }
}

impl<K: Ord + Clone> LinearSystem<K> {
    pub fn new() -> Self {
        LinearSystem {
            keys: BTreeMap::new(),
            columns: Vec::new(),
        }
    }

    pub fn num_unknowns(&self) -> usize {
        self.columns.len()
    }

    pub fn num_equations(&self) -> usize {
        self.keys.len()
    }

    fn key_index(&mut self, k: K) -> usize {
        let n = self.keys.len();
        *self.keys.entry(k).or_insert(n)
    }

    /// Adds an unknown whose image is `image`; returns its index.
    pub fn add_unknown<I>(&mut self, image: I) -> usize
    where
        I: IntoIterator<Item = (K, Rational)>,
    {
        let mut col: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, v) in image {
            let r = self.key_index(k);
            let e = col.entry(r).or_insert_with(Rational::zero);
            *e += v;
        }
        col.retain(|_, v| !v.is_zero());
        self.columns.push(col.into_iter().collect());
        self.columns.len() - 1
    }

    fn rows(&self, rhs: Option<&BTreeMap<usize, Rational>>) -> Vec<Row> {
        let mut rows = vec![Row::new(); self.keys.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                rows[*r].insert(j, v.clone());
            }
        }
        if let Some(b) = rhs {
            for (r, v) in b {
                rows[*r].insert(RHS, v.clone());
            }
        }
        rows
    }

    fn echelon(&self, rhs: Option<&BTreeMap<usize, Rational>>) -> Result<Echelon, ()> {
        let mut e = Echelon::new();
        for row in self.rows(rhs) {
            if !row.is_empty() {
                e.insert(row)?;
            }
        }
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.echelon(None).expect("homogeneous").pivots.len()
    }

    /// Finds some `x` with `A x = b`, or `None` if the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve<I>(&self, target: I) -> Option<Vec<Rational>>
    where
        I: IntoIterator<Item = (K, Rational)>,
    {
        let mut b = BTreeMap::new();
        for (k, v) in target {
            if v.is_zero() {
                continue;
            }
            // a target coordinate no column touches can only be matched by zero
            let r = *self.keys.get(&k)?;
            let e = b.entry(r).or_insert_with(Rational::zero);
            *e += v;
        }
        b.retain(|_, v: &mut Rational| !v.is_zero());
        let e = self.echelon(Some(&b)).ok()?;
        Some(e.back_substitute(self.columns.len(), &BTreeMap::new()))
    }

    /// A basis of the null space of `A`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let e = self.echelon(None).expect("homogeneous");
        let n = self.columns.len();
        (0..n)
            .filter(|c| !e.pivots.contains_key(c))
            .map(|f| {
                let mut free = BTreeMap::new();
                free.insert(f, Rational::one());
                e.back_substitute(n, &free)
            })
            .collect()
    }

    /// Evaluates `A x` as a sparse map keyed like the equations.
    pub fn apply(&self, x: &[Rational]) -> BTreeMap<K, Rational> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, col) in self.columns.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (r, v) in col {
                *acc.entry(*r).or_insert_with(Rational::zero) += v * &x[j];
            }
        }
        let names: BTreeMap<usize, &K> = self.keys.iter().map(|(k, v)| (*v, k)).collect();
        acc.into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(r, v)| (names[&r].clone(), v))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyforms::{frac, rat};

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1
        let mut s = LinearSystem::new();
        s.add_unknown([("a", rat(1)), ("b", rat(1))]);
        s.add_unknown([("a", rat(1)), ("b", rat(-1))]);
        let x = s.solve([("a", rat(3)), ("b", rat(1))]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        assert_eq!(s.rank(), 2);
        assert!(s.kernel().is_empty());
    }

    #[test]
    fn detects_inconsistency() {
        let mut s = LinearSystem::new();
        s.add_unknown([("a", rat(2)), ("b", rat(4))]);
        assert!(s.solve([("a", rat(1)), ("b", rat(1))]).is_none());
        assert_eq!(s.solve([("a", rat(1)), ("b", rat(2))]), Some(vec![frac(1, 2)]));
        assert!(s.solve([("c", rat(1))]).is_none());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let mut s = LinearSystem::new();
        s.add_unknown([(0, rat(1)), (1, rat(2))]);
        s.add_unknown([(0, rat(2)), (1, rat(4))]);
        s.add_unknown([(0, rat(1)), (1, rat(3))]);
        s.add_unknown([(2, rat(1))]);
        let k = s.kernel();
        assert_eq!(k.len(), 1);
        assert!(s.apply(&k[0]).is_empty());
        assert_eq!(s.rank(), 3);
    }
}
