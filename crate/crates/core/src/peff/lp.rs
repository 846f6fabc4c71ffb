//! Exact rational linear algebra for the homogeneous cone `{a ≥ 0 : A a = 0}`.

use num::{One, Signed, Zero};

use crate::character::Rational;

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub(crate) fn rref(rows: &[Vec<Rational>], cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{x : A x = 0}`.
pub(crate) fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let (m, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub(crate) enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.t[r].len();
        let inv = self.t[r][c].recip();
        for v in self.t[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..self.t.len() {
            if i != r && !self.t[i][c].is_zero() {
                let f = self.t[i][c].clone();
                for j in 0..width {
                    let d = &f * &self.t[r][j];
                    self.t[i][j] -= d;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximises `cost · x` over columns `0..usable`, with Bland's rule.
    /// Returns `false` when unbounded.
    fn optimize(&mut self, cost: &[Rational], usable: usize) -> bool {
        let rhs = self.t.first().map_or(0, |row| row.len() - 1);
        loop {
            let reduced = |j: usize| -> Rational {
                let mut d = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    d -= &cost[b] * &self.t[r][j];
                }
                d
            };
            let Some(enter) = (0..usable).find(|&j| !self.basis.contains(&j) && reduced(j).is_positive())
            else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.t.len() {
                if self.t[r][enter].is_positive() {
                    let ratio = &self.t[r][rhs] / &self.t[r][enter];
                    let better = match &leave {
                        None => true,
                        Some((lr, lv)) => ratio < *lv || (ratio == *lv && self.basis[r] < self.basis[*lr]),
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

/// Maximises `c · x` subject to `A x = b`, `x ≥ 0`, by the two-phase method.
pub(crate) fn simplex_max(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m + 1;
    let mut t = Vec::with_capacity(m);
    for (row, rhs) in a.iter().zip(b) {
        let flip = rhs.is_negative();
        let mut r: Vec<Rational> = row.iter().map(|v| if flip { -v.clone() } else { v.clone() }).collect();
        r.resize(width, Rational::zero());
        r[n + t.len()] = Rational::one();
        r[width - 1] = if flip { -rhs.clone() } else { rhs.clone() };
        t.push(r);
    }
    let mut tab = Tableau { t, basis: (n..n + m).collect() };

    let mut phase1 = vec![Rational::zero(); n + m];
    for v in &mut phase1[n..] {
        *v = -Rational::one();
    }
    tab.optimize(&phase1, n + m);
    let infeasibility: Rational = (0..m)
        .filter(|&r| tab.basis[r] >= n)
        .map(|r| tab.t[r][width - 1].clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // artificial variables left in the basis sit at zero: pivot them out or drop the row
    let mut r = 0;
    while r < tab.t.len() {
        if tab.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, j);
            } else {
                tab.t.remove(r);
                tab.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }

    let mut cost = c.to_vec();
    cost.resize(n + m, Rational::zero());
    if !tab.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &bv) in tab.basis.iter().enumerate() {
        x[bv] = tab.t[r][width - 1].clone();
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { value, x }
}

/// Maximum of `Σ a_i` over `{A a = 0, 0 ≤ a ≤ 1}` together with an optimal point.
pub(crate) fn cone_lp(rows: &[Vec<Rational>], k: usize) -> (Rational, Vec<Rational>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for row in rows {
        let mut r = row.clone();
        r.resize(2 * k, Rational::zero());
        a.push(r);
        b.push(Rational::zero());
    }
    for i in 0..k {
        let mut r = vec![Rational::zero(); 2 * k];
        r[i] = Rational::one();
        r[k + i] = Rational::one();
        a.push(r);
        b.push(Rational::one());
    }
    let mut c = vec![Rational::one(); k];
    c.resize(2 * k, Rational::zero());
    match simplex_max(&a, &b, &c) {
        LpOutcome::Optimal { value, mut x } => {
            x.truncate(k);
            (value, x)
        }
        // a = 0 is feasible and the box bounds the objective
        LpOutcome::Infeasible | LpOutcome::Unbounded => unreachable!("bounded feasible program"),
    }
}

/// Outcome of the support enumeration.
pub(crate) enum CircuitSearch {
    Found,
    Empty,
    Skipped,
}

/// Searches supports in order of size for a one-dimensional kernel spanned by
/// a strictly positive vector. Every nonzero point of the cone is a positive
/// combination of such circuits, so exhaustion proves the cone is `{0}`.
pub(crate) fn circuit_search(rows: &[Vec<Rational>], k: usize, budget: u64) -> CircuitSearch {
    let rank = rref(rows, k).0.len();
    let max_size = (rank + 1).min(k);
    let mut total: u64 = 0;
    for s in 1..=max_size {
        total = total.saturating_add(binomial(k as u64, s as u64));
    }
    if total > budget {
        return CircuitSearch::Skipped;
    }
    for size in 1..=max_size {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let sub_rows: Vec<Vec<Rational>> =
                rows.iter().map(|r| subset.iter().map(|&j| r[j].clone()).collect()).collect();
            let ns = nullspace(&sub_rows, size);
            if ns.len() == 1 {
                let v = &ns[0];
                let sign = if v[0].is_negative() { -Rational::one() } else { Rational::one() };
                if v.iter().all(|x| (x * &sign).is_positive()) {
                    return CircuitSearch::Found;
                }
            }
            if !next_subset(&mut subset, k) {
                break;
            }
        }
    }
    CircuitSearch::Empty
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn cone_with_positive_point() {
        // a0 - a1 = 0
        let rows = vec![vec![q(1), q(-1), q(0)]];
        let (v, x) = cone_lp(&rows, 3);
        assert_eq!(v, q(3));
        assert_eq!(x, vec![q(1), q(1), q(1)]);
        assert!(matches!(circuit_search(&rows, 3, 1000), CircuitSearch::Found));
    }

    #[test]
    fn pointed_cone_is_zero() {
        // a0 + a1 = 0 and a1 + 2 a2 = 0 force a = 0 on the nonnegative orthant
        let rows = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(2)]];
        let (v, _) = cone_lp(&rows, 3);
        assert_eq!(v, q(0));
        assert!(matches!(circuit_search(&rows, 3, 1000), CircuitSearch::Empty));
    }

    #[test]
    fn nullspace_dimension() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: Rational = rows[0].iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
    }
}
