//! Smith normal form over the integers and the abelianization it yields.

use serde::{Deserialize, Serialize};

use super::{Gen, Presentation};
use crate::scalar::Coord;

/// Diagonal of the Smith normal form of `m` (`d1 | d2 | ...`, all positive).
/// Trailing zero invariants are omitted; the rank is the diagonal length.
pub fn smith_diagonal<T: Coord>(m: &[Vec<T>]) -> Vec<T> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = min_nonzero(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let v = a[i][j].clone() - q.clone() * a[t][j].clone();
                        a[i][j] = v;
                    }
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..rows {
                        let v = a[i][j].clone() - q.clone() * a[i][t].clone();
                        a[i][j] = v;
                    }
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // the pivot must divide every remaining entry
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[t][j].clone() + a[i][j].clone();
                            a[t][j] = v;
                        }
                    }
                    None => break,
                }
            }
            let Some((pi, pj)) = min_nonzero_cross(&a, t) else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn min_nonzero<T: Coord>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

// pivot candidates restricted to row t and column t
fn min_nonzero_cross<T: Coord>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut cells: Vec<(usize, usize)> = (t..a.len()).map(|i| (i, t)).collect();
    cells.extend((t + 1..a[0].len()).map(|j| (t, j)));
    cells
        .into_iter()
        .filter(|&(i, j)| !a[i][j].is_zero())
        .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
}

/// `Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for Abelianization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Invariant factors of `Z^2` modulo the exponent-sum lattice of the relators.
pub fn abelianization(p: &Presentation) -> Abelianization {
    let rows: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|r| vec![r.exponent_sum(Gen::X), r.exponent_sum(Gen::Y)])
        .collect();
    let diag = smith_diagonal(&rows);
    Abelianization {
        free_rank: 2 - diag.len(),
        torsion: diag.into_iter().filter(|d| *d > 1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Word;

    fn ab(rels: &[&str]) -> Abelianization {
        abelianization(&Presentation::new(rels.iter().map(|r| Word::parse(r).unwrap())))
    }

    #[test]
    fn klein_abelianization() {
        assert_eq!(ab(&["xyxY"]), Abelianization { free_rank: 1, torsion: vec![2] });
        assert_eq!(ab(&["x^-2y^-2"]), Abelianization { free_rank: 1, torsion: vec![2] });
        assert_eq!(ab(&["x^2", "y^2"]), Abelianization { free_rank: 0, torsion: vec![2, 2] });
        assert_eq!(ab(&[]), Abelianization { free_rank: 2, torsion: vec![] });
        assert_eq!(ab(&["xyXY"]).to_string(), "Z^2");
    }

    #[test]
    fn diagonal_divisibility() {
        let m = vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(smith_diagonal(&m), vec![2, 6, 12]);
        let m = vec![vec![4i64, 0], vec![0, 6]];
        assert_eq!(smith_diagonal(&m), vec![2, 12]);
    }

    #[test]
    fn bigint_scalars() {
        use num_bigint::BigInt;
        let m = vec![vec![BigInt::from(4), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(6)]];
        assert_eq!(smith_diagonal(&m), vec![BigInt::from(2), BigInt::from(12)]);
    }
}
