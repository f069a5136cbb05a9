//! The three relation families a specialization must satisfy for the
//! bracket to be invariant, instantiated over the label window.
//!
//! Family 1: `δ_0 + B_{a,b} A_{a,b}^-1 + A_{a,b} B_{a,b}^-1 = 0`.
//! Family 2: `A_{ab} A_{ac} B_{bc} + B_{ab} A_{ac} A_{bc} + B_{ab} A_{ac} B_{bc} = A_{ab} B_{ac} A_{bc}`.
//! Family 3: `A_{ab} δ_i δ_j + B_{ab} δ_k δ_l = C_{ab} δ_{i+1} δ_{j-1} + D_{ab} δ_{k-1} δ_{l+1}`
//! for `i, j, k, l` in `Z_2`, where `C` and `D` are free coefficients.

use serde::{Deserialize, Serialize};

use super::poly::{Laurent, Var};
use super::specialization::{EvalError, Specialization};

/// A failing instance with `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFailure {
    pub family: u8,
    /// `(a, b)`, `(a, b, c)` or `(a, b, i, j, k, l)`.
    pub indices: Vec<i64>,
    pub residual: Laurent,
    /// Family 1 is multiplied through by `A B` when either value is not a
    /// unit; the residual is then of the cleared form.
    pub cleared: bool,
}

/// Per `(a, b)` outcome of solving family 3 for `C` and `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Solve {
    Solved { c: Laurent, d: Laurent },
    /// No `C, D` in `Z[t, t^-1]` satisfy all sixteen equations.
    Inconsistent,
    /// The equations leave a family of solutions.
    Underdetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Family3 {
    /// `C` and `D` were supplied and checked.
    Checked { failures: Vec<RelationFailure> },
    /// `C` and `D` were not supplied; the system was solved instead.
    Solved { solutions: Vec<((i64, i64), Solve)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub window: i64,
    pub family1: Vec<RelationFailure>,
    pub family2: Vec<RelationFailure>,
    pub family3: Family3,
}

impl RelationReport {
    pub fn families_1_2_hold(&self) -> bool {
        self.family1.is_empty() && self.family2.is_empty()
    }

    /// Families 1 and 2 hold, and family 3 holds for the supplied `C, D` or
    /// is solvable at every `(a, b)`.
    pub fn satisfied(&self) -> bool {
        self.families_1_2_hold()
            && match &self.family3 {
                Family3::Checked { failures } => failures.is_empty(),
                Family3::Solved { solutions } => solutions.iter().all(|(_, s)| *s != Solve::Inconsistent),
            }
    }
}

fn family1(s: &Specialization, a: i64, b: i64, d0: &Laurent) -> Result<Option<RelationFailure>, EvalError> {
    let (x, y) = (s.value(Var::A(a, b))?, s.value(Var::B(a, b))?);
    let (residual, cleared) = match (x.inverse(), y.inverse()) {
        (Some(xi), Some(yi)) => (d0 + &(&(&y * &xi) + &(&x * &yi)), false),
        _ => (&(&(&x * &y) * d0) + &(&(&y * &y) + &(&x * &x)), true),
    };
    Ok((!residual.is_zero()).then(|| RelationFailure { family: 1, indices: vec![a, b], residual, cleared }))
}

fn family2(s: &Specialization, a: i64, b: i64, c: i64) -> Result<Option<RelationFailure>, EvalError> {
    let av = |x, y| s.value(Var::A(x, y));
    let bv = |x, y| s.value(Var::B(x, y));
    let (aab, aac, abc) = (av(a, b)?, av(a, c)?, av(b, c)?);
    let (bab, bac, bbc) = (bv(a, b)?, bv(a, c)?, bv(b, c)?);
    let lhs = &(&(&aab * &aac) * &bbc) + &(&(&(&bab * &aac) * &abc) + &(&(&bab * &aac) * &bbc));
    let rhs = &(&aab * &bac) * &abc;
    let residual = &lhs - &rhs;
    Ok((!residual.is_zero()).then(|| RelationFailure { family: 2, indices: vec![a, b, c], residual, cleared: false }))
}

/// One family-3 equation as `p C + q D = r` with `δ` indices mod 2.
fn family3_row(deltas: &[Laurent; 2], x: &Laurent, y: &Laurent, [i, j, k, l]: [usize; 4]) -> [Laurent; 3] {
    let dd = |u: usize, v: usize| &deltas[u % 2] * &deltas[v % 2];
    let r = &(x * &dd(i, j)) + &(y * &dd(k, l));
    [dd(i + 1, j + 1), dd(k + 1, l + 1), r]
}

fn quads() -> impl Iterator<Item = [usize; 4]> {
    (0..16).map(|m| [m >> 3 & 1, m >> 2 & 1, m >> 1 & 1, m & 1])
}

fn det(a: &Laurent, b: &Laurent, c: &Laurent, d: &Laurent) -> Laurent {
    &(a * d) - &(b * c)
}

/// Solves the sixteen equations `p C + q D = r` over `Z[t, t^-1]`.
fn solve(rows: &[[Laurent; 3]]) -> Solve {
    for (n, r1) in rows.iter().enumerate() {
        for r2 in &rows[n + 1..] {
            let dt = det(&r1[0], &r1[1], &r2[0], &r2[1]);
            if dt.is_zero() {
                continue;
            }
            let (Some(c), Some(d)) =
                (det(&r1[2], &r1[1], &r2[2], &r2[1]).div_exact(&dt), det(&r1[0], &r1[2], &r2[0], &r2[2]).div_exact(&dt))
            else {
                return Solve::Inconsistent;
            };
            let ok = rows.iter().all(|r| &(&r[0] * &c) + &(&r[1] * &d) == r[2]);
            return if ok { Solve::Solved { c, d } } else { Solve::Inconsistent };
        }
    }
    // Rank at most one: consistent iff every augmented 2x2 minor vanishes.
    let Some(pivot) = rows.iter().find(|r| !(r[0].is_zero() && r[1].is_zero())) else {
        return if rows.iter().all(|r| r[2].is_zero()) { Solve::Underdetermined } else { Solve::Inconsistent };
    };
    let consistent = rows.iter().all(|r| {
        det(&pivot[0], &pivot[2], &r[0], &r[2]).is_zero() && det(&pivot[1], &pivot[2], &r[1], &r[2]).is_zero()
    });
    if consistent {
        Solve::Underdetermined
    } else {
        Solve::Inconsistent
    }
}

pub fn check_relations(s: &Specialization) -> Result<RelationReport, EvalError> {
    let d0 = s.value(Var::Delta(0))?;
    let deltas = [d0.clone(), s.value(Var::Delta(1))?];
    let mut family1_failures = Vec::new();
    let mut family2_failures = Vec::new();
    let mut checked = Vec::new();
    let mut solutions = Vec::new();
    for a in s.labels() {
        for b in s.labels() {
            family1_failures.extend(family1(s, a, b, &d0)?);
            for c in s.labels() {
                family2_failures.extend(family2(s, a, b, c)?);
            }
            let (x, y) = (s.value(Var::A(a, b))?, s.value(Var::B(a, b))?);
            let rows: Vec<[Laurent; 3]> = quads().map(|q| family3_row(&deltas, &x, &y, q)).collect();
            match (&s.c, &s.d) {
                (Some(ce), Some(de)) => {
                    let (cv, dv) = (ce.eval(a, b)?, de.eval(a, b)?);
                    for (q, r) in quads().zip(&rows) {
                        let residual = &r[2] - &(&(&r[0] * &cv) + &(&r[1] * &dv));
                        if !residual.is_zero() {
                            let mut indices = vec![a, b];
                            indices.extend(q.iter().map(|&v| v as i64));
                            checked.push(RelationFailure { family: 3, indices, residual, cleared: false });
                        }
                    }
                }
                _ => solutions.push(((a, b), solve(&rows))),
            }
        }
    }
    let family3 = if s.c.is_some() && s.d.is_some() {
        Family3::Checked { failures: checked }
    } else {
        Family3::Solved { solutions }
    };
    Ok(RelationReport { window: s.window, family1: family1_failures, family2: family2_failures, family3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kauffman_family_one_holds_family_two_fails() {
        let r = check_relations(&Specialization::kauffman(2)).unwrap();
        assert!(r.family1.is_empty());
        assert_eq!(r.family2.len(), 125);
        // A·A·A^-1 + A^-1·A·A + A^-1·A·A^-1 - A·A^-1·A = A + A^-1
        assert_eq!(r.family2[0].residual, Laurent::monomial(1, 1) + Laurent::monomial(1, -1));
        // δ_0 = δ_1 makes every row proportional.
        let Family3::Solved { solutions } = &r.family3 else { panic!() };
        assert!(solutions.iter().all(|(_, s)| *s == Solve::Underdetermined));
    }

    #[test]
    fn units_with_minus_two() {
        let s = Specialization::new("A", 1, "1", "1", "-2", "-2").unwrap();
        assert!(check_relations(&s).unwrap().family1.is_empty());
    }

    #[test]
    fn non_unit_values_use_cleared_form() {
        let s = Specialization::new("t", 0, "1 + t", "1", "0", "0").unwrap();
        let r = check_relations(&s).unwrap();
        assert!(r.family1[0].cleared);
        // (1 + t)^2 + 1
        assert_eq!(r.family1[0].residual, Laurent::monomial(1, 2) + Laurent::monomial(2, 1) + Laurent::constant(2));
    }

    #[test]
    fn families_one_two_force_b_equal_minus_a() {
        let s = Specialization::new("t", 1, "t", "-t", "2", "2").unwrap();
        let r = check_relations(&s).unwrap();
        assert!(r.families_1_2_hold());
    }

    #[test]
    fn family_three_solved_and_checked() {
        // δ_1 = 0: rows with every index 1 read 0 = 0, the rest pin C and D.
        let s = Specialization::new("t", 0, "t", "-t", "2", "0").unwrap();
        let r = check_relations(&s).unwrap();
        let Family3::Solved { solutions } = &r.family3 else { panic!() };
        assert_eq!(solutions.len(), 1);
        assert_eq!(solutions[0].1, Solve::Inconsistent);
        let checked = check_relations(&s.clone().with_cd("0", "0").unwrap()).unwrap();
        let Family3::Checked { failures } = checked.family3 else { panic!() };
        assert!(!failures.is_empty());
    }
}
