//! Exact coherence decisions.
//!
//! An assessment `M` on the assessed terms is coherent iff `M` lies in the
//! convex hull of the points `Q_h` of the constituents inside the union of
//! the antecedents, and, when some terms' antecedents receive zero mass in
//! every convex combination (the index set `I0`), the sub-assessment on
//! those terms is coherent in turn.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::crq::{conjunction_value_table, Case, ConjunctionTerm, ValueTable};
use crate::error::{Error, Result};
#[cfg(test)]
use crate::logic::Tag;
use crate::problem::AssessmentProblem;
use crate::rational::{self, Rational};
use crate::regions::{self, Family};
use crate::simplex::{self, LpOutcome};

/// The linear system `sum_h lambda_h Q_h = M, sum_h lambda_h = 1, lambda >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSystem {
    /// Problem term index of each row.
    pub rows: Vec<usize>,
    /// Constituent index (into the problem's table) of each column.
    pub columns: Vec<usize>,
    /// `matrix[r][c]` is the value of row `r`'s term on column `c`'s constituent.
    pub matrix: Vec<Vec<Rational>>,
    pub target: Vec<Rational>,
    /// Whether column `c` lies inside the antecedent of row `r`'s term.
    pub in_antecedent: Vec<Vec<bool>>,
}

impl SigmaSystem {
    fn lp_rows(&self) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let mut a = self.matrix.clone();
        a.push(vec![Rational::one(); self.columns.len()]);
        let mut b = self.target.clone();
        b.push(Rational::one());
        (a, b)
    }

    /// Checks `Q lambda = M`, `sum lambda = 1`, `lambda >= 0` exactly.
    pub fn is_solution(&self, lambda: &[Rational]) -> bool {
        lambda.len() == self.columns.len()
            && lambda.iter().all(|l| !l.is_negative())
            && lambda.iter().sum::<Rational>().is_one()
            && self
                .matrix
                .iter()
                .zip(&self.target)
                .all(|(row, mu)| row.iter().zip(lambda).map(|(q, l)| q * l).sum::<Rational>() == *mu)
    }

    fn antecedent_mass(&self, row: usize, lambda: &[Rational]) -> Rational {
        self.in_antecedent[row].iter().zip(lambda).filter(|(inside, _)| **inside).map(|(_, l)| l).sum()
    }
}

/// A separating hyperplane: `coefficients · Q_h + constant >= 0` on every
/// column while `coefficients · M + constant < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub coefficients: Vec<Rational>,
    pub constant: Rational,
}

impl Witness {
    pub fn at(&self, point: &[Rational]) -> Rational {
        self.coefficients.iter().zip(point).map(|(a, p)| a * p).sum::<Rational>() + &self.constant
    }

    pub fn separates(&self, sys: &SigmaSystem) -> bool {
        let column = |c: usize| sys.matrix.iter().map(|r| r[c].clone()).collect::<Vec<_>>();
        self.coefficients.len() == sys.rows.len()
            && (0..sys.columns.len()).all(|c| !self.at(&column(c)).is_negative())
            && self.at(&sys.target).is_negative()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(Witness),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Value tables of every assessed term, computed once per problem.
struct Tables<'a> {
    problem: &'a AssessmentProblem,
    tables: Vec<ValueTable>,
}

impl<'a> Tables<'a> {
    fn new(problem: &'a AssessmentProblem) -> Result<Self> {
        let tables = problem
            .terms()
            .iter()
            .map(|t| conjunction_value_table(t, problem.table(), problem.previsions()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { problem, tables })
    }

    fn sigma(&self, rows: &[usize]) -> SigmaSystem {
        let table = self.problem.table();
        let terms = self.problem.terms();
        let columns: Vec<usize> = (0..table.constituents.len())
            .filter(|&h| rows.iter().any(|&r| terms[r].within_antecedent(&table.constituents[h].pattern)))
            .collect();
        let matrix =
            rows.iter().map(|&r| columns.iter().map(|&h| self.tables[r].rows[h].value.clone()).collect()).collect();
        let in_antecedent = rows
            .iter()
            .map(|&r| columns.iter().map(|&h| terms[r].within_antecedent(&table.constituents[h].pattern)).collect())
            .collect();
        let target = rows.iter().map(|&r| self.problem.prevision_of(r).clone()).collect();
        SigmaSystem { rows: rows.to_vec(), columns, matrix, target, in_antecedent }
    }
}

pub fn build_sigma(problem: &AssessmentProblem) -> Result<SigmaSystem> {
    let rows: Vec<usize> = (0..problem.terms().len()).collect();
    Ok(Tables::new(problem)?.sigma(&rows))
}

pub fn feasible(sys: &SigmaSystem) -> Feasibility {
    let (a, b) = sys.lp_rows();
    match simplex::solve(&a, &b, None) {
        LpOutcome::Optimal { x, .. } => {
            debug_assert!(sys.is_solution(&x));
            Feasibility::Feasible(x)
        }
        LpOutcome::Infeasible { mut farkas } => {
            let constant = farkas.pop().expect("normalisation row");
            let w = Witness { coefficients: farkas, constant };
            debug_assert!(w.separates(sys));
            Feasibility::Infeasible(w)
        }
        LpOutcome::Unbounded => unreachable!("feasibility has no objective"),
    }
}

fn maximise_mass(sys: &SigmaSystem, row: usize) -> Result<(Rational, Vec<Rational>)> {
    if row >= sys.rows.len() {
        return Err(Error::RowIndex { index: row, len: sys.rows.len() });
    }
    let (a, b) = sys.lp_rows();
    let objective: Vec<Rational> =
        sys.in_antecedent[row].iter().map(|&inside| if inside { Rational::one() } else { Rational::zero() }).collect();
    match simplex::solve(&a, &b, Some(&objective)) {
        LpOutcome::Optimal { x, value } => Ok((value, x)),
        LpOutcome::Infeasible { .. } => Err(Error::Infeasible),
        LpOutcome::Unbounded => unreachable!("the solution set is a polytope"),
    }
}

/// Maximum over all solutions of the mass on constituents inside row `row`'s antecedent.
pub fn max_antecedent_mass(sys: &SigmaSystem, row: usize) -> Result<Rational> {
    maximise_mass(sys, row).map(|(v, _)| v)
}

/// Row indices (positions in `sys.rows`) whose antecedent mass is zero on every solution.
fn zero_mass_rows(sys: &SigmaSystem, lambda: &[Rational]) -> Result<Vec<usize>> {
    let n = sys.rows.len();
    let mut positive: Vec<bool> = (0..n).map(|r| sys.antecedent_mass(r, lambda).is_positive()).collect();
    for r in 0..n {
        if positive[r] {
            continue;
        }
        let (best, x) = maximise_mass(sys, r)?;
        if best.is_positive() {
            for (k, p) in positive.iter_mut().enumerate() {
                *p = *p || sys.antecedent_mass(k, &x).is_positive();
            }
        }
    }
    Ok((0..n).filter(|&r| !positive[r]).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelOutcome {
    Solved {
        lambda: Vec<Rational>,
        /// `I0` as problem term indices.
        zero_mass: Vec<usize>,
    },
    Infeasible(Witness),
}

/// One step of the recursion: the system on the current terms and its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub system: SigmaSystem,
    pub outcome: LevelOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceVerdict {
    pub coherent: bool,
    pub levels: Vec<Level>,
    /// Set when a level's `I0` equalled its whole index set (the recursion
    /// was then cut with a coherent verdict).
    pub stalled: bool,
}

impl CoherenceVerdict {
    pub fn witness(&self) -> Option<&Witness> {
        match &self.levels.last()?.outcome {
            LevelOutcome::Infeasible(w) => Some(w),
            LevelOutcome::Solved { .. } => None,
        }
    }
}

pub fn check_coherence(problem: &AssessmentProblem) -> Result<CoherenceVerdict> {
    let tables = Tables::new(problem)?;
    let mut rows: Vec<usize> = (0..problem.terms().len()).collect();
    let mut levels = Vec::new();
    loop {
        let system = tables.sigma(&rows);
        match feasible(&system) {
            Feasibility::Infeasible(w) => {
                levels.push(Level { system, outcome: LevelOutcome::Infeasible(w) });
                return Ok(CoherenceVerdict { coherent: false, levels, stalled: false });
            }
            Feasibility::Feasible(lambda) => {
                let zero_mass: Vec<usize> =
                    zero_mass_rows(&system, &lambda)?.into_iter().map(|k| system.rows[k]).collect();
                let next = zero_mass.clone();
                let stalled = !next.is_empty() && next.len() == rows.len();
                levels.push(Level { system, outcome: LevelOutcome::Solved { lambda, zero_mass } });
                if next.is_empty() || stalled {
                    return Ok(CoherenceVerdict { coherent: true, levels, stalled });
                }
                rows = next;
            }
        }
    }
}

pub fn is_coherent(problem: &AssessmentProblem) -> Result<bool> {
    Ok(check_coherence(problem)?.coherent)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionMethod {
    /// Endpoints from a closed-form region, certified by the engine.
    ClosedForm(Family),
    /// Endpoints from minimising/maximising the target over the solution polytope, certified.
    LinearProgram,
    /// Endpoints located by bisection on engine verdicts, to within [`EXTENSION_TOLERANCE`].
    Bisection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub lower: Rational,
    pub upper: Rational,
    /// True when both endpoints are certified exact.
    pub exact: bool,
    pub method: ExtensionMethod,
}

/// Probe distance used to certify that an endpoint is sharp: `10^-9`.
pub fn extension_tolerance() -> Rational {
    rational::rat(1, 1_000_000_000)
}

/// Documented alias of [`extension_tolerance`] as a float.
pub const EXTENSION_TOLERANCE: f64 = 1e-9;

/// The closed interval of values of `target` that extend `problem` coherently.
pub fn extension_interval(problem: &AssessmentProblem, target: &ConjunctionTerm) -> Result<Extension> {
    extension(problem, target, true)
}

/// As [`extension_interval`], without closed-form candidates.
pub fn extension_interval_lp(problem: &AssessmentProblem, target: &ConjunctionTerm) -> Result<Extension> {
    extension(problem, target, false)
}

fn extension(problem: &AssessmentProblem, target: &ConjunctionTerm, closed_form: bool) -> Result<Extension> {
    target.check_range(problem.conditionals().len())?;
    if problem.terms().contains(target) {
        return Err(Error::TargetAssessed(target.clone()));
    }
    if !is_coherent(problem)? {
        return Err(Error::IncoherentBase);
    }
    let coherent_at = |z: &Rational| -> Result<bool> {
        if !rational::in_unit_interval(z) {
            return Ok(false);
        }
        is_coherent(&problem.with_assessment(target.clone(), z.clone())?)
    };
    // Validates sub-previsions before any probing.
    problem.with_assessment(target.clone(), Rational::zero())?;

    let closed = if closed_form { regions::closed_form_extension(problem, target) } else { None };
    let candidate = match closed {
        Some((family, b)) => Some((b.lower, b.upper, ExtensionMethod::ClosedForm(family))),
        None => lp_projection(problem, target)?.map(|(lo, hi)| (lo, hi, ExtensionMethod::LinearProgram)),
    };

    let eps = extension_tolerance();
    let mut seeds = Vec::new();
    if let Some((lo, hi, method)) = candidate {
        if lo <= hi
            && coherent_at(&lo)?
            && coherent_at(&hi)?
            && !coherent_at(&(&lo - &eps))?
            && !coherent_at(&(&hi + &eps))?
        {
            return Ok(Extension { lower: lo, upper: hi, exact: true, method });
        }
        seeds.push((&lo + &hi) / rational::int(2));
        seeds.push(lo);
        seeds.push(hi);
    }
    seeds.extend((0..=64).map(|k| rational::rat(k, 64)));

    let mut seed = None;
    for s in seeds {
        if coherent_at(&s)? {
            seed = Some(s);
            break;
        }
    }
    let seed = seed.ok_or_else(|| Error::NoCoherentExtension(target.clone()))?;

    let lower = if coherent_at(&Rational::zero())? {
        Rational::zero()
    } else {
        bisect(Rational::zero(), seed.clone(), &eps, &coherent_at)?
    };
    let upper = if coherent_at(&Rational::one())? {
        Rational::one()
    } else {
        bisect(Rational::one(), seed, &eps, &coherent_at)?
    };
    Ok(Extension { lower, upper, exact: false, method: ExtensionMethod::Bisection })
}

/// Shrinks `[bad, good]` (in either order) below `eps`; returns the coherent end.
fn bisect(
    mut bad: Rational,
    mut good: Rational,
    eps: &Rational,
    coherent_at: &dyn Fn(&Rational) -> Result<bool>,
) -> Result<Rational> {
    let two = rational::int(2);
    while (&good - &bad).abs() > *eps {
        let mid = (&good + &bad) / &two;
        if coherent_at(&mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(good)
}

/// Range of the target's value over the convex hull constraints of the
/// augmented system, when the target's prevision never appears inside the
/// union of the antecedents (so the system stays linear in it).
fn lp_projection(problem: &AssessmentProblem, target: &ConjunctionTerm) -> Result<Option<(Rational, Rational)>> {
    let augmented = problem.with_assessment(target.clone(), Rational::zero())?;
    let tables = Tables::new(&augmented)?;
    let all: Vec<usize> = (0..augmented.terms().len()).collect();
    let sys = tables.sigma(&all);
    let t = all.len() - 1;
    let own = Case::Prevision(target.clone());
    if sys.columns.iter().any(|&h| tables.tables[t].rows[h].case == own) {
        return Ok(None);
    }
    let mut a: Vec<Vec<Rational>> = sys.matrix[..t].to_vec();
    a.push(vec![Rational::one(); sys.columns.len()]);
    let mut b: Vec<Rational> = sys.target[..t].to_vec();
    b.push(Rational::one());
    let objective = &sys.matrix[t];
    let negated: Vec<Rational> = objective.iter().map(|v| -v).collect();
    let hi = match simplex::solve(&a, &b, Some(objective)) {
        LpOutcome::Optimal { value, .. } => value,
        _ => return Ok(None),
    };
    let lo = match simplex::solve(&a, &b, Some(&negated)) {
        LpOutcome::Optimal { value, .. } => -value,
        _ => return Ok(None),
    };
    Ok(Some((lo, hi)))
}
