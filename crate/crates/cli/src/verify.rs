//! End-to-end check that a PTE solution yields two trees agreeing up to `U_{k+1}`.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;
use utree_core::census::binomial;
use utree_core::poly::u_coefficient;
use utree_core::{
    build_pte_tree, canonical_form, poly_diff, pte_degree, u_k_polynomial, Coeff, IntSequence,
    Partition, PartitionPolynomial, PteDegree, PteShape, TreeError,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Shape(#[from] TreeError),
    #[error("p and p' have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("T_{alpha}({p}) and T_{alpha}({q}) are isomorphic")]
    Isomorphic { alpha: u32, p: String, q: String },
    #[error("max level {0} is below the requested enumeration level {1}")]
    Levels(usize, usize),
}

/// What to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Highest `m` for which `U_m` is compared. Defaults to `k + 2`.
    pub max_level: usize,
    /// Highest `m` whose `U_m` is enumerated in full; levels above it are
    /// decided only through the closed-form coefficient.
    pub enumerate_up_to: usize,
    pub with_timings: bool,
}

impl VerifyOptions {
    pub fn window(k: u32) -> Self {
        let m = k as usize + 2;
        VerifyOptions {
            max_level: m,
            enumerate_up_to: m,
            with_timings: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelStatus {
    Equal,
    Different,
    /// Not enumerated and not separated by the closed-form coefficient.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelResult {
    pub level: usize,
    pub status: LevelStatus,
    /// Content hashes of `U_m(T)` and `U_m(T')` when enumerated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hashes: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FirstDiff {
    pub level: usize,
    pub partition: Partition,
    pub coeff_a: String,
    pub coeff_b: String,
}

/// `[x_2^{k+1} x_{3α−1−2k} x_{N−3α−1}] U` on both sides, against `Σ C(p_i, k+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormCheck {
    pub partition: Partition,
    pub coeff_a: String,
    pub coeff_b: String,
    pub binomial_a: String,
    pub binomial_b: String,
    /// Both coefficients equal their binomial sums.
    pub values_match: bool,
    /// `coeff_a − coeff_b = Σ C(p_i, k+1) − Σ C(p'_i, k+1)`.
    pub difference_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub phase: String,
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub shape_a: PteShape,
    pub shape_b: PteShape,
    pub vertices: usize,
    /// The degree the caller claims.
    pub degree: u32,
    /// The degree measured from power sums.
    pub measured_degree: u32,
    pub isomorphic: bool,
    pub levels: Vec<LevelResult>,
    /// Largest `m ≤ max_level` with `U_m(T) = U_m(T')`, over decided levels.
    pub u_equal_level: usize,
    pub first_diff: Option<FirstDiff>,
    pub closed_form: Option<ClosedFormCheck>,
    /// Exact degree `k` implies equality through `k + 1` and a difference at `k + 2`.
    pub consistent_with_degree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

struct Clock {
    on: bool,
    phases: Vec<Timing>,
}

impl Clock {
    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.on {
            self.phases.push(Timing {
                phase: phase.to_string(),
                millis: Duration::as_millis(&start.elapsed()),
            });
        }
        out
    }
}

fn sequence(p: &[u32]) -> IntSequence {
    IntSequence::new_signed(p.iter().map(|&x| x as i64).collect())
}

/// The monomial `x_2^{k+1} x_{3α−1−2k} x_{N−3α−1}`, when all its indices are positive.
pub fn distinguishing_partition(alpha: u32, k: u32, vertices: usize) -> Option<Partition> {
    let mid = (3 * alpha as i64) - 1 - 2 * k as i64;
    let top = vertices as i64 - 3 * alpha as i64 - 1;
    if mid < 1 || top < 1 || k + 1 > alpha {
        return None;
    }
    let mut parts = vec![2u32; k as usize + 1];
    parts.extend([mid as u32, top as u32]);
    Partition::new(parts).ok()
}

fn closed_form(
    alpha: u32,
    p: &[u32],
    q: &[u32],
    k: u32,
    trees: (&utree_core::Tree, &utree_core::Tree),
) -> Option<ClosedFormCheck> {
    let lambda = distinguishing_partition(alpha, k, trees.0.vertex_count())?;
    let ca = u_coefficient(trees.0, &lambda);
    let cb = u_coefficient(trees.1, &lambda);
    let sum = |s: &[u32]| s.iter().map(|&x| binomial(x, k + 1) as Coeff).sum::<Coeff>();
    let (ba, bb) = (sum(p), sum(q));
    Some(ClosedFormCheck {
        partition: lambda,
        coeff_a: ca.to_string(),
        coeff_b: cb.to_string(),
        binomial_a: ba.to_string(),
        binomial_b: bb.to_string(),
        values_match: ca == ba && cb == bb,
        difference_matches: ca - cb == ba - bb,
    })
}

/// Builds `T_α(p)` and `T_α(p')`, compares `U_1, …, U_max_level`, and
/// cross-checks the distinguishing coefficient.
pub fn cmd_verify_encode(
    alpha: u32,
    p: &[u32],
    q: &[u32],
    k: u32,
    options: VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    if p.len() != q.len() {
        return Err(VerifyError::LengthMismatch(p.len(), q.len()));
    }
    if options.enumerate_up_to > options.max_level {
        return Err(VerifyError::Levels(options.max_level, options.enumerate_up_to));
    }
    let mut clock = Clock {
        on: options.with_timings,
        phases: Vec::new(),
    };
    let shape_a = PteShape::new(alpha, p.to_vec())?;
    let shape_b = PteShape::new(alpha, q.to_vec())?;
    let (ta, tb) = clock.time("build", || (build_pte_tree(&shape_a), build_pte_tree(&shape_b)));
    let isomorphic = clock.time("canonical", || canonical_form(&ta) == canonical_form(&tb));
    if isomorphic {
        let show = |s: &[u32]| s.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        return Err(VerifyError::Isomorphic {
            alpha,
            p: show(p),
            q: show(q),
        });
    }
    let measured_degree = match pte_degree(&sequence(p), &sequence(q)) {
        Ok(PteDegree::Exact(d)) => d,
        // equal multisets give isomorphic trees, handled above
        _ => unreachable!("non-isomorphic trees come from distinct multisets"),
    };

    let top = options.enumerate_up_to;
    let (ua, ub): (PartitionPolynomial, PartitionPolynomial) = clock.time("enumerate", || {
        (u_k_polynomial(&ta, top), u_k_polynomial(&tb, top))
    });
    let check = clock.time("closed-form", || closed_form(alpha, p, q, k, (&ta, &tb)));

    let mut levels = Vec::new();
    let mut first_diff = None;
    for level in 1..=options.max_level {
        let result = if level <= top {
            let (la, lb) = (ua.truncate_parts(level + 1), ub.truncate_parts(level + 1));
            let status = if la == lb {
                LevelStatus::Equal
            } else {
                if first_diff.is_none() {
                    let d = poly_diff(&la, &lb).into_iter().next().expect("unequal polynomials differ");
                    first_diff = Some(FirstDiff {
                        level,
                        partition: d.partition,
                        coeff_a: d.left.to_string(),
                        coeff_b: d.right.to_string(),
                    });
                }
                LevelStatus::Different
            };
            LevelResult {
                level,
                status,
                hashes: Some((la.content_hash(), lb.content_hash())),
            }
        } else {
            // The distinguishing monomial has k + 3 parts, so it lives in U_{k+2}.
            let separated = check.as_ref().is_some_and(|c| {
                c.coeff_a != c.coeff_b && level >= c.partition.len() - 1
            });
            let status = if separated || levels.last().is_some_and(|l: &LevelResult| l.status == LevelStatus::Different) {
                LevelStatus::Different
            } else {
                LevelStatus::Undecided
            };
            if status == LevelStatus::Different && first_diff.is_none() {
                if let Some(c) = &check {
                    first_diff = Some(FirstDiff {
                        level,
                        partition: c.partition.clone(),
                        coeff_a: c.coeff_a.clone(),
                        coeff_b: c.coeff_b.clone(),
                    });
                }
            }
            LevelResult {
                level,
                status,
                hashes: None,
            }
        };
        levels.push(result);
    }
    let u_equal_level = levels
        .iter()
        .take_while(|l| l.status == LevelStatus::Equal)
        .count();

    let kk = k as usize;
    let consistent_with_degree = measured_degree == k
        && u_equal_level >= (kk + 1).min(options.max_level)
        && (options.max_level < kk + 2
            || levels.get(kk + 1).is_some_and(|l| l.status == LevelStatus::Different));

    Ok(VerificationReport {
        vertices: ta.vertex_count(),
        shape_a,
        shape_b,
        degree: k,
        measured_degree,
        isomorphic,
        levels,
        u_equal_level,
        first_diff,
        closed_form: check,
        consistent_with_degree,
        timings: options.with_timings.then_some(clock.phases),
    })
}
