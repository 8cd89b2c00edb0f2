//! Maps between Dyck paths and lecture hall paths, and the two-colouring of
//! horizontal steps that reduces general Motzkin paths to Dyck paths.
//!
//! A Dyck path of length 2n from 0 to 2k (even case) or of length 2n+1 from
//! 0 to 2k+1 (odd case) is read right to left. Each down step becomes an east
//! step and each up step a south step, starting just below the top point
//! (k,2). The running height of the Dyck path is i+j on level 1 and j-1 on
//! level 0 in the even case, i+j+1 and j in the odd case.

use std::fmt;
use std::sync::Arc;

use crate::lecturehall::{
    level0_bottom, partial_weight_sum, GammaWeights, LambdaWeights, Parity, SePath, SeStepKind, SlhPoint, SlhVertex,
};
use crate::motzkin::{self, MotzkinPath, Step};
use crate::orthopoly::{mixed_moment, RecurrenceSpec};
use crate::ring::{Indet, Poly};
use crate::Error;

fn level_height(v: &SlhVertex, parity: Parity) -> i64 {
    let (i, j) = (v.i as i64, v.j as i64);
    match (parity, v.t) {
        (Parity::Even, 1) => i + j,
        (Parity::Even, _) => j - 1,
        (Parity::Odd, 1) => i + j + 1,
        (Parity::Odd, _) => j,
    }
}

/// (n, k) such that a Dyck path with these endpoints lands on (k,2) → (n,0).
fn dyck_shape(p: &MotzkinPath, parity: Parity) -> Result<(usize, usize), Error> {
    if p.has_horizontal() {
        return Err(Error::HasHorizontalStep);
    }
    let (len, end) = (p.len(), p.end_height());
    let odd = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    if p.start_height() != 0 || len % 2 != odd || end % 2 != odd {
        return Err(Error::BadEndpoints(format!(
            "length {len}, heights {} -> {end} do not fit the {parity:?} case",
            p.start_height()
        )));
    }
    Ok(((len - odd) / 2, (end - odd) / 2))
}

pub fn dyck_to_slh(p: &MotzkinPath, parity: Parity) -> Result<SePath, Error> {
    let (_, k) = dyck_shape(p, parity)?;
    let start = SlhPoint::Top(k);
    let mut cur = start.south().expect("top points have a south edge");
    let mut vertices = vec![cur];
    for s in p.steps().iter().rev() {
        let next = match s {
            Step::D => Some(cur.east()),
            _ => cur.south(),
        };
        cur = next.ok_or_else(|| Error::InvalidPath(format!("no south step below {cur}")))?;
        vertices.push(cur);
    }
    if parity == Parity::Even {
        if cur.t == 1 {
            cur = cur.south().expect("level 1 always has a south step");
            vertices.push(cur);
        }
        if cur.j > 0 {
            cur = cur.south().expect("j > 0");
            vertices.push(cur);
        }
    }
    SePath::new(start, vertices)
}

pub fn slh_to_motzkin(p: &SePath, parity: Parity) -> Result<MotzkinPath, Error> {
    let bad = || Error::BadEndpoints(format!("{p} does not run from a top point to a bottom vertex of level 0"));
    let k = match p.start() {
        SlhPoint::Top(k) => k,
        _ => return Err(bad()),
    };
    let n = match p.end() {
        SlhPoint::Vertex(v) if v.t == 0 && v.j == 0 => v.i,
        _ => return Err(bad()),
    };
    let mut steps = p.steps();
    steps.remove(0);
    if parity == Parity::Even {
        steps.pop();
    }
    let letters: Vec<Step> = steps
        .iter()
        .rev()
        .map(|s| match s.kind {
            SeStepKind::East => Step::D,
            SeStepKind::South => Step::U,
        })
        .collect();
    // Every vertex after the first south step must sit at non-negative height.
    if let Some(v) = steps.iter().find(|s| level_height(&s.to, parity) < 0) {
        return Err(Error::InvalidPath(format!("{p} passes {} below the axis", v.to)));
    }
    let out = MotzkinPath::new(0, letters)?;
    let end = match parity {
        Parity::Even => 2 * k,
        Parity::Odd => 2 * k + 1,
    };
    if out.end_height() != end || dyck_shape(&out, parity)?.0 != n {
        return Err(bad());
    }
    Ok(out)
}

/// γ sequences with b_k = γ_{2k} + γ_{2k+1} and λ_k = γ_{2k}·γ_{2k-1}.
#[derive(Clone)]
pub struct GammaSpec {
    label: String,
    gamma: Arc<dyn Fn(usize) -> Poly + Send + Sync>,
}

impl fmt::Debug for GammaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GammaSpec").field("label", &self.label).finish()
    }
}

impl GammaSpec {
    pub fn new(label: impl Into<String>, gamma: impl Fn(usize) -> Poly + Send + Sync + 'static) -> Self {
        GammaSpec { label: label.into(), gamma: Arc::new(gamma) }
    }

    /// γ_i left as the indeterminate g_i.
    pub fn symbolic() -> Self {
        Self::new("symbolic", |i| Poly::var(Indet::G(i)))
    }

    /// γ_{2k} = k + α, γ_{2k+1} = k + 1.
    pub fn laguerre(alpha: Poly) -> Self {
        let label = format!("laguerre:{alpha}");
        Self::new(label, move |i| {
            let k = Poly::int((i / 2) as i64);
            if i % 2 == 0 {
                &k + &alpha
            } else {
                &k + &Poly::one()
            }
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn gamma(&self, i: usize) -> Poly {
        (self.gamma)(i)
    }

    pub fn induced_b(&self, k: usize) -> Poly {
        &self.gamma(2 * k) + &self.gamma(2 * k + 1)
    }

    pub fn induced_lambda(&self, k: usize) -> Poly {
        if k == 0 {
            return Poly::zero();
        }
        &self.gamma(2 * k) * &self.gamma(2 * k - 1)
    }

    pub fn induced_spec(&self) -> RecurrenceSpec {
        let (b, l) = (self.clone(), self.clone());
        RecurrenceSpec::custom(
            format!("induced[{}]", self.label),
            move |k| b.induced_b(k),
            move |k| l.induced_lambda(k),
        )
    }

    pub fn weights(&self) -> GammaWeights {
        let g = self.clone();
        GammaWeights::new(self.label.clone(), move |i| g.gamma(i))
    }

    /// Checks b_k and λ_k against `spec` for k ≤ upto.
    pub fn check_induces(&self, spec: &RecurrenceSpec, upto: usize) -> Result<(), Error> {
        for k in 0..=upto {
            if self.induced_b(k) != spec.b(k) {
                return Err(Error::GammaMismatch(format!("b_{k} of {}", spec.label())));
            }
            if self.induced_lambda(k) != spec.lambda(k) {
                return Err(Error::GammaMismatch(format!("λ_{k} of {}", spec.label())));
            }
        }
        Ok(())
    }
}

/// Product of γ_{H-1} over the down steps of `p`, H the height the step leaves.
pub fn gamma_weight(g: &GammaSpec, p: &MotzkinPath) -> Poly {
    let mut w = Poly::one();
    for (s, h) in p.steps().iter().zip(p.heights()) {
        if *s == Step::D {
            w = &w * &g.gamma(h - 1);
        }
    }
    w
}

/// Doubles every step of `p`: U → UU, D → DD, and a horizontal step becomes
/// UD or DU. A path starting at height m yields paths starting at 2m+1, so
/// that a down step leaving height H weighs γ_{H-1}. Choices are listed with
/// UD before DU, earlier steps varying slowest.
pub fn expand_horizontals(g: &GammaSpec, p: &MotzkinPath) -> Vec<(MotzkinPath, Poly)> {
    let mut partial: Vec<Vec<Step>> = vec![Vec::with_capacity(2 * p.len())];
    for s in p.steps() {
        let choices: &[[Step; 2]] = match s {
            Step::U => &[[Step::U, Step::U]],
            Step::D => &[[Step::D, Step::D]],
            Step::H => &[[Step::U, Step::D], [Step::D, Step::U]],
        };
        partial = partial
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.extend_from_slice(c);
                    next
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .map(|steps| {
            let q = MotzkinPath::new(2 * p.start_height() + 1, steps).expect("doubled heights stay above 0");
            let w = gamma_weight(g, &q);
            (q, w)
        })
        .collect()
}

fn check_b_zero(spec: &RecurrenceSpec, upto: usize) -> Result<(), Error> {
    match spec.first_nonzero_b(upto) {
        Some(i) => Err(Error::NonzeroB(i)),
        None => Ok(()),
    }
}

/// The even and odd sides of the b ≡ 0 identity at (n, k):
/// (σ_{2n,2k}, w_e sum, σ_{2n+1,2k+1}, w_o sum).
pub fn thm35_sides(spec: &RecurrenceSpec, n: usize, k: usize, cap: u64) -> Result<[Poly; 4], Error> {
    check_b_zero(spec, 2 * n + 1)?;
    let from = SlhPoint::Top(k);
    let to = level0_bottom(n);
    let we = LambdaWeights::even(spec.clone());
    let wo = LambdaWeights::odd(spec.clone());
    let (even_sigma, odd_sigma) = if k > n {
        (Poly::zero(), Poly::zero())
    } else {
        (mixed_moment(spec, 2 * n, 2 * k), mixed_moment(spec, 2 * n + 1, 2 * k + 1))
    };
    Ok([
        even_sigma,
        partial_weight_sum(&we, from, to, cap)?,
        odd_sigma,
        partial_weight_sum(&wo, from, to, cap)?,
    ])
}

/// σ_{2n,2k} and σ_{2n+1,2k+1} against the w_e and w_o lecture hall sums.
pub fn verify_thm35(spec: &RecurrenceSpec, n: usize, k: usize) -> Result<bool, Error> {
    let [a, b, c, d] = thm35_sides(spec, n, k, crate::enum_cap_from_env())?;
    Ok(a == b && c == d)
}

/// (σ_{n,k}, w_γ sum over (k,2) → (n,0)).
pub fn thm38_sides(spec: &RecurrenceSpec, g: &GammaSpec, n: usize, k: usize, cap: u64) -> Result<[Poly; 2], Error> {
    g.check_induces(spec, n + 1)?;
    let sigma = if k > n { Poly::zero() } else { mixed_moment(spec, n, k) };
    let sum = partial_weight_sum(&g.weights(), SlhPoint::Top(k), level0_bottom(n), cap)?;
    Ok([sigma, sum])
}

pub fn verify_thm38(spec: &RecurrenceSpec, g: &GammaSpec, n: usize, k: usize) -> Result<bool, Error> {
    let [a, b] = thm38_sides(spec, g, n, k, crate::enum_cap_from_env())?;
    Ok(a == b)
}

/// All Dyck paths of the shape matching (n, k) and `parity`.
pub fn dyck_paths(n: usize, k: usize, parity: Parity, cap: u64) -> Result<Vec<MotzkinPath>, Error> {
    let (len, end) = match parity {
        Parity::Even => (2 * n, 2 * k),
        Parity::Odd => (2 * n + 1, 2 * k + 1),
    };
    motzkin::enumerate(0, end, len, motzkin::EnumOptions::dyck().with_cap(cap))
}
