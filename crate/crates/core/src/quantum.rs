//! Position moments of the harmonic oscillator (ħ/2 = M = ω = 1, x̂ = a + a†)
//! and of the hydrogen radial states (x = 2r/(m a₀)).
//!
//! Every moment is available along several routes. The integral oracles do
//! not touch the path machinery: they expand the squared wave function into
//! monomials and integrate with (2k-1)!! or s!.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bijection::GammaSpec;
use crate::lecturehall::{partial_weight_sum, LambdaWeights, Parity, SlhPoint, WeightSystem};
use crate::motzkin::{self, EnumOptions};
use crate::orthopoly::{default_transfer_dim, lin_coeff, transfer_power, RecurrenceSpec, Route};
use crate::ring::{Poly, Rat};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QhoState {
    pub m: usize,
}

impl QhoState {
    pub fn new(m: usize) -> Self {
        QhoState { m }
    }
}

/// Radial state R_{ml}: principal number m ≥ 1, 0 ≤ l ≤ m-1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HydrogenState {
    m: usize,
    l: usize,
}

impl HydrogenState {
    pub fn new(m: usize, l: usize) -> Result<Self, Error> {
        if m == 0 || l >= m {
            return Err(Error::InvalidState(format!("need m >= 1 and 0 <= l < m, got m={m}, l={l}")));
        }
        Ok(HydrogenState { m, l })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Degree of the Laguerre factor, m - l - 1.
    pub fn k(&self) -> usize {
        self.m - self.l - 1
    }

    /// Laguerre parameter 2l + 1.
    pub fn alpha(&self) -> usize {
        2 * self.l + 1
    }

    pub fn spec(&self) -> RecurrenceSpec {
        RecurrenceSpec::laguerre(Poly::int(self.alpha() as i64))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LadderOp {
    Lower,
    Raise,
}

/// A word in a and a†, written left to right; the rightmost letter acts first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LadderWord(pub Vec<LadderOp>);

impl LadderWord {
    /// ⟨m| word |m⟩. Open words vanish; a closed word contributes the squares
    /// of its raising factors, one (j+1) per a† taking j to j+1.
    pub fn value(&self, m: usize) -> Rat {
        let mut level = m as i64;
        let mut v = BigInt::one();
        for op in self.0.iter().rev() {
            match op {
                LadderOp::Raise => {
                    v *= level + 1;
                    level += 1;
                }
                LadderOp::Lower => {
                    if level == 0 {
                        return Rat::zero();
                    }
                    level -= 1;
                }
            }
        }
        if level != m as i64 {
            return Rat::zero();
        }
        Rat::from_integer(v)
    }
}

impl fmt::Display for LadderWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|op| match op {
                LadderOp::Lower => "a",
                LadderOp::Raise => "a†",
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for LadderWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        s.split_whitespace()
            .map(|t| match t {
                "a" => Ok(LadderOp::Lower),
                "a†" | "a+" | "ad" => Ok(LadderOp::Raise),
                _ => Err(Error::Parse(format!("bad ladder operator `{t}`"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(LadderWord)
    }
}

/// All 2ⁿ words of length n with their values at |m⟩, a before a† and the
/// leftmost letter varying slowest.
pub fn ladder_expansion(m: usize, n: usize) -> Vec<(LadderWord, Rat)> {
    (0..1u64 << n)
        .map(|bits| {
            let word = LadderWord(
                (0..n)
                    .map(|i| if bits >> (n - 1 - i) & 1 == 1 { LadderOp::Raise } else { LadderOp::Lower })
                    .collect(),
            );
            let v = word.value(m);
            (word, v)
        })
        .collect()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// (2k-1)!!, the Gaussian moment E[x^{2k}].
fn double_factorial_odd(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * (2 * i - 1))
}

fn square(coeffs: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); (2 * coeffs.len()).saturating_sub(1)];
    for (i, a) in coeffs.iter().enumerate() {
        for (j, b) in coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Coefficients of He_m, the monic Hermite polynomial for the weight e^{-x²/2}.
fn hermite_he(m: usize) -> Vec<Rat> {
    let mut prev: Vec<Rat> = vec![];
    let mut cur = vec![Rat::one()];
    for n in 0..m {
        let mut next = vec![Rat::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * Rat::from_integer(n.into());
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// (1/(√(2π) m!)) ∫ xⁿ He_m(x)² e^{-x²/2} dx.
pub fn qho_integral_oracle(m: usize, n: usize) -> Rat {
    let total: Rat = square(&hermite_he(m))
        .iter()
        .enumerate()
        .filter(|(j, c)| (n + j).is_multiple_of(2) && !c.is_zero())
        .map(|(j, c)| c * Rat::from_integer(double_factorial_odd((n + j) / 2)))
        .sum();
    total / Rat::from_integer(factorial(m))
}

/// σ^H_{2n,2k} = (2n)!/(2^{n-k}(2k)!(n-k)!) and
/// σ^H_{2n+1,2k+1} = (2n+1)!/(2^{n-k}(2k+1)!(n-k)!).
pub fn hermite_mixed_closed(n: usize, k: usize, parity: Parity) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let odd = matches!(parity, Parity::Odd) as usize;
    let num = factorial(2 * n + odd);
    let den = (BigInt::one() << (n - k)) * factorial(2 * k + odd) * factorial(n - k);
    Rat::new(num, den)
}

fn constant(p: &Poly) -> Result<Rat, Error> {
    p.as_constant()
        .ok_or_else(|| Error::InvalidState(format!("expected a number, got {p}")))
}

/// E[x^{2n}] at ψ_s as a lecture hall sum with the start column shifted by k.
/// Even s uses w_e from (c, (s+2)/(c+1)) to (c+n, (s+1)/(c+n+1)) with
/// c = s/2 + k; odd s uses w_o from (c, (s+1)/(c+1)) to (c+n, s/(c+n+1))
/// with c = (s-1)/2 + k. Sums leave the start point by its south step.
pub fn qho_lecturehall_moment(s: usize, n: usize, k: usize, cap: u64) -> Result<Rat, Error> {
    let spec = RecurrenceSpec::hermite();
    let c = s / 2 + k;
    let (ws, top, bottom) = if s.is_multiple_of(2) {
        (LambdaWeights::even(spec), s + 2, s + 1)
    } else {
        (LambdaWeights::odd(spec), s + 1, s)
    };
    let from = SlhPoint::from_coords(c, &Rat::new(top.into(), (c + 1).into()))?;
    let to = match SlhPoint::from_coords(c + n, &Rat::new(bottom.into(), (c + n + 1).into()))? {
        SlhPoint::Vertex(v) => v,
        SlhPoint::Top(_) => return Err(Error::BadEndpoints("path cannot end at a top point".into())),
    };
    constant(&partial_weight_sum(&ws as &dyn WeightSystem, from, to, cap)?)
}

/// Routes [`qho_moment`] accepts.
pub const QHO_ROUTES: [Route; 7] = [
    Route::Recurrence,
    Route::Transfer,
    Route::Motzkin,
    Route::ModifiedWeights,
    Route::Ladder,
    Route::Integral,
    Route::LectureHall,
];

/// E[x̂ⁿ] at ψ_m, which is σ^H_{n,m,m}.
pub fn qho_moment(state: QhoState, n: usize, route: Route) -> Result<Rat, Error> {
    let m = state.m;
    let spec = RecurrenceSpec::hermite();
    let cap = crate::enum_cap_from_env();
    match route {
        Route::Recurrence => constant(&lin_coeff(&spec, n, m, m)),
        Route::Transfer => {
            let t = transfer_power(&spec, n, default_transfer_dim(n, m, m));
            constant(t.entry(m, m)?)
        }
        Route::Motzkin => constant(&motzkin::sigma_by_enumeration(&spec, n, m, m, EnumOptions::dyck().with_cap(cap))?),
        Route::ModifiedWeights => {
            let mut total = Poly::zero();
            for p in motzkin::enumerate(m, m, n, EnumOptions::dyck().with_cap(cap))? {
                total += &motzkin::reduced_modified_weight(&spec, &p)?;
            }
            constant(&total)
        }
        Route::Ladder => Ok(ladder_expansion(m, n).into_iter().map(|(_, v)| v).sum()),
        Route::Integral => Ok(qho_integral_oracle(m, n)),
        Route::LectureHall => {
            if n % 2 == 1 {
                return Ok(Rat::zero());
            }
            qho_lecturehall_moment(m, n / 2, 0, cap)
        }
        Route::ClosedForm => Err(Error::UnsupportedRoute(route.to_string())),
    }
}

/// E[p̂ⁿ] at ψ_m. The momentum moments coincide with the position moments.
pub fn qho_momentum_moment(state: QhoState, n: usize, route: Route) -> Result<Rat, Error> {
    qho_moment(state, n, route)
}

/// σ^L_{n,k} = C(n,k)·Π_{i=k+1}^{n} (i + α).
pub fn laguerre_mixed_closed(n: usize, k: usize, alpha: &Poly) -> Poly {
    if k > n {
        return Poly::zero();
    }
    let c = Poly::constant(Rat::from_integer(binomial(n, k)));
    (k + 1..=n).fold(c, |acc, i| &acc * &(&Poly::int(i as i64) + alpha))
}

/// Coefficients of the monic Laguerre polynomial of degree k for x^α e^{-x},
/// which is (-1)^k k! times the classical L_k^{(α)}.
fn laguerre_l(k: usize, alpha: usize) -> Vec<Rat> {
    (0..=k)
        .map(|i| {
            let sign = if (k + i).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
            Rat::new(sign * factorial(k) * binomial(k + alpha, k - i), factorial(i))
        })
        .collect()
}

/// (1/(2m (m-l-1)! (m+l)!)) ∫₀^∞ x^{n+2l+2} (L_{m-l-1}^{(2l+1)}(x))² e^{-x} dx.
pub fn hydrogen_integral_oracle(state: HydrogenState, n: usize) -> Rat {
    let (m, l) = (state.m, state.l);
    let total: Rat = square(&laguerre_l(state.k(), state.alpha()))
        .iter()
        .enumerate()
        .map(|(j, c)| c * Rat::from_integer(factorial(j + n + 2 * l + 2)))
        .sum();
    total / Rat::from_integer(BigInt::from(2 * m) * factorial(m - l - 1) * factorial(m + l))
}

/// Lecture hall sum with γ^L weights from (k,2) to (k+n+1, (2k+1)/(k+n+2)).
fn hydrogen_lecturehall_sigma(state: HydrogenState, n: usize, cap: u64) -> Result<Rat, Error> {
    let k = state.k();
    let g = GammaSpec::laguerre(Poly::int(state.alpha() as i64));
    let end = SlhPoint::from_coords(k + n + 1, &Rat::new((2 * k + 1).into(), (k + n + 2).into()))?;
    let SlhPoint::Vertex(to) = end else {
        return Err(Error::BadEndpoints("path cannot end at a top point".into()));
    };
    constant(&partial_weight_sum(&g.weights(), SlhPoint::Top(k), to, cap)?)
}

/// Routes [`hydrogen_moment_by`] accepts.
pub const HYDROGEN_ROUTES: [Route; 5] =
    [Route::Recurrence, Route::Transfer, Route::Motzkin, Route::Integral, Route::LectureHall];

/// E[xⁿ] at R_{ml}, computed as σ^L_{n+1,k,k}/(2m) with k = m-l-1, α = 2l+1.
pub fn hydrogen_moment(state: HydrogenState, n: usize) -> Rat {
    let k = state.k();
    let sigma = constant(&lin_coeff(&state.spec(), n + 1, k, k)).expect("numeric family");
    sigma / Rat::from_integer((2 * state.m).into())
}

pub fn hydrogen_moment_by(state: HydrogenState, n: usize, route: Route) -> Result<Rat, Error> {
    let k = state.k();
    let spec = state.spec();
    let cap = crate::enum_cap_from_env();
    let norm = Rat::from_integer((2 * state.m).into());
    let sigma = match route {
        Route::Recurrence => return Ok(hydrogen_moment(state, n)),
        Route::Integral => return Ok(hydrogen_integral_oracle(state, n)),
        Route::Transfer => {
            let t = transfer_power(&spec, n + 1, default_transfer_dim(n + 1, k, k));
            constant(t.entry(k, k)?)?
        }
        Route::Motzkin => constant(&motzkin::sigma_by_enumeration(
            &spec,
            n + 1,
            k,
            k,
            EnumOptions::default().with_cap(cap),
        )?)?,
        Route::LectureHall => hydrogen_lecturehall_sigma(state, n, cap)?,
        _ => return Err(Error::UnsupportedRoute(route.to_string())),
    };
    Ok(sigma / norm)
}
