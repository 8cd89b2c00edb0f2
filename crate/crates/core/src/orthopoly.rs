//! Monic orthogonal polynomial families given by their three-term recurrence
//! p_{n+1} = (x - b_n) p_n - λ_n p_{n-1}, and the coefficients σ_{n,m,k} of
//! p_k in x^n p_m.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::json;

use crate::ring::{int, Indet, Poly};
use crate::Error;

type Coefficients = Arc<dyn Fn(usize) -> Poly + Send + Sync>;

#[derive(Clone)]
enum Family {
    Hermite,
    Laguerre(Poly),
    Symbolic,
    Custom { b: Coefficients, lambda: Coefficients },
}

/// The sequences (b_n, λ_n) of a monic family. λ_0 is always zero.
#[derive(Clone)]
pub struct RecurrenceSpec {
    label: String,
    family: Family,
}

impl fmt::Debug for RecurrenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RecurrenceSpec").field("label", &self.label).finish()
    }
}

impl RecurrenceSpec {
    /// Monic Hermite: b_n = 0, λ_n = n.
    pub fn hermite() -> Self {
        RecurrenceSpec { label: "hermite".into(), family: Family::Hermite }
    }

    /// Monic Laguerre: b_m = 2m + α + 1, λ_m = m(m + α). `alpha` may be a
    /// rational constant or contain the indeterminate α.
    pub fn laguerre(alpha: Poly) -> Self {
        RecurrenceSpec { label: format!("laguerre:{alpha}"), family: Family::Laguerre(alpha) }
    }

    /// Laguerre with α left as an indeterminate.
    pub fn laguerre_symbolic() -> Self {
        Self::laguerre(Poly::var(Indet::Alpha))
    }

    /// b_n and λ_n are the free indeterminates b_n, λ_n.
    pub fn symbolic() -> Self {
        RecurrenceSpec { label: "symbolic".into(), family: Family::Symbolic }
    }

    /// b_n = 0 with λ_n left as the indeterminate λ_n.
    pub fn symbolic_lambda() -> Self {
        Self::custom("symbolic-lambda", |_| Poly::zero(), |n| Poly::var(Indet::L(n)))
    }

    /// A user-supplied family. The value returned for λ_0 is ignored.
    pub fn custom<B, L>(label: impl Into<String>, b: B, lambda: L) -> Self
    where
        B: Fn(usize) -> Poly + Send + Sync + 'static,
        L: Fn(usize) -> Poly + Send + Sync + 'static,
    {
        RecurrenceSpec {
            label: label.into(),
            family: Family::Custom { b: Arc::new(b), lambda: Arc::new(lambda) },
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn b(&self, n: usize) -> Poly {
        match &self.family {
            Family::Hermite => Poly::zero(),
            Family::Laguerre(alpha) => &Poly::int(2 * n as i64 + 1) + alpha,
            Family::Symbolic => Poly::var(Indet::B(n)),
            Family::Custom { b, .. } => b(n),
        }
    }

    pub fn lambda(&self, n: usize) -> Poly {
        if n == 0 {
            return Poly::zero();
        }
        match &self.family {
            Family::Hermite => Poly::int(n as i64),
            Family::Laguerre(alpha) => (&Poly::int(n as i64) + alpha).scale(&int(n as i64)),
            Family::Symbolic => Poly::var(Indet::L(n)),
            Family::Custom { lambda, .. } => lambda(n),
        }
    }

    /// First index `i <= upto` with b_i != 0, if any.
    pub fn first_nonzero_b(&self, upto: usize) -> Option<usize> {
        (0..=upto).find(|&i| !self.b(i).is_zero())
    }

    /// Substitutes this family's values for the b_i and λ_i indeterminates.
    /// Identity for the symbolic family.
    pub fn specialize(&self, p: &Poly) -> Poly {
        if matches!(self.family, Family::Symbolic) {
            return p.clone();
        }
        p.substitute(&|x| match x {
            Indet::B(i) => Some(self.b(i)),
            Indet::L(i) => Some(self.lambda(i)),
            _ => None,
        })
    }
}

impl FromStr for RecurrenceSpec {
    type Err = Error;

    /// `hermite`, `symbolic`, `symbolic-lambda`, `laguerre:alpha` or `laguerre:<p/q>`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s {
            "hermite" => return Ok(Self::hermite()),
            "symbolic" => return Ok(Self::symbolic()),
            "symbolic-lambda" => return Ok(Self::symbolic_lambda()),
            _ => {}
        }
        let Some(alpha) = s.strip_prefix("laguerre:") else {
            return Err(Error::Parse(format!("unknown family `{s}`")));
        };
        if alpha == "alpha" {
            return Ok(Self::laguerre_symbolic());
        }
        let value = alpha
            .parse::<crate::Rat>()
            .map_err(|_| Error::Parse(format!("bad Laguerre parameter `{alpha}`")))?;
        Ok(Self::laguerre(Poly::constant(value)))
    }
}

/// Coefficients of monic p_n in the monomial basis, constant term first.
pub fn poly_coeffs(spec: &RecurrenceSpec, n: usize) -> Vec<Poly> {
    let mut prev: Vec<Poly> = Vec::new();
    let mut cur = vec![Poly::one()];
    for k in 0..n {
        let bk = spec.b(k);
        let lk = spec.lambda(k);
        let mut next = vec![Poly::zero(); k + 2];
        for (d, c) in cur.iter().enumerate() {
            next[d + 1] += c;
            next[d] += &-(&bk * c);
        }
        for (d, c) in prev.iter().enumerate() {
            next[d] += &-(&lk * c);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// σ_{n,m,k} for all k, by peeling the last step of each path:
/// σ_{n,m,k} = σ_{n-1,m,k-1} + b_k σ_{n-1,m,k} + λ_{k+1} σ_{n-1,m,k+1}.
pub fn lin_row(spec: &RecurrenceSpec, n: usize, m: usize) -> Vec<Poly> {
    lin_rows(spec, n, m).pop().expect("at least row 0")
}

/// Rows 0..=n of σ_{·,m,·}; row r has length m + r + 1.
pub fn lin_rows(spec: &RecurrenceSpec, n: usize, m: usize) -> Vec<Vec<Poly>> {
    let top = m + n + 1;
    let b: Vec<Poly> = (0..=top).map(|i| spec.b(i)).collect();
    let lambda: Vec<Poly> = (0..=top + 1).map(|i| spec.lambda(i)).collect();

    let mut row = vec![Poly::zero(); m + 1];
    row[m] = Poly::one();
    let mut rows = vec![row];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let mut next = vec![Poly::zero(); m + r + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            if k >= 1 && k - 1 < prev.len() {
                *slot += &prev[k - 1];
            }
            if k < prev.len() && !prev[k].is_zero() {
                *slot += &(&b[k] * &prev[k]);
            }
            if k + 1 < prev.len() && !prev[k + 1].is_zero() {
                *slot += &(&lambda[k + 1] * &prev[k + 1]);
            }
        }
        rows.push(next);
    }
    rows
}

/// The linearization coefficient σ_{n,m,k}.
pub fn lin_coeff(spec: &RecurrenceSpec, n: usize, m: usize, k: usize) -> Poly {
    if k.abs_diff(m) > n {
        return Poly::zero();
    }
    lin_row(spec, n, m).swap_remove(k)
}

/// The mixed moment σ_{n,k} = σ_{n,0,k}.
pub fn mixed_moment(spec: &RecurrenceSpec, n: usize, k: usize) -> Poly {
    lin_coeff(spec, n, 0, k)
}

/// Precomputed σ_{n,m,k} for n ≤ max_n and m ≤ max_m. Built once, then
/// read-only.
#[derive(Clone, Debug)]
pub struct SigmaTable {
    max_n: usize,
    // by_start[m][n][k]
    by_start: Vec<Vec<Vec<Poly>>>,
}

impl SigmaTable {
    pub fn build(spec: &RecurrenceSpec, max_n: usize, max_m: usize) -> Self {
        let by_start = (0..=max_m).map(|m| lin_rows(spec, max_n, m)).collect();
        SigmaTable { max_n, by_start }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// σ_{n,m,k}; `None` when (n, m) lies outside the table.
    pub fn get(&self, n: usize, m: usize, k: usize) -> Option<Poly> {
        let rows = self.by_start.get(m)?;
        let row = rows.get(n)?;
        Some(row.get(k).cloned().unwrap_or_else(Poly::zero))
    }

    /// σ_{n,k}.
    pub fn sigma(&self, n: usize, k: usize) -> Option<Poly> {
        self.get(n, 0, k)
    }
}

/// Dense square matrix of ring elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Poly>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![Poly::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Poly::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Poly {
        &self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Poly) {
        self.data[row * self.dim + col] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for l in 0..d {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.data[i * d + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

/// Truncated Jacobi-type transfer matrix: entry (k, m) is the weight of a
/// single step from height m to height k. Subdiagonal 1, diagonal b_k,
/// superdiagonal λ_k (column index k).
pub fn transfer_matrix(spec: &RecurrenceSpec, dim: usize) -> Matrix {
    let mut t = Matrix::zeros(dim);
    for k in 0..dim {
        t.set(k, k, spec.b(k));
        if k + 1 < dim {
            t.set(k + 1, k, Poly::one());
            t.set(k, k + 1, spec.lambda(k + 1));
        }
    }
    t
}

/// The n-th power of a truncated transfer matrix. Entries are only exact
/// away from the truncation boundary, which [`TransferPower::entry`] checks.
#[derive(Clone, Debug)]
pub struct TransferPower {
    power: usize,
    matrix: Matrix,
}

/// Smallest dimension for which entry (k, m) of the n-th power is exact.
pub fn default_transfer_dim(n: usize, m: usize, k: usize) -> usize {
    n + m.max(k) + 1
}

pub fn transfer_power(spec: &RecurrenceSpec, n: usize, dim: usize) -> TransferPower {
    let t = transfer_matrix(spec, dim);
    let mut acc = Matrix::identity(dim);
    for _ in 0..n {
        acc = acc.mul(&t);
    }
    TransferPower { power: n, matrix: acc }
}

impl TransferPower {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Entry (k, m), which equals σ_{n,m,k} when the truncation is far enough out.
    pub fn entry(&self, k: usize, m: usize) -> Result<&Poly, Error> {
        let dim = self.matrix.dim();
        let index = k.max(m);
        if dim <= self.power + index {
            return Err(Error::DimensionTooSmall { dim, power: self.power, index });
        }
        Ok(self.matrix.get(k, m))
    }
}

/// Checks x^n = Σ_k σ_{n,k} p_k(x) by expanding both sides in monomials.
pub fn expand_monomial_identity(spec: &RecurrenceSpec, n: usize) -> bool {
    let sigma = lin_row(spec, n, 0);
    let mut rhs = vec![Poly::zero(); n + 1];
    for (k, s) in sigma.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        for (d, c) in poly_coeffs(spec, k).iter().enumerate() {
            rhs[d] += &(s * c);
        }
    }
    rhs.iter()
        .enumerate()
        .all(|(d, c)| if d == n { c.is_one() } else { c.is_zero() })
}

/// Provenance of a computed value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    Recurrence,
    Motzkin,
    Transfer,
    ModifiedWeights,
    LectureHall,
    Ladder,
    Integral,
    ClosedForm,
}

impl Route {
    pub const ALL: [Route; 8] = [
        Route::Recurrence,
        Route::Motzkin,
        Route::Transfer,
        Route::ModifiedWeights,
        Route::LectureHall,
        Route::Ladder,
        Route::Integral,
        Route::ClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::Recurrence => "recurrence",
            Route::Motzkin => "motzkin",
            Route::Transfer => "transfer",
            Route::ModifiedWeights => "modified",
            Route::LectureHall => "lecturehall",
            Route::Ladder => "ladder",
            Route::Integral => "integral",
            Route::ClosedForm => "closed",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s {
            "lin_coeff" => return Ok(Route::Recurrence),
            "motzkin_enum" => return Ok(Route::Motzkin),
            _ => {}
        }
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown route `{s}`")))
    }
}

/// σ_{n,m,k} for a fixed start height m, rows n = 0..=max_n, each value
/// tagged with the routes that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    label: String,
    start: usize,
    rows: Vec<Vec<Poly>>,
    routes: Vec<Vec<BTreeSet<Route>>>,
}

/// One disagreeing cell found while merging two tables.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub n: usize,
    pub k: usize,
    pub left: (Poly, Route),
    pub right: (Poly, Route),
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} k={}: {}={} vs {}={}",
            self.n, self.k, self.left.1, self.left.0, self.right.1, self.right.0
        )
    }
}

impl MomentTable {
    /// Wraps rows computed by a single route. Row n must hold k = 0..=start+n.
    pub fn from_rows(label: impl Into<String>, start: usize, rows: Vec<Vec<Poly>>, route: Route) -> Self {
        let routes = rows
            .iter()
            .map(|r| vec![BTreeSet::from([route]); r.len()])
            .collect();
        MomentTable { label: label.into(), start, rows, routes }
    }

    pub fn by_recurrence(spec: &RecurrenceSpec, start: usize, max_n: usize) -> Self {
        Self::from_rows(spec.label(), start, lin_rows(spec, max_n, start), Route::Recurrence)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn max_n(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&Poly> {
        self.rows.get(n)?.get(k)
    }

    pub fn routes(&self, n: usize, k: usize) -> Option<&BTreeSet<Route>> {
        self.routes.get(n)?.get(k)
    }

    /// Folds in a table from another route. Agreeing cells gain that route's
    /// tag; every disagreement is reported and the table is left unchanged.
    pub fn merge(&mut self, other: &MomentTable) -> Result<(), Vec<Mismatch>> {
        assert_eq!(self.rows.len(), other.rows.len(), "table shapes differ");
        let mut bad = Vec::new();
        for (n, (mine, theirs)) in self.rows.iter().zip(&other.rows).enumerate() {
            for (k, (a, b)) in mine.iter().zip(theirs).enumerate() {
                if a != b {
                    let left = *self.routes[n][k].iter().next().expect("tagged");
                    let right = *other.routes[n][k].iter().next().expect("tagged");
                    bad.push(Mismatch { n, k, left: (a.clone(), left), right: (b.clone(), right) });
                }
            }
        }
        if !bad.is_empty() {
            return Err(bad);
        }
        for (mine, theirs) in self.routes.iter_mut().zip(&other.routes) {
            for (a, b) in mine.iter_mut().zip(theirs) {
                a.extend(b.iter().copied());
            }
        }
        Ok(())
    }

    fn route_tag(set: &BTreeSet<Route>) -> String {
        set.iter().map(|r| r.name()).collect::<Vec<_>>().join("+")
    }

    /// Wide CSV: one row per n, one column per k, then the route tags.
    pub fn to_csv(&self) -> String {
        let width = self.rows.last().map_or(0, Vec::len);
        let mut out = String::from("n");
        for k in 0..width {
            out.push_str(&format!(",k{k}"));
        }
        out.push_str(",routes\n");
        for (n, row) in self.rows.iter().enumerate() {
            out.push_str(&n.to_string());
            for k in 0..width {
                out.push(',');
                let cell = row.get(k).map_or_else(|| "0".to_string(), |v| v.to_string());
                out.push_str(&csv_field(&cell));
            }
            let tags: BTreeSet<Route> = self.routes[n].iter().flatten().copied().collect();
            out.push(',');
            out.push_str(&Self::route_tag(&tags));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = Vec::new();
        for (n, row) in self.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                entries.push(json!({
                    "n": n,
                    "m": self.start,
                    "k": k,
                    "value": v.to_string(),
                    "route": Self::route_tag(&self.routes[n][k]),
                }));
            }
        }
        json!({
            "family": self.label,
            "start": self.start,
            "max_n": self.max_n(),
            "entries": entries,
        })
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
