//! The symmetric lecture hall graph.
//!
//! Vertex v^t_{i,j} (t ∈ {0,1}, 0 ≤ j ≤ i) sits at (i, t + j/(i+1)). The
//! upper level is a lecture hall graph, where an east step keeps the rung:
//! (1,i,j) → (1,i+1,j). The lower level is the dual graph, where an east step
//! keeps the distance to the top of the column: (0,i,j) → (0,i+1,j+1). South
//! steps go down one rung, and from the bottom of level 1 to the top of the
//! same column on level 0. The boundary point (i, 2) is [`SlhPoint::Top`],
//! with a single south edge into (1,i,i).
//!
//! Path sums in this module follow the entry convention: a path "from" a
//! point starts with the south step out of that point. For a top point this
//! is the only possible first step anyway.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::orthopoly::RecurrenceSpec;
use crate::ring::{Poly, Rat};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlhVertex {
    pub t: u8,
    pub i: usize,
    pub j: usize,
}

impl SlhVertex {
    pub fn new(t: u8, i: usize, j: usize) -> Result<Self, Error> {
        if t > 1 || j > i {
            return Err(Error::InvalidPath(format!("no vertex ({t},{i},{j})")));
        }
        Ok(SlhVertex { t, i, j })
    }

    /// Embedded height t + j/(i+1).
    pub fn y(&self) -> Rat {
        Rat::from_integer(self.t.into()) + Rat::new(self.j.into(), (self.i + 1).into())
    }

    pub fn east(&self) -> SlhVertex {
        match self.t {
            1 => SlhVertex { t: 1, i: self.i + 1, j: self.j },
            _ => SlhVertex { t: 0, i: self.i + 1, j: self.j + 1 },
        }
    }

    pub fn south(&self) -> Option<SlhVertex> {
        match (self.t, self.j) {
            (_, j) if j > 0 => Some(SlhVertex { j: j - 1, ..*self }),
            (1, 0) => Some(SlhVertex { t: 0, i: self.i, j: self.i }),
            _ => None,
        }
    }

    /// Whether some SE path leads from `self` to `to`.
    pub fn reaches(&self, to: &SlhVertex) -> bool {
        if self.i > to.i {
            return false;
        }
        match (self.t, to.t) {
            (1, 1) => self.j >= to.j,
            (0, 0) => self.j + (to.i - self.i) >= to.j,
            (1, 0) => true,
            _ => false,
        }
    }
}

impl fmt::Display for SlhVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.t, self.i, self.j)
    }
}

/// A vertex of the graph or the top boundary point (i, 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlhPoint {
    Top(usize),
    Vertex(SlhVertex),
}

impl SlhPoint {
    pub fn vertex(t: u8, i: usize, j: usize) -> Result<Self, Error> {
        SlhVertex::new(t, i, j).map(SlhPoint::Vertex)
    }

    /// Locates the point at (i, y) in the embedding. `y = 2` is the top point.
    pub fn from_coords(i: usize, y: &Rat) -> Result<Self, Error> {
        let two = Rat::from_integer(2.into());
        if *y == two {
            return Ok(SlhPoint::Top(i));
        }
        let bad = || Error::InvalidPath(format!("no vertex at ({i}, {y})"));
        if *y < Rat::zero() || *y > two {
            return Err(bad());
        }
        let t = y.floor();
        let scaled = (y - &t) * Rat::from_integer((i + 1).into());
        if !scaled.is_integer() {
            return Err(bad());
        }
        let t = t.to_integer().to_u8().ok_or_else(bad)?;
        let j = scaled.to_integer().to_usize().ok_or_else(bad)?;
        Self::vertex(t, i, j)
    }

    pub fn column(&self) -> usize {
        match self {
            SlhPoint::Top(i) => *i,
            SlhPoint::Vertex(v) => v.i,
        }
    }

    pub fn y(&self) -> Rat {
        match self {
            SlhPoint::Top(_) => Rat::from_integer(2.into()),
            SlhPoint::Vertex(v) => v.y(),
        }
    }

    pub fn south(&self) -> Option<SlhVertex> {
        match self {
            SlhPoint::Top(i) => Some(SlhVertex { t: 1, i: *i, j: *i }),
            SlhPoint::Vertex(v) => v.south(),
        }
    }
}

impl From<SlhVertex> for SlhPoint {
    fn from(v: SlhVertex) -> Self {
        SlhPoint::Vertex(v)
    }
}

impl fmt::Display for SlhPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlhPoint::Top(i) => write!(f, "T,{i}"),
            SlhPoint::Vertex(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for SlhPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad lecture hall point `{s}`"));
        let parts: Vec<&str> = s.trim().split(',').map(str::trim).collect();
        match parts.as_slice() {
            ["T", i] => Ok(SlhPoint::Top(i.parse().map_err(|_| bad())?)),
            [t, i, j] => SlhPoint::vertex(
                t.parse().map_err(|_| bad())?,
                i.parse().map_err(|_| bad())?,
                j.parse().map_err(|_| bad())?,
            ),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeStepKind {
    East,
    South,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeStep {
    pub from: SlhPoint,
    pub to: SlhVertex,
    pub kind: SeStepKind,
}

/// A south-east path: a start point followed by the vertices it visits.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SePath {
    start: SlhPoint,
    vertices: Vec<SlhVertex>,
}

fn classify(from: &SlhPoint, to: &SlhVertex) -> Option<SeStepKind> {
    if from.south().as_ref() == Some(to) {
        return Some(SeStepKind::South);
    }
    match from {
        SlhPoint::Vertex(v) if v.east() == *to => Some(SeStepKind::East),
        _ => None,
    }
}

impl SePath {
    pub fn new(start: SlhPoint, vertices: Vec<SlhVertex>) -> Result<Self, Error> {
        let mut prev = start;
        for v in &vertices {
            if classify(&prev, v).is_none() {
                return Err(Error::InvalidPath(format!("{prev} -> {v} is not a south or east step")));
            }
            prev = SlhPoint::Vertex(*v);
        }
        Ok(SePath { start, vertices })
    }

    pub fn empty(at: SlhPoint) -> Self {
        SePath { start: at, vertices: Vec::new() }
    }

    pub fn start(&self) -> SlhPoint {
        self.start
    }

    pub fn end(&self) -> SlhPoint {
        self.vertices.last().map_or(self.start, |&v| SlhPoint::Vertex(v))
    }

    pub fn vertices(&self) -> &[SlhVertex] {
        &self.vertices
    }

    /// All points in order, start included.
    pub fn points(&self) -> impl Iterator<Item = SlhPoint> + '_ {
        std::iter::once(self.start).chain(self.vertices.iter().map(|&v| SlhPoint::Vertex(v)))
    }

    pub fn steps(&self) -> Vec<SeStep> {
        let mut out = Vec::with_capacity(self.vertices.len());
        let mut prev = self.start;
        for &v in &self.vertices {
            let kind = classify(&prev, &v).expect("validated at construction");
            out.push(SeStep { from: prev, to: v, kind });
            prev = SlhPoint::Vertex(v);
        }
        out
    }

    pub fn east_steps(&self) -> impl Iterator<Item = SlhVertex> + '_ {
        self.steps().into_iter().filter_map(|s| match (s.kind, s.from) {
            (SeStepKind::East, SlhPoint::Vertex(v)) => Some(v),
            _ => None,
        })
    }
}

impl fmt::Display for SePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(";"))
    }
}

impl FromStr for SePath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut points = s.trim().split(';').filter(|p| !p.trim().is_empty());
        let start: SlhPoint = points
            .next()
            .ok_or_else(|| Error::Parse("empty lecture hall path".into()))?
            .parse()?;
        let vertices = points
            .map(|p| match p.parse::<SlhPoint>()? {
                SlhPoint::Vertex(v) => Ok(v),
                SlhPoint::Top(_) => Err(Error::Parse("a top point can only start a path".into())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        SePath::new(start, vertices)
    }
}

/// East-step weights w(t; i, j), the weight of the east step leaving v^t_{i,j}.
pub trait WeightSystem: Send + Sync {
    fn weight(&self, t: u8, i: usize, j: usize) -> Poly;
    fn name(&self) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// w_e or w_o built from a family's λ:
/// w_e(0;i,j) = λ_j, w_e(1;i,j) = λ_{i+j+1}; w_o(0;i,j) = λ_{j+1}, w_o(1;i,j) = λ_{i+j+2}.
#[derive(Clone, Debug)]
pub struct LambdaWeights {
    spec: RecurrenceSpec,
    parity: Parity,
}

impl LambdaWeights {
    pub fn new(spec: RecurrenceSpec, parity: Parity) -> Self {
        LambdaWeights { spec, parity }
    }

    pub fn even(spec: RecurrenceSpec) -> Self {
        Self::new(spec, Parity::Even)
    }

    pub fn odd(spec: RecurrenceSpec) -> Self {
        Self::new(spec, Parity::Odd)
    }
}

impl WeightSystem for LambdaWeights {
    fn weight(&self, t: u8, i: usize, j: usize) -> Poly {
        let shift = match self.parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        let idx = if t == 0 { j + shift } else { i + j + 1 + shift };
        self.spec.lambda(idx)
    }

    fn name(&self) -> String {
        let tag = match self.parity {
            Parity::Even => "w_e",
            Parity::Odd => "w_o",
        };
        format!("{tag}[{}]", self.spec.label())
    }
}

/// w(0;i,j) = γ_j, w(1;i,j) = γ_{i+j+1}.
#[derive(Clone)]
pub struct GammaWeights {
    label: String,
    gamma: Arc<dyn Fn(usize) -> Poly + Send + Sync>,
}

impl GammaWeights {
    pub fn new(label: impl Into<String>, gamma: impl Fn(usize) -> Poly + Send + Sync + 'static) -> Self {
        GammaWeights { label: label.into(), gamma: Arc::new(gamma) }
    }
}

impl WeightSystem for GammaWeights {
    fn weight(&self, t: u8, i: usize, j: usize) -> Poly {
        let idx = if t == 0 { j } else { i + j + 1 };
        (self.gamma)(idx)
    }

    fn name(&self) -> String {
        format!("w_gamma[{}]", self.label)
    }
}

/// `base` read at (i + di, j + dj): w⁻ is `Shifted(w, 1, 0)` and w⁺ is
/// `Shifted(w, 1, 1)`. Shifts of shifts compose by adding offsets.
#[derive(Clone, Copy)]
pub struct Shifted<'a> {
    base: &'a dyn WeightSystem,
    di: usize,
    dj: usize,
}

impl<'a> Shifted<'a> {
    pub fn new(base: &'a dyn WeightSystem, di: usize, dj: usize) -> Self {
        Shifted { base, di, dj }
    }

    pub fn shift(&self, di: usize, dj: usize) -> Shifted<'a> {
        Shifted { base: self.base, di: self.di + di, dj: self.dj + dj }
    }
}

impl WeightSystem for Shifted<'_> {
    fn weight(&self, t: u8, i: usize, j: usize) -> Poly {
        self.base.weight(t, i + self.di, j + self.dj)
    }

    fn name(&self) -> String {
        format!("{}<+{},+{}>", self.base.name(), self.di, self.dj)
    }
}

/// Product of east-step weights.
pub fn se_weight(ws: &dyn WeightSystem, p: &SePath) -> Poly {
    p.east_steps().map(|v| ws.weight(v.t, v.i, v.j)).product()
}

fn count_from(v: SlhVertex, to: &SlhVertex, memo: &mut HashMap<SlhVertex, BigUint>) -> BigUint {
    if v == *to {
        return BigUint::from(1u32);
    }
    if let Some(c) = memo.get(&v) {
        return c.clone();
    }
    let mut total = BigUint::zero();
    for next in [Some(v.east()), v.south()].into_iter().flatten() {
        if next.reaches(to) {
            total += count_from(next, to, memo);
        }
    }
    memo.insert(v, total.clone());
    total
}

/// Number of SE paths from `from` to `to`.
pub fn se_count(from: SlhPoint, to: SlhVertex) -> BigUint {
    let mut memo = HashMap::new();
    match from {
        SlhPoint::Vertex(v) if v.reaches(&to) => count_from(v, &to, &mut memo),
        SlhPoint::Top(_) => match from.south() {
            Some(v) if v.reaches(&to) => count_from(v, &to, &mut memo),
            _ => BigUint::zero(),
        },
        _ => BigUint::zero(),
    }
}

/// Depth-first walk over every SE path from `from` to `to`.
pub fn for_each_se(from: SlhPoint, to: SlhVertex, mut visit: impl FnMut(&[SlhVertex])) {
    fn go(v: SlhVertex, to: &SlhVertex, buf: &mut Vec<SlhVertex>, visit: &mut dyn FnMut(&[SlhVertex])) {
        if v == *to {
            visit(buf);
            return;
        }
        for next in [Some(v.east()), v.south()].into_iter().flatten() {
            if next.reaches(to) {
                buf.push(next);
                go(next, to, buf, visit);
                buf.pop();
            }
        }
    }
    let mut buf = Vec::new();
    match from {
        SlhPoint::Vertex(v) => {
            if v.reaches(&to) {
                go(v, &to, &mut buf, &mut visit);
            }
        }
        SlhPoint::Top(_) => {
            let first = from.south().expect("top points have a south edge");
            if first.reaches(&to) {
                buf.push(first);
                go(first, &to, &mut buf, &mut visit);
            }
        }
    }
}

fn check_cap(from: SlhPoint, to: SlhVertex, cap: u64) -> Result<(), Error> {
    let total = se_count(from, to);
    if total.to_u64().is_none_or(|c| c > cap) {
        return Err(Error::SizeGuard { count: total.to_string(), cap });
    }
    Ok(())
}

/// All SE paths between two points, in a fixed order (east before south).
pub fn se_enumerate(from: SlhPoint, to: SlhVertex, cap: u64) -> Result<Vec<SePath>, Error> {
    check_cap(from, to, cap)?;
    let mut out = Vec::new();
    for_each_se(from, to, |vs| out.push(SePath { start: from, vertices: vs.to_vec() }));
    Ok(out)
}

/// Paths that leave `from` by its south step. Identical to [`se_enumerate`]
/// for top points.
pub fn entering_paths(from: SlhPoint, to: SlhVertex, cap: u64) -> Result<Vec<SePath>, Error> {
    let Some(first) = from.south() else { return Ok(Vec::new()) };
    let inner = se_enumerate(SlhPoint::Vertex(first), to, cap)?;
    Ok(inner
        .into_iter()
        .map(|p| {
            let mut vertices = Vec::with_capacity(p.vertices.len() + 1);
            vertices.push(first);
            vertices.extend(p.vertices);
            SePath { start: from, vertices }
        })
        .collect())
}

/// Σ se_weight over the paths that leave `from` by its south step and end
/// at `to`, accumulated along the depth-first walk.
pub fn partial_weight_sum(ws: &dyn WeightSystem, from: SlhPoint, to: SlhVertex, cap: u64) -> Result<Poly, Error> {
    let Some(first) = from.south() else { return Ok(Poly::zero()) };
    check_cap(SlhPoint::Vertex(first), to, cap)?;

    fn go(ws: &dyn WeightSystem, v: SlhVertex, to: &SlhVertex, acc: &Poly, total: &mut Poly) {
        if v == *to {
            *total += acc;
            return;
        }
        let east = v.east();
        if east.reaches(to) {
            let w = acc * &ws.weight(v.t, v.i, v.j);
            if !w.is_zero() {
                go(ws, east, to, &w, total);
            }
        }
        if let Some(south) = v.south() {
            if south.reaches(to) {
                go(ws, south, to, acc, total);
            }
        }
    }

    let mut total = Poly::zero();
    if first.reaches(&to) {
        go(ws, first, &to, &Poly::one(), &mut total);
    }
    Ok(total)
}

/// Number of paths (k,2) → (n,1): C(n,k).
pub fn count_level2_to_1(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Number of paths (k,1) → (n,0): the ballot number (k+1)/(n+1)·C(2n-k, n-k).
pub fn count_level1_to_0(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let c = num_integer::binomial(BigUint::from(2 * n - k), BigUint::from(n - k));
    let (q, r) = (c * BigUint::from(k + 1)).div_rem(&BigUint::from(n + 1));
    debug_assert!(r.is_zero());
    q
}

/// (k,1) is the bottom of column k on level 1.
pub fn level1_point(k: usize) -> SlhPoint {
    SlhPoint::Vertex(SlhVertex { t: 1, i: k, j: 0 })
}

/// (n,0) is the bottom of column n on level 0.
pub fn level0_bottom(n: usize) -> SlhVertex {
    SlhVertex { t: 0, i: n, j: 0 }
}

/// (n,1) as a path endpoint.
pub fn level1_bottom(n: usize) -> SlhVertex {
    SlhVertex { t: 1, i: n, j: 0 }
}

/// g^w_{n,k}: Σ over paths (k,1) → (n,0) on level 0, via
/// g_{n,k} = w(0;k,k)·g_{n,k+1} + g^{w⁻}_{n-1,k-1}.
pub fn g_val(ws: &dyn WeightSystem, n: usize, k: usize) -> Poly {
    fn go(ws: &Shifted<'_>, n: usize, k: usize, memo: &mut HashMap<(usize, usize, usize), Poly>) -> Poly {
        if k > n {
            return Poly::zero();
        }
        if k == n {
            return Poly::one();
        }
        let key = (n, k, ws.di);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut v = &ws.weight(0, k, k) * &go(ws, n, k + 1, memo);
        if k > 0 {
            v += &go(&ws.shift(1, 0), n - 1, k - 1, memo);
        }
        memo.insert(key, v.clone());
        v
    }
    go(&Shifted::new(ws, 0, 0), n, k, &mut HashMap::new())
}

/// h^w_{n,k}: Σ over paths (k,2) → (n,1) on level 1, via
/// h_{n,k} = w(1;n-1,0)·h_{n-1,k} + h^{w⁺}_{n-1,k-1}.
pub fn h_val(ws: &dyn WeightSystem, n: usize, k: usize) -> Poly {
    fn go(ws: &Shifted<'_>, n: usize, k: usize, memo: &mut HashMap<(usize, usize, usize), Poly>) -> Poly {
        if k > n {
            return Poly::zero();
        }
        if k == n {
            return Poly::one();
        }
        let key = (n, k, ws.di);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut v = &ws.weight(1, n - 1, 0) * &go(ws, n - 1, k, memo);
        if k > 0 {
            v += &go(&ws.shift(1, 1), n - 1, k - 1, memo);
        }
        memo.insert(key, v.clone());
        v
    }
    go(&Shifted::new(ws, 0, 0), n, k, &mut HashMap::new())
}

/// g^w_{n,k} as a direct path sum.
pub fn g_by_enumeration(ws: &dyn WeightSystem, n: usize, k: usize, cap: u64) -> Result<Poly, Error> {
    if k > n {
        return Ok(Poly::zero());
    }
    partial_weight_sum(ws, level1_point(k), level0_bottom(n), cap)
}

/// h^w_{n,k} as a direct path sum.
pub fn h_by_enumeration(ws: &dyn WeightSystem, n: usize, k: usize, cap: u64) -> Result<Poly, Error> {
    if k > n {
        return Ok(Poly::zero());
    }
    partial_weight_sum(ws, SlhPoint::Top(k), level1_bottom(n), cap)
}

/// A point of the staircase chart. Level 1 uses (i, j); the top point of
/// column i sits at (i, i+1). Level 0 uses (i, j - i), which turns the dual
/// graph's diagonal east steps into horizontal ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StaircasePoint {
    pub level: u8,
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircasePath {
    pub points: Vec<StaircasePoint>,
}

impl StaircasePath {
    /// Move letters: E (x+1), S (y-1), X (drop from level 1 to level 0).
    pub fn moves(&self) -> String {
        self.points
            .windows(2)
            .map(|w| match (w[1].level < w[0].level, w[1].x > w[0].x) {
                (true, _) => 'X',
                (false, true) => 'E',
                (false, false) => 'S',
            })
            .collect()
    }
}

fn chart(p: SlhPoint) -> StaircasePoint {
    match p {
        SlhPoint::Top(i) => StaircasePoint { level: 1, x: i as i64, y: i as i64 + 1 },
        SlhPoint::Vertex(v) if v.t == 1 => StaircasePoint { level: 1, x: v.i as i64, y: v.j as i64 },
        SlhPoint::Vertex(v) => StaircasePoint { level: 0, x: v.i as i64, y: v.j as i64 - v.i as i64 },
    }
}

fn unchart(s: StaircasePoint) -> Result<SlhPoint, Error> {
    let bad = || Error::InvalidPath(format!("staircase point {s:?} is outside the chart"));
    let x = usize::try_from(s.x).map_err(|_| bad())?;
    match s.level {
        1 if s.y == s.x + 1 => Ok(SlhPoint::Top(x)),
        1 => SlhPoint::vertex(1, x, usize::try_from(s.y).map_err(|_| bad())?),
        0 => SlhPoint::vertex(0, x, usize::try_from(s.y + s.x).map_err(|_| bad())?),
        _ => Err(bad()),
    }
}

pub fn to_staircase(p: &SePath) -> StaircasePath {
    StaircasePath { points: p.points().map(chart).collect() }
}

pub fn from_staircase(s: &StaircasePath) -> Result<SePath, Error> {
    let mut pts = s.points.iter().map(|&q| unchart(q));
    let start = pts.next().ok_or_else(|| Error::InvalidPath("empty staircase path".into()))??;
    let vertices = pts
        .map(|p| match p? {
            SlhPoint::Vertex(v) => Ok(v),
            SlhPoint::Top(_) => Err(Error::InvalidPath("top point inside a path".into())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    SePath::new(start, vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, Indet};
    use crate::DEFAULT_ENUM_CAP as CAP;

    fn l(i: usize) -> Poly {
        Poly::var(Indet::L(i))
    }

    fn v(t: u8, i: usize, j: usize) -> SlhVertex {
        SlhVertex::new(t, i, j).unwrap()
    }

    /// The red path of the weight-labelled figure: from (1,2) to (4,0).
    fn fig4_path() -> SePath {
        "T,1;1,1,1;1,2,1;1,2,0;0,2,2;0,2,1;0,3,2;0,4,3;0,4,2;0,4,1;0,4,0".parse().unwrap()
    }

    #[test]
    fn coordinates() {
        assert_eq!(v(1, 3, 2).y(), rat(3, 2));
        assert_eq!(SlhPoint::from_coords(4, &rat(3, 5)).unwrap(), SlhPoint::Vertex(v(0, 4, 3)));
        assert_eq!(SlhPoint::from_coords(2, &rat(4, 3)).unwrap(), SlhPoint::Vertex(v(1, 2, 1)));
        assert_eq!(SlhPoint::from_coords(2, &rat(2, 1)).unwrap(), SlhPoint::Top(2));
        assert_eq!(SlhPoint::from_coords(3, &rat(1, 1)).unwrap(), SlhPoint::Vertex(v(1, 3, 0)));
        assert!(SlhPoint::from_coords(2, &rat(1, 2)).is_err());
        assert!(SlhVertex::new(0, 1, 2).is_err());
    }

    #[test]
    fn steps() {
        assert_eq!(v(1, 2, 1).east(), v(1, 3, 1));
        assert_eq!(v(0, 2, 1).east(), v(0, 3, 2));
        assert_eq!(v(1, 2, 0).south(), Some(v(0, 2, 2)));
        assert_eq!(v(0, 2, 0).south(), None);
        assert_eq!(SlhPoint::Top(3).south(), Some(v(1, 3, 3)));
    }

    #[test]
    fn fig4_path_is_enumerated() {
        let p = fig4_path();
        assert_eq!(p.end(), SlhPoint::Vertex(v(0, 4, 0)));
        let all = se_enumerate(SlhPoint::Top(1), v(0, 4, 0), CAP).unwrap();
        assert!(all.contains(&p));
        assert_eq!(BigUint::from(all.len()), se_count(SlhPoint::Top(1), v(0, 4, 0)));
        assert_eq!(p.to_string().parse::<SePath>().unwrap(), p);
    }

    #[test]
    fn trivial_paths() {
        let here = SlhPoint::Vertex(v(1, 3, 2));
        assert_eq!(se_enumerate(here, v(1, 3, 2), CAP).unwrap(), vec![SePath::empty(here)]);
        assert!(se_enumerate(SlhPoint::Vertex(v(0, 3, 0)), v(1, 4, 0), CAP).unwrap().is_empty());
        assert_eq!(se_enumerate(SlhPoint::Top(2), v(1, 4, 0), CAP).unwrap().len(), 6);
    }

    #[test]
    fn weights_of_paths() {
        let we = LambdaWeights::even(RecurrenceSpec::symbolic());
        let south: SePath = "T,2;1,2,2;1,2,1;1,2,0;0,2,2".parse().unwrap();
        assert!(se_weight(&we, &south).is_one());
        let east: SePath = "0,3,1;0,4,2".parse().unwrap();
        assert_eq!(se_weight(&we, &east), l(1));
        // Fifth figure, top row: weight λ_1·λ_2.
        let fig5: SePath = "T,1;1,1,1;1,1,0;1,2,0;0,2,2;0,2,1;0,3,2;0,3,1;0,3,0".parse().unwrap();
        assert_eq!(se_weight(&we, &fig5), &l(1) * &l(2));
        assert_eq!(se_weight(&we, &fig4_path()), &l(3) * &(&l(1) * &l(2)));
    }

    #[test]
    fn builtin_weight_formulas() {
        let s = RecurrenceSpec::symbolic();
        let (we, wo) = (LambdaWeights::even(s.clone()), LambdaWeights::odd(s));
        assert_eq!(we.weight(0, 3, 2), l(2));
        assert_eq!(we.weight(1, 3, 2), l(6));
        assert_eq!(wo.weight(0, 3, 2), l(3));
        assert_eq!(wo.weight(1, 3, 2), l(7));
        let wg = GammaWeights::new("g", |i| Poly::var(Indet::G(i)));
        assert_eq!(wg.weight(0, 3, 2), Poly::var(Indet::G(2)));
        assert_eq!(wg.weight(1, 3, 2), Poly::var(Indet::G(6)));
        let sh = Shifted::new(&we, 1, 0).shift(0, 1);
        assert_eq!(sh.weight(1, 3, 2), l(8));
    }

    #[test]
    fn hermite_weight_grids() {
        let we = LambdaWeights::even(RecurrenceSpec::hermite());
        let wo = LambdaWeights::odd(RecurrenceSpec::hermite());
        for i in 0..4 {
            for j in 0..=i {
                assert_eq!(we.weight(0, i, j), Poly::int(j as i64));
                assert_eq!(we.weight(1, i, j), Poly::int((i + j + 1) as i64));
                assert_eq!(wo.weight(0, i, j), Poly::int(j as i64 + 1));
                assert_eq!(wo.weight(1, i, j), Poly::int((i + j + 2) as i64));
            }
        }
    }

    #[test]
    fn ballot_counts() {
        assert_eq!(count_level2_to_1(4, 2), BigUint::from(6u32));
        assert_eq!(count_level1_to_0(3, 0), BigUint::from(5u32));
        assert_eq!(count_level1_to_0(4, 1), BigUint::from(14u32));
        assert_eq!(count_level1_to_0(5, 5), BigUint::from(1u32));
        assert_eq!(count_level2_to_1(5, 0), BigUint::from(1u32));
        for n in 0..=6 {
            for k in 0..=n {
                let lvl1 = entering_paths(level1_point(k), level0_bottom(n), CAP).unwrap();
                assert_eq!(BigUint::from(lvl1.len()), count_level1_to_0(n, k));
                let lvl2 = se_enumerate(SlhPoint::Top(k), level1_bottom(n), CAP).unwrap();
                assert_eq!(BigUint::from(lvl2.len()), count_level2_to_1(n, k));
            }
        }
    }

    #[test]
    fn recurrences_match_enumeration() {
        let s = RecurrenceSpec::symbolic();
        let systems: Vec<Box<dyn WeightSystem>> = vec![
            Box::new(LambdaWeights::even(s.clone())),
            Box::new(LambdaWeights::odd(s)),
            Box::new(GammaWeights::new("g", |i| Poly::var(Indet::G(i)))),
        ];
        for ws in &systems {
            for n in 0..=5 {
                for k in 0..=n + 1 {
                    assert_eq!(g_val(ws.as_ref(), n, k), g_by_enumeration(ws.as_ref(), n, k, CAP).unwrap());
                    assert_eq!(h_val(ws.as_ref(), n, k), h_by_enumeration(ws.as_ref(), n, k, CAP).unwrap());
                }
            }
        }
    }

    #[test]
    fn printed_h_weight_disagrees_with_enumeration() {
        // Peeling with the level-0 weight w(0;n-1,0) instead of w(1;n-1,0).
        fn h_level0(ws: &dyn WeightSystem, n: usize, k: usize, di: usize) -> Poly {
            if k > n {
                return Poly::zero();
            }
            if k == n {
                return Poly::one();
            }
            let mut v = &ws.weight(0, n - 1 + di, di) * &h_level0(ws, n - 1, k, di);
            if k > 0 {
                v += &h_level0(ws, n - 1, k - 1, di + 1);
            }
            v
        }
        let we = LambdaWeights::even(RecurrenceSpec::symbolic());
        assert_ne!(h_level0(&we, 2, 1, 0), h_by_enumeration(&we, 2, 1, CAP).unwrap());
    }

    #[test]
    fn splitting_through_level1() {
        let we = LambdaWeights::even(RecurrenceSpec::symbolic());
        for n in 0..=4 {
            for k in 0..=n {
                let whole = partial_weight_sum(&we, SlhPoint::Top(k), level0_bottom(n), CAP).unwrap();
                let split: Poly = (k..=n)
                    .map(|r| &h_by_enumeration(&we, r, k, CAP).unwrap() * &g_by_enumeration(&we, n, r, CAP).unwrap())
                    .sum();
                assert_eq!(whole, split);
            }
        }
    }

    #[test]
    fn staircase_round_trip() {
        let p = fig4_path();
        let s = to_staircase(&p);
        assert_eq!(s.moves(), "SESXSEESSS");
        assert_eq!(s.points[0], StaircasePoint { level: 1, x: 1, y: 2 });
        assert_eq!(from_staircase(&s).unwrap(), p);

        let empty = SePath::empty(SlhPoint::Top(0));
        assert_eq!(from_staircase(&to_staircase(&empty)).unwrap(), empty);

        for n in 0..=6 {
            for k in 0..=n {
                for p in se_enumerate(SlhPoint::Top(k), level0_bottom(n), CAP).unwrap() {
                    let s = to_staircase(&p);
                    // Horizontal and vertical moves only.
                    for w in s.points.windows(2) {
                        let (a, b) = (w[0], w[1]);
                        let ok = (a.level == b.level && ((b.x == a.x + 1 && b.y == a.y) || (b.x == a.x && b.y + 1 == a.y)))
                            || (a.level == 1 && b.level == 0 && a.x == b.x && a.y == 0 && b.y == 0);
                        assert!(ok, "{a:?} -> {b:?}");
                    }
                    assert_eq!(from_staircase(&s).unwrap(), p);
                }
            }
        }
    }
}
