//! Motzkin paths with Viennot weights: up steps weigh 1, a horizontal step at
//! height k weighs b_k, a down step from height k weighs λ_k.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::orthopoly::RecurrenceSpec;
use crate::ring::{Indet, Poly};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    H,
    D,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::H => 'H',
            Step::D => 'D',
        }
    }
}

/// A start height plus a step sequence whose running height stays ≥ 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MotzkinPath {
    start_height: usize,
    steps: Vec<Step>,
}

impl MotzkinPath {
    pub fn new(start_height: usize, steps: Vec<Step>) -> Result<Self, Error> {
        let mut h = start_height as i64;
        for (pos, s) in steps.iter().enumerate() {
            h += match s {
                Step::U => 1,
                Step::H => 0,
                Step::D => -1,
            };
            if h < 0 {
                return Err(Error::InvalidPath(format!("height drops below 0 at step {pos}")));
            }
        }
        Ok(MotzkinPath { start_height, steps })
    }

    pub fn start_height(&self) -> usize {
        self.start_height
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights before each step, followed by the final height.
    pub fn heights(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut h = self.start_height;
        out.push(h);
        for s in &self.steps {
            match s {
                Step::U => h += 1,
                Step::H => {}
                Step::D => h -= 1,
            }
            out.push(h);
        }
        out
    }

    pub fn end_height(&self) -> usize {
        let ups = self.steps.iter().filter(|&&s| s == Step::U).count();
        let downs = self.steps.iter().filter(|&&s| s == Step::D).count();
        self.start_height + ups - downs
    }

    pub fn has_horizontal(&self) -> bool {
        self.steps.contains(&Step::H)
    }
}

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}:", self.start_height)?;
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for MotzkinPath {
    type Err = Error;

    /// Parses `m=<start>:<steps>`, or bare steps starting at height 0.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (start, body) = match s.strip_prefix("m=") {
            Some(rest) => {
                let (h, body) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("missing `:` in `{s}`")))?;
                let h = h.parse().map_err(|_| Error::Parse(format!("bad start height `{h}`")))?;
                (h, body)
            }
            None => (0, s),
        };
        let steps = body
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'U' => Ok(Step::U),
                'H' => Ok(Step::H),
                'D' => Ok(Step::D),
                other => Err(Error::Parse(format!("unknown step `{other}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        MotzkinPath::new(start, steps)
    }
}

/// Options shared by the enumeration routines.
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    /// When false only U/D steps are produced (Dyck-type paths).
    pub allow_horizontal: bool,
    pub cap: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { allow_horizontal: true, cap: crate::DEFAULT_ENUM_CAP }
    }
}

impl EnumOptions {
    pub fn dyck() -> Self {
        EnumOptions { allow_horizontal: false, ..Self::default() }
    }

    pub fn with_cap(self, cap: u64) -> Self {
        EnumOptions { cap, ..self }
    }
}

/// Number of paths of length n from height m to height k, by dynamic programming.
pub fn count(m: usize, k: usize, n: usize, allow_horizontal: bool) -> BigUint {
    let top = m + n + 1;
    let mut cur = vec![BigUint::zero(); top + 1];
    cur[m] = BigUint::from(1u32);
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); top + 1];
        for (h, c) in cur.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if h < top {
                next[h + 1] += c;
            }
            if allow_horizontal {
                next[h] += c;
            }
            if h > 0 {
                next[h - 1] += c;
            }
        }
        cur = next;
    }
    cur.get(k).cloned().unwrap_or_default()
}

fn guard(m: usize, k: usize, n: usize, opts: EnumOptions) -> Result<(), Error> {
    let total = count(m, k, n, opts.allow_horizontal);
    if total.to_u64().is_none_or(|c| c > opts.cap) {
        return Err(Error::SizeGuard { count: total.to_string(), cap: opts.cap });
    }
    Ok(())
}

fn reachable(h: usize, target: usize, remaining: usize, allow_horizontal: bool) -> bool {
    let gap = h.abs_diff(target);
    gap <= remaining && (allow_horizontal || (remaining - gap).is_multiple_of(2))
}

/// Calls `visit` on every path of length n from height m to height k, in
/// lexicographic order U < H < D. Depth-first with height pruning.
pub fn for_each(m: usize, k: usize, n: usize, allow_horizontal: bool, mut visit: impl FnMut(&[Step])) {
    fn go(
        h: usize,
        k: usize,
        remaining: usize,
        allow_h: bool,
        buf: &mut Vec<Step>,
        visit: &mut dyn FnMut(&[Step]),
    ) {
        if remaining == 0 {
            if h == k {
                visit(buf);
            }
            return;
        }
        let candidates: [(Step, Option<usize>); 3] = [
            (Step::U, Some(h + 1)),
            (Step::H, allow_h.then_some(h)),
            (Step::D, h.checked_sub(1)),
        ];
        for (s, next) in candidates {
            let Some(next) = next else { continue };
            if reachable(next, k, remaining - 1, allow_h) {
                buf.push(s);
                go(next, k, remaining - 1, allow_h, buf, visit);
                buf.pop();
            }
        }
    }
    if !reachable(m, k, n, allow_horizontal) {
        return;
    }
    let mut buf = Vec::with_capacity(n);
    go(m, k, n, allow_horizontal, &mut buf, &mut visit);
}

/// All Motzkin paths of length n from height m to height k.
pub fn enumerate(m: usize, k: usize, n: usize, opts: EnumOptions) -> Result<Vec<MotzkinPath>, Error> {
    guard(m, k, n, opts)?;
    let mut out = Vec::new();
    for_each(m, k, n, opts.allow_horizontal, |steps| {
        out.push(MotzkinPath { start_height: m, steps: steps.to_vec() });
    });
    Ok(out)
}

/// Viennot weight of a path.
pub fn weight(spec: &RecurrenceSpec, p: &MotzkinPath) -> Poly {
    let mut w = Poly::one();
    let mut h = p.start_height;
    for s in &p.steps {
        match s {
            Step::U => h += 1,
            Step::H => w = &w * &spec.b(h),
            Step::D => {
                w = &w * &spec.lambda(h);
                h -= 1;
            }
        }
    }
    w
}

/// Weight in which the up and the down step between heights j-1 and j both
/// carry s_j = √λ_j; horizontal steps keep b_j.
pub fn weight_modified(spec: &RecurrenceSpec, p: &MotzkinPath) -> Poly {
    let mut w = Poly::one();
    let mut h = p.start_height;
    for s in &p.steps {
        match s {
            Step::U => {
                h += 1;
                w = &w * &Poly::var(Indet::S(h));
            }
            Step::H => w = &w * &spec.b(h),
            Step::D => {
                w = &w * &Poly::var(Indet::S(h));
                h -= 1;
            }
        }
    }
    w
}

/// The modified weight with every s_j^2 turned back into the family's λ_j.
pub fn reduced_modified_weight(spec: &RecurrenceSpec, p: &MotzkinPath) -> Result<Poly, Error> {
    Ok(spec.specialize(&weight_modified(spec, p).reduce_sqrt()?))
}

/// σ_{n,m,k} as the weight sum over all paths m ⇝ k of length n.
pub fn sigma_by_enumeration(
    spec: &RecurrenceSpec,
    n: usize,
    m: usize,
    k: usize,
    opts: EnumOptions,
) -> Result<Poly, Error> {
    guard(m, k, n, opts)?;
    let top = m + n + 1;
    let b: Vec<Poly> = (0..=top).map(|i| spec.b(i)).collect();
    let lambda: Vec<Poly> = (0..=top).map(|i| spec.lambda(i)).collect();
    let mut total = Poly::zero();
    for_each(m, k, n, opts.allow_horizontal, |steps| {
        let mut w = Poly::one();
        let mut h = m;
        for s in steps {
            match s {
                Step::U => h += 1,
                Step::H => w = &w * &b[h],
                Step::D => {
                    w = &w * &lambda[h];
                    h -= 1;
                }
            }
            if w.is_zero() {
                return;
            }
        }
        total += &w;
    });
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: usize) -> Poly {
        Poly::var(Indet::B(i))
    }
    fn l(i: usize) -> Poly {
        Poly::var(Indet::L(i))
    }
    fn s(i: usize) -> Poly {
        Poly::var(Indet::S(i))
    }

    #[test]
    fn rejects_negative_heights() {
        assert!(MotzkinPath::new(0, vec![Step::D]).is_err());
        assert!(MotzkinPath::new(1, vec![Step::D, Step::U]).is_ok());
        let p: MotzkinPath = "m=2:UHDD".parse().unwrap();
        assert_eq!(p.end_height(), 1);
        assert_eq!(p.heights(), vec![2, 3, 3, 2, 1]);
        assert_eq!(p.to_string(), "m=2:UHDD");
        assert!("m=0:UX".parse::<MotzkinPath>().is_err());
    }

    #[test]
    fn motzkin_number_and_fig1() {
        assert_eq!(enumerate(0, 0, 4, EnumOptions::default()).unwrap().len(), 9);
        let fig1 = enumerate(0, 1, 3, EnumOptions::default()).unwrap();
        let shown: Vec<String> = fig1.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["m=0:UUD", "m=0:UHH", "m=0:UDU", "m=0:HUH", "m=0:HHU"]);
        assert!(enumerate(2, 0, 1, EnumOptions::default()).unwrap().is_empty());
        assert_eq!(count(0, 1, 3, true), BigUint::from(5u32));
    }

    #[test]
    fn enumeration_matches_count() {
        for n in 0..9 {
            for m in 0..4 {
                for k in 0..5 {
                    for allow in [true, false] {
                        let mut seen = 0u64;
                        for_each(m, k, n, allow, |_| seen += 1);
                        assert_eq!(BigUint::from(seen), count(m, k, n, allow), "{m}->{k} len {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn dyck_counts_are_catalan() {
        let catalan = [1u64, 1, 2, 5, 14, 42, 132];
        for (n, c) in catalan.iter().enumerate() {
            assert_eq!(count(0, 0, 2 * n, false), BigUint::from(*c));
        }
    }

    #[test]
    fn weights() {
        let sym = RecurrenceSpec::symbolic();
        let p: MotzkinPath = "m=0:UHD".parse().unwrap();
        assert_eq!(weight(&sym, &p), &b(1) * &l(1));
        assert!(weight(&sym, &"UU".parse().unwrap()).is_one());
        assert_eq!(weight(&sym, &"UDU".parse().unwrap()), l(1));
    }

    #[test]
    fn modified_weights() {
        let sym = RecurrenceSpec::symbolic();
        let ud: MotzkinPath = "m=3:UD".parse().unwrap();
        assert_eq!(weight_modified(&sym, &ud), s(4).pow(2));
        assert_eq!(reduced_modified_weight(&sym, &ud).unwrap(), l(4));

        let her = RecurrenceSpec::hermite();
        let uudd: MotzkinPath = "m=5:UUDD".parse().unwrap();
        assert_eq!(weight_modified(&her, &uudd), &s(6).pow(2) * &s(7).pow(2));
        assert_eq!(reduced_modified_weight(&her, &uudd).unwrap(), Poly::int(7 * 6));

        let open: MotzkinPath = "m=2:U".parse().unwrap();
        assert_eq!(weight_modified(&sym, &open), s(3));
        assert!(matches!(reduced_modified_weight(&sym, &open), Err(Error::OddSqrtExponent(3))));
    }

    #[test]
    fn sigma_examples() {
        let sym = RecurrenceSpec::symbolic();
        let expect = b(0).pow(2) + &b(0) * &b(1) + b(1).pow(2) + l(1) + l(2);
        assert_eq!(sigma_by_enumeration(&sym, 3, 0, 1, EnumOptions::default()).unwrap(), expect);
        let her = RecurrenceSpec::hermite();
        assert_eq!(sigma_by_enumeration(&her, 2, 4, 4, EnumOptions::default()).unwrap(), Poly::int(9));
        for m in 0..5 {
            assert!(sigma_by_enumeration(&sym, 0, m, m, EnumOptions::default()).unwrap().is_one());
        }
    }

    #[test]
    fn size_guard() {
        let opts = EnumOptions::default().with_cap(100);
        assert!(matches!(
            sigma_by_enumeration(&RecurrenceSpec::hermite(), 12, 0, 0, opts),
            Err(Error::SizeGuard { .. })
        ));
        assert!(enumerate(0, 0, 4, opts).is_ok());
    }

    #[test]
    fn modified_weight_reduces_on_closed_paths() {
        let specs = [RecurrenceSpec::symbolic(), RecurrenceSpec::hermite(), RecurrenceSpec::laguerre_symbolic()];
        for spec in &specs {
            for n in 0..=8 {
                for m in 0..3 {
                    for p in enumerate(m, m, n, EnumOptions::default()).unwrap() {
                        assert_eq!(reduced_modified_weight(spec, &p).unwrap(), weight(spec, &p), "{p}");
                    }
                }
            }
        }
    }
}
