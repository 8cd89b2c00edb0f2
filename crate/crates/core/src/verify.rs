//! Batch checks of the path identities. Each suite walks a grid of cells and
//! records how many passed and the first counterexample.

use std::fmt;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::bijection::{dyck_paths, dyck_to_slh, expand_horizontals, slh_to_motzkin, thm35_sides, thm38_sides, GammaSpec};
use crate::lecturehall::{
    count_level1_to_0, count_level2_to_1, entering_paths, g_by_enumeration, g_val, h_by_enumeration, h_val,
    level0_bottom, level1_bottom, level1_point, partial_weight_sum, se_enumerate, se_weight, LambdaWeights, Parity,
    SlhPoint, WeightSystem,
};
use crate::motzkin::{self, weight};
use crate::orthopoly::{RecurrenceSpec, SigmaTable};
use crate::quantum::hermite_mixed_closed;
use crate::ring::Poly;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub cells: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), cells: 0, failures: 0, first_failure: None }
    }

    pub fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cells += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.name,
            "status": if self.passed() { "pass" } else { "fail" },
            "cells": self.cells,
            "failures": self.failures,
            "first_failure": self.first_failure,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_failure {
            None => write!(f, "{}: pass ({} cells)", self.name, self.cells),
            Some(d) => write!(f, "{}: FAIL ({} of {} cells), first: {d}", self.name, self.failures, self.cells),
        }
    }
}

fn eq_detail(what: String, left: &Poly, right: &Poly) -> impl FnOnce() -> String {
    let (l, r) = (left.to_string(), right.to_string());
    move || format!("{what}: {l} != {r}")
}

/// σ_{2n,2k} and σ_{2n+1,2k+1} against the w_e and w_o sums, plus the
/// path-by-path bijection with its weights, for k ≤ n ≤ max_n.
pub fn thm35(spec: &RecurrenceSpec, max_n: usize, cap: u64) -> Result<Report, Error> {
    let mut rep = Report::new(format!("thm35[{}]", spec.label()));
    for n in 0..=max_n {
        for k in 0..=n {
            let [se, le, so, lo] = thm35_sides(spec, n, k, cap)?;
            rep.check(se == le, eq_detail(format!("even n={n} k={k}"), &se, &le));
            rep.check(so == lo, eq_detail(format!("odd n={n} k={k}"), &so, &lo));
            for parity in [Parity::Even, Parity::Odd] {
                let ws = LambdaWeights::new(spec.clone(), parity);
                for p in dyck_paths(n, k, parity, cap)? {
                    let q = dyck_to_slh(&p, parity)?;
                    let ok = se_weight(&ws, &q) == weight(spec, &p) && slh_to_motzkin(&q, parity).as_ref() == Ok(&p);
                    rep.check(ok, || format!("{parity:?} path {p} -> {q}"));
                }
            }
        }
    }
    Ok(rep)
}

/// σ_{n,k} against the w_γ sum for k ≤ n ≤ max_n, and the two-colouring
/// expansion sums for Motzkin paths of length ≤ min(max_n, 6).
pub fn thm38(spec: &RecurrenceSpec, g: &GammaSpec, max_n: usize, cap: u64) -> Result<Report, Error> {
    let mut rep = Report::new(format!("thm38[{}]", spec.label()));
    for n in 0..=max_n {
        for k in 0..=n {
            let [sigma, sum] = thm38_sides(spec, g, n, k, cap)?;
            rep.check(sigma == sum, eq_detail(format!("n={n} k={k}"), &sigma, &sum));
        }
    }
    for len in 0..=max_n.min(6) {
        for end in 0..=len {
            for p in motzkin::enumerate(0, end, len, motzkin::EnumOptions::default().with_cap(cap))? {
                let total: Poly = expand_horizontals(g, &p).into_iter().map(|(_, w)| w).sum();
                let want = weight(spec, &p);
                rep.check(total == want, eq_detail(format!("expansion of {p}"), &total, &want));
            }
        }
    }
    Ok(rep)
}

/// Enumerated counts against C(n,k) and the ballot numbers.
pub fn prop33(max_n: usize, cap: u64) -> Result<Report, Error> {
    let mut rep = Report::new("prop33");
    for n in 0..=max_n {
        for k in 0..=n {
            let upper = BigUint::from(se_enumerate(SlhPoint::Top(k), level1_bottom(n), cap)?.len());
            let want = count_level2_to_1(n, k);
            rep.check(upper == want, || format!("(k,2)->(n,1) n={n} k={k}: {upper} != {want}"));
            let lower = BigUint::from(entering_paths(level1_point(k), level0_bottom(n), cap)?.len());
            let want = count_level1_to_0(n, k);
            rep.check(lower == want, || format!("(k,1)->(n,0) n={n} k={k}: {lower} != {want}"));
        }
    }
    Ok(rep)
}

fn weight_pair() -> (RecurrenceSpec, LambdaWeights, LambdaWeights) {
    let spec = RecurrenceSpec::symbolic_lambda();
    (spec.clone(), LambdaWeights::even(spec.clone()), LambdaWeights::odd(spec))
}

/// The four g/h identities with symbolic λ; both the recurrence and the
/// direct path sum are compared with σ. The w_e g-identity starts at k = 1.
/// A path (k,2) → (n,1) under w_o has n steps and starts at height n+1, so
/// its sum is σ_{n,n+1,2k+1}.
pub fn prop36(max_n: usize, cap: u64) -> Result<Report, Error> {
    let (spec, we, wo) = weight_pair();
    let table = SigmaTable::build(&spec, 2 * max_n + 1, max_n + 1);
    let sigma = |n: usize, m: usize, k: usize| table.get(n, m, k).expect("table covers the grid");
    let mut rep = Report::new("prop36");
    for n in 0..=max_n {
        for k in 0..=n {
            let mut cell = |label: &str, rec: Poly, en: Poly, want: Poly| {
                let ok = rec == want && en == want;
                rep.check(ok, eq_detail(format!("{label} n={n} k={k}"), &en, &want));
            };
            if k >= 1 {
                cell("g[w_e]", g_val(&we, n, k), g_by_enumeration(&we, n, k, cap)?, sigma(2 * n - k - 1, 0, k - 1));
            }
            cell("h[w_e]", h_val(&we, n, k), h_by_enumeration(&we, n, k, cap)?, sigma(n, n, 2 * k));
            cell("g[w_o]", g_val(&wo, n, k), g_by_enumeration(&wo, n, k, cap)?, sigma(2 * n - k, 0, k));
            cell("h[w_o]", h_val(&wo, n, k), h_by_enumeration(&wo, n, k, cap)?, sigma(n, n + 1, 2 * k + 1));
        }
    }
    Ok(rep)
}

/// σ_{2n,2k} = Σ_r σ_{2n-r-1,r-1}σ_{r,r,2k} and
/// σ_{2n+1,2k+1} = Σ_r σ_{2n-r,r}σ_{r,r+1,2k+1}, r = k..n, symbolic λ.
/// The r = 0 factor of the even sum has no σ form; it is the path sum
/// g^{w_e}_{n,0}, which is 1 for n = 0 and 0 otherwise.
pub fn cor37(max_n: usize, cap: u64) -> Result<Report, Error> {
    let (spec, we, _) = weight_pair();
    let table = SigmaTable::build(&spec, 2 * max_n + 1, max_n + 1);
    let sigma = |n: usize, m: usize, k: usize| table.get(n, m, k).expect("table covers the grid");
    let mut rep = Report::new("cor37");
    for n in 0..=max_n {
        for k in 0..=n {
            let mut even = Poly::zero();
            let mut odd = Poly::zero();
            for r in k..=n {
                let left = if r == 0 { g_by_enumeration(&we, n, 0, cap)? } else { sigma(2 * n - r - 1, 0, r - 1) };
                even += &(&left * &sigma(r, r, 2 * k));
                odd += &(&sigma(2 * n - r, 0, r) * &sigma(r, r + 1, 2 * k + 1));
            }
            let (we_, wo_) = (sigma(2 * n, 0, 2 * k), sigma(2 * n + 1, 0, 2 * k + 1));
            rep.check(even == we_, eq_detail(format!("even n={n} k={k}"), &even, &we_));
            rep.check(odd == wo_, eq_detail(format!("odd n={n} k={k}"), &odd, &wo_));
        }
    }
    Ok(rep)
}

/// The g and h recurrences against direct path sums for w_e, w_o and w_γ.
pub fn lemmas(max_n: usize, cap: u64) -> Result<Report, Error> {
    let (_, we, wo) = weight_pair();
    let wg = GammaSpec::symbolic().weights();
    let systems: [&dyn WeightSystem; 3] = [&we, &wo, &wg];
    let mut rep = Report::new("lemmas");
    for ws in systems {
        for n in 0..=max_n {
            for k in 0..=n + 1 {
                let (rec, en) = (g_val(ws, n, k), g_by_enumeration(ws, n, k, cap)?);
                rep.check(rec == en, eq_detail(format!("g {} n={n} k={k}", ws.name()), &rec, &en));
                let (rec, en) = (h_val(ws, n, k), h_by_enumeration(ws, n, k, cap)?);
                rep.check(rec == en, eq_detail(format!("h {} n={n} k={k}", ws.name()), &rec, &en));
            }
        }
    }
    Ok(rep)
}

/// Hermite lecture hall sums against the factorial closed forms, both parities.
pub fn hermite_closed(max_n: usize, cap: u64) -> Result<Report, Error> {
    let spec = RecurrenceSpec::hermite();
    let mut rep = Report::new("hermite_closed");
    for parity in [Parity::Even, Parity::Odd] {
        let ws = LambdaWeights::new(spec.clone(), parity);
        for n in 0..=max_n {
            for k in 0..=n {
                let sum = partial_weight_sum(&ws, SlhPoint::Top(k), level0_bottom(n), cap)?;
                let want = Poly::constant(hermite_mixed_closed(n, k, parity));
                rep.check(sum == want, eq_detail(format!("{parity:?} n={n} k={k}"), &sum, &want));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ENUM_CAP as CAP;

    #[test]
    fn suites_pass_on_small_grids() {
        let reports = [
            thm35(&RecurrenceSpec::symbolic_lambda(), 3, CAP).unwrap(),
            thm38(&RecurrenceSpec::laguerre_symbolic(), &GammaSpec::laguerre(Poly::var(crate::Indet::Alpha)), 3, CAP)
                .unwrap(),
            prop33(5, CAP).unwrap(),
            prop36(4, CAP).unwrap(),
            cor37(4, CAP).unwrap(),
            lemmas(4, CAP).unwrap(),
            hermite_closed(5, CAP).unwrap(),
        ];
        for r in &reports {
            assert!(r.passed(), "{r}");
            assert!(r.cells > 0);
        }
    }

    #[test]
    fn failures_are_reported() {
        let mut r = Report::new("x");
        r.check(true, || unreachable!());
        r.check(false, || "first".into());
        r.check(false, || "second".into());
        assert!(!r.passed());
        assert_eq!(r.to_string(), "x: FAIL (2 of 3 cells), first: first");
        assert_eq!(r.to_json()["status"], "fail");
    }

    #[test]
    fn wrong_family_is_rejected() {
        assert_eq!(thm35(&RecurrenceSpec::symbolic(), 2, CAP), Err(Error::NonzeroB(0)));
        let mismatch = thm38(&RecurrenceSpec::hermite(), &GammaSpec::symbolic(), 2, CAP);
        assert!(matches!(mismatch, Err(Error::GammaMismatch(_))));
    }
}
