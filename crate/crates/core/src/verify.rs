//! Exhaustive consistency checks between the bijections, the enumerators and
//! the generating functions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::animal::{count_animals, enumerate_animals_with_budget, AnimalClass, Budget};
use crate::bijection::{
    animal_from_connected_heap, animal_from_connected_heap_with, animal_from_pyramid,
    enumerate_heaps_with_limit, for_each_heap, nordic_compose, nordic_decompose, project,
    HeapClass,
};
use crate::heap::Heap;
use crate::series::{
    check_a_k, check_lemma_hd, series_d1, series_dj, series_m, series_s, LemmaCheck,
};

/// Largest `k` covered by the strip-heap identities.
pub const LEMMA_KMAX: u32 = 4;

/// Failures listed in a report; the rest are only counted.
const MAX_LISTED_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Ak,
    Bijections,
    LemmaHd,
    Nordic,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Ak,
        Suite::Bijections,
        Suite::LemmaHd,
        Suite::Nordic,
        Suite::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Ak => "ak",
            Suite::Bijections => "bijections",
            Suite::LemmaHd => "lemma-hd",
            Suite::Nordic => "nordic",
            Suite::Oracle => "oracle",
        }
    }

    /// Runs the suite; `max_area` bounds enumerations and `order` the series.
    pub fn run(&self, max_area: usize, order: usize) -> SuiteReport {
        match self {
            Suite::Ak => lemma_report(self.name(), check_a_k(order, LEMMA_KMAX)),
            Suite::Bijections => check_bijections(max_area),
            Suite::LemmaHd => lemma_report(self.name(), check_lemma_hd(order, LEMMA_KMAX)),
            Suite::Nordic => check_nordic(max_area),
            Suite::Oracle => check_oracle(max_area, max_area),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    /// Number of individual checks performed.
    pub checked: u64,
    pub failure_count: u64,
    /// The first few failures.
    pub failures: Vec<String>,
}

/// Accumulates check outcomes.
#[derive(Debug)]
struct Tally {
    suite: &'static str,
    checked: u64,
    failure_count: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new(suite: &'static str) -> Self {
        Tally {
            suite,
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn report(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite.to_string(),
            pass: self.failure_count == 0,
            checked: self.checked,
            failure_count: self.failure_count,
            failures: self.failures,
        }
    }
}

fn lemma_report(suite: &'static str, checks: Vec<LemmaCheck>) -> SuiteReport {
    let mut tally = Tally::new(suite);
    for c in checks {
        tally.check(c.pass, || {
            format!(
                "k={}: coefficients differ from t^{}",
                c.k,
                c.first_failure.unwrap_or(0)
            )
        });
    }
    tally.report()
}

fn unlimited() -> Budget {
    Budget {
        max_area_all: usize::MAX,
        max_area_directed: usize::MAX,
    }
}

fn heaps(n: usize, class: HeapClass) -> Vec<Heap> {
    enumerate_heaps_with_limit(n, class, usize::MAX).expect("n ≥ 1")
}

/// Every maximal-piece choice sequence tried on `c`: each index at the
/// first removal, followed by either the first or the last maximal piece.
fn choice_independent(c: &Heap, expected: &crate::animal::Animal) -> bool {
    let first = c.maximal_pieces().len();
    (0..first).all(|i| {
        [false, true].into_iter().all(|take_last| {
            let mut calls = 0;
            let built = animal_from_connected_heap_with(c, |maximal| {
                calls += 1;
                match (calls, take_last) {
                    (1, _) => i,
                    (_, false) => 0,
                    (_, true) => maximal.len() - 1,
                }
            });
            built.as_ref() == Ok(expected)
        })
    })
}

/// Round trips of both bijections on every instance of size `1..=max_area`,
/// and independence of the reconstruction from the maximal pieces chosen.
pub fn check_bijections(max_area: usize) -> SuiteReport {
    let mut t = Tally::new("bijections");
    for n in 1..=max_area {
        let directed =
            enumerate_animals_with_budget(n, AnimalClass::Directed, unlimited()).expect("n ≥ 1");
        for a in &directed {
            let p = project(a);
            t.check(
                p.is_pyramid() && animal_from_pyramid(&p).as_ref() == Ok(a),
                || format!("directed animal {a:?} does not round trip"),
            );
        }
        let pyramids = heaps(n, HeapClass::Pyramid);
        t.check(pyramids.len() == directed.len(), || {
            format!(
                "n={n}: {} pyramids vs {} directed animals",
                pyramids.len(),
                directed.len()
            )
        });
        for p in &pyramids {
            let back = animal_from_pyramid(p).map(|a| project(&a));
            t.check(back == Ok(p.canonical_translate()), || {
                format!("pyramid {p:?} does not round trip")
            });
        }

        let multi =
            enumerate_animals_with_budget(n, AnimalClass::Multi, unlimited()).expect("n ≥ 1");
        for a in &multi {
            let c = project(a);
            t.check(
                c.is_connected() && animal_from_connected_heap(&c).as_ref() == Ok(a),
                || format!("multi-directed animal {a:?} does not round trip"),
            );
        }
        let connected = heaps(n, HeapClass::Connected);
        t.check(connected.len() == multi.len(), || {
            format!(
                "n={n}: {} connected heaps vs {} multi-directed animals",
                connected.len(),
                multi.len()
            )
        });
        for c in &connected {
            match animal_from_connected_heap(c) {
                Ok(a) => {
                    t.check(project(&a) == *c, || {
                        format!("connected heap {c:?} does not round trip")
                    });
                    t.check(choice_independent(c, &a), || {
                        format!("connected heap {c:?} depends on the maximal piece chosen")
                    });
                }
                Err(e) => t.check(false, || format!("connected heap {c:?}: {e}")),
            }
        }
    }
    t.report()
}

/// Nordic decomposition and recomposition of every non-pyramid connected
/// heap of length `1..=max_area`.
pub fn check_nordic(max_area: usize) -> SuiteReport {
    let mut t = Tally::new("nordic");
    for n in 1..=max_area {
        for_each_heap(n, HeapClass::Connected, |c| {
            if c.is_pyramid() {
                return;
            }
            match nordic_decompose(&c) {
                Ok(q) => {
                    t.check(q.validate().is_ok(), || {
                        format!("{c:?}: invalid quadruple {q:?}")
                    });
                    t.check(q.c1.max_right() == Some(-1), || {
                        format!("{c:?}: c1 is not in place")
                    });
                    t.check(nordic_compose(&q).as_ref() == Ok(&c), || {
                        format!("{c:?}: recomposition differs")
                    });
                }
                Err(e) => t.check(false, || format!("{c:?}: {e}")),
            }
        });
    }
    t.report()
}

fn compare_counts(t: &mut Tally, what: &str, counted: &[u64], expected: &[BigInt], from: usize) {
    for n in from..counted.len() {
        t.check(BigInt::from(counted[n]) == expected[n], || {
            format!(
                "{what} n={n}: counted {} expected {}",
                counted[n], expected[n]
            )
        });
    }
}

fn coefficients(s: crate::series::TruncatedSeries) -> Vec<BigInt> {
    s.integer_coefficients().expect("named series are integral")
}

/// Brute-force counts against series coefficients: directed animals and
/// pyramids against `D`, half-animals against `S`, directed animals by left
/// half-width against `D_j` (areas up to `max_directed`); multi-directed
/// animals and connected heaps against `M` (areas up to `max_multi`).
#[allow(clippy::needless_range_loop)] // areas index several tables at once
pub fn check_oracle(max_directed: usize, max_multi: usize) -> SuiteReport {
    let mut t = Tally::new("oracle");
    let d = coefficients(series_d1(max_directed));
    let s = coefficients(series_s(max_directed));
    compare_counts(
        &mut t,
        "directed",
        &count_animals(max_directed, AnimalClass::Directed),
        &d,
        1,
    );
    compare_counts(
        &mut t,
        "half",
        &count_animals(max_directed, AnimalClass::Half),
        &s,
        1,
    );

    let mut pyramids = vec![0u64; max_directed + 1];
    for (n, slot) in pyramids.iter_mut().enumerate().skip(1) {
        for_each_heap(n, HeapClass::Pyramid, |_| *slot += 1);
    }
    compare_counts(&mut t, "pyramids", &pyramids, &d, 1);

    let dj: Vec<Vec<BigInt>> = (0..max_directed as u32)
        .map(|j| coefficients(series_dj(max_directed, j)))
        .collect();
    for n in 1..=max_directed {
        let mut by_width = vec![0u64; n];
        for a in
            enumerate_animals_with_budget(n, AnimalClass::Directed, unlimited()).expect("n ≥ 1")
        {
            let j = a.left_half_width().expect("directed") as usize;
            by_width[j] += 1;
        }
        for (j, &count) in by_width.iter().enumerate() {
            t.check(BigInt::from(count) == dj[j][n], || {
                format!(
                    "left half-width {j}, n={n}: counted {count} expected {}",
                    dj[j][n]
                )
            });
        }
    }

    let m = coefficients(series_m(max_multi));
    compare_counts(
        &mut t,
        "multi-directed",
        &count_animals(max_multi, AnimalClass::Multi),
        &m,
        1,
    );
    let mut connected = vec![0u64; max_multi + 1];
    for (n, slot) in connected.iter_mut().enumerate().skip(1) {
        for_each_heap(n, HeapClass::Connected, |_| *slot += 1);
    }
    compare_counts(&mut t, "connected heaps", &connected, &m, 1);
    t.report()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_sizes() {
        for suite in Suite::ALL {
            let r = suite.run(5, 10);
            assert!(r.pass, "{r:#?}");
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>(), Ok(suite));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn failures_are_capped() {
        let mut t = Tally::new("x");
        for i in 0..30 {
            t.check(false, || i.to_string());
        }
        let r = t.report();
        assert!(!r.pass);
        assert_eq!(r.failure_count, 30);
        assert_eq!(r.failures.len(), MAX_LISTED_FAILURES);
    }
}
