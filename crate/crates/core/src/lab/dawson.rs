use rand::Rng;

use super::graph::rng_stream;
use crate::error::{Error, Result};

/// Events as subsets of a universe of at most 64 points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventFamily {
    universe: usize,
    events: Vec<u64>,
}

impl EventFamily {
    pub fn new(universe: usize, events: Vec<u64>) -> Result<Self> {
        if universe == 0 || universe > 64 {
            return Err(Error::domain(format!("universe size {universe} not in 1..=64")));
        }
        if events.is_empty() {
            return Err(Error::domain("a family needs at least one event"));
        }
        let full = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
        if events.iter().any(|&e| e & !full != 0) {
            return Err(Error::domain("event outside the universe"));
        }
        Ok(EventFamily { universe, events })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn events(&self) -> &[u64] {
        &self.events
    }

    /// `B_s`: the points lying in exactly `s` events, for `s = 0..=M`.
    pub fn multiplicity_sets(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.events.len() + 1];
        for p in 0..self.universe {
            let s = self.events.iter().filter(|&&e| e >> p & 1 == 1).count();
            out[s] |= 1 << p;
        }
        out
    }
}

/// Outcome of the second-order union bound at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DawsonCheck {
    pub in_union: bool,
    /// Number of events containing the point.
    pub s1: u64,
    /// Number of unordered pairs of events containing the point.
    pub s2: u64,
    /// Values of `r` where the inequality fails.
    pub violations: Vec<u64>,
    /// Values of `r` where it holds with equality.
    pub tight: Vec<u64>,
    /// Whether `sum_s s 1{B_s} = S1` and `sum_s C(s, 2) 1{B_s} = S2` hold
    /// at the point and the `B_s` partition the universe.
    pub identities_hold: bool,
}

impl DawsonCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.identities_hold
    }
}

/// Checks `1{union} >= 2 S1 / (r + 1) - 2 S2 / (r (r + 1))` at `point` for
/// every `r` in `1..M`, in exact integer arithmetic.
pub fn dawson_check(family: &EventFamily, point: usize) -> Result<DawsonCheck> {
    if point >= family.universe {
        return Err(Error::domain(format!("point {point} outside the universe")));
    }
    let inside = |e: u64| e >> point & 1 == 1;
    let s1 = family.events.iter().filter(|&&e| inside(e)).count() as u64;
    let s2 = s1 * s1.saturating_sub(1) / 2;
    let in_union = s1 > 0;
    let m = family.events.len() as u64;
    let (mut violations, mut tight) = (Vec::new(), Vec::new());
    for r in 1..m {
        // multiply through by r (r + 1)
        let lhs = (r * (r + 1)) as i128 * in_union as i128;
        let rhs = 2 * r as i128 * s1 as i128 - 2 * s2 as i128;
        if lhs < rhs {
            violations.push(r);
        } else if lhs == rhs {
            tight.push(r);
        }
    }
    let b = family.multiplicity_sets();
    let full = if family.universe == 64 { u64::MAX } else { (1u64 << family.universe) - 1 };
    let disjoint = b.iter().enumerate().all(|(i, x)| b[..i].iter().all(|y| x & y == 0));
    let covers = b.iter().fold(0, |a, x| a | x) == full;
    let ind = |s: usize| b[s] >> point & 1;
    let id1: u64 = (0..b.len()).map(|s| s as u64 * ind(s)).sum();
    let id2: u64 = (0..b.len()).map(|s| (s as u64 * (s as u64).saturating_sub(1) / 2) * ind(s)).sum();
    Ok(DawsonCheck {
        in_union,
        s1,
        s2,
        violations,
        tight,
        identities_hold: disjoint && covers && id1 == s1 && id2 == s2,
    })
}

/// A family of `1..=max_events` random events; each point joins each event
/// with probability `density`.
pub fn random_family(rng: &mut impl Rng, max_events: usize, universe: usize, density: f64) -> Result<EventFamily> {
    let m = rng.random_range(1..=max_events.max(1));
    let events = (0..m)
        .map(|_| (0..universe).fold(0u64, |e, p| if rng.random_bool(density) { e | 1 << p } else { e }))
        .collect();
    EventFamily::new(universe, events)
}

/// `m` copies of one event.
pub fn identical_family(universe: usize, event: u64, m: usize) -> Result<EventFamily> {
    EventFamily::new(universe, vec![event; m])
}

#[derive(Debug, Clone, PartialEq)]
pub struct DawsonSuiteReport {
    pub families: usize,
    pub point_checks: u64,
    /// First failing family, point and check, if any.
    pub counterexample: Option<(EventFamily, usize, DawsonCheck)>,
    /// Whether every identical-event family was tight at `r = M - 1`.
    pub equality_at_identical: bool,
}

impl DawsonSuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.equality_at_identical
    }
}

/// Checks `families` random families at every point, plus identical-event
/// families for each `M` in `2..=max_events`.
pub fn dawson_suite(families: usize, max_events: usize, universe: usize, seed: u64) -> Result<DawsonSuiteReport> {
    let mut rng = rng_stream(seed, 0);
    let mut point_checks = 0;
    let mut counterexample = None;
    for k in 0..families {
        let density = [0.1, 0.3, 0.5, 0.8][k % 4];
        let fam = random_family(&mut rng, max_events, universe, density)?;
        for p in 0..universe {
            let chk = dawson_check(&fam, p)?;
            point_checks += 1;
            if !chk.holds() && counterexample.is_none() {
                counterexample = Some((fam.clone(), p, chk));
            }
        }
    }
    let mut equality_at_identical = true;
    for m in 2..=max_events.max(2) {
        let fam = identical_family(universe, 1, m)?;
        let chk = dawson_check(&fam, 0)?;
        point_checks += 1;
        equality_at_identical &= chk.tight.contains(&(m as u64 - 1));
    }
    Ok(DawsonSuiteReport {
        families,
        point_checks,
        counterexample,
        equality_at_identical,
    })
}
