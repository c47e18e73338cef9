//! The walk-weight neighborhood base on the ordinals plus an apex point.
//!
//! A basic open set is anchored at a limit ordinal `a` with a level `n`:
//! it contains the apex, every ordinal at or above `a`, and every `xi < a`
//! whose walk to `a` takes more than `n` steps. Raising the level shrinks
//! the set, so the family over all `n` at a fixed anchor is a countable
//! descending scheme; [`gdelta_separate`] uses one such scheme to push a
//! finite set of ordinals away from the apex, with an explicit per-point
//! exclusion certificate. The extraction and merge operations build
//! sequences that the base cannot shake off of a limit anchor.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::walks::rho2;

/// A point of the space: an ordinal or the added apex above all of them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    Ord(Ordinal),
    Apex,
}

/// Basic open neighborhood `{apex} ∪ {xi >= anchor} ∪ {xi < anchor :
/// rho2(xi, anchor) > level}` for a limit `anchor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicOpen {
    anchor: Ordinal,
    level: u64,
}

impl BasicOpen {
    pub fn new(anchor: Ordinal, level: u64) -> Result<BasicOpen> {
        if !anchor.is_limit() {
            return Err(Error::pre(format!(
                "basic opens are anchored at limit ordinals, got {anchor}"
            )));
        }
        Ok(BasicOpen { anchor, level })
    }

    pub fn anchor(&self) -> &Ordinal {
        &self.anchor
    }

    pub fn level(&self) -> u64 {
        self.level
    }
}

/// Finite union description: one `(anchor, level)` entry per distinct
/// limit anchor. An ordinal at or above every anchor is in no entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodDescriptor {
    entries: Vec<BasicOpen>,
}

impl NeighborhoodDescriptor {
    pub fn new(entries: Vec<(Ordinal, u64)>) -> Result<NeighborhoodDescriptor> {
        let mut seen = BTreeSet::new();
        let mut opens = Vec::with_capacity(entries.len());
        for (anchor, level) in entries {
            if !seen.insert(anchor.clone()) {
                return Err(Error::pre(format!("duplicate anchor {anchor}")));
            }
            opens.push(BasicOpen::new(anchor, level)?);
        }
        Ok(NeighborhoodDescriptor { entries: opens })
    }

    pub fn entries(&self) -> &[BasicOpen] {
        &self.entries
    }
}

/// Membership in one basic open set.
pub fn member(point: &Point, open: &BasicOpen) -> Result<bool> {
    match point {
        Point::Apex => Ok(true),
        Point::Ord(xi) => {
            if *xi >= open.anchor {
                return Ok(true);
            }
            Ok(rho2(xi, &open.anchor)? > open.level)
        }
    }
}

/// Membership in the union described by a descriptor. For an ordinal this
/// requires some entry with `xi < anchor` and `rho2(xi, anchor) > level`,
/// so an ordinal at or above every anchor is in no entry and tests false.
/// The apex tests true against every descriptor, including the empty one.
pub fn member_descriptor(point: &Point, descriptor: &NeighborhoodDescriptor) -> Result<bool> {
    match point {
        Point::Apex => Ok(true),
        Point::Ord(xi) => {
            for open in &descriptor.entries {
                if *xi < open.anchor && rho2(xi, &open.anchor)? > open.level {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Greedy Frechet-style extraction: picks, for `n = 0, 1, ..., max_index`,
/// the least unused `xi` in `pool` with `xi < anchor` and
/// `rho2(xi, anchor) >= n`, stopping early when no candidate remains.
/// Every prefix of the result therefore escapes the first levels of the
/// anchor's scheme.
pub fn frechet_extract(
    pool: &BTreeSet<Ordinal>,
    anchor: &Ordinal,
    max_index: u64,
) -> Result<Vec<Ordinal>> {
    if !anchor.is_limit() {
        return Err(Error::pre(format!(
            "extraction needs a limit anchor, got {anchor}"
        )));
    }
    let mut used = BTreeSet::new();
    let mut picked = Vec::new();
    for n in 0..=max_index {
        let mut chosen = None;
        for xi in pool {
            if used.contains(xi) || *xi >= *anchor {
                continue;
            }
            if rho2(xi, anchor)? >= n {
                chosen = Some(xi.clone());
                break;
            }
        }
        match chosen {
            Some(xi) => {
                used.insert(xi.clone());
                picked.push(xi);
            }
            None => break,
        }
    }
    Ok(picked)
}

/// Merges countably-indexed families into one set converging to `anchor`:
/// from family `n` keep the members whose walk to `anchor` takes more
/// than `n` steps. The result meets every basic open at the anchor no
/// worse than the families do, and each family loses only points of
/// bounded walk weight.
pub fn alpha1_merge(families: &[BTreeSet<Ordinal>], anchor: &Ordinal) -> Result<BTreeSet<Ordinal>> {
    if !anchor.is_limit() {
        return Err(Error::pre(format!(
            "merge needs a limit anchor, got {anchor}"
        )));
    }
    for (n, family) in families.iter().enumerate() {
        if let Some(bad) = family.iter().find(|xi| **xi >= *anchor) {
            return Err(Error::pre(format!(
                "family {n} contains {bad}, not below the anchor {anchor}"
            )));
        }
    }
    let mut merged = BTreeSet::new();
    for (n, family) in families.iter().enumerate() {
        for xi in family {
            if rho2(xi, anchor)? > n as u64 {
                merged.insert(xi.clone());
            }
        }
    }
    Ok(merged)
}

/// A descending scheme of basic opens at one limit anchor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GdeltaScheme {
    pub beta: Ordinal,
}

impl GdeltaScheme {
    pub fn open(&self, level: u64) -> BasicOpen {
        BasicOpen {
            anchor: self.beta.clone(),
            level,
        }
    }
}

/// A separation of a finite set from the apex: the scheme's anchor, and
/// for each excluded ordinal the level that already excludes it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub beta: Ordinal,
    pub certificate: BTreeMap<Ordinal, u64>,
}

impl Separation {
    pub fn scheme(&self) -> GdeltaScheme {
        GdeltaScheme {
            beta: self.beta.clone(),
        }
    }

    pub fn open(&self, level: u64) -> BasicOpen {
        self.scheme().open(level)
    }
}

/// Separates a nonempty finite set `B` of ordinals from the apex: anchors
/// a scheme at the least limit above `max(B)` and certifies, per point,
/// the level `rho2(xi, beta)` at which the point leaves the scheme. The
/// apex stays in every level.
pub fn gdelta_separate(set: &BTreeSet<Ordinal>) -> Result<Separation> {
    let Some(max) = set.iter().next_back() else {
        return Err(Error::pre("separation needs a nonempty set"));
    };
    let beta = least_limit_above(max);
    let mut certificate = BTreeMap::new();
    for xi in set {
        certificate.insert(xi.clone(), rho2(xi, &beta)?);
    }
    Ok(Separation { beta, certificate })
}

/// Least limit ordinal strictly above `o`: strip the finite tail and add
/// one more omega.
fn least_limit_above(o: &Ordinal) -> Ordinal {
    let mut limit_part = o.clone();
    if let Some((prefix, e, _)) = o.split_last_term() {
        if e.is_zero() {
            limit_part = prefix;
        }
    }
    limit_part.add(&Ordinal::omega())
}

/// Per-anchor histogram of walk weights of a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorHistogram {
    pub anchor: Ordinal,
    /// Multiplicity of each observed `rho2(xi, anchor)` over the sequence
    /// members below the anchor.
    pub histogram: BTreeMap<u64, u64>,
}

/// Convergence summary of one set against several anchors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub anchors: Vec<AnchorHistogram>,
    /// Largest multiplicity appearing in any histogram.
    #[serde(rename = "maxFiber")]
    pub max_fiber: u64,
}

/// Histograms the walk weights of `sequence` members below each anchor.
/// Anchors must be limits; members at or above an anchor are skipped for
/// that anchor.
pub fn convergence_report(
    sequence: &BTreeSet<Ordinal>,
    anchors: &[Ordinal],
) -> Result<ConvergenceReport> {
    let mut out = Vec::with_capacity(anchors.len());
    let mut max_fiber = 0;
    for anchor in anchors {
        if !anchor.is_limit() {
            return Err(Error::pre(format!(
                "report anchors must be limits, got {anchor}"
            )));
        }
        let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
        for xi in sequence {
            if *xi >= *anchor {
                continue;
            }
            let count = histogram.entry(rho2(xi, anchor)?).or_insert(0);
            *count += 1;
            max_fiber = max_fiber.max(*count);
        }
        out.push(AnchorHistogram {
            anchor: anchor.clone(),
            histogram,
        });
    }
    Ok(ConvergenceReport {
        anchors: out,
        max_fiber,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(s: &str) -> Ordinal {
        Ordinal::parse(s).unwrap()
    }

    fn set(lits: &[&str]) -> BTreeSet<Ordinal> {
        lits.iter().map(|s| ord(s)).collect()
    }

    #[test]
    fn member_examples() {
        let u = BasicOpen::new(ord("w"), 1).unwrap();
        assert!(member(&Point::Apex, &u).unwrap());
        assert!(member(&Point::Ord(ord("w+1")), &u).unwrap());
        assert!(member(&Point::Ord(ord("w")), &u).unwrap());
        // rho2(2, w) = 1, not above level 1.
        assert!(!member(&Point::Ord(ord("2")), &u).unwrap());
        // rho2(0, w) = 2 > 1.
        assert!(member(&Point::Ord(ord("0")), &u).unwrap());

        assert!(BasicOpen::new(ord("w+1"), 0).is_err());
        assert!(BasicOpen::new(ord("0"), 0).is_err());
    }

    #[test]
    fn descriptor_examples() {
        let d = NeighborhoodDescriptor::new(vec![(ord("w^2"), 2)]).unwrap();
        assert!(member_descriptor(&Point::Ord(ord("0")), &d).unwrap());
        assert!(!member_descriptor(&Point::Ord(ord("w")), &d).unwrap());
        assert!(!member_descriptor(&Point::Ord(ord("w^2")), &d).unwrap());
        assert!(member_descriptor(&Point::Apex, &d).unwrap());

        let empty = NeighborhoodDescriptor::new(vec![]).unwrap();
        assert!(member_descriptor(&Point::Apex, &empty).unwrap());
        assert!(!member_descriptor(&Point::Ord(ord("3")), &empty).unwrap());

        assert!(NeighborhoodDescriptor::new(vec![(ord("w"), 0), (ord("w"), 4)]).is_err());
        assert!(NeighborhoodDescriptor::new(vec![(ord("7"), 0)]).is_err());
    }

    #[test]
    fn extraction_examples() {
        assert_eq!(
            frechet_extract(&set(&[]), &ord("w"), 5).unwrap(),
            Vec::<Ordinal>::new()
        );
        assert_eq!(frechet_extract(&set(&["2"]), &ord("w"), 1).unwrap(), vec![ord("2")]);
        assert!(frechet_extract(&set(&["1"]), &ord("3"), 1).is_err());
    }

    #[test]
    fn extraction_respects_the_index_bound() {
        let pool = set(&["w", "w^2", "w^3"]);
        let got = frechet_extract(&pool, &ord("w^(w)"), 3).unwrap();
        for (n, xi) in got.iter().enumerate() {
            assert!(rho2(xi, &ord("w^(w)")).unwrap() >= n as u64);
        }
        let mut dedup = got.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), got.len());
    }

    #[test]
    fn merge_examples() {
        let merged = alpha1_merge(&[set(&["1", "2"]), set(&["2", "3"])], &ord("w")).unwrap();
        // rho2(k, w) = 1 for k >= 1: family 0 keeps both, family 1 drops.
        assert_eq!(merged, set(&["1", "2"]));

        assert_eq!(alpha1_merge(&[], &ord("w")).unwrap(), set(&[]));
        assert!(alpha1_merge(&[set(&["w"])], &ord("w")).is_err());
        assert!(alpha1_merge(&[set(&["1"])], &ord("w+1")).is_err());
    }

    #[test]
    fn separation_examples() {
        let s = gdelta_separate(&set(&["0"])).unwrap();
        assert_eq!(s.beta, ord("w"));
        assert_eq!(s.certificate[&ord("0")], 2);
        let open = s.open(2);
        assert!(!member(&Point::Ord(ord("0")), &open).unwrap());
        assert!(member(&Point::Apex, &open).unwrap());

        let s = gdelta_separate(&set(&["5"])).unwrap();
        assert_eq!(s.beta, ord("w"));
        assert_eq!(s.certificate[&ord("5")], 1);

        let s = gdelta_separate(&set(&["w*2+3", "4"])).unwrap();
        assert_eq!(s.beta, ord("w*3"));

        let s = gdelta_separate(&set(&["w^2"])).unwrap();
        assert_eq!(s.beta, ord("w^2+w"));

        assert!(gdelta_separate(&set(&[])).is_err());
    }

    #[test]
    fn report_examples() {
        let r = convergence_report(&set(&[]), &[ord("w")]).unwrap();
        assert_eq!(r.max_fiber, 0);
        assert!(r.anchors[0].histogram.is_empty());

        let seq: BTreeSet<Ordinal> = (1..=20).map(Ordinal::from_nat).collect();
        let r = convergence_report(&seq, &[ord("w")]).unwrap();
        assert_eq!(r.anchors[0].histogram.get(&1), Some(&20));
        assert_eq!(r.max_fiber, 20);

        assert!(convergence_report(&set(&["1"]), &[ord("4")]).is_err());
    }

    #[test]
    fn scheme_open_keeps_the_anchor() {
        let scheme = GdeltaScheme { beta: ord("w*2") };
        let open = scheme.open(9);
        assert_eq!(open.anchor(), &ord("w*2"));
        assert_eq!(open.level(), 9);
    }
}
