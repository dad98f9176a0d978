//! Frames of discernment, subset and permutation events, and validated
//! mass assignments (BPA over the power set, PMF over the permutation
//! event space), with a JSON document format and small-N enumeration.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::sa;
use crate::error::{Error, Result};
use crate::interval::{decimal_tolerance, rational_from_decimal_str};
use crate::ENUMERATION_CAP;

/// A finite universe of distinct labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Parse("frame must have at least one element".into()));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::Parse(format!("duplicate frame label {a:?}")));
            }
        }
        Ok(Self { labels })
    }

    /// Frame with generated labels `x1..xN`.
    pub fn with_size(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<u8> {
        self.labels.iter().position(|l| l == label).map(|i| i as u8)
    }

    fn check_cap(&self) -> Result<()> {
        if self.len() > ENUMERATION_CAP {
            return Err(Error::FrameTooLarge {
                n: self.len(),
                cap: ENUMERATION_CAP,
            });
        }
        Ok(())
    }
}

/// An unordered subset of frame elements, held as strictly increasing
/// indices so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetEvent(Vec<u8>);

impl SubsetEvent {
    /// Canonicalize: sort and reject duplicates.
    pub fn new(mut indices: Vec<u8>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("subset event repeats an element".into()));
        }
        Ok(Self(indices))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

// order by size, then lexicographically: the canonical enumeration order
impl Ord for SubsetEvent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for SubsetEvent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An ordered sequence of frame elements; the order is the payload, so
/// the indices are stored verbatim. Distinctness is a validity condition
/// checked by [`PermutationEvent::is_well_formed`] rather than enforced
/// at construction, because mass documents with malformed events must be
/// representable for validation to report on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationEvent(Vec<u8>);

impl PermutationEvent {
    pub fn new(indices: Vec<u8>) -> Self {
        Self(indices)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_well_formed(&self, frame: &Frame) -> bool {
        let in_range = self.0.iter().all(|&i| (i as usize) < frame.len());
        let distinct = (0..self.0.len()).all(|i| !self.0[i + 1..].contains(&self.0[i]));
        in_range && distinct
    }

    /// Forget the order.
    pub fn to_subset(&self) -> Result<SubsetEvent> {
        SubsetEvent::new(self.0.clone())
    }
}

impl Ord for PermutationEvent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for PermutationEvent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn label_list(frame: &Frame, indices: &[u8]) -> String {
    let names: Vec<&str> = indices
        .iter()
        .map(|&i| frame.labels()[i as usize].as_str())
        .collect();
    format!("({})", names.join(","))
}

/// How the unit-sum invariant is judged: exactly for rational input,
/// within 1e-9 for decimal input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumPolicy {
    Exact,
    Decimal,
}

/// Mass assignment over subset events.
#[derive(Debug, Clone, PartialEq)]
pub struct Bpa {
    pub frame: Frame,
    pub masses: BTreeMap<SubsetEvent, BigRational>,
    pub sum_policy: SumPolicy,
}

/// Mass assignment over permutation events.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    pub frame: Frame,
    pub masses: BTreeMap<PermutationEvent, BigRational>,
    pub sum_policy: SumPolicy,
}

/// Outcome of one validation rule.
#[derive(Debug, Clone, Serialize)]
pub struct RuleCheck {
    pub rule: &'static str,
    pub passed: bool,
    /// Offending entries or measured quantities, empty on pass.
    pub detail: Vec<String>,
}

/// Pass/fail per invariant; validation reports, it never fails.
#[derive(Debug, Clone, Serialize)]
pub struct MassValidation {
    pub checks: Vec<RuleCheck>,
}

impl MassValidation {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&RuleCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

impl fmt::Display for MassValidation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let status = if check.passed { "pass" } else { "FAIL" };
            write!(f, "{}: {}", check.rule, status)?;
            if !check.detail.is_empty() {
                write!(f, " ({})", check.detail.join("; "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn sum_check(total: &BigRational, policy: SumPolicy) -> RuleCheck {
    let deviation = (total - BigRational::one()).abs();
    let passed = match policy {
        SumPolicy::Exact => deviation.is_zero(),
        SumPolicy::Decimal => deviation <= decimal_tolerance(),
    };
    RuleCheck {
        rule: "unit-sum",
        passed,
        detail: if passed {
            vec![]
        } else {
            vec![format!("mass sum {}", rational_display(total))]
        },
    }
}

fn rational_display(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{} ~ {:.6}", r.numer(), r.denom(), rational_to_f64(r))
    }
}

/// Lossy conversion for display and entropy evaluation.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Bpa {
    pub fn new(
        frame: Frame,
        masses: BTreeMap<SubsetEvent, BigRational>,
        sum_policy: SumPolicy,
    ) -> Self {
        Self {
            frame,
            masses,
            sum_policy,
        }
    }

    pub fn mass(&self, event: &SubsetEvent) -> BigRational {
        self.masses.get(event).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn validate(&self) -> MassValidation {
        let mut checks = Vec::new();

        let empty_mass = self.mass(&SubsetEvent::empty());
        checks.push(RuleCheck {
            rule: "empty-set-mass-zero",
            passed: empty_mass.is_zero(),
            detail: if empty_mass.is_zero() {
                vec![]
            } else {
                vec![format!("mass({{}}) = {}", rational_display(&empty_mass))]
            },
        });

        let mut structural = Vec::new();
        let mut negative = Vec::new();
        for (event, mass) in &self.masses {
            if event.indices().iter().any(|&i| (i as usize) >= self.frame.len()) {
                structural.push(format!("{} is out of frame", label_list(&self.frame, event.indices())));
            }
            if mass.is_negative() {
                negative.push(format!(
                    "mass{} = {}",
                    label_list(&self.frame, event.indices()),
                    rational_display(mass)
                ));
            }
        }
        checks.push(RuleCheck {
            rule: "events-within-frame",
            passed: structural.is_empty(),
            detail: structural,
        });
        checks.push(RuleCheck {
            rule: "nonnegative",
            passed: negative.is_empty(),
            detail: negative,
        });

        let total: BigRational = self.masses.values().sum();
        checks.push(sum_check(&total, self.sum_policy));

        MassValidation { checks }
    }
}

impl Pmf {
    pub fn new(
        frame: Frame,
        masses: BTreeMap<PermutationEvent, BigRational>,
        sum_policy: SumPolicy,
    ) -> Self {
        Self {
            frame,
            masses,
            sum_policy,
        }
    }

    pub fn mass(&self, event: &PermutationEvent) -> BigRational {
        self.masses.get(event).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn validate(&self) -> MassValidation {
        let mut checks = Vec::new();

        let empty_mass = self.mass(&PermutationEvent::empty());
        checks.push(RuleCheck {
            rule: "empty-event-mass-zero",
            passed: empty_mass.is_zero(),
            detail: if empty_mass.is_zero() {
                vec![]
            } else {
                vec![format!("mass(()) = {}", rational_display(&empty_mass))]
            },
        });

        let mut malformed = Vec::new();
        let mut negative = Vec::new();
        for (event, mass) in &self.masses {
            if !event.is_well_formed(&self.frame) {
                malformed.push(format!(
                    "{} repeats an element or leaves the frame",
                    label_list(&self.frame, event.indices())
                ));
            }
            if mass.is_negative() {
                negative.push(format!(
                    "mass{} = {}",
                    label_list(&self.frame, event.indices()),
                    rational_display(mass)
                ));
            }
        }
        checks.push(RuleCheck {
            rule: "events-well-formed",
            passed: malformed.is_empty(),
            detail: malformed,
        });
        checks.push(RuleCheck {
            rule: "nonnegative",
            passed: negative.is_empty(),
            detail: negative,
        });

        let total: BigRational = self.masses.values().sum();
        checks.push(sum_check(&total, self.sum_policy));

        MassValidation { checks }
    }

    /// Collapse order: sum the masses of all orderings of the same
    /// underlying set. Total mass is preserved exactly.
    pub fn project_to_bpa(&self) -> Result<Bpa> {
        let mut masses: BTreeMap<SubsetEvent, BigRational> = BTreeMap::new();
        for (event, mass) in &self.masses {
            let subset = event.to_subset()?;
            *masses.entry(subset).or_insert_with(BigRational::zero) += mass;
        }
        Ok(Bpa::new(self.frame.clone(), masses, self.sum_policy))
    }

    /// True when every carried event is a single element.
    pub fn is_singleton_only(&self) -> bool {
        self.masses.keys().all(|e| e.len() == 1 || (e.is_empty() && self.mass(e).is_zero()))
    }
}

impl Bpa {
    /// True when every carried event is a single element.
    pub fn is_singleton_only(&self) -> bool {
        self.masses.keys().all(|e| e.len() == 1 || (e.is_empty() && self.mass(e).is_zero()))
    }

    /// Masses of the singleton events in frame order (for the Shannon
    /// reduction); requires `is_singleton_only`.
    pub fn singleton_distribution(&self) -> Vec<f64> {
        (0..self.frame.len() as u8)
            .map(|i| {
                let event = SubsetEvent::new(vec![i]).unwrap();
                rational_to_f64(&self.mass(&event))
            })
            .collect()
    }
}

/// All `2^N` subsets, ordered by size then lexicographically.
pub fn enumerate_power_set(frame: &Frame) -> Result<Vec<SubsetEvent>> {
    frame.check_cap()?;
    let n = frame.len() as u8;
    let mut events = vec![SubsetEvent::empty()];
    for size in 1..=n {
        let mut current: Vec<u8> = Vec::with_capacity(size as usize);
        combinations_into(n, size, 0, &mut current, &mut events);
    }
    Ok(events)
}

fn combinations_into(
    n: u8,
    size: u8,
    start: u8,
    current: &mut Vec<u8>,
    out: &mut Vec<SubsetEvent>,
) {
    if current.len() == size as usize {
        out.push(SubsetEvent(current.clone()));
        return;
    }
    let remaining = size as usize - current.len();
    for i in start..=(n - remaining as u8) {
        current.push(i);
        combinations_into(n, size, i + 1, current, out);
        current.pop();
    }
}

/// All `S_A(N)` permutation events (the empty one included), ordered by
/// length then lexicographically on index sequences.
pub fn enumerate_pes(frame: &Frame) -> Result<Vec<PermutationEvent>> {
    frame.check_cap()?;
    let n = frame.len() as u8;
    let mut events = vec![PermutationEvent::empty()];
    for length in 1..=n {
        let mut used = vec![false; n as usize];
        let mut current = Vec::with_capacity(length as usize);
        permutations_into(n, length, &mut used, &mut current, &mut events);
    }
    debug_assert_eq!(events.len(), usize::try_from(sa(n as u32)).unwrap_or(usize::MAX));
    Ok(events)
}

fn permutations_into(
    n: u8,
    length: u8,
    used: &mut [bool],
    current: &mut Vec<u8>,
    out: &mut Vec<PermutationEvent>,
) {
    if current.len() == length as usize {
        out.push(PermutationEvent(current.clone()));
        return;
    }
    for i in 0..n {
        if !used[i as usize] {
            used[i as usize] = true;
            current.push(i);
            permutations_into(n, length, used, current, out);
            current.pop();
            used[i as usize] = false;
        }
    }
}

// ---------------------------------------------------------------------
// JSON document format
//
// { "frame": ["a","b"], "kind": "bpa"|"pmf",
//   "masses": [ {"event": ["a","b"], "mass": "2/5"}, ... ] }
//
// BPA event arrays are order-insensitive (canonicalized on load); PMF
// arrays are order-sensitive. A mass is a decimal string or "p/q".
// Duplicate events (after canonicalization for BPA) are a parse error.
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MassDocument {
    frame: Vec<String>,
    kind: String,
    masses: Vec<MassEntry>,
}

#[derive(Serialize, Deserialize)]
struct MassEntry {
    event: Vec<String>,
    mass: String,
}

/// Either kind of mass assignment, as read from a document.
#[derive(Debug, Clone)]
pub enum MassAssignment {
    Bpa(Bpa),
    Pmf(Pmf),
}

fn parse_mass_literal(s: &str) -> Result<(BigRational, bool)> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let numer: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational mass {s:?}")))?;
        let denom: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational mass {s:?}")))?;
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in mass {s:?}")));
        }
        return Ok((BigRational::new(numer, denom), false));
    }
    match rational_from_decimal_str(s) {
        // integer literals are exact; a '.' marks decimal-tolerance input
        Some(r) => Ok((r, s.contains('.'))),
        None => Err(Error::Parse(format!("bad mass literal {s:?}"))),
    }
}

fn event_indices(frame: &Frame, labels: &[String]) -> Result<Vec<u8>> {
    labels
        .iter()
        .map(|l| {
            frame
                .index_of(l)
                .ok_or_else(|| Error::Parse(format!("event label {l:?} is not in the frame")))
        })
        .collect()
}

/// Parse a mass document from JSON text.
pub fn parse_document(text: &str) -> Result<MassAssignment> {
    let doc: MassDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let frame = Frame::new(doc.frame)?;
    let mut any_decimal = false;

    match doc.kind.as_str() {
        "bpa" => {
            let mut masses = BTreeMap::new();
            for entry in &doc.masses {
                let (mass, decimal) = parse_mass_literal(&entry.mass)?;
                any_decimal |= decimal;
                let event = SubsetEvent::new(event_indices(&frame, &entry.event)?)?;
                if masses.insert(event, mass).is_some() {
                    return Err(Error::Parse(format!(
                        "duplicate event {:?} after canonicalization",
                        entry.event
                    )));
                }
            }
            let policy = if any_decimal {
                SumPolicy::Decimal
            } else {
                SumPolicy::Exact
            };
            Ok(MassAssignment::Bpa(Bpa::new(frame, masses, policy)))
        }
        "pmf" => {
            let mut masses = BTreeMap::new();
            for entry in &doc.masses {
                let (mass, decimal) = parse_mass_literal(&entry.mass)?;
                any_decimal |= decimal;
                let event = PermutationEvent::new(event_indices(&frame, &entry.event)?);
                if masses.insert(event, mass).is_some() {
                    return Err(Error::Parse(format!("duplicate event {:?}", entry.event)));
                }
            }
            let policy = if any_decimal {
                SumPolicy::Decimal
            } else {
                SumPolicy::Exact
            };
            Ok(MassAssignment::Pmf(Pmf::new(frame, masses, policy)))
        }
        other => Err(Error::Parse(format!(
            "kind must be \"bpa\" or \"pmf\", got {other:?}"
        ))),
    }
}

fn mass_literal(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serialize to the canonical document form: events in canonical order,
/// masses as exact rational strings.
pub fn serialize_bpa(bpa: &Bpa) -> String {
    let doc = MassDocument {
        frame: bpa.frame.labels().to_vec(),
        kind: "bpa".into(),
        masses: bpa
            .masses
            .iter()
            .map(|(event, mass)| MassEntry {
                event: event
                    .indices()
                    .iter()
                    .map(|&i| bpa.frame.labels()[i as usize].clone())
                    .collect(),
                mass: mass_literal(mass),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
}

/// Serialize to the canonical document form; event order is the payload
/// and is written verbatim.
pub fn serialize_pmf(pmf: &Pmf) -> String {
    let doc = MassDocument {
        frame: pmf.frame.labels().to_vec(),
        kind: "pmf".into(),
        masses: pmf
            .masses
            .iter()
            .map(|(event, mass)| MassEntry {
                event: event
                    .indices()
                    .iter()
                    .map(|&i| pmf.frame.labels()[i as usize].clone())
                    .collect(),
                mass: mass_literal(mass),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn frame(n: usize) -> Frame {
        Frame::with_size(n).unwrap()
    }

    #[test]
    fn power_set_counts() {
        assert_eq!(enumerate_power_set(&frame(1)).unwrap().len(), 2);
        assert_eq!(enumerate_power_set(&frame(3)).unwrap().len(), 8);
        assert_eq!(enumerate_power_set(&frame(8)).unwrap().len(), 256);
        assert!(matches!(
            enumerate_power_set(&frame(9)),
            Err(Error::FrameTooLarge { n: 9, cap: 8 })
        ));
    }

    #[test]
    fn power_set_order_is_size_then_lex() {
        let events = enumerate_power_set(&frame(3)).unwrap();
        let shapes: Vec<Vec<u8>> = events.iter().map(|e| e.indices().to_vec()).collect();
        assert_eq!(
            shapes,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2],
            ]
        );
    }

    #[test]
    fn pes_n2_lists_the_five_events() {
        let events = enumerate_pes(&frame(2)).unwrap();
        let shapes: Vec<Vec<u8>> = events.iter().map(|e| e.indices().to_vec()).collect();
        assert_eq!(
            shapes,
            vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn pes_counts_match_sa() {
        for n in 1..=ENUMERATION_CAP {
            let count = enumerate_pes(&frame(n)).unwrap().len();
            assert_eq!(
                num_bigint::BigUint::from(count),
                sa(n as u32),
                "n={n}"
            );
        }
    }

    #[test]
    fn bpa_validation_pass_and_failures() {
        let f = frame(2);
        let mut masses = BTreeMap::new();
        masses.insert(SubsetEvent::new(vec![0]).unwrap(), rat(1, 1));
        let bpa = Bpa::new(f.clone(), masses, SumPolicy::Exact);
        assert!(bpa.validate().is_valid());

        let mut masses = BTreeMap::new();
        masses.insert(SubsetEvent::empty(), rat(1, 2));
        masses.insert(SubsetEvent::new(vec![0]).unwrap(), rat(1, 2));
        let bad_empty = Bpa::new(f.clone(), masses, SumPolicy::Exact);
        let report = bad_empty.validate();
        assert!(!report.is_valid());
        assert!(report.failures().iter().any(|c| c.rule == "empty-set-mass-zero"));

        // 0.3 + 0.69 = 0.99: outside the decimal tolerance
        let mut masses = BTreeMap::new();
        masses.insert(SubsetEvent::new(vec![0]).unwrap(), rat(3, 10));
        masses.insert(SubsetEvent::new(vec![0, 1]).unwrap(), rat(69, 100));
        let bad_sum = Bpa::new(f, masses, SumPolicy::Decimal);
        let report = bad_sum.validate();
        assert!(!report.is_valid());
        let failure = report.failures()[0];
        assert_eq!(failure.rule, "unit-sum");
        assert!(failure.detail[0].contains("99/100"));
    }

    #[test]
    fn pmf_validation_catches_repeated_element() {
        let f = frame(2);
        let mut masses = BTreeMap::new();
        masses.insert(PermutationEvent::new(vec![0, 0]), rat(1, 1));
        let pmf = Pmf::new(f, masses, SumPolicy::Exact);
        let report = pmf.validate();
        assert!(!report.is_valid());
        assert!(report.failures().iter().any(|c| c.rule == "events-well-formed"));
    }

    #[test]
    fn pmf_validation_passes_order_pair() {
        let f = frame(2);
        let mut masses = BTreeMap::new();
        masses.insert(PermutationEvent::new(vec![0, 1]), rat(1, 2));
        masses.insert(PermutationEvent::new(vec![1, 0]), rat(1, 2));
        let pmf = Pmf::new(f, masses, SumPolicy::Exact);
        assert!(pmf.validate().is_valid());
    }

    #[test]
    fn projection_collapses_order() {
        let f = frame(2);
        let mut masses = BTreeMap::new();
        masses.insert(PermutationEvent::new(vec![0, 1]), rat(1, 2));
        masses.insert(PermutationEvent::new(vec![1, 0]), rat(1, 2));
        let pmf = Pmf::new(f, masses, SumPolicy::Exact);
        let bpa = pmf.project_to_bpa().unwrap();
        assert_eq!(bpa.masses.len(), 1);
        assert_eq!(
            bpa.mass(&SubsetEvent::new(vec![0, 1]).unwrap()),
            rat(1, 1)
        );
    }

    #[test]
    fn projection_of_max_rps_pmf_for_n2() {
        let f = frame(2);
        let mut masses = BTreeMap::new();
        masses.insert(PermutationEvent::new(vec![0]), rat(1, 10));
        masses.insert(PermutationEvent::new(vec![1]), rat(1, 10));
        masses.insert(PermutationEvent::new(vec![0, 1]), rat(4, 10));
        masses.insert(PermutationEvent::new(vec![1, 0]), rat(4, 10));
        let pmf = Pmf::new(f, masses, SumPolicy::Exact);
        let bpa = pmf.project_to_bpa().unwrap();
        assert_eq!(bpa.mass(&SubsetEvent::new(vec![0]).unwrap()), rat(1, 10));
        assert_eq!(bpa.mass(&SubsetEvent::new(vec![1]).unwrap()), rat(1, 10));
        assert_eq!(
            bpa.mass(&SubsetEvent::new(vec![0, 1]).unwrap()),
            rat(8, 10)
        );
        let total: BigRational = bpa.masses.values().sum();
        assert_eq!(total, rat(1, 1));
    }

    #[test]
    fn document_round_trip_is_identity() {
        let doc = r#"{
            "frame": ["a", "b"],
            "kind": "pmf",
            "masses": [
                {"event": ["a"], "mass": "1/10"},
                {"event": ["b"], "mass": "1/10"},
                {"event": ["a","b"], "mass": "2/5"},
                {"event": ["b","a"], "mass": "2/5"}
            ]
        }"#;
        let MassAssignment::Pmf(pmf) = parse_document(doc).unwrap() else {
            panic!("expected a pmf");
        };
        let text = serialize_pmf(&pmf);
        let MassAssignment::Pmf(again) = parse_document(&text).unwrap() else {
            panic!("expected a pmf");
        };
        assert_eq!(pmf, again);
    }

    #[test]
    fn bpa_events_are_order_insensitive() {
        let doc = r#"{
            "frame": ["a", "b"],
            "kind": "bpa",
            "masses": [ {"event": ["b","a"], "mass": "1"} ]
        }"#;
        let MassAssignment::Bpa(bpa) = parse_document(doc).unwrap() else {
            panic!("expected a bpa");
        };
        assert_eq!(
            bpa.mass(&SubsetEvent::new(vec![0, 1]).unwrap()),
            rat(1, 1)
        );
    }

    #[test]
    fn duplicate_events_are_a_parse_error() {
        let doc = r#"{
            "frame": ["a", "b"],
            "kind": "bpa",
            "masses": [
                {"event": ["a","b"], "mass": "1/2"},
                {"event": ["b","a"], "mass": "1/2"}
            ]
        }"#;
        assert!(matches!(parse_document(doc), Err(Error::Parse(_))));
    }

    #[test]
    fn decimal_masses_set_the_tolerance_policy() {
        let doc = r#"{
            "frame": ["a", "b"],
            "kind": "bpa",
            "masses": [
                {"event": ["a"], "mass": "0.5"},
                {"event": ["b"], "mass": "0.5"}
            ]
        }"#;
        let MassAssignment::Bpa(bpa) = parse_document(doc).unwrap() else {
            panic!("expected a bpa");
        };
        assert_eq!(bpa.sum_policy, SumPolicy::Decimal);
        assert!(bpa.validate().is_valid());
    }

    #[test]
    fn unknown_labels_are_a_parse_error() {
        let doc = r#"{
            "frame": ["a"],
            "kind": "bpa",
            "masses": [ {"event": ["z"], "mass": "1"} ]
        }"#;
        assert!(matches!(parse_document(doc), Err(Error::Parse(_))));
    }
}
