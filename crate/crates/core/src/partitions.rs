//! Overpartitions with gap conditions, Schur-type partitions, and exhaustive
//! enumerators for every family.
//!
//! The enumerators walk nondecreasing part sequences depth first. Every family
//! here is prefix closed (a prefix of a member is a member of a smaller
//! number), so each node of the search tree is itself a member, and a single
//! walk up to `n_max` tallies every `n <= n_max` at once.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pair `(d, r)` with `d >= 3` and `1 <= r < d/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    d: u32,
    r: u32,
}

impl FamilyParams {
    pub fn new(d: u32, r: u32) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidParams(format!("need d >= 3, got d = {d}")));
        }
        if r < 1 || 2 * r >= d {
            return Err(Error::InvalidParams(format!(
                "need 1 <= r < d/2, got d = {d}, r = {r}"
            )));
        }
        Ok(FamilyParams { d, r })
    }

    pub fn d(self) -> u32 {
        self.d
    }

    pub fn r(self) -> u32 {
        self.r
    }

    /// Every valid `(d, r)` for the given moduli.
    pub fn grid(ds: &[u32]) -> Vec<FamilyParams> {
        ds.iter()
            .flat_map(|&d| (1..).take_while(move |r| 2 * r < d).map(move |r| (d, r)))
            .filter_map(|(d, r)| FamilyParams::new(d, r).ok())
            .collect()
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={},r={}", self.d, self.r)
    }
}

/// One part of an overpartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Part {
    pub value: u32,
    pub overlined: bool,
}

impl Part {
    pub const fn plain(value: u32) -> Self {
        Part {
            value,
            overlined: false,
        }
    }

    pub const fn over(value: u32) -> Self {
        Part {
            value,
            overlined: true,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.overlined {
            write!(f, "{}o", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// Nondecreasing parts where each value has at most one overlined copy, and
/// that copy sorts after the plain copies of the same value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Part>", into = "Vec<Part>")]
pub struct OverPartition {
    parts: Vec<Part>,
}

impl OverPartition {
    pub fn new(parts: Vec<Part>) -> Result<Self> {
        for w in parts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b.value < a.value {
                return Err(Error::MalformedOverPartition(format!(
                    "parts decrease at {a} -> {b}"
                )));
            }
            if a.value == b.value && a.overlined {
                return Err(Error::MalformedOverPartition(format!(
                    "overlined {a} must be the last copy of its value"
                )));
            }
        }
        if let Some(p) = parts.iter().find(|p| p.value == 0) {
            return Err(Error::MalformedOverPartition(format!("zero part {p}")));
        }
        Ok(OverPartition { parts })
    }

    /// An ordinary partition: every part plain. Input order is irrelevant.
    pub fn plain(mut values: Vec<u32>) -> Result<Self> {
        values.sort_unstable();
        Self::new(values.into_iter().map(Part::plain).collect())
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|p| u64::from(p.value)).sum()
    }
}

impl TryFrom<Vec<Part>> for OverPartition {
    type Error = Error;
    fn try_from(parts: Vec<Part>) -> Result<Self> {
        OverPartition::new(parts)
    }
}

impl From<OverPartition> for Vec<Part> {
    fn from(p: OverPartition) -> Self {
        p.parts
    }
}

impl fmt::Display for OverPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for OverPartition {
    type Err = Error;

    /// Parses the text form, e.g. `(1o,3,3,3,5o)` or `()`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::MalformedOverPartition(format!("expected (...), got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(OverPartition::default());
        }
        let parts = inner
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let (digits, overlined) = match tok.strip_suffix('o') {
                    Some(d) => (d, true),
                    None => (tok, false),
                };
                digits
                    .parse::<u32>()
                    .map(|value| Part { value, overlined })
                    .map_err(|_| Error::MalformedOverPartition(format!("bad part {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        OverPartition::new(parts)
    }
}

/// Residue/overline class of a part in the overpartition families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassLabel {
    RBar,
    DMinusRBar,
    DBar,
    DPlain,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 4] = [
        ClassLabel::RBar,
        ClassLabel::DMinusRBar,
        ClassLabel::DBar,
        ClassLabel::DPlain,
    ];

    fn index(self) -> usize {
        match self {
            ClassLabel::RBar => 0,
            ClassLabel::DMinusRBar => 1,
            ClassLabel::DBar => 2,
            ClassLabel::DPlain => 3,
        }
    }
}

/// Residue class of a part in the Schur families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchurClass {
    R,
    DMinusR,
    D,
}

impl SchurClass {
    fn index(self) -> usize {
        match self {
            SchurClass::R => 0,
            SchurClass::DMinusR => 1,
            SchurClass::D => 2,
        }
    }
}

/// Minimal allowable differences between consecutive parts, indexed by
/// (class of the larger part, class of the smaller part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapMatrix {
    rows: Vec<Vec<u32>>,
}

impl GapMatrix {
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entry of the 4x4 overpartition matrix.
    pub fn get(&self, larger: ClassLabel, smaller: ClassLabel) -> u32 {
        self.rows[larger.index()][smaller.index()]
    }

    /// Entry of the 3x3 Schur matrix.
    pub fn get_schur(&self, larger: SchurClass, smaller: SchurClass) -> u32 {
        self.rows[larger.index()][smaller.index()]
    }
}

pub fn gap_matrix_obar(p: FamilyParams) -> GapMatrix {
    let (d, r) = (p.d, p.r);
    GapMatrix {
        rows: vec![
            vec![d, 2 * r, d + r, r],
            vec![2 * d - 2 * r, d, 2 * d - r, d - r],
            vec![2 * d - r, d + r, 2 * d, d],
            vec![d - r, r, d, 0],
        ],
    }
}

pub fn gap_matrix_schur(p: FamilyParams) -> GapMatrix {
    let (d, r) = (p.d, p.r);
    GapMatrix {
        rows: vec![
            vec![d, d + 2 * r, d + r],
            vec![2 * d - 2 * r, d, 2 * d - r],
            vec![2 * d - r, d + r, 2 * d],
        ],
    }
}

pub fn classify(part: Part, p: FamilyParams) -> Result<ClassLabel> {
    let res = part.value % p.d;
    let label = match (res, part.overlined) {
        (0, true) => Some(ClassLabel::DBar),
        (0, false) => Some(ClassLabel::DPlain),
        (x, true) if x == p.r => Some(ClassLabel::RBar),
        (x, true) if x == p.d - p.r => Some(ClassLabel::DMinusRBar),
        _ => None,
    };
    label.ok_or(Error::IllegalPart {
        value: part.value,
        overlined: part.overlined,
        d: p.d,
        r: p.r,
    })
}

fn classify_schur(value: u32, p: FamilyParams) -> Option<SchurClass> {
    match value % p.d {
        0 => Some(SchurClass::D),
        x if x == p.r => Some(SchurClass::R),
        x if x == p.d - p.r => Some(SchurClass::DMinusR),
        _ => None,
    }
}

/// Which condition an overpartition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The smallest part is not in an allowed class modulo `2d`.
    SmallestPart,
    /// A part is at most `d` (only for the C-bar family).
    PartTooSmall { index: usize },
    /// Consecutive parts `index`, `index + 1` are closer than the matrix allows.
    GapTooSmall { index: usize },
    /// Consecutive parts `index`, `index + 1` differ by the wrong residue mod `2d`.
    GapResidue { index: usize },
}

/// Outcome of a membership check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl Verdict {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Verdict {
            ok: violations.is_empty(),
            violations,
        }
    }
}

fn obar_b_start(part: Part, class: ClassLabel, p: FamilyParams) -> bool {
    let m = part.value % (2 * p.d);
    match class {
        ClassLabel::RBar => m == p.r,
        ClassLabel::DMinusRBar => m == p.d - p.r,
        ClassLabel::DBar => m == p.d,
        ClassLabel::DPlain => m == 0,
    }
}

fn obar_c_start(part: Part, class: ClassLabel, p: FamilyParams) -> bool {
    let two_d = 2 * p.d;
    let m = part.value % two_d;
    part.value > p.d
        && match class {
            ClassLabel::DPlain => m == p.d,
            ClassLabel::RBar => m == p.d + p.r,
            ClassLabel::DMinusRBar => m == two_d - p.r,
            ClassLabel::DBar => m == 0,
        }
}

/// Conditions (ii) and (iii) for one consecutive pair.
fn gap_violations(
    lower: (Part, ClassLabel),
    upper: (Part, ClassLabel),
    matrix: &GapMatrix,
    two_d: u32,
    index: usize,
    out: &mut Vec<Violation>,
) {
    let diff = upper.0.value - lower.0.value;
    let min = matrix.get(upper.1, lower.1);
    if diff < min {
        out.push(Violation::GapTooSmall { index });
    }
    if diff % two_d != min % two_d {
        out.push(Violation::GapResidue { index });
    }
}

fn check_obar(
    lambda: &OverPartition,
    p: FamilyParams,
    start: fn(Part, ClassLabel, FamilyParams) -> bool,
    parts_above_d: bool,
) -> Result<Verdict> {
    let classes = lambda
        .parts
        .iter()
        .map(|&part| classify(part, p))
        .collect::<Result<Vec<_>>>()?;
    let mut violations = Vec::new();
    if let (Some(&first), Some(&class)) = (lambda.parts.first(), classes.first()) {
        if !start(first, class, p) {
            violations.push(Violation::SmallestPart);
        }
    }
    if parts_above_d {
        for (index, part) in lambda.parts.iter().enumerate() {
            if part.value <= p.d {
                violations.push(Violation::PartTooSmall { index });
            }
        }
    }
    let matrix = gap_matrix_obar(p);
    for i in 0..lambda.parts.len().saturating_sub(1) {
        gap_violations(
            (lambda.parts[i], classes[i]),
            (lambda.parts[i + 1], classes[i + 1]),
            &matrix,
            2 * p.d,
            i,
            &mut violations,
        );
    }
    Ok(Verdict::from_violations(violations))
}

/// Membership in the B-bar family: conditions (i)-(iii).
pub fn is_obar_b(lambda: &OverPartition, p: FamilyParams) -> Result<Verdict> {
    check_obar(lambda, p, obar_b_start, false)
}

/// Membership in the C-bar family: (ii), (iii), all parts above `d`, and the
/// shifted smallest-part rule.
pub fn is_obar_c(lambda: &OverPartition, p: FamilyParams) -> Result<Verdict> {
    check_obar(lambda, p, obar_c_start, true)
}

/// The enumerated families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Overpartitions with gap conditions (i)-(iii).
    ObarB,
    /// Overpartitions with (ii), (iii) and the shifted smallest-part rule.
    ObarC,
    /// Distinct parts `= ±r (mod d)` plus unrestricted multiples of `2d`.
    ObarE,
    /// Schur: gaps `>= d`, strict when the larger part is a multiple of `d`.
    SchurB,
    /// Schur B with every part above `d`.
    SchurC,
    /// Distinct parts `= ±r (mod d)`.
    SchurE,
    /// Schur B stated through the 3x3 gap matrix.
    SchurBMatrix,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::ObarB,
        Family::ObarC,
        Family::ObarE,
        Family::SchurB,
        Family::SchurC,
        Family::SchurE,
        Family::SchurBMatrix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ObarB => "obar-b",
            Family::ObarC => "obar-c",
            Family::ObarE => "obar-e",
            Family::SchurB => "schur-b",
            Family::SchurC => "schur-c",
            Family::SchurE => "schur-e",
            Family::SchurBMatrix => "schur-b-matrix",
        }
    }

    /// Whether `next` may follow `prev` (or open the partition when `prev` is
    /// `None`).
    fn admits(self, p: FamilyParams, prev: Option<Part>, next: Part) -> bool {
        match self {
            Family::ObarB | Family::ObarC => {
                let Ok(class) = classify(next, p) else {
                    return false;
                };
                match prev {
                    None if self == Family::ObarB => obar_b_start(next, class, p),
                    None => obar_c_start(next, class, p),
                    Some(prev) => {
                        // classify succeeded when prev was admitted
                        let prev_class = classify(prev, p).expect("admitted part");
                        let mut v = Vec::new();
                        gap_violations(
                            (prev, prev_class),
                            (next, class),
                            &gap_matrix_obar(p),
                            2 * p.d,
                            0,
                            &mut v,
                        );
                        v.is_empty()
                    }
                }
            }
            Family::ObarE => {
                if next.overlined {
                    return false;
                }
                let res = next.value % p.d;
                let distinct_class = res == p.r || res == p.d - p.r;
                let free_class = next.value.is_multiple_of(2 * p.d);
                match prev {
                    Some(prev) if distinct_class => next.value > prev.value,
                    _ => distinct_class || free_class,
                }
            }
            Family::SchurE => {
                let res = next.value % p.d;
                !next.overlined
                    && (res == p.r || res == p.d - p.r)
                    && prev.is_none_or(|prev| next.value > prev.value)
            }
            Family::SchurB | Family::SchurC => {
                if next.overlined || classify_schur(next.value, p).is_none() {
                    return false;
                }
                if self == Family::SchurC && next.value <= p.d {
                    return false;
                }
                match prev {
                    None => true,
                    Some(prev) => {
                        let diff = next.value - prev.value;
                        if next.value.is_multiple_of(p.d) {
                            diff > p.d
                        } else {
                            diff >= p.d
                        }
                    }
                }
            }
            Family::SchurBMatrix => {
                let Some(class) = classify_schur(next.value, p) else {
                    return false;
                };
                if next.overlined {
                    return false;
                }
                match prev {
                    None => true,
                    Some(prev) => {
                        let prev_class = classify_schur(prev.value, p).expect("admitted part");
                        next.value - prev.value >= gap_matrix_schur(p).get_schur(class, prev_class)
                    }
                }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown family {s:?}")))
    }
}

/// Visits every member of `family` with total at most `n_max`, in
/// lexicographic order of the part sequence.
pub fn walk_family(family: Family, p: FamilyParams, n_max: u32, visit: &mut impl FnMut(&[Part])) {
    fn go(
        family: Family,
        p: FamilyParams,
        stack: &mut Vec<Part>,
        remaining: u32,
        visit: &mut impl FnMut(&[Part]),
    ) {
        visit(stack);
        let prev = stack.last().copied();
        let lo = prev.map_or(1, |q| q.value);
        for value in lo..=remaining {
            for overlined in [false, true] {
                let next = Part { value, overlined };
                // canonical order: an overlined copy closes its value
                if prev.is_some_and(|q| q.value == value && q.overlined) {
                    continue;
                }
                if family.admits(p, prev, next) {
                    stack.push(next);
                    go(family, p, stack, remaining - value, visit);
                    stack.pop();
                }
            }
        }
    }
    let mut stack = Vec::new();
    go(family, p, &mut stack, n_max, visit);
}

/// Number of members of each size `0..=n_max`, split by number of parts:
/// `table[n][m]`.
pub fn count_table(family: Family, p: FamilyParams, n_max: u32) -> Vec<Vec<u64>> {
    let mut table = vec![Vec::new(); n_max as usize + 1];
    walk_family(family, p, n_max, &mut |parts| {
        let n: u32 = parts.iter().map(|q| q.value).sum();
        let row = &mut table[n as usize];
        if row.len() <= parts.len() {
            row.resize(parts.len() + 1, 0);
        }
        row[parts.len()] += 1;
    });
    table
}

/// Totals `count(n)` for `n = 0..=n_max`.
pub fn count_totals(family: Family, p: FamilyParams, n_max: u32) -> Vec<u64> {
    count_table(family, p, n_max)
        .into_iter()
        .map(|row| row.iter().sum())
        .collect()
}

/// `sum_m (-1)^m count(n, m)` for `n = 0..=n_max`.
pub fn signed_totals(family: Family, p: FamilyParams, n_max: u32) -> Vec<i64> {
    count_table(family, p, n_max)
        .into_iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(m, &c)| if m % 2 == 0 { c as i64 } else { -(c as i64) })
                .sum()
        })
        .collect()
}

/// Members of size exactly `n`, optionally with exactly `m` parts.
pub fn count(family: Family, p: FamilyParams, n: u32, m: Option<usize>) -> u64 {
    let mut total = 0;
    walk_family(family, p, n, &mut |parts| {
        let sum: u32 = parts.iter().map(|q| q.value).sum();
        if sum == n && m.is_none_or(|m| m == parts.len()) {
            total += 1;
        }
    });
    total
}

pub fn count_obar_b(p: FamilyParams, n: u32, m: Option<usize>) -> u64 {
    count(Family::ObarB, p, n, m)
}

pub fn count_obar_c(p: FamilyParams, n: u32, m: Option<usize>) -> u64 {
    count(Family::ObarC, p, n, m)
}

pub fn count_obar_e(p: FamilyParams, n: u32) -> u64 {
    count(Family::ObarE, p, n, None)
}

pub fn count_schur_b(p: FamilyParams, n: u32) -> u64 {
    count(Family::SchurB, p, n, None)
}

pub fn count_schur_c(p: FamilyParams, n: u32) -> u64 {
    count(Family::SchurC, p, n, None)
}

pub fn count_schur_e(p: FamilyParams, n: u32) -> u64 {
    count(Family::SchurE, p, n, None)
}

/// All members of size `n`, sorted lexicographically by part sequence
/// (plain copies before the overlined copy of the same value).
pub fn list_family(family: Family, p: FamilyParams, n: u32) -> Vec<OverPartition> {
    let mut out = Vec::new();
    walk_family(family, p, n, &mut |parts| {
        if parts.iter().map(|q| q.value).sum::<u32>() == n {
            out.push(OverPartition {
                parts: parts.to_vec(),
            });
        }
    });
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p31() -> FamilyParams {
        FamilyParams::new(3, 1).unwrap()
    }

    fn op(s: &str) -> OverPartition {
        s.parse().unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(FamilyParams::new(2, 1).is_err());
        assert!(FamilyParams::new(4, 2).is_err());
        assert!(FamilyParams::new(5, 0).is_err());
        assert!(FamilyParams::new(5, 2).is_ok());
        let grid: Vec<_> = FamilyParams::grid(&[3, 4, 5, 7])
            .into_iter()
            .map(|p| (p.d(), p.r()))
            .collect();
        assert_eq!(
            grid,
            vec![(3, 1), (4, 1), (5, 1), (5, 2), (7, 1), (7, 2), (7, 3)]
        );
    }

    #[test]
    fn classify_examples() {
        let p = p31();
        assert_eq!(classify(Part::over(5), p).unwrap(), ClassLabel::DMinusRBar);
        assert_eq!(classify(Part::plain(6), p).unwrap(), ClassLabel::DPlain);
        assert_eq!(classify(Part::over(1), p).unwrap(), ClassLabel::RBar);
        assert_eq!(classify(Part::over(9), p).unwrap(), ClassLabel::DBar);
        assert!(matches!(
            classify(Part::plain(4), p),
            Err(Error::IllegalPart { value: 4, .. })
        ));
        let p72 = FamilyParams::new(7, 2).unwrap();
        assert!(classify(Part::over(10), p72).is_err());
    }

    #[test]
    fn matrices() {
        let a = gap_matrix_obar(p31());
        assert_eq!(
            a.rows(),
            &[
                vec![3, 2, 4, 1],
                vec![4, 3, 5, 2],
                vec![5, 4, 6, 3],
                vec![2, 1, 3, 0]
            ]
        );
        let p52 = FamilyParams::new(5, 2).unwrap();
        assert_eq!(gap_matrix_obar(p52).rows()[0], vec![5, 4, 7, 2]);
        for p in FamilyParams::grid(&[3, 4, 5, 7, 9]) {
            let a = gap_matrix_obar(p);
            assert_eq!(
                a.get(ClassLabel::DBar, ClassLabel::DMinusRBar),
                p.d() + p.r()
            );
            let s = gap_matrix_schur(p);
            for i in 0..3 {
                for j in 0..3 {
                    let expect = if (i, j) == (0, 1) {
                        2 * p.r()
                    } else {
                        s.rows()[i][j]
                    };
                    assert_eq!(a.rows()[i][j], expect);
                }
            }
        }
        assert_eq!(
            gap_matrix_schur(p31()).rows(),
            &[vec![3, 5, 4], vec![4, 3, 5], vec![5, 4, 6]]
        );
        let p73 = FamilyParams::new(7, 3).unwrap();
        assert_eq!(
            gap_matrix_schur(p73).rows(),
            &[vec![7, 13, 10], vec![8, 7, 11], vec![11, 10, 14]]
        );
    }

    #[test]
    fn obar_b_membership() {
        let p = p31();
        assert!(is_obar_b(&op("(1o,3,3,3,5o)"), p).unwrap().ok);
        assert!(is_obar_b(&op("(2o,3,10o)"), p).unwrap().ok);
        assert!(is_obar_b(&op("(6,9o)"), p).unwrap().ok);
        let v = is_obar_b(&op("(1o,2o)"), p).unwrap();
        assert!(!v.ok);
        assert!(v.violations.contains(&Violation::GapTooSmall { index: 0 }));
        // 4o is r-bar but 4 = d + r (mod 2d)
        assert_eq!(
            is_obar_b(&op("(4o)"), p).unwrap().violations,
            vec![Violation::SmallestPart]
        );
        assert!(is_obar_b(&op("(4)"), p).is_err());
        assert!(is_obar_b(&OverPartition::default(), p).unwrap().ok);
    }

    #[test]
    fn obar_c_membership() {
        let p = p31();
        assert!(!is_obar_c(&op("(6,9o)"), p).unwrap().ok);
        assert!(is_obar_c(&op("(4o)"), p).unwrap().ok);
        assert!(is_obar_c(&op("(4o,7o)"), p).unwrap().ok);
        let v = is_obar_c(&op("(3o,6,6)"), p).unwrap();
        assert!(v.violations.contains(&Violation::PartTooSmall { index: 0 }));
        assert!(is_obar_c(&op("(3)"), p)
            .unwrap()
            .violations
            .contains(&Violation::SmallestPart));
    }

    #[test]
    fn parse_and_display() {
        let s = "(1o,3,3,3,5o)";
        assert_eq!(op(s).to_string(), s);
        assert_eq!(op("()").to_string(), "()");
        assert!("(3o,3)".parse::<OverPartition>().is_err());
        assert!("(5,3)".parse::<OverPartition>().is_err());
        assert!("(3o,3o)".parse::<OverPartition>().is_err());
        assert!(op("(3,3o)").parts()[1].overlined);
        let json = serde_json::to_string(&op("(2o,3)")).unwrap();
        assert_eq!(
            json,
            r#"[{"value":2,"overlined":true},{"value":3,"overlined":false}]"#
        );
        let back: OverPartition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, op("(2o,3)"));
        assert!(serde_json::from_str::<OverPartition>(
            r#"[{"value":3,"overlined":true},{"value":3,"overlined":false}]"#
        )
        .is_err());
    }

    #[test]
    fn small_counts() {
        let p = p31();
        for fam in Family::ALL {
            assert_eq!(count(fam, p, 0, None), 1, "{fam}");
            assert_eq!(list_family(fam, p, 0), vec![OverPartition::default()]);
        }
        for n in 1..=3 {
            assert_eq!(count_obar_c(p, n, None), 0);
        }
        // (10), (2,8), (1,2,7), (1,4,5)
        assert_eq!(count_schur_e(p, 10), 4);
    }

    #[test]
    fn family_names_round_trip() {
        for fam in Family::ALL {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
        assert!("obar-x".parse::<Family>().is_err());
    }
}
