//! Exact certifiers.
//!
//! Every check is an exact integer comparison. A failing check carries the
//! lexicographically first failing position together with the value found
//! there and the value that was required.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::construct::{PairFamily, PairKind};
use crate::error::{Error, Result};
use crate::matcore::{IntMatrix, TernaryMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Indices of the matrices involved, in the order the check names them.
    pub matrices: Vec<usize>,
    pub row: usize,
    pub col: usize,
    pub found: i64,
    pub expected: i64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.matrices.is_empty() {
            let ids: Vec<String> = self.matrices.iter().map(|m| m.to_string()).collect();
            write!(f, "matrices={} ", ids.join(","))?;
        }
        write!(f, "at ({}, {}): found {}, expected {}", self.row, self.col, self.found, self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    /// Free-form detail for checks whose evidence is not a matrix entry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, witness: None, note: None }
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> Self {
        Self { name: name.into(), passed: false, witness: Some(witness), note: None }
    }

    pub fn noted(name: impl Into<String>, passed: bool, note: impl Into<String>) -> Self {
        Self { name: name.into(), passed, witness: None, note: Some(note.into()) }
    }

    pub fn from_witness(name: impl Into<String>, witness: Option<Witness>) -> Self {
        match witness {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}", self.name)?;
        match (&self.witness, &self.note) {
            (Some(w), _) => write!(f, " [{w}]"),
            (None, Some(n)) => write!(f, " [{n}]"),
            (None, None) => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// SHA-256 over the orders and entries of the certified matrices.
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn new(subject: String) -> Self {
        Self { subject, checks: Vec::new() }
    }

    pub fn for_matrices<'a>(ms: impl IntoIterator<Item = &'a TernaryMatrix>) -> Self {
        Self::new(content_hash(ms))
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Certificate) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Did every check whose name starts with `prefix` pass? False if there are none.
    pub fn passed_prefix(&self, prefix: &str) -> bool {
        let mut any = false;
        for c in self.checks.iter().filter(|c| c.name.starts_with(prefix)) {
            any = true;
            if !c.passed {
                return false;
            }
        }
        any
    }

    /// One line per check: `PASS <check>` or `FAIL <check> [witness]`.
    pub fn report(&self) -> String {
        let mut out = format!("# subject={}\n", self.subject);
        for c in &self.checks {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }
}

pub fn content_hash<'a>(ms: impl IntoIterator<Item = &'a TernaryMatrix>) -> String {
    let mut h = Sha256::new();
    for m in ms {
        h.update((m.order() as u64).to_le_bytes());
        h.update(m.as_slice().iter().map(|&v| v as u8).collect::<Vec<u8>>());
    }
    hex::encode(h.finalize())
}

/// Passes iff `lhs == rhs`; otherwise reports the first differing entry.
pub(crate) fn equality_check(name: impl Into<String>, matrices: Vec<usize>, lhs: &IntMatrix, rhs: &IntMatrix) -> Check {
    match lhs.first_difference(rhs) {
        None => Check::pass(name),
        Some((row, col)) => Check::fail(
            name,
            Witness { matrices, row, col, found: lhs.get_i64(row, col), expected: rhs.get_i64(row, col) },
        ),
    }
}

/// First position where `actual` differs from `expected(r, c)`.
pub(crate) fn first_mismatch(
    actual: &IntMatrix,
    expected: impl Fn(usize, usize) -> i64,
) -> Option<(usize, usize, i64, i64)> {
    let n = actual.order();
    for r in 0..n {
        for c in 0..n {
            let want = expected(r, c);
            let got = actual.get_i64(r, c);
            if got != want {
                return Some((r, c, got, want));
            }
        }
    }
    None
}

fn witness_at(matrices: Vec<usize>, hit: Option<(usize, usize, i64, i64)>) -> Option<Witness> {
    hit.map(|(row, col, found, expected)| Witness { matrices, row, col, found, expected })
}

fn weighing_witness(w: &TernaryMatrix, weight: i64) -> Option<Witness> {
    let gram = w.gram();
    witness_at(vec![], first_mismatch(&gram, |r, c| if r == c { weight } else { 0 }))
}

/// `W W^T = w I`.
pub fn is_weighing(w: &TernaryMatrix, weight: usize) -> Certificate {
    let mut cert = Certificate::for_matrices([w]);
    cert.push(Check::from_witness(format!("weighing(w={weight})"), weighing_witness(w, weight as i64)));
    cert
}

fn transpose_witness(w: &TernaryMatrix, sign: i8) -> Option<Witness> {
    let n = w.order();
    for r in 0..n {
        for c in 0..n {
            if w.get(r, c) != sign * w.get(c, r) {
                return Some(Witness {
                    matrices: vec![],
                    row: r,
                    col: c,
                    found: w.get(r, c) as i64,
                    expected: (sign * w.get(c, r)) as i64,
                });
            }
        }
    }
    None
}

/// `W^T = -W`.
pub fn is_skew(w: &TernaryMatrix) -> Certificate {
    let mut cert = Certificate::for_matrices([w]);
    cert.push(Check::from_witness("skew", transpose_witness(w, -1)));
    cert
}

/// `W^T = W`.
pub fn is_symmetric(w: &TernaryMatrix) -> Certificate {
    let mut cert = Certificate::for_matrices([w]);
    cert.push(Check::from_witness("symmetric", transpose_witness(w, 1)));
    cert
}

fn common_order(ws: &[TernaryMatrix]) -> Result<usize> {
    let n = ws.first().map(|w| w.order()).unwrap_or(0);
    if let Some(i) = ws.iter().position(|w| w.order() != n) {
        return Err(Error::ShapeMismatch(format!(
            "matrix {i} has order {}, expected {n}",
            ws[i].order()
        )));
    }
    Ok(n)
}

fn support_sum(ws: &[TernaryMatrix], n: usize) -> Vec<i64> {
    let mut sum = vec![0i64; n * n];
    for w in ws {
        for (s, v) in sum.iter_mut().zip(w.as_slice()) {
            *s += v.abs() as i64;
        }
    }
    sum
}

/// `sum |W_i|` is a 0/1 matrix (`disjoint`) and equals `J - I` (`complete_cover`).
pub fn is_disjoint_family(ws: &[TernaryMatrix]) -> Result<Certificate> {
    let n = common_order(ws)?;
    let sum = support_sum(ws, n);
    let mut cert = Certificate::for_matrices(ws);
    let overlap = sum.iter().position(|&s| s > 1).map(|p| Witness {
        matrices: vec![],
        row: p / n,
        col: p % n,
        found: sum[p],
        expected: 1,
    });
    cert.push(Check::from_witness("disjoint", overlap));
    let cover = sum.iter().enumerate().find_map(|(p, &s)| {
        let want = (p / n != p % n) as i64;
        (s != want).then(|| Witness { matrices: vec![], row: p / n, col: p % n, found: s, expected: want })
    });
    cert.push(Check::from_witness("complete_cover", cover));
    Ok(cert)
}

/// All entries `±1` and `H H^T = n I`.
pub fn is_hadamard(h: &TernaryMatrix) -> Certificate {
    let mut cert = Certificate::for_matrices([h]);
    let zero = h.as_slice().iter().position(|&v| v == 0).map(|p| Witness {
        matrices: vec![],
        row: p / h.order(),
        col: p % h.order(),
        found: 0,
        expected: 1,
    });
    cert.push(Check::from_witness("hadamard_entries", zero));
    cert.push(Check::from_witness("hadamard_gram", weighing_witness(h, h.order() as i64)));
    cert
}

/// Exactly one nonzero entry in every row and every column.
pub fn is_signed_permutation(k: &TernaryMatrix) -> Certificate {
    let mut cert = Certificate::for_matrices([k]);
    let n = k.order();
    let mut witness = None;
    'rows: for r in 0..n {
        let count = k.row(r).iter().filter(|&&v| v != 0).count() as i64;
        if count != 1 {
            witness = Some(Witness { matrices: vec![], row: r, col: 0, found: count, expected: 1 });
            break 'rows;
        }
    }
    if witness.is_none() {
        for c in 0..n {
            let count = (0..n).filter(|&r| k.get(r, c) != 0).count() as i64;
            if count != 1 {
                witness = Some(Witness { matrices: vec![], row: 0, col: c, found: count, expected: 1 });
                break;
            }
        }
    }
    cert.push(Check::from_witness("signed_permutation", witness));
    cert
}

/// `W_i W_j^T + W_j W_i^T = O` for every distinct pair.
pub fn is_antiamicable_family(ws: &[TernaryMatrix]) -> Result<Certificate> {
    common_order(ws)?;
    let mut cert = Certificate::for_matrices(ws);
    let mut witness = None;
    'outer: for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            let a = ws[i].mul(&ws[j].transpose())?;
            let sum = a.add(&a.transpose())?;
            if let Some(hit) = first_mismatch(&sum, |_, _| 0) {
                witness = witness_at(vec![i, j], Some(hit));
                break 'outer;
            }
        }
    }
    cert.push(Check::from_witness("antiamicable", witness));
    Ok(cert)
}

/// The full set of checks behind a skew, complete-cover DW collection.
pub fn certify_dw(ws: &[TernaryMatrix], weights: &[usize]) -> Result<Certificate> {
    if ws.len() != weights.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} matrices but {} weights",
            ws.len(),
            weights.len()
        )));
    }
    common_order(ws)?;
    let mut cert = Certificate::for_matrices(ws);
    for (i, (w, &weight)) in ws.iter().zip(weights).enumerate() {
        let mut c = Check::from_witness(format!("weighing[{i}](w={weight})"), weighing_witness(w, weight as i64));
        if let Some(wit) = c.witness.as_mut() {
            wit.matrices = vec![i];
        }
        cert.push(c);
        let mut s = Check::from_witness(format!("skew[{i}]"), transpose_witness(w, -1));
        if let Some(wit) = s.witness.as_mut() {
            wit.matrices = vec![i];
        }
        cert.push(s);
    }
    cert.extend(is_disjoint_family(ws)?);
    Ok(cert)
}

fn tag(mut check: Check, index: usize) -> Check {
    if let Some(w) = check.witness.as_mut() {
        w.matrices = vec![index];
    }
    check
}

/// Every structural and algebraic condition a Hadamard / signed-permutation pair family must meet.
pub fn check_pair_conditions(fam: &PairFamily) -> Certificate {
    let mut cert = Certificate::for_matrices(fam.pairs().iter().flat_map(|p| [&p.hadamard, &p.perm]));
    for (i, pair) in fam.pairs().iter().enumerate() {
        for c in is_hadamard(&pair.hadamard).checks {
            cert.push(tag(Check { name: format!("{}[{i}]", c.name), ..c }, i));
        }
        cert.push(tag(
            Check::from_witness(format!("hadamard_symmetric[{i}]"), transpose_witness(&pair.hadamard, 1)),
            i,
        ));
        for c in is_signed_permutation(&pair.perm).checks {
            cert.push(tag(Check { name: format!("{}[{i}]", c.name), ..c }, i));
        }
        match fam.kind() {
            PairKind::HK => {
                cert.push(tag(Check::from_witness(format!("perm_skew[{i}]"), transpose_witness(&pair.perm, -1)), i));
            }
            PairKind::LM => {
                cert.push(tag(
                    Check::from_witness(format!("perm_symmetric[{i}]"), transpose_witness(&pair.perm, 1)),
                    i,
                ));
                let diag = (0..pair.perm.order()).find(|&r| pair.perm.get(r, r) != 0).map(|r| Witness {
                    matrices: vec![i],
                    row: r,
                    col: r,
                    found: pair.perm.get(r, r) as i64,
                    expected: 0,
                });
                cert.push(Check::from_witness(format!("perm_zero_diagonal[{i}]"), diag));
            }
        }
        let lhs = pair.hadamard.mul(&pair.perm.transpose()).expect("same order");
        let rhs = pair.perm.mul(&pair.hadamard.transpose()).expect("same order");
        let hit = lhs.first_difference(&rhs).map(|(r, c)| (r, c, lhs.get_i64(r, c), rhs.get_i64(r, c)));
        cert.push(Check::from_witness(format!("commuting_transpose[{i}]"), witness_at(vec![i], hit)));
    }
    if !fam.pairs().is_empty() {
        let perms: Vec<TernaryMatrix> = fam.pairs().iter().map(|p| p.perm.clone()).collect();
        let cover = is_disjoint_family(&perms).expect("family orders agree");
        let c = cover.check("complete_cover").cloned().expect("present");
        cert.push(Check { name: "perm_cover".into(), ..c });
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{base_pair, pair_family};

    #[test]
    fn identity_is_weight_one() {
        assert!(is_weighing(&TernaryMatrix::identity(4), 1).passed());
    }

    #[test]
    fn all_ones_is_not_weighing() {
        let cert = is_weighing(&TernaryMatrix::ones(2), 2);
        assert!(!cert.passed());
        let w = cert.checks[0].witness.as_ref().unwrap();
        assert_eq!((w.row, w.col, w.found, w.expected), (0, 1, 2, 0));
    }

    #[test]
    fn skew_and_symmetric_of_base_pair() {
        let (h, k) = base_pair();
        assert!(is_skew(&k).passed());
        assert!(is_symmetric(&h).passed());
        let c = crate::matcore::circulant(&[0, 1, 1]).unwrap();
        let cert = is_skew(&c);
        assert!(!cert.passed());
        assert!(cert.report().contains("FAIL skew"));
    }

    #[test]
    fn self_overlap_is_not_disjoint() {
        let (_, k) = base_pair();
        let cert = is_disjoint_family(&[k.clone(), k]).unwrap();
        let c = cert.check("disjoint").unwrap();
        assert!(!c.passed);
        let w = c.witness.as_ref().unwrap();
        assert_eq!((w.row, w.col, w.found), (0, 1, 2));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let r = is_disjoint_family(&[TernaryMatrix::identity(2), TernaryMatrix::identity(3)]);
        assert!(matches!(r, Err(Error::ShapeMismatch(_))));
        let r = is_antiamicable_family(&[TernaryMatrix::identity(2), TernaryMatrix::identity(3)]);
        assert!(matches!(r, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn hk_perms_of_order_four_cover() {
        let (hk, _) = pair_family(2);
        let ks: Vec<_> = hk.pairs().iter().map(|p| p.perm.clone()).collect();
        let cert = is_disjoint_family(&ks).unwrap();
        assert!(cert.passed(), "{}", cert.report());
    }

    #[test]
    fn hadamard_and_signed_permutation() {
        let (h, k) = base_pair();
        let h8 = h.kronecker(&h).kronecker(&h);
        assert!(is_hadamard(&h8).passed());
        let kk = k.kronecker(&k);
        assert!(is_signed_permutation(&kk).passed());
        assert!(kk.is_symmetric());
        assert!((0..4).all(|r| kk.get(r, r) == 0));
        let cert = is_hadamard(&TernaryMatrix::identity(2));
        assert!(!cert.check("hadamard_entries").unwrap().passed);
        assert!(!is_signed_permutation(&TernaryMatrix::ones(2)).passed());
    }

    #[test]
    fn antiamicable_pairs() {
        let (_, k) = base_pair();
        let i2 = TernaryMatrix::identity(2);
        // I K' + K I' = K' + K = 0
        let fam = [i2.clone(), k.clone()];
        assert!(is_antiamicable_family(&fam).unwrap().passed());
        assert!(!is_antiamicable_family(&[k.kronecker(&i2), i2.kronecker(&k)]).unwrap().passed());
        assert!(is_antiamicable_family(&fam[..1]).unwrap().passed());
        // I and I: I I^T + I I^T = 2I
        let cert = is_antiamicable_family(&[i2.clone(), i2]).unwrap();
        let w = cert.checks[0].witness.as_ref().unwrap();
        assert_eq!((w.matrices.clone(), w.row, w.col, w.found), (vec![0, 1], 0, 0, 2));
    }

    #[test]
    fn duplicated_perm_breaks_cover() {
        let (hk, _) = pair_family(2);
        let mut pairs = hk.pairs().to_vec();
        pairs[1] = pairs[0].clone();
        let fam = PairFamily::from_parts(2, PairKind::HK, pairs);
        let cert = check_pair_conditions(&fam);
        assert!(!cert.check("perm_cover").unwrap().passed);
    }
}
