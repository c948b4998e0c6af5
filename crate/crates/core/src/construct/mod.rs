//! Deterministic constructors for skew disjoint weighing matrices.
//!
//! Everything built here is certified by running the full verifier over the
//! output; the flags on a [`DwCollection`] are never copied from an input.

mod goethals_seidel;
mod pairs;
mod seeds;

pub use goethals_seidel::{gs_assemble, GsQuadSeed};
pub use pairs::{base_pair, pair_family, sylvester_power, Pair, PairFamily, PairKind};
pub use seeds::{embedded_seeds, Embedded};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::TernaryMatrix;
use crate::verify::{certify_dw, Certificate};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertFlags {
    pub weighing: bool,
    pub skew: bool,
    pub disjoint: bool,
    pub complete_cover: bool,
}

impl CertFlags {
    pub fn all(&self) -> bool {
        self.weighing && self.skew && self.disjoint && self.complete_cover
    }
}

/// `k` disjoint weighing matrices of a common order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DwCollection {
    order: usize,
    matrices: Vec<TernaryMatrix>,
    weights: Vec<usize>,
    certified: CertFlags,
}

impl DwCollection {
    /// Verifies `matrices` against `weights` and records which properties hold.
    pub fn certify(matrices: Vec<TernaryMatrix>, weights: Vec<usize>) -> Result<Self> {
        let cert = certify_dw(&matrices, &weights)?;
        let order = matrices.first().map(|m| m.order()).unwrap_or(0);
        let certified = CertFlags {
            weighing: cert.passed_prefix("weighing["),
            skew: cert.passed_prefix("skew["),
            disjoint: cert.passed_prefix("disjoint"),
            complete_cover: cert.passed_prefix("complete_cover"),
        };
        Ok(Self { order, matrices, weights, certified })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn k(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[TernaryMatrix] {
        &self.matrices
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn certified(&self) -> CertFlags {
        self.certified
    }

    pub fn is_fully_certified(&self) -> bool {
        !self.matrices.is_empty() && self.certified.all()
    }

    /// The common weight when all weights agree.
    pub fn uniform_weight(&self) -> Option<usize> {
        let w = *self.weights.first()?;
        self.weights.iter().all(|&x| x == w).then_some(w)
    }

    /// Re-runs the verifier and returns the full report.
    pub fn certificate(&self) -> Certificate {
        certify_dw(&self.matrices, &self.weights).expect("shapes were validated on construction")
    }

    /// `DW(n; w1, ..., wk)` notation.
    pub fn notation(&self) -> String {
        match self.uniform_weight() {
            Some(w) => format!("DW({};[{}]^{})", self.order, w, self.k()),
            None => {
                let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
                format!("DW({};{})", self.order, ws.join(","))
            }
        }
    }
}

/// Assembles the three embedded seed triples into certified collections.
pub fn embedded_dw(which: Embedded) -> DwCollection {
    let seeds = embedded_seeds(which);
    let weight = seeds[0].weight();
    let matrices = seeds.iter().map(|s| gs_assemble(s).expect("embedded seeds are valid")).collect();
    let dw = DwCollection::certify(matrices, vec![weight; 3]).expect("consistent shapes");
    assert!(dw.is_fully_certified(), "embedded seed data failed verification");
    dw
}

/// `W_i ↦ H_i ⊗ W_i + K_i ⊗ I`, taking a skew `DW(km+1; [m]^k)` to a skew
/// `DW((k+1)(km+1); [(k+1)m+1]^k)` using the first `k` pairs of an `HK` family
/// of order `k + 1`.
pub fn lift(dw: &DwCollection, family: &PairFamily) -> Result<DwCollection> {
    if family.kind() != PairKind::HK {
        return Err(Error::ParamMismatch("lifting needs an HK family".into()));
    }
    if !dw.is_fully_certified() {
        return Err(Error::UncertifiedInput(format!(
            "{} is not a certified skew complete-cover collection ({:?})",
            dw.notation(),
            dw.certified()
        )));
    }
    let k = dw.k();
    if family.order() != k + 1 || family.len() < k {
        return Err(Error::ParamMismatch(format!(
            "need {k} pairs of order {}, family has {} pairs of order {}",
            k + 1,
            family.len(),
            family.order()
        )));
    }
    let m = dw
        .uniform_weight()
        .ok_or_else(|| Error::ParamMismatch("weights must be equal".into()))?;
    if dw.order() != k * m + 1 {
        return Err(Error::ParamMismatch(format!(
            "order {} is not k*m + 1 = {}",
            dw.order(),
            k * m + 1
        )));
    }
    let id = TernaryMatrix::identity(dw.order());
    let lifted = dw
        .matrices()
        .iter()
        .zip(family.pairs())
        .map(|(w, p)| p.hadamard.kronecker(w).try_add(&p.perm.kronecker(&id)))
        .collect::<Result<Vec<_>>>()?;
    DwCollection::certify(lifted, vec![(k + 1) * m + 1; k])
}

/// The four infinite families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `DW(2^(mn); [(2^(mn) - 1)/(2^n - 1)]^(2^n - 1))`.
    Powers2 { n: u32, m: u32 },
    /// `DW(7 * 4^m; ...)`, lifted from the order-28 triple.
    F7 { m: u32 },
    /// `DW(10 * 4^m; ...)`, lifted from a user supplied `DW(40; 13, 13, 13)`.
    F10 { m: u32 },
    /// `DW(13 * 4^m; ...)`, lifted from the order-52 triple.
    F13 { m: u32 },
}

impl Family {
    /// Expected `(order, weight, k)`.
    pub fn parameters(&self) -> (u64, u64, u64) {
        let three = |base: u64, m: u32| {
            let order = base * 4u64.pow(m + 1);
            (order, (order - 1) / 3, 3)
        };
        match *self {
            Family::Powers2 { n, m } => {
                let order = 1u64 << (m * n);
                let k = (1u64 << n) - 1;
                (order, (order - 1) / k, k)
            }
            Family::F7 { m } => three(7, m),
            Family::F10 { m } => three(10, m),
            Family::F13 { m } => three(13, m),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Powers2 { n, m } => write!(f, "powers2:n={n},m={m}"),
            Family::F7 { m } => write!(f, "f7:m={m}"),
            Family::F10 { m } => write!(f, "f10:m={m}"),
            Family::F13 { m } => write!(f, "f13:m={m}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParamMismatch(format!("unknown family spec {s:?}"));
        let (name, args) = s.split_once(':').ok_or_else(bad)?;
        let mut n = None;
        let mut m = None;
        for kv in args.split(',') {
            let (key, val) = kv.split_once('=').ok_or_else(bad)?;
            let val: u32 = val.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "n" => n = Some(val),
                "m" => m = Some(val),
                _ => return Err(bad()),
            }
        }
        let m = m.ok_or_else(bad)?;
        match (name, n) {
            ("powers2", Some(n)) => Ok(Family::Powers2 { n, m }),
            ("f7", None) => Ok(Family::F7 { m }),
            ("f10", None) => Ok(Family::F10 { m }),
            ("f13", None) => Ok(Family::F13 { m }),
            _ => Err(bad()),
        }
    }
}

fn lift_times(mut dw: DwCollection, family: &PairFamily, times: u32) -> Result<DwCollection> {
    for _ in 0..times {
        dw = lift(&dw, family)?;
    }
    Ok(dw)
}

/// Builds a member of one of the infinite families. `base40` is required for
/// [`Family::F10`] and must be a certified skew `DW(40; 13, 13, 13)`.
pub fn family(which: Family, base40: Option<&DwCollection>) -> Result<DwCollection> {
    match which {
        Family::Powers2 { n, m } => {
            if n < 2 || m < 1 {
                return Err(Error::ParamMismatch(format!("powers2 needs n >= 2 and m >= 1, got n={n}, m={m}")));
            }
            let (hk, _) = pair_family(n);
            let k = hk.len();
            let base = DwCollection::certify(hk.perms(), vec![1; k])?;
            lift_times(base, &hk, m - 1)
        }
        Family::F7 { m } => lift_times(embedded_dw(Embedded::Dw28), &pair_family(2).0, m),
        Family::F13 { m } => lift_times(embedded_dw(Embedded::Dw52), &pair_family(2).0, m),
        Family::F10 { m } => {
            let base = base40.ok_or_else(|| {
                Error::MissingBaseData("the order-40 family needs a DW(40;13,13,13) base file".into())
            })?;
            if base.order() != 40 || base.weights() != [13, 13, 13] {
                return Err(Error::ParamMismatch(format!("base must be DW(40;[13]^3), got {}", base.notation())));
            }
            lift_times(base.clone(), &pair_family(2).0, m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::IntMatrix;

    #[test]
    fn dw28_is_certified_and_skew() {
        let dw = embedded_dw(Embedded::Dw28);
        assert_eq!(dw.order(), 28);
        assert_eq!(dw.weights(), &[9, 9, 9]);
        assert!(dw.is_fully_certified());
        for w in dw.matrices() {
            assert_eq!(w.transpose(), w.negate());
            assert_eq!(w.gram(), IntMatrix::scaled_identity(28, 9));
        }
    }

    #[test]
    fn dw52_is_certified() {
        let dw = embedded_dw(Embedded::Dw52);
        assert_eq!((dw.order(), dw.weights()), (52, &[17, 17, 17][..]));
        assert!(dw.is_fully_certified());
    }

    #[test]
    fn lift_of_base_k_is_w43() {
        let (_, k) = base_pair();
        let dw = DwCollection::certify(vec![k], vec![1]).unwrap();
        let fam = pair_family(1).0;
        let lifted = lift(&dw, &fam).unwrap();
        assert_eq!(lifted.order(), 4);
        assert_eq!(lifted.weights(), &[3]);
        assert!(lifted.is_fully_certified());
        assert_eq!(lifted.matrices()[0].abs(), TernaryMatrix::complete(4));
    }

    #[test]
    fn lift_rejects_wrong_family_order() {
        let dw = embedded_dw(Embedded::Dw28);
        let err = lift(&dw, &pair_family(3).0).unwrap_err();
        assert!(matches!(err, Error::ParamMismatch(_)));
    }

    #[test]
    fn lift_rejects_uncertified() {
        let dw = DwCollection::certify(vec![TernaryMatrix::identity(2)], vec![1]).unwrap();
        assert!(!dw.certified().skew);
        assert!(matches!(lift(&dw, &pair_family(1).0), Err(Error::UncertifiedInput(_))));
    }

    #[test]
    fn small_powers2_members() {
        let dw = family(Family::Powers2 { n: 2, m: 1 }, None).unwrap();
        assert_eq!(dw.notation(), "DW(4;[1]^3)");
        assert_eq!(dw.matrices(), &pair_family(2).0.perms()[..]);
        let dw = family(Family::Powers2 { n: 2, m: 2 }, None).unwrap();
        assert_eq!(dw.notation(), "DW(16;[5]^3)");
        assert!(dw.is_fully_certified());
    }

    #[test]
    fn f10_needs_base() {
        assert!(matches!(family(Family::F10 { m: 1 }, None), Err(Error::MissingBaseData(_))));
    }

    #[test]
    fn family_specs_parse() {
        for s in ["powers2:n=2,m=3", "f7:m=1", "f10:m=0", "f13:m=2"] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
        assert!("f7:n=1".parse::<Family>().is_err());
        assert!("nope:m=1".parse::<Family>().is_err());
        assert_eq!(Family::Powers2 { n: 3, m: 2 }.parameters(), (64, 9, 7));
        assert_eq!(Family::F13 { m: 1 }.parameters(), (208, 69, 3));
    }
}
