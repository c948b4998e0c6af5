//! Families of (symmetric Hadamard, signed permutation) pairs of order `2^m`.
//!
//! Two families are grown together. In an `HK` family every permutation is
//! skew-symmetric; in an `LM` family every permutation is symmetric with zero
//! diagonal. In both, `H_i K_i^T = K_i H_i^T` and the supports of the
//! permutations tile `J - I`.

use crate::matcore::TernaryMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// Skew-symmetric signed permutations.
    HK,
    /// Symmetric signed permutations with zero diagonal.
    LM,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub hadamard: TernaryMatrix,
    pub perm: TernaryMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFamily {
    m: u32,
    kind: PairKind,
    pairs: Vec<Pair>,
}

impl PairFamily {
    /// Assembles a family without checking it; see [`crate::verify::check_pair_conditions`].
    pub fn from_parts(m: u32, kind: PairKind, pairs: Vec<Pair>) -> Self {
        Self { m, kind, pairs }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> usize {
        1 << self.m
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn perms(&self) -> Vec<TernaryMatrix> {
        self.pairs.iter().map(|p| p.perm.clone()).collect()
    }
}

fn tm(rows: [[i8; 2]; 2]) -> TernaryMatrix {
    TernaryMatrix::new(2, rows.concat()).expect("2x2 ternary")
}

/// `H = [[1, 1], [1, -1]]` and `K = [[0, 1], [-1, 0]]`.
pub fn base_pair() -> (TernaryMatrix, TernaryMatrix) {
    (tm([[1, 1], [1, -1]]), tm([[0, 1], [-1, 0]]))
}

/// `H` tensored with itself `power` times (`power >= 1`).
pub fn sylvester_power(power: u32) -> TernaryMatrix {
    let (h, _) = base_pair();
    (1..power).fold(h.clone(), |acc, _| h.kronecker(&acc))
}

fn pair(hadamard: TernaryMatrix, perm: TernaryMatrix) -> Pair {
    Pair { hadamard, perm }
}

/// `I_2 ⊗ (Q+R) + R ⊗ (Q-R)` with `Q = diag(1, -1)`, `R = J_2 - I_2`.
fn twisted_hadamard() -> TernaryMatrix {
    let q_plus_r = tm([[1, 1], [1, -1]]);
    let q_minus_r = tm([[1, -1], [-1, -1]]);
    let i2 = TernaryMatrix::identity(2);
    let r = TernaryMatrix::complete(2);
    i2.kronecker(&q_plus_r).try_add(&r.kronecker(&q_minus_r)).expect("disjoint supports")
}

/// `(Q+R) ⊗ I_2 + (Q-R) ⊗ R`.
fn twisted_hadamard_transposed_order() -> TernaryMatrix {
    let q_plus_r = tm([[1, 1], [1, -1]]);
    let q_minus_r = tm([[1, -1], [-1, -1]]);
    let i2 = TernaryMatrix::identity(2);
    let r = TernaryMatrix::complete(2);
    q_plus_r.kronecker(&i2).try_add(&q_minus_r.kronecker(&r)).expect("disjoint supports")
}

fn order_four() -> (Vec<Pair>, Vec<Pair>) {
    let (h, k) = base_pair();
    let i2 = TernaryMatrix::identity(2);
    let r = TernaryMatrix::complete(2);
    let hh = h.kronecker(&h);
    let x = twisted_hadamard();
    let hk = vec![
        pair(hh.clone(), k.kronecker(&i2)),
        pair(hh.clone(), i2.kronecker(&k)),
        pair(x.clone(), r.kronecker(&k)),
    ];
    let lm = vec![
        pair(x, r.kronecker(&i2)),
        pair(twisted_hadamard_transposed_order(), i2.kronecker(&r)),
        pair(hh, k.kronecker(&k)),
    ];
    (hk, lm)
}

/// Both families of order `2^m`, each with `2^m - 1` pairs (`m >= 2`).
///
/// For `m = 1` the `HK` family is the single base pair and the `LM` family
/// is empty. Pairs are ordered as the recursion lists them: the `H ⊗ H_j`
/// block, then the `H ⊗ L_j` block, then the single closing pair, with `j`
/// ascending inside each block.
pub fn pair_family(m: u32) -> (PairFamily, PairFamily) {
    assert!(m >= 1, "pair families start at m = 1");
    if m == 1 {
        let (h, k) = base_pair();
        return (
            PairFamily::from_parts(1, PairKind::HK, vec![pair(h, k)]),
            PairFamily::from_parts(1, PairKind::LM, vec![]),
        );
    }
    let (mut hk, mut lm) = order_four();
    let (h, k) = base_pair();
    let i2 = TernaryMatrix::identity(2);
    let r = TernaryMatrix::complete(2);
    for level in 2..m {
        let size = 1usize << level;
        let id = TernaryMatrix::identity(size);
        let mut next_hk = Vec::with_capacity(2 * size - 1);
        let mut next_lm = Vec::with_capacity(2 * size - 1);
        for p in &hk {
            next_hk.push(pair(h.kronecker(&p.hadamard), i2.kronecker(&p.perm)));
        }
        for p in &lm {
            next_hk.push(pair(h.kronecker(&p.hadamard), k.kronecker(&p.perm)));
        }
        next_hk.push(pair(sylvester_power(level + 1), k.kronecker(&id)));

        for p in &hk {
            next_lm.push(pair(h.kronecker(&p.hadamard), k.kronecker(&p.perm)));
        }
        for p in &lm {
            next_lm.push(pair(h.kronecker(&p.hadamard), i2.kronecker(&p.perm)));
        }
        // The order-4 twisted block carries level - 1 Sylvester factors so the
        // Hadamard part has order 2^(level+1), matching R ⊗ I.
        next_lm.push(pair(twisted_hadamard().kronecker(&sylvester_power(level - 1)), r.kronecker(&id)));
        hk = next_hk;
        lm = next_lm;
    }
    (PairFamily::from_parts(m, PairKind::HK, hk), PairFamily::from_parts(m, PairKind::LM, lm))
}
