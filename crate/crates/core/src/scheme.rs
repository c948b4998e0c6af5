//! Association schemes from a skew `DW(km+1; [m]^k)` and a normalized
//! Hadamard matrix of order `kℓ+1`.
//!
//! Vertices are triples `(u, block, v)` with `u < km+1`, `block < ℓ`,
//! `v < kℓ+1`, indexed as `(u·ℓ + block)·(kℓ+1) + v`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::construct::{sylvester_power, DwCollection};
use crate::error::{Error, Result};
use crate::matcore::{back_circulant, IntMatrix, TernaryMatrix};
use crate::verify::{equality_check, is_hadamard, Certificate, Check, Witness};

/// `(W_pos, W_neg)` with `W = W_pos - W_neg`.
pub fn split_dw(w: &TernaryMatrix) -> (TernaryMatrix, TernaryMatrix) {
    (w.positive_part(), w.negative_part())
}

/// Sylvester Hadamard matrix of a power-of-two order `>= 2`.
pub fn sylvester_hadamard(order: usize) -> Result<TernaryMatrix> {
    if order < 2 || !order.is_power_of_two() {
        return Err(Error::ParamMismatch(format!("no Sylvester Hadamard matrix of order {order}")));
    }
    Ok(sylvester_power(order.trailing_zeros()))
}

/// Scales columns so that the first row is all ones.
pub fn normalize_hadamard(h: &TernaryMatrix) -> TernaryMatrix {
    TernaryMatrix::from_fn(h.order(), |r, c| h.get(r, c) * h.get(0, c))
}

pub fn is_normalized(h: &TernaryMatrix) -> bool {
    h.row(0).iter().all(|&v| v == 1)
}

fn require_normalized_hadamard(h: &TernaryMatrix) -> Result<()> {
    let cert = is_hadamard(h);
    if !cert.passed() {
        return Err(Error::ParamMismatch(format!("not a Hadamard matrix\n{}", cert.report())));
    }
    if let Some(c) = h.row(0).iter().position(|&v| v != 1) {
        return Err(Error::NotNormalized(format!("first row has {} in column {c}", h.get(0, c))));
    }
    Ok(())
}

/// `(D_{i,1}, D_{i,2})` for `i = 1..n-1`: the positive and negative parts of
/// `r_iᵀ r_i`, where `r_i` is row `i` of `h`.
pub fn hadamard_auxiliaries(h: &TernaryMatrix) -> Result<Vec<(TernaryMatrix, TernaryMatrix)>> {
    require_normalized_hadamard(h)?;
    let n = h.order();
    Ok((1..n)
        .map(|i| {
            let c = TernaryMatrix::from_fn(n, |a, b| h.get(i, a) * h.get(i, b));
            (c.positive_part(), c.negative_part())
        })
        .collect())
}

fn int_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> IntMatrix {
    IntMatrix::from_fn(n, |r, c| BigInt::from(f(r, c)))
}

fn product(a: &TernaryMatrix, b: &TernaryMatrix) -> IntMatrix {
    a.mul(b).expect("equal orders")
}

/// First failing instance of a family of identities, as a single check.
fn first_failure(name: &str, checks: impl IntoIterator<Item = Check>) -> Check {
    checks.into_iter().find(|c| !c.passed).map_or_else(|| Check::pass(name), |c| Check { name: name.into(), ..c })
}

/// The auxiliary identities, each scaled to integer coefficients (`n = order of h`):
///
/// * `D_{i,j}` symmetric
/// * `2 Σ_i D_{i,1} = n I + (n-2) J` and `2 Σ_i D_{i,2} = n (J - I)`
/// * `2 D_{i,j}² = n D_{i,1}`
/// * `2 D_{i,j} D_{i,j'} = n D_{i,2}` for `j ≠ j'`
/// * `4 D_{i,j} D_{i',j'} = n J` for `i ≠ i'`
/// * `2 D_{i,j} J = 2 J D_{i,j} = n J`
pub fn check_auxiliary_identities(h: &TernaryMatrix) -> Result<Certificate> {
    let aux = hadamard_auxiliaries(h)?;
    let n = h.order();
    let ni = n as i64;
    let mut cert = Certificate::for_matrices([h]);
    let at = |i: usize, j: usize| if j == 0 { &aux[i].0 } else { &aux[i].1 };

    cert.push(first_failure(
        "aux_symmetric",
        (0..aux.len()).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| {
            let d = IntMatrix::from(at(i, j));
            equality_check("", vec![i, j], &d, &d.transpose())
        }),
    ));

    let sum = |j: usize| aux.iter().fold(IntMatrix::zeros(n), |acc, p| {
        acc.add(&IntMatrix::from(if j == 0 { &p.0 } else { &p.1 })).expect("equal orders")
    });
    cert.push(equality_check(
        "aux_sum_pos",
        vec![],
        &sum(0).scale(2),
        &int_fn(n, |r, c| if r == c { ni + ni - 2 } else { ni - 2 }),
    ));
    cert.push(equality_check("aux_sum_neg", vec![], &sum(1).scale(2), &int_fn(n, |r, c| if r == c { 0 } else { ni })));

    let mut square = Vec::new();
    let mut cross = Vec::new();
    let mut rows = Vec::new();
    let j_n = TernaryMatrix::ones(n);
    for i in 0..aux.len() {
        for j in 0..2 {
            let d = at(i, j);
            square.push(equality_check(
                "",
                vec![i, j],
                &product(d, d).scale(2),
                &IntMatrix::from(at(i, 0)).scale(ni),
            ));
            cross.push(equality_check(
                "",
                vec![i, j],
                &product(d, at(i, 1 - j)).scale(2),
                &IntMatrix::from(at(i, 1)).scale(ni),
            ));
            let nj = IntMatrix::from(&j_n).scale(ni);
            rows.push(equality_check("", vec![i, j], &product(d, &j_n).scale(2), &nj));
            rows.push(equality_check("", vec![i, j], &product(&j_n, d).scale(2), &nj));
        }
    }
    cert.push(first_failure("aux_square", square));
    cert.push(first_failure("aux_cross", cross));

    let nj = IntMatrix::from(&j_n).scale(ni);
    let mut distinct = Vec::new();
    for i in 0..aux.len() {
        for i2 in (0..aux.len()).filter(|&x| x != i) {
            for j in 0..2 {
                for j2 in 0..2 {
                    distinct.push(equality_check("", vec![i, j, i2, j2], &product(at(i, j), at(i2, j2)).scale(4), &nj));
                }
            }
        }
    }
    cert.push(first_failure("aux_distinct", distinct));
    cert.push(first_failure("aux_row_sums", rows));
    Ok(cert)
}

fn blocks_from(h: &TernaryMatrix, k: usize, l: usize) -> Result<Vec<[TernaryMatrix; 2]>> {
    if h.order() != k * l + 1 {
        return Err(Error::ParamMismatch(format!(
            "Hadamard order {} differs from kℓ+1 = {}",
            h.order(),
            k * l + 1
        )));
    }
    let aux = hadamard_auxiliaries(h)?;
    (0..k)
        .map(|i| {
            let group = &aux[i * l..(i + 1) * l];
            let pos: Vec<_> = group.iter().map(|p| p.0.clone()).collect();
            let neg: Vec<_> = group.iter().map(|p| p.1.clone()).collect();
            Ok([back_circulant(&pos)?, back_circulant(&neg)?])
        })
        .collect()
}

/// Identities for the back-circulant blocks, scaled by 4 (`n = kℓ+1`):
///
/// * `4 B_{i,j}² = 2n I_ℓ ⊗ Σ_h D_{h,1} + ℓn (J_ℓ - I_ℓ) ⊗ J_n`
/// * `4 B_{i,j} B_{i,j'} = 2n I_ℓ ⊗ Σ_h D_{h,2} + ℓn (J_ℓ - I_ℓ) ⊗ J_n` for `j ≠ j'`
/// * `4 B_{i,j} B_{i',j'} = ℓn J_ℓ ⊗ J_n` for `i ≠ i'`
///
/// with `h` running over the auxiliaries of block `i`.
pub fn check_block_identities(h: &TernaryMatrix, k: usize, l: usize) -> Result<Certificate> {
    let blocks = blocks_from(h, k, l)?;
    let aux = hadamard_auxiliaries(h)?;
    let n = h.order();
    let (ni, li) = (n as i64, l as i64);
    let size = l * n;
    let mut cert = Certificate::for_matrices([h]);
    let group_sum = |i: usize, j: usize| {
        let mut s = vec![0i64; n * n];
        for p in &aux[i * l..(i + 1) * l] {
            let d = if j == 0 { &p.0 } else { &p.1 };
            for (acc, &v) in s.iter_mut().zip(d.as_slice()) {
                *acc += v as i64;
            }
        }
        s
    };
    let same_group_rhs = |i: usize, j: usize| {
        let s = group_sum(i, j);
        int_fn(size, |r, c| {
            let (br, bc) = (r / n, c / n);
            if br == bc {
                2 * ni * s[(r % n) * n + c % n]
            } else {
                li * ni
            }
        })
    };
    let mut squares = Vec::new();
    let mut cross = Vec::new();
    let mut distinct = Vec::new();
    let all = int_fn(size, |_, _| li * ni);
    for i in 0..k {
        for j in 0..2 {
            let b = &blocks[i][j];
            squares.push(equality_check("", vec![i, j], &product(b, b).scale(4), &same_group_rhs(i, 0)));
            cross.push(equality_check("", vec![i, j], &product(b, &blocks[i][1 - j]).scale(4), &same_group_rhs(i, 1)));
            for i2 in (0..k).filter(|&x| x != i) {
                for j2 in 0..2 {
                    distinct.push(equality_check("", vec![i, j, i2, j2], &product(b, &blocks[i2][j2]).scale(4), &all));
                }
            }
        }
    }
    cert.push(first_failure("block_square", squares));
    cert.push(first_failure("block_cross", cross));
    cert.push(first_failure("block_distinct", distinct));
    Ok(cert)
}

/// `W_{i,1}W_{i,2} + W_{i,2}W_{i,1} - W_{i,1}² - W_{i,2}² = w_i I` for every member.
pub fn check_split_identity(dw: &DwCollection) -> Certificate {
    let mut cert = dw.certificate();
    cert.checks.clear();
    for (i, (w, &weight)) in dw.matrices().iter().zip(dw.weights()).enumerate() {
        let (p, q) = split_dw(w);
        let lhs = product(&p, &q)
            .add(&product(&q, &p))
            .and_then(|x| x.sub(&product(&p, &p)))
            .and_then(|x| x.sub(&product(&q, &q)))
            .expect("equal orders");
        let rhs = IntMatrix::scaled_identity(w.order(), weight as i64);
        cert.push(equality_check(format!("split_identity[{i}]"), vec![i], &lhs, &rhs));
    }
    cert
}

#[derive(Clone, Debug)]
pub struct SchemeParams {
    k: usize,
    m: usize,
    l: usize,
    dw: DwCollection,
    hadamard: TernaryMatrix,
}

impl SchemeParams {
    pub fn new(k: usize, m: usize, l: usize, dw: DwCollection, hadamard: TernaryMatrix) -> Result<Self> {
        if k == 0 || m == 0 || l == 0 {
            return Err(Error::ParamMismatch("k, m and ℓ must be positive".into()));
        }
        if !dw.is_fully_certified() {
            return Err(Error::UncertifiedInput(format!("{} is not fully certified", dw.notation())));
        }
        if dw.order() != k * m + 1 || dw.k() != k || dw.uniform_weight() != Some(m) {
            return Err(Error::ParamMismatch(format!(
                "expected DW({};[{m}]^{k}), got {}",
                k * m + 1,
                dw.notation()
            )));
        }
        if hadamard.order() != k * l + 1 {
            return Err(Error::ParamMismatch(format!(
                "Hadamard order {} differs from kℓ+1 = {}",
                hadamard.order(),
                k * l + 1
            )));
        }
        require_normalized_hadamard(&hadamard)?;
        Ok(Self { k, m, l, dw, hadamard })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn dw(&self) -> &DwCollection {
        &self.dw
    }

    pub fn hadamard(&self) -> &TernaryMatrix {
        &self.hadamard
    }

    /// `(km+1) ℓ (kℓ+1)`.
    pub fn vertices(&self) -> usize {
        (self.k * self.m + 1) * self.l * (self.k * self.l + 1)
    }

    /// 4 when `ℓ > 1`, else 3.
    pub fn classes(&self) -> usize {
        if self.l > 1 {
            4
        } else {
            3
        }
    }
}

/// `[B_{i,1}, B_{i,2}]` for `i = 1..k`.
pub fn build_blocks(params: &SchemeParams) -> Result<Vec<[TernaryMatrix; 2]>> {
    blocks_from(&params.hadamard, params.k, params.l)
}

#[derive(Clone, Debug)]
pub struct SchemeRelations {
    params: SchemeParams,
    relations: Vec<TernaryMatrix>,
}

impl SchemeRelations {
    /// Wraps arbitrary relation matrices, e.g. to exercise the certifier.
    pub fn from_parts(params: SchemeParams, relations: Vec<TernaryMatrix>) -> Self {
        Self { params, relations }
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn relations(&self) -> &[TernaryMatrix] {
        &self.relations
    }

    /// Class count `d`.
    pub fn d(&self) -> usize {
        self.relations.len() - 1
    }

    pub fn vertices(&self) -> usize {
        self.relations[0].order()
    }

    /// Row sums of each relation.
    pub fn valencies(&self) -> Vec<usize> {
        self.relations.iter().map(|a| a.row(0).iter().filter(|&&v| v != 0).count()).collect()
    }
}

pub fn build_relations(params: &SchemeParams) -> Result<SchemeRelations> {
    if !params.dw.is_fully_certified() {
        return Err(Error::UncertifiedInput(params.dw.notation()));
    }
    let (k, l) = (params.k, params.l);
    let n = k * l + 1;
    let big = params.dw.order();
    let blocks = build_blocks(params)?;
    let order = params.vertices();
    let mut a1 = TernaryMatrix::zeros(order);
    let mut a2 = TernaryMatrix::zeros(order);
    for (w, [b1, b2]) in params.dw.matrices().iter().zip(&blocks) {
        let (p, q) = split_dw(w);
        a1 = a1.try_add(&p.kronecker(b1))?.try_add(&q.kronecker(b2))?;
        a2 = a2.try_add(&p.kronecker(b2))?.try_add(&q.kronecker(b1))?;
    }
    let eye = |s: usize| TernaryMatrix::identity(s);
    let a0 = eye(order);
    let a3 = eye(big * l).kronecker(&TernaryMatrix::complete(n));
    let mut relations = vec![a0, a1, a2, a3];
    if l > 1 {
        relations.push(eye(big).kronecker(&TernaryMatrix::complete(l)).kronecker(&TernaryMatrix::ones(n)));
    }
    Ok(SchemeRelations { params: params.clone(), relations })
}

/// `p[i][j][k]`: `A_i A_j = Σ_k p_{ij}^k A_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTensor {
    pub d: usize,
    pub p: Vec<Vec<Vec<i64>>>,
}

impl IntersectionTensor {
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.p[i][j][k]
    }

    /// `L_i = (p_{ij}^k)_{j,k}`.
    pub fn matrix(&self, i: usize) -> IntMatrix {
        int_fn(self.d + 1, |j, k| self.p[i][j][k])
    }
}

fn first_one(a: &TernaryMatrix) -> Option<(usize, usize)> {
    let n = a.order();
    a.as_slice().iter().position(|&v| v != 0).map(|p| (p / n, p % n))
}

/// Verifies the scheme axioms and returns the tensor when they hold.
fn analyse(rel: &SchemeRelations) -> (Certificate, Option<IntersectionTensor>) {
    let rs = &rel.relations;
    let n = rel.vertices();
    let d = rs.len() - 1;
    let mut cert = Certificate::for_matrices(rs);

    cert.push(equality_check("axiom1_identity", vec![0], &IntMatrix::from(&rs[0]), &IntMatrix::identity(n)));

    let mut partition = None;
    'cells: for r in 0..n {
        for c in 0..n {
            if let Some(i) = rs.iter().position(|a| !(0..=1).contains(&a.get(r, c))) {
                partition = Some(Witness { matrices: vec![i], row: r, col: c, found: rs[i].get(r, c) as i64, expected: 1 });
                break 'cells;
            }
            let s: i64 = rs.iter().map(|a| a.get(r, c) as i64).sum();
            if s != 1 {
                partition = Some(Witness { matrices: vec![], row: r, col: c, found: s, expected: 1 });
                break 'cells;
            }
        }
    }
    let partitioned = partition.is_none();
    cert.push(Check::from_witness("axiom2_partition", partition));

    let transposes: Vec<TernaryMatrix> = rs.iter().map(TernaryMatrix::transpose).collect();
    let missing = transposes.iter().position(|t| !rs.contains(t));
    cert.push(match missing {
        None => Check::pass("axiom3_transpose"),
        Some(i) => Check::noted("axiom3_transpose", false, format!("transpose of A{i} is not a relation")),
    });

    let products: Vec<Vec<IntMatrix>> = rs.iter().map(|a| rs.iter().map(|b| product(a, b)).collect()).collect();
    let reps: Vec<Option<(usize, usize)>> = rs.iter().map(first_one).collect();
    let mut closure = None;
    let mut p = vec![vec![vec![0i64; d + 1]; d + 1]; d + 1];
    if partitioned && reps.iter().all(Option::is_some) {
        'pairs: for i in 0..=d {
            for j in 0..=d {
                let prod = &products[i][j];
                for k in 0..=d {
                    let (r, c) = reps[k].expect("checked");
                    p[i][j][k] = prod.get_i64(r, c);
                }
                // Each cell lies in exactly one relation, so the expansion is read per cell.
                for r in 0..n {
                    for c in 0..n {
                        let k = rs.iter().position(|a| a.get(r, c) == 1).expect("partition holds");
                        let found = prod.get_i64(r, c);
                        if found != p[i][j][k] {
                            closure = Some(Witness { matrices: vec![i, j], row: r, col: c, found, expected: p[i][j][k] });
                            break 'pairs;
                        }
                    }
                }
            }
        }
    } else {
        closure = Some(Witness { matrices: vec![], row: 0, col: 0, found: 0, expected: 1 });
    }
    let closed = closure.is_none();
    cert.push(Check::from_witness("axiom4_closure", closure));

    let mut commute = None;
    'comm: for i in 0..=d {
        for j in i + 1..=d {
            if let Some((r, c)) = products[i][j].first_difference(&products[j][i]) {
                commute = Some(Witness {
                    matrices: vec![i, j],
                    row: r,
                    col: c,
                    found: products[i][j].get_i64(r, c),
                    expected: products[j][i].get_i64(r, c),
                });
                break 'comm;
            }
        }
    }
    cert.push(Check::from_witness("axiom5_commutative", commute));

    if d >= 2 {
        cert.push(equality_check(
            "a1_transpose_is_a2",
            vec![1, 2],
            &IntMatrix::from(&transposes[1]),
            &IntMatrix::from(&rs[2]),
        ));
    }
    let tensor = (cert.passed() && closed).then(|| IntersectionTensor { d, p });
    (cert, tensor)
}

/// Checks the five scheme axioms by exact computation.
pub fn certify_scheme(rel: &SchemeRelations) -> Certificate {
    analyse(rel).0
}

pub fn intersection_tensor(rel: &SchemeRelations) -> Result<IntersectionTensor> {
    let (cert, tensor) = analyse(rel);
    tensor.ok_or_else(|| Error::UncertifiedInput(format!("relations do not form a scheme\n{}", cert.report())))
}

/// `L_1 = (p_{1j}^k)_{j,k}`.
pub fn intersection_matrix_l1(rel: &SchemeRelations) -> Result<IntMatrix> {
    Ok(intersection_tensor(rel)?.matrix(1))
}

/// The closed-form `L_1` evaluated at `(k, m, ℓ)`; every entry must be integral.
pub fn closed_form_l1(k: usize, m: usize, l: usize) -> Result<IntMatrix> {
    let (k, m, l) = (k as i64, m as i64, l as i64);
    let n = k * l + 1;
    let q = |num: i64, den: i64| -> Result<i64> {
        if num % den != 0 {
            return Err(Error::ParamMismatch(format!("entry {num}/{den} is not integral")));
        }
        Ok(num / den)
    };
    let rows: Vec<Vec<i64>> = if l > 1 {
        let c = q(l * n * (k * m - 1), 4)?;
        let e = q(k * l * m * n, 4)?;
        vec![
            vec![0, 1, 0, 0, 0],
            vec![0, c, c, q(m * n * n, 4)?, e],
            vec![q(k * l * m * n, 2)?, c, c, q(m * (k * k * l * l - 1), 4)?, e],
            vec![0, q(n, 2)? - 1, q(n, 2)?, 0, 0],
            vec![0, q((l - 1) * n, 2)?, q((l - 1) * n, 2)?, 0, 0],
        ]
    } else {
        let c = q((k + 1) * (k * m - 1), 4)?;
        vec![
            vec![0, 1, 0, 0],
            vec![0, c, c, q((k + 1) * (k + 1) * m, 4)?],
            vec![q(k * (k + 1) * m, 2)?, c, c, q((k * k - 1) * m, 4)?],
            vec![0, q(k - 1, 2)?, q(k + 1, 2)?, 0],
        ]
    };
    Ok(int_fn(rows.len(), |r, c| rows[r][c]))
}

/// The closed forms for `A_1²` and `A_1 A_2` (and their mirror images), scaled by 4.
pub fn check_product_formulas(rel: &SchemeRelations) -> Certificate {
    let p = &rel.params;
    let (k, m, l) = (p.k as i64, p.m as i64, p.l as i64);
    let n = k * l + 1;
    let (inner, mid) = (p.k * p.l + 1, p.l);
    let coords = |x: usize| (x / (inner * mid), (x / inner) % mid, x % inner);
    let formula = |sign: i64| {
        int_fn(rel.vertices(), move |r, c| {
            let ((u, b, v), (u2, b2, v2)) = (coords(r), coords(c));
            let same_u = (u == u2) as i64;
            let same_b = same_u * (b == b2) as i64;
            let same_v = same_b * (v == v2) as i64;
            sign * (-m * n * n * same_v + m * n * same_b) + l * n * same_u + l * n * (k * m - 1)
        })
    };
    let rs = &rel.relations;
    let mut cert = Certificate::for_matrices(rs);
    let square = formula(1);
    let mixed = formula(-1);
    cert.push(equality_check("a1_squared", vec![1, 1], &product(&rs[1], &rs[1]).scale(4), &square));
    cert.push(equality_check("a2_squared", vec![2, 2], &product(&rs[2], &rs[2]).scale(4), &square));
    cert.push(equality_check("a1_a2", vec![1, 2], &product(&rs[1], &rs[2]).scale(4), &mixed));
    cert.push(equality_check("a2_a1", vec![2, 1], &product(&rs[2], &rs[1]).scale(4), &mixed));
    cert
}

/// The `ℓ(kℓ+1)` vertices with `u = 0` form a coclique of the `A_1` graph
/// whose size meets the ratio bound `|X|(-θ_min)/(k_1 - θ_min)`, where
/// `θ_min` is the least real part of an eigenvalue of `A_1`.
pub fn coclique_bound_check(rel: &SchemeRelations) -> Result<Certificate> {
    let p = &rel.params;
    let size = p.l * (p.k * p.l + 1);
    let a1 = &rel.relations[1];
    let mut cert = Certificate::for_matrices([a1]);
    let mut edge = None;
    'scan: for r in 0..size {
        for c in 0..size {
            if a1.get(r, c) != 0 {
                edge = Some(Witness { matrices: vec![1], row: r, col: c, found: 1, expected: 0 });
                break 'scan;
            }
        }
    }
    cert.push(Check::from_witness("coclique", edge));

    let l1 = intersection_matrix_l1(rel)?;
    let eigen = crate::spectra::eigenvalues(&l1, p.m as u64)?;
    let theta_min = eigen.iter().map(|e| e.a.clone()).min().expect("nonempty spectrum");
    let k1 = BigRational::from_integer(BigInt::from(rel.valencies()[1]));
    let vertices = BigRational::from_integer(BigInt::from(rel.vertices()));
    let bound = vertices * (-theta_min.clone()) / (k1 - theta_min);
    let target = BigRational::from_integer(BigInt::from(size));
    cert.push(Check::noted(
        "ratio_bound",
        bound == target && !bound.is_negative(),
        format!("bound={bound} size={size}"),
    ));
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{base_pair, embedded_dw, Embedded};

    fn base_dw() -> DwCollection {
        DwCollection::certify(vec![base_pair().1], vec![1]).unwrap()
    }

    fn params(k: usize, m: usize, l: usize) -> SchemeParams {
        let dw = match (k, m) {
            (1, 1) => base_dw(),
            (3, 9) => embedded_dw(Embedded::Dw28),
            _ => unreachable!(),
        };
        SchemeParams::new(k, m, l, dw, sylvester_hadamard(k * l + 1).unwrap()).unwrap()
    }

    #[test]
    fn split_of_base_k() {
        let (p, q) = split_dw(&base_pair().1);
        assert_eq!(p, TernaryMatrix::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap());
        assert_eq!(q, TernaryMatrix::from_rows(&[vec![0, 0], vec![1, 0]]).unwrap());
        let (z1, z2) = split_dw(&TernaryMatrix::zeros(3));
        assert_eq!((z1.nonzero_count(), z2.nonzero_count()), (0, 0));
    }

    #[test]
    fn order_two_auxiliaries() {
        let aux = hadamard_auxiliaries(&sylvester_hadamard(2).unwrap()).unwrap();
        assert_eq!(aux.len(), 1);
        assert_eq!(aux[0].0, TernaryMatrix::identity(2));
        assert_eq!(aux[0].1, TernaryMatrix::complete(2));
    }

    #[test]
    fn unnormalized_is_rejected() {
        let h = sylvester_hadamard(4).unwrap().negate();
        assert!(matches!(hadamard_auxiliaries(&h), Err(Error::NotNormalized(_))));
        assert!(is_normalized(&normalize_hadamard(&h)));
    }

    #[test]
    fn sylvester_orders() {
        assert!(sylvester_hadamard(12).is_err());
        assert!(is_hadamard(&sylvester_hadamard(16).unwrap()).passed());
    }

    #[test]
    fn tiny_scheme() {
        let rel = build_relations(&params(1, 1, 1)).unwrap();
        assert_eq!((rel.d(), rel.vertices()), (3, 4));
        assert!(certify_scheme(&rel).passed());
        assert_eq!(intersection_matrix_l1(&rel).unwrap(), closed_form_l1(1, 1, 1).unwrap());
    }

    #[test]
    fn a1_plus_a0_breaks_partition() {
        let rel = build_relations(&params(1, 1, 1)).unwrap();
        let mut rs = rel.relations().to_vec();
        rs[1] = rs[1].try_add(&rs[0]).unwrap();
        let bad = SchemeRelations::from_parts(rel.params().clone(), rs);
        let cert = certify_scheme(&bad);
        assert!(!cert.check("axiom2_partition").unwrap().passed);
        assert!(intersection_tensor(&bad).is_err());
    }

    #[test]
    fn closed_form_l1_entries() {
        assert_eq!(closed_form_l1(3, 9, 1).unwrap().get_i64(1, 2), 26);
        assert_eq!(closed_form_l1(1, 1, 3).unwrap().get_i64(2, 0), 6);
        assert!(closed_form_l1(2, 1, 1).is_err());
    }

    #[test]
    fn params_are_validated() {
        let h4 = sylvester_hadamard(4).unwrap();
        assert!(matches!(SchemeParams::new(1, 1, 1, base_dw(), h4), Err(Error::ParamMismatch(_))));
        let h2 = sylvester_hadamard(2).unwrap();
        assert!(matches!(SchemeParams::new(1, 2, 1, base_dw(), h2), Err(Error::ParamMismatch(_))));
    }
}
