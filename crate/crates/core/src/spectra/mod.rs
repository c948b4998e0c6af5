//! Exact eigenmatrices of the constructed schemes over `Q(√-m)`.
//!
//! Eigenvalues of `L_1` are found from its characteristic polynomial: integer
//! roots first, then the remaining even factor must split over `y = x²` into
//! negative integers `y` with `-y/m` a rational square. The rows of `P` are
//! the right eigenvectors of `L_1` scaled to start with 1, and `Q = |X| P⁻¹`.
//!
//! Canonical row order: the trivial row, then complex rows with a positive
//! `√-m` part in column 2 ahead of their conjugates, then real rows by
//! descending column-1 entry.

mod poly;
mod quadratic;

pub use poly::{characteristic_polynomial, strip_integer_roots};
pub use quadratic::QuadraticScalar;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{IntMatrix, TernaryMatrix};
use crate::scheme::SchemeRelations;
use crate::verify::{Certificate, Check};

type Qs = QuadraticScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowOrder {
    /// Trivial, complex (positive column-2 part first), real by descending column 1.
    Canonical,
    /// Rows in the order [`closed_form_p`] lists them.
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenmatrices {
    pub p: Vec<Vec<QuadraticScalar>>,
    pub q: Vec<Vec<QuadraticScalar>>,
    pub radicand: u64,
    pub vertices: usize,
    pub row_order: RowOrder,
}

#[derive(Serialize)]
struct Rendered {
    radicand: u64,
    vertices: usize,
    row_order: RowOrder,
    p: Vec<Vec<String>>,
    q: Vec<Vec<String>>,
}

fn render(m: &[Vec<Qs>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

impl Eigenmatrices {
    pub fn size(&self) -> usize {
        self.p.len()
    }

    /// Plain text: a `P` block then a `Q` block, entries tab-separated.
    pub fn to_text(&self) -> String {
        let mut out = format!("# radicand={} vertices={} order={:?}\n", self.radicand, self.vertices, self.row_order);
        for (name, m) in [("P", &self.p), ("Q", &self.q)] {
            out.push_str(&format!("{name}\n"));
            for row in render(m) {
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(Rendered {
            radicand: self.radicand,
            vertices: self.vertices,
            row_order: self.row_order,
            p: render(&self.p),
            q: render(&self.q),
        })
        .expect("plain data serializes")
    }

    /// Row 0 of `Q`, as positive integers.
    pub fn multiplicities(&self) -> Option<Vec<u64>> {
        self.q[0].iter().map(|x| x.to_integer().and_then(|v| v.to_u64()).filter(|&v| v > 0)).collect()
    }
}

fn mat_mul(a: &[Vec<Qs>], b: &[Vec<Qs>], m: u64) -> Vec<Vec<Qs>> {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).fold(Qs::zero(m), |acc, t| &acc + &(&a[r][t] * &b[t][c])))
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` when singular.
fn mat_inv(a: &[Vec<Qs>], m: u64) -> Option<Vec<Vec<Qs>>> {
    let n = a.len();
    let mut left = a.to_vec();
    let mut right: Vec<Vec<Qs>> =
        (0..n).map(|r| (0..n).map(|c| Qs::from_int((r == c) as i64, m)).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !left[r][col].is_zero())?;
        left.swap(col, pivot);
        right.swap(col, pivot);
        let inv = left[col][col].inv()?;
        for c in 0..n {
            left[col][c] = &left[col][c] * &inv;
            right[col][c] = &right[col][c] * &inv;
        }
        for r in (0..n).filter(|&r| r != col) {
            let f = left[r][col].clone();
            if f.is_zero() {
                continue;
            }
            for c in 0..n {
                left[r][c] = &left[r][c] - &(&f * &left[col][c]);
                right[r][c] = &right[r][c] - &(&f * &right[col][c]);
            }
        }
    }
    Some(right)
}

fn unexpected(m: u64, detail: impl Into<String>) -> Error {
    Error::UnexpectedSpectrum { radicand: m, detail: detail.into() }
}

/// Perfect-square root of a non-negative rational, if it exists.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Eigenvalues of an integer matrix, all of which must be of the form
/// `r` or `r·√-m` with rational `r`.
pub fn eigenvalues(l1: &IntMatrix, m: u64) -> Result<Vec<QuadraticScalar>> {
    let chi = characteristic_polynomial(l1);
    let (int_roots, rest) = strip_integer_roots(&chi);
    let mut out: Vec<Qs> = int_roots.into_iter().map(|r| Qs::rational(BigRational::from_integer(r), m)).collect();
    if rest.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return Err(unexpected(m, "remaining factor is not even; some eigenvalue is irrational and real"));
    }
    let even: Vec<BigInt> = rest.iter().step_by(2).cloned().collect();
    let (ys, tail) = strip_integer_roots(&even);
    if tail.len() > 1 {
        return Err(unexpected(m, format!("factor of degree {} in x^2 has no integer roots", 2 * (tail.len() - 1))));
    }
    let mq = BigRational::from_integer(BigInt::from(m));
    for y in ys {
        let ratio = -BigRational::from_integer(y.clone()) / &mq;
        let r = rational_sqrt(&ratio)
            .filter(|r| !r.is_zero())
            .ok_or_else(|| unexpected(m, format!("x^2 = {y} is not r^2 times -{m} with r rational")))?;
        out.push(Qs::new(BigRational::zero(), r.clone(), m));
        out.push(Qs::new(BigRational::zero(), -r, m));
    }
    Ok(out)
}

/// Right null vector of `l1 - θ I`, scaled so its first entry is 1.
fn eigenvector(l1: &IntMatrix, theta: &Qs, m: u64) -> Result<Vec<Qs>> {
    let n = l1.order();
    let mut a: Vec<Vec<Qs>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let v = Qs::rational(BigRational::from_integer(l1.get(r, c).clone()), m);
                    if r == c {
                        &v - theta
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].inv().expect("nonzero pivot");
        for c in 0..n {
            a[row][c] = &a[row][c] * &inv;
        }
        for r in (0..n).filter(|&r| r != row) {
            let f = a[r][col].clone();
            if !f.is_zero() {
                for c in 0..n {
                    a[r][c] = &a[r][c] - &(&f * &a[row][c]);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() + 1 != n {
        return Err(unexpected(m, format!("eigenvalue {theta} has eigenspace of dimension {}", n - pivots.len())));
    }
    let free = (0..n).find(|c| !pivots.contains(c)).expect("one free column");
    let mut u = vec![Qs::zero(m); n];
    u[free] = Qs::one(m);
    for (r, &pc) in pivots.iter().enumerate() {
        u[pc] = -&a[r][free];
    }
    let head = u[0].inv().ok_or_else(|| unexpected(m, format!("eigenvector for {theta} vanishes at 0")))?;
    Ok(u.iter().map(|x| x * &head).collect())
}

fn canonical_key(row: &[Qs], valency: &Qs) -> (u8, BigRational) {
    if row[1] == *valency {
        (0, BigRational::zero())
    } else if !row[1].is_real() {
        (1, -row[2].b.clone())
    } else {
        (2, -row[1].a.clone())
    }
}

/// `P` and `Q` from `L_1`, rows in canonical order.
pub fn eigenmatrices_from_l1(l1: &IntMatrix, rel: &SchemeRelations) -> Result<Eigenmatrices> {
    let m = rel.params().m() as u64;
    let d1 = l1.order();
    if d1 != rel.d() + 1 {
        return Err(Error::ShapeMismatch(format!("L1 has order {d1}, scheme has {} relations", rel.d() + 1)));
    }
    let thetas = eigenvalues(l1, m)?;
    for (i, t) in thetas.iter().enumerate() {
        if thetas[..i].contains(t) {
            return Err(unexpected(m, format!("repeated eigenvalue {t}; A1 does not generate the algebra")));
        }
    }
    let mut p = thetas.iter().map(|t| eigenvector(l1, t, m)).collect::<Result<Vec<_>>>()?;
    let valency = Qs::from_int(rel.valencies()[1] as i64, m);
    p.sort_by(|x, y| canonical_key(x, &valency).cmp(&canonical_key(y, &valency)));
    let q = dual(&p, rel.vertices(), m)?;
    Ok(Eigenmatrices { p, q, radicand: m, vertices: rel.vertices(), row_order: RowOrder::Canonical })
}

fn dual(p: &[Vec<Qs>], vertices: usize, m: u64) -> Result<Vec<Vec<Qs>>> {
    let inv = mat_inv(p, m).ok_or_else(|| unexpected(m, "first eigenmatrix is singular"))?;
    let n = Qs::from_int(vertices as i64, m);
    Ok(inv.iter().map(|r| r.iter().map(|x| x * &n).collect()).collect())
}

/// Closed-form `P` and `Q` at `(k, m, ℓ)`.
///
/// `Q` columns follow `P` rows, so `PQ = |X| I`.
pub fn closed_form_p(k: u64, m: u64, l: u64) -> Eigenmatrices {
    let (ki, mi, li) = (k as i64, m as i64, l as i64);
    let n = ki * li + 1;
    let km1 = ki * mi + 1;
    let r = |num: i64, den: i64| Qs::from_ratios((num, den), (0, 1), m);
    let s = |num: i64, den: i64| Qs::from_ratios((0, 1), (num, den), m);
    let one = r(1, 1);
    let (p, q) = if l > 1 {
        let val = r(ki * li * mi * n, 2);
        let p = vec![
            vec![one.clone(), val.clone(), val, r(ki * li, 1), r((li - 1) * n, 1)],
            vec![one.clone(), r(0, 1), r(0, 1), r(ki * li, 1), r(-n, 1)],
            vec![one.clone(), r(-li * n, 2), r(-li * n, 2), r(ki * li, 1), r((li - 1) * n, 1)],
            vec![one.clone(), s(-n, 2), s(n, 2), r(-1, 1), r(0, 1)],
            vec![one.clone(), s(n, 2), s(-n, 2), r(-1, 1), r(0, 1)],
        ];
        let mult = r(ki * li * li * km1, 2);
        let c = li * km1;
        let q = vec![
            vec![one.clone(), r((li - 1) * km1, 1), r(ki * mi, 1), mult.clone(), mult],
            vec![one.clone(), r(0, 1), r(-1, 1), s(c, 2 * mi), s(-c, 2 * mi)],
            vec![one.clone(), r(0, 1), r(-1, 1), s(-c, 2 * mi), s(c, 2 * mi)],
            vec![one.clone(), r((li - 1) * km1, 1), r(ki * mi, 1), r(-c, 2), r(-c, 2)],
            vec![one.clone(), r(-km1, 1), r(ki * mi, 1), r(0, 1), r(0, 1)],
        ];
        (p, q)
    } else {
        let val = r(ki * (ki + 1) * mi, 2);
        let p = vec![
            vec![one.clone(), val.clone(), val, r(ki, 1)],
            vec![one.clone(), s(-(ki + 1), 2), s(ki + 1, 2), r(-1, 1)],
            vec![one.clone(), s(ki + 1, 2), s(-(ki + 1), 2), r(-1, 1)],
            vec![one.clone(), r(-(ki + 1), 2), r(-(ki + 1), 2), r(ki, 1)],
        ];
        let mult = r(ki * km1, 2);
        let q = vec![
            vec![one.clone(), mult.clone(), mult, r(ki * mi, 1)],
            vec![one.clone(), s(km1, 2 * mi), s(-km1, 2 * mi), r(-1, 1)],
            vec![one.clone(), s(-km1, 2 * mi), s(km1, 2 * mi), r(-1, 1)],
            vec![one.clone(), r(-km1, 2), r(-km1, 2), r(ki * mi, 1)],
        ];
        (p, q)
    };
    let vertices = ((k * m + 1) * l * (k * l + 1)) as usize;
    Eigenmatrices { p, q, radicand: m, vertices, row_order: RowOrder::ClosedForm }
}

/// Matches rows of `computed.P` to rows of `closed.P` and checks that `Q`
/// columns follow the same permutation. The permutation is reported.
pub fn compare(computed: &Eigenmatrices, closed: &Eigenmatrices) -> Result<Certificate> {
    let n = computed.size();
    if closed.size() != n {
        return Err(Error::ShapeMismatch(format!("eigenmatrices of size {n} vs {}", closed.size())));
    }
    let mut cert = Certificate::new(format!("eigenmatrices radicand={} vertices={}", computed.radicand, computed.vertices));
    cert.push(Check::noted(
        "radicand",
        computed.radicand == closed.radicand,
        format!("{} vs {}", computed.radicand, closed.radicand),
    ));
    cert.push(Check::noted(
        "vertices",
        computed.vertices == closed.vertices,
        format!("{} vs {}", computed.vertices, closed.vertices),
    ));
    let perm: Vec<Option<usize>> = computed.p.iter().map(|row| closed.p.iter().position(|c| c == row)).collect();
    let mut used = vec![false; n];
    let bijective = perm.iter().all(|j| j.is_some_and(|j| !std::mem::replace(&mut used[j], true)));
    if !bijective {
        let i = perm.iter().position(Option::is_none).unwrap_or(0);
        let col = (0..n).find(|&c| computed.p[i][c] != closed.p[i][c]).unwrap_or(0);
        cert.push(Check::noted(
            "p_rows",
            false,
            format!(
                "computed row {i} matches no closed-form row; at column {col} found {}, closed form row {i} has {}",
                computed.p[i][col], closed.p[i][col]
            ),
        ));
        return Ok(cert);
    }
    let perm: Vec<usize> = perm.into_iter().map(Option::unwrap).collect();
    let shown: Vec<String> = perm.iter().map(ToString::to_string).collect();
    cert.push(Check::noted("p_rows", true, format!("perm=[{}]", shown.join(","))));
    let bad = (0..n).flat_map(|r| (0..n).map(move |i| (r, i))).find(|&(r, i)| computed.q[r][i] != closed.q[r][perm[i]]);
    cert.push(match bad {
        None => Check::pass("q_columns"),
        Some((r, i)) => Check::noted(
            "q_columns",
            false,
            format!("Q({r},{i}) = {} but closed form Q({r},{}) = {}", computed.q[r][i], perm[i], closed.q[r][perm[i]]),
        ),
    });
    Ok(cert)
}

/// `Π_i (A_j - P_{ij} I) = 0` over `Z[√-m]`, each factor scaled to integers.
fn annihilates(a: &TernaryMatrix, eigen: &[&Qs], m: u64) -> Result<bool> {
    let n = a.order();
    let ov = || Error::Overflow("eigenspace annihilation product");
    let big = |v: &BigInt| v.to_i128().ok_or_else(ov);
    let mi = m as i128;
    // re + im·√-m, starting from the identity.
    let mut re = vec![0i128; n * n];
    let mut im = vec![0i128; n * n];
    for i in 0..n {
        re[i * n + i] = 1;
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|r| (0..n).filter(|&c| a.get(r, c) != 0).collect()).collect();
    for theta in eigen {
        let den = theta.denominator();
        let scale = big(&den)?;
        let ca = big(&(&theta.a * BigRational::from_integer(den.clone())).to_integer())?;
        let cb = big(&(&theta.b * BigRational::from_integer(den)).to_integer())?;
        // (re + im s)(scale·A - ca - cb s)
        let mut nre = vec![0i128; n * n];
        let mut nim = vec![0i128; n * n];
        for r in 0..n {
            for c in 0..n {
                let (x, y) = (re[r * n + c], im[r * n + c]);
                if x == 0 && y == 0 {
                    continue;
                }
                for &t in &adj[c] {
                    let o = r * n + t;
                    nre[o] = x.checked_mul(scale).and_then(|v| v.checked_add(nre[o])).ok_or_else(ov)?;
                    nim[o] = y.checked_mul(scale).and_then(|v| v.checked_add(nim[o])).ok_or_else(ov)?;
                }
            }
        }
        for o in 0..n * n {
            let (x, y) = (re[o], im[o]);
            let dre = x.checked_mul(ca).and_then(|u| mi.checked_mul(cb)?.checked_mul(y).and_then(|v| u.checked_sub(v)));
            let dim = y.checked_mul(ca).and_then(|u| cb.checked_mul(x).and_then(|v| u.checked_add(v)));
            nre[o] = dre.and_then(|v| nre[o].checked_sub(v)).ok_or_else(ov)?;
            nim[o] = dim.and_then(|v| nim[o].checked_sub(v)).ok_or_else(ov)?;
        }
        re = nre;
        im = nim;
    }
    Ok(re.iter().chain(&im).all(|&v| v == 0))
}

/// Duality, valencies, multiplicities and the per-relation annihilation
/// identities for eigenmatrices of `rel`.
pub fn certify_eigenmatrices(e: &Eigenmatrices, rel: &SchemeRelations) -> Result<Certificate> {
    let m = e.radicand;
    let n = e.size();
    let mut cert = Certificate::for_matrices(rel.relations());
    let pq = mat_mul(&e.p, &e.q, m);
    let bad = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .find(|&(r, c)| pq[r][c] != Qs::from_int(if r == c { e.vertices as i64 } else { 0 }, m));
    cert.push(match bad {
        None => Check::pass("pq_duality"),
        Some((r, c)) => Check::noted("pq_duality", false, format!("(PQ)({r},{c}) = {}", pq[r][c])),
    });
    let val: Vec<Qs> = rel.valencies().iter().map(|&v| Qs::from_int(v as i64, m)).collect();
    let trivial = e.p.iter().position(|row| row[1] == val[1]);
    cert.push(Check::noted(
        "p_valency_row",
        trivial.is_some_and(|t| e.p[t] == val),
        format!("valencies={:?}", rel.valencies()),
    ));
    cert.push(Check::noted(
        "p_first_column_ones",
        e.p.iter().all(|row| row[0].is_one()),
        "column 0 of P",
    ));
    let mult = e.multiplicities();
    let total: u64 = mult.iter().flatten().sum();
    cert.push(Check::noted(
        "multiplicities",
        mult.is_some() && total == e.vertices as u64,
        format!("{:?} sum={total}", mult.unwrap_or_default()),
    ));
    for (j, a) in rel.relations().iter().enumerate() {
        let column: Vec<&Qs> = e.p.iter().map(|row| &row[j]).collect();
        cert.push(Check::noted(format!("annihilate[{j}]"), annihilates(a, &column, m)?, "product over eigenspaces"));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{base_pair, embedded_dw, DwCollection, Embedded};
    use crate::scheme::{build_relations, intersection_matrix_l1, sylvester_hadamard, SchemeParams};

    fn relations(k: usize, m: usize, l: usize) -> SchemeRelations {
        let dw = match (k, m) {
            (1, 1) => DwCollection::certify(vec![base_pair().1], vec![1]).unwrap(),
            _ => embedded_dw(Embedded::Dw28),
        };
        let params = SchemeParams::new(k, m, l, dw, sylvester_hadamard(k * l + 1).unwrap()).unwrap();
        build_relations(&params).unwrap()
    }

    #[test]
    fn computed_matches_closed_form() {
        for (k, m, l) in [(1, 1, 1), (1, 1, 3), (3, 9, 1)] {
            let rel = relations(k, m, l);
            let l1 = intersection_matrix_l1(&rel).unwrap();
            let e = eigenmatrices_from_l1(&l1, &rel).unwrap();
            let cert = certify_eigenmatrices(&e, &rel).unwrap();
            assert!(cert.passed(), "({k},{m},{l})\n{}", cert.report());
            let cmp = compare(&e, &closed_form_p(k as u64, m as u64, l as u64)).unwrap();
            assert!(cmp.passed(), "({k},{m},{l})\n{}", cmp.report());
        }
    }

    #[test]
    fn perturbed_closed_form_fails() {
        let rel = relations(1, 1, 3);
        let e = eigenmatrices_from_l1(&intersection_matrix_l1(&rel).unwrap(), &rel).unwrap();
        let mut closed = closed_form_p(1, 1, 3);
        closed.q[4][1] = Qs::from_int(7, 1);
        assert!(!compare(&e, &closed).unwrap().passed());
        let other_m = compare(&e, &closed_form_p(1, 3, 3)).unwrap();
        let rows = other_m.check("p_rows").unwrap();
        assert!(!rows.passed && rows.note.as_deref().unwrap().contains("column"));
        assert!(matches!(compare(&e, &closed_form_p(1, 1, 1)), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn closed_forms_are_dual() {
        for (k, m, l) in [(1, 1, 1), (3, 9, 1), (1, 1, 3), (3, 17, 1), (3, 9, 5), (1, 5, 3)] {
            let e = closed_form_p(k, m, l);
            let pq = mat_mul(&e.p, &e.q, m);
            for r in 0..e.size() {
                for c in 0..e.size() {
                    let want = Qs::from_int(if r == c { e.vertices as i64 } else { 0 }, m);
                    assert_eq!(pq[r][c], want, "({k},{m},{l}) at ({r},{c})");
                }
            }
        }
    }

    #[test]
    fn eigenvalues_of_rotation_block() {
        // [[0, -4], [1, 0]] has eigenvalues ±2i = ±2·√-1.
        let a = IntMatrix::from_fn(2, |r, c| BigInt::from([[0, -4], [1, 0]][r][c]));
        let mut ev: Vec<String> = eigenvalues(&a, 1).unwrap().iter().map(ToString::to_string).collect();
        ev.sort();
        assert_eq!(ev, ["-2*sqrt(-1)", "2*sqrt(-1)"]);
        assert!(matches!(eigenvalues(&a, 2), Err(Error::UnexpectedSpectrum { .. })));
    }

    #[test]
    fn irrational_real_spectrum_is_rejected() {
        let a = IntMatrix::from_fn(2, |r, c| BigInt::from([[0, 2], [1, 0]][r][c]));
        assert!(matches!(eigenvalues(&a, 1), Err(Error::UnexpectedSpectrum { .. })));
    }
}
