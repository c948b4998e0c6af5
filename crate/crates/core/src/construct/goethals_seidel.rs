use crate::error::{Error, Result};
use crate::matcore::{circulant, TernaryMatrix};
use crate::search::autocorrelation_profile;

/// First rows of the four circulants `A, B, C, D` feeding one Goethals-Seidel array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GsQuadSeed {
    n: usize,
    rows: [Vec<i8>; 4],
}

impl GsQuadSeed {
    pub fn new(a: Vec<i8>, b: Vec<i8>, c: Vec<i8>, d: Vec<i8>) -> Result<Self> {
        let n = a.len();
        if n == 0 || n % 2 == 0 {
            return Err(Error::ParamMismatch(format!("block order must be odd, got {n}")));
        }
        for (name, row) in ["b", "c", "d"].iter().zip([&b, &c, &d]) {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "row {name} has length {}, expected {n}",
                    row.len()
                )));
            }
        }
        for (idx, row) in [&a, &b, &c, &d].into_iter().enumerate() {
            if let Some(col) = row.iter().position(|v| !(-1..=1).contains(v)) {
                return Err(Error::InvalidEntry { row: idx, col, value: row[col] as i64 });
            }
        }
        Ok(Self { n, rows: [a, b, c, d] })
    }

    pub fn from_i64(rows: [&[i64]; 4]) -> Result<Self> {
        let conv = |r: &[i64]| -> Result<Vec<i8>> {
            r.iter()
                .enumerate()
                .map(|(col, &v)| {
                    if (-1..=1).contains(&v) {
                        Ok(v as i8)
                    } else {
                        Err(Error::InvalidEntry { row: 0, col, value: v })
                    }
                })
                .collect()
        };
        Self::new(conv(rows[0])?, conv(rows[1])?, conv(rows[2])?, conv(rows[3])?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i8>; 4] {
        &self.rows
    }

    pub fn a(&self) -> &[i8] {
        &self.rows[0]
    }

    /// Total number of nonzero entries across the four rows.
    pub fn weight(&self) -> usize {
        self.rows.iter().flatten().filter(|&&v| v != 0).count()
    }

    /// `a[0] = 0` and `a[j] = -a[n - j]`.
    pub fn a_is_skew(&self) -> bool {
        let a = self.a();
        a[0] == 0 && (1..self.n).all(|j| a[j] == -a[self.n - j])
    }

    /// Sum of the periodic autocorrelations of the four rows.
    pub fn gram_profile(&self) -> Vec<i64> {
        let mut total = vec![0i64; self.n];
        for row in &self.rows {
            for (t, v) in total.iter_mut().zip(autocorrelation_profile(row)) {
                *t += v;
            }
        }
        total
    }
}

/// `M R`: reverses the column order.
fn times_back_identity(m: &TernaryMatrix) -> TernaryMatrix {
    let n = m.order();
    TernaryMatrix::from_fn(n, |r, c| m.get(r, n - 1 - c))
}

/// Assembles the `4n x 4n` Goethals-Seidel array
///
/// ```text
///  A     BR    CR    DR
/// -BR    A     D'R  -C'R
/// -CR   -D'R   A     B'R
/// -DR    C'R  -B'R   A
/// ```
///
/// after checking that `A` is skew and `AA' + BB' + CC' + DD' = wI`.
pub fn gs_assemble(seed: &GsQuadSeed) -> Result<TernaryMatrix> {
    if !seed.a_is_skew() {
        return Err(Error::SeedNotSkew(format!("{:?}", seed.a())));
    }
    let w = seed.weight() as i64;
    let profile = seed.gram_profile();
    if let Some(s) = (0..seed.n).find(|&s| profile[s] != if s == 0 { w } else { 0 }) {
        return Err(Error::NotAWeighingSeed(format!(
            "autocorrelation sum at shift {s} is {}, weight is {w}",
            profile[s]
        )));
    }
    Ok(assemble_unchecked(seed))
}

pub(crate) fn assemble_unchecked(seed: &GsQuadSeed) -> TernaryMatrix {
    let n = seed.n;
    let circ = |row: &Vec<i8>| {
        circulant(&row.iter().map(|&v| v as i64).collect::<Vec<_>>()).expect("validated seed row")
    };
    let [a, b, c, d] = [&seed.rows[0], &seed.rows[1], &seed.rows[2], &seed.rows[3]].map(circ);
    let br = times_back_identity(&b);
    let cr = times_back_identity(&c);
    let dr = times_back_identity(&d);
    let btr = times_back_identity(&b.transpose());
    let ctr = times_back_identity(&c.transpose());
    let dtr = times_back_identity(&d.transpose());
    // (block, sign) in row-major block order.
    let layout: [[(&TernaryMatrix, i8); 4]; 4] = [
        [(&a, 1), (&br, 1), (&cr, 1), (&dr, 1)],
        [(&br, -1), (&a, 1), (&dtr, 1), (&ctr, -1)],
        [(&cr, -1), (&dtr, -1), (&a, 1), (&btr, 1)],
        [(&dr, -1), (&ctr, 1), (&btr, -1), (&a, 1)],
    ];
    TernaryMatrix::from_fn(4 * n, |r, col| {
        let (block, sign) = layout[r / n][col / n];
        sign * block.get(r % n, col % n)
    })
}
