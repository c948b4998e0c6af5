use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `a + b·√(-radicand)` with rational `a`, `b`.
///
/// Binary operations require equal radicands and panic otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticScalar {
    pub a: BigRational,
    pub b: BigRational,
    pub radicand: u64,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl QuadraticScalar {
    pub fn new(a: BigRational, b: BigRational, radicand: u64) -> Self {
        assert!(radicand > 0, "radicand must be positive");
        Self { a, b, radicand }
    }

    pub fn rational(a: BigRational, radicand: u64) -> Self {
        Self::new(a, BigRational::zero(), radicand)
    }

    pub fn from_int(a: i64, radicand: u64) -> Self {
        Self::rational(int(a), radicand)
    }

    /// `(a_num / a_den) + (b_num / b_den)·√(-radicand)`.
    pub fn from_ratios(a: (i64, i64), b: (i64, i64), radicand: u64) -> Self {
        let r = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
        Self::new(r(a), r(b), radicand)
    }

    pub fn zero(radicand: u64) -> Self {
        Self::from_int(0, radicand)
    }

    pub fn one(radicand: u64) -> Self {
        Self::from_int(1, radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.radicand)
    }

    /// `a² + m b²`, zero only at zero.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + int(self.radicand as i64) * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::new(&self.a / &n, -&self.b / &n, self.radicand))
    }

    /// Integer value when `b = 0` and `a` is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_real() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    /// Least common denominator of `a` and `b`.
    pub fn denominator(&self) -> BigInt {
        num_integer::Integer::lcm(self.a.denom(), self.b.denom())
    }

    fn same(&self, o: &Self) {
        assert_eq!(self.radicand, o.radicand, "radicands differ");
    }
}

impl Add for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn add(self, o: &QuadraticScalar) -> QuadraticScalar {
        self.same(o);
        QuadraticScalar::new(&self.a + &o.a, &self.b + &o.b, self.radicand)
    }
}

impl Sub for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn sub(self, o: &QuadraticScalar) -> QuadraticScalar {
        self.same(o);
        QuadraticScalar::new(&self.a - &o.a, &self.b - &o.b, self.radicand)
    }
}

impl Mul for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn mul(self, o: &QuadraticScalar) -> QuadraticScalar {
        self.same(o);
        let m = int(self.radicand as i64);
        QuadraticScalar::new(
            &self.a * &o.a - m * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
            self.radicand,
        )
    }
}

impl Div for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn div(self, o: &QuadraticScalar) -> QuadraticScalar {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn neg(self) -> QuadraticScalar {
        QuadraticScalar::new(-self.a.clone(), -self.b.clone(), self.radicand)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for QuadraticScalar {
            type Output = QuadraticScalar;
            fn $f(self, o: QuadraticScalar) -> QuadraticScalar {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QuadraticScalar {
    type Output = QuadraticScalar;
    fn neg(self) -> QuadraticScalar {
        -&self
    }
}

/// `a`, `b*sqrt(-m)`, `a+b*sqrt(-m)` or `a-b*sqrt(-m)`, rationals in lowest terms.
impl fmt::Display for QuadraticScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt(-{})", self.radicand);
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*{root}", self.b),
            (false, false) if self.b.is_negative() => write!(f, "{}-{}*{root}", self.a, -self.b.clone()),
            (false, false) => write!(f, "{}+{}*{root}", self.a, self.b),
        }
    }
}

impl QuadraticScalar {
    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
}
