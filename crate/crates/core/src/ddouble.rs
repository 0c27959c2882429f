//! Double-double arithmetic (about 106 bits of mantissa), used where the Weyl
//! numerator cancels to many orders of magnitude below its terms.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub const PI: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact for |n| < 2^106.
    pub fn from_i128(n: i128) -> Self {
        let hi = n as f64;
        let rest = n - hi as i128;
        let (hi, lo) = quick_two_sum(hi, rest as f64);
        Dd { hi, lo }
    }

    pub fn ratio(num: i128, den: i128) -> Self {
        Dd::from_i128(num).div(Dd::from_i128(den))
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l } + Dd::from_f64(q3)
    }

    pub fn div_f64(self, b: f64) -> Dd {
        self.div(Dd::from_f64(b))
    }

    pub fn floor(self) -> Dd {
        let hi = self.hi.floor();
        if hi == self.hi {
            let lo = self.lo.floor();
            let (h, l) = quick_two_sum(hi, lo);
            Dd { hi: h, lo: l }
        } else {
            Dd { hi, lo: 0.0 }
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

fn sin_cos_taylor(y: Dd) -> (Dd, Dd) {
    let y2 = y * y;
    let mut s = y;
    let mut term = y;
    let mut k = 1.0f64;
    loop {
        term = -(term * y2).div_f64((2.0 * k) * (2.0 * k + 1.0));
        s = s + term;
        if term.hi.abs() < 1e-34 {
            break;
        }
        k += 1.0;
    }
    let mut c = Dd::ONE;
    let mut term = Dd::ONE;
    let mut k = 1.0f64;
    loop {
        term = -(term * y2).div_f64((2.0 * k - 1.0) * (2.0 * k));
        c = c + term;
        if term.hi.abs() < 1e-34 {
            break;
        }
        k += 1.0;
    }
    (s, c)
}

/// `(sin(pi x), cos(pi x))` in double-double precision.
pub fn sin_cos_pi(x: Dd) -> (Dd, Dd) {
    let two = Dd::from_f64(2.0);
    let r = x - two * (x.div_f64(2.0)).floor();
    let j = (r.to_f64() * 2.0).round();
    let t = r - Dd::from_f64(j / 2.0);
    let (s, c) = sin_cos_taylor(PI * t);
    match (j as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// `(sin, cos)` of `pi * num / den` with exact argument reduction.
pub fn sin_cos_pi_ratio(num: i128, den: i128) -> (Dd, Dd) {
    debug_assert!(den > 0);
    let r = num.rem_euclid(2 * den);
    sin_cos_pi(Dd::ratio(r, den))
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    pub fn from_polar_pi(num: i128, den: i128) -> Self {
        let (s, c) = sin_cos_pi_ratio(num, den);
        DdComplex { re: c, im: s }
    }

    pub fn scale(self, k: Dd) -> Self {
        DdComplex {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn norm_f64(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn div(self, b: DdComplex) -> DdComplex {
        let den = b.re * b.re + b.im * b.im;
        let re = (self.re * b.re + self.im * b.im).div(den);
        let im = (self.im * b.re - self.re * b.im).div(den);
        DdComplex { re, im }
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    fn add(self, b: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Neg for DdComplex {
    type Output = DdComplex;
    fn neg(self) -> DdComplex {
        DdComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    fn mul(self, b: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}
