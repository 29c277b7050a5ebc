//! Minimal double-double arithmetic (~31 significant digits).
//!
//! The finite closed form of the half-integer Bessel function suffers
//! catastrophic cancellation between its exponentially large terms when the
//! argument is small relative to the order (the terms reach ~1e9 times the
//! result at order 7/2, x = 0.1). Plain f64 evaluation would lose eight
//! digits there; carrying the intermediate sums as unevaluated hi+lo pairs
//! keeps the final result accurate to f64 precision.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let s2 = s2 + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(rhs.neg())
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, rhs: f64) -> Dd {
        self.mul(Dd::from_f64(rhs))
    }

    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul_f64(q1));
        let q2 = r.hi / rhs.hi;
        let r = r.sub(rhs.mul_f64(q2));
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    pub fn recip(self) -> Dd {
        Dd::from_f64(1.0).div(self)
    }

    pub fn sqrt(self) -> Dd {
        // one Newton step on the f64 seed doubles the precision
        let s = self.hi.sqrt();
        if s == 0.0 {
            return Dd::from_f64(0.0);
        }
        let seed = Dd::from_f64(s);
        let err = self.sub(seed.mul(seed)).hi / (2.0 * s);
        seed.add(Dd::from_f64(err))
    }
}

/// sinh(x) by its Taylor series in double-double; x >= 0, all terms positive.
pub(crate) fn dd_sinh(x: f64) -> Dd {
    let xd = Dd::from_f64(x);
    let x2 = xd.mul(xd);
    let mut term = xd;
    let mut sum = xd;
    let mut k = 1u32;
    loop {
        term = term.mul(x2).div(Dd::from_f64(((2 * k) * (2 * k + 1)) as f64));
        sum = sum.add(term);
        k += 1;
        if term.hi < sum.hi.abs() * 1e-33 || k > 400 {
            break;
        }
    }
    sum
}

/// cosh(x) by its Taylor series in double-double; x >= 0.
pub(crate) fn dd_cosh(x: f64) -> Dd {
    let xd = Dd::from_f64(x);
    let x2 = xd.mul(xd);
    let mut term = Dd::from_f64(1.0);
    let mut sum = term;
    let mut k = 1u32;
    loop {
        term = term.mul(x2).div(Dd::from_f64(((2 * k - 1) * (2 * k)) as f64));
        sum = sum.add(term);
        k += 1;
        if term.hi < sum.hi.abs() * 1e-33 || k > 400 {
            break;
        }
    }
    sum
}

/// 1/sqrt(pi) as a double-double constant.
pub(crate) const FRAC_1_SQRT_PI: Dd = Dd::new(0.5641895835477563, 7.66772980658294e-18);
