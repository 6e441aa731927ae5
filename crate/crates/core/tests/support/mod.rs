//! Arbitrary-precision arithmetic for test oracles.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use num_complex::Complex64;

const RM: RoundingMode = RoundingMode::ToEven;

pub struct Big {
    p: usize,
    cc: Consts,
}

#[derive(Clone, Debug)]
pub struct BigC {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Big {
    pub fn new(bits: usize) -> Self {
        Self {
            p: bits,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn r(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.p)
    }

    pub fn int(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.p)
    }

    pub fn to_f64(&mut self, v: &BigFloat) -> f64 {
        let s = v.format(astro_float::Radix::Dec, RM, &mut self.cc).expect("format");
        s.parse().unwrap_or_else(|_| panic!("cannot parse {s}"))
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.p, RM, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.p, RM, &mut self.cc)
    }

    pub fn atan2(&mut self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        let pi = self.pi();
        if x.is_zero() {
            let half = self.div(&pi, &self.r(2.0));
            return if y.is_negative() { half.neg() } else { half };
        }
        let base = y.div(x, self.p, RM).atan(self.p, RM, &mut self.cc);
        if x.is_positive() {
            base
        } else if y.is_negative() {
            self.sub(&base, &pi)
        } else {
            self.add(&base, &pi)
        }
    }

    pub fn c(&self, re: f64, im: f64) -> BigC {
        BigC {
            re: self.r(re),
            im: self.r(im),
        }
    }

    pub fn cr(&self, re: BigFloat) -> BigC {
        BigC {
            re,
            im: self.r(0.0),
        }
    }

    pub fn cadd(&self, a: &BigC, b: &BigC) -> BigC {
        BigC {
            re: self.add(&a.re, &b.re),
            im: self.add(&a.im, &b.im),
        }
    }

    pub fn csub(&self, a: &BigC, b: &BigC) -> BigC {
        BigC {
            re: self.sub(&a.re, &b.re),
            im: self.sub(&a.im, &b.im),
        }
    }

    pub fn cmul(&self, a: &BigC, b: &BigC) -> BigC {
        BigC {
            re: self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im)),
            im: self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re)),
        }
    }

    pub fn cscale(&self, a: &BigC, s: &BigFloat) -> BigC {
        BigC {
            re: self.mul(&a.re, s),
            im: self.mul(&a.im, s),
        }
    }

    pub fn cdiv(&self, a: &BigC, b: &BigC) -> BigC {
        let den = self.add(&self.mul(&b.re, &b.re), &self.mul(&b.im, &b.im));
        let conj = BigC {
            re: b.re.clone(),
            im: b.im.neg(),
        };
        let num = self.cmul(a, &conj);
        BigC {
            re: self.div(&num.re, &den),
            im: self.div(&num.im, &den),
        }
    }

    pub fn cabs(&self, a: &BigC) -> BigFloat {
        self.sqrt(&self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im)))
    }

    pub fn cexp(&mut self, a: &BigC) -> BigC {
        let m = self.exp(&a.re);
        let (s, c) = (self.sin(&a.im), self.cos(&a.im));
        BigC {
            re: self.mul(&m, &c),
            im: self.mul(&m, &s),
        }
    }

    /// e^{iθ}
    pub fn cis(&mut self, theta: &BigFloat) -> BigC {
        let (s, c) = (self.sin(theta), self.cos(theta));
        BigC { re: c, im: s }
    }

    /// Principal logarithm.
    pub fn cln(&mut self, a: &BigC) -> BigC {
        let r = self.cabs(a);
        BigC {
            re: self.ln(&r),
            im: self.atan2(&a.im, &a.re),
        }
    }

    pub fn to_c64(&mut self, a: &BigC) -> Complex64 {
        Complex64::new(self.to_f64(&a.re), self.to_f64(&a.im))
    }
}
