//! Gaussian rationals: exact complex numbers with rational parts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::scalar::Scalar;
use crate::{Error, Result};

/// `re + im·i` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gaussian<I: Scalar> {
    pub re: Ratio<I>,
    pub im: Ratio<I>,
}

impl<I: Scalar> Gaussian<I> {
    pub fn new(re: Ratio<I>, im: Ratio<I>) -> Self {
        Gaussian { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian {
            re: Ratio::from_integer(I::from_int(re)),
            im: Ratio::from_integer(I::from_int(im)),
        }
    }

    pub fn zero() -> Self {
        Gaussian {
            re: Ratio::zero(),
            im: Ratio::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|²`, exact.
    pub fn norm_sq(&self) -> Ratio<I> {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn scale(&self, c: &Ratio<I>) -> Self {
        Gaussian {
            re: self.re.clone() * c.clone(),
            im: self.im.clone() * c.clone(),
        }
    }

    /// Membership in the semiclosed upper half plane: `im > 0`, or
    /// `im = 0` and `re < 0`.
    pub fn in_upper_half(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }

    /// Parses a literal like `-1/2+3/4i`, `i`, `-i`, `2i`, `-1`, `3-2i`.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty complex literal".into()));
        }
        // Split into sign-prefixed terms.
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (k, c) in s.chars().enumerate() {
            if (c == '+' || c == '-') && k > 0 && !cur.is_empty() && !cur.ends_with('/') {
                terms.push(cur.clone());
                cur.clear();
            }
            cur.push(c);
        }
        terms.push(cur);
        let mut re: Option<Ratio<I>> = None;
        let mut im: Option<Ratio<I>> = None;
        for t in terms {
            if let Some(body) = t.strip_suffix('i') {
                if im.is_some() {
                    return Err(Error::Parse(format!("two imaginary parts in `{text}`")));
                }
                let body = match body {
                    "" | "+" => "1",
                    "-" => "-1",
                    b => b,
                };
                im = Some(parse_ratio(body)?);
            } else {
                if re.is_some() {
                    return Err(Error::Parse(format!("two real parts in `{text}`")));
                }
                re = Some(parse_ratio(&t)?);
            }
        }
        Ok(Gaussian {
            re: re.unwrap_or_else(Ratio::zero),
            im: im.unwrap_or_else(Ratio::zero),
        })
    }
}

/// Parses `p` or `p/q` into an exact rational.
pub fn parse_ratio<I: Scalar>(text: &str) -> Result<Ratio<I>> {
    let bad = || Error::Parse(format!("bad rational `{text}`"));
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n = parse_int::<I>(numer).ok_or_else(bad)?;
    let d = parse_int::<I>(denom).ok_or_else(bad)?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

fn parse_int<I: Scalar>(text: &str) -> Option<I> {
    let (neg, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut v = I::zero();
    let ten = I::from_int(10);
    for b in digits.bytes() {
        v = v * ten.clone() + I::from_int((b - b'0') as i64);
    }
    Some(if neg { -v } else { v })
}

/// `"p/q"` with positive reduced denominator.
pub fn ratio_string<I: Scalar>(r: &Ratio<I>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl<I: Scalar> fmt::Display for Gaussian<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn part<I: Scalar>(r: &Ratio<I>) -> String {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        if self.im.is_zero() {
            return write!(f, "{}", part(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", part(&self.im));
        }
        let im = if self.im.is_negative() {
            format!("{}i", part(&self.im))
        } else {
            format!("+{}i", part(&self.im))
        };
        write!(f, "{}{}", part(&self.re), im)
    }
}

impl<I: Scalar> Add for Gaussian<I> {
    type Output = Gaussian<I>;
    fn add(self, rhs: Self) -> Self {
        Gaussian {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<I: Scalar> Sub for Gaussian<I> {
    type Output = Gaussian<I>;
    fn sub(self, rhs: Self) -> Self {
        Gaussian {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<I: Scalar> Mul for Gaussian<I> {
    type Output = Gaussian<I>;
    fn mul(self, rhs: Self) -> Self {
        Gaussian {
            re: self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl<I: Scalar> Neg for Gaussian<I> {
    type Output = Gaussian<I>;
    fn neg(self) -> Self {
        Gaussian {
            re: -self.re,
            im: -self.im,
        }
    }
}
