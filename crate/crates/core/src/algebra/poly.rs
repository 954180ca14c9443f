use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Univariate polynomial in `t` with integer coefficients.
///
/// `coeffs[i]` is the coefficient of `t^i`; trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power];
        coeffs.push(c.into());
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Number of factors of `t` dividing the polynomial (0 for the zero polynomial).
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out every factor of `t`.
    pub fn strip_t(&self) -> Self {
        IntPoly { coeffs: self.coeffs[self.t_valuation()..].to_vec() }
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    /// Exact division, `None` when `divisor` does not divide `self` over ℤ[t].
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dlead = divisor.leading()?;
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + ddeg];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::from_coeffs(quot))
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Report rendering with ascending powers: `1 - t - t^2`.
    pub fn render_ascending(&self) -> String {
        self.render_terms((0..self.coeffs.len()).collect())
    }

    /// Report rendering with descending powers: `t^2 - t - 1`.
    pub fn render_descending(&self) -> String {
        self.render_terms((0..self.coeffs.len()).rev().collect())
    }

    fn render_terms(&self, order: Vec<usize>) -> String {
        let mut out = String::new();
        for k in order {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "t".to_string(),
                (1, false) => format!("{mag}*t"),
                (_, true) => format!("t^{k}"),
                (_, false) => format!("{mag}*t^{k}"),
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Compact entry rendering used by matrix documents: `2t^2+t`, `-t+1`.
    pub fn render_compact(&self) -> String {
        let mut out = String::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mag = c.abs();
            match k {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&mag.to_string());
                    }
                    out.push('t');
                    if k > 1 {
                        out.push('^');
                        out.push_str(&k.to_string());
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses a single entry such as `3`, `t`, `2t^2+t`, `1 - 2*t`.
    ///
    /// On failure returns the byte offset of the offending character with a message.
    pub fn parse_entry(text: &str) -> std::result::Result<IntPoly, (usize, String)> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut acc = IntPoly::zero();
        let mut first = true;
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err((pos, "empty entry".into()));
        }
        while pos < bytes.len() {
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err((pos, format!("expected '+' or '-', found '{}'", bytes[pos] as char)));
            }
            first = false;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coef: Option<BigInt> = (pos > start).then(|| text[start..pos].parse().unwrap());
            if pos < bytes.len() && bytes[pos] == b'*' {
                if coef.is_none() {
                    return Err((pos, "'*' without a coefficient".into()));
                }
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b't' {
                    return Err((pos, "expected 't' after '*'".into()));
                }
            }
            let mut power = 0usize;
            if pos < bytes.len() && bytes[pos] == b't' {
                pos += 1;
                power = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let s = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if s == pos {
                        return Err((pos, "expected exponent after '^'".into()));
                    }
                    power = text[s..pos]
                        .parse()
                        .map_err(|_| (s, "exponent too large".to_string()))?;
                }
            } else if coef.is_none() {
                let found = text[pos..].chars().next().map_or("end of entry".to_string(), |c| format!("'{c}'"));
                return Err((pos, format!("expected a coefficient or 't', found {found}")));
            }
            let mut c = coef.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            acc = &acc + &IntPoly::monomial(c, power);
            skip_ws(&mut pos);
        }
        Ok(acc)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_ascending())
    }
}

impl std::str::FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntPoly::parse_entry(s).map_err(|(column, message)| Error::Parse {
            line: 1,
            column: column + 1,
            message,
        })
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 0, 0]).degree(), Some(0));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn renderings() {
        assert_eq!(p(&[1, -1, -1]).render_ascending(), "1 - t - t^2");
        assert_eq!(p(&[1, -2]).render_ascending(), "1 - 2*t");
        assert_eq!(p(&[-1, -1, 1]).render_descending(), "t^2 - t - 1");
        assert_eq!(p(&[-2, 1]).render_descending(), "t - 2");
        assert_eq!(p(&[0, 1, 2]).render_compact(), "2t^2+t");
        assert_eq!(p(&[1, -1]).render_compact(), "-t+1");
        assert_eq!(IntPoly::zero().render_compact(), "0");
        assert_eq!(IntPoly::zero().render_ascending(), "0");
    }

    #[test]
    fn parses_both_styles() {
        assert_eq!("2t^2+t".parse::<IntPoly>().unwrap(), p(&[0, 1, 2]));
        assert_eq!("1 - 2*t".parse::<IntPoly>().unwrap(), p(&[1, -2]));
        assert_eq!("t".parse::<IntPoly>().unwrap(), p(&[0, 1]));
        assert_eq!("-3".parse::<IntPoly>().unwrap(), p(&[-3]));
        assert_eq!("t^2+t+t".parse::<IntPoly>().unwrap(), p(&[0, 2, 1]));
        assert!("2x".parse::<IntPoly>().is_err());
        assert!("".parse::<IntPoly>().is_err());
        assert!("t^".parse::<IntPoly>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, -2, 1]);
        let b = p(&[1, -1]);
        assert_eq!(a.div_exact(&b), Some(b.clone()));
        assert_eq!(p(&[1, 1]).div_exact(&p(&[0, 2])), None);
        assert_eq!(p(&[3]).div_exact(&p(&[2])), None);
        assert_eq!(IntPoly::zero().div_exact(&b), Some(IntPoly::zero()));
    }

    #[test]
    fn strip_t_and_eval() {
        assert_eq!(p(&[0, 0, -2, 1]).strip_t(), p(&[-2, 1]));
        assert_eq!(p(&[1, -2, 1]).eval(&BigInt::from(1)), BigInt::zero());
    }
}
