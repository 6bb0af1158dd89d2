//! Exact rationals. Backed by `num_rational::BigRational`, which keeps every
//! value reduced with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses `n`, `-n`, `n/d` or a finite decimal `a.b`.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((n, d)) = text.split_once('/') {
        let n = parse_rat(n)?;
        let d = parse_rat(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == '.') {
        return None;
    }
    let value = match body.split_once('.') {
        Some((int, frac)) => {
            if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
                return None;
            }
            let digits = format!("{int}{frac}");
            let num: BigInt = digits.parse().ok()?;
            let den = num_traits::pow(BigInt::from(10), frac.len());
            Rat::new(num, den)
        }
        None => Rat::from_integer(body.parse().ok()?),
    };
    Some(if neg { -value } else { value })
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rat("3"), Some(rat(3)));
        assert_eq!(parse_rat("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rat("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("."), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn zero_is_canonical() {
        let z = ratio(0, -7);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
    }
}
