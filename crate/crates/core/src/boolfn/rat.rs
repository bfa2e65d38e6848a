use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::BoolFnError;

/// A nonnegative exact rational with machine-integer numerator and
/// denominator, always kept in lowest terms. Comparisons cross-multiply in
/// `u128`, so no operation here ever rounds.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: u64,
    den: u64,
}

impl Rat {
    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den);
        Rat {
            num: num / g,
            den: den / g,
        }
    }

    pub fn int(v: u64) -> Self {
        Rat { num: v, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn square(&self) -> Rat {
        *self * *self
    }

    pub fn recip(&self) -> Rat {
        assert!(self.num != 0, "reciprocal of zero");
        Rat {
            num: self.den,
            den: self.num,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> u64 {
        self.num.div_ceil(self.den)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, o: Rat) -> Rat {
        let num = self.num as u128 * o.den as u128 + o.num as u128 * self.den as u128;
        let den = self.den as u128 * o.den as u128;
        reduce128(num, den)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, o: Rat) -> Rat {
        let l = self.num as u128 * o.den as u128;
        let r = o.num as u128 * self.den as u128;
        assert!(l >= r, "negative rational");
        reduce128(l - r, self.den as u128 * o.den as u128)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, o: Rat) -> Rat {
        reduce128(
            self.num as u128 * o.num as u128,
            self.den as u128 * o.den as u128,
        )
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, o: Rat) -> Rat {
        assert!(o.num != 0, "division by zero");
        reduce128(
            self.num as u128 * o.den as u128,
            self.den as u128 * o.num as u128,
        )
    }
}

fn reduce128(num: u128, den: u128) -> Rat {
    fn gcd128(mut a: u128, mut b: u128) -> u128 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        if a == 0 {
            1
        } else {
            a
        }
    }
    let g = gcd128(num, den);
    let (num, den) = (num / g, den / g);
    assert!(
        num <= u64::MAX as u128 && den <= u64::MAX as u128,
        "rational overflow"
    );
    Rat {
        num: num as u64,
        den: den as u64,
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = BoolFnError;

    /// Accepts `p` or `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BoolFnError::Parse(format!("bad rational {s:?}"));
        match s.split_once('/') {
            None => Ok(Rat::int(s.trim().parse().map_err(|_| bad())?)),
            Some((p, q)) => {
                let num: u64 = p.trim().parse().map_err(|_| bad())?;
                let den: u64 = q.trim().parse().map_err(|_| bad())?;
                if den == 0 {
                    return Err(bad());
                }
                Ok(Rat::new(num, den))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_order() {
        let half = Rat::new(1, 2);
        let third = Rat::new(1, 3);
        assert_eq!(half + third, Rat::new(5, 6));
        assert_eq!(half - third, Rat::new(1, 6));
        assert_eq!(half * third, Rat::new(1, 6));
        assert_eq!(half / third, Rat::new(3, 2));
        assert!(third < half);
        assert_eq!(Rat::new(4, 8), half);
        assert_eq!(Rat::new(1, 4).square(), Rat::new(1, 16));
        assert_eq!(Rat::new(7, 3).ceil(), 3);
    }

    #[test]
    fn parse_forms() {
        assert_eq!("1/4".parse::<Rat>().unwrap(), Rat::new(1, 4));
        assert_eq!("3".parse::<Rat>().unwrap(), Rat::int(3));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }
}
