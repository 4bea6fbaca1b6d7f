//! Witt rings of prime fields.
//!
//! W(F_2) = Z/2, W(F_p) = Z/4 for p = 3 mod 4 (generated by <1>, with
//! <-1> = -1), and W(F_p) = Z/2[F_p^x / squares] for p = 1 mod 4.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Value {
    /// Rank mod 2.
    Char2(u8),
    /// Multiplicities of <1> and <s> mod 2.
    OneMod4 { one: u8, nonsquare: u8 },
    /// Element of Z/4.
    ThreeMod4(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WittFp {
    p: u64,
    value: Value,
}

impl WittFp {
    pub fn zero(p: u64) -> Self {
        let value = if p == 2 {
            Value::Char2(0)
        } else if p % 4 == 1 {
            Value::OneMod4 {
                one: 0,
                nonsquare: 0,
            }
        } else {
            Value::ThreeMod4(0)
        };
        WittFp { p, value }
    }

    /// Class of the one-dimensional form <a>, given whether a is a square.
    pub fn unit(p: u64, is_square: bool) -> Self {
        let value = match Self::zero(p).value {
            Value::Char2(_) => Value::Char2(1),
            Value::OneMod4 { .. } => {
                if is_square {
                    Value::OneMod4 {
                        one: 1,
                        nonsquare: 0,
                    }
                } else {
                    Value::OneMod4 {
                        one: 0,
                        nonsquare: 1,
                    }
                }
            }
            Value::ThreeMod4(_) => Value::ThreeMod4(if is_square { 1 } else { 3 }),
        };
        WittFp { p, value }
    }

    pub fn one(p: u64) -> Self {
        Self::unit(p, true)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        matches!(
            self.value,
            Value::Char2(0)
                | Value::OneMod4 {
                    one: 0,
                    nonsquare: 0
                }
                | Value::ThreeMod4(0)
        )
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "Witt elements over different prime fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let value = match (self.value, other.value) {
            (Value::Char2(a), Value::Char2(b)) => Value::Char2((a + b) % 2),
            (
                Value::OneMod4 {
                    one: a,
                    nonsquare: b,
                },
                Value::OneMod4 {
                    one: c,
                    nonsquare: d,
                },
            ) => Value::OneMod4 {
                one: (a + c) % 2,
                nonsquare: (b + d) % 2,
            },
            (Value::ThreeMod4(a), Value::ThreeMod4(b)) => Value::ThreeMod4((a + b) % 4),
            _ => unreachable!("encoding is determined by p"),
        };
        WittFp { p: self.p, value }
    }

    pub fn neg(&self) -> Self {
        let value = match self.value {
            Value::ThreeMod4(a) => Value::ThreeMod4((4 - a) % 4),
            // 2-torsion encodings are their own negatives
            v => v,
        };
        WittFp { p: self.p, value }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let value = match (self.value, other.value) {
            (Value::Char2(a), Value::Char2(b)) => Value::Char2(a * b),
            (
                Value::OneMod4 {
                    one: a,
                    nonsquare: b,
                },
                Value::OneMod4 {
                    one: c,
                    nonsquare: d,
                },
            ) => Value::OneMod4 {
                one: (a * c + b * d) % 2,
                nonsquare: (a * d + b * c) % 2,
            },
            (Value::ThreeMod4(a), Value::ThreeMod4(b)) => Value::ThreeMod4((a * b) % 4),
            _ => unreachable!("encoding is determined by p"),
        };
        WittFp { p: self.p, value }
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        let m = n.mod_floor(&BigInt::from(4)).to_u8().unwrap();
        let mut acc = Self::zero(self.p);
        for _ in 0..m {
            acc = acc.add(self);
        }
        acc
    }
}

impl fmt::Display for WittFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Value::Char2(a) => write!(f, "{a} in W(F_2)"),
            Value::OneMod4 { one, nonsquare } => {
                write!(f, "{one}<1> + {nonsquare}<s> in W(F_{})", self.p)
            }
            Value::ThreeMod4(a) => write!(f, "{a} in W(F_{}) = Z/4", self.p),
        }
    }
}
