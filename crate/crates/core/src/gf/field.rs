use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field `F_p` with `p < 256`. Elements are stored as `u8` in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FieldPrime(u8);

impl FieldPrime {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..256).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldPrime(p as u8))
    }

    pub const TWO: FieldPrime = FieldPrime(2);

    #[inline]
    pub fn p(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn order(self) -> u64 {
        self.0 as u64
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.0 as u16 - b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.0 as i64) as u8
    }

    pub fn inv(self, a: u8) -> u8 {
        assert!(!a.is_multiple_of(self.0), "inverse of zero in F_{}", self.0);
        // Fermat: a^(p-2)
        self.pow(a, self.0 as u32 - 2)
    }

    pub fn pow(self, a: u8, mut e: u32) -> u8 {
        let mut base = a % self.0;
        let mut acc = 1u8 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root(self) -> u8 {
        let p = self.0 as u32;
        if p == 2 {
            return 1;
        }
        let order = p - 1;
        let factors: Vec<u32> = (2..=order).filter(|d| order.is_multiple_of(*d) && (2..*d).all(|e| d % e != 0)).collect();
        (2..p as u8)
            .find(|&g| factors.iter().all(|&q| self.pow(g, order / q) != 1))
            .expect("every prime field has a primitive root")
    }
}

impl fmt::Debug for FieldPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0)
    }
}

impl fmt::Display for FieldPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0)
    }
}

impl TryFrom<u32> for FieldPrime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        FieldPrime::new(p)
    }
}

impl From<FieldPrime> for u32 {
    fn from(f: FieldPrime) -> u32 {
        f.0 as u32
    }
}
