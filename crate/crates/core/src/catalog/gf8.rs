//! The field with eight elements as `F₂[t]/(t³ + t + 1)`.
//!
//! An element is the bit pattern of its coefficients, bit `i` holding the
//! coefficient of `tⁱ`.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u8);

const MODULUS: u16 = 0b1011;

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);
    /// The class of `t`, a generator of the multiplicative group.
    pub const T: FieldElem = FieldElem(2);

    pub fn new(bits: u8) -> Self {
        assert!(bits < 8, "GF(8) elements are 3-bit patterns");
        FieldElem(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = FieldElem> {
        (0..8).map(FieldElem)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: FieldElem) -> FieldElem {
        FieldElem(self.0 ^ other.0)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: FieldElem) -> FieldElem {
        let mut acc: u16 = 0;
        for i in 0..3 {
            if other.0 >> i & 1 == 1 {
                acc ^= (self.0 as u16) << i;
            }
        }
        for bit in (3..5).rev() {
            if acc >> bit & 1 == 1 {
                acc ^= MODULUS << (bit - 3);
            }
        }
        FieldElem(acc as u8)
    }

    pub fn pow(self, mut e: u32) -> FieldElem {
        let mut base = self;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `x⁶` since the unit group has order 7.
    pub fn inv(self) -> Option<FieldElem> {
        (!self.is_zero()).then(|| self.pow(6))
    }

    pub fn frobenius(self) -> FieldElem {
        self.mul(self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
