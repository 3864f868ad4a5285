use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A measured control-register bitstring.
///
/// Bit `i` of `bits` is control qubit `i`. The string form puts control 0
/// first, so `Outcome::new(0b01, 2)` displays as `"10"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome {
    bits: u64,
    width: u8,
}

impl Outcome {
    pub const MAX_WIDTH: usize = 64;

    pub fn new(bits: u64, width: usize) -> Self {
        assert!(width <= Self::MAX_WIDTH, "outcome width {width} exceeds 64");
        debug_assert!(width == 64 || bits >> width == 0);
        Outcome {
            bits,
            width: width as u8,
        }
    }

    pub fn zeros(width: usize) -> Self {
        Outcome::new(0, width)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn popcount(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn bit(self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn is_signature(self) -> bool {
        SignatureClass::EvenOnes.contains(self.popcount())
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Outcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > Self::MAX_WIDTH {
            return Err(Error::MalformedOutcome(String::from(s)));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::MalformedOutcome(String::from(s))),
            }
        }
        Ok(Outcome::new(bits, s.len()))
    }
}

/// Popcount families of control outcomes.
///
/// `EvenOnes` excludes the all-zero string: popcount 0 is the non-signature
/// outcome and is reported separately as `AllZero`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignatureClass {
    AllZero,
    EvenOnes,
    ExactlyOneOne,
    ExactlyTwoOnes,
    OddOnes,
}

impl SignatureClass {
    pub const ALL: [SignatureClass; 5] = [
        SignatureClass::AllZero,
        SignatureClass::EvenOnes,
        SignatureClass::ExactlyOneOne,
        SignatureClass::ExactlyTwoOnes,
        SignatureClass::OddOnes,
    ];

    pub fn contains(self, popcount: u32) -> bool {
        match self {
            SignatureClass::AllZero => popcount == 0,
            SignatureClass::EvenOnes => popcount > 0 && popcount % 2 == 0,
            SignatureClass::ExactlyOneOne => popcount == 1,
            SignatureClass::ExactlyTwoOnes => popcount == 2,
            SignatureClass::OddOnes => popcount % 2 == 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SignatureClass::AllZero => "all_zero",
            SignatureClass::EvenOnes => "even_ones",
            SignatureClass::ExactlyOneOne => "exactly_one_one",
            SignatureClass::ExactlyTwoOnes => "exactly_two_ones",
            SignatureClass::OddOnes => "odd_ones",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn string_form_is_control_zero_first() {
        assert_eq!(Outcome::new(0b01, 2).to_string(), "10");
        assert_eq!(Outcome::new(0b110, 3).to_string(), "011");
        let o: Outcome = "011".parse().unwrap();
        assert_eq!(o.bits(), 0b110);
        assert!("01x".parse::<Outcome>().is_err());
        assert!("".parse::<Outcome>().is_err());
    }

    #[test]
    fn classes_partition_by_popcount() {
        for pc in 0..10u32 {
            let zero = SignatureClass::AllZero.contains(pc);
            let even = SignatureClass::EvenOnes.contains(pc);
            let odd = SignatureClass::OddOnes.contains(pc);
            assert_eq!(u32::from(zero) + u32::from(even) + u32::from(odd), 1);
        }
        assert!(!SignatureClass::EvenOnes.contains(0));
        assert!(SignatureClass::ExactlyTwoOnes.contains(2));
    }
}
