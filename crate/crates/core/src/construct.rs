//! The bit-reversal family `T_i` and the size-8 tanglegram with crossing number 9.
//!
//! Leaves of both complete trees are labelled by the integer value of their
//! binary word (root-to-leaf path, `0` = first child). The matching sends the
//! word `x` to its reversal, so it is the `i`-bit bit-reversal permutation and
//! the unswitched layout lists both sides in integer order.

use crate::tangle::{Layout, Tanglegram};
use crate::tree::Tree;
use crate::{Error, Result};

/// Largest supported level; keeps `2^i` leaves and all pair counts in 64 bits.
pub const MAX_LEVEL: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    bits: Vec<bool>,
}

impl BinaryWord {
    pub fn new(bits: Vec<bool>) -> Self {
        BinaryWord { bits }
    }

    /// The `len`-bit word whose standard binary reading is `value`.
    pub fn from_value(value: u64, len: u32) -> Self {
        let bits = (0..len).rev().map(|k| (value >> k) & 1 == 1).collect();
        BinaryWord { bits }
    }

    pub fn empty() -> Self {
        BinaryWord { bits: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn reversed(&self) -> Self {
        BinaryWord { bits: self.bits.iter().rev().copied().collect() }
    }

    pub fn value(&self) -> u64 {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }
}

fn check_level(i: u32) -> Result<()> {
    if i > MAX_LEVEL {
        Err(Error::SizeLimit { what: "level", got: i as usize, limit: MAX_LEVEL as usize })
    } else {
        Ok(())
    }
}

/// The `i`-bit bit-reversal permutation.
pub fn bit_reversal(i: u32) -> Vec<usize> {
    (0..1u64 << i)
        .map(|v| BinaryWord::from_value(v, i).reversed().value() as usize)
        .collect()
}

/// `T_i`: complete trees of height `i` matched by bit reversal.
pub fn t_family(i: u32) -> Result<Tanglegram> {
    check_level(i)?;
    Tanglegram::new(Tree::complete(i), Tree::complete(i), bit_reversal(i))
}

/// `D*_i`: the layout of `T_i` listing both leaf sequences in integer order.
pub fn d_star(i: u32) -> Result<Layout> {
    Ok(Layout::unswitched(t_family(i)?))
}

/// `C(2^i, 2) / 2 - i * 2^(i-2)`, which is `0` for `i` in `{0, 1}`. Valid for `i <= 63`.
pub fn crt_formula(i: u32) -> u128 {
    assert!(i <= 63, "level {i} out of range");
    if i < 2 {
        return 0;
    }
    let n = 1u128 << i;
    n * (n - 1) / 4 - (i as u128) * (1u128 << (i - 2))
}

/// The size-8 tanglegram of crossing number 9, drawn optimally with both
/// sides in integer order.
pub fn fig4_tanglegram() -> Layout {
    // Edge list of the drawing, left word -> right word:
    // 000-000, 001-100, 010-010, 011-110, 100-011, 101-101, 110-001, 111-111
    let sigma = vec![0, 4, 2, 6, 3, 5, 1, 7];
    Layout::unswitched(Tanglegram::new(Tree::complete(3), Tree::complete(3), sigma).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        let w = BinaryWord::from_value(0b011, 3);
        assert_eq!(w.bits(), &[false, true, true]);
        assert_eq!(w.reversed().value(), 0b110);
        assert_eq!(w.reversed().reversed(), w);
        assert_eq!(BinaryWord::empty().value(), 0);
    }

    #[test]
    fn t3_matching() {
        let t = t_family(3).unwrap();
        assert_eq!(t.sigma()[1], 4);
        assert_eq!(t.sigma()[3], 6);
        assert_eq!(t.sigma()[5], 5);
        assert_eq!(t_family(0).unwrap().n(), 1);
        assert!(t_family(25).is_err());
    }

    #[test]
    fn formula_values() {
        let v: Vec<u128> = (0..=4).map(crt_formula).collect();
        assert_eq!(v, vec![0, 0, 1, 8, 44]);
    }

    #[test]
    fn star_layout_crossings() {
        assert_eq!(d_star(1).unwrap().crossings(), 0);
        assert_eq!(d_star(3).unwrap().crossings(), 8);
        assert_eq!(d_star(4).unwrap().crossings(), 44);
        assert_eq!(d_star(3).unwrap().pi(), bit_reversal(3));
    }

    #[test]
    fn fig4_layout_has_nine_crossings() {
        assert_eq!(fig4_tanglegram().crossings(), 9);
    }
}
