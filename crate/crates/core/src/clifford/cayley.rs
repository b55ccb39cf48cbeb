//! Blade product table of G(R³).
//!
//! Blades are stored in the fixed order {1, e1, e2, e3, e12, e13, e23, e123}.
//! Each entry of [`CAYLEY`] gives the sign and the blade index of the product
//! `row · column`.

/// Number of basis blades.
pub const BLADES: usize = 8;

/// Human-readable blade names, in storage order.
pub const BLADE_NAMES: [&str; BLADES] = ["1", "e1", "e2", "e3", "e12", "e13", "e23", "e123"];

/// Grade of each blade, in storage order.
pub const BLADE_GRADES: [usize; BLADES] = [0, 1, 1, 1, 2, 2, 2, 3];

/// Basis vectors making up each blade, ascending.
const BLADE_WORDS: [&[u8]; BLADES] = [&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]];

/// A signed blade: `sign * blade[index]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedBlade {
    pub sign: i8,
    pub index: u8,
}

const fn p(index: u8) -> SignedBlade {
    SignedBlade { sign: 1, index }
}

const fn m(index: u8) -> SignedBlade {
    SignedBlade { sign: -1, index }
}

/// Transcribed Cayley table: `CAYLEY[row][col]` is the product of blade `row`
/// (left) with blade `col` (right).
#[rustfmt::skip]
pub const CAYLEY: [[SignedBlade; BLADES]; BLADES] = [
    //  1      e1     e2     e3     e12    e13    e23    e123
    [p(0), p(1), p(2), p(3), p(4), p(5), p(6), p(7)], // 1
    [p(1), p(0), p(4), p(5), p(2), p(3), p(7), p(6)], // e1
    [p(2), m(4), p(0), p(6), m(1), m(7), p(3), m(5)], // e2
    [p(3), m(5), m(6), p(0), p(7), m(1), m(2), p(4)], // e3
    [p(4), m(2), p(1), p(7), m(0), m(6), p(5), m(3)], // e12
    [p(5), m(3), m(7), p(1), p(6), m(0), m(4), p(2)], // e13
    [p(6), p(7), m(3), p(2), m(5), p(4), m(0), m(1)], // e23
    [p(7), p(6), m(5), p(4), m(3), p(2), m(1), m(0)], // e123
];

/// Multiplies two blades by concatenating their basis-vector words and
/// normalising with `e_a e_b = -e_b e_a` (a ≠ b) and `e_a e_a = 1`.
pub fn blade_product(left: usize, right: usize) -> SignedBlade {
    let mut word: Vec<u8> = BLADE_WORDS[left].iter().chain(BLADE_WORDS[right]).copied().collect();
    let mut sign = 1i8;
    'normalise: loop {
        for k in 0..word.len().saturating_sub(1) {
            if word[k] == word[k + 1] {
                word.drain(k..k + 2);
                continue 'normalise;
            }
            if word[k] > word[k + 1] {
                word.swap(k, k + 1);
                sign = -sign;
                continue 'normalise;
            }
        }
        break;
    }
    let index = BLADE_WORDS.iter().position(|w| *w == word.as_slice()).expect("normalised word is a canonical blade");
    SignedBlade { sign, index: index as u8 }
}

/// Rebuilds the full table from vector anticommutation alone.
pub fn generate_cayley_table() -> [[SignedBlade; BLADES]; BLADES] {
    let mut table = [[p(0); BLADES]; BLADES];
    for (row, entries) in table.iter_mut().enumerate() {
        for (col, entry) in entries.iter_mut().enumerate() {
            *entry = blade_product(row, col);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_table_matches_transcription() {
        let generated = generate_cayley_table();
        for row in 0..BLADES {
            for col in 0..BLADES {
                assert_eq!(generated[row][col], CAYLEY[row][col], "{} * {}", BLADE_NAMES[row], BLADE_NAMES[col]);
            }
        }
    }

    #[test]
    fn blade_squares() {
        let expected = [1, 1, 1, 1, -1, -1, -1, -1];
        for (b, &s) in expected.iter().enumerate() {
            assert_eq!(CAYLEY[b][b], SignedBlade { sign: s, index: 0 });
        }
    }
}
