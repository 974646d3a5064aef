use std::cmp::Ordering;
use std::fmt;

/// Generator letters in the fixed order x ≺ y ≺ z.
pub const LETTERS: [char; 3] = ['x', 'y', 'z'];

/// A monomial in the free algebra on x, y, z. Letters are stored as 0, 1, 2.
///
/// Ordered degree-lexicographically: shorter words first, equal lengths
/// compared letter by letter.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: u8) -> Self {
        debug_assert!(l < 3);
        Word(vec![l])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn parse(s: &str) -> Option<Word> {
        s.chars()
            .map(|c| LETTERS.iter().position(|&l| l == c).map(|p| p as u8))
            .collect::<Option<Vec<u8>>>()
            .map(Word)
    }

    /// Positions where `pat` occurs as a contiguous subword.
    pub fn occurrences(&self, pat: &Word) -> Vec<usize> {
        let (h, p) = (&self.0, &pat.0);
        if p.len() > h.len() {
            return Vec::new();
        }
        (0..=h.len() - p.len())
            .filter(|&i| &h[i..i + p.len()] == p.as_slice())
            .collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &l in &self.0 {
            write!(f, "{}", LETTERS[l as usize])?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex() {
        let w = |s| Word::parse(s).unwrap();
        assert!(w("z") < w("xx"));
        assert!(w("xz") < w("yx"));
        assert!(w("zy") < w("zz"));
        assert_eq!(w("xyz").to_string(), "xyz");
        assert_eq!(Word::empty().to_string(), "1");
        assert!(Word::parse("xaz").is_none());
        assert_eq!(w("xyxy").occurrences(&w("xy")), vec![0, 2]);
    }
}
