use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use serde::{Deserialize, Serialize};

/// A Sprague-Grundy value.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Nimber(pub u32);

impl Nimber {
    pub const ZERO: Nimber = Nimber(0);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl BitXor for Nimber {
    type Output = Nimber;

    fn bitxor(self, rhs: Nimber) -> Nimber {
        Nimber(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Nimber {
    fn bitxor_assign(&mut self, rhs: Nimber) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Nimber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for Nimber {
    fn from(v: u32) -> Self {
        Nimber(v)
    }
}

/// Minimum excluded value.
pub fn mex<I>(values: I) -> Nimber
where
    I: IntoIterator<Item = Nimber>,
{
    let mut seen = Vec::<bool>::new();
    for Nimber(v) in values {
        let v = v as usize;
        if v >= seen.len() {
            seen.resize(v + 1, false);
        }
        seen[v] = true;
    }
    let first_gap = seen.iter().position(|&s| !s).unwrap_or(seen.len());
    Nimber(first_gap as u32)
}

/// Reusable mex accumulator for hot loops.
#[derive(Debug, Default)]
pub(crate) struct MexScratch {
    seen: Vec<bool>,
}

impl MexScratch {
    pub fn reset(&mut self, capacity: usize) {
        self.seen.clear();
        self.seen.resize(capacity + 1, false);
    }

    pub fn insert(&mut self, v: Nimber) {
        let v = v.0 as usize;
        if v >= self.seen.len() {
            self.seen.resize(v + 1, false);
        }
        self.seen[v] = true;
    }

    pub fn mex(&self) -> Nimber {
        let first_gap = self.seen.iter().position(|&s| !s).unwrap_or(self.seen.len());
        Nimber(first_gap as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nims(v: &[u32]) -> Vec<Nimber> {
        v.iter().copied().map(Nimber).collect()
    }

    #[test]
    fn mex_examples() {
        assert_eq!(mex(nims(&[])), Nimber(0));
        assert_eq!(mex(nims(&[0, 1, 3])), Nimber(2));
        assert_eq!(mex(nims(&[1, 1, 1, 1])), Nimber(0));
        assert_eq!(mex(nims(&[2, 0, 1])), Nimber(3));
    }

    #[test]
    fn xor_is_nim_addition() {
        assert_eq!(Nimber(5) ^ Nimber(3), Nimber(6));
        let mut x = Nimber(7);
        x ^= Nimber(7);
        assert!(x.is_zero());
    }

    proptest! {
        #[test]
        fn mex_is_least_absent(values in proptest::collection::vec(0u32..20, 0..30)) {
            let m = mex(nims(&values));
            prop_assert!(!values.contains(&m.0));
            for k in 0..m.0 {
                prop_assert!(values.contains(&k));
            }
            let mut scratch = MexScratch::default();
            scratch.reset(4);
            for &v in &values {
                scratch.insert(Nimber(v));
            }
            prop_assert_eq!(scratch.mex(), m);
        }
    }
}
