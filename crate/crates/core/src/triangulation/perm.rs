use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation of the four vertices of a tetrahedron; `p.apply(v)` is the image of v.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[u8; 4]", try_from = "[u8; 4]")]
pub struct Perm([u8; 4]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm(images))
    }

    pub fn images(&self) -> [u8; 4] {
        self.0
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn inverse(&self) -> Perm {
        let mut q = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            q[x as usize] = i as u8;
        }
        Perm(q)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(std::array::from_fn(|i| self.0[other.0[i] as usize]))
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i8 {
        let mut s = 1;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    s = -s;
                }
            }
        }
        s
    }

    pub fn all() -> Vec<Perm> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    let d = 6i32 - (a + b + c) as i32;
                    if let Some(p) = u8::try_from(d).ok().and_then(|d| Perm::new([a, b, c, d])) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}

impl From<Perm> for [u8; 4] {
    fn from(p: Perm) -> Self {
        p.0
    }
}

impl TryFrom<[u8; 4]> for Perm {
    type Error = String;
    fn try_from(v: [u8; 4]) -> Result<Self, String> {
        Perm::new(v).ok_or_else(|| format!("{v:?} is not a permutation of 0..4"))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_structure() {
        let all = Perm::all();
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().filter(|p| p.sign() == 1).count(), 12);
        for p in &all {
            assert_eq!(p.compose(&p.inverse()), Perm::IDENTITY);
            for q in &all {
                assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
            }
        }
        assert!(Perm::new([0, 0, 1, 2]).is_none());
    }
}
