use std::fmt;

use crate::error::{Error, Result};

/// Orientation-preserving symmetry of the `n`-cube: axis `a` is sent to
/// axis `perm[a]`, reversed when `signs[a] = −1`. As a matrix, column `a`
/// has the single entry `signs[a]` in row `perm[a]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeSymmetry {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl CubeSymmetry {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<CubeSymmetry> {
        let s = CubeSymmetry::signed(perm, signs)?;
        if s.det() != 1 {
            return Err(Error::Invalid(format!("cube symmetry {s} reverses orientation")));
        }
        Ok(s)
    }

    /// Any signed permutation, including orientation-reversing ones.
    pub fn signed(perm: Vec<usize>, signs: Vec<i8>) -> Result<CubeSymmetry> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: signs.len() });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid(format!("axis map {perm:?} is not a permutation")));
            }
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Invalid(format!("signs {signs:?} must be ±1")));
        }
        Ok(CubeSymmetry { perm, signs })
    }

    pub fn identity(n: usize) -> CubeSymmetry {
        CubeSymmetry {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        *self == CubeSymmetry::identity(self.dim())
    }

    /// `sign(perm) · ∏ signs`.
    pub fn det(&self) -> i8 {
        let mut visited = vec![false; self.dim()];
        let mut parity = 1i8;
        for start in 0..self.dim() {
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.perm[i];
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                parity = -parity;
            }
        }
        parity * self.signs.iter().product::<i8>()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CubeSymmetry) -> CubeSymmetry {
        let perm = inner.perm.iter().map(|&p| self.perm[p]).collect();
        let signs = (0..self.dim()).map(|a| self.signs[inner.perm[a]] * inner.signs[a]).collect();
        CubeSymmetry { perm, signs }
    }

    pub fn inverse(&self) -> CubeSymmetry {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for a in 0..n {
            perm[self.perm[a]] = a;
            signs[self.perm[a]] = self.signs[a];
        }
        CubeSymmetry { perm, signs }
    }

    pub fn matrix(&self) -> Vec<Vec<i8>> {
        let n = self.dim();
        let mut m = vec![vec![0; n]; n];
        for a in 0..n {
            m[self.perm[a]][a] = self.signs[a];
        }
        m
    }

    /// Moves per-axis data: entry `a` goes to slot `perm[a]`, passed through
    /// `reverse` when the sign is negative.
    pub fn act<T: Clone>(&self, data: &[T], reverse: impl Fn(&T) -> T) -> Vec<T> {
        let mut out: Vec<T> = data.to_vec();
        for a in 0..self.dim() {
            out[self.perm[a]] = if self.signs[a] < 0 { reverse(&data[a]) } else { data[a].clone() };
        }
        out
    }

    /// The orientation-preserving group: `n! · 2^{n−1}` elements.
    pub fn all(n: usize) -> Vec<CubeSymmetry> {
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for k in 0..n {
            perms = perms
                .into_iter()
                .flat_map(|p| {
                    (0..=k).map(move |pos| {
                        let mut q = p.clone();
                        q.insert(pos, k);
                        q
                    })
                })
                .collect();
        }
        perms.sort();
        let mut out = Vec::new();
        for p in perms {
            for mask in 0..(1u32 << n) {
                let signs = (0..n).map(|a| if mask >> a & 1 == 1 { -1 } else { 1 }).collect();
                if let Ok(s) = CubeSymmetry::new(p.clone(), signs) {
                    out.push(s);
                }
            }
        }
        out
    }
}

impl fmt::Display for CubeSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.dim())
            .map(|a| format!("{}{}", if self.signs[a] < 0 { "-" } else { "+" }, self.perm[a] + 1))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}
