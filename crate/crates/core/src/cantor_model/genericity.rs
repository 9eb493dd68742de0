use num_traits::{One, Pow};
use serde::Serialize;

use super::ifs::AffineIfs;
use crate::error::Result;
use crate::exact_num::{in_subgroup, relation_lattice};
use crate::Rational;

/// Which clause of condition (C) a witness violates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Clause {
    /// `Λ_k g_α = g_β` with `k ≠ 0` or `α ≠ β`.
    ScaledGap { alpha: usize, beta: usize },
    /// A non-identity gap permutation with a common ratio in `⟨λ⟩^{1/n}`.
    GapPermutation { sigma: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericityWitness {
    pub clause: Clause,
    /// Exponent vector `k` (for a permutation witness: the exponent of `μ^n`).
    pub k: Vec<i64>,
    /// Set when the witness was found over all of `ℤ^{n+1}` rather than `ℤ_+^{n+1}`.
    pub positivity_relaxed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    EqualBranch,
    IncommensurableBranch,
    Fails(GenericityWitness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::Fails(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::EqualBranch => "EqualBranch",
            Verdict::IncommensurableBranch => "IncommensurableBranch",
            Verdict::Fails(_) => "Fails",
        }
    }
}

/// Decides the genericity condition (C). Gap slots in witnesses are 1-based.
pub fn check_genericity(ifs: &AffineIfs<Rational>) -> Result<Verdict> {
    let ratios = ifs.ratios();
    let gaps = ifs.gaps();
    if ratios.iter().all(|r| *r == ratios[0]) && gaps.iter().all(|g| *g == gaps[0]) {
        return Ok(Verdict::EqualBranch);
    }

    // α = β: Λ_k = 1 with k ≠ 0.
    if let Some(k) = relation_lattice(&ratios)?.into_iter().next() {
        return Ok(Verdict::Fails(GenericityWitness {
            clause: Clause::ScaledGap { alpha: 1, beta: 1 },
            k,
            positivity_relaxed: false,
        }));
    }
    for alpha in 0..gaps.len() {
        for beta in 0..gaps.len() {
            if alpha == beta {
                continue;
            }
            let quotient = &gaps[beta] / &gaps[alpha];
            if let Some(k) = in_subgroup(&ratios, &quotient)? {
                return Ok(Verdict::Fails(GenericityWitness {
                    clause: Clause::ScaledGap { alpha: alpha + 1, beta: beta + 1 },
                    k,
                    positivity_relaxed: false,
                }));
            }
        }
    }

    let n = gaps.len();
    for sigma in permutations(n).into_iter().filter(|s| s.iter().enumerate().any(|(i, &v)| i != v)) {
        let mu = &gaps[sigma[0]] / &gaps[0];
        if !(1..n).all(|a| &gaps[sigma[a]] / &gaps[a] == mu) {
            continue;
        }
        let mu_n: Rational = Pow::pow(&mu, n as u32);
        let witness = if mu_n.is_one() {
            Some(vec![0; ratios.len()])
        } else {
            in_subgroup(&ratios, &mu_n)?
        };
        if let Some(k) = witness {
            return Ok(Verdict::Fails(GenericityWitness {
                clause: Clause::GapPermutation {
                    sigma: sigma.iter().map(|s| s + 1).collect(),
                },
                k,
                positivity_relaxed: true,
            }));
        }
    }
    Ok(Verdict::IncommensurableBranch)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
