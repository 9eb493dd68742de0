use serde::Serialize;

use super::germ::StandardGerm;
use crate::cantor_model::{Address, Point, Word};
use crate::error::{Error, Result};
use crate::exact_num::ScaleElement;
use crate::Ifs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabilizerKind {
    Trivial,
    InfiniteCyclic,
}

/// Generator `ψ_a` of the germ stabilizer at an eventually periodic point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerGenerator {
    pub point: Address,
    /// `φ_{pre / pre·per}`: contracting toward the point.
    pub germ: StandardGerm,
    /// `Λ(per)`, the slope of the germ.
    pub scale: ScaleElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerDescriptor {
    pub kind: StabilizerKind,
    pub generator: Option<StabilizerGenerator>,
    /// False when the answer rests on the aperiodicity declaration alone.
    pub computed: bool,
}

/// Germ stabilizer of a point: infinite cyclic, generated by the period
/// shift, at eventually periodic points; trivial at declared-aperiodic points.
pub fn stabilizer(ifs: &Ifs, point: &Point) -> Result<StabilizerDescriptor> {
    match point {
        Point::Periodic(a) => {
            a.check_alphabet(ifs.arity())?;
            let germ = StandardGerm::new(a.pre().clone(), a.pre().concat(a.per()));
            Ok(StabilizerDescriptor {
                kind: StabilizerKind::InfiniteCyclic,
                generator: Some(StabilizerGenerator {
                    point: a.clone(),
                    scale: germ.scale(ifs.arity()),
                    germ,
                }),
                computed: true,
            })
        }
        Point::Aperiodic { prefix } => {
            prefix.check_alphabet(ifs.arity())?;
            Ok(StabilizerDescriptor {
                kind: StabilizerKind::Trivial,
                generator: None,
                computed: false,
            })
        }
    }
}

/// Word-prefix germs `φ_{u·0^s / v·0^t}` (`0 ≤ s,t ≤ max_shift`) carrying the left
/// point `a = u·0^∞` to the left point `b = v·0^∞`.
pub fn left_point_germs(ifs: &Ifs, a: &Address, b: &Address, max_shift: usize) -> Result<Vec<StandardGerm>> {
    for p in [a, b] {
        p.check_alphabet(ifs.arity())?;
        if p.per().letters() != [0] {
            return Err(Error::Domain(format!("{p} is not a left point")));
        }
    }
    let pad = |w: &Word, s: usize| (0..s).fold(w.clone(), |acc, _| acc.pushed(0));
    let mut out = Vec::new();
    for s in 0..=max_shift {
        for t in 0..=max_shift {
            out.push(StandardGerm::new(pad(a.pre(), s), pad(b.pre(), t)));
        }
    }
    Ok(out)
}
