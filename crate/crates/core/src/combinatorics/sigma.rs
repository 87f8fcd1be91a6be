use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiseg::{BasicRep, Multisegment, Segment};
use crate::pp::Engine;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaDecomposition {
    /// Subsegments of σ's segment sharing the relevant endpoint, longest first.
    pub subcomponents: Vec<Segment>,
    /// Subcomponents peeled off, in peeling order.
    pub pieces: Vec<Segment>,
    /// Quiver parameter of the σ-saturated factor.
    pub saturated_part: Multisegment,
    /// Quiver parameter of the σ-reduced factor.
    pub reduced_part: Multisegment,
    /// Whether the input itself is σ-reduced.
    pub is_reduced: bool,
}

pub fn is_sigma_reduced(engine: &Engine, m: &Multisegment, sigma: BasicRep) -> Result<bool> {
    Ok(engine.hom_pi(m, &sigma.q_parameter(m.n()))?.value == 0)
}

/// Writes the component of `m` as (σ-saturated) * (σ-reduced) by repeatedly
/// factoring off the longest subcomponent that divides the remainder.
pub fn sigma_decompose(engine: &Engine, m: &Multisegment, sigma: BasicRep) -> Result<SigmaDecomposition> {
    sigma_decompose_ordered(engine, m, sigma, true)
}

/// As `sigma_decompose`, trying subcomponents shortest first when `longest_first` is false.
pub fn sigma_decompose_ordered(
    engine: &Engine,
    m: &Multisegment,
    sigma: BasicRep,
    longest_first: bool,
) -> Result<SigmaDecomposition> {
    let n = m.n();
    if sigma.segment.end() > n {
        return Err(Error::InvalidSegment { begin: sigma.segment.begin(), end: sigma.segment.end(), n });
    }
    let subcomponents = sigma.subcomponents();
    let mut order = subcomponents.clone();
    if !longest_first {
        order.reverse();
    }
    let is_reduced = is_sigma_reduced(engine, m, sigma)?;
    let limit = m.grdim().total();
    let mut rem = m.clone();
    let mut pieces = Vec::new();
    let mut reduced = is_reduced;
    while !reduced {
        if pieces.len() >= limit {
            return Err(Error::PeelingStalled { iterations: limit });
        }
        let mut progressed = false;
        for &sub in &order {
            let param = sigma.sub_q_parameter(sub, n);
            if let Some(rest) = engine.factor_unchecked(&rem, &param)?.value {
                pieces.push(sub);
                rem = rest;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(Error::PeelingStalled { iterations: pieces.len() });
        }
        reduced = is_sigma_reduced(engine, &rem, sigma)?;
    }
    let saturated_part = pieces
        .iter()
        .fold(Multisegment::empty(n), |acc, &s| acc.sum(&sigma.sub_q_parameter(s, n)));
    Ok(SigmaDecomposition { subcomponents, pieces, saturated_part, reduced_part: rem, is_reduced })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let e = Engine::default();
        let d = Segment::of(2, 3);
        let m = Multisegment::from_pairs(3, &[(2, 3)]);
        let dec = sigma_decompose(&e, &m, BasicRep::z(d)).unwrap();
        assert_eq!(dec.saturated_part, m);
        assert!(dec.reduced_part.is_empty());

        let m = Multisegment::from_pairs(3, &[(1, 2), (2, 3)]);
        let dec = sigma_decompose(&e, &m, BasicRep::z(d)).unwrap();
        assert_eq!(dec.saturated_part, Multisegment::from_pairs(3, &[(2, 3)]));
        assert_eq!(dec.reduced_part, Multisegment::from_pairs(3, &[(1, 2)]));
        assert!(!dec.is_reduced);
        assert!(is_sigma_reduced(&e, &dec.reduced_part, BasicRep::z(d)).unwrap());
    }
}
