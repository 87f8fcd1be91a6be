use serde::Serialize;

use super::sigma::sigma_decompose;
use crate::error::{Error, Result};
use crate::multiseg::{is_balanced, is_regular, BasicKind, BasicRep, Multisegment, Segment};
use crate::pp::Engine;

fn check_segment(delta: Segment, n: &Multisegment) -> Result<()> {
    if delta.end() > n.n() {
        return Err(Error::InvalidSegment { begin: delta.begin(), end: delta.end(), n: n.n() });
    }
    Ok(())
}

/// `Δ * n` for the component of a single segment `Δ`.
pub fn star_segment(engine: &Engine, delta: Segment, n: &Multisegment) -> Result<Multisegment> {
    check_segment(delta, n)?;
    star_z(engine, delta, n)
}

/// `m * Δ`, through `(m * Δ)^∨ = Δ^∨ * m^∨`.
pub fn star_segment_right(engine: &Engine, m: &Multisegment, delta: Segment) -> Result<Multisegment> {
    check_segment(delta, m)?;
    Ok(star_z(engine, delta.dual(m.n()), &m.dual())?.dual())
}

fn star_z(engine: &Engine, delta: Segment, n: &Multisegment) -> Result<Multisegment> {
    let Some(t) = n.max_site() else {
        return Ok(Multisegment::single(n.n(), delta));
    };
    if t <= delta.end() {
        return Ok(n.plus(delta));
    }
    // Split along the segments of the dual parameter that end at t.
    let k = engine.mw(n)?.value;
    let (top, rest) = k.partition(|s| s.end() == t);
    let r = star_z(engine, delta, &engine.mw(&rest)?.value)?;
    Ok(engine.mw(&engine.mw(&r)?.value.sum(&top))?.value)
}

/// `C * n` where `C` is the basic component `L(Δ)`, whose quiver
/// parameter is the singletons of `Δ`.
fn star_l(engine: &Engine, delta: Segment, n: &Multisegment) -> Result<Multisegment> {
    let Some(t) = n.min_site() else {
        return Ok(Multisegment::single(n.n(), delta).singletons());
    };
    if t >= delta.begin() {
        return Ok(engine.mw(&engine.mw(n)?.value.plus(delta))?.value);
    }
    let (low, rest) = n.partition(|s| s.begin() == t);
    Ok(star_l(engine, delta, &rest)?.sum(&low))
}

/// `C_σ * n` for a basic component.
pub fn star_basic(engine: &Engine, sigma: BasicRep, n: &Multisegment) -> Result<Multisegment> {
    check_segment(sigma.segment, n)?;
    match sigma.kind {
        BasicKind::Z => star_z(engine, sigma.segment, n),
        BasicKind::L => star_l(engine, sigma.segment, n),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Peel {
    pub sigma: BasicRep,
    pub rest: Multisegment,
}

/// Splits a balanced `m` as `C_σ * C'` with `C'` balanced and σ-reduced.
pub fn balanced_peel(m: &Multisegment) -> Result<Peel> {
    if m.is_empty() {
        return Err(Error::precondition("cannot peel the empty multisegment"));
    }
    if !is_regular(m) || !is_balanced(m)? {
        return Err(Error::precondition(format!("{m} is not balanced")));
    }
    // Regular, so canonical order is strictly decreasing in begin.
    let d = m.segments();
    let k = d.len();
    let mut top = 0;
    while top + 1 < k && d[top + 1].end() < d[top].end() {
        top += 1;
    }
    let mut l = top;
    while l > 0 && d[l].precedes(d[l - 1]) {
        l -= 1;
    }
    let straddles = (l..top).any(|i| {
        (top + 1..k).any(|j| d[i + 1].end() < d[j].end() && d[j].end() < d[i].end())
    });
    if !straddles {
        let rest = m.minus(d[l]).expect("segment of m");
        return Ok(Peel { sigma: BasicRep::z(d[l]), rest });
    }
    let mut l2 = top;
    while l2 > 0 && d[l2 - 1].begin() == d[l2].begin() + 1 {
        l2 -= 1;
    }
    let sigma = BasicRep::l(Segment::of(d[top].begin(), d[l2].begin()));
    let segs = d.iter().enumerate().filter_map(|(i, &s)| if (l2..=top).contains(&i) { s.truncate_left() } else { Some(s) });
    Ok(Peel { sigma, rest: Multisegment::new(m.n(), segs)? })
}

/// `m * n` for balanced `m`, by peeling basic components off `m`.
pub fn star_balanced(engine: &Engine, m: &Multisegment, n: &Multisegment) -> Result<Multisegment> {
    if m.n() != n.n() {
        return Err(Error::AmbientMismatch(m.n(), n.n()));
    }
    if m.is_empty() {
        return Ok(n.clone());
    }
    let peel = balanced_peel(m)?;
    let sigma = peel.sigma;
    let dec = sigma_decompose(engine, n, sigma)?;
    let mut w = star_balanced(engine, &peel.rest, &dec.reduced_part)?;
    w = star_basic(engine, sigma, &w)?;
    for &piece in &dec.pieces {
        w = star_basic(engine, BasicRep { kind: sigma.kind, segment: piece }, &w)?;
    }
    Ok(w)
}

/// `m * n` for balanced `n`, through duality.
pub fn star_balanced_right(engine: &Engine, m: &Multisegment, n: &Multisegment) -> Result<Multisegment> {
    Ok(star_balanced(engine, &n.dual(), &m.dual())?.dual())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(text: &str, n: usize) -> Multisegment {
        Multisegment::parse(text, n).unwrap()
    }

    #[test]
    fn segment_recipe_examples() {
        let e = Engine::default();
        assert_eq!(star_segment(&e, Segment::of(3, 4), &ms("[1,2]", 4)).unwrap(), ms("[1,2]+[3,4]", 4));
        assert_eq!(star_segment(&e, Segment::of(2, 3), &Multisegment::empty(4)).unwrap(), ms("[2,3]", 4));
        assert_eq!(star_segment(&e, Segment::of(1, 2), &ms("[2,3]", 3)).unwrap(), ms("[1,3]+[2,2]", 3));
        assert_eq!(star_segment_right(&e, &ms("[2,3]", 3), Segment::of(1, 2)).unwrap(), ms("[1,2]+[2,3]", 3));
    }

    #[test]
    fn peel_examples() {
        let p = balanced_peel(&ms("[1,2]+[2,3]", 3)).unwrap();
        assert_eq!(p.sigma, BasicRep::z(Segment::of(2, 3)));
        assert_eq!(p.rest, ms("[1,2]", 3));
        let p = balanced_peel(&ms("[2,4]", 5)).unwrap();
        assert_eq!(p.sigma, BasicRep::z(Segment::of(2, 4)));
        assert!(p.rest.is_empty());
        assert!(balanced_peel(&Multisegment::empty(3)).is_err());
        assert!(balanced_peel(&ms("[4,5]+[2,4]+[3,3]+[1,2]", 5)).is_err());
    }

    #[test]
    fn twoladder_example() {
        let e = Engine::default();
        let m1 = ms("[1,1]+[3,4]+[4,7]", 8);
        let m2 = ms("[2,4]+[5,6]+[8,8]", 8);
        assert_eq!(star_balanced(&e, &m1, &m2).unwrap(), ms("[1,4]+[3,6]+[4,8]", 8));
    }
}
