use rand::seq::SliceRandom;
use rand::Rng;

use crate::multiseg::{is_balanced, Multisegment, Segment};

pub fn random_segment<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Segment {
    let a = rng.gen_range(1..=n);
    let b = rng.gen_range(a..=n);
    Segment::of(a, b)
}

/// Segment count uniform in `0..=max_segments`, segments drawn independently.
pub fn random_multisegment<R: Rng + ?Sized>(rng: &mut R, n: usize, max_segments: usize) -> Multisegment {
    let k = rng.gen_range(0..=max_segments);
    Multisegment::new(n, (0..k).map(|_| random_segment(rng, n))).expect("segments fit")
}

/// Uniform over regular multisegments on `n` sites with `1..=max_segments`
/// segments: a size `k` is drawn with weight `C(n,k)² k!`, then begins, ends
/// and their pairing uniformly, rejecting pairings with `begin > end`.
pub fn random_regular<R: Rng + ?Sized>(rng: &mut R, n: usize, max_segments: usize) -> Multisegment {
    let kmax = max_segments.min(n);
    let weights: Vec<f64> = (1..=kmax)
        .map(|k| {
            let c: f64 = (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product();
            c * c * (1..=k).map(|i| i as f64).product::<f64>()
        })
        .collect();
    let total: f64 = weights.iter().sum();
    let sites: Vec<usize> = (1..=n).collect();
    loop {
        let mut x = rng.gen::<f64>() * total;
        let mut k = kmax;
        for (i, w) in weights.iter().enumerate() {
            if x < *w {
                k = i + 1;
                break;
            }
            x -= w;
        }
        let mut begins: Vec<usize> = sites.choose_multiple(rng, k).copied().collect();
        let ends: Vec<usize> = sites.choose_multiple(rng, k).copied().collect();
        begins.shuffle(rng);
        if begins.iter().zip(&ends).all(|(a, b)| a <= b) {
            let segs = begins.iter().zip(&ends).map(|(&a, &b)| Segment::of(a, b));
            return Multisegment::new(n, segs).expect("segments fit");
        }
    }
}

pub fn random_balanced<R: Rng + ?Sized>(rng: &mut R, n: usize, max_segments: usize) -> Multisegment {
    loop {
        let m = random_regular(rng, n, max_segments);
        if is_balanced(&m).expect("regular") {
            return m;
        }
    }
}

/// A ladder with `1..=max_segments` segments (fewer if `n` is small).
pub fn random_ladder<R: Rng + ?Sized>(rng: &mut R, n: usize, max_segments: usize) -> Multisegment {
    let k = rng.gen_range(1..=max_segments.min(n));
    let sites: Vec<usize> = (1..=n).collect();
    loop {
        let mut begins: Vec<usize> = sites.choose_multiple(rng, k).copied().collect();
        let mut ends: Vec<usize> = sites.choose_multiple(rng, k).copied().collect();
        begins.sort_unstable();
        ends.sort_unstable();
        if begins.iter().zip(&ends).all(|(a, b)| a <= b) {
            let segs = begins.iter().zip(&ends).map(|(&a, &b)| Segment::of(a, b));
            return Multisegment::new(n, segs).expect("segments fit");
        }
    }
}
