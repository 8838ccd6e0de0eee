//! Steiner triple systems by the Bose (`n ≡ 3 mod 6`) and Skolem
//! (`n ≡ 1 mod 6`) constructions.

use crate::error::{Error, Result};
use crate::triple::Triple;

/// Blocks of an STS on `[n]`, colex-sorted.
pub(crate) fn sts_blocks(n: u32) -> Result<Vec<Triple>> {
    let mut blocks = match n % 6 {
        3 => bose(n),
        1 if n >= 7 => skolem(n),
        _ => {
            return Err(Error::Infeasible(format!(
                "no Steiner triple system on {n} points (need n ≡ 1, 3 mod 6, n ≥ 3)"
            )))
        }
    };
    blocks.sort_unstable();
    Ok(blocks)
}

fn bose(n: u32) -> Vec<Triple> {
    let v = n / 3;
    let half = v.div_ceil(2);
    let pt = |x: u32, i: u32| (i % 3) * v + x + 1;
    let op = |x: u32, y: u32| (x + y) * half % v;
    let mut out = Vec::new();
    for x in 0..v {
        out.push(Triple::of(pt(x, 0), pt(x, 1), pt(x, 2)));
    }
    for i in 0..3 {
        for y in 0..v {
            for x in 0..y {
                out.push(Triple::of(pt(x, i), pt(y, i), pt(op(x, y), i + 1)));
            }
        }
    }
    out
}

fn skolem(n: u32) -> Vec<Triple> {
    let k = (n - 1) / 6;
    let v = 2 * k;
    let pt = |x: u32, i: u32| (i % 3) * v + x + 1;
    let inf = n;
    // half-idempotent commutative quasigroup: relabel the addition table of Z_2k
    let op = |x: u32, y: u32| {
        let s = (x + y) % v;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            k + s / 2
        }
    };
    let mut out = Vec::new();
    for x in 0..k {
        out.push(Triple::of(pt(x, 0), pt(x, 1), pt(x, 2)));
        for i in 0..3 {
            out.push(Triple::of(inf, pt(x + k, i), pt(x, i + 1)));
        }
    }
    for i in 0..3 {
        for y in 0..v {
            for x in 0..y {
                out.push(Triple::of(pt(x, i), pt(y, i), pt(op(x, y), i + 1)));
            }
        }
    }
    out
}
