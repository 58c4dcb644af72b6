//! Second-order jets by fourth-order central differences with one level of
//! Richardson extrapolation (sixth order overall).

use std::ops::{Add, Mul, Sub};

use crate::chart::Point;
use crate::error::Result;

/// Value, gradient and Hessian of a field at a point.
#[derive(Debug, Clone, Copy)]
pub struct Jet<T> {
    pub value: T,
    pub d1: [T; 4],
    pub d2: [[T; 4]; 4],
}

// c_{-2}, c_{-1}, c_{+1}, c_{+2} of the 4th-order first-derivative stencil, over 12h.
const D1_OFFSETS: [f64; 4] = [-2.0, -1.0, 1.0, 2.0];
const D1_WEIGHTS: [f64; 4] = [1.0, -8.0, 8.0, -1.0];

fn shifted(x: &Point, moves: &[(usize, f64)]) -> Point {
    let mut y = *x;
    for &(axis, delta) in moves {
        y[axis] += delta;
    }
    y
}

fn jet_at_step<T, F>(f: &mut F, x: &Point, h: f64) -> Result<Jet<T>>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
    F: FnMut(&Point) -> Result<T>,
{
    let center = f(x)?;
    let mut d1 = [center; 4];
    let mut d2 = [[center; 4]; 4];

    for axis in 0..4 {
        let m2 = f(&shifted(x, &[(axis, -2.0 * h)]))?;
        let m1 = f(&shifted(x, &[(axis, -h)]))?;
        let p1 = f(&shifted(x, &[(axis, h)]))?;
        let p2 = f(&shifted(x, &[(axis, 2.0 * h)]))?;
        d1[axis] = (m2 - m1 * 8.0 + p1 * 8.0 - p2) * (1.0 / (12.0 * h));
        d2[axis][axis] =
            (m2 * -1.0 + m1 * 16.0 - center * 30.0 + p1 * 16.0 - p2) * (1.0 / (12.0 * h * h));
    }

    for a in 0..4 {
        for b in (a + 1)..4 {
            let mut acc: Option<T> = None;
            for (oa, wa) in D1_OFFSETS.iter().zip(D1_WEIGHTS) {
                for (ob, wb) in D1_OFFSETS.iter().zip(D1_WEIGHTS) {
                    let term = f(&shifted(x, &[(a, oa * h), (b, ob * h)]))? * (wa * wb);
                    acc = Some(match acc {
                        Some(s) => s + term,
                        None => term,
                    });
                }
            }
            let mixed = acc.expect("stencil is non-empty") * (1.0 / (144.0 * h * h));
            d2[a][b] = mixed;
            d2[b][a] = mixed;
        }
    }

    Ok(Jet { value: center, d1, d2 })
}

/// Richardson-extrapolated jet from steps `h` and `h/2`.
pub fn jet<T, F>(mut f: F, x: &Point, h: f64) -> Result<Jet<T>>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
    F: FnMut(&Point) -> Result<T>,
{
    let coarse = jet_at_step(&mut f, x, h)?;
    let fine = jet_at_step(&mut f, x, 0.5 * h)?;
    let extrapolate = |c: T, f: T| (f * 16.0 - c) * (1.0 / 15.0);
    let mut out = fine;
    for a in 0..4 {
        out.d1[a] = extrapolate(coarse.d1[a], fine.d1[a]);
        for b in 0..4 {
            out.d2[a][b] = extrapolate(coarse.d2[a][b], fine.d2[a][b]);
        }
    }
    Ok(out)
}

/// Unextrapolated fourth-order jet; exposed for convergence studies.
pub fn jet_fourth_order<T, F>(mut f: F, x: &Point, h: f64) -> Result<Jet<T>>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
    F: FnMut(&Point) -> Result<T>,
{
    jet_at_step(&mut f, x, h)
}
