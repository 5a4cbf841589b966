//! Zero location for `L(s, chi)`: Newton refinement on midpoints and a
//! certified count by the argument principle.

use super::complex::ComplexInterval;
use super::zeta::{l_eval, EvalParams};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::interval::Interval;

fn l_mid(chi: &DirichletCharacter, re: f64, im: f64, params: &EvalParams) -> Result<(f64, f64)> {
    Ok(l_eval(ComplexInterval::point(re, im), chi, params)?.mid())
}

/// Newton iteration on the midpoint values, with a central-difference derivative.
pub fn refine_zero(
    chi: &DirichletCharacter,
    guess: (f64, f64),
    params: &EvalParams,
) -> Result<(f64, f64)> {
    let (mut x, mut y) = guess;
    let h = 1e-6;
    for _ in 0..60 {
        let (fr, fi) = l_mid(chi, x, y, params)?;
        let (ar, ai) = l_mid(chi, x + h, y, params)?;
        let (br, bi) = l_mid(chi, x - h, y, params)?;
        let (dr, di) = ((ar - br) / (2.0 * h), (ai - bi) / (2.0 * h));
        let den = dr * dr + di * di;
        if den == 0.0 {
            break;
        }
        let (sr, si) = ((fr * dr + fi * di) / den, (fi * dr - fr * di) / den);
        x -= sr;
        y -= si;
        if sr.abs() + si.abs() < 1e-14 {
            break;
        }
    }
    Ok((x, y))
}

// Value box of L over a boundary segment; either coordinate may be degenerate.
fn segment_box(
    chi: &DirichletCharacter,
    a: (f64, f64),
    b: (f64, f64),
    params: &EvalParams,
) -> Result<ComplexInterval> {
    let s = ComplexInterval::new(
        Interval::new(a.0.min(b.0), a.0.max(b.0)),
        Interval::new(a.1.min(b.1), a.1.max(b.1)),
    );
    l_eval(s, chi, params)
}

fn in_half_plane(z: &ComplexInterval) -> bool {
    z.re.lo() > 0.0 || z.re.hi() < 0.0 || z.im.lo() > 0.0 || z.im.hi() < 0.0
}

fn winding_segment(
    chi: &DirichletCharacter,
    a: (f64, f64),
    b: (f64, f64),
    params: &EvalParams,
    depth: u32,
) -> Result<f64> {
    let bx = segment_box(chi, a, b, params)?;
    if in_half_plane(&bx) {
        let (ar, ai) = l_mid(chi, a.0, a.1, params)?;
        let (br, bi) = l_mid(chi, b.0, b.1, params)?;
        return Ok((ar * bi - ai * br).atan2(ar * br + ai * bi));
    }
    if depth == 0 {
        return Err(Error::InvalidArgument(
            "contour passes too close to a zero; cannot certify the count".into(),
        ));
    }
    let m = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
    Ok(winding_segment(chi, a, m, params, depth - 1)? + winding_segment(chi, m, b, params, depth - 1)?)
}

/// Number of zeros of `L(s, chi)` in the open rectangle, counted by the
/// change in argument along the boundary. Each boundary piece is certified
/// to map into an open half-plane, so the winding number is exact.
pub fn count_zeros(
    chi: &DirichletCharacter,
    re: (f64, f64),
    im: (f64, f64),
    params: &EvalParams,
) -> Result<u32> {
    let corners = [(re.0, im.0), (re.1, im.0), (re.1, im.1), (re.0, im.1)];
    let mut total = 0.0;
    for i in 0..4 {
        let a = corners[i];
        let b = corners[(i + 1) % 4];
        const PIECES: usize = 8;
        for k in 0..PIECES {
            let t0 = k as f64 / PIECES as f64;
            let t1 = (k + 1) as f64 / PIECES as f64;
            let p0 = (a.0 + (b.0 - a.0) * t0, a.1 + (b.1 - a.1) * t0);
            let p1 = (a.0 + (b.0 - a.0) * t1, a.1 + (b.1 - a.1) * t1);
            total += winding_segment(chi, p0, p1, params, 24)?;
        }
    }
    let turns = total / std::f64::consts::TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() > 0.25 || rounded < 0.0 {
        return Err(Error::InvalidArgument(format!("winding number {turns} is not an integer")));
    }
    Ok(rounded as u32)
}

/// A certified box containing exactly one zero of `L(s, chi)` near `guess`.
pub fn isolate_zero(
    chi: &DirichletCharacter,
    guess: (f64, f64),
    radius: f64,
    params: &EvalParams,
) -> Result<ComplexInterval> {
    let (x, y) = refine_zero(chi, guess, params)?;
    let re = (x - radius, x + radius);
    let im = (y - radius, y + radius);
    match count_zeros(chi, re, im, params)? {
        1 => Ok(ComplexInterval::new(Interval::new(re.0, re.1), Interval::new(im.0, im.1))),
        n => Err(Error::InvalidArgument(format!("box around {x}+{y}i holds {n} zeros"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::real_quadratic_characters;

    #[test]
    fn first_zero_of_chi_minus_four() {
        // Lowest zero of L(s, chi_{-4}) on the critical line: 6.0209489...
        let chi = &real_quadratic_characters(4).unwrap()[0];
        let p = EvalParams::default();
        let b = isolate_zero(chi, (0.5, 6.0), 1e-6, &p).unwrap();
        assert!(b.im.contains(6.020948904697597));
        assert_eq!(count_zeros(chi, (0.6, 1.2), (1.0, 9.0), &p).unwrap(), 0);
    }
}
