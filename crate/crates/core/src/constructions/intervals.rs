use crate::error::{Result, WmError};
use crate::poly::IntPolynomial;
use crate::setcore::IntegerSet;

/// `A \ ⋃_{n ≥ 1} [p₂(n) − p₁(n), p₂(n)]`, clipped to `[1, N]`.
///
/// With `deg p₁ ≤ deg p₂ − 2` the removed set has density zero, and no
/// `x, y₁, y₂` in the result satisfy `x + y₁ = p₁(z)`, `x + y₂ = p₂(z)`.
pub fn remove_poly_intervals(
    a: &IntegerSet,
    p1: &IntPolynomial,
    p2: &IntPolynomial,
) -> Result<IntegerSet> {
    if p1.degree() + 2 > p2.degree() {
        return Err(WmError::DegreeGap {
            deg1: p1.degree(),
            deg2: p2.degree(),
        });
    }
    if p1.leading() <= 0 || p2.leading() <= 0 {
        return Err(WmError::InvalidArgument(
            "leading coefficients must be positive".into(),
        ));
    }
    let gap = p2.sub(p1).expect("different degrees");
    let monotone = gap.monotone_from().max(p2.monotone_from());
    let horizon = a.horizon() as i128;
    let mut out = a.clone();
    let mut n: i128 = 1;
    while let (Some(lo), Some(hi)) = (gap.eval(n), p2.eval(n)) {
        if lo > horizon && n >= monotone {
            break;
        }
        let lo = lo.max(1);
        let hi = hi.min(horizon);
        for m in lo..=hi {
            out.remove(m as usize);
        }
        n += 1;
    }
    Ok(out)
}
