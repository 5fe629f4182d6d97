use num_traits::{One, Zero};

use crate::rational::Rational;

/// Sends the point at `height` on the spine labelled `label` to
/// `height / (1 + label^2) * (1, label)` in the plane. Each spine lands on
/// its own segment from the origin; the apex goes to the origin.
pub fn fan_map(height: &Rational, label: &Rational) -> (Rational, Rational) {
    if height.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let scale = height / (Rational::one() + label * label);
    (scale.clone(), scale * label)
}
