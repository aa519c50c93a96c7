//! Ideal membership for the finitely described ideal kinds.

use std::sync::Arc;

use crate::descriptor::{IdealDescriptor, RingDescriptor};
use crate::error::{Result, RingError};
use crate::ops;
use crate::series::Valuation;
use crate::value::RingValue;

/// Exact membership test. For `PositiveOrder` the answer is decided by the
/// valuation; a window that vanishes to its precision has valuation at
/// least that precision and therefore belongs.
pub fn ideal_contains(
    ideal: &IdealDescriptor,
    ambient: &Arc<RingDescriptor>,
    x: &RingValue,
) -> Result<bool> {
    if !x.ring().same_structure(ambient) {
        return Err(RingError::MixedRings);
    }
    match ideal {
        IdealDescriptor::Zero => Ok(x.is_zero()),
        IdealDescriptor::Whole => Ok(true),
        IdealDescriptor::MultiplesOf(g) => {
            let g = RingValue::raw(ambient.clone(), g.payload().clone());
            if g.is_zero() {
                return Ok(x.is_zero());
            }
            ops::divides(&g, x)
        }
        IdealDescriptor::PositiveOrder => {
            let s = x.payload().as_series()?;
            Ok(match s.valuation() {
                Valuation::Infinite => true,
                Valuation::Exact(v) => v >= 1,
                Valuation::AtLeast(v) => v >= 1,
            })
        }
    }
}

/// Is the ideal the whole ring: declared `Whole`, or generated by a unit?
pub fn ideal_is_whole_like(ideal: &IdealDescriptor, ambient: &Arc<RingDescriptor>) -> Result<bool> {
    match ideal {
        IdealDescriptor::Whole => Ok(true),
        IdealDescriptor::MultiplesOf(g) => {
            let g = RingValue::raw(ambient.clone(), g.payload().clone());
            ops::is_unit(&g)
        }
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::RingDescriptor;
    use crate::series::SeriesValue;
    use crate::value::Payload;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;

    #[test]
    fn multiples_membership() {
        let z = RingDescriptor::integers();
        let two = RingValue::from_i64(&z, 2);
        let ideal = IdealDescriptor::MultiplesOf(two);
        assert!(ideal_contains(&ideal, &z, &RingValue::from_i64(&z, 6)).unwrap());
        assert!(!ideal_contains(&ideal, &z, &RingValue::from_i64(&z, 3)).unwrap());
        assert!(ideal_contains(&ideal, &z, &RingValue::zero(&z)).unwrap());
    }

    #[test]
    fn positive_order_membership() {
        let ring = RingDescriptor::truncated_series(6);
        let one_plus_x = RingValue::new(
            ring.clone(),
            Payload::Series(SeriesValue::window(
                0,
                vec![BigRational::one(), BigRational::one()],
                6,
            )),
        )
        .unwrap();
        let x_cubed_third = RingValue::new(
            ring.clone(),
            Payload::Series(SeriesValue::monomial(
                BigRational::new(BigInt::from(1), BigInt::from(3)),
                2,
                6,
            )),
        )
        .unwrap();
        let ideal = IdealDescriptor::PositiveOrder;
        assert!(!ideal_contains(&ideal, &ring, &one_plus_x).unwrap());
        assert!(ideal_contains(&ideal, &ring, &x_cubed_third).unwrap());
        assert!(ideal_contains(&ideal, &ring, &RingValue::zero(&ring)).unwrap());
    }
}
