use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Largest argument accepted by [`tower`]; the next value has `2^65536` bits.
pub const MAX_TOWER: u32 = 5;

/// `twr(0) = 1`, `twr(n) = 2^twr(n−1)`.
pub fn tower(n: u32) -> Result<BigUint> {
    if n > MAX_TOWER {
        return Err(Error::Domain(format!(
            "tower({n}) is too large to represent; at most tower({MAX_TOWER})"
        )));
    }
    let mut t = BigUint::from(1u32);
    for _ in 0..n {
        let e = t.to_u64().expect("small exponent");
        t = BigUint::from(1u32) << e;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let v: Vec<BigUint> = (0..5).map(|n| tower(n).unwrap()).collect();
        assert_eq!(v, [1u32, 2, 4, 16, 65536].map(BigUint::from));
        assert_eq!(tower(5).unwrap().bits(), 65537);
        assert!(tower(6).is_err());
    }
}
