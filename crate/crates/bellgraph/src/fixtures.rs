//! Embedded reference objects: the 24-ray real two-qubit family in a fixed
//! order, and the optimized Bell functional for its correlations (local bound
//! 0, quantum value 18, η_crit = 4/5, W_crit = 7/9). The fixture order is the
//! contract for the optimized functional's rows and columns.

use crate::bell::BellFunctional;
use crate::simplex::integer;
use crate::states::{FamilyTag, Ray, VectorSet};

/// The 24 rays of the real two-qubit family: the computational basis, the
/// eight all-±1 rays, and the twelve two-component rays.
pub const PAULI24_RAYS: [[i64; 4]; 24] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 1, 1, 1],
    [1, 1, -1, -1],
    [1, -1, 1, -1],
    [1, -1, -1, 1],
    [1, 1, 1, -1],
    [1, 1, -1, 1],
    [1, -1, 1, 1],
    [-1, 1, 1, 1],
    [1, 1, 0, 0],
    [1, -1, 0, 0],
    [0, 0, 1, 1],
    [0, 0, 1, -1],
    [1, 0, 1, 0],
    [1, 0, -1, 0],
    [0, 1, 0, 1],
    [0, 1, 0, -1],
    [1, 0, 0, 1],
    [1, 0, 0, -1],
    [0, 1, 1, 0],
    [0, 1, -1, 0],
];

/// Cross-block coefficient pattern of the optimized functional: rows index
/// the second half of the settings, columns the first half.
const OPTIMIZED_CROSS_BLOCK: [[i64; 12]; 12] = [
    [5, 5, -4, -4, 5, 5, -4, -4, 5, 5, -4, -4],
    [5, 5, -4, -4, -4, -4, 5, 5, -4, -4, 5, 5],
    [-4, -4, 5, 5, 5, 5, -4, -4, -4, -4, 5, 5],
    [-4, -4, 5, 5, -4, -4, 5, 5, 5, 5, -4, -4],
    [5, -4, 5, -4, 5, -4, 5, -4, 5, -4, 5, -4],
    [5, -4, 5, -4, -4, 5, -4, 5, -4, 5, -4, 5],
    [-4, 5, -4, 5, 5, -4, 5, -4, -4, 5, -4, 5],
    [-4, 5, -4, 5, -4, 5, -4, 5, 5, -4, 5, -4],
    [5, -4, -4, 5, 5, -4, -4, 5, -4, 5, 5, -4],
    [5, -4, -4, 5, -4, 5, 5, -4, 5, -4, -4, 5],
    [-4, 5, 5, -4, 5, -4, -4, 5, 5, -4, -4, 5],
    [-4, 5, 5, -4, -4, 5, 5, -4, -4, 5, 5, -4],
];

/// The fixture vector set, in the order the optimized functional indexes.
pub fn pauli24_rays() -> VectorSet {
    let rays: Vec<Ray> = PAULI24_RAYS
        .iter()
        .map(|r| Ray::from_ints(r).expect("fixture rays are nonzero"))
        .collect();
    VectorSet::new(4, FamilyTag::User, rays).expect("fixture rays are distinct")
}

/// The optimized Bell functional for the fixture correlations: marginals −6
/// everywhere, zero blocks within each half of the settings, and the ±(5,4)
/// pattern across halves. Its local bound is 0 and its value at the fixture
/// quantum point is 18.
pub fn optimized_pauli24() -> BellFunctional {
    let mut f = BellFunctional::zero(24);
    for i in 0..24 {
        f.alice_marg[i] = integer(-6);
        f.bob_marg[i] = integer(-6);
    }
    for k in 0..12 {
        for i in 0..12 {
            f.joint[i][12 + k] = integer(OPTIMIZED_CROSS_BLOCK[k][i]);
            f.joint[12 + k][i] = integer(OPTIMIZED_CROSS_BLOCK[k][i]);
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::CorrelationPoint;
    use crate::states::{pauli_states, Field};

    #[test]
    fn fixture_rays_match_generated_family() {
        let fixture = pauli24_rays();
        let generated = pauli_states(2, Field::Real).unwrap();
        let mut a: Vec<Ray> = fixture.rays.clone();
        let mut b: Vec<Ray> = generated.rays.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn optimized_functional_shape() {
        let f = optimized_pauli24();
        assert!(f.is_swap_symmetric());
        // zero blocks within each half
        for i in 0..12 {
            for j in 0..12 {
                assert!(f.joint[i][j].numer().bits() == 0);
                assert!(f.joint[12 + i][12 + j].numer().bits() == 0);
            }
        }
        // joint coefficient sum 144: rows of the cross block sum to 6
        let total: i64 = OPTIMIZED_CROSS_BLOCK
            .iter()
            .flatten()
            .copied()
            .sum::<i64>()
            * 2;
        assert_eq!(total, 144);
    }

    #[test]
    fn optimized_functional_quantum_value() {
        let f = optimized_pauli24();
        let q = CorrelationPoint::quantum(&pauli24_rays());
        assert_eq!(f.value_at(&q), integer(18));
    }
}
