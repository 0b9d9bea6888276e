use std::sync::Arc;

use paley_core::census::census_exhaustive;
use paley_core::gf2::Gf2Matrix;
use paley_core::mds::{construct_self_dual, enumerate_omega, verify_mds, verify_self_dual};
use paley_core::parity_core::{cover_to_partition, odd_parity_covers};
use paley_core::{BitVector, FiniteField, OddParityCover, PaleyStructure, SimpleGraph};
use proptest::prelude::*;

const ORDERS: [u64; 13] = [3, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121, 125, 169];

fn field(q: u64) -> FiniteField {
    FiniteField::with_order(q).unwrap()
}

proptest! {
    #[test]
    fn field_axioms(qi in 0..ORDERS.len(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = field(ORDERS[qi]);
        let q = f.q();
        let (a, b, c) = (f.element(a % q).unwrap(), f.element(b % q).unwrap(), f.element(c % q).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.eta(f.mul(a, b)), f.eta(a) * f.eta(b));
        prop_assert_eq!(f.eta(a), f.eta_by_power(a));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.from_int(1));
        }
        let sq = f.mul(a, a);
        let r = f.sqrt(sq).unwrap();
        prop_assert_eq!(f.mul(r, r), sq);
    }

    #[test]
    fn rank_of_product_bounded(rows in 1usize..40, cols in 1usize..40, seed in any::<u64>()) {
        let mut s = seed | 1;
        let mut bit = || { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s & 1 == 1 };
        let m = Gf2Matrix::from_fn(rows, cols, |_, _| bit());
        let rank = m.rank();
        prop_assert!(rank <= rows.min(cols));
        prop_assert_eq!(rank, m.transpose().rank());
        let x = BitVector::from_bools(&(0..cols).map(|_| bit()).collect::<Vec<_>>());
        let space = m.solve_affine(&m.mul_vec(&x));
        prop_assert!(space.is_consistent());
        prop_assert_eq!(space.dimension(), cols - rank);
    }

    #[test]
    fn every_cover_is_an_even_even_partition(n in 1usize..14, seed in any::<u64>()) {
        let mut rng = paley_core::subsets::draw_rng(seed, 0);
        let g = SimpleGraph::random(&mut rng, n, 1, 2);
        let (ext, space) = odd_parity_covers(&g);
        let (covers, _) = space.enumerate(64).unwrap();
        prop_assert!(!covers.is_empty());
        for c in covers {
            let part = cover_to_partition(&ext, &OddParityCover { cover: c }).unwrap();
            prop_assert!(part.is_valid_for(&g));
        }
    }
}

#[test]
fn census_totals_are_binomial() {
    for q in [5u64, 7, 9, 11, 13] {
        let p = PaleyStructure::new(Arc::new(field(q)));
        for r in 1..=5 {
            let c = census_exhaustive(&p, r, 1 << 30).unwrap().counts;
            let total = paley_core::subsets::binomial(q, r as u64);
            assert_eq!((c.even + c.odd + c.mixed) as u128, total, "q = {q}, r = {r}");
        }
    }
}

#[test]
fn odd_length_codes_are_extended_and_mds() {
    let f = Arc::new(field(13));
    for s in enumerate_omega(&f, 5, 1 << 30).unwrap() {
        let code = construct_self_dual(&s).unwrap();
        assert!(code.is_extended());
        assert_eq!(code.length(), 6);
        assert!(verify_self_dual(&code));
        assert!(verify_mds(&code).unwrap());
    }
}
