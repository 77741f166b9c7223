use hankelff_core::cyclosum::{cyc_from_exponent, inner_hankel_sum, CycInt, DEFAULT_BUDGET as CYC_BUDGET};
use hankelff_core::divisor::{interval_sum, variance_bruteforce, variance_formula, DivisorTable, IntervalSpec};
use hankelff_core::ffield::{Elem, Field};
use hankelff_core::fpoly::{monic_from_index, EuclidChain, Poly};
use hankelff_core::hankel::{
    char_polys, hankel_kernel_basis, hankel_rank, kernel_predict, rho_pi_profile, HankelView, SymbolSeq,
};
use hankelff_core::linalg::span_equal;
use proptest::prelude::*;

fn small_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just((2, 1)),
        Just((3, 1)),
        Just((5, 1)),
        Just((7, 1)),
        Just((2, 2)),
        Just((3, 2)),
        Just((2, 3)),
    ]
    .prop_map(|(p, e)| Field::new(p, e, None).unwrap())
}

fn elems(field: &Field, len: usize) -> Vec<Elem> {
    (0..len as u32).map(|c| field.elem(c % field.order()).unwrap()).collect()
}

fn field_and_codes(max_len: usize) -> impl Strategy<Value = (Field, Vec<u32>)> {
    small_field().prop_flat_map(move |f| {
        let q = f.order();
        (Just(f), prop::collection::vec(0..q, 1..=max_len))
    })
}

fn poly(field: &Field, codes: &[u32]) -> Poly {
    Poly::from_codes(field, codes).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms((f, c) in field_and_codes(3)) {
        let e = |i: usize| f.elem(c[i % c.len()]).unwrap();
        let (a, b, x) = (e(0), e(1), e(2));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, x)), f.add(f.mul(a, b), f.mul(a, x)));
        prop_assert_eq!(f.mul(f.mul(a, b), x), f.mul(a, f.mul(b, x)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            let inv = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, inv), Elem::ONE);
            prop_assert_eq!(f.inv(inv).unwrap(), a);
        }
        prop_assert_eq!(elems(&f, f.order() as usize).len(), f.elements().count());
    }

    #[test]
    fn divmod_round_trip((f, a) in field_and_codes(8), b_codes in prop::collection::vec(0u32..64, 1..5)) {
        let b_codes: Vec<u32> = b_codes.iter().map(|c| c % f.order()).collect();
        let a = poly(&f, &a);
        let b = poly(&f, &b_codes);
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&f, &b).unwrap();
        prop_assert_eq!(q.mul(&f, &b).add(&f, &r), a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn euclid_chain_ends_in_gcd((f, a) in field_and_codes(7), b_codes in prop::collection::vec(0u32..64, 0..6)) {
        let a = poly(&f, &a);
        prop_assume!(!a.is_zero());
        let b = poly(&f, &b_codes.iter().map(|c| c % f.order()).collect::<Vec<_>>());
        let b = b.rem(&f, &a).unwrap();
        let chain = EuclidChain::new(&f, &a, &b).unwrap();
        prop_assert!(a.rem(&f, &chain.gcd).unwrap().is_zero());
        prop_assert!(b.rem(&f, &chain.gcd).unwrap().is_zero());
        prop_assert_eq!(chain.gcd.clone(), a.gcd(&f, &b));
        for w in chain.degrees.windows(2) {
            prop_assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn profile_is_scale_invariant((f, c) in field_and_codes(9), s in 1u32..64) {
        let seq = SymbolSeq::from_codes(&f, &c).unwrap();
        let k = f.elem(1 + s % (f.order() - 1)).unwrap();
        let scaled = seq.scale(&f, k);
        prop_assert_eq!(rho_pi_profile(&f, &seq), rho_pi_profile(&f, &scaled));
        prop_assert_eq!(char_polys(&f, &seq), char_polys(&f, &scaled));
    }

    #[test]
    fn profile_bounds((f, c) in field_and_codes(10)) {
        let seq = SymbolSeq::from_codes(&f, &c).unwrap();
        let p = rho_pi_profile(&f, &seq);
        prop_assert_eq!(p.rank, p.rho + p.pi);
        prop_assert!(p.rank <= seq.n1());
        prop_assert_eq!(p.c1 + p.c2, p.n + 2);
        let near = HankelView::new(&seq, seq.n1(), seq.n2()).unwrap();
        prop_assert_eq!(hankel_rank(&f, &near), p.rank);
    }

    #[test]
    fn kernel_matches_prediction((f, c) in field_and_codes(10)) {
        let seq = SymbolSeq::from_codes(&f, &c).unwrap();
        for (l, m) in seq.shapes() {
            let view = HankelView::new(&seq, l, m).unwrap();
            let basis: Vec<Vec<Elem>> = hankel_kernel_basis(&f, &view).iter().map(|p| p.to_vector(m)).collect();
            let pred = kernel_predict(&f, &seq, l, m).unwrap();
            prop_assert_eq!(basis.len(), pred.predicted_dim);
            let gens: Vec<Vec<Elem>> = pred.generators.iter().map(|p| p.to_vector(m)).collect();
            prop_assert!(span_equal(&f, &basis, &gens), "shape {}x{}", l, m);
        }
    }

    #[test]
    fn cyclotomic_ring_laws(p in prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], xs in prop::collection::vec(-20i64..20, 3)) {
        let z = |k: i64| cyc_from_exponent(p, k).unwrap();
        let a = z(xs[0]).add(&CycInt::from_integer(p, xs[1]).unwrap()).unwrap();
        let b = z(xs[2]).add(&z(xs[0] * 3)).unwrap();
        let c = z(xs[1]);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().conj(), a.conj().mul(&b.conj()).unwrap());
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn sign_flip_conjugates(c in prop::collection::vec(0u32..3, 1..6)) {
        let f = Field::prime(3).unwrap();
        let seq = SymbolSeq::from_codes(&f, &c).unwrap();
        let plus = inner_hankel_sum(&f, &seq, 1, CYC_BUDGET).unwrap();
        let minus = inner_hankel_sum(&f, &seq, -1, CYC_BUDGET).unwrap();
        prop_assert_eq!(minus, plus.conj());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn interval_sums_are_class_functions(p in prop_oneof![Just(2u32), Just(3)], n in 1usize..6, h in 0usize..6, idx in any::<u64>()) {
        let h = h.min(n);
        let f = Field::prime(p).unwrap();
        let table = DivisorTable::build(&f, n, 1 << 24).unwrap();
        let size = (p as u64).pow(n as u32);
        let a = monic_from_index(&f, n, idx % size);
        let s = interval_sum(&table, &IntervalSpec::new(a.clone(), h)).unwrap();
        // moving the centre inside its interval changes nothing
        let b = monic_from_index(&f, n, (idx % size) / (p as u64).pow(h as u32) * (p as u64).pow(h as u32));
        prop_assert_eq!(s, interval_sum(&table, &IntervalSpec::new(b, h)).unwrap());
    }

    #[test]
    fn variance_theorem_on_small_tables(p in prop_oneof![Just(2u32), Just(3), Just(5)], n in 4usize..7, h in 0usize..7) {
        let h = h.min(n);
        let f = Field::prime(p).unwrap();
        let table = DivisorTable::build(&f, n, 1 << 24).unwrap();
        prop_assert_eq!(variance_bruteforce(&table, h).unwrap(), variance_formula(p, n, h));
    }
}
