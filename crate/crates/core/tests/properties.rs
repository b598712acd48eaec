use degwild::degfun::{
    delta, delta_localized, gr, localized_derivation, sample, sample_rng, DegreeFunction, Graded, LocalizedElem, Localized,
};
use degwild::fields::{Field, MultiQuad, RatFunc, Rational};
use degwild::laurent::{substitute, LaurentSeries};
use degwild::poly::{Derivation, Poly, Weighting};
use degwild::value::GroupValue;
use degwild::wild::{expand, reconstruct};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type P = Poly<Rational>;

fn poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> P {
    sample::random_poly(rng, n, max_deg, 5, |r| sample::small_rational(r, 7))
}

fn nonzero(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> P {
    sample::random_nonzero_poly(rng, n, max_deg, 5, |r| sample::nonzero_rational(r, 7))
}

fn derivation(rng: &mut ChaCha8Rng, n: usize) -> Derivation<Rational> {
    Derivation::new((0..n).map(|_| poly(rng, n, 3)).collect()).unwrap()
}

fn weights(rng: &mut ChaCha8Rng, n: usize, allow_negative: bool) -> Weighting {
    let lo = if allow_negative { -3 } else { 1 };
    Weighting::from_ints(&(0..n).map(|_| rng.gen_range(lo..=4)).collect::<Vec<_>>())
}

fn series(rng: &mut ChaCha8Rng) -> LaurentSeries<Rational> {
    let low = rng.gen_range(-4..=3);
    let len = rng.gen_range(1..=6);
    let mut coeffs: Vec<Rational> = (0..len).map(|_| sample::small_rational(rng, 5)).collect();
    coeffs[0] = sample::nonzero_rational(rng, 5);
    let prec = low + len as i64 + rng.gen_range(0..=3);
    LaurentSeries::new(low, coeffs, Some(prec))
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn leibniz(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let n = rng.gen_range(1..=3);
        let d = derivation(&mut rng, n);
        let (f, g) = (poly(&mut rng, n, 4), poly(&mut rng, n, 4));
        let lhs = d.apply(&f.mul(&g)).unwrap();
        let rhs = f.mul(&d.apply(&g).unwrap()).add(&g.mul(&d.apply(&f).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn components_reassemble(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let n = rng.gen_range(1..=3);
        let w = weights(&mut rng, n, true);
        let f = poly(&mut rng, n, 6);
        let sum = w.components(&f).values().fold(P::zero(n), |acc, c| acc.add(c));
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn gr_is_multiplicative(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let n = rng.gen_range(1..=3);
        let w = weights(&mut rng, n, true);
        let (f, g) = (poly(&mut rng, n, 4), poly(&mut rng, n, 4));
        prop_assert_eq!(gr(&w, &f.mul(&g)), gr(&w, &f).mul(&gr(&w, &g)));
    }

    #[test]
    fn jump_of_product_is_bounded(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let n = rng.gen_range(1..=3);
        let df = Graded::new(weights(&mut rng, n, true));
        let d = derivation(&mut rng, n);
        let (f, g) = (nonzero(&mut rng, n, 4), nonzero(&mut rng, n, 4));
        let bound = delta(&df, &d, &f).unwrap().max(delta(&df, &d, &g).unwrap());
        prop_assert!(delta(&df, &d, &f.mul(&g)).unwrap() <= bound);
    }

    #[test]
    fn lift_is_multiplicative(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let draw = |rng: &mut ChaCha8Rng| {
            MultiQuad::from_coords(2, (0..4u32).map(|m| (m, sample::nonzero_ratfunc(rng)))).unwrap()
        };
        let (x, y) = (draw(&mut rng), draw(&mut rng));
        let top = rng.gen_range(2..=5);
        let lifted = x.lift(top).unwrap().try_mul(&y.lift(top).unwrap()).unwrap();
        prop_assert_eq!(lifted, x.try_mul(&y).unwrap().lift(top).unwrap());
    }

    #[test]
    fn multiquad_inverse(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let mut coords = Vec::new();
        // at most three coordinates keeps the rational-function arithmetic small
        for m in 0..8u32 {
            if coords.len() < 3 && rng.gen_bool(0.5) {
                coords.push((m, sample::nonzero_ratfunc(&mut rng)));
            }
        }
        let x = MultiQuad::from_coords(3, coords).unwrap();
        prop_assume!(!x.is_zero());
        let inv = x.try_inv().unwrap();
        prop_assert_eq!(x.try_mul(&inv).unwrap(), MultiQuad::scalar(3, RatFunc::one()));
    }

    #[test]
    fn ord_is_additive(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let (a, b) = (series(&mut rng), series(&mut rng));
        prop_assert_eq!(a.mul(&b).ord().unwrap(), a.ord().unwrap() + b.ord().unwrap());
    }

    #[test]
    fn product_precision_is_sound(seed in any::<u64>()) {
        // Any completion of the known coefficients gives the same product
        // below the reported precision.
        let mut rng = sample_rng(seed, 0);
        let (a, b) = (series(&mut rng), series(&mut rng));
        let complete = |s: &LaurentSeries<Rational>, rng: &mut ChaCha8Rng| {
            let low = s.ord().unwrap();
            let mut coeffs: Vec<Rational> = (low..s.precision().unwrap()).map(|e| s.coeff(e).unwrap()).collect();
            coeffs.extend((0..4).map(|_| sample::small_rational(rng, 5)));
            LaurentSeries::exact(low, coeffs)
        };
        let prod = a.mul(&b);
        let exact = complete(&a, &mut rng).mul(&complete(&b, &mut rng));
        prop_assert!(exact.is_exact());
        let prec = prod.precision().unwrap();
        for e in prod.ord().unwrap()..prec {
            prop_assert_eq!(prod.coeff(e).unwrap(), exact.coeff(e).unwrap());
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let args = vec![series(&mut rng), series(&mut rng)];
        let (f, g) = (poly(&mut rng, 2, 3), poly(&mut rng, 2, 3));
        let sf = substitute(&f, &args).unwrap();
        let sg = substitute(&g, &args).unwrap();
        prop_assert!(substitute(&f.mul(&g), &args).unwrap().sub(&sf.mul(&sg)).all_known_zero());
        prop_assert!(substitute(&f.add(&g), &args).unwrap().sub(&sf.add(&sg)).all_known_zero());
    }

    #[test]
    fn expansion_round_trip(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let n = rng.gen_range(1..=2);
        let a: Vec<P> = (0..5).map(|_| poly(&mut rng, n, 2).filter_terms(|m| m.exps()[n - 1] == 0)).collect();
        let f = nonzero(&mut rng, n, 20);
        let e = expand(&f, &a).unwrap();
        let back = reconstruct(&e, &a, n);
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(expand(&back, &a).unwrap(), e);
    }

    #[test]
    fn localized_degree_and_derivation(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let n = rng.gen_range(1..=3);
        let base = Graded::new(weights(&mut rng, n, false));
        let df = Localized::new(base.clone());
        let d = derivation(&mut rng, n);
        let (x, s) = (nonzero(&mut rng, n, 3), nonzero(&mut rng, n, 3));
        let e = LocalizedElem::new(x.clone(), s.clone()).unwrap();
        let expected = base.degree(&x).unwrap().checked_sub(&base.degree(&s).unwrap()).unwrap();
        prop_assert_eq!(df.degree(&e).unwrap(), expected);
        // x/s rescaled by a common factor is the same element
        let c = nonzero(&mut rng, n, 2);
        let scaled = LocalizedElem::new(x.mul(&c), s.mul(&c)).unwrap();
        prop_assert_eq!(df.degree(&scaled).unwrap(), df.degree(&e).unwrap());
        prop_assert!(localized_derivation(&d, &scaled).unwrap().same_fraction(&localized_derivation(&d, &e).unwrap()));
        let inverse = LocalizedElem::new(P::one(n), s.clone()).unwrap();
        prop_assert_eq!(delta_localized(&df, &d, &inverse).unwrap(), delta(&base, &d, &s).unwrap());
    }
}

#[test]
fn zero_has_negative_infinite_jump() {
    let df = Graded::new(Weighting::from_ints(&[1]));
    let d = Derivation::partial(1, 0);
    assert_eq!(delta(&df, &d, &P::zero(1)).unwrap(), GroupValue::NegInfinity);
}
