mod common;

use std::cmp::Ordering;

use common::*;
use lorentzkit_core::numberfield::rational_sqrt;
use lorentzkit_core::{Embedding, FieldDescriptor, QuadFieldElem, Rational};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn field() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![
        Just(FieldDescriptor::RATIONALS),
        Just(FieldDescriptor::quadratic(2).unwrap()),
        Just(FieldDescriptor::quadratic(3).unwrap()),
        Just(FieldDescriptor::quadratic(5).unwrap()),
        Just(FieldDescriptor::quadratic(7).unwrap()),
    ]
}

fn elem_in(f: FieldDescriptor) -> impl Strategy<Value = QuadFieldElem> {
    (small_rational(), small_rational()).prop_map(move |(a, b)| {
        let b = if f.is_quadratic() {
            b
        } else {
            Rational::from_integer(0.into())
        };
        QuadFieldElem::new(f, a, b).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (QuadFieldElem, QuadFieldElem, QuadFieldElem)> {
    field().prop_flat_map(|f| (elem_in(f), elem_in(f), elem_in(f)))
}

proptest! {
    #[test]
    fn field_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x - &x, x.field().zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), x.field().one());
        }
    }

    #[test]
    fn conjugation_is_a_ring_involution((x, y, _) in triple()) {
        prop_assert_eq!((&x + &y).conjugate(), x.conjugate() + y.conjugate());
        prop_assert_eq!((&x * &y).conjugate(), x.conjugate() * y.conjugate());
        prop_assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn norm_is_multiplicative((x, y, _) in triple()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        let n = &x * &x.conjugate();
        prop_assert!(n.is_rational());
        prop_assert_eq!(n.a(), &x.norm());
    }

    #[test]
    fn squares_are_recognized((x, _, _) in triple()) {
        let sq = x.square();
        let root = sq.is_square().expect("a square");
        prop_assert_eq!(root.square(), sq);
        prop_assert!(root.sign_at(Embedding::Identity) != Ordering::Less);
        prop_assert!(root == x || root == -x.clone());
    }

    #[test]
    fn text_round_trip((x, _, _) in triple()) {
        let text = x.to_string();
        prop_assert_eq!(QuadFieldElem::parse_in(x.field(), &text).unwrap(), x);
    }

    #[test]
    fn enclosure_width_and_containment((x, _, _) in triple(), bits in 8u32..200) {
        let iv = x.enclosure(bits);
        let bound = Rational::new(1.into(), num_bigint::BigInt::from(1) << bits as usize);
        prop_assert!(iv.width() <= bound);
        let neg = (-x.clone()).enclosure(bits);
        prop_assert_eq!(neg, iv.neg());
    }
}

#[test]
fn sign_agrees_with_enclosure_midpoint() {
    let mut rng = rng(1);
    let mut compared = 0;
    for k in 0..1000 {
        let f = [2i64, 3, 5, 6, 7, 10, 11][k % 7];
        let f = FieldDescriptor::quadratic(f).unwrap();
        let x = nonzero_element(&mut rng, f);
        for &e in f.embeddings() {
            let iv = x.enclosure_at(e, 128);
            if iv.contains_zero() {
                continue;
            }
            let mid = iv.midpoint();
            let expected = mid.cmp(&Rational::from_integer(0.into()));
            assert_eq!(x.sign_at(e), expected, "{x} at {e:?}");
            compared += 1;
        }
    }
    assert_eq!(compared, 2000);
}

#[test]
fn near_cancellation_signs() {
    // 99/70 and 577/408 are continued-fraction convergents of sqrt(2)
    let f = q2();
    let below = QuadFieldElem::parse_in(f, "99/70-sqrt(2)").unwrap();
    let above = QuadFieldElem::parse_in(f, "577/408-sqrt(2)").unwrap();
    assert_eq!(below.sign_at(Embedding::Identity), Ordering::Greater);
    assert_eq!(above.sign_at(Embedding::Identity), Ordering::Greater);
    let under = QuadFieldElem::parse_in(f, "140/99-sqrt(2)").unwrap();
    assert_eq!(under.sign_at(Embedding::Identity), Ordering::Less);
}

/// Brute force over `p = u/w`, `q = v/w` with `|u|, |v|, w <= 50`. Once a
/// nonzero `p` is fixed, `2pq = b` determines `q`; the candidate is then
/// checked by squaring.
fn brute_force_root(x: &QuadFieldElem) -> Option<QuadFieldElem> {
    use num_integer::Integer;
    let f = x.field();
    let zero = Rational::from_integer(0.into());
    let d = Rational::from_integer(f.d().unwrap_or(0).into());
    let two = Rational::from_integer(2.into());
    for w in 1i64..=50 {
        for u in -50i64..=50 {
            if u.gcd(&w) != 1 && u != 0 {
                continue;
            }
            let p = Rational::new(u.into(), w.into());
            let candidates: Vec<Rational> = if u == 0 {
                if !f.is_quadratic() {
                    vec![zero.clone()]
                } else {
                    (0i64..=50)
                        .map(|v| Rational::new(v.into(), w.into()))
                        .collect()
                }
            } else if f.is_quadratic() {
                vec![x.b() / (&two * &p)]
            } else {
                vec![zero.clone()]
            };
            for q in candidates {
                if &(&p * &p + &d * &q * &q) == x.a() && &(&two * &p * &q) == x.b() {
                    return Some(QuadFieldElem::new(f, p, q).unwrap());
                }
            }
        }
    }
    None
}

#[test]
fn is_square_matches_brute_force() {
    let mut rng = rng(2);
    let fields = [
        FieldDescriptor::RATIONALS,
        q2(),
        FieldDescriptor::quadratic(3).unwrap(),
        FieldDescriptor::quadratic(5).unwrap(),
    ];
    let mut squares = 0;
    for k in 0..200 {
        let f = fields[k % fields.len()];
        let x = if k % 2 == 0 {
            element(&mut rng, f, 6, 5).square()
        } else {
            element(&mut rng, f, 12, 4)
        };
        let fast = x.is_square();
        let slow = brute_force_root(&x);
        assert_eq!(fast.is_some(), slow.is_some(), "{x}");
        if let Some(y) = fast {
            assert_eq!(y.square(), x);
            squares += 1;
        }
    }
    assert!(squares >= 100);
}

#[test]
fn three_is_not_a_square_in_q_sqrt2() {
    let three = q2().from_int(3);
    assert_eq!(three.is_square(), None);
    assert_eq!(brute_force_root(&three), None);
    assert_eq!(rational_sqrt(&Rational::from_integer(3.into())), None);
}

/// Newton iteration on sqrt(2) in exact rationals: from above, x and 2/x
/// bracket the root.
#[test]
fn sqrt2_enclosure_contains_newton_bracket() {
    let two = Rational::from_integer(2.into());
    let mut x = Rational::new(3.into(), 2.into());
    for _ in 0..8 {
        x = (&x + &two / &x) / &two;
    }
    let newton_lo = &two / &x;
    let newton_hi = x;
    let iv = q2().sqrt_d().unwrap().enclosure(53);
    assert!(iv.lo() <= &newton_lo && &newton_hi <= iv.hi());
    let bound = Rational::new(2.into(), num_bigint::BigInt::from(1) << 53usize);
    assert!(iv.width() <= bound);
    let (lo, hi) = iv.to_decimal(20);
    assert!(lo.starts_with("1.41421356"), "{lo}");
    assert!(hi.starts_with("1.41421356"), "{hi}");
}
