//! Property tests for the literal grammar and the exact arithmetic layer.

use equigeo::cyclo::Field;
use equigeo::poly::MultiPoly;
use proptest::prelude::*;

fn field() -> Field {
    Field::new(120).unwrap()
}

#[derive(Clone, Debug)]
enum Atom {
    Int(u32),
    Ratio(u32, u32),
    Root(u32, i64),
}

impl Atom {
    fn literal(&self) -> String {
        match self {
            Atom::Int(n) => n.to_string(),
            Atom::Ratio(p, q) => format!("{p}/{q}"),
            Atom::Root(k, e) => format!("z{k}^{e}"),
        }
    }
}

fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        (0u32..400).prop_map(Atom::Int),
        (1u32..200, 1u32..60).prop_map(|(p, q)| Atom::Ratio(p, q)),
        (
            proptest::sample::select(vec![4u32, 5, 6, 8, 12, 20, 24, 30, 120]),
            -6i64..12
        )
            .prop_map(|(k, e)| Atom::Root(k, e)),
    ]
}

fn expression() -> impl Strategy<Value = String> {
    (
        proptest::collection::vec((atom(), proptest::sample::select(vec!["+", "-", "*"])), 1..6),
        atom(),
    )
        .prop_map(|(parts, last)| {
            let mut s = String::new();
            for (a, op) in parts {
                s.push_str(&a.literal());
                s.push_str(op);
            }
            s.push_str(&last.literal());
            s
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_parse_roundtrip(lit in expression()) {
        let f = field();
        let a = f.parse(&lit).unwrap();
        let b = f.parse(&a.render()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn poly_render_parse_roundtrip(lit in expression(), var in 0usize..5, e in 1u32..3) {
        let f = field();
        let c = f.parse(&lit).unwrap();
        let p = MultiPoly::variable(&f, var).pow(e).scale(&c);
        let q = MultiPoly::parse(&f, &p.render()).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn addition_commutes_and_mul_distributes(x in expression(), y in expression()) {
        let f = field();
        let a = f.parse(&x).unwrap();
        let b = f.parse(&y).unwrap();
        prop_assert_eq!(&a + &b, &b + &a);
        let s = &a + &b;
        prop_assert_eq!(&a * &s, &(&a * &a) + &(&a * &b));
    }
}
