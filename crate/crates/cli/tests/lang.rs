use num_rational::BigRational;
use proptest::prelude::*;
use symtrack_cli::lang::{parse, Expr};

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..20, 1i64..6).prop_map(|(p, q)| Expr::Rational(BigRational::new(p.into(), q.into()))),
        Just(Expr::Sqrt2),
        (1usize..12).prop_map(Expr::Basis),
        (1usize..12).prop_map(Expr::Gen),
        Just(Expr::Omega),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |a| Expr::Neg(b(a))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner, -3i64..5).prop_map(move |(x, k)| Expr::Pow(b(x), k)),
        ]
    })
}

/// A non-canonical rendering: every node parenthesized, explicit `*`.
fn loud(e: &Expr) -> String {
    match e {
        Expr::Neg(a) => format!("-({})", loud(a)),
        Expr::Add(a, b) => format!("(({}) + ({}))", loud(a), loud(b)),
        Expr::Sub(a, b) => format!("(({}) - ({}))", loud(a), loud(b)),
        Expr::Mul(a, b) => format!("(({})*({}))", loud(a), loud(b)),
        Expr::Pow(a, k) => format!("(({}) ^ {k})", loud(a)),
        leaf => leaf.to_string(),
    }
}

proptest! {
    #[test]
    fn canonical_print_parses_back(e in expr()) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn parse_print_parse_is_parse(e in expr()) {
        let once = parse(&loud(&e)).unwrap();
        prop_assert_eq!(&once, &e);
        let twice = parse(&once.to_string()).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn garbage_never_panics(s in "[et0-9w/()^* +\\-\n]{0,24}") {
        let _ = parse(&s);
    }
}

#[test]
fn spacing_and_line_breaks_do_not_matter() {
    let a = parse("(1/2) (e1-e2) (e1-e2)").unwrap();
    let b = parse("(1/2)*(e1 - e2)\n*(e1 - e2)").unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_string(), "1/2 (e1 - e2) (e1 - e2)");
}
