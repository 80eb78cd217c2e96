use motivecalc_cli::expr::{parse_expression, Expr, Func};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (-20i64..20).prop_map(Expr::Int),
        prop::collection::vec(0u32..5, 1..4).prop_map(Expr::Partition),
        (0u32..6).prop_map(Expr::Projective),
        "[a-z][a-z0-9_]{0,4}"
            .prop_filter("not a function name", |s| Func::ALL.iter().all(|f| f.name() != s))
            .prop_map(Expr::Ident),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sum(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Product(Box::new(a), Box::new(b))),
            (prop::sample::select(Func::ALL.to_vec()), prop::collection::vec(inner, 1..4))
                .prop_map(|(f, args)| Expr::Call(f, args)),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_the_identity(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_expression(&text).unwrap(), e.clone());
        prop_assert_eq!(parse_expression(&text).unwrap().to_string(), text);
    }
}
