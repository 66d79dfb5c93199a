use injdom::dsl::{parse_spec, DivisionSource, FieldSpec, RingSpec};
use injdom::Error;
use proptest::prelude::*;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        (prop::sample::select(vec![2u64, 3, 5, 7, 11]), Just(1u32)),
        (prop::sample::select(vec![2u64, 3]), 1u32..=4),
    ]
    .prop_map(|(p, k)| FieldSpec { p, k })
}

fn order(f: &FieldSpec) -> u64 {
    f.p.pow(f.k)
}

fn tri() -> impl Strategy<Value = RingSpec> {
    (field(), 1u32..=3).prop_flat_map(|(field, n)| {
        let q = order(&field);
        let m = n as usize;
        let matrix = prop::collection::vec(prop::collection::vec(0..q, m), m);
        let source = prop_oneof![
            prop::collection::vec(matrix, 1..=3).prop_map(DivisionSource::Gen),
            prop::collection::vec(0..q, m)
                .prop_map(|mut c| {
                    c.push(1);
                    c
                })
                .prop_map(DivisionSource::Companion),
            Just(DivisionSource::Scalars),
            if n == 1 {
                Just(DivisionSource::Full).boxed()
            } else {
                Just(DivisionSource::Scalars).boxed()
            },
        ];
        source.prop_map(move |source| RingSpec::Tri { field, n, source })
    })
}

fn ring() -> impl Strategy<Value = RingSpec> {
    let leaf = prop_oneof![
        (2u64..5000).prop_map(RingSpec::Zmod),
        field().prop_map(RingSpec::Gf),
        tri(),
        (field(), 1u32..=4).prop_map(|(field, dim)| RingSpec::Idealize { field, dim }),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..=4).prop_map(RingSpec::Prod),
            (inner.clone(), 1u32..=3).prop_map(|(r, k)| RingSpec::Mat(Box::new(r), k)),
            (inner.clone(), inner).prop_map(|(a, b)| RingSpec::Trimat(Box::new(a), Box::new(b))),
        ]
    })
}

/// Inserts a space after every separator; whitespace is insignificant.
fn spaced(s: &str) -> String {
    s.chars()
        .flat_map(|c| match c {
            ',' | ';' | '(' => vec![c, ' '],
            _ => vec![c],
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn print_parse_round_trip(spec in ring()) {
        let printed = spec.to_string();
        let parsed = parse_spec(&printed).unwrap();
        prop_assert_eq!(&parsed, &spec);
        prop_assert_eq!(parsed.to_string(), printed.clone());
        prop_assert_eq!(parse_spec(&spaced(&printed)).unwrap(), spec);
    }

    #[test]
    fn truncations_are_syntax_errors(spec in ring(), cut in any::<prop::sample::Index>()) {
        let printed = spec.to_string();
        let at = cut.index(printed.len());
        match parse_spec(&printed[..at]) {
            Err(Error::Syntax { pos, .. }) => prop_assert!(pos <= at),
            other => prop_assert!(false, "{:?} at {}", other, at),
        }
    }
}

#[test]
fn sugar_and_examples() {
    assert_eq!(parse_spec("gf(3)").unwrap(), parse_spec("gf(3,1)").unwrap());
    let ex = parse_spec("tri(gf(3);2;gen[[1,2],[1,1]])").unwrap();
    match &ex {
        RingSpec::Tri { field, n, source: DivisionSource::Gen(g) } => {
            assert_eq!((field.p, field.k, *n, g.len()), (3, 1, 2, 1));
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_spec("zmod(0)"), Err(Error::Semantic(_))));
    assert!(matches!(parse_spec("gf(4,2)"), Err(Error::Semantic(_))));
}
