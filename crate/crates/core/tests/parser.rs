use mulfrac::{Error, Expr};

fn value(text: &str, t: f64) -> f64 {
    Expr::parse(text).unwrap().eval(t).unwrap()
}

#[test]
fn precedence_and_associativity() {
    let cases = [
        ("1+2*3", 7.0),
        ("2^3^2", 512.0),
        ("-2^2", -4.0),
        ("2^-2", 0.25),
        ("8/4/2", 1.0),
        ("10-4-3", 3.0),
        ("2*t^2", 8.0),
        ("-t", -2.0),
        ("exp(ln(t))", 2.0),
        ("sqrt(t*t)", 2.0),
        ("abs(1-t)", 1.0),
        ("pi - pi", 0.0),
    ];
    for (text, want) in cases {
        assert_eq!(value(text, 2.0), want, "{text}");
    }
}

#[test]
fn implicit_multiplication_is_rejected() {
    assert!(matches!(Expr::parse("2t"), Err(Error::Syntax { offset: 1, .. })));
}

#[test]
fn malformed_input() {
    for text in ["", "1+", "exp(", "(1", "1)", "sin 1", "2**3", "1..2", ","] {
        assert!(Expr::parse(text).is_err(), "{text:?} parsed");
    }
    assert!(matches!(Expr::parse("foo(t)"), Err(Error::UnknownFunction { .. })));
    assert!(matches!(Expr::parse("x"), Err(Error::UnknownFunction { .. })));
}

#[test]
fn domain_errors_surface_at_evaluation() {
    let e = Expr::parse("ln(t)").unwrap();
    assert!(matches!(e.eval(-1.0), Err(Error::EvalDomain { .. })));
    let e = Expr::parse("sqrt(t - 1)").unwrap();
    assert!(e.eval(0.0).is_err());
    assert_eq!(e.eval(5.0).unwrap(), 2.0);
}

#[test]
fn display_round_trips() {
    for text in ["-2^2", "(-2)^2", "2^3^2", "(2^3)^2", "1-(2-3)", "1/(2/t)", "exp(-t^0.5)", "1e-7*t"] {
        let e = Expr::parse(text).unwrap();
        let again = Expr::parse(&e.to_string()).unwrap();
        assert_eq!(e, again, "{text} -> {e}");
    }
}
