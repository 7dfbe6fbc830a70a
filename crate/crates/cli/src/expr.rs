//! Expression grammar: `name(k1, …, kr)`.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Zeta(Vec<u32>),
    T(Vec<u32>),
    H(u32, u32),
    TH(u32, u32),
    HatH(u32, u32),
    HatT(u32, u32),
    HatK(u32, u32),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            Expr::Zeta(v) => write!(f, "zeta({})", join(v)),
            Expr::T(v) => write!(f, "t({})", join(v)),
            Expr::H(a, b) => write!(f, "H({a},{b})"),
            Expr::TH(a, b) => write!(f, "T({a},{b})"),
            Expr::HatH(a, b) => write!(f, "hatH({a},{b})"),
            Expr::HatT(a, b) => write!(f, "hatT({a},{b})"),
            Expr::HatK(a, b) => write!(f, "hatK({a},{b})"),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, String> {
    let s = input.trim();
    let open = s
        .find('(')
        .ok_or_else(|| format!("expected name(args), got {s:?}"))?;
    if !s.ends_with(')') {
        return Err(format!("missing closing parenthesis in {s:?}"));
    }
    let name = s[..open].trim();
    let inner = &s[open + 1..s.len() - 1];
    let args: Vec<u32> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("invalid integer argument {:?}", t.trim()))
            })
            .collect::<Result<_, _>>()?
    };
    let pair = |args: &[u32]| -> Result<(u32, u32), String> {
        match args {
            [a, b] => Ok((*a, *b)),
            _ => Err(format!("{name} takes exactly two arguments")),
        }
    };
    match name {
        "zeta" => Ok(Expr::Zeta(args)),
        "t" => Ok(Expr::T(args)),
        "H" => pair(&args).map(|(a, b)| Expr::H(a, b)),
        "T" => pair(&args).map(|(a, b)| Expr::TH(a, b)),
        "hatH" => pair(&args).map(|(a, b)| Expr::HatH(a, b)),
        "hatT" => pair(&args).map(|(a, b)| Expr::HatT(a, b)),
        "hatK" => pair(&args).map(|(a, b)| Expr::HatK(a, b)),
        _ => Err(format!("unknown function {name:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse("zeta(2, 2)"), Ok(Expr::Zeta(vec![2, 2])));
        assert_eq!(parse(" t(1,2) "), Ok(Expr::T(vec![1, 2])));
        assert_eq!(parse("H(1,0)"), Ok(Expr::H(1, 0)));
        assert_eq!(parse("T(0,2)"), Ok(Expr::TH(0, 2)));
        assert_eq!(parse("hatH(1,0)"), Ok(Expr::HatH(1, 0)));
        assert_eq!(parse("hatT(0,0)").unwrap().to_string(), "hatT(0,0)");
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse("zeta 2").is_err());
        assert!(parse("zeta(2").is_err());
        assert!(parse("zeta(a)").is_err());
        assert!(parse("zeta(-1)").is_err());
        assert!(parse("H(1)").is_err());
        assert!(parse("foo(1)").is_err());
    }
}
