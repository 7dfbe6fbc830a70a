//! Exact ℚ-linear combinations of `π^e`, `π^e ζ(m)` and `π^e log 2`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ExactError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialKind {
    One,
    /// ζ(m) with m odd and at least 3.
    Zeta(u32),
    Log2,
}

impl MonomialKind {
    fn rank(self) -> u8 {
        match self {
            MonomialKind::One => 0,
            MonomialKind::Zeta(_) => 1,
            MonomialKind::Log2 => 2,
        }
    }

    pub fn zeta_arg(self) -> Option<u32> {
        match self {
            MonomialKind::Zeta(m) => Some(m),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MonomialKind::One => "one",
            MonomialKind::Zeta(_) => "zeta",
            MonomialKind::Log2 => "log2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZetaMonomial {
    pub pi_exp: i64,
    pub kind: MonomialKind,
}

impl ZetaMonomial {
    pub fn pi_power(pi_exp: i64) -> Self {
        ZetaMonomial {
            pi_exp,
            kind: MonomialKind::One,
        }
    }

    /// `π^e ζ(m)`; `m` must be odd and at least 3.
    pub fn zeta(pi_exp: i64, m: u32) -> Result<Self, ExactError> {
        if m < 3 || m.is_multiple_of(2) {
            return Err(ExactError::MalformedTerm(format!(
                "zeta argument must be odd and >= 3, got {m}"
            )));
        }
        Ok(ZetaMonomial {
            pi_exp,
            kind: MonomialKind::Zeta(m),
        })
    }

    pub fn log2(pi_exp: i64) -> Self {
        ZetaMonomial {
            pi_exp,
            kind: MonomialKind::Log2,
        }
    }

    /// `pi_exp` plus the zeta argument, if any.
    pub fn weight(&self) -> i64 {
        self.pi_exp + self.kind.zeta_arg().map_or(0, i64::from)
    }

    fn sort_key(&self) -> (i64, Option<u32>, u8, i64) {
        (
            self.weight(),
            self.kind.zeta_arg(),
            self.kind.rank(),
            self.pi_exp,
        )
    }
}

impl Ord for ZetaMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for ZetaMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ZetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pi = match self.pi_exp {
            0 => String::new(),
            1 => "pi".to_string(),
            e => format!("pi^{e}"),
        };
        let rest = match self.kind {
            MonomialKind::One => String::new(),
            MonomialKind::Zeta(m) => format!("zeta({m})"),
            MonomialKind::Log2 => "log(2)".to_string(),
        };
        match (pi.is_empty(), rest.is_empty()) {
            (true, true) => write!(f, "1"),
            (false, true) => write!(f, "{pi}"),
            (true, false) => write!(f, "{rest}"),
            (false, false) => write!(f, "{pi}*{rest}"),
        }
    }
}

/// Canonical combination: keys unique, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZetaCombination {
    terms: BTreeMap<ZetaMonomial, BigRational>,
}

impl ZetaCombination {
    pub fn new() -> Self {
        ZetaCombination::default()
    }

    pub fn from_term(m: ZetaMonomial, c: BigRational) -> Self {
        let mut z = ZetaCombination::new();
        z.add_term(m, c);
        z
    }

    pub fn add_term(&mut self, m: ZetaMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &ZetaMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&ZetaMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &ZetaCombination) -> ZetaCombination {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ZetaCombination) -> ZetaCombination {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ZetaCombination {
        ZetaCombination {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> ZetaCombination {
        if s.is_zero() {
            return ZetaCombination::new();
        }
        ZetaCombination {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    /// Multiplies every term by `π^e`.
    pub fn shift_pi(&self, e: i64) -> ZetaCombination {
        ZetaCombination {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        ZetaMonomial {
                            pi_exp: m.pi_exp + e,
                            kind: m.kind,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn weights(&self) -> BTreeSet<i64> {
        self.terms.keys().map(ZetaMonomial::weight).collect()
    }

    pub fn is_homogeneous(&self, w: i64) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(m, c)| TermRecord {
                pi_exp: m.pi_exp,
                kind: m.kind.label().to_string(),
                zeta_arg: m.kind.zeta_arg(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self, ExactError> {
        let mut out = ZetaCombination::new();
        for r in records {
            let m = match (r.kind.as_str(), r.zeta_arg) {
                ("one", None) => ZetaMonomial::pi_power(r.pi_exp),
                ("log2", None) => ZetaMonomial::log2(r.pi_exp),
                ("zeta", Some(a)) => ZetaMonomial::zeta(r.pi_exp, a)?,
                (k, a) => {
                    return Err(ExactError::MalformedTerm(format!(
                        "kind {k:?} with zeta_arg {a:?}"
                    )))
                }
            };
            let parse = |s: &str| {
                s.parse::<BigInt>()
                    .map_err(|_| ExactError::MalformedTerm(format!("not an integer: {s:?}")))
            };
            let den = parse(&r.den)?;
            if !den.is_positive() {
                return Err(ExactError::MalformedTerm(format!(
                    "denominator {den} not positive"
                )));
            }
            out.add_term(m, BigRational::new(parse(&r.num)?, den));
        }
        Ok(out)
    }
}

/// JSON form of one term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub pi_exp: i64,
    pub kind: String,
    pub zeta_arg: Option<u32>,
    pub num: String,
    pub den: String,
}

impl Serialize for ZetaCombination {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZetaCombination {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        ZetaCombination::from_records(&records).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ZetaCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{m}")?;
            } else if m.pi_exp == 0 && m.kind == MonomialKind::One {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sample() -> ZetaCombination {
        let mut z = ZetaCombination::new();
        z.add_term(ZetaMonomial::zeta(0, 5).unwrap(), q(-11, 2));
        z.add_term(ZetaMonomial::zeta(2, 3).unwrap(), q(1, 2));
        z.add_term(ZetaMonomial::log2(-1), q(2, 1));
        z
    }

    #[test]
    fn canonical_cancellation() {
        let z = sample();
        assert!(z.add(&z.neg()).is_zero());
        let mut w = z.clone();
        w.add_term(ZetaMonomial::log2(-1), q(-2, 1));
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn ordering_is_by_weight_then_argument() {
        let z = sample();
        let keys: Vec<_> = z.iter().map(|(m, _)| *m).collect();
        assert_eq!(keys[0], ZetaMonomial::log2(-1));
        assert_eq!(keys[1], ZetaMonomial::zeta(2, 3).unwrap());
        assert_eq!(keys[2], ZetaMonomial::zeta(0, 5).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let z = sample();
        let s = serde_json::to_string(&z).unwrap();
        assert!(s.contains(r#"{"pi_exp":2,"kind":"zeta","zeta_arg":3,"num":"1","den":"2"}"#));
        let back: ZetaCombination = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn rejects_malformed() {
        assert!(ZetaMonomial::zeta(0, 4).is_err());
        let bad = r#"[{"pi_exp":0,"kind":"zeta","zeta_arg":null,"num":"1","den":"1"}]"#;
        assert!(serde_json::from_str::<ZetaCombination>(bad).is_err());
    }

    #[test]
    fn scaling_and_shift() {
        let z = sample().scale(&q(2, 1)).shift_pi(1);
        assert_eq!(z.coefficient(&ZetaMonomial::zeta(3, 3).unwrap()), q(1, 1));
        assert!(sample().scale(&q(0, 1)).is_zero());
        assert_eq!(
            sample().to_string(),
            "2*pi^-1*log(2) + 1/2*pi^2*zeta(3) - 11/2*zeta(5)"
        );
    }
}
