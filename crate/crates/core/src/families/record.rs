//! One-line text records for family specs.
//!
//! ```text
//! mt n=6 m=3 d=5
//! f1 n=4 m=2 d=2 field=2 blocks=2
//! f2 n=6 m=4 d=2 field=2 blocks=3
//! dual(f2 n=6 m=4 d=2 field=2 blocks=3)
//! f4 n=12 m=4 d=8 t=8 l=6 requested_l=6
//! g n=16 m=6 d=10 l=8
//! compose(outer=<record>, inner=<record>)
//! ```
//!
//! `n`, `m` and `d` are informative on input: they are checked against the
//! rebuilt spec when present.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{
    compose, dual, make_f1, make_f2, make_f3, make_f4, make_g, make_mt, FamilyError, FamilyKind,
    FamilySpec, GVariant,
};

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, m, d) = (self.n(), self.m(), self.d());
        if let Some(o) = self.origin() {
            write!(f, "{} n={n} m={m} d={d}", o.variant.name())?;
            if let Some(t) = o.t {
                write!(f, " t={t}")?;
            }
            write!(f, " l={}", o.l)?;
            if o.variant != GVariant::G {
                write!(f, " requested_l={}", o.requested_l)?;
            }
            return Ok(());
        }
        match self.kind() {
            FamilyKind::ModifiedToeplitz => write!(f, "mt n={n} m={m} d={d}"),
            FamilyKind::F1 { field, blocks } => write!(
                f,
                "f1 n={n} m={m} d={d} field={} blocks={blocks}",
                field.k()
            ),
            FamilyKind::F2 { field, blocks } => write!(
                f,
                "f2 n={n} m={m} d={d} field={} blocks={blocks}",
                field.k()
            ),
            FamilyKind::DualOf(inner) => write!(f, "dual({inner})"),
            FamilyKind::Composed { outer, inner } => {
                write!(f, "compose(outer={outer}, inner={inner})")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn err(msg: impl Into<String>) -> FamilyError {
    FamilyError::Parse(msg.into())
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), FamilyError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(err(format!("expected `{token}` at `{}`", self.rest())))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let end = rest
            .find(|c: char| c.is_whitespace() || matches!(c, '(' | ')' | ','))
            .unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn record(&mut self) -> Result<FamilySpec, FamilyError> {
        if self.eat("dual(") {
            let inner = self.record()?;
            self.expect(")")?;
            return Ok(dual(&inner));
        }
        if self.eat("compose(") {
            self.expect("outer=")?;
            let outer = self.record()?;
            self.expect(",")?;
            self.expect("inner=")?;
            let inner = self.record()?;
            self.expect(")")?;
            return compose(&outer, &inner);
        }
        let kind = self.word();
        let mut params = BTreeMap::new();
        loop {
            self.skip_ws();
            if self.rest().is_empty() || self.rest().starts_with([')', ',']) {
                break;
            }
            let pair = self.word();
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{pair}`")))?;
            let value: usize = value
                .parse()
                .map_err(|_| err(format!("`{key}` needs an unsigned integer, got `{value}`")))?;
            if params.insert(key, value).is_some() {
                return Err(err(format!("duplicate key `{key}`")));
            }
        }
        let get = |key: &str| {
            params
                .get(key)
                .copied()
                .ok_or_else(|| err(format!("`{kind}` record is missing `{key}`")))
        };
        let spec = match kind {
            "mt" => make_mt(get("n")?, get("m")?)?,
            "f1" => make_f1(get("field")?, get("blocks")?)?,
            "f2" => make_f2(get("field")?, get("blocks")?)?,
            "g" => make_g(get("n")?, get("l")?, get("m")?)?,
            "f3" => make_f3(get("n")?, get("m")?, get("t")?)?,
            "f4" => make_f4(get("n")?, get("m")?, get("t")?)?,
            other => return Err(err(format!("unknown family `{other}`"))),
        };
        let derived = [
            ("n", spec.n()),
            ("m", spec.m()),
            ("d", spec.d()),
            ("l", spec.origin().map_or(0, |o| o.l)),
        ];
        for (key, actual) in derived {
            if let Some(&given) = params.get(key) {
                if given != actual && (key != "l" || spec.origin().is_some()) {
                    return Err(err(format!(
                        "{key}={given} disagrees with the family ({actual})"
                    )));
                }
            }
        }
        Ok(spec)
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.record()?;
        p.skip_ws();
        if !p.rest().is_empty() {
            return Err(err(format!("trailing input `{}`", p.rest())));
        }
        Ok(spec)
    }
}
