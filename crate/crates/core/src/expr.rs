//! Group expressions: the construction language for every group the engine builds.
//!
//! Text grammar (whitespace is insignificant outside names):
//!
//! ```text
//! expr   := term (("x" | "×") term)*
//! term   := atom ("[" name ("," name)* "]")?
//! atom   := C(n) | EA(p,k) | D(n) | Q(n) | S(n) | A(n)
//!         | sd(expr, expr {, [actorgen:] basegen=word})
//!         | cp(expr, expr, word=word)
//!         | quo(expr {, word})
//!         | perm(n {; "cycles", ...})
//!         | named(LABEL) | LABEL | "(" expr ")"
//! ```
//!
//! In `sd`, an `actorgen:` prefix applies to the clauses that follow it until the
//! next prefix. Base generators without a clause are fixed by that actor generator.
//! The postfix `[...]` renames the generator bindings of its operand.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Cyclic(u64),
    ElemAbelian(u64, u32),
    /// Dihedral group of order `2n`.
    Dihedral(u64),
    /// Dicyclic group of order `4n`.
    Dicyclic(u64),
    Symmetric(u32),
    Alternating(u32),
    DirectProduct(Vec<GroupExpr>),
    SemidirectProduct {
        base: Box<GroupExpr>,
        actor: Box<GroupExpr>,
        action: Vec<ActionClause>,
    },
    /// `left x right` with the central elements `identify.0` (in `left`) and
    /// `identify.1` (in `right`) identified.
    CentralProduct {
        left: Box<GroupExpr>,
        right: Box<GroupExpr>,
        identify: (String, String),
    },
    Quotient {
        group: Box<GroupExpr>,
        normal: Vec<String>,
    },
    PermGroup {
        degree: u32,
        generators: Vec<Perm>,
    },
    Named(String),
    Renamed {
        inner: Box<GroupExpr>,
        names: Vec<String>,
    },
}

/// One entry of a semidirect action: conjugation by `actor_gen` sends `base_gen` to `image`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionClause {
    pub actor_gen: Option<String>,
    pub base_gen: String,
    pub image: String,
}

impl GroupExpr {
    pub fn parse(text: &str) -> Result<GroupExpr> {
        let mut parser = Parser { src: text, pos: 0 };
        let expr = parser.expr()?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(expr)
    }

    pub fn renamed(self, names: &[&str]) -> GroupExpr {
        GroupExpr::Renamed { inner: Box::new(self), names: names.iter().map(|s| s.to_string()).collect() }
    }

    pub fn product(factors: Vec<GroupExpr>) -> GroupExpr {
        if factors.len() == 1 {
            factors.into_iter().next().unwrap()
        } else {
            GroupExpr::DirectProduct(factors)
        }
    }
}

impl std::str::FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupExpr::parse(s)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C({n})"),
            GroupExpr::ElemAbelian(p, k) => write!(f, "EA({p},{k})"),
            GroupExpr::Dihedral(n) => write!(f, "D({n})"),
            GroupExpr::Dicyclic(n) => write!(f, "Q({n})"),
            GroupExpr::Symmetric(n) => write!(f, "S({n})"),
            GroupExpr::Alternating(n) => write!(f, "A({n})"),
            GroupExpr::DirectProduct(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write_atom(f, factor)?;
                }
                Ok(())
            }
            GroupExpr::SemidirectProduct { base, actor, action } => {
                write!(f, "sd({base}, {actor}")?;
                for clause in action {
                    write!(f, ", ")?;
                    if let Some(g) = &clause.actor_gen {
                        write!(f, "{g}: ")?;
                    }
                    write!(f, "{}={}", clause.base_gen, clause.image)?;
                }
                write!(f, ")")
            }
            GroupExpr::CentralProduct { left, right, identify } => {
                write!(f, "cp({left}, {right}, {}={})", identify.0, identify.1)
            }
            GroupExpr::Quotient { group, normal } => {
                write!(f, "quo({group}")?;
                for w in normal {
                    write!(f, ", {w}")?;
                }
                write!(f, ")")
            }
            GroupExpr::PermGroup { degree, generators } => {
                write!(f, "perm({degree}")?;
                for (i, g) in generators.iter().enumerate() {
                    write!(f, "{}\"{}\"", if i == 0 { "; " } else { ", " }, g)?;
                }
                write!(f, ")")
            }
            GroupExpr::Named(label) => write!(f, "named({label})"),
            GroupExpr::Renamed { inner, names } => {
                write_atom(f, inner)?;
                write!(f, "[{}]", names.join(", "))
            }
        }
    }
}

fn write_atom(f: &mut fmt::Formatter<'_>, expr: &GroupExpr) -> fmt::Result {
    match expr {
        GroupExpr::DirectProduct(_) => write!(f, "({expr})"),
        _ => write!(f, "{expr}"),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const KEYWORDS: [&str; 11] = ["C", "EA", "D", "Q", "S", "A", "sd", "cp", "quo", "perm", "named"];

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let mut factors = vec![self.term()?];
        loop {
            self.skip_ws();
            if self.eat('x') || self.eat('×') {
                factors.push(self.term()?);
            } else {
                break;
            }
        }
        Ok(GroupExpr::product(factors))
    }

    fn term(&mut self) -> Result<GroupExpr> {
        let mut atom = self.atom()?;
        if self.eat('[') {
            let mut names = Vec::new();
            loop {
                names.push(self.word(&[',', ']'])?);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
            atom = GroupExpr::Renamed { inner: Box::new(atom), names };
        }
        Ok(atom)
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '#' {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| self.error("expected an integer"))
    }

    fn atom(&mut self) -> Result<GroupExpr> {
        self.skip_ws();
        if self.eat('(') {
            let inner = self.expr()?;
            self.expect(')')?;
            return Ok(inner);
        }
        let name = self.ident();
        if name.is_empty() {
            return Err(self.error("expected a group expression"));
        }
        if !KEYWORDS.contains(&name) {
            return Ok(GroupExpr::Named(self.label_suffix(name)?));
        }
        self.expect('(')?;
        let expr = match name {
            "C" => GroupExpr::Cyclic(self.int()?),
            "D" => GroupExpr::Dihedral(self.int()?),
            "Q" => GroupExpr::Dicyclic(self.int()?),
            "S" => GroupExpr::Symmetric(self.small_int()?),
            "A" => GroupExpr::Alternating(self.small_int()?),
            "EA" => {
                let p = self.int()?;
                self.expect(',')?;
                GroupExpr::ElemAbelian(p, self.small_int()?)
            }
            "sd" => {
                let base = self.expr()?;
                self.expect(',')?;
                let actor = self.expr()?;
                let mut action = Vec::new();
                while self.eat(',') || self.eat(';') {
                    action.push(self.clause()?);
                }
                GroupExpr::SemidirectProduct { base: Box::new(base), actor: Box::new(actor), action }
            }
            "cp" => {
                let left = self.expr()?;
                self.expect(',')?;
                let right = self.expr()?;
                self.expect(',')?;
                let u = self.word(&['='])?;
                self.expect('=')?;
                let v = self.word(&[')'])?;
                GroupExpr::CentralProduct { left: Box::new(left), right: Box::new(right), identify: (u, v) }
            }
            "quo" => {
                let group = self.expr()?;
                let mut normal = Vec::new();
                while self.eat(',') {
                    normal.push(self.word(&[',', ')'])?);
                }
                GroupExpr::Quotient { group: Box::new(group), normal }
            }
            "perm" => {
                let degree = self.small_int()?;
                let mut generators = Vec::new();
                if self.eat(';') {
                    loop {
                        generators.push(self.quoted_perm()?);
                        if !self.eat(',') {
                            break;
                        }
                    }
                }
                GroupExpr::PermGroup { degree, generators }
            }
            "named" => {
                self.skip_ws();
                let label = self.ident();
                if label.is_empty() {
                    return Err(self.error("expected a label"));
                }
                GroupExpr::Named(self.label_suffix(label)?)
            }
            _ => unreachable!(),
        };
        self.expect(')')?;
        Ok(expr)
    }

    /// Labels may carry one integer parameter, as in `W(3)`.
    fn label_suffix(&mut self, name: &str) -> Result<String> {
        let save = self.pos;
        if self.peek() == Some('(') {
            self.pos += 1;
            if let Ok(n) = self.int() {
                if self.eat(')') {
                    return Ok(format!("{name}({n})"));
                }
            }
            self.pos = save;
        }
        Ok(name.to_string())
    }

    fn small_int(&mut self) -> Result<u32> {
        let n = self.int()?;
        u32::try_from(n).map_err(|_| self.error("integer too large"))
    }

    fn quoted_perm(&mut self) -> Result<Perm> {
        self.expect('"')?;
        let end = self.rest().find('"').ok_or_else(|| self.error("unterminated string"))?;
        let text = &self.rest()[..end];
        self.pos += end + 1;
        if text.trim() == "()" || text.trim().is_empty() {
            return Ok(Perm::identity());
        }
        Perm::parse(text.trim())
    }

    fn clause(&mut self) -> Result<ActionClause> {
        let first = self.word(&[':', '='])?;
        let (actor_gen, base_gen) = if self.eat(':') {
            let base = self.word(&['='])?;
            (Some(first), base)
        } else {
            (None, first)
        };
        self.expect('=')?;
        let image = self.word(&[',', ';', ')'])?;
        Ok(ActionClause { actor_gen, base_gen, image })
    }

    /// Reads raw word text up to a stop character, treating `(...)` cycles as opaque.
    fn word(&mut self, stops: &[char]) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == '(' {
                let close = self.rest().find(')').ok_or_else(|| self.error("unclosed cycle"))?;
                self.pos += close + 1;
            } else if stops.contains(&c) || c == ')' || c == ']' {
                break;
            } else {
                self.pos += c.len_utf8();
            }
        }
        let text = self.src[start..self.pos].trim();
        if text.is_empty() {
            return Err(self.error("expected a word"));
        }
        Ok(text.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(text: &str) -> GroupExpr {
        let e = GroupExpr::parse(text).unwrap();
        let printed = e.to_string();
        assert_eq!(GroupExpr::parse(&printed).unwrap(), e, "{printed}");
        e
    }

    #[test]
    fn parses_basic_families() {
        assert_eq!(round_trip("C(8)"), GroupExpr::Cyclic(8));
        assert_eq!(round_trip(" EA( 2 , 3 ) "), GroupExpr::ElemAbelian(2, 3));
        assert_eq!(
            round_trip("C(2) x D(3)×Q(2)"),
            GroupExpr::DirectProduct(vec![GroupExpr::Cyclic(2), GroupExpr::Dihedral(3), GroupExpr::Dicyclic(2)])
        );
    }

    #[test]
    fn parses_semidirect_with_prefixes() {
        let e = round_trip("sd(C(8)[y], C(2)[x1] x C(2)[x2], x1: y=y^5; x2: y=y^3)");
        match e {
            GroupExpr::SemidirectProduct { action, .. } => {
                assert_eq!(action.len(), 2);
                assert_eq!(action[0].actor_gen.as_deref(), Some("x1"));
                assert_eq!(action[1].image, "y^3");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parses_cycle_names_and_perm_groups() {
        let e = round_trip("sd(A(5), C(2)[(12)], (123)=(12)(123)(12))");
        assert!(matches!(e, GroupExpr::SemidirectProduct { .. }));
        let p = round_trip("perm(4; \"(12)(34)\", \"(13)\")");
        assert_eq!(
            p,
            GroupExpr::PermGroup { degree: 4, generators: vec![Perm::parse("(12)(34)").unwrap(), Perm::parse("(13)").unwrap()] }
        );
    }

    #[test]
    fn parses_labels() {
        assert_eq!(round_trip("H1"), GroupExpr::Named("H1".into()));
        assert_eq!(round_trip("named(W(3)) x C(3)").to_string(), "named(W(3)) x C(3)");
        assert_eq!(round_trip("S3xS4"), GroupExpr::Named("S3xS4".into()));
        assert_eq!(round_trip("BIG12_SOL#2"), GroupExpr::Named("BIG12_SOL#2".into()));
    }

    #[test]
    fn parses_central_products_and_quotients() {
        round_trip("cp(C(27)[x], sd(EA(3,2)[a,z1], C(3)[b], a=a*z1^-1), x^9=z1)");
        round_trip("quo(C(2)[x1] x named(H1), x1)");
        round_trip("(C(2) x C(2))[u, v] x C(3)");
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["C(", "C(2) x", "sd(C(2))", "perm(3; (12))", "C(2)]", "EA(2)"] {
            assert!(GroupExpr::parse(bad).is_err(), "{bad}");
        }
    }
}
