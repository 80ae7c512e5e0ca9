//! Pair descriptions `(k, W, center)` and the text syntax used to write them.
//!
//! ```text
//! spec       := algebras ":" rep ( "[" centers "]" )?
//! algebras   := "0" | simple ( "+" simple )*
//! simple     := ("sl" | "so" | "sp") "(" nat ")" | "g2" | "e6"
//! rep        := summand ( "++" summand )*
//! summand    := factor_rep ( "*" factor_rep )*
//! factor_rep := "1" | term ( "+" term )*        term := nat? "w" nat
//! centers    := "0" | center ( "," center )*
//! center     := "h1" | "h(" int ( "," int )* ")"
//! ```
//!
//! Matrix sizes name the classical algebras (`sp(4)` is `C2`, `so(7)` is `B3`).
//! E6 weights use the labelling with nodes 1-2-3-4-5 in a chain and node 6
//! attached to node 3; they are converted to Bourbaki coordinates on input.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::root_system::{e6_from_labels, e6_to_labels};
use crate::lie::{RootSystem, RootType, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Sl,
    So,
    Sp,
    G2,
    E6,
}

/// A simple factor named by its matrix family and size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub family: Family,
    pub size: usize,
}

impl SimpleFactor {
    pub fn new(family: Family, size: usize) -> Result<Self> {
        let f = Self { family, size };
        f.root_type()?;
        Ok(f)
    }

    pub fn root_type(&self) -> Result<(RootType, usize)> {
        let n = self.size;
        let bad = || Error::InvalidSpec(format!("unsupported simple factor {self}"));
        match self.family {
            Family::Sl if n >= 2 => Ok((RootType::A, n - 1)),
            Family::Sp if n == 2 => Ok((RootType::A, 1)),
            Family::Sp if n >= 4 && n.is_multiple_of(2) => Ok((RootType::C, n / 2)),
            Family::So if n >= 5 && !n.is_multiple_of(2) => Ok((RootType::B, (n - 1) / 2)),
            Family::So if n >= 6 && n.is_multiple_of(2) => Ok((RootType::D, n / 2)),
            Family::G2 => Ok((RootType::G2, 2)),
            Family::E6 => Ok((RootType::E6, 6)),
            _ => Err(bad()),
        }
    }

    pub fn root_system(&self) -> RootSystem {
        let (t, r) = self.root_type().expect("validated on construction");
        RootSystem::new(t, r).expect("admissible by construction")
    }

    pub fn rank(&self) -> usize {
        self.root_type().expect("validated").1
    }

    fn is_e6(&self) -> bool {
        self.family == Family::E6
    }

    /// External weight labels to internal coordinates.
    pub fn from_labels(&self, w: &[i32]) -> Weight {
        if self.is_e6() {
            e6_from_labels(w)
        } else {
            w.to_vec()
        }
    }

    pub fn to_labels(&self, w: &[i32]) -> Weight {
        if self.is_e6() {
            e6_to_labels(w)
        } else {
            w.to_vec()
        }
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Sl => write!(f, "sl({})", self.size),
            Family::So => write!(f, "so({})", self.size),
            Family::Sp => write!(f, "sp({})", self.size),
            Family::G2 => write!(f, "g2"),
            Family::E6 => write!(f, "e6"),
        }
    }
}

/// A center generator: the identity `h1`, or a scalar per summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CenterGen {
    Identity,
    Scaling(Vec<i64>),
}

impl CenterGen {
    pub fn scalars(&self, summands: usize) -> Vec<i64> {
        match self {
            CenterGen::Identity => vec![1; summands],
            CenterGen::Scaling(v) => v.clone(),
        }
    }
}

impl fmt::Display for CenterGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterGen::Identity => write!(f, "h1"),
            CenterGen::Scaling(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "h({})", parts.join(","))
            }
        }
    }
}

/// `k = ⊕ factors ⊕ center` acting on `W = ⊕ summands`, each summand an outer
/// tensor product of one irreducible module per factor. Weights are stored in
/// internal (Bourbaki) coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairSpec {
    pub factors: Vec<SimpleFactor>,
    pub summands: Vec<Vec<Weight>>,
    pub center: Vec<CenterGen>,
}

impl PairSpec {
    pub fn validate(&self) -> Result<()> {
        if self.summands.is_empty() {
            return Err(Error::InvalidSpec("at least one summand is required".into()));
        }
        let systems = self.root_systems();
        for (s, word) in self.summands.iter().enumerate() {
            if word.len() != self.factors.len() {
                return Err(Error::InvalidSpec(format!(
                    "summand {} names {} factors, the algebra has {}",
                    s + 1,
                    word.len(),
                    self.factors.len()
                )));
            }
            for (w, rs) in word.iter().zip(&systems) {
                rs.check_dominant(w)?;
            }
        }
        for (i, rs) in systems.iter().enumerate() {
            if self.summands.iter().all(|word| word[i].iter().all(|&x| x == 0)) {
                return Err(Error::InvalidSpec(format!(
                    "factor {} acts trivially on every summand",
                    rs.label()
                )));
            }
        }
        for c in &self.center {
            if let CenterGen::Scaling(v) = c {
                if v.len() != self.summands.len() {
                    return Err(Error::InvalidSpec(format!(
                        "center generator {c} has {} scalars for {} summands",
                        v.len(),
                        self.summands.len()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn root_systems(&self) -> Vec<RootSystem> {
        self.factors.iter().map(SimpleFactor::root_system).collect()
    }

    pub fn summand_dims(&self) -> Vec<usize> {
        let systems = self.root_systems();
        self.summands
            .iter()
            .map(|word| {
                word.iter()
                    .zip(&systems)
                    .map(|(w, rs)| {
                        crate::lie::weyl_dim(rs, w).expect("validated weight") as usize
                    })
                    .product()
            })
            .collect()
    }

    pub fn dim_w(&self) -> usize {
        self.summand_dims().iter().sum()
    }

    /// Dimension of the semisimple part.
    pub fn semisimple_dim(&self) -> usize {
        self.root_systems().iter().map(RootSystem::dimension).sum()
    }

    /// The contragredient pair `(k, W*)`.
    pub fn dual(&self) -> PairSpec {
        let systems = self.root_systems();
        PairSpec {
            factors: self.factors.clone(),
            summands: self
                .summands
                .iter()
                .map(|word| word.iter().zip(&systems).map(|(w, rs)| rs.dual_weight(w)).collect())
                .collect(),
            center: self.center.clone(),
        }
    }

    /// Twists the given factor by its outer automorphism `-w0`.
    pub fn twist_factor(&self, idx: usize) -> PairSpec {
        let rs = self.factors[idx].root_system();
        let mut out = self.clone();
        for word in &mut out.summands {
            word[idx] = rs.dual_weight(&word[idx]);
        }
        out
    }

    pub fn with_center(&self, center: Vec<CenterGen>) -> PairSpec {
        PairSpec {
            center,
            ..self.clone()
        }
    }
}

fn fmt_weight(w: &[i32]) -> String {
    let terms: Vec<String> = w
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            if c == 1 {
                format!("w{}", i + 1)
            } else {
                format!("{c}w{}", i + 1)
            }
        })
        .collect();
    if terms.is_empty() {
        "1".to_string()
    } else {
        terms.join("+")
    }
}

impl fmt::Display for PairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            write!(f, "0")?;
        } else {
            let names: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
            write!(f, "{}", names.join("+"))?;
        }
        write!(f, ": ")?;
        let summands: Vec<String> = self
            .summands
            .iter()
            .map(|word| {
                if word.is_empty() {
                    return "1".to_string();
                }
                word.iter()
                    .zip(&self.factors)
                    .map(|(w, fac)| fmt_weight(&fac.to_labels(w)))
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        write!(f, "{}", summands.join(" ++ "))?;
        if !self.center.is_empty() {
            let cs: Vec<String> = self.center.iter().map(ToString::to_string).collect();
            write!(f, " [{}]", cs.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(u64),
    Sym(&'static str),
}

struct Lexer;

impl Lexer {
    fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
        let bytes = text.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                    i += 1;
                }
                out.push((start, Tok::Word(text[start..i].to_ascii_lowercase())));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: "number too large".into(),
                })?;
                out.push((start, Tok::Num(n)));
            } else {
                let sym = match c {
                    '+' if bytes.get(i + 1) == Some(&b'+') => "++",
                    '+' => "+",
                    '*' => "*",
                    ':' => ":",
                    '[' => "[",
                    ']' => "]",
                    '(' => "(",
                    ')' => ")",
                    ',' => ",",
                    '-' => "-",
                    _ => {
                        return Err(Error::Parse {
                            pos: i,
                            msg: format!("unexpected character {c:?}"),
                        })
                    }
                };
                out.push((i, Tok::Sym(sym)));
                i += sym.len();
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    _text: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.err(format!("expected {s:?}"))
        }
    }

    fn expect_num(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected a number"),
        }
    }

    fn spec(&mut self) -> Result<PairSpec> {
        let factors = self.algebras()?;
        self.expect_sym(":")?;
        let summand_start = self.offset();
        let summands = self.rep(&factors)?;
        let mut center = Vec::new();
        if self.eat_sym("[") {
            center = self.centers(summands.len())?;
            self.expect_sym("]")?;
        }
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        let spec = PairSpec {
            factors,
            summands,
            center,
        };
        spec.validate().map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                pos: summand_start,
                msg: other.to_string(),
            },
        })?;
        Ok(spec)
    }

    fn algebras(&mut self) -> Result<Vec<SimpleFactor>> {
        if matches!(self.peek(), Some(Tok::Num(0))) {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = vec![self.simple()?];
        while self.eat_sym("+") {
            out.push(self.simple()?);
        }
        Ok(out)
    }

    fn simple(&mut self) -> Result<SimpleFactor> {
        let at = self.offset();
        let word = match self.bump() {
            Some(Tok::Word(w)) => w,
            _ => {
                self.pos -= 1;
                return self.err("expected a simple Lie algebra");
            }
        };
        let (family, size) = match word.as_str() {
            "sl" | "so" | "sp" => {
                self.expect_sym("(")?;
                let n = self.expect_num()? as usize;
                self.expect_sym(")")?;
                let fam = match word.as_str() {
                    "sl" => Family::Sl,
                    "so" => Family::So,
                    _ => Family::Sp,
                };
                (fam, n)
            }
            "g" => {
                if self.expect_num()? != 2 {
                    return self.err("only g2 is available");
                }
                (Family::G2, 7)
            }
            "e" => {
                if self.expect_num()? != 6 {
                    return self.err("only e6 is available");
                }
                (Family::E6, 27)
            }
            other => {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("unknown algebra {other:?}"),
                })
            }
        };
        SimpleFactor::new(family, size).map_err(|e| Error::Parse {
            pos: at,
            msg: e.to_string(),
        })
    }

    fn rep(&mut self, factors: &[SimpleFactor]) -> Result<Vec<Vec<Weight>>> {
        let mut out = vec![self.summand(factors)?];
        while self.eat_sym("++") {
            out.push(self.summand(factors)?);
        }
        Ok(out)
    }

    fn summand(&mut self, factors: &[SimpleFactor]) -> Result<Vec<Weight>> {
        let start = self.offset();
        let mut labels = vec![self.factor_rep()?];
        while self.eat_sym("*") {
            labels.push(self.factor_rep()?);
        }
        if factors.is_empty() {
            if labels.len() == 1 && labels[0].is_empty() {
                return Ok(Vec::new());
            }
            return Err(Error::Parse {
                pos: start,
                msg: "the zero algebra only admits the summand \"1\"".into(),
            });
        }
        if labels.len() != factors.len() {
            return Err(Error::Parse {
                pos: start,
                msg: format!(
                    "tensor word has {} factors, the algebra has {}",
                    labels.len(),
                    factors.len()
                ),
            });
        }
        let mut word = Vec::with_capacity(factors.len());
        for (terms, fac) in labels.into_iter().zip(factors) {
            let rank = fac.rank();
            let mut w = vec![0i32; rank];
            for (coef, idx) in terms {
                if idx == 0 || idx > rank {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("w{idx} is out of range for {fac}"),
                    });
                }
                w[idx - 1] += coef;
            }
            word.push(fac.from_labels(&w));
        }
        Ok(word)
    }

    /// Returns `(coefficient, index)` pairs; empty for the trivial module.
    fn factor_rep(&mut self) -> Result<Vec<(i32, usize)>> {
        if let (Some(Tok::Num(1)), next) = (self.peek(), self.peek_at(1)) {
            if !matches!(next, Some(Tok::Word(w)) if w == "w") {
                self.pos += 1;
                return Ok(Vec::new());
            }
        }
        let mut terms = vec![self.term()?];
        while matches!(self.peek(), Some(Tok::Sym("+")))
            && matches!(self.peek_at(1), Some(Tok::Num(_)) | Some(Tok::Word(_)))
        {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(i32, usize)> {
        let coef = match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                n as i32
            }
            _ => 1,
        };
        match self.peek() {
            Some(Tok::Word(w)) if w == "w" => self.pos += 1,
            _ => return self.err("expected a weight such as w1, 2w1 or 1"),
        }
        let idx = self.expect_num()? as usize;
        Ok((coef, idx))
    }

    fn centers(&mut self, summands: usize) -> Result<Vec<CenterGen>> {
        if matches!(self.peek(), Some(Tok::Num(0))) {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = vec![self.center(summands)?];
        while self.eat_sym(",") {
            out.push(self.center(summands)?);
        }
        Ok(out)
    }

    fn center(&mut self, summands: usize) -> Result<CenterGen> {
        match self.peek() {
            Some(Tok::Word(w)) if w == "h" => self.pos += 1,
            _ => return self.err("expected a center generator h1 or h(...)"),
        }
        if matches!(self.peek(), Some(Tok::Num(1))) {
            self.pos += 1;
            return Ok(CenterGen::Identity);
        }
        let at = self.offset();
        self.expect_sym("(")?;
        let mut vals = vec![self.int()?];
        while self.eat_sym(",") {
            vals.push(self.int()?);
        }
        self.expect_sym(")")?;
        if vals.len() != summands {
            return Err(Error::Parse {
                pos: at,
                msg: format!(
                    "center generator has {} scalars for {} summands",
                    vals.len(),
                    summands
                ),
            });
        }
        Ok(CenterGen::Scaling(vals))
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat_sym("-");
        let n = self.expect_num()? as i64;
        Ok(if neg { -n } else { n })
    }
}

pub fn parse_pair_spec(text: &str) -> Result<PairSpec> {
    let toks = Lexer::tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        _text: text,
    };
    p.spec()
}

impl std::str::FromStr for PairSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pair_spec(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_with_identity() {
        let s = parse_pair_spec("sl(3): w1 [h1]").unwrap();
        assert_eq!(s.factors, vec![SimpleFactor::new(Family::Sl, 3).unwrap()]);
        assert_eq!(s.summands, vec![vec![vec![1, 0]]]);
        assert_eq!(s.center, vec![CenterGen::Identity]);
        assert_eq!(s.dim_w(), 3);
    }

    #[test]
    fn parses_tensor_and_sum() {
        let s = parse_pair_spec("sl(3)+sp(4): w1 * w1").unwrap();
        assert_eq!(s.dim_w(), 12);
        assert_eq!(s.semisimple_dim(), 18);
        let t = parse_pair_spec("sl(3): w1 ++ w2 [h(1,-1)]").unwrap();
        assert_eq!(t.summands.len(), 2);
        assert_eq!(t.center, vec![CenterGen::Scaling(vec![1, -1])]);
    }

    #[test]
    fn parses_weight_sums_and_trivial_factors() {
        let s = parse_pair_spec("sl(3): w1+w2").unwrap();
        assert_eq!(s.summands[0][0], vec![1, 1]);
        let t = parse_pair_spec("sl(2)+sl(3): w1*1 ++ w1*w1 [h(1,0)]").unwrap();
        assert_eq!(t.dim_w(), 2 + 6);
        let z = parse_pair_spec("0: 1").unwrap();
        assert_eq!(z.dim_w(), 1);
        let e = parse_pair_spec("e6: w1").unwrap();
        assert_eq!(e.dim_w(), 27);
        let g = parse_pair_spec("G2 : W1").unwrap();
        assert_eq!(g.dim_w(), 7);
    }

    #[test]
    fn reports_positioned_errors() {
        let err = |s: &str| parse_pair_spec(s).unwrap_err();
        assert!(matches!(err("sl(3) w1"), Error::Parse { pos: 6, .. }));
        assert!(matches!(err("sl(3)+sl(2): w1"), Error::Parse { pos: 13, .. }));
        assert!(matches!(err("sl(3): w1 ++ w2 [h(1)]"), Error::Parse { pos: 18, .. }));
        assert!(matches!(err("sl(3): w3"), Error::Parse { .. }));
        assert!(matches!(err("so(4): w1"), Error::Parse { pos: 0, .. }));
        assert!(matches!(err("sl(3): w1 $"), Error::Parse { pos: 10, .. }));
        assert!(matches!(err("sl(2)+sl(2): w1*1"), Error::Parse { .. }));
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "sl(3): w1 [h1]",
            "sl(3)+sp(4): w1*w1",
            "sl(3): w1 ++ w2 [h(1,-1)]",
            "so(10): w5 [h1]",
            "e6: w1",
            "sl(4): 2w1+w3",
            "sl(2)+sl(3): w1*1 ++ w1*w2 [h(1,0), h(0,1)]",
            "0: 1",
        ] {
            let s = parse_pair_spec(text).unwrap();
            assert_eq!(s.to_string(), text);
            assert_eq!(parse_pair_spec(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn dual_and_twists() {
        let s = parse_pair_spec("sl(3): w1 ++ 2w1").unwrap();
        assert_eq!(s.dual().to_string(), "sl(3): w2 ++ 2w2");
        let t = parse_pair_spec("sl(3)+sl(4): w1*w1").unwrap();
        assert_eq!(t.twist_factor(1).to_string(), "sl(3)+sl(4): w1*w3");
    }
}
