//! The term language for signal-flow diagrams: grammar, parser, typechecker,
//! register enumeration, and pretty-printer.
//!
//! Concrete syntax: `;` composes sequentially (diagrammatic order), `|` is
//! the monoidal product and binds tighter, `id@n` and `tw` are the structural
//! generators, `scalar(q)` / `co_scalar(q)` take a rational literal, and
//! parentheses group. `#` starts a line comment. Files use the `.sfg`
//! extension.

use std::fmt;

/// Exact rational literal attached to scalar generators, kept in lowest terms
/// with positive denominator so syntactically equal terms compare equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ScalarLit {
    num: i64,
    den: i64,
}

impl ScalarLit {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "scalar literal with zero denominator");
        let g = gcd_i64(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let sign = if den < 0 { -1 } else { 1 };
        ScalarLit {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn int(n: i64) -> Self {
        ScalarLit { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }
}

fn gcd_i64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl fmt::Display for ScalarLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// The generator alphabet. Each mirror (`Co*`) denotes the opposite relation
/// of its counterpart.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    Add,
    Zero,
    Copy,
    Discard,
    Delay,
    Scalar(ScalarLit),
    CoAdd,
    CoZero,
    CoCopy,
    CoDiscard,
    CoDelay,
    CoScalar(ScalarLit),
}

impl Generator {
    pub fn arity(&self) -> usize {
        match self {
            Generator::Add => 2,
            Generator::Zero => 0,
            Generator::Copy => 1,
            Generator::Discard => 1,
            Generator::Delay => 1,
            Generator::Scalar(_) => 1,
            Generator::CoAdd => 1,
            Generator::CoZero => 1,
            Generator::CoCopy => 2,
            Generator::CoDiscard => 0,
            Generator::CoDelay => 1,
            Generator::CoScalar(_) => 1,
        }
    }

    pub fn coarity(&self) -> usize {
        match self {
            Generator::Add => 1,
            Generator::Zero => 1,
            Generator::Copy => 2,
            Generator::Discard => 0,
            Generator::Delay => 1,
            Generator::Scalar(_) => 1,
            Generator::CoAdd => 2,
            Generator::CoZero => 0,
            Generator::CoCopy => 1,
            Generator::CoDiscard => 1,
            Generator::CoDelay => 1,
            Generator::CoScalar(_) => 1,
        }
    }

    /// The horizontally flipped generator.
    pub fn mirrored(&self) -> Generator {
        match self {
            Generator::Add => Generator::CoAdd,
            Generator::Zero => Generator::CoZero,
            Generator::Copy => Generator::CoCopy,
            Generator::Discard => Generator::CoDiscard,
            Generator::Delay => Generator::CoDelay,
            Generator::Scalar(a) => Generator::CoScalar(*a),
            Generator::CoAdd => Generator::Add,
            Generator::CoZero => Generator::Zero,
            Generator::CoCopy => Generator::Copy,
            Generator::CoDiscard => Generator::Discard,
            Generator::CoDelay => Generator::Delay,
            Generator::CoScalar(a) => Generator::Scalar(*a),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Add => "add",
            Generator::Zero => "zero",
            Generator::Copy => "copy",
            Generator::Discard => "discard",
            Generator::Delay => "delay",
            Generator::Scalar(_) => "scalar",
            Generator::CoAdd => "co_add",
            Generator::CoZero => "co_zero",
            Generator::CoCopy => "co_copy",
            Generator::CoDiscard => "co_discard",
            Generator::CoDelay => "co_delay",
            Generator::CoScalar(_) => "co_scalar",
        }
    }
}

/// AST of the diagram language.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Gen(Generator),
    Id(usize),
    Twist,
    Seq(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
}

impl Term {
    pub fn seq(a: Term, b: Term) -> Term {
        Term::Seq(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: Term, b: Term) -> Term {
        Term::Tensor(Box::new(a), Box::new(b))
    }

    /// The horizontal mirror image: generators flip, composition reverses.
    pub fn mirrored(&self) -> Term {
        match self {
            Term::Gen(g) => Term::Gen(g.mirrored()),
            Term::Id(n) => Term::Id(*n),
            Term::Twist => Term::Twist,
            Term::Seq(a, b) => Term::seq(b.mirrored(), a.mirrored()),
            Term::Tensor(a, b) => Term::tensor(a.mirrored(), b.mirrored()),
        }
    }
}

/// Kind of state-holding generator, in diagram traversal order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RegisterKind {
    Delay,
    CoDelay,
}

/// A term together with its boundary type and enumerated register sites.
///
/// Registers are numbered by depth-first, left-to-right traversal (`Seq` left
/// before right, `Tensor` top before bottom), which fixes the meaning of a
/// register assignment vector once and for all.
#[derive(Clone, Debug)]
pub struct TypedTerm {
    pub term: Term,
    pub arity: usize,
    pub coarity: usize,
    pub registers: Vec<RegisterKind>,
}

/// Boundary mismatch inside a sequential composite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeError {
    pub left_coarity: usize,
    pub right_arity: usize,
    pub at: String,
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "boundary mismatch in `{}`: left side has coarity {}, right side has arity {}",
            self.at, self.left_coarity, self.right_arity
        )
    }
}

impl std::error::Error for TypeError {}

/// Compute arity/coarity bottom-up and enumerate registers.
pub fn typecheck(term: &Term) -> Result<TypedTerm, TypeError> {
    fn go(t: &Term, regs: &mut Vec<RegisterKind>) -> Result<(usize, usize), TypeError> {
        match t {
            Term::Gen(g) => {
                match g {
                    Generator::Delay => regs.push(RegisterKind::Delay),
                    Generator::CoDelay => regs.push(RegisterKind::CoDelay),
                    _ => {}
                }
                Ok((g.arity(), g.coarity()))
            }
            Term::Id(n) => Ok((*n, *n)),
            Term::Twist => Ok((2, 2)),
            Term::Seq(a, b) => {
                let (m, k) = go(a, regs)?;
                let (k2, n) = go(b, regs)?;
                if k != k2 {
                    return Err(TypeError {
                        left_coarity: k,
                        right_arity: k2,
                        at: pretty(t),
                    });
                }
                Ok((m, n))
            }
            Term::Tensor(a, b) => {
                let (m1, n1) = go(a, regs)?;
                let (m2, n2) = go(b, regs)?;
                Ok((m1 + m2, n1 + n2))
            }
        }
    }
    let mut registers = Vec::new();
    let (arity, coarity) = go(term, &mut registers)?;
    Ok(TypedTerm {
        term: term.clone(),
        arity,
        coarity,
        registers,
    })
}

// --- pretty printer --------------------------------------------------------

/// Canonical text form; `parse(pretty(t)) == t` for every AST.
pub fn pretty(term: &Term) -> String {
    fn atom(t: &Term, out: &mut String) {
        match t {
            Term::Seq(_, _) | Term::Tensor(_, _) => {
                out.push('(');
                go(t, out);
                out.push(')');
            }
            _ => go(t, out),
        }
    }
    fn go(t: &Term, out: &mut String) {
        match t {
            Term::Gen(Generator::Scalar(a)) => {
                out.push_str(&format!("scalar({a})"));
            }
            Term::Gen(Generator::CoScalar(a)) => {
                out.push_str(&format!("co_scalar({a})"));
            }
            Term::Gen(g) => out.push_str(g.name()),
            Term::Id(n) => out.push_str(&format!("id@{n}")),
            Term::Twist => out.push_str("tw"),
            Term::Seq(a, b) => {
                atom(a, out);
                out.push_str(" ; ");
                atom(b, out);
            }
            Term::Tensor(a, b) => {
                atom(a, out);
                out.push_str(" | ");
                atom(b, out);
            }
        }
    }
    let mut out = String::new();
    go(term, &mut out);
    out
}

// --- parser ----------------------------------------------------------------

/// Syntax error with 1-based line/column position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Semi,
    Pipe,
    LParen,
    RParen,
    At,
    Slash,
    Minus,
    Nat(u64),
    Ident(String),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match ch {
            '#' => {
                while let Some(&c) = chars.peek() {
                    chars.next();
                    bump(c, &mut line, &mut col);
                    if c == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            ';' | '|' | '(' | ')' | '@' | '/' | '-' => {
                chars.next();
                bump(ch, &mut line, &mut col);
                let tok = match ch {
                    ';' => Tok::Semi,
                    '|' => Tok::Pipe,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '@' => Tok::At,
                    '/' => Tok::Slash,
                    _ => Tok::Minus,
                };
                toks.push(Spanned {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    text.push(c);
                    chars.next();
                    bump(c, &mut line, &mut col);
                }
                let n: u64 = text.parse().map_err(|_| ParseError {
                    line: tline,
                    col: tcol,
                    msg: format!("number `{text}` out of range"),
                })?;
                toks.push(Spanned {
                    tok: Tok::Nat(n),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_lowercase() || c == '_' => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if !(c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_') {
                        break;
                    }
                    text.push(c);
                    chars.next();
                    bump(c, &mut line, &mut col);
                }
                toks.push(Spanned {
                    tok: Tok::Ident(text),
                    line: tline,
                    col: tcol,
                });
            }
            c => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn advance(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    // term := tensor (';' tensor)*
    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.tensor()?;
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            let rhs = self.tensor()?;
            acc = Term::seq(acc, rhs);
        }
        Ok(acc)
    }

    // tensor := atom ('|' atom)*
    fn tensor(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            let rhs = self.atom()?;
            acc = Term::tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn rational(&mut self) -> Result<ScalarLit, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let num = match self.advance() {
            Some(Tok::Nat(n)) => n as i64,
            _ => return self.err("expected a rational literal"),
        };
        let den = if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            match self.advance() {
                Some(Tok::Nat(0)) => return self.err("zero denominator"),
                Some(Tok::Nat(n)) => n as i64,
                _ => return self.err("expected a denominator"),
            }
        } else {
            1
        };
        Ok(ScalarLit::new(if neg { -num } else { num }, den))
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "tw" => Ok(Term::Twist),
                    "id" => {
                        if self.peek() == Some(&Tok::At) {
                            self.pos += 1;
                            match self.advance() {
                                Some(Tok::Nat(n)) => Ok(Term::Id(n as usize)),
                                _ => self.err("expected a width after `id@`"),
                            }
                        } else {
                            Ok(Term::Id(1))
                        }
                    }
                    "scalar" | "co_scalar" => {
                        self.expect(Tok::LParen, "`(` after scalar")?;
                        let q = self.rational()?;
                        self.expect(Tok::RParen, "`)` after scalar parameter")?;
                        Ok(Term::Gen(if name == "scalar" {
                            Generator::Scalar(q)
                        } else {
                            Generator::CoScalar(q)
                        }))
                    }
                    "add" => Ok(Term::Gen(Generator::Add)),
                    "zero" => Ok(Term::Gen(Generator::Zero)),
                    "copy" => Ok(Term::Gen(Generator::Copy)),
                    "discard" => Ok(Term::Gen(Generator::Discard)),
                    "delay" => Ok(Term::Gen(Generator::Delay)),
                    "co_add" => Ok(Term::Gen(Generator::CoAdd)),
                    "co_zero" => Ok(Term::Gen(Generator::CoZero)),
                    "co_copy" => Ok(Term::Gen(Generator::CoCopy)),
                    "co_discard" => Ok(Term::Gen(Generator::CoDiscard)),
                    "co_delay" => Ok(Term::Gen(Generator::CoDelay)),
                    _ => {
                        self.pos -= 1;
                        self.err(format!("unknown generator `{name}`"))
                    }
                }
            }
            _ => self.err("expected a generator, `id@n`, `tw`, or `(`"),
        }
    }
}

/// Parse a term from source text.
pub fn parse(src: &str) -> Result<Term, ParseError> {
    let toks = lex(src)?;
    let end_line = src.lines().count().max(1);
    let end_col = src.lines().last().map_or(1, |l| l.chars().count() + 1);
    let mut p = Parser {
        toks,
        pos: 0,
        end_line,
        end_col,
    };
    if p.peek().is_none() {
        return p.err("empty input");
    }
    let t = p.term()?;
    if p.peek().is_some() {
        return p.err("trailing input after term");
    }
    Ok(t)
}

/// Parse and typecheck in one step.
pub fn parse_typed(src: &str) -> Result<TypedTerm, String> {
    let t = parse(src).map_err(|e| e.to_string())?;
    typecheck(&t).map_err(|e| e.to_string())
}

/// Term denoting multiplication by the polynomial with the given
/// `(exponent, coefficient)` monomials: the fan-out/fan-in encoding where each
/// monomial branch is a scalar gate followed by a chain of (co)delays.
pub fn poly_term(monomials: &[(i64, ScalarLit)]) -> Term {
    fn monomial_term(exp: i64, coeff: ScalarLit) -> Term {
        let mut t = Term::Gen(Generator::Scalar(coeff));
        let (gen, count) = if exp >= 0 {
            (Generator::Delay, exp)
        } else {
            (Generator::CoDelay, -exp)
        };
        for _ in 0..count {
            t = Term::seq(t, Term::Gen(gen));
        }
        t
    }
    match monomials {
        [] => Term::seq(Term::Gen(Generator::Discard), Term::Gen(Generator::Zero)),
        [(e, c)] => monomial_term(*e, *c),
        [(e, c), rest @ ..] => Term::seq(
            Term::Gen(Generator::Copy),
            Term::seq(
                Term::tensor(monomial_term(*e, *c), poly_term(rest)),
                Term::Gen(Generator::Add),
            ),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_example_pipeline() {
        let t = parse("copy ; (delay | id) ; add").unwrap();
        let expected = Term::seq(
            Term::seq(
                Term::Gen(Generator::Copy),
                Term::tensor(Term::Gen(Generator::Delay), Term::Id(1)),
            ),
            Term::Gen(Generator::Add),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn parse_white_bone_composite() {
        let t = parse("zero ; co_zero").unwrap();
        assert_eq!(
            t,
            Term::seq(Term::Gen(Generator::Zero), Term::Gen(Generator::CoZero))
        );
    }

    #[test]
    fn parse_negative_scalar() {
        let t = parse("scalar(-1)").unwrap();
        assert_eq!(t, Term::Gen(Generator::Scalar(ScalarLit::int(-1))));
    }

    #[test]
    fn scalar_literal_normalized() {
        assert_eq!(ScalarLit::new(2, 4), ScalarLit::new(1, 2));
        assert_eq!(ScalarLit::new(1, -2), ScalarLit::new(-1, 2));
        let t = parse("scalar(2/4)").unwrap();
        assert_eq!(pretty(&t), "scalar(1/2)");
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse("copy ;\n  frobnicate").unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
        assert!(err.msg.contains("unknown generator"));
        let err = parse("scalar(1/0)").unwrap_err();
        assert!(err.msg.contains("zero denominator"));
        let err = parse("add ;").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn comments_and_whitespace() {
        let t = parse("# heading\n copy ; ( delay | id ) ; add # trailing\n").unwrap();
        assert_eq!(pretty(&t), "(copy ; (delay | id@1)) ; add");
    }

    #[test]
    fn typecheck_examples() {
        let t = parse_typed("copy ; (delay | id) ; add").unwrap();
        assert_eq!((t.arity, t.coarity), (1, 1));
        assert_eq!(t.registers, vec![RegisterKind::Delay]);

        let err = typecheck(&parse("add ; add").unwrap()).unwrap_err();
        assert_eq!((err.left_coarity, err.right_arity), (1, 2));
        assert!(err.at.contains("add ; add"));

        let t = parse_typed("copy ; (delay|id) ; add ; co_add ; (co_delay|id) ; co_copy").unwrap();
        assert_eq!((t.arity, t.coarity), (1, 1));
        assert_eq!(t.registers, vec![RegisterKind::Delay, RegisterKind::CoDelay]);
    }

    #[test]
    fn pretty_examples() {
        assert_eq!(pretty(&Term::Id(3)), "id@3");
        assert_eq!(
            pretty(&Term::tensor(
                Term::Gen(Generator::Add),
                Term::Gen(Generator::Zero)
            )),
            "add | zero"
        );
    }

    #[test]
    fn pretty_parse_round_trip() {
        let sources = [
            "copy ; (delay | id) ; add",
            "zero ; co_zero",
            "(add | zero) ; (tw ; add)",
            "scalar(-3/7) | id@0 | co_scalar(2)",
            "id@2 ; (tw ; (co_copy | discard))",
        ];
        for src in sources {
            let t = parse(src).unwrap();
            assert_eq!(parse(&pretty(&t)).unwrap(), t);
        }
    }

    #[test]
    fn register_order_is_traversal_order() {
        let t = parse_typed("(delay | co_delay) ; (co_delay | delay)").unwrap();
        assert_eq!(
            t.registers,
            vec![
                RegisterKind::Delay,
                RegisterKind::CoDelay,
                RegisterKind::CoDelay,
                RegisterKind::Delay
            ]
        );
    }

    #[test]
    fn mirror_is_involutive() {
        let t = parse("copy ; (delay | id) ; add").unwrap();
        assert_eq!(t.mirrored().mirrored(), t);
        assert_eq!(
            pretty(&t.mirrored()),
            "co_add ; ((co_delay | id@1) ; co_copy)"
        );
    }

    #[test]
    fn poly_term_types() {
        // 2s + 1 as a 1 -> 1 term
        let t = poly_term(&[(1, ScalarLit::int(2)), (0, ScalarLit::int(1))]);
        let ty = typecheck(&t).unwrap();
        assert_eq!((ty.arity, ty.coarity), (1, 1));
        // the empty polynomial is the zero map
        let ty = typecheck(&poly_term(&[])).unwrap();
        assert_eq!((ty.arity, ty.coarity), (1, 1));
    }
}
