//! Group presentations, the text DSL, and the untwisted exponent matrix.
//!
//! Grammar of the textual form:
//!
//! ```text
//! presentation := '<' genlist '|' relist '>'
//! genlist      := ident (',' ident)*
//! relist       := ε | word (',' word)*
//! word         := term+
//! term         := ident ('^' sint)? | '1'
//! sint         := '-'? digit+
//! ident        := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace separates terms; a `*` between terms is accepted and ignored;
//! `1` denotes an identity factor. A relator that reduces to the identity is
//! rejected: gluing a two-cell along the trivial loop silently changes the
//! second cohomology, so it is refused loudly instead.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::error::Error as LibError;
use crate::freegroup::{FreeWord, GeneratorSet};
use crate::intlinalg::IntMatrix;

/// A finite presentation: an ordered generator alphabet and a list of
/// reduced, non-identity relator words. This value stands for the model
/// two-complex of the presentation (one 0-cell, a 1-cell per generator, a
/// 2-cell per relator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: GeneratorSet,
    relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(generators: GeneratorSet, relators: Vec<FreeWord>) -> Result<Self, LibError> {
        for (index, r) in relators.iter().enumerate() {
            if r.arity() != generators.len() {
                return Err(LibError::ArityMismatch { left: generators.len(), right: r.arity() });
            }
            if r.is_identity() {
                return Err(LibError::IdentityRelator { index });
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// Number of generators, the column count of all matrices.
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Number of relators, the row count of all matrices.
    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    /// The m×n matrix of exponent sums: entry (i, j) is the total power of
    /// generator j in relator i. Computed directly from syllables, with no
    /// Fox calculus involved; the twisted matrix at the trivial system must
    /// agree with it, and tests cross-check the two routes.
    pub fn exponent_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.relators.len(), self.generators.len(), |i, j| {
            self.relators[i].exponent_sum(j)
        })
    }

    /// Parses the canonical one-line form, e.g. `< x, y | x^4 y x y >`.
    pub fn parse(text: &str) -> Result<Presentation, ParseDiagnostic> {
        Parser::new(text).parse()
    }

    /// Parses a presentation file: UTF-8 text where lines whose first
    /// non-blank character is `#` are comments, the first remaining non-blank
    /// line is the presentation, and any further content is an error.
    /// Diagnostic positions are byte offsets into the whole file.
    pub fn parse_file(text: &str) -> Result<Presentation, ParseDiagnostic> {
        let mut chosen: Option<(usize, &str)> = None;
        let mut offset = 0;
        for line in text.split('\n') {
            let trimmed = line.trim();
            if !trimmed.is_empty() && !trimmed.starts_with('#') {
                if chosen.is_none() {
                    chosen = Some((offset, line));
                } else {
                    let at = offset + (line.len() - line.trim_start().len());
                    return Err(ParseDiagnostic {
                        kind: DiagnosticKind::Syntax,
                        position: at,
                        message: "unexpected content after the presentation line".into(),
                    });
                }
            }
            offset += line.len() + 1;
        }
        let Some((line_offset, line)) = chosen else {
            return Err(ParseDiagnostic {
                kind: DiagnosticKind::Syntax,
                position: 0,
                message: "no presentation found".into(),
            });
        };
        Parser::new(line).parse().map_err(|mut d| {
            d.position += line_offset;
            d
        })
    }

    /// Renders one word using this presentation's generator names.
    pub fn format_word(&self, word: &FreeWord) -> String {
        format_word(&self.generators, word)
    }
}

impl fmt::Display for Presentation {
    /// Canonical text form; `parse` of the output reproduces the value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators.names().collect::<Vec<_>>().join(", ");
        let rels = self
            .relators
            .iter()
            .map(|r| format_word(&self.generators, r))
            .collect::<Vec<_>>()
            .join(", ");
        if rels.is_empty() {
            write!(f, "< {gens} | >")
        } else {
            write!(f, "< {gens} | {rels} >")
        }
    }
}

/// Renders a word as space-separated syllables, `^e` only for e ≠ 1, and `1`
/// for the identity.
pub fn format_word(generators: &GeneratorSet, word: &FreeWord) -> String {
    if word.is_identity() {
        return "1".into();
    }
    word.syllables()
        .iter()
        .map(|s| {
            let name = generators.name(s.generator);
            if s.exponent == BigInt::from(1) {
                name.to_string()
            } else {
                format!("{}^{}", name, s.exponent)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    UnknownGenerator,
    DuplicateGenerator,
    Syntax,
    EmptyRelator,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiagnosticKind::UnknownGenerator => "unknown-generator",
            DiagnosticKind::DuplicateGenerator => "duplicate-generator",
            DiagnosticKind::Syntax => "syntax",
            DiagnosticKind::EmptyRelator => "empty-relator",
        };
        f.write_str(s)
    }
}

/// A parse failure: what went wrong and where. The first error wins; nothing
/// after it is inspected.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} error at byte {position}: {message}")]
pub struct ParseDiagnostic {
    pub kind: DiagnosticKind,
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Lt,
    Gt,
    Bar,
    Comma,
    Caret,
    Star,
    Ident(String),
    Int(BigInt),
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Lt => "`<`".into(),
            Token::Gt => "`>`".into(),
            Token::Bar => "`|`".into(),
            Token::Comma => "`,`".into(),
            Token::Caret => "`^`".into(),
            Token::Star => "`*`".into(),
            Token::Ident(s) => format!("`{s}`"),
            Token::Int(n) => format!("`{n}`"),
            Token::End => "end of input".into(),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<(usize, Token)>,
    cursor: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, tokens: Vec::new(), cursor: 0 }
    }

    fn syntax(position: usize, message: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic { kind: DiagnosticKind::Syntax, position, message: message.into() }
    }

    fn tokenize(&mut self) -> Result<(), ParseDiagnostic> {
        let bytes = self.text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let token = match c {
                '<' => Token::Lt,
                '>' => Token::Gt,
                '|' => Token::Bar,
                ',' => Token::Comma,
                '^' => Token::Caret,
                '*' => Token::Star,
                '-' | '0'..='9' => {
                    i += 1;
                    if c == '-' && (i >= bytes.len() || !bytes[i].is_ascii_digit()) {
                        return Err(Self::syntax(start, "`-` must begin an integer"));
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: BigInt = self.text[start..i].parse().expect("digits parse");
                    self.tokens.push((start, Token::Int(n)));
                    continue;
                }
                c if c.is_ascii_alphabetic() => {
                    i += 1;
                    while i < bytes.len()
                        && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    self.tokens.push((start, Token::Ident(self.text[start..i].into())));
                    continue;
                }
                other => {
                    return Err(Self::syntax(start, format!("unexpected character `{other}`")));
                }
            };
            self.tokens.push((start, token));
            i += 1;
        }
        self.tokens.push((self.text.len(), Token::End));
        Ok(())
    }

    fn peek(&self) -> &(usize, Token) {
        &self.tokens[self.cursor]
    }

    fn advance(&mut self) -> (usize, Token) {
        let t = self.tokens[self.cursor].clone();
        if self.cursor + 1 < self.tokens.len() {
            self.cursor += 1;
        }
        t
    }

    fn expect(&mut self, expected: &Token, what: &str) -> Result<usize, ParseDiagnostic> {
        let (pos, token) = self.advance();
        if &token == expected {
            Ok(pos)
        } else {
            Err(Self::syntax(pos, format!("expected {what}, found {}", token.describe())))
        }
    }

    fn parse(mut self) -> Result<Presentation, ParseDiagnostic> {
        self.tokenize()?;
        self.expect(&Token::Lt, "`<`")?;

        let mut names: Vec<String> = Vec::new();
        loop {
            let (pos, token) = self.advance();
            let Token::Ident(name) = token else {
                return Err(Self::syntax(pos, format!("expected generator name, found {}", token.describe())));
            };
            if names.contains(&name) {
                return Err(ParseDiagnostic {
                    kind: DiagnosticKind::DuplicateGenerator,
                    position: pos,
                    message: format!("generator `{name}` declared twice"),
                });
            }
            names.push(name);
            match self.peek().1 {
                Token::Comma => {
                    self.advance();
                }
                _ => break,
            }
        }
        let generators = GeneratorSet::new(names).expect("idents validated by tokenizer");

        self.expect(&Token::Bar, "`|`")?;

        let mut relators = Vec::new();
        if self.peek().1 != Token::Gt {
            loop {
                relators.push(self.parse_word(&generators)?);
                match self.peek().1 {
                    Token::Comma => {
                        self.advance();
                    }
                    _ => break,
                }
            }
        }

        self.expect(&Token::Gt, "`>`")?;
        let (pos, token) = self.advance();
        if token != Token::End {
            return Err(Self::syntax(pos, format!("trailing {} after `>`", token.describe())));
        }

        Presentation::new(generators, relators).map_err(|e| match e {
            // the only construction error reachable from parsed input
            LibError::IdentityRelator { .. } => unreachable!("checked per word"),
            other => Self::syntax(0, other.to_string()),
        })
    }

    fn parse_word(&mut self, generators: &GeneratorSet) -> Result<FreeWord, ParseDiagnostic> {
        let word_start = self.peek().0;
        let mut raw: Vec<(usize, BigInt)> = Vec::new();
        let mut terms = 0usize;
        loop {
            let (pos, token) = self.peek().clone();
            match token {
                Token::Ident(name) => {
                    self.advance();
                    let Some(index) = generators.index_of(&name) else {
                        return Err(ParseDiagnostic {
                            kind: DiagnosticKind::UnknownGenerator,
                            position: pos,
                            message: format!("generator `{name}` is not declared"),
                        });
                    };
                    let exponent = if self.peek().1 == Token::Caret {
                        self.advance();
                        let (epos, etoken) = self.advance();
                        match etoken {
                            Token::Int(n) => n,
                            other => {
                                return Err(Self::syntax(
                                    epos,
                                    format!("expected integer exponent, found {}", other.describe()),
                                ))
                            }
                        }
                    } else {
                        BigInt::from(1)
                    };
                    raw.push((index, exponent));
                    terms += 1;
                }
                Token::Int(ref n) if n == &BigInt::from(1) => {
                    // a literal `1`: identity factor
                    self.advance();
                    terms += 1;
                }
                Token::Star if terms > 0 => {
                    self.advance();
                    // `*` must sit between terms, not before a delimiter
                    match self.peek().1 {
                        Token::Ident(_) => {}
                        Token::Int(ref n) if n == &BigInt::from(1) => {}
                        _ => {
                            let (spos, stoken) = self.peek().clone();
                            return Err(Self::syntax(
                                spos,
                                format!("expected term after `*`, found {}", stoken.describe()),
                            ));
                        }
                    }
                }
                _ => break,
            }
        }
        if terms == 0 {
            let (pos, token) = self.peek().clone();
            return Err(Self::syntax(pos, format!("expected word, found {}", token.describe())));
        }
        let word = FreeWord::reduce(generators.len(), raw).expect("indices resolved");
        if word.is_identity() {
            return Err(ParseDiagnostic {
                kind: DiagnosticKind::EmptyRelator,
                position: word_start,
                message: "relator reduces to the identity word".into(),
            });
        }
        Ok(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Sign;
    use proptest::prelude::*;

    fn word(arity: usize, raw: &[(usize, i64)]) -> FreeWord {
        FreeWord::reduce(arity, raw.iter().map(|&(g, e)| (g, BigInt::from(e)))).unwrap()
    }

    #[test]
    fn parses_the_two_generator_example() {
        let p = Presentation::parse("< x, y | x^4 y x y >").unwrap();
        assert_eq!(p.generators().names().collect::<Vec<_>>(), vec!["x", "y"]);
        assert_eq!(p.relators(), &[word(2, &[(0, 4), (1, 1), (0, 1), (1, 1)])]);
    }

    #[test]
    fn parses_the_projective_plane() {
        let p = Presentation::parse("< x | x^2 >").unwrap();
        assert_eq!(p.num_generators(), 1);
        assert_eq!(p.relators(), &[word(1, &[(0, 2)])]);
    }

    #[test]
    fn rejects_undeclared_generator_with_position() {
        let text = "< x, y | x y x^-1 y^-1 z >";
        let d = Presentation::parse(text).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::UnknownGenerator);
        assert_eq!(d.position, text.find('z').unwrap());
    }

    #[test]
    fn rejects_duplicate_generator() {
        let d = Presentation::parse("< x, x | >").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::DuplicateGenerator);
        assert_eq!(d.position, 5);
    }

    #[test]
    fn rejects_identity_relator() {
        let d = Presentation::parse("< x | x x^-1 >").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::EmptyRelator);
        assert_eq!(d.position, 6);
        let d = Presentation::parse("< x | 1 >").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::EmptyRelator);
        let d = Presentation::parse("< x | x^0 >").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::EmptyRelator);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let d = Presentation::parse("x, y | x >").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Syntax);
        assert_eq!(d.position, 0);
        let d = Presentation::parse("< x | x > junk").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Syntax);
        assert_eq!(d.position, 10);
        let d = Presentation::parse("< x | x^ >").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Syntax);
        let d = Presentation::parse("< | x >").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Syntax);
        let d = Presentation::parse("").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Syntax);
    }

    #[test]
    fn accepts_stars_zero_exponents_and_ones_inside_words() {
        let p = Presentation::parse("< x, y | x*y^0*x * 1 y >").unwrap();
        assert_eq!(p.relators(), &[word(2, &[(0, 2), (1, 1)])]);
        assert!(Presentation::parse("< x | * x >").is_err());
        assert!(Presentation::parse("< x | x * >").is_err());
    }

    #[test]
    fn accepts_no_relators_and_big_exponents() {
        let p = Presentation::parse("< x, y | >").unwrap();
        assert!(p.relators().is_empty());
        let p = Presentation::parse("< x | x^123456789012345678901234567890 >").unwrap();
        assert_eq!(
            p.relators()[0].exponent_sum(0),
            "123456789012345678901234567890".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn formats_canonically() {
        for text in ["< x, y | x^4 y x y >", "< x | x^2 >", "< x, y | >", "< x, y | x y^-2, y x >"] {
            let p = Presentation::parse(text).unwrap();
            assert_eq!(p.to_string(), text);
        }
    }

    #[test]
    fn parse_file_skips_comments_and_rejects_trailing_content() {
        let text = "# twisted example\n\n  < x, y | x^4 y x y >\n# done\n";
        let p = Presentation::parse_file(text).unwrap();
        assert_eq!(p.to_string(), "< x, y | x^4 y x y >");

        let bad = "# c\n< x | x^2 >\nextra\n";
        let d = Presentation::parse_file(bad).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Syntax);
        assert_eq!(d.position, bad.find("extra").unwrap());

        let none = "# only comments\n\n";
        assert_eq!(Presentation::parse_file(none).unwrap_err().kind, DiagnosticKind::Syntax);
    }

    #[test]
    fn parse_file_positions_are_file_offsets() {
        let text = "# header\n< x, y | z >\n";
        let d = Presentation::parse_file(text).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::UnknownGenerator);
        assert_eq!(d.position, text.find('z').unwrap());
    }

    #[test]
    fn exponent_matrix_examples() {
        let p = Presentation::parse("< x, y | x^4 y x y >").unwrap();
        assert_eq!(p.exponent_matrix(), IntMatrix::from_i64_rows(&[&[5, 2]]));
        let p = Presentation::parse("< x | x^2 >").unwrap();
        assert_eq!(p.exponent_matrix(), IntMatrix::from_i64_rows(&[&[2]]));
        let p = Presentation::parse("< x, y | x y x^-1 y^-1 >").unwrap();
        assert_eq!(p.exponent_matrix(), IntMatrix::from_i64_rows(&[&[0, 0]]));
        let p = Presentation::parse("< x, y | >").unwrap();
        assert_eq!(p.exponent_matrix().rows(), 0);
        assert_eq!(p.exponent_matrix().cols(), 2);
    }

    #[test]
    fn construction_rejects_identity_relators_and_arity_mismatch() {
        let gens = GeneratorSet::new(["x"]).unwrap();
        let e = Presentation::new(gens.clone(), vec![FreeWord::identity(1)]).unwrap_err();
        assert_eq!(e, crate::error::Error::IdentityRelator { index: 0 });
        let e = Presentation::new(gens, vec![word(2, &[(1, 1)])]).unwrap_err();
        assert!(matches!(e, crate::error::Error::ArityMismatch { .. }));
    }

    #[test]
    fn sign_characters_act_through_names() {
        // mirrors the h2 CLI path: assignment text refers to generators by name
        let p = Presentation::parse("< x, y | x^4 y x y >").unwrap();
        let signs = [Sign::Plus, Sign::Minus];
        assert_eq!(p.relators()[0].sign_eval(&signs).unwrap(), Sign::Plus);
    }

    fn ident_strategy() -> impl Strategy<Value = String> {
        "[a-z][a-z0-9_]{0,3}"
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        prop::collection::btree_set(ident_strategy(), 1..4).prop_flat_map(|names| {
            let names: Vec<String> = names.into_iter().collect();
            let n = names.len();
            let raw_words =
                prop::collection::vec(prop::collection::vec((0..n, -4i64..=4), 1..8), 0..3);
            raw_words.prop_map(move |words| {
                let gens = GeneratorSet::new(names.clone()).unwrap();
                let relators: Vec<FreeWord> = words
                    .into_iter()
                    .filter_map(|raw| {
                        let w = FreeWord::reduce(
                            n,
                            raw.into_iter().map(|(g, e)| (g, BigInt::from(e))),
                        )
                        .unwrap();
                        (!w.is_identity()).then_some(w)
                    })
                    .collect();
                Presentation::new(gens, relators).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip_through_text(p in arb_presentation()) {
            let text = p.to_string();
            let parsed = Presentation::parse(&text).unwrap();
            prop_assert_eq!(parsed, p);
        }
    }
}
