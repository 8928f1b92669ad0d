use std::collections::HashMap;

use parikh::apps::{CdaSystem, PolyrecSystem};
use parikh::{LetterSpec, MixedAutomaton, Polynomial, ProductMode, Rational};

use super::lexer::{tokenize, Token, TokenKind};
use super::{CdaDefinition, Definition, Document, Item, ParseError, Span};

/// Words that start a statement inside a definition. An expression never
/// continues into one of them.
const STATEMENTS: &[&str] = &["alphabet", "mode", "nonterminals", "output", "delta", "dims", "unknowns", "init", "shift", "d", "var"];

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let tokens = tokenize(text)?;
    let line = text.matches('\n').count() + 1;
    let column = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    let eof = Span { line, column, start: text.len(), end: text.len() };
    let mut p = Parser { tokens, pos: 0, eof };
    let mut doc = Document::default();
    while p.peek().is_some() {
        let item = p.item()?;
        if doc.items.iter().any(|i| i.name == item.name) {
            return Err(duplicate(&item.name, item.span));
        }
        doc.items.push(item);
    }
    Ok(doc)
}

/// Parses all of `text` as a polynomial over `vars`, as in `--config` arguments.
pub fn parse_expression(text: &str, vars: &[String]) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(text)?;
    let eof = Span { line: 1, column: text.chars().count() + 1, start: text.len(), end: text.len() };
    let mut p = Parser { tokens, pos: 0, eof };
    let e = p.expr(vars)?;
    match p.peek() {
        None => Ok(e),
        Some(t) => Err(syntax(t.span, format!("unexpected {} after the expression", t.kind.describe()))),
    }
}

fn syntax(span: Span, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line: span.line, column: span.column, message: message.into() }
}

fn invalid(span: Span, message: impl Into<String>) -> ParseError {
    ParseError::Invalid { line: span.line, column: span.column, message: message.into() }
}

fn duplicate(name: &str, span: Span) -> ParseError {
    ParseError::Duplicate { name: name.to_string(), line: span.line, column: span.column }
}

fn undeclared(name: &str, span: Span) -> ParseError {
    ParseError::Undeclared { name: name.to_string(), line: span.line, column: span.column }
}

fn lookup(names: &[String], name: &str, span: Span) -> Result<usize, ParseError> {
    names.iter().position(|n| n == name).ok_or_else(|| undeclared(name, span))
}

/// Records a block that may appear at most once per definition.
fn once<T>(slot: &Option<T>, what: &str, span: Span) -> Result<(), ParseError> {
    match slot {
        Some(_) => Err(duplicate(what, span)),
        None => Ok(()),
    }
}

fn declared<'a, T>(slot: &'a Option<T>, what: &str, before: &str, span: Span) -> Result<&'a T, ParseError> {
    slot.as_ref().ok_or_else(|| syntax(span, format!("declare {what} before {before}")))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof: Span,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn peek_is(&self, kind: &TokenKind) -> bool {
        self.peek_kind() == Some(kind)
    }

    fn span(&self) -> Span {
        self.peek().map_or(self.eof, |t| t.span)
    }

    fn found(&self) -> String {
        self.peek().map_or_else(|| "end of input".to_string(), |t| t.kind.describe())
    }

    fn next(&mut self, expected: &str) -> Result<Token, ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(syntax(self.eof, format!("expected {expected}, found end of input"))),
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_is(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Span, ParseError> {
        if self.peek_is(&kind) {
            let span = self.span();
            self.pos += 1;
            Ok(span)
        } else {
            Err(syntax(self.span(), format!("expected {}, found {}", kind.describe(), self.found())))
        }
    }

    fn ident(&mut self, expected: &str) -> Result<(String, Span), ParseError> {
        match self.peek_kind() {
            Some(TokenKind::Ident(s)) => {
                let out = (s.clone(), self.span());
                self.pos += 1;
                Ok(out)
            }
            _ => Err(syntax(self.span(), format!("expected {expected}, found {}", self.found()))),
        }
    }

    fn natural(&mut self, expected: &str) -> Result<(usize, Span), ParseError> {
        let span = self.span();
        match self.peek_kind() {
            Some(TokenKind::Int(s)) => {
                let n = s.parse().map_err(|_| invalid(span, format!("`{s}` is too large")))?;
                self.pos += 1;
                Ok((n, span))
            }
            _ => Err(syntax(span, format!("expected {expected}, found {}", self.found()))),
        }
    }

    /// Next statement keyword, or `None` after the closing brace.
    fn statement(&mut self) -> Result<Option<(String, Span)>, ParseError> {
        while self.eat(&TokenKind::Semicolon) {}
        if self.eat(&TokenKind::RBrace) {
            return Ok(None);
        }
        self.ident("a statement or `}`").map(Some)
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        let (keyword, span) = self.ident("a definition")?;
        if !matches!(keyword.as_str(), "automaton" | "polyrec" | "cda") {
            return Err(syntax(span, format!("expected `automaton`, `polyrec` or `cda`, found `{keyword}`")));
        }
        let (name, _) = self.ident("a name")?;
        self.expect(TokenKind::LBrace)?;
        let definition = match keyword.as_str() {
            "automaton" => Definition::Automaton(self.automaton(&name, span)?),
            "polyrec" => Definition::Polyrec(self.polyrec(&name, span)?),
            _ => Definition::Cda(self.cda(&name, span)?),
        };
        Ok(Item { name, span, definition })
    }

    /// `{ a, b c }`: names separated by optional commas, without repeats.
    fn name_list(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect(TokenKind::LBrace)?;
        let mut names: Vec<String> = Vec::new();
        while !self.eat(&TokenKind::RBrace) {
            let (name, span) = self.ident("a name or `}`")?;
            if names.contains(&name) {
                return Err(duplicate(&name, span));
            }
            names.push(name);
            self.eat(&TokenKind::Comma);
        }
        Ok(names)
    }

    /// `{ a: hadamard, b }`.
    fn alphabet(&mut self) -> Result<Vec<(String, Option<ProductMode>, Span)>, ParseError> {
        self.expect(TokenKind::LBrace)?;
        let mut letters: Vec<(String, Option<ProductMode>, Span)> = Vec::new();
        while !self.eat(&TokenKind::RBrace) {
            let (name, span) = self.ident("a letter or `}`")?;
            if letters.iter().any(|(n, _, _)| *n == name) {
                return Err(duplicate(&name, span));
            }
            let mode = if self.eat(&TokenKind::Colon) { Some(self.mode()?) } else { None };
            letters.push((name, mode, span));
            self.eat(&TokenKind::Comma);
        }
        Ok(letters)
    }

    fn mode(&mut self) -> Result<ProductMode, ParseError> {
        let (name, span) = self.ident("a product mode")?;
        ProductMode::parse(&name).ok_or_else(|| invalid(span, format!("unknown mode `{name}`; expected hadamard, shuffle or infiltration")))
    }

    /// `{ x = 1, y = -5/2 }` over `names`; entries left out stay `None`.
    fn assignments(&mut self, names: &[String]) -> Result<Vec<Option<Rational>>, ParseError> {
        self.expect(TokenKind::LBrace)?;
        let mut values = vec![None; names.len()];
        while !self.eat(&TokenKind::RBrace) {
            let (name, span) = self.ident("a name or `}`")?;
            let i = lookup(names, &name, span)?;
            if values[i].is_some() {
                return Err(duplicate(&name, span));
            }
            self.expect(TokenKind::Equals)?;
            values[i] = Some(self.constant()?);
            self.eat(&TokenKind::Comma);
        }
        Ok(values)
    }

    fn constant(&mut self) -> Result<Rational, ParseError> {
        Ok(self.expr(&[])?.constant_term())
    }

    fn automaton(&mut self, name: &str, item: Span) -> Result<MixedAutomaton, ParseError> {
        let mut letters = None;
        let mut mode = None;
        let mut nonterminals: Option<Vec<String>> = None;
        let mut output: Option<Vec<Option<Rational>>> = None;
        let mut delta: HashMap<(usize, usize), Polynomial> = HashMap::new();
        while let Some((keyword, span)) = self.statement()? {
            match keyword.as_str() {
                "alphabet" => {
                    once(&letters, "alphabet", span)?;
                    letters = Some(self.alphabet()?);
                }
                "mode" => {
                    once(&mode, "mode", span)?;
                    mode = Some(self.mode()?);
                }
                "nonterminals" => {
                    once(&nonterminals, "nonterminals", span)?;
                    nonterminals = Some(self.name_list()?);
                }
                "output" => {
                    let nts = declared(&nonterminals, "nonterminals", "output", span)?.clone();
                    once(&output, "output", span)?;
                    output = Some(self.assignments(&nts)?);
                }
                "delta" => {
                    let ls = declared(&letters, "the alphabet", "delta", span)?;
                    let nts = declared(&nonterminals, "nonterminals", "delta", span)?.clone();
                    let (letter, lspan) = self.ident("a letter")?;
                    let a = ls.iter().position(|(n, _, _)| *n == letter).ok_or_else(|| undeclared(&letter, lspan))?;
                    let (nt, nspan) = self.ident("a nonterminal")?;
                    let i = lookup(&nts, &nt, nspan)?;
                    self.expect(TokenKind::Equals)?;
                    let p = self.expr(&nts)?;
                    if delta.insert((a, i), p).is_some() {
                        return Err(duplicate(&format!("delta {letter} {nt}"), span));
                    }
                }
                other => {
                    return Err(syntax(
                        span,
                        format!("unexpected `{other}` in an automaton; expected alphabet, mode, nonterminals, output or delta"),
                    ))
                }
            }
        }
        let letters = letters.ok_or_else(|| invalid(item, format!("automaton `{name}` has no alphabet")))?;
        let nonterminals = nonterminals.ok_or_else(|| invalid(item, format!("automaton `{name}` has no nonterminals")))?;
        let specs = letters
            .iter()
            .map(|(l, m, span)| {
                m.or(mode)
                    .map(|m| LetterSpec::new(l.clone(), m))
                    .ok_or_else(|| invalid(*span, format!("letter `{l}` has no mode and there is no `mode` declaration")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let output = complete(output, &nonterminals, item, "output")?;
        let mut rows = Vec::with_capacity(specs.len());
        for (a, spec) in specs.iter().enumerate() {
            let mut row = Vec::with_capacity(nonterminals.len());
            for (i, nt) in nonterminals.iter().enumerate() {
                let p = delta.remove(&(a, i)).ok_or_else(|| invalid(item, format!("missing `delta {} {nt}`", spec.name)))?;
                row.push(p);
            }
            rows.push(row);
        }
        MixedAutomaton::new(specs, nonterminals, rows, output).map_err(|e| invalid(item, e.to_string()))
    }

    fn dims(&mut self, slot: &Option<usize>, span: Span) -> Result<usize, ParseError> {
        once(slot, "dims", span)?;
        let (d, dspan) = self.natural("the number of dimensions")?;
        if d == 0 {
            return Err(invalid(dspan, "a system needs at least one dimension"));
        }
        Ok(d)
    }

    /// `j NAME = POLY` for `shift` and `d`, with `j` counted from 1.
    fn equation(&mut self, dims: usize, targets: &[String], symbols: &[String]) -> Result<(usize, usize, Polynomial, Span), ParseError> {
        let (j, jspan) = self.natural("a coordinate")?;
        if !(1..=dims).contains(&j) {
            return Err(invalid(jspan, format!("coordinate {j} is outside 1..{dims}")));
        }
        let (name, nspan) = self.ident("an unknown")?;
        let i = lookup(targets, &name, nspan)?;
        self.expect(TokenKind::Equals)?;
        Ok((j - 1, i, self.expr(symbols)?, jspan))
    }

    fn polyrec(&mut self, name: &str, item: Span) -> Result<PolyrecSystem, ParseError> {
        let mut dims = None;
        let mut unknowns: Option<Vec<String>> = None;
        let mut init = None;
        let mut shifts: HashMap<(usize, usize), Polynomial> = HashMap::new();
        while let Some((keyword, span)) = self.statement()? {
            match keyword.as_str() {
                "dims" => dims = Some(self.dims(&dims, span)?),
                "unknowns" => {
                    once(&unknowns, "unknowns", span)?;
                    unknowns = Some(self.name_list()?);
                }
                "init" => {
                    let us = declared(&unknowns, "unknowns", "init", span)?.clone();
                    once(&init, "init", span)?;
                    init = Some(self.assignments(&us)?);
                }
                "shift" => {
                    let d = *declared(&dims, "dims", "shift", span)?;
                    let us = declared(&unknowns, "unknowns", "shift", span)?.clone();
                    let (j, i, p, _) = self.equation(d, &us, &us)?;
                    if shifts.insert((j, i), p).is_some() {
                        return Err(duplicate(&format!("shift {} {}", j + 1, us[i]), span));
                    }
                }
                other => {
                    return Err(syntax(span, format!("unexpected `{other}` in a polyrec system; expected dims, unknowns, init or shift")))
                }
            }
        }
        let dims = dims.ok_or_else(|| invalid(item, format!("polyrec system `{name}` has no dims")))?;
        let unknowns = unknowns.ok_or_else(|| invalid(item, format!("polyrec system `{name}` has no unknowns")))?;
        let init = complete(init, &unknowns, item, "init")?;
        let rows = equations(shifts, dims, &unknowns, item, "shift")?;
        PolyrecSystem::new(unknowns, rows, init).map_err(|e| invalid(item, e.to_string()))
    }

    fn cda(&mut self, name: &str, item: Span) -> Result<CdaDefinition, ParseError> {
        let mut dims = None;
        let mut unknowns: Option<Vec<String>> = None;
        let mut vars: Vec<(String, usize)> = Vec::new();
        let mut init = None;
        let mut derivatives: HashMap<(usize, usize), Polynomial> = HashMap::new();
        while let Some((keyword, span)) = self.statement()? {
            match keyword.as_str() {
                "dims" => dims = Some(self.dims(&dims, span)?),
                "unknowns" => {
                    once(&unknowns, "unknowns", span)?;
                    unknowns = Some(self.name_list()?);
                }
                "var" => {
                    let d = *declared(&dims, "dims", "var", span)?;
                    let us = declared(&unknowns, "unknowns", "var", span)?;
                    let (v, vspan) = self.ident("a coordinate variable such as x1")?;
                    let j = v
                        .strip_prefix('x')
                        .and_then(|s| s.parse::<usize>().ok())
                        .filter(|j| (1..=d).contains(j) && v == format!("x{j}"))
                        .ok_or_else(|| invalid(vspan, format!("a coordinate variable is named x1..x{d}, found `{v}`")))?;
                    if us.contains(&v) || vars.iter().any(|(n, _)| *n == v) {
                        return Err(duplicate(&v, vspan));
                    }
                    vars.push((v, j - 1));
                }
                "init" => {
                    let us = declared(&unknowns, "unknowns", "init", span)?.clone();
                    once(&init, "init", span)?;
                    init = Some(self.assignments(&us)?);
                }
                "d" => {
                    let d = *declared(&dims, "dims", "d", span)?;
                    let us = declared(&unknowns, "unknowns", "d", span)?.clone();
                    let symbols: Vec<String> = us.iter().cloned().chain(vars.iter().map(|(n, _)| n.clone())).collect();
                    let (j, i, p, _) = self.equation(d, &us, &symbols)?;
                    if derivatives.insert((j, i), p).is_some() {
                        return Err(duplicate(&format!("d {} {}", j + 1, us[i]), span));
                    }
                }
                other => {
                    return Err(syntax(span, format!("unexpected `{other}` in a cda system; expected dims, unknowns, var, init or d")))
                }
            }
        }
        let dims = dims.ok_or_else(|| invalid(item, format!("cda system `{name}` has no dims")))?;
        let unknowns = unknowns.ok_or_else(|| invalid(item, format!("cda system `{name}` has no unknowns")))?;
        let mut init = complete(init, &unknowns, item, "init")?;
        let mut rows = equations(derivatives, dims, &unknowns, item, "d")?;
        let k = unknowns.len() + vars.len();
        for (j, row) in rows.iter_mut().enumerate() {
            for p in row.iter_mut() {
                *p = p.clone().with_arity(k);
            }
            row.extend(vars.iter().map(|&(_, c)| if c == j { Polynomial::one(k) } else { Polynomial::zero(k) }));
        }
        init.extend(vars.iter().map(|_| parikh::int(0)));
        let all: Vec<String> = unknowns.into_iter().chain(vars.iter().map(|(n, _)| n.clone())).collect();
        let system = CdaSystem::new(all, rows, init).map_err(|e| invalid(item, e.to_string()))?;
        Ok(CdaDefinition { system, vars: vars.into_iter().map(|(_, c)| c).collect() })
    }

    fn expr(&mut self, vars: &[String]) -> Result<Polynomial, ParseError> {
        let mut acc = self.term(vars)?;
        loop {
            if self.eat(&TokenKind::Plus) {
                acc = &acc + &self.term(vars)?;
            } else if self.eat(&TokenKind::Minus) {
                acc = &acc - &self.term(vars)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, vars: &[String]) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor(vars)?;
        loop {
            if self.eat(&TokenKind::Star) {
                acc = &acc * &self.factor(vars)?;
                continue;
            }
            let span = self.span();
            match self.peek_kind() {
                Some(TokenKind::Int(_) | TokenKind::LParen) => return Err(implicit(span)),
                Some(TokenKind::Ident(s)) if !self.ends_expression(s) => return Err(implicit(span)),
                Some(TokenKind::Slash) => return Err(syntax(span, "`/` only forms fraction literals such as 5/2")),
                Some(TokenKind::Caret) => return Err(syntax(span, "repeated exponents need parentheses")),
                _ => return Ok(acc),
            }
        }
    }

    /// A name ends an expression when it starts a statement or an assignment.
    fn ends_expression(&self, name: &str) -> bool {
        STATEMENTS.contains(&name) || self.tokens.get(self.pos + 1).is_some_and(|t| t.kind == TokenKind::Equals)
    }

    fn factor(&mut self, vars: &[String]) -> Result<Polynomial, ParseError> {
        if self.eat(&TokenKind::Minus) {
            return Ok(-self.factor(vars)?);
        }
        let base = self.atom(vars)?;
        if !self.eat(&TokenKind::Caret) {
            return Ok(base);
        }
        let span = self.span();
        let exponent = match self.peek_kind() {
            Some(TokenKind::Int(s)) => s.parse::<u32>().map_err(|_| ParseError::Exponent { line: span.line, column: span.column })?,
            _ => return Err(ParseError::Exponent { line: span.line, column: span.column }),
        };
        self.pos += 1;
        Ok(base.pow(exponent))
    }

    fn atom(&mut self, vars: &[String]) -> Result<Polynomial, ParseError> {
        let token = self.next("a number, a name or `(`")?;
        match token.kind {
            TokenKind::Int(n) => {
                let value = if self.eat(&TokenKind::Slash) {
                    let span = self.span();
                    let d = match self.peek_kind() {
                        Some(TokenKind::Int(d)) => d.clone(),
                        _ => return Err(syntax(span, format!("expected an integer denominator, found {}", self.found()))),
                    };
                    self.pos += 1;
                    if d.bytes().all(|b| b == b'0') {
                        return Err(invalid(span, "zero denominator"));
                    }
                    format!("{n}/{d}").parse::<Rational>()
                } else {
                    n.parse::<Rational>()
                };
                let value = value.map_err(|_| invalid(token.span, "malformed number"))?;
                Ok(Polynomial::constant(value, vars.len()))
            }
            TokenKind::Ident(name) => Ok(Polynomial::var(lookup(vars, &name, token.span)?, vars.len())),
            TokenKind::LParen => {
                let inner = self.expr(vars)?;
                self.expect(TokenKind::RParen)?;
                Ok(inner)
            }
            other => Err(syntax(token.span, format!("expected a number, a name or `(`, found {}", other.describe()))),
        }
    }
}

fn implicit(span: Span) -> ParseError {
    syntax(span, "implicit multiplication is not allowed; write `*`")
}

fn complete(values: Option<Vec<Option<Rational>>>, names: &[String], item: Span, block: &str) -> Result<Vec<Rational>, ParseError> {
    let values = values.unwrap_or_else(|| vec![None; names.len()]);
    values.into_iter().zip(names).map(|(v, n)| v.ok_or_else(|| invalid(item, format!("missing {block} value for `{n}`")))).collect()
}

fn equations(
    mut given: HashMap<(usize, usize), Polynomial>,
    dims: usize,
    unknowns: &[String],
    item: Span,
    keyword: &str,
) -> Result<Vec<Vec<Polynomial>>, ParseError> {
    (0..dims)
        .map(|j| {
            unknowns
                .iter()
                .enumerate()
                .map(|(i, u)| given.remove(&(j, i)).ok_or_else(|| invalid(item, format!("missing `{keyword} {} {u}`", j + 1))))
                .collect()
        })
        .collect()
}
