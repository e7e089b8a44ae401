//! The line-oriented session language.
//!
//! ```text
//! field Fp 32003
//! ring R = poly(x, y, z) / (x*z, y*z, z^2) weights 1, 1, 1
//! ideal J in R = (x, y)
//! coeffs R J maxn=40
//! bounds R J buchsbaum domain
//! compare R J closure(J)
//! ```
//!
//! Everything after `#` is a comment. Names share one namespace and must be
//! declared before use. Polynomial text is checked against the declared ring
//! while parsing, so a script that parses only fails at run time for
//! mathematical reasons.

use std::collections::HashMap;
use std::fmt;

use chernlab_core::{
    AlgebraError, Field, InstanceFlags, MonomialOrder, PolyRing, PrimeField, Rationals, MAX_VARS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Prime(u32),
    Rationals,
}

impl FieldChoice {
    /// Command-line spelling: `fp32003`, `fp101`, `qq`.
    pub fn from_flag(s: &str) -> Option<Self> {
        let s = s.to_ascii_lowercase();
        if s == "qq" {
            return Some(FieldChoice::Rationals);
        }
        let p: u32 = s.strip_prefix("fp")?.parse().ok()?;
        PrimeField::new(p).ok().map(|_| FieldChoice::Prime(p))
    }
}

impl Default for FieldChoice {
    fn default() -> Self {
        FieldChoice::Prime(PrimeField::DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Prime(p) => write!(f, "Fp {p}"),
            FieldChoice::Rationals => write!(f, "QQ"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub weights: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDecl {
    pub name: String,
    pub ring: String,
    pub gens: Vec<String>,
}

/// A filtration token in `compare`: `J` for the adic filtration, `closure(J)` for the integral closures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiltrationSpec {
    Adic(String),
    Closure(String),
}

impl FiltrationSpec {
    pub fn ideal(&self) -> &str {
        match self {
            FiltrationSpec::Adic(i) | FiltrationSpec::Closure(i) => i,
        }
    }
}

impl fmt::Display for FiltrationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationSpec::Adic(i) => write!(f, "{i}"),
            FiltrationSpec::Closure(i) => write!(f, "closure({i})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Coeffs { ring: String, ideal: String, maxn: Option<usize> },
    Closure { ideal: String },
    Hdeg { ring: String, rel: Option<String> },
    Koszul { ring: String, ideal: String },
    Bounds { ring: String, ideal: String, flags: InstanceFlags },
    Conjecture1 { ring: String, ideal: String, flags: InstanceFlags },
    Conjecture2 { ring: String, ideal: String },
    Conjecture3 { ring: String, ideal: String },
    Reductions { ring: String, ideal: String, trials: Option<usize>, seed: Option<u64> },
    Compare { ring: String, lower: FiltrationSpec, upper: FiltrationSpec },
    Cohomology { ring: String },
}

impl Command {
    pub fn keyword(&self) -> &'static str {
        match self {
            Command::Coeffs { .. } => "coeffs",
            Command::Closure { .. } => "closure",
            Command::Hdeg { .. } => "hdeg",
            Command::Koszul { .. } => "koszul",
            Command::Bounds { .. } => "bounds",
            Command::Conjecture1 { .. } => "conjecture1",
            Command::Conjecture2 { .. } => "conjecture2",
            Command::Conjecture3 { .. } => "conjecture3",
            Command::Reductions { .. } => "reductions",
            Command::Compare { .. } => "compare",
            Command::Cohomology { .. } => "cohomology",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Ring(RingDecl),
    Ideal(IdealDecl),
    Command(Command),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SessionScript {
    pub field: Option<FieldChoice>,
    pub statements: Vec<Statement>,
}

impl SessionScript {
    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Command(c) => Some(c),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

/// A cursor over one line; columns are 1-based byte offsets.
struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: pos + 1, message: message.into() }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        self.err_at(self.pos, message)
    }

    fn ws(&mut self) {
        while self.text[self.pos..].starts_with([' ', '\t']) {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.ws();
        self.pos == self.text.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    /// An identifier and the position it starts at.
    fn ident(&mut self, what: &str) -> PResult<(String, usize)> {
        self.ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c == '_' || c.is_ascii_alphabetic() || (i > 0 && c.is_ascii_digit())))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err(format!("expected {what}")));
        }
        self.pos += len;
        Ok((rest[..len].to_string(), start))
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let (w, at) = self.ident(&format!("'{kw}'"))?;
        if w == kw {
            Ok(())
        } else {
            Err(self.err_at(at, format!("expected '{kw}', found '{w}'")))
        }
    }

    fn number(&mut self, what: &str) -> PResult<(u64, usize)> {
        self.ws();
        let start = self.pos;
        let len = self.text[start..].find(|c: char| !c.is_ascii_digit()).unwrap_or(self.text.len() - start);
        if len == 0 {
            return Err(self.err(format!("expected {what}")));
        }
        self.pos += len;
        let v = self.text[start..self.pos].parse().map_err(|_| self.err_at(start, format!("{what} out of range")))?;
        Ok((v, start))
    }

    /// A parenthesized, comma-separated list of raw items (nested parentheses allowed).
    fn list(&mut self) -> PResult<Vec<(String, usize)>> {
        self.expect('(')?;
        let open = self.pos - 1;
        let mut items = Vec::new();
        let mut depth = 0usize;
        let mut start = self.pos;
        let bytes = self.text.as_bytes();
        loop {
            if self.pos == self.text.len() {
                return Err(self.err_at(open, "unclosed '('"));
            }
            match bytes[self.pos] {
                b'(' => depth += 1,
                b')' if depth > 0 => depth -= 1,
                b',' | b')' if depth == 0 => {
                    let raw = &self.text[start..self.pos];
                    let lead = raw.len() - raw.trim_start().len();
                    let item = raw.trim();
                    if item.is_empty() {
                        if bytes[self.pos] == b')' && items.is_empty() {
                            self.pos += 1;
                            return Ok(items);
                        }
                        return Err(self.err_at(self.pos, "empty list item"));
                    }
                    items.push((item.to_string(), start + lead));
                    let close = bytes[self.pos] == b')';
                    self.pos += 1;
                    if close {
                        return Ok(items);
                    }
                    start = self.pos;
                    continue;
                }
                _ => {}
            }
            self.pos += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ring,
    Ideal,
}

struct Scope {
    field: FieldChoice,
    kinds: HashMap<String, Kind>,
    rings: HashMap<String, RingDecl>,
    ideal_rings: HashMap<String, String>,
}

impl Scope {
    fn declare(&mut self, cur: &Cursor, name: &str, at: usize, kind: Kind) -> PResult<()> {
        if self.kinds.contains_key(name) {
            return Err(cur.err_at(at, format!("'{name}' is already declared")));
        }
        self.kinds.insert(name.to_string(), kind);
        Ok(())
    }

    fn ring(&self, cur: &mut Cursor) -> PResult<String> {
        let (name, at) = cur.ident("a ring name")?;
        match self.kinds.get(&name) {
            Some(Kind::Ring) => Ok(name),
            Some(Kind::Ideal) => Err(cur.err_at(at, format!("'{name}' is an ideal, not a ring"))),
            None => Err(cur.err_at(at, format!("unknown ring '{name}'"))),
        }
    }

    /// An ideal name, optionally required to live in `ring`.
    fn ideal(&self, cur: &mut Cursor, ring: Option<&str>) -> PResult<String> {
        let (name, at) = cur.ident("an ideal name")?;
        self.check_ideal(cur, &name, at, ring)?;
        Ok(name)
    }

    fn check_ideal(&self, cur: &Cursor, name: &str, at: usize, ring: Option<&str>) -> PResult<()> {
        match (self.kinds.get(name), ring) {
            (Some(Kind::Ideal), Some(r)) if self.ideal_rings[name] != r => {
                Err(cur.err_at(at, format!("ideal '{name}' lives in {}, not {r}", self.ideal_rings[name])))
            }
            (Some(Kind::Ideal), _) => Ok(()),
            (Some(Kind::Ring), _) => Err(cur.err_at(at, format!("'{name}' is a ring, not an ideal"))),
            (None, _) => Err(cur.err_at(at, format!("unknown ideal '{name}'"))),
        }
    }

    fn check_polys(&self, cur: &Cursor, decl: &RingDecl, items: &[(String, usize)]) -> PResult<()> {
        let check = |text: &str| -> Result<(), AlgebraError> {
            match self.field {
                FieldChoice::Prime(p) => parse_in(PrimeField::new(p)?, decl, text),
                FieldChoice::Rationals => parse_in(Rationals, decl, text),
            }
        };
        for (text, at) in items {
            match check(text) {
                Ok(()) => {}
                Err(AlgebraError::Parse { column, message }) => return Err(cur.err_at(at + column - 1, message)),
                Err(e) => return Err(cur.err_at(*at, e.to_string())),
            }
        }
        Ok(())
    }
}

fn parse_in<F: Field>(field: F, decl: &RingDecl, text: &str) -> Result<(), AlgebraError> {
    let s = match &decl.weights {
        Some(w) => PolyRing::with_order(field, &decl.vars, w.clone(), MonomialOrder::WeightedGrevlex(w.clone()))?,
        None => PolyRing::new(field, &decl.vars)?,
    };
    s.parse(text).map(|_| ())
}

fn flags(cur: &mut Cursor, allowed: &[&str]) -> PResult<InstanceFlags> {
    let mut f = InstanceFlags::default();
    while !cur.at_end() {
        let (w, at) = cur.ident("a flag")?;
        let slot = match w.as_str() {
            "buchsbaum" if allowed.contains(&"buchsbaum") => &mut f.buchsbaum,
            "domain" => &mut f.domain,
            "unmixed" => &mut f.unmixed,
            _ => return Err(cur.err_at(at, format!("unknown flag '{w}'"))),
        };
        if *slot {
            return Err(cur.err_at(at, format!("flag '{w}' given twice")));
        }
        *slot = true;
    }
    Ok(f)
}

/// `key=value` options; each key at most once.
fn options(cur: &mut Cursor, allowed: &[&str]) -> PResult<HashMap<String, u64>> {
    let mut out = HashMap::new();
    while !cur.at_end() {
        let (k, at) = cur.ident("an option")?;
        if !allowed.contains(&k.as_str()) {
            return Err(cur.err_at(at, format!("unknown option '{k}'")));
        }
        cur.expect('=')?;
        let (v, _) = cur.number(&format!("a value for {k}"))?;
        if out.insert(k.clone(), v).is_some() {
            return Err(cur.err_at(at, format!("option '{k}' given twice")));
        }
    }
    Ok(out)
}

fn filtration(scope: &Scope, cur: &mut Cursor, ring: &str) -> PResult<FiltrationSpec> {
    let (w, at) = cur.ident("a filtration")?;
    if w == "closure" && cur.peek() == Some('(') {
        cur.expect('(')?;
        let i = scope.ideal(cur, Some(ring))?;
        cur.expect(')')?;
        return Ok(FiltrationSpec::Closure(i));
    }
    scope.check_ideal(cur, &w, at, Some(ring))?;
    Ok(FiltrationSpec::Adic(w))
}

fn finish(cur: &mut Cursor) -> PResult<()> {
    if cur.at_end() {
        Ok(())
    } else {
        Err(cur.err("unexpected trailing input"))
    }
}

fn ring_decl(scope: &mut Scope, cur: &mut Cursor) -> PResult<RingDecl> {
    let (name, at) = cur.ident("a ring name")?;
    scope.declare(cur, &name, at, Kind::Ring)?;
    cur.expect('=')?;
    cur.keyword("poly")?;
    let vars_at = cur.pos;
    let vars = cur.list()?;
    if vars.is_empty() {
        return Err(cur.err_at(vars_at, "a ring needs at least one variable"));
    }
    if vars.len() > MAX_VARS {
        return Err(cur.err_at(vars_at, format!("at most {MAX_VARS} variables")));
    }
    let mut seen = Vec::new();
    for (v, at) in &vars {
        let ok = v.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(cur.err_at(*at, format!("'{v}' is not a variable name")));
        }
        if seen.contains(v) {
            return Err(cur.err_at(*at, format!("variable '{v}' repeated")));
        }
        seen.push(v.clone());
    }
    let mut relations = Vec::new();
    if cur.eat('/') {
        relations = cur.list()?;
    }
    let mut weights = None;
    if !cur.at_end() {
        cur.keyword("weights")?;
        let mut w = Vec::new();
        loop {
            let (v, at) = cur.number("a weight")?;
            if v == 0 || v > u32::MAX as u64 {
                return Err(cur.err_at(at, "weights must be positive"));
            }
            w.push(v as u32);
            if !cur.eat(',') {
                break;
            }
        }
        if w.len() != seen.len() {
            return Err(cur.err(format!("{} weights for {} variables", w.len(), seen.len())));
        }
        weights = Some(w);
    }
    finish(cur)?;
    let decl = RingDecl { name: name.clone(), vars: seen, relations: Vec::new(), weights };
    scope.check_polys(cur, &decl, &relations)?;
    let decl = RingDecl { relations: relations.into_iter().map(|(t, _)| t).collect(), ..decl };
    scope.rings.insert(name, decl.clone());
    Ok(decl)
}

fn ideal_decl(scope: &mut Scope, cur: &mut Cursor) -> PResult<IdealDecl> {
    let (name, at) = cur.ident("an ideal name")?;
    cur.keyword("in")?;
    let ring = scope.ring(cur)?;
    scope.declare(cur, &name, at, Kind::Ideal)?;
    cur.expect('=')?;
    let gens = cur.list()?;
    finish(cur)?;
    scope.check_polys(cur, &scope.rings[&ring], &gens)?;
    scope.ideal_rings.insert(name.clone(), ring.clone());
    Ok(IdealDecl { name, ring, gens: gens.into_iter().map(|(t, _)| t).collect() })
}

fn command(scope: &Scope, cur: &mut Cursor, word: &str, at: usize) -> PResult<Command> {
    let cmd = match word {
        "coeffs" => {
            let ring = scope.ring(cur)?;
            let ideal = scope.ideal(cur, Some(&ring))?;
            let o = options(cur, &["maxn"])?;
            Command::Coeffs { ring, ideal, maxn: o.get("maxn").map(|&v| v as usize) }
        }
        "closure" => Command::Closure { ideal: scope.ideal(cur, None)? },
        "hdeg" => {
            let ring = scope.ring(cur)?;
            let mut rel = None;
            if !cur.at_end() {
                cur.keyword("rel")?;
                rel = Some(scope.ideal(cur, Some(&ring))?);
            }
            Command::Hdeg { ring, rel }
        }
        "koszul" | "conjecture2" | "conjecture3" => {
            let ring = scope.ring(cur)?;
            let ideal = scope.ideal(cur, Some(&ring))?;
            match word {
                "koszul" => Command::Koszul { ring, ideal },
                "conjecture2" => Command::Conjecture2 { ring, ideal },
                _ => Command::Conjecture3 { ring, ideal },
            }
        }
        "bounds" => {
            let ring = scope.ring(cur)?;
            let ideal = scope.ideal(cur, Some(&ring))?;
            Command::Bounds { ring, ideal, flags: flags(cur, &["buchsbaum"])? }
        }
        "conjecture1" => {
            let ring = scope.ring(cur)?;
            let ideal = scope.ideal(cur, Some(&ring))?;
            Command::Conjecture1 { ring, ideal, flags: flags(cur, &[])? }
        }
        "reductions" => {
            let ring = scope.ring(cur)?;
            let ideal = scope.ideal(cur, Some(&ring))?;
            let o = options(cur, &["trials", "seed"])?;
            Command::Reductions { ring, ideal, trials: o.get("trials").map(|&v| v as usize), seed: o.get("seed").copied() }
        }
        "compare" => {
            let ring = scope.ring(cur)?;
            let lower = filtration(scope, cur, &ring)?;
            let upper = filtration(scope, cur, &ring)?;
            Command::Compare { ring, lower, upper }
        }
        "cohomology" => Command::Cohomology { ring: scope.ring(cur)? },
        _ => return Err(cur.err_at(at, format!("unknown command '{word}'"))),
    };
    finish(cur)?;
    Ok(cmd)
}

/// Parse a whole script.
pub fn parse(text: &str) -> PResult<SessionScript> {
    let mut script = SessionScript::default();
    let mut scope =
        Scope { field: FieldChoice::default(), kinds: HashMap::new(), rings: HashMap::new(), ideal_rings: HashMap::new() };
    for (idx, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor { line: idx + 1, text: body, pos: 0 };
        if cur.at_end() {
            continue;
        }
        let (word, at) = cur.ident("a statement")?;
        match word.as_str() {
            "field" => {
                if script.field.is_some() || !script.statements.is_empty() {
                    return Err(cur.err_at(at, "the field must be chosen once, before anything else"));
                }
                let (name, name_at) = cur.ident("Fp or QQ")?;
                let choice = match name.as_str() {
                    "QQ" => FieldChoice::Rationals,
                    "Fp" => {
                        let (p, p_at) = cur.number("a prime")?;
                        let p = u32::try_from(p).map_err(|_| cur.err_at(p_at, "prime out of range"))?;
                        PrimeField::new(p).map_err(|e| cur.err_at(p_at, e.to_string()))?;
                        FieldChoice::Prime(p)
                    }
                    _ => return Err(cur.err_at(name_at, format!("unknown field '{name}'"))),
                };
                finish(&mut cur)?;
                scope.field = choice;
                script.field = Some(choice);
            }
            "ring" => script.statements.push(Statement::Ring(ring_decl(&mut scope, &mut cur)?)),
            "ideal" => script.statements.push(Statement::Ideal(ideal_decl(&mut scope, &mut cur)?)),
            _ => script.statements.push(Statement::Command(command(&scope, &mut cur, &word, at)?)),
        }
    }
    Ok(script)
}

fn write_flags(f: &mut fmt::Formatter<'_>, flags: &InstanceFlags) -> fmt::Result {
    for (on, name) in [(flags.buchsbaum, "buchsbaum"), (flags.domain, "domain"), (flags.unmixed, "unmixed")] {
        if on {
            write!(f, " {name}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.keyword())?;
        match self {
            Command::Coeffs { ring, ideal, maxn } => {
                write!(f, " {ring} {ideal}")?;
                if let Some(n) = maxn {
                    write!(f, " maxn={n}")?;
                }
            }
            Command::Closure { ideal } => write!(f, " {ideal}")?,
            Command::Hdeg { ring, rel } => {
                write!(f, " {ring}")?;
                if let Some(j) = rel {
                    write!(f, " rel {j}")?;
                }
            }
            Command::Koszul { ring, ideal } | Command::Conjecture2 { ring, ideal } | Command::Conjecture3 { ring, ideal } => {
                write!(f, " {ring} {ideal}")?
            }
            Command::Bounds { ring, ideal, flags } | Command::Conjecture1 { ring, ideal, flags } => {
                write!(f, " {ring} {ideal}")?;
                write_flags(f, flags)?;
            }
            Command::Reductions { ring, ideal, trials, seed } => {
                write!(f, " {ring} {ideal}")?;
                if let Some(t) = trials {
                    write!(f, " trials={t}")?;
                }
                if let Some(s) = seed {
                    write!(f, " seed={s}")?;
                }
            }
            Command::Compare { ring, lower, upper } => write!(f, " {ring} {lower} {upper}")?,
            Command::Cohomology { ring } => write!(f, " {ring}")?,
        }
        Ok(())
    }
}

impl fmt::Display for SessionScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(field) = &self.field {
            writeln!(f, "field {field}")?;
        }
        for s in &self.statements {
            match s {
                Statement::Ring(r) => {
                    write!(f, "ring {} = poly({})", r.name, r.vars.join(", "))?;
                    if !r.relations.is_empty() {
                        write!(f, " / ({})", r.relations.join(", "))?;
                    }
                    if let Some(w) = &r.weights {
                        let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                        write!(f, " weights {}", w.join(", "))?;
                    }
                    writeln!(f)?;
                }
                Statement::Ideal(i) => writeln!(f, "ideal {} in {} = ({})", i.name, i.ring, i.gens.join(", "))?,
                Statement::Command(c) => writeln!(f, "{c}")?,
            }
        }
        Ok(())
    }
}
