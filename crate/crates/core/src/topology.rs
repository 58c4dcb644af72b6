//! Invariant arithmetic for connected sums of a few simply connected and
//! flat building blocks, and the existence rules for optimal metrics that
//! follow from anorexic sequences.

use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Primitive {
    S4,
    CP2,
    CP2bar,
    S2xS2,
    K3,
    K3bar,
    T4,
    S1xS3,
}

impl Primitive {
    pub const ALL: [Primitive; 8] = [
        Primitive::S4,
        Primitive::CP2,
        Primitive::CP2bar,
        Primitive::S2xS2,
        Primitive::K3,
        Primitive::K3bar,
        Primitive::T4,
        Primitive::S1xS3,
    ];

    pub fn parse(name: &str) -> Result<Self> {
        let p = match name.to_ascii_lowercase().as_str() {
            "s4" => Primitive::S4,
            "cp2" => Primitive::CP2,
            "cp2bar" => Primitive::CP2bar,
            "s2xs2" => Primitive::S2xS2,
            "k3" => Primitive::K3,
            "k3bar" => Primitive::K3bar,
            "t4" => Primitive::T4,
            "s1xs3" | "s3xs1" => Primitive::S1xS3,
            _ => return Err(Error::UnknownPrimitive(name.to_string())),
        };
        Ok(p)
    }

    pub fn name(self) -> &'static str {
        match self {
            Primitive::S4 => "S4",
            Primitive::CP2 => "CP2",
            Primitive::CP2bar => "~CP2",
            Primitive::S2xS2 => "S2xS2",
            Primitive::K3 => "K3",
            Primitive::K3bar => "~K3",
            Primitive::T4 => "T4",
            Primitive::S1xS3 => "S1xS3",
        }
    }

    /// Same manifold with the opposite orientation. `S4`, `S2xS2`, `T4` and
    /// `S1xS3` admit orientation-reversing diffeomorphisms.
    pub fn reversed(self) -> Self {
        match self {
            Primitive::CP2 => Primitive::CP2bar,
            Primitive::CP2bar => Primitive::CP2,
            Primitive::K3 => Primitive::K3bar,
            Primitive::K3bar => Primitive::K3,
            p => p,
        }
    }

    pub fn record(self) -> InvariantRecord {
        let r = |chi, tau, b_plus, b_minus, spin, simply_connected| InvariantRecord {
            chi,
            tau,
            b_plus,
            b_minus,
            spin,
            simply_connected,
        };
        match self {
            Primitive::S4 => r(2, 0, 0, 0, true, true),
            Primitive::CP2 => r(3, 1, 1, 0, false, true),
            Primitive::CP2bar => r(3, -1, 0, 1, false, true),
            Primitive::S2xS2 => r(4, 0, 1, 1, true, true),
            Primitive::K3 => r(24, -16, 3, 19, true, true),
            Primitive::K3bar => r(24, 16, 19, 3, true, true),
            Primitive::T4 => r(0, 0, 3, 3, true, false),
            Primitive::S1xS3 => r(0, 0, 0, 0, true, false),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldExpr {
    Primitive(Primitive),
    Sum(Box<ManifoldExpr>, Box<ManifoldExpr>),
    Reverse(Box<ManifoldExpr>),
}

impl ManifoldExpr {
    pub fn prim(p: Primitive) -> Self {
        ManifoldExpr::Primitive(p)
    }

    pub fn sum(a: Self, b: Self) -> Self {
        ManifoldExpr::Sum(Box::new(a), Box::new(b))
    }

    /// Orientation reversal; a double reversal collapses.
    pub fn reverse(e: Self) -> Self {
        match e {
            ManifoldExpr::Reverse(inner) => *inner,
            other => ManifoldExpr::Reverse(Box::new(other)),
        }
    }

    /// `k` copies of `e` summed left to right.
    pub fn copies(e: Self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parse("multiplier must be at least 1".into()));
        }
        let mut acc = e.clone();
        for _ in 1..k {
            acc = Self::sum(acc, e.clone());
        }
        Ok(acc)
    }

    /// Multiset of primitive summands with reversals pushed to the leaves.
    pub fn summands(&self) -> Summands {
        let mut s = Summands::default();
        self.collect(false, &mut s);
        s
    }

    fn collect(&self, rev: bool, out: &mut Summands) {
        match self {
            ManifoldExpr::Primitive(p) => out.add(if rev { p.reversed() } else { *p }, 1),
            ManifoldExpr::Sum(a, b) => {
                a.collect(rev, out);
                b.collect(rev, out);
            }
            ManifoldExpr::Reverse(e) => e.collect(!rev, out),
        }
    }
}

impl fmt::Display for ManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldExpr::Primitive(p) => write!(f, "{}", p.name()),
            ManifoldExpr::Sum(a, b) => write!(f, "({a} # {b})"),
            ManifoldExpr::Reverse(e) => write!(f, "~{e}"),
        }
    }
}

/// Primitive counts, indexed like [`Primitive::ALL`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Summands(pub [u32; 8]);

impl Summands {
    pub fn count(&self, p: Primitive) -> u32 {
        self.0[p as usize]
    }

    pub fn add(&mut self, p: Primitive, k: u32) {
        self.0[p as usize] += k;
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Drops `S4` summands and trades each `S2xS2` for `CP2 # ~CP2` once a
    /// `CP2` or `~CP2` summand is present.
    pub fn normalized(&self) -> Self {
        let mut s = *self;
        s.0[Primitive::S4 as usize] = 0;
        let pairs = s.count(Primitive::S2xS2);
        if pairs > 0 && (s.count(Primitive::CP2) > 0 || s.count(Primitive::CP2bar) > 0) {
            s.0[Primitive::S2xS2 as usize] = 0;
            s.add(Primitive::CP2, pairs);
            s.add(Primitive::CP2bar, pairs);
        }
        s
    }

    /// Only the listed primitives occur, with exactly these counts.
    fn is_exactly(&self, wanted: &[(Primitive, u32)]) -> bool {
        Primitive::ALL.iter().all(|p| {
            let w = wanted.iter().find(|(q, _)| q == p).map_or(0, |(_, k)| *k);
            self.count(*p) == w
        })
    }

    pub fn to_expr(&self) -> ManifoldExpr {
        let mut acc: Option<ManifoldExpr> = None;
        for p in Primitive::ALL {
            for _ in 0..self.count(p) {
                let e = ManifoldExpr::prim(p);
                acc = Some(match acc {
                    None => e,
                    Some(a) => ManifoldExpr::sum(a, e),
                });
            }
        }
        acc.unwrap_or(ManifoldExpr::prim(Primitive::S4))
    }
}

impl fmt::Display for Summands {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Primitive::ALL
            .iter()
            .filter(|p| self.count(**p) > 0)
            .map(|p| match self.count(*p) {
                1 => p.name().to_string(),
                k => format!("{k} {}", p.name()),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "S4")
        } else {
            write!(f, "{}", parts.join(" # "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantRecord {
    pub chi: i64,
    pub tau: i64,
    pub b_plus: i64,
    pub b_minus: i64,
    pub spin: bool,
    pub simply_connected: bool,
}

impl InvariantRecord {
    pub fn connected_sum(&self, o: &Self) -> Self {
        Self {
            chi: self.chi + o.chi - 2,
            tau: self.tau + o.tau,
            b_plus: self.b_plus + o.b_plus,
            b_minus: self.b_minus + o.b_minus,
            spin: self.spin && o.spin,
            simply_connected: self.simply_connected && o.simply_connected,
        }
    }

    pub fn reversed(&self) -> Self {
        Self { tau: -self.tau, b_plus: self.b_minus, b_minus: self.b_plus, ..*self }
    }

    /// `2χ + 3τ`.
    pub fn hitchin_number(&self) -> i64 {
        2 * self.chi + 3 * self.tau
    }

    pub fn is_consistent(&self) -> bool {
        self.b_plus >= 0
            && self.b_minus >= 0
            && (!self.simply_connected
                || (self.tau == self.b_plus - self.b_minus && self.chi == 2 + self.b_plus + self.b_minus))
    }
}

pub fn invariants(e: &ManifoldExpr) -> InvariantRecord {
    match e {
        ManifoldExpr::Primitive(p) => p.record(),
        ManifoldExpr::Sum(a, b) => invariants(a).connected_sum(&invariants(b)),
        ManifoldExpr::Reverse(inner) => invariants(inner).reversed(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Inequality {
    Pass,
    Boundary,
    Fail,
}

fn sign_class(v: i64) -> Inequality {
    match v.cmp(&0) {
        std::cmp::Ordering::Greater => Inequality::Pass,
        std::cmp::Ordering::Equal => Inequality::Boundary,
        std::cmp::Ordering::Less => Inequality::Fail,
    }
}

/// Necessary condition `2χ + 3τ ≥ 0` for Einstein metrics; equality
/// forces a locally hyper-Kähler metric.
pub fn hitchin_thorpe(r: &InvariantRecord) -> Inequality {
    sign_class(r.hitchin_number())
}

/// Necessary condition `2χ + 3τ ≤ 0` for scalar-flat anti-self-dual
/// metrics; equality forces a flat or hyper-Kähler finite cover.
pub fn lafontaine(r: &InvariantRecord) -> Inequality {
    sign_class(-r.hitchin_number())
}

/// Which branch of the classification of simply connected manifolds with
/// scalar-flat anti-self-dual metrics a record could fall into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum SfasdCase {
    /// `b₊ = 0`: homeomorphic to `k ~CP2`, needs `k ≥ 5`.
    NegativeDefinite { k: i64, admissible: bool },
    /// `b₊ = 1`: diffeomorphic to `CP2 # k ~CP2`, needs `k ≥ 10`.
    RationalSurface { k: i64, admissible: bool },
    /// `b₊ = 3`: diffeomorphic to K3.
    K3 { admissible: bool },
    Impossible { reason: String },
    NotApplicable,
}

impl SfasdCase {
    pub fn admissible(&self) -> bool {
        match self {
            SfasdCase::NegativeDefinite { admissible, .. }
            | SfasdCase::RationalSurface { admissible, .. }
            | SfasdCase::K3 { admissible } => *admissible,
            _ => false,
        }
    }
}

pub fn sfasd_classify(r: &InvariantRecord) -> SfasdCase {
    if !r.simply_connected {
        return SfasdCase::NotApplicable;
    }
    match r.b_plus {
        0 => SfasdCase::NegativeDefinite { k: r.b_minus, admissible: r.b_minus >= 5 },
        1 if r.spin => SfasdCase::Impossible { reason: "b+ = 1 with even intersection form".into() },
        1 => SfasdCase::RationalSurface { k: r.b_minus, admissible: r.b_minus >= 10 },
        3 => SfasdCase::K3 { admissible: *r == Primitive::K3.record() },
        b => SfasdCase::Impossible { reason: format!("b+ = {b} is not 0, 1 or 3") },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub derivable: bool,
    pub trace: Vec<String>,
}

/// Whether `e` is reached from `4 ~CP2`, `CP2 # 9 ~CP2`, the flat `T4` and
/// the Kummer K3 by connected sums of two derivable manifolds and by
/// summing with `~CP2`.
pub fn anorexic_derivable(e: &ManifoldExpr) -> Derivation {
    let s = e.summands().normalized();
    let mut trace = vec![format!("normalized to {s}")];
    let blocked: Vec<&str> = [Primitive::S2xS2, Primitive::K3bar, Primitive::S1xS3]
        .iter()
        .filter(|p| s.count(**p) > 0)
        .map(|p| p.name())
        .collect();
    if !blocked.is_empty() {
        trace.push(format!("no rule produces a summand {}", blocked.join(", ")));
        return Derivation { derivable: false, trace };
    }
    let (j, k) = (s.count(Primitive::CP2) as i64, s.count(Primitive::CP2bar) as i64);
    let (t4, k3) = (s.count(Primitive::T4), s.count(Primitive::K3));
    if k < 9 * j {
        trace.push(format!("{k} ~CP2 summands cannot pair each of {j} CP2 with nine ~CP2"));
        return Derivation { derivable: false, trace };
    }
    let mut seeds = 0;
    for _ in 0..j {
        trace.push("base: CP2 # 9 ~CP2 (orbifold resolution of S2xT2/Z2)".into());
        seeds += 1;
    }
    for _ in 0..t4 {
        trace.push("base: T4 (flat)".into());
        seeds += 1;
    }
    for _ in 0..k3 {
        trace.push("base: K3 (Kummer resolution of T4/Z2)".into());
        seeds += 1;
    }
    let mut spare = k - 9 * j;
    if seeds == 0 {
        if spare < 4 {
            trace.push(format!("only {spare} ~CP2 summands, fewer than the four of the smallest base"));
            return Derivation { derivable: false, trace };
        }
        trace.push("base: 4 ~CP2 (orbifold resolution of (S3xS1)/Z2)".into());
        spare -= 4;
        seeds = 1;
    }
    if seeds > 1 {
        trace.push(format!("wormhole sums join {seeds} derivable pieces"));
    }
    if spare > 0 {
        trace.push(format!("blow up {spare} times with Burns metrics (# ~CP2)"));
    }
    Derivation { derivable: true, trace }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EinsteinObstruction {
    Yes,
    No,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimalStatus {
    Nonexistent,
    Exists,
    Undecided,
    NotAnorexic,
}

fn ser_pi2<S: Serializer>(v: &Option<Rational64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(r) if r.is_integer() => s.serialize_i64(r.to_integer()),
        Some(r) => s.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub expression: String,
    pub invariants: InvariantRecord,
    pub einstein_obstructed: EinsteinObstruction,
    pub sfasd_case: SfasdCase,
    pub optimal_nonexistent: bool,
    pub status: OptimalStatus,
    pub rule: Option<String>,
    pub anorexic: bool,
    #[serde(rename = "I_R_pi2", serialize_with = "ser_pi2")]
    pub i_r_pi2: Option<Rational64>,
    pub trace: Vec<String>,
}

/// `𝓘_𝓡 = −8π²(χ + 3τ)` for manifolds with anorexic sequences, as a
/// multiple of π².
pub fn anorexic_i_r(r: &InvariantRecord) -> Rational64 {
    Rational64::from_integer(-8 * (r.chi + 3 * r.tau))
}

pub fn optimal_verdict(e: &ManifoldExpr) -> Verdict {
    let r = invariants(e);
    let s = e.summands().normalized();
    let derivation = anorexic_derivable(e);
    let einstein_obstructed = match hitchin_thorpe(&r) {
        Inequality::Fail => EinsteinObstruction::Yes,
        Inequality::Boundary => EinsteinObstruction::Boundary,
        Inequality::Pass => EinsteinObstruction::No,
    };
    let (status, rule) = if derivation.derivable {
        existence_rule(&r, &s)
    } else {
        (OptimalStatus::NotAnorexic, None)
    };
    Verdict {
        expression: s.to_string(),
        invariants: r,
        einstein_obstructed,
        sfasd_case: sfasd_classify(&r),
        optimal_nonexistent: status == OptimalStatus::Nonexistent,
        status,
        rule,
        anorexic: derivation.derivable,
        i_r_pi2: derivation.derivable.then(|| anorexic_i_r(&r)),
        trace: derivation.trace,
    }
}

/// Decision for a manifold known to carry anorexic sequences: an optimal
/// metric would have to be scalar-flat anti-self-dual.
fn existence_rule(r: &InvariantRecord, s: &Summands) -> (OptimalStatus, Option<String>) {
    use OptimalStatus::*;
    let say = |st: OptimalStatus, why: &str| (st, Some(why.to_string()));
    let sc = r.simply_connected;
    let cp2bar = s.count(Primitive::CP2bar);
    match r.b_plus {
        b if b >= 4 => say(Nonexistent, "b+ >= 4"),
        2 => say(Nonexistent, "b+ = 2"),
        3 if sc && s.is_exactly(&[(Primitive::K3, 1)]) => {
            say(Exists, "diffeomorphic to K3: hyper-Kaehler metrics are scalar-flat anti-self-dual")
        }
        3 if sc => say(Nonexistent, "b+ = 3, simply connected, not diffeomorphic to K3"),
        1 if sc => {
            let rational = s.count(Primitive::CP2) == 1 && s.is_exactly(&[(Primitive::CP2, 1), (Primitive::CP2bar, cp2bar)]);
            if !rational || cp2bar < 10 {
                say(Nonexistent, "b+ = 1, simply connected, not diffeomorphic to CP2 # k ~CP2 with k >= 10")
            } else if cp2bar >= 14 {
                say(Exists, "CP2 # k ~CP2 with k >= 14 carries scalar-flat anti-self-dual metrics")
            } else {
                say(Undecided, "CP2 # k ~CP2 with 10 <= k <= 13: no rule decides")
            }
        }
        0 if sc && r.b_minus == 4 => say(
            Nonexistent,
            "b+ = 0 and 2chi + 3tau = 0: a scalar-flat anti-self-dual metric would be hyper-Kaehler, \
             which needs self-dual harmonic forms",
        ),
        0 if sc && s.is_exactly(&[(Primitive::CP2bar, cp2bar)]) && cp2bar >= 6 => {
            say(Exists, "k ~CP2 with k >= 6 carries scalar-flat anti-self-dual metrics")
        }
        0 if sc => say(Undecided, "b+ = 0: undecided by the available rules"),
        _ if s.is_exactly(&[(Primitive::T4, 1)]) => say(Exists, "the flat metric has K = 0"),
        _ => say(Undecided, "not simply connected with b+ < 4, b+ != 2: no rule applies"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneralTypeBounds {
    #[serde(rename = "I_r_pi2", serialize_with = "ser_ratio")]
    pub i_r: Rational64,
    #[serde(rename = "I_R_lower_pi2", serialize_with = "ser_ratio")]
    pub i_big_r_lower: Rational64,
    #[serde(rename = "I_R_upper_pi2", serialize_with = "ser_ratio")]
    pub i_big_r_upper: Rational64,
    #[serde(rename = "west_lower_pi2", serialize_with = "ser_ratio")]
    pub west_lower: Rational64,
}

fn ser_ratio<S: Serializer>(v: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_pi2(&Some(*v), s)
}

/// Bounds for `M = X # ℓ ~CP2` with `X` minimal of general type, all as
/// multiples of π². `r` must be the record of `M`.
pub fn general_type_bounds(c1sq: i64, ell: i64, r: &InvariantRecord) -> Result<GeneralTypeBounds> {
    if c1sq < 0 || ell < 0 {
        return Err(Error::InvalidParameter(format!("c1^2 and l must be non-negative (got {c1sq}, {ell})")));
    }
    if r.hitchin_number() != c1sq - ell {
        return Err(Error::InvalidParameter(format!(
            "record has 2chi + 3tau = {} but c1^2(X) - l = {}",
            r.hitchin_number(),
            c1sq - ell
        )));
    }
    let c = Rational64::from_integer(c1sq);
    let top = Rational64::from_integer(-8 * (r.chi + 3 * r.tau));
    Ok(GeneralTypeBounds {
        i_r: Rational64::from_integer(8 * (c1sq + ell)),
        i_big_r_lower: c * Rational64::new(16, 3) + top,
        i_big_r_upper: c * 8 + top,
        west_lower: c * Rational64::new(8, 3),
    })
}

/// Parses `CP2 # 9 ~CP2`, `2CP2#18CP2bar`, `~(K3 # T4)` and similar.
pub fn parse_expr(src: &str) -> Result<ManifoldExpr> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("unexpected {:?} in `{src}`", p.tokens[p.pos])));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Int(u32),
    Hash,
    Tilde,
    Open,
    Close,
    Times,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '#' => {
                out.push(Token::Hash);
                i += 1;
            }
            '~' => {
                out.push(Token::Tilde);
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            '*' | '·' => {
                out.push(Token::Times);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| Error::Parse(format!("multiplier `{s}` is too large")))?;
                out.push(Token::Int(v));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Token::Name(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<ManifoldExpr> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Token::Hash) {
            self.pos += 1;
            acc = ManifoldExpr::sum(acc, self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ManifoldExpr> {
        if let Some(Token::Int(k)) = self.peek().cloned() {
            self.pos += 1;
            if self.peek() == Some(&Token::Times) {
                self.pos += 1;
            }
            return ManifoldExpr::copies(self.factor()?, k);
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<ManifoldExpr> {
        match self.next() {
            Some(Token::Tilde) => Ok(ManifoldExpr::reverse(self.factor()?)),
            Some(Token::Open) => {
                let e = self.sum()?;
                match self.next() {
                    Some(Token::Close) => Ok(e),
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            Some(Token::Name(n)) => Primitive::parse(&n).map(ManifoldExpr::prim),
            Some(t) => Err(Error::Parse(format!("expected a manifold, found {t:?}"))),
            None => Err(Error::Parse("expression ends early".into())),
        }
    }
}
