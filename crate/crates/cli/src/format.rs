//! The `.fol` movie format and the `.mov` script format.
//!
//! Both are line oriented: one declaration per line, `#` starts a comment,
//! tokens are separated by whitespace. A `.fol` document may also be written
//! on a single line with declarations separated by ` ; `, which is how census
//! files store one movie per line.
//!
//! ```text
//! fol 1 genus=0
//! elliptic n1 -
//! elliptic p1 +
//! arc a1 p1 n1
//! rot n1 : a1
//! rot p1 : a1
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use folcalc::realization::base_movie;
use folcalc::{
    Arc, ArcId, ChangeVariant, EllipticId, FingerData, FoliationMovie, Move, MoveScript, Resolution, SaddleEvent,
    Side, Sign,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolDocument {
    pub version: u32,
    pub genus: u32,
    pub elliptic: Vec<(EllipticId, Sign)>,
    pub arcs: Vec<Arc>,
    pub rotations: Vec<(EllipticId, Vec<ArcId>)>,
    pub events: Vec<SaddleEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovDocument {
    pub version: u32,
    pub steps: Vec<Move>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Statement<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

impl Statement<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn token(&self, i: usize, what: &str) -> Result<&Token<'_>, ParseError> {
        self.tokens
            .get(i)
            .ok_or_else(|| self.err(self.end_column, format!("missing {what}")))
    }

    fn expect_len(&self, n: usize) -> Result<(), ParseError> {
        match self.tokens.get(n) {
            Some(t) => Err(self.err(t.column, format!("unexpected token `{}`", t.text))),
            None if self.tokens.len() < n => Err(self.err(self.end_column, "statement is incomplete")),
            None => Ok(()),
        }
    }

    /// Value of a `key=value` token.
    fn keyed(&self, i: usize, key: &str) -> Result<(&str, usize), ParseError> {
        let t = self.token(i, &format!("{key}=..."))?;
        match t.text.split_once('=') {
            Some((k, v)) if k == key => Ok((v, t.column + k.len() + 1)),
            _ => Err(self.err(t.column, format!("expected {key}=..., found `{}`", t.text))),
        }
    }
}

/// Split into statements, stripping comments; columns are 1-based.
fn statements(text: &str, allow_semicolons: bool) -> Vec<Statement<'_>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap();
        let mut start = 0;
        let pieces: Vec<&str> = if allow_semicolons {
            line.split(';').collect()
        } else {
            vec![line]
        };
        for piece in pieces {
            let mut tokens = Vec::new();
            let mut offset = 0;
            for word in piece.split_whitespace() {
                let at = piece[offset..].find(word).unwrap() + offset;
                tokens.push(Token {
                    text: word,
                    column: start + at + 1,
                });
                offset = at + word.len();
            }
            if !tokens.is_empty() {
                out.push(Statement {
                    line: ln + 1,
                    tokens,
                    end_column: start + piece.trim_end().len() + 1,
                });
            }
            start += piece.len() + 1;
        }
    }
    out
}

fn sign(st: &Statement, i: usize) -> Result<Sign, ParseError> {
    let t = st.token(i, "sign")?;
    match t.text {
        "+" => Ok(Sign::Positive),
        "-" => Ok(Sign::Negative),
        other => Err(st.err(t.column, format!("expected + or -, found `{other}`"))),
    }
}

fn number<T: std::str::FromStr>(st: &Statement, text: &str, column: usize, what: &str) -> Result<T, ParseError> {
    text.parse()
        .map_err(|_| st.err(column, format!("expected {what}, found `{text}`")))
}

fn header(st: &Statement, magic: &str) -> Result<u32, ParseError> {
    let t = st.token(0, "header")?;
    if t.text != magic {
        return Err(st.err(t.column, format!("expected header `{magic} 1 ...`, found `{}`", t.text)));
    }
    let v = st.token(1, "format version")?;
    let version: u32 = number(st, v.text, v.column, "format version")?;
    if version != 1 {
        return Err(st.err(v.column, format!("unsupported format version {version}")));
    }
    Ok(version)
}

pub fn parse_fol(text: &str) -> Result<FolDocument, ParseError> {
    let sts = statements(text, true);
    let Some(first) = sts.first() else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "empty document".into(),
        });
    };
    let version = header(first, "fol")?;
    let (g, gc) = first.keyed(2, "genus")?;
    let genus = number(first, g, gc, "genus")?;
    first.expect_len(3)?;

    let mut doc = FolDocument {
        version,
        genus,
        elliptic: Vec::new(),
        arcs: Vec::new(),
        rotations: Vec::new(),
        events: Vec::new(),
    };
    let mut seen_points = BTreeSet::new();
    let mut seen_arcs = BTreeSet::new();
    let mut seen_rot = BTreeSet::new();
    for st in &sts[1..] {
        let head = &st.tokens[0];
        match head.text {
            "elliptic" => {
                let id = st.token(1, "elliptic id")?;
                if !seen_points.insert(id.text) {
                    return Err(st.err(id.column, format!("duplicate elliptic id `{}`", id.text)));
                }
                doc.elliptic.push((id.text.into(), sign(st, 2)?));
                st.expect_len(3)?;
            }
            "arc" => {
                let id = st.token(1, "arc id")?;
                if !seen_arcs.insert(id.text) {
                    return Err(st.err(id.column, format!("duplicate arc id `{}`", id.text)));
                }
                doc.arcs.push(Arc {
                    id: id.text.into(),
                    pos_end: st.token(2, "positive endpoint")?.text.into(),
                    neg_end: st.token(3, "negative endpoint")?.text.into(),
                });
                st.expect_len(4)?;
            }
            "rot" => {
                let id = st.token(1, "elliptic id")?;
                if !seen_rot.insert(id.text) {
                    return Err(st.err(id.column, format!("duplicate rotation for `{}`", id.text)));
                }
                let colon = st.token(2, "`:`")?;
                if colon.text != ":" {
                    return Err(st.err(colon.column, format!("expected `:`, found `{}`", colon.text)));
                }
                let ends = st.tokens[3..].iter().map(|t| ArcId::from(t.text)).collect();
                doc.rotations.push((id.text.into(), ends));
            }
            "event" => doc.events.push(parse_event(st)?),
            other => return Err(st.err(head.column, format!("unknown directive `{other}`"))),
        }
    }
    Ok(doc)
}

fn parse_event(st: &Statement) -> Result<SaddleEvent, ParseError> {
    let r = st.token(1, "rank")?;
    let rank = number(st, r.text, r.column, "rank")?;
    let s = sign(st, 2)?;
    let a: ArcId = st.token(3, "first arc")?.text.into();
    let b: ArcId = st.token(4, "second arc")?.text.into();
    let (c, cc) = st.keyed(5, "corridor")?;
    let side = |x: &str, col: usize| match x {
        "L" => Ok(Side::Left),
        "R" => Ok(Side::Right),
        other => Err(st.err(col, format!("corridor side must be L or R, found `{other}`"))),
    };
    let (c1, c2) = c
        .split_once(',')
        .ok_or_else(|| st.err(cc, "corridor needs two sides, as in L,L"))?;
    let corridor = [side(c1, cc)?, side(c2, cc + c1.len() + 1)?];
    let (res, rc) = st.keyed(6, "resolution")?;
    let resolution = match res {
        "1" => Resolution::Cross,
        "2" => Resolution::Parallel,
        other => return Err(st.err(rc, format!("resolution must be 1 or 2, found `{other}`"))),
    };
    st.expect_len(7)?;
    Ok(SaddleEvent {
        rank,
        sign: s,
        arcs: [a, b],
        corridor,
        resolution,
    })
}

impl FolDocument {
    pub fn to_movie(&self) -> FoliationMovie {
        FoliationMovie::with_rotation(
            self.genus,
            self.elliptic.iter().cloned().collect(),
            self.arcs.iter().cloned(),
            self.rotations.iter().cloned().collect(),
            self.events.iter().cloned(),
        )
    }

    /// Normalized document: ids sorted, ranks `1..=h`, and for valid movies
    /// the least rotation of the event list first.
    pub fn from_movie(movie: &FoliationMovie) -> Self {
        let m = if movie.validate().ok() { least_rotation(movie) } else { movie.renumbered() };
        FolDocument {
            version: 1,
            genus: m.genus,
            elliptic: m.elliptic.iter().map(|(id, s)| (id.clone(), *s)).collect(),
            arcs: m.arcs.values().cloned().collect(),
            rotations: m.rotation.iter().map(|(id, r)| (id.clone(), r.clone())).collect(),
            events: m.events.clone(),
        }
    }
}

fn event_key(e: &SaddleEvent) -> (Sign, ArcId, ArcId) {
    (e.sign, e.arcs[0].clone(), e.arcs[1].clone())
}

/// The same cyclic movie started at the event that makes the event list
/// lexicographically least, ranks renumbered.
fn least_rotation(movie: &FoliationMovie) -> FoliationMovie {
    let h = movie.events.len();
    if h == 0 {
        return movie.renumbered();
    }
    let keys: Vec<_> = movie.events.iter().map(event_key).collect();
    let best = (0..h)
        .min_by(|&x, &y| {
            let a = keys[x..].iter().chain(&keys[..x]);
            let b = keys[y..].iter().chain(&keys[..y]);
            a.cmp(b)
        })
        .unwrap();
    let start = movie.slice_at(best as i64).expect("valid movie");
    let mut events: Vec<SaddleEvent> = movie.events[best..].iter().chain(&movie.events[..best]).cloned().collect();
    for (i, e) in events.iter_mut().enumerate() {
        e.rank = i as u32 + 1;
    }
    let rotation: BTreeMap<EllipticId, Vec<ArcId>> = start
        .arcs()
        .flat_map(|a| [(a.pos_end.clone(), vec![a.id.clone()]), (a.neg_end.clone(), vec![a.id.clone()])])
        .collect();
    FoliationMovie::with_rotation(movie.genus, movie.elliptic.clone(), start.arcs().cloned(), rotation, events)
}

fn side_char(s: Side) -> char {
    match s {
        Side::Left => 'L',
        Side::Right => 'R',
    }
}

impl FolDocument {
    fn statements(&self) -> Vec<String> {
        let mut out = vec![format!("fol {} genus={}", self.version, self.genus)];
        for (id, s) in &self.elliptic {
            out.push(format!("elliptic {id} {s}"));
        }
        for a in &self.arcs {
            out.push(format!("arc {} {} {}", a.id, a.pos_end, a.neg_end));
        }
        for (id, ends) in &self.rotations {
            let ends: Vec<&str> = ends.iter().map(|a| a.as_str()).collect();
            out.push(format!("rot {id} : {}", ends.join(" ")).trim_end().to_string());
        }
        for e in &self.events {
            out.push(format!(
                "event {} {} {} {} corridor={},{} resolution={}",
                e.rank,
                e.sign,
                e.arcs[0],
                e.arcs[1],
                side_char(e.corridor[0]),
                side_char(e.corridor[1]),
                match e.resolution {
                    Resolution::Cross => 1,
                    Resolution::Parallel => 2,
                }
            ));
        }
        out
    }

    pub fn single_line(&self) -> String {
        self.statements().join(" ; ")
    }
}

impl fmt::Display for FolDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.statements() {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

pub fn serialize_fol(movie: &FoliationMovie) -> String {
    FolDocument::from_movie(movie).to_string()
}

/// `serialize(parse(text))`; the fixed point of the format.
pub fn normalize_fol(text: &str) -> Result<String, ParseError> {
    Ok(serialize_fol(&parse_fol(text)?.to_movie()))
}

pub fn parse_mov(text: &str) -> Result<MovDocument, ParseError> {
    let sts = statements(text, false);
    let Some(first) = sts.first() else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "empty document".into(),
        });
    };
    let version = header(first, "mov")?;
    let (base, bc) = first.keyed(2, "base")?;
    if base != "trivial" {
        return Err(first.err(bc, format!("unknown base `{base}`, only `trivial` is supported")));
    }
    first.expect_len(3)?;
    let mut steps = Vec::new();
    for st in &sts[1..] {
        let head = &st.tokens[0];
        let rank = |i: usize| -> Result<u32, ParseError> {
            let t = st.token(i, "rank")?;
            number(st, t.text, t.column, "rank")
        };
        let mv = match head.text {
            "swap" => {
                st.expect_len(3)?;
                Move::SwapPi { r1: rank(1)?, r2: rank(2)? }
            }
            "change" => {
                let (v, vc) = st.keyed(3, "variant")?;
                let variant = match v {
                    "second" => ChangeVariant::Second,
                    "third" => ChangeVariant::Third,
                    other => return Err(st.err(vc, format!("variant must be second or third, found `{other}`"))),
                };
                st.expect_len(4)?;
                Move::ChangeInFoliation { first: rank(1)?, second: rank(2)?, variant }
            }
            "finger" | "unfinger" => {
                let (o, oc) = st.keyed(5, "open")?;
                let (c, cc) = st.keyed(6, "close")?;
                let (s, sc) = st.keyed(7, "sign")?;
                st.expect_len(8)?;
                let open_sign = match s {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    other => return Err(st.err(sc, format!("expected + or -, found `{other}`"))),
                };
                let d = FingerData {
                    target: st.token(1, "target")?.text.into(),
                    new_pos: st.token(2, "new positive id")?.text.into(),
                    new_neg: st.token(3, "new negative id")?.text.into(),
                    new_arc: st.token(4, "new arc id")?.text.into(),
                    open_rank: number(st, o, oc, "rank")?,
                    close_rank: number(st, c, cc, "rank")?,
                    open_sign,
                };
                if head.text == "finger" {
                    Move::FingerMove(d)
                } else {
                    Move::InverseFingerMove(d)
                }
            }
            other => return Err(st.err(head.column, format!("unknown directive `{other}`"))),
        };
        steps.push(mv);
    }
    Ok(MovDocument { version, steps })
}

impl MovDocument {
    pub fn to_script(&self) -> MoveScript {
        MoveScript {
            base: base_movie(),
            steps: self.steps.clone(),
        }
    }
}

pub fn serialize_mov(script: &MoveScript) -> String {
    let mut out = String::from("mov 1 base=trivial\n");
    for s in &script.steps {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}
