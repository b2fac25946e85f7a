//! Plain-text semiring files and semiring constructors.
//!
//! Two file kinds are accepted. A semiring file lists both tables:
//!
//! ```text
//! semiring r1
//! elements: 0 1
//! add:
//! 0 1
//! 1 1
//! mul:
//! 0 0
//! 0 1
//! ```
//!
//! A lattice file gives a Hasse diagram; addition is join and
//! multiplication is either `meet` or an explicit table:
//!
//! ```text
//! lattice diamond
//! elements: 0 c a b 1
//! covers: 0<c, c<a, c<b, a<1, b<1
//! mul: meet
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Element order is preserved
//! everywhere.

use thiserror::Error;

use crate::error::Error;
use crate::kernel::{FiniteSemiring, OpTable, OrderMatrix, SemiringError, StructuralError, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("covers form a cycle through `{0}` and `{1}`")]
    Cyclic(String, String),
    #[error("cover {0}<{1} is implied by transitivity")]
    RedundantCover(String, String),
    #[error("`{0}` and `{1}` have no unique {2}")]
    NotALattice(String, String, &'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown element `{token}`")]
    UnknownToken {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("line {line}: row has {found} entries, expected {expected}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("missing `{0}` section")]
    MissingSection(&'static str),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{error}")]
    Semiring {
        elements: Vec<String>,
        error: SemiringError,
    },
}

impl SpecError {
    /// Axiom-violation report, when the text parsed but the tables are not a
    /// semiring.
    pub fn axiom_report(&self) -> Option<(&[String], &crate::kernel::AxiomReport)> {
        match self {
            SpecError::Semiring {
                elements,
                error: SemiringError::Axioms(report),
            } => Some((elements, report)),
            _ => None,
        }
    }

    /// True for lexical/syntactic problems, as opposed to semantic failures
    /// (law violations, non-lattices).
    pub fn is_input_error(&self) -> bool {
        match self {
            SpecError::Syntax { .. }
            | SpecError::UnknownToken { .. }
            | SpecError::RowLength { .. }
            | SpecError::MissingSection(_) => true,
            SpecError::Semiring { error, .. } => matches!(error, SemiringError::Structural(_)),
            SpecError::Lattice(LatticeError::Cyclic(..) | LatticeError::RedundantCover(..)) => true,
            SpecError::Lattice(LatticeError::NotALattice(..)) => false,
        }
    }
}

/// Hasse diagram of a finite poset: element names and `(lower, upper)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverRelation {
    pub elements: Vec<String>,
    pub pairs: Vec<(usize, usize)>,
}

impl CoverRelation {
    /// Builds from name pairs; panics on unknown names.
    pub fn from_names(elements: &[&str], pairs: &[(&str, &str)]) -> Self {
        let idx = |n: &str| {
            elements
                .iter()
                .position(|e| *e == n)
                .unwrap_or_else(|| panic!("unknown element {n}"))
        };
        CoverRelation {
            elements: elements.iter().map(|s| s.to_string()).collect(),
            pairs: pairs.iter().map(|(a, b)| (idx(a), idx(b))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub order: OrderMatrix,
    pub join: OpTable,
    pub meet: OpTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeMul {
    Meet,
    Table(OpTable),
}

pub fn lattice_from_covers(covers: &CoverRelation) -> Result<Lattice, SpecError> {
    let k = covers.elements.len();
    let names = &covers.elements;
    if k == 0 {
        return Err(semiring_err(names, StructuralError::EmptyCarrier));
    }
    if k > MAX_ORDER {
        return Err(semiring_err(names, StructuralError::TooLarge(k)));
    }
    let mut leq = vec![false; k * k];
    for x in 0..k {
        leq[x * k + x] = true;
    }
    for &(lo, hi) in &covers.pairs {
        if lo == hi {
            return Err(LatticeError::Cyclic(names[lo].clone(), names[hi].clone()).into());
        }
        leq[lo * k + hi] = true;
    }
    for z in 0..k {
        for x in 0..k {
            if leq[x * k + z] {
                for y in 0..k {
                    if leq[z * k + y] {
                        leq[x * k + y] = true;
                    }
                }
            }
        }
    }
    for x in 0..k {
        for y in x + 1..k {
            if leq[x * k + y] && leq[y * k + x] {
                return Err(LatticeError::Cyclic(names[x].clone(), names[y].clone()).into());
            }
        }
    }
    let order = OrderMatrix::from_fn(k, |x, y| leq[x * k + y]);
    for &(lo, hi) in &covers.pairs {
        let between = (0..k).any(|z| z != lo && z != hi && order.leq(lo, z) && order.leq(z, hi));
        if between {
            return Err(LatticeError::RedundantCover(names[lo].clone(), names[hi].clone()).into());
        }
    }

    // Least element of `cands` under `below`, if unique.
    let extreme = |cands: &[usize], below: &dyn Fn(usize, usize) -> bool| {
        cands.iter().copied().find(|&z| cands.iter().all(|&w| below(z, w)))
    };
    let mut join = vec![0; k * k];
    let mut meet = vec![0; k * k];
    for x in 0..k {
        for y in 0..k {
            let upper: Vec<usize> = (0..k).filter(|&z| order.leq(x, z) && order.leq(y, z)).collect();
            let lower: Vec<usize> = (0..k).filter(|&z| order.leq(z, x) && order.leq(z, y)).collect();
            let bad = |what| LatticeError::NotALattice(names[x].clone(), names[y].clone(), what);
            join[x * k + y] = extreme(&upper, &|a, b| order.leq(a, b)).ok_or_else(|| bad("least upper bound"))?;
            meet[x * k + y] = extreme(&lower, &|a, b| order.leq(b, a)).ok_or_else(|| bad("greatest lower bound"))?;
        }
    }
    Ok(Lattice {
        order,
        join: OpTable::new(k, join).expect("join entries in range"),
        meet: OpTable::new(k, meet).expect("meet entries in range"),
    })
}

fn semiring_err(names: &[String], e: impl Into<SemiringError>) -> SpecError {
    SpecError::Semiring {
        elements: names.to_vec(),
        error: e.into(),
    }
}

/// Semiring with join as addition and the given multiplication.
pub fn semiring_from_lattice(
    name: &str,
    covers: &CoverRelation,
    mul: LatticeMul,
) -> Result<FiniteSemiring, SpecError> {
    let lattice = lattice_from_covers(covers)?;
    let mul = match mul {
        LatticeMul::Meet => lattice.meet,
        LatticeMul::Table(t) => t,
    };
    FiniteSemiring::new(name, covers.elements.clone(), lattice.join, mul)
        .map_err(|e| semiring_err(&covers.elements, e))
}

/// The ring of integers modulo `n`.
pub fn zn_ring(n: usize) -> Result<FiniteSemiring, Error> {
    if n < 2 {
        return Err(Error::Unsupported(format!("Z_n needs n >= 2, got {n}")));
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            operation: "zn_ring",
            order: n,
            max: MAX_ORDER,
        });
    }
    let add = OpTable::from_fn(n, |i, j| (i + j) % n).expect("in range");
    let mul = OpTable::from_fn(n, |i, j| (i * j) % n).expect("in range");
    Ok(FiniteSemiring::with_numeric_names(format!("Z{n}"), add, mul).expect("Z_n is a ring"))
}

struct Line<'a> {
    number: usize,
    // (1-based column, token)
    tokens: Vec<(usize, &'a str)>,
    text: &'a str,
}

fn lex(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s, &content[s..pos]));
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if let Some(s) = start {
            tokens.push((s, &content[s..]));
        }
        if tokens.is_empty() {
            continue;
        }
        let tokens = tokens
            .into_iter()
            .map(|(byte, t)| (content[..byte].chars().count() + 1, t))
            .collect();
        out.push(Line {
            number: i + 1,
            tokens,
            text: content,
        });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> SpecError {
    SpecError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn next_line(&mut self, what: &'static str) -> Result<&Line<'a>, SpecError> {
        let line = self.lines.get(self.pos).ok_or(SpecError::MissingSection(what))?;
        self.pos += 1;
        Ok(line)
    }

    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    fn header(&mut self) -> Result<(&'a str, String), SpecError> {
        let line = self.next_line("semiring")?;
        let (col, kw) = line.tokens[0];
        if kw != "semiring" && kw != "lattice" {
            return Err(syntax(line.number, col, format!("expected `semiring` or `lattice`, found `{kw}`")));
        }
        if line.tokens.len() != 2 {
            return Err(syntax(line.number, col, "header must be `semiring <name>` or `lattice <name>`"));
        }
        Ok((kw, line.tokens[1].1.to_string()))
    }

    fn elements(&mut self) -> Result<Vec<String>, SpecError> {
        let line = self.next_line("elements:")?;
        let (col, kw) = line.tokens[0];
        if kw != "elements:" {
            return Err(syntax(line.number, col, format!("expected `elements:`, found `{kw}`")));
        }
        let mut names: Vec<String> = Vec::new();
        for &(col, tok) in &line.tokens[1..] {
            if tok.contains(['<', ',']) {
                return Err(syntax(line.number, col, format!("element name `{tok}` may not contain `<` or `,`")));
            }
            if names.iter().any(|n| n == tok) {
                return Err(syntax(line.number, col, format!("duplicate element `{tok}`")));
            }
            names.push(tok.to_string());
        }
        if names.is_empty() {
            return Err(syntax(line.number, col, "element list is empty"));
        }
        if names.len() > MAX_ORDER {
            return Err(syntax(line.number, col, format!("at most {MAX_ORDER} elements are supported")));
        }
        Ok(names)
    }

    fn keyword_line(&mut self, kw: &'static str) -> Result<&Line<'a>, SpecError> {
        let line = self.next_line(kw)?;
        let (col, found) = line.tokens[0];
        if found != kw {
            return Err(syntax(line.number, col, format!("expected `{kw}`, found `{found}`")));
        }
        Ok(line)
    }

    fn table(&mut self, kw: &'static str, names: &[String]) -> Result<OpTable, SpecError> {
        let line = self.keyword_line(kw)?;
        if line.tokens.len() > 1 {
            let (col, tok) = line.tokens[1];
            return Err(syntax(line.number, col, format!("unexpected `{tok}` after `{kw}`")));
        }
        self.rows(names)
    }

    fn rows(&mut self, names: &[String]) -> Result<OpTable, SpecError> {
        let k = names.len();
        let mut entries = Vec::with_capacity(k * k);
        for _ in 0..k {
            let line = self.next_line("table row")?;
            if line.tokens.len() != k {
                return Err(SpecError::RowLength {
                    line: line.number,
                    expected: k,
                    found: line.tokens.len(),
                });
            }
            for &(column, tok) in &line.tokens {
                let idx = names.iter().position(|n| n == tok).ok_or_else(|| SpecError::UnknownToken {
                    line: line.number,
                    column,
                    token: tok.to_string(),
                })?;
                entries.push(idx);
            }
        }
        OpTable::new(k, entries).map_err(|e| semiring_err(names, e))
    }

    fn covers(&mut self, names: &[String]) -> Result<Vec<(usize, usize)>, SpecError> {
        let line = self.keyword_line("covers:")?;
        let number = line.number;
        let body_start = line.text.find("covers:").expect("keyword present") + "covers:".len();
        let body = &line.text[body_start..];
        let mut pairs = Vec::new();
        let mut offset = body_start;
        for piece in body.split(',') {
            let column = line.text[..offset].chars().count() + 1 + (piece.len() - piece.trim_start().len());
            offset += piece.len() + 1;
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (lo, hi) = piece
                .split_once('<')
                .ok_or_else(|| syntax(number, column, format!("expected `lower<upper`, found `{piece}`")))?;
            let lookup = |tok: &str| {
                let tok = tok.trim();
                names.iter().position(|n| n == tok).ok_or_else(|| SpecError::UnknownToken {
                    line: number,
                    column,
                    token: tok.to_string(),
                })
            };
            pairs.push((lookup(lo)?, lookup(hi)?));
        }
        Ok(pairs)
    }
}

/// Parses either file kind into a validated semiring.
pub fn parse_semiring(text: &str) -> Result<FiniteSemiring, SpecError> {
    let mut p = Parser {
        lines: lex(text),
        pos: 0,
    };
    let (kind, name) = p.header()?;
    let names = p.elements()?;
    let semiring = if kind == "semiring" {
        let add = p.table("add:", &names)?;
        let mul = p.table("mul:", &names)?;
        FiniteSemiring::new(name, names.clone(), add, mul).map_err(|e| semiring_err(&names, e))?
    } else {
        let pairs = p.covers(&names)?;
        let mul = match p.peek() {
            None => LatticeMul::Meet,
            Some(_) => {
                let line = p.keyword_line("mul:")?;
                match line.tokens.get(1) {
                    Some(&(_, "meet")) if line.tokens.len() == 2 => LatticeMul::Meet,
                    Some(&(col, tok)) => {
                        return Err(syntax(line.number, col, format!("expected `meet` or table rows, found `{tok}`")))
                    }
                    None => LatticeMul::Table(p.rows(&names)?),
                }
            }
        };
        let covers = CoverRelation {
            elements: names,
            pairs,
        };
        semiring_from_lattice(&name, &covers, mul)?
    };
    if let Some(extra) = p.peek() {
        return Err(syntax(extra.number, extra.tokens[0].0, "trailing content after tables"));
    }
    Ok(semiring)
}

/// Canonical semiring-file text. Columns are padded to the widest name.
pub fn render_semiring(sr: &FiniteSemiring) -> String {
    let names = sr.elements();
    let width = names.iter().map(|n| n.chars().count()).max().unwrap_or(1);
    let mut out = format!("semiring {}\nelements: {}\n", sr.name(), names.join(" "));
    for (kw, table) in [("add:", sr.add_table()), ("mul:", sr.mul_table())] {
        out.push_str(kw);
        out.push('\n');
        for row in table.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|&e| format!("{:<width$}", names[e as usize]))
                .collect();
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::kernel::Law;
    use proptest::prelude::*;

    const R1_TEXT: &str = "semiring r1\nelements: 0 1\nadd:\n0 1\n1 1\nmul:\n0 0\n0 1\n";

    fn fig1_covers() -> CoverRelation {
        CoverRelation::from_names(
            &["0", "a", "b", "c", "d", "1"],
            &[("0", "a"), ("0", "d"), ("d", "b"), ("d", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
    }

    fn fig2_covers() -> CoverRelation {
        CoverRelation::from_names(
            &["0", "a", "b", "c", "1"],
            &[("0", "c"), ("c", "a"), ("c", "b"), ("a", "1"), ("b", "1")],
        )
    }

    #[test]
    fn parses_r1() {
        let sr = parse_semiring(R1_TEXT).unwrap();
        assert_eq!(sr, fixtures::r1());
        assert_eq!(sr.name(), "r1");
    }

    #[test]
    fn short_row_is_reported_at_its_line() {
        let text = "semiring bad\nelements: x y z\nadd:\nx y z\ny z\nz x y\nmul:\n";
        assert_eq!(
            parse_semiring(text),
            Err(SpecError::RowLength {
                line: 5,
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn unknown_token_has_position() {
        let text = "semiring bad\nelements: 0 1\nadd:\n0 1\n1 q\nmul:\n0 0\n0 0\n";
        assert_eq!(
            parse_semiring(text),
            Err(SpecError::UnknownToken {
                line: 5,
                column: 3,
                token: "q".into()
            })
        );
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header\n\nsemiring r1   # name\nelements: 0 1\n\nadd:\n0 1 # row\n1 1\nmul:\n0 0\n0 1\n\n";
        assert_eq!(parse_semiring(text).unwrap(), fixtures::r1());
    }

    #[test]
    fn axiom_failures_carry_the_report() {
        let text = "semiring xor\nelements: 0 1\nadd:\n0 1\n1 0\nmul:\n1 1\n1 1\n";
        let err = parse_semiring(text).unwrap_err();
        let (_, report) = err.axiom_report().unwrap();
        assert!(report.violation(Law::LeftDistributive).is_some());
        assert!(!err.is_input_error());
    }

    #[test]
    fn example_fixture_round_trips() {
        let text = fixtures::FIG1_EXAMPLE34;
        let sr = parse_semiring(text).unwrap();
        let rendered = render_semiring(&sr);
        let again = parse_semiring(&rendered).unwrap();
        assert_eq!(again, sr);
        assert_eq!(render_semiring(&again), rendered);
    }

    #[test]
    fn fixture_lattices() {
        let f1 = fig1_covers();
        let l1 = lattice_from_covers(&f1).unwrap();
        let (b, c, d, one) = (2, 3, 4, 5);
        assert_eq!(l1.join.get(b, c), one);
        assert_eq!(l1.meet.get(b, c), d);
        let l2 = lattice_from_covers(&fig2_covers()).unwrap();
        assert_eq!(l2.join.get(1, 2), 4);
        assert_eq!(l2.meet.get(1, 2), 3);
    }

    #[test]
    fn lattice_errors() {
        let v = CoverRelation::from_names(&["x", "a", "b"], &[("x", "a"), ("x", "b")]);
        assert_eq!(
            lattice_from_covers(&v),
            Err(SpecError::Lattice(LatticeError::NotALattice("a".into(), "b".into(), "least upper bound")))
        );
        let cyc = CoverRelation::from_names(&["x", "y"], &[("x", "y"), ("y", "x")]);
        assert!(matches!(lattice_from_covers(&cyc), Err(SpecError::Lattice(LatticeError::Cyclic(..)))));
        let redundant = CoverRelation::from_names(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")]);
        assert!(matches!(
            lattice_from_covers(&redundant),
            Err(SpecError::Lattice(LatticeError::RedundantCover(..)))
        ));
    }

    #[test]
    fn meet_on_fig1_is_not_distributive() {
        let err = semiring_from_lattice("f1", &fig1_covers(), LatticeMul::Meet).unwrap_err();
        let (_, report) = err.axiom_report().unwrap();
        // a meet (b join c) = a, but (a meet b) join (a meet c) = 0.
        let w = &report.violation(Law::LeftDistributive).unwrap().witness;
        assert_eq!(w.iter().map(|e| e.0).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(semiring_from_lattice("f2", &fig2_covers(), LatticeMul::Meet).is_ok());
    }

    /// Brute-force distributivity of a lattice's join and meet.
    fn lattice_distributive(l: &Lattice) -> bool {
        let k = l.join.size();
        (0..k).all(|x| {
            (0..k).all(|y| {
                (0..k).all(|z| l.meet.get(x, l.join.get(y, z)) == l.join.get(l.meet.get(x, y), l.meet.get(x, z)))
            })
        })
    }

    #[test]
    fn meet_multiplication_iff_distributive() {
        let m3 = CoverRelation::from_names(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        );
        for covers in [fig1_covers(), fig2_covers(), m3] {
            let lat = lattice_from_covers(&covers).unwrap();
            let built = semiring_from_lattice("l", &covers, LatticeMul::Meet);
            assert_eq!(built.is_ok(), lattice_distributive(&lat));
            if let Ok(sr) = built {
                assert_eq!(sr.natural_leq().unwrap(), lat.order);
            }
        }
    }

    #[test]
    fn explicit_table_on_fig1() {
        let sr = semiring_from_lattice("fig1", &fig1_covers(), {
            let top = [2, 3, 4, 5];
            LatticeMul::Table(OpTable::from_fn(6, |x, y| if top.contains(&x) && top.contains(&y) { 4 } else { 0 }).unwrap())
        })
        .unwrap();
        assert_eq!(sr.natural_leq().unwrap(), lattice_from_covers(&fig1_covers()).unwrap().order);
    }

    #[test]
    fn modular_rings() {
        let z2 = zn_ring(2).unwrap();
        assert_eq!(z2.add_table().bytes(), &[0, 1, 1, 0]);
        let z4 = zn_ring(4).unwrap();
        assert_eq!(z4.add(2, 3), 1);
        assert_eq!(z4.mul(2, 2), 0);
        let z6 = zn_ring(6).unwrap();
        assert_eq!(z6.find_zero().map(|e| z6.element_name(e).to_string()), Some("0".into()));
        assert_eq!(z6.find_identity().map(|e| z6.element_name(e).to_string()), Some("1".into()));
        assert!(zn_ring(1).is_err());
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(n in 2usize..9, perm_seed in 0u64..1000) {
            let z = zn_ring(n).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = perm_seed;
            for i in (1..n).rev() {
                perm.swap(i, (s % (i as u64 + 1)) as usize);
                s /= i as u64 + 1;
            }
            let sr = z.permuted(&perm);
            prop_assert_eq!(parse_semiring(&render_semiring(&sr)).unwrap(), sr);
        }
    }
}
