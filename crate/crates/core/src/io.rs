//! Line-based text formats for flag complexes, height families, group actions
//! and projection tables.
//!
//! Every file starts with a magic line such as `%flagcomplex v1`. Blank lines
//! and `#` comments are ignored. Serialization emits the normalized form, so
//! parsing a serialized instance and serializing it again is byte-identical.

use std::collections::HashMap;
use std::fmt::Write;

use crate::action::GroupAction;
use crate::complex::FlagComplex;
use crate::cover::{HeightFamily, HeightFunction};
use crate::error::{Error, Result};
use crate::projection::ProjectionStructure;

pub const FLAG_COMPLEX_MAGIC: &str = "%flagcomplex v1";
pub const HEIGHT_FAMILY_MAGIC: &str = "%heightfamily v1";
pub const ACTION_MAGIC: &str = "%action v1";
pub const PROJECTION_TABLE_MAGIC: &str = "%projtable v1";

/// Any of the four file kinds, detected from the magic line.
#[derive(Debug, Clone)]
pub enum Instance {
    Complex(FlagComplex),
    Family(HeightFamily),
    Action(Vec<Vec<usize>>),
    Table(ProjectionStructure),
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    column: usize,
    text: &'a str,
}

#[derive(Debug)]
struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn error(&self, index: usize, message: impl Into<String>) -> Error {
        let column = self
            .tokens
            .get(index)
            .map(|t| t.column)
            .unwrap_or_else(|| self.tokens.last().map_or(1, |t| t.column + t.text.len()));
        Error::Parse {
            line: self.number,
            column,
            message: message.into(),
            hint: None,
        }
    }

    fn keyword(&self) -> &str {
        self.tokens[0].text
    }

    fn arity(&self, expected: usize, usage: &str) -> Result<()> {
        if self.tokens.len() == expected + 1 {
            return Ok(());
        }
        let index = self.tokens.len().min(expected + 1);
        Err(with_hint(
            self.error(
                index,
                format!("`{}` takes {expected} arguments", self.keyword()),
            ),
            format!("write `{usage}`"),
        ))
    }

    fn number<T: std::str::FromStr>(&self, index: usize) -> Result<T> {
        let t = self.tokens[index];
        t.text
            .parse()
            .map_err(|_| self.error(index, format!("expected an integer, found `{}`", t.text)))
    }

    fn vertex(&self, index: usize, n: usize) -> Result<usize> {
        let v: usize = self.number(index)?;
        if v >= n {
            return Err(with_hint(
                self.error(index, format!("vertex {v} out of range")),
                format!("vertex ids run from 0 to {}", n.saturating_sub(1)),
            ));
        }
        Ok(v)
    }
}

fn with_hint(e: Error, h: impl Into<String>) -> Error {
    match e {
        Error::Parse {
            line,
            column,
            message,
            ..
        } => Error::Parse {
            line,
            column,
            message,
            hint: Some(h.into()),
        },
        other => other,
    }
}

/// Content lines after the magic line, plus the number of the last line.
fn tokenize<'a>(text: &'a str, magic: &str) -> Result<(Vec<Line<'a>>, usize)> {
    let mut lines = Vec::new();
    let mut header = false;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        last = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if !header {
            if content.trim().is_empty() {
                continue;
            }
            if content.trim() != magic {
                return Err(Error::Parse {
                    line: i + 1,
                    column: 1,
                    message: format!("expected `{magic}`, found `{}`", content.trim()),
                    hint: Some(format!("the first line must be `{magic}`")),
                });
            }
            header = true;
            continue;
        }
        let mut tokens = Vec::new();
        let mut start = None;
        for (j, ch) in content
            .char_indices()
            .chain(std::iter::once((content.len(), ' ')))
        {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    tokens.push(Token {
                        column: s + 1,
                        text: &content[s..j],
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    if !header {
        return Err(Error::Parse {
            line: last.max(1),
            column: 1,
            message: "empty file".into(),
            hint: Some(format!("the first line must be `{magic}`")),
        });
    }
    Ok((lines, last))
}

fn unknown(line: &Line, allowed: &str) -> Error {
    with_hint(
        line.error(0, format!("unknown keyword `{}`", line.keyword())),
        format!("expected one of: {allowed}"),
    )
}

/// Reads the mandatory `key N` line that must precede everything else.
fn leading_count(lines: &[Line], key: &str, last: usize) -> Result<usize> {
    let Some(first) = lines.first() else {
        return Err(Error::Parse {
            line: last.max(1),
            column: 1,
            message: format!("missing `{key}` line"),
            hint: None,
        });
    };
    if first.keyword() != key {
        return Err(with_hint(
            first.error(0, format!("expected `{key}`, found `{}`", first.keyword())),
            format!("`{key}` must come right after the magic line"),
        ));
    }
    first.arity(1, &format!("{key} N"))?;
    first.number(1)
}

fn parse_edge(
    line: &Line,
    n: usize,
    seen: &mut HashMap<(usize, usize), usize>,
) -> Result<(usize, usize)> {
    line.arity(2, "edge i j")?;
    let (u, v) = (line.vertex(1, n)?, line.vertex(2, n)?);
    if u == v {
        return Err(line.error(2, format!("self-loop at vertex {u}")));
    }
    let key = (u.min(v), u.max(v));
    if let Some(prev) = seen.insert(key, line.number) {
        return Err(with_hint(
            line.error(0, format!("duplicate edge {} {}", key.0, key.1)),
            format!("already listed on line {prev}"),
        ));
    }
    Ok(key)
}

pub fn parse_flag_complex(text: &str) -> Result<FlagComplex> {
    let (lines, last) = tokenize(text, FLAG_COMPLEX_MAGIC)?;
    let n = leading_count(&lines, "vertices", last)?;
    let mut seen = HashMap::new();
    let mut edges = Vec::new();
    for line in &lines[1..] {
        match line.keyword() {
            "edge" => edges.push(parse_edge(line, n, &mut seen)?),
            _ => return Err(unknown(line, "edge")),
        }
    }
    FlagComplex::new(n, &edges)
}

pub fn serialize_flag_complex(c: &FlagComplex) -> String {
    let mut out = format!("{FLAG_COMPLEX_MAGIC}\nvertices {}\n", c.vertex_count());
    write_edges(&mut out, c);
    out
}

fn write_edges(out: &mut String, c: &FlagComplex) {
    for &(u, v) in c.edges() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
}

pub fn parse_height_family(text: &str) -> Result<HeightFamily> {
    let (lines, last) = tokenize(text, HEIGHT_FAMILY_MAGIC)?;
    let columns = leading_count(&lines, "columns", last)?;
    if columns == 0 {
        return Err(lines[0].error(1, "a height family needs at least one column"));
    }
    let mut members: Vec<HeightFunction> = Vec::new();
    for line in &lines[1..] {
        if line.keyword() != "vertex" {
            return Err(unknown(line, "vertex"));
        }
        line.arity(columns + 1, &format!("vertex id h_1 .. h_{columns}"))?;
        let id: usize = line.number(1)?;
        if id != members.len() {
            return Err(with_hint(
                line.error(1, format!("vertex id {id} out of sequence")),
                format!(
                    "ids run 0, 1, 2, ... in file order; expected {}",
                    members.len()
                ),
            ));
        }
        let values = (2..line.tokens.len())
            .map(|i| line.number::<i64>(i))
            .collect::<Result<Vec<_>>>()?;
        let low = values.iter().copied().min().unwrap_or(0);
        if low != 0 {
            return Err(with_hint(
                line.error(
                    2,
                    format!("heights of vertex {id} are not normalized (minimum {low})"),
                ),
                format!("subtract {low} from every height so the minimum is 0"),
            ));
        }
        let f = HeightFunction::new(values).map_err(|e| line.error(2, e.to_string()))?;
        if let Some(prev) = members.last() {
            if *prev >= f {
                let message = if *prev == f {
                    format!("vertex {id} repeats vertex {}", id - 1)
                } else {
                    format!("vertex {id} is not in lexicographic order")
                };
                return Err(with_hint(
                    line.error(2, message),
                    "list distinct vertices in increasing lexicographic order of heights",
                ));
            }
        }
        members.push(f);
    }
    HeightFamily::new(columns, members)
}

pub fn serialize_height_family(fam: &HeightFamily) -> String {
    let mut out = format!("{HEIGHT_FAMILY_MAGIC}\ncolumns {}\n", fam.columns());
    for (id, f) in fam.members().iter().enumerate() {
        write!(out, "vertex {id}").unwrap();
        for h in f.values() {
            write!(out, " {h}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Generators of an action file. Each is checked to be a permutation and all
/// must have the same length.
pub fn parse_action(text: &str) -> Result<Vec<Vec<usize>>> {
    let (lines, _) = tokenize(text, ACTION_MAGIC)?;
    let mut generators: Vec<Vec<usize>> = Vec::new();
    for line in &lines {
        if line.keyword() != "generator" {
            return Err(unknown(line, "generator"));
        }
        let n = line.tokens.len() - 1;
        if let Some(first) = generators.first() {
            if first.len() != n {
                return Err(with_hint(
                    line.error(
                        0,
                        format!(
                            "generator has {n} entries, earlier ones have {}",
                            first.len()
                        ),
                    ),
                    "every generator lists the image of each vertex",
                ));
            }
        }
        let mut seen = vec![false; n];
        let mut g = Vec::with_capacity(n);
        for i in 1..=n {
            let v = line.vertex(i, n)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(with_hint(
                    line.error(i, format!("image {v} repeats")),
                    "a generator must be a permutation of 0..n-1",
                ));
            }
            g.push(v);
        }
        generators.push(g);
    }
    Ok(generators)
}

/// Parses an action file against a complex with `vertex_count` vertices.
pub fn parse_group_action(text: &str, vertex_count: usize) -> Result<GroupAction> {
    GroupAction::new(vertex_count, parse_action(text)?)
}

pub fn serialize_action(a: &GroupAction) -> String {
    let mut out = format!("{ACTION_MAGIC}\n");
    for g in a.generators() {
        out.push_str("generator");
        for v in g {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses an explicit projection table. Missing or repeated entries are
/// errors; nothing is defaulted.
pub fn parse_projection_table(text: &str) -> Result<ProjectionStructure> {
    let (lines, last) = tokenize(text, PROJECTION_TABLE_MAGIC)?;
    let n = leading_count(&lines, "vertices", last)?;
    let mut seen = HashMap::new();
    let mut edges = Vec::new();
    let mut proj: HashMap<(usize, usize), usize> = HashMap::new();
    let mut ord: HashMap<(usize, usize, usize), bool> = HashMap::new();
    let mut proj_lines = HashMap::new();
    let mut ord_lines = HashMap::new();
    let mut pending_ord = Vec::new();
    for line in &lines[1..] {
        match line.keyword() {
            "edge" => edges.push(parse_edge(line, n, &mut seen)?),
            "proj" => {
                line.arity(3, "proj s r v")?;
                let (s, r, v) = (line.vertex(1, n)?, line.vertex(2, n)?, line.vertex(3, n)?);
                if s == r {
                    return Err(line.error(2, "projection needs distinct base and target"));
                }
                if let Some(prev) = proj_lines.insert((s, r), line.number) {
                    return Err(with_hint(
                        line.error(0, format!("duplicate proj entry for {s} {r}")),
                        format!("already listed on line {prev}"),
                    ));
                }
                proj.insert((s, r), v);
            }
            "ord" => {
                line.arity(4, "ord s a b 0|1")?;
                let (s, a, b) = (line.vertex(1, n)?, line.vertex(2, n)?, line.vertex(3, n)?);
                let value = match line.tokens[4].text {
                    "0" => false,
                    "1" => true,
                    other => return Err(line.error(4, format!("expected 0 or 1, found `{other}`"))),
                };
                if let Some(prev) = ord_lines.insert((s, a, b), line.number) {
                    return Err(with_hint(
                        line.error(0, format!("duplicate ord entry for {s} {a} {b}")),
                        format!("already listed on line {prev}"),
                    ));
                }
                ord.insert((s, a, b), value);
                pending_ord.push((line, a, b));
            }
            _ => return Err(unknown(line, "edge, proj, ord")),
        }
    }
    let complex = FlagComplex::new(n, &edges)?;
    for (line, a, b) in pending_ord {
        if !complex.is_adjacent(a, b) {
            return Err(with_hint(
                line.error(2, format!("ord entry for non-adjacent pair {a} {b}")),
                "the order is only defined on edges",
            ));
        }
    }
    let end = Error::Parse {
        line: last + 1,
        column: 1,
        message: String::new(),
        hint: Some("projection tables list every proj and ord entry explicitly".into()),
    };
    for s in 0..n {
        for r in (0..n).filter(|&r| r != s) {
            if !proj.contains_key(&(s, r)) {
                return Err(relabel(end, format!("missing proj entry for {s} {r}")));
            }
        }
        for a in 0..n {
            for &b in complex.neighbors(a) {
                if !ord.contains_key(&(s, a, b)) {
                    return Err(relabel(end, format!("missing ord entry for {s} {a} {b}")));
                }
            }
        }
    }
    ProjectionStructure::from_table(complex, &proj, &ord)
}

fn relabel(e: Error, text: String) -> Error {
    match e {
        Error::Parse {
            line, column, hint, ..
        } => Error::Parse {
            line,
            column,
            message: text,
            hint,
        },
        other => other,
    }
}

/// Writes the full tables of any structure, model-backed or not.
pub fn serialize_projection_table(ps: &ProjectionStructure) -> String {
    let c = ps.complex();
    let n = c.vertex_count();
    let mut out = format!("{PROJECTION_TABLE_MAGIC}\nvertices {n}\n");
    write_edges(&mut out, c);
    for s in 0..n {
        for r in (0..n).filter(|&r| r != s) {
            writeln!(out, "proj {s} {r} {}", ps.proj(s, r)).unwrap();
        }
    }
    for s in 0..n {
        for a in 0..n {
            for &b in c.neighbors(a) {
                writeln!(out, "ord {s} {a} {b} {}", u8::from(ps.less(s, a, b))).unwrap();
            }
        }
    }
    out
}

/// Parses any of the four formats by its magic line.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let magic = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    match magic {
        FLAG_COMPLEX_MAGIC => parse_flag_complex(text).map(Instance::Complex),
        HEIGHT_FAMILY_MAGIC => parse_height_family(text).map(Instance::Family),
        ACTION_MAGIC => parse_action(text).map(Instance::Action),
        PROJECTION_TABLE_MAGIC => parse_projection_table(text).map(Instance::Table),
        other => {
            let line = text
                .lines()
                .position(|l| l.split('#').next().unwrap_or("").trim() == other)
                .map_or(1, |i| i + 1);
            Err(Error::Parse {
                line,
                column: 1,
                message: format!("unrecognized header `{other}`"),
                hint: Some(format!(
                    "expected one of `{FLAG_COMPLEX_MAGIC}`, `{HEIGHT_FAMILY_MAGIC}`, `{ACTION_MAGIC}`, `{PROJECTION_TABLE_MAGIC}`"
                )),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P3: &str = "%flagcomplex v1\nvertices 3\nedge 0 1\nedge 1 2\n";
    const F1: &str = "%heightfamily v1\ncolumns 2\nvertex 0 0 0\nvertex 1 0 1\nvertex 2 1 0\n";

    fn location(e: Error) -> (usize, usize) {
        match e {
            Error::Parse { line, column, .. } => (line, column),
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn flag_complex_round_trip() {
        let c = parse_flag_complex(P3).unwrap();
        assert_eq!(c.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(serialize_flag_complex(&c), P3);
        let messy = "# path\n%flagcomplex v1\n\nvertices 3  # three\nedge 2 1\nedge 1 0\n";
        assert_eq!(
            serialize_flag_complex(&parse_flag_complex(messy).unwrap()),
            P3
        );
    }

    #[test]
    fn height_family_round_trip() {
        let fam = parse_height_family(F1).unwrap();
        assert_eq!(fam.len(), 3);
        assert_eq!(fam.member(2).values(), &[1, 0]);
        assert_eq!(fam.complex().edges(), &[(0, 1), (0, 2)]);
        assert_eq!(serialize_height_family(&fam), F1);
    }

    #[test]
    fn action_round_trip() {
        let text = "%action v1\ngenerator 0 2 1\n";
        let a = parse_group_action(text, 3).unwrap();
        assert_eq!(a.generators(), &[vec![0, 2, 1]]);
        assert_eq!(serialize_action(&a), text);
        assert!(parse_group_action(text, 4).is_err());
        assert_eq!(
            parse_action("%action v1\n").unwrap(),
            Vec::<Vec<usize>>::new()
        );
    }

    #[test]
    fn projection_table_round_trip() {
        let fam = parse_height_family(F1).unwrap();
        let ps = ProjectionStructure::from_family(&fam).unwrap();
        let text = serialize_projection_table(&ps);
        let table = parse_projection_table(&text).unwrap();
        assert_eq!(serialize_projection_table(&table), text);
        for s in 0..3 {
            for r in (0..3).filter(|&r| r != s) {
                assert_eq!(table.proj(s, r), ps.proj(s, r));
            }
        }
    }

    #[test]
    fn located_errors() {
        assert_eq!(
            location(parse_flag_complex("%flagcomplex v2\n").unwrap_err()),
            (1, 1)
        );
        assert_eq!(
            location(parse_flag_complex("%flagcomplex v1\nvertices 3\nedge 0 x\n").unwrap_err()),
            (3, 8)
        );
        assert_eq!(
            location(parse_flag_complex("%flagcomplex v1\nvertices 3\nedge 0 3\n").unwrap_err()),
            (3, 8)
        );
        assert_eq!(
            location(
                parse_flag_complex("%flagcomplex v1\nvertices 3\nedge 0 1\nedge 1 0\n")
                    .unwrap_err()
            ),
            (4, 1)
        );
        assert_eq!(
            location(parse_flag_complex("%flagcomplex v1\nedge 0 1\n").unwrap_err()),
            (2, 1)
        );
        assert_eq!(
            location(parse_flag_complex("%flagcomplex v1\nvertices 3\nedge 0\n").unwrap_err()),
            (3, 7)
        );
    }

    #[test]
    fn semantic_errors_carry_hints() {
        let unnormalized = "%heightfamily v1\ncolumns 2\nvertex 0 1 1\n";
        match parse_height_family(unnormalized).unwrap_err() {
            Error::Parse { line, hint, .. } => {
                assert_eq!(line, 3);
                assert!(hint.unwrap().contains("subtract 1"));
            }
            other => panic!("{other}"),
        }
        let unsorted = "%heightfamily v1\ncolumns 2\nvertex 0 0 1\nvertex 1 0 0\n";
        assert_eq!(
            location(parse_height_family(unsorted).unwrap_err()),
            (4, 10)
        );
        let bad_perm = "%action v1\ngenerator 0 0 1\n";
        assert_eq!(location(parse_action(bad_perm).unwrap_err()), (2, 13));
    }

    #[test]
    fn missing_table_entries_are_errors() {
        let text = "%projtable v1\nvertices 2\nedge 0 1\nproj 0 1 0\nproj 1 0 1\nord 0 0 1 1\nord 0 1 0 0\nord 1 0 1 0\nord 1 1 0 1\n";
        assert!(parse_projection_table(text).is_ok());
        let missing = text.replace("proj 0 1 0\n", "");
        let e = parse_projection_table(&missing).unwrap_err();
        assert!(e.to_string().contains("missing proj entry for 0 1"), "{e}");
        let missing = text.replace("ord 1 1 0 1\n", "");
        assert!(parse_projection_table(&missing)
            .unwrap_err()
            .to_string()
            .contains("missing ord"));
    }

    #[test]
    fn instance_detection() {
        assert!(matches!(parse_instance(P3).unwrap(), Instance::Complex(_)));
        assert!(matches!(parse_instance(F1).unwrap(), Instance::Family(_)));
        assert_eq!(
            location(parse_instance("\n%nope v1\n").unwrap_err()),
            (2, 1)
        );
    }
}
