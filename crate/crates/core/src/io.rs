//! The `.alg` text format.
//!
//! ```text
//! # dual numbers
//! space
//! basis e deg 0
//! basis x deg 0
//! map m2 type 2 deg 0
//! entry (e e) -> e
//! entry (e x) -> x
//! entry (x e) -> x
//! map sel type 1|0 identity-selector
//! operator B deg -1
//! ```
//!
//! Entry tuples list basis names slot by slot, slots separated by `|`.
//! Values are sums of `c*name` with rational `c`; a bare name means
//! coefficient 1.

use std::fmt::Write as _;

use crate::maps::{MapKind, MegaMap, PartitionedMap};
use crate::partitions::Partition;
use crate::scalar::Scalar;
use crate::space::{BasisElement, GradedSpace, Vector};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMap {
    pub name: String,
    pub map: PartitionedMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub space: GradedSpace,
    pub maps: Vec<NamedMap>,
    /// Linear operators such as `B`, kept apart from the structure maps.
    pub operators: Vec<NamedMap>,
}

impl AlgebraDocument {
    /// All structure maps as one mega map; later maps of a repeated type
    /// replace earlier ones.
    pub fn mega(&self) -> MegaMap {
        let mut m = MegaMap::new();
        for n in &self.maps {
            m.insert(n.map.clone());
        }
        m
    }

    pub fn map(&self, name: &str) -> Option<&PartitionedMap> {
        self.maps.iter().find(|m| m.name == name).map(|m| &m.map)
    }

    pub fn operator(&self, name: &str) -> Option<&PartitionedMap> {
        self.operators
            .iter()
            .find(|m| m.name == name)
            .map(|m| &m.map)
    }
}

enum Kind {
    Table,
    Selector,
    Zero,
}

struct Section {
    name: String,
    ty: Partition,
    degree: Option<i64>,
    kind: Kind,
    operator: bool,
    line: usize,
    entries: Vec<(Vec<usize>, Vector, usize)>,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits a line into words with their 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn int(line: usize, w: Option<&(usize, &str)>, what: &str) -> Result<i64, Error> {
    let (col, t) = w.ok_or_else(|| err(line, 1, format!("missing {what}")))?;
    t.parse()
        .map_err(|_| err(line, *col, format!("bad {what} `{t}`")))
}

fn lookup(space: &GradedSpace, name: &str, line: usize, col: usize) -> Result<usize, Error> {
    space
        .index_of(name)
        .ok_or_else(|| err(line, col, format!("undeclared basis element `{name}`")))
}

/// Parses `(a b|c) -> 2*x - 1/3*y`.
fn parse_entry(
    space: &GradedSpace,
    ty: &Partition,
    text: &str,
    line: usize,
    col0: usize,
) -> Result<(Vec<usize>, Vector), Error> {
    let open = text
        .find('(')
        .ok_or_else(|| err(line, col0, "expected `(`"))?;
    let close = text
        .find(')')
        .ok_or_else(|| err(line, col0, "expected `)`"))?;
    let arrow = text
        .find("->")
        .ok_or_else(|| err(line, col0, "expected `->`"))?;
    if close < open || arrow < close {
        return Err(err(line, col0 + open, "malformed entry"));
    }
    let slots: Vec<&str> = text[open + 1..close].split('|').collect();
    if slots.len() != ty.num_slots() {
        return Err(err(
            line,
            col0 + open,
            format!(
                "{} slots given, type {ty} has {}",
                slots.len(),
                ty.num_slots()
            ),
        ));
    }
    let mut tuple = Vec::new();
    let mut offset = open + 1;
    for (k, slot) in slots.iter().enumerate() {
        let cleaned = slot.replace(',', " ");
        let names = words(&cleaned);
        if names.len() != ty.slots()[k] {
            return Err(err(
                line,
                col0 + offset,
                format!(
                    "slot {} has {} arguments, type {ty} needs {}",
                    k + 1,
                    names.len(),
                    ty.slots()[k]
                ),
            ));
        }
        for (c, n) in names {
            tuple.push(lookup(space, n, line, col0 + offset + c - 1)?);
        }
        offset += slot.len() + 1;
    }
    let rhs = &text[arrow + 2..];
    let rhs_col = col0 + arrow + 2;
    let mut value = Vector::zero();
    let mut sign = Scalar::ONE;
    let mut expect_term = true;
    for (c, w) in words(rhs) {
        let col = rhs_col + c - 1;
        match w {
            "+" | "-" if !expect_term => {
                sign = if w == "-" {
                    Scalar::MINUS_ONE
                } else {
                    Scalar::ONE
                };
                expect_term = true;
            }
            _ if expect_term => {
                if w == "0" {
                    expect_term = false;
                    continue;
                }
                let (coeff, name) = match w.rsplit_once('*') {
                    Some((c, n)) => (
                        c.parse::<Scalar>()
                            .map_err(|e| err(line, col, e.to_string()))?,
                        n,
                    ),
                    None => match w.strip_prefix('-') {
                        Some(n) => (Scalar::MINUS_ONE, n),
                        None => (Scalar::ONE, w),
                    },
                };
                value.add_term(
                    lookup(space, name, line, col + w.len() - name.len())?,
                    sign * coeff,
                );
                sign = Scalar::ONE;
                expect_term = false;
            }
            _ => return Err(err(line, col, format!("expected `+` or `-`, found `{w}`"))),
        }
    }
    if expect_term {
        return Err(err(line, rhs_col, "missing value"));
    }
    Ok((tuple, value))
}

fn finish(space: &GradedSpace, s: Section) -> Result<NamedMap, Error> {
    let map = match s.kind {
        Kind::Selector => PartitionedMap::identity_selector(),
        Kind::Zero => PartitionedMap::zero(s.ty.clone(), s.degree.unwrap_or(0)),
        Kind::Table => {
            let degree = match s.degree {
                Some(d) => d,
                None => s
                    .entries
                    .iter()
                    .find_map(|(t, v, _)| {
                        space
                            .homogeneous_degree(v)
                            .map(|d| d - t.iter().map(|&i| space.degree(i)).sum::<i64>())
                    })
                    .unwrap_or(0),
            };
            for (t, v, line) in &s.entries {
                let want = degree + t.iter().map(|&i| space.degree(i)).sum::<i64>();
                if let Some(bad) = v.support().find(|&o| space.degree(o) != want) {
                    return Err(err(
                        *line,
                        1,
                        format!(
                            "`{}` has degree {}, map {} of degree {degree} needs {want}",
                            space.name(bad),
                            space.degree(bad),
                            s.name
                        ),
                    ));
                }
            }
            PartitionedMap::table(
                space,
                s.ty.clone(),
                degree,
                s.entries.into_iter().map(|(t, v, _)| (t, v)),
            )
            .map_err(|e| err(s.line, 1, e.to_string()))?
        }
    };
    Ok(NamedMap { name: s.name, map })
}

pub fn parse(text: &str) -> Result<AlgebraDocument, Error> {
    let mut basis: Vec<BasisElement> = Vec::new();
    let mut space: Option<GradedSpace> = None;
    let mut in_space = false;
    let mut current: Option<Section> = None;
    let mut maps = Vec::new();
    let mut operators = Vec::new();
    let close = |space: &GradedSpace,
                 sec: Option<Section>,
                 maps: &mut Vec<NamedMap>,
                 ops: &mut Vec<NamedMap>|
     -> Result<(), Error> {
        if let Some(s) = sec {
            let op = s.operator;
            let m = finish(space, s)?;
            if op {
                ops.push(m)
            } else {
                maps.push(m)
            }
        }
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let w = words(content);
        let Some(&(col, head)) = w.first() else {
            continue;
        };
        match head {
            "space" => {
                if in_space || space.is_some() {
                    return Err(err(line, col, "second `space` section"));
                }
                in_space = true;
            }
            "basis" => {
                if !in_space {
                    return Err(err(line, col, "`basis` outside the space section"));
                }
                let (_, name) = w
                    .get(1)
                    .ok_or_else(|| err(line, col, "missing basis name"))?;
                let mut el = BasisElement {
                    name: name.to_string(),
                    degree: 0,
                    weight: 0,
                    aux: 0,
                };
                let mut k = 2;
                let mut has_deg = false;
                while k < w.len() {
                    match w[k].1 {
                        "deg" => {
                            el.degree = int(line, w.get(k + 1), "degree")?;
                            has_deg = true;
                        }
                        "weight" => el.weight = int(line, w.get(k + 1), "weight")?,
                        other => return Err(err(line, w[k].0, format!("unexpected `{other}`"))),
                    }
                    k += 2;
                }
                if !has_deg {
                    return Err(err(
                        line,
                        col,
                        format!("basis element `{name}` has no degree"),
                    ));
                }
                if basis.iter().any(|b| b.name == el.name) {
                    return Err(err(
                        line,
                        w[1].0,
                        format!("duplicate basis element `{name}`"),
                    ));
                }
                basis.push(el);
            }
            "map" | "operator" => {
                if in_space {
                    space = Some(
                        GradedSpace::new(std::mem::take(&mut basis))
                            .map_err(|e| err(line, col, e.to_string()))?,
                    );
                    in_space = false;
                }
                let sp = space
                    .as_ref()
                    .ok_or_else(|| err(line, col, "maps must follow the space section"))?;
                close(sp, current.take(), &mut maps, &mut operators)?;
                let (_, name) = w.get(1).ok_or_else(|| err(line, col, "missing map name"))?;
                let operator = head == "operator";
                let mut sec = Section {
                    name: name.to_string(),
                    ty: Partition::plain(1),
                    degree: None,
                    kind: Kind::Table,
                    operator,
                    line,
                    entries: Vec::new(),
                };
                let mut k = 2;
                while k < w.len() {
                    match w[k].1 {
                        "type" if !operator => {
                            let (c, t) = w
                                .get(k + 1)
                                .ok_or_else(|| err(line, w[k].0, "missing type"))?;
                            sec.ty = t
                                .parse()
                                .map_err(|_| err(line, *c, format!("bad partition `{t}`")))?;
                            k += 2;
                        }
                        "deg" => {
                            sec.degree = Some(int(line, w.get(k + 1), "degree")?);
                            k += 2;
                        }
                        "identity-selector" if !operator => {
                            sec.kind = Kind::Selector;
                            k += 1;
                        }
                        "zero" => {
                            sec.kind = Kind::Zero;
                            k += 1;
                        }
                        other => return Err(err(line, w[k].0, format!("unexpected `{other}`"))),
                    }
                }
                if matches!(sec.kind, Kind::Selector) && sec.ty != Partition::selector() {
                    return Err(err(
                        line,
                        col,
                        format!("identity selector must have type 1|0, not {}", sec.ty),
                    ));
                }
                current = Some(sec);
            }
            "entry" => {
                let sp = space
                    .as_ref()
                    .ok_or_else(|| err(line, col, "entry before any map"))?;
                let sec = current
                    .as_mut()
                    .ok_or_else(|| err(line, col, "entry before any map"))?;
                if !matches!(sec.kind, Kind::Table) {
                    return Err(err(
                        line,
                        col,
                        format!("map `{}` takes no entries", sec.name),
                    ));
                }
                let start = col + head.len();
                let (t, v) = parse_entry(sp, &sec.ty, &content[start - 1..], line, start)?;
                sec.entries.push((t, v, line));
            }
            other => return Err(err(line, col, format!("unknown keyword `{other}`"))),
        }
    }
    if in_space {
        space = Some(GradedSpace::new(basis).map_err(|e| err(1, 1, e.to_string()))?);
    }
    let space = space.ok_or_else(|| err(1, 1, "missing space section"))?;
    close(&space, current, &mut maps, &mut operators)?;
    Ok(AlgebraDocument {
        space,
        maps,
        operators,
    })
}

fn slot_text(space: &GradedSpace, ty: &Partition, tuple: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut it = tuple.iter();
    for &n in ty.slots() {
        let names: Vec<&str> = it.by_ref().take(n).map(|&i| space.name(i)).collect();
        parts.push(names.join(" "));
    }
    parts.join("|")
}

fn ty_text(ty: &Partition) -> String {
    ty.slots()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join("|")
}

/// Canonical text: entries sorted by basis tuple, values in basis order.
pub fn render(doc: &AlgebraDocument) -> String {
    let s = &doc.space;
    let mut out = String::from("space\n");
    for b in s.basis() {
        let _ = write!(out, "basis {} deg {}", b.name, b.degree);
        if b.weight != 0 {
            let _ = write!(out, " weight {}", b.weight);
        }
        out.push('\n');
    }
    let sections = doc
        .maps
        .iter()
        .map(|m| (m, false))
        .chain(doc.operators.iter().map(|m| (m, true)));
    for (m, op) in sections {
        let map = &m.map;
        if op {
            let _ = write!(out, "operator {} deg {}", m.name, map.degree());
        } else {
            let _ = write!(out, "map {} type {}", m.name, ty_text(map.ty()));
        }
        match map.kind() {
            MapKind::IdentitySelector => out.push_str(" identity-selector\n"),
            MapKind::ZeroMap => out.push_str(" zero\n"),
            _ if map.is_zero() && !op => {
                let _ = writeln!(out, " deg {} zero", map.degree());
            }
            _ => {
                if !op {
                    let _ = write!(out, " deg {}", map.degree());
                }
                out.push('\n');
                let table = map.to_table(s.dim());
                let mut entries: Vec<(&Vec<usize>, &Vector)> = table.entries();
                entries.sort();
                for (t, v) in entries {
                    let _ = writeln!(
                        out,
                        "entry ({}) -> {}",
                        slot_text(s, map.ty(), t),
                        s.render(v)
                    );
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = "space\nbasis e deg 0\nbasis x deg 0\nmap m2 type 2 deg 0\nentry (e e) -> e\nentry (e x) -> x\nentry (x e) -> x\nmap sel type 1|0 identity-selector\n";

    #[test]
    fn minimal_roundtrip() {
        let text = "space\nbasis a deg 1\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.space.dim(), 1);
        assert_eq!(render(&doc), text);
    }

    #[test]
    fn dual_numbers_roundtrip() {
        let doc = parse(DUAL).unwrap();
        assert_eq!(render(&doc), DUAL);
        let m2 = doc.map("m2").unwrap();
        assert!(m2.eval_basis(&[1, 1]).is_zero());
        assert_eq!(doc.mega().len(), 2);
    }

    #[test]
    fn values_and_comments() {
        let text = "# c\nspace\nbasis a deg 0 weight 2 # w\nbasis b deg 0\nmap f type 1|1\nentry (a|b) -> 1/2*a - b + -3*b\noperator B deg 0\nentry (a) -> -a\n";
        let doc = parse(text).unwrap();
        let f = doc.map("f").unwrap();
        assert_eq!(f.degree(), 0);
        assert_eq!(
            f.eval_basis(&[0, 1]),
            Vector::from_terms([(0, Scalar::new(1, 2)), (1, Scalar::from_int(-4))])
        );
        assert_eq!(doc.space.weight(0), 2);
        assert_eq!(
            doc.operator("B").unwrap().eval_basis(&[0]),
            Vector::basis(0).scaled(Scalar::MINUS_ONE)
        );
        let again = parse(&render(&doc)).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("space\nbasis a deg 0\nmap m type 2\nentry (a y) -> a\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 4,
                col: 10,
                msg: "undeclared basis element `y`".into()
            }
        );
        let e = parse("space\nbasis a deg 0\nmap m type 2\nentry (a) -> a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        assert!(e.to_string().contains("needs 2"));
        let e = parse("space\nbasis a deg 0\nbasis b deg 1\nmap m type 1 deg 0\nentry (a) -> b\n")
            .unwrap_err();
        assert!(matches!(e, Error::Parse { line: 5, .. }), "{e}");
        assert!(matches!(
            parse("basis a deg 0\n"),
            Err(Error::Parse {
                line: 1,
                col: 1,
                ..
            })
        ));
        assert!(matches!(
            parse("space\nbasis a\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("space\nbasis a deg 0\nfoo\n"),
            Err(Error::Parse {
                line: 3,
                col: 1,
                ..
            })
        ));
    }
}
