//! The line-oriented poset file format.
//!
//! ```text
//! # comment
//! poset NAME
//! elem TOKEN            # all elems of a block come before its covers
//! cover LO HI           # LO is covered by HI
//! map NAME FROM TO      # FROM and TO name posets declared above
//! send SRC DST          # one assignment per line
//! ```
//!
//! Tokens match `[A-Za-z0-9_]+`. A file may declare several poset blocks so
//! map blocks can connect different posets.

use thiserror::Error;

use domcheck_core::maps::PosetMap;
use domcheck_core::poset::{FinitePoset, OrderError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate name `{name}`")]
    DuplicateName { line: usize, name: String },
    #[error("line {line}: unknown name `{name}`")]
    UnknownName { line: usize, name: String },
    #[error("line {line}: {source}")]
    Order { line: usize, source: OrderError },
}

#[derive(Clone, Debug)]
pub struct NamedPoset {
    pub name: String,
    pub poset: FinitePoset,
}

#[derive(Clone, Debug)]
pub struct NamedMap {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: PosetMap,
}

/// A parsed document: named posets plus named maps between them.
#[derive(Clone, Debug, Default)]
pub struct PosetDocument {
    pub posets: Vec<NamedPoset>,
    pub maps: Vec<NamedMap>,
}

impl PosetDocument {
    pub fn poset(&self, name: &str) -> Option<&FinitePoset> {
        self.posets
            .iter()
            .find(|p| p.name == name)
            .map(|p| &p.poset)
    }

    /// The first poset of the document, the default subject of single-poset
    /// commands.
    pub fn primary(&self) -> Option<&NamedPoset> {
        self.posets.first()
    }

    pub fn map(&self, name: &str) -> Option<&NamedMap> {
        self.maps.iter().find(|m| m.name == name)
    }
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct PosetBlock {
    line: usize,
    name: String,
    elems: Vec<String>,
    covers: Vec<(String, String)>,
    covers_started: bool,
}

struct MapBlock {
    line: usize,
    name: String,
    source: String,
    target: String,
    sends: Vec<(usize, String, String)>,
}

/// Parses a document, reporting the first error with its line number.
pub fn parse_poset_text(text: &str) -> Result<PosetDocument, ParseError> {
    let mut doc = PosetDocument::default();
    let mut poset_block: Option<PosetBlock> = None;
    let mut map_block: Option<MapBlock> = None;

    let close_poset =
        |block: Option<PosetBlock>, doc: &mut PosetDocument| -> Result<(), ParseError> {
            let Some(block) = block else { return Ok(()) };
            if doc.posets.iter().any(|p| p.name == block.name) {
                return Err(ParseError::DuplicateName {
                    line: block.line,
                    name: block.name,
                });
            }
            let poset = FinitePoset::from_covers_owned(block.elems, &block.covers)
                .map_err(|source| ParseError::Order {
                    line: block.line,
                    source,
                })?;
            doc.posets.push(NamedPoset {
                name: block.name,
                poset,
            });
            Ok(())
        };

    let close_map = |block: Option<MapBlock>, doc: &mut PosetDocument| -> Result<(), ParseError> {
        let Some(block) = block else { return Ok(()) };
        let source = doc
            .poset(&block.source)
            .ok_or_else(|| ParseError::UnknownName {
                line: block.line,
                name: block.source.clone(),
            })?
            .clone();
        let target = doc
            .poset(&block.target)
            .ok_or_else(|| ParseError::UnknownName {
                line: block.line,
                name: block.target.clone(),
            })?
            .clone();
        let mut table = vec![None; source.len()];
        for (line, src, dst) in &block.sends {
            let s = source.index_of(src).ok_or_else(|| ParseError::UnknownName {
                line: *line,
                name: src.clone(),
            })?;
            let d = target.index_of(dst).ok_or_else(|| ParseError::UnknownName {
                line: *line,
                name: dst.clone(),
            })?;
            if table[s.0].is_some() {
                return Err(ParseError::Syntax {
                    line: *line,
                    message: format!("element `{src}` is assigned twice"),
                });
            }
            table[s.0] = Some(d);
        }
        let mut resolved = Vec::with_capacity(table.len());
        for (i, entry) in table.iter().enumerate() {
            match entry {
                Some(d) => resolved.push(*d),
                None => {
                    return Err(ParseError::Syntax {
                        line: block.line,
                        message: format!(
                            "map `{}` is not total: `{}` has no assignment",
                            block.name,
                            source.name(domcheck_core::ElementId(i))
                        ),
                    })
                }
            }
        }
        if doc.maps.iter().any(|m| m.name == block.name) {
            return Err(ParseError::DuplicateName {
                line: block.line,
                name: block.name,
            });
        }
        doc.maps.push(NamedMap {
            name: block.name,
            source: block.source,
            target: block.target,
            map: PosetMap::new(source, target, resolved),
        });
        Ok(())
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let keyword = words.next().expect("nonempty line");
        let args: Vec<&str> = words.collect();
        let expect_tokens = |count: usize| -> Result<(), ParseError> {
            if args.len() != count {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("`{keyword}` expects {count} argument(s), got {}", args.len()),
                });
            }
            for a in &args {
                if !is_token(a) {
                    return Err(ParseError::Syntax {
                        line,
                        message: format!("`{a}` is not a valid token"),
                    });
                }
            }
            Ok(())
        };
        match keyword {
            "poset" => {
                expect_tokens(1)?;
                close_map(map_block.take(), &mut doc)?;
                close_poset(poset_block.take(), &mut doc)?;
                poset_block = Some(PosetBlock {
                    line,
                    name: args[0].to_string(),
                    elems: Vec::new(),
                    covers: Vec::new(),
                    covers_started: false,
                });
            }
            "elem" => {
                expect_tokens(1)?;
                let Some(block) = poset_block.as_mut() else {
                    return Err(ParseError::Syntax {
                        line,
                        message: "`elem` before any `poset` header".into(),
                    });
                };
                if map_block.is_some() {
                    return Err(ParseError::Syntax {
                        line,
                        message: "`elem` inside a map block".into(),
                    });
                }
                if block.covers_started {
                    return Err(ParseError::Syntax {
                        line,
                        message: "all `elem` lines must come before `cover` lines".into(),
                    });
                }
                let name = args[0].to_string();
                if block.elems.contains(&name) {
                    return Err(ParseError::DuplicateName { line, name });
                }
                block.elems.push(name);
            }
            "cover" => {
                expect_tokens(2)?;
                let declared: &[String] = poset_block
                    .as_ref()
                    .map(|b| b.elems.as_slice())
                    .unwrap_or(&[]);
                for a in &args {
                    if !declared.iter().any(|e| e == a) {
                        return Err(ParseError::UnknownName {
                            line,
                            name: a.to_string(),
                        });
                    }
                }
                let block = poset_block.as_mut().expect("names resolved above");
                block.covers_started = true;
                block.covers.push((args[0].to_string(), args[1].to_string()));
            }
            "map" => {
                expect_tokens(3)?;
                close_map(map_block.take(), &mut doc)?;
                close_poset(poset_block.take(), &mut doc)?;
                map_block = Some(MapBlock {
                    line,
                    name: args[0].to_string(),
                    source: args[1].to_string(),
                    target: args[2].to_string(),
                    sends: Vec::new(),
                });
            }
            "send" => {
                expect_tokens(2)?;
                let Some(block) = map_block.as_mut() else {
                    return Err(ParseError::Syntax {
                        line,
                        message: "`send` before any `map` header".into(),
                    });
                };
                block
                    .sends
                    .push((line, args[0].to_string(), args[1].to_string()));
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("unknown directive `{other}`"),
                });
            }
        }
    }
    close_map(map_block.take(), &mut doc)?;
    close_poset(poset_block.take(), &mut doc)?;
    if doc.posets.is_empty() {
        return Err(ParseError::Syntax {
            line: text.lines().count().max(1),
            message: "document declares no poset".into(),
        });
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_two_atom_fixture() {
        let doc =
            parse_poset_text("poset V\nelem 0\nelem a1\nelem a2\ncover 0 a1\ncover 0 a2\n").unwrap();
        assert_eq!(doc.posets.len(), 1);
        let p = &doc.primary().unwrap().poset;
        assert!(p.same_order(&FinitePoset::two_atoms()));
    }

    #[test]
    fn parses_a_singleton() {
        let doc = parse_poset_text("poset S\nelem x\n").unwrap();
        assert_eq!(doc.primary().unwrap().poset.len(), 1);
    }

    #[test]
    fn cover_before_elem_is_unknown_name_at_line_one() {
        let err = parse_poset_text("cover a b\nelem a\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownName {
                line: 1,
                name: "a".into()
            }
        );
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let doc = parse_poset_text("# heading\n\nposet P # trailing\nelem x\n").unwrap();
        assert_eq!(doc.primary().unwrap().name, "P");
    }

    #[test]
    fn map_blocks_connect_posets() {
        let text = "poset V\nelem 0\nelem a1\nelem a2\ncover 0 a1\ncover 0 a2\n\
                    poset C\nelem lo\nelem hi\ncover lo hi\n\
                    map collapse V C\nsend 0 lo\nsend a1 hi\nsend a2 hi\n";
        let doc = parse_poset_text(text).unwrap();
        assert_eq!(doc.posets.len(), 2);
        let m = doc.map("collapse").unwrap();
        assert_eq!(m.source, "V");
        assert_eq!(m.target, "C");
        assert_eq!(
            m.map.apply(doc.poset("V").unwrap().index_of("a1").unwrap()),
            doc.poset("C").unwrap().index_of("hi").unwrap()
        );
    }

    #[test]
    fn partial_maps_are_rejected() {
        let text = "poset P\nelem x\nelem y\nmap f P P\nsend x x\n";
        let err = parse_poset_text(text).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 4, .. }), "{err}");
    }

    #[test]
    fn cyclic_covers_surface_as_order_errors() {
        let err = parse_poset_text("poset P\nelem a\nelem b\ncover a b\ncover b a\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Order {
                source: OrderError::CycleDetected(_),
                ..
            }
        ));
    }
}
