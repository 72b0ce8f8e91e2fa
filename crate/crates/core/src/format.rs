//! Line-oriented text format for instances.
//!
//! ```text
//! men 3
//! women 4
//! m1: w2 w4
//! m2: w1 (w3 w4)
//! ```
//!
//! The first two non-comment lines declare the counts. Every further line
//! lists one person's partners best-first; a parenthesised group is a tie.
//! Lines starting with `#` and blank lines are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::error::Violation;
use crate::instance::{Instance, PersonId, PreferenceOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown person {name:?}")]
    UnknownPerson { line: usize, name: String },
    #[error("line {line}: duplicate preference line for {person}")]
    DuplicateLine { line: usize, person: PersonId },
    #[error("invalid instance: {0}")]
    Invalid(#[from] Violation),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Canonical text form: counts, then men and women in index order, tie
/// groups sorted by id. People with empty lists get no line.
pub fn serialize(instance: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "men {}", instance.num_men()).unwrap();
    writeln!(out, "women {}", instance.num_women()).unwrap();
    for person in instance.people() {
        let order = instance.prefs(person).canonical();
        if order.is_empty() {
            continue;
        }
        write!(out, "{person}:").unwrap();
        for tier in order.tiers() {
            match tier.as_slice() {
                [single] => write!(out, " {single}").unwrap(),
                group => {
                    let names: Vec<String> = group.iter().map(ToString::to_string).collect();
                    write!(out, " ({})", names.join(" ")).unwrap();
                }
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Name(&'a str),
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token::Name(&text[s..i]));
            }
            match c {
                '(' => tokens.push(Token::Open),
                ')' => tokens.push(Token::Close),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token::Name(&text[s..]));
    }
    tokens
}

fn parse_header(line_no: usize, line: &str, keyword: &str) -> Result<usize, ParseError> {
    let mut words = line.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some(k), Some(n), None) if k == keyword => n
            .parse()
            .map_err(|_| syntax(line_no, format!("expected a count after `{keyword}`"))),
        _ => Err(syntax(line_no, format!("expected `{keyword} <count>`"))),
    }
}

/// Parses and validates an instance.
pub fn parse(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (n1, l1) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing `men <count>` header"))?;
    let num_men = parse_header(n1, l1, "men")?;
    let (n2, l2) = lines
        .next()
        .ok_or_else(|| syntax(n1 + 1, "missing `women <count>` header"))?;
    let num_women = parse_header(n2, l2, "women")?;

    let resolve = |line: usize, name: &str| -> Result<PersonId, ParseError> {
        let unknown = || ParseError::UnknownPerson {
            line,
            name: name.to_string(),
        };
        let id: PersonId = name.parse().map_err(|_| unknown())?;
        let count = if id.is_man() { num_men } else { num_women };
        if id.index > count {
            return Err(unknown());
        }
        Ok(id)
    };

    let mut seen = BTreeSet::new();
    let mut prefs = Vec::new();
    for (line_no, line) in lines {
        let (owner, body) = line
            .split_once(':')
            .ok_or_else(|| syntax(line_no, "expected `<id>: <groups>`"))?;
        let owner = resolve(line_no, owner.trim())?;
        if !seen.insert(owner) {
            return Err(ParseError::DuplicateLine {
                line: line_no,
                person: owner,
            });
        }
        let mut tiers: Vec<Vec<PersonId>> = Vec::new();
        let mut group: Option<Vec<PersonId>> = None;
        for token in tokenize(body) {
            match (token, group.as_mut()) {
                (Token::Open, None) => group = Some(Vec::new()),
                (Token::Open, Some(_)) => return Err(syntax(line_no, "nested tie group")),
                (Token::Close, None) => return Err(syntax(line_no, "unmatched `)`")),
                (Token::Close, Some(g)) => {
                    if g.is_empty() {
                        return Err(syntax(line_no, "empty tie group"));
                    }
                    tiers.push(std::mem::take(g));
                    group = None;
                }
                (Token::Name(name), Some(g)) => g.push(resolve(line_no, name)?),
                (Token::Name(name), None) => tiers.push(vec![resolve(line_no, name)?]),
            }
        }
        if group.is_some() {
            return Err(syntax(line_no, "unclosed tie group"));
        }
        if tiers.is_empty() {
            return Err(syntax(line_no, "empty preference list"));
        }
        prefs.push((owner, PreferenceOrder::new(tiers)));
    }
    let instance = Instance::new(num_men, num_women, prefs);
    instance.validate()?;
    Ok(instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{sample_instance, SAMPLE_TEXT};
    use crate::instance::{random_instance, tight_family, TieProbability};
    use proptest::prelude::*;

    #[test]
    fn sample_serializes_exactly() {
        assert_eq!(serialize(&sample_instance()), SAMPLE_TEXT);
        assert_eq!(parse(SAMPLE_TEXT).unwrap(), sample_instance());
    }

    #[test]
    fn empty_body() {
        assert_eq!(parse("men 0\nwomen 0\n").unwrap(), Instance::empty());
        assert_eq!(
            parse("# nothing\nmen 0\n\nwomen 0").unwrap(),
            Instance::empty()
        );
    }

    #[test]
    fn unclosed_group() {
        let err = parse("men 1\nwomen 4\nm1: w2 (w3 w4").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                line: 3,
                message: "unclosed tie group".into()
            }
        );
    }

    #[test]
    fn error_kinds() {
        assert!(matches!(
            parse("men 1\nwomen 1\nm1: w2\n"),
            Err(ParseError::UnknownPerson { line: 3, .. })
        ));
        assert!(matches!(
            parse("men 1\nwomen 1\nm1: w1\nw1: m1\nm1: w1\n"),
            Err(ParseError::DuplicateLine { line: 5, .. })
        ));
        assert!(matches!(
            parse("men 1\nwomen 1\nm1: w1\n"),
            Err(ParseError::Invalid(Violation::OneSided { .. }))
        ));
        assert!(matches!(
            parse("women 1\nmen 1\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse("men 1\nwomen 1\nm1 w1\n"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse("men 1\nwomen 1\nm1: ()\n"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse("men 1\nwomen 1\nm1: w1)\n"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(parse(""), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn tight_family_text() {
        let text = serialize(&tight_family(2));
        assert_eq!(
            text,
            "men 2\nwomen 4\nm1: (w1 w3)\nm2: (w2 w4)\nw1: m1\nw2: m2\nw3: m1\nw4: m2\n"
        );
    }

    proptest! {
        #[test]
        fn round_trip(men in 0usize..6, women in 0usize..6, len in 0usize..6,
                      num in 0u32..=4, seed in any::<u64>()) {
            let p = TieProbability::new(num, 4).unwrap();
            let inst = random_instance(men, women, len, p, seed);
            let text = serialize(&inst);
            let back = parse(&text).unwrap();
            prop_assert_eq!(&back, &inst);
            prop_assert_eq!(serialize(&back), text);
        }
    }
}
