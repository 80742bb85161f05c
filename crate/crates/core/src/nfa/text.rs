//! Line-based text format:
//!
//! ```text
//! nfa <num_states> <alphabet_size> <start>
//! accept <i> <j> ...
//! t <from> <symbol> <to>
//! ```
//!
//! `#` starts a comment. Serialization emits transitions in lexicographic
//! order, so equal automata serialize to equal bytes.

use std::fmt;

use super::Nfa;
use crate::error::{Error, Result};

impl fmt::Display for Nfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nfa {} {} {}", self.num_states, self.alphabet_size, self.start)?;
        write!(f, "accept")?;
        for q in self.accept_states() {
            write!(f, " {q}")?;
        }
        writeln!(f)?;
        for (from, symbol, to) in self.transitions() {
            writeln!(f, "t {from} {symbol} {to}")?;
        }
        Ok(())
    }
}

fn numbers(fields: &[&str], line: usize) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|field| {
            field.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("expected a non-negative integer, found {field:?}"),
            })
        })
        .collect()
}

impl Nfa {
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(text: &str) -> Result<Nfa> {
        Self::parse_lines(text.lines())
    }

    /// Single-line form with `;` in place of newlines.
    pub fn to_inline(&self) -> String {
        self.to_string().trim_end().replace('\n', ";")
    }

    pub fn parse_inline(text: &str) -> Result<Nfa> {
        Self::parse_lines(text.split(';'))
    }

    fn parse_lines<'a>(lines: impl Iterator<Item = &'a str>) -> Result<Nfa> {
        let mut nfa: Option<Nfa> = None;
        let mut last_line = 0;
        for (index, raw) in lines.enumerate() {
            let line = index + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let at_line = |err: Error| match err {
                Error::Parse { .. } => err,
                other => Error::Parse {
                    line,
                    message: other.to_string(),
                },
            };
            match (fields[0], nfa.as_mut()) {
                ("nfa", None) => {
                    let values = numbers(&fields[1..], line)?;
                    let [k, s, start] = values[..] else {
                        return Err(Error::Parse {
                            line,
                            message: "header is `nfa <num_states> <alphabet_size> <start>`".into(),
                        });
                    };
                    nfa = Some(Nfa::new(k, s, start).map_err(at_line)?);
                }
                ("nfa", Some(_)) => {
                    return Err(Error::Parse {
                        line,
                        message: "duplicate header".into(),
                    })
                }
                (_, None) => {
                    return Err(Error::Parse {
                        line,
                        message: "expected header `nfa <num_states> <alphabet_size> <start>`".into(),
                    })
                }
                ("accept", Some(m)) => {
                    for q in numbers(&fields[1..], line)? {
                        m.set_accepting(q).map_err(at_line)?;
                    }
                }
                ("t", Some(m)) => {
                    let values = numbers(&fields[1..], line)?;
                    let [from, symbol, to] = values[..] else {
                        return Err(Error::Parse {
                            line,
                            message: "transition is `t <from> <symbol> <to>`".into(),
                        });
                    };
                    m.add_transition(from, symbol, to).map_err(at_line)?;
                }
                (other, Some(_)) => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown directive {other:?}"),
                    })
                }
            }
        }
        nfa.ok_or(Error::Parse {
            line: last_line.max(1),
            message: "missing `nfa` header".into(),
        })
    }
}
