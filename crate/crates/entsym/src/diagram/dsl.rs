//! Line-oriented DSL for diagrams.
//!
//! ```text
//! diagram "name"        # optional
//! inputs: add(1/2) add(1/4) mult(3, conorm=L)
//! merge @0
//! split @0 left=1/8
//! vcross @1
//! mscale 2
//! dot @2
//! rdot @1
//! mmerge @0
//! end
//! ```
//!
//! `#` starts a comment. Positions are 0-based indices into the current
//! strand list, left to right.

use num_traits::Zero;

use super::{Conorm, Diagram, Generator, StrandState};
use crate::exact::{parse_rat, Rat};
use crate::Error;

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

// column (1-based) of `needle` within `line`, for error reporting
fn col_of(line: &str, needle: &str) -> usize {
    line.find(needle).map(|i| i + 1).unwrap_or(1)
}

fn parse_rat_at(tok: &str, lineno: usize, line: &str) -> Result<Rat, Error> {
    parse_rat(tok).map_err(|_| {
        syntax(lineno, col_of(line, tok), format!("malformed rational `{tok}`"))
    })
}

fn parse_pos(tok: &str, lineno: usize, line: &str) -> Result<usize, Error> {
    let stripped = tok.strip_prefix('@').ok_or_else(|| {
        syntax(lineno, col_of(line, tok), format!("expected `@<position>`, got `{tok}`"))
    })?;
    stripped.parse().map_err(|_| {
        syntax(lineno, col_of(line, tok), format!("malformed position `{tok}`"))
    })
}

// one strand spec: add(r) or mult(r, conorm=L|R)
fn parse_strand(tok: &str, lineno: usize, line: &str) -> Result<StrandState, Error> {
    let err = |msg: String| syntax(lineno, col_of(line, tok), msg);
    if let Some(body) = tok.strip_prefix("add(").and_then(|s| s.strip_suffix(')')) {
        let v = parse_rat_at(body, lineno, line)?;
        return Ok(StrandState::Add(v));
    }
    if let Some(body) = tok.strip_prefix("mult(").and_then(|s| s.strip_suffix(')')) {
        let (w, c) = body
            .split_once(',')
            .ok_or_else(|| err(format!("expected `mult(c, conorm=L|R)`, got `{tok}`")))?;
        let weight = parse_rat_at(w.trim(), lineno, line)?;
        if weight.is_zero() {
            return Err(err("multiplicative weight must be nonzero".into()));
        }
        let conorm = match c.trim().strip_prefix("conorm=") {
            Some("L") => Conorm::L,
            Some("R") => Conorm::R,
            _ => return Err(err(format!("expected `conorm=L` or `conorm=R` in `{tok}`"))),
        };
        return Ok(StrandState::Mult { weight, conorm });
    }
    Err(err(format!("expected `add(...)` or `mult(...)`, got `{tok}`")))
}

/// Parse a DSL program. On failure returns every diagnostic collected.
pub fn parse_diagram(text: &str) -> Result<Diagram, Vec<Error>> {
    let mut errors = Vec::new();
    let mut name = String::from("diagram");
    let mut inputs: Option<Vec<StrandState>> = None;
    let mut slices = Vec::new();
    let mut ended = false;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.split('#').next() {
            Some(l) => l.trim_end(),
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        if ended {
            errors.push(syntax(lineno, 1, "content after `end`"));
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap();
        let rest: Vec<&str> = toks.collect();
        let mut expect_done = |n: usize, what: &str| -> bool {
            if rest.len() != n {
                errors.push(syntax(lineno, 1, format!("`{head}` expects {what}")));
                false
            } else {
                true
            }
        };
        match head {
            "diagram" => {
                let joined = rest.join(" ");
                let trimmed = joined.trim();
                if let Some(n) = trimmed.strip_prefix('"').and_then(|s| s.strip_suffix('"')) {
                    name = n.to_string();
                } else {
                    errors.push(syntax(lineno, 1, "expected `diagram \"name\"`"));
                }
            }
            "inputs:" => {
                if inputs.is_some() {
                    errors.push(syntax(lineno, 1, "duplicate `inputs:` line"));
                    continue;
                }
                // re-split on parens-aware boundaries: `mult(3, conorm=L)`
                // may contain a space after the comma
                let body = line.trim_start().strip_prefix("inputs:").unwrap();
                let mut strands = Vec::new();
                let mut depth = 0usize;
                let mut tok = String::new();
                for ch in body.chars() {
                    match ch {
                        '(' => {
                            depth += 1;
                            tok.push(ch);
                        }
                        ')' => {
                            depth = depth.saturating_sub(1);
                            tok.push(ch);
                        }
                        c if c.is_whitespace() && depth == 0 => {
                            if !tok.is_empty() {
                                strands.push(std::mem::take(&mut tok));
                            }
                        }
                        _ => tok.push(ch),
                    }
                }
                if !tok.is_empty() {
                    strands.push(tok);
                }
                let mut parsed = Vec::new();
                for s in &strands {
                    match parse_strand(s, lineno, line) {
                        Ok(st) => parsed.push(st),
                        Err(e) => errors.push(e),
                    }
                }
                inputs = Some(parsed);
            }
            "merge" => {
                if expect_done(1, "one `@<position>`") {
                    match parse_pos(rest[0], lineno, line) {
                        Ok(pos) => slices.push(Generator::Merge { pos }),
                        Err(e) => errors.push(e),
                    }
                }
            }
            "split" => {
                if expect_done(2, "`@<position> left=<rational>`") {
                    let pos = parse_pos(rest[0], lineno, line);
                    let left = match rest[1].strip_prefix("left=") {
                        Some(v) => parse_rat_at(v, lineno, line),
                        None => Err(syntax(
                            lineno,
                            col_of(line, rest[1]),
                            format!("expected `left=<rational>`, got `{}`", rest[1]),
                        )),
                    };
                    match (pos, left) {
                        (Ok(pos), Ok(left)) => slices.push(Generator::Split { pos, left }),
                        (p, l) => errors.extend([p.err(), l.err()].into_iter().flatten()),
                    }
                }
            }
            "mmerge" | "vcross" | "dot" | "rdot" => {
                if expect_done(1, "one `@<position>`") {
                    match parse_pos(rest[0], lineno, line) {
                        Ok(pos) => slices.push(match head {
                            "mmerge" => Generator::MMerge { pos },
                            "vcross" => Generator::VCross { pos },
                            "dot" => Generator::Dot { pos },
                            _ => Generator::RDot { pos },
                        }),
                        Err(e) => errors.push(e),
                    }
                }
            }
            "mscale" => {
                if expect_done(1, "one rational factor") {
                    match parse_rat_at(rest[0], lineno, line) {
                        Ok(factor) if !factor.is_zero() => {
                            slices.push(Generator::MScale { factor })
                        }
                        Ok(_) => errors.push(syntax(
                            lineno,
                            col_of(line, rest[0]),
                            "mscale factor must be nonzero",
                        )),
                        Err(e) => errors.push(e),
                    }
                }
            }
            "end" => {
                if !rest.is_empty() {
                    errors.push(syntax(lineno, 1, "`end` takes no arguments"));
                }
                ended = true;
            }
            other => {
                errors.push(syntax(
                    lineno,
                    col_of(line, other),
                    format!("unknown generator `{other}`"),
                ));
            }
        }
    }

    if !ended {
        let last = text.lines().count().max(1);
        errors.push(syntax(last, 1, "expected `end`"));
    }
    let inputs = match inputs {
        Some(i) => i,
        None => {
            errors.push(syntax(1, 1, "missing `inputs:` line"));
            Vec::new()
        }
    };
    if errors.is_empty() {
        Ok(Diagram { name, inputs, slices })
    } else {
        Err(errors)
    }
}
