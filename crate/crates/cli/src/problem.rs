//! Problem files.
//!
//! ```text
//! # comment
//! vars: x, y, z
//! let f = x^2 + y^2 + z^2
//! let V = [f]
//! let w = [0, 0, 1]
//! task: gsv V w
//! ```
//!
//! Lists nest with brackets; a list element that is exactly the name of an
//! earlier binding stands for that binding. Stratified problems use
//! `stratum: <name> key=<int> ...` and `order: <a> < <b> n=<int>` lines.

use std::collections::{BTreeMap, HashMap};

use singidx::poly::ParseError;
use singidx::{parse_poly, Polynomial, Ring, RingContext};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ProblemError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ProblemError> {
    Err(ProblemError { line, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Poly(Polynomial),
    List(Vec<Value>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    pub line: usize,
    pub command: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumLine {
    pub line: usize,
    pub name: String,
    pub values: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderLine {
    pub line: usize,
    pub lower: String,
    pub upper: String,
    pub n: i64,
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub ring: Option<Ring>,
    pub bindings: HashMap<String, (usize, Value)>,
    pub task: Task,
    pub strata: Vec<StratumLine>,
    pub order: Vec<OrderLine>,
}

pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    let mut ring: Option<Ring> = None;
    let mut bindings: HashMap<String, (usize, Value)> = HashMap::new();
    let mut task: Option<Task> = None;
    let mut strata = Vec::new();
    let mut order = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("vars:") {
            if ring.is_some() {
                return err(line, "ring declared twice");
            }
            let names: Vec<&str> = rest.split(',').map(str::trim).collect();
            ring = Some(RingContext::new(names).map_err(|e| ProblemError { line, message: e.to_string() })?);
        } else if let Some(rest) = content.strip_prefix("let ") {
            let Some((name, expr)) = rest.split_once('=') else {
                return err(line, "expected `let <name> = <expression>`");
            };
            let name = name.trim();
            if !is_name(name) {
                return err(line, format!("invalid binding name `{name}`"));
            }
            let Some(r) = &ring else {
                return err(line, "ring must be declared with `vars:` before use");
            };
            if r.index_of(name).is_some() {
                return err(line, format!("binding `{name}` shadows a variable"));
            }
            if bindings.contains_key(name) {
                return err(line, format!("binding `{name}` defined twice"));
            }
            let value = parse_value(expr.trim(), r, &bindings, line)?;
            bindings.insert(name.to_string(), (line, value));
        } else if let Some(rest) = content.strip_prefix("task:") {
            if task.is_some() {
                return err(line, "more than one task");
            }
            let mut words = rest.split_whitespace().map(str::to_string);
            let Some(command) = words.next() else {
                return err(line, "task needs a subcommand");
            };
            task = Some(Task { line, command, args: words.collect() });
        } else if let Some(rest) = content.strip_prefix("stratum:") {
            let mut words = rest.split_whitespace();
            let Some(name) = words.next() else {
                return err(line, "stratum needs a name");
            };
            let mut values = BTreeMap::new();
            for w in words {
                let (k, v) = key_value(w, line)?;
                if !["n", "eu", "rad", "chi", "euv"].contains(&k.as_str()) {
                    return err(line, format!("unknown stratum field `{k}`"));
                }
                values.insert(k, v);
            }
            strata.push(StratumLine { line, name: name.to_string(), values });
        } else if let Some(rest) = content.strip_prefix("order:") {
            let words: Vec<&str> = rest.split_whitespace().collect();
            let [lower, "<", upper, n] = words[..] else {
                return err(line, "expected `order: <a> < <b> n=<int>`");
            };
            let (k, n) = key_value(n, line)?;
            if k != "n" {
                return err(line, "expected `n=<int>`");
            }
            order.push(OrderLine { line, lower: lower.to_string(), upper: upper.to_string(), n });
        } else {
            return err(line, format!("unrecognized line `{content}`"));
        }
    }
    let Some(task) = task else {
        return err(text.lines().count().max(1), "missing `task:` line");
    };
    Ok(Problem { ring, bindings, task, strata, order })
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn key_value(word: &str, line: usize) -> Result<(String, i64), ProblemError> {
    let Some((k, v)) = word.split_once('=') else {
        return err(line, format!("expected key=value, got `{word}`"));
    };
    let v = v.parse::<i64>().map_err(|_| ProblemError { line, message: format!("`{v}` is not an integer") })?;
    Ok((k.to_string(), v))
}

fn parse_value(
    text: &str,
    ring: &Ring,
    bindings: &HashMap<String, (usize, Value)>,
    line: usize,
) -> Result<Value, ProblemError> {
    if let Some((_, v)) = bindings.get(text) {
        return Ok(v.clone());
    }
    if let Some(inner) = text.strip_prefix('[') {
        let Some(inner) = inner.strip_suffix(']') else {
            return err(line, format!("unbalanced brackets in `{text}`"));
        };
        let items = split_top_level(inner).ok_or_else(|| ProblemError {
            line,
            message: format!("unbalanced brackets in `{text}`"),
        })?;
        return items
            .into_iter()
            .map(|item| parse_value(item.trim(), ring, bindings, line))
            .collect::<Result<Vec<_>, _>>()
            .map(Value::List);
    }
    parse_poly(text, ring).map(Value::Poly).map_err(|e| poly_error(e, text, line))
}

fn poly_error(e: ParseError, text: &str, line: usize) -> ProblemError {
    ProblemError { line, message: format!("{e} in `{text}`") }
}

/// Splits at commas outside brackets and parentheses. An empty string gives
/// no items.
fn split_top_level(s: &str) -> Option<Vec<&str>> {
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    let mut depth = 0i32;
    let mut items = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                items.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    items.push(&s[start..]);
    Some(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_problem() {
        let p = parse_problem(
            "# quadric\nvars: x, y, z\nlet f = x^2 + y^2 + z^2\nlet V = [f]\nlet w = [0, 0, 1]\ntask: gsv V w\n",
        )
        .unwrap();
        assert_eq!(p.task.command, "gsv");
        assert_eq!(p.task.args, vec!["V", "w"]);
        let Value::List(v) = &p.bindings["V"].1 else { panic!() };
        assert_eq!(v.len(), 1);
        let Value::List(w) = &p.bindings["w"].1 else { panic!() };
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn nested_lists_and_empty_lists() {
        let p = parse_problem("vars: x, y\nlet C = [[[1, 0], [0, x]], [[0, 1]]]\nlet V = []\ntask: collection V C\n").unwrap();
        let Value::List(groups) = &p.bindings["C"].1 else { panic!() };
        assert_eq!(groups.len(), 2);
        assert_eq!(p.bindings["V"].1, Value::List(vec![]));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_problem("let f = x\ntask: milnor f").unwrap_err().line, 1);
        assert_eq!(parse_problem("vars: x\nlet f = x +\ntask: milnor f").unwrap_err().line, 2);
        assert_eq!(parse_problem("vars: x\nlet f = [x, (x]\ntask: milnor f").unwrap_err().line, 2);
        assert_eq!(parse_problem("vars: x\ntask: a\ntask: b").unwrap_err().line, 3);
        assert!(parse_problem("vars: x\nlet f = x").is_err());
        assert!(parse_problem("vars: x\nlet x = x\ntask: milnor x").is_err());
    }

    #[test]
    fn strata_lines() {
        let p = parse_problem("stratum: O n=3 eu=1\nstratum: V n=1 eu=5\norder: O < V n=3\ntask: radial-from-eu\n").unwrap();
        assert_eq!(p.strata.len(), 2);
        assert_eq!(p.strata[0].values["n"], 3);
        assert_eq!(p.order[0], OrderLine { line: 3, lower: "O".into(), upper: "V".into(), n: 3 });
        assert!(parse_problem("stratum: O foo=1\ntask: mobius").is_err());
    }
}
