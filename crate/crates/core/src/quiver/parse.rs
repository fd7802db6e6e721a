use std::collections::HashMap;

use super::{Edge, Quiver, QuiverError};

/// A whitespace-separated token with its 1-based column.
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> QuiverError {
    QuiverError::Syntax { line, column, message: message.into() }
}

/// Parses the quiver file format:
///
/// ```text
/// vertices: a b c
/// edges:
/// a b 1     # source target multiplicity
/// b b 2
/// ```
///
/// `#` starts a comment; blank lines are ignored.
pub fn parse_quiver(text: &str) -> Result<Quiver, QuiverError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    let (vline, vtext) = lines.next().ok_or_else(|| syntax(1, 1, "expected `vertices:`"))?;
    let vtoks = tokens(vtext);
    let head = &vtoks[0];
    let rest = head.text.strip_prefix("vertices:").ok_or_else(|| syntax(vline, head.column, "expected `vertices:`"))?;

    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let attached = (!rest.is_empty()).then(|| Token { text: rest, column: head.column + "vertices:".len() });
    for tok in attached.into_iter().chain(vtoks.into_iter().skip(1)) {
        if !is_ident(tok.text) {
            return Err(syntax(vline, tok.column, format!("invalid vertex name `{}`", tok.text)));
        }
        if index.insert(tok.text.to_string(), names.len()).is_some() {
            return Err(QuiverError::DuplicateVertex { name: tok.text.to_string(), line: vline, column: tok.column });
        }
        names.push(tok.text.to_string());
    }

    let (eline, etext) = lines.next().ok_or_else(|| syntax(vline + 1, 1, "expected `edges:`"))?;
    let etoks = tokens(etext);
    if etoks.len() != 1 || etoks[0].text != "edges:" {
        return Err(syntax(eline, etoks[0].column, "expected `edges:`"));
    }

    let mut edges = Vec::new();
    for (lineno, l) in lines {
        let toks = tokens(l);
        if toks.len() != 3 {
            let column = toks.get(3).map_or(l.len() + 1, |t| t.column);
            return Err(syntax(lineno, column, "expected `source target multiplicity`"));
        }
        let endpoint = |t: &Token<'_>| -> Result<usize, QuiverError> {
            if !is_ident(t.text) {
                return Err(syntax(lineno, t.column, format!("invalid vertex name `{}`", t.text)));
            }
            index.get(t.text).copied().ok_or_else(|| QuiverError::UndeclaredVertex {
                name: t.text.to_string(),
                line: lineno,
                column: t.column,
            })
        };
        let source = endpoint(&toks[0])?;
        let target = endpoint(&toks[1])?;
        let mult: usize = toks[2]
            .text
            .parse()
            .ok()
            .filter(|&m| m >= 1)
            .ok_or_else(|| syntax(lineno, toks[2].column, "multiplicity must be an integer >= 1"))?;
        edges.extend(std::iter::repeat_n(Edge { source, target }, mult));
    }
    Ok(Quiver::new(names, edges))
}
