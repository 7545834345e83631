use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::{parse, AtomTable, ExprError, ShuffleExpr};
use crate::automata::Dfa;

/// A parsed expression file together with the automata it refers to.
#[derive(Clone, Debug)]
pub struct ExprFile {
    pub atoms: AtomTable,
    pub text: String,
    pub expr: ShuffleExpr,
}

fn file_error(path: &Path, message: impl Into<String>) -> ExprError {
    ExprError::File {
        path: path.display().to_string(),
        message: message.into(),
    }
}

fn load_automaton(path: &Path) -> Result<Dfa, ExprError> {
    let text = fs::read_to_string(path).map_err(|e| file_error(path, e.to_string()))?;
    text.parse().map_err(|source| ExprError::AtomFile {
        path: path.display().to_string(),
        source,
    })
}

/// Reads `atom NAME = path` lines followed by one `expr:` line. Atom paths
/// are relative to the expression file; `overrides` replace or add atoms
/// and are taken as given.
pub fn load_expr_file(path: &Path, overrides: &[(String, PathBuf)]) -> Result<ExprFile, ExprError> {
    let content = fs::read_to_string(path).map_err(|e| file_error(path, e.to_string()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut atoms = AtomTable::new();
    let mut text = None;
    for (no, raw) in content.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |m: &str| file_error(path, format!("line {}: {m}", no + 1));
        if text.is_some() {
            return Err(at("content after the expr line"));
        }
        if let Some(rest) = line.strip_prefix("atom ") {
            let (name, file) = rest
                .split_once('=')
                .ok_or_else(|| at("expected 'atom NAME = path'"))?;
            let name = name.trim();
            let valid = name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(at(&format!("invalid atom name '{name}'")));
            }
            let dfa = load_automaton(&base.join(file.trim()))?;
            if atoms.insert(name.to_string(), Arc::new(dfa)).is_some() {
                return Err(at(&format!("atom '{name}' defined twice")));
            }
        } else if let Some(rest) = line.strip_prefix("expr:") {
            text = Some(rest.trim().to_string());
        } else {
            return Err(at("expected an 'atom' or 'expr:' line"));
        }
    }
    let text = text.ok_or_else(|| file_error(path, "missing 'expr:' line"))?;
    for (name, p) in overrides {
        atoms.insert(name.clone(), Arc::new(load_automaton(p)?));
    }
    let expr = parse(&text, &atoms)?;
    Ok(ExprFile { atoms, text, expr })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("fixtures")
            .join(name)
    }

    #[test]
    fn loads_fixture_files() {
        let f = load_expr_file(&fixture("e_concat_o.expr"), &[]).unwrap();
        assert_eq!(f.text, "E . O");
        assert_eq!(f.atoms.len(), 2);
        assert_eq!(f.expr.to_string(), "E . O");
        let f = load_expr_file(&fixture("residual.expr"), &[]).unwrap();
        assert_eq!(f.expr.to_string(), "(E . O)*");
    }

    #[test]
    fn overrides_replace_atoms() {
        let f = load_expr_file(
            &fixture("e_concat_o.expr"),
            &[("O".into(), fixture("even_a.aut"))],
        )
        .unwrap();
        assert_eq!(*f.atoms["O"], *f.atoms["E"]);
    }

    #[test]
    fn malformed_files() {
        let dir = tempfile::tempdir().unwrap();
        let cases = [
            (
                "atom E even_a.aut\nexpr: E\n",
                "expected 'atom NAME = path'",
            ),
            ("atom E = missing.aut\nexpr: E\n", "missing.aut"),
            ("expr: E\nexpr: E\n", "content after"),
            ("atom 1E = x\n", "invalid atom name"),
            ("# nothing\n", "missing 'expr:'"),
            ("hello\n", "expected an 'atom'"),
        ];
        for (content, needle) in cases {
            let p = dir.path().join("x.expr");
            fs::write(&p, content).unwrap();
            let err = load_expr_file(&p, &[]).unwrap_err().to_string();
            assert!(err.contains(needle), "{err}");
        }
    }
}
