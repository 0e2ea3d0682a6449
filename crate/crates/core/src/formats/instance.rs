use std::fmt::Write;
use std::path::{Path, PathBuf};

use crate::automata::IntersectionInstance;

use super::{emit_dfa, emit_dfa_compact, parse_dfa, quote_name, read_file, tokenize, write_file, FormatError};

/// The member paths of a `.int` file, one `use <path>` line each, in
/// order.
pub fn parse_int(text: &str) -> Result<Vec<String>, FormatError> {
    let mut paths = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let tokens = tokenize(line, lineno, true)?;
        match tokens.as_slice() {
            [] => {}
            [kw, path] if kw.text == "use" && !kw.quoted => paths.push(path.text.clone()),
            [kw, ..] if kw.text == "use" => {
                return Err(FormatError::parse(lineno, "'use' takes exactly one path"));
            }
            [kw, ..] => return Err(FormatError::parse(lineno, format!("unknown keyword '{}'", kw.text))),
        }
    }
    if paths.is_empty() {
        return Err(FormatError::Validation("instance lists no automata".into()));
    }
    Ok(paths)
}

pub fn emit_int<S: AsRef<str>>(paths: &[S]) -> String {
    let mut out = String::new();
    for p in paths {
        let _ = writeln!(out, "use {}", quote_name(p.as_ref()));
    }
    out
}

/// Reads a `.int` file and its automata; member paths are relative to the
/// `.int` file's directory.
pub fn load_instance(path: &Path, strict: bool) -> Result<IntersectionInstance, FormatError> {
    let members = parse_int(&read_file(path)?).map_err(|e| e.in_file(path))?;
    let dir = path.parent().unwrap_or(Path::new(""));
    let dfas = members
        .iter()
        .map(|m| {
            let p = dir.join(m);
            parse_dfa(&read_file(&p)?, strict).map_err(|e| e.in_file(&p))
        })
        .collect::<Result<Vec<_>, _>>()?;
    IntersectionInstance::new(dfas).map_err(|e| FormatError::Validation(e.to_string()).in_file(path))
}

/// Writes `instance` as `path` plus one `.dfa` per member next to it,
/// named `<stem>.<index>.dfa`. Returns the member paths.
pub fn save_instance(path: &Path, instance: &IntersectionInstance, compact: bool) -> Result<Vec<PathBuf>, FormatError> {
    let dir = path.parent().unwrap_or(Path::new(""));
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    let digits = instance.len().to_string().len();
    let mut names = Vec::with_capacity(instance.len());
    let mut written = Vec::with_capacity(instance.len());
    for (i, dfa) in instance.dfas().iter().enumerate() {
        let name = format!("{stem}.{i:0digits$}.dfa");
        let p = dir.join(&name);
        let text = if compact { emit_dfa_compact(dfa) } else { emit_dfa(dfa) };
        write_file(&p, &text)?;
        names.push(name);
        written.push(p);
    }
    write_file(path, &emit_int(&names))?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_emit() {
        let text = "# members\nuse a.dfa\nuse \"with space.dfa\"\n";
        let paths = parse_int(text).unwrap();
        assert_eq!(paths, ["a.dfa", "with space.dfa"]);
        assert_eq!(parse_int(&emit_int(&paths)).unwrap(), paths);
        assert!(matches!(parse_int("use\n"), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_int("load x\n"), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_int("# nothing\n"), Err(FormatError::Validation(_))));
    }

    #[test]
    fn relative_paths_and_file_context() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::create_dir(dir.path().join("sub")).unwrap();
        write_file(
            &dir.path().join("sub/a.dfa"),
            "dfa a\nalphabet x\nstates 1\ninitial 0\nfinal 0\ntrans 0 x 0\n",
        )
        .unwrap();
        write_file(&dir.path().join("sub/i.int"), "use a.dfa\nuse a.dfa\n").unwrap();
        let inst = load_instance(&dir.path().join("sub/i.int"), true).unwrap();
        assert_eq!(inst.len(), 2);

        write_file(&dir.path().join("sub/bad.int"), "use missing.dfa\n").unwrap();
        let err = load_instance(&dir.path().join("sub/bad.int"), true).unwrap_err();
        assert!(err.to_string().contains("missing.dfa"), "{err}");
        assert!(matches!(err, FormatError::Io { .. }));

        let out = dir.path().join("copy.int");
        let files = save_instance(&out, &inst, false).unwrap();
        assert_eq!(files.len(), 2);
        assert_eq!(load_instance(&out, true).unwrap(), inst);
    }
}
