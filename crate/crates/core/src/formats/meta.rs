use std::fmt::Write;
use std::path::{Path, PathBuf};

use crate::reductions::{CompiledFamily, Construction};
use crate::tm::Input;

use super::{emit_ntm, load_instance, load_ntm, read_file, save_instance, write_file, FormatError};

/// Ordered `key=value` lines. Blank lines and lines starting with `#`
/// are skipped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata {
    entries: Vec<(String, String)>,
}

impl Metadata {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut meta = Self::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| FormatError::parse(i + 1, "expected key=value"))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(FormatError::parse(i + 1, "empty key"));
            }
            if meta.get(key).is_some() {
                return Err(FormatError::parse(i + 1, format!("duplicate key '{key}'")));
            }
            meta.entries.push((key.to_string(), value.trim().to_string()));
        }
        Ok(meta)
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Sets `key`, replacing an earlier value in place.
    pub fn set(&mut self, key: impl Into<String>, value: impl ToString) {
        let key = key.into();
        let value = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| *k == key) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((key, value)),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    fn require(&self, key: &str) -> Result<&str, FormatError> {
        self.get(key)
            .ok_or_else(|| FormatError::Validation(format!("metadata lacks '{key}'")))
    }

    /// Provenance of a compiled family; `machine_file` is relative to the
    /// sidecar.
    pub fn for_family(family: &CompiledFamily, machine_file: &str) -> Self {
        let p = &family.provenance;
        let mut m = Self::default();
        m.set("machine", &p.machine);
        m.set("machine_file", machine_file);
        m.set("input", &p.input);
        m.set("construction", p.construction);
        m.set(param_key(p.construction), p.param);
        m.set("space", p.space);
        for (field, width) in family.encoding.fields() {
            m.set(format!("width.{}", field.key()), width);
        }
        m.set("dfas", family.instance.len());
        m
    }

    /// The sidecar that belongs to an instance file: same stem, `.meta`.
    pub fn sidecar_path(int_path: &Path) -> PathBuf {
        int_path.with_extension("meta")
    }
}

fn param_key(c: Construction) -> &'static str {
    match c {
        Construction::Kozen => "k",
        Construction::Linear => "S",
    }
}

/// Writes a family as `<stem>.int`, its automata, `<stem>.ntm` and the
/// `<stem>.meta` sidecar.
pub fn save_family(int_path: &Path, family: &CompiledFamily, compact: bool) -> Result<(), FormatError> {
    save_instance(int_path, &family.instance, compact)?;
    let ntm = int_path.with_extension("ntm");
    write_file(&ntm, &emit_ntm(&family.machine))?;
    let machine_file = ntm
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let meta = Metadata::for_family(family, &machine_file);
    write_file(&Metadata::sidecar_path(int_path), &meta.emit())
}

/// Reads a family written by [`save_family`], re-deriving the trace
/// layout and checking it against the recorded widths.
pub fn load_family(int_path: &Path, strict: bool) -> Result<CompiledFamily, FormatError> {
    let meta_path = Metadata::sidecar_path(int_path);
    let in_meta = |e: FormatError| e.in_file(&meta_path);
    let meta = Metadata::parse(&read_file(&meta_path)?).map_err(in_meta)?;
    let construction: Construction = meta
        .require("construction")
        .and_then(|c| c.parse().map_err(FormatError::Validation))
        .map_err(in_meta)?;
    let key = param_key(construction);
    let param: u32 = meta
        .require(key)
        .and_then(|v| {
            v.parse()
                .map_err(|_| FormatError::Validation(format!("bad {key} '{v}'")))
        })
        .map_err(in_meta)?;
    let input: Input = meta
        .require("input")
        .and_then(|v| {
            v.parse()
                .map_err(|e| FormatError::Validation(format!("bad input: {e}")))
        })
        .map_err(in_meta)?;
    let machine_file = meta.require("machine_file").map_err(in_meta)?;
    let machine = load_ntm(&meta_path.parent().unwrap_or(Path::new("")).join(machine_file))?;
    let instance = load_instance(int_path, strict)?;
    let family = CompiledFamily::from_parts(instance, machine, input, construction, param)
        .map_err(|e| in_meta(FormatError::Validation(e.to_string())))?;
    for (field, width) in family.encoding.fields() {
        let key = format!("width.{}", field.key());
        if let Some(v) = meta.get(&key) {
            if v != width.to_string() {
                return Err(in_meta(FormatError::Validation(format!(
                    "{key} is {v} but the construction uses {width}"
                ))));
            }
        }
    }
    Ok(family)
}
