//! Complex documents: the JSON file format, the terse text format, and
//! builtin-name resolution.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use permhom::simplicial::{SimplicialComplex, Subcomplex};
use permhom::stratify::Filtration;
use permhom::corpus;

/// A complex on disk: a name, its maximal simplexes, and optionally a
/// filtration given level by level as lists of maximal simplexes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub name: String,
    pub maximal_simplexes: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<BTreeMap<String, serde_json::Value>>,
}

impl ComplexDocument {
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn from_complex(name: &str, k: &SimplicialComplex) -> Self {
        ComplexDocument {
            name: name.to_string(),
            maximal_simplexes: k.maximal_simplexes(),
            filtration: None,
            metadata: None,
        }
    }

    pub fn build(&self) -> Result<SimplicialComplex, String> {
        SimplicialComplex::from_maximal(self.maximal_simplexes.iter())
            .map_err(|e| format!("{}: {e}", self.name))
    }

    /// Resolves the optional filtration against the built complex. Levels
    /// are listed from X_0 upward; each level is the face closure of its
    /// maximal simplexes, resolved inside the complex.
    pub fn build_filtration(&self, k: &SimplicialComplex) -> Result<Option<Filtration>, String> {
        let Some(levels) = &self.filtration else {
            return Ok(None);
        };
        let mut masks = Vec::with_capacity(levels.len());
        for (j, level) in levels.iter().enumerate() {
            let mut mask = Subcomplex::empty(k);
            for tuple in level {
                let closure = SimplicialComplex::from_maximal([tuple.clone()])
                    .map_err(|e| format!("filtration level {j}: {e}"))?;
                for d in 0..=closure.dim().max(0) as usize {
                    for t in closure.simplexes(d) {
                        let id = k
                            .id_of(t)
                            .ok_or_else(|| format!("filtration level {j}: {t:?} is not in the complex"))?;
                        mask.insert(id);
                    }
                }
            }
            masks.push(mask);
        }
        Filtration::new(k, masks).map(Some).map_err(|e| format!("{e}"))
    }
}

/// An input source: a builtin name or a file in JSON or terse text form.
pub struct LoadedComplex {
    pub name: String,
    pub complex: SimplicialComplex,
    pub filtration: Option<Filtration>,
}

pub fn load_input(input: &str) -> Result<LoadedComplex, String> {
    if let Some(k) = corpus::builtin(input) {
        return Ok(LoadedComplex { name: input.to_string(), complex: k, filtration: None });
    }
    let path = Path::new(input);
    if !path.exists() {
        return Err(format!(
            "{input}: not a builtin name ({}) and no such file",
            corpus::BUILTIN_NAMES.join(", ")
        ));
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{input}: {e}"))?;
    let doc = if looks_like_json(&text) {
        serde_json::from_str::<ComplexDocument>(&text)
            .map_err(|e| format!("{input}: parse error at line {}, column {}: {e}", e.line(), e.column()))?
    } else {
        parse_terse(input, &text)?
    };
    let complex = doc.build()?;
    let filtration = doc.build_filtration(&complex)?;
    Ok(LoadedComplex { name: doc.name, complex, filtration })
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}


/// One maximal simplex per line, vertices separated by commas or spaces.
/// Lines starting with '#' are comments.
fn parse_terse(input: &str, text: &str) -> Result<ComplexDocument, String> {
    let mut maximal = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tuple: Result<Vec<i64>, _> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<i64>())
            .collect();
        match tuple {
            Ok(t) if !t.is_empty() => maximal.push(t),
            Ok(_) => {}
            Err(e) => return Err(format!("{input}: line {}: {e}", lineno + 1)),
        }
    }
    if maximal.is_empty() {
        return Err(format!("{input}: no simplexes found"));
    }
    let name = Path::new(input)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| input.to_string());
    Ok(ComplexDocument { name, maximal_simplexes: maximal, filtration: None, metadata: None })
}
