use serde::Serialize;

/// One violated clause, with the vertices or edges that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

/// Outcome of a structural check. Valid iff `violations` is empty.
/// Notes are informational and never affect validity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport {
            valid: true,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn violate(&mut self, clause: &str, detail: impl Into<String>) {
        self.valid = false;
        self.violations.push(Violation {
            clause: clause.to_string(),
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_clause(&self, clause: &str) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    /// Violated clause names joined by commas, each listed once.
    pub fn clause_list(&self) -> String {
        let mut names: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !names.contains(&v.clause.as_str()) {
                names.push(&v.clause);
            }
        }
        names.join(", ")
    }
}
