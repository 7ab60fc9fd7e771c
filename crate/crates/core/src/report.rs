use serde::Serialize;

/// Outcome of one verification; a failing check always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Check {
    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), status: Status::Pass, detail: detail.into(), witness: None }
    }

    pub fn fail(name: &str, witness: impl Into<String>) -> Self {
        Check { name: name.to_string(), status: Status::Fail, detail: String::new(), witness: Some(witness.into()) }
    }

    pub fn from_bool(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        if ok {
            Self::pass(name, detail)
        } else {
            Self::fail(name, detail)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn prefixed(mut self, prefix: &str) -> Self {
        self.name = format!("{prefix}: {}", self.name);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckList {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckList {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        let s = s.into();
        if !self.notes.contains(&s) {
            self.notes.push(s);
        }
    }

    pub fn extend(&mut self, other: CheckList, prefix: &str) {
        self.checks.extend(other.checks.into_iter().map(|c| c.prefixed(prefix)));
        for n in other.notes {
            self.note(n);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Versioned outcome of one CLI command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub parameters: serde_json::Map<String, serde_json::Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &str, parameters: serde_json::Map<String, serde_json::Value>, list: CheckList, timing_ms: u128) -> Self {
        Report { schema: 1, command: command.to_string(), parameters, checks: list.checks, notes: list.notes, timing_ms }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Stable JSON: object keys sorted, values as canonical strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        s.push_str(&format!("{} ({})\n", self.command, params.join(", ")));
        for c in &self.checks {
            let (tag, body) = match &c.witness {
                None => ("PASS", &c.detail),
                Some(w) => ("FAIL", w),
            };
            s.push_str(&format!("  {tag}  {}  [{body}]\n", c.name));
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        s.push_str(&format!("{} checks, {} failed, {} ms\n", self.checks.len(), failed, self.timing_ms));
        s
    }
}
