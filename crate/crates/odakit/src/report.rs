use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "????",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    /// Whether the verdict counts towards the exit code.
    pub asserted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

/// Outcome of one command. The JSON form is a pure function of the inputs;
/// timing only appears in the human-readable form.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub verdicts: Vec<Verdict>,
    pub data: Value,
    #[serde(skip)]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), data: Value::Null, ..Default::default() }
    }

    pub fn assert(&mut self, name: impl Into<String>, ok: bool, witness: Option<Value>) -> &mut Self {
        self.push(name, Status::from_bool(ok), true, witness)
    }

    /// Recorded but never affects the exit code.
    pub fn inform(&mut self, name: impl Into<String>, status: Status, witness: Option<Value>) -> &mut Self {
        self.push(name, status, false, witness)
    }

    fn push(&mut self, name: impl Into<String>, status: Status, asserted: bool, witness: Option<Value>) -> &mut Self {
        let witness = if status == Status::Pass { None } else { witness };
        self.verdicts.push(Verdict { name: name.into(), status, asserted, witness });
        self
    }

    pub fn note(&mut self, line: impl Into<String>) -> &mut Self {
        self.notes.push(line.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().filter(|v| v.asserted).all(|v| v.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for line in &self.notes {
            let _ = writeln!(out, "  {line}");
        }
        for v in &self.verdicts {
            let mark = if v.asserted { "" } else { " (info)" };
            let _ = write!(out, "{} {}{mark}", v.status.tag(), v.name);
            if let Some(w) = &v.witness {
                let _ = write!(out, "  witness: {w}");
            }
            out.push('\n');
        }
        let asserted = self.verdicts.iter().filter(|v| v.asserted).count();
        let failed = self.verdicts.iter().filter(|v| v.asserted && v.status != Status::Pass).count();
        let _ = write!(out, "{asserted} asserted checks, {failed} failed");
        if let Some(t) = self.elapsed {
            let _ = write!(out, " ({:.3}s)", t.as_secs_f64());
        }
        out.push('\n');
        out
    }
}
