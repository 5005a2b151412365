//! Plain-text report: one `[query N]` block per query, `key = value` lines,
//! list items as `key[i]`.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The input failed a mathematical validation; the report carries a witness.
    Failed,
    /// An internal invariant broke.
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct QueryReport {
    pub command: String,
    pub args: Vec<(String, String)>,
    pub status: Status,
    pub values: Vec<(String, String)>,
}

impl QueryReport {
    pub fn new(command: &str, args: &[(String, String)]) -> Self {
        QueryReport {
            command: command.to_string(),
            args: args.to_vec(),
            status: Status::Ok,
            values: Vec::new(),
        }
    }

    pub fn put(&mut self, key: &str, value: impl ToString) {
        self.values.push((key.to_string(), value.to_string()));
    }

    pub fn put_list<T: ToString>(&mut self, key: &str, items: impl IntoIterator<Item = T>) {
        for (i, v) in items.into_iter().enumerate() {
            self.put(&format!("{key}[{i}]"), v);
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub variables: Vec<String>,
    pub queries: Vec<QueryReport>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.queries.iter().any(|q| q.status == Status::Error) {
            1
        } else if self.queries.iter().any(|q| q.status == Status::Failed) {
            2
        } else {
            0
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("# leafalg report\n");
        if self.variables.is_empty() {
            out.push_str("variables =\n");
        } else {
            let _ = writeln!(out, "variables = {}", self.variables.join(", "));
        }
        let _ = writeln!(out, "queries = {}", self.queries.len());
        for (i, q) in self.queries.iter().enumerate() {
            let _ = writeln!(out, "\n[query {}]", i + 1);
            let _ = writeln!(out, "command = {}", q.command);
            for (k, v) in &q.args {
                let _ = writeln!(out, "arg.{k} = {v}");
            }
            let _ = writeln!(out, "status = {}", q.status.as_str());
            for (k, v) in &q.values {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        out
    }
}

/// `a, b, c` for any list of displayable values.
pub fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
