//! Exit codes and the one-line error record written to stderr.
//!
//! | code | kind |
//! |------|------|
//! | 1 | internal |
//! | 2 | usage |
//! | 3 | io |
//! | 4 | input (malformed CSV/JSON, dimension mismatch) |
//! | 5 | invalid_argument |
//! | 6 | guard |
//! | 7 | degenerate_design |
//! | 8 | resource_limit (node or iteration limit, incomplete frontier) |
//! | 9 | solver (infeasible subproblem, numerical failure) |

use pareto_subset::lp::LpError;
use pareto_subset::milp::MilpError;
use pareto_subset::Error;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, kind: "usage", message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 5, kind: "invalid_argument", message: message.into() }
    }

    /// Prefixes the message with the file it concerns.
    pub fn at(mut self, path: &std::path::Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }

    pub fn line(&self) -> String {
        serde_json::json!({ "error": self.kind, "code": self.code, "message": self.message }).to_string()
    }
}

fn from_lp(e: &LpError) -> (u8, &'static str) {
    match e {
        LpError::IterationLimit(_) => (8, "resource_limit"),
        LpError::InvalidInput(_) => (4, "input"),
        LpError::Numerical(_) => (9, "solver"),
    }
}

fn from_milp(e: &MilpError) -> (u8, &'static str) {
    match e {
        MilpError::NodeLimit { .. } => (8, "resource_limit"),
        MilpError::Lp(lp) => from_lp(lp),
        MilpError::InvalidInput(_) => (4, "input"),
        MilpError::Unbounded => (9, "solver"),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Io(_) => (3, "io"),
            Error::Parse { .. } | Error::Json(_) | Error::Csv(_) | Error::Dimension(_) => (4, "input"),
            Error::InvalidArgument(_) => (5, "invalid_argument"),
            Error::Guard(_) => (6, "guard"),
            Error::DegenerateDesign { .. } => (7, "degenerate_design"),
            Error::IncompleteFrontier { .. } => (8, "resource_limit"),
            Error::Milp(m) => from_milp(m),
            Error::Lp(l) => from_lp(l),
            Error::Infeasible(_) => (9, "solver"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::from(Error::Io(e))
    }
}

impl From<MilpError> for Failure {
    fn from(e: MilpError) -> Self {
        Failure::from(Error::Milp(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_distinct_per_kind() {
        let cases = [
            Failure::from(Error::Io(std::io::Error::other("x"))),
            Failure::from(Error::Dimension("x".into())),
            Failure::from(Error::InvalidArgument("x".into())),
            Failure::from(Error::Guard("x".into())),
            Failure::from(Error::DegenerateDesign { predictor: 2, direction: "upper" }),
            Failure::from(MilpError::NodeLimit { limit: 1, incumbent: None }),
            Failure::from(Error::Infeasible("x".into())),
            Failure::usage("x"),
        ];
        let codes: Vec<u8> = cases.iter().map(|f| f.code).collect();
        assert_eq!(codes, vec![3, 4, 5, 6, 7, 8, 9, 2]);
    }

    #[test]
    fn error_line_is_single_json_record() {
        let f = Failure::invalid("bad \"k\"\nsecond line");
        let line = f.line();
        assert!(!line.contains('\n'));
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["code"], 5);
        assert_eq!(v["error"], "invalid_argument");
    }
}
