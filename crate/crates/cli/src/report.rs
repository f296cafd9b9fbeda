use std::fmt::Write as _;
use std::process::ExitCode;

use opacity_core::rational::{format_decimal, format_rational};
use opacity_core::{Error, Rational};

/// Outcome classes, mapped onto the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
    InputError,
    BudgetExceeded,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::InputError => 2,
            Status::BudgetExceeded => 3,
        }
    }
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s.code())
    }
}

/// How rationals are rendered.
#[derive(Debug, Clone, Copy, Default)]
pub struct NumberFormat {
    pub digits: Option<usize>,
}

impl NumberFormat {
    pub fn show(&self, r: &Rational) -> String {
        match self.digits {
            None => format_rational(r),
            Some(d) => format!("{} ~ {}", format_rational(r), format_decimal(r, d)),
        }
    }
}

/// Human-readable lines followed by a `key=value` block.
#[derive(Debug)]
pub struct Report {
    pub status: Status,
    lines: Vec<String>,
    fields: Vec<(String, String)>,
    format: NumberFormat,
}

impl Report {
    pub fn new(format: NumberFormat) -> Self {
        Report {
            status: Status::Ok,
            lines: Vec::new(),
            fields: Vec::new(),
            format,
        }
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_owned(), value.to_string()));
        self
    }

    /// Records a rational both as a field and, if requested, its decimal
    /// expansion under `<key>_decimal`.
    pub fn number(&mut self, key: &str, r: &Rational) -> &mut Self {
        self.field(key, format_rational(r));
        if let Some(d) = self.format.digits {
            self.field(&format!("{key}_decimal"), format_decimal(r, d));
        }
        self
    }

    pub fn show(&self, r: &Rational) -> String {
        self.format.show(r)
    }

    pub fn negative(&mut self, reason: impl Into<String>) -> &mut Self {
        let reason = reason.into();
        self.status = Status::Negative;
        self.line(format!("negative: {reason}"));
        self.field("reason", reason)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        let _ = writeln!(out, "---");
        let status = match self.status {
            Status::Ok => "ok",
            Status::Negative => "negative",
            Status::InputError => "input-error",
            Status::BudgetExceeded => "budget-exceeded",
        };
        let _ = writeln!(out, "status={status}");
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}

/// A failure that ends the command, with its exit class.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
    pub fields: Vec<(String, String)>,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            status: Status::InputError,
            message: message.into(),
            fields: Vec::new(),
        }
    }

    /// Classifies a library error; `context` names the offending input.
    pub fn from_error(context: &str, e: Error) -> Self {
        let message = if context.is_empty() {
            e.to_string()
        } else {
            format!("{context}: {e}")
        };
        match e {
            Error::StateBudgetExceeded { budget } => Failure {
                status: Status::BudgetExceeded,
                message,
                fields: vec![("budget".into(), budget.to_string())],
            },
            Error::ModalEdgesPresent { edges } => Failure {
                status: Status::Negative,
                message,
                fields: vec![(
                    "modal_edges".into(),
                    edges
                        .iter()
                        .map(|(a, b)| format!("{a}->{b}"))
                        .collect::<Vec<_>>()
                        .join(","),
                )],
            },
            _ => Failure::input(message),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.message);
        let _ = writeln!(out, "---");
        let status = match self.status {
            Status::Negative => "negative",
            Status::BudgetExceeded => "budget-exceeded",
            _ => "input-error",
        };
        let _ = writeln!(out, "status={status}");
        let _ = writeln!(out, "reason={}", self.message);
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}

pub type Outcome = std::result::Result<Report, Failure>;
