//! Plain-text reports. The same inputs always give the same bytes: no
//! timestamps, paths as given, and every list in a fixed order.

use std::fmt;

use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails,
}

impl Outcome {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Holds => 0,
            Outcome::Fails => 1,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
        })
    }
}

/// Lowercase hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub verb: String,
    /// Input label and digest of its bytes.
    pub inputs: Vec<(String, String)>,
    pub outcome: Outcome,
    pub body: Vec<String>,
}

impl Report {
    pub fn new(verb: &str) -> Self {
        Report { verb: verb.to_string(), inputs: Vec::new(), outcome: Outcome::Holds, body: Vec::new() }
    }

    pub fn input(&mut self, label: &str, bytes: &[u8]) {
        self.inputs.push((label.to_string(), sha256_hex(bytes)));
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.body.push(text.into());
    }

    /// Appends a multi-line block, one body line per text line.
    pub fn block(&mut self, text: &str) {
        self.body.extend(text.lines().map(str::to_string));
    }

    pub fn fail(&mut self) {
        self.outcome = Outcome::Fails;
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bisem {} {}", env!("CARGO_PKG_VERSION"), self.verb)?;
        for (label, digest) in &self.inputs {
            writeln!(f, "input: {label} sha256:{digest}")?;
        }
        writeln!(f, "verdict: {}", self.outcome)?;
        for line in &self.body {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn layout() {
        let mut r = Report::new("check");
        r.input("x.balg", b"abc");
        r.line("distributive: holds");
        r.fail();
        let text = r.to_string();
        assert!(text.starts_with("bisem "));
        assert!(
            text.contains("input: x.balg sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad\n")
        );
        assert!(text.ends_with("verdict: fails\ndistributive: holds\n"));
        assert_eq!(r.outcome.exit_code(), 1);
    }
}
