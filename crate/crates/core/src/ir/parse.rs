//! Reader for the line-based QCF circuit format.
//!
//! ```text
//! # Bell pair
//! qubits 2
//! h 1
//! cx 1 0
//! rz -1/4 0
//! ```

use crate::error::ParseError;
use crate::ir::{Angle, Circuit, Gate, GateKind};

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((header_line, header)) = lines.next() else {
        return Err(ParseError::new(text.lines().count().max(1), "missing `qubits <n>` header"));
    };
    let mut circuit = parse_header(header_line, header)?;

    for (line, content) in lines {
        let gate = parse_gate(line, content, circuit.num_qubits())?;
        circuit.push(gate).map_err(|e| ParseError::new(line, e.to_string()))?;
    }
    Ok(circuit)
}

fn parse_header(line: usize, content: &str) -> Result<Circuit, ParseError> {
    let mut tokens = content.split_whitespace();
    if tokens.next() != Some("qubits") {
        return Err(ParseError::new(line, "missing `qubits <n>` header"));
    }
    let n = tokens
        .next()
        .and_then(|t| t.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| ParseError::new(line, "`qubits` needs a positive integer"))?;
    if tokens.next().is_some() {
        return Err(ParseError::new(line, "trailing tokens after `qubits <n>`"));
    }
    Ok(Circuit::new(n).expect("n >= 1"))
}

fn parse_gate(line: usize, content: &str, width: usize) -> Result<Gate, ParseError> {
    let tokens: Vec<&str> = content.split_whitespace().collect();
    let mnemonic = tokens[0];
    let kind =
        GateKind::from_mnemonic(mnemonic).ok_or_else(|| ParseError::new(line, format!("unknown gate `{mnemonic}`")))?;

    let mut rest = &tokens[1..];
    let angle = if kind.is_parametric() {
        let Some((tok, tail)) = rest.split_first() else {
            return Err(ParseError::new(line, format!("`{mnemonic}` needs an angle")));
        };
        rest = tail;
        Some(tok.parse::<Angle>().map_err(|_| ParseError::new(line, format!("malformed angle `{tok}`")))?)
    } else {
        None
    };

    if rest.len() != kind.arity() {
        return Err(ParseError::new(
            line,
            format!("`{mnemonic}` takes {} qubit index(es), got {}", kind.arity(), rest.len()),
        ));
    }
    let qubits = rest
        .iter()
        .map(|tok| {
            let q: usize = tok.parse().map_err(|_| ParseError::new(line, format!("bad qubit index `{tok}`")))?;
            if q >= width {
                return Err(ParseError::new(line, format!("qubit index {q} out of range for {width} qubits")));
            }
            Ok(q)
        })
        .collect::<Result<Vec<_>, _>>()?;

    Gate::new(kind, angle, qubits).map_err(|e| ParseError::new(line, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bell() {
        let c = parse_circuit("qubits 2\nh 0\ncx 0 1").unwrap();
        assert_eq!(c.num_qubits(), 2);
        assert_eq!(c.gates(), &[Gate::h(0), Gate::cx(0, 1)]);
    }

    #[test]
    fn parses_angles() {
        let c = parse_circuit("qubits 1\nrz 1/2 0").unwrap();
        assert_eq!(c.gates(), &[Gate::rz(Angle::HALF_PI, 0)]);
        let c = parse_circuit("qubits 1\nrx -3 0").unwrap();
        assert_eq!(c.gates(), &[Gate::rx(Angle::PI, 0)]);
    }

    #[test]
    fn skips_comments_and_blanks() {
        let c = parse_circuit("# header\n\n  qubits 3 \n# mid\nx 2\n\n").unwrap();
        assert_eq!(c.num_qubits(), 3);
        assert_eq!(c.gates(), &[Gate::x(2)]);
    }

    #[test]
    fn error_lines() {
        let line = |t: &str| parse_circuit(t).unwrap_err().line;
        assert_eq!(line("qubits 1\nfoo 0"), 2);
        assert_eq!(line("qubits 2\nh 0\ncx 0 2"), 3);
        assert_eq!(line("qubits 1\nrz x/2 0"), 2);
        assert_eq!(line("qubits 1\nrz 0"), 2);
        assert_eq!(line("h 0"), 1);
        assert_eq!(line("# only a comment\n"), 1);
        assert_eq!(line("qubits 0"), 1);
        assert_eq!(line("qubits 2\ncx 1 1"), 2);
        assert_eq!(line("qubits 2\nh -1"), 2);
    }
}
