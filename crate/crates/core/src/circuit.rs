//! Circuit model, depth metric, X-cancellation pass and text format.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::{GateKind, Matrix};
use crate::state::{apply_kernel, validate_wires};
use crate::C64;

/// Largest register `unitary_of` will expand.
pub const MAX_UNITARY_QUBITS: usize = 10;

/// One gate placed on concrete wires. For multi-controlled gates the
/// controls come first and the target last.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateInstance {
    pub kind: GateKind,
    pub wires: Vec<usize>,
}

impl GateInstance {
    pub fn params(&self) -> Option<f64> {
        self.kind.phase()
    }

    fn counts(&self) -> bool {
        !matches!(self.kind, GateKind::Barrier | GateKind::Measure)
    }
}

/// An ordered gate list over `n_qubits` wires.
///
/// Measurements are terminal: once a wire is measured no further unitary
/// gate may touch it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<GateInstance>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, kind: GateKind, wires: &[usize]) -> Result<&mut Self> {
        validate_wires(self.n_qubits, wires)?;
        if wires.is_empty() || !kind.accepts_arity(wires.len()) {
            return Err(Error::ArityMismatch {
                kind: kind.name(),
                arity: wires.len(),
            });
        }
        if let Some(phi) = kind.phase() {
            if !phi.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite phase {phi}")));
            }
        }
        if kind.is_unitary() {
            if let Some(&w) = wires.iter().find(|&&w| self.is_measured(w)) {
                return Err(Error::NonTerminalMeasure(w));
            }
        }
        self.gates.push(GateInstance {
            kind,
            wires: wires.to_vec(),
        });
        Ok(self)
    }

    fn is_measured(&self, wire: usize) -> bool {
        self.gates
            .iter()
            .any(|g| g.kind == GateKind::Measure && g.wires.contains(&wire))
    }

    /// Single-qubit `kind` on each listed wire.
    pub fn layer(
        &mut self,
        kind: GateKind,
        wires: impl IntoIterator<Item = usize>,
    ) -> Result<&mut Self> {
        for w in wires {
            self.push(kind, &[w])?;
        }
        Ok(self)
    }

    /// A barrier across every wire.
    pub fn barrier(&mut self) -> Result<&mut Self> {
        let all: Vec<usize> = (0..self.n_qubits).collect();
        self.push(GateKind::Barrier, &all)
    }

    /// A terminal measurement of every wire.
    pub fn measure_all(&mut self) -> Result<&mut Self> {
        let all: Vec<usize> = (0..self.n_qubits).collect();
        self.push(GateKind::Measure, &all)
    }

    /// Appends `other`'s gates with every wire shifted by `offset`.
    pub fn append_at(&mut self, other: &Circuit, offset: usize) -> Result<&mut Self> {
        if offset + other.n_qubits > self.n_qubits {
            return Err(Error::InvalidWireSet(format!(
                "{}-qubit block at offset {offset} exceeds {} qubits",
                other.n_qubits, self.n_qubits
            )));
        }
        for g in &other.gates {
            let wires: Vec<usize> = g.wires.iter().map(|w| w + offset).collect();
            self.push(g.kind, &wires)?;
        }
        Ok(self)
    }

    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        self.append_at(other, 0)
    }

    /// Stacks independent circuits on consecutive wire blocks.
    pub fn stack<'a>(blocks: impl IntoIterator<Item = &'a Circuit>) -> Circuit {
        let blocks: Vec<&Circuit> = blocks.into_iter().collect();
        let n = blocks.iter().map(|c| c.n_qubits).sum();
        let mut out = Circuit::new(n);
        let mut offset = 0;
        for b in blocks {
            out.gates.extend(b.gates.iter().map(|g| GateInstance {
                kind: g.kind,
                wires: g.wires.iter().map(|w| w + offset).collect(),
            }));
            offset += b.n_qubits;
        }
        out
    }

    /// Copy without Measure instances.
    pub fn without_measurements(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self
                .gates
                .iter()
                .filter(|g| g.kind != GateKind::Measure)
                .cloned()
                .collect(),
        }
    }

    /// Number of gates, ignoring Barrier and Measure. A multi-controlled
    /// gate counts once.
    pub fn gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.counts()).count()
    }

    /// Longest wire-ordered path of gates.
    ///
    /// Gates are layered as soon as possible: a gate sits one layer after
    /// the latest gate on any of its wires. Measure is ignored. A barrier
    /// occupies no layer but aligns its wires, so gates after it start no
    /// earlier than the latest gate before it on any barrier wire.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.n_qubits];
        for g in &self.gates {
            let latest = g.wires.iter().map(|&w| level[w]).max().unwrap_or(0);
            let next = match g.kind {
                GateKind::Measure => continue,
                GateKind::Barrier => latest,
                _ => latest + 1,
            };
            for &w in &g.wires {
                level[w] = next;
            }
        }
        level.into_iter().max().unwrap_or(0)
    }

    /// Cancels X pairs that meet on a wire with no gate between them on
    /// that wire, repeating to a fixpoint, and drops barriers. Remaining
    /// gates keep their order.
    pub fn optimize_x_cancellation(&self) -> Circuit {
        let mut kept: Vec<Option<GateInstance>> = Vec::with_capacity(self.gates.len());
        // per wire: indices into `kept` of live gates touching it
        let mut touching: Vec<Vec<usize>> = vec![Vec::new(); self.n_qubits];
        for g in &self.gates {
            match g.kind {
                GateKind::Barrier => continue,
                GateKind::X => {
                    let w = g.wires[0];
                    if let Some(&prev) = touching[w].last() {
                        if matches!(&kept[prev], Some(p) if p.kind == GateKind::X) {
                            kept[prev] = None;
                            touching[w].pop();
                            continue;
                        }
                    }
                }
                _ => {}
            }
            for &w in &g.wires {
                touching[w].push(kept.len());
            }
            kept.push(Some(g.clone()));
        }
        Circuit {
            n_qubits: self.n_qubits,
            gates: kept.into_iter().flatten().collect(),
        }
    }

    /// Product of the gate matrices in circuit order. Terminal measurements
    /// are ignored.
    pub fn unitary_of(&self) -> Result<Matrix> {
        if self.n_qubits > MAX_UNITARY_QUBITS {
            return Err(Error::DimensionLimit {
                n: self.n_qubits,
                limit: MAX_UNITARY_QUBITS,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut u = Matrix::zeros(dim);
        let mut column = vec![C64::new(0.0, 0.0); dim];
        for col in 0..dim {
            column.iter_mut().for_each(|a| *a = C64::new(0.0, 0.0));
            column[col] = C64::new(1.0, 0.0);
            for g in &self.gates {
                apply_kernel(&mut column, self.n_qubits, g.kind, &g.wires, false);
            }
            for (row, a) in column.iter().enumerate() {
                u.set(row, col, *a);
            }
        }
        Ok(u)
    }

    /// Canonical text form: a `qubits N` header, then one gate per line.
    pub fn serialize(&self) -> String {
        let mut out = format!("qubits {}\n", self.n_qubits);
        for g in &self.gates {
            out.push_str(g.kind.name());
            if let Some(phi) = g.params() {
                write!(out, " phi={phi:?}").unwrap();
            }
            for w in &g.wires {
                write!(out, " {w}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text form. `#` starts a comment; blank lines are skipped.
    pub fn deserialize(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens = tokenize(content);
            let Some(&(col, head)) = tokens.first() else {
                continue;
            };
            let err = |column: usize, message: String| Error::Parse {
                line: line_no,
                column,
                message,
            };
            let Some(c) = circuit.as_mut() else {
                if head != "qubits" {
                    return Err(err(
                        col,
                        format!("expected `qubits N` header, found `{head}`"),
                    ));
                }
                let &(ncol, ntok) = tokens
                    .get(1)
                    .ok_or_else(|| err(col + head.len(), "missing qubit count".into()))?;
                let n: usize = ntok
                    .parse()
                    .map_err(|_| err(ncol, format!("invalid qubit count `{ntok}`")))?;
                if n == 0 {
                    return Err(err(ncol, "qubit count must be at least 1".into()));
                }
                if let Some(&(xcol, _)) = tokens.get(2) {
                    return Err(err(xcol, "unexpected token after qubit count".into()));
                }
                circuit = Some(Circuit::new(n));
                continue;
            };
            let mut rest = &tokens[1..];
            let mut phi = None;
            if let Some(&(pcol, tok)) = rest.first() {
                if let Some(v) = tok.strip_prefix("phi=") {
                    phi = Some(
                        v.parse::<f64>()
                            .ok()
                            .filter(|p| p.is_finite())
                            .ok_or_else(|| err(pcol, format!("invalid phase `{v}`")))?,
                    );
                    rest = &rest[1..];
                }
            }
            let kind = parse_kind(head, phi).map_err(|m| err(col, m))?;
            let mut wires = Vec::with_capacity(rest.len());
            for &(wcol, tok) in rest {
                let w: usize = tok
                    .parse()
                    .map_err(|_| err(wcol, format!("invalid wire `{tok}`")))?;
                wires.push(w);
            }
            c.push(kind, &wires).map_err(|e| err(col, e.to_string()))?;
        }
        circuit.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing `qubits N` header".into(),
        })
    }
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    // 1-based character columns
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn parse_kind(name: &str, phi: Option<f64>) -> std::result::Result<GateKind, String> {
    let kind = match (name.to_ascii_uppercase().as_str(), phi) {
        ("I", None) => GateKind::I,
        ("X", None) => GateKind::X,
        ("Y", None) => GateKind::Y,
        ("Z", None) => GateKind::Z,
        ("H", None) => GateKind::H,
        ("T", None) => GateKind::T,
        ("TDG", None) => GateKind::Tdg,
        ("MCZ", None) => GateKind::MultiControlledZ,
        ("MCX", None) => GateKind::MultiControlledX,
        ("MEASURE", None) => GateKind::Measure,
        ("BARRIER", None) => GateKind::Barrier,
        ("PS", Some(p)) => GateKind::PhaseShift(p),
        ("MCPS", Some(p)) => GateKind::MultiControlledPhaseShift(p),
        ("PS" | "MCPS", None) => return Err(format!("gate `{name}` needs phi=<radians>")),
        (_, Some(_)) if parse_kind(name, None).is_ok() => {
            return Err(format!("gate `{name}` takes no phase"))
        }
        _ => return Err(format!("unknown gate `{name}`")),
    };
    Ok(kind)
}
