use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::ir::Angle;
use crate::matrix::SquareMatrix;
use crate::scalar::{cis, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Rz,
    Cx,
    Cz,
    Swap,
}

impl GateKind {
    pub const ALL: [GateKind; 13] = [
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Rx,
        GateKind::Rz,
        GateKind::Cx,
        GateKind::Cz,
        GateKind::Swap,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cx | GateKind::Cz | GateKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn is_parametric(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Rz)
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Rx => "rx",
            GateKind::Rz => "rz",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::Swap => "swap",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|k| k.mnemonic() == s)
    }
}

/// One gate application. `qubits[0]` is the control for `cx`/`cz` and is the
/// more significant bit of the gate's local index space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    angle: Option<Angle>,
    qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, angle: Option<Angle>, qubits: Vec<usize>) -> Result<Self, Error> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidGate(format!(
                "{} takes {} qubit(s), got {}",
                kind.mnemonic(),
                kind.arity(),
                qubits.len()
            )));
        }
        if kind.is_parametric() != angle.is_some() {
            return Err(Error::InvalidGate(format!(
                "{} {} an angle",
                kind.mnemonic(),
                if kind.is_parametric() { "requires" } else { "does not take" }
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::InvalidGate(format!("{} on repeated qubit {}", kind.mnemonic(), qubits[0])));
        }
        Ok(Self { kind, angle, qubits })
    }

    fn fixed(kind: GateKind, qubits: Vec<usize>) -> Self {
        Self::new(kind, None, qubits).expect("fixed gate is well-formed")
    }

    pub fn x(q: usize) -> Self {
        Self::fixed(GateKind::X, vec![q])
    }
    pub fn y(q: usize) -> Self {
        Self::fixed(GateKind::Y, vec![q])
    }
    pub fn z(q: usize) -> Self {
        Self::fixed(GateKind::Z, vec![q])
    }
    pub fn h(q: usize) -> Self {
        Self::fixed(GateKind::H, vec![q])
    }
    pub fn s(q: usize) -> Self {
        Self::fixed(GateKind::S, vec![q])
    }
    pub fn sdg(q: usize) -> Self {
        Self::fixed(GateKind::Sdg, vec![q])
    }
    pub fn t(q: usize) -> Self {
        Self::fixed(GateKind::T, vec![q])
    }
    pub fn tdg(q: usize) -> Self {
        Self::fixed(GateKind::Tdg, vec![q])
    }
    pub fn rx(theta: Angle, q: usize) -> Self {
        Self::new(GateKind::Rx, Some(theta), vec![q]).expect("rx is well-formed")
    }
    pub fn rz(theta: Angle, q: usize) -> Self {
        Self::new(GateKind::Rz, Some(theta), vec![q]).expect("rz is well-formed")
    }
    /// Panics if `control == target`.
    pub fn cx(control: usize, target: usize) -> Self {
        Self::fixed(GateKind::Cx, vec![control, target])
    }
    /// Panics if `a == b`.
    pub fn cz(a: usize, b: usize) -> Self {
        Self::fixed(GateKind::Cz, vec![a, b])
    }
    /// Panics if `a == b`.
    pub fn swap(a: usize, b: usize) -> Self {
        Self::fixed(GateKind::Swap, vec![a, b])
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn angle(&self) -> Option<Angle> {
        self.angle
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn arity(&self) -> usize {
        self.qubits.len()
    }

    pub fn inverse(&self) -> Gate {
        let kind = match self.kind {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            k => k,
        };
        Gate { kind, angle: self.angle.map(|a| -a), qubits: self.qubits.clone() }
    }

    /// The gate's `2^k × 2^k` unitary over its own qubits.
    ///
    /// Rotations use the 2π-periodic forms `RZ(θ) = diag(1, e^{iθ})` and
    /// `RX(θ) = H·RZ(θ)·H`, so an angle reduced modulo 2π denotes one matrix.
    pub fn matrix<T: Scalar>(&self) -> SquareMatrix<T> {
        let o = Complex::<T>::one();
        let z = Complex::<T>::zero();
        let i = Complex::<T>::i();
        let r = T::FRAC_1_SQRT_2();
        let rows = match self.kind {
            GateKind::X => vec![z, o, o, z],
            GateKind::Y => vec![z, -i, i, z],
            GateKind::Z => vec![o, z, z, -o],
            GateKind::H => {
                let h = Complex::new(r, T::zero());
                vec![h, h, h, -h]
            }
            GateKind::S => vec![o, z, z, i],
            GateKind::Sdg => vec![o, z, z, -i],
            GateKind::T => vec![o, z, z, cis(T::FRAC_PI_4())],
            GateKind::Tdg => vec![o, z, z, cis(-T::FRAC_PI_4())],
            GateKind::Rz => vec![o, z, z, cis(self.angle_radians())],
            GateKind::Rx => {
                let e = cis::<T>(self.angle_radians());
                let half = T::lit(0.5);
                let p = (o + e) * half;
                let m = (o - e) * half;
                vec![p, m, m, p]
            }
            GateKind::Cx => vec![o, z, z, z, z, o, z, z, z, z, z, o, z, z, o, z],
            GateKind::Cz => vec![o, z, z, z, z, o, z, z, z, z, o, z, z, z, z, -o],
            GateKind::Swap => vec![o, z, z, z, z, z, o, z, z, o, z, z, z, z, z, o],
        };
        SquareMatrix::from_rows(rows)
    }

    fn angle_radians<T: Scalar>(&self) -> T {
        self.angle.unwrap_or_default().radians()
    }
}

/// QCF gate line, e.g. `rz 1/2 0` or `cx 1 0`.
impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.mnemonic())?;
        if let Some(a) = self.angle {
            write!(f, " {a}")?;
        }
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}
