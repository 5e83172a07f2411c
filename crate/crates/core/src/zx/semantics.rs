use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{capacity, Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{cis, Scalar};
use crate::tn::{execute_plan, greedy_plan, Index, Tensor, TensorNetwork};
use crate::zx::diagram::{Color, EdgeKind, VertexId, ZxDiagram};

pub const MAX_BOUNDARIES: usize = 12;

/// Z-spider: 1 on all-zeros, `e^{iα}` on all-ones. X-spider: the Z-spider
/// with a Hadamard on every leg, `2^{-k/2}(1 + e^{iα}(-1)^{|b|})`.
fn spider_tensor<T: Scalar>(color: Color, alpha: T, legs: Vec<Index>) -> Tensor<T> {
    let k = legs.len();
    let size = 1usize << k;
    let phase = cis(alpha);
    let data = match color {
        Color::Z => {
            let mut data = vec![Complex::zero(); size];
            data[0] += Complex::one();
            data[size - 1] += phase;
            data
        }
        Color::X => {
            let norm = T::lit(0.5).powi(k as i32).sqrt();
            (0..size)
                .map(|b: usize| {
                    let sign = if b.count_ones().is_multiple_of(2) { phase } else { -phase };
                    (Complex::<T>::one() + sign) * norm
                })
                .collect()
        }
    };
    Tensor::new(legs, data).expect("spider tensor shape")
}

fn edge_tensor<T: Scalar>(kind: EdgeKind, a: usize, b: usize) -> Tensor<T> {
    match kind {
        EdgeKind::Plain => Tensor::identity(a, b, 2),
        EdgeKind::Hadamard => {
            let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
            Tensor::new(vec![Index::qubit(a), Index::qubit(b)], vec![h, h, h, -h]).expect("H shape")
        }
    }
}

/// Contracts the diagram into a tensor whose legs are the outputs followed by
/// the inputs, each list running from the last qubit to qubit 0. For a
/// diagram with equally many inputs and outputs the data is therefore the
/// row-major matrix in the crate's bit order. Scalars are not normalized.
pub fn zx_to_tensor<T: Scalar>(d: &ZxDiagram) -> Result<Tensor<T>> {
    d.check()?;
    capacity("ZX tensor semantics (boundaries)", d.inputs().len() + d.outputs().len(), MAX_BOUNDARIES)?;

    let mut next = 0usize;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut legs: BTreeMap<VertexId, Vec<Index>> = BTreeMap::new();
    let mut tensors = Vec::new();
    for (_, e) in d.edges() {
        let both_boundary = d.is_boundary(e.a) && d.is_boundary(e.b);
        if e.kind == EdgeKind::Plain && !e.is_loop() && !both_boundary {
            let l = fresh();
            legs.entry(e.a).or_default().push(Index::qubit(l));
            legs.entry(e.b).or_default().push(Index::qubit(l));
        } else {
            let (la, lb) = (fresh(), fresh());
            legs.entry(e.a).or_default().push(Index::qubit(la));
            legs.entry(e.b).or_default().push(Index::qubit(lb));
            tensors.push(edge_tensor(e.kind, la, lb));
        }
    }
    for s in d.spiders() {
        let l = legs.remove(&s.id).unwrap_or_default();
        tensors.push(spider_tensor(s.color, s.phase.radians::<T>(), l));
    }
    let open: Vec<Index> = d.outputs().iter().rev().chain(d.inputs().iter().rev()).map(|v| legs[v][0]).collect();
    if tensors.is_empty() {
        return Ok(Tensor::scalar(Complex::one()));
    }
    let net = TensorNetwork::new(tensors, open)?;
    execute_plan(&net, &greedy_plan(&net))
}

/// [`zx_to_tensor`] reshaped into a `2^n × 2^n` matrix (rows are outputs).
pub fn zx_to_matrix<T: Scalar>(d: &ZxDiagram) -> Result<SquareMatrix<T>> {
    if d.inputs().len() != d.outputs().len() {
        return Err(Error::InvalidDiagram(format!(
            "{} inputs and {} outputs do not form a square matrix",
            d.inputs().len(),
            d.outputs().len()
        )));
    }
    Ok(SquareMatrix::from_rows(zx_to_tensor::<T>(d)?.into_data()))
}

/// The `λ` with `b ≈ λ·a`, compared after scaling both to unit maximum
/// magnitude. Two all-zero arrays give `Some(0)`.
pub fn scalar_multiple<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>], tol: T) -> Option<Complex<T>> {
    assert_eq!(a.len(), b.len());
    let peak = |v: &[Complex<T>]| v.iter().map(|x| x.norm()).fold(T::zero(), T::max);
    let (pa, pb) = (peak(a), peak(b));
    if pa <= tol || pb <= tol {
        return (pa <= tol && pb <= tol).then(Complex::zero);
    }
    let pivot = (0..a.len()).max_by(|&i, &j| a[i].norm().partial_cmp(&a[j].norm()).expect("finite")).expect("nonempty");
    let ratio = b[pivot] / a[pivot];
    let fits = a.iter().zip(b).all(|(x, y)| ((*x * ratio - y) / pb).norm() <= tol);
    fits.then_some(ratio)
}
