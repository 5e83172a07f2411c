use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A labelled tensor leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index {
    pub label: usize,
    pub dim: usize,
}

impl Index {
    pub fn new(label: usize, dim: usize) -> Self {
        assert!(dim > 0, "index dimension must be positive");
        Self { label, dim }
    }

    /// A qubit leg.
    pub fn qubit(label: usize) -> Self {
        Self::new(label, 2)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i{}:{}", self.label, self.dim)
    }
}

/// Dense complex array stored row-major in the order of `indices`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    indices: Vec<Index>,
    data: Vec<Complex<T>>,
}

pub(crate) fn size_of(indices: &[Index]) -> usize {
    indices.iter().map(|i| i.dim).product()
}

fn strides(indices: &[Index]) -> Vec<usize> {
    let mut s = vec![1; indices.len()];
    for k in (0..indices.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * indices[k + 1].dim;
    }
    s
}

impl<T: Scalar> Tensor<T> {
    pub fn new(indices: Vec<Index>, data: Vec<Complex<T>>) -> Result<Self> {
        for (k, i) in indices.iter().enumerate() {
            if let Some(j) = indices[..k].iter().find(|j| j.label == i.label) {
                return Err(Error::DimensionMismatch { label: i.label, left: j.dim, right: i.dim });
            }
        }
        let want = size_of(&indices);
        if data.len() != want {
            return Err(Error::Plan(format!("tensor needs {want} entries, got {}", data.len())));
        }
        Ok(Self { indices, data })
    }

    pub fn scalar(value: Complex<T>) -> Self {
        Self { indices: Vec::new(), data: vec![value] }
    }

    /// `δ_{ij}` over two legs of dimension `dim`.
    pub fn identity(a: usize, b: usize, dim: usize) -> Self {
        let mut data = vec![Complex::zero(); dim * dim];
        for k in 0..dim {
            data[k * dim + k] = Complex::one();
        }
        Self { indices: vec![Index::new(a, dim), Index::new(b, dim)], data }
    }

    pub fn indices(&self) -> &[Index] {
        &self.indices
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn rank(&self) -> usize {
        self.indices.len()
    }

    pub fn size(&self) -> usize {
        self.data.len()
    }

    /// Entry at one coordinate per index.
    pub fn get(&self, coords: &[usize]) -> Complex<T> {
        assert_eq!(coords.len(), self.rank());
        let off = coords.iter().zip(strides(&self.indices)).map(|(c, s)| c * s).sum::<usize>();
        self.data[off]
    }

    /// Value of a rank-0 tensor.
    pub fn as_scalar(&self) -> Option<Complex<T>> {
        self.indices.is_empty().then(|| self.data[0])
    }

    pub fn relabel(mut self, from: usize, to: usize) -> Self {
        for i in &mut self.indices {
            if i.label == from {
                i.label = to;
            }
        }
        self
    }

    /// Reorders the legs to follow `labels`, which must name each leg once.
    pub fn permuted(&self, labels: &[usize]) -> Result<Self> {
        let positions: Vec<usize> = labels
            .iter()
            .map(|l| {
                self.indices
                    .iter()
                    .position(|i| i.label == *l)
                    .ok_or_else(|| Error::Plan(format!("tensor has no index {l}")))
            })
            .collect::<Result<_>>()?;
        if positions.len() != self.rank() {
            return Err(Error::Plan("permutation must name every index".into()));
        }
        let indices: Vec<Index> = positions.iter().map(|&p| self.indices[p]).collect();
        let old_strides = strides(&self.indices);
        let src_strides: Vec<usize> = positions.iter().map(|&p| old_strides[p]).collect();
        let mut data = Vec::with_capacity(self.size());
        let mut coords = vec![0; indices.len()];
        let mut src = 0;
        for _ in 0..self.size() {
            data.push(self.data[src]);
            for k in (0..coords.len()).rev() {
                coords[k] += 1;
                src += src_strides[k];
                if coords[k] < indices[k].dim {
                    break;
                }
                src -= coords[k] * src_strides[k];
                coords[k] = 0;
            }
        }
        Ok(Self { indices, data })
    }
}

/// Contracts every label the two tensors share. The result carries `a`'s
/// remaining legs followed by `b`'s; with no shared label it is the outer
/// product.
pub fn contract_pair<T: Scalar>(a: &Tensor<T>, b: &Tensor<T>) -> Result<Tensor<T>> {
    let (sa, sb) = (strides(&a.indices), strides(&b.indices));
    let mut shared = Vec::new();
    let mut out = Vec::new();
    let mut out_strides = Vec::new();
    for (ka, ia) in a.indices.iter().enumerate() {
        match b.indices.iter().position(|ib| ib.label == ia.label) {
            Some(kb) => {
                let ib = b.indices[kb];
                if ib.dim != ia.dim {
                    return Err(Error::DimensionMismatch { label: ia.label, left: ia.dim, right: ib.dim });
                }
                shared.push((ia.dim, sa[ka], sb[kb]));
            }
            None => {
                out.push(*ia);
                out_strides.push((sa[ka], 0));
            }
        }
    }
    for (kb, ib) in b.indices.iter().enumerate() {
        if !a.indices.iter().any(|ia| ia.label == ib.label) {
            out.push(*ib);
            out_strides.push((0, sb[kb]));
        }
    }

    // offsets of every shared-index assignment, enumerated once
    let mut inner = vec![(0usize, 0usize)];
    for &(dim, stride_a, stride_b) in &shared {
        inner =
            inner.iter().flat_map(|&(oa, ob)| (0..dim).map(move |v| (oa + v * stride_a, ob + v * stride_b))).collect();
    }

    let size = size_of(&out);
    let mut data = Vec::with_capacity(size);
    let mut coords = vec![0; out.len()];
    let (mut base_a, mut base_b) = (0usize, 0usize);
    for _ in 0..size {
        let mut acc = Complex::zero();
        for &(oa, ob) in &inner {
            acc += a.data[base_a + oa] * b.data[base_b + ob];
        }
        data.push(acc);
        for k in (0..coords.len()).rev() {
            let (da, db) = out_strides[k];
            coords[k] += 1;
            base_a += da;
            base_b += db;
            if coords[k] < out[k].dim {
                break;
            }
            base_a -= coords[k] * da;
            base_b -= coords[k] * db;
            coords[k] = 0;
        }
    }
    Ok(Tensor { indices: out, data })
}
