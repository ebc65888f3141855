//! Factorial block layout of `l2(N*)` and truncated sequence vectors.
//!
//! Block `k` spans the canonical coordinates `s(k) .. s(k+1)-1` where
//! `s(1) = 1` and `s(k+1) = s(k) + k!`, so block `k` has dimension `k!`.
//! Coordinates inside a block are addressed 1-based (`e_{k,j}` is the
//! canonical vector `delta_{s(k)+j-1}`), matching how the construction is
//! usually written down.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Largest supported truncation depth (block dimension 8! = 40320).
pub const MAX_K: usize = 8;

pub fn factorial(k: usize) -> usize {
    (1..=k).product()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLayout {
    k_max: usize,
    /// `offsets[i] = s(i+1)` for `i = 0..=k_max`.
    offsets: Vec<usize>,
}

impl BlockLayout {
    pub fn new(k_max: usize) -> Result<Self> {
        if !(1..=MAX_K).contains(&k_max) {
            return Err(Error::Config(format!("k_max must be in 1..={MAX_K}, got {k_max}")));
        }
        let mut offsets = Vec::with_capacity(k_max + 1);
        let mut s = 1usize;
        offsets.push(s);
        for k in 1..=k_max {
            s += factorial(k);
            offsets.push(s);
        }
        Ok(Self { k_max, offsets })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// `s(1), ..., s(k_max + 1)`.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// `s(k)`, for `1 <= k <= k_max + 1`.
    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k - 1]
    }

    pub fn dimension(&self) -> usize {
        self.offsets[self.k_max] - 1
    }

    pub fn block_len(&self, k: usize) -> usize {
        factorial(k)
    }

    /// Block and 1-based position of the canonical coordinate `r >= 1`.
    pub fn locate(&self, r: usize) -> Option<(usize, usize)> {
        if r == 0 || r > self.dimension() {
            return None;
        }
        let k = self.offsets.partition_point(|&s| s <= r);
        Some((k, r - self.offset(k) + 1))
    }
}

/// Convenience wrapper returning the layout together with its dimension.
pub fn make_layout(k_max: usize) -> Result<(BlockLayout, usize)> {
    let layout = BlockLayout::new(k_max)?;
    let dim = layout.dimension();
    Ok((layout, dim))
}

/// A vector of the truncated space, stored block by block.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqVector {
    layout: BlockLayout,
    blocks: Vec<Vec<Complex64>>,
}

impl SeqVector {
    pub fn zeros(layout: &BlockLayout) -> Self {
        let blocks = (1..=layout.k_max()).map(|k| vec![Complex64::new(0.0, 0.0); factorial(k)]).collect();
        Self { layout: layout.clone(), blocks }
    }

    pub fn from_blocks(layout: &BlockLayout, blocks: Vec<Vec<Complex64>>) -> Result<Self> {
        if blocks.len() != layout.k_max() {
            return Err(Error::Layout(format!("expected {} blocks, got {}", layout.k_max(), blocks.len())));
        }
        for (i, b) in blocks.iter().enumerate() {
            let k = i + 1;
            if b.len() != factorial(k) {
                return Err(Error::Layout(format!("block {k} has length {}, expected {}", b.len(), factorial(k))));
            }
        }
        Ok(Self { layout: layout.clone(), blocks })
    }

    /// The canonical vector `delta_r` (1-based).
    pub fn delta(layout: &BlockLayout, r: usize) -> Result<Self> {
        let (k, j) = layout.locate(r).ok_or_else(|| Error::OutOfRange(format!("coordinate {r} outside 1..={}", layout.dimension())))?;
        Self::basis(layout, k, j)
    }

    /// The block basis vector `e_{k,j}`.
    pub fn basis(layout: &BlockLayout, k: usize, j: usize) -> Result<Self> {
        let mut v = Self::zeros(layout);
        v.set(k, j, Complex64::new(1.0, 0.0))?;
        Ok(v)
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    pub fn blocks(&self) -> &[Vec<Complex64>] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &[Complex64] {
        &self.blocks[k - 1]
    }

    pub fn block_mut(&mut self, k: usize) -> &mut [Complex64] {
        &mut self.blocks[k - 1]
    }

    pub fn get(&self, k: usize, j: usize) -> Option<Complex64> {
        self.blocks.get(k.checked_sub(1)?)?.get(j.checked_sub(1)?).copied()
    }

    pub fn set(&mut self, k: usize, j: usize, value: Complex64) -> Result<()> {
        let slot = k
            .checked_sub(1)
            .and_then(|i| self.blocks.get_mut(i))
            .and_then(|b| b.get_mut(j.checked_sub(1)?))
            .ok_or_else(|| Error::OutOfRange(format!("position e_({k},{j}) outside layout")))?;
        *slot = value;
        Ok(())
    }

    /// Squared norm of block `k`, summed in ascending `j`.
    pub fn block_norm_sqr(&self, k: usize) -> f64 {
        block_norm_sqr(self.block(k))
    }

    /// Squared norm: block sums in ascending `k`, each summed in ascending `j`.
    pub fn norm_sqr(&self) -> f64 {
        self.blocks.iter().map(|b| block_norm_sqr(b)).sum()
    }

    pub fn norm(&self) -> f64 {
        let ss = self.norm_sqr();
        if ss.is_finite() {
            ss.sqrt()
        } else {
            scaled_norm(self.blocks.iter().flatten().copied())
        }
    }

    fn check_layout(&self, other: &Self) -> Result<()> {
        if self.layout != other.layout {
            return Err(Error::Layout(format!("layout mismatch: k_max {} vs {}", self.layout.k_max(), other.layout.k_max())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&z| c * z).collect()).collect();
        Self { layout: self.layout.clone(), blocks }
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.norm())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check_layout(other)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()).collect();
        Ok(Self { layout: self.layout.clone(), blocks })
    }
}

/// Sum of squared moduli in ascending index order.
pub fn block_norm_sqr(b: &[Complex64]) -> f64 {
    b.iter().map(|z| z.norm_sqr()).sum()
}

pub fn block_norm(b: &[Complex64]) -> f64 {
    let ss = block_norm_sqr(b);
    if ss.is_finite() {
        ss.sqrt()
    } else {
        scaled_norm(b.iter().copied())
    }
}

/// Overflow-safe Euclidean norm (running scale and scaled sum of squares).
fn scaled_norm(it: impl Iterator<Item = Complex64>) -> f64 {
    let mut scale = 0.0f64;
    let mut ssq = 1.0f64;
    for z in it {
        for x in [z.re, z.im] {
            if x != 0.0 {
                let a = x.abs();
                if scale < a {
                    ssq = 1.0 + ssq * (scale / a) * (scale / a);
                    scale = a;
                } else {
                    ssq += (a / scale) * (a / scale);
                }
            }
        }
    }
    scale * ssq.sqrt()
}

#[derive(Serialize, Deserialize)]
struct SeqVectorRepr {
    k_max: usize,
    blocks: Vec<Vec<[f64; 2]>>,
}

impl Serialize for SeqVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeqVectorRepr { k_max: self.layout.k_max(), blocks: self.blocks.iter().map(|b| b.iter().map(|z| [z.re, z.im]).collect()).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SeqVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SeqVectorRepr::deserialize(deserializer)?;
        let layout = BlockLayout::new(repr.k_max).map_err(D::Error::custom)?;
        let blocks = repr.blocks.into_iter().map(|b| b.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()).collect();
        SeqVector::from_blocks(&layout, blocks).map_err(D::Error::custom)
    }
}
