//! Mixed-radix indexing for tensor-product bases.
//!
//! Row-major convention throughout the crate: the first factor varies
//! slowest, so `flat(i_1, ..., i_k) = ((i_1 d_2 + i_2) d_3 + i_3) ...`. The
//! convention nests: flattening `(x, y)` over `[|X|, |Y|]` where `x` is
//! itself flat over `X`'s factors agrees with flattening the concatenated
//! tuple, which is what lets chain spaces reinterpret block structures.

#[derive(Clone, Debug)]
pub struct TensorShape {
    dims: Vec<usize>,
    len: usize,
}

// `len` is a total dimension, which is legitimately zero when a factor
// is zero-dimensional; an `is_empty` would suggest the wrong notion.
#[allow(clippy::len_without_is_empty)]
impl TensorShape {
    pub fn new(dims: Vec<usize>) -> TensorShape {
        let len = dims.iter().product();
        TensorShape { dims, len }
    }

    /// Total dimension (product of the factor dimensions).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn factors(&self) -> &[usize] {
        &self.dims
    }

    pub fn flat(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.dims.len());
        let mut acc = 0usize;
        for (i, d) in index.iter().zip(&self.dims) {
            debug_assert!(i < d);
            acc = acc * d + i;
        }
        acc
    }

    /// Decodes into a caller-provided buffer to keep hot loops allocation-free.
    pub fn unflat_into(&self, mut flat: usize, out: &mut Vec<usize>) {
        out.clear();
        out.resize(self.dims.len(), 0);
        for (slot, d) in self.dims.iter().enumerate().rev() {
            out[slot] = flat % d;
            flat /= d;
        }
        debug_assert_eq!(flat, 0);
    }

    pub fn unflat(&self, flat: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.unflat_into(flat, &mut out);
        out
    }
}
