//! Doubly-linked vertex paths and list ranking.

use alloc::vec::Vec;

use crate::{Error, Result, WorkDepthMeter};

const NIL: u32 = u32::MAX;

/// A simple path stored as a doubly-linked list over an arena of slots.
///
/// Slots are numbered `0..len`; their order in the arena is unrelated to
/// the head-to-tail order once the list has been rebuilt or reversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathList {
    id: u32,
    vertex: Vec<u32>,
    prev: Vec<u32>,
    next: Vec<u32>,
    head: u32,
    tail: u32,
}

impl PathList {
    /// Link `vertices` head to tail; slot `i` holds `vertices[i]`.
    pub fn from_vertices(id: usize, vertices: &[usize]) -> Self {
        let len = vertices.len();
        let vertex = vertices.iter().map(|&v| v as u32).collect();
        let prev = (0..len).map(|i| if i == 0 { NIL } else { i as u32 - 1 }).collect();
        let next = (0..len).map(|i| if i + 1 == len { NIL } else { i as u32 + 1 }).collect();
        let (head, tail) = if len == 0 { (NIL, NIL) } else { (0, len as u32 - 1) };
        PathList { id: id as u32, vertex, prev, next, head, tail }
    }

    pub fn id(&self) -> usize {
        self.id as usize
    }

    pub fn len(&self) -> usize {
        self.vertex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex.is_empty()
    }

    pub fn head(&self) -> Option<usize> {
        (self.head != NIL).then(|| self.vertex[self.head as usize] as usize)
    }

    pub fn tail(&self) -> Option<usize> {
        (self.tail != NIL).then(|| self.vertex[self.tail as usize] as usize)
    }

    pub fn slot_vertex(&self, slot: usize) -> usize {
        self.vertex[slot] as usize
    }

    /// Vertices from head to tail.
    pub fn iter(&self) -> PathIter<'_> {
        PathIter { path: self, at: self.head, back: self.tail, left: self.len() }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Swap the link directions in place; O(1) pointer work per slot.
    pub fn reverse(&mut self) {
        core::mem::swap(&mut self.prev, &mut self.next);
        core::mem::swap(&mut self.head, &mut self.tail);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertex.iter().any(|&x| x as usize == v)
    }

    fn slot_of(&self, v: usize) -> Option<usize> {
        self.vertex.iter().position(|&x| x as usize == v)
    }
}

pub struct PathIter<'a> {
    path: &'a PathList,
    at: u32,
    back: u32,
    left: usize,
}

impl Iterator for PathIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.left == 0 {
            return None;
        }
        let slot = self.at as usize;
        self.at = self.path.next[slot];
        self.left -= 1;
        Some(self.path.vertex[slot] as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.left, Some(self.left))
    }
}

impl DoubleEndedIterator for PathIter<'_> {
    fn next_back(&mut self) -> Option<usize> {
        if self.left == 0 {
            return None;
        }
        let slot = self.back as usize;
        self.back = self.path.prev[slot];
        self.left -= 1;
        Some(self.path.vertex[slot] as usize)
    }
}

impl ExactSizeIterator for PathIter<'_> {}

/// Inclusive prefix sums along `path`, by pointer jumping.
///
/// `values[s]` belongs to slot `s`; the result is indexed the same way and
/// slot `s` receives the sum of all values from the head up to itself.
pub fn list_rank(path: &PathList, values: &[i64], meter: &mut WorkDepthMeter) -> Result<Vec<i64>> {
    let len = path.len();
    if len == 0 {
        return Err(Error::EmptyPath);
    }
    if values.len() != len {
        return Err(Error::ValueCount { values: values.len(), len });
    }
    let mut sum = values.to_vec();
    let mut pred = path.prev.clone();
    let mut next_sum = vec![0i64; len];
    let mut next_pred = vec![NIL; len];
    loop {
        let mut live = false;
        for s in 0..len {
            let p = pred[s];
            if p == NIL {
                next_sum[s] = sum[s];
                next_pred[s] = NIL;
            } else {
                next_sum[s] = sum[s] + sum[p as usize];
                next_pred[s] = pred[p as usize];
                live |= next_pred[s] != NIL;
            }
        }
        meter.round(len as u64);
        core::mem::swap(&mut sum, &mut next_sum);
        core::mem::swap(&mut pred, &mut next_pred);
        if !live {
            break;
        }
    }
    Ok(sum)
}

/// 1-based position of `v` counted from the head, and the path length.
pub fn locate_on_path(path: &PathList, v: usize, meter: &mut WorkDepthMeter) -> Result<(usize, usize)> {
    if path.is_empty() {
        return Err(Error::NotOnPath(v));
    }
    let slot = path.slot_of(v).ok_or(Error::NotOnPath(v))?;
    meter.round(path.len() as u64);
    let ranks = list_rank(path, &vec![1; path.len()], meter)?;
    Ok((ranks[slot] as usize, path.len()))
}

/// Half-split rule for `s = s' y s''` with `y` at `rank` of `total`:
/// the head side `s'` counts as the longer part iff `rank >= ceil(total/2)`.
#[inline]
pub fn head_side_longer(rank: usize, total: usize) -> bool {
    rank >= total.div_ceil(2)
}

/// Split `path` around `v` into the part to absorb (`v` followed by the
/// longer side walking away from `v`) and the remainder, which keeps the
/// original head-to-tail direction.
pub fn take_longer_half(path: &PathList, v: usize, meter: &mut WorkDepthMeter) -> Result<(Vec<usize>, Vec<usize>)> {
    let (rank, total) = locate_on_path(path, v, meter)?;
    let order = path.to_vec();
    let idx = rank - 1;
    meter.round(total as u64);
    if head_side_longer(rank, total) {
        let taken = order[..=idx].iter().rev().copied().collect();
        Ok((taken, order[idx + 1..].to_vec()))
    } else {
        Ok((order[idx..].to_vec(), order[..idx].to_vec()))
    }
}
