use crate::error::{Error, Result};

/// A simplicial complex on ground set `{0, ..., K-1}` with a level count
/// `d_k >= 2` per ground element. Faces are bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallComplexInstance {
    dims: Vec<usize>,
    faces: Vec<u32>,
}

/// Bound on `cells · (2·entry_bound + 1)` accepted by [`min_kernel_one_norm`].
pub const MAX_KERNEL_SEARCH: usize = 1_000_000;

/// Cell cap for [`min_kernel_one_norm`]; the search recurses once per cell.
pub const MAX_KERNEL_CELLS: usize = 4096;

impl SmallComplexInstance {
    /// Validates that every level count is at least 2 and `faces` is closed
    /// downward.
    pub fn new(dims: Vec<usize>, faces: &[&[usize]]) -> Result<Self> {
        let k = dims.len();
        if k > 16 {
            return Err(Error::OutOfRange {
                what: "ground set size",
                value: k as u64,
                range: "..=16".into(),
            });
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::OutOfRange {
                what: "level count",
                value: d as u64,
                range: ">= 2".into(),
            });
        }
        let mut masks = Vec::with_capacity(faces.len());
        for face in faces {
            let mut m = 0u32;
            for &x in *face {
                if x >= k {
                    return Err(Error::OutOfRange {
                        what: "face element",
                        value: x as u64,
                        range: format!("..{k}"),
                    });
                }
                m |= 1 << x;
            }
            masks.push(m);
        }
        masks.sort_unstable();
        masks.dedup();
        let closed = masks.iter().all(|&f| {
            (0..k).all(|x| f & (1 << x) == 0 || masks.binary_search(&(f & !(1 << x))).is_ok())
        });
        if !closed {
            return Err(Error::NotDownwardClosed);
        }
        Ok(SmallComplexInstance { dims, faces: masks })
    }

    /// All subsets of size at most `max_face`.
    pub fn skeleton(dims: Vec<usize>, max_face: usize) -> Result<Self> {
        let k = dims.len();
        let faces: Vec<Vec<usize>> = (0u32..1 << k)
            .filter(|m| m.count_ones() as usize <= max_face)
            .map(|m| (0..k).filter(|&x| m & (1 << x) != 0).collect())
            .collect();
        let refs: Vec<&[usize]> = faces.iter().map(Vec::as_slice).collect();
        SmallComplexInstance::new(dims, &refs)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn faces(&self) -> &[u32] {
        &self.faces
    }

    pub fn cells(&self) -> usize {
        self.dims.iter().product()
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<u32> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| !self.faces.iter().any(|&g| g != f && g & f == f))
            .collect()
    }

    /// Cardinality of the smallest subset of the ground set that is not a
    /// face, or `None` if every subset is a face.
    pub fn smallest_nonface_size(&self) -> Option<usize> {
        (0u32..1 << self.dims.len())
            .filter(|m| self.faces.binary_search(m).is_err())
            .map(|m| m.count_ones() as usize)
            .min()
    }
}

/// Per-facet fiber bookkeeping for the kernel search.
struct Fibers {
    // (facet, global fiber id) for each cell
    of_cell: Vec<Vec<(usize, usize)>>,
    last_cell: Vec<usize>,
    facet_count: usize,
}

impl Fibers {
    fn new(inst: &SmallComplexInstance) -> Self {
        let dims = &inst.dims;
        let cells = inst.cells();
        let facets = inst.facets();
        let mut of_cell = vec![Vec::with_capacity(facets.len()); cells];
        let mut last_cell = Vec::new();
        let mut offset = 0;
        for (fi, &f) in facets.iter().enumerate() {
            let axes: Vec<usize> = (0..dims.len()).filter(|&x| f & (1 << x) != 0).collect();
            let fibers: usize = axes.iter().map(|&x| dims[x]).product();
            last_cell.extend(std::iter::repeat_n(0, fibers));
            for (cell, slots) in of_cell.iter_mut().enumerate() {
                // row-major decode, last axis fastest
                let mut rem = cell;
                let mut coord = vec![0; dims.len()];
                for x in (0..dims.len()).rev() {
                    coord[x] = rem % dims[x];
                    rem /= dims[x];
                }
                let mut m = 0;
                for &x in &axes {
                    m = m * dims[x] + coord[x];
                }
                slots.push((fi, offset + m));
                last_cell[offset + m] = cell;
            }
            offset += fibers;
        }
        Fibers {
            of_cell,
            last_cell,
            facet_count: facets.len(),
        }
    }
}

struct Search<'a> {
    fibers: &'a Fibers,
    bound: i64,
    partial: Vec<i64>,
    facet_abs: Vec<i64>,
}

impl Search<'_> {
    fn dfs(&mut self, cell: usize, remaining: i64, seen_nonzero: bool) -> bool {
        let cells = self.fibers.of_cell.len();
        if cell == cells {
            return remaining == 0 && seen_nonzero;
        }
        if ((cells - cell) as i64) * self.bound < remaining {
            return false;
        }
        let reach = self.bound.min(remaining);
        let lo = if seen_nonzero { -reach } else { 0 };
        // zero first, then increasing magnitude
        let mut values: Vec<i64> = (lo..=reach).collect();
        values.sort_by_key(|v| (v.abs(), -v));
        for v in values {
            let left = remaining - v.abs();
            if self.apply(cell, v, left) && self.dfs(cell + 1, left, seen_nonzero || v != 0) {
                self.undo(cell, v);
                return true;
            }
            self.undo(cell, v);
        }
        false
    }

    /// Adds `v` at `cell` and reports whether the partial table can still be
    /// completed to a kernel element using at most `left` more norm.
    fn apply(&mut self, cell: usize, v: i64, left: i64) -> bool {
        let mut ok = true;
        for &(f, fib) in &self.fibers.of_cell[cell] {
            let before = self.partial[fib];
            let after = before + v;
            self.partial[fib] = after;
            self.facet_abs[f] += after.abs() - before.abs();
            if self.fibers.last_cell[fib] == cell && after != 0 {
                ok = false;
            }
        }
        ok && self.facet_abs.iter().all(|&a| a <= left)
    }

    fn undo(&mut self, cell: usize, v: i64) {
        for &(f, fib) in &self.fibers.of_cell[cell] {
            let before = self.partial[fib];
            let after = before - v;
            self.partial[fib] = after;
            self.facet_abs[f] += after.abs() - before.abs();
        }
    }
}

/// Smallest 1-norm of a nonzero integer table with entries in
/// `[-entry_bound, entry_bound]` whose facet marginals all vanish, or `None`
/// if no such table exists within the bound.
///
/// Exhaustive branch and bound: target norms are tried in increasing order
/// and each is searched cell by cell, cutting a branch once some facet's
/// unbalanced fibers need more norm than remains.
pub fn min_kernel_one_norm(inst: &SmallComplexInstance, entry_bound: u32) -> Result<Option<u64>> {
    if entry_bound == 0 {
        return Err(Error::OutOfRange {
            what: "entry_bound",
            value: 0,
            range: ">= 1".into(),
        });
    }
    let cells = inst.cells();
    let size = cells.saturating_mul(2 * entry_bound as usize + 1);
    if size > MAX_KERNEL_SEARCH || cells > MAX_KERNEL_CELLS {
        return Err(Error::Infeasible(format!(
            "{cells} cells with entry bound {entry_bound}"
        )));
    }
    let fibers = Fibers::new(inst);
    let max_norm = cells as i64 * entry_bound as i64;
    for target in 1..=max_norm {
        let mut search = Search {
            fibers: &fibers,
            bound: entry_bound as i64,
            partial: vec![0; fibers.last_cell.len()],
            facet_abs: vec![0; fibers.facet_count],
        };
        if search.dfs(0, target, false) {
            return Ok(Some(target as u64));
        }
    }
    Ok(None)
}
