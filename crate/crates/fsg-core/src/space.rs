use std::collections::HashMap;
use std::sync::OnceLock;

use graph_core::family::next_permutation;
use graph_core::{contingency_count, MultiplicityGraph, SimpleGraph};

use crate::FsError;

/// Which friends-and-strangers construction an instance materializes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Bijective,
    Multiplicity,
    DoubleMultiplicity,
}

/// An implicit FS-type graph: arrangements in a fixed canonical order, each
/// with a dense index, plus the friendly-swap neighbor relation.
pub trait FsGraph: Sync {
    fn variant(&self) -> Variant;

    /// Exact number of arrangements.
    fn vertex_count(&self) -> u128;

    /// Calls `f(index, arrangement)` for every arrangement in canonical order;
    /// the index equals the position in that order.
    fn for_each_arrangement(&self, f: &mut dyn FnMut(usize, &[usize]));

    /// Dense index of a valid arrangement.
    fn index_of(&self, a: &[usize]) -> usize;

    /// Calls `f` once for every arrangement one friendly swap away from `a`.
    fn for_each_neighbor(&self, a: &[usize], f: &mut dyn FnMut(&[usize]));

    fn validate(&self, a: &[usize]) -> Result<(), FsError>;

    /// Collected arrangements (for small spaces).
    fn arrangements(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_arrangement(&mut |_, a| out.push(a.to_vec()));
        out
    }

    fn friendly_neighbors(&self, a: &[usize]) -> Result<Vec<Vec<usize>>, FsError> {
        self.validate(a)?;
        let mut out = Vec::new();
        self.for_each_neighbor(a, &mut |b| out.push(b.to_vec()));
        Ok(out)
    }
}

/// `FS(X, Y)` or `FSm(X, Y)`: positions are the vertices of `x`, labels the
/// vertices of `y`, label `l` used exactly `mult_y[l]` times.
///
/// Arrangements are vectors `a[p] = label`, ordered lexicographically.
#[derive(Clone, Debug)]
pub struct FsInstance {
    x: SimpleGraph,
    y: MultiplicityGraph,
    // Lexicographically smallest arrangement.
    first: Vec<usize>,
}

impl FsInstance {
    pub fn new(x: SimpleGraph, y: MultiplicityGraph) -> Result<Self, FsError> {
        if x.n() != y.total() {
            return Err(FsError::SizeMismatch { positions: x.n(), labels: y.total() });
        }
        let mut first = Vec::with_capacity(x.n());
        for (l, &c) in y.mult().iter().enumerate() {
            first.extend(std::iter::repeat(l).take(c));
        }
        Ok(FsInstance { x, y, first })
    }

    /// Classical `FS(X, Y)` on two simple graphs of equal order.
    pub fn bijective(x: SimpleGraph, y: SimpleGraph) -> Result<Self, FsError> {
        FsInstance::new(x, MultiplicityGraph::unit(y))
    }

    pub fn x(&self) -> &SimpleGraph {
        &self.x
    }

    pub fn y(&self) -> &MultiplicityGraph {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn is_bijective(&self) -> bool {
        self.y.all_unit()
    }

    /// Lexicographic rank among all arrangements with the same label counts.
    pub fn rank(&self, a: &[usize]) -> u128 {
        let mut cnt: Vec<u128> = self.y.mult().iter().map(|&c| c as u128).collect();
        let mut r = a.len() as u128;
        let mut m = multinomial(self.y.mult());
        let mut rank = 0u128;
        for &s in a {
            for &c in cnt.iter().take(s) {
                if c > 0 {
                    rank += m * c / r;
                }
            }
            m = m * cnt[s] / r;
            cnt[s] -= 1;
            r -= 1;
        }
        rank
    }

    fn has_label_edge(&self, s: usize, t: usize) -> bool {
        self.y.base().has_edge(s, t)
    }
}

/// `n! / prod(c_i!)` for the list of part sizes.
pub fn multinomial(parts: &[usize]) -> u128 {
    let mut total = 0u128;
    let mut acc = 1u128;
    for &c in parts {
        for i in 1..=c as u128 {
            total += 1;
            // acc * total / i stays integral: acc is a product of binomials.
            acc = acc * total / i;
        }
    }
    acc
}

impl FsGraph for FsInstance {
    fn variant(&self) -> Variant {
        if self.is_bijective() {
            Variant::Bijective
        } else {
            Variant::Multiplicity
        }
    }

    fn vertex_count(&self) -> u128 {
        multinomial(self.y.mult())
    }

    fn for_each_arrangement(&self, f: &mut dyn FnMut(usize, &[usize])) {
        let mut cur = self.first.clone();
        let mut i = 0;
        loop {
            f(i, &cur);
            i += 1;
            if !next_permutation(&mut cur) {
                return;
            }
        }
    }

    fn index_of(&self, a: &[usize]) -> usize {
        self.rank(a) as usize
    }

    fn for_each_neighbor(&self, a: &[usize], f: &mut dyn FnMut(&[usize])) {
        let mut b = a.to_vec();
        for &(p, q) in self.x.edges() {
            let (s, t) = (a[p], a[q]);
            if s != t && self.has_label_edge(s, t) {
                b.swap(p, q);
                f(&b);
                b.swap(p, q);
            }
        }
    }

    fn validate(&self, a: &[usize]) -> Result<(), FsError> {
        if a.len() != self.n() {
            return Err(FsError::InvalidArrangement(format!("length {} != {}", a.len(), self.n())));
        }
        let mut cnt = vec![0usize; self.y.n()];
        for &l in a {
            if l >= self.y.n() {
                return Err(FsError::InvalidArrangement(format!("label {l} out of range")));
            }
            cnt[l] += 1;
        }
        if cnt != self.y.mult() {
            return Err(FsError::InvalidArrangement(format!("label counts {cnt:?} != {:?}", self.y.mult())));
        }
        Ok(())
    }
}

/// `FSmm(X, Y)`: copies of the vertices of `x` (label `u` appearing
/// `mult_x[u]` times) placed on the vertices of `y` (vertex `y` holding
/// `mult_y[y]` labels). An arrangement is the count matrix `count[u][y]`,
/// flattened row-major.
///
/// Adjacency: exchange one copy of `u` on `y1` with one copy of `v != u` on
/// `y2`, where `uv` is an edge of `x` and `y1 y2` an edge of `y`.
#[derive(Debug)]
pub struct FsmmInstance {
    x: MultiplicityGraph,
    y: MultiplicityGraph,
    table: OnceLock<(Vec<Vec<usize>>, HashMap<Vec<usize>, usize>)>,
}

impl FsmmInstance {
    pub fn new(x: MultiplicityGraph, y: MultiplicityGraph) -> Result<Self, FsError> {
        if x.total() != y.total() {
            return Err(FsError::SizeMismatch { positions: y.total(), labels: x.total() });
        }
        Ok(FsmmInstance { x, y, table: OnceLock::new() })
    }

    pub fn x(&self) -> &MultiplicityGraph {
        &self.x
    }

    pub fn y(&self) -> &MultiplicityGraph {
        &self.y
    }

    fn table(&self) -> &(Vec<Vec<usize>>, HashMap<Vec<usize>, usize>) {
        self.table.get_or_init(|| {
            let (rows, cols) = (self.x.mult(), self.y.mult());
            let mut all = Vec::new();
            let mut cur = vec![0usize; rows.len() * cols.len()];
            let mut col_left = cols.to_vec();
            fill_rows(rows, &mut col_left, 0, 0, rows.first().copied().unwrap_or(0), &mut cur, &mut all);
            let index = all.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            (all, index)
        })
    }
}

// Lexicographic enumeration of count matrices, row by row, cell by cell.
fn fill_rows(
    rows: &[usize],
    col_left: &mut [usize],
    r: usize,
    c: usize,
    row_left: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let nc = col_left.len();
    if r == rows.len() {
        if col_left.iter().all(|&x| x == 0) {
            out.push(cur.clone());
        }
        return;
    }
    if c == nc {
        if row_left == 0 {
            let next = rows.get(r + 1).copied().unwrap_or(0);
            fill_rows(rows, col_left, r + 1, 0, next, cur, out);
        }
        return;
    }
    let hi = row_left.min(col_left[c]);
    for take in 0..=hi {
        cur[r * nc + c] = take;
        col_left[c] -= take;
        fill_rows(rows, col_left, r, c + 1, row_left - take, cur, out);
        col_left[c] += take;
    }
    cur[r * nc + c] = 0;
}

impl FsGraph for FsmmInstance {
    fn variant(&self) -> Variant {
        Variant::DoubleMultiplicity
    }

    fn vertex_count(&self) -> u128 {
        // Counted from the margins so budget checks never build the table.
        contingency_count(self.x.mult(), self.y.mult()).expect("totals checked at construction")
    }

    fn for_each_arrangement(&self, f: &mut dyn FnMut(usize, &[usize])) {
        for (i, m) in self.table().0.iter().enumerate() {
            f(i, m);
        }
    }

    fn index_of(&self, a: &[usize]) -> usize {
        self.table().1[a]
    }

    fn for_each_neighbor(&self, a: &[usize], f: &mut dyn FnMut(&[usize])) {
        let nc = self.y.n();
        let mut b = a.to_vec();
        for &(u, v) in self.x.base().edges() {
            for &(ya, yb) in self.y.base().edges() {
                for (y1, y2) in [(ya, yb), (yb, ya)] {
                    if a[u * nc + y1] > 0 && a[v * nc + y2] > 0 {
                        b[u * nc + y1] -= 1;
                        b[u * nc + y2] += 1;
                        b[v * nc + y2] -= 1;
                        b[v * nc + y1] += 1;
                        f(&b);
                        b.copy_from_slice(a);
                    }
                }
            }
        }
    }

    fn validate(&self, a: &[usize]) -> Result<(), FsError> {
        let (nr, nc) = (self.x.n(), self.y.n());
        if a.len() != nr * nc {
            return Err(FsError::InvalidArrangement(format!("matrix has {} cells, expected {}", a.len(), nr * nc)));
        }
        for r in 0..nr {
            if a[r * nc..(r + 1) * nc].iter().sum::<usize>() != self.x.mult()[r] {
                return Err(FsError::InvalidArrangement(format!("row {r} sum")));
            }
        }
        for c in 0..nc {
            if (0..nr).map(|r| a[r * nc + c]).sum::<usize>() != self.y.mult()[c] {
                return Err(FsError::InvalidArrangement(format!("column {c} sum")));
            }
        }
        Ok(())
    }
}
