//! Half-edge multigraphs and exact counts of closed non-backtracking walks,
//! circuits and circles.
//!
//! Every undirected edge `e` is stored as the two darts `2e` and `2e + 1`, so
//! the reversal of a dart is `d ^ 1`. Loops are edges whose two darts both
//! start and end at the same vertex; parallel edges are simply repeated.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::nbmatrix;

/// Largest walk length accepted by the enumeration oracles.
pub const BRUTE_FORCE_MAX_LENGTH: usize = 14;
/// Largest vertex count accepted by the enumeration oracles.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n_vertices: usize,
    /// `head[d]` is the vertex dart `d` points to.
    head: Vec<usize>,
    out_darts: Vec<Vec<usize>>,
}

impl MultiGraph {
    /// Builds a multigraph from unordered vertex pairs. Repeated pairs become
    /// parallel edges and `(v, v)` becomes a loop.
    pub fn from_edges(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut head = Vec::with_capacity(2 * edges.len());
        let mut out_darts = vec![Vec::new(); n_vertices];
        for (e, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n_vertices {
                    return Err(Error::VertexOutOfRange { edge: e, vertex, n_vertices });
                }
            }
            out_darts[u].push(2 * e);
            head.push(v);
            out_darts[v].push(2 * e + 1);
            head.push(u);
        }
        Ok(Self { n_vertices, head, out_darts })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_darts(&self) -> usize {
        self.head.len()
    }

    pub fn n_edges(&self) -> usize {
        self.head.len() / 2
    }

    #[inline]
    pub fn twin(&self, dart: usize) -> usize {
        dart ^ 1
    }

    #[inline]
    pub fn head(&self, dart: usize) -> usize {
        self.head[dart]
    }

    #[inline]
    pub fn origin(&self, dart: usize) -> usize {
        self.head[dart ^ 1]
    }

    pub fn out_darts(&self, vertex: usize) -> &[usize] {
        &self.out_darts[vertex]
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.out_darts[vertex].len()
    }

    /// Edges in insertion order, oriented as they were given.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_edges()).map(move |e| (self.origin(2 * e), self.head(2 * e)))
    }

    /// Edges as `(min, max)` pairs, sorted.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.out_darts.first().map_or(0, Vec::len);
        self.out_darts.iter().all(|o| o.len() == d).then_some(d)
    }

    /// Like [`regular_degree`](Self::regular_degree) but names the first
    /// vertex whose degree differs from that of vertex 0.
    pub fn require_regular(&self) -> Result<usize> {
        let expected = self.out_darts.first().map_or(0, Vec::len);
        match self.out_darts.iter().position(|o| o.len() != expected) {
            None => Ok(expected),
            Some(vertex) => Err(Error::NotRegular { vertex, degree: self.degree(vertex), expected }),
        }
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n_edges()).filter(|&e| self.head(2 * e) == self.origin(2 * e)).count()
    }

    /// Number of unordered pairs of distinct non-loop edges joining the same
    /// two vertices.
    pub fn parallel_pair_count(&self) -> usize {
        let all = self.canonical_edges();
        let mut pairs = 0;
        let mut i = 0;
        while i < all.len() {
            let mut j = i;
            while j < all.len() && all[j] == all[i] {
                j += 1;
            }
            if all[i].0 != all[i].1 {
                let k = j - i;
                pairs += k * (k - 1) / 2;
            }
            i = j;
        }
        pairs
    }

    pub fn is_simple(&self) -> bool {
        self.loop_count() == 0 && self.parallel_pair_count() == 0
    }

    /// Length of the shortest nontrivial closed non-backtracking walk, or
    /// `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        if self.loop_count() > 0 {
            return Some(1);
        }
        if self.parallel_pair_count() > 0 {
            return Some(2);
        }
        let n = self.n_vertices;
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut via = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for source in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[source] = 0;
            queue.clear();
            queue.push_back(source);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for &d in &self.out_darts[u] {
                    if d == self.twin(via[u]) && u != source {
                        continue;
                    }
                    let w = self.head(d);
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        via[w] = d;
                        queue.push_back(w);
                    } else {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    fn check_oracle_caps(&self, r: usize) -> Result<()> {
        if r > BRUTE_FORCE_MAX_LENGTH {
            return Err(Error::CapExceeded { what: "walk length", value: r, cap: BRUTE_FORCE_MAX_LENGTH });
        }
        if self.n_vertices > BRUTE_FORCE_MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "vertex count",
                value: self.n_vertices,
                cap: BRUTE_FORCE_MAX_VERTICES,
            });
        }
        Ok(())
    }

    /// Enumerates every non-backtracking walk of length at most `r_max` and
    /// returns `(f, c)`: counts of closed walks and of circuits per length.
    pub fn closed_walk_counts_brute(&self, r_max: usize) -> Result<(Vec<i128>, Vec<i128>)> {
        self.check_oracle_caps(r_max)?;
        let mut f = vec![0i128; r_max + 1];
        let mut c = vec![0i128; r_max + 1];
        f[0] = self.n_vertices as i128;
        if r_max == 0 {
            return Ok((f, c));
        }
        for start in 0..self.n_vertices {
            for &first in &self.out_darts[start] {
                self.extend_walk(start, first, first, 1, r_max, &mut f, &mut c);
            }
        }
        Ok((f, c))
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_walk(
        &self,
        start: usize,
        first: usize,
        last: usize,
        len: usize,
        r_max: usize,
        f: &mut [i128],
        c: &mut [i128],
    ) {
        let at = self.head(last);
        if at == start {
            f[len] += 1;
            if first != self.twin(last) {
                c[len] += 1;
            }
        }
        if len == r_max {
            return;
        }
        let back = self.twin(last);
        for &next in &self.out_darts[at] {
            if next != back {
                self.extend_walk(start, first, next, len + 1, r_max, f, c);
            }
        }
    }

    /// Closed non-backtracking walks of length `r` by exhaustive enumeration.
    pub fn count_closed_nbw_brute(&self, r: usize) -> Result<i128> {
        Ok(self.closed_walk_counts_brute(r)?.0[r])
    }

    /// Circuits of length `r` by exhaustive enumeration.
    pub fn count_circuits_brute(&self, r: usize) -> Result<i128> {
        Ok(self.closed_walk_counts_brute(r)?.1[r])
    }

    /// `z[r]` = number of circle subgraphs with `r` edges, for `r` in
    /// `0..=r_max` (`z[0]` is always 0). A loop is a circle of size 1 and two
    /// parallel edges form a circle of size 2.
    pub fn enumerate_circles(&self, r_max: usize) -> Result<Vec<i128>> {
        if r_max > BRUTE_FORCE_MAX_LENGTH {
            return Err(Error::CapExceeded { what: "circle size", value: r_max, cap: BRUTE_FORCE_MAX_LENGTH });
        }
        let mut z = vec![0i128; r_max + 1];
        if r_max >= 1 {
            z[1] = self.loop_count() as i128;
        }
        if r_max < 2 {
            return Ok(z);
        }
        let mut on_path = vec![false; self.n_vertices];
        for start in 0..self.n_vertices {
            on_path[start] = true;
            for &d in &self.out_darts[start] {
                let w = self.head(d);
                if w > start {
                    on_path[w] = true;
                    self.extend_circle(start, d, 1, r_max, &mut on_path, &mut z);
                    on_path[w] = false;
                }
            }
            on_path[start] = false;
        }
        // Each circle of size >= 2 was traced once per orientation.
        for zr in z.iter_mut().skip(2) {
            *zr /= 2;
        }
        Ok(z)
    }

    fn extend_circle(&self, start: usize, last: usize, len: usize, r_max: usize, on_path: &mut [bool], z: &mut [i128]) {
        let at = self.head(last);
        for &next in &self.out_darts[at] {
            if next == self.twin(last) {
                continue;
            }
            let w = self.head(next);
            if w == start {
                if len + 1 >= 2 && len < r_max {
                    z[len + 1] += 1;
                }
            } else if w > start && !on_path[w] && len + 1 < r_max {
                on_path[w] = true;
                self.extend_circle(start, next, len + 1, r_max, on_path, z);
                on_path[w] = false;
            }
        }
    }
}

/// Exact per-length counts of closed non-backtracking walks (`f`), circuits
/// (`c`) and circles (`z`) of a regular graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCensus {
    pub r_max: usize,
    /// Branching number: degree minus one.
    pub q: usize,
    pub n_vertices: usize,
    pub f: Vec<i128>,
    pub c: Vec<i128>,
    /// Present only when `r_max` is within the circle enumeration cap.
    pub z: Option<Vec<i128>>,
}

impl WalkCensus {
    /// Lengths `r >= 1` at which `f_r = c_r + (q-1) sum_{1<=i<r/2} q^(i-1) c_(r-2i)` fails.
    pub fn closed_walk_identity_violations(&self) -> Vec<usize> {
        let expected = closed_walks_from_circuits(&self.c, self.q);
        (1..=self.r_max).filter(|&r| expected[r] != Some(self.f[r])).collect()
    }

    /// Lengths `r >= 1` at which `2r z_r <= c_r <= f_r <= (q+1)^2 q^(2r-2) sum_k k z_k` fails.
    /// Empty when circle counts are absent.
    pub fn circle_bound_violations(&self) -> Vec<usize> {
        let Some(z) = &self.z else { return Vec::new() };
        let q = self.q as i128;
        let mut weighted = 0i128;
        let mut bad = Vec::new();
        for r in 1..=self.r_max {
            weighted += r as i128 * z[r];
            let lower = 2 * r as i128 * z[r] <= self.c[r] && self.c[r] <= self.f[r];
            let upper = (q + 1)
                .checked_pow(2)
                .and_then(|a| q.checked_pow(2 * r as u32 - 2).and_then(|b| a.checked_mul(b)))
                .and_then(|a| a.checked_mul(weighted))
                .is_none_or(|bound| self.f[r] <= bound);
            if !(lower && upper) {
                bad.push(r);
            }
        }
        bad
    }

    /// Smallest `r >= 1` with a circuit.
    pub fn girth(&self) -> Option<usize> {
        (1..=self.r_max).find(|&r| self.c[r] > 0)
    }
}

/// Right-hand side of the closed-walk/circuit identity, per length. `None`
/// marks overflow.
fn closed_walks_from_circuits(c: &[i128], q: usize) -> Vec<Option<i128>> {
    let q = q as i128;
    (0..c.len())
        .map(|r| {
            let mut total = Some(c[r]);
            let mut i = 1;
            while 2 * i < r {
                let term = q.checked_pow(i as u32 - 1).and_then(|p| (q - 1).checked_mul(p)).and_then(|p| p.checked_mul(c[r - 2 * i]));
                total = total.zip(term).and_then(|(t, x)| t.checked_add(x));
                i += 1;
            }
            total
        })
        .collect()
}

/// Inverts the closed-walk/circuit identity: recovers `c_0..c_r` from
/// `f_0..f_r` on a `(q+1)`-regular graph.
pub fn circuits_from_closed_walks(f: &[i128], q: usize) -> Result<Vec<i128>> {
    let qi = q as i128;
    let mut c = vec![0i128; f.len()];
    for r in 1..f.len() {
        let mut acc = f[r];
        let mut i = 1;
        while 2 * i < r {
            let term = qi
                .checked_pow(i as u32 - 1)
                .and_then(|p| (qi - 1).checked_mul(p))
                .and_then(|p| p.checked_mul(c[r - 2 * i]))
                .ok_or(Error::Overflow("circuit inversion"))?;
            acc = acc.checked_sub(term).ok_or(Error::Overflow("circuit inversion"))?;
            i += 1;
        }
        c[r] = acc;
    }
    Ok(c)
}

/// `(f, c)` for any multigraph by pushing walk counts along darts from each
/// starting dart. Linear memory, so it scales to graphs far past the dense
/// matrix route; cost grows like `darts * q^r_max`.
pub fn closed_walk_counts(g: &MultiGraph, r_max: usize) -> Result<(Vec<i128>, Vec<i128>)> {
    let overflow = || Error::Overflow("closed walk counts");
    let mut f = vec![0i128; r_max + 1];
    let mut c = vec![0i128; r_max + 1];
    f[0] = g.n_vertices() as i128;
    let mut weight = vec![0i128; g.n_darts()];
    let mut frontier: Vec<usize> = Vec::new();
    let mut next: Vec<usize> = Vec::new();
    let mut staged: Vec<(usize, i128)> = Vec::new();
    for first in 0..g.n_darts() {
        let start = g.origin(first);
        frontier.clear();
        frontier.push(first);
        weight[first] = 1;
        for len in 1..=r_max {
            for &d in &frontier {
                if g.head(d) == start {
                    f[len] = f[len].checked_add(weight[d]).ok_or_else(overflow)?;
                    if d != g.twin(first) {
                        c[len] = c[len].checked_add(weight[d]).ok_or_else(overflow)?;
                    }
                }
            }
            if len == r_max {
                break;
            }
            // Stage the pushes so the old weights can be cleared first.
            next.clear();
            staged.clear();
            for &d in &frontier {
                let w = weight[d];
                for &e in g.out_darts(g.head(d)) {
                    if e != g.twin(d) {
                        staged.push((e, w));
                    }
                }
            }
            for &d in &frontier {
                weight[d] = 0;
            }
            for &(e, w) in &staged {
                if weight[e] == 0 {
                    next.push(e);
                }
                weight[e] = weight[e].checked_add(w).ok_or_else(overflow)?;
            }
            core::mem::swap(&mut frontier, &mut next);
        }
        for &d in &frontier {
            weight[d] = 0;
        }
    }
    Ok((f, c))
}

/// Exact census of a regular graph: `f_r = Tr A_r` from the non-backtracking
/// matrix recurrence, `c_r = Tr B^r` from the dart transition matrix, and
/// circle counts by enumeration when `r_max` is within the cap.
pub fn walk_census(g: &MultiGraph, r_max: usize) -> Result<WalkCensus> {
    let degree = g.require_regular()?;
    if degree == 0 {
        return Err(Error::InvalidParameter("walk census needs degree >= 1".into()));
    }
    let f = nbmatrix::nb_matrix_sequence(g, r_max)?
        .iter()
        .map(|a| a.checked_trace())
        .collect::<Result<Vec<_>>>()?;
    let c = nbmatrix::hashimoto_traces(g, r_max)?;
    let z = if r_max <= BRUTE_FORCE_MAX_LENGTH { Some(g.enumerate_circles(r_max)?) } else { None };
    Ok(WalkCensus { r_max, q: degree - 1, n_vertices: g.n_vertices(), f, c, z })
}
