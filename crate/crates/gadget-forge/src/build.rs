use std::collections::{BTreeMap, BTreeSet};

use graph_core::SimpleGraph;
use serde::{Deserialize, Serialize};

use crate::{GadgetError, GadgetParams, Overrides};

/// Positions on the big cycle (clockwise, `s_3` at 0) of every placed vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub cycle_len: usize,
    /// `s[i - 1]` is the position of `s_i`; same for `r`.
    pub s: [usize; 3],
    pub r: [usize; 3],
    pub x: Vec<usize>,
    /// `t_1, ..., t_{2 ell}`.
    pub t_attach: Vec<usize>,
    pub q: usize,
    /// `z_{i,j}` in row-major order.
    pub z: Vec<usize>,
    pub w: usize,
    /// `z~_{i,j}` for `j >= 2`, row-major (cases 3 and 4 only).
    pub zt: Vec<usize>,
    /// `t~_1, ..., t~_6` (cases 3 and 4 only).
    pub tt: Vec<usize>,
    /// Chords from `S_0` into `[r_3, s_2]`.
    pub chords: Vec<(usize, usize)>,
    pub warnings: Vec<String>,
}

fn cyc_dist(a: usize, b: usize, len: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(len - d)
}

// `n` entries spread evenly over the sorted candidate list.
fn pick_spread(cands: &[usize], n: usize) -> Vec<usize> {
    (0..n).map(|j| cands[(2 * j + 1) * cands.len() / (2 * n)]).collect()
}

struct Occupancy {
    slots: Vec<Option<String>>,
}

impl Occupancy {
    fn claim(&mut self, pos: usize, name: String) -> Result<(), GadgetError> {
        match &self.slots[pos] {
            Some(other) => Err(GadgetError::PlacementConflict(format!("{name} and {other} both at position {pos}"))),
            None => {
                self.slots[pos] = Some(name);
                Ok(())
            }
        }
    }

    fn free(&self, pos: usize) -> bool {
        self.slots[pos].is_none()
    }
}

fn min_gap(points: &[usize], len: usize) -> Option<usize> {
    let mut best = None;
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            let d = cyc_dist(a, b, len);
            best = Some(best.map_or(d, |x: usize| x.min(d)));
        }
    }
    best
}

/// Places every named vertex on the big cycle, or reports the first hard
/// constraint that fails. Spacing targets that cannot be met are recorded as
/// warnings.
pub(crate) fn plan_layout(p: &GadgetParams, ov: &Overrides) -> Result<Layout, GadgetError> {
    let len = p.cycle_len;
    let (ell, k, g) = (p.ell, p.k, p.g);
    let s2 = ov.s2.unwrap_or(p.m / 4);
    let s1 = ov.s1.unwrap_or(p.m / 2);
    if s2 % 2 != 0 || s1 % 2 != 0 {
        return Err(GadgetError::InvalidParams(format!("s_2 = {s2} and s_1 = {s1} must be even positions")));
    }
    let s = [s1, s2, 0];
    let r = s.map(|x| x + ell - 1);
    if !(r[2] + 1 < s2 && r[1] + 1 < s1 && r[0] + 1 < len) {
        return Err(GadgetError::PlacementConflict(format!(
            "intervals [s_i, r_i] at {s:?} with length {ell} overlap or touch on a cycle of length {len}"
        )));
    }
    let mut occ = Occupancy { slots: vec![None; len] };
    let mut warnings = Vec::new();
    for i in 0..3 {
        occ.claim(s[i], format!("s_{}", i + 1))?;
        occ.claim(r[i], format!("r_{}", i + 1))?;
        for pos in s[i] + 1..r[i] {
            occ.claim(pos, format!("[s_{0}, r_{0}]", i + 1))?;
        }
    }

    // t-chain after s_1.
    let mut t_attach = Vec::with_capacity(2 * ell);
    let mut cur = s1 + p.a_offset();
    for i in 0..ell {
        t_attach.push(cur);
        t_attach.push(cur + g);
        cur += g + if i + 1 < ell { k - 2 } else { 0 };
    }
    let q = cur + p.b_offset();
    if q >= len {
        return Err(GadgetError::Infeasible(format!(
            "t-chain from s_1 at {s1} ends at q = {q}, past s_3 on a cycle of length {len}"
        )));
    }
    for (i, &pos) in t_attach.iter().enumerate() {
        occ.claim(pos, format!("t_{}", i + 1))?;
    }
    if q != *t_attach.last().expect("ell >= 2") {
        occ.claim(q, "q".into())?;
    }

    let mut tt = Vec::new();
    if p.rho >= 3 {
        for i in 0..3 {
            let p1 = (s[i] + len - (k - 2)) % len;
            let p2 = (p1 + len - g % len) % len;
            occ.claim(p1, format!("t~_{}", 2 * i + 1))?;
            occ.claim(p2, format!("t~_{}", 2 * i + 2))?;
            tt.push(p1);
            tt.push(p2);
        }
    }

    // x's in (r_3, s_2).
    let (r3, lo2) = (r[2], r[1]);
    let x_parity = if p.rho == 4 { 0 } else { 1 };
    let interior1: Vec<usize> = (r3 + 1..s2).collect();
    let mut cands: Vec<usize> = interior1
        .iter()
        .copied()
        .filter(|&q| q % 2 == x_parity && occ.free(q) && q - r3 >= g && s2 - q >= g)
        .collect();
    if cands.len() < ell {
        warnings.push(format!("x vertices cannot keep distance {g} from r_3 and s_2"));
        cands = interior1.iter().copied().filter(|&q| q % 2 == x_parity && occ.free(q)).collect();
    }
    if cands.len() < ell {
        return Err(GadgetError::Infeasible(format!(
            "[r_3, s_2] has {} free positions of the x parity, {ell} needed",
            cands.len()
        )));
    }
    let x = pick_spread(&cands, ell);
    for (i, &pos) in x.iter().enumerate() {
        occ.claim(pos, format!("x_{}", i + 1))?;
    }

    // z's, w and z~ in (r_2, s_1).
    let n2 = ell * k + 1 + if p.rho >= 3 { 3 * (k - 1) } else { 0 };
    let interior2: Vec<usize> = (lo2 + 1..s1).collect();
    let mut cands: Vec<usize> = interior2.iter().copied().filter(|&q| occ.free(q) && s1 - q >= g).collect();
    if cands.len() < n2 {
        warnings.push(format!("z/w vertices cannot keep distance {g} from s_1"));
        cands = interior2.iter().copied().filter(|&q| occ.free(q)).collect();
    }
    if cands.len() < n2 {
        return Err(GadgetError::Infeasible(format!(
            "[r_2, s_1] has {} free positions, {n2} needed for z, w and z~",
            cands.len()
        )));
    }
    // w is adjacent to v in H, so its side of G is fixed by the (C rho) row
    // for N_H(v): A_G in cases 1 and 4, B_G in cases 2 and 3.
    let w_parity = if matches!(p.rho, 1 | 4) { 1 } else { 0 };
    let mid = cands.len() / 2;
    let w = cands
        .iter()
        .copied()
        .filter(|&q| q % 2 == w_parity)
        .min_by_key(|&q| (q.abs_diff(cands[mid]), q))
        .ok_or_else(|| GadgetError::Infeasible("no position of the required parity for w in [r_2, s_1]".into()))?;
    cands.retain(|&q| q != w);
    let rest = pick_spread(&cands, n2 - 1);
    let z = rest[..ell * k].to_vec();
    let zt = rest[ell * k..].to_vec();
    let mut placed2 = rest.clone();
    placed2.push(w);
    for (idx, &pos) in z.iter().enumerate() {
        occ.claim(pos, format!("z_{}_{}", idx / k + 1, idx % k + 1))?;
    }
    occ.claim(w, "w".into())?;
    for (idx, &pos) in zt.iter().enumerate() {
        occ.claim(pos, format!("z~_{}_{}", idx / (k - 1) + 1, idx % (k - 1) + 2))?;
    }

    // Chords: two per vertex of S_0, endpoints in (r_3, s_2), families
    // interleaved so that endpoints from one interval stay apart.
    let families: Vec<Vec<usize>> = [2usize, 1, 0]
        .iter()
        .map(|&i| {
            let mut f = vec![(s[i] + len - 1) % len];
            f.extend(s[i]..=r[i]);
            f.push(r[i] + 1);
            f
        })
        .collect();
    let mut s0 = Vec::new();
    for j in 0..ell + 2 {
        for f in &families {
            s0.push(f[j]);
        }
    }
    let xset: BTreeSet<usize> = x.iter().copied().collect();
    let pool: Vec<usize> = interior1.iter().copied().filter(|q| !xset.contains(q)).collect();
    let total = 2 * s0.len();
    let span = s2 - r3;
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut chords = Vec::with_capacity(total);
    let mut shared = 0usize;
    for pass in 0..2 {
        for (idx, &a) in s0.iter().enumerate() {
            let j = pass * s0.len() + idx;
            let target = r3 + (2 * j + 1) * span / (2 * total);
            let ok = |e: usize| {
                e % 2 != a % 2 && e != a && cyc_dist(e, a, len) != 1 && !edges.contains(&(a.min(e), a.max(e)))
            };
            let nearest = |fresh: bool| {
                pool.iter()
                    .copied()
                    .filter(|&e| ok(e) && (!fresh || !used.contains(&e)))
                    .min_by_key(|&e| (e.abs_diff(target), e))
            };
            let e = match nearest(true) {
                Some(e) => e,
                None => {
                    shared += 1;
                    nearest(false).ok_or_else(|| {
                        GadgetError::Infeasible(format!("no chord endpoint in [r_3, s_2] available for position {a}"))
                    })?
                }
            };
            used.insert(e);
            edges.insert((a.min(e), a.max(e)));
            chords.push((a, e));
        }
    }
    if shared > 0 {
        warnings.push(format!("{shared} chord endpoints are shared (distinct endpoints do not fit)"));
    }

    let ends: Vec<usize> = used.iter().copied().collect();
    let need = p.m.div_ceil(10 * ell);
    let mut with_bounds = ends.clone();
    with_bounds.push(r3);
    with_bounds.push(s2);
    if let Some(gap) = min_gap(&with_bounds, len) {
        if gap < need {
            warnings.push(format!("chord endpoint spacing {gap} is below m/(10 ell) = {need}"));
        }
    }
    if need < g {
        warnings.push(format!("m/(10 ell) = {need} is below g = {g}"));
    }
    let need_x = p.m.div_ceil(20 * ell);
    let x_gap = x.iter().flat_map(|&a| ends.iter().map(move |&b| cyc_dist(a, b, len))).min();
    if let Some(d) = x_gap {
        if d < need_x {
            warnings.push(format!("x-to-chord-endpoint distance {d} is below m/(20 ell) = {need_x}"));
        }
    }
    let need_z = p.m.div_ceil(10 * ell * k);
    if let Some(d) = min_gap(&placed2, len) {
        if d < need_z {
            warnings.push(format!("z/w spacing {d} is below m/(10 ell k) = {need_z}"));
        }
    }

    Ok(Layout { cycle_len: len, s, r, x, t_attach, q, z, w, zt, tt, chords, warnings })
}

/// Named subsets of the gadget's vertex set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialSets {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// `z_{i,j}` and, in cases 3 and 4, `z~_{i,j}`.
    pub z: Vec<usize>,
    pub s: Vec<usize>,
    pub r: Vec<usize>,
    /// Neighbors of `u` and `v` in either graph: `X ∪ Y ∪ S ∪ R`.
    pub gamma: Vec<usize>,
    /// The removable set: the `y`'s, `u`, `v`, the intervals `[s_i, r_i]`,
    /// and `z~_{i,1}`.
    pub p: Vec<usize>,
}

/// A gadget pair on vertex set `0..n`, with `u` and `v` distinguished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetPair {
    pub params: Option<GadgetParams>,
    pub g: SimpleGraph,
    pub h: SimpleGraph,
    pub u: usize,
    pub v: usize,
    pub roles: Vec<String>,
    /// Extra names for cycle vertices (`q`, `t~_i`).
    pub aliases: BTreeMap<String, usize>,
    pub cycle_position: Vec<Option<usize>>,
    pub a_g: Vec<usize>,
    pub b_g: Vec<usize>,
    pub a_h: Vec<usize>,
    pub b_h: Vec<usize>,
    pub sets: SpecialSets,
    pub layout: Option<Layout>,
}

impl GadgetPair {
    /// A hand-built pair; bipartitions are computed when they exist.
    pub fn miniature(g: SimpleGraph, h: SimpleGraph, u: usize, v: usize) -> Result<Self, GadgetError> {
        if g.n() != h.n() || u >= g.n() || v >= g.n() || u == v {
            return Err(GadgetError::InvalidParams("g and h must share vertices and u != v".into()));
        }
        let (a_g, b_g) = g.bipartition().unwrap_or_default();
        let (a_h, b_h) = h.bipartition().unwrap_or_default();
        let mut roles: Vec<String> = (0..g.n()).map(|i| format!("p_{i}")).collect();
        roles[u] = "u".into();
        roles[v] = "v".into();
        Ok(GadgetPair {
            params: None,
            roles,
            aliases: BTreeMap::new(),
            cycle_position: vec![None; g.n()],
            a_g,
            b_g,
            a_h,
            b_h,
            sets: SpecialSets::default(),
            layout: None,
            g,
            h,
            u,
            v,
        })
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn role_of(&self, name: &str) -> Option<usize> {
        self.roles.iter().position(|r| r == name).or_else(|| self.aliases.get(name).copied())
    }

    pub fn dump(&self) -> GadgetDump {
        let in_a_g: BTreeSet<usize> = self.a_g.iter().copied().collect();
        let in_a_h: BTreeSet<usize> = self.a_h.iter().copied().collect();
        GadgetDump {
            params: self.params.clone(),
            vertices: (0..self.n())
                .map(|i| VertexDump {
                    id: i,
                    role: self.roles[i].clone(),
                    side_g: if in_a_g.contains(&i) { "A" } else { "B" }.into(),
                    side_h: if in_a_h.contains(&i) { "A" } else { "B" }.into(),
                    cycle_position: self.cycle_position[i],
                })
                .collect(),
            aliases: self.aliases.clone(),
            g_edges: self.g.edges().to_vec(),
            h_edges: self.h.edges().to_vec(),
            warnings: self.layout.as_ref().map(|l| l.warnings.clone()).unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDump {
    pub id: usize,
    pub role: String,
    pub side_g: String,
    pub side_h: String,
    pub cycle_position: Option<usize>,
}

/// JSON form of a gadget pair with role-labeled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetDump {
    pub params: Option<GadgetParams>,
    pub vertices: Vec<VertexDump>,
    pub aliases: BTreeMap<String, usize>,
    pub g_edges: Vec<(usize, usize)>,
    pub h_edges: Vec<(usize, usize)>,
    pub warnings: Vec<String>,
}

/// Builds `(G, H)` for the given parameters and placement overrides.
pub fn build_gadget(params: &GadgetParams, overrides: Option<&Overrides>) -> Result<GadgetPair, GadgetError> {
    let lay = plan_layout(params, overrides.unwrap_or(&Overrides::default()))?;
    let p = params;
    let (ell, k, len) = (p.ell, p.k, lay.cycle_len);
    let big = p.rho >= 3;

    // Vertex ids follow the naming order x, y, z, z~, t, s, r, w, then u, v.
    let x_id = |i: usize| i;
    let y_id = |i: usize| ell + i;
    let z_id = |i: usize, j: usize| 2 * ell + i * k + j;
    let zt_base = 2 * ell + ell * k;
    let zt_id = |i: usize, j: usize| zt_base + i * k + j;
    let t_base = zt_base + if big { 3 * k } else { 0 };
    let s_id = |i: usize| t_base + p.s + i;
    let r_id = |i: usize| t_base + p.s + 3 + i;
    let w_id = p.m_rho - 1;
    let (u, v) = (p.m_rho, p.m_rho + 1);
    let n = p.m_rho + 2;
    debug_assert_eq!(r_id(2) + 2, n - 2);

    let mut roles = vec![String::new(); n];
    for i in 0..ell {
        roles[x_id(i)] = format!("x_{}", i + 1);
        roles[y_id(i)] = format!("y_{}", i + 1);
        for j in 0..k {
            roles[z_id(i, j)] = format!("z_{}_{}", i + 1, j + 1);
        }
    }
    if big {
        for i in 0..3 {
            for j in 0..k {
                roles[zt_id(i, j)] = format!("z~_{}_{}", i + 1, j + 1);
            }
        }
    }
    for i in 0..p.s {
        roles[t_base + i] = format!("t_{}", i + 1);
    }
    for i in 0..3 {
        roles[s_id(i)] = format!("s_{}", i + 1);
        roles[r_id(i)] = format!("r_{}", i + 1);
    }
    roles[w_id] = "w".into();
    roles[u] = "u".into();
    roles[v] = "v".into();

    let mut at: Vec<Option<usize>> = vec![None; len];
    let mut put = |pos: usize, id: usize| -> Result<(), GadgetError> {
        if let Some(prev) = at[pos] {
            return Err(GadgetError::PlacementConflict(format!("vertices {prev} and {id} at position {pos}")));
        }
        at[pos] = Some(id);
        Ok(())
    };
    for i in 0..3 {
        put(lay.s[i], s_id(i))?;
        put(lay.r[i], r_id(i))?;
    }
    for (i, &pos) in lay.x.iter().enumerate() {
        put(pos, x_id(i))?;
    }
    for (idx, &pos) in lay.z.iter().enumerate() {
        put(pos, z_id(idx / k, idx % k))?;
    }
    put(lay.w, w_id)?;
    for (idx, &pos) in lay.zt.iter().enumerate() {
        put(pos, zt_id(idx / (k - 1), idx % (k - 1) + 1))?;
    }
    for (i, &pos) in lay.t_attach.iter().enumerate() {
        put(pos, t_base + i)?;
    }
    let start = lay.t_attach[2 * ell - 1];
    let mut next_t = 2 * ell;
    for step in 1..len {
        let pos = (start + step) % len;
        if at[pos].is_none() {
            if next_t >= p.s {
                return Err(GadgetError::Infeasible("more cycle positions than t vertices".into()));
            }
            at[pos] = Some(t_base + next_t);
            next_t += 1;
        }
    }
    if next_t != p.s {
        return Err(GadgetError::Infeasible(format!("{} t vertices left unplaced", p.s - next_t)));
    }
    let at: Vec<usize> = at.into_iter().map(|x| x.expect("every position filled")).collect();

    let mut cycle_position = vec![None; n];
    for (pos, &id) in at.iter().enumerate() {
        cycle_position[id] = Some(pos);
    }

    let mut ge: Vec<(usize, usize)> = (0..len).map(|i| (at[i], at[(i + 1) % len])).collect();
    for i in 0..3 {
        ge.push((u, s_id(i)));
        ge.push((v, r_id(i)));
    }
    for i in 0..ell {
        ge.push((y_id(i), at[lay.t_attach[2 * i]]));
        ge.push((y_id(i), at[lay.t_attach[2 * i + 1]]));
    }
    ge.push((s_id(0), at[lay.q]));
    for &(a, e) in &lay.chords {
        ge.push((at[a], at[e]));
    }
    if big {
        for i in 0..3 {
            ge.push((zt_id(i, 0), at[lay.tt[2 * i]]));
            ge.push((zt_id(i, 0), at[lay.tt[2 * i + 1]]));
        }
    }
    let g = SimpleGraph::new(n, &ge)?;
    if g.edge_count() != ge.len() {
        return Err(GadgetError::PlacementConflict("two construction steps produced the same edge of G".into()));
    }

    let mut a_h: Vec<usize> = vec![u, w_id];
    a_h.extend((0..ell).map(y_id));
    if big {
        a_h.extend((0..3).map(s_id));
    }
    a_h.sort_unstable();
    let b_h: Vec<usize> = (0..n).filter(|x| a_h.binary_search(x).is_err()).collect();
    let mut he = Vec::new();
    for i in 0..ell {
        he.push((u, x_id(i)));
        he.push((v, y_id(i)));
        for j in 0..k {
            he.push((y_id(i), z_id(i, j)));
        }
    }
    for &b in &b_h {
        he.push((w_id, b));
    }
    if big {
        for i in 0..3 {
            for j in 0..k {
                he.push((s_id(i), zt_id(i, j)));
            }
        }
    }
    let h = SimpleGraph::new(n, &he)?;

    // Sides of G: odd cycle positions form A_G, even ones (holding s_i) B_G.
    let mut in_a = vec![false; n];
    for (pos, &id) in at.iter().enumerate() {
        in_a[id] = pos % 2 == 1;
    }
    in_a[u] = true;
    in_a[v] = false;
    for i in 0..ell {
        in_a[y_id(i)] = lay.t_attach[2 * i] % 2 == 0;
    }
    if big {
        for i in 0..3 {
            in_a[zt_id(i, 0)] = lay.tt[2 * i] % 2 == 0;
        }
    }
    let a_g: Vec<usize> = (0..n).filter(|&x| in_a[x]).collect();
    let b_g: Vec<usize> = (0..n).filter(|&x| !in_a[x]).collect();

    let mut aliases = BTreeMap::new();
    aliases.insert("q".to_string(), at[lay.q]);
    for (i, &pos) in lay.tt.iter().enumerate() {
        aliases.insert(format!("t~_{}", i + 1), at[pos]);
    }

    let x: Vec<usize> = (0..ell).map(x_id).collect();
    let y: Vec<usize> = (0..ell).map(y_id).collect();
    let mut z: Vec<usize> = (0..ell * k).map(|i| z_id(i / k, i % k)).collect();
    if big {
        z.extend((0..3 * k).map(|i| zt_id(i / k, i % k)));
    }
    let s: Vec<usize> = (0..3).map(s_id).collect();
    let r: Vec<usize> = (0..3).map(r_id).collect();
    let mut gamma: Vec<usize> = x.iter().chain(&y).chain(&s).chain(&r).copied().collect();
    gamma.sort_unstable();
    let mut pset: Vec<usize> = y.clone();
    pset.extend([u, v]);
    for i in 0..3 {
        pset.extend((lay.s[i]..=lay.r[i]).map(|pos| at[pos]));
    }
    if big {
        pset.extend((0..3).map(|i| zt_id(i, 0)));
    }
    pset.sort_unstable();

    Ok(GadgetPair {
        params: Some(p.clone()),
        g,
        h,
        u,
        v,
        roles,
        aliases,
        cycle_position,
        a_g,
        b_g,
        a_h,
        b_h,
        sets: SpecialSets { x, y, z, s, r, gamma, p: pset },
        layout: Some(lay),
    })
}
