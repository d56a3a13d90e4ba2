use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::tqft::LocalCrossing;

/// An oriented link diagram: crossings seen with both strands pointing up, plus bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    /// PD code with labels renumbered to `0..n_edges` (empty for braid input without crossings).
    pub pd: Vec<[usize; 4]>,
    pub crossings: Vec<LocalCrossing>,
    /// Edges `0..n_edges`; edges not touching any crossing are crossingless circles.
    pub n_edges: usize,
    /// Edges of each component in orientation order, starting at the base point.
    pub components: Vec<Vec<usize>>,
    /// Framing number of each component (its self-writhe unless overridden).
    pub framing: Vec<i64>,
    /// Crossing signs when the diagram is the closure of a 2-strand braid.
    pub two_strand: Option<Vec<i8>>,
    /// Strand count and word when the diagram was built as a braid closure.
    pub braid: Option<(usize, Vec<i32>)>,
}

impl LinkDiagram {
    pub fn empty() -> LinkDiagram {
        LinkDiagram { pd: vec![], crossings: vec![], n_edges: 0, components: vec![], framing: vec![], two_strand: None, braid: None }
    }

    /// Crossingless unlink with `k` components.
    pub fn unlink(k: usize) -> LinkDiagram {
        let mut d = LinkDiagram::empty();
        d.n_edges = k;
        d.components = (0..k).map(|e| vec![e]).collect();
        d.framing = vec![0; k];
        d
    }

    /// The diagram with a crossingless unknot added as a new last edge and component.
    pub fn with_unknot(&self) -> LinkDiagram {
        let mut d = self.clone();
        d.components.push(vec![d.n_edges]);
        d.n_edges += 1;
        d.framing.push(0);
        d.two_strand = None;
        d.braid = None;
        d
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.len() - self.n_plus()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub fn component_of_edge(&self, e: usize) -> usize {
        self.components.iter().position(|c| c.contains(&e)).expect("edge belongs to a component")
    }

    pub fn base_point(&self, comp: usize) -> usize {
        self.components[comp][0]
    }

    /// Total linking number, `(writhe - Σ self-writhe) / 2`.
    pub fn linking(&self) -> i64 {
        (self.writhe() - self.self_writhe().iter().sum::<i64>()) / 2
    }

    /// Self-writhe of each component.
    pub fn self_writhe(&self) -> Vec<i64> {
        let mut w = vec![0; self.components.len()];
        for c in &self.crossings {
            let (a, b) = (self.component_of_edge(c.bl), self.component_of_edge(c.br));
            if a == b {
                w[a] += c.sign as i64;
            }
        }
        w
    }

    /// Parses a PD code `X[a,b,c,d] ...` (KnotAtlas convention: `a` is the incoming under-edge,
    /// labels go counterclockwise). Labels are renumbered in order of first appearance.
    /// A trailing `+O<k>` (as written by [`Self::normalized`]) adds `k` crossingless circles.
    pub fn from_pd(text: &str) -> Result<LinkDiagram> {
        if let Some((pd, k)) = text.trim().rsplit_once("+O") {
            let k: usize = k.trim().parse().map_err(|_| Error::Parse(format!("bad circle count {k:?}")))?;
            return Ok((0..k).fold(LinkDiagram::from_pd(pd)?, |d, _| d.with_unknot()));
        }
        let raw = parse_pd_tokens(text)?;
        if raw.is_empty() {
            return Ok(LinkDiagram::empty());
        }
        let mut count: BTreeMap<i64, usize> = BTreeMap::new();
        for x in &raw {
            for &l in x {
                *count.entry(l).or_default() += 1;
            }
        }
        if let Some((l, _)) = count.iter().find(|(_, &c)| c != 2) {
            return Err(Error::Parse(format!("edge label {l} must appear exactly twice")));
        }
        let mut relabel = BTreeMap::new();
        for x in &raw {
            for &l in x {
                let next = relabel.len();
                relabel.entry(l).or_insert(next);
            }
        }
        let pd: Vec<[usize; 4]> = raw.iter().map(|x| x.map(|l| relabel[&l])).collect();
        let n_edges = relabel.len();
        check_planar(&pd, n_edges)?;
        let heads = over_orientation(&pd, n_edges, &raw)?;
        let crossings = pd
            .iter()
            .zip(&heads)
            .map(|(&[i, j, k, l], &l_to_j)| {
                if l_to_j {
                    LocalCrossing { sign: 1, bl: l, br: i, tl: k, tr: j }
                } else {
                    LocalCrossing { sign: -1, bl: i, br: j, tl: l, tr: k }
                }
            })
            .collect();
        let mut d = LinkDiagram { pd, crossings, n_edges, components: vec![], framing: vec![], two_strand: None, braid: None };
        d.components = trace_components(&d.crossings, n_edges)?;
        d.framing = d.self_writhe();
        Ok(d)
    }

    /// Trace closure of a braid word on `strands` strands; `word` lists signed generators
    /// (`i` for σ_i, `-i` for its inverse; σ_i crosses strand positions `i-1` and `i`, the
    /// positive one going over from lower left to upper right).
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<LinkDiagram> {
        if strands == 0 {
            return Err(Error::Parse("braid needs at least one strand".into()));
        }
        for &g in word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::Parse(format!("generator s{g} out of range for {strands} strands")));
            }
        }
        let mut next = strands;
        let mut cur: Vec<usize> = (0..strands).collect();
        let mut crossings = Vec::new();
        for &g in word {
            let p = g.unsigned_abs() as usize - 1;
            let (tl, tr) = (next, next + 1);
            next += 2;
            crossings.push(LocalCrossing { sign: g.signum() as i8, bl: cur[p], br: cur[p + 1], tl, tr });
            cur[p] = tl;
            cur[p + 1] = tr;
        }
        // closure: the final edge at position p is the initial edge p
        let mut rename: BTreeMap<usize, usize> = BTreeMap::new();
        for (p, &e) in cur.iter().enumerate() {
            if e != p {
                rename.insert(e, p);
            }
        }
        let rn = |e: usize| *rename.get(&e).unwrap_or(&e);
        for c in &mut crossings {
            c.tl = rn(c.tl);
            c.tr = rn(c.tr);
        }
        // compact labels
        let mut used: BTreeSet<usize> = (0..strands).collect();
        for c in &crossings {
            used.extend([c.bl, c.br, c.tl, c.tr]);
        }
        let compact: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        for c in &mut crossings {
            c.bl = compact[&c.bl];
            c.br = compact[&c.br];
            c.tl = compact[&c.tl];
            c.tr = compact[&c.tr];
        }
        let n_edges = compact.len();
        let two_strand = (strands == 2).then(|| crossings.iter().map(|c| c.sign).collect());
        let pd = crossings.iter().map(local_to_pd).collect();
        let mut d = LinkDiagram {
            pd,
            crossings,
            n_edges,
            components: vec![],
            framing: vec![],
            two_strand,
            braid: Some((strands, word.to_vec())),
        };
        d.components = trace_components(&d.crossings, n_edges)?;
        d.framing = d.self_writhe();
        Ok(d)
    }

    /// Parses `s1 s-1 s2 ...` (also accepting bare signed integers).
    pub fn parse_braid_word(text: &str) -> Result<Vec<i32>> {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let s = t.strip_prefix('s').or_else(|| t.strip_prefix('σ')).unwrap_or(t);
                s.parse::<i32>().map_err(|_| Error::Parse(format!("bad braid generator {t:?}")))
            })
            .collect()
    }

    /// The mirror image: every crossing changes sign.
    pub fn mirror(&self) -> LinkDiagram {
        let mut d = self.clone();
        for c in &mut d.crossings {
            // same local picture with over and under exchanged
            let LocalCrossing { sign, bl, br, tl, tr } = c.clone();
            *c = LocalCrossing { sign: -sign, bl, br, tl, tr };
        }
        d.pd = d.crossings.iter().map(local_to_pd).collect();
        d.two_strand = self.two_strand.as_ref().map(|s| s.iter().map(|x| -x).collect());
        d.braid = self.braid.as_ref().map(|(k, w)| (*k, w.iter().map(|g| -g).collect()));
        d.framing = self.framing.iter().map(|f| -f).collect();
        d
    }

    /// Canonical text of the normalized diagram: the PD code with labels renumbered in order
    /// of first appearance, so that parsing the text reproduces it.
    pub fn normalized(&self) -> String {
        let mut label = BTreeMap::new();
        let mut s = String::new();
        for x in &self.pd {
            let l = x.map(|e| {
                let next = label.len() + 1;
                *label.entry(e).or_insert(next)
            });
            s.push_str(&format!("X[{},{},{},{}]", l[0], l[1], l[2], l[3]));
        }
        let free = self.n_edges - self.touched_edges();
        if free > 0 {
            s.push_str(&format!("+O{free}"));
        }
        s
    }

    fn touched_edges(&self) -> usize {
        let mut t = BTreeSet::new();
        for c in &self.crossings {
            t.extend([c.bl, c.br, c.tl, c.tr]);
        }
        t.len()
    }

    /// FNV-1a hash of [`Self::normalized`], stable across platforms.
    pub fn hash(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.normalized().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

/// PD tuple of a local crossing (incoming under-edge first, counterclockwise).
fn local_to_pd(c: &LocalCrossing) -> [usize; 4] {
    if c.sign > 0 {
        [c.br, c.tr, c.tl, c.bl]
    } else {
        [c.bl, c.br, c.tr, c.tl]
    }
}

/// For each crossing, whether the over-strand runs from position 3 to position 1. Directions
/// propagate from the under-strands along the edges; over-only loops fall back to label order.
fn over_orientation(pd: &[[usize; 4]], n_edges: usize, raw: &[[i64; 4]]) -> Result<Vec<bool>> {
    let mut ends: Vec<Vec<(usize, usize)>> = vec![vec![]; n_edges];
    for (c, x) in pd.iter().enumerate() {
        for (p, &e) in x.iter().enumerate() {
            ends[e].push((c, p));
        }
    }
    let other = |e: usize, d: (usize, usize)| if ends[e][0] == d { ends[e][1] } else { ends[e][0] };
    let mut head: Vec<Option<(usize, usize)>> = vec![None; n_edges];
    let mut out: Vec<Option<bool>> = vec![None; pd.len()];
    for (c, x) in pd.iter().enumerate() {
        head[x[0]] = Some((c, 0));
        head[x[2]] = Some(other(x[2], (c, 2)));
    }
    loop {
        let mut progress = false;
        for c in 0..pd.len() {
            if out[c].is_some() {
                continue;
            }
            let (j, l) = (pd[c][1], pd[c][3]);
            let dir = match (head[j], head[l]) {
                (Some(h), _) => Some(h != (c, 1)),
                (_, Some(h)) => Some(h == (c, 3)),
                _ => None,
            };
            if let Some(l_to_j) = dir {
                out[c] = Some(l_to_j);
                let (tail, inc) = if l_to_j { ((c, 1), (l, (c, 3))) } else { ((c, 3), (j, (c, 1))) };
                let out_edge = if l_to_j { j } else { l };
                head[out_edge] = Some(other(out_edge, tail));
                head[inc.0] = Some(inc.1);
                progress = true;
            }
        }
        if out.iter().all(|o| o.is_some()) {
            break;
        }
        if !progress {
            // a component that only passes over: orient by consecutive labels
            let c = out.iter().position(|o| o.is_none()).unwrap();
            let [_, j, _, l] = raw[c];
            if j == l {
                return Err(Error::Parse(format!("ambiguous orientation at crossing {}", c + 1)));
            }
            let l_to_j = j == l + 1 || l > j + 1;
            let (jj, ll) = (pd[c][1], pd[c][3]);
            if l_to_j {
                head[ll] = Some((c, 3));
                head[jj] = Some(other(jj, (c, 1)));
            } else {
                head[jj] = Some((c, 1));
                head[ll] = Some(other(ll, (c, 3)));
            }
        }
    }
    // consistency: every edge's head is recorded once
    Ok(out.into_iter().map(|o| o.unwrap()).collect())
}

fn parse_pd_tokens(text: &str) -> Result<Vec<[i64; 4]>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    if rest.starts_with("PD[") && rest.ends_with(']') {
        rest = &rest[3..rest.len() - 1];
    }
    let mut it = rest;
    loop {
        it = it.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if it.is_empty() {
            break;
        }
        let body = it.strip_prefix("X[").ok_or_else(|| Error::Parse(format!("expected X[...] at {:?}", truncate(it))))?;
        let end = body.find(']').ok_or_else(|| Error::Parse("unterminated X[".into()))?;
        let nums: Vec<i64> = body[..end]
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad edge label {t:?}"))))
            .collect::<Result<_>>()?;
        if nums.len() != 4 {
            return Err(Error::Parse(format!("crossing X[{}] needs 4 labels", &body[..end])));
        }
        out.push([nums[0], nums[1], nums[2], nums[3]]);
        it = &body[end + 1..];
    }
    Ok(out)
}

fn truncate(s: &str) -> String {
    s.chars().take(12).collect()
}

/// Euler characteristic test: the faces of the 4-valent graph, traced by turning at every
/// crossing, must satisfy `V - E + F = 2` per connected piece.
fn check_planar(pd: &[[usize; 4]], n_edges: usize) -> Result<()> {
    let mut ends: Vec<Vec<(usize, usize)>> = vec![vec![]; n_edges];
    for (c, x) in pd.iter().enumerate() {
        for (p, &e) in x.iter().enumerate() {
            ends[e].push((c, p));
        }
    }
    let other = |c: usize, p: usize| -> (usize, usize) {
        let e = pd[c][p];
        let [a, b] = [ends[e][0], ends[e][1]];
        if a == (c, p) {
            b
        } else {
            a
        }
    };
    let darts = 4 * pd.len();
    let mut seen = vec![false; darts];
    let mut faces = 0;
    for start in 0..darts {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            let (c, p) = other(d / 4, d % 4);
            d = 4 * c + (p + 1) % 4;
        }
    }
    // connected pieces of the projection
    let mut parent: Vec<usize> = (0..pd.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for e in &ends {
        let (a, b) = (find(&mut parent, e[0].0), find(&mut parent, e[1].0));
        parent[a] = b;
    }
    let pieces = (0..pd.len()).filter(|&x| find(&mut parent, x) == x).count() as i64;
    let chi = pd.len() as i64 - 2 * pd.len() as i64 + faces as i64;
    if chi != 2 * pieces {
        return Err(Error::NonPlanar(format!("V - E + F = {chi}, expected {}", 2 * pieces)));
    }
    Ok(())
}

fn trace_components(crossings: &[LocalCrossing], n_edges: usize) -> Result<Vec<Vec<usize>>> {
    let mut next = vec![usize::MAX; n_edges];
    for c in crossings {
        let (over_in, over_out, under_in, under_out) = (c.bl, c.tr, c.br, c.tl);
        for (a, b) in [(over_in, over_out), (under_in, under_out)] {
            if next[a] != usize::MAX {
                return Err(Error::Parse(format!("edge {} enters two crossings", a + 1)));
            }
            next[a] = b;
        }
    }
    let mut seen = vec![false; n_edges];
    let mut comps = Vec::new();
    for s in 0..n_edges {
        if seen[s] {
            continue;
        }
        let mut comp = vec![];
        let mut e = s;
        while !seen[e] {
            seen[e] = true;
            comp.push(e);
            if next[e] == usize::MAX {
                break;
            }
            e = next[e];
        }
        comps.push(comp);
    }
    Ok(comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_pd() {
        let d = LinkDiagram::from_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(d.crossings.len(), 2);
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.crossings[0].sign, d.crossings[1].sign);
    }

    #[test]
    fn trefoil_pd_is_left_handed() {
        let d = LinkDiagram::from_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert_eq!(d.writhe(), -3);
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.framing, vec![-3]);
    }

    #[test]
    fn braid_closures() {
        let t = LinkDiagram::from_braid(2, &[1, 1, 1]).unwrap();
        assert_eq!((t.components.len(), t.writhe()), (1, 3));
        let h = LinkDiagram::from_braid(2, &[1, 1]).unwrap();
        assert_eq!(h.components.len(), 2);
        assert_eq!(h.framing, vec![0, 0]);
        let u = LinkDiagram::from_braid(1, &[]).unwrap();
        assert_eq!((u.n_edges, u.components.len()), (1, 1));
        assert!(LinkDiagram::from_braid(2, &[2]).is_err());
        let f8 = LinkDiagram::from_braid(3, &[1, -2, 1, -2]).unwrap();
        assert_eq!((f8.components.len(), f8.writhe()), (1, 0));
    }

    #[test]
    fn braid_pd_round_trip() {
        for (s, w) in [(2usize, vec![1, 1, 1]), (3, vec![1, -2, 1, -2]), (2, vec![1, -1])] {
            let b = LinkDiagram::from_braid(s, &w).unwrap();
            let text = b.normalized();
            let p = LinkDiagram::from_pd(&text).unwrap();
            assert_eq!(p.writhe(), b.writhe());
            assert_eq!(p.components.len(), b.components.len());
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(LinkDiagram::from_pd("X[1,2,3]").is_err());
        assert!(LinkDiagram::from_pd("X[1,2,3,4]").is_err());
        assert_eq!(LinkDiagram::from_pd("").unwrap(), LinkDiagram::empty());
    }
}
