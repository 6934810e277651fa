//! Linear relations between orbit counts.
//!
//! For a target orbit of a k-node graphlet `G` we remove a well-chosen node
//! `y`, leaving the reduced graphlet `G'`. Summing `c(E) - c_{G'}(E)` over
//! every induced copy of `G'` around `x` and every attachment set `E` counts
//! each copy of `G` (and of its supergraphs on the same nodes) a fixed number
//! of times. Those multiplicities are the left-hand side coefficients.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::atlas::{Atlas, AtlasError, Graphlet, Numbering, PUBLISHED_MAX_NODES};
use crate::small::{mask_nodes, SmallGraph, MAX_NODES};

/// Node orbits or edge orbits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Node,
    Edge,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "node" => Ok(Mode::Node),
            "edge" => Ok(Mode::Edge),
            other => Err(format!("unknown mode `{other}` (expected `node` or `edge`)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Node => "node",
            Mode::Edge => "edge",
        })
    }
}

/// A node, or an unordered edge, of a small graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Anchor {
    Node(u8),
    Edge(u8, u8),
}

impl Anchor {
    pub fn mask(self) -> u8 {
        match self {
            Anchor::Node(x) => 1 << x,
            Anchor::Edge(a, b) => 1 << a | 1 << b,
        }
    }

    pub fn contains(self, v: u8) -> bool {
        self.mask() >> v & 1 == 1
    }

    fn mapped(self, map: &[Option<u8>; MAX_NODES]) -> Anchor {
        let m = |v: u8| map[v as usize].expect("anchor survives removal");
        match self {
            Anchor::Node(x) => Anchor::Node(m(x)),
            Anchor::Edge(a, b) => Anchor::Edge(m(a), m(b)),
        }
    }

    fn relabeled(self, pos: &[u8]) -> Anchor {
        match self {
            Anchor::Node(x) => Anchor::Node(pos[x as usize]),
            Anchor::Edge(a, b) => Anchor::Edge(pos[a as usize], pos[b as usize]),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquationError {
    #[error("no node of graphlet {graphlet} satisfies the removal criteria for anchor {anchor:?}")]
    NoSuitableY { graphlet: usize, anchor: Anchor },
    #[error("equation systems exist for 4 <= k <= {max}, got k = {k}")]
    UnsupportedSize { k: usize, max: usize },
    #[error("({0}, {1}) is not an edge of the graphlet")]
    NotAnEdge(u8, u8),
    #[error(transparent)]
    Atlas(#[from] AtlasError),
}

/// The node removed from a graphlet and what remains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YSelection {
    pub graphlet: usize,
    pub anchor: Anchor,
    pub y: u8,
    /// Graphlet id of `G - y`.
    pub reduced: usize,
    /// The anchor in the canonical labels of the reduced graphlet, moved to
    /// the representative of its orbit.
    pub reduced_anchor: Anchor,
    /// Orbit (node or edge, per mode) of the anchor in the reduced graphlet.
    pub anchor_orbit: usize,
    /// False only for the 4-cycle, where `N(y)` is two non-adjacent nodes.
    pub neighbors_connected: bool,
}

/// One attachment set of the extension family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionSet {
    /// Node mask in canonical labels of the reduced graphlet.
    pub nodes: u8,
    /// Common neighbours of `nodes` inside the reduced graphlet.
    pub correction: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtensionFamily {
    pub sets: Vec<ExtensionSet>,
}

/// Right-hand side: a sum over induced copies of `reduced` with the anchor
/// in `anchor_orbit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhsTemplate {
    pub reduced: usize,
    pub anchor: Anchor,
    pub anchor_orbit: usize,
    pub family: ExtensionFamily,
    /// Symmetry-breaking conditions `label(a) < label(b)` that pick one
    /// labelling per induced copy.
    pub guard: Vec<(u8, u8)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub target: usize,
    pub selection: YSelection,
    /// Orbit id to coefficient, target included.
    pub lhs: BTreeMap<usize, u64>,
    pub rhs: RhsTemplate,
}

impl Equation {
    pub fn target_coefficient(&self) -> u64 {
        self.lhs[&self.target]
    }
}

#[derive(Debug, Clone)]
pub struct EquationSystem {
    pub mode: Mode,
    pub k: usize,
    pub atlas: Arc<Atlas>,
    /// Sorted by target orbit.
    pub equations: Vec<Equation>,
    /// Orbit of the k-clique, counted directly.
    pub clique_orbit: usize,
}

fn min_degree(g: &SmallGraph, mask: u8) -> Option<u8> {
    mask_nodes(mask).min_by_key(|&v| (g.degree(v), v))
}

/// Breadth-first layers from the nodes in `start`.
fn layers(g: &SmallGraph, start: u8) -> Vec<u8> {
    let mut out = vec![start];
    let mut seen = start;
    loop {
        let last = *out.last().expect("nonempty");
        let next = mask_nodes(last).fold(0u8, |acc, v| acc | g.neighbors(v)) & !seen;
        if next == 0 {
            return out;
        }
        seen |= next;
        out.push(next);
    }
}

/// The three removal criteria: low degree, non-cut vertex, and a connected
/// neighbourhood when the degree is exactly `k - 2`.
pub fn meets_criteria(g: &SmallGraph, y: u8) -> bool {
    let k = g.node_count();
    let d = g.degree(y);
    d + 2 <= k && g.is_connected_subset(g.all_nodes() & !(1 << y)) && (d + 2 < k || g.is_connected_subset(g.neighbors(y)))
}

fn is_c4(g: &SmallGraph) -> bool {
    g.node_count() == 4 && g.edge_count() == 4 && (0..4).all(|v| g.degree(v) == 2)
}

fn check_size(atlas: &Atlas, k: usize) -> Result<(), EquationError> {
    if k < 4 || k > atlas.max_nodes() {
        return Err(EquationError::UnsupportedSize { k, max: atlas.max_nodes() });
    }
    Ok(())
}

/// Farthest-lowest-degree rule from `x`.
fn node_rule(g: &SmallGraph, x: u8) -> Option<u8> {
    let k = g.node_count();
    let layers = layers(g, 1 << x);
    let u = layers.len() - 1;
    if u == 0 {
        return None;
    }
    let lu = min_degree(g, layers[u])?;
    let mut y = lu;
    if g.degree(lu) == k - 2 && u == 2 && layers[2].count_ones() == 1 && k >= 5 {
        let l1 = min_degree(g, layers[1])?;
        if g.degree(l1) <= k - 2 {
            y = l1;
        }
    }
    meets_criteria(g, y).then_some(y)
}

/// Chooses `y` for the node orbit of `x` in `graphlet`.
pub fn select_y(atlas: &Atlas, graphlet: usize, x: u8) -> Result<YSelection, EquationError> {
    let gl = atlas.graphlet(graphlet);
    check_size(atlas, gl.node_count())?;
    let anchor = Anchor::Node(x);
    match node_rule(&gl.graph, x) {
        Some(y) => Ok(reduce(atlas, gl, anchor, y, true)),
        None => Err(EquationError::NoSuitableY { graphlet, anchor }),
    }
}

/// Chooses `y` for the edge orbit of `(xa, xb)`; never an endpoint.
pub fn select_y_edge(atlas: &Atlas, graphlet: usize, xa: u8, xb: u8) -> Result<YSelection, EquationError> {
    let gl = atlas.graphlet(graphlet);
    check_size(atlas, gl.node_count())?;
    let g = &gl.graph;
    if xa == xb || !g.has_edge(xa, xb) {
        return Err(EquationError::NotAnEdge(xa, xb));
    }
    let anchor = Anchor::Edge(xa, xb);
    if let Some(y) = node_rule(g, xa).filter(|&y| y != xb) {
        return Ok(reduce(atlas, gl, anchor, y, true));
    }
    // Scan outward from xa, skipping the endpoints.
    for layer in layers(g, 1 << xa).into_iter().skip(1) {
        let candidates = layer & !(1 << xb);
        let ok = mask_nodes(candidates).filter(|&v| meets_criteria(g, v)).fold(0u8, |m, v| m | 1 << v);
        if let Some(y) = min_degree(g, ok) {
            return Ok(reduce(atlas, gl, anchor, y, true));
        }
    }
    if is_c4(g) {
        let y = mask_nodes(g.neighbors(xa)).find(|&v| v != xb).expect("C4 node has two neighbours");
        return Ok(reduce(atlas, gl, anchor, y, false));
    }
    Err(EquationError::NoSuitableY { graphlet, anchor })
}

fn reduce(atlas: &Atlas, gl: &Graphlet, anchor: Anchor, y: u8, neighbors_connected: bool) -> YSelection {
    let (h, map) = gl.graph.remove_node(y);
    let (reduced, canon) = atlas.lookup(&h).expect("G - y is connected");
    let red = atlas.graphlet(reduced);
    let (reduced_anchor, anchor_orbit) = match anchor.mapped(&map).relabeled(&canon) {
        Anchor::Node(x) => {
            let orbit = red.node_orbits[x as usize];
            (Anchor::Node(atlas.orbit(orbit).representative), orbit)
        }
        Anchor::Edge(a, b) => {
            let orbit = red.edge_orbit(a, b).expect("anchor edge survives");
            let (ra, rb) = atlas.edge_orbit(orbit).representative;
            (Anchor::Edge(ra, rb), orbit)
        }
    };
    YSelection { graphlet: gl.id, anchor, y, reduced, reduced_anchor, anchor_orbit, neighbors_connected }
}

/// Orbit of `anchor` in the graphlet isomorphic to `g`.
fn anchor_orbit(atlas: &Atlas, g: &SmallGraph, anchor: Anchor) -> Option<(usize, usize)> {
    let (id, canon) = atlas.lookup(g)?;
    let gl = atlas.graphlet(id);
    let orbit = match anchor.relabeled(&canon) {
        Anchor::Node(x) => gl.node_orbits[x as usize],
        Anchor::Edge(a, b) => gl.edge_orbit(a, b)?,
    };
    Some((id, orbit))
}

/// All attachment sets `E` of the reduced graphlet that rebuild the target
/// orbit when a new node is joined to exactly `E`.
pub fn extension_sets(atlas: &Atlas, sel: &YSelection, target: usize) -> ExtensionFamily {
    let red = &atlas.graphlet(sel.reduced).graph;
    let sets = (1..=red.all_nodes())
        .filter(|&e| anchor_orbit(atlas, &red.with_new_node(e), sel.reduced_anchor) == Some((sel.graphlet, target)))
        .map(|e| ExtensionSet { nodes: e, correction: common_neighbors(red, e) })
        .collect();
    ExtensionFamily { sets }
}

fn common_neighbors(g: &SmallGraph, set: u8) -> u32 {
    (0..g.node_count() as u8).filter(|&v| g.neighbors(v) & set == set).count() as u32
}

/// Left-hand side coefficients.
pub fn lhs_terms(atlas: &Atlas, sel: &YSelection, family: &ExtensionFamily) -> BTreeMap<usize, u64> {
    let red = &atlas.graphlet(sel.reduced).graph;
    let mut out = BTreeMap::new();
    for e in &family.sets {
        let rest = red.all_nodes() & !e.nodes;
        // every F ⊆ rest, including the empty set
        let mut f = rest;
        loop {
            let star = red.with_new_node(e.nodes | f);
            let (_, orbit) = anchor_orbit(atlas, &star, sel.reduced_anchor).expect("extension is connected");
            out.entry(orbit).or_insert_with(|| overcount(red, sel, family, &star));
            if f == 0 {
                break;
            }
            f = (f - 1) & rest;
        }
    }
    out
}

/// How many (copy of G', extra node, E) triples the right-hand side finds
/// inside one occurrence of `star`.
fn overcount(red: &SmallGraph, sel: &YSelection, family: &ExtensionFamily, star: &SmallGraph) -> u64 {
    let anchor = sel.reduced_anchor;
    let mut total = 0u64;
    for z in 0..star.node_count() as u8 {
        if anchor.contains(z) {
            continue;
        }
        let (h, map) = star.remove_node(z);
        let ha = anchor.mapped(&map);
        let allowed = |v: u8, w: u8| ha.contains(v) == anchor.contains(w);
        let Some(psi) = h.find_isomorphism(red, &allowed) else {
            continue;
        };
        // a node anchor must land on itself; an edge anchor may swap ends
        if let (Anchor::Node(a), Anchor::Node(b)) = (ha, anchor) {
            debug_assert_eq!(psi[a as usize], b);
        }
        let nz = mask_nodes(star.neighbors(z))
            .map(|v| psi[map[v as usize].expect("neighbour is not z") as usize])
            .fold(0u8, |m, v| m | 1 << v);
        total += family.sets.iter().filter(|e| e.nodes & !nz == 0).count() as u64;
    }
    total
}

/// Lex-leader conditions from the stabiliser chain of the anchor.
fn guard(red: &Graphlet, anchor: Anchor) -> Vec<(u8, u8)> {
    let fixes = |a: &[u8; MAX_NODES]| mask_nodes(anchor.mask()).all(|v| anchor.contains(a[v as usize]));
    let mut group: Vec<[u8; MAX_NODES]> = red.automorphisms.iter().copied().filter(|a| fixes(a)).collect();
    let mut out = Vec::new();
    for v in 0..red.node_count() as u8 {
        let mut images: Vec<u8> = group.iter().map(|a| a[v as usize]).collect();
        images.sort_unstable();
        images.dedup();
        out.extend(images.into_iter().filter(|&w| w != v).map(|w| (v, w)));
        group.retain(|a| a[v as usize] == v);
    }
    out
}

fn equation(atlas: &Atlas, sel: YSelection, target: usize) -> Equation {
    let family = extension_sets(atlas, &sel, target);
    let lhs = lhs_terms(atlas, &sel, &family);
    let rhs = RhsTemplate {
        reduced: sel.reduced,
        anchor: sel.reduced_anchor,
        anchor_orbit: sel.anchor_orbit,
        guard: guard(atlas.graphlet(sel.reduced), sel.reduced_anchor),
        family,
    };
    Equation { target, selection: sel, lhs, rhs }
}

/// Builds the system for `k`-node orbits, sharing `atlas`.
pub fn build_system(atlas: &Arc<Atlas>, k: usize, mode: Mode) -> Result<EquationSystem, EquationError> {
    check_size(atlas, k)?;
    let mut equations = Vec::new();
    let mut clique_orbit = None;
    for gl in atlas.graphlets_of_size(k) {
        if gl.is_complete() {
            clique_orbit = Some(match mode {
                Mode::Node => gl.node_orbits[0],
                Mode::Edge => gl.edge_orbits[0],
            });
            continue;
        }
        match mode {
            Mode::Node => {
                let mut done = Vec::new();
                for x in 0..k as u8 {
                    let orbit = gl.node_orbits[x as usize];
                    if done.contains(&orbit) {
                        continue;
                    }
                    done.push(orbit);
                    let sel = if is_c4(&gl.graph) {
                        let y = mask_nodes(gl.graph.neighbors(x)).next().expect("C4 node has neighbours");
                        reduce(atlas, gl, Anchor::Node(x), y, false)
                    } else {
                        select_y(atlas, gl.id, x)?
                    };
                    equations.push(equation(atlas, sel, orbit));
                }
            }
            Mode::Edge => {
                let mut done = Vec::new();
                for (i, &(a, b)) in gl.edges.iter().enumerate() {
                    let orbit = gl.edge_orbits[i];
                    if done.contains(&orbit) {
                        continue;
                    }
                    done.push(orbit);
                    let sel = select_y_edge(atlas, gl.id, a, b)?;
                    equations.push(equation(atlas, sel, orbit));
                }
            }
        }
    }
    equations.sort_by_key(|e| e.target);
    Ok(EquationSystem {
        mode,
        k,
        atlas: Arc::clone(atlas),
        equations,
        clique_orbit: clique_orbit.expect("the k-clique is a graphlet"),
    })
}

impl EquationSystem {
    /// Builds the system with a fresh atlas on `k` nodes.
    pub fn new(k: usize, mode: Mode) -> Result<EquationSystem, EquationError> {
        let atlas = Arc::new(Atlas::build(k).map_err(EquationError::Atlas)?);
        build_system(&atlas, k, mode)
    }

    /// The equation whose target is `orbit`.
    pub fn equation_for(&self, orbit: usize) -> Option<&Equation> {
        self.equations.iter().find(|e| e.target == orbit)
    }

    fn orbit_name(&self, orbit: usize, numbering: Numbering) -> String {
        match self.mode {
            Mode::Node => format!("o{}", self.atlas.orbit_label(orbit, numbering)),
            Mode::Edge => format!("e{orbit}"),
        }
    }

    fn effective_numbering(&self, numbering: Numbering) -> Numbering {
        if self.k > PUBLISHED_MAX_NODES { Numbering::Internal } else { numbering }
    }

    /// One line per orbit, clique last.
    pub fn dump(&self, numbering: Numbering) -> String {
        let numbering = self.effective_numbering(numbering);
        let mut lines: Vec<(usize, String)> = self
            .equations
            .iter()
            .map(|e| (self.label(e.target, numbering), self.render(e, numbering)))
            .collect();
        let clique = self.label(self.clique_orbit, numbering);
        lines.push((
            clique,
            format!("{} {}: direct clique enumeration", self.kind(), self.orbit_name(self.clique_orbit, numbering)[1..].to_owned()),
        ));
        lines.sort_by_key(|(l, _)| *l);
        let mut out = String::new();
        for (_, line) in lines {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    fn kind(&self) -> &'static str {
        match self.mode {
            Mode::Node => "orbit",
            Mode::Edge => "edge orbit",
        }
    }

    fn label(&self, orbit: usize, numbering: Numbering) -> usize {
        match self.mode {
            Mode::Node => self.atlas.orbit_label(orbit, numbering),
            Mode::Edge => orbit,
        }
    }

    /// Human-readable form of one equation.
    pub fn render(&self, eq: &Equation, numbering: Numbering) -> String {
        let numbering = self.effective_numbering(numbering);
        let mut terms: Vec<(bool, usize, String)> = eq
            .lhs
            .iter()
            .map(|(&o, &c)| (o != eq.target, self.label(o, numbering), format!("{c}*{}", self.orbit_name(o, numbering))))
            .collect();
        terms.sort();
        let lhs: Vec<String> = terms.into_iter().map(|t| t.2).collect();

        let red = self.atlas.graphlet(eq.rhs.reduced);
        let names = node_names(red.node_count(), eq.rhs.anchor);
        let anchor = match eq.rhs.anchor {
            Anchor::Node(_) => "x".to_owned(),
            Anchor::Edge(..) => "(xa,xb)".to_owned(),
        };
        let sums: Vec<String> = eq
            .rhs
            .family
            .sets
            .iter()
            .map(|e| {
                let mut members: Vec<u8> = mask_nodes(e.nodes).collect();
                members.sort_by_key(|&v| (!eq.rhs.anchor.contains(v), v));
                let set: Vec<&str> = members.iter().map(|&v| names[v as usize].as_str()).collect();
                match e.correction {
                    0 => format!("c({})", set.join(",")),
                    c => format!("(c({}) - {c})", set.join(",")),
                }
            })
            .collect();

        let mut line = format!(
            "{} {}: {} = sum over {}, {anchor} in {}, of {}",
            self.kind(),
            &self.orbit_name(eq.target, numbering)[1..],
            lhs.join(" + "),
            self.atlas.graphlet_name(eq.rhs.reduced, numbering),
            self.orbit_name(eq.rhs.anchor_orbit, numbering),
            sums.join(" + "),
        );
        let guard: Vec<String> =
            eq.rhs.guard.iter().map(|&(a, b)| format!("{} < {}", names[a as usize], names[b as usize])).collect();
        let _ = write!(line, " [guard: {}]", if guard.is_empty() { "none".to_owned() } else { guard.join(", ") });
        line
    }
}

/// `x` (or `xa`, `xb`) for anchors, `x1, x2, ...` for the rest.
fn node_names(k: usize, anchor: Anchor) -> Vec<String> {
    let mut next = 1;
    (0..k as u8)
        .map(|v| match anchor {
            Anchor::Node(x) if x == v => "x".to_owned(),
            Anchor::Edge(a, _) if a == v => "xa".to_owned(),
            Anchor::Edge(_, b) if b == v => "xb".to_owned(),
            _ => {
                next += 1;
                format!("x{}", next - 1)
            }
        })
        .collect()
}
