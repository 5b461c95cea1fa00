use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::mobius::{classify_trace, Isometry, Mobius};
use super::pants::PantsGroup;
use super::word::{inverse_letter, letter_gen, letter_sign, CyclicWord, Letter, Syllable, LETTERS};
use crate::error::{Error, Result};

/// A free-group word and its reverse trace the same closed curve in opposite
/// directions; both are hyperbolic conjugacy classes of the group, so every
/// unoriented geodesic stands for this many oriented classes.
pub const ORIENTATIONS: u64 = 2;

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    /// Cap on the number of primitive unoriented classes.
    pub budget: usize,
    /// Extra displacement allowed beyond `T` when exploring the orbit tree.
    pub radius_margin: f64,
    pub workers: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            budget: 1_000_000,
            radius_margin: 2.0,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

/// One closed geodesic (up to orientation), possibly an iterate of a primitive one.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicClass {
    /// Canonical unoriented representative of the primitive root.
    pub word: CyclicWord,
    pub length: f64,
    pub primitive: bool,
    pub k: u32,
    /// Whether the primitive root is a boundary curve of the pants.
    pub boundary: bool,
}

#[derive(Clone, Debug)]
pub struct LengthSpectrum {
    pub t: f64,
    /// Primitive classes and their iterates with length ≤ `t`, ascending.
    pub classes: Vec<GeodesicClass>,
    pub nodes_visited: u64,
    pub radius: f64,
}

impl LengthSpectrum {
    pub fn primitive(&self) -> impl Iterator<Item = &GeodesicClass> {
        self.classes.iter().filter(|c| c.primitive)
    }

    /// Oriented closed geodesics (primitive and iterates) with length in `[a, b]`.
    pub fn count_in(&self, a: f64, b: f64) -> u64 {
        ORIENTATIONS * self.classes.iter().filter(|c| c.length >= a && c.length <= b).count() as u64
    }

    pub fn systole(&self) -> Option<f64> {
        self.classes.first().map(|c| c.length)
    }

    /// Restriction to lengths ≤ `t` (must not exceed the enumerated range).
    pub fn truncated(&self, t: f64) -> LengthSpectrum {
        LengthSpectrum {
            t: t.min(self.t),
            classes: self.classes.iter().filter(|c| c.length <= t).cloned().collect(),
            nodes_visited: self.nodes_visited,
            radius: self.radius,
        }
    }
}

/// Length of the geodesic in the class of `word`, evaluated on the canonical
/// letters in the base-point frame (better conditioned than the raw generators).
pub fn class_length(g: &PantsGroup, word: &CyclicWord) -> Isometry {
    classify_trace(g.evaluate_framed(&word.letters()).trace())
}

struct Walk<'a> {
    gens: &'a [Mobius; 4],
    /// Prune when `‖M‖²/2 = cosh d(o, Mo)` exceeds this.
    cosh_radius: f64,
    max_len: usize,
    node_cap: u64,
    spent: Option<&'a AtomicU64>,
}

struct Node<'a> {
    letters: &'a [Letter],
    syllables: &'a [Syllable],
    framed: &'a Mobius,
}

impl Walk<'_> {
    fn inside(&self, m: &Mobius, len: usize) -> bool {
        len <= self.max_len && m.frob_sq() * 0.5 <= self.cosh_radius
    }

    /// Depth-first over reduced words extending `prefix`, visiting every node
    /// (prefix included) that stays inside the pruning region.
    fn run(&self, prefix: &[Letter], visit: &mut dyn FnMut(Node<'_>) -> Result<()>) -> Result<u64> {
        let mut letters: Vec<Letter> = Vec::with_capacity(64);
        let mut syl: Vec<Syllable> = Vec::with_capacity(64);
        let mut mats: Vec<Mobius> = Vec::with_capacity(64);
        let mut m = Mobius::IDENTITY;
        for &l in prefix {
            m = m * self.gens[l as usize];
            push_letter(&mut letters, &mut syl, l);
            mats.push(m);
            if !self.inside(&m, letters.len()) {
                return Ok(0);
            }
        }
        visit(Node { letters: &letters, syllables: &syl, framed: &m })?;
        let mut nodes = 1u64;
        let base = letters.len();
        let mut next: Vec<u8> = vec![0];
        while let Some(ci) = next.last_mut() {
            if *ci as usize >= LETTERS.len() {
                next.pop();
                if letters.len() > base {
                    pop_letter(&mut letters, &mut syl);
                    mats.pop();
                }
                continue;
            }
            let l = *ci;
            *ci += 1;
            let last = *letters.last().expect("walk starts from a nonempty prefix");
            if l == inverse_letter(last) {
                continue;
            }
            let mut child = *mats.last().unwrap() * self.gens[l as usize];
            if (letters.len() + 1) % 16 == 0 {
                child = child.renormalized();
            }
            if !self.inside(&child, letters.len() + 1) {
                continue;
            }
            push_letter(&mut letters, &mut syl, l);
            mats.push(child);
            nodes += 1;
            let total = match self.spent {
                Some(c) if nodes % 4096 == 0 => c.fetch_add(4096, Ordering::Relaxed) + 4096,
                Some(_) => 0,
                None => nodes,
            };
            if total > self.node_cap {
                return Err(Error::Budget { detail: format!("orbit walk exceeded {} nodes", self.node_cap) });
            }
            visit(Node { letters: &letters, syllables: &syl, framed: &child })?;
            next.push(0);
        }
        Ok(nodes)
    }
}

fn push_letter(letters: &mut Vec<Letter>, syl: &mut Vec<Syllable>, l: Letter) {
    letters.push(l);
    let (g, s) = (letter_gen(l), letter_sign(l));
    match syl.last_mut() {
        Some(last) if last.gen == g && last.exp.signum() == s => last.exp += s,
        _ => syl.push(Syllable { gen: g, exp: s }),
    }
}

fn pop_letter(letters: &mut Vec<Letter>, syl: &mut Vec<Syllable>) {
    letters.pop();
    let last = syl.last_mut().unwrap();
    last.exp -= last.exp.signum();
    if last.exp == 0 {
        syl.pop();
    }
}

fn reduced_words_of_len(n: usize) -> Vec<Vec<Letter>> {
    let mut out: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                LETTERS
                    .iter()
                    .filter(|&&l| w.last().is_none_or(|&p| l != inverse_letter(p)))
                    .map(|&l| {
                        let mut v = w.clone();
                        v.push(l);
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Budget { detail: format!("cannot start worker pool: {e}") })
}

/// Classify a cyclically reduced node; returns its unoriented primitive root and
/// the root length when it is hyperbolic, not a cusp, and no longer than `t`.
fn hyperbolic_root(g: &PantsGroup, node: &Node<'_>, t: f64) -> Result<Option<(CyclicWord, f64)>> {
    let (first, last) = (node.letters[0], node.letters[node.letters.len() - 1]);
    if node.letters.len() > 1 && first == inverse_letter(last) {
        return Ok(None);
    }
    let tr = node.framed.trace().abs();
    let hyperbolic = tr > 2.0 + 1e-10 * node.framed.frob_sq().sqrt().max(1.0);
    if hyperbolic && 2.0 * (tr / 2.0).acosh() > t {
        return Ok(None);
    }
    let Some(word) = CyclicWord::from_syllables(node.syllables) else {
        return Ok(None);
    };
    let (root, k) = word.root();
    let key = root.unoriented();
    if g.is_cusp_root(&key) {
        return Ok(None);
    }
    if !hyperbolic {
        let kind = if tr < 2.0 { "elliptic" } else { "an accidental parabolic" };
        return Err(Error::InvalidGroup { word: word.to_string(), kind });
    }
    Ok(Some((key, 2.0 * (tr / 2.0).acosh() / k as f64)))
}

/// Orbit nodes allowed per budgeted class before the walk gives up.
const NODES_PER_CLASS: u64 = 1024;
/// The pilot runs this far below `T`; counts grow at most like `e^T/T`.
const PILOT_GAP: f64 = 2.0;

/// Primitive unoriented classes with length ≤ `t`, found by walking the orbit
/// of the base point out to displacement `t + margin`.
///
/// A pilot enumeration at `t - 2` projects the class count at `t` (growth
/// factor `e²(t-2)/t`, the upper rate for exponent 1); a projection above the
/// budget is refused before the main walk starts.
pub fn primitive_classes(g: &PantsGroup, t: f64, cfg: &EnumerationConfig) -> Result<(Vec<GeodesicClass>, u64, f64)> {
    if !(t > 0.0) {
        return Err(crate::error::domain("length_spectrum", format!("T must be positive, got {t}")));
    }
    if t > 2.0 * PILOT_GAP {
        let tp = t - PILOT_GAP;
        let (pilot, _, _) = walk_classes(g, tp, cfg)?;
        let projected = pilot.len() as f64 * PILOT_GAP.exp() * tp / t;
        if projected > cfg.budget as f64 {
            return Err(Error::Budget {
                detail: format!(
                    "projected {projected:.0} classes at T = {t} (from {} at T = {tp}) exceeds the cap {}",
                    pilot.len(),
                    cfg.budget
                ),
            });
        }
    }
    walk_classes(g, t, cfg)
}

fn walk_classes(g: &PantsGroup, t: f64, cfg: &EnumerationConfig) -> Result<(Vec<GeodesicClass>, u64, f64)> {
    let radius = t + cfg.radius_margin;
    let spent = AtomicU64::new(0);
    let walk = Walk {
        gens: &g.framed,
        cosh_radius: radius.cosh(),
        max_len: usize::MAX,
        node_cap: (cfg.budget as u64).saturating_mul(NODES_PER_CLASS),
        spent: Some(&spent),
    };
    let slack = 1e-9;
    let collect = |prefix: &[Letter], shallow: bool| -> Result<(HashSet<CyclicWord>, u64)> {
        let mut found = HashSet::new();
        let mut visit = |node: Node<'_>| -> Result<()> {
            if shallow && node.letters.len() > prefix.len() {
                return Ok(());
            }
            if let Some((key, _)) = hyperbolic_root(g, &node, t + slack)? {
                found.insert(key);
                if found.len() > cfg.budget {
                    return Err(Error::Budget {
                        detail: format!("more than {} primitive classes below T = {t}", cfg.budget),
                    });
                }
            }
            Ok(())
        };
        let nodes = if shallow {
            let w = Walk { max_len: prefix.len(), ..walk_clone(&walk) };
            w.run(prefix, &mut visit)?
        } else {
            walk.run(prefix, &mut visit)?
        };
        Ok((found, nodes))
    };
    let mut tasks: Vec<(Vec<Letter>, bool)> = Vec::new();
    for n in 1..3 {
        tasks.extend(reduced_words_of_len(n).into_iter().map(|w| (w, true)));
    }
    tasks.extend(reduced_words_of_len(3).into_iter().map(|w| (w, false)));
    let parts: Vec<Result<(HashSet<CyclicWord>, u64)>> =
        pool(cfg.workers)?.install(|| tasks.par_iter().map(|(p, shallow)| collect(p, *shallow)).collect());
    let mut keys: BTreeSet<CyclicWord> = BTreeSet::new();
    let mut nodes = 0u64;
    for part in parts {
        let (set, n) = part?;
        nodes += n;
        keys.extend(set);
        if keys.len() > cfg.budget {
            return Err(Error::Budget { detail: format!("more than {} primitive classes below T = {t}", cfg.budget) });
        }
    }
    let mut classes = Vec::with_capacity(keys.len());
    for key in keys {
        match class_length(g, &key) {
            Isometry::Hyperbolic { length } if length <= t => {
                let boundary = PantsGroup::boundary_index(&key).is_some();
                classes.push(GeodesicClass { word: key, length, primitive: true, k: 1, boundary });
            }
            Isometry::Hyperbolic { .. } => {}
            _ => return Err(Error::InvalidGroup { word: key.to_string(), kind: "not hyperbolic" }),
        }
    }
    classes.sort_by(|x, y| x.length.total_cmp(&y.length).then_with(|| x.word.cmp(&y.word)));
    Ok((classes, nodes, radius))
}

fn walk_clone<'a>(w: &Walk<'a>) -> Walk<'a> {
    Walk { gens: w.gens, cosh_radius: w.cosh_radius, max_len: w.max_len, node_cap: w.node_cap, spent: w.spent }
}

/// All closed geodesics of length ≤ `t` (primitive classes plus iterate markers), ascending.
pub fn length_spectrum(g: &PantsGroup, t: f64, cfg: &EnumerationConfig) -> Result<LengthSpectrum> {
    let (prim, nodes, radius) = primitive_classes(g, t, cfg)?;
    let mut classes = Vec::new();
    for c in &prim {
        let mut k = 1u32;
        while (k as f64) * c.length <= t {
            classes.push(GeodesicClass { length: k as f64 * c.length, primitive: k == 1, k, ..c.clone() });
            k += 1;
        }
    }
    classes.sort_by(|x, y| x.length.total_cmp(&y.length).then_with(|| x.word.cmp(&y.word)).then(x.k.cmp(&y.k)));
    Ok(LengthSpectrum { t, classes, nodes_visited: nodes, radius })
}

/// Geodesic classes of cyclically reduced words of length ≤ `max_word_len`,
/// one record per unoriented class (powers kept as their own non-primitive records).
pub fn enumerate_classes(g: &PantsGroup, max_word_len: usize) -> Result<Vec<GeodesicClass>> {
    if max_word_len == 0 {
        return Err(crate::error::domain("enumerate_classes", "maxWordLen must be at least 1"));
    }
    let walk = Walk { gens: &g.framed, cosh_radius: f64::INFINITY, max_len: max_word_len, node_cap: u64::MAX, spent: None };
    let mut found: BTreeMap<CyclicWord, (CyclicWord, u32)> = BTreeMap::new();
    for first in LETTERS {
        walk.run(&[first], &mut |node: Node<'_>| {
            let Some(word) = CyclicWord::from_syllables(node.syllables) else { return Ok(()) };
            let (root, k) = word.root();
            let root = root.unoriented();
            if g.is_cusp_root(&root) {
                return Ok(());
            }
            let key = word.unoriented();
            found.entry(key).or_insert((root, k));
            Ok(())
        })?;
    }
    let mut out = Vec::with_capacity(found.len());
    for (key, (root, k)) in found {
        match class_length(g, &key) {
            Isometry::Hyperbolic { length } => out.push(GeodesicClass {
                word: root.clone(),
                length,
                primitive: k == 1,
                k,
                boundary: PantsGroup::boundary_index(&root).is_some(),
            }),
            _ => return Err(Error::InvalidGroup { word: key.to_string(), kind: "elliptic or parabolic" }),
        }
    }
    out.sort_by(|x, y| x.length.total_cmp(&y.length).then_with(|| x.word.cmp(&y.word)).then(x.k.cmp(&y.k)));
    Ok(out)
}

/// Oriented cyclic classes of cyclically reduced words of length ≤ `max_word_len`
/// (purely combinatorial).
pub fn cyclic_classes(max_word_len: usize) -> BTreeSet<CyclicWord> {
    let mut out = BTreeSet::new();
    for n in 1..=max_word_len {
        for w in reduced_words_of_len(n) {
            if let Some(c) = CyclicWord::from_letters(&w) {
                out.insert(c);
            }
        }
    }
    out
}

/// Least ratio `ℓ(w)/|w|` over hyperbolic cyclically reduced words of length ≤ 6.
pub fn length_rate(g: &PantsGroup) -> Result<f64> {
    let classes = enumerate_classes(g, 6)?;
    let rate = classes
        .iter()
        .map(|c| c.length / (c.k as usize * c.word.letter_len()) as f64)
        .fold(f64::INFINITY, f64::min);
    Ok(rate)
}

/// Word-length bound `⌈T/ρ⌉ + 4` from the linear length-growth heuristic.
pub fn calibrated_word_length(g: &PantsGroup, t: f64) -> Result<usize> {
    Ok((t / length_rate(g)?).ceil() as usize + 4)
}
