//! Elements of a graph product as reduced syllable sequences.
//!
//! Two reduced words represent the same element exactly when one can be
//! turned into the other by swapping neighbouring syllables on adjacent
//! vertices. Every element therefore has a unique representative that is
//! least in vertex order among all such shuffles; that representative is the
//! key used for equality, hashing and deduplication.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::context::{GroupContext, Syllable};
use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexSet};

#[derive(Clone)]
pub struct GroupElement {
    ctx: Arc<GroupContext>,
    syllables: Vec<Syllable>,
    canonical: OnceLock<Vec<Syllable>>,
}

/// Result of [`GroupElement::cyclic_reduce`]: `g = conjugator · core · conjugator⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicReduction {
    pub core: GroupElement,
    pub conjugator: GroupElement,
}

/// Reduces an arbitrary syllable sequence. Identity exponents are dropped.
pub fn reduce(ctx: &GroupContext, raw: &[Syllable]) -> Vec<Syllable> {
    let mut out = Vec::with_capacity(raw.len());
    for &s in raw {
        push_reduced(ctx, &mut out, s);
    }
    out
}

// Appends one syllable to a reduced word, merging it with the last syllable on
// the same vertex when everything after that syllable commutes with it.
fn push_reduced(ctx: &GroupContext, word: &mut Vec<Syllable>, s: Syllable) {
    let group = ctx.group(s.vertex);
    let Some(exp) = group.normalize(s.exp) else {
        return;
    };
    let graph = ctx.graph();
    for j in (0..word.len()).rev() {
        let u = word[j].vertex;
        if u == s.vertex {
            match group.compose(word[j].exp, exp) {
                Some(e) => word[j].exp = e,
                None => {
                    word.remove(j);
                }
            }
            return;
        }
        if !graph.adjacent(u, s.vertex) {
            break;
        }
    }
    word.push(Syllable::new(s.vertex, exp));
}

/// The least shuffle of a reduced word: repeatedly emit the syllable with the
/// smallest vertex among those that can be moved to the front.
pub fn canonical_form(ctx: &GroupContext, word: &[Syllable]) -> Vec<Syllable> {
    let graph = ctx.graph();
    let n = word.len();
    let mut last: Vec<Option<usize>> = vec![None; graph.vertex_count()];
    let mut present = VertexSet::new();
    let mut indegree = vec![0usize; n];
    let mut successors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, s) in word.iter().enumerate() {
        let blocking = present.difference(&graph.link(s.vertex));
        for u in blocking.iter() {
            if let Some(i) = last[u.index()] {
                successors[i].push(j);
                indegree[j] += 1;
            }
        }
        last[s.vertex.index()] = Some(j);
        present.insert(s.vertex);
    }
    let mut ready: BinaryHeap<Reverse<(VertexId, usize)>> = (0..n)
        .filter(|&j| indegree[j] == 0)
        .map(|j| Reverse((word[j].vertex, j)))
        .collect();
    let mut out = Vec::with_capacity(n);
    while let Some(Reverse((_, i))) = ready.pop() {
        out.push(word[i]);
        for &j in &successors[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.push(Reverse((word[j].vertex, j)));
            }
        }
    }
    out
}

// Positions of the syllables that can be shuffled to the front, per vertex.
fn front_movable(ctx: &GroupContext, word: &[Syllable]) -> Vec<(VertexId, usize)> {
    let graph = ctx.graph();
    let mut seen = VertexSet::new();
    let mut out = Vec::new();
    for (i, s) in word.iter().enumerate() {
        if seen.is_subset(&graph.link(s.vertex)) {
            out.push((s.vertex, i));
        }
        seen.insert(s.vertex);
    }
    out
}

fn back_movable(ctx: &GroupContext, word: &[Syllable]) -> Vec<(VertexId, usize)> {
    let graph = ctx.graph();
    let mut seen = VertexSet::new();
    let mut out = Vec::new();
    for (i, s) in word.iter().enumerate().rev() {
        if seen.is_subset(&graph.link(s.vertex)) {
            out.push((s.vertex, i));
        }
        seen.insert(s.vertex);
    }
    out
}

impl GroupElement {
    pub fn identity(ctx: &Arc<GroupContext>) -> Self {
        GroupElement::from_reduced(ctx.clone(), Vec::new())
    }

    /// Reduces `raw` and wraps the result.
    pub fn from_syllables(ctx: &Arc<GroupContext>, raw: &[Syllable]) -> Self {
        GroupElement::from_reduced(ctx.clone(), reduce(ctx, raw))
    }

    fn from_reduced(ctx: Arc<GroupContext>, syllables: Vec<Syllable>) -> Self {
        GroupElement {
            ctx,
            syllables,
            canonical: OnceLock::new(),
        }
    }

    /// The vertex generator `v^exp`.
    pub fn vertex_power(ctx: &Arc<GroupContext>, v: VertexId, exp: i64) -> Self {
        GroupElement::from_syllables(ctx, &[Syllable::new(v, exp)])
    }

    /// Parses the word grammar `term+` with `term := NAME ('^' SIGNED_INT)?`;
    /// the single token `1` is the identity.
    pub fn parse(ctx: &Arc<GroupContext>, text: &str) -> Result<Self> {
        Ok(GroupElement::from_syllables(ctx, &parse_syllables(ctx, text)?))
    }

    pub fn context(&self) -> &Arc<GroupContext> {
        &self.ctx
    }

    /// The stored reduced word.
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Number of syllables of a reduced word for this element.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The shuffle-minimal reduced word, computed once.
    pub fn canonical(&self) -> &[Syllable] {
        self.canonical
            .get_or_init(|| canonical_form(&self.ctx, &self.syllables))
    }

    /// Vertices of the syllables as written (not conjugation invariant).
    pub fn written_vertices(&self) -> VertexSet {
        self.syllables.iter().map(|s| s.vertex).collect()
    }

    fn check_context(&self, other: &GroupElement) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_context(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &GroupElement) -> GroupElement {
        let mut word = self.syllables.clone();
        word.reserve(other.syllables.len());
        for &s in &other.syllables {
            push_reduced(&self.ctx, &mut word, s);
        }
        GroupElement::from_reduced(self.ctx.clone(), word)
    }

    pub fn invert(&self) -> GroupElement {
        let word = self
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable::new(s.vertex, self.ctx.group(s.vertex).inverse(s.exp)))
            .collect();
        GroupElement::from_reduced(self.ctx.clone(), word)
    }

    /// `self^n` by binary powering; negative `n` powers the inverse.
    pub fn power(&self, n: i64) -> GroupElement {
        let mut base = if n < 0 { self.invert() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = GroupElement::identity(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `x⁻¹ · self · x`.
    pub fn conjugate_by(&self, x: &GroupElement) -> GroupElement {
        x.invert().mul_unchecked(self).mul_unchecked(x)
    }

    /// Finds a cyclically reduced conjugate. While some vertex has both a
    /// front-movable syllable `s` and a different back-movable syllable, the
    /// word is replaced by `s⁻¹ · g · s`; the smallest such vertex is used.
    pub fn cyclic_reduce(&self) -> CyclicReduction {
        let ctx = &self.ctx;
        let mut word = self.syllables.clone();
        let mut conjugator = Vec::new();
        loop {
            let fronts = front_movable(ctx, &word);
            let backs = back_movable(ctx, &word);
            let step = fronts
                .iter()
                .filter_map(|&(v, i)| backs.iter().find(|&&(u, j)| u == v && j != i).map(|&(_, j)| (v, i, j)))
                .min();
            let Some((v, i, j)) = step else { break };
            debug_assert!(i < j);
            let s = word.remove(i);
            conjugator.push(s);
            let t = &mut word[j - 1];
            match ctx.group(v).compose(t.exp, s.exp) {
                Some(e) => t.exp = e,
                None => {
                    word.remove(j - 1);
                }
            }
        }
        CyclicReduction {
            core: GroupElement::from_reduced(ctx.clone(), word),
            conjugator: GroupElement::from_syllables(ctx, &conjugator),
        }
    }

    /// Context-checked equality.
    pub fn equal(&self, other: &GroupElement) -> Result<bool> {
        self.check_context(other)?;
        Ok(self.canonical() == other.canonical())
    }

    /// Sum of the exponents on `v`. Meaningful for `Z` vertices.
    pub fn exponent_sum(&self, v: VertexId) -> i64 {
        self.syllables.iter().filter(|s| s.vertex == v).map(|s| s.exp).sum()
    }

    /// Renders the canonical form in the word grammar.
    pub fn to_word(&self) -> String {
        format_word(&self.ctx, self.canonical())
    }
}

/// Parses a word into its syllables as written, without reducing.
pub fn parse_syllables(ctx: &GroupContext, text: &str) -> Result<Vec<Syllable>> {
    let mut raw = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    let err = |position: usize, message: &str| Error::Word {
        position,
        message: message.to_string(),
    };
    let mut terms = 0;
    while pos < bytes.len() {
        if bytes[pos].is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let term = &text[start..pos];
        terms += 1;
        if term == "1" {
            continue;
        }
        let (name, exp) = match term.split_once('^') {
            Some((name, exp)) => {
                let exp: i64 = exp
                    .parse()
                    .map_err(|_| err(start + name.len() + 1, "expected a signed integer exponent"))?;
                (name, exp)
            }
            None => (term, 1),
        };
        let valid_name = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid_name {
            return Err(err(start, &format!("expected a vertex name, found `{name}`")));
        }
        let v = ctx
            .graph()
            .vertex(name)
            .map_err(|_| err(start, &format!("unknown vertex `{name}`")))?;
        raw.push(Syllable::new(v, exp));
    }
    if terms == 0 {
        return Err(err(0, "empty word (write `1` for the identity)"));
    }
    Ok(raw)
}

/// Formats syllables in the word grammar; the empty word prints as `1`.
pub fn format_word(ctx: &GroupContext, word: &[Syllable]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    for (i, s) in word.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(ctx.graph().name(s.vertex));
        if s.exp != 1 {
            out.push('^');
            out.push_str(&s.exp.to_string());
        }
    }
    out
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.equal(other).unwrap_or(false)
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({})", self.to_word())
    }
}
