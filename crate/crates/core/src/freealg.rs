//! Free associative algebras with oriented quadratic rewriting.
//!
//! Relations (RTT relations, deformed boson relations) are turned into a
//! rewrite system by row-reducing them with respect to the degree-lexicographic
//! word order; each pivot word becomes a rule. Confluence is checked by brute
//! force on all words up to a degree bound, which for quadratic rules covers
//! every overlap.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::qgroup::{r_tilde, TildeSide};
use crate::scalar::{PolyH, Ring, ScalarError, ScalarQH};
use crate::tensor::{RingMatrix, TensorError};

/// Environment variable overriding [`DEFAULT_MAX_DEGREE`].
pub const MAX_DEGREE_ENV: &str = "QGC_MAX_DEGREE";
pub const DEFAULT_MAX_DEGREE: usize = 8;

pub fn max_degree_from_env() -> usize {
    std::env::var(MAX_DEGREE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("element of degree {degree} exceeds the rewrite bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },
    #[error("rewrite system is not confluent: {0}")]
    NonConfluent(String),
    #[error("rule coefficient is not polynomial in h: {0}")]
    NonPolynomialRule(String),
    #[error("unsupported dimensions n = {n}, m = {m}")]
    UnsupportedDimensions { n: usize, m: usize },
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    QGroup(#[from] crate::qgroup::QGroupError),
}

pub type Gen = u16;

/// A word in the generators, ordered by length and then lexicographically
/// by generator index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Generator names; the index order is the generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Alphabet {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }

    pub fn index(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|k| k as Gen)
    }

    pub fn gen(&self, name: &str) -> Gen {
        self.index(name)
            .unwrap_or_else(|| panic!("unknown generator {name}"))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "I".to_string();
        }
        w.0.iter()
            .map(|&g| self.name(g))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn concat(&self, o: &Alphabet) -> Alphabet {
        Alphabet::new(self.names.iter().chain(&o.names).cloned())
    }
}

/// Finite linear combination of words. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeElement<C = PolyH> {
    terms: BTreeMap<Word, C>,
}

impl<C: Ring> Default for FreeElement<C> {
    fn default() -> Self {
        FreeElement {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Ring> FreeElement<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Word::empty(), C::one())
    }

    pub fn scalar(c: C) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn gen(g: Gen) -> Self {
        Self::term(Word(vec![g]), C::one())
    }

    pub fn word(gens: &[Gen]) -> Self {
        Self::term(Word(gens.to_vec()), C::one())
    }

    pub fn term(w: Word, c: C) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = v.add_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Word, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), k.mul_ref(c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                out.add_term(wa.concat(wb), ca.mul_ref(cb));
            }
        }
        out
    }

    /// `[self, o] = self o - o self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> FreeElement<D> {
        let mut out = FreeElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Substitutes each generator by an element (an algebra map).
    pub fn substitute(&self, image: &impl Fn(Gen) -> FreeElement<C>) -> FreeElement<C> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::scalar(c.clone());
            for &g in &w.0 {
                acc = acc.mul(&image(g));
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayElement<'a, C> {
        DisplayElement {
            element: self,
            alphabet,
        }
    }
}

impl FreeElement<PolyH> {
    pub fn to_scalar(&self) -> FreeElement<ScalarQH> {
        self.map_coeffs(ScalarQH::from_polyh)
    }

    pub fn at_h_zero(&self) -> Self {
        self.map_coeffs(PolyH::at_h_zero)
    }
}

pub struct DisplayElement<'a, C> {
    element: &'a FreeElement<C>,
    alphabet: &'a Alphabet,
}

impl<C: Ring> fmt::Display for DisplayElement<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .element
            .terms
            .iter()
            .rev()
            .map(|(w, c)| {
                let cs = c.to_string();
                let ws = self.alphabet.render_word(w);
                if w.is_empty() {
                    format!("({cs})")
                } else if c == &C::one() {
                    ws
                } else {
                    format!("({cs}) {ws}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Gaussian elimination of relations keyed by their words, largest word
/// first. Returns rows normalised so each pivot word has coefficient 1 and
/// occurs in no other row.
pub fn row_reduce(relations: &[FreeElement<ScalarQH>]) -> Result<Vec<FreeElement<ScalarQH>>, ScalarError> {
    let mut rows: Vec<FreeElement<ScalarQH>> = Vec::new();
    for rel in relations {
        let mut r = rel.clone();
        // forward-reduce against existing pivots
        for row in &rows {
            let (pw, _) = row.leading().expect("rows are nonzero");
            let c = r.coeff(pw);
            if !c.is_zero() {
                r = r.sub(&row.scale(&c));
            }
        }
        if r.is_zero() {
            continue;
        }
        let (pw, pc) = r.leading().map(|(w, c)| (w.clone(), c.clone())).expect("nonzero");
        r = r.scale(&pc.recip()?);
        // back-substitute into earlier rows
        for row in rows.iter_mut() {
            let c = row.coeff(&pw);
            if !c.is_zero() {
                *row = row.sub(&r.scale(&c));
            }
        }
        rows.push(r);
    }
    rows.sort_by(|a, b| a.leading().map(|x| x.0).cmp(&b.leading().map(|x| x.0)));
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: FreeElement<PolyH>,
}

/// Oriented rules `lhs -> rhs` with `rhs < lhs` in the word order.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    lookup: HashMap<Word, usize>,
    lhs_lengths: Vec<usize>,
    max_degree: usize,
}

impl RewriteSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>, max_degree: usize) -> Self {
        let lookup = rules
            .iter()
            .enumerate()
            .map(|(k, r)| (r.lhs.clone(), k))
            .collect();
        let mut lhs_lengths: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        lhs_lengths.sort_unstable();
        lhs_lengths.dedup();
        RewriteSystem {
            alphabet,
            rules,
            lookup,
            lhs_lengths,
            max_degree,
        }
    }

    /// Row-reduces the relations and orients each row by its leading word.
    pub fn from_relations(
        alphabet: Alphabet,
        relations: &[FreeElement<ScalarQH>],
        max_degree: usize,
    ) -> Result<Self, FreeAlgError> {
        let rows = row_reduce(relations)?;
        let mut rules = Vec::with_capacity(rows.len());
        for row in rows {
            let (lhs, _) = row.leading().map(|(w, c)| (w.clone(), c.clone())).expect("nonzero");
            let mut rhs = FreeElement::zero();
            for (w, c) in row.terms() {
                if *w == lhs {
                    continue;
                }
                let p = c
                    .neg()
                    .to_polyh()
                    .ok_or_else(|| FreeAlgError::NonPolynomialRule(c.to_string()))?;
                rhs.add_term(w.clone(), p);
            }
            rules.push(Rule { lhs, rhs });
        }
        Ok(RewriteSystem::new(alphabet, rules, max_degree))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn gen(&self, name: &str) -> Gen {
        self.alphabet.gen(name)
    }

    /// Rewrites an element written over `from` into this system's generators,
    /// matching by name.
    pub fn import(&self, e: &FreeElement, from: &Alphabet) -> FreeElement {
        let map: Vec<Gen> = from.names().iter().map(|n| self.gen(n)).collect();
        let mut out = FreeElement::zero();
        for (w, c) in e.terms() {
            out.add_term(Word(w.0.iter().map(|&g| map[g as usize]).collect()), c.clone());
        }
        out
    }

    /// Shorthand for the element given by a single generator name.
    pub fn el(&self, name: &str) -> FreeElement {
        FreeElement::gen(self.gen(name))
    }

    /// All `(position, rule index)` matches inside `w`.
    pub fn matches(&self, w: &Word) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &len in &self.lhs_lengths {
            if len > w.len() {
                continue;
            }
            for p in 0..=(w.len() - len) {
                let sub = Word(w.0[p..p + len].to_vec());
                if let Some(&k) = self.lookup.get(&sub) {
                    out.push((p, k));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn first_match(&self, w: &Word) -> Option<(usize, usize)> {
        for p in 0..w.len() {
            for &len in &self.lhs_lengths {
                if p + len > w.len() {
                    continue;
                }
                let sub = Word(w.0[p..p + len].to_vec());
                if let Some(&k) = self.lookup.get(&sub) {
                    return Some((p, k));
                }
            }
        }
        None
    }

    fn rewrite_at(&self, w: &Word, pos: usize, rule: usize) -> FreeElement {
        let r = &self.rules[rule];
        let pre = Word(w.0[..pos].to_vec());
        let post = Word(w.0[pos + r.lhs.len()..].to_vec());
        let mut out = FreeElement::zero();
        for (rw, rc) in r.rhs.terms() {
            out.add_term(pre.concat(rw).concat(&post), rc.clone());
        }
        out
    }

    /// Normal form. Words are processed from the largest down; rewriting only
    /// produces smaller words, so finished words never receive new terms.
    pub fn reduce(&self, e: &FreeElement) -> Result<FreeElement, FreeAlgError> {
        let degree = e.degree();
        if degree > self.max_degree {
            return Err(FreeAlgError::DegreeBoundExceeded {
                degree,
                bound: self.max_degree,
            });
        }
        Ok(self.reduce_unbounded(e))
    }

    fn reduce_unbounded(&self, e: &FreeElement) -> FreeElement {
        let mut todo = e.clone();
        let mut done = FreeElement::zero();
        while let Some((w, c)) = todo.terms.pop_last() {
            match self.first_match(&w) {
                None => {
                    done.terms.insert(w, c);
                }
                Some((pos, rule)) => {
                    for (rw, rc) in self.rewrite_at(&w, pos, rule).terms() {
                        todo.add_term(rw.clone(), c.mul(rc));
                    }
                }
            }
        }
        done
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.first_match(w).is_none()
    }

    /// Tries every first rewrite of every word up to `degree` and compares
    /// the resulting normal forms.
    pub fn check_confluence(&self, degree: usize) -> ConfluenceReport {
        let k = self.alphabet.len() as Gen;
        let mut words = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..degree {
            let mut next = Vec::with_capacity(frontier.len() * k as usize);
            for w in &frontier {
                for g in 0..k {
                    let mut v = w.0.clone();
                    v.push(g);
                    next.push(Word(v));
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let mut failures = Vec::new();
        let mut ambiguous = 0usize;
        for w in &words {
            let ms = self.matches(w);
            if ms.len() < 2 {
                continue;
            }
            ambiguous += 1;
            let forms: Vec<FreeElement> = ms
                .iter()
                .map(|&(p, r)| self.reduce_unbounded(&self.rewrite_at(w, p, r)))
                .collect();
            if let Some(bad) = forms.iter().position(|f| f != &forms[0]) {
                failures.push(CriticalPairFailure {
                    word: self.alphabet.render_word(w),
                    first: forms[0].display(&self.alphabet).to_string(),
                    second: forms[bad].display(&self.alphabet).to_string(),
                });
            }
        }
        ConfluenceReport {
            degree,
            words_checked: words.len(),
            ambiguous_words: ambiguous,
            failures,
        }
    }

    /// Fails with [`FreeAlgError::NonConfluent`] unless confluent up to `degree`.
    pub fn ensure_confluent(self, degree: usize) -> Result<Self, FreeAlgError> {
        let rep = self.check_confluence(degree);
        match rep.failures.first() {
            None => Ok(self),
            Some(f) => Err(FreeAlgError::NonConfluent(format!(
                "{} -> {} vs {}",
                f.word, f.first, f.second
            ))),
        }
    }

    /// The same rules over a larger alphabet whose first generators are ours.
    fn embed(&self, alphabet: &Alphabet, offset: Gen) -> Vec<Rule> {
        let shift = |w: &Word| Word(w.0.iter().map(|g| g + offset).collect());
        let _ = alphabet;
        self.rules
            .iter()
            .map(|r| {
                let mut rhs = FreeElement::zero();
                for (w, c) in r.rhs.terms() {
                    rhs.add_term(shift(w), c.clone());
                }
                Rule {
                    lhs: shift(&r.lhs),
                    rhs,
                }
            })
            .collect()
    }

    /// Tensor product of rewrite systems: generators of different factors
    /// commute, later factors ordered after earlier ones.
    pub fn tensor(parts: &[&RewriteSystem], max_degree: usize) -> RewriteSystem {
        let mut alphabet = Alphabet::new(Vec::<String>::new());
        let mut rules = Vec::new();
        let mut offsets = Vec::new();
        for p in parts {
            let offset = alphabet.len() as Gen;
            offsets.push((offset, p.alphabet.len() as Gen));
            alphabet = alphabet.concat(&p.alphabet);
            rules.extend(p.embed(&alphabet, offset));
        }
        for (a, &(oa, na)) in offsets.iter().enumerate() {
            for &(ob, nb) in &offsets[a + 1..] {
                for x in oa..oa + na {
                    for y in ob..ob + nb {
                        // y > x: y x -> x y
                        rules.push(Rule {
                            lhs: Word(vec![y, x]),
                            rhs: FreeElement::word(&[x, y]),
                        });
                    }
                }
            }
        }
        RewriteSystem::new(alphabet, rules, max_degree)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPairFailure {
    pub word: String,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub degree: usize,
    pub words_checked: usize,
    pub ambiguous_words: usize,
    pub failures: Vec<CriticalPairFailure>,
}

impl ConfluenceReport {
    pub fn confluent(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Generator names `{prefix}{i}{j}`, one-based, row-major.
pub fn matrix_alphabet(prefix: &str, n: usize) -> Alphabet {
    Alphabet::new((1..=n).flat_map(|i| (1..=n).map(move |j| format!("{prefix}{i}{j}"))))
}

/// Entries of `R T_1 T_2 - T_2 T_1 R` with `T_1 = T ⊗ I`, `T_2 = I ⊗ T`.
/// Zero entries and duplicates (up to scaling) are dropped.
pub fn rtt_relations(r: &RingMatrix, n: usize) -> Vec<FreeElement<ScalarQH>> {
    assert_eq!(r.dim(), n * n, "R must act on V ⊗ V");
    let t = |a: usize, b: usize| (a * n + b) as Gen;
    let mut out: Vec<FreeElement<ScalarQH>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut rel = FreeElement::zero();
                    for a in 0..n {
                        for b in 0..n {
                            // (R T1 T2)_{ij,kl} = Σ R_{ij,ab} T_ak T_bl
                            let x = r.get(i * n + j, a * n + b);
                            if !x.is_zero() {
                                rel.add_term(Word(vec![t(a, k), t(b, l)]), x.clone());
                            }
                            // (T2 T1 R)_{ij,kl} = Σ T_jb T_ia R_{ab,kl}
                            let y = r.get(a * n + b, k * n + l);
                            if !y.is_zero() {
                                rel.add_term(Word(vec![t(j, b), t(i, a)]), y.neg());
                            }
                        }
                    }
                    push_unique(&mut out, rel);
                }
            }
        }
    }
    out
}

fn push_unique(out: &mut Vec<FreeElement<ScalarQH>>, rel: FreeElement<ScalarQH>) {
    let Some((_, lead)) = rel.leading() else {
        return;
    };
    let normed = rel.scale(&lead.recip().expect("nonzero leading coefficient"));
    if !out.contains(&normed) {
        out.push(normed);
    }
}

/// Number of linearly independent relations.
pub fn relation_rank(relations: &[FreeElement<ScalarQH>]) -> Result<usize, ScalarError> {
    Ok(row_reduce(relations)?.len())
}

/// RTT rewrite system for `R` on `V ⊗ V`, generators `{prefix}ij`.
///
/// Generator orders are tried in a fixed sequence (row-major first) until the
/// oriented system is confluent at degree 3.
pub fn rtt_system(r: &RingMatrix, n: usize, prefix: &str) -> Result<RewriteSystem, FreeAlgError> {
    orient(&matrix_alphabet(prefix, n), &rtt_relations(r, n), permutations(n * n))
}

/// First generator order (from `orders`) giving polynomial rules that are
/// confluent at degree 3.
pub fn orient(
    base: &Alphabet,
    rels: &[FreeElement<ScalarQH>],
    orders: impl IntoIterator<Item = Vec<usize>>,
) -> Result<RewriteSystem, FreeAlgError> {
    let mut last_err = None;
    for perm in orders {
        let names: Vec<String> = perm.iter().map(|&k| base.names()[k].clone()).collect();
        let alphabet = Alphabet::new(names);
        let mut relabel = vec![0 as Gen; perm.len()];
        for (pos, &k) in perm.iter().enumerate() {
            relabel[k] = pos as Gen;
        }
        let relabeled: Vec<FreeElement<ScalarQH>> = rels
            .iter()
            .map(|e| {
                let mut out = FreeElement::zero();
                for (w, c) in e.terms() {
                    out.add_term(Word(w.0.iter().map(|&g| relabel[g as usize]).collect()), c.clone());
                }
                out
            })
            .collect();
        match RewriteSystem::from_relations(alphabet, &relabeled, max_degree_from_env())
            .and_then(|sys| sys.ensure_confluent(3))
        {
            Ok(s) => return Ok(s),
            Err(e @ (FreeAlgError::NonConfluent(_) | FreeAlgError::NonPolynomialRule(_))) => {
                last_err = Some(e)
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| FreeAlgError::NonConfluent("no generators".into())))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Which pair of families the boson relations couple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BosonForm {
    /// creators `A+` with annihilators `A`
    Plain,
    /// creators `A+` with annihilators `At`
    Tilde,
}

/// Generator labels for the boson families. For `m = 1` the second index is
/// omitted (`A+1`, `At2`); otherwise both are written (`A+12`).
pub fn boson_label(family: &str, i: usize, s: usize, m: usize) -> String {
    if m == 1 {
        format!("{family}{i}")
    } else {
        format!("{family}{i}{s}")
    }
}

pub fn boson_alphabet(n: usize, m: usize, form: BosonForm) -> Alphabet {
    let ann = match form {
        BosonForm::Plain => "A",
        BosonForm::Tilde => "At",
    };
    let fam = |f: &'static str| {
        (1..=n).flat_map(move |i| (1..=m).map(move |s| boson_label(f, i, s, m)))
    };
    Alphabet::new(fam("A+").chain(fam(ann)))
}

/// `X[(is)(jt), (ku)(lv)] = R[(ij),(kl)] · Y[(st),(uv)]`: the operator
/// `R 𝓡` on `(V ⊗ W) ⊗ (V ⊗ W)` with compound indices `(i, s)`.
pub fn pair_kron(r: &RingMatrix, n: usize, calr: &RingMatrix, m: usize) -> RingMatrix {
    let d = n * m;
    let mut out = RingMatrix::zeros(d * d).with_factors(d, d);
    for a in 0..d * d {
        let (alpha, beta) = (a / d, a % d);
        let (i, s) = (alpha / m, alpha % m);
        let (j, t) = (beta / m, beta % m);
        for b in 0..d * d {
            let (gamma, delta) = (b / d, b % d);
            let (k, u) = (gamma / m, gamma % m);
            let (l, v) = (delta / m, delta % m);
            let x = r.get(i * n + j, k * n + l);
            if x.is_zero() {
                continue;
            }
            let y = calr.get(s * m + t, u * m + v);
            if y.is_zero() {
                continue;
            }
            out.set(a, b, x.mul(y));
        }
    }
    out
}

/// The componentwise relations of the contracted covariant boson algebra.
///
/// With compound index `a = (i, s)` and `X = R 𝓡`:
/// - creators: `A+_k A+_l = Σ A+_j A+_i X_{ij,kl}`
/// - plain: `A_i A_j = Σ X_{ij,kl} A_l A_k`, `A_j A+_i = δ_ij + Σ X_{kj,il} A+_k A_l`
/// - tilde: `At_k At_l = Σ At_j At_i X_{ij,kl}`,
///   `At_j A+_i = 𝐂_ij + Σ A+_k At_l (R̃⁻¹ 𝓡̃⁻¹)_{kl,ij}`
pub fn boson_relation_set(
    r: &RingMatrix,
    calr: &RingMatrix,
    c: &RingMatrix,
    calc: &RingMatrix,
    form: BosonForm,
) -> Result<(Alphabet, Vec<FreeElement<ScalarQH>>), FreeAlgError> {
    let n = c.dim();
    let m = calc.dim();
    let d = n * m;
    let x = pair_kron(r, n, calr, m);
    let alphabet = boson_alphabet(n, m, form);
    let cre = |a: usize| a as Gen;
    let ann = |a: usize| (d + a) as Gen;
    let w = |a: Gen, b: Gen| Word(vec![a, b]);
    let mut rels = Vec::new();

    for k in 0..d {
        for l in 0..d {
            let mut e = FreeElement::term(w(cre(k), cre(l)), ScalarQH::one());
            for i in 0..d {
                for j in 0..d {
                    let v = x.get(i * d + j, k * d + l);
                    if !v.is_zero() {
                        e.add_term(w(cre(j), cre(i)), v.neg());
                    }
                }
            }
            rels.push(e);
        }
    }

    match form {
        BosonForm::Plain => {
            for i in 0..d {
                for j in 0..d {
                    let mut e = FreeElement::term(w(ann(i), ann(j)), ScalarQH::one());
                    for k in 0..d {
                        for l in 0..d {
                            let v = x.get(i * d + j, k * d + l);
                            if !v.is_zero() {
                                e.add_term(w(ann(l), ann(k)), v.neg());
                            }
                        }
                    }
                    rels.push(e);
                }
            }
            for i in 0..d {
                for j in 0..d {
                    let mut e = FreeElement::term(w(ann(j), cre(i)), ScalarQH::one());
                    if i == j {
                        e.add_term(Word::empty(), ScalarQH::one().neg());
                    }
                    for k in 0..d {
                        for l in 0..d {
                            let v = x.get(k * d + j, i * d + l);
                            if !v.is_zero() {
                                e.add_term(w(cre(k), ann(l)), v.neg());
                            }
                        }
                    }
                    rels.push(e);
                }
            }
        }
        BosonForm::Tilde => {
            let rt = r_tilde(r, c, TildeSide::H)?.invert()?;
            let calrt = r_tilde(calr, calc, TildeSide::H)?.invert()?;
            let y = pair_kron(&rt, n, &calrt, m);
            let big_c = c.kron(calc);
            for k in 0..d {
                for l in 0..d {
                    let mut e = FreeElement::term(w(ann(k), ann(l)), ScalarQH::one());
                    for i in 0..d {
                        for j in 0..d {
                            let v = x.get(i * d + j, k * d + l);
                            if !v.is_zero() {
                                e.add_term(w(ann(j), ann(i)), v.neg());
                            }
                        }
                    }
                    rels.push(e);
                }
            }
            for i in 0..d {
                for j in 0..d {
                    let mut e = FreeElement::term(w(ann(j), cre(i)), ScalarQH::one());
                    e.add_term(Word::empty(), big_c.get(i, j).neg());
                    for k in 0..d {
                        for l in 0..d {
                            let v = y.get(k * d + l, i * d + j);
                            if !v.is_zero() {
                                e.add_term(w(cre(k), ann(l)), v.neg());
                            }
                        }
                    }
                    rels.push(e);
                }
            }
        }
    }
    Ok((alphabet, rels))
}

/// Rewrite system for the contracted covariant boson algebra, checked
/// confluent at degree 3.
pub fn boson_relations(
    r: &RingMatrix,
    calr: &RingMatrix,
    c: &RingMatrix,
    calc: &RingMatrix,
    form: BosonForm,
) -> Result<RewriteSystem, FreeAlgError> {
    let (alphabet, rels) = boson_relation_set(r, calr, c, calc, form)?;
    let d = alphabet.len() / 2;
    let block = |rev: bool, offset: usize| -> Vec<usize> {
        let v: Vec<usize> = (offset..offset + d).collect();
        if rev {
            v.into_iter().rev().collect()
        } else {
            v
        }
    };
    let orders = [(false, false), (false, true), (true, false), (true, true)]
        .into_iter()
        .map(|(rc, ra)| {
            let mut v = block(rc, 0);
            v.extend(block(ra, d));
            v
        });
    orient(&alphabet, &rels, orders)
}

/// Contracted data `(R, 𝓡, C, 𝒞)` for dimensions `n, m`; a one-dimensional
/// factor uses `[1]` for both.
pub fn contracted_data(n: usize, m: usize) -> Result<[RingMatrix; 4], FreeAlgError> {
    let metric = |k: usize| crate::qgroup::c_metric_contract(k);
    Ok([
        crate::qgroup::r_h_or_trivial(n),
        crate::qgroup::r_h_or_trivial(m),
        metric(n)?,
        metric(m)?,
    ])
}

/// The same data at `h = 0`.
pub fn classical_data(n: usize, m: usize) -> Result<[RingMatrix; 4], FreeAlgError> {
    let [r, calr, c, calc] = contracted_data(n, m)?;
    Ok([r.at_h_zero()?, calr.at_h_zero()?, c.at_h_zero()?, calc.at_h_zero()?])
}

pub fn contracted_boson_system(n: usize, m: usize, form: BosonForm) -> Result<RewriteSystem, FreeAlgError> {
    let [r, calr, c, calc] = contracted_data(n, m)?;
    boson_relations(&r, &calr, &c, &calc, form)
}

pub fn classical_boson_system(n: usize, m: usize, form: BosonForm) -> Result<RewriteSystem, FreeAlgError> {
    let [r, calr, c, calc] = classical_data(n, m)?;
    boson_relations(&r, &calr, &c, &calc, form)
}

#[derive(Clone, Debug, Serialize)]
pub struct CovarianceReport {
    pub n: usize,
    pub m: usize,
    /// Rendered relation images that failed to reduce to zero.
    pub nonzero_images: Vec<String>,
    pub relations_checked: usize,
}

impl CovarianceReport {
    pub fn pass(&self) -> bool {
        self.nonzero_images.is_empty()
    }
}

/// Covariance of the creation sector for the contracted data; `n = 2` and
/// `m` in `{1, 2}`.
pub fn covariance_check(n: usize, m: usize) -> Result<CovarianceReport, FreeAlgError> {
    if n != 2 || !(1..=2).contains(&m) {
        return Err(FreeAlgError::UnsupportedDimensions { n, m });
    }
    let [r, calr, c, calc] = contracted_data(n, m)?;
    covariance_check_with(&r, &calr, &c, &calc)
}

/// Applies the coaction `A+_{is} -> Σ A+_{jt} T_ji 𝒯_ts` to every
/// creation-creation relation and reduces modulo boson ⊗ RTT rules.
pub fn covariance_check_with(
    r: &RingMatrix,
    calr: &RingMatrix,
    c: &RingMatrix,
    calc: &RingMatrix,
) -> Result<CovarianceReport, FreeAlgError> {
    covariance_against(r, calr, c, calc, r)
}

/// As [`covariance_check_with`] with the `T` generators obeying the RTT
/// relations of `t_r` instead of `r`.
pub fn covariance_against(
    r: &RingMatrix,
    calr: &RingMatrix,
    c: &RingMatrix,
    calc: &RingMatrix,
    t_r: &RingMatrix,
) -> Result<CovarianceReport, FreeAlgError> {
    let n = c.dim();
    let m = calc.dim();
    let d = n * m;
    let boson = boson_relations(r, calr, c, calc, BosonForm::Tilde)?;
    let t_sys = rtt_system(t_r, n, "T")?;
    let script = if m == 1 {
        RewriteSystem::new(matrix_alphabet("S", 1), Vec::new(), max_degree_from_env())
    } else {
        rtt_system(calr, m, "S")?
    };
    let full = RewriteSystem::tensor(&[&boson, &t_sys, &script], max_degree_from_env().max(6))
        .ensure_confluent(3)?;
    let a = full.alphabet().clone();
    let cre_name = |i: usize, s: usize| boson_label("A+", i + 1, s + 1, m);
    let coaction = |g: Gen| -> FreeElement {
        let name = a.name(g);
        for i in 0..n {
            for s in 0..m {
                if name == cre_name(i, s) {
                    let mut out = FreeElement::zero();
                    for j in 0..n {
                        for t in 0..m {
                            let word = [
                                a.gen(&cre_name(j, t)),
                                a.gen(&format!("T{}{}", j + 1, i + 1)),
                                a.gen(&format!("S{}{}", t + 1, s + 1)),
                            ];
                            out = out.add(&FreeElement::word(&word));
                        }
                    }
                    return out;
                }
            }
        }
        FreeElement::gen(g)
    };
    let x = pair_kron(r, n, calr, m);
    let mut nonzero = Vec::new();
    let mut checked = 0;
    for k in 0..d {
        for l in 0..d {
            let g = |alpha: usize| a.gen(&cre_name(alpha / m, alpha % m));
            let mut rel = FreeElement::word(&[g(k), g(l)]);
            for i in 0..d {
                for j in 0..d {
                    let v = x.get(i * d + j, k * d + l);
                    if !v.is_zero() {
                        let p = v.to_polyh().ok_or_else(|| FreeAlgError::NonPolynomialRule(v.to_string()))?;
                        rel.add_term(Word(vec![g(j), g(i)]), p.neg());
                    }
                }
            }
            let image = full.reduce(&rel.substitute(&coaction))?;
            checked += 1;
            if !image.is_zero() {
                nonzero.push(image.display(&a).to_string());
            }
        }
    }
    Ok(CovarianceReport {
        n,
        m,
        nonzero_images: nonzero,
        relations_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgroup::{c_metric_contract, r_jordanian, r_standard, trivial_one};

    fn tilde21() -> RewriteSystem {
        let one = trivial_one();
        boson_relations(
            &r_jordanian(2),
            &one,
            &c_metric_contract(2).unwrap(),
            &one,
            BosonForm::Tilde,
        )
        .unwrap()
    }

    #[test]
    fn word_order_is_deglex() {
        assert!(Word(vec![0, 1]) < Word(vec![1, 0]));
        assert!(Word(vec![5]) < Word(vec![0, 0]));
        assert!(Word::empty() < Word(vec![0]));
    }

    #[test]
    fn identity_r_gives_commutative_relations() {
        let rels = rtt_relations(&RingMatrix::identity(4).with_factors(2, 2), 2);
        for rel in &rels {
            let terms: Vec<_> = rel.terms().collect();
            assert_eq!(terms.len(), 2);
            let (w0, c0) = terms[0];
            let (w1, c1) = terms[1];
            assert_eq!(w0.0, vec![w1.0[1], w1.0[0]]);
            assert_eq!(c0, &c1.neg());
        }
        assert_eq!(relation_rank(&rels).unwrap(), 6);
    }

    #[test]
    fn jordanian_rtt_has_six_relations() {
        let rels = rtt_relations(&r_jordanian(2), 2);
        assert_eq!(relation_rank(&rels).unwrap(), 6);
    }

    #[test]
    fn jordanian_rtt_counit() {
        // T_ij -> δ_ij kills every relation
        let rels = rtt_relations(&r_jordanian(2), 2);
        for rel in rels {
            let mut total = ScalarQH::zero();
            for (w, c) in rel.terms() {
                if w.0.iter().all(|&g| g == 0 || g == 3) {
                    total = total.add(c);
                }
            }
            assert!(total.is_zero());
        }
    }

    #[test]
    fn standard_rtt_q_plane_relation() {
        // the q-plane relation between T11 and T21
        let rels = rtt_relations(&r_standard(2), 2);
        let alphabet = matrix_alphabet("T", 2);
        let t11 = alphabet.gen("T11");
        let t21 = alphabet.gen("T21");
        let target = rels.iter().find(|r| {
            r.terms().count() == 2
                && !r.coeff(&Word(vec![t11, t21])).is_zero()
                && !r.coeff(&Word(vec![t21, t11])).is_zero()
        });
        let rel = target.expect("q-plane relation between T11 and T21");
        let ratio = rel
            .coeff(&Word(vec![t21, t11]))
            .div(&rel.coeff(&Word(vec![t11, t21])))
            .unwrap();
        assert_eq!(ratio, ScalarQH::q_inv().neg());
        assert_eq!(relation_rank(&rels).unwrap(), 6);
    }

    #[test]
    fn tilde_rules_match_commutation_relations() {
        let rs = tilde21();
        let e = |n: &str| rs.el(n);
        let h = FreeElement::scalar(PolyH::h());
        // At1 A+1 -> A+1 At1
        assert_eq!(rs.reduce(&e("At1").mul(&e("A+1"))).unwrap(), e("A+1").mul(&e("At1")));
        // At1 A+2 -> A+2 At1 + I + h A+1 At1
        let want = e("A+2")
            .mul(&e("At1"))
            .add(&FreeElement::one())
            .add(&h.mul(&e("A+1")).mul(&e("At1")));
        assert_eq!(rs.reduce(&e("At1").mul(&e("A+2"))).unwrap(), want);
        // A+1 A+2 - A+2 A+1 - h A+1^2 -> 0
        let rel = e("A+1").commutator(&e("A+2")).sub(&h.mul(&e("A+1")).mul(&e("A+1")));
        assert!(rs.reduce(&rel).unwrap().is_zero());
    }

    #[test]
    fn plain_rules_match_commutation_relations() {
        let one = trivial_one();
        let rs = boson_relations(
            &r_jordanian(2),
            &one,
            &c_metric_contract(2).unwrap(),
            &one,
            BosonForm::Plain,
        )
        .unwrap();
        let e = |n: &str| rs.el(n);
        assert_eq!(rs.reduce(&e("A2").mul(&e("A+1"))).unwrap(), e("A+1").mul(&e("A2")));
    }

    #[test]
    fn reduce_is_idempotent_and_fixes_normal_words() {
        let rs = tilde21();
        let w = rs.el("A+1").mul(&rs.el("A+2")).mul(&rs.el("At1"));
        assert_eq!(rs.reduce(&w).unwrap(), w);
        let messy = rs.el("At2").mul(&rs.el("At1")).mul(&rs.el("A+2"));
        let once = rs.reduce(&messy).unwrap();
        assert_eq!(rs.reduce(&once).unwrap(), once);
    }

    #[test]
    fn degree_bound_is_enforced() {
        let rs = tilde21();
        let big = (0..rs.max_degree() + 1).fold(FreeElement::one(), |acc, _| acc.mul(&rs.el("A+1")));
        assert!(matches!(
            rs.reduce(&big),
            Err(FreeAlgError::DegreeBoundExceeded { .. })
        ));
    }

    #[test]
    fn classical_system_is_wick_ordering() {
        let one = trivial_one();
        let id = RingMatrix::identity(4).with_factors(2, 2);
        let eps = c_metric_contract(2).unwrap().at_h_zero().unwrap();
        let rs = boson_relations(&id, &one, &eps, &one, BosonForm::Tilde).unwrap();
        assert!(rs.check_confluence(3).confluent());
        for rule in rs.rules() {
            assert!(rule.rhs.terms().all(|(_, c)| c.degree().unwrap_or(0) == 0));
        }
    }

    #[test]
    fn double_spinor_system_is_confluent() {
        let r = r_jordanian(2);
        let c = c_metric_contract(2).unwrap();
        let rs = boson_relations(&r, &r, &c, &c, BosonForm::Tilde).unwrap();
        assert!(rs.check_confluence(3).confluent());
        assert_eq!(rs.alphabet().len(), 8);
    }

    #[test]
    fn covariance_creation_sector() {
        for m in [1, 2] {
            let rep = covariance_check(2, m).unwrap();
            assert!(rep.pass(), "m = {m}: {:?}", rep.nonzero_images);
            assert_eq!(rep.relations_checked, (2 * m) * (2 * m));
        }
        let [r, calr, c, calc] = classical_data(2, 1).unwrap();
        assert!(covariance_check_with(&r, &calr, &c, &calc).unwrap().pass());
        assert!(covariance_check(3, 1).is_err());
    }

    #[test]
    fn covariance_fails_for_mismatched_quantum_group() {
        // GL_h(2)-covariant bosons under a commuting GL(2) coaction
        let one = trivial_one();
        let c = c_metric_contract(2).unwrap();
        let id = RingMatrix::identity(4).with_factors(2, 2);
        let rep = covariance_against(&r_jordanian(2), &one, &c, &one, &id).unwrap();
        assert!(!rep.pass());
    }

    fn random_element(rs: &RewriteSystem, terms: &[(Vec<u16>, i64)]) -> FreeElement {
        let k = rs.alphabet().len() as u16;
        terms.iter().fold(FreeElement::zero(), |acc, (w, c)| {
            let word = Word(w.iter().map(|g| g % k).collect());
            acc.add(&FreeElement::term(word, PolyH::int(*c)))
        })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]

        #[test]
        fn reduction_is_idempotent_and_linear(
            a in proptest::collection::vec((proptest::collection::vec(0u16..4, 0..=3), -3i64..=3), 0..5),
            b in proptest::collection::vec((proptest::collection::vec(0u16..4, 0..=3), -3i64..=3), 0..5),
        ) {
            let rs = tilde21();
            let (x, y) = (random_element(&rs, &a), random_element(&rs, &b));
            let nx = rs.reduce(&x).unwrap();
            proptest::prop_assert!(nx.terms().all(|(w, _)| rs.is_normal(w)));
            proptest::prop_assert_eq!(rs.reduce(&nx).unwrap(), nx.clone());
            let ny = rs.reduce(&y).unwrap();
            proptest::prop_assert_eq!(rs.reduce(&x.add(&y)).unwrap(), nx.add(&ny));
        }
    }
}
