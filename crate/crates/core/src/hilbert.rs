//! The Hilbert–Poincaré series `W_n = F_n / Π_{i<j} (1 - z_i z_j)` of
//! `G(2,n)`, computed several independent ways.

use std::collections::HashMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{
    accumulate, complete_homogeneous_in, elementary_symmetric_in, geometric_expand, parse_polynomial, sorted_terms,
    ExponentVector, Permutation, Polynomial, Series, TermMap,
};
use crate::report::{Check, Report};
use crate::scalar::Coefficient;
use crate::semigroup::count_gradation;
use crate::trees::{LeafPair, Tree};
use crate::BigInt;

/// Largest exclusion set whose subsets are enumerated.
pub const MAX_EXCLUSIONS: usize = 20;

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least two leaves, got {n}")));
    }
    Ok(())
}

/// Two pairs `outer = (i,j)`, `inner = (i',j')` with `i < i' < j' < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EmbracingPair {
    pub outer: LeafPair,
    pub inner: LeafPair,
}

impl EmbracingPair {
    pub fn new(outer: LeafPair, inner: LeafPair) -> Result<Self> {
        if !outer.embraces(&inner) {
            return Err(Error::InvalidArgument(format!("{outer} does not embrace {inner}")));
        }
        Ok(EmbracingPair { outer, inner })
    }

    /// All embracing pairs on `1..=n`, one per four-element subset.
    pub fn all(n: usize) -> Vec<EmbracingPair> {
        let pairs = LeafPair::all(n);
        let mut out = Vec::new();
        for &outer in &pairs {
            for &inner in &pairs {
                if outer.embraces(&inner) {
                    out.push(EmbracingPair { outer, inner });
                }
            }
        }
        out
    }
}

impl fmt::Display for EmbracingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} > {}", self.outer, self.inner)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NumeratorMethod {
    #[serde(rename = "ie")]
    InclusionExclusion,
    #[serde(rename = "sym")]
    SymmetricRecursion,
}

impl fmt::Display for NumeratorMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NumeratorMethod::InclusionExclusion => "ie",
            NumeratorMethod::SymmetricRecursion => "sym",
        })
    }
}

/// A numerator `F_n` together with how it was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct NumeratorResult<C> {
    pub n: usize,
    pub numerator: Polynomial<C>,
    pub method: NumeratorMethod,
    /// Set for methods whose correctness is established only by testing.
    pub conjectural: bool,
}

/// `W_n` through total degree `cap`, built leaf by leaf along the caterpillar:
/// each step splits the last variable's power between it and the new
/// variable, then multiplies by `1 / (1 - z_m z_{m+1})`.
pub fn series_by_recursion<C: Coefficient>(n: usize, cap: u32) -> Result<Series<C>> {
    check_n(n)?;
    let mut w = geometric_expand::<C>(&[(1, 2)], n, cap)?;
    for m in 2..n {
        let (old, new) = (m - 1, m);
        let mut spread: TermMap<C> = HashMap::with_capacity(w.len() * 2);
        for (e, c) in w.term_map() {
            let i = e.get(old);
            for l in 0..=i {
                let mut f = e.clone();
                f.set(old, i - l);
                f.set(new, l);
                accumulate(&mut spread, f, c.clone());
            }
        }
        w = Series::from_map(n, cap, spread).mul_geometric(&ExponentVector::pair(n, m, m + 1))?;
    }
    Ok(w)
}

/// The exclusion set of `tree`: pairs of paths intersecting in an unordered
/// way. On the caterpillar these are the embracing pairs.
fn exclusions(n: usize, tree: Option<&Tree>) -> Result<Vec<(LeafPair, LeafPair)>> {
    match tree {
        None => Ok(EmbracingPair::all(n).into_iter().map(|e| (e.outer, e.inner)).collect()),
        Some(t) if t.n_leaves() != n => Err(Error::Dimension { expected: n, found: t.n_leaves() }),
        Some(t) => Ok(t.unordered_pairs()),
    }
}

/// `F_n = 1 + Σ_{∅≠S⊆Exc} (-1)^{|S|} Π_{distinct pairs p in S} z^{r_p}`.
///
/// Without a tree the caterpillar's embracing pairs are used. Fails with a
/// capacity error when the exclusion set has more than [`MAX_EXCLUSIONS`]
/// elements.
pub fn numerator_inclusion_exclusion<C: Coefficient>(n: usize, tree: Option<&Tree>) -> Result<NumeratorResult<C>> {
    check_n(n)?;
    let exc = exclusions(n, tree)?;
    if exc.len() > MAX_EXCLUSIONS {
        return Err(Error::Capacity(format!(
            "{} exclusions (limit {MAX_EXCLUSIONS}); use the recursion method for n = {n}",
            exc.len()
        )));
    }
    let pairs = LeafPair::all(n);
    let index = |p: LeafPair| pairs.iter().position(|&q| q == p).expect("pair within range");
    let masks: Vec<u32> = exc.iter().map(|&(p, q)| (1u32 << index(p)) | (1u32 << index(q))).collect();

    // Signed count of subsets per union of distinct pairs.
    let subsets: u64 = 1 << exc.len();
    let by_union: HashMap<u32, i64> = (0..subsets)
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<u32, i64>, s| {
            let mut union = 0;
            for (k, m) in masks.iter().enumerate() {
                if s >> k & 1 == 1 {
                    union |= m;
                }
            }
            let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
            *acc.entry(union).or_insert(0) += sign;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });

    let mut terms: TermMap<C> = HashMap::new();
    for (union, count) in by_union {
        let mut e = ExponentVector::zeros(n);
        for (k, p) in pairs.iter().enumerate() {
            if union >> k & 1 == 1 {
                e.bump(p.i - 1, 1);
                e.bump(p.j - 1, 1);
            }
        }
        accumulate(&mut terms, e, C::from_int(count));
    }
    let numerator = Polynomial::from_terms(n, terms)?;
    Ok(NumeratorResult { n, numerator, method: NumeratorMethod::InclusionExclusion, conjectural: false })
}

/// `F_n` from the conjectural recursion on numerators by symmetric
/// polynomials, with the default matrix size `n` and `v` terms in the
/// inner power sum.
pub fn numerator_symmetric_recursion<C: Coefficient>(n: usize) -> Result<NumeratorResult<C>> {
    numerator_symmetric_recursion_with(n, n, None)
}

// Symmetric polynomials in the first `v` variables, embedded in `num_vars`.
struct SymmetricTables<C> {
    v: usize,
    num_vars: usize,
    sigma: Vec<Polynomial<C>>,
    h: HashMap<i64, Polynomial<C>>,
    big_h: HashMap<(i64, usize), Polynomial<C>>,
}

impl<C: Coefficient> SymmetricTables<C> {
    fn new(v: usize, num_vars: usize) -> Self {
        let sigma = (0..=v).map(|r| elementary_symmetric_in(v, r as i64, num_vars)).collect();
        SymmetricTables { v, num_vars, sigma, h: HashMap::new(), big_h: HashMap::new() }
    }

    fn h(&mut self, s: i64) -> Polynomial<C> {
        let (v, nv) = (self.v, self.num_vars);
        self.h.entry(s).or_insert_with(|| complete_homogeneous_in(v, s, nv)).clone()
    }

    /// `H_{s,l} = Σ_{r=0}^{l} (-1)^r h_{s-r} σ_r`.
    fn big_h(&mut self, s: i64, l: usize) -> Polynomial<C> {
        if let Some(p) = self.big_h.get(&(s, l)) {
            return p.clone();
        }
        let mut out = Polynomial::zero(self.num_vars);
        for r in 0..=l.min(self.v) {
            if s - (r as i64) < 0 {
                break;
            }
            let hs = self.h(s - r as i64);
            let term = &hs * &self.sigma[r];
            out = if r % 2 == 0 { &out + &term } else { &out - &term };
        }
        self.big_h.insert((s, l), out.clone());
        out
    }

    /// `a_{k,l} = Σ_{β<beta_terms} z^β Σ_{α=0}^{k+l} (-1)^α σ_α H_{k+β-α,β}`,
    /// with `z` the variable at index `v`.
    fn a(&mut self, k: i64, l: usize, beta_terms: usize) -> Polynomial<C> {
        let mut out = Polynomial::zero(self.num_vars);
        let top = k + l as i64;
        if top < 0 {
            return out;
        }
        for beta in 0..beta_terms {
            let mut inner = Polynomial::zero(self.num_vars);
            for alpha in 0..=(top as usize).min(self.v) {
                let hh = self.big_h(k + beta as i64 - alpha as i64, beta);
                let term = &self.sigma[alpha] * &hh;
                inner = if alpha % 2 == 0 { &inner + &term } else { &inner - &term };
            }
            out = &out + &inner.mul_var_power(self.v, beta as u32);
        }
        out
    }
}

/// The symmetric recursion with an explicit coefficient-vector `size` (powers
/// of the new variable at or beyond it are dropped) and
/// number of `beta_terms` (default: the old variable count minus one).
/// Both knobs exist to test that the defaults suffice.
pub fn numerator_symmetric_recursion_with<C: Coefficient>(
    n: usize,
    size: usize,
    beta_terms: Option<usize>,
) -> Result<NumeratorResult<C>> {
    check_n(n)?;
    let mut f = Polynomial::<C>::one(n);
    // F_m lives in m variables; the step m -> m+1 expands it in z_m with
    // coefficients in z_1..z_{m-1}, on which the symmetric tables act.
    for m in 3..n {
        let v = m - 1;
        let parts = f.split_by_var(v);
        if parts.len() > size {
            return Err(Error::InvalidArgument(format!(
                "size {size} is smaller than the z{m}-degree {} of the numerator",
                parts.len() - 1
            )));
        }
        let mut tables = SymmetricTables::<C>::new(v, n);
        let beta = beta_terms.unwrap_or(v);
        let mut next = Polynomial::zero(n);
        for t in 0..size {
            let mut coeff = Polynomial::zero(n);
            for (i, fi) in parts.iter().enumerate() {
                if !fi.is_zero() {
                    coeff = &coeff + &(fi * &tables.a(t as i64 - i as i64, i, beta));
                }
            }
            next = &next + &coeff.mul_var_power(m, t as u32);
        }
        f = next;
    }
    Ok(NumeratorResult { n, numerator: f, method: NumeratorMethod::SymmetricRecursion, conjectural: true })
}

/// `F · 1/Π_{i<j}(1 - z_i z_j)` through total degree `cap`.
pub fn series_from_numerator<C: Coefficient>(f: &NumeratorResult<C>, cap: u32) -> Result<Series<C>> {
    let pairs: Vec<(usize, usize)> = LeafPair::all(f.n).into_iter().map(|p| (p.i, p.j)).collect();
    geometric_expand::<C>(&pairs, f.n, cap)?.mul_polynomial(&f.numerator)
}

/// The first monomial (in canonical order) where two series differ.
pub fn first_discrepancy<C: Coefficient>(a: &Series<C>, b: &Series<C>) -> Option<(ExponentVector, C, C)> {
    let cap = a.cap().min(b.cap());
    let mut keys: Vec<&ExponentVector> =
        a.term_map().keys().chain(b.term_map().keys()).filter(|e| e.degree() <= cap).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find_map(|e| {
        let x = a.term_map().get(e).cloned().unwrap_or_else(C::zero);
        let y = b.term_map().get(e).cloned().unwrap_or_else(C::zero);
        (x != y).then(|| (e.clone(), x, y))
    })
}

/// Known numerators for `n = 2..=5`, as printed with variables `z0..z{n-1}`.
pub const GOLDEN_NUMERATORS: [(usize, &str); 4] = [
    (2, "1"),
    (3, "1"),
    (4, "1-z0*z1*z2*z3"),
    (
        5,
        "-z0^2*z1^2*z2^2*z3^2*z4^2 + z0^2*z1*z2*z3*z4 + z0*z1^2*z2*z3*z4 + z0*z1*z2^2*z3*z4 \
         + z0*z1*z2*z3^2*z4 + z0*z1*z2*z3*z4^2 - z0*z1*z2*z3 - z0*z1*z2*z4 - z0*z1*z3*z4 - z0*z2*z3*z4 \
         - z1*z2*z3*z4 + 1",
    ),
];

/// The known numerator for `n`, with `z0` read as `z1`.
pub fn golden_numerator<C: Coefficient>(n: usize) -> Option<Polynomial<C>> {
    GOLDEN_NUMERATORS
        .iter()
        .find(|(m, _)| *m == n)
        .map(|(_, text)| parse_polynomial(text, n, 0).expect("golden numerators parse"))
}

/// Methods available to [`cross_validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recursion,
    #[serde(rename = "ie")]
    InclusionExclusion,
    #[serde(rename = "sym")]
    Symmetric,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Recursion, Method::InclusionExclusion, Method::Symmetric, Method::Oracle];

    fn label(self) -> &'static str {
        match self {
            Method::Recursion => "recursion",
            Method::InclusionExclusion => "ie",
            Method::Symmetric => "sym (conjectural)",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CrossOptions {
    pub methods: Vec<Method>,
    pub permutations: usize,
    pub seed: u64,
}

impl Default for CrossOptions {
    fn default() -> Self {
        CrossOptions { methods: Method::ALL.to_vec(), permutations: 10, seed: 20 }
    }
}

fn describe<C: Coefficient>(d: Option<(ExponentVector, C, C)>) -> (bool, String) {
    match d {
        None => (true, "agree".into()),
        Some((e, x, y)) => (false, format!("first difference at {e}: {x} vs {y}")),
    }
}

/// Compares every requested method coefficient by coefficient through
/// total degree `cap`, with symmetry, non-negativity and constant-term
/// checks on the results.
///
/// Disagreements are report entries; only infeasible requests (such as an
/// oversized exclusion set) are errors.
pub fn cross_validate(n: usize, cap: u32, options: &CrossOptions) -> Result<Report> {
    check_n(n)?;
    let wants = |m| options.methods.contains(&m);
    let mut checks = Vec::new();

    let mut series: Vec<(Method, Series<BigInt>)> = Vec::new();
    let mut numerators: Vec<NumeratorResult<BigInt>> = Vec::new();
    if wants(Method::Recursion) {
        series.push((Method::Recursion, series_by_recursion(n, cap)?));
    }
    if wants(Method::InclusionExclusion) {
        numerators.push(numerator_inclusion_exclusion(n, None)?);
    }
    if wants(Method::Symmetric) {
        numerators.push(numerator_symmetric_recursion(n)?);
    }
    for f in &numerators {
        let method = Method::from(f.method);
        let c0 = f.numerator.constant_term();
        checks.push(Check::new(
            format!("{} numerator constant term", method.label()),
            c0 == BigInt::from(1),
            format!("F(0) = {c0}"),
        ));
        series.push((method, series_from_numerator(f, cap)?));
    }

    if let Some((first, reference)) = series.first() {
        for (method, other) in &series[1..] {
            let (ok, detail) = describe(first_discrepancy(reference, other));
            checks.push(Check::new(format!("{} = {}", first.label(), method.label()), ok, detail));
        }

        let zero = ExponentVector::zeros(n);
        let c0 = reference.coefficient_at(&zero)?;
        checks.push(Check::new("series constant term", c0 == BigInt::from(1), format!("coefficient of 1 is {c0}")));

        let negative =
            sorted_terms(reference.term_map()).into_iter().find(|(_, c)| c.sign() == num_bigint::Sign::Minus);
        checks.push(match negative {
            None => {
                Check::new("non-negativity", true, format!("{} nonzero coefficients, all positive", reference.len()))
            }
            Some((e, c)) => Check::new("non-negativity", false, format!("coefficient {c} at {e}")),
        });

        if wants(Method::Oracle) {
            let lambdas = ExponentVector::all_up_to(n, cap);
            let mismatch = lambdas
                .par_iter()
                .map(|l| -> Result<Option<(ExponentVector, BigInt, BigInt)>> {
                    let want = count_gradation(n, l);
                    let got = reference.coefficient_at(l)?;
                    Ok((want != got).then(|| (l.clone(), got, want)))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .next();
            let (ok, detail) = match mismatch {
                None => (true, format!("{} gradations agree", lambdas.len())),
                Some((e, got, want)) => (false, format!("at {e}: series {got}, oracle {want}")),
            };
            checks.push(Check::new(format!("{} = oracle", first.label()), ok, detail));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let perms: Vec<Permutation> = (0..options.permutations).map(|_| Permutation::random(n, &mut rng)).collect();
        let mut broken = None;
        for p in &perms {
            if broken.is_none() {
                broken = first_discrepancy(reference, &reference.permute(p)?).map(|d| (p.clone(), d.0));
            }
        }
        checks.push(match broken {
            None => Check::new("series symmetry", true, format!("fixed by {} random permutations", perms.len())),
            Some((p, e)) => {
                Check::new("series symmetry", false, format!("permutation {p:?} moves the coefficient at {e}"))
            }
        });
        for f in &numerators {
            let ok = perms.iter().all(|p| f.numerator.permute(p).map(|g| g == f.numerator).unwrap_or(false));
            checks.push(Check::new(
                format!("{} numerator symmetry", Method::from(f.method).label()),
                ok,
                format!("{} terms", f.numerator.len()),
            ));
        }
    } else if wants(Method::Oracle) {
        checks.push(Check::new("oracle", true, "no series method requested; nothing to compare"));
    }

    Ok(Report { n, cap, checks })
}

impl From<NumeratorMethod> for Method {
    fn from(m: NumeratorMethod) -> Self {
        match m {
            NumeratorMethod::InclusionExclusion => Method::InclusionExclusion,
            NumeratorMethod::SymmetricRecursion => Method::Symmetric,
        }
    }
}
