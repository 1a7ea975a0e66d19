//! Published facts, recomputed. Every fact records where its expected value
//! comes from, so a reader can tell published claims from values derived by
//! an independent computation here.

use std::fmt::Display;

use anyhow::Result;
use kneser_core::bounds::{
    formula_chi_multiset_pairs, formula_chi_set_pairs, formula_chi_set_pairs_r4_s2, lower_bound_theorem,
    triangular_root, upper_bound_star,
};
use kneser_core::combinatorics::{binomial, largest_prime_factor};
use kneser_core::representation::{is_convex, kg1_clique_test, represent_up_monotone, verify_representation};
use kneser_core::{
    chromatic_number, colorability_defect, complete_hypergraph, defect_pairs_formula, ColorClassOracle, Error,
    GroundContext, Hypergraph, KneserInstance, MultisetEdge, SearchBudget, SetSystem, Subset, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const SCOPES: [&str; 5] = ["definitions", "representation", "counterexamples", "lower-bound", "formulas"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Stated in the published article.
    Published,
    /// Computed here by an independent route.
    Derived,
    /// Immediate from the definitions.
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub provenance: Provenance,
    pub computed: String,
    pub status: Status,
}

struct Ledger<'b> {
    scope: Option<&'b str>,
    budget: &'b SearchBudget,
    facts: Vec<Fact>,
}

impl Ledger<'_> {
    fn wants(&self, topic: &str) -> bool {
        self.scope.is_none_or(|s| s == topic)
    }

    fn check(&mut self, id: String, description: &str, expected: impl Display, provenance: Provenance, computed: impl Display, ok: bool) {
        self.facts.push(Fact {
            id,
            description: description.into(),
            expected: expected.to_string(),
            provenance,
            computed: computed.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
        });
    }

    fn skipped(&mut self, id: String, description: &str, expected: impl Display, provenance: Provenance) {
        self.facts.push(Fact {
            id,
            description: description.into(),
            expected: expected.to_string(),
            provenance,
            computed: "-".into(),
            status: Status::SkippedBudget,
        });
    }

    /// Exact chromatic number, or `None` when the budget is zero or ran out.
    fn chi(&self, instance: &KneserInstance) -> Result<Option<usize>> {
        if self.budget.is_zero() {
            return Ok(None);
        }
        match chromatic_number(&ColorClassOracle::implicit(instance)?, self.budget) {
            Ok(r) => Ok(Some(r.chi)),
            Err(Error::Budget { .. }) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Records a solver-backed equality fact.
    fn chi_fact(&mut self, id: String, description: &str, instance: &KneserInstance, expected: u64, provenance: Provenance) -> Result<Option<u64>> {
        let got = self.chi(instance)?.map(|c| c as u64);
        match got {
            Some(c) => self.check(id, description, expected, provenance, c, c == expected),
            None => self.skipped(id, description, expected, provenance),
        }
        Ok(got)
    }
}

fn pairs(n: usize, s: u32) -> Result<SetSystem> {
    Ok(SetSystem::k_subsets(GroundContext::uniform(n, s)?, 2)?)
}

fn edge(one_based: &[usize]) -> MultisetEdge {
    MultisetEdge::new(one_based.iter().map(|v| v - 1).collect())
}

/// Runs every fact in `scope` (all topics when `None`), sorted by id.
pub fn run(scope: Option<&str>, budget: &SearchBudget) -> Result<Vec<Fact>> {
    let mut ledger = Ledger { scope, budget, facts: Vec::new() };
    if ledger.wants("definitions") {
        definitions(&mut ledger)?;
    }
    if ledger.wants("representation") {
        representation(&mut ledger)?;
    }
    if ledger.wants("counterexamples") {
        counterexamples(&mut ledger)?;
    }
    if ledger.wants("lower-bound") {
        lower_bound(&mut ledger)?;
    }
    if ledger.wants("formulas") {
        formulas(&mut ledger)?;
    }
    let mut facts = ledger.facts;
    facts.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(facts)
}

fn definitions(l: &mut Ledger) -> Result<()> {
    use Provenance::*;
    let system = SetSystem::from_lists(GroundContext::new(vec![3, 2, 1])?, [vec![2, 3]])?;
    for (r, expected) in [(1, 4), (2, 2), (3, 0)] {
        let cd = colorability_defect(&system, r)?.value();
        l.check(format!("definitions.defect-example.r{r}"), "defect of {23} over [3] with s = (3,2,1)", expected, Published, cd, cd == expected);
    }

    let mut bad = Vec::new();
    for n in 1..=6u128 {
        for r in 2..=5u128 {
            let with = complete_hypergraph(n as usize, r as usize, true)?.edge_count() as u128;
            let without = complete_hypergraph(n as usize, r as usize, false)?.edge_count() as u128;
            if with != binomial(n + r - 1, r) - n || without != binomial(n, r) {
                bad.push(format!("n={n},r={r}"));
            }
        }
    }
    let computed = if bad.is_empty() { "all 24 match".to_string() } else { bad.join(" ") };
    l.check("definitions.edge-counts".into(), "complete hypergraph edge counts for n <= 6, r <= 5", "all 24 match", Published, computed, bad.is_empty());

    let singletons = SetSystem::k_subsets(GroundContext::uniform(3, 2)?, 1)?;
    let kg = kneser_core::build_kneser(&KneserInstance::new(singletons, 3, Variant::WithMultiplicities)?)?;
    let empty = SetSystem::new(GroundContext::new(vec![5, 1, 3])?, Vec::new())?;
    let cd = colorability_defect(&empty, 2)?.value();
    l.check("definitions.empty-system-defect".into(), "defect of the empty system at r = 2, s = (5,1,3)", 4, Trivial, cd, cd == 4);

    l.check("definitions.singletons-r3".into(), "edges of KG^3_2 over the singletons of [3]", 7, Published, kg.edge_count(), kg.edge_count() == 7);
    Ok(())
}

fn representation(l: &mut Ledger) -> Result<()> {
    use Provenance::*;
    let all = complete_hypergraph(3, 3, true)?;
    let candidates = all.edges();
    let (mut monotone, mut verified) = (0, 0);
    for mask in 0u32..1 << candidates.len() {
        let edges: Vec<MultisetEdge> = (0..candidates.len()).filter(|&j| mask >> j & 1 == 1).map(|j| candidates[j].clone()).collect();
        let h = Hypergraph::new(3, 3, edges, true)?;
        if let Ok(rep) = represent_up_monotone(&h) {
            monotone += 1;
            verified += usize::from(verify_representation(&h, &rep)?);
        }
    }
    l.check("representation.round-trip-on-3".into(), "up-monotone 3-uniform hypergraphs on [3] that round-trip", monotone, Published, verified, verified == monotone && monotone > 0);

    let h = Hypergraph::new(4, 3, [[1, 2, 4], [1, 3, 4], [2, 3, 4]].map(|e| edge(&e)), false)?;
    let representable = kg1_clique_test(&h)?.representable();
    l.check("representation.clique-test-124-134-234".into(), "{124,134,234} is a KG^3_1", false, Published, representable, !representable);

    let not_convex = Hypergraph::new(3, 3, [[1, 1, 3], [2, 2, 3]].map(|e| edge(&e)), true)?;
    let convex = Hypergraph::new(3, 3, [[1, 1, 2], [2, 2, 3]].map(|e| edge(&e)), true)?;
    let a = is_convex(&not_convex)?;
    let b = is_convex(&convex)?;
    l.check("representation.convex-113-223".into(), "{113,223} is convex", false, Published, a, !a);
    l.check("representation.convex-112-223".into(), "{112,223} is convex", true, Published, b, b);
    Ok(())
}

fn counterexamples(l: &mut Ledger) -> Result<()> {
    use Provenance::*;
    // star at 1 plus two disjoint pairs, n = 8, s = r - 2
    let (n, r) = (8usize, 9usize);
    let mut lists: Vec<Vec<usize>> = (2..=n).map(|j| vec![1, j]).collect();
    lists.extend([vec![2, 3], vec![4, 5]]);
    let star = SetSystem::from_lists(GroundContext::uniform(n, r as u32 - 2)?, lists)?;
    let cd = colorability_defect(&star, r)?.value();
    let expected = 3 * r as u64 - 10;
    l.check("counterexamples.star.defect".into(), "defect of the star system at n = 8, r = 9", expected, Published, cd, cd == expected);
    let chi = l.chi_fact("counterexamples.star.chi".into(), "chi(kg^9_7) of the star system", &KneserInstance::new(star, r, Variant::WithoutMultiplicities)?, 2, Published)?;
    gap(l, "counterexamples.star.gap", cd, chi, r as u64);

    let (n, r) = (6u64, 5u64);
    let system = pairs(n as usize, r as u32 - 1)?;
    let cd = colorability_defect(&system, r as usize)?.value();
    let formula = defect_pairs_formula(n, r)?;
    l.check("counterexamples.pairs.defect".into(), "defect of binom([6],2) at r = 5, s = 4", 19, Published, cd, cd == 19 && formula == 19);
    let chi = l.chi_fact(
        "counterexamples.pairs.chi".into(),
        "chi(kg^5_4(binom([6],2)))",
        &KneserInstance::new(system, r as usize, Variant::WithoutMultiplicities)?,
        n - r / 2,
        Derived,
    )?;
    gap(l, "counterexamples.pairs.gap", cd, chi, r);
    Ok(())
}

fn gap(l: &mut Ledger, id: &str, cd: u64, chi: Option<u64>, r: u64) {
    let description = "(r-1) chi < cd, so the lower bound fails without multiplicities";
    match chi {
        Some(c) => l.check(id.into(), description, format!("{} < {cd}", (r - 1) * c), Provenance::Published, (r - 1) * c, (r - 1) * c < cd),
        None => l.skipped(id.into(), description, format!("(r-1) chi < {cd}"), Provenance::Published),
    }
}

fn lower_bound(l: &mut Ledger) -> Result<()> {
    let id = "lower-bound.random-sample".to_string();
    let description = "ceil(cd/(r-1)) <= chi(KG) on 200 seeded instances with every s_i below the largest prime factor of r";
    if l.budget.is_zero() {
        l.skipped(id, description, "0 violations", Provenance::Published);
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut violations = 0;
    for _ in 0..200 {
        let r = [2usize, 3, 4, 6][rng.gen_range(0..4)];
        let p = largest_prime_factor(r as u64).expect("r >= 2") as u32;
        let n = rng.gen_range(1..=5);
        let s: Vec<u32> = (0..n).map(|_| rng.gen_range(1..p)).collect();
        let want = rng.gen_range(1..=8usize.min((1 << n) - 1));
        let mut members: Vec<Subset> = Vec::new();
        while members.len() < want {
            let m = Subset::from_bits(rng.gen_range(1..1u128 << n));
            if !members.contains(&m) {
                members.push(m);
            }
        }
        let system = SetSystem::new(GroundContext::new(s)?, members)?;
        let bound = lower_bound_theorem(&system, r as u64)?.value().expect("condition holds by construction");
        let Some(chi) = l.chi(&KneserInstance::new(system, r, Variant::WithMultiplicities)?)? else {
            l.skipped(id, description, "0 violations", Provenance::Published);
            return Ok(());
        };
        violations += usize::from(bound > chi as u64);
    }
    l.check(id, description, "0 violations", Provenance::Published, format!("{violations} violations"), violations == 0);
    Ok(())
}

fn formulas(l: &mut Ledger) -> Result<()> {
    use Provenance::*;
    for (n, r) in [(3, 4), (4, 4), (4, 5), (5, 4), (5, 5), (6, 4)] {
        let expected = formula_chi_set_pairs(n as u64, r as u64)?;
        let instance = KneserInstance::new(pairs(n, r as u32 - 1)?, r, Variant::WithoutMultiplicities)?;
        l.chi_fact(format!("formulas.set-pairs.n{n}.r{r}"), "chi(kg^r_{r-1}(binom([n],2))) against its formula", &instance, expected, Published)?;
    }

    for n in 4..=7usize {
        let expected = formula_chi_set_pairs_r4_s2(n as u64)?;
        let instance = KneserInstance::new(pairs(n, 2)?, 4, Variant::WithoutMultiplicities)?;
        l.chi_fact(format!("formulas.r4-s2.n{n}"), "chi(kg^4_2(binom([n],2))) = n - t(n)", &instance, expected, Published)?;
    }
    let bad = (0..=1_000_000u64).filter(|&n| triangular_root(n) != ((2.0 * n as f64 + 0.25).sqrt() - 0.5).floor() as u64).count();
    l.check("formulas.r4-s2.integer-form".into(), "triangular root equals the floating-point formula for n <= 10^6", 0, Derived, bad, bad == 0);

    for n in 4..=6u64 {
        let instance = KneserInstance::new(pairs(n as usize, 2)?, 4, Variant::WithMultiplicities)?;
        let star = upper_bound_star(n, 2, 4, 2)?;
        let chi = l.chi_fact(format!("formulas.multiset-pairs.n{n}"), "chi(KG^4_2(binom([n],2))) = n - 2", &instance, n - 2, Derived)?;
        let id = format!("formulas.multiset-pairs.summary-conflict.n{n}");
        let description = "the summary value n - 1 disagrees with the exact value";
        match chi {
            Some(c) => l.check(id, description, format!("not {}", n - 1), Derived, c, c != n - 1 && c == star),
            None => l.skipped(id, description, format!("not {}", n - 1), Derived),
        }
    }
    for (n, r, s) in [(5u64, 5u64, 3u64), (6, 5, 3), (6, 6, 4)] {
        let expected = formula_chi_multiset_pairs(n, r, s)?;
        let instance = KneserInstance::new(pairs(n as usize, s as u32)?, r as usize, Variant::WithMultiplicities)?;
        l.chi_fact(format!("formulas.multiset-pairs.n{n}.r{r}.s{s}"), "chi(KG^r_s(binom([n],2))) = 1 + n - floor((2r-1)/s)", &instance, expected, Published)?;
    }

    for n in 3..=7u64 {
        for r in 2..=6u64 {
            let cd = colorability_defect(&pairs(n as usize, r as u32 - 1)?, r as usize)?.value();
            let expected = defect_pairs_formula(n, r)?;
            l.check(format!("formulas.defect-pairs.n{n}.r{r}"), "defect of binom([n],2) with s = r - 1", expected, Published, cd, cd == expected);
        }
    }

    let id = "formulas.upper-bound.sweep".to_string();
    let description = "chi(KG^r_s(binom([n],k))) <= the upper bound on all admissible instances with <= 21 vertices, r <= 6";
    let mut checked = 0;
    let mut violations = Vec::new();
    for r in 3..=6u64 {
        for s in 2..r {
            for n in 2..=21u64 {
                for k in 2..=n {
                    if binomial(n.into(), k.into()) > 21 || r * k > s * n {
                        continue;
                    }
                    let bound = upper_bound_star(n, k, r, s)?;
                    let system = SetSystem::k_subsets(GroundContext::uniform(n as usize, s as u32)?, k as usize)?;
                    let Some(chi) = l.chi(&KneserInstance::new(system, r as usize, Variant::WithMultiplicities)?)? else {
                        l.skipped(id, description, "0 violations", Published);
                        return Ok(());
                    };
                    checked += 1;
                    if chi as u64 > bound {
                        violations.push(format!("n={n},k={k},r={r},s={s}"));
                    }
                }
            }
        }
    }
    let computed = format!("{} violations in {checked}", violations.len());
    l.check(id, description, "0 violations", Published, computed, violations.is_empty());
    Ok(())
}

/// Aligned text table with a summary line; no timings, so identical runs
/// print identical bytes.
pub fn render_text(facts: &[Fact]) -> String {
    let status = |f: &Fact| match f.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::SkippedBudget => "skipped-budget",
    };
    let provenance = |f: &Fact| match f.provenance {
        Provenance::Published => "published",
        Provenance::Derived => "derived",
        Provenance::Trivial => "trivial",
    };
    let id_w = facts.iter().map(|f| f.id.len()).max().unwrap_or(0);
    let exp_w = facts.iter().map(|f| f.expected.len()).max().unwrap_or(0);
    let got_w = facts.iter().map(|f| f.computed.len()).max().unwrap_or(0);
    let mut out = String::new();
    for f in facts {
        out += &format!(
            "{:<14}  {:<id_w$}  expected {:<exp_w$}  got {:<got_w$}  {:<11}  {}\n",
            status(f),
            f.id,
            f.expected,
            f.computed,
            format!("[{}]", provenance(f)),
            f.description
        );
    }
    let count = |s: Status| facts.iter().filter(|f| f.status == s).count();
    out += &format!(
        "{} passed, {} failed, {} skipped\n",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::SkippedBudget)
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fact_passes_with_a_budget() {
        let facts = run(None, &SearchBudget::seconds(60)).unwrap();
        let bad: Vec<_> = facts.iter().filter(|f| f.status != Status::Pass).collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert!(facts.windows(2).all(|w| w[0].id < w[1].id));
    }

    #[test]
    fn zero_budget_skips_only_solver_facts() {
        let facts = run(Some("counterexamples"), &SearchBudget::seconds(0)).unwrap();
        let status = |id: &str| facts.iter().find(|f| f.id == id).unwrap().status;
        assert_eq!(status("counterexamples.star.defect"), Status::Pass);
        assert_eq!(status("counterexamples.star.chi"), Status::SkippedBudget);
        assert_eq!(status("counterexamples.pairs.gap"), Status::SkippedBudget);
    }

    #[test]
    fn scopes_filter_by_prefix() {
        for scope in SCOPES {
            let facts = run(Some(scope), &SearchBudget::seconds(0)).unwrap();
            assert!(!facts.is_empty());
            assert!(facts.iter().all(|f| f.id.starts_with(&format!("{scope}."))));
        }
    }

    #[test]
    fn text_rendering_is_deterministic() {
        let a = render_text(&run(Some("definitions"), &SearchBudget::seconds(60)).unwrap());
        let b = render_text(&run(Some("definitions"), &SearchBudget::seconds(60)).unwrap());
        assert_eq!(a, b);
        assert!(a.ends_with("6 passed, 0 failed, 0 skipped\n"));
    }
}
