//! End-to-end verification items behind the `check-paper` command.
//!
//! Each item recomputes a published statement exhaustively on the fixtures,
//! the enumerated small semirings, `Z_n` or ideals of the nonnegative
//! integers, and reports pass or fail with a one-line detail. The four text
//! fixtures can be replaced from a directory for fault injection.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;

use serde::Serialize;

use crate::classify::census::Flags;
use crate::classify::enumerate::{enumerate_inclines, enumerate_semirings, Constraints};
use crate::classify::iso::canonical_form;
use crate::classify::verify::{verify_k_simple_inclines, zn_simplicity_conditions};
use crate::congruence::{
    enumerate_congruences, inclusion_counterexample, is_k_congruence, is_k_congruence_by_inclusion,
    is_k_congruence_simple, kappa, kappa_injectivity_probe, oracle, quotient, verify_bijection, zero_class,
    Congruence,
};
use crate::fixtures;
use crate::ideals::{enumerate_ideals, enumerate_k_ideals, is_ideal, is_k_ideal, is_k_simple, k_closure};
use crate::kernel::FiniteSemiring;
use crate::natsr::{self, nat_contains, nat_in_k_closure, nat_is_k_closed_upto, nat_sum, NatIdeal};
use crate::partition::Partition;
use crate::specfmt::parse_semiring;
use crate::subset::ElementSubset;

/// Check identifiers in execution order.
pub const CHECK_IDS: [&str; 17] = [
    "preliminaries",
    "lemma-3.1",
    "example-3.4",
    "example-3.5",
    "theorem-3.3",
    "theorem-3.8",
    "theorem-3.8-2",
    "remark-3.9",
    "remark-4.1",
    "theorem-4.2",
    "theorem-4.4",
    "corollary-4.5",
    "lemma-5.1",
    "example-5.3",
    "theorem-5.4",
    "example-6.1",
    "oracles",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!("{} {} {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.detail)
    }
}

/// The four text fixtures, parsed. A fixture that fails to parse is kept as
/// its error message so dependent checks fail instead of aborting the run.
pub struct FixtureSet {
    entries: Vec<(String, Result<FiniteSemiring, String>)>,
}

impl FixtureSet {
    pub fn shipped() -> Self {
        FixtureSet {
            entries: fixtures::SHIPPED
                .iter()
                .map(|(name, text)| (name.to_string(), parse_semiring(text).map_err(|e| e.to_string())))
                .collect(),
        }
    }

    /// Reads `<name>.sr` from `dir` for each shipped fixture; files absent
    /// from the directory fall back to the shipped copy.
    pub fn from_dir(dir: &Path) -> std::io::Result<Self> {
        let mut entries = Vec::new();
        for (name, shipped) in fixtures::SHIPPED {
            let path = dir.join(format!("{name}.sr"));
            let text = if path.exists() {
                std::fs::read_to_string(&path)?
            } else {
                shipped.to_string()
            };
            let parsed = parse_semiring(&text).map_err(|e| format!("{}: {e}", path.display()));
            entries.push((name.to_string(), parsed));
        }
        Ok(FixtureSet { entries })
    }

    pub fn get(&self, name: &str) -> Result<&FiniteSemiring, String> {
        match self.entries.iter().find(|(n, _)| n == name) {
            Some((_, Ok(sr))) => Ok(sr),
            Some((_, Err(e))) => Err(format!("fixture {name} unusable: {e}")),
            None => Err(format!("no fixture named {name}")),
        }
    }

    /// The text fixtures followed by the generated catalogue instances.
    pub fn all(&self) -> Result<Vec<FiniteSemiring>, String> {
        let mut out = Vec::new();
        for (name, _) in &self.entries {
            out.push(self.get(name)?.clone());
        }
        let generated = fixtures::catalogue().into_iter().skip(fixtures::SHIPPED.len()).map(|(_, s)| s);
        out.extend(generated);
        Ok(out)
    }
}

type CheckResult = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn subset(sr: &FiniteSemiring, names: &[&str]) -> Result<ElementSubset, String> {
    ElementSubset::from_names(sr, names).ok_or_else(|| format!("{} lacks one of {names:?}", sr.name()))
}

fn preliminaries(fx: &FixtureSet) -> CheckResult {
    let mut ideals_seen = 0;
    for sr in fx.all()? {
        let ideals = enumerate_ideals(&sr).map_err(err)?;
        let closures: Vec<ElementSubset> = ideals.iter().map(|a| k_closure(&sr, a)).collect::<Result<_, _>>().map_err(err)?;
        for (a, c) in ideals.iter().zip(&closures) {
            let name = || format!("{} ideal {}", sr.name(), a.display(&sr));
            ensure(a.is_subset_of(c), || format!("{}: not contained in its closure", name()))?;
            ensure(k_closure(&sr, c).map_err(err)? == *c, || format!("{}: closure not idempotent", name()))?;
            ensure(kappa(&sr, a).map_err(err)? == kappa(&sr, c).map_err(err)?, || {
                format!("{}: Bourne relation differs from that of the closure", name())
            })?;
            let theta = kappa(&sr, a).map_err(err)?;
            ensure(zero_class(&sr, &theta) == Some(*c), || format!("{}: zero class is not the closure", name()))?;
        }
        for (i, a) in ideals.iter().enumerate() {
            for (j, b) in ideals.iter().enumerate() {
                if a.is_subset_of(b) {
                    ensure(closures[i].is_subset_of(&closures[j]), || {
                        format!("{}: closure not monotone on {} <= {}", sr.name(), a.display(&sr), b.display(&sr))
                    })?;
                }
            }
        }
        ideals_seen += ideals.len();
    }
    Ok(format!("{ideals_seen} ideals: extensive, idempotent, monotone closure; kappa(A) = kappa(closure); zero class = closure"))
}

fn zero_classes_are_k_ideals(fx: &FixtureSet) -> CheckResult {
    let mut with_zero = 0;
    for sr in fx.all()? {
        for theta in enumerate_congruences(&sr).map_err(err)? {
            if let Some(z) = zero_class(&sr, &theta) {
                ensure(is_k_ideal(&sr, &z), || format!("{}: zero class {} not a k-ideal", sr.name(), z.display(&sr)))?;
                with_zero += 1;
            }
        }
    }
    Ok(format!("{with_zero} quotients with a zero; every zero class is a k-ideal"))
}

fn first_lattice(fx: &FixtureSet) -> CheckResult {
    let sr = fx.get("fig1_example34")?;
    let a = subset(sr, &["0", "a"])?;
    ensure(is_ideal(sr, &a), || "{0,a} is not an ideal".into())?;
    let theta = kappa(sr, &a).map_err(err)?;
    let want = Partition::from_blocks(sr.order(), &[a, subset(sr, &["b", "c", "d", "1"])?]).ok_or("bad blocks")?;
    ensure(*theta.partition() == want, || format!("kappa classes {}", theta.display(sr)))?;
    ensure(is_k_congruence(sr, &theta), || "kappa({0,a}) not reported as a k-congruence".into())?;
    let q = quotient(sr, &theta);
    ensure(q.quotient.order() == 2, || "quotient does not have two elements".into())?;
    Ok(format!("kappa({{0,a}}) = {} is a k-congruence", theta.display(sr)))
}

fn second_lattice(fx: &FixtureSet) -> CheckResult {
    let sr = fx.get("fig2_example35")?;
    let zero = subset(sr, &["0"])?;
    let rest = subset(sr, &["a", "b", "c", "1"])?;
    let p = Partition::from_blocks(sr.order(), &[zero, rest]).ok_or("bad blocks")?;
    let theta = Congruence::new(sr, p).map_err(|e| format!("{{0}} {{a,b,c,1}}: {e}"))?;
    ensure(zero_class(sr, &theta) == Some(zero), || "zero class is not {0}".into())?;
    ensure(!is_k_congruence(sr, &theta), || "reported as a k-congruence".into())?;
    let k0 = kappa(sr, &zero).map_err(err)?;
    let witness = inclusion_counterexample(&theta, &k0).ok_or("theta is contained in kappa({0})")?;
    let names = (sr.elements()[witness.0].as_str(), sr.elements()[witness.1].as_str());
    ensure(names == ("a", "b"), || format!("witness pair {names:?}"))?;
    Ok("{0} {a,b,c,1} is a congruence with zero class {0}, not a k-congruence; (a,b) escapes kappa({0})".into())
}

fn criteria_agree(fx: &FixtureSet) -> CheckResult {
    let mut total = 0;
    for sr in fx.all()?.iter().filter(|s| s.order() <= 6) {
        for theta in enumerate_congruences(sr).map_err(err)? {
            let by_def = oracle::is_k_congruence_by_ideal_scan(sr, &theta).map_err(err)?;
            let by_inclusion = is_k_congruence_by_inclusion(sr, &theta);
            let by_equality = is_k_congruence(sr, &theta);
            ensure(by_def == by_inclusion && by_inclusion == by_equality, || {
                format!("{} {}: {by_def} {by_inclusion} {by_equality}", sr.name(), theta.display(sr))
            })?;
            total += 1;
        }
    }
    Ok(format!("three criteria agree on {total} congruences"))
}

fn bijection(fx: &FixtureSet) -> CheckResult {
    let mut pairs = 0;
    for sr in fx.all()? {
        let r = verify_bijection(&sr).map_err(err)?;
        ensure(r.holds(), || format!("{}: {r:?}", sr.name()))?;
        pairs += r.k_ideal_count;
    }
    Ok(format!("kappa is an inclusion-preserving bijection on {pairs} k-ideals"))
}

fn injectivity_forces_k_ideals(fx: &FixtureSet) -> CheckResult {
    let mut extensions = 0;
    for sr in fx.all()? {
        let k_ideals = enumerate_k_ideals(&sr).map_err(err)?;
        ensure(kappa_injectivity_probe(&sr, &k_ideals).map_err(err)?.is_none(), || {
            format!("{}: kappa not injective on k-ideals", sr.name())
        })?;
        for a in enumerate_ideals(&sr).map_err(err)?.into_iter().filter(|a| !k_ideals.contains(a)) {
            let mut family = k_ideals.clone();
            family.push(a);
            ensure(kappa_injectivity_probe(&sr, &family).map_err(err)?.is_some(), || {
                format!("{}: adding {} keeps kappa injective", sr.name(), a.display(&sr))
            })?;
            extensions += 1;
        }
    }
    ensure(extensions > 0, || "no fixture has an ideal that is not a k-ideal".into())?;
    Ok(format!("each of {extensions} one-ideal extensions of the k-ideals breaks injectivity"))
}

fn idempotent_encodings(fx: &FixtureSet) -> CheckResult {
    let mut checked = 0;
    for sr in fx.all()?.iter().filter(|s| s.is_additively_idempotent()) {
        for a in enumerate_ideals(sr).map_err(err)? {
            ensure(oracle::single_shift_relation(sr, &a) == oracle::two_shift_relation(sr, &a), || {
                format!("{} ideal {}: encodings differ", sr.name(), a.display(sr))
            })?;
            checked += 1;
        }
    }
    Ok(format!("one- and two-element encodings agree on {checked} ideals"))
}

fn universal_and_identity(fx: &FixtureSet) -> CheckResult {
    let all = fx.all()?;
    for sr in &all {
        let full = ElementSubset::full(sr.order());
        ensure(kappa(sr, &full).map_err(err)?.is_universal(), || format!("{}: kappa(R) not universal", sr.name()))?;
    }
    let without = all
        .iter()
        .find(|sr| !is_k_congruence(sr, &Congruence::identity(sr)))
        .ok_or("identity relation is a k-congruence everywhere")?;
    Ok(format!("kappa(R) is universal on all; identity is not a k-congruence on {}", without.name()))
}

fn small_enumerations() -> Result<Vec<FiniteSemiring>, String> {
    let mut out = enumerate_semirings(2, &Constraints::none()).map_err(err)?;
    out.extend(enumerate_semirings(3, &Constraints::none()).map_err(err)?);
    Ok(out)
}

fn zero_iff_identity(fx: &FixtureSet) -> CheckResult {
    let mut pool = fx.all()?;
    pool.extend(small_enumerations()?);
    let mut zero_free = 0;
    for sr in &pool {
        let identity = Congruence::identity(sr);
        let has_zero = sr.find_zero();
        ensure(has_zero.is_some() == is_k_congruence(sr, &identity), || format!("{} disagrees", sr.name()))?;
        match has_zero {
            Some(z) => {
                let k0 = kappa(sr, &ElementSubset::singleton(sr.order(), z)).map_err(err)?;
                ensure(k0 == identity, || format!("{}: kappa({{0}}) is not the identity", sr.name()))?;
            }
            None => zero_free += 1,
        }
    }
    Ok(format!("{} semirings ({zero_free} zero-free): zero exists iff identity is a k-congruence", pool.len()))
}

fn simplicity_agrees(fx: &FixtureSet) -> CheckResult {
    let mut pool = fx.all()?;
    pool.extend(small_enumerations()?);
    let mut simple = 0;
    for sr in &pool {
        let a = is_k_simple(sr).map_err(err)?;
        let b = is_k_congruence_simple(sr).map_err(err)?;
        ensure(a == b, || format!("{}: k-simple {a}, k-congruence-simple {b}", sr.name()))?;
        simple += a as usize;
    }
    Ok(format!("{} semirings, {simple} k-simple, all k-congruence-simple exactly when k-simple", pool.len()))
}

fn zn_conditions(_: &FixtureSet) -> CheckResult {
    let mut primes = Vec::new();
    for n in 2..=8 {
        let c = zn_simplicity_conditions(n).map_err(err)?;
        ensure(c.agree(), || format!("Z{n}: conditions {:?}", c.values()))?;
        ensure(c.ideal_free == c.is_prime, || format!("Z{n}: conditions {} but prime {}", c.ideal_free, c.is_prime))?;
        if c.ideal_free {
            primes.push(n.to_string());
        }
    }
    Ok(format!("Z2..Z8: six conditions agree, true for n = {}", primes.join(",")))
}

fn incline_extremes(_: &FixtureSet) -> CheckResult {
    let mut n = 0;
    for order in 1..=4 {
        for sr in enumerate_inclines(order).map_err(err)? {
            let ext = sr.extremal_elements().map_err(err)?;
            ensure(ext.greatest.is_some() && ext.least.is_some(), || format!("{} lacks extremes", sr.name()))?;
            n += 1;
        }
    }
    Ok(format!("{n} inclines of order <= 4 have a greatest and a least element"))
}

fn two_element_inclines(fx: &FixtureSet) -> CheckResult {
    let inclines = enumerate_inclines(2).map_err(err)?;
    ensure(inclines.len() == 2, || format!("{} inclines of order 2", inclines.len()))?;
    for name in ["r0", "r1"] {
        let sr = fx.get(name)?;
        let (key, perm) = canonical_form(sr).map_err(err)?;
        let rep = inclines
            .iter()
            .find(|i| canonical_form(i).map(|(k, _)| k) == Ok(key.clone()))
            .ok_or_else(|| format!("{name} is not an enumerated incline"))?;
        let relabeled = sr.permuted(&perm);
        ensure(relabeled.add_table() == rep.add_table() && relabeled.mul_table() == rep.mul_table(), || {
            format!("{name} tables differ from the canonical representative")
        })?;
        let flags = Flags::of(sr).map_err(err)?;
        ensure(flags.k_simple && flags.congruence_simple && flags.ideal_free, || format!("{name}: {flags:?}"))?;
    }
    Ok("exactly two 2-element inclines, matching r0 and r1; both k-simple, congruence-simple, ideal-free".into())
}

fn k_simple_inclines(fx: &FixtureSet) -> CheckResult {
    fx.get("r0")?;
    fx.get("r1")?;
    let report = verify_k_simple_inclines(4).map_err(err)?;
    ensure(report.holds(), || format!("{report:?}"))?;
    let counts: Vec<String> = report
        .orders
        .iter()
        .map(|o| format!("order {}: {} inclines, {} k-simple", o.order, o.inclines, o.k_simple))
        .collect();
    ensure(report.orders.iter().all(|o| (o.order == 2) == (o.k_simple > 0)), || counts.join("; "))?;
    Ok(counts.join("; "))
}

fn nat_sum_not_closed(_: &FixtureSet) -> CheckResult {
    let two = NatIdeal::principal(2).map_err(err)?;
    let three = NatIdeal::principal(3).map_err(err)?;
    let sum = nat_sum(&two, &three);
    ensure(nat_contains(&sum, 6).map_err(err)? && nat_contains(&sum, 7).map_err(err)?, || "6 or 7 missing".into())?;
    ensure(!nat_contains(&sum, 1).map_err(err)?, || "1 is a member".into())?;
    ensure(nat_in_k_closure(&sum, 1).map_err(err)?, || "1 not in the closure".into())?;
    ensure(natsr::is_k_closure_witness(&sum, 1, 6).map_err(err)?, || "6 is not a witness for 1".into())?;
    ensure(nat_is_k_closed_upto(&sum, 100).map_err(err)? == Some(1), || "closure violation is not 1".into())?;
    for i in [&two, &three] {
        ensure(nat_is_k_closed_upto(i, 100).map_err(err)?.is_none(), || format!("{} not closed", i.display()))?;
    }
    Ok("(2)+(3) contains 6 and 7 but not 1, and 1+6=7, so the sum of two k-ideals is not k-closed".into())
}

fn oracles(fx: &FixtureSet) -> CheckResult {
    let mut congs = 0;
    for sr in fx.all()?.iter().filter(|s| s.order() <= 5) {
        for theta in enumerate_congruences(sr).map_err(err)? {
            let by_def = oracle::is_k_congruence_by_ideal_scan(sr, &theta).map_err(err)?;
            ensure(by_def == is_k_congruence(sr, &theta), || format!("{} {}", sr.name(), theta.display(sr)))?;
            congs += 1;
        }
    }
    let mut sets = 0;
    for a in 2..=9u64 {
        let mut gens = vec![vec![a]];
        for b in a + 1..=9 {
            gens.push(vec![a, b]);
            gens.extend((b + 1..=9).map(|c| vec![a, b, c]));
        }
        for g in gens {
            let ideal = NatIdeal::new(&g).map_err(err)?;
            for x in 0..=200 {
                ensure(nat_contains(&ideal, x).map_err(err)? == natsr::oracle::brute_force_contains(&g, x), || {
                    format!("membership of {x} in {g:?}")
                })?;
            }
            sets += 1;
        }
    }
    Ok(format!("{congs} congruences match the ideal-scan definition; {sets} generator sets match enumeration up to 200"))
}

fn dispatch(id: &str) -> fn(&FixtureSet) -> CheckResult {
    match id {
        "preliminaries" => preliminaries,
        "lemma-3.1" => zero_classes_are_k_ideals,
        "example-3.4" => first_lattice,
        "example-3.5" => second_lattice,
        "theorem-3.3" => criteria_agree,
        "theorem-3.8" => bijection,
        "theorem-3.8-2" => injectivity_forces_k_ideals,
        "remark-3.9" => idempotent_encodings,
        "remark-4.1" => universal_and_identity,
        "theorem-4.2" => zero_iff_identity,
        "theorem-4.4" => simplicity_agrees,
        "corollary-4.5" => zn_conditions,
        "lemma-5.1" => incline_extremes,
        "example-5.3" => two_element_inclines,
        "theorem-5.4" => k_simple_inclines,
        "example-6.1" => nat_sum_not_closed,
        "oracles" => oracles,
        other => unreachable!("unknown check {other}"),
    }
}

/// Runs one check. Panics inside the computation count as failures.
pub fn run_check(id: &'static str, fx: &FixtureSet) -> CheckOutcome {
    let f = dispatch(id);
    let result = panic::catch_unwind(AssertUnwindSafe(|| f(fx)));
    let (passed, detail) = match result {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (false, format!("internal assertion failed: {msg}"))
        }
    };
    CheckOutcome { id, passed, detail }
}

/// Runs the selected checks (all when `only` is empty) in [`CHECK_IDS`]
/// order. Unknown identifiers are returned as the error.
pub fn run_checks(fx: &FixtureSet, only: &[String]) -> Result<Vec<CheckOutcome>, Vec<String>> {
    let unknown: Vec<String> = only.iter().filter(|o| !CHECK_IDS.contains(&o.as_str())).cloned().collect();
    if !unknown.is_empty() {
        return Err(unknown);
    }
    Ok(CHECK_IDS
        .iter()
        .filter(|id| only.is_empty() || only.iter().any(|o| o == *id))
        .map(|id| run_check(id, fx))
        .collect())
}
