//! Structural checks: simplicity, deductive systems, the c-filter/congruence
//! correspondence, Leibniz non-injectivity and the implicativity probe.

use std::collections::BTreeMap;

use super::{LawItem, LawReport, Witness};
use crate::algebra::{self, Algebra};
use crate::base::BaseFamily;
use crate::error::Result;
use crate::filters;
use crate::finite::FiniteAlgebra;
use crate::product::{enumerate_subalgebras, CyclicAlgebra, DEFAULT_ENUMERATION_BOUND};
use crate::subset::AlgSubset;

/// Largest algebra in the structural battery.
pub const BATTERY_MAX_SIZE: usize = 16;

fn item(law: impl Into<String>, holds: bool, expected: bool, witness: Option<Witness>) -> LawItem {
    LawItem {
        law: law.into(),
        holds,
        expected,
        mutant: false,
        witness,
    }
}

fn note(algebra: &str, text: impl Into<String>) -> Witness {
    Witness {
        algebra: algebra.to_string(),
        assignment: BTreeMap::new(),
        note: Some(text.into()),
    }
}

/// Simple algebras of period k: the three generators and, when k is within
/// the enumeration bound, every subalgebra of them.
fn simples(k: usize) -> Result<Vec<FiniteAlgebra>> {
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for fam in [BaseFamily::Two, BaseFamily::Three, BaseFamily::Four] {
        if k <= DEFAULT_ENUMERATION_BOUND {
            for e in enumerate_subalgebras(fam, k)? {
                if e.algebra.size() <= BATTERY_MAX_SIZE
                    && seen.insert(e.algebra.universe().to_vec())
                {
                    out.push(e.algebra.to_finite());
                }
            }
        } else {
            let a = CyclicAlgebra::full(fam, k)?;
            if a.size() <= BATTERY_MAX_SIZE {
                out.push(a.to_finite());
            }
        }
    }
    Ok(out)
}

/// Algebras of period k with at most 16 elements: simple algebras and their
/// products of two or three factors.
pub fn test_battery(k: usize) -> Result<Vec<FiniteAlgebra>> {
    let base = simples(k)?;
    let mut out = base.clone();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.size() * b.size() <= BATTERY_MAX_SIZE && a.size() > 1 && b.size() > 1 {
                let ab = FiniteAlgebra::product(a, b)?;
                for c in &base[i..] {
                    if c.size() > 1 && ab.size() * c.size() <= BATTERY_MAX_SIZE {
                        out.push(FiniteAlgebra::product(&ab, c)?);
                    }
                }
                out.push(ab);
            }
        }
    }
    Ok(out)
}

/// Simplicity of T2,k, T3,k, T4,k (and their subalgebras for small k) via
/// three independent criteria, plus non-simple controls.
pub fn check_simplicity(k: usize) -> Result<LawReport> {
    let mut items = Vec::new();
    for fam in [BaseFamily::Two, BaseFamily::Three, BaseFamily::Four] {
        let a = CyclicAlgebra::full(fam, k)?.to_finite();
        let r = filters::is_simple(&a)?;
        let w = (!r.simple).then(|| {
            let c = r.conditions.iter().find(|c| !c.holds).unwrap();
            note(
                &a.name(),
                format!("{}: {}", c.condition, c.witness.clone().unwrap_or_default()),
            )
        });
        items.push(item(
            format!("{} is simple (all three criteria agree)", a.name()),
            r.simple,
            true,
            w,
        ));
    }
    if k <= 3 {
        for a in simples(k)? {
            let r = filters::is_simple(&a)?;
            items.push(item(
                format!("subalgebra {} is simple", a.name()),
                r.simple,
                true,
                None,
            ));
        }
    }
    if k <= 2 {
        let t4 = CyclicAlgebra::full(BaseFamily::Four, k)?.to_finite();
        let t2 = CyclicAlgebra::full(BaseFamily::Two, k)?.to_finite();
        let p = FiniteAlgebra::product(&t4, &t2)?;
        let r = filters::is_simple(&p)?;
        let w = r.conditions[1].witness.as_ref().map(|x| {
            note(
                &p.name(),
                format!("meet of t^j(tri a) is nonzero at a = {x}"),
            )
        });
        items.push(item(format!("{} is simple", p.name()), r.simple, false, w));
    }
    Ok(LawReport::new(
        "simplicity",
        k,
        "exhaustive on each listed finite algebra",
        items,
        Vec::new(),
    ))
}

fn all_subsets(n: usize) -> impl Iterator<Item = AlgSubset> {
    (0u64..1 << n).map(move |bits| AlgSubset::from_predicate(n, |i| bits & (1 << i) != 0))
}

/// Cyclic deductive systems, their generation, maximality and
/// semisimplicity on the battery.
pub fn check_deductive_systems(k: usize) -> Result<LawReport> {
    let mut items = Vec::new();
    for a in test_battery(k)? {
        let n = a.size();
        let name = a.name();
        let mismatch = all_subsets(n)
            .find(|s| filters::is_c_filter(&a, s) != filters::is_cyclic_deductive(&a, s));
        items.push(item(
            format!("{name}: c-filters are exactly the cyclic deductive systems"),
            mismatch.is_none(),
            true,
            mismatch.map(|s| note(&name, format!("{:?}", filters::subset_labels(&a, &s)))),
        ));

        let mut gen_error = None;
        'outer: for h in std::iter::once(None).chain((0..n as u32).map(Some)) {
            let hs: Vec<u32> = h.into_iter().collect();
            for x in 0..n as u32 {
                if let Err(e) = filters::deductive_generated(&a, &hs, Some(x)) {
                    gen_error = Some(note(&name, format!("H = {hs:?}, a = {}: {e}", a.label(x))));
                    break 'outer;
                }
            }
        }
        items.push(item(
            format!("{name}: D(H, a) agrees across its characterisations"),
            gen_error.is_none(),
            true,
            gen_error,
        ));

        let mut max_error = None;
        for m in filters::c_filters(&a)
            .into_iter()
            .filter(|m| filters::is_proper(&a, m))
        {
            if let Err(e) = filters::maximality_equivalents(&a, &m) {
                max_error = Some(note(
                    &name,
                    format!("{:?}: {e}", filters::subset_labels(&a, &m)),
                ));
                break;
            }
        }
        items.push(item(
            format!(
                "{name}: the five maximality conditions agree on every proper deductive system"
            ),
            max_error.is_none(),
            true,
            max_error,
        ));

        let semi = filters::check_semisimplicity(&a);
        let bad = semi.iter().find(|c| !c.holds);
        items.push(item(
            format!("{name}: semisimple"),
            bad.is_none(),
            true,
            bad.map(|c| {
                note(
                    &name,
                    format!("{}: {}", c.condition, c.witness.clone().unwrap_or_default()),
                )
            }),
        ));

        let mut br_error = None;
        for p in filters::prime_filters(&a) {
            let q = filters::birula_rasiowa(&a, &p)?;
            let tp = filters::shift_image(&a, &p, 1);
            let ok = filters::is_prime_filter(&a, &q)
                && filters::birula_rasiowa(&a, &q)? == p
                && filters::is_prime_filter(&a, &tp)
                && filters::birula_rasiowa(&a, &tp)? == filters::shift_image(&a, &q, 1);
            if !ok {
                br_error = Some(note(&name, format!("{:?}", filters::subset_labels(&a, &p))));
                break;
            }
        }
        items.push(item(
            format!("{name}: phi is an involution on prime filters commuting with t"),
            br_error.is_none(),
            true,
            br_error,
        ));
    }
    Ok(LawReport::new(
        "deductive",
        k,
        "exhaustive on every battery algebra (all subsets for the c-filter/deductive-system comparison)",
        items,
        Vec::new(),
    ))
}

/// F ↦ R(F) is an order isomorphism onto Con(A), and maximal c-filters
/// decompose through a unique ultrafilter orbit.
pub fn check_correspondence(k: usize) -> Result<LawReport> {
    let mut items = Vec::new();
    for a in test_battery(k)? {
        let name = a.name();
        let r = filters::filter_congruence_correspondence(&a)?;
        items.push(item(
            format!(
                "{name}: F -> R(F) is a poset isomorphism ({} c-filters, {} congruences)",
                r.c_filters, r.congruences
            ),
            r.holds(),
            true,
            (!r.holds()).then(|| note(&name, format!("{r:?}"))),
        ));
        let mut failure = None;
        for m in filters::maximal_c_filters(&a) {
            let outcome = filters::ultrafilter_decomposition(&a, &m)
                .and_then(|_| filters::filter_period(&a, &m));
            if let Err(e) = outcome {
                failure = Some(note(
                    &name,
                    format!("{:?}: {e}", filters::subset_labels(&a, &m)),
                ));
                break;
            }
        }
        items.push(item(
            format!("{name}: every maximal c-filter decomposes through one ultrafilter orbit"),
            failure.is_none(),
            true,
            failure,
        ));
    }
    Ok(LawReport::new(
        "correspondence",
        k,
        "exhaustive on every battery algebra",
        items,
        Vec::new(),
    ))
}

fn constant_label(sym: &str, k: usize) -> String {
    if k == 1 {
        sym.to_string()
    } else {
        format!("({})", vec![sym; k].join(","))
    }
}

/// On T4 with the identity shift (the diagonal copy inside T4,k), the filters
/// ↑a and ↑b differ but have the same Leibniz congruence.
pub fn check_leibniz_noninjectivity(k: usize) -> Result<LawReport> {
    let host = if k == 1 {
        CyclicAlgebra::full(BaseFamily::Four, 1)?
    } else {
        CyclicAlgebra::diagonal(BaseFamily::Four, k, 1)?
    };
    let a = host.to_finite();
    let name = a.name();
    let find = |s: &str| {
        a.find(&constant_label(s, k))
            .expect("constant word in diagonal")
    };
    let ua = filters::principal_filter(&a, find("a"));
    let ub = filters::principal_filter(&a, find("b"));
    let la = filters::leibniz(&a, &ua)?;
    let lb = filters::leibniz(&a, &ub)?;
    let pa = filters::leibniz_by_polynomials(&a, &ua, 1 << 16)?;
    let pb = filters::leibniz_by_polynomials(&a, &ub, 1 << 16)?;
    let blocks = |c: &filters::Congruence| format!("{:?}", c.blocks(&a));
    let items = vec![
        item(format!("{name}: up(a) != up(b)"), ua != ub, true, None),
        item(
            format!("{name}: leibniz(up(a)) = leibniz(up(b))"),
            la == lb,
            true,
            (la != lb).then(|| note(&name, format!("{} vs {}", blocks(&la), blocks(&lb)))),
        ),
        item(
            format!("{name}: the common value is the identity congruence"),
            la.is_identity() && lb.is_identity(),
            true,
            (!la.is_identity()).then(|| note(&name, blocks(&la))),
        ),
        item(
            format!("{name}: lattice and polynomial computations of leibniz agree"),
            la == pa && lb == pb,
            true,
            None,
        ),
    ];
    let mut warnings = Vec::new();
    if la.is_identity() {
        warnings.push(
            "the common Leibniz congruence is the identity, not A x A: A x A identifies a with 0 and so is not compatible with up(a)"
                .to_string(),
        );
    }
    Ok(LawReport::new(
        "leibniz",
        k,
        "exhaustive over the congruence lattice and unary polynomials of the diagonal copy of T4",
        items,
        warnings,
    ))
}

/// Searches T3,k and T4,k for x ≠ y with δ(x,y) = 1.
pub fn probe_implicativity(k: usize) -> Result<LawReport> {
    let mut items = Vec::new();
    let mut warnings = Vec::new();
    for fam in [BaseFamily::Four, BaseFamily::Three] {
        let alg = CyclicAlgebra::full(fam, k)?;
        let els = alg.elements();
        let found = els.iter().find_map(|&x| {
            els.iter()
                .find(|&&y| y != x && algebra::delta(&alg, x, y) == alg.one())
                .map(|&y| (x, y))
        });
        let witness = found.map(|(x, y)| Witness {
            algebra: alg.label().to_string(),
            assignment: [
                ("x".to_string(), alg.format(x)),
                ("y".to_string(), alg.format(y)),
            ]
            .into(),
            note: Some("delta(x,y) = 1 with x != y".into()),
        });
        items.push(item(
            format!("{}: delta(x,y) = 1 implies x = y", alg.label()),
            found.is_none(),
            found.is_none(),
            witness,
        ));
        if found.is_none() {
            warnings.push(format!(
                "no counterexample in generators: delta(x,y) = 1 forces x = y in {}, so no failure of the implicative condition is witnessed",
                alg.label()
            ));
        }
    }
    Ok(LawReport::new(
        "implicativity",
        k,
        "every algebra is a subdirect product of simple algebras embedded in T3,k or T4,k, and delta is computed coordinatewise",
        items,
        warnings,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_shapes() {
        let b1 = test_battery(1).unwrap();
        let sizes: Vec<usize> = b1.iter().map(|a| a.size()).collect();
        assert!(sizes.contains(&12) && sizes.contains(&16) && sizes.contains(&3));
        assert!(b1.iter().all(|a| a.size() <= BATTERY_MAX_SIZE));
        let b2 = test_battery(2).unwrap();
        assert!(b2.iter().any(|a| a.name().starts_with("TW4,1")));
    }

    #[test]
    fn leibniz_k1_and_k2() {
        for k in 1..=2 {
            let r = check_leibniz_noninjectivity(k).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.warnings.len(), 1);
        }
    }

    #[test]
    fn implicativity_probe_finds_nothing() {
        for k in 1..=2 {
            let r = probe_implicativity(k).unwrap();
            assert!(r.passed);
            assert!(r.items.iter().all(|i| i.holds));
            assert_eq!(r.warnings.len(), 2);
        }
    }

    #[test]
    fn structural_suites_k1() {
        for r in [
            check_simplicity(1).unwrap(),
            check_deductive_systems(1).unwrap(),
            check_correspondence(1).unwrap(),
        ] {
            assert!(r.passed, "{:?}", r.failures());
        }
    }
}
