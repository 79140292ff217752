use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{alpha, free_cardinality_formula, FactoredInteger};
use crate::algebra::Algebra;
use crate::base::BaseFamily;
use crate::error::{Error, Result};
use crate::finite::FiniteAlgebra;
use crate::iso;
use crate::packed::ProductLayout;
use crate::product::{classify_simple, CodeMask, CyclicAlgebra, SimpleClass, SubuniverseCloser};

/// Largest k the epimorphism oracle accepts by default.
pub const DEFAULT_EPI_BOUND: usize = 4;
/// Cap on |T_{4,k}|ⁿ, the number of generator tuples enumerated per host.
const EPI_TUPLE_BUDGET: u128 = 1 << 24;

/// Limits for the closure oracle. The closure is quadratic in its size, so
/// both the element count and the pair work are bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureBudget {
    pub max_elements: u64,
    pub max_pair_work: u128,
}

impl Default for ClosureBudget {
    fn default() -> Self {
        ClosureBudget {
            max_elements: 1 << 24,
            max_pair_work: 1 << 32,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureResult {
    pub k: usize,
    pub n: u64,
    pub cardinality: u64,
    /// Number of valuation coordinates (T_{3,k} ones first).
    pub coordinates: usize,
    #[serde(skip)]
    pub universe: Vec<Vec<u64>>,
}

pub fn closure_oracle(k: usize, n: u64) -> Result<ClosureResult> {
    closure_oracle_with_budget(k, n, ClosureBudget::default())
}

/// Closes the n generator tuples inside ∏_v T_{3,k} × ∏_v T_{4,k}, one
/// coordinate per valuation v of the generators.
pub fn closure_oracle_with_budget(
    k: usize,
    n: u64,
    budget: ClosureBudget,
) -> Result<ClosureResult> {
    if k == 0 {
        return Err(Error::usage("k must be at least 1"));
    }
    if k > crate::product::MAX_PERIOD {
        return Err(Error::resource("period k", k, crate::product::MAX_PERIOD));
    }
    // refuse doomed runs before allocating anything
    let predicted = free_cardinality_formula(k, n)?.factored;
    let log2 = predicted.log2();
    let shown = predicted
        .to_biguint(128)
        .map(|v| v.to_string())
        .unwrap_or_else(|| predicted.to_string());
    if log2 > (budget.max_elements as f64).log2() + 1e-9 {
        return Err(Error::resource(
            format!("closure oracle universe for k={k}, n={n}"),
            shown,
            budget.max_elements,
        ));
    }
    if 2.0 * log2 > (budget.max_pair_work as f64).log2() + 1e-9 {
        // the closure is quadratic, so the element cap is √(pair budget)
        return Err(Error::resource(
            format!("closure oracle universe for k={k}, n={n} (quadratic closure)"),
            shown,
            (budget.max_pair_work as f64).sqrt().floor() as u64,
        ));
    }

    let hosts = [
        CyclicAlgebra::full(BaseFamily::Three, k)?,
        CyclicAlgebra::full(BaseFamily::Four, k)?,
    ];
    let mut layout = ProductLayout::new();
    let mut valuations: Vec<(usize, Vec<u64>)> = Vec::new();
    for (h, host) in hosts.iter().enumerate() {
        let count = (host.size() as u128).pow(n as u32);
        if count > budget.max_elements as u128 {
            return Err(Error::resource(
                "valuation coordinates",
                count,
                budget.max_elements,
            ));
        }
        layout.push_groups(host.family(), k, count as usize);
        let mut digits = vec![0usize; n as usize];
        for _ in 0..count {
            valuations.push((h, digits.iter().map(|&d| host.element(d).bits()).collect()));
            for slot in digits.iter_mut().rev() {
                *slot += 1;
                if *slot < host.size() {
                    break;
                }
                *slot = 0;
            }
        }
    }
    let width = layout.width();
    let coordinates = valuations.len();

    // generator j has, in the coordinate of valuation v, the word v(j)
    let mut gens = vec![vec![0u64; width]; n as usize];
    let mut word = 0;
    let mut slot = 0;
    for (_, image) in &valuations {
        let w = &layout.words()[word];
        for (j, g) in gens.iter_mut().enumerate() {
            g[word] |= image[j] << (2 * k * slot);
        }
        slot += 1;
        if slot == w.groups {
            slot = 0;
            word += 1;
        }
    }

    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut order: Vec<Vec<u64>> = Vec::new();
    let push = |x: Vec<u64>, seen: &mut HashSet<Vec<u64>>, order: &mut Vec<Vec<u64>>| {
        if seen.insert(x.clone()) {
            order.push(x);
        }
    };
    push(layout.constant(0), &mut seen, &mut order);
    push(layout.constant(0b11), &mut seen, &mut order);
    for g in gens {
        push(g, &mut seen, &mut order);
    }
    let mut buf = vec![0u64; width];
    let mut i = 0;
    while i < order.len() {
        if order.len() as u64 > budget.max_elements {
            return Err(Error::inconsistency(format!(
                "closure exceeded the predicted size {shown}"
            )));
        }
        let x = order[i].clone();
        layout.neg_into(&x, &mut buf);
        push(buf.clone(), &mut seen, &mut order);
        layout.pseudo_into(&x, &mut buf);
        push(buf.clone(), &mut seen, &mut order);
        layout.shift_into(&x, &mut buf);
        push(buf.clone(), &mut seen, &mut order);
        for j in 0..=i {
            let z = order[j].clone();
            layout.meet_into(&x, &z, &mut buf);
            push(buf.clone(), &mut seen, &mut order);
            layout.join_into(&x, &z, &mut buf);
            push(buf.clone(), &mut seen, &mut order);
        }
        i += 1;
    }
    Ok(ClosureResult {
        k,
        n,
        cardinality: order.len() as u64,
        coordinates,
        universe: order,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EpiEntry {
    /// Isomorphism class, e.g. "T4,1" or "TW4,1".
    pub class: String,
    pub listed: bool,
    /// Host product in which the representative was found.
    pub host: String,
    pub size: usize,
    pub epimorphisms: u64,
    pub automorphisms: usize,
    pub multiplicity: u64,
    /// α_{i,d} from the counting formula for listed classes.
    pub formula_alpha: Option<String>,
    pub universe: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EpiResult {
    pub k: usize,
    pub n: u64,
    pub factored: FactoredInteger,
    pub decimal: Option<String>,
    pub table: Vec<EpiEntry>,
}

impl EpiResult {
    pub fn multiplicity(&self, class: &str) -> Option<u64> {
        self.table
            .iter()
            .find(|e| e.class == class)
            .map(|e| e.multiplicity)
    }
}

/// Counts, for every subuniverse S of the host, the n-tuples generating S.
fn generating_counts(family: BaseFamily, k: usize, n: u64) -> Result<Vec<(CodeMask, u64)>> {
    let host = CyclicAlgebra::full(family, k)?;
    let mut closer = SubuniverseCloser::new(family, k);
    let mut level: HashMap<CodeMask, u64> = HashMap::new();
    level.insert(closer.constants(), 1);
    for _ in 0..n {
        let mut keys: Vec<(CodeMask, u64)> = level.into_iter().collect();
        keys.sort();
        let mut next: HashMap<CodeMask, u64> = HashMap::new();
        for (mask, c) in keys {
            for &x in host.universe() {
                *next.entry(closer.extend(&mask, x.bits())).or_insert(0) += c;
            }
        }
        level = next;
    }
    let mut out: Vec<(CodeMask, u64)> = level.into_iter().collect();
    out.sort_by(|a, b| a.0.count().cmp(&b.0.count()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

struct ClassRep {
    class: SimpleClass,
    host: String,
    algebra: FiniteAlgebra,
    labels: Vec<String>,
    count: u64,
}

/// Counts epimorphisms from the free algebra onto each simple algebra: the
/// n-tuples of a simple S that generate S, divided by |Aut(S)|.
pub fn epi_oracle(k: usize, n: u64) -> Result<EpiResult> {
    if k == 0 {
        return Err(Error::usage("k must be at least 1"));
    }
    if k > DEFAULT_EPI_BOUND {
        return Err(Error::resource(
            "epimorphism oracle period",
            k,
            DEFAULT_EPI_BOUND,
        ));
    }
    let tuples = 4u128.pow(k as u32).pow(n as u32);
    if tuples > EPI_TUPLE_BUDGET {
        return Err(Error::resource(
            "generator tuples",
            tuples,
            EPI_TUPLE_BUDGET,
        ));
    }
    let (three, four) = rayon::join(
        || generating_counts(BaseFamily::Three, k, n),
        || generating_counts(BaseFamily::Four, k, n),
    );
    let mut reps: Vec<ClassRep> = Vec::new();
    for (family, counts) in [(BaseFamily::Three, three?), (BaseFamily::Four, four?)] {
        let closer = SubuniverseCloser::new(family, k);
        for (mask, count) in counts {
            let alg = closer.to_algebra(&mask, format!("sub of T{},{k}", family.index()));
            let fin = alg.to_finite();
            if let Some(rep) = reps.iter().find(|r| {
                r.algebra.size() == fin.size() && iso::is_isomorphic(&r.algebra, &fin).is_some()
            }) {
                if rep.count != count {
                    return Err(Error::inconsistency(format!(
                        "isomorphic simples {} and {} have {} vs {count} generating tuples",
                        rep.class,
                        alg.label(),
                        rep.count
                    )));
                }
                continue;
            }
            reps.push(ClassRep {
                class: classify_simple(&alg)?,
                host: format!("T{},{k}", family.index()),
                labels: alg.universe().iter().map(|&x| alg.format(x)).collect(),
                algebra: fin,
                count,
            });
        }
    }
    reps.sort_by(|a, b| a.class.cmp(&b.class));

    let mut factored = FactoredInteger::one();
    let mut table = Vec::new();
    for rep in reps {
        let aut = iso::aut_count(&rep.algebra);
        if rep.count % aut as u64 != 0 {
            return Err(Error::inconsistency(format!(
                "{} generating tuples of {} not divisible by {aut} automorphisms",
                rep.count, rep.class
            )));
        }
        let mult = rep.count / aut as u64;
        factored.mul_pow(
            rep.algebra.size() as u64,
            &BigRational::from_integer(BigInt::from(mult)),
        );
        let formula_alpha = match rep.class {
            SimpleClass::Standard { family, d } => {
                let a = alpha(family, d, n, k)?;
                Some(if a.is_integer() {
                    a.to_integer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                })
            }
            _ => None,
        };
        table.push(EpiEntry {
            class: rep.class.to_string(),
            listed: rep.class.is_listed(),
            host: rep.host,
            size: rep.algebra.size(),
            epimorphisms: rep.count,
            automorphisms: aut,
            multiplicity: mult,
            formula_alpha,
            universe: rep.labels,
        });
    }
    Ok(EpiResult {
        k,
        n,
        decimal: factored.to_biguint(1 << 16).map(|v| v.to_string()),
        factored,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_oracle_small_cases() {
        assert_eq!(closure_oracle(1, 1).unwrap().cardinality, 48);
        assert_eq!(closure_oracle(1, 0).unwrap().cardinality, 2);
        assert_eq!(closure_oracle(2, 0).unwrap().cardinality, 2);
        match closure_oracle(2, 1) {
            Err(Error::Resource { needed, .. }) => assert_eq!(needed, "15925248"),
            other => panic!("expected a resource error, got {other:?}"),
        }
    }

    #[test]
    fn epi_oracle_k1() {
        let r = epi_oracle(1, 1).unwrap();
        let mults: Vec<(String, u64)> = r
            .table
            .iter()
            .map(|e| (e.class.clone(), e.multiplicity))
            .collect();
        assert_eq!(
            mults,
            vec![("T2,1".into(), 2), ("T3,1".into(), 1), ("T4,1".into(), 1)]
        );
        assert_eq!(r.decimal.as_deref(), Some("48"));
    }

    #[test]
    fn epi_oracle_k2_has_twisted_factor() {
        let r = epi_oracle(2, 1).unwrap();
        assert_eq!(r.decimal.as_deref(), Some("15925248"));
        let tw = r.table.iter().find(|e| e.class == "TW4,1").unwrap();
        assert_eq!((tw.size, tw.multiplicity), (4, 1));
        assert!(!tw.listed);
    }
}
