//! Known generators, relations and Hilbert series of `(F_d')^SL2` and
//! `K[X_d]^SL2` for small `d`, with machinery to verify each entry from
//! first principles up to a degree bound.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::metabelian::{LieExpr, Metabelian, WreathElement};
use crate::poly::{Monomial, Poly, Rational};
use crate::series::{expand_rational_str, hilbert_series, Target};
use crate::sl2::{is_annihilated, is_invariant, ModuleSpec};

const CATALOG_TOML: &str = include_str!("../data/catalog.toml");

#[derive(Deserialize)]
struct RawCatalog {
    case: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    id: String,
    spec: String,
    hilbert_module: String,
    hilbert_ring: String,
    module_generators: Vec<String>,
    ring_generators: Vec<String>,
    relations: Vec<String>,
}

/// One decomposition of `KX_d` with its module and ring generators.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub spec: ModuleSpec,
    pub hilbert_module: String,
    pub hilbert_ring: String,
    pub module_generators: Vec<LieExpr>,
    pub module_generator_text: Vec<String>,
    pub ring_generators: Vec<Poly>,
    /// Polynomials in `v<i>` and `f<j>`, linear in the `v`'s.
    pub relations: Vec<Poly>,
    pub relation_text: Vec<String>,
}

fn squash(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Parses catalog text in the format of the bundled data file.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let raw: RawCatalog = toml::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
    raw.case
        .into_iter()
        .map(|r| {
            let ctx = |e: Error| Error::Catalog(format!("case {}: {e}", r.id));
            Ok(CatalogEntry {
                spec: r.spec.parse().map_err(ctx)?,
                hilbert_module: r.hilbert_module.clone(),
                hilbert_ring: r.hilbert_ring.clone(),
                module_generators: r
                    .module_generators
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<_>>()
                    .map_err(ctx)?,
                module_generator_text: r.module_generators.iter().map(|s| squash(s)).collect(),
                ring_generators: r
                    .ring_generators
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<_>>()
                    .map_err(ctx)?,
                relations: r
                    .relations
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<_>>()
                    .map_err(ctx)?,
                relation_text: r.relations.iter().map(|s| squash(s)).collect(),
                id: r.id,
            })
        })
        .collect()
}

/// The bundled catalog.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(CATALOG_TOML).expect("bundled catalog is well formed"))
}

pub fn find_case(id: &str) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.id == id)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CatalogReport {
    pub case: String,
    pub spec: String,
    pub bound: u32,
    pub checks: Vec<CheckResult>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Evaluates a relation `sum c * v_i * f^e` in `R_d`.
pub fn evaluate_relation(entry: &CatalogEntry, relation: &Poly) -> Result<WreathElement> {
    let alg = Metabelian::new(entry.spec.dim())?;
    let vs = entry
        .module_generators
        .iter()
        .map(|e| alg.eval(e))
        .collect::<Result<Vec<_>>>()?;
    let mut out = alg.zero();
    for (m, c) in relation.terms() {
        let mut v_index = None;
        let mut mult = Poly::constant(c.clone());
        for &(var, e) in m.factors() {
            let i = var.index();
            match var.letter() {
                'v' if e == 1 && v_index.is_none() && (1..=vs.len()).contains(&i) => {
                    v_index = Some(i - 1)
                }
                'f' if (1..=entry.ring_generators.len()).contains(&i) => {
                    mult = &mult * &entry.ring_generators[i - 1].pow(e)
                }
                _ => {
                    return Err(Error::Catalog(format!(
                        "relation term {m} is not of the form v_i * f^e"
                    )))
                }
            }
        }
        let i = v_index
            .ok_or_else(|| Error::Catalog(format!("relation term {m} has no module generator")))?;
        out = &out + &alg.ad_action(&vs[i], &mult)?;
    }
    Ok(out)
}

fn describe_series(c: &[Rational]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn series_check(
    name: &str,
    published: &str,
    spec: &ModuleSpec,
    target: Target,
    bound: u32,
) -> Result<(CheckResult, Vec<Rational>)> {
    let expected = expand_rational_str(published, bound)?.z_coefficients();
    let computed = hilbert_series(spec, target, bound)?.z_coefficients();
    let detail = match expected.iter().zip(&computed).position(|(a, b)| a != b) {
        None => String::new(),
        Some(n) => format!(
            "first mismatch at degree {n}: published {} vs computed {}",
            describe_series(&expected),
            describe_series(&computed)
        ),
    };
    Ok((CheckResult::new(name, detail.is_empty(), detail), computed))
}

/// All exponent vectors `e` with `sum e_j deg_j = n`.
fn exponent_vectors(degrees: &[u32], n: u32) -> Vec<Vec<u32>> {
    match degrees.split_first() {
        None => {
            if n == 0 {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        }
        Some((&d, rest)) => {
            let mut out = Vec::new();
            for e in 0..=n / d {
                for mut tail in exponent_vectors(rest, n - e * d) {
                    tail.insert(0, e);
                    out.push(tail);
                }
            }
            out
        }
    }
}

struct ProductCache {
    gens: Vec<Poly>,
    powers: Vec<Vec<Poly>>,
}

impl ProductCache {
    fn new(gens: Vec<Poly>, max_power: u32) -> Self {
        let powers = gens
            .iter()
            .map(|g| {
                let mut ps = vec![Poly::one()];
                for _ in 0..max_power {
                    let next = ps.last().expect("nonempty") * g;
                    ps.push(next);
                }
                ps
            })
            .collect();
        ProductCache { gens, powers }
    }

    fn product(&self, e: &[u32]) -> Poly {
        let mut acc = Poly::one();
        for (j, &k) in e.iter().enumerate() {
            if k > 0 {
                acc = &acc * &self.powers[j][k as usize];
            }
        }
        acc
    }

    fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(Poly::total_degree).collect()
    }
}

fn poly_rank(ps: impl Iterator<Item = Poly>) -> usize {
    let mut e: Echelon<Monomial> = Echelon::new();
    for p in ps {
        e.insert(p.into_terms().collect());
    }
    e.rank()
}

/// Checks an entry: invariance of every generator (by `g_1, g_2` and by
/// `delta_1, delta_2`), the relations, both Hilbert series, and that the
/// generators span every homogeneous component up to `bound`.
pub fn verify_catalog(entry: &CatalogEntry, bound: u32) -> Result<CatalogReport> {
    let spec = &entry.spec;
    let alg = Metabelian::new(spec.dim())?;
    let mut checks = Vec::new();

    let vs = entry
        .module_generators
        .iter()
        .map(|e| alg.eval(e))
        .collect::<Result<Vec<_>>>()?;
    for (i, v) in vs.iter().enumerate() {
        let by_g = is_invariant(spec, v)?;
        let by_delta = is_annihilated(spec, v)?;
        let member = alg.is_in_commutator_ideal(v) && !v.is_zero() && v.is_homogeneous();
        let mut detail = Vec::new();
        if !by_g {
            detail.push("moved by g1 or g2");
        }
        if !by_delta {
            detail.push("not killed by delta1 and delta2");
        }
        if !member {
            detail.push("not a nonzero homogeneous element of the commutator ideal");
        }
        checks.push(CheckResult::new(
            format!("v{} invariant", i + 1),
            detail.is_empty(),
            detail.join("; "),
        ));
    }
    for (j, f) in entry.ring_generators.iter().enumerate() {
        let by_g = is_invariant(spec, f)?;
        let by_delta = is_annihilated(spec, f)?;
        let ok = by_g && by_delta && f.is_homogeneous() && f.total_degree() > 0;
        let detail = if ok {
            String::new()
        } else {
            format!("g-route {by_g}, delta-route {by_delta}")
        };
        checks.push(CheckResult::new(
            format!("f{} invariant", j + 1),
            ok,
            detail,
        ));
    }
    for (k, r) in entry.relations.iter().enumerate() {
        let value = evaluate_relation(entry, r)?;
        let detail = if value.is_zero() {
            String::new()
        } else {
            format!("evaluates to {value}")
        };
        checks.push(CheckResult::new(
            format!("relation {}", k + 1),
            value.is_zero(),
            detail,
        ));
    }

    let (module_check, module_dims) = series_check(
        "module series",
        &entry.hilbert_module,
        spec,
        Target::InvariantModule,
        bound,
    )?;
    let (ring_check, ring_dims) = series_check(
        "ring series",
        &entry.hilbert_ring,
        spec,
        Target::InvariantRing,
        bound,
    )?;
    checks.push(module_check);
    checks.push(ring_check);

    let ring = ProductCache::new(
        entry
            .ring_generators
            .iter()
            .map(|f| alg.x_to_y(f))
            .collect::<Result<_>>()?,
        bound,
    );
    let ring_degrees = ring.degrees();
    let v_degrees: Vec<u32> = vs.iter().map(WreathElement::degree).collect();

    let ring_failures: Vec<String> = (0..=bound)
        .into_par_iter()
        .filter_map(|n| {
            let rank = poly_rank(
                exponent_vectors(&ring_degrees, n)
                    .iter()
                    .map(|e| ring.product(e)),
            );
            let want = &ring_dims[n as usize];
            (Rational::from_integer(rank.into()) != *want)
                .then(|| format!("degree {n}: rank {rank}, dimension {want}"))
        })
        .collect();
    checks.push(CheckResult::new(
        "ring generators span",
        ring_failures.is_empty(),
        ring_failures.join("; "),
    ));

    let module_failures: Vec<String> = (0..=bound)
        .into_par_iter()
        .filter_map(|n| {
            let mut e: Echelon<(usize, Monomial)> = Echelon::new();
            for (v, &dv) in vs.iter().zip(&v_degrees) {
                if dv > n {
                    continue;
                }
                for exps in exponent_vectors(&ring_degrees, n - dv) {
                    e.insert(v.mul_a_parts(&ring.product(&exps)).to_sparse());
                }
            }
            let want = &module_dims[n as usize];
            let rank = e.rank();
            (Rational::from_integer(rank.into()) != *want)
                .then(|| format!("degree {n}: rank {rank}, dimension {want}"))
        })
        .collect();
    checks.push(CheckResult::new(
        "module generators span",
        module_failures.is_empty(),
        module_failures.join("; "),
    ));

    Ok(CatalogReport {
        case: entry.id.clone(),
        spec: spec.to_string(),
        bound,
        checks,
    })
}

/// Number of module and ring generators per case.
pub fn generator_counts() -> BTreeMap<String, (usize, usize)> {
    catalog()
        .iter()
        .map(|e| {
            (
                e.id.clone(),
                (e.module_generators.len(), e.ring_generators.len()),
            )
        })
        .collect()
}
