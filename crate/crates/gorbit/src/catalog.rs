//! Built-in subalgebra catalog: named bases given as textual recipes over
//! the compact basis labels, parsed and closure-checked at load time. The
//! representatives follow the published lists of subalgebras of 𝔤₂
//! ([Ma16], [So22]); the selection is a choice of named representatives,
//! not a completeness claim.

use num::{BigRational, Zero};

use crate::exactmath::{ExactError, Field, Scalar};
use crate::liecore::{torus_rotation, Algebra, Element, RootSystem};
use crate::subalg::{SubalgError, Subalgebra};

pub struct CatalogEntry {
    pub name: &'static str,
    pub ambient: &'static str,
    /// One expression per basis vector; "*all*" denotes the whole algebra.
    pub recipes: &'static [&'static str],
    /// Finite normalizer-component generators, each the adjoint action of a
    /// torus element exp(2π(k/d)·iH_c): (coweight over the simple coroots,
    /// k, d). Needed when the normalizer group is disconnected.
    pub components: &'static [(&'static [i64], i64, i64)],
    pub note: &'static str,
}

pub const G2_CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "h1",
        ambient: "g2",
        recipes: &[
            "sqrt(2)*F[3a+2b] - sqrt(2)*F[b]",
            "sqrt(2)*G[3a+2b] + sqrt(2)*G[b]",
            "2*iH[3a+b]",
        ],
        // exp((2π/3)i·H_c) with H_c = 2H_a + 3H_b centralizes h1 pointwise
        // and generates the order-3 part of the normalizer's component
        // group (the centralizer component group here is S3); it fuses the
        // two adjoint-equivalent 3-dim pieces of 𝔮 into one 6-dim module.
        components: &[(&[2, 3], 1, 3)],
        note: "first non-regular semisimple subalgebra (su(2)), compact form per [Ma16]/[So22]",
    },
    CatalogEntry {
        name: "h2",
        ambient: "g2",
        recipes: &[
            "sqrt(6)*F[a] + sqrt(10)*F[b]",
            "sqrt(6)*G[a] + sqrt(10)*G[b]",
            "14*iH[9a+5b]",
        ],
        components: &[],
        note: "second non-regular semisimple subalgebra (su(2)), compact form per [Ma16]/[So22]",
    },
    CatalogEntry {
        name: "cartan",
        ambient: "g2",
        recipes: &["iH[a]", "iH[b]"],
        components: &[],
        note: "Cartan subalgebra (maximal torus), regular",
    },
    CatalogEntry {
        name: "su2-long",
        ambient: "g2",
        recipes: &["F[3a+2b]", "G[3a+2b]", "iH[3a+2b]"],
        components: &[],
        note: "root su(2) on the highest (long) root",
    },
    CatalogEntry {
        name: "su2-short",
        ambient: "g2",
        recipes: &["F[a]", "G[a]", "iH[a]"],
        components: &[],
        note: "root su(2) on the short simple root",
    },
    CatalogEntry {
        name: "su2su2",
        ambient: "g2",
        recipes: &[
            "F[3a+2b]",
            "G[3a+2b]",
            "iH[3a+2b]",
            "F[a]",
            "G[a]",
            "iH[a]",
        ],
        components: &[],
        note: "maximal-rank su(2)+su(2) on the orthogonal pair (3a+2b, a)",
    },
    CatalogEntry {
        name: "su3",
        ambient: "g2",
        recipes: &[
            "iH[a]",
            "iH[b]",
            "F[b]",
            "G[b]",
            "F[3a+b]",
            "G[3a+b]",
            "F[3a+2b]",
            "G[3a+2b]",
        ],
        components: &[],
        note: "maximal-rank su(3) on the long roots",
    },
    CatalogEntry {
        name: "u2-long",
        ambient: "g2",
        recipes: &["iH[a]", "iH[b]", "F[3a+2b]", "G[3a+2b]"],
        components: &[],
        note: "torus plus the long-root plane",
    },
    CatalogEntry {
        name: "u2-short",
        ambient: "g2",
        recipes: &["iH[a]", "iH[b]", "F[a]", "G[a]"],
        components: &[],
        note: "torus plus the short-root plane",
    },
    CatalogEntry {
        name: "g2",
        ambient: "g2",
        recipes: &["*all*"],
        components: &[],
        note: "the whole algebra (bi-invariant case)",
    },
];

pub fn catalog_names() -> Vec<&'static str> {
    G2_CATALOG.iter().map(|e| e.name).collect()
}

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    G2_CATALOG.iter().find(|e| e.name == name)
}

/// Parses and closure-checks a catalog entry against a built algebra.
pub fn instantiate(entry: &CatalogEntry, alg: &Algebra) -> Result<Subalgebra, SubalgError> {
    if entry.recipes == ["*all*"] {
        return Ok(Subalgebra::full(alg));
    }
    let basis = entry
        .recipes
        .iter()
        .map(|r| parse_recipe(alg, r))
        .collect::<Result<Vec<_>, _>>()?;
    let mut sub = Subalgebra::span_closure_check(alg, basis)?;
    for (coweight, k, d) in entry.components {
        let sigma = torus_rotation(alg, coweight, *k, *d)?;
        sub.attach_component(sigma)?;
    }
    Ok(sub)
}

/// Parses an expression like "sqrt(2)*F[3a+2b] - 3/2*G[b] + 14*iH[9a+5b]".
/// Terms are label atoms F[..], G[..], iH[..] with optional '*'-joined
/// rational and sqrt(d) coefficient factors.
pub fn parse_recipe(alg: &Algebra, expr: &str) -> Result<Element, SubalgError> {
    let field = alg.field();
    let mut out = Element::zero(alg);
    for (sign, term) in split_terms(expr) {
        let mut coeff = Scalar::one(field);
        let mut atom: Option<Element> = None;
        for factor in term.split('*').map(str::trim) {
            if factor.is_empty() {
                continue;
            }
            if let Some(rest) = factor.strip_prefix("sqrt(") {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| parse_err("unterminated sqrt("))?;
                let n: u64 = inner.parse().map_err(|_| parse_err("bad sqrt argument"))?;
                coeff = coeff.mul(&Scalar::sqrt_of_int(field, n)?);
            } else if factor.contains('[') {
                if atom.is_some() {
                    return Err(parse_err("two atoms in one term"));
                }
                atom = Some(parse_atom(alg, factor)?);
            } else {
                let q = parse_rational(factor)?;
                coeff = coeff.mul(&Scalar::from_rational(field, q));
            }
        }
        let atom = atom.ok_or_else(|| parse_err("term without a basis atom"))?;
        let signed = if sign < 0 { coeff.neg() } else { coeff };
        out = out.add(&atom.scale(&signed));
    }
    Ok(out)
}

fn parse_err(msg: &str) -> SubalgError {
    SubalgError::Exact(ExactError::Parse(msg.to_string()))
}

/// Splits "x - y + z" into signed terms; brackets never contain +/-digits
/// at top level because root labels use the compact "3a+2b" form, so a
/// sign inside [..] must be skipped.
fn split_terms(expr: &str) -> Vec<(i32, String)> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut sign = 1;
    let mut depth = 0usize;
    for c in expr.chars() {
        match c {
            '[' | '(' => {
                depth += 1;
                cur.push(c);
            }
            ']' | ')' => {
                depth -= 1;
                cur.push(c);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    terms.push((sign, cur.trim().to_string()));
                }
                cur = String::new();
                sign = if c == '-' { -1 } else { 1 };
            }
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        terms.push((sign, cur.trim().to_string()));
    }
    terms
}

fn parse_rational(s: &str) -> Result<BigRational, SubalgError> {
    let parts: Vec<&str> = s.split('/').collect();
    let parse_int = |t: &str| -> Result<num::BigInt, SubalgError> {
        t.trim().parse().map_err(|_| parse_err("bad integer"))
    };
    match parts.as_slice() {
        [n] => Ok(BigRational::from_integer(parse_int(n)?)),
        [n, d] => Ok(BigRational::new(parse_int(n)?, parse_int(d)?)),
        _ => Err(parse_err("bad rational")),
    }
}

fn parse_atom(alg: &Algebra, s: &str) -> Result<Element, SubalgError> {
    let open = s.find('[').ok_or_else(|| parse_err("atom without ["))?;
    let close = s.rfind(']').ok_or_else(|| parse_err("atom without ]"))?;
    let head = &s[..open];
    let arg = &s[open + 1..close];
    let rs = alg
        .root_system()
        .ok_or_else(|| parse_err("algebra has no root system"))?;
    match head {
        "F" | "G" => {
            let label = format!("{head}_{arg}");
            let i = alg
                .label_index(&label)
                .ok_or_else(|| parse_err("unknown root label"))?;
            Ok(Element::basis(alg, i))
        }
        "iH" => {
            let lambda = parse_root_vector(rs, arg)?;
            let coeffs = coroot_coefficients(rs, &lambda);
            let field = alg.field();
            let mut out = Element::zero(alg);
            let letters = ["a", "b", "c", "d", "e", "f", "g", "h"];
            for (j, c) in coeffs.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let i = alg
                    .label_index(&format!("iH_{}", letters[j]))
                    .ok_or_else(|| parse_err("missing torus label"))?;
                out = out.add(&Element::basis(alg, i).scale(&Scalar::from_rational(field, c)));
            }
            Ok(out)
        }
        _ => Err(parse_err("unknown atom head")),
    }
}

/// Parses "9a+5b", "3a+b", "a-b", "a" into simple-root coordinates.
fn parse_root_vector(rs: &RootSystem, s: &str) -> Result<Vec<i64>, SubalgError> {
    let letters = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let mut v = vec![0i64; rs.rank];
    for (sign, term) in split_terms(s) {
        let term = term.trim();
        let Some(pos) = term.find(|c: char| c.is_ascii_alphabetic()) else {
            return Err(parse_err("root term without a letter"));
        };
        let coeff: i64 = if pos == 0 { 1 } else {
            term[..pos].parse().map_err(|_| parse_err("bad root coefficient"))?
        };
        let letter = &term[pos..];
        let j = letters
            .iter()
            .position(|l| *l == letter)
            .filter(|&j| j < rs.rank)
            .ok_or_else(|| parse_err("unknown simple root letter"))?;
        v[j] += i64::from(sign) * coeff;
    }
    Ok(v)
}

/// Coefficients cⱼ with H_λ = Σ cⱼ·H_{αⱼ} for λ = Σ λⱼαⱼ in the root
/// lattice: cⱼ = λⱼ·(αⱼ,αⱼ)/(λ,λ).
fn coroot_coefficients(rs: &RootSystem, lambda: &[i64]) -> Vec<BigRational> {
    let norm = rs.pairing(lambda, lambda);
    assert!(!norm.is_zero(), "coroot of a null vector");
    (0..rs.rank)
        .map(|j| {
            let mut e = vec![0i64; rs.rank];
            e[j] = 1;
            let alpha_norm = rs.pairing(&e, &e);
            BigRational::from_integer(lambda[j].into()) * alpha_norm / norm.clone()
        })
        .collect()
}

/// Field tower needed by every catalog recipe.
pub fn required_field() -> Vec<u64> {
    vec![2, 3, 5]
}

/// Checks that a tower covers the catalog's sqrt requirements.
pub fn field_covers(field: &Field) -> bool {
    [2u64, 3, 5, 6, 10]
        .iter()
        .all(|&n| Scalar::sqrt_of_int(field, n).is_ok())
}
