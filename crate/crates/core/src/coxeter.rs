//! Coxeter systems, their products, and finite group enumeration through the
//! exact reflection representation.

use crate::linalg::Matrix;
use crate::scalar::{FieldElement, FieldSpec};
use serde::Deserialize;
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoxeterError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid Coxeter matrix: {0}")]
    Validation(String),
    #[error("declared product factor is not a union of diagram components")]
    InconsistentProduct,
    #[error("group has more than {cap} elements ({found} enumerated so far)")]
    GroupTooLarge { cap: usize, found: usize },
    #[error(transparent)]
    Scalar(#[from] crate::scalar::ScalarError),
    #[error("invalid JSON document: {0}")]
    Json(String),
}

/// A finite-rank Coxeter system with all bond orders finite.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    gens: Vec<String>,
    m: Vec<Vec<u32>>,
    product: Option<Vec<Vec<usize>>>,
    field: Arc<FieldSpec>,
}

#[derive(Deserialize)]
struct CoxeterDoc {
    generators: Vec<String>,
    matrix: Vec<Vec<u32>>,
    #[serde(default)]
    product: Option<Vec<Vec<String>>>,
}

impl CoxeterSystem {
    pub fn new(
        gens: Vec<String>,
        m: Vec<Vec<u32>>,
        product: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, CoxeterError> {
        let n = gens.len();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(CoxeterError::Validation(format!(
                "matrix must be {n}x{n} to match the generator list"
            )));
        }
        {
            let mut seen = std::collections::HashSet::new();
            for g in &gens {
                if !seen.insert(g.clone()) {
                    return Err(CoxeterError::Validation(format!("duplicate generator {g}")));
                }
            }
        }
        for i in 0..n {
            if m[i][i] != 1 {
                return Err(CoxeterError::Validation(format!(
                    "m({0},{0}) must be 1",
                    gens[i]
                )));
            }
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return Err(CoxeterError::Validation("matrix must be symmetric".into()));
                }
                if i != j && m[i][j] < 2 {
                    return Err(CoxeterError::Validation(format!(
                        "m({},{}) must be finite and at least 2",
                        gens[i], gens[j]
                    )));
                }
            }
        }
        let mut orders = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                orders.push(m[i][j] as u64);
            }
        }
        let field = FieldSpec::for_orders(&orders)?;
        let sys = CoxeterSystem {
            gens,
            m,
            product,
            field,
        };
        if sys.product.is_some() {
            sys.components()?; // validates the declared split eagerly
        }
        Ok(sys)
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    pub fn order(&self, s: usize, t: usize) -> u32 {
        self.m[s][t]
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.m
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// Declared product factors (generator index sets), if any.
    pub fn declared_product(&self) -> Option<&[Vec<usize>]> {
        self.product.as_deref()
    }

    /// The two sides of a declared product, as generator bitmasks `(S1, S2)`.
    /// For more than two factors the first factor is `S1` and the rest fold
    /// into `S2`.
    pub fn product_split(&self) -> Option<(u32, u32)> {
        let parts = self.product.as_ref()?;
        if parts.len() < 2 {
            return None;
        }
        let mask = |idxs: &[usize]| idxs.iter().fold(0u32, |a, &i| a | (1 << i));
        let s1 = mask(&parts[0]);
        let mut s2 = 0;
        for p in &parts[1..] {
            s2 |= mask(p);
        }
        Some((s1, s2))
    }

    /// Connected components of the Coxeter diagram (edges where m >= 3),
    /// each sorted, ordered by smallest member. Verifies any declared product.
    pub fn components(&self) -> Result<Vec<Vec<usize>>, CoxeterError> {
        let n = self.rank();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if w != v && self.m[v][w] >= 3 && comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (i, &c) in comp.iter().enumerate() {
            parts[c].push(i);
        }
        if let Some(declared) = &self.product {
            let mut covered = vec![false; n];
            for factor in declared {
                for &i in factor {
                    if i >= n || covered[i] {
                        return Err(CoxeterError::InconsistentProduct);
                    }
                    covered[i] = true;
                }
                // each diagram component must sit inside a single factor
                for part in &parts {
                    let inside = part.iter().filter(|i| factor.contains(i)).count();
                    if inside != 0 && inside != part.len() {
                        return Err(CoxeterError::InconsistentProduct);
                    }
                }
            }
            if covered.iter().any(|c| !c) {
                return Err(CoxeterError::InconsistentProduct);
            }
        }
        Ok(parts)
    }

    /// Reflection matrix for generator `s` acting on the root space basis.
    pub fn reflection(&self, s: usize) -> Matrix {
        let n = self.rank();
        let mut mat = Matrix::identity(&self.field, n);
        for t in 0..n {
            if t == s {
                mat[(s, s)] = FieldElement::from_integer(&self.field, -1);
            } else {
                // sigma_s(alpha_t) = alpha_t + 2cos(pi/m_st) alpha_s
                mat[(s, t)] =
                    FieldElement::cos_pi_over(&self.field, 1, self.m[s][t] as u64).unwrap();
            }
        }
        mat
    }
}

/// Enumerated group elements: ShortLex normal forms plus multiplication tables.
#[derive(Debug)]
pub struct GroupElements {
    words: Vec<Vec<u8>>,
    matrices: Vec<Matrix>,
    /// left[s][w] = index of s*w
    left: Vec<Vec<usize>>,
    /// right[w][s] = index of w*s
    right: Vec<Vec<usize>>,
}

impl GroupElements {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn word(&self, w: usize) -> &[u8] {
        &self.words[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.words[w].len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn left_mul(&self, s: usize, w: usize) -> usize {
        self.left[s][w]
    }

    pub fn right_mul(&self, w: usize, s: usize) -> usize {
        self.right[w][s]
    }

    pub fn matrix(&self, w: usize) -> &Matrix {
        &self.matrices[w]
    }
}

/// All elements of `W` in ShortLex order, or an error when `|W| > cap`.
pub fn enumerate_elements(w: &CoxeterSystem, cap: usize) -> Result<GroupElements, CoxeterError> {
    let n = w.rank();
    let refl: Vec<Matrix> = (0..n).map(|s| w.reflection(s)).collect();
    let id = Matrix::identity(w.field(), n);

    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut matrices: Vec<Matrix> = vec![id];
    let mut index: HashMap<MatrixKey, usize> = HashMap::new();
    index.insert(MatrixKey::of(&matrices[0]), 0);
    let mut right: Vec<Vec<usize>> = vec![vec![usize::MAX; n]];

    let mut level: Vec<usize> = vec![0];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &e in &level {
            for s in 0..n {
                let m = matrices[e].mul(&refl[s]);
                let key = MatrixKey::of(&m);
                let idx = match index.get(&key) {
                    Some(&i) => i,
                    None => {
                        let i = words.len();
                        if i >= cap {
                            return Err(CoxeterError::GroupTooLarge { cap, found: i });
                        }
                        let mut word = words[e].clone();
                        word.push(s as u8);
                        words.push(word);
                        matrices.push(m);
                        right.push(vec![usize::MAX; n]);
                        index.insert(key, i);
                        next.push(i);
                        i
                    }
                };
                right[e][s] = idx;
            }
        }
        level = next;
    }

    // left table from matrices
    let mut left = vec![vec![0usize; words.len()]; n.max(1)];
    if n > 0 {
        for s in 0..n {
            for e in 0..words.len() {
                let m = refl[s].mul(&matrices[e]);
                left[s][e] = index[&MatrixKey::of(&m)];
            }
        }
    } else {
        left = vec![];
    }

    Ok(GroupElements {
        words,
        matrices,
        left,
        right,
    })
}

#[derive(PartialEq, Eq, Hash)]
struct MatrixKey(Vec<FieldElement>);

impl MatrixKey {
    fn of(m: &Matrix) -> Self {
        let mut v = Vec::with_capacity(m.rows * m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                v.push(m[(i, j)].clone());
            }
        }
        MatrixKey(v)
    }
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

/// Parse either a builtin name (`A2`, `B3`, `I2(5)`, `G2`, products with `x`)
/// or a JSON Coxeter document.
pub fn parse_coxeter(text: &str) -> Result<CoxeterSystem, CoxeterError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return parse_coxeter_json(trimmed);
    }
    parse_coxeter_name(trimmed)
}

pub fn parse_coxeter_json(text: &str) -> Result<CoxeterSystem, CoxeterError> {
    let doc: CoxeterDoc =
        serde_json::from_str(text).map_err(|e| CoxeterError::Json(e.to_string()))?;
    let product = match doc.product {
        None => None,
        Some(parts) => {
            let mut out = Vec::new();
            for p in parts {
                let mut idxs = Vec::new();
                for name in p {
                    let Some(i) = doc.generators.iter().position(|g| *g == name) else {
                        return Err(CoxeterError::Json(format!(
                            "product references unknown generator {name}"
                        )));
                    };
                    idxs.push(i);
                }
                out.push(idxs);
            }
            Some(out)
        }
    };
    CoxeterSystem::new(doc.generators, doc.matrix, product)
}

fn parse_coxeter_name(text: &str) -> Result<CoxeterSystem, CoxeterError> {
    const PREFIXES: &[&str] = &["s", "t", "u", "w", "p", "q"];
    let factors: Vec<&str> = text.split('x').collect();
    if factors.len() > PREFIXES.len() {
        return Err(CoxeterError::Parse {
            pos: 0,
            msg: format!("at most {} product factors supported", PREFIXES.len()),
        });
    }
    let mut gens: Vec<String> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut bonds: Vec<(usize, usize, u32)> = Vec::new();
    let mut pos = 0usize;
    for (f, part) in factors.iter().enumerate() {
        let prefix = if factors.len() == 1 { "s" } else { PREFIXES[f] };
        let (rank, ms) = parse_type(part, pos)?;
        let base = gens.len();
        for i in 0..rank {
            gens.push(format!("{prefix}{}", i + 1));
        }
        blocks.push((base..base + rank).collect());
        for (i, j, v) in ms {
            bonds.push((base + i, base + j, v));
        }
        pos += part.len() + 1;
    }
    let n = gens.len();
    let mut m = vec![vec![2u32; n]; n];
    for i in 0..n {
        m[i][i] = 1;
    }
    for (i, j, v) in bonds {
        m[i][j] = v;
        m[j][i] = v;
    }
    let product = if factors.len() > 1 { Some(blocks) } else { None };
    CoxeterSystem::new(gens, m, product)
}

/// One builtin type: returns (rank, off-diagonal bonds > 2).
fn parse_type(part: &str, pos: usize) -> Result<(usize, Vec<(usize, usize, u32)>), CoxeterError> {
    let err = |msg: String| CoxeterError::Parse { pos, msg };
    if part == "G2" {
        return Ok((2, vec![(0, 1, 6)]));
    }
    if let Some(rest) = part.strip_prefix("I2(") {
        let Some(num) = rest.strip_suffix(')') else {
            return Err(err("expected I2(<order>)".into()));
        };
        let m: u32 = num
            .parse()
            .map_err(|_| err(format!("bad bond order {num:?}")))?;
        if m < 2 {
            return Err(err("I2 order must be at least 2".into()));
        }
        return Ok((2, vec![(0, 1, m)]));
    }
    let (family, rank_str) = part.split_at(1);
    let rank: usize = rank_str
        .parse()
        .map_err(|_| err(format!("unknown Coxeter type {part:?}")))?;
    if rank == 0 {
        return Err(err("rank must be positive".into()));
    }
    match family {
        "A" => {
            let bonds = (0..rank.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect();
            Ok((rank, bonds))
        }
        "B" => {
            if rank < 2 {
                return Err(err("type B needs rank at least 2".into()));
            }
            let mut bonds: Vec<(usize, usize, u32)> =
                (0..rank - 2).map(|i| (i, i + 1, 3)).collect();
            bonds.push((rank - 2, rank - 1, 4));
            Ok((rank, bonds))
        }
        _ => Err(err(format!("unknown Coxeter type {part:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names() {
        let a2 = parse_coxeter("A2").unwrap();
        assert_eq!(a2.generators(), &["s1", "s2"]);
        assert_eq!(a2.order(0, 1), 3);
        assert!(a2.declared_product().is_none());

        let a1a1 = parse_coxeter("A1xA1").unwrap();
        assert_eq!(a1a1.generators(), &["s1", "t1"]);
        assert_eq!(a1a1.order(0, 1), 2);
        assert_eq!(a1a1.declared_product().unwrap().len(), 2);

        let i25 = parse_coxeter("I2(5)").unwrap();
        assert_eq!(i25.generators(), &["s1", "s2"]);
        assert_eq!(i25.order(0, 1), 5);

        let g2 = parse_coxeter("G2").unwrap();
        assert_eq!(g2.order(0, 1), 6);

        let b3 = parse_coxeter("B3").unwrap();
        assert_eq!(b3.order(0, 1), 3);
        assert_eq!(b3.order(1, 2), 4);

        assert!(parse_coxeter("Z9").is_err());
        assert!(parse_coxeter("I2(x)").is_err());
    }

    #[test]
    fn json_document() {
        let sys = parse_coxeter(r#"{"generators": ["a", "b"], "matrix": [[1,3],[3,1]]}"#).unwrap();
        assert_eq!(sys.generators(), &["a", "b"]);
        assert_eq!(sys.order(0, 1), 3);

        // non-symmetric
        assert!(parse_coxeter(r#"{"generators": ["a","b"], "matrix": [[1,3],[4,1]]}"#).is_err());
        // diagonal must be 1
        assert!(parse_coxeter(r#"{"generators": ["a","b"], "matrix": [[2,3],[3,1]]}"#).is_err());
        // declared product must respect components
        assert!(parse_coxeter(
            r#"{"generators": ["a","b"], "matrix": [[1,3],[3,1]], "product": [["a"],["b"]]}"#
        )
        .is_err());
        let ok = parse_coxeter(
            r#"{"generators": ["a","b"], "matrix": [[1,2],[2,1]], "product": [["a"],["b"]]}"#,
        )
        .unwrap();
        assert_eq!(ok.product_split(), Some((1, 2)));
    }

    #[test]
    fn enumerate_a2() {
        let w = parse_coxeter("A2").unwrap();
        let els = enumerate_elements(&w, 100).unwrap();
        assert_eq!(els.len(), 6);
        let mut lengths: Vec<usize> = (0..6).map(|i| els.length(i)).collect();
        lengths.sort();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn enumerate_products_and_trivial() {
        let w = parse_coxeter("A1xA1").unwrap();
        assert_eq!(enumerate_elements(&w, 100).unwrap().len(), 4);

        let trivial = CoxeterSystem::new(vec![], vec![], None).unwrap();
        assert_eq!(enumerate_elements(&trivial, 10).unwrap().len(), 1);
    }

    #[test]
    fn cap_exceeded_reports_partial_count() {
        let w = parse_coxeter("A2").unwrap();
        match enumerate_elements(&w, 4) {
            Err(CoxeterError::GroupTooLarge { cap: 4, found }) => assert!(found >= 4),
            other => panic!("expected GroupTooLarge, got {other:?}"),
        }
    }

    #[test]
    fn components_examples() {
        let w = parse_coxeter("A1xA1").unwrap();
        assert_eq!(w.components().unwrap(), vec![vec![0], vec![1]]);
        let w = parse_coxeter("A2").unwrap();
        assert_eq!(w.components().unwrap(), vec![vec![0, 1]]);
        let w = parse_coxeter("A2xA1").unwrap();
        assert_eq!(w.components().unwrap(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn reflection_representation_is_faithful_at_desk_scale() {
        for name in ["A2", "I2(5)", "A2xA1", "B2"] {
            let w = parse_coxeter(name).unwrap();
            let els = enumerate_elements(&w, 200).unwrap();
            // distinct elements have distinct matrices by construction of the
            // index map; verify the generator orders m(s,t) exactly
            for s in 0..w.rank() {
                for t in 0..w.rank() {
                    let prod = w.reflection(s).mul(&w.reflection(t));
                    let mut acc = Matrix::identity(w.field(), w.rank());
                    let mut ord = 0;
                    loop {
                        acc = acc.mul(&prod);
                        ord += 1;
                        if acc == Matrix::identity(w.field(), w.rank()) {
                            break;
                        }
                        assert!(ord < 100, "order of product did not terminate");
                    }
                    assert_eq!(ord, w.order(s, t), "{name}: order of {s},{t}");
                }
            }
            // ShortLex words are reduced: length equals descent-counted length
            for e in 0..els.len() {
                assert_eq!(els.word(e).len(), els.length(e));
            }
        }
    }
}
