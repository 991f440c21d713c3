//! Exact scalars: the real cyclotomic field `Q(theta)` with `theta = 2cos(pi/L)`
//! and Laurent polynomials in `v` over it.
//!
//! The field is chosen once per Coxeter system so that `2cos(pi*j/m)` lies in it
//! for every finite bond order `m` (take `L = lcm` of the orders; every needed
//! cosine is an integer Chebyshev polynomial in `theta`).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScalarError {
    #[error("unsupported bond order {0}: orders must be finite and at least 2")]
    UnsupportedOrder(u64),
    #[error("incompatible fields: Q(2cos(pi/{0})) vs Q(2cos(pi/{1}))")]
    IncompatibleField(u64, u64),
    #[error("division by zero field element")]
    DivisionByZero,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// integer polynomial helpers (ascending coefficients, used only at field setup)
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

/// Exact division, panics on a nonzero remainder (callers only divide exactly).
fn poly_div_exact(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut rem: Vec<BigRational> = num.to_vec();
    poly_trim(&mut rem);
    let mut den = den.to_vec();
    poly_trim(&mut den);
    let dl = den.len();
    assert!(dl > 0, "division by zero polynomial");
    let lead = den[dl - 1].clone();
    if rem.len() < dl {
        assert!(rem.is_empty(), "inexact polynomial division");
        return vec![];
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dl + 1];
    while rem.len() >= dl {
        let k = rem.len() - dl;
        let c = &rem[rem.len() - 1] / &lead;
        quot[k] = c.clone();
        for i in 0..dl {
            let t = &den[i] * &c;
            rem[k + i] -= t;
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    assert!(rem.is_empty(), "inexact polynomial division");
    quot
}

/// x^n - 1 as a coefficient vector.
fn x_pow_minus_one(n: u64) -> Vec<BigRational> {
    let mut p = vec![BigRational::zero(); n as usize + 1];
    p[0] = -BigRational::one();
    p[n as usize] = BigRational::one();
    p
}

/// n-th cyclotomic polynomial by exact division.
fn cyclotomic(n: u64, memo: &mut BTreeMap<u64, Vec<BigRational>>) -> Vec<BigRational> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut den = vec![BigRational::one()];
    for d in 1..n {
        if n % d == 0 {
            den = poly_mul(&den, &cyclotomic(d, memo));
        }
    }
    let p = poly_div_exact(&x_pow_minus_one(n), &den);
    memo.insert(n, p.clone());
    p
}

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

/// The ambient coefficient field `Q(theta)`, `theta = 2cos(pi/L)`.
///
/// The minimal polynomial of `theta` is not read from a table: it is recovered
/// as the first linear dependency among the powers of `zeta + zeta^{-1}` inside
/// `Q[x]/Phi_{2L}(x)`, which only needs exact linear algebra.
#[derive(Debug)]
pub struct FieldSpec {
    conductor: u64,
    min_poly: Vec<BigRational>, // monic, ascending, degree = self.degree
    degree: usize,
    // theta^(degree + i) in the power basis, i = 0 .. degree-2
    reduction: Vec<Vec<BigRational>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}
impl Eq for FieldSpec {}

impl FieldSpec {
    /// Smallest real cyclotomic field containing `2cos(pi*j/m)` for all listed orders.
    pub fn for_orders(orders: &[u64]) -> Result<Arc<FieldSpec>, ScalarError> {
        let mut l: u64 = 1;
        for &m in orders {
            if m < 2 {
                return Err(ScalarError::UnsupportedOrder(m));
            }
            l = num::integer::lcm(l, m);
        }
        Ok(Arc::new(Self::with_conductor(l.max(2))))
    }

    fn with_conductor(l: u64) -> FieldSpec {
        let n = 2 * l;
        let mut memo = BTreeMap::new();
        let phi = cyclotomic(n, &mut memo);
        let phi_deg = phi.len() - 1;

        // arithmetic mod Phi_{2L}
        let reduce = |p: &[BigRational]| -> Vec<BigRational> {
            let mut r = p.to_vec();
            poly_trim(&mut r);
            while r.len() > phi_deg {
                let k = r.len() - 1 - phi_deg;
                let c = r[r.len() - 1].clone();
                for i in 0..=phi_deg {
                    let t = &phi[i] * &c;
                    r[k + i] -= t;
                }
                poly_trim(&mut r);
            }
            r.resize(phi_deg, BigRational::zero());
            r
        };

        // theta = x + x^(2L-1) mod Phi
        let mut theta = vec![BigRational::zero(); n as usize];
        theta[1] = BigRational::one();
        theta[(n - 1) as usize] += BigRational::one();
        let theta = reduce(&theta);

        // powers 1, theta, theta^2, ... until linearly dependent
        let mut powers: Vec<Vec<BigRational>> = Vec::new();
        let mut cur = reduce(&[BigRational::one()]);
        let min_poly;
        loop {
            if let Some(dep) = linear_dependency(&powers, &cur) {
                // theta^k = sum dep_i theta^i  =>  min poly x^k - sum dep_i x^i
                let mut mp: Vec<BigRational> = dep.iter().map(|c| -c.clone()).collect();
                mp.push(BigRational::one());
                min_poly = mp;
                break;
            }
            powers.push(cur.clone());
            let next = reduce(&poly_mul(&cur, &theta));
            cur = next;
        }

        let degree = min_poly.len() - 1;
        // reduction rows for theta^degree .. theta^(2*degree-2)
        let mut reduction = Vec::new();
        let mut row: Vec<BigRational> = min_poly[..degree].iter().map(|c| -c.clone()).collect();
        reduction.push(row.clone());
        for _ in 1..degree.max(1) - 1 {
            // multiply by theta: shift and fold the overflow back in
            let carry = row[degree - 1].clone();
            let mut next = vec![BigRational::zero(); degree];
            for i in 1..degree {
                next[i] = row[i - 1].clone();
            }
            for i in 0..degree {
                next[i] += &carry * &reduction[0][i];
            }
            reduction.push(next.clone());
            row = next;
        }

        let spec = FieldSpec {
            conductor: l,
            min_poly,
            degree,
            reduction,
        };
        debug_assert!(spec.float_sanity() < 1e-9);
        spec
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic minimal polynomial of theta, ascending coefficients.
    pub fn min_poly(&self) -> &[BigRational] {
        &self.min_poly
    }

    /// |p(2cos(pi/L))| in floating point; used as a sanity cross-check only.
    pub fn float_sanity(&self) -> f64 {
        let th = 2.0 * (std::f64::consts::PI / self.conductor as f64).cos();
        let mut acc = 0.0;
        for c in self.min_poly.iter().rev() {
            acc = acc * th + c.to_f64().unwrap();
        }
        acc.abs()
    }
}

/// Solve `sum c_i rows[i] = target`; rows are linearly independent.
fn linear_dependency(rows: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    if rows.is_empty() {
        return if target.iter().all(|c| c.is_zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    let dim = rows[0].len();
    let k = rows.len();
    // columns = rows (transposed system), augmented with target
    let mut mat: Vec<Vec<BigRational>> = (0..dim)
        .map(|d| {
            let mut r: Vec<BigRational> = rows.iter().map(|p| p[d].clone()).collect();
            r.push(target[d].clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut prow = 0;
    for col in 0..k {
        if let Some(sel) = (prow..dim).find(|&r| !mat[r][col].is_zero()) {
            mat.swap(prow, sel);
            let inv = mat[prow][col].clone();
            for c in col..=k {
                let val = &mat[prow][c] / &inv;
                mat[prow][c] = val;
            }
            for r in 0..dim {
                if r != prow && !mat[r][col].is_zero() {
                    let f = mat[r][col].clone();
                    for c in col..=k {
                        let t = &mat[prow][c] * &f;
                        mat[r][c] -= t;
                    }
                }
            }
            pivot_cols.push(col);
            prow += 1;
        }
    }
    // consistent iff no row reduces to (0 .. 0 | nonzero)
    for r in prow..dim {
        if !mat[r][k].is_zero() {
            return None;
        }
    }
    let mut sol = vec![BigRational::zero(); k];
    for (i, &col) in pivot_cols.iter().enumerate() {
        sol[col] = mat[i][k].clone();
    }
    Some(sol)
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

/// An element of `Q(theta)` in the power basis `1, theta, ..., theta^(d-1)`.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        FieldElement {
            spec: Arc::clone(spec),
            coords: vec![BigRational::zero(); spec.degree],
        }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        Self::from_rational(spec, BigRational::one())
    }

    pub fn from_rational(spec: &Arc<FieldSpec>, q: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); spec.degree];
        coords[0] = q;
        FieldElement {
            spec: Arc::clone(spec),
            coords,
        }
    }

    pub fn from_integer(spec: &Arc<FieldSpec>, n: i64) -> Self {
        Self::from_rational(spec, rat(n))
    }

    pub fn theta(spec: &Arc<FieldSpec>) -> Self {
        let mut coords = vec![BigRational::zero(); spec.degree];
        if spec.degree > 1 {
            coords[1] = BigRational::one();
        } else {
            // degree-1 field: theta itself is rational, namely -min_poly[0]
            coords[0] = -spec.min_poly[0].clone();
        }
        FieldElement {
            spec: Arc::clone(spec),
            coords,
        }
    }

    /// `2cos(pi*j/m)` expressed in the theta basis via the Chebyshev recursion
    /// `c_0 = 2, c_1 = theta, c_{k+1} = theta*c_k - c_{k-1}`.
    pub fn cos_pi_over(spec: &Arc<FieldSpec>, j: i64, m: u64) -> Result<Self, ScalarError> {
        if m == 0 || spec.conductor % m != 0 {
            return Err(ScalarError::UnsupportedOrder(m));
        }
        let l = spec.conductor;
        let mut k = (j.unsigned_abs() * (l / m)) % (2 * l);
        if k > l {
            k = 2 * l - k;
        }
        let mut prev = Self::from_integer(spec, 2);
        if k == 0 {
            return Ok(prev);
        }
        let mut cur = Self::theta(spec);
        let th = Self::theta(spec);
        for _ in 1..k {
            let next = &(&th * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// Rational part if the element is degree-0, else None.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // extended euclid of (coords as poly) against min_poly over Q[x]
        let mut r0: Vec<BigRational> = self.spec.min_poly.clone();
        let mut r1: Vec<BigRational> = self.coords.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() && r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut s2 = s0.clone();
            sub_into(&mut s2, &qs);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        assert!(!r1.is_empty(), "minimal polynomial not irreducible?");
        let c = r1[0].clone(); // gcd is the constant c
        let mut coords = vec![BigRational::zero(); self.spec.degree];
        for (i, v) in s1.iter().enumerate() {
            coords[i] = v / &c;
        }
        Ok(FieldElement {
            spec: Arc::clone(&self.spec),
            coords,
        })
    }

    pub fn to_f64(&self) -> f64 {
        let th = 2.0 * (std::f64::consts::PI / self.spec.conductor as f64).cos();
        let mut acc = 0.0;
        for c in self.coords.iter().rev() {
            acc = acc * th + c.to_f64().unwrap();
        }
        acc
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(
            self.spec.conductor, other.spec.conductor,
            "mixed field elements"
        );
    }
}

fn sub_into(a: &mut Vec<BigRational>, b: &[BigRational]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigRational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        a[i] -= c;
    }
    poly_trim(a);
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    poly_trim(&mut rem);
    let dl = den.len();
    let lead = den[dl - 1].clone();
    if rem.len() < dl {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dl + 1];
    while rem.len() >= dl {
        let k = rem.len() - dl;
        let c = &rem[rem.len() - 1] / &lead;
        quot[k] = c.clone();
        for i in 0..dl {
            let t = &den[i] * &c;
            rem[k + i] -= t;
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    (quot, rem)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec.conductor == other.spec.conductor && self.coords == other.coords
    }
}
impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.spec.conductor.hash(state);
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr_string())
    }
}

impl FieldElement {
    /// Render in the expression mini-language, e.g. `-1/2 + 3*theta`.
    pub fn to_expr_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "theta".to_string(),
                _ => format!("theta^{i}"),
            };
            let s = if mono.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            parts.push(s);
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.assert_same(rhs);
                let coords = self
                    .coords
                    .iter()
                    .zip(rhs.coords.iter())
                    .map(|(a, b)| a $op b)
                    .collect();
                FieldElement { spec: Arc::clone(&self.spec), coords }
            }
        }
    };
}
field_binop!(Add, add, +);
field_binop!(Sub, sub, -);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            spec: Arc::clone(&self.spec),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same(rhs);
        let d = self.spec.degree;
        let mut wide = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                wide[i + j] += a * b;
            }
        }
        let mut coords: Vec<BigRational> = wide[..d].to_vec();
        for (k, c) in wide[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.spec.reduction[k].iter().enumerate() {
                coords[i] += c * r;
            }
        }
        FieldElement {
            spec: Arc::clone(&self.spec),
            coords,
        }
    }
}

impl std::ops::AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        self.assert_same(rhs);
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            *a += b;
        }
    }
}

impl std::ops::SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        self.assert_same(rhs);
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            *a -= b;
        }
    }
}

// ---------------------------------------------------------------------------
// LaurentPoly
// ---------------------------------------------------------------------------

/// A Laurent polynomial in `v` over the ambient field; no zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    spec: Arc<FieldSpec>,
    coeffs: BTreeMap<i64, FieldElement>,
}

impl LaurentPoly {
    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        LaurentPoly {
            spec: Arc::clone(spec),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        Self::from_field(FieldElement::one(spec))
    }

    pub fn from_field(c: FieldElement) -> Self {
        let spec = Arc::clone(&c.spec);
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        LaurentPoly { spec, coeffs }
    }

    /// `c * v^g`
    pub fn monomial(c: FieldElement, g: i64) -> Self {
        let spec = Arc::clone(&c.spec);
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(g, c);
        }
        LaurentPoly { spec, coeffs }
    }

    pub fn v(spec: &Arc<FieldSpec>) -> Self {
        Self::monomial(FieldElement::one(spec), 1)
    }

    pub fn v_pow(spec: &Arc<FieldSpec>, g: i64) -> Self {
        Self::monomial(FieldElement::one(spec), g)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, g: i64) -> FieldElement {
        self.coeffs
            .get(&g)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.spec))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &FieldElement)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    /// (min degree, max degree) of the support, None when zero.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.coeffs.keys().next()?;
        let hi = self.coeffs.keys().next_back()?;
        Some((*lo, *hi))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.compatible(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.compatible(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.compatible(rhs)?;
        Ok(self * rhs)
    }

    fn compatible(&self, rhs: &Self) -> Result<(), ScalarError> {
        if self.spec.conductor != rhs.spec.conductor {
            return Err(ScalarError::IncompatibleField(
                self.spec.conductor,
                rhs.spec.conductor,
            ));
        }
        Ok(())
    }

    fn insert_add(&mut self, g: i64, c: &FieldElement) {
        match self.coeffs.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c.clone());
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (g, c) in rhs.coeffs.iter() {
            out.insert_add(*g, c);
        }
        out
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (g, c) in rhs.coeffs.iter() {
            let n = -c;
            out.insert_add(*g, &n);
        }
        out
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(|(g, c)| (*g, -c)).collect(),
        }
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.spec);
        for (g1, c1) in self.coeffs.iter() {
            for (g2, c2) in rhs.coeffs.iter() {
                let p = c1 * c2;
                out.insert_add(g1 + g2, &p);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr_string())
    }
}

impl LaurentPoly {
    pub fn to_expr_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (g, c) in self.coeffs.iter() {
            let vp = match g {
                0 => String::new(),
                1 => "v".to_string(),
                _ => format!("v^{g}"),
            };
            let cs = c.to_expr_string();
            let needs_paren = cs.contains('+') || cs.contains(" - ");
            let s = if vp.is_empty() {
                if needs_paren {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if c.is_one() {
                vp
            } else if needs_paren {
                format!("({cs})*{vp}")
            } else {
                format!("{cs}*{vp}")
            };
            parts.push(s);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

/// The spec-level entry point for Laurent arithmetic with field checking.
pub fn laurent_arith(a: &LaurentPoly, b: &LaurentPoly, op: LaurentOp) -> Result<LaurentPoly, ScalarError> {
    match op {
        LaurentOp::Add => a.checked_add(b),
        LaurentOp::Sub => a.checked_sub(b),
        LaurentOp::Mul => a.checked_mul(b),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Sub,
    Mul,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(orders: &[u64]) -> Arc<FieldSpec> {
        FieldSpec::for_orders(orders).unwrap()
    }

    #[test]
    fn rational_fields_for_tiny_orders() {
        // 2cos(pi/2) = 0 generates Q
        let f2 = spec(&[2]);
        assert_eq!(f2.degree(), 1);
        // 2cos(pi/3) = 1 generates Q; 2cos(2pi/3) = -1 expressible
        let f3 = spec(&[3]);
        assert_eq!(f3.degree(), 1);
        let c = FieldElement::cos_pi_over(&f3, 2, 3).unwrap();
        assert_eq!(c, FieldElement::from_integer(&f3, -1));
        let c1 = FieldElement::cos_pi_over(&f3, 1, 3).unwrap();
        assert_eq!(c1, FieldElement::from_integer(&f3, 1));
    }

    /// Independent minimal-polynomial oracle: brute-force kernel over the
    /// floating Chebyshev values is replaced by an exact resultant-style check:
    /// the reported polynomial must kill theta numerically and be monic of the
    /// predicted degree phi(2L)/2.
    #[test]
    fn min_poly_for_order_five_is_x2_minus_x_minus_1() {
        let f5 = spec(&[5]);
        assert_eq!(f5.degree(), 2);
        let mp = f5.min_poly();
        assert_eq!(mp[2], rat(1));
        assert_eq!(mp[1], rat(-1));
        assert_eq!(mp[0], rat(-1));
        assert!(f5.float_sanity() < 1e-12);
    }

    #[test]
    fn min_poly_degrees_match_euler_phi() {
        fn phi(mut n: u64) -> u64 {
            let mut result = n;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    while n % p == 0 {
                        n /= p;
                    }
                    result -= result / p;
                }
                p += 1;
            }
            if n > 1 {
                result -= result / n;
            }
            result
        }
        for l in [4u64, 5, 6, 7, 8, 12, 15, 30] {
            let f = FieldSpec::with_conductor(l);
            assert_eq!(f.degree() as u64, phi(2 * l) / 2, "conductor {l}");
            assert!(f.float_sanity() < 1e-9, "conductor {l}");
        }
    }

    #[test]
    fn cos_embedding_consistency() {
        for &m in &[2u64, 3, 4, 5, 6] {
            let f = spec(&[m]);
            for j in 0..=(m as i64) {
                let c = FieldElement::cos_pi_over(&f, j, m).unwrap();
                let want = 2.0 * (std::f64::consts::PI * j as f64 / m as f64).cos();
                assert!(
                    (c.to_f64() - want).abs() < 1e-9,
                    "2cos(pi*{j}/{m}) mismatch: {} vs {want}",
                    c.to_f64()
                );
            }
        }
        // mixed orders through the lcm field
        let f = spec(&[4, 6]);
        for (j, m) in [(1i64, 4u64), (3, 4), (1, 6), (5, 6), (1, 12)] {
            let c = FieldElement::cos_pi_over(&f, j, m).unwrap();
            let want = 2.0 * (std::f64::consts::PI * j as f64 / m as f64).cos();
            assert!((c.to_f64() - want).abs() < 1e-9);
        }
    }

    #[test]
    fn unsupported_orders_rejected() {
        assert!(matches!(
            FieldSpec::for_orders(&[0]),
            Err(ScalarError::UnsupportedOrder(0))
        ));
        assert!(matches!(
            FieldSpec::for_orders(&[1]),
            Err(ScalarError::UnsupportedOrder(1))
        ));
        let f = spec(&[4]);
        assert!(FieldElement::cos_pi_over(&f, 1, 3).is_err());
    }

    #[test]
    fn field_inverse() {
        let f = spec(&[5]);
        let th = FieldElement::theta(&f);
        let x = &(&th * &th) - &FieldElement::from_integer(&f, 3); // theta^2 - 3
        let inv = x.inv().unwrap();
        assert!((&x * &inv).is_one());
        assert!(FieldElement::zero(&f).inv().is_err());
    }

    #[test]
    fn laurent_examples() {
        let f = spec(&[2]);
        let v = LaurentPoly::v(&f);
        let vinv = LaurentPoly::v_pow(&f, -1);
        let d = &v - &vinv;
        let sq = &d * &d;
        // (v - v^-1)^2 = v^2 - 2 + v^-2
        assert_eq!(sq.coefficient(2), FieldElement::from_integer(&f, 1));
        assert_eq!(sq.coefficient(0), FieldElement::from_integer(&f, -2));
        assert_eq!(sq.coefficient(-2), FieldElement::from_integer(&f, 1));
        assert_eq!(sq.coefficient(1), FieldElement::zero(&f));
        // v * v^-1 = 1
        assert!((&v * &vinv).coefficient(0).is_one());

        // over Q(2cos(pi/5)): (theta*v)^2 = (theta+1) v^2 using theta^2 = theta + 1
        let f5 = spec(&[5]);
        let tv = LaurentPoly::monomial(FieldElement::theta(&f5), 1);
        let sq = &tv * &tv;
        let want = &FieldElement::theta(&f5) + &FieldElement::one(&f5);
        assert_eq!(sq.coefficient(2), want);
    }

    #[test]
    fn incompatible_fields_error() {
        let a = LaurentPoly::v(&spec(&[4]));
        let b = LaurentPoly::v(&spec(&[5]));
        assert!(laurent_arith(&a, &b, LaurentOp::Add).is_err());
        assert!(laurent_arith(&a, &b, LaurentOp::Mul).is_err());
    }
}
