//! Arithmetic in `GF(p^m)` backed by exp/log tables.
//!
//! Elements are stored as the base-`p` integer encoding of their coefficient
//! vector in the polynomial basis `1, x, ..., x^{m-1}` modulo a primitive
//! polynomial, so the field elements are exactly the integers `0..p^m`. The
//! residue class of `x` is the primitive element `π` used everywhere else.
//!
//! The subfield `F_{p^e}` (with `e = gcd(m, d)`) is embedded as the fixed
//! field of `y ↦ y^{p^e}`; coordinates over it are taken with respect to the
//! basis `1, π, ..., π^{m/e - 1}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, FieldMatrix};
use crate::params::{checked_pow, prime_factors, FieldParams};

/// Largest field for which tables are built unless a caller raises it.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

/// An element of `GF(p^m)`, encoded as `Σ c_i p^i` for its polynomial-basis
/// coefficients `c_i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn from_index(i: u32) -> Fe {
        Fe(i)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe({})", self.0)
    }
}

/// Polynomials over `Z/p`, coefficients low-degree first.
mod poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
    }

    /// `a * b mod f` for monic `f`.
    pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        reduce(prod, f, p)
    }

    pub fn reduce(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
        let deg = f.len() - 1;
        while a.len() > deg {
            let top = a.pop().unwrap();
            if top != 0 {
                let base = a.len() - deg;
                for (i, &c) in f[..deg].iter().enumerate() {
                    a[base + i] = (a[base + i] + (p - c) * top) % p;
                }
            }
        }
        if a.is_empty() {
            a.push(0);
        }
        trim(&mut a);
        a
    }

    /// `x^n mod f`.
    pub fn x_pow_mod(mut n: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut result = reduce(vec![1], f, p);
        let mut base = reduce(vec![0, 1], f, p);
        while n > 0 {
            if n & 1 == 1 {
                result = mulmod(&result, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            n >>= 1;
        }
        result
    }

    pub fn is_one(a: &[u64]) -> bool {
        a == [1]
    }
}

fn check_field_size(p: u64, m: u32, cap: u64) -> Result<u64> {
    if !crate::params::is_prime(p) {
        return Err(Error::Param(format!("p must be prime (got {p})")));
    }
    if m == 0 {
        return Err(Error::Param("m must be a positive integer".into()));
    }
    match checked_pow(p, m) {
        Some(q) if q <= cap => Ok(q),
        _ => Err(Error::budget(
            format!("field table for GF({p}^{m})"),
            format!("{p}^{m}"),
            cap,
        )),
    }
}

/// True iff `modulus` (monic, degree `m`, low-degree first) is primitive:
/// the class of `x` has multiplicative order exactly `p^m - 1`.
pub fn is_primitive(p: u64, modulus: &[u64]) -> bool {
    if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
        return false;
    }
    if modulus.iter().any(|&c| c >= p) || modulus[0] == 0 {
        return false;
    }
    let m = (modulus.len() - 1) as u32;
    let Some(q) = checked_pow(p, m) else {
        return false;
    };
    let order = q - 1;
    if !poly::is_one(&poly::x_pow_mod(order, modulus, p)) {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|r| !poly::is_one(&poly::x_pow_mod(order / r, modulus, p)))
}

/// The smallest primitive monic polynomial of degree `m` over `Z/p`.
///
/// Candidates `x^m + c_{m-1}x^{m-1} + ... + c_0` are ordered by the integer
/// `Σ c_i p^i`, i.e. compared from the highest non-leading coefficient down.
/// Returned low-degree first, e.g. `x^4 + x + 1` as `[1, 1, 0, 0, 1]`.
pub fn find_primitive_poly(p: u64, m: u32) -> Result<Vec<u64>> {
    find_primitive_poly_with_cap(p, m, DEFAULT_FIELD_CAP)
}

pub fn find_primitive_poly_with_cap(p: u64, m: u32, cap: u64) -> Result<Vec<u64>> {
    let q = check_field_size(p, m, cap)?;
    let mut modulus = vec![0u64; m as usize + 1];
    modulus[m as usize] = 1;
    for code in 1..q {
        let mut c = code;
        for slot in modulus.iter_mut().take(m as usize) {
            *slot = c % p;
            c /= p;
        }
        if is_primitive(p, &modulus) {
            return Ok(modulus);
        }
    }
    Err(Error::Internal(format!(
        "no primitive polynomial of degree {m} over F_{p}"
    )))
}

/// A fully tabulated `GF(p^m)` together with its `F_{p^e}` structure.
#[derive(Clone)]
pub struct FieldContext {
    params: FieldParams,
    size: u32,
    modulus: Vec<u64>,
    pow_p: Vec<u32>,
    exp: Vec<Fe>,
    log: Vec<u32>,
    subfield: Vec<Fe>,
    basis: Vec<Fe>,
    dual_basis: Vec<Fe>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("params", &self.params)
            .field("modulus", &self.modulus)
            .finish_non_exhaustive()
    }
}

impl FieldContext {
    /// Builds the field for `params` with the default primitive polynomial.
    pub fn build(params: FieldParams) -> Result<Self> {
        Self::build_with(params, None, DEFAULT_FIELD_CAP)
    }

    /// Builds the field, optionally using a caller-supplied primitive modulus
    /// (low-degree first, monic of degree `m`).
    pub fn build_with(params: FieldParams, modulus: Option<&[u64]>, cap: u64) -> Result<Self> {
        let (p, m) = (params.p, params.m);
        let q = check_field_size(p, m, cap)?;
        let modulus = match modulus {
            Some(f) => {
                if f.len() != m as usize + 1 || f[m as usize] != 1 {
                    return Err(Error::Param(format!(
                        "modulus {f:?} must be monic of degree m = {m}"
                    )));
                }
                if !is_primitive(p, f) {
                    return Err(Error::Param(format!(
                        "modulus {f:?} is not primitive over F_{p}: x does not have order {p}^{m} - 1"
                    )));
                }
                f.to_vec()
            }
            None => find_primitive_poly_with_cap(p, m, cap)?,
        };
        let size = q as u32;
        let pow_p: Vec<u32> = (0..m).map(|i| checked_pow(p, i).unwrap() as u32).collect();

        // Powers of x by repeated multiplication in coefficient form.
        let order = size - 1;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; size as usize];
        let mut digits = vec![0u64; m as usize];
        digits[0] = 1;
        for i in 0..order {
            let code: u64 = digits
                .iter()
                .zip(&pow_p)
                .map(|(&c, &w)| c * u64::from(w))
                .sum();
            if log[code as usize] != u32::MAX {
                return Err(Error::Internal(format!(
                    "modulus {modulus:?} is not primitive: x^{i} repeats"
                )));
            }
            log[code as usize] = i;
            exp.push(Fe(code as u32));
            let top = digits[m as usize - 1];
            for j in (1..m as usize).rev() {
                digits[j] = digits[j - 1];
            }
            digits[0] = 0;
            if top != 0 {
                for (j, slot) in digits.iter_mut().enumerate() {
                    *slot = (*slot + (p - modulus[j]) * top) % p;
                }
            }
        }
        if digits.iter().enumerate().any(|(j, &c)| c != u64::from(j == 0)) {
            return Err(Error::Internal("x^(p^m - 1) != 1".into()));
        }

        let e = params.e;
        let n = params.rel_dim();
        let mut ctx = FieldContext {
            params,
            size,
            modulus,
            pow_p,
            exp,
            log,
            subfield: Vec::new(),
            basis: Vec::new(),
            dual_basis: Vec::new(),
        };

        let sub_size = checked_pow(p, e).unwrap() as u32;
        let stride = order / (sub_size - 1);
        let mut subfield: Vec<Fe> = std::iter::once(Fe::ZERO)
            .chain((0..sub_size - 1).map(|j| ctx.exp[(j * stride) as usize]))
            .collect();
        subfield.sort();
        ctx.subfield = subfield;
        ctx.basis = (0..n).map(|i| ctx.pow(ctx.pi(), u64::from(i))).collect();

        // Dual basis of (1, π, ..., π^{n-1}) under the trace form.
        let gram = ctx.trace_gram();
        let inv = linalg::inverse(&ctx, &gram)
            .ok_or_else(|| Error::Internal("trace form Gram matrix is singular".into()))?;
        ctx.dual_basis = (0..n as usize)
            .map(|j| {
                (0..n as usize).fold(Fe::ZERO, |acc, l| {
                    ctx.add(acc, ctx.mul(inv.get(l, j), ctx.basis[l]))
                })
            })
            .collect();
        Ok(ctx)
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn m(&self) -> u32 {
        self.params.m
    }

    /// `p^m`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Multiplicative group order `p^m - 1`.
    pub fn order(&self) -> u32 {
        self.size - 1
    }

    /// Modulus coefficients, low-degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The primitive element `π`, the class of `x`.
    pub fn pi(&self) -> Fe {
        self.exp.get(1).copied().unwrap_or(Fe::ONE)
    }

    pub fn exp_table(&self) -> &[Fe] {
        &self.exp
    }

    /// Discrete log base `π`; `None` for zero.
    pub fn log(&self, x: Fe) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.0 as usize])
        }
    }

    /// `π^i`.
    pub fn exp(&self, i: u64) -> Fe {
        self.exp[(i % u64::from(self.order())) as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.size).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.params.p as u32;
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u32);
        for &w in &self.pow_p {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.params.p as u32;
        if p == 2 {
            return a;
        }
        let (mut x, mut out) = (a.0, 0u32);
        for &w in &self.pow_p {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        let ord = self.order();
        self.exp[(if s >= ord { s - ord } else { s }) as usize]
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let ord = self.order();
        Ok(self.exp[((ord - self.log[a.0 as usize]) % ord) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n`, with `0^0 = 1`.
    pub fn pow(&self, a: Fe, n: u64) -> Fe {
        if n == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let ord = u64::from(self.order());
        let l = u64::from(self.log[a.0 as usize]);
        self.exp[((l * (n % ord)) % ord) as usize]
    }

    /// `p^t mod (p^m - 1)`; the exponent multiplier of the `t`-th Frobenius power.
    fn frobenius_multiplier(&self, t: u64) -> u64 {
        let ord = u64::from(self.order());
        if ord == 1 {
            return 0;
        }
        let mut acc = 1u64 % ord;
        let mut base = self.params.p % ord;
        let mut t = t % u64::from(self.params.m);
        while t > 0 {
            if t & 1 == 1 {
                acc = acc * base % ord;
            }
            base = base * base % ord;
            t >>= 1;
        }
        acc
    }

    /// `x^{p^t}`.
    pub fn frobenius(&self, x: Fe, t: u64) -> Fe {
        if x.is_zero() {
            return x;
        }
        let ord = u64::from(self.order());
        let mult = self.frobenius_multiplier(t);
        self.exp[((u64::from(self.log[x.0 as usize]) * mult) % ord.max(1)) as usize]
    }

    /// Lookup table for `x ↦ x^{p^t}` indexed by element encoding.
    pub fn frobenius_table(&self, t: u64) -> Vec<Fe> {
        self.elements().map(|x| self.frobenius(x, t)).collect()
    }

    /// Subfield degree `e`.
    pub fn sub_degree(&self) -> u32 {
        self.params.e
    }

    /// `m / e`.
    pub fn rel_dim(&self) -> usize {
        self.params.rel_dim() as usize
    }

    /// The `p^e` elements of the embedded `F_{p^e}`, sorted by encoding.
    pub fn subfield_elements(&self) -> &[Fe] {
        &self.subfield
    }

    pub fn in_subfield(&self, y: Fe) -> bool {
        self.frobenius(y, u64::from(self.params.e)) == y
    }

    /// `(1, π, ..., π^{m/e - 1})`.
    pub fn subfield_basis(&self) -> &[Fe] {
        &self.basis
    }

    /// `Tr_{F_{p^m}/F_{p^e}}(x) = Σ_{i < m/e} x^{p^{ei}}`.
    pub fn trace_to_subfield(&self, x: Fe) -> Fe {
        let e = u64::from(self.params.e);
        (0..self.rel_dim() as u64).fold(Fe::ZERO, |acc, i| self.add(acc, self.frobenius(x, e * i)))
    }

    /// Gram matrix `Tr(π^i π^j)` of the subfield basis under the trace form.
    pub fn trace_gram(&self) -> FieldMatrix {
        let n = self.rel_dim();
        let mut g = FieldMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.trace_to_subfield(self.mul(self.basis[i], self.basis[j])));
            }
        }
        g
    }

    /// Coordinates of `x` over `F_{p^e}` in the basis `(1, π, ..., π^{m/e-1})`.
    pub fn coords(&self, x: Fe) -> Vec<Fe> {
        self.dual_basis
            .iter()
            .map(|&b| self.trace_to_subfield(self.mul(x, b)))
            .collect()
    }

    /// Inverse of [`coords`](Self::coords).
    pub fn from_coords(&self, c: &[Fe]) -> Fe {
        debug_assert_eq!(c.len(), self.rel_dim());
        c.iter()
            .zip(&self.basis)
            .fold(Fe::ZERO, |acc, (&ci, &b)| self.add(acc, self.mul(ci, b)))
    }

    /// Multiplicative order of `x` by trial of divisors of `p^m - 1`.
    pub fn multiplicative_order(&self, x: Fe) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut ord = u64::from(self.order());
        for r in prime_factors(ord) {
            while ord % r == 0 && self.pow(x, ord / r) == Fe::ONE {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// Element from its polynomial-basis coefficients (low-degree first).
    pub fn from_poly_coeffs(&self, c: &[u64]) -> Fe {
        let p = self.params.p;
        Fe(c.iter()
            .zip(&self.pow_p)
            .map(|(&ci, &w)| (ci % p) as u32 * w)
            .sum())
    }

    /// Polynomial-basis coefficients of `x`, low-degree first.
    pub fn poly_coeffs(&self, x: Fe) -> Vec<u64> {
        let p = self.params.p as u32;
        let mut v = x.0;
        (0..self.params.m)
            .map(|_| {
                let c = v % p;
                v /= p;
                u64::from(c)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(p: u64, m: u32, d: u32) -> FieldContext {
        FieldContext::build(FieldParams::new(p, m, d, 1).unwrap()).unwrap()
    }

    /// Exhaustive oracle: walk candidates in integer order and test the
    /// order of x by explicit repeated multiplication.
    fn brute_primitive(p: u64, m: u32) -> Vec<u64> {
        let q = p.pow(m);
        for code in 1..q {
            let mut f = vec![0u64; m as usize + 1];
            f[m as usize] = 1;
            let mut c = code;
            for slot in f.iter_mut().take(m as usize) {
                *slot = c % p;
                c /= p;
            }
            let mut acc = poly::reduce(vec![1], &f, p);
            let x = poly::reduce(vec![0, 1], &f, p);
            let mut order = 0;
            for i in 1..q {
                acc = poly::mulmod(&acc, &x, &f, p);
                if poly::is_one(&acc) {
                    order = i;
                    break;
                }
            }
            if order == q - 1 {
                return f;
            }
        }
        unreachable!()
    }

    #[test]
    fn primitive_poly_examples() {
        assert_eq!(find_primitive_poly(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(find_primitive_poly(2, 4).unwrap(), vec![1, 1, 0, 0, 1]);
        assert_eq!(find_primitive_poly(3, 1).unwrap(), vec![1, 1]);
        for (p, m) in [(2, 3), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)] {
            assert_eq!(find_primitive_poly(p, m).unwrap(), brute_primitive(p, m), "({p},{m})");
        }
    }

    #[test]
    fn primitive_poly_rejects() {
        assert!(matches!(find_primitive_poly(4, 2), Err(Error::Param(_))));
        assert!(matches!(find_primitive_poly(2, 30), Err(Error::Budget { .. })));
        assert!(is_primitive(2, &[1, 0, 0, 1, 1]));
        // x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5.
        assert!(!is_primitive(2, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn gf4_tables() {
        let f = ctx(2, 2, 1);
        let pi = f.pi();
        assert_eq!(f.exp_table(), &[Fe(1), pi, f.add(pi, Fe::ONE)]);
        assert_eq!(f.mul(pi, pi), f.add(pi, Fe::ONE));
        assert_eq!(f.frobenius(pi, 1), f.add(pi, Fe::ONE));
        assert_eq!(f.trace_to_subfield(pi), Fe::ONE);
    }

    #[test]
    fn prime_field_edge() {
        let f = ctx(2, 1, 1);
        assert_eq!(f.pi(), Fe::ONE);
        assert_eq!(f.exp_table(), &[Fe::ONE]);
        assert_eq!(f.coords(Fe::ONE), vec![Fe::ONE]);
    }

    #[test]
    fn gf9_pi() {
        let f = ctx(3, 2, 1);
        assert_eq!(f.modulus(), &[2, 1, 1]);
        assert_eq!(f.exp_table().len(), 8);
        assert_eq!(f.pow(f.pi(), 8), Fe::ONE);
        assert_eq!(f.pow(f.pi(), 4), f.neg(Fe::ONE));
    }

    #[test]
    fn basic_ops() {
        let f = ctx(3, 3, 1);
        for x in f.elements() {
            assert_eq!(f.mul(x, Fe::ZERO), Fe::ZERO);
            assert_eq!(f.add(x, f.neg(x)), Fe::ZERO);
            assert_eq!(f.frobenius(x, 0), x);
            assert_eq!(f.frobenius(x, 3), x);
            assert_eq!(f.frobenius(x, 1), f.pow(x, 3));
            if !x.is_zero() {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), Fe::ONE);
            }
        }
        assert_eq!(f.inv(Fe::ONE).unwrap(), Fe::ONE);
        assert!(matches!(f.inv(Fe::ZERO), Err(Error::Domain(_))));
    }

    #[test]
    fn pi_order_is_full() {
        for (p, m) in [(2, 1), (2, 8), (2, 16), (3, 5), (5, 3), (7, 2), (13, 2), (251, 2)] {
            let f = ctx(p, m, 1);
            assert_eq!(f.multiplicative_order(f.pi()), Some(u64::from(f.order())), "({p},{m})");
        }
    }

    #[test]
    fn exp_log_inverse() {
        let f = ctx(2, 10, 1);
        for i in 0..f.order() {
            assert_eq!(f.log(f.exp(u64::from(i))), Some(i));
        }
        for x in f.elements().skip(1) {
            assert_eq!(f.exp(u64::from(f.log(x).unwrap())), x);
        }
    }

    #[test]
    fn override_modulus() {
        let params = FieldParams::new(2, 4, 1, 1).unwrap();
        let f = FieldContext::build_with(params, Some(&[1, 0, 0, 1, 1]), DEFAULT_FIELD_CAP).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 0, 1, 1]);
        let err = FieldContext::build_with(params, Some(&[1, 1, 1, 1, 1]), DEFAULT_FIELD_CAP);
        assert!(err.unwrap_err().to_string().contains("not primitive"));
        assert!(FieldContext::build_with(params, Some(&[1, 1, 1]), DEFAULT_FIELD_CAP).is_err());
    }

    #[test]
    fn subfield_embedding() {
        let f = ctx(2, 6, 4); // e = 2
        assert_eq!(f.subfield_elements().len(), 4);
        for &y in f.subfield_elements() {
            assert!(f.in_subfield(y));
        }
        assert_eq!(f.elements().filter(|&y| f.in_subfield(y)).count(), 4);
        for x in f.elements() {
            assert!(f.in_subfield(f.trace_to_subfield(x)));
        }
    }

    #[test]
    fn coords_bijection_exhaustive() {
        for (p, m, d) in [(2, 4, 2), (2, 6, 2), (2, 6, 3), (3, 4, 2), (2, 12, 4), (2, 8, 1)] {
            let f = ctx(p, m, d);
            let mut seen = std::collections::BTreeSet::new();
            for x in f.elements() {
                let c = f.coords(x);
                assert_eq!(c.len(), f.rel_dim());
                assert!(c.iter().all(|&ci| f.in_subfield(ci)));
                assert_eq!(f.from_coords(&c), x);
                assert!(seen.insert(c));
            }
            assert_eq!(seen.len(), f.size() as usize);
        }
        let f = ctx(2, 4, 1);
        assert_eq!(f.coords(Fe::ZERO), vec![Fe::ZERO; 4]);
        assert_eq!(f.coords(Fe::ONE), vec![Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO]);
        // e = m: coordinates are the element itself.
        let g = ctx(2, 4, 4);
        let x = g.exp(7);
        assert_eq!(g.coords(x), vec![x]);
    }

    #[test]
    fn trace_gram_full_rank() {
        for (p, m, d) in [(2, 4, 1), (2, 4, 2), (2, 6, 2), (3, 3, 1), (5, 2, 1), (2, 12, 3)] {
            let f = ctx(p, m, d);
            assert_eq!(linalg::rank(&f, &f.trace_gram()), f.rel_dim());
        }
    }

    #[test]
    fn trace_is_subfield_linear() {
        let f = ctx(3, 4, 2);
        for &c in f.subfield_elements() {
            for x in f.elements().step_by(7) {
                assert_eq!(
                    f.trace_to_subfield(f.mul(c, x)),
                    f.mul(c, f.trace_to_subfield(x))
                );
            }
        }
    }

    proptest! {
        #[test]
        fn frobenius_additive(a in 0u32..6561, b in 0u32..6561, t in 0u64..20) {
            let f = ctx(3, 8, 1);
            let (x, y) = (Fe(a), Fe(b));
            prop_assert_eq!(
                f.frobenius(f.add(x, y), t),
                f.add(f.frobenius(x, t), f.frobenius(y, t))
            );
            // t-fold application of x -> x^p
            let mut z = x;
            for _ in 0..t { z = f.pow(z, 3); }
            prop_assert_eq!(f.frobenius(x, t), z);
        }

        #[test]
        fn field_axioms(a in 0u32..625, b in 0u32..625, c in 0u32..625) {
            let f = ctx(5, 4, 1);
            let (x, y, z) = (Fe(a), Fe(b), Fe(c));
            prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
            prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
            prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
            prop_assert_eq!(f.sub(f.add(x, y), y), x);
        }
    }
}
