//! Weighted counting of ordered set partitions.
//!
//! `par(f, n)` sums, over all ways to split a ground set `M` into an
//! ordered tuple of `n` disjoint (possibly empty) parts covering `M`, the
//! product of `f` applied to each part. Instead of enumerating the `n^|M|`
//! assignments, it runs a ranked zeta transform, raises the resulting
//! polynomial to the n-th power pointwise, and reads the answer off the top
//! rank with inclusion-exclusion over subsets of `M`:
//!
//! `par(f, n) = sum_S (-1)^{|M \ S|} [x^m] (zf_S(x))^n`
//!
//! where `zf_S(x) = sum_j x^j * (sum of f over j-subsets of S)`.
//!
//! Proper colorings arrive as the special case where `f` indicates
//! independent sets: `count_colorings(g, n)` equals the number of
//! homomorphisms from `g` to the complete graph `K_n`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, HomCount};

/// Ground sets are capped at this many elements.
pub const GROUND_SET_GUARD: usize = 24;

/// A function from subsets of `{0..m-1}` (as bitmasks) to counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunction {
    m: usize,
    values: Vec<HomCount>,
}

impl SetFunction {
    /// Takes the table of all `2^m` values, indexed by subset bitmask.
    pub fn new(m: usize, values: Vec<HomCount>) -> Result<SetFunction> {
        if m > GROUND_SET_GUARD {
            return Err(Error::GuardExceeded {
                what: "set function ground set",
                limit: GROUND_SET_GUARD as u128,
                requested: m as u128,
            });
        }
        if values.len() != (1usize << m) {
            return Err(Error::InvalidInput(format!(
                "set function on {m} elements needs {} values, got {}",
                1usize << m,
                values.len()
            )));
        }
        Ok(SetFunction { m, values })
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(usize) -> HomCount) -> Result<SetFunction> {
        if m > GROUND_SET_GUARD {
            return Err(Error::GuardExceeded {
                what: "set function ground set",
                limit: GROUND_SET_GUARD as u128,
                requested: m as u128,
            });
        }
        let values = (0..1usize << m).map(&mut f).collect();
        SetFunction::new(m, values)
    }

    /// 1 on independent sets of `g` (including the empty set), 0 elsewhere.
    pub fn independence_indicator(g: &Graph) -> Result<SetFunction> {
        let m = g.n();
        if m > GROUND_SET_GUARD {
            return Err(Error::GuardExceeded {
                what: "set function ground set",
                limit: GROUND_SET_GUARD as u128,
                requested: m as u128,
            });
        }
        let mut nbr = vec![0usize; m];
        for &(u, v) in g.edges() {
            nbr[u] |= 1 << v;
            nbr[v] |= 1 << u;
        }
        let size = 1usize << m;
        let mut indep = vec![false; size];
        indep[0] = true;
        for s in 1..size {
            let v = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            indep[s] = indep[rest] && nbr[v] & rest == 0;
        }
        let values = indep
            .into_iter()
            .map(|b| if b { HomCount::one() } else { HomCount::zero() })
            .collect();
        SetFunction::new(m, values)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self, mask: usize) -> &HomCount {
        &self.values[mask]
    }
}

// The transform runs either on u64 (when a conservative bit bound shows no
// intermediate can overflow) or on BigUint.
trait Coeff: Clone + Zero {
    fn add_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn into_biguint(self) -> BigUint;
}

impl Coeff for u64 {
    fn add_ref(&mut self, other: &Self) {
        *self += *other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        *self * *other
    }
    fn into_biguint(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Coeff for BigUint {
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn into_biguint(self) -> BigUint {
        self
    }
}

fn mul_trunc<T: Coeff>(a: &[T], b: &[T], m: usize) -> Vec<T> {
    let mut out = vec![T::zero(); m + 1];
    for i in 0..=m {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=m - i {
            if b[j].is_zero() {
                continue;
            }
            let prod = a[i].mul_ref(&b[j]);
            out[i + j].add_ref(&prod);
        }
    }
    out
}

fn dot_top<T: Coeff>(a: &[T], b: &[T], m: usize) -> T {
    let mut acc = T::zero();
    for i in 0..=m {
        if a[i].is_zero() || b[m - i].is_zero() {
            continue;
        }
        let prod = a[i].mul_ref(&b[m - i]);
        acc.add_ref(&prod);
    }
    acc
}

fn pow_trunc<T: Coeff>(p: &[T], e: usize, m: usize) -> Vec<T> {
    debug_assert!(e >= 1);
    if e == 1 {
        p.to_vec()
    } else if e % 2 == 0 {
        let q = pow_trunc(p, e / 2, m);
        mul_trunc(&q, &q, m)
    } else {
        let q = pow_trunc(p, e - 1, m);
        mul_trunc(&q, p, m)
    }
}

// [x^m] p(x)^n with all arithmetic truncated at degree m. The topmost
// multiplication only needs one coefficient, which makes n = 2 (the common
// case) linear instead of quadratic in m per subset.
fn top_coeff_pow<T: Coeff>(p: &[T], n: usize, m: usize) -> T {
    match n {
        1 => p[m].clone(),
        _ if n % 2 == 0 => {
            let q = pow_trunc(p, n / 2, m);
            dot_top(&q, &q, m)
        }
        _ => {
            let q = pow_trunc(p, n - 1, m);
            dot_top(&q, p, m)
        }
    }
}

fn par_impl<T: Coeff>(values: &[T], m: usize, n: usize) -> BigUint {
    let size = 1usize << m;
    // ranked zeta: ranks[j][s] = sum of f over the j-element subsets of s
    let mut ranks: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let mut col = vec![T::zero(); size];
        for s in 0..size {
            if s.count_ones() as usize == j {
                col[s] = values[s].clone();
            }
        }
        for b in 0..m {
            let bit = 1usize << b;
            for s in 0..size {
                if s & bit != 0 {
                    let (lo, hi) = col.split_at_mut(s);
                    if !lo[s ^ bit].is_zero() {
                        hi[0].add_ref(&lo[s ^ bit]);
                    }
                }
            }
        }
        ranks.push(col);
    }
    // inclusion-exclusion over subsets, evaluated at the full set only
    let mut plus: BigUint = Zero::zero();
    let mut minus: BigUint = Zero::zero();
    let mut poly = vec![T::zero(); m + 1];
    for s in 0..size {
        for (j, coeff) in poly.iter_mut().enumerate() {
            *coeff = ranks[j][s].clone();
        }
        let top = top_coeff_pow(&poly, n, m);
        if (m - s.count_ones() as usize) % 2 == 0 {
            plus += top.into_biguint();
        } else {
            minus += top.into_biguint();
        }
    }
    plus - minus
}

/// Sum over ordered tuples of `n` disjoint sets covering the ground set of
/// the product of `f` over the parts. Empty parts contribute `f(empty)`.
pub fn par(f: &SetFunction, n: usize) -> HomCount {
    let m = f.m;
    if n == 0 {
        // only the empty ground set admits a 0-tuple cover
        return if m == 0 { One::one() } else { Zero::zero() };
    }
    let max_bits = f.values.iter().map(|v| v.bits()).max().unwrap_or(0);
    // coefficients of the e-th truncated power stay below
    // 2^(e * (m + max_bits + 5)); keep everything inside u64 when possible
    let b0 = m as u64 + max_bits + 5;
    if (n as u64).checked_mul(b0).map_or(false, |total| total <= 62) {
        let small: Vec<u64> = f
            .values
            .iter()
            .map(|v| v.to_u64().expect("bit bound keeps values in u64"))
            .collect();
        par_impl(&small, m, n)
    } else {
        par_impl(&f.values, m, n)
    }
}

/// Number of proper n-colorings of `g`, i.e. homomorphisms into `K_n`.
pub fn count_colorings(g: &Graph, n: usize) -> Result<HomCount> {
    let f = SetFunction::independence_indicator(g)?;
    Ok(par(&f, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_clique, gen_cycle, gen_kneser, gen_path};

    fn big(x: u64) -> HomCount {
        HomCount::from(x)
    }

    #[test]
    fn constant_one_counts_all_assignments() {
        // every element independently picks one of n parts
        for (m, n) in [(0, 3), (3, 2), (4, 3), (5, 1)] {
            let f = SetFunction::from_fn(m, |_| big(1)).unwrap();
            assert_eq!(par(&f, n), big((n as u64).pow(m as u32)), "m={m} n={n}");
        }
    }

    #[test]
    fn single_part_returns_full_set_value() {
        let f = SetFunction::from_fn(4, |s| big(s as u64 + 7)).unwrap();
        assert_eq!(par(&f, 1), big(15 + 7));
    }

    #[test]
    fn zero_parts_cover_only_the_empty_set() {
        let f = SetFunction::from_fn(2, |_| big(1)).unwrap();
        assert_eq!(par(&f, 0), big(0));
        let empty = SetFunction::from_fn(0, |_| big(9)).unwrap();
        assert_eq!(par(&empty, 0), big(1));
    }

    #[test]
    fn triangle_colorings() {
        assert_eq!(count_colorings(&gen_clique(3), 3).unwrap(), big(6));
        assert_eq!(count_colorings(&gen_clique(3), 2).unwrap(), big(0));
        assert_eq!(count_colorings(&gen_clique(2), 4).unwrap(), big(12));
    }

    #[test]
    fn path_and_cycle_chromatic_values() {
        // path on 3 vertices: n * (n-1)^2
        assert_eq!(count_colorings(&gen_path(3), 3).unwrap(), big(12));
        // cycle C_n at q colors: (q-1)^n + (-1)^n (q-1)
        assert_eq!(count_colorings(&gen_cycle(4), 3).unwrap(), big(18));
        assert_eq!(count_colorings(&gen_cycle(5), 3).unwrap(), big(30));
    }

    #[test]
    fn petersen_three_colorings() {
        let petersen = gen_kneser(5, 2).unwrap();
        assert_eq!(count_colorings(&petersen, 3).unwrap(), big(120));
    }

    #[test]
    fn big_value_path_agrees_with_small() {
        // force the BigUint path with a huge value and compare against the
        // same function scaled down
        let unit = SetFunction::from_fn(3, |_| big(1)).unwrap();
        let scale = HomCount::from(u64::MAX) * HomCount::from(u64::MAX);
        let scaled = SetFunction::from_fn(3, |_| scale.clone()).unwrap();
        let n = 3usize;
        let expected = par(&unit, n) * scale.pow(n as u32);
        assert_eq!(par(&scaled, n), expected);
    }

    #[test]
    fn guard_rejects_large_ground_sets() {
        assert!(SetFunction::from_fn(25, |_| big(0)).is_err());
    }
}
