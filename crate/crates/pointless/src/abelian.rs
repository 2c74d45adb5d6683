//! Finite abelian group machinery on coordinate vectors.
//!
//! A group is presented as a product of cyclic groups Z/c_1 x ... x Z/c_r;
//! elements are vectors of residues. Everything downstream (unit groups, ray
//! class quotients, Galois groups) reduces to this shape, so this module owns
//! the integer-matrix work: Hermite normal forms for canonical subgroup
//! bases, Smith normal forms for quotient decompositions, subgroup
//! enumeration by index, and integer-only character evaluation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Cap on the order of any group whose subgroups or characters we enumerate.
pub const MAX_ENUMERABLE_ORDER: u128 = 1 << 24;
/// Cap on the rank of any group whose subgroups we enumerate.
pub const MAX_ENUMERABLE_RANK: usize = 4;

/// A finite abelian group written as Z/c_1 x ... x Z/c_r. Invariant factors
/// are not required (the c_i may be arbitrary moduli >= 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDecomp {
    pub orders: Vec<u128>,
}

impl CyclicDecomp {
    pub fn new(orders: Vec<u128>) -> CyclicDecomp {
        assert!(orders.iter().all(|&c| c >= 1));
        CyclicDecomp { orders }
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u128 {
        self.orders
            .iter()
            .try_fold(1u128, |acc, &c| acc.checked_mul(c))
            .expect("group order overflows u128")
    }

    pub fn zero(&self) -> Vec<u128> {
        vec![0; self.orders.len()]
    }

    pub fn is_zero(&self, x: &[u128]) -> bool {
        x.iter().all(|&v| v == 0)
    }

    pub fn reduce(&self, x: &[u128]) -> Vec<u128> {
        x.iter().zip(&self.orders).map(|(&v, &c)| v % c).collect()
    }

    pub fn add(&self, a: &[u128], b: &[u128]) -> Vec<u128> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((&x, &y), &c)| (x + y) % c)
            .collect()
    }

    pub fn neg(&self, a: &[u128]) -> Vec<u128> {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &c)| if x == 0 { 0 } else { c - x })
            .collect()
    }

    pub fn sub(&self, a: &[u128], b: &[u128]) -> Vec<u128> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: u128, a: &[u128]) -> Vec<u128> {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &c)| arith::mul_mod(k % c, x, c))
            .collect()
    }

    /// Additive order, via lcm of the per-coordinate orders; needs no
    /// factorization.
    pub fn order_of(&self, x: &[u128]) -> u128 {
        x.iter()
            .zip(&self.orders)
            .map(|(&v, &c)| c / arith::gcd(v, c))
            .fold(1u128, arith::lcm)
    }

    /// All elements in mixed-radix order (first coordinate most significant).
    pub fn elements(&self) -> impl Iterator<Item = Vec<u128>> + '_ {
        let r = self.orders.len();
        let mut cur = vec![0u128; r];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = cur.clone();
            let mut i = r;
            loop {
                if i == 0 {
                    done = true;
                    break;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.orders[i] {
                    break;
                }
                cur[i] = 0;
            }
            Some(out)
        })
    }

    /// All solutions x of k*x = target, coordinate-wise; the result is sorted
    /// in the same mixed-radix order as [`Self::elements`].
    pub fn solve_scale(&self, k: u128, target: &[u128]) -> Vec<Vec<u128>> {
        let mut per_coord: Vec<Vec<u128>> = Vec::with_capacity(self.orders.len());
        for (&t, &c) in target.iter().zip(&self.orders) {
            let (x0, step, count) = arith::solve_linear_congruence(k, t, c);
            if count == 0 {
                return Vec::new();
            }
            let mut sols: Vec<u128> = (0..count).map(|i| (x0 + i * step) % c).collect();
            sols.sort_unstable();
            per_coord.push(sols);
        }
        let mut out: Vec<Vec<u128>> = vec![Vec::new()];
        for sols in &per_coord {
            let mut next = Vec::with_capacity(out.len() * sols.len());
            for prefix in &out {
                for &s in sols {
                    let mut v = prefix.clone();
                    v.push(s);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Hermite normal form
// ---------------------------------------------------------------------------

/// Row-style Hermite normal form of a full-column-rank integer lattice basis
/// (the rows span the lattice; there may be more rows than columns). Returns
/// the unique r x r upper-triangular basis with positive diagonal and each
/// above-diagonal entry reduced into [0, pivot). Panics if the rows do not
/// span a full-rank sublattice of Z^r.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    if cols == 0 {
        return Vec::new();
    }
    let mut active: Vec<Vec<BigInt>> = rows.to_vec();
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(cols);
    for j in 0..cols {
        // Eliminate column j down to a single nonzero entry by gcd steps.
        loop {
            let mut idx: Option<usize> = None;
            for (i, row) in active.iter().enumerate() {
                if !row[j].is_zero()
                    && idx.map_or(true, |k| row[j].abs() < active[k][j].abs())
                {
                    idx = Some(i);
                }
            }
            let Some(pivot_idx) = idx else {
                panic!("matrix does not have full column rank at column {j}");
            };
            let mut others = false;
            for i in 0..active.len() {
                if i == pivot_idx || active[i][j].is_zero() {
                    continue;
                }
                others = true;
                let q = &active[i][j] / &active[pivot_idx][j];
                if !q.is_zero() {
                    for col in 0..cols {
                        let sub = &q * &active[pivot_idx][col];
                        active[i][col] -= sub;
                    }
                }
                // If the quotient was zero (|entry| < |pivot| cannot happen by
                // minimality) the next loop iteration picks a smaller pivot.
            }
            if !others {
                let mut row = active.swap_remove(pivot_idx);
                if row[j].is_negative() {
                    for v in row.iter_mut() {
                        *v = -&*v;
                    }
                }
                out.push(row);
                break;
            }
        }
    }
    // active rows are now all zero (full rank consumed every column).
    debug_assert!(active.iter().all(|r| r.iter().all(|v| v.is_zero())));
    // Back-reduce entries above each pivot into [0, pivot). Columns must be
    // processed left to right: row j only has support in columns >= j, so
    // later reductions cannot disturb a column already reduced.
    for j in 0..cols {
        let pivot_row = out[j].clone();
        for i in 0..j {
            let q = num_integer::Integer::div_floor(&out[i][j], &pivot_row[j]);
            if !q.is_zero() {
                for col in 0..cols {
                    let sub = &q * &pivot_row[col];
                    out[i][col] -= sub;
                }
            }
        }
    }
    out
}

fn hnf_u128(rows: &[Vec<u128>], cols: usize) -> Vec<Vec<u128>> {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols);
            r.iter().map(|&v| BigInt::from(v)).collect()
        })
        .collect();
    hnf(&big)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| u128::try_from(v).expect("HNF entries of a bounded lattice fit u128"))
                .collect()
        })
        .collect()
}

/// Canonical basis (HNF) of the subgroup of the given group generated by
/// `gens`: the unique upper-triangular basis of the preimage lattice
/// spanned by the generators and the relation lattice diag(c). Equal
/// subgroups produce identical keys.
pub fn canonical_subgroup_key(group: &CyclicDecomp, gens: &[Vec<u128>]) -> Vec<Vec<u128>> {
    let r = group.rank();
    if r == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<u128>> = Vec::with_capacity(gens.len() + r);
    for g in gens {
        rows.push(group.reduce(g));
    }
    for (i, &c) in group.orders.iter().enumerate() {
        let mut row = vec![0u128; r];
        row[i] = c;
        rows.push(row);
    }
    hnf_u128(&rows, r)
}

/// Index of the subgroup generated by `gens` (product of the HNF diagonal
/// of its preimage lattice).
pub fn subgroup_index(group: &CyclicDecomp, gens: &[Vec<u128>]) -> u128 {
    let key = canonical_subgroup_key(group, gens);
    key.iter().enumerate().map(|(i, row)| row[i]).product()
}

// ---------------------------------------------------------------------------
// Smith normal form with column transform
// ---------------------------------------------------------------------------

pub struct Snf {
    /// Diagonal entries d_1 | d_2 | ... (length = column count), nonnegative.
    pub diag: Vec<BigInt>,
    /// Column transform: the quotient map is x -> (x * v) mod diag.
    pub v: Vec<Vec<BigInt>>,
    /// Inverse of v, for lifting.
    pub v_inv: Vec<Vec<BigInt>>,
}

/// Smith normal form of a relations matrix (rows = relations on Z^r).
/// Tracks only the column transform, which is all the quotient construction
/// needs.
pub fn snf(rows: &[Vec<BigInt>], cols: usize) -> Snf {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    for r in &a {
        assert_eq!(r.len(), cols);
    }
    let mut v: Vec<Vec<BigInt>> = identity(cols);
    let mut v_inv: Vec<Vec<BigInt>> = identity(cols);
    let nrows = a.len();
    let n = nrows.min(cols);

    // Elementary column operations, mirrored into v (as right-multiplication)
    // and v_inv (inverse op, left-multiplied conceptually; concretely we do
    // the inverse column op's row analogue on v_inv).
    macro_rules! col_swap {
        ($j1:expr, $j2:expr) => {{
            let (j1, j2) = ($j1, $j2);
            if j1 != j2 {
                for row in a.iter_mut() {
                    row.swap(j1, j2);
                }
                for row in v.iter_mut() {
                    row.swap(j1, j2);
                }
                v_inv.swap(j1, j2);
            }
        }};
    }
    macro_rules! col_addmul {
        // col j1 += k * col j2
        ($j1:expr, $j2:expr, $k:expr) => {{
            let (j1, j2) = ($j1, $j2);
            let k = $k;
            if !k.is_zero() {
                for row in a.iter_mut() {
                    let add = &k * &row[j2];
                    row[j1] += add;
                }
                for row in v.iter_mut() {
                    let add = &k * &row[j2];
                    row[j1] += add;
                }
                // inverse: row j2 of v_inv -= k * row j1
                let sub: Vec<BigInt> =
                    v_inv[j1].iter().map(|x| &k * x).collect();
                for (t, s) in v_inv[j2].iter_mut().zip(sub) {
                    *t -= s;
                }
            }
        }};
    }
    macro_rules! col_negate {
        ($j:expr) => {{
            let j = $j;
            for row in a.iter_mut() {
                row[j] = -&row[j];
            }
            for row in v.iter_mut() {
                row[j] = -&row[j];
            }
            for x in v_inv[j].iter_mut() {
                *x = -&*x;
            }
        }};
    }

    let mut t = 0usize;
    while t < n {
        // Find a nonzero pivot in the submatrix a[t.., t..].
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break; // all remaining entries zero
        };
        a.swap(t, pi);
        col_swap!(t, pj);
        'clear: loop {
            // Clear column t (row operations, untracked) and row t (tracked
            // column operations), moving any nonzero remainder into the pivot
            // slot; each pass strictly shrinks |a[t][t]|, so this terminates.
            loop {
                let mut dirty = false;
                for i in t + 1..nrows {
                    if !a[i][t].is_zero() {
                        let q = div_nearest(&a[i][t], &a[t][t]);
                        for j in t..cols {
                            let sub = &q * &a[t][j];
                            a[i][j] -= sub;
                        }
                        if !a[i][t].is_zero() {
                            a.swap(t, i);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() {
                        let q = div_nearest(&a[t][j], &a[t][t]);
                        col_addmul!(j, t, -q);
                        if !a[t][j].is_zero() {
                            col_swap!(t, j);
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    break;
                }
            }
            // Force the pivot to divide every remaining entry, so the final
            // diagonal satisfies d_1 | d_2 | ... without a separate fixup:
            // pull an offending row into row t and re-clear, which replaces
            // the pivot by a proper divisor of itself.
            for i in t + 1..nrows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        for col in t..cols {
                            let add = a[i][col].clone();
                            a[t][col] += add;
                        }
                        continue 'clear;
                    }
                }
            }
            break;
        }
        t += 1;
    }
    // Positive diagonal.
    for j in 0..n {
        if a[j][j].is_negative() {
            col_negate!(j);
        }
    }
    Snf {
        diag: (0..cols)
            .map(|j| if j < n { a[j][j].clone() } else { BigInt::zero() })
            .collect(),
        v,
        v_inv,
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Division rounded to nearest (ties toward zero), which keeps SNF pivots
/// shrinking.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(a, b);
    let two_r: BigInt = &r * BigInt::from(2);
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

/// A surjection from an ambient product of cyclic groups onto its quotient by
/// a subgroup, with the quotient itself in invariant-factor form and a
/// section for lifting cosets back to ambient representatives.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub ambient: CyclicDecomp,
    pub group: CyclicDecomp,
    /// Indices of the Smith diagonal entries kept (those > 1).
    kept: Vec<usize>,
    diag: Vec<BigInt>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

impl QuotientMap {
    /// Quotient of `ambient` by the subgroup generated by `sub_gens`.
    pub fn new(ambient: &CyclicDecomp, sub_gens: &[Vec<u128>]) -> QuotientMap {
        let r = ambient.rank();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(r + sub_gens.len());
        for (i, &c) in ambient.orders.iter().enumerate() {
            let mut row = vec![BigInt::zero(); r];
            row[i] = BigInt::from(c);
            rows.push(row);
        }
        for g in sub_gens {
            assert_eq!(g.len(), r);
            rows.push(g.iter().map(|&x| BigInt::from(x)).collect());
        }
        let s = snf(&rows, r);
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for (j, d) in s.diag.iter().enumerate() {
            assert!(!d.is_zero(), "relation lattice must have full rank");
            if *d > BigInt::one() {
                kept.push(j);
                orders.push(u128::try_from(d.clone()).expect("quotient order fits u128"));
            }
        }
        QuotientMap {
            ambient: ambient.clone(),
            group: CyclicDecomp::new(orders),
            kept,
            diag: s.diag,
            v: s.v,
            v_inv: s.v_inv,
        }
    }

    /// Image of an ambient element in quotient coordinates.
    pub fn project(&self, x: &[u128]) -> Vec<u128> {
        let r = self.ambient.rank();
        assert_eq!(x.len(), r);
        self.kept
            .iter()
            .map(|&j| {
                let mut acc = BigInt::zero();
                for i in 0..r {
                    acc += BigInt::from(x[i]) * &self.v[i][j];
                }
                let d = &self.diag[j];
                let m = num_integer::Integer::mod_floor(&acc, d);
                u128::try_from(m).expect("reduced coordinate fits u128")
            })
            .collect()
    }

    /// An ambient representative of a quotient element (a section of
    /// [`Self::project`]).
    pub fn lift(&self, t: &[u128]) -> Vec<u128> {
        let r = self.ambient.rank();
        assert_eq!(t.len(), self.kept.len());
        let mut w = vec![BigInt::zero(); r];
        for (k, &j) in self.kept.iter().enumerate() {
            w[j] = BigInt::from(t[k]);
        }
        (0..r)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..r {
                    acc += &w[j] * &self.v_inv[j][i];
                }
                let c = BigInt::from(self.ambient.orders[i]);
                let m = num_integer::Integer::mod_floor(&acc, &c);
                u128::try_from(m).expect("lifted coordinate fits u128")
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Subgroup enumeration
// ---------------------------------------------------------------------------

/// A subgroup of a product of cyclic groups, with its canonical
/// upper-triangular lattice basis (rows double as generators).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub basis: Vec<Vec<u128>>,
    pub index: u128,
}

impl Subgroup {
    /// Subgroup generated by arbitrary element vectors, stored with its
    /// canonical lattice basis and index.
    pub fn from_gens(group: &CyclicDecomp, gens: &[Vec<u128>]) -> Subgroup {
        Subgroup {
            basis: canonical_subgroup_key(group, gens),
            index: subgroup_index(group, gens),
        }
    }

    pub fn gens(&self) -> &[Vec<u128>] {
        &self.basis
    }
}

/// All subgroups of the given index, enumerated as Hermite-form lattice
/// bases between diag(c) and Z^r. Deterministic order: diagonal divisor
/// tuples ascend lexicographically, then off-diagonal entries ascend.
/// Errors if the ambient order or rank exceeds the enumeration caps.
pub fn subgroups_of_index(group: &CyclicDecomp, index: u128) -> Result<Vec<Subgroup>> {
    if group.size() > MAX_ENUMERABLE_ORDER {
        return Err(Error::GroupTooLarge(format!(
            "subgroup enumeration needs order <= 2^24, got {}",
            group.size()
        )));
    }
    if group.rank() > MAX_ENUMERABLE_RANK {
        return Err(Error::GroupTooLarge(format!(
            "subgroup enumeration needs rank <= {}, got {}",
            MAX_ENUMERABLE_RANK,
            group.rank()
        )));
    }
    if index == 0 || group.size() % index != 0 {
        return Ok(Vec::new());
    }
    let r = group.rank();
    if r == 0 {
        return Ok(if index == 1 {
            vec![Subgroup { basis: Vec::new(), index: 1 }]
        } else {
            Vec::new()
        });
    }
    let mut out = Vec::new();
    let mut diag = vec![1u128; r];
    enumerate_diagonals(group, index, 0, &mut diag, &mut out);
    Ok(out)
}

fn enumerate_diagonals(
    group: &CyclicDecomp,
    remaining: u128,
    j: usize,
    diag: &mut Vec<u128>,
    out: &mut Vec<Subgroup>,
) {
    let r = group.rank();
    if j == r {
        if remaining == 1 {
            fill_offdiagonals(group, diag, out);
        }
        return;
    }
    let mut divs: Vec<u128> = Vec::new();
    let g = arith::gcd(remaining, group.orders[j]);
    let mut d = 1u128;
    while d * d <= g {
        if g % d == 0 {
            divs.push(d);
            if d != g / d {
                divs.push(g / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    for d in divs {
        diag[j] = d;
        enumerate_diagonals(group, remaining / d, j + 1, diag, out);
    }
    diag[j] = 1;
}

fn fill_offdiagonals(group: &CyclicDecomp, diag: &[u128], out: &mut Vec<Subgroup>) {
    let r = group.rank();
    // Free positions (i, j), i < j, each ranging over [0, diag[j]).
    let free: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| ((i + 1)..r).map(move |j| (i, j)))
        .filter(|&(_, j)| diag[j] > 1)
        .collect();
    let mut vals = vec![0u128; free.len()];
    loop {
        let mut basis: Vec<Vec<u128>> = (0..r)
            .map(|i| {
                let mut row = vec![0u128; r];
                row[i] = diag[i];
                row
            })
            .collect();
        for (k, &(i, j)) in free.iter().enumerate() {
            basis[i][j] = vals[k];
        }
        if contains_relation_lattice(&basis, &group.orders) {
            let index = diag.iter().product();
            out.push(Subgroup { basis, index });
        }
        // Odometer over the free entries, last position fastest.
        let mut k = free.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            vals[k] += 1;
            if vals[k] < diag[free[k].1] {
                break;
            }
            vals[k] = 0;
        }
    }
}

/// Does the lattice spanned by the upper-triangular `basis` contain diag(c)?
/// Checked by exact back-substitution of each c_k * e_k.
fn contains_relation_lattice(basis: &[Vec<u128>], orders: &[u128]) -> bool {
    let r = orders.len();
    for k in 0..r {
        // Solve sum_i alpha_i * basis[i] = c_k * e_k, ascending coordinates.
        let mut alpha = vec![0i128; r];
        for j in 0..r {
            let target: i128 = if j == k { orders[k] as i128 } else { 0 };
            let mut acc: i128 = 0;
            for i in 0..j {
                acc += alpha[i] * basis[i][j] as i128;
            }
            let num = target - acc;
            let den = basis[j][j] as i128;
            if num % den != 0 {
                return false;
            }
            alpha[j] = num / den;
        }
    }
    true
}

/// Reference enumeration of every subgroup by closure: breadth-first over
/// element sets. Exponential, strictly an oracle for small groups.
pub fn subgroups_by_closure(group: &CyclicDecomp) -> Vec<Vec<Vec<u128>>> {
    assert!(group.size() <= 1 << 12, "closure enumeration is for small groups only");
    let elements: Vec<Vec<u128>> = group.elements().collect();
    let trivial = vec![group.zero()];
    let mut seen: std::collections::BTreeSet<Vec<Vec<u128>>> = std::collections::BTreeSet::new();
    seen.insert(trivial.clone());
    let mut queue = vec![trivial];
    while let Some(sub) = queue.pop() {
        for g in &elements {
            if sub.binary_search(g).is_ok() {
                continue;
            }
            let bigger = closure(group, &sub, g);
            if seen.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    seen.into_iter().collect()
}

fn closure(group: &CyclicDecomp, sub: &[Vec<u128>], extra: &[u128]) -> Vec<Vec<u128>> {
    let mut set: std::collections::BTreeSet<Vec<u128>> = sub.iter().cloned().collect();
    let mut frontier = vec![group.reduce(extra)];
    while let Some(e) = frontier.pop() {
        if !set.insert(e.clone()) {
            continue;
        }
        let members: Vec<Vec<u128>> = set.iter().cloned().collect();
        for m in members {
            let s = group.add(&e, &m);
            if !set.contains(&s) {
                frontier.push(s);
            }
        }
    }
    set.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

/// Characters of the group, as exponent tuples: the character `chi` sends the
/// element x to exp(2*pi*i/L * sum_i chi_i * x_i * (L/c_i)) where L is the
/// group exponent. Iteration order is the mixed-radix element order.
pub fn characters(group: &CyclicDecomp) -> impl Iterator<Item = Vec<u128>> + '_ {
    group.elements()
}

/// Group exponent (lcm of the cyclic orders).
pub fn exponent(group: &CyclicDecomp) -> u128 {
    group.orders.iter().copied().fold(1u128, arith::lcm)
}

/// Is the character trivial on the given element?
pub fn char_annihilates(group: &CyclicDecomp, chi: &[u128], x: &[u128]) -> bool {
    let l = exponent(group);
    let mut acc = 0u128;
    for ((&t, &v), &c) in chi.iter().zip(x).zip(&group.orders) {
        let w = arith::mul_mod(t % l, arith::mul_mod(v % l, l / c, l), l);
        acc = (acc + w) % l;
    }
    acc == 0
}

/// Order of the character (as an element of the dual group, which is
/// isomorphic to the group itself).
pub fn char_order(group: &CyclicDecomp, chi: &[u128]) -> u128 {
    group.order_of(chi)
}
