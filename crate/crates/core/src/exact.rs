//! Exact rational arithmetic and linear algebra.
//!
//! `Rat` keeps small values in machine words and only spills to bignums when
//! a numerator or denominator leaves the i64 range. `RatMatrix` is the dense
//! row-major matrix used for echelon forms, kernels and preimages; `LinMap` is
//! a column-sparse linear map used for the (often very sparse) structure maps
//! on tensor powers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rat {
    pub fn zero() -> Rat {
        Rat::Small(0, 1)
    }

    pub fn one() -> Rat {
        Rat::Small(1, 1)
    }

    pub fn int(n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    /// `n/d`; panics on a zero denominator.
    pub fn frac(n: i64, d: i64) -> Rat {
        assert!(d != 0, "zero denominator");
        Rat::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Rat {
        if n == 0 {
            return Rat::zero();
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::Small(a, b),
            _ => Rat::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        // BigRational::new already reduces; just try to shrink.
        if let (Some(a), Some(b)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if a == 0 {
                return Rat::zero();
            }
            return Rat::Small(a, b);
        }
        Rat::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn from_bigint_pair(n: BigInt, d: BigInt) -> Option<Rat> {
        if d.is_zero() {
            return None;
        }
        Some(Rat::from_big(BigRational::new(n, d)))
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rat::Small(n, _) => BigInt::from(*n),
            Rat::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rat::Small(_, d) => BigInt::from(*d),
            Rat::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rat::Small(n, _) => n.signum() as i32,
            Rat::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn inv(&self) -> Rat {
        match self {
            Rat::Small(0, _) => panic!("division by zero"),
            Rat::Small(n, d) => Rat::from_i128(*d as i128, *n as i128),
            Rat::Big(b) => Rat::from_big(b.recip()),
        }
    }

    /// The "p/q" text form (always with a denominator).
    pub fn to_pq(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    /// Parses "p/q", "p" or "-p/q".
    pub fn parse(s: &str) -> Option<Rat> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        Rat::from_bigint_pair(n, d)
    }

    pub fn pow_sign(k: usize) -> Rat {
        if k % 2 == 0 {
            Rat::one()
        } else {
            Rat::int(-1)
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{}", n),
            Rat::Small(n, d) => write!(f, "{}/{}", n, d),
            Rat::Big(b) => write!(f, "{}", b),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128))),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if b == d {
                    Rat::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Rat::from_i128(
                        (*a as i128) * (*d as i128) + (*c as i128) * (*b as i128),
                        (*b as i128) * (*d as i128),
                    )
                }
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, o: &Rat) -> Rat {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => Rat::zero(),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Rat::from_i128((*a as i128) * (*c as i128), (*b as i128) * (*d as i128))
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, o: &Rat) -> Rat {
        self * &o.inv()
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            // -i64::MIN does not fit; go through i128
            Rat::Small(n, d) => Rat::from_i128(-(*n as i128), *d as i128),
            Rat::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $f(self, o: Rat) -> Rat {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $f(self, o: &Rat) -> Rat {
                (&self).$f(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, o: &Rat) {
        *self = &*self + o;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, o: &Rat) {
        *self = &*self - o;
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat::one()
    }
}

pub type RatVector = Vec<Rat>;

pub fn zero_vec(n: usize) -> RatVector {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> RatVector {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub echelon: RatMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().cloned());
        }
        RatMatrix { rows: r, cols: c, entries }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect();
        Self::from_rows(&v)
    }

    pub fn from_cols(cols: &[Vec<Rat>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> RatVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> RatVector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += &(a * b);
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn kernel_basis(&self) -> Vec<RatVector> {
        kernel_basis(self)
    }

    pub fn kron(&self, o: &RatMatrix) -> RatMatrix {
        kron(self, o)
    }

    pub fn to_linmap(&self) -> LinMap {
        LinMap::from_dense(self)
    }
}

/// Reduced row-echelon form by Gauss-Jordan elimination.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        if p != r {
            for j in 0..a.cols {
                a.entries.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).inv();
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..a.cols {
                let rv = a.get(r, j);
                if rv.is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &(&f * rv);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { echelon: a, rank: pivots.len(), pivot_cols: pivots }
}

/// Kernel basis: one vector per free column (increasing), free coordinate 1.
pub fn kernel_basis(m: &RatMatrix) -> Vec<RatVector> {
    let rr = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &rr.pivot_cols {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec(m.cols);
        v[f] = Rat::one();
        for (i, &p) in rr.pivot_cols.iter().enumerate() {
            v[p] = -rr.echelon.get(i, f);
        }
        out.push(v);
    }
    out
}

/// One solution of m·x = b with free variables set to zero, or None.
pub fn preimage(m: &RatMatrix, b: &[Rat]) -> Option<RatVector> {
    assert_eq!(b.len(), m.rows);
    let mut aug = RatMatrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, b[i].clone());
    }
    let rr = rref(&aug);
    if rr.pivot_cols.last() == Some(&m.cols) {
        return None;
    }
    let mut x = zero_vec(m.cols);
    for (i, &p) in rr.pivot_cols.iter().enumerate() {
        x[p] = rr.echelon.get(i, m.cols).clone();
    }
    Some(x)
}

/// Kronecker product, left factor high-order.
pub fn kron(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let mut out = RatMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.set(i * b.rows + k, j * b.cols + l, x * y);
                    }
                }
            }
        }
    }
    out
}

pub type SpVec = Vec<(usize, Rat)>;

/// Scratch accumulator for sparse sums.
pub struct Accum {
    vals: Vec<Rat>,
    touched: Vec<usize>,
    flag: Vec<bool>,
}

impl Accum {
    pub fn new(n: usize) -> Self {
        Accum { vals: vec![Rat::zero(); n], touched: Vec::new(), flag: vec![false; n] }
    }

    #[inline]
    pub fn add(&mut self, i: usize, v: &Rat) {
        if v.is_zero() {
            return;
        }
        if !self.flag[i] {
            self.flag[i] = true;
            self.touched.push(i);
            self.vals[i] = v.clone();
        } else {
            self.vals[i] += v;
        }
    }

    pub fn add_scaled(&mut self, col: &[(usize, Rat)], s: &Rat) {
        if s.is_zero() {
            return;
        }
        if s.is_one() {
            for (i, v) in col {
                self.add(*i, v);
            }
        } else {
            for (i, v) in col {
                let p = v * s;
                self.add(*i, &p);
            }
        }
    }

    /// Drains into a sorted sparse vector and resets.
    pub fn take(&mut self) -> SpVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.flag[i] = false;
            let v = std::mem::take(&mut self.vals[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// Column-sparse linear map `rows × cols`; column j is the image of basis vector j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinMap {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SpVec>,
}

impl LinMap {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LinMap { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        LinMap { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, Rat::one())]).collect() }
    }

    pub fn scalar(n: usize, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(n, n);
        }
        LinMap { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, s.clone())]).collect() }
    }

    pub fn from_columns(rows: usize, columns: Vec<SpVec>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|e| e.0);
                let mut out: SpVec = Vec::with_capacity(c.len());
                for (i, v) in c {
                    assert!(i < rows, "row index out of range");
                    match out.last_mut() {
                        Some((j, w)) if *j == i => *w += &v,
                        _ => out.push((i, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect();
        LinMap { rows, cols, columns }
    }

    pub fn from_dense_cols(rows: usize, cols: &[RatVector]) -> Self {
        LinMap::from_columns(
            rows,
            cols.iter().map(|c| c.iter().enumerate().filter(|e| !e.1.is_zero()).map(|(i, v)| (i, v.clone())).collect()).collect(),
        )
    }

    pub fn from_dense(m: &RatMatrix) -> Self {
        let mut columns = vec![Vec::new(); m.cols];
        for i in 0..m.rows {
            for j in 0..m.cols {
                let v = m.get(i, j);
                if !v.is_zero() {
                    columns[j].push((i, v.clone()));
                }
            }
        }
        LinMap { rows: m.rows, cols: m.cols, columns }
    }

    pub fn to_dense(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows, self.cols);
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn dense_col(&self, j: usize) -> RatVector {
        let mut v = zero_vec(self.rows);
        for (i, x) in &self.columns[j] {
            v[*i] = x.clone();
        }
        v
    }

    pub fn entry(&self, i: usize, j: usize) -> Rat {
        match self.columns[j].binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn apply_sparse(&self, v: &[(usize, Rat)]) -> SpVec {
        let mut acc = Accum::new(self.rows);
        for (j, s) in v {
            acc.add_scaled(&self.columns[*j], s);
        }
        acc.take()
    }

    pub fn apply(&self, v: &[Rat]) -> RatVector {
        assert_eq!(v.len(), self.cols);
        let sp: SpVec = v.iter().enumerate().filter(|e| !e.1.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        let mut out = zero_vec(self.rows);
        for (i, x) in self.apply_sparse(&sp) {
            out[i] = x;
        }
        out
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &LinMap) -> LinMap {
        assert_eq!(self.cols, rhs.rows, "compose shape mismatch: {}x{} after {}x{}", self.rows, self.cols, rhs.rows, rhs.cols);
        let mut acc = Accum::new(self.rows);
        let columns = rhs
            .columns
            .iter()
            .map(|c| {
                for (k, s) in c {
                    acc.add_scaled(&self.columns[*k], s);
                }
                acc.take()
            })
            .collect();
        LinMap { rows: self.rows, cols: rhs.cols, columns }
    }

    pub fn add(&self, o: &LinMap) -> LinMap {
        self.lincomb(&Rat::one(), o, &Rat::one())
    }

    pub fn sub(&self, o: &LinMap) -> LinMap {
        self.lincomb(&Rat::one(), o, &Rat::int(-1))
    }

    /// `a·self + b·o`.
    pub fn lincomb(&self, a: &Rat, o: &LinMap, b: &Rat) -> LinMap {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "lincomb shape mismatch");
        let mut acc = Accum::new(self.rows);
        let columns = self
            .columns
            .iter()
            .zip(&o.columns)
            .map(|(x, y)| {
                acc.add_scaled(x, a);
                acc.add_scaled(y, b);
                acc.take()
            })
            .collect();
        LinMap { rows: self.rows, cols: self.cols, columns }
    }

    pub fn scale(&self, s: &Rat) -> LinMap {
        if s.is_zero() {
            return LinMap::zero(self.rows, self.cols);
        }
        LinMap {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|c| c.iter().map(|(i, v)| (*i, v * s)).collect()).collect(),
        }
    }

    pub fn neg(&self) -> LinMap {
        self.scale(&Rat::int(-1))
    }

    pub fn transpose(&self) -> LinMap {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                columns[*i].push((j, v.clone()));
            }
        }
        LinMap { rows: self.cols, cols: self.rows, columns }
    }

    /// Kronecker product, left factor high-order.
    pub fn kron(&self, o: &LinMap) -> LinMap {
        let mut columns = Vec::with_capacity(self.cols * o.cols);
        for a in &self.columns {
            for b in &o.columns {
                let mut c = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (k, y) in b {
                        c.push((i * o.rows + k, x * y));
                    }
                }
                columns.push(c);
            }
        }
        LinMap { rows: self.rows * o.rows, cols: self.cols * o.cols, columns }
    }

    /// Block columns `[self | o]`.
    pub fn hstack(&self, o: &LinMap) -> LinMap {
        assert_eq!(self.rows, o.rows);
        let mut columns = self.columns.clone();
        columns.extend(o.columns.iter().cloned());
        LinMap { rows: self.rows, cols: self.cols + o.cols, columns }
    }

    /// Block rows `[self; o]`.
    pub fn vstack(&self, o: &LinMap) -> LinMap {
        assert_eq!(self.cols, o.cols);
        let columns = self
            .columns
            .iter()
            .zip(&o.columns)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|(i, v)| (i + self.rows, v.clone())));
                c
            })
            .collect();
        LinMap { rows: self.rows + o.rows, cols: self.cols, columns }
    }

    pub fn vstack_all(rows: usize, maps: &[LinMap]) -> LinMap {
        let mut out = LinMap::zero(0, rows);
        for m in maps {
            out = out.vstack(m);
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> LinMap {
        LinMap { rows: self.rows, cols: idx.len(), columns: idx.iter().map(|&j| self.columns[j].clone()).collect() }
    }

    pub fn rank(&self) -> usize {
        let mut rs = RowSpace::new(self.rows);
        for c in &self.columns {
            rs.insert_sparse(c);
        }
        rs.rank()
    }

    /// Kernel basis in the same canonical form as [`kernel_basis`].
    pub fn kernel(&self) -> Vec<RatVector> {
        let t = self.transpose();
        let mut rs = RowSpace::new(self.cols);
        for c in &t.columns {
            rs.insert_sparse(c);
        }
        rs.kernel()
    }

    /// Canonical basis (rref rows) of the column space.
    pub fn image_basis(&self) -> Vec<RatVector> {
        let mut rs = RowSpace::new(self.rows);
        for c in &self.columns {
            rs.insert_sparse(c);
        }
        rs.basis()
    }

    pub fn preimage(&self, b: &[Rat]) -> Option<RatVector> {
        preimage(&self.to_dense(), b)
    }

    /// Two-sided inverse of a square map, if it is invertible.
    pub fn inverse(&self) -> Option<LinMap> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let a = self.to_dense();
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, a.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let rr = rref(&aug);
        if rr.pivot_cols.iter().take(n).enumerate().any(|(i, &p)| p != i) || rr.rank < n {
            return None;
        }
        let cols: Vec<RatVector> = (0..n).map(|j| (0..n).map(|i| rr.echelon.get(i, n + j).clone()).collect()).collect();
        Some(LinMap::from_dense_cols(n, &cols))
    }

    /// First column where the two maps differ, with the differing entries.
    pub fn first_difference(&self, o: &LinMap) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "comparing maps of different shapes");
        for j in 0..self.cols {
            if self.columns[j] != o.columns[j] {
                let d = o.columns[j].clone();
                let diff = self.apply_sparse(&[(j, Rat::one())]);
                let mut acc = Accum::new(self.rows);
                acc.add_scaled(&diff, &Rat::one());
                acc.add_scaled(&d, &Rat::int(-1));
                let r = acc.take();
                return Some((r.first().map(|e| e.0).unwrap_or(0), j));
            }
        }
        None
    }
}

/// Incrementally maintained reduced row-echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct RowSpace {
    pub ncols: usize,
    rows: Vec<(usize, RatVector)>,
    pivot_of: Vec<Option<usize>>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        RowSpace { ncols, rows: Vec::new(), pivot_of: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, r: &mut RatVector) {
        for (p, row) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    r[j] -= &(&f * x);
                }
            }
        }
    }

    /// Returns true if `v` was independent of the current rows.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = v.to_vec();
        self.reduce(&mut r);
        let Some(q) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[q].inv();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    row[j] -= &(&f * x);
                }
            }
        }
        self.pivot_of[q] = Some(self.rows.len());
        self.rows.push((q, r));
        true
    }

    pub fn insert_sparse(&mut self, v: &[(usize, Rat)]) -> bool {
        if v.is_empty() {
            return false;
        }
        let mut d = zero_vec(self.ncols);
        for (i, x) in v {
            d[*i] = x.clone();
        }
        self.insert(&d)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut r = v.to_vec();
        self.reduce(&mut r);
        is_zero_vec(&r)
    }

    /// Reduces `v` modulo the row space (normal form with zero pivot coordinates).
    pub fn normal_form(&self, v: &[Rat]) -> RatVector {
        let mut r = v.to_vec();
        self.reduce(&mut r);
        r
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r.0).collect();
        p.sort_unstable();
        p
    }

    /// Rows sorted by pivot column: the canonical rref basis.
    pub fn basis(&self) -> Vec<RatVector> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r.0);
        rows.into_iter().map(|r| r.1).collect()
    }

    pub fn basis_with_pivots(&self) -> Vec<(usize, RatVector)> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r.0);
        rows
    }

    pub fn kernel(&self) -> Vec<RatVector> {
        let rows = self.basis_with_pivots();
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivot_of[f].is_some() {
                continue;
            }
            let mut v = zero_vec(self.ncols);
            v[f] = Rat::one();
            for (p, row) in &rows {
                v[*p] = -&row[f];
            }
            out.push(v);
        }
        out
    }
}
