//! Linear algebra over prime fields for elementary abelian groups: coordinates,
//! enumeration of `GL(k, q)`, and conjugacy class representatives of matrices
//! of bounded order.

use std::sync::Arc;

use crate::group::TableGroup;

/// Coordinates of an elementary abelian group with respect to a basis.
#[derive(Clone, Debug)]
pub struct Coordinates {
    pub q: u32,
    pub k: usize,
    pub basis: Vec<u32>,
    /// Coordinate code `sum c_i q^i` of every element.
    pub code_of: Vec<u32>,
    /// Element index of every code.
    pub elem_of: Vec<u32>,
}

/// A prime `q` and a basis when `t` is elementary abelian of exponent `q` (and nontrivial).
pub fn elementary_abelian_basis(t: &TableGroup) -> Option<(u32, Vec<u32>)> {
    let n = t.order();
    if n < 2 || !t.is_abelian() {
        return None;
    }
    let q = t.element_order(1);
    if !is_prime(q) || (1..n as u32).any(|x| t.element_order(x) != q) {
        return None;
    }
    let mut basis = Vec::new();
    let mut span = vec![false; n];
    span[0] = true;
    let mut size = 1;
    for x in 1..n as u32 {
        if span[x as usize] {
            continue;
        }
        basis.push(x);
        let old: Vec<u32> = (0..n as u32).filter(|&y| span[y as usize]).collect();
        let mut p = x;
        for _ in 1..q {
            for &y in &old {
                span[t.mul(y, p) as usize] = true;
            }
            p = t.mul(p, x);
        }
        size *= q as usize;
        if size == n {
            break;
        }
    }
    Some((q, basis))
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl Coordinates {
    pub fn new(t: &TableGroup, q: u32, basis: Vec<u32>) -> Coordinates {
        let n = t.order();
        let k = basis.len();
        let mut elem_of = vec![0u32; n];
        let mut code_of = vec![0u32; n];
        // elem_of[code] built digit by digit: code = d + q * rest.
        let mut pw = 1usize;
        for &b in &basis {
            for code in pw..pw * q as usize {
                let prev = elem_of[code - pw];
                elem_of[code] = t.mul(prev, b);
            }
            pw *= q as usize;
        }
        for (code, &e) in elem_of.iter().enumerate() {
            code_of[e as usize] = code as u32;
        }
        Coordinates { q, k, basis, code_of, elem_of }
    }

    pub fn digits(&self, mut code: u32) -> Vec<u32> {
        (0..self.k)
            .map(|_| {
                let d = code % self.q;
                code /= self.q;
                d
            })
            .collect()
    }

    pub fn code(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.q + d)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.q).collect();
        self.code(&s)
    }

    /// Element map of the linear map sending basis vector `i` to the vector `cols[i]`.
    pub fn element_map(&self, cols: &[u32]) -> Vec<u32> {
        let size = self.elem_of.len();
        let mut img = vec![0u32; size];
        let mut pw = 1usize;
        for col in cols {
            for code in pw..pw * self.q as usize {
                img[code] = self.add(img[code - pw], *col);
            }
            pw *= self.q as usize;
        }
        let mut map = vec![0u32; size];
        for code in 0..size {
            map[self.elem_of[code] as usize] = self.elem_of[img[code] as usize];
        }
        map
    }

    /// Element map of a matrix given row-major.
    pub fn matrix_map(&self, m: &Matrix) -> Vec<u32> {
        let cols: Vec<u32> = (0..self.k).map(|j| self.code(&(0..self.k).map(|i| m.get(i, j)).collect::<Vec<_>>())).collect();
        self.element_map(&cols)
    }
}

/// Iterator over all of `GL(k, q)` as element maps, in lexicographic order of columns.
pub struct GlIter {
    coords: Coordinates,
    size: usize,
    cols: Vec<u32>,
    spans: Vec<Vec<bool>>,
    next_cand: Vec<u32>,
    level: usize,
    started: bool,
    done: bool,
}

impl GlIter {
    pub fn new(t: Arc<TableGroup>, q: u32, basis: Vec<u32>) -> GlIter {
        let coords = Coordinates::new(&t, q, basis);
        let size = coords.elem_of.len();
        let k = coords.k;
        let mut span0 = vec![false; size];
        span0[0] = true;
        GlIter {
            coords,
            size,
            cols: vec![0; k],
            spans: vec![span0],
            next_cand: vec![1; k],
            level: 0,
            started: false,
            done: false,
        }
    }

    fn extend_span(&self, span: &[bool], v: u32) -> Vec<bool> {
        let mut out = span.to_vec();
        let members: Vec<u32> = (0..self.size as u32).filter(|&c| span[c as usize]).collect();
        let mut m = v;
        for _ in 1..self.coords.q {
            for &s in &members {
                out[self.coords.add(s, m) as usize] = true;
            }
            m = self.coords.add(m, v);
        }
        out
    }
}

impl Iterator for GlIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let k = self.coords.k;
        if self.done {
            return None;
        }
        if self.started {
            self.level = k - 1;
            self.spans.truncate(k);
        }
        self.started = true;
        loop {
            let lvl = self.level;
            let mut c = self.next_cand[lvl];
            while (c as usize) < self.size && self.spans[lvl][c as usize] {
                c += 1;
            }
            if c as usize >= self.size {
                self.next_cand[lvl] = 1;
                if lvl == 0 {
                    self.done = true;
                    return None;
                }
                self.level -= 1;
                self.spans.truncate(self.level + 1);
                continue;
            }
            self.next_cand[lvl] = c + 1;
            self.cols[lvl] = c;
            if lvl + 1 == k {
                return Some(self.coords.element_map(&self.cols));
            }
            let s = self.extend_span(&self.spans[lvl], c);
            self.spans.push(s);
            self.level += 1;
        }
    }
}

/// `|GL(k, q)|`.
pub fn gl_order(k: usize, q: u64) -> u64 {
    let qk = q.pow(k as u32);
    (0..k as u32).map(|i| qk - q.pow(i)).product()
}

/// Dense square matrix over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub q: u32,
    pub k: usize,
    pub rows: Vec<u32>,
}

impl Matrix {
    pub fn identity(q: u32, k: usize) -> Matrix {
        let mut rows = vec![0; k * k];
        for i in 0..k {
            rows[i * k + i] = 1;
        }
        Matrix { q, k, rows }
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i * self.k + j]
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let k = self.k;
        let mut rows = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let s: u32 = (0..k).map(|l| self.get(i, l) * o.get(l, j)).sum();
                rows[i * k + j] = s % self.q;
            }
        }
        Matrix { q: self.q, k, rows }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        (0..e).fold(Matrix::identity(self.q, self.k), |acc, _| acc.mul(self))
    }

    /// Block diagonal sum.
    pub fn block_diag(blocks: &[Matrix], q: u32) -> Matrix {
        let k: usize = blocks.iter().map(|b| b.k).sum();
        let mut rows = vec![0; k * k];
        let mut off = 0;
        for b in blocks {
            for i in 0..b.k {
                for j in 0..b.k {
                    rows[(off + i) * k + off + j] = b.get(i, j);
                }
            }
            off += b.k;
        }
        Matrix { q, k, rows }
    }

    /// Companion matrix of a monic polynomial given by its coefficients `c_0..c_{d-1}`.
    pub fn companion(q: u32, coeffs: &[u32]) -> Matrix {
        let d = coeffs.len();
        let mut rows = vec![0; d * d];
        for i in 1..d {
            rows[i * d + i - 1] = 1;
        }
        for (i, &c) in coeffs.iter().enumerate() {
            rows[i * d + d - 1] = (q - c % q) % q;
        }
        Matrix { q, k: d, rows }
    }
}

/// Polynomials over `F_q` as coefficient vectors, lowest degree first, trimmed.
type Poly = Vec<u32>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn poly_mul(a: &Poly, b: &Poly, q: u32) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo monic `b`.
fn poly_rem(a: &Poly, b: &Poly, q: u32) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    while r.len() > db && r != [0] {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + q - lead * c % q) % q;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn monic_polys(q: u32, d: usize) -> Vec<Poly> {
    let count = (q as usize).pow(d as u32);
    (0..count)
        .map(|mut c| {
            let mut p: Poly = (0..d)
                .map(|_| {
                    let x = (c % q as usize) as u32;
                    c /= q as usize;
                    x
                })
                .collect();
            p.push(1);
            p
        })
        .collect()
}

fn is_irreducible(f: &Poly, q: u32) -> bool {
    let d = f.len() - 1;
    (1..=d / 2).all(|e| monic_polys(q, e).iter().all(|g| poly_rem(f, g, q) != vec![0]))
}

/// Conjugacy class representatives of matrices `A` in `GL(k, q)` with `A^m = 1`.
/// Classes correspond to multisets of elementary divisors `f^j` dividing `x^m - 1`.
pub fn class_reps_of_order_dividing(q: u32, k: usize, m: u32) -> Vec<Matrix> {
    let mut target: Poly = vec![0; m as usize + 1];
    target[0] = q - 1;
    target[m as usize] = 1;
    // Elementary divisors: powers f^j of irreducible monic f dividing x^m - 1.
    let mut divisors: Vec<Poly> = Vec::new();
    for d in 1..=k {
        for f in monic_polys(q, d) {
            if f[0] == 0 || !is_irreducible(&f, q) {
                continue;
            }
            let mut pw = f.clone();
            while pw.len() - 1 <= k && poly_rem(&target, &pw, q) == vec![0] {
                divisors.push(pw.clone());
                pw = poly_mul(&pw, &f, q);
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    multisets(&divisors, 0, k, &mut chosen, &mut |sel: &[usize]| {
        let blocks: Vec<Matrix> = sel.iter().map(|&i| Matrix::companion(q, &divisors[i][..divisors[i].len() - 1])).collect();
        out.push(Matrix::block_diag(&blocks, q));
    });
    out
}

fn multisets(items: &[Poly], start: usize, remaining: usize, chosen: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if remaining == 0 {
        emit(chosen);
        return;
    }
    for i in start..items.len() {
        let d = items[i].len() - 1;
        if d <= remaining {
            chosen.push(i);
            multisets(items, i, remaining - d, chosen, emit);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(3, 2), 168);
        assert_eq!(gl_order(2, 3), 48);
        assert_eq!(gl_order(5, 2), 9_999_360);
    }

    #[test]
    fn involution_classes_in_gl_n_2() {
        // Involutions and the identity in GL(k, 2) are classified by the number of 2x2 Jordan blocks.
        for k in 1..=5 {
            assert_eq!(class_reps_of_order_dividing(2, k, 2).len(), k / 2 + 1);
        }
    }

    #[test]
    fn order_three_classes_in_gl_4_2() {
        // x^3 - 1 = (x + 1)(x^2 + x + 1) over F_2; degree-4 combinations: 1^4, 1^2 2, 2 2.
        let reps = class_reps_of_order_dividing(2, 4, 3);
        assert_eq!(reps.len(), 3);
        for r in reps {
            assert_eq!(r.pow(3), Matrix::identity(2, 4));
        }
    }

    #[test]
    fn unipotent_classes_in_gl_3_3() {
        // Jordan types for eigenvalue 1 with blocks up to size 3: partitions of 3.
        let reps = class_reps_of_order_dividing(3, 3, 3);
        assert_eq!(reps.len(), 3);
    }
}
