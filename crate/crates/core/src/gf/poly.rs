use rand::Rng;

use super::field::FieldPrime;
use super::matrix::Matrix;

/// A polynomial over `F_p`, coefficients from the constant term up, with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Poly {
    field: FieldPrime,
    coeffs: Vec<u8>,
}

impl Poly {
    pub fn new(field: FieldPrime, mut coeffs: Vec<u8>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldPrime) -> Self {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: FieldPrime) -> Self {
        Poly::new(field, vec![1])
    }

    /// `x`.
    pub fn x(field: FieldPrime) -> Self {
        Poly::new(field, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn lead(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead());
        self.scale(inv)
    }

    pub fn scale(&self, c: u8) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    o.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(self.field.neg(1)))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0u8; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.field;
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut q = vec![0u8; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv);
            q[i] = c;
            if c != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    r[i + j] = f.sub(r[i + j], f.mul(c, b));
                }
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, (i % f.p() as usize) as u8))
            .collect();
        Poly::new(f, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Evaluates the polynomial at a square matrix (Horner).
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        let id = Matrix::identity(self.field, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&id.scale(c));
        }
        acc
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Poly {
        let p = self.field.p() as usize;
        let c = self.coeffs.iter().step_by(p).copied().collect();
        // coefficients are fixed by Frobenius on F_p
        Poly::new(self.field, c)
    }
}

/// Characteristic polynomial `det(xI - a)` via the Hessenberg reduction.
pub fn char_poly(a: &Matrix) -> Poly {
    let f = a.field();
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut h = a.clone();
    // reduce to upper Hessenberg form by similarity
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
            continue;
        };
        if i != m {
            for j in 0..n {
                let (x, y) = (h.get(i, j), h.get(m, j));
                h.set(i, j, y);
                h.set(m, j, x);
            }
            for j in 0..n {
                let (x, y) = (h.get(j, i), h.get(j, m));
                h.set(j, i, y);
                h.set(j, m, x);
            }
        }
        let inv = f.inv(h.get(m, m - 1));
        for i in (m + 1)..n {
            let u = f.mul(h.get(i, m - 1), inv);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let v = f.sub(h.get(i, j), f.mul(u, h.get(m, j)));
                h.set(i, j, v);
            }
            for j in 0..n {
                let v = f.add(h.get(j, m), f.mul(u, h.get(j, i)));
                h.set(j, m, v);
            }
        }
    }
    // recurrence on leading principal minors
    let mut polys: Vec<Poly> = vec![Poly::one(f)];
    for k in 0..n {
        let xk = Poly::new(f, vec![f.neg(h.get(k, k)), 1]);
        let mut pk = xk.mul(&polys[k]);
        let mut prod = 1u8;
        for i in (0..k).rev() {
            prod = f.mul(prod, h.get(i + 1, i));
            let c = f.mul(prod, h.get(i, k));
            if c != 0 {
                pk = pk.sub(&polys[i].scale(c));
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

/// Monic irreducible factors with multiplicity, sorted by (degree, coefficients).
pub fn factor<R: Rng>(g: &Poly, rng: &mut R) -> Vec<(Poly, usize)> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    if g.degree().unwrap_or(0) == 0 {
        return out;
    }
    for (sf, mult) in square_free(&g.monic()) {
        for (d, part) in distinct_degree(&sf) {
            for irr in equal_degree(&part, d, rng) {
                match out.iter_mut().find(|(q, _)| *q == irr) {
                    Some(e) => e.1 += mult,
                    None => out.push((irr, mult)),
                }
            }
        }
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0.coeffs).cmp(&(b.0.deg(), &b.0.coeffs)));
    out
}

fn square_free(g: &Poly) -> Vec<(Poly, usize)> {
    let f = g.field;
    let p = f.p() as usize;
    let mut out = Vec::new();
    let d = g.derivative();
    if d.is_zero() {
        for (q, m) in square_free(&g.pth_root()) {
            out.push((q, m * p));
        }
        return out;
    }
    let mut c = g.gcd(&d);
    let mut w = g.div_rem(&c).0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.deg() > 0 {
        for (q, m) in square_free(&c.pth_root()) {
            out.push((q, m * p));
        }
    }
    out
}

fn distinct_degree(g: &Poly) -> Vec<(usize, Poly)> {
    let f = g.field;
    let q = f.order() as u128;
    let mut out = Vec::new();
    let mut rest = g.clone();
    let x = Poly::x(f);
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &rest);
        let part = rest.gcd(&h.sub(&x));
        if part.deg() > 0 {
            out.push((d, part.clone()));
            rest = rest.div_rem(&part).0;
            h = h.rem(&rest);
        }
    }
    if rest.deg() > 0 {
        out.push((rest.deg(), rest.monic()));
    }
    out
}

fn equal_degree<R: Rng>(g: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let f = g.field;
    let n = g.deg();
    if n == d {
        return vec![g.monic()];
    }
    let p = f.p() as u128;
    loop {
        let coeffs: Vec<u8> = (0..n).map(|_| rng.gen_range(0..f.p())).collect();
        let a = Poly::new(f, coeffs);
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(g);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(g);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (p.pow(d as u32) - 1) / 2;
            a.pow_mod(e, g).sub(&Poly::one(f))
        };
        let h = g.gcd(&b);
        if h.deg() > 0 && h.deg() < n {
            let other = g.div_rem(&h).0;
            let mut out = equal_degree(&h, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}
