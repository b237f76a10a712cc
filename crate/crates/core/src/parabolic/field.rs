//! Finite fields `F_q`, `q = p^k`, and the group `GL_2(F_q)`.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// `F_q` with elements `0..q`: the base-`p` digits of an element are the
/// coefficients of a polynomial reduced modulo a fixed irreducible of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    /// Lower coefficients of the monic modulus, `x^k = -Σ modulus[i] x^i`.
    modulus: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Polynomials over `F_p` as coefficient vectors, lowest degree first.
fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while a.len() > db {
        let top = *a.last().expect("nonempty");
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = a.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p * p - f * c % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn pow_mod(mut b: u32, mut e: u32, m: u32) -> u32 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn digits(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

/// The first monic irreducible of degree `k` in the order of its lower coefficients.
fn irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = p.pow(k);
    'candidates: for low in 0..count {
        let mut f = digits(low, p, k as usize);
        f.push(1);
        for deg in 1..=k / 2 {
            for g_low in 0..p.pow(deg) {
                let mut g = digits(g_low, p, deg as usize);
                g.push(1);
                if poly_rem(f.clone(), &g, p).iter().all(|&c| c == 0) {
                    continue 'candidates;
                }
            }
        }
        return f[..k as usize].to_vec();
    }
    unreachable!("irreducible polynomials of every degree exist")
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        let p = (2..=q).find(|&d| q.is_multiple_of(d)).ok_or_else(|| Error::Unsupported(format!("q = {q} is not a prime power")))?;
        let mut k = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            k += 1;
        }
        if r != 1 || !is_prime(p) {
            return Err(Error::Unsupported(format!("q = {q} is not a prime power")));
        }
        let modulus = if k == 1 { vec![0] } else { irreducible(p, k) };
        Ok(FiniteField { p, k, q, modulus })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (x, y) = (digits(a, self.p, self.k as usize), digits(b, self.p, self.k as usize));
        self.join(x.iter().zip(&y).map(|(s, t)| (s + t) % self.p))
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.p - a % self.p) % self.p;
        }
        self.join(digits(a, self.p, self.k as usize).into_iter().map(|d| (self.p - d) % self.p))
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let k = self.k as usize;
        let (x, y) = (digits(a, self.p, k), digits(b, self.p, k));
        let mut prod = vec![0; 2 * k - 1];
        for (i, &s) in x.iter().enumerate() {
            for (j, &t) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + s * t) % self.p;
            }
        }
        let mut m = self.modulus.clone();
        m.push(1);
        let mut r = poly_rem(prod, &m, self.p);
        r.resize(k, 0);
        self.join(r.into_iter())
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| (1..self.q).find(|&b| self.mul(a, b) == 1).expect("fields have inverses"))
    }

    fn join(&self, ds: impl DoubleEndedIterator<Item = u32>) -> u32 {
        ds.rev().fold(0, |acc, d| acc * self.p + d)
    }

    pub fn label(&self, a: u32) -> String {
        if self.k == 1 {
            a.to_string()
        } else {
            // Coefficients of the residue polynomial in the generator t, highest first.
            let ds = digits(a, self.p, self.k as usize);
            let terms: Vec<String> = ds.iter().rev().map(|d| d.to_string()).collect();
            format!("<{}>", terms.join(""))
        }
    }
}

/// A 2×2 matrix `[a, b, c, d]` in row-major order.
pub type Mat2 = [u32; 4];

pub fn mat_mul(f: &FiniteField, x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| f.add(f.mul(x[2 * i], y[j]), f.mul(x[2 * i + 1], y[2 + j]));
    [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
}

pub fn det(f: &FiniteField, x: &Mat2) -> u32 {
    f.sub(f.mul(x[0], x[3]), f.mul(x[1], x[2]))
}

/// `GL_2(F_q)` with the identity first and the other matrices in lexicographic
/// order of their entries; `elements[g]` is the matrix of element `g`.
#[derive(Clone, Debug)]
pub struct Gl2 {
    pub field: FiniteField,
    pub group: FiniteGroup,
    pub elements: Vec<Mat2>,
}

impl Gl2 {
    pub fn new(field: &FiniteField) -> Result<Self> {
        let q = field.order();
        let all: Vec<Mat2> = (0..q.pow(4))
            .map(|i| [i / (q * q * q), i / (q * q) % q, i / q % q, i % q])
            .filter(|m| det(field, m) != 0)
            .collect();
        let label = |m: &Mat2| {
            let l = |x: u32| field.label(x);
            format!("[{} {}; {} {}]", l(m[0]), l(m[1]), l(m[2]), l(m[3]))
        };
        let group = FiniteGroup::from_elements([1, 0, 0, 1], &all, |x, y| mat_mul(field, x, y), label)?;
        let mut elements = vec![[1, 0, 0, 1]];
        elements.extend(all.into_iter().filter(|m| *m != [1, 0, 0, 1]));
        Ok(Gl2 { field: field.clone(), group, elements })
    }

    pub fn index_of(&self, m: &Mat2) -> Option<usize> {
        self.elements.iter().position(|x| x == m)
    }

    /// Elements whose matrices satisfy `pred`.
    pub fn select(&self, pred: impl Fn(&Mat2) -> bool) -> Vec<usize> {
        (0..self.elements.len()).filter(|&g| pred(&self.elements[g])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f = FiniteField::new(3).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (3, 1));
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.inv(2), Some(2));
        assert_eq!(f.neg(1), 2);
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
    }

    #[test]
    fn f4_and_f9_are_fields() {
        for q in [4, 8, 9] {
            let f = FiniteField::new(q).unwrap();
            for a in 1..q {
                let b = f.inv(a).unwrap();
                assert_eq!(f.mul(a, b), 1);
            }
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn gl2_orders() {
        // |GL_2(F_q)| = (q² − 1)(q² − q).
        for q in [2u32, 3, 4] {
            let g = Gl2::new(&FiniteField::new(q).unwrap()).unwrap();
            assert_eq!(g.group.order() as u32, (q * q - 1) * (q * q - q));
            assert_eq!(g.elements[0], [1, 0, 0, 1]);
            let f = &g.field;
            for a in 0..g.group.order() {
                for b in [1, g.group.order() - 1] {
                    let ab = mat_mul(f, &g.elements[a], &g.elements[b]);
                    assert_eq!(g.elements[g.group.mul(a, b)], ab);
                }
            }
        }
    }

    #[test]
    fn gl2_f2_is_s3() {
        let g = Gl2::new(&FiniteField::new(2).unwrap()).unwrap();
        assert!(!g.group.is_abelian());
        let mut sizes: Vec<usize> = g.group.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 2, 3]);
    }
}
