use std::fmt;

use super::Group;
use crate::error::{Error, Result};
use crate::Limits;

/// Named group families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    Cyclic(usize),
    /// `(Z/p)^r`
    ElementaryAbelian { p: usize, r: usize },
    /// `Z/p ⋊ Z/n` with the generator of `Z/n` acting as multiplication by `k`.
    Frobenius { p: usize, n: usize, k: usize },
    /// Upper unitriangular 3x3 matrices over `F_p`, `p` an odd prime.
    Heisenberg(usize),
    /// Symmetries of the regular `n`-gon, order `2n`.
    Dihedral(usize),
    DirectProduct(Box<Preset>, Box<Preset>),
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn checked_order(parts: &[usize], limits: &Limits) -> Result<usize> {
    parts
        .iter()
        .try_fold(1usize, |acc, &x| acc.checked_mul(x))
        .filter(|&o| o <= limits.max_order)
        .ok_or(Error::OrderCapExceeded { cap: limits.max_order })
}

fn mod_pow(base: usize, exp: usize, m: usize) -> usize {
    let mut acc = 1 % m;
    for _ in 0..exp {
        acc = acc * base % m;
    }
    acc
}

impl Preset {
    pub fn build(&self, limits: &Limits) -> Result<Group> {
        match *self {
            Preset::Cyclic(n) => {
                if n == 0 {
                    return Err(Error::InvalidParameters("cyclic group of order 0".into()));
                }
                checked_order(&[n], limits)?;
                let gens = if n > 1 { vec![1] } else { vec![] };
                let labels = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("a^{i}") }).collect();
                Group::from_multiplication(n, |a, b| (a + b) % n, gens, labels, limits)
            }
            Preset::ElementaryAbelian { p, r } => {
                if !is_prime(p) {
                    return Err(Error::InvalidParameters(format!("{p} is not prime")));
                }
                let order = checked_order(&vec![p; r], limits)?;
                let digits = |mut x: usize| -> Vec<usize> {
                    (0..r)
                        .map(|_| {
                            let d = x % p;
                            x /= p;
                            d
                        })
                        .collect()
                };
                let mul = |a: usize, b: usize| {
                    let (da, db) = (digits(a), digits(b));
                    da.iter().zip(&db).rev().fold(0, |acc, (x, y)| acc * p + (x + y) % p)
                };
                let gens = (0..r).map(|i| p.pow(i as u32)).collect();
                let labels = (0..order)
                    .map(|x| {
                        let d = digits(x);
                        format!("({})", d.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
                    })
                    .collect();
                Group::from_multiplication(order, mul, gens, labels, limits)
            }
            Preset::Frobenius { p, n, k } => {
                if !is_prime(p) {
                    return Err(Error::InvalidParameters(format!("{p} is not prime")));
                }
                if n == 0 || k % p == 0 {
                    return Err(Error::InvalidParameters("need n >= 1 and k invertible mod p".into()));
                }
                let ord_k = (1..=p).find(|&e| mod_pow(k, e, p) == 1).expect("k is a unit mod p");
                if ord_k != n {
                    return Err(Error::InvalidParameters(format!(
                        "{k} has multiplicative order {ord_k} modulo {p}, expected {n}"
                    )));
                }
                let order = checked_order(&[p, n], limits)?;
                let powers: Vec<usize> = (0..n).map(|b| mod_pow(k, b, p)).collect();
                // element (a, b) is stored at a + p*b
                let mul = |x: usize, y: usize| {
                    let (a, b) = (x % p, x / p);
                    let (a2, b2) = (y % p, y / p);
                    (a + powers[b] * a2) % p + p * ((b + b2) % n)
                };
                let mut gens = vec![1];
                if n > 1 {
                    gens.push(p);
                }
                let labels = (0..order).map(|x| format!("({},{})", x % p, x / p)).collect();
                Group::from_multiplication(order, mul, gens, labels, limits)
            }
            Preset::Heisenberg(p) => {
                if !is_prime(p) || p == 2 {
                    return Err(Error::InvalidParameters(format!("{p} is not an odd prime")));
                }
                let order = checked_order(&[p, p, p], limits)?;
                // [[1,x,z],[0,1,y],[0,0,1]] stored at x + p*y + p^2*z
                let split = |e: usize| (e % p, (e / p) % p, e / (p * p));
                let mul = |a: usize, b: usize| {
                    let (x, y, z) = split(a);
                    let (x2, y2, z2) = split(b);
                    (x + x2) % p + p * ((y + y2) % p) + p * p * ((z + z2 + x * y2) % p)
                };
                let labels = (0..order)
                    .map(|e| {
                        let (x, y, z) = split(e);
                        format!("[{x},{y},{z}]")
                    })
                    .collect();
                Group::from_multiplication(order, mul, vec![1, p], labels, limits)
            }
            Preset::Dihedral(n) => {
                if n == 0 {
                    return Err(Error::InvalidParameters("dihedral group needs n >= 1".into()));
                }
                let order = checked_order(&[2, n], limits)?;
                // r^a s^b stored at a + n*b
                let mul = |x: usize, y: usize| {
                    let (a, b) = (x % n, x / n);
                    let (a2, b2) = (y % n, y / n);
                    let a2 = if b == 1 { (n - a2) % n } else { a2 };
                    (a + a2) % n + n * ((b + b2) % 2)
                };
                let mut gens = Vec::new();
                if n > 1 {
                    gens.push(1);
                }
                gens.push(n);
                let labels = (0..order)
                    .map(|x| match (x % n, x / n) {
                        (0, 0) => "e".to_string(),
                        (a, 0) => format!("r^{a}"),
                        (0, _) => "s".to_string(),
                        (a, _) => format!("r^{a}s"),
                    })
                    .collect();
                Group::from_multiplication(order, mul, gens, labels, limits)
            }
            Preset::DirectProduct(ref left, ref right) => {
                let a = left.build(limits)?;
                let b = right.build(limits)?;
                let order = checked_order(&[a.order(), b.order()], limits)?;
                let na = a.order();
                let mul = |x: usize, y: usize| a.mul(x % na, y % na) + na * b.mul(x / na, y / na);
                let mut gens: Vec<usize> = a.generators().to_vec();
                gens.extend(b.generators().iter().map(|&g| na * g));
                let labels = (0..order).map(|x| format!("({},{})", a.label(x % na), b.label(x / na))).collect();
                Group::from_multiplication(order, mul, gens, labels, limits)
            }
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Cyclic(n) => write!(f, "cyclic:{n}"),
            Preset::ElementaryAbelian { p, r } => write!(f, "elab:{p},{r}"),
            Preset::Frobenius { p, n, k } => write!(f, "frobenius:{p},{n},{k}"),
            Preset::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            Preset::Dihedral(n) => write!(f, "dihedral:{n}"),
            Preset::DirectProduct(a, b) => write!(f, "product:({a}|{b})"),
        }
    }
}
