//! Regulator constants, the invariants `c_φ`, `α`, `β`, and the index
//! identity relating them to `[M : Σ_{H∈U} M^H]`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groups::{Group, Subgroup};
use crate::lattice::{induced_map_matrix, GLattice, PermLattice};
use crate::linalg::{self, CokernelOrder, IntMatrix, RowSolver};
use crate::relations::{coinvariant_equivariant, is_brauer_relation, theta_u, transpose_map, BrauerRelation, EquivariantMap};

const TRIAL_BOUND: u64 = 1_000_000;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn factor_positive(n: &BigUint) -> Result<BTreeMap<u64, i64>> {
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    let mut d: u64 = 2;
    while d <= TRIAL_BOUND && rest > BigUint::one() {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&dd);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.insert(d, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        // no factor up to min(d, sqrt(rest)), so rest is prime if it is small enough
        match rest.to_u64() {
            Some(p) if u128::from(p) < u128::from(TRIAL_BOUND) * u128::from(TRIAL_BOUND) => {
                *out.entry(p).or_insert(0) += 1;
            }
            _ => return Err(Error::Factorization(rest.to_string())),
        }
    }
    Ok(out)
}

/// A positive rational stored by its prime factorisation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    factors: BTreeMap<u64, i64>,
}

impl FactoredRational {
    pub fn one() -> FactoredRational {
        FactoredRational::default()
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (u64, i64)>) -> Result<FactoredRational> {
        let mut out = FactoredRational::one();
        for (p, e) in factors {
            if !is_prime(p) {
                return Err(Error::Factorization(format!("{p} is not prime")));
            }
            out = out.mul(&FactoredRational::single(p, e));
        }
        Ok(out)
    }

    fn single(p: u64, e: i64) -> FactoredRational {
        let mut factors = BTreeMap::new();
        if e != 0 {
            factors.insert(p, e);
        }
        FactoredRational { factors }
    }

    pub fn from_integer(n: &BigInt) -> Result<FactoredRational> {
        FactoredRational::from_ratio(n, &BigInt::one())
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Result<FactoredRational> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::VanishingDeterminant);
        }
        if num.is_negative() != den.is_negative() {
            return Err(Error::Factorization(format!("{num}/{den} is negative")));
        }
        let top = factor_positive(num.magnitude())?;
        let bottom = factor_positive(den.magnitude())?;
        let mut out = FactoredRational { factors: top };
        for (p, e) in bottom {
            out = out.mul(&FactoredRational::single(p, -e));
        }
        Ok(out)
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn exponent(&self, p: u64) -> i64 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &FactoredRational) -> FactoredRational {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let x = factors.entry(p).or_insert(0);
            *x += e;
            if *x == 0 {
                factors.remove(&p);
            }
        }
        FactoredRational { factors }
    }

    pub fn inv(&self) -> FactoredRational {
        FactoredRational { factors: self.factors.iter().map(|(&p, &e)| (p, -e)).collect() }
    }

    pub fn div(&self, other: &FactoredRational) -> FactoredRational {
        self.mul(&other.inv())
    }

    pub fn pow(&self, n: i64) -> FactoredRational {
        if n == 0 {
            return FactoredRational::one();
        }
        FactoredRational { factors: self.factors.iter().map(|(&p, &e)| (p, e * n)).collect() }
    }

    /// True when every prime occurs to an even power.
    pub fn is_square(&self) -> bool {
        self.factors.values().all(|e| e % 2 == 0)
    }

    pub fn to_ratio(&self) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&p, &e) in &self.factors {
            let pe = num_traits::pow(BigInt::from(p), e.unsigned_abs() as usize);
            if e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        BigRational::new(num, den)
    }

    /// `"num/den"`, or just `"num"` for integers.
    pub fn value_string(&self) -> String {
        self.to_ratio().to_string()
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.factors.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Serialize, Deserialize)]
struct FactoredRationalRepr {
    factors: BTreeMap<String, i64>,
    value: String,
}

impl Serialize for FactoredRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FactoredRationalRepr {
            factors: self.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect(),
            value: self.value_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactoredRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FactoredRationalRepr::deserialize(d)?;
        let mut pairs = Vec::new();
        for (p, e) in repr.factors {
            let p: u64 = p.parse().map_err(D::Error::custom)?;
            if e == 0 {
                return Err(D::Error::custom("zero exponent"));
            }
            pairs.push((p, e));
        }
        let out = FactoredRational::from_factors(pairs).map_err(D::Error::custom)?;
        if out.value_string() != repr.value {
            return Err(D::Error::custom(format!("value {} does not match factors {}", repr.value, out)));
        }
        Ok(out)
    }
}

/// A positive real of the form `Π p^{e_p}` with rational exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlphaValue {
    factors: BTreeMap<u64, Ratio<i64>>,
}

impl AlphaValue {
    pub fn one() -> AlphaValue {
        AlphaValue::default()
    }

    pub fn from_exponents(factors: impl IntoIterator<Item = (u64, Ratio<i64>)>) -> AlphaValue {
        let mut out = BTreeMap::new();
        for (p, e) in factors {
            let x = out.entry(p).or_insert_with(Ratio::zero);
            *x += e;
        }
        out.retain(|_, e| !e.is_zero());
        AlphaValue { factors: out }
    }

    pub fn factors(&self) -> &BTreeMap<u64, Ratio<i64>> {
        &self.factors
    }

    pub fn exponent(&self, p: u64) -> Ratio<i64> {
        self.factors.get(&p).copied().unwrap_or_else(Ratio::zero)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &AlphaValue) -> AlphaValue {
        AlphaValue::from_exponents(self.factors.iter().chain(&other.factors).map(|(&p, &e)| (p, e)))
    }

    /// The exact value when every exponent is an integer.
    pub fn to_rational(&self) -> Option<FactoredRational> {
        self.factors
            .iter()
            .all(|(_, e)| e.is_integer())
            .then(|| FactoredRational { factors: self.factors.iter().map(|(&p, e)| (p, e.to_integer())).collect() })
    }
}

impl From<&FactoredRational> for AlphaValue {
    fn from(x: &FactoredRational) -> AlphaValue {
        AlphaValue { factors: x.factors.iter().map(|(&p, &e)| (p, Ratio::from_integer(e))).collect() }
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| {
                if e.is_one() {
                    p.to_string()
                } else if e.is_integer() {
                    format!("{p}^{e}")
                } else {
                    format!("{p}^({e})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Serialize, Deserialize)]
struct AlphaValueRepr {
    factors: BTreeMap<String, String>,
    value: Option<String>,
}

impl Serialize for AlphaValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlphaValueRepr {
            factors: self.factors.iter().map(|(p, e)| (p.to_string(), e.to_string())).collect(),
            value: self.to_rational().map(|r| r.value_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlphaValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = AlphaValueRepr::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (p, e) in repr.factors {
            let p: u64 = p.parse().map_err(D::Error::custom)?;
            if !is_prime(p) {
                return Err(D::Error::custom(format!("{p} is not prime")));
            }
            let e: Ratio<i64> = e.parse().map_err(D::Error::custom)?;
            if e.is_zero() {
                return Err(D::Error::custom("zero exponent"));
            }
            out.insert(p, e);
        }
        let out = AlphaValue { factors: out };
        if out.to_rational().map(|r| r.value_string()) != repr.value {
            return Err(D::Error::custom("value does not match factors"));
        }
        Ok(out)
    }
}

/// `value^{1/n}`: the contribution of one irreducible constituent occurring
/// with multiplicity `n`.
pub fn alpha_with_multiplicity(value: &FactoredRational, n: u32) -> Result<AlphaValue> {
    if n == 0 {
        return Err(Error::InvalidParameters("multiplicity must be positive".into()));
    }
    let n = i64::from(n);
    Ok(AlphaValue::from_exponents(value.factors.iter().map(|(&p, &e)| (p, Ratio::new(e, n)))))
}

fn check_relation(group: &Group, rel: &BrauerRelation) -> Result<()> {
    if !is_brauer_relation(group, rel) {
        return Err(Error::NotABrauerRelation);
    }
    Ok(())
}

/// `C_Θ(M) = Π_H det(|H|^{-1} <,>|_{M^H})^{n_H}` for the averaged standard
/// pairing.
pub fn regconst_pairing(rel: &BrauerRelation, m: &GLattice) -> Result<FactoredRational> {
    regconst_with_gram(rel, m, &m.invariant_gram())
}

/// As [`regconst_pairing`], for any `G`-invariant positive definite Gram
/// matrix.
pub fn regconst_with_gram(rel: &BrauerRelation, m: &GLattice, gram: &IntMatrix) -> Result<FactoredRational> {
    check_relation(m.group(), rel)?;
    let mut out = FactoredRational::one();
    for (h, n) in rel.terms() {
        let b = m.fixed_sublattice(h);
        let k = b.rows();
        if k == 0 {
            continue;
        }
        let restricted = &(&b * gram) * &b.transpose();
        let d = linalg::det(&restricted);
        let scale = num_traits::pow(BigInt::from(h.order()), k);
        out = out.mul(&FactoredRational::from_ratio(&d, &scale)?.pow(*n));
    }
    Ok(out)
}

/// `#coker(φ, M)` and `#coker(φ^tr, M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCokernels {
    pub phi: BigInt,
    pub phi_tr: BigInt,
}

fn finite(order: CokernelOrder, what: &str) -> Result<BigInt> {
    match order {
        CokernelOrder::Finite(n) => Ok(n),
        CokernelOrder::Infinite => Err(Error::InfiniteCokernel(what.to_string())),
    }
}

pub fn phi_cokernels(phi: &EquivariantMap, m: &GLattice) -> Result<PhiCokernels> {
    let a = induced_map_matrix(phi, m)?;
    let b = induced_map_matrix(&transpose_map(phi)?, m)?;
    if a.rows() != a.cols() || b.rows() != b.cols() {
        return Err(Error::InfiniteCokernel("hom spaces of different ranks".into()));
    }
    Ok(PhiCokernels {
        phi: finite(linalg::cokernel_order(&a), "(φ, M)")?,
        phi_tr: finite(linalg::cokernel_order(&b), "(φ^tr, M)")?,
    })
}

/// `C_Θ(M) = #coker(φ^tr, M) / #coker(φ, M)` for torsion-free `M`.
pub fn regconst_via_phi(phi: &EquivariantMap, m: &GLattice) -> Result<FactoredRational> {
    let c = phi_cokernels(phi, m)?;
    FactoredRational::from_ratio(&c.phi_tr, &c.phi)
}

/// `c_φ(M) = #coker(φ, M) · #coker(φ^tr, M)`.
pub fn c_phi(phi: &EquivariantMap, m: &GLattice) -> Result<FactoredRational> {
    let c = phi_cokernels(phi, m)?;
    FactoredRational::from_integer(&(c.phi * c.phi_tr))
}

/// `c_{φ_G}(M)` for the map `φ_G` induced on coinvariants.
pub fn c_phi_coinvariant(phi: &EquivariantMap, m: &GLattice) -> Result<FactoredRational> {
    c_phi(&coinvariant_equivariant(phi)?, m)
}

/// `α(M) = c_{φ_G}(M) / c_φ(M)`.
pub fn alpha_lattice(phi: &EquivariantMap, m: &GLattice) -> Result<FactoredRational> {
    Ok(c_phi_coinvariant(phi, m)?.div(&c_phi(phi, m)?))
}

/// `β(H) = C_Θ(Z[G/H])^{-1}`.
pub fn beta(group: &Arc<Group>, rel: &BrauerRelation, h: &Subgroup) -> Result<FactoredRational> {
    let p = PermLattice::new(group.clone(), std::slice::from_ref(h))?;
    Ok(regconst_pairing(rel, p.lattice())?.inv())
}

/// `C_Θ(Z[G/C])` from double cosets: `Π_K Π_{g ∈ K\G/C} |g^-1 K g ∩ C|^{-n_K}`.
pub fn perm_regconst_marks(group: &Group, rel: &BrauerRelation, c: &Subgroup) -> Result<FactoredRational> {
    check_relation(group, rel)?;
    let mut out = FactoredRational::one();
    for (k, n) in rel.terms() {
        for dc in group.double_cosets(k, c) {
            out = out.mul(&FactoredRational::from_integer(&BigInt::from(dc.intersection_order))?.pow(-n));
        }
    }
    Ok(out)
}

/// `|G|^{1-|U|} Π_{H∈U} Π_{g ∈ C\G/H} |gHg^-1 ∩ C|`, exactly as printed in
/// the literature for `Θ_U`. It disagrees with [`perm_regconst_marks`] by
/// `(|G|/|C|)^{1-|U|}`.
pub fn printed_closed_form(group: &Group, u: &[Subgroup], c: &Subgroup) -> Result<FactoredRational> {
    let g = FactoredRational::from_integer(&BigInt::from(group.order()))?;
    let mut out = g.pow(1 - u.len() as i64);
    for h in u {
        for dc in group.double_cosets(c, h) {
            out = out.mul(&FactoredRational::from_integer(&BigInt::from(dc.intersection_order))?);
        }
    }
    Ok(out)
}

/// `α` as a linear functional in the fixed-point ranks at cyclic subgroups:
/// `α(V) = Π_p p^{Σ_j λ_{p,j} rk V^{C_j}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFunctional {
    /// One representative per conjugacy class of cyclic subgroups.
    pub cyclic_classes: Vec<Subgroup>,
    /// `α(Z[G/C_i])` for each representative.
    pub values: Vec<FactoredRational>,
    pub coefficients: BTreeMap<u64, Vec<BigRational>>,
}

impl RankFunctional {
    pub fn rank_vector(&self, m: &GLattice) -> Vec<usize> {
        self.cyclic_classes.iter().map(|c| m.fixed_sublattice(c).rows()).collect()
    }

    pub fn exponent(&self, p: u64, ranks: &[usize]) -> BigRational {
        self.coefficients.get(&p).map_or_else(BigRational::zero, |lambda| {
            lambda.iter().zip(ranks).map(|(l, &r)| l * BigRational::from_integer(BigInt::from(r))).sum()
        })
    }

    pub fn evaluate(&self, ranks: &[usize]) -> Result<AlphaValue> {
        if ranks.len() != self.cyclic_classes.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} ranks for {} cyclic classes",
                ranks.len(),
                self.cyclic_classes.len()
            )));
        }
        let mut out = Vec::new();
        for &p in self.coefficients.keys() {
            let e = self.exponent(p, ranks);
            let e = Ratio::new(
                e.numer().to_i64().ok_or_else(|| Error::Factorization("exponent overflow".into()))?,
                e.denom().to_i64().ok_or_else(|| Error::Factorization("exponent overflow".into()))?,
            );
            out.push((p, e));
        }
        Ok(AlphaValue::from_exponents(out))
    }
}

fn solve_rational(r: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = r.len();
    let mut a: Vec<Vec<BigRational>> = r.iter().zip(rhs).map(|(row, b)| {
        let mut row = row.clone();
        row.push(b.clone());
        row
    }).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Solves for the functional from `α` on `Z[G/C]`, `C` cyclic up to
/// conjugacy.
pub fn alpha_rank_functional(phi: &EquivariantMap, limits: &crate::Limits) -> Result<RankFunctional> {
    let group = phi.group();
    let cyclic: Vec<Subgroup> = group
        .subgroup_classes(limits)?
        .into_iter()
        .filter(|c| c.representative.is_cyclic(group))
        .map(|c| c.representative)
        .collect();
    let mut values = Vec::with_capacity(cyclic.len());
    for c in &cyclic {
        let p = PermLattice::new(group.clone(), std::slice::from_ref(c))?;
        values.push(alpha_lattice(phi, p.lattice())?);
    }
    let rank_matrix: Vec<Vec<BigRational>> = cyclic
        .iter()
        .map(|ci| {
            cyclic
                .iter()
                .map(|cj| BigRational::from_integer(BigInt::from(group.double_cosets(cj, ci).len())))
                .collect()
        })
        .collect();
    let primes: std::collections::BTreeSet<u64> = values.iter().flat_map(|v| v.factors.keys().copied()).collect();
    let mut coefficients = BTreeMap::new();
    for p in primes {
        let rhs: Vec<BigRational> =
            values.iter().map(|v| BigRational::from_integer(BigInt::from(v.exponent(p)))).collect();
        let lambda = solve_rational(&rank_matrix, &rhs).ok_or(Error::SingularRankMatrix)?;
        coefficients.insert(p, lambda);
    }
    Ok(RankFunctional { cyclic_classes: cyclic, values, coefficients })
}

/// `[M : Σ_{H∈U} M^H]`.
pub fn fixed_sum_index(m: &GLattice, u: &[Subgroup]) -> Result<BigInt> {
    let bases: Vec<IntMatrix> = u.iter().map(|h| m.fixed_sublattice(h)).collect();
    let refs: Vec<&IntMatrix> = bases.iter().collect();
    let stacked = IntMatrix::vstack(m.rank(), &refs)?;
    finite(linalg::cokernel_order(&stacked), "Σ M^H has smaller rank than M")
}

/// Order of the kernel of `f: ⊕_{H∈U} M^H/M^G -> M/M^G`.
pub fn ker_f_order(m: &GLattice, u: &[Subgroup]) -> Result<BigInt> {
    let group = m.group();
    let n = m.rank();
    let mg = m.fixed_sublattice(&Subgroup::whole(group));
    let g = mg.rows();
    // m -> (m * right)[g..] has kernel exactly M^G, as M^G is pure
    let s = linalg::snf(&mg);
    let right = if g == 0 { IntMatrix::identity(n) } else { s.right };
    let to_quotient = right.select_cols(g..n);
    let bases: Vec<IntMatrix> = u.iter().map(|h| m.fixed_sublattice(h)).collect();
    let refs: Vec<&IntMatrix> = bases.iter().collect();
    let stacked = IntMatrix::vstack(n, &refs)?;
    let total = stacked.rows();
    let kernel = linalg::kernel_basis(&(&stacked * &to_quotient));
    // ⊕ M^G sits inside that kernel; ker f is the quotient
    let mut embedded = Vec::with_capacity(u.len() * g);
    let mut offset = 0;
    for b in &bases {
        let solver = RowSolver::new(b);
        for row in mg.row_iter() {
            let coords = solver
                .solve(row)
                .ok_or_else(|| Error::CoordinateSolve("M^G is not inside M^H".into()))?;
            let mut v = vec![BigInt::zero(); total];
            v[offset..offset + b.rows()].clone_from_slice(&coords);
            embedded.push(v);
        }
        offset += b.rows();
    }
    if kernel.rows() != embedded.len() {
        return Err(Error::InfiniteCokernel("ker f is infinite".into()));
    }
    if embedded.is_empty() {
        return Ok(BigInt::one());
    }
    let solver = RowSolver::new(&kernel);
    let coords = embedded
        .iter()
        .map(|v| solver.solve(v).ok_or_else(|| Error::CoordinateSolve("⊕ M^G outside ker".into())))
        .collect::<Result<Vec<_>>>()?;
    let square = IntMatrix::from_rows(&coords)?;
    let d = linalg::det(&square).abs();
    if d.is_zero() {
        return Err(Error::InfiniteCokernel("ker f is infinite".into()));
    }
    Ok(d)
}

/// Every quantity entering `[M:ΣM^H]^2 / |ker f|^2 = c_φ(M) / (c_{φ_G}(M) C_Θ(M))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasterIdentityReport {
    pub index: FactoredRational,
    pub ker_f: FactoredRational,
    pub regconst: FactoredRational,
    pub c_phi: FactoredRational,
    pub c_phi_coinvariant: FactoredRational,
    pub lhs: FactoredRational,
    pub rhs: FactoredRational,
    pub holds: bool,
}

impl MasterIdentityReport {
    pub fn check(&self) -> Result<()> {
        if self.holds {
            Ok(())
        } else {
            Err(Error::IdentityMismatch { lhs: self.lhs.value_string(), rhs: self.rhs.value_string() })
        }
    }
}

pub fn verify_master_identity(u: &[Subgroup], phi: &EquivariantMap, m: &GLattice) -> Result<MasterIdentityReport> {
    let rel = theta_u(m.group(), u)?;
    let index = FactoredRational::from_integer(&fixed_sum_index(m, u)?)?;
    let ker_f = FactoredRational::from_integer(&ker_f_order(m, u)?)?;
    let regconst = regconst_pairing(&rel, m)?;
    let c = c_phi(phi, m)?;
    let c0 = c_phi_coinvariant(phi, m)?;
    let lhs = index.div(&ker_f).pow(2);
    let rhs = c.div(&c0.mul(&regconst));
    let holds = lhs == rhs;
    Ok(MasterIdentityReport { index, ker_f, regconst, c_phi: c, c_phi_coinvariant: c0, lhs, rhs, holds })
}
