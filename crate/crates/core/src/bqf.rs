//! Binary quadratic forms `a x^2 + b x y + c y^2` of fundamental discriminant
//! and the narrow class group they realize.
//!
//! Classes are taken under proper (`SL2(Z)`) equivalence, which matches the
//! narrow class group of the quadratic order of the same discriminant. For
//! `D < 0` only positive definite forms are used. For `D > 0` a class is a
//! cycle of reduced forms under the reduction operator `rho`.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intkit::{factorize, isqrt};

/// Default upper bound on the class number handled by [`ClassGroup::compute`].
pub const DEFAULT_MAX_CLASS_NUMBER: usize = 10_000;

/// Largest `|D|` accepted by class group enumeration.
pub const MAX_ABS_DISC: i64 = 10_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl From<[i64; 3]> for Form {
    fn from([a, b, c]: [i64; 3]) -> Self {
        Form { a, b, c }
    }
}

impl From<Form> for [i64; 3] {
    fn from(f: Form) -> Self {
        [f.a, f.b, f.c]
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl Form {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Form { a, b, c }
    }

    pub fn disc(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// Value of the form at `(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    /// Builds `(a, b, (b^2 - D) / 4a)`, failing when the division is inexact.
    fn from_ab(a: i128, b: i128, disc: i128) -> Result<Form> {
        let num = b * b - disc;
        if a == 0 || num % (4 * a) != 0 {
            return Err(Error::invalid(format!(
                "no form ({a}, {b}, _) of discriminant {disc}"
            )));
        }
        let c = num / (4 * a);
        Ok(Form {
            a: narrow(a)?,
            b: narrow(b)?,
            c: narrow(c)?,
        })
    }

    /// Image under an integer matrix `[[p, q], [r, s]]`: `f(p x + q y, r x + s y)`.
    pub fn transform(&self, p: i64, q: i64, r: i64, s: i64) -> Result<Form> {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (p, q, r, s) = (p as i128, q as i128, r as i128, s as i128);
        let na = a * p * p + b * p * r + c * r * r;
        let nb = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
        let nc = a * q * q + b * q * s + c * s * s;
        Ok(Form {
            a: narrow(na)?,
            b: narrow(nb)?,
            c: narrow(nc)?,
        })
    }
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

pub fn is_fundamental_disc(disc: i64) -> bool {
    if disc == 0 || disc == 1 {
        return false;
    }
    let squarefree = |m: i64| factorize(m).map(|f| f.is_squarefree()).unwrap_or(false);
    match disc.rem_euclid(4) {
        1 => squarefree(disc),
        0 => {
            let m = disc / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

fn check_fundamental(disc: i64) -> Result<()> {
    if is_fundamental_disc(disc) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{disc} is not a fundamental discriminant")))
    }
}

pub fn principal_form(disc: i64) -> Result<Form> {
    check_fundamental(disc)?;
    if disc % 4 == 0 {
        Ok(Form::new(1, 0, -disc / 4))
    } else {
        Ok(Form::new(1, 1, (1 - disc) / 4))
    }
}

/// Result of reducing a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Canonical representative of the class.
    pub canonical: Form,
    /// The full `rho`-cycle of reduced forms (`D > 0`); just the reduced
    /// form for `D < 0`.
    pub cycle: Vec<Form>,
}

/// Reduces a primitive form of fundamental discriminant to the canonical
/// representative of its proper equivalence class.
pub fn reduce(f: Form) -> Result<Reduction> {
    let disc = f.disc();
    let disc64 = narrow(disc)?;
    check_fundamental(disc64)?;
    if !f.is_primitive() {
        return Err(Error::invalid(format!("{f} is not primitive")));
    }
    if disc < 0 {
        if f.a < 0 {
            return Err(Error::invalid(format!("{f} is negative definite")));
        }
        let r = reduce_definite(f)?;
        Ok(Reduction {
            canonical: r,
            cycle: vec![r],
        })
    } else {
        let cycle = indefinite_cycle(f)?;
        let canonical = *cycle
            .iter()
            .filter(|g| g.a > 0)
            .min()
            .expect("rho-cycles alternate the sign of a");
        Ok(Reduction { canonical, cycle })
    }
}

/// Canonical representative only.
pub fn canonical(f: Form) -> Result<Form> {
    Ok(reduce(f)?.canonical)
}

fn reduce_definite(f: Form) -> Result<Form> {
    let (mut a, mut b, mut c) = (f.a as i128, f.b as i128, f.c as i128);
    let normalize = |a: i128, b: i128, c: i128| {
        // b into (-a, a]
        let t = (b + a - 1).div_euclid(2 * a);
        let nb = b - 2 * a * t;
        let nc = c - t * b + t * t * a;
        (a, nb, nc)
    };
    (a, b, c) = normalize(a, b, c);
    while a > c || (a == c && b < 0) {
        (a, b, c) = normalize(c, -b, a);
    }
    Ok(Form {
        a: narrow(a)?,
        b: narrow(b)?,
        c: narrow(c)?,
    })
}

/// `floor(sqrt(D))` together with `D`, for indefinite forms.
struct RootDisc {
    disc: i128,
    root: i128,
}

impl RootDisc {
    fn new(disc: i128) -> Self {
        RootDisc {
            disc,
            root: isqrt(disc as u128) as i128,
        }
    }

    fn is_reduced(&self, f: &Form) -> bool {
        let (a, b) = ((f.a as i128).abs(), f.b as i128);
        b > 0 && b <= self.root && 2 * a > self.root - b && 2 * a <= self.root + b
    }

    /// `b' = b mod 2|a|` in the normalization window for `a`.
    fn normalize_b(&self, b: i128, a: i128) -> i128 {
        let m = 2 * a.abs();
        if a.abs() <= self.root {
            // sqrt(D) - 2|a| < b' < sqrt(D)
            self.root - (self.root - b).rem_euclid(m)
        } else {
            // -|a| < b' <= |a|
            (b + a.abs() - 1).rem_euclid(m) - a.abs() + 1
        }
    }

    fn rho(&self, f: &Form) -> Result<Form> {
        let c = f.c as i128;
        let nb = self.normalize_b(-(f.b as i128), c);
        Form::from_ab(c, nb, self.disc)
    }
}

fn indefinite_cycle(f: Form) -> Result<Vec<Form>> {
    let rd = RootDisc::new(f.disc());
    let mut g = f;
    // rho terminates at a reduced form after O(log |a|) steps
    while !rd.is_reduced(&g) {
        g = rd.rho(&g)?;
    }
    let start = g;
    let mut cycle = vec![start];
    loop {
        g = rd.rho(&g)?;
        if g == start {
            return Ok(cycle);
        }
        cycle.push(g);
    }
}

/// A form with positive leading coefficient in the same class.
fn positive_lead(f: Form) -> Result<Form> {
    if f.a > 0 {
        return Ok(f);
    }
    canonical(f)
}

/// Composition of two forms (Dirichlet/Shanks), returned in canonical form.
pub fn compose(f: Form, g: Form) -> Result<Form> {
    let disc = f.disc();
    if g.disc() != disc {
        return Err(Error::invalid(format!(
            "discriminants differ: {} vs {}",
            disc,
            g.disc()
        )));
    }
    let f = positive_lead(f)?;
    let g = positive_lead(g)?;
    let (a1, b1) = (f.a as i128, f.b as i128);
    let (a2, b2, c2) = (g.a as i128, g.b as i128, g.c as i128);

    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let e1 = a2.extended_gcd(&a1);
    let (y1, d) = (e1.x, e1.gcd);
    let e2 = s.extended_gcd(&d);
    let (x2, y2, d1) = (e2.x, -e2.y, e2.gcd);

    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 % v1 * n - x2 * c2 % v1).rem_euclid(v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    canonical(Form::from_ab(a3, b3, disc)?)
}

/// Inverse class: `(a, -b, c)`.
pub fn inverse(f: Form) -> Result<Form> {
    canonical(Form::new(f.a, -f.b, f.c))
}

/// Norm form `(p, b_p, (b_p^2 - D) / 4p)` of the prime ideal above a
/// ramified prime `p`, with the smallest admissible `b_p` in `0..2p`.
pub fn ambiguous_form(p: u64, disc: i64) -> Result<Form> {
    check_fundamental(disc)?;
    let p = p as i128;
    let disc = disc as i128;
    if p < 2 || disc % p != 0 {
        return Err(Error::invalid(format!("{p} does not divide {disc}")));
    }
    (0..2 * p)
        .filter(|b| (b - disc).rem_euclid(2) == 0 && (b * b - disc).rem_euclid(4 * p) == 0)
        .map(|b| Form::from_ab(p, b, disc))
        .next()
        .unwrap_or_else(|| Err(Error::invalid(format!("{p} is not ramified in {disc}"))))
}

/// Reduced forms of a negative discriminant, from the window
/// `|b| <= a <= c`, `a <= sqrt(|D| / 3)`.
fn definite_reduced_forms(disc: i64) -> Vec<Form> {
    let abs = disc.unsigned_abs() as u128;
    let a_max = isqrt(abs / 3) as i64;
    let mut out = Vec::new();
    for a in 1..=a_max {
        for b in -a + 1..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b as i128 * b as i128 - disc as i128;
            if num % (4 * a as i128) != 0 {
                continue;
            }
            let c = (num / (4 * a as i128)) as i64;
            if c < a || (c == a && b < 0) {
                continue;
            }
            let f = Form::new(a, b, c);
            if f.is_primitive() {
                out.push(f);
            }
        }
    }
    out
}

/// Reduced indefinite forms: `0 < b < sqrt D`, `sqrt D - b < 2|a| < sqrt D + b`.
fn indefinite_reduced_forms(disc: i64) -> Vec<Form> {
    let rd = RootDisc::new(disc as i128);
    let mut out = Vec::new();
    for b in 1..=rd.root as i64 {
        if (b - disc).rem_euclid(2) != 0 {
            continue;
        }
        let m = (disc - b * b) / 4;
        let lo = (rd.root as i64 - b + 2) / 2;
        let hi = (rd.root as i64 + b) / 2;
        for a in lo.max(1)..=hi {
            if m % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let f = Form::new(sa, b, -m / sa);
                if f.is_primitive() {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// The narrow class group of a fundamental discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ClassGroupRecord", try_from = "ClassGroupRecord")]
pub struct ClassGroup {
    pub disc: i64,
    /// Canonical representatives in ascending `(a, b, c)` order; index 0 is
    /// the principal class.
    pub reps: Vec<Form>,
    pub invariant_factors: Vec<u64>,
    /// Indices of classes forming an `F_2`-basis of the 2-torsion.
    pub two_torsion_basis: Vec<usize>,
    table: Vec<Vec<usize>>,
    index: HashMap<Form, usize>,
}

/// Serialized shape of a [`ClassGroup`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupRecord {
    #[serde(rename = "D")]
    pub disc: i64,
    pub h_plus: usize,
    pub invariant_factors: Vec<u64>,
    pub reps: Vec<Form>,
    pub two_torsion_basis: Vec<usize>,
}

impl From<ClassGroup> for ClassGroupRecord {
    fn from(g: ClassGroup) -> Self {
        ClassGroupRecord {
            disc: g.disc,
            h_plus: g.order(),
            invariant_factors: g.invariant_factors,
            reps: g.reps,
            two_torsion_basis: g.two_torsion_basis,
        }
    }
}

impl TryFrom<ClassGroupRecord> for ClassGroup {
    type Error = Error;

    /// Rebuilds the composition table from the stored representatives and
    /// checks the stored structure against it.
    fn try_from(rec: ClassGroupRecord) -> Result<Self> {
        let group = ClassGroup::from_reps(rec.disc, rec.reps)?;
        if group.order() != rec.h_plus
            || group.invariant_factors != rec.invariant_factors
            || group.two_torsion_basis != rec.two_torsion_basis
        {
            return Err(Error::invalid(format!(
                "class group record for D = {} is inconsistent",
                rec.disc
            )));
        }
        Ok(group)
    }
}

impl ClassGroup {
    pub fn compute(disc: i64, max_class_number: usize) -> Result<Self> {
        check_fundamental(disc)?;
        if disc.abs() > MAX_ABS_DISC {
            return Err(Error::resource(format!("|D| = {} exceeds {MAX_ABS_DISC}", disc.abs())));
        }
        let mut reps = if disc < 0 {
            definite_reduced_forms(disc)
        } else {
            let mut seen: HashMap<Form, Form> = HashMap::new();
            for f in indefinite_reduced_forms(disc) {
                if seen.contains_key(&f) {
                    continue;
                }
                let r = reduce(f)?;
                for g in r.cycle {
                    seen.insert(g, r.canonical);
                }
            }
            let mut canon: Vec<Form> = seen.into_values().collect();
            canon.sort_unstable();
            canon.dedup();
            canon
        };
        if reps.len() > max_class_number {
            return Err(Error::resource(format!(
                "h+({disc}) = {} exceeds the bound {max_class_number}",
                reps.len()
            )));
        }
        reps.sort_unstable();
        Self::from_reps(disc, reps)
    }

    fn from_reps(disc: i64, reps: Vec<Form>) -> Result<Self> {
        check_fundamental(disc)?;
        let principal = canonical(principal_form(disc)?)?;
        if reps.first() != Some(&principal) {
            return Err(Error::invalid("first representative must be the principal class"));
        }
        let index: HashMap<Form, usize> = reps.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        if index.len() != reps.len() {
            return Err(Error::invalid("duplicate class representatives"));
        }
        let h = reps.len();
        let mut table = vec![vec![0usize; h]; h];
        for i in 0..h {
            for j in i..h {
                let prod = compose(reps[i], reps[j])?;
                let k = *index.get(&prod).ok_or_else(|| {
                    Error::invalid(format!("{} * {} = {prod} is not a listed class", reps[i], reps[j]))
                })?;
                table[i][j] = k;
                table[j][i] = k;
            }
        }
        let mut group = ClassGroup {
            disc,
            reps,
            invariant_factors: Vec::new(),
            two_torsion_basis: Vec::new(),
            table,
            index,
        };
        group.invariant_factors = group.structure();
        group.two_torsion_basis = group.compute_two_torsion_basis();
        Ok(group)
    }

    /// `h+`.
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    /// Index of the class containing `f`.
    pub fn class_of(&self, f: Form) -> Result<usize> {
        let c = canonical(f)?;
        self.index
            .get(&c)
            .copied()
            .ok_or_else(|| Error::invalid(format!("{f} is not of discriminant {}", self.disc)))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Classes `x` with `x^2 = 1`.
    pub fn two_torsion(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.mul(i, i) == self.identity())
            .collect()
    }

    /// 2-rank of the group.
    pub fn two_rank(&self) -> usize {
        self.two_torsion_basis.len()
    }

    /// Invariant factors `n_1 | n_2 | ...` (all `> 1`).
    ///
    /// Generators are chosen greedily; each new generator contributes the
    /// relation `g^n = (word in earlier generators)`. Smith normal form of the
    /// resulting relation matrix gives the invariant factors.
    fn structure(&self) -> Vec<u64> {
        let h = self.order();
        // exponent vector of every element of the current subgroup
        let mut expo: Vec<Option<Vec<i64>>> = vec![None; h];
        expo[self.identity()] = Some(Vec::new());
        let mut members = vec![self.identity()];
        let mut relations: Vec<Vec<i64>> = Vec::new();

        for x in 0..h {
            if expo[x].is_some() {
                continue;
            }
            let t = relations.len();
            // smallest n with x^n in the subgroup
            let mut n = 1i64;
            let mut y = x;
            while expo[y].is_none() {
                y = self.mul(y, x);
                n += 1;
            }
            let mut row: Vec<i64> = expo[y].clone().unwrap().iter().map(|e| -e).collect();
            row.resize(t, 0);
            row.push(n);
            relations.push(row);

            let mut extended = Vec::with_capacity(members.len() * n as usize);
            let mut power = self.identity();
            for k in 0..n {
                for &m in &members {
                    let z = self.mul(power, m);
                    let mut v = expo[m].clone().unwrap();
                    v.resize(t + 1, 0);
                    v[t] = k;
                    if k > 0 {
                        expo[z] = Some(v);
                    } else if let Some(e) = expo[z].as_mut() {
                        e.resize(t + 1, 0);
                    }
                    extended.push(z);
                }
                power = self.mul(power, x);
            }
            members = extended;
        }
        let t = relations.len();
        for row in &mut relations {
            row.resize(t, 0);
        }
        smith_diagonal(relations)
            .into_iter()
            .filter(|&d| d > 1)
            .collect()
    }

    fn compute_two_torsion_basis(&self) -> Vec<usize> {
        let mut span = vec![self.identity()];
        let mut basis = Vec::new();
        for x in self.two_torsion() {
            if span.contains(&x) {
                continue;
            }
            basis.push(x);
            let shifted: Vec<usize> = span.iter().map(|&s| self.mul(s, x)).collect();
            span.extend(shifted);
        }
        basis
    }
}

/// Diagonal of the Smith normal form of a square integer matrix, with
/// `d_1 | d_2 | ...`, as absolute values.
pub fn smith_diagonal(mut m: Vec<Vec<i64>>) -> Vec<u64> {
    let n = m.len();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            // pivot: smallest nonzero |entry| in the trailing block
            let Some((pi, pj)) = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
            else {
                break;
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let p = m[k][k];
            let mut clean = true;
            for i in k + 1..n {
                let q = m[i][k].div_euclid(p);
                if q != 0 {
                    for j in k..n {
                        m[i][j] -= q * m[k][j];
                    }
                }
                clean &= m[i][k] == 0;
            }
            for j in k + 1..n {
                let q = m[k][j].div_euclid(p);
                if q != 0 {
                    for row in m.iter_mut().skip(k) {
                        row[j] -= q * row[k];
                    }
                }
                clean &= m[k][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold any entry not divisible by p into row k
            if let Some(i) = (k + 1..n).find(|&i| (k + 1..n).any(|j| m[i][j] % p != 0)) {
                for j in k..n {
                    m[k][j] += m[i][j];
                }
                continue;
            }
            break;
        }
        diag.push(m[k][k].unsigned_abs());
    }
    diag
}
