//! Finite subgroups of SL(2) realized over a prime field `F_p`, with their
//! character tables, McKay and Slodowy matrices and invariant Poincare
//! series. Every quantity of interest is a small integer, so all arithmetic
//! is done mod `p` and lifted at the end.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{build_diagram, find_isomorphism, DiagramSpec, IntMatrix};
use crate::poly::SeriesPrefix;

pub const DEFAULT_PRIME: u64 = 1201;
pub const SECONDARY_PRIME: u64 = 2521;

/// Bound on lifted McKay/Slodowy multiplicities.
const MULTIPLICITY_BOUND: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    Cyclic(u64),
    /// Binary dihedral group of order `4k`.
    BinDihedral(u64),
    BinTetrahedral,
    BinOctahedral,
    BinIcosahedral,
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupSpec::Cyclic(0) => Err(Error::InvalidSpec("Cyclic(m) needs m >= 1".into())),
            // k = 1 gives the cyclic group of order 4; it appears as the
            // normal subgroup in the first case of the B/C family
            GroupSpec::BinDihedral(0) => Err(Error::InvalidSpec("BinDihedral(k) needs k >= 1".into())),
            _ => Ok(()),
        }
    }

    pub fn expected_order(&self) -> u64 {
        match *self {
            GroupSpec::Cyclic(m) => m,
            GroupSpec::BinDihedral(k) => 4 * k,
            GroupSpec::BinTetrahedral => 24,
            GroupSpec::BinOctahedral => 48,
            GroupSpec::BinIcosahedral => 120,
        }
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        match *self {
            GroupSpec::Cyclic(m) => m,
            GroupSpec::BinDihedral(k) => (2 * k).lcm(&4),
            GroupSpec::BinTetrahedral => 12,
            GroupSpec::BinOctahedral => 24,
            GroupSpec::BinIcosahedral => 60,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(m) => write!(f, "Cyclic({m})"),
            GroupSpec::BinDihedral(k) => write!(f, "BinDihedral({k})"),
            GroupSpec::BinTetrahedral => write!(f, "BinTetrahedral"),
            GroupSpec::BinOctahedral => write!(f, "BinOctahedral"),
            GroupSpec::BinIcosahedral => write!(f, "BinIcosahedral"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// `Cyclic(4)`, `C4`, `BinDihedral(3)`, `BD3`, `BinTetrahedral`, `T`, ...
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidSpec(format!("unknown group {s:?}"));
        let split = s.find(|c: char| c == '(' || c.is_ascii_digit()).unwrap_or(s.len());
        let (head, rest) = s.split_at(split);
        let arg = || -> Result<u64> {
            let inner = rest.strip_prefix('(').map(|r| r.strip_suffix(')')).unwrap_or(Some(rest));
            inner.ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        let spec = match head.to_ascii_lowercase().as_str() {
            "cyclic" | "c" => GroupSpec::Cyclic(arg()?),
            "bindihedral" | "bd" | "dic" => GroupSpec::BinDihedral(arg()?),
            "bintetrahedral" | "bt" | "t" if rest.is_empty() => GroupSpec::BinTetrahedral,
            "binoctahedral" | "bo" | "o" if rest.is_empty() => GroupSpec::BinOctahedral,
            "binicosahedral" | "bi" | "i" if rest.is_empty() => GroupSpec::BinIcosahedral,
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Reasons `p` cannot host the groups `specs`, if any.
pub fn check_prime(p: u64, specs: &[GroupSpec]) -> Result<()> {
    let bad = |reason: String| Err(Error::BadPrime { p, reason });
    if !is_prime(p) {
        return bad("not prime".into());
    }
    if p % 120 != 1 {
        return bad("p is not 1 mod 120".into());
    }
    for s in specs {
        let order = s.expected_order();
        if order % p == 0 {
            return bad(format!("p divides |{s}|"));
        }
        if (p - 1) % s.exponent() != 0 {
            return bad(format!("p is not 1 mod the exponent {} of {s}", s.exponent()));
        }
        if p <= 2 * order {
            return bad(format!("p <= 2|{s}|"));
        }
    }
    Ok(())
}

/// Smallest usable prime at or above `from`, preferring the two defaults.
pub fn select_prime_from(specs: &[GroupSpec], from: u64) -> u64 {
    for p in [DEFAULT_PRIME, SECONDARY_PRIME] {
        if p >= from && check_prime(p, specs).is_ok() {
            return p;
        }
    }
    let step = specs.iter().fold(120u64, |acc, s| acc.lcm(&s.exponent()));
    let mut p = from.max(2).div_ceil(step) * step + 1;
    loop {
        if check_prime(p, specs).is_ok() {
            return p;
        }
        p += step;
    }
}

/// `DEFAULT_PRIME` when it works for all of `specs`, else the next prime
/// `p = 1 mod lcm(120, exponents)` that does.
pub fn select_prime(specs: &[GroupSpec]) -> u64 {
    select_prime_from(specs, 2)
}

/// A second usable prime, larger than [`select_prime`].
pub fn secondary_prime(specs: &[GroupSpec]) -> u64 {
    select_prime_from(specs, select_prime(specs) + 1)
}

#[derive(Clone, Copy, Debug)]
struct Fp(u64);

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }
    fn neg(self, a: u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.0;
        a %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }
    fn primitive_root(self) -> u64 {
        let p = self.0;
        let mut factors = Vec::new();
        let mut n = p - 1;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                factors.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            factors.push(n);
        }
        (2..p).find(|&g| factors.iter().all(|&q| self.pow(g, (p - 1) / q) != 1)).unwrap()
    }
}

/// Row-major `[a, b, c, d]` for `[[a, b], [c, d]]`.
pub type Mat2 = [u64; 4];

fn mat_mul(f: Fp, x: &Mat2, y: &Mat2) -> Mat2 {
    [
        f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
        f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
        f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
        f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
    ]
}

/// Roots of unity `zeta_m = g^((p-1)/m)` for one fixed primitive root, so
/// `zeta_{ab}^a = zeta_b` and every construction below uses one embedding
/// of the cyclotomic integers into `F_p`.
struct Roots {
    f: Fp,
    g: u64,
}

impl Roots {
    fn zeta(&self, m: u64) -> u64 {
        self.f.pow(self.g, (self.f.0 - 1) / m)
    }

    fn quaternion(&self, a: u64, b: u64, c: u64, d: u64) -> Mat2 {
        let f = self.f;
        let iota = self.zeta(4);
        [
            f.add(a, f.mul(b, iota)),
            f.add(c, f.mul(d, iota)),
            f.add(f.neg(c), f.mul(d, iota)),
            f.sub(a, f.mul(b, iota)),
        ]
    }
}

/// A finite subgroup of `SL(2, F_p)` with its multiplication table.
#[derive(Clone, Debug)]
pub struct GroupOverPrimeField {
    spec: GroupSpec,
    p: u64,
    elements: Vec<Mat2>,
    index: HashMap<Mat2, usize>,
    table: Vec<usize>,
    inverse: Vec<usize>,
    orders: Vec<u64>,
}

pub fn build_group(spec: GroupSpec, p: u64) -> Result<GroupOverPrimeField> {
    spec.validate()?;
    check_prime(p, &[spec])?;
    let f = Fp(p);
    let roots = Roots { f, g: f.primitive_root() };
    let half = f.inv(2);
    let diag = |z: u64| -> Mat2 { [z, 0, 0, f.inv(z)] };
    let j: Mat2 = [0, 1, p - 1, 0];
    let tet = roots.quaternion(f.neg(half), half, half, half);
    let gens: Vec<Mat2> = match spec {
        GroupSpec::Cyclic(m) => vec![diag(roots.zeta(m))],
        GroupSpec::BinDihedral(k) => vec![diag(roots.zeta(2 * k)), j],
        GroupSpec::BinTetrahedral => vec![roots.quaternion(0, 1, 0, 0), j, tet],
        GroupSpec::BinOctahedral => {
            // sqrt 2 = zeta_8 + zeta_8^-1
            let z8 = roots.zeta(8);
            let s = f.inv(f.add(z8, f.inv(z8)));
            vec![roots.quaternion(0, 1, 0, 0), j, tet, roots.quaternion(s, s, 0, 0)]
        }
        GroupSpec::BinIcosahedral => {
            // 1/phi = zeta_5 + zeta_5^-1 and phi = 1 + 1/phi
            let z5 = roots.zeta(5);
            let phi_inv = f.add(z5, f.inv(z5));
            let phi = f.add(1, phi_inv);
            let b = roots.quaternion(f.mul(half, phi), f.mul(half, phi_inv), half, 0);
            vec![roots.quaternion(half, half, half, half), b]
        }
    };
    let expected = spec.expected_order() as usize;
    let identity: Mat2 = [1, 0, 0, 1];
    let mut elements = vec![identity];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head];
        head += 1;
        for g in &gens {
            let y = mat_mul(f, &x, g);
            if !index.contains_key(&y) {
                if elements.len() == expected {
                    return Err(Error::OrderMismatch { got: expected + 1, expected });
                }
                index.insert(y, elements.len());
                elements.push(y);
            }
        }
    }
    if elements.len() != expected {
        return Err(Error::OrderMismatch { got: elements.len(), expected });
    }
    let n = elements.len();
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = index[&mat_mul(f, &elements[a], &elements[b])];
        }
    }
    let inverse: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap()).collect();
    let orders: Vec<u64> = (0..n)
        .map(|a| {
            let (mut x, mut k) = (a, 1);
            while x != 0 {
                x = table[x * n + a];
                k += 1;
            }
            k
        })
        .collect();
    let group = GroupOverPrimeField { spec, p, elements, index, table, inverse, orders };
    // traces are reductions of 2cos(2 pi a / m)
    for a in 0..n {
        let m = group.orders[a];
        let z = roots.zeta(m);
        let tr = group.trace(a);
        let ok = (0..m)
            .filter(|k| k.gcd(&m) == 1)
            .any(|k| f.add(f.pow(z, k), f.inv(f.pow(z, k))) == tr);
        if !ok {
            return Err(Error::BadPrime { p, reason: format!("trace of element {a} is not 2cos(2 pi a/{m})") });
        }
    }
    Ok(group)
}

impl GroupOverPrimeField {
    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn trace(&self, a: usize) -> u64 {
        let m = &self.elements[a];
        (m[0] + m[3]) % self.p
    }

    pub fn index_of(&self, m: &Mat2) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Partition into conjugacy classes; the class of the identity comes first
/// and classes are ordered by their smallest element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub members: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub inverse_class: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn representative(&self, k: usize) -> usize {
        self.members[k][0]
    }
}

pub fn conjugacy_classes(g: &GroupOverPrimeField) -> ConjugacyClasses {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut members = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let k = members.len();
        let mut cls: Vec<usize> = (0..n).map(|x| g.mul(g.mul(x, a), g.inv(x))).collect();
        cls.sort_unstable();
        cls.dedup();
        for &c in &cls {
            class_of[c] = k;
        }
        members.push(cls);
    }
    let inverse_class = members.iter().map(|m| class_of[g.inv(m[0])]).collect();
    ConjugacyClasses { members, class_of, inverse_class }
}

/// Character table with values in `F_p`. Row 0 is the trivial character;
/// the other rows are sorted by dimension and then by lifted values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTable {
    pub p: u64,
    /// (representative element, class size) in class order.
    pub classes: Vec<(usize, usize)>,
    pub values: Vec<Vec<u64>>,
    pub dims: Vec<u64>,
    pub inverse_class: Vec<usize>,
}

impl CharTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `sum_K |K| chi_i(K) chi_j(K^-1)` in `F_p`.
    pub fn pairing(&self, a: &[u64], b: &[u64]) -> u64 {
        let f = Fp(self.p);
        self.classes.iter().enumerate().fold(0, |acc, (k, &(_, size))| {
            let term = f.mul(size as u64 % self.p, f.mul(a[k], b[self.inverse_class[k]]));
            f.add(acc, term)
        })
    }
}

fn nullspace(f: Fp, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let inv = f.inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let factor = a[i][c];
                for k in 0..cols {
                    a[i][k] = f.sub(a[i][k], f.mul(factor, a[r][k]));
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(a[row][fc]);
            }
            v
        })
        .collect()
}

/// Coefficients (low degree first) of `det(tI - m)` over `F_p`, by
/// Faddeev-LeVerrier; needs `p > size`.
fn charpoly_mod(f: Fp, m: &[Vec<u64>]) -> Vec<u64> {
    let n = m.len();
    let mut coeffs = vec![0; n + 1];
    coeffs[n] = 1;
    let mut mk: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect();
    for k in 1..=n {
        let am: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(0, |acc, l| f.add(acc, f.mul(m[i][l], mk[l][j])))).collect())
            .collect();
        let tr = (0..n).fold(0, |acc, i| f.add(acc, am[i][i]));
        let c = f.neg(f.mul(tr, f.inv(k as u64)));
        coeffs[n - k] = c;
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] = f.add(row[i], c);
        }
    }
    coeffs
}

/// Lift to the symmetric range `(-p/2, p/2]`.
fn lift(p: u64, x: u64) -> i64 {
    if x > p / 2 {
        x as i64 - p as i64
    } else {
        x as i64
    }
}

pub fn character_table(g: &GroupOverPrimeField) -> Result<CharTable> {
    let f = Fp(g.p);
    let cls = conjugacy_classes(g);
    let k = cls.len();
    let n = g.order();
    // c[r][s][t] = #{x in K_r : x^-1 z in K_s} for z the representative of K_t
    let mut c = vec![vec![vec![0u64; k]; k]; k];
    for t in 0..k {
        let z = cls.representative(t);
        for (r, members) in cls.members.iter().enumerate() {
            for &x in members {
                let s = cls.class_of[g.mul(g.inv(x), z)];
                c[r][s][t] += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d636b6179);
    for _attempt in 0..16 {
        let weights: Vec<u64> = (0..k).map(|_| rng.gen_range(0..g.p)).collect();
        let m: Vec<Vec<u64>> = (0..k)
            .map(|s| (0..k).fold(vec![0; k], |mut acc, _| {
                for t in 0..k {
                    acc[t] = (0..k).fold(0, |a, r| f.add(a, f.mul(weights[r], c[r][s][t] % g.p)));
                }
                acc
            }))
            .collect();
        let cp = charpoly_mod(f, &m);
        let eval = |x: u64| cp.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a));
        let roots: Vec<u64> = (0..g.p).filter(|&x| eval(x) == 0).collect();
        if roots.len() != k {
            continue;
        }
        let mut omegas = Vec::new();
        for &lambda in &roots {
            let shifted: Vec<Vec<u64>> = (0..k)
                .map(|s| (0..k).map(|t| if s == t { f.sub(m[s][t], lambda) } else { m[s][t] }).collect())
                .collect();
            let ker = nullspace(f, &shifted);
            if ker.len() != 1 || ker[0][0] == 0 {
                break;
            }
            let scale = f.inv(ker[0][0]);
            omegas.push(ker[0].iter().map(|&x| f.mul(x, scale)).collect::<Vec<u64>>());
        }
        if omegas.len() != k {
            continue;
        }
        let sizes = cls.sizes();
        let mut rows = Vec::with_capacity(k);
        for omega in &omegas {
            let norm = (0..k).fold(0, |acc, kk| {
                let term = f.mul(f.mul(omega[kk], omega[cls.inverse_class[kk]]), f.inv(sizes[kk] as u64 % g.p));
                f.add(acc, term)
            });
            if norm == 0 {
                return Err(Error::SplittingFailure);
            }
            let d2 = f.mul(n as u64 % g.p, f.inv(norm));
            let d = (1..=n as u64).find(|d| d * d <= n as u64 && d * d % g.p == d2).ok_or(Error::SplittingFailure)?;
            let values: Vec<u64> = (0..k).map(|kk| f.mul(f.mul(d, omega[kk]), f.inv(sizes[kk] as u64 % g.p))).collect();
            rows.push((d, values));
        }
        rows.sort_by_key(|(d, v)| {
            let trivial = v.iter().all(|&x| x == 1);
            (!trivial, *d, v.iter().map(|&x| lift(g.p, x)).collect::<Vec<_>>())
        });
        let table = CharTable {
            p: g.p,
            classes: cls.members.iter().map(|m| (m[0], m.len())).collect(),
            dims: rows.iter().map(|(d, _)| *d).collect(),
            values: rows.into_iter().map(|(_, v)| v).collect(),
            inverse_class: cls.inverse_class.clone(),
        };
        check_orthogonality(&table, n)?;
        return Ok(table);
    }
    Err(Error::SplittingFailure)
}

fn check_orthogonality(t: &CharTable, order: usize) -> Result<()> {
    let f = Fp(t.p);
    let k = t.len();
    for i in 0..k {
        for j in 0..k {
            let expected = if i == j { order as u64 % t.p } else { 0 };
            if t.pairing(&t.values[i], &t.values[j]) != expected {
                return Err(Error::SplittingFailure);
            }
        }
    }
    // column orthogonality: sum_chi chi(K) chi(L^-1) = delta |C(K)|
    for a in 0..k {
        for b in 0..k {
            let s = (0..k).fold(0, |acc, i| f.add(acc, f.mul(t.values[i][a], t.values[i][t.inverse_class[b]])));
            let expected = if a == b { (order / t.classes[a].1) as u64 % t.p } else { 0 };
            if s != expected {
                return Err(Error::SplittingFailure);
            }
        }
    }
    if t.dims.iter().map(|d| d * d).sum::<u64>() != order as u64 {
        return Err(Error::SplittingFailure);
    }
    Ok(())
}

/// Decomposition matrix `B` of `- (x) rho`, its `C = 2I - B`, and the
/// labeling of rows by character indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayResult {
    pub b: IntMatrix,
    pub c: IntMatrix,
    /// Character (or restricted character) index at each position.
    pub labels: Vec<usize>,
    pub dims: Vec<u64>,
}

/// Relabeling that makes `b` canonical: position 0 stays (the trivial
/// representation) and each next position takes the vertex with the least
/// key `(dim, -b[v][u_0], -b[u_0][v], ..., -b[v][v])` over the placed `u_j`,
/// ties explored exhaustively. The result only depends on the labeled
/// graph, not on how the characters were enumerated.
fn canonical_labeling(b: &IntMatrix, dims: &[u64]) -> Vec<usize> {
    let n = b.len();
    let key = |placed: &[usize], v: usize| -> Vec<i64> {
        let mut k = vec![dims[v] as i64];
        for &u in placed {
            k.push(-b[v][u]);
            k.push(-b[u][v]);
        }
        k.push(-b[v][v]);
        k
    };
    let mut partials: Vec<Vec<usize>> = vec![vec![0]];
    while partials[0].len() < n {
        let mut best: Option<Vec<i64>> = None;
        let mut next = Vec::new();
        for placed in &partials {
            for v in 0..n {
                if placed.contains(&v) {
                    continue;
                }
                let k = key(placed, v);
                match best.as_ref().map(|b| k.cmp(b)) {
                    Some(std::cmp::Ordering::Greater) => continue,
                    Some(std::cmp::Ordering::Less) | None => {
                        best = Some(k);
                        next.clear();
                    }
                    Some(std::cmp::Ordering::Equal) => {}
                }
                let mut extended = placed.clone();
                extended.push(v);
                next.push(extended);
            }
        }
        partials = next;
    }
    // all survivors give the same matrix
    partials.swap_remove(0)
}

fn finish(b: IntMatrix, dims: Vec<u64>) -> McKayResult {
    let order = canonical_labeling(&b, &dims);
    let n = b.len();
    let b: IntMatrix = (0..n).map(|i| (0..n).map(|j| b[order[i]][order[j]]).collect()).collect();
    let c = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 2 - b[i][j] } else { -b[i][j] }).collect())
        .collect();
    McKayResult { b, c, dims: order.iter().map(|&i| dims[i]).collect(), labels: order }
}

fn lift_multiplicity(p: u64, x: u64, what: &str) -> Result<i64> {
    if x >= MULTIPLICITY_BOUND {
        return Err(Error::LiftOutOfRange(format!("{what} lifts to {x} (p = {p})")));
    }
    Ok(x as i64)
}

fn natural_character(g: &GroupOverPrimeField, t: &CharTable) -> Vec<u64> {
    t.classes.iter().map(|&(rep, _)| g.trace(rep)).collect()
}

/// `b_ij = |G|^-1 sum_K |K| chi_j(K) rho(K) chi_i(K^-1)`.
pub fn mckay_matrix(g: &GroupOverPrimeField) -> Result<McKayResult> {
    let t = character_table(g)?;
    let f = Fp(g.p);
    let rho = natural_character(g, &t);
    let inv_order = f.inv(g.order() as u64 % g.p);
    let k = t.len();
    let mut b = vec![vec![0i64; k]; k];
    for (i, row) in b.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let prod: Vec<u64> = (0..k).map(|kk| f.mul(t.values[j][kk], rho[kk])).collect();
            let x = f.mul(inv_order, t.pairing(&prod, &t.values[i]));
            *entry = lift_multiplicity(g.p, x, &format!("b[{i}][{j}]"))?;
        }
    }
    Ok(finish(b, t.dims.clone()))
}

/// Index in `h` of every element of `g`, matched as matrices.
pub fn embedding(g: &GroupOverPrimeField, h: &GroupOverPrimeField) -> Result<Vec<usize>> {
    if g.p != h.p {
        return Err(Error::BadPrime { p: g.p, reason: format!("groups built over different primes {} and {}", g.p, h.p) });
    }
    g.elements.iter().map(|m| h.index_of(m).ok_or(Error::NotASubgroup)).collect()
}

pub fn is_normal(g: &GroupOverPrimeField, h: &GroupOverPrimeField) -> Result<bool> {
    let emb = embedding(g, h)?;
    let mut inside = vec![false; h.order()];
    for &e in &emb {
        inside[e] = true;
    }
    Ok((0..h.order()).all(|x| emb.iter().all(|&y| inside[h.mul(h.mul(x, y), h.inv(x))])))
}

/// Decomposes `chi_j|_G (x) rho` over the distinct restrictions of the
/// irreducible characters of `h` to `g`.
pub fn slodowy_matrix(h: &GroupOverPrimeField, g: &GroupOverPrimeField) -> Result<McKayResult> {
    if !is_normal(g, h)? {
        return Err(Error::NotNormal);
    }
    let emb = embedding(g, h)?;
    let f = Fp(g.p);
    let th = character_table(h)?;
    let tg = character_table(g)?;
    let h_cls = conjugacy_classes(h);
    let fusion: Vec<usize> = tg.classes.iter().map(|&(rep, _)| h_cls.class_of[emb[rep]]).collect();
    let mut restricted: Vec<Vec<u64>> = Vec::new();
    let mut dims = Vec::new();
    for (row, &d) in th.values.iter().zip(&th.dims) {
        let r: Vec<u64> = fusion.iter().map(|&c| row[c]).collect();
        if !restricted.contains(&r) {
            restricted.push(r);
            dims.push(d);
        }
    }
    let n = restricted.len();
    let rho = natural_character(g, &tg);
    let classes = tg.len();
    // columns chi_0..chi_n | target, one row per G-class
    let basis: Vec<Vec<u64>> = (0..classes).map(|k| restricted.iter().map(|r| r[k]).collect()).collect();
    if nullspace(f, &basis).len() != 0 {
        return Err(Error::RestrictionsDependent);
    }
    let mut b = vec![vec![0i64; n]; n];
    for j in 0..n {
        let target: Vec<u64> = (0..classes).map(|k| f.mul(restricted[j][k], rho[k])).collect();
        let coeffs = solve(f, &basis, &target).ok_or(Error::NonIntegralDecomposition)?;
        for (i, &x) in coeffs.iter().enumerate() {
            b[i][j] = lift_multiplicity(g.p, x, &format!("b[{i}][{j}]")).map_err(|_| Error::NonIntegralDecomposition)?;
        }
    }
    Ok(finish(b, dims))
}

/// Unique solution of `a x = y` (a has full column rank), or `None` when
/// the system is inconsistent.
fn solve(f: Fp, a: &[Vec<u64>], y: &[u64]) -> Option<Vec<u64>> {
    let rows = a.len();
    let cols = a[0].len();
    let mut aug: Vec<Vec<u64>> = a.iter().zip(y).map(|(r, &v)| r.iter().copied().chain([v]).collect()).collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let pr = (r..rows).find(|&i| aug[i][c] != 0)?;
        aug.swap(r, pr);
        let inv = f.inv(aug[r][c]);
        for x in aug[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && aug[i][c] != 0 {
                let factor = aug[i][c];
                for k in 0..=cols {
                    aug[i][k] = f.sub(aug[i][k], f.mul(factor, aug[r][k]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    Some((0..cols).map(|c| aug[c][cols]).collect())
}

/// `dim S^m(C^2)^G` for `m = 0..=max`, using `chi_{S^m}(g) = U_m(tr g / 2)`,
/// i.e. `h_m = tr(g) h_{m-1} - h_{m-2}`.
pub fn invariant_poincare(g: &GroupOverPrimeField, max: usize) -> Result<SeriesPrefix> {
    if g.p <= max as u64 + 2 {
        return Err(Error::BadPrime { p: g.p, reason: format!("p <= {} + 2", max) });
    }
    let f = Fp(g.p);
    let mut totals = vec![0u64; max + 1];
    for a in 0..g.order() {
        let tr = g.trace(a);
        let (mut prev, mut cur) = (0u64, 1u64);
        for total in totals.iter_mut() {
            *total = f.add(*total, cur);
            let next = f.sub(f.mul(tr, cur), prev);
            prev = cur;
            cur = next;
        }
    }
    let inv_order = f.inv(g.order() as u64 % g.p);
    let mut out = Vec::with_capacity(max + 1);
    for (m, &t) in totals.iter().enumerate() {
        let d = f.mul(t, inv_order);
        if d > m as u64 + 1 {
            return Err(Error::LiftOutOfRange(format!("dim of degree {m} invariants lifts to {d}")));
        }
        out.push(BigInt::from(d));
    }
    Ok(SeriesPrefix(out))
}

/// Which affine Cartan matrix `c` is, up to simultaneous permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineIdentification {
    pub diagram: DiagramSpec,
    /// True when `c^t` (rather than `c`) matches the builder matrix.
    pub transposed: bool,
    /// `c'[i][j] = builder[perm[i]][perm[j]]` for `c'` = `c` or `c^t`.
    pub permutation: Vec<usize>,
}

impl fmt::Display for AffineIdentification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.diagram, if self.transposed { " (transposed)" } else { "" })
    }
}

fn affine_candidates(size: usize) -> Vec<DiagramSpec> {
    use DiagramSpec::*;
    let n = size.saturating_sub(1);
    let mut v = Vec::new();
    if n >= 1 {
        v.push(AffineA(n));
    }
    if n >= 4 {
        v.push(AffineD(n));
    }
    if (6..=8).contains(&n) {
        v.push(AffineE(n));
    }
    if n >= 2 {
        v.push(AffineB(n));
        v.push(AffineC(n));
    }
    if n == 4 {
        v.push(AffineF4);
    }
    if n == 2 {
        v.push(AffineG2);
    }
    v
}

fn transpose(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

/// Matches `c` (then `c^t`) against one builder diagram.
pub fn match_affine(c: &IntMatrix, spec: &DiagramSpec) -> Option<AffineIdentification> {
    let built = build_diagram(spec).ok()?;
    for transposed in [false, true] {
        let m = if transposed { transpose(c) } else { c.clone() };
        if let Some(perm) = find_isomorphism(&m, built.matrix()) {
            return Some(AffineIdentification { diagram: spec.clone(), transposed, permutation: perm });
        }
    }
    None
}

/// First builder diagram matching `c`, trying `c` before `c^t`.
pub fn identify_affine(c: &IntMatrix) -> Option<AffineIdentification> {
    for transposed in [false, true] {
        let m = if transposed { transpose(c) } else { c.clone() };
        for spec in affine_candidates(c.len()) {
            let built = build_diagram(&spec).ok()?;
            if let Some(perm) = find_isomorphism(&m, built.matrix()) {
                return Some(AffineIdentification { diagram: spec, transposed, permutation: perm });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(spec: GroupSpec) -> GroupOverPrimeField {
        build_group(spec, select_prime(&[spec])).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(build_group(GroupSpec::Cyclic(2), 1201).unwrap().order(), 2);
        let q8 = build_group(GroupSpec::BinDihedral(2), 1201).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.elements().iter().filter(|m| (m[0] + m[3]) % 1201 == 0).count(), 6);
        assert_eq!(build_group(GroupSpec::BinTetrahedral, 1201).unwrap().order(), 24);
        assert_eq!(build_group(GroupSpec::BinOctahedral, 1201).unwrap().order(), 48);
        assert_eq!(build_group(GroupSpec::BinIcosahedral, 1201).unwrap().order(), 120);
        assert_eq!(build_group(GroupSpec::BinDihedral(1), 1201).unwrap().order(), 4);
    }

    #[test]
    fn prime_checks() {
        assert!(matches!(build_group(GroupSpec::Cyclic(2), 1200), Err(Error::BadPrime { .. })));
        assert!(build_group(GroupSpec::Cyclic(2), 241).is_ok());
        assert!(matches!(build_group(GroupSpec::Cyclic(7), 1201), Err(Error::BadPrime { .. })));
        assert_eq!(select_prime(&[GroupSpec::BinIcosahedral]), 1201);
        assert_eq!(secondary_prime(&[GroupSpec::BinIcosahedral]), 2521);
        let p = select_prime(&[GroupSpec::BinDihedral(7)]);
        assert!(check_prime(p, &[GroupSpec::BinDihedral(7)]).is_ok());
    }

    #[test]
    fn classes() {
        assert_eq!(conjugacy_classes(&group(GroupSpec::Cyclic(2))).len(), 2);
        let mut sizes = conjugacy_classes(&group(GroupSpec::BinDihedral(2))).sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(conjugacy_classes(&group(GroupSpec::BinIcosahedral)).len(), 9);
    }

    #[test]
    fn tables() {
        let t = character_table(&group(GroupSpec::Cyclic(2))).unwrap();
        assert_eq!(t.values, vec![vec![1, 1], vec![1, 1200]]);
        assert_eq!(character_table(&group(GroupSpec::BinDihedral(2))).unwrap().dims, vec![1, 1, 1, 1, 2]);
        assert_eq!(character_table(&group(GroupSpec::BinTetrahedral)).unwrap().dims, vec![1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(
            character_table(&group(GroupSpec::BinIcosahedral)).unwrap().dims,
            vec![1, 2, 2, 3, 3, 4, 4, 5, 6]
        );
    }

    #[test]
    fn mckay_examples() {
        let r = mckay_matrix(&group(GroupSpec::Cyclic(2))).unwrap();
        assert_eq!(r.b, vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(r.c, build_diagram(&DiagramSpec::AffineA(1)).unwrap().matrix().clone());
        let r = mckay_matrix(&group(GroupSpec::Cyclic(4))).unwrap();
        assert_eq!(identify_affine(&r.c).unwrap().diagram, DiagramSpec::AffineA(3));
        let r = mckay_matrix(&group(GroupSpec::BinTetrahedral)).unwrap();
        assert_eq!(identify_affine(&r.c).unwrap().diagram, DiagramSpec::AffineE(6));
        let r = mckay_matrix(&group(GroupSpec::BinIcosahedral)).unwrap();
        assert_eq!(identify_affine(&r.c).unwrap().diagram, DiagramSpec::AffineE(8));
    }

    #[test]
    fn slodowy_examples() {
        let p = 1201;
        let b = |s| build_group(s, p).unwrap();
        let check = |h, g, spec: DiagramSpec| {
            let r = slodowy_matrix(&b(h), &b(g)).unwrap();
            let id = match_affine(&r.c, &spec).unwrap();
            assert!(id.transposed, "{spec}");
            assert!(match_affine(&r.c, &spec).is_some());
        };
        check(GroupSpec::BinDihedral(2), GroupSpec::Cyclic(4), DiagramSpec::AffineC(2));
        check(GroupSpec::BinOctahedral, GroupSpec::BinTetrahedral, DiagramSpec::AffineF4);
        check(GroupSpec::BinTetrahedral, GroupSpec::BinDihedral(2), DiagramSpec::AffineG2);
        check(GroupSpec::BinDihedral(3), GroupSpec::Cyclic(6), DiagramSpec::AffineC(3));
        check(GroupSpec::BinDihedral(6), GroupSpec::BinDihedral(3), DiagramSpec::AffineB(4));
        let r = slodowy_matrix(&b(GroupSpec::BinOctahedral), &b(GroupSpec::BinTetrahedral)).unwrap();
        assert_eq!(r.c.len(), 5);
        assert!(matches!(
            slodowy_matrix(&b(GroupSpec::BinTetrahedral), &b(GroupSpec::Cyclic(4))),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn normality() {
        let p = 1201;
        let t = build_group(GroupSpec::BinTetrahedral, p).unwrap();
        let c2 = build_group(GroupSpec::Cyclic(2), p).unwrap();
        assert!(is_normal(&c2, &t).unwrap());
        let q8 = build_group(GroupSpec::BinDihedral(2), p).unwrap();
        assert!(is_normal(&build_group(GroupSpec::Cyclic(4), p).unwrap(), &q8).unwrap());
        // our Cyclic(3) is diagonal, T~ contains no nontrivial diagonal
        // element of order 3, so build an order-3 subgroup from a T~ element
        let a = (0..t.order()).find(|&a| t.element_order(a) == 3).unwrap();
        let sub = GroupOverPrimeField {
            spec: GroupSpec::Cyclic(3),
            p,
            elements: vec![t.elements()[0], t.elements()[a], t.elements()[t.mul(a, a)]],
            index: HashMap::new(),
            table: vec![],
            inverse: vec![],
            orders: vec![],
        };
        assert!(!is_normal(&sub, &t).unwrap());
        assert!(matches!(is_normal(&build_group(GroupSpec::Cyclic(3), p).unwrap(), &t), Err(Error::NotASubgroup)));
    }

    #[test]
    fn invariants() {
        let s = |spec, m| invariant_poincare(&group(spec), m).unwrap().to_i64().unwrap();
        assert_eq!(s(GroupSpec::Cyclic(2), 6), vec![1, 0, 3, 0, 5, 0, 7]);
        assert_eq!(s(GroupSpec::Cyclic(4), 8), vec![1, 0, 1, 0, 3, 0, 3, 0, 5]);
        assert_eq!(s(GroupSpec::BinDihedral(2), 8), vec![1, 0, 0, 0, 2, 0, 1, 0, 3]);
    }

    #[test]
    fn canonical_labels_ignore_input_order() {
        let b = vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![1, 0, 1, 0]];
        let dims = vec![1, 1, 1, 1];
        let r1 = finish(b.clone(), dims.clone());
        let perm = [0, 2, 1, 3];
        let b2: IntMatrix = (0..4).map(|i| (0..4).map(|j| b[perm[i]][perm[j]]).collect()).collect();
        assert_eq!(finish(b2, dims).b, r1.b);
    }
}
