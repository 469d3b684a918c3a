//! Generalized Cartan data and bilinear lattices: reflections, Coxeter
//! elements, standard diagram builders, folding along a diagram involution,
//! and the Milnor-Orlik monodromy formula.
//!
//! Conventions: `C[i][j] = 2<e_i, e_j> / <e_i, e_i>` and the reflection
//! `s_i(e_j) = e_j - C[i][j] e_i`. The Coxeter element for the order
//! `o` is `s_{o(1)} ... s_{o(n)}`. Solid edges have intersection number `+1`
//! and vanishing cycles have self-intersection `-2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{ratfunc_to_frame, FrameShape};
use crate::poly::{charpoly, pencil_determinant, qmatrix_from_bigint, IntPoly, RatFunc};

pub type IntMatrix = Vec<Vec<i64>>;

/// Largest diagram accepted by [`ordering_search`].
pub const ORDERING_SEARCH_LIMIT: usize = 12;

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::InvalidSpec(format!("order has {} entries, expected {n}", order.len())));
    }
    for &o in order {
        if o >= n || seen[o] {
            return Err(Error::InvalidSpec(format!("order {order:?} is not a permutation")));
        }
        seen[o] = true;
    }
    Ok(())
}

fn check_square(m: &IntMatrix) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidSpec("matrix is not square".into()));
    }
    Ok(n)
}

/// Square integer matrix with diagonal 2 plus a reflection order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    matrix: IntMatrix,
    order: Vec<usize>,
}

impl CartanData {
    pub fn new(matrix: IntMatrix, order: Vec<usize>) -> Result<Self> {
        let n = check_square(&matrix)?;
        if let Some(i) = (0..n).find(|&i| matrix[i][i] != 2) {
            return Err(Error::InvalidSpec(format!("diagonal entry {i} is not 2")));
        }
        check_permutation(&order, n)?;
        Ok(CartanData { matrix, order })
    }

    pub fn with_identity_order(matrix: IntMatrix) -> Result<Self> {
        let n = matrix.len();
        Self::new(matrix, (0..n).collect())
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn with_order(&self, order: Vec<usize>) -> Result<Self> {
        Self::new(self.matrix.clone(), order)
    }

    /// Arrow reversal; the reflection order is kept.
    pub fn transpose(&self) -> Self {
        let n = self.size();
        let matrix = (0..n).map(|i| (0..n).map(|j| self.matrix[j][i]).collect()).collect();
        CartanData { matrix, order: self.order.clone() }
    }

    /// Principal submatrix on `vertices` (in that order), identity order.
    pub fn restrict(&self, vertices: &[usize]) -> Self {
        let matrix = vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| self.matrix[i][j]).collect())
            .collect();
        CartanData { matrix, order: (0..vertices.len()).collect() }
    }

    /// Undirected edges `i < j` with `C[i][j]` or `C[j][i]` nonzero.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.matrix[i][j] != 0 || self.matrix[j][i] != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// True when the underlying graph has no cycles.
    pub fn is_forest(&self) -> bool {
        let n = self.size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (i, j) in self.edges() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// Matrix of `s_i` in the basis `e_1..e_n` (columns are images).
    pub fn reflection(&self, i: usize) -> Vec<Vec<BigInt>> {
        let n = self.size();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|r| (0..n).map(|c| BigInt::from((r == c) as i64)).collect())
            .collect();
        for j in 0..n {
            m[i][j] -= BigInt::from(self.matrix[i][j]);
        }
        m
    }

    /// `s_{o(1)} s_{o(2)} ... s_{o(n)}`.
    pub fn coxeter_element(&self) -> Vec<Vec<BigInt>> {
        let n = self.size();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|r| (0..n).map(|c| BigInt::from((r == c) as i64)).collect())
            .collect();
        for &i in &self.order {
            // right multiplication by s_i only touches columns
            for row in m.iter_mut() {
                let ci = row[i].clone();
                if ci.is_zero() {
                    continue;
                }
                for (j, x) in row.iter_mut().enumerate() {
                    if j != i && self.matrix[i][j] != 0 {
                        *x -= &ci * self.matrix[i][j];
                    }
                }
                row[i] = -ci;
            }
        }
        m
    }

    /// `det(tI - c)` for the Coxeter element `c`.
    pub fn coxeter_polynomial(&self) -> Result<IntPoly> {
        charpoly(&qmatrix_from_bigint(&self.coxeter_element()))
    }

    /// Frame shape of the Coxeter polynomial.
    pub fn coxeter_frame(&self) -> Result<FrameShape> {
        let p = self.coxeter_polynomial()?;
        ratfunc_to_frame(&RatFunc::from_poly(p), None)
    }

    /// Relabels vertices: vertex `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.size();
        check_permutation(perm, n)?;
        let mut matrix = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                matrix[perm[i]][perm[j]] = self.matrix[i][j];
            }
        }
        let order = self.order.iter().map(|&o| perm[o]).collect();
        Ok(CartanData { matrix, order })
    }
}

pub fn coxeter_charpoly(c: &CartanData) -> Result<FrameShape> {
    c.coxeter_frame()
}

/// Symmetric Gram matrix with negative even diagonal, a reflection order,
/// and an optional involution of the basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearLattice {
    gram: IntMatrix,
    order: Vec<usize>,
    involution: Option<Vec<usize>>,
}

impl BilinearLattice {
    pub fn new(gram: IntMatrix, order: Vec<usize>, involution: Option<Vec<usize>>) -> Result<Self> {
        let n = check_square(&gram)?;
        for i in 0..n {
            let d = gram[i][i];
            if d >= 0 || d % 2 != 0 {
                return Err(Error::InvalidLattice(format!("diagonal entry {i} is {d}")));
            }
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!("not symmetric at ({i}, {j})")));
                }
                if (2 * gram[i][j]) % d != 0 {
                    return Err(Error::NonIntegralCartan { i, j });
                }
            }
        }
        check_permutation(&order, n)?;
        if let Some(s) = &involution {
            check_permutation(s, n).map_err(|_| Error::NotAnInvolution(format!("{s:?}")))?;
            if let Some(i) = (0..n).find(|&i| s[s[i]] != i) {
                return Err(Error::NotAnInvolution(format!("sigma^2({i}) != {i}")));
            }
            for i in 0..n {
                for j in 0..n {
                    if gram[s[i]][s[j]] != gram[i][j] {
                        return Err(Error::InvolutionNotIsometry(i, j));
                    }
                }
            }
        }
        Ok(BilinearLattice { gram, order, involution })
    }

    pub fn size(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn involution(&self) -> Option<&[usize]> {
        self.involution.as_deref()
    }

    pub fn with_involution(&self, involution: Option<Vec<usize>>) -> Result<Self> {
        Self::new(self.gram.clone(), self.order.clone(), involution)
    }

    pub fn with_order(&self, order: Vec<usize>) -> Result<Self> {
        Self::new(self.gram.clone(), order, self.involution.clone())
    }

    /// Lattice `-C` of a symmetric Cartan matrix (diagonal `-2`).
    pub fn from_symmetric_cartan(c: &CartanData) -> Result<Self> {
        let t = c.transpose();
        if t.matrix() != c.matrix() {
            return Err(Error::InvalidLattice("Cartan matrix is not symmetric".into()));
        }
        let gram = c.matrix().iter().map(|r| r.iter().map(|&x| -x).collect()).collect();
        Self::new(gram, c.order().to_vec(), None)
    }

    /// Principal sublattice on `vertices`, identity order, no involution.
    pub fn restrict(&self, vertices: &[usize]) -> Self {
        let gram = vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| self.gram[i][j]).collect())
            .collect();
        BilinearLattice { gram, order: (0..vertices.len()).collect(), involution: None }
    }
}

/// `C[i][j] = 2 gram[i][j] / gram[i][i]`.
pub fn to_cartan(l: &BilinearLattice) -> Result<CartanData> {
    let n = l.size();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (q, r) = (2 * l.gram[i][j]).div_rem(&l.gram[i][i]);
            if r != 0 {
                return Err(Error::NonIntegralCartan { i, j });
            }
            m[i][j] = q;
        }
    }
    CartanData::new(m, l.order.clone())
}

/// Coxeter polynomial of a symmetric lattice through the determinant
/// formula `det(-V^t - tV)` with `gram = -V^t - V`, `V` upper unitriangular
/// in the reflection order. Only valid when every diagonal entry is `-2`.
fn coxeter_polynomial_by_determinant(l: &BilinearLattice) -> Result<IntPoly> {
    let n = l.size();
    if (0..n).any(|i| l.gram[i][i] != -2) {
        return Err(Error::InvalidLattice("determinant route needs diagonal -2".into()));
    }
    // V in the permuted basis e_{o(1)}, ..., e_{o(n)}
    let o = &l.order;
    let v = |a: usize, b: usize| -> i64 {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => -l.gram[o[a]][o[b]],
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Greater => 0,
        }
    };
    let a0: Vec<Vec<BigInt>> =
        (0..n).map(|a| (0..n).map(|b| BigInt::from(-v(b, a))).collect()).collect();
    let a1: Vec<Vec<BigInt>> =
        (0..n).map(|a| (0..n).map(|b| BigInt::from(-v(a, b))).collect()).collect();
    let p = pencil_determinant(&a0, &a1)?;
    Ok(if n % 2 == 1 { -&p } else { p })
}

/// Output of [`fold`]: the anti-invariant lattice in the basis
/// `(d-hat_1..d-hat_mu0, d'_1..d'_mu1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldResult {
    pub folded: BilinearLattice,
    pub mu0: usize,
    pub mu1: usize,
    /// Original index of the representative of each swapped pair.
    pub representatives: Vec<usize>,
    /// Original index of each fixed vertex.
    pub fixed: Vec<usize>,
}

/// Blocks of the Gram matrix in the basis `(d1 | d2 | d')` where
/// `d1_i = e_{rep_i}`, `d2_i = -e_{sigma(rep_i)}` and `d'` are the fixed
/// vectors, so that `sigma_* = -sigma` swaps `d1, d2` and negates `d'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryBlocks {
    pub a: IntMatrix,
    pub a_prime: IntMatrix,
    pub b: IntMatrix,
    pub representatives: Vec<usize>,
    pub images: Vec<usize>,
    pub fixed: Vec<usize>,
}

fn choose_representatives(l: &BilinearLattice, sigma: &[usize]) -> Result<Vec<usize>> {
    let pairs: Vec<usize> = (0..l.size()).filter(|&i| sigma[i] > i).collect();
    // <rep_i, sigma(rep_j)> must vanish for all i, j
    fn go(
        l: &BilinearLattice,
        sigma: &[usize],
        pairs: &[usize],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let k = chosen.len();
        if k == pairs.len() {
            return true;
        }
        for cand in [pairs[k], sigma[pairs[k]]] {
            let ok = std::iter::once(cand)
                .chain(chosen.iter().copied())
                .all(|r| l.gram[cand][sigma[r]] == 0 && l.gram[r][sigma[cand]] == 0);
            if ok {
                chosen.push(cand);
                if go(l, sigma, pairs, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if go(l, sigma, &pairs, &mut chosen) {
        Ok(chosen)
    } else {
        Err(Error::BlockStructureViolated(
            "no choice of representatives makes <d1_i, d2_j> vanish".into(),
        ))
    }
}

pub fn boundary_blocks(l: &BilinearLattice) -> Result<BoundaryBlocks> {
    let sigma = l
        .involution()
        .ok_or_else(|| Error::BlockStructureViolated("lattice has no involution".into()))?;
    let reps = choose_representatives(l, sigma)?;
    let images: Vec<usize> = reps.iter().map(|&r| sigma[r]).collect();
    let fixed: Vec<usize> = (0..l.size()).filter(|&i| sigma[i] == i).collect();
    let g = &l.gram;
    let block = |rows: &[usize], cols: &[usize]| -> IntMatrix {
        rows.iter().map(|&i| cols.iter().map(|&j| g[i][j]).collect()).collect()
    };
    let a = block(&reps, &reps);
    let a_prime = block(&fixed, &fixed);
    let b = block(&reps, &fixed);
    // d2 = -e_sigma: <d2_i, d2_j> = A, <d2_i, d'_j> = -B, <d1_i, d2_j> = 0
    let d2d2 = block(&images, &images);
    let d2f: IntMatrix = block(&images, &fixed)
        .into_iter()
        .map(|r| r.into_iter().map(|x| -x).collect())
        .collect();
    let neg_b: IntMatrix = b.iter().map(|r| r.iter().map(|&x| -x).collect()).collect();
    if d2d2 != a || d2f != neg_b {
        return Err(Error::BlockStructureViolated("sign pattern (B, -B) fails".into()));
    }
    if let Some(i) = fixed.iter().find(|&&i| g[i][i] != -2) {
        return Err(Error::BlockStructureViolated(format!(
            "fixed vertex {i} has self-pairing {}",
            g[*i][*i]
        )));
    }
    Ok(BoundaryBlocks { a, a_prime, b, representatives: reps, images, fixed })
}

/// Anti-invariant lattice `H^-` with `<d^_i, d^_j> = 2<d1_i, d1_j>` (so
/// `<d^_i, d^_i> = -4`), `<d^_i, d'_j> = 2<d1_i, d'_j>` and the `d'`
/// pairings unchanged. The folded reflection order is the original order
/// restricted to representatives and fixed vertices.
pub fn fold(l: &BilinearLattice) -> Result<FoldResult> {
    if l.involution().is_none() {
        return Err(Error::NotAnInvolution("lattice has no involution".into()));
    }
    let blocks = boundary_blocks(l)?;
    let mu0 = blocks.representatives.len();
    let mu1 = blocks.fixed.len();
    let n = mu0 + mu1;
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..mu0 {
        for j in 0..mu0 {
            gram[i][j] = 2 * blocks.a[i][j];
        }
        for j in 0..mu1 {
            gram[i][mu0 + j] = 2 * blocks.b[i][j];
            gram[mu0 + j][i] = 2 * blocks.b[i][j];
        }
    }
    for i in 0..mu1 {
        for j in 0..mu1 {
            gram[mu0 + i][mu0 + j] = blocks.a_prime[i][j];
        }
    }
    let sigma = l.involution().unwrap();
    let mut position = BTreeMap::new();
    for (k, &r) in blocks.representatives.iter().enumerate() {
        position.insert(r, k);
        position.insert(sigma[r], k);
    }
    for (k, &f) in blocks.fixed.iter().enumerate() {
        position.insert(f, mu0 + k);
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = BTreeSet::new();
    for &o in l.order() {
        let p = position[&o];
        if seen.insert(p) {
            order.push(p);
        }
    }
    let folded = BilinearLattice::new(gram, order, None)?;
    Ok(FoldResult {
        folded,
        mu0,
        mu1,
        representatives: blocks.representatives,
        fixed: blocks.fixed,
    })
}

/// Polynomials behind the factorization `phi_X = phi_1 * phi_fbar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldCheck {
    pub phi_x: IntPoly,
    pub phi_1: IntPoly,
    pub phi_f: IntPoly,
    /// `phi_X` again, through the upper-triangular determinant formula
    /// (present when the lattice has diagonal `-2`).
    pub phi_x_by_determinant: Option<IntPoly>,
    pub fold: FoldResult,
    pub holds: bool,
}

/// Computes `phi_X` on the basis `(d1 | d2 | d')`, `phi_1` on `d1` and
/// `phi_fbar` on the folded lattice, and tests `phi_X = phi_1 * phi_fbar`.
pub fn fold_check(l: &BilinearLattice) -> Result<FoldCheck> {
    let folded = fold(l)?;
    let mut basis = folded.representatives.clone();
    let sigma = l.involution().unwrap();
    basis.extend(folded.representatives.iter().map(|&r| sigma[r]));
    basis.extend(folded.fixed.iter().copied());
    let ordered = l.restrict(&basis).with_involution(None)?;
    let phi_x = to_cartan(&ordered)?.coxeter_polynomial()?;
    let reps: Vec<usize> = (0..folded.mu0).collect();
    let phi_1 = to_cartan(&ordered.restrict(&reps))?.coxeter_polynomial()?;
    let phi_f = to_cartan(&folded.folded.with_order((0..folded.mu0 + folded.mu1).collect())?)?
        .coxeter_polynomial()?;
    let phi_x_by_determinant = coxeter_polynomial_by_determinant(&ordered).ok();
    let holds = phi_x == &phi_1 * &phi_f
        && phi_x_by_determinant.as_ref().is_none_or(|p| *p == phi_x);
    Ok(FoldCheck { phi_x, phi_1, phi_f, phi_x_by_determinant, fold: folded, holds })
}

/// `(t^p - 1)(t^q - 1)(t^r - 1) / (t - 1)`.
pub fn t_charpoly(p: u64, q: u64, r: u64) -> FrameShape {
    FrameShape::from_pairs([(p, 1), (q, 1), (r, 1), (1, -1)])
}

/// Characteristic polynomial of the monodromy of a weighted homogeneous
/// isolated singularity in three variables: with `d / q_i = u_i / v_i` in
/// lowest terms, the divisor `prod_i (Lambda_{u_i} / v_i - 1)` expanded with
/// `Lambda_a Lambda_b = gcd(a, b) Lambda_{lcm(a, b)}`.
pub fn milnor_orlik(weights: [u64; 3], d: u64) -> Result<FrameShape> {
    if weights.iter().any(|&q| q == 0) || weights.iter().any(|&q| q > d) {
        return Err(Error::InvalidSpec(format!("weights {weights:?} with degree {d}")));
    }
    // divisor: Lambda index -> rational coefficient; Lambda_1 is the unit
    let mut div: BTreeMap<u64, BigRational> = BTreeMap::new();
    div.insert(1, BigRational::one());
    for &q in &weights {
        let g = d.gcd(&q);
        let (u, v) = (d / g, q / g);
        let factor = [
            (u, BigRational::new(BigInt::one(), BigInt::from(v))),
            (1, -BigRational::one()),
        ];
        let mut next: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (&a, ca) in &div {
            for (b, cb) in &factor {
                let key = a.lcm(b);
                let coeff = ca * cb * BigRational::from_integer(BigInt::from(a.gcd(b)));
                *next.entry(key).or_insert_with(BigRational::zero) += coeff;
            }
        }
        next.retain(|_, c| !c.is_zero());
        div = next;
    }
    let mut pairs = Vec::new();
    for (k, c) in div {
        if !c.is_integer() {
            return Err(Error::NonIntegralDivisor(k));
        }
        let c: i64 = c.to_integer().try_into().map_err(|_| Error::NonIntegralDivisor(k))?;
        pairs.push((k, c));
    }
    let frame = FrameShape::from_pairs(pairs);
    if !frame.is_polynomial() {
        return Err(Error::NonIntegralDivisor(0));
    }
    Ok(frame)
}

/// Lexicographically first reflection order whose Coxeter frame equals
/// `target`. Orders inducing the same orientation of the diagram give the
/// same Coxeter element, so one linear extension per acyclic orientation is
/// evaluated.
pub fn ordering_search(c: &CartanData, target: &FrameShape) -> Result<Vec<usize>> {
    let n = c.size();
    if n > ORDERING_SEARCH_LIMIT {
        return Err(Error::InvalidSpec(format!("ordering search limited to {ORDERING_SEARCH_LIMIT} vertices")));
    }
    if target.degree() != n as i64 || !target.is_polynomial() {
        return Err(Error::OrderNotFound);
    }
    if c.is_forest() {
        let identity = c.with_order((0..n).collect())?;
        return match identity.coxeter_frame() {
            Ok(f) if &f == target => Ok((0..n).collect()),
            _ => Err(Error::OrderNotFound),
        };
    }
    let edges = c.edges();
    let mut best: Option<Vec<usize>> = None;
    let mut orient = vec![false; edges.len()];
    fn lex_first_extension(n: usize, edges: &[(usize, usize)], orient: &[bool]) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; n];
        let mut succ = vec![Vec::new(); n];
        for (k, &(i, j)) in edges.iter().enumerate() {
            let (a, b) = if orient[k] { (j, i) } else { (i, j) };
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            out.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        (out.len() == n).then_some(out)
    }
    loop {
        if let Some(order) = lex_first_extension(n, &edges, &orient) {
            if best.as_ref().is_none_or(|b| order < *b) {
                let cand = c.with_order(order.clone())?;
                if cand.coxeter_frame().is_ok_and(|f| &f == target) {
                    best = Some(order);
                }
            }
        }
        // next orientation (binary counter)
        let Some(k) = orient.iter().position(|&b| !b) else { break };
        for b in orient.iter_mut().take(k) {
            *b = false;
        }
        orient[k] = true;
    }
    best.ok_or(Error::OrderNotFound)
}

/// Named diagrams accepted by [`build_diagram`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagramSpec {
    A(usize),
    D(usize),
    E(usize),
    AffineA(usize),
    AffineD(usize),
    AffineE(usize),
    B(usize),
    C(usize),
    F4,
    G2,
    AffineB(usize),
    AffineC(usize),
    AffineF4,
    AffineG2,
    T(usize, usize, usize),
    Star(usize, usize, usize),
    Custom { matrix: IntMatrix, order: Vec<usize> },
}

impl fmt::Display for DiagramSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DiagramSpec::*;
        match self {
            A(n) => write!(f, "A({n})"),
            D(n) => write!(f, "D({n})"),
            E(n) => write!(f, "E({n})"),
            AffineA(n) => write!(f, "affineA({n})"),
            AffineD(n) => write!(f, "affineD({n})"),
            AffineE(n) => write!(f, "affineE({n})"),
            B(n) => write!(f, "B({n})"),
            C(n) => write!(f, "C({n})"),
            F4 => write!(f, "F4"),
            G2 => write!(f, "G2"),
            AffineB(n) => write!(f, "affineB({n})"),
            AffineC(n) => write!(f, "affineC({n})"),
            AffineF4 => write!(f, "affineF4"),
            AffineG2 => write!(f, "affineG2"),
            T(p, q, r) => write!(f, "T({p},{q},{r})"),
            Star(p, q, r) => write!(f, "star({p},{q},{r})"),
            Custom { .. } => write!(f, "custom"),
        }
    }
}

impl FromStr for DiagramSpec {
    type Err = Error;

    /// `A(3)`, `A3`, `affineE(6)`, `F4`, `T(3,3,4)`, `star(2,3,5)`, ...
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidSpec(format!("unknown diagram {s:?}"));
        let (head, args) = match s.find('(') {
            Some(i) => {
                let inner = s[i + 1..].strip_suffix(')').ok_or_else(bad)?;
                let args = inner
                    .split(',')
                    .map(|a| a.parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                (s[..i].to_string(), args)
            }
            None => {
                let i = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
                let args = if i < s.len() { vec![s[i..].parse().map_err(|_| bad())?] } else { vec![] };
                (s[..i].to_string(), args)
            }
        };
        use DiagramSpec::*;
        let one = |f: fn(usize) -> DiagramSpec| match args.as_slice() {
            [n] => Ok(f(*n)),
            _ => Err(bad()),
        };
        match (head.as_str(), args.as_slice()) {
            ("A", _) => one(A),
            ("D", _) => one(D),
            ("E", _) => one(E),
            ("B", _) => one(B),
            ("C", _) => one(C),
            ("affineA", _) => one(AffineA),
            ("affineD", _) => one(AffineD),
            ("affineE", _) => one(AffineE),
            ("affineB", _) => one(AffineB),
            ("affineC", _) => one(AffineC),
            ("F", [4]) => Ok(F4),
            ("G", [2]) => Ok(G2),
            ("affineF", [4]) => Ok(AffineF4),
            ("affineG", [2]) => Ok(AffineG2),
            ("T", [p, q, r]) => Ok(T(*p, *q, *r)),
            ("star", [p, q, r]) => Ok(Star(*p, *q, *r)),
            _ => Err(bad()),
        }
    }
}

/// Star with arms of `p-1`, `q-1`, `r-1` vertices. Arms are numbered from
/// the tip toward the center; the center comes last.
pub struct StarLayout {
    pub size: usize,
    pub center: usize,
    pub arms: [Vec<usize>; 3],
}

pub fn star_layout(p: usize, q: usize, r: usize) -> StarLayout {
    let mut next = 0;
    let mut arm = |len: usize| {
        let v: Vec<usize> = (next..next + len).collect();
        next += len;
        v
    };
    let arms = [arm(p - 1), arm(q - 1), arm(r - 1)];
    StarLayout { size: next + 1, center: next, arms }
}

fn star_matrix(p: usize, q: usize, r: usize) -> (IntMatrix, StarLayout) {
    let layout = star_layout(p, q, r);
    let mut m = identity2(layout.size);
    for arm in &layout.arms {
        for w in arm.windows(2) {
            bond(&mut m, w[0], w[1], -1, -1);
        }
        if let Some(&last) = arm.last() {
            bond(&mut m, last, layout.center, -1, -1);
        }
    }
    (m, layout)
}

fn identity2(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect()).collect()
}

fn bond(m: &mut IntMatrix, i: usize, j: usize, cij: i64, cji: i64) {
    m[i][j] = cij;
    m[j][i] = cji;
}

fn chain(n: usize) -> IntMatrix {
    let mut m = identity2(n);
    for i in 1..n {
        bond(&mut m, i - 1, i, -1, -1);
    }
    m
}

fn need(cond: bool, spec: &DiagramSpec) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{spec} is out of range")))
    }
}

/// Standard (affine) Cartan matrices. Non-simply-laced types put the long
/// root in the row with entry `-1` of a double or triple bond; the affine
/// vertex is last except for star-shaped types, which use the star layout.
pub fn build_diagram(spec: &DiagramSpec) -> Result<CartanData> {
    use DiagramSpec::*;
    let matrix = match *spec {
        A(n) => {
            need(n >= 1, spec)?;
            chain(n)
        }
        D(n) => {
            need(n >= 3, spec)?;
            star_matrix(2, 2, n - 2).0
        }
        E(n) => {
            need((6..=8).contains(&n), spec)?;
            star_matrix(2, 3, n - 3).0
        }
        AffineA(n) => {
            need(n >= 1, spec)?;
            if n == 1 {
                vec![vec![2, -2], vec![-2, 2]]
            } else {
                let mut m = chain(n + 1);
                bond(&mut m, 0, n, -1, -1);
                m
            }
        }
        AffineD(n) => {
            need(n >= 4, spec)?;
            // leaves 0, 1 on vertex 2; chain 2..=n-2; leaves n-1, n on n-2
            let mut m = identity2(n + 1);
            bond(&mut m, 0, 2, -1, -1);
            bond(&mut m, 1, 2, -1, -1);
            for i in 3..=n - 2 {
                bond(&mut m, i - 1, i, -1, -1);
            }
            bond(&mut m, n - 1, n - 2, -1, -1);
            bond(&mut m, n, n - 2, -1, -1);
            m
        }
        AffineE(n) => match n {
            6 => star_matrix(3, 3, 3).0,
            7 => star_matrix(2, 4, 4).0,
            8 => star_matrix(2, 3, 6).0,
            _ => return Err(Error::InvalidSpec(format!("{spec} is out of range"))),
        },
        B(n) => {
            need(n >= 2, spec)?;
            let mut m = chain(n);
            bond(&mut m, n - 2, n - 1, -1, -2);
            m
        }
        C(n) => {
            need(n >= 2, spec)?;
            let mut m = chain(n);
            bond(&mut m, n - 2, n - 1, -2, -1);
            m
        }
        F4 => {
            let mut m = chain(4);
            bond(&mut m, 1, 2, -1, -2);
            m
        }
        G2 => vec![vec![2, -1], vec![-3, 2]],
        AffineB(n) => {
            need(n >= 2, spec)?;
            let mut m = build_diagram(&B(n))?.matrix;
            grow(&mut m);
            // long affine root on vertex 1 (a short vertex when n = 2)
            if n == 2 {
                bond(&mut m, n, 1, -1, -2);
            } else {
                bond(&mut m, n, 1, -1, -1);
            }
            m
        }
        AffineC(n) => {
            need(n >= 2, spec)?;
            let mut m = build_diagram(&C(n))?.matrix;
            grow(&mut m);
            bond(&mut m, n, 0, -1, -2);
            m
        }
        AffineF4 => {
            let mut m = build_diagram(&F4)?.matrix;
            grow(&mut m);
            bond(&mut m, 4, 0, -1, -1);
            m
        }
        AffineG2 => {
            let mut m = build_diagram(&G2)?.matrix;
            grow(&mut m);
            bond(&mut m, 2, 0, -1, -1);
            m
        }
        T(p, q, r) => {
            need(p >= 2 && q >= 2 && r >= 2, spec)?;
            let c = to_cartan(&t_lattice(p, q, r))?;
            let frame = c.coxeter_frame()?;
            let expected = t_charpoly(p as u64, q as u64, r as u64);
            if frame != expected {
                return Err(Error::InvalidSpec(format!(
                    "T({p},{q},{r}) realization gives {frame}, expected {expected}"
                )));
            }
            return Ok(c);
        }
        Star(p, q, r) => {
            need(p >= 1 && q >= 1 && r >= 1, spec)?;
            star_matrix(p, q, r).0
        }
        Custom { ref matrix, ref order } => return CartanData::new(matrix.clone(), order.clone()),
    };
    let n = matrix.len();
    let order = match spec {
        AffineA(_) => {
            // bipartite: evens then odds
            (0..n).step_by(2).chain((1..n).step_by(2)).collect()
        }
        _ => (0..n).collect(),
    };
    CartanData::new(matrix, order)
}

fn grow(m: &mut IntMatrix) {
    for row in m.iter_mut() {
        row.push(0);
    }
    let n = m.len();
    let mut last = vec![0; n + 1];
    last[n] = 2;
    m.push(last);
}

/// Vertices of [`t_lattice`]: the star layout of `T(p, q, r)` plus a second
/// central vertex (index `size`).
pub fn t_layout(p: usize, q: usize, r: usize) -> (StarLayout, usize) {
    let layout = star_layout(p, q, r);
    let extra = layout.size;
    (layout, extra)
}

/// Lattice of the `T(p, q, r)` diagram: the star with arms of `p-1`, `q-1`,
/// `r-1` vertices and a doubled center. Both central vertices meet the
/// innermost vertex of each arm and are joined to each other by a double
/// broken line (pairing `-2`).
pub fn t_lattice(p: usize, q: usize, r: usize) -> BilinearLattice {
    let (layout, extra) = t_layout(p, q, r);
    let (m, _) = star_matrix(p, q, r);
    let n = layout.size + 1;
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..layout.size {
        for j in 0..layout.size {
            gram[i][j] = -m[i][j];
        }
    }
    gram[extra][extra] = -2;
    gram[extra][layout.center] = -2;
    gram[layout.center][extra] = -2;
    for arm in &layout.arms {
        if let Some(&inner) = arm.last() {
            gram[extra][inner] = 1;
            gram[inner][extra] = 1;
        }
    }
    BilinearLattice::new(gram, (0..n).collect(), None).expect("T lattice is valid")
}

/// `T(p, q, r)` lattice with the involution swapping two arms of equal
/// length (`q = r` swaps the last two arms, else `p = q` swaps the first two).
pub fn t_lattice_with_arm_swap(p: usize, q: usize, r: usize) -> Result<BilinearLattice> {
    let (layout, _) = t_layout(p, q, r);
    let (x, y) = if q == r {
        (1, 2)
    } else if p == q {
        (0, 1)
    } else if p == r {
        (0, 2)
    } else {
        return Err(Error::InvalidSpec(format!("T({p},{q},{r}) has no arm swap")));
    };
    let l = t_lattice(p, q, r);
    let mut sigma: Vec<usize> = (0..l.size()).collect();
    for (&a, &b) in layout.arms[x].iter().zip(&layout.arms[y]) {
        sigma[a] = b;
        sigma[b] = a;
    }
    l.with_involution(Some(sigma))
}

/// `A_{2n-1}` with the chain reversal.
pub fn ambient_a_with_reversal(n: usize) -> Result<BilinearLattice> {
    let c = build_diagram(&DiagramSpec::A(2 * n - 1))?;
    let m = 2 * n - 1;
    BilinearLattice::from_symmetric_cartan(&c)?.with_involution(Some((0..m).map(|i| m - 1 - i).collect()))
}

/// `D_{n+1}` with the swap of its two short leaves.
pub fn ambient_d_with_leaf_swap(n: usize) -> Result<BilinearLattice> {
    let c = build_diagram(&DiagramSpec::D(n + 1))?;
    let mut sigma: Vec<usize> = (0..n + 1).collect();
    sigma.swap(0, 1);
    BilinearLattice::from_symmetric_cartan(&c)?.with_involution(Some(sigma))
}

/// `E_6` with the swap of its two long arms.
pub fn ambient_e6_with_arm_swap() -> Result<BilinearLattice> {
    let layout = star_layout(2, 3, 3);
    let c = build_diagram(&DiagramSpec::E(6))?;
    let mut sigma: Vec<usize> = (0..layout.size).collect();
    for (&a, &b) in layout.arms[1].iter().zip(&layout.arms[2]) {
        sigma[a] = b;
        sigma[b] = a;
    }
    BilinearLattice::from_symmetric_cartan(&c)?.with_involution(Some(sigma))
}

/// Random tree lattice (diagonal `-2`, edge pairings `+-1`) carrying a
/// nontrivial graph involution: a random fixed core with `pairs >= 1`
/// mirrored random branches hung on core vertices.
pub fn random_involutive_tree<R: Rng>(rng: &mut R, core: usize, branch: usize, pairs: usize) -> BilinearLattice {
    assert!(core >= 1 && branch >= 1 && pairs >= 1);
    let n = core + 2 * branch * pairs;
    let mut gram = vec![vec![0i64; n]; n];
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = -2;
    }
    let mut sigma: Vec<usize> = (0..n).collect();
    let link = |g: &mut IntMatrix, a: usize, b: usize, w: i64| {
        g[a][b] = w;
        g[b][a] = w;
    };
    for v in 1..core {
        let parent = rng.gen_range(0..v);
        let w = if rng.gen_bool(0.5) { 1 } else { -1 };
        link(&mut gram, parent, v, w);
    }
    let mut next = core;
    for _ in 0..pairs {
        let anchor = rng.gen_range(0..core);
        let left: Vec<usize> = (next..next + branch).collect();
        let right: Vec<usize> = (next + branch..next + 2 * branch).collect();
        next += 2 * branch;
        for k in 0..branch {
            let (parent_l, parent_r) = if k == 0 {
                (anchor, anchor)
            } else {
                let p = rng.gen_range(0..k);
                (left[p], right[p])
            };
            let w = if rng.gen_bool(0.5) { 1 } else { -1 };
            link(&mut gram, parent_l, left[k], w);
            link(&mut gram, parent_r, right[k], w);
            sigma[left[k]] = right[k];
            sigma[right[k]] = left[k];
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    BilinearLattice::new(gram, order, Some(sigma)).expect("random involutive tree is valid")
}

/// Right null vector of `c` with positive coprime integer entries, if the
/// kernel is one-dimensional and sign-coherent.
pub fn positive_null_vector(c: &CartanData) -> Option<Vec<i64>> {
    let n = c.size();
    let mut a: Vec<Vec<BigRational>> = c
        .matrix()
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..n {
                    let sub = &f * &a[row][k];
                    a[r][k] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() != n - 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); n];
    v[free] = BigRational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[r][free].clone();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if ints.iter().any(|x| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let out: Vec<BigInt> = ints.iter().map(|x| x * &sign / &g).collect();
    if out.iter().any(|x| !x.is_positive()) {
        return None;
    }
    out.iter().map(|x| i64::try_from(x).ok()).collect()
}

/// Permutation `pi` with `a[i][j] = b[pi[i]][pi[j]]` for all `i, j`.
pub fn find_isomorphism(a: &IntMatrix, b: &IntMatrix) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let profile = |m: &IntMatrix, i: usize| {
        let mut row: Vec<i64> = (0..n).filter(|&j| j != i).map(|j| m[i][j]).collect();
        let mut col: Vec<i64> = (0..n).filter(|&j| j != i).map(|j| m[j][i]).collect();
        row.sort_unstable();
        col.sort_unstable();
        (m[i][i], row, col)
    };
    let pa: Vec<_> = (0..n).map(|i| profile(a, i)).collect();
    let pb: Vec<_> = (0..n).map(|i| profile(b, i)).collect();
    let mut pi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a: &IntMatrix,
        b: &IntMatrix,
        pa: &[(i64, Vec<i64>, Vec<i64>)],
        pb: &[(i64, Vec<i64>, Vec<i64>)],
        pi: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.len();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || pa[i] != pb[cand] {
                continue;
            }
            let ok = (0..i).all(|k| a[i][k] == b[cand][pi[k]] && a[k][i] == b[pi[k]][cand]);
            if ok {
                pi[i] = cand;
                used[cand] = true;
                if go(i + 1, a, b, pa, pb, pi, used) {
                    return true;
                }
                used[cand] = false;
            }
        }
        false
    }
    go(0, a, b, &pa, &pb, &mut pi, &mut used).then_some(pi)
}
