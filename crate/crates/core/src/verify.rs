//! Named checks of the quotient identities between Poincare series and
//! Coxeter characteristic polynomials, the McKay/Slodowy correspondences,
//! folding of boundary singularities and the catalog tables. Every check
//! returns a [`CheckReport`] whose witnesses are enough to redo it by hand.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::{Catalog, CorrespondenceRecord, RootSystem, SingularityClass, SingularityRecord};
use crate::error::{Error, Result};
use crate::frame::{frame_to_ratfunc, ratfunc_to_frame, saito_dual, FrameShape};
use crate::lattice::{
    ambient_a_with_reversal, ambient_d_with_leaf_swap, ambient_e6_with_arm_swap, build_diagram, fold, milnor_orlik,
    ordering_search, positive_null_vector, fold_check, random_involutive_tree, t_charpoly, t_lattice, t_lattice_with_arm_swap,
    to_cartan, BilinearLattice, CartanData, DiagramSpec, ORDERING_SEARCH_LIMIT,
};
use crate::mckay::{
    build_group, character_table, invariant_poincare, match_affine, mckay_matrix, secondary_prime, select_prime,
    slodowy_matrix, GroupOverPrimeField, GroupSpec, McKayResult,
};
use crate::poly::{ratfunc_equal, series_expand, IntPoly, RatFunc, SeriesPrefix};

/// Number of power series coefficients compared is `SERIES_LENGTH + 1`.
pub const SERIES_LENGTH: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub claim: String,
    pub verdict: Verdict,
    pub witnesses: BTreeMap<String, Value>,
    pub runtime_ms: u64,
}

/// Ranges and seeds. `nmax` bounds `A_{2n-1}`, `C_{2n}` and `BinDihedral(k)`
/// by `n, k <= nmax`, and `D_mu`, `B_n`, `C_n` and the folded lattices by
/// `mu, n <= nmax + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub nmax: u64,
    pub random_trees: usize,
    pub seed: u64,
    /// Overrides the automatically selected prime for the group checks.
    pub prime: Option<u64>,
    /// Fill in `runtime_ms`; off by default so reports are reproducible.
    pub timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { nmax: 6, random_trees: 50, seed: 2008, prime: None, timings: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub reports: Vec<CheckReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl SuiteReport {
    pub fn from_reports(mut reports: Vec<CheckReport>) -> Self {
        reports.sort_by(|a, b| a.id.cmp(&b.id));
        let count = |v| reports.iter().filter(|r| r.verdict == v).count();
        let (passed, failed, skipped) = (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::Skipped));
        SuiteReport { reports, passed, failed, skipped }
    }

    pub fn summary(&self) -> String {
        format!("{} passed, {} failed, {} skipped", self.passed, self.failed, self.skipped)
    }

    pub fn get(&self, id: &str) -> Option<&CheckReport> {
        self.reports.iter().find(|r| r.id == id)
    }
}

/// Accumulates witnesses and failed conditions of one check.
pub struct Check {
    witnesses: BTreeMap<String, Value>,
    failures: Vec<String>,
    skipped: Option<String>,
}

impl Check {
    pub fn witness(&mut self, name: &str, value: impl Serialize) {
        self.witnesses.insert(name.to_string(), serde_json::to_value(value).expect("witness serializes"));
    }

    pub fn frame(&mut self, name: &str, f: &FrameShape) {
        self.witness(name, f.to_string());
    }

    pub fn poly(&mut self, name: &str, p: &IntPoly) {
        self.witness(name, p.to_string());
    }

    /// Records `what` as failed unless `cond`.
    pub fn expect(&mut self, what: &str, cond: bool) {
        if !cond {
            self.failures.push(what.to_string());
        }
    }

    pub fn skip(&mut self, reason: &str) {
        self.skipped = Some(reason.to_string());
    }
}

pub fn run_check(id: &str, claim: &str, timings: bool, body: impl FnOnce(&mut Check) -> Result<()>) -> CheckReport {
    let start = Instant::now();
    let mut c = Check { witnesses: BTreeMap::new(), failures: Vec::new(), skipped: None };
    let outcome = body(&mut c);
    let verdict = match outcome {
        Err(e) => {
            c.witness("error", e.to_string());
            Verdict::Fail
        }
        Ok(()) if !c.failures.is_empty() => Verdict::Fail,
        Ok(()) if c.skipped.is_some() => Verdict::Skipped,
        Ok(()) => Verdict::Pass,
    };
    if !c.failures.is_empty() {
        let failures = std::mem::take(&mut c.failures);
        c.witness("failed", failures);
    }
    if let Some(reason) = c.skipped.take() {
        c.witness("skipped", reason);
    }
    CheckReport {
        id: id.to_string(),
        claim: claim.to_string(),
        verdict,
        witnesses: c.witnesses,
        runtime_ms: if timings { start.elapsed().as_millis() as u64 } else { 0 },
    }
}

fn diagram_frame(spec: &DiagramSpec) -> Result<FrameShape> {
    build_diagram(spec)?.coxeter_frame()
}

fn poly_frame(p: &IntPoly) -> Result<FrameShape> {
    ratfunc_to_frame(&RatFunc::from_poly(p.clone()), None)
}

fn frame_quotient(num: &FrameShape, den: &FrameShape) -> FrameShape {
    num.div(den)
}

fn series_in_t_squared(f: &FrameShape, max: usize) -> Result<SeriesPrefix> {
    series_expand(&frame_to_ratfunc(f).compose_power(2), max)
}

fn ambient(catalog: &Catalog, name: &str) -> Result<SingularityRecord> {
    catalog.ambient_named(name).ok_or_else(|| Error::UnknownRecord(name.to_string()))
}

/// Finite and affine diagrams of a simple singularity name (`A<k>`,
/// `D<k>`, `E<k>`).
fn simple_diagrams(name: &str) -> Result<(DiagramSpec, DiagramSpec)> {
    let (head, n) = name.split_at(1);
    let n: usize = n.parse().map_err(|_| Error::UnknownRecord(name.into()))?;
    Ok(match head {
        "A" => (DiagramSpec::A(n), DiagramSpec::AffineA(n)),
        "D" => (DiagramSpec::D(n), DiagramSpec::AffineD(n)),
        "E" => (DiagramSpec::E(n), DiagramSpec::AffineE(n)),
        _ => return Err(Error::UnknownRecord(name.into())),
    })
}

fn simple_names(config: &VerifyConfig) -> Vec<String> {
    let mut names: Vec<String> = (2..=config.nmax).map(|n| format!("A{}", 2 * n - 1)).collect();
    names.extend((4..=config.nmax + 2).map(|m| format!("D{m}")));
    names.extend(["E6", "E7", "E8"].map(String::from));
    names
}

/// `p_X = phi / psi` for simple, parabolic and exceptional unimodal
/// ambient singularities.
pub fn check_quotients(config: &VerifyConfig, catalog: &Catalog) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for name in simple_names(config) {
        let claim = format!(
            "p_X * psi = phi for {name}, with phi and psi the Coxeter polynomials of the root system and its affine extension; phi is Saito self-dual"
        );
        out.push(run_check(&format!("quotient.simple.{name}"), &claim, config.timings, |c| {
            let x = ambient(catalog, &name)?;
            let (finite, affine) = simple_diagrams(&name)?;
            let phi = diagram_frame(&finite)?;
            let affine_c = build_diagram(&affine)?;
            let psi = affine_c.coxeter_frame()?;
            let p = x.poincare();
            c.frame("p_X", &p);
            c.frame("phi", &phi);
            c.frame("psi", &psi);
            c.witness("affine_order", affine_c.order());
            if matches!(affine, DiagramSpec::AffineA(_)) && affine_c.size() <= ORDERING_SEARCH_LIMIT {
                let lex_first = ordering_search(&affine_c, &psi)?;
                c.witness("lex_first_order_with_same_psi", lex_first);
            }
            c.expect("p_X * psi = phi", p.mul(&psi) == phi);
            let dual = saito_dual(&phi, x.degree)?;
            c.frame("saito_dual_phi", &dual);
            c.expect("phi = phi^* (Saito dual w.r.t. d)", dual == phi);
            c.witness("deg_phi", phi.degree());
            c.witness("deg_psi", psi.degree());
            c.expect("deg psi = deg phi + 1", psi.degree() == phi.degree() + 1);
            Ok(())
        }));
    }
    for name in ["E~6", "E~7", "E~8"] {
        let claim = format!("p_X = phi_X^* for the parabolic singularity {name}, phi_X from the Milnor-Orlik formula");
        out.push(run_check(&format!("quotient.parabolic.{name}"), &claim, config.timings, |c| {
            let x = ambient(catalog, name)?;
            let phi_x = milnor_orlik(x.weights, x.degree)?;
            let p = x.poincare();
            let dual = saito_dual(&phi_x, x.degree)?;
            c.witness("weights", x.weights);
            c.witness("degree", x.degree);
            c.frame("p_X", &p);
            c.frame("phi_X", &phi_x);
            c.frame("phi_X^*", &dual);
            c.expect("p_X = phi_X^*", p == dual);
            Ok(())
        }));
    }
    for x in catalog.ambient.iter().filter(|a| a.class == SingularityClass::ExceptionalUnimodal) {
        let claim = format!(
            "p_X * phi_T(Dol(X)) = phi_X^* = phi_(X*) for {}, phi_X from the Milnor-Orlik formula",
            x.name
        );
        out.push(run_check(&format!("quotient.exceptional.{}", x.name), &claim, config.timings, |c| {
            let Some(dol) = x.dolgachev.as_ref().filter(|d| d.len() == 3) else {
                c.skip("no Dolgachev triple in the table");
                return Ok(());
            };
            let psi = t_charpoly(dol[0], dol[1], dol[2]);
            let (p_, q_, r_) = (dol[0] as usize, dol[1] as usize, dol[2] as usize);
            let psi_diagram = to_cartan(&t_lattice(p_, q_, r_))?.coxeter_frame()?;
            let phi_x = milnor_orlik(x.weights, x.degree)?;
            let dual = saito_dual(&phi_x, x.degree)?;
            let p = x.poincare();
            c.witness("dolgachev", dol);
            c.frame("p_X", &p);
            c.frame("psi = phi_T", &psi);
            c.frame("T diagram Coxeter frame", &psi_diagram);
            c.frame("phi_X", &phi_x);
            c.frame("phi_X^*", &dual);
            c.expect("T diagram realizes phi_T", psi_diagram == psi);
            c.expect("p_X * psi = phi_X^*", p.mul(&psi) == dual);
            c.expect("deg psi = deg phi - 1", psi.degree() == dual.degree() - 1);
            match x.arnold_dual.as_deref().and_then(|d| catalog.ambient.iter().find(|a| a.name == d)) {
                Some(star) => {
                    let phi_star = milnor_orlik(star.weights, star.degree)?;
                    c.witness("arnold_dual", &star.name);
                    c.frame("phi_(X*)", &phi_star);
                    c.expect("phi_X^* = phi_(X*)", phi_star == dual);
                }
                None => {
                    c.witness("arnold_dual", x.arnold_dual.clone());
                    c.witness("phi_(X*)", format!("derived-by-identity: {dual}"));
                }
            }
            Ok(())
        }));
    }
    out
}

fn group_for(config: &VerifyConfig, specs: &[GroupSpec]) -> u64 {
    config.prime.unwrap_or_else(|| select_prime(specs))
}

fn mckay_cases(config: &VerifyConfig) -> Vec<(GroupSpec, String)> {
    let mut v: Vec<(GroupSpec, String)> =
        (1..=config.nmax).map(|n| (GroupSpec::Cyclic(2 * n), format!("A{}", 2 * n - 1))).collect();
    v.extend((2..=config.nmax).map(|k| (GroupSpec::BinDihedral(k), format!("D{}", k + 2))));
    v.push((GroupSpec::BinTetrahedral, "E6".into()));
    v.push((GroupSpec::BinOctahedral, "E7".into()));
    v.push((GroupSpec::BinIcosahedral, "E8".into()));
    v
}

fn matrix_is_symmetric(m: &[Vec<i64>]) -> bool {
    (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i]))
}

/// The classical McKay correspondence.
pub fn check_mckay(config: &VerifyConfig, catalog: &Catalog) -> Vec<CheckReport> {
    mckay_cases(config)
        .into_iter()
        .map(|(spec, x_name)| {
            let claim = format!(
                "C = 2I - B for {spec} is the affine {x_name} Cartan matrix, and P_G(t) = p_X(t^2) = phi(t^2)/psi(t^2) to order {SERIES_LENGTH}"
            );
            run_check(&format!("mckay.{spec}"), &claim, config.timings, |c| {
                let p = group_for(config, &[spec]);
                let g = build_group(spec, p)?;
                c.witness("prime", p);
                let r = mckay_matrix(&g)?;
                let (finite, affine) = simple_diagrams(&x_name)?;
                c.witness("B", &r.b);
                c.witness("dims", &r.dims);
                c.expect("B symmetric", matrix_is_symmetric(&r.b));
                match match_affine(&r.c, &affine) {
                    Some(id) if !id.transposed => c.witness("permutation", id.permutation),
                    _ => c.expect(&format!("C isomorphic to {affine}"), false),
                }
                let marks = CartanData::with_identity_order(r.c.clone()).ok().and_then(|cd| positive_null_vector(&cd));
                c.expect("C has a positive null vector", marks.is_some());
                c.witness("null_vector", marks);
                let pg = invariant_poincare(&g, SERIES_LENGTH)?;
                let x = ambient(catalog, &x_name)?;
                let px = series_in_t_squared(&x.poincare(), SERIES_LENGTH)?;
                let phi = diagram_frame(&finite)?;
                let psi = diagram_frame(&affine)?;
                let quotient = series_in_t_squared(&frame_quotient(&phi, &psi), SERIES_LENGTH)?;
                c.witness("P_G", pg.to_i64());
                c.frame("p_X", &x.poincare());
                c.frame("phi", &phi);
                c.frame("psi", &psi);
                c.expect("P_G = p_X(t^2)", pg == px);
                c.expect("P_G = phi(t^2)/psi(t^2)", pg == quotient);
                Ok(())
            })
        })
        .collect()
}

fn root_diagrams(r: RootSystem) -> (DiagramSpec, DiagramSpec) {
    let n = |k: u64| k as usize;
    match r {
        RootSystem::B(k) => (DiagramSpec::B(n(k)), DiagramSpec::AffineB(n(k))),
        RootSystem::C(k) => (DiagramSpec::C(n(k)), DiagramSpec::AffineC(n(k))),
        RootSystem::F4 => (DiagramSpec::F4, DiagramSpec::AffineF4),
        RootSystem::G2 => (DiagramSpec::G2, DiagramSpec::AffineG2),
    }
}

fn correspondence_id(row: &CorrespondenceRecord) -> String {
    format!("mckay-pair.{}", row.root_system)
}

fn bc_range(config: &VerifyConfig) -> std::ops::RangeInclusive<u64> {
    2..=config.nmax + 2
}

/// The generalized McKay table.
pub fn check_generalized_mckay(config: &VerifyConfig, catalog: &Catalog) -> Vec<CheckReport> {
    let mut rows = Vec::new();
    for n in bc_range(config) {
        let all = catalog.correspondence_rows(n);
        rows.push(all[0].clone());
        rows.push(all[1].clone());
        if n == 2 {
            rows.extend(all[2..].iter().cloned());
        }
    }
    rows.into_iter()
        .map(|row| {
            let dual = row.root_system.dual();
            let claim = format!(
                "Slodowy C for {} < {} is the affine {dual} Cartan matrix; phi_R, psi_R of {} match the table; P_G(t) = phi_(R^v)(t^2)/psi_(R^v)(t^2) and p_X = phi_(R^v)/psi_(R^v)",
                row.g_spec, row.h_spec, row.root_system
            );
            run_check(&correspondence_id(&row), &claim, config.timings, |c| {
                let p = group_for(config, &[row.g_spec, row.h_spec]);
                c.witness("prime", p);
                let g = build_group(row.g_spec, p)?;
                let h = build_group(row.h_spec, p)?;
                let r = slodowy_matrix(&h, &g)?;
                c.witness("B", &r.b);
                let (_, affine_dual) = root_diagrams(dual);
                match match_affine(&r.c, &affine_dual) {
                    Some(id) => {
                        c.witness("matched", affine_dual.to_string());
                        c.witness("transposed", id.transposed);
                        c.witness("permutation", id.permutation);
                    }
                    None => c.expect(&format!("C isomorphic to {affine_dual}"), false),
                }
                let (finite_r, affine_r) = root_diagrams(row.root_system);
                let phi_r = diagram_frame(&finite_r)?;
                let psi_r = diagram_frame(&affine_r)?;
                c.frame("phi_R", &phi_r);
                c.frame("psi_R", &psi_r);
                c.expect("phi_R matches table", phi_r == row.phi_r);
                c.expect("psi_R matches table", psi_r == row.psi_r);
                let (finite_d, affine_d) = root_diagrams(dual);
                let phi_d = diagram_frame(&finite_d)?;
                let psi_d = diagram_frame(&affine_d)?;
                c.frame("phi_(R^v)", &phi_d);
                c.frame("psi_(R^v)", &psi_d);
                let pg = invariant_poincare(&g, SERIES_LENGTH)?;
                let q = frame_quotient(&phi_d, &psi_d);
                c.witness("P_G", pg.to_i64());
                c.expect("P_G = phi_(R^v)(t^2)/psi_(R^v)(t^2)", pg == series_in_t_squared(&q, SERIES_LENGTH)?);
                let x = ambient(catalog, &row.ambient)?;
                c.frame("p_X", &x.poincare());
                c.expect("p_X matches table", x.poincare() == row.p_x);
                c.expect(
                    "p_X = phi_(R^v)/psi_(R^v)",
                    ratfunc_equal(&frame_to_ratfunc(&x.poincare()), &frame_to_ratfunc(&q)),
                );
                Ok(())
            })
        })
        .collect()
}

/// Ambient lattice with involution and the affine diagram of the ambient
/// for a simple boundary singularity name.
fn simple_boundary_lattice(name: &str) -> Result<(BilinearLattice, DiagramSpec)> {
    if name == "F4" {
        return Ok((ambient_e6_with_arm_swap()?, DiagramSpec::AffineE(6)));
    }
    let (head, n) = name.split_at(1);
    let n: usize = n.parse().map_err(|_| Error::UnknownRecord(name.into()))?;
    match head {
        "B" => Ok((ambient_a_with_reversal(n)?, DiagramSpec::AffineA(2 * n - 1))),
        // D_3 = A_3, and the bipartite affine A_3 order matches affine D
        "C" if n == 2 => Ok((ambient_d_with_leaf_swap(n)?, DiagramSpec::AffineA(3))),
        "C" => Ok((ambient_d_with_leaf_swap(n)?, DiagramSpec::AffineD(n + 1))),
        _ => Err(Error::UnknownRecord(name.into())),
    }
}

/// Source diagram of each exceptional boundary row: the `T` triple, or the
/// row whose `psi` is reused.
fn folded_t_source(name: &str, catalog: &Catalog) -> Option<std::result::Result<[usize; 3], &'static str>> {
    match name {
        "F8" | "K8*" | "K8**" | "E8,0" | "E6,1" => {
            let b = catalog.boundary_named(name)?;
            let dol = catalog.ambient_named(&b.ambient)?.dolgachev?;
            (dol.len() == 3).then(|| Ok([dol[0] as usize, dol[1] as usize, dol[2] as usize]))
        }
        // the ambient diagram extends T(2,6,6)
        "K9*" => Some(Ok([2, 6, 6])),
        "F9" => Some(Err("K9*")),
        _ => None,
    }
}

fn folded_t_frame(t: [usize; 3]) -> Result<(FrameShape, usize)> {
    let l = t_lattice_with_arm_swap(t[0], t[1], t[2])?;
    let f = fold(&l)?;
    Ok((to_cartan(&f.folded)?.coxeter_frame()?, f.folded.size()))
}

/// Folding checks: simple boundary rows through the ambient lattice,
/// exceptional rows through folded `T` diagrams, and Lagrange duality.
pub fn check_boundary(config: &VerifyConfig, catalog: &Catalog) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut simple: Vec<String> = bc_range(config).flat_map(|n| [format!("B{n}"), format!("C{n}")]).collect();
    simple.push("F4".into());
    for name in simple {
        let claim = format!(
            "folding the ambient diagram of {name} gives phi_fbar as tabulated, and p_X = phi_fbar/psi_fbar with psi_fbar = psi_X/phi_1"
        );
        out.push(run_check(&format!("boundary.simple.{name}"), &claim, config.timings, |c| {
            let row = catalog.boundary_named(&name).ok_or_else(|| Error::UnknownRecord(name.clone()))?;
            let (lattice, affine) = simple_boundary_lattice(&name)?;
            let outcome = fold_check(&lattice)?;
            c.expect("phi_X = phi_1 * phi_fbar", outcome.holds);
            let phi_f = poly_frame(&outcome.phi_f)?;
            let phi_1 = poly_frame(&outcome.phi_1)?;
            let psi_x = diagram_frame(&affine)?;
            let psi_f = psi_x.div(&phi_1);
            let x = ambient(catalog, &row.ambient)?;
            c.frame("phi_fbar", &phi_f);
            c.frame("phi_1", &phi_1);
            c.frame("psi_X", &psi_x);
            c.frame("psi_fbar", &psi_f);
            c.frame("p_X", &x.poincare());
            c.witness("folded_gram", outcome.fold.folded.gram());
            c.expect("phi_fbar matches table", phi_f == row.phi_f);
            c.expect("psi_fbar is a polynomial", psi_f.is_polynomial());
            c.expect("psi_fbar matches table", row.psi_f.as_ref() == Some(&psi_f));
            c.expect("p_X = phi_fbar/psi_fbar", x.poincare() == phi_f.div(&psi_f));
            Ok(())
        }));
    }
    for row in catalog.boundary_rows(2).into_iter().filter(|r| r.class == SingularityClass::ExceptionalUnimodal) {
        let claim = format!(
            "p_X = phi_fbar/psi_fbar for {} with psi_fbar the Coxeter polynomial of a folded T diagram having one vertex less",
            row.name
        );
        out.push(run_check(&format!("folded-t.{}", row.name), &claim, config.timings, |c| {
            let Some(source) = folded_t_source(&row.name, catalog) else {
                c.skip("no folded T diagram is given for this row");
                return Ok(());
            };
            let (psi, size) = match source {
                Ok(t) => {
                    c.witness("T", t);
                    folded_t_frame(t)?
                }
                Err(other) => {
                    c.witness("psi_reused_from", other);
                    let Some(Ok(t)) = folded_t_source(other, catalog) else {
                        return Err(Error::UnknownRecord(other.into()));
                    };
                    c.witness("T", t);
                    folded_t_frame(t)?
                }
            };
            let x = ambient(catalog, &row.ambient)?;
            c.frame("psi_fbar (folded T)", &psi);
            c.frame("phi_fbar (table)", &row.phi_f);
            c.frame("p_X", &x.poincare());
            c.witness("folded_size", size);
            c.expect("p_X matches table", x.poincare() == row.p_x);
            match &row.psi_f {
                Some(t) => c.expect("psi_fbar matches table", *t == psi),
                None => c.expect("table has psi_fbar", false),
            }
            c.expect("p_X = phi_fbar/psi_fbar", x.poincare() == row.phi_f.div(&psi));
            c.expect("deg psi_fbar = deg phi_fbar - 1", psi.degree() == row.phi_f.degree() - 1);
            c.expect("folded diagram has deg psi_fbar vertices", size as i64 == psi.degree());
            Ok(())
        }));
    }
    let rows = catalog.boundary_rows(config.nmax.max(2));
    let mut seen = Vec::new();
    for row in &rows {
        if seen.contains(&row.name) {
            continue;
        }
        seen.push(row.name.clone());
        seen.push(row.lagrange_dual.clone());
        let pair = if row.lagrange_dual == row.name {
            row.name.clone()
        } else {
            format!("{}-{}", row.name, row.lagrange_dual)
        };
        let claim = format!("Lagrange dual boundary singularities {pair} have equal phi_fbar");
        out.push(run_check(&format!("lagrange-dual.{pair}"), &claim, config.timings, |c| {
            let dual = catalog
                .boundary_named(&row.lagrange_dual)
                .ok_or_else(|| Error::UnknownRecord(row.lagrange_dual.clone()))?;
            c.frame("phi_fbar", &row.phi_f);
            c.frame("phi_fbar (dual)", &dual.phi_f);
            c.expect("duality is an involution", dual.lagrange_dual == row.name);
            c.expect("phi_fbar equal", dual.phi_f == row.phi_f);
            Ok(())
        }));
    }
    out.push(run_check(
        "transpose-invariance",
        "transposing a Cartan matrix does not change the Coxeter polynomial, for every diagram used by the checks",
        config.timings,
        |c| {
            let mut names = Vec::new();
            for d in catalog_cartan_data(config, catalog)? {
                let (name, cd) = d;
                let a = cd.coxeter_polynomial()?;
                let b = cd.transpose().coxeter_polynomial()?;
                c.expect(&format!("{name}: transpose invariance"), a == b);
                names.push(name);
            }
            c.witness("diagrams", names);
            Ok(())
        },
    ));
    out
}

/// Every Cartan datum the suite touches, with a label.
fn catalog_cartan_data(config: &VerifyConfig, catalog: &Catalog) -> Result<Vec<(String, CartanData)>> {
    let mut specs: Vec<DiagramSpec> = Vec::new();
    for name in simple_names(config) {
        let (f, a) = simple_diagrams(&name)?;
        specs.push(f);
        specs.push(a);
    }
    for n in bc_range(config) {
        let n = n as usize;
        specs.extend([DiagramSpec::B(n), DiagramSpec::C(n), DiagramSpec::AffineB(n), DiagramSpec::AffineC(n)]);
    }
    specs.extend([DiagramSpec::F4, DiagramSpec::G2, DiagramSpec::AffineF4, DiagramSpec::AffineG2]);
    for a in &catalog.ambient {
        if let Some(d) = a.dolgachev.as_ref().filter(|d| d.len() == 3) {
            specs.push(DiagramSpec::T(d[0] as usize, d[1] as usize, d[2] as usize));
        }
    }
    let mut out = Vec::new();
    for s in specs {
        out.push((s.to_string(), build_diagram(&s)?));
    }
    for t in [[3, 3, 4], [3, 4, 4], [2, 5, 5], [3, 3, 6], [4, 4, 4], [2, 6, 6]] {
        let f = fold(&t_lattice_with_arm_swap(t[0], t[1], t[2])?)?;
        out.push((format!("folded T({},{},{})", t[0], t[1], t[2]), to_cartan(&f.folded)?));
    }
    Ok(out)
}

/// `phi_X = phi_1 * phi_fbar` on structured ambient lattices and random trees.
pub fn check_folding(config: &VerifyConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut cases: Vec<(String, Result<BilinearLattice>)> = Vec::new();
    for n in bc_range(config) {
        let n = n as usize;
        cases.push((format!("A{}", 2 * n - 1), ambient_a_with_reversal(n)));
        cases.push((format!("D{}", n + 1), ambient_d_with_leaf_swap(n)));
    }
    cases.push(("E6".into(), ambient_e6_with_arm_swap()));
    for (name, lattice) in cases {
        let claim = format!("phi_X = phi_1 * phi_fbar for the folded {name} lattice");
        out.push(run_check(&format!("fold_check.{name}"), &claim, config.timings, |c| {
            let o = fold_check(&lattice?)?;
            c.poly("phi_X", &o.phi_x);
            c.poly("phi_1", &o.phi_1);
            c.poly("phi_fbar", &o.phi_f);
            c.expect("phi_X = phi_1 * phi_fbar", o.phi_x == &o.phi_1 * &o.phi_f);
            c.expect("determinant formula agrees", o.phi_x_by_determinant.as_ref() == Some(&o.phi_x));
            Ok(())
        }));
    }
    let claim = format!(
        "phi_X = phi_1 * phi_fbar on {} random involutive tree lattices (seed {})",
        config.random_trees, config.seed
    );
    out.push(run_check("fold_check.random-trees", &claim, config.timings, |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut sizes = Vec::new();
        for k in 0..config.random_trees {
            let core = rng.gen_range(1..=4);
            let branch = rng.gen_range(1..=3);
            let pairs = rng.gen_range(1..=2);
            let l = random_involutive_tree(&mut rng, core, branch, pairs);
            sizes.push(l.size());
            let o = fold_check(&l)?;
            c.expect(&format!("tree {k}: phi_X = phi_1 * phi_fbar"), o.phi_x == &o.phi_1 * &o.phi_f);
            c.expect(&format!("tree {k}: determinant formula"), o.phi_x_by_determinant.as_ref() == Some(&o.phi_x));
        }
        c.witness("sizes", sizes);
        Ok(())
    }));
    out
}

/// Consistency of the tabulated data.
pub fn check_catalog(config: &VerifyConfig, catalog: &Catalog) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for row in catalog.boundary_rows(config.nmax.max(2)) {
        let claim = format!("tabulated p_X of {} equals the Poincare series of the weights of {}", row.name, row.ambient);
        out.push(run_check(&format!("catalog.p_X.{}", row.name), &claim, config.timings, |c| {
            let x = ambient(catalog, &row.ambient)?;
            c.witness("weights", x.weights);
            c.witness("degree", x.degree);
            c.frame("p_X (table)", &row.p_x);
            c.frame("p_X (weights)", &x.poincare());
            c.expect("equal", x.poincare() == row.p_x);
            Ok(())
        }));
    }
    for x in &catalog.ambient {
        let claim = format!("Dol(X) = Gab(X*) and Gab(X) = Dol(X*) for X = {}", x.name);
        out.push(run_check(&format!("catalog.strange-duality.{}", x.name), &claim, config.timings, |c| {
            let star = x.arnold_dual.as_deref().and_then(|d| catalog.ambient.iter().find(|a| a.name == d));
            let (Some(star), Some(dol), Some(gab)) = (star, &x.dolgachev, &x.gabrielov) else {
                c.skip("dual or triples not in the table");
                return Ok(());
            };
            c.witness("Dol(X)", dol);
            c.witness("Gab(X)", gab);
            c.witness("Dol(X*)", &star.dolgachev);
            c.witness("Gab(X*)", &star.gabrielov);
            c.expect("Dol(X) = Gab(X*)", star.gabrielov.as_ref() == Some(dol));
            c.expect("Gab(X) = Dol(X*)", star.dolgachev.as_ref() == Some(gab));
            c.expect("duality is an involution", star.arnold_dual.as_deref() == Some(x.name.as_str()));
            Ok(())
        }));
    }
    for name in ["E6", "E7", "E8"] {
        let claim = format!("the weights of {name} give the Coxeter polynomial of the {name} diagram via Milnor-Orlik");
        out.push(run_check(&format!("catalog.weights.{name}"), &claim, config.timings, |c| {
            let x = ambient(catalog, name)?;
            let mo = milnor_orlik(x.weights, x.degree)?;
            let (finite, _) = simple_diagrams(name)?;
            let cox = diagram_frame(&finite)?;
            c.frame("milnor_orlik", &mo);
            c.frame("coxeter", &cox);
            c.expect("equal", mo == cox);
            Ok(())
        }));
    }
    out
}

/// Lifted integer outputs of one group (or group pair) at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
struct LiftedOutputs {
    b: Vec<Vec<i64>>,
    c: Vec<Vec<i64>>,
    dims: Vec<u64>,
    table_dims: Vec<u64>,
    invariants: Option<Vec<i64>>,
}

fn lifted(r: &McKayResult, g: &GroupOverPrimeField) -> Result<LiftedOutputs> {
    Ok(LiftedOutputs {
        b: r.b.clone(),
        c: r.c.clone(),
        dims: r.dims.clone(),
        table_dims: character_table(g)?.dims,
        invariants: invariant_poincare(g, SERIES_LENGTH)?.to_i64(),
    })
}

/// Same lifted integers at two primes.
pub fn check_determinism(config: &VerifyConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (spec, _) in mckay_cases(config) {
        let claim = format!("B, C, dimensions and invariant dimensions of {spec} agree at two primes");
        out.push(run_check(&format!("determinism.{spec}"), &claim, config.timings, |c| {
            let primes = [select_prime(&[spec]), secondary_prime(&[spec])];
            c.witness("primes", primes);
            let mut results = Vec::new();
            for p in primes {
                let g = build_group(spec, p)?;
                results.push(lifted(&mckay_matrix(&g)?, &g)?);
            }
            c.expect("identical", results[0] == results[1]);
            c.witness("outputs", &results[0]);
            Ok(())
        }));
    }
    let catalog = Catalog::standard();
    let mut pairs = Vec::new();
    for n in bc_range(config) {
        for row in catalog.correspondence_rows(n).into_iter().take(2) {
            pairs.push(row);
        }
    }
    pairs.extend(catalog.correspondence.iter().cloned());
    for row in pairs {
        let claim = format!("Slodowy B and C of {} < {} agree at two primes", row.g_spec, row.h_spec);
        out.push(run_check(&format!("determinism.{}<{}", row.g_spec, row.h_spec), &claim, config.timings, |c| {
            let specs = [row.g_spec, row.h_spec];
            let primes = [select_prime(&specs), secondary_prime(&specs)];
            c.witness("primes", primes);
            let mut results = Vec::new();
            for p in primes {
                let g = build_group(row.g_spec, p)?;
                let h = build_group(row.h_spec, p)?;
                results.push(lifted(&slodowy_matrix(&h, &g)?, &g)?);
            }
            c.expect("identical", results[0] == results[1]);
            c.witness("outputs", &results[0]);
            Ok(())
        }));
    }
    out
}

/// Every check, sorted by id.
pub fn run_all(config: &VerifyConfig, catalog: &Catalog) -> SuiteReport {
    let mut reports = Vec::new();
    reports.extend(check_quotients(config, catalog));
    reports.extend(check_mckay(config, catalog));
    reports.extend(check_generalized_mckay(config, catalog));
    reports.extend(check_boundary(config, catalog));
    reports.extend(check_folding(config));
    reports.extend(check_catalog(config, catalog));
    reports.extend(check_determinism(config));
    SuiteReport::from_reports(reports)
}

/// One line per report and a summary line.
pub fn render_text(suite: &SuiteReport, verbose: bool) -> String {
    if suite.reports.is_empty() {
        return "no checks selected\n".to_string();
    }
    let mut s = String::new();
    for r in &suite.reports {
        let tag = match r.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIP",
        };
        s.push_str(&format!("{tag} {}: {}\n", r.id, r.claim));
        if verbose || r.verdict == Verdict::Fail {
            for (k, v) in &r.witnesses {
                s.push_str(&format!("    {k} = {}\n", render_value(v)));
            }
        }
    }
    s.push_str(&suite.summary());
    s.push('\n');
    s
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render_json(suite: &SuiteReport) -> String {
    let doc = json!({
        "summary": {"passed": suite.passed, "failed": suite.failed, "skipped": suite.skipped},
        "reports": suite.reports,
    });
    serde_json::to_string_pretty(&doc).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig { nmax: 2, random_trees: 5, ..VerifyConfig::default() }
    }

    #[test]
    fn examples() {
        let c = Catalog::standard();
        let suite = SuiteReport::from_reports(check_quotients(&small(), &c));
        let e6 = suite.get("quotient.simple.E6").unwrap();
        assert_eq!(e6.verdict, Verdict::Pass);
        assert_eq!(e6.witnesses["phi"], json!("2·3·12/1·4·6"));
        assert_eq!(e6.witnesses["psi"], json!("2·3·3/1"));
        assert_eq!(suite.get("quotient.parabolic.E~8").unwrap().verdict, Verdict::Pass);
        let e14 = suite.get("quotient.exceptional.E14").unwrap();
        assert_eq!(e14.verdict, Verdict::Pass, "{:?}", e14.witnesses);
        assert_eq!(e14.witnesses["arnold_dual"], json!("Q10"));
        assert_eq!(suite.failed, 0);
    }

    #[test]
    fn boundary_examples() {
        let c = Catalog::standard();
        let suite = SuiteReport::from_reports(check_boundary(&small(), &c));
        for r in &suite.reports {
            assert_ne!(r.verdict, Verdict::Fail, "{} {:?}", r.id, r.witnesses);
        }
        let b2 = suite.get("boundary.simple.B2").unwrap();
        assert_eq!(b2.witnesses["phi_fbar"], json!("4/2"));
        assert_eq!(suite.get("folded-t.F8").unwrap().witnesses["psi_fbar (folded T)"], json!("3·4"));
        assert_eq!(suite.get("folded-t.E6,1").unwrap().witnesses["psi_fbar (folded T)"], json!("4·4"));
        assert_eq!(suite.get("folded-t.F10").unwrap().verdict, Verdict::Skipped);
    }

    #[test]
    fn fault_injection() {
        let mut c = Catalog::standard();
        let f8 = c.boundary.iter_mut().find(|r| r.name == "F8").unwrap();
        f8.phi_f = "4·24/8·12·2".parse().unwrap();
        let suite = SuiteReport::from_reports(check_boundary(&small(), &c));
        assert_eq!(suite.get("folded-t.F8").unwrap().verdict, Verdict::Fail);
        assert_eq!(suite.get("lagrange-dual.F8-E6,0").unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn nmax_bounds_the_suite() {
        let c = Catalog::standard();
        let two = run_all(&small(), &c);
        let three = run_all(&VerifyConfig { nmax: 3, ..small() }, &c);
        assert!(two.reports.len() < three.reports.len());
        assert_eq!(two.failed + three.failed, 0);
        assert_eq!(two, run_all(&small(), &c));
    }

    #[test]
    fn empty_render() {
        assert_eq!(render_text(&SuiteReport::from_reports(vec![]), false), "no checks selected\n");
    }
}
