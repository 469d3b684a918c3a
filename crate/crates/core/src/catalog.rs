//! Tabulated singularity data: weight systems of the ambient singularities,
//! the simple/parabolic/exceptional boundary singularities with their
//! characteristic polynomials, and the generalized McKay table.
//!
//! Blank table cells are `None`. The `B_n`, `C_n` rows and the two
//! parametrized McKay rows are generated for a requested `n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::FrameShape;
use crate::mckay::GroupSpec;

pub const SCHEMA_VERSION: &str = "1";

/// `n` used when listing or exporting the parametrized rows.
pub const DEFAULT_FAMILY_N: u64 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SingularityClass {
    Simple,
    Parabolic,
    ExceptionalUnimodal,
    Bimodal,
    /// Out of scope; no records carry it.
    Hyperbolic,
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularityClass::Simple => "simple",
            SingularityClass::Parabolic => "parabolic",
            SingularityClass::ExceptionalUnimodal => "exceptional-unimodal",
            SingularityClass::Bimodal => "bimodal",
            SingularityClass::Hyperbolic => "hyperbolic",
        })
    }
}

impl FromStr for SingularityClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(SingularityClass::Simple),
            "parabolic" => Ok(SingularityClass::Parabolic),
            "exceptional" | "exceptional-unimodal" => Ok(SingularityClass::ExceptionalUnimodal),
            "bimodal" => Ok(SingularityClass::Bimodal),
            "hyperbolic" => Ok(SingularityClass::Hyperbolic),
            _ => Err(Error::Parse(format!("unknown class {s:?}"))),
        }
    }
}

/// A weighted homogeneous surface singularity `f(x, y, z) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityRecord {
    pub name: String,
    pub weights: [u64; 3],
    pub degree: u64,
    pub class: SingularityClass,
    pub dolgachev: Option<Vec<u64>>,
    pub gabrielov: Option<Vec<u64>>,
    pub arnold_dual: Option<String>,
}

impl SingularityRecord {
    pub fn poincare(&self) -> FrameShape {
        poincare_series(self.weights, self.degree)
    }

    fn plain(name: &str, weights: [u64; 3], degree: u64, class: SingularityClass) -> Self {
        SingularityRecord {
            name: name.into(),
            weights,
            degree,
            class,
            dolgachev: None,
            gabrielov: None,
            arnold_dual: None,
        }
    }
}

/// A boundary singularity together with its table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRecord {
    pub name: String,
    pub ambient: String,
    /// Poincare series of the ambient singularity as tabulated.
    pub p_x: FrameShape,
    pub phi_f: FrameShape,
    pub psi_f: Option<FrameShape>,
    pub lagrange_dual: String,
    pub class: SingularityClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootSystem {
    B(u64),
    C(u64),
    F4,
    G2,
}

impl RootSystem {
    pub fn dual(&self) -> RootSystem {
        match *self {
            RootSystem::B(n) => RootSystem::C(n),
            RootSystem::C(n) => RootSystem::B(n),
            other => other,
        }
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSystem::B(n) => write!(f, "B{n}"),
            RootSystem::C(n) => write!(f, "C{n}"),
            RootSystem::F4 => write!(f, "F4"),
            RootSystem::G2 => write!(f, "G2"),
        }
    }
}

/// A row of the generalized McKay table: `G` normal in `H`, the quotient
/// singularity `C^2 / G`, and the frames of `R` and its affine extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceRecord {
    pub g_spec: GroupSpec,
    pub ambient: String,
    pub h_spec: GroupSpec,
    pub root_system: RootSystem,
    pub p_x: FrameShape,
    pub psi_r: FrameShape,
    pub phi_r: FrameShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    Ambient(SingularityRecord),
    Boundary(BoundaryRecord),
    Correspondence(CorrespondenceRecord),
}

impl Record {
    pub fn name(&self) -> String {
        match self {
            Record::Ambient(r) => r.name.clone(),
            Record::Boundary(r) => r.name.clone(),
            Record::Correspondence(r) => format!("{}<{}", r.g_spec, r.h_spec),
        }
    }
}

/// `(1 - t^d) / ((1 - t^q1)(1 - t^q2)(1 - t^q3))`.
pub fn poincare_series(weights: [u64; 3], degree: u64) -> FrameShape {
    FrameShape::from_pairs([(degree, 1), (weights[0], -1), (weights[1], -1), (weights[2], -1)])
}

fn frame(text: &str) -> FrameShape {
    text.parse().expect("tabulated frame shape parses")
}

fn triple(a: u64, b: u64, c: u64) -> Option<Vec<u64>> {
    Some(vec![a, b, c])
}

/// Weights of the simple and parabolic singularities: `A_k` from
/// `x^{k+1} + y^2 + z^2`, `D_k` from `x^{k-1} + x y^2 + z^2`, `E_6,7,8`, and
/// `E~6,7,8` from their usual cubic, quartic and sextic equations.
pub fn simple_ambient(name: &str) -> Option<SingularityRecord> {
    let key = normalize(name);
    let reduce = |w: [u64; 3], d: u64| {
        let g = w.iter().fold(d, |acc, &x| num_integer::gcd(acc, x));
        ([w[0] / g, w[1] / g, w[2] / g], d / g)
    };
    let (canonical, w, d, class) = if let Some(k) = key.strip_prefix('A').and_then(|k| k.parse::<u64>().ok()) {
        if k < 1 {
            return None;
        }
        let (w, d) = reduce([2, k + 1, k + 1], 2 * (k + 1));
        (format!("A{k}"), w, d, SingularityClass::Simple)
    } else if let Some(k) = key.strip_prefix('D').and_then(|k| k.parse::<u64>().ok()) {
        if k < 3 {
            return None;
        }
        let (w, d) = reduce([2, k - 2, k - 1], 2 * (k - 1));
        (format!("D{k}"), w, d, SingularityClass::Simple)
    } else {
        let (w, d, class) = match key.as_str() {
            "E6" => ([3, 4, 6], 12, SingularityClass::Simple),
            "E7" => ([4, 6, 9], 18, SingularityClass::Simple),
            "E8" => ([6, 10, 15], 30, SingularityClass::Simple),
            "E~6" => ([1, 1, 1], 3, SingularityClass::Parabolic),
            "E~7" => ([1, 1, 2], 4, SingularityClass::Parabolic),
            "E~8" => ([1, 2, 3], 6, SingularityClass::Parabolic),
            _ => return None,
        };
        (key.clone(), w, d, class)
    };
    Some(SingularityRecord::plain(&canonical, w, d, class))
}

/// `B_n` with ambient `A_{2n-1}`.
pub fn boundary_b(n: u64) -> BoundaryRecord {
    BoundaryRecord {
        name: format!("B{n}"),
        ambient: format!("A{}", 2 * n - 1),
        p_x: FrameShape::from_pairs([(2 * n, 1), (1, -1), (n, -2)]),
        phi_f: FrameShape::from_pairs([(2 * n, 1), (n, -1)]),
        psi_f: Some(FrameShape::from_pairs([(1, 1), (n, 1)])),
        lagrange_dual: format!("C{n}"),
        class: SingularityClass::Simple,
    }
}

/// `C_n` with ambient `D_{n+1}`.
pub fn boundary_c(n: u64) -> BoundaryRecord {
    BoundaryRecord {
        name: format!("C{n}"),
        ambient: format!("D{}", n + 1),
        p_x: FrameShape::from_pairs([(2 * n, 1), (2, -1), (n - 1, -1), (n, -1)]),
        phi_f: FrameShape::from_pairs([(2 * n, 1), (n, -1)]),
        psi_f: Some(FrameShape::from_pairs([(2, 1), (n - 1, 1)])),
        lagrange_dual: format!("B{n}"),
        class: SingularityClass::Simple,
    }
}

/// First row of the McKay table: `C_{2n}` in `D~_n`, `R = B_n`.
pub fn correspondence_b(n: u64) -> CorrespondenceRecord {
    CorrespondenceRecord {
        g_spec: GroupSpec::Cyclic(2 * n),
        ambient: format!("A{}", 2 * n - 1),
        h_spec: GroupSpec::BinDihedral(n),
        root_system: RootSystem::B(n),
        p_x: FrameShape::from_pairs([(2 * n, 1), (1, -1), (n, -2)]),
        psi_r: FrameShape::from_pairs([(2, 1), (n - 1, 1)]),
        phi_r: FrameShape::from_pairs([(2 * n, 1), (n, -1)]),
    }
}

/// Second row: `D~_{n-1}` in `D~_{2(n-1)}`, `R = C_n`.
pub fn correspondence_c(n: u64) -> CorrespondenceRecord {
    CorrespondenceRecord {
        g_spec: GroupSpec::BinDihedral(n - 1),
        ambient: format!("D{}", n + 1),
        h_spec: GroupSpec::BinDihedral(2 * (n - 1)),
        root_system: RootSystem::C(n),
        p_x: FrameShape::from_pairs([(2 * n, 1), (2, -1), (n - 1, -1), (n, -1)]),
        psi_r: FrameShape::from_pairs([(1, 1), (n, 1)]),
        phi_r: FrameShape::from_pairs([(2 * n, 1), (n, -1)]),
    }
}

/// Drops `_`, braces, commas and blanks; maps the tilde spellings
/// (`\u{303}`, `affine`, `~` in front) to `X~k`.
pub fn normalize(name: &str) -> String {
    let mut s: String = name
        .chars()
        .filter(|c| !matches!(c, '_' | '{' | '}' | ',' | ' ' | '$' | '\\'))
        .collect();
    for prefix in ["affine", "widetilde", "tilde", "~"] {
        if let Some(rest) = s.strip_prefix(prefix) {
            let mut chars = rest.chars();
            if let Some(first) = chars.next() {
                s = format!("{first}~{}", chars.as_str());
            }
        }
    }
    s.replace('\u{303}', "~").replace("Ẽ", "E~")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogFilter {
    All,
    Ambient(Option<SingularityClass>),
    Boundary(Option<SingularityClass>),
    Correspondence,
}

impl FromStr for CatalogFilter {
    type Err = Error;

    /// `all`, `ambient`, `boundary`, `mckay`, a boundary class (`simple`,
    /// `parabolic`, `exceptional`, `hyperbolic`, ...; `<class>-boundary`
    /// is accepted too) or `ambient-<class>`.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => CatalogFilter::All,
            "ambient" => CatalogFilter::Ambient(None),
            "boundary" | "all-boundary" => CatalogFilter::Boundary(None),
            "mckay" | "correspondence" => CatalogFilter::Correspondence,
            _ => {
                if let Some(c) = s.strip_prefix("ambient-") {
                    CatalogFilter::Ambient(Some(c.parse()?))
                } else {
                    let c = s.strip_suffix("-boundary").unwrap_or(s);
                    CatalogFilter::Boundary(Some(c.parse()?))
                }
            }
        })
    }
}

/// The whole dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    /// Exceptional unimodal and bimodal ambient singularities.
    pub ambient: Vec<SingularityRecord>,
    /// Boundary table rows except the parametrized `B_n`, `C_n`.
    pub boundary: Vec<BoundaryRecord>,
    /// McKay table rows except the parametrized first two.
    pub correspondence: Vec<CorrespondenceRecord>,
    /// `n` for the parametrized rows in [`Catalog::list`] and exports.
    pub family_n: u64,
}

impl Default for Catalog {
    fn default() -> Self {
        Self::standard()
    }
}

impl Catalog {
    pub fn standard() -> Self {
        use SingularityClass::*;
        let amb = |name: &str, w: [u64; 3], d: u64, class, gab: Option<Vec<u64>>, dol: Option<Vec<u64>>, dual: Option<&str>| {
            SingularityRecord {
                name: name.into(),
                weights: w,
                degree: d,
                class,
                dolgachev: dol,
                gabrielov: gab,
                arnold_dual: dual.map(String::from),
            }
        };
        let ambient = vec![
            amb("E14", [3, 8, 12], 24, ExceptionalUnimodal, triple(2, 3, 9), triple(3, 3, 4), Some("Q10")),
            amb("J3,0", [2, 6, 9], 18, Bimodal, triple(2, 3, 10), Some(vec![2, 2, 2, 3]), None),
            amb("E18", [3, 10, 15], 30, Bimodal, None, None, None),
            amb("W13", [3, 4, 8], 16, ExceptionalUnimodal, triple(2, 5, 6), triple(3, 4, 4), Some("S11")),
            amb("W1,0", [2, 3, 6], 12, Bimodal, triple(2, 6, 6), Some(vec![2, 2, 3, 3]), None),
            amb("W12", [4, 5, 10], 20, ExceptionalUnimodal, triple(2, 5, 5), triple(2, 5, 5), Some("W12")),
            amb("Q10", [6, 8, 9], 24, ExceptionalUnimodal, triple(3, 3, 4), triple(2, 3, 9), Some("E14")),
            amb("Q11", [4, 6, 7], 18, ExceptionalUnimodal, triple(3, 3, 5), triple(2, 4, 7), Some("Z13")),
            amb("Q12", [3, 5, 6], 15, ExceptionalUnimodal, triple(3, 3, 6), triple(3, 3, 6), Some("Q12")),
            amb("S11", [4, 5, 6], 16, ExceptionalUnimodal, triple(3, 4, 4), triple(2, 5, 6), Some("W13")),
            amb("U12", [3, 4, 4], 12, ExceptionalUnimodal, triple(4, 4, 4), triple(4, 4, 4), Some("U12")),
        ];
        let bnd = |name: &str, ambient: &str, p: &str, psi: Option<&str>, phi: &str, dual: &str, class| BoundaryRecord {
            name: name.into(),
            ambient: ambient.into(),
            p_x: frame(p),
            phi_f: frame(phi),
            psi_f: psi.map(frame),
            lagrange_dual: dual.into(),
            class,
        };
        let boundary = vec![
            bnd("F4", "E6", "12/3·4·6", Some("2·3"), "2·12/4·6", "F4", Simple),
            bnd("F1,0", "E~8", "6/1·2·3", None, "3·3", "L6", Parabolic),
            bnd("K4,2", "E~7", "4/1·1·2", None, "2·4", "K4,2", Parabolic),
            bnd("L6", "E~6", "3/1·1·1", None, "3·3", "F1,0", Parabolic),
            bnd("F8", "E14", "24/3·8·12", Some("3·4"), "4·24/8·12", "E6,0", ExceptionalUnimodal),
            bnd("F9", "J3,0", "18/2·6·9", Some("2·6"), "18/9", "E7,0", ExceptionalUnimodal),
            bnd("F10", "E18", "30/3·10·15", None, "15/5", "E8,0", ExceptionalUnimodal),
            bnd("K8*", "W13", "16/3·4·8", Some("3·4"), "16/8", "D5^1", ExceptionalUnimodal),
            bnd("K9*", "W1,0", "12/2·3·6", Some("2·6"), "12/3", "E6,1", ExceptionalUnimodal),
            bnd("K8**", "W12", "20/4·5·10", Some("2·5"), "2·20/4·10", "K8**", ExceptionalUnimodal),
            bnd("E6,0", "Q10", "24/6·8·9", None, "4·24/8·12", "F8", ExceptionalUnimodal),
            bnd("E7,0", "Q11", "18/4·6·7", None, "18/9", "F9", ExceptionalUnimodal),
            bnd("E8,0", "Q12", "15/3·5·6", Some("3·6"), "15/5", "F10", ExceptionalUnimodal),
            bnd("D5^1", "S11", "16/4·5·6", None, "16/8", "K8*", ExceptionalUnimodal),
            bnd("E6,1", "U12", "12/3·4·4", Some("4·4"), "12/3", "K9*", ExceptionalUnimodal),
            bnd("D4^2", "U12", "12/3·4·4", None, "4·12/2·6", "D4^2", ExceptionalUnimodal),
        ];
        let correspondence = vec![
            CorrespondenceRecord {
                g_spec: GroupSpec::BinTetrahedral,
                ambient: "E6".into(),
                h_spec: GroupSpec::BinOctahedral,
                root_system: RootSystem::F4,
                p_x: frame("12/3·4·6"),
                psi_r: frame("2·3"),
                phi_r: frame("2·12/4·6"),
            },
            CorrespondenceRecord {
                g_spec: GroupSpec::BinDihedral(2),
                ambient: "D4".into(),
                h_spec: GroupSpec::BinTetrahedral,
                root_system: RootSystem::G2,
                p_x: frame("6/2·2·3"),
                psi_r: frame("1·2"),
                phi_r: frame("1·6/2·3"),
            },
        ];
        Catalog { ambient, boundary, correspondence, family_n: DEFAULT_FAMILY_N }
    }

    /// Tabulated or parametrized ambient singularity.
    pub fn ambient_named(&self, name: &str) -> Option<SingularityRecord> {
        let key = normalize(name);
        self.ambient
            .iter()
            .find(|r| normalize(&r.name) == key)
            .cloned()
            .or_else(|| simple_ambient(&key))
    }

    /// Tabulated boundary singularity, or `B<n>` / `C<n>` for `n >= 2`.
    pub fn boundary_named(&self, name: &str) -> Option<BoundaryRecord> {
        let key = match normalize(name).as_str() {
            "D41" | "L6=D41" => "L6".to_string(),
            k => k.to_string(),
        };
        if let Some(r) = self.boundary.iter().find(|r| normalize(&r.name) == key) {
            return Some(r.clone());
        }
        let family = |prefix: char| key.strip_prefix(prefix).and_then(|n| n.parse::<u64>().ok()).filter(|&n| n >= 2);
        family('B').map(boundary_b).or_else(|| family('C').map(boundary_c))
    }

    /// All boundary rows with the parametrized ones at `n`.
    pub fn boundary_rows(&self, n: u64) -> Vec<BoundaryRecord> {
        let mut out = vec![boundary_b(n), boundary_c(n)];
        out.extend(self.boundary.iter().cloned());
        out
    }

    /// All McKay table rows with the parametrized ones at `n`.
    pub fn correspondence_rows(&self, n: u64) -> Vec<CorrespondenceRecord> {
        let mut out = vec![correspondence_b(n), correspondence_c(n)];
        out.extend(self.correspondence.iter().cloned());
        out
    }

    /// Boundary rows first, then ambients (`B3` and `A3` never collide).
    pub fn lookup(&self, name: &str) -> Result<Record> {
        if let Some(r) = self.boundary_named(name) {
            return Ok(Record::Boundary(r));
        }
        if let Some(r) = self.ambient_named(name) {
            return Ok(Record::Ambient(r));
        }
        Err(Error::UnknownRecord(name.to_string()))
    }

    /// Poincare series of a named ambient, or of the ambient of a named
    /// boundary singularity.
    pub fn poincare_named(&self, name: &str) -> Result<FrameShape> {
        match self.lookup(name)? {
            Record::Ambient(a) => Ok(a.poincare()),
            Record::Boundary(b) => self
                .ambient_named(&b.ambient)
                .map(|a| a.poincare())
                .ok_or(Error::UnknownRecord(b.ambient)),
            Record::Correspondence(_) => unreachable!("lookup never returns correspondences"),
        }
    }

    pub fn list(&self, filter: CatalogFilter) -> Vec<Record> {
        let n = self.family_n;
        let mut out = Vec::new();
        let boundary = |class: Option<SingularityClass>| {
            self.boundary_rows(n)
                .into_iter()
                .filter(move |r| class.is_none_or(|c| r.class == c))
                .map(Record::Boundary)
        };
        let ambient = |class: Option<SingularityClass>| {
            self.ambient
                .iter()
                .filter(move |r| class.is_none_or(|c| r.class == c))
                .cloned()
                .map(Record::Ambient)
        };
        match filter {
            CatalogFilter::All => {
                out.extend(ambient(None));
                out.extend(boundary(None));
                out.extend(self.correspondence_rows(n).into_iter().map(Record::Correspondence));
            }
            CatalogFilter::Ambient(c) => out.extend(ambient(c)),
            CatalogFilter::Boundary(c) => out.extend(boundary(c)),
            CatalogFilter::Correspondence => {
                out.extend(self.correspondence_rows(n).into_iter().map(Record::Correspondence))
            }
        }
        out
    }

    pub fn export(&self, filter: CatalogFilter) -> CatalogDocument {
        let mut doc = CatalogDocument {
            version: SCHEMA_VERSION.into(),
            ambient: vec![],
            boundary: vec![],
            mckay: vec![],
        };
        for r in self.list(filter) {
            match r {
                Record::Ambient(a) => doc.ambient.push(a),
                Record::Boundary(b) => doc.boundary.push(b),
                Record::Correspondence(c) => doc.mckay.push(c),
            }
        }
        doc
    }

    pub fn export_json(&self, filter: CatalogFilter) -> String {
        serde_json::to_string_pretty(&self.export(filter)).expect("catalog serializes")
    }
}

/// `{"version": "1", "ambient": [...], "boundary": [...], "mckay": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogDocument {
    pub version: String,
    pub ambient: Vec<SingularityRecord>,
    pub boundary: Vec<BoundaryRecord>,
    pub mckay: Vec<CorrespondenceRecord>,
}

impl CatalogDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: CatalogDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported catalog version {:?}", doc.version)));
        }
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(pairs: &[(u64, i64)]) -> FrameShape {
        FrameShape::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn lookups() {
        let c = Catalog::standard();
        let Record::Boundary(f8) = c.lookup("F8").unwrap() else { panic!() };
        assert_eq!(f8.ambient, "E14");
        assert_eq!(f8.phi_f, fr(&[(4, 1), (24, 1), (8, -1), (12, -1)]));
        assert_eq!(f8.psi_f, Some(fr(&[(3, 1), (4, 1)])));
        assert_eq!(f8.lagrange_dual, "E6,0");
        let Record::Ambient(q12) = c.lookup("Q12").unwrap() else { panic!() };
        assert_eq!((q12.weights, q12.degree), ([3, 5, 6], 15));
        assert_eq!(q12.dolgachev, Some(vec![3, 3, 6]));
        assert_eq!(q12.gabrielov, Some(vec![3, 3, 6]));
        assert_eq!(q12.arnold_dual.as_deref(), Some("Q12"));
        assert_eq!(c.lookup("Zork"), Err(Error::UnknownRecord("Zork".into())));
        assert!(matches!(c.lookup("E_{6,0}"), Ok(Record::Boundary(_))));
        assert!(matches!(c.lookup("D_{4,1}"), Ok(Record::Boundary(b)) if b.name == "L6"));
        assert!(matches!(c.lookup("J30"), Ok(Record::Ambient(a)) if a.name == "J3,0"));
        assert!(matches!(c.lookup("affineE8"), Ok(Record::Ambient(a)) if a.name == "E~8"));
        assert!(matches!(c.lookup("B5"), Ok(Record::Boundary(b)) if b.ambient == "A9"));
        assert!(matches!(c.lookup("A7"), Ok(Record::Ambient(a)) if a.weights == [1, 4, 4] && a.degree == 8));
        assert!(matches!(c.lookup("D5"), Ok(Record::Ambient(a)) if a.weights == [2, 3, 4] && a.degree == 8));
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare_series([3, 8, 12], 24), fr(&[(24, 1), (3, -1), (8, -1), (12, -1)]));
        assert_eq!(poincare_series([1, 2, 3], 6), fr(&[(6, 1), (1, -1), (2, -1), (3, -1)]));
        assert_eq!(poincare_series([1, 1, 1], 1), fr(&[(1, -2)]));
        assert_eq!(Catalog::standard().poincare_named("E14").unwrap().to_string(), "24/3·8·12");
    }

    #[test]
    fn counts() {
        let c = Catalog::standard();
        assert_eq!(c.list(CatalogFilter::Boundary(None)).len(), 18);
        assert_eq!(c.list("exceptional-boundary".parse().unwrap()).len(), 12);
        assert_eq!(c.list("hyperbolic".parse().unwrap()).len(), 0);
        let doc = c.export(CatalogFilter::All);
        assert_eq!((doc.boundary.len(), doc.ambient.len(), doc.mckay.len()), (18, 11, 4));
    }

    #[test]
    fn json_round_trip() {
        let c = Catalog::standard();
        let text = c.export_json(CatalogFilter::All);
        assert!(text.contains("\"version\": \"1\""));
        assert_eq!(CatalogDocument::parse(&text).unwrap(), c.export(CatalogFilter::All));
        let one = c.lookup("F8").unwrap();
        let back: Record = serde_json::from_str(&serde_json::to_string(&one).unwrap()).unwrap();
        assert_eq!(back, one);
    }

    #[test]
    fn table_p_x_matches_weights() {
        let c = Catalog::standard();
        for n in 2..=8 {
            for r in c.boundary_rows(n) {
                let a = c.ambient_named(&r.ambient).unwrap();
                assert_eq!(a.poincare(), r.p_x, "{}", r.name);
            }
        }
    }
}
