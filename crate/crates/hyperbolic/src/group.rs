use crate::error::{HypError, Result};
use crate::isometry::Isometry;
use crate::point::{hyp_distance, HPoint};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const DEFAULT_ORBIT_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Cyclic,
    Schottky,
}

/// A discrete group given by generators, with a marked basepoint.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    kind: GroupKind,
    dim: u8,
    generators: Vec<Isometry>,
    basepoint: HPoint,
    orbit_cap: usize,
}

/// One enumerated group element: reduced word (letters +-(i+1) indexing
/// generator i or its inverse), the matrix, and the basepoint displacement.
#[derive(Debug, Clone)]
pub struct OrbitElement {
    pub word: Vec<i32>,
    pub element: Isometry,
    pub displacement: f64,
}

impl GroupSpec {
    pub fn new(
        kind: GroupKind,
        dim: u8,
        generators: Vec<Isometry>,
        basepoint: Option<HPoint>,
    ) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(HypError::InvalidGroup(format!("dimension {dim} not in {{2,3}}")));
        }
        let basepoint = basepoint.unwrap_or_else(|| HPoint::basepoint(dim));
        if basepoint.dim() != dim {
            return Err(HypError::DimensionMismatch(dim, basepoint.dim()));
        }
        match kind {
            GroupKind::Cyclic => {
                if generators.len() != 1 {
                    return Err(HypError::InvalidGroup(format!(
                        "cyclic group needs exactly one generator, got {}",
                        generators.len()
                    )));
                }
            }
            GroupKind::Schottky => {
                if generators.len() < 2 {
                    return Err(HypError::InvalidGroup(
                        "schottky group needs at least two generators".into(),
                    ));
                }
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if g.dim() != dim {
                return Err(HypError::DimensionMismatch(dim, g.dim()));
            }
            if !g.is_hyperbolic() {
                return Err(HypError::InvalidGroup(format!(
                    "generator {i} is not hyperbolic (trace {})",
                    g.trace()
                )));
            }
        }
        if kind == GroupKind::Schottky {
            validate_isometric_circles(&generators)?;
        }
        Ok(GroupSpec {
            kind,
            dim,
            generators,
            basepoint,
            orbit_cap: DEFAULT_ORBIT_CAP,
        })
    }

    pub fn with_orbit_cap(mut self, cap: usize) -> Self {
        self.orbit_cap = cap;
        self
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }
    pub fn dim(&self) -> u8 {
        self.dim
    }
    /// Boundary dimension n = dim - 1.
    pub fn n(&self) -> u8 {
        self.dim - 1
    }
    pub fn generators(&self) -> &[Isometry] {
        &self.generators
    }
    pub fn basepoint(&self) -> &HPoint {
        &self.basepoint
    }

    /// The workspace's documented two-generator Schottky group: symmetric
    /// axes (-1.5, -0.5) and (0.5, 1.5), both of translation length 2.4.
    /// Isometric circles are pairwise disjoint and both generators displace
    /// the basepoint i by about 3.68.
    pub fn sample_schottky_pair() -> Self {
        let a = Isometry::with_axis(-1.5, -0.5, 2.4).expect("valid axis");
        let b = Isometry::with_axis(0.5, 1.5, 2.4).expect("valid axis");
        GroupSpec::new(GroupKind::Schottky, 2, vec![a, b], None).expect("ping-pong pair")
    }

    /// Smallest basepoint displacement among generators (inverses give the
    /// same values).
    pub fn min_displacement(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| {
                let img = g.apply(&self.basepoint).expect("generator acts");
                hyp_distance(&self.basepoint, &img).expect("same dim")
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Isometric circles of each generator and its inverse must be pairwise
/// disjoint (the ping-pong configuration).
fn validate_isometric_circles(gens: &[Isometry]) -> Result<()> {
    struct Circle {
        center: Complex64,
        radius: f64,
        label: String,
    }
    let mut circles = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        for (tag, h) in [("", *g), ("^-1", g.inverse())] {
            let m = h.matrix();
            let c = m[1][0];
            if c.norm() < 1e-12 {
                return Err(HypError::InvalidGroup(format!(
                    "generator {i}{tag} fixes infinity; isometric circle undefined"
                )));
            }
            circles.push(Circle {
                center: -m[1][1] / c,
                radius: 1.0 / c.norm(),
                label: format!("g{i}{tag}"),
            });
        }
    }
    for i in 0..circles.len() {
        for j in 0..i {
            let gap = (circles[i].center - circles[j].center).norm()
                - circles[i].radius
                - circles[j].radius;
            // a generator and its own inverse may share a circle boundary
            // only if they coincide, which the gap check also rejects
            if gap <= 0.0 {
                return Err(HypError::InvalidGroup(format!(
                    "isometric circles of {} and {} are not disjoint (gap {gap:.3e})",
                    circles[i].label, circles[j].label
                )));
            }
        }
    }
    Ok(())
}

/// Letter -> isometry (letters are +-(i+1)).
fn letter(gens: &[Isometry], l: i32) -> Isometry {
    let idx = (l.abs() - 1) as usize;
    if l > 0 {
        gens[idx]
    } else {
        gens[idx].inverse()
    }
}

/// Every nontrivial reduced-word element with basepoint displacement <= R,
/// sorted ascending by displacement (ties: shorter word, then lexicographic).
///
/// Completeness: reduced words are enumerated to length ceil(R/m) + 2 where
/// m is the minimal generator displacement; in the ping-pong configuration
/// displacement grows at least linearly in reduced word length at that rate.
pub fn enumerate_orbit(group: &GroupSpec, radius: f64) -> Result<Vec<OrbitElement>> {
    if !(radius > 0.0) {
        return Err(HypError::InvalidGroup(format!("radius {radius} must be positive")));
    }
    let base = group.basepoint();
    let mut out: Vec<OrbitElement> = match group.kind() {
        GroupKind::Cyclic => {
            let g = group.generators()[0];
            let mut items = Vec::new();
            for dir in [1i32, -1] {
                let step = if dir > 0 { g } else { g.inverse() };
                let mut cur = step;
                let mut k = 1usize;
                loop {
                    let img = cur.apply(base)?;
                    let r = hyp_distance(base, &img)?;
                    if r > radius {
                        break;
                    }
                    items.push(OrbitElement {
                        word: vec![dir; k],
                        element: cur,
                        displacement: r,
                    });
                    if items.len() > group.orbit_cap {
                        return Err(HypError::Capacity {
                            cap: group.orbit_cap,
                            radius,
                        });
                    }
                    cur = cur.compose(&step);
                    k += 1;
                }
            }
            items
        }
        GroupKind::Schottky => {
            let m = group.min_displacement();
            let max_len = (radius / m).ceil() as usize + 2;
            let gens = group.generators();
            let k = gens.len() as i32;
            let first_letters: Vec<i32> = (1..=k).chain((1..=k).map(|i| -i)).collect();
            // depth-first expansion per first letter, fanned out in parallel
            let branches = trapwave_par::map_slice(&first_letters, |&l0| {
                let mut found: Vec<OrbitElement> = Vec::new();
                let mut stack: Vec<(Vec<i32>, Isometry)> =
                    vec![(vec![l0], letter(gens, l0))];
                while let Some((word, mat)) = stack.pop() {
                    let img = mat.apply(base).expect("isometry acts");
                    let r = hyp_distance(base, &img).expect("same dim");
                    if r <= radius {
                        found.push(OrbitElement {
                            word: word.clone(),
                            element: mat,
                            displacement: r,
                        });
                    }
                    if word.len() < max_len {
                        let last = *word.last().unwrap();
                        for next in (1..=k).chain((1..=k).map(|i| -i)) {
                            if next == -last {
                                continue; // keep words reduced
                            }
                            let mut w = word.clone();
                            w.push(next);
                            stack.push((w, mat.compose(&letter(gens, next))));
                        }
                    }
                }
                found
            });
            let mut items: Vec<OrbitElement> = branches.into_iter().flatten().collect();
            if items.len() > group.orbit_cap {
                return Err(HypError::Capacity {
                    cap: group.orbit_cap,
                    radius,
                });
            }
            // numerically coincident elements guard (distinct reduced words
            // should be distinct elements in a ping-pong group)
            items.sort_by(|a, b| {
                a.displacement
                    .total_cmp(&b.displacement)
                    .then(a.word.len().cmp(&b.word.len()))
                    .then(a.word.cmp(&b.word))
            });
            let mut dedup: Vec<OrbitElement> = Vec::with_capacity(items.len());
            for item in items {
                let dup = dedup
                    .iter()
                    .rev()
                    .take_while(|p| (p.displacement - item.displacement).abs() < 1e-9)
                    .any(|p| p.element.close_to(&item.element, 1e-9));
                if !dup {
                    dedup.push(item);
                }
            }
            dedup
        }
    };
    out.sort_by(|a, b| {
        a.displacement
            .total_cmp(&b.displacement)
            .then(a.word.len().cmp(&b.word.len()))
            .then(a.word.cmp(&b.word))
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// serde wire format:
// {"kind": "cyclic"|"schottky", "dim": 2|3, "generators": [[a,b,c,d], ...]}
// with row-major entries, complex entries as [re, im] pairs.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryWire {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Serialize, Deserialize)]
struct GroupSpecWire {
    kind: GroupKind,
    dim: u8,
    generators: Vec<Vec<EntryWire>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basepoint: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit_cap: Option<usize>,
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let m = g.matrix();
                [m[0][0], m[0][1], m[1][0], m[1][1]]
                    .iter()
                    .map(|z| {
                        if self.dim == 2 {
                            EntryWire::Real(z.re)
                        } else {
                            EntryWire::Complex([z.re, z.im])
                        }
                    })
                    .collect()
            })
            .collect();
        let bp = if self.dim == 2 {
            vec![self.basepoint.x()[0], self.basepoint.y()]
        } else {
            vec![self.basepoint.x()[0], self.basepoint.x()[1], self.basepoint.y()]
        };
        GroupSpecWire {
            kind: self.kind,
            dim: self.dim,
            generators,
            basepoint: Some(bp),
            orbit_cap: Some(self.orbit_cap),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let wire = GroupSpecWire::deserialize(de)?;
        let mut gens = Vec::with_capacity(wire.generators.len());
        for entries in &wire.generators {
            if entries.len() != 4 {
                return Err(D::Error::custom("each generator needs 4 row-major entries"));
            }
            let vals: Vec<Complex64> = entries
                .iter()
                .map(|e| match e {
                    EntryWire::Real(x) => Complex64::new(*x, 0.0),
                    EntryWire::Complex([re, im]) => Complex64::new(*re, *im),
                })
                .collect();
            let m = [[vals[0], vals[1]], [vals[2], vals[3]]];
            let iso = if wire.dim == 2 {
                if vals.iter().any(|z| z.im != 0.0) {
                    return Err(D::Error::custom("dim-2 generators must have real entries"));
                }
                Isometry::real(vals[0].re, vals[1].re, vals[2].re, vals[3].re)
            } else {
                Isometry::complex(m)
            };
            gens.push(iso.map_err(D::Error::custom)?);
        }
        let basepoint = match wire.basepoint {
            None => None,
            Some(b) => Some(match (wire.dim, b.len()) {
                (2, 2) => HPoint::h2(b[0], b[1]).map_err(D::Error::custom)?,
                (3, 3) => HPoint::h3(b[0], b[1], b[2]).map_err(D::Error::custom)?,
                _ => return Err(D::Error::custom("basepoint length does not match dim")),
            }),
        };
        let mut spec =
            GroupSpec::new(wire.kind, wire.dim, gens, basepoint).map_err(D::Error::custom)?;
        if let Some(cap) = wire.orbit_cap {
            spec = spec.with_orbit_cap(cap);
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn schottky_pair() -> GroupSpec {
        // two hyperbolic elements with well-separated axes
        let a = Isometry::with_axis(-1.0, 1.0, 3.0).unwrap();
        let b = Isometry::with_axis(5.0, 7.0, 3.0).unwrap();
        GroupSpec::new(GroupKind::Schottky, 2, vec![a, b], None).unwrap()
    }

    #[test]
    fn cyclic_orbit_displacements_are_multiples() {
        let l = 1.3;
        let g = GroupSpec::new(
            GroupKind::Cyclic,
            2,
            vec![Isometry::dilation(2, l)],
            None,
        )
        .unwrap();
        let orbit = enumerate_orbit(&g, 3.5 * l).unwrap();
        assert_eq!(orbit.len(), 6); // +-1, +-2, +-3
        let mut disps: Vec<f64> = orbit.iter().map(|o| o.displacement).collect();
        disps.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        for (k, d) in disps.iter().enumerate() {
            assert!((d - l * (k + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_orbit_below_min_displacement() {
        let g = GroupSpec::new(
            GroupKind::Cyclic,
            3,
            vec![Isometry::dilation(3, 2.0)],
            None,
        )
        .unwrap();
        assert!(enumerate_orbit(&g, 1.0).unwrap().is_empty());
        let s = schottky_pair();
        assert!(enumerate_orbit(&s, 0.5).unwrap().is_empty());
    }

    #[test]
    fn orbit_sorted_dedup_and_reduced() {
        let s = schottky_pair();
        let orbit = enumerate_orbit(&s, 10.0).unwrap();
        assert!(!orbit.is_empty());
        for w in orbit.windows(2) {
            assert!(w[0].displacement <= w[1].displacement);
            assert!(w[0].word != w[1].word);
        }
        for el in &orbit {
            for pair in el.word.windows(2) {
                assert_ne!(pair[0], -pair[1], "word not reduced: {:?}", el.word);
            }
            // displacement consistent with the stored matrix
            let img = el.element.apply(s.basepoint()).unwrap();
            let d = hyp_distance(s.basepoint(), &img).unwrap();
            assert!((d - el.displacement).abs() < 1e-10);
        }
    }

    #[test]
    fn schottky_count_matches_exhaustive_word_oracle() {
        let s = schottky_pair();
        // oracle: exhaustive reduced words to length 12, no radius-derived cap
        let gens = s.generators();
        let base = s.basepoint();
        let mut counts = std::collections::BTreeMap::new();
        let radii = [6.0, 9.0, 12.0];
        let mut stack: Vec<(Vec<i32>, Isometry)> = vec![];
        for l0 in [1i32, 2, -1, -2] {
            stack.push((vec![l0], letter(gens, l0)));
        }
        while let Some((word, mat)) = stack.pop() {
            let img = mat.apply(base).unwrap();
            let r = hyp_distance(base, &img).unwrap();
            for &rad in &radii {
                if r <= rad {
                    *counts.entry(format!("{rad}")).or_insert(0usize) += 1;
                }
            }
            if word.len() < 12 {
                let last = *word.last().unwrap();
                for next in [1i32, 2, -1, -2] {
                    if next != -last {
                        let mut w = word.clone();
                        w.push(next);
                        stack.push((w, mat.compose(&letter(gens, next))));
                    }
                }
            }
        }
        for &rad in &radii {
            let ours = enumerate_orbit(&s, rad).unwrap().len();
            assert_eq!(ours, counts[&format!("{rad}")], "N({rad}) mismatch");
        }
    }

    #[test]
    fn capacity_error_reports_cap() {
        let s = schottky_pair().with_orbit_cap(10);
        match enumerate_orbit(&s, 12.0) {
            Err(HypError::Capacity { cap, .. }) => assert_eq!(cap, 10),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn overlapping_circles_rejected() {
        let a = Isometry::with_axis(-1.0, 1.0, 0.4).unwrap();
        let b = Isometry::with_axis(0.5, 2.5, 0.4).unwrap();
        // short translation lengths -> fat isometric circles that overlap
        assert!(GroupSpec::new(GroupKind::Schottky, 2, vec![a, b], None).is_err());
    }

    #[test]
    fn json_round_trip_matches_wire_format() {
        let s = schottky_pair();
        let js = serde_json::to_string(&s).unwrap();
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v["kind"], "schottky");
        assert_eq!(v["dim"], 2);
        assert_eq!(v["generators"].as_array().unwrap().len(), 2);
        assert_eq!(v["generators"][0].as_array().unwrap().len(), 4);
        let back: GroupSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back.generators().len(), 2);
        assert!(back.generators()[0].close_to(&s.generators()[0], 1e-14));

        let g3 = GroupSpec::new(
            GroupKind::Cyclic,
            3,
            vec![Isometry::dilation(3, 1.5)],
            None,
        )
        .unwrap();
        let js3 = serde_json::to_string(&g3).unwrap();
        let v3: serde_json::Value = serde_json::from_str(&js3).unwrap();
        // complex entries serialize as [re, im]
        assert!(v3["generators"][0][0].as_array().unwrap().len() == 2);
        let back3: GroupSpec = serde_json::from_str(&js3).unwrap();
        assert!(back3.generators()[0].close_to(&g3.generators()[0], 1e-14));
    }
}
