//! Logical tension of state triples — the Pancharatnam phase of the cyclic
//! overlap product — and its Bloch-sphere reading for qubits, where the
//! tension equals half the solid angle of the geodesic triangle spanned by
//! the three states.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{inner_product, principal_arg, wrap_phase, SpectralObservable, StateVector};
use crate::policy::POLICY;

/// Whether a triple's statistics still admit a classical reading.
/// The boundary sits at |S| = π/2, where weak conditional probabilities
/// acquire negative real parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MagnitudeClass {
    /// |S| < π/2
    ClassicalLike,
    /// |S| ≥ π/2
    Paradoxical,
}

/// Logical tension of a state triple.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TensionReport {
    /// S(i,m,f) = Arg(⟨f|m⟩⟨m|i⟩⟨i|f⟩) on (−π, π]. Zero when degenerate.
    pub tension: f64,
    pub magnitude_class: MagnitudeClass,
    /// Set when any pairwise overlap magnitude falls below the magnitude
    /// floor; the phase is then meaningless.
    pub degenerate: bool,
}

/// Multiply the three overlaps in a canonical order so that any cyclic
/// rotation of the inputs produces the bit-identical product.
fn cyclic_product(overlaps: [Complex64; 3]) -> Complex64 {
    let mut ordered = overlaps;
    ordered.sort_by(|a, b| {
        (a.re, a.im.abs(), a.im)
            .partial_cmp(&(b.re, b.im.abs(), b.im))
            .expect("overlaps of normalized states are finite")
    });
    ordered[0] * ordered[1] * ordered[2]
}

/// The logical tension S(i,m,f) = Arg(⟨f|m⟩⟨m|i⟩⟨i|f⟩).
///
/// Cyclic rotations of the arguments leave the product (and hence the
/// tension) unchanged; reversing the order conjugates it and flips the sign.
/// A triple with two coinciding states collapses to a nonnegative real
/// product, so its tension is zero without special-casing.
pub fn logical_tension(
    i: &StateVector,
    m: &StateVector,
    f: &StateVector,
) -> Result<TensionReport> {
    if i.dim() != m.dim() {
        return Err(Error::DimensionMismatch(i.dim(), m.dim()));
    }
    if i.dim() != f.dim() {
        return Err(Error::DimensionMismatch(i.dim(), f.dim()));
    }
    let fm = inner_product(f, m)?;
    let mi = inner_product(m, i)?;
    let if_ = inner_product(i, f)?;
    let degenerate = fm.norm() < POLICY.magnitude_floor
        || mi.norm() < POLICY.magnitude_floor
        || if_.norm() < POLICY.magnitude_floor;
    let tension = if degenerate {
        0.0
    } else {
        principal_arg(cyclic_product([fm, mi, if_]))
    };
    let magnitude_class = if tension.abs() < FRAC_PI_2 {
        MagnitudeClass::ClassicalLike
    } else {
        MagnitudeClass::Paradoxical
    };
    Ok(TensionReport {
        tension,
        magnitude_class,
        degenerate,
    })
}

/// A point on the Bloch sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm_sq = x * x + y * y + z * z;
        if (norm_sq - 1.0).abs() > POLICY.construction_tol {
            return Err(Error::InvalidParameter(format!(
                "Bloch vector has squared norm {norm_sq}, expected 1"
            )));
        }
        Ok(Self { x, y, z })
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    fn cross(&self, other: &BlochVector) -> (f64, f64, f64) {
        (
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }
}

/// Embed a qubit state (a, b) as the Bloch vector
/// (2 Re(ā b), 2 Im(ā b), |a|² − |b|²).
pub fn bloch_vector(s: &StateVector) -> Result<BlochVector> {
    if s.dim() != 2 {
        return Err(Error::NotAQubit(s.dim()));
    }
    let a = s.amplitudes()[0];
    let b = s.amplitudes()[1];
    let ab = a.conj() * b;
    Ok(BlochVector {
        x: 2.0 * ab.re,
        y: 2.0 * ab.im,
        z: a.norm_sqr() - b.norm_sqr(),
    })
}

const TRIANGLE_DEGENERACY_TOL: f64 = 1e-10;

/// Signed solid angle of the geodesic triangle (a, b, c) on the unit sphere,
/// via the oriented half-angle formula
/// tan(Ω/2) = a·(b×c) / (1 + a·b + b·c + c·a).
///
/// The sign follows the orientation of the ordered triple. Coincident or
/// antipodal pairs leave no triangle to measure.
pub fn geodesic_triangle_area(a: &BlochVector, b: &BlochVector, c: &BlochVector) -> Result<f64> {
    for (u, v, which) in [(a, b, "a,b"), (b, c, "b,c"), (c, a, "c,a")] {
        let dot = u.dot(v);
        if dot > 1.0 - TRIANGLE_DEGENERACY_TOL {
            return Err(Error::DegenerateTriangle(format!(
                "vertices {which} coincide"
            )));
        }
        if dot < -1.0 + TRIANGLE_DEGENERACY_TOL {
            return Err(Error::DegenerateTriangle(format!(
                "vertices {which} are antipodal"
            )));
        }
    }
    let (cx, cy, cz) = b.cross(c);
    let triple = a.x * cx + a.y * cy + a.z * cz;
    let denom = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    Ok(2.0 * triple.atan2(denom))
}

/// Qubit tension against half the signed triangle area.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TensionAreaConsistency {
    pub tension: f64,
    pub half_area: f64,
    pub matched: bool,
}

const AREA_MATCH_TOL: f64 = 1e-9;

/// Check the qubit area law: |S(i,m,f)| equals half the solid angle of the
/// Bloch triangle (i, m, f).
///
/// Sign convention, fixed once from the octant triple (|+i⟩, |0⟩, |+⟩) and
/// enforced globally: the tension equals minus half the solid angle signed by
/// the ordered Bloch triple, S(i,m,f) = −Ω(b_i, b_m, b_f)/2.
pub fn qubit_tension_consistency(
    i: &StateVector,
    m: &StateVector,
    f: &StateVector,
) -> Result<TensionAreaConsistency> {
    let bi = bloch_vector(i)?;
    let bm = bloch_vector(m)?;
    let bf = bloch_vector(f)?;
    let half_area = 0.5 * geodesic_triangle_area(&bi, &bm, &bf)?;
    let tension = logical_tension(i, m, f)?.tension;
    let matched = wrap_phase(tension + half_area).abs() <= AREA_MATCH_TOL;
    Ok(TensionAreaConsistency {
        tension,
        half_area,
        matched,
    })
}

/// S(i,m₀,f) − S(i,m₁,f) for the two orthogonal eigenstates of a qubit basis:
/// the rotation angle about the m-axis that carries the initial state into
/// the final state's half plane. Coincides with the relative phase S₀ − S₁ of
/// the optimal unitary.
pub fn orthogonal_pair_tension_difference(
    i: &StateVector,
    f: &StateVector,
    basis: &SpectralObservable,
) -> Result<f64> {
    if basis.dim() != 2 {
        return Err(Error::NotAQubit(basis.dim()));
    }
    if i.dim() != 2 {
        return Err(Error::NotAQubit(i.dim()));
    }
    if f.dim() != 2 {
        return Err(Error::NotAQubit(f.dim()));
    }
    let s0 = logical_tension(i, &basis.eigenbasis()[0], f)?;
    let s1 = logical_tension(i, &basis.eigenbasis()[1], f)?;
    Ok(s0.tension - s1.tension)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn octant_tension_is_minus_quarter_pi() {
        let report = logical_tension(
            &StateVector::plus_i(),
            &StateVector::basis_state(2, 0).unwrap(),
            &StateVector::plus(),
        )
        .unwrap();
        assert!((report.tension + FRAC_PI_4).abs() < 1e-14);
        assert_eq!(report.magnitude_class, MagnitudeClass::ClassicalLike);
        assert!(!report.degenerate);
    }

    #[test]
    fn coincident_states_have_zero_tension() {
        let i = StateVector::plus_i();
        let f = StateVector::plus();
        let report = logical_tension(&i, &i, &f).unwrap();
        assert_eq!(report.tension, 0.0);
        assert!(!report.degenerate);
    }

    #[test]
    fn real_amplitude_triple_has_zero_tension() {
        // all three in the x–z great circle, same half plane
        let a = StateVector::from_reals(&[0.9, (1.0f64 - 0.81).sqrt()]).unwrap();
        let b = StateVector::plus();
        let c = StateVector::from_reals(&[0.3, (1.0f64 - 0.09).sqrt()]).unwrap();
        let report = logical_tension(&a, &b, &c).unwrap();
        assert!(report.tension.abs() < 1e-14);
    }

    #[test]
    fn orthogonal_pair_marks_degenerate() {
        let report = logical_tension(
            &StateVector::plus(),
            &StateVector::minus(),
            &StateVector::plus_i(),
        )
        .unwrap();
        assert!(report.degenerate);
        assert_eq!(report.tension, 0.0);
    }

    #[test]
    fn cyclic_invariance_is_exact() {
        let i = StateVector::new(vec![
            Complex64::new(0.6, 0.1),
            Complex64::new(-0.3, 0.74),
        ])
        .unwrap();
        let m = StateVector::new(vec![
            Complex64::new(0.2, -0.5),
            Complex64::new(0.8, 0.27),
        ])
        .unwrap();
        let f = StateVector::plus_i();
        let s = logical_tension(&i, &m, &f).unwrap().tension;
        assert_eq!(s, logical_tension(&m, &f, &i).unwrap().tension);
        assert_eq!(s, logical_tension(&f, &i, &m).unwrap().tension);
    }

    #[test]
    fn bloch_vectors_of_cardinal_states() {
        let b = bloch_vector(&StateVector::basis_state(2, 0).unwrap()).unwrap();
        assert_eq!((b.x, b.y, b.z), (0.0, 0.0, 1.0));
        let b = bloch_vector(&StateVector::plus()).unwrap();
        assert!((b.x - 1.0).abs() < 1e-15 && b.y.abs() < 1e-15 && b.z.abs() < 1e-15);
        let b = bloch_vector(&StateVector::plus_i()).unwrap();
        assert!((b.y - 1.0).abs() < 1e-15 && b.x.abs() < 1e-15 && b.z.abs() < 1e-15);
    }

    #[test]
    fn bloch_vector_rejects_non_qubit() {
        let s = StateVector::uniform(3).unwrap();
        assert!(matches!(bloch_vector(&s), Err(Error::NotAQubit(3))));
    }

    #[test]
    fn octant_solid_angle() {
        let x = BlochVector::new(1.0, 0.0, 0.0).unwrap();
        let y = BlochVector::new(0.0, 1.0, 0.0).unwrap();
        let z = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        let area = geodesic_triangle_area(&x, &y, &z).unwrap();
        assert!((area - FRAC_PI_2).abs() < 1e-14);
        // reversed orientation flips the sign
        let area = geodesic_triangle_area(&z, &y, &x).unwrap();
        assert!((area + FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn degenerate_triangle_errors() {
        let x = BlochVector::new(1.0, 0.0, 0.0).unwrap();
        let z = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            geodesic_triangle_area(&x, &x, &z),
            Err(Error::DegenerateTriangle(_))
        ));
        let minus_x = BlochVector::new(-1.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            geodesic_triangle_area(&x, &minus_x, &z),
            Err(Error::DegenerateTriangle(_))
        ));
    }

    #[test]
    fn coplanar_same_half_plane_zero_area() {
        // three points on the x–z great circle, same half plane
        let a = BlochVector::new(FRAC_PI_4.cos(), 0.0, FRAC_PI_4.sin()).unwrap();
        let b = BlochVector::new(1.0, 0.0, 0.0).unwrap();
        let c = BlochVector::new((0.3f64).cos(), 0.0, -(0.3f64).sin()).unwrap();
        let area = geodesic_triangle_area(&a, &b, &c).unwrap();
        assert!(area.abs() < 1e-10);
    }

    #[test]
    fn octant_consistency() {
        let rec = qubit_tension_consistency(
            &StateVector::plus_i(),
            &StateVector::basis_state(2, 0).unwrap(),
            &StateVector::plus(),
        )
        .unwrap();
        assert!((rec.tension + FRAC_PI_4).abs() < 1e-14);
        assert!((rec.half_area - FRAC_PI_4).abs() < 1e-14);
        assert!(rec.matched);
    }

    #[test]
    fn consistency_rejects_degenerate_triangle() {
        let i = StateVector::plus();
        let res = qubit_tension_consistency(&i, &i, &StateVector::plus_i());
        assert!(matches!(res, Err(Error::DegenerateTriangle(_))));
    }

    #[test]
    fn tension_difference_octant() {
        let d = orthogonal_pair_tension_difference(
            &StateVector::plus_i(),
            &StateVector::plus(),
            &SpectralObservable::pauli_z(),
        )
        .unwrap();
        assert!((d + FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn tension_difference_same_state_is_zero() {
        let plus = StateVector::plus();
        let d =
            orthogonal_pair_tension_difference(&plus, &plus, &SpectralObservable::pauli_z())
                .unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn tension_difference_real_amplitudes_is_zero() {
        let i = StateVector::from_reals(&[0.8, 0.6]).unwrap();
        let f = StateVector::from_reals(&[0.28, 0.96]).unwrap();
        let d = orthogonal_pair_tension_difference(&i, &f, &SpectralObservable::pauli_z())
            .unwrap();
        assert!(d.abs() < 1e-14);
    }

    #[test]
    fn classification_boundary() {
        let i = StateVector::plus();
        let m = StateVector::basis_state(2, 0).unwrap();
        // A final state with a wide relative phase pushes the tension past π/2.
        let f = StateVector::new(vec![
            Complex64::new(0.1, 0.0),
            Complex64::from_polar(0.995, 2.5),
        ])
        .unwrap();
        let report = logical_tension(&i, &m, &f).unwrap();
        assert!(report.tension.abs() >= FRAC_PI_2);
        assert!(report.tension.abs() < PI);
        assert_eq!(report.magnitude_class, MagnitudeClass::Paradoxical);
    }
}
