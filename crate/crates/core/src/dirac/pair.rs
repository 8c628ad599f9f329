use super::fibre::{constants, form_row, row_form, Fibre};
use super::{check_lagrangian, DiracError, Regime, SubbundleSpec};
use crate::exterior::{words, Wedge};
use crate::kernel::{frac, BasePoly, Rational};
use crate::linalg::{complete_basis, inverse, rank, same_span, solve, Echelon};
use crate::report::Report;
use crate::symplectic::Section;

/// A subspace `E ⊆ A` (independent rows) with `Omega` in `wedge^k E*`,
/// written in the frame dual to the rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSpec {
    k: u32,
    n: usize,
    e: Vec<Vec<Rational>>,
    omega: Wedge,
}

impl PairSpec {
    pub fn new(k: u32, n: usize, e: Vec<Vec<Rational>>, omega: Wedge) -> Result<Self, DiracError> {
        if k < 3 {
            return Err(DiracError::Shape(format!(
                "k = {k}; only k >= 3 is supported"
            )));
        }
        if e.iter().any(|v| v.len() != n) {
            return Err(DiracError::Shape(format!("E vectors must have length {n}")));
        }
        if rank(&e, n) != e.len() {
            return Err(DiracError::Shape("E vectors are not independent".into()));
        }
        if omega.rank() != e.len() || !omega.is_homogeneous_of(k as usize) {
            return Err(DiracError::Shape(format!(
                "Omega must be a {k}-form on E of rank {}",
                e.len()
            )));
        }
        if omega.terms().any(|(_, c)| !c.is_constant()) {
            return Err(DiracError::Shape(
                "Omega must have constant coefficients".into(),
            ));
        }
        Ok(PairSpec { k, n, e, omega })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> &[Vec<Rational>] {
        &self.e
    }

    pub fn omega(&self) -> &Wedge {
        &self.omega
    }

    /// Same `E` and the same `Omega` once both are written on this pair's
    /// frame.
    pub fn equivalent(&self, other: &PairSpec) -> bool {
        if self.k != other.k || self.n != other.n || !same_span(&self.e, &other.e, self.n) {
            return false;
        }
        let r = self.e.len();
        // self.e[s] = sum_t coeff[s][t] other.e[t]
        let coeffs: Vec<Vec<Rational>> = self
            .e
            .iter()
            .map(|v| solve(&other.e, v).expect("same span"))
            .collect();
        let images: Vec<Wedge> = (0..r)
            .map(|t| {
                Wedge::linear(
                    &(0..r)
                        .map(|s| BasePoly::constant(coeffs[s][t].clone()))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        other.omega.substitute_frame(&images, r) == self.omega
    }
}

/// `j*`: restriction of forms on `A` to the span of `rows`.
pub fn restrict(w: &Wedge, rows: &[Vec<Rational>]) -> Wedge {
    let r = rows.len();
    let n = w.rank();
    let images: Vec<Wedge> = (0..n)
        .map(|i| {
            Wedge::linear(
                &(0..r)
                    .map(|s| BasePoly::constant(rows[s][i].clone()))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    w.substitute_frame(&images, r)
}

/// `L = { e + w : e in E, i_e Omega = j* w }`, over a point.
pub fn from_pair(pair: &PairSpec) -> Result<SubbundleSpec, DiracError> {
    let (n, k, r) = (pair.n, pair.k, pair.e.len());
    let full = complete_basis(&pair.e, n);
    let q = inverse(&full).expect("completed basis is invertible");
    // dual frame: eps^s = sum_i q[i][s] alpha^i
    let dual: Vec<Wedge> = (0..n)
        .map(|s| {
            Wedge::linear(
                &(0..n)
                    .map(|i| BasePoly::constant(q[i][s].clone()))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let mut sections = Vec::new();
    for s in 0..r {
        let mut unit = vec![BasePoly::zero(); r];
        unit[s] = BasePoly::int(1);
        let phi = pair.omega.interior(&unit);
        sections.push(Section {
            a: constants(&pair.e[s]),
            omega: phi.substitute_frame(&dual[..r], n),
        });
    }
    for eps in &dual[r..] {
        for w in words(n, k as usize - 2) {
            let omega = eps.wedge(&Wedge::word(n, w, BasePoly::int(1)));
            if !omega.is_zero() {
                sections.push(Section::form(omega));
            }
        }
    }
    SubbundleSpec::new(k, 0, n, Regime::Point, sections)
}

/// The pair of a lagrangian over a point.
pub fn to_pair(spec: &SubbundleSpec) -> Result<PairSpec, DiracError> {
    if !spec.is_point() {
        return Err(DiracError::Unsupported(
            "to_pair needs the point regime; use to_pair_at".into(),
        ));
    }
    to_pair_at(spec, &[])
}

/// The pair of a lagrangian at one point of its body.
pub fn to_pair_at(spec: &SubbundleSpec, point: &[Rational]) -> Result<PairSpec, DiracError> {
    let report = check_lagrangian(spec);
    if !report.passed() {
        return Err(DiracError::NotLagrangian(report.to_string()));
    }
    let (n, k) = (spec.n(), spec.k());
    let f = Fibre::at(spec, point);
    let r = f.e.len();
    // phi(e_s) = j* w_s, and Omega = (1/k) sum_s eps^s ^ phi(e_s)
    let mut omega = Wedge::zero(r);
    for (s, lift) in f.lifts.iter().enumerate() {
        let phi = restrict(&row_form(lift, n, k as usize - 1), &f.e);
        omega = &omega + &Wedge::word(r, 1 << s, BasePoly::int(1)).wedge(&phi);
    }
    let omega = omega.scale_rational(&frac(1, k as i64));
    PairSpec::new(k, n, f.e, omega)
}

/// Wade's extra condition: for all `Z_1..Z_{k-1}` in `wedge^{k-1} E` the
/// form `i_{Z_1} Omega ^ ... ^ i_{Z_{k-1}} Omega` equals `i_e Omega` for
/// some `e` in `E`. Multilinear in the `Z`, so basis tuples suffice.
pub fn check_wade(pair: &PairSpec) -> Report {
    let (k, r) = (pair.k as usize, pair.e.len());
    let mut report = Report::new("wade");
    let contractions: Vec<Wedge> = words(r, k - 1)
        .into_iter()
        .map(|z| {
            pair.omega
                .interior_word(&Wedge::word(r, z, BasePoly::int(1)))
        })
        .collect();
    let targets: Vec<Vec<Rational>> = (0..r)
        .map(|s| {
            let mut unit = vec![BasePoly::zero(); r];
            unit[s] = BasePoly::int(1);
            form_row(&pair.omega.interior(&unit), k - 1, &[])
        })
        .collect();
    let width = words(r, k - 1).len();
    let span = Echelon::new(&targets, width);
    let mut bad = None;
    let mut tuple = vec![0usize; k - 1];
    let total = contractions.len().pow((k - 1) as u32);
    for _ in 0..total {
        let mut acc = Wedge::one(r);
        for &i in &tuple {
            acc = acc.wedge(&contractions[i]);
        }
        if !span.contains(&form_row(&acc, k - 1, &[])) {
            bad = Some(format!("contraction tuple {tuple:?} gives {acc:?}"));
            break;
        }
        for slot in tuple.iter_mut() {
            *slot += 1;
            if *slot < contractions.len() {
                break;
            }
            *slot = 0;
        }
    }
    report.clause("w2", bad.is_none(), bad);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::{conormal, graph_of_form};
    use crate::kernel::int;
    use crate::report::Verdict;

    fn rows(r: &[&[i64]]) -> Vec<Vec<Rational>> {
        r.iter()
            .map(|v| v.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn conormal_pair_has_zero_form() {
        let b = rows(&[&[1, 2, 0, 0, 1], &[0, 0, 1, 1, 0]]);
        let spec = conormal(&b, 4, 5, 0, Regime::Point).unwrap();
        let pair = to_pair(&spec).unwrap();
        assert!(same_span(pair.e(), &b, 5));
        assert!(pair.omega().is_zero());
    }

    #[test]
    fn graph_pair_recovers_form() {
        let n = 4;
        let omega =
            &Wedge::word(n, 0b0111, BasePoly::int(2)) + &Wedge::word(n, 0b1110, BasePoly::int(-3));
        let spec = graph_of_form(&omega, 3, 0, Regime::Point).unwrap();
        let pair = to_pair(&spec).unwrap();
        let identity = PairSpec::new(
            3,
            n,
            rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
            omega,
        )
        .unwrap();
        assert!(pair.equivalent(&identity));
    }

    #[test]
    fn round_trip_on_a_tilted_subspace() {
        let e = rows(&[
            &[1, 1, 0, 0, 0],
            &[0, 1, 2, 0, 0],
            &[0, 0, 1, 0, 3],
            &[1, 0, 0, 1, 0],
        ]);
        let omega = Wedge::word(4, 0b1111, BasePoly::int(5));
        let pair = PairSpec::new(4, 5, e, omega).unwrap();
        let spec = from_pair(&pair).unwrap();
        assert_eq!(check_lagrangian(&spec).verdict, Verdict::Pass);
        let back = to_pair(&spec).unwrap();
        assert!(back.equivalent(&pair));
        assert!(pair.equivalent(&back));
    }

    #[test]
    fn equivalence_sees_the_form() {
        let e = rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let a = PairSpec::new(3, 3, e.clone(), Wedge::word(3, 0b111, BasePoly::int(1))).unwrap();
        let b = PairSpec::new(3, 3, e, Wedge::word(3, 0b111, BasePoly::int(2))).unwrap();
        assert!(!a.equivalent(&b));
    }

    #[test]
    fn non_lagrangian_has_no_pair() {
        let n = 3;
        let s = Section::form(Wedge::word(n, 0b011, BasePoly::int(1)));
        let spec = SubbundleSpec::new(3, 0, n, Regime::Point, vec![s]).unwrap();
        assert!(matches!(to_pair(&spec), Err(DiracError::NotLagrangian(_))));
    }

    #[test]
    fn wade_condition() {
        let e6 = rows(&[
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 0, 1],
        ]);
        let split = &Wedge::word(6, 0b000111, BasePoly::int(1))
            + &Wedge::word(6, 0b111000, BasePoly::int(1));
        assert!(!check_wade(&PairSpec::new(3, 6, e6.clone(), split).unwrap()).passed());
        let top = Wedge::word(3, 0b111, BasePoly::int(1));
        assert!(check_wade(&PairSpec::new(3, 6, e6[..3].to_vec(), top).unwrap()).passed());
        assert!(check_wade(&PairSpec::new(3, 6, e6, Wedge::zero(6)).unwrap()).passed());
    }
}
