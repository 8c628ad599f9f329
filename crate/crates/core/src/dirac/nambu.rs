use super::DiracError;
use crate::algebroid::{build_theta, derived_bracket, LieAlgebroidData};
use crate::exterior::{words, Wedge};
use crate::kernel::{BasePoly, Rational};
use crate::report::Report;
use crate::symplectic::{decompose_section, CotangentChart, Section};

/// A `k`-vector `Pi` in the frame `e_1..e_n`, polynomial in `m` base
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NambuTensor {
    k: u32,
    m: usize,
    pi: Wedge,
}

impl NambuTensor {
    pub fn new(k: u32, m: usize, pi: Wedge) -> Result<Self, DiracError> {
        if k < 3 {
            return Err(DiracError::Shape(format!(
                "k = {k}; only k >= 3 is supported"
            )));
        }
        if !pi.is_homogeneous_of(k as usize) {
            return Err(DiracError::Shape(format!("Pi must be a {k}-vector")));
        }
        if pi.terms().any(|(_, c)| c.num_vars() > m) {
            return Err(DiracError::Shape(format!(
                "coefficients use more than {m} base coordinates"
            )));
        }
        Ok(NambuTensor { k, m, pi })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.pi.rank()
    }

    pub fn tensor(&self) -> &Wedge {
        &self.pi
    }

    /// `Pi(w) = i_w Pi` for a `(k-1)`-form `w`, as a section of `A`.
    pub fn sharp(&self, w: &Wedge) -> Vec<BasePoly> {
        self.pi.interior_word(w).coordinates(1)
    }
}

/// Plücker test `(i_phi Pi) ^ Pi = 0` for every basis `(k-1)`-form `phi`,
/// checked as a polynomial identity. Vanishing of `Pi` at a sample point
/// where it is not identically zero makes the verdict weak.
pub fn is_decomposable(pi: &NambuTensor, points: &[Vec<Rational>]) -> Report {
    let (k, n) = (pi.k as usize, pi.n());
    let mut report = Report::new("decomposable");
    let bad = words(n, k - 1).into_iter().find_map(|phi| {
        let v = pi.pi.interior_word(&Wedge::word(n, phi, BasePoly::int(1)));
        let w = v.wedge(&pi.pi);
        (!w.is_zero()).then(|| format!("contraction with word {phi:#b} gives {w:?}"))
    });
    report.clause("plucker", bad.is_none(), bad);
    let vanishing = if pi.pi.is_zero() {
        None
    } else {
        points.iter().find(|p| pi.pi.eval(p).is_zero()).map(|p| {
            let coords: Vec<String> = p.iter().map(ToString::to_string).collect();
            format!("Pi vanishes at ({})", coords.join(", "))
        })
    };
    report.soft_clause("nonvanishing", vanishing.is_none(), vanishing);
    report
}

fn require_decomposable(pi: &NambuTensor) -> Result<(), DiracError> {
    let r = is_decomposable(pi, &[]);
    let failure = r
        .failing()
        .next()
        .map(|c| c.detail.clone().unwrap_or_default());
    match failure {
        Some(d) => Err(DiracError::NotDecomposable(d)),
        None => Ok(()),
    }
}

fn check_shapes(pi: &NambuTensor, alg: &LieAlgebroidData, h: &Wedge) -> Result<(), DiracError> {
    if alg.n() != pi.n() || alg.m() != pi.m {
        return Err(DiracError::Shape(format!(
            "tensor on rank {} over dimension {}, algebroid of rank {} over dimension {}",
            pi.n(),
            pi.m,
            alg.n(),
            alg.m()
        )));
    }
    if !h.is_homogeneous_of(pi.k as usize + 1) || h.rank() != pi.n() {
        return Err(DiracError::Shape(format!(
            "H must be a {}-form of rank {}",
            pi.k + 1,
            pi.n()
        )));
    }
    Ok(())
}

/// Involutivity of a decomposable `Pi`:
/// `(L_{Pi(w)} Pi)(w') = -Pi(i_{Pi(w')} d_A w + i_{Pi(w')} i_{Pi(w)} H)` on
/// all pairs of basis `(k-1)`-forms.
pub fn check_twisted_nambu(
    pi: &NambuTensor,
    alg: &LieAlgebroidData,
    h: &Wedge,
) -> Result<Report, DiracError> {
    check_shapes(pi, alg, h)?;
    require_decomposable(pi)?;
    let (k, n) = (pi.k as usize, pi.n());
    let basis: Vec<Wedge> = words(n, k - 1)
        .into_iter()
        .map(|w| Wedge::word(n, w, BasePoly::int(1)))
        .collect();
    let sharps: Vec<Vec<BasePoly>> = basis.iter().map(|w| pi.sharp(w)).collect();
    let derivs: Vec<Wedge> = sharps
        .iter()
        .map(|x| alg.lie_derivative_multivector(x, &pi.pi))
        .collect();
    let mut report = Report::new("twisted nambu");
    let mut bad = None;
    'outer: for (i, w) in basis.iter().enumerate() {
        let dw = alg.differential(w);
        let ih = h.interior(&sharps[i]);
        for (j, w2) in basis.iter().enumerate() {
            let lhs = derivs[i].interior_word(w2).coordinates(1);
            let inner = &dw.interior(&sharps[j]) + &ih.interior(&sharps[j]);
            let rhs = pi.sharp(&inner);
            if let Some(c) = (0..n).find(|&c| !(&lhs[c] + &rhs[c]).is_zero()) {
                bad = Some(format!(
                    "basis forms {i}, {j}: component {} of the defect is {}",
                    c + 1,
                    &lhs[c] + &rhs[c]
                ));
                break 'outer;
            }
        }
    }
    report.clause("involutivity", bad.is_none(), bad);
    Ok(report)
}

/// Closure of `graph(Pi)` under the derived bracket `{{., theta_H}, .}`.
/// The sections `Pi(w) + w` over basis forms generate the graph freely, so
/// for an isotropic graph their brackets decide closure.
pub fn graph_closure(
    pi: &NambuTensor,
    alg: &LieAlgebroidData,
    h: &Wedge,
) -> Result<Report, DiracError> {
    check_shapes(pi, alg, h)?;
    let (k, n) = (pi.k, pi.n());
    let chart = CotangentChart::new(k, pi.m, n)?;
    let theta = build_theta(alg, h, None, &chart)?;
    let sections: Vec<_> = words(n, k as usize - 1)
        .into_iter()
        .map(|w| {
            let w = Wedge::word(n, w, BasePoly::int(1));
            Section {
                a: pi.sharp(&w),
                omega: w,
            }
            .to_poly(&chart)
        })
        .collect::<Result<_, _>>()?;
    let mut report = Report::new("graph closure");
    let mut bad = None;
    'outer: for (i, s) in sections.iter().enumerate() {
        for (j, t) in sections.iter().enumerate() {
            let b = derived_bracket(s, t, &theta, &chart)?;
            let Section { a, omega } = decompose_section(&b, &chart)?;
            if a != pi.sharp(&omega) {
                bad = Some(format!("bracket of graph sections {i} and {j} is {b}"));
                break 'outer;
            }
        }
    }
    report.clause("closure", bad.is_none(), bad);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::kernel::int;
    use crate::report::Verdict;

    fn word(n: usize, mask: u32, c: &str) -> Wedge {
        Wedge::word(n, mask, BasePoly::parse(c).unwrap())
    }

    #[test]
    fn plucker_examples() {
        let simple = NambuTensor::new(3, 0, word(6, 0b000111, "1")).unwrap();
        assert_eq!(is_decomposable(&simple, &[]).verdict, Verdict::Pass);
        let split =
            NambuTensor::new(3, 0, &word(6, 0b000111, "1") + &word(6, 0b111000, "1")).unwrap();
        assert_eq!(is_decomposable(&split, &[]).verdict, Verdict::Fail);
        let scaled = NambuTensor::new(3, 1, word(6, 0b000111, "x1")).unwrap();
        let pts = [vec![int(0)], vec![int(1)]];
        assert_eq!(is_decomposable(&scaled, &pts).verdict, Verdict::Weak);
    }

    #[test]
    fn abelian_top_tensor_is_nambu() {
        let pi = NambuTensor::new(3, 0, word(3, 0b111, "1")).unwrap();
        let g = catalog::abelian(3);
        let h = Wedge::zero(3);
        assert!(check_twisted_nambu(&pi, &g, &h).unwrap().passed());
        assert!(graph_closure(&pi, &g, &h).unwrap().passed());
    }

    #[test]
    fn top_degree_is_always_nambu() {
        let g = catalog::so3_action();
        for f in ["x1^2 + x2^2 + x3^2", "x1", "x1*x2 - 3"] {
            let pi = NambuTensor::new(3, 3, word(3, 0b111, f)).unwrap();
            assert!(
                check_twisted_nambu(&pi, &g, &Wedge::zero(3))
                    .unwrap()
                    .passed(),
                "{f}"
            );
            assert!(
                graph_closure(&pi, &g, &Wedge::zero(3)).unwrap().passed(),
                "{f}"
            );
        }
    }

    #[test]
    fn image_must_be_a_subalgebra() {
        let g = catalog::filiform4();
        let h = Wedge::zero(4);
        for (mask, expect) in [(0b1110, true), (0b1011, false), (0b0111, false)] {
            let pi = NambuTensor::new(3, 0, word(4, mask, "1")).unwrap();
            assert_eq!(
                check_twisted_nambu(&pi, &g, &h).unwrap().passed(),
                expect,
                "{mask:b}"
            );
            assert_eq!(
                graph_closure(&pi, &g, &h).unwrap().passed(),
                expect,
                "{mask:b}"
            );
        }
    }

    #[test]
    fn non_decomposable_is_rejected() {
        let pi = NambuTensor::new(3, 0, &word(6, 0b000111, "1") + &word(6, 0b111000, "1")).unwrap();
        let g = catalog::abelian(6);
        let r = check_twisted_nambu(&pi, &g, &Wedge::zero(6));
        assert!(matches!(r, Err(DiracError::NotDecomposable(_))));
    }
}
