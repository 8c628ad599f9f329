use super::DiracError;
use crate::exterior::{words, Wedge};
use crate::kernel::{BasePoly, GradedPoly, Rational};
use crate::linalg::nullspace;
use crate::symplectic::{CotangentChart, Section};

use super::NambuTensor;

/// Where the subbundle lives: over a point, or over the full polynomial base
/// probed at sample points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regime {
    Point,
    Sampled(Vec<Vec<Rational>>),
}

/// A degree-`k` function linear in the fibre generators,
/// `sum X^i p_i + sum M[l][j] alpha^l a_j + tau`: an element of the
/// Atiyah algebroid plus a `k`-form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KElement {
    pub vector: Vec<BasePoly>,
    pub endo: Vec<Vec<BasePoly>>,
    pub form: Wedge,
}

impl KElement {
    /// Reads a degree-`k` function linear in the fibre generators.
    pub fn from_poly(p: &GradedPoly, chart: &CotangentChart) -> Result<Self, DiracError> {
        let (m, n) = (chart.m(), chart.n());
        if !p.is_homogeneous_of(chart.k()) {
            return Err(DiracError::Shape(format!(
                "{p} is not of degree {}",
                chart.k()
            )));
        }
        let mut out = KElement {
            vector: vec![BasePoly::zero(); m],
            endo: vec![vec![BasePoly::zero(); n]; n],
            form: Wedge::zero(n),
        };
        let mut forms = GradedPoly::zero(chart.table());
        for (mono, c) in p.terms() {
            let ex = mono.exponents();
            let base = BasePoly::from_terms([(ex[..m].to_vec(), c.clone())]);
            let ps: Vec<usize> = (0..m).filter(|&i| ex[chart.p_pos(i)] > 0).collect();
            let as_: Vec<usize> = (0..n).filter(|&j| ex[chart.a_pos(j)] > 0).collect();
            let alphas: Vec<usize> = (0..n).filter(|&l| ex[chart.alpha_pos(l)] > 0).collect();
            match (ps.as_slice(), as_.as_slice(), alphas.len()) {
                ([i], [], 0) => out.vector[*i] = &out.vector[*i] + &base,
                ([], [j], 1) => out.endo[alphas[0]][*j] = &out.endo[alphas[0]][*j] + &base,
                ([], [], _) => {
                    forms += &GradedPoly::from_term(chart.table(), mono.clone(), c.clone())
                }
                _ => {
                    return Err(DiracError::Shape(format!(
                        "{p} is not linear in the fibre generators"
                    )))
                }
            }
        }
        out.form = chart.poly_to_form(&forms)?;
        Ok(out)
    }

    pub fn to_poly(&self, chart: &CotangentChart) -> Result<GradedPoly, DiracError> {
        let (m, n) = (chart.m(), chart.n());
        if self.vector.len() != m || self.endo.len() != n || self.endo.iter().any(|r| r.len() != n)
        {
            return Err(DiracError::Shape("K element has the wrong shape".into()));
        }
        if !self.form.is_homogeneous_of(chart.k() as usize) || self.form.rank() != n {
            return Err(DiracError::Shape(format!(
                "K form part must be a {}-form of rank {n}",
                chart.k()
            )));
        }
        let mut out = chart.form_to_poly(&self.form)?;
        for (i, c) in self.vector.iter().enumerate() {
            out += &(&chart.embed_base(c)? * &chart.p(i));
        }
        for (l, row) in self.endo.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out += &(&(&chart.embed_base(c)? * &chart.alpha(l)) * &chart.a(j));
                }
            }
        }
        Ok(out)
    }
}

/// Spanning presentation of `L ⊆ (A + wedge^{k-1} A*)|_N`, with optional
/// `D ⊆ A*` (as covectors) and `K` data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubbundleSpec {
    k: u32,
    m: usize,
    n: usize,
    regime: Regime,
    sections: Vec<Section>,
    d: Option<Vec<Vec<BasePoly>>>,
    k_data: Option<Vec<KElement>>,
}

impl SubbundleSpec {
    pub fn new(
        k: u32,
        m: usize,
        n: usize,
        regime: Regime,
        sections: Vec<Section>,
    ) -> Result<Self, DiracError> {
        if k < 3 {
            return Err(DiracError::Shape(format!(
                "k = {k}; only k >= 3 is supported"
            )));
        }
        match &regime {
            Regime::Point if m != 0 => {
                return Err(DiracError::Shape(
                    "point regime needs base dimension 0".into(),
                ))
            }
            Regime::Sampled(points) => {
                if points.is_empty() {
                    return Err(DiracError::Shape(
                        "sampled regime needs at least one point".into(),
                    ));
                }
                if points.iter().any(|p| p.len() != m) {
                    return Err(DiracError::Shape(format!(
                        "sample points must have {m} coordinates"
                    )));
                }
            }
            Regime::Point => {}
        }
        for s in &sections {
            if s.a.len() != n || s.omega.rank() != n || !s.omega.is_homogeneous_of(k as usize - 1) {
                return Err(DiracError::Shape(format!(
                    "section is not in A + wedge^{} A* of rank {n}",
                    k - 1
                )));
            }
            check_vars(s.a.iter().chain(s.omega.terms().map(|(_, c)| c)), m)?;
        }
        Ok(SubbundleSpec {
            k,
            m,
            n,
            regime,
            sections,
            d: None,
            k_data: None,
        })
    }

    pub fn with_d(mut self, d: Vec<Vec<BasePoly>>) -> Result<Self, DiracError> {
        if d.iter().any(|v| v.len() != self.n) {
            return Err(DiracError::Shape(format!(
                "D covectors must have length {}",
                self.n
            )));
        }
        check_vars(d.iter().flatten(), self.m)?;
        self.d = Some(d);
        Ok(self)
    }

    pub fn with_k(mut self, k_data: Vec<KElement>) -> Result<Self, DiracError> {
        let chart = self.chart()?;
        for e in &k_data {
            e.to_poly(&chart)?;
            check_vars(
                e.vector
                    .iter()
                    .chain(e.endo.iter().flatten())
                    .chain(e.form.terms().map(|(_, c)| c)),
                self.m,
            )?;
        }
        self.k_data = Some(k_data);
        Ok(self)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn regime(&self) -> &Regime {
        &self.regime
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn d(&self) -> Option<&[Vec<BasePoly>]> {
        self.d.as_deref()
    }

    pub fn k_data(&self) -> Option<&[KElement]> {
        self.k_data.as_deref()
    }

    pub fn is_point(&self) -> bool {
        self.regime == Regime::Point
    }

    /// Evaluation points: the single empty point, or the samples.
    pub fn points(&self) -> Vec<Vec<Rational>> {
        match &self.regime {
            Regime::Point => vec![Vec::new()],
            Regime::Sampled(p) => p.clone(),
        }
    }

    pub fn chart(&self) -> Result<CotangentChart, DiracError> {
        Ok(CotangentChart::new(self.k, self.m, self.n)?)
    }
}

fn check_vars<'a>(
    polys: impl IntoIterator<Item = &'a BasePoly>,
    m: usize,
) -> Result<(), DiracError> {
    for p in polys {
        if p.num_vars() > m {
            return Err(DiracError::Shape(format!(
                "coefficient {p} uses more than {m} base coordinates"
            )));
        }
    }
    Ok(())
}

/// Over a point, the `K` of a lagrangian: `D ⊗ A + L ^ A*` with
/// `D = p1(L)°`.
pub fn induced_k(spec: &SubbundleSpec) -> Result<Vec<KElement>, DiracError> {
    if !spec.is_point() {
        return Err(DiracError::Unsupported(
            "induced K needs the point regime".into(),
        ));
    }
    let chart = spec.chart()?;
    let f = super::fibre::Fibre::at(spec, &[]);
    let mut out = Vec::new();
    for eps in f.annihilator() {
        let phi = chart.form_to_poly(&Wedge::linear(&super::fibre::constants(&eps)))?;
        for j in 0..spec.n() {
            out.push(KElement::from_poly(&(&phi * &chart.a(j)), &chart)?);
        }
    }
    for s in f.sections() {
        let l = s.to_poly(&chart)?;
        for i in 0..spec.n() {
            let prod = &l * &chart.alpha(i);
            if !prod.is_zero() {
                out.push(KElement::from_poly(&prod, &chart)?);
            }
        }
    }
    Ok(out)
}

/// `L = B + B° ^ wedge^{k-2} A*` for a constant subbundle `B ⊆ A`.
pub fn conormal(
    b: &[Vec<Rational>],
    k: u32,
    n: usize,
    m: usize,
    regime: Regime,
) -> Result<SubbundleSpec, DiracError> {
    if b.iter().any(|v| v.len() != n) {
        return Err(DiracError::Shape(format!("B vectors must have length {n}")));
    }
    let mut sections: Vec<Section> = b
        .iter()
        .map(|v| Section {
            a: v.iter().cloned().map(BasePoly::constant).collect(),
            omega: Wedge::zero(n),
        })
        .collect();
    let k1 = k.max(2) as usize;
    for eps in nullspace(b, n) {
        let eps = Wedge::linear(&eps.into_iter().map(BasePoly::constant).collect::<Vec<_>>());
        for w in words(n, k1 - 2) {
            let omega = eps.wedge(&Wedge::word(n, w, BasePoly::int(1)));
            if !omega.is_zero() {
                sections.push(Section::form(omega));
            }
        }
    }
    SubbundleSpec::new(k, m, n, regime, sections)
}

/// Graph of a `k`-form: `e + i_e omega` for every `e` in `A`.
pub fn graph_of_form(
    omega: &Wedge,
    k: u32,
    m: usize,
    regime: Regime,
) -> Result<SubbundleSpec, DiracError> {
    let n = omega.rank();
    if !omega.is_homogeneous_of(k as usize) {
        return Err(DiracError::Shape(format!(
            "graph of a form needs a {k}-form"
        )));
    }
    let sections = (0..n)
        .map(|j| {
            let s = Section::basis(n, j);
            Section {
                omega: omega.interior(&s.a),
                a: s.a,
            }
        })
        .collect();
    SubbundleSpec::new(k, m, n, regime, sections)
}

/// Graph of a `k`-vector: `Pi(w) + w` for every `(k-1)`-form `w`.
pub fn graph_of_nambu(pi: &NambuTensor, regime: Regime) -> Result<SubbundleSpec, DiracError> {
    let (k, n) = (pi.k(), pi.n());
    let sections = words(n, k as usize - 1)
        .into_iter()
        .map(|w| {
            let w = Wedge::word(n, w, BasePoly::int(1));
            Section {
                a: pi.sharp(&w),
                omega: w,
            }
        })
        .collect();
    SubbundleSpec::new(k, pi.m(), n, regime, sections)
}
