//! Verification suites, one per acceptance criterion. Each suite returns a
//! list of named checks plus structured data; a suite passes iff every
//! check does.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::appendix::{self, Family, Grid, SpectrumCandidate};
use crate::clifford::{Blade, MultiVector};
use crate::error::{SuiteError, TorsionError};
use crate::lie::{LieDescriptor, LieLabel};
use crate::linalg::{sparse_from_dense, RowSpace};
use crate::random::Sampler;
use crate::rational::Rational;
use crate::spin::{SpinRep, Spinor};
use crate::torsion::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteOptions {
    pub k_max: usize,
    pub generic_samples: usize,
    pub ladder_samples: usize,
    pub spinor_squares: usize,
    pub alpha_squares: usize,
    pub pure_degree_samples: usize,
    pub identity_instances: usize,
    pub extra_even_samples: usize,
    pub flip_vectors: usize,
    pub grid: Grid,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            k_max: appendix::DEFAULT_K_MAX,
            generic_samples: 10,
            ladder_samples: 2,
            spinor_squares: 5,
            alpha_squares: 20,
            pure_degree_samples: 50,
            identity_instances: 20,
            extra_even_samples: 10,
            flip_vectors: 3,
            grid: Grid::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub criterion: u32,
    pub slug: &'static str,
    pub expected: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub data: Value,
}

#[derive(Debug, Clone, Copy)]
pub struct CriterionInfo {
    pub id: u32,
    pub slug: &'static str,
    pub expected: &'static str,
}

pub const CRITERIA: [CriterionInfo; 12] = [
    CriterionInfo {
        id: 1,
        slug: "clifford-kernel",
        expected: "associativity, Clifford relations, L eigenvalues, involutions, scalar product adjointness; n = 4..10",
    },
    CriterionInfo { id: 2, slug: "volume-forms", expected: "so(5,1), so(7), so(8), so(8,1), so(9,1) for n = 5..9" },
    CriterionInfo { id: 3, slug: "unipotent", expected: "e1234+e5678: unipotent, lambda 2, Z = 0, perfect so(8,1), dim 36" },
    CriterionInfo { id: 4, slug: "spinor-squares", expected: "n=8: so(8,1), dim Z 7; n=7: abelian(7), dim Z 7" },
    CriterionInfo { id: 5, slug: "generic-invertible", expected: "Z = 0, non-exceptional spectrum: dim 120, so(8,8), perfect" },
    CriterionInfo { id: 6, slug: "fixed-spinor-ladder", expected: "dim Z = d in 1..5: so(8,8-d), dims 105/91/78/66/55" },
    CriterionInfo {
        id: 7,
        slug: "dim-six",
        expected: "spectrum {1,-1}, dim Z 6: dim 28, so(6,2), perfect; double commutators dim 16; isotropy 15; split (15,6,6,1)",
    },
    CriterionInfo {
        id: 8,
        slug: "fixed-spinor-theory",
        expected: "Z = 0 iff invertible; Z(a^a) = 0; Z = 0 for pure forms n = 6,7; Z- = 0 on self-dual forms; T Z = 0 and Z_T = Z_(nu T)",
    },
    CriterionInfo {
        id: 9,
        slug: "identities",
        expected: "double commutator, 2-form commutator, Casimir powers, L(T^2), spinor squares, spinor wedges: zero residuals",
    },
    CriterionInfo {
        id: 10,
        slug: "structure",
        expected:
            "g in A, alpha-stable; Z = 0 => perfect, trivial center; even part and odd part formulas for d in 1..5; conjugation invariance",
    },
    CriterionInfo {
        id: 11,
        slug: "spectrum-oracle",
        expected: "families (i)/(ii)/(iii) satisfy the power identities; grid search returns only these families",
    },
    CriterionInfo { id: 12, slug: "determinism", expected: "identical report bodies for identical seeds" },
];

pub fn criterion_info(id: u32) -> Option<&'static CriterionInfo> {
    CRITERIA.iter().find(|c| c.id == id)
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, pass: bool) {
        self.0.push(Check { name: name.into(), pass, detail: Value::Null });
    }

    fn detail(&mut self, name: impl Into<String>, pass: bool, detail: Value) {
        self.0.push(Check { name: name.into(), pass, detail });
    }

    fn finish(self, id: u32, data: Value) -> CriterionOutcome {
        let info = criterion_info(id).expect("registered criterion");
        CriterionOutcome {
            criterion: id,
            slug: info.slug,
            expected: info.expected,
            pass: !self.0.is_empty() && self.0.iter().all(|c| c.pass),
            checks: self.0,
            data,
        }
    }
}

/// A sample form together with its fix algebra and fixed spinors.
#[derive(Debug, Clone)]
pub struct Sample {
    pub name: String,
    pub form: TorsionForm,
    pub analysis: FixAnalysis,
    pub z: FixedSpinors,
}

impl Sample {
    fn new(name: impl Into<String>, form: TorsionForm) -> Result<Self, SuiteError> {
        let analysis = analyze_fix_algebra(form.value())?;
        let z = fixed_spinors(form.value(), SpinRep::shared(form.n())?)?;
        Ok(Sample { name: name.into(), form, analysis, z })
    }

    fn summary(&self) -> Value {
        json!({
            "name": self.name,
            "spectrum": self.form.constructed_spectrum(),
            "z_dim": self.z.dim(),
            "descriptor": self.analysis.descriptor,
        })
    }
}

/// Forms in `Cl^0 ∩ Cl^+` with `T^t = T` shared by several suites.
#[derive(Debug, Clone)]
pub struct Bank {
    pub unipotent: Sample,
    pub one_plus_nu: Sample,
    pub generic: Vec<Sample>,
    /// `(d, sample)` for `d = 1..=5`.
    pub ladder: Vec<(usize, Sample)>,
    pub su4: Sample,
}

impl Bank {
    pub fn all(&self) -> impl Iterator<Item = &Sample> {
        [&self.unipotent, &self.one_plus_nu]
            .into_iter()
            .chain(self.generic.iter())
            .chain(self.ladder.iter().map(|(_, s)| s))
            .chain(std::iter::once(&self.su4))
    }

    /// Samples built from a prescribed spectrum.
    pub fn spectral(&self) -> impl Iterator<Item = &Sample> {
        self.generic.iter().chain(self.ladder.iter().map(|(_, s)| s)).chain(std::iter::once(&self.su4))
    }
}

/// Traceless integer spectrum on `[-4, 4]` with `8 - d` nonzero eigenvalues;
/// for `d = 0` unipotent and exceptional shapes are rejected.
pub fn random_spectrum(s: &mut Sampler, d: usize) -> Result<SpectrumData, SuiteError> {
    let pool: Vec<SpectrumCandidate> =
        Grid::default().candidates(8 - d).into_iter().filter(|c| d != 0 || appendix::family_of(c).is_none()).collect();
    let c = &pool[s.below(pool.len())];
    Ok(SpectrumData::new(c.pairs().to_vec(), d)?)
}

/// Spectral form with a randomly permuted standard eigenbasis of `S+`.
pub fn spectral_form(s: &mut Sampler, spec: &SpectrumData) -> Result<TorsionForm, SuiteError> {
    let basis = s.permutation_basis(8);
    Ok(TorsionForm::from_spectrum(spec, Some(&basis))?)
}

/// A few random elements of the self-dual basis with small integer weights.
pub fn sparse_selfdual(s: &mut Sampler, terms: usize) -> MultiVector {
    let basis = lambda4_plus_basis();
    loop {
        let mut t = MultiVector::zero(8);
        for _ in 0..terms {
            let b = &basis[s.below(basis.len())];
            t = &t + &b.scale(&Rational::from(s.nonzero_int()));
        }
        if !t.is_zero() {
            return t;
        }
    }
}

/// Unit vector `(a e_i + b e_j) / c` from a Pythagorean triple.
pub fn planar_unit_vector(s: &mut Sampler) -> MultiVector {
    const TRIPLES: [(i64, i64, i64); 3] = [(3, 4, 5), (5, 12, 13), (8, 15, 17)];
    let (a, b, c) = TRIPLES[s.below(TRIPLES.len())];
    let i = s.below(8);
    let j = (i + 1 + s.below(7)) % 8;
    let mut comps = vec![Rational::zero(); 8];
    let sign = |s: &mut Sampler| if s.below(2) == 0 { 1 } else { -1 };
    comps[i] = Rational::new(sign(s) * a, c);
    comps[j] = Rational::new(sign(s) * b, c);
    MultiVector::vector(8, &comps)
}

fn sampler(seed: u64, stream: u64) -> Sampler {
    Sampler::new(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn same_span(a: &[Spinor], b: &[Spinor]) -> bool {
    let len = a.first().or(b.first()).map_or(0, |v| v.len());
    RowSpace::from_rows(len, a.iter().map(|v| sparse_from_dense(v))) == RowSpace::from_rows(len, b.iter().map(|v| sparse_from_dense(v)))
}

fn label_is(d: &LieDescriptor, label: LieLabel, dim: usize) -> bool {
    d.label == label && d.dim == dim
}

pub struct Suite {
    seed: u64,
    options: SuiteOptions,
    bank: OnceLock<Bank>,
}

impl Suite {
    pub fn new(seed: u64, options: SuiteOptions) -> Self {
        Suite { seed, options, bank: OnceLock::new() }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn options(&self) -> &SuiteOptions {
        &self.options
    }

    pub fn bank(&self) -> Result<&Bank, SuiteError> {
        if let Some(b) = self.bank.get() {
            return Ok(b);
        }
        let b = self.build_bank()?;
        Ok(self.bank.get_or_init(|| b))
    }

    fn build_bank(&self) -> Result<Bank, SuiteError> {
        let mut s = sampler(self.seed, 1);
        let unipotent = Sample::new("e1234+e5678", TorsionForm::unipotent_pair()?)?;
        let one_nu = &MultiVector::one(8) + &MultiVector::volume(8);
        let one_plus_nu = Sample::new("1+nu", TorsionForm::unipotent(one_nu)?)?;
        let mut generic = Vec::new();
        for k in 0..self.options.generic_samples {
            let spec = random_spectrum(&mut s, 0)?;
            generic.push(Sample::new(format!("generic-{k}"), spectral_form(&mut s, &spec)?)?);
        }
        let mut ladder = Vec::new();
        for d in 1..=5 {
            for k in 0..self.options.ladder_samples.max(1) {
                let spec = random_spectrum(&mut s, d)?;
                ladder.push((d, Sample::new(format!("ladder-d{d}-{k}"), spectral_form(&mut s, &spec)?)?));
            }
        }
        let su4 = Sample::new("su4", TorsionForm::su4()?)?;
        Ok(Bank { unipotent, one_plus_nu, generic, ladder, su4 })
    }

    pub fn run(&self, id: u32) -> Result<CriterionOutcome, SuiteError> {
        match id {
            1 => self.clifford_kernel(),
            2 => self.volume_forms(),
            3 => self.unipotent(),
            4 => self.spinor_squares(),
            5 => self.generic_invertible(),
            6 => self.ladder(),
            7 => self.dim_six(),
            8 => self.fixed_spinor_theory(),
            9 => self.identities(),
            10 => self.structure(),
            11 => self.spectrum_oracle(),
            12 => self.determinism(),
            other => Err(SuiteError::UnknownCriterion(other)),
        }
    }

    fn clifford_kernel(&self) -> Result<CriterionOutcome, SuiteError> {
        let mut s = sampler(self.seed, 101);
        let mut c = Checks::default();
        let mut counts = Vec::new();
        for n in 4..=10 {
            let triples = if n <= 8 { 100 } else { 20 };
            let mut assoc = true;
            let mut adjoint = true;
            let mut invol = true;
            let mut central = true;
            for _ in 0..triples {
                let a = s.sparse_multivector(n, 6);
                let b = s.sparse_multivector(n, 6);
                let q = s.sparse_multivector(n, 6);
                assoc &= &(&a * &b) * &q == &a * &(&b * &q);
                let aq = q.transpose().alpha();
                adjoint &= (&q * &a).inner_product(&b) == a.inner_product(&(&aq * &b));
                adjoint &= (&a * &q).inner_product(&b) == a.inner_product(&(&b * &aq));
                let ab = &a * &b;
                invol &= ab.transpose() == &b.transpose() * &a.transpose();
                invol &= ab.alpha() == &a.alpha() * &b.alpha();
                invol &= a.transpose().transpose() == a && a.alpha().alpha() == a;
                if n % 2 == 1 {
                    let nu = MultiVector::volume(n);
                    central &= &nu * &a == &a * &nu;
                }
            }
            let mut relations = true;
            for i in 1..=n {
                for j in 1..=n {
                    let (ei, ej) = (MultiVector::basis_vector(n, i), MultiVector::basis_vector(n, j));
                    let expect = if i == j { MultiVector::scalar(n, -2) } else { MultiVector::zero(n) };
                    relations &= &(&ei * &ej) + &(&ej * &ei) == expect;
                }
            }
            let l_law = (0..1u32 << n).all(|m| {
                let b = MultiVector::from_terms(n, [(Blade(m as u16), Rational::one())]);
                let k = m.count_ones() as i64;
                let sign = if k % 2 == 0 { 1 } else { -1 };
                b.l_operator() == b.scale(&Rational::from(sign * (2 * k - n as i64)))
            });
            let nu = MultiVector::volume(n);
            let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
            invol &= nu.transpose() == nu.scale(&Rational::from(sign));
            c.add(format!("n={n} associativity"), assoc);
            c.add(format!("n={n} clifford relations"), relations);
            c.add(format!("n={n} L eigenvalues"), l_law);
            c.add(format!("n={n} involutions"), invol);
            c.add(format!("n={n} scalar product adjointness"), adjoint);
            if n % 2 == 1 {
                c.add(format!("n={n} volume element central"), central);
            }
            counts.push(json!({"n": n, "random_triples": triples, "blades": 1u32 << n}));
        }
        Ok(c.finish(1, json!({ "cases": counts })))
    }

    fn volume_forms(&self) -> Result<CriterionOutcome, SuiteError> {
        let mut c = Checks::default();
        let expect = [
            (5, LieLabel::So(5, 1), 15),
            (6, LieLabel::So(7, 0), 21),
            (7, LieLabel::So(8, 0), 28),
            (8, LieLabel::So(8, 1), 36),
            (9, LieLabel::So(9, 1), 45),
        ];
        let mut data = Vec::new();
        for (n, label, dim) in expect {
            let a = analyze_fix_algebra(TorsionForm::volume(n)?.value())?;
            c.detail(format!("n={n} {label}"), label_is(&a.descriptor, label, dim), json!(a.descriptor));
            data.push(json!({"n": n, "descriptor": a.descriptor}));
        }
        Ok(c.finish(2, json!(data)))
    }

    fn unipotent(&self) -> Result<CriterionOutcome, SuiteError> {
        let bank = self.bank()?;
        let u = &bank.unipotent;
        let inv = invertibility_report(&u.form)?;
        let mut c = Checks::default();
        c.add("unipotent", inv.unipotent);
        c.add("lambda = 2", inv.lambda == Some(Rational::from(2)));
        c.add("invertible", inv.invertible_mod_1nu);
        c.add("Z = 0", u.z.dim() == 0);
        c.add("perfect", u.analysis.descriptor.is_perfect());
        c.add("so(8,1), dim 36", label_is(&u.analysis.descriptor, LieLabel::So(8, 1), 36));
        Ok(c.finish(3, json!({"invertibility": inv, "descriptor": u.analysis.descriptor})))
    }

    fn spinor_squares(&self) -> Result<CriterionOutcome, SuiteError> {
        let mut s = sampler(self.seed, 104);
        let mut c = Checks::default();
        let mut data = Vec::new();
        for n in [8usize, 7] {
            let rep = SpinRep::shared(n)?;
            for k in 0..self.options.spinor_squares {
                let x = rep.plus_spinor(&s.unit_vector(8));
                let t = TorsionForm::spinor_square(rep, &x)?;
                let a = analyze_fix_algebra(t.value())?;
                let z = fixed_spinors(t.value(), rep)?.dim();
                let ok = if n == 8 {
                    label_is(&a.descriptor, LieLabel::So(8, 1), 36) && z == 7
                } else {
                    a.descriptor.label == LieLabel::Abelian(7) && a.h.dim() == 0 && z == 7
                };
                c.detail(format!("n={n} sample {k}"), ok, json!({"z_dim": z, "descriptor": a.descriptor}));
                data.push(json!({"n": n, "spinor": x, "z_dim": z, "label": a.descriptor.label}));
            }
        }
        Ok(c.finish(4, json!(data)))
    }

    fn generic_invertible(&self) -> Result<CriterionOutcome, SuiteError> {
        let bank = self.bank()?;
        let mut c = Checks::default();
        for smp in &bank.generic {
            let d = &smp.analysis.descriptor;
            let ok = smp.z.dim() == 0 && label_is(d, LieLabel::So(8, 8), 120) && d.is_perfect();
            c.detail(smp.name.clone(), ok, smp.summary());
        }
        if bank.generic.len() < 10 {
            c.add(format!("at least 10 samples (got {})", bank.generic.len()), false);
        }
        Ok(c.finish(5, json!({ "samples": bank.generic.len() })))
    }

    fn ladder(&self) -> Result<CriterionOutcome, SuiteError> {
        let bank = self.bank()?;
        let mut c = Checks::default();
        for (d, smp) in &bank.ladder {
            let q = 8 - d;
            let dim = (16 - d) * (15 - d) / 2;
            let ok = smp.z.dim() == *d && label_is(&smp.analysis.descriptor, LieLabel::So(8, q), dim);
            c.detail(smp.name.clone(), ok, smp.summary());
        }
        Ok(c.finish(6, Value::Null))
    }

    fn dim_six(&self) -> Result<CriterionOutcome, SuiteError> {
        let bank = self.bank()?;
        let smp = &bank.su4;
        let mut c = Checks::default();
        let d = &smp.analysis.descriptor;
        c.add("dim Z = 6", smp.z.dim() == 6);
        c.detail("so(6,2), dim 28", label_is(d, LieLabel::So(6, 2), 28), json!({"measured": d.label, "dim": d.dim}));
        c.add("perfect", d.is_perfect());
        let split = lambda2_splitting(&smp.form)?;
        let q = q_spaces(&smp.form, Some(&split))?;
        let d6 = q.dim6.as_ref().ok_or_else(|| SuiteError::Torsion(TorsionError::Invariant("missing dim-6 data".into())))?;
        c.add("double commutators dim 16", d6.g2.dim() == 16);
        c.add("double commutators = (3+nu)F + (1-nu)iota0", d6.g2 == d6.g2_predicted);
        c.add("isotropy dim 15", split.isotropy.dim() == 15);
        let blocks = [split.iota0.dim(), split.e[0].dim(), split.e[1].dim(), split.f[&(0, 1)].dim()];
        c.detail("split (15,6,6,1)", blocks == [15, 6, 6, 1] && split.is_orthogonal_decomposition(), json!(blocks));
        c.add("Q1, Q2 in 3-forms", d6.q_in_lambda3);
        c.add("bracket relations among iota0, F12, Q1, Q2", d6.com6.iter().all(|x| *x));
        let data = json!({
            "descriptor": d,
            "g_odd_dim": smp.analysis.g_odd.dim(),
            "q_dim": q.q.dim(),
            "q_perp_dim": q.q_perp.dim(),
            "q1_dim": d6.q1.dim(),
            "q2_dim": d6.q2.dim(),
            "q1_equals_q2": d6.q1 == d6.q2,
            "g_is_double_commutators_plus_q1": smp.analysis.g == d6.g2.sum(&d6.q1),
        });
        Ok(c.finish(7, data))
    }

    fn fixed_spinor_theory(&self) -> Result<CriterionOutcome, SuiteError> {
        let bank = self.bank()?;
        let mut s = sampler(self.seed, 108);
        let mut c = Checks::default();
        let rep8 = SpinRep::shared(8)?;

        let mut even: Vec<(String, TorsionForm, FixedSpinors)> =
            bank.all().map(|x| (x.name.clone(), x.form.clone(), x.z.clone())).collect();
        for k in 0..self.options.extra_even_samples {
            let t = TorsionForm::from_value(sparse_selfdual(&mut s, 3), Provenance::File)?;
            let z = fixed_spinors(t.value(), rep8)?;
            even.push((format!("random-selfdual-{k}"), t, z));
        }
        let mut z2_ok = true;
        let mut z1_ok = true;
        let mut z_dims = Vec::new();
        for (name, t, z) in &even {
            let inv = invertibility_report(t)?;
            z2_ok &= inv.invertible_mod_1nu == (z.dim() == 0);
            let (plus, minus) = z1_spaces(t.value(), rep8)?;
            z1_ok &= same_span(&plus, &z.z_plus) && same_span(&minus, &z.z_minus);
            if in_lambda4_plus(t.value()) {
                z1_ok &= z.z_minus.is_empty();
            }
            z_dims.push(json!({"name": name, "z_dim": z.dim(), "invertible": inv.invertible_mod_1nu}));
        }
        c.detail(format!("Z = 0 iff invertible ({} samples)", even.len()), z2_ok, Value::Null);
        c.add("Z+ = ker T, Z- from T V, Z- = 0 on self-dual forms", z1_ok);

        let mut sq_ok = true;
        for n in [6usize, 7, 8] {
            let rep = SpinRep::shared(n)?;
            for _ in 0..self.options.alpha_squares {
                let t = loop {
                    let a = s.nonzero_form(n, 2);
                    if let Ok(t) = TorsionForm::alpha_square(&a) {
                        break t;
                    }
                };
                sq_ok &= fixed_spinors(t.value(), rep)?.dim() == 0;
            }
        }
        c.detail("Z(a^a) = 0", sq_ok, json!({"per_n": self.options.alpha_squares}));

        let mut ldim_ok = true;
        let mut trickl_first = true;
        let mut trickl_second = true;
        let mut skipped = 0usize;
        for n in [6usize, 7] {
            let rep = SpinRep::shared(n)?;
            for k in 1..=n {
                for _ in 0..self.options.pure_degree_samples {
                    let t = s.nonzero_form(n, k);
                    ldim_ok &= fixed_spinors(&t, rep)?.dim() == 0;
                    let (a, b) = trickl(&t, rep)?;
                    trickl_first &= a;
                    match b {
                        Some(b) => trickl_second &= b,
                        None => skipped += 1,
                    }
                }
            }
        }
        for x in bank.spectral() {
            let (a, b) = trickl(x.form.value(), rep8)?;
            trickl_first &= a;
            trickl_second &= b.unwrap_or(true);
        }
        c.detail("Z = 0 for pure forms, n = 6, 7", ldim_ok, json!({"per_degree": self.options.pure_degree_samples}));
        c.add("T Z_T = 0", trickl_first);
        c.detail("Z_T = Z_(nu T) for degree < n", trickl_second, json!({"top_degree_skipped": skipped}));

        // top degree: nu T is a scalar, so the second clause needs k < n
        let rep7 = SpinRep::shared(7)?;
        let nu = MultiVector::volume(7);
        let top = json!({
            "z_nu_dim": fixed_spinors(&nu, rep7)?.dim(),
            "z_nu_nu_dim": rep7.dim_s(),
        });
        Ok(c.finish(8, json!({"even_samples": z_dims, "top_degree_n7": top})))
    }

    fn identities(&self) -> Result<CriterionOutcome, SuiteError> {
        let bank = self.bank()?;
        let mut s = sampler(self.seed, 109);
        let mut c = Checks::default();
        let count = self.options.identity_instances;
        let (mut dcom, mut com4, mut cas, mut lsq) = (true, true, true, true);
        let mut stated_failures = 0usize;
        for _ in 0..count {
            let t = sparse_selfdual(&mut s, 3);
            let (x, y) = (s.vector(8), s.vector(8));
            dcom &= dcom_residual(&t, &x, &y)?.is_zero();
            com4 &= com4_residual(&t, &x, &y)?.is_zero();
            for k in [1, 3, 5] {
                cas &= casimir_residual(&t, &x, k, CASIMIR_LEADING)?.is_zero();
                if !casimir_residual(&t, &x, k, CASIMIR_LEADING_STATED)?.is_zero() {
                    stated_failures += 1;
                }
            }
            lsq &= l_square_residual(&t)?.is_zero();
        }
        c.add("double commutator", dcom);
        c.add("2-form commutator", com4);
        c.detail(
            "Casimir powers k = 1, 3, 5",
            cas,
            json!({"leading": CASIMIR_LEADING, "stated_leading_failures": stated_failures, "instances": 3 * count}),
        );
        c.add("L(T^2) = -8|T|^2(1-nu)", lsq);

        for n in [8usize, 7] {
            let rep = SpinRep::shared(n)?;
            let mut ok = [true; 3];
            for _ in 0..count {
                let x = rep.plus_spinor(&s.unit_vector(8));
                let tests: Vec<MultiVector> = (0..3).map(|_| s.sparse_multivector(n, 8)).collect();
                let r = square_properties(rep, &x, &tests)?;
                for i in 0..3 {
                    ok[i] &= r[i];
                }
            }
            c.add(format!("n={n} spinor square idempotent"), ok[0]);
            c.add(format!("n={n} spinor square absorbs nu"), ok[1]);
            c.detail(format!("n={n} spinor square sandwich"), ok[2], json!({"kappa": crate::spin::kappa(n)}));
        }

        let rep = SpinRep::shared(8)?;
        let small_spinor = |s: &mut Sampler| {
            let v: Vec<Rational> = (0..8).map(|_| Rational::from(s.small_int())).collect();
            rep.plus_spinor(&v)
        };
        let (mut class, mut bracket, mut pairing) = (true, true, true);
        for _ in 0..count {
            let (x, y, xp, yp) = (small_spinor(&mut s), small_spinor(&mut s), small_spinor(&mut s), small_spinor(&mut s));
            class &= sqskew_class(rep, &x, &y)?;
            bracket &= sqskew_bracket_residual(rep, &x, &y, &xp, &yp)?.is_zero();
            pairing &= sqskew_pairing_residual(rep, &x, &y, &xp, &yp)?.is_zero();
        }
        c.add("spinor wedge class", class);
        c.add("spinor wedge bracket", bracket);
        c.add("spinor wedge pairing", pairing);

        let spectral: Vec<&Sample> = bank.spectral().collect();
        let (mut eigen, mut equal) = (true, true);
        let mut equal_count = 0usize;
        for k in 0..count {
            let smp = spectral[s.below(spectral.len())];
            let (groups, _) = smp.form.eigenspaces().expect("spectral sample");
            let combine = |s: &mut Sampler, g: &[Spinor]| -> Spinor {
                let mut v = vec![Rational::zero(); 16];
                for b in g {
                    let w = Rational::from(s.nonzero_int());
                    for (a, c) in v.iter_mut().zip(b) {
                        a.add_mul(&w, c);
                    }
                }
                v
            };
            let i = s.below(groups.len());
            // every other instance uses a repeated eigenvalue when one exists
            let repeated = groups.iter().position(|(_, g)| g.len() >= 2);
            let (i, j) = match (k % 2, repeated) {
                (1, Some(r)) => (r, r),
                _ => (i, s.below(groups.len())),
            };
            let x = combine(&mut s, &groups[i].1);
            let y = combine(&mut s, &groups[j].1);
            let (l1, l2) = (&groups[i].0, &groups[j].0);
            let (a, b) = sqskew_eigen_residuals(rep, smp.form.value(), &x, l1, &y, l2)?;
            eigen &= a.is_zero() && b.is_zero();
            if l1 == l2 {
                equal_count += 1;
                let (a, b) = sqskew_equal_residuals(rep, smp.form.value(), &x, &y, l1)?;
                equal &= a.is_zero() && b.is_zero();
            }
        }
        c.add("spinor wedge of eigenvectors", eigen);
        c.detail("spinor wedge, equal eigenvalues", equal && equal_count > 0, json!({"instances": equal_count}));
        Ok(c.finish(9, json!({"instances": count})))
    }

    fn structure(&self) -> Result<CriterionOutcome, SuiteError> {
        let bank = self.bank()?;
        let mut s = sampler(self.seed, 110);
        let mut c = Checks::default();
        let nu = MultiVector::volume(8);
        let (mut in_a, mut alpha_stable, mut beta_nondeg) = (true, true, true);
        let (mut perfect, mut center) = (true, true);
        let mut eligible = 0usize;
        for smp in bank.all() {
            let basis = smp.analysis.g.basis();
            in_a &= basis.iter().all(|b| b.transpose() == -b);
            alpha_stable &= basis.iter().all(|b| smp.analysis.g.contains(&b.alpha()));
            beta_nondeg &= smp.analysis.descriptor.beta_signature.zero == 0;
            let t = smp.form.value();
            if smp.z.dim() == 0 {
                eligible += 1;
                perfect &= smp.analysis.descriptor.is_perfect();
                if &(&nu * t) == t && &(t * &nu) == t {
                    center &= smp.analysis.descriptor.center_dim == 0;
                }
            }
        }
        c.add("g inside A", in_a);
        c.add("alpha(g) = g", alpha_stable);
        c.add("beta non-degenerate on g", beta_nondeg);
        c.detail("Z = 0 => perfect", perfect && eligible > 0, json!({"eligible": eligible}));
        c.add("Z = 0 => trivial center", center);

        let mut rows = Vec::new();
        for (d, smp) in &bank.ladder {
            let split = lambda2_splitting(&smp.form)?;
            let q = q_spaces(&smp.form, Some(&split))?;
            let even = smp.analysis.g_even == split.predicted_even_part();
            let odd = smp.analysis.g_odd == q.q_perp;
            let table = split.bracket_table();
            let table_ok = table.iter().all(|(_, ok)| *ok);
            c.add(format!("{} even part = (1+nu)F + (1-nu)L2", smp.name), even);
            c.add(format!("{} odd part = Q-perp", smp.name), odd);
            c.add(format!("{} dim Q = 8d", smp.name), q.q.dim() == 8 * d && q.q == q.q_strict);
            c.add(format!("{} split orthogonal, isotropy", smp.name), split.is_orthogonal_decomposition() && split.isotropy_matches());
            c.detail(format!("{} bracket table", smp.name), table_ok, json!(table.len()));
            rows.push(json!({"name": smp.name, "d": d, "dims": split.dims()}));
        }
        for smp in bank.generic.iter().chain(std::iter::once(&bank.su4)) {
            let split = lambda2_splitting(&smp.form)?;
            let table = split.bracket_table();
            let ok = split.is_orthogonal_decomposition() && split.isotropy_matches() && table.iter().all(|(_, ok)| *ok);
            c.add(format!("{} split orthogonal, isotropy, bracket table", smp.name), ok);
        }

        let mut power_ok = true;
        for smp in bank.spectral().take(6) {
            power_ok &= odd_power_inclusion_in(smp.form.value(), &smp.analysis.g, 2).iter().all(|x| *x);
        }
        c.add("odd powers stay in g (k = 1, 2)", power_ok);

        let mut flips = Vec::new();
        let targets: Vec<&Sample> = vec![&bank.su4, &bank.unipotent, &bank.ladder[bank.ladder.len() / 2].1];
        for smp in targets {
            for _ in 0..self.options.flip_vectors {
                let e = planar_unit_vector(&mut s);
                let conj = smp.form.conjugate_by_vector(&e)?;
                let a = analyze_fix_algebra(conj.value())?;
                let ok = a.descriptor == smp.analysis.descriptor;
                c.add(format!("{} conjugation by {}", smp.name, e), ok);
                flips.push(json!({"name": smp.name, "vector": e, "label": a.descriptor.label}));
            }
        }
        Ok(c.finish(10, json!({"splits": rows, "flips": flips})))
    }

    fn spectrum_oracle(&self) -> Result<CriterionOutcome, SuiteError> {
        let bank = self.bank()?;
        let k_max = self.options.k_max;
        let mut c = Checks::default();
        let r = Rational::from;

        let pm = SpectrumCandidate::from_ints(&[(1, 1), (-1, 1)])?;
        c.add("(i) {1,-1}, d = 6: comb0 identity", appendix::comb0_condition(&pm, 0, k_max)? && appendix::comb0_condition(&pm, 1, k_max)?);
        let uni = SpectrumCandidate::from_ints(&[(1, 4), (-1, 4)])?;
        c.add("(i) {1:4,-1:4}: power identity", appendix::combin_condition(&uni, 0, 1, k_max)?);
        let two = appendix::two_pairs_instance(&r(1), &r(4)).expect("rational instance");
        let mut two_ok = true;
        for i in 0..4 {
            for j in 0..4 {
                if two.pairs()[i].0.abs() != two.pairs()[j].0.abs() {
                    two_ok &= appendix::combin_condition(&two, i, j, k_max)?;
                }
            }
        }
        c.add("(ii) lambda=1, mu=4", two_ok && appendix::family_of(&two) == Some(Family::TwoPairs));
        let lop = appendix::lopsided_instance(&r(4), &r(1), -1).expect("rational instance");
        let lop_ok = appendix::combin_condition(&lop, 0, 1, k_max)? && appendix::combin_condition(&lop, 0, 2, k_max)?;
        c.add("(iii) lambda=4, mu=1", lop_ok && lop.trace().is_zero() && appendix::family_of(&lop) == Some(Family::Lopsided));

        let grid = self.options.grid;
        let hits = appendix::family_search(&grid, k_max);
        let all_family = hits.iter().all(|h| h.family.is_some());
        c.detail(format!("grid search (k_max {k_max}) returns only family members"), all_family && !hits.is_empty(), json!(hits.len()));
        let hits4 = appendix::family_search(&grid, 4.min(k_max));
        c.add("same hits at k_max 4", hits4 == hits);
        let feasibility = appendix::lopsided_feasibility(&grid);
        let trace_rule = feasibility.iter().all(|rec| !rec.trace.is_zero() || rec.ratio_four);
        c.add("family (iii) traceless only when |lambda| = 4|mu|", trace_rule);

        let mut norms_ok = true;
        for smp in bank.spectral() {
            let cand = SpectrumCandidate::from(smp.form.constructed_spectrum().expect("spectral sample"));
            let seq = appendix::power_norm_sequence(&cand, 2);
            let t = smp.form.value();
            let t2 = t * t;
            let mut p = t.clone();
            for expect in &seq {
                norms_ok &= &p.norm_sq() * &r(16) == *expect;
                p = &p * &t2;
            }
        }
        c.add("16|T^(2k+1)|^2 matches the spectrum, k <= 2", norms_ok);
        let hits_json: Vec<Value> =
            hits.iter().map(|h| json!({"candidate": h.candidate, "pairs": h.pairs, "family": h.family.map(Family::roman)})).collect();
        Ok(c.finish(11, json!({"hits": hits_json, "lopsided": feasibility})))
    }

    fn determinism(&self) -> Result<CriterionOutcome, SuiteError> {
        let mut c = Checks::default();
        let runs: Vec<Vec<String>> = (0..2)
            .map(|_| {
                let fresh = Suite::new(self.seed, self.options);
                [8u32, 9, 11]
                    .iter()
                    .map(|&id| fresh.run(id).map(|o| serde_json::to_string(&o).expect("serializable")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        c.add("randomized suites reproduce", runs[0] == runs[1]);
        let banks: Vec<Vec<String>> = (0..2)
            .map(|_| Suite::new(self.seed, self.options).build_bank().map(|b| b.all().map(|x| x.form.value().to_json()).collect()))
            .collect::<Result<_, _>>()?;
        c.add("sample forms reproduce", banks[0] == banks[1]);
        Ok(c.finish(12, Value::Null))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete() {
        let ids: Vec<u32> = CRITERIA.iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=12).collect::<Vec<_>>());
        assert!(matches!(Suite::new(0, SuiteOptions::default()).run(13), Err(SuiteError::UnknownCriterion(13))));
    }

    #[test]
    fn spectra_are_screened() {
        let mut s = Sampler::new(5);
        for d in 0..=5 {
            let spec = random_spectrum(&mut s, d).unwrap();
            assert_eq!(spec.zero_dim(), d);
            assert!(spec.trace().is_zero());
            if d == 0 {
                assert!(appendix::family_of(&SpectrumCandidate::from(&spec)).is_none());
            }
        }
    }

    #[test]
    fn planar_vectors_are_unit() {
        let mut s = Sampler::new(9);
        for _ in 0..10 {
            assert!(planar_unit_vector(&mut s).norm_sq().is_one());
        }
    }
}
