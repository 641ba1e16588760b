use super::{FusionData, Label};
use crate::exactnum::Cyclotomic;

/// Outcome of checking the fusion-category equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomReport {
    Pass,
    Fail { equation: String, witness: Vec<Label> },
}

impl AxiomReport {
    pub fn is_pass(&self) -> bool {
        *self == AxiomReport::Pass
    }
}

fn fail(equation: &str, witness: &[Label]) -> AxiomReport {
    AxiomReport::Fail { equation: equation.to_string(), witness: witness.to_vec() }
}

macro_rules! check {
    ($r:expr) => {
        if let r @ AxiomReport::Fail { .. } = $r {
            return r;
        }
    };
}

/// Checks fusion rules, unit (triangle) equations, invertibility of the
/// F-matrices, the pentagon equations and the pivotal equations.
pub fn verify_axioms<C: FusionData>(cat: &C) -> AxiomReport {
    check!(fusion_rules(cat));
    check!(unit_equations(cat));
    check!(inverse_equations(cat));
    check!(pentagon(cat));
    check!(pivotal_equations(cat));
    AxiomReport::Pass
}

fn fusion_rules<C: FusionData>(cat: &C) -> AxiomReport {
    let labels = cat.labels();
    let one = cat.unit();
    for &a in &labels {
        if cat.fuse(one, a) != vec![a] || cat.fuse(a, one) != vec![a] {
            return fail("unit fusion", &[a]);
        }
        let duals: Vec<Label> = labels.iter().copied().filter(|&b| cat.fusion_coeff(a, b, one) == 1).collect();
        if duals != vec![cat.dual(a)] || cat.dual(cat.dual(a)) != a {
            return fail("duality", &[a]);
        }
    }
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                let ad = cat.dual(a);
                let bd = cat.dual(b);
                let n = cat.fusion_coeff(a, b, c);
                if n != cat.fusion_coeff(ad, c, b) || n != cat.fusion_coeff(c, bd, a) {
                    return fail("frobenius reciprocity", &[a, b, c]);
                }
                for &d in &labels {
                    let left: u32 = cat.fuse(a, b).iter().map(|&x| cat.fusion_coeff(x, c, d) as u32).sum();
                    let right: u32 = cat.fuse(b, c).iter().map(|&x| cat.fusion_coeff(a, x, d) as u32).sum();
                    if left != right {
                        return fail("fusion associativity", &[a, b, c, d]);
                    }
                }
            }
        }
    }
    AxiomReport::Pass
}

fn unit_equations<C: FusionData>(cat: &C) -> AxiomReport {
    let one = cat.unit();
    let labels = cat.labels();
    for &a in &labels {
        for &b in &labels {
            for d in cat.fuse(a, b) {
                if !cat.f_symbol(one, a, b, d, a, d).is_one() {
                    return fail("triangle [F^{1ab}_d]_{a,d} = 1", &[a, b, d]);
                }
                if !cat.f_symbol(a, one, b, d, a, b).is_one() {
                    return fail("triangle [F^{a1b}_d]_{a,b} = 1", &[a, b, d]);
                }
                if !cat.f_symbol(a, b, one, d, d, b).is_one() {
                    return fail("triangle [F^{ab1}_d]_{d,b} = 1", &[a, b, d]);
                }
            }
        }
    }
    AxiomReport::Pass
}

/// Admissible (d, left intermediates, right intermediates) for a x b x c.
fn blocks<C: FusionData>(cat: &C, a: Label, b: Label, c: Label) -> Vec<(Label, Vec<Label>, Vec<Label>)> {
    let mut ds: Vec<Label> = cat.fuse(a, b).into_iter().flat_map(|e| cat.fuse(e, c)).collect();
    ds.sort();
    ds.dedup();
    ds.into_iter()
        .map(|d| {
            let es = cat.fuse(a, b).into_iter().filter(|&e| cat.fusion_coeff(e, c, d) == 1).collect();
            let fs = cat.fuse(b, c).into_iter().filter(|&f| cat.fusion_coeff(a, f, d) == 1).collect();
            (d, es, fs)
        })
        .collect()
}

fn inverse_equations<C: FusionData>(cat: &C) -> AxiomReport {
    let labels = cat.labels();
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                for (d, es, fs) in blocks(cat, a, b, c) {
                    if es.len() != fs.len() {
                        return fail("F-matrix is square", &[a, b, c, d]);
                    }
                    for &e in &es {
                        for &e2 in &es {
                            let mut acc = Cyclotomic::zero(cat.order());
                            for &f in &fs {
                                acc += &(&cat.f_symbol(a, b, c, d, e, f) * &cat.f_symbol_inverse(a, b, c, d, f, e2));
                            }
                            let ok = if e == e2 { acc.is_one() } else { acc.is_zero() };
                            if !ok {
                                return fail("F F^-1 = 1", &[a, b, c, d, e, e2]);
                            }
                        }
                    }
                }
            }
        }
    }
    AxiomReport::Pass
}

/// sum_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l] = F^{fcd}_e[g,l] F^{abl}_e[f,k]
fn pentagon<C: FusionData>(cat: &C) -> AxiomReport {
    let labels = cat.labels();
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                for &d in &labels {
                    for f in cat.fuse(a, b) {
                        for g in cat.fuse(f, c) {
                            for e in cat.fuse(g, d) {
                                for l in cat.fuse(c, d) {
                                    for k in cat.fuse(b, l) {
                                        if cat.fusion_coeff(a, k, e) == 0 {
                                            continue;
                                        }
                                        let mut left = Cyclotomic::zero(cat.order());
                                        for h in cat.fuse(b, c) {
                                            let x = cat.f_symbol(a, b, c, g, f, h);
                                            if x.is_zero() {
                                                continue;
                                            }
                                            let y = cat.f_symbol(a, h, d, e, g, k);
                                            if y.is_zero() {
                                                continue;
                                            }
                                            left += &(&(&x * &y) * &cat.f_symbol(b, c, d, k, h, l));
                                        }
                                        let right = &cat.f_symbol(f, c, d, e, g, l) * &cat.f_symbol(a, b, l, e, f, k);
                                        if left != right {
                                            return fail("pentagon", &[a, b, c, d, e, f, g, k, l]);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    AxiomReport::Pass
}

fn pivotal_equations<C: FusionData>(cat: &C) -> AxiomReport {
    let labels = cat.labels();
    let one = cat.unit();
    if cat.pivotal(one) != 1 {
        return fail("t_1 = 1", &[one]);
    }
    for &a in &labels {
        let ad = cat.dual(a);
        if cat.pivotal(a).abs() != 1 || cat.pivotal(a) != cat.pivotal(ad) {
            return fail("t_a = t_a* = +-1", &[a]);
        }
        // d_a = t_a^-1 / [F^{a a* a}_a]_{1,1}
        let f = cat.f_symbol(a, ad, a, a, one, one);
        let d = cat.quantum_dim(a);
        let expect = if cat.pivotal(a) == 1 { Cyclotomic::one(cat.order()) } else { Cyclotomic::from_integer(cat.order(), -1) };
        if &d * &f != expect {
            return fail("quantum dimension", &[a]);
        }
        // [F^{a a* a}_a]_{1,1} = [F^{a* a a*}_{a*}]^{-1}_{1,1}
        let g = cat.f_symbol_inverse(ad, a, ad, ad, one, one);
        if f.is_zero() || f != g {
            return fail("rigidity", &[a]);
        }
        for &b in &labels {
            for c in cat.fuse(a, b) {
                let (bd, cd) = (cat.dual(b), cat.dual(c));
                let lhs = cat.pivotal(c) * cat.pivotal(a) * cat.pivotal(b);
                let lhs = Cyclotomic::from_integer(cat.order(), lhs as i64);
                let prod = &(&cat.f_symbol(a, b, cd, one, c, ad) * &cat.f_symbol(b, cd, a, one, ad, bd))
                    * &cat.f_symbol(cd, a, b, one, bd, c);
                let prod_inv = &(&cat.f_symbol_inverse(a, b, cd, one, ad, c) * &cat.f_symbol_inverse(b, cd, a, one, bd, ad))
                    * &cat.f_symbol_inverse(cd, a, b, one, c, bd);
                if prod != lhs || prod_inv != lhs {
                    return fail("pivotal", &[a, b, c]);
                }
            }
        }
    }
    AxiomReport::Pass
}

/// A category with one F-symbol entry multiplied by a factor, leaving the
/// stored inverse untouched. Used to exercise the axiom checker.
pub struct Perturbed<'a, C> {
    pub inner: &'a C,
    pub entry: [Label; 6],
    pub factor: Cyclotomic,
}

impl<C: FusionData> FusionData for Perturbed<'_, C> {
    fn labels(&self) -> Vec<Label> {
        self.inner.labels()
    }
    fn unit(&self) -> Label {
        self.inner.unit()
    }
    fn dual(&self, a: Label) -> Label {
        self.inner.dual(a)
    }
    fn fuse(&self, a: Label, b: Label) -> Vec<Label> {
        self.inner.fuse(a, b)
    }
    fn f_symbol(&self, a: Label, b: Label, c: Label, d: Label, e: Label, f: Label) -> Cyclotomic {
        let v = self.inner.f_symbol(a, b, c, d, e, f);
        if [a, b, c, d, e, f] == self.entry {
            &v * &self.factor
        } else {
            v
        }
    }
    fn f_symbol_inverse(&self, a: Label, b: Label, c: Label, d: Label, x: Label, y: Label) -> Cyclotomic {
        self.inner.f_symbol_inverse(a, b, c, d, x, y)
    }
    fn pivotal(&self, a: Label) -> i8 {
        self.inner.pivotal(a)
    }
    fn quantum_dim(&self, a: Label) -> Cyclotomic {
        self.inner.quantum_dim(a)
    }
    fn order(&self) -> u64 {
        self.inner.order()
    }
}
