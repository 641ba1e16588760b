use super::*;
use crate::corpus;
use itertools_free::product6;

mod itertools_free {
    use super::Label;
    /// All 6-tuples over `labels`.
    pub fn product6(labels: &[Label]) -> Vec<[Label; 6]> {
        let n = labels.len();
        (0..n.pow(6))
            .map(|mut i| {
                std::array::from_fn(|_| {
                    let l = labels[i % n];
                    i /= n;
                    l
                })
            })
            .collect()
    }
}

fn admissible(cat: &TYData, l: [Label; 6]) -> bool {
    let [a, b, c, d, e, f] = l;
    cat.fusion_coeff(a, b, c) == 1
        && cat.fusion_coeff(c, d, e) == 1
        && cat.fusion_coeff(b, d, f) == 1
        && cat.fusion_coeff(a, f, e) == 1
}

fn g(l: Label) -> usize {
    match l {
        Label::G(i) => i,
        Label::M => panic!("expected a group label"),
    }
}

/// Weights by the m-edge pattern of the tetrahedron.
fn weight_by_type(cat: &TYData, l: [Label; 6], sign: i8) -> Cyclotomic {
    let ms: Vec<usize> = (0..6).filter(|&i| l[i].is_m()).collect();
    let dm = cat.d_m().clone();
    let conj_if = |x: Cyclotomic, yes: bool| if yes { x.conj() } else { x };
    match ms.as_slice() {
        [] => Cyclotomic::one(cat.order()),
        // three edges at a vertex: 0 {a,c,e}, 1 {a,b,f}, 2 {b,c,d}, 3 {d,e,f}
        [0, 2, 4] | [0, 1, 5] | [1, 2, 3] | [3, 4, 5] => dm,
        [1, 2, 4, 5] => &dm * &conj_if(cat.chi(g(l[0]), g(l[3])), sign < 0),
        [0, 2, 3, 5] => &dm * &conj_if(cat.chi(g(l[1]), g(l[4])), sign < 0),
        [0, 1, 3, 4] => {
            let base = &(&dm * &dm) * cat.nu();
            &base * &conj_if(cat.chi(g(l[2]), g(l[5])), sign > 0)
        }
        other => panic!("inadmissible pattern {other:?}"),
    }
}

#[test]
fn bundled_categories_satisfy_axioms() {
    for name in corpus::category_names() {
        let cat = corpus::load_category(name).unwrap();
        assert_eq!(verify_axioms(&cat), AxiomReport::Pass, "{name}");
    }
}

#[test]
fn corrupted_f_symbol_is_caught() {
    let cat = corpus::load_category("z3_k1_plus").unwrap();
    let entry = [Label::M, Label::M, Label::M, Label::M, Label::G(1), Label::G(2)];
    let bad = Perturbed { inner: &cat, entry, factor: Cyclotomic::from_integer(cat.order(), -1) };
    match verify_axioms(&bad) {
        AxiomReport::Fail { witness, .. } => assert!(!witness.is_empty()),
        AxiomReport::Pass => panic!("perturbed data passed"),
    }
    // a perturbation that keeps F invertible still breaks the pentagon
    let entry = [Label::G(1), Label::M, Label::G(2), Label::M, Label::M, Label::M];
    let omega = Cyclotomic::root_of_unity(1, 3);
    struct Consistent<'a>(Perturbed<'a, TYData>);
    impl FusionData for Consistent<'_> {
        fn labels(&self) -> Vec<Label> { self.0.labels() }
        fn unit(&self) -> Label { self.0.unit() }
        fn dual(&self, a: Label) -> Label { self.0.dual(a) }
        fn fuse(&self, a: Label, b: Label) -> Vec<Label> { self.0.fuse(a, b) }
        fn f_symbol(&self, a: Label, b: Label, c: Label, d: Label, e: Label, f: Label) -> Cyclotomic {
            self.0.f_symbol(a, b, c, d, e, f)
        }
        fn f_symbol_inverse(&self, a: Label, b: Label, c: Label, d: Label, x: Label, y: Label) -> Cyclotomic {
            let v = self.0.f_symbol(a, b, c, d, y, x);
            if [a, b, c, d].iter().all(|l| l.is_m()) { self.0.f_symbol_inverse(a, b, c, d, x, y) } else if v.is_zero() { v } else { v.conj() }
        }
        fn pivotal(&self, a: Label) -> i8 { self.0.pivotal(a) }
        fn quantum_dim(&self, a: Label) -> Cyclotomic { self.0.quantum_dim(a) }
        fn order(&self) -> u64 { self.0.order() }
    }
    let bad = Consistent(Perturbed { inner: &cat, entry, factor: omega });
    match verify_axioms(&bad) {
        AxiomReport::Fail { equation, witness } => {
            assert_eq!(equation, "pentagon");
            assert_eq!(witness.len(), 9);
        }
        AxiomReport::Pass => panic!("perturbed data passed"),
    }
}

#[test]
fn tetrahedron_weights_follow_the_type_table() {
    for name in ["z2_plus", "z3_k1_minus", "z2z2_hyp_plus", "z4_k3_minus"] {
        let cat = corpus::load_category(name).unwrap();
        let labels = cat.labels();
        let mut seen = 0;
        for l in product6(&labels) {
            let ok = admissible(&cat, l);
            for sign in [1i8, -1] {
                let w = cat.model_tet_weight(l, sign);
                if !ok {
                    assert!(w.is_zero(), "{name} {l:?}");
                    continue;
                }
                seen += 1;
                assert_eq!(w, weight_by_type(&cat, l, sign), "{name} {l:?} {sign}");
            }
            if ok {
                assert_eq!(cat.model_tet_weight(l, -1), cat.model_tet_weight(l, 1).conj());
            }
        }
        assert!(seen > 0);
    }
}

#[test]
fn structure_constants() {
    let cat = corpus::load_category("z4_k1_minus").unwrap();
    assert_eq!(cat.order(), 16);
    assert_eq!(cat.global_dim(), 8);
    assert_eq!(&cat.d_m().clone() * cat.d_m(), Cyclotomic::from_integer(16, 4));
    assert_eq!(cat.nu().scale(&Rational::from_integer(2.into())), Cyclotomic::from_integer(16, -1));
    assert_eq!(cat.pivotal(Label::M), -1);
    // character orthogonality: sum_b chi(a, b) = |A| delta_a
    for a in 0..cat.group_size() {
        let mut s = Cyclotomic::zero(cat.order());
        for b in 0..cat.group_size() {
            s += &cat.chi(a, b);
        }
        let expect = if a == 0 { 4 } else { 0 };
        assert_eq!(s, Cyclotomic::from_integer(cat.order(), expect));
    }
}

#[test]
fn category_json_errors() {
    let err = TYData::from_json(r#"{"orders":[2],"gram":[["1/2"]],"nu_sign":"x"}"#).unwrap_err();
    assert!(matches!(err, CategoryError::NuSign(_)));
    let err = TYData::from_json(r#"{"orders":[6],"gram":[["1/6"]],"nu_sign":"+"}"#).unwrap_err();
    assert!(matches!(err, CategoryError::Group(_)));
    let err = TYData::from_json(r#"{"orders":[2,2],"gram":[["1/2","0"],["0","0"]],"nu_sign":"+"}"#).unwrap_err();
    assert!(matches!(err, CategoryError::Gram(BicharError::Degenerate { .. })));
    let err = TYData::from_json(r#"{"orders":[2],"gram":[["q"]],"nu_sign":"+"}"#).unwrap_err();
    assert!(matches!(err, CategoryError::Entry { i: 0, j: 0, .. }));
    assert!(matches!(TYData::from_json("[]"), Err(CategoryError::Json(_))));
}
