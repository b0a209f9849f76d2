use std::f64::consts::FRAC_PI_2;

use bochner_bounds::cli::{run_with, EXIT_FAILED, EXIT_MALFORMED, EXIT_OK};
use bochner_bounds::hilbert::{bessel_defect, orthonormalize};
use bochner_bounds::prelude::*;
use bochner_bounds::report::document;
use num_complex::Complex64;
use proptest::prelude::*;

fn cvec(d: usize) -> impl Strategy<Value = ComplexVec> {
    prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), d)
        .prop_map(|v| ComplexVec::new(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap())
}

fn pair(d: std::ops::Range<usize>) -> impl Strategy<Value = (ComplexVec, ComplexVec)> {
    d.prop_flat_map(|d| (cvec(d), cvec(d)))
}

fn grid(max_dim: usize) -> impl Strategy<Value = GridFunction> {
    (1..=max_dim, 2..12usize)
        .prop_flat_map(|(d, n)| prop::collection::vec(cvec(d), n))
        .prop_map(|vals| {
            let iv = Interval::new(-1.0, 2.0).unwrap();
            let nodes = iv.uniform_nodes(vals.len());
            GridFunction::new(iv, nodes, vals, Interp::Linear).unwrap()
        })
}

proptest! {
    #[test]
    fn cauchy_schwarz_and_triangle((u, v) in pair(1..6)) {
        let ip = u.inner(&v).unwrap();
        prop_assert!(ip.norm() <= u.norm() * v.norm() * (1.0 + 1e-12) + 1e-12);
        prop_assert!(u.add(&v).unwrap().norm() <= u.norm() + v.norm() + 1e-12);
        // conjugate symmetry
        prop_assert!((ip - v.inner(&u).unwrap().conj()).norm() <= 1e-12);
    }

    #[test]
    fn inner_is_linear_in_first_slot((u, v) in pair(1..5), a in -2.0..2.0f64, b in -2.0..2.0f64) {
        let z = Complex64::new(a, b);
        let lhs = u.scale(z).inner(&v).unwrap();
        let rhs = z * u.inner(&v).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-11);
    }

    #[test]
    fn triangle_inequality_for_integrals(f in grid(4), kind in prop::sample::select(vec![QuadKind::Simpson, QuadKind::Trapezoid]), r in 1..5usize) {
        let rule = QuadratureRule { kind, refinement: r, ..Default::default() };
        let i = integrate(&f, &rule).unwrap();
        prop_assert!(i.vector.norm() <= i.norm * (1.0 + 1e-12) + 1e-12);
        prop_assert!(i.norm >= 0.0);
    }

    #[test]
    fn even_refinement_integrates_interpolant_exactly(f in grid(3)) {
        // the interpolant is piecewise linear, so Simpson with any even
        // refinement reproduces the trapezoid on the nodes
        let nodes = f.nodes();
        let mut want = ComplexVec::zeros(f.dim()).unwrap();
        for k in 0..nodes.len() - 1 {
            let h = nodes[k + 1] - nodes[k];
            want.add_scaled(Complex64::new(h / 2.0, 0.0), &f.values()[k]).unwrap();
            want.add_scaled(Complex64::new(h / 2.0, 0.0), &f.values()[k + 1]).unwrap();
        }
        for r in [2, 4] {
            let got = integrate(&f, &QuadratureRule::simpson(r)).unwrap().vector;
            prop_assert!(got.sub(&want).unwrap().norm() <= 1e-12 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn bessel_defect_nonnegative(d in 1..7usize, seed in any::<u64>()) {
        let mut s = bochner_bounds::witness::rng::Sampler::new(seed);
        let raw: Vec<ComplexVec> = (0..d).map(|_| s.gaussian_vec(d)).collect();
        let vs = orthonormalize(&raw).unwrap();
        let n = 1 + (seed as usize % vs.len());
        let fam = check_orthonormal(vs[..n].to_vec(), 1e-12).unwrap();
        let x = s.gaussian_vec(d);
        prop_assert!(bessel_defect(&x, &fam).unwrap() >= -1e-10);
    }

    #[test]
    fn cone_soundness_on_random_samples(p1 in 0.0..1.5f64, w in 0.0..1.0f64, seed in any::<u64>()) {
        let p2 = (p1 + w).min(FRAC_PI_2 - 1e-3);
        let h = Hypothesis::Cone { phi1: p1.min(p2), phi2: p2 };
        let f = GeneratorSpec::matching(h.clone()).with_nodes(9).sample(seed).unwrap();
        let r = certify(&f, &h, &QuadratureRule::default(), 1e-9).unwrap();
        prop_assert!(r.hypothesis_verified);
        prop_assert!(r.gap >= -1e-8, "gap {}", r.gap);
        prop_assert!(r.coefficient <= 1.0 + 1e-12);
    }

    #[test]
    fn unit_vector_soundness_and_estimates(k1 in 0.0..0.7f64, k2 in 0.0..0.7f64, seed in any::<u64>()) {
        let e = ComplexVec::new(vec![Complex64::new(0.0, 0.6), Complex64::new(0.8, 0.0)]).unwrap();
        let h = Hypothesis::UnitVector { e: e.clone(), k1, k2 };
        let f = GeneratorSpec::matching(h.clone()).with_nodes(7).sample(seed).unwrap();
        let r = certify(&f, &h, &QuadratureRule::default(), 1e-9).unwrap();
        prop_assert!(r.hypothesis_verified && r.gap >= -1e-8);
        let (a, b) = bochner_bounds::hypotheses::estimate_unit_vector(&f, &e).unwrap();
        prop_assert!(a >= k1 - 1e-9 && b >= k2 - 1e-9);
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>()) {
        let g = GeneratorSpec::matching(Hypothesis::Disk {
            e: ComplexVec::from_real(&[0.0, 1.0]).unwrap(),
            eta1: 0.8,
            eta2: 0.9,
        });
        prop_assert_eq!(g.sample(seed).unwrap(), g.sample(seed).unwrap());
    }

    #[test]
    fn json_round_trip(f in grid(3), p1 in 0.0..0.7f64, p2 in 0.7..1.5f64) {
        let h = Hypothesis::Cone { phi1: p1, phi2: p2 };
        let text = document(&serde_json::json!({"function": f, "hypothesis": h})).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let f2: GridFunction = serde_json::from_value(v["function"].clone()).unwrap();
        let h2: Hypothesis = serde_json::from_value(v["hypothesis"].clone()).unwrap();
        prop_assert_eq!(f2, f);
        prop_assert_eq!(h2, h);
    }
}

fn exit_code(doc: &str, cmd: &str) -> i32 {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.json");
    std::fs::write(&path, doc).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    run_with(["bochner-bounds", cmd, "--input", path.to_str().unwrap()], &mut out, &mut err)
}

fn scalar_function(vals: &[(f64, f64)]) -> serde_json::Value {
    let nodes: Vec<f64> = (0..vals.len()).map(|k| k as f64 / (vals.len() - 1) as f64).collect();
    let values: Vec<Vec<[f64; 2]>> = vals.iter().map(|&(a, b)| vec![[a, b]]).collect();
    serde_json::json!({"a": 0.0, "b": 1.0, "nodes": nodes, "values": values})
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exit_code_contract(
        vals in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..6),
        theta in 0.1..1.5f64,
        junk in "[a-z{}\\[\\]:,\"0-9 ]{0,40}",
        which in 0..3u8,
    ) {
        let f = scalar_function(&vals);
        let h = serde_json::json!({"type": "karamata", "theta": theta});
        match which {
            0 => {
                // well-formed: status is 0 or 2 according to the check
                let doc = serde_json::json!({"function": f, "hypothesis": h}).to_string();
                let parsed: GridFunction = serde_json::from_value(f).unwrap();
                let holds = check(&parsed, &serde_json::from_value(h).unwrap(), 1e-9).unwrap().holds;
                let code = exit_code(&doc, "certify");
                prop_assert_eq!(code, if holds { EXIT_OK } else { EXIT_FAILED });
            }
            1 => {
                prop_assert_eq!(exit_code(&junk, "check"), EXIT_MALFORMED);
            }
            _ => {
                // structurally valid JSON with an out-of-range parameter
                let doc = serde_json::json!({"function": f, "hypothesis": {"type": "karamata", "theta": -theta}}).to_string();
                prop_assert_eq!(exit_code(&doc, "check"), EXIT_MALFORMED);
            }
        }
    }
}
