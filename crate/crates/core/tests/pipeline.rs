use qhf_core::builders::*;
use qhf_core::group::{all_subgroups, FiniteGroup, MatchedPair};
use qhf_core::hypergroup::{run_pipeline, QuantumGroupContext};

fn show(label: &str, r: &qhf_core::hypergroup::PipelineReport) {
    let f = r.failures();
    println!("{label}: central={} fails={:?}", r.central.central, f);
}

#[test]
fn s3_all_subgroups_on_function_algebra() {
    let g = FiniteGroup::symmetric(3).unwrap();
    let ctx = QuantumGroupContext::new(build_function_algebra(&g).unwrap()).unwrap();
    for h in all_subgroups(&g) {
        let (_, k) = subgroup_idempotents(&g, &h).unwrap();
        let r = run_pipeline(&ctx, &k).unwrap();
        show(&h.label(&g), &r);
        assert!(r.all_pass());
    }
}

#[test]
fn s3_all_subgroups_on_group_algebra() {
    let g = FiniteGroup::symmetric(3).unwrap();
    let ctx = QuantumGroupContext::new(build_group_algebra(&g).unwrap()).unwrap();
    for h in all_subgroups(&g) {
        let (hv, _) = subgroup_idempotents(&g, &h).unwrap();
        let r = run_pipeline(&ctx, &hv).unwrap();
        show(&h.label(&g), &r);
        assert!(r.all_pass());
    }
}

#[test]
fn s3_bicross() {
    let mp = MatchedPair::s3_example();
    let a = bicrossproduct_right_left(&mp).unwrap();
    let b = bicrossproduct_left_right(&mp).unwrap();
    let bk = bicross_idempotent(&mp, &b).unwrap();
    let ctx = QuantumGroupContext::new(a).unwrap();
    let r = run_pipeline(&ctx, &bk.k).unwrap();
    show("bicross", &r);
    let l = bicross_corner_formulas(&mp, &r);
    println!("{:?}", l.as_ref().err());
    assert!(r.all_pass());
    assert!(l.is_ok());
}

#[test]
#[ignore]
fn s4_timing() {
    let g = FiniteGroup::symmetric(4).unwrap();
    let t0 = std::time::Instant::now();
    let ctx = QuantumGroupContext::new(build_function_algebra(&g).unwrap()).unwrap();
    let ctx2 = QuantumGroupContext::new(build_group_algebra(&g).unwrap()).unwrap();
    println!("contexts {:?}", t0.elapsed());
    for h in all_subgroups(&g).iter().take(8) {
        let t = std::time::Instant::now();
        let (hv, k) = subgroup_idempotents(&g, h).unwrap();
        let r = run_pipeline(&ctx, &k).unwrap();
        let r2 = run_pipeline(&ctx2, &hv).unwrap();
        println!("{} {} {} {:?}", h.order(), r.all_pass(), r2.all_pass(), t.elapsed());
    }
}
