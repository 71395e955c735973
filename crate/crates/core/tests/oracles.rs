use sixj_core::airy::{airy_ai, Potential1D};
use sixj_core::exact::{eigen_6j_oracle, sixj_f64};
use sixj_core::symbol::{commutator_bracket_check_against, Coordinate, CoordinateFunction, HermitianTridiagonal, J23SquaredFunction};
use sixj_core::tetra::J23Level;
use sixj_core::{intermediate_bounds, j23sq_operator, ponzano_regge_estimate, uniform_sixj, Regime, SixJArguments, Spin};

fn sp(t: u32) -> Spin {
    Spin::from_twice(t)
}

#[test]
fn full_grids_agree_with_racah() {
    for t in [[60u32, 60, 60, 60], [20, 41, 33, 50], [59, 3, 57, 1], [7, 7, 7, 7], [0, 30, 30, 0]] {
        let [a, b, c, d] = t.map(sp);
        let bounds = intermediate_bounds(a, b, c, d).unwrap();
        let eig = eigen_6j_oracle(a, b, c, d).unwrap();
        for j12 in bounds.j12_values() {
            for j23 in bounds.j23_values() {
                let args = SixJArguments::new(a, b, c, d, j12, j23).unwrap();
                let want = sixj_f64(&args).unwrap();
                let got = eig.sixj(j12, j23).unwrap();
                assert!((got - want).abs() < 1e-12, "{args}: {got} {want}");
            }
        }
    }
}

#[test]
fn uniform_beats_primitive_on_other_shapes() {
    for base in [[15u32, 25, 25, 15, 20, 25], [30, 35, 40, 45, 40, 40]] {
        let args = SixJArguments::integers(base).unwrap();
        let b = args.bounds();
        let (mut worst_u, mut worst_pr) = (0.0f64, 0.0f64);
        for j23 in b.j23_values() {
            let a = args.with_intermediate(args.j12, j23).unwrap();
            let u = uniform_sixj(&a).unwrap();
            if u.classification != Regime::Allowed {
                continue;
            }
            let e = sixj_f64(&a).unwrap();
            worst_u = worst_u.max((u.value - e).abs());
            worst_pr = worst_pr.max((ponzano_regge_estimate(&a).unwrap() - e).abs());
        }
        assert!(worst_u < worst_pr, "{base:?}: {worst_u} {worst_pr}");
    }
}

#[test]
fn commutator_deviation_is_first_order() {
    let rel = |s: u32| {
        let (j1, j2, j3, j4) = (sp(4 * s), sp(6 * s), sp(8 * s), sp(10 * s));
        let op: HermitianTridiagonal = (&j23sq_operator(j1, j2, j3, j4).unwrap()).into();
        let j = sp(op.dim() as u32 - 1);
        let level = J23Level::new(&SixJArguments::new(j1, j2, j3, j4, sp(6 * s), sp(10 * s)).unwrap());
        let kz = CoordinateFunction { radius: level.radius, axis: Coordinate::Z };
        let r = commutator_bracket_check_against(&HermitianTridiagonal::kz(j), &op, j, &kz, &J23SquaredFunction::new(level), 30);
        r.unwrap()
    };
    let (a, b, c) = (rel(5), rel(10), rel(20));
    assert!(b.relative < a.relative && c.relative < b.relative);
    let ratio = c.relative / b.relative;
    assert!((0.3..=0.7).contains(&ratio), "{ratio}");
}

#[test]
fn airy_uniform_tracks_ramp_with_offset() {
    // shifted, scaled ramp: V = 2 (x - 1), E = 0 gives Ai(2^{1/3} (x - 1)) 2^{-1/6}
    let pot = Potential1D::new(|x| 2.0 * (x - 1.0), 0.0, (-4.0, 3.0));
    for i in 0..=70 {
        let x = -4.0 + 0.1 * i as f64;
        let want = 2f64.powf(-1.0 / 6.0) * airy_ai(2f64.powf(1.0 / 3.0) * (x - 1.0));
        assert!((pot.uniform_wavefunction(x).unwrap() - want).abs() < 1e-10, "x={x}");
    }
}
