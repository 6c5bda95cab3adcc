use num_rational::Rational64;

use charp_core::algebra::{Fq, GaloisField, MultiPoly, RatFunc};
use charp_core::covers::{frobenius_factorization, lift_rational_points, singular_points, Cover};
use charp_core::desing::{desingularize, model_equation, overlap_transform};
use charp_core::heights::{functoriality_check, normalize, vojta_violation_demo, VojtaParams};
use charp_core::normalform::normal_form;
use charp_core::picard::{adjunction_class, general_type_threshold};
use charp_core::{Error, Exec};

fn rf(f: &'static GaloisField, s: &str) -> RatFunc {
    RatFunc::parse(f, s, "t").unwrap()
}

#[test]
fn vojta_slope_matches_adjunction() {
    let demo = vojta_violation_demo(VojtaParams::standard(), Exec::Sequential).unwrap();
    let adj = adjunction_class(3, 1, 5, 0);
    assert_eq!(demo.c_h, adj.closed_form.h);
    assert_eq!(demo.kappa_adjunction, 3 * adj.closed_form.h);
    assert!(demo.kappa_consistent());
    for (m, pt) in (1..).zip(&demo.points) {
        assert_eq!(pt.m, m);
        assert_eq!(pt.height, pt.xi_degree as i64 + demo.c_h * pt.h_degree as i64);
    }
}

#[test]
fn vojta_demo_is_deterministic_across_executors() {
    let params = VojtaParams { max_degree: 4, ..VojtaParams::standard() };
    let a = vojta_violation_demo(params, Exec::Sequential).unwrap();
    let b = vojta_violation_demo(params, Exec::Parallel).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn resolution_structure_for_small_primes() {
    for p in [3u32, 5, 7] {
        let f = GaloisField::prime(p).unwrap();
        for n in 1..=3usize {
            let r = desingularize(p, n, Exec::Sequential).unwrap();
            assert_eq!(r.steps.len(), ((p - 1) / 2) as usize);
            assert_eq!(r.terminal_charts().len(), r.steps.len() * n + 1);
            for s in &r.steps {
                let z = s.z_chart();
                for c in s.charts.iter().skip(1) {
                    assert_eq!(overlap_transform(&c.strict, c.variable, z.mu).as_ref(), Some(&z.strict));
                }
            }
            assert_eq!(r.z_chart_equations().last().copied(), Some(&model_equation(f, 1, n)));
        }
    }
}

#[test]
fn even_characteristic_rejected() {
    assert!(matches!(desingularize(2, 2, Exec::Sequential), Err(Error::NotOddPrime(_) | Error::EvenCharacteristic)));
    assert!(general_type_threshold(2, 1).is_err());
}

#[test]
fn cover_singularities_and_normal_form() {
    let f = GaloisField::prime(5).unwrap();
    let section = MultiPoly::parse(f, "x1^3*x2^2 + x2^3*x3^2 + x3^3*x1^2 + x1*x2*x3^3", None).unwrap();
    let cover = Cover::projective(section, 1).unwrap();
    let search = singular_points(&cover, 2).unwrap();
    let mut normalized = 0;
    for rec in search.points.iter().filter(|r| !r.degenerate) {
        let chart = &cover.charts[rec.chart].f;
        let field = rec.point[0].field();
        let emb = f.embedding_into(field).unwrap();
        let g = chart.map_coeffs(&field, |c| emb.apply(*c));
        // move the singular point to the origin and normalize the local equation
        let subs: Vec<MultiPoly<Fq>> = rec
            .point
            .iter()
            .enumerate()
            .map(|(i, a)| &MultiPoly::var(&field, 2, i) + &MultiPoly::constant(*a, 2))
            .collect();
        let local = g.substitute(&subs);
        let nf = normal_form(&local, 5).unwrap();
        assert!(nf.certified && nf.verify(&local).unwrap());
        normalized += 1;
    }
    assert!(normalized > 0);
}

#[test]
fn functoriality_and_lifts() {
    let f = GaloisField::prime(3).unwrap();
    let pt = normalize(&[rf(f, "1"), rf(f, "t"), rf(f, "t^2+1")]).unwrap();
    let forms: Vec<MultiPoly<RatFunc>> =
        ["x1^2", "x2^2", "x1*x3"].iter().map(|s| MultiPoly::<RatFunc>::parse_kt(f, s, Some(3), "t").unwrap()).collect();
    let rep = functoriality_check(&forms, &pt).unwrap();
    assert!(rep.bound_holds);
    assert_eq!(rep.degree, 2);

    let h = MultiPoly::<RatFunc>::parse_kt(f, "t*x1 + x2^2", Some(2), "t").unwrap();
    let fact = frobenius_factorization(&h);
    assert!(fact.verify());
    let params = vec![vec![rf(f, "1"), rf(f, "0")], vec![rf(f, "t"), rf(f, "1")]];
    let lifts = lift_rational_points(&fact, &params).unwrap();
    assert!(lifts.all_verified() && lifts.constant_lifts_bounded());
    for p in &lifts.points {
        assert_eq!(p.height_k, Rational64::new(p.height_k_prime as i64, 3));
    }
}
